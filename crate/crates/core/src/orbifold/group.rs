use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// A finite group given by a verified multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    pub names: Vec<String>,
    /// `table[a][b]` is the index of `a·b`.
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl FiniteGroup {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = names.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup(format!("table must be {n}x{n} with entries below {n}")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == identity) {
                return Err(Error::InvalidGroup(format!("{} has no inverse", names[a])));
            }
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup { names, table, identity })
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::cyclic(1)
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        let names = (0..n).map(|i| format!("r{i}")).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup { names, table, identity: 0 }
    }

    /// `(ℤ₂)²` with elements `e, a, b, ab`.
    pub fn klein_four() -> FiniteGroup {
        let names = ["e", "a", "b", "ab"].iter().map(|s| s.to_string()).collect();
        let table = (0..4).map(|x: usize| (0..4).map(|y: usize| x ^ y).collect()).collect();
        FiniteGroup { names, table, identity: 0 }
    }

    /// The symmetric group on three letters, elements as permutations of
    /// `0, 1, 2` in lexicographic order; `a·b` applies `b` first.
    pub fn s3() -> FiniteGroup {
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let names = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect();
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        FiniteGroup { names, table, identity: 0 }
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == self.identity).expect("verified group")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Conjugacy classes, each sorted, ordered by smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for a in 0..n {
            if seen[a] {
                continue;
            }
            let class: BTreeSet<usize> = (0..n).map(|g| self.mul(self.mul(g, a), self.inv(g))).collect();
            for &c in &class {
                seen[c] = true;
            }
            out.push(class.into_iter().collect());
        }
        out
    }

    /// A small generating set, chosen greedily.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.closure(&gens);
        for a in 0..self.order() {
            if !span.contains(&a) {
                gens.push(a);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// The subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    /// The subgroup on `elements` (which must be closed) as a group in its own right,
    /// with the inclusion map.
    pub fn subgroup(&self, elements: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        let pos = |x: usize| elements.iter().position(|&e| e == x);
        let mut table = Vec::new();
        for &a in elements {
            let mut row = Vec::new();
            for &b in elements {
                row.push(pos(self.mul(a, b)).ok_or_else(|| Error::InvalidGroup("subset is not closed".into()))?);
            }
            table.push(row);
        }
        let names = elements.iter().map(|&e| self.names[e].clone()).collect();
        Ok((FiniteGroup::new(names, table)?, elements.to_vec()))
    }

    /// All injective homomorphisms from `source` into `self`, as image lists.
    pub fn injective_homs(&self, source: &FiniteGroup) -> Vec<Vec<usize>> {
        let gens = source.generators();
        let mut out = Vec::new();
        let n = self.order();
        let total = n.pow(gens.len() as u32);
        for code in 0..total {
            let mut c = code;
            let images: Vec<usize> = gens
                .iter()
                .map(|_| {
                    let x = c % n;
                    c /= n;
                    x
                })
                .collect();
            if let Some(h) = self.extend_hom(source, &gens, &images) {
                let distinct: BTreeSet<usize> = h.iter().copied().collect();
                if distinct.len() == source.order() {
                    out.push(h);
                }
            }
        }
        out.sort();
        out
    }

    fn extend_hom(&self, source: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let mut h: Vec<Option<usize>> = vec![None; source.order()];
        h[source.identity] = Some(self.identity);
        let mut frontier = vec![source.identity];
        while let Some(x) = frontier.pop() {
            let hx = h[x].unwrap();
            for (g, &img) in gens.iter().zip(images) {
                let y = source.mul(x, *g);
                let hy = self.mul(hx, img);
                match h[y] {
                    None => {
                        h[y] = Some(hy);
                        frontier.push(y);
                    }
                    Some(v) if v != hy => return None,
                    _ => {}
                }
            }
        }
        let h: Vec<usize> = h.into_iter().map(|x| x.expect("generators generate")).collect();
        for a in 0..source.order() {
            for b in 0..source.order() {
                if h[source.mul(a, b)] != self.mul(h[a], h[b]) {
                    return None;
                }
            }
        }
        Some(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups() {
        for g in [FiniteGroup::cyclic(3), FiniteGroup::klein_four(), FiniteGroup::s3(), FiniteGroup::trivial()] {
            let checked = FiniteGroup::new(g.names.clone(), g.table.clone()).unwrap();
            assert_eq!(checked.identity, g.identity);
        }
        assert_eq!(FiniteGroup::s3().conjugacy_classes().len(), 3);
        assert_eq!(FiniteGroup::klein_four().conjugacy_classes().len(), 4);
    }

    #[test]
    fn bad_table_rejected() {
        let r = FiniteGroup::new(vec!["a".into(), "b".into()], vec![vec![0, 1], vec![1, 1]]);
        assert!(matches!(r, Err(Error::InvalidGroup(_))));
    }

    #[test]
    fn homs_into_groups() {
        let z2 = FiniteGroup::cyclic(2);
        assert_eq!(FiniteGroup::klein_four().injective_homs(&z2).len(), 3);
        assert_eq!(FiniteGroup::s3().injective_homs(&z2).len(), 3);
        assert_eq!(FiniteGroup::s3().injective_homs(&FiniteGroup::cyclic(3)).len(), 2);
        assert_eq!(FiniteGroup::cyclic(3).injective_homs(&z2).len(), 0);
    }
}
