use super::chain::{Chain, Ring};
use super::generator::Component;
use super::key::{canonical, Key};
use crate::error::{Error, Result};
use crate::linalg::{rank, Matrix};
use crate::rational::Rational;
use num_traits::Zero;
use std::collections::BTreeMap;

/// A finite boundary-closed set of generators, graded by dimension, with its
/// boundary matrices.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    /// Canonical generators per grade, in key order.
    pub grades: Vec<Vec<Key>>,
    /// `boundaries[k]` maps grade `k` to grade `k − 1` (rows: grade `k − 1`).
    pub boundaries: Vec<Matrix>,
}

impl ChainComplex {
    /// Builds the complex spanned by the given components. Components that are
    /// zero (orientation-reversing automorphism) are dropped.
    pub fn new(components: &[Component]) -> Result<ChainComplex> {
        let mut by_grade: BTreeMap<usize, Vec<Key>> = BTreeMap::new();
        for c in components {
            let can = canonical(c)?;
            if can.sign.is_some() {
                by_grade.entry(can.key.dim()).or_default().push(can.key);
            }
        }
        let top = by_grade.keys().next_back().map_or(0, |&k| k + 1);
        let mut grades: Vec<Vec<Key>> = (0..top).map(|k| by_grade.remove(&k).unwrap_or_default()).collect();
        for g in &mut grades {
            g.sort();
            g.dedup();
        }
        let mut boundaries = vec![Vec::new()];
        for k in 1..grades.len() {
            let index: BTreeMap<&Key, usize> = grades[k - 1].iter().enumerate().map(|(i, x)| (x, i)).collect();
            let mut m = vec![vec![Rational::zero(); grades[k].len()]; grades[k - 1].len()];
            for (col, key) in grades[k].iter().enumerate() {
                let b = Chain::single(Ring::Q, &key.component())?.boundary()?;
                for (bk, v) in &b.terms {
                    let Some(&row) = index.get(bk) else {
                        return Err(Error::Precondition(format!(
                            "generator set is not closed under boundary: a face of a {k}-dimensional generator is missing"
                        )));
                    };
                    m[row][col] = v.clone();
                }
            }
            boundaries.push(m);
        }
        Ok(ChainComplex { grades, boundaries })
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.grades.iter().map(|g| g.len()).collect()
    }

    /// Betti numbers over the rationals, one per grade.
    pub fn betti(&self) -> Vec<usize> {
        let n = self.grades.len();
        let r: Vec<usize> = (0..n)
            .map(|k| if k == 0 { 0 } else { rank(&self.boundaries[k], self.grades[k].len()) })
            .collect();
        (0..n)
            .map(|k| {
                let incoming = if k + 1 < n { r[k + 1] } else { 0 };
                self.grades[k].len() - r[k] - incoming
            })
            .collect()
    }

    /// Checks that consecutive boundary matrices compose to zero.
    pub fn dd_zero(&self) -> bool {
        (2..self.grades.len()).all(|k| {
            let a = &self.boundaries[k - 1];
            let b = &self.boundaries[k];
            crate::linalg::mat_mul(a, b, self.grades[k].len()).iter().flatten().all(|x| x.is_zero())
        })
    }
}

/// Every face of a component, each carrying the restricted map and tag.
pub fn face_complex(c: &Component) -> Vec<Component> {
    let p = &c.piece.cell.body.polytope;
    (0..p.lattice().len())
        .map(|f| Component { piece: c.piece.restrict(f, crate::geometry::Sign::Plus), tag: c.tag.restrict(p, f) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{simplex, Tag};
    use crate::geometry::{OrientedPolytope, Sign};
    use crate::maps::{AffineMap, Cell, MappedCell, Target};

    fn full_simplex(k: usize) -> Component {
        let p = simplex(k);
        Component::new(
            MappedCell::new(Cell::new(OrientedPolytope::new(p.clone(), Sign::Plus), 0), AffineMap::constant(Target::point(), k + 1, vec![]))
                .unwrap(),
            Tag::enumerate(&p),
        )
        .unwrap()
    }

    #[test]
    fn simplices_are_acyclic() {
        for k in 0..=3 {
            let cx = ChainComplex::new(&face_complex(&full_simplex(k))).unwrap();
            assert!(cx.dd_zero());
            let mut expect = vec![0; k + 1];
            expect[0] = 1;
            assert_eq!(cx.betti(), expect);
        }
    }

    #[test]
    fn hollow_triangle_has_a_loop() {
        let faces: Vec<Component> = face_complex(&full_simplex(2)).into_iter().filter(|c| c.dim() < 2).collect();
        assert_eq!(ChainComplex::new(&faces).unwrap().betti(), vec![1, 1]);
        assert!(ChainComplex::new(&[]).unwrap().betti().is_empty());
    }

    #[test]
    fn open_sets_are_rejected() {
        let faces: Vec<Component> = face_complex(&full_simplex(2)).into_iter().filter(|c| c.dim() == 2).collect();
        assert!(matches!(ChainComplex::new(&faces), Err(Error::Precondition(_))));
    }
}
