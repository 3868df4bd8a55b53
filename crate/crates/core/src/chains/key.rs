use super::generator::Component;
use super::tag::{Label, Tag};
use crate::error::{Error, Result};
use crate::geometry::{Face, OrientedPolytope, Point, Polytope, Sign};
use crate::linalg::{det, dot, hermite_rows, inverse, mat_mul, mat_vec, rank, smith, sub, to_integer, to_rational, transpose, Matrix};
use crate::maps::{AffineMap, Cell, MappedCell, Target};
use crate::rational::{self, Rational};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeSet;

/// Upper bound on the number of label-compatible affine bases explored.
pub const BRANCH_CAP: usize = 50_000;

/// Canonical form of a single-component generator up to orientation: the
/// polytope in coordinates of a label-minimal affine basis, its labelled
/// faces, and the map with the circle coordinates normalized.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key {
    pub target: Target,
    pub circles: usize,
    pub vertices: Vec<Point>,
    pub faces: Vec<(Face, Label)>,
    pub matrix: Matrix,
    pub offset: Vec<Rational>,
}

/// Result of canonicalizing a component.
#[derive(Debug, Clone)]
pub struct Canonical {
    pub key: Key,
    /// Orientation relative to the key's standard orientation; `None` when
    /// the component admits an orientation-reversing automorphism.
    pub sign: Option<Sign>,
    /// Order of the automorphism group of the component.
    pub automorphisms: usize,
}

impl Key {
    pub fn polytope_dim(&self) -> usize {
        self.vertices.first().map_or(0, |v| v.len())
    }

    /// Dimension of the generator, circles included.
    pub fn dim(&self) -> usize {
        self.polytope_dim() + self.circles
    }

    /// The positively oriented component this key stands for.
    pub fn component(&self) -> Component {
        let d = self.polytope_dim();
        let faces: Vec<Face> = self.faces.iter().map(|(f, _)| f.clone()).collect();
        let p = Polytope::from_lattice(d, self.vertices.clone(), faces);
        let tag = Tag { labels: self.faces.iter().map(|(_, l)| l.clone()).collect() };
        let cell = Cell::new(OrientedPolytope::new(p, Sign::Plus), self.circles);
        Component {
            piece: MappedCell { cell, map: AffineMap::new(self.target.clone(), self.matrix.clone(), self.offset.clone()) },
            tag,
        }
    }
}

struct TorusNormal {
    rows: Vec<usize>,
    h: Matrix,
    sign: Sign,
    pivots: Vec<usize>,
    hp_inv: Matrix,
    free: Vec<usize>,
    scale: Rational,
    lattice: Vec<(usize, Vec<Rational>)>,
    deck: usize,
}

impl TorusNormal {
    fn new(target: &Target, block: &Matrix, r: usize) -> TorusNormal {
        let rows = target.circles();
        let tc = rows.len();
        let b: Vec<Vec<BigInt>> =
            to_integer(&rows.iter().map(|&i| block[i].clone()).collect::<Matrix>()).expect("integer circle block");
        let (h, sign, pivots) = if r == 0 {
            (vec![Vec::new(); tc], Sign::Plus, Vec::new())
        } else {
            let bt: Vec<Vec<BigInt>> = (0..r).map(|j| (0..tc).map(|i| b[i][j].clone()).collect()).collect();
            let (hr, u, piv) = hermite_rows(&bt, tc);
            let h = transpose(&to_rational(&hr), tc);
            let s = Sign::of(&det(&to_rational(&u))).expect("unimodular");
            (h, s, piv[..r].to_vec())
        };
        let hp: Matrix = pivots.iter().map(|&p| h[p].clone()).collect();
        let hp_inv = if r == 0 { Vec::new() } else { inverse(&hp).expect("injective circle block") };
        let free: Vec<usize> = (0..tc).filter(|i| !pivots.contains(i)).collect();
        let g: Matrix = if r == 0 {
            vec![Vec::new(); free.len()]
        } else {
            mat_mul(&free.iter().map(|&i| h[i].clone()).collect::<Matrix>(), &hp_inv, r)
        };
        let nf = free.len();
        let den = rational::common_denominator(g.iter().flatten());
        let scale = Rational::from_integer(den.clone());
        let mut gens: Vec<Vec<BigInt>> = (0..nf)
            .map(|k| (0..nf).map(|l| if k == l { den.clone() } else { BigInt::zero() }).collect())
            .collect();
        for j in 0..r {
            gens.push((0..nf).map(|k| (-&g[k][j] * &scale).to_integer()).collect());
        }
        let (hl, _, lp) = hermite_rows(&gens, nf);
        let lattice = lp.iter().enumerate().map(|(i, &c)| (c, hl[i].iter().map(|x| Rational::from_integer(x.clone())).collect())).collect();
        let deck = if r == 0 {
            1
        } else {
            smith(&b, r).diagonal.iter().map(|x| x.to_string().parse::<usize>().unwrap_or(usize::MAX)).product()
        };
        TorusNormal { rows, h, sign, pivots, hp_inv, free, scale, lattice, deck }
    }

    /// Shears the linear part and reduces the offset in place.
    fn apply(&self, a: &mut Matrix, c: &mut [Rational], cols: usize) {
        let r = self.pivots.len();
        if r > 0 {
            let x: Matrix = self.pivots.iter().map(|&p| a[self.rows[p]].clone()).collect();
            let shear = mat_mul(&self.hp_inv, &x, cols);
            let y: Vec<Rational> = self.pivots.iter().map(|&p| c[self.rows[p]].clone()).collect();
            let e = mat_vec(&self.hp_inv, &y);
            for (k, &row) in self.rows.iter().enumerate() {
                for j in 0..cols {
                    let mut s = Rational::zero();
                    for l in 0..r {
                        s += &self.h[k][l] * &shear[l][j];
                    }
                    a[row][j] -= s;
                }
                c[row] -= dot(&self.h[k], &e);
            }
        }
        let mut x: Vec<Rational> = self.free.iter().map(|&k| &c[self.rows[k]] * &self.scale).collect();
        for (col, row) in &self.lattice {
            let q = rational::floor_int(&(&x[*col] / &row[*col]));
            if !q.is_zero() {
                let q = Rational::from_integer(q);
                for (xi, ri) in x.iter_mut().zip(row) {
                    *xi -= &q * ri;
                }
            }
        }
        for (k, v) in self.free.iter().zip(x) {
            c[self.rows[*k]] = v / &self.scale;
        }
    }
}

fn vertex_labels(p: &Polytope, tag: &Tag) -> Vec<Label> {
    (0..p.vertices().len()).map(|v| tag.labels[p.lattice().index_of(&[v]).expect("vertex face")].clone()).collect()
}

/// Ordered affine bases obtained greedily from vertex orders compatible with
/// the labels.
fn bases(p: &Polytope, labels: &[Label]) -> Result<Vec<Vec<usize>>> {
    let d = p.dim();
    let vs = p.vertices();
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, Matrix)> = vec![(Vec::new(), Vec::new())];
    while let Some((cur, dirs)) = stack.pop() {
        if cur.len() == d + 1 {
            out.push(cur);
            if out.len() > BRANCH_CAP {
                return Err(Error::Undecided(format!("more than {BRANCH_CAP} label-compatible bases")));
            }
            continue;
        }
        let cands: Vec<(usize, Vec<Rational>)> = (0..vs.len())
            .filter(|v| !cur.contains(v))
            .filter_map(|v| {
                if cur.is_empty() {
                    return Some((v, Vec::new()));
                }
                let w = sub(&vs[v], &vs[cur[0]]);
                let mut m = dirs.clone();
                m.push(w.clone());
                (rank(&m, p.ambient_dim()) == dirs.len() + 1).then_some((v, w))
            })
            .collect();
        let Some(best) = cands.iter().map(|(v, _)| &labels[*v]).min().cloned() else { continue };
        for (v, w) in cands.into_iter().rev() {
            if labels[v] != best {
                continue;
            }
            let mut next = cur.clone();
            next.push(v);
            let mut nd = dirs.clone();
            if !w.is_empty() {
                nd.push(w);
            }
            stack.push((next, nd));
        }
    }
    Ok(out)
}

pub fn canonical(c: &Component) -> Result<Canonical> {
    let mc = &c.piece;
    let p = &mc.cell.body.polytope;
    let a = p.ambient_dim();
    let d = p.dim();
    let r = mc.cell.circles;
    let target = &mc.map.target;
    let m = target.dim();
    let labels = vertex_labels(p, &c.tag);
    let bs = bases(p, &labels)?;
    let block: Matrix = mc.map.matrix.iter().map(|row| row[a..].to_vec()).collect();
    let torus = TorusNormal::new(target, &block, r);
    let hull = p.hull();
    let mut best: Option<(Key, BTreeSet<Sign>, usize)> = None;
    for b in &bs {
        let v0 = &p.vertices()[b[0]];
        let w: Matrix = b[1..].iter().map(|&i| sub(&p.vertices()[i], v0)).collect();
        let wc: Matrix = w.iter().map(|x| hull.coords(x)).collect();
        let sign_w = if d == 0 { Sign::Plus } else { Sign::of(&det(&wc)).expect("affine basis") };
        let inv = if d == 0 { Vec::new() } else { inverse(&transpose(&wc, d)).expect("affine basis") };
        let tv: Vec<Point> = p.vertices().iter().map(|v| mat_vec(&inv, &hull.coords(&sub(v, v0)))).collect();
        let mut order: Vec<usize> = (0..tv.len()).collect();
        order.sort_by(|&i, &j| tv[i].cmp(&tv[j]));
        let mut new_index = vec![0; tv.len()];
        for (n, &o) in order.iter().enumerate() {
            new_index[o] = n;
        }
        let mut faces: Vec<(Face, Label)> = p
            .lattice()
            .faces()
            .iter()
            .enumerate()
            .map(|(fi, f)| {
                let mut vsx: Vec<usize> = f.vertices.iter().map(|&v| new_index[v]).collect();
                vsx.sort();
                (Face { dim: f.dim, vertices: vsx }, c.tag.labels[fi].clone())
            })
            .collect();
        faces.sort();
        let mut at: Matrix = (0..m).map(|i| w.iter().map(|x| dot(&mc.map.matrix[i][..a], x)).collect()).collect();
        let mut ct: Vec<Rational> =
            (0..m).map(|i| dot(&mc.map.matrix[i][..a], v0) + &mc.map.offset[i]).collect();
        torus.apply(&mut at, &mut ct, d);
        let mut matrix = at;
        for (i, row) in matrix.iter_mut().enumerate() {
            match torus.rows.iter().position(|&x| x == i) {
                Some(k) => row.extend(torus.h[k].iter().cloned()),
                None => row.extend(std::iter::repeat(Rational::zero()).take(r)),
            }
        }
        let key = Key {
            target: target.clone(),
            circles: r,
            vertices: order.iter().map(|&i| tv[i].clone()).collect(),
            faces,
            matrix,
            offset: ct,
        };
        let sign = mc.cell.sign() * sign_w * torus.sign;
        match &mut best {
            Some((k, signs, count)) if *k == key => {
                signs.insert(sign);
                *count += 1;
            }
            Some((k, _, _)) if *k < key => {}
            _ => best = Some((key, BTreeSet::from([sign]), 1)),
        }
    }
    let (key, signs, count) = best.expect("every polytope has an affine basis");
    let sign = if signs.len() == 1 { signs.into_iter().next() } else { None };
    Ok(Canonical { key, sign, automorphisms: count.saturating_mul(torus.deck) })
}

/// Whether a component has an automorphism reversing orientation.
pub fn is_self_opposite(c: &Component) -> Result<bool> {
    Ok(canonical(c)?.sign.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::TargetMap;
    use crate::rational::{frac, int};

    fn comp(p: Polytope, map: AffineMap, tag: Tag, sign: Sign, circles: usize) -> Component {
        Component { piece: MappedCell::new(Cell::new(OrientedPolytope::new(p, sign), circles), map).unwrap(), tag }
    }

    #[test]
    fn translated_intervals_agree() {
        let a = Polytope::cuboid(&[(int(0), int(1))]).unwrap();
        let b = Polytope::cuboid(&[(int(5), int(6))]).unwrap();
        let pt = |n: usize| AffineMap::constant(Target::point(), n, vec![]);
        let ka = canonical(&comp(a.clone(), pt(1), Tag::enumerate(&a), Sign::Plus, 0)).unwrap();
        let kb = canonical(&comp(b.clone(), pt(1), Tag::enumerate(&b), Sign::Plus, 0)).unwrap();
        assert_eq!(ka.key, kb.key);
        assert_eq!(ka.sign, kb.sign);
        assert_eq!(ka.automorphisms, 1);
        // flipped labels flip the canonical orientation
        let mut t = Tag::enumerate(&a);
        t.labels.swap(0, 1);
        let kc = canonical(&comp(a.clone(), pt(1), t, Sign::Plus, 0)).unwrap();
        assert_eq!(kc.key, ka.key);
        assert_eq!(kc.sign, Some(Sign::Minus));
        // symmetric labels: the flip reverses orientation
        let ks = canonical(&comp(a.clone(), pt(1), Tag::by_dimension(&a), Sign::Plus, 0)).unwrap();
        assert_eq!(ks.sign, None);
        assert_eq!(ks.automorphisms, 2);
    }

    #[test]
    fn torus_offsets_reduce() {
        let pt = Polytope::point(vec![]);
        let mk = |k: i64, off: Rational| {
            comp(
                pt.clone(),
                AffineMap::new(Target::torus(1), vec![vec![int(k)]], vec![off]),
                Tag::blank(&pt),
                Sign::Plus,
                1,
            )
        };
        let a = canonical(&mk(2, frac(1, 3))).unwrap();
        let b = canonical(&mk(2, frac(-7, 3))).unwrap();
        assert_eq!(a.key, b.key);
        assert_eq!(a.automorphisms, 2);
        let c = canonical(&mk(-2, int(0))).unwrap();
        let d = canonical(&mk(2, int(0))).unwrap();
        assert_eq!(c.key, d.key);
        assert_eq!(c.sign, Some(Sign::Minus));
        // the key rebuilds to itself
        let again = canonical(&a.key.component()).unwrap();
        assert_eq!(again.key, a.key);
        assert_eq!(again.sign, Some(Sign::Plus));
    }

    #[test]
    fn circle_shear_and_lattice() {
        // [0,1] x T^1 -> T^2, (x, θ) ↦ (x + θ, 2θ + 1/4)
        let seg = Polytope::cuboid(&[(int(0), int(1))]).unwrap();
        let map = AffineMap::new(
            Target::torus(2),
            vec![vec![int(1), int(1)], vec![int(0), int(2)]],
            vec![int(0), frac(1, 4)],
        );
        let x = comp(seg.clone(), map.clone(), Tag::enumerate(&seg), Sign::Plus, 1);
        let k = canonical(&x).unwrap();
        let back = canonical(&k.key.component()).unwrap();
        assert_eq!(back.key, k.key);
        assert_eq!(back.sign, Some(Sign::Plus));
        let h = TargetMap::identity(&Target::torus(2));
        let y = comp(seg, map.then(&h).unwrap(), Tag::enumerate(&x.piece.cell.body.polytope), Sign::Minus, 1);
        assert_eq!(canonical(&y).unwrap().sign, Some(-k.sign.unwrap()));
    }
}
