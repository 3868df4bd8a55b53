use super::chain::{Chain, Ring};
use super::generator::Component;
use super::tag::Tag;
use crate::error::{Error, Result};
use crate::geometry::{facet_sign, frame_sign, OrientedPolytope, Point, Polytope, Sign};
use crate::linalg::Matrix;
use crate::maps::{AffineMap, Cell, MappedCell, Target};
use crate::rational::Rational;
use num_traits::{One, Zero};

/// The standard simplex `Δ_k` in `ℝ^{k+1}`, spanned by the unit vectors.
pub fn simplex(k: usize) -> Polytope {
    let vs: Vec<Point> = (0..=k)
        .map(|i| (0..=k).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    Polytope::new(k + 1, vs).expect("unit vectors are affinely independent")
}

/// `F_j^k : ℝ^k → ℝ^{k+1}` inserting a zero in position `j`, as a matrix.
pub fn face_map(k: usize, j: usize) -> Matrix {
    assert!(k >= 1 && j <= k);
    (0..=k)
        .map(|r| {
            (0..k)
                .map(|c| {
                    let src = if r < j { Some(r) } else if r > j { Some(r - 1) } else { None };
                    if src == Some(c) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Frame `e_i − e_0` orienting `Δ_k`.
pub fn simplex_frame(k: usize) -> Matrix {
    (1..=k)
        .map(|i| (0..=k).map(|j| if j == i { Rational::one() } else if j == 0 { -Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

pub fn oriented_simplex(k: usize) -> OrientedPolytope {
    OrientedPolytope::from_frame(simplex(k), &simplex_frame(k), Sign::Plus).expect("frame spans the simplex")
}

/// Sign relating the outward-normal orientation of facet `j` of `Δ_k` to the
/// orientation carried over from `Δ_{k−1}` by `F_j^k`.
pub fn orientation_dictionary(k: usize, j: usize) -> Sign {
    let s = simplex(k);
    let fm = face_map(k, j);
    let mut image: Vec<usize> = (0..k)
        .map(|c| {
            let col: Point = (0..=k).map(|r| fm[r][c].clone()).collect();
            s.vertices().binary_search(&col).expect("unit vectors are the vertices")
        })
        .collect();
    image.sort();
    let facet = s.lattice().index_of(&image).expect("facet of the simplex");
    let induced = facet_sign(&s, oriented_simplex(k).sign, facet);
    let pushed: Matrix = simplex_frame(k - 1)
        .iter()
        .map(|v| (0..=k).map(|r| (0..k).map(|c| &fm[r][c] * &v[c]).sum()).collect())
        .collect();
    let carried = frame_sign(&s.face_polytope(facet).0, &pushed).expect("pushed frame");
    induced * carried
}

/// An affine singular simplex, given by the images (lifts, for circle axes)
/// of the vertices of `Δ_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularSimplex {
    pub target: Target,
    pub vertices: Vec<Point>,
}

impl SingularSimplex {
    pub fn new(target: Target, vertices: Vec<Point>) -> Result<SingularSimplex> {
        if vertices.is_empty() {
            return Err(Error::Schema("a simplex needs at least one vertex".into()));
        }
        if vertices.iter().any(|v| v.len() != target.dim()) {
            return Err(Error::Schema(format!("vertex images must have length {}", target.dim())));
        }
        Ok(SingularSimplex { target, vertices })
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// `σ ∘ F_j^k`.
    pub fn face(&self, j: usize) -> SingularSimplex {
        let mut vertices = self.vertices.clone();
        vertices.remove(j);
        SingularSimplex { target: self.target.clone(), vertices }
    }

    /// The map `x ↦ Σ x_i σ(e_i)` on `ℝ^{k+1}`.
    pub fn affine_map(&self) -> AffineMap {
        let m = self.target.dim();
        let matrix = (0..m).map(|r| self.vertices.iter().map(|v| v[r].clone()).collect()).collect();
        AffineMap::new(self.target.clone(), matrix, vec![Rational::zero(); m])
    }

    /// `[Δ_k, σ, G_{Δ_k}]`.
    pub fn generator(&self) -> Component {
        let k = self.dim();
        let p = simplex(k);
        Component {
            tag: simplex_tag(&p),
            piece: MappedCell { cell: Cell::new(oriented_simplex(k), 0), map: self.affine_map() },
        }
    }
}

/// The fixed tag on simplices: each face is labelled by its dimension, so
/// that faces of `Δ_k` carry the tag of `Δ_{k−1}`.
pub fn simplex_tag(p: &Polytope) -> Tag {
    Tag::by_dimension(p)
}

/// A formal rational combination of affine singular simplices.
pub type SingularChain = Vec<(Rational, SingularSimplex)>;

/// Alternating-sum boundary.
pub fn singular_boundary(s: &SingularChain) -> SingularChain {
    let mut out = Vec::new();
    for (c, x) in s {
        if x.dim() == 0 {
            continue;
        }
        for j in 0..=x.dim() {
            let sign = if j % 2 == 0 { c.clone() } else { -c.clone() };
            out.push((sign, x.face(j)));
        }
    }
    out
}

pub fn singular_to_kuranishi(s: &SingularChain) -> Result<Chain> {
    let mut out = Chain::zero(Ring::Q);
    for (c, x) in s {
        out.add_component(c, &x.generator())?;
    }
    Ok(out)
}

/// Compares `∂Π(s)` with `Π(∂s)`; returns the difference on failure.
pub fn check_chain_map(s: &SingularChain) -> Result<Option<Chain>> {
    let lhs = singular_to_kuranishi(s)?.boundary()?;
    let rhs = singular_to_kuranishi(&singular_boundary(s))?;
    let diff = lhs.sub(&rhs);
    Ok((!diff.is_zero()).then_some(diff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn simplices_and_face_maps() {
        assert_eq!(simplex(0).vertices().len(), 1);
        assert_eq!(simplex(1).vertices().len(), 2);
        let f = face_map(1, 0);
        assert_eq!(crate::linalg::mat_vec(&f, &[int(1)]), vec![int(0), int(1)]);
        for k in 2..5 {
            for i in 0..=k {
                for j in i + 1..=k {
                    // F_j^k ∘ F_i^{k-1} = F_i^k ∘ F_{j-1}^{k-1}
                    let a = crate::linalg::mat_mul(&face_map(k, j), &face_map(k - 1, i), k - 1);
                    let b = crate::linalg::mat_mul(&face_map(k, i), &face_map(k - 1, j - 1), k - 1);
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn dictionary_is_alternating() {
        for k in 1..=5 {
            for j in 0..=k {
                assert_eq!(orientation_dictionary(k, j), Sign::parity(j), "k={k} j={j}");
            }
        }
    }

    #[test]
    fn chain_map_on_small_simplices() {
        let y = Target::euclid(3);
        let e = |a: i64, b: i64, c: i64| vec![int(a), int(b), int(c)];
        let tri = SingularSimplex::new(y.clone(), vec![e(0, 0, 0), e(2, 1, 0), e(0, 3, 1)]).unwrap();
        let seg = SingularSimplex::new(y.clone(), vec![e(0, 0, 0), e(1, 1, 1)]).unwrap();
        let s = vec![(int(1), tri), (int(2), seg)];
        assert!(check_chain_map(&s).unwrap().is_none());
        assert!(singular_to_kuranishi(&Vec::new()).unwrap().is_zero());
        let t = Target::torus(1);
        let wrap = SingularSimplex::new(t, vec![vec![int(0)], vec![int(1)]]).unwrap();
        assert!(check_chain_map(&vec![(int(1), wrap)]).unwrap().is_none());
    }
}
