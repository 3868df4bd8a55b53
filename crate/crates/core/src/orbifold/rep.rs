use super::group::FiniteGroup;
use crate::error::{Error, Result};
use crate::linalg::{identity, mat_mul, nullspace, transpose, Matrix};
use crate::rational::Rational;
use num_traits::{One, Zero};

/// A real representation by rational matrices, one per group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealRep {
    pub group: FiniteGroup,
    pub dim: usize,
    pub matrices: Vec<Matrix>,
}

impl RealRep {
    pub fn new(group: FiniteGroup, dim: usize, matrices: Vec<Matrix>) -> Result<RealRep> {
        if matrices.len() != group.order() || matrices.iter().any(|m| m.len() != dim || m.iter().any(|r| r.len() != dim)) {
            return Err(Error::Schema(format!("need {} matrices of size {dim}x{dim}", group.order())));
        }
        if matrices[group.identity] != identity(dim) {
            return Err(Error::InvalidAction("identity must act trivially".into()));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                if dim > 0 && mat_mul(&matrices[a], &matrices[b], dim) != matrices[group.mul(a, b)] {
                    return Err(Error::InvalidAction(format!(
                        "not a homomorphism at ({}, {})",
                        group.names[a], group.names[b]
                    )));
                }
            }
        }
        Ok(RealRep { group, dim, matrices })
    }

    pub fn trivial(group: FiniteGroup, dim: usize) -> RealRep {
        let matrices = vec![identity(dim); group.order()];
        RealRep { group, dim, matrices }
    }

    /// Traces, one per element.
    pub fn character(&self) -> Vec<Rational> {
        self.matrices.iter().map(|m| (0..self.dim).map(|i| m[i][i].clone()).sum()).collect()
    }

    /// Basis of `Fix(ω(Γ))`.
    pub fn fixed_subspace(&self) -> Matrix {
        let mut rows = Matrix::new();
        for m in &self.matrices {
            for (i, r) in m.iter().enumerate() {
                let mut row = r.clone();
                row[i] -= Rational::one();
                rows.push(row);
            }
        }
        nullspace(&rows, self.dim)
    }

    /// The averaging projector onto the fixed subspace.
    pub fn projector(&self) -> Matrix {
        let n = Rational::from_integer(self.group.order().into());
        let mut p = vec![vec![Rational::zero(); self.dim]; self.dim];
        for m in &self.matrices {
            for i in 0..self.dim {
                for j in 0..self.dim {
                    p[i][j] += &m[i][j] / &n;
                }
            }
        }
        p
    }

    /// Basis of the invariant complement, the kernel of the projector.
    pub fn nontrivial_subspace(&self) -> Matrix {
        nullspace(&self.projector(), self.dim)
    }

    /// Restriction to an invariant subspace spanned by `basis`.
    fn restrict(&self, basis: &Matrix) -> RealRep {
        let k = basis.len();
        if k == 0 {
            return RealRep::trivial(self.group.clone(), 0);
        }
        let b = transpose(basis, self.dim);
        let matrices = self
            .matrices
            .iter()
            .map(|m| {
                let images = transpose(&mat_mul(m, &b, k), k);
                // coordinates of each image in the basis
                images.iter().map(|v| coords(basis, v)).collect::<Matrix>()
            })
            .map(|cols| transpose(&cols, k))
            .collect();
        RealRep { group: self.group.clone(), dim: k, matrices }
    }

    /// `W = W^t ⊕ W^nt`.
    pub fn split(&self) -> (RealRep, RealRep) {
        (self.restrict(&self.fixed_subspace()), self.restrict(&self.nontrivial_subspace()))
    }

    /// Multiplicity of the trivial representation.
    pub fn trivial_multiplicity(&self) -> usize {
        trivial_multiplicity(&self.group, &self.character())
    }
}

fn coords(basis: &Matrix, v: &[Rational]) -> Vec<Rational> {
    let n = v.len();
    let a = transpose(basis, n);
    crate::linalg::solve(&a, basis.len(), v).expect("vector lies in the invariant subspace")
}

pub fn trivial_multiplicity(g: &FiniteGroup, chi: &[Rational]) -> usize {
    let s: Rational = chi.iter().sum::<Rational>() / Rational::from_integer(g.order().into());
    s.to_integer().try_into().unwrap_or(0)
}

/// Formal difference of nontrivial representations, by characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualRep {
    pub group: FiniteGroup,
    pub positive: Vec<Rational>,
    pub negative: Vec<Rational>,
}

impl VirtualRep {
    pub fn new(group: FiniteGroup, positive: Vec<Rational>, negative: Vec<Rational>) -> Result<VirtualRep> {
        for chi in [&positive, &negative] {
            if chi.len() != group.order() {
                return Err(Error::Schema(format!("characters need {} values", group.order())));
            }
            if trivial_multiplicity(&group, chi) != 0 {
                return Err(Error::Precondition("representation has a nonzero fixed part".into()));
            }
        }
        Ok(VirtualRep { group, positive, negative })
    }

    pub fn zero(group: FiniteGroup) -> VirtualRep {
        let n = group.order();
        VirtualRep { group, positive: vec![Rational::zero(); n], negative: vec![Rational::zero(); n] }
    }

    pub fn from_rep(rep: &RealRep) -> Result<VirtualRep> {
        VirtualRep::new(rep.group.clone(), rep.character(), vec![Rational::zero(); rep.group.order()])
    }

    pub fn dim(&self) -> i64 {
        let e = self.group.identity;
        (&self.positive[e] - &self.negative[e]).to_integer().try_into().expect("small dimension")
    }

    pub fn is_honest(&self) -> bool {
        self.negative.iter().all(|x| x.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn perm_rep() -> RealRep {
        let g = FiniteGroup::s3();
        let mats = (0..6)
            .map(|e| {
                let p: Vec<usize> = g.names[e].chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
                (0..3).map(|i| (0..3).map(|j| if p[j] == i { int(1) } else { int(0) }).collect()).collect()
            })
            .collect();
        RealRep::new(g, 3, mats).unwrap()
    }

    #[test]
    fn permutation_rep_splits_one_plus_two() {
        let r = perm_rep();
        let (t, nt) = r.split();
        assert_eq!((t.dim, nt.dim), (1, 2));
        assert!(RealRep { group: nt.group.clone(), dim: 2, matrices: nt.matrices.clone() }.fixed_subspace().is_empty());
        assert_eq!(t.character(), vec![int(1); 6]);
        assert_eq!(r.trivial_multiplicity(), 1);
    }

    #[test]
    fn sign_and_identity_reps() {
        let z2 = FiniteGroup::cyclic(2);
        let sign = RealRep::new(z2.clone(), 1, vec![vec![vec![int(1)]], vec![vec![int(-1)]]]).unwrap();
        let (t, nt) = sign.split();
        assert_eq!((t.dim, nt.dim), (0, 1));
        let id = RealRep::trivial(z2.clone(), 2);
        let (t, nt) = id.split();
        assert_eq!((t.dim, nt.dim), (2, 0));
        assert!(VirtualRep::from_rep(&id).is_err());
        assert_eq!(VirtualRep::from_rep(&sign).unwrap().dim(), 1);
    }
}
