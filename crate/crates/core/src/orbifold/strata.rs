use super::action::GroupAction;
use super::group::FiniteGroup;
use super::rep::{RealRep, VirtualRep};
use crate::error::{Error, Result};
use crate::geometry::{Point, Polytope, Sign};
use crate::linalg::{det, mat_vec, rank, Matrix};
use crate::maps::slice;
use crate::rational::{self, Rational};
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeSet;

/// One piece `Fix(λ) / C(λ)` of an orbifold stratum.
#[derive(Debug, Clone)]
pub struct StratumPiece {
    /// Images of the elements of the subgroup under `λ`.
    pub lambda: Vec<usize>,
    pub polytope: Polytope,
    /// Order of the centralizer of `λ(Γ′)`, which acts on the piece.
    pub centralizer: usize,
    /// Orientation relative to the canonical frame of the piece, when the
    /// convention applies.
    pub orientation: Option<Sign>,
}

#[derive(Debug, Clone)]
pub struct Stratum {
    pub space_dim: usize,
    pub rho_dim: i64,
    pub dim: i64,
    pub pieces: Vec<StratumPiece>,
}

/// The tangent representation `τ ∘ λ` of `sub` on the direction space.
fn tangent_rep(action: &GroupAction, sub: &FiniteGroup, lambda: &[usize]) -> RealRep {
    let d = action.spaces[0].dim();
    let matrices = lambda.iter().map(|&g| action.tangent_matrix(g, 0)).collect();
    RealRep { group: sub.clone(), dim: d, matrices }
}

fn nontrivial_character(rep: &RealRep) -> Vec<Rational> {
    let t = Rational::from_integer(rep.trivial_multiplicity().into());
    rep.character().into_iter().map(|x| x - &t).collect()
}

/// Classes of injective morphisms `sub → group`, up to conjugation by the
/// elements of `conj` (a subgroup), as sorted representatives.
fn classes(group: &FiniteGroup, homs: Vec<Vec<usize>>, conj: &[usize]) -> Vec<Vec<usize>> {
    let mut out = BTreeSet::new();
    for h in homs {
        let rep = conj
            .iter()
            .map(|&s| h.iter().map(|&x| group.mul(group.mul(s, x), group.inv(s))).collect::<Vec<usize>>())
            .min()
            .expect("identity conjugates");
        out.insert(rep);
    }
    out.into_iter().collect()
}

fn fixed_polytope(action: &GroupAction, lambda: &[usize]) -> Option<Polytope> {
    let p = &action.spaces[0];
    let a = p.ambient_dim();
    let mut eq = Matrix::new();
    let mut rhs = Vec::new();
    for &g in lambda {
        let em = &action.maps[g][0];
        for i in 0..a {
            let mut row = em.matrix[i].clone();
            row[i] -= Rational::one();
            eq.push(row);
            rhs.push(-em.offset[i].clone());
        }
    }
    slice(p, &Polytope::point(Vec::new()), &eq, &rhs)
}

/// The stratum `X^{Γ′,ρ}` of a single polytope with a group action.
pub fn orbifold_stratum(action: &GroupAction, sub: &FiniteGroup, rho: &VirtualRep) -> Result<Stratum> {
    if action.spaces.len() != 1 {
        return Err(Error::Unsupported("strata of actions on several components".into()));
    }
    if !rho.is_honest() {
        return Err(Error::Precondition("orbifold strata take honest representations, not virtual ones".into()));
    }
    if rho.group.order() != sub.order() {
        return Err(Error::Schema("the representation is not of the given subgroup".into()));
    }
    let n = action.spaces[0].dim();
    let all: Vec<usize> = (0..action.group.order()).collect();
    let mut pieces = Vec::new();
    for lambda in classes(&action.group, action.group.injective_homs(sub), &all) {
        let rep = tangent_rep(action, sub, &lambda);
        if nontrivial_character(&rep) != rho.positive {
            continue;
        }
        let Some(polytope) = fixed_polytope(action, &lambda) else { continue };
        let centralizer = all
            .iter()
            .filter(|&&g| lambda.iter().all(|&x| action.group.mul(g, x) == action.group.mul(x, g)))
            .count();
        let orientation = piece_orientation(action, sub, &lambda, &polytope).ok();
        pieces.push(StratumPiece { lambda, polytope, centralizer, orientation });
    }
    let rho_dim = rho.dim();
    Ok(Stratum { space_dim: n, rho_dim, dim: n as i64 - rho_dim, pieces })
}

/// Orientation of a piece for a cyclic subgroup of odd order acting on the
/// normal space by a single rotation angle: the normal space is oriented by
/// `(v₁, A v₁, v₂, A v₂, …)` with `A` the action of the first generator,
/// i.e. by the complex structure in which `A` turns by an angle in `(0, π)`,
/// and the piece so that piece followed by normal gives the orientation of
/// the space (taken positive against its canonical frame).
pub fn piece_orientation(action: &GroupAction, sub: &FiniteGroup, lambda: &[usize], piece: &Polytope) -> Result<Sign> {
    if sub.order() % 2 == 0 {
        return Err(Error::EvenOrder(format!(
            "|Γ| = {} is even, so strata carry no induced orientation",
            sub.order()
        )));
    }
    let g0 = (0..sub.order())
        .find(|&g| sub.element_order(g) == sub.order())
        .ok_or_else(|| Error::Unsupported("orientations of strata for non-cyclic groups".into()))?;
    let p = &action.spaces[0];
    let d = p.dim();
    let rep = tangent_rep(action, sub, lambda);
    let a = &rep.matrices[g0];
    let normal = rep.nontrivial_subspace();
    let mut frame: Matrix = piece.hull().frame.iter().map(|v| p.hull().coords(v)).collect();
    if normal.is_empty() {
        return Ok(Sign::of(&det(&frame)).unwrap_or(Sign::Plus));
    }
    let v1 = &normal[0];
    let av1 = mat_vec(a, v1);
    let aav1 = mat_vec(a, &av1);
    // A² v + v = 2c A v on a single-angle normal space
    let lhs: Vec<Rational> = aav1.iter().zip(v1).map(|(x, y)| x + y).collect();
    let k = (0..d).find(|&i| !av1[i].is_zero()).expect("nonzero");
    let two_c = &lhs[k] / &av1[k];
    for v in &normal {
        let av = mat_vec(a, v);
        let aav = mat_vec(a, &av);
        if (0..d).any(|i| &aav[i] + &v[i] - &two_c * &av[i] != Rational::zero()) {
            return Err(Error::Unsupported("normal spaces with several rotation angles".into()));
        }
    }
    let mut span: Matrix = Vec::new();
    for v in &normal {
        let mut trial = span.clone();
        trial.push(v.clone());
        if rank(&trial, d) > span.len() {
            span.push(v.clone());
            span.push(mat_vec(a, v));
        }
    }
    frame.extend(span);
    Ok(Sign::of(&det(&frame)).expect("piece and normal span the tangent space"))
}

/// Fibre of `ι` over one point: the classes of `λ : Γ′ → Stab(p)` with the
/// given normal type, up to conjugation in `Stab(p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fibre {
    pub point: Vec<String>,
    pub stabilizer: usize,
    pub cardinality: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IotaReport {
    pub pass: bool,
    pub fibres: Vec<Fibre>,
    /// Number of injective morphisms `Γ′ → Γ`, bounding every fibre.
    pub bound: usize,
}

pub fn iota_fibre(action: &GroupAction, sub: &FiniteGroup, rho: &VirtualRep, p: &[Rational]) -> Result<Fibre> {
    let stab = action.stabilizer(0, p)?;
    let (sg, incl) = action.group.subgroup(&stab)?;
    let homs: Vec<Vec<usize>> =
        sg.injective_homs(sub).into_iter().map(|h| h.into_iter().map(|x| incl[x]).collect()).collect();
    let count = classes(&action.group, homs, &stab)
        .into_iter()
        .filter(|l| nontrivial_character(&tangent_rep(action, sub, l)) == rho.positive)
        .count();
    Ok(Fibre { point: rational::format_vec(p), stabilizer: stab.len(), cardinality: count })
}

/// Checks that `ι` has finite nonempty fibres over the centroid of every face
/// of every piece, bounded by the number of injective morphisms.
pub fn iota_check(action: &GroupAction, sub: &FiniteGroup, rho: &VirtualRep, stratum: &Stratum) -> Result<IotaReport> {
    let bound = action.group.injective_homs(sub).len();
    let mut points: BTreeSet<Point> = BTreeSet::new();
    for piece in &stratum.pieces {
        for f in 0..piece.polytope.lattice().len() {
            points.insert(piece.polytope.centroid_of(f));
        }
    }
    let mut fibres = Vec::new();
    for p in &points {
        fibres.push(iota_fibre(action, sub, rho, p)?);
    }
    let pass = fibres.iter().all(|f| f.cardinality >= 1 && f.cardinality <= bound);
    Ok(IotaReport { pass, fibres, bound })
}
