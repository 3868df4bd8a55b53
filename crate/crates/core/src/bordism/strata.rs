use super::class::BordismClass;
use crate::error::{Error, Result};
use crate::geometry::OrientedPolytope;
use crate::maps::{Cell, MappedCell};
use crate::orbifold::{orbifold_stratum, FiniteGroup, GroupAction, VirtualRep};
use serde::Serialize;

#[derive(Debug, Clone)]
pub struct StrataProjection {
    pub class: BordismClass,
    /// Change of dimension, `−dim ρ`.
    pub shift: i64,
    /// Whether the stratum inherits a closed certificate.
    pub closed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct StrataSummary {
    pub pieces: usize,
    pub dims: Vec<usize>,
    pub signs: Vec<i64>,
    pub shift: i64,
    pub closed: bool,
}

impl StrataProjection {
    pub fn summary(&self) -> StrataSummary {
        StrataSummary {
            pieces: self.class.components.len(),
            dims: self.class.components.iter().map(|c| c.cell.dim()).collect(),
            signs: self.class.components.iter().map(|c| c.cell.sign().to_int()).collect(),
            shift: self.shift,
            closed: self.closed,
        }
    }
}

/// `[X, f] ↦ [X^{Γ,ρ}, f|]` for a one-component global quotient model, with
/// `|Γ|` odd so that the strata are oriented.
pub fn strata_projection(
    b: &BordismClass,
    action: &GroupAction,
    sub: &FiniteGroup,
    rho: &VirtualRep,
) -> Result<StrataProjection> {
    if sub.order() % 2 == 0 {
        return Err(Error::EvenOrder(format!(
            "|Γ| = {} is even: the normal bundles of strata need not be orientable, so only odd orders project",
            sub.order()
        )));
    }
    let [c] = b.components.as_slice() else {
        return Err(Error::Unsupported("strata projection of classes with several components".into()));
    };
    if c.cell.circles > 0 || action.spaces.len() != 1 || action.spaces[0] != c.cell.body.polytope {
        return Err(Error::Precondition("the action must act on the polytope of the single component".into()));
    }
    let s = orbifold_stratum(action, sub, rho)?;
    let mut components = Vec::new();
    for p in &s.pieces {
        let sign = p.orientation.ok_or_else(|| Error::Unsupported("a stratum piece has no induced orientation".into()))?;
        components.push(MappedCell {
            cell: Cell::new(OrientedPolytope::new(p.polytope.clone(), sign * c.cell.sign()), 0),
            map: c.map.clone(),
        });
    }
    let whole = components.len() == 1 && components[0].cell.body.polytope == c.cell.body.polytope;
    let gluings = if whole { b.gluings.clone() } else { Vec::new() };
    let class = BordismClass { kind: b.kind, components, gluings };
    let closed = class.check_closed()?.pass;
    Ok(StrataProjection { class, shift: -(rho.dim()), closed })
}
