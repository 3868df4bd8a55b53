use super::chain::Chain;
use super::generator::Component;
use super::key::canonical;
use crate::error::Result;
use crate::geometry::{second_boundary, sigma, CornerComponent, Sign};
use crate::maps::{Cell, MappedCell};
use serde::Serialize;

/// Outcome of a ∂∘∂ check on one chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DdReport {
    pub pass: bool,
    /// Whether ∂∂c canonicalized to zero.
    pub dd_zero: bool,
    pub corners: usize,
    pub pairs: usize,
    pub witness: Option<String>,
}

fn corner_component(parent: &Component, c: &CornerComponent, flip: bool) -> Component {
    let p = &parent.piece.cell.body.polytope;
    let mut body = c.corner.clone();
    if flip {
        body = body.reversed();
    }
    Component {
        piece: MappedCell { cell: Cell::new(body, parent.piece.cell.circles), map: parent.piece.map.clone() },
        tag: parent.tag.restrict(p, c.face),
    }
}

/// Checks ∂∂c = 0 and the mechanism behind it: every corner of every term
/// meets its flag-swapped partner with the same restricted data and the
/// opposite orientation. `corrupt` flips the sign of one corner (counted
/// across the whole chain) to exercise the failure path.
pub fn verify_dd_zero(c: &Chain, corrupt: Option<usize>) -> Result<DdReport> {
    let dd = c.boundary()?.boundary()?;
    let mut corners = 0;
    let mut pairs = 0;
    let mut witness = None;
    for (key, _) in &c.terms {
        let comp = key.component();
        if comp.piece.cell.body.dim() < 2 {
            continue;
        }
        let p = &comp.piece.cell.body.polytope;
        let all = second_boundary(&comp.piece.cell.body)?;
        let base = corners;
        corners += all.len();
        for (i, cc) in all.iter().enumerate() {
            // each unordered flag once
            if cc.flag.0 > cc.flag.1 {
                continue;
            }
            let partner = sigma(cc);
            let j = all.iter().position(|x| x.face == partner.face && x.flag == partner.flag).expect("sigma stays in the list");
            let a = corner_component(&comp, cc, corrupt == Some(base + i));
            let b = corner_component(&comp, &partner, corrupt == Some(base + j));
            // restricting through either facet gives the same tag
            let via = comp.tag.restrict(p, cc.flag.0);
            let (f0, map0) = p.face_polytope(cc.flag.0);
            let local = map0.iter().position(|&g| g == cc.face).expect("corner in facet");
            let coherent = via.restrict(f0, local) == a.tag;
            let ka = canonical(&a)?;
            let kb = canonical(&b)?;
            let cancels = ka.key == kb.key
                && match (ka.sign, kb.sign) {
                    (Some(x), Some(y)) => x == -y,
                    (None, None) => true,
                    _ => false,
                };
            if coherent && cancels {
                pairs += 1;
            } else if witness.is_none() {
                let s = |x: Option<Sign>| x.map_or("0".to_string(), |s| s.to_int().to_string());
                witness = Some(format!(
                    "face {} of a {}-dimensional term: flag ({}, {}) has sign {}, flag ({}, {}) has sign {}{}",
                    cc.face,
                    key.dim(),
                    cc.flag.0,
                    cc.flag.1,
                    s(ka.sign),
                    partner.flag.0,
                    partner.flag.1,
                    s(kb.sign),
                    if coherent { "" } else { "; restricted tags disagree" }
                ));
            }
        }
    }
    let dd_zero = dd.is_zero();
    if !dd_zero && witness.is_none() {
        witness = Some(format!("∂∂c has {} nonzero terms", dd.len()));
    }
    Ok(DdReport { pass: dd_zero && witness.is_none(), dd_zero, corners, pairs, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{Ring, Tag};
    use crate::geometry::{OrientedPolytope, Polytope};
    use crate::maps::{AffineMap, Target};
    use crate::rational::int;

    fn cube_chain() -> Chain {
        let p = Polytope::cuboid(&[(int(0), int(1)), (int(0), int(2)), (int(0), int(1))]).unwrap();
        let tag = Tag::enumerate(&p);
        let mc = MappedCell::new(
            Cell::new(OrientedPolytope::new(p, Sign::Plus), 0),
            AffineMap::new(Target::euclid(1), vec![vec![int(1), int(2), int(0)]], vec![int(3)]),
        )
        .unwrap();
        Chain::single(Ring::Q, &Component::new(mc, tag).unwrap()).unwrap()
    }

    #[test]
    fn cube_pairs_all_corners() {
        let r = verify_dd_zero(&cube_chain(), None).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.corners, 24);
        assert_eq!(r.pairs, 12);
    }

    #[test]
    fn corrupted_corner_is_caught() {
        let r = verify_dd_zero(&cube_chain(), Some(5)).unwrap();
        assert!(!r.pass);
        assert!(r.dd_zero);
        assert!(r.witness.unwrap().contains("flag"));
    }
}
