mod class;
mod examples;
mod morphisms;
mod present;
mod products;
mod strata;

pub use class::{BordismClass, ClosedReport, Gluing, Kind};
pub use examples::{annulus, circle_cover, covering_circle, identity_class, interval, point, polygon, square};
pub use morphisms::{degree, gluing_tags, pi_bo_kb, pi_kb_kh, pi_kcb_kch, KhCertificate, KhSummary};
pub use present::{boundary_class, check_no_corners, present_group, signed_keys, Presentation, Relation};
pub use products::{cap, cup};
pub use strata::{strata_projection, StrataProjection, StrataSummary};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::Ring;
    use crate::error::Error;
    use crate::geometry::Sign;
    use crate::maps::Target;
    use crate::orbifold::{hexagon, reflected_interval, rotation_rho, FiniteGroup, VirtualRep};
    use crate::rational::int;
    use num_bigint::BigInt;

    fn pt(s: Sign) -> BordismClass {
        point(&Target::point(), s, vec![])
    }

    #[test]
    fn closed_certificates() {
        assert!(pt(Sign::Plus).union(&pt(Sign::Minus)).check_closed().unwrap().pass);
        assert!(polygon(3).unwrap().check_closed().unwrap().pass);
        let r = interval().unwrap().check_closed().unwrap();
        assert!(!r.pass);
        assert!(matches!(interval().unwrap().require_closed(), Err(Error::NotClosed(_))));
        assert!(circle_cover(3, 2).unwrap().check_closed().unwrap().pass);
        // a gluing that keeps the boundary orientation is no certificate
        let mut bad = polygon(2).unwrap();
        bad.components[1] = bad.components[1].reversed();
        assert!(!bad.check_closed().unwrap().pass);
        assert_eq!(pi_bo_kb(&polygon(3).unwrap()).unwrap().components.len(), 3);
    }

    #[test]
    fn presentations() {
        let gens = vec![pt(Sign::Plus), pt(Sign::Minus)];
        let p = present_group(Ring::Z, &gens, &[interval().unwrap()]).unwrap();
        assert_eq!(p.factors(), vec!["Z".to_string()]);
        assert_eq!(p.relations.last().unwrap().coefficients, vec![BigInt::from(1), BigInt::from(1)]);
        let swapped = present_group(Ring::Z, &[gens[1].clone(), gens[0].clone()], &[interval().unwrap()]).unwrap();
        assert_eq!(swapped.factors(), p.factors());
        let free = present_group(Ring::Z, &gens[..1], &[]).unwrap();
        assert_eq!(free.factors(), vec!["Z".to_string()]);
        let still = present_group(Ring::Z, &gens[..1], &[interval().unwrap()]).unwrap();
        assert_eq!(still.factors(), vec!["Z".to_string()]);
        assert!(matches!(present_group(Ring::Z, &gens, &[square().unwrap()]), Err(Error::HasCorners(_))));
        // twice a point bounds nothing new over Q either
        let q = present_group(Ring::Q, &gens, &[interval().unwrap()]).unwrap();
        assert_eq!(q.factors(), vec!["Q".to_string()]);
    }

    #[test]
    fn annulus_boundary_is_two_circles() {
        let a = annulus(3).unwrap();
        check_no_corners(&a).unwrap();
        let b = boundary_class(&a).unwrap();
        assert_eq!(b.components.len(), 6);
        let r = b.check_closed().unwrap();
        assert!(r.pass, "{:?}", r.witness);
    }

    #[test]
    fn homology_certificates() {
        for b in [pt(Sign::Plus), polygon(3).unwrap(), circle_cover(2, 1).unwrap()] {
            let c = pi_kb_kh(&b).unwrap();
            assert!(c.cycle);
            assert!(c.tag_independent);
        }
        assert_eq!(degree(&pi_kb_kh(&pt(Sign::Plus)).unwrap().chain), int(1));
        assert_eq!(degree(&pi_kb_kh(&polygon(3).unwrap()).unwrap().chain), int(0));
        let empty = pi_kb_kh(&BordismClass::empty(Kind::Bordism)).unwrap();
        assert!(empty.chain.is_zero() && empty.witness.is_zero());
    }

    #[test]
    fn cup_and_cap() {
        let id = identity_class(&Target::torus(1)).unwrap();
        let b = covering_circle(2).unwrap();
        let u = cup(&id, &b).unwrap();
        assert_eq!(signed_keys(&u).unwrap(), signed_keys(&b).unwrap());
        let c = circle_cover(3, 1).unwrap();
        let capped = cap(&c, &id).unwrap();
        assert_eq!(signed_keys(&capped).unwrap(), signed_keys(&c).unwrap());
        let prod = cup(&covering_circle(2).unwrap(), &covering_circle(3).unwrap()).unwrap();
        assert_eq!(prod.dims(), vec![1]);
        assert!(pi_kcb_kch(&prod).is_ok());
    }

    #[test]
    fn strata_projections() {
        let z3 = FiniteGroup::cyclic(3);
        let hex = hexagon();
        let model = BordismClass {
            kind: Kind::Bordism,
            components: vec![crate::maps::MappedCell::new(
                crate::maps::Cell::polytope(hex.spaces[0].clone()),
                crate::maps::AffineMap::constant(Target::point(), 2, vec![]),
            )
            .unwrap()],
            gluings: Vec::new(),
        };
        let s = strata_projection(&model, &hex, &z3, &rotation_rho()).unwrap();
        assert_eq!(s.shift, -2);
        assert_eq!(s.class.dims(), vec![0]);
        assert_eq!(s.class.components.len(), 2);
        let z1 = FiniteGroup::trivial();
        let same = strata_projection(&model, &hex, &z1, &VirtualRep::zero(z1.clone())).unwrap();
        assert_eq!(same.shift, 0);
        assert_eq!(same.class.components[0].cell, model.components[0].cell);
        let z2 = FiniteGroup::cyclic(2);
        let r = strata_projection(&model, &reflected_interval(), &z2, &VirtualRep::zero(z2.clone()));
        assert!(matches!(r, Err(Error::EvenOrder(_))));
    }
}
