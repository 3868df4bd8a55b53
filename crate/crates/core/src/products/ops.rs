use super::cochain::Cochain;
use crate::chains::{merge, Chain, Component, Tag};
use crate::error::{Error, Result};
use crate::geometry::{OrientedPolytope, Polytope, Sign};
use crate::linalg::identity;
use crate::maps::{fibre_product, identity_cell, AffineMap, Cell, MappedCell, Target, TargetMap};
use crate::rational::Rational;
use num_traits::{One, Zero};


/// Fibre products of all pairs of terms, labelled by merged face labels.
fn product(a: &Chain, b: &Chain) -> Result<Chain> {
    let mut out = Chain::zero(a.ring);
    for (ka, ca) in &a.terms {
        let x = ka.component();
        for (kb, cb) in &b.terms {
            let y = kb.component();
            for fc in fibre_product(&x.piece, &y.piece)? {
                let labels = fc.provenance.iter().map(|&(i, j)| merge(&x.tag.labels[i], &y.tag.labels[j])).collect();
                out.add_component(&(ca * cb), &Component { piece: fc.piece, tag: Tag { labels } })?;
            }
        }
    }
    Ok(out)
}

fn same_target(a: &Target, b: &Target) -> Result<()> {
    if a != b {
        return Err(Error::TargetMismatch(format!("{a} vs {b}")));
    }
    Ok(())
}

/// `[X, f, C] ∪ [X̃, f̃, C̃] = [X ×_Y X̃, π_Y, C ×_Y C̃]`.
pub fn cup(g: &Cochain, d: &Cochain) -> Result<Cochain> {
    same_target(&g.target, &d.target)?;
    Ok(Cochain { target: g.target.clone(), chain: product(&g.chain, &d.chain)? })
}

/// `[X, f, G] ∩ [X̃, f̃, C̃] = [X ×_Y X̃, π_Y, G ×_Y C̃]`.
pub fn cap(a: &Chain, d: &Cochain) -> Result<Chain> {
    if let Some(k) = a.terms.keys().next() {
        same_target(&k.target, &d.target)?;
    }
    product(a, &d.chain)
}

/// `[Y, id_Y, C_Y]` for a compact target.
pub fn identity_cochain(y: &Target) -> Result<Cochain> {
    if !y.is_compact() {
        return Err(Error::Precondition(format!("{y} is not compact, so it has no identity cochain")));
    }
    let mc = identity_cell(y);
    let tag = Tag::blank(&mc.cell.body.polytope);
    Cochain::from_components(y.clone(), &[(Rational::one(), Component { piece: mc, tag })])
}

/// `h^*[X, f, C] = [Y ×_{h,Z,f} X, π_Y, h^*(C)]`.
pub fn pullback(h: &TargetMap, d: &Cochain) -> Result<Cochain> {
    same_target(&h.target, &d.target)?;
    if !h.is_proper() {
        return Err(Error::Precondition("pullback needs a proper map: its line directions must inject into lines".into()));
    }
    let y = &h.source;
    if !y.lines().is_empty() {
        // a proper h then sees a line axis in the target, and no compact cell
        // submerses onto a line, so `d` is zero
        debug_assert!(d.is_zero());
        return Ok(Cochain::zero(y.clone()));
    }
    let m = y.dim();
    let cell = Cell::new(OrientedPolytope::new(Polytope::point(Vec::new()), Sign::Plus), m);
    let to_y = AffineMap::new(y.clone(), identity(m), vec![Rational::zero(); m]);
    // not validated: circles of Y may collapse under h
    let ycell = MappedCell { cell, map: AffineMap::new(h.target.clone(), h.matrix.clone(), h.offset.clone()) };
    let blank = Tag::blank(&ycell.cell.body.polytope);
    let mut out = Chain::zero(d.chain.ring);
    for (k, c) in &d.chain.terms {
        let x = k.component();
        for fc in fibre_product(&ycell, &x.piece)? {
            let labels = fc.provenance.iter().map(|&(i, j)| merge(&blank.labels[i], &x.tag.labels[j])).collect();
            let map = to_y.pull(&fc.first(&ycell));
            let piece = MappedCell::new(fc.piece.cell.clone(), map)?;
            out.add_component(c, &Component { piece, tag: Tag { labels } })?;
        }
    }
    Cochain::new(y.clone(), out)
}

/// Forgets the co-gauge structure: the same data read as a chain, oriented
/// by the coorientation and the orientation `y_orientation` of the target.
pub fn duality(d: &Cochain, y_orientation: Sign) -> Chain {
    d.chain.scale(&y_orientation.to_rational())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::Ring;
    use crate::products::{check_cap, check_dga, check_duality, check_projection_formula, check_pullback};
    use crate::rational::int;

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    /// `P × T^c` mapped to `target` by `matrix` and `offset`, tags shifted by `shift`.
    fn comp(p: Polytope, circles: usize, target: Target, matrix: &[&[i64]], offset: &[i64], shift: u64) -> Component {
        let tag = Tag::enumerate(&p).shifted(shift);
        let mc = MappedCell::new(
            Cell::new(OrientedPolytope::new(p, Sign::Plus), circles),
            AffineMap::new(target, matrix.iter().map(|row| r(row)).collect(), r(offset)),
        )
        .unwrap();
        Component::new(mc, tag).unwrap()
    }

    fn co(target: &Target, c: Component) -> Cochain {
        Cochain::from_components(target.clone(), &[(int(1), c)]).unwrap()
    }

    fn seg(lo: i64, hi: i64) -> Polytope {
        Polytope::cuboid(&[(int(lo), int(hi))]).unwrap()
    }

    fn all_pass(v: &[(String, crate::maps::Check)]) {
        for (n, c) in v {
            assert!(c.pass, "{n}: {:?}", c.witness);
        }
    }

    #[test]
    fn dga_over_circle() {
        let t = Target::torus(1);
        let cover = co(&t, comp(Polytope::point(vec![]), 1, t.clone(), &[&[2]], &[0], 0));
        let cyl = co(&t, comp(seg(0, 1), 1, t.clone(), &[&[1, 1]], &[0], 10));
        let cyl2 = co(&t, comp(seg(0, 2), 1, t.clone(), &[&[1, 3]], &[0], 20));
        assert_eq!(cover.degrees(), vec![0]);
        assert_eq!(cyl.degrees(), vec![-1]);
        all_pass(&check_dga(&cover, &cyl, &cyl2).unwrap());
        all_pass(&check_dga(&cyl, &cyl2, &cover).unwrap());
        all_pass(&check_dga(&cyl2, &cyl, &cyl).unwrap());
        let one = identity_cochain(&t).unwrap();
        assert_eq!(cup(&one, &one).unwrap(), one);
        assert!(cup(&Cochain::zero(t.clone()), &cyl).unwrap().is_zero());
    }

    #[test]
    fn odd_degrees_anticommute_over_torus2() {
        let t = Target::torus(2);
        let a = co(&t, comp(seg(0, 1), 2, t.clone(), &[&[1, 1, 0], &[0, 0, 1]], &[0, 0], 0));
        let b = co(&t, comp(seg(0, 1), 2, t.clone(), &[&[0, 1, 0], &[1, 0, 1]], &[0, 0], 10));
        assert_eq!(a.degrees(), vec![-1]);
        let ab = cup(&a, &b).unwrap();
        let ba = cup(&b, &a).unwrap();
        assert!(!ab.is_zero());
        assert_eq!(ab, ba.scale(&int(-1)));
        all_pass(&check_dga(&a, &b, &a).unwrap());
    }

    #[test]
    fn cap_axioms_and_projection() {
        let t = Target::torus(1);
        let arc = comp(seg(0, 1), 0, t.clone(), &[&[1]], &[0], 0);
        let a = Chain::single(Ring::Q, &arc).unwrap();
        let cover = co(&t, comp(Polytope::point(vec![]), 1, t.clone(), &[&[2]], &[0], 10));
        let cyl = co(&t, comp(seg(0, 1), 1, t.clone(), &[&[1, 1]], &[0], 20));
        all_pass(&check_cap(&a, &cover, &cyl).unwrap());
        all_pass(&check_cap(&a, &cyl, &cover).unwrap());
        let double = TargetMap::new(t.clone(), t.clone(), vec![r(&[2])], r(&[0])).unwrap();
        let (n, c) = check_projection_formula(&a, &cyl, &double).unwrap();
        assert!(c.pass, "{n}: {:?}", c.witness);
        all_pass(&check_pullback(&cover, &cyl, &double).unwrap());
        all_pass(&check_duality(&cyl).unwrap());
    }

    #[test]
    fn doubling_pullback_of_a_cover() {
        let t = Target::torus(1);
        let cover = co(&t, comp(Polytope::point(vec![]), 1, t.clone(), &[&[2]], &[0], 0));
        let double = TargetMap::new(t.clone(), t.clone(), vec![r(&[2])], r(&[0])).unwrap();
        let pulled = pullback(&double, &cover).unwrap();
        let circle = co(&t, comp(Polytope::point(vec![]), 1, t.clone(), &[&[1]], &[0], 0));
        assert_eq!(pulled, circle.scale(&int(2)));
        assert_eq!(pullback(&TargetMap::identity(&t), &cover).unwrap(), cover);
    }

    #[test]
    fn line_targets_have_no_nonzero_cochains() {
        let e1 = Target::euclid(1);
        let e2 = Target::euclid(2);
        let sq = Polytope::cuboid(&[(int(0), int(2)), (int(0), int(3))]).unwrap();
        let r2 = Cochain::from_components(e2.clone(), &[(int(1), comp(sq, 0, e2.clone(), &[&[1, 0], &[0, 1]], &[0, 0], 0))]);
        assert!(matches!(r2, Err(Error::NotSubmersion(_))));
        let h = TargetMap::new(e1.clone(), e2.clone(), vec![r(&[1]), r(&[2])], r(&[0, 1])).unwrap();
        assert!(pullback(&h, &Cochain::zero(e2.clone())).unwrap().is_zero());
        let flat = TargetMap::new(e2.clone(), e1.clone(), vec![r(&[1, 0])], r(&[0])).unwrap();
        assert!(matches!(pullback(&flat, &Cochain::zero(e1.clone())), Err(Error::Precondition(_))));
        assert!(matches!(identity_cochain(&e1), Err(Error::Precondition(_))));
    }
}
