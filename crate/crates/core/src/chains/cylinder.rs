use super::chain::{Chain, Ring};
use super::generator::Component;
use super::tag::{Tag, CYLINDER_MARK};
use crate::error::{Error, Result};
use crate::geometry::{OrientedPolytope, Polytope};
use crate::maps::{AffineMap, Cell, MappedCell};
use crate::rational::Rational;
use num_traits::{One, Zero};
use std::collections::BTreeSet;

/// `[0,1] × X` with the map `f ∘ π_X`, carrying `g` at the `0` end, `g_alt`
/// at the `1` end, and labels `G(F) ++ [mark] ++ G′(F)` on `[0,1] × F`.
pub fn cylinder(x: &Component, g_alt: &Tag) -> Result<Component> {
    let p = &x.piece.cell.body.polytope;
    g_alt.check_shape(p)?;
    let unit = Polytope::cuboid(&[(Rational::zero(), Rational::one())])?;
    let w = unit.product(p);
    let n = p.vertices().len();
    let labels = w
        .lattice()
        .faces()
        .iter()
        .map(|f| {
            let ends: BTreeSet<usize> = f.vertices.iter().map(|v| v / n).collect();
            let mut vs: Vec<usize> = f.vertices.iter().map(|v| v % n).collect();
            vs.sort();
            vs.dedup();
            let pf = p.lattice().index_of(&vs).expect("product faces project to faces");
            let (a, b) = (&x.tag.labels[pf], &g_alt.labels[pf]);
            match (ends.contains(&0), ends.contains(&1)) {
                (true, false) => a.clone(),
                (false, true) => b.clone(),
                _ => a.iter().copied().chain([CYLINDER_MARK]).chain(b.iter().copied()).collect(),
            }
        })
        .collect();
    let tag = Tag { labels };
    let mut seen = BTreeSet::new();
    if !tag.labels.iter().all(|l| seen.insert(l)) {
        return Err(Error::Precondition("the two end tags share a label, so the cylinder tag is not injective".into()));
    }
    let a = p.ambient_dim();
    let mut frame = vec![{
        let mut t = vec![Rational::zero(); a + 1];
        t[0] = Rational::one();
        t
    }];
    frame.extend(p.hull().frame.iter().cloned().map(|v| {
        let mut u = vec![Rational::zero()];
        u.extend(v);
        u
    }));
    let body = OrientedPolytope::from_frame(w, &frame, x.piece.cell.sign())?;
    let map = AffineMap::new(
        x.piece.map.target.clone(),
        x.piece.map.matrix.iter().map(|r| std::iter::once(Rational::zero()).chain(r.iter().cloned()).collect()).collect(),
        x.piece.map.offset.clone(),
    );
    Ok(Component { piece: MappedCell { cell: Cell::new(body, x.piece.cell.circles), map }, tag })
}

/// Checks `∂W = [X, G′] − [X, G] − [0,1] × ∂X` for the cylinder `W`.
/// Returns `W` and the discrepancy, if any.
pub fn cylinder_witness(x: &Component, g_alt: &Tag) -> Result<(Component, Option<Chain>)> {
    let w = cylinder(x, g_alt)?;
    let lhs = Chain::single(Ring::Q, &w)?.boundary()?;
    let alt = Component { piece: x.piece.clone(), tag: g_alt.clone() };
    let mut rhs = Chain::single(Ring::Q, &alt)?.sub(&Chain::single(Ring::Q, x)?);
    let p = &x.piece.cell.body.polytope;
    for f in x.boundary() {
        let (_, map) = p.face_polytope(facet_index(p, &f));
        let restricted = Tag { labels: map.iter().map(|&g| g_alt.labels[g].clone()).collect() };
        rhs = rhs.sub(&Chain::single(Ring::Q, &cylinder(&f, &restricted)?)?);
    }
    let diff = lhs.sub(&rhs);
    Ok((w, (!diff.is_zero()).then_some(diff)))
}

fn facet_index(p: &Polytope, f: &Component) -> usize {
    let fp = &f.piece.cell.body.polytope;
    let vs: Vec<usize> = fp.vertices().iter().map(|v| p.vertices().binary_search(v).expect("facet vertex")).collect();
    p.lattice().index_of(&vs).expect("facet")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Sign;
    use crate::maps::Target;
    use crate::rational::int;

    fn over_point(p: Polytope) -> Component {
        let n = p.ambient_dim();
        let tag = Tag::enumerate(&p);
        Component::new(
            MappedCell::new(Cell::new(OrientedPolytope::new(p, Sign::Plus), 0), AffineMap::constant(Target::point(), n, vec![])).unwrap(),
            tag,
        )
        .unwrap()
    }

    #[test]
    fn point_and_interval_witnesses() {
        let pt = over_point(Polytope::point(vec![int(2)]));
        let (w, diff) = cylinder_witness(&pt, &pt.tag.shifted(10)).unwrap();
        assert_eq!(w.dim(), 1);
        assert!(diff.is_none());
        let seg = over_point(Polytope::cuboid(&[(int(0), int(1))]).unwrap());
        let (w, diff) = cylinder_witness(&seg, &seg.tag.shifted(10)).unwrap();
        assert_eq!(w.dim(), 2);
        assert!(diff.is_none(), "{diff:?}");
        let distinct: BTreeSet<_> = w.tag.labels.iter().collect();
        assert_eq!(distinct.len(), w.tag.labels.len());
    }

    #[test]
    fn clashing_ends_rejected() {
        let seg = over_point(Polytope::cuboid(&[(int(0), int(1))]).unwrap());
        assert!(matches!(cylinder(&seg, &seg.tag), Err(Error::Precondition(_))));
    }
}
