use super::class::{BordismClass, Gluing, Kind};
use crate::error::Result;
use crate::geometry::{OrientedPolytope, Polytope, Sign};
use crate::maps::{identity_cell, AffineMap, Cell, MappedCell, Target};
use crate::rational::{frac, int};

fn vertex_facet(p: &Polytope, v: usize) -> usize {
    p.lattice().index_of(&[v]).expect("vertex")
}

/// A point with orientation `sign`, at `value` in `y`.
pub fn point(y: &Target, sign: Sign, value: Vec<crate::Rational>) -> BordismClass {
    let cell = Cell::new(OrientedPolytope::new(Polytope::point(vec![]), sign), 0);
    let map = AffineMap::constant(y.clone(), 0, value);
    BordismClass { kind: Kind::Bordism, components: vec![MappedCell { cell, map }], gluings: Vec::new() }
}

/// A circle as `n` unit intervals glued end to start, mapping to a point.
pub fn polygon(n: usize) -> Result<BordismClass> {
    let seg = Polytope::cuboid(&[(int(0), int(1))])?;
    let comp = MappedCell::new(Cell::polytope(seg.clone()), AffineMap::constant(Target::point(), 1, vec![]))?;
    let gluings = (0..n)
        .map(|k| Gluing { a: (k, vertex_facet(&seg, 1)), b: ((k + 1) % n, vertex_facet(&seg, 0)), image: vec![0] })
        .collect();
    BordismClass::new(Kind::Bordism, vec![comp; n], gluings)
}

/// The circle `ℝ/ℤ` cut into `n` intervals, mapping to `Torus(1)` by
/// `t ↦ degree·t`.
pub fn circle_cover(n: usize, degree: i64) -> Result<BordismClass> {
    let mut comps = Vec::new();
    for k in 0..n as i64 {
        let seg = Polytope::cuboid(&[(frac(k, n as i64), frac(k + 1, n as i64))])?;
        comps.push(MappedCell::new(
            Cell::polytope(seg),
            AffineMap::new(Target::torus(1), vec![vec![int(degree)]], vec![int(0)]),
        )?);
    }
    let gluings = (0..n)
        .map(|k| {
            let here = &comps[k].cell.body.polytope;
            let next = &comps[(k + 1) % n].cell.body.polytope;
            Gluing { a: (k, vertex_facet(here, 1)), b: ((k + 1) % n, vertex_facet(next, 0)), image: vec![0] }
        })
        .collect();
    BordismClass::new(Kind::Bordism, comps, gluings)
}

/// `[T¹, θ ↦ degree·θ]` over `Torus(1)`, a cobordism class when the degree is
/// nonzero.
pub fn covering_circle(degree: i64) -> Result<BordismClass> {
    let cell = Cell::new(OrientedPolytope::new(Polytope::point(vec![]), Sign::Plus), 1);
    let map = AffineMap::new(Target::torus(1), vec![vec![int(degree)]], vec![int(0)]);
    BordismClass::new(Kind::Cobordism, vec![MappedCell::new(cell, map)?], Vec::new())
}

/// `[Y, id_Y]` for a torus.
pub fn identity_class(y: &Target) -> Result<BordismClass> {
    BordismClass::new(Kind::Cobordism, vec![identity_cell(y)], Vec::new())
}

/// `[0, 1] → Point`, a relation space with two boundary points.
pub fn interval() -> Result<BordismClass> {
    let seg = Polytope::cuboid(&[(int(0), int(1))])?;
    let comp = MappedCell::new(Cell::polytope(seg), AffineMap::constant(Target::point(), 1, vec![]))?;
    BordismClass::new(Kind::Bordism, vec![comp], Vec::new())
}

/// The unit square over a point, which has corners.
pub fn square() -> Result<BordismClass> {
    let sq = Polytope::cuboid(&[(int(0), int(1)), (int(0), int(1))])?;
    let comp = MappedCell::new(Cell::polytope(sq), AffineMap::constant(Target::point(), 2, vec![]))?;
    BordismClass::new(Kind::Bordism, vec![comp], Vec::new())
}

/// An annulus `[0, 1] × S¹` from `n` unit squares glued side to side, over a
/// point; its boundary is two circles with opposite orientations.
pub fn annulus(n: usize) -> Result<BordismClass> {
    let sq = Polytope::cuboid(&[(int(0), int(1)), (int(0), int(1))])?;
    let comp = MappedCell::new(Cell::polytope(sq.clone()), AffineMap::constant(Target::point(), 2, vec![]))?;
    // vertices in order (0,0), (0,1), (1,0), (1,1); glue x = 1 of square k to x = 0 of square k+1
    let right = sq.lattice().index_of(&[2, 3]).expect("edge");
    let left = sq.lattice().index_of(&[0, 1]).expect("edge");
    let gluings = (0..n).map(|k| Gluing { a: (k, right), b: ((k + 1) % n, left), image: vec![0, 1] }).collect();
    BordismClass::new(Kind::Bordism, vec![comp; n], gluings)
}
