use super::target::{Axis, Target, TargetMap};
use crate::error::{Error, Result};
use crate::geometry::{OrientedPolytope, Polytope, Sign};
use crate::linalg::{add, det, mat_mul, mat_vec, nullspace, rank, solve, Matrix};
use crate::rational::Rational;
use num_traits::{One, Zero};

/// A connected model space `P × T^r`: an oriented polytope times `r` circles,
/// oriented by the polytope frame followed by the circle coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cell {
    pub body: OrientedPolytope,
    pub circles: usize,
}

impl Cell {
    pub fn new(body: OrientedPolytope, circles: usize) -> Cell {
        Cell { body, circles }
    }

    pub fn polytope(p: Polytope) -> Cell {
        Cell { body: OrientedPolytope::new(p, Sign::Plus), circles: 0 }
    }

    pub fn dim(&self) -> usize {
        self.body.dim() + self.circles
    }

    pub fn ambient(&self) -> usize {
        self.body.polytope.ambient_dim()
    }

    /// Length of a coordinate vector `(x, θ)`.
    pub fn coord_len(&self) -> usize {
        self.ambient() + self.circles
    }

    pub fn sign(&self) -> Sign {
        self.body.sign
    }

    pub fn reversed(&self) -> Cell {
        Cell { body: self.body.reversed(), circles: self.circles }
    }

    /// Canonical tangent frame in `(x, θ)` coordinates.
    pub fn frame(&self) -> Matrix {
        let a = self.ambient();
        let mut f: Matrix = self
            .body
            .polytope
            .hull()
            .frame
            .iter()
            .map(|v| {
                let mut w = v.clone();
                w.extend(std::iter::repeat(Rational::zero()).take(self.circles));
                w
            })
            .collect();
        for j in 0..self.circles {
            let mut w = vec![Rational::zero(); a + self.circles];
            w[a + j] = Rational::one();
            f.push(w);
        }
        f
    }

    /// Coordinates of a tangent vector in the canonical frame.
    pub fn frame_coords(&self, v: &[Rational]) -> Vec<Rational> {
        let a = self.ambient();
        let mut c = self.body.polytope.hull().coords(&v[..a]);
        c.extend(v[a..].iter().cloned());
        c
    }
}

/// Affine map from `(x, θ)` coordinates of a cell to lifts of target points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AffineMap {
    pub target: Target,
    pub matrix: Matrix,
    pub offset: Vec<Rational>,
}

impl AffineMap {
    pub fn new(target: Target, matrix: Matrix, offset: Vec<Rational>) -> AffineMap {
        AffineMap { target, matrix, offset }
    }

    pub fn constant(target: Target, cols: usize, value: Vec<Rational>) -> AffineMap {
        let matrix = vec![vec![Rational::zero(); cols]; target.dim()];
        AffineMap { target, matrix, offset: value }
    }

    pub fn apply(&self, p: &[Rational]) -> Vec<Rational> {
        add(&mat_vec(&self.matrix, p), &self.offset)
    }

    /// Linear part applied to a direction.
    pub fn differential(&self, v: &[Rational]) -> Vec<Rational> {
        mat_vec(&self.matrix, v)
    }

    /// `h ∘ self`.
    pub fn then(&self, h: &TargetMap) -> Result<AffineMap> {
        if h.source != self.target {
            return Err(Error::TargetMismatch(format!("{} vs {}", self.target, h.source)));
        }
        let cols = self.matrix.first().map_or(0, |r| r.len());
        let matrix = if self.target.dim() == 0 {
            vec![vec![Rational::zero(); cols]; h.target.dim()]
        } else {
            mat_mul(&h.matrix, &self.matrix, cols)
        };
        Ok(AffineMap { target: h.target.clone(), matrix, offset: h.apply(&self.offset) })
    }

    /// Precomposition with an affine change of coordinates `p = e.apply(q)`.
    pub fn pull(&self, e: &Embedding) -> AffineMap {
        let cols = e.source_len();
        let matrix = mat_mul(&self.matrix, &e.matrix, cols);
        AffineMap { target: self.target.clone(), matrix, offset: self.apply(&e.offset) }
    }
}

/// Affine change of coordinates `q ↦ matrix q + offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub matrix: Matrix,
    pub offset: Vec<Rational>,
    pub cols: usize,
}

impl Embedding {
    pub fn identity(n: usize) -> Embedding {
        Embedding { matrix: crate::linalg::identity(n), offset: vec![Rational::zero(); n], cols: n }
    }

    pub fn source_len(&self) -> usize {
        self.cols
    }

    pub fn apply(&self, q: &[Rational]) -> Vec<Rational> {
        add(&mat_vec(&self.matrix, q), &self.offset)
    }

    pub fn linear(&self, v: &[Rational]) -> Vec<Rational> {
        mat_vec(&self.matrix, v)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Embedding) -> Embedding {
        Embedding {
            matrix: mat_mul(&self.matrix, &inner.matrix, inner.cols),
            offset: self.apply(&inner.offset),
            cols: inner.cols,
        }
    }

    /// Block-diagonal combination acting on concatenated coordinates.
    pub fn direct_sum(&self, other: &Embedding) -> Embedding {
        let rows = self.matrix.len() + other.matrix.len();
        let cols = self.cols + other.cols;
        let mut matrix = vec![vec![Rational::zero(); cols]; rows];
        for (i, r) in self.matrix.iter().enumerate() {
            matrix[i][..self.cols].clone_from_slice(r);
        }
        for (i, r) in other.matrix.iter().enumerate() {
            matrix[self.matrix.len() + i][self.cols..].clone_from_slice(r);
        }
        let mut offset = self.offset.clone();
        offset.extend(other.offset.iter().cloned());
        Embedding { matrix, offset, cols }
    }
}

/// A cell with an affine map to a target.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MappedCell {
    pub cell: Cell,
    pub map: AffineMap,
}

impl MappedCell {
    pub fn new(cell: Cell, map: AffineMap) -> Result<MappedCell> {
        let mc = MappedCell { cell, map };
        mc.validate()?;
        Ok(mc)
    }

    fn validate(&self) -> Result<()> {
        let n = self.cell.coord_len();
        let m = self.map.target.dim();
        if self.map.matrix.len() != m || self.map.matrix.iter().any(|r| r.len() != n) || self.map.offset.len() != m {
            return Err(Error::Schema(format!(
                "map must be {m}x{n} (target dimension by ambient plus circles) with offset of length {m}"
            )));
        }
        let a = self.cell.ambient();
        let r = self.cell.circles;
        for (i, axis) in self.map.target.axes.iter().enumerate() {
            for j in a..a + r {
                let x = &self.map.matrix[i][j];
                match axis {
                    Axis::Line if !x.is_zero() => {
                        return Err(Error::InvalidMap("circle factors cannot map non-constantly to a line".into()))
                    }
                    Axis::Circle if !x.is_integer() => {
                        return Err(Error::InvalidMap("circle factors must map by integer matrices".into()))
                    }
                    _ => {}
                }
            }
        }
        if r > 0 && rank(&self.circle_block(), r) < r {
            return Err(Error::InvalidMap(
                "circle factors must inject into the target torus (finite automorphisms)".into(),
            ));
        }
        Ok(())
    }

    /// Columns of the map acting on the circle coordinates.
    pub fn circle_block(&self) -> Matrix {
        let a = self.cell.ambient();
        self.map.matrix.iter().map(|row| row[a..].to_vec()).collect()
    }

    pub fn target(&self) -> &Target {
        &self.map.target
    }

    pub fn reversed(&self) -> MappedCell {
        MappedCell { cell: self.cell.reversed(), map: self.map.clone() }
    }

    /// Rank of the differential restricted to face `face` times the circles.
    pub fn face_rank(&self, face: usize) -> usize {
        let (fp, _) = self.cell.body.polytope.face_polytope(face);
        let face_cell = Cell::new(OrientedPolytope::new(fp.clone(), Sign::Plus), self.cell.circles);
        let images: Matrix = face_cell.frame().iter().map(|v| self.map.differential(v)).collect();
        rank(&images, self.map.target.dim())
    }

    pub fn is_submersion(&self) -> bool {
        let m = self.map.target.dim();
        (0..self.cell.body.polytope.lattice().len()).all(|f| self.face_rank(f) == m)
    }

    /// Restriction to a face of the polytope, keeping the map.
    pub fn restrict(&self, face: usize, sign: Sign) -> MappedCell {
        let (fp, _) = self.cell.body.polytope.face_polytope(face);
        MappedCell {
            cell: Cell::new(OrientedPolytope::new(fp.clone(), sign), self.cell.circles),
            map: self.map.clone(),
        }
    }
}

/// A compact target as a cell mapping to itself by the identity.
pub fn identity_cell(y: &Target) -> MappedCell {
    debug_assert!(y.is_compact());
    let m = y.dim();
    let body = OrientedPolytope::new(Polytope::point(vec![]), Sign::Plus);
    MappedCell { cell: Cell::new(body, m), map: AffineMap::new(y.clone(), crate::linalg::identity(m), vec![Rational::zero(); m]) }
}

/// Affine maps on polytopes are smooth up to the boundary.
pub fn is_strongly_smooth(_f: &MappedCell) -> bool {
    true
}

/// Orientation of the fibres of a submersion: an ordered basis of the kernel
/// of the differential on the tangent space, with a sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coorientation {
    pub kernel_frame: Matrix,
    pub sign: Sign,
}

/// Lifts of the standard target basis: tangent vectors `n_j` with `df n_j = e_j`.
fn target_lifts(mc: &MappedCell) -> Result<Matrix> {
    let frame = mc.cell.frame();
    let m = mc.map.target.dim();
    let images: Matrix = frame.iter().map(|v| mc.map.differential(v)).collect();
    let cols = frame.len();
    let a: Matrix = (0..m).map(|i| images.iter().map(|img| img[i].clone()).collect()).collect();
    (0..m)
        .map(|j| {
            let mut e = vec![Rational::zero(); m];
            e[j] = Rational::one();
            let c = solve(&a, cols, &e).ok_or_else(|| Error::NotSubmersion("differential not onto".into()))?;
            let mut v = vec![Rational::zero(); mc.cell.coord_len()];
            for (ci, fv) in c.iter().zip(&frame) {
                for (x, y) in v.iter_mut().zip(fv) {
                    *x += ci * y;
                }
            }
            Ok(v)
        })
        .collect()
}

fn kernel_basis(mc: &MappedCell) -> Matrix {
    let frame = mc.cell.frame();
    let m = mc.map.target.dim();
    let images: Matrix = frame.iter().map(|v| mc.map.differential(v)).collect();
    let a: Matrix = (0..m).map(|i| images.iter().map(|img| img[i].clone()).collect()).collect();
    nullspace(&a, frame.len())
        .into_iter()
        .map(|c| {
            let mut v = vec![Rational::zero(); mc.cell.coord_len()];
            for (ci, fv) in c.iter().zip(&frame) {
                for (x, y) in v.iter_mut().zip(fv) {
                    *x += ci * y;
                }
            }
            v
        })
        .collect()
}

fn sign_in_cell(mc: &MappedCell, vectors: &[Vec<Rational>]) -> Sign {
    let m: Matrix = vectors.iter().map(|v| mc.cell.frame_coords(v)).collect();
    Sign::of(&det(&m)).expect("basis of the tangent space")
}

/// The coorientation matching the cell's orientation and the standard
/// orientation of the target, via `TX ≅ f*TY ⊕ Ker df`.
pub fn coorientation(mc: &MappedCell) -> Result<Coorientation> {
    if !mc.is_submersion() {
        return Err(Error::NotSubmersion("coorientations need a strong submersion".into()));
    }
    let mut vs = target_lifts(mc)?;
    let k = kernel_basis(mc);
    vs.extend(k.iter().cloned());
    let s = sign_in_cell(mc, &vs) * mc.cell.sign();
    Ok(Coorientation { kernel_frame: k, sign: s })
}

/// Orients the cell from a coorientation and an orientation of the target.
pub fn orient_from_coorientation(
    cell: &Cell,
    map: &AffineMap,
    co: &Coorientation,
    target_orientation: Sign,
) -> Result<Cell> {
    let mc = MappedCell::new(Cell::new(OrientedPolytope::new(cell.body.polytope.clone(), Sign::Plus), cell.circles), map.clone())?;
    let mut vs = target_lifts(&mc)?;
    vs.extend(co.kernel_frame.iter().cloned());
    let s = sign_in_cell(&mc, &vs) * co.sign * target_orientation;
    Ok(Cell::new(OrientedPolytope::new(cell.body.polytope.clone(), s), cell.circles))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn square() -> Polytope {
        Polytope::cuboid(&[(int(0), int(1)), (int(0), int(1))]).unwrap()
    }

    #[test]
    fn submersion_examples() {
        let proj = MappedCell::new(
            Cell::polytope(square()),
            AffineMap::new(Target::euclid(1), vec![vec![int(1), int(0)]], vec![int(0)]),
        )
        .unwrap();
        assert!(!proj.is_submersion());
        let to_point = MappedCell::new(Cell::polytope(square()), AffineMap::constant(Target::point(), 2, vec![])).unwrap();
        assert!(to_point.is_submersion());
        assert!(is_strongly_smooth(&to_point));
        // an interval times a circle over the circle is a submersion
        let seg = Polytope::cuboid(&[(int(0), int(1))]).unwrap();
        let cyl = MappedCell::new(
            Cell::new(OrientedPolytope::new(seg, Sign::Plus), 1),
            AffineMap::new(Target::torus(1), vec![vec![int(1), int(1)]], vec![int(0)]),
        )
        .unwrap();
        assert!(cyl.is_submersion());
    }

    #[test]
    fn non_injective_circles_rejected() {
        let pt = Polytope::point(vec![]);
        let r = MappedCell::new(
            Cell::new(OrientedPolytope::new(pt, Sign::Plus), 1),
            AffineMap::new(Target::point(), vec![], vec![]),
        );
        assert!(matches!(r, Err(Error::InvalidMap(_))));
    }

    #[test]
    fn coorientation_round_trip() {
        let seg = Polytope::cuboid(&[(int(0), int(1))]).unwrap();
        for s in [Sign::Plus, Sign::Minus] {
            let mc = MappedCell::new(
                Cell::new(OrientedPolytope::new(seg.clone(), s), 1),
                AffineMap::new(Target::torus(1), vec![vec![int(2), int(-1)]], vec![int(0)]),
            )
            .unwrap();
            let co = coorientation(&mc).unwrap();
            assert_eq!(co.kernel_frame.len(), 1);
            let back = orient_from_coorientation(&mc.cell, &mc.map, &co, Sign::Plus).unwrap();
            assert_eq!(back, mc.cell);
            let flipped = orient_from_coorientation(&mc.cell, &mc.map, &co, Sign::Minus).unwrap();
            assert_eq!(flipped, mc.cell.reversed());
        }
    }
}
