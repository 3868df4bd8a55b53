use super::cell::{AffineMap, Cell, Embedding, MappedCell};
use super::fibre::{fibre_product, FibreComponent};
use super::target::Target;
use crate::error::{Error, Result};
use crate::geometry::{boundary, OrientedPolytope, Point, Sign};
use crate::linalg::{det, rank, smith, solve, sub, Matrix};
use crate::rational::{self, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

/// Outcome of an identity check; `witness` describes the first mismatch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub pass: bool,
    pub witness: Option<String>,
}

impl Check {
    pub fn ok() -> Check {
        Check { pass: true, witness: None }
    }

    pub fn fail(w: impl Into<String>) -> Check {
        Check { pass: false, witness: Some(w.into()) }
    }
}

/// A cell placed in a common ambient space of real and circle coordinates.
#[derive(Debug, Clone)]
pub struct Placed {
    pub cell: Cell,
    pub emb: Embedding,
}

/// Which coordinates of the ambient space are circle coordinates.
#[derive(Debug, Clone)]
pub struct Ambient {
    pub circle: Vec<bool>,
}

impl Ambient {
    pub fn of(cells: &[&Cell]) -> Ambient {
        let mut circle = Vec::new();
        for c in cells {
            circle.extend(std::iter::repeat(false).take(c.ambient()));
            circle.extend(std::iter::repeat(true).take(c.circles));
        }
        Ambient { circle }
    }

    fn rows(&self, circ: bool) -> Vec<usize> {
        (0..self.circle.len()).filter(|&i| self.circle[i] == circ).collect()
    }
}

fn pick(v: &[Rational], rows: &[usize]) -> Vec<Rational> {
    rows.iter().map(|&i| v[i].clone()).collect()
}

fn vertex_points(p: &Placed) -> Vec<Point> {
    p.cell
        .body
        .polytope
        .vertices()
        .iter()
        .map(|v| {
            let mut q = v.clone();
            q.extend(std::iter::repeat(Rational::zero()).take(p.cell.circles));
            p.emb.apply(&q)
        })
        .collect()
}

/// Integer vectors `l` with `l · n = 0` for every `n` in `dirs`.
fn annihilator(dirs: &Matrix, len: usize) -> Vec<Vec<BigInt>> {
    if dirs.is_empty() {
        return (0..len)
            .map(|i| (0..len).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
    }
    let rows: Vec<Vec<BigInt>> = dirs
        .iter()
        .map(|d| {
            let den = rational::common_denominator(d.iter());
            d.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect()
        })
        .collect();
    let sm = smith(&rows, len);
    let s = sm.diagonal.len();
    (s..len).map(|j| (0..len).map(|i| sm.v[i][j].clone()).collect()).collect()
}

fn in_subgroup(d: &[Rational], ann: &[Vec<BigInt>]) -> bool {
    ann.iter().all(|l| {
        let mut s = Rational::zero();
        for (a, b) in l.iter().zip(d) {
            s += Rational::from_integer(a.clone()) * b;
        }
        s.is_integer()
    })
}

/// `Some(sign)` when both pieces are the same subset of the ambient space,
/// with `sign` comparing their orientations.
pub fn compare(a: &Placed, b: &Placed, amb: &Ambient) -> Option<Sign> {
    if a.cell.dim() != b.cell.dim() || a.cell.circles != b.cell.circles {
        return None;
    }
    let xr = amb.rows(false);
    let tr = amb.rows(true);
    let va = vertex_points(a);
    let vb = vertex_points(b);
    let mut xa: Vec<(Point, usize)> = va.iter().enumerate().map(|(i, p)| (pick(p, &xr), i)).collect();
    let mut xb: Vec<(Point, usize)> = vb.iter().enumerate().map(|(i, p)| (pick(p, &xr), i)).collect();
    xa.sort();
    xb.sort();
    if xa.len() != xb.len() || xa.iter().zip(&xb).any(|(p, q)| p.0 != q.0) {
        return None;
    }
    let circle_dirs = |p: &Placed| -> Matrix {
        let n = p.cell.ambient();
        (0..p.cell.circles)
            .map(|j| {
                let mut e = vec![Rational::zero(); p.cell.coord_len()];
                e[n + j] = Rational::one();
                pick(&p.emb.linear(&e), &tr)
            })
            .collect()
    };
    let na = circle_dirs(a);
    let nb = circle_dirs(b);
    let k = a.cell.circles;
    let mut both = na.clone();
    both.extend(nb.iter().cloned());
    if rank(&na, tr.len()) != k || rank(&both, tr.len()) != k {
        return None;
    }
    let ann = annihilator(&na, tr.len());
    let diffs: Vec<Vec<Rational>> =
        xa.iter().zip(&xb).map(|(p, q)| sub(&pick(&va[p.1], &tr), &pick(&vb[q.1], &tr))).collect();
    if !in_subgroup(&diffs[0], &ann) {
        return None;
    }
    for d in &diffs[1..] {
        let delta = sub(d, &diffs[0]);
        let mut ext = na.clone();
        ext.push(delta);
        if rank(&ext, tr.len()) != k {
            return None;
        }
    }
    let fa: Matrix = a.cell.frame().iter().map(|v| a.emb.linear(v)).collect();
    let fb: Matrix = b.cell.frame().iter().map(|v| b.emb.linear(v)).collect();
    let n = fa.len();
    let sys: Matrix = (0..amb.circle.len()).map(|i| fa.iter().map(|v| v[i].clone()).collect()).collect();
    let mut change: Matrix = Vec::with_capacity(n);
    for v in &fb {
        change.push(solve(&sys, n, v)?);
    }
    let s = Sign::of(&det(&change))?;
    Some(s * a.cell.sign() * b.cell.sign())
}

/// Matches `lhs` against `rhs`, each `rhs` piece carrying the sign with which
/// it must occur.
pub fn match_pieces(lhs: &[Placed], rhs: &[(Placed, Sign)], amb: &Ambient) -> Check {
    let mut used = vec![false; rhs.len()];
    for (i, p) in lhs.iter().enumerate() {
        let mut found = false;
        for (j, (q, s)) in rhs.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(o) = compare(p, q, amb) {
                if o != *s {
                    return Check::fail(format!("piece {i} matches expected piece {j} with the wrong orientation"));
                }
                used[j] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Check::fail(format!("piece {i} with vertices {:?} has no counterpart", show(p)));
        }
    }
    if let Some(j) = used.iter().position(|u| !u) {
        return Check::fail(format!("expected piece {j} with vertices {:?} is missing", show(&rhs[j].0)));
    }
    Check::ok()
}

fn show(p: &Placed) -> Vec<Vec<String>> {
    p.cell.body.polytope.vertices().iter().map(|v| rational::format_vec(v)).collect()
}

fn placed(c: &FibreComponent) -> Placed {
    Placed { cell: c.piece.cell.clone(), emb: c.embedding.clone() }
}

fn with_cell(mc: &MappedCell, body: OrientedPolytope) -> MappedCell {
    MappedCell { cell: Cell::new(body, mc.cell.circles), map: mc.map.clone() }
}

/// `∂(X1 ×_Y X2) = (∂X1) ×_Y X2 ⨿ (-1)^{dim X1 + dim Y} X1 ×_Y (∂X2)`.
pub fn check_boundary_of_fibre_product(a: &MappedCell, b: &MappedCell) -> Result<Check> {
    let amb = Ambient::of(&[&a.cell, &b.cell]);
    let mut lhs = Vec::new();
    for c in fibre_product(a, b)? {
        for bc in boundary(&c.piece.cell.body) {
            lhs.push(Placed { cell: Cell::new(bc.facet, c.piece.cell.circles), emb: c.embedding.clone() });
        }
    }
    let mut rhs = Vec::new();
    for bc in boundary(&a.cell.body) {
        for c in fibre_product(&with_cell(a, bc.facet), b)? {
            rhs.push((placed(&c), Sign::Plus));
        }
    }
    let s = Sign::parity(a.cell.dim() + a.map.target.dim());
    for bc in boundary(&b.cell.body) {
        for c in fibre_product(a, &with_cell(b, bc.facet))? {
            rhs.push((placed(&c), s));
        }
    }
    Ok(match_pieces(&lhs, &rhs, &amb))
}

fn permutation(blocks: &[usize], order: &[usize]) -> Embedding {
    // maps coordinates laid out in `order` to the natural block layout
    let starts: Vec<usize> = blocks.iter().scan(0, |s, &b| {
        let r = *s;
        *s += b;
        Some(r)
    }).collect();
    let n: usize = blocks.iter().sum();
    let mut src_start = vec![0; blocks.len()];
    let mut pos = 0;
    for &o in order {
        src_start[o] = pos;
        pos += blocks[o];
    }
    let mut matrix = vec![vec![Rational::zero(); n]; n];
    for (bi, &len) in blocks.iter().enumerate() {
        for j in 0..len {
            matrix[starts[bi] + j][src_start[bi] + j] = Rational::one();
        }
    }
    Embedding { matrix, offset: vec![Rational::zero(); n], cols: n }
}

/// `X1 ×_Y X2 = (-1)^{(dim X1 - dim Y)(dim X2 - dim Y)} X2 ×_Y X1`.
pub fn check_swap_sign(a: &MappedCell, b: &MappedCell) -> Result<Check> {
    let amb = Ambient::of(&[&a.cell, &b.cell]);
    let m = a.map.target.dim() as i64;
    let e = (a.cell.dim() as i64 - m) * (b.cell.dim() as i64 - m);
    let s = Sign::parity(e.rem_euclid(2) as usize);
    let lhs: Vec<Placed> = fibre_product(a, b)?.iter().map(placed).collect();
    let perm = permutation(&[a.cell.coord_len(), b.cell.coord_len()], &[1, 0]);
    let rhs: Vec<(Placed, Sign)> = fibre_product(b, a)?
        .iter()
        .map(|c| (Placed { cell: c.piece.cell.clone(), emb: perm.compose(&c.embedding) }, s))
        .collect();
    Ok(match_pieces(&lhs, &rhs, &amb))
}

/// The map on a fibre product component given by `map` on one factor.
fn transported(c: &FibreComponent, map: &AffineMap, factor: &Embedding) -> MappedCell {
    MappedCell { cell: c.piece.cell.clone(), map: map.pull(factor) }
}

/// Rows `range` of `map`, as a map to `target`.
fn rows(map: &AffineMap, range: std::ops::Range<usize>, target: &Target) -> AffineMap {
    AffineMap::new(target.clone(), map.matrix[range.clone()].to_vec(), map.offset[range].to_vec())
}

fn split_target(y: &Target, first: &Target) -> Result<Target> {
    let k = first.dim();
    if y.axes.len() < k || y.axes[..k] != first.axes[..] {
        return Err(Error::TargetMismatch(format!("{y} does not start with {first}")));
    }
    Ok(Target { axes: y.axes[k..].to_vec() })
}

/// `(X1 ×_{Y1} X2) ×_{Y2} X3 = X1 ×_{Y1} (X2 ×_{Y2} X3)` for
/// `X1 → Y1`, `X2 → Y1 × Y2`, `X3 → Y2`.
pub fn check_associativity(a1: &MappedCell, a2: &MappedCell, a3: &MappedCell) -> Result<Check> {
    let y1 = a1.map.target.clone();
    let y2 = a3.map.target.clone();
    if split_target(&a2.map.target, &y1)? != y2 {
        return Err(Error::TargetMismatch("middle map must land in Y1 × Y2".into()));
    }
    let m1 = y1.dim();
    let m2 = y2.dim();
    let a2_y1 = MappedCell { cell: a2.cell.clone(), map: rows(&a2.map, 0..m1, &y1) };
    let a2_y2 = MappedCell { cell: a2.cell.clone(), map: rows(&a2.map, m1..m1 + m2, &y2) };
    let amb = Ambient::of(&[&a1.cell, &a2.cell, &a3.cell]);
    let n3 = a3.cell.coord_len();
    let mut lhs = Vec::new();
    for c12 in fibre_product(a1, &a2_y1)? {
        let left = transported(&c12, &a2_y2.map, &c12.second(a1));
        for c in fibre_product(&left, a3)? {
            let outer = c12.embedding.direct_sum(&Embedding::identity(n3));
            lhs.push(Placed { cell: c.piece.cell.clone(), emb: outer.compose(&c.embedding) });
        }
    }
    let n1 = a1.cell.coord_len();
    let mut rhs = Vec::new();
    for c23 in fibre_product(&a2_y2, a3)? {
        let right = transported(&c23, &a2_y1.map, &c23.first(&a2_y2));
        for c in fibre_product(a1, &right)? {
            let outer = Embedding::identity(n1).direct_sum(&c23.embedding);
            rhs.push((Placed { cell: c.piece.cell.clone(), emb: outer.compose(&c.embedding) }, Sign::Plus));
        }
    }
    Ok(match_pieces(&lhs, &rhs, &amb))
}

/// `X1 ×_{Y1×Y2} (X2 × X3) = (-1)^{dim Y2 (dim Y1 + dim X2)} (X1 ×_{Y1} X2) ×_{Y2} X3`
/// for `X1 → Y1 × Y2`, `X2 → Y1`, `X3 → Y2`.
pub fn check_interchange(a1: &MappedCell, a2: &MappedCell, a3: &MappedCell) -> Result<Check> {
    let y1 = a2.map.target.clone();
    let y2 = a3.map.target.clone();
    if split_target(&a1.map.target, &y1)? != y2 {
        return Err(Error::TargetMismatch("first map must land in Y1 × Y2".into()));
    }
    let m1 = y1.dim();
    let m2 = y2.dim();
    let amb = Ambient::of(&[&a1.cell, &a2.cell, &a3.cell]);
    let n1 = a1.cell.coord_len();
    let n3 = a3.cell.coord_len();
    let to_point = |mc: &MappedCell| MappedCell {
        cell: mc.cell.clone(),
        map: AffineMap::constant(Target::point(), mc.cell.coord_len(), vec![]),
    };
    let mut lhs = Vec::new();
    for c23 in fibre_product(&to_point(a2), &to_point(a3))? {
        let f2 = a2.map.pull(&c23.first(a2));
        let f3 = a3.map.pull(&c23.second(a2));
        let mut matrix = f2.matrix.clone();
        matrix.extend(f3.matrix.iter().cloned());
        let mut offset = f2.offset.clone();
        offset.extend(f3.offset.iter().cloned());
        let right = MappedCell { cell: c23.piece.cell.clone(), map: AffineMap::new(a1.map.target.clone(), matrix, offset) };
        for c in fibre_product(a1, &right)? {
            let outer = Embedding::identity(n1).direct_sum(&c23.embedding);
            lhs.push(Placed { cell: c.piece.cell.clone(), emb: outer.compose(&c.embedding) });
        }
    }
    let s = Sign::parity(m2 * (m1 + a2.cell.dim()));
    let a1_y1 = MappedCell { cell: a1.cell.clone(), map: rows(&a1.map, 0..m1, &y1) };
    let a1_y2 = rows(&a1.map, m1..m1 + m2, &y2);
    let mut rhs = Vec::new();
    for c12 in fibre_product(&a1_y1, a2)? {
        let left = transported(&c12, &a1_y2, &c12.first(&a1_y1));
        for c in fibre_product(&left, a3)? {
            let outer = c12.embedding.direct_sum(&Embedding::identity(n3));
            rhs.push((Placed { cell: c.piece.cell.clone(), emb: outer.compose(&c.embedding) }, s));
        }
    }
    Ok(match_pieces(&lhs, &rhs, &amb))
}

/// A fibre product over a point is the product, and `X ×_Y Y = X` through
/// the identity of `Y`.
pub fn check_unit(a: &MappedCell) -> Result<Check> {
    let y = &a.map.target;
    if !y.is_compact() && y.dim() > 0 {
        return Err(Error::Precondition("unit check needs a compact target".into()));
    }
    let unit = crate::maps::identity_cell(y);
    let amb = Ambient::of(&[&a.cell, &unit.cell]);
    let lhs: Vec<Placed> = fibre_product(a, &unit)?.iter().map(placed).collect();
    // X sits in X × Y as the graph of f
    let n = a.cell.coord_len();
    let mut matrix = crate::linalg::identity(n);
    let mut offset = vec![Rational::zero(); n];
    for i in 0..y.dim() {
        matrix.push(a.map.matrix[i].clone());
        offset.push(a.map.offset[i].clone());
    }
    let graph = Placed { cell: a.cell.clone(), emb: Embedding { matrix, offset, cols: n } };
    Ok(match_pieces(&lhs, &[(graph, Sign::Plus)], &amb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Polytope;
    use crate::rational::int;

    fn seg(lo: i64, hi: i64) -> Polytope {
        Polytope::cuboid(&[(int(lo), int(hi))]).unwrap()
    }

    fn over_point(p: Polytope) -> MappedCell {
        let n = p.ambient_dim();
        MappedCell::new(Cell::polytope(p), AffineMap::constant(Target::point(), n, vec![])).unwrap()
    }

    #[test]
    fn boundary_of_square() {
        let a = over_point(seg(0, 1));
        assert!(check_boundary_of_fibre_product(&a, &a).unwrap().pass);
        let pt = over_point(Polytope::point(vec![]));
        assert!(check_boundary_of_fibre_product(&a, &pt).unwrap().pass);
    }

    #[test]
    fn swap_of_intervals() {
        let a = over_point(seg(0, 1));
        assert!(check_swap_sign(&a, &a).unwrap().pass);
        let b = MappedCell::new(
            Cell::polytope(Polytope::cuboid(&[(int(0), int(1)), (int(0), int(2))]).unwrap()),
            AffineMap::new(Target::euclid(1), vec![vec![int(1), int(3)]], vec![int(0)]),
        )
        .unwrap();
        let c = MappedCell::new(
            Cell::polytope(seg(-1, 4)),
            AffineMap::new(Target::euclid(1), vec![vec![rational::frac(1, 2)]], vec![rational::frac(1, 3)]),
        )
        .unwrap();
        assert!(check_swap_sign(&b, &c).unwrap().pass);
        assert!(check_boundary_of_fibre_product(&b, &c).unwrap().pass);
        assert!(check_boundary_of_fibre_product(&c, &b).unwrap().pass);
    }

    #[test]
    fn cubes_associate() {
        let a = over_point(seg(0, 1));
        assert!(check_associativity(&a, &a, &a).unwrap().pass);
        assert!(check_interchange(&a, &a, &a).unwrap().pass);
    }

    #[test]
    fn interchange_over_line() {
        let a1 = MappedCell::new(
            Cell::polytope(Polytope::cuboid(&[(int(0), int(1)), (int(0), int(1))]).unwrap()),
            AffineMap::new(Target::euclid(1), vec![vec![int(1), int(2)]], vec![int(0)]),
        )
        .unwrap();
        let a2 = MappedCell::new(
            Cell::polytope(seg(0, 2)),
            AffineMap::new(Target::euclid(1), vec![vec![int(1)]], vec![rational::frac(1, 3)]),
        )
        .unwrap();
        let a3 = over_point(seg(0, 1));
        assert!(check_interchange(&a1, &a2, &a3).unwrap().pass);
    }

    #[test]
    fn circle_cases() {
        let cyl = MappedCell::new(
            Cell::new(OrientedPolytope::new(seg(0, 1), Sign::Plus), 1),
            AffineMap::new(Target::torus(1), vec![vec![int(1), int(2)]], vec![rational::frac(1, 5)]),
        )
        .unwrap();
        let arc = MappedCell::new(
            Cell::polytope(Polytope::cuboid(&[(int(0), int(1)), (int(0), int(1))]).unwrap()),
            AffineMap::new(Target::torus(1), vec![vec![int(1), rational::frac(1, 2)]], vec![int(0)]),
        )
        .unwrap();
        for (x, y) in [(&cyl, &arc), (&arc, &cyl), (&cyl, &cyl)] {
            assert!(check_boundary_of_fibre_product(x, y).unwrap().pass, "boundary");
            assert!(check_swap_sign(x, y).unwrap().pass, "swap");
        }
        assert!(check_unit(&arc).unwrap().pass);
        assert!(check_unit(&cyl).unwrap().pass);
    }
}
