use super::cell::{AffineMap, Cell, Embedding, MappedCell};
use crate::dd::extreme_rays;
use crate::error::{Error, Result};
use crate::geometry::{OrientedPolytope, Point, Polytope, Sign};
use crate::linalg::{det, dot, mat_mul, mat_vec, nullspace, rank, smith, solve, to_integer, to_rational, Matrix};
use crate::rational::{self, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// One connected component of a fibre product.
#[derive(Debug, Clone)]
pub struct FibreComponent {
    /// The component with its map to the common target.
    pub piece: MappedCell,
    /// From component coordinates to `(x1, θ1, x2, θ2)`.
    pub embedding: Embedding,
    /// For each face of the component polytope, the smallest faces of the two
    /// factor polytopes containing it.
    pub provenance: Vec<(usize, usize)>,
    /// Residues and integer translates labelling the component.
    pub index: Vec<BigInt>,
}

impl FibreComponent {
    pub fn first(&self, a: &MappedCell) -> Embedding {
        let n = a.cell.coord_len();
        Embedding {
            matrix: self.embedding.matrix[..n].to_vec(),
            offset: self.embedding.offset[..n].to_vec(),
            cols: self.embedding.cols,
        }
    }

    pub fn second(&self, a: &MappedCell) -> Embedding {
        let n = a.cell.coord_len();
        Embedding {
            matrix: self.embedding.matrix[n..].to_vec(),
            offset: self.embedding.offset[n..].to_vec(),
            cols: self.embedding.cols,
        }
    }
}

/// Oriented fibre product `a ×_Y b`. Requires transversality on every pair of
/// faces meeting the fibre product (always true when one side is a strong
/// submersion).
pub fn fibre_product(a: &MappedCell, b: &MappedCell) -> Result<Vec<FibreComponent>> {
    compute(a, b, true)
}

/// Set-level fibre product without transversality check or orientation; the
/// components are reported with positive sign.
pub fn fibre_product_sets(a: &MappedCell, b: &MappedCell) -> Result<Vec<FibreComponent>> {
    compute(a, b, false)
}

struct Setup {
    a1: usize,
    r1: usize,
    a2: usize,
    r2: usize,
    /// `f1 - f2` split into polytope and circle parts.
    lin: Matrix,
    circ: Matrix,
    cst: Vec<Rational>,
}

fn setup(a: &MappedCell, b: &MappedCell) -> Setup {
    let (a1, r1) = (a.cell.ambient(), a.cell.circles);
    let (a2, r2) = (b.cell.ambient(), b.cell.circles);
    let m = a.map.target.dim();
    let mut lin = Vec::with_capacity(m);
    let mut circ = Vec::with_capacity(m);
    let mut cst = Vec::with_capacity(m);
    for i in 0..m {
        let ra = &a.map.matrix[i];
        let rb = &b.map.matrix[i];
        let mut l: Vec<Rational> = ra[..a1].to_vec();
        l.extend(rb[..a2].iter().map(|x| -x));
        let mut c: Vec<Rational> = ra[a1..].to_vec();
        c.extend(rb[a2..].iter().map(|x| -x));
        lin.push(l);
        circ.push(c);
        cst.push(&a.map.offset[i] - &b.map.offset[i]);
    }
    Setup { a1, r1, a2, r2, lin, circ, cst }
}

fn compute(a: &MappedCell, b: &MappedCell, oriented: bool) -> Result<Vec<FibreComponent>> {
    if a.map.target != b.map.target {
        return Err(Error::TargetMismatch(format!("{} vs {}", a.map.target, b.map.target)));
    }
    let y = &a.map.target;

    let st = setup(a, b);
    let nx = st.a1 + st.a2;
    let rr = st.r1 + st.r2;
    let p1 = &a.cell.body.polytope;
    let p2 = &b.cell.body.polytope;

    let lines = y.lines();
    let circles = y.circles();
    let t = circles.len();
    let bt: Vec<Vec<BigInt>> =
        to_integer(&circles.iter().map(|&i| st.circ[i].clone()).collect::<Matrix>()).expect("integer circle block");
    let sm = smith(&bt, rr);
    let s = sm.diagonal.len();
    let u = to_rational(&sm.u);
    let v = to_rational(&sm.v);
    let at: Matrix = circles.iter().map(|&i| st.lin[i].clone()).collect();
    let ct: Vec<Rational> = circles.iter().map(|&i| st.cst[i].clone()).collect();
    let a_red: Matrix = if t == 0 { Vec::new() } else { mat_mul(&u, &at, nx) };
    let c_red: Vec<Rational> = if t == 0 { Vec::new() } else { mat_vec(&u, &ct) };

    // slice equations: line rows, then circle rows beyond the Smith rank
    let mut eq: Matrix = lines.iter().map(|&i| st.lin[i].clone()).collect();
    let mut eq_const: Vec<Rational> = lines.iter().map(|&i| st.cst[i].clone()).collect();
    for i in s..t {
        eq.push(a_red[i].clone());
        eq_const.push(c_red[i].clone());
    }
    let k = eq.len();
    let n_lines = lines.len();

    // ranges of the integer translates
    let mut choices: Vec<Vec<BigInt>> = Vec::new();
    for d in &sm.diagonal {
        let n = d.to_i64().ok_or_else(|| Error::Unsupported("huge torus covering degree".into()))?;
        choices.push((0..n).map(BigInt::from).collect());
    }
    for i in s..t {
        let row = &a_red[i];
        let (lo1, hi1) = range(p1, &row[..st.a1]);
        let (lo2, hi2) = range(p2, &row[st.a1..]);
        let lo = rational::ceil_int(&(lo1 + lo2 + &c_red[i]));
        let hi = rational::floor_int(&(hi1 + hi2 + &c_red[i]));
        let mut vals = Vec::new();
        let mut z = lo;
        while z <= hi {
            vals.push(z.clone());
            z += 1;
        }
        choices.push(vals);
    }

    let product = if k == 0 { Some(p1.product(p2)) } else { None };
    let mut out = Vec::new();
    for index in cartesian(&choices) {
        let rhs: Vec<Rational> = (0..k)
            .map(|j| {
                if j < n_lines {
                    -eq_const[j].clone()
                } else {
                    Rational::from_integer(index[s + j - n_lines].clone()) - &eq_const[j]
                }
            })
            .collect();
        let q = match &product {
            Some(p) => p.clone(),
            None => match slice(p1, p2, &eq, &rhs) {
                Some(q) => q,
                None => continue,
            },
        };
        let split = |w: &Point| (w[..st.a1].to_vec(), w[st.a1..].to_vec());
        if oriented && k > 0 {
            for w in q.vertices() {
                let (w1, w2) = split(w);
                let f1 = p1.carrier(&w1);
                let f2 = p2.carrier(&w2);
                let mut dirs: Matrix = Vec::new();
                for d in &p1.face_polytope(f1).0.hull().frame {
                    let mut x = d.clone();
                    x.extend(std::iter::repeat(Rational::zero()).take(st.a2));
                    dirs.push(mat_vec(&eq, &x));
                }
                for d in &p2.face_polytope(f2).0.hull().frame {
                    let mut x = vec![Rational::zero(); st.a1];
                    x.extend(d.iter().cloned());
                    dirs.push(mat_vec(&eq, &x));
                }
                if rank(&dirs, k) < k {
                    return Err(Error::NotTransverse(format!(
                        "faces of dimensions {} and {} meet at {:?} without transversality",
                        p1.lattice().face(f1).dim,
                        p2.lattice().face(f2).dim,
                        rational::format_vec(w)
                    )));
                }
            }
        }
        // circle parameters θ' = V⁻¹θ as affine functions of (x, φ)
        let free = rr - s;
        let cols = nx + free;
        let mut th: Matrix = vec![vec![Rational::zero(); cols]; rr];
        let mut th0: Vec<Rational> = vec![Rational::zero(); rr];
        for i in 0..s {
            let d = Rational::from_integer(sm.diagonal[i].clone());
            for j in 0..nx {
                th[i][j] = -&a_red[i][j] / &d;
            }
            th0[i] = (Rational::from_integer(index[i].clone()) - &c_red[i]) / &d;
        }
        for j in 0..free {
            th[s + j][nx + j] = Rational::one();
        }
        let theta = if rr == 0 { Vec::new() } else { mat_mul(&v, &th, cols) };
        let theta0 = if rr == 0 { Vec::new() } else { mat_vec(&v, &th0) };
        let mut rows: Matrix = Vec::new();
        let mut offs: Vec<Rational> = Vec::new();
        let unit = |j: usize| {
            let mut r = vec![Rational::zero(); cols];
            r[j] = Rational::one();
            r
        };
        for j in 0..st.a1 {
            rows.push(unit(j));
            offs.push(Rational::zero());
        }
        for j in 0..st.r1 {
            rows.push(theta[j].clone());
            offs.push(theta0[j].clone());
        }
        for j in 0..st.a2 {
            rows.push(unit(st.a1 + j));
            offs.push(Rational::zero());
        }
        for j in 0..st.r2 {
            rows.push(theta[st.r1 + j].clone());
            offs.push(theta0[st.r1 + j].clone());
        }
        let emb = Embedding { matrix: rows, offset: offs, cols };
        let n1 = a.cell.coord_len();
        let first =
            Embedding { matrix: emb.matrix[..n1].to_vec(), offset: emb.offset[..n1].to_vec(), cols };
        let map: AffineMap = a.map.pull(&first);
        let provenance: Vec<(usize, usize)> = (0..q.lattice().len())
            .map(|g| {
                let c = q.centroid_of(g);
                let (c1, c2) = split(&c);
                (p1.carrier(&c1), p2.carrier(&c2))
            })
            .collect();
        let mut cell = Cell::new(OrientedPolytope::new(q, Sign::Plus), free);
        if oriented {
            let sign = orientation(a, b, &cell, &emb)?;
            cell = Cell::new(OrientedPolytope::new(cell.body.polytope.clone(), sign), free);
        }
        out.push(FibreComponent {
            piece: MappedCell { cell, map },
            embedding: emb,
            provenance,
            index,
        });
    }
    out.sort_by(|x, y| (&x.piece.cell.body.polytope, &x.index).cmp(&(&y.piece.cell.body.polytope, &y.index)));
    Ok(out)
}

/// Orientation sign `o` of the component with `o ∧ N = (-1)^{m·dim X2} o(X1) ∧ o(X2)`
/// where `N` lifts the standard target basis through `D = df1 - df2`.
fn orientation(a: &MappedCell, b: &MappedCell, comp: &Cell, emb: &Embedding) -> Result<Sign> {
    let m = a.map.target.dim();
    let n1 = a.cell.coord_len();
    let fa = a.cell.frame();
    let fb = b.cell.frame();
    let ntot = fa.len() + fb.len();
    let tau = |w: &[Rational]| {
        let mut c = a.cell.frame_coords(&w[..n1]);
        c.extend(b.cell.frame_coords(&w[n1..]));
        c
    };
    let mut dcols: Matrix = Vec::with_capacity(ntot);
    for v in &fa {
        dcols.push(a.map.differential(v));
    }
    for v in &fb {
        dcols.push(b.map.differential(v).iter().map(|x| -x).collect());
    }
    let dmat: Matrix = (0..m).map(|i| dcols.iter().map(|c| c[i].clone()).collect()).collect();
    let mut rows: Matrix = comp.frame().iter().map(|v| tau(&emb.linear(v))).collect();
    for j in 0..m {
        let mut e = vec![Rational::zero(); m];
        e[j] = Rational::one();
        let n = solve(&dmat, ntot, &e)
            .ok_or_else(|| Error::NotTransverse("difference of differentials is not onto".into()))?;
        rows.push(n);
    }
    if rows.len() != ntot {
        return Err(Error::NotTransverse("component has the wrong dimension".into()));
    }
    let s = Sign::of(&det(&rows)).ok_or_else(|| Error::NotTransverse("degenerate orientation".into()))?;
    Ok(s * a.cell.sign() * b.cell.sign() * Sign::parity(m * b.cell.dim()))
}

fn range(p: &Polytope, row: &[Rational]) -> (Rational, Rational) {
    let vals: Vec<Rational> = p.vertices().iter().map(|v| dot(row, v)).collect();
    let lo = vals.iter().min().cloned().unwrap_or_else(Rational::zero);
    let hi = vals.iter().max().cloned().unwrap_or_else(Rational::zero);
    (lo, hi)
}

fn cartesian(choices: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut acc: Vec<Vec<BigInt>> = vec![Vec::new()];
    for c in choices {
        let mut next = Vec::new();
        for prefix in &acc {
            for x in c {
                let mut p = prefix.clone();
                p.push(x.clone());
                next.push(p);
            }
        }
        acc = next;
    }
    acc
}

/// `{(x1, x2) ∈ p1 × p2 : eq · (x1, x2) = rhs}`, or `None` when empty.
pub fn slice(p1: &Polytope, p2: &Polytope, eq: &Matrix, rhs: &[Rational]) -> Option<Polytope> {
    let a1 = p1.ambient_dim();
    let a2 = p2.ambient_dim();
    let nx = a1 + a2;
    let mut rows: Matrix = Vec::new();
    let mut vals: Vec<Rational> = Vec::new();
    for (n, c) in p1.hull_equations() {
        let mut r = n;
        r.extend(std::iter::repeat(Rational::zero()).take(a2));
        rows.push(r);
        vals.push(c);
    }
    for (n, c) in p2.hull_equations() {
        let mut r = vec![Rational::zero(); a1];
        r.extend(n);
        rows.push(r);
        vals.push(c);
    }
    rows.extend(eq.iter().cloned());
    vals.extend(rhs.iter().cloned());
    let x0 = solve(&rows, nx, &vals)?;
    let basis = nullspace(&rows, nx);
    let mut ineqs: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for h in p1.inequalities() {
        let mut n = h.normal.clone();
        n.extend(std::iter::repeat(Rational::zero()).take(a2));
        ineqs.push((n, h.offset.clone()));
    }
    for h in p2.inequalities() {
        let mut n = vec![Rational::zero(); a1];
        n.extend(h.normal.iter().cloned());
        ineqs.push((n, h.offset.clone()));
    }
    if basis.is_empty() {
        return ineqs.iter().all(|(n, o)| !(dot(n, &x0) + o).is_negative()).then(|| Polytope::point(x0));
    }
    let dz = basis.len();
    let mut cone: Matrix = ineqs
        .iter()
        .map(|(n, o)| {
            let mut r: Vec<Rational> = basis.iter().map(|bv| dot(n, bv)).collect();
            r.push(dot(n, &x0) + o);
            r
        })
        .collect();
    let mut w = vec![Rational::zero(); dz + 1];
    w[dz] = Rational::one();
    cone.push(w);
    let rays = extreme_rays(&cone, dz + 1)?;
    let pts: Vec<Point> = rays
        .iter()
        .filter(|r| r.dir[dz].is_positive())
        .map(|r| {
            let mut x = x0.clone();
            for (zj, bv) in r.dir[..dz].iter().zip(&basis) {
                let f = zj / &r.dir[dz];
                for (xi, bi) in x.iter_mut().zip(bv) {
                    *xi += &f * bi;
                }
            }
            x
        })
        .collect();
    if pts.is_empty() {
        return None;
    }
    Polytope::convex_hull(nx, pts).ok()
}

/// Fibre product of plain oriented polytopes (no circle factors).
pub fn fibre_product_polytopes(
    x1: &OrientedPolytope,
    f1: &AffineMap,
    x2: &OrientedPolytope,
    f2: &AffineMap,
) -> Result<Vec<FibreComponent>> {
    let a = MappedCell::new(Cell::new(x1.clone(), 0), f1.clone())?;
    let b = MappedCell::new(Cell::new(x2.clone(), 0), f2.clone())?;
    fibre_product(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::Target;
    use crate::rational::int;

    fn seg(lo: i64, hi: i64) -> Polytope {
        Polytope::cuboid(&[(int(lo), int(hi))]).unwrap()
    }

    fn id_map(t: Target) -> AffineMap {
        AffineMap::new(t, vec![vec![int(1)]], vec![int(0)])
    }

    #[test]
    fn product_over_point_is_square() {
        let a = MappedCell::new(Cell::polytope(seg(0, 1)), AffineMap::constant(Target::point(), 1, vec![])).unwrap();
        let fp = fibre_product(&a, &a).unwrap();
        assert_eq!(fp.len(), 1);
        assert_eq!(fp[0].piece.cell.body.polytope.lattice().f_vector(), vec![4, 4, 1]);
        assert_eq!(fp[0].piece.cell.sign(), Sign::Plus);
    }

    #[test]
    fn overlapping_segments_over_the_line() {
        let a = MappedCell::new(Cell::polytope(seg(0, 2)), id_map(Target::euclid(1))).unwrap();
        let b = MappedCell::new(Cell::polytope(seg(1, 3)), id_map(Target::euclid(1))).unwrap();
        let fp = fibre_product(&a, &b).unwrap();
        assert_eq!(fp.len(), 1);
        let q = &fp[0].piece.cell.body.polytope;
        assert_eq!(q.vertices(), &[vec![int(1), int(1)], vec![int(2), int(2)]]);
        assert_eq!(fp[0].piece.cell.sign(), Sign::Plus);
    }

    #[test]
    fn interval_over_circle_self_product_sets() {
        let a = MappedCell::new(Cell::polytope(seg(0, 1)), id_map(Target::torus(1))).unwrap();
        let fp = fibre_product_sets(&a, &a).unwrap();
        let mut vs: Vec<Vec<Point>> = fp.iter().map(|c| c.piece.cell.body.polytope.vertices().to_vec()).collect();
        vs.sort();
        assert_eq!(
            vs,
            vec![
                vec![vec![int(0), int(0)], vec![int(1), int(1)]],
                vec![vec![int(0), int(1)]],
                vec![vec![int(1), int(0)]],
            ]
        );
        assert!(matches!(fibre_product(&a, &a), Err(Error::NotTransverse(_))));
    }

    #[test]
    fn circle_cover_fibre_product_splits_into_sheets() {
        // θ ↦ 2θ over T¹, fibre product with itself: two sheets θ' = θ, θ + 1/2
        let pt = Polytope::point(vec![]);
        let cover = MappedCell::new(
            Cell::new(OrientedPolytope::new(pt, Sign::Plus), 1),
            AffineMap::new(Target::torus(1), vec![vec![int(2)]], vec![int(0)]),
        )
        .unwrap();
        let fp = fibre_product(&cover, &cover).unwrap();
        assert_eq!(fp.len(), 2);
        for c in &fp {
            assert_eq!(c.piece.cell.circles, 1);
            assert_eq!(c.piece.cell.dim(), 1);
        }
    }
}
