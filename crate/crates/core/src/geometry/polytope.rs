use crate::dd::extreme_rays;
use crate::error::{Error, Result};
use crate::linalg::{dot, nullspace, rank, rref, sub, Matrix};
use crate::rational::{self, Rational};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

pub type Point = Vec<Rational>;

/// A face, as the sorted indices of the vertices it contains.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    pub dim: usize,
    pub vertices: Vec<usize>,
}

/// All nonempty faces, sorted by dimension then by vertex indices. The last
/// face is the polytope itself.
#[derive(Debug, Clone)]
pub struct FaceLattice {
    faces: Vec<Face>,
    index: HashMap<Vec<usize>, usize>,
}

impl FaceLattice {
    fn new(mut faces: Vec<Face>) -> Self {
        faces.sort();
        faces.dedup();
        let index = faces.iter().enumerate().map(|(i, f)| (f.vertices.clone(), i)).collect();
        FaceLattice { faces, index }
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn face(&self, i: usize) -> &Face {
        &self.faces[i]
    }

    pub fn index_of(&self, vertices: &[usize]) -> Option<usize> {
        self.index.get(vertices).copied()
    }

    pub fn top(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn of_dim(&self, k: usize) -> Vec<usize> {
        (0..self.faces.len()).filter(|&i| self.faces[i].dim == k).collect()
    }

    /// Counts per dimension, from vertices upwards.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.faces.last().map_or(0, |f| f.dim);
        (0..=top).map(|k| self.faces.iter().filter(|f| f.dim == k).count()).collect()
    }

    pub fn is_subface(&self, small: usize, big: usize) -> bool {
        is_subset(&self.faces[small].vertices, &self.faces[big].vertices)
    }

    /// Facets of the whole polytope containing face `i`.
    pub fn facets_containing(&self, i: usize) -> Vec<usize> {
        let d = self.faces[self.top()].dim;
        if d == 0 {
            return Vec::new();
        }
        self.of_dim(d - 1).into_iter().filter(|&f| self.is_subface(i, f)).collect()
    }
}

pub(crate) fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut j = 0;
    for x in a {
        while j < b.len() && b[j] < *x {
            j += 1;
        }
        if j == b.len() || b[j] != *x {
            return false;
        }
    }
    true
}

/// Affine hull data: a base point and the reduced row echelon basis of the
/// direction space, which serves as the canonical frame.
#[derive(Debug, Clone)]
pub struct Hull {
    pub base: Point,
    pub frame: Matrix,
    pub pivots: Vec<usize>,
}

impl Hull {
    fn of(points: &[Point], ambient: usize) -> Hull {
        let base = points[0].clone();
        let dirs: Matrix = points[1..].iter().map(|p| sub(p, &base)).collect();
        let (frame, pivots) = rref(&dirs, ambient);
        Hull { base, frame, pivots }
    }

    pub fn dim(&self) -> usize {
        self.frame.len()
    }

    /// Coordinates of a direction vector in the canonical frame.
    pub fn coords(&self, v: &[Rational]) -> Vec<Rational> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    pub fn contains_direction(&self, v: &[Rational]) -> bool {
        let c = self.coords(v);
        let mut r = v.to_vec();
        for (ci, row) in c.iter().zip(&self.frame) {
            if ci.is_zero() {
                continue;
            }
            for (x, y) in r.iter_mut().zip(row) {
                *x -= ci * y;
            }
        }
        r.iter().all(|x| x.is_zero())
    }

    pub fn contains_point(&self, p: &[Rational]) -> bool {
        self.contains_direction(&sub(p, &self.base))
    }
}

/// Facet inequality `normal · p + offset >= 0`, valid on the affine hull.
#[derive(Debug, Clone)]
pub struct Inequality {
    pub normal: Vec<Rational>,
    pub offset: Rational,
    pub face: usize,
}

impl Inequality {
    pub fn eval(&self, p: &[Rational]) -> Rational {
        dot(&self.normal, p) + &self.offset
    }
}

struct Data {
    ambient_dim: usize,
    vertices: Vec<Point>,
    hull: Hull,
    lattice: FaceLattice,
    inequalities: OnceLock<Vec<Inequality>>,
    subpolytopes: Vec<OnceLock<(Polytope, Vec<usize>)>>,
}

/// Compact convex polytope stored by its sorted extreme points.
#[derive(Clone)]
pub struct Polytope(Arc<Data>);

impl fmt::Debug for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<Vec<String>> = self.0.vertices.iter().map(|v| rational::format_vec(v)).collect();
        f.debug_struct("Polytope").field("dim", &self.dim()).field("vertices", &vs).finish()
    }
}

impl PartialEq for Polytope {
    fn eq(&self, other: &Self) -> bool {
        self.0.ambient_dim == other.0.ambient_dim && self.0.vertices == other.0.vertices
    }
}
impl Eq for Polytope {}

impl PartialOrd for Polytope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Polytope {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0.ambient_dim, &self.0.vertices).cmp(&(other.0.ambient_dim, &other.0.vertices))
    }
}

impl Polytope {
    /// Builds a polytope from exactly its extreme points.
    pub fn new(ambient_dim: usize, points: Vec<Point>) -> Result<Polytope> {
        let n = points.len();
        let p = Polytope::convex_hull(ambient_dim, points)?;
        if p.vertices().len() != n {
            return Err(Error::Degenerate(format!(
                "{} of the {} given points are duplicates or not extreme",
                n - p.vertices().len(),
                n
            )));
        }
        Ok(p)
    }

    /// Convex hull of a finite point set.
    pub fn convex_hull(ambient_dim: usize, points: Vec<Point>) -> Result<Polytope> {
        if points.is_empty() {
            return Err(Error::Degenerate("empty vertex list".into()));
        }
        if let Some(p) = points.iter().find(|p| p.len() != ambient_dim) {
            return Err(Error::Schema(format!(
                "point of length {} in ambient dimension {ambient_dim}",
                p.len()
            )));
        }
        let mut pts = points;
        pts.sort();
        pts.dedup();
        let hull = Hull::of(&pts, ambient_dim);
        let d = hull.dim();
        if d == 0 {
            return Ok(Polytope::assemble(ambient_dim, pts, vec![Face { dim: 0, vertices: vec![0] }]));
        }
        let rows: Matrix = pts
            .iter()
            .map(|p| {
                let mut r = hull.coords(&sub(p, &hull.base));
                r.push(Rational::one());
                r
            })
            .collect();
        let rays = extreme_rays(&rows, d + 1)
            .ok_or_else(|| Error::Degenerate("affine hull computation failed".into()))?;
        let facets: Vec<Vec<usize>> = rays.into_iter().map(|r| r.tight).collect();
        let all: Vec<usize> = (0..pts.len()).collect();
        let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        sets.insert(all.clone());
        let mut frontier: Vec<Vec<usize>> = Vec::new();
        for f in &facets {
            if sets.insert(f.clone()) {
                frontier.push(f.clone());
            }
        }
        while let Some(s) = frontier.pop() {
            for f in &facets {
                let meet: Vec<usize> = s.iter().copied().filter(|x| f.binary_search(x).is_ok()).collect();
                if !meet.is_empty() && sets.insert(meet.clone()) {
                    frontier.push(meet);
                }
            }
        }
        let extreme: Vec<usize> =
            sets.iter().filter(|s| s.len() == 1).map(|s| s[0]).collect::<BTreeSet<_>>().into_iter().collect();
        let remap: HashMap<usize, usize> = extreme.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let vertices: Vec<Point> = extreme.iter().map(|&i| pts[i].clone()).collect();
        let faces: Vec<Face> = sets
            .iter()
            .map(|s| {
                let vs: Vec<usize> = s.iter().filter_map(|x| remap.get(x).copied()).collect();
                let dim = affine_dim(&vs.iter().map(|&i| vertices[i].clone()).collect::<Vec<_>>(), ambient_dim);
                Face { dim, vertices: vs }
            })
            .collect();
        Ok(Polytope::assemble(ambient_dim, vertices, faces))
    }

    /// Builds a polytope from sorted extreme points and a known face lattice.
    pub(crate) fn from_lattice(ambient_dim: usize, vertices: Vec<Point>, faces: Vec<Face>) -> Polytope {
        Polytope::assemble(ambient_dim, vertices, faces)
    }

    fn assemble(ambient_dim: usize, vertices: Vec<Point>, faces: Vec<Face>) -> Polytope {
        let hull = Hull::of(&vertices, ambient_dim);
        let lattice = FaceLattice::new(faces);
        let subpolytopes = (0..lattice.len()).map(|_| OnceLock::new()).collect();
        Polytope(Arc::new(Data {
            ambient_dim,
            vertices,
            hull,
            lattice,
            inequalities: OnceLock::new(),
            subpolytopes,
        }))
    }

    pub fn point(p: Point) -> Polytope {
        let n = p.len();
        Polytope::assemble(n, vec![p], vec![Face { dim: 0, vertices: vec![0] }])
    }

    /// Axis-aligned box `∏ [lo_i, hi_i]` with `lo_i < hi_i`.
    pub fn cuboid(bounds: &[(Rational, Rational)]) -> Result<Polytope> {
        let mut pts: Vec<Point> = vec![Vec::new()];
        for (lo, hi) in bounds {
            pts = pts
                .into_iter()
                .flat_map(|p| {
                    let mut a = p.clone();
                    a.push(lo.clone());
                    let mut b = p;
                    b.push(hi.clone());
                    [a, b]
                })
                .collect();
        }
        let factors: Vec<Polytope> = bounds
            .iter()
            .map(|(lo, hi)| Polytope::new(1, vec![vec![lo.clone()], vec![hi.clone()]]))
            .collect::<Result<_>>()?;
        if factors.is_empty() {
            return Ok(Polytope::point(Vec::new()));
        }
        Ok(factors[1..].iter().fold(factors[0].clone(), |acc, f| acc.product(f)))
    }

    pub fn ambient_dim(&self) -> usize {
        self.0.ambient_dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.0.vertices
    }

    pub fn dim(&self) -> usize {
        self.0.hull.dim()
    }

    pub fn hull(&self) -> &Hull {
        &self.0.hull
    }

    pub fn lattice(&self) -> &FaceLattice {
        &self.0.lattice
    }

    pub fn centroid_of(&self, face: usize) -> Point {
        let vs = &self.lattice().face(face).vertices;
        let n = Rational::from_integer(vs.len().into());
        let mut c = vec![Rational::zero(); self.ambient_dim()];
        for &i in vs {
            for (x, y) in c.iter_mut().zip(&self.0.vertices[i]) {
                *x += y;
            }
        }
        c.iter().map(|x| x / &n).collect()
    }

    pub fn centroid(&self) -> Point {
        self.centroid_of(self.lattice().top())
    }

    /// Cartesian product; vertices of `self` vary slowest.
    pub fn product(&self, other: &Polytope) -> Polytope {
        let n2 = other.vertices().len();
        let mut vertices = Vec::new();
        for a in self.vertices() {
            for b in other.vertices() {
                let mut v = a.clone();
                v.extend(b.iter().cloned());
                vertices.push(v);
            }
        }
        let mut faces = Vec::new();
        for fa in self.lattice().faces() {
            for fb in other.lattice().faces() {
                let mut vs = Vec::new();
                for &i in &fa.vertices {
                    for &j in &fb.vertices {
                        vs.push(i * n2 + j);
                    }
                }
                faces.push(Face { dim: fa.dim + fb.dim, vertices: vs });
            }
        }
        // lexicographic order of concatenated points matches i * n2 + j
        Polytope::assemble(self.ambient_dim() + other.ambient_dim(), vertices, faces)
    }

    /// Image under an injective affine map `x ↦ m x + c` into `target_dim`.
    pub fn affine_image(&self, m: &[Vec<Rational>], c: &[Rational]) -> Polytope {
        let images: Vec<Point> = self
            .vertices()
            .iter()
            .map(|v| crate::linalg::add(&crate::linalg::mat_vec(m, v), c))
            .collect();
        let mut order: Vec<usize> = (0..images.len()).collect();
        order.sort_by(|&a, &b| images[a].cmp(&images[b]));
        let mut inv = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            inv[old] = new;
        }
        let vertices: Vec<Point> = order.iter().map(|&i| images[i].clone()).collect();
        let faces: Vec<Face> = self
            .lattice()
            .faces()
            .iter()
            .map(|f| {
                let mut vs: Vec<usize> = f.vertices.iter().map(|&i| inv[i]).collect();
                vs.sort_unstable();
                Face { dim: f.dim, vertices: vs }
            })
            .collect();
        Polytope::assemble(c.len(), vertices, faces)
    }

    /// The face as a polytope in its own right, with the map from its face
    /// indices to face indices of `self`.
    pub fn face_polytope(&self, face: usize) -> &(Polytope, Vec<usize>) {
        self.0.subpolytopes[face].get_or_init(|| {
            let lat = self.lattice();
            let vs = &lat.face(face).vertices;
            let local: HashMap<usize, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let vertices: Vec<Point> = vs.iter().map(|&i| self.0.vertices[i].clone()).collect();
            let mut faces = Vec::new();
            let mut parents = Vec::new();
            for (gi, g) in lat.faces().iter().enumerate() {
                if is_subset(&g.vertices, vs) {
                    faces.push(Face { dim: g.dim, vertices: g.vertices.iter().map(|v| local[v]).collect() });
                    parents.push(gi);
                }
            }
            let sub = Polytope::assemble(self.ambient_dim(), vertices, faces.clone());
            // align the parent map with the sorted face order of the sub-polytope
            let map: Vec<usize> = sub
                .lattice()
                .faces()
                .iter()
                .map(|f| parents[faces.iter().position(|g| g == f).unwrap()])
                .collect();
            (sub, map)
        })
    }

    /// Facet inequalities, inward normals, in ambient coordinates.
    pub fn inequalities(&self) -> &[Inequality] {
        self.0.inequalities.get_or_init(|| {
            let d = self.dim();
            if d == 0 {
                return Vec::new();
            }
            let lat = self.lattice();
            let hull = self.hull();
            let t: Vec<Vec<Rational>> =
                self.vertices().iter().map(|v| hull.coords(&sub(v, &hull.base))).collect();
            lat.of_dim(d - 1)
                .into_iter()
                .map(|fi| {
                    let vs = &lat.face(fi).vertices;
                    let rows: Matrix = vs[1..].iter().map(|&i| sub(&t[i], &t[vs[0]])).collect();
                    let mut a = nullspace(&rows, d).pop().expect("facet has codimension one");
                    let out = (0..t.len()).find(|i| vs.binary_search(i).is_err()).unwrap();
                    if dot(&a, &sub(&t[out], &t[vs[0]])).is_negative() {
                        a = a.iter().map(|x| -x).collect();
                    }
                    let mut normal = vec![Rational::zero(); self.ambient_dim()];
                    for (j, &p) in hull.pivots.iter().enumerate() {
                        normal[p] = a[j].clone();
                    }
                    let offset = -dot(&normal, &self.0.vertices[vs[0]]);
                    Inequality { normal, offset, face: fi }
                })
                .collect()
        })
    }

    /// Equations `n · p = c` cutting out the affine hull.
    pub fn hull_equations(&self) -> Vec<(Vec<Rational>, Rational)> {
        let hull = self.hull();
        nullspace(&hull.frame, self.ambient_dim())
            .into_iter()
            .map(|n| {
                let c = dot(&n, &hull.base);
                (n, c)
            })
            .collect()
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        self.hull().contains_point(p) && self.inequalities().iter().all(|h| !h.eval(p).is_negative())
    }

    /// Smallest face containing a point of the polytope.
    pub fn carrier(&self, p: &[Rational]) -> usize {
        let lat = self.lattice();
        let mut vs: Vec<usize> = (0..self.vertices().len()).collect();
        for h in self.inequalities() {
            if h.eval(p).is_zero() {
                let f = &lat.face(h.face).vertices;
                vs.retain(|v| f.binary_search(v).is_ok());
            }
        }
        lat.index_of(&vs).expect("intersection of facets is a face")
    }

    /// Whether the number of facets containing the face equals its codimension.
    pub fn is_corner(&self, face: usize) -> bool {
        let codim = self.dim() - self.lattice().face(face).dim;
        self.lattice().facets_containing(face).len() == codim
    }

    pub fn is_simple(&self) -> bool {
        (0..self.lattice().len()).all(|f| self.is_corner(f))
    }
}

/// Dimension of the affine hull of a point set.
pub fn affine_dim(points: &[Point], ambient: usize) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let dirs: Matrix = points[1..].iter().map(|p| sub(p, &points[0])).collect();
    rank(&dirs, ambient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn pts(v: &[&[i64]]) -> Vec<Point> {
        v.iter().map(|p| p.iter().map(|&x| int(x)).collect()).collect()
    }

    fn octahedron() -> Polytope {
        Polytope::new(
            3,
            pts(&[&[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1]]),
        )
        .unwrap()
    }

    #[test]
    fn square_face_counts() {
        let sq = Polytope::new(2, pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert_eq!(sq.lattice().f_vector(), vec![4, 4, 1]);
        assert!(sq.is_simple());
    }

    #[test]
    fn octahedron_face_counts_and_g_corner() {
        let o = octahedron();
        assert_eq!(o.lattice().f_vector(), vec![6, 12, 8, 1]);
        let v = o.lattice().index_of(&[5]).unwrap(); // (1,0,0) is last in sorted order
        assert_eq!(o.vertices()[5], pts(&[&[1, 0, 0]])[0]);
        assert!(!o.is_corner(v));
        assert_eq!(o.lattice().facets_containing(v).len(), 4);
    }

    #[test]
    fn hull_drops_interior_points_and_new_rejects_them() {
        let raw = pts(&[&[0, 0], &[2, 0], &[0, 2], &[1, 0], &[0, 0]]);
        let p = Polytope::convex_hull(2, raw.clone()).unwrap();
        assert_eq!(p.vertices().len(), 3);
        assert!(Polytope::new(2, raw).is_err());
        assert!(Polytope::convex_hull(2, vec![]).is_err());
    }

    #[test]
    fn product_matches_hull_of_products() {
        let i = Polytope::new(1, pts(&[&[0], &[1]])).unwrap();
        let tri = Polytope::new(2, pts(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        let p = i.product(&tri);
        let q = Polytope::convex_hull(3, p.vertices().to_vec()).unwrap();
        assert_eq!(p, q);
        let fp: Vec<_> = p.lattice().faces().to_vec();
        let fq: Vec<_> = q.lattice().faces().to_vec();
        assert_eq!(fp, fq);
    }

    #[test]
    fn lower_dimensional_polytope_in_space() {
        let seg = Polytope::new(3, pts(&[&[0, 0, 0], &[1, 1, 1]])).unwrap();
        assert_eq!(seg.dim(), 1);
        assert_eq!(seg.lattice().f_vector(), vec![2, 1]);
        assert!(seg.contains(&[crate::rational::frac(1, 2), crate::rational::frac(1, 2), crate::rational::frac(1, 2)]));
        assert!(!seg.contains(&[int(1), int(0), int(0)]));
    }

    #[test]
    fn face_polytope_matches_direct_hull() {
        let o = octahedron();
        for f in o.lattice().of_dim(2) {
            let (sub, map) = o.face_polytope(f);
            let direct = Polytope::convex_hull(3, sub.vertices().to_vec()).unwrap();
            assert_eq!(sub.lattice().faces(), direct.lattice().faces());
            assert_eq!(*map.last().unwrap(), f);
        }
    }
}
