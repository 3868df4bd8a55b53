use crate::error::{Error, Result};
use crate::geometry::{boundary, frame_sign, Sign};
use crate::linalg::{add, inverse, rank, sub, Matrix};
use crate::maps::MappedCell;
use crate::rational::Rational;
use serde::Serialize;
use std::collections::BTreeMap;

/// Which theory a class lives in: oriented spaces (bordism) or cooriented
/// submersions (cobordism).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Kind {
    Bordism,
    Cobordism,
}

/// An identification of facet `a` with facet `b`. `image[k]` is the vertex of
/// component `b.0` onto which the `k`-th vertex of facet `a` goes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gluing {
    pub a: (usize, usize),
    pub b: (usize, usize),
    pub image: Vec<usize>,
}

/// A space of polytopal components with maps to one target, together with
/// identifications of boundary facets. A class is closed when every facet is
/// identified with exactly one other.
#[derive(Debug, Clone)]
pub struct BordismClass {
    pub kind: Kind,
    pub components: Vec<MappedCell>,
    pub gluings: Vec<Gluing>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosedReport {
    pub pass: bool,
    pub facets: usize,
    pub pairs: usize,
    pub witness: Option<String>,
}

/// The affine map between two facets determined by a vertex correspondence.
#[derive(Debug, Clone)]
pub(crate) struct Identification {
    src_base: Vec<Rational>,
    dst_base: Vec<Rational>,
    pivots: Vec<usize>,
    /// Images of the canonical frame vectors of the source facet.
    lin: Matrix,
}

impl Identification {
    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        add(&self.dst_base, &self.push(&sub(x, &self.src_base)))
    }

    /// Image of a direction in the source facet.
    pub fn push(&self, v: &[Rational]) -> Vec<Rational> {
        let n = self.dst_base.len();
        let mut out = vec![Rational::from_integer(0.into()); n];
        for (&p, col) in self.pivots.iter().zip(&self.lin) {
            for (o, c) in out.iter_mut().zip(col) {
                *o += &v[p] * c;
            }
        }
        out
    }
}

impl BordismClass {
    pub fn new(kind: Kind, components: Vec<MappedCell>, gluings: Vec<Gluing>) -> Result<BordismClass> {
        let b = BordismClass { kind, components, gluings };
        if let Some(t) = b.components.first().map(|c| c.map.target.clone()) {
            if b.components.iter().any(|c| c.map.target != t) {
                return Err(Error::TargetMismatch("components map to different targets".into()));
            }
        }
        if kind == Kind::Cobordism {
            if let Some(i) = b.components.iter().position(|c| !c.is_submersion()) {
                return Err(Error::NotSubmersion(format!("component {i} of a cobordism class")));
            }
        }
        for g in &b.gluings {
            b.identification(g)?;
        }
        Ok(b)
    }

    pub fn empty(kind: Kind) -> BordismClass {
        BordismClass { kind, components: Vec::new(), gluings: Vec::new() }
    }

    pub fn target(&self) -> Option<&crate::maps::Target> {
        self.components.first().map(|c| &c.map.target)
    }

    /// Dimensions of the components.
    pub fn dims(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.components.iter().map(|c| c.cell.dim()).collect();
        d.sort();
        d.dedup();
        d
    }

    /// All facets, as (component, face index), in a fixed order.
    pub fn facets(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, c) in self.components.iter().enumerate() {
            for bc in boundary(&c.cell.body) {
                out.push((i, bc.face));
            }
        }
        out
    }

    fn facet_sign(&self, (i, f): (usize, usize)) -> Sign {
        let body = &self.components[i].cell.body;
        crate::geometry::facet_sign(&body.polytope, body.sign, f)
    }

    fn check_facet(&self, (i, f): (usize, usize)) -> Result<()> {
        let c = self
            .components
            .get(i)
            .ok_or_else(|| Error::Schema(format!("gluing names component {i}, which does not exist")))?;
        let p = &c.cell.body.polytope;
        if p.dim() == 0 || f >= p.lattice().len() || p.lattice().face(f).dim + 1 != p.dim() {
            return Err(Error::NotAFace(format!("face {f} is not a facet of component {i}")));
        }
        Ok(())
    }

    /// The affine identification of a gluing, validated: the vertex
    /// correspondence must extend to an affine isomorphism of the facets.
    pub(crate) fn identification(&self, g: &Gluing) -> Result<Identification> {
        self.check_facet(g.a)?;
        self.check_facet(g.b)?;
        let pa = &self.components[g.a.0].cell.body.polytope;
        let pb = &self.components[g.b.0].cell.body.polytope;
        let fa = pa.lattice().face(g.a.1);
        let fb = pb.lattice().face(g.b.1);
        let mut img = g.image.clone();
        img.sort();
        if g.image.len() != fa.vertices.len() || img != fb.vertices {
            return Err(Error::Schema(format!(
                "gluing of {:?} with {:?}: the vertex images must list the vertices of the second facet",
                g.a, g.b
            )));
        }
        let (sa, _) = pa.face_polytope(g.a.1);
        let hull = sa.hull();
        let v0 = &pa.vertices()[fa.vertices[0]];
        let w0 = &pb.vertices()[g.image[0]];
        let d = hull.dim();
        let mut chosen: Vec<usize> = Vec::new();
        let mut rows: Matrix = Vec::new();
        for k in 1..fa.vertices.len() {
            let c = hull.coords(&sub(&pa.vertices()[fa.vertices[k]], v0));
            let mut cand = rows.clone();
            cand.push(c.clone());
            if rank(&cand, d) == cand.len() {
                rows = cand;
                chosen.push(k);
                if rows.len() == d {
                    break;
                }
            }
        }
        let inv = if d == 0 { Vec::new() } else { inverse(&rows).unwrap_or_default() };
        // lin[j] = image of frame vector j: solve rows * F = images
        let images: Matrix = chosen.iter().map(|&k| sub(&pb.vertices()[g.image[k]], w0)).collect();
        let lin: Matrix = (0..d)
            .map(|j| {
                let mut col = vec![Rational::from_integer(0.into()); w0.len()];
                for (t, im) in images.iter().enumerate() {
                    for (o, x) in col.iter_mut().zip(im) {
                        *o += &inv[j][t] * x;
                    }
                }
                col
            })
            .collect();
        let id = Identification { src_base: v0.clone(), dst_base: w0.clone(), pivots: hull.pivots.clone(), lin };
        for (k, &v) in fa.vertices.iter().enumerate() {
            if id.apply(&pa.vertices()[v]) != pb.vertices()[g.image[k]] {
                return Err(Error::Precondition(format!(
                    "gluing of {:?} with {:?}: the vertex correspondence is not affine",
                    g.a, g.b
                )));
            }
        }
        Ok(id)
    }

    /// Orientation reversal and compatibility with the maps, for one gluing.
    fn check_gluing(&self, g: &Gluing) -> Result<Option<String>> {
        let id = self.identification(g)?;
        let (ca, cb) = (&self.components[g.a.0], &self.components[g.b.0]);
        let (fa, _) = ca.cell.body.polytope.face_polytope(g.a.1);
        let (fb, _) = cb.cell.body.polytope.face_polytope(g.b.1);
        if ca.cell.circles != cb.cell.circles {
            return Ok(Some(format!("{:?} and {:?} have different circle factors", g.a, g.b)));
        }
        let pushed: Matrix = fa.hull().frame.iter().map(|v| id.push(v)).collect();
        let s = frame_sign(fb, &pushed)? * self.facet_sign(g.a);
        if s == self.facet_sign(g.b) {
            return Ok(Some(format!("gluing of {:?} with {:?} preserves the boundary orientation", g.a, g.b)));
        }
        if ca.circle_block() != cb.circle_block() {
            return Ok(Some(format!("gluing of {:?} with {:?}: the maps differ on the circle factors", g.a, g.b)));
        }
        let t = &ca.map.target;
        let pad = |x: &[Rational], r: usize| -> Vec<Rational> {
            let mut v = x.to_vec();
            v.extend(std::iter::repeat(Rational::from_integer(0.into())).take(r));
            v
        };
        let r = ca.cell.circles;
        let mut base: Option<Vec<Rational>> = None;
        for v in fa.vertices() {
            let x = ca.map.apply(&pad(v, r));
            let y = cb.map.apply(&pad(&id.apply(v), r));
            let diff = sub(&y, &x);
            if !t.same_point(&x, &y) || base.as_ref().is_some_and(|b| *b != diff) {
                return Ok(Some(format!("gluing of {:?} with {:?} does not respect the maps", g.a, g.b)));
            }
            base = Some(diff);
        }
        Ok(None)
    }

    /// Partners of glued facets, and the first defect among the gluings: a
    /// facet glued to itself or twice, an orientation-preserving
    /// identification, or one incompatible with the maps.
    pub fn partners(&self) -> Result<(BTreeMap<(usize, usize), usize>, Option<String>)> {
        let mut partner = BTreeMap::new();
        let mut witness = None;
        for (k, g) in self.gluings.iter().enumerate() {
            if g.a == g.b {
                witness.get_or_insert(format!("facet {:?} is glued to itself", g.a));
            }
            for x in [g.a, g.b] {
                if partner.insert(x, k).is_some() {
                    witness.get_or_insert(format!("facet {x:?} is glued more than once"));
                }
            }
            if let Some(w) = self.check_gluing(g)? {
                witness.get_or_insert(w);
            }
        }
        Ok((partner, witness))
    }

    /// Checks that the gluings form a fixed-point-free involution on the
    /// facets by orientation-reversing identifications compatible with the
    /// maps.
    pub fn check_closed(&self) -> Result<ClosedReport> {
        let facets = self.facets();
        let (partner, mut witness) = self.partners()?;
        if let Some(f) = facets.iter().find(|f| !partner.contains_key(f)) {
            witness.get_or_insert(format!("facet {f:?} is not glued"));
        }
        Ok(ClosedReport { pass: witness.is_none(), facets: facets.len(), pairs: self.gluings.len(), witness })
    }

    /// Fails with `NotClosed` unless the class is certified closed.
    pub fn require_closed(&self) -> Result<()> {
        let r = self.check_closed()?;
        match r.witness {
            None => Ok(()),
            Some(w) => Err(Error::NotClosed(w)),
        }
    }

    /// Disjoint union, renumbering the second summand.
    pub fn union(&self, other: &BordismClass) -> BordismClass {
        let n = self.components.len();
        let mut out = self.clone();
        out.components.extend(other.components.iter().cloned());
        out.gluings.extend(other.gluings.iter().map(|g| Gluing {
            a: (g.a.0 + n, g.a.1),
            b: (g.b.0 + n, g.b.1),
            image: g.image.clone(),
        }));
        out
    }

    /// The class with every orientation reversed.
    pub fn reversed(&self) -> BordismClass {
        let mut out = self.clone();
        for c in out.components.iter_mut() {
            *c = c.reversed();
        }
        out
    }

    /// Vertex indices of the `k`-th vertex of a facet, in component order.
    pub fn facet_vertices(&self, (i, f): (usize, usize)) -> &[usize] {
        &self.components[i].cell.body.polytope.lattice().face(f).vertices
    }


    /// The gluing of `facet`, written with `facet` first.
    pub fn gluing_of(&self, facet: (usize, usize)) -> Option<Gluing> {
        let g = self.gluings.iter().find(|g| g.a == facet || g.b == facet)?;
        if g.a == facet {
            return Some(g.clone());
        }
        let va = self.facet_vertices(g.a);
        let vb = self.facet_vertices(g.b);
        let image = vb.iter().map(|w| va[g.image.iter().position(|x| x == w).expect("bijective gluing")]).collect();
        Some(Gluing { a: g.b, b: g.a, image })
    }
}
