use super::class::{BordismClass, Gluing, Kind};
use crate::chains::{canonical, Component, Key, Ring, Tag};
use crate::error::{Error, Result};
use crate::geometry::{facet_sign, OrientedPolytope};
use crate::linalg::{smith, IntMatrix};
use crate::maps::{Cell, MappedCell};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

/// Validates the interior gluings of a relation space and rejects corners: a
/// codimension-two face lying in two unglued facets.
pub fn check_no_corners(w: &BordismClass) -> Result<BTreeMap<(usize, usize), usize>> {
    let (partner, defect) = w.partners()?;
    if let Some(d) = defect {
        return Err(Error::Precondition(d));
    }
    for (i, c) in w.components.iter().enumerate() {
        let l = c.cell.body.polytope.lattice();
        let d = c.cell.body.dim();
        if d < 2 {
            continue;
        }
        for r in l.of_dim(d - 2) {
            if l.facets_containing(r).iter().all(|&f| !partner.contains_key(&(i, f))) {
                return Err(Error::HasCorners(format!(
                    "component {i}: the codimension-two face {:?} lies in two unglued facets",
                    l.face(r).vertices
                )));
            }
        }
    }
    Ok(partner)
}

/// `∂W`: the unglued facets, glued to each other along their boundaries by
/// following the identifications of `W` around each codimension-two face.
pub fn boundary_class(w: &BordismClass) -> Result<BordismClass> {
    let partner = check_no_corners(w)?;
    let open: Vec<(usize, usize)> = w.facets().into_iter().filter(|f| !partner.contains_key(f)).collect();
    let index: BTreeMap<(usize, usize), usize> = open.iter().enumerate().map(|(k, f)| (*f, k)).collect();
    let components = open
        .iter()
        .map(|&(i, f)| {
            let c = &w.components[i];
            let p = &c.cell.body.polytope;
            let body = OrientedPolytope::new(p.face_polytope(f).0.clone(), facet_sign(p, c.cell.body.sign, f));
            MappedCell { cell: Cell::new(body, c.cell.circles), map: c.map.clone() }
        })
        .collect();
    let mut gluings = Vec::new();
    for (k, &(i, f)) in open.iter().enumerate() {
        let l = w.components[i].cell.body.polytope.lattice();
        let fd = l.face(f).dim;
        if fd == 0 {
            continue;
        }
        for r in l.of_dim(fd - 1).into_iter().filter(|&r| l.is_subface(r, f)) {
            let start: Vec<usize> = l.face(r).vertices.clone();
            let mut now: BTreeMap<usize, usize> = start.iter().map(|&v| (v, v)).collect();
            let (mut comp, mut facet, mut ridge) = (i, f, r);
            let mut steps = 0;
            let end = loop {
                let lc = w.components[comp].cell.body.polytope.lattice();
                let other = lc
                    .facets_containing(ridge)
                    .into_iter()
                    .find(|&x| x != facet)
                    .expect("a ridge lies in two facets");
                let Some(&gi) = partner.get(&(comp, other)) else { break (comp, other, ridge) };
                let g = &w.gluings[gi];
                let forward = g.a == (comp, other);
                let step: BTreeMap<usize, usize> = if forward {
                    w.facet_vertices(g.a).iter().copied().zip(g.image.iter().copied()).collect()
                } else {
                    g.image.iter().copied().zip(w.facet_vertices(g.a).iter().copied()).collect()
                };
                let next = if forward { g.b } else { g.a };
                for v in now.values_mut() {
                    *v = step[v];
                }
                let mut vs: Vec<usize> = lc.face(ridge).vertices.iter().map(|v| step[v]).collect();
                vs.sort();
                comp = next.0;
                facet = next.1;
                ridge = w.components[comp].cell.body.polytope.lattice().index_of(&vs).expect("glued ridge");
                steps += 1;
                if steps > w.gluings.len() {
                    return Err(Error::Precondition("the gluings around a codimension-two face do not terminate".into()));
                }
            };
            let (j, fe, re) = end;
            let k2 = index[&(j, fe)];
            let local = |comp: usize, facet: usize, face: usize| -> usize {
                let p = &w.components[comp].cell.body.polytope;
                let fv = &p.lattice().face(facet).vertices;
                let vs: Vec<usize> = p
                    .lattice()
                    .face(face)
                    .vertices
                    .iter()
                    .map(|v| fv.binary_search(v).expect("subface"))
                    .collect();
                p.face_polytope(facet).0.lattice().index_of(&vs).expect("face of the facet")
            };
            let (la, lb) = (local(i, f, r), local(j, fe, re));
            if (k, la) < (k2, lb) {
                let fv = &w.components[j].cell.body.polytope.lattice().face(fe).vertices;
                let image = start.iter().map(|v| fv.binary_search(&now[v]).expect("end vertex")).collect();
                gluings.push(Gluing { a: (k, la), b: (k2, lb), image });
            }
        }
    }
    Ok(BordismClass { kind: w.kind, components, gluings })
}

/// Components up to oriented isomorphism, with multiplicities.
pub fn signed_keys(b: &BordismClass) -> Result<BTreeMap<Key, BigInt>> {
    let mut out: BTreeMap<Key, BigInt> = BTreeMap::new();
    for (i, c) in b.components.iter().enumerate() {
        let comp = Component { piece: c.clone(), tag: Tag::blank(&c.cell.body.polytope) };
        let can = canonical(&comp)?;
        let s = can.sign.ok_or_else(|| {
            Error::Unsupported(format!("component {i} is isomorphic to its own reverse, so it cannot be matched by orientation"))
        })?;
        *out.entry(can.key).or_insert_with(BigInt::zero) += BigInt::from(s.to_int());
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relation {
    #[serde(serialize_with = "ints")]
    pub coefficients: Vec<BigInt>,
    pub origin: String,
}

fn ints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// A finitely presented module with its invariant factors.
#[derive(Debug, Clone, Serialize)]
pub struct Presentation {
    pub ring: Ring,
    pub generators: usize,
    pub relations: Vec<Relation>,
    #[serde(serialize_with = "ints")]
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl Presentation {
    /// Cyclic summands, torsion first, e.g. `["Z/2", "Z"]`.
    pub fn factors(&self) -> Vec<String> {
        let free = match self.ring {
            Ring::Z => "Z",
            Ring::Q => "Q",
        };
        let mut out: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        out.extend(std::iter::repeat(free.to_string()).take(self.free_rank));
        out
    }
}

fn int_matrix(rows: usize, cols: usize) -> IntMatrix {
    vec![vec![BigInt::zero(); cols]; rows]
}

/// The module generated by closed classes `gens` modulo `[∂W] = 0` for each
/// relation space `W`, and modulo the identifications among generators that
/// come from disjoint unions and orientation reversal.
pub fn present_group(ring: Ring, gens: &[BordismClass], relation_spaces: &[BordismClass]) -> Result<Presentation> {
    let mut vectors = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.kind != Kind::Bordism {
            return Err(Error::Precondition(format!("generator {i} is not a bordism class")));
        }
        g.require_closed().map_err(|e| Error::NotClosed(format!("generator {i}: {e}")))?;
        vectors.push(signed_keys(g)?);
    }
    let mut keys: BTreeMap<Key, usize> = BTreeMap::new();
    for v in &vectors {
        for k in v.keys() {
            let n = keys.len();
            keys.entry(k.clone()).or_insert(n);
        }
    }
    let n = gens.len();
    let mut g = int_matrix(keys.len(), n);
    for (j, v) in vectors.iter().enumerate() {
        for (k, x) in v {
            g[keys[k]][j] = x.clone();
        }
    }
    let sm = smith(&g, n);
    let r = sm.diagonal.len();
    let mut relations: Vec<Relation> = (r..n)
        .map(|j| Relation {
            coefficients: sm.v.iter().map(|row| row[j].clone()).collect(),
            origin: "generators with equal underlying spaces".into(),
        })
        .collect();
    for (wi, w) in relation_spaces.iter().enumerate() {
        if w.kind != Kind::Bordism {
            return Err(Error::Precondition(format!("relation space {wi} is not a bordism class")));
        }
        let dw = boundary_class(w)?;
        if let Some(d) = dw.check_closed()?.witness {
            return Err(Error::Precondition(format!("boundary of relation space {wi} is not closed: {d}")));
        }
        let mut coeffs = vec![BigInt::zero(); n];
        let mut rest = vec![BigInt::zero(); keys.len()];
        for c in &dw.components {
            let single = BordismClass { kind: Kind::Bordism, components: vec![c.clone()], gluings: Vec::new() };
            let (k, s) = signed_keys(&single)?.into_iter().next().expect("one component");
            let Some(&row) = keys.get(&k) else {
                return Err(Error::Precondition(format!(
                    "boundary of relation space {wi} has a component matching no generator"
                )));
            };
            let direct = |sign: &BigInt| {
                (0..n).find(|&j| gens[j].components.len() == 1 && vectors[j].get(&k) == Some(sign))
            };
            if let Some(j) = direct(&s) {
                coeffs[j] += BigInt::one();
            } else if let Some(j) = direct(&-s.clone()) {
                coeffs[j] -= BigInt::one();
            } else {
                rest[row] += s;
            }
        }
        // solve g · x = rest through the Smith form
        let y: Vec<BigInt> = sm.u.iter().map(|row| row.iter().zip(&rest).map(|(a, b)| a * b).sum()).collect();
        let mut z = vec![BigInt::zero(); n];
        for (i, yi) in y.iter().enumerate() {
            if i < r {
                if !yi.is_multiple_of(&sm.diagonal[i]) {
                    return Err(Error::Precondition(format!(
                        "boundary of relation space {wi} is not an integer combination of the generators"
                    )));
                }
                z[i] = yi / &sm.diagonal[i];
            } else if !yi.is_zero() {
                return Err(Error::Precondition(format!(
                    "boundary of relation space {wi} is not a combination of the generators"
                )));
            }
        }
        for (j, c) in coeffs.iter_mut().enumerate() {
            *c += sm.v[j].iter().zip(&z).map(|(a, b)| a * b).sum::<BigInt>();
        }
        relations.push(Relation { coefficients: coeffs, origin: format!("boundary of relation space {wi}") });
    }
    let rel: IntMatrix = relations.iter().map(|r| r.coefficients.clone()).collect();
    let s = smith(&rel, n);
    let (torsion, free_rank) = match ring {
        Ring::Z => (
            s.diagonal.iter().filter(|d| !d.is_one()).cloned().collect(),
            n - s.diagonal.len(),
        ),
        Ring::Q => (Vec::new(), n - s.diagonal.len()),
    };
    Ok(Presentation { ring, generators: n, relations, torsion, free_rank })
}
