use super::class::{BordismClass, Kind};
use crate::chains::{cylinder_witness, Chain, Component, Ring, Tag};
use crate::error::{Error, Result};
use crate::products::Cochain;
use crate::rational::Rational;
use num_traits::{One, Zero};
use serde::Serialize;

/// Classical classes are already polytopal data; this only checks closedness
/// and marks the result as a bordism class.
pub fn pi_bo_kb(b: &BordismClass) -> Result<BordismClass> {
    b.require_closed()?;
    Ok(BordismClass { kind: Kind::Bordism, ..b.clone() })
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Tags agreeing across every gluing: faces are labelled by their class under
/// the identifications, numbered from `offset + 1`. Returns the tags and the
/// number of classes.
pub fn gluing_tags(b: &BordismClass, offset: u64) -> Result<(Vec<Tag>, u64)> {
    let starts: Vec<usize> = b
        .components
        .iter()
        .scan(0, |acc, c| {
            let s = *acc;
            *acc += c.cell.body.polytope.lattice().len();
            Some(s)
        })
        .collect();
    let total = b.components.iter().map(|c| c.cell.body.polytope.lattice().len()).sum();
    let mut parent: Vec<usize> = (0..total).collect();
    for g in &b.gluings {
        let pa = &b.components[g.a.0].cell.body.polytope;
        let pb = &b.components[g.b.0].cell.body.polytope;
        let va = b.facet_vertices(g.a);
        for f in 0..pa.lattice().len() {
            if !pa.lattice().is_subface(f, g.a.1) {
                continue;
            }
            let mut img: Vec<usize> = pa
                .lattice()
                .face(f)
                .vertices
                .iter()
                .map(|v| g.image[va.iter().position(|x| x == v).expect("subface vertex")])
                .collect();
            img.sort();
            let h = pb.lattice().index_of(&img).expect("identifications carry faces to faces");
            let (x, y) = (find(&mut parent, starts[g.a.0] + f), find(&mut parent, starts[g.b.0] + h));
            parent[x.max(y)] = x.min(y);
        }
    }
    let mut number = vec![u64::MAX; total];
    let mut next = 0;
    for i in 0..total {
        let r = find(&mut parent, i);
        if number[r] == u64::MAX {
            number[r] = next;
            next += 1;
        }
        number[i] = number[r];
    }
    let mut tags = Vec::new();
    for (c, s) in b.components.iter().zip(&starts) {
        let n = c.cell.body.polytope.lattice().len();
        let tag = Tag { labels: (0..n).map(|f| vec![offset + number[s + f] + 1]).collect() };
        tag.check_injective(&c.cell.body.polytope).map_err(|_| {
            Error::Precondition("the gluings identify two faces of one component; subdivide it".into())
        })?;
        tags.push(tag);
    }
    Ok((tags, next))
}

fn chain_with(b: &BordismClass, tags: &[Tag]) -> Result<Chain> {
    let mut out = Chain::zero(Ring::Q);
    for (c, t) in b.components.iter().zip(tags) {
        out.add_component(&Rational::one(), &Component::new(c.clone(), t.clone())?)?;
    }
    Ok(out)
}

/// The homology-class certificate of a closed class: the chain with gluing
/// tags, a second tag choice, and a union of cylinders whose boundary is the
/// difference.
#[derive(Debug, Clone)]
pub struct KhCertificate {
    pub chain: Chain,
    pub alternative: Chain,
    pub witness: Chain,
    /// `∂` of the chain vanishes.
    pub cycle: bool,
    /// `∂ witness = alternative − chain`.
    pub tag_independent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct KhSummary {
    pub terms: usize,
    pub witness_terms: usize,
    pub cycle: bool,
    pub tag_independent: bool,
}

impl KhCertificate {
    pub fn summary(&self) -> KhSummary {
        KhSummary {
            terms: self.chain.len(),
            witness_terms: self.witness.len(),
            cycle: self.cycle,
            tag_independent: self.tag_independent,
        }
    }
}

/// `[X, f] ↦ [X, f, G]` for gluing-compatible tags `G`.
pub fn pi_kb_kh(b: &BordismClass) -> Result<KhCertificate> {
    if b.kind != Kind::Bordism {
        return Err(Error::Precondition("expected a bordism class".into()));
    }
    b.require_closed()?;
    let (tags, n) = gluing_tags(b, 0)?;
    let (alt, _) = gluing_tags(b, n)?;
    let chain = chain_with(b, &tags)?;
    let alternative = chain_with(b, &alt)?;
    let mut witness = Chain::zero(Ring::Q);
    for ((c, t), u) in b.components.iter().zip(&tags).zip(&alt) {
        let (w, _) = cylinder_witness(&Component::new(c.clone(), t.clone())?, u)?;
        witness.add_component(&Rational::one(), &w)?;
    }
    let cycle = chain.boundary()?.is_zero();
    let tag_independent = witness.boundary()? == alternative.sub(&chain);
    Ok(KhCertificate { chain, alternative, witness, cycle, tag_independent })
}

/// `[X, f] ↦ [X, f, C]` for gluing-compatible co-gauge tags.
pub fn pi_kcb_kch(b: &BordismClass) -> Result<Cochain> {
    if b.kind != Kind::Cobordism {
        return Err(Error::Precondition("expected a cobordism class".into()));
    }
    b.require_closed()?;
    let t = b
        .target()
        .cloned()
        .ok_or_else(|| Error::Precondition("the empty class has no target".into()))?;
    let (tags, _) = gluing_tags(b, 0)?;
    Cochain::new(t, chain_with(b, &tags)?)
}

/// `[X, f] ↦ f_*[X]` in degree zero over a point: the sum of the degree-zero
/// coefficients.
pub fn degree(c: &Chain) -> Rational {
    c.terms.iter().filter(|(k, _)| k.dim() == 0 && k.target.dim() == 0).fold(Rational::zero(), |acc, (_, v)| acc + v)
}
