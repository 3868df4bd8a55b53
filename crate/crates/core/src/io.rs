//! JSON documents, version `corner-calculus/1`: reading into the core types
//! and writing canonical results back in the same shapes.

use crate::bordism::{BordismClass, Gluing, Kind};
use crate::chains::{Chain, Component, Generator, Label, Ring, SingularChain, SingularSimplex, Tag};
use crate::error::{Error, Result};
use crate::geometry::{OrientedPolytope, Point, Polytope, Sign};
use crate::linalg::{zeros, Matrix};
use crate::maps::{AffineMap, Axis, Cell, MappedCell, Target, TargetMap};
use crate::orbifold::{ElementMap, FiniteGroup, GroupAction, VirtualRep};
use crate::products::Cochain;
use crate::rational::{self, Rational};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub use crate::suites::SCHEMA;

/// A rational literal: `"p/q"`, `"p"`, or a bare JSON integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Lit {
    Text(String),
    Int(i64),
}

impl Lit {
    pub fn value(&self) -> Result<Rational> {
        match self {
            Lit::Text(s) => rational::parse(s),
            Lit::Int(i) => Ok(rational::int(*i)),
        }
    }

    pub fn of(q: &Rational) -> Lit {
        Lit::Text(rational::format(q))
    }
}

fn vector(v: &[Lit]) -> Result<Vec<Rational>> {
    v.iter().map(Lit::value).collect()
}

fn matrix(m: &[Vec<Lit>]) -> Result<Matrix> {
    m.iter().map(|r| vector(r)).collect()
}

fn lits(v: &[Rational]) -> Vec<Lit> {
    v.iter().map(Lit::of).collect()
}

fn lit_matrix(m: &[Vec<Rational>]) -> Vec<Vec<Lit>> {
    m.iter().map(|r| lits(r)).collect()
}

/// Parses a document and checks its version tag.
pub fn from_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Schema(format!("invalid JSON: {e}")))?;
    match v.get("schema") {
        Some(serde_json::Value::String(s)) if s == SCHEMA => {}
        Some(other) => return Err(Error::Schema(format!("unsupported schema {other}, expected {SCHEMA:?}"))),
        None => return Err(Error::Schema(format!("missing top-level \"schema\": {SCHEMA:?}"))),
    }
    serde_json::from_value(v).map_err(|e| Error::Schema(e.to_string()))
}

/// Pretty JSON with a trailing newline.
pub fn to_string<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetDoc {
    pub kind: String,
    #[serde(default)]
    pub dim: usize,
    /// Only for `"product"`: `"line"` or `"circle"` per coordinate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axes: Option<Vec<String>>,
}

impl TargetDoc {
    pub fn read(&self) -> Result<Target> {
        match self.kind.as_str() {
            "point" => Ok(Target::point()),
            "euclid" => Ok(Target::euclid(self.dim)),
            "torus" => Ok(Target::torus(self.dim)),
            "product" => {
                let axes = self.axes.as_ref().ok_or_else(|| Error::Schema("product target needs \"axes\"".into()))?;
                let axes = axes
                    .iter()
                    .map(|a| match a.as_str() {
                        "line" => Ok(Axis::Line),
                        "circle" => Ok(Axis::Circle),
                        _ => Err(Error::Schema(format!("unknown axis {a:?}"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Target { axes })
            }
            k => Err(Error::Schema(format!("unknown target kind {k:?}"))),
        }
    }

    pub fn of(y: &Target) -> TargetDoc {
        let kind = y.kind_name();
        let axes = (kind == "product")
            .then(|| y.axes.iter().map(|a| if *a == Axis::Line { "line" } else { "circle" }.to_string()).collect());
        TargetDoc { kind: kind.to_string(), dim: y.dim(), axes }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeDoc {
    pub ambient_dim: usize,
    pub vertices: Vec<Vec<Lit>>,
    /// Oriented frame of the affine hull; the canonical one when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame: Option<Vec<Vec<Lit>>>,
    #[serde(default = "plus")]
    pub sign: i64,
}

fn plus() -> i64 {
    1
}

fn sign(i: i64) -> Result<Sign> {
    Sign::from_int(i).ok_or_else(|| Error::Schema(format!("sign must be 1 or -1, got {i}")))
}

impl PolytopeDoc {
    /// The polytope, its orientation, and for each listed vertex its index in
    /// the sorted vertex order.
    pub fn read(&self) -> Result<(OrientedPolytope, Vec<usize>)> {
        let pts: Vec<Point> = self.vertices.iter().map(|v| vector(v)).collect::<Result<_>>()?;
        let p = Polytope::new(self.ambient_dim, pts.clone())?;
        let order = pts.iter().map(|v| p.vertices().binary_search(v).expect("vertex of its own hull")).collect();
        let s = sign(self.sign)?;
        let op = match &self.frame {
            Some(f) => OrientedPolytope::from_frame(p, &matrix(f)?, s)?,
            None => OrientedPolytope::new(p, s),
        };
        Ok((op, order))
    }

    pub fn of(p: &OrientedPolytope) -> PolytopeDoc {
        PolytopeDoc {
            ambient_dim: p.polytope.ambient_dim(),
            vertices: p.polytope.vertices().iter().map(|v| lits(v)).collect(),
            frame: None,
            sign: p.sign.to_int(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    pub target: TargetDoc,
    /// Zero when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<Lit>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<Vec<Lit>>,
}

impl MapDoc {
    fn read(&self, cols: usize) -> Result<AffineMap> {
        let y = self.target.read()?;
        let m = match &self.matrix {
            Some(m) => matrix(m)?,
            None => zeros(y.dim(), cols),
        };
        let c = match &self.offset {
            Some(c) => vector(c)?,
            None => vec![rational::zero(); y.dim()],
        };
        Ok(AffineMap::new(y, m, c))
    }

    fn of(f: &AffineMap) -> MapDoc {
        MapDoc { target: TargetDoc::of(&f.target), matrix: Some(lit_matrix(&f.matrix)), offset: Some(lits(&f.offset)) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceLabel {
    /// Vertex indices into the listed vertices.
    pub face: Vec<usize>,
    pub label: Label,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TagDoc {
    /// `"enumerate"`, `"dimension"` or `"blank"`.
    Named(String),
    Faces(Vec<FaceLabel>),
}

impl TagDoc {
    fn read(&self, p: &Polytope, order: &[usize]) -> Result<Tag> {
        match self {
            TagDoc::Named(n) => match n.as_str() {
                "enumerate" => Ok(Tag::enumerate(p)),
                "dimension" => Ok(Tag::by_dimension(p)),
                "blank" => Ok(Tag::blank(p)),
                _ => Err(Error::Schema(format!("unknown tag {n:?}"))),
            },
            TagDoc::Faces(list) => {
                let mut labels: Vec<Option<Label>> = vec![None; p.lattice().len()];
                for fl in list {
                    let mut vs = fl
                        .face
                        .iter()
                        .map(|&i| order.get(i).copied().ok_or_else(|| Error::Schema(format!("vertex index {i} out of range"))))
                        .collect::<Result<Vec<_>>>()?;
                    vs.sort();
                    vs.dedup();
                    let f = p.lattice().index_of(&vs).ok_or_else(|| Error::NotAFace(format!("{:?}", fl.face)))?;
                    if labels[f].replace(fl.label.clone()).is_some() {
                        return Err(Error::Schema(format!("face {:?} labelled twice", fl.face)));
                    }
                }
                let labels = labels
                    .into_iter()
                    .enumerate()
                    .map(|(i, l)| {
                        l.ok_or_else(|| Error::Schema(format!("face {:?} has no label", p.lattice().face(i).vertices)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Tag::new(labels))
            }
        }
    }

    fn of(p: &Polytope, t: &Tag) -> TagDoc {
        TagDoc::Faces(
            p.lattice()
                .faces()
                .iter()
                .zip(&t.labels)
                .map(|(f, l)| FaceLabel { face: f.vertices.clone(), label: l.clone() })
                .collect(),
        )
    }
}

/// One polytope times circles with a map to a target; the tag defaults to
/// `"enumerate"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentDoc {
    pub polytope: PolytopeDoc,
    #[serde(default)]
    pub circles: usize,
    pub map: MapDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<TagDoc>,
}

impl ComponentDoc {
    fn mapped(&self) -> Result<(MappedCell, Vec<usize>)> {
        let (op, order) = self.polytope.read()?;
        let cell = Cell::new(op, self.circles);
        let f = self.map.read(cell.coord_len())?;
        Ok((MappedCell::new(cell, f)?, order))
    }

    /// The component without the tag injectivity check, which depends on
    /// the group acting.
    fn parts(&self) -> Result<Component> {
        let (piece, order) = self.mapped()?;
        let p = &piece.cell.body.polytope;
        let tag = match &self.tag {
            Some(t) => t.read(p, &order)?,
            None => Tag::enumerate(p),
        };
        Ok(Component { piece, tag })
    }

    pub fn read(&self) -> Result<Component> {
        let c = self.parts()?;
        Component::new(c.piece, c.tag)
    }

    pub fn of(c: &Component) -> ComponentDoc {
        let p = &c.piece.cell.body;
        ComponentDoc {
            polytope: PolytopeDoc::of(p),
            circles: c.piece.cell.circles,
            map: MapDoc::of(&c.piece.map),
            tag: Some(TagDoc::of(&p.polytope, &c.tag)),
        }
    }

    fn of_cell(c: &MappedCell) -> ComponentDoc {
        ComponentDoc {
            polytope: PolytopeDoc::of(&c.cell.body),
            circles: c.cell.circles,
            map: MapDoc::of(&c.map),
            tag: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementMapDoc {
    /// Component the element carries this one onto.
    #[serde(default)]
    pub target: usize,
    pub matrix: Vec<Vec<Lit>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<Vec<Lit>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionDoc {
    One(ElementMapDoc),
    PerComponent(Vec<ElementMapDoc>),
}

/// A finite group, either by name (`"Z<n>"`, `"S3"`, `"K4"`, `"trivial"`) or
/// by element names and a multiplication table of indices, with an optional
/// action keyed by element name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<BTreeMap<String, ActionDoc>>,
}

impl GroupDoc {
    pub fn group(&self) -> Result<FiniteGroup> {
        match (&self.name, &self.elements, &self.table) {
            (Some(n), None, None) => named_group(n),
            (None, Some(e), Some(t)) => FiniteGroup::new(e.clone(), t.clone()),
            _ => Err(Error::Schema("a group needs either \"name\" or both \"elements\" and \"table\"".into())),
        }
    }

    /// The action on the given components.
    pub fn action(&self, spaces: Vec<Polytope>) -> Result<GroupAction> {
        let g = self.group()?;
        let acts = self.action.as_ref().ok_or_else(|| Error::Schema("group has no \"action\"".into()))?;
        if let Some(k) = acts.keys().find(|k| g.index_of(k).is_none()) {
            return Err(Error::Schema(format!("action names unknown element {k:?}")));
        }
        let mut maps = Vec::with_capacity(g.order());
        for name in &g.names {
            let entry = acts.get(name).ok_or_else(|| Error::Schema(format!("no action given for element {name:?}")))?;
            let list: Vec<&ElementMapDoc> = match entry {
                ActionDoc::One(m) => vec![m],
                ActionDoc::PerComponent(v) => v.iter().collect(),
            };
            if list.len() != spaces.len() {
                return Err(Error::Schema(format!("element {name:?} needs one map per component ({})", spaces.len())));
            }
            let mut row = Vec::new();
            for (i, m) in list.into_iter().enumerate() {
                let a = spaces[i].ambient_dim();
                let offset = match &m.offset {
                    Some(o) => vector(o)?,
                    None => vec![rational::zero(); a],
                };
                row.push(ElementMap { target: m.target, matrix: matrix(&m.matrix)?, offset });
            }
            maps.push(row);
        }
        GroupAction::new(g, spaces, maps)
    }
}

fn named_group(n: &str) -> Result<FiniteGroup> {
    match n {
        "trivial" | "Z1" => Ok(FiniteGroup::trivial()),
        "S3" => Ok(FiniteGroup::s3()),
        "K4" | "Z2xZ2" => Ok(FiniteGroup::klein_four()),
        _ => match n.strip_prefix('Z').and_then(|k| k.parse::<usize>().ok()) {
            Some(k) if k >= 1 => Ok(FiniteGroup::cyclic(k)),
            _ => Err(Error::Schema(format!("unknown group name {n:?}"))),
        },
    }
}

/// A generator: one component given inline, or several with an optional
/// group acting on them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDoc {
    #[serde(flatten, default, skip_serializing_if = "Option::is_none")]
    pub component: Option<ComponentDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ComponentDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient: Option<GroupDoc>,
    /// Set on terms written out by the tools. Such a term may repeat labels
    /// within an orbit of the group it was a quotient by, so its tag is taken
    /// as is.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub canonical: bool,
}

impl GeneratorDoc {
    pub fn read(&self) -> Result<Generator> {
        if self.canonical {
            return match (&self.component, &self.components, &self.quotient) {
                (Some(c), None, None) => Ok(Generator::single(c.parts()?)),
                _ => Err(Error::Schema("a canonical term is a single inline component".into())),
            };
        }
        let comps: Vec<Component> = match (&self.component, &self.components) {
            (Some(c), None) => vec![c.parts()?],
            (None, Some(cs)) => cs.iter().map(ComponentDoc::parts).collect::<Result<_>>()?,
            _ => return Err(Error::Schema("a generator needs either inline component fields or \"components\"".into())),
        };
        let quotient = match &self.quotient {
            Some(g) => Some(g.action(comps.iter().map(|c| c.piece.cell.body.polytope.clone()).collect())?),
            None => None,
        };
        Generator::new(comps, quotient)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub coeff: Lit,
    pub generator: GeneratorDoc,
}

/// A chain or cochain file. Cochains also name their target, which fixes
/// the grading when there are no terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDoc {
    pub schema: String,
    #[serde(default = "ring_q")]
    pub ring: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<TargetDoc>,
    pub terms: Vec<TermDoc>,
}

fn ring_q() -> String {
    "Q".into()
}

pub fn ring(s: &str) -> Result<Ring> {
    match s {
        "Q" => Ok(Ring::Q),
        "Z" => Ok(Ring::Z),
        _ => Err(Error::Schema(format!("ring must be \"Q\" or \"Z\", got {s:?}"))),
    }
}

impl ChainDoc {
    pub fn generators(&self) -> Result<Vec<(Rational, Generator)>> {
        self.terms.iter().map(|t| Ok((t.coeff.value()?, t.generator.read()?))).collect()
    }

    /// Reads the chain, over `over` when given and the file's ring otherwise.
    pub fn chain(&self, over: Option<Ring>) -> Result<Chain> {
        let r = match over {
            Some(r) => r,
            None => ring(&self.ring)?,
        };
        Chain::from_generators(r, &self.generators()?)
    }

    pub fn cochain(&self) -> Result<Cochain> {
        let y = self.target.as_ref().ok_or_else(|| Error::Schema("a cochain needs a \"target\"".into()))?.read()?;
        Cochain::new(y, self.chain(Some(Ring::Q))?)
    }

    pub fn of_chain(c: &Chain) -> ChainDoc {
        let terms = c
            .terms
            .iter()
            .map(|(k, v)| TermDoc {
                coeff: Lit::of(v),
                generator: GeneratorDoc {
                    component: Some(ComponentDoc::of(&k.component())),
                    components: None,
                    quotient: None,
                    canonical: true,
                },
            })
            .collect();
        ChainDoc { schema: SCHEMA.into(), ring: c.ring.to_string(), target: None, terms }
    }

    pub fn of_cochain(d: &Cochain) -> ChainDoc {
        ChainDoc { target: Some(TargetDoc::of(&d.target)), ..ChainDoc::of_chain(&d.chain) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexTermDoc {
    pub coeff: Lit,
    /// Images of the vertices `e_0, …, e_k`.
    pub simplex: Vec<Vec<Lit>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularDoc {
    pub schema: String,
    pub target: TargetDoc,
    pub terms: Vec<SimplexTermDoc>,
}

impl SingularDoc {
    pub fn read(&self) -> Result<SingularChain> {
        let y = self.target.read()?;
        self.terms
            .iter()
            .map(|t| {
                let vs = t.simplex.iter().map(|v| vector(v)).collect::<Result<Vec<_>>>()?;
                Ok((t.coeff.value()?, SingularSimplex::new(y.clone(), vs)?))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetMapDoc {
    pub schema: String,
    pub source: TargetDoc,
    pub target: TargetDoc,
    pub matrix: Vec<Vec<Lit>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<Vec<Lit>>,
}

impl TargetMapDoc {
    pub fn read(&self) -> Result<TargetMap> {
        let (x, y) = (self.source.read()?, self.target.read()?);
        let c = match &self.offset {
            Some(c) => vector(c)?,
            None => vec![rational::zero(); y.dim()],
        };
        TargetMap::new(x, y, matrix(&self.matrix)?, c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingDoc {
    /// A component and the listed vertices of one of its facets.
    pub a: (usize, Vec<usize>),
    /// The vertices the listed vertices of `a` go to, in the same order.
    pub b: (usize, Vec<usize>),
}

/// A bordism (`"bordism"`) or cobordism (`"cobordism"`) class: components with
/// maps and facet identifications.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub kind: String,
    pub components: Vec<ComponentDoc>,
    #[serde(default)]
    pub gluings: Vec<GluingDoc>,
}

impl ClassDoc {
    pub fn read(&self) -> Result<BordismClass> {
        let kind = match self.kind.as_str() {
            "bordism" => Kind::Bordism,
            "cobordism" => Kind::Cobordism,
            k => return Err(Error::Schema(format!("class kind must be \"bordism\" or \"cobordism\", got {k:?}"))),
        };
        let mut comps = Vec::new();
        let mut orders = Vec::new();
        for c in &self.components {
            let (mc, order) = c.mapped()?;
            comps.push(mc);
            orders.push(order);
        }
        let mut gluings = Vec::new();
        for g in &self.gluings {
            let (ia, ib) = (g.a.0, g.b.0);
            if ia >= comps.len() || ib >= comps.len() {
                return Err(Error::Schema("gluing names a missing component".into()));
            }
            if g.a.1.len() != g.b.1.len() {
                return Err(Error::Schema("glued vertex lists differ in length".into()));
            }
            let idx = |i: usize, v: usize| {
                orders[i].get(v).copied().ok_or_else(|| Error::Schema(format!("vertex {v} of component {i} out of range")))
            };
            let va = g.a.1.iter().map(|&v| idx(ia, v)).collect::<Result<Vec<_>>>()?;
            let vb = g.b.1.iter().map(|&v| idx(ib, v)).collect::<Result<Vec<_>>>()?;
            let facet = |i: usize, vs: &[usize]| {
                let mut s = vs.to_vec();
                s.sort();
                let p = &comps[i].cell.body.polytope;
                match p.lattice().index_of(&s) {
                    Some(f) if p.lattice().face(f).dim + 1 == p.dim() => Ok(f),
                    _ => Err(Error::NotAFace(format!("vertices {vs:?} of component {i} do not span a facet"))),
                }
            };
            let fa = facet(ia, &va)?;
            let fb = facet(ib, &vb)?;
            let fverts = &comps[ia].cell.body.polytope.lattice().face(fa).vertices;
            let image = fverts.iter().map(|v| vb[va.iter().position(|w| w == v).expect("facet vertex listed")]).collect();
            gluings.push(Gluing { a: (ia, fa), b: (ib, fb), image });
        }
        BordismClass::new(kind, comps, gluings)
    }

    pub fn of(b: &BordismClass) -> ClassDoc {
        let gluings = b
            .gluings
            .iter()
            .map(|g| GluingDoc { a: (g.a.0, b.facet_vertices(g.a).to_vec()), b: (g.b.0, g.image.clone()) })
            .collect();
        ClassDoc {
            schema: None,
            kind: match b.kind {
                Kind::Bordism => "bordism",
                Kind::Cobordism => "cobordism",
            }
            .into(),
            components: b.components.iter().map(ComponentDoc::of_cell).collect(),
            gluings,
        }
    }
}

/// Generators and relation spaces for `kb present`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentDoc {
    pub schema: String,
    #[serde(default = "ring_z")]
    pub ring: String,
    pub generators: Vec<ClassDoc>,
    #[serde(default)]
    pub relations: Vec<ClassDoc>,
}

fn ring_z() -> String {
    "Z".into()
}

/// Two classes for `kb cup`: a cup product of cobordism classes, or a cap
/// product when the first is a bordism class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDoc {
    pub schema: String,
    pub a: ClassDoc,
    pub b: ClassDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoDoc {
    /// Character values in the element order of the subgroup.
    pub positive: Vec<Lit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub negative: Option<Vec<Lit>>,
}

/// A one-component class with a group acting on its polytope, a subgroup
/// type and a normal representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrataDoc {
    pub schema: String,
    pub class: ClassDoc,
    pub group: GroupDoc,
    pub subgroup: GroupDoc,
    pub rho: RhoDoc,
}

impl StrataDoc {
    pub fn read(&self) -> Result<(BordismClass, GroupAction, FiniteGroup, VirtualRep)> {
        let b = self.class.read()?;
        let spaces = b.components.iter().map(|c| c.cell.body.polytope.clone()).collect();
        let action = self.group.action(spaces)?;
        let sub = self.subgroup.group()?;
        let pos = vector(&self.rho.positive)?;
        let neg = match &self.rho.negative {
            Some(n) => vector(n)?,
            None => vec![rational::zero(); sub.order()],
        };
        let rho = VirtualRep::new(sub.clone(), pos, neg)?;
        Ok((b, action, sub, rho))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{face_complex, ChainComplex};

    const TRIANGLE: &str = r#"{
        "schema": "corner-calculus/1",
        "ring": "Q",
        "terms": [{"coeff": "1/2", "generator": {
            "polytope": {"ambient_dim": 2, "vertices": [["0","0"],["1","0"],["0","1"]]},
            "map": {"target": {"kind": "point"}}
        }}]
    }"#;

    #[test]
    fn chains_round_trip() {
        let doc: ChainDoc = from_str(TRIANGLE).unwrap();
        let c = doc.chain(None).unwrap();
        assert_eq!(c.len(), 1);
        let back: ChainDoc = from_str(&to_string(&ChainDoc::of_chain(&c))).unwrap();
        assert_eq!(back.chain(None).unwrap(), c);
        let b = c.boundary().unwrap();
        assert_eq!(b.len(), 3);
        let faces: Vec<Component> = c.components().iter().flat_map(|(_, x)| face_complex(x)).collect();
        let cx = ChainComplex::new(&faces).unwrap();
        assert_eq!(cx.ranks(), vec![3, 3, 1]);
        assert_eq!(cx.betti(), vec![1, 0, 0]);
    }

    #[test]
    fn schema_errors() {
        let bad = TRIANGLE.replace("1/2", "1/0");
        let doc: ChainDoc = from_str(&bad).unwrap();
        assert!(matches!(doc.chain(None), Err(Error::Schema(_))));
        assert!(matches!(from_str::<ChainDoc>("{\"terms\": []}"), Err(Error::Schema(_))));
        assert!(matches!(from_str::<ChainDoc>("[1"), Err(Error::Schema(_))));
        let old = TRIANGLE.replace("corner-calculus/1", "corner-calculus/0");
        assert!(matches!(from_str::<ChainDoc>(&old), Err(Error::Schema(_))));
    }

    #[test]
    fn explicit_tags_follow_listed_vertices() {
        let doc = r#"{"schema": "corner-calculus/1", "terms": [{"coeff": 1, "generator": {
            "polytope": {"ambient_dim": 1, "vertices": [["1"],["0"]]},
            "map": {"target": {"kind": "euclid", "dim": 1}, "matrix": [["1"]]},
            "tag": [{"face": [0], "label": [7]}, {"face": [1], "label": [3]}, {"face": [0, 1], "label": [1]}]
        }}]}"#;
        let c = from_str::<ChainDoc>(doc).unwrap().chain(None).unwrap();
        let b = c.boundary().unwrap();
        let labels: Vec<(String, Label)> = b
            .terms
            .iter()
            .map(|(k, v)| (rational::format(v), k.component().tag.labels[0].clone()))
            .collect();
        assert_eq!(labels.len(), 2);
        assert!(labels.contains(&("1".into(), vec![7])));
        assert!(labels.contains(&("-1".into(), vec![3])));
    }

    #[test]
    fn classes_and_quotients() {
        let circle = r#"{"schema": "corner-calculus/1", "kind": "bordism",
            "components": [{"polytope": {"ambient_dim": 1, "vertices": [["0"],["1"]]}, "map": {"target": {"kind": "point"}}}],
            "gluings": [{"a": [0, [1]], "b": [0, [0]]}]}"#;
        let b = from_str::<ClassDoc>(circle).unwrap().read().unwrap();
        assert!(b.check_closed().unwrap().pass);
        let again = ClassDoc::of(&b).read().unwrap();
        assert_eq!(again.gluings, b.gluings);

        let swap = r#"{"schema": "corner-calculus/1", "terms": [{"coeff": 1, "generator": {
            "components": [
                {"polytope": {"ambient_dim": 1, "vertices": [["0"],["1"]]}, "map": {"target": {"kind": "point"}}},
                {"polytope": {"ambient_dim": 1, "vertices": [["2"],["3"]]}, "map": {"target": {"kind": "point"}}}],
            "quotient": {"name": "Z2", "action": {
                "r0": [{"target": 0, "matrix": [["1"]]}, {"target": 1, "matrix": [["1"]]}],
                "r1": [{"target": 1, "matrix": [["1"]], "offset": ["2"]}, {"target": 0, "matrix": [["1"]], "offset": ["-2"]}]}}
        }}]}"#;
        let c = from_str::<ChainDoc>(swap).unwrap().chain(None).unwrap();
        // both halves land on the same canonical generator
        assert_eq!(c.terms.values().cloned().collect::<Vec<_>>(), vec![rational::int(1)]);
        let z = from_str::<ChainDoc>(swap).unwrap().chain(Some(Ring::Z));
        assert!(matches!(z, Err(Error::RequiresRationals(_))));
    }
}
