//! Named identity suites: seeded random instances, exact checks, and reports
//! that are identical for identical options.

use crate::bordism::{self, BordismClass};
use crate::chains::{
    check_chain_map, face_complex, verify_dd_zero, Chain, ChainComplex, Component, Generator, Ring, SingularSimplex, Tag,
};
use crate::error::{Error, Result};
use crate::geometry::{OrientedPolytope, Polytope, Sign};
use crate::maps::{
    check_associativity, check_boundary_of_fibre_product, check_interchange, check_swap_sign, AffineMap, Cell, Check,
    MappedCell, Target, TargetMap,
};
use crate::orbifold::{iota_check, orbifold_stratum, strata_suite, FiniteGroup, GroupAction, VirtualRep};
use crate::products::{check_cap, check_dga, check_projection_formula, Named};
use crate::random::{Caps, Sampler};
use crate::rational::{frac, int, Rational};
use rayon::prelude::*;
use serde::Serialize;

pub const SCHEMA: &str = "corner-calculus/1";

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub seed: u64,
    pub count: usize,
    pub caps: Caps,
    pub jobs: usize,
}

impl Default for Options {
    fn default() -> Options {
        Options { seed: 0, count: 100, caps: Caps::default(), jobs: 1 }
    }
}

/// Tally of one named identity over all instances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    /// The first few failures, with instance numbers.
    pub witnesses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub suite: String,
    pub seed: u64,
    pub instances: usize,
    pub checks: Vec<Outcome>,
    pub notes: Vec<String>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn markdown(&self) -> String {
        let mut s = format!("# {}\n\nseed {}, {} instances\n\n| identity | passed | failed |\n|---|---|---|\n", self.suite, self.seed, self.instances);
        for c in &self.checks {
            s += &format!("| {} | {} | {} |\n", c.name, c.passed, c.failed);
        }
        for c in &self.checks {
            for w in &c.witnesses {
                s += &format!("\n- {}: {}", c.name, w);
            }
        }
        for n in &self.notes {
            s += &format!("\n- {n}");
        }
        s += &format!("\n\n**{}**\n", if self.pass { "PASS" } else { "FAIL" });
        s
    }
}

const MAX_WITNESSES: usize = 3;

fn tally(suite: &str, opts: &Options, results: Vec<Result<Vec<Named>>>, notes: Vec<String>) -> SuiteReport {
    let mut checks: Vec<Outcome> = Vec::new();
    let instances = results.len();
    for (i, r) in results.into_iter().enumerate() {
        let named = r.unwrap_or_else(|e| vec![("instance completes".to_string(), Check::fail(e.to_string()))]);
        for (name, check) in named {
            let o = match checks.iter_mut().find(|o| o.name == name) {
                Some(o) => o,
                None => {
                    checks.push(Outcome { name: name.clone(), passed: 0, failed: 0, witnesses: Vec::new() });
                    checks.last_mut().expect("just pushed")
                }
            };
            if check.pass {
                o.passed += 1;
            } else {
                o.failed += 1;
                if o.witnesses.len() < MAX_WITNESSES {
                    o.witnesses.push(format!("instance {i}: {}", check.witness.unwrap_or_default()));
                }
            }
        }
    }
    let pass = checks.iter().all(|c| c.failed == 0) && !checks.is_empty();
    SuiteReport { schema: SCHEMA, suite: suite.to_string(), seed: opts.seed, instances, checks, notes, pass }
}

fn run<F>(opts: &Options, f: F) -> Vec<Result<Vec<Named>>>
where
    F: Fn(usize) -> Result<Vec<Named>> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.jobs.max(1)).build().expect("thread pool");
    pool.install(|| (0..opts.count).into_par_iter().map(&f).collect())
}

const ATTEMPTS: usize = 64;

/// Draws instance `i` afresh until it avoids non-transverse coincidences.
fn sample<T>(opts: &Options, salt: u64, i: usize, mut f: impl FnMut(&mut Sampler) -> Result<T>) -> Result<T> {
    for attempt in 0..ATTEMPTS {
        let mut s = Sampler::for_instance(opts.seed ^ salt, i * ATTEMPTS + attempt, opts.caps);
        match f(&mut s) {
            Err(Error::NotTransverse(_)) => continue,
            r => return r,
        }
    }
    Err(Error::Undecided(format!("no transverse sample in {ATTEMPTS} draws")))
}

fn named(name: &str, check: Check) -> Named {
    (name.to_string(), check)
}

fn truth(pass: bool, witness: impl FnOnce() -> String) -> Check {
    if pass {
        Check::ok()
    } else {
        Check::fail(witness())
    }
}

/// `∂∘∂ = 0` on random chains, with every corner paired against its image
/// under `σ`.
pub fn dd_zero(opts: &Options) -> SuiteReport {
    let targets = [Target::point(), Target::euclid(1), Target::torus(1), Target::euclid(2), Target::torus(2)];
    let results = run(opts, |i| {
        sample(opts, 1, i, |s| {
            let y = targets[s.below(targets.len())].clone();
            let c = s.chain(&y, 20, opts.caps.max_dim)?;
            let r = verify_dd_zero(&c, None)?;
            Ok(vec![
                named("∂∘∂ = 0 after canonicalization", truth(r.dd_zero, || "∂∂c is nonzero".into())),
                named("corners cancel in pairs (p,B1,B2) ↔ (p,B2,B1) under σ", truth(r.pass, || r.witness.clone().unwrap_or_default())),
            ])
        })
    });
    tally("dd-zero", opts, results, Vec::new())
}

fn pair(s: &mut Sampler) -> (MappedCell, MappedCell) {
    let y = s.small_target();
    (s.any_cell(&y, 2), s.any_cell(&y, 2))
}

/// Boundary of a fibre product with the sign `(−1)^{dim X1 + dim Y}`.
pub fn fibre_boundary(opts: &Options) -> SuiteReport {
    let results = run(opts, |i| {
        sample(opts, 2, i, |s| {
            let (a, b) = pair(s);
            Ok(vec![named(
                "∂(X1 ×_Y X2) = ∂X1 ×_Y X2 ⨿ (−1)^{dim X1 + dim Y} X1 ×_Y ∂X2",
                check_boundary_of_fibre_product(&a, &b)?,
            )])
        })
    });
    tally("fibre-boundary", opts, results, Vec::new())
}

pub fn swap(opts: &Options) -> SuiteReport {
    let results = run(opts, |i| {
        sample(opts, 3, i, |s| {
            let (a, b) = pair(s);
            Ok(vec![named("X1 ×_Y X2 = (−1)^{(dim X1 − dim Y)(dim X2 − dim Y)} X2 ×_Y X1", check_swap_sign(&a, &b)?)])
        })
    });
    tally("swap", opts, results, Vec::new())
}

pub fn associativity(opts: &Options) -> SuiteReport {
    let results = run(opts, |i| {
        sample(opts, 4, i, |s| {
            let (y1, y2) = (s.small_target(), s.small_target());
            let a1 = s.any_cell(&y1, 2);
            let a2 = s.any_cell(&y1.product(&y2), 2);
            let a3 = s.any_cell(&y2, 2);
            Ok(vec![named("(X1 ×_Y1 X2) ×_Y2 X3 = X1 ×_Y1 (X2 ×_Y2 X3)", check_associativity(&a1, &a2, &a3)?)])
        })
    });
    tally("associativity", opts, results, Vec::new())
}

pub fn interchange(opts: &Options) -> SuiteReport {
    let results = run(opts, |i| {
        sample(opts, 5, i, |s| {
            let (y1, y2) = (s.small_target(), s.small_target());
            let a1 = s.any_cell(&y1.product(&y2), 2);
            let a2 = s.any_cell(&y1, 2);
            let a3 = s.any_cell(&y2, 2);
            Ok(vec![named(
                "X1 ×_{Y1×Y2} (X2 × X3) = (−1)^{dim Y2 (dim Y1 + dim X2)} (X1 ×_Y1 X2) ×_Y2 X3",
                check_interchange(&a1, &a2, &a3)?,
            )])
        })
    });
    tally("interchange", opts, results, Vec::new())
}

fn torus_of(i: usize) -> Target {
    Target::torus(1 + i % 2)
}

/// Graded commutativity, Leibniz rule, associativity and unit laws of the cup
/// product over tori.
pub fn dga(opts: &Options) -> SuiteReport {
    let results = run(opts, |i| {
        sample(opts, 6, i, |s| {
            let y = torus_of(i);
            let co = |s: &mut Sampler| {
                let pdim = s.below(2);
                s.cochain(&y, 2, pdim)
            };
            let (g, d, e) = (co(s)?, co(s)?, co(s)?);
            check_dga(&g, &d, &e)
        })
    });
    tally("dga", opts, results, Vec::new())
}

fn cover_map(s: &mut Sampler, m: usize) -> TargetMap {
    let y = Target::torus(m);
    let matrix: Vec<Vec<Rational>> = match (m, s.below(3)) {
        (1, k) => vec![vec![int([2, -1, 3][k])]],
        (_, 0) => vec![vec![int(1), int(1)], vec![int(0), int(1)]],
        (_, 1) => vec![vec![int(2), int(0)], vec![int(0), int(1)]],
        _ => vec![vec![int(0), int(-1)], vec![int(1), int(0)]],
    };
    let offset = (0..m).map(|_| s.rational()).collect();
    TargetMap::new(y.clone(), y, matrix, offset).expect("torus endomorphism")
}

/// Module law, Leibniz rule, identity law and projection formula for cap.
pub fn cap(opts: &Options) -> SuiteReport {
    let results = run(opts, |i| {
        sample(opts, 7, i, |s| {
            let y = torus_of(i);
            let k = s.below(3);
            let a = s.graded_chain(&y, 2, k)?;
            let p0 = s.below(2);
            let d = s.cochain(&y, 2, p0)?;
            let p1 = s.below(2);
            let e = s.cochain(&y, 2, p1)?;
            let mut out = check_cap(&a, &d, &e)?;
            let h = cover_map(s, y.dim());
            let pb = s.below(2);
            let b = s.cochain(&y, 2, pb)?;
            out.push(check_projection_formula(&a, &b, &h)?);
            Ok(out)
        })
    });
    tally("cap", opts, results, Vec::new())
}

/// `∂∘Π = Π∘∂` for the map from affine singular chains.
pub fn singular(opts: &Options) -> SuiteReport {
    let results = run(opts, |i| {
        sample(opts, 8, i, |s| {
            let n = 1 + s.below(3);
            let y = if s.coin() { Target::euclid(n) } else { Target::torus(n) };
            let c = s.singular_chain(&y, 4, 3);
            let diff = check_chain_map(&c)?;
            Ok(vec![named(
                "∂∘Π = Π∘∂ on affine singular chains",
                truth(diff.is_none(), || format!("difference has {} generators", diff.as_ref().map_or(0, Chain::len))),
            )])
        })
    });
    tally("singular", opts, results, Vec::new())
}

/// Betti numbers of the face complexes of `Δ_0, …, Δ_3` over a point.
pub fn homology(_opts: &Options) -> SuiteReport {
    let opts = Options { count: 4, ..Options::default() };
    let mut notes = Vec::new();
    let results = (0..4)
        .map(|k| {
            let vertices = (0..=k).map(|i| (0..k).map(|j| int((i == j + 1) as i64)).collect()).collect();
            let sigma = SingularSimplex::new(Target::euclid(k), vertices)?;
            let mut top = sigma.generator();
            top.piece.map = AffineMap::constant(Target::point(), top.piece.cell.coord_len(), vec![]);
            top.tag = Tag::enumerate(&top.piece.cell.body.polytope);
            let cx = ChainComplex::new(&face_complex(&top))?;
            let betti = cx.betti();
            notes.push(format!("Δ_{k}: Betti {betti:?}"));
            let mut want = vec![0; k + 1];
            want[0] = 1;
            Ok(vec![
                named("faces of a simplex over a point have Betti (1, 0, …, 0)", truth(betti == want, || format!("{betti:?}"))),
                named("∂∘∂ = 0 on the face complex", truth(cx.dd_zero(), || "nonzero composite".into())),
            ])
        })
        .collect();
    tally("homology", &opts, results, notes)
}

fn square_point_reflection() -> Result<Generator> {
    let sq = Polytope::cuboid(&[(int(-1), int(1)), (int(-1), int(1))])?;
    let act = GroupAction::on_polytope(
        FiniteGroup::cyclic(2),
        sq.clone(),
        vec![
            (vec![vec![int(1), int(0)], vec![int(0), int(1)]], vec![int(0), int(0)]),
            (vec![vec![int(-1), int(0)], vec![int(0), int(-1)]], vec![int(0), int(0)]),
        ],
    )?;
    // label faces by their orbits
    let mut labels = vec![Vec::new(); sq.lattice().len()];
    for f in 0..sq.lattice().len() {
        let (_, g) = act.face_image(1, 0, f);
        labels[f] = vec![f.min(g) as u64 + 1];
    }
    let mc = MappedCell::new(Cell::polytope(sq), AffineMap::constant(Target::point(), 2, vec![]))?;
    Generator::new(vec![Component { piece: mc, tag: Tag { labels } }], Some(act))
}

fn swapped_intervals() -> Result<Generator> {
    let seg = |lo: i64| Polytope::cuboid(&[(int(lo), int(lo + 2))]);
    let (a, b) = (seg(-1)?, seg(3)?);
    let comp = |p: &Polytope| -> Result<Component> {
        let mc = MappedCell::new(Cell::polytope(p.clone()), AffineMap::constant(Target::point(), 1, vec![]))?;
        Ok(Component { tag: Tag::enumerate(p), piece: mc })
    };
    let em = |target: usize, shift: i64| crate::orbifold::ElementMap { target, matrix: vec![vec![int(1)]], offset: vec![int(shift)] };
    let act = GroupAction::new(FiniteGroup::cyclic(2), vec![a.clone(), b.clone()], vec![vec![em(0, 0), em(1, 0)], vec![em(1, 4), em(0, -4)]])?;
    Generator::new(vec![comp(&a)?, comp(&b)?], Some(act))
}

/// `ℤ₂` quotients: the coefficient `1/|Γ|` and `∂` commuting with
/// canonicalization.
pub fn quotient(_opts: &Options) -> SuiteReport {
    let opts = Options { count: 3, ..Options::default() };
    let mut notes = Vec::new();
    let mut results = Vec::new();
    for (name, g) in [("point reflection of [−1,1]²", square_point_reflection()), ("free swap of two copies of [−1,1]", swapped_intervals())] {
        results.push((|| -> Result<Vec<Named>> {
            let g = g?;
            let q = Chain::from_generators(Ring::Q, &[(int(1), g.clone())])?;
            let all: Vec<(Rational, Component)> = g.components.iter().map(|c| (int(1), c.clone())).collect();
            let cover = Chain::from_components(Ring::Q, &all)?;
            let coeffs: Vec<Rational> = q.terms.values().cloned().collect();
            notes.push(format!("{name}: canonical coefficients {:?}", coeffs.iter().map(crate::rational::format).collect::<Vec<_>>()));
            let half = q == cover.scale(&frac(1, 2));
            let lhs = Chain::from_generators(Ring::Q, &[(int(1), g.boundary()?)])?;
            let rhs = q.boundary()?;
            Ok(vec![
                named("[X/Γ] = 1/|Γ| [X], each cover component with coefficient exactly 1/2", truth(half, || format!("{name}: coefficients {:?}", coeffs.iter().map(crate::rational::format).collect::<Vec<_>>()))),
                named("∂ commutes with canonicalization of quotients", truth(lhs == rhs && !rhs.is_zero(), || name.to_string())),
                named("quotients need a Q-algebra", truth(matches!(Chain::from_generators(Ring::Z, &[(int(1), g)]), Err(Error::RequiresRationals(_))), || name.to_string())),
            ])
        })());
    }
    // the reflection of [−1,1] reverses orientation and gives no oriented quotient
    results.push((|| -> Result<Vec<Named>> {
        let seg = Polytope::cuboid(&[(int(-1), int(1))])?;
        let act = crate::orbifold::reflected_interval();
        let mc = MappedCell::new(Cell::new(OrientedPolytope::new(seg.clone(), Sign::Plus), 0), AffineMap::constant(Target::point(), 1, vec![]))?;
        let tag = Tag::by_dimension(&seg);
        let r = Generator::new(vec![Component { piece: mc, tag }], Some(act));
        notes.push("x ↦ −x on [−1,1] reverses orientation, so its quotient is rejected as an oriented generator".into());
        Ok(vec![named("orientation-reversing actions are rejected", truth(matches!(r, Err(Error::NotInvariant(_))), || format!("{r:?}")))])
    })());
    tally("quotient", &opts, results, notes)
}

/// `dim X^{Γ,ρ} = n − dim ρ` and finiteness of the fibres of `ι`.
pub fn strata(_opts: &Options) -> SuiteReport {
    let cases = match strata_suite() {
        Ok(c) => c,
        Err(e) => return tally("strata", &Options { count: 1, ..Options::default() }, vec![Err(e)], Vec::new()),
    };
    let opts = Options { count: cases.len(), ..Options::default() };
    let mut notes = Vec::new();
    let results = cases
        .iter()
        .map(|c| {
            let s = orbifold_stratum(&c.action, &c.sub, &c.rho)?;
            let n = c.action.spaces[0].dim() as i64;
            let dims_ok = !s.pieces.is_empty() && s.pieces.iter().all(|p| p.polytope.dim() as i64 == n - c.rho.dim());
            let r = iota_check(&c.action, &c.sub, &c.rho, &s)?;
            let cards: Vec<usize> = r.fibres.iter().map(|f| f.cardinality).collect();
            let max = cards.iter().max().copied().unwrap_or(0);
            notes.push(format!(
                "{}: n = {n}, dim ρ = {}, {} pieces of dimension {}, ι fibres over {} points with cardinalities ≤ {max} (bound {})",
                c.name,
                c.rho.dim(),
                s.pieces.len(),
                s.dim,
                cards.len(),
                r.bound
            ));
            Ok(vec![
                named("dim X^{Γ,ρ} = n − dim ρ", truth(dims_ok, || c.name.clone())),
                named("ι has finite fibres of reported cardinality", truth(r.pass, || c.name.clone())),
            ])
        })
        .collect();
    tally("strata", &opts, results, notes)
}

/// Closed classes used for tag independence.
pub fn bordism_instances() -> Result<Vec<(String, BordismClass)>> {
    let pt = |s, v: Vec<Rational>, y: &Target| bordism::point(y, s, v);
    Ok(vec![
        ("positive point".into(), pt(Sign::Plus, vec![], &Target::point())),
        ("negative point".into(), pt(Sign::Minus, vec![], &Target::point())),
        ("point in Euclid(2)".into(), pt(Sign::Plus, vec![frac(1, 2), int(3)], &Target::euclid(2))),
        ("two points in Torus(1)".into(), pt(Sign::Plus, vec![frac(1, 3)], &Target::torus(1)).union(&pt(Sign::Minus, vec![frac(2, 3)], &Target::torus(1)))),
        ("circle from two edges".into(), bordism::polygon(2)?),
        ("circle from three edges".into(), bordism::polygon(3)?),
        ("circle from five edges".into(), bordism::polygon(5)?),
        ("circle covering Torus(1) once".into(), bordism::circle_cover(2, 1)?),
        ("circle covering Torus(1) three times".into(), bordism::circle_cover(3, 3)?),
        ("reversed circle over Torus(1)".into(), bordism::circle_cover(4, -2)?.reversed()),
    ])
}

/// The presentation generated by the two oriented points modulo the interval,
/// and tag independence through cylinder boundaries.
pub fn bordism(_opts: &Options) -> SuiteReport {
    let mut notes = Vec::new();
    let mut results = Vec::new();
    results.push((|| -> Result<Vec<Named>> {
        let gens = vec![bordism::point(&Target::point(), Sign::Plus, vec![]), bordism::point(&Target::point(), Sign::Minus, vec![])];
        let p = bordism::present_group(Ring::Z, &gens, &[bordism::interval()?])?;
        notes.push(format!("[pt+], [pt−] modulo ∂[0,1]: {}", p.factors().join(" ⊕ ")));
        Ok(vec![named("⟨[pt+], [pt−] | ∂[0,1]⟩ ≅ Z", truth(p.factors() == ["Z"], || p.factors().join(" ⊕ ")))])
    })());
    match bordism_instances() {
        Ok(list) => {
            for (name, b) in list {
                results.push((|| -> Result<Vec<Named>> {
                    let c = bordism::pi_kb_kh(&b)?;
                    notes.push(format!("{name}: {} terms, cylinder witness with {} terms", c.chain.len(), c.witness.len()));
                    Ok(vec![
                        named("the image of a closed class is a cycle", truth(c.cycle, || name.clone())),
                        named("∂(Σ cylinders) = [X, G′] − [X, G]", truth(c.tag_independent, || name.clone())),
                    ])
                })());
            }
        }
        Err(e) => results.push(Err(e)),
    }
    let opts = Options { count: results.len(), ..Options::default() };
    tally("bordism", &opts, results, notes)
}

/// Malformed data rejected with the documented errors.
pub fn negative(_opts: &Options) -> SuiteReport {
    let mut notes = Vec::new();
    let mut results = Vec::new();
    results.push((|| -> Result<Vec<Named>> {
        let cube = Polytope::cuboid(&[(int(0), int(1)), (int(0), int(1)), (int(0), int(1))])?;
        let mc = MappedCell::new(Cell::polytope(cube.clone()), AffineMap::constant(Target::point(), 3, vec![]))?;
        let c = Chain::single(Ring::Q, &Component::new(mc, Tag::enumerate(&cube))?)?;
        let r = verify_dd_zero(&c, Some(5))?;
        notes.push(format!("corrupted corner sign: {}", r.witness.clone().unwrap_or_default()));
        Ok(vec![named("a corrupted corner sign is detected", truth(!r.pass && r.witness.is_some(), || "accepted".into()))])
    })());
    results.push((|| -> Result<Vec<Named>> {
        let sq = Polytope::cuboid(&[(int(0), int(1)), (int(0), int(1))])?;
        let mc = MappedCell::new(Cell::polytope(sq.clone()), AffineMap::constant(Target::point(), 2, vec![]))?;
        let mut t = Tag::enumerate(&sq);
        t.labels[1] = t.labels[0].clone();
        let r = Component::new(mc, t);
        if let Err(e) = &r {
            notes.push(format!("non-injective tag: {e}"));
        }
        Ok(vec![named("a non-injective tag is rejected", truth(matches!(r, Err(Error::NonInjectiveTag(_))), || "accepted".into()))])
    })());
    results.push((|| -> Result<Vec<Named>> {
        let act = crate::orbifold::reflected_interval();
        let mc = MappedCell::new(Cell::polytope(act.spaces[0].clone()), AffineMap::constant(Target::point(), 1, vec![]))?;
        let b = BordismClass::new(bordism::Kind::Bordism, vec![mc], Vec::new())?;
        let z2 = FiniteGroup::cyclic(2);
        let rho = VirtualRep::new(z2.clone(), vec![int(1), int(-1)], vec![int(0), int(0)])?;
        let r = bordism::strata_projection(&b, &act, &z2, &rho);
        if let Err(e) = &r {
            notes.push(format!("even order: {e}"));
        }
        Ok(vec![named("strata projection for even |Γ| is rejected", truth(matches!(r, Err(Error::EvenOrder(_))), || "accepted".into()))])
    })());
    results.push((|| -> Result<Vec<Named>> {
        let gens = vec![bordism::point(&Target::point(), Sign::Plus, vec![])];
        let r = bordism::present_group(Ring::Z, &gens, &[bordism::square()?]);
        if let Err(e) = &r {
            notes.push(format!("relation space with corners: {e}"));
        }
        Ok(vec![named("a relation space with corners is rejected", truth(matches!(r, Err(Error::HasCorners(_))), || "accepted".into()))])
    })());
    let opts = Options { count: results.len(), ..Options::default() };
    tally("negative", &opts, results, notes)
}

/// Suite names accepted by `kc check`.
pub const SUITES: [&str; 13] = [
    "dd-zero",
    "fibre-boundary",
    "swap",
    "associativity",
    "interchange",
    "dga",
    "cap",
    "singular",
    "homology",
    "quotient",
    "strata",
    "bordism",
    "negative",
];

pub fn by_name(name: &str, opts: &Options) -> Option<SuiteReport> {
    Some(match name {
        "dd-zero" => dd_zero(opts),
        "fibre-boundary" => fibre_boundary(opts),
        "swap" => swap(opts),
        "associativity" => associativity(opts),
        "interchange" => interchange(opts),
        "dga" => dga(opts),
        "cap" => cap(opts),
        "singular" => singular(opts),
        "homology" => homology(opts),
        "quotient" => quotient(opts),
        "strata" => strata(opts),
        "bordism" => bordism(opts),
        "negative" => negative(opts),
        _ => return None,
    })
}
