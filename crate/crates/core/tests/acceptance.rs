//! The eleven acceptance criteria, each run at its prescribed size and time
//! limit. Prints one PASS/FAIL line per criterion and fails if any fails.

use corner_calculus::suites::{self, Options, SuiteReport};
use std::time::{Duration, Instant};

fn opts(count: usize) -> Options {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    Options { count, jobs, ..Options::default() }
}

struct Verdict {
    pass: bool,
    detail: String,
}

fn timed(limit: Option<u64>, reports: impl FnOnce() -> Vec<SuiteReport>) -> (Vec<SuiteReport>, Duration, bool) {
    let t = Instant::now();
    let r = reports();
    let e = t.elapsed();
    let in_time = limit.map_or(true, |s| e < Duration::from_secs(s));
    (r, e, in_time)
}

fn judge(limit: Option<u64>, reports: impl FnOnce() -> Vec<SuiteReport>, extra: impl Fn(&[SuiteReport]) -> Option<String>) -> Verdict {
    let (rs, e, in_time) = timed(limit, reports);
    let mut problems: Vec<String> = Vec::new();
    for r in &rs {
        for c in r.checks.iter().filter(|c| c.failed > 0) {
            problems.push(format!("{}: {} failed ({})", r.suite, c.name, c.witnesses.join("; ")));
        }
        if r.checks.is_empty() {
            problems.push(format!("{}: no checks ran", r.suite));
        }
    }
    if !in_time {
        problems.push(format!("took {e:.2?}, limit {}s", limit.unwrap_or_default()));
    }
    if let Some(p) = extra(&rs) {
        problems.push(p);
    }
    let instances: Vec<String> = rs.iter().map(|r| format!("{} x{}", r.suite, r.instances)).collect();
    Verdict {
        pass: problems.is_empty(),
        detail: if problems.is_empty() { format!("{} in {e:.2?}", instances.join(", ")) } else { problems.join(" | ") },
    }
}

fn at_least(suite: &str, n: usize) -> impl Fn(&[SuiteReport]) -> Option<String> + '_ {
    move |rs| {
        let r = rs.iter().find(|r| r.suite == suite)?;
        (r.instances < n).then(|| format!("{suite}: only {} instances", r.instances))
    }
}

fn none(_: &[SuiteReport]) -> Option<String> {
    None
}

fn main() {
    let mut verdicts: Vec<(usize, &str, Verdict)> = Vec::new();

    verdicts.push((1, "∂∘∂ = 0 with σ-paired corners, 100 chains, < 30 s", judge(Some(30), || vec![suites::dd_zero(&opts(100))], at_least("dd-zero", 100))));
    verdicts.push((
        2,
        "boundary of a fibre product, 100 instances, < 60 s",
        judge(Some(60), || vec![suites::fibre_boundary(&opts(100))], at_least("fibre-boundary", 100)),
    ));
    verdicts.push((
        3,
        "swap sign, associativity, interchange sign, 50 each, < 60 s",
        judge(
            Some(60),
            || vec![suites::swap(&opts(50)), suites::associativity(&opts(50)), suites::interchange(&opts(50))],
            |rs| rs.iter().find(|r| r.instances < 50).map(|r| format!("{}: only {} instances", r.suite, r.instances)),
        ),
    ));
    verdicts.push((
        4,
        "cup product algebra over Torus(1) and Torus(2), 50 triples, < 120 s",
        judge(Some(120), || vec![suites::dga(&opts(50))], at_least("dga", 50)),
    ));
    verdicts.push((5, "cap product axioms and projection formula, 50 instances", judge(None, || vec![suites::cap(&opts(50))], at_least("cap", 50))));
    verdicts.push((
        6,
        "singular chains map to chains compatibly with ∂, 50 chains, k ≤ 3",
        judge(None, || vec![suites::singular(&opts(50))], at_least("singular", 50)),
    ));
    verdicts.push((
        7,
        "faces of Δ_k, k ≤ 3, have Betti (1, 0, …), < 10 s",
        judge(Some(10), || vec![suites::homology(&opts(1))], |rs| {
            let want = ["Δ_0: Betti [1]", "Δ_1: Betti [1, 0]", "Δ_2: Betti [1, 0, 0]", "Δ_3: Betti [1, 0, 0, 0]"];
            want.iter().find(|w| !rs[0].notes.iter().any(|n| n == *w)).map(|w| format!("missing {w}"))
        }),
    ));
    verdicts.push((
        8,
        "Z2 quotient: coefficient 1/2 and ∂ commuting with canonicalization",
        judge(None, || vec![suites::quotient(&opts(1))], |rs| {
            let half = rs[0].checks.iter().any(|c| c.name.contains("1/2") && c.passed > 0);
            (!half).then(|| "no coefficient-1/2 check ran".to_string())
        }),
    ));
    verdicts.push((
        9,
        "strata have dimension n − dim ρ on ≥ 10 actions, ι fibres reported",
        judge(None, || vec![suites::strata(&opts(1))], |rs| {
            let r = &rs[0];
            let fibres = r.notes.iter().filter(|n| n.contains("ι")).count();
            (r.instances < 10 || fibres < 10).then(|| format!("{} actions, {fibres} fibre reports", r.instances))
        }),
    ));
    verdicts.push((
        10,
        "[pt+], [pt−] modulo ∂[0,1] is Z; cylinder witnesses on 10 classes",
        judge(None, || vec![suites::bordism(&opts(1))], |rs| {
            let r = &rs[0];
            let witnessed = r.notes.iter().filter(|n| n.contains("cylinder witness")).count();
            let z = r.notes.iter().any(|n| n.ends_with(": Z"));
            (witnessed < 10 || !z).then(|| format!("{witnessed} witnessed classes, presentation Z: {z}"))
        }),
    ));
    verdicts.push((11, "negative controls are rejected", judge(None, || vec![suites::negative(&opts(1))], none)));

    for (n, what, v) in &verdicts {
        println!("criterion {n}: {} {what}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
    }
    let failed: Vec<usize> = verdicts.iter().filter(|(_, _, v)| !v.pass).map(|(n, _, _)| *n).collect();
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria pass", verdicts.len());
}
