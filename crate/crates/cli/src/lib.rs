//! Shared front end for `kc` (chains and cochains) and `kb` (bordism
//! classes). Commands read `corner-calculus/1` JSON files and print a JSON or
//! markdown report.
//!
//! Exit status: 0 success, 1 a checked identity failed, 2 malformed input,
//! 3 a mathematical precondition failed.

use clap::{Args, Parser, Subcommand, ValueEnum};
use corner_calculus::bordism::{self, BordismClass, Kind};
use corner_calculus::chains::{check_chain_map, face_complex, singular_to_kuranishi, Chain, ChainComplex, Component, Ring};
use corner_calculus::geometry::Sign;
use corner_calculus::io::{self, ChainDoc, ClassDoc, PairDoc, PresentDoc, SingularDoc, StrataDoc, TargetMapDoc, SCHEMA};
use corner_calculus::maps::Check;
use corner_calculus::products::{self, check_dga, check_duality, Cochain, Named};
use corner_calculus::random::Caps;
use corner_calculus::suites::{self, Options, Outcome, SuiteReport, SUITES};
use corner_calculus::{rational, Error};
use serde::Serialize;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RingArg {
    #[value(name = "Q")]
    Q,
    #[value(name = "Z")]
    Z,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Instances per randomized suite.
    #[arg(long, global = true, default_value_t = 100)]
    pub count: usize,
    /// Largest polytope dimension sampled.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_dim: usize,
    /// Largest vertex count sampled.
    #[arg(long, global = true, default_value_t = 10)]
    pub max_vertices: usize,
    /// Coefficient ring; overrides the ring named in input files.
    #[arg(long, global = true, value_enum)]
    pub ring: Option<RingArg>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for randomized suites.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

impl Common {
    fn ring(&self) -> Option<Ring> {
        self.ring.map(|r| match r {
            RingArg::Q => Ring::Q,
            RingArg::Z => Ring::Z,
        })
    }

    fn options(&self) -> Result<Options, Error> {
        if self.count == 0 || self.max_dim == 0 || self.max_vertices == 0 || self.jobs == 0 {
            return Err(Error::Schema("--count, --max-dim, --max-vertices and --jobs must be positive".into()));
        }
        if self.max_vertices <= self.max_dim {
            return Err(Error::Schema("--max-vertices must exceed --max-dim".into()));
        }
        Ok(Options {
            seed: self.seed,
            count: self.count,
            caps: Caps { max_dim: self.max_dim, max_vertices: self.max_vertices },
            jobs: self.jobs,
        })
    }
}

#[derive(Debug, Parser)]
#[command(name = "kc", about = "Chains and cochains of polytopal spaces with corners")]
pub struct KcCli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: KcCommand,
}

#[derive(Debug, Subcommand)]
pub enum KcCommand {
    /// Boundary of a chain.
    Boundary { chain: PathBuf },
    /// Canonical form of a chain.
    Canonicalize { chain: PathBuf },
    /// Betti numbers of the complex of all faces of the chain's terms.
    Homology { chain: PathBuf },
    /// Runs a named identity suite on seeded random instances.
    Check {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
    },
    /// Chain of a singular chain, with the chain-map check.
    FromSingular { singular: PathBuf },
    /// Cup product of two cochains.
    Cup { a: PathBuf, b: PathBuf },
    /// Cap product of a chain with a cochain.
    Cap { chain: PathBuf, cochain: PathBuf },
    /// Pullback of a cochain along a target map.
    Pullback { map: PathBuf, cochain: PathBuf },
    /// Graded-commutative algebra identities for three cochains.
    DgaCheck { a: PathBuf, b: PathBuf, c: PathBuf },
    /// The chain a cochain is sent to by forgetting co-gauge data.
    Duality {
        cochain: PathBuf,
        /// Reverse the orientation of the target.
        #[arg(long)]
        reverse: bool,
    },
}

#[derive(Debug, Parser)]
#[command(name = "kb", about = "Bordism and cobordism classes of polytopal spaces")]
pub struct KbCli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: KbCommand,
}

#[derive(Debug, Subcommand)]
pub enum KbCommand {
    /// Invariant factors of the group generated by closed classes modulo
    /// boundaries of relation spaces.
    Present { file: PathBuf },
    /// Whether the gluings pair off every facet.
    CheckClosed { class: PathBuf },
    /// The homology certificate of a closed bordism class.
    ToKh { class: PathBuf },
    /// Cup (two cobordism classes) or cap (bordism, cobordism) product.
    Cup { pair: PathBuf },
    /// Orbifold stratum of a one-component class under a group action.
    Strata { file: PathBuf },
}

/// What a command produced: exit status and the text for stdout or stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn done(code: i32, stdout: String) -> Run {
    Run { code, stdout, stderr: String::new() }
}

fn failed(e: &Error) -> Run {
    Run { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") }
}

fn read<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Schema(format!("cannot read {}: {e}", path.display())))?;
    io::from_str(&text)
}

/// A result document with the schema tag.
#[derive(Serialize)]
struct Tagged<'a, T: Serialize> {
    schema: &'static str,
    kind: &'a str,
    #[serde(flatten)]
    body: T,
}

fn tagged<T: Serialize>(kind: &str, body: T) -> String {
    io::to_string(&Tagged { schema: SCHEMA, kind, body })
}

fn chain_md(title: &str, c: &Chain) -> String {
    let mut s = format!("# {title}\n\nring {}, {} terms\n\n| coefficient | dim | target | vertices |\n|---|---|---|---|\n", c.ring, c.len());
    for (k, v) in &c.terms {
        let vs: Vec<String> = k.vertices.iter().map(|p| format!("({})", rational::format_vec(p).join(","))).collect();
        let circles = if k.circles > 0 { format!(" x T^{}", k.circles) } else { String::new() };
        s += &format!("| {} | {} | {} | {}{} |\n", rational::format(v), k.dim(), k.target, vs.join(" "), circles);
    }
    s
}

fn show_chain(f: Format, title: &str, c: &Chain) -> String {
    match f {
        Format::Json => io::to_string(&ChainDoc::of_chain(c)),
        Format::Md => chain_md(title, c),
    }
}

fn show_cochain(f: Format, title: &str, d: &Cochain) -> String {
    match f {
        Format::Json => io::to_string(&ChainDoc::of_cochain(d)),
        Format::Md => chain_md(&format!("{title} over {}", d.target), &d.chain),
    }
}

fn named_report(suite: &str, named: Vec<Named>) -> SuiteReport {
    let checks: Vec<Outcome> = named
        .into_iter()
        .map(|(name, c): (String, Check)| Outcome {
            name,
            passed: c.pass as usize,
            failed: (!c.pass) as usize,
            witnesses: c.witness.into_iter().collect(),
        })
        .collect();
    let pass = checks.iter().all(|c| c.failed == 0);
    SuiteReport { schema: SCHEMA, suite: suite.into(), seed: 0, instances: 1, checks, notes: Vec::new(), pass }
}

fn show_report(f: Format, r: &SuiteReport) -> Run {
    let text = match f {
        Format::Json => io::to_string(r),
        Format::Md => r.markdown(),
    };
    done(if r.pass { 0 } else { 1 }, text)
}

#[derive(Serialize)]
struct Homology {
    ranks: Vec<usize>,
    betti: Vec<usize>,
    dd_zero: bool,
}

fn homology(c: &Chain) -> Result<Homology, Error> {
    let mut faces: Vec<Component> = Vec::new();
    for (_, x) in c.components() {
        faces.extend(face_complex(&x));
    }
    let cx = ChainComplex::new(&faces)?;
    Ok(Homology { ranks: cx.ranks(), betti: cx.betti(), dd_zero: cx.dd_zero() })
}

fn run_kc(cli: &KcCli) -> Result<Run, Error> {
    let f = cli.common.format;
    let ring = cli.common.ring();
    let chain = |p: &Path| read::<ChainDoc>(p)?.chain(ring);
    let cochain = |p: &Path| read::<ChainDoc>(p)?.cochain();
    Ok(match &cli.command {
        KcCommand::Boundary { chain: p } => done(0, show_chain(f, "boundary", &chain(p)?.boundary()?)),
        KcCommand::Canonicalize { chain: p } => done(0, show_chain(f, "canonical form", &chain(p)?)),
        KcCommand::Homology { chain: p } => {
            let h = homology(&chain(p)?)?;
            let text = match f {
                Format::Json => tagged("homology", &h),
                Format::Md => {
                    let b: Vec<String> = h.betti.iter().map(|x| x.to_string()).collect();
                    let r: Vec<String> = h.ranks.iter().map(|x| x.to_string()).collect();
                    format!("# homology\n\nranks ({})\n\nBetti numbers ({})\n", r.join(", "), b.join(", "))
                }
            };
            done(if h.dd_zero { 0 } else { 1 }, text)
        }
        KcCommand::Check { suite } => {
            let opts = cli.common.options()?;
            let r = suites::by_name(suite, &opts).ok_or_else(|| Error::Schema(format!("unknown suite {suite:?}")))?;
            show_report(f, &r)
        }
        KcCommand::FromSingular { singular } => {
            let s = read::<SingularDoc>(singular)?.read()?;
            let c = singular_to_kuranishi(&s)?;
            let diff = check_chain_map(&s)?;
            let text = match f {
                Format::Json => io::to_string(&ChainDoc::of_chain(&c)),
                Format::Md => chain_md("singular chain", &c) + &format!("\nchain map: {}\n", if diff.is_none() { "PASS" } else { "FAIL" }),
            };
            done(if diff.is_none() { 0 } else { 1 }, text)
        }
        KcCommand::Cup { a, b } => done(0, show_cochain(f, "cup product", &products::cup(&cochain(a)?, &cochain(b)?)?)),
        KcCommand::Cap { chain: c, cochain: d } => {
            done(0, show_chain(f, "cap product", &products::cap(&chain(c)?, &cochain(d)?)?))
        }
        KcCommand::Pullback { map, cochain: d } => {
            let h = read::<TargetMapDoc>(map)?.read()?;
            done(0, show_cochain(f, "pullback", &products::pullback(&h, &cochain(d)?)?))
        }
        KcCommand::DgaCheck { a, b, c } => {
            let named = check_dga(&cochain(a)?, &cochain(b)?, &cochain(c)?)?;
            show_report(f, &named_report("dga-check", named))
        }
        KcCommand::Duality { cochain: d, reverse } => {
            let d = cochain(d)?;
            let named = check_duality(&d)?;
            if let Some((n, c)) = named.iter().find(|(_, c)| !c.pass) {
                return Ok(done(1, format!("{n}: {}\n", c.witness.clone().unwrap_or_default())));
            }
            let s = if *reverse { Sign::Minus } else { Sign::Plus };
            done(0, show_chain(f, "duality", &products::duality(&d, s)))
        }
    })
}

#[derive(Serialize)]
struct PresentOut {
    factors: Vec<String>,
    #[serde(flatten)]
    presentation: bordism::Presentation,
}

fn closed_md(r: &bordism::ClosedReport) -> String {
    format!(
        "# closedness\n\n{} facets, {} identified pairs\n{}\n**{}**\n",
        r.facets,
        r.pairs,
        r.witness.as_ref().map(|w| format!("\n- {w}\n")).unwrap_or_default(),
        if r.pass { "PASS" } else { "FAIL" }
    )
}

#[derive(Serialize)]
struct ProductOut {
    class: ClassDoc,
    closed: bordism::ClosedReport,
}

#[derive(Serialize)]
struct KhOut {
    #[serde(flatten)]
    summary: bordism::KhSummary,
    chain: ChainDoc,
}

#[derive(Serialize)]
struct StrataOut {
    #[serde(flatten)]
    summary: bordism::StrataSummary,
    class: ClassDoc,
}

fn class(p: &Path) -> Result<BordismClass, Error> {
    read::<ClassDoc>(p)?.read()
}

fn run_kb(cli: &KbCli) -> Result<Run, Error> {
    let f = cli.common.format;
    Ok(match &cli.command {
        KbCommand::Present { file } => {
            let doc = read::<PresentDoc>(file)?;
            let ring = match cli.common.ring() {
                Some(r) => r,
                None => io::ring(&doc.ring)?,
            };
            let gens = doc.generators.iter().map(ClassDoc::read).collect::<Result<Vec<_>, _>>()?;
            let rels = doc.relations.iter().map(ClassDoc::read).collect::<Result<Vec<_>, _>>()?;
            let p = bordism::present_group(ring, &gens, &rels)?;
            let factors = p.factors();
            let text = match f {
                Format::Json => tagged("presentation", PresentOut { factors, presentation: p }),
                Format::Md => {
                    let g = if factors.is_empty() { "0".to_string() } else { factors.join(" + ") };
                    let mut s = format!("# presentation\n\n{} generators, {} relations\n\n", p.generators, p.relations.len());
                    for r in &p.relations {
                        let cs: Vec<String> = r.coefficients.iter().map(|x| x.to_string()).collect();
                        s += &format!("- ({}) from {}\n", cs.join(", "), r.origin);
                    }
                    s + &format!("\ngroup ≅ {g}\n")
                }
            };
            done(0, text)
        }
        KbCommand::CheckClosed { class: p } => {
            let r = class(p)?.check_closed()?;
            let code = if r.pass { 0 } else { 1 };
            let text = match f {
                Format::Json => tagged("closedness", &r),
                Format::Md => closed_md(&r),
            };
            done(code, text)
        }
        KbCommand::ToKh { class: p } => {
            let b = class(p)?;
            let b = if b.kind == Kind::Bordism { b } else { return Err(Error::Precondition("expected a bordism class".into())) };
            let cert = bordism::pi_kb_kh(&b)?;
            let s = cert.summary();
            let code = if s.cycle && s.tag_independent { 0 } else { 1 };
            let text = match f {
                Format::Json => tagged("homology-class", KhOut { summary: s, chain: ChainDoc::of_chain(&cert.chain) }),
                Format::Md => {
                    chain_md("homology class", &cert.chain)
                        + &format!(
                            "\ncycle: {}\ntag independence ({} cylinder terms): {}\n",
                            pass(s.cycle),
                            s.witness_terms,
                            pass(s.tag_independent)
                        )
                }
            };
            done(code, text)
        }
        KbCommand::Cup { pair } => {
            let doc = read::<PairDoc>(pair)?;
            let (a, b) = (doc.a.read()?, doc.b.read()?);
            let prod = match a.kind {
                Kind::Bordism => bordism::cap(&a, &b)?,
                Kind::Cobordism => bordism::cup(&a, &b)?,
            };
            let closed = prod.check_closed()?;
            let code = if closed.pass { 0 } else { 1 };
            let text = match f {
                Format::Json => tagged("product", ProductOut { class: ClassDoc::of(&prod), closed }),
                Format::Md => format!("# product\n\n{} components of dimensions {:?}\n\n", prod.components.len(), prod.dims()) + &closed_md(&closed),
            };
            done(code, text)
        }
        KbCommand::Strata { file } => {
            let (b, action, sub, rho) = read::<StrataDoc>(file)?.read()?;
            let s = bordism::strata_projection(&b, &action, &sub, &rho)?;
            let summary = s.summary();
            let text = match f {
                Format::Json => tagged("stratum", StrataOut { summary, class: ClassDoc::of(&s.class) }),
                Format::Md => format!(
                    "# stratum\n\n{} pieces of dimensions {:?} with signs {:?}\n\ndimension shift {}\n\nclosed: {}\n",
                    summary.pieces,
                    summary.dims,
                    summary.signs,
                    summary.shift,
                    summary.closed
                ),
            };
            done(0, text)
        }
    })
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn parse<P: Parser>(args: impl IntoIterator<Item = OsString>) -> Result<P, Run> {
    P::try_parse_from(args).map_err(|e| {
        let code = if e.use_stderr() { 2 } else { 0 };
        let text = e.render().to_string();
        if code == 0 {
            done(0, text)
        } else {
            Run { code, stdout: String::new(), stderr: text }
        }
    })
}

pub fn kc(args: impl IntoIterator<Item = OsString>) -> Run {
    match parse::<KcCli>(args) {
        Ok(cli) => run_kc(&cli).unwrap_or_else(|e| failed(&e)),
        Err(r) => r,
    }
}

pub fn kb(args: impl IntoIterator<Item = OsString>) -> Run {
    match parse::<KbCli>(args) {
        Ok(cli) => run_kb(&cli).unwrap_or_else(|e| failed(&e)),
        Err(r) => r,
    }
}

/// Prints a run and exits with its status.
pub fn finish(r: Run) -> ! {
    use std::io::Write;
    print!("{}", r.stdout);
    eprint!("{}", r.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(r.code)
}
