//! The `qsp` command line interface.
//!
//! Exit codes: 0 when every requested check passes, 1 when a check fails,
//! 2 on usage errors, 3 on computational errors (reported as a JSON
//! diagnostic on stdout).

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qsp_core::algebra::{format_element, Element, Engine};
use qsp_core::classical::{format_classical, ClassicalEngine};
use qsp_core::maps::{diagram, lusztig_t, omega, psi, sigma, t_x, theta_q, GeneratorMorphism};
use qsp_core::qsp::{gim_presentation, GimGen, Qsp, QspParams};
use qsp_core::weyl::{enumerate_admissible, validate_admissible, AdmissiblePair};
use qsp_core::{Coefficient, Error, ParamPoly, Result};
use serde::Serialize;
use serde_json::json;

use crate::input::{load_cartan, load_gim, load_pair_file, parse_numeric_element, parse_param_list, parse_tau, parse_x};
use crate::io::{format_formal, parse_formal, to_json, AdmissibleJson, CartanJson, Diagnostic, PairJson, ParamsJson, PresentationJson};
use crate::latex::{has_top_level_sum, latex_presentation};
use crate::soundness::soundness;
use crate::suites::{default_threads, run_suites, Suite};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Latex,
}

#[derive(Parser, Debug)]
#[command(name = "qsp", version, about = "Quantum symmetric pairs: exact construction and verification")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Worker threads for verification suites.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

/// Cartan datum, pair and parameters.
#[derive(Args, Debug, Clone, Default)]
pub struct PairArgs {
    /// Builtin name (A1..A9, B2, G2, affine-sl2, A1xA1) or a JSON file.
    #[arg(long)]
    pub cartan: Option<String>,
    /// Pair file `{"cartan"?, "X", "tau"}`.
    #[arg(long)]
    pub pair: Option<String>,
    /// Comma separated labels of X.
    #[arg(long = "X", allow_hyphen_values = true)]
    pub x: Option<String>,
    /// `id`, cycles such as `(1 3)`, or the list of images.
    #[arg(long)]
    pub tau: Option<String>,
    /// Comma separated values of `c_i` (entries on X are ignored).
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
    /// Comma separated values of `s_i`.
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    /// Parameter file `{"c": {...}, "s": {...}}`.
    #[arg(long)]
    pub params: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Admissible pairs.
    Admissible {
        #[command(subcommand)]
        command: AdmissibleCommand,
    },
    /// Untwisted affinization of a finite type datum.
    Affinize {
        #[arg(long)]
        cartan: String,
        /// Also lift the pair `(X, τ)` to `(X, τ̂)` with `τ̂(0) = 0`.
        #[arg(long = "X")]
        x: Option<String>,
        #[arg(long)]
        tau: Option<String>,
    },
    /// Generalized intersection matrices.
    Gim {
        #[command(subcommand)]
        command: GimCommand,
    },
    /// Coideal subalgebras `B_{c,s}`.
    Qsp {
        #[command(subcommand)]
        command: QspCommand,
    },
    /// Applies a composition of named morphisms, e.g. `theta_q` or `omega,T1`.
    Apply {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Image at `q = 1` of an element of `U_q(g')`; letters `B<label>` stand
    /// for the generators of `B_{c,s}` (default parameters `c = 1`, `s = 0`).
    Specialize {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Bounded probe of the centralizer of `B_{c,s}`.
    CenterProbe {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value_t = 1)]
        radius: i64,
    },
    /// Bounded check of the quantum Iwasawa decomposition.
    IwasawaCheck {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value_t = 1)]
        radius: i64,
    },
    /// Seeded property checks of the algebra engine.
    Soundness {
        #[arg(long)]
        cartan: String,
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Largest weight height for the dimension check.
        #[arg(long, default_value_t = 4)]
        height: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum AdmissibleCommand {
    /// All admissible pairs, grouped into diagram automorphism orbits.
    List {
        #[arg(long)]
        cartan: String,
        #[arg(long, default_value_t = 8)]
        cap: usize,
    },
    /// Admissibility verdict with the failing conditions.
    Check {
        #[command(flatten)]
        pair: PairArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum GimCommand {
    /// The doubled Cartan matrix and its fold.
    Double {
        #[arg(long)]
        gim: String,
    },
    /// Relations of the quantized GIM algebra, evaluated in `B_c`.
    Present {
        #[arg(long)]
        gim: String,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Serre,
    Coideal,
    Presentation,
    Theta,
    Classical,
    All,
}

#[derive(Subcommand, Debug)]
pub enum QspCommand {
    /// Generators of `B_{c,s}` with their images in `U_q(g')`.
    Generators {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// The defining relations.
    Relations {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Runs verification suites.
    Verify {
        #[arg(value_enum)]
        suite: Option<SuiteArg>,
        /// Same as the suite `all`.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        pair: PairArgs,
    },
}

/// Exit code with the text written to stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Usage(m),
            e => Failure::Compute(e),
        }
    }
}

type Run = std::result::Result<(String, bool), Failure>;

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let format = cli.format;
    match dispatch(&cli) {
        Ok((out, ok)) => Outcome { code: if ok { 0 } else { 1 }, stdout: out, stderr: String::new() },
        Err(Failure::Usage(m)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(Failure::Compute(e)) => {
            let stdout = if format == Format::Json { to_json(&Diagnostic::of(&e)) } else { String::new() };
            Outcome { code: 3, stdout, stderr: format!("error: {e}\n") }
        }
    }
}

fn usage<T>(m: impl Into<String>) -> std::result::Result<T, Failure> {
    Err(Failure::Usage(m.into()))
}

fn no_latex(cli: &Cli) -> std::result::Result<(), Failure> {
    if cli.format == Format::Latex {
        return usage("LaTeX output is available for `qsp relations` only");
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Run {
    match &cli.command {
        Command::Admissible { command } => {
            no_latex(cli)?;
            admissible(cli, command)
        }
        Command::Affinize { cartan, x, tau } => {
            no_latex(cli)?;
            let d = load_cartan(cartan)?;
            let (aff, marks) = d.affinize()?;
            let lifted = if x.is_some() || tau.is_some() {
                let xs = parse_x(&d, x.as_deref().unwrap_or(""))?;
                let t = parse_tau(&d, tau.as_deref().unwrap_or("id"))?;
                let p = AdmissiblePair::build(&d, &xs, &t)?;
                if !p.is_admissible() {
                    return Err(Error::NotAdmissible(format!("{:?}", p.failures)).into());
                }
                Some(p.affinize()?.0)
            } else {
                None
            };
            let out = match cli.format {
                Format::Json => {
                    let mut v = json!({ "cartan": CartanJson::from_datum(&aff), "marks": marks });
                    if let Some(p) = &lifted {
                        v["pair"] = serde_json::to_value(PairJson::from_pair(p, false)).expect("serializable");
                    }
                    to_json(&v)
                }
                _ => {
                    let mut t = format!("labels: {}\nmatrix: {:?}\nmarks: {:?}\n", aff.labels.join(" "), aff.a, marks);
                    if let Some(p) = &lifted {
                        let xl: Vec<&str> = p.x.iter().map(|&i| aff.labels[i].as_str()).collect();
                        let tl: Vec<&str> = p.tau.perm.iter().map(|&i| aff.labels[i].as_str()).collect();
                        t.push_str(&format!("X: {}\ntau: {}\n", xl.join(","), tl.join(",")));
                    }
                    t
                }
            };
            Ok((out, true))
        }
        Command::Gim { command } => {
            no_latex(cli)?;
            gim(cli, command)
        }
        Command::Qsp { command } => qsp(cli, command),
        Command::Apply { pair, map, element } => {
            no_latex(cli)?;
            apply(cli, pair, map, element)
        }
        Command::Specialize { pair, element } => {
            no_latex(cli)?;
            specialize(cli, pair, element)
        }
        Command::CenterProbe { pair, degree, radius } => {
            no_latex(cli)?;
            let q = Qsp::new(build_params(pair, true)?)?;
            let rep = q.centralizer_probe(*degree, *radius)?;
            let l = &q.pair().datum.labels;
            let basis: Vec<String> = rep.basis.iter().map(|b| format_formal(b, l)).collect();
            let out = match cli.format {
                Format::Json => to_json(&json!({
                    "degree": rep.degree,
                    "radius": radius,
                    "candidates": rep.candidates,
                    "dimension": rep.basis.len(),
                    "only_scalars": rep.only_scalars(),
                    "basis": basis,
                })),
                _ => format!(
                    "degree {} radius {radius}: {} candidates, centralizer dimension {}\n{}\n",
                    rep.degree,
                    rep.candidates,
                    rep.basis.len(),
                    basis.join("\n")
                ),
            };
            Ok((out, true))
        }
        Command::IwasawaCheck { pair, degree, radius } => {
            no_latex(cli)?;
            let q = Qsp::new(build_params(pair, true)?)?;
            let rep = q.iwasawa_check(*degree, *radius)?;
            let pieces: Vec<_> = rep
                .pieces
                .iter()
                .map(|(mu, a, b, c)| json!({ "weight": mu, "dim": a, "expected": b, "rank": c }))
                .collect();
            let out = match cli.format {
                Format::Json => to_json(&json!({
                    "degree": rep.degree,
                    "lattice_unimodular": rep.lattice_unimodular,
                    "pieces": pieces,
                    "family": rep.family,
                    "family_rank": rep.family_rank,
                    "leading_rank": rep.leading_rank,
                    "passed": rep.passed(),
                })),
                _ => format!(
                    "degree {}: {} weights, family {} of rank {} (leading rank {}), {}\n",
                    rep.degree,
                    rep.pieces.len(),
                    rep.family,
                    rep.family_rank,
                    rep.leading_rank,
                    if rep.passed() { "passed" } else { "FAILED" }
                ),
            };
            Ok((out, rep.passed()))
        }
        Command::Soundness { cartan, count, height } => {
            no_latex(cli)?;
            let d = load_cartan(cartan)?;
            let rep = soundness(&d, *count, cli.seed, *height)?;
            let out = match cli.format {
                Format::Json => to_json(&json!({ "seed": cli.seed, "report": rep, "passed": rep.passed() })),
                _ => format!(
                    "{} samples, {} weights, {} failures\n{}",
                    rep.samples,
                    rep.weights_checked,
                    rep.failures.len(),
                    rep.failures.iter().map(|f| format!("{f}\n")).collect::<String>()
                ),
            };
            Ok((out, rep.passed()))
        }
    }
}

/// The datum, `X` and `τ` from the flags or a pair file.
fn resolve_pair(a: &PairArgs) -> std::result::Result<(qsp_core::cartan::CartanDatum, Vec<usize>, qsp_core::cartan::DiagramMap), Failure> {
    let cartan = a.cartan.as_deref().map(load_cartan).transpose()?;
    if let Some(p) = &a.pair {
        if a.x.is_some() || a.tau.is_some() {
            return usage("--pair conflicts with --X/--tau");
        }
        return Ok(load_pair_file(p)?.resolve(cartan.as_ref())?);
    }
    let Some(d) = cartan else { return usage("either --cartan or --pair is required") };
    let x = parse_x(&d, a.x.as_deref().unwrap_or(""))?;
    let tau = parse_tau(&d, a.tau.as_deref().unwrap_or("id"))?;
    Ok((d, x, tau))
}

fn build_pair(a: &PairArgs) -> std::result::Result<AdmissiblePair, Failure> {
    let (d, x, tau) = resolve_pair(a)?;
    Ok(AdmissiblePair::build(&d, &x, &tau)?)
}

/// Parameters from `--params`, `--c`, `--s`; unspecified `c` are symbolic,
/// or `1` when `numeric` is set.
fn build_params(a: &PairArgs, numeric: bool) -> std::result::Result<QspParams, Failure> {
    let pair = build_pair(a)?;
    let n = pair.rank();
    let mut p = match &a.params {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
            let pj: ParamsJson = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
            pj.to_params(&pair)?
        }
        None if numeric => QspParams::unit(&pair)?,
        None => QspParams::standard(&pair)?,
    };
    let on_x = |v: Vec<ParamPoly>| -> Vec<ParamPoly> {
        v.into_iter().enumerate().map(|(i, x)| if pair.in_x(i) { ParamPoly::zero() } else { x }).collect()
    };
    if let Some(c) = &a.c {
        p.c = on_x(parse_param_list(&pair.datum, c)?);
    }
    if let Some(s) = &a.s {
        p.s = on_x(parse_param_list(&pair.datum, s)?);
    }
    debug_assert_eq!(p.c.len(), n);
    Ok(QspParams::new(pair, p.c, p.s)?)
}

fn admissible(cli: &Cli, command: &AdmissibleCommand) -> Run {
    match command {
        AdmissibleCommand::List { cartan, cap } => {
            let d = load_cartan(cartan)?;
            let orbits = enumerate_admissible(&d, *cap)?;
            let out = match cli.format {
                Format::Json => {
                    let list: Vec<Vec<_>> = orbits
                        .iter()
                        .map(|o| {
                            o.iter()
                                .map(|p| {
                                    let mut v = serde_json::to_value(PairJson::from_pair(p, false)).expect("serializable");
                                    v["degenerate"] = json!(p.is_degenerate());
                                    v
                                })
                                .collect()
                        })
                        .collect();
                    to_json(&json!({ "cartan": CartanJson::from_datum(&d), "orbits": list }))
                }
                _ => {
                    let mut s = String::new();
                    for o in &orbits {
                        let items: Vec<String> = o.iter().map(|p| pair_text(p)).collect();
                        let _ = writeln!(s, "{}", items.join("  ~  "));
                    }
                    s
                }
            };
            Ok((out, true))
        }
        AdmissibleCommand::Check { pair } => {
            let (d, x, tau) = resolve_pair(pair)?;
            let verdict = match validate_admissible(&d, &x, &tau) {
                Ok(_) => AdmissibleJson::from_failures(&[]),
                Err(f) => AdmissibleJson::from_failures(&f),
            };
            let out = match cli.format {
                Format::Json => to_json(&verdict),
                _ => {
                    let mut s = format!("admissible: {}\n", verdict.admissible);
                    for f in &verdict.failures {
                        let _ = writeln!(s, "  condition {}: {}", f.condition, f.detail);
                    }
                    s
                }
            };
            Ok((out, verdict.admissible))
        }
    }
}

fn pair_text(p: &AdmissiblePair) -> String {
    let l = &p.datum.labels;
    let x: Vec<&str> = p.x.iter().map(|&i| l[i].as_str()).collect();
    let mut cycles = Vec::new();
    for i in 0..p.rank() {
        let t = p.tau.apply(i);
        if t > i {
            cycles.push(format!("({} {})", l[i], l[t]));
        }
    }
    let tau = if cycles.is_empty() { String::from("id") } else { cycles.concat() };
    format!("X={{{}}} tau={tau}", x.join(","))
}

#[derive(Serialize)]
struct GimRelationJson {
    group: u8,
    i: String,
    j: String,
    terms: Vec<crate::io::TermJson>,
    holds: bool,
}

fn gim_token(g: &GimGen, labels: &[String]) -> String {
    match g {
        GimGen::G(i) => format!("G{}", labels[*i]),
        GimGen::GBar(i) => format!("Gbar{}", labels[*i]),
        GimGen::L(i) => format!("L{}", labels[*i]),
        GimGen::LBar(i) => format!("Lbar{}", labels[*i]),
    }
}

fn gim(cli: &Cli, command: &GimCommand) -> Run {
    match command {
        GimCommand::Double { gim } => {
            let g = load_gim(gim)?;
            let (d, sigma, unoriented) = g.double();
            let fold: std::collections::BTreeMap<String, String> =
                (0..d.rank()).map(|i| (d.labels[i].clone(), d.labels[sigma.apply(i)].clone())).collect();
            let out = match cli.format {
                Format::Json => to_json(&json!({
                    "gim": CartanJson::from_gim(&g),
                    "double": CartanJson::from_datum(&d),
                    "sigma": fold,
                    "unoriented": unoriented,
                })),
                _ => format!("labels: {}\nmatrix: {:?}\nunoriented: {unoriented}\n", d.labels.join(" "), d.a),
            };
            Ok((out, true))
        }
        GimCommand::Present { gim, c } => {
            let g = load_gim(gim)?;
            let n = g.a.len();
            let c = match c {
                Some(s) => {
                    let labels = &g.labels;
                    s.split(',').map(|t| crate::io::parse_coeff(labels, t.trim())).collect::<Result<Vec<_>>>()?
                }
                None => vec![ParamPoly::one(); n],
            };
            let pres = gim_presentation(&g, &c)?;
            let l = &g.labels;
            let rels: Vec<GimRelationJson> = pres
                .relations
                .iter()
                .map(|r| GimRelationJson {
                    group: r.group,
                    i: l[r.i].clone(),
                    j: l[r.j].clone(),
                    terms: r
                        .poly
                        .iter()
                        .map(|(c, w)| crate::io::TermJson {
                            coeff: qsp_core::algebra::format_coeff(c, l),
                            word: w.iter().map(|x| gim_token(x, l)).collect(),
                        })
                        .collect(),
                    holds: r.holds,
                })
                .collect();
            let ok = pres.all_hold();
            let out = match cli.format {
                Format::Json => to_json(&json!({ "gim": CartanJson::from_gim(&g), "relations": rels, "all_hold": ok })),
                _ => {
                    let failing = rels.iter().filter(|r| !r.holds).count();
                    format!("{} relations, {failing} failing\n", rels.len())
                }
            };
            Ok((out, ok))
        }
    }
}

fn qsp(cli: &Cli, command: &QspCommand) -> Run {
    match command {
        QspCommand::Generators { pair } => {
            no_latex(cli)?;
            let q = Qsp::new(build_params(pair, false)?)?;
            let p = q.pair();
            let l = &p.datum.labels;
            let mut gens: Vec<(String, String)> = (0..q.rank()).map(|i| (format!("B{}", l[i]), format_element(q.b(i), l))).collect();
            for &j in &p.x {
                gens.push((format!("E{}", l[j]), format!("E{}", l[j])));
            }
            for b in p.q_theta_basis() {
                let k = Element::<ParamPoly>::k(&b);
                gens.push((format_element(&k, l), format_element(&k, l)));
            }
            let out = match cli.format {
                Format::Json => {
                    let list: Vec<_> = gens.iter().map(|(n, v)| json!({ "name": n, "value": v })).collect();
                    to_json(&json!({
                        "pair": PairJson::from_pair(p, true),
                        "params": ParamsJson::from_params(&q.params),
                        "generators": list,
                    }))
                }
                _ => gens.iter().map(|(n, v)| format!("{n} = {v}\n")).collect(),
            };
            Ok((out, true))
        }
        QspCommand::Relations { pair } => {
            let q = Qsp::new(build_params(pair, false)?)?;
            let pres = q.emit_presentation()?;
            let out = match cli.format {
                Format::Json => to_json(&PresentationJson::from_presentation(&pres)),
                Format::Latex => latex_presentation(&pres),
                Format::Text => {
                    let pj = PresentationJson::from_presentation(&pres);
                    let mut s = String::new();
                    for r in &pj.relations {
                        let terms: Vec<String> = r
                            .terms
                            .iter()
                            .map(|t| {
                                let c = if has_top_level_sum(&t.coeff) { format!("({})", t.coeff) } else { t.coeff.clone() };
                                match (t.word.is_empty(), c.as_str()) {
                                    (true, _) => c,
                                    (false, "1") => t.word.join(" "),
                                    (false, "-1") => format!("-{}", t.word.join(" ")),
                                    _ => format!("{c} {}", t.word.join(" ")),
                                }
                            })
                            .collect();
                        let _ = writeln!(s, "[{} {} {}] {} = 0", r.kind, r.i, r.j, terms.join(" + "));
                    }
                    s
                }
            };
            Ok((out, true))
        }
        QspCommand::Verify { suite, all, pair } => {
            no_latex(cli)?;
            let suites: Vec<Suite> = match (suite, all) {
                (Some(SuiteArg::All), _) | (None, true) => Suite::ALL.to_vec(),
                (Some(s), false) => vec![match s {
                    SuiteArg::Serre => Suite::Serre,
                    SuiteArg::Coideal => Suite::Coideal,
                    SuiteArg::Presentation => Suite::Presentation,
                    SuiteArg::Theta => Suite::Theta,
                    SuiteArg::Classical => Suite::Classical,
                    SuiteArg::All => unreachable!(),
                }],
                (Some(_), true) => return usage("give a suite or --all, not both"),
                (None, false) => return usage("missing suite (serre, coideal, presentation, theta, classical, all)"),
            };
            let q = Qsp::new(build_params(pair, false)?)?;
            let results = run_suites(&q, &suites, cli.threads.unwrap_or_else(default_threads))?;
            let ok = results.iter().all(|r| r.passed);
            let out = match cli.format {
                Format::Json => to_json(&json!({ "passed": ok, "cases": results })),
                _ => results
                    .iter()
                    .map(|r| {
                        let d = r.detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default();
                        format!("{} {} {}{d}\n", if r.passed { "PASS" } else { "FAIL" }, r.suite, r.case)
                    })
                    .collect(),
            };
            Ok((out, ok))
        }
    }
}

/// `omega`, `psi`, `sigma`, `tau`, `T<label>`, `Tinv<label>`, `T_X`, `theta_q`.
fn named_map(eng: &Engine, pair: &AdmissiblePair, name: &str) -> std::result::Result<GeneratorMorphism, Failure> {
    let n = pair.rank();
    let l = &pair.datum.labels;
    Ok(match name {
        "omega" => omega(n),
        "psi" => psi(n),
        "sigma" => sigma(n),
        "tau" => diagram(&pair.tau),
        "T_X" => t_x(eng, pair)?,
        "theta_q" => theta_q(eng, pair)?,
        _ => {
            let (inv, label) = match name.strip_prefix("Tinv") {
                Some(r) => (true, r),
                None => match name.strip_prefix('T') {
                    Some(r) => (false, r),
                    None => return usage(format!("unknown map `{name}`")),
                },
            };
            let Some(i) = l.iter().position(|x| x == label) else { return usage(format!("unknown map `{name}`")) };
            lusztig_t(eng, i, inv)?
        }
    })
}

fn apply(cli: &Cli, pair: &PairArgs, map: &str, element: &str) -> Run {
    let p = build_pair(pair)?;
    let eng = Engine::new(&p.datum);
    let mut m = GeneratorMorphism::identity(p.rank());
    for name in map.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        m = m.compose(&eng, &named_map(&eng, &p, name)?)?;
    }
    let x = parse_numeric_element(&eng, element)?;
    let y = m.apply(&eng, &x)?;
    let l = &p.datum.labels;
    let out = match cli.format {
        Format::Json => to_json(&json!({ "map": map, "element": format_element(&x, l), "image": format_element(&y, l) })),
        _ => format!("{}\n", format_element(&y, l)),
    };
    Ok((out, true))
}

fn specialize(cli: &Cli, pair: &PairArgs, element: &str) -> Run {
    let params = build_params(pair, true)?;
    let d = params.pair.datum.clone();
    let l = &d.labels;
    let x = if element.contains('B') {
        let q = Qsp::new(params)?;
        let formal = parse_formal(&q.formal, element)?;
        q.realize(&formal)?
    } else {
        qsp_core::algebra::parse_element(&Engine::new(&d), element)?
    };
    let ce = ClassicalEngine::new(&d);
    let y = ce.specialize(&x)?;
    let out = match cli.format {
        Format::Json => to_json(&json!({ "element": format_element(&x, l), "specialized": format_classical(&y, l) })),
        _ => format!("{}\n", format_classical(&y, l)),
    };
    Ok((out, true))
}
