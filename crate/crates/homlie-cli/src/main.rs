//! `homlie`: run the exact checks on instance files and emit reports.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on an
//! input or usage error.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use homlie::axioms::{
    dg_category_suite, monoidal_suite, random_instance, varrho_suite, AxiomReport,
};
use homlie::braiding::{
    build_braiding_data, certify, classical_contraction, standard_probes, t_objects,
};
use homlie::ce::{build_ce_algebra, build_ce_module, check_instance, CeInstance};
use homlie::io::{
    self, ce_document, intertwiner_document, load_instance, load_representation, poisson_document,
    read_document, representation_document, Document, Instance,
};
use homlie::linfty::check_jacobi;
use homlie::poisson::check_mc;
use homlie::random::{GeneratorConfig, InstanceGenerator};
use homlie::repcat::{
    adjoint, check_representation, hom_differential, juxtapose, odot, Representation,
};
use homlie::report::Verdict;
use homlie::Error;

#[derive(Parser)]
#[command(
    name = "homlie",
    version,
    about = "Exact checks for homotopy Lie algebras and their representations"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug, Serialize)]
struct Global {
    /// Highest arity computed for structure maps and intertwiners.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    arity_cap: u64,
    /// Highest word length kept in Chevalley–Eilenberg models.
    #[arg(long, short = 'W', global = true, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    word_cap: u64,
    /// Highest Poisson weight checked.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(2..))]
    weight_cap: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 1 runs everything on the calling thread.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    #[serde(skip)]
    format: Format,
    /// Generator: largest space dimension.
    #[arg(long, global = true, default_value_t = 3)]
    #[serde(skip)]
    max_dim: usize,
    /// Generator: lowest basis degree.
    #[arg(long, global = true, default_value_t = -2, allow_hyphen_values = true)]
    #[serde(skip)]
    min_degree: i32,
    /// Generator: highest basis degree.
    #[arg(long, global = true, default_value_t = 2, allow_hyphen_values = true)]
    #[serde(skip)]
    max_degree: i32,
    /// Generator: probability that an admissible constant is nonzero.
    #[arg(long, global = true, default_value_t = 0.6)]
    #[serde(skip)]
    density: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Run a check and report per-check verdicts.
    #[command(subcommand)]
    Check(Check),
    /// Combine intertwiners and write the result.
    #[command(subcommand)]
    Op(Op),
    /// Chevalley–Eilenberg presentations.
    #[command(subcommand)]
    Ce(CeCmd),
    /// Random instances.
    #[command(subcommand)]
    Gen(GenCmd),
}

#[derive(Subcommand)]
enum Check {
    /// Generalised Jacobi identity of an algebra.
    Jacobi { file: PathBuf },
    /// Action property by both routes (an algebra file checks its adjoint).
    Rep { file: PathBuf },
    /// Maurer–Cartan equation of a shifted Poisson structure.
    Poisson { file: PathBuf },
    /// dg-category and symmetric monoidal axioms on seeded random instances.
    Axioms {
        #[arg(long, default_value_t = 200)]
        instances: usize,
    },
    /// Infinitesimal 2-braiding certificate of a 2-shifted Poisson structure.
    Braiding {
        algebra: PathBuf,
        poisson: PathBuf,
        /// Three representations: `adjoint`, `trivial`, file paths or `a⊗b`.
        #[arg(long, value_delimiter = ',', default_values_t = ["adjoint".to_string(), "adjoint".to_string(), "adjoint".to_string()])]
        reps: Vec<String>,
    },
    /// CE model: δ² = 0, d² = 0 and the functor checks on random intertwiners.
    Ce {
        algebra: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = ["adjoint".to_string()])]
        reps: Vec<String>,
    },
}

#[derive(Subcommand)]
enum Op {
    /// Juxtaposition `g f` (first `f`).
    Compose {
        g: PathBuf,
        f: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Odot product `f ⊙ g`.
    Odot {
        f: PathBuf,
        g: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Hom differential `⟦ρ, f⟧`.
    Diff {
        f: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CeCmd {
    /// Write the generators, δ table and module differentials.
    Export {
        algebra: PathBuf,
        #[arg(long, value_delimiter = ',')]
        reps: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Write a random algebra, representation, intertwiner and Poisson
    /// candidate into a directory.
    Random {
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Serialize)]
struct SessionConfig {
    #[serde(flatten)]
    global: Global,
    generator: GeneratorConfig,
}

#[derive(Serialize)]
struct InputDigest {
    path: String,
    sha256: String,
}

#[derive(Serialize)]
struct Report {
    tool: String,
    command: String,
    inputs: Vec<InputDigest>,
    config: SessionConfig,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    warnings: Vec<String>,
    verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    details: serde_json::Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    written: Vec<String>,
    passed: bool,
    wall_time_ms: u128,
}

/// What a command produced before the report is assembled.
#[derive(Default)]
struct Outcome {
    files: Vec<PathBuf>,
    warnings: Vec<String>,
    verdicts: Vec<Verdict>,
    details: serde_json::Value,
    written: Vec<String>,
}

impl Outcome {
    fn absorb(&mut self, l: &io::Loaded) {
        self.files.extend(l.files.iter().cloned());
        self.warnings.extend(l.warnings.iter().cloned());
    }
}

type Run<T> = Result<T, Error>;

fn digest(path: &Path) -> Run<String> {
    let bytes = fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(Sha256::digest(&bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect())
}

impl Global {
    fn cap(&self) -> usize {
        self.arity_cap as usize
    }

    fn generator(&self) -> GeneratorConfig {
        GeneratorConfig {
            max_dim: self.max_dim,
            min_degree: self.min_degree,
            max_degree: self.max_degree,
            density: self.density,
            ..GeneratorConfig::default()
        }
    }
}

fn load(path: &Path, g: &Global, out: &mut Outcome) -> Run<Instance> {
    let l = load_instance(path, g.cap())?;
    out.absorb(&l);
    Ok(l.instance)
}

fn rep_slot(
    reference: &str,
    base: &Instance,
    g: &Global,
    out: &mut Outcome,
) -> Run<Representation> {
    let l = load_representation(reference, base.algebra(), g.cap())?;
    out.absorb(&l);
    match l.instance {
        Instance::Representation { rep, .. } => Ok(rep),
        _ => unreachable!("representation slots load representations"),
    }
}

fn to_value<T: Serialize>(t: &T) -> serde_json::Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn check_jacobi_cmd(file: &Path, g: &Global) -> Run<Outcome> {
    let mut out = Outcome::default();
    let inst = load(file, g, &mut out)?;
    let r = check_jacobi(inst.algebra(), g.cap())?;
    out.verdicts = r.per_arity.clone();
    out.verdicts
        .push(route_verdict("Schouten route agrees", r.routes_agree));
    out.details = to_value(&r);
    Ok(out)
}

fn route_verdict(name: &str, ok: bool) -> Verdict {
    if ok {
        Verdict::pass(name, None)
    } else {
        Verdict::fail(name, "the two routes disagree")
    }
}

fn check_rep_cmd(file: &Path, g: &Global) -> Run<Outcome> {
    let mut out = Outcome::default();
    let inst = load(file, g, &mut out)?;
    let rep = match &inst {
        Instance::Representation { rep, .. } => rep.clone(),
        Instance::Algebra(a) => adjoint(a),
        other => {
            return Err(Error::Schema(format!(
                "expected a representation or an algebra, found a {}",
                other.kind()
            )))
        }
    };
    let r = check_representation(inst.algebra(), &rep, g.cap())?;
    out.verdicts = vec![r.composite_route.clone(), r.single_sum_route.clone()];
    out.verdicts
        .push(route_verdict("routes agree", r.routes_agree));
    out.details = to_value(&r);
    Ok(out)
}

fn check_poisson_cmd(file: &Path, g: &Global) -> Run<Outcome> {
    let mut out = Outcome::default();
    let Instance::Poisson { alg, sps } = load(file, g, &mut out)? else {
        return Err(Error::Schema("expected a Poisson structure".into()));
    };
    let r = check_mc(&alg, &sps, g.weight_cap as usize, g.cap())?;
    out.verdicts = r.cells.iter().map(|c| c.verdict.clone()).collect();
    out.verdicts
        .push(route_verdict("Schouten route agrees", r.routes_agree));
    out.details = to_value(&r);
    Ok(out)
}

/// Fold per-instance suites into one verdict per check.
fn aggregate(reports: &[Vec<AxiomReport>]) -> Vec<Verdict> {
    let mut order: Vec<String> = Vec::new();
    let mut seen: BTreeMap<String, (usize, usize, Option<(usize, Verdict)>)> = BTreeMap::new();
    for (i, suites) in reports.iter().enumerate() {
        for v in suites.iter().flat_map(|r| &r.verdicts) {
            let e = seen.entry(v.check.clone()).or_insert_with(|| {
                order.push(v.check.clone());
                (0, 0, None)
            });
            e.0 += 1;
            if !v.passed {
                e.1 += 1;
                e.2.get_or_insert((i, v.clone()));
            }
        }
    }
    order
        .into_iter()
        .map(|name| {
            let (n, bad, first) = seen.remove(&name).expect("recorded");
            let label = format!("{name} ({n} instances)");
            match first {
                None => Verdict::pass(label, None),
                Some((i, v)) => {
                    let mut out = Verdict::from_witnesses(label, v.exact_through, v.witnesses);
                    out.notes = v.notes;
                    out.with_note(format!("failed on {bad} instances, first at instance {i}"))
                }
            }
        })
        .collect()
}

fn check_axioms_cmd(instances: usize, g: &Global) -> Run<Outcome> {
    let cap = g.cap();
    let mut gen = InstanceGenerator::new(g.seed, g.generator())?;
    let insts = (0..instances)
        .map(|_| random_instance(&mut gen, cap))
        .collect::<Run<Vec<_>>>()?;
    let reports = insts
        .par_iter()
        .map(|inst| {
            Ok(vec![
                dg_category_suite(inst, cap)?,
                monoidal_suite(inst, cap)?,
                varrho_suite(inst, cap)?,
            ])
        })
        .collect::<Run<Vec<_>>>()?;
    Ok(Outcome {
        verdicts: aggregate(&reports),
        ..Outcome::default()
    })
}

fn check_braiding_cmd(algebra: &Path, poisson: &Path, reps: &[String], g: &Global) -> Run<Outcome> {
    let mut out = Outcome::default();
    let base = load(algebra, g, &mut out)?;
    let Instance::Poisson { alg, sps } = load(poisson, g, &mut out)? else {
        return Err(Error::Schema("expected a Poisson structure".into()));
    };
    if alg.space() != base.algebra().space() {
        return Err(Error::SpaceMismatch(
            "the Poisson structure lives on a different algebra".into(),
        ));
    }
    if reps.len() != 3 {
        return Err(Error::Invalid(format!(
            "--reps takes three representations, got {}",
            reps.len()
        )));
    }
    let cap = g.cap();
    let r: Vec<Representation> = reps
        .iter()
        .map(|s| rep_slot(s, &base, g, &mut out))
        .collect::<Run<_>>()?;
    let data = build_braiding_data(&alg, &sps)?;
    let probes = standard_probes(&data, &r[0], &r[1], &r[2], cap)?;
    let cert = certify(&data, &sps, [&r[0], &r[1], &r[2]], &probes, cap)?;
    out.verdicts = cert.verdicts().into_iter().cloned().collect();
    let audit = &cert.degree_audit;
    out.verdicts.push(if audit.passed {
        Verdict::pass("degree audit", None)
    } else {
        Verdict::fail("degree audit", format!("{audit:?}"))
    });
    // ordinary actions against an arity-0 tensor: the classical formula
    let classical = alg.space().degrees().iter().all(|&d| d == 0)
        && data.varpi2.components().all(|(&i, _)| i == 1)
        && data.varpi3.is_zero()
        && r[..2]
            .iter()
            .all(|x| x.rho().components().all(|(&i, _)| i == 2));
    if classical {
        let t = t_objects(&data, &r[0], &r[1], cap)?;
        out.verdicts.push(t.equality_verdict(
            &classical_contraction(&data, &r[0], &r[1]),
            "t matches the Casimir contraction",
            cap,
        )?);
    }
    out.details = to_value(&cert);
    Ok(out)
}

fn check_ce_cmd(algebra: &Path, reps: &[String], g: &Global) -> Run<Outcome> {
    let mut out = Outcome::default();
    let base = load(algebra, g, &mut out)?;
    let alg = base.algebra().clone();
    let r: Vec<Representation> = reps
        .iter()
        .map(|s| rep_slot(s, &base, g, &mut out))
        .collect::<Run<_>>()?;
    if r.is_empty() {
        return Err(Error::Invalid(
            "at least one representation is needed".into(),
        ));
    }
    let a = build_ce_algebra(&alg, g.word_cap as usize);
    let pick = |i: usize| r[i % r.len()].clone();
    let (u, v, w) = (pick(0), pick(1), pick(2));
    let mut gen = InstanceGenerator::new(g.seed, g.generator())?;
    let sp = alg.space();
    let f = gen.intertwiner(sp, u.factors(), v.factors());
    let gm = gen.intertwiner(sp, v.factors(), w.factors());
    let report = check_instance(&a, &CeInstance { u, v, w, f, g: gm }, g.cap())?;
    out.verdicts = report.verdicts.clone();
    out.details = to_value(&report);
    Ok(out)
}

fn intertwiner_parts(
    path: &Path,
    g: &Global,
    out: &mut Outcome,
) -> Run<(homlie::io::IntertwinerDoc, Instance)> {
    let Document::Intertwiner(doc) = read_document(path)? else {
        return Err(Error::Schema(format!(
            "{}: expected an intertwiner",
            path.display()
        )));
    };
    Ok((doc, load(path, g, out)?))
}

fn emit(doc: &Document, output: &Option<PathBuf>, out: &mut Outcome) -> Run<()> {
    match output {
        Some(p) => {
            io::save(doc, p)?;
            out.written.push(p.display().to_string());
        }
        None => print!("{}", io::to_json(doc)),
    }
    Ok(())
}

fn op_cmd(op: &Op, g: &Global) -> Run<Outcome> {
    let mut out = Outcome::default();
    let cap = g.cap();
    let (doc, output) = match op {
        Op::Compose {
            g: gp,
            f: fp,
            output,
        } => {
            let (fd, fi) = intertwiner_parts(fp, g, &mut out)?;
            let (gd, gi) = intertwiner_parts(gp, g, &mut out)?;
            let (Instance::Intertwiner { map: f, .. }, Instance::Intertwiner { map: gm, .. }) =
                (fi, gi)
            else {
                unreachable!()
            };
            let h = juxtapose(&gm, &f, cap)?;
            (
                intertwiner_document(&h, &fd.algebra, &fd.source, &gd.target),
                output,
            )
        }
        Op::Odot {
            f: fp,
            g: gp,
            output,
        } => {
            let (fd, fi) = intertwiner_parts(fp, g, &mut out)?;
            let (gd, gi) = intertwiner_parts(gp, g, &mut out)?;
            let (Instance::Intertwiner { map: f, .. }, Instance::Intertwiner { map: gm, .. }) =
                (fi, gi)
            else {
                unreachable!()
            };
            let h = odot(&f, &gm, cap)?;
            (
                intertwiner_document(
                    &h,
                    &fd.algebra,
                    &format!("{}⊗{}", fd.source, gd.source),
                    &format!("{}⊗{}", fd.target, gd.target),
                ),
                output,
            )
        }
        Op::Diff { f: fp, output } => {
            let (fd, fi) = intertwiner_parts(fp, g, &mut out)?;
            let Instance::Intertwiner {
                alg,
                source,
                target,
                map,
            } = fi
            else {
                unreachable!()
            };
            let d = hom_differential(&alg, &source, &target, &map, cap)?;
            (
                intertwiner_document(&d, &fd.algebra, &fd.source, &fd.target),
                output,
            )
        }
    };
    emit(&doc, output, &mut out)?;
    Ok(out)
}

fn ce_export_cmd(
    algebra: &Path,
    reps: &[String],
    output: &Option<PathBuf>,
    g: &Global,
) -> Run<Outcome> {
    let mut out = Outcome::default();
    let base = load(algebra, g, &mut out)?;
    let a = build_ce_algebra(base.algebra(), g.word_cap as usize);
    let mut modules = Vec::new();
    for s in reps {
        let rep = rep_slot(s, &base, g, &mut out)?;
        modules.push((s.as_str(), build_ce_module(&a, &rep)?));
    }
    let refs: Vec<(&str, &homlie::ce::CEModule)> = modules.iter().map(|(n, m)| (*n, m)).collect();
    emit(&ce_document(&a, &refs), output, &mut out)?;
    Ok(out)
}

fn gen_random_cmd(dir: &Path, g: &Global) -> Run<Outcome> {
    let mut out = Outcome::default();
    fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut gen = InstanceGenerator::new(g.seed, g.generator())?;
    let ra = gen.algebra();
    let cap = g.cap();
    let mut rep = adjoint(&ra.alg);
    for _ in 0..16 {
        let r = gen.representation(&ra, cap)?;
        if r.factors().len() == 1 && !r.rho().is_zero() {
            rep = r;
            break;
        }
    }
    let f = gen.intertwiner(ra.alg.space(), rep.factors(), rep.factors());
    let sps = gen.poisson_candidate(&ra.alg, 2);
    let docs = [
        ("algebra.json", io::algebra_document(&ra.alg)),
        (
            "representation.json",
            representation_document(&rep, "algebra.json")?,
        ),
        (
            "intertwiner.json",
            intertwiner_document(
                &f,
                "algebra.json",
                "representation.json",
                "representation.json",
            ),
        ),
        ("poisson.json", poisson_document(&sps, "algebra.json")),
    ];
    for (name, doc) in docs {
        let p = dir.join(name);
        io::save(&doc, &p)?;
        out.written.push(p.display().to_string());
    }
    Ok(out)
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Check(k) => format!(
            "check {}",
            match k {
                Check::Jacobi { .. } => "jacobi",
                Check::Rep { .. } => "rep",
                Check::Poisson { .. } => "poisson",
                Check::Axioms { .. } => "axioms",
                Check::Braiding { .. } => "braiding",
                Check::Ce { .. } => "ce",
            }
        ),
        Command::Op(o) => format!(
            "op {}",
            match o {
                Op::Compose { .. } => "compose",
                Op::Odot { .. } => "odot",
                Op::Diff { .. } => "diff",
            }
        ),
        Command::Ce(_) => "ce export".into(),
        Command::Gen(_) => "gen random".into(),
    }
}

fn dispatch(c: &Command, g: &Global) -> Run<Outcome> {
    match c {
        Command::Check(Check::Jacobi { file }) => check_jacobi_cmd(file, g),
        Command::Check(Check::Rep { file }) => check_rep_cmd(file, g),
        Command::Check(Check::Poisson { file }) => check_poisson_cmd(file, g),
        Command::Check(Check::Axioms { instances }) => check_axioms_cmd(*instances, g),
        Command::Check(Check::Braiding {
            algebra,
            poisson,
            reps,
        }) => check_braiding_cmd(algebra, poisson, reps, g),
        Command::Check(Check::Ce { algebra, reps }) => check_ce_cmd(algebra, reps, g),
        Command::Op(op) => op_cmd(op, g),
        Command::Ce(CeCmd::Export {
            algebra,
            reps,
            output,
        }) => ce_export_cmd(algebra, reps, output, g),
        Command::Gen(GenCmd::Random { output }) => gen_random_cmd(output, g),
    }
}

fn render_text(r: &Report) -> String {
    let mut s = format!("{} {}\n", r.tool, r.command);
    for i in &r.inputs {
        s.push_str(&format!("input {} sha256 {}\n", i.path, i.sha256));
    }
    for w in &r.warnings {
        s.push_str(&format!("warning: {w}\n"));
    }
    for v in &r.verdicts {
        s.push_str(&v.line());
        s.push('\n');
    }
    for w in &r.written {
        s.push_str(&format!("wrote {w}\n"));
    }
    s.push_str(if r.passed {
        "result: PASS\n"
    } else {
        "result: FAIL\n"
    });
    s
}

fn run(cli: Cli) -> Run<bool> {
    let g = &cli.global;
    g.generator().validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(g.jobs as usize)
        .build()
        .map_err(|e| Error::Invalid(e.to_string()))?;
    let start = Instant::now();
    let outcome = pool.install(|| dispatch(&cli.command, g))?;
    let mut seen = std::collections::BTreeSet::new();
    let inputs = outcome
        .files
        .iter()
        .filter(|p| seen.insert((*p).clone()))
        .map(|p| {
            Ok(InputDigest {
                path: p.display().to_string(),
                sha256: digest(p)?,
            })
        })
        .collect::<Run<Vec<_>>>()?;
    let passed = outcome.verdicts.iter().all(|v| v.passed);
    let report = Report {
        tool: format!("homlie {}", env!("CARGO_PKG_VERSION")),
        command: command_name(&cli.command),
        inputs,
        config: SessionConfig {
            global: g.clone(),
            generator: g.generator(),
        },
        warnings: outcome.warnings,
        verdicts: outcome.verdicts,
        details: outcome.details,
        written: outcome.written,
        passed,
        wall_time_ms: start.elapsed().as_millis(),
    };
    let writes_document = matches!(cli.command, Command::Op(_) | Command::Ce(_));
    let text = match g.format {
        Format::Text => render_text(&report),
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
            s.push('\n');
            s
        }
    };
    if writes_document && report.written.is_empty() {
        // the document went to stdout; keep the report out of its way
        eprint!("{text}");
    } else {
        print!("{text}");
    }
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
