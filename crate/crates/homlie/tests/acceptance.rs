//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero when any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use homlie::axioms::{dg_category_suite, monoidal_suite, random_instance, varrho_suite};
use homlie::braiding::{
    build_braiding_data, certify, classical_contraction, standard_probes, t_objects,
};
use homlie::ce::{
    build_ce_algebra, build_ce_algebra_with, build_ce_module, check_d_squared, check_delta_squared,
    check_instance, CeInstance, Mutation,
};
use homlie::fixtures;
use homlie::graded::{Key, Permutation, Tensor, Variant};
use homlie::linfty::{check_jacobi, LInfinityAlgebra};
use homlie::poisson::{
    check_mc, solve_extension, weight2_kernel, Relations, ShiftedPoissonStructure,
};
use homlie::random::{GeneratorConfig, InstanceGenerator};
use homlie::repcat::{adjoint, check_representation, Representation};
use homlie::{Rational, Result};
use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ARITY_CAP: usize = 4;
const WORD_CAP: usize = 6;
const SEED: u64 = 20_240_601;

const JACOBI_LIMIT: Duration = Duration::from_secs(5);
const DG_LIMIT: Duration = Duration::from_secs(60);
const BRAIDING_LIMIT: Duration = Duration::from_secs(30);
const CE_LIMIT: Duration = Duration::from_secs(120);

const AXIOM_INSTANCES: usize = 200;
const REP_CANDIDATES: usize = 120;
const MC_FUZZ: usize = 50;
const CE_PAIRS: usize = 100;
const JACOBI_MUTATIONS: usize = 20;
const SHUFFLER_CASES: usize = 500;

struct Outcome {
    passed: bool,
    summary: String,
}

impl Outcome {
    fn new(passed: bool, summary: impl Into<String>) -> Self {
        Outcome {
            passed,
            summary: summary.into(),
        }
    }
}

fn generator(offset: u64) -> InstanceGenerator {
    InstanceGenerator::new(SEED + offset, GeneratorConfig::default()).expect("default config")
}

fn within(t: Instant, limit: Duration, notes: &mut Vec<String>) -> bool {
    let ok = t.elapsed() <= limit;
    if !ok {
        notes.push(format!("over the {} s limit", limit.as_secs()));
    }
    ok
}

// ---- 1: Jacobi

const E: usize = 0;
const F: usize = 1;
const H: usize = 2;

type Constants = [[[Rational; 3]; 3]; 3];

fn sl2_constants() -> Constants {
    let mut c: Constants = Default::default();
    let mut set = |a: usize, b: usize, g: usize, v: i64| {
        c[a][b][g] = Rational::from_int(v);
        c[b][a][g] = Rational::from_int(-v);
    };
    set(E, F, H, 1);
    set(H, E, E, 2);
    set(H, F, F, -2);
    c
}

/// `[[a,b],c] + [[b,c],a] + [[c,a],b]` for a three-dimensional Lie algebra
/// concentrated in degree 0, straight from the structure constants.
fn hand_jacobiator(c: &Constants) -> [Rational; 3] {
    let br = |x: &[Rational; 3], y: usize| -> [Rational; 3] {
        let mut out: [Rational; 3] = Default::default();
        for (k, xk) in x.iter().enumerate() {
            for g in 0..3 {
                out[g] += &(xk * &c[k][y][g]);
            }
        }
        out
    };
    let mut total: [Rational; 3] = Default::default();
    for (a, b, d) in [(E, F, H), (F, H, E), (H, E, F)] {
        for (g, v) in br(&c[a][b], d).iter().enumerate() {
            total[g] += v;
        }
    }
    total
}

fn jacobi_suite() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut ok = true;
    for alg in [
        fixtures::abelian(),
        fixtures::dgla(),
        fixtures::sl2(),
        fixtures::string_lie2(),
    ] {
        let r = check_jacobi(&alg, ARITY_CAP)?;
        if !(r.passed && r.routes_agree) {
            ok = false;
            notes.push(format!("{} fails", alg.name()));
        }
    }

    let sl2 = fixtures::sl2();
    let c = sl2_constants();
    for a in 0..3u16 {
        for b in 0..3u16 {
            let lib = sl2.eval(&[a, b]);
            for g in 0..3u16 {
                if lib.get(&[g]) != c[a as usize][b as usize][g as usize] {
                    ok = false;
                    notes.push(format!("sl2 constant ({a},{b};{g}) differs"));
                }
            }
        }
    }

    // every single-constant change on a grid of shifts, in a fixed order
    let shifts = [
        Rational::from_int(1),
        Rational::from_int(-1),
        Rational::from_int(2),
        Rational::from_int(-3),
        Rational::new(1, 2),
    ];
    let (mut breaking, mut disagreements, mut candidates) = (0, 0, 0);
    'outer: for (a, b) in [(E, F), (E, H), (F, H)] {
        for g in 0..3 {
            for s in &shifts {
                candidates += 1;
                let mut hand = c.clone();
                hand[a][b][g] += s;
                hand[b][a][g] -= s;
                let hand_breaks = hand_jacobiator(&hand).iter().any(|x| !x.is_zero());

                let mut lib = sl2.clone();
                let shift = Tensor::from_terms([(Key::from_slice(&[g as u16]), s.clone())]);
                lib.add_bracket_value(&[a as u16, b as u16], &shift)?;
                let r = check_jacobi(&lib, ARITY_CAP)?;
                if r.passed == hand_breaks || !r.routes_agree {
                    disagreements += 1;
                }
                if hand_breaks {
                    breaking += 1;
                    if breaking == JACOBI_MUTATIONS {
                        break 'outer;
                    }
                }
            }
        }
    }
    if breaking < JACOBI_MUTATIONS || disagreements > 0 {
        ok = false;
    }
    notes.push(format!(
        "{breaking} breaking mutations caught out of {candidates} tried, {disagreements} oracle disagreements"
    ));
    Ok(Outcome::new(ok, notes.join("; ")))
}

// ---- 2 and 3: dg-category and symmetric monoidal suites

fn axiom_suites() -> Result<(Outcome, Outcome)> {
    let t = Instant::now();
    let mut gen = generator(2);
    let instances = (0..AXIOM_INSTANCES)
        .map(|_| random_instance(&mut gen, ARITY_CAP))
        .collect::<Result<Vec<_>>>()?;
    let nontrivial = instances
        .iter()
        .filter(|i| [&i.f, &i.g, &i.h, &i.k].iter().all(|m| !m.is_zero()))
        .count();

    let mut dg_failures = Vec::new();
    for (n, inst) in instances.iter().enumerate() {
        let r = dg_category_suite(inst, ARITY_CAP)?;
        dg_failures.extend(failures(n, &r.verdicts));
    }
    let mut dg_notes = vec![format!(
        "{AXIOM_INSTANCES} instances ({nontrivial} with all four maps nonzero), {} failures",
        dg_failures.len()
    )];
    dg_notes.extend(dg_failures.iter().take(3).cloned());
    let dg_ok = dg_failures.is_empty() & within(t, DG_LIMIT, &mut dg_notes);

    let mut mon_failures = Vec::new();
    for (n, inst) in instances.iter().enumerate() {
        mon_failures.extend(failures(n, &monoidal_suite(inst, ARITY_CAP)?.verdicts));
        mon_failures.extend(failures(n, &varrho_suite(inst, ARITY_CAP)?.verdicts));
    }
    let mut mon_notes = vec![format!(
        "{AXIOM_INSTANCES} instances, {} failures",
        mon_failures.len()
    )];
    mon_notes.extend(mon_failures.iter().take(3).cloned());
    Ok((
        Outcome::new(dg_ok, dg_notes.join("; ")),
        Outcome::new(mon_failures.is_empty(), mon_notes.join("; ")),
    ))
}

fn failures(n: usize, verdicts: &[homlie::report::Verdict]) -> Vec<String> {
    verdicts
        .iter()
        .filter(|v| !v.passed)
        .map(|v| format!("instance {n}: {}", v.line()))
        .collect()
}

// ---- 4: representation predicate, two routes

fn representation_routes() -> Result<Outcome> {
    let mut gen = generator(4);
    let (mut agree, mut failing, mut broken_failing, mut broken) = (0, 0, 0, 0);
    let mut notes = Vec::new();
    for n in 0..REP_CANDIDATES {
        let ra = gen.algebra();
        let deliberate = n % 3 == 0;
        let rep: Representation = if deliberate {
            broken += 1;
            gen.broken_candidate(&ra)
        } else {
            gen.representation(&ra, ARITY_CAP)?
        };
        let r = check_representation(&ra.alg, &rep, ARITY_CAP)?;
        let verdicts_agree = r.composite_route.passed == r.single_sum_route.passed;
        if r.routes_agree && verdicts_agree {
            agree += 1;
        } else if notes.len() < 3 {
            notes.push(format!("candidate {n} ({}) routes disagree", rep.name()));
        }
        if !r.composite_route.passed {
            failing += 1;
            if deliberate {
                broken_failing += 1;
            }
        }
    }
    notes.insert(
        0,
        format!(
            "{agree}/{REP_CANDIDATES} candidates agree; {failing} fail the action property ({broken_failing} of {broken} deliberate breakages)"
        ),
    );
    let ok = agree == REP_CANDIDATES && broken_failing > 0;
    Ok(Outcome::new(ok, notes.join("; ")))
}

// ---- 5: Maurer-Cartan routes

fn mc_routes() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut ok = true;
    let expect: [(&str, (LInfinityAlgebra, ShiftedPoissonStructure), bool); 3] = [
        ("sl2 Casimir", fixtures::sl2_casimir(), true),
        ("sl2 e⊗e", fixtures::sl2_non_invariant(), false),
        ("string", fixtures::string_poisson(), true),
    ];
    for (name, (alg, p), solves) in &expect {
        let r = check_mc(alg, p, 3, ARITY_CAP)?;
        if !r.routes_agree || r.passed != *solves {
            ok = false;
            notes.push(format!(
                "{name}: routes_agree={} passed={}",
                r.routes_agree, r.passed
            ));
        }
    }

    let mut gen = generator(5);
    let bases = [fixtures::sl2(), fixtures::string_lie2()];
    let (mut non_solutions, mut tried, mut disagree) = (0, 0, 0);
    while non_solutions < MC_FUZZ && tried < 4 * MC_FUZZ {
        tried += 1;
        let alg = if tried % 3 == 0 {
            gen.algebra().alg
        } else {
            bases[tried % 2].clone()
        };
        let p = gen.poisson_candidate(&alg, 2);
        let r = check_mc(&alg, &p, 3, 3)?;
        if !r.routes_agree {
            disagree += 1;
        }
        if !r.passed {
            non_solutions += 1;
        }
    }
    notes.insert(
        0,
        format!("3 fixtures; {non_solutions} fuzzed non-solutions in {tried} candidates, {disagree} route disagreements"),
    );
    ok &= non_solutions == MC_FUZZ && disagree == 0;
    Ok(Outcome::new(ok, notes.join("; ")))
}

// ---- 6 and 7: braiding certificates

fn casimir_certificate() -> Result<Outcome> {
    let t = Instant::now();
    let (alg, sps) = fixtures::sl2_casimir();
    let ad = adjoint(&alg);
    let data = build_braiding_data(&alg, &sps)?;
    let probes = standard_probes(&data, &ad, &ad, &ad, ARITY_CAP)?;
    let cert = certify(&data, &sps, [&ad, &ad, &ad], &probes, ARITY_CAP)?;
    let oracle = t_objects(&data, &ad, &ad, ARITY_CAP)?.equality_verdict(
        &classical_contraction(&data, &ad, &ad),
        "t matches the Casimir contraction",
        ARITY_CAP,
    )?;
    let mut notes: Vec<String> = cert
        .verdicts()
        .into_iter()
        .chain([&oracle])
        .filter(|v| !v.passed)
        .map(|v| v.line())
        .collect();
    if cert.coherence_sum_nonzero {
        notes.push("coherence sum is nonzero".into());
    }
    let ok = cert.passed
        && oracle.passed
        && !cert.coherence_sum_nonzero
        && within(t, BRAIDING_LIMIT, &mut notes);
    if notes.is_empty() {
        notes.push(
            "classical oracle, gamma-equivariance, hexagons, total symmetry, coherence".into(),
        );
    }
    Ok(Outcome::new(ok, notes.join("; ")))
}

fn string_certificate() -> Result<Outcome> {
    let (alg, sps) = fixtures::string_poisson();
    let mut notes = Vec::new();

    // the recorded regime: weight-2 solutions found by linear algebra, and
    // nothing of weight 3 at these caps
    let kernel = weight2_kernel(&alg, 2, 1..=2)?;
    let extends = solve_extension(&alg, &sps, 2, Relations::WeightTwoAndThreeAtZero)?.is_some();
    let mc = check_mc(&alg, &sps, 3, 3)?;
    let data = build_braiding_data(&alg, &sps)?;
    let regime_ok = kernel.len() == 3 && extends && mc.passed && data.varpi3.is_zero();
    notes.push(format!(
        "weight-2 kernel of dimension {}, varpi3 = 0: {}",
        kernel.len(),
        data.varpi3.is_zero()
    ));

    let cap = 3;
    let ad = adjoint(&alg);
    let probes = standard_probes(&data, &ad, &ad, &ad, cap)?;
    let cert = certify(&data, &sps, [&ad, &ad, &ad], &probes, cap)?;
    let a = &cert.degree_audit;
    notes.push(format!(
        "degree audit t_UV={} t_fg-(|f|+|g|-1)={} t_UVW={}: {}",
        a.t_objects,
        a.t_morphisms - a.t_morphisms_expected,
        a.t_triple,
        if a.passed { "ok" } else { "wrong" }
    ));
    notes.push(format!(
        "coherence sum {}",
        if cert.coherence_sum_nonzero {
            "nonzero"
        } else {
            "zero"
        }
    ));
    if !cert.coherence.passed {
        notes.push(cert.coherence.line());
    }
    let ok = regime_ok && cert.coherence.passed && a.passed;
    Ok(Outcome::new(ok, notes.join("; ")))
}

// ---- 8: Chevalley-Eilenberg

fn ce_instance(
    gen: &mut InstanceGenerator,
    alg: Option<LInfinityAlgebra>,
) -> Result<(LInfinityAlgebra, CeInstance)> {
    let ra = match alg {
        Some(a) => homlie::random::RandomAlgebra {
            kind: homlie::random::AlgebraKind::Central,
            active: (0..a.space().dim() as u16).collect(),
            alg: a,
        },
        None => gen.algebra(),
    };
    let u = gen.representation(&ra, ARITY_CAP)?;
    let v = gen.representation(&ra, ARITY_CAP)?;
    let w = gen.representation(&ra, ARITY_CAP)?;
    let g = ra.alg.space();
    let f = gen.intertwiner(g, u.factors(), v.factors());
    let gm = gen.intertwiner(g, v.factors(), w.factors());
    Ok((ra.alg, CeInstance { u, v, w, f, g: gm }))
}

fn ce_suite() -> Result<Outcome> {
    let t = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;

    for alg in [fixtures::sl2(), fixtures::string_lie2()] {
        let a = build_ce_algebra(&alg, WORD_CAP);
        let v = check_delta_squared(&a);
        if !v.passed {
            ok = false;
            notes.push(format!("{}: {}", alg.name(), v.line()));
        }
    }
    for alg in [fixtures::sl2(), fixtures::string_lie2(), fixtures::dgla()] {
        let a = build_ce_algebra(&alg, WORD_CAP);
        let v = check_d_squared(&a, &build_ce_module(&a, &adjoint(&alg))?);
        if !v.passed {
            ok = false;
            notes.push(format!("{} adjoint: {}", alg.name(), v.line()));
        }
    }

    let mut gen = generator(8);
    let mut corpus = Vec::new();
    for _ in 0..CE_PAIRS {
        corpus.push(ce_instance(&mut gen, None)?);
    }
    let mut pair_failures = 0;
    for (alg, inst) in &corpus {
        let a = build_ce_algebra(alg, WORD_CAP);
        let r = check_instance(&a, inst, ARITY_CAP)?;
        if !r.passed {
            pair_failures += 1;
            if notes.len() < 4 {
                let first = r.verdicts.iter().find(|v| !v.passed).unwrap();
                notes.push(first.line());
            }
        }
    }
    ok &= pair_failures == 0;
    notes.push(format!("{CE_PAIRS} random pairs, {pair_failures} failures"));

    // each mutation must break some check on some instance
    let mut probes = vec![
        ce_instance(&mut gen, Some(fixtures::sl2()))?,
        ce_instance(&mut gen, Some(fixtures::string_lie2()))?,
        ce_instance(&mut gen, Some(fixtures::dgla()))?,
    ];
    probes.extend(corpus.iter().cloned());
    let mut missed = Vec::new();
    for m in Mutation::ALL {
        let caught = probes.iter().any(|(alg, inst)| {
            let a = build_ce_algebra_with(alg, WORD_CAP, Some(m));
            check_instance(&a, inst, ARITY_CAP).map_or(true, |r| !r.passed)
        });
        if !caught {
            missed.push(format!("{m:?}"));
        }
    }
    notes.push(format!(
        "{}/{} sign mutations caught{}",
        Mutation::ALL.len() - missed.len(),
        Mutation::ALL.len(),
        if missed.is_empty() {
            String::new()
        } else {
            format!(" (missed {})", missed.join(", "))
        }
    ));
    ok &= missed.is_empty();
    ok &= within(t, CE_LIMIT, &mut notes);
    Ok(Outcome::new(ok, notes.join("; ")))
}

// ---- 9: shuffler identities

fn shuffler_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let mut failed = [0usize; 4];
    let variant = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.5) {
            Variant::Skew
        } else {
            Variant::Sym
        }
    };
    let keyed = |rng: &mut ChaCha8Rng, lo: usize| {
        let d = rng.gen_range(1..=4);
        let degs: Vec<i32> = (0..d).map(|_| rng.gen_range(-2..=2)).collect();
        let n = rng.gen_range(lo..=6);
        let key: Vec<u16> = (0..n).map(|_| rng.gen_range(0..d as u16)).collect();
        (degs, key)
    };
    let split = |rng: &mut ChaCha8Rng, n: usize| loop {
        let cuts: Vec<usize> = (0..rng.gen_range(1..=3))
            .map(|_| rng.gen_range(0..=n))
            .collect();
        let blocks = common::blocks_from_cuts(n, &cuts);
        if blocks.len() >= 2 {
            let k = rng.gen_range(0..blocks.len() - 1);
            return (blocks, k);
        }
    };
    for _ in 0..SHUFFLER_CASES {
        let v = variant(&mut rng);
        let (degs, key) = keyed(&mut rng, 2);
        let i = rng.gen_range(1..key.len());
        failed[0] += !common::unitality(v, &degs, &key, i) as usize;

        let v = variant(&mut rng);
        let (degs, key) = keyed(&mut rng, 2);
        let (blocks, k) = split(&mut rng, key.len());
        failed[1] += !common::associativity(v, &degs, &key, &blocks, k) as usize;

        let v = variant(&mut rng);
        let (degs, key) = keyed(&mut rng, 2);
        let (blocks, k) = split(&mut rng, key.len());
        failed[2] += !common::symmetry(v, &degs, &key, &blocks, k) as usize;

        let n = rng.gen_range(0..=7);
        let degs: Vec<i32> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        let perm = |rng: &mut ChaCha8Rng| {
            let mut v: Vec<usize> = (0..n).collect();
            v.shuffle(rng);
            Permutation::new(v).unwrap()
        };
        let (p, q) = (perm(&mut rng), perm(&mut rng));
        failed[3] += !common::cocycle(&degs, &p, &q) as usize;
    }
    let ok = failed.iter().all(|&f| f == 0);
    Outcome::new(
        ok,
        format!(
            "{SHUFFLER_CASES} cases each; failures: unitality {}, associativity {}, symmetry {}, cocycle {}",
            failed[0], failed[1], failed[2], failed[3]
        ),
    )
}

fn report(index: usize, name: &str, t: Instant, outcome: Result<Outcome>) -> bool {
    let secs = t.elapsed().as_secs_f64();
    match outcome {
        Ok(o) => {
            let status = if o.passed { "PASS" } else { "FAIL" };
            println!("{status} {index} {name} ({secs:.2} s): {}", o.summary);
            o.passed
        }
        Err(e) => {
            println!("FAIL {index} {name} ({secs:.2} s): error: {e}");
            false
        }
    }
}

fn main() -> ExitCode {
    let mut all = true;

    let t = Instant::now();
    let jacobi = jacobi_suite().map(|mut o| {
        let mut notes = Vec::new();
        o.passed &= within(t, JACOBI_LIMIT, &mut notes);
        o.summary.extend(notes.iter().map(|n| format!("; {n}")));
        o
    });
    all &= report(1, "Jacobi suite", t, jacobi);

    let t = Instant::now();
    match axiom_suites() {
        Ok((dg, mon)) => {
            all &= report(2, "dg-category suite", t, Ok(dg));
            all &= report(3, "symmetric monoidal suite", t, Ok(mon));
        }
        Err(e) => {
            all &= report(2, "dg-category suite", t, Err(e.clone()));
            all &= report(3, "symmetric monoidal suite", t, Err(e));
        }
    }

    let t = Instant::now();
    all &= report(4, "representation routes", t, representation_routes());
    let t = Instant::now();
    all &= report(5, "Maurer-Cartan routes", t, mc_routes());
    let t = Instant::now();
    all &= report(
        6,
        "braiding certificate, classical",
        t,
        casimir_certificate(),
    );
    let t = Instant::now();
    all &= report(
        7,
        "braiding certificate, homotopical",
        t,
        string_certificate(),
    );
    let t = Instant::now();
    all &= report(8, "Chevalley-Eilenberg suite", t, ce_suite());
    let t = Instant::now();
    all &= report(9, "shuffler identities", t, Ok(shuffler_suite()));

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
