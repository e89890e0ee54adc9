//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every comparison is exact ideal equality; the only numeric tolerances
//! are the wall-clock limits below.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command as Process, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use corecalc::cores::{
    coefficient_ideal, core_colon, core_sandwich, verify_core_integrally_closed, verify_core_power, CoreOptions,
};
use corecalc::newton::{integral_closure, is_normal, monomial_core, multiplier_ideal, MonomialIdeal};
use corecalc::poly::parse::parse_polynomial;
use corecalc::poly::verify_power_identity;
use corecalc::{Field, Ideal, Monomial, MonomialOrder, Polynomial, Ring};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Per-case limit for the closed-form cores.
const GRADED_CASE_LIMIT: Duration = Duration::from_secs(10);
/// Limit for the 25-trial sandwich.
const SANDWICH_LIMIT: Duration = Duration::from_secs(60);
/// Limit for the six power identities together.
const IDENTITY_LIMIT: Duration = Duration::from_secs(1);
const SANDWICH_SEED: u64 = 42;
const SANDWICH_TRIALS: u32 = 25;
const INDEPENDENCE_SEEDS: [u64; 5] = [0, 1, 2, 3, 4];
const RANDOM_IDEALS: usize = 200;
const RANDOM_SEED: u64 = 2024;
const SCRIPTS: [&str; 2] = ["acceptance-plane.cc", "acceptance-space.cc"];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ring(d: usize) -> Arc<Ring> {
    Ring::standard(d, Field::Rationals).unwrap()
}

fn ideal(r: &Arc<Ring>, gens: &str) -> Ideal {
    let polys = gens
        .split(',')
        .map(|g| parse_polynomial(g, r, MonomialOrder::Grevlex).unwrap())
        .collect();
    Ideal::new(r, polys).unwrap()
}

fn maximal_power(r: &Arc<Ring>, n: u32) -> Ideal {
    Ideal::maximal(r, MonomialOrder::Grevlex).power(n).unwrap()
}

fn show(i: &Ideal) -> String {
    i.canonical_generators()
        .iter()
        .map(|g| g.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn equal(a: &Ideal, b: &Ideal, what: &str) -> Result<(), String> {
    ensure(a.equals(b).map_err(|e| e.to_string())?, || {
        format!("{what}: ({}) != ({})", show(a), show(b))
    })
}

fn err(e: corecalc::Error) -> String {
    format!("{} {e}", e.code())
}

/// Normal cofinite monomial fixtures in two and three variables.
fn normal_fixtures() -> Vec<(String, Ideal)> {
    let (r2, r3) = (ring(2), ring(3));
    vec![
        ("m [2]".into(), maximal_power(&r2, 1)),
        ("m^2 [2]".into(), maximal_power(&r2, 2)),
        ("m^3 [2]".into(), maximal_power(&r2, 3)),
        ("(x^3,xy,y^2)".into(), ideal(&r2, "x^3, x*y, y^2")),
        ("(x^2,xy,y^3)".into(), ideal(&r2, "x^2, x*y, y^3")),
        ("(x^5,xy,y^5)".into(), ideal(&r2, "x^5, x*y, y^5")),
        ("m [3]".into(), maximal_power(&r3, 1)),
        ("m^2 [3]".into(), maximal_power(&r3, 2)),
        ("(x^2,y,z)".into(), ideal(&r3, "x^2, y, z")),
        ("(x^2,xy,y^2,z)".into(), ideal(&r3, "x^2, x*y, y^2, z")),
    ]
}

/// Monomial fixtures that are not normal.
fn other_monomial_fixtures() -> Vec<(String, Ideal)> {
    let r2 = ring(2);
    vec![
        ("(x^4,x^2y,y^3)".into(), ideal(&r2, "x^4, x^2*y, y^3")),
        ("(x^2,y^3)".into(), ideal(&r2, "x^2, y^3")),
    ]
}

fn monomial(i: &Ideal) -> Result<MonomialIdeal, String> {
    MonomialIdeal::from_ideal(i).map_err(err)
}

fn adj(i: &Ideal, c: u32) -> Result<Ideal, String> {
    if c == 0 {
        return Ok(Ideal::unit(i.ring(), i.order()));
    }
    Ok(multiplier_ideal(&monomial(i)?, c).map_err(err)?.to_ideal(i.order()))
}

fn c1_graded_closed_form() -> Outcome {
    let opts = CoreOptions::default();
    let mut slowest = Duration::ZERO;
    for d in [2usize, 3] {
        let r = ring(d);
        for n in 1..=3u32 {
            let start = Instant::now();
            let res = core_colon(&maximal_power(&r, n), None, None, &opts).map_err(err)?;
            let took = start.elapsed();
            slowest = slowest.max(took);
            let predicted = maximal_power(&r, (n - 1) * d as u32 + 1);
            equal(&res.ideal, &predicted, &format!("d={d} n={n}"))?;
            ensure(took < GRADED_CASE_LIMIT, || format!("d={d} n={n} took {took:?}"))?;
            if (d, n) == (2, 2) {
                let hand = ideal(&r, "x^4, x^2*y^2, y^4")
                    .colon(&maximal_power(&r, 2))
                    .map_err(err)?;
                equal(&hand, &predicted, "(x^4,x^2y^2,y^4):m^2")?;
                equal(&res.ideal, &hand, "d=2 n=2 against the hand value")?;
            }
        }
    }
    Ok(format!(
        "6 cases equal m^((n-1)d+1); slowest {} ms",
        slowest.as_millis()
    ))
}

fn c2_reduction_independence() -> Outcome {
    let r = ring(2);
    let fixtures = [
        ("m^2", maximal_power(&r, 2)),
        ("(x^3,xy,y^2)", ideal(&r, "x^3, x*y, y^2")),
        ("(x^4,x^2y,y^3)", ideal(&r, "x^4, x^2*y, y^3")),
    ];
    let mut parts = Vec::new();
    for (name, i) in &fixtures {
        let mut first: Option<String> = None;
        let mut numbers = Vec::new();
        for seed in INDEPENDENCE_SEEDS {
            let opts = CoreOptions {
                seed,
                ..CoreOptions::default()
            };
            // each call already compares two independent reductions
            let res = core_colon(i, None, None, &opts).map_err(|e| format!("{name} seed {seed}: {}", err(e)))?;
            numbers.push(res.reduction_number().unwrap_or(0));
            let shown = show(&res.ideal);
            match &first {
                None => first = Some(shown),
                Some(f) => ensure(*f == shown, || {
                    format!("{name}: seed {seed} gave ({shown}), seed 0 gave ({f})")
                })?,
            }
        }
        parts.push(format!("{name} r={numbers:?}"));
    }
    Ok(format!("{} seeds each: {}", INDEPENDENCE_SEEDS.len(), parts.join("; ")))
}

fn c3_adjoint_agreement() -> Outcome {
    let fixtures = normal_fixtures();
    for (name, i) in &fixtures {
        let d = i.ring().dim() as u32;
        let poly = monomial_core(&monomial(i)?, Some(d), false).map_err(err)?;
        let poly_core = poly.core.to_ideal(i.order());
        let colon = core_colon(i, None, None, &CoreOptions::default()).map_err(err)?;
        let bs = i.product(&adj(i, d - 1)?).map_err(err)?;
        equal(&poly_core, &colon.ideal, &format!("{name}: adj(I^d) vs colon"))?;
        equal(&colon.ideal, &bs, &format!("{name}: colon vs I·adj(I^(d-1))"))?;
    }
    Ok(format!("{} normal fixtures in 2 and 3 variables", fixtures.len()))
}

fn c4_sandwich() -> Outcome {
    let r = ring(2);
    let opts = CoreOptions {
        seed: SANDWICH_SEED,
        trials: SANDWICH_TRIALS,
        ..CoreOptions::default()
    };
    let start = Instant::now();
    let res = core_sandwich(&maximal_power(&r, 2), None, &opts).map_err(err)?;
    let took = start.elapsed();
    let m3 = maximal_power(&r, 3);
    ensure(res.exact, || "sandwich not exact".into())?;
    let lower = res.lower_bound.as_ref().ok_or("no lower bound")?;
    let upper = res.upper_bound.as_ref().ok_or("no upper bound")?;
    equal(lower, &m3, "lower bound")?;
    equal(upper, &m3, "upper bound")?;
    equal(&res.ideal, &m3, "result")?;
    ensure(took < SANDWICH_LIMIT, || format!("took {took:?}"))?;
    Ok(format!("exact, both bounds m^3, {} ms", took.as_millis()))
}

fn c5_colon_chain() -> Outcome {
    let fixtures: Vec<_> = normal_fixtures().into_iter().chain(other_monomial_fixtures()).collect();
    for (name, i) in &fixtures {
        let d = i.ring().dim() as u32;
        for n in [d - 1, d, d + 1] {
            let lhs = adj(i, n + 1)?.colon(i).map_err(err)?;
            equal(
                &lhs,
                &adj(i, n)?,
                &format!("{name}: adj(I^{})) : I vs adj(I^{n})", n + 1),
            )?;
        }
    }
    Ok(format!("n in {{d-1, d, d+1}} on {} monomial fixtures", fixtures.len()))
}

fn c6_power_formula() -> Outcome {
    let (r2, r3) = (ring(2), ring(3));
    let fixtures = [
        ("m [2]", maximal_power(&r2, 1)),
        ("m [3]", maximal_power(&r3, 1)),
        ("(x^3,xy,y^2)", ideal(&r2, "x^3, x*y, y^2")),
    ];
    for (name, i) in &fixtures {
        for n in [2, 3] {
            let check = verify_core_power(i, None, n).map_err(err)?;
            ensure(check.holds, || {
                format!("{name} n={n}: ({}) != ({})", show(&check.lhs), show(&check.rhs))
            })?;
        }
    }
    Ok("n = 2, 3 on 3 fixtures".into())
}

fn c7_coefficient_ideal() -> Outcome {
    let r2 = ring(2);
    let normal = normal_fixtures();
    let mut all: Vec<(String, Ideal, bool)> = normal.iter().map(|(n, i)| (n.clone(), i.clone(), true)).collect();
    all.push(("(x^4,x^2y,y^3)".into(), ideal(&r2, "x^4, x^2*y, y^3"), false));
    all.push((
        "(x^3,x^2y+xy^2,y^3)".into(),
        ideal(&r2, "x^3, x^2*y + x*y^2, y^3"),
        false,
    ));
    for (name, i, is_normal_monomial) in &all {
        let res = coefficient_ideal(i, None, None, &CoreOptions::default()).map_err(err)?;
        let a = &res.ideal;
        let core = &res.core.ideal;
        let ia = i.product(a).map_err(err)?;
        equal(&ia, core, &format!("{name}: I·a vs core"))?;
        let j = &res.core.certificate.as_ref().ok_or("no certificate")?.reduction;
        let ja = j.product(a).map_err(err)?;
        if i.is_homogeneous() && j.is_homogeneous() {
            equal(&ia, &ja, &format!("{name}: I·a vs J·a"))?;
        } else {
            // equality in the local ring at the origin, by Nakayama
            let m = Ideal::maximal(i.ring(), i.order());
            let local = ja.sum(&m.product(&ia).map_err(err)?).map_err(err)?;
            ensure(
                local.contains(&ia).map_err(err)? && ia.contains(&ja).map_err(err)?,
                || format!("{name}: I·a and J·a differ at the origin"),
            )?;
        }
        if *is_normal_monomial {
            let d = i.ring().dim() as u32;
            equal(a, &adj(i, d - 1)?, &format!("{name}: a vs adj(I^(d-1))"))?;
        }
    }
    Ok(format!(
        "{} fixtures; a = adj(I^(d-1)) on the {} normal monomial ones",
        all.len(),
        normal.len()
    ))
}

fn c8_integrally_closed_core() -> Outcome {
    let fixtures = normal_fixtures();
    for (name, i) in &fixtures {
        let check = verify_core_integrally_closed(i, None, &CoreOptions::default()).map_err(err)?;
        ensure(check.integrally_closed, || {
            format!("{name}: core reported not integrally closed")
        })?;
        let core = monomial(&check.core)?;
        let closed = integral_closure(&core).map_err(err)?;
        ensure(closed == core, || format!("{name}: closure of the core is larger"))?;
    }
    Ok(format!("{} normal monomial fixtures", fixtures.len()))
}

fn c9_integral_closure() -> Outcome {
    let r = ring(2);
    for (input, expected) in [("x^2, y^3", "x^2, x*y^2, y^3"), ("x^2, y^2", "x^2, x*y, y^2")] {
        let closed = integral_closure(&monomial(&ideal(&r, input))?).map_err(err)?;
        equal(
            &closed.to_ideal(MonomialOrder::Grevlex),
            &ideal(&r, expected),
            &format!("closure of ({input})"),
        )?;
    }
    let normal = is_normal(&monomial(&ideal(&r, "x^2, y^3"))?, None).map_err(err)?;
    ensure(!normal.normal, || "(x^2,y^3) reported normal".into())?;
    Ok("(x^2,y^3) -> (x^2,xy^2,y^3); (x^2,y^2) -> (x^2,xy,y^2)".into())
}

fn c10_power_identity() -> Outcome {
    let start = Instant::now();
    for t in 1..=6 {
        let r = Ring::standard(t, Field::Rationals).map_err(err)?;
        ensure(verify_power_identity(&r, t).map_err(err)?, || format!("t={t} fails"))?;
    }
    let took = start.elapsed();
    ensure(took < IDENTITY_LIMIT, || format!("took {took:?}"))?;
    Ok(format!("t = 1..6 in {} ms", took.as_millis()))
}

fn random_ideal(rng: &mut ChaCha8Rng, r: &Arc<Ring>) -> Ideal {
    loop {
        let ngens = rng.gen_range(1..=3);
        let gens: Vec<Polynomial> = (0..ngens)
            .map(|_| {
                let nterms = rng.gen_range(1..=3);
                let terms = (0..nterms).map(|_| {
                    let deg = rng.gen_range(0..=4u32);
                    let mut exps = vec![0u32; r.dim()];
                    for _ in 0..deg {
                        exps[rng.gen_range(0..r.dim())] += 1;
                    }
                    let mut c = 0i64;
                    while c == 0 {
                        c = rng.gen_range(-5..=5);
                    }
                    (r.field().from_i64(c), Monomial::new(&exps).unwrap())
                });
                Polynomial::from_terms(r, MonomialOrder::Grevlex, terms).unwrap()
            })
            .collect();
        if let Ok(i) = Ideal::new(r, gens) {
            return i;
        }
    }
}

fn c11_groebner_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    let rings = [ring(2), ring(3)];
    for k in 0..RANDOM_IDEALS {
        let r = &rings[rng.gen_range(0..2)];
        let i = random_ideal(&mut rng, r);
        let j = random_ideal(&mut rng, r);
        let gb = i.gb();
        ensure(gb.verify_s_pairs(), || {
            format!("#{k} ({i}): an S-polynomial does not reduce to zero")
        })?;
        ensure(gb.is_reduced(), || format!("#{k} ({i}): basis not reduced"))?;
        let meet = i.intersection(&j).map_err(err)?;
        let prod = i.product(&j).map_err(err)?;
        let ok =
            i.contains(&meet).map_err(err)? && j.contains(&meet).map_err(err)? && meet.contains(&prod).map_err(err)?;
        ensure(ok, || {
            format!("#{k}: intersection of ({i}) and ({j}) fails containment")
        })?;
        let colon = i.colon(&j).map_err(err)?;
        let back = colon.product(&j).map_err(err)?;
        let ok = colon.contains(&i).map_err(err)? && i.contains(&back).map_err(err)?;
        ensure(ok, || format!("#{k}: colon ({i}) : ({j}) fails containment"))?;
    }
    Ok(format!("{RANDOM_IDEALS} random pairs, seed {RANDOM_SEED}"))
}

fn run_scripts() -> Result<Vec<u8>, String> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../scripts");
    let mut all = Vec::new();
    for script in SCRIPTS {
        let out = Process::new(env!("CARGO_BIN_EXE_corecalc"))
            .env_remove("CORECALC_SEED")
            .args(["--json", "--seed", &SANDWICH_SEED.to_string(), "run"])
            .arg(format!("{dir}/{script}"))
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || {
            format!(
                "{script} exited with {:?}: {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            )
        })?;
        all.extend(out.stdout);
    }
    Ok(all)
}

fn c12_determinism() -> Outcome {
    let first = run_scripts()?;
    let second = run_scripts()?;
    ensure(first == second, || "outputs differ".into())?;
    let lines = first.iter().filter(|&&b| b == b'\n').count();
    Ok(format!("{lines} JSON lines byte-identical across two runs"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("graded core closed form", c1_graded_closed_form),
        ("reduction independence", c2_reduction_independence),
        ("adjoint agreement", c3_adjoint_agreement),
        ("sandwich exactness", c4_sandwich),
        ("colon chain", c5_colon_chain),
        ("power formula", c6_power_formula),
        ("coefficient ideal", c7_coefficient_ideal),
        ("integrally closed core", c8_integrally_closed_core),
        ("integral closure values", c9_integral_closure),
        ("power identity", c10_power_identity),
        ("groebner soundness", c11_groebner_soundness),
        ("determinism", c12_determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{ms} ms]", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{ms} ms]", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
