//! Running parsed commands.

use std::collections::BTreeMap;
use std::time::Instant;

use corecalc::cores::{
    coefficient_ideal, core_colon, core_sandwich, graded_core_maximal, verify_core_integrally_closed,
    verify_core_power, CoreOptions, CoreResult,
};
use corecalc::groebner::intersect_all;
use corecalc::newton::{integral_closure, is_normal, multiplier_ideal, MonomialIdeal};
use corecalc::poly::verify_power_identity;
use corecalc::{Error, Ideal, MonomialOrder, Ring};
use serde_json::{json, Value};

use crate::script::{Arg, Command, Session};

/// Flags shared by every command of a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    pub trials: u32,
    pub coeff_bound: u64,
    pub r_max: u32,
    pub force: bool,
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 0,
            trials: 25,
            coeff_bound: 20,
            r_max: 20,
            force: false,
            timing: false,
        }
    }
}

impl Options {
    fn core_options(&self) -> CoreOptions {
        CoreOptions {
            seed: self.seed,
            coeff_bound: self.coeff_bound,
            r_max: self.r_max,
            trials: self.trials,
            force: self.force,
            ..CoreOptions::default()
        }
    }
}

/// Provenance of a result.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Meta {
    pub route: Option<String>,
    pub reduction_number: Option<u32>,
    pub seed: u64,
    pub trials: Option<u32>,
    pub exact: Option<bool>,
    pub warnings: Vec<String>,
}

/// What a command produced: an ideal, a scalar, or both, plus named
/// auxiliary values.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Output {
    pub generators: Option<Vec<String>>,
    pub value: Option<Value>,
    /// Sorted by key.
    pub aux: BTreeMap<String, Value>,
    pub meta: Meta,
}

/// A module error surfaced by one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandError {
    pub code: &'static str,
    pub message: String,
}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        CommandError {
            code: e.code(),
            message: e.to_string(),
        }
    }
}

/// One executed command.
#[derive(Debug, Clone)]
pub struct Record {
    pub verb: &'static str,
    pub line: usize,
    pub inputs: Vec<Value>,
    pub outcome: Result<Output, CommandError>,
    pub elapsed_ms: Option<u64>,
}

/// Canonical generators under `order` as text, listed by descending
/// leading monomial.
pub fn generator_strings(ideal: &Ideal, order: MonomialOrder) -> Vec<String> {
    ideal
        .with_order(order)
        .canonical_generators()
        .iter()
        .map(|g| g.to_string())
        .collect()
}

fn input(arg: &Arg) -> Value {
    match arg {
        Arg::Ideal { name, ideal } => json!({
            "name": name,
            "generators": ideal.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        }),
        Arg::Int(n) => json!(n),
        Arg::Poly { text, .. } => json!(text),
    }
}

fn ideal_arg(args: &[Arg], k: usize) -> &Ideal {
    match &args[k] {
        Arg::Ideal { ideal, .. } => ideal,
        other => unreachable!("argument {k} is not an ideal: {other:?}"),
    }
}

fn int_arg(args: &[Arg], k: usize) -> Option<u64> {
    match args.get(k) {
        Some(Arg::Int(n)) => Some(*n),
        _ => None,
    }
}

fn small(n: u64, what: &str) -> Result<u32, Error> {
    u32::try_from(n).map_err(|_| Error::OutOfRange(format!("{what} {n} is too large")))
}

fn ideal_output(ideal: &Ideal, order: MonomialOrder, seed: u64) -> Output {
    Output {
        generators: Some(generator_strings(ideal, order)),
        meta: Meta {
            seed,
            ..Meta::default()
        },
        ..Output::default()
    }
}

fn value_output(value: Value, seed: u64) -> Output {
    Output {
        value: Some(value),
        meta: Meta {
            seed,
            ..Meta::default()
        },
        ..Output::default()
    }
}

fn core_meta(res: &CoreResult, seed: u64) -> Meta {
    Meta {
        route: Some(res.route.as_str().to_string()),
        reduction_number: res.reduction_number(),
        seed,
        trials: res.trials,
        exact: Some(res.exact),
        warnings: res.warnings.clone(),
    }
}

fn monomial(ideal: &Ideal) -> Result<MonomialIdeal, Error> {
    MonomialIdeal::from_ideal(ideal)
}

fn run_command(session: &Session, cmd: &Command, opts: &Options) -> Result<Output, Error> {
    let args = &cmd.args;
    let seed = opts.seed;
    let order = session.order;
    let h = |k: usize| int_arg(args, k).map(|n| n as usize);
    let core_opts = opts.core_options();
    Ok(match cmd.verb {
        "groebner" => ideal_output(&ideal_arg(args, 0).canonical(), order, seed),
        "member" => {
            let Arg::Poly { poly, .. } = &args[1] else {
                unreachable!("member takes a polynomial")
            };
            value_output(json!(ideal_arg(args, 0).member(poly)?), seed)
        }
        "equal" => value_output(json!(ideal_arg(args, 0).equals(ideal_arg(args, 1))?), seed),
        "product" => ideal_output(&ideal_arg(args, 0).product(ideal_arg(args, 1))?, order, seed),
        "power" => {
            let k = small(int_arg(args, 1).expect("arity checked"), "power")?;
            ideal_output(&ideal_arg(args, 0).power(k)?, order, seed)
        }
        "colon" => ideal_output(&ideal_arg(args, 0).colon(ideal_arg(args, 1))?, order, seed),
        "intersect" => {
            let all = args
                .iter()
                .enumerate()
                .map(|(k, _)| ideal_arg(args, k).clone())
                .collect();
            ideal_output(&intersect_all(all)?, order, seed)
        }
        "dim" => value_output(json!(ideal_arg(args, 0).krull_dimension()), seed),
        "closure" => {
            let closed = integral_closure(&monomial(ideal_arg(args, 0))?)?;
            ideal_output(&closed.to_ideal(order), order, seed)
        }
        "normal" => {
            let k_max = int_arg(args, 1).map(|k| small(k, "bound")).transpose()?;
            let n = is_normal(&monomial(ideal_arg(args, 0))?, k_max)?;
            let mut out = value_output(json!(n.normal), seed);
            out.aux.insert("failing_power".into(), json!(n.failing_power));
            out.aux.insert("k_max".into(), json!(n.k_max));
            out
        }
        "adjoint" => {
            let c = small(int_arg(args, 1).expect("arity checked"), "power")?;
            let adj = multiplier_ideal(&monomial(ideal_arg(args, 0))?, c)?;
            ideal_output(&adj.to_ideal(order), order, seed)
        }
        "core" => {
            let res = core_colon(ideal_arg(args, 0), None, h(1), &core_opts)?;
            let mut out = ideal_output(&res.ideal, order, seed);
            if let Some(cert) = &res.certificate {
                let gens: Vec<String> = cert.reduction.generators().iter().map(|g| g.to_string()).collect();
                out.aux.insert("reduction".into(), json!(gens));
            }
            out.meta = core_meta(&res, seed);
            out
        }
        "sandwich" => {
            let res = core_sandwich(ideal_arg(args, 0), h(1), &core_opts)?;
            let mut out = ideal_output(&res.ideal, order, seed);
            out.aux.insert(
                "lower_bound".into(),
                json!(res.lower_bound.as_ref().map(|i| generator_strings(i, order))),
            );
            out.meta = core_meta(&res, seed);
            out
        }
        "coeff" => {
            let res = coefficient_ideal(ideal_arg(args, 0), None, h(1), &core_opts)?;
            let mut out = ideal_output(&res.ideal, order, seed);
            out.aux
                .insert("core".into(), json!(generator_strings(&res.core.ideal, order)));
            out.meta = core_meta(&res.core, seed);
            out
        }
        "verify-power-core" => {
            let n = small(int_arg(args, 1).expect("arity checked"), "power")?;
            let check = verify_core_power(ideal_arg(args, 0), h(2), n)?;
            let mut out = value_output(json!(check.holds), seed);
            out.aux
                .insert("lhs".into(), json!(generator_strings(&check.lhs, order)));
            out.aux
                .insert("rhs".into(), json!(generator_strings(&check.rhs, order)));
            out.meta.route = Some("polyhedral".into());
            out
        }
        "verify-ic-core" => {
            let check = verify_core_integrally_closed(ideal_arg(args, 0), h(1), &core_opts)?;
            let mut out = ideal_output(&check.core, order, seed);
            out.value = Some(json!(check.integrally_closed));
            out
        }
        "graded-core" => {
            let n = small(int_arg(args, 0).expect("arity checked"), "power")?;
            let rep = graded_core_maximal(&session.ring, n, &core_opts)?;
            let mut out = ideal_output(&rep.computed.ideal, order, seed);
            out.value = Some(json!(rep.matches));
            out.aux.insert("graded_match".into(), json!(rep.graded_matches));
            out.aux.insert(
                "graded_upper".into(),
                json!(generator_strings(&rep.graded_upper.ideal, order)),
            );
            out.aux
                .insert("predicted".into(), json!(generator_strings(&rep.predicted, order)));
            out.meta = core_meta(&rep.computed, seed);
            out.meta.trials = rep.graded_upper.trials;
            out
        }
        "identity" => {
            // the identity lives in its own ring of t variables
            let t = int_arg(args, 0).expect("arity checked") as usize;
            let ring = Ring::standard(t.max(1), session.ring.field())?;
            value_output(json!(verify_power_identity(&ring, t)?), seed)
        }
        verb => unreachable!("unknown verb {verb} passed the parser"),
    })
}

/// Runs every command in order; failures are recorded and do not stop the
/// run.
pub fn execute(session: &Session, commands: &[Command], opts: &Options) -> Vec<Record> {
    commands
        .iter()
        .map(|cmd| {
            let start = Instant::now();
            let outcome = run_command(session, cmd, opts).map_err(CommandError::from);
            let elapsed = start.elapsed().as_millis() as u64;
            Record {
                verb: cmd.verb,
                line: cmd.line,
                inputs: cmd.args.iter().map(input).collect(),
                outcome,
                elapsed_ms: opts.timing.then_some(elapsed),
            }
        })
        .collect()
}
