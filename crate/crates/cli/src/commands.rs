use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use xmod::diffmaps::{CheckOptions, DiffConfig};
use xmod::extensions::{
    are_cohomologous, build_extension, coboundary_iso, coboundary_shift, cocycle_from_tuple, induced_rep_from_split,
    normalized_cocycle_basis, random_coboundary, tuple_from_cocycle, verify_extension, ExtensionError, ExtensionTuple,
};
use xmod::group::Tri;
use xmod::instance::{bundled, bundled_text, Instance, InstanceError, InstanceViolation, NamedRep};
use xmod::linalg::Scalar;
use xmod::rep::{semidirect_2group, TwoRep};
use xmod::suites::{parse_mutation, run_suite, Suite, SuiteOptions};
use xmod::total::{TotalBasis, TotalCochain, TotalComplex};

use crate::report::{Check, InstanceInfo, Report};
use crate::{ExtensionAction, Source, SuiteArg};

/// Reads the instance text, recording its digest.
fn read_source(path: &str, report: &mut Report) -> Option<String> {
    let text = match path.strip_prefix("bundled:") {
        Some(name) => match bundled_text(name) {
            Some(t) => t.to_string(),
            None => {
                report.fail_input(format!("no bundled instance named {name:?}"), None, None);
                return None;
            }
        },
        None => match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                report.fail_input(format!("cannot read {path}: {e}"), None, None);
                return None;
            }
        },
    };
    // The name is known even when the instance later fails validation.
    let name = serde_json::from_str::<Value>(&text).ok().and_then(|v| v.get("name")?.as_str().map(str::to_string));
    report.instance = Some(InstanceInfo { name, sha256: hex::encode(Sha256::digest(text.as_bytes())) });
    Some(text)
}

fn violation_check(v: &InstanceViolation) -> Check {
    let name = match v {
        InstanceViolation::Group { which, .. } => format!("group {which}"),
        InstanceViolation::CrossedModule { .. } => "crossed module".to_string(),
        InstanceViolation::Representation { .. } => "2-representation".to_string(),
    };
    let rep = match v {
        InstanceViolation::Representation { name, .. } => Some(name.as_str()),
        _ => None,
    };
    Check::new(name, rep, false, json!({ "message": v.to_string(), "witness": v }))
}

/// Loads and validates; on failure the report carries the reason.
fn load(source: &Source, report: &mut Report) -> Option<Instance> {
    let text = read_source(&source.path, report)?;
    match Instance::from_json(&text) {
        Ok(inst) => Some(inst),
        Err(InstanceError::Violations(vs)) => {
            vs.iter().for_each(|v| report.push(violation_check(v)));
            report.settle();
            None
        }
        Err(InstanceError::Syntax { line, column, message }) => {
            report.fail_input(message, Some(line), Some(column));
            None
        }
        Err(e) => {
            report.fail_input(e.to_string(), None, None);
            None
        }
    }
}

fn selected<'a>(inst: &'a Instance, source: &Source, report: &mut Report) -> Option<Vec<&'a NamedRep>> {
    match &source.rep {
        None if inst.reps.is_empty() => {
            report.fail_input("the instance has no representations", None, None);
            None
        }
        None => Some(inst.reps.iter().collect()),
        Some(key) => match inst.rep(key) {
            Some(r) => Some(vec![r]),
            None => {
                report.fail_input(format!("no representation {key:?}"), None, None);
                None
            }
        },
    }
}

fn require_prime(inst: &Instance, what: &str, report: &mut Report) -> bool {
    if inst.field.order().is_none() {
        report.fail_input(format!("{what} needs a prime field, the instance is over {}", inst.field.name()), None, None);
        return false;
    }
    true
}

pub fn validate(source: &Source, seed: u64) -> Report {
    let mut report = Report::new("validate", seed, json!({ "rep": source.rep }));
    let Some(inst) = load(source, &mut report) else { return report };
    let Some(reps) = selected(&inst, source, &mut report) else { return report };
    let xm = &inst.xm;
    report.push(Check::new(
        "crossed module",
        None,
        true,
        json!({ "order_g": xm.g().order(), "order_h": xm.h().order(), "field": inst.field.name() }),
    ));
    for r in reps {
        report.push(Check::new(
            "2-representation",
            Some(&r.name),
            true,
            json!({ "dim_w": r.rep.dim_w(), "dim_v": r.rep.dim_v() }),
        ));
    }
    report.settle();
    report
}

pub struct CheckArgs {
    pub suite: SuiteArg,
    pub samples: usize,
    pub exhaustive_limit: usize,
    pub max_pq: usize,
    pub mutate: Option<String>,
}

#[derive(Serialize)]
struct RelationDetail<'a> {
    src: Tri,
    dst: Option<Tri>,
    points: usize,
    exhaustive: bool,
    failures: usize,
    witness: &'a Option<xmod::group::Point>,
}

pub fn check(source: &Source, seed: u64, args: CheckArgs) -> Report {
    let mut config = DiffConfig::default();
    let mutation = match args.mutate.as_deref().map(parse_mutation).transpose() {
        Ok(m) => m,
        Err(e) => {
            let mut report = Report::new("check", seed, Value::Null);
            report.fail_input(e, None, None);
            return report;
        }
    };
    if let Some(m) = mutation {
        config = config.with_mutation(m);
    }
    let suites: Vec<Suite> = match args.suite {
        SuiteArg::Grid => vec![Suite::Grid],
        SuiteArg::Diff => vec![Suite::Diff],
        SuiteArg::Wall => vec![Suite::Wall],
        SuiteArg::Appendix => vec![Suite::Components],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    let options = json!({
        "rep": source.rep,
        "suites": suites,
        "samples": args.samples,
        "exhaustive_limit": args.exhaustive_limit,
        "max_pq": args.max_pq,
        "config": config,
    });
    let mut report = Report::new("check", seed, options);
    let Some(inst) = load(source, &mut report) else { return report };
    let Some(reps) = selected(&inst, source, &mut report) else { return report };
    let opts = SuiteOptions {
        seed,
        check: CheckOptions { exhaustive_limit: args.exhaustive_limit, samples: args.samples, normalized: true },
        max_pq: args.max_pq,
        config,
    };
    for r in reps {
        for &suite in &suites {
            match run_suite(&r.rep, suite, &opts) {
                Ok(sr) => {
                    for c in &sr.checks {
                        let detail = RelationDetail {
                            src: c.src,
                            dst: c.dst,
                            points: c.points,
                            exhaustive: c.exhaustive,
                            failures: c.failures,
                            witness: &c.witness,
                        };
                        report.push(Check::new(format!("{}: {}", suite.name(), c.name), Some(&r.name), c.holds(), detail));
                    }
                }
                Err(e) => {
                    report.fail_input(format!("{} on {}: {e}", suite.name(), r.name), None, None);
                    return report;
                }
            }
        }
    }
    report.settle();
    report
}

/// Nonzero coordinates of a vector in a total basis, in codec order.
fn coordinates(basis: &TotalBasis, v: &[Scalar]) -> Vec<Value> {
    let mut out = Vec::new();
    for blk in basis.blocks() {
        for k in 0..blk.len() {
            let x = &v[blk.offset + k];
            if !x.is_zero() {
                out.push(json!({
                    "tri": [blk.tri.p, blk.tri.q, blk.tri.r],
                    "point": blk.points[k / blk.dim],
                    "coordinate": k % blk.dim,
                    "value": x.to_string(),
                }));
            }
        }
    }
    out
}

/// Highest degree reported without `--experimental`.
const STABLE_DEGREE: usize = 2;

pub fn cohomology(source: &Source, seed: u64, degree: usize, subcomplex: bool, experimental: bool) -> Report {
    let options = json!({ "rep": source.rep, "degree": degree, "h2_subcomplex": subcomplex, "experimental": experimental });
    let mut report = Report::new("cohomology", seed, options);
    if degree > STABLE_DEGREE && !experimental {
        report.fail_input(
            format!("degree {degree} is above {STABLE_DEGREE}; pass --experimental to compute it anyway"),
            None,
            None,
        );
        return report;
    }
    let Some(inst) = load(source, &mut report) else { return report };
    let Some(reps) = selected(&inst, source, &mut report) else { return report };
    if !require_prime(&inst, "cohomology", &mut report) {
        return report;
    }
    for r in reps {
        let cx = TotalComplex::new(&r.rep, DiffConfig::default());
        let computed = cx.cohomology(degree, subcomplex).and_then(|h| Ok((h, cx.basis(degree)?)));
        match computed {
            Ok((h, basis)) => report.result(json!({
                "rep": r.name,
                "degree": degree,
                "subcomplex": subcomplex,
                "dim": h.dim,
                "kernel_dim": h.kernel_dim,
                "image_dim": h.image_dim,
                "representatives": h.representatives.iter().map(|v| coordinates(&basis, v)).collect::<Vec<_>>(),
            })),
            Err(e) => {
                report.fail_input(format!("{}: {e}", r.name), None, None);
                return report;
            }
        }
    }
    report
}

/// Records an extension error as a violation or an input error.
fn extension_error(report: &mut Report, rep: &str, e: ExtensionError) {
    match e {
        ExtensionError::NotACocycle { .. } | ExtensionError::OutsideSubcomplex { .. } | ExtensionError::TupleInvalid(_) => {
            report.push(Check::new("tuple", Some(rep), false, json!({ "message": e.to_string() })));
            report.settle();
        }
        e => report.fail_input(format!("{rep}: {e}"), None, None),
    }
}

fn read_tuple(inst: &Instance, rep: &TwoRep, path: Option<&Path>, report: &mut Report) -> Option<ExtensionTuple> {
    let Some(path) = path else { return Some(ExtensionTuple::zero(rep)) };
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            report.fail_input(format!("cannot read {}: {e}", path.display()), None, None);
            return None;
        }
    };
    match inst.parse_tuple(rep, &text) {
        Ok(t) => Some(t),
        Err(InstanceError::Syntax { line, column, message }) => {
            report.fail_input(format!("{}: {message}", path.display()), Some(line), Some(column));
            None
        }
        Err(e) => {
            report.fail_input(format!("{}: {e}", path.display()), None, None);
            None
        }
    }
}

/// Checks items (i)–(vii) and unit normalization; false if the tuple is unusable.
fn tuple_items(rep: &NamedRep, t: &ExtensionTuple, label: &str, report: &mut Report) -> bool {
    if let Err(e) = t.check_normalized() {
        report.fail_input(format!("{label}: {e}"), None, None);
        return false;
    }
    match t.violations(&rep.rep) {
        Ok(vs) => {
            let ok = vs.is_empty();
            let detail: Vec<Value> =
                vs.iter().map(|v| json!({ "item": v.item.label(), "at": v.at, "message": v.to_string() })).collect();
            report.push(Check::new(format!("{label}: items (i)-(vii)"), Some(&rep.name), ok, detail));
            ok
        }
        Err(e) => {
            extension_error(report, &rep.name, e);
            false
        }
    }
}

pub fn extension(
    source: &Source,
    seed: u64,
    action: ExtensionAction,
    tuple: Option<&Path>,
    tuple2: Option<&Path>,
) -> Report {
    let name = match action {
        ExtensionAction::Build => "extension build",
        ExtensionAction::Verify => "extension verify",
        ExtensionAction::Roundtrip => "extension roundtrip",
        ExtensionAction::Iso => "extension iso",
    };
    let digest = |p: Option<&Path>| {
        p.and_then(|p| std::fs::read(p).ok()).map(|b| hex::encode(Sha256::digest(&b)))
    };
    let options = json!({ "rep": source.rep, "tuple_sha256": digest(tuple), "tuple2_sha256": digest(tuple2) });
    let mut report = Report::new(name, seed, options);
    let Some(inst) = load(source, &mut report) else { return report };
    let Some(reps) = selected(&inst, source, &mut report) else { return report };
    if !require_prime(&inst, "extensions", &mut report) {
        return report;
    }
    let r = reps[0];
    let Some(t1) = read_tuple(&inst, &r.rep, tuple, &mut report) else { return report };
    let outcome = match action {
        ExtensionAction::Build | ExtensionAction::Verify => build_or_verify(r, &t1, action, &mut report),
        ExtensionAction::Roundtrip => roundtrip(r, tuple.map(|_| t1), &mut report),
        ExtensionAction::Iso => {
            let t2 = match tuple2 {
                Some(p) => match read_tuple(&inst, &r.rep, Some(p), &mut report) {
                    Some(t) => Some(t),
                    None => return report,
                },
                None => None,
            };
            iso(r, &t1, t2, seed, &mut report)
        }
    };
    if let Err(e) = outcome {
        extension_error(&mut report, &r.name, e);
    }
    report.settle();
    report
}

fn build_or_verify(r: &NamedRep, t: &ExtensionTuple, action: ExtensionAction, report: &mut Report) -> Result<(), ExtensionError> {
    if !tuple_items(r, t, "tuple", report) {
        return Ok(());
    }
    let e = build_extension(&r.rep, t)?;
    let ver = verify_extension(&e);
    report.push(Check::new("extension crossed module", Some(&r.name), ver.holds(), &ver.violations));
    if action == ExtensionAction::Verify {
        let cx = TotalComplex::new(&r.rep, DiffConfig::default());
        let cocycle = cocycle_from_tuple(&cx, t);
        let detail = cocycle.as_ref().err().map(|e| e.to_string());
        report.push(Check::new("tuple is a normalized cocycle", Some(&r.name), cocycle.is_ok(), detail));
        return Ok(());
    }
    if *t == ExtensionTuple::zero(&r.rep) {
        let (_, semi) = semidirect_2group(&r.rep)?;
        let tb = e.tables();
        let same = tb.e1 == semi.e1 && tb.e0 == semi.e0 && tb.eps == semi.eps && tb.act == semi.act;
        report.push(Check::new("zero tuple gives the semidirect product", Some(&r.name), same, Value::Null));
    }
    let tb = e.tables();
    report.result(json!({
        "rep": r.name,
        "e1_order": e.e1_order(),
        "e0_order": e.e0_order(),
        "e1": tb.e1,
        "e0": tb.e0,
        "eps": tb.eps,
        "act": tb.act,
    }));
    Ok(())
}

fn roundtrip(r: &NamedRep, given: Option<ExtensionTuple>, report: &mut Report) -> Result<(), ExtensionError> {
    let cx = TotalComplex::new(&r.rep, DiffConfig::default());
    let tuples: Vec<(String, ExtensionTuple)> = match given {
        Some(t) => vec![("tuple".to_string(), t)],
        None => {
            let basis = cx.basis(2)?;
            normalized_cocycle_basis(&cx)?
                .iter()
                .enumerate()
                .map(|(k, v)| {
                    let tc = TotalCochain::from_vector(&r.rep, &basis, v)?;
                    Ok((format!("kernel basis {k}"), tuple_from_cocycle(&cx, &tc)?))
                })
                .collect::<Result<_, ExtensionError>>()?
        }
    };
    for (label, t) in &tuples {
        if !tuple_items(r, t, label, report) {
            continue;
        }
        let back = tuple_from_cocycle(&cx, &cocycle_from_tuple(&cx, t)?)?;
        report.push(Check::new(format!("{label}: tuple -> cocycle -> tuple"), Some(&r.name), back == *t, Value::Null));
        let e = build_extension(&r.rep, t)?;
        let (induced, recovered) = induced_rep_from_split(&e)?;
        let detail = json!({ "rep_matches": induced == r.rep, "tuple_matches": recovered == *t });
        report.push(Check::new(
            format!("{label}: build -> split -> rep and tuple"),
            Some(&r.name),
            induced == r.rep && recovered == *t,
            detail,
        ));
    }
    report.result(json!({ "rep": r.name, "tuples": tuples.len() }));
    Ok(())
}

fn iso(r: &NamedRep, t1: &ExtensionTuple, t2: Option<ExtensionTuple>, seed: u64, report: &mut Report) -> Result<(), ExtensionError> {
    let cx = TotalComplex::new(&r.rep, DiffConfig::default());
    if !tuple_items(r, t1, "tuple", report) {
        return Ok(());
    }
    let t2 = match t2 {
        Some(t) => t,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            coboundary_shift(&cx, t1, &random_coboundary(&r.rep, &mut rng))?
        }
    };
    if !tuple_items(r, &t2, "tuple2", report) {
        return Ok(());
    }
    let (tc1, tc2) = (cocycle_from_tuple(&cx, t1)?, cocycle_from_tuple(&cx, &t2)?);
    let Some(w) = are_cohomologous(&cx, &tc1, &tc2)? else {
        report.push(Check::new("cohomologous", Some(&r.name), false, Value::Null));
        return Ok(());
    };
    report.push(Check::new("cohomologous", Some(&r.name), true, &w));
    let iso = coboundary_iso(&r.rep, t1, &t2, &w)?;
    let detail: Vec<Value> = iso.violations.iter().map(|v| json!({ "message": v.to_string(), "violation": v })).collect();
    report.push(Check::new("isomorphism", Some(&r.name), iso.holds(), detail));
    report.result(json!({ "rep": r.name, "psi1": iso.psi1, "psi0": iso.psi0 }));
    Ok(())
}

pub fn corpus(seed: u64) -> Report {
    let mut report = Report::new("corpus", seed, Value::Null);
    for (name, text) in bundled() {
        let inst = Instance::from_json(text);
        let field = inst.as_ref().map(|i| i.field.name()).ok();
        let valid = inst.is_ok();
        let reps: Vec<String> = inst.map(|i| i.reps.into_iter().map(|r| r.name).collect()).unwrap_or_default();
        report.result(json!({
            "name": name,
            "sha256": hex::encode(Sha256::digest(text.as_bytes())),
            "field": field,
            "valid": valid,
            "representations": reps,
        }));
    }
    report
}
