//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion does. Every residual must be exactly zero.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use xmod::diffmaps::DiffConfig;
use xmod::extensions::{
    are_cohomologous, build_extension, coboundary_iso, coboundary_shift, cocycle_from_tuple, count_extension_classes,
    induced_rep_from_split, normalized_cocycle_basis, random_coboundary, trivial_coeff_bridge, trivial_pair_from_tuple,
    trivial_pair_violations, tuple_from_cocycle, tuple_from_trivial_pair, verify_extension, TrivialPair,
};
use xmod::grid::TrivialCoefficients;
use xmod::group::{CrossedModuleViolation, FiniteGroup};
use xmod::instance::{bundled, Instance, InstanceError, InstanceViolation};
use xmod::linalg::{same_span, Field, Matrix, Vector};
use xmod::rep::TwoRep;
use xmod::suites::{all_mutations, run_suite, Suite, SuiteOptions};
use xmod::total::{
    bar_cohomology_dim, h0_fixed, principal_witness, CrossedFunctorWitness, Nabla2Mode, SampleOptions, TotalCochain,
    TotalComplex,
};

const BROKEN: &str = "s3-trivial-action";

fn load(name: &str) -> Instance {
    let text = xmod::instance::bundled_text(name).unwrap();
    Instance::from_json(text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn valid_instances() -> Vec<Instance> {
    bundled().iter().filter(|(n, _)| *n != BROKEN).map(|(n, _)| load(n)).collect()
}

fn cx(rep: &TwoRep) -> TotalComplex<'_> {
    TotalComplex::new(rep, DiffConfig::default())
}

/// Collects failure messages for one criterion.
#[derive(Default)]
struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn note(&mut self, s: String) {
        self.notes.push(s);
    }
}

fn suite_filtered(out: &mut Outcome, tag: &str, rep: &TwoRep, suite: Suite, max_pq: usize, names: &[&str]) {
    let opts = SuiteOptions { max_pq, seed: 11, ..Default::default() };
    let report = run_suite(rep, suite, &opts).unwrap();
    let mut n = 0;
    for c in report.checks.iter().filter(|c| names.is_empty() || names.contains(&c.name.as_str())) {
        n += 1;
        out.require(c.holds(), || format!("{tag}: {} on {:?} fails: {:?}", c.name, c.src, c.witness));
        out.require(c.exhaustive || c.points >= 200, || format!("{tag}: {} on {:?} only {} points", c.name, c.src, c.points));
    }
    out.require(n > 0, || format!("{tag}: no checks ran"));
    out.note(format!("{tag}: {n} checks"));
}

fn c1_validation() -> Outcome {
    let mut out = Outcome::default();
    for (name, text) in bundled() {
        let r = Instance::from_json(text);
        if *name == BROKEN {
            match r {
                Err(InstanceError::Violations(vs)) => {
                    let peiffer = vs.iter().any(|v| {
                        matches!(v, InstanceViolation::CrossedModule { violation: CrossedModuleViolation::Peiffer { .. } })
                    });
                    out.require(peiffer, || format!("{name}: no Peiffer witness among {vs:?}"));
                }
                other => out.failures.push(format!("{name}: expected a violation, got {:?}", other.map(|i| i.name))),
            }
        } else {
            out.require(r.is_ok(), || format!("{name}: {:?}", r.err()));
        }
    }
    out
}

fn grid_criterion(names: &[&str]) -> Outcome {
    let mut out = Outcome::default();
    for inst in [load("z2-identity"), load("z2-identity-f3")] {
        for nr in &inst.reps {
            suite_filtered(&mut out, &format!("{}/{}", inst.name, nr.name), &nr.rep, Suite::Grid, 2, names);
        }
    }
    for nr in &load("s3-conjugation").reps {
        suite_filtered(&mut out, &format!("s3-conjugation/{}", nr.name), &nr.rep, Suite::Grid, 1, names);
    }
    out
}

fn c4_difference_maps() -> Outcome {
    let mut out = Outcome::default();
    for (inst, rep) in
        [("z2-identity", None), ("z2-identity-f3", Some("sign")), ("z3-identity", Some("additive")), ("s3-conjugation", Some("sign"))]
    {
        let inst = load(inst);
        for nr in inst.reps.iter().filter(|nr| rep.map_or(true, |r| nr.name == r)) {
            for suite in [Suite::Diff, Suite::Wall] {
                suite_filtered(&mut out, &format!("{}/{} {}", inst.name, nr.name, suite.name()), &nr.rep, suite, 1, &[]);
            }
        }
    }
    out
}

fn c5_nabla_squared() -> Outcome {
    let mut out = Outcome::default();
    let mut z2_reps = 0;
    for inst in [load("z2-identity"), load("z2-identity-f3")] {
        for nr in &inst.reps {
            z2_reps += 1;
            for n in 0..=3 {
                let r = cx(&nr.rep).verify_nabla2(n, Nabla2Mode::Exhaustive, 0, SampleOptions::default()).unwrap();
                out.require(r.method == "matrix" && r.holds(), || {
                    format!("{}/{} n={n}: {} {:?}", inst.name, nr.name, r.method, r.witnesses)
                });
            }
        }
    }
    out.require(z2_reps >= 2, || "fewer than two ℤ/2 representations".into());
    for nr in &load("s3-conjugation").reps {
        for n in 0..=3 {
            let r = cx(&nr.rep).verify_nabla2(n, Nabla2Mode::Sampled, 5, SampleOptions::default()).unwrap();
            out.require(r.holds(), || format!("s3/{} n={n}: {:?}", nr.name, r.witnesses));
            out.require(r.exhaustive || r.checked >= 200, || format!("s3/{} n={n}: only {} points", nr.name, r.checked));
        }
    }
    out
}

fn c6_bar_oracle() -> Outcome {
    let mut out = Outcome::default();
    let (f2, f3) = (Field::Prime(2), Field::Prime(3));
    let z2 = FiniteGroup::cyclic(2).unwrap();
    let z3 = FiniteGroup::cyclic(3).unwrap();
    let triv = |f: Field, n: usize| vec![Matrix::identity(f, 1); n];
    for (what, got) in [
        ("bar H¹(ℤ/2;F₂)", bar_cohomology_dim(&z2, &triv(f2, 2), f2, 1)),
        ("bar H²(ℤ/2;F₂)", bar_cohomology_dim(&z2, &triv(f2, 2), f2, 2)),
        ("bar H²(ℤ/3;F₃)", bar_cohomology_dim(&z3, &triv(f3, 3), f3, 2)),
    ] {
        out.require(got == 1, || format!("{what} = {got}"));
    }
    for (inst, n) in [("classical-z2", 1), ("classical-z2", 2), ("classical-z3", 2)] {
        let inst = load(inst);
        for sub in [false, true] {
            let got = cx(&inst.reps[0].rep).cohomology(n, sub).unwrap().dim;
            out.require(got == 1, || format!("{} H^{n} (subcomplex {sub}) = {got}", inst.name));
        }
    }
    out
}

fn c7_h0() -> Outcome {
    let mut out = Outcome::default();
    for inst in valid_instances() {
        for nr in &inst.reps {
            let h = cx(&nr.rep).cohomology(0, false).unwrap();
            let fixed = h0_fixed(&nr.rep);
            out.require(h.dim == fixed.len() && same_span(nr.rep.field(), &h.kernel, &fixed), || {
                format!("{}/{}: dim {} vs fixed {}", inst.name, nr.name, h.dim, fixed.len())
            });
        }
    }
    out
}

fn c8_crossed_functors() -> Outcome {
    let mut out = Outcome::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for inst in valid_instances() {
        for nr in &inst.reps {
            let (rep, tag) = (&nr.rep, format!("{}/{}", inst.name, nr.name));
            let c = cx(rep);
            let b1 = c.basis(1).unwrap();
            for v in &c.cohomology(1, false).unwrap().kernel {
                let tc = TotalCochain::from_vector(rep, &b1, v).unwrap();
                let ok = CrossedFunctorWitness::from_cochain(rep, &tc)
                    .and_then(|w| Ok(w.check(rep)?.holds() && w.to_cochain(rep)? == tc))
                    .unwrap_or(false);
                out.require(ok, || format!("{tag}: kernel vector is not a crossed functor"));
            }
            for _ in 0..5 {
                let v: Vector = (0..rep.dim_v()).map(|_| rep.field().from_i64(rng.gen_range(-3..=3))).collect();
                let w = principal_witness(rep, &v);
                let tc = w.to_cochain(rep).unwrap();
                out.require(w.check(rep).unwrap().holds(), || format!("{tag}: principal witness fails its check"));
                out.require(c.is_coboundary(&b1, &tc.to_vector(&b1), false).unwrap(), || {
                    format!("{tag}: principal witness not in the image of ∇⁰")
                });
            }
        }
    }
    out
}

/// All F_p-combinations of `basis`.
fn span(field: Field, basis: &[Vector], len: usize) -> Vec<Vector> {
    let p = field.order().unwrap() as usize;
    (0..p.pow(basis.len() as u32))
        .map(|mut code| {
            let mut v = vec![field.zero(); len];
            for b in basis {
                let c = field.from_i64((code % p) as i64);
                code /= p;
                for (o, x) in v.iter_mut().zip(b) {
                    *o += &(&c * x);
                }
            }
            v
        })
        .collect()
}

fn c9_extension_dictionary() -> Outcome {
    let mut out = Outcome::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let inst = load("z2-identity");
    for nr in &inst.reps {
        let (rep, tag) = (&nr.rep, format!("{}/{}", inst.name, nr.name));
        let c = cx(rep);
        let b2 = c.basis(2).unwrap();
        let cocycles = span(rep.field(), &normalized_cocycle_basis(&c).unwrap(), b2.len());
        let mut tuples = Vec::new();
        for v in &cocycles {
            let tc = TotalCochain::from_vector(rep, &b2, v).unwrap();
            let t = tuple_from_cocycle(&c, &tc).unwrap();
            // (a) cocycle ↔ tuple
            out.require(cocycle_from_tuple(&c, &t).unwrap() == tc, || format!("{tag}: round trip fails for {t:?}"));
            // (b) build → split → induced representation and tuple
            let e = build_extension(rep, &t).unwrap();
            out.require(verify_extension(&e).holds(), || format!("{tag}: built extension is not a crossed module"));
            let (induced, back) = induced_rep_from_split(&e).unwrap();
            out.require(&induced == rep && back == t, || format!("{tag}: split does not recover {t:?}"));
            tuples.push(t);
        }
        // (c) ∇¹λ-shifted pairs are isomorphic
        for k in 0..40 {
            let t1 = &tuples[k % tuples.len()];
            let w = random_coboundary(rep, &mut rng);
            let t2 = coboundary_shift(&c, t1, &w).unwrap();
            let (tc1, tc2) = (cocycle_from_tuple(&c, t1).unwrap(), cocycle_from_tuple(&c, &t2).unwrap());
            match are_cohomologous(&c, &tc1, &tc2).unwrap() {
                Some(found) => {
                    let iso = coboundary_iso(rep, t1, &t2, &found).unwrap();
                    out.require(iso.holds(), || format!("{tag}: iso fails: {:?}", iso.violations));
                }
                None => out.failures.push(format!("{tag}: shifted tuple not recognized as cohomologous")),
            }
        }
        // (d) p^{dim H²} classes
        let count = count_extension_classes(&c, 1 << 20).unwrap();
        out.require(count.matches(), || format!("{tag}: {count:?}"));
        out.note(format!("{tag}: {} cocycles, {} classes", cocycles.len(), count.classes));
    }
    out
}

fn all_pairs(ng: usize, nh: usize, field: Field) -> Vec<TrivialPair> {
    let p = field.order().unwrap() as usize;
    let slots = nh * nh - 1 + ng * nh;
    (0..p.pow(slots as u32))
        .map(|mut code| {
            let mut next = || {
                let x = field.from_i64((code % p) as i64);
                code /= p;
                x
            };
            let big_f = (0..nh).map(|a| (0..nh).map(|b| if a + b == 0 { field.zero() } else { next() }).collect()).collect();
            let f = (0..ng).map(|_| (0..nh).map(|_| next()).collect()).collect();
            TrivialPair { big_f, f }
        })
        .collect()
}

fn c10_trivial_bridge() -> Outcome {
    let mut out = Outcome::default();
    let field = Field::Prime(2);
    let xm = load("z2-identity").xm;
    let coeffs = TrivialCoefficients::new(xm.clone(), field);
    let rep = coeffs.rep();
    let c = cx(rep);
    let mut forward: HashSet<String> = HashSet::new();
    for pair in all_pairs(xm.g().order(), xm.h().order(), field) {
        if !trivial_pair_violations(&xm, field, &pair).unwrap().is_empty() {
            continue;
        }
        match trivial_coeff_bridge(&xm, field, &pair) {
            Ok(r) => {
                out.require(r.holds(), || format!("bridge fails: {r:?}"));
                out.require(forward.insert(format!("{:?}", r.tuple)), || format!("two pairs give {:?}", r.tuple));
            }
            Err(e) => out.failures.push(format!("valid pair rejected: {e}")),
        }
    }
    let b2 = c.basis(2).unwrap();
    let cocycles = span(field, &normalized_cocycle_basis(&c).unwrap(), b2.len());
    out.require(cocycles.len() == forward.len(), || format!("{} pairs vs {} cocycles", forward.len(), cocycles.len()));
    for v in &cocycles {
        let t = tuple_from_cocycle(&c, &TotalCochain::from_vector(rep, &b2, v).unwrap()).unwrap();
        let pair = trivial_pair_from_tuple(&xm, &t).unwrap();
        let ok = trivial_pair_violations(&xm, field, &pair).unwrap().is_empty()
            && tuple_from_trivial_pair(&xm, field, &pair).unwrap() == t
            && forward.contains(&format!("{t:?}"));
        out.require(ok, || format!("backward map fails on {t:?}"));
    }
    out.note(format!("{} valid pairs", forward.len()));
    out
}

fn c11_mutations() -> Outcome {
    let mut out = Outcome::default();
    let inst = load("s3-conjugation");
    let rep = &inst.rep("sign").unwrap().rep;
    for m in all_mutations() {
        let cfg = DiffConfig::default().with_mutation(m);
        let c = TotalComplex::new(rep, cfg);
        let caught = (0..=3).find_map(|n| {
            let r = c.verify_nabla2(n, Nabla2Mode::Sampled, 3, SampleOptions::default()).unwrap();
            (!r.holds() && !r.witnesses.is_empty()).then(|| (n, r.witnesses[0].dst))
        });
        match caught {
            Some((n, dst)) => out.note(format!("{m:?}: n={n} at {dst:?}")),
            None => out.failures.push(format!("{m:?}: ∇² = 0 still holds")),
        }
    }
    out
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("corpus validation; trivial action on S₃ fails Peiffer", c1_validation),
        ("∂² = 0, δ² = 0, δ₍₁₎² = 0, δ₍₁₎δ′ = 0", || grid_criterion(&["∂∂", "δδ", "δ₍₁₎δ₍₁₎"])),
        ("[∂, δ₍₁₎] = 0 and [δ, δ₍₁₎] = 0", || grid_criterion(&["[∂, δ₍₁₎]", "[δ, δ₍₁₎]"])),
        ("difference-map identities and walls", c4_difference_maps),
        ("∇² = 0", c5_nabla_squared),
        ("classical cohomology matches the bar complex", c6_bar_oracle),
        ("ker ∇⁰ is the fixed subspace", c7_h0),
        ("degree-1 cocycles are crossed functors", c8_crossed_functors),
        ("extension dictionary over F₂ on ℤ/2", c9_extension_dictionary),
        ("trivial-coefficient bridge", c10_trivial_bridge),
        ("mutations break ∇² = 0", c11_mutations),
    ];
    let mut failed = Vec::new();
    for (k, (what, run)) in criteria.into_iter().enumerate() {
        let o = run();
        let n = k + 1;
        let status = if o.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("{status} criterion {n}: {what}");
        for s in &o.notes {
            eprintln!("    {s}");
        }
        for f in o.failures.iter().take(10) {
            println!("    {f}");
        }
        if !o.failures.is_empty() {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
