use super::*;
use crate::diffmaps::Mutation;
use crate::group::FiniteGroup;
use crate::linalg::{same_span, Field, Matrix};
use crate::rep::{TwoRep, TwoVectorSpace};
use crate::testkit;
use proptest::prelude::*;

fn z2_reps() -> Vec<(&'static str, TwoRep)> {
    vec![("z2-unipotent", testkit::z2_unipotent()), ("z2-f3", testkit::z2_f3())]
}

fn sampled_reps() -> Vec<(&'static str, TwoRep)> {
    vec![("s3-trivial", testkit::s3_trivial()), ("s3-sign", testkit::s3_sign())]
}

fn cx(rep: &TwoRep) -> TotalComplex<'_> {
    TotalComplex::new(rep, DiffConfig::default())
}

fn flat_add(a: &Cochain, b: &Cochain, s: i64, rep: &TwoRep) -> Cochain {
    let f = rep.field();
    let v: Vec<_> = a.to_flat().iter().zip(b.to_flat()).map(|(x, y)| x + &(&f.from_i64(s) * &y)).collect();
    Cochain::from_flat(rep, a.tri(), &v).unwrap()
}

/// ∇ = (−1)^p(δ₍₁₎ + ∂ + Δ + Δ₁₂ + (−1)^r(δ + Δ₂₁)), assembled source by
/// source from the individual maps. Only valid in degrees ≤ 2, where no
/// higher difference map is reached.
fn literal_low_degree_nabla(rep: &TwoRep, tc: &TotalCochain) -> TotalCochain {
    assert!(tc.degree() <= 2);
    let dm = DiffMaps::new(Grid::new(rep), DiffConfig::default());
    let mut out = TotalCochain::zero(rep, tc.degree() + 1).unwrap();
    for (&src, c) in tc.components() {
        let even = if src.p % 2 == 0 { 1 } else { -1 };
        let odd = if (src.p + src.r) % 2 == 0 { 1 } else { -1 };
        let parts =
            [(Op::Dr, even), (Op::Del, even), (Op::D(1, 1), even), (Op::D(1, 2), even), (Op::Delta, odd), (Op::D(2, 1), odd)];
        for (op, s) in parts {
            let Some(dst) = op.target(src) else { continue };
            let img = dm.grid().apply(dst, c, |x| dm.op_form(op, src, x).unwrap()).unwrap();
            let sum = flat_add(out.component(dst).unwrap(), &img, s, rep);
            out.set_component(sum).unwrap();
        }
    }
    out
}

#[test]
fn sign_law() {
    for p in 0..3 {
        for r in 0..3 {
            let t = Tri::new(p, 1, r);
            let e = if p % 2 == 0 { 1 } else { -1 };
            let o = if (p + r) % 2 == 0 { 1 } else { -1 };
            assert_eq!(nabla_sign(Op::Del, t), e);
            assert_eq!(nabla_sign(Op::Delta, t), o);
            assert_eq!(nabla_sign(Op::Dr, t), e);
            assert_eq!(nabla_sign(Op::D(1, 1), t), e);
            assert_eq!(nabla_sign(Op::D(1, 2), t), e);
            assert_eq!(nabla_sign(Op::D(2, 1), t), o);
        }
    }
}

#[test]
fn nabla_parts_cover_every_map_once() {
    for n in 1..=5 {
        for dst in Tri::of_degree(n) {
            for (op, src) in nabla_parts(dst) {
                assert_eq!(src.degree() + 1, n);
                assert_eq!(op.target(src), Some(dst), "{op} from {src}");
            }
        }
    }
}

#[test]
fn degree_zero_differential_has_three_blocks() {
    let rep = TwoRep::trivial(testkit::z2_identity(), TwoVectorSpace::unit(Field::Prime(2), 1));
    let c = cx(&rep);
    let b1 = c.basis(1).unwrap();
    let tris: Vec<Tri> = b1.blocks().iter().map(|b| b.tri).collect();
    assert_eq!(tris, vec![Tri::new(0, 0, 1), Tri::new(0, 1, 0), Tri::new(1, 0, 0)]);
    assert_eq!(c.nabla_matrix(0).unwrap().rows(), b1.len());
}

#[test]
fn nabla_beyond_truncation_is_an_error() {
    let rep = testkit::z2_unipotent();
    let tc = TotalCochain::zero(&rep, 5).unwrap();
    assert_eq!(cx(&rep).nabla(&tc), Err(TotalError::Degree { n: 5, max: MAX_NABLA_DEGREE }));
    assert!(matches!(cx(&rep).verify_nabla2(4, Nabla2Mode::Auto, 0, SampleOptions::default()), Err(TotalError::Degree { .. })));
}

#[test]
fn matrix_agrees_with_pointwise_nabla() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, rep) in z2_reps().into_iter().chain(sampled_reps()) {
        let c = cx(&rep);
        let top = if rep.xm().g().order() > 2 { 2 } else { 3 };
        for n in 0..=top {
            let m = c.nabla_matrix(n).unwrap();
            let (b0, b1) = (c.basis(n).unwrap(), c.basis(n + 1).unwrap());
            let trials = if top == 3 { 50 } else { 5 };
            for _ in 0..trials {
                let tc = TotalCochain::random(&rep, n, &mut rng).unwrap();
                let direct = c.nabla(&tc).unwrap();
                assert!(direct.is_normalized(rep.xm()), "[{name}] ∇ left the normalized cochains");
                assert_eq!(m.mul_vec(&tc.to_vector(&b0)), direct.to_vector(&b1), "[{name}] n={n}");
            }
        }
    }
}

#[test]
fn low_degrees_match_the_literal_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, rep) in z2_reps().into_iter().chain(sampled_reps()) {
        for n in 0..=2 {
            for _ in 0..5 {
                let tc = TotalCochain::random(&rep, n, &mut rng).unwrap();
                assert_eq!(cx(&rep).nabla(&tc).unwrap(), literal_low_degree_nabla(&rep, &tc), "[{name}] n={n}");
            }
        }
    }
}

#[test]
fn nabla_squares_to_zero_by_matrices() {
    for (name, rep) in z2_reps() {
        for n in 0..=3 {
            let r = cx(&rep).verify_nabla2(n, Nabla2Mode::Exhaustive, 0, SampleOptions::default()).unwrap();
            assert_eq!(r.method, "matrix");
            assert!(r.holds(), "[{name}] n={n}: {:?}", r.witnesses);
        }
    }
}

#[test]
fn nabla_squares_to_zero_pointwise() {
    for (name, rep) in z2_reps().into_iter().chain(sampled_reps()) {
        for n in 0..=3 {
            let r = cx(&rep).verify_nabla2(n, Nabla2Mode::Sampled, 42, SampleOptions::default()).unwrap();
            assert!(r.holds(), "[{name}] n={n}: {:?}", r.witnesses);
            assert!(r.exhaustive || r.checked >= 200, "[{name}] n={n}: only {} points", r.checked);
        }
    }
}

#[test]
fn regular_representations_square_to_zero() {
    let rep = testkit::regular(testkit::z3_in_s3(), Field::Prime(7));
    let opts = SampleOptions { exhaustive_limit: 0, samples: 60 };
    for n in 0..=3 {
        let r = cx(&rep).verify_nabla2(n, Nabla2Mode::Sampled, 9, opts).unwrap();
        assert!(r.holds(), "n={n}: {:?}", r.witnesses);
    }
}

#[test]
fn unswapped_delta21_breaks_nabla_squared() {
    let rep = testkit::s3_sign();
    let cfg = DiffConfig::default().with_mutation(Mutation::UnswappedDelta21);
    let r = TotalComplex::new(&rep, cfg).verify_nabla2(1, Nabla2Mode::Sampled, 1, SampleOptions::default()).unwrap();
    assert!(!r.holds());
    // δ₍₁₎ then the front Δ₂,₁: (0,0,1) → (0,0,2) → (2,1,0)
    let w = &r.witnesses[0];
    assert_eq!((w.dst, w.sources.as_slice()), (Tri::new(2, 1, 0), &[Tri::new(0, 0, 1)][..]));
}

#[test]
fn fixed_vectors_are_cocycles() {
    for (name, rep) in z2_reps().into_iter().chain(sampled_reps()) {
        for v in h0_fixed(&rep) {
            let c0 = Cochain::from_fn(&rep, Tri::new(0, 0, 0), |_| v.clone()).unwrap();
            let tc = TotalCochain::from_components(0, [c0], &rep).unwrap();
            assert!(cx(&rep).nabla(&tc).unwrap().is_zero(), "[{name}]");
        }
    }
}

#[test]
fn h0_is_the_fixed_subspace() {
    let mut all = z2_reps();
    all.extend(sampled_reps());
    all.push(("z3<s3-regular", testkit::regular(testkit::z3_in_s3(), Field::Prime(5))));
    for (name, rep) in all {
        let h = cx(&rep).cohomology(0, false).unwrap();
        let fixed = h0_fixed(&rep);
        assert_eq!(h.dim, fixed.len(), "[{name}]");
        assert!(same_span(rep.field(), &h.kernel, &fixed), "[{name}]");
    }
    let trivial = TwoRep::trivial(testkit::s3_conjugation(), TwoVectorSpace::unit(Field::Prime(3), 2));
    assert_eq!(cx(&trivial).cohomology(0, false).unwrap().dim, 2);
    let f3 = Field::Prime(3);
    let sign = testkit::classical(FiniteGroup::cyclic(2).unwrap(), f3, vec![Matrix::identity(f3, 1), Matrix::from_i64(f3, &[&[2]])]);
    assert!(h0_fixed(&sign).is_empty());
}

#[test]
fn bar_oracle_classical_values() {
    let f2 = Field::Prime(2);
    let f3 = Field::Prime(3);
    let z2 = FiniteGroup::cyclic(2).unwrap();
    let z3 = FiniteGroup::cyclic(3).unwrap();
    let triv = |f: Field, n: usize| vec![Matrix::identity(f, 1); n];
    for n in 0..=3 {
        assert_eq!(bar_cohomology_dim(&z2, &triv(f2, 2), f2, n), 1, "H^{n}(Z/2;F2)");
        assert_eq!(bar_cohomology_dim(&z3, &triv(f3, 3), f3, n), 1, "H^{n}(Z/3;F3)");
    }
    // coprime coefficients are acyclic
    let sign = vec![Matrix::identity(f3, 1), Matrix::from_i64(f3, &[&[2]])];
    for n in 0..=3 {
        assert_eq!(bar_cohomology_dim(&z2, &sign, f3, n), 0);
    }
    assert_eq!(bar_cohomology_dim(&z2, &triv(f3, 2), f3, 0), 1);
    assert_eq!(bar_cohomology_dim(&z2, &triv(f3, 2), f3, 2), 0);
}

#[test]
fn classical_reduction_matches_bar_oracle() {
    let f2 = Field::Prime(2);
    let f3 = Field::Prime(3);
    let cases = vec![
        (FiniteGroup::cyclic(2).unwrap(), f2, vec![Matrix::identity(f2, 1); 2]),
        (FiniteGroup::cyclic(3).unwrap(), f3, vec![Matrix::identity(f3, 1); 3]),
        (FiniteGroup::cyclic(2).unwrap(), f3, vec![Matrix::identity(f3, 1), Matrix::from_i64(f3, &[&[2]])]),
        (FiniteGroup::cyclic(2).unwrap(), f2, vec![Matrix::identity(f2, 2), Matrix::from_i64(f2, &[&[1, 1], &[0, 1]])]),
        (FiniteGroup::symmetric(3).unwrap(), f3, vec![Matrix::identity(f3, 1); 6]),
    ];
    for (h, f, rho) in cases {
        let rep = testkit::classical(h.clone(), f, rho.clone());
        for n in 0..=2 {
            let want = bar_cohomology_dim(&h, &rho, f, n);
            for sub in [false, true] {
                let got = cx(&rep).cohomology(n, sub).unwrap();
                assert_eq!(got.dim, want, "|H|={} n={n} sub={sub}", h.order());
                assert_eq!(got.representatives.len(), want);
            }
        }
    }
}

#[test]
fn degree_one_cocycles_are_crossed_functors() {
    let mut all = z2_reps();
    all.extend(sampled_reps());
    for (name, rep) in all {
        let c = cx(&rep);
        let h1 = c.cohomology(1, false).unwrap();
        let b1 = c.basis(1).unwrap();
        let vblock = b1.block(Tri::new(1, 0, 0)).unwrap();
        for v in &h1.kernel {
            assert!(v[vblock.offset..vblock.offset + vblock.len()].iter().all(|s| s.is_zero()), "[{name}] v ≠ 0");
            let tc = TotalCochain::from_vector(&rep, &b1, v).unwrap();
            let w = CrossedFunctorWitness::from_cochain(&rep, &tc).unwrap();
            let rep_check = w.check(&rep).unwrap();
            assert!(rep_check.holds(), "[{name}] {:?}", rep_check.violations);
            assert_eq!(w.to_cochain(&rep).unwrap(), tc);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5 {
            let v: Vector = (0..rep.dim_v()).map(|_| crate::grid::random_scalar(rep.field(), &mut rng)).collect();
            let w = principal_witness(&rep, &v);
            assert!(w.check(&rep).unwrap().holds(), "[{name}] principal");
            let tc = w.to_cochain(&rep).unwrap();
            assert!(c.is_coboundary(&b1, &tc.to_vector(&b1), false).unwrap(), "[{name}] principal not in im ∇⁰");
        }
        assert!(CrossedFunctorWitness::zero(&rep).check(&rep).unwrap().holds());
    }
}

/// Over F₂ on ℤ/2 every (λ₀, λ₁) with λ₁(1) = 0 (the normalized ones) can
/// be enumerated; those passing the four equations are exactly ker ∇¹.
#[test]
fn crossed_functors_are_exactly_the_kernel() {
    let rep = testkit::z2_unipotent();
    let f = rep.field();
    let c = cx(&rep);
    let h1 = c.cohomology(1, false).unwrap();
    let (dv, dw) = (rep.dim_v(), rep.dim_w());
    let mut passing = 0;
    for code in 0..1usize << (2 * dv + dw) {
        let bit = |k: usize| f.from_i64(((code >> k) & 1) as i64);
        let lambda0 = (0..2).map(|h| (0..dv).map(|k| bit(h * dv + k)).collect()).collect();
        let lambda1 = vec![rep.zero_w(), (0..dw).map(|k| bit(2 * dv + k)).collect()];
        let w = CrossedFunctorWitness { lambda0, lambda1 };
        let ok = w.check(&rep).unwrap().holds();
        assert_eq!(ok, c.nabla(&w.to_cochain(&rep).unwrap()).unwrap().is_zero(), "{w:?}");
        passing += ok as usize;
    }
    assert_eq!(passing, 1 << h1.kernel_dim);
}

#[test]
fn violations_name_the_failed_equation() {
    let rep = testkit::s3_sign();
    let mut w = CrossedFunctorWitness::zero(&rep);
    w.lambda1[1] = vec![rep.field().one()];
    let r = w.check(&rep).unwrap();
    assert!(r.violations.iter().any(|v| matches!(v, CrossedFunctorViolation::Lambda1 { .. })));
    assert!(r.violations.iter().any(|v| matches!(v, CrossedFunctorViolation::SourceTarget { .. })));
    let json = serde_json::to_string(&r).unwrap();
    assert!(json.contains("lambda1 crossed homomorphism"), "{json}");
    let mut w = CrossedFunctorWitness::zero(&rep);
    w.lambda0[2] = vec![rep.field().one()];
    assert!(w.check(&rep).unwrap().violations.iter().any(|v| matches!(v, CrossedFunctorViolation::Lambda0 { .. })));
}

#[test]
fn h2_subcomplex_and_full_complex_agree() {
    let mut all = z2_reps();
    all.push(("s3-sign", testkit::s3_sign()));
    all.push(("z2-trivial-f2", TwoRep::trivial(testkit::z2_identity(), TwoVectorSpace::unit(Field::Prime(2), 1))));
    for (name, rep) in all {
        let full = cx(&rep).cohomology(2, false).unwrap();
        let sub = cx(&rep).cohomology(2, true).unwrap();
        assert_eq!(full.dim, sub.dim, "[{name}]");
    }
}

#[test]
fn rephrased_identities_hold() {
    let rep = testkit::s3_sign();
    let c = cx(&rep);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let cases = [(1, 0, Tri::new(1, 1, 0)), (2, 1, Tri::new(1, 1, 1)), (2, 2, Tri::new(0, 1, 2)), (2, 0, Tri::new(1, 0, 2)), (3, 1, Tri::new(0, 1, 1)), (5, 1, Tri::new(0, 0, 3)), (5, 2, Tri::new(0, 0, 3)), (4, 2, Tri::new(0, 0, 3))];
    for (n, m, src) in cases {
        let tc = TotalCochain::random(&rep, src.degree(), &mut rng).unwrap();
        let r = c.rephrase_identity(n, m, tc.component(src).unwrap(), 3, SampleOptions::default()).unwrap();
        assert!(r.holds(), "n={n} m={m} on {src}: {:?}", r.witness);
        assert!(r.exhaustive || r.points >= 200);
    }
    let z = Cochain::zero(&rep, Tri::new(0, 0, 4)).unwrap();
    assert!(matches!(c.rephrase_identity(6, 3, &z, 0, SampleOptions::default()), Err(TotalError::Diff(DiffError::Unsupported { .. }))));
    assert!(c.rephrase_identity(4, 1, &Cochain::zero(&rep, Tri::new(0, 0, 1)).unwrap(), 0, SampleOptions::default()).is_err());
}

#[test]
fn unswapped_delta21_breaks_the_rephrased_identity() {
    let rep = testkit::s3_sign();
    let cfg = DiffConfig::default().with_mutation(Mutation::UnswappedDelta21);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let tc = TotalCochain::random(&rep, 2, &mut rng).unwrap();
    let r = TotalComplex::new(&rep, cfg)
        .rephrase_identity(3, 1, tc.component(Tri::new(0, 0, 2)).unwrap(), 0, SampleOptions::default())
        .unwrap();
    assert!(!r.holds());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn nabla_is_linear(seed in any::<u64>(), a in 0i64..3, n in 0usize..3) {
        let rep = testkit::z2_f3();
        let c = cx(&rep);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = TotalCochain::random(&rep, n, &mut rng).unwrap();
        let y = TotalCochain::random(&rep, n, &mut rng).unwrap();
        let b = c.basis(n).unwrap();
        let f = rep.field();
        let s = f.from_i64(a);
        let comb: Vector = x.to_vector(&b).iter().zip(y.to_vector(&b)).map(|(u, v)| &(&s * u) + &v).collect();
        let lhs = c.nabla(&TotalCochain::from_vector(&rep, &b, &comb).unwrap()).unwrap();
        let b1 = c.basis(n + 1).unwrap();
        let rhs: Vector = c.nabla(&x).unwrap().to_vector(&b1).iter().zip(c.nabla(&y).unwrap().to_vector(&b1)).map(|(u, v)| &(&s * u) + &v).collect();
        prop_assert_eq!(lhs.to_vector(&b1), rhs);
        prop_assert_eq!(lhs.degree(), n + 1);
    }

    #[test]
    fn cocycles_of_random_coboundaries(seed in any::<u64>(), n in 0usize..3) {
        let rep = testkit::z2_unipotent();
        let c = cx(&rep);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = TotalCochain::random(&rep, n, &mut rng).unwrap();
        prop_assert!(c.nabla(&c.nabla(&x).unwrap()).unwrap().is_zero());
    }
}

use rand_chacha::ChaCha8Rng;

