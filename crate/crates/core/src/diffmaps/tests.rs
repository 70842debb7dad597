use super::*;
use crate::linalg::Field;
use crate::rep::TwoRep;
use crate::testkit;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn srcs(r: usize, max_pq: usize) -> Vec<Tri> {
    let mut v = vec![];
    for p in 0..=max_pq {
        for q in 0..=max_pq {
            v.push(Tri::new(p, q, r));
        }
    }
    v
}

/// Checks a relation on every source in `tris`; returns one line per failure.
fn failures(rep: &TwoRep, cfg: DiffConfig, rel: &Relation, tris: &[Tri], seed: u64) -> Vec<String> {
    let dm = DiffMaps::new(Grid::new(rep), cfg);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![];
    for &t in tris {
        match rel.check(&dm, t, CheckOptions::default(), &mut rng) {
            Ok(c) if c.holds() => {
                assert!(c.exhaustive || c.points >= 200, "{} at {t}: only {} points", c.name, c.points);
            }
            Ok(c) => out.push(format!("{} at {t}: {}/{} fail, e.g. {:?}", c.name, c.failures, c.points, c.witness)),
            Err(e) => out.push(format!("{} at {t}: {e}", rel.name)),
        }
    }
    out
}

fn instances() -> Vec<(&'static str, TwoRep)> {
    vec![
        ("z2-unipotent", testkit::z2_unipotent()),
        ("z2-f3", testkit::z2_f3()),
        ("s3-sign", testkit::s3_sign()),
        ("z3<s3-regular", testkit::regular(testkit::z3_in_s3(), Field::Prime(7))),
    ]
}

/// The named identities and the r on which each is stated.
fn named() -> Vec<(Relation, usize)> {
    vec![
        (Relation::front_page(), 0),
        (Relation::homotopy_r1(), 1),
        (Relation::homotopy(2), 2),
        (Relation::homotopy(3), 3),
        (Relation::d21(2), 2),
        (Relation::d21(3), 3),
        (Relation::d12(2), 2),
        (Relation::d12(3), 3),
        (Relation::d22_first(), 2),
        (Relation::d22_second(), 3),
        (Relation::d32(), 3),
        (Relation::d23(), 3),
        (Relation::d31(), 3),
        (Relation::d13(), 3),
    ]
}

fn assert_all_hold(rels: &[(Relation, usize)], cfg: DiffConfig) {
    let mut bad = vec![];
    for (name, rep) in instances() {
        for (rel, r) in rels {
            bad.extend(failures(&rep, cfg, rel, &srcs(*r, 1), 11).into_iter().map(|s| format!("[{name}] {s}")));
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}

#[test]
fn named_identities_hold() {
    assert_all_hold(&named(), DiffConfig::default());
}

#[test]
fn wall_identities_hold() {
    let rels: Vec<_> =
        (1..=4).flat_map(|r| [(Relation::wall_row(r), r), (Relation::wall_column(r), r)]).collect();
    assert_all_hold(&rels, DiffConfig::default());
}

#[test]
fn nabla_components_vanish_through_degree_five() {
    let mut rels = vec![];
    for r in 0..=3 {
        for n in 1..=r + 2 {
            for m in 0..=n {
                rels.push((Relation::component(n, m, r), r));
            }
        }
    }
    assert_all_hold(&rels, DiffConfig::default());
}

#[test]
fn identities_hold_on_more_crossed_modules() {
    let insts = [
        ("z3-inversion", testkit::regular(testkit::z3_inversion(), Field::Prime(5))),
        ("s3-regular", testkit::regular(testkit::s3_conjugation(), Field::Prime(5))),
    ];
    let mut bad = vec![];
    for (name, rep) in &insts {
        for (rel, r) in named() {
            bad.extend(failures(rep, DiffConfig::default(), &rel, &srcs(r, 1), 5).into_iter().map(|s| format!("[{name}] {s}")));
        }
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}

#[test]
fn identities_need_normalized_cochains() {
    let rep = testkit::s3_sign();
    let dm = DiffMaps::new(Grid::new(&rep), DiffConfig::default());
    let opts = CheckOptions { normalized: false, ..Default::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let c = Relation::d21(2).check(&dm, Tri::new(0, 0, 2), opts, &mut rng).unwrap();
    assert!(!c.holds());
    let w = c.witness.unwrap();
    let full = Relation::d21(2).residual_on(&dm, Tri::new(0, 0, 2), &w, false).unwrap();
    let norm = Relation::d21(2).residual_on(&dm, Tri::new(0, 0, 2), &w, true).unwrap();
    assert!(!full.is_zero() && norm.is_zero());
}

#[test]
fn alternative_readings_break_their_identity() {
    let d = DiffConfig::default();
    let cases: Vec<(DiffConfig, Relation, usize)> = vec![
        (DiffConfig { p23_tail: P23Tail::RowPolynomial, ..d }, Relation::d23(), 3),
        (DiffConfig { p13_head: P13Head::Lower, ..d }, Relation::d13(), 3),
        (DiffConfig { p32_face: P32Face::DropFirst, ..d }, Relation::d32(), 3),
        (DiffConfig { p22_off_arg: P22OffArg::H11, ..d }, Relation::d22_second(), 3),
        (DiffConfig { p21_step: StepArrow::First, ..d }, Relation::d21(3), 3),
        (DiffConfig { p21_step: StepArrow::Composite, ..d }, Relation::d21(3), 3),
        (DiffConfig { p12_step: StepArrow::Second, ..d }, Relation::d12(3), 3),
        (DiffConfig { p12_step: StepArrow::Composite, ..d }, Relation::d12(3), 3),
        (DiffConfig { recursion: Reading::Printed, ..d }, Relation::d21(3), 3),
        (DiffConfig { recursion: Reading::Printed, ..d }, Relation::d12(3), 3),
        (DiffConfig { p22_off: Reading::Printed, ..d }, Relation::d22_second(), 3),
    ];
    let rep = testkit::s3_sign();
    for (cfg, rel, r) in cases {
        assert!(!failures(&rep, cfg, &rel, &srcs(r, 1), 2).is_empty(), "{cfg:?} should break {}", rel.name);
        assert!(failures(&rep, d, &rel, &srcs(r, 1), 2).is_empty());
    }
}

#[test]
fn recast_p22_agrees_with_direct_form() {
    for xm in [testkit::z2_identity(), testkit::s3_conjugation(), testkit::z3_in_s3()] {
        let rep = testkit::regular(xm, Field::Prime(2));
        let dm = DiffMaps::new(Grid::new(&rep), DiffConfig::default());
        let xm = dm.grid().xm();
        let t = Tri::new(2, 2, 0);
        for idx in 0..crate::grid::domain(xm, t).unwrap() {
            let x = xm.decode(t, idx).unwrap();
            let (direct, recast) = dm.p22_forms(&GammaBlock::new(xm, x.rows.clone()));
            assert!(direct.same_as(&recast), "at {x:?}: {direct:?} vs {recast:?}");
        }
    }
}

#[test]
fn recast_p22_drives_the_same_identities() {
    let cfg = DiffConfig { p22_form: P22Form::Recast, ..DiffConfig::default() };
    let rep = testkit::s3_sign();
    for (rel, r) in [(Relation::d22_first(), 2), (Relation::d32(), 3), (Relation::d23(), 3)] {
        let f = failures(&rep, cfg, &rel, &srcs(r, 1), 4);
        assert!(f.is_empty(), "{}", f.join("\n"));
    }
}

/// (displayed expansion, largest collected size over random blocks).
fn front_counts(a: usize, b: usize) -> (usize, usize) {
    let rep = testkit::regular(testkit::s3_conjugation(), Field::Prime(2));
    let dm = DiffMaps::new(Grid::new(&rep), DiffConfig::default());
    let xm = dm.grid().xm();
    let t = Tri::new(a, b, 0);
    let n = crate::grid::domain(xm, t).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut shown, mut most) = (0, 0);
    for _ in 0..3000 {
        let x = xm.decode(t, rng.gen_range(0..n)).unwrap();
        let p = dm.front_polynomial(a, b, &GammaBlock::new(xm, x.rows.clone())).unwrap();
        shown = p.term_count();
        most = most.max(p.collected().len());
    }
    (shown, most)
}

#[test]
fn p32_expands_to_seventeen_terms() {
    assert_eq!(front_counts(3, 2), (17, 17));
}

#[test]
fn p23_collects_to_fifteen_terms() {
    // One displayed ± pair always cancels.
    assert_eq!(front_counts(2, 3), (17, 15));
}

#[test]
fn base_off_page_polynomials_have_five_terms() {
    let rep = testkit::regular(testkit::s3_conjugation(), Field::Prime(2));
    let dm = DiffMaps::new(Grid::new(&rep), DiffConfig::default());
    let xm = dm.grid().xm();
    let x = xm.decode(Tri::new(2, 2, 0), 12345).unwrap();
    let blk = GammaBlock::new(xm, x.rows.clone());
    assert_eq!(dm.off_polynomial(2, 1, 3, &[4], &blk.corner(1, 2)).unwrap().term_count(), 5);
    assert_eq!(dm.off_polynomial(1, 2, 3, &[4], &blk.corner(2, 1)).unwrap().term_count(), 5);
    assert_eq!(dm.off_polynomial(1, 1, 4, &[1, 2, 3], &blk.corner(1, 1)).unwrap().term_count(), 6);
    assert!(matches!(dm.off_polynomial(1, 1, 4, &[1], &blk.corner(1, 1)), Err(DiffError::Range(_))));
}

#[test]
fn c_pair_by_hand() {
    // ℤ/2 with i = id and trivial action: everything is addition mod 2.
    let rep = testkit::z2_f3();
    let dm = DiffMaps::new(Grid::new(&rep), DiffConfig::default());
    let y = crate::group::Arrow { g: 1, h: 0 };
    // r = 3, n = 1: (f₁^t, g⁻¹, f₂^h g) and (f₁^t, g⁻¹, g).
    assert_eq!(dm.c_pair(3, 1, &[1, 1], y).unwrap(), (vec![1, 1, 0], vec![1, 1, 1]));
    // r = 3, n = 2: (g⁻¹, f₁^h, f₂^h g) and (g⁻¹, f₁^h, g).
    assert_eq!(dm.c_pair(3, 2, &[0, 1], y).unwrap(), (vec![1, 0, 0], vec![1, 0, 1]));
    assert!(dm.c_pair(3, 3, &[0, 1], y).is_err());
}

#[test]
fn vanishing_maps_are_rejected() {
    let rep = testkit::z2_f3();
    let dm = DiffMaps::new(Grid::new(&rep), DiffConfig::default());
    let x = dm.grid().xm().decode(Tri::new(2, 2, 0), 0).unwrap();
    assert!(matches!(dm.delta_ab(2, 2, Tri::new(0, 0, 2), &x), Err(DiffError::Range(_))));
    assert_eq!(Op::D(2, 2).target(Tri::new(0, 0, 2)), None);
    assert_eq!(Op::D(2, 2).target(Tri::new(0, 0, 3)), Some(Tri::new(2, 2, 0)));
}

#[test]
fn mutations_break_some_identity() {
    let mut muts = vec![Mutation::UnswappedDelta21];
    for poly in PolyId::ALL {
        for index in 0..poly.displayed_terms() {
            muts.push(Mutation::DropTerm { poly, index });
        }
    }
    let rels = named();
    let rep = testkit::s3_sign();
    for m in muts {
        let cfg = DiffConfig::default().with_mutation(m);
        let broken = rels.iter().any(|(rel, r)| !failures(&rep, cfg, rel, &srcs(*r, 1), 6).is_empty());
        assert!(broken, "{m:?} went unnoticed");
    }
}

/// Prints every identity and ∇² component on every instance; run with
/// `--ignored --nocapture` when changing a formula.
#[test]
#[ignore]
fn survey() {
    let mut rels = named();
    for r in 1..=4 {
        rels.push((Relation::wall_row(r), r));
        rels.push((Relation::wall_column(r), r));
    }
    for r in 0..=3 {
        for n in 1..=r + 2 {
            for m in 0..=n {
                rels.push((Relation::component(n, m, r), r));
            }
        }
    }
    for (name, rep) in instances() {
        for (rel, r) in &rels {
            let f = failures(&rep, DiffConfig::default(), rel, &srcs(*r, 1), 7);
            println!("[{name}] {} {}", if f.is_empty() { "ok  " } else { "FAIL" }, rel.name);
            for s in f.iter().take(3) {
                println!("      {s}");
            }
        }
    }
}

/// Every map sends normalized cochains to normalized cochains: at a target
/// point with some f_i = 1 the form only reads degenerate source points.
#[test]
fn maps_preserve_normalized_cochains() {
    for (name, rep) in instances() {
        let dm = DiffMaps::new(Grid::new(&rep), DiffConfig::default());
        let xm = dm.grid().xm();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for src in (0..=4).flat_map(|r| [(0, 0), (0, 1), (1, 0), (1, 1)].map(|(p, q)| Tri::new(p, q, r))) {
            let mut ops = vec![Op::Del, Op::Delta, Op::Dr];
            ops.extend((1..=4).flat_map(|a| (1..=4).map(move |b| Op::D(a, b))).filter(|o| matches!(o, Op::D(a, b) if a + b <= (src.r + 1).min(5))));
            for op in ops {
                let Some(dst) = op.target(src) else { continue };
                if dst.r == 0 {
                    continue;
                }
                let n = crate::grid::domain(xm, dst).unwrap();
                for _ in 0..100 {
                    let mut x = xm.decode(dst, rng.gen_range(0..n)).unwrap();
                    let k = rng.gen_range(0..dst.r);
                    x.f[k] = 0;
                    let mut form = dm.op_form(op, src, &x).unwrap();
                    form.retain(|i| !xm.decode(src, i).unwrap().f.contains(&0));
                    assert!(form.is_zero(), "[{name}] {op} from {src} at {x:?}");
                }
            }
        }
    }
}
