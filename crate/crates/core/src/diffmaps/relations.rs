//! Linear relations among composites of grid maps, e.g. the homotopy
//! identities that the difference maps satisfy. A relation vanishes exactly
//! when its residual form is zero at every point of its target.

use rand::Rng;
use serde::Serialize;

use super::{DiffError, DiffMaps, Op};
use crate::grid::LinForm;
use crate::group::{Point, Tri};

/// Σ coeff · (ops[0] ∘ ops[1] ∘ …), composites listed outermost first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub terms: Vec<(i64, Vec<Op>)>,
}

/// How a relation is checked on one source tridegree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    /// Targets with at most this many points are checked exhaustively.
    pub exhaustive_limit: usize,
    /// Number of random target points otherwise.
    pub samples: usize,
    /// Restrict to normalized cochains (vanishing when some f_i = 1).
    pub normalized: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { exhaustive_limit: 4096, samples: 200, normalized: true }
    }
}

/// Outcome of checking one relation on one source tridegree.
#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub src: Tri,
    pub dst: Option<Tri>,
    pub points: usize,
    pub exhaustive: bool,
    pub failures: usize,
    pub witness: Option<Point>,
}

impl RelationCheck {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

fn sgn(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

use Op::{Del, Delta, Dr, D};

const DD: Op = D(1, 1);

impl Relation {
    pub fn new(name: impl Into<String>, terms: Vec<(i64, Vec<Op>)>) -> Relation {
        Relation { name: name.into(), terms }
    }

    /// The common target of the non-vanishing terms.
    pub fn target(&self, src: Tri) -> Result<Option<Tri>, DiffError> {
        let mut dst = None;
        for (_, ops) in &self.terms {
            if let Some(t) = DiffMaps::chain_target(ops, src) {
                match dst {
                    None => dst = Some(t),
                    Some(d) if d != t => {
                        return Err(DiffError::Range(format!("{}: terms land in {d} and {t}", self.name)));
                    }
                    _ => {}
                }
            }
        }
        Ok(dst)
    }

    /// The residual form at a point of the target.
    pub fn residual(&self, dm: &DiffMaps<'_>, src: Tri, x: &Point) -> Result<LinForm, DiffError> {
        self.residual_on(dm, src, x, false)
    }

    /// The residual form, optionally restricted to normalized cochains.
    pub fn residual_on(&self, dm: &DiffMaps<'_>, src: Tri, x: &Point, normalized: bool) -> Result<LinForm, DiffError> {
        let dst = x.tri();
        let grid = dm.grid();
        let mut acc = grid.empty_form(src, dst.r);
        for (c, ops) in &self.terms {
            if *c == 0 {
                continue;
            }
            if let Some(f) = dm.chain_form(ops, src, x)? {
                acc.add_scaled(&grid.field().from_i64(*c), &f);
            }
        }
        if normalized {
            let xm = grid.xm();
            acc.retain(|i| xm.decode(src, i).map_or(true, |y| !y.f.contains(&xm.g().identity())));
        }
        Ok(acc)
    }

    /// Checks the relation on `src`: every target point when the target is
    /// small enough, otherwise a random sample.
    pub fn check<R: Rng>(&self, dm: &DiffMaps<'_>, src: Tri, opts: CheckOptions, rng: &mut R) -> Result<RelationCheck, DiffError> {
        let mut report =
            RelationCheck { name: self.name.clone(), src, dst: None, points: 0, exhaustive: true, failures: 0, witness: None };
        let Some(dst) = self.target(src)? else {
            return Ok(report);
        };
        report.dst = Some(dst);
        let xm = dm.grid().xm();
        let n = crate::grid::domain(xm, dst)?;
        let exhaustive = n <= opts.exhaustive_limit;
        report.exhaustive = exhaustive;
        let count = if exhaustive { n } else { opts.samples };
        for k in 0..count {
            let idx = if exhaustive { k } else { rng.gen_range(0..n) };
            let x = xm.decode(dst, idx).map_err(crate::grid::GridError::from)?;
            report.points += 1;
            if !self.residual_on(dm, src, &x, opts.normalized)?.is_zero() {
                report.failures += 1;
                if report.witness.is_none() {
                    report.witness = Some(x);
                }
            }
        }
        Ok(report)
    }

    // ---- the catalogue ----

    /// δ∂ = ∂δ + Δδ′ on r = 0.
    pub fn front_page() -> Relation {
        Relation::new("front page (r=0)", vec![(1, vec![Delta, Del]), (-1, vec![Del, Delta]), (-1, vec![DD, Dr])])
    }

    /// (∂δ − δ∂) = Δδ₍₁₎ − δ′Δ on r = 1.
    pub fn homotopy_r1() -> Relation {
        Relation::new(
            "homotopy (r=1)",
            vec![(1, vec![Del, Delta]), (-1, vec![Delta, Del]), (-1, vec![DD, Dr]), (1, vec![Dr, DD])],
        )
    }

    /// (−1)^r(δ∂ − ∂δ) = Δδ₍₁₎ − δ₍₁₎Δ on r ≥ 2.
    pub fn homotopy(r: usize) -> Relation {
        let s = sgn(r);
        Relation::new(
            format!("homotopy (r={r})"),
            vec![(s, vec![Delta, Del]), (-s, vec![Del, Delta]), (-1, vec![DD, Dr]), (1, vec![Dr, DD])],
        )
    }

    /// Δ∂ + ∂Δ = (−1)^r(δ₍₁₎Δ₂₁ − Δ₂₁δ₍₁₎).
    pub fn d21(r: usize) -> Relation {
        let s = sgn(r);
        Relation::new(
            format!("D21 (r={r})"),
            vec![(1, vec![DD, Del]), (1, vec![Del, DD]), (-s, vec![Dr, D(2, 1)]), (s, vec![D(2, 1), Dr])],
        )
    }

    /// Δδ + δΔ = (−1)^r(δ₍₁₎Δ₁₂ − Δ₁₂δ₍₁₎).
    pub fn d12(r: usize) -> Relation {
        let s = sgn(r);
        Relation::new(
            format!("D12 (r={r})"),
            vec![(1, vec![DD, Delta]), (1, vec![Delta, DD]), (-s, vec![Dr, D(1, 2)]), (s, vec![D(1, 2), Dr])],
        )
    }

    fn d22_lhs() -> Vec<(i64, Vec<Op>)> {
        vec![
            (1, vec![D(2, 1), Delta]),
            (-1, vec![D(1, 2), Del]),
            (-1, vec![DD, DD]),
            (-1, vec![Del, D(1, 2)]),
            (1, vec![Delta, D(2, 1)]),
        ]
    }

    /// Δ₂₁δ − Δ₁₂∂ − ΔΔ − ∂Δ₁₂ + δΔ₂₁ = −Δ₂₂δ₍₁₎ on r = 2.
    pub fn d22_first() -> Relation {
        let mut t = Self::d22_lhs();
        t.push((1, vec![D(2, 2), Dr]));
        Relation::new("D22 first (r=2)", t)
    }

    /// The same left side equals Δ₂₂δ₍₁₎ − δ′Δ₂₂ on r = 3.
    pub fn d22_second() -> Relation {
        let mut t = Self::d22_lhs();
        t.push((-1, vec![D(2, 2), Dr]));
        t.push((1, vec![Dr, D(2, 2)]));
        Relation::new("D22 second (r=3)", t)
    }

    /// Δ₃₁δ + Δ₂₂∂ + Δ₂₁Δ + ΔΔ₂₁ − ∂Δ₂₂ + δΔ₃₁ = Δ₃₂δ₍₁₎ on r = 3.
    pub fn d32() -> Relation {
        Relation::new(
            "D32 (r=3)",
            vec![
                (1, vec![D(3, 1), Delta]),
                (1, vec![D(2, 2), Del]),
                (1, vec![D(2, 1), DD]),
                (1, vec![DD, D(2, 1)]),
                (-1, vec![Del, D(2, 2)]),
                (1, vec![Delta, D(3, 1)]),
                (-1, vec![D(3, 2), Dr]),
            ],
        )
    }

    /// Δ₂₂δ + Δ₁₃∂ + Δ₁₂Δ + ΔΔ₁₂ + ∂Δ₁₃ − δΔ₂₂ = Δ₂₃δ₍₁₎ on r = 3.
    pub fn d23() -> Relation {
        Relation::new(
            "D23 (r=3)",
            vec![
                (1, vec![D(2, 2), Delta]),
                (1, vec![D(1, 3), Del]),
                (1, vec![D(1, 2), DD]),
                (1, vec![DD, D(1, 2)]),
                (1, vec![Del, D(1, 3)]),
                (-1, vec![Delta, D(2, 2)]),
                (-1, vec![D(2, 3), Dr]),
            ],
        )
    }

    /// ∂Δ₂₁ − Δ₂₁∂ = Δ₃₁δ₍₁₎ − δ′Δ₃₁ on r = 3.
    pub fn d31() -> Relation {
        Relation::new(
            "D31 (r=3)",
            vec![(1, vec![Del, D(2, 1)]), (-1, vec![D(2, 1), Del]), (-1, vec![D(3, 1), Dr]), (1, vec![Dr, D(3, 1)])],
        )
    }

    /// Δ₁₂δ − δΔ₁₂ = Δ₁₃δ₍₁₎ − δ′Δ₁₃ on r = 3.
    pub fn d13() -> Relation {
        Relation::new(
            "D13 (r=3)",
            vec![(1, vec![D(1, 2), Delta]), (-1, vec![Delta, D(1, 2)]), (-1, vec![D(1, 3), Dr]), (1, vec![Dr, D(1, 3)])],
        )
    }

    /// (−1)^{r+1}Δ_{r,1}∂ + ∂Δ_{r,1} = (−1)^{r+1}Δ_{r+1,1}δ₍₁₎ on r.
    pub fn wall_row(r: usize) -> Relation {
        let s = sgn(r + 1);
        Relation::new(
            format!("wall Δ_{{r,1}} (r={r})"),
            vec![(s, vec![D(r, 1), Del]), (1, vec![Del, D(r, 1)]), (-s, vec![D(r + 1, 1), Dr])],
        )
    }

    /// δΔ_{1,r} + (−1)^{r+1}Δ_{1,r}δ = Δ_{1,r+1}δ₍₁₎ on r.
    pub fn wall_column(r: usize) -> Relation {
        let s = sgn(r + 1);
        Relation::new(
            format!("wall Δ_{{1,r}} (r={r})"),
            vec![(1, vec![Delta, D(1, r)]), (s, vec![D(1, r), Delta]), (-1, vec![D(1, r + 1), Dr])],
        )
    }

    /// The (n−m, m) component of ∇² = 0 on source level r:
    /// Σ_{0<i+j<n} (−1)^{i(i−n)+(i+1)(j+1)} Δ_{n−m−i,m−j}Δ_{i,j}
    ///   = (−1)^r (δ₍₁₎Δ_{n−m,m} − Δ_{n−m,m}δ₍₁₎),
    /// with Δ₁,₀ = ∂ and Δ₀,₁ = δ.
    pub fn component(n: usize, m: usize, r: usize) -> Relation {
        assert!(m <= n && n >= 1);
        let mut terms = Vec::new();
        for i in 0..=n - m {
            for j in 0..=m {
                if i + j == 0 || i + j >= n {
                    continue;
                }
                let e = i * (i + n) + (i + 1) * (j + 1); // i(i−n) ≡ i(i+n) mod 2
                terms.push((sgn(e), vec![D(n - m - i, m - j), D(i, j)]));
            }
        }
        let s = sgn(r);
        terms.push((-s, vec![Dr, D(n - m, m)]));
        terms.push((s, vec![D(n - m, m), Dr]));
        Relation::new(format!("component n={n} m={m} (r={r})"), terms)
    }
}
