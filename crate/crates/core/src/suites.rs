//! Named batches of identity checks, shared by the command-line front end
//! and the acceptance tests.
//!
//! * `grid`: ∂² = 0, δ² = 0, δ₍₁₎² = 0 (including δ₍₁₎δ′ = 0 on r = 0) and
//!   the commutators [∂, δ₍₁₎], [δ, δ₍₁₎].
//! * `diff`: the homotopy identities of the difference maps on r ≤ 3.
//! * `wall`: the wall identities for Δ_{r,1} and Δ_{1,r}, r = 1..=4.
//! * `appendix`: every (n−m, m) component of ∇² = 0 on r ≤ 3.
//!
//! Every relation is checked on the sources (p, q, r) with p, q ≤ `max_pq`
//! at the r on which it is stated; small targets exhaustively, large ones on
//! a seeded sample.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::diffmaps::{CheckOptions, DiffConfig, DiffError, DiffMaps, Mutation, Op, PolyId, Relation, RelationCheck};
use crate::grid::Grid;
use crate::group::Tri;
use crate::rep::TwoRep;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Grid,
    Diff,
    Wall,
    /// The components of ∇² = 0, which involve every higher Δ_{a,b}.
    #[serde(rename = "appendix")]
    Components,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Grid, Suite::Diff, Suite::Wall, Suite::Components];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Grid => "grid",
            Suite::Diff => "diff",
            Suite::Wall => "wall",
            Suite::Components => "appendix",
        }
    }

    /// Each relation of the suite with the r values it is checked on.
    pub fn relations(self) -> Vec<(Relation, Vec<usize>)> {
        use Op::{Del, Delta, Dr};
        match self {
            Suite::Grid => {
                let rs = vec![0, 1, 2];
                vec![
                    (Relation::new("∂∂", vec![(1, vec![Del, Del])]), rs.clone()),
                    (Relation::new("δδ", vec![(1, vec![Delta, Delta])]), rs.clone()),
                    (Relation::new("δ₍₁₎δ₍₁₎", vec![(1, vec![Dr, Dr])]), rs.clone()),
                    (Relation::new("[∂, δ₍₁₎]", vec![(1, vec![Dr, Del]), (-1, vec![Del, Dr])]), rs.clone()),
                    (Relation::new("[δ, δ₍₁₎]", vec![(1, vec![Dr, Delta]), (-1, vec![Delta, Dr])]), rs),
                ]
            }
            Suite::Diff => named_identities().into_iter().map(|(rel, r)| (rel, vec![r])).collect(),
            Suite::Wall => (1..=4)
                .flat_map(|r| [(Relation::wall_row(r), vec![r]), (Relation::wall_column(r), vec![r])])
                .collect(),
            Suite::Components => {
                let mut out = Vec::new();
                for r in 0..=3 {
                    for n in 1..=r + 2 {
                        for m in 0..=n {
                            out.push((Relation::component(n, m, r), vec![r]));
                        }
                    }
                }
                out
            }
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// The homotopy identities with the r on which each is stated.
pub fn named_identities() -> Vec<(Relation, usize)> {
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

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    pub seed: u64,
    pub check: CheckOptions,
    pub max_pq: usize,
    pub config: DiffConfig,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 0, check: CheckOptions::default(), max_pq: 1, config: DiffConfig::default() }
    }
}

/// The outcome of one suite on one representation.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<RelationCheck>,
}

impl SuiteReport {
    pub fn holds(&self) -> bool {
        self.checks.iter().all(RelationCheck::holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.holds())
    }

    /// Total number of target points examined.
    pub fn points(&self) -> usize {
        self.checks.iter().map(|c| c.points).sum()
    }
}

/// Runs one suite. The grid suite is checked on all cochains, the others on
/// normalized cochains, where the difference-map identities live.
pub fn run_suite(rep: &TwoRep, suite: Suite, opts: &SuiteOptions) -> Result<SuiteReport, DiffError> {
    let dm = DiffMaps::new(Grid::new(rep), opts.config);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let check = CheckOptions { normalized: opts.check.normalized && suite != Suite::Grid, ..opts.check };
    let mut checks = Vec::new();
    for (rel, rs) in suite.relations() {
        for r in rs {
            for p in 0..=opts.max_pq {
                for q in 0..=opts.max_pq {
                    let c = rel.check(&dm, Tri::new(p, q, r), check, &mut rng)?;
                    if c.dst.is_some() {
                        checks.push(c);
                    }
                }
            }
        }
    }
    Ok(SuiteReport { suite, checks })
}

/// Parses `unswapped-delta21` or `drop:<poly>:<index>`, e.g. `drop:p22:0`.
pub fn parse_mutation(s: &str) -> Result<Mutation, String> {
    if s == "unswapped-delta21" {
        return Ok(Mutation::UnswappedDelta21);
    }
    let bad = || format!("unknown mutation {s:?}; use unswapped-delta21 or drop:<poly>:<index>");
    let mut parts = s.split(':');
    if parts.next() != Some("drop") {
        return Err(bad());
    }
    let name = parts.next().ok_or_else(bad)?;
    let poly = PolyId::ALL.into_iter().find(|p| poly_name(*p) == name).ok_or_else(bad)?;
    let index: usize = parts.next().and_then(|x| x.parse().ok()).ok_or_else(bad)?;
    if parts.next().is_some() || index >= poly.displayed_terms() {
        return Err(format!("{s:?}: {name} has {} terms", poly.displayed_terms()));
    }
    Ok(Mutation::DropTerm { poly, index })
}

/// Lower-case name of a coordinate polynomial, as accepted by [`parse_mutation`].
pub fn poly_name(p: PolyId) -> &'static str {
    match p {
        PolyId::P22 => "p22",
        PolyId::P32 => "p32",
        PolyId::P23 => "p23",
        PolyId::P11Off => "p11-off",
        PolyId::P21Base => "p21-base",
        PolyId::P21Step => "p21-step",
        PolyId::P12Base => "p12-base",
        PolyId::P12Step => "p12-step",
        PolyId::P31Off => "p31-off",
        PolyId::P13Off => "p13-off",
        PolyId::P22Off => "p22-off",
    }
}

/// Every single-term mutation plus the unswapped front Δ₂,₁.
pub fn all_mutations() -> Vec<Mutation> {
    let mut out = vec![Mutation::UnswappedDelta21];
    for poly in PolyId::ALL {
        out.extend((0..poly.displayed_terms()).map(|index| Mutation::DropTerm { poly, index }));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit;

    #[test]
    fn every_suite_holds_on_z2() {
        let rep = testkit::z2_unipotent();
        for suite in Suite::ALL {
            let max_pq = if suite == Suite::Grid { 2 } else { 1 };
            let r = run_suite(&rep, suite, &SuiteOptions { max_pq, ..Default::default() }).unwrap();
            assert!(r.holds(), "{suite:?}: {:?}", r.failures().next());
            assert!(r.checks.iter().all(|c| c.exhaustive || c.points >= 200), "{suite:?}");
        }
    }

    #[test]
    fn mutations_round_trip_through_their_names() {
        for m in all_mutations() {
            let s = match m {
                Mutation::UnswappedDelta21 => "unswapped-delta21".to_string(),
                Mutation::DropTerm { poly, index } => format!("drop:{}:{index}", poly_name(poly)),
            };
            assert_eq!(parse_mutation(&s), Ok(m));
        }
        assert!(parse_mutation("drop:p22:5").is_err());
        assert!(parse_mutation("swap").is_err());
    }

    #[test]
    fn unswapped_delta21_fails_the_diff_suite() {
        let rep = testkit::s3_sign();
        let config = DiffConfig::default().with_mutation(Mutation::UnswappedDelta21);
        let r = run_suite(&rep, Suite::Diff, &SuiteOptions { config, ..Default::default() }).unwrap();
        let w = r.failures().next().expect("a failing identity");
        assert!(w.witness.is_some());
    }
}
