//! Trivial coefficients: pairs (F, f) with Ω_tot d(F, f, 0) = 0 in the
//! bisimplicial complex of the 2-group versus extension tuples for the
//! trivial representation on 0 → k.

use serde::Serialize;

use super::{build_extension, ExtensionError, ExtensionTuple, OMEGA0_TRI, PHI_TRI};
use crate::grid::{omega_tot_form, Cochain, TrivialCoefficients};
use crate::group::{CrossedModule, FiniteGroup, Point, Tri};
use crate::linalg::{Field, Scalar};

/// `big_f[h₀][h₁]` is F(h₀,h₁) on H×H and `f[g][h]` is f on the arrow g over h.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrivialPair {
    #[serde(rename = "F")]
    pub big_f: Vec<Vec<Scalar>>,
    pub f: Vec<Vec<Scalar>>,
}

/// A point of the target at which Ω_tot d(F, f, 0) is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairViolation {
    pub component: Tri,
    pub point: Point,
}

fn check_shape(xm: &CrossedModule, field: Field, pair: &TrivialPair) -> Result<(), ExtensionError> {
    let (ng, nh) = (xm.g().order(), xm.h().order());
    let ok = |t: &Vec<Vec<Scalar>>, n: usize, m: usize| {
        t.len() == n && t.iter().all(|r| r.len() == m && r.iter().all(|s| s.field() == field))
    };
    if ok(&pair.big_f, nh, nh) && ok(&pair.f, ng, nh) {
        Ok(())
    } else {
        Err(ExtensionError::Shape(format!("F must be {nh}×{nh} and f {ng}×{nh} over {}", field.name())))
    }
}

/// Every component of Ω_tot d(F, f, 0) that is nonzero, with one witness.
pub fn trivial_pair_violations(
    xm: &CrossedModule,
    field: Field,
    pair: &TrivialPair,
) -> Result<Vec<PairViolation>, ExtensionError> {
    check_shape(xm, field, pair)?;
    let tc = TrivialCoefficients::new(xm.clone(), field);
    let rep = tc.rep();
    let grid = tc.grid();
    let big_f = Cochain::from_fn(rep, OMEGA0_TRI, |x| vec![pair.big_f[x.rows[0].h][x.rows[1].h].clone()])?;
    let f = Cochain::from_fn(rep, PHI_TRI, |x| vec![pair.f[x.rows[0].g[0]][x.rows[0].h].clone()])?;
    let mut out = Vec::new();
    for dst in [Tri::new(0, 3, 0), Tri::new(1, 2, 0), Tri::new(2, 1, 0)] {
        let size = xm.domain_size(dst).ok_or(crate::group::GroupError::DomainTooLarge(dst))?;
        for idx in 0..size {
            let x = xm.decode(dst, idx)?;
            let mut acc = field.zero();
            for c in [&big_f, &f] {
                if let Some(form) = omega_tot_form(&grid, c.tri(), dst, &x) {
                    acc += &form.apply(c)[0];
                }
            }
            if !acc.is_zero() {
                out.push(PairViolation { component: dst, point: x });
                break;
            }
        }
    }
    Ok(out)
}

/// ω₀ = F and φ̌(g) = f(g, 1); W = 0, so α and ω₁ are empty.
pub fn tuple_from_trivial_pair(xm: &CrossedModule, field: Field, pair: &TrivialPair) -> Result<ExtensionTuple, ExtensionError> {
    check_shape(xm, field, pair)?;
    let (ng, nh) = (xm.g().order(), xm.h().order());
    Ok(ExtensionTuple {
        phicheck: (0..ng).map(|g| vec![pair.f[g][0].clone()]).collect(),
        omega0: pair.big_f.iter().map(|r| r.iter().map(|s| vec![s.clone()]).collect()).collect(),
        alpha: vec![vec![Vec::new(); ng]; nh],
        omega1: vec![vec![Vec::new(); ng]; ng],
    })
}

/// F = ω₀ and f(g, h) = ω₀(h, i(g)) + φ̌(g).
pub fn trivial_pair_from_tuple(xm: &CrossedModule, t: &ExtensionTuple) -> Result<TrivialPair, ExtensionError> {
    let (ng, nh) = (xm.g().order(), xm.h().order());
    let one_dim = |v: &Vec<Scalar>| v.len() == 1;
    if t.phicheck.len() != ng
        || !t.phicheck.iter().all(one_dim)
        || t.omega0.len() != nh
        || !t.omega0.iter().all(|r| r.len() == nh && r.iter().all(one_dim))
    {
        return Err(ExtensionError::Shape("trivial coefficients need one-dimensional φ̌ and ω₀".into()));
    }
    let big_f = t.omega0.iter().map(|r| r.iter().map(|v| v[0].clone()).collect()).collect();
    let f = (0..ng).map(|g| (0..nh).map(|h| &t.omega0[h][xm.i(g)][0] + &t.phicheck[g][0]).collect()).collect();
    Ok(TrivialPair { big_f, f })
}

#[derive(Clone, Debug, Serialize)]
pub struct BridgeReport {
    pub tuple: ExtensionTuple,
    /// The pair recovered from the tuple equals the input.
    pub round_trip: bool,
    /// (g, e) with ψ_f(g^{π₀ e}) ≠ e⁻¹ψ_f(g)e.
    pub equivariance: Vec<(usize, usize)>,
    /// (g₁, g₂) with ψ_f(g₁g₂) ≠ ψ_f(g₁)ψ_f(g₂).
    pub homomorphism: Vec<(usize, usize)>,
}

impl BridgeReport {
    pub fn holds(&self) -> bool {
        self.round_trip && self.equivariance.is_empty() && self.homomorphism.is_empty()
    }
}

/// Sends a valid pair with F(1,1) = 0 to its tuple, builds H ⋉^F k, checks
/// that ψ_f(g) = (i(g), f(g,1)) is an equivariant homomorphism G → H ⋉^F k
/// (exhaustively) and that the backward map recovers the pair.
pub fn trivial_coeff_bridge(xm: &CrossedModule, field: Field, pair: &TrivialPair) -> Result<BridgeReport, ExtensionError> {
    if let Some(v) = trivial_pair_violations(xm, field, pair)?.into_iter().next() {
        return Err(ExtensionError::NotACocycle { component: v.component });
    }
    if !pair.big_f[0][0].is_zero() {
        return Err(ExtensionError::NotNormalized("F(1,1) ≠ 0".into()));
    }
    let tuple = tuple_from_trivial_pair(xm, field, pair)?;
    let coeffs = TrivialCoefficients::new(xm.clone(), field);
    let e = build_extension(coeffs.rep(), &tuple)?;
    let t = e.tables();
    let e0 = FiniteGroup::from_table(t.e0.clone())?;
    let g = xm.g();
    let psi: Vec<usize> = (0..g.order()).map(|x| t.e0_index(xm.i(x), &[pair.f[x][0].clone()])).collect();
    let mut equivariance = Vec::new();
    for x in 0..g.order() {
        for y in 0..e0.order() {
            if psi[xm.act(x, e.pi0(y))] != e0.conj(psi[x], y) {
                equivariance.push((x, y));
            }
        }
    }
    let mut homomorphism = Vec::new();
    for a in 0..g.order() {
        for b in 0..g.order() {
            if psi[g.mul(a, b)] != e0.mul(psi[a], psi[b]) {
                homomorphism.push((a, b));
            }
        }
    }
    let round_trip = trivial_pair_from_tuple(xm, &tuple)? == *pair;
    Ok(BridgeReport { tuple, round_trip, equivariance, homomorphism })
}
