use serde::Serialize;

use super::{TotalCochain, TotalError};
use crate::grid::Cochain;
use crate::group::{Point, Row, Tri};
use crate::linalg::{Scalar, Vector};
use crate::rep::TwoRep;

/// A candidate crossed functor: λ₀ on H with values in V and λ₁ on G with
/// values in W, as tables indexed by group element.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossedFunctorWitness {
    pub lambda0: Vec<Vector>,
    pub lambda1: Vec<Vector>,
}

/// A failed equation of a crossed functor, with the elements witnessing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "equation")]
pub enum CrossedFunctorViolation {
    /// λ₀(h₀h₁) = λ₀(h₀) + ρ₀⁰(h₀)λ₀(h₁).
    #[serde(rename = "lambda0 crossed homomorphism")]
    Lambda0 { h0: usize, h1: usize },
    /// λ₁(g₀g₁) = λ₁(g₀) + ρ₀¹(i(g₀))λ₁(g₁).
    #[serde(rename = "lambda1 crossed homomorphism")]
    Lambda1 { g0: usize, g1: usize },
    /// λ₀(h) + ρ₀⁰(h)φ(λ₁(g)) = λ₀(h·i(g)): λ̄ respects sources and targets.
    #[serde(rename = "respects source and target")]
    SourceTarget { g: usize, h: usize },
    /// ρ₀¹(h)⁻¹(ρ₁(g)λ₀(h) + λ₁(g)) = λ₁(g^h): λ̄ is a crossed homomorphism for ρ̄.
    #[serde(rename = "crossed homomorphism for the honest representation")]
    Homomorphism { g: usize, h: usize },
}

impl std::fmt::Display for CrossedFunctorViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Lambda0 { h0, h1 } => write!(f, "λ₀ is not a crossed homomorphism at (h₀,h₁) = ({h0},{h1})"),
            Self::Lambda1 { g0, g1 } => write!(f, "λ₁ is not a crossed homomorphism at (g₀,g₁) = ({g0},{g1})"),
            Self::SourceTarget { g, h } => write!(f, "λ̄ does not respect source and target at (g,h) = ({g},{h})"),
            Self::Homomorphism { g, h } => write!(f, "λ̄ is not a crossed homomorphism for ρ̄ at (g,h) = ({g},{h})"),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CrossedFunctorReport {
    pub violations: Vec<CrossedFunctorViolation>,
}

impl CrossedFunctorReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl CrossedFunctorWitness {
    pub fn zero(rep: &TwoRep) -> CrossedFunctorWitness {
        let xm = rep.xm();
        CrossedFunctorWitness { lambda0: vec![rep.zero_v(); xm.h().order()], lambda1: vec![rep.zero_w(); xm.g().order()] }
    }

    fn check_shape(&self, rep: &TwoRep) -> Result<(), TotalError> {
        let xm = rep.xm();
        let ok = self.lambda0.len() == xm.h().order()
            && self.lambda1.len() == xm.g().order()
            && self.lambda0.iter().all(|v| v.len() == rep.dim_v())
            && self.lambda1.iter().all(|w| w.len() == rep.dim_w());
        if ok {
            Ok(())
        } else {
            Err(TotalError::Shape("λ₀ must map H to V and λ₁ must map G to W".into()))
        }
    }

    /// Checks all four equations exhaustively; every failure is reported.
    pub fn check(&self, rep: &TwoRep) -> Result<CrossedFunctorReport, TotalError> {
        self.check_shape(rep)?;
        let xm = rep.xm();
        let (g, h) = (xm.g(), xm.h());
        let (l0, l1) = (&self.lambda0, &self.lambda1);
        let mut out = CrossedFunctorReport::default();
        for h0 in 0..h.order() {
            for h1 in 0..h.order() {
                if l0[h.mul(h0, h1)] != add(&l0[h0], &rep.rho00(h0).mul_vec(&l0[h1])) {
                    out.violations.push(CrossedFunctorViolation::Lambda0 { h0, h1 });
                }
            }
        }
        for g0 in 0..g.order() {
            for g1 in 0..g.order() {
                if l1[g.mul(g0, g1)] != add(&l1[g0], &rep.rho01(xm.i(g0)).mul_vec(&l1[g1])) {
                    out.violations.push(CrossedFunctorViolation::Lambda1 { g0, g1 });
                }
            }
        }
        for gg in 0..g.order() {
            for hh in 0..h.order() {
                let lhs = add(&l0[hh], &rep.rho00(hh).mul_vec(&rep.phi().mul_vec(&l1[gg])));
                if lhs != l0[h.mul(hh, xm.i(gg))] {
                    out.violations.push(CrossedFunctorViolation::SourceTarget { g: gg, h: hh });
                }
                let inner = add(&rep.rho1(gg).mul_vec(&l0[hh]), &l1[gg]);
                if rep.rho01_inv(hh).mul_vec(&inner) != l1[xm.act(gg, hh)] {
                    out.violations.push(CrossedFunctorViolation::Homomorphism { g: gg, h: hh });
                }
            }
        }
        Ok(out)
    }

    /// Reads (λ₀, λ₁) off the (0,1,0) and (0,0,1) components of a degree-1
    /// total cochain; the (1,0,0) component is ignored.
    pub fn from_cochain(rep: &TwoRep, tc: &TotalCochain) -> Result<CrossedFunctorWitness, TotalError> {
        if tc.degree() != 1 {
            return Err(TotalError::Shape(format!("crossed functors live in degree 1, not {}", tc.degree())));
        }
        let xm = rep.xm();
        let c0 = tc.component(Tri::new(0, 1, 0)).expect("degree-1 component");
        let c1 = tc.component(Tri::new(0, 0, 1)).expect("degree-1 component");
        let lambda0 = (0..xm.h().order()).map(|h| c0.at(xm, &h_point(h)).to_vec()).collect();
        let lambda1 = (0..xm.g().order()).map(|g| c1.at(xm, &g_point(g)).to_vec()).collect();
        Ok(CrossedFunctorWitness { lambda0, lambda1 })
    }

    /// The degree-1 total cochain (0, λ₀, λ₁).
    pub fn to_cochain(&self, rep: &TwoRep) -> Result<TotalCochain, TotalError> {
        self.check_shape(rep)?;
        let c0 = Cochain::from_fn(rep, Tri::new(0, 1, 0), |x| self.lambda0[x.rows[0].h].clone())?;
        let c1 = Cochain::from_fn(rep, Tri::new(0, 0, 1), |x| self.lambda1[x.f[0]].clone())?;
        TotalCochain::from_components(1, [c0, c1], rep)
    }
}

pub(crate) fn h_point(h: usize) -> Point {
    Point { rows: vec![Row { g: vec![], h }], f: vec![] }
}

pub(crate) fn g_point(g: usize) -> Point {
    Point { rows: vec![], f: vec![g] }
}

/// The principal crossed functor of v ∈ V: λ₀(h) = ρ₀⁰(h)v − v and
/// λ₁(g) = ρ₁(g)v, i.e. λ̄(g,h) = ρ̄_{(g,h)}(0,v) − (0,v).
pub fn principal_witness(rep: &TwoRep, v: &[Scalar]) -> CrossedFunctorWitness {
    let xm = rep.xm();
    let lambda0 = (0..xm.h().order()).map(|h| rep.rho00(h).mul_vec(v).iter().zip(v).map(|(a, b)| a - b).collect()).collect();
    let lambda1 = (0..xm.g().order()).map(|g| rep.rho1(g).mul_vec(v)).collect();
    CrossedFunctorWitness { lambda0, lambda1 }
}
