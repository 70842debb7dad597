//! 2-vector spaces, 2-representations and the constructions derived from them.

mod derived;
mod glphi;

pub use derived::{honest_rep, ruth_data, semidirect_2group, twisted_tables, RuthData, TwistedTables, Twists};
pub use glphi::{validate_glphi_crossed_module, GlArrow, GlObject, GlViolation};

use serde::Serialize;
use thiserror::Error;

use crate::group::{CrossedModule, GroupError};
use crate::linalg::{Field, Matrix, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not a 2-representation: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<RepViolation>),
    #[error("finite carriers need a prime field, got {0:?}")]
    InfiniteField(Field),
    #[error("carrier of {0} elements is too large to tabulate")]
    TooLarge(u128),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// The structural map φ: W → V of a 2-term complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoVectorSpace {
    field: Field,
    dim_w: usize,
    dim_v: usize,
    phi: Matrix,
}

impl TwoVectorSpace {
    pub fn new(phi: Matrix, dim_w: usize, dim_v: usize) -> Result<TwoVectorSpace, RepError> {
        if phi.rows() != dim_v || phi.cols() != dim_w {
            return Err(RepError::Shape(format!(
                "φ is {}×{}, expected {dim_v}×{dim_w}",
                phi.rows(),
                phi.cols()
            )));
        }
        Ok(TwoVectorSpace { field: phi.field(), dim_w, dim_v, phi })
    }

    /// 0 → V.
    pub fn unit(field: Field, dim_v: usize) -> TwoVectorSpace {
        TwoVectorSpace { field, dim_w: 0, dim_v, phi: Matrix::zeros(field, dim_v, 0) }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dim_w(&self) -> usize {
        self.dim_w
    }
    pub fn dim_v(&self) -> usize {
        self.dim_v
    }
    pub fn phi(&self) -> &Matrix {
        &self.phi
    }
}

/// Which equation a 2-representation violates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "equation", rename_all = "snake_case")]
pub enum RepViolation {
    /// ρ₀⁰(h) or ρ₀¹(h) is singular.
    Invertibility { map: &'static str, h: usize },
    /// ρ₀⁰(h)∘φ = φ∘ρ₀¹(h).
    Compatibility { h: usize },
    /// ρ₀⁰ or ρ₀¹ fails to be a homomorphism.
    Homomorphism { map: &'static str, h1: usize, h2: usize },
    /// ρ₁(g₀g₁) = ρ₁(g₀)+ρ₁(g₁)+ρ₁(g₀)φρ₁(g₁).
    ArrowHomomorphism { g0: usize, g1: usize },
    /// ρ₀⁰(i(g)) = I+φρ₁(g) (part 0) and ρ₀¹(i(g)) = I+ρ₁(g)φ (part 1).
    Boundary { part: u8, g: usize },
    /// ρ₁(g^h) = ρ₀¹(h)⁻¹ρ₁(g)ρ₀⁰(h).
    Equivariance { g: usize, h: usize },
}

impl std::fmt::Display for RepViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use RepViolation::*;
        match self {
            Invertibility { map, h } => write!(f, "{map}({h}) is not invertible"),
            Compatibility { h } => write!(f, "equation (0) fails: ρ₀⁰({h})φ ≠ φρ₀¹({h})"),
            Homomorphism { map, h1, h2 } => write!(f, "{map} is not a homomorphism at ({h1}, {h2})"),
            ArrowHomomorphism { g0, g1 } => write!(f, "equation (1) fails at ({g0}, {g1})"),
            Boundary { part, g } => write!(f, "equation (2) part {part} fails at g = {g}"),
            Equivariance { g, h } => write!(f, "equation (3) fails at g = {g}, h = {h}"),
        }
    }
}

/// A 2-representation of a crossed module on a 2-vector space, stored as
/// explicit per-element matrices.
#[derive(Clone, Debug)]
pub struct TwoRep {
    xm: CrossedModule,
    vs: TwoVectorSpace,
    rho00: Vec<Matrix>,
    rho01: Vec<Matrix>,
    rho1: Vec<Matrix>,
    rho00_inv: Vec<Matrix>,
    rho01_inv: Vec<Matrix>,
}

/// Equal crossed modules, 2-vector spaces and structure matrices.
impl PartialEq for TwoRep {
    fn eq(&self, other: &Self) -> bool {
        self.xm == other.xm
            && self.vs == other.vs
            && self.rho00 == other.rho00
            && self.rho01 == other.rho01
            && self.rho1 == other.rho1
    }
}

impl TwoRep {
    /// Builds and validates. ρ₀⁰(h) acts on V, ρ₀¹(h) on W, ρ₁(g): V → W.
    pub fn new(
        xm: CrossedModule,
        vs: TwoVectorSpace,
        rho00: Vec<Matrix>,
        rho01: Vec<Matrix>,
        rho1: Vec<Matrix>,
    ) -> Result<TwoRep, RepError> {
        let rep = TwoRep::new_unchecked(xm, vs, rho00, rho01, rho1)?;
        let v = rep.violations();
        if !v.is_empty() {
            return Err(RepError::Invalid(v));
        }
        Ok(rep)
    }

    /// Checks shapes only. Singular ρ₀ matrices get a zero placeholder
    /// inverse; [`TwoRep::violations`] reports them.
    pub fn new_unchecked(
        xm: CrossedModule,
        vs: TwoVectorSpace,
        rho00: Vec<Matrix>,
        rho01: Vec<Matrix>,
        rho1: Vec<Matrix>,
    ) -> Result<TwoRep, RepError> {
        let (nh, ng) = (xm.h().order(), xm.g().order());
        let (dw, dv) = (vs.dim_w, vs.dim_v);
        let check = |name: &str, ms: &[Matrix], n: usize, r: usize, c: usize| -> Result<(), RepError> {
            if ms.len() != n {
                return Err(RepError::Shape(format!("{name} needs {n} matrices, got {}", ms.len())));
            }
            for (k, m) in ms.iter().enumerate() {
                if m.rows() != r || m.cols() != c || m.field() != vs.field {
                    return Err(RepError::Shape(format!(
                        "{name}[{k}] must be a {r}×{c} matrix over {}",
                        vs.field.name()
                    )));
                }
            }
            Ok(())
        };
        check("rho00", &rho00, nh, dv, dv)?;
        check("rho01", &rho01, nh, dw, dw)?;
        check("rho1", &rho1, ng, dw, dv)?;
        let inv = |m: &Matrix| m.inverse().unwrap_or_else(|| Matrix::zeros(m.field(), m.rows(), m.cols()));
        let rho00_inv = rho00.iter().map(inv).collect();
        let rho01_inv = rho01.iter().map(inv).collect();
        Ok(TwoRep { xm, vs, rho00, rho01, rho1, rho00_inv, rho01_inv })
    }

    /// The trivial representation (ρ₁ ≡ 0, ρ₀ ≡ I).
    pub fn trivial(xm: CrossedModule, vs: TwoVectorSpace) -> TwoRep {
        let f = vs.field;
        let (nh, ng) = (xm.h().order(), xm.g().order());
        let rho00 = vec![Matrix::identity(f, vs.dim_v); nh];
        let rho01 = vec![Matrix::identity(f, vs.dim_w); nh];
        let rho1 = vec![Matrix::zeros(f, vs.dim_w, vs.dim_v); ng];
        TwoRep::new(xm, vs, rho00, rho01, rho1).expect("the trivial representation is valid")
    }

    /// Every violated equation, one witness each, checked exhaustively.
    pub fn violations(&self) -> Vec<RepViolation> {
        use RepViolation::*;
        let mut out = Vec::new();
        let (g, h) = (self.xm.g(), self.xm.h());
        let (ng, nh) = (g.order(), h.order());
        let phi = &self.vs.phi;
        for (name, ms) in [("rho00", &self.rho00), ("rho01", &self.rho01)] {
            if let Some(hh) = (0..nh).find(|&x| !ms[x].is_invertible()) {
                out.push(Invertibility { map: name, h: hh });
            }
        }
        if let Some(hh) = (0..nh).find(|&x| &self.rho00[x] * phi != phi * &self.rho01[x]) {
            out.push(Compatibility { h: hh });
        }
        for (name, ms) in [("rho00", &self.rho00), ("rho01", &self.rho01)] {
            let bad = (0..nh)
                .flat_map(|a| (0..nh).map(move |b| (a, b)))
                .find(|&(a, b)| ms[h.mul(a, b)] != &ms[a] * &ms[b]);
            if let Some((h1, h2)) = bad {
                out.push(Homomorphism { map: name, h1, h2 });
            }
        }
        let bad = (0..ng).flat_map(|a| (0..ng).map(move |b| (a, b))).find(|&(a, b)| {
            let (ra, rb) = (&self.rho1[a], &self.rho1[b]);
            self.rho1[g.mul(a, b)] != &(ra + rb) + &(&(ra * phi) * rb)
        });
        if let Some((g0, g1)) = bad {
            out.push(ArrowHomomorphism { g0, g1 });
        }
        let (iv, iw) = (Matrix::identity(self.vs.field, self.vs.dim_v), Matrix::identity(self.vs.field, self.vs.dim_w));
        if let Some(x) = (0..ng).find(|&x| self.rho00[self.xm.i(x)] != &iv + &(phi * &self.rho1[x])) {
            out.push(Boundary { part: 0, g: x });
        }
        if let Some(x) = (0..ng).find(|&x| self.rho01[self.xm.i(x)] != &iw + &(&self.rho1[x] * phi)) {
            out.push(Boundary { part: 1, g: x });
        }
        let bad = (0..ng).flat_map(|a| (0..nh).map(move |b| (a, b))).find(|&(x, hh)| {
            self.rho1[self.xm.act(x, hh)] != &(&self.rho01_inv[hh] * &self.rho1[x]) * &self.rho00[hh]
        });
        if let Some((x, hh)) = bad {
            out.push(Equivariance { g: x, h: hh });
        }
        out
    }

    pub fn validate(&self) -> Result<(), RepError> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(RepError::Invalid(v))
        }
    }

    pub fn xm(&self) -> &CrossedModule {
        &self.xm
    }
    pub fn vs(&self) -> &TwoVectorSpace {
        &self.vs
    }
    pub fn field(&self) -> Field {
        self.vs.field
    }
    pub fn dim_w(&self) -> usize {
        self.vs.dim_w
    }
    pub fn dim_v(&self) -> usize {
        self.vs.dim_v
    }
    pub fn phi(&self) -> &Matrix {
        &self.vs.phi
    }

    /// ρ₀⁰(h) on V.
    pub fn rho00(&self, h: usize) -> &Matrix {
        &self.rho00[h]
    }
    pub fn rho00_inv(&self, h: usize) -> &Matrix {
        &self.rho00_inv[h]
    }
    /// ρ₀¹(h) on W.
    pub fn rho01(&self, h: usize) -> &Matrix {
        &self.rho01[h]
    }
    pub fn rho01_inv(&self, h: usize) -> &Matrix {
        &self.rho01_inv[h]
    }
    /// ρ₁(g): V → W.
    pub fn rho1(&self, g: usize) -> &Matrix {
        &self.rho1[g]
    }

    /// Dimension of the value space at tridegree r (V at r = 0, else W).
    pub fn target_dim(&self, r: usize) -> usize {
        if r == 0 {
            self.vs.dim_v
        } else {
            self.vs.dim_w
        }
    }

    pub fn zero_v(&self) -> Vector {
        vec![self.vs.field.zero(); self.vs.dim_v]
    }
    pub fn zero_w(&self) -> Vector {
        vec![self.vs.field.zero(); self.vs.dim_w]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn trivial_rep_is_valid() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let xm = CrossedModule::with_trivial_action(z2.clone(), z2, vec![0, 1]).unwrap();
        let f = Field::Prime(2);
        let vs = TwoVectorSpace::new(Matrix::identity(f, 1), 1, 1).unwrap();
        assert!(TwoRep::trivial(xm, vs).validate().is_ok());
    }

    #[test]
    fn sign_rep_of_the_unit_two_group() {
        let q = Field::Rational;
        let xm = CrossedModule::of_group(FiniteGroup::cyclic(2).unwrap());
        let vs = TwoVectorSpace::unit(q, 1);
        let rho00 = vec![Matrix::from_i64(q, &[&[1]]), Matrix::from_i64(q, &[&[-1]])];
        let rho01 = vec![Matrix::zeros(q, 0, 0); 2];
        let rho1 = vec![Matrix::zeros(q, 0, 1)];
        assert!(TwoRep::new(xm, vs, rho00, rho01, rho1).is_ok());
    }

    #[test]
    fn sign_rep_must_kill_the_image_of_i() {
        let q = Field::Rational;
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let xm = CrossedModule::with_trivial_action(z2.clone(), z2, vec![0, 1]).unwrap();
        let vs = TwoVectorSpace::unit(q, 1);
        let rho00 = vec![Matrix::from_i64(q, &[&[1]]), Matrix::from_i64(q, &[&[-1]])];
        let rho01 = vec![Matrix::zeros(q, 0, 0); 2];
        let rho1 = vec![Matrix::zeros(q, 0, 1); 2];
        let err = TwoRep::new(xm, vs, rho00, rho01, rho1).unwrap_err();
        let RepError::Invalid(v) = err else { panic!() };
        assert!(v.contains(&RepViolation::Boundary { part: 0, g: 1 }));
    }
}
