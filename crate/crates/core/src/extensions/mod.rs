//! The dictionary between degree-2 cocycles of the H² subcomplex and
//! extensions 0 → (W → V) → E → (G → H) → 1 of crossed modules.
//!
//! An extension with the canonical set-theoretic section z ↦ (z, 0) is
//! encoded by a tuple (φ̌, ω₀, α, ω₁). The dictionary is stated for
//! *unit-normalized* data: tuples with ω₀(1,1) = 0, ω₁(1,·) = ω₁(·,1) = 0
//! and α(·;1) = 0, and cocycles with ω₀(1,1) = 0. Every class in H² has
//! such representatives, and on them the (1,1,0) component of the cocycle
//! is determined by the tuple through φ(g over h) = ω₀(h, i(g)) + ρ₀⁰(h)φ̌(g).

mod bridge;
mod build;
mod iso;


pub use bridge::{
    trivial_coeff_bridge, trivial_pair_from_tuple, trivial_pair_violations, tuple_from_trivial_pair, BridgeReport,
    PairViolation, TrivialPair,
};
pub use build::{
    build_extension, build_extension_unchecked, induced_rep_from_split, verify_extension, BuiltExtension,
    ExtensionReport, ExtensionViolation,
};
pub use iso::{
    are_cohomologous, coboundary_iso, coboundary_shift, random_coboundary, CoboundaryWitness, IsoReport, IsoViolation,
};

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::grid::{Cochain, GridError};
use crate::group::{GroupError, Point, Row, Tri};
use crate::linalg::{Echelon, Matrix, Scalar, Vector};
use crate::rep::{RepError, TwoRep};
use crate::total::{in_subcomplex, TotalCochain, TotalComplex, TotalError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtensionError {
    #[error("not a cocycle: ∇ has a nonzero {component} component")]
    NotACocycle { component: Tri },
    #[error("the {component} component is nonzero, but it vanishes in the H² subcomplex")]
    OutsideSubcomplex { component: Tri },
    #[error("not unit-normalized: {0}")]
    NotNormalized(String),
    #[error("invalid extension tuple: {0}")]
    TupleInvalid(TupleViolation),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("too many cocycles to enumerate ({0})")]
    TooMany(u128),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Total(#[from] TotalError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// The twisting data of an extension relative to its canonical section:
/// `phicheck[g]` ∈ V, `omega0[h₀][h₁]` ∈ V, `alpha[h][g]` ∈ W and
/// `omega1[g₁][g₂]` ∈ W.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionTuple {
    pub phicheck: Vec<Vector>,
    pub omega0: Vec<Vec<Vector>>,
    pub alpha: Vec<Vec<Vector>>,
    pub omega1: Vec<Vec<Vector>>,
}

/// The seven compatibility conditions a tuple must satisfy for the twisted
/// product to be a crossed module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TupleItem {
    I,
    Ii,
    Iii,
    Iv,
    V,
    Vi,
    Vii,
}

impl TupleItem {
    pub const ALL: [TupleItem; 7] =
        [TupleItem::I, TupleItem::Ii, TupleItem::Iii, TupleItem::Iv, TupleItem::V, TupleItem::Vi, TupleItem::Vii];

    pub fn label(self) -> &'static str {
        match self {
            TupleItem::I => "i",
            TupleItem::Ii => "ii",
            TupleItem::Iii => "iii",
            TupleItem::Iv => "iv",
            TupleItem::V => "v",
            TupleItem::Vi => "vi",
            TupleItem::Vii => "vii",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            TupleItem::I => "ω₀ is a 2-cocycle for ρ₀⁰",
            TupleItem::Ii => "ω₁ is a 2-cocycle for ρ₀¹∘i",
            TupleItem::Iii => "ε is a homomorphism",
            TupleItem::Iv => "the action composes",
            TupleItem::V => "ε is equivariant",
            TupleItem::Vi => "the Peiffer identity holds",
            TupleItem::Vii => "the action is by automorphisms",
        }
    }
}

/// A failed item together with the group elements it fails at, in the
/// order the item's variables are listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TupleViolation {
    pub item: TupleItem,
    pub at: Vec<usize>,
}

impl std::fmt::Display for TupleViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "item ({}) fails, {}, at {:?}", self.item.label(), self.item.describe(), self.at)
    }
}

pub(crate) fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

fn table<T: Clone>(n: usize, m: usize, x: T) -> Vec<Vec<T>> {
    vec![vec![x; m]; n]
}

impl ExtensionTuple {
    /// The tuple of the split extension.
    pub fn zero(rep: &TwoRep) -> ExtensionTuple {
        let (ng, nh) = (rep.xm().g().order(), rep.xm().h().order());
        ExtensionTuple {
            phicheck: vec![rep.zero_v(); ng],
            omega0: table(nh, nh, rep.zero_v()),
            alpha: table(nh, ng, rep.zero_w()),
            omega1: table(ng, ng, rep.zero_w()),
        }
    }

    pub fn check_shape(&self, rep: &TwoRep) -> Result<(), ExtensionError> {
        let (ng, nh) = (rep.xm().g().order(), rep.xm().h().order());
        let (dw, dv) = (rep.dim_w(), rep.dim_v());
        let field = rep.field();
        let ok_vec = |v: &Vector, d: usize| v.len() == d && v.iter().all(|s| s.field() == field);
        let ok_table = |t: &Vec<Vec<Vector>>, n: usize, m: usize, d: usize| {
            t.len() == n && t.iter().all(|row| row.len() == m && row.iter().all(|v| ok_vec(v, d)))
        };
        let ok = self.phicheck.len() == ng
            && self.phicheck.iter().all(|v| ok_vec(v, dv))
            && ok_table(&self.omega0, nh, nh, dv)
            && ok_table(&self.alpha, nh, ng, dw)
            && ok_table(&self.omega1, ng, ng, dw);
        if ok {
            Ok(())
        } else {
            Err(ExtensionError::Shape(format!(
                "expected φ̌: G → F^{dv}, ω₀: H×H → F^{dv}, α: H×G → F^{dw}, ω₁: G×G → F^{dw} over {} with |G| = {ng}, |H| = {nh}",
                field.name()
            )))
        }
    }

    /// Ok iff ω₀(1,1) = 0, ω₁ vanishes when either argument is 1 and
    /// α(h;1) = 0; otherwise a description of the first failure.
    pub fn check_normalized(&self) -> Result<(), ExtensionError> {
        if !is_zero(&self.omega0[0][0]) {
            return Err(ExtensionError::NotNormalized("ω₀(1,1) ≠ 0".into()));
        }
        for (g, row) in self.omega1.iter().enumerate() {
            if !is_zero(&row[0]) || !is_zero(&self.omega1[0][g]) {
                return Err(ExtensionError::NotNormalized(format!("ω₁ is nonzero at (1,{g}) or ({g},1)")));
            }
        }
        for (h, row) in self.alpha.iter().enumerate() {
            if !is_zero(&row[0]) {
                return Err(ExtensionError::NotNormalized(format!("α({h};1) ≠ 0")));
            }
        }
        Ok(())
    }

    /// One witness per failed item, checked exhaustively.
    pub fn violations(&self, rep: &TwoRep) -> Result<Vec<TupleViolation>, ExtensionError> {
        self.check_shape(rep)?;
        let xm = rep.xm();
        let (g, h) = (xm.g(), xm.h());
        let (ng, nh) = (g.order(), h.order());
        let phi = rep.phi();
        let (ph, w0, al, w1) = (&self.phicheck, &self.omega0, &self.alpha, &self.omega1);
        let mut out = Vec::new();
        let mut first = |item: TupleItem, found: Option<Vec<usize>>| {
            if let Some(at) = found {
                out.push(TupleViolation { item, at });
            }
        };
        let triples = |n1: usize, n2: usize, n3: usize| {
            (0..n1).flat_map(move |a| (0..n2).flat_map(move |b| (0..n3).map(move |c| vec![a, b, c])))
        };
        let pairs = |n1: usize, n2: usize| (0..n1).flat_map(move |a| (0..n2).map(move |b| vec![a, b]));

        // ρ₀⁰(h₁)ω₀(h₂,h₃) − ω₀(h₁h₂,h₃) + ω₀(h₁,h₂h₃) − ω₀(h₁,h₂) = 0
        first(
            TupleItem::I,
            triples(nh, nh, nh).find(|t| {
                let (a, b, c) = (t[0], t[1], t[2]);
                let lhs = add(&rep.rho00(a).mul_vec(&w0[b][c]), &w0[a][h.mul(b, c)]);
                lhs != add(&w0[h.mul(a, b)][c], &w0[a][b])
            }),
        );
        // ρ₀¹(i g₁)ω₁(g₂,g₃) − ω₁(g₁g₂,g₃) + ω₁(g₁,g₂g₃) − ω₁(g₁,g₂) = 0
        first(
            TupleItem::Ii,
            triples(ng, ng, ng).find(|t| {
                let (a, b, c) = (t[0], t[1], t[2]);
                let lhs = add(&rep.rho01(xm.i(a)).mul_vec(&w1[b][c]), &w1[a][g.mul(b, c)]);
                lhs != add(&w1[g.mul(a, b)][c], &w1[a][b])
            }),
        );
        // φ(ω₁(g₁,g₂)) − ω₀(i g₁, i g₂) = ρ₀⁰(i g₁)φ̌(g₂) − φ̌(g₁g₂) + φ̌(g₁)
        first(
            TupleItem::Iii,
            pairs(ng, ng).find(|t| {
                let (a, b) = (t[0], t[1]);
                let lhs = add(&phi.mul_vec(&w1[a][b]), &ph[g.mul(a, b)]);
                let rhs = add(&add(&rep.rho00(xm.i(a)).mul_vec(&ph[b]), &ph[a]), &w0[xm.i(a)][xm.i(b)]);
                lhs != rhs
            }),
        );
        // ρ₀¹(h₁h₂)⁻¹ρ₁(g)ω₀(h₁,h₂) = ρ₀¹(h₂)⁻¹α(h₁;g) − α(h₁h₂;g) + α(h₂;g^{h₁})
        first(
            TupleItem::Iv,
            triples(nh, nh, ng).find(|t| {
                let (h1, h2, x) = (t[0], t[1], t[2]);
                let h12 = h.mul(h1, h2);
                let lhs = add(&rep.rho01_inv(h12).mul_vec(&rep.rho1(x).mul_vec(&w0[h1][h2])), &al[h12][x]);
                let rhs = add(&rep.rho01_inv(h2).mul_vec(&al[h1][x]), &al[h2][xm.act(x, h1)]);
                lhs != rhs
            }),
        );
        // φ̌(g^h) − ρ₀⁰(h⁻¹)φ̌(g) + φ(α(h;g)) = ρ₀⁰(h⁻¹)ω₀(i g, h) + ω₀(h⁻¹, (i g)h) − ω₀(h⁻¹, h)
        first(
            TupleItem::V,
            pairs(ng, nh).find(|t| {
                let (x, y) = (t[0], t[1]);
                let yi = h.inv(y);
                let ig = xm.i(x);
                let lhs = add(&add(&ph[xm.act(x, y)], &phi.mul_vec(&al[y][x])), &w0[yi][y]);
                let rhs = add(&add(&rep.rho00(yi).mul_vec(&ph[x]), &rep.rho00(yi).mul_vec(&w0[ig][y])), &w0[yi][h.mul(ig, y)]);
                lhs != rhs
            }),
        );
        // ρ₀¹(i g₂)⁻¹ρ₁(g₁)φ̌(g₂) + α(i g₂; g₁) = ρ₀¹(i g₂)⁻¹ω₁(g₁,g₂) + ω₁(g₂⁻¹, g₁g₂) − ω₁(g₂⁻¹, g₂)
        first(
            TupleItem::Vi,
            pairs(ng, ng).find(|t| {
                let (a, b) = (t[0], t[1]);
                let (ib, bi) = (xm.i(b), g.inv(b));
                let inv = rep.rho01_inv(ib);
                let lhs = add(&add(&inv.mul_vec(&rep.rho1(a).mul_vec(&ph[b])), &al[ib][a]), &w1[bi][b]);
                let rhs = add(&inv.mul_vec(&w1[a][b]), &w1[bi][g.mul(a, b)]);
                lhs != rhs
            }),
        );
        // ρ₀¹(h)⁻¹ω₁(g₁,g₂) − ω₁(g₁^h, g₂^h) = ρ₀¹(i(g₁^h))α(h;g₂) − α(h;g₁g₂) + α(h;g₁)
        first(
            TupleItem::Vii,
            triples(nh, ng, ng).find(|t| {
                let (y, a, b) = (t[0], t[1], t[2]);
                let (ah, bh) = (xm.act(a, y), xm.act(b, y));
                let lhs = add(&rep.rho01_inv(y).mul_vec(&w1[a][b]), &al[y][g.mul(a, b)]);
                let rhs = add(&add(&w1[ah][bh], &rep.rho01(xm.i(ah)).mul_vec(&al[y][b])), &al[y][a]);
                lhs != rhs
            }),
        );
        Ok(out)
    }

    /// Ok iff the tuple has the right shape and satisfies every item.
    pub fn validate(&self, rep: &TwoRep) -> Result<(), ExtensionError> {
        match self.violations(rep)?.into_iter().next() {
            None => Ok(()),
            Some(v) => Err(ExtensionError::TupleInvalid(v)),
        }
    }

    /// Componentwise difference `self − other`.
    pub fn sub(&self, other: &ExtensionTuple) -> ExtensionTuple {
        let t = |a: &Vec<Vec<Vector>>, b: &Vec<Vec<Vector>>| {
            a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(u, v)| sub(u, v)).collect()).collect()
        };
        ExtensionTuple {
            phicheck: self.phicheck.iter().zip(&other.phicheck).map(|(u, v)| sub(u, v)).collect(),
            omega0: t(&self.omega0, &other.omega0),
            alpha: t(&self.alpha, &other.alpha),
            omega1: t(&self.omega1, &other.omega1),
        }
    }
}

pub(crate) const PHI_TRI: Tri = Tri::new(1, 1, 0);
pub(crate) const OMEGA0_TRI: Tri = Tri::new(0, 2, 0);
pub(crate) const ALPHA_TRI: Tri = Tri::new(0, 1, 1);
pub(crate) const OMEGA1_TRI: Tri = Tri::new(0, 0, 2);

fn omega0_point(a: usize, b: usize) -> Point {
    Point { rows: vec![Row { g: vec![], h: a }, Row { g: vec![], h: b }], f: vec![] }
}

fn phi_point(g: usize, h: usize) -> Point {
    Point { rows: vec![Row { g: vec![g], h }], f: vec![] }
}

fn alpha_point(h: usize, g: usize) -> Point {
    Point { rows: vec![Row { g: vec![], h }], f: vec![g] }
}

fn omega1_point(a: usize, b: usize) -> Point {
    Point { rows: vec![], f: vec![a, b] }
}

/// The degree-2 cochain of a tuple, without any checks beyond shape.
pub fn cochain_from_tuple_unchecked(rep: &TwoRep, t: &ExtensionTuple) -> Result<TotalCochain, ExtensionError> {
    t.check_shape(rep)?;
    let xm = rep.xm();
    let w0 = Cochain::from_fn(rep, OMEGA0_TRI, |x| t.omega0[x.rows[0].h][x.rows[1].h].clone())?;
    let phi = Cochain::from_fn(rep, PHI_TRI, |x| {
        let (g, h) = (x.rows[0].g[0], x.rows[0].h);
        add(&t.omega0[h][xm.i(g)], &rep.rho00(h).mul_vec(&t.phicheck[g]))
    })?;
    let al = Cochain::from_fn(rep, ALPHA_TRI, |x| t.alpha[x.rows[0].h][x.f[0]].clone())?;
    let w1 = Cochain::from_fn(rep, OMEGA1_TRI, |x| t.omega1[x.f[0]][x.f[1]].clone())?;
    Ok(TotalCochain::from_components(2, [w0, phi, al, w1], rep)?)
}

/// The first component on which ∇tc is nonzero, if any.
pub(crate) fn first_nonzero(cx: &TotalComplex<'_>, tc: &TotalCochain) -> Result<Option<Tri>, ExtensionError> {
    let d = cx.nabla(tc)?;
    let found = d.components().find(|(_, c)| !c.is_zero()).map(|(t, _)| *t);
    Ok(found)
}

/// The subcomplex 2-cocycle of a valid, unit-normalized tuple.
pub fn cocycle_from_tuple(cx: &TotalComplex<'_>, t: &ExtensionTuple) -> Result<TotalCochain, ExtensionError> {
    let rep = cx.rep();
    t.validate(rep)?;
    t.check_normalized()?;
    let tc = cochain_from_tuple_unchecked(rep, t)?;
    if let Some(component) = first_nonzero(cx, &tc)? {
        return Err(ExtensionError::NotACocycle { component });
    }
    Ok(tc)
}

fn require_cocycle(cx: &TotalComplex<'_>, tc: &TotalCochain) -> Result<(), ExtensionError> {
    if tc.degree() != 2 {
        return Err(ExtensionError::Shape(format!("extensions correspond to degree-2 cocycles, not degree {}", tc.degree())));
    }
    if let Some((t, _)) = tc.components().find(|(t, c)| !in_subcomplex(**t) && !c.is_zero()) {
        return Err(ExtensionError::OutsideSubcomplex { component: *t });
    }
    if !tc.is_normalized(cx.xm()) {
        return Err(ExtensionError::NotNormalized("the cochain is nonzero at a point with an identity G-argument".into()));
    }
    if let Some(component) = first_nonzero(cx, tc)? {
        return Err(ExtensionError::NotACocycle { component });
    }
    Ok(())
}

/// Reads the tuple off a unit-normalized subcomplex 2-cocycle:
/// ω₀, α, ω₁ are the (0,2,0), (0,1,1), (0,0,2) components and
/// φ̌(g) is the (1,1,0) component at g over the identity.
pub fn tuple_from_cocycle(cx: &TotalComplex<'_>, tc: &TotalCochain) -> Result<ExtensionTuple, ExtensionError> {
    require_cocycle(cx, tc)?;
    let rep = cx.rep();
    let xm = cx.xm();
    let (ng, nh) = (xm.g().order(), xm.h().order());
    let comp = |t: Tri| tc.component(t).expect("degree-2 component");
    if !is_zero(comp(OMEGA0_TRI).at(xm, &omega0_point(0, 0))) {
        return Err(ExtensionError::NotNormalized("ω₀(1,1) ≠ 0".into()));
    }
    let t = ExtensionTuple {
        phicheck: (0..ng).map(|g| comp(PHI_TRI).at(xm, &phi_point(g, 0)).to_vec()).collect(),
        omega0: (0..nh).map(|a| (0..nh).map(|b| comp(OMEGA0_TRI).at(xm, &omega0_point(a, b)).to_vec()).collect()).collect(),
        alpha: (0..nh).map(|h| (0..ng).map(|g| comp(ALPHA_TRI).at(xm, &alpha_point(h, g)).to_vec()).collect()).collect(),
        omega1: (0..ng).map(|a| (0..ng).map(|b| comp(OMEGA1_TRI).at(xm, &omega1_point(a, b)).to_vec()).collect()).collect(),
    };
    // The (1,1,0) component is redundant on cocycles; make sure it agrees.
    if cochain_from_tuple_unchecked(rep, &t)? != *tc {
        return Err(ExtensionError::NotACocycle { component: PHI_TRI });
    }
    t.validate(rep)?;
    Ok(t)
}

/// Extension classes counted by brute force: every unit-normalized cocycle
/// of the H² subcomplex is reduced modulo coboundaries and the distinct
/// residues are counted.
#[derive(Clone, Debug, Serialize)]
pub struct ClassCount {
    pub p: u32,
    pub h2_dim: usize,
    pub cocycles: u128,
    pub classes: u128,
}

impl ClassCount {
    /// Whether the count is p^{dim H²}.
    pub fn matches(&self) -> bool {
        (self.p as u128).checked_pow(self.h2_dim as u32) == Some(self.classes)
    }
}

/// A basis (in the coordinates of `cx.basis(2)`) of the unit-normalized
/// cocycles of the H² subcomplex, i.e. those with ω₀(1,1) = 0.
pub fn normalized_cocycle_basis(cx: &TotalComplex<'_>) -> Result<Vec<Vector>, ExtensionError> {
    let field = cx.rep().field();
    let h2 = cx.cohomology(2, true)?;
    let basis = cx.basis(2)?;
    let block = basis.block(OMEGA0_TRI).expect("ω₀ block");
    let pinned: Vec<usize> = match block.coordinate(cx.xm().encode(&omega0_point(0, 0))) {
        Some(c) => (c..c + block.dim).collect(),
        None => Vec::new(),
    };
    let k = &h2.kernel;
    let constraint =
        Matrix::from_rows(field, pinned.iter().map(|&c| k.iter().map(|v| v[c].clone()).collect()).collect(), k.len())
            .map_err(TotalError::from)?;
    Ok(constraint
        .kernel_basis()
        .iter()
        .map(|c| {
            let mut out = vec![field.zero(); basis.len()];
            for (coef, v) in c.iter().zip(k) {
                for (o, x) in out.iter_mut().zip(v) {
                    *o += &(coef * x);
                }
            }
            out
        })
        .collect())
}

/// Counts classes by enumerating all p^k unit-normalized cocycles, at most
/// `limit` of them.
pub fn count_extension_classes(cx: &TotalComplex<'_>, limit: u128) -> Result<ClassCount, ExtensionError> {
    let field = cx.rep().field();
    let p = field.order().ok_or(RepError::InfiniteField(field))? as u32;
    let h2 = cx.cohomology(2, true)?;
    let cocycles_basis = normalized_cocycle_basis(cx)?;
    let len = cx.basis(2)?.len();
    let cocycles = (p as u128).checked_pow(cocycles_basis.len() as u32).unwrap_or(u128::MAX);
    if cocycles > limit {
        return Err(ExtensionError::TooMany(cocycles));
    }
    let mut image = Echelon::new(field, len);
    for v in &h2.image {
        image.insert(v);
    }
    let mut seen = HashSet::new();
    let mut digits = vec![0u32; cocycles_basis.len()];
    loop {
        let mut v = vec![field.zero(); len];
        for (d, b) in digits.iter().zip(&cocycles_basis) {
            if *d != 0 {
                let c = field.from_i64(*d as i64);
                for (o, x) in v.iter_mut().zip(b) {
                    *o += &(&c * x);
                }
            }
        }
        seen.insert(image.reduce(&v));
        let Some(pos) = digits.iter().position(|d| d + 1 < p) else { break };
        digits[..pos].iter_mut().for_each(|d| *d = 0);
        digits[pos] += 1;
    }
    Ok(ClassCount { p, h2_dim: h2.dim, cocycles, classes: seen.len() as u128 })
}
