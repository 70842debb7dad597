use rand::Rng;
use serde::Serialize;

use super::{add, build_extension, cocycle_from_tuple, sub, tuple_from_cocycle, ExtensionError, ExtensionTuple, TupleItem};
use crate::grid::random_scalar;
use crate::group::Tri;
use crate::linalg::Vector;
use crate::rep::TwoRep;
use crate::total::{CrossedFunctorWitness, TotalBasis, TotalCochain, TotalComplex};

/// A degree-1 cochain (0, λ₀, λ₁) with ∇λ = tc₂ − tc₁.
pub type CoboundaryWitness = CrossedFunctorWitness;

/// A failed check of [`coboundary_iso`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum IsoViolation {
    /// One of the four conditions relating the tuples through λ fails.
    Condition { item: TupleItem, at: Vec<usize> },
    NotBijective { level: usize },
    Homomorphism { level: usize, at: (usize, usize) },
    StructureMap { at: usize },
    Action { at: (usize, usize) },
    /// ψ does not restrict to the identity on W or V, or does not cover the
    /// identity of G or H.
    Identity { level: usize, at: usize },
}

impl std::fmt::Display for IsoViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Condition { item, at } => write!(f, "coboundary condition ({}) fails at {at:?}", item.label()),
            Self::NotBijective { level } => write!(f, "ψ{level} is not a bijection"),
            Self::Homomorphism { level, at } => write!(f, "ψ{level} is not a homomorphism at {at:?}"),
            Self::StructureMap { at } => write!(f, "ψ does not commute with ε at {at}"),
            Self::Action { at } => write!(f, "ψ does not preserve the action at {at:?}"),
            Self::Identity { level, at } => write!(f, "ψ{level} is not the identity on the kernel and quotient at {at}"),
        }
    }
}

/// The outcome of [`coboundary_iso`]: the maps ψ₁: E₁(t₂) → E₁(t₁) and
/// ψ₀: E₀(t₂) → E₀(t₁) as index tables (empty if a condition failed).
#[derive(Clone, Debug, Serialize)]
pub struct IsoReport {
    pub violations: Vec<IsoViolation>,
    pub psi1: Vec<usize>,
    pub psi0: Vec<usize>,
}

impl IsoReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// The four conditions saying t₂ = t₁ + ∇λ on tuples:
/// (i) ω₀₂ − ω₀₁ = δλ₀, (ii) ω₁₂ − ω₁₁ = δλ₁,
/// (iii) φ̌₂ − φ̌₁ = φ∘λ₁ − λ₀∘i,
/// (iv) α₂(h;g) − α₁(h;g) = ρ₀¹(h)⁻¹(λ₁(g) + ρ₁(g)λ₀(h)) − λ₁(g^h).
fn conditions(rep: &TwoRep, t1: &ExtensionTuple, t2: &ExtensionTuple, w: &CoboundaryWitness) -> Vec<IsoViolation> {
    let xm = rep.xm();
    let (g, h) = (xm.g(), xm.h());
    let (ng, nh) = (g.order(), h.order());
    let (l0, l1) = (&w.lambda0, &w.lambda1);
    let d = t2.sub(t1);
    let mut out = Vec::new();
    let mut push = |item: TupleItem, at: Option<Vec<usize>>| {
        if let Some(at) = at {
            out.push(IsoViolation::Condition { item, at });
        }
    };
    let pairs = |n: usize, m: usize| (0..n).flat_map(move |a| (0..m).map(move |b| vec![a, b]));
    push(
        TupleItem::I,
        pairs(nh, nh).find(|t| {
            let (a, b) = (t[0], t[1]);
            d.omega0[a][b] != sub(&add(&rep.rho00(a).mul_vec(&l0[b]), &l0[a]), &l0[h.mul(a, b)])
        }),
    );
    push(
        TupleItem::Ii,
        pairs(ng, ng).find(|t| {
            let (a, b) = (t[0], t[1]);
            d.omega1[a][b] != sub(&add(&rep.rho01(xm.i(a)).mul_vec(&l1[b]), &l1[a]), &l1[g.mul(a, b)])
        }),
    );
    push(
        TupleItem::Iii,
        (0..ng).find(|&x| d.phicheck[x] != sub(&rep.phi().mul_vec(&l1[x]), &l0[xm.i(x)])).map(|x| vec![x]),
    );
    push(
        TupleItem::Iv,
        pairs(nh, ng).find(|t| {
            let (y, x) = (t[0], t[1]);
            let inner = add(&l1[x], &rep.rho1(x).mul_vec(&l0[y]));
            d.alpha[y][x] != sub(&rep.rho01_inv(y).mul_vec(&inner), &l1[xm.act(x, y)])
        }),
    );
    out
}

/// Given t₂ = t₁ + ∇λ, materializes ψ(z, a) = (z, a + λ(z)) from the
/// extension of t₂ to that of t₁ and verifies that it is an isomorphism of
/// crossed modules inducing the identity on W → V and on G → H.
pub fn coboundary_iso(
    rep: &TwoRep,
    t1: &ExtensionTuple,
    t2: &ExtensionTuple,
    w: &CoboundaryWitness,
) -> Result<IsoReport, ExtensionError> {
    w.check(rep)?;
    let violations = conditions(rep, t1, t2, w);
    if !violations.is_empty() {
        return Ok(IsoReport { violations, psi1: Vec::new(), psi0: Vec::new() });
    }
    let (src, dst) = (build_extension(rep, t2)?, build_extension(rep, t1)?);
    let (ts, td) = (src.tables(), dst.tables());
    let psi1: Vec<usize> = (0..src.e1_order())
        .map(|x| {
            let (g, a) = ts.e1_element(x);
            td.e1_index(g, &add(&a, &w.lambda1[g]))
        })
        .collect();
    let psi0: Vec<usize> = (0..src.e0_order())
        .map(|y| {
            let (h, a) = ts.e0_element(y);
            td.e0_index(h, &add(&a, &w.lambda0[h]))
        })
        .collect();

    let mut out = Vec::new();
    for (level, psi) in [(1, &psi1), (0, &psi0)] {
        let mut seen = vec![false; psi.len()];
        psi.iter().for_each(|&k| seen[k] = true);
        if !seen.iter().all(|&s| s) {
            out.push(IsoViolation::NotBijective { level });
        }
    }
    let pairs = |n: usize| (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)));
    if let Some(at) = pairs(psi1.len()).find(|&(a, b)| psi1[ts.e1[a][b]] != td.e1[psi1[a]][psi1[b]]) {
        out.push(IsoViolation::Homomorphism { level: 1, at });
    }
    if let Some(at) = pairs(psi0.len()).find(|&(a, b)| psi0[ts.e0[a][b]] != td.e0[psi0[a]][psi0[b]]) {
        out.push(IsoViolation::Homomorphism { level: 0, at });
    }
    if let Some(x) = (0..psi1.len()).find(|&x| psi0[ts.eps[x]] != td.eps[psi1[x]]) {
        out.push(IsoViolation::StructureMap { at: x });
    }
    if let Some(at) = (0..psi1.len())
        .flat_map(|x| (0..psi0.len()).map(move |y| (x, y)))
        .find(|&(x, y)| psi1[ts.act[x][y]] != td.act[psi1[x]][psi0[y]])
    {
        out.push(IsoViolation::Action { at });
    }
    let ws: Vec<Vector> = (0..src.e1_order()).filter_map(|x| src.j1_inv(x)).collect();
    let vs: Vec<Vector> = (0..src.e0_order()).filter_map(|y| src.j0_inv(y)).collect();
    if let Some(wv) = ws.iter().find(|wv| psi1[src.j1(wv)] != dst.j1(wv)) {
        out.push(IsoViolation::Identity { level: 1, at: src.j1(wv) });
    } else if let Some(x) = (0..psi1.len()).find(|&x| dst.pi1(psi1[x]) != src.pi1(x)) {
        out.push(IsoViolation::Identity { level: 1, at: x });
    }
    if let Some(vv) = vs.iter().find(|vv| psi0[src.j0(vv)] != dst.j0(vv)) {
        out.push(IsoViolation::Identity { level: 0, at: src.j0(vv) });
    } else if let Some(y) = (0..psi0.len()).find(|&y| dst.pi0(psi0[y]) != src.pi0(y)) {
        out.push(IsoViolation::Identity { level: 0, at: y });
    }
    Ok(IsoReport { violations: out, psi1, psi0 })
}

/// Solves ∇λ = tc₂ − tc₁ for a degree-1 cochain λ whose (1,0,0) component
/// vanishes; `None` if the two cocycles are not cohomologous in the H²
/// subcomplex.
pub fn are_cohomologous(
    cx: &TotalComplex<'_>,
    tc1: &TotalCochain,
    tc2: &TotalCochain,
) -> Result<Option<CoboundaryWitness>, ExtensionError> {
    if tc1.degree() != 2 || tc2.degree() != 2 {
        return Err(ExtensionError::Shape("cohomology classes of extensions live in degree 2".into()));
    }
    let rep = cx.rep();
    let (b1, b2) = (cx.basis(1)?, cx.basis(2)?);
    let diff = sub(&tc2.to_vector(&b2), &tc1.to_vector(&b2));
    let cols = b1.coordinates_where(|t: Tri| t != Tri::new(1, 0, 0));
    let m = cx.nabla_matrix_in(&b1, &b2)?.select_cols(&cols).to_dense();
    let Some(sol) = m.solve(&diff) else { return Ok(None) };
    let mut full = vec![rep.field().zero(); b1.len()];
    for (x, &c) in sol.into_iter().zip(&cols) {
        full[c] = x;
    }
    let lambda = TotalCochain::from_vector(rep, &b1, &full)?;
    Ok(Some(CrossedFunctorWitness::from_cochain(rep, &lambda)?))
}

/// A random λ with λ₀(1) = 0 and λ₁(1) = 0, so that shifting by ∇λ keeps a
/// tuple normalized.
pub fn random_coboundary<R: Rng>(rep: &TwoRep, rng: &mut R) -> CoboundaryWitness {
    let field = rep.field();
    let mut w = CrossedFunctorWitness::zero(rep);
    for v in w.lambda0.iter_mut().skip(1).chain(w.lambda1.iter_mut().skip(1)) {
        v.iter_mut().for_each(|x| *x = random_scalar(field, rng));
    }
    w
}

/// The tuple of the cocycle of `t` plus ∇λ.
pub fn coboundary_shift(cx: &TotalComplex<'_>, t: &ExtensionTuple, w: &CoboundaryWitness) -> Result<ExtensionTuple, ExtensionError> {
    let rep = cx.rep();
    let tc = cocycle_from_tuple(cx, t)?;
    let shift = cx.nabla(&w.to_cochain(rep)?)?;
    let basis = TotalBasis::new(rep, 2)?;
    let sum = TotalCochain::from_vector(rep, &basis, &add(&tc.to_vector(&basis), &shift.to_vector(&basis)))?;
    tuple_from_cocycle(cx, &sum)
}
