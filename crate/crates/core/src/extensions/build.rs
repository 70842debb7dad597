use serde::Serialize;

use super::{add, sub, ExtensionError, ExtensionTuple};
use crate::group::{self, validate_group, CrossedModule, CrossedModuleViolation, FiniteGroup, GroupViolation};
use crate::linalg::{Field, Matrix, Scalar, Vector};
use crate::rep::{twisted_tables, RepError, TwistedTables, Twists, TwoRep, TwoVectorSpace};

/// The twisted product crossed module E₁ = G ⋉^{ω₁} W → E₀ = H ⋉^{ω₀} V of a
/// tuple, with its inclusions j and projections π.
#[derive(Clone, Debug)]
pub struct BuiltExtension {
    rep: TwoRep,
    tuple: ExtensionTuple,
    tables: TwistedTables,
}

/// Builds the extension of a valid tuple. Finite prime fields only.
pub fn build_extension(rep: &TwoRep, t: &ExtensionTuple) -> Result<BuiltExtension, ExtensionError> {
    t.validate(rep)?;
    build_extension_unchecked(rep, t)
}

/// Tabulates the twisted product without checking the tuple; use
/// [`verify_extension`] to find out what is wrong with it.
pub fn build_extension_unchecked(rep: &TwoRep, t: &ExtensionTuple) -> Result<BuiltExtension, ExtensionError> {
    t.check_shape(rep)?;
    let tw = Twists {
        phicheck: &|g| t.phicheck[g].clone(),
        omega0: &|a, b| t.omega0[a][b].clone(),
        alpha: &|h, g| t.alpha[h][g].clone(),
        omega1: &|a, b| t.omega1[a][b].clone(),
    };
    let tables = twisted_tables(rep, &tw)?;
    Ok(BuiltExtension { rep: rep.clone(), tuple: t.clone(), tables })
}

impl BuiltExtension {
    pub fn rep(&self) -> &TwoRep {
        &self.rep
    }

    pub fn tuple(&self) -> &ExtensionTuple {
        &self.tuple
    }

    pub fn tables(&self) -> &TwistedTables {
        &self.tables
    }

    pub fn e1_order(&self) -> usize {
        self.tables.e1.len()
    }

    pub fn e0_order(&self) -> usize {
        self.tables.e0.len()
    }

    /// j₁(w), the element (1, w) shifted so that j₁(0) is the identity.
    pub fn j1(&self, w: &[Scalar]) -> usize {
        self.tables.e1_index(0, &add(w, &self.tables.unit_w))
    }

    pub fn j0(&self, v: &[Scalar]) -> usize {
        self.tables.e0_index(0, &add(v, &self.tables.unit_v))
    }

    /// j₁⁻¹ on the kernel of π₁.
    pub fn j1_inv(&self, x: usize) -> Option<Vector> {
        let (g, w) = self.tables.e1_element(x);
        (g == 0).then(|| sub(&w, &self.tables.unit_w))
    }

    pub fn j0_inv(&self, y: usize) -> Option<Vector> {
        let (h, v) = self.tables.e0_element(y);
        (h == 0).then(|| sub(&v, &self.tables.unit_v))
    }

    pub fn pi1(&self, x: usize) -> usize {
        self.tables.e1_element(x).0
    }

    pub fn pi0(&self, y: usize) -> usize {
        self.tables.e0_element(y).0
    }

    /// The canonical section σ₁(g) = (g, 0).
    pub fn sigma1(&self, g: usize) -> usize {
        self.tables.e1_index(g, &self.rep.zero_w())
    }

    pub fn sigma0(&self, h: usize) -> usize {
        self.tables.e0_index(h, &self.rep.zero_v())
    }

    /// The tables as a validated crossed module.
    pub fn crossed_module(&self) -> Result<CrossedModule, RepError> {
        self.tables.crossed_module()
    }

    fn all_w(&self) -> Vec<Vector> {
        (0..self.e1_order())
            .filter_map(|x| self.j1_inv(x))
            .collect()
    }

    fn all_v(&self) -> Vec<Vector> {
        (0..self.e0_order()).filter_map(|y| self.j0_inv(y)).collect()
    }
}

/// One failed property of a candidate extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum ExtensionViolation {
    /// E₁ or E₀ is not a group.
    Group { level: usize, violation: GroupViolation },
    CrossedModule { violation: CrossedModuleViolation },
    /// A row 0 → W → E₁ → G → 1 (level 1) or 0 → V → E₀ → H → 1 (level 0)
    /// is not a short exact sequence of groups.
    Exactness { level: usize, detail: String },
    /// ε∘j₁ ≠ j₀∘φ (top square) or π₀∘ε ≠ i∘π₁ (bottom square).
    Square { square: String, at: usize },
    /// j or π is not compatible with the actions.
    Action { map: String, at: (usize, usize) },
    /// The image of W or V is not central in the kernel it spans.
    Central { level: usize, at: (usize, usize) },
}

impl std::fmt::Display for ExtensionViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Group { level, violation } => write!(f, "E{level} is not a group: {violation}"),
            Self::CrossedModule { violation } => write!(f, "E₁ → E₀ is not a crossed module: {violation}"),
            Self::Exactness { level, detail } => write!(f, "row {level} is not exact: {detail}"),
            Self::Square { square, at } => write!(f, "the {square} square does not commute at {at}"),
            Self::Action { map, at } => write!(f, "{map} is not compatible with the actions at {at:?}"),
            Self::Central { level, at } => write!(f, "the kernel at level {level} is not central at {at:?}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub e1_order: usize,
    pub e0_order: usize,
    pub violations: Vec<ExtensionViolation>,
}

impl ExtensionReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks everything that makes the tables an extension of crossed modules:
/// group axioms, the crossed-module axioms, exactness of both rows,
/// commutativity of both squares, compatibility of j and π with the actions,
/// and centrality of the kernels. Failures are reported, not raised.
pub fn verify_extension(e: &BuiltExtension) -> ExtensionReport {
    use ExtensionViolation::*;
    let t = &e.tables;
    let rep = &e.rep;
    let xm = rep.xm();
    let mut out = Vec::new();

    let mut groups_ok = true;
    for (level, tab) in [(1, &t.e1), (0, &t.e0)] {
        if let Err(violation) = validate_group(tab) {
            out.push(Group { level, violation });
            groups_ok = false;
        }
    }
    if groups_ok {
        let e1 = FiniteGroup::from_table(t.e1.clone()).expect("validated");
        let e0 = FiniteGroup::from_table(t.e0.clone()).expect("validated");
        match group::CrossedModule::new_unchecked(e1, e0, t.eps.clone(), t.act.clone()) {
            Ok(cm) => out.extend(cm.violations().into_iter().map(|violation| CrossedModule { violation })),
            Err(err) => out.push(Exactness { level: 1, detail: err.to_string() }),
        }
    }

    let ws = e.all_w();
    let vs = e.all_v();
    let mul1 = |a: usize, b: usize| t.e1[a][b];
    let mul0 = |a: usize, b: usize| t.e0[a][b];

    // Both rows: j an injective homomorphism, π a surjective one, ker π = im j.
    let mut exact = |level: usize, detail: String| out.push(Exactness { level, detail });
    if let Some((a, b)) = pairs(&ws).find(|(a, b)| mul1(e.j1(a), e.j1(b)) != e.j1(&add(a, b))) {
        exact(1, format!("j₁ is not a homomorphism at ({}, {})", fmt_vec(a), fmt_vec(b)));
    }
    if let Some((a, b)) = pairs(&vs).find(|(a, b)| mul0(e.j0(a), e.j0(b)) != e.j0(&add(a, b))) {
        exact(0, format!("j₀ is not a homomorphism at ({}, {})", fmt_vec(a), fmt_vec(b)));
    }
    let n1 = e.e1_order();
    let n0 = e.e0_order();
    if let Some((a, b)) = index_pairs(n1).find(|&(a, b)| e.pi1(mul1(a, b)) != xm.g().mul(e.pi1(a), e.pi1(b))) {
        exact(1, format!("π₁ is not a homomorphism at ({a}, {b})"));
    }
    if let Some((a, b)) = index_pairs(n0).find(|&(a, b)| e.pi0(mul0(a, b)) != xm.h().mul(e.pi0(a), e.pi0(b))) {
        exact(0, format!("π₀ is not a homomorphism at ({a}, {b})"));
    }
    let dim_w = rep.dim_w();
    let dim_v = rep.dim_v();
    let p = t.p as usize;
    if ws.len() != p.pow(dim_w as u32) || (0..n1).filter(|&x| e.pi1(x) == 0).count() != ws.len() {
        exact(1, "ker π₁ ≠ im j₁".into());
    }
    if vs.len() != p.pow(dim_v as u32) || (0..n0).filter(|&y| e.pi0(y) == 0).count() != vs.len() {
        exact(0, "ker π₀ ≠ im j₀".into());
    }
    if (0..xm.g().order()).any(|g| e.pi1(e.sigma1(g)) != g) {
        exact(1, "π₁ is not surjective".into());
    }
    if (0..xm.h().order()).any(|h| e.pi0(e.sigma0(h)) != h) {
        exact(0, "π₀ is not surjective".into());
    }

    // Squares.
    if let Some(k) = ws.iter().position(|w| t.eps[e.j1(w)] != e.j0(&rep.phi().mul_vec(w))) {
        out.push(Square { square: "inclusion".into(), at: e.j1(&ws[k]) });
    }
    if let Some(x) = (0..n1).find(|&x| e.pi0(t.eps[x]) != xm.i(e.pi1(x))) {
        out.push(Square { square: "projection".into(), at: x });
    }

    // Actions: V acts trivially on W, and π is equivariant.
    'j: for w in &ws {
        for v in &vs {
            let (x, y) = (e.j1(w), e.j0(v));
            if t.act[x][y] != x {
                out.push(Action { map: "j".into(), at: (x, y) });
                break 'j;
            }
        }
    }
    if let Some((x, y)) =
        (0..n1).flat_map(|x| (0..n0).map(move |y| (x, y))).find(|&(x, y)| e.pi1(t.act[x][y]) != xm.act(e.pi1(x), e.pi0(y)))
    {
        out.push(Action { map: "π".into(), at: (x, y) });
    }

    // Centrality of the kernels.
    let ker1: Vec<usize> = ws.iter().map(|w| e.j1(w)).collect();
    let ker0: Vec<usize> = vs.iter().map(|v| e.j0(v)).collect();
    for (level, ker, mul) in [(1, &ker1, &mul1 as &dyn Fn(usize, usize) -> usize), (0, &ker0, &mul0)] {
        if let Some((a, b)) =
            ker.iter().flat_map(|&a| ker.iter().map(move |&b| (a, b))).find(|&(a, b)| mul(a, b) != mul(b, a))
        {
            out.push(Central { level, at: (a, b) });
        }
    }

    ExtensionReport { e1_order: n1, e0_order: n0, violations: out }
}

fn pairs(xs: &[Vector]) -> impl Iterator<Item = (&Vector, &Vector)> {
    xs.iter().flat_map(move |a| xs.iter().map(move |b| (a, b)))
}

fn index_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

fn fmt_vec(v: &[Scalar]) -> String {
    format!("[{}]", v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","))
}

fn unit_vector(field: Field, dim: usize, k: usize) -> Vector {
    (0..dim).map(|i| if i == k { field.one() } else { field.zero() }).collect()
}

fn matrix_from_columns(field: Field, rows: usize, cols: &[Vector]) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols.len());
    for (c, v) in cols.iter().enumerate() {
        for (r, x) in v.iter().enumerate() {
            m.set(r, c, x.clone());
        }
    }
    m
}

/// Recovers the 2-representation and the tuple from a split extension using
/// only its group structure and the canonical section σ(z) = (z, 0):
/// ω₀(h₀,h₁) = σ₀(h₀)σ₀(h₁)σ₀(h₀h₁)⁻¹, ω₁ likewise,
/// φ̌(g) = ε(σ₁g)·σ₀(i g)⁻¹ and α(h;g) = σ₁(g)^{σ₀h}·σ₁(g^h)⁻¹,
/// with ρ₀⁰, ρ₀¹, ρ₁ and φ read off conjugation, the action and ε on the
/// kernels.
pub fn induced_rep_from_split(e: &BuiltExtension) -> Result<(TwoRep, ExtensionTuple), ExtensionError> {
    let t = &e.tables;
    let e1 = FiniteGroup::from_table(t.e1.clone())?;
    let e0 = FiniteGroup::from_table(t.e0.clone())?;
    let base = e.rep.xm();
    let field = e.rep.field();
    let (dw, dv) = (e.rep.dim_w(), e.rep.dim_v());
    let (ng, nh) = (base.g().order(), base.h().order());
    let in_v = |y: usize| e.j0_inv(y).ok_or_else(|| internal("element expected in the image of V"));
    let in_w = |x: usize| e.j1_inv(x).ok_or_else(|| internal("element expected in the image of W"));
    let act = |x: usize, y: usize| t.act[x][y];

    let mut rho00 = Vec::with_capacity(nh);
    let mut rho01 = Vec::with_capacity(nh);
    for h in 0..nh {
        let s = e.sigma0(h);
        let cols = (0..dv)
            .map(|k| in_v(e0.mul(e0.mul(s, e.j0(&unit_vector(field, dv, k))), e0.inv(s))))
            .collect::<Result<Vec<_>, _>>()?;
        rho00.push(matrix_from_columns(field, dv, &cols));
        let cols = (0..dw).map(|k| in_w(act(e.j1(&unit_vector(field, dw, k)), s))).collect::<Result<Vec<_>, _>>()?;
        let inv = matrix_from_columns(field, dw, &cols);
        rho01.push(inv.inverse().ok_or_else(|| internal("σ₀(h) acts non-invertibly on W"))?);
    }
    let mut rho1 = Vec::with_capacity(ng);
    for g in 0..ng {
        let s = e.sigma1(g);
        let cols = (0..dv)
            .map(|k| in_w(e1.mul(act(s, e.j0(&unit_vector(field, dv, k))), e1.inv(s))))
            .collect::<Result<Vec<_>, _>>()?;
        rho1.push(matrix_from_columns(field, dw, &cols));
    }
    let cols = (0..dw).map(|k| in_v(t.eps[e.j1(&unit_vector(field, dw, k))])).collect::<Result<Vec<_>, _>>()?;
    let phi = matrix_from_columns(field, dv, &cols);
    let rep = TwoRep::new(base.clone(), TwoVectorSpace::new(phi, dw, dv)?, rho00, rho01, rho1)?;

    let s0 = |h: usize| e.sigma0(h);
    let s1 = |g: usize| e.sigma1(g);
    let (g, h) = (base.g(), base.h());
    let tuple = ExtensionTuple {
        phicheck: (0..ng).map(|x| in_v(e0.mul(t.eps[s1(x)], e0.inv(s0(base.i(x)))))).collect::<Result<_, _>>()?,
        omega0: (0..nh)
            .map(|a| (0..nh).map(|b| in_v(e0.mul(e0.mul(s0(a), s0(b)), e0.inv(s0(h.mul(a, b)))))).collect())
            .collect::<Result<_, _>>()?,
        alpha: (0..nh)
            .map(|y| (0..ng).map(|x| in_w(e1.mul(act(s1(x), s0(y)), e1.inv(s1(base.act(x, y)))))).collect())
            .collect::<Result<_, _>>()?,
        omega1: (0..ng)
            .map(|a| (0..ng).map(|b| in_w(e1.mul(e1.mul(s1(a), s1(b)), e1.inv(s1(g.mul(a, b)))))).collect())
            .collect::<Result<_, _>>()?,
    };
    Ok((rep, tuple))
}

fn internal(msg: &str) -> ExtensionError {
    ExtensionError::Rep(RepError::Internal(msg.into()))
}
