//! Cochains C^{p,q}_r and the three grid differentials: ∂ in the p-direction,
//! δ in the q-direction and δ′/δ₍₁₎ in the r-direction.
//!
//! Every operator is given pointwise: at a point of its target domain it
//! returns a [`LinForm`] on the source cochains. Materialized maps and
//! matrices are built from these forms.

mod form;
mod trivial;

pub use form::LinForm;
pub use trivial::{omega_tot_form, TrivialCoefficients};

use rand::Rng;
use thiserror::Error;

use crate::group::{group_face, Arrow, CrossedModule, GroupError, Point, Row, Tri};
use crate::linalg::{Field, Matrix, Scalar, SparseMatrix, Vector};
use crate::rep::TwoRep;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GridError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("point has tridegree {found}, expected {expected}")]
    PointShape { expected: Tri, found: Tri },
    #[error("cochain has {found} values, expected {expected}")]
    CochainShape { expected: usize, found: usize },
    #[error("{op} is not defined on tridegree {src}")]
    Degree { op: String, src: Tri },
}

/// A cochain: one vector (in V when r = 0, in W otherwise) per point of
/// 𝒢_p^q × G^r, in codec order.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    tri: Tri,
    dim: usize,
    field: Field,
    values: Vec<Vector>,
}

impl Cochain {
    pub fn zero(rep: &TwoRep, tri: Tri) -> Result<Cochain, GridError> {
        let n = domain(rep.xm(), tri)?;
        let dim = rep.target_dim(tri.r);
        Ok(Cochain { tri, dim, field: rep.field(), values: vec![vec![rep.field().zero(); dim]; n] })
    }

    /// A cochain with uniformly random entries (small integers over ℚ).
    pub fn random<R: Rng>(rep: &TwoRep, tri: Tri, rng: &mut R) -> Result<Cochain, GridError> {
        let mut c = Cochain::zero(rep, tri)?;
        let f = c.field;
        for v in &mut c.values {
            for x in v.iter_mut() {
                *x = random_scalar(f, rng);
            }
        }
        Ok(c)
    }

    pub fn from_fn(rep: &TwoRep, tri: Tri, mut f: impl FnMut(&Point) -> Vector) -> Result<Cochain, GridError> {
        let mut c = Cochain::zero(rep, tri)?;
        for (i, v) in c.values.iter_mut().enumerate() {
            let x = rep.xm().decode(tri, i)?;
            let val = f(&x);
            if val.len() != c.dim {
                return Err(GridError::CochainShape { expected: c.dim, found: val.len() });
            }
            *v = val;
        }
        Ok(c)
    }

    /// Builds a cochain from a flat coordinate vector (point-major).
    pub fn from_flat(rep: &TwoRep, tri: Tri, flat: &[Scalar]) -> Result<Cochain, GridError> {
        let mut c = Cochain::zero(rep, tri)?;
        let expected = c.values.len() * c.dim;
        if flat.len() != expected {
            return Err(GridError::CochainShape { expected, found: flat.len() });
        }
        if c.dim > 0 {
            for (v, chunk) in c.values.iter_mut().zip(flat.chunks(c.dim)) {
                v.clone_from_slice(chunk);
            }
        }
        Ok(c)
    }

    pub fn to_flat(&self) -> Vector {
        self.values.iter().flatten().cloned().collect()
    }

    pub fn tri(&self) -> Tri {
        self.tri
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, idx: usize) -> &[Scalar] {
        &self.values[idx]
    }

    pub fn set(&mut self, idx: usize, v: Vector) {
        assert_eq!(v.len(), self.dim);
        self.values[idx] = v;
    }

    pub fn at(&self, xm: &CrossedModule, x: &Point) -> &[Scalar] {
        &self.values[xm.encode(x)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(Scalar::is_zero)
    }
}

pub(crate) fn random_scalar<R: Rng>(f: Field, rng: &mut R) -> Scalar {
    match f {
        Field::Prime(p) => f.from_i64(rng.gen_range(0..p as i64)),
        Field::Rational => f.from_i64(rng.gen_range(-3..=3)),
    }
}

pub(crate) fn domain(xm: &CrossedModule, t: Tri) -> Result<usize, GridError> {
    Ok(xm.domain_size(t).ok_or(GroupError::DomainTooLarge(t))?)
}

/// Pointwise evaluation of the grid differentials for one representation.
#[derive(Clone, Copy)]
pub struct Grid<'a> {
    rep: &'a TwoRep,
}

impl<'a> Grid<'a> {
    pub fn new(rep: &'a TwoRep) -> Grid<'a> {
        Grid { rep }
    }

    pub fn rep(&self) -> &'a TwoRep {
        self.rep
    }

    pub fn xm(&self) -> &'a CrossedModule {
        self.rep.xm()
    }

    pub fn field(&self) -> Field {
        self.rep.field()
    }

    pub fn dim(&self, r: usize) -> usize {
        self.rep.target_dim(r)
    }

    pub(crate) fn empty_form(&self, src: Tri, dst_r: usize) -> LinForm {
        LinForm::zero(self.field(), src, self.dim(dst_r), self.dim(src.r))
    }

    pub(crate) fn id(&self, r: usize) -> Matrix {
        Matrix::identity(self.field(), self.dim(r))
    }

    pub(crate) fn idx(&self, rows: Vec<Row>, f: Vec<usize>) -> usize {
        self.xm().encode(&Point { rows, f })
    }

    /// h₁h₂⋯ over a list of H-elements.
    pub(crate) fn hprod(&self, hs: impl IntoIterator<Item = usize>) -> usize {
        self.xm().h().prod(hs)
    }

    /// The tuple f⃗ acted on componentwise by h.
    pub(crate) fn act_all(&self, f: &[usize], h: usize) -> Vec<usize> {
        f.iter().map(|&x| self.xm().act(x, h)).collect()
    }

    /// ∂: C^{p,q}_r → C^{p+1,q}_r at a point `x` of the target.
    pub fn del(&self, src: Tri, x: &Point) -> LinForm {
        let xm = self.xm();
        let mut out = self.empty_form(src, src.r);
        let id = self.id(src.r);
        for k in 0..=src.p + 1 {
            let rows: Vec<Row> = x.rows.iter().map(|row| xm.face_unchecked(k, row)).collect();
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let idx = self.idx(rows, x.f.clone());
            if k == 0 && src.r > 0 {
                let firsts: Vec<Arrow> = x.rows.iter().map(|row| xm.row_arrows(row)[0]).collect();
                let g = if firsts.is_empty() { 0 } else { xm.multiprod(&firsts).g };
                out.add(idx, self.rep.rho01_inv(xm.i(g)));
            } else {
                out.add_signed(idx, sign, &id);
            }
        }
        out
    }

    /// The j-th q-face of a column of rows: δ₀ drops the first row, δ_{q}
    /// drops the last, interior faces multiply adjacent rows with ⋎.
    pub fn qface(&self, j: usize, rows: &[Row]) -> Vec<Row> {
        let n = rows.len();
        let mut out = rows.to_vec();
        if j == 0 {
            out.remove(0);
        } else if j == n {
            out.pop();
        } else {
            out[j - 1] = self.xm().row_vmul(&rows[j - 1], &rows[j]);
            out.remove(j);
        }
        out
    }

    /// δ: C^{p,q}_r → C^{p,q+1}_r at a point `x` of the target.
    pub fn delta(&self, src: Tri, x: &Point) -> LinForm {
        let xm = self.xm();
        let mut out = self.empty_form(src, src.r);
        let id = self.id(src.r);
        let q1 = src.q + 1;
        for j in 0..=q1 {
            let rows = self.qface(j, &x.rows);
            let sign = if j % 2 == 0 { 1 } else { -1 };
            if src.r == 0 {
                let idx = self.idx(rows, vec![]);
                if j == 0 {
                    out.add(idx, self.rep.rho00(xm.final_target(&x.rows[0])));
                } else {
                    out.add_signed(idx, sign, &id);
                }
            } else if j == 0 {
                let t = xm.final_target(&x.rows[0]);
                out.add(self.idx(rows, self.act_all(&x.f, t)), &id);
            } else if j == q1 {
                let t = xm.final_target(&x.rows[src.q]);
                out.add_signed(self.idx(rows, x.f.clone()), sign, self.rep.rho01_inv(t));
            } else {
                out.add_signed(self.idx(rows, x.f.clone()), sign, &id);
            }
        }
        out
    }

    /// T = t_p(γ₁)⋯t_p(γ_q), the product of the rows' final targets.
    pub fn targets_product(&self, rows: &[Row]) -> usize {
        self.hprod(rows.iter().map(|r| self.xm().final_target(r)))
    }

    /// δ′ (r = 0) or δ₍₁₎ (r > 0): C^{p,q}_r → C^{p,q}_{r+1}.
    pub fn dr(&self, src: Tri, x: &Point) -> LinForm {
        let xm = self.xm();
        let mut out = self.empty_form(src, src.r + 1);
        let t = self.targets_product(&x.rows);
        if src.r == 0 {
            let m = self.rep.rho01_inv(t) * self.rep.rho1(x.f[0]);
            out.add(self.idx(x.rows.clone(), vec![]), &m);
            return out;
        }
        let id = self.id(src.r);
        let f0 = xm.act(x.f[0], t);
        out.add(self.idx(x.rows.clone(), x.f[1..].to_vec()), self.rep.rho01(xm.i(f0)));
        for k in 1..=src.r + 1 {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let f = group_face(xm.g(), k, &x.f).expect("face index in range");
            out.add_signed(self.idx(x.rows.clone(), f), sign, &id);
        }
        out
    }

    /// Pulls a form back through an inner operator: given `outer` (a form on
    /// the inner operator's target), returns the form of outer ∘ inner on `src`.
    pub fn compose(&self, outer: &LinForm, src: Tri, inner: impl Fn(&Point) -> LinForm) -> LinForm {
        let mid = outer.src();
        let mut out = LinForm::zero(self.field(), src, outer.out_dim(), self.dim(src.r));
        for (idx, m) in outer.terms() {
            let y = self.xm().decode(mid, idx).expect("index from a form on this domain");
            out.add_composed(m, &inner(&y));
        }
        out
    }

    /// Materializes a pointwise operator on a cochain.
    pub fn apply(&self, dst: Tri, c: &Cochain, op: impl Fn(&Point) -> LinForm) -> Result<Cochain, GridError> {
        let n = domain(self.xm(), dst)?;
        let mut out = Cochain::zero(self.rep, dst)?;
        for i in 0..n {
            let x = self.xm().decode(dst, i)?;
            out.values[i] = op(&x).apply(c);
        }
        Ok(out)
    }

    /// The matrix of a pointwise operator src → dst, point-major coordinates.
    pub fn matrix(&self, src: Tri, dst: Tri, op: impl Fn(&Point) -> LinForm) -> Result<SparseMatrix, GridError> {
        let n_out = domain(self.xm(), dst)?;
        let n_in = domain(self.xm(), src)?;
        let (d_out, d_in) = (self.dim(dst.r), self.dim(src.r));
        let mut m = SparseMatrix::new(self.field(), n_in * d_in);
        for i in 0..n_out {
            let x = self.xm().decode(dst, i)?;
            let form = op(&x);
            let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); d_out];
            for (idx, block) in form.terms() {
                for (a, row) in rows.iter_mut().enumerate() {
                    for b in 0..d_in {
                        let s = block.get(a, b);
                        if !s.is_zero() {
                            row.push((idx * d_in + b, s.clone()));
                        }
                    }
                }
            }
            for row in rows {
                m.push_row(row);
            }
        }
        Ok(m)
    }
}
