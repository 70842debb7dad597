use serde::Serialize;

use super::{TotalBasis, TotalComplex, TotalError, MAX_NABLA_DEGREE};
use crate::group::Tri;
use crate::linalg::{quotient_dim, Echelon, Matrix, SparseMatrix, Vector};
use crate::rep::TwoRep;

/// Hⁿ of the total complex, or of the subcomplex with C^{p,0}_0 = 0 for p > 0.
#[derive(Clone, Debug, Serialize)]
pub struct Cohomology {
    pub degree: usize,
    pub subcomplex: bool,
    pub dim: usize,
    pub kernel_dim: usize,
    pub image_dim: usize,
    /// Cocycles whose classes form a basis of Hⁿ, in basis coordinates.
    #[serde(skip)]
    pub representatives: Vec<Vector>,
    #[serde(skip)]
    pub kernel: Vec<Vector>,
    #[serde(skip)]
    pub image: Vec<Vector>,
}

/// Whether a tridegree survives in the subcomplex used for H².
pub fn in_subcomplex(t: Tri) -> bool {
    !(t.p > 0 && t.q == 0 && t.r == 0)
}

fn embed(v: &[crate::linalg::Scalar], cols: &[usize], len: usize, zero: &crate::linalg::Scalar) -> Vector {
    let mut out = vec![zero.clone(); len];
    for (x, &c) in v.iter().zip(cols) {
        out[c] = x.clone();
    }
    out
}

/// The columns `cols` of a sparse matrix, as dense vectors.
fn columns(m: &SparseMatrix, cols: &[usize]) -> Vec<Vector> {
    let f = m.field();
    let slot: std::collections::HashMap<usize, usize> = cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let mut out = vec![vec![f.zero(); m.rows()]; cols.len()];
    for i in 0..m.rows() {
        for (c, s) in m.row(i) {
            if let Some(&k) = slot.get(c) {
                out[k][i] = s.clone();
            }
        }
    }
    out
}

impl<'a> TotalComplex<'a> {
    /// Hⁿ = ker ∇ⁿ / im ∇ⁿ⁻¹, with representatives. With `subcomplex`,
    /// the C^{p,0}_0 components (p > 0) are set to zero in both.
    pub fn cohomology(&self, n: usize, subcomplex: bool) -> Result<Cohomology, TotalError> {
        if n > MAX_NABLA_DEGREE {
            return Err(TotalError::Degree { n, max: MAX_NABLA_DEGREE });
        }
        let field = self.rep().field();
        let keep = |t: Tri| !subcomplex || in_subcomplex(t);
        let bn = self.basis(n)?;
        let cols = bn.coordinates_where(keep);
        let d = self.nabla_matrix_in(&bn, &self.basis(n + 1)?)?.select_cols(&cols).to_dense();
        let kernel: Vec<Vector> = d.kernel_basis().iter().map(|v| embed(v, &cols, bn.len(), &field.zero())).collect();
        let mut image = Vec::new();
        if n > 0 {
            let bp = self.basis(n - 1)?;
            let prev = self.nabla_matrix_in(&bp, &bn)?;
            image = columns(&prev, &bp.coordinates_where(keep));
        }
        let dim = quotient_dim(field, &kernel, &image)?;
        let mut ech = Echelon::new(field, bn.len());
        for v in &image {
            ech.insert(v);
        }
        let image_dim = ech.rank();
        let representatives: Vec<Vector> = kernel.iter().filter(|v| ech.insert(v)).cloned().collect();
        debug_assert_eq!(representatives.len(), dim);
        Ok(Cohomology { degree: n, subcomplex, dim, kernel_dim: kernel.len(), image_dim, representatives, kernel, image })
    }

    /// Whether `v` (coordinates of a cocycle in `basis`) is a coboundary.
    pub fn is_coboundary(&self, basis: &TotalBasis, v: &[crate::linalg::Scalar], subcomplex: bool) -> Result<bool, TotalError> {
        let n = basis.degree();
        if n == 0 {
            return Ok(v.iter().all(|s| s.is_zero()));
        }
        let bp = self.basis(n - 1)?;
        let cols = bp.coordinates_where(|t| !subcomplex || in_subcomplex(t));
        let prev = self.nabla_matrix_in(&bp, basis)?.select_cols(&cols).to_dense();
        Ok(prev.solve(v).is_some())
    }
}

/// V^𝒢 = {v : ρ₀⁰(h)v = v for all h, ρ₁(g)v = 0 for all g}, as a basis.
pub fn h0_fixed(rep: &TwoRep) -> Vec<Vector> {
    let f = rep.field();
    let dv = rep.dim_v();
    let xm = rep.xm();
    let mut stack = Matrix::zeros(f, 0, dv);
    for h in 0..xm.h().order() {
        stack = stack.vcat(&(rep.rho00(h) - &Matrix::identity(f, dv)));
    }
    for g in 0..xm.g().order() {
        stack = stack.vcat(rep.rho1(g));
    }
    stack.kernel_basis()
}
