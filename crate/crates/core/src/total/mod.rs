//! The total complex C^n_tot = ⊕_{p+q+r=n} C^{p,q}_r and its differential
//!
//!   ∇ = (−1)^p (δ₍₁₎ + Σ_{a+b>0} (−1)^{(a+1)(r+b+1)} Δ_{a,b}),
//!
//! with Δ₁,₀ = ∂, Δ₀,₁ = δ and Δ₁,₁ = Δ.
//!
//! The complex is built on normalized cochains (those vanishing whenever
//! some loose G-argument f_i is the identity). Every grid map preserves them,
//! and ∇² = 0 holds there; on arbitrary cochains the off-page difference
//! maps are only correct up to degenerate simplices.

mod bar;
mod cohomology;
mod functor;

pub use bar::bar_cohomology_dim;
pub use cohomology::{h0_fixed, in_subcomplex, Cohomology};
pub use functor::{principal_witness, CrossedFunctorReport, CrossedFunctorViolation, CrossedFunctorWitness};

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::diffmaps::{DiffConfig, DiffError, DiffMaps, Op, Relation};
use crate::grid::{domain, random_scalar, Cochain, Grid, GridError, LinForm};
use crate::group::{CrossedModule, GroupError, Point, Row, Tri};
use crate::linalg::{LinalgError, Scalar, SparseMatrix, Vector};
use crate::rep::TwoRep;

/// ∇ is defined on C^n for n ≤ this (every Δ_{a,b} it needs has a formula).
pub const MAX_NABLA_DEGREE: usize = 4;
/// ∇² = 0 is verified on C^n for n ≤ this.
pub const MAX_NABLA2_DEGREE: usize = 3;
/// Basis sizes beyond this are not materialized as matrices.
pub const MAX_BASIS: usize = 250_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TotalError {
    #[error("degree {n} is beyond the truncation (at most {max})")]
    Degree { n: usize, max: usize },
    #[error("total degree {n} has {size} basis vectors, too many to materialize")]
    TooLarge { n: usize, size: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Diff(#[from] DiffError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl From<GroupError> for TotalError {
    fn from(e: GroupError) -> Self {
        TotalError::Grid(e.into())
    }
}

fn sgn(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The sign with which `op` enters ∇ on the source tridegree `src`.
pub fn nabla_sign(op: Op, src: Tri) -> i64 {
    let (a, b) = match op {
        Op::Dr => return sgn(src.p),
        Op::Del => (1, 0),
        Op::Delta => (0, 1),
        Op::D(a, b) => (a, b),
    };
    sgn(src.p + (a + 1) * (src.r + b + 1))
}

/// The maps of ∇ that land in `dst`, with their sources.
pub fn nabla_parts(dst: Tri) -> Vec<(Op, Tri)> {
    let mut out = Vec::new();
    if dst.r > 0 {
        out.push((Op::Dr, Tri::new(dst.p, dst.q, dst.r - 1)));
    }
    for a in 0..=dst.p {
        for b in 0..=dst.q {
            let op = match (a, b) {
                (1, 0) => Op::Del,
                (0, 1) => Op::Delta,
                (a, b) if a >= 1 && b >= 1 => Op::D(a, b),
                _ => continue,
            };
            out.push((op, Tri::new(dst.p - a, dst.q - b, dst.r + a + b - 1)));
        }
    }
    out
}

pub(crate) fn is_normalized(xm: &CrossedModule, x: &Point) -> bool {
    !x.f.contains(&xm.g().identity())
}

/// Coordinates of C^n_tot: for each tridegree in [`Tri::of_degree`] order,
/// the normalized points in codec order, each contributing `dim` scalars.
#[derive(Clone, Debug)]
pub struct TotalBasis {
    degree: usize,
    blocks: Vec<BasisBlock>,
    len: usize,
}

#[derive(Clone, Debug)]
pub struct BasisBlock {
    pub tri: Tri,
    pub dim: usize,
    pub offset: usize,
    /// Codec indices of the normalized points.
    pub points: Vec<usize>,
    position: BTreeMap<usize, usize>,
}

impl BasisBlock {
    pub fn len(&self) -> usize {
        self.points.len() * self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Position of the first coordinate of codec point `idx`, if normalized.
    pub fn coordinate(&self, idx: usize) -> Option<usize> {
        self.position.get(&idx).map(|k| self.offset + k * self.dim)
    }
}

impl TotalBasis {
    pub fn new(rep: &TwoRep, n: usize) -> Result<TotalBasis, TotalError> {
        let xm = rep.xm();
        let mut blocks = Vec::new();
        let mut offset = 0;
        for tri in Tri::of_degree(n) {
            let dim = rep.target_dim(tri.r);
            let size = domain(xm, tri)?;
            let mut points = Vec::new();
            if dim > 0 {
                for idx in 0..size {
                    if is_normalized(xm, &xm.decode(tri, idx)?) {
                        points.push(idx);
                    }
                    if offset + points.len() * dim > MAX_BASIS {
                        return Err(TotalError::TooLarge { n, size: offset + points.len() * dim });
                    }
                }
            }
            let position = points.iter().enumerate().map(|(k, &i)| (i, k)).collect();
            let block = BasisBlock { tri, dim, offset, points, position };
            offset += block.len();
            blocks.push(block);
        }
        Ok(TotalBasis { degree: n, blocks, len: offset })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn blocks(&self) -> &[BasisBlock] {
        &self.blocks
    }

    pub fn block(&self, tri: Tri) -> Option<&BasisBlock> {
        self.blocks.iter().find(|b| b.tri == tri)
    }

    /// Coordinates belonging to blocks whose tridegree satisfies `keep`.
    pub fn coordinates_where(&self, keep: impl Fn(Tri) -> bool) -> Vec<usize> {
        self.blocks.iter().filter(|b| keep(b.tri)).flat_map(|b| b.offset..b.offset + b.len()).collect()
    }
}

/// An element of C^n_tot: one cochain per tridegree of total degree n.
#[derive(Clone, Debug, PartialEq)]
pub struct TotalCochain {
    degree: usize,
    components: BTreeMap<Tri, Cochain>,
}

impl TotalCochain {
    pub fn zero(rep: &TwoRep, n: usize) -> Result<TotalCochain, TotalError> {
        let components =
            Tri::of_degree(n).into_iter().map(|t| Ok((t, Cochain::zero(rep, t)?))).collect::<Result<_, TotalError>>()?;
        Ok(TotalCochain { degree: n, components })
    }

    /// A random normalized cochain.
    pub fn random<R: Rng>(rep: &TwoRep, n: usize, rng: &mut R) -> Result<TotalCochain, TotalError> {
        let xm = rep.xm();
        let mut tc = TotalCochain::zero(rep, n)?;
        for (tri, c) in tc.components.iter_mut() {
            let f = rep.field();
            for idx in 0..c.len() {
                if is_normalized(xm, &xm.decode(*tri, idx)?) {
                    c.set(idx, (0..c.dim()).map(|_| random_scalar(f, rng)).collect());
                }
            }
        }
        Ok(tc)
    }

    pub fn from_components(n: usize, comps: impl IntoIterator<Item = Cochain>, rep: &TwoRep) -> Result<TotalCochain, TotalError> {
        let mut tc = TotalCochain::zero(rep, n)?;
        for c in comps {
            tc.set_component(c)?;
        }
        Ok(tc)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn component(&self, tri: Tri) -> Option<&Cochain> {
        self.components.get(&tri)
    }

    pub fn components(&self) -> impl Iterator<Item = (&Tri, &Cochain)> {
        self.components.iter()
    }

    pub fn set_component(&mut self, c: Cochain) -> Result<(), TotalError> {
        let t = c.tri();
        match self.components.get_mut(&t) {
            Some(slot) if slot.len() == c.len() && slot.dim() == c.dim() => {
                *slot = c;
                Ok(())
            }
            _ => Err(TotalError::Shape(format!("no component {t} of matching shape in degree {}", self.degree))),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(Cochain::is_zero)
    }

    /// Whether every component vanishes at degenerate points.
    pub fn is_normalized(&self, xm: &CrossedModule) -> bool {
        self.components.iter().all(|(t, c)| {
            (0..c.len()).all(|i| xm.decode(*t, i).map_or(false, |x| is_normalized(xm, &x)) || c.value(i).iter().all(Scalar::is_zero))
        })
    }

    /// Coordinates in a basis of the same degree (degenerate points are dropped).
    pub fn to_vector(&self, basis: &TotalBasis) -> Vector {
        let mut v = Vec::with_capacity(basis.len());
        for b in basis.blocks() {
            let c = &self.components[&b.tri];
            for &i in &b.points {
                v.extend_from_slice(c.value(i));
            }
        }
        v
    }

    pub fn from_vector(rep: &TwoRep, basis: &TotalBasis, v: &[Scalar]) -> Result<TotalCochain, TotalError> {
        if v.len() != basis.len() {
            return Err(TotalError::Shape(format!("vector of length {} for a basis of {}", v.len(), basis.len())));
        }
        let mut tc = TotalCochain::zero(rep, basis.degree())?;
        for b in basis.blocks() {
            let c = tc.components.get_mut(&b.tri).expect("every tridegree present");
            for (k, &i) in b.points.iter().enumerate() {
                let s = b.offset + k * b.dim;
                c.set(i, v[s..s + b.dim].to_vec());
            }
        }
        Ok(tc)
    }
}

/// One failed point of a ∇² check.
#[derive(Clone, Debug, Serialize)]
pub struct Nabla2Witness {
    pub dst: Tri,
    pub point: Point,
    /// Source tridegrees on which the composite form is nonzero.
    pub sources: Vec<Tri>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Nabla2Mode {
    /// Matrices when both differentials fit, otherwise sampling.
    Auto,
    Exhaustive,
    Sampled,
}

/// Outcome of a ∇² = 0 check on C^n.
#[derive(Clone, Debug, Serialize)]
pub struct Nabla2Report {
    pub degree: usize,
    /// "matrix" or "pointwise".
    pub method: &'static str,
    pub seed: u64,
    /// Matrix entries or (point, form) evaluations examined.
    pub checked: usize,
    /// Whether every normalized target point (or matrix entry) was examined.
    pub exhaustive: bool,
    /// Number of nonzero residual entries; 0 iff ∇² = 0 was confirmed.
    pub deviation: usize,
    pub witnesses: Vec<Nabla2Witness>,
    pub config: DiffConfig,
}

impl Nabla2Report {
    pub fn holds(&self) -> bool {
        self.deviation == 0
    }
}

/// Sampling options for pointwise checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleOptions {
    /// Target tridegrees with at most this many normalized coordinates (or a
    /// matrix problem of at most this dimension) are checked exhaustively.
    pub exhaustive_limit: usize,
    pub samples: usize,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions { exhaustive_limit: 4096, samples: 200 }
    }
}

const MAX_WITNESSES: usize = 5;

/// The total complex of one representation under one choice of readings.
#[derive(Clone, Copy)]
pub struct TotalComplex<'a> {
    dm: DiffMaps<'a>,
}

impl<'a> TotalComplex<'a> {
    pub fn new(rep: &'a TwoRep, cfg: DiffConfig) -> TotalComplex<'a> {
        TotalComplex { dm: DiffMaps::new(Grid::new(rep), cfg) }
    }

    pub fn rep(&self) -> &'a TwoRep {
        self.dm.grid().rep()
    }

    pub fn xm(&self) -> &'a CrossedModule {
        self.dm.grid().xm()
    }

    pub fn diff_maps(&self) -> &DiffMaps<'a> {
        &self.dm
    }

    pub fn basis(&self, n: usize) -> Result<TotalBasis, TotalError> {
        TotalBasis::new(self.rep(), n)
    }

    fn check_degree(n: usize, max: usize) -> Result<(), TotalError> {
        if n > max {
            Err(TotalError::Degree { n, max })
        } else {
            Ok(())
        }
    }

    /// The signed forms of ∇ at a point `x` of `dst`, one per source tridegree.
    pub fn nabla_form(&self, dst: Tri, x: &Point) -> Result<Vec<(Tri, LinForm)>, TotalError> {
        let f = self.dm.grid().field();
        let mut out = Vec::new();
        for (op, src) in nabla_parts(dst) {
            let mut form = self.dm.op_form(op, src, x)?;
            let s = nabla_sign(op, src);
            if s != 1 {
                let mut neg = LinForm::zero(f, src, form.out_dim(), form.in_dim());
                neg.add_scaled(&f.from_i64(s), &form);
                form = neg;
            }
            if !form.is_zero() {
                out.push((src, form));
            }
        }
        Ok(out)
    }

    /// ∇ of a total cochain, evaluated at every point.
    pub fn nabla(&self, tc: &TotalCochain) -> Result<TotalCochain, TotalError> {
        let n = tc.degree();
        Self::check_degree(n, MAX_NABLA_DEGREE)?;
        let rep = self.rep();
        let xm = self.xm();
        let mut out = TotalCochain::zero(rep, n + 1)?;
        for dst in Tri::of_degree(n + 1) {
            let mut c = Cochain::zero(rep, dst)?;
            for idx in 0..c.len() {
                let x = xm.decode(dst, idx)?;
                let mut acc = vec![rep.field().zero(); c.dim()];
                for (src, form) in self.nabla_form(dst, &x)? {
                    for (a, b) in acc.iter_mut().zip(form.apply(&tc.components[&src])) {
                        *a += &b;
                    }
                }
                c.set(idx, acc);
            }
            out.set_component(c)?;
        }
        Ok(out)
    }

    /// The matrix of ∇: C^n → C^{n+1} in the normalized bases.
    pub fn nabla_matrix(&self, n: usize) -> Result<SparseMatrix, TotalError> {
        Self::check_degree(n, MAX_NABLA_DEGREE)?;
        let src_basis = self.basis(n)?;
        let dst_basis = self.basis(n + 1)?;
        self.nabla_matrix_in(&src_basis, &dst_basis)
    }

    pub(crate) fn nabla_matrix_in(&self, src_basis: &TotalBasis, dst_basis: &TotalBasis) -> Result<SparseMatrix, TotalError> {
        let xm = self.xm();
        let mut m = SparseMatrix::new(self.rep().field(), src_basis.len());
        for blk in dst_basis.blocks() {
            for &idx in &blk.points {
                let x = xm.decode(blk.tri, idx)?;
                let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); blk.dim];
                for (src, form) in self.nabla_form(blk.tri, &x)? {
                    let sb = src_basis.block(src).expect("source tridegree in basis");
                    for (j, mat) in form.terms() {
                        let Some(col) = sb.coordinate(j) else { continue };
                        for (a, row) in rows.iter_mut().enumerate() {
                            for b in 0..sb.dim {
                                let s = mat.get(a, b);
                                if !s.is_zero() {
                                    row.push((col + b, s.clone()));
                                }
                            }
                        }
                    }
                }
                for row in rows {
                    m.push_row(row);
                }
            }
        }
        Ok(m)
    }

    /// The form of ∇∘∇ at a point of C^{n+2}, restricted to normalized sources.
    pub fn nabla2_form(&self, dst: Tri, x: &Point) -> Result<BTreeMap<Tri, LinForm>, TotalError> {
        let xm = self.xm();
        let mut acc: BTreeMap<Tri, LinForm> = BTreeMap::new();
        for (mid, outer) in self.nabla_form(dst, x)? {
            for (idx, m) in outer.terms() {
                let y = xm.decode(mid, idx)?;
                for (src, inner) in self.nabla_form(mid, &y)? {
                    let slot = acc.entry(src).or_insert_with(|| LinForm::zero(inner.field(), src, m.rows(), inner.in_dim()));
                    slot.add_composed(m, &inner);
                }
            }
        }
        for (src, form) in acc.iter_mut() {
            form.retain(|i| xm.decode(*src, i).map_or(true, |y| is_normalized(xm, &y)));
        }
        acc.retain(|_, f| !f.is_zero());
        Ok(acc)
    }

    /// Checks ∇² = 0 on C^n.
    pub fn verify_nabla2(&self, n: usize, mode: Nabla2Mode, seed: u64, opts: SampleOptions) -> Result<Nabla2Report, TotalError> {
        Self::check_degree(n, MAX_NABLA2_DEGREE)?;
        let mut report = Nabla2Report {
            degree: n,
            method: "matrix",
            seed,
            checked: 0,
            exhaustive: true,
            deviation: 0,
            witnesses: Vec::new(),
            config: *self.dm.config(),
        };
        let use_matrix = match mode {
            Nabla2Mode::Exhaustive => true,
            Nabla2Mode::Sampled => false,
            Nabla2Mode::Auto => (n..=n + 2).all(|k| self.normalized_size(k).map_or(false, |s| s <= opts.exhaustive_limit)),
        };
        if use_matrix {
            let b0 = self.basis(n)?;
            let b1 = self.basis(n + 1)?;
            let b2 = self.basis(n + 2)?;
            let prod = self.nabla_matrix_in(&b1, &b2)?.mul(&self.nabla_matrix_in(&b0, &b1)?);
            report.checked = prod.rows() * prod.cols();
            for i in 0..prod.rows() {
                for (j, _) in prod.row(i) {
                    report.deviation += 1;
                    if report.witnesses.len() < MAX_WITNESSES {
                        report.witnesses.push(self.matrix_witness(&b2, &b0, i, *j)?);
                    }
                }
            }
            return Ok(report);
        }
        report.method = "pointwise";
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for dst in Tri::of_degree(n + 2) {
            let (points, all) = self.target_points(dst, opts, &mut rng)?;
            report.exhaustive &= all;
            for x in points {
                let res = self.nabla2_form(dst, &x)?;
                report.checked += 1;
                if !res.is_empty() {
                    report.deviation += res.values().map(|f| f.len()).sum::<usize>();
                    if report.witnesses.len() < MAX_WITNESSES {
                        report.witnesses.push(Nabla2Witness { dst, point: x, sources: res.keys().copied().collect() });
                    }
                }
            }
        }
        Ok(report)
    }

    fn matrix_witness(&self, dst: &TotalBasis, src: &TotalBasis, row: usize, col: usize) -> Result<Nabla2Witness, TotalError> {
        let locate = |b: &TotalBasis, k: usize| -> (Tri, usize) {
            let blk = b.blocks().iter().find(|blk| k >= blk.offset && k < blk.offset + blk.len()).expect("coordinate in range");
            (blk.tri, blk.points[(k - blk.offset) / blk.dim])
        };
        let (dt, di) = locate(dst, row);
        let (st, _) = locate(src, col);
        Ok(Nabla2Witness { dst: dt, point: self.xm().decode(dt, di)?, sources: vec![st] })
    }

    /// Number of normalized coordinates of C^n, computed without enumeration.
    pub fn normalized_size(&self, n: usize) -> Option<usize> {
        let xm = self.xm();
        let ng = xm.g().order();
        Tri::of_degree(n).into_iter().try_fold(0usize, |acc, t| {
            let rows = xm.domain_size(Tri::new(t.p, t.q, 0))?;
            let f = (ng - 1).checked_pow(t.r as u32)?;
            acc.checked_add(rows.checked_mul(f)?.checked_mul(self.rep().target_dim(t.r))?)
        })
    }

    /// Normalized points of `dst`: all of them when few, else a seeded
    /// sample. The flag tells which.
    pub fn target_points<R: Rng>(&self, dst: Tri, opts: SampleOptions, rng: &mut R) -> Result<(Vec<Point>, bool), TotalError> {
        let xm = self.xm();
        let ng = xm.g().order();
        let rows_tri = Tri::new(dst.p, dst.q, 0);
        let rows_n = domain(xm, rows_tri)?;
        if dst.r > 0 && ng == 1 {
            return Ok((Vec::new(), true));
        }
        let total = (ng - 1).checked_pow(dst.r as u32).and_then(|f| f.checked_mul(rows_n));
        if let Some(total) = total.filter(|&t| t <= opts.exhaustive_limit) {
            let mut pts = Vec::with_capacity(total);
            for idx in 0..domain(xm, dst)? {
                let x = xm.decode(dst, idx)?;
                if is_normalized(xm, &x) {
                    pts.push(x);
                }
            }
            return Ok((pts, true));
        }
        let mut pts = Vec::with_capacity(opts.samples);
        for _ in 0..opts.samples {
            let rows: Vec<Row> = xm.decode(rows_tri, rng.gen_range(0..rows_n))?.rows;
            let f = (0..dst.r).map(|_| rng.gen_range(1..ng)).collect();
            pts.push(Point { rows, f });
        }
        Ok((pts, false))
    }

    /// Checks the (n, m) instance of the rephrased ∇² = 0 identity on a
    /// source level r at sampled target points, evaluated on the cochain
    /// `c` of tridegree (p, q, r). For n ≤ r+1 this is the umbrella form
    /// Σ ± Δ_{n−m−i,m−j}Δ_{i,j} = (−1)^r[δ₍₁₎, Δ_{n−m,m}]; for n = r+2 the
    /// commutator collapses to the wall form (−1)^{r+1}Δ_{r+2−m,m}δ₍₁₎.
    pub fn rephrase_identity(&self, n: usize, m: usize, c: &Cochain, seed: u64, opts: SampleOptions) -> Result<RephraseReport, TotalError> {
        let src = c.tri();
        if n == 0 || m > n || n > src.r + 2 {
            return Err(DiffError::Range(format!("no identity (n={n}, m={m}) on r = {}", src.r)).into());
        }
        for a in 0..=n {
            for b in 0..=n - a {
                if a >= 1 && b >= 1 && a + b > 5 {
                    return Err(DiffError::Unsupported { a, b, r: src.r }.into());
                }
            }
        }
        let rel = Relation::component(n, m, src.r);
        let kind = if n == src.r + 2 { "wall" } else { "umbrella" };
        let mut report = RephraseReport { n, m, src, dst: None, kind, seed, points: 0, exhaustive: true, nonzero: 0, witness: None };
        let Some(dst) = rel.target(src)? else { return Ok(report) };
        report.dst = Some(dst);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (points, all) = self.target_points(dst, opts, &mut rng)?;
        report.exhaustive = all;
        for x in points {
            let form = rel.residual_on(&self.dm, src, &x, false)?;
            report.points += 1;
            if form.apply(c).iter().any(|s| !s.is_zero()) {
                report.nonzero += 1;
                report.witness.get_or_insert(x);
            }
        }
        Ok(report)
    }
}

/// Outcome of [`TotalComplex::rephrase_identity`].
#[derive(Clone, Debug, Serialize)]
pub struct RephraseReport {
    pub n: usize,
    pub m: usize,
    pub src: Tri,
    pub dst: Option<Tri>,
    pub kind: &'static str,
    pub seed: u64,
    pub points: usize,
    pub exhaustive: bool,
    /// Points at which the residual is nonzero.
    pub nonzero: usize,
    pub witness: Option<Point>,
}

impl RephraseReport {
    pub fn holds(&self) -> bool {
        self.nonzero == 0
    }
}

#[cfg(test)]
mod tests;
