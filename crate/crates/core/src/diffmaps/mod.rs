//! Difference maps Δ_{a,b}: C^{p,q}_r → C^{p+a,q+b}_{r+1−a−b}.
//!
//! Each Δ_{a,b} is given by a coordinate polynomial on the b×a corner block
//! ⊓ of a target point. When a+b−1 = r the map lands on the front page
//! (r = 0, V-valued through φ); otherwise it stays W-valued.

mod block;
mod config;
mod poly;
mod polys;
mod relations;

pub use block::GammaBlock;
pub use config::{DiffConfig, Mutation, P13Head, P22Form, P22OffArg, P23Tail, P32Face, PolyId, Reading, StepArrow};
pub use poly::Poly;
pub use relations::{CheckOptions, Relation, RelationCheck};

use thiserror::Error;

use crate::grid::{Grid, GridError, LinForm};
use crate::group::{Point, Row, Tri};
use polys::Polys;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiffError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("no formula for Δ_{{{a},{b}}} on r = {r}")]
    Unsupported { a: usize, b: usize, r: usize },
    #[error("argument out of range: {0}")]
    Range(String),
}

/// One map of the grid: a differential or a difference map. `D(1,0)` and
/// `D(0,1)` are ∂ and δ; `D(a,0)`, `D(0,b)` vanish for a, b > 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Del,
    Delta,
    Dr,
    D(usize, usize),
}

impl Op {
    fn normalized(self) -> Op {
        match self {
            Op::D(1, 0) => Op::Del,
            Op::D(0, 1) => Op::Delta,
            o => o,
        }
    }

    /// Target tridegree, or `None` where the map is identically zero.
    pub fn target(self, src: Tri) -> Option<Tri> {
        match self.normalized() {
            Op::Del => Some(Tri::new(src.p + 1, src.q, src.r)),
            Op::Delta => Some(Tri::new(src.p, src.q + 1, src.r)),
            Op::Dr => Some(Tri::new(src.p, src.q, src.r + 1)),
            Op::D(a, b) if a >= 1 && b >= 1 && a + b <= src.r + 1 => Some(Tri::new(src.p + a, src.q + b, src.r + 1 - a - b)),
            Op::D(..) => None,
        }
    }
}

impl std::fmt::Display for Op {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.normalized() {
            Op::Del => write!(f, "∂"),
            Op::Delta => write!(f, "δ"),
            Op::Dr => write!(f, "d"),
            Op::D(a, b) => write!(f, "Δ{a}{b}"),
        }
    }
}

/// Pointwise evaluation of the difference maps for one representation.
#[derive(Clone, Copy)]
pub struct DiffMaps<'a> {
    grid: Grid<'a>,
    cfg: DiffConfig,
}

impl<'a> DiffMaps<'a> {
    pub fn new(grid: Grid<'a>, cfg: DiffConfig) -> DiffMaps<'a> {
        DiffMaps { grid, cfg }
    }

    pub fn grid(&self) -> &Grid<'a> {
        &self.grid
    }

    pub fn config(&self) -> &DiffConfig {
        &self.cfg
    }

    fn polys(&self) -> Polys<'a> {
        Polys { xm: self.grid.xm(), cfg: self.cfg }
    }

    fn check_point(&self, expected: Tri, x: &Point) -> Result<(), DiffError> {
        let found = x.tri();
        let ok = if expected.q == 0 { found.q == 0 && found.r == expected.r } else { found == expected };
        if ok {
            Ok(())
        } else {
            Err(GridError::PointShape { expected, found }.into())
        }
    }

    /// Δ_{a,b} (a, b ≥ 1) at a point `x` of its target.
    pub fn delta_ab(&self, a: usize, b: usize, src: Tri, x: &Point) -> Result<LinForm, DiffError> {
        let dst = Op::D(a, b)
            .target(src)
            .ok_or_else(|| DiffError::Range(format!("Δ_{{{a},{b}}} vanishes on r = {}", src.r)))?;
        self.check_point(dst, x)?;
        let xm = self.grid.xm();
        let rest: Vec<Row> = x.rows[b..].iter().map(|row| Row { g: row.g[a..].to_vec(), h: row.h }).collect();
        let top = GammaBlock::new(xm, x.rows[..b].iter().map(|row| trunc(xm, row, a)).collect());
        let polys = self.polys();
        let rep = self.grid.rep();
        let mut out = self.grid.empty_form(src, dst.r);
        if a + b == src.r + 1 {
            let s = self.grid.hprod(x.rows.iter().map(|row| xm.row_source(row, a - 1)));
            let m = rep.rho00(s) * rep.phi();
            for (sign, t) in polys.front_top(a, b, &top)?.terms() {
                out.add_signed(self.grid.idx(rest.clone(), t.clone()), *sign, &m);
            }
            return Ok(out);
        }
        let bottom = GammaBlock::new(xm, x.rows[b..].iter().map(|row| trunc(xm, row, a)).collect());
        let lead = rep.rho01_inv(xm.i(bottom.full_g())).clone();
        let twist = rep.rho01_inv(xm.i(xm.act(top.full_g(), bottom.s())));
        let both = &lead * twist;
        for (sign, t) in polys.off(a, b, src.r, &x.f, &top)?.terms() {
            out.add_signed(self.grid.idx(rest.clone(), t.clone()), *sign, &lead);
        }
        let prefix = self.grid.act_all(&x.f, top.s());
        for (sign, t) in polys.front_top(a, b, &top)?.terms() {
            let mut tuple = prefix.clone();
            tuple.extend_from_slice(t);
            out.add_signed(self.grid.idx(rest.clone(), tuple), *sign, &both);
        }
        Ok(out)
    }

    /// The form of a single map at a point of its target.
    pub fn op_form(&self, op: Op, src: Tri, x: &Point) -> Result<LinForm, DiffError> {
        match op.normalized() {
            Op::Del => Ok(self.grid.del(src, x)),
            Op::Delta => Ok(self.grid.delta(src, x)),
            Op::Dr => Ok(self.grid.dr(src, x)),
            Op::D(a, b) => self.delta_ab(a, b, src, x),
        }
    }

    /// Target tridegree of a composite, listed outermost first; `None` if
    /// some factor vanishes.
    pub fn chain_target(ops: &[Op], src: Tri) -> Option<Tri> {
        ops.iter().rev().try_fold(src, |t, op| op.target(t))
    }

    /// The form at `x` of the composite ops[0] ∘ ops[1] ∘ … (outermost
    /// first) on `src`; `None` if the composite vanishes for degree reasons.
    pub fn chain_form(&self, ops: &[Op], src: Tri, x: &Point) -> Result<Option<LinForm>, DiffError> {
        let mut tris = vec![src];
        for op in ops.iter().rev() {
            match op.target(*tris.last().unwrap()) {
                Some(t) => tris.push(t),
                None => return Ok(None),
            }
        }
        tris.reverse(); // tris[k] is the source of ops[k]; tris[0] the final target
        let n = ops.len();
        let mut form = self.op_form(ops[0], tris[1], x)?;
        for k in 1..n {
            let mid = tris[k];
            let inner_src = tris[k + 1];
            let mut next = LinForm::zero(self.grid.field(), inner_src, form.out_dim(), self.grid.dim(inner_src.r));
            for (idx, m) in form.terms() {
                let y = self.grid.xm().decode(mid, idx).map_err(GridError::from)?;
                next.add_composed(m, &self.op_form(ops[k], inner_src, &y)?);
            }
            form = next;
        }
        Ok(Some(form))
    }

    /// Formal polynomial used by the front template of Δ_{a,b} on a block.
    pub fn front_polynomial(&self, a: usize, b: usize, blk: &GammaBlock<'_>) -> Result<Poly, DiffError> {
        self.polys().front_top(a, b, blk)
    }

    /// Formal polynomial p^{(r)}_{a,b}(f⃗; ⊓) used off the front page.
    pub fn off_polynomial(&self, a: usize, b: usize, r: usize, f: &[usize], blk: &GammaBlock<'_>) -> Result<Poly, DiffError> {
        if f.len() + a + b != r + 1 {
            return Err(DiffError::Range(format!("|f| = {} but Δ_{{{a},{b}}} on r = {r} needs {}", f.len(), (r + 1).saturating_sub(a + b))));
        }
        self.polys().off(a, b, r, f, blk)
    }

    /// The c-pair (c_{2n−1}, c_{2n}) of p^{(r)}_{1,1}.
    pub fn c_pair(&self, r: usize, n: usize, f: &[usize], gamma: crate::group::Arrow) -> Result<(Vec<usize>, Vec<usize>), DiffError> {
        self.polys().c_pair(r, n, f, gamma)
    }

    /// Both displayed forms of p_{2,2} on a 2×2 block.
    pub fn p22_forms(&self, blk: &GammaBlock<'_>) -> (Poly, Poly) {
        let p = self.polys();
        let sum = |v: Vec<Poly>| v.into_iter().fold(Poly::zero(3), Poly::plus);
        (sum(p.p22_direct(blk)), sum(p.p22_recast(blk)))
    }
}

/// The first `a` arrows of a row, as a row of its own.
fn trunc(xm: &crate::group::CrossedModule, row: &Row, a: usize) -> Row {
    Row { g: row.g[..a].to_vec(), h: xm.row_source(row, a - 1) }
}

#[cfg(test)]
mod tests;
