//! The bisimplicial double complex of the 2-group with trivial coefficients
//! in the ground field: C(𝒢_p^q) with d = (−1)^p(∂ + δ).

use super::{Grid, LinForm};
use crate::group::{CrossedModule, Point, Tri};
use crate::linalg::{Field, Scalar};
use crate::rep::{TwoRep, TwoVectorSpace};

/// Scalar-valued cochains on 𝒢_p^q, realized as the r = 0 layer of the grid
/// for the trivial representation on 0 → k.
#[derive(Clone, Debug)]
pub struct TrivialCoefficients {
    rep: TwoRep,
}

impl TrivialCoefficients {
    pub fn new(xm: CrossedModule, field: Field) -> TrivialCoefficients {
        TrivialCoefficients { rep: TwoRep::trivial(xm, TwoVectorSpace::unit(field, 1)) }
    }

    pub fn rep(&self) -> &TwoRep {
        &self.rep
    }

    pub fn grid(&self) -> Grid<'_> {
        Grid::new(&self.rep)
    }
}

/// The (src → dst) component of d = (−1)^p(∂ + δ) at a point `x` of `dst`,
/// or `None` if that component vanishes identically. Only r = 0 tridegrees
/// take part.
pub fn omega_tot_form(grid: &Grid<'_>, src: Tri, dst: Tri, x: &Point) -> Option<LinForm> {
    if src.r != 0 || dst.r != 0 {
        return None;
    }
    let sign: Scalar = grid.field().from_i64(if src.p % 2 == 0 { 1 } else { -1 });
    let raw = if dst == Tri::new(src.p + 1, src.q, 0) {
        grid.del(src, x)
    } else if dst == Tri::new(src.p, src.q + 1, 0) {
        grid.delta(src, x)
    } else {
        return None;
    };
    let mut out = grid.empty_form(src, 0);
    out.add_scaled(&sign, &raw);
    Some(out)
}
