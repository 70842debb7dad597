//! Constructions derived from a 2-representation: the honest representation
//! on W⊕V, the (twisted) semidirect product 2-group and the associated
//! representation up to homotopy.

use super::{RepError, TwoRep};
use crate::group::{Arrow, CrossedModule, FiniteGroup};
use crate::linalg::{Field, Matrix, Scalar, Vector};

/// ρ̄(g,h) = [[ρ₀¹(h·i(g)), ρ₀¹(h)ρ₁(g)], [0, ρ₀⁰(h)]] on W⊕V.
pub fn honest_rep(rep: &TwoRep, a: Arrow) -> Matrix {
    let (dw, dv) = (rep.dim_w(), rep.dim_v());
    let f = rep.field();
    let xm = rep.xm();
    let tl = rep.rho01(xm.target(a));
    let tr = rep.rho01(a.h) * rep.rho1(a.g);
    let br = rep.rho00(a.h);
    let mut m = Matrix::zeros(f, dw + dv, dw + dv);
    for i in 0..dw {
        for j in 0..dw {
            m.set(i, j, tl.get(i, j).clone());
        }
        for j in 0..dv {
            m.set(i, dw + j, tr.get(i, j).clone());
        }
    }
    for i in 0..dv {
        for j in 0..dv {
            m.set(dw + i, dw + j, br.get(i, j).clone());
        }
    }
    m
}

/// The twisting data (φ̌, ω₀, α, ω₁) of an extension, as lookups.
pub struct Twists<'a> {
    pub phicheck: &'a dyn Fn(usize) -> Vector,
    pub omega0: &'a dyn Fn(usize, usize) -> Vector,
    pub alpha: &'a dyn Fn(usize, usize) -> Vector,
    pub omega1: &'a dyn Fn(usize, usize) -> Vector,
}

/// Raw multiplication, structure-map and action tables of the twisted
/// product crossed module G ⋉^{ω₁} W → H ⋉^{ω₀} V. Nothing is validated;
/// see [`TwistedTables::crossed_module`].
#[derive(Clone, Debug)]
pub struct TwistedTables {
    pub p: u32,
    pub dim_w: usize,
    pub dim_v: usize,
    pub order_g: usize,
    pub order_h: usize,
    /// Vector parts of the identity elements of E₁ and E₀.
    pub unit_w: Vector,
    pub unit_v: Vector,
    pub e1: Vec<Vec<usize>>,
    pub e0: Vec<Vec<usize>>,
    pub eps: Vec<usize>,
    pub act: Vec<Vec<usize>>,
}

const MAX_CARRIER: u128 = 1024;

fn code(p: u32, v: &[Scalar]) -> usize {
    v.iter().rev().fold(0, |acc, x| acc * p as usize + x.residue().expect("prime field") as usize)
}

fn uncode(field: Field, p: u32, dim: usize, mut c: usize) -> Vector {
    (0..dim)
        .map(|_| {
            let x = field.from_i64((c % p as usize) as i64);
            c /= p as usize;
            x
        })
        .collect()
}

fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl TwistedTables {
    fn field(&self) -> Field {
        Field::Prime(self.p)
    }

    pub fn e0_index(&self, h: usize, v: &[Scalar]) -> usize {
        h + self.order_h * code(self.p, &sub(v, &self.unit_v))
    }

    pub fn e0_element(&self, idx: usize) -> (usize, Vector) {
        let d = uncode(self.field(), self.p, self.dim_v, idx / self.order_h);
        (idx % self.order_h, add(&d, &self.unit_v))
    }

    pub fn e1_index(&self, g: usize, w: &[Scalar]) -> usize {
        g + self.order_g * code(self.p, &sub(w, &self.unit_w))
    }

    pub fn e1_element(&self, idx: usize) -> (usize, Vector) {
        let d = uncode(self.field(), self.p, self.dim_w, idx / self.order_g);
        (idx % self.order_g, add(&d, &self.unit_w))
    }

    /// Validates the tables as groups and as a crossed module.
    pub fn crossed_module(&self) -> Result<CrossedModule, RepError> {
        let e1 = FiniteGroup::from_table(self.e1.clone())?;
        let e0 = FiniteGroup::from_table(self.e0.clone())?;
        Ok(CrossedModule::new(e1, e0, self.eps.clone(), self.act.clone())?)
    }
}

/// Tabulates the twisted product crossed module:
/// (h₀,v₀)(h₁,v₁) = (h₀h₁, v₀+ρ₀⁰(h₀)v₁+ω₀(h₀,h₁)),
/// (g₀,w₀)(g₁,w₁) = (g₀g₁, w₀+ρ₀¹(i(g₀))w₁+ω₁(g₀,g₁)),
/// ε(g,w) = (i(g), φ(w)+φ̌(g)) and
/// (g,w)^{(h,v)} = (g^h, ρ₀¹(h)⁻¹(w+ρ₁(g)v)+α(h;g)).
pub fn twisted_tables(rep: &TwoRep, tw: &Twists<'_>) -> Result<TwistedTables, RepError> {
    let field = rep.field();
    let Field::Prime(p) = field else { return Err(RepError::InfiniteField(field)) };
    let xm = rep.xm();
    let (g, h) = (xm.g(), xm.h());
    let (dw, dv) = (rep.dim_w(), rep.dim_v());
    let n1 = g.order() as u128 * (p as u128).pow(dw as u32);
    let n0 = h.order() as u128 * (p as u128).pow(dv as u32);
    if n1.max(n0) > MAX_CARRIER {
        return Err(RepError::TooLarge(n1.max(n0)));
    }
    let (n1, n0) = (n1 as usize, n0 as usize);
    let neg = |v: Vector| -> Vector { v.iter().map(|x| -x).collect() };
    let mut t = TwistedTables {
        p,
        dim_w: dw,
        dim_v: dv,
        order_g: g.order(),
        order_h: h.order(),
        unit_w: neg((tw.omega1)(0, 0)),
        unit_v: neg((tw.omega0)(0, 0)),
        e1: Vec::new(),
        e0: Vec::new(),
        eps: Vec::new(),
        act: Vec::new(),
    };
    let e0: Vec<(usize, Vector)> = (0..n0).map(|i| t.e0_element(i)).collect();
    let e1: Vec<(usize, Vector)> = (0..n1).map(|i| t.e1_element(i)).collect();
    t.e0 = e0
        .iter()
        .map(|(h0, v0)| {
            e0.iter()
                .map(|(h1, v1)| {
                    let v = add(&add(v0, &rep.rho00(*h0).mul_vec(v1)), &(tw.omega0)(*h0, *h1));
                    t.e0_index(h.mul(*h0, *h1), &v)
                })
                .collect()
        })
        .collect();
    t.e1 = e1
        .iter()
        .map(|(g0, w0)| {
            e1.iter()
                .map(|(g1, w1)| {
                    let w = add(&add(w0, &rep.rho01(xm.i(*g0)).mul_vec(w1)), &(tw.omega1)(*g0, *g1));
                    t.e1_index(g.mul(*g0, *g1), &w)
                })
                .collect()
        })
        .collect();
    t.eps = e1
        .iter()
        .map(|(g0, w0)| t.e0_index(xm.i(*g0), &add(&rep.phi().mul_vec(w0), &(tw.phicheck)(*g0))))
        .collect();
    t.act = e1
        .iter()
        .map(|(g0, w0)| {
            e0.iter()
                .map(|(h0, v0)| {
                    let inner = add(w0, &rep.rho1(*g0).mul_vec(v0));
                    let w = add(&rep.rho01_inv(*h0).mul_vec(&inner), &(tw.alpha)(*h0, *g0));
                    t.e1_index(xm.act(*g0, *h0), &w)
                })
                .collect()
        })
        .collect();
    Ok(t)
}

/// The semidirect product crossed module G ⋉ W → H ⋉ V (finite fields only).
pub fn semidirect_2group(rep: &TwoRep) -> Result<(CrossedModule, TwistedTables), RepError> {
    let zv = rep.zero_v();
    let zw = rep.zero_w();
    let tw = Twists {
        phicheck: &|_| zv.clone(),
        omega0: &|_, _| zv.clone(),
        alpha: &|_, _| zw.clone(),
        omega1: &|_, _| zw.clone(),
    };
    let t = twisted_tables(rep, &tw)?;
    Ok((t.crossed_module()?, t))
}

/// The representation up to homotopy carried by the canonical splitting of
/// the semidirect product: ϱ, the quasi-actions Δ^V, Δ^W and the curvature Ω.
#[derive(Clone, Debug)]
pub struct RuthData {
    /// ϱ(h, ·) = ρ₀⁰(h)φ, per h.
    pub varrho: Vec<Matrix>,
    /// Δ^V_{(g,h)}: base point h·i(g) and the fibre map, per arrow g + |G|·h.
    pub delta_v: Vec<(usize, Matrix)>,
    /// Δ^W_{(g,h)}: base point h·i(g) and ρ₀¹(i(g))⁻¹, per arrow.
    pub delta_w: Vec<(usize, Matrix)>,
    /// Ω at (g₁, g₂, h) as a map V → W, indexed g₁ + |G|(g₂ + |G|h).
    pub omega: Vec<Matrix>,
}

/// Builds the representation up to homotopy and checks that Ω vanishes.
///
/// Arrows of the semidirect 2-group are pairs (e₁, e₀) ∈ (G ⋉ W) × (H ⋉ V);
/// the splitting is σ_{(g,h)}(h,v) = ((g,0),(h,v)) and horizontal composition
/// is (e₁′, e₀ε(e₁)) ⨝ (e₁, e₀) = (e₁e₁′, e₀). Ω is the fibrewise difference
/// σ_{(g₂g₁,h)} − σ_{(g₁,h·i(g₂))}∘Δ^V ⨝ σ_{(g₂,h)}, evaluated on a basis of V.
pub fn ruth_data(rep: &TwoRep) -> Result<RuthData, RepError> {
    let xm = rep.xm();
    let (g, h) = (xm.g(), xm.h());
    let (ng, nh) = (g.order(), h.order());
    let f = rep.field();
    let (dw, dv) = (rep.dim_w(), rep.dim_v());
    let varrho = (0..nh).map(|x| rep.rho00(x) * rep.phi()).collect();
    let mut delta_v = Vec::with_capacity(ng * nh);
    let mut delta_w = Vec::with_capacity(ng * nh);
    for hh in 0..nh {
        for gg in 0..ng {
            let base = xm.target(Arrow { g: gg, h: hh });
            delta_v.push((base, Matrix::identity(f, dv)));
            delta_w.push((base, rep.rho01_inv(xm.i(gg)).clone()));
        }
    }
    // E₁ product on W-parts: (g,w)(g′,w′) has W-part w + ρ₀¹(i(g))w′.
    let e1_w = |g0: usize, w0: &[Scalar], w1: &[Scalar]| add(w0, &rep.rho01(xm.i(g0)).mul_vec(w1));
    // ε on V-parts: (h,v)·ε(g,w) has V-part v + ρ₀⁰(h)φ(w).
    let target_v = |h0: usize, v0: &[Scalar], w: &[Scalar]| add(v0, &rep.rho00(h0).mul_vec(&rep.phi().mul_vec(w)));
    let zw = rep.zero_w();
    let mut omega = Vec::with_capacity(ng * ng * nh);
    for hh in 0..nh {
        for g2 in 0..ng {
            for _g1 in 0..ng {
                let mut m = Matrix::zeros(f, dw, dv);
                for k in 0..dv {
                    let mut v = rep.zero_v();
                    v[k] = f.one();
                    // σ_{(g₂,h)}(h,v) = ((g₂,0),(h,v)); its target fibre point.
                    let tv = target_v(hh, &v, &zw);
                    // Δ^V moves (h,v) to (h·i(g₂), v); the composable check.
                    if tv != v {
                        return Err(RepError::Internal("σ arrows are not composable".into()));
                    }
                    let composite_w = e1_w(g2, &zw, &zw);
                    let direct_w = zw.clone();
                    let diff = sub(&direct_w, &composite_w);
                    // ⨝ with the zero arrow over the inverse leaves the W-part.
                    for (i, x) in diff.into_iter().enumerate() {
                        m.set(i, k, x);
                    }
                }
                omega.push(m);
            }
        }
    }
    if let Some(pos) = omega.iter().position(|m| !m.is_zero()) {
        return Err(RepError::Internal(format!("curvature is nonzero at 𝒢₂ index {pos}")));
    }
    Ok(RuthData { varrho, delta_v, delta_w, omega })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::TwoVectorSpace;

    fn unipotent_z2() -> TwoRep {
        let f = Field::Prime(2);
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let xm = CrossedModule::with_trivial_action(z2.clone(), z2, vec![0, 1]).unwrap();
        let vs = TwoVectorSpace::new(Matrix::from_i64(f, &[&[1], &[0]]), 1, 2).unwrap();
        let rho1 = vec![Matrix::zeros(f, 1, 2), Matrix::from_i64(f, &[&[0, 1]])];
        let rho00 = vec![Matrix::identity(f, 2), Matrix::from_i64(f, &[&[1, 1], &[0, 1]])];
        let rho01 = vec![Matrix::identity(f, 1), Matrix::identity(f, 1)];
        TwoRep::new(xm, vs, rho00, rho01, rho1).unwrap()
    }

    #[test]
    fn honest_rep_is_multiplicative() {
        let rep = unipotent_z2();
        let xm = rep.xm().clone();
        for a in 0..4 {
            for b in 0..4 {
                let a = Arrow { g: a % 2, h: a / 2 };
                let b = Arrow { g: b % 2, h: b / 2 };
                assert_eq!(honest_rep(&rep, xm.vmul(a, b)), &honest_rep(&rep, a) * &honest_rep(&rep, b));
            }
        }
    }

    #[test]
    fn semidirect_of_trivial_rep() {
        let f = Field::Prime(2);
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let xm = CrossedModule::with_trivial_action(z2.clone(), z2, vec![0, 1]).unwrap();
        let vs = TwoVectorSpace::new(Matrix::identity(f, 1), 1, 1).unwrap();
        let (e, _) = semidirect_2group(&TwoRep::trivial(xm, vs)).unwrap();
        assert_eq!((e.g().order(), e.h().order()), (4, 4));
    }

    #[test]
    fn semidirect_of_unipotent_rep_and_flat_curvature() {
        let rep = unipotent_z2();
        let (e, _) = semidirect_2group(&rep).unwrap();
        assert_eq!((e.g().order(), e.h().order()), (4, 8));
        let r = ruth_data(&rep).unwrap();
        assert!(r.omega.iter().all(Matrix::is_zero));
        assert!(r.delta_w[0].1.is_identity());
    }
}
