//! The general linear 2-group GL(φ) of a 2-vector space.

use rand::Rng;
use serde::Serialize;

use super::TwoVectorSpace;
use crate::linalg::{Field, Matrix, Scalar};

/// An arrow of GL(φ): a map A: V → W with I+Aφ and I+φA invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlArrow(pub Matrix);

/// An object of GL(φ): invertible (F, f) on (W, V) with φF = fφ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlObject {
    pub on_w: Matrix,
    pub on_v: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum GlViolation {
    ArrowClosure { a1: String, a2: String },
    InverseLaw { a: String },
    DeltaHomomorphism { a1: String, a2: String },
    RightAction { a: String },
    ActionByAutomorphisms { a1: String, a2: String },
    Equivariance { a: String },
    Peiffer { a1: String, a2: String },
}

impl GlArrow {
    pub fn is_valid(&self, vs: &TwoVectorSpace) -> bool {
        let a = &self.0;
        let phi = vs.phi();
        (&Matrix::identity(vs.field(), vs.dim_w()) + &(a * phi)).is_invertible()
            && (&Matrix::identity(vs.field(), vs.dim_v()) + &(phi * a)).is_invertible()
    }

    /// A₁⊙A₂ = A₁ + A₂ + A₁φA₂.
    pub fn odot(&self, other: &GlArrow, vs: &TwoVectorSpace) -> GlArrow {
        let (a1, a2) = (&self.0, &other.0);
        GlArrow(&(a1 + a2) + &(&(a1 * vs.phi()) * a2))
    }

    /// A† = −A(I+φA)⁻¹.
    pub fn dagger(&self, vs: &TwoVectorSpace) -> GlArrow {
        let m = &Matrix::identity(vs.field(), vs.dim_v()) + &(vs.phi() * &self.0);
        let inv = m.inverse().expect("I+φA is invertible for a valid arrow");
        GlArrow(-&(&self.0 * &inv))
    }

    /// ΔA = (I+Aφ, I+φA).
    pub fn delta(&self, vs: &TwoVectorSpace) -> GlObject {
        let f = vs.field();
        GlObject {
            on_w: &Matrix::identity(f, vs.dim_w()) + &(&self.0 * vs.phi()),
            on_v: &Matrix::identity(f, vs.dim_v()) + &(vs.phi() * &self.0),
        }
    }

    /// Right action A^{(F,f)} = F⁻¹Af.
    pub fn act(&self, o: &GlObject) -> GlArrow {
        let finv = o.on_w.inverse().expect("object components are invertible");
        GlArrow(&(&finv * &self.0) * &o.on_v)
    }

    pub fn zero(vs: &TwoVectorSpace) -> GlArrow {
        GlArrow(Matrix::zeros(vs.field(), vs.dim_w(), vs.dim_v()))
    }
}

impl GlObject {
    pub fn identity(vs: &TwoVectorSpace) -> GlObject {
        GlObject { on_w: Matrix::identity(vs.field(), vs.dim_w()), on_v: Matrix::identity(vs.field(), vs.dim_v()) }
    }

    pub fn is_valid(&self, vs: &TwoVectorSpace) -> bool {
        self.on_w.is_invertible()
            && self.on_v.is_invertible()
            && vs.phi() * &self.on_w == &self.on_v * vs.phi()
    }

    /// Composition product (F₁F₂, f₁f₂).
    pub fn mul(&self, o: &GlObject) -> GlObject {
        GlObject { on_w: &self.on_w * &o.on_w, on_v: &self.on_v * &o.on_v }
    }

    pub fn inverse(&self) -> GlObject {
        GlObject {
            on_w: self.on_w.inverse().expect("invertible"),
            on_v: self.on_v.inverse().expect("invertible"),
        }
    }
}

fn all_matrices(field: Field, rows: usize, cols: usize) -> Vec<Matrix> {
    let els = field.elements().expect("finite field");
    let p = els.len();
    let n = rows * cols;
    let count = p.pow(n as u32);
    (0..count)
        .map(|mut code| {
            let mut m = Matrix::zeros(field, rows, cols);
            for k in 0..n {
                m.set(k / cols.max(1), k % cols.max(1), els[code % p].clone());
                code /= p;
            }
            m
        })
        .collect()
}

fn random_scalar<R: Rng>(field: Field, rng: &mut R) -> Scalar {
    match field {
        Field::Rational => field.from_i64(rng.gen_range(-3..=3)),
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
    }
}

fn random_matrix<R: Rng>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, random_scalar(field, rng));
        }
    }
    m
}

/// Basis of the pairs (F, f) with φF = fφ, as flattened (F, f) vectors.
fn compatible_pairs_basis(vs: &TwoVectorSpace) -> Vec<(Matrix, Matrix)> {
    let (dw, dv, f) = (vs.dim_w(), vs.dim_v(), vs.field());
    let n = dw * dw + dv * dv;
    // Column k of the constraint matrix is φF − fφ for the k-th unit pair.
    let unit = |k: usize| {
        let mut fw = Matrix::zeros(f, dw, dw);
        let mut fv = Matrix::zeros(f, dv, dv);
        if k < dw * dw {
            fw.set(k / dw, k % dw, f.one());
        } else {
            let k = k - dw * dw;
            fv.set(k / dv, k % dv, f.one());
        }
        (fw, fv)
    };
    let mut cons = Matrix::zeros(f, dv * dw, n);
    for k in 0..n {
        let (fw, fv) = unit(k);
        let c = &(vs.phi() * &fw) - &(&fv * vs.phi());
        for (idx, x) in c.entries().iter().enumerate() {
            cons.set(idx, k, x.clone());
        }
    }
    cons.kernel_basis()
        .into_iter()
        .map(|v| {
            let mut fw = Matrix::zeros(f, dw, dw);
            let mut fv = Matrix::zeros(f, dv, dv);
            for (k, x) in v.into_iter().enumerate() {
                if k < dw * dw {
                    fw.set(k / dw, k % dw, x);
                } else {
                    let k = k - dw * dw;
                    fv.set(k / dv, k % dv, x);
                }
            }
            (fw, fv)
        })
        .collect()
}

fn random_object<R: Rng>(vs: &TwoVectorSpace, basis: &[(Matrix, Matrix)], rng: &mut R) -> GlObject {
    loop {
        let mut o = GlObject {
            on_w: Matrix::zeros(vs.field(), vs.dim_w(), vs.dim_w()),
            on_v: Matrix::zeros(vs.field(), vs.dim_v(), vs.dim_v()),
        };
        for (bw, bv) in basis {
            let c = random_scalar(vs.field(), rng);
            o.on_w = &o.on_w + &bw.scale(&c);
            o.on_v = &o.on_v + &bv.scale(&c);
        }
        if o.is_valid(vs) {
            return o;
        }
    }
}

fn random_arrow<R: Rng>(vs: &TwoVectorSpace, rng: &mut R) -> GlArrow {
    loop {
        let a = GlArrow(random_matrix(vs.field(), vs.dim_w(), vs.dim_v(), rng));
        if a.is_valid(vs) {
            return a;
        }
    }
}

/// Checks the crossed-module laws of GL(φ). Over a prime field with few
/// enough arrows and objects the check is exhaustive; otherwise `samples`
/// random arrows and objects are drawn from `rng`.
pub fn validate_glphi_crossed_module<R: Rng>(
    vs: &TwoVectorSpace,
    samples: usize,
    rng: &mut R,
) -> Result<bool, GlViolation> {
    let small = match vs.field().order() {
        Some(p) => {
            let arrows = (p as f64).powi((vs.dim_w() * vs.dim_v()) as i32);
            let objects = (p as f64).powi((vs.dim_w().pow(2) + vs.dim_v().pow(2)) as i32);
            arrows <= 81.0 && objects <= 6561.0
        }
        None => false,
    };
    let (arrows, objects) = if small {
        let arrows: Vec<GlArrow> = all_matrices(vs.field(), vs.dim_w(), vs.dim_v())
            .into_iter()
            .map(GlArrow)
            .filter(|a| a.is_valid(vs))
            .collect();
        let ws = all_matrices(vs.field(), vs.dim_w(), vs.dim_w());
        let objects: Vec<GlObject> = ws
            .iter()
            .flat_map(|w| {
                all_matrices(vs.field(), vs.dim_v(), vs.dim_v())
                    .into_iter()
                    .map(move |v| GlObject { on_w: w.clone(), on_v: v })
            })
            .filter(|o| o.is_valid(vs))
            .collect();
        (arrows, objects)
    } else {
        let basis = compatible_pairs_basis(vs);
        let arrows = (0..samples.max(1)).map(|_| random_arrow(vs, rng)).collect();
        let objects = (0..samples.max(1)).map(|_| random_object(vs, &basis, rng)).collect();
        (arrows, objects)
    };
    check_laws(vs, &arrows, &objects, !small)?;
    Ok(small)
}

fn check_laws(vs: &TwoVectorSpace, arrows: &[GlArrow], objects: &[GlObject], sampled: bool) -> Result<(), GlViolation> {
    let show = |a: &GlArrow| format!("{:?}", a.0);
    let zero = GlArrow::zero(vs);
    // Sampled mode pairs element k with element k+1 instead of all pairs.
    let pairs: Vec<(usize, usize)> = if sampled {
        (0..arrows.len()).map(|k| (k, (k + 1) % arrows.len())).collect()
    } else {
        (0..arrows.len()).flat_map(|a| (0..arrows.len()).map(move |b| (a, b))).collect()
    };
    for a in arrows {
        let d = a.dagger(vs);
        if a.odot(&d, vs) != zero || d.odot(a, vs) != zero {
            return Err(GlViolation::InverseLaw { a: show(a) });
        }
        if !a.delta(vs).is_valid(vs) {
            return Err(GlViolation::Equivariance { a: show(a) });
        }
    }
    for &(x, y) in &pairs {
        let (a1, a2) = (&arrows[x], &arrows[y]);
        let prod = a1.odot(a2, vs);
        if !prod.is_valid(vs) {
            return Err(GlViolation::ArrowClosure { a1: show(a1), a2: show(a2) });
        }
        if prod.delta(vs) != a1.delta(vs).mul(&a2.delta(vs)) {
            return Err(GlViolation::DeltaHomomorphism { a1: show(a1), a2: show(a2) });
        }
        let lhs = a1.act(&a2.delta(vs));
        let rhs = a2.dagger(vs).odot(a1, vs).odot(a2, vs);
        if lhs != rhs {
            return Err(GlViolation::Peiffer { a1: show(a1), a2: show(a2) });
        }
    }
    let obj_pairs: Vec<(usize, usize)> = if sampled {
        (0..objects.len()).map(|k| (k, (k + 1) % objects.len())).collect()
    } else {
        (0..objects.len()).flat_map(|a| (0..objects.len()).map(move |b| (a, b))).collect()
    };
    for (k, a) in arrows.iter().enumerate() {
        let a2 = &arrows[(k + 1) % arrows.len()];
        for o in objects {
            if a.act(o).delta(vs) != o.inverse().mul(&a.delta(vs)).mul(o) {
                return Err(GlViolation::Equivariance { a: show(a) });
            }
            if a.odot(a2, vs).act(o) != a.act(o).odot(&a2.act(o), vs) {
                return Err(GlViolation::ActionByAutomorphisms { a1: show(a), a2: show(a2) });
            }
        }
        for &(x, y) in obj_pairs.iter().take(if sampled { objects.len() } else { 64 }) {
            let (o1, o2) = (&objects[x], &objects[y]);
            if a.act(&o1.mul(o2)) != a.act(o1).act(o2) {
                return Err(GlViolation::RightAction { a: show(a) });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn scalar_vs(field: Field, phi: i64) -> TwoVectorSpace {
        TwoVectorSpace::new(Matrix::from_i64(field, &[&[phi]]), 1, 1).unwrap()
    }

    #[test]
    fn odot_examples() {
        let q = Field::Rational;
        let a = |v| GlArrow(Matrix::from_i64(q, &[&[v]]));
        assert_eq!(a(1).odot(&a(2), &scalar_vs(q, 1)), a(5));
        assert_eq!(a(1).odot(&a(2), &scalar_vs(q, 0)), a(3));
        assert_eq!(a(0).odot(&a(7), &scalar_vs(q, 1)), a(7));
    }

    #[test]
    fn dagger_and_delta_examples() {
        let q = Field::Rational;
        let vs = scalar_vs(q, 1);
        let a = GlArrow(Matrix::from_i64(q, &[&[1]]));
        assert_eq!(a.dagger(&vs).0.get(0, 0).to_string(), "-1/2");
        let d = a.delta(&vs);
        assert_eq!(d.on_w, Matrix::from_i64(q, &[&[2]]));
        assert_eq!(d.on_v, Matrix::from_i64(q, &[&[2]]));
        assert_eq!(a.act(&GlObject::identity(&vs)), a);
        let vs0 = scalar_vs(q, 0);
        assert_eq!(a.dagger(&vs0).0, Matrix::from_i64(q, &[&[-1]]));
    }

    #[test]
    fn crossed_module_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        assert!(validate_glphi_crossed_module(&scalar_vs(Field::Prime(2), 0), 0, &mut rng).unwrap());
        assert!(!validate_glphi_crossed_module(&scalar_vs(Field::Rational, 1), 100, &mut rng).unwrap());
        let f3 = Field::Prime(3);
        let vs = TwoVectorSpace::new(Matrix::from_i64(f3, &[&[1], &[2]]), 1, 2).unwrap();
        assert!(validate_glphi_crossed_module(&vs, 0, &mut rng).unwrap());
    }
}
