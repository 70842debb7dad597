//! Small fixtures shared by the unit tests.

use crate::group::{CrossedModule, FiniteGroup};
use crate::linalg::{Field, Matrix};
use crate::rep::{TwoRep, TwoVectorSpace};

pub fn z2_identity() -> CrossedModule {
    let z2 = FiniteGroup::cyclic(2).unwrap();
    CrossedModule::with_trivial_action(z2.clone(), z2, vec![0, 1]).unwrap()
}

pub fn s3_conjugation() -> CrossedModule {
    CrossedModule::identity_conjugation(FiniteGroup::symmetric(3).unwrap())
}

/// W = F₂, V = F₂², φ = (1,0)ᵀ, ρ₁(1) = (0 1), ρ₀⁰(1) unipotent.
pub fn z2_unipotent() -> TwoRep {
    let f = Field::Prime(2);
    let vs = TwoVectorSpace::new(Matrix::from_i64(f, &[&[1], &[0]]), 1, 2).unwrap();
    let rho1 = vec![Matrix::zeros(f, 1, 2), Matrix::from_i64(f, &[&[0, 1]])];
    let rho00 = vec![Matrix::identity(f, 2), Matrix::from_i64(f, &[&[1, 1], &[0, 1]])];
    let rho01 = vec![Matrix::identity(f, 1), Matrix::identity(f, 1)];
    TwoRep::new(z2_identity(), vs, rho00, rho01, rho1).unwrap()
}

/// W = V = F₃, φ = 1, ρ₁(1) = 1, ρ₀⁰(1) = ρ₀¹(1) = 2.
pub fn z2_f3() -> TwoRep {
    let f = Field::Prime(3);
    let vs = TwoVectorSpace::new(Matrix::identity(f, 1), 1, 1).unwrap();
    let rho1 = vec![Matrix::zeros(f, 1, 1), Matrix::from_i64(f, &[&[1]])];
    let two = vec![Matrix::identity(f, 1), Matrix::from_i64(f, &[&[2]])];
    TwoRep::new(z2_identity(), vs, two.clone(), two, rho1).unwrap()
}

/// W = V = F₃, φ = 1, ρ₀ = sign, ρ₁(g) = sign(g) − 1.
pub fn s3_sign() -> TwoRep {
    let f = Field::Prime(3);
    let (g, perms) = FiniteGroup::symmetric_with_perms(3).unwrap();
    let sign: Vec<i64> = perms.iter().map(|p| perm_sign(p)).collect();
    let xm = CrossedModule::identity_conjugation(g);
    let vs = TwoVectorSpace::new(Matrix::identity(f, 1), 1, 1).unwrap();
    let rho0: Vec<Matrix> = sign.iter().map(|&s| Matrix::from_i64(f, &[&[s]])).collect();
    let rho1: Vec<Matrix> = sign.iter().map(|&s| Matrix::from_i64(f, &[&[s - 1]])).collect();
    TwoRep::new(xm, vs, rho0.clone(), rho0, rho1).unwrap()
}

pub fn perm_sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// V = W = F[H], φ = 1, ρ₀ regular, ρ₁(g) = R(i(g)) − 1. Valid for any
/// crossed module and faithful enough to separate non-commuting orderings.
pub fn regular(xm: CrossedModule, f: Field) -> TwoRep {
    let h = xm.h().clone();
    let n = h.order();
    let reg: Vec<Matrix> = (0..n)
        .map(|x| {
            let mut m = Matrix::zeros(f, n, n);
            for d in 0..n {
                m.set(h.mul(x, d), d, f.one());
            }
            m
        })
        .collect();
    let rho1: Vec<Matrix> = (0..xm.g().order()).map(|g| &reg[xm.i(g)] - &Matrix::identity(f, n)).collect();
    let vs = TwoVectorSpace::new(Matrix::identity(f, n), n, n).unwrap();
    TwoRep::new(xm, vs, reg.clone(), reg, rho1).unwrap()
}

/// ℤ/3 ↪ S₃ with the conjugation action: injective, not onto.
pub fn z3_in_s3() -> CrossedModule {
    let s3 = FiniteGroup::symmetric(3).unwrap();
    let c = (0..6).find(|&x| x != 0 && s3.mul(x, s3.mul(x, x)) == 0).unwrap();
    let pow = [0, c, s3.mul(c, c)];
    let z3 = FiniteGroup::cyclic(3).unwrap();
    let act = (0..3)
        .map(|k| (0..6).map(|h| pow.iter().position(|&y| y == s3.conj(pow[k], h)).unwrap()).collect())
        .collect();
    CrossedModule::new(z3, s3, pow.to_vec(), act).unwrap()
}

/// ℤ/3 with ℤ/2 acting by inversion and i trivial.
pub fn z3_inversion() -> CrossedModule {
    let act = (0..3).map(|k| vec![k, (3 - k) % 3]).collect();
    CrossedModule::new(FiniteGroup::cyclic(3).unwrap(), FiniteGroup::cyclic(2).unwrap(), vec![0; 3], act).unwrap()
}

/// 1 → H with W = 0 and V = F^{dim} carrying ρ (the classical case).
pub fn classical(h: FiniteGroup, f: Field, rho: Vec<Matrix>) -> TwoRep {
    let (nh, dv) = (h.order(), rho[0].rows());
    let xm = CrossedModule::of_group(h);
    TwoRep::new(xm, TwoVectorSpace::unit(f, dv), rho, vec![Matrix::identity(f, 0); nh], vec![Matrix::zeros(f, 0, dv)]).unwrap()
}

/// S₃ acting trivially on V = F₃, W = 0.
pub fn s3_trivial() -> TwoRep {
    TwoRep::trivial(s3_conjugation(), TwoVectorSpace::unit(Field::Prime(3), 1))
}
