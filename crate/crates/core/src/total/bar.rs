//! Ordinary group cohomology Hⁿ(H; V) from the inhomogeneous bar complex.
//! Deliberately independent of the grid machinery: it serves as the
//! reference the total complex must reproduce when G = 1 and W = 0.

use crate::group::FiniteGroup;
use crate::linalg::{Field, Matrix};

fn tuple(mut idx: usize, n: usize, order: usize) -> Vec<usize> {
    (0..n)
        .map(|_| {
            let x = idx % order;
            idx /= order;
            x
        })
        .collect()
}

fn index(t: &[usize], order: usize) -> usize {
    t.iter().rev().fold(0, |acc, &x| acc * order + x)
}

/// The matrix of d: Cⁿ → Cⁿ⁺¹,
/// (dφ)(h₁,…,h_{n+1}) = ρ(h₁)φ(h₂,…) + Σᵢ (−1)ⁱ φ(…,hᵢh_{i+1},…) + (−1)^{n+1}φ(h₁,…,h_n).
pub fn bar_differential(h: &FiniteGroup, rho: &[Matrix], field: Field, n: usize) -> Matrix {
    let dim = rho.first().map_or(0, Matrix::rows);
    let o = h.order();
    let (src, dst) = (o.pow(n as u32), o.pow(n as u32 + 1));
    let mut m = Matrix::zeros(field, dst * dim, src * dim);
    let mut add = |row: usize, col: usize, block: &Matrix| {
        for a in 0..dim {
            for b in 0..dim {
                let v = m.get(row * dim + a, col * dim + b) + block.get(a, b);
                m.set(row * dim + a, col * dim + b, v);
            }
        }
    };
    let id = Matrix::identity(field, dim);
    let minus = id.scale(&field.from_i64(-1));
    for k in 0..dst {
        let t = tuple(k, n + 1, o);
        add(k, index(&t[1..], o), &rho[t[0]]);
        for i in 1..=n {
            let mut s = t[..i - 1].to_vec();
            s.push(h.mul(t[i - 1], t[i]));
            s.extend_from_slice(&t[i + 1..]);
            add(k, index(&s, o), if i % 2 == 0 { &id } else { &minus });
        }
        add(k, index(&t[..n], o), if (n + 1) % 2 == 0 { &id } else { &minus });
    }
    m
}

/// dim Hⁿ(H; V) for the representation ρ: H → GL(V).
pub fn bar_cohomology_dim(h: &FiniteGroup, rho: &[Matrix], field: Field, n: usize) -> usize {
    let d = bar_differential(h, rho, field, n);
    let ker = d.cols() - d.rank();
    let im = if n == 0 { 0 } else { bar_differential(h, rho, field, n - 1).rank() };
    ker - im
}
