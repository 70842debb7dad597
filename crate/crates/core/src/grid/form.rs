use std::collections::BTreeMap;

use crate::group::Tri;
use crate::linalg::{Field, Matrix, Scalar, Vector};

use super::Cochain;

/// A linear functional on cochains of a fixed tridegree, evaluated at one
/// output point: `ω ↦ Σ M_y · ω(y)` over source indices `y`.
///
/// Operators in this crate are described pointwise by such forms; composing
/// operators composes forms, and an identity between operators holds at a
/// point exactly when the difference of the forms is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct LinForm {
    src: Tri,
    out_dim: usize,
    in_dim: usize,
    field: Field,
    terms: BTreeMap<usize, Matrix>,
}

impl LinForm {
    pub fn zero(field: Field, src: Tri, out_dim: usize, in_dim: usize) -> LinForm {
        LinForm { src, out_dim, in_dim, field, terms: BTreeMap::new() }
    }

    pub fn src(&self) -> Tri {
        self.src
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Adds `m` at source index `idx`.
    pub fn add(&mut self, idx: usize, m: &Matrix) {
        debug_assert_eq!((m.rows(), m.cols()), (self.out_dim, self.in_dim));
        match self.terms.get_mut(&idx) {
            Some(e) => {
                *e = &*e + m;
                if e.is_zero() {
                    self.terms.remove(&idx);
                }
            }
            None => {
                if !m.is_zero() {
                    self.terms.insert(idx, m.clone());
                }
            }
        }
    }

    /// Adds `sign · m` at `idx`.
    pub fn add_signed(&mut self, idx: usize, sign: i64, m: &Matrix) {
        if sign == 1 {
            self.add(idx, m);
        } else {
            self.add(idx, &m.scale(&self.field.from_i64(sign)));
        }
    }

    /// Adds `outer · inner`, where `inner` is a form on the same source.
    pub fn add_composed(&mut self, outer: &Matrix, inner: &LinForm) {
        debug_assert_eq!(inner.src, self.src);
        for (&idx, m) in &inner.terms {
            self.add(idx, &(outer * m));
        }
    }

    /// Adds `c · other` for a scalar `c`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &LinForm) {
        debug_assert_eq!(other.src, self.src);
        for (&idx, m) in &other.terms {
            self.add(idx, &m.scale(c));
        }
    }

    /// Keeps only the terms whose source index satisfies `keep`.
    pub fn retain(&mut self, mut keep: impl FnMut(usize) -> bool) {
        self.terms.retain(|&i, _| keep(i));
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Matrix)> {
        self.terms.iter().map(|(&i, m)| (i, m))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluates the form on a cochain of the source tridegree.
    pub fn apply(&self, c: &Cochain) -> Vector {
        debug_assert_eq!(c.tri(), self.src);
        let mut acc = vec![self.field.zero(); self.out_dim];
        for (&idx, m) in &self.terms {
            m.mul_vec_into(c.value(idx), &mut acc);
        }
        acc
    }
}
