use std::collections::BTreeMap;
use std::fmt;

use crate::group::{group_face, CrossedModule};

/// A formal signed sum of G-tuples of equal length.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    len: usize,
    terms: Vec<(i64, Vec<usize>)>,
}

impl Poly {
    pub fn zero(len: usize) -> Poly {
        Poly { len, terms: Vec::new() }
    }

    pub fn tuple(t: Vec<usize>) -> Poly {
        Poly { len: t.len(), terms: vec![(1, t)] }
    }

    pub fn signed(sign: i64, t: Vec<usize>) -> Poly {
        Poly { len: t.len(), terms: vec![(sign, t)] }
    }

    pub fn tuple_len(&self) -> usize {
        self.len
    }

    pub fn terms(&self) -> &[(i64, Vec<usize>)] {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn push(&mut self, sign: i64, t: Vec<usize>) {
        assert!(self.terms.is_empty() && self.len == 0 || t.len() == self.len, "tuple length mismatch");
        self.len = t.len();
        self.terms.push((sign, t));
    }

    /// Formal sum.
    pub fn plus(mut self, other: Poly) -> Poly {
        if self.terms.is_empty() {
            return Poly { len: other.len.max(self.len), terms: other.terms };
        }
        if !other.terms.is_empty() {
            assert_eq!(self.len, other.len, "tuple length mismatch");
        }
        self.terms.extend(other.terms);
        self
    }

    pub fn minus(self, other: Poly) -> Poly {
        self.plus(other.scaled(-1))
    }

    pub fn scaled(mut self, s: i64) -> Poly {
        for t in &mut self.terms {
            t.0 *= s;
        }
        self
    }

    /// Termwise concatenation `(self, other)`, signs multiplied.
    pub fn concat(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.len + other.len);
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                let mut v = a.clone();
                v.extend_from_slice(b);
                out.terms.push((s * t, v));
            }
        }
        out
    }

    /// `(x, self)`.
    pub fn prepend(&self, x: &[usize]) -> Poly {
        Poly::tuple(x.to_vec()).concat(self)
    }

    /// `(self, x)`.
    pub fn append(&self, x: &[usize]) -> Poly {
        self.concat(&Poly::tuple(x.to_vec()))
    }

    /// Componentwise right action by h.
    pub fn act(&self, xm: &CrossedModule, h: usize) -> Poly {
        self.map_tuples(|t| t.iter().map(|&g| xm.act(g, h)).collect())
    }

    /// Bar face on every tuple.
    pub fn face(&self, xm: &CrossedModule, k: usize) -> Poly {
        self.map_tuples(|t| group_face(xm.g(), k, t).expect("face index in range"))
    }

    /// Applies `f` to every tuple, keeping signs; tuple lengths must agree.
    pub fn map_tuples(&self, f: impl Fn(&[usize]) -> Vec<usize>) -> Poly {
        let mut out = Poly::zero(0);
        for (s, t) in &self.terms {
            out.push(*s, f(t));
        }
        if out.terms.is_empty() {
            out.len = self.len;
        }
        out
    }

    /// Applies a tuple-indexed polynomial builder to every term of `self`
    /// (formal linear extension in the tuple argument).
    pub fn bind(&self, len: usize, f: impl Fn(&[usize]) -> Poly) -> Poly {
        let mut out = Poly::zero(len);
        for (s, t) in &self.terms {
            out = out.plus(f(t).scaled(*s));
        }
        out
    }

    /// Collected form: like tuples merged, zero coefficients dropped.
    pub fn collected(&self) -> BTreeMap<Vec<usize>, i64> {
        let mut m = BTreeMap::new();
        for (s, t) in &self.terms {
            *m.entry(t.clone()).or_insert(0) += s;
        }
        m.retain(|_, v| *v != 0);
        m
    }

    /// Equality as formal sums.
    pub fn same_as(&self, other: &Poly) -> bool {
        self.collected() == other.collected()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, t)) in self.terms.iter().enumerate() {
            let sign = if *s < 0 { "-" } else if i > 0 { "+" } else { "" };
            let mag = s.abs();
            if mag == 1 {
                write!(f, "{sign}{t:?}")?;
            } else {
                write!(f, "{sign}{mag}{t:?}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit;

    #[test]
    fn empty_and_concat() {
        let p = Poly::zero(3);
        assert!(p.is_empty());
        let a = Poly::tuple(vec![1]).minus(Poly::tuple(vec![0]));
        let b = Poly::tuple(vec![1, 1]);
        let c = a.concat(&b);
        assert_eq!(c.tuple_len(), 3);
        assert_eq!(c.terms(), &[(1, vec![1, 1, 1]), (-1, vec![0, 1, 1])]);
    }

    #[test]
    fn faces_and_collection() {
        let xm = testkit::z2_identity();
        let p = Poly::tuple(vec![1, 1, 0]).face(&xm, 1);
        assert_eq!(p.terms(), &[(1, vec![0, 0])]);
        let q = Poly::tuple(vec![1]).plus(Poly::signed(-1, vec![1]));
        assert!(q.collected().is_empty());
    }
}
