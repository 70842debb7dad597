use super::{Field, Scalar, Vector};

/// An incrementally grown basis in reduced echelon form: each stored vector
/// has a pivot coordinate equal to 1 at which all the others vanish.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    len: usize,
    rows: Vec<(usize, Vector)>,
}

impl Echelon {
    pub fn new(field: Field, len: usize) -> Echelon {
        Echelon { field, len, rows: Vec::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// `v` minus its projection onto the span along the pivots; zero iff
    /// `v` lies in the span.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let mut w = v.to_vec();
        for (pc, row) in &self.rows {
            let c = w[*pc].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in w.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &(&c * y);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|x| !x.is_zero()) else { return false };
        let inv = w[pc].inv().expect("nonzero pivot");
        for x in w.iter_mut() {
            *x = &*x * &inv;
        }
        // keep earlier rows reduced at the new pivot
        for (_, row) in self.rows.iter_mut() {
            let c = row[pc].clone();
            if !c.is_zero() {
                for (x, y) in row.iter_mut().zip(&w) {
                    if !y.is_zero() {
                        *x -= &(&c * y);
                    }
                }
            }
        }
        self.rows.push((pc, w));
        true
    }
}
