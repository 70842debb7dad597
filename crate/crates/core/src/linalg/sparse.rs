use super::{Field, Matrix, Scalar};

/// Row-compressed sparse matrix; used for assembled differentials, whose
/// rows touch only a handful of input points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    field: Field,
    cols: usize,
    rows: Vec<Vec<(usize, Scalar)>>,
}

impl SparseMatrix {
    pub fn new(field: Field, cols: usize) -> SparseMatrix {
        SparseMatrix { field, cols, rows: Vec::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows.len()
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Appends a row given as (column, value) pairs; duplicates are summed
    /// and zeros dropped.
    pub fn push_row(&mut self, mut entries: Vec<(usize, Scalar)>) {
        entries.sort_by_key(|e| e.0);
        let mut row: Vec<(usize, Scalar)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            assert!(c < self.cols, "column {c} out of range {}", self.cols);
            match row.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += &v,
                _ => row.push((c, v)),
            }
        }
        row.retain(|(_, v)| !v.is_zero());
        self.rows.push(row);
    }

    pub fn row(&self, i: usize) -> &[(usize, Scalar)] {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        self.rows
            .iter()
            .map(|row| {
                let mut acc = self.field.zero();
                for (c, a) in row {
                    if !v[*c].is_zero() {
                        acc += &(a * &v[*c]);
                    }
                }
                acc
            })
            .collect()
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows(), "shape mismatch in sparse product");
        let mut out = SparseMatrix::new(self.field, other.cols);
        for row in &self.rows {
            let mut acc: Vec<(usize, Scalar)> = Vec::new();
            for (k, a) in row {
                for (j, b) in other.row(*k) {
                    acc.push((*j, a * b));
                }
            }
            out.push_row(acc);
        }
        out
    }

    /// First nonzero entry, as (row, col, value).
    pub fn first_nonzero(&self) -> Option<(usize, usize, Scalar)> {
        self.rows
            .iter()
            .enumerate()
            .find_map(|(i, r)| r.first().map(|(c, v)| (i, *c, v.clone())))
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows(), self.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                m.set(i, *c, v.clone());
            }
        }
        m
    }

    /// Keeps only the listed columns, renumbered in the given order.
    pub fn select_cols(&self, keep: &[usize]) -> SparseMatrix {
        let mut map = vec![usize::MAX; self.cols];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = new;
        }
        let mut out = SparseMatrix::new(self.field, keep.len());
        for row in &self.rows {
            out.push_row(
                row.iter()
                    .filter(|(c, _)| map[*c] != usize::MAX)
                    .map(|(c, v)| (map[*c], v.clone()))
                    .collect(),
            );
        }
        out
    }

    /// Keeps only the listed rows.
    pub fn select_rows(&self, keep: &[usize]) -> SparseMatrix {
        SparseMatrix {
            field: self.field,
            cols: self.cols,
            rows: keep.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_matches_dense() {
        let f = Field::Prime(5);
        let a = Matrix::from_i64(f, &[&[1, 2, 0], &[0, 3, 4]]);
        let b = Matrix::from_i64(f, &[&[1, 0], &[2, 1], &[0, 4]]);
        let to_sparse = |m: &Matrix| {
            let mut s = SparseMatrix::new(f, m.cols());
            for i in 0..m.rows() {
                s.push_row(m.row(i).iter().cloned().enumerate().collect());
            }
            s
        };
        assert_eq!(to_sparse(&a).mul(&to_sparse(&b)).to_dense(), &a * &b);
    }
}
