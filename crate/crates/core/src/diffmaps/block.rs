use crate::group::{Arrow, CrossedModule, Row};

/// A b×a block of arrows taken from consecutive nerve rows; row i holds the
/// ⨝-composable chain γ_{i,1}…γ_{i,a}. Indices are 0-based.
#[derive(Clone, Debug)]
pub struct GammaBlock<'a> {
    xm: &'a CrossedModule,
    rows: Vec<Row>,
}

impl<'a> GammaBlock<'a> {
    pub fn new(xm: &'a CrossedModule, rows: Vec<Row>) -> GammaBlock<'a> {
        if let Some(first) = rows.first() {
            assert!(rows.iter().all(|r| r.g.len() == first.g.len()), "ragged block");
        }
        GammaBlock { xm, rows }
    }

    pub fn xm(&self) -> &'a CrossedModule {
        self.xm
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// Number of columns.
    pub fn a(&self) -> usize {
        self.rows.first().map_or(0, |r| r.g.len())
    }

    /// Number of rows.
    pub fn b(&self) -> usize {
        self.rows.len()
    }

    pub fn g(&self, i: usize, j: usize) -> usize {
        self.rows[i].g[j]
    }

    /// Source of entry (i, j).
    pub fn h(&self, i: usize, j: usize) -> usize {
        self.xm.row_source(&self.rows[i], j)
    }

    /// Target of entry (i, j).
    pub fn t(&self, i: usize, j: usize) -> usize {
        self.xm.target(self.arrow(i, j))
    }

    pub fn arrow(&self, i: usize, j: usize) -> Arrow {
        Arrow { g: self.g(i, j), h: self.h(i, j) }
    }

    /// Rows r0..r1, columns c0..c1.
    pub fn sub(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> GammaBlock<'a> {
        assert!(r0 <= r1 && r1 <= self.b() && c0 < c1 && c1 <= self.a());
        let rows = self.rows[r0..r1]
            .iter()
            .map(|row| Row { g: row.g[c0..c1].to_vec(), h: self.xm.row_source(row, c1 - 1) })
            .collect();
        GammaBlock { xm: self.xm, rows }
    }

    /// The corner block ⌐ of the first `rows` rows and first `cols` columns.
    pub fn corner(&self, rows: usize, cols: usize) -> GammaBlock<'a> {
        self.sub(0, rows, 0, cols)
    }

    /// ∂₀^k: drop the first k columns.
    pub fn drop_cols(&self, k: usize) -> GammaBlock<'a> {
        self.sub(0, self.b(), k, self.a())
    }

    /// δ₀^k: drop the first k rows.
    pub fn drop_rows(&self, k: usize) -> GammaBlock<'a> {
        GammaBlock { xm: self.xm, rows: self.rows[k..].to_vec() }
    }

    /// ∂_a: drop the last column.
    pub fn drop_last_col(&self) -> GammaBlock<'a> {
        self.sub(0, self.b(), 0, self.a() - 1)
    }

    /// The full product ∥γ⃗∥: each row composed horizontally, then the rows
    /// multiplied vertically. The empty block gives the unit arrow at 1.
    pub fn full(&self) -> Arrow {
        if self.rows.is_empty() || self.a() == 0 {
            return self.xm.unit(self.xm.h().identity());
        }
        let a = self.a();
        let segs: Vec<Arrow> = self.rows.iter().map(|r| self.xm.row_segment(r, 0, a)).collect();
        self.xm.multiprod(&segs)
    }

    /// ∥γ⃗∥_G.
    pub fn full_g(&self) -> usize {
        self.full().g
    }

    /// s(∥γ⃗∥), the product of the last-column sources.
    pub fn s(&self) -> usize {
        self.full().h
    }

    /// The minor γ⃗_{1,1}: drop the first row and the first column.
    pub fn minor(&self) -> GammaBlock<'a> {
        self.drop_rows(1).drop_cols(1)
    }
}
