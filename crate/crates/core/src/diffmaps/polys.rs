//! The coordinate polynomials c_{a,b}/p_{a,b} (front page) and p^{(r)}_{a,b}
//! (off the front page). Indices in comments are 1-based as in the usual
//! block notation γ_{ij}; code indices are 0-based.

use super::block::GammaBlock;
use super::config::{DiffConfig, Mutation, P13Head, P22Form, P22OffArg, P23Tail, PolyId, Reading, StepArrow};
use super::poly::Poly;
use super::DiffError;
use crate::group::{Arrow, CrossedModule};

pub(crate) struct Polys<'a> {
    pub xm: &'a CrossedModule,
    pub cfg: DiffConfig,
}

/// One entry of an explicit display: sign and tuple.
type Display = Vec<Poly>;

impl<'a> Polys<'a> {
    fn mul(&self, a: usize, b: usize) -> usize {
        self.xm.g().mul(a, b)
    }
    fn inv(&self, a: usize) -> usize {
        self.xm.g().inv(a)
    }
    fn act(&self, g: usize, h: usize) -> usize {
        self.xm.act(g, h)
    }
    fn hmul(&self, a: usize, b: usize) -> usize {
        self.xm.h().mul(a, b)
    }
    fn act_all(&self, f: &[usize], h: usize) -> Vec<usize> {
        f.iter().map(|&x| self.act(x, h)).collect()
    }

    /// Sums a display, honouring a DropTerm mutation on `id`.
    fn sum(&self, id: PolyId, len: usize, terms: Display) -> Poly {
        let mut out = Poly::zero(len);
        for (k, t) in terms.into_iter().enumerate() {
            if !self.cfg.drops(id, k) {
                out = out.plus(t);
            }
        }
        out
    }

    // ---------- front page ----------

    /// c_{a,b}/p_{a,b} on a b×a block, as used by the front template of Δ_{a,b}.
    pub fn front_top(&self, a: usize, b: usize, blk: &GammaBlock<'_>) -> Result<Poly, DiffError> {
        if (a, b) == (2, 1) && self.cfg.mutation == Some(Mutation::UnswappedDelta21) {
            return Ok(Poly::tuple(blk.rows()[0].g.clone()));
        }
        self.front(a, b, blk)
    }

    pub fn front(&self, a: usize, b: usize, blk: &GammaBlock<'_>) -> Result<Poly, DiffError> {
        debug_assert_eq!((blk.a(), blk.b()), (a, b));
        match (a, b) {
            (_, 1) => {
                let mut t = blk.rows()[0].g.clone();
                t.reverse();
                Ok(Poly::tuple(t))
            }
            (1, _) => Ok(Poly::tuple(self.staircase(blk))),
            (2, 2) => Ok(self.p22(blk)),
            (3, 2) => self.p32(blk),
            (2, 3) => self.p23(blk),
            _ => Err(DiffError::Unsupported { a, b, r: a + b - 1 }),
        }
    }

    /// (g₁₁^{h₂₁⋯h_{b1}}, g₂₁^{h₃₁⋯h_{b1}}, …, g_{b1}).
    fn staircase(&self, blk: &GammaBlock<'_>) -> Vec<usize> {
        let b = blk.b();
        let mut out = vec![0; b];
        let mut suffix = self.xm.h().identity();
        for i in (0..b).rev() {
            out[i] = self.act(blk.g(i, 0), suffix);
            suffix = self.hmul(blk.h(i, 0), suffix);
        }
        out
    }

    pub(crate) fn p22(&self, blk: &GammaBlock<'_>) -> Poly {
        match self.cfg.p22_form {
            P22Form::Direct => self.sum(PolyId::P22, 3, self.p22_direct(blk)),
            P22Form::Recast => self.sum(PolyId::P22, 3, self.p22_recast(blk)),
        }
    }

    pub(crate) fn p22_direct(&self, blk: &GammaBlock<'_>) -> Display {
        let (g11, g12, g21, g22) = (blk.g(0, 0), blk.g(0, 1), blk.g(1, 0), blk.g(1, 1));
        let (h21, h22) = (blk.h(1, 0), blk.h(1, 1));
        let top = self.mul(self.act(g12, h22), g22);
        let g11_22 = self.act(g11, h22);
        vec![
            Poly::tuple(vec![top, self.act(g11, h21), g21]),
            Poly::signed(-1, vec![self.act(self.mul(g12, g11), h22), g22, g21]),
            Poly::tuple(vec![self.act(g12, h22), g11_22, g22]),
            Poly::tuple(vec![top, self.inv(g22), self.mul(g11_22, g22)]),
            Poly::signed(-1, vec![top, self.inv(g22), g22]),
        ]
    }

    pub(crate) fn p22_recast(&self, blk: &GammaBlock<'_>) -> Display {
        let col2 = blk.drop_cols(1);
        let row2 = blk.drop_rows(1);
        let top_row = blk.corner(1, 2);
        let g22 = blk.minor();
        let head = col2.full_g();
        let c11 = self.front(1, 1, &blk.corner(1, 1)).expect("c_{1,1}");
        vec![
            self.front(1, 2, &blk.drop_last_col()).expect("c_{1,2}").prepend(&[head]),
            self.front(2, 1, &row2).expect("c_{2,1}").prepend(&[self.act(top_row.full_g(), row2.s())]).scaled(-1),
            self.front(2, 1, &top_row).expect("c_{2,1}").act(self.xm, g22.s()).concat(&self.front(1, 1, &g22).expect("c_{1,1}")),
            c11.bind(3, |f| self.p11(2, f, g22.arrow(0, 0)).prepend(&[head])),
        ]
    }

    fn p32(&self, blk: &GammaBlock<'_>) -> Result<Poly, DiffError> {
        Ok(self.sum(PolyId::P32, 4, self.p32_terms(blk)?))
    }

    pub(crate) fn p32_terms(&self, blk: &GammaBlock<'_>) -> Result<Vec<Poly>, DiffError> {
        let row2 = blk.drop_rows(1);
        let top3 = blk.corner(1, 3);
        let last_col = blk.drop_cols(2);
        let head = last_col.full_g();
        let g23 = row2.drop_cols(2);
        let row2_tail = row2.drop_cols(1);
        let c31 = self.front(3, 1, &top3)?;
        let terms = vec![
            self.front(2, 2, &blk.corner(2, 2))?.prepend(&[head]),
            self.front(3, 1, &row2)?.prepend(&[self.act(top3.full_g(), row2.s())]),
            c31.act(self.xm, g23.s()).concat(&self.front(1, 1, &g23)?),
            self.front(2, 1, &blk.corner(1, 2))?.bind(4, |f| self.p11(3, f, g23.arrow(0, 0)).prepend(&[head])),
            c31.face(self.xm, self.cfg.p32_face.index()).act(self.xm, row2_tail.s()).concat(&self.front(2, 1, &row2_tail)?),
            self.front(1, 1, &blk.corner(1, 1))?
                .bind(4, |f| self.p21_block(3, f, &row2_tail).prepend(&[blk.drop_cols(1).full_g()])),
        ];
        Ok(terms)
    }

    fn p23(&self, blk: &GammaBlock<'_>) -> Result<Poly, DiffError> {
        let head = blk.drop_cols(1).full_g();
        let rows23 = blk.drop_rows(1);
        let top2 = blk.corner(1, 2);
        let g32 = blk.drop_rows(2).drop_cols(1);
        let col_tail = rows23.drop_cols(1);
        let c1_22 = self.p22_direct(&blk.corner(2, 2)).swap_remove(0);
        let tail = self.front(1, 1, &blk.corner(1, 1))?.bind(4, |f| {
            let p = match self.cfg.p23_tail {
                P23Tail::ColumnPolynomial => self.p12_block(3, f, &col_tail),
                P23Tail::RowPolynomial => {
                    let (a, b) = (col_tail.arrow(0, 0), col_tail.arrow(1, 0));
                    self.p21(3, f, a, b)
                }
            };
            p.prepend(&[head])
        });
        let terms = vec![
            self.front(1, 3, &blk.corner(3, 1))?.prepend(&[head]),
            self.front(2, 2, &rows23)?.prepend(&[self.act(top2.full_g(), rows23.s())]).scaled(-1),
            c1_22.act(self.xm, g32.s()).concat(&self.front(1, 1, &g32)?),
            self.front(1, 2, &blk.corner(2, 1))?.bind(4, |f| self.p11(3, f, g32.arrow(0, 0)).prepend(&[head])),
            self.front(2, 1, &top2)?.act(self.xm, col_tail.s()).concat(&self.front(1, 2, &col_tail)?),
            tail,
        ];
        Ok(self.sum(PolyId::P23, 4, terms))
    }

    // ---------- off the front page ----------

    /// p^{(r)}_{a,b}(f⃗; ⊓) for the off-page template; f⃗ has length r+1−a−b.
    pub fn off(&self, a: usize, b: usize, r: usize, f: &[usize], blk: &GammaBlock<'_>) -> Result<Poly, DiffError> {
        debug_assert_eq!(f.len() + a + b, r + 1);
        match (a, b, r) {
            (1, 1, _) => Ok(self.p11(r, f, blk.arrow(0, 0))),
            (2, 1, r) if r >= 3 => Ok(self.p21_block(r, f, blk)),
            (1, 2, r) if r >= 3 => Ok(self.p12_block(r, f, blk)),
            (3, 1, 4) => Ok(self.p31(f, blk)),
            (1, 3, 4) => Ok(self.p13(f, blk)),
            (2, 2, 4) => Ok(self.p22_off(f, blk)),
            _ => Err(DiffError::Unsupported { a, b, r }),
        }
    }

    /// The c-pair of p^{(r)}_{1,1}: (c_{2n−1}, c_{2n}), 0 < n < r.
    pub fn c_pair(&self, r: usize, n: usize, f: &[usize], gamma: Arrow) -> Result<(Vec<usize>, Vec<usize>), DiffError> {
        if r < 2 || n == 0 || n >= r || f.len() != r - 1 {
            return Err(DiffError::Range(format!("c-pair needs r > 1, 0 < n < r and |f| = r−1 (r={r}, n={n}, |f|={})", f.len())));
        }
        let (g, h) = (gamma.g, gamma.h);
        let t = self.xm.target(gamma);
        let mut c = self.act_all(&f[..r - n - 1], t);
        c.push(self.inv(g));
        c.extend(self.act_all(&f[r - n - 1..r - 2], h));
        let mut c2 = c.clone();
        c.push(self.mul(self.act(f[r - 2], h), g));
        c2.push(g);
        Ok((c, c2))
    }

    /// p^{(r)}_{1,1}(f⃗; γ) = Σ_{n=1}^{r−1} (−1)^{n+1}(c_{2n−1} − c_{2n}).
    pub fn p11(&self, r: usize, f: &[usize], gamma: Arrow) -> Poly {
        let mut terms = Vec::with_capacity(2 * (r - 1));
        for n in 1..r {
            let (c1, c2) = self.c_pair(r, n, f, gamma).expect("c-pair arguments in range");
            let s = if n % 2 == 1 { 1 } else { -1 };
            terms.push(Poly::signed(s, c1));
            terms.push(Poly::signed(-s, c2));
        }
        self.sum(PolyId::P11Off, r, terms)
    }

    /// The pair led by the inverse of the whole block, which the printed
    /// recursion omits.
    fn leading_pair(&self, sign: i64, with_f: Vec<usize>, without_f: Vec<usize>) -> Poly {
        if self.cfg.recursion == Reading::Printed {
            return Poly::zero(with_f.len());
        }
        Poly::signed(sign, with_f).minus(Poly::signed(sign, without_f))
    }

    fn step_arrow(&self, which: StepArrow, first: Arrow, second: Arrow, row: bool) -> Arrow {
        match which {
            StepArrow::First => first,
            StepArrow::Second => second,
            StepArrow::Composite if row => self.xm.hcomp(first, second).expect("row arrows compose"),
            StepArrow::Composite => self.xm.vmul(first, second),
        }
    }

    fn p21_block(&self, r: usize, f: &[usize], blk: &GammaBlock<'_>) -> Poly {
        self.p21(r, f, blk.arrow(0, 0), blk.arrow(0, 1))
    }

    /// p^{(r)}_{2,1}(f⃗; γ₁₁ γ₁₂), r ≥ 3, |f⃗| = r − 2.
    pub fn p21(&self, r: usize, f: &[usize], y11: Arrow, y12: Arrow) -> Poly {
        let (g11, h11, g12, h12) = (y11.g, y11.h, y12.g, y12.h);
        if r == 3 {
            let f = f[0];
            let both = self.inv(self.mul(g12, g11));
            let fg = self.mul(self.act(f, h12), g12);
            let (i11, i12) = (self.inv(g11), self.inv(g12));
            let terms = vec![
                Poly::tuple(vec![both, fg, g11]),
                Poly::signed(-1, vec![both, g12, g11]),
                Poly::signed(-1, vec![i11, i12, fg]),
                Poly::tuple(vec![i11, i12, g12]),
                Poly::signed(-1, vec![i11, self.act(f, h11), g11]),
            ];
            return self.sum(PolyId::P21Base, 3, terms);
        }
        let rr = r - 1;
        let sign = if rr % 2 == 1 { 1 } else { -1 };
        let t11 = self.hmul(h11, self.xm.i(g11));
        let i11 = self.inv(g11);
        let mut last = vec![i11];
        last.extend(self.act_all(f, h11));
        last.push(g11);
        let both = self.inv(self.mul(g12, g11));
        let lead = |tail: usize| {
            let mut t = vec![both];
            t.extend(self.act_all(&f[..f.len() - 1], h12));
            t.extend([tail, g11]);
            t
        };
        let fg = self.mul(self.act(f[f.len() - 1], h12), g12);
        let terms = vec![
            self.p21(rr, &f[1..], y11, y12).prepend(&[self.act(f[0], t11)]),
            self.p11(rr, f, self.step_arrow(self.cfg.p21_step, y11, y12, true)).prepend(&[i11]).scaled(sign),
            Poly::signed(sign, last),
            self.leading_pair(-sign, lead(fg), lead(g12)),
        ];
        self.sum(PolyId::P21Step, r, terms)
    }

    fn p12_block(&self, r: usize, f: &[usize], blk: &GammaBlock<'_>) -> Poly {
        self.p12(r, f, blk.arrow(0, 0), blk.arrow(1, 0))
    }

    /// p^{(r)}_{1,2}(f⃗; γ₁₁ over γ₂₁), r ≥ 3, |f⃗| = r − 2.
    pub fn p12(&self, r: usize, f: &[usize], y11: Arrow, y21: Arrow) -> Poly {
        let (g11, h11, g21, h21) = (y11.g, y11.h, y21.g, y21.h);
        let t11 = self.hmul(h11, self.xm.i(g11));
        if r == 3 {
            let f = f[0];
            let g11_21 = self.act(g11, h21);
            let both = self.inv(self.mul(g11_21, g21));
            let ff = self.act(self.mul(self.act(f, h11), g11), h21);
            let (i21, i1121) = (self.inv(g21), self.inv(g11_21));
            let terms = vec![
                Poly::tuple(vec![both, ff, g21]),
                Poly::signed(-1, vec![both, g11_21, g21]),
                Poly::signed(-1, vec![i21, i1121, ff]),
                Poly::tuple(vec![i21, i1121, g11_21]),
                Poly::signed(-1, vec![i21, self.act(f, self.hmul(t11, h21)), g21]),
            ];
            return self.sum(PolyId::P12Base, 3, terms);
        }
        let rr = r - 1;
        let sign = if rr % 2 == 1 { 1 } else { -1 };
        let i21 = self.inv(g21);
        let g11_21 = self.act(g11, h21);
        let both = self.inv(self.mul(g11_21, g21));
        let lead = |tail: usize| {
            let mut t = vec![both];
            t.extend(self.act_all(&f[..f.len() - 1], self.hmul(h11, h21)));
            t.extend([tail, g21]);
            t
        };
        let ff = self.act(self.mul(self.act(f[f.len() - 1], h11), g11), h21);
        let mut last = vec![i21];
        last.extend(self.act_all(f, self.hmul(t11, h21)));
        last.push(g21);
        let terms = vec![
            self.p12(rr, &f[1..], y11, y21).prepend(&[self.act(f[0], self.hmul(self.hmul(t11, h21), self.xm.i(g21)))]),
            self.p11(rr, f, self.step_arrow(self.cfg.p12_step, y11, y21, false)).act(self.xm, h21).prepend(&[i21]).scaled(sign),
            Poly::signed(sign, last),
            self.leading_pair(-sign, lead(ff), lead(g11_21)),
        ];
        self.sum(PolyId::P12Step, r, terms)
    }

    /// p^{(4)}_{3,1}(f; γ₁₁ γ₁₂ γ₁₃).
    fn p31(&self, f: &[usize], blk: &GammaBlock<'_>) -> Poly {
        let f = f[0];
        let (g11, g12, g13) = (blk.g(0, 0), blk.g(0, 1), blk.g(0, 2));
        let (h12, h13) = (blk.h(0, 1), blk.h(0, 2));
        let two = self.inv(self.mul(g12, g11));
        let three = self.inv(self.mul(self.mul(g13, g12), g11));
        let terms = vec![
            self.p21(3, &[f], blk.arrow(0, 1), blk.arrow(0, 2)).prepend(&[self.inv(g11)]),
            Poly::signed(-1, vec![two, self.act(f, h12), g12, g11]),
            Poly::tuple(vec![three, self.mul(self.act(f, h13), g13), g12, g11]),
            Poly::signed(-1, vec![three, g13, g12, g11]),
        ];
        self.sum(PolyId::P31Off, 4, terms)
    }

    /// p^{(4)}_{1,3}(f; γ₁₁ over γ₂₁ over γ₃₁).
    fn p13(&self, f: &[usize], blk: &GammaBlock<'_>) -> Poly {
        let f = f[0];
        let (g11, g21, g31) = (blk.g(0, 0), blk.g(1, 0), blk.g(2, 0));
        let (h11, h21, h31) = (blk.h(0, 0), blk.h(1, 0), blk.h(2, 0));
        let t11 = self.xm.target(blk.arrow(0, 0));
        let h2131 = self.hmul(h21, h31);
        let g21_31 = self.act(g21, h31);
        let g11_2131 = self.act(g11, h2131);
        let two = self.inv(self.mul(g21_31, g31));
        let three = self.inv(self.mul(self.mul(g11_2131, g21_31), g31));
        let head = match self.cfg.p13_head {
            P13Head::Upper => self.p12(3, &[f], blk.arrow(0, 0), blk.arrow(1, 0)),
            P13Head::Lower => self.p12(3, &[f], blk.arrow(1, 0), blk.arrow(2, 0)),
        };
        let terms = vec![
            head.act(self.xm, h31).prepend(&[self.inv(g31)]),
            Poly::signed(-1, vec![two, self.act(f, self.hmul(t11, h2131)), g21_31, g31]),
            Poly::tuple(vec![three, self.act(self.mul(self.act(f, h11), g11), h2131), g21_31, g31]),
            Poly::signed(-1, vec![three, g11_2131, g21_31, g31]),
        ];
        self.sum(PolyId::P13Off, 4, terms)
    }

    /// p^{(4)}_{2,2}(f; 2×2 block).
    fn p22_off(&self, f: &[usize], blk: &GammaBlock<'_>) -> Poly {
        self.sum(PolyId::P22Off, 4, self.p22_off_terms(f, blk))
    }

    pub(crate) fn p22_off_terms(&self, f: &[usize], blk: &GammaBlock<'_>) -> Vec<Poly> {
        let f = f[0];
        let col1 = blk.corner(2, 1);
        let col2 = blk.drop_cols(1);
        let row1 = blk.corner(1, 2);
        let row2 = blk.drop_rows(1);
        let y22 = blk.arrow(1, 1);
        let (g11, g21, g22) = (blk.g(0, 0), blk.g(1, 0), blk.g(1, 1));
        let (h11, h12, h21, h22) = (blk.h(0, 0), blk.h(0, 1), blk.h(1, 0), blk.h(1, 1));
        let t11 = blk.t(0, 0);
        let n_col1 = self.inv(col1.full_g());
        let n_row2 = self.inv(row2.full_g());
        let n_all = self.inv(blk.full_g());
        let arg = match self.cfg.p22_off_arg {
            P22OffArg::Plain => f,
            P22OffArg::H11 => self.act(f, h11),
            P22OffArg::H12 => self.act(f, h12),
            P22OffArg::H11H21 => self.act(f, self.hmul(h11, h21)),
            P22OffArg::T11H21 => self.act(f, self.hmul(t11, h21)),
            P22OffArg::H12H22 => self.act(f, self.hmul(h12, h22)),
        };
        let p22 = self.p22(blk);
        let f_1122 = self.act(f, self.hmul(h11, h22));
        let g11_22 = self.act(g11, h22);
        let g11_21 = self.act(g11, h21);
        let (i21, i22) = (self.inv(g21), self.inv(g22));
        let tail_f = self.mul(self.mul(f_1122, g11_22), g22);
        let tail_1 = self.mul(g11_22, g22);
        let mut t6 = self.p11(2, &[f], blk.arrow(0, 0)).act(self.xm, h22).append(&[g22]);
        t6 = t6.prepend(&[n_row2]).scaled(-1);
        // As printed, six entries disagree with the D22 identity on a
        // non-abelian group; the repaired reading transports f by h₂₂.
        let repaired = self.cfg.p22_off == Reading::Repaired;
        let (s1, s2, e2, e4, e7, third) = if repaired {
            (-1, 1, self.hmul(t11, h22), h22, self.hmul(h12, h22), i22)
        } else {
            (1, -1, self.hmul(t11, h21), col1.s(), h12, i21)
        };
        let terms = vec![
            self.front(1, 2, &col1).expect("c_{1,2}").prepend(&[n_col1, self.act(f, self.hmul(h11, h21))]).scaled(s1),
            self.front(2, 1, &row2).expect("c_{2,1}").prepend(&[n_row2, self.act(f, e2)]).scaled(s2),
            self.p12_block(3, &[f], &col2).prepend(&[n_col1]).scaled(-1),
            self.p21_block(3, &[arg], &row1).act(self.xm, e4).prepend(&[n_row2]),
            self.p11(3, &[self.act(f, h11), g11], y22).prepend(&[n_col1]).scaled(-1),
            t6,
            p22.prepend(&[self.act(f, e7)]).face(self.xm, 1).prepend(&[n_all]),
            p22.prepend(&[n_all]).scaled(-1),
            Poly::signed(-1, vec![self.inv(self.mul(self.mul(g22, g11_21), g21)), f_1122, g11_22, g22]),
            Poly::tuple(vec![i21, i22, self.inv(g11_22), tail_f]),
            Poly::signed(-1, vec![i21, i22, self.inv(g11_22), tail_1]),
            Poly::signed(-1, vec![i21, self.inv(g11_21), third, tail_f]),
            Poly::tuple(vec![i21, self.inv(g11_21), third, tail_1]),
        ];
        terms
    }
}
