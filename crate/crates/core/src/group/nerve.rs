use serde::{Deserialize, Serialize};

use super::{Arrow, CrossedModule, GroupError};

/// A point (g₁,…,g_p; h) of the nerve level 𝒢_p ≅ G^p × H.
///
/// Arrow j (1-based) is (g_j, h_j) with h_j = h·i(g_p⋯g_{j+1}); consecutive
/// arrows are composable, arrow j's target being arrow (j−1)'s source.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Row {
    pub g: Vec<usize>,
    pub h: usize,
}

/// A tridegree (p, q, r).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tri {
    pub p: usize,
    pub q: usize,
    pub r: usize,
}

impl Tri {
    pub const fn new(p: usize, q: usize, r: usize) -> Tri {
        Tri { p, q, r }
    }
    pub fn degree(self) -> usize {
        self.p + self.q + self.r
    }
    /// All tridegrees of total degree n, ordered by (p, q) lexicographically.
    pub fn of_degree(n: usize) -> Vec<Tri> {
        let mut v = Vec::new();
        for p in 0..=n {
            for q in 0..=n - p {
                v.push(Tri::new(p, q, n - p - q));
            }
        }
        v
    }
}

impl std::fmt::Display for Tri {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.p, self.q, self.r)
    }
}

/// A point of 𝒢_p^q × G^r: q nerve rows of level p and r loose G-elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Point {
    pub rows: Vec<Row>,
    pub f: Vec<usize>,
}

impl Point {
    pub fn tri(&self) -> Tri {
        Tri::new(self.rows.first().map_or(0, |r| r.g.len()), self.rows.len(), self.f.len())
    }
}

impl CrossedModule {
    /// h_j for 0-based arrow j of a row.
    pub fn row_source(&self, row: &Row, j: usize) -> usize {
        let p = row.g.len();
        let mut x = 0;
        for k in (j + 1..p).rev() {
            x = self.g().mul(x, row.g[k]);
        }
        self.h().mul(row.h, self.i(x))
    }

    /// The arrows of a row, first (target end) to last (source end).
    pub fn row_arrows(&self, row: &Row) -> Vec<Arrow> {
        let p = row.g.len();
        let mut out = vec![Arrow { g: 0, h: 0 }; p];
        let mut h = row.h;
        for j in (0..p).rev() {
            out[j] = Arrow { g: row.g[j], h };
            h = self.h().mul(h, self.i(row.g[j]));
        }
        out
    }

    /// Inverse of [`CrossedModule::row_arrows`]; checks composability.
    pub fn row_from_arrows(&self, arrows: &[Arrow], h_if_empty: usize) -> Result<Row, GroupError> {
        for w in arrows.windows(2) {
            if w[0].h != self.target(w[1]) {
                return Err(GroupError::NotComposable { first: w[0], second: w[1] });
            }
        }
        Ok(Row { g: arrows.iter().map(|a| a.g).collect(), h: arrows.last().map_or(h_if_empty, |a| a.h) })
    }

    /// Final target t_p(g₁,…,g_p; h) = h·i(g_p⋯g₁).
    pub fn final_target(&self, row: &Row) -> usize {
        let x = row.g.iter().rev().fold(0, |acc, &g| self.g().mul(acc, g));
        self.h().mul(row.h, self.i(x))
    }

    /// Face ∂_k of a level-(p+1) row, 0 ≤ k ≤ p+1.
    pub fn face(&self, k: usize, row: &Row) -> Result<Row, GroupError> {
        let n = row.g.len();
        if n == 0 || k > n {
            return Err(GroupError::FaceIndex { k, level: n });
        }
        let mut g = row.g.clone();
        let mut h = row.h;
        if k == 0 {
            g.remove(0);
        } else if k == n {
            let last = g.pop().unwrap();
            h = self.h().mul(h, self.i(last));
        } else {
            let merged = self.g().mul(g[k], g[k - 1]);
            g[k - 1] = merged;
            g.remove(k);
        }
        Ok(Row { g, h })
    }

    /// Face without range checking, for internal hot loops.
    pub(crate) fn face_unchecked(&self, k: usize, row: &Row) -> Row {
        self.face(k, row).expect("face index in range")
    }

    /// Componentwise vertical product of two rows of the same level.
    pub fn row_vmul(&self, a: &Row, b: &Row) -> Row {
        assert_eq!(a.g.len(), b.g.len());
        let aa = self.row_arrows(a);
        let bb = self.row_arrows(b);
        let g = aa.iter().zip(&bb).map(|(x, y)| self.vmul(*x, *y).g).collect();
        Row { g, h: self.h().mul(a.h, b.h) }
    }

    /// Horizontal composite of 0-based arrows lo..hi of a row:
    /// (g_{hi−1}⋯g_{lo}, h_{hi−1}).
    pub fn row_segment(&self, row: &Row, lo: usize, hi: usize) -> Arrow {
        assert!(lo < hi && hi <= row.g.len());
        let g = row.g[lo..hi].iter().rev().fold(0, |acc, &x| self.g().mul(acc, x));
        Arrow { g, h: self.row_source(row, hi - 1) }
    }

    /// Size of 𝒢_p^q × G^r: |G|^{pq+r}·|H|^q.
    pub fn domain_size(&self, t: Tri) -> Option<usize> {
        let ng = self.g().order();
        let nh = self.h().order();
        let a = ng.checked_pow(u32::try_from(t.p * t.q + t.r).ok()?)?;
        let b = nh.checked_pow(u32::try_from(t.q).ok()?)?;
        a.checked_mul(b)
    }

    /// Mixed-radix index of a point, least significant first in the order
    /// row 1 (g₁₁..g₁ₚ, h₁), row 2, …, then f₁..f_r.
    pub fn encode(&self, x: &Point) -> usize {
        let ng = self.g().order();
        let nh = self.h().order();
        let mut idx = 0;
        let mut w = 1;
        for row in &x.rows {
            for &g in &row.g {
                idx += g * w;
                w *= ng;
            }
            idx += row.h * w;
            w *= nh;
        }
        for &f in &x.f {
            idx += f * w;
            w *= ng;
        }
        idx
    }

    pub fn decode(&self, t: Tri, mut idx: usize) -> Result<Point, GroupError> {
        let size = self.domain_size(t).ok_or(GroupError::DomainTooLarge(t))?;
        if idx >= size {
            return Err(GroupError::CodecIndex { index: idx, size });
        }
        let ng = self.g().order();
        let nh = self.h().order();
        let mut rows = Vec::with_capacity(t.q);
        for _ in 0..t.q {
            let mut g = Vec::with_capacity(t.p);
            for _ in 0..t.p {
                g.push(idx % ng);
                idx /= ng;
            }
            let h = idx % nh;
            idx /= nh;
            rows.push(Row { g, h });
        }
        let mut f = Vec::with_capacity(t.r);
        for _ in 0..t.r {
            f.push(idx % ng);
            idx /= ng;
        }
        Ok(Point { rows, f })
    }
}

/// Bar-complex face on a tuple: ∂₀ drops the first entry, ∂_k multiplies
/// entries k−1 and k, ∂_n drops the last.
pub fn group_face(g: &super::FiniteGroup, k: usize, t: &[usize]) -> Result<Vec<usize>, GroupError> {
    let n = t.len();
    if n == 0 || k > n {
        return Err(GroupError::FaceIndex { k, level: n });
    }
    let mut v = t.to_vec();
    if k == 0 {
        v.remove(0);
    } else if k == n {
        v.pop();
    } else {
        v[k - 1] = g.mul(t[k - 1], t[k]);
        v.remove(k);
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn z2() -> CrossedModule {
        let z = FiniteGroup::cyclic(2).unwrap();
        CrossedModule::with_trivial_action(z.clone(), z, vec![0, 1]).unwrap()
    }

    #[test]
    fn z2_faces() {
        let xm = z2();
        let x = Row { g: vec![1, 1], h: 0 };
        assert_eq!(xm.face(0, &x).unwrap(), Row { g: vec![1], h: 0 });
        assert_eq!(xm.face(1, &x).unwrap(), Row { g: vec![0], h: 0 });
        assert_eq!(xm.face(2, &x).unwrap(), Row { g: vec![1], h: 1 });
        assert!(xm.face(3, &x).is_err());
        assert_eq!(xm.final_target(&x), 0);
    }

    #[test]
    fn codec_round_trip_and_sizes() {
        let xm = z2();
        assert_eq!(xm.domain_size(Tri::new(0, 0, 0)), Some(1));
        assert_eq!(xm.domain_size(Tri::new(2, 1, 1)), Some(16));
        let t = Tri::new(1, 1, 1);
        let n = xm.domain_size(t).unwrap();
        assert_eq!(n, 8);
        for i in 0..n {
            let x = xm.decode(t, i).unwrap();
            assert_eq!(x.tri(), t);
            assert_eq!(xm.encode(&x), i);
        }
        assert!(xm.decode(t, n).is_err());
    }

    #[test]
    fn bar_faces() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(group_face(&z3, 0, &[1, 2]).unwrap(), vec![2]);
        assert_eq!(group_face(&z3, 1, &[1, 2]).unwrap(), vec![0]);
        assert_eq!(group_face(&z3, 2, &[1, 2]).unwrap(), vec![1]);
    }

    #[test]
    fn arrows_round_trip_and_target() {
        let xm = CrossedModule::identity_conjugation(FiniteGroup::symmetric(3).unwrap());
        let row = Row { g: vec![1, 4, 3], h: 2 };
        let arrows = xm.row_arrows(&row);
        assert_eq!(xm.row_from_arrows(&arrows, 0).unwrap(), row);
        let full = arrows[1..].iter().fold(arrows[0], |acc, &a| xm.hcomp(acc, a).unwrap());
        assert_eq!(xm.target(full), xm.final_target(&row));
        assert_eq!(xm.row_segment(&row, 0, 3), full);
    }
}
