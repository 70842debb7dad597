use std::collections::HashMap;

use serde::Serialize;

use super::GroupError;

/// A finite group given by its full multiplication table. Element 0 is
/// always the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

/// First failed group axiom found by [`validate_group`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum GroupViolation {
    Shape { detail: String },
    Identity { x: usize },
    Associativity { a: usize, b: usize, c: usize },
    Inverse { x: usize },
}

impl std::fmt::Display for GroupViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupViolation::Shape { detail } => write!(f, "malformed table: {detail}"),
            GroupViolation::Identity { x } => write!(f, "element 0 is not a two-sided identity (fails at {x})"),
            GroupViolation::Associativity { a, b, c } => write!(f, "({a}·{b})·{c} ≠ {a}·({b}·{c})"),
            GroupViolation::Inverse { x } => write!(f, "element {x} has no inverse"),
        }
    }
}

/// Checks the group axioms on a square table, with element 0 as identity.
pub fn validate_group(table: &[Vec<usize>]) -> Result<(), GroupViolation> {
    let n = table.len();
    if n == 0 {
        return Err(GroupViolation::Shape { detail: "empty table".into() });
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(GroupViolation::Shape { detail: format!("row {i} has length {}", row.len()) });
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= n) {
            return Err(GroupViolation::Shape { detail: format!("entry {bad} out of range in row {i}") });
        }
    }
    for x in 0..n {
        if table[0][x] != x || table[x][0] != x {
            return Err(GroupViolation::Identity { x });
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = table[a][b];
            for c in 0..n {
                if table[ab][c] != table[a][table[b][c]] {
                    return Err(GroupViolation::Associativity { a, b, c });
                }
            }
        }
    }
    for x in 0..n {
        if !(0..n).any(|y| table[x][y] == 0 && table[y][x] == 0) {
            return Err(GroupViolation::Inverse { x });
        }
    }
    Ok(())
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<FiniteGroup, GroupError> {
        validate_group(&table).map_err(GroupError::NotAGroup)?;
        let order = table.len();
        let inverse = (0..order).map(|x| (0..order).find(|&y| table[x][y] == 0).unwrap()).collect();
        Ok(FiniteGroup { order, table: table.into_iter().flatten().collect(), inverse })
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup { order: 1, table: vec![0], inverse: vec![0] }
    }

    /// ℤ/n with element k ↦ k.
    pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
        if n == 0 {
            return Err(GroupError::Constructor("cyclic group of order 0".into()));
        }
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(table)
    }

    /// The dihedral group of order 2n; index k + n·e stands for rᵏsᵉ.
    pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
        if n == 0 {
            return Err(GroupError::Constructor("dihedral group needs n ≥ 1".into()));
        }
        let mul = |x: usize, y: usize| {
            let (a, e) = (x % n, x / n);
            let (b, f) = (y % n, y / n);
            let k = if e == 0 { (a + b) % n } else { (a + n - b) % n };
            k + n * ((e + f) % 2)
        };
        let table = (0..2 * n).map(|x| (0..2 * n).map(|y| mul(x, y)).collect()).collect();
        FiniteGroup::from_table(table)
    }

    /// Symmetric group on n points, generated by (0 1) and the n-cycle.
    pub fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
        Ok(FiniteGroup::symmetric_with_perms(n)?.0)
    }

    /// Symmetric group together with the permutation each index stands for.
    pub fn symmetric_with_perms(n: usize) -> Result<(FiniteGroup, Vec<Vec<usize>>), GroupError> {
        if n == 0 || n > 6 {
            return Err(GroupError::Constructor(format!("symmetric({n}) is outside 1..=6")));
        }
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
            gens.push((0..n).map(|x| (x + 1) % n).collect());
        }
        FiniteGroup::permutation_closure(n, &gens)
    }

    /// Closes a set of permutations of `0..n` under composition. The product
    /// στ means "apply σ first, then τ". Index 0 is the identity permutation.
    pub fn permutation_closure(
        n: usize,
        gens: &[Vec<usize>],
    ) -> Result<(FiniteGroup, Vec<Vec<usize>>), GroupError> {
        for g in gens {
            let mut seen = vec![false; n];
            if g.len() != n || !g.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true)) {
                return Err(GroupError::Constructor(format!("{g:?} is not a permutation of {n} points")));
            }
        }
        let compose = |s: &[usize], t: &[usize]| -> Vec<usize> { s.iter().map(|&x| t[x]).collect() };
        let mut elems: Vec<Vec<usize>> = vec![(0..n).collect()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(elems[0].clone(), 0)]);
        let mut k = 0;
        while k < elems.len() {
            for g in gens {
                let e = compose(&elems[k], g);
                if !index.contains_key(&e) {
                    index.insert(e.clone(), elems.len());
                    elems.push(e);
                }
            }
            k += 1;
        }
        let table = elems
            .iter()
            .map(|s| elems.iter().map(|t| index[&compose(s, t)]).collect())
            .collect();
        Ok((FiniteGroup::from_table(table)?, elems))
    }

    /// Direct product; index a + |self|·b stands for (a, b).
    pub fn product(&self, other: &FiniteGroup) -> FiniteGroup {
        let n = self.order;
        let table = (0..n * other.order)
            .map(|x| {
                (0..n * other.order)
                    .map(|y| self.mul(x % n, y % n) + n * other.mul(x / n, y / n))
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(table).expect("product of groups is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Left-to-right product of a list of elements.
    pub fn prod<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(0, |acc, x| self.mul(acc, x))
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugate h⁻¹·x·h.
    pub fn conj(&self, x: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(h), x), h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xor_table_is_a_group() {
        assert!(validate_group(&[vec![0, 1], vec![1, 0]]).is_ok());
    }

    #[test]
    fn bad_identity_is_reported() {
        let r = validate_group(&[vec![1, 1], vec![1, 0]]);
        assert!(matches!(r, Err(GroupViolation::Identity { .. })));
    }

    #[test]
    fn s3_by_closure() {
        let (s3, perms) = FiniteGroup::symmetric_with_perms(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        // σ first, then τ.
        for a in 0..6 {
            for b in 0..6 {
                let ab: Vec<usize> = perms[a].iter().map(|&x| perms[b][x]).collect();
                assert_eq!(perms[s3.mul(a, b)], ab);
            }
        }
    }

    #[test]
    fn dihedral_orders() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(d4.order(), 8);
        assert!(!d4.is_abelian());
        assert!(FiniteGroup::dihedral(1).unwrap().is_abelian());
    }
}
