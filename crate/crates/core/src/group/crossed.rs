use serde::Serialize;

use super::{FiniteGroup, GroupError};

/// A finite crossed module: a homomorphism i: G → H together with a right
/// action of H on G by automorphisms, written g^h.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    g: FiniteGroup,
    h: FiniteGroup,
    i: Vec<usize>,
    act: Vec<usize>,
}

/// A failed crossed-module axiom, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum CrossedModuleViolation {
    Shape { detail: String },
    Homomorphism { g1: usize, g2: usize },
    ActionUnit { g: usize },
    ActionComposition { g: usize, h1: usize, h2: usize },
    ActionAutomorphism { g1: usize, g2: usize, h: usize },
    Equivariance { g: usize, h: usize },
    Peiffer { g1: usize, g2: usize },
}

impl std::fmt::Display for CrossedModuleViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use CrossedModuleViolation::*;
        match self {
            Shape { detail } => write!(f, "malformed crossed module: {detail}"),
            Homomorphism { g1, g2 } => write!(f, "i is not a homomorphism at ({g1}, {g2})"),
            ActionUnit { g } => write!(f, "the identity of H moves {g}"),
            ActionComposition { g, h1, h2 } => write!(f, "{g}^({h1}·{h2}) ≠ ({g}^{h1})^{h2}"),
            ActionAutomorphism { g1, g2, h } => write!(f, "acting by {h} does not respect {g1}·{g2}"),
            Equivariance { g, h } => write!(f, "i({g}^{h}) ≠ {h}⁻¹·i({g})·{h}"),
            Peiffer { g1, g2 } => write!(f, "{g1}^i({g2}) ≠ {g2}⁻¹·{g1}·{g2}"),
        }
    }
}

/// An arrow (g, h) of the 2-group G ⋊ H.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Arrow {
    pub g: usize,
    pub h: usize,
}

impl CrossedModule {
    /// Builds and validates. `act[g][h]` is g^h.
    pub fn new(
        g: FiniteGroup,
        h: FiniteGroup,
        i: Vec<usize>,
        act: Vec<Vec<usize>>,
    ) -> Result<CrossedModule, GroupError> {
        let xm = CrossedModule::new_unchecked(g, h, i, act)?;
        let v = xm.violations();
        if !v.is_empty() {
            return Err(GroupError::NotACrossedModule(v));
        }
        Ok(xm)
    }

    /// Builds without checking the axioms (shapes are still checked).
    pub fn new_unchecked(
        g: FiniteGroup,
        h: FiniteGroup,
        i: Vec<usize>,
        act: Vec<Vec<usize>>,
    ) -> Result<CrossedModule, GroupError> {
        let (ng, nh) = (g.order(), h.order());
        let shape = |d: String| GroupError::NotACrossedModule(vec![CrossedModuleViolation::Shape { detail: d }]);
        if i.len() != ng || i.iter().any(|&x| x >= nh) {
            return Err(shape(format!("i must list {ng} elements of H")));
        }
        if act.len() != ng || act.iter().any(|r| r.len() != nh || r.iter().any(|&x| x >= ng)) {
            return Err(shape(format!("action must be a {ng}×{nh} table of elements of G")));
        }
        Ok(CrossedModule { g, h, i, act: act.into_iter().flatten().collect() })
    }

    /// G = H with i the identity and the conjugation action g^h = h⁻¹gh.
    pub fn identity_conjugation(g: FiniteGroup) -> CrossedModule {
        let n = g.order();
        let act = (0..n).map(|x| (0..n).map(|h| g.conj(x, h)).collect()).collect();
        CrossedModule::new(g.clone(), g, (0..n).collect(), act).expect("conjugation crossed module")
    }

    /// Trivial action; valid exactly when G is abelian and i lands in the centre.
    pub fn with_trivial_action(g: FiniteGroup, h: FiniteGroup, i: Vec<usize>) -> Result<CrossedModule, GroupError> {
        let act = (0..g.order()).map(|x| vec![x; h.order()]).collect();
        CrossedModule::new(g, h, i, act)
    }

    /// The crossed module 1 → H.
    pub fn of_group(h: FiniteGroup) -> CrossedModule {
        let nh = h.order();
        CrossedModule::new(FiniteGroup::trivial(), h, vec![0], vec![vec![0; nh]]).expect("1 → H")
    }

    /// Ok iff every axiom holds; otherwise the first failure.
    pub fn validate(&self) -> Result<(), CrossedModuleViolation> {
        match self.violations().into_iter().next() {
            None => Ok(()),
            Some(v) => Err(v),
        }
    }

    /// One witness for each failed axiom, in the order: homomorphism,
    /// action (unit, composition, automorphism), equivariance, Peiffer.
    pub fn violations(&self) -> Vec<CrossedModuleViolation> {
        use CrossedModuleViolation::*;
        let (g, h) = (&self.g, &self.h);
        let (ng, nh) = (g.order(), h.order());
        let mut out = Vec::new();
        let pairs = || (0..ng).flat_map(move |a| (0..ng).map(move |b| (a, b)));
        if let Some((g1, g2)) = pairs().find(|&(a, b)| self.i(g.mul(a, b)) != h.mul(self.i(a), self.i(b))) {
            out.push(Homomorphism { g1, g2 });
        }
        if let Some(x) = (0..ng).find(|&x| self.act(x, 0) != x) {
            out.push(ActionUnit { g: x });
        }
        'comp: for x in 0..ng {
            for h1 in 0..nh {
                for h2 in 0..nh {
                    if self.act(x, h.mul(h1, h2)) != self.act(self.act(x, h1), h2) {
                        out.push(ActionComposition { g: x, h1, h2 });
                        break 'comp;
                    }
                }
            }
        }
        'aut: for hh in 0..nh {
            for (g1, g2) in pairs() {
                if self.act(g.mul(g1, g2), hh) != g.mul(self.act(g1, hh), self.act(g2, hh)) {
                    out.push(ActionAutomorphism { g1, g2, h: hh });
                    break 'aut;
                }
            }
        }
        'eq: for x in 0..ng {
            for hh in 0..nh {
                if self.i(self.act(x, hh)) != h.conj(self.i(x), hh) {
                    out.push(Equivariance { g: x, h: hh });
                    break 'eq;
                }
            }
        }
        if let Some((g1, g2)) = pairs().find(|&(a, b)| self.act(a, self.i(b)) != g.conj(a, b)) {
            out.push(Peiffer { g1, g2 });
        }
        out
    }

    pub fn g(&self) -> &FiniteGroup {
        &self.g
    }
    pub fn h(&self) -> &FiniteGroup {
        &self.h
    }

    #[inline]
    pub fn i(&self, g: usize) -> usize {
        self.i[g]
    }

    /// g^h.
    #[inline]
    pub fn act(&self, g: usize, h: usize) -> usize {
        self.act[g * self.h.order() + h]
    }

    pub fn i_table(&self) -> &[usize] {
        &self.i
    }

    pub fn act_rows(&self) -> Vec<Vec<usize>> {
        self.act.chunks(self.h.order()).map(<[usize]>::to_vec).collect()
    }

    // ---- the 2-group G ⋊ H ----

    /// Vertical product (g₁,h₁)⋎(g₂,h₂) = (g₁^{h₂}·g₂, h₁h₂).
    pub fn vmul(&self, a: Arrow, b: Arrow) -> Arrow {
        Arrow { g: self.g.mul(self.act(a.g, b.h), b.g), h: self.h.mul(a.h, b.h) }
    }

    /// Inverse for the vertical product.
    pub fn vinv(&self, a: Arrow) -> Arrow {
        let hi = self.h.inv(a.h);
        Arrow { g: self.act(self.g.inv(a.g), hi), h: hi }
    }

    pub fn source(&self, a: Arrow) -> usize {
        a.h
    }

    pub fn target(&self, a: Arrow) -> usize {
        self.h.mul(a.h, self.i(a.g))
    }

    pub fn unit(&self, h: usize) -> Arrow {
        Arrow { g: 0, h }
    }

    /// Groupoid inverse ι(g,h) = (g⁻¹, h·i(g)).
    pub fn groupoid_inverse(&self, a: Arrow) -> Arrow {
        Arrow { g: self.g.inv(a.g), h: self.target(a) }
    }

    /// Horizontal composite (g′, h·i(g)) ⨝ (g, h) = (g·g′, h); the source of
    /// `first` must equal the target of `second`.
    pub fn hcomp(&self, first: Arrow, second: Arrow) -> Result<Arrow, GroupError> {
        if first.h != self.target(second) {
            return Err(GroupError::NotComposable { first, second });
        }
        Ok(Arrow { g: self.g.mul(second.g, first.g), h: second.h })
    }

    /// Closed form of the vertical product of a nonempty list:
    /// (g₁^{h₂⋯h_q}·g₂^{h₃⋯h_q}⋯g_q, h₁⋯h_q).
    pub fn multiprod(&self, xs: &[Arrow]) -> Arrow {
        assert!(!xs.is_empty(), "multiprod of an empty list");
        let mut g = 0;
        let mut suffix = 0; // h_{k+1}⋯h_q
        for a in xs.iter().rev() {
            g = self.g.mul(self.act(a.g, suffix), g);
            suffix = self.h.mul(a.h, suffix);
        }
        Arrow { g, h: suffix }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> CrossedModule {
        let z = FiniteGroup::cyclic(2).unwrap();
        CrossedModule::with_trivial_action(z.clone(), z, vec![0, 1]).unwrap()
    }

    #[test]
    fn z2_arrow_products() {
        let xm = z2();
        assert_eq!(xm.vmul(Arrow { g: 1, h: 0 }, Arrow { g: 1, h: 1 }), Arrow { g: 0, h: 1 });
        assert_eq!(xm.target(Arrow { g: 1, h: 1 }), 0);
        assert_eq!(xm.groupoid_inverse(Arrow { g: 1, h: 0 }), Arrow { g: 1, h: 1 });
        assert_eq!(xm.hcomp(Arrow { g: 1, h: 1 }, Arrow { g: 1, h: 0 }).unwrap(), Arrow { g: 0, h: 0 });
        assert!(xm.hcomp(Arrow { g: 1, h: 0 }, Arrow { g: 1, h: 0 }).is_err());
    }

    #[test]
    fn s3_conjugation_is_valid_and_trivial_action_is_not() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let xm = CrossedModule::identity_conjugation(s3.clone());
        assert!(xm.validate().is_ok());
        let err = CrossedModule::with_trivial_action(s3.clone(), s3, (0..6).collect()).unwrap_err();
        let GroupError::NotACrossedModule(v) = err else { panic!("{err}") };
        assert!(v.iter().any(|x| matches!(x, CrossedModuleViolation::Peiffer { .. })));
    }

    #[test]
    fn s3_vmul_matches_two_step_oracle() {
        let (s3, perms) = FiniteGroup::symmetric_with_perms(3).unwrap();
        let xm = CrossedModule::identity_conjugation(s3.clone());
        let find = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let comp = |a: usize, b: usize| find(&perms[a].iter().map(|&x| perms[b][x]).collect());
        let inv = |a: usize| {
            let mut q = vec![0; 3];
            for (x, &y) in perms[a].iter().enumerate() {
                q[y] = x;
            }
            find(&q)
        };
        for g1 in 0..6 {
            for h1 in 0..6 {
                for g2 in 0..6 {
                    for h2 in 0..6 {
                        let acted = comp(comp(inv(h2), g1), h2);
                        let want = Arrow { g: comp(acted, g2), h: comp(h1, h2) };
                        assert_eq!(xm.vmul(Arrow { g: g1, h: h1 }, Arrow { g: g2, h: h2 }), want);
                    }
                }
            }
        }
    }

    #[test]
    fn multiprod_matches_fold() {
        let xm = CrossedModule::identity_conjugation(FiniteGroup::symmetric(3).unwrap());
        let xs = [Arrow { g: 1, h: 2 }, Arrow { g: 3, h: 5 }, Arrow { g: 4, h: 1 }];
        let fold = xs[1..].iter().fold(xs[0], |acc, &a| xm.vmul(acc, a));
        assert_eq!(xm.multiprod(&xs), fold);
        assert_eq!(xm.multiprod(&xs[..1]), xs[0]);
    }

    #[test]
    fn unit_then_target_is_i() {
        let xm = CrossedModule::identity_conjugation(FiniteGroup::dihedral(3).unwrap());
        for g in 0..6 {
            assert_eq!(xm.target(Arrow { g, h: 0 }), xm.i(g));
        }
    }
}
