use serde::{Deserialize, Serialize};

/// Which of the two equivalent coordinate forms of p_{2,2} is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum P22Form {
    /// The explicit five-tuple display.
    Direct,
    /// The form assembled from c_{1,2}, c_{2,1}, c_{1,1} and p^{(2)}_{1,1}.
    Recast,
}

/// The last displayed term of p_{2,3} applies a degree-3 off-page polynomial
/// to the column ∂₀δ₀γ⃗.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum P23Tail {
    /// p^{(3)}_{2,1}, with the two column entries read as a row.
    RowPolynomial,
    /// p^{(3)}_{1,2} on the column.
    ColumnPolynomial,
}

/// Which 2×1 sub-column feeds p^{(3)}_{1,2} in the leading term of p^{(4)}_{1,3}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum P13Head {
    /// γ₁₁ over γ₂₁.
    Upper,
    /// γ₂₁ over γ₃₁.
    Lower,
}

/// The single arrow fed to p^{(r)}_{1,1} inside the recursive step of
/// p^{(r+1)}_{2,1} / p^{(r+1)}_{1,2}, whose display names the whole block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepArrow {
    /// γ₁₁.
    First,
    /// γ₁₂ (row) or γ₂₁ (column).
    Second,
    /// The composite of the block: γ₁₁⨝γ₁₂ (row) or γ₁₁⋎γ₂₁ (column).
    Composite,
}

/// The face δ₀ applied to c_{3,1}(⊓^{3,1}) in the fifth term of p_{3,2}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum P32Face {
    /// Drop the first entry.
    DropFirst,
    /// Multiply the first two entries.
    MergeFirst,
}

impl P32Face {
    pub(crate) fn index(self) -> usize {
        match self {
            P32Face::DropFirst => 0,
            P32Face::MergeFirst => 1,
        }
    }
}

/// Whether a coordinate display is used exactly as printed or with the
/// corrections that make its defining identity hold on non-abelian groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Reading {
    Printed,
    Repaired,
}

/// The f-argument of the p^{(3)}_{2,1} term of p^{(4)}_{2,2}, as an action on f.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum P22OffArg {
    Plain,
    H11,
    H12,
    H11H21,
    T11H21,
    H12H22,
}

impl P22OffArg {
    pub const ALL: [P22OffArg; 6] =
        [P22OffArg::Plain, P22OffArg::H11, P22OffArg::H12, P22OffArg::H11H21, P22OffArg::T11H21, P22OffArg::H12H22];
}

/// Named coordinate polynomials whose displayed terms can be dropped one at
/// a time (mutation testing).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolyId {
    P22,
    P32,
    P23,
    P11Off,
    P21Base,
    P21Step,
    P12Base,
    P12Step,
    P31Off,
    P13Off,
    P22Off,
}

impl PolyId {
    pub const ALL: [PolyId; 11] = [
        PolyId::P22,
        PolyId::P32,
        PolyId::P23,
        PolyId::P11Off,
        PolyId::P21Base,
        PolyId::P21Step,
        PolyId::P12Base,
        PolyId::P12Step,
        PolyId::P31Off,
        PolyId::P13Off,
        PolyId::P22Off,
    ];

    /// Number of displayed terms (for p^{(r)}_{1,1} this is the count at r = 2).
    pub fn displayed_terms(self) -> usize {
        match self {
            PolyId::P22 => 5,
            PolyId::P32 => 6,
            PolyId::P23 => 6,
            PolyId::P11Off => 2,
            PolyId::P21Base | PolyId::P12Base => 5,
            PolyId::P21Step | PolyId::P12Step => 4,
            PolyId::P31Off | PolyId::P13Off => 4,
            PolyId::P22Off => 13,
        }
    }
}

/// A deliberate corruption of one formula, used to show the checks are not vacuous.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mutation {
    /// Feed (g₁, g₂) instead of (g₂, g₁) to the front-page Δ₂,₁.
    UnswappedDelta21,
    /// Omit one displayed term of a coordinate polynomial.
    DropTerm { poly: PolyId, index: usize },
}

/// Readings of the ambiguous coordinate displays plus an optional mutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiffConfig {
    pub p22_form: P22Form,
    pub p23_tail: P23Tail,
    pub p13_head: P13Head,
    pub p32_face: P32Face,
    pub p22_off_arg: P22OffArg,
    pub p21_step: StepArrow,
    pub p12_step: StepArrow,
    /// The recursive steps of p^{(r)}_{2,1} and p^{(r)}_{1,2}.
    pub recursion: Reading,
    /// p^{(4)}_{2,2}.
    pub p22_off: Reading,
    pub mutation: Option<Mutation>,
}

impl Default for DiffConfig {
    fn default() -> Self {
        DiffConfig {
            p22_form: P22Form::Direct,
            p23_tail: P23Tail::ColumnPolynomial,
            p13_head: P13Head::Upper,
            p32_face: P32Face::MergeFirst,
            p22_off_arg: P22OffArg::Plain,
            p21_step: StepArrow::Second,
            p12_step: StepArrow::First,
            recursion: Reading::Repaired,
            p22_off: Reading::Repaired,
            mutation: None,
        }
    }
}

impl DiffConfig {
    pub fn with_mutation(mut self, m: Mutation) -> Self {
        self.mutation = Some(m);
        self
    }

    pub(crate) fn drops(&self, poly: PolyId, index: usize) -> bool {
        self.mutation == Some(Mutation::DropTerm { poly, index })
    }
}
