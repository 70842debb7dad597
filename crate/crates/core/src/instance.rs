//! The JSON instance format: a crossed module over a field together with
//! named 2-representations, plus extension tuples for those representations.
//!
//! Loading happens in two stages. Syntax, shape and scalar errors are input
//! errors ([`InstanceError::is_input_error`]); failed group, crossed-module
//! or representation axioms are reported as [`InstanceError::Violations`]
//! with one witness per failed axiom.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "name": "z2-identity",
//!   "field": "F2",
//!   "G": "cyclic(2)",
//!   "H": "cyclic(2)",
//!   "i": "identity",
//!   "action": "trivial",
//!   "representations": [
//!     { "name": "unit", "dim_w": 0, "dim_v": 1,
//!       "phi": "zero", "rho00": "identity", "rho01": "identity", "rho1": "zero" }
//!   ]
//! }
//! ```
//!
//! Scalars are strings (`"1"`, `"-2"`, `"3/4"`); tables and matrices are
//! row-major. Groups are `cyclic(n)`, `dihedral(n)` (order 2n),
//! `symmetric(n)`, `trivial` or an explicit multiplication table with
//! identity 0. `i` is `identity`, `trivial` or a list; `action` is
//! `trivial`, `conjugation` (g^h is the element mapped by i to h⁻¹i(g)h) or
//! a table `act[g][h]` = g^h. Per-element matrix lists accept `identity`
//! and `zero` as shorthands.

use std::cell::Cell;
use std::fmt;
use std::marker::PhantomData;

use serde::de::{self, DeserializeOwned, Deserializer, SeqAccess, Visitor};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extensions::ExtensionTuple;
use crate::group::{validate_group, CrossedModule, CrossedModuleViolation, FiniteGroup, GroupViolation};
use crate::linalg::{Field, Matrix, Scalar};
use crate::rep::{RepViolation, TwoRep, TwoVectorSpace};

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unsupported format_version {0} (this build reads version {FORMAT_VERSION})")]
    Version(u64),
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error("{}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Violations(Vec<InstanceViolation>),
}

impl InstanceError {
    /// Everything except failed axioms is a problem with the input itself.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, InstanceError::Violations(_))
    }

    fn invalid(path: impl Into<String>, message: impl fmt::Display) -> InstanceError {
        InstanceError::Invalid { path: path.into(), message: message.to_string() }
    }
}

impl From<serde_json::Error> for InstanceError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; keep the bare message.
        let message = match message.rfind(" at line ") {
            Some(k) => message[..k].to_string(),
            None => message,
        };
        InstanceError::Syntax { line: e.line(), column: e.column(), message }
    }
}

/// A failed axiom of one object of an instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "object", rename_all = "snake_case")]
pub enum InstanceViolation {
    Group { which: &'static str, violation: GroupViolation },
    CrossedModule { violation: CrossedModuleViolation },
    Representation { name: String, violation: RepViolation },
}

impl fmt::Display for InstanceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Group { which, violation } => write!(f, "{which}: {violation}"),
            Self::CrossedModule { violation } => write!(f, "crossed module: {violation}"),
            Self::Representation { name, violation } => write!(f, "representation {name:?}: {violation}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct NamedRep {
    pub name: String,
    pub rep: TwoRep,
}

/// A validated instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub field: Field,
    pub xm: CrossedModule,
    pub reps: Vec<NamedRep>,
}

impl Instance {
    /// Parses and validates an instance document.
    pub fn from_json(text: &str) -> Result<Instance, InstanceError> {
        let (field, raw) = parse_with_field::<RawInstance>(text)?;
        raw.build(field)
    }

    /// A representation by name, or by position when `key` is a number.
    pub fn rep(&self, key: &str) -> Option<&NamedRep> {
        self.reps.iter().find(|r| r.name == key).or_else(|| key.parse::<usize>().ok().and_then(|k| self.reps.get(k)))
    }

    /// Parses an extension tuple document for `rep` and checks its shape.
    ///
    /// The document has the keys `phicheck` (per g ∈ G, a vector of V),
    /// `omega0` (per h₀, h₁, a vector of V), `alpha` (per h, g, a vector of
    /// W) and `omega1` (per g₁, g₂, a vector of W); any key may be omitted
    /// to mean zero.
    pub fn parse_tuple(&self, rep: &TwoRep, text: &str) -> Result<ExtensionTuple, InstanceError> {
        let raw: RawTuple = with_field(self.field, || serde_json::from_str(text))?;
        if let Some(v) = raw.format_version {
            if v != FORMAT_VERSION {
                return Err(InstanceError::Version(v));
            }
        }
        let zero = ExtensionTuple::zero(rep);
        let t = ExtensionTuple {
            phicheck: raw.phicheck.map_or(zero.phicheck, unwrap_vecs),
            omega0: raw.omega0.map_or(zero.omega0, |t| t.into_iter().map(unwrap_vecs).collect()),
            alpha: raw.alpha.map_or(zero.alpha, |t| t.into_iter().map(unwrap_vecs).collect()),
            omega1: raw.omega1.map_or(zero.omega1, |t| t.into_iter().map(unwrap_vecs).collect()),
        };
        t.check_shape(rep).map_err(|e| InstanceError::invalid("tuple", e))?;
        Ok(t)
    }
}

fn unwrap_vecs(v: Vec<Vec<Sc>>) -> Vec<Vec<Scalar>> {
    v.into_iter().map(|x| x.into_iter().map(|s| s.0).collect()).collect()
}

/// The instances shipped with the crate, as (name, JSON text).
pub fn bundled() -> &'static [(&'static str, &'static str)] {
    &[
        ("z2-identity", include_str!("../corpus/z2-identity.json")),
        ("z2-identity-f3", include_str!("../corpus/z2-identity-f3.json")),
        ("z3-identity", include_str!("../corpus/z3-identity.json")),
        ("s3-conjugation", include_str!("../corpus/s3-conjugation.json")),
        ("classical-z2", include_str!("../corpus/classical-z2.json")),
        ("classical-z3", include_str!("../corpus/classical-z3.json")),
        ("z2-identity-q", include_str!("../corpus/z2-identity-q.json")),
        ("s3-trivial-action", include_str!("../corpus/s3-trivial-action.json")),
    ]
}

/// The JSON text of a bundled instance.
pub fn bundled_text(name: &str) -> Option<&'static str> {
    bundled().iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

// ---- parsing ----

thread_local! {
    static FIELD: Cell<Option<Field>> = const { Cell::new(None) };
}

fn with_field<T>(field: Field, f: impl FnOnce() -> T) -> T {
    struct Reset(Option<Field>);
    impl Drop for Reset {
        fn drop(&mut self) {
            FIELD.with(|c| c.set(self.0));
        }
    }
    let _reset = Reset(FIELD.with(|c| c.replace(Some(field))));
    f()
}

#[derive(Deserialize)]
struct Header {
    format_version: u64,
    field: String,
}

/// Reads the header, then the whole document with scalars parsed in the
/// declared field so that bad scalars are reported with their position.
fn parse_with_field<T: DeserializeOwned>(text: &str) -> Result<(Field, T), InstanceError> {
    let header: Header = serde_json::from_str(text)?;
    if header.format_version != FORMAT_VERSION {
        return Err(InstanceError::Version(header.format_version));
    }
    let field = Field::from_name(&header.field).map_err(|e| InstanceError::invalid("field", e))?;
    let doc = with_field(field, || serde_json::from_str(text))?;
    Ok((field, doc))
}

/// A scalar written as a string, parsed in the field of the document.
struct Sc(Scalar);

impl<'de> Deserialize<'de> for Sc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let field = FIELD.with(|c| c.get()).ok_or_else(|| de::Error::custom("no field in scope for scalars"))?;
        field.parse(&s).map(Sc).map_err(de::Error::custom)
    }
}

/// Either a keyword or an explicit value.
enum OrNamed<T> {
    Named(String),
    Given(T),
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for OrNamed<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V<T>(PhantomData<T>);
        impl<'de, T: Deserialize<'de>> Visitor<'de> for V<T> {
            type Value = OrNamed<T>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a keyword string or an array")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<Self::Value, E> {
                Ok(OrNamed::Named(s.to_string()))
            }
            fn visit_seq<A: SeqAccess<'de>>(self, seq: A) -> Result<Self::Value, A::Error> {
                T::deserialize(de::value::SeqAccessDeserializer::new(seq)).map(OrNamed::Given)
            }
        }
        d.deserialize_any(V(PhantomData))
    }
}

type Rows = Vec<Vec<Sc>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    #[allow(dead_code)]
    format_version: u64,
    name: String,
    #[allow(dead_code)]
    field: String,
    #[serde(rename = "G")]
    g: OrNamed<Vec<Vec<usize>>>,
    #[serde(rename = "H")]
    h: OrNamed<Vec<Vec<usize>>>,
    i: OrNamed<Vec<usize>>,
    action: OrNamed<Vec<Vec<usize>>>,
    #[serde(default)]
    representations: Vec<RawRep>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRep {
    name: String,
    dim_w: usize,
    dim_v: usize,
    phi: OrNamed<Rows>,
    rho00: OrNamed<Vec<Rows>>,
    rho01: OrNamed<Vec<Rows>>,
    rho1: OrNamed<Vec<Rows>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTuple {
    format_version: Option<u64>,
    phicheck: Option<Vec<Vec<Sc>>>,
    omega0: Option<Vec<Vec<Vec<Sc>>>>,
    alpha: Option<Vec<Vec<Vec<Sc>>>>,
    omega1: Option<Vec<Vec<Vec<Sc>>>>,
}

fn parse_call(s: &str) -> Option<(&str, usize)> {
    let (name, rest) = s.trim().split_once('(')?;
    let n = rest.strip_suffix(')')?.trim().parse().ok()?;
    Some((name.trim(), n))
}

/// A group from its spec; `Ok(Err(_))` is a table failing the axioms.
fn group(which: &str, spec: OrNamed<Vec<Vec<usize>>>) -> Result<Result<FiniteGroup, GroupViolation>, InstanceError> {
    match spec {
        OrNamed::Named(s) => {
            let built = match (s.trim(), parse_call(&s)) {
                ("trivial", _) => Ok(FiniteGroup::trivial()),
                (_, Some(("cyclic", n))) => FiniteGroup::cyclic(n),
                (_, Some(("dihedral", n))) => FiniteGroup::dihedral(n),
                (_, Some(("symmetric", n))) => FiniteGroup::symmetric(n),
                _ => {
                    return Err(InstanceError::invalid(
                        which,
                        format!("unknown group {s:?}; use cyclic(n), dihedral(n), symmetric(n), trivial or a table"),
                    ))
                }
            };
            built.map(Ok).map_err(|e| InstanceError::invalid(which, e))
        }
        OrNamed::Given(table) => match validate_group(&table) {
            Ok(()) => Ok(Ok(FiniteGroup::from_table(table).expect("validated table"))),
            Err(GroupViolation::Shape { detail }) => Err(InstanceError::invalid(which, detail)),
            Err(v) => Ok(Err(v)),
        },
    }
}

fn matrix(field: Field, path: &str, rows: Rows, r: usize, c: usize) -> Result<Matrix, InstanceError> {
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(InstanceError::invalid(path, format!("expected a {r}×{c} matrix")));
    }
    Matrix::from_rows(field, rows.into_iter().map(|row| row.into_iter().map(|s| s.0).collect()).collect(), c)
        .map_err(|e| InstanceError::invalid(path, e))
}

fn matrices(
    field: Field,
    path: &str,
    spec: OrNamed<Vec<Rows>>,
    n: usize,
    r: usize,
    c: usize,
) -> Result<Vec<Matrix>, InstanceError> {
    match spec {
        OrNamed::Named(s) => match s.as_str() {
            "identity" if r == c => Ok(vec![Matrix::identity(field, r); n]),
            "zero" => Ok(vec![Matrix::zeros(field, r, c); n]),
            _ => Err(InstanceError::invalid(path, format!("unknown shorthand {s:?}"))),
        },
        OrNamed::Given(list) => {
            if list.len() != n {
                return Err(InstanceError::invalid(path, format!("expected {n} matrices, got {}", list.len())));
            }
            list.into_iter().enumerate().map(|(k, rows)| matrix(field, &format!("{path}[{k}]"), rows, r, c)).collect()
        }
    }
}

impl RawInstance {
    fn build(self, field: Field) -> Result<Instance, InstanceError> {
        let mut violations = Vec::new();
        let g = group("G", self.g)?;
        let h = group("H", self.h)?;
        let (g, h) = match (g, h) {
            (Ok(g), Ok(h)) => (g, h),
            (g, h) => {
                for (which, r) in [("G", g.err()), ("H", h.err())] {
                    if let Some(violation) = r {
                        violations.push(InstanceViolation::Group { which, violation });
                    }
                }
                return Err(InstanceError::Violations(violations));
            }
        };
        let (ng, nh) = (g.order(), h.order());
        let i = match self.i {
            OrNamed::Named(s) if s == "identity" => {
                if ng != nh {
                    return Err(InstanceError::invalid("i", "identity needs |G| = |H|"));
                }
                (0..ng).collect()
            }
            OrNamed::Named(s) if s == "trivial" => vec![0; ng],
            OrNamed::Named(s) => return Err(InstanceError::invalid("i", format!("unknown map {s:?}"))),
            OrNamed::Given(v) => v,
        };
        if i.len() != ng || i.iter().any(|&x| x >= nh) {
            return Err(InstanceError::invalid("i", format!("expected {ng} elements of H")));
        }
        let act: Vec<Vec<usize>> = match self.action {
            OrNamed::Named(s) if s == "trivial" => (0..ng).map(|x| vec![x; nh]).collect(),
            OrNamed::Named(s) if s == "conjugation" => {
                let mut act = vec![vec![0; nh]; ng];
                for (x, row) in act.iter_mut().enumerate() {
                    for (y, slot) in row.iter_mut().enumerate() {
                        let target = h.conj(i[x], y);
                        let pre: Vec<usize> = (0..ng).filter(|&z| i[z] == target).collect();
                        if pre.len() != 1 {
                            return Err(InstanceError::invalid(
                                "action",
                                "conjugation needs i injective with a normal image",
                            ));
                        }
                        *slot = pre[0];
                    }
                }
                act
            }
            OrNamed::Named(s) => return Err(InstanceError::invalid("action", format!("unknown action {s:?}"))),
            OrNamed::Given(t) => t,
        };
        if act.len() != ng || act.iter().any(|r| r.len() != nh || r.iter().any(|&x| x >= ng)) {
            return Err(InstanceError::invalid("action", format!("expected a {ng}×{nh} table of elements of G")));
        }
        let xm = CrossedModule::new_unchecked(g, h, i, act).map_err(|e| InstanceError::invalid("crossed module", e))?;
        violations.extend(xm.violations().into_iter().map(|violation| InstanceViolation::CrossedModule { violation }));

        let mut reps = Vec::new();
        for (k, r) in self.representations.into_iter().enumerate() {
            let path = format!("representations[{k}]");
            if reps.iter().any(|x: &NamedRep| x.name == r.name) {
                return Err(InstanceError::invalid(&path, format!("duplicate name {:?}", r.name)));
            }
            let (dw, dv) = (r.dim_w, r.dim_v);
            let phi = match r.phi {
                OrNamed::Named(s) if s == "zero" => Matrix::zeros(field, dv, dw),
                OrNamed::Named(s) if s == "identity" && dv == dw => Matrix::identity(field, dv),
                OrNamed::Named(s) => return Err(InstanceError::invalid(format!("{path}.phi"), format!("unknown shorthand {s:?}"))),
                OrNamed::Given(rows) => matrix(field, &format!("{path}.phi"), rows, dv, dw)?,
            };
            let vs = TwoVectorSpace::new(phi, dw, dv).map_err(|e| InstanceError::invalid(&path, e))?;
            let rho00 = matrices(field, &format!("{path}.rho00"), r.rho00, nh, dv, dv)?;
            let rho01 = matrices(field, &format!("{path}.rho01"), r.rho01, nh, dw, dw)?;
            let rho1 = matrices(field, &format!("{path}.rho1"), r.rho1, ng, dw, dv)?;
            let rep = TwoRep::new_unchecked(xm.clone(), vs, rho00, rho01, rho1).map_err(|e| InstanceError::invalid(&path, e))?;
            let name = r.name;
            violations.extend(
                rep.violations().into_iter().map(|violation| InstanceViolation::Representation { name: name.clone(), violation }),
            );
            reps.push(NamedRep { name, rep });
        }
        if !violations.is_empty() {
            return Err(InstanceError::Violations(violations));
        }
        Ok(Instance { name: self.name, field, xm, reps })
    }
}

#[cfg(test)]
mod tests;
