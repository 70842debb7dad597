//! Finite groups, crossed modules, the associated 2-group and its nerve.

mod crossed;
mod finite;
mod nerve;

pub use crossed::{Arrow, CrossedModule, CrossedModuleViolation};
pub use finite::{validate_group, FiniteGroup, GroupViolation};
pub use nerve::{group_face, Point, Row, Tri};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("not a group: {0}")]
    NotAGroup(GroupViolation),
    #[error("not a crossed module: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    NotACrossedModule(Vec<CrossedModuleViolation>),
    #[error("{0}")]
    Constructor(String),
    #[error("arrows {first:?} and {second:?} are not composable")]
    NotComposable { first: Arrow, second: Arrow },
    #[error("face index {k} out of range for level {level}")]
    FaceIndex { k: usize, level: usize },
    #[error("index {index} out of range for a domain of size {size}")]
    CodecIndex { index: usize, size: usize },
    #[error("domain {0} is too large to enumerate")]
    DomainTooLarge(Tri),
}
