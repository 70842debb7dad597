//! Exact cohomology of finite crossed modules with coefficients in
//! 2-representations.
//!
//! The crate is organised bottom-up: [`linalg`] supplies exact scalars and
//! matrices, [`group`] the crossed module and its nerve, [`rep`] the
//! 2-representations, [`grid`] the three grid differentials, [`diffmaps`]
//! the difference maps Δ_{a,b}, [`total`] the total differential ∇ and its
//! cohomology, and [`extensions`] the dictionary between degree-2 cocycles
//! and extensions. [`instance`] loads the JSON instance format.

pub mod linalg;
pub mod group;
pub mod rep;
pub mod grid;
pub mod diffmaps;
pub mod total;
pub mod extensions;
pub mod instance;
pub mod suites;

#[cfg(test)]
mod testkit;
