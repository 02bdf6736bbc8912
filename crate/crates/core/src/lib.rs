//! Depth, length, reflection length and reduced reflection length in the
//! classical Coxeter groups S_n, B_n and D_n.

pub mod blocks;
pub mod classify;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod factorize;
pub mod group;
pub mod oracle;
pub mod stats;
pub mod suite;

pub use error::{Error, Result};
pub use group::{Family, GroupContext, Reflection, SignedPermutation, SimpleWord};
