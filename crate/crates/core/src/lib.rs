//! Exact computations with CM-types, reflex fields and half norms on
//! signed-permutation models of Galois groups.

pub mod catalog;
pub mod characters;
pub mod cli;
pub mod cm_structure;
pub mod config;
pub mod error;
pub mod group_algebra;
pub mod linalg;
pub mod rational;
pub mod report;
pub mod runner;
pub mod signed_perm;
pub mod split_model;

pub use error::{Error, Result};
