//! Exact decision procedures for ordered vector spaces with polyhedral cones.

pub mod convergence;
pub mod corpus;
pub mod cover;
pub mod decision;
pub mod error;
pub mod gallery;
pub mod linalg;
pub mod lp;
pub mod operator;
pub mod polyhedron;
pub mod rational;
pub mod semiorder;
pub mod space;
pub mod structure;
pub mod suites;
pub mod transfer;

pub use error::{Error, Result};
pub use rational::{Rat, RatVector};
