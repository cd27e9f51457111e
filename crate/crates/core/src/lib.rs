//! Exact arithmetic for twists of commutative algebraic groups over finite
//! fields: group-ring ideals as integer lattices, cyclotomic polynomial
//! arithmetic, twisted Galois modules, and brute-force oracles over concrete
//! groups (`Gm` and elliptic curves).

pub mod algebraic_groups;
pub mod cyclopoly;
pub mod exactlinalg;
pub mod galois_modules;
pub mod grouprings;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
