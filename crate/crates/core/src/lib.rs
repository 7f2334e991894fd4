//! Exact computations with torsion classes, wide subcategories and bricks of
//! Nakayama algebras.
//!
//! [`nakayama`] fixes the algebra and its uniserial modules, [`linrep`] is an
//! independent matrix model over a prime field, [`subcat`] handles closures
//! and class enumeration, [`brick`] the brick-theoretic sets, [`lattice`] the
//! finite lattice theory, and [`verify`] runs the named checks that tie them
//! together.

pub mod brick;
pub mod config;
pub mod lattice;
pub mod linrep;
pub mod nakayama;
pub mod subcat;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] nakayama::AlgebraError),
    #[error(transparent)]
    Oracle(#[from] linrep::OracleError),
    #[error(transparent)]
    Lattice(#[from] lattice::LatticeError),
    #[error(transparent)]
    Subcat(#[from] subcat::SubcatError),
    #[error(transparent)]
    Brick(#[from] brick::BrickError),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
}

impl Error {
    /// Whether the error comes from an enumeration cap rather than bad input.
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(
            self,
            Error::Subcat(subcat::SubcatError::TooLarge { .. } | subcat::SubcatError::TooManyIndecs(_))
                | Error::Brick(brick::BrickError::TooLarge { .. })
                | Error::Lattice(lattice::LatticeError::TooLarge(_))
        )
    }
}
