//! Exact finite-field engine for twisted GRS and Roth-Lempel typed codes.
//!
//! Builds the codes over GF(q) and GF(q²), measures their Euclidean and
//! Hermitian hull dimensions two independent ways, classifies MDS/AMDS
//! status, and turns Hermitian hulls into entanglement-assisted quantum
//! code parameters.

use serde::{Deserialize, Serialize};

pub mod code;
pub mod constructions;
pub mod eaqecc;
pub mod error;
pub mod field;
pub mod grs;
pub mod matrix;
pub mod reproduce;
mod poly;

pub use code::{DistanceClass, DistanceReport, LinearCode};
pub use error::{Error, Result};
pub use field::{make_field, make_quadratic_extension, ArithOp, Felt, FeltRepr, Field};
pub use grs::{EvalVector, ParityCase, TwistParams};
pub use matrix::{Mat, MatRecord};

/// Inner product used for duals and hulls.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    /// `Σ x_i y_i`
    Euclidean,
    /// `Σ x_i y_i^q` over GF(q²)
    Hermitian,
}

impl std::fmt::Display for Form {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Form::Euclidean => "euclidean",
            Form::Hermitian => "hermitian",
        })
    }
}
