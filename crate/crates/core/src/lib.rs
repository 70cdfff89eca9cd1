//! p-adic machinery for bounding orbit lengths of points and subvarieties
//! under etale polynomial self-maps.
//!
//! The crate is organized around the proof pipeline:
//!
//! - [`ring`]: finite-precision arithmetic in `Z_p[pi]/(pi^e - p)` with
//!   pi-valuation tracking and residue reduction;
//! - [`series`]: truncated power-series tuples, composition and iteration,
//!   truncation fingerprints, and the closed-form iterate-order check;
//! - [`bounds`]: exact orbit-length and torsion-order bound formulas;
//! - [`dynamics`]: integer polynomial self-maps, etale certification, orbits
//!   over residue rings, residue-disk linearization, certified periods,
//!   subvariety orbits, and elliptic-curve torsion helpers;
//! - [`arc`]: Mahler-basis interpolation of orbits, effective zero counting,
//!   and vanishing propagation along interpolated orbits;
//! - [`mapfile`]: the JSON interchange formats consumed by the CLI;
//! - [`sample`]: seeded random instances for verification campaigns.

pub mod arc;
pub mod bounds;
pub mod dynamics;
pub mod error;
pub mod mapfile;
mod modmath;
pub mod poly;
pub mod ring;
pub mod sample;
pub mod series;

pub use error::{Error, Result};
pub use poly::IntPoly;
pub use ring::{PadicScalar, RingParams};
pub use series::{ScaledSeriesTuple, SeriesTuple};

/// Serializes a `BigUint` as a JSON number of arbitrary size.
pub(crate) fn serialize_biguint<S>(
    value: &num_bigint::BigUint,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error>
where
    S: serde::Serializer,
{
    use serde::Serialize;
    let number: serde_json::Number = value
        .to_string()
        .parse()
        .map_err(serde::ser::Error::custom)?;
    number.serialize(serializer)
}
