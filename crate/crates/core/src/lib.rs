//! Exact multiplicities of circle-equivariant indices from localization data.
//!
//! The pipeline runs `geometry` → `qtheta` → `xispace`: a [`LocalizationDatum`]
//! is expanded per vertex into a truncated series in `q` with coefficients in
//! `θ`, each coefficient is transformed into a spline distribution, and
//! multiplicities are read off at lattice points with one-sided limits.
//! Everything is exact over cyclotomic fields.
//!
//! ```
//! use emlindex_core::{build_p1, Sign};
//!
//! let table = build_p1(3).multiplicities(8, -2, 5, Sign::Plus).unwrap();
//! let values: Vec<_> = table.iter().map(|(_, v)| v.to_string()).collect();
//! assert_eq!(values, ["0", "0", "1", "1", "1", "1", "0", "0"]);
//! ```

pub mod document;
pub mod exact;
pub mod geometry;
pub mod oracle;
pub mod qtheta;
pub mod xispace;

use thiserror::Error;

pub use document::{parse_datum, serialize_datum, DocumentError};
pub use exact::{b_series_coefficients, bernoulli, parse_rational, rat, Cyclotomic, ExactError, Polynomial, Rational};
pub use geometry::{
    build_p1, build_p1_polarized, build_pushed_symbol, dominant_extract, enumerate_vertices, twist_numerators,
    weyl_antisymmetrize, Contribution, GeometryError, IrrepMultiplicity, LocalizationDatum, Twist, VertexBlock,
};
pub use oracle::{OracleError, OracleSpec};
pub use qtheta::{FactorKind, FactorSpec, QSeries, QThetaError, Sign, ThetaSum, ThetaTerm};
pub use xispace::{em_pairing, EmPairing, MultiplicityTable, SplineDistribution, SplineFamily, XiSpaceError};

/// Any engine error, tagged with the module it came from.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exact: {0}")]
    Exact(#[from] ExactError),
    #[error("qtheta: {0}")]
    QTheta(#[from] QThetaError),
    #[error("xispace: {0}")]
    XiSpace(#[from] XiSpaceError),
    #[error("geometry: {0}")]
    Geometry(#[from] GeometryError),
    #[error("oracle: {0}")]
    Oracle(#[from] OracleError),
    #[error("document: {0}")]
    Document(#[from] DocumentError),
}

impl Error {
    pub fn module(&self) -> &'static str {
        match self {
            Error::Exact(_) => "exact",
            Error::QTheta(_) => "qtheta",
            Error::XiSpace(_) => "xispace",
            Error::Geometry(_) => "geometry",
            Error::Oracle(_) => "oracle",
            Error::Document(_) => "document",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
