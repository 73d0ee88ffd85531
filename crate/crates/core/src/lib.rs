//! High-precision evaluation of Kurokawa multiple sine/cosine special values
//! and Dirichlet-family series, numeric verification of the log-trigonometric
//! integral identities that relate them, and constructive rational-coefficient
//! approximation certificates over those special-value bases.
//!
//! Everything runs at double-double working precision (roughly 31-32
//! significant digits) with conservatively tracked error bounds, and all
//! computations are deterministic: identical inputs produce bit-identical
//! outputs.
//!
//! ```
//! use multitrig::dd::Dd;
//!
//! // Catalan's constant to 18 digits
//! let g = multitrig::dirichlet::catalan();
//! assert_eq!(
//!     multitrig::decimal::dd_to_decimal(g.val.value(), 18),
//!     "0.915965594177219015"
//! );
//!
//! // log C_3(1/4) agrees with its closed form below 1e-12
//! let residual = multitrig::multifun::verify_quarter_multicos(3).unwrap();
//! assert!(residual.to_f64() < 1e-12);
//!
//! // a tangent moment with a tracked error bound
//! let m = multitrig::identities::tan_moment(1, Dd::from_f64(0.25)).unwrap();
//! assert!(m.to_f64() > 0.0 && m.err() < 1e-14);
//! ```

pub mod approx;
pub mod certificate;
pub mod dd;
pub mod decimal;
pub mod dirichlet;
pub mod ext;
pub mod identities;
pub mod multifun;
pub mod poly;
pub mod quad;
pub mod resolutions;

pub use dd::Dd;
pub use ext::{rational_to_ext, ExtReal};
pub use quad::{integrate, QuadError, QuadratureResult, SingularityHints};
