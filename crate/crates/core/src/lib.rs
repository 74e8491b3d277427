#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dd;
pub mod error;
pub mod inverse;
pub mod exactmath;
pub mod jet;
pub mod quadrature;
pub mod rangecheck;
pub mod scalar;
pub mod specfun;
pub mod spectral;
pub mod transform;
pub mod ucp;

pub use dd::Dd;
pub use error::{Result, SmtError};
pub use jet::Jet;
pub use scalar::Scalar;
