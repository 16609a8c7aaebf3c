//! Exact symbolic machinery for Dunkl operators and the orthogonal
//! polynomial bases of a four-variable reflection-group model.

pub mod combin;
pub mod error;
pub mod basis4;
pub mod exact;
pub mod hermite_cs;
pub mod jack;
pub mod measure;
pub mod ops;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{ExactRational, ParamContext};
pub use poly::{Frame, SparsePoly};
