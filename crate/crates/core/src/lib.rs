pub mod error;
pub mod field;
pub mod matfq;
pub mod counting;
pub mod ensemble;
pub mod decoder;
pub mod codelab;
pub mod experiments;
pub mod cli;

pub use error::{Error, Result};
pub use field::{Elem, FieldSpec};
pub use matfq::{AffineSolution, MatFq, VecFq};
