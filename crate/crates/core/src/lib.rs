pub mod analytic;
pub mod bounds;
pub mod error;
pub mod geometric;
pub mod groebner;
pub mod io;
pub mod linalg;
pub mod report;
pub mod tensor;

pub use error::{Error, Result};
