pub mod catalog;
pub mod cli;
pub mod invariant;
pub mod io;
pub mod rmatrix;
pub mod scalar;
pub mod tensor;
