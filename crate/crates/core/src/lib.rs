pub mod cli;
pub mod error;
pub mod fourth_order;
pub mod poly;
pub mod quadrature;
pub mod scalar;
pub mod schrodinger;
pub mod seq_algebra;
pub mod special_fn;
pub mod suites;
pub mod transform;
