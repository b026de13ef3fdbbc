pub mod area;
pub mod cli;
pub mod enclosure;
pub mod error;
pub mod legendre;
pub mod monotone;
pub mod oracle;
pub mod quadrature;
pub mod spec;
pub mod summation;
pub mod young_gap;
