//! Finite classical groups, cyclic covers of the line, and Frobenius
//! statistics for hyperelliptic and trielliptic curve families.

pub mod covers;
pub mod curves;
pub mod groups;
pub mod histogram;
pub mod parallel;
pub mod stats;
pub mod residue;
