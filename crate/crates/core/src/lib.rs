//! Exact Deligne-Lusztig character theory for finite groups of Lie type.

pub mod cyclotomic;
pub mod dltables;
pub mod exec;
pub mod intmat;
pub mod numtheory;
pub mod qpoly;
pub mod rootdata;
pub mod unipotent;
pub mod weyl;

pub use cyclotomic::{CycNum, Rational};
pub use exec::Exec;
