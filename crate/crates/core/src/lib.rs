//! Exact evaluation of Dedekind and Hardy–Berndt type sums built from
//! periodic Bernoulli and Euler functions, and a catalog of the linear
//! relations they satisfy, each checked as an exact zero residual.

pub mod error;
pub mod polyfun;
pub mod rational;

pub use error::{Error, Result};
pub use polyfun::{build_tables, floor_split, fourier_partial, sawtooth, Family, FloorSplit, PolyKind, PolyTable, Tables};
pub use rational::Rational;
pub mod params;
pub mod sums;
pub mod identities;
pub mod series;
pub mod campaign;
pub mod cli;
pub use params::Params;
