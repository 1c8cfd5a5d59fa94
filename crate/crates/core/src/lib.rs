pub mod config;
pub mod coxeter;
pub mod error;
pub mod hat_ideal;
pub mod hecke;
pub mod laurent;
pub mod lincomb;
pub mod module;
pub mod parabolic;
pub mod rpoly;
pub mod verify;
pub mod wgraph;

pub use coxeter::{CoxeterMatrix, CoxeterSystem, Elem, Gen, GenSet};
pub use error::{Error, Result};
pub use laurent::{Exponent, Scalar, WeightFunction};
pub use lincomb::LinComb;
pub use hecke::HeckeAlgebra;
pub use module::HeckeModule;
pub use parabolic::{ParabolicModule, Variant};
pub use rpoly::{Normalization, RTable};
pub use wgraph::{IdealModule, WGraphIdealDatum};
