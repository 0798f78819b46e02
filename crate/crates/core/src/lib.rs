//! Exact incidence-algebra computations on locally finite posets with a
//! bottom element: Möbius functions, zeta/Möbius and general transforms, and
//! experiments on when a function and its transform can both have finite
//! support.
//!
//! Poset families live behind the [`poset::Poset`] trait and are selected by
//! name from a [`poset::PosetRegistry`]; witness constructions are likewise
//! [`lab::WitnessStrategy`] objects in a [`lab::WitnessRegistry`].

pub mod arith;
pub mod document;
pub mod error;
pub mod incidence;
pub mod lab;
pub mod linalg;
pub mod poset;
pub mod scalar;
pub mod transforms;

pub use error::{PosetError, Result};
pub use incidence::{closed_form_mobius, convolve, invert, mobius_value, IntervalFunction};
pub use poset::{Element, Family, Poset, PosetHandle, PosetRegistry, Window, WindowSpec};
pub use scalar::GaussianRational;
pub use transforms::{
    alpha_transform, materialize, mobius_inversion, zeta_transform, EvaluableFunction,
    FiniteSupportFunction,
};
