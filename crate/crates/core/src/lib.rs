//! Exact-arithmetic toolkit for real-analytic Levi-flat hypersurface germs
//! with polynomial defining functions.
//!
//! Everything is computed over the Gaussian rationals Q(i); there is no
//! floating point anywhere, so every verdict is a decidable exact statement
//! and every certificate can be re-checked bit-for-bit.
//!
//! The crate is organized bottom-up:
//! - [`rational`]: the coefficient field Q(i)
//! - [`multidegree`]: paired exponent vectors with a fixed graded-lex order
//! - [`poly`]: sparse truncated polynomials in z and z̄ (equivalently z, w)
//! - [`series`]: holomorphic jets and jet maps with exact composition
//! - [`linalg`]: exact elimination, the rational linear solver
//! - [`forms`]: exterior algebra with polynomial coefficients
//! - [`levi`]: reality checks, complexification, Levi form, integrability,
//!   singular loci
//! - [`normal_form`]: Hessian corank, the Morse-Bott normalization algorithm,
//!   the first-integral solver and the end-to-end pipeline
//! - [`blowup`]: blow-up charts, strict transforms, the foliation 1-form in
//!   chart coordinates, exceptional singular components and holonomy data

pub mod blowup;
pub mod error;
pub mod forms;
pub mod levi;
pub mod linalg;
pub mod multidegree;
pub mod normal_form;
pub mod poly;
pub mod rational;
pub mod series;

pub use error::Error;
pub use multidegree::Multidegree;
pub use poly::ConjPolynomial;
pub use rational::GaussianRational;
pub use series::{HoloSeries, JetMap};

/// Default truncation degree for jet-level computations.
pub const DEFAULT_TRUNCATION: u32 = 8;
