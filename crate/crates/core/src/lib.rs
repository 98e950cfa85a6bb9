//! Exact q-series computer algebra.
//!
//! Everything in this crate works on [`QSeries`]: truncated formal power
//! series in `q^(1/D)` with arbitrary-precision rational coefficients.
//! On top of that sit q-Pochhammer products and Ramanujan theta functions
//! ([`theta`]), Lambert and Eisenstein series ([`lambert`]), the degree-5
//! modular equation ([`modeq`]), and a small expression language for
//! writing identities down and checking them ([`expr`], [`identity`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod error;
pub mod expr;
pub mod identity;
pub mod lambert;
pub mod modeq;
pub mod monomial;
pub mod rational;
pub mod series;
pub mod theta;

pub use error::SeriesError;
pub use expr::{parse, Expr, Func};
pub use identity::{check_identity, Bindings, Outcome};
pub use monomial::SignedMonomial;
pub use rational::{Exponent, Rational};
pub use series::{Comparison, QSeries};
