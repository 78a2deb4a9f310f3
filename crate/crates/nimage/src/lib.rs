//! Series solutions of linear ordinary differential equations with variable
//! coefficients, built from n-image coefficients and iterated antiderivatives
//! over an exact rational expression kernel.
//!
//! The crate is organised bottom-up:
//!
//! * [`expr`]: the closed symbolic family `c·u^r·ln^q(u)·e^{ku}·trig(mu)`, `u = x − c₀`.
//! * [`leibniz`]: weighted Leibniz sums and their closed forms.
//! * [`nimage2`]: the second-order engine for `y″ = a·y`.
//! * [`morder`]: the m-th order engine for `y^{(m)} = Σ a_p y^{(m−p)}`.
//! * [`nonhom`]: particular solutions of non-homogeneous equations.
//! * [`verify`]: residual reports and independent coefficient oracles.
//! * [`cli`]: the command-line front end used by the `nimage` binary.

pub mod cli;
pub mod error;
pub mod expr;
pub mod leibniz;
pub mod morder;
pub mod nimage2;
pub mod nonhom;
pub mod numbers;
pub mod verify;

pub use error::{Error, Result};
pub use expr::{Expr, Rational, Sig, Term, Trig};
