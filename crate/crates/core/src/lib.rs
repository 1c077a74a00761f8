#![no_std]

extern crate alloc;

pub mod algebra;
pub mod annihilation;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod module;
pub mod parse;
pub mod poly;
pub mod presets;
pub mod rational;
pub mod solve;
pub mod var;

pub use algebra::{AlgebraBuilder, CElement, ConformalAlgebra, Element, Generator, LambdaElement};
pub use error::{Error, Result};
pub use poly::{Monomial, Poly};
pub use rational::Rational;
pub use solve::{solve_system, SolutionFamily, SolutionSet};
pub use var::{VarId, VarKind, D, LAMBDA, MU, NU};
