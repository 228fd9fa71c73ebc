//! Certified arithmetic and experiment machinery for counting algebraic
//! points of bounded height and degree on graphs of entire functions given
//! by infinite products with positive real zeros.

pub mod arith;
pub mod auxpoly;
pub mod constants;
pub mod enumerate;
pub mod error;
pub mod factor;
pub mod heights;
pub mod linalg;
pub mod poly;
pub mod products;
pub mod roots;
pub mod zeros;

pub use arith::{ComplexEnclosure, Dyadic, Interval};
pub use error::{Error, Result};
pub use poly::IntPolynomial;
