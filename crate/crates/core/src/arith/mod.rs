//! Certified arithmetic: dyadic numbers, intervals, complex boxes and
//! elementary functions.

pub mod complex;
pub mod dyadic;
pub mod elementary;
pub mod interval;

pub use complex::ComplexEnclosure;
pub use dyadic::{Dyadic, Round};
pub use interval::Interval;
