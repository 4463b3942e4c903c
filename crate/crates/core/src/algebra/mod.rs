pub mod matrix;
pub mod mpoly;
pub mod numeric;
pub mod parse;
pub mod rational;
pub mod roots;
pub mod scalar;

pub use matrix::PolyMatrix;
pub use mpoly::{MPoly, Monomial, Var};
pub use numeric::{ComplexValue, Numeric, RealValue};
pub use rational::RationalExpression;
pub use scalar::ExactScalar;
