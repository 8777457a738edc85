//! Exact computations with the two-strand bordered knot Floer algebra `B(2)`,
//! DA bimodules over it, and their box tensor products.

pub mod algebra;
pub mod corpus;
pub mod da;
pub mod error;
pub mod fit;
pub mod latex;
pub mod render;
pub mod reproduce;
pub mod tensor;
pub mod verify;

pub use algebra::{
    enumerate_basis, multiply, multiply_monomials, AlgebraElement, Idempotent, Letter, Monomial,
};
pub use error::{Error, Result};
