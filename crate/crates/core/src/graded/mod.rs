//! Exact graded linear algebra and free graded-commutative polynomials.

pub mod complex;
pub mod linalg;
pub mod poly;

pub use complex::{CohomologyDegree, ComplexWindow, DegreeWindow};
pub use linalg::{ratio, scalar, Matrix, Scalar, Span, SparseVec};
pub use poly::{Element, Generator, GeneratorSet, Monomial};
