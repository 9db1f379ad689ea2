//! Exact computations in the Brauer category at `δ = −2n`: diagrammatic Pfaffians and the
//! `(n+1)`-noncrossing normal form, the evaluation functor into `Sp(2n)`-invariant tensors,
//! symmetric-function characters and cyclic sieving certificates for noncrossing matchings.

pub mod brauer;
pub mod csp;
pub mod diagrams;
pub mod linalg;
pub mod pfaffian;
pub mod registry;
pub mod scalar;
pub mod symfunc;
pub mod tableaux;
pub mod tensor;

pub use brauer::{BrauerError, Morphism, RationalMorphism};
pub use csp::{CspCertificate, CspError, CspInstance};
pub use diagrams::{BlockedMatching, Diagram, DiagramError, PerfectMatching};
pub use pfaffian::{PfGenerator, PfaffianError};
pub use registry::{Registry, Strategy, UnknownStrategy};
pub use scalar::{DeltaPoly, QPolynomial, Rational, Scalar};
pub use symfunc::{SymFuncError, SymFuncP};
pub use tableaux::{OscillatingTableau, Partition, StandardTableau};
pub use tensor::{Tensor, TensorError};
