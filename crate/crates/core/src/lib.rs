//! Exact computational homological algebra for finite-dimensional DG algebras:
//! cohomology rings, DG modules with the full shift/cone/dual/Hom/tensor
//! calculus, minimal semi-free resolutions and the f-invariant,
//! finite-dimensional endomorphism algebra analysis, and the Auslander-Reiten
//! machinery (Poincaré-duality certificates, translates, AR triangles,
//! mapping-cone families, component-separation certificates).

pub mod builders;
pub mod complex;
pub mod dga;
pub mod error;
pub mod matrix;
pub mod scalar;

pub use complex::{Cohomology, CohomologyTable, KComplex};
pub use dga::{DGAlgebra, DGAlgebraData, El, ValidationReport};
pub use error::{Error, Result};
pub use matrix::{complement, intersect, rank_kernel_image, solve, Mat, SubspaceBasis};
pub use scalar::{FieldSpec, Scalar};
