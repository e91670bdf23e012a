//! Graded vector spaces, DG algebras and modules, and the standard
//! constructions on them.
//!
//! Sign conventions (Koszul throughout): Σm has differential -d; the cone
//! of f: M -> N is N ⊕ ΣM with differential [[d_N, f], [0, -d_M]]; Hom has
//! differential d∘h - (-1)^{|h|} h∘d; tensor products have differential
//! d⊗1 + (-1)^{|a|} 1⊗d; the opposite product is r·s = (-1)^{|r||s|} sr.

mod algebra;
mod bimodule;
mod cohomology;
mod graded;
mod hom;
mod module;
mod truncate;

pub use algebra::{AlgebraBuilder, DGAlgebra, ValidationFailure, ValidationReport};
pub use bimodule::{right_action_matrices, Bimodule};
pub use cohomology::{is_acyclic, Cohomology, CohomologyDegree};
pub use graded::{degree_set, indices_in, sign_odd, Bound, GradedDims, InfSupAmp};
pub use hom::{hom_complex, tensor_bimodule, tensor_complex, Complex, HomComplex};
pub use module::{Cone, DGModule, DGMorphism, QuotientMap, Side};
pub use truncate::{truncate_above, truncate_algebra, truncate_below};
