//! ψ-rings acted on by a finite commutative monoid, ψ-modules over finite
//! rings, derivations, sections and free ψ-rings.

mod catalog;
mod derive;
mod finite;
mod free;
mod io;
mod monoid;

pub use catalog::{catalog, CatalogEntry};
pub use derive::{
    additive_generators, derivation_space, enumerate_span, psi_derivation_system, psi_derivations, section_correspondence,
    sections_of_projection, semidirect_product, twist_module, SectionReport, ENUMERATION_BOUND, SECTION_SEARCH_BOUND,
};
pub use finite::{index_to_vector, psi_axioms, AxiomCheck, vector_to_index, FiniteRing, PsiModule, PsiRing, MAX_CARRIER};
pub use free::{free_psi_ring, FreePsiRing, Monomial, Polynomial, DEFAULT_DEGREE_CAP};
pub use io::{CarrierSpec, PsiFile, PsiModuleSpec, PsiObject, SymbolicSpec};
pub use monoid::{ActionMonoid, MonoidSpec};

