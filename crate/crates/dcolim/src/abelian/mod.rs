//! Exact linear algebra over the integers: Smith normal form, finitely
//! generated abelian groups as presentations, homology, exactness.
//!
//! All values are immutable after construction and all operations are pure;
//! nothing here uses floating point.

pub mod group;
pub mod hom;
pub mod homology;
pub mod matrix;
pub mod snf;

pub use group::{lattice_quotient, FgAbGroup, NormalForm};
pub use hom::AbHom;
pub use homology::{
    exactness_defect, free_homology, free_homology_node, induced_on_homology,
    presented_homology_node, ExactnessReport, HomologyNode, PresentedHomologyNode,
};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SnfDecomposition};

/// Homology ker(d_out)/im(d_in) of maps between free groups, in normal form.
pub fn homology_at(d_in: &IntMatrix, d_out: &IntMatrix) -> Result<FgAbGroup, AbelianError> {
    free_homology(d_in, d_out)
}

#[derive(Debug, thiserror::Error)]
pub enum AbelianError {
    #[error("shape mismatch: {context}")]
    ShapeMismatch { context: String },
    #[error("d_out ∘ d_in is nonzero (differential bug upstream)")]
    CompositionNonzero,
    #[error("matrix does not map relation column {relation} into the target relation lattice")]
    IllDefinedHom { relation: usize },
    #[error("vector is not a cycle of the outgoing differential")]
    NotACycle,
    #[error("{context}: dimension {dim} exceeds DCOLIM_MAX_MATRIX_DIM={limit}")]
    ResourceLimit {
        context: String,
        dim: usize,
        limit: usize,
    },
}
