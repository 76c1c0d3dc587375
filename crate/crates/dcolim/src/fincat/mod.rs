//! Finite categories and functors as explicit combinatorial data:
//! validation, opposites, under categories, bounded pushouts, isomorphism
//! search and π₀.

pub mod category;
pub mod functor;
pub mod iso;
pub mod pushout;
pub mod under;

pub use category::{FinCategory, MorData, RawCategory};
pub use functor::Functor;
pub use iso::cat_isomorphic;
pub use pushout::{pushout, BoundExceeded, PushoutCertificate, PushoutSuccess};
pub use under::{under_category, UnderCategory};

#[derive(Debug, Clone, thiserror::Error)]
pub enum CategoryError {
    #[error("duplicate {kind} id: {id}")]
    Duplicate { kind: String, id: String },
    #[error("unknown {kind}: {id}")]
    UnknownId { kind: String, id: String },
    #[error("identity of object {object} must be an endomorphism of it: {morphism}")]
    BadIdentity { object: String, morphism: String },
    #[error("object {object} has no identity assigned")]
    MissingIdentity { object: String },
    #[error("composition {g} ∘ {f} declared for non-composable morphisms")]
    NotComposable { g: String, f: String },
    #[error("missing composite {g} ∘ {f}")]
    MissingComposite { g: String, f: String },
    #[error("composite {gf} of {g} ∘ {f} has inconsistent endpoints")]
    EndpointMismatch { g: String, f: String, gf: String },
    #[error("identity is not neutral on morphism {morphism}")]
    IdentityNotNeutral { morphism: String },
    #[error("associativity fails on the composable triple ({h}, {g}, {f})")]
    NotAssociative { h: String, g: String, f: String },
    #[error("functor data has the wrong shape or mismatched categories")]
    FunctorShape,
    #[error("functor does not preserve endpoints of morphism {morphism}")]
    FunctorEndpoints { morphism: String },
    #[error("functor does not preserve the identity of object {object}")]
    FunctorIdentity { object: String },
    #[error("functor does not preserve the composite {g} ∘ {f}")]
    FunctorComposition { g: String, f: String },
    #[error("input exceeds the isomorphism-search size guard ({actual} > {limit} morphisms)")]
    SizeGuard { limit: usize, actual: usize },
}

/// A commuting pushout square of categories.
#[derive(Debug, Clone)]
pub struct PushoutSquare {
    pub f1: Functor,
    pub f2: Functor,
    pub i1: Functor,
    pub i2: Functor,
}

impl PushoutSquare {
    /// Checks shared domain and commutativity I1∘F1 = I2∘F2.
    pub fn new(f1: Functor, f2: Functor, i1: Functor, i2: Functor) -> Result<Self, CategoryError> {
        if f1.domain() != f2.domain() {
            return Err(CategoryError::FunctorShape);
        }
        let left = i1.compose(&f1)?;
        let right = i2.compose(&f2)?;
        if left != right {
            return Err(CategoryError::FunctorShape);
        }
        Ok(PushoutSquare { f1, f2, i1, i2 })
    }

    /// The composite I1∘F1 = I2∘F2.
    pub fn i0(&self) -> Functor {
        self.i1.compose(&self.f1).expect("checked at construction")
    }

    pub fn apex(&self) -> &FinCategory {
        self.i1.codomain()
    }

    pub fn base(&self) -> &FinCategory {
        self.f1.domain()
    }
}
