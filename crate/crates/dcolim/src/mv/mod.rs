//! Mayer-Vietoris machinery for pushout squares of finite categories:
//! covering and local-covering checkers, the homotopy-pushout comparison on
//! the colimit side, its dual on the limit side, and the canned
//! counter-example run.

pub mod counterexample;
pub mod cover;
pub mod lim;
pub mod verify;

pub use counterexample::{counterexample_for, counterexample_repro, standin_square, CounterexampleReport};
pub use cover::{
    covering_check, local_covering_check, theorem1_hypotheses, CertificateKind, CoveringVerdict,
    LocalCoveringVerdict, ObjectRecord, Pi1Probe, Theorem1Checklist, VerdictKind,
};
pub use lim::mv_verify_lim;
pub use verify::{
    homotopy_pushout_complex, mv_predict, mv_verify, HoPushout, MVReport, NodeKind, NodeReport,
};

use thiserror::Error;

#[cfg(test)]
mod tests;

#[derive(Debug, Error)]
pub enum MvError {
    #[error("malformed pushout square: {0}")]
    Square(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Dmod(#[from] crate::dmod::DmodError),
    #[error(transparent)]
    Abelian(#[from] crate::abelian::AbelianError),
    #[error(transparent)]
    Category(#[from] crate::fincat::CategoryError),
}
