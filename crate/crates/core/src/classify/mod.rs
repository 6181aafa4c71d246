//! Sorting triangulations into PL-homeomorphism classes.

mod cert;
mod pipeline;
mod registry;

use thiserror::Error;

pub use cert::{verify_certificate, CertError, Certificate, Checkpoint, Trail};
pub use pipeline::{
    group_by_invariants, run_main_algorithm, ClassEntry, ClassificationReport, ClassifyParams, PartKey, Timings,
};
pub use registry::{ClassRegistry, RegistryError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error(transparent)]
    Registry(#[from] RegistryError),
    #[error(transparent)]
    Signature(#[from] crate::isosig::SigError),
}
