//! Isomorphism signatures.
//!
//! The native signature is the lexicographically least breadth-first
//! encoding of the gluing table over every choice of starting simplex and
//! starting vertex labeling. It is not byte-compatible with the published
//! census format, which can only be imported (see [`import_external_sig`]).

mod alphabet;
mod external;
mod file;
mod native;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use external::{import_external_sig, import_external_sig_dim};
pub use file::{read_sig_file, write_sig_file, SigFormat};
pub use native::{canonical_codes, canonical_sig, decode_sig, isomorphic};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SigError {
    #[error("malformed signature: {0}")]
    Malformed(String),
    #[error("unsupported dimension {0}; only 4-dimensional signatures are supported")]
    UnsupportedDimension(usize),
    #[error("triangulation is disconnected")]
    Disconnected,
}

/// A native signature. Equal signatures mean isomorphic triangulations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IsoSig(pub String);

impl IsoSig {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for IsoSig {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for IsoSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for IsoSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IsoSig({})", self.0)
    }
}

impl From<&str> for IsoSig {
    fn from(s: &str) -> Self {
        IsoSig(s.to_string())
    }
}
