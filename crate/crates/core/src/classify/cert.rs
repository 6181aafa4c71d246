use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::isosig::{canonical_sig, decode_sig, IsoSig, SigError};
use crate::moves::{apply_move, MoveDescriptor, MoveError};
use crate::tri::Triangulation4;

/// After `after` steps the state has signature `sig`; replay continues from
/// `decode(sig)`, so later steps are addressed against that labeling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub after: usize,
    pub sig: IsoSig,
}

/// A move sequence connecting two signatures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub from: IsoSig,
    pub to: IsoSig,
    pub steps: Vec<MoveDescriptor>,
    #[serde(default)]
    pub checkpoints: Vec<Checkpoint>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertError {
    #[error(transparent)]
    Signature(#[from] SigError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error("checkpoint after step {after} expected {expected}, found {found}")]
    Checkpoint { after: usize, expected: IsoSig, found: IsoSig },
    #[error("checkpoints are out of order or out of range")]
    CheckpointOrder,
    #[error("replay ends at {found}, certificate claims {expected}")]
    Endpoint { expected: IsoSig, found: IsoSig },
    #[error("cannot join certificates ending at {0} and starting at {1}")]
    Mismatch(IsoSig, IsoSig),
}

impl Certificate {
    pub fn empty(sig: IsoSig) -> Self {
        Certificate { from: sig.clone(), to: sig, steps: Vec::new(), checkpoints: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays the steps and returns the final state, checking every
    /// checkpoint and the endpoint.
    pub fn replay(&self) -> Result<Triangulation4, CertError> {
        let mut t = decode_sig(self.from.as_str())?;
        let mut cps = self.checkpoints.iter().peekable();
        let mut last = 0;
        for cp in &self.checkpoints {
            if cp.after < last || cp.after == 0 || cp.after > self.steps.len() {
                return Err(CertError::CheckpointOrder);
            }
            last = cp.after;
        }
        for (i, m) in self.steps.iter().enumerate() {
            t = apply_move(&t, m)?;
            while let Some(cp) = cps.next_if(|cp| cp.after == i + 1) {
                let found = canonical_sig(&t)?;
                if found != cp.sig {
                    return Err(CertError::Checkpoint { after: cp.after, expected: cp.sig.clone(), found });
                }
                t = decode_sig(found.as_str())?;
            }
        }
        let found = canonical_sig(&t)?;
        if found != self.to {
            return Err(CertError::Endpoint { expected: self.to.clone(), found });
        }
        Ok(t)
    }

    /// `self` followed by `next`.
    pub fn then(mut self, next: Certificate) -> Result<Certificate, CertError> {
        if self.to != next.from {
            return Err(CertError::Mismatch(self.to, next.from));
        }
        let offset = self.steps.len();
        if offset > 0 && !next.steps.is_empty() && self.checkpoints.last().map(|c| c.after) != Some(offset) {
            self.checkpoints.push(Checkpoint { after: offset, sig: self.to.clone() });
        }
        self.steps.extend(next.steps);
        self.checkpoints
            .extend(next.checkpoints.into_iter().map(|c| Checkpoint { after: c.after + offset, sig: c.sig }));
        self.to = next.to;
        Ok(self)
    }
}

pub fn verify_certificate(cert: &Certificate) -> bool {
    cert.replay().is_ok()
}

/// Records moves applied to a working triangulation so that they can be
/// emitted as a certificate.
#[derive(Clone, Debug)]
pub struct Trail {
    from: IsoSig,
    state: Triangulation4,
    steps: Vec<MoveDescriptor>,
    checkpoints: Vec<Checkpoint>,
}

impl Trail {
    /// Starts at the canonical labeling of `t`.
    pub fn start(t: &Triangulation4) -> Result<Self, SigError> {
        let from = canonical_sig(t)?;
        let state = decode_sig(from.as_str())?;
        Ok(Trail { from, state, steps: Vec::new(), checkpoints: Vec::new() })
    }

    pub fn state(&self) -> &Triangulation4 {
        &self.state
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn from_sig(&self) -> &IsoSig {
        &self.from
    }

    pub fn apply(&mut self, m: MoveDescriptor) -> Result<(), MoveError> {
        self.state = apply_move(&self.state, &m)?;
        self.steps.push(m);
        Ok(())
    }

    /// Canonical signature of the current state. Records a checkpoint and
    /// switches the state to the canonical labeling.
    pub fn checkpoint(&mut self) -> IsoSig {
        let sig = canonical_sig(&self.state).expect("walk states stay connected");
        if !self.steps.is_empty() && self.checkpoints.last().map(|c| c.after) != Some(self.steps.len()) {
            self.checkpoints.push(Checkpoint { after: self.steps.len(), sig: sig.clone() });
            self.state = decode_sig(sig.as_str()).expect("own signature decodes");
        }
        sig
    }

    pub fn finish(mut self) -> Certificate {
        let to = self.checkpoint();
        // A trailing checkpoint duplicates `to`.
        if self.checkpoints.last().is_some_and(|c| c.after == self.steps.len()) {
            self.checkpoints.pop();
        }
        Certificate { from: self.from, to, steps: self.steps, checkpoints: self.checkpoints }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::{descriptor, MoveKind};

    fn sphere() -> Triangulation4 {
        crate::isosig::import_external_sig("eAMPcaabcddd+aoa+aAa8aQara").unwrap()
    }

    #[test]
    fn empty_certificate_verifies() {
        let s = canonical_sig(&sphere()).unwrap();
        assert!(verify_certificate(&Certificate::empty(s)));
    }

    #[test]
    fn one_move_certificate() {
        let mut trail = Trail::start(&sphere()).unwrap();
        let m = descriptor(trail.state(), MoveKind::P15, 0).unwrap();
        trail.apply(m).unwrap();
        let cert = trail.finish();
        assert!(verify_certificate(&cert));
        let mut bad = cert.clone();
        bad.to = bad.from.clone();
        assert!(!verify_certificate(&bad));
    }

    #[test]
    fn concatenation_inserts_a_checkpoint() {
        let mut a = Trail::start(&sphere()).unwrap();
        let m = descriptor(a.state(), MoveKind::P15, 0).unwrap();
        a.apply(m).unwrap();
        let a = a.finish();
        let mid = crate::isosig::decode_sig(a.to.as_str()).unwrap();
        let mut b = Trail::start(&mid).unwrap();
        let m = descriptor(b.state(), MoveKind::P15, 1).unwrap();
        b.apply(m).unwrap();
        let joined = a.then(b.finish()).unwrap();
        assert_eq!(joined.checkpoints, vec![Checkpoint { after: 1, sig: joined_mid(&joined) }]);
        assert!(verify_certificate(&joined));
    }

    fn joined_mid(c: &Certificate) -> IsoSig {
        let mut t = decode_sig(c.from.as_str()).unwrap();
        t = apply_move(&t, &c.steps[0]).unwrap();
        canonical_sig(&t).unwrap()
    }
}
