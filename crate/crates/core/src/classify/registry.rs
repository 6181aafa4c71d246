use std::collections::HashMap;

use thiserror::Error;

use super::cert::{CertError, Certificate};
use crate::isosig::IsoSig;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegistryError {
    #[error("signature {0} is listed twice")]
    DuplicateSignature(IsoSig),
    #[error("signature {0} is not registered")]
    UnknownSignature(IsoSig),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
}

impl From<CertError> for RegistryError {
    fn from(e: CertError) -> Self {
        RegistryError::InvalidCertificate(e.to_string())
    }
}

/// Union-find over signatures. Every committed union is backed by a
/// verified certificate between one member of each class.
#[derive(Clone, Debug, Default)]
pub struct ClassRegistry {
    members: Vec<IsoSig>,
    index: HashMap<IsoSig, usize>,
    parent: Vec<usize>,
    size: Vec<usize>,
    // Representative member of each root.
    rep: Vec<usize>,
    classes: usize,
    certificates: Vec<Certificate>,
}

impl ClassRegistry {
    pub fn new(sigs: &[IsoSig]) -> Result<Self, RegistryError> {
        let mut r = ClassRegistry::default();
        for (i, s) in sigs.iter().enumerate() {
            if r.index.insert(s.clone(), i).is_some() {
                return Err(RegistryError::DuplicateSignature(s.clone()));
            }
            r.members.push(s.clone());
            r.parent.push(i);
            r.size.push(1);
            r.rep.push(i);
        }
        r.classes = sigs.len();
        Ok(r)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn class_count(&self) -> usize {
        self.classes
    }

    pub fn members(&self) -> &[IsoSig] {
        &self.members
    }

    pub fn index_of(&self, sig: &IsoSig) -> Option<usize> {
        self.index.get(sig).copied()
    }

    pub fn contains(&self, sig: &IsoSig) -> bool {
        self.index.contains_key(sig)
    }

    /// Root of member `i`, compressing the path on the way.
    pub fn find(&mut self, i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = i;
        while self.parent[cur] != root {
            cur = std::mem::replace(&mut self.parent[cur], root);
        }
        root
    }

    /// Root of member `i` without modifying the structure.
    pub fn root(&self, mut i: usize) -> usize {
        while self.parent[i] != i {
            i = self.parent[i];
        }
        i
    }

    pub fn representative(&self, i: usize) -> &IsoSig {
        &self.members[self.rep[self.root(i)]]
    }

    pub fn class_size(&self, i: usize) -> usize {
        self.size[self.root(i)]
    }

    /// Joins the classes of `a` and `b` once `cert` has been replayed and
    /// shown to connect them. Returns whether two classes became one; the
    /// class of `b` keeps its representative.
    pub fn merge(&mut self, a: &IsoSig, b: &IsoSig, cert: Certificate) -> Result<bool, RegistryError> {
        let ia = self.index_of(a).ok_or_else(|| RegistryError::UnknownSignature(a.clone()))?;
        let ib = self.index_of(b).ok_or_else(|| RegistryError::UnknownSignature(b.clone()))?;
        if self.find(ia) == self.find(ib) {
            return Ok(false);
        }
        if cert.from != *a || cert.to != *b {
            return Err(RegistryError::InvalidCertificate("endpoints do not match the merged signatures".into()));
        }
        cert.replay()?;
        self.link(ia, ib);
        self.certificates.push(cert);
        Ok(true)
    }

    pub(crate) fn link(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // Union by size; the representative follows the class of `b`.
        let rep = self.rep[rb];
        let (child, root) = if self.size[ra] <= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[child] = root;
        self.size[root] += self.size[child];
        self.rep[root] = rep;
        self.classes -= 1;
        true
    }

    pub fn certificates(&self) -> &[Certificate] {
        &self.certificates
    }

    /// Classes as lists of member indices, each sorted, ordered by their
    /// least member signature.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..self.members.len() {
            by_root.entry(self.root(i)).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = by_root.into_values().collect();
        for c in &mut out {
            c.sort_by(|&x, &y| self.members[x].cmp(&self.members[y]));
        }
        out.sort_by(|x, y| self.members[x[0]].cmp(&self.members[y[0]]));
        out
    }
}
