use serde::Serialize;

use crate::algebra::{recognize_b3, recognize_s3, Recognition, RecognitionBudget};

use super::{Triangulation3, Triangulation4};

/// How a vertex sits in the triangulation, judged by its link.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LinkKind {
    /// Closed link recognised as the 3-sphere.
    Internal,
    /// Bounded link recognised as the 3-ball.
    Boundary,
    /// Closed 3-manifold link that is not the 3-sphere.
    Ideal,
    /// Link that is not a 3-manifold, or a bounded link that is not a ball.
    Invalid,
    /// Recognition ran out of budget.
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Manifoldness {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidityReport {
    pub invalid_edges: Vec<usize>,
    pub invalid_triangles: Vec<usize>,
    pub vertex_links: Vec<LinkKind>,
    pub is_manifold: Manifoldness,
}

impl ValidityReport {
    pub fn unknown_links(&self) -> usize {
        self.vertex_links.iter().filter(|&&k| k == LinkKind::Unknown).count()
    }
}

impl Triangulation4 {
    pub fn validity_report(&self) -> ValidityReport {
        self.validity_report_with(RecognitionBudget::default())
    }

    pub fn validity_report_with(&self, budget: RecognitionBudget) -> ValidityReport {
        let sk = self.skeleton();
        let invalid = |d: usize| -> Vec<usize> {
            sk.faces(d).iter().enumerate().filter(|(_, c)| !c.valid).map(|(i, _)| i).collect()
        };
        let invalid_edges = invalid(1);
        let invalid_triangles = invalid(2);
        let vertex_links: Vec<LinkKind> = (0..sk.count(0))
            .map(|v| {
                let link: Triangulation3 = self.vertex_link(v);
                classify_link(&link, budget)
            })
            .collect();
        let is_manifold = if !invalid_edges.is_empty()
            || !invalid_triangles.is_empty()
            || vertex_links.iter().any(|k| matches!(k, LinkKind::Invalid | LinkKind::Ideal))
        {
            Manifoldness::No
        } else if vertex_links.contains(&LinkKind::Unknown) {
            Manifoldness::Unknown
        } else {
            Manifoldness::Yes
        };
        ValidityReport { invalid_edges, invalid_triangles, vertex_links, is_manifold }
    }

    /// Shorthand for `validity_report().is_manifold == Yes`.
    pub fn is_manifold(&self) -> bool {
        self.validity_report().is_manifold == Manifoldness::Yes
    }
}

pub(crate) fn classify_link(link: &Triangulation3, budget: RecognitionBudget) -> LinkKind {
    if link.is_closed() {
        match recognize_s3(link, budget) {
            Ok(Recognition::Yes) => LinkKind::Internal,
            Ok(Recognition::No) => LinkKind::Ideal,
            Ok(Recognition::Unknown) => LinkKind::Unknown,
            Err(_) => LinkKind::Invalid,
        }
    } else {
        match recognize_b3(link, budget) {
            Ok(Recognition::Yes) => LinkKind::Boundary,
            Ok(Recognition::No) | Err(_) => LinkKind::Invalid,
            Ok(Recognition::Unknown) => LinkKind::Unknown,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_pentachoron_is_a_ball() {
        let r = Triangulation4::new(1).unwrap().validity_report();
        assert_eq!(r.is_manifold, Manifoldness::Yes);
        assert_eq!(r.vertex_links, vec![LinkKind::Boundary; 5]);
    }
}
