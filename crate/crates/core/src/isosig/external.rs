use crate::perm::Perm5;
use crate::tri::Triangulation4;

use super::alphabet::Reader;
use super::SigError;

/// Imports a 4-dimensional signature in the published census format.
///
/// Layout per component: a simplex count; facet actions packed three to a
/// character in base 4 (0 boundary, 1 glued by the identity to the next
/// unused simplex, 2 glued to an explicit simplex); the destinations of the
/// explicit gluings; their permutations as 2-character indices into the
/// lexicographic ordering of S5. Actions are consumed for each facet, in
/// simplex-then-facet order, that is not already glued. Several components
/// may follow one another.
pub fn import_external_sig(s: &str) -> Result<Triangulation4, SigError> {
    let mut r = Reader::new(s.trim());
    let mut out: Option<Triangulation4> = None;
    while !r.at_end() {
        let comp = component(&mut r)?;
        out = Some(match out {
            None => comp,
            Some(t) => t.disjoint_union(&comp),
        });
    }
    out.ok_or_else(|| SigError::Malformed("empty signature".into()))
}

/// Dimension-checked variant of [`import_external_sig`].
pub fn import_external_sig_dim(s: &str, dim: usize) -> Result<Triangulation4, SigError> {
    if dim != 4 {
        return Err(SigError::UnsupportedDimension(dim));
    }
    import_external_sig(s)
}

fn component(r: &mut Reader<'_>) -> Result<Triangulation4, SigError> {
    const FACETS: usize = 5;
    const PERM_CHARS: usize = 2;
    let (n, width) = r.size_header()?;
    if n == 0 {
        return Err(SigError::Malformed("empty component".into()));
    }
    let total = FACETS * n;
    let mut actions = Vec::new();
    let mut used = 0;
    let mut joins = 0;
    while used < total {
        let v = r.next()?;
        for j in 0..3 {
            let a = (v >> (2 * j)) & 3;
            if used == total {
                if a != 0 {
                    return Err(SigError::Malformed("nonzero padding in facet actions".into()));
                }
                continue;
            }
            match a {
                0 => used += 1,
                1 => used += 2,
                2 => {
                    used += 2;
                    joins += 1;
                }
                _ => return Err(SigError::Malformed("facet action 3".into())),
            }
            if used > total {
                return Err(SigError::Malformed("too many facet actions".into()));
            }
            actions.push(a);
        }
    }
    let dests: Vec<usize> = (0..joins).map(|_| r.value(width)).collect::<Result<_, _>>()?;
    let perms: Vec<Perm5> = (0..joins)
        .map(|_| {
            let v = r.value(PERM_CHARS)?;
            Perm5::from_lex_index(v).ok_or_else(|| SigError::Malformed(format!("permutation index {v}")))
        })
        .collect::<Result<_, _>>()?;

    let mut t = Triangulation4::new(n).map_err(|e| SigError::Malformed(e.to_string()))?;
    let mut act = actions.into_iter();
    let mut join_idx = 0;
    let mut next = 1;
    let bad = |e: crate::tri::TriError| SigError::Malformed(e.to_string());
    for s in 0..n {
        for f in 0..FACETS {
            if t.gluing(s, f).is_some() {
                continue;
            }
            match act.next().ok_or_else(|| SigError::Malformed("ran out of facet actions".into()))? {
                0 => {}
                1 => {
                    if next >= n {
                        return Err(SigError::Malformed("identity gluing past the last simplex".into()));
                    }
                    t.join(s, f, next, Perm5::identity()).map_err(bad)?;
                    next += 1;
                }
                _ => {
                    let (d, p) = (dests[join_idx], perms[join_idx]);
                    join_idx += 1;
                    if d >= n || t.gluing(d, p.apply(f)).is_some() {
                        return Err(SigError::Malformed("gluing onto an occupied or missing facet".into()));
                    }
                    t.join(s, f, d, p).map_err(bad)?;
                }
            }
        }
    }
    if next != n {
        return Err(SigError::Malformed("component is not connected".into()));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_c() {
        let t = import_external_sig("cHIbbb0bRbpb").unwrap();
        assert_eq!(t.f_vector(), vec![1, 1, 5, 6, 2]);
        assert_eq!(t.boundary_facet_count(), 2);
    }

    #[test]
    fn four_sphere_candidate() {
        let t = import_external_sig("eAMPcaabcddd+aoa+aAa8aQara").unwrap();
        assert!(t.is_closed());
        assert!(t.is_orientable());
        assert_eq!(t.euler_characteristic(), 2);
        assert!(t.homology().is_trivial());
    }

    #[test]
    fn ball_has_boundary() {
        let t = import_external_sig("eGzMkabcdddcaGa8aAa0awa").unwrap();
        assert_eq!(t.size(), 4);
        assert!(!t.is_closed());
    }

    #[test]
    fn rejects_garbage() {
        assert!(import_external_sig("cHIbb").is_err());
        assert!(import_external_sig("c*").is_err());
        assert_eq!(import_external_sig_dim("cHIbbb0bRbpb", 3).unwrap_err(), SigError::UnsupportedDimension(3));
    }
}
