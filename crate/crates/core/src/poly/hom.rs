use super::colouring::levels_within;
use super::require_transitive;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::search::Certificate;

/// `H`-colouring of a transitive digraph when `H` is symmetric.
///
/// With `m` the largest strong clique of `H`, `G -> H` iff the underlying
/// graph of `G` has clique number at most `m`; the level colouring is then
/// sent onto such a clique.
pub fn hom_symmetric_target(g: &Digraph, h: &Digraph) -> Result<Option<Certificate>> {
    require_transitive(g, "input")?;
    if !h.is_symmetric() {
        return Err(Error::PreconditionViolated("target is not symmetric".into()));
    }
    let clique = h.largest_strong_clique();
    Ok(levels_within(g, clique.len())
        .map(|levels| Certificate::homomorphism(levels.iter().map(|&l| clique[l]).collect())))
}

/// `H`-colouring of a transitive digraph when `H` has no digons.
///
/// `G -> H` iff `G` has no digon and no chain longer than the largest
/// transitive tournament of `H`.
pub fn hom_asymmetric_target(g: &Digraph, h: &Digraph) -> Result<Option<Certificate>> {
    require_transitive(g, "input")?;
    if h.has_digon() {
        return Err(Error::PreconditionViolated("target has a digon".into()));
    }
    if g.has_digon() {
        return Ok(None);
    }
    let tournament = h.largest_transitive_tournament();
    Ok(levels_within(g, tournament.len()).map(|levels| {
        Certificate::homomorphism(levels.iter().map(|&l| tournament[l]).collect())
    }))
}

/// `H`-colouring of a transitive digraph when `H` is semi-complete and
/// transitive.
///
/// Peels both digraphs from the top: with `A` the unique initial strong
/// component of `H`, one vertex is removed from every initial strong
/// component of `G` of size at most `|A|`, and those vertices are mapped to
/// one vertex `v` of `A`, which dominates the rest of `H`. Then `v` is
/// removed from `H` and the process repeats. `G -> H` iff `G` runs out of
/// vertices first.
pub fn hom_semicomplete_transitive(g: &Digraph, h: &Digraph) -> Result<Option<Certificate>> {
    require_transitive(g, "input")?;
    require_transitive(h, "target")?;
    if !h.is_semicomplete() {
        return Err(Error::PreconditionViolated("target is not semi-complete".into()));
    }

    let mut g_alive: Vec<usize> = (0..g.n()).collect();
    let mut h_alive: Vec<usize> = (0..h.n()).collect();
    let mut image = vec![usize::MAX; g.n()];

    while !g_alive.is_empty() {
        if h_alive.is_empty() {
            return Ok(None);
        }
        let h_initial = initial_components(h, &h_alive);
        let [top] = h_initial.as_slice() else {
            return Err(Error::PreconditionViolated(format!(
                "target has {} initial strong components",
                h_initial.len()
            )));
        };
        let a = top.len();
        let v = top[0];

        let removed: Vec<usize> = initial_components(g, &g_alive)
            .into_iter()
            .filter(|b| b.len() <= a)
            .map(|b| b[0])
            .collect();
        for &r in &removed {
            image[r] = v;
        }
        g_alive.retain(|u| !removed.contains(u));
        h_alive.retain(|&u| u != v);
    }
    Ok(Some(Certificate::homomorphism(image)))
}

/// Strong components of the subdigraph induced by `alive` that receive no
/// arcs from the rest of `alive`, in original vertex labels.
fn initial_components(d: &Digraph, alive: &[usize]) -> Vec<Vec<usize>> {
    let sub = d.induced(alive);
    sub.strong_components()
        .into_iter()
        .filter(|comp| {
            (0..sub.n())
                .filter(|u| !comp.contains(u))
                .all(|u| !sub.has_arc(u, comp[0]))
        })
        .map(|comp| comp.into_iter().map(|i| alive[i]).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{find_hom, verify, Constraint};

    fn d(n: usize, arcs: &[(usize, usize)]) -> Digraph {
        Digraph::from_arcs(n, arcs.iter().copied()).unwrap()
    }

    #[test]
    fn symmetric_examples() {
        let digon = Digraph::digon();
        assert!(hom_symmetric_target(&digon, &digon).unwrap().is_some());
        let tt3 = Digraph::transitive_tournament(3);
        assert!(hom_symmetric_target(&tt3, &digon).unwrap().is_none());
        assert!(find_hom(&tt3, &digon, None).unwrap().is_none());
        let tt4 = Digraph::transitive_tournament(4);
        let k3 = Digraph::strong_clique(3);
        assert!(hom_symmetric_target(&tt4, &k3).unwrap().is_none());
        assert!(find_hom(&tt4, &k3, None).unwrap().is_none());
    }

    #[test]
    fn asymmetric_examples() {
        let tt3 = Digraph::transitive_tournament(3);
        assert!(hom_asymmetric_target(&Digraph::digon(), &tt3).unwrap().is_none());
        let c = hom_asymmetric_target(&tt3, &tt3).unwrap().unwrap();
        assert_eq!(c.assignment, vec![0, 1, 2]);
        let tt4 = Digraph::transitive_tournament(4);
        assert!(hom_asymmetric_target(&tt4, &tt3).unwrap().is_none());
    }

    #[test]
    fn preconditions() {
        let path = d(3, &[(0, 1), (1, 2)]);
        assert!(hom_symmetric_target(&path, &Digraph::digon()).is_err());
        assert!(hom_symmetric_target(&Digraph::digon(), &path).is_err());
        assert!(hom_asymmetric_target(&Digraph::digon(), &Digraph::digon()).is_err());
        assert!(hom_semicomplete_transitive(&Digraph::digon(), &Digraph::empty(2)).is_err());
    }

    #[test]
    fn semicomplete_examples() {
        let tt3 = Digraph::transitive_tournament(3);
        let tt4 = Digraph::transitive_tournament(4);
        let c = hom_semicomplete_transitive(&tt3, &tt3).unwrap().unwrap();
        assert!(verify(&tt3, Constraint::Hom(&tt3), &c));
        assert!(hom_semicomplete_transitive(&tt4, &tt3).unwrap().is_none());
        assert!(find_hom(&tt4, &tt3, None).unwrap().is_none());

        // strong digon dominating a sink
        let h = d(3, &[(0, 1), (1, 0), (0, 2), (1, 2)]);
        let c = hom_semicomplete_transitive(&tt3, &h).unwrap().unwrap();
        assert!(verify(&tt3, Constraint::Hom(&h), &c));
        assert_eq!(c.assignment[2], 2);
    }

    #[test]
    fn semicomplete_with_incomparable_sources() {
        // two incomparable digons above a sink, into digon -> sink
        let g = d(
            5,
            &[(0, 1), (1, 0), (2, 3), (3, 2), (0, 4), (1, 4), (2, 4), (3, 4)],
        );
        let h = d(3, &[(0, 1), (1, 0), (0, 2), (1, 2)]);
        let c = hom_semicomplete_transitive(&g, &h).unwrap().unwrap();
        assert!(verify(&g, Constraint::Hom(&h), &c));
    }
}
