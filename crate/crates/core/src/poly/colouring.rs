use itertools::Itertools;

use super::require_transitive;
use crate::condensation::condense_with_components;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::search::Certificate;

/// Proper `k`-colouring of the underlying graph of a transitive digraph.
///
/// The underlying graph is a comparability graph whose cliques are weighted
/// chains of the condensation, so colouring each vertex by its level (the
/// heaviest chain ending at it, counting its position inside its own strong
/// clique) is optimal. Colours are the parts `0..k`.
pub fn colour_underlying(g: &Digraph, k: usize) -> Result<Option<Certificate>> {
    require_transitive(g, "input")?;
    Ok(levels_within(g, k).map(Certificate::partition))
}

/// Level colouring with at most `k` colours, `k = 0` allowed.
pub(crate) fn levels_within(g: &Digraph, k: usize) -> Option<Vec<usize>> {
    let (cond, comps) = condense_with_components(g).expect("caller checked transitivity");
    if cond.max_weighted_chain() > k {
        return None;
    }
    let heights = cond.weighted_heights();
    let mut level = vec![0; g.n()];
    for (j, comp) in comps.iter().enumerate() {
        let base = heights[j] - comp.len();
        for (t, &v) in comp.iter().enumerate() {
            level[v] = base + t;
        }
    }
    Some(level)
}

/// `(k, l)`-colouring: `k` independent parts (`0..k`) and `l` strong-clique
/// parts (`k..k+l`), any of which may be empty.
///
/// Succeeds iff removing some `l` strong components leaves a `k`-colourable
/// underlying graph; subsets are tried in lexicographic order.
pub fn kl_colour(g: &Digraph, k: usize, l: usize) -> Result<Option<Certificate>> {
    require_transitive(g, "input")?;
    let comps = g.strong_components();
    if comps.len() <= l {
        let mut assignment = vec![0; g.n()];
        for (c, comp) in comps.iter().enumerate() {
            for &v in comp {
                assignment[v] = k + c;
            }
        }
        return Ok(Some(Certificate::partition(assignment)));
    }
    for chosen in (0..comps.len()).combinations(l) {
        let mut removed = vec![None; g.n()];
        for (slot, &c) in chosen.iter().enumerate() {
            for &v in &comps[c] {
                removed[v] = Some(k + slot);
            }
        }
        let rest: Vec<usize> = (0..g.n()).filter(|&v| removed[v].is_none()).collect();
        let Some(colours) = levels_within(&g.induced(&rest), k) else {
            continue;
        };
        let mut assignment: Vec<usize> = removed.iter().map(|p| p.unwrap_or(0)).collect();
        for (i, &v) in rest.iter().enumerate() {
            assignment[v] = colours[i];
        }
        return Ok(Some(Certificate::partition(assignment)));
    }
    Ok(None)
}

/// Dichromatic number of a transitive digraph with an acyclic partition
/// achieving it.
///
/// Parts induce acyclic subdigraphs iff they meet every strong clique at most
/// once, so the answer is the largest strong component; vertex `v` goes to
/// its rank inside its component.
pub fn dichromatic(g: &Digraph) -> Result<(usize, Certificate)> {
    require_transitive(g, "input")?;
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let comps = g.strong_components();
    let k = comps.iter().map(Vec::len).max().unwrap_or(0);
    let mut assignment = vec![0; g.n()];
    for comp in &comps {
        for (t, &v) in comp.iter().enumerate() {
            assignment[v] = t;
        }
    }
    Ok((k, Certificate::partition(assignment)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::PartitionMatrix;
    use crate::search::{find_acyclic_partition, find_mpartition, verify, Constraint};

    fn d(n: usize, arcs: &[(usize, usize)]) -> Digraph {
        Digraph::from_arcs(n, arcs.iter().copied()).unwrap()
    }

    #[test]
    fn levels_of_tt3() {
        let tt3 = Digraph::transitive_tournament(3);
        let c = colour_underlying(&tt3, 3).unwrap().unwrap();
        assert_eq!(c.assignment, vec![0, 1, 2]);
        assert!(colour_underlying(&tt3, 2).unwrap().is_none());
    }

    #[test]
    fn digon_halves_differ() {
        let c = colour_underlying(&Digraph::digon(), 2).unwrap().unwrap();
        assert_eq!(c.assignment, vec![0, 1]);
    }

    #[test]
    fn kl_examples() {
        let tt3 = Digraph::transitive_tournament(3);
        assert!(kl_colour(&tt3, 1, 1).unwrap().is_none());
        // brute-force agreement
        assert!(find_mpartition(&tt3, &PartitionMatrix::kl(1, 1), None)
            .unwrap()
            .is_none());

        let c = kl_colour(&Digraph::digon(), 0, 1).unwrap().unwrap();
        assert_eq!(c.assignment, vec![0, 0]);

        let star = d(4, &[(0, 1), (0, 2), (0, 3)]);
        let c = kl_colour(&star, 1, 1).unwrap().unwrap();
        assert_eq!(c.assignment, vec![1, 0, 0, 0]);
        assert!(verify(&star, Constraint::Partition(&PartitionMatrix::kl(1, 1)), &c));
    }

    #[test]
    fn kl_rejects_non_transitive() {
        assert!(matches!(
            kl_colour(&d(3, &[(0, 1), (1, 2)]), 1, 1),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn dichromatic_examples() {
        assert_eq!(dichromatic(&Digraph::transitive_tournament(5)).unwrap().0, 1);
        assert_eq!(dichromatic(&Digraph::strong_clique(3)).unwrap().0, 3);
        let (k, cert) = dichromatic(&Digraph::digon()).unwrap();
        assert_eq!(k, 2);
        assert!(verify(&Digraph::digon(), Constraint::AcyclicParts(2), &cert));
        assert!(find_acyclic_partition(&Digraph::digon(), 1).is_none());
        assert_eq!(dichromatic(&Digraph::empty(0)), Err(Error::EmptyGraph));
    }
}
