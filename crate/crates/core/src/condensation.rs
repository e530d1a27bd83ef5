//! Weighted-poset normal form of transitive digraphs.
//!
//! Every transitive digraph arises from an acyclic transitive skeleton by
//! replacing each skeleton vertex `j` with a strong clique of `k_j` vertices,
//! all of which inherit the skeleton arcs of `j`.

use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condensation {
    skeleton: Digraph,
    multiplicity: Vec<usize>,
}

impl Condensation {
    /// Checks that the skeleton is acyclic and transitive and that there is
    /// one positive multiplicity per skeleton vertex.
    pub fn new(skeleton: Digraph, multiplicity: Vec<usize>) -> Result<Self> {
        if multiplicity.len() != skeleton.n() {
            return Err(Error::PreconditionViolated(format!(
                "{} multiplicities for {} skeleton vertices",
                multiplicity.len(),
                skeleton.n()
            )));
        }
        if let Some(j) = multiplicity.iter().position(|&k| k == 0) {
            return Err(Error::ZeroMultiplicity(j));
        }
        if skeleton.has_digon() || !skeleton.is_acyclic() {
            return Err(Error::PreconditionViolated(
                "skeleton must be acyclic".into(),
            ));
        }
        if !skeleton.is_transitive() {
            return Err(Error::NotTransitive);
        }
        Ok(Condensation {
            skeleton,
            multiplicity,
        })
    }

    pub fn skeleton(&self) -> &Digraph {
        &self.skeleton
    }

    pub fn multiplicity(&self) -> &[usize] {
        &self.multiplicity
    }

    /// Total number of vertices of the replicated digraph.
    pub fn order(&self) -> usize {
        self.multiplicity.iter().sum()
    }

    /// Largest multiplicity-weighted chain of the skeleton. This is the clique
    /// number of the underlying comparability graph of the replication.
    pub fn max_weighted_chain(&self) -> usize {
        self.weighted_heights().into_iter().max().unwrap_or(0)
    }

    /// For each skeleton vertex, the heaviest chain ending at it (inclusive).
    pub fn weighted_heights(&self) -> Vec<usize> {
        let order = topological_order(&self.skeleton);
        let mut height = vec![0usize; self.skeleton.n()];
        for &j in &order {
            let below = self
                .skeleton
                .in_neighbours(j)
                .map(|i| height[i])
                .max()
                .unwrap_or(0);
            height[j] = below + self.multiplicity[j];
        }
        height
    }

    /// Replaces each skeleton vertex by a strong clique; skeleton vertex `j`
    /// occupies a consecutive block of vertices in skeleton order.
    pub fn replicate(&self) -> Digraph {
        let mut start = Vec::with_capacity(self.multiplicity.len());
        let mut total = 0;
        for &k in &self.multiplicity {
            start.push(total);
            total += k;
        }
        let block = |j: usize| start[j]..start[j] + self.multiplicity[j];
        let mut d = Digraph::empty(total);
        for j in 0..self.skeleton.n() {
            for u in block(j) {
                for v in block(j) {
                    if u != v {
                        d.add_arc(u, v);
                    }
                }
            }
        }
        for (i, j) in self.skeleton.arcs() {
            for u in block(i) {
                for v in block(j) {
                    d.add_arc(u, v);
                }
            }
        }
        d
    }
}

/// Condenses a transitive digraph: one skeleton vertex per strong component
/// (components ordered by smallest member).
pub fn condense(d: &Digraph) -> Result<Condensation> {
    condense_with_components(d).map(|(c, _)| c)
}

/// Like [`condense`], also returning the members of each skeleton vertex.
pub fn condense_with_components(d: &Digraph) -> Result<(Condensation, Vec<Vec<usize>>)> {
    if !d.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let comps = d.strong_components();
    let p = comps.len();
    let mut skeleton = Digraph::empty(p);
    for i in 0..p {
        for j in 0..p {
            if i != j && d.has_arc(comps[i][0], comps[j][0]) {
                skeleton.add_arc(i, j);
            }
        }
    }
    let multiplicity = comps.iter().map(Vec::len).collect();
    Ok((
        Condensation {
            skeleton,
            multiplicity,
        },
        comps,
    ))
}

pub fn replicate(c: &Condensation) -> Digraph {
    c.replicate()
}

/// Topological order of an acyclic digraph (Kahn, smallest index first).
pub(crate) fn topological_order(d: &Digraph) -> Vec<usize> {
    let n = d.n();
    let mut indeg: Vec<usize> = (0..n).map(|v| d.in_degree(v)).collect();
    let mut ready: std::collections::BTreeSet<usize> =
        (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(u) = ready.pop_first() {
        order.push(u);
        for v in d.out_neighbours(u) {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                ready.insert(v);
            }
        }
    }
    debug_assert_eq!(order.len(), n, "topological_order on a cyclic digraph");
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize, arcs: &[(usize, usize)]) -> Digraph {
        Digraph::from_arcs(n, arcs.iter().copied()).unwrap()
    }

    #[test]
    fn condense_examples() {
        let g = d(3, &[(0, 1), (1, 0), (0, 2), (1, 2)]);
        let c = condense(&g).unwrap();
        assert_eq!(c.skeleton(), &d(2, &[(0, 1)]));
        assert_eq!(c.multiplicity(), &[2, 1]);

        let c = condense(&Digraph::strong_clique(3)).unwrap();
        assert_eq!(c.skeleton().n(), 1);
        assert_eq!(c.multiplicity(), &[3]);

        let tt3 = Digraph::transitive_tournament(3);
        let c = condense(&tt3).unwrap();
        assert_eq!(c.skeleton(), &tt3);
        assert_eq!(c.multiplicity(), &[1, 1, 1]);
    }

    #[test]
    fn condense_rejects_non_transitive() {
        assert_eq!(
            condense(&d(3, &[(0, 1), (1, 2)])),
            Err(Error::NotTransitive)
        );
    }

    #[test]
    fn replicate_examples() {
        let c = Condensation::new(Digraph::empty(1), vec![2]).unwrap();
        assert_eq!(c.replicate(), Digraph::digon());
        let c = Condensation::new(d(2, &[(0, 1)]), vec![2, 1]).unwrap();
        assert_eq!(c.replicate(), d(3, &[(0, 1), (1, 0), (0, 2), (1, 2)]));
        assert!(c.replicate().is_transitive());
    }

    #[test]
    fn zero_multiplicity_rejected() {
        assert_eq!(
            Condensation::new(d(2, &[(0, 1)]), vec![1, 0]),
            Err(Error::ZeroMultiplicity(1))
        );
    }

    #[test]
    fn cyclic_skeleton_rejected() {
        assert!(Condensation::new(Digraph::digon(), vec![1, 1]).is_err());
    }

    #[test]
    fn weighted_chain_examples() {
        let c = condense(&Digraph::transitive_tournament(3)).unwrap();
        assert_eq!(c.max_weighted_chain(), 3);
        let c = Condensation::new(d(2, &[(0, 1)]), vec![2, 1]).unwrap();
        assert_eq!(c.max_weighted_chain(), 3);
        let c = Condensation::new(Digraph::empty(2), vec![2, 3]).unwrap();
        assert_eq!(c.max_weighted_chain(), 3);
    }
}
