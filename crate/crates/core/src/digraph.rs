//! Loop-free digraphs on `0..n` and the transitivity utilities built on them.
//!
//! Transitivity is meant in the loop-free sense: for pairwise distinct
//! `u, v, w`, arcs `uv` and `vw` force `uw`. A digraph with a directed cycle
//! can therefore be transitive (its strong components are strong cliques),
//! and closures never introduce loops.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scc;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "DigraphRepr", try_from = "DigraphRepr")]
pub struct Digraph {
    n: usize,
    adj: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct DigraphRepr {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl From<Digraph> for DigraphRepr {
    fn from(d: Digraph) -> Self {
        DigraphRepr {
            n: d.n,
            arcs: d.arcs().collect(),
        }
    }
}

impl TryFrom<DigraphRepr> for Digraph {
    type Error = Error;

    fn try_from(r: DigraphRepr) -> Result<Self> {
        Digraph::from_arcs(r.n, r.arcs)
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph({}; ", self.n)?;
        f.debug_list().entries(self.arcs()).finish()?;
        write!(f, ")")
    }
}

/// Structural flags of a homomorphism target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TargetClass {
    pub symmetric: bool,
    pub asymmetric: bool,
    pub semicomplete: bool,
    pub transitive: bool,
}

impl Digraph {
    /// The digraph on `n` vertices with no arcs.
    pub fn empty(n: usize) -> Self {
        Digraph {
            n,
            adj: vec![false; n * n],
        }
    }

    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut d = Digraph::empty(n);
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(Error::PreconditionViolated(format!(
                    "arc ({u},{v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::PreconditionViolated(format!("loop at vertex {u}")));
            }
            d.add_arc(u, v);
        }
        Ok(d)
    }

    /// Transitive tournament `0 -> 1 -> ... -> m-1` with all forward arcs.
    pub fn transitive_tournament(m: usize) -> Self {
        let mut d = Digraph::empty(m);
        for u in 0..m {
            for v in u + 1..m {
                d.add_arc(u, v);
            }
        }
        d
    }

    /// All arcs in both directions between distinct vertices.
    pub fn strong_clique(m: usize) -> Self {
        let mut d = Digraph::empty(m);
        for u in 0..m {
            for v in 0..m {
                if u != v {
                    d.add_arc(u, v);
                }
            }
        }
        d
    }

    pub fn digon() -> Self {
        Digraph::strong_clique(2)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    /// Panics on a loop or an out-of-range endpoint.
    pub fn add_arc(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "arc ({u},{v}) out of range");
        assert_ne!(u, v, "loops are not allowed");
        self.adj[u * self.n + v] = true;
    }

    pub fn remove_arc(&mut self, u: usize, v: usize) {
        self.adj[u * self.n + v] = false;
    }

    /// Arcs in row-major order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (0..self.n)
                .filter(move |&v| self.has_arc(u, v))
                .map(move |v| (u, v))
        })
    }

    pub fn arc_count(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count()
    }

    pub fn out_neighbours(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.has_arc(u, v))
    }

    pub fn in_neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.has_arc(u, v))
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out_neighbours(u).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_neighbours(v).count()
    }

    pub fn is_digon(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) && self.has_arc(v, u)
    }

    /// Whether `u` and `v` are joined by an arc in either direction.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    pub fn has_digon(&self) -> bool {
        (0..self.n).any(|u| (u + 1..self.n).any(|v| self.is_digon(u, v)))
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        (0..self.n).all(|u| !self.adjacent(u, v))
    }

    /// Subdigraph induced by `vertices`, relabelled `0..len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Digraph {
        let k = vertices.len();
        let mut d = Digraph::empty(k);
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                if i != j && self.has_arc(u, v) {
                    d.add_arc(i, j);
                }
            }
        }
        d
    }

    /// `G - v`, remaining vertices keep their relative order.
    pub fn remove_vertex(&self, v: usize) -> Digraph {
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced(&keep)
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Digraph) -> Digraph {
        let shift = self.n;
        let mut d = Digraph::empty(self.n + other.n);
        for (u, v) in self.arcs() {
            d.add_arc(u, v);
        }
        for (u, v) in other.arcs() {
            d.add_arc(u + shift, v + shift);
        }
        d
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Digraph {
        assert_eq!(perm.len(), self.n);
        let mut d = Digraph::empty(self.n);
        for (u, v) in self.arcs() {
            d.add_arc(perm[u], perm[v]);
        }
        d
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.n;
        for u in 0..n {
            for v in 0..n {
                if u == v || !self.has_arc(u, v) {
                    continue;
                }
                for w in 0..n {
                    if w != u && w != v && self.has_arc(v, w) && !self.has_arc(u, w) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Smallest transitive superdigraph. Reachability through a directed
    /// cycle never produces a loop.
    pub fn transitive_closure(&self) -> Digraph {
        let n = self.n;
        let mut reach = self.adj.clone();
        for k in 0..n {
            for i in 0..n {
                if !reach[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if reach[k * n + j] {
                        reach[i * n + j] = true;
                    }
                }
            }
        }
        for v in 0..n {
            reach[v * n + v] = false;
        }
        Digraph { n, adj: reach }
    }

    pub(crate) fn successor_lists(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|u| self.out_neighbours(u).collect()).collect()
    }

    /// Strong components, each sorted, listed by their smallest vertex.
    pub fn strong_components(&self) -> Vec<Vec<usize>> {
        let mut comps = scc::tarjan(&self.successor_lists());
        comps.sort_by_key(|c| c[0]);
        comps
    }

    /// Symmetric digraph with a digon wherever `self` has at least one arc.
    pub fn underlying(&self) -> Digraph {
        let mut d = Digraph::empty(self.n);
        for (u, v) in self.arcs() {
            d.add_arc(u, v);
            d.add_arc(v, u);
        }
        d
    }

    pub fn is_symmetric(&self) -> bool {
        self.arcs().all(|(u, v)| self.has_arc(v, u))
    }

    pub fn is_semicomplete(&self) -> bool {
        (0..self.n).all(|u| (u + 1..self.n).all(|v| self.adjacent(u, v)))
    }

    pub fn is_acyclic(&self) -> bool {
        self.strong_components().iter().all(|c| c.len() == 1)
    }

    pub fn classify(&self) -> TargetClass {
        TargetClass {
            symmetric: self.is_symmetric(),
            asymmetric: !self.has_digon(),
            semicomplete: self.is_semicomplete(),
            transitive: self.is_transitive(),
        }
    }

    /// Whether `vertices` spans a strong clique.
    pub fn is_strong_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            vertices[i + 1..].iter().all(|&v| self.is_digon(u, v))
        })
    }

    pub fn is_independent(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            vertices[i + 1..].iter().all(|&v| !self.adjacent(u, v))
        })
    }

    /// Size of a largest strong clique, by exhaustive search.
    pub fn largest_strong_clique(&self) -> Vec<usize> {
        let sym = self.symmetric_part();
        max_clique(&sym)
    }

    /// Vertex set of a largest transitive tournament (a set spanning an
    /// acyclic semi-complete subdigraph without digons), by exhaustive search.
    pub fn largest_transitive_tournament(&self) -> Vec<usize> {
        let mut best = Vec::new();
        let mut current = Vec::new();
        // every vertex added must be dominated (one way) by all earlier ones
        fn grow(d: &Digraph, current: &mut Vec<usize>, best: &mut Vec<usize>) {
            if current.len() > best.len() {
                *best = current.clone();
            }
            for w in 0..d.n {
                if current.contains(&w) {
                    continue;
                }
                if current
                    .iter()
                    .all(|&u| d.has_arc(u, w) && !d.has_arc(w, u))
                {
                    current.push(w);
                    grow(d, current, best);
                    current.pop();
                }
            }
        }
        grow(self, &mut current, &mut best);
        best
    }

    /// Undirected graph (as adjacency rows) of digons only.
    fn symmetric_part(&self) -> Vec<Vec<bool>> {
        (0..self.n)
            .map(|u| (0..self.n).map(|v| u != v && self.is_digon(u, v)).collect())
            .collect()
    }
}

/// Maximum clique of an undirected graph given as adjacency rows.
pub(crate) fn max_clique(adj: &[Vec<bool>]) -> Vec<usize> {
    fn extend(
        adj: &[Vec<bool>],
        current: &mut Vec<usize>,
        candidates: &[usize],
        best: &mut Vec<usize>,
    ) {
        if current.len() > best.len() {
            *best = current.clone();
        }
        if current.len() + candidates.len() <= best.len() {
            return;
        }
        for (i, &v) in candidates.iter().enumerate() {
            let next: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&w| adj[v][w])
                .collect();
            current.push(v);
            extend(adj, current, &next, best);
            current.pop();
        }
    }
    let all: Vec<usize> = (0..adj.len()).collect();
    let mut best = Vec::new();
    extend(adj, &mut Vec::new(), &all, &mut best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize, arcs: &[(usize, usize)]) -> Digraph {
        Digraph::from_arcs(n, arcs.iter().copied()).unwrap()
    }

    #[test]
    fn transitivity_examples() {
        assert!(!d(3, &[(0, 1), (1, 2)]).is_transitive());
        assert!(Digraph::transitive_tournament(3).is_transitive());
        // digon plus an out-arc: 1 -> 0 -> 2 forces 1 -> 2
        assert!(!d(3, &[(0, 1), (1, 0), (0, 2)]).is_transitive());
    }

    #[test]
    fn closure_examples() {
        assert_eq!(
            d(3, &[(0, 1), (1, 2)]).transitive_closure(),
            Digraph::transitive_tournament(3)
        );
        let cycle = d(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(cycle.transitive_closure(), Digraph::strong_clique(3));
        let tt3 = Digraph::transitive_tournament(3);
        assert_eq!(tt3.transitive_closure(), tt3);
    }

    #[test]
    fn components_examples() {
        let g = d(3, &[(0, 1), (1, 0), (0, 2), (1, 2)]);
        assert_eq!(g.strong_components(), vec![vec![0, 1], vec![2]]);
        assert_eq!(
            Digraph::transitive_tournament(3).strong_components(),
            vec![vec![0], vec![1], vec![2]]
        );
        assert_eq!(
            Digraph::strong_clique(3).strong_components(),
            vec![vec![0, 1, 2]]
        );
    }

    #[test]
    fn underlying_examples() {
        let tt3 = Digraph::transitive_tournament(3);
        assert_eq!(tt3.underlying(), Digraph::strong_clique(3));
        assert_eq!(Digraph::digon().underlying(), Digraph::digon());
        assert_eq!(Digraph::empty(0).underlying(), Digraph::empty(0));
    }

    #[test]
    fn classify_examples() {
        let c = Digraph::digon().classify();
        assert_eq!(
            c,
            TargetClass {
                symmetric: true,
                asymmetric: false,
                semicomplete: true,
                transitive: true
            }
        );
        let c = Digraph::transitive_tournament(3).classify();
        assert_eq!(
            c,
            TargetClass {
                symmetric: false,
                asymmetric: true,
                semicomplete: true,
                transitive: true
            }
        );
        let c = d(3, &[(0, 1), (1, 2)]).classify();
        assert_eq!(
            c,
            TargetClass {
                symmetric: false,
                asymmetric: true,
                semicomplete: false,
                transitive: false
            }
        );
    }

    #[test]
    fn rejects_loops_and_range() {
        assert!(Digraph::from_arcs(2, [(0, 0)]).is_err());
        assert!(Digraph::from_arcs(2, [(0, 2)]).is_err());
    }

    #[test]
    fn clique_and_tournament_search() {
        let g = Digraph::strong_clique(3).disjoint_union(&Digraph::transitive_tournament(4));
        assert_eq!(g.largest_strong_clique().len(), 3);
        assert_eq!(g.largest_transitive_tournament().len(), 4);
    }

    #[test]
    fn serde_round_trip() {
        let g = d(3, &[(0, 1), (2, 1)]);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"n":3,"arcs":[[0,1],[2,1]]}"#);
        let back: Digraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }
}
