//! Bipartite graphs with white and black sides, optionally carrying a marked
//! copy of a smaller bipartite graph and per-vertex lists.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::search::{find_hom, Certificate, Lists};

/// A vertex named by its side and its index on that side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Vertex {
    White(usize),
    Black(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::White(i) => write!(f, "w{i}"),
            Vertex::Black(j) => write!(f, "b{j}"),
        }
    }
}

impl FromStr for Vertex {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let bad = || format!("expected w<index> or b<index>, found {s:?}");
        let (side, index) = s.split_at(s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
        let index: usize = index.parse().map_err(|_| bad())?;
        match side {
            "w" => Ok(Vertex::White(index)),
            "b" => Ok(Vertex::Black(index)),
            _ => Err(bad()),
        }
    }
}

impl From<Vertex> for String {
    fn from(v: Vertex) -> String {
        v.to_string()
    }
}

impl TryFrom<String> for Vertex {
    type Error = String;

    fn try_from(s: String) -> std::result::Result<Self, String> {
        s.parse()
    }
}

impl Vertex {
    pub fn is_white(self) -> bool {
        matches!(self, Vertex::White(_))
    }
}

/// A bipartite graph. Vertices are numbered whites first, then blacks, in
/// [`BipartiteInstance::index`] and in every digraph built from it.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BipartiteInstance {
    whites: usize,
    blacks: usize,
    /// `(white, black)` pairs, sorted and without repeats.
    edges: Vec<(usize, usize)>,
    /// Pairs `(target vertex, own vertex)` marking a copy of a target graph.
    embedding: Vec<(Vertex, Vertex)>,
    /// Lists of target vertices; vertices without an entry are unrestricted.
    lists: BTreeMap<Vertex, Vec<Vertex>>,
}

impl BipartiteInstance {
    pub fn new<I>(whites: usize, blacks: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut es = Vec::new();
        for (w, b) in edges {
            if w >= whites || b >= blacks {
                return Err(Error::PreconditionViolated(format!(
                    "edge w{w} b{b} outside {whites} whites and {blacks} blacks"
                )));
            }
            es.push((w, b));
        }
        es.sort_unstable();
        es.dedup();
        Ok(BipartiteInstance {
            whites,
            blacks,
            edges: es,
            ..Default::default()
        })
    }

    /// The single edge `w0 b0`.
    pub fn single_edge() -> Self {
        BipartiteInstance::new(1, 1, [(0, 0)]).expect("valid")
    }

    /// The path `w0 - b0 - w1 - b1`.
    pub fn path4() -> Self {
        BipartiteInstance::new(2, 2, [(0, 0), (1, 0), (1, 1)]).expect("valid")
    }

    /// The 6-cycle `w0 b0 w1 b1 w2 b2`.
    pub fn cycle6() -> Self {
        BipartiteInstance::new(3, 3, [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)])
            .expect("valid")
    }

    pub fn whites(&self) -> usize {
        self.whites
    }

    pub fn blacks(&self) -> usize {
        self.blacks
    }

    pub fn order(&self) -> usize {
        self.whites + self.blacks
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, w: usize, b: usize) -> bool {
        self.edges.binary_search(&(w, b)).is_ok()
    }

    pub fn embedding(&self) -> &[(Vertex, Vertex)] {
        &self.embedding
    }

    pub fn lists(&self) -> &BTreeMap<Vertex, Vec<Vertex>> {
        &self.lists
    }

    pub fn with_embedding(mut self, pairs: Vec<(Vertex, Vertex)>) -> Result<Self> {
        for &(_, g) in &pairs {
            self.check_vertex(g)?;
        }
        self.embedding = pairs;
        Ok(self)
    }

    pub fn with_lists(mut self, lists: BTreeMap<Vertex, Vec<Vertex>>) -> Result<Self> {
        for &v in lists.keys() {
            self.check_vertex(v)?;
        }
        self.lists = lists;
        Ok(self)
    }

    /// `self` with a marked copy of itself on the same vertices.
    pub fn embedded_identity(&self) -> Self {
        let mut out = self.clone();
        out.embedding = self.vertices().map(|v| (v, v)).collect();
        out
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        let ok = match v {
            Vertex::White(i) => i < self.whites,
            Vertex::Black(j) => j < self.blacks,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::PreconditionViolated(format!("vertex {v} does not exist")))
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        let (p, q) = (self.whites, self.blacks);
        (0..p).map(Vertex::White).chain((0..q).map(Vertex::Black))
    }

    pub fn index(&self, v: Vertex) -> usize {
        match v {
            Vertex::White(i) => i,
            Vertex::Black(j) => self.whites + j,
        }
    }

    pub fn vertex(&self, index: usize) -> Vertex {
        if index < self.whites {
            Vertex::White(index)
        } else {
            Vertex::Black(index - self.whites)
        }
    }

    /// Black neighbours of white vertex `w`.
    pub fn neighbourhood(&self, w: usize) -> Vec<usize> {
        self.edges.iter().filter(|e| e.0 == w).map(|e| e.1).collect()
    }

    /// No white vertex has its neighbourhood contained in another's.
    pub fn domination_free(&self) -> bool {
        self.dominated_pair().is_none()
    }

    /// The first pair `(a, b)` of whites with `N(a) ⊆ N(b)`.
    pub fn dominated_pair(&self) -> Option<(usize, usize)> {
        let hoods: Vec<Vec<usize>> = (0..self.whites).map(|w| self.neighbourhood(w)).collect();
        (0..self.whites)
            .flat_map(|a| (0..self.whites).map(move |b| (a, b)))
            .find(|&(a, b)| a != b && hoods[a].iter().all(|x| hoods[b].contains(x)))
    }

    /// The graph as a symmetric digraph.
    pub fn to_digraph(&self) -> Digraph {
        let mut d = Digraph::empty(self.order());
        for &(w, b) in &self.edges {
            d.add_arc(w, self.whites + b);
            d.add_arc(self.whites + b, w);
        }
        d
    }

    /// Every edge oriented from its white end to its black end.
    pub fn oriented(&self) -> Digraph {
        let mut d = Digraph::empty(self.order());
        for &(w, b) in &self.edges {
            d.add_arc(w, self.whites + b);
        }
        d
    }

    /// The marked copy of `h`, as `map[index in h] = index in self`.
    ///
    /// The copy must cover every vertex of `h` exactly once, keep colours,
    /// be injective and carry every edge of `h` onto an edge of `self`.
    pub fn embedding_of(&self, h: &BipartiteInstance) -> Result<Vec<usize>> {
        if self.embedding.is_empty() {
            return Err(Error::NoEmbedding("no embedded copy is marked".into()));
        }
        let mut map = vec![None; h.order()];
        for &(x, g) in &self.embedding {
            h.check_vertex(x)
                .map_err(|_| Error::NoEmbedding(format!("{x} is not a target vertex")))?;
            if x.is_white() != g.is_white() {
                return Err(Error::NoEmbedding(format!("{x} is marked on {g}, of the other colour")));
            }
            if map[h.index(x)].replace(self.index(g)).is_some() {
                return Err(Error::NoEmbedding(format!("{x} is marked twice")));
            }
        }
        let map: Vec<usize> = map
            .into_iter()
            .enumerate()
            .map(|(i, g)| g.ok_or_else(|| Error::NoEmbedding(format!("{} is unmarked", h.vertex(i)))))
            .collect::<Result<_>>()?;
        let mut used = vec![false; self.order()];
        for &g in &map {
            if std::mem::replace(&mut used[g], true) {
                return Err(Error::NoEmbedding(format!("{} is used twice", self.vertex(g))));
            }
        }
        for &(w, b) in &h.edges {
            let (gw, gb) = (map[w], map[h.whites + b]);
            if !self.has_edge(gw, gb - self.whites) {
                return Err(Error::NoEmbedding(format!(
                    "edge w{w} b{b} is not present between {} and {}",
                    self.vertex(gw),
                    self.vertex(gb)
                )));
            }
        }
        Ok(map)
    }

    /// List homomorphism to `h` with the given lists (vertex indices of
    /// `h`), as a map on vertex indices.
    fn list_hom(&self, h: &BipartiteInstance, lists: &Lists) -> Result<Option<Certificate>> {
        find_hom(&self.to_digraph(), &h.to_digraph(), Some(lists))
    }

    /// Retraction onto the marked copy of `h`: every vertex of the copy is
    /// pinned to its counterpart.
    pub fn retraction(&self, h: &BipartiteInstance) -> Result<Option<Certificate>> {
        let map = self.embedding_of(h)?;
        let mut lists = Lists::full(self.order(), h.order());
        for (x, &g) in map.iter().enumerate() {
            lists.set(g, vec![x]);
        }
        self.list_hom(h, &lists)
    }

    /// Homomorphism to `h` pinning only the black vertices of the marked
    /// copy.
    pub fn black_pinned_hom(&self, h: &BipartiteInstance) -> Result<Option<Certificate>> {
        let map = self.embedding_of(h)?;
        let mut lists = Lists::full(self.order(), h.order());
        for (x, &g) in map.iter().enumerate().skip(h.whites) {
            lists.set(g, vec![x]);
        }
        self.list_hom(h, &lists)
    }

    /// Homomorphism to `h` respecting the instance's own lists.
    pub fn listed_hom(&self, h: &BipartiteInstance) -> Result<Option<Certificate>> {
        let mut lists = Lists::full(self.order(), h.order());
        for (&v, targets) in &self.lists {
            for &t in targets {
                h.check_vertex(t)?;
            }
            lists.set(self.index(v), targets.iter().map(|&t| h.index(t)).collect());
        }
        self.list_hom(h, &lists)
    }
}
