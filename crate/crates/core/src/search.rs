//! Exhaustive backtracking oracles for list homomorphism, retraction and
//! matrix partition, plus certificate validation.
//!
//! All three problems share one engine: every ordered pair of distinct input
//! vertices constrains the pair of targets (or parts) they may receive,
//! depending only on which of the two arcs between them exist. A digraph
//! target `H` is the matrix with `*` on its arcs and `0` elsewhere.
//!
//! Branching picks the unassigned vertex with the fewest remaining candidates
//! (lowest index on ties) and tries candidates by target index, with forward
//! checking after each assignment, so certificates are reproducible.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::matrix::PartitionMatrix;

/// Largest number of targets or parts the engine handles.
pub const MAX_TARGETS: usize = 128;

type Mask = u128;

/// Per-vertex candidate lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lists(pub Vec<Vec<usize>>);

impl Lists {
    /// Every vertex may use all `m` targets.
    pub fn full(n: usize, m: usize) -> Self {
        Lists(vec![(0..m).collect(); n])
    }

    pub fn get(&self, v: usize) -> &[usize] {
        &self.0[v]
    }

    pub fn set(&mut self, v: usize, list: Vec<usize>) {
        self.0[v] = list;
    }

    fn masks(&self, n: usize, m: usize) -> Result<Vec<Mask>> {
        if self.0.len() != n {
            return Err(Error::PreconditionViolated(format!(
                "{} lists for {n} vertices",
                self.0.len()
            )));
        }
        self.0
            .iter()
            .enumerate()
            .map(|(v, list)| {
                list.iter().try_fold(0 as Mask, |acc, &t| {
                    if t >= m {
                        Err(Error::BadLists {
                            vertex: v,
                            value: t,
                            bound: m,
                        })
                    } else {
                        Ok(acc | 1 << t)
                    }
                })
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    Homomorphism,
    Partition,
}

/// A homomorphism (vertex to target vertex) or a partition (vertex to part).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "CertificateRepr", try_from = "CertificateRepr")]
pub struct Certificate {
    pub kind: CertificateKind,
    pub assignment: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct CertificateRepr {
    kind: CertificateKind,
    assignment: BTreeMap<usize, usize>,
}

impl From<Certificate> for CertificateRepr {
    fn from(c: Certificate) -> Self {
        CertificateRepr {
            kind: c.kind,
            assignment: c.assignment.into_iter().enumerate().collect(),
        }
    }
}

impl TryFrom<CertificateRepr> for Certificate {
    type Error = Error;

    fn try_from(r: CertificateRepr) -> Result<Self> {
        let n = r.assignment.len();
        if r.assignment.keys().copied().ne(0..n) {
            return Err(Error::PreconditionViolated(
                "certificate assignment must cover vertices 0..n".into(),
            ));
        }
        Ok(Certificate {
            kind: r.kind,
            assignment: r.assignment.into_values().collect(),
        })
    }
}

impl Certificate {
    pub fn homomorphism(assignment: Vec<usize>) -> Self {
        Certificate {
            kind: CertificateKind::Homomorphism,
            assignment,
        }
    }

    pub fn partition(assignment: Vec<usize>) -> Self {
        Certificate {
            kind: CertificateKind::Partition,
            assignment,
        }
    }

    /// Vertices grouped by part, for `parts` parts.
    pub fn parts(&self, parts: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); parts];
        for (v, &p) in self.assignment.iter().enumerate() {
            out[p].push(v);
        }
        out
    }
}

/// What a certificate is checked against.
#[derive(Debug, Clone, Copy)]
pub enum Constraint<'a> {
    Hom(&'a Digraph),
    Partition(&'a PartitionMatrix),
    /// At most `k` parts, each inducing an acyclic subdigraph.
    AcyclicParts(usize),
}

/// Pair-compatibility tables for one template.
struct Engine {
    m: usize,
    /// `allowed[rel][a]`: targets `b` compatible with `a`, where
    /// `rel = arc(u,v) | arc(v,u) << 1`.
    allowed: [Vec<Mask>; 4],
}

impl Engine {
    fn new(mat: &PartitionMatrix) -> Result<Self> {
        let m = mat.m();
        if m > MAX_TARGETS {
            return Err(Error::TooLarge {
                what: "target",
                size: m,
                bound: MAX_TARGETS,
            });
        }
        let table = |rel: usize| -> Vec<Mask> {
            let (uv, vu) = (rel & 1 == 1, rel & 2 == 2);
            (0..m)
                .map(|a| {
                    (0..m)
                        .filter(|&b| mat.admits_pair(a, b, uv, vu))
                        .fold(0, |acc, b| acc | 1 << b)
                })
                .collect()
        };
        Ok(Engine {
            m,
            allowed: [table(0), table(1), table(2), table(3)],
        })
    }

    fn for_each<F>(&self, g: &Digraph, lists: Option<&Lists>, mut visit: F) -> Result<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let n = g.n();
        let full: Mask = if self.m == MAX_TARGETS {
            Mask::MAX
        } else {
            (1 << self.m) - 1
        };
        let domains = match lists {
            Some(l) => l.masks(n, self.m)?,
            None => vec![full; n],
        };
        let rel: Vec<u8> = (0..n * n)
            .map(|i| {
                let (u, v) = (i / n, i % n);
                if u == v {
                    0
                } else {
                    g.has_arc(u, v) as u8 | (g.has_arc(v, u) as u8) << 1
                }
            })
            .collect();
        let mut state = Backtrack {
            engine: self,
            n,
            rel: &rel,
            assignment: vec![0; n],
            assigned: vec![false; n],
        };
        let _ = state.extend(0, domains, &mut visit);
        Ok(())
    }
}

struct Backtrack<'a> {
    engine: &'a Engine,
    n: usize,
    rel: &'a [u8],
    assignment: Vec<usize>,
    assigned: Vec<bool>,
}

impl Backtrack<'_> {
    /// Branches on the unassigned vertex with the fewest candidates.
    fn extend<F>(&mut self, depth: usize, domains: Vec<Mask>, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if depth == self.n {
            return visit(&self.assignment);
        }
        let v = (0..self.n)
            .filter(|&w| !self.assigned[w])
            .min_by_key(|&w| domains[w].count_ones())
            .expect("an unassigned vertex remains");
        self.assigned[v] = true;
        let mut candidates = domains[v];
        while candidates != 0 {
            let a = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            let mut next = domains.clone();
            let wiped = (0..self.n).any(|w| {
                if self.assigned[w] {
                    return false;
                }
                let rel = self.rel[v * self.n + w] as usize;
                next[w] &= self.engine.allowed[rel][a];
                next[w] == 0
            });
            if wiped {
                continue;
            }
            self.assignment[v] = a;
            if self.extend(depth + 1, next, visit).is_break() {
                self.assigned[v] = false;
                return ControlFlow::Break(());
            }
        }
        self.assigned[v] = false;
        ControlFlow::Continue(())
    }
}

fn first_solution(
    g: &Digraph,
    mat: &PartitionMatrix,
    lists: Option<&Lists>,
) -> Result<Option<Vec<usize>>> {
    let engine = Engine::new(mat)?;
    let mut found = None;
    engine.for_each(g, lists, |a| {
        found = Some(a.to_vec());
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// A homomorphism `g -> h` respecting `lists` (if given), or `None`.
pub fn find_hom(g: &Digraph, h: &Digraph, lists: Option<&Lists>) -> Result<Option<Certificate>> {
    let mat = PartitionMatrix::of_digraph(h);
    Ok(first_solution(g, &mat, lists)?.map(Certificate::homomorphism))
}

/// Calls `visit` on every list homomorphism `g -> h` until it breaks.
pub fn for_each_hom<F>(g: &Digraph, h: &Digraph, lists: Option<&Lists>, visit: F) -> Result<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    Engine::new(&PartitionMatrix::of_digraph(h))?.for_each(g, lists, visit)
}

/// Number of list homomorphisms `g -> h`, stopping early at `cap`.
pub fn count_homs(g: &Digraph, h: &Digraph, lists: Option<&Lists>, cap: usize) -> Result<usize> {
    let mut count = 0;
    for_each_hom(g, h, lists, |_| {
        count += 1;
        if count >= cap {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(count)
}

/// Retraction of `g` onto the copy of `h` given by `sub` (`sub[x]` is the
/// vertex of `g` playing `x`): embedded vertices are pinned, others are free.
pub fn find_retraction(g: &Digraph, sub: &[usize], h: &Digraph) -> Result<Option<Certificate>> {
    check_embedding(g, sub, h)?;
    let mut lists = Lists::full(g.n(), h.n());
    for (x, &gx) in sub.iter().enumerate() {
        lists.set(gx, vec![x]);
    }
    find_hom(g, h, Some(&lists))
}

fn check_embedding(g: &Digraph, sub: &[usize], h: &Digraph) -> Result<()> {
    if sub.len() != h.n() {
        return Err(Error::NotEmbedded(format!(
            "map has {} entries for {} target vertices",
            sub.len(),
            h.n()
        )));
    }
    if let Some(&v) = sub.iter().find(|&&v| v >= g.n()) {
        return Err(Error::NotEmbedded(format!("vertex {v} is out of range")));
    }
    let mut seen = vec![false; g.n()];
    for &v in sub {
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::NotEmbedded(format!("vertex {v} used twice")));
        }
    }
    if let Some((x, y)) = h.arcs().find(|&(x, y)| !g.has_arc(sub[x], sub[y])) {
        return Err(Error::NotEmbedded(format!("arc {x}->{y} is not preserved")));
    }
    Ok(())
}

/// An `M`-partition of `g`, parts restricted by `fixed` when given. Empty
/// parts are allowed.
pub fn find_mpartition(
    g: &Digraph,
    m: &PartitionMatrix,
    fixed: Option<&Lists>,
) -> Result<Option<Certificate>> {
    Ok(first_solution(g, m, fixed)?.map(Certificate::partition))
}

/// Partition of `g` into at most `k` parts each inducing an acyclic
/// subdigraph, by exhaustive search.
pub fn find_acyclic_partition(g: &Digraph, k: usize) -> Option<Certificate> {
    fn extend(g: &Digraph, k: usize, v: usize, assignment: &mut Vec<usize>) -> bool {
        if v == g.n() {
            return true;
        }
        // symmetry: part `p` may open only after parts `0..p` are used
        let opened = assignment.iter().copied().max().map_or(0, |p| p + 1);
        for p in 0..k.min(opened + 1) {
            assignment.push(p);
            let part: Vec<usize> = (0..=v).filter(|&u| assignment[u] == p).collect();
            if g.induced(&part).is_acyclic() && extend(g, k, v + 1, assignment) {
                return true;
            }
            assignment.pop();
        }
        false
    }
    let mut assignment = Vec::with_capacity(g.n());
    extend(g, k, 0, &mut assignment).then(|| Certificate::partition(assignment))
}

/// Checks every constraint of the relevant semantics.
pub fn verify(g: &Digraph, constraint: Constraint<'_>, cert: &Certificate) -> bool {
    let n = g.n();
    if cert.assignment.len() != n {
        return false;
    }
    match constraint {
        Constraint::Hom(h) => {
            cert.kind == CertificateKind::Homomorphism
                && cert.assignment.iter().all(|&t| t < h.n())
                && g.arcs().all(|(u, v)| h.has_arc(cert.assignment[u], cert.assignment[v]))
        }
        Constraint::Partition(mat) => {
            let f = &cert.assignment;
            cert.kind == CertificateKind::Partition
                && f.iter().all(|&p| p < mat.m())
                && (0..n).all(|u| {
                    (u + 1..n).all(|v| mat.admits_pair(f[u], f[v], g.has_arc(u, v), g.has_arc(v, u)))
                })
        }
        Constraint::AcyclicParts(k) => {
            cert.kind == CertificateKind::Partition
                && cert.assignment.iter().all(|&p| p < k)
                && cert
                    .parts(k)
                    .iter()
                    .all(|part| g.induced(part).is_acyclic())
        }
    }
}

/// Like [`verify`] and additionally checks list membership.
pub fn verify_with_lists(
    g: &Digraph,
    constraint: Constraint<'_>,
    lists: &Lists,
    cert: &Certificate,
) -> bool {
    verify(g, constraint, cert)
        && lists.0.len() == g.n()
        && cert
            .assignment
            .iter()
            .enumerate()
            .all(|(v, t)| lists.get(v).contains(t))
}
