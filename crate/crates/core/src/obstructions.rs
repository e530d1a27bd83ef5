//! Minimal obstructions among transitive digraphs.
//!
//! A minimal obstruction for a hereditary problem is a digraph that fails the
//! problem while every one-vertex-deleted subdigraph passes. Catalogues are
//! built by scanning every transitive digraph up to a given order with the
//! exhaustive oracles; each item carries, for every vertex, a certificate for
//! the subdigraph with that vertex removed.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::enumerate::{enumerate_transitive, ENUMERATION_BOUND};
use crate::error::{Error, Result};
use crate::matrix::PartitionMatrix;
use crate::search::{
    find_acyclic_partition, find_hom, find_mpartition, verify, Certificate, Constraint,
    MAX_TARGETS,
};

/// The predicate being obstructed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Problem {
    /// Homomorphism to a fixed digraph.
    Hom { target: Digraph },
    /// Matrix partition.
    Mpartition { matrix: PartitionMatrix },
    /// Partition into `k` independent sets and `l` strong cliques.
    Kl { k: usize, l: usize },
    /// Partition into `k` parts each inducing an acyclic subdigraph.
    Dichromatic { k: usize },
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Problem::Hom { target } => write!(f, "hom to {target:?}"),
            Problem::Mpartition { matrix } => write!(f, "{matrix:?}-partition"),
            Problem::Kl { k, l } => write!(f, "({k},{l})-colouring"),
            Problem::Dichromatic { k } => write!(f, "acyclic {k}-colouring"),
        }
    }
}

impl Problem {
    pub fn hom(target: Digraph) -> Result<Self> {
        check_targets(target.n())?;
        Ok(Problem::Hom { target })
    }

    pub fn mpartition(matrix: PartitionMatrix) -> Result<Self> {
        check_targets(matrix.m())?;
        Ok(Problem::Mpartition { matrix })
    }

    pub fn kl(k: usize, l: usize) -> Result<Self> {
        check_targets(k + l)?;
        Ok(Problem::Kl { k, l })
    }

    pub fn dichromatic(k: usize) -> Result<Self> {
        Ok(Problem::Dichromatic { k })
    }

    fn matrix(&self) -> Option<PartitionMatrix> {
        match self {
            Problem::Hom { .. } | Problem::Dichromatic { .. } => None,
            Problem::Mpartition { matrix } => Some(matrix.clone()),
            Problem::Kl { k, l } => Some(PartitionMatrix::kl(*k, *l)),
        }
    }

    /// Decides the problem on `g` with the exhaustive oracles.
    pub fn solve(&self, g: &Digraph) -> Result<Option<Certificate>> {
        match self {
            Problem::Hom { target } => find_hom(g, target, None),
            Problem::Dichromatic { k } => Ok(find_acyclic_partition(g, *k)),
            _ => find_mpartition(g, &self.matrix().expect("matrix problem"), None),
        }
    }

    pub fn verify(&self, g: &Digraph, cert: &Certificate) -> bool {
        match self {
            Problem::Hom { target } => verify(g, Constraint::Hom(target), cert),
            Problem::Dichromatic { k } => verify(g, Constraint::AcyclicParts(*k), cert),
            _ => verify(
                g,
                Constraint::Partition(&self.matrix().expect("matrix problem")),
                cert,
            ),
        }
    }
}

fn check_targets(m: usize) -> Result<()> {
    if m > MAX_TARGETS {
        return Err(Error::TooLarge {
            what: "problem template",
            size: m,
            bound: MAX_TARGETS,
        });
    }
    Ok(())
}

/// Certificate for `G - removed`, in the vertex labels of `G - removed`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub removed: usize,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogueItem {
    pub n: usize,
    pub arcs: Vec<(usize, usize)>,
    pub witnesses: Vec<Witness>,
}

impl CatalogueItem {
    pub fn digraph(&self) -> Digraph {
        Digraph::from_arcs(self.n, self.arcs.iter().copied()).expect("catalogue arcs are valid")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionCatalogue {
    pub problem: Problem,
    pub n_max: usize,
    pub items: Vec<CatalogueItem>,
}

impl ObstructionCatalogue {
    pub fn digraphs(&self) -> Vec<Digraph> {
        self.items.iter().map(CatalogueItem::digraph).collect()
    }

    pub fn max_size(&self) -> Option<usize> {
        self.items.iter().map(|i| i.n).max()
    }

    /// Re-checks every item: the problem fails on it and each witness is a
    /// valid certificate for the corresponding vertex-deleted subdigraph.
    pub fn validate(&self) -> Result<bool> {
        for item in &self.items {
            let g = item.digraph();
            if self.problem.solve(&g)?.is_some() || item.witnesses.len() != g.n() {
                return Ok(false);
            }
            for (v, w) in item.witnesses.iter().enumerate() {
                if w.removed != v || !self.problem.verify(&g.remove_vertex(v), &w.certificate) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Minimality witnesses when `g` is a minimal obstruction, else `None`.
fn minimality_witnesses(g: &Digraph, problem: &Problem) -> Result<Option<Vec<Witness>>> {
    if problem.solve(g)?.is_some() {
        return Ok(None);
    }
    let mut witnesses = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        match problem.solve(&g.remove_vertex(v))? {
            Some(certificate) => witnesses.push(Witness {
                removed: v,
                certificate,
            }),
            None => return Ok(None),
        }
    }
    Ok(Some(witnesses))
}

/// Whether `g` fails `problem` while every `g - v` passes.
pub fn is_minimal_obstruction(g: &Digraph, problem: &Problem) -> Result<bool> {
    if !g.is_transitive() {
        return Err(Error::PreconditionViolated("input is not transitive".into()));
    }
    Ok(minimality_witnesses(g, problem)?.is_some())
}

/// All minimal obstructions among transitive digraphs with at most `n_max`
/// vertices, in canonical labelling, ordered by size then canonical key.
pub fn find_obstructions(problem: &Problem, n_max: usize) -> Result<ObstructionCatalogue> {
    if n_max > ENUMERATION_BOUND {
        return Err(Error::TooLarge {
            what: "obstruction scan order",
            size: n_max,
            bound: ENUMERATION_BOUND,
        });
    }
    let mut items = Vec::new();
    for n in 1..=n_max {
        let candidates = enumerate_transitive(n)?;
        let found: Vec<Option<CatalogueItem>> = candidates
            .par_iter()
            .map(|g| {
                Ok(minimality_witnesses(g, problem)?.map(|witnesses| CatalogueItem {
                    n: g.n(),
                    arcs: g.arcs().collect(),
                    witnesses,
                }))
            })
            .collect::<Result<_>>()?;
        items.extend(found.into_iter().flatten());
    }
    Ok(ObstructionCatalogue {
        problem: problem.clone(),
        n_max,
        items,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundVerdict {
    Consistent,
    CounterexampleFound,
}

/// Evidence on whether every minimal `(k, l)`-obstruction has at most
/// `(k+1)(l+1)` vertices. Never a proof: only orders up to `n_max` are seen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KlBoundReport {
    pub k: usize,
    pub l: usize,
    pub n_max: usize,
    pub bound: usize,
    pub obstruction_count: usize,
    /// Largest obstruction found, 0 when none was found.
    pub max_obstruction_size: usize,
    /// Number of obstructions per order.
    pub sizes: BTreeMap<usize, usize>,
    /// Whether the scan reached orders above the bound, where a
    /// counterexample would have to live.
    pub scan_exceeds_bound: bool,
    pub counterexamples: Vec<Digraph>,
    pub verdict: BoundVerdict,
}

impl KlBoundReport {
    /// The verdict, counts and histogram agree with each other.
    pub fn is_consistent(&self) -> bool {
        let hist_total: usize = self.sizes.values().sum();
        let hist_max = self.sizes.keys().copied().max().unwrap_or(0);
        let over = self.sizes.range(self.bound + 1..).map(|(_, c)| c).sum::<usize>();
        hist_total == self.obstruction_count
            && hist_max == self.max_obstruction_size
            && over == self.counterexamples.len()
            && self.bound == (self.k + 1) * (self.l + 1)
            && (self.verdict == BoundVerdict::Consistent) == (self.max_obstruction_size <= self.bound)
    }
}

pub fn check_kl_bound(k: usize, l: usize, n_max: usize) -> Result<KlBoundReport> {
    let catalogue = find_obstructions(&Problem::kl(k, l)?, n_max)?;
    let bound = (k + 1) * (l + 1);
    let mut sizes = BTreeMap::new();
    for item in &catalogue.items {
        *sizes.entry(item.n).or_insert(0) += 1;
    }
    let counterexamples: Vec<Digraph> = catalogue
        .items
        .iter()
        .filter(|i| i.n > bound)
        .map(CatalogueItem::digraph)
        .collect();
    let max_obstruction_size = catalogue.max_size().unwrap_or(0);
    Ok(KlBoundReport {
        k,
        l,
        n_max,
        bound,
        obstruction_count: catalogue.items.len(),
        max_obstruction_size,
        sizes,
        scan_exceeds_bound: n_max > bound,
        verdict: if counterexamples.is_empty() {
            BoundVerdict::Consistent
        } else {
            BoundVerdict::CounterexampleFound
        },
        counterexamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;

    fn keys(ds: &[Digraph]) -> Vec<crate::CanonicalForm> {
        let mut k: Vec<_> = ds.iter().map(|d| canonical_form(d).unwrap()).collect();
        k.sort();
        k
    }

    #[test]
    fn minimality_examples() {
        let digon = Problem::hom(Digraph::digon()).unwrap();
        assert!(is_minimal_obstruction(&Digraph::transitive_tournament(3), &digon).unwrap());
        let kl30 = Problem::kl(3, 0).unwrap();
        assert!(is_minimal_obstruction(&Digraph::transitive_tournament(4), &kl30).unwrap());
        let kl01 = Problem::kl(0, 1).unwrap();
        assert!(is_minimal_obstruction(&Digraph::empty(2), &kl01).unwrap());
        // TT4 fails hom-to-digon but is not minimal
        assert!(!is_minimal_obstruction(&Digraph::transitive_tournament(4), &digon).unwrap());
    }

    #[test]
    fn requires_transitive_input() {
        let path = Digraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        assert!(is_minimal_obstruction(&path, &Problem::kl(1, 0).unwrap()).is_err());
    }

    #[test]
    fn tt2_catalogue() {
        let p = Problem::hom(Digraph::transitive_tournament(2)).unwrap();
        let cat = find_obstructions(&p, 5).unwrap();
        assert_eq!(
            keys(&cat.digraphs()),
            keys(&[Digraph::digon(), Digraph::transitive_tournament(3)])
        );
        assert!(cat.validate().unwrap());
    }

    #[test]
    fn digon_catalogue_is_the_semicomplete_triples() {
        let p = Problem::hom(Digraph::digon()).unwrap();
        let cat = find_obstructions(&p, 5).unwrap();
        let expected: Vec<Digraph> = enumerate_transitive(3)
            .unwrap()
            .into_iter()
            .filter(Digraph::is_semicomplete)
            .collect();
        assert_eq!(expected.len(), 4);
        assert_eq!(keys(&cat.digraphs()), keys(&expected));
    }

    #[test]
    fn k1_catalogue() {
        let cat = find_obstructions(&Problem::kl(1, 0).unwrap(), 4).unwrap();
        assert_eq!(
            keys(&cat.digraphs()),
            keys(&[Digraph::digon(), Digraph::transitive_tournament(2)])
        );
    }

    #[test]
    fn scan_bound() {
        assert!(find_obstructions(&Problem::kl(1, 0).unwrap(), 9).is_err());
    }

    #[test]
    fn kl_reports_are_consistent() {
        let r = check_kl_bound(1, 1, 6).unwrap();
        assert!(r.max_obstruction_size <= 4);
        assert_eq!(r.verdict, BoundVerdict::Consistent);
        assert!(r.is_consistent());
        let r = check_kl_bound(0, 2, 6).unwrap();
        assert!(r.max_obstruction_size <= 3);
        assert!(r.is_consistent());
    }

    #[test]
    fn catalogue_json_shape() {
        let p = Problem::hom(Digraph::transitive_tournament(2)).unwrap();
        let cat = find_obstructions(&p, 3).unwrap();
        let v: serde_json::Value = serde_json::to_value(&cat).unwrap();
        assert_eq!(v["n_max"], 3);
        assert_eq!(v["problem"]["kind"], "hom");
        let item = &v["items"][0];
        assert!(item["n"].is_u64() && item["arcs"].is_array() && item["witnesses"].is_array());
        let back: ObstructionCatalogue = serde_json::from_value(v).unwrap();
        assert_eq!(back, cat);
    }
}
