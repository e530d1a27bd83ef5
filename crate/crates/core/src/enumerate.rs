//! Isomorphism-free enumeration of transitive digraphs.
//!
//! Transitive digraphs on `n` vertices are generated from their condensations:
//! strict posets on `p <= n` elements (up to isomorphism), each with every
//! assignment of positive multiplicities summing to `n`. Different
//! multiplicity assignments on one poset may replicate to isomorphic
//! digraphs, so the replicated digraphs are deduplicated by canonical form.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::canon::{canonical_form, CanonicalForm, CANONICAL_BOUND};
use crate::condensation::Condensation;
use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// Largest order accepted by [`enumerate_transitive`].
pub const ENUMERATION_BOUND: usize = CANONICAL_BOUND;

fn check_bound(n: usize) -> Result<()> {
    if n > ENUMERATION_BOUND {
        Err(Error::TooLarge {
            what: "enumeration order",
            size: n,
            bound: ENUMERATION_BOUND,
        })
    } else {
        Ok(())
    }
}

/// Strict posets on `p` elements up to isomorphism, as acyclic transitive
/// digraphs in canonical labelling, sorted by canonical key.
///
/// Every poset on `p + 1` elements is a poset on `p` elements plus a new
/// maximal element sitting above a down-closed set, so each level is built
/// from the previous one.
pub fn posets(p: usize) -> Result<Vec<Digraph>> {
    Ok(poset_levels(p)?.pop().expect("level 0 always present"))
}

/// `posets(0), ..., posets(p)` in one pass.
fn poset_levels(p: usize) -> Result<Vec<Vec<Digraph>>> {
    check_bound(p)?;
    let mut level: BTreeSet<CanonicalForm> = BTreeSet::new();
    level.insert(canonical_form(&Digraph::empty(0))?);
    let mut levels = vec![vec![Digraph::empty(0)]];
    for size in 0..p {
        let next: BTreeSet<CanonicalForm> = level
            .par_iter()
            .flat_map_iter(|key| {
                let base = key.to_digraph();
                down_sets(&base)
                    .into_iter()
                    .map(move |below| {
                        let mut d = base.disjoint_union(&Digraph::empty(1));
                        for u in below {
                            d.add_arc(u, size);
                        }
                        canonical_form(&d).expect("within bound")
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        level = next;
        levels.push(level.iter().map(|k| k.to_digraph()).collect());
    }
    Ok(levels)
}

/// Down-closed vertex sets of a strict poset: if `v` is in the set, so is
/// every `u` with `u -> v`.
fn down_sets(poset: &Digraph) -> Vec<Vec<usize>> {
    let n = poset.n();
    (0u32..1 << n)
        .filter(|&mask| {
            (0..n)
                .filter(|&v| mask >> v & 1 == 1)
                .all(|v| poset.in_neighbours(v).all(|u| mask >> u & 1 == 1))
        })
        .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect())
        .collect()
}

/// Ordered compositions of `n` into `parts` positive summands.
pub(crate) fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, parts: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if left == 0 {
                out.push(current.clone());
            }
            return;
        }
        for k in 1..=left.saturating_sub(parts - 1) {
            current.push(k);
            go(left - k, parts - 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(n, parts, &mut Vec::new(), &mut out);
    out
}

/// One canonical representative of every isomorphism class of transitive
/// digraphs on `n` vertices, sorted by canonical key.
pub fn enumerate_transitive(n: usize) -> Result<Vec<Digraph>> {
    Ok(enumerate_transitive_keys(n)?
        .into_iter()
        .map(|k| k.to_digraph())
        .collect())
}

/// Canonical keys of all transitive digraphs on `n` vertices, sorted.
pub fn enumerate_transitive_keys(n: usize) -> Result<Vec<CanonicalForm>> {
    check_bound(n)?;
    if n == 0 {
        return Ok(vec![canonical_form(&Digraph::empty(0))?]);
    }
    let jobs: Vec<Digraph> = poset_levels(n)?.into_iter().skip(1).flatten().collect();
    let keys: BTreeSet<CanonicalForm> = jobs
        .par_iter()
        .flat_map_iter(|skeleton| {
            compositions(n, skeleton.n())
                .into_iter()
                .map(|mult| {
                    let c = Condensation::new(skeleton.clone(), mult)
                        .expect("posets are acyclic and transitive");
                    canonical_form(&c.replicate()).expect("within bound")
                })
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(keys.into_iter().collect())
}

/// All transitive digraphs with `1..=n_max` vertices, smaller orders first.
pub fn enumerate_transitive_upto(n_max: usize) -> Result<Vec<Digraph>> {
    let mut all = Vec::new();
    for n in 1..=n_max {
        all.extend(enumerate_transitive(n)?);
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_transitive(1).unwrap().len(), 1);
        assert_eq!(enumerate_transitive(2).unwrap().len(), 3);
        assert_eq!(enumerate_transitive(3).unwrap().len(), 9);
    }

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = (0..=5).map(|p| posets(p).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn compositions_of_four() {
        assert_eq!(compositions(4, 2), vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
        assert_eq!(compositions(3, 3), vec![vec![1, 1, 1]]);
        assert!(compositions(2, 3).is_empty());
    }

    #[test]
    fn bound_enforced() {
        assert!(matches!(
            enumerate_transitive(9),
            Err(Error::TooLarge { size: 9, .. })
        ));
    }

    #[test]
    fn emitted_digraphs_are_transitive() {
        for d in enumerate_transitive_upto(5).unwrap() {
            assert!(d.is_transitive(), "{d:?}");
        }
    }
}
