//! Isomorphism-invariant keys for small digraphs.
//!
//! Vertices are first split into cells by iterated degree refinement; the key
//! is then the smallest adjacency code over all labellings that respect the
//! cell order. Two digraphs get equal keys iff they are isomorphic, because
//! the code is itself the adjacency matrix of a relabelling.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// Largest order accepted by [`canonical_form`].
pub const CANONICAL_BOUND: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    n: u8,
    code: u64,
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Canon({}:{:#x})", self.n, self.code)
    }
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// The canonical representative of the isomorphism class.
    pub fn to_digraph(&self) -> Digraph {
        let n = self.n as usize;
        let total = n * n.saturating_sub(1);
        let mut d = Digraph::empty(n);
        let mut bit = total;
        for i in 1..n {
            for j in 0..i {
                bit -= 1;
                if self.code >> bit & 1 == 1 {
                    d.add_arc(j, i);
                }
                bit -= 1;
                if self.code >> bit & 1 == 1 {
                    d.add_arc(i, j);
                }
            }
        }
        d
    }
}

/// Canonical key of `d`; fails with `TooLarge` above [`CANONICAL_BOUND`].
pub fn canonical_form(d: &Digraph) -> Result<CanonicalForm> {
    canonical_labelling(d).map(|(c, _)| c)
}

/// Canonical relabelling of `d`.
pub fn canonical_digraph(d: &Digraph) -> Result<Digraph> {
    canonical_form(d).map(|c| c.to_digraph())
}

/// Returns the key together with a labelling `order` such that vertex
/// `order[i]` of `d` sits at position `i` of the canonical representative.
pub fn canonical_labelling(d: &Digraph) -> Result<(CanonicalForm, Vec<usize>)> {
    let n = d.n();
    if n > CANONICAL_BOUND {
        return Err(Error::TooLarge {
            what: "digraph for canonical form",
            size: n,
            bound: CANONICAL_BOUND,
        });
    }
    let colour = refine(d);
    let mut sorted: Vec<usize> = (0..n).collect();
    sorted.sort_by_key(|&v| (colour[v], v));
    let cell: Vec<usize> = sorted.iter().map(|&v| colour[v]).collect();
    let twin_rep = twin_representatives(d);

    let mut search = Search {
        d,
        colour: &colour,
        cell: &cell,
        twin_rep: &twin_rep,
        total: n * n.saturating_sub(1),
        perm: Vec::with_capacity(n),
        used: vec![false; n],
        best: None,
    };
    search.run(0, 0);
    let (code, order) = search.best.unwrap_or((0, Vec::new()));
    Ok((CanonicalForm { n: n as u8, code }, order))
}

struct Search<'a> {
    d: &'a Digraph,
    colour: &'a [usize],
    cell: &'a [usize],
    twin_rep: &'a [usize],
    total: usize,
    perm: Vec<usize>,
    used: Vec<bool>,
    best: Option<(u64, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, pos: usize, prefix: u64) {
        let n = self.d.n();
        if pos == n {
            if self.best.as_ref().map_or(true, |(b, _)| prefix < *b) {
                self.best = Some((prefix, self.perm.clone()));
            }
            return;
        }
        for v in 0..n {
            if self.used[v] || self.colour[v] != self.cell[pos] {
                continue;
            }
            // interchangeable with an unused twin of smaller index
            let rep = self.twin_rep[v];
            if rep != v && !self.used[rep] {
                continue;
            }
            let mut code = prefix;
            for &u in &self.perm {
                code = code << 1 | self.d.has_arc(u, v) as u64;
                code = code << 1 | self.d.has_arc(v, u) as u64;
            }
            let known = (pos + 1) * pos;
            if let Some((b, _)) = &self.best {
                let shift = self.total - known;
                let bound = if shift >= 64 { 0 } else { b >> shift };
                if code > bound {
                    continue;
                }
            }
            self.used[v] = true;
            self.perm.push(v);
            self.run(pos + 1, code);
            self.perm.pop();
            self.used[v] = false;
        }
    }
}

/// Colour refinement: start from degree data, then split by the multisets of
/// neighbour colours until stable. Colours are ranks of signatures, so the
/// result does not depend on the labelling.
fn refine(d: &Digraph) -> Vec<usize> {
    let n = d.n();
    let initial: Vec<(usize, usize, usize)> = (0..n)
        .map(|v| {
            let digons = (0..n).filter(|&u| u != v && d.is_digon(u, v)).count();
            (d.out_degree(v), d.in_degree(v), digons)
        })
        .collect();
    let mut colour = ranks(&initial);
    let mut classes = count_classes(&colour);
    loop {
        let sigs: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut outs: Vec<usize> = d.out_neighbours(v).map(|u| colour[u]).collect();
                let mut ins: Vec<usize> = d.in_neighbours(v).map(|u| colour[u]).collect();
                outs.sort_unstable();
                ins.sort_unstable();
                (colour[v], outs, ins)
            })
            .collect();
        let next = ranks(&sigs);
        let next_classes = count_classes(&next);
        colour = next;
        if next_classes == classes {
            return colour;
        }
        classes = next_classes;
    }
}

fn ranks<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut distinct: Vec<T> = sigs.to_vec();
    distinct.sort();
    distinct.dedup();
    sigs.iter()
        .map(|s| distinct.binary_search(s).expect("signature present"))
        .collect()
}

fn count_classes(colour: &[usize]) -> usize {
    let mut c = colour.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Smallest vertex in each class of twins. Twins have identical arcs to and
/// from every other vertex, so swapping two of them is an automorphism.
fn twin_representatives(d: &Digraph) -> Vec<usize> {
    let n = d.n();
    let twins = |u: usize, v: usize| {
        d.has_arc(u, v) == d.has_arc(v, u)
            && (0..n)
                .filter(|&w| w != u && w != v)
                .all(|w| d.has_arc(u, w) == d.has_arc(v, w) && d.has_arc(w, u) == d.has_arc(w, v))
    };
    (0..n)
        .map(|v| (0..v).find(|&u| twins(u, v)).unwrap_or(v))
        .collect()
}
