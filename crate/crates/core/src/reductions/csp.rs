use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bipartite::{BipartiteInstance, Vertex};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::matrix::{Entry, PartitionMatrix};

/// Name of a part in the matrices built from a bipartite graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PartLabel {
    White(usize),
    /// Copy `copy` (1-based) of a black vertex.
    Black { vertex: usize, copy: usize },
}

impl fmt::Display for PartLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartLabel::White(w) => write!(f, "w{w}"),
            PartLabel::Black { vertex, copy } => write!(f, "b{vertex}.{copy}"),
        }
    }
}

fn require_domination_free(h: &BipartiteInstance) -> Result<()> {
    match h.dominated_pair() {
        Some((a, b)) => Err(Error::NotDominationFree(a, b)),
        None => Ok(()),
    }
}

/// Whites first, then `copies` parts per black vertex; `*` from a white to
/// every copy of each of its neighbours, `0` elsewhere.
fn weak_skeleton(h: &BipartiteInstance, copies: usize) -> (PartitionMatrix, Vec<PartLabel>) {
    let mut labels: Vec<PartLabel> = (0..h.whites()).map(PartLabel::White).collect();
    for vertex in 0..h.blacks() {
        labels.extend((1..=copies).map(|copy| PartLabel::Black { vertex, copy }));
    }
    let mut m = PartitionMatrix::filled(labels.len(), Entry::Zero);
    for &(w, b) in h.edges() {
        for c in 0..copies {
            m.set(w, h.whites() + b * copies + c, Entry::Star);
        }
    }
    (m, labels)
}

/// Each black vertex becomes three parts, the first two joined by a strong
/// digon.
pub fn build_csp_matrix(h: &BipartiteInstance) -> Result<(PartitionMatrix, Vec<PartLabel>)> {
    require_domination_free(h)?;
    let (mut m, labels) = weak_skeleton(h, 3);
    for b in 0..h.blacks() {
        let first = h.whites() + 3 * b;
        m.set(first, first + 1, Entry::One);
        m.set(first + 1, first, Entry::One);
    }
    Ok((m, labels))
}

/// Each black vertex becomes two parts, the second a strong clique.
pub fn build_loops_matrix(h: &BipartiteInstance) -> Result<(PartitionMatrix, Vec<PartLabel>)> {
    require_domination_free(h)?;
    let (mut m, labels) = weak_skeleton(h, 2);
    for b in 0..h.blacks() {
        let second = h.whites() + 2 * b + 1;
        m.set(second, second, Entry::One);
    }
    Ok((m, labels))
}

/// Orients `g` from white to black and doubles every black vertex of the
/// marked copy of `h` into a digon. The new twins are appended after the
/// vertices of `g`, in the order of the black vertices of `h`.
pub fn transform_csp_instance(g: &BipartiteInstance, h: &BipartiteInstance) -> Result<Digraph> {
    let map = g.embedding_of(h)?;
    let base = g.oriented();
    let doubled = &map[h.whites()..];
    let n = g.order() + doubled.len();
    let mut arcs: Vec<(usize, usize)> = base.arcs().collect();
    for (i, &x) in doubled.iter().enumerate() {
        let twin = g.order() + i;
        arcs.extend([(x, twin), (twin, x)]);
        arcs.extend(base.in_neighbours(x).map(|u| (u, twin)));
    }
    Digraph::from_arcs(n, arcs)
}

/// The bipartite list instances whose solutions together cover the
/// `m`-partitions of `gp`, where `m` is the matrix of [`build_csp_matrix`].
///
/// Parts of the matrix only admit arcs from white parts to black parts and
/// between the two strong copies of one black vertex. So every digon of `gp`
/// takes the strong pair of a distinct black vertex, a vertex with outgoing
/// arcs is white and one with incoming arcs is black. Each injective choice
/// of black vertices for the digons gives one instance, in which each digon
/// is contracted to a black vertex listed to its choice. When `gp` has a
/// strong component of three or more vertices, a digon with outgoing arcs,
/// or a vertex with arcs both in and out, there are no instances.
pub fn expand_turing(
    gp: &Digraph,
    m: &PartitionMatrix,
    h: &BipartiteInstance,
) -> Result<Vec<BipartiteInstance>> {
    if !gp.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let (expected, _) = build_csp_matrix(h)?;
    if *m != expected {
        return Err(Error::PreconditionViolated(
            "matrix is not the one built from the bipartite graph".into(),
        ));
    }
    let comps = gp.strong_components();
    if comps.iter().any(|c| c.len() >= 3) {
        return Ok(Vec::new());
    }

    let mut comp_of = vec![0; gp.n()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let outside = |c: &[usize], out: bool| {
        let v = c[0];
        (0..gp.n()).any(|u| comp_of[u] != comp_of[v] && if out { gp.has_arc(v, u) } else { gp.has_arc(u, v) })
    };
    let mut whites = Vec::new();
    let mut blacks = Vec::new();
    let mut digons = Vec::new();
    for (i, c) in comps.iter().enumerate() {
        let (has_out, has_in) = (outside(c, true), outside(c, false));
        if has_out && (has_in || c.len() == 2) {
            return Ok(Vec::new());
        }
        if c.len() == 2 {
            digons.push(blacks.len());
            blacks.push(i);
        } else if has_in {
            blacks.push(i);
        } else {
            whites.push(i);
        }
    }
    let mut edges = Vec::new();
    for (w, &cw) in whites.iter().enumerate() {
        for (b, &cb) in blacks.iter().enumerate() {
            if gp.has_arc(comps[cw][0], comps[cb][0]) {
                edges.push((w, b));
            }
        }
    }
    let base = BipartiteInstance::new(whites.len(), blacks.len(), edges)?;

    digons
        .iter()
        .map(|_| 0..h.blacks())
        .multi_cartesian_product()
        .filter(|choice| choice.iter().all_unique())
        .map(|choice| {
            let lists = digons
                .iter()
                .zip(&choice)
                .map(|(&b, &x)| (Vertex::Black(b), vec![Vertex::Black(x)]))
                .collect();
            base.clone().with_lists(lists)
        })
        .collect()
}

/// Decides the `m`-partition problem for `gp` through [`expand_turing`],
/// solving the instances in parallel.
pub fn decide_turing(gp: &Digraph, m: &PartitionMatrix, h: &BipartiteInstance) -> Result<bool> {
    let instances = expand_turing(gp, m, h)?;
    let verdicts = instances
        .par_iter()
        .map(|inst| Ok(inst.listed_hom(h)?.is_some()))
        .collect::<Result<Vec<bool>>>()?;
    Ok(verdicts.into_iter().any(|v| v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::find_mpartition;

    #[test]
    fn single_edge_csp_matrix() {
        let (m, labels) = build_csp_matrix(&BipartiteInstance::single_edge()).unwrap();
        assert_eq!(m, PartitionMatrix::from_strs(&["0***", "0010", "0100", "0000"]).unwrap());
        let names: Vec<String> = labels.iter().map(ToString::to_string).collect();
        assert_eq!(names, ["w0", "b0.1", "b0.2", "b0.3"]);
    }

    #[test]
    fn single_edge_loops_matrix() {
        let (m, _) = build_loops_matrix(&BipartiteInstance::single_edge()).unwrap();
        assert_eq!(m, PartitionMatrix::from_strs(&["0**", "000", "001"]).unwrap());
    }

    #[test]
    fn dominated_targets_rejected() {
        let p4 = BipartiteInstance::path4();
        assert!(matches!(build_csp_matrix(&p4), Err(Error::NotDominationFree(0, 1))));
        assert!(build_loops_matrix(&p4).is_err());
    }

    #[test]
    fn csp_matrix_shape() {
        let (m, _) = build_csp_matrix(&BipartiteInstance::cycle6()).unwrap();
        assert_eq!(m.m(), 12);
        assert!(m.diagonal_all(Entry::Zero));
        let ones: Vec<(usize, usize)> = (0..12)
            .flat_map(|a| (0..12).map(move |b| (a, b)))
            .filter(|&(a, b)| m.get(a, b) == Entry::One)
            .collect();
        assert_eq!(ones.len(), 6);
        assert!(ones.iter().all(|&(a, b)| m.get(b, a) == Entry::One));
    }

    #[test]
    fn single_edge_transform() {
        let h = BipartiteInstance::single_edge();
        let d = transform_csp_instance(&h.embedded_identity(), &h).unwrap();
        assert_eq!(d, Digraph::from_arcs(3, [(0, 1), (0, 2), (1, 2), (2, 1)]).unwrap());
        assert!(d.is_transitive());
    }

    #[test]
    fn turing_instance_counts() {
        let h = BipartiteInstance::single_edge();
        let (m, _) = build_csp_matrix(&h).unwrap();
        let tt2 = Digraph::transitive_tournament(2);
        assert_eq!(expand_turing(&tt2, &m, &h).unwrap().len(), 1);
        let two = Digraph::digon().disjoint_union(&Digraph::digon());
        assert!(expand_turing(&two, &m, &h).unwrap().is_empty());
        assert!(expand_turing(&Digraph::strong_clique(3), &m, &h).unwrap().is_empty());
    }

    #[test]
    fn digon_with_an_out_arc() {
        // a digon dominating a sink cannot sit in the strong parts
        let h = BipartiteInstance::single_edge();
        let (m, _) = build_csp_matrix(&h).unwrap();
        let g = Digraph::from_arcs(3, [(0, 1), (1, 0), (0, 2), (1, 2)]).unwrap();
        assert!(find_mpartition(&g, &m, None).unwrap().is_none());
        assert!(!decide_turing(&g, &m, &h).unwrap());
    }
}
