//! The four-vertex target with infinitely many transitive minimal
//! obstructions whose colouring problem still reduces to 2-SAT.
//!
//! The target has a strong digon `{a, b}`, a sink `x` dominated by both
//! digon vertices and a source `y` dominating both. There is no arc between
//! `x` and `y`. This arc set is a reconstruction: it is the digraph forced by
//! the decoding of the 2-SAT variables (sinks sent to `x`, sources to `y`,
//! everything else 2-coloured onto the digon), and adding the arc `xy` makes
//! it semi-complete.

use std::collections::VecDeque;

use super::require_transitive;
use crate::condensation::condense_with_components;
use crate::digraph::Digraph;
use crate::error::Result;
use crate::search::{verify, Certificate, Constraint};
use crate::twosat::{solve_2sat, Literal, TwoSatInstance};

pub const FIG2_A: usize = 0;
pub const FIG2_B: usize = 1;
pub const FIG2_X: usize = 2;
pub const FIG2_Y: usize = 3;

/// `a <-> b`, `a -> x`, `b -> x`, `y -> a`, `y -> b`.
pub fn fig2_target() -> Digraph {
    Digraph::from_arcs(
        4,
        [
            (FIG2_A, FIG2_B),
            (FIG2_B, FIG2_A),
            (FIG2_A, FIG2_X),
            (FIG2_B, FIG2_X),
            (FIG2_Y, FIG2_A),
            (FIG2_Y, FIG2_B),
        ],
    )
    .expect("valid fixed target")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Source,
    Sink,
    Intermediate,
}

/// Colours a transitive digraph into [`fig2_target`] through 2-SAT.
pub fn hom_fig2(g: &Digraph) -> Result<Option<Certificate>> {
    require_transitive(g, "input")?;
    let n = g.n();
    let (cond, comps) = condense_with_components(g)?;

    // no strong triangle, no semi-complete subdigraph on four vertices
    if cond.multiplicity().iter().any(|&k| k >= 3) || cond.max_weighted_chain() >= 4 {
        return Ok(None);
    }

    let isolated: Vec<bool> = (0..n).map(|v| g.is_isolated(v)).collect();
    // one representative per digon survives; its partner is set aside
    let mut contracted = vec![false; n];
    let mut partner = vec![false; n];
    for comp in comps.iter().filter(|c| c.len() == 2) {
        contracted[comp[0]] = true;
        partner[comp[1]] = true;
    }
    let kept: Vec<usize> = (0..n).filter(|&v| !isolated[v] && !partner[v]).collect();
    let is_kept = |v: usize| !isolated[v] && !partner[v];

    let mut role = vec![Role::Intermediate; n];
    for &v in &kept {
        let has_in = kept.iter().any(|&u| g.has_arc(u, v));
        let has_out = kept.iter().any(|&w| g.has_arc(v, w));
        role[v] = if !has_in {
            Role::Source
        } else if !has_out {
            Role::Sink
        } else {
            Role::Intermediate
        };
    }

    let mut var = vec![usize::MAX; n];
    let mut vars = 0;
    for &v in &kept {
        if role[v] != Role::Intermediate {
            var[v] = vars;
            vars += 1;
        }
    }
    let mut sat = TwoSatInstance::new(vars);
    for &w in &kept {
        if contracted[w] && role[w] != Role::Intermediate {
            sat.add_unit(Literal::neg(var[w]));
        }
    }
    for &u in kept.iter().filter(|&&u| role[u] == Role::Source) {
        for v in g.out_neighbours(u) {
            if !is_kept(v) || role[v] != Role::Sink {
                continue;
            }
            if !contracted[u] && !contracted[v] {
                sat.add_clause(Literal::neg(var[u]), Literal::neg(var[v]));
            }
            // the middle vertex ranges over all of G, digon partners included
            let middle = (0..n).any(|w| w != u && w != v && g.has_arc(u, w) && g.has_arc(w, v));
            if middle {
                sat.add_clause(Literal::pos(var[u]), Literal::pos(var[v]));
            }
        }
    }

    let Some(values) = solve_2sat(&sat) else {
        return Ok(None);
    };

    let mut image = vec![FIG2_A; n];
    let mut rest = Vec::new();
    for v in 0..n {
        if isolated[v] {
            continue;
        }
        match (is_kept(v), role[v]) {
            (true, Role::Sink) if values[var[v]] => image[v] = FIG2_X,
            (true, Role::Source) if values[var[v]] => image[v] = FIG2_Y,
            _ => rest.push(v),
        }
    }
    let Some(sides) = two_colour(g, &rest) else {
        log::warn!("2-SAT solution left a non-bipartite remainder; rejecting");
        return Ok(None);
    };
    for (v, side) in rest.iter().zip(sides) {
        image[*v] = if side { FIG2_B } else { FIG2_A };
    }

    let cert = Certificate::homomorphism(image);
    if !verify(g, Constraint::Hom(&fig2_target()), &cert) {
        log::warn!("decoded assignment is not a homomorphism; rejecting");
        return Ok(None);
    }
    Ok(Some(cert))
}

/// Proper 2-colouring of the underlying graph induced by `vertices`.
fn two_colour(g: &Digraph, vertices: &[usize]) -> Option<Vec<bool>> {
    let k = vertices.len();
    let mut side: Vec<Option<bool>> = vec![None; k];
    for start in 0..k {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let s = side[i].expect("queued vertices are coloured");
            for j in 0..k {
                if i == j || !g.adjacent(vertices[i], vertices[j]) {
                    continue;
                }
                match side[j] {
                    None => {
                        side[j] = Some(!s);
                        queue.push_back(j);
                    }
                    Some(t) if t == s => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(side.into_iter().map(|s| s.expect("all coloured")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::find_hom;

    fn d(n: usize, arcs: &[(usize, usize)]) -> Digraph {
        Digraph::from_arcs(n, arcs.iter().copied()).unwrap()
    }

    #[test]
    fn target_shape() {
        let h = fig2_target();
        assert_eq!(h.arc_count(), 6);
        assert_eq!(h.out_degree(FIG2_X), 0);
        assert_eq!(h.in_degree(FIG2_Y), 0);
        assert!(h.is_digon(FIG2_A, FIG2_B));
        let mut semi = h.clone();
        semi.add_arc(FIG2_X, FIG2_Y);
        assert!(semi.is_semicomplete());
    }

    #[test]
    fn rejects_strong_triangle_and_four_chains() {
        assert!(hom_fig2(&Digraph::strong_clique(3)).unwrap().is_none());
        assert!(hom_fig2(&Digraph::transitive_tournament(4)).unwrap().is_none());
    }

    #[test]
    fn digon_over_sink() {
        let g = d(3, &[(0, 1), (1, 0), (0, 2), (1, 2)]);
        let c = hom_fig2(&g).unwrap().unwrap();
        assert_eq!(c.assignment[2], FIG2_X);
        let mut halves = vec![c.assignment[0], c.assignment[1]];
        halves.sort();
        assert_eq!(halves, vec![FIG2_A, FIG2_B]);
        assert!(find_hom(&g, &fig2_target(), None).unwrap().is_some());
    }

    #[test]
    fn forced_conflict_is_rejected() {
        // digon D -> v, u -> digon E, u -> v: x_v and x_u both forced to 1,
        // while the arc u -> v forbids it
        let g = d(
            6,
            &[
                (0, 1),
                (1, 0),
                (0, 2),
                (1, 2),
                (3, 4),
                (3, 5),
                (4, 5),
                (5, 4),
                (3, 2),
            ],
        );
        assert!(g.is_transitive());
        assert!(hom_fig2(&g).unwrap().is_none());
        assert!(find_hom(&g, &fig2_target(), None).unwrap().is_none());
    }

    #[test]
    fn isolated_vertices_go_to_a() {
        let c = hom_fig2(&Digraph::empty(2)).unwrap().unwrap();
        assert_eq!(c.assignment, vec![FIG2_A, FIG2_A]);
    }
}
