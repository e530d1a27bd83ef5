//! Small retraction instances for exercising the reductions.
//!
//! Each instance consists of a target graph with at most two extra vertices:
//! either one extra vertex of either colour, or one extra white and one
//! extra black, joined to the target in every possible way.

use crate::bipartite::{BipartiteInstance, Vertex};

/// The three sample targets: single edge, path on four vertices, 6-cycle.
pub fn targets() -> Vec<(&'static str, BipartiteInstance)> {
    vec![
        ("edge", BipartiteInstance::single_edge()),
        ("path4", BipartiteInstance::path4()),
        ("cycle6", BipartiteInstance::cycle6()),
    ]
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}

/// Builds `h` plus `extra_w` whites and `extra_b` blacks (each at most one)
/// with the given neighbourhoods inside `h`, marking `h` on its own
/// vertices.
fn extend(
    h: &BipartiteInstance,
    white_hood: Option<&[usize]>,
    black_hood: Option<&[usize]>,
    joined: bool,
) -> BipartiteInstance {
    let (p, q) = (h.whites(), h.blacks());
    let mut edges = h.edges().to_vec();
    if let Some(hood) = white_hood {
        edges.extend(hood.iter().map(|&b| (p, b)));
    }
    if let Some(hood) = black_hood {
        edges.extend(hood.iter().map(|&w| (w, q)));
    }
    if joined {
        edges.push((p, q));
    }
    let extra_w = usize::from(white_hood.is_some());
    let extra_b = usize::from(black_hood.is_some());
    let marks = h.vertices().map(|v| (v, v)).collect::<Vec<(Vertex, Vertex)>>();
    BipartiteInstance::new(p + extra_w, q + extra_b, edges)
        .and_then(|g| g.with_embedding(marks))
        .expect("extension of a valid graph")
}

/// All instances over `h`, starting with `h` itself.
pub fn instances(h: &BipartiteInstance) -> Vec<BipartiteInstance> {
    let (p, q) = (h.whites(), h.blacks());
    let mut out = vec![h.embedded_identity()];
    for hood in subsets(q) {
        out.push(extend(h, Some(&hood), None, false));
    }
    for hood in subsets(p) {
        out.push(extend(h, None, Some(&hood), false));
    }
    for wh in subsets(q) {
        for bh in subsets(p) {
            for joined in [false, true] {
                out.push(extend(h, Some(&wh), Some(&bh), joined));
            }
        }
    }
    out
}
