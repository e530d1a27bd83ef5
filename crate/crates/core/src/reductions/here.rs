use serde::{Deserialize, Serialize};

use crate::bipartite::BipartiteInstance;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::search::Lists;

/// A digraph whose vertices carry levels. Arcs climb strictly, except inside
/// the twin pairs created by duplicating a path vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelledDigraph {
    pub digraph: Digraph,
    pub level: Vec<usize>,
    /// Duplicated pairs: each forms a digon with identical outside
    /// neighbourhoods.
    pub twins: Vec<(usize, usize)>,
}

impl LevelledDigraph {
    pub fn is_level_monotone(&self) -> bool {
        self.digraph.arcs().all(|(u, v)| {
            self.level[u] < self.level[v]
                || (self.level[u] == self.level[v] && self.are_twins(u, v))
        })
    }

    pub fn are_twins(&self, u: usize, v: usize) -> bool {
        self.twins.contains(&(u, v)) || self.twins.contains(&(v, u))
    }

    /// Representative of the twin class of `v` (the smaller index of its
    /// pair, or `v` itself).
    pub fn twin_class(&self, v: usize) -> usize {
        self.twins
            .iter()
            .find(|&&(a, b)| a == v || b == v)
            .map_or(v, |&(a, b)| a.min(b))
    }

    /// Lists sending every vertex to the vertices of `target` on its level.
    pub fn level_lists(&self, target: &LevelledDigraph) -> Lists {
        Lists(
            self.level
                .iter()
                .map(|&l| (0..target.level.len()).filter(|&t| target.level[t] == l).collect())
                .collect(),
        )
    }

    /// Whether `image` (a map into `target`) keeps every level.
    pub fn preserves_levels(&self, target: &LevelledDigraph, image: &[usize]) -> bool {
        image.len() == self.level.len()
            && image
                .iter()
                .enumerate()
                .all(|(v, &t)| self.level[v] == target.level[t])
    }
}

struct Builder {
    n: usize,
    arcs: Vec<(usize, usize)>,
    level: Vec<usize>,
    twins: Vec<(usize, usize)>,
}

impl Builder {
    fn new(inst: &BipartiteInstance, n: usize) -> Self {
        let level = (0..inst.order())
            .map(|v| if v < inst.whites() { n + 2 } else { n + 3 })
            .collect();
        Builder {
            n,
            arcs: inst.oriented().arcs().collect(),
            level,
            twins: Vec::new(),
        }
    }

    fn vertex(&mut self, level: usize) -> usize {
        self.level.push(level);
        self.level.len() - 1
    }

    /// A directed path on `n + 2` positions through `anchor` at
    /// `anchor_pos`, with the positions in `dups` doubled into twin pairs.
    /// Position `j` gets level `offset + j`.
    fn path(&mut self, anchor: usize, anchor_pos: usize, dups: &[usize], offset: usize) {
        let mut prev: Vec<usize> = Vec::new();
        for pos in 1..=self.n + 2 {
            let here = if pos == anchor_pos {
                vec![anchor]
            } else if dups.contains(&pos) {
                let (a, b) = (self.vertex(offset + pos), self.vertex(offset + pos));
                self.arcs.extend([(a, b), (b, a)]);
                self.twins.push((a, b));
                vec![a, b]
            } else {
                vec![self.vertex(offset + pos)]
            };
            for &u in &prev {
                for &v in &here {
                    self.arcs.push((u, v));
                }
            }
            prev = here;
        }
    }

    /// The `i`-th path into a white vertex (1-based), or the plain one.
    fn p_path(&mut self, white: usize, i: Option<usize>) {
        let dups: Vec<usize> = std::iter::once(1).chain(i.map(|i| i + 1)).collect();
        self.path(white, self.n + 2, &dups, 0);
    }

    /// The `i`-th path out of a black vertex (1-based), or the plain one.
    fn r_path(&mut self, black: usize, i: Option<usize>) {
        let dups: Vec<usize> = std::iter::once(self.n + 2).chain(i.map(|i| i + 1)).collect();
        self.path(black, 1, &dups, self.n + 2);
    }

    fn finish(self) -> LevelledDigraph {
        let d = Digraph::from_arcs(self.level.len(), self.arcs).expect("gadget arcs are valid");
        LevelledDigraph {
            digraph: d.transitive_closure(),
            level: self.level,
            twins: self.twins,
        }
    }
}

/// The transitive target built from `h` with side bound `n = max(p, q)`.
pub fn build_here_target(h: &BipartiteInstance) -> Result<LevelledDigraph> {
    build_here_target_with_n(h, h.whites().max(h.blacks()))
}

/// The transitive target built from `h` with paths on `n + 2` positions.
///
/// Vertices `0..p+q` are the vertices of `h` (whites then blacks), followed
/// by the path vertices. The `i`-th white vertex ends a path whose first and
/// `(i+1)`-st positions are doubled; the `i`-th black vertex starts a path
/// whose last and `(i+1)`-st positions are doubled.
pub fn build_here_target_with_n(h: &BipartiteInstance, n: usize) -> Result<LevelledDigraph> {
    let size = h.whites().max(h.blacks());
    if size > n {
        return Err(Error::SideTooLarge { size, n });
    }
    let mut b = Builder::new(h, n);
    for w in 0..h.whites() {
        b.p_path(w, Some(w + 1));
    }
    for j in 0..h.blacks() {
        b.r_path(h.whites() + j, Some(j + 1));
    }
    Ok(b.finish())
}

/// The colouring instance for the retraction of `g` onto its marked copy of
/// `h`.
///
/// Vertices of the copy receive the same paths as in [`build_here_target`];
/// every other white vertex ends a path with only its first position
/// doubled, every other black vertex starts a path with only its last
/// position doubled. Vertices `0..|g|` are those of `g`.
pub fn transform_here_instance(
    g: &BipartiteInstance,
    h: &BipartiteInstance,
) -> Result<LevelledDigraph> {
    let map = g.embedding_of(h)?;
    let mut role = vec![None; g.order()];
    for (x, &gx) in map.iter().enumerate() {
        role[gx] = Some(x);
    }
    let mut b = Builder::new(g, h.whites().max(h.blacks()));
    for (v, r) in role.iter().enumerate() {
        let white = v < g.whites();
        match (white, r) {
            (true, Some(x)) => b.p_path(v, Some(x + 1)),
            (true, None) => b.p_path(v, None),
            (false, Some(x)) => b.r_path(v, Some(x - h.whites() + 1)),
            (false, None) => b.r_path(v, None),
        }
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipartite::Vertex;
    use crate::search::find_hom;

    #[test]
    fn single_edge_target() {
        let t = build_here_target(&BipartiteInstance::single_edge()).unwrap();
        assert_eq!(t.digraph.n(), 10);
        assert_eq!(t.level[0], 3);
        assert_eq!(t.level[1], 4);
        assert!(t.digraph.is_transitive());
        assert!(t.is_level_monotone());
        assert_eq!(t.twins.len(), 4);
    }

    #[test]
    fn side_bound() {
        let h = BipartiteInstance::cycle6();
        assert!(matches!(
            build_here_target_with_n(&h, 2),
            Err(Error::SideTooLarge { size: 3, n: 2 })
        ));
        assert!(build_here_target_with_n(&h, 4).unwrap().digraph.is_transitive());
    }

    #[test]
    fn unchanged_instance_gives_the_target() {
        for h in [BipartiteInstance::single_edge(), BipartiteInstance::path4()] {
            let g = h.embedded_identity();
            assert_eq!(
                transform_here_instance(&g, &h).unwrap(),
                build_here_target(&h).unwrap()
            );
        }
    }

    #[test]
    fn extra_white_vertex() {
        let h = BipartiteInstance::single_edge();
        let g = BipartiteInstance::new(2, 1, [(0, 0), (1, 0)])
            .unwrap()
            .with_embedding(vec![
                (Vertex::White(0), Vertex::White(0)),
                (Vertex::Black(0), Vertex::Black(0)),
            ])
            .unwrap();
        let t = transform_here_instance(&g, &h).unwrap();
        assert!(t.digraph.is_transitive());
        assert_eq!(t.level[1], 3);
        let target = build_here_target(&h).unwrap();
        let f = find_hom(&t.digraph, &target.digraph, None).unwrap().unwrap();
        assert!(t.preserves_levels(&target, &f.assignment));
    }

    #[test]
    fn missing_embedding() {
        let h = BipartiteInstance::single_edge();
        assert!(matches!(
            transform_here_instance(&h, &h),
            Err(Error::NoEmbedding(_))
        ));
    }
}
