use itertools::Itertools;

use super::require_transitive;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::matrix::{Entry, PartitionMatrix};
use crate::search::find_mpartition;

/// `M`-partition of a transitive digraph when every diagonal entry of the
/// `m x m` matrix `M` is `1`.
///
/// Minimal obstructions for such matrices have at most `m + 1` vertices, so
/// `G` is partitionable iff every induced subdigraph on `m + 1` vertices is.
pub fn mpartition_ones_diag(g: &Digraph, m: &PartitionMatrix) -> Result<bool> {
    if !m.diagonal_all(Entry::One) {
        return Err(Error::PreconditionViolated(
            "matrix diagonal is not all 1".into(),
        ));
    }
    require_transitive(g, "input")?;
    let size = m.m() + 1;
    if g.n() <= size {
        return Ok(find_mpartition(g, m, None)?.is_some());
    }
    for subset in (0..g.n()).combinations(size) {
        if find_mpartition(&g.induced(&subset), m, None)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_isolated_vertices_are_not_one_clique() {
        let m = PartitionMatrix::from_strs(&["1"]).unwrap();
        assert!(!mpartition_ones_diag(&Digraph::empty(2), &m).unwrap());
    }

    #[test]
    fn two_digons_into_two_clique_parts() {
        let g = Digraph::digon().disjoint_union(&Digraph::digon());
        let star = PartitionMatrix::from_strs(&["1*", "*1"]).unwrap();
        assert!(mpartition_ones_diag(&g, &star).unwrap());
        // all-one needs every arc between the parts
        let ones = PartitionMatrix::from_strs(&["11", "11"]).unwrap();
        assert!(!mpartition_ones_diag(&g, &ones).unwrap());
    }

    #[test]
    fn rejects_other_diagonals() {
        let m = PartitionMatrix::kl(1, 1);
        assert!(matches!(
            mpartition_ones_diag(&Digraph::digon(), &m),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
