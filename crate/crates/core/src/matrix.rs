//! Trigraph matrices over `{0, 1, *}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Entry {
    /// Non-arc: no arcs allowed.
    Zero,
    /// Strong arc: all arcs required.
    One,
    /// Weak arc: unconstrained.
    Star,
}

impl Entry {
    pub fn symbol(self) -> char {
        match self {
            Entry::Zero => '0',
            Entry::One => '1',
            Entry::Star => '*',
        }
    }

    pub fn from_symbol(c: &str) -> Option<Entry> {
        match c {
            "0" => Some(Entry::Zero),
            "1" => Some(Entry::One),
            "*" => Some(Entry::Star),
            _ => None,
        }
    }

    /// Whether an ordered vertex pair with (`arc = true`) or without an arc
    /// may be placed in parts related by this entry.
    #[inline]
    pub fn admits(self, arc: bool) -> bool {
        match self {
            Entry::Zero => !arc,
            Entry::One => arc,
            Entry::Star => true,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Entry>>", into = "Vec<Vec<Entry>>")]
pub struct PartitionMatrix {
    m: usize,
    entries: Vec<Entry>,
}

impl TryFrom<Vec<Vec<Entry>>> for PartitionMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<Entry>>) -> Result<Self> {
        PartitionMatrix::from_rows(rows)
    }
}

impl From<PartitionMatrix> for Vec<Vec<Entry>> {
    fn from(m: PartitionMatrix) -> Self {
        m.rows()
    }
}

impl fmt::Debug for PartitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.m {
            if i > 0 {
                write!(f, "/")?;
            }
            for j in 0..self.m {
                write!(f, "{}", self.get(i, j).symbol())?;
            }
        }
        write!(f, "]")
    }
}

impl PartitionMatrix {
    pub fn filled(m: usize, e: Entry) -> Self {
        PartitionMatrix {
            m,
            entries: vec![e; m * m],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Entry>>) -> Result<Self> {
        let m = rows.len();
        if let Some(r) = rows.iter().position(|row| row.len() != m) {
            return Err(Error::PreconditionViolated(format!(
                "row {r} has {} entries, expected {m}",
                rows[r].len()
            )));
        }
        Ok(PartitionMatrix {
            m,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Parses rows such as `"1*"`, `"*0"`; whitespace is ignored.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| {
                r.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| {
                        Entry::from_symbol(&c.to_string()).ok_or_else(|| {
                            Error::PreconditionViolated(format!("bad matrix symbol {c:?}"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PartitionMatrix::from_rows(rows)
    }

    /// Diagonal `k` zeros followed by `l` ones, `*` elsewhere: the
    /// `(k, l)`-colouring matrix.
    pub fn kl(k: usize, l: usize) -> Self {
        let mut mat = PartitionMatrix::filled(k + l, Entry::Star);
        for i in 0..k + l {
            mat.set(i, i, if i < k { Entry::Zero } else { Entry::One });
        }
        mat
    }

    /// The matrix of a digraph target: `*` on arcs, `0` elsewhere.
    pub fn of_digraph(h: &Digraph) -> Self {
        let mut mat = PartitionMatrix::filled(h.n(), Entry::Zero);
        for (u, v) in h.arcs() {
            mat.set(u, v, Entry::Star);
        }
        mat
    }

    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Entry {
        self.entries[i * self.m + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: Entry) {
        self.entries[i * self.m + j] = e;
    }

    pub fn rows(&self) -> Vec<Vec<Entry>> {
        (0..self.m)
            .map(|i| (0..self.m).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn diagonal_all(&self, e: Entry) -> bool {
        (0..self.m).all(|i| self.get(i, i) == e)
    }

    pub fn has_one(&self) -> bool {
        self.entries.contains(&Entry::One)
    }

    /// Whether vertices `u != v` may go to parts `a` and `b` given the arcs
    /// between them.
    #[inline]
    pub fn admits_pair(&self, a: usize, b: usize, arc_uv: bool, arc_vu: bool) -> bool {
        self.get(a, b).admits(arc_uv) && self.get(b, a).admits(arc_vu)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kl_layout() {
        let m = PartitionMatrix::kl(1, 2);
        assert_eq!(m, PartitionMatrix::from_strs(&["0**", "*1*", "**1"]).unwrap());
    }

    #[test]
    fn digraph_matrix_has_no_ones() {
        let m = PartitionMatrix::of_digraph(&Digraph::transitive_tournament(3));
        assert!(!m.has_one());
        assert!(m.diagonal_all(Entry::Zero));
        assert_eq!(m.get(0, 2), Entry::Star);
        assert_eq!(m.get(2, 0), Entry::Zero);
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(PartitionMatrix::from_strs(&["01", "1"]).is_err());
    }

    #[test]
    fn same_part_semantics() {
        let clique = PartitionMatrix::from_strs(&["1"]).unwrap();
        assert!(clique.admits_pair(0, 0, true, true));
        assert!(!clique.admits_pair(0, 0, true, false));
        let indep = PartitionMatrix::from_strs(&["0"]).unwrap();
        assert!(indep.admits_pair(0, 0, false, false));
        assert!(!indep.admits_pair(0, 0, false, true));
    }
}
