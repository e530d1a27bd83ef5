//! 2-SAT via the implication graph and its strongly connected components.

use serde::{Deserialize, Serialize};

use crate::scc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal {
            var,
            positive: true,
        }
    }

    pub fn neg(var: usize) -> Self {
        Literal {
            var,
            positive: false,
        }
    }

    fn negated(self) -> Self {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }

    fn node(self) -> usize {
        2 * self.var + usize::from(!self.positive)
    }

    pub fn holds(self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }
}

/// A CNF with at most two literals per clause. Unit clauses are stored as
/// `(l, l)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoSatInstance {
    vars: usize,
    clauses: Vec<(Literal, Literal)>,
}

impl TwoSatInstance {
    pub fn new(vars: usize) -> Self {
        TwoSatInstance {
            vars,
            clauses: Vec::new(),
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[(Literal, Literal)] {
        &self.clauses
    }

    pub fn add_clause(&mut self, a: Literal, b: Literal) {
        assert!(a.var < self.vars && b.var < self.vars, "literal out of range");
        self.clauses.push((a, b));
    }

    pub fn add_unit(&mut self, a: Literal) {
        self.add_clause(a, a);
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|&(a, b)| a.holds(assignment) || b.holds(assignment))
    }
}

/// A satisfying assignment, or `None` when the instance is unsatisfiable.
pub fn solve_2sat(inst: &TwoSatInstance) -> Option<Vec<bool>> {
    let nodes = 2 * inst.vars;
    let mut succ = vec![Vec::new(); nodes];
    for &(a, b) in &inst.clauses {
        // (a or b) == (!a -> b) and (!b -> a)
        succ[a.negated().node()].push(b.node());
        succ[b.negated().node()].push(a.node());
    }
    // Tarjan emits components in reverse topological order.
    let comps = scc::tarjan(&succ);
    let mut comp_of = vec![0usize; nodes];
    for (i, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = i;
        }
    }
    let mut assignment = Vec::with_capacity(inst.vars);
    for var in 0..inst.vars {
        let t = comp_of[Literal::pos(var).node()];
        let f = comp_of[Literal::neg(var).node()];
        if t == f {
            return None;
        }
        // the literal whose component comes later topologically is true
        assignment.push(t < f);
    }
    Some(assignment)
}
