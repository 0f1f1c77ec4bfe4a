//! Exact directed path-width by search over vertex orderings.
//!
//! For an ordering `v_1 .. v_n` with prefixes `P_i`, let `S_i` be the
//! vertices of `P_i` that still have an in-neighbour outside `P_i`. The bags
//! `{v_i} ∪ S_(i-1)` form a directed path-decomposition, and the least
//! possible `max |S_i|` over all orderings equals the directed path-width.
//! The search is an iterative deepening over that bound with memoized dead
//! prefixes, so it stays exponential and is capped.

use std::collections::{BTreeSet, HashSet};

use crate::decomp::PathDecomposition;
use crate::digraph::{Digraph, UndirectedGraph};
use crate::error::{Error, OracleError};
use crate::width::width_of_digraph;
use crate::Caps;

/// Hard limit from the bitmask representation.
pub const MAX_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleSolution {
    pub width: usize,
    pub ordering: Vec<String>,
    pub decomposition: PathDecomposition,
}

struct Search {
    n: usize,
    full: u64,
    /// In-neighbours of each vertex, as a mask.
    preds: Vec<u64>,
    /// Vertex indices in label order.
    order: Vec<usize>,
    dead: HashSet<u64>,
}

impl Search {
    fn cost(&self, p: u64) -> usize {
        let outside = !p & self.full;
        (0..self.n)
            .filter(|&v| p >> v & 1 == 1 && self.preds[v] & outside != 0)
            .count()
    }

    fn feasible(&mut self, p: u64, k: usize, path: &mut Vec<usize>) -> bool {
        if p == self.full {
            return true;
        }
        if self.dead.contains(&p) {
            return false;
        }
        let here = self.cost(p);
        // Adding a vertex that does not raise the cost never hurts.
        let free = self
            .order
            .iter()
            .copied()
            .find(|&v| p >> v & 1 == 0 && self.cost(p | 1 << v) <= here);
        let candidates: Vec<usize> = match free {
            Some(v) => vec![v],
            None => self
                .order
                .iter()
                .copied()
                .filter(|&v| p >> v & 1 == 0)
                .collect(),
        };
        for v in candidates {
            let next = p | 1 << v;
            if next != self.full && self.cost(next) > k {
                continue;
            }
            path.push(v);
            if self.feasible(next, k, path) {
                return true;
            }
            path.pop();
        }
        self.dead.insert(p);
        false
    }
}

fn check_size(n: usize, cap: usize) -> Result<(), OracleError> {
    let cap = cap.min(MAX_CAP);
    if n == 0 {
        return Err(OracleError::Empty);
    }
    if n > cap {
        return Err(OracleError::CapExceeded { size: n, cap });
    }
    Ok(())
}

/// Width of `g` under a fixed ordering, with its decomposition.
pub fn ordering_decomposition(g: &Digraph, ordering: &[usize]) -> PathDecomposition {
    let n = g.order();
    let mut placed = vec![false; n];
    let mut waiting: BTreeSet<usize> = BTreeSet::new();
    let mut bags = Vec::with_capacity(n);
    for &v in ordering {
        let mut bag: BTreeSet<String> = waiting.iter().map(|&u| g.label(u).to_string()).collect();
        bag.insert(g.label(v).to_string());
        bags.push(bag);
        placed[v] = true;
        waiting.insert(v);
        waiting.retain(|&u| g.in_neighbors(u).iter().any(|&w| !placed[w]));
    }
    PathDecomposition::new(bags)
}

/// Directed path-width of `g` with an optimal ordering, for `g` of at most
/// `cap` vertices (never more than [`MAX_CAP`]).
pub fn dpw_exact(g: &Digraph, cap: usize) -> Result<OracleSolution, OracleError> {
    let n = g.order();
    check_size(n, cap)?;
    let mut preds = vec![0u64; n];
    for (u, v) in g.arcs() {
        preds[v] |= 1 << u;
    }
    let mut search = Search {
        n,
        full: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
        preds,
        order: g.vertices_by_label(),
        dead: HashSet::new(),
    };
    for k in 0..n {
        search.dead.clear();
        let mut path = Vec::with_capacity(n);
        if search.feasible(0, k, &mut path) {
            let decomposition = ordering_decomposition(g, &path);
            debug_assert_eq!(decomposition.width(), k as i64);
            return Ok(OracleSolution {
                width: k,
                ordering: path.iter().map(|&v| g.label(v).to_string()).collect(),
                decomposition,
            });
        }
    }
    unreachable!("every ordering has cost below n")
}

/// Path-width of an undirected graph, through its complete biorientation.
pub fn pw_exact_undirected(u: &UndirectedGraph, cap: usize) -> Result<OracleSolution, OracleError> {
    dpw_exact(&u.complete_biorientation(), cap)
}

/// Bounds `(lower, upper)` on the directed tree-width of `g`.
///
/// Recognized co-graph components contribute their exact value. Other
/// strong components contribute a clique and cycle lower bound and their
/// exact directed path-width as upper bound.
pub fn dtw_bracket(g: &Digraph, caps: &Caps) -> Result<(i64, i64), Error> {
    let w = width_of_digraph(g, caps)?;
    Ok((w.dtw_lower, w.dtw_upper))
}
