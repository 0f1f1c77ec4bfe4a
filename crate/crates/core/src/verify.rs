//! Axiom checkers for both decomposition kinds.
//!
//! Path-decompositions are checked for coverage (`dpw-1`), arc order
//! (`dpw-2`: for every arc `(u, v)` some bag holding `u` comes no later than
//! some bag holding `v`) and contiguity (`dpw-3`). Arboreal decompositions
//! are checked for the partition property (`dtw-1`) and for normality of
//! every subtree union with respect to the guard on the arc entering it
//! (`dtw-2`).

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::decomp::{ArborealDecomposition, Bag, PathDecomposition};
use crate::digraph::Digraph;
use crate::error::DecompError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Dpw1,
    Dpw2,
    Dpw3,
    Dtw1,
    Dtw2,
}

impl Axiom {
    pub fn id(self) -> &'static str {
        match self {
            Axiom::Dpw1 => "dpw-1",
            Axiom::Dpw2 => "dpw-2",
            Axiom::Dpw3 => "dpw-3",
            Axiom::Dtw1 => "dtw-1",
            Axiom::Dtw2 => "dtw-2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Witness {
    Vertex(String),
    Arc(String, String),
    /// A tree node with an empty `W` set.
    EmptyNode(usize),
    /// A directed walk that leaves and re-enters a subtree union, entering
    /// through the given tree node.
    Walk { node: usize, walk: Vec<String> },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Vertex(v) => write!(f, "vertex {v}"),
            Witness::Arc(u, v) => write!(f, "arc ({u},{v})"),
            Witness::EmptyNode(i) => write!(f, "node {i}"),
            Witness::Walk { node, walk } => write!(f, "walk {} (node {node})", walk.join(" ")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Witness,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} witness: {}", self.axiom.id(), self.witness)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub valid: bool,
    /// Reported even for invalid decompositions; `-1` when there is nothing to measure.
    pub width: i64,
    /// Sorted.
    pub violations: Vec<Violation>,
}

impl Verdict {
    fn new(width: i64, mut violations: Vec<Violation>) -> Verdict {
        violations.sort();
        violations.dedup();
        Verdict {
            valid: violations.is_empty(),
            width,
            violations,
        }
    }

    /// `valid width=1` or `invalid width=1` followed by one line per violation.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} width={}\n",
            if self.valid { "valid" } else { "invalid" },
            self.width
        );
        for v in &self.violations {
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }
}

fn indices(g: &Digraph, bag: &Bag) -> Result<Vec<usize>, DecompError> {
    bag.iter()
        .map(|l| g.index_of(l).ok_or_else(|| DecompError::UnknownVertex(l.clone())))
        .collect()
}

pub fn verify_path_decomposition(g: &Digraph, p: &PathDecomposition) -> Result<Verdict, DecompError> {
    let n = g.order();
    let mut first = vec![usize::MAX; n];
    let mut last = vec![0usize; n];
    let mut count = vec![0usize; n];
    for (i, bag) in p.bags.iter().enumerate() {
        for v in indices(g, bag)? {
            first[v] = first[v].min(i);
            last[v] = i;
            count[v] += 1;
        }
    }
    let mut violations = Vec::new();
    for v in 0..n {
        if count[v] == 0 {
            violations.push(Violation {
                axiom: Axiom::Dpw1,
                witness: Witness::Vertex(g.label(v).to_string()),
            });
        } else if last[v] - first[v] + 1 != count[v] {
            violations.push(Violation {
                axiom: Axiom::Dpw3,
                witness: Witness::Vertex(g.label(v).to_string()),
            });
        }
    }
    for (u, v) in g.arcs() {
        if count[u] > 0 && count[v] > 0 && first[u] > last[v] {
            violations.push(Violation {
                axiom: Axiom::Dpw2,
                witness: Witness::Arc(g.label(u).to_string(), g.label(v).to_string()),
            });
        }
    }
    Ok(Verdict::new(p.width(), violations))
}

/// Which notion of `Z`-normality to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normality {
    /// `S` and `Z` may overlap: no directed walk in `G - Z` starts and ends in
    /// `S` and passes through a vertex outside `S ∪ Z`.
    #[default]
    Overlapping,
    /// As above, and additionally `S` and `Z` must be disjoint.
    Disjoint,
}

/// Decides `Z`-normality of `s`, returning a violating walk (by vertex
/// index) when there is one.
///
/// Walks may repeat vertices, so this is a reachability question: some
/// vertex outside `S ∪ Z` must be reachable from `S` and reach back into
/// `S` within `G - Z`.
pub fn z_normal_walk(
    g: &Digraph,
    s: &[usize],
    z: &[usize],
    mode: Normality,
) -> Option<Vec<usize>> {
    let n = g.order();
    let mut in_s = vec![false; n];
    let mut in_z = vec![false; n];
    for &v in s {
        in_s[v] = true;
    }
    for &v in z {
        in_z[v] = true;
    }
    if mode == Normality::Disjoint {
        if let Some(&v) = s.iter().find(|&&v| in_z[v]) {
            return Some(vec![v]);
        }
    }
    let alive = |v: usize| !in_z[v];

    // Forward search from S - Z; `pred` reconstructs the way out.
    let mut pred = vec![usize::MAX; n];
    let mut reached = vec![false; n];
    let mut queue: VecDeque<usize> = s.iter().copied().filter(|&v| alive(v)).collect();
    for &v in &queue {
        reached[v] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &w in g.out_neighbors(u) {
            if alive(w) && !reached[w] {
                reached[w] = true;
                pred[w] = u;
                queue.push_back(w);
            }
        }
    }

    // Backward search into S - Z; `succ` reconstructs the way back.
    let mut succ = vec![usize::MAX; n];
    let mut returns = vec![false; n];
    let mut queue: VecDeque<usize> = s.iter().copied().filter(|&v| alive(v)).collect();
    for &v in &queue {
        returns[v] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &w in g.in_neighbors(u) {
            if alive(w) && !returns[w] {
                returns[w] = true;
                succ[w] = u;
                queue.push_back(w);
            }
        }
    }

    let outside = (0..n).find(|&v| !in_s[v] && alive(v) && reached[v] && returns[v])?;
    let mut walk = vec![outside];
    let mut v = outside;
    while !in_s[v] {
        v = pred[v];
        walk.push(v);
    }
    walk.reverse();
    let mut v = outside;
    while !in_s[v] {
        v = succ[v];
        walk.push(v);
    }
    Some(walk)
}

/// `true` iff `s` is `z`-normal (overlapping variant), with a witness walk
/// by label otherwise.
pub fn is_z_normal(g: &Digraph, s: &[usize], z: &[usize]) -> (bool, Option<Vec<String>>) {
    match z_normal_walk(g, s, z, Normality::Overlapping) {
        None => (true, None),
        Some(w) => (false, Some(w.iter().map(|&v| g.label(v).to_string()).collect())),
    }
}

pub fn verify_tree_decomposition(
    g: &Digraph,
    d: &ArborealDecomposition,
) -> Result<Verdict, DecompError> {
    verify_tree_decomposition_with(g, d, Normality::Overlapping)
}

pub fn verify_tree_decomposition_with(
    g: &Digraph,
    d: &ArborealDecomposition,
    mode: Normality,
) -> Result<Verdict, DecompError> {
    let (_, _) = d.tree_order()?;
    let mut violations = Vec::new();
    let mut owner = vec![None; g.order()];
    for (i, node) in d.nodes.iter().enumerate() {
        indices(g, &node.x)?;
        if node.w.is_empty() {
            violations.push(Violation {
                axiom: Axiom::Dtw1,
                witness: Witness::EmptyNode(i),
            });
        }
        for v in indices(g, &node.w)? {
            if owner[v].replace(i).is_some() {
                violations.push(Violation {
                    axiom: Axiom::Dtw1,
                    witness: Witness::Vertex(g.label(v).to_string()),
                });
            }
        }
    }
    for (v, o) in owner.iter().enumerate() {
        if o.is_none() {
            violations.push(Violation {
                axiom: Axiom::Dtw1,
                witness: Witness::Vertex(g.label(v).to_string()),
            });
        }
    }
    let below = d.subtree_sets()?;
    for (i, node) in d.nodes.iter().enumerate() {
        if node.parent.is_none() {
            continue;
        }
        let s = indices(g, &below[i])?;
        let z = indices(g, &node.x)?;
        if let Some(walk) = z_normal_walk(g, &s, &z, mode) {
            violations.push(Violation {
                axiom: Axiom::Dtw2,
                witness: Witness::Walk {
                    node: i,
                    walk: walk.iter().map(|&v| g.label(v).to_string()).collect(),
                },
            });
        }
    }
    Ok(Verdict::new(d.width(), violations))
}

/// Some bag holds all of `clique`.
pub fn some_bag_contains(p: &PathDecomposition, vertices: &BTreeSet<String>) -> bool {
    p.bags.iter().any(|b| vertices.is_subset(b))
}

/// `vertices ⊆ W_root`, or `vertices ⊆ W_s ∪ X_(r,s)` for some tree arc `(r, s)`.
pub fn some_tree_arc_contains(d: &ArborealDecomposition, vertices: &BTreeSet<String>) -> bool {
    d.nodes.iter().any(|n| {
        if n.parent.is_none() {
            vertices.is_subset(&n.w)
        } else {
            let set: HashSet<&String> = n.w.iter().chain(n.x.iter()).collect();
            vertices.iter().all(|v| set.contains(v))
        }
    })
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
