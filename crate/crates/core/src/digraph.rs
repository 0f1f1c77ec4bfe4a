//! Simple loop-free digraphs over opaque string labels.
//!
//! Vertices are stored densely as indices `0..n` in insertion order; labels
//! are kept alongside so every result can be reported in terms of the
//! caller's identifiers.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap, HashSet};
use std::fmt;

use crate::error::GraphError;

#[derive(Clone)]
pub struct Digraph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    arcs: HashSet<(usize, usize)>,
}

/// Characters that delimit labels in the text formats.
const RESERVED: [char; 8] = ['#', ',', ';', '(', ')', '{', '}', '='];

pub(crate) fn check_label(label: &str) -> Result<(), GraphError> {
    if label.is_empty()
        || label
            .chars()
            .any(|c| c.is_whitespace() || RESERVED.contains(&c))
    {
        return Err(GraphError::InvalidLabel(label.to_string()));
    }
    Ok(())
}

impl Digraph {
    /// Builds a digraph from labels and labelled arcs. Repeated arcs collapse.
    pub fn new<L, A>(labels: L, arcs: A) -> Result<Digraph, GraphError>
    where
        L: IntoIterator,
        L::Item: Into<String>,
        A: IntoIterator,
        A::Item: ArcLabels,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            check_label(l)?;
            if index.insert(l.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(l.clone()));
            }
        }
        let mut indexed = Vec::new();
        for arc in arcs {
            let (u, v) = arc.endpoints();
            let ui = *index
                .get(u)
                .ok_or_else(|| GraphError::UnknownVertex(u.to_string()))?;
            let vi = *index
                .get(v)
                .ok_or_else(|| GraphError::UnknownVertex(v.to_string()))?;
            indexed.push((ui, vi));
        }
        Digraph::assemble(labels, index, indexed)
    }

    /// Builds a digraph from labels and index pairs into `labels`.
    pub fn from_indices(
        labels: Vec<String>,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Digraph, GraphError> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            check_label(l)?;
            if index.insert(l.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(l.clone()));
            }
        }
        let n = labels.len();
        let arcs: Vec<_> = arcs.into_iter().collect();
        if let Some(&(u, v)) = arcs.iter().find(|&&(u, v)| u >= n || v >= n) {
            return Err(GraphError::UnknownVertex(format!("#{}", u.max(v))));
        }
        Digraph::assemble(labels, index, arcs)
    }

    fn assemble(
        labels: Vec<String>,
        index: HashMap<String, usize>,
        arcs: Vec<(usize, usize)>,
    ) -> Result<Digraph, GraphError> {
        let n = labels.len();
        let mut set = HashSet::with_capacity(arcs.len());
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for (u, v) in arcs {
            if u == v {
                return Err(GraphError::SelfLoop(labels[u].clone()));
            }
            if set.insert((u, v)) {
                out[u].push(v);
                inn[v].push(u);
            }
        }
        for list in out.iter_mut().chain(inn.iter_mut()) {
            list.sort_unstable();
        }
        Ok(Digraph {
            labels,
            index,
            out,
            inn,
            arcs: set,
        })
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    /// Arcs as index pairs in lexicographic index order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    /// Arcs by label, sorted. Two digraphs are equal iff their labels and
    /// labelled arc sets agree.
    pub fn labelled_arcs(&self) -> BTreeSet<(String, String)> {
        self.arcs()
            .map(|(u, v)| (self.labels[u].clone(), self.labels[v].clone()))
            .collect()
    }

    /// Vertex indices ordered by label.
    pub fn vertices_by_label(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = (0..self.order()).collect();
        vs.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b]));
        vs
    }

    /// The subdigraph induced by `vertices`, keeping their relative order.
    pub fn induced(&self, vertices: &[usize]) -> Digraph {
        let mut local = HashMap::with_capacity(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            local.insert(v, i);
        }
        let labels: Vec<String> = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        let mut arcs = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for w in &self.out[v] {
                if let Some(&j) = local.get(w) {
                    arcs.push((i, j));
                }
            }
        }
        Digraph::from_indices(labels, arcs).expect("induced subdigraph of a valid digraph")
    }

    /// The subdigraph induced by a set of labels.
    pub fn induced_by_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Digraph, GraphError> {
        let mut vs = Vec::with_capacity(labels.len());
        let mut seen = HashSet::new();
        for l in labels {
            let l = l.as_ref();
            let v = self
                .index_of(l)
                .ok_or_else(|| GraphError::UnknownVertex(l.to_string()))?;
            if !seen.insert(v) {
                return Err(GraphError::DuplicateVertex(l.to_string()));
            }
            vs.push(v);
        }
        Ok(self.induced(&vs))
    }

    pub fn underlying(&self) -> UndirectedGraph {
        let mut adj = vec![BTreeSet::new(); self.order()];
        for (u, v) in self.arcs() {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        UndirectedGraph {
            labels: self.labels.clone(),
            adj,
        }
    }

    pub fn complement(&self) -> Digraph {
        let n = self.order();
        let arcs = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|&(u, v)| u != v && !self.has_arc(u, v));
        Digraph::from_indices(self.labels.clone(), arcs.collect::<Vec<_>>()).unwrap()
    }

    pub fn converse(&self) -> Digraph {
        let arcs: Vec<_> = self.arcs().map(|(u, v)| (v, u)).collect();
        Digraph::from_indices(self.labels.clone(), arcs).unwrap()
    }

    /// True if both `(u, v)` and `(v, u)` are arcs.
    pub fn is_mutual(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) && self.has_arc(v, u)
    }

    /// Strongly connected components (iterative Tarjan), listed in the
    /// topological order of the condensation that always emits the ready
    /// component with the lexicographically smallest label first.
    pub fn strong_components(&self) -> Condensation {
        let n = self.order();
        const UNSEEN: usize = usize::MAX;
        let mut index = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut comp_of = vec![UNSEEN; n];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut counter = 0;
        let mut call: Vec<(usize, usize)> = Vec::new();

        for root in 0..n {
            if index[root] != UNSEEN {
                continue;
            }
            call.push((root, 0));
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut next)) = call.last_mut() {
                if *next < self.out[v].len() {
                    let w = self.out[v][*next];
                    *next += 1;
                    if index[w] == UNSEEN {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                    continue;
                }
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let id = comps.len();
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp_of[w] = id;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comps.push(comp);
                }
            }
        }

        // Kahn over the component DAG with the smallest-label tie-break.
        let c = comps.len();
        let key: Vec<&str> = comps
            .iter()
            .map(|comp| comp.iter().map(|&v| self.label(v)).min().unwrap())
            .collect();
        let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); c];
        for (u, v) in self.arcs() {
            let (a, b) = (comp_of[u], comp_of[v]);
            if a != b {
                succ[a].insert(b);
            }
        }
        let mut indeg = vec![0usize; c];
        for s in &succ {
            for &b in s {
                indeg[b] += 1;
            }
        }
        let mut ready: BinaryHeap<Reverse<(&str, usize)>> = (0..c)
            .filter(|&i| indeg[i] == 0)
            .map(|i| Reverse((key[i], i)))
            .collect();
        let mut position = vec![0; c];
        let mut order = Vec::with_capacity(c);
        while let Some(Reverse((_, i))) = ready.pop() {
            position[i] = order.len();
            order.push(i);
            for &b in &succ[i] {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    ready.push(Reverse((key[b], b)));
                }
            }
        }

        let mut components: Vec<Vec<usize>> = order
            .iter()
            .map(|&i| {
                let mut comp = comps[i].clone();
                comp.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b]));
                comp
            })
            .collect();
        components.shrink_to_fit();
        let component_of: Vec<usize> = comp_of.iter().map(|&i| position[i]).collect();
        let component_arcs = succ
            .iter()
            .enumerate()
            .flat_map(|(a, s)| s.iter().map(move |&b| (a, b)))
            .map(|(a, b)| (position[a], position[b]))
            .collect();
        Condensation {
            components,
            component_arcs,
            component_of,
        }
    }

    /// A maximum set of pairwise mutually adjacent vertices, sorted by label.
    pub fn largest_bioriented_clique(&self, cap: usize) -> Result<Vec<usize>, GraphError> {
        if self.order() > cap {
            return Err(GraphError::CapExceeded {
                size: self.order(),
                cap,
            });
        }
        let order = self.vertices_by_label();
        let mutual: Vec<Vec<bool>> = (0..self.order())
            .map(|u| (0..self.order()).map(|v| self.is_mutual(u, v)).collect())
            .collect();
        let mut best = Vec::new();
        let mut current = Vec::new();
        expand_clique(&mutual, &mut current, order, &mut best);
        best.sort_by(|&a, &b| self.labels[a].cmp(&self.labels[b]));
        Ok(best)
    }
}

fn expand_clique(
    mutual: &[Vec<bool>],
    current: &mut Vec<usize>,
    mut candidates: Vec<usize>,
    best: &mut Vec<usize>,
) {
    if candidates.is_empty() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    while let Some(&v) = candidates.first() {
        if current.len() + candidates.len() <= best.len() {
            return;
        }
        candidates.remove(0);
        let next: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&w| mutual[v][w])
            .collect();
        current.push(v);
        expand_clique(mutual, current, next, best);
        current.pop();
    }
    if current.len() > best.len() {
        *best = current.clone();
    }
}

impl PartialEq for Digraph {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order()
            && self.arc_count() == other.arc_count()
            && self.labels.iter().all(|l| other.index.contains_key(l))
            && self.arcs().all(|(u, v)| {
                let (a, b) = (other.index[&self.labels[u]], other.index[&self.labels[v]]);
                other.has_arc(a, b)
            })
    }
}

impl Eq for Digraph {}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("vertices", &self.labels)
            .field("arcs", &self.labelled_arcs())
            .finish()
    }
}

/// Anything that names the two endpoints of an arc.
pub trait ArcLabels {
    fn endpoints(&self) -> (&str, &str);
}

impl<S: AsRef<str>> ArcLabels for (S, S) {
    fn endpoints(&self) -> (&str, &str) {
        (self.0.as_ref(), self.1.as_ref())
    }
}

impl<S: AsRef<str>> ArcLabels for &(S, S) {
    fn endpoints(&self) -> (&str, &str) {
        (self.0.as_ref(), self.1.as_ref())
    }
}

/// Simple undirected graph sharing the vertex indexing of its source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    labels: Vec<String>,
    adj: Vec<BTreeSet<usize>>,
}

impl UndirectedGraph {
    pub fn new<S: Into<String>>(
        labels: Vec<S>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<UndirectedGraph, GraphError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for l in &labels {
            check_label(l)?;
            if !seen.insert(l.as_str()) {
                return Err(GraphError::DuplicateVertex(l.clone()));
            }
        }
        let mut adj = vec![BTreeSet::new(); labels.len()];
        for (u, v) in edges {
            if u >= labels.len() || v >= labels.len() {
                return Err(GraphError::UnknownVertex(format!("#{}", u.max(v))));
            }
            if u == v {
                return Err(GraphError::SelfLoop(labels[u].clone()));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(UndirectedGraph { labels, adj })
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    /// Edges as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Replaces every edge by both opposing arcs.
    pub fn complete_biorientation(&self) -> Digraph {
        let arcs: Vec<_> = self.edges().flat_map(|(u, v)| [(u, v), (v, u)]).collect();
        Digraph::from_indices(self.labels.clone(), arcs).unwrap()
    }
}

/// Strong components in topological order with the arcs between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condensation {
    /// Vertex indices of each component, sorted by label.
    pub components: Vec<Vec<usize>>,
    /// `(i, j)` whenever some arc leads from component `i` to component `j`; always `i < j`.
    pub component_arcs: BTreeSet<(usize, usize)>,
    /// Position in `components` for every vertex.
    pub component_of: Vec<usize>,
}

impl Condensation {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(labels: &[&str], arcs: &[(&str, &str)]) -> Digraph {
        Digraph::new(labels.iter().copied(), arcs.iter()).unwrap()
    }

    fn bi_clique(n: usize) -> Digraph {
        let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let arcs: Vec<_> = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|(u, v)| u != v)
            .collect();
        Digraph::from_indices(labels, arcs).unwrap()
    }

    #[test]
    fn build_examples() {
        let one = g(&["a"], &[]);
        assert_eq!((one.order(), one.arc_count()), (1, 0));
        let edge = g(&["a", "b"], &[("a", "b"), ("b", "a"), ("a", "b")]);
        assert_eq!(edge.arc_count(), 2);
        assert!(edge.is_mutual(0, 1));
        assert_eq!(
            Digraph::new(["a"], [("a", "a")]),
            Err(GraphError::SelfLoop("a".into()))
        );
        assert_eq!(
            Digraph::new(["a"], [("a", "b")]),
            Err(GraphError::UnknownVertex("b".into()))
        );
        assert_eq!(
            Digraph::new(["a", "a"], Vec::<(&str, &str)>::new()),
            Err(GraphError::DuplicateVertex("a".into()))
        );
    }

    #[test]
    fn induced_examples() {
        let k3 = bi_clique(3);
        let sub = k3.induced_by_labels(&["v0", "v1"]).unwrap();
        assert_eq!(sub, bi_clique(2));
        assert_eq!(k3.induced_by_labels(k3.labels()).unwrap(), k3);
        let path = g(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let ac = path.induced_by_labels(&["a", "c"]).unwrap();
        assert_eq!(ac.arc_count(), 0);
        assert!(path.induced_by_labels(&["z"]).is_err());
    }

    #[test]
    fn underlying_and_biorientation() {
        let path = g(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let u = path.underlying();
        assert_eq!(u.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(bi_clique(2).underlying().edge_count(), 1);
        assert_eq!(g(&["a", "b"], &[]).underlying().edge_count(), 0);

        let k2 = UndirectedGraph::new(vec!["a", "b"], [(0, 1)]).unwrap();
        assert_eq!(k2.complete_biorientation().arc_count(), 2);
        let empty = UndirectedGraph::new(vec!["a", "b", "c"], []).unwrap();
        assert_eq!(empty.complete_biorientation().arc_count(), 0);
        let p3 = UndirectedGraph::new(vec!["a", "b", "c"], [(0, 1), (1, 2)]).unwrap();
        let bp3 = p3.complete_biorientation();
        assert_eq!(bp3.arc_count(), 4);
        assert_eq!(bp3.underlying(), p3);
    }

    #[test]
    fn complement_and_converse() {
        assert_eq!(
            g(&["a", "b"], &[]).complement(),
            g(&["a", "b"], &[("a", "b"), ("b", "a")])
        );
        let ab = g(&["a", "b"], &[("a", "b")]);
        assert_eq!(ab.converse(), g(&["a", "b"], &[("b", "a")]));
        assert_eq!(bi_clique(4).complement().arc_count(), 0);
    }

    #[test]
    fn strong_components_examples() {
        let path = g(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        let c = path.strong_components();
        assert_eq!(c.components, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(c.component_arcs, [(0, 1), (1, 2)].into_iter().collect());

        assert_eq!(bi_clique(3).strong_components().len(), 1);

        // {c,d} listed first by label would be wrong: {c,d} -> {a,b}.
        let two = g(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "a"), ("c", "d"), ("d", "c"), ("d", "a")],
        );
        let c = two.strong_components();
        assert_eq!(c.components, vec![vec![2, 3], vec![0, 1]]);
        assert_eq!(c.component_arcs, [(0, 1)].into_iter().collect());
        assert_eq!(c.component_of, vec![1, 1, 0, 0]);
    }

    #[test]
    fn strong_components_tie_break_is_lexicographic() {
        let g = g(&["z", "y", "x"], &[]);
        let c = g.strong_components();
        assert_eq!(c.components, vec![vec![2], vec![1], vec![0]]);
    }

    #[test]
    fn clique_examples() {
        assert_eq!(bi_clique(4).largest_bioriented_clique(20).unwrap().len(), 4);
        let cycle = g(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")]);
        assert_eq!(cycle.largest_bioriented_clique(20).unwrap().len(), 1);
        let star = g(
            &["c", "l1", "l2", "l3"],
            &[
                ("c", "l1"),
                ("l1", "c"),
                ("c", "l2"),
                ("l2", "c"),
                ("c", "l3"),
                ("l3", "c"),
            ],
        );
        let best = star.largest_bioriented_clique(20).unwrap();
        assert_eq!(best.len(), 2);
        assert!(best.contains(&0));
        assert!(matches!(
            bi_clique(21).largest_bioriented_clique(20),
            Err(GraphError::CapExceeded { size: 21, cap: 20 })
        ));
        assert!(g(&[], &[]).largest_bioriented_clique(20).unwrap().is_empty());
    }
}
