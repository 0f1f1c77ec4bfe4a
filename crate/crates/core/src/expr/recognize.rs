//! Top-down recognition of directed co-graphs.
//!
//! At every level the vertex set is split by the first operator that
//! applies: union (components of the underlying graph), series (components
//! of the graph of non-mutual pairs), order (maximal cut points of the
//! condensation where every forward arc is present). The recursion is
//! polynomial, not linear.

use super::{CoExpr, Op};
use crate::digraph::Digraph;
use crate::error::GraphError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recognition {
    /// A di-co-tree whose evaluation equals the input digraph.
    Cograph(CoExpr),
    /// Labels of an induced subdigraph on which no split exists.
    NotCograph { witness: Vec<String> },
}

impl Recognition {
    pub fn expression(&self) -> Option<&CoExpr> {
        match self {
            Recognition::Cograph(e) => Some(e),
            Recognition::NotCograph { .. } => None,
        }
    }
}

pub fn recognize_dicograph(g: &Digraph, cap: usize) -> Result<Recognition, GraphError> {
    if g.order() > cap {
        return Err(GraphError::CapExceeded {
            size: g.order(),
            cap,
        });
    }
    if g.is_empty() {
        return Ok(Recognition::NotCograph { witness: vec![] });
    }
    let all: Vec<usize> = (0..g.order()).collect();
    Ok(match split(g, &all) {
        Ok(e) => Recognition::Cograph(e),
        Err(witness) => {
            let mut witness: Vec<String> = witness.iter().map(|&v| g.label(v).to_string()).collect();
            witness.sort();
            Recognition::NotCograph { witness }
        }
    })
}

fn split(g: &Digraph, vs: &[usize]) -> Result<CoExpr, Vec<usize>> {
    if vs.len() == 1 {
        return Ok(CoExpr::leaf(g.label(vs[0])));
    }
    let (op, parts) = if let Some(p) = components(vs, |u, w| g.has_arc(u, w) || g.has_arc(w, u)) {
        (Op::Union, p)
    } else if let Some(p) = components(vs, |u, w| !g.is_mutual(u, w)) {
        (Op::Series, p)
    } else if let Some(p) = order_groups(g, vs) {
        (Op::Order, p)
    } else {
        return Err(vs.to_vec());
    };
    let mut children = parts
        .iter()
        .map(|part| split(g, part))
        .collect::<Result<Vec<_>, _>>()?;
    if op != Op::Order {
        children.sort_by_cached_key(|c| c.labels().into_iter().min());
    }
    Ok(CoExpr::Compose { op, children })
}

/// Connected components of `vs` under the symmetric relation `adjacent`,
/// or `None` if there is only one.
fn components(
    vs: &[usize],
    adjacent: impl Fn(usize, usize) -> bool,
) -> Option<Vec<Vec<usize>>> {
    let mut unvisited: Vec<usize> = vs.to_vec();
    let mut parts = Vec::new();
    while let Some(start) = unvisited.pop() {
        let mut part = vec![start];
        let mut frontier = vec![start];
        while let Some(u) = frontier.pop() {
            let (reached, rest): (Vec<usize>, Vec<usize>) =
                unvisited.iter().partition(|&&w| adjacent(u, w));
            unvisited = rest;
            frontier.extend(&reached);
            part.extend(reached);
        }
        parts.push(part);
    }
    (parts.len() > 1).then_some(parts)
}

/// Groups of `vs` between consecutive complete cuts of the condensation.
fn order_groups(g: &Digraph, vs: &[usize]) -> Option<Vec<Vec<usize>>> {
    let h = g.induced(vs);
    let cond = h.strong_components();
    if cond.len() < 2 {
        return None;
    }
    let n = h.order();
    let mut in_prefix = vec![false; n];
    let mut prefix_size = 0;
    let mut crossing = 0usize;
    let mut groups = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    for comp in &cond.components[..cond.len() - 1] {
        for &v in comp {
            crossing += h.out_neighbors(v).iter().filter(|&&w| !in_prefix[w]).count();
            crossing -= h.in_neighbors(v).iter().filter(|&&w| in_prefix[w]).count();
        }
        for &v in comp {
            in_prefix[v] = true;
        }
        // Arcs inside `comp` were counted as leaving the old prefix; remove them.
        let internal: usize = comp
            .iter()
            .map(|&v| h.out_neighbors(v).iter().filter(|&&w| cond.component_of[w] == cond.component_of[v]).count())
            .sum();
        crossing -= internal;
        prefix_size += comp.len();
        current.extend(comp.iter().map(|&v| vs[v]));
        if crossing == prefix_size * (n - prefix_size) {
            groups.push(std::mem::take(&mut current));
        }
    }
    if groups.is_empty() {
        return None;
    }
    current.extend(cond.components.last().unwrap().iter().map(|&v| vs[v]));
    groups.push(current);
    Some(groups)
}
