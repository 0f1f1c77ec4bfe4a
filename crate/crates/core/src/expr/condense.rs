//! Every digraph is the directed union of its strong components, taken in
//! a topological order of the condensation.

use std::collections::{BTreeMap, BTreeSet};

use super::{recognize_dicograph, CoExpr, Op, Recognition};
use crate::digraph::Digraph;
use crate::error::ExprError;

/// Right-nested directed-union chain over the strong components of `g`.
///
/// Component `i` (in the order of [`Digraph::strong_components`]) is
/// represented by `provided[&i]` when given, which must evaluate to exactly
/// that component; otherwise by a leaf if it is a single vertex, and by an
/// opaque block if not.
pub fn strong_component_expression(
    g: &Digraph,
    provided: &BTreeMap<usize, CoExpr>,
) -> Result<CoExpr, ExprError> {
    let cond = g.strong_components();
    let mut parts = Vec::with_capacity(cond.len());
    for (i, comp) in cond.components.iter().enumerate() {
        let sub = g.induced(comp);
        let part = match provided.get(&i) {
            Some(e) => {
                if e.evaluate()? != sub {
                    return Err(ExprError::ComponentMismatch(i));
                }
                e.clone()
            }
            None if comp.len() == 1 => CoExpr::leaf(g.label(comp[0])),
            None => CoExpr::Block(sub),
        };
        parts.push(part);
    }
    let Some(mut acc) = parts.pop() else {
        return Err(ExprError::TooFewOperands(0));
    };
    for (i, part) in parts.into_iter().enumerate().rev() {
        let arcs: BTreeSet<(String, String)> = cond.components[i]
            .iter()
            .flat_map(|&u| g.out_neighbors(u).iter().map(move |&v| (u, v)))
            .filter(|&(_, v)| cond.component_of[v] > i)
            .map(|(u, v)| (g.label(u).to_string(), g.label(v).to_string()))
            .collect();
        acc = CoExpr::Compose {
            op: Op::DirectedUnion(arcs),
            children: vec![part, acc],
        };
    }
    Ok(acc)
}

/// Like [`strong_component_expression`], with each component replaced by
/// its di-co-tree whenever the recognizer (bounded by `recognizer_cap`)
/// finds one.
pub fn condensation_expression(g: &Digraph, recognizer_cap: usize) -> Result<CoExpr, ExprError> {
    let cond = g.strong_components();
    let mut provided = BTreeMap::new();
    for (i, comp) in cond.components.iter().enumerate() {
        if comp.len() < 2 || comp.len() > recognizer_cap {
            continue;
        }
        if let Recognition::Cograph(e) = recognize_dicograph(&g.induced(comp), recognizer_cap)? {
            provided.insert(i, e);
        }
    }
    strong_component_expression(g, &provided)
}
