use std::collections::BTreeSet;

use super::{ArborealDecomposition, Bag, PathDecomposition, TreeNode};
use crate::digraph::Digraph;
use crate::error::{DecompError, ExprError};
use crate::expr::{CoExpr, Op};
use crate::verify::{verify_path_decomposition, verify_tree_decomposition};
use crate::width::{Side, WidthAnnotation};

type Operands<'a> = [(&'a CoExpr, &'a WidthAnnotation); 2];

fn split_binary<'a>(
    e: &'a CoExpr,
    ann: &'a WidthAnnotation,
) -> Result<Option<(&'a Op, Operands<'a>)>, ExprError> {
    match e {
        CoExpr::Leaf(_) => Ok(None),
        CoExpr::Block(_) => Err(ExprError::OpaqueBlock),
        CoExpr::Compose { op, children } => match (children.as_slice(), ann.children.as_slice()) {
            ([l, r], [al, ar]) => Ok(Some((op, [(l, al), (r, ar)]))),
            _ => Err(ExprError::NotBinary),
        },
    }
}

/// Optimal directed path-decomposition of a binary expression.
///
/// Union, order and directed union concatenate the operands' bag
/// sequences; series keeps the sequence of the side recorded in `ann` and
/// adds the other operand's vertices to every bag.
pub fn build_path_decomposition(
    e: &CoExpr,
    ann: &WidthAnnotation,
) -> Result<PathDecomposition, ExprError> {
    let (bags, _) = path_bags(e, ann)?;
    Ok(PathDecomposition::new(bags))
}

fn path_bags(e: &CoExpr, ann: &WidthAnnotation) -> Result<(Vec<Bag>, Bag), ExprError> {
    let Some((op, [(l, al), (r, ar)])) = split_binary(e, ann)? else {
        let CoExpr::Leaf(v) = e else { unreachable!() };
        let single: Bag = [v.clone()].into();
        return Ok((vec![single.clone()], single));
    };
    let (mut left, lv) = path_bags(l, al)?;
    let (mut right, rv) = path_bags(r, ar)?;
    let mut all = lv.clone();
    all.extend(rv.iter().cloned());
    let bags = match op {
        Op::Series => {
            let (mut kept, other) = match ann.series_side.unwrap_or(Side::Left) {
                Side::Left => (left, rv),
                Side::Right => (right, lv),
            };
            for b in &mut kept {
                b.extend(other.iter().cloned());
            }
            kept.dedup();
            kept
        }
        _ => {
            left.append(&mut right);
            left
        }
    };
    Ok((bags, all))
}

/// Arboreal tree-decomposition of a binary expression whose width equals
/// its directed tree-width. The tree is always a directed path.
///
/// Union, order and directed union hang the right operand's tree below the
/// last node of the left one with an empty guard; series puts the other
/// operand's vertices into a new root and into every guard of the kept
/// side.
pub fn build_tree_decomposition(
    e: &CoExpr,
    ann: &WidthAnnotation,
) -> Result<ArborealDecomposition, ExprError> {
    let (parts, _) = tree_path(e, ann)?;
    Ok(ArborealDecomposition::path(parts))
}

fn tree_path(e: &CoExpr, ann: &WidthAnnotation) -> Result<(Vec<(Bag, Bag)>, Bag), ExprError> {
    let Some((op, [(l, al), (r, ar)])) = split_binary(e, ann)? else {
        let CoExpr::Leaf(v) = e else { unreachable!() };
        let single: Bag = [v.clone()].into();
        return Ok((vec![(single.clone(), Bag::new())], single));
    };
    let (mut left, lv) = tree_path(l, al)?;
    let (mut right, rv) = tree_path(r, ar)?;
    let mut all = lv.clone();
    all.extend(rv.iter().cloned());
    let parts = match op {
        Op::Series => {
            let (kept, other) = match ann.series_side.unwrap_or(Side::Left) {
                Side::Left => (left, rv),
                Side::Right => (right, lv),
            };
            let mut parts = Vec::with_capacity(kept.len() + 1);
            parts.push((other.clone(), Bag::new()));
            parts.extend(kept.into_iter().map(|(w, mut x)| {
                x.extend(other.iter().cloned());
                (w, x)
            }));
            parts
        }
        _ => {
            // The right operand's root keeps its empty guard.
            left.append(&mut right);
            left
        }
    };
    Ok((parts, all))
}

fn require_valid(verdict: crate::verify::Verdict) -> Result<(), DecompError> {
    match verdict.violations.first() {
        None => Ok(()),
        Some(v) => Err(DecompError::Invalid(v.to_string())),
    }
}

/// Turns a directed path-decomposition `(Y_1, …, Y_r)` into an arboreal
/// decomposition on a directed path: node `i` gets the vertices first seen
/// in `Y_i`, and the arc into node `i` is guarded by `Y_{i-1} ∩ Y_i`.
///
/// Bags that introduce no new vertex would give empty `W` sets; such nodes
/// are dropped. Their bags are contained in the preceding bag, so the next
/// kept node's guard `Y_{i-1} ∩ Y_i` still fits inside the previous kept
/// bag and the width does not grow.
pub fn path_to_tree_decomposition(
    g: &Digraph,
    p: &PathDecomposition,
) -> Result<ArborealDecomposition, DecompError> {
    require_valid(verify_path_decomposition(g, p)?)?;
    let bags: Vec<&Bag> = p.bags.iter().filter(|b| !b.is_empty()).collect();
    let mut seen: BTreeSet<&String> = BTreeSet::new();
    let mut parts = Vec::new();
    for (i, bag) in bags.iter().enumerate() {
        let w: Bag = bag.iter().filter(|v| !seen.contains(v)).cloned().collect();
        seen.extend(bag.iter());
        if w.is_empty() {
            continue;
        }
        let x: Bag = match i.checked_sub(1) {
            Some(prev) if !parts.is_empty() => bags[prev].intersection(bag).cloned().collect(),
            _ => Bag::new(),
        };
        parts.push((w, x));
    }
    Ok(ArborealDecomposition::path(parts))
}

/// Splits every node with `|W| = k > 1` into a directed path of `k` nodes
/// holding one vertex each (in label order). The arc into the `j`-th new
/// node is guarded by the old incoming guard plus the `j - 1` vertices
/// placed above it; the old children hang below the last new node.
pub fn normalize_singleton_bags(
    g: &Digraph,
    d: &ArborealDecomposition,
) -> Result<ArborealDecomposition, DecompError> {
    require_valid(verify_tree_decomposition(g, d)?)?;
    let (_, order) = d.tree_order()?;
    let mut nodes: Vec<TreeNode> = Vec::with_capacity(g.order());
    // Last new node standing for each old node.
    let mut tail = vec![usize::MAX; d.len()];
    for &old in &order {
        let node = &d.nodes[old];
        let mut parent = node.parent.map(|p| tail[p]);
        let mut placed = Bag::new();
        for (j, v) in node.w.iter().enumerate() {
            let mut x = if node.parent.is_some() { node.x.clone() } else { Bag::new() };
            if j > 0 {
                x.extend(placed.iter().cloned());
            }
            nodes.push(TreeNode {
                parent,
                w: [v.clone()].into(),
                x,
            });
            placed.insert(v.clone());
            parent = Some(nodes.len() - 1);
        }
        tail[old] = nodes.len() - 1;
    }
    Ok(ArborealDecomposition { nodes })
}
