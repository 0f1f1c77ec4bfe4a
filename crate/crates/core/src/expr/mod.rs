//! Expressions for directed co-graphs and extended directed co-graphs.
//!
//! An expression is a rooted tree whose leaves are vertices and whose inner
//! nodes combine vertex-disjoint operands:
//!
//! | text         | operator           | arcs added between operands        |
//! |--------------|--------------------|------------------------------------|
//! | `a + b`      | disjoint union     | none                               |
//! | `a * b`      | series composition | all, in both directions            |
//! | `a / b`      | order composition  | all, from earlier to later operand |
//! | `du(a, b; …)`| directed union     | exactly the listed forward arcs    |
//!
//! `block(a, b; a->b, b->a)` embeds a fixed digraph as an opaque operand.
//! Blocks are produced when a strong component is not a co-graph; the width
//! formulas do not apply to them.

mod condense;
mod parse;
mod recognize;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

pub use condense::{condensation_expression, strong_component_expression};
pub use parse::parse_expr;
pub use recognize::{recognize_dicograph, Recognition};

use crate::digraph::Digraph;
use crate::error::ExprError;

/// Inner-node operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Op {
    Union,
    Series,
    Order,
    /// Directed union with its explicit forward cross arcs.
    DirectedUnion(BTreeSet<(String, String)>),
}

impl Op {
    pub fn name(&self) -> &'static str {
        match self {
            Op::Union => "union",
            Op::Series => "series",
            Op::Order => "order",
            Op::DirectedUnion(_) => "directed-union",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoExpr {
    Leaf(String),
    Compose { op: Op, children: Vec<CoExpr> },
    Block(Digraph),
}

impl CoExpr {
    pub fn leaf(label: impl Into<String>) -> CoExpr {
        CoExpr::Leaf(label.into())
    }

    pub fn union(children: Vec<CoExpr>) -> CoExpr {
        CoExpr::Compose {
            op: Op::Union,
            children,
        }
    }

    pub fn series(children: Vec<CoExpr>) -> CoExpr {
        CoExpr::Compose {
            op: Op::Series,
            children,
        }
    }

    pub fn order(children: Vec<CoExpr>) -> CoExpr {
        CoExpr::Compose {
            op: Op::Order,
            children,
        }
    }

    pub fn directed_union<S: Into<String>>(
        children: Vec<CoExpr>,
        arcs: impl IntoIterator<Item = (S, S)>,
    ) -> CoExpr {
        CoExpr::Compose {
            op: Op::DirectedUnion(arcs.into_iter().map(|(u, v)| (u.into(), v.into())).collect()),
            children,
        }
    }

    /// Number of vertices of the expressed digraph.
    pub fn size(&self) -> usize {
        match self {
            CoExpr::Leaf(_) => 1,
            CoExpr::Block(g) => g.order(),
            CoExpr::Compose { children, .. } => children.iter().map(CoExpr::size).sum(),
        }
    }

    /// Number of tree nodes; a block counts as one.
    pub fn node_count(&self) -> usize {
        match self {
            CoExpr::Compose { children, .. } => {
                1 + children.iter().map(CoExpr::node_count).sum::<usize>()
            }
            _ => 1,
        }
    }

    /// Vertex labels in left-to-right leaf order.
    pub fn labels(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.size());
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut Vec<String>) {
        match self {
            CoExpr::Leaf(l) => out.push(l.clone()),
            CoExpr::Block(g) => out.extend(g.labels().iter().cloned()),
            CoExpr::Compose { children, .. } => {
                for c in children {
                    c.collect_labels(out);
                }
            }
        }
    }

    fn smallest_label(&self) -> String {
        self.labels().into_iter().min().unwrap_or_default()
    }

    fn any_node(&self, pred: &impl Fn(&CoExpr) -> bool) -> bool {
        pred(self)
            || match self {
                CoExpr::Compose { children, .. } => children.iter().any(|c| c.any_node(pred)),
                _ => false,
            }
    }

    /// True if built from leaves by union, series and order composition only.
    pub fn is_di_co_tree(&self) -> bool {
        !self.any_node(&|e| {
            matches!(
                e,
                CoExpr::Block(_)
                    | CoExpr::Compose {
                        op: Op::DirectedUnion(_),
                        ..
                    }
            )
        })
    }

    /// True if no opaque block occurs. Union and order nodes are accepted as
    /// directed unions with empty and full cross-arc sets.
    pub fn is_ex_di_co_tree(&self) -> bool {
        !self.contains_block()
    }

    pub fn contains_block(&self) -> bool {
        self.any_node(&|e| matches!(e, CoExpr::Block(_)))
    }

    pub fn contains_op(&self, op: &Op) -> bool {
        let want = std::mem::discriminant(op);
        self.any_node(&|e| matches!(e, CoExpr::Compose { op, .. } if std::mem::discriminant(op) == want))
    }

    pub fn is_binary(&self) -> bool {
        match self {
            CoExpr::Compose { children, .. } => {
                children.len() == 2 && children.iter().all(CoExpr::is_binary)
            }
            _ => true,
        }
    }

    /// Checks leaf distinctness, operand counts and cross-arc direction.
    pub fn validate(&self) -> Result<(), ExprError> {
        let mut seen = HashSet::new();
        for l in self.labels() {
            crate::digraph::check_label(&l)?;
            if !seen.insert(l.clone()) {
                return Err(ExprError::DuplicateLabel(l));
            }
        }
        self.validate_nodes()
    }

    fn validate_nodes(&self) -> Result<(), ExprError> {
        let CoExpr::Compose { op, children } = self else {
            return Ok(());
        };
        if children.len() < 2 {
            return Err(ExprError::TooFewOperands(children.len()));
        }
        if let Op::DirectedUnion(arcs) = op {
            let owner = operand_index(children);
            for (u, v) in arcs {
                match (owner.get(u.as_str()), owner.get(v.as_str())) {
                    (Some(i), Some(j)) if i < j => {}
                    (Some(_), Some(_)) => {
                        return Err(ExprError::CrossArcDirection(u.clone(), v.clone()))
                    }
                    _ => return Err(ExprError::CrossArcUnknown(u.clone(), v.clone())),
                }
            }
        }
        children.iter().try_for_each(CoExpr::validate_nodes)
    }

    /// The digraph this expression denotes. Vertices appear in leaf order.
    pub fn evaluate(&self) -> Result<Digraph, ExprError> {
        self.validate()?;
        let labels = self.labels();
        let index: HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let mut arcs = Vec::new();
        self.emit_arcs(0, &index, &mut arcs);
        Ok(Digraph::from_indices(labels.clone(), arcs)?)
    }

    /// Pushes the arcs of this subtree, whose leaves occupy indices
    /// `start..start + size`. Returns the end of the range.
    fn emit_arcs(
        &self,
        start: usize,
        index: &HashMap<&str, usize>,
        arcs: &mut Vec<(usize, usize)>,
    ) -> usize {
        match self {
            CoExpr::Leaf(_) => start + 1,
            CoExpr::Block(g) => {
                arcs.extend(g.arcs().map(|(u, v)| (start + u, start + v)));
                start + g.order()
            }
            CoExpr::Compose { op, children } => {
                let mut ranges = Vec::with_capacity(children.len());
                let mut pos = start;
                for c in children {
                    let end = c.emit_arcs(pos, index, arcs);
                    ranges.push(pos..end);
                    pos = end;
                }
                match op {
                    Op::Union => {}
                    Op::Series | Op::Order => {
                        for (i, a) in ranges.iter().enumerate() {
                            for (j, b) in ranges.iter().enumerate() {
                                if i < j || (i > j && *op == Op::Series) {
                                    for u in a.clone() {
                                        arcs.extend(b.clone().map(|v| (u, v)));
                                    }
                                }
                            }
                        }
                    }
                    Op::DirectedUnion(cross) => {
                        arcs.extend(cross.iter().map(|(u, v)| (index[u.as_str()], index[v.as_str()])));
                    }
                }
                pos
            }
        }
    }

    /// Rewrites every operator node with `k > 2` operands into a left-nested
    /// chain of binary nodes. Cross arcs of a directed union move to the
    /// binary node joining the operands that hold their endpoints.
    pub fn binarize(&self) -> CoExpr {
        match self {
            CoExpr::Compose { op, children } => {
                let mut binarized = children.iter().map(CoExpr::binarize);
                let first = binarized.next().expect("operator node without operands");
                match op {
                    Op::DirectedUnion(cross) => {
                        let owner = operand_index(children);
                        let mut acc = first;
                        for (j, child) in binarized.enumerate() {
                            let level = j + 1;
                            let arcs: BTreeSet<(String, String)> = cross
                                .iter()
                                .filter(|(_, v)| owner.get(v.as_str()) == Some(&level))
                                .cloned()
                                .collect();
                            acc = CoExpr::Compose {
                                op: Op::DirectedUnion(arcs),
                                children: vec![acc, child],
                            };
                        }
                        acc
                    }
                    _ => binarized.fold(first, |acc, child| CoExpr::Compose {
                        op: op.clone(),
                        children: vec![acc, child],
                    }),
                }
            }
            other => other.clone(),
        }
    }

    /// Replaces union and order nodes by directed unions with empty and full
    /// cross-arc sets.
    pub fn to_extended(&self) -> CoExpr {
        match self {
            CoExpr::Compose { op, children } => {
                let new_children: Vec<CoExpr> = children.iter().map(CoExpr::to_extended).collect();
                let op = match op {
                    Op::Union => Op::DirectedUnion(BTreeSet::new()),
                    Op::Order => {
                        let parts: Vec<Vec<String>> = children.iter().map(CoExpr::labels).collect();
                        let mut arcs = BTreeSet::new();
                        for (i, a) in parts.iter().enumerate() {
                            for b in &parts[i + 1..] {
                                for u in a {
                                    for v in b {
                                        arcs.insert((u.clone(), v.clone()));
                                    }
                                }
                            }
                        }
                        Op::DirectedUnion(arcs)
                    }
                    other => other.clone(),
                };
                CoExpr::Compose {
                    op,
                    children: new_children,
                }
            }
            other => other.clone(),
        }
    }

    /// Merges nested nodes of the same associative operator (union, series,
    /// order) and sorts the operands of commutative ones by their smallest label.
    pub fn canonicalize(&self) -> CoExpr {
        match self {
            CoExpr::Compose { op, children } => {
                let mut flat = Vec::with_capacity(children.len());
                for c in children.iter().map(CoExpr::canonicalize) {
                    match c {
                        CoExpr::Compose {
                            op: inner,
                            children: grand,
                        } if inner == *op && !matches!(op, Op::DirectedUnion(_)) => {
                            flat.extend(grand)
                        }
                        other => flat.push(other),
                    }
                }
                if matches!(op, Op::Union | Op::Series) {
                    flat.sort_by_cached_key(CoExpr::smallest_label);
                }
                CoExpr::Compose {
                    op: op.clone(),
                    children: flat,
                }
            }
            other => other.clone(),
        }
    }
}

/// Maps each label below a node to the position of the operand holding it.
fn operand_index(children: &[CoExpr]) -> HashMap<String, usize> {
    let mut owner = HashMap::new();
    for (i, c) in children.iter().enumerate() {
        for l in c.labels() {
            owner.insert(l, i);
        }
    }
    owner
}

fn write_arcs<'a>(
    f: &mut fmt::Formatter<'_>,
    arcs: impl Iterator<Item = (&'a str, &'a str)>,
) -> fmt::Result {
    for (i, (u, v)) in arcs.enumerate() {
        if i == 0 {
            write!(f, "; ")?;
        } else {
            write!(f, ", ")?;
        }
        write!(f, "{u}->{v}")?;
    }
    Ok(())
}

/// Fully parenthesized form accepted by [`parse_expr`].
impl fmt::Display for CoExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoExpr::Leaf(l) => write!(f, "{l}"),
            CoExpr::Block(g) => {
                write!(f, "block(")?;
                for (i, l) in g.labels().iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{l}")?;
                }
                write_arcs(f, g.arcs().map(|(u, v)| (g.label(u), g.label(v))))?;
                write!(f, ")")
            }
            CoExpr::Compose { op, children } => {
                let sep = match op {
                    Op::Union => " + ",
                    Op::Series => " * ",
                    Op::Order => " / ",
                    Op::DirectedUnion(_) => ", ",
                };
                if matches!(op, Op::DirectedUnion(_)) {
                    write!(f, "du")?;
                }
                write!(f, "(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        write!(f, "{sep}")?;
                    }
                    write!(f, "{c}")?;
                }
                if let Op::DirectedUnion(arcs) = op {
                    write_arcs(f, arcs.iter().map(|(u, v)| (u.as_str(), v.as_str())))?;
                }
                write!(f, ")")
            }
        }
    }
}
