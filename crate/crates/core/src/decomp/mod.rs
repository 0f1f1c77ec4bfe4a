//! Directed path-decompositions and arboreal tree-decompositions.
//!
//! Both kinds refer to vertices by label so they can be written out and
//! checked against a digraph read from a different file.
//!
//! Text form, one record per line:
//!
//! ```text
//! kind=path
//! bag={a,b}
//! bag={b,c}
//! ```
//!
//! ```text
//! kind=tree
//! node id=0 parent=- W={b} X={}
//! node id=1 parent=0 W={a} X={b}
//! ```
//!
//! `X` is the guard set on the arc from `parent` into the node; the root's
//! is empty.

mod build;

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

pub use build::{
    build_path_decomposition, build_tree_decomposition, normalize_singleton_bags,
    path_to_tree_decomposition,
};

use crate::error::DecompError;

pub type Bag = BTreeSet<String>;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathDecomposition {
    pub bags: Vec<Bag>,
}

impl PathDecomposition {
    pub fn new(bags: Vec<Bag>) -> Self {
        PathDecomposition { bags }
    }

    pub fn from_slices<S: AsRef<str>>(bags: &[&[S]]) -> Self {
        PathDecomposition::new(
            bags.iter()
                .map(|b| b.iter().map(|s| s.as_ref().to_string()).collect())
                .collect(),
        )
    }

    /// Largest bag size minus one; `-1` without bags.
    pub fn width(&self) -> i64 {
        self.bags.iter().map(|b| b.len() as i64).max().unwrap_or(0) - 1
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("kind=path\n");
        for b in &self.bags {
            let _ = writeln!(out, "bag={}", fmt_set(b));
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph path_decomposition {\n  rankdir=LR;\n  node [shape=box];\n");
        for (i, b) in self.bags.iter().enumerate() {
            let _ = writeln!(out, "  b{i} [label=\"{}\"];", fmt_set(b));
            if i > 0 {
                let _ = writeln!(out, "  b{} -> b{i};", i - 1);
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TreeNode {
    pub parent: Option<usize>,
    pub w: Bag,
    /// Guard set on the arc `(parent, this)`.
    pub x: Bag,
}

/// Out-tree given by parent pointers. Node ids are positions in `nodes`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ArborealDecomposition {
    pub nodes: Vec<TreeNode>,
}

impl ArborealDecomposition {
    /// A directed path `0 -> 1 -> …` from `(W, X)` pairs.
    pub fn path(parts: Vec<(Bag, Bag)>) -> Self {
        ArborealDecomposition {
            nodes: parts
                .into_iter()
                .enumerate()
                .map(|(i, (w, x))| TreeNode {
                    parent: i.checked_sub(1),
                    w,
                    x,
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.nodes.len()];
        for (i, n) in self.nodes.iter().enumerate() {
            if let Some(p) = n.parent {
                if p < ch.len() {
                    ch[p].push(i);
                }
            }
        }
        ch
    }

    /// Checks that parent pointers form a single out-tree; returns the root
    /// and a preorder of all nodes.
    pub fn tree_order(&self) -> Result<(usize, Vec<usize>), DecompError> {
        let n = self.nodes.len();
        if n == 0 {
            return Err(DecompError::MalformedTree("no nodes".into()));
        }
        let roots: Vec<usize> = (0..n).filter(|&i| self.nodes[i].parent.is_none()).collect();
        if roots.len() != 1 {
            return Err(DecompError::MalformedTree(format!(
                "expected exactly one root, found {}",
                roots.len()
            )));
        }
        if let Some((i, p)) = self
            .nodes
            .iter()
            .enumerate()
            .find_map(|(i, nd)| nd.parent.filter(|&p| p >= n || p == i).map(|p| (i, p)))
        {
            return Err(DecompError::MalformedTree(format!(
                "node {i} has invalid parent {p}"
            )));
        }
        let children = self.children();
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![roots[0]];
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(children[v].iter().rev());
        }
        if order.len() != n {
            return Err(DecompError::MalformedTree(
                "parent pointers contain a cycle".into(),
            ));
        }
        Ok((roots[0], order))
    }

    /// Union of `W` over the subtree rooted at each node.
    pub fn subtree_sets(&self) -> Result<Vec<Bag>, DecompError> {
        let (_, order) = self.tree_order()?;
        let mut sets: Vec<Bag> = self.nodes.iter().map(|n| n.w.clone()).collect();
        for &v in order.iter().rev() {
            if let Some(p) = self.nodes[v].parent {
                let child = sets[v].clone();
                sets[p].extend(child);
            }
        }
        Ok(sets)
    }

    /// `|W_r ∪ ⋃ X_e| - 1` maximised over nodes `r` and the arcs `e` at `r`;
    /// `-1` without nodes.
    pub fn width(&self) -> i64 {
        let children = self.children();
        self.nodes
            .iter()
            .enumerate()
            .map(|(i, n)| {
                let mut set: HashSet<&String> = n.w.iter().collect();
                if n.parent.is_some() {
                    set.extend(n.x.iter());
                }
                for &c in &children[i] {
                    set.extend(self.nodes[c].x.iter());
                }
                set.len() as i64
            })
            .max()
            .unwrap_or(0)
            - 1
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("kind=tree\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let parent = n.parent.map_or_else(|| "-".to_string(), |p| p.to_string());
            let _ = writeln!(
                out,
                "node id={i} parent={parent} W={} X={}",
                fmt_set(&n.w),
                fmt_set(&n.x)
            );
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph tree_decomposition {\n  node [shape=box];\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  t{i} [label=\"W={}\"];", fmt_set(&n.w));
        }
        for (i, n) in self.nodes.iter().enumerate() {
            if let Some(p) = n.parent {
                let _ = writeln!(out, "  t{p} -> t{i} [label=\"X={}\"];", fmt_set(&n.x));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Either kind, as read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    Path(PathDecomposition),
    Tree(ArborealDecomposition),
}

impl Decomposition {
    pub fn width(&self) -> i64 {
        match self {
            Decomposition::Path(p) => p.width(),
            Decomposition::Tree(t) => t.width(),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Decomposition::Path(p) => p.to_text(),
            Decomposition::Tree(t) => t.to_text(),
        }
    }

    pub fn to_dot(&self) -> String {
        match self {
            Decomposition::Path(p) => p.to_dot(),
            Decomposition::Tree(t) => t.to_dot(),
        }
    }
}

pub(crate) fn fmt_set<'a>(set: impl IntoIterator<Item = &'a String>) -> String {
    let items: Vec<&str> = set.into_iter().map(String::as_str).collect();
    format!("{{{}}}", items.join(","))
}

fn parse_set(line: usize, text: &str) -> Result<Bag, DecompError> {
    let inner = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| DecompError::Format {
            line,
            msg: format!("expected a `{{…}}` set, found `{text}`"),
        })?;
    Ok(inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect())
}

fn format_err(line: usize, msg: impl Into<String>) -> DecompError {
    DecompError::Format {
        line,
        msg: msg.into(),
    }
}

/// Parses the text form of either decomposition kind.
pub fn parse_decomposition(text: &str) -> Result<Decomposition, DecompError> {
    let mut lines = text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap().trim();
        (!l.is_empty()).then_some((i + 1, l))
    });
    let (ln, header) = lines
        .next()
        .ok_or_else(|| format_err(0, "empty decomposition file"))?;
    match header {
        "kind=path" => {
            let mut bags = Vec::new();
            for (ln, line) in lines {
                let set = line
                    .strip_prefix("bag=")
                    .ok_or_else(|| format_err(ln, "expected `bag={…}`"))?;
                bags.push(parse_set(ln, set)?);
            }
            Ok(Decomposition::Path(PathDecomposition::new(bags)))
        }
        "kind=tree" => {
            let mut records: Vec<(usize, usize, TreeNode)> = Vec::new();
            for (ln, line) in lines {
                let mut fields = line.split_whitespace();
                if fields.next() != Some("node") {
                    return Err(format_err(ln, "expected a `node` record"));
                }
                let (mut id, mut parent, mut w, mut x) = (None, None, None, None);
                for field in fields {
                    let (key, value) = field
                        .split_once('=')
                        .ok_or_else(|| format_err(ln, format!("expected key=value, found `{field}`")))?;
                    match key {
                        "id" => {
                            id = Some(value.parse::<usize>().map_err(|_| format_err(ln, "bad id"))?)
                        }
                        "parent" => {
                            parent = Some(if value == "-" {
                                None
                            } else {
                                Some(value.parse::<usize>().map_err(|_| format_err(ln, "bad parent"))?)
                            })
                        }
                        "W" => w = Some(parse_set(ln, value)?),
                        "X" => x = Some(parse_set(ln, value)?),
                        other => return Err(format_err(ln, format!("unknown key `{other}`"))),
                    }
                }
                let id = id.ok_or_else(|| format_err(ln, "missing id"))?;
                let parent = parent.ok_or_else(|| format_err(ln, "missing parent"))?;
                let w = w.ok_or_else(|| format_err(ln, "missing W"))?;
                records.push((ln, id, TreeNode { parent, w, x: x.unwrap_or_default() }));
            }
            let n = records.len();
            let mut nodes: Vec<Option<TreeNode>> = vec![None; n];
            for (ln, id, node) in records {
                if id >= n {
                    return Err(format_err(ln, format!("node ids must be 0..{n}")));
                }
                if nodes[id].replace(node).is_some() {
                    return Err(format_err(ln, format!("duplicate node id {id}")));
                }
            }
            Ok(Decomposition::Tree(ArborealDecomposition {
                nodes: nodes.into_iter().map(Option::unwrap).collect(),
            }))
        }
        other => Err(format_err(ln, format!("unknown header `{other}`"))),
    }
}
