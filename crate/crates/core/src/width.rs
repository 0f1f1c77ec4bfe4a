//! Directed path-width and directed tree-width from binary expressions.
//!
//! Bottom-up over the tree: a leaf has width 0; union, order composition
//! and directed union take the maximum of their operands; series
//! composition of `L` and `R` gives `min(w(L) + |R|, w(R) + |L|)`. The same
//! recursion holds for both width measures, so on any expression the two
//! values agree.
//!
//! For arbitrary digraphs both widths are the maximum over the strong
//! components; [`width_of_digraph`] evaluates each component by formula
//! when it is a directed co-graph and by the exact oracle otherwise.

use crate::decomp::{build_path_decomposition, PathDecomposition};
use crate::digraph::Digraph;
use crate::error::{Error, ExprError};
use crate::expr::{recognize_dicograph, CoExpr, Op, Recognition};
use crate::oracle;
use crate::Caps;

/// Operand of a series node whose decomposition is kept; the other
/// operand's vertices are added to every bag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Widths for every node of a binary expression, mirroring its shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WidthAnnotation {
    pub size: usize,
    pub dpw: usize,
    pub dtw: usize,
    /// Set on series nodes only. Ties go to [`Side::Left`].
    pub series_side: Option<Side>,
    pub children: Vec<WidthAnnotation>,
}

impl WidthAnnotation {
    /// Nodes in preorder, matching [`preorder_nodes`].
    pub fn preorder(&self) -> Vec<&WidthAnnotation> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(n) = stack.pop() {
            out.push(n);
            stack.extend(n.children.iter().rev());
        }
        out
    }
}

/// Expression nodes in preorder.
pub fn preorder_nodes(e: &CoExpr) -> Vec<&CoExpr> {
    let mut out = Vec::new();
    let mut stack = vec![e];
    while let Some(n) = stack.pop() {
        out.push(n);
        if let CoExpr::Compose { children, .. } = n {
            stack.extend(children.iter().rev());
        }
    }
    out
}

fn compose(op: &Op, left: (usize, usize), right: (usize, usize)) -> (usize, Option<Side>) {
    let ((wl, nl), (wr, nr)) = (left, right);
    match op {
        Op::Union | Op::Order | Op::DirectedUnion(_) => (wl.max(wr), None),
        Op::Series => {
            let keep_left = wl + nr;
            let keep_right = wr + nl;
            if keep_left <= keep_right {
                (keep_left, Some(Side::Left))
            } else {
                (keep_right, Some(Side::Right))
            }
        }
    }
}

/// Annotates a binary, block-free expression with sizes and both widths.
pub fn annotate(e: &CoExpr) -> Result<WidthAnnotation, ExprError> {
    match e {
        CoExpr::Leaf(_) => Ok(WidthAnnotation {
            size: 1,
            dpw: 0,
            dtw: 0,
            series_side: None,
            children: vec![],
        }),
        CoExpr::Block(_) => Err(ExprError::OpaqueBlock),
        CoExpr::Compose { op, children } => {
            let [l, r] = children.as_slice() else {
                return Err(ExprError::NotBinary);
            };
            let (l, r) = (annotate(l)?, annotate(r)?);
            let (dpw, side) = compose(op, (l.dpw, l.size), (r.dpw, r.size));
            let (dtw, _) = compose(op, (l.dtw, l.size), (r.dtw, r.size));
            Ok(WidthAnnotation {
                size: l.size + r.size,
                dpw,
                dtw,
                series_side: side,
                children: vec![l, r],
            })
        }
    }
}

/// Directed path-width of the digraph expressed by a binary expression.
pub fn compute_dpw(e: &CoExpr) -> Result<usize, ExprError> {
    Ok(annotate(e)?.dpw)
}

/// Directed tree-width of the digraph expressed by a binary expression.
pub fn compute_dtw(e: &CoExpr) -> Result<usize, ExprError> {
    let a = annotate(e)?;
    assert_eq!(a.dtw, a.dpw, "directed tree-width and path-width differ on an expression");
    Ok(a.dtw)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Recognized as a directed co-graph; widths from the composition formulas.
    Formula,
    /// Exact ordering search; directed tree-width only bracketed.
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Formula => "formula",
            Method::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentWidth {
    /// Labels of the component, sorted.
    pub vertices: Vec<String>,
    pub method: Method,
    pub dpw: usize,
    pub dtw_lower: usize,
    pub dtw_upper: usize,
    /// The di-co-tree used when the method is [`Method::Formula`].
    pub expression: Option<CoExpr>,
    /// Optimal directed path-decomposition of the component.
    pub certificate: PathDecomposition,
}

/// Widths of an arbitrary digraph, assembled from its strong components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigraphWidth {
    /// In topological order of the condensation.
    pub components: Vec<ComponentWidth>,
    /// `-1` for the empty digraph.
    pub dpw: i64,
    pub dtw_lower: i64,
    pub dtw_upper: i64,
}

impl DigraphWidth {
    pub fn dtw_exact(&self) -> Option<i64> {
        (self.dtw_lower == self.dtw_upper).then_some(self.dtw_lower)
    }

    /// Concatenation of the component certificates. Arcs between components
    /// all point forward in this order, so the result is a directed
    /// path-decomposition of the whole digraph of width `dpw`.
    pub fn certificate(&self) -> PathDecomposition {
        PathDecomposition::new(
            self.components
                .iter()
                .flat_map(|c| c.certificate.bags.iter().cloned())
                .collect(),
        )
    }
}

/// Lower bound on the directed tree-width of a strongly connected digraph
/// that is not known to be a co-graph: any cycle forces width 1, and a
/// bioriented clique on `k` vertices forces `k - 1`.
pub(crate) fn strong_component_dtw_lower(c: &Digraph, clique_cap: usize) -> usize {
    let cyclic = usize::from(c.order() > 1);
    let clique = c
        .largest_bioriented_clique(clique_cap)
        .map(|k| k.len().saturating_sub(1))
        .unwrap_or(0);
    cyclic.max(clique)
}

pub fn width_of_digraph(g: &Digraph, caps: &Caps) -> Result<DigraphWidth, Error> {
    let cond = g.strong_components();
    let mut components = Vec::with_capacity(cond.len());
    for (i, comp) in cond.components.iter().enumerate() {
        let sub = g.induced(comp);
        let vertices: Vec<String> = comp.iter().map(|&v| g.label(v).to_string()).collect();
        let recognized = if sub.order() <= caps.recognizer {
            match recognize_dicograph(&sub, caps.recognizer)? {
                Recognition::Cograph(e) => Some(e),
                Recognition::NotCograph { .. } => None,
            }
        } else {
            None
        };
        let cw = match recognized {
            Some(e) => {
                let bin = e.binarize();
                let ann = annotate(&bin)?;
                let certificate = build_path_decomposition(&bin, &ann)?;
                ComponentWidth {
                    vertices,
                    method: Method::Formula,
                    dpw: ann.dpw,
                    dtw_lower: ann.dtw,
                    dtw_upper: ann.dtw,
                    expression: Some(e),
                    certificate,
                }
            }
            None if sub.order() <= caps.oracle => {
                let sol = oracle::dpw_exact(&sub, caps.oracle)?;
                let lower = strong_component_dtw_lower(&sub, caps.clique);
                ComponentWidth {
                    vertices,
                    method: Method::Oracle,
                    dpw: sol.width,
                    dtw_lower: lower.min(sol.width),
                    dtw_upper: sol.width,
                    expression: None,
                    certificate: sol.decomposition,
                }
            }
            None => {
                return Err(Error::Unsupported {
                    component: i,
                    size: sub.order(),
                    cap: caps.oracle,
                })
            }
        };
        components.push(cw);
    }
    let max = |f: fn(&ComponentWidth) -> usize| {
        components.iter().map(|c| f(c) as i64).max().unwrap_or(-1)
    };
    Ok(DigraphWidth {
        dpw: max(|c| c.dpw),
        dtw_lower: max(|c| c.dtw_lower),
        dtw_upper: max(|c| c.dtw_upper),
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn dpw(s: &str) -> usize {
        compute_dpw(&parse_expr(s).unwrap().binarize()).unwrap()
    }

    fn dtw(s: &str) -> usize {
        compute_dtw(&parse_expr(s).unwrap().binarize()).unwrap()
    }

    fn chain(op: &str, n: usize) -> String {
        (0..n).map(|i| format!("v{i}")).collect::<Vec<_>>().join(op)
    }

    #[test]
    fn single_vertex() {
        assert_eq!(dpw("a"), 0);
        assert_eq!(dtw("a"), 0);
    }

    #[test]
    fn bioriented_cliques() {
        for n in 1..=8 {
            assert_eq!(dpw(&chain(" * ", n)), n - 1);
        }
    }

    #[test]
    fn stars() {
        for n in 2..=8 {
            let leaves = (0..n).map(|i| format!("l{i}")).collect::<Vec<_>>().join(" + ");
            assert_eq!(dpw(&format!("c * ({leaves})")), 1);
        }
    }

    #[test]
    fn dtw_examples() {
        assert_eq!(dtw("a / b / c"), 0);
        assert_eq!(dtw("(a * b) + (c * d * e)"), 2);
        assert_eq!(dtw("(a + b) * (c + d)"), 2);
    }

    #[test]
    fn rejects_non_binary_and_blocks() {
        assert_eq!(
            compute_dpw(&parse_expr("a + b + c").unwrap()),
            Err(ExprError::NotBinary)
        );
        assert_eq!(
            compute_dpw(&parse_expr("block(a, b; a->b) / c").unwrap()),
            Err(ExprError::OpaqueBlock)
        );
    }

    #[test]
    fn series_tie_prefers_left() {
        let a = annotate(&parse_expr("a * b").unwrap()).unwrap();
        assert_eq!(a.series_side, Some(Side::Left));
        let a = annotate(&parse_expr("c * (l1 + l2)").unwrap()).unwrap();
        assert_eq!(a.series_side, Some(Side::Right));
        assert_eq!(a.preorder().len(), 5);
    }

    #[test]
    fn split_invariance() {
        // Every binarization of a k-ary node gives the same value.
        let parts = ["(a * b)", "(c + d + e)", "f", "(g / h)"];
        let flat = parse_expr(&parts.join(" * ")).unwrap().binarize();
        let nested = parse_expr("((a * b) * ((c + d + e) * (f * (g / h))))")
            .unwrap()
            .binarize();
        assert_eq!(compute_dpw(&flat), compute_dpw(&nested));
    }

    #[test]
    fn general_digraphs() {
        let caps = Caps::default();
        let dag = Digraph::new(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap();
        let w = width_of_digraph(&dag, &caps).unwrap();
        assert_eq!((w.dpw, w.dtw_exact()), (0, Some(0)));

        let two = parse_expr("du((a * b * c), (x * y * z); c->x)")
            .unwrap()
            .evaluate()
            .unwrap();
        let w = width_of_digraph(&two, &caps).unwrap();
        assert_eq!((w.dpw, w.dtw_exact()), (2, Some(2)));
        assert!(w.components.iter().all(|c| c.method == Method::Formula));

        // Directed 5-cycle with one chord: strongly connected, not a co-graph.
        let cyc = Digraph::new(
            ["a", "b", "c", "d", "e"],
            [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a"), ("a", "c")],
        )
        .unwrap();
        let w = width_of_digraph(&cyc, &caps).unwrap();
        assert_eq!(w.components.len(), 1);
        assert_eq!(w.components[0].method, Method::Oracle);
        assert_eq!(w.dpw, 1);
        assert_eq!((w.dtw_lower, w.dtw_upper), (1, 1));

        let empty = Digraph::new(Vec::<String>::new(), Vec::<(String, String)>::new()).unwrap();
        assert_eq!(width_of_digraph(&empty, &caps).unwrap().dpw, -1);

        let big_cycle: Vec<String> = (0..14).map(|i| format!("v{i:02}")).collect();
        let arcs: Vec<(String, String)> = (0..14)
            .map(|i| (big_cycle[i].clone(), big_cycle[(i + 1) % 14].clone()))
            .collect();
        let g = Digraph::new(big_cycle.clone(), arcs).unwrap();
        assert!(matches!(
            width_of_digraph(&g, &caps),
            Err(Error::Unsupported { size: 14, .. })
        ));
    }
}
