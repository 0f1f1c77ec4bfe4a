//! Directed path-width and directed tree-width of directed co-graphs.
//!
//! Widths of (extended) directed co-graphs are computed bottom-up over a
//! binary expression tree in time linear in the number of vertices. Every
//! value can be backed by a decomposition that is checked against the
//! axioms by [`verify`], and by an exact vertex-ordering search in
//! [`oracle`] on small instances.
//!
//! ```
//! use diwidth::decomp::build_tree_decomposition;
//! use diwidth::expr::parse_expr;
//! use diwidth::verify::verify_tree_decomposition;
//! use diwidth::width::annotate;
//!
//! let e = parse_expr("c * (l1 + l2 + l3)")?.binarize();
//! let ann = annotate(&e)?;
//! assert_eq!((ann.dpw, ann.dtw), (1, 1));
//!
//! let g = e.evaluate()?;
//! let d = build_tree_decomposition(&e, &ann)?;
//! assert!(verify_tree_decomposition(&g, &d)?.valid);
//! # Ok::<(), diwidth::Error>(())
//! ```

pub mod decomp;
pub mod digraph;
pub mod error;
pub mod expr;
pub mod generate;
pub mod io;
pub mod oracle;
pub mod verify;
pub mod width;

pub use decomp::{ArborealDecomposition, PathDecomposition, TreeNode};
pub use digraph::{Condensation, Digraph, UndirectedGraph};
pub use error::{Error, ErrorClass};
pub use expr::{CoExpr, Op};
pub use verify::{Axiom, Verdict, Violation, Witness};
pub use width::{Side, WidthAnnotation};

/// Size limits for the exponential parts of the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest digraph handed to the exact ordering search.
    pub oracle: usize,
    /// Largest digraph handed to the co-graph recognizer.
    pub recognizer: usize,
    /// Largest digraph searched for a maximum bioriented clique.
    pub clique: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            oracle: 12,
            recognizer: 512,
            clique: 20,
        }
    }
}
