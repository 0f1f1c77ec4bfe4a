//! Python bindings: digraphs, expressions, widths, decompositions and the
//! exact oracle.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use diwidth_core::decomp::{
    build_path_decomposition, build_tree_decomposition, normalize_singleton_bags,
    parse_decomposition, path_to_tree_decomposition, Decomposition as CoreDecomposition,
};
use diwidth_core::expr::{condensation_expression, parse_expr, recognize_dicograph, Recognition};
use diwidth_core::generate::{random_expression, rng_from_seed, GeneratorConfig, OpMix};
use diwidth_core::io::{digraph_to_dot, parse_edge_list, write_edge_list};
use diwidth_core::verify::{verify_path_decomposition, verify_tree_decomposition};
use diwidth_core::width::{annotate, width_of_digraph};
use diwidth_core::{Caps, CoExpr, Error, ErrorClass};

create_exception!(diwidth, CapExceededError, PyException, "An instance is larger than a configured cap.");

fn err(e: impl Into<Error>) -> PyErr {
    let e: Error = e.into();
    match e.class() {
        ErrorClass::CapExceeded => CapExceededError::new_err(e.to_string()),
        ErrorClass::Input => PyValueError::new_err(e.to_string()),
    }
}

fn caps(oracle_cap: usize, recognizer_cap: usize) -> Caps {
    Caps {
        oracle: oracle_cap,
        recognizer: recognizer_cap,
        ..Caps::default()
    }
}

#[pyclass(name = "Digraph", module = "diwidth", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDigraph {
    inner: diwidth_core::Digraph,
}

#[pymethods]
impl PyDigraph {
    #[new]
    #[pyo3(signature = (vertices, arcs = Vec::new()))]
    fn new(vertices: Vec<String>, arcs: Vec<(String, String)>) -> PyResult<Self> {
        let inner = diwidth_core::Digraph::new(vertices, arcs).map_err(err)?;
        Ok(PyDigraph { inner })
    }

    /// Parses the `n m` edge-list text format.
    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        Ok(PyDigraph { inner: parse_edge_list(text).map_err(err)? })
    }

    fn to_edge_list(&self) -> String {
        write_edge_list(&self.inner)
    }

    fn to_dot(&self) -> String {
        digraph_to_dot(&self.inner)
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    #[getter]
    fn arcs(&self) -> Vec<(String, String)> {
        self.inner.labelled_arcs().into_iter().collect()
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Digraph({} vertices, {} arcs)", self.inner.order(), self.inner.arc_count())
    }

    /// Strong components as label lists, in topological order.
    fn strong_components(&self) -> Vec<Vec<String>> {
        let g = &self.inner;
        g.strong_components()
            .components
            .iter()
            .map(|c| c.iter().map(|&v| g.label(v).to_string()).collect())
            .collect()
    }

    /// Directed-union expression over the strong components.
    #[pyo3(signature = (recognizer_cap = 512))]
    fn condense(&self, recognizer_cap: usize) -> PyResult<PyExpr> {
        let inner = condensation_expression(&self.inner, recognizer_cap).map_err(err)?;
        Ok(PyExpr { inner })
    }

    /// The di-co-tree if this is a directed co-graph, else `None`.
    #[pyo3(signature = (cap = 512))]
    fn recognize(&self, cap: usize) -> PyResult<Option<PyExpr>> {
        Ok(match recognize_dicograph(&self.inner, cap).map_err(err)? {
            Recognition::Cograph(inner) => Some(PyExpr { inner }),
            Recognition::NotCograph { .. } => None,
        })
    }

    /// `(dpw, dtw_lower, dtw_upper)`; all `-1` for the empty digraph.
    #[pyo3(signature = (oracle_cap = 12, recognizer_cap = 512))]
    fn width(&self, oracle_cap: usize, recognizer_cap: usize) -> PyResult<(i64, i64, i64)> {
        let w = width_of_digraph(&self.inner, &caps(oracle_cap, recognizer_cap)).map_err(err)?;
        Ok((w.dpw, w.dtw_lower, w.dtw_upper))
    }

    /// Optimal directed path-decomposition via the component-wise method.
    #[pyo3(signature = (oracle_cap = 12, recognizer_cap = 512))]
    fn path_decomposition(&self, oracle_cap: usize, recognizer_cap: usize) -> PyResult<PyDecomposition> {
        let w = width_of_digraph(&self.inner, &caps(oracle_cap, recognizer_cap)).map_err(err)?;
        Ok(PyDecomposition { inner: CoreDecomposition::Path(w.certificate()) })
    }

    fn verify(&self, decomposition: &PyDecomposition) -> PyResult<PyVerdict> {
        let v = match &decomposition.inner {
            CoreDecomposition::Path(p) => verify_path_decomposition(&self.inner, p),
            CoreDecomposition::Tree(t) => verify_tree_decomposition(&self.inner, t),
        }
        .map_err(err)?;
        Ok(PyVerdict {
            valid: v.valid,
            width: v.width,
            violations: v.violations.iter().map(ToString::to_string).collect(),
        })
    }
}

#[pyclass(name = "Expr", module = "diwidth", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyExpr {
    inner: CoExpr,
}

impl PyExpr {
    fn binary(&self) -> PyResult<CoExpr> {
        if self.inner.contains_block() {
            return Err(PyValueError::new_err("expression contains an opaque block"));
        }
        Ok(self.inner.binarize())
    }
}

#[pymethods]
impl PyExpr {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyExpr { inner: parse_expr(text).map_err(err)? })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Expr({:?})", self.inner.to_string())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }

    fn evaluate(&self) -> PyResult<PyDigraph> {
        Ok(PyDigraph { inner: self.inner.evaluate().map_err(err)? })
    }

    fn binarize(&self) -> Self {
        PyExpr { inner: self.inner.binarize() }
    }

    fn canonicalize(&self) -> Self {
        PyExpr { inner: self.inner.canonicalize() }
    }

    fn to_extended(&self) -> Self {
        PyExpr { inner: self.inner.to_extended() }
    }

    #[getter]
    fn dpw(&self) -> PyResult<usize> {
        Ok(annotate(&self.binary()?).map_err(err)?.dpw)
    }

    #[getter]
    fn dtw(&self) -> PyResult<usize> {
        Ok(annotate(&self.binary()?).map_err(err)?.dtw)
    }

    fn path_decomposition(&self) -> PyResult<PyDecomposition> {
        let bin = self.binary()?;
        let ann = annotate(&bin).map_err(err)?;
        let p = build_path_decomposition(&bin, &ann).map_err(err)?;
        Ok(PyDecomposition { inner: CoreDecomposition::Path(p) })
    }

    fn tree_decomposition(&self) -> PyResult<PyDecomposition> {
        let bin = self.binary()?;
        let ann = annotate(&bin).map_err(err)?;
        let t = build_tree_decomposition(&bin, &ann).map_err(err)?;
        Ok(PyDecomposition { inner: CoreDecomposition::Tree(t) })
    }
}

#[pyclass(name = "Decomposition", module = "diwidth", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDecomposition {
    inner: CoreDecomposition,
}

#[pymethods]
impl PyDecomposition {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyDecomposition { inner: parse_decomposition(text).map_err(err)? })
    }

    /// `"path"` or `"tree"`.
    #[getter]
    fn kind(&self) -> &'static str {
        match self.inner {
            CoreDecomposition::Path(_) => "path",
            CoreDecomposition::Tree(_) => "tree",
        }
    }

    #[getter]
    fn width(&self) -> i64 {
        self.inner.width()
    }

    /// Bags of a path decomposition, or `W` sets of a tree decomposition.
    #[getter]
    fn bags(&self) -> Vec<Vec<String>> {
        match &self.inner {
            CoreDecomposition::Path(p) => p.bags.iter().map(|b| b.iter().cloned().collect()).collect(),
            CoreDecomposition::Tree(t) => t.nodes.iter().map(|n| n.w.iter().cloned().collect()).collect(),
        }
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn to_dot(&self) -> String {
        self.inner.to_dot()
    }

    fn __repr__(&self) -> String {
        format!("Decomposition(kind={:?}, width={})", self.kind(), self.width())
    }

    /// Arboreal decomposition of `g` from this path decomposition.
    fn to_tree(&self, g: &PyDigraph) -> PyResult<Self> {
        match &self.inner {
            CoreDecomposition::Path(p) => Ok(PyDecomposition {
                inner: CoreDecomposition::Tree(path_to_tree_decomposition(&g.inner, p).map_err(err)?),
            }),
            CoreDecomposition::Tree(_) => Ok(self.clone()),
        }
    }

    /// Splits tree nodes until every `W` set is a single vertex.
    fn normalize(&self, g: &PyDigraph) -> PyResult<Self> {
        match &self.inner {
            CoreDecomposition::Tree(t) => Ok(PyDecomposition {
                inner: CoreDecomposition::Tree(normalize_singleton_bags(&g.inner, t).map_err(err)?),
            }),
            CoreDecomposition::Path(_) => Err(PyValueError::new_err("only tree decompositions are normalized")),
        }
    }
}

#[pyclass(name = "Verdict", module = "diwidth", frozen, get_all)]
struct PyVerdict {
    valid: bool,
    width: i64,
    violations: Vec<String>,
}

#[pymethods]
impl PyVerdict {
    fn __bool__(&self) -> bool {
        self.valid
    }

    fn __repr__(&self) -> String {
        let valid = if self.valid { "True" } else { "False" };
        format!("Verdict(valid={valid}, width={}, violations={:?})", self.width, self.violations)
    }
}

/// Exact directed path-width and an optimal vertex ordering.
#[pyfunction]
#[pyo3(signature = (g, cap = 12))]
fn dpw_exact(g: &PyDigraph, cap: usize) -> PyResult<(usize, Vec<String>)> {
    let sol = diwidth_core::oracle::dpw_exact(&g.inner, cap).map_err(err)?;
    Ok((sol.width, sol.ordering))
}

/// `(lower, upper)` bounds on directed tree-width.
#[pyfunction]
#[pyo3(signature = (g, oracle_cap = 12, recognizer_cap = 512))]
fn dtw_bracket(g: &PyDigraph, oracle_cap: usize, recognizer_cap: usize) -> PyResult<(i64, i64)> {
    diwidth_core::oracle::dtw_bracket(&g.inner, &caps(oracle_cap, recognizer_cap)).map_err(err)
}

/// Reproducible random expressions; `mix` is "cograph" or "extended".
#[pyfunction]
#[pyo3(signature = (seed, count, min_size = 2, max_size = 10, mix = "cograph"))]
fn generate(seed: u64, count: usize, min_size: usize, max_size: usize, mix: &str) -> PyResult<Vec<PyExpr>> {
    let mix = match mix {
        "cograph" => OpMix::cograph(),
        "extended" => OpMix::extended(),
        other => return Err(PyValueError::new_err(format!("unknown mix {other:?}"))),
    };
    if min_size == 0 || min_size > max_size {
        return Err(PyValueError::new_err("need 1 <= min_size <= max_size"));
    }
    let cfg = GeneratorConfig { min_size, max_size, mix, ..GeneratorConfig::default() };
    let mut rng = rng_from_seed(seed);
    Ok((0..count)
        .map(|_| PyExpr { inner: random_expression(&mut rng, &cfg) })
        .collect())
}

#[pymodule]
#[pyo3(name = "diwidth")]
fn diwidth_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDigraph>()?;
    m.add_class::<PyExpr>()?;
    m.add_class::<PyDecomposition>()?;
    m.add_class::<PyVerdict>()?;
    m.add_function(wrap_pyfunction!(dpw_exact, m)?)?;
    m.add_function(wrap_pyfunction!(dtw_bracket, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add("CapExceededError", m.py().get_type::<CapExceededError>())?;
    Ok(())
}
