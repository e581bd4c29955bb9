//! Python bindings for the splitword library.
//!
//! Exposes the `Graph` type plus the main operations: split partitioning,
//! clique labelling, word construction, representation checks, and the
//! permutation-representation number with certificates. Structured results
//! come back as plain dicts/lists (round-tripped through JSON).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use splitword::graph;
use splitword::labelling;
use splitword::posetdim;
use splitword::split;
use splitword::sweep::{SweepConfig, SweepMode};
use splitword::wordgen;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Convert any serializable Rust value into Python objects via json.loads.
fn to_py(py: Python<'_>, value: &impl serde::Serialize) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(value_error)?;
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (text,))?.unbind())
}

/// An undirected simple graph on vertices 0..n (n at most 64).
#[pyclass(name = "Graph", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: graph::Graph,
}

#[pymethods]
impl PyGraph {
    /// Build from a vertex count and a list of (u, v) edges.
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph { inner: graph::Graph::from_edges(n, &edges).map_err(value_error)? })
    }

    /// Parse an edge-list document: "n=3; 0-1,1-2,0-2".
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: graph::parse_edge_list(text).map_err(value_error)? })
    }

    /// Decode a graph6 line.
    #[staticmethod]
    fn from_graph6(line: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: graph::parse_graph6(line).map_err(value_error)? })
    }

    #[staticmethod]
    fn complete(n: usize) -> PyResult<Self> {
        if n > graph::MAX_VERTICES {
            return Err(value_error("n exceeds the 64-vertex limit"));
        }
        Ok(PyGraph { inner: graph::Graph::complete(n) })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.inner.has_edge(u, v)
    }

    fn complement(&self) -> PyGraph {
        PyGraph { inner: self.inner.complement() }
    }

    fn graph6(&self) -> String {
        graph::encode_graph6(&self.inner)
    }

    fn edge_list(&self) -> String {
        graph::to_edge_list(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={})", self.inner.n(), self.inner.edge_count())
    }
}

/// Canonical split partition as (clique, independent) vertex lists.
/// Raises ValueError with the obstruction name when the graph is not split.
#[pyfunction]
fn split_partition(g: &PyGraph) -> PyResult<(Vec<usize>, Vec<usize>)> {
    let sg = split::split_partition(&g.inner).map_err(value_error)?;
    Ok((sg.clique_vertices(), sg.independent_vertices()))
}

/// Clique labelling and classification, or None for non-comparability
/// split graphs. Returns {"clique_order", "classification", "d"}.
#[pyfunction]
fn find_labelling(py: Python<'_>, g: &PyGraph) -> PyResult<Option<Py<PyAny>>> {
    let sg = split::split_partition(&g.inner).map_err(value_error)?;
    match labelling::find_labelling(&sg) {
        None => Ok(None),
        Some((lab, cls)) => {
            let entries: Vec<serde_json::Value> = cls
                .entries()
                .iter()
                .map(|&(v, c)| {
                    let mut obj = serde_json::to_value(c).unwrap();
                    obj["vertex"] = serde_json::json!(v);
                    obj
                })
                .collect();
            let out = serde_json::json!({
                "clique_order": lab.order(),
                "classification": entries,
                "d": cls.d(),
            });
            Ok(Some(to_py(py, &out)?))
        }
    }
}

/// The three permutation blocks and z for a split comparability graph:
/// {"q1", "q2", "q3", "z", "digits"?}. Raises ValueError otherwise.
#[pyfunction]
fn build_word(py: Python<'_>, g: &PyGraph) -> PyResult<Py<PyAny>> {
    let sg = split::split_partition(&g.inner).map_err(value_error)?;
    let (lab, cls) = labelling::find_labelling(&sg)
        .ok_or_else(|| value_error("not a comparability graph: no valid clique labelling"))?;
    let (q1, q2, q3) = wordgen::build_word(&sg, &lab, &cls).map_err(value_error)?;
    let z = wordgen::Word::concat(&[&q1, &q2, &q3]);
    let digits = wordgen::digit_string(&z, &lab, &sg).map(|zd| {
        serde_json::json!({
            "q1": wordgen::digit_string(&q1, &lab, &sg),
            "q2": wordgen::digit_string(&q2, &lab, &sg),
            "q3": wordgen::digit_string(&q3, &lab, &sg),
            "z": zd,
        })
    });
    let out = serde_json::json!({
        "q1": q1, "q2": q2, "q3": q3, "z": z, "digits": digits,
    });
    to_py(py, &out)
}

/// Does the word (a list of vertex ids) represent the graph by strict
/// alternation? Raises ValueError if some vertex never occurs.
#[pyfunction]
fn represents(word: Vec<usize>, g: &PyGraph) -> PyResult<bool> {
    wordgen::represents(&wordgen::Word::new(word), &g.inner).map_err(value_error)
}

/// Do letters x and y strictly alternate in the word?
#[pyfunction]
fn alternates(word: Vec<usize>, x: usize, y: usize) -> PyResult<bool> {
    if x == y {
        return Err(value_error("alternation needs two distinct letters"));
    }
    Ok(wordgen::alternates(&wordgen::Word::new(word), x, y))
}

/// Subword keeping exactly the letters in `keep`, order preserved.
#[pyfunction]
fn restrict(word: Vec<usize>, keep: Vec<usize>) -> PyResult<Vec<usize>> {
    let mut mask = 0u64;
    for v in keep {
        if v >= 64 {
            return Err(value_error("letters must be below 64"));
        }
        mask |= 1 << v;
    }
    Ok(wordgen::restrict(&wordgen::Word::new(word), mask).letters().to_vec())
}

/// Common multiplicity of all letters, or None if they differ.
#[pyfunction]
fn uniformity(word: Vec<usize>) -> Option<usize> {
    wordgen::uniformity(&wordgen::Word::new(word))
}

/// Permutation-representation number with certificate:
/// {"value", "certificate_kind", "certificate_data"}.
#[pyfunction]
fn prn(py: Python<'_>, g: &PyGraph) -> PyResult<Py<PyAny>> {
    let res = posetdim::prn(&g.inner).map_err(value_error)?;
    to_py(py, &res)
}

/// Exhaustive permutation-tuple oracle (n <= 5, k <= 3).
#[pyfunction]
fn prn_oracle(g: &PyGraph, k: usize) -> PyResult<bool> {
    posetdim::prn_oracle(&g.inner, k).map_err(value_error)
}

/// Order dimension of the induced poset of a split comparability graph.
#[pyfunction]
fn poset_dimension(g: &PyGraph) -> PyResult<usize> {
    let sg = split::split_partition(&g.inner).map_err(value_error)?;
    let (lab, cls) = labelling::find_labelling(&sg)
        .ok_or_else(|| value_error("not a comparability graph"))?;
    let d = labelling::orientation_from_labelling(&sg, &lab, &cls).map_err(value_error)?;
    let p = posetdim::poset_from_orientation(&d).map_err(value_error)?;
    posetdim::dimension(&p, 3).map_err(value_error)
}

/// First induced member of the forbidden family, as (name, mapping), or None.
#[pyfunction]
fn find_forbidden(g: &PyGraph) -> Option<(String, Vec<usize>)> {
    split::find_forbidden(&g.inner, &split::Forbidden::ALL)
        .map(|(name, emb)| (name.name().to_string(), emb.map().to_vec()))
}

/// Full pipeline report (same JSON shape as `splitword run`) and exit code.
#[pyfunction]
fn run_report(py: Python<'_>, g: &PyGraph) -> PyResult<(Py<PyAny>, i32)> {
    let (report, code) = splitword::pipeline::run_pipeline(&g.inner);
    Ok((to_py(py, &report)?, code))
}

/// Sweep harness; mode is "exhaustive" or "sample".
#[pyfunction]
#[pyo3(signature = (n_max=6, mode="exhaustive", seed=42, count=10000))]
fn sweep(py: Python<'_>, n_max: usize, mode: &str, seed: u64, count: usize) -> PyResult<Py<PyAny>> {
    let mode = match mode {
        "exhaustive" => SweepMode::Exhaustive,
        "sample" => SweepMode::Sample,
        other => return Err(value_error(format!("unknown mode {other:?}"))),
    };
    match mode {
        SweepMode::Exhaustive if n_max > 6 => {
            return Err(value_error("exhaustive sweep is limited to n_max <= 6"))
        }
        SweepMode::Sample if n_max > 10 => {
            return Err(value_error("sampled sweep is limited to n_max <= 10"))
        }
        _ => {}
    }
    let cfg = SweepConfig { n_max, mode, seed, count, workers: None };
    to_py(py, &splitword::sweep::sweep(&cfg))
}

#[pymodule]
fn splitword_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(split_partition, m)?)?;
    m.add_function(wrap_pyfunction!(find_labelling, m)?)?;
    m.add_function(wrap_pyfunction!(build_word, m)?)?;
    m.add_function(wrap_pyfunction!(represents, m)?)?;
    m.add_function(wrap_pyfunction!(alternates, m)?)?;
    m.add_function(wrap_pyfunction!(restrict, m)?)?;
    m.add_function(wrap_pyfunction!(uniformity, m)?)?;
    m.add_function(wrap_pyfunction!(prn, m)?)?;
    m.add_function(wrap_pyfunction!(prn_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(poset_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(find_forbidden, m)?)?;
    m.add_function(wrap_pyfunction!(run_report, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    Ok(())
}
