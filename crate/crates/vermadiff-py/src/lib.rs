//! Python bindings for the vermadiff engine: root systems, the dot action,
//! strong linkage, singular vectors, the symplectic closed form, and the
//! rank certification report.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use vermadiff::chevalley::compute_constants;
use vermadiff::oracle::singular_kernel;
use vermadiff::posetrank::{export_hasse, rank_certify, report_to_json};
use vermadiff::rat::{parse_rat, Rat};
use vermadiff::rootsys::{
    self, build_root_system, dot_action, is_antidominant, lex_ordering, parse_root,
    reflection_word, sp_ordering, strongly_linked, Weight, WeylWord,
};
use vermadiff::singvec::{solve_singular, SolveOutcome, SpContext};
use vermadiff::weylrep::WeylCtx;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_weight(coords: Vec<String>, rank: usize) -> PyResult<Weight> {
    if coords.len() != rank {
        return Err(PyValueError::new_err(format!(
            "expected {rank} coordinates, got {}",
            coords.len()
        )));
    }
    let c: Result<Vec<Rat>, PyErr> = coords
        .iter()
        .map(|s| parse_rat(s).ok_or_else(|| PyValueError::new_err(format!("bad rational: {s}"))))
        .collect();
    Ok(Weight::new(c?))
}

fn parse_word_arg(word: Vec<usize>) -> PyResult<WeylWord> {
    if word.iter().any(|&i| i == 0) {
        return Err(PyValueError::new_err(
            "word letters are 1-based simple indices",
        ));
    }
    Ok(WeylWord(word.into_iter().map(|i| i - 1).collect()))
}

/// A root system of one of the simple types, with exact rational data.
#[pyclass(name = "RootSystem")]
pub struct PyRootSystem {
    inner: rootsys::RootSystem,
}

#[pymethods]
impl PyRootSystem {
    #[new]
    fn new(cartan_type: &str, rank: usize) -> PyResult<Self> {
        let ct = cartan_type.parse().map_err(err)?;
        Ok(PyRootSystem {
            inner: build_root_system(ct, rank).map_err(err)?,
        })
    }

    /// Number of positive roots.
    #[getter]
    fn num_positive_roots(&self) -> usize {
        self.inner.m
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank
    }

    /// Largest root height.
    #[getter]
    fn max_height(&self) -> i64 {
        self.inner.h
    }

    /// Labels of the positive roots in construction order, e.g. "e1-e2".
    fn root_labels(&self) -> Vec<String> {
        (0..self.inner.m)
            .map(|id| self.inner.root_label(id))
            .collect()
    }

    /// The whole system as a JSON document.
    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.inner.to_json()).unwrap()
    }

    /// Dot action of a word (1-based simple indices) on a weight given in
    /// coroot-pairing coordinates (rationals as strings).
    fn dot(&self, word: Vec<usize>, lambda: Vec<String>) -> PyResult<Vec<String>> {
        let w = parse_word_arg(word)?;
        let lam = parse_weight(lambda, self.inner.rank)?;
        Ok(dot_action(&self.inner, &w, &lam).to_strings())
    }

    /// Witness chain of positive-root labels if mu is strongly linked to
    /// lambda, else None.
    fn strongly_linked(
        &self,
        lambda: Vec<String>,
        mu: Vec<String>,
    ) -> PyResult<Option<Vec<String>>> {
        let lam = parse_weight(lambda, self.inner.rank)?;
        let mu = parse_weight(mu, self.inner.rank)?;
        Ok(strongly_linked(&self.inner, &lam, &mu)
            .map(|c| c.gammas.iter().map(|&g| self.inner.root_label(g)).collect()))
    }

    fn is_antidominant(&self, lambda: Vec<String>) -> PyResult<bool> {
        let lam = parse_weight(lambda, self.inner.rank)?;
        Ok(is_antidominant(&self.inner, &lam))
    }

    /// Hasse diagram of the root poset in DOT format.
    fn hasse_dot(&self) -> String {
        export_hasse(&self.inner)
    }

    /// Dimension of the space of singular vectors of weight mu in the Verma
    /// module of weight lambda (brute-force kernel).
    fn kernel_dim(&self, lambda: Vec<String>, mu: Vec<String>) -> PyResult<usize> {
        let lam = parse_weight(lambda, self.inner.rank)?;
        let mu = parse_weight(mu, self.inner.rank)?;
        let ord = lex_ordering(&self.inner);
        let sc = compute_constants(&self.inner).map_err(err)?;
        Ok(singular_kernel(&self.inner, &ord, &sc, &lam, &mu).len())
    }
}

/// Singular vector (or truncated series) for the Weyl element given by a
/// positive root or an explicit word; returns the same JSON document as the
/// command-line `singular` subcommand.
#[pyfunction]
#[pyo3(signature = (cartan_type, rank, lambda, root=None, word=None, depth=12, sp_order=false))]
fn singular(
    cartan_type: &str,
    rank: usize,
    lambda: Vec<String>,
    root: Option<String>,
    word: Option<Vec<usize>>,
    depth: i64,
    sp_order: bool,
) -> PyResult<String> {
    let ct = cartan_type.parse().map_err(err)?;
    let rs = build_root_system(ct, rank).map_err(err)?;
    let lam = parse_weight(lambda, rs.rank)?;
    let ord = if sp_order {
        sp_ordering(&rs).map_err(err)?
    } else {
        lex_ordering(&rs)
    };
    let sc = compute_constants(&rs).map_err(err)?;
    let w = match (root, word) {
        (Some(r), None) => reflection_word(&rs, parse_root(&rs, &r).map_err(err)?),
        (None, Some(ww)) => parse_word_arg(ww)?,
        _ => return Err(PyValueError::new_err("pass exactly one of root or word")),
    };
    let ctx = WeylCtx::new(&rs, &ord, &sc, lam, depth).map_err(err)?;
    let doc = match solve_singular(&ctx, &w).map_err(err)? {
        SolveOutcome::Polynomial { vector, chain, mu } => serde_json::json!({
            "branch": "polynomial",
            "mu": mu.to_strings(),
            "chain": chain.gammas.iter().map(|&g| rs.root_label(g)).collect::<Vec<_>>(),
            "vector": vector.to_json(),
            "variables": (0..rs.m).map(|p| rs.root_label(ord.root_id(p))).collect::<Vec<_>>(),
        }),
        SolveOutcome::Truncated { series, mu } => serde_json::json!({
            "branch": "series",
            "mu": mu.to_strings(),
            "series": series.to_text(&ord),
            "depth": series.depth,
        }),
    };
    Ok(serde_json::to_string_pretty(&doc).unwrap())
}

/// The sp(2n) closed-form singular vector of weight `s_{e1+en} . lambda`,
/// as JSON, when the level k is a natural number.
#[pyfunction]
fn sp_singular(n: usize, lambda: Vec<String>) -> PyResult<String> {
    let sp = SpContext::new(n).map_err(err)?;
    let lam = parse_weight(lambda, n)?;
    let v = sp.formula(&lam).map_err(err)?.normalized();
    let doc = serde_json::json!({
        "level": sp.level(&lam).to_string(),
        "vector": v.to_json(),
        "variables": (0..sp.rs.m)
            .map(|p| sp.rs.root_label(sp.ord.root_id(p)))
            .collect::<Vec<_>>(),
    });
    Ok(serde_json::to_string_pretty(&doc).unwrap())
}

/// Rank certification report for A(Phi), as JSON.
#[pyfunction]
fn rank_report(cartan_type: &str, rank: usize) -> PyResult<String> {
    let ct = cartan_type.parse().map_err(err)?;
    let rs = build_root_system(ct, rank).map_err(err)?;
    let sc = compute_constants(&rs).map_err(err)?;
    let rep = rank_certify(&rs, &sc);
    Ok(serde_json::to_string_pretty(&report_to_json(&rep)).unwrap())
}

#[pymodule]
fn vermadiff_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootSystem>()?;
    m.add_function(wrap_pyfunction!(singular, m)?)?;
    m.add_function(wrap_pyfunction!(sp_singular, m)?)?;
    m.add_function(wrap_pyfunction!(rank_report, m)?)?;
    Ok(())
}
