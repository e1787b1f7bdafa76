//! Python bindings. Every function takes the document text and returns the
//! JSON report as a string, exactly as `lcsc <command> --json` prints it.
//! Failures raise `LcscError(message, stage, exit_code)`.

use lcsc::filters::Evaluator;
use lcsc::pipeline::{self, Config, FilterOptions, StageError};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

create_exception!(lcsc_py, LcscError, PyException);

fn raise(e: StageError) -> PyErr {
    LcscError::new_err((e.to_string(), e.stage, e.exit_code()))
}

fn config(cap: Option<usize>, truncate: Option<usize>, evaluators: Option<Vec<String>>) -> PyResult<Config> {
    let mut cfg = Config::default();
    if let Some(cap) = cap {
        cfg.cap = cap.max(1);
    }
    cfg.truncate = truncate;
    if let Some(names) = evaluators {
        let mut evs = Vec::new();
        for n in names {
            let e: Evaluator = n.parse().map_err(|error| raise(StageError { stage: "arguments", error }))?;
            if !evs.contains(&e) {
                evs.push(e);
            }
        }
        evs.sort();
        cfg.evaluators = evs;
    }
    Ok(cfg)
}

#[pyfunction]
#[pyo3(signature = (text, cap=None, truncate=None, evaluators=None))]
fn validate(
    text: &str,
    cap: Option<usize>,
    truncate: Option<usize>,
    evaluators: Option<Vec<String>>,
) -> PyResult<String> {
    let cfg = config(cap, truncate, evaluators)?;
    pipeline::validate(text, &cfg).map(|r| pipeline::to_json(&r)).map_err(raise)
}

#[pyfunction]
#[pyo3(signature = (text, cap=None, truncate=None, evaluators=None))]
fn analyze(
    text: &str,
    cap: Option<usize>,
    truncate: Option<usize>,
    evaluators: Option<Vec<String>>,
) -> PyResult<String> {
    let cfg = config(cap, truncate, evaluators)?;
    pipeline::analyze(text, &cfg).map(|r| pipeline::to_json(&r)).map_err(raise)
}

#[pyfunction]
#[pyo3(signature = (text, ultra=false, tight=false, check_equivalences=false, cap=None, truncate=None))]
fn filters(
    text: &str,
    ultra: bool,
    tight: bool,
    check_equivalences: bool,
    cap: Option<usize>,
    truncate: Option<usize>,
) -> PyResult<String> {
    let cfg = config(cap, truncate, None)?;
    let opts = FilterOptions { ultra, tight, check_equivalences };
    pipeline::filters(text, &cfg, opts).map(|r| pipeline::to_json(&r)).map_err(raise)
}

/// Returns `(report_json, dot)`.
#[pyfunction]
#[pyo3(signature = (text, cap=None, truncate=None))]
fn groupoid(text: &str, cap: Option<usize>, truncate: Option<usize>) -> PyResult<(String, String)> {
    let cfg = config(cap, truncate, None)?;
    pipeline::groupoid(text, &cfg).map(|(r, dot)| (pipeline::to_json(&r), dot)).map_err(raise)
}

#[pyfunction]
#[pyo3(signature = (text, cap=None, truncate=None))]
fn zs(text: &str, cap: Option<usize>, truncate: Option<usize>) -> PyResult<String> {
    let cfg = config(cap, truncate, None)?;
    pipeline::zs(text, &cfg).map(|r| pipeline::to_json(&r)).map_err(raise)
}

/// `(name, contents)` pairs from the seeded generator.
#[pyfunction]
#[pyo3(signature = (seed=0, n=10))]
fn corpus(seed: u64, n: usize) -> PyResult<Vec<(String, String)>> {
    lcsc::corpus::generate(seed, n)
        .map(|files| files.into_iter().map(|f| (f.name, f.contents)).collect())
        .map_err(|error| raise(StageError { stage: "corpus", error }))
}

#[pymodule]
pub fn lcsc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("LcscError", m.py().get_type::<LcscError>())?;
    m.add("__version__", pipeline::VERSION)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(filters, m)?)?;
    m.add_function(wrap_pyfunction!(groupoid, m)?)?;
    m.add_function(wrap_pyfunction!(zs, m)?)?;
    m.add_function(wrap_pyfunction!(corpus, m)?)?;
    Ok(())
}
