//! Python bindings: posets, codes, decompositions, radius and decoders.
//!
//! Coordinates are 1-indexed on the Python side, as in the text formats.

use posetcode::decode::{
    build_plan, build_table, decode_full, decode_leveled_alg1, decode_leveled_alg2, table_sizes,
};
use posetcode::decomp::{
    canonical_form, is_canonical, maximal_p_decomposition, DecompositionReport,
};
use posetcode::format::{format_code, format_poset, parse_code, parse_poset};
use posetcode::radius::{packing_radius_bounds, packing_radius_exact};
use posetcode::{
    selftest, Code, CoordSet, Error, Matrix, Poset, PrimeField, Vector, DEFAULT_BUDGET,
};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

type Rows = Vec<Vec<u32>>;

create_exception!(posetcode_py, BudgetExceeded, PyRuntimeError);
create_exception!(posetcode_py, InvariantViolation, PyRuntimeError);

/// Input problems become `ValueError`; the other two classes get their own
/// exception types.
pub fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } => BudgetExceeded::new_err(e.to_string()),
        Error::Invariant(_) => InvariantViolation::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Reads a vector, rejecting entries that are not residues mod `q`.
pub fn vector_from(field: PrimeField, n: usize, values: &[i64]) -> posetcode::Result<Vector> {
    if values.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: values.len(),
        });
    }
    if let Some(&bad) = values.iter().find(|&&v| v < 0 || v >= field.order() as i64) {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: format!("{bad} is not a residue mod {}", field.order()),
        });
    }
    Ok(Vector::from_ints(field, values))
}

fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "Poset", module = "posetcode_py", frozen)]
pub struct PyPoset {
    inner: Poset,
}

#[pymethods]
impl PyPoset {
    /// `relations` are pairs `(a, b)` meaning `a <= b`; closure is applied.
    #[new]
    #[pyo3(signature = (n, relations=Vec::new()))]
    fn new(n: usize, relations: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyPoset {
            inner: Poset::from_relations(n, &relations).map_err(to_py_err)?,
        })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyPoset {
            inner: parse_poset(text).map_err(to_py_err)?,
        })
    }

    #[staticmethod]
    fn chain(n: usize) -> PyResult<Self> {
        Ok(PyPoset {
            inner: Poset::chain(n).map_err(to_py_err)?,
        })
    }

    #[staticmethod]
    fn antichain(n: usize) -> PyResult<Self> {
        Ok(PyPoset {
            inner: Poset::antichain(n).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn leq(&self, a: usize, b: usize) -> PyResult<bool> {
        let n = self.inner.n();
        for x in [a, b] {
            if x == 0 || x > n {
                return Err(to_py_err(Error::ElementOutOfRange { element: x, n }));
            }
        }
        Ok(self.inner.leq(a - 1, b - 1))
    }

    fn ideal(&self, elements: Vec<usize>) -> PyResult<Vec<usize>> {
        let n = self.inner.n();
        if let Some(&bad) = elements.iter().find(|&&x| x == 0 || x > n) {
            return Err(to_py_err(Error::ElementOutOfRange { element: bad, n }));
        }
        Ok(self
            .inner
            .ideal(CoordSet::from_one_indexed(elements))
            .to_one_indexed())
    }

    fn levels(&self) -> Vec<Vec<usize>> {
        self.inner
            .levels()
            .into_iter()
            .map(CoordSet::to_one_indexed)
            .collect()
    }

    fn cover_relations(&self) -> Vec<(usize, usize)> {
        self.inner.cover_pairs()
    }

    fn is_hierarchical(&self) -> bool {
        self.inner.is_hierarchical()
    }

    /// Whether every relation of `self` also holds in `other`.
    fn is_coarser_than(&self, other: &PyPoset) -> PyResult<bool> {
        self.inner.leq_poset(&other.inner).map_err(to_py_err)
    }

    fn upper_neighbor(&self) -> PyPoset {
        PyPoset {
            inner: self.inner.upper_neighbor(),
        }
    }

    fn lower_neighbor(&self) -> PyPoset {
        PyPoset {
            inner: self.inner.lower_neighbor(),
        }
    }

    fn weight(&self, vector: Vec<i64>) -> PyResult<usize> {
        let top = vector.iter().copied().max().unwrap_or(0).max(1);
        let mut p = top as u64 + 1;
        while PrimeField::new(p).is_err() {
            p += 1;
        }
        let field = PrimeField::new(p).map_err(to_py_err)?;
        let v = vector_from(field, self.inner.n(), &vector).map_err(to_py_err)?;
        v.p_weight(&self.inner).map_err(to_py_err)
    }

    fn to_text(&self) -> String {
        format_poset(&self.inner)
    }

    fn __eq__(&self, other: &PyPoset) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Poset(n={}, relations={:?})",
            self.inner.n(),
            self.inner.cover_pairs()
        )
    }
}

#[pyclass(name = "Code", module = "posetcode_py", frozen)]
pub struct PyCode {
    inner: Code,
}

#[pymethods]
impl PyCode {
    /// A code over GF(q) generated by the full-rank `rows`.
    #[new]
    fn new(q: u64, rows: Vec<Vec<i64>>) -> PyResult<Self> {
        let field = PrimeField::new(q).map_err(to_py_err)?;
        let n = rows.first().map_or(0, Vec::len);
        let m = Matrix::from_rows(field, n, &rows).map_err(to_py_err)?;
        Ok(PyCode {
            inner: Code::new(m).map_err(to_py_err)?,
        })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyCode {
            inner: parse_code(text).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn q(&self) -> u32 {
        self.inner.q()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    fn generator(&self) -> Vec<Vec<u32>> {
        self.inner.generator().to_rows()
    }

    fn contains(&self, vector: Vec<i64>) -> PyResult<bool> {
        let v = vector_from(self.inner.field(), self.inner.n(), &vector).map_err(to_py_err)?;
        self.inner.contains(&v).map_err(to_py_err)
    }

    #[pyo3(signature = (poset, budget=DEFAULT_BUDGET))]
    fn min_distance(&self, poset: &PyPoset, budget: u128) -> PyResult<usize> {
        self.inner
            .min_distance(&poset.inner, budget)
            .map_err(to_py_err)
    }

    fn to_text(&self) -> String {
        format_code(&self.inner)
    }

    fn __eq__(&self, other: &PyCode) -> bool {
        self.inner.same_code(&other.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Code(q={}, n={}, k={})",
            self.inner.q(),
            self.inner.n(),
            self.inner.k()
        )
    }
}

/// A maximal P-decomposition, stored in its serialized form.
#[pyclass(name = "Decomposition", module = "posetcode_py", frozen)]
pub struct PyDecomposition {
    report: DecompositionReport,
}

#[pymethods]
impl PyDecomposition {
    /// Parses JSON produced by `to_json` and re-checks its invariants.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let report: DecompositionReport =
            serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        report.to_decomposition().map_err(to_py_err)?;
        Ok(PyDecomposition { report })
    }

    #[getter]
    fn profile(&self) -> Vec<(usize, usize)> {
        self.report.profile.clone()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.report.degree
    }

    #[getter]
    fn pointer(&self) -> Vec<usize> {
        self.report.pointer_support.to_one_indexed()
    }

    /// `(support, generator rows)` per component.
    #[getter]
    fn components(&self) -> Vec<(Vec<usize>, Vec<Vec<u32>>)> {
        self.report
            .components
            .iter()
            .map(|c| (c.support.to_one_indexed(), c.generators.clone()))
            .collect()
    }

    #[getter]
    fn witness(&self) -> Vec<Vec<u32>> {
        self.report.witness.clone()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.report).expect("report serializes")
    }

    fn __repr__(&self) -> String {
        format!(
            "Decomposition(profile={:?}, degree={})",
            self.report.profile, self.report.degree
        )
    }
}

fn check_n(code: &PyCode, poset: &PyPoset) -> PyResult<()> {
    if code.inner.n() != poset.inner.n() {
        return Err(to_py_err(Error::DimensionMismatch {
            expected: poset.inner.n(),
            got: code.inner.n(),
        }));
    }
    Ok(())
}

/// Canonical generator matrix and the isometry that produces it, plus the
/// fixpoint predicate on the result.
#[pyfunction]
fn canonicalize(code: &PyCode, poset: &PyPoset) -> PyResult<(Rows, Rows, bool)> {
    check_n(code, poset)?;
    let cf = canonical_form(code.inner.generator(), &poset.inner).map_err(to_py_err)?;
    let fix = is_canonical(&cf.matrix, &poset.inner);
    Ok((cf.matrix.to_rows(), cf.witness.to_rows(), fix))
}

#[pyfunction]
fn decompose(code: &PyCode, poset: &PyPoset) -> PyResult<PyDecomposition> {
    check_n(code, poset)?;
    let pd = maximal_p_decomposition(&code.inner, &poset.inner).map_err(to_py_err)?;
    Ok(PyDecomposition {
        report: DecompositionReport::from(&pd),
    })
}

#[pyfunction]
#[pyo3(signature = (code, poset, budget=DEFAULT_BUDGET))]
fn packing_radius(code: &PyCode, poset: &PyPoset, budget: u128) -> PyResult<usize> {
    check_n(code, poset)?;
    packing_radius_exact(&code.inner, &poset.inner, budget).map_err(to_py_err)
}

/// `(lower, upper, exact)`, with `exact` None when it exceeds the budget.
#[pyfunction]
#[pyo3(signature = (code, poset, budget=DEFAULT_BUDGET))]
fn radius_bounds(
    code: &PyCode,
    poset: &PyPoset,
    budget: u128,
) -> PyResult<(usize, usize, Option<usize>)> {
    check_n(code, poset)?;
    let b = packing_radius_bounds(&code.inner, &poset.inner, budget).map_err(to_py_err)?;
    Ok((b.lower, b.upper, b.exact))
}

#[pyfunction]
#[pyo3(signature = (code, poset, received, decoder="alg2", budget=DEFAULT_BUDGET))]
fn decode(
    code: &PyCode,
    poset: &PyPoset,
    received: Vec<Vec<i64>>,
    decoder: &str,
    budget: u128,
) -> PyResult<Vec<Vec<u32>>> {
    check_n(code, poset)?;
    let (c, p) = (&code.inner, &poset.inner);
    let ys = received
        .iter()
        .map(|y| vector_from(c.field(), c.n(), y))
        .collect::<posetcode::Result<Vec<_>>>()
        .map_err(to_py_err)?;
    let out = match decoder {
        "full" => {
            let table = build_table(c, p, budget).map_err(to_py_err)?;
            ys.iter()
                .map(|y| decode_full(&table, y))
                .collect::<posetcode::Result<Vec<_>>>()
        }
        "alg1" | "alg2" => {
            let plan = build_plan(c, p, budget).map_err(to_py_err)?;
            let step = if decoder == "alg1" {
                decode_leveled_alg1
            } else {
                decode_leveled_alg2
            };
            ys.iter().map(|y| step(&plan, y)).collect()
        }
        other => return Err(PyValueError::new_err(format!("unknown decoder `{other}`"))),
    };
    Ok(out
        .map_err(to_py_err)?
        .iter()
        .map(|v| v.residues().to_vec())
        .collect())
}

/// Table sizes of the full and leveled decoders, as a dict.
#[pyfunction]
#[pyo3(signature = (code, poset, budget=DEFAULT_BUDGET))]
fn table_plan<'py>(
    py: Python<'py>,
    code: &PyCode,
    poset: &PyPoset,
    budget: u128,
) -> PyResult<Bound<'py, PyAny>> {
    check_n(code, poset)?;
    let plan = build_plan(&code.inner, &poset.inner, budget).map_err(to_py_err)?;
    let sizes = table_sizes(&plan, &poset.inner);
    json_to_py(py, &serde_json::to_string(&sizes).expect("sizes serialize"))
}

/// `(name, instances, failures)` for each oracle-agreement check.
#[pyfunction]
#[pyo3(signature = (seed=1))]
fn run_selftest(seed: u64) -> PyResult<Vec<(String, usize, usize)>> {
    let results = selftest::run(seed).map_err(to_py_err)?;
    Ok(results
        .into_iter()
        .map(|r| (r.name.to_string(), r.instances, r.failures))
        .collect())
}

#[pymodule]
pub fn posetcode_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPoset>()?;
    m.add_class::<PyCode>()?;
    m.add_class::<PyDecomposition>()?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add(
        "InvariantViolation",
        m.py().get_type::<InvariantViolation>(),
    )?;
    m.add_function(wrap_pyfunction!(canonicalize, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(packing_radius, m)?)?;
    m.add_function(wrap_pyfunction!(radius_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(decode, m)?)?;
    m.add_function(wrap_pyfunction!(table_plan, m)?)?;
    m.add_function(wrap_pyfunction!(run_selftest, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vectors_are_checked() {
        let f = PrimeField::new(3).unwrap();
        assert_eq!(
            vector_from(f, 3, &[0, 2, 1]).unwrap().residues(),
            &[0, 2, 1]
        );
        assert!(vector_from(f, 3, &[0, 3, 1]).is_err());
        assert!(matches!(
            vector_from(f, 2, &[0, 1, 1]),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
