//! Python bindings for the exact rational backend: filtrations and their
//! subspace-valued diagrams, treegrams, and the subspace arithmetic that
//! powers them.

use std::collections::BTreeMap;
use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use gpd_core::io::{filtration_from_str, grams_from_json, treegram_to_json};
use gpd_core::poset::{interval_domain, Death, Interval, IntervalOrder};
use gpd_core::subspace as core_subspace;
use gpd_core::verify::{SuiteStatus, VerifyConfig};
use gpd_core::{
    birth_death_spaces, degree0_diagram_from_treegram, dimension_diagram, harmonic_tower,
    laplacian_kernels, product_orthogonal_inverse, reverse_inclusion_orthogonal_inverse,
    AmbientSpace, ChainData, GpdError, GrassmannianDiagram, Matrix, Rat, Scalar, Treegram,
};

fn py_err(e: GpdError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_rat(text: &str) -> PyResult<Rat> {
    <Rat as Scalar>::parse(text).map_err(py_err)
}

/// A linear subspace of a rational inner product space in canonical form.
#[pyclass(name = "Subspace", from_py_object)]
#[derive(Clone)]
struct PySubspace {
    inner: core_subspace::Subspace<Rat>,
}

fn same_ambient(a: &PySubspace, b: &PySubspace) -> PyResult<()> {
    if a.inner.ambient() == b.inner.ambient() {
        Ok(())
    } else {
        Err(PyValueError::new_err("subspaces live in different ambient spaces"))
    }
}

#[pymethods]
impl PySubspace {
    /// Spans the given coordinate columns (entries as `p/q` strings, integers
    /// or decimals) inside a standard space of the given dimension.
    #[staticmethod]
    #[pyo3(signature = (ambient_dim, columns, gram=None))]
    fn span(ambient_dim: usize, columns: Vec<Vec<String>>, gram: Option<Vec<Vec<String>>>) -> PyResult<Self> {
        let gram = match gram {
            None => None,
            Some(rows) => {
                let parsed: Vec<Vec<Rat>> = rows
                    .iter()
                    .map(|r| r.iter().map(|c| parse_rat(c)).collect::<PyResult<Vec<_>>>())
                    .collect::<PyResult<Vec<_>>>()?;
                Some(Matrix::from_rows(parsed))
            }
        };
        let labels = (0..ambient_dim).map(|i| format!("e{}", i + 1)).collect();
        let ambient = AmbientSpace::new(labels, gram).map_err(py_err)?;
        let mut vectors = Vec::new();
        for col in &columns {
            let coords = col.iter().map(|c| parse_rat(c)).collect::<PyResult<Vec<_>>>()?;
            vectors.push(core_subspace::Vector::new(ambient.clone(), coords).map_err(py_err)?);
        }
        Ok(PySubspace {
            inner: core_subspace::span(&ambient, &vectors).map_err(py_err)?,
        })
    }

    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn ambient_dim(&self) -> usize {
        self.inner.ambient().dim()
    }

    /// Canonical basis, one list of coordinate strings per basis vector.
    fn basis(&self) -> Vec<Vec<String>> {
        let b = self.inner.basis();
        (0..b.cols())
            .map(|j| (0..b.rows()).map(|i| b.get(i, j).to_display()).collect())
            .collect()
    }

    fn sum(&self, other: &PySubspace) -> PyResult<PySubspace> {
        same_ambient(self, other)?;
        Ok(PySubspace { inner: core_subspace::sum(&self.inner, &other.inner).map_err(py_err)? })
    }

    fn intersect(&self, other: &PySubspace) -> PyResult<PySubspace> {
        same_ambient(self, other)?;
        Ok(PySubspace {
            inner: core_subspace::intersect(&self.inner, &other.inner).map_err(py_err)?,
        })
    }

    fn perp(&self) -> PySubspace {
        PySubspace { inner: core_subspace::perp(&self.inner) }
    }

    /// The part of this subspace orthogonal to `other`.
    fn ominus(&self, other: &PySubspace) -> PyResult<PySubspace> {
        same_ambient(self, other)?;
        Ok(PySubspace { inner: core_subspace::ominus(&self.inner, &other.inner).map_err(py_err)? })
    }

    fn project_onto(&self, other: &PySubspace) -> PyResult<PySubspace> {
        same_ambient(self, other)?;
        Ok(PySubspace {
            inner: core_subspace::project_subspace(&self.inner, &other.inner).map_err(py_err)?,
        })
    }

    fn contains(&self, other: &PySubspace) -> PyResult<bool> {
        same_ambient(self, other)?;
        self.inner.contains(&other.inner).map_err(py_err)
    }

    fn __eq__(&self, other: &PySubspace) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Subspace(dim={}, ambient_dim={})", self.dim(), self.ambient_dim())
    }
}

fn diagram_points<'py>(
    py: Python<'py>,
    data: &ChainData<Rat>,
    m: &GrassmannianDiagram<Rat>,
) -> PyResult<Bound<'py, PyList>> {
    let out = PyList::empty(py);
    let _ = data;
    for (iv, w) in m.support() {
        let d = PyDict::new(py);
        d.set_item("birth", m.poset.grade(iv.birth).to_display())?;
        d.set_item(
            "death",
            match iv.death {
                Death::At(k) => m.poset.grade(k).to_display(),
                Death::Inf => "inf".to_string(),
            },
        )?;
        d.set_item("dim", w.dim())?;
        let b = w.basis();
        let basis: Vec<Vec<String>> = (0..b.cols())
            .map(|j| (0..b.rows()).map(|i| b.get(i, j).to_display()).collect())
            .collect();
        d.set_item("basis", basis)?;
        out.append(d)?;
    }
    Ok(out)
}

/// A parsed filtration over the exact rational backend.
#[pyclass(name = "Filtration")]
struct PyFiltration {
    data: Arc<ChainData<Rat>>,
    max_degree: usize,
    text: String,
    gram_text: Option<String>,
}

impl PyFiltration {
    fn with_degree(&self, degree: usize) -> PyResult<Arc<ChainData<Rat>>> {
        if degree <= self.max_degree {
            return Ok(self.data.clone());
        }
        let filtration = filtration_from_str::<Rat>(&self.text).map_err(py_err)?;
        let grams = match &self.gram_text {
            Some(t) => grams_from_json::<Rat>(t).map_err(py_err)?,
            None => BTreeMap::new(),
        };
        Ok(Arc::new(ChainData::new(filtration, degree, &grams).map_err(py_err)?))
    }
}

#[pymethods]
impl PyFiltration {
    /// Parses the text format (`grade ; v0 v1 ...` lines) or the JSON form.
    #[new]
    #[pyo3(signature = (text, max_degree=2, gram_json=None))]
    fn new(text: String, max_degree: usize, gram_json: Option<String>) -> PyResult<Self> {
        let filtration = filtration_from_str::<Rat>(&text).map_err(py_err)?;
        let grams = match &gram_json {
            Some(t) => grams_from_json::<Rat>(t).map_err(py_err)?,
            None => BTreeMap::new(),
        };
        let data = ChainData::new(filtration, max_degree, &grams).map_err(py_err)?;
        Ok(PyFiltration { data: Arc::new(data), max_degree, text, gram_text: gram_json })
    }

    #[staticmethod]
    #[pyo3(signature = (path, max_degree=2, gram_json=None))]
    fn from_file(path: String, max_degree: usize, gram_json: Option<String>) -> PyResult<Self> {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| PyValueError::new_err(format!("{path}: {e}")))?;
        Self::new(text, max_degree, gram_json)
    }

    fn steps(&self) -> usize {
        self.data.steps()
    }

    fn grades(&self) -> Vec<String> {
        self.data
            .filtration
            .poset()
            .grades()
            .iter()
            .map(|g| g.to_display())
            .collect()
    }

    fn vertices(&self) -> Vec<String> {
        self.data.filtration.vertex_names().to_vec()
    }

    /// Nonzero points of the degree-`degree` diagram. `invariant` selects the
    /// route: `"bd"` (birth-death spaces, product order) or `"lap"`
    /// (Laplacian kernels, reverse inclusion order).
    #[pyo3(signature = (degree=0, invariant="bd"))]
    fn diagram<'py>(&self, py: Python<'py>, degree: usize, invariant: &str) -> PyResult<Bound<'py, PyList>> {
        let data = self.with_degree(degree)?;
        let m = match invariant {
            "bd" => product_orthogonal_inverse(&birth_death_spaces(&data, degree)).map_err(py_err)?,
            "lap" => reverse_inclusion_orthogonal_inverse(&laplacian_kernels(&data, degree))
                .map_err(py_err)?,
            other => return Err(PyValueError::new_err(format!("unknown invariant `{other}`"))),
        };
        diagram_points(py, &data, &m)
    }

    /// Classical integer diagram: list of `(birth, death, multiplicity)`.
    #[pyo3(signature = (degree=0))]
    fn classical(&self, degree: usize) -> PyResult<Vec<(String, String, i64)>> {
        let data = self.with_degree(degree)?;
        let m = product_orthogonal_inverse(&birth_death_spaces(&data, degree)).map_err(py_err)?;
        let dims = dimension_diagram(&m).map_err(py_err)?;
        Ok(dims
            .values
            .iter()
            .filter(|(_, &v)| v != 0)
            .map(|(iv, &v)| {
                (
                    dims.poset.grade(iv.birth).to_display(),
                    match iv.death {
                        Death::At(k) => dims.poset.grade(k).to_display(),
                        Death::Inf => "inf".to_string(),
                    },
                    v,
                )
            })
            .collect())
    }

    /// Treegram as `{"vertices": [...], "breakpoints": [{"t": ..., "blocks": [[...]]}]}`.
    fn treegram<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let t = Treegram::from_filtration(&self.data).map_err(py_err)?;
        let j = treegram_to_json(&t);
        let out = PyDict::new(py);
        out.set_item("vertices", j.vertices)?;
        let bps = PyList::empty(py);
        for bp in j.breakpoints {
            let d = PyDict::new(py);
            d.set_item("t", bp.t)?;
            d.set_item("blocks", bp.blocks)?;
            bps.append(d)?;
        }
        out.set_item("breakpoints", bps)?;
        Ok(out)
    }

    fn treegram_dot(&self) -> PyResult<String> {
        Ok(Treegram::from_filtration(&self.data).map_err(py_err)?.to_dot())
    }

    /// Rebuilds the degree-0 diagram from the treegram alone and reports
    /// whether it matches the inversion route.
    fn treegram_roundtrip_ok(&self) -> PyResult<bool> {
        let t = Treegram::from_filtration(&self.data).map_err(py_err)?;
        let rebuilt = degree0_diagram_from_treegram(&t, self.data.ambient(0)).map_err(py_err)?;
        let direct =
            product_orthogonal_inverse(&birth_death_spaces(&self.data, 0)).map_err(py_err)?;
        Ok(rebuilt.values == direct.values)
    }

    /// Projected tower spaces for the non-diagonal intervals of one degree.
    #[pyo3(signature = (degree=0))]
    fn harmonic<'py>(&self, py: Python<'py>, degree: usize) -> PyResult<Bound<'py, PyList>> {
        let data = self.with_degree(degree)?;
        let out = PyList::empty(py);
        for iv in interval_domain(data.steps(), IntervalOrder::Product) {
            let Interval { birth: i, death } = iv;
            let Death::At(j) = death else { continue };
            if i >= j {
                continue;
            }
            let tower = harmonic_tower(&data, degree, i, j).map_err(py_err)?;
            if tower.p_space.is_zero() {
                continue;
            }
            let d = PyDict::new(py);
            d.set_item("birth", data.filtration.poset().grade(i).to_display())?;
            d.set_item("death", data.filtration.poset().grade(j).to_display())?;
            d.set_item("dim", tower.p_space.dim())?;
            out.append(d)?;
        }
        Ok(out)
    }

    fn __repr__(&self) -> String {
        format!(
            "Filtration(steps={}, vertices={})",
            self.data.steps(),
            self.data.filtration.vertex_names().len()
        )
    }
}

/// Runs the seeded verification suites; returns one dict per suite.
#[pyfunction]
#[pyo3(signature = (seed=7, filtrations=15))]
fn verify<'py>(py: Python<'py>, seed: u64, filtrations: usize) -> PyResult<Bound<'py, PyList>> {
    let config = VerifyConfig {
        seed,
        filtrations,
        connected_filtrations: filtrations.max(5),
        morphisms: (filtrations / 2).max(5),
        grams: 2,
        max_degree: 2,
    };
    let out = PyList::empty(py);
    for r in gpd_core::verify::run_all(&config) {
        let d = PyDict::new(py);
        d.set_item("suite", r.name)?;
        d.set_item(
            "status",
            match r.status {
                SuiteStatus::Pass => "pass",
                SuiteStatus::Fail => "fail",
                SuiteStatus::SkippedFloat => "skipped-float",
            },
        )?;
        d.set_item("cases", r.cases)?;
        d.set_item("detail", r.detail)?;
        out.append(d)?;
    }
    Ok(out)
}

#[pymodule]
fn gpd_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFiltration>()?;
    m.add_class::<PySubspace>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
