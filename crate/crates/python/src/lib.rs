//! Python bindings for golodlab.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use golodlab::analysis::{full_report, is_tight, ReportOptions, TightnessOptions};
use golodlab::catalog::{catalog_complex, catalog_names as names};
use golodlab::dga::{hochster_cohomology, weak_golod_check, ClassRef};
use golodlab::homology::{homology, Flavor};
use golodlab::io::{emit_complex, parse_complex};
use golodlab::massey::{construct_golod_certificate, triple_massey_exact, CertificateOptions};
use golodlab::report::{to_json, Report};
use golodlab::{Field, SimplicialComplex, VertexLabel};

fn err(e: golodlab::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field(name: &str) -> PyResult<Field> {
    name.parse().map_err(err)
}

/// A finite simplicial complex on integer-labelled vertices.
#[pyclass(name = "Complex", module = "golodlab_py", frozen)]
struct PyComplex {
    inner: SimplicialComplex,
}

#[pymethods]
impl PyComplex {
    #[new]
    fn new(facets: Vec<Vec<u32>>) -> PyResult<Self> {
        let refs: Vec<&[u32]> = facets.iter().map(|f| f.as_slice()).collect();
        Ok(PyComplex {
            inner: SimplicialComplex::from_int_facets(&refs).map_err(err)?,
        })
    }

    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        Ok(PyComplex {
            inner: catalog_complex(name).map_err(err)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (text, format = "facet-lines"))]
    fn parse(text: &str, format: &str) -> PyResult<Self> {
        let f = format.parse().map_err(err)?;
        Ok(PyComplex {
            inner: parse_complex(text.as_bytes(), f).map_err(err)?.complex,
        })
    }

    #[pyo3(signature = (format = "facet-lines"))]
    fn emit(&self, format: &str) -> PyResult<String> {
        Ok(emit_complex(&self.inner, None, format.parse().map_err(err)?))
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().iter().map(|v| v.to_string()).collect()
    }

    #[getter]
    fn f_vector(&self) -> Vec<usize> {
        self.inner.f_vector()
    }

    #[pyo3(signature = (field_name = "q", reduced = false))]
    fn betti(&self, field_name: &str, reduced: bool) -> PyResult<Vec<usize>> {
        let flavor = if reduced { Flavor::Reduced } else { Flavor::Unreduced };
        Ok(homology(&self.inner, field(field_name)?, flavor).betti())
    }

    /// `(tight, witness)`; the witness is the first failing vertex subset.
    #[pyo3(signature = (field_name = "q", require_connected = false))]
    fn is_tight(&self, field_name: &str, require_connected: bool) -> PyResult<(bool, Option<Vec<String>>)> {
        let opts = TightnessOptions {
            require_connected,
            ..Default::default()
        };
        let r = is_tight(&self.inner, field(field_name)?, opts).map_err(err)?;
        let w = r.witness.map(|_| r.witness_labels(&self.inner));
        Ok((r.tight, w))
    }

    #[pyo3(signature = (field_name = "q"))]
    fn is_weakly_golod(&self, field_name: &str) -> PyResult<bool> {
        let t = hochster_cohomology(&self.inner, field(field_name)?).map_err(err)?;
        Ok(weak_golod_check(&self.inner, &t).map_err(err)?.weakly_golod)
    }

    /// Builds and checks the certificate; returns the number of verified entries.
    #[pyo3(signature = (field_name = "q", max_arity = 3))]
    fn certify_golod(&self, py: Python<'_>, field_name: &str, max_arity: usize) -> PyResult<usize> {
        let f = field(field_name)?;
        let k = &self.inner;
        py.detach(|| {
            let t = hochster_cohomology(k, f)?;
            let opts = CertificateOptions {
                max_arity,
                ..Default::default()
            };
            Ok(construct_golod_certificate(k, &t, opts)?.entries.len())
        })
        .map_err(err)
    }

    /// Triple product of the first basis classes supported on three vertex sets.
    #[pyo3(signature = (supports, field_name = "f2"))]
    fn triple_massey<'py>(&self, py: Python<'py>, supports: [Vec<u32>; 3], field_name: &str) -> PyResult<Bound<'py, PyDict>> {
        let k = &self.inner;
        let t = hochster_cohomology(k, field(field_name)?).map_err(err)?;
        let mut cls: Vec<ClassRef> = Vec::new();
        for s in &supports {
            let labels: Vec<VertexLabel> = s.iter().map(|&v| VertexLabel::int(v)).collect();
            let mask = k.mask_of_labels(&labels).map_err(err)?;
            let c = t.classes(mask).first().copied();
            cls.push(c.ok_or_else(|| PyValueError::new_err(format!("no cohomology supported on {s:?}")))?);
        }
        let out = triple_massey_exact(k, &t, [cls[0], cls[1], cls[2]]).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("defined", out.defined)?;
        d.set_item("trivial", out.trivial)?;
        d.set_item("total_degree", out.total_degree)?;
        d.set_item("indeterminacy_dim", out.indeterminacy_dim)?;
        d.set_item("target_dim", out.target_dim)?;
        Ok(d)
    }

    /// The full report as JSON text.
    #[pyo3(signature = (fields = vec!["q".to_string()], name = "complex"))]
    fn report_json(&self, py: Python<'_>, fields: Vec<String>, name: &str) -> PyResult<String> {
        let fs = fields.iter().map(|f| field(f)).collect::<PyResult<Vec<_>>>()?;
        let k = &self.inner;
        let r = py.detach(|| full_report(k, &fs, ReportOptions::default())).map_err(err)?;
        Ok(to_json(&Report::new(name, r)))
    }

    fn __repr__(&self) -> String {
        format!("Complex(f_vector={:?})", self.inner.f_vector())
    }
}

#[pyfunction]
fn catalog_names() -> Vec<String> {
    names()
}

#[pyfunction]
fn tight_neighborly_check(m: usize, d: usize, h1: usize) -> PyResult<bool> {
    golodlab::analysis::tight_neighborly_check(m, d, h1).map_err(err)
}

#[pymodule]
fn golodlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyComplex>()?;
    m.add_function(wrap_pyfunction!(catalog_names, m)?)?;
    m.add_function(wrap_pyfunction!(tight_neighborly_check, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
