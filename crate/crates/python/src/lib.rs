//! Python bindings. Matrices cross the boundary as lists of rows whose entries
//! are Python ints or `"p/q"` strings; rationals come back as strings.

use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyString;

use toribundle_core::autofactor::{self as af, FactorOfAutomorphy};
use toribundle_core::bundles::{self, MatrixBundleClass, VectorBundleClass};
use toribundle_core::cohomology::{AltFormZ, Orientation2};
use toribundle_core::io::{format_rational, parse_rational};
use toribundle_core::linalg::{IntMatrix, RatMatrix, SkewRatForm};
use toribundle_core::nctorus::{self as nc, IsoDecision, NCTorusParams};
use toribundle_core::projrep;

fn err(e: toribundle_core::Error) -> PyErr {
    match e {
        toribundle_core::Error::CapExceeded(_) | toribundle_core::Error::Internal(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn entry(v: &Bound<'_, PyAny>) -> PyResult<num_rational::BigRational> {
    if let Ok(s) = v.cast::<PyString>() {
        return parse_rational(s.to_str()?).map_err(err);
    }
    Ok(num_rational::BigRational::from_integer(v.extract::<BigInt>()?))
}

fn rat_matrix(rows: &Bound<'_, PyAny>) -> PyResult<RatMatrix> {
    let mut out = Vec::new();
    for row in rows.try_iter()? {
        let row = row?;
        out.push(row.try_iter()?.map(|v| entry(&v?)).collect::<PyResult<Vec<_>>>()?);
    }
    RatMatrix::from_rows(out).map_err(err)
}

fn int_matrix(rows: &Bound<'_, PyAny>) -> PyResult<IntMatrix> {
    rat_matrix(rows)?.to_int().ok_or_else(|| PyValueError::new_err("expected integer entries"))
}

fn skew(rows: &Bound<'_, PyAny>) -> PyResult<SkewRatForm> {
    SkewRatForm::new(rat_matrix(rows)?).map_err(err)
}

fn int_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    m.to_rows()
}

fn orientation(reversed: bool) -> Orientation2 {
    if reversed {
        Orientation2::Reversed
    } else {
        Orientation2::Standard
    }
}

/// Class of a projectively flat bundle: rank and first Chern class.
#[pyclass(name = "VectorBundle", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyVectorBundle(VectorBundleClass);

#[pymethods]
impl PyVectorBundle {
    #[new]
    fn new(rank: BigInt, c1: &Bound<'_, PyAny>) -> PyResult<Self> {
        let c = AltFormZ::new(int_matrix(c1)?).map_err(err)?;
        VectorBundleClass::new(rank, c).map(Self).map_err(err)
    }

    /// The basic bundle X(q, a) on the 2-torus.
    #[staticmethod]
    fn basic(q: BigInt, a: BigInt) -> PyResult<Self> {
        bundles::x_bundle(&q, &a).map(Self).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn rank(&self) -> BigInt {
        self.0.rank().clone()
    }

    #[getter]
    fn c1(&self) -> Vec<Vec<BigInt>> {
        int_rows(self.0.c1().matrix())
    }

    #[pyo3(signature = (reversed = false))]
    fn twist(&self, reversed: bool) -> PyResult<BigInt> {
        bundles::twist(&self.0, orientation(reversed)).map_err(err)
    }

    fn endo(&self) -> PyMatrixBundle {
        PyMatrixBundle(bundles::endo(&self.0))
    }

    fn is_isomorphic(&self, other: &PyVectorBundle) -> PyResult<bool> {
        bundles::iso_vector(&self.0, &other.0).map_err(err)
    }

    fn to_json(&self) -> String {
        toribundle_core::io::BundleText::from(&self.0).to_json()
    }

    fn __repr__(&self) -> String {
        format!("VectorBundle(rank={}, c1={:?})", self.0.rank(), self.c1())
    }
}

/// Class of a flat matrix-algebra bundle: size and the reduced class beta.
#[pyclass(name = "MatrixBundle", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyMatrixBundle(MatrixBundleClass);

#[pymethods]
impl PyMatrixBundle {
    #[getter]
    fn size(&self) -> BigInt {
        self.0.size().clone()
    }

    #[getter]
    fn beta(&self) -> Vec<Vec<BigInt>> {
        int_rows(self.0.beta().matrix())
    }

    /// The commutator root of unity as a string `"c/q"`.
    #[pyo3(signature = (reversed = false))]
    fn omega(&self, reversed: bool) -> PyResult<String> {
        Ok(bundles::omega(&self.0, orientation(reversed)).map_err(err)?.display_in(self.0.size()))
    }

    fn is_isomorphic(&self, other: &PyMatrixBundle) -> bool {
        bundles::iso_matrix(&self.0, &other.0)
    }

    fn to_json(&self) -> String {
        toribundle_core::io::BundleText::from(&self.0).to_json()
    }
}

#[pyfunction]
fn classify(n: usize, q: BigInt, c1: &Bound<'_, PyAny>) -> PyResult<PyVectorBundle> {
    let c = AltFormZ::new(int_matrix(c1)?).map_err(err)?;
    if c.n() != n {
        return Err(PyValueError::new_err(format!("c1 has size {}, expected {n}", c.n())));
    }
    bundles::classify_projflat(n, &q, &c).map(PyVectorBundle).map_err(err)
}

/// The explicit factor of automorphy for X(q, a).
#[pyclass(name = "Factor", frozen)]
struct PyFactor(FactorOfAutomorphy);

#[pymethods]
impl PyFactor {
    #[new]
    fn new(q: usize, a: BigInt) -> PyResult<Self> {
        af::factor_from(q, &a).map(Self).map_err(err)
    }

    /// Number of sampled (gamma, gamma') pairs violating the cocycle identity.
    #[pyo3(signature = (trials = 100, seed = 0))]
    fn cocycle_violations(&self, trials: usize, seed: u64) -> usize {
        af::check_cocycle(&self.0, trials, seed).failures.len()
    }

    #[pyo3(signature = (samples = None, tolerance = af::DEFAULT_TOLERANCE))]
    fn clutching_twist(&self, samples: Option<usize>, tolerance: f64) -> PyResult<BigInt> {
        let s = samples.unwrap_or_else(|| af::default_samples(self.0.q(), self.0.a()));
        af::clutching_twist(&self.0, s, tolerance).map_err(err)
    }

    #[pyo3(signature = (samples = None, tolerance = af::DEFAULT_TOLERANCE))]
    fn clutching_omega(&self, samples: Option<usize>, tolerance: f64) -> PyResult<String> {
        let s = samples.unwrap_or_else(|| af::default_samples(self.0.q(), self.0.a()));
        let w = af::clutching_omega(&self.0, s, tolerance).map_err(err)?;
        Ok(w.display_in(&BigInt::from(self.0.q())))
    }
}

/// A noncommutative torus with parameter theta, amplified m times.
#[pyclass(name = "NCTorus", frozen)]
struct PyNCTorus(NCTorusParams);

#[pymethods]
impl PyNCTorus {
    #[new]
    #[pyo3(signature = (theta, m = BigInt::from(1)))]
    fn new(theta: &Bound<'_, PyAny>, m: BigInt) -> PyResult<Self> {
        NCTorusParams::new(skew(theta)?, m).map(Self).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn q_theta(&self) -> BigInt {
        nc::q_theta(self.0.theta())
    }

    /// Returns `(t, blocks, free_rank)`.
    fn normal_form(&self) -> (Vec<Vec<BigInt>>, Vec<String>, usize) {
        let nf = nc::normal_form(self.0.theta());
        (int_rows(&nf.t), nf.blocks.iter().map(format_rational).collect(), nf.free_rank)
    }

    fn bundle(&self) -> PyVectorBundle {
        PyVectorBundle(nc::vector_bundle_of(self.0.theta()))
    }

    /// `(dim, commutant_dim)` of the projective representation attached to theta.
    fn representation(&self) -> (usize, usize) {
        let b = nc::bundle_of(self.0.theta());
        (b.rep.dim(), projrep::commutant_dim(&b.rep))
    }

    /// Returns `(True, t, shift)`, `(False, reason, None)`, or raises when the search cap is hit.
    #[pyo3(signature = (other, cap = nc::DEFAULT_ORBIT_CAP, via_bundles = false))]
    fn is_isomorphic(
        &self,
        py: Python<'_>,
        other: &PyNCTorus,
        cap: usize,
        via_bundles: bool,
    ) -> PyResult<(bool, Py<PyAny>, Py<PyAny>)> {
        let d = if via_bundles {
            nc::iso_via_bundles_with(&self.0, &other.0, cap)
        } else {
            nc::iso_decide_with(&self.0, &other.0, cap)
        }
        .map_err(err)?;
        match d {
            IsoDecision::Isomorphic(c) => Ok((
                true,
                int_rows(&c.t).into_pyobject(py)?.into_any().unbind(),
                int_rows(&c.shift).into_pyobject(py)?.into_any().unbind(),
            )),
            IsoDecision::NotIsomorphic(r) => {
                Ok((false, format!("{r:?}").to_lowercase().into_pyobject(py)?.into_any().unbind(), py.None()))
            }
            IsoDecision::Undecided(v) => Err(PyRuntimeError::new_err(format!("undecided after {v} orbit states"))),
        }
    }
}

#[pyfunction]
fn q_theta(theta: &Bound<'_, PyAny>) -> PyResult<BigInt> {
    Ok(nc::q_theta(&skew(theta)?))
}

#[pymodule]
fn toribundle(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyVectorBundle>()?;
    m.add_class::<PyMatrixBundle>()?;
    m.add_class::<PyFactor>()?;
    m.add_class::<PyNCTorus>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(q_theta, m)?)?;
    Ok(())
}
