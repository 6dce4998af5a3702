use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ::fuzzycont as fc;

create_exception!(fuzzycont, FuzzyContError, PyValueError);
create_exception!(fuzzycont, PreconditionViolated, FuzzyContError);

fn to_py(e: fc::Error) -> PyErr {
    match e {
        fc::Error::PreconditionViolated { .. }
        | fc::Error::TargetOutOfRange { .. }
        | fc::Error::TargetOutOfOpenRange { .. }
        | fc::Error::NotDigitallyContinuous { .. }
        | fc::Error::NotStrictlyMonotone => PreconditionViolated::new_err(e.to_string()),
        other => FuzzyContError::new_err(other.to_string()),
    }
}

#[pyclass(name = "SetStats", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySetStats {
    #[pyo3(get)]
    lib: Option<f64>,
    #[pyo3(get)]
    uib: Option<f64>,
    #[pyo3(get)]
    uniform: bool,
    #[pyo3(get)]
    spacing: Option<f64>,
}

#[pymethods]
impl PySetStats {
    fn __repr__(&self) -> String {
        format!(
            "SetStats(lib={:?}, uib={:?}, uniform={}, spacing={:?})",
            self.lib, self.uib, self.uniform, self.spacing
        )
    }
}

#[pyclass(name = "DiscreteSet", frozen, from_py_object)]
#[derive(Clone)]
struct PyDiscreteSet {
    inner: fc::DiscreteSet,
}

#[pymethods]
impl PyDiscreteSet {
    #[new]
    #[pyo3(signature = (values, tol=0.0))]
    fn new(values: Vec<f64>, tol: f64) -> PyResult<Self> {
        fc::DiscreteSet::new(&values, tol)
            .map(|inner| PyDiscreteSet { inner })
            .map_err(to_py)
    }

    #[staticmethod]
    fn uniform_grid(u: f64, m: i64, n: i64) -> PyResult<Self> {
        fc::DiscreteSet::uniform_grid(u, m, n)
            .map(|inner| PyDiscreteSet { inner })
            .map_err(to_py)
    }

    #[getter]
    fn points(&self) -> Vec<f64> {
        self.inner.points().to_vec()
    }

    fn stats(&self) -> PySetStats {
        let s = self.inner.stats();
        PySetStats {
            lib: s.lib,
            uib: s.uib,
            uniform: s.uniform,
            spacing: s.spacing,
        }
    }

    /// Interior gaps as `(lo, hi)` tuples.
    fn gaps(&self) -> Vec<(f64, f64)> {
        self.inner
            .gaps()
            .interior_gaps
            .iter()
            .map(|g| (g.lo, g.hi))
            .collect()
    }

    fn trivial_continuity_bound(&self) -> Option<f64> {
        fc::trivial_continuity_bound(&self.inner)
    }

    #[pyo3(signature = (other, tol=0.0))]
    fn union(&self, other: &PyDiscreteSet, tol: f64) -> PyResult<Self> {
        self.inner
            .union(&other.inner, tol)
            .map(|inner| PyDiscreteSet { inner })
            .map_err(to_py)
    }

    /// `(intersection, difference)`, each `None` when empty.
    #[pyo3(signature = (other, tol=0.0))]
    fn intersect_and_difference(
        &self,
        other: &PyDiscreteSet,
        tol: f64,
    ) -> PyResult<(Option<PyDiscreteSet>, Option<PyDiscreteSet>)> {
        let (i, d) = self
            .inner
            .intersect_and_difference(&other.inner, tol)
            .map_err(to_py)?;
        let wrap = |s: Option<fc::DiscreteSet>| s.map(|inner| PyDiscreteSet { inner });
        Ok((wrap(i), wrap(d)))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __contains__(&self, x: f64) -> bool {
        self.inner.contains(x)
    }

    fn __repr__(&self) -> String {
        format!("DiscreteSet({:?})", self.inner.points())
    }
}

#[pyclass(name = "Witness", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyWitness {
    #[pyo3(get)]
    c: f64,
    #[pyo3(get)]
    value: f64,
    #[pyo3(get)]
    residual: f64,
    #[pyo3(get)]
    exact: bool,
    /// Residual bound for fuzzy witnesses, `None` for exact ones.
    #[pyo3(get)]
    bound: Option<f64>,
    #[pyo3(get)]
    interior: bool,
}

impl From<fc::Witness> for PyWitness {
    fn from(w: fc::Witness) -> Self {
        let (exact, bound) = match w.guarantee {
            fc::Guarantee::Exact => (true, None),
            fc::Guarantee::Fuzzy { bound } => (false, Some(bound)),
        };
        PyWitness {
            c: w.c,
            value: w.value,
            residual: w.residual,
            exact,
            bound,
            interior: w.interior,
        }
    }
}

#[pymethods]
impl PyWitness {
    fn __repr__(&self) -> String {
        format!(
            "Witness(c={}, residual={}, exact={}, interior={})",
            self.c, self.residual, self.exact, self.interior
        )
    }
}

#[pyclass(name = "SampledFunction", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySampledFunction {
    inner: fc::SampledFunction,
}

fn params(q: f64, r: f64) -> PyResult<fc::FuzzyParams> {
    fc::FuzzyParams::new(q, r).map_err(to_py)
}

#[pymethods]
impl PySampledFunction {
    /// `pairs` is a sequence of `(x, y)` tuples in any order.
    #[new]
    #[pyo3(signature = (pairs, tol=0.0))]
    fn new(pairs: Vec<(f64, f64)>, tol: f64) -> PyResult<Self> {
        fc::SampledFunction::from_pairs(&pairs, tol)
            .map(|inner| PySampledFunction { inner })
            .map_err(to_py)
    }

    #[getter]
    fn points(&self) -> Vec<f64> {
        self.inner.points().to_vec()
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.inner.values().to_vec()
    }

    fn domain(&self) -> PyDiscreteSet {
        PyDiscreteSet {
            inner: self.inner.domain().clone(),
        }
    }

    fn step_eval(&self, x: f64) -> f64 {
        self.inner.step_extension().eval(x)
    }

    /// One of `"strictly_increasing"`, `"strictly_decreasing"`, `"neither"`.
    fn monotone_class(&self) -> &'static str {
        match self.inner.monotone_class() {
            fc::MonotoneClass::StrictlyIncreasing => "strictly_increasing",
            fc::MonotoneClass::StrictlyDecreasing => "strictly_decreasing",
            fc::MonotoneClass::Neither => "neither",
        }
    }

    fn invert(&self) -> PyResult<Self> {
        self.inner
            .invert_monotone()
            .map(|inner| PySampledFunction { inner })
            .map_err(to_py)
    }

    fn defect_at(&self, a: f64, q: f64) -> PyResult<f64> {
        fc::defect_at(&self.inner, a, q).map_err(to_py)
    }

    /// `(global, argmax, [(a, defect), ...])`.
    fn defect_profile(&self, q: f64) -> (f64, f64, Vec<(f64, f64)>) {
        let p = fc::defect_profile(&self.inner, q);
        let per = p.per_point.iter().map(|d| (d.a, d.defect)).collect();
        (p.global, p.argmax, per)
    }

    fn is_qr_continuous(&self, q: f64, r: f64) -> PyResult<bool> {
        Ok(fc::is_qr_continuous(&self.inner, params(q, r)?))
    }

    /// `(domain_gap_sup, image_gap_sup)`.
    fn gap_certificate(&self) -> PyResult<(f64, f64)> {
        fc::gap_certificate(&self.inner)
            .map(|c| (c.domain_gap_sup, c.image_gap_sup))
            .map_err(to_py)
    }

    /// `(domain_q_connected, f_qr_continuous, image_r_connected, consistent)`.
    fn image_connectedness(&self, q: f64, r: f64) -> PyResult<(bool, bool, bool, bool)> {
        let rep = fc::image_connectedness_check(&self.inner, params(q, r)?);
        Ok((
            rep.domain_q_connected,
            rep.f_qr_continuous,
            rep.image_r_connected,
            rep.consistent,
        ))
    }

    #[pyo3(signature = (target, a=None, b=None))]
    fn fuzzy_intermediate(&self, target: f64, a: Option<f64>, b: Option<f64>) -> PyResult<PyWitness> {
        let d = self.inner.domain();
        fc::fuzzy_intermediate(&self.inner, a.unwrap_or(d.min()), b.unwrap_or(d.max()), target)
            .map(PyWitness::from)
            .map_err(to_py)
    }

    /// Exact solve; pass either `codomain_spacing` or an explicit `codomain` set.
    #[pyo3(signature = (target, q, r, codomain_spacing=None, codomain=None, a=None, b=None))]
    #[allow(clippy::too_many_arguments)]
    fn discrete_intermediate(
        &self,
        target: f64,
        q: f64,
        r: f64,
        codomain_spacing: Option<f64>,
        codomain: Option<PyDiscreteSet>,
        a: Option<f64>,
        b: Option<f64>,
    ) -> PyResult<PyWitness> {
        let grid = match (codomain_spacing, codomain) {
            (Some(v), None) => fc::CodomainGrid::uniform(v).map_err(to_py)?,
            (None, Some(set)) => fc::CodomainGrid::Explicit(set.inner),
            _ => {
                return Err(FuzzyContError::new_err(
                    "pass exactly one of codomain_spacing or codomain",
                ))
            }
        };
        let d = self.inner.domain();
        fc::discrete_intermediate(
            &self.inner,
            &grid,
            a.unwrap_or(d.min()),
            b.unwrap_or(d.max()),
            target,
            params(q, r)?,
        )
        .map(PyWitness::from)
        .map_err(to_py)
    }

    fn digital_intermediate(&self, m: i64, n: i64, target: i64) -> PyResult<PyWitness> {
        fc::digital_intermediate(&self.inner, m, n, target)
            .map(PyWitness::from)
            .map_err(to_py)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("SampledFunction({} samples)", self.inner.len())
    }
}

#[pyclass(name = "RealSubset", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyRealSubset {
    inner: fc::RealSubset,
}

#[pymethods]
impl PyRealSubset {
    /// `pieces` is a sequence of closed `(lo, hi)` intervals; points as `(v, v)`.
    #[new]
    fn new(pieces: Vec<(f64, f64)>) -> PyResult<Self> {
        fc::RealSubset::new(pieces)
            .map(|inner| PyRealSubset { inner })
            .map_err(to_py)
    }

    #[staticmethod]
    fn from_points(points: Vec<f64>) -> PyResult<Self> {
        fc::RealSubset::from_points(&points)
            .map(|inner| PyRealSubset { inner })
            .map_err(to_py)
    }

    #[getter]
    fn pieces(&self) -> Vec<(f64, f64)> {
        self.inner.pieces().iter().map(|p| (p.lo, p.hi)).collect()
    }

    fn dist(&self, c: f64) -> f64 {
        fc::dist_to_set(c, &self.inner)
    }

    fn is_r_connected(&self, r: f64) -> bool {
        self.inner.is_r_connected(r)
    }

    fn components(&self, r: f64) -> Vec<Vec<(f64, f64)>> {
        self.inner
            .r_components(r)
            .components
            .iter()
            .map(|c| c.pieces().iter().map(|p| (p.lo, p.hi)).collect())
            .collect()
    }

    fn __repr__(&self) -> String {
        format!("RealSubset({:?})", self.pieces())
    }
}

#[pymodule]
fn fuzzycont(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDiscreteSet>()?;
    m.add_class::<PySetStats>()?;
    m.add_class::<PySampledFunction>()?;
    m.add_class::<PyWitness>()?;
    m.add_class::<PyRealSubset>()?;
    m.add("FuzzyContError", m.py().get_type::<FuzzyContError>())?;
    m.add("PreconditionViolated", m.py().get_type::<PreconditionViolated>())?;
    Ok(())
}
