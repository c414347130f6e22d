//! Python bindings: `import pytensorcount`.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use tensorcount::algebra::{self, TensorAlgebraElement};
use tensorcount::counting::{self, Method};
use tensorcount::npoly::NPolynomial;
use tensorcount::symplectic::{self, SparseTensorPolynomial};
use tensorcount::{bruteforce, characters, correlators, repmatrices, Error, Partition, Permutation};

create_exception!(pytensorcount, TensorCountError, PyException);
create_exception!(pytensorcount, BudgetExceededError, TensorCountError);
create_exception!(pytensorcount, CrossCheckError, TensorCountError);

fn err(e: Error) -> PyErr {
    match e {
        Error::BudgetExceeded { .. } => BudgetExceededError::new_err(e.to_string()),
        Error::CrossCheck(_) => CrossCheckError::new_err(e.to_string()),
        _ => TensorCountError::new_err(e.to_string()),
    }
}

fn partition(parts: Vec<usize>) -> PyResult<Partition> {
    Partition::from_sorted(parts).map_err(err)
}

fn method(name: &str) -> PyResult<Method> {
    Method::from_str(name).map_err(err)
}

fn fraction<'py>(py: Python<'py>, r: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((r.numer().clone(), r.denom().clone()))
}

#[pyclass(name = "Permutation", module = "pytensorcount", frozen, skip_from_py_object, eq, hash)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPermutation {
    inner: Permutation,
}

#[pymethods]
impl PyPermutation {
    /// One-line notation, 1-based.
    #[new]
    fn new(images: Vec<usize>) -> PyResult<Self> {
        Ok(PyPermutation {
            inner: Permutation::from_images(&images).map_err(err)?,
        })
    }

    /// Parses `[2,1,4,3]` or `(1 2)(3 4)`.
    #[staticmethod]
    #[pyo3(signature = (text, degree=None))]
    fn parse(text: &str, degree: Option<usize>) -> PyResult<Self> {
        Ok(PyPermutation {
            inner: Permutation::parse(text, degree).map_err(err)?,
        })
    }

    #[staticmethod]
    fn identity(m: usize) -> Self {
        PyPermutation {
            inner: Permutation::identity(m),
        }
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn images(&self) -> Vec<usize> {
        self.inner.images()
    }

    fn cycles(&self) -> Vec<Vec<usize>> {
        self.inner.cycles()
    }

    fn cycle_type(&self) -> Vec<usize> {
        self.inner.cycle_type().parts().to_vec()
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    fn compose(&self, other: &PyPermutation) -> PyResult<Self> {
        Ok(PyPermutation {
            inner: self.inner.compose(&other.inner).map_err(err)?,
        })
    }

    fn __mul__(&self, other: &PyPermutation) -> PyResult<Self> {
        self.compose(other)
    }

    fn inverse(&self) -> Self {
        PyPermutation {
            inner: self.inner.inverse(),
        }
    }

    /// `σ⁻¹ ξ σ`.
    fn tilde(&self) -> PyResult<Self> {
        Ok(PyPermutation {
            inner: self.inner.tilde().map_err(err)?,
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation({})", self.inner)
    }
}

fn unwrap_tuple(tuple: &[PyRef<'_, PyPermutation>]) -> Vec<Permutation> {
    tuple.iter().map(|p| p.inner.clone()).collect()
}

#[pyclass(name = "NPolynomial", module = "pytensorcount", frozen, skip_from_py_object, eq)]
#[derive(Clone, PartialEq)]
struct PyNPolynomial {
    inner: NPolynomial,
}

#[pymethods]
impl PyNPolynomial {
    fn __call__(&self, n: i64) -> BigInt {
        self.inner.eval(n)
    }

    /// `[(exponent, coefficient)]`, lowest power first.
    fn coefficients(&self) -> Vec<(u32, BigInt)> {
        self.inner.terms().map(|(e, c)| (e, c.clone())).collect()
    }

    #[getter]
    fn degree(&self) -> Option<u32> {
        self.inner.degree()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("NPolynomial('{}')", self.inner)
    }
}

#[pyclass(name = "Observable", module = "pytensorcount", frozen)]
struct PyObservable {
    inner: correlators::Observable,
}

#[pymethods]
impl PyObservable {
    #[new]
    fn new(tuple: Vec<PyRef<'_, PyPermutation>>) -> PyResult<Self> {
        Ok(PyObservable {
            inner: correlators::Observable::new(unwrap_tuple(&tuple)).map_err(err)?,
        })
    }

    #[staticmethod]
    fn identity(d: usize, n: usize) -> Self {
        PyObservable {
            inner: correlators::Observable::identity(d, n),
        }
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn correlator(&self, other: &PyObservable) -> PyResult<PyNPolynomial> {
        Ok(PyNPolynomial {
            inner: correlators::correlator_2pt(&self.inner, &other.inner).map_err(err)?,
        })
    }

    fn expectation(&self) -> PyResult<PyNPolynomial> {
        Ok(PyNPolynomial {
            inner: correlators::correlator_1pt(&self.inner).map_err(err)?,
        })
    }

    fn __repr__(&self) -> String {
        let parts: Vec<String> = self.inner.tuple().iter().map(ToString::to_string).collect();
        format!("Observable({})", parts.join(", "))
    }
}

#[pyclass(name = "AlgebraElement", module = "pytensorcount", frozen, skip_from_py_object, eq)]
#[derive(Clone, PartialEq)]
struct PyAlgebraElement {
    inner: TensorAlgebraElement,
}

#[pymethods]
impl PyAlgebraElement {
    /// The gauge-orbit sum `b_σ` of a tuple.
    #[staticmethod]
    fn graph(tuple: Vec<PyRef<'_, PyPermutation>>) -> PyResult<Self> {
        Ok(PyAlgebraElement {
            inner: algebra::graph_basis_element(&unwrap_tuple(&tuple)).map_err(err)?,
        })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn support_len(&self) -> usize {
        self.inner.support_len()
    }

    fn coefficient<'py>(&self, py: Python<'py>, tuple: Vec<PyRef<'_, PyPermutation>>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.coefficient(&unwrap_tuple(&tuple)))
    }

    fn pairing<'py>(&self, py: Python<'py>, other: &PyAlgebraElement) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &algebra::pairing(&self.inner, &other.inner).map_err(err)?)
    }

    fn __mul__(&self, other: &PyAlgebraElement) -> PyResult<Self> {
        Ok(PyAlgebraElement {
            inner: algebra::multiply(&self.inner, &other.inner).map_err(err)?,
        })
    }

    fn __add__(&self, other: &PyAlgebraElement) -> PyResult<Self> {
        Ok(PyAlgebraElement {
            inner: self.inner.add(&other.inner).map_err(err)?,
        })
    }

    fn __sub__(&self, other: &PyAlgebraElement) -> PyResult<Self> {
        Ok(PyAlgebraElement {
            inner: self.inner.sub(&other.inner).map_err(err)?,
        })
    }
}

#[pyclass(name = "SymplecticPolynomial", module = "pytensorcount", frozen)]
struct PySymplecticPolynomial {
    inner: SparseTensorPolynomial,
}

#[pymethods]
impl PySymplecticPolynomial {
    fn num_terms(&self) -> usize {
        self.inner.num_terms()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Integer coefficient of a full monomial such as `"T_000*T_032*T_212*T_220"`.
    fn coefficient_of(&self, monomial: &str) -> PyResult<i64> {
        let m = symplectic::parse_monomial(monomial).map_err(err)?;
        Ok(self.inner.coefficient_of(&m))
    }

    /// What multiplies a partial monomial.
    fn coefficient(&self, query: &str) -> PyResult<PySymplecticPolynomial> {
        let q = symplectic::parse_monomial(query).map_err(err)?;
        Ok(PySymplecticPolynomial {
            inner: self.inner.coefficient(&q),
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

#[pyfunction]
fn count_invariants(d: usize, n: usize) -> PyResult<BigUint> {
    counting::count_invariants(d, n).map_err(err)
}

#[pyfunction]
fn count_connected(d: usize, n: usize) -> PyResult<BigUint> {
    counting::count_connected(d, n).map_err(err)
}

#[pyfunction]
fn count_with(method_name: &str, d: usize, n: usize) -> PyResult<BigUint> {
    counting::count_with(method(method_name)?, d, n).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (d, max_n, method_name="coset", connected=false))]
fn sequence(d: usize, max_n: usize, method_name: &str, connected: bool) -> PyResult<Vec<(usize, BigUint)>> {
    counting::sequence(d, max_n, method(method_name)?, connected).map_err(err)
}

#[pyfunction]
fn orbit_count(d: usize, n: usize) -> PyResult<BigUint> {
    bruteforce::orbit_count(d, n).map_err(err)
}

#[pyfunction]
fn burnside_count(d: usize, n: usize) -> PyResult<BigUint> {
    bruteforce::burnside_count(d, n).map_err(err)
}

#[pyfunction]
fn aut_order(tuple: Vec<PyRef<'_, PyPermutation>>) -> PyResult<BigUint> {
    bruteforce::aut_order(&unwrap_tuple(&tuple)).map_err(err)
}

#[pyfunction]
fn character(irrep: Vec<usize>, class_type: Vec<usize>) -> PyResult<i128> {
    characters::character(&partition(irrep)?, &partition(class_type)?).map_err(err)
}

/// `(irreps, classes, values)` with `values[irrep][class]`.
#[pyfunction]
fn character_table(m: usize) -> (Vec<Vec<usize>>, Vec<Vec<usize>>, Vec<Vec<i128>>) {
    let t = characters::character_table(m);
    let parts = |ps: &[Partition]| ps.iter().map(|p| p.parts().to_vec()).collect();
    (parts(&t.irreps), parts(&t.classes), t.values)
}

#[pyfunction]
fn kronecker(r1: Vec<usize>, r2: Vec<usize>, r3: Vec<usize>) -> PyResult<BigUint> {
    characters::kronecker(&partition(r1)?, &partition(r2)?, &partition(r3)?).map_err(err)
}

#[pyfunction]
fn rep_matrix(irrep: Vec<usize>, sigma: &PyPermutation) -> PyResult<Vec<Vec<f64>>> {
    let m = repmatrices::rep_matrix(&partition(irrep)?, &sigma.inner).map_err(err)?;
    Ok(m.row_iter().map(|r| r.iter().copied().collect()).collect())
}

#[pyfunction]
fn branching_projector(irrep: Vec<usize>) -> PyResult<Vec<Vec<f64>>> {
    let m = repmatrices::branching_projector(&partition(irrep)?).map_err(err)?;
    Ok(m.row_iter().map(|r| r.iter().copied().collect()).collect())
}

/// Orbit representatives of the graph basis at `(d, n)`.
#[pyfunction]
fn graph_basis(d: usize, n: usize) -> PyResult<Vec<Vec<PyPermutation>>> {
    let basis = algebra::basis_list(d, n).map_err(err)?;
    Ok(basis
        .representatives
        .into_iter()
        .map(|t| t.into_iter().map(|inner| PyPermutation { inner }).collect())
        .collect())
}

/// The algebra report as a dict.
#[pyfunction]
#[pyo3(signature = (d, n, samples=20, seed=1))]
fn algebra_check<'py>(py: Python<'py>, d: usize, n: usize, samples: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let report = py.detach(|| algebra::algebra_check(d, n, samples, seed)).map_err(err)?;
    let text = serde_json::to_string(&report).map_err(|e| TensorCountError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyfunction]
fn correlator_oracle(a: &PyObservable, b: &PyObservable, big_n: u64) -> PyResult<BigUint> {
    correlators::correlator_2pt_oracle(&a.inner, &b.inner, big_n).map_err(err)
}

#[pyfunction]
fn expectation_oracle(a: &PyObservable, big_n: u64) -> PyResult<BigUint> {
    correlators::correlator_1pt_oracle(&a.inner, big_n).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n=2))]
fn k4_invariant(n: usize) -> PyResult<PySymplecticPolynomial> {
    Ok(PySymplecticPolynomial {
        inner: symplectic::k4_invariant(n).map_err(err)?,
    })
}

#[pymodule]
pub fn pytensorcount(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("TensorCountError", py.get_type::<TensorCountError>())?;
    m.add("BudgetExceededError", py.get_type::<BudgetExceededError>())?;
    m.add("CrossCheckError", py.get_type::<CrossCheckError>())?;
    m.add_class::<PyPermutation>()?;
    m.add_class::<PyNPolynomial>()?;
    m.add_class::<PyObservable>()?;
    m.add_class::<PyAlgebraElement>()?;
    m.add_class::<PySymplecticPolynomial>()?;
    m.add_function(wrap_pyfunction!(count_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(count_connected, m)?)?;
    m.add_function(wrap_pyfunction!(count_with, m)?)?;
    m.add_function(wrap_pyfunction!(sequence, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_count, m)?)?;
    m.add_function(wrap_pyfunction!(burnside_count, m)?)?;
    m.add_function(wrap_pyfunction!(aut_order, m)?)?;
    m.add_function(wrap_pyfunction!(character, m)?)?;
    m.add_function(wrap_pyfunction!(character_table, m)?)?;
    m.add_function(wrap_pyfunction!(kronecker, m)?)?;
    m.add_function(wrap_pyfunction!(rep_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(branching_projector, m)?)?;
    m.add_function(wrap_pyfunction!(graph_basis, m)?)?;
    m.add_function(wrap_pyfunction!(algebra_check, m)?)?;
    m.add_function(wrap_pyfunction!(correlator_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(expectation_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(k4_invariant, m)?)?;
    Ok(())
}
