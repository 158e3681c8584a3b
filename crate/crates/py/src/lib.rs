use std::collections::BTreeMap;

use dyckhike::boson::{lambda_mu_table as ladder_table, BosonExpr, FockState, RatRadical};
use dyckhike::dyck::{count_paths as path_count, enumerate_words as words, PathSpec};
use dyckhike::engine::{DyckSumEngine, Ladder, SignMode};
use dyckhike::evolution::{build_series, evaluate_at, vacuum_series};
use dyckhike::oracle::{oracle_ladder_decomposition, oracle_power, TruncationPolicy};
use dyckhike::pade::{build_even_pade, build_pade, eval_pade, order_condition_holds, PadeApproximant};
use dyckhike::parse::{parse_expr, parse_vacuum};
use num::{BigInt, BigRational, Zero};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(pydyckhike, DyckhikeError, PyValueError);
create_exception!(pydyckhike, ParseError, DyckhikeError);
create_exception!(pydyckhike, MathError, DyckhikeError);

fn math_err(e: impl std::fmt::Display) -> PyErr {
    MathError::new_err(e.to_string())
}

fn sign_mode(sign: &str) -> PyResult<SignMode> {
    match sign {
        "plus" | "+" => Ok(SignMode::Plus),
        "minus" | "-" => Ok(SignMode::Minus),
        other => Err(DyckhikeError::new_err(format!("sign must be 'plus' or 'minus', got {other:?}"))),
    }
}

fn vacuum(text: &str) -> PyResult<FockState> {
    parse_vacuum(text).map_err(|e| ParseError::new_err(e.to_string()))
}

fn fraction<'py>(py: Python<'py>, q: &BigRational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((q.numer().clone(), q.denom().clone()))
}

/// A boson operator `A`, parsed from text such as `"a[0]^3"`.
#[pyclass(name = "Expr", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyExpr {
    inner: BosonExpr,
}

#[pymethods]
impl PyExpr {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse_expr(text)
            .map(|inner| PyExpr { inner })
            .map_err(|e| ParseError::new_err(e.to_string()))
    }

    fn adjoint(&self) -> PyExpr {
        PyExpr {
            inner: self.inner.adjoint(),
        }
    }

    #[getter]
    fn order(&self) -> u32 {
        self.inner.order()
    }

    #[getter]
    fn terms(&self) -> Vec<String> {
        self.inner.terms().iter().map(ToString::to_string).collect()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Expr({:?})", self.inner.to_string())
    }
}

/// Exact scalar `q * sqrt(n)`.
#[pyclass(name = "Exact", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq)]
struct PyExact {
    inner: RatRadical,
}

#[pymethods]
impl PyExact {
    #[getter]
    fn rational<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, self.inner.rational())
    }

    #[getter]
    fn radicand(&self) -> BigInt {
        self.inner.radicand().clone()
    }

    /// Exact square with the sign kept.
    fn signed_square<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.signed_square())
    }

    fn __float__(&self) -> f64 {
        self.inner.to_f64()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Exact({:?})", self.inner.to_string())
    }
}

fn exact_map(coeffs: &BTreeMap<usize, RatRadical>) -> BTreeMap<usize, PyExact> {
    coeffs
        .iter()
        .map(|(d2, c)| (*d2, PyExact { inner: c.clone() }))
        .collect()
}

/// Power and series evaluator for one operator and vacuum, memoizing work
/// across calls.
#[pyclass(name = "Engine")]
struct PyEngine {
    expr: BosonExpr,
    vac: FockState,
    inner: DyckSumEngine,
}

#[pymethods]
impl PyEngine {
    #[new]
    #[pyo3(signature = (expr, vac = "|0>"))]
    fn new(expr: &PyExpr, vac: &str) -> PyResult<Self> {
        let vac = vacuum(vac)?;
        let ladder = Ladder::from_operator(&expr.inner, &vac, 0).map_err(math_err)?;
        Ok(PyEngine {
            expr: expr.inner.clone(),
            vac,
            inner: DyckSumEngine::new(ladder),
        })
    }

    /// `{delta2: Exact}` for `(A† ± A)^k` on the vacuum.
    #[pyo3(signature = (k, sign = "plus"))]
    fn power(&mut self, k: usize, sign: &str) -> PyResult<BTreeMap<usize, PyExact>> {
        let r = self.inner.power_coefficients(k, sign_mode(sign)?).map_err(math_err)?;
        Ok(exact_map(&r.coeffs))
    }

    /// Taylor coefficients of the vacuum amplitude as `Fraction`s.
    #[pyo3(signature = (order, sign = "minus"))]
    fn vacuum_series<'py>(&mut self, py: Python<'py>, order: usize, sign: &str) -> PyResult<Vec<Bound<'py, PyAny>>> {
        let t = vacuum_series(&mut self.inner, order, sign_mode(sign)?).map_err(math_err)?;
        t.iter().map(|q| fraction(py, q)).collect()
    }

    /// `[L/M]` approximant of the vacuum amplitude (in `r²` when the series
    /// is even).
    #[pyo3(signature = (l, m = None, sign = "minus"))]
    fn pade(&mut self, l: usize, m: Option<usize>, sign: &str) -> PyResult<PyPade> {
        let m = m.unwrap_or(l);
        let s = sign_mode(sign)?;
        let short = vacuum_series(&mut self.inner, l + m, s).map_err(math_err)?;
        let even = short.iter().skip(1).step_by(2).all(Zero::is_zero);
        let (inner, taylor) = if even {
            let t = vacuum_series(&mut self.inner, 2 * (l + m), s).map_err(math_err)?;
            (build_even_pade(&t, l, m).map_err(math_err)?, t)
        } else {
            (build_pade(&short, l, m).map_err(math_err)?, short)
        };
        let order_condition = order_condition_holds(&inner, &taylor);
        Ok(PyPade { inner, order_condition })
    }

    /// Checks every `k ≤ k_max` in both sign modes against brute-force
    /// Fock-space application.
    #[pyo3(signature = (k_max, max_quanta = 4096))]
    fn oracle_check(&mut self, k_max: usize, max_quanta: u64) -> PyResult<bool> {
        let policy = TruncationPolicy::new(max_quanta, max_quanta).map_err(math_err)?;
        for s in [SignMode::Plus, SignMode::Minus] {
            for k in 0..=k_max {
                let fast = self.inner.power_coefficients(k, s).map_err(math_err)?;
                let v = oracle_power(&self.expr, &self.vac, k, s, &policy).map_err(math_err)?;
                let slow = oracle_ladder_decomposition(&self.expr, &self.vac, &v, k).map_err(math_err)?;
                if slow != fast.coeffs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `(definite_sums, memo_hits, memo_misses)`.
    fn stats(&self) -> (usize, usize, usize) {
        let s = self.inner.stats();
        (s.definite_sums, s.memo_hits, s.memo_misses)
    }
}

#[pyclass(name = "Pade", frozen)]
struct PyPade {
    inner: PadeApproximant,
    #[pyo3(get)]
    order_condition: bool,
}

#[pymethods]
impl PyPade {
    #[getter]
    fn l(&self) -> usize {
        self.inner.l
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m
    }

    #[getter]
    fn variable(&self) -> String {
        self.inner.variable.to_string()
    }

    #[getter]
    fn numerator<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.inner.numerator.coeffs().iter().map(|q| fraction(py, q)).collect()
    }

    #[getter]
    fn denominator<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.inner.denominator.coeffs().iter().map(|q| fraction(py, q)).collect()
    }

    fn __call__(&self, r: f64) -> PyResult<f64> {
        eval_pade(&self.inner, r).map_err(math_err)
    }
}

#[pyfunction]
#[pyo3(signature = (k, d2, d1 = 0))]
fn count_paths(k: usize, d2: usize, d1: usize) -> BigInt {
    path_count(PathSpec::new(k, d1, d2))
}

/// Dyck words written right to left (rightmost letter is the first step).
#[pyfunction]
#[pyo3(signature = (k, d2, d1 = 0))]
fn enumerate_words(k: usize, d2: usize, d1: usize) -> Vec<String> {
    words(PathSpec::new(k, d1, d2)).map(|w| w.written()).collect()
}

/// Ladder products `λₚμₚ` for `p = 1..=p_max` as `Fraction`s.
#[pyfunction]
#[pyo3(signature = (expr, vac = "|0>", p_max = 8))]
fn lambda_mu_table<'py>(py: Python<'py>, expr: &PyExpr, vac: &str, p_max: usize) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let table = ladder_table(&expr.inner, &vacuum(vac)?, p_max).map_err(math_err)?;
    table.products().iter().map(|q| fraction(py, q)).collect()
}

/// Amplitudes `{delta2: float}` of `exp[r(A† - A)]` on the vacuum from the
/// order-`order` Taylor series.
#[pyfunction]
#[pyo3(signature = (expr, order, r, vac = "|0>", sign = "minus"))]
fn evolve(expr: &PyExpr, order: usize, r: f64, vac: &str, sign: &str) -> PyResult<BTreeMap<usize, f64>> {
    if !r.is_finite() || r < 0.0 {
        return Err(DyckhikeError::new_err(format!("r must be finite and non-negative, got {r}")));
    }
    let series = build_series(&expr.inner, &vacuum(vac)?, order, sign_mode(sign)?).map_err(math_err)?;
    Ok(evaluate_at(&series, r, 53).amplitudes)
}

#[pymodule]
fn pydyckhike(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyExpr>()?;
    m.add_class::<PyExact>()?;
    m.add_class::<PyEngine>()?;
    m.add_class::<PyPade>()?;
    m.add_function(wrap_pyfunction!(count_paths, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_words, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_mu_table, m)?)?;
    m.add_function(wrap_pyfunction!(evolve, m)?)?;
    m.add("DyckhikeError", m.py().get_type::<DyckhikeError>())?;
    m.add("ParseError", m.py().get_type::<ParseError>())?;
    m.add("MathError", m.py().get_type::<MathError>())?;
    Ok(())
}
