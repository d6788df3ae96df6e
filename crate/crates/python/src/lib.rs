//! Python bindings: the element grammar is the data interchange format, so
//! rationals cross the boundary exactly (as `p/q` strings inside element
//! text), never as floats.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use hv_core::algebra::bracket as lie_bracket;
use hv_core::expr::{
    format_basis_index, format_lie, format_uea, format_vector, parse_element, parse_generator,
};
use hv_core::modules::{
    act_uea, basis_enumerate, defect, evaluate_central, CentralCharacter, ModuleSpec,
    ModuleVector, WhittakerMap,
};
use hv_core::rational::Rational;
use hv_core::solver::{
    descend, nilpotency_index, submodule_membership, verify_lemma, whittaker_solve, Bounds,
    LemmaRanges, Membership,
};

fn to_py_err(e: hv_core::Error) -> PyErr {
    use hv_core::Error::*;
    match &e {
        DescentStuck { .. } | WhittakerCounterexample(_) | CapExhausted { .. } => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn rational(text: &str) -> PyResult<Rational> {
    text.trim()
        .parse()
        .map_err(|_| PyValueError::new_err(format!("invalid rational {text:?} (use p or p/q)")))
}

/// Lie bracket of two algebra elements, e.g. `bracket("L[2]", "L[-2]")`.
#[pyfunction]
fn bracket(x: &str, y: &str) -> PyResult<String> {
    let a = parse_element(x, None)
        .and_then(|e| e.to_lie())
        .map_err(to_py_err)?;
    let b = parse_element(y, None)
        .and_then(|e| e.to_lie())
        .map_err(to_py_err)?;
    Ok(format_lie(&lie_bracket(&a, &b)))
}

/// PBW normal form of a product of generators, e.g. `normalize("L[1]*L[-1]")`.
#[pyfunction]
fn normalize(expr: &str) -> PyResult<String> {
    let u = parse_element(expr, None)
        .and_then(|e| e.to_uea())
        .map_err(to_py_err)?;
    Ok(format_uea(&u))
}

/// A module context: the Whittaker values, the central character, the
/// module kind and the truncation bounds. All operations parse and print
/// elements in the text grammar.
#[pyclass]
struct Context {
    spec: ModuleSpec,
    xi: CentralCharacter,
    bounds: Bounds,
}

impl Context {
    fn vector(&self, text: &str) -> PyResult<ModuleVector> {
        parse_element(text, Some(&self.spec))
            .and_then(|e| e.into_vector(&self.spec))
            .map_err(to_py_err)
    }
}

#[pymethods]
impl Context {
    #[new]
    #[pyo3(signature = (
        psi = ("2".to_string(), "3".to_string(), "5".to_string()),
        xi = ("0".to_string(), "0".to_string(), "0".to_string(), "0".to_string()),
        module = "universal".to_string(),
        degree = 3,
        l0 = 3,
        zdeg = 2,
        gen_index = 6,
    ))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        psi: (String, String, String),
        xi: (String, String, String, String),
        module: String,
        degree: u32,
        l0: u32,
        zdeg: u32,
        gen_index: u32,
    ) -> PyResult<Self> {
        let psi = WhittakerMap::new(rational(&psi.0)?, rational(&psi.1)?, rational(&psi.2)?);
        let xi = CentralCharacter::new([
            rational(&xi.0)?,
            rational(&xi.1)?,
            rational(&xi.2)?,
            rational(&xi.3)?,
        ]);
        let spec = match module.as_str() {
            "universal" => ModuleSpec::universal(psi).map_err(to_py_err)?,
            "reduced" => ModuleSpec::reduced(psi, xi.clone()).map_err(to_py_err)?,
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown module kind {other:?} (universal or reduced)"
                )))
            }
        };
        Ok(Context {
            spec,
            xi,
            bounds: Bounds {
                degree,
                l0,
                zdeg,
                gen_index,
            },
        })
    }

    /// Act by an enveloping-algebra element on a module vector.
    fn act(&self, operator: &str, vector: &str) -> PyResult<String> {
        let u = parse_element(operator, None)
            .and_then(|e| e.to_uea())
            .map_err(to_py_err)?;
        let v = self.vector(vector)?;
        Ok(format_vector(&act_uea(&u, &v)))
    }

    /// Dot action `g . v = g v - psi(g) v` of a single generator.
    fn defect(&self, generator: &str, vector: &str) -> PyResult<String> {
        let g = parse_generator(generator).map_err(to_py_err)?;
        let v = self.vector(vector)?;
        Ok(format_vector(&defect(g, &v)))
    }

    /// Maximum degree of a vector, `None` for the zero vector.
    fn maxdeg(&self, vector: &str) -> PyResult<Option<u64>> {
        Ok(self.vector(vector)?.maxdeg())
    }

    /// Maximum `L_0` exponent of a vector, `None` for the zero vector.
    fn max_l0(&self, vector: &str) -> PyResult<Option<u32>> {
        Ok(self.vector(vector)?.max_l0())
    }

    /// Basis of the Whittaker vectors in the truncated module.
    fn solve(&self) -> Vec<String> {
        whittaker_solve(&self.spec, &self.bounds)
            .iter()
            .map(format_vector)
            .collect()
    }

    /// Reduce a vector to a multiple of the cyclic vector; returns the
    /// operator trace and the scalar.
    fn descend(&self, vector: &str) -> PyResult<(Vec<String>, String)> {
        let v = self.vector(vector)?;
        let (trace, scalar) = descend(&v).map_err(to_py_err)?;
        Ok((
            trace.iter().map(|g| g.to_string()).collect(),
            scalar.to_string(),
        ))
    }

    /// Smallest `K <= cap` with the dot action applied `K` times vanishing.
    #[pyo3(signature = (generator, vector, cap = 20))]
    fn nilpotency_index(&self, generator: &str, vector: &str, cap: u32) -> PyResult<u32> {
        let g = parse_generator(generator).map_err(to_py_err)?;
        let v = self.vector(vector)?;
        nilpotency_index(g, &v, cap).map_err(to_py_err)
    }

    /// Bounded submodule membership: a list of `(coefficient, description)`
    /// witness pairs when the target is reachable, `None` when unknown
    /// within the bounds.
    fn member(
        &self,
        target: &str,
        generators: Vec<String>,
    ) -> PyResult<Option<Vec<(String, String)>>> {
        let t = self.vector(target)?;
        let gens: PyResult<Vec<ModuleVector>> =
            generators.iter().map(|g| self.vector(g)).collect();
        let report = submodule_membership(&t, &gens?, &self.bounds).map_err(to_py_err)?;
        match report.outcome {
            Membership::Member(witness) => Ok(Some(
                witness
                    .into_iter()
                    .map(|w| {
                        let s = &report.spanning[w.span];
                        let ops: Vec<String> = s.ops.iter().map(|g| g.to_string()).collect();
                        let desc = if ops.is_empty() {
                            format!("g{}", s.generator)
                        } else {
                            format!("{}.g{}", ops.join("."), s.generator)
                        };
                        (w.coeff.to_string(), desc)
                    })
                    .collect(),
            )),
            Membership::UnknownWithinBounds => Ok(None),
        }
    }

    /// Run a lemma check; returns `(instances, failures)`.
    fn verify(&self, lemma: &str) -> PyResult<(u64, u64)> {
        let report =
            verify_lemma(self.spec.psi(), lemma, &LemmaRanges::default()).map_err(to_py_err)?;
        Ok((report.instances, report.failures.len() as u64))
    }

    /// The truncated module basis in enumeration order.
    fn basis(&self) -> Vec<String> {
        basis_enumerate(
            &self.spec,
            self.bounds.degree,
            self.bounds.l0,
            self.bounds.zdeg,
        )
        .iter()
        .map(format_basis_index)
        .collect()
    }

    /// Evaluate the central exponents of a universal vector at this
    /// context's `xi`, landing in the reduced module.
    fn reduce(&self, vector: &str) -> PyResult<String> {
        let v = self.vector(vector)?;
        let r = evaluate_central(&v, &self.xi).map_err(to_py_err)?;
        Ok(format_vector(&r))
    }
}

#[pymodule]
fn hv_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Context>()?;
    m.add_function(wrap_pyfunction!(bracket, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    Ok(())
}
