//! Python bindings: the `Lattice` and `AbelianGroup` classes plus the
//! transfer verification helpers, mirroring the CLI reports as plain dicts.

use finlat::abelian::{self, FiniteAbelianGroup};
use finlat::builders;
use finlat::classify;
use finlat::lattice::{FiniteLattice, LatticeDocument};
use finlat::limits::Limits;
use finlat::represent::{self, PartsKind};
use finlat::topology;
use finlat::transfer;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::json;
use std::sync::Arc;

fn limits() -> Limits {
    Limits::from_env()
}

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Recursively convert a JSON value into Python objects.
fn json_to_py<'py>(py: Python<'py>, value: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match value {
        serde_json::Value::Null => py.None().into_bound(py),
        serde_json::Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any()
            } else if let Some(u) = n.as_u64() {
                u.into_pyobject(py)?.into_any()
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any()
            }
        }
        serde_json::Value::String(s) => s.into_pyobject(py)?.into_any(),
        serde_json::Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        serde_json::Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, v) in map {
                dict.set_item(k, json_to_py(py, v)?)?;
            }
            dict.into_any()
        }
    })
}

fn report_to_py<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let v = serde_json::to_value(value).map_err(err)?;
    Ok(json_to_py(py, &v)?.unbind())
}

/// A bounded finite lattice with precomputed meet and join tables.
#[pyclass(frozen)]
struct Lattice {
    inner: Arc<FiniteLattice>,
}

#[pymethods]
impl Lattice {
    /// Build from a spec string such as "chain:5", "divisor:60", "M:3",
    /// "N5", "subspace:2,2", or "product:(divisor:12)x(chain:2)".
    #[staticmethod]
    fn from_spec(spec: &str) -> PyResult<Lattice> {
        let l = builders::parse_spec(spec, &limits()).map_err(err)?;
        Ok(Lattice { inner: Arc::new(l) })
    }

    /// Build from a cover relation; each pair (x, y) says x is covered by y.
    #[staticmethod]
    #[pyo3(signature = (n, covers, labels=None))]
    fn from_covers(
        n: usize,
        covers: Vec<(usize, usize)>,
        labels: Option<Vec<String>>,
    ) -> PyResult<Lattice> {
        let l = FiniteLattice::build_from_covers(n, &covers, labels, &limits()).map_err(err)?;
        Ok(Lattice { inner: Arc::new(l) })
    }

    /// Parse the JSON interchange document {"labels": [...], "covers": [...]}.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Lattice> {
        let doc: LatticeDocument = serde_json::from_str(text).map_err(err)?;
        let (l, _warnings) = FiniteLattice::from_document(&doc, &limits()).map_err(err)?;
        Ok(Lattice { inner: Arc::new(l) })
    }

    fn to_json(&self) -> PyResult<String> {
        let v = serde_json::to_value(self.inner.to_document()).map_err(err)?;
        serde_json::to_string_pretty(&v).map_err(err)
    }

    fn size(&self) -> usize {
        self.inner.size()
    }

    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn label(&self, i: usize) -> PyResult<String> {
        self.check(i)?;
        Ok(self.inner.label(i).to_string())
    }

    fn label_index(&self, label: &str) -> Option<usize> {
        self.inner.label_index(label)
    }

    fn bottom(&self) -> usize {
        self.inner.bottom()
    }

    fn top(&self) -> usize {
        self.inner.top()
    }

    fn leq(&self, a: usize, b: usize) -> PyResult<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.inner.leq(a, b))
    }

    fn meet(&self, a: usize, b: usize) -> PyResult<usize> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.inner.meet(a, b))
    }

    fn join(&self, a: usize, b: usize) -> PyResult<usize> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.inner.join(a, b))
    }

    fn dual(&self) -> Lattice {
        Lattice { inner: Arc::new(self.inner.dual()) }
    }

    /// The interval [a, b] as a lattice of its own, plus the parent indices
    /// of its members.
    fn interval(&self, a: usize, b: usize) -> PyResult<(Lattice, Vec<usize>)> {
        self.check(a)?;
        self.check(b)?;
        let view = self.inner.interval(a, b).map_err(err)?;
        let members = view.members().to_vec();
        Ok((Lattice { inner: Arc::new(view.as_lattice().clone()) }, members))
    }

    fn is_distributive(&self) -> bool {
        self.inner.is_distributive()
    }

    fn is_modular(&self) -> bool {
        self.inner.is_modular()
    }

    fn is_total_order(&self) -> bool {
        self.inner.is_total_order()
    }

    fn is_strongly_irreducible(&self, p: usize) -> PyResult<bool> {
        self.check(p)?;
        Ok(classify::is_strongly_irreducible(&self.inner, p))
    }

    fn is_strongly_hollow(&self, p: usize) -> PyResult<bool> {
        self.check(p)?;
        Ok(classify::is_strongly_hollow(&self.inner, p))
    }

    /// Full per-element profiles as a list of dicts.
    fn classify(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        report_to_py(py, &classify::classify_all(&self.inner))
    }

    /// The six equivalent conditions for strong irreducibility of `p`,
    /// evaluated independently (equal whenever the omega set is non-empty).
    fn characterization(&self, py: Python<'_>, p: usize) -> PyResult<Py<PyAny>> {
        self.check(p)?;
        report_to_py(py, &classify::characterization_report(&self.inner, p))
    }

    /// For a strongly irreducible `p`: an interval pseudo-complement
    /// witness or the verdict that `p` is a waist.
    fn dichotomy(&self, py: Python<'_>, p: usize) -> PyResult<Py<PyAny>> {
        self.check(p)?;
        let outcome = classify::structure_dichotomy(&self.inner, p).map_err(err)?;
        report_to_py(py, &outcome)
    }

    /// Strongly irreducible elements excluding top.
    fn si_spectrum(&self) -> Vec<usize> {
        topology::si_spectrum(&self.inner)
    }

    /// Strongly hollow elements excluding bottom.
    fn sh_spectrum(&self) -> Vec<usize> {
        topology::sh_spectrum(&self.inner)
    }

    /// Closed-set basis over the strongly irreducible spectrum:
    /// {"spectrum": [...], "sets": {label: [labels]}, "verified": bool}.
    fn closed_basis(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let basis = topology::closed_basis(self.inner.clone(), &topology::si_spectrum(&self.inner))
            .map_err(err)?;
        self.basis_report(py, &basis)
    }

    /// Open-set basis over the strongly hollow spectrum.
    fn open_basis(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let basis = topology::open_basis(self.inner.clone(), &topology::sh_spectrum(&self.inner))
            .map_err(err)?;
        self.basis_report(py, &basis)
    }

    /// Irredundant meet representations of a target element; kind is one of
    /// "si", "irr", "any".
    #[pyo3(signature = (target, kind="si", max_size=8))]
    fn meet_representations(
        &self,
        py: Python<'_>,
        target: usize,
        kind: &str,
        max_size: usize,
    ) -> PyResult<Py<PyAny>> {
        self.check(target)?;
        let reps =
            represent::irredundant_meet_reps(&self.inner, target, parse_kind(kind)?, max_size, &limits())
                .map_err(err)?;
        let parts: Vec<Vec<usize>> = reps.into_iter().map(|r| r.parts).collect();
        report_to_py(py, &parts)
    }

    #[pyo3(signature = (target, kind="si", max_size=8))]
    fn join_representations(
        &self,
        py: Python<'_>,
        target: usize,
        kind: &str,
        max_size: usize,
    ) -> PyResult<Py<PyAny>> {
        self.check(target)?;
        let reps =
            represent::irredundant_join_reps(&self.inner, target, parse_kind(kind)?, max_size, &limits())
                .map_err(err)?;
        let parts: Vec<Vec<usize>> = reps.into_iter().map(|r| r.parts).collect();
        report_to_py(py, &parts)
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }

    fn __repr__(&self) -> String {
        format!("Lattice(n={}, bottom={:?}, top={:?})",
            self.inner.size(),
            self.inner.label(self.inner.bottom()),
            self.inner.label(self.inner.top()))
    }
}

impl Lattice {
    fn check(&self, i: usize) -> PyResult<()> {
        if i >= self.inner.size() {
            return Err(PyValueError::new_err(format!(
                "element index {i} out of range for size {}",
                self.inner.size()
            )));
        }
        Ok(())
    }

    fn basis_report(&self, py: Python<'_>, basis: &topology::TopologyBasis) -> PyResult<Py<PyAny>> {
        let l = &self.inner;
        let sets: serde_json::Map<String, serde_json::Value> = l
            .elements()
            .map(|a| (l.label(a).to_string(), json!(basis.member_labels(a))))
            .collect();
        let report = json!({
            "kind": match basis.kind {
                topology::BasisKind::Closed => "closed",
                topology::BasisKind::Open => "open",
            },
            "spectrum": basis.spectrum.iter().map(|&p| l.label(p)).collect::<Vec<_>>(),
            "sets": sets,
            "pairs_checked": basis.verification.pairs_checked,
            "verified": basis.verification.passed(),
        });
        Ok(json_to_py(py, &report)?.unbind())
    }
}

fn parse_kind(kind: &str) -> PyResult<PartsKind> {
    match kind {
        "si" => Ok(PartsKind::StronglyIrreducible),
        "irr" => Ok(PartsKind::Irreducible),
        "any" => Ok(PartsKind::Any),
        other => Err(PyValueError::new_err(format!("unknown kind {other:?}; use si/irr/any"))),
    }
}

/// A finite abelian group in invariant-factor form.
#[pyclass(frozen)]
struct AbelianGroup {
    inner: FiniteAbelianGroup,
}

#[pymethods]
impl AbelianGroup {
    /// Accepts any list of cyclic orders; normalizes to invariant factors.
    #[new]
    fn new(factors: Vec<u64>) -> PyResult<AbelianGroup> {
        let g = FiniteAbelianGroup::new(&factors, &limits()).map_err(err)?;
        Ok(AbelianGroup { inner: g })
    }

    /// Parse a spec string such as "4x9".
    #[staticmethod]
    fn from_spec(spec: &str) -> PyResult<AbelianGroup> {
        let g = FiniteAbelianGroup::parse_spec(spec, &limits()).map_err(err)?;
        Ok(AbelianGroup { inner: g })
    }

    fn order(&self) -> u64 {
        self.inner.order()
    }

    fn invariant_factors(&self) -> Vec<u64> {
        self.inner.invariant_factors().to_vec()
    }

    fn is_cyclic(&self) -> bool {
        self.inner.is_cyclic()
    }

    fn exponent(&self) -> u64 {
        self.inner.exponent()
    }

    fn p_component(&self, p: u64) -> AbelianGroup {
        AbelianGroup { inner: self.inner.p_component(p) }
    }

    fn spec_string(&self) -> String {
        self.inner.spec_string()
    }

    /// All subgroups as dicts {"label", "order", "generators"}.
    fn subgroups(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let subs = abelian::enumerate_subgroups(&self.inner, &limits()).map_err(err)?;
        let listed: Vec<serde_json::Value> = subs
            .iter()
            .map(|s| json!({ "label": s.label(), "order": s.order(), "generators": s.generators() }))
            .collect();
        Ok(json_to_py(py, &json!(listed))?.unbind())
    }

    /// The subgroup lattice; labels carry canonical generator strings.
    fn subgroup_lattice(&self) -> PyResult<Lattice> {
        let sl = abelian::subgroup_lattice(&self.inner, &limits()).map_err(err)?;
        Ok(Lattice { inner: sl.lattice })
    }

    /// Strongly hollow subgroups, classified through the dual subgroup
    /// lattice and cross-checked against the arithmetic characterization.
    fn strongly_hollow(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let report = abelian::strongly_hollow_subgroups(&self.inner, &limits()).map_err(err)?;
        let listed: Vec<serde_json::Value> = report
            .lattice_route
            .iter()
            .map(|&i| {
                let s = &report.subgroups[i];
                json!({ "label": s.label(), "order": s.order() })
            })
            .collect();
        let payload = json!({ "strongly_hollow": listed, "routes_agree": report.agree });
        Ok(json_to_py(py, &payload)?.unbind())
    }

    /// Subgroups that are hollow as groups (cyclic p-groups).
    fn hollow(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let report = abelian::hollow_subgroups(&self.inner, &limits()).map_err(err)?;
        let listed: Vec<serde_json::Value> = report
            .hollow
            .iter()
            .map(|&i| {
                let s = &report.subgroups[i];
                json!({ "label": s.label(), "order": s.order() })
            })
            .collect();
        let payload = json!({ "hollow": listed, "routes_agree": report.agree });
        Ok(json_to_py(py, &payload)?.unbind())
    }

    /// |Hom(self, other)|.
    fn hom_count(&self, other: &AbelianGroup) -> PyResult<u128> {
        abelian::hom_count(&self.inner, &other.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("AbelianGroup({})", self.inner.spec_string())
    }
}

/// Galois laws and the strong-irreducibility correspondence for the ideal
/// lattices of Z/nZ and its localization at p.
#[pyfunction]
fn localization_correspondence(py: Python<'_>, n: u64, p: u64) -> PyResult<Py<PyAny>> {
    let model = transfer::localization_model(n, p, &limits()).map_err(err)?;
    let laws = transfer::verify_galois_laws(&model);
    let report = transfer::localization_correspondence(&model);
    let payload = json!({
        "n": n,
        "p": p,
        "galois_laws": laws,
        "correspondence": report,
    });
    Ok(json_to_py(py, &payload)?.unbind())
}

/// Seeded randomized transfer battery; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (seed=0, count=100))]
fn transfer_battery(py: Python<'_>, seed: u64, count: usize) -> PyResult<Py<PyAny>> {
    report_to_py(py, &transfer::transfer_battery(seed, count, &limits()))
}

#[pymodule]
fn finlat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Lattice>()?;
    m.add_class::<AbelianGroup>()?;
    m.add_function(wrap_pyfunction!(localization_correspondence, m)?)?;
    m.add_function(wrap_pyfunction!(transfer_battery, m)?)?;
    Ok(())
}
