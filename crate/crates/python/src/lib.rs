//! Python module `sporadic`. Exact values cross the boundary as strings
//! (`"-1/2"`, `"1+2i"`), reports as JSON text.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use sporadic_core::algebras;
use sporadic_core::claims::{self, Context, RunOptions};
use sporadic_core::exact::{EisensteinRational, GaussianRational};
use sporadic_core::groups::{isomorphic, FiniteGroup, IsoOptions, Perm, Transitivity};
use sporadic_core::lattices::{identify_root_system, VectorFamily};
use sporadic_core::matgroups::{action_on_vectors, build_psu33, build_sl23};
use sporadic_core::sic::{self, SicSystem as CoreSic, TwinStatus};
use sporadic_core::Error;

fn err(e: Error) -> PyErr {
    match e {
        Error::InvalidInput(_) | Error::UnknownClaim(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

enum Carrier {
    Hesse(CoreSic<EisensteinRational>),
    Hoggar(CoreSic<GaussianRational>),
}

/// A SIC given by unnormalized exact vectors.
#[pyclass(module = "sporadic", frozen)]
struct SicSystem {
    inner: Carrier,
}

macro_rules! on_sic {
    ($self:expr, $s:ident => $body:expr) => {
        match &$self.inner {
            Carrier::Hesse($s) => $body,
            Carrier::Hoggar($s) => $body,
        }
    };
}

#[pymethods]
impl SicSystem {
    #[staticmethod]
    fn hesse() -> Self {
        Self {
            inner: Carrier::Hesse(sic::hesse_system()),
        }
    }

    #[staticmethod]
    fn hoggar() -> Self {
        Self {
            inner: Carrier::Hoggar(sic::hoggar_system()),
        }
    }

    #[getter]
    fn d(&self) -> usize {
        on_sic!(self, s => s.d)
    }

    #[getter]
    fn norm_sq(&self) -> String {
        on_sic!(self, s => s.norm_sq.to_string())
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        on_sic!(self, s => s.labels.iter().map(ToString::to_string).collect())
    }

    #[getter]
    fn vectors(&self) -> Vec<Vec<String>> {
        on_sic!(self, s => s
            .vectors
            .iter()
            .map(|v| v.iter().map(ToString::to_string).collect())
            .collect())
    }

    fn __len__(&self) -> usize {
        on_sic!(self, s => s.len())
    }

    /// Cleared-denominator SIC identity over all ordered pairs.
    fn verify(&self) -> bool {
        on_sic!(self, s => sic::verify_sic(s))
    }

    /// Distinct values of `|<j|k>|^2` for `j != k`.
    fn cross_overlaps(&self) -> Vec<String> {
        on_sic!(self, s => sic::check_sic(s).cross_overlaps.iter().map(ToString::to_string).collect())
    }

    fn triple_product(&self, p: usize, q: usize, r: usize) -> PyResult<String> {
        on_sic!(self, s => {
            if p.max(q).max(r) >= s.len() {
                return Err(PyValueError::new_err("label index out of range"));
            }
            Ok(sic::triple_products(s).triple(p, q, r).to_string())
        })
    }

    fn twin_check(&self) -> &'static str {
        match on_sic!(self, s => sic::twin_check(s)) {
            TwinStatus::SelfConjugate => "self_conjugate",
            TwinStatus::Twinned => "twinned",
        }
    }

    fn __repr__(&self) -> String {
        on_sic!(self, s => format!("SicSystem(d={}, vectors={}, norm_sq={})", s.d, s.len(), s.norm_sq))
    }
}

/// A permutation group; elements are image lists.
#[pyclass(module = "sporadic", frozen)]
struct Group {
    inner: FiniteGroup<Perm>,
}

fn wrap(inner: FiniteGroup<Perm>) -> Group {
    Group { inner }
}

#[pymethods]
impl Group {
    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn generators(&self) -> Vec<Vec<usize>> {
        self.inner
            .generator_elements()
            .iter()
            .map(|p| (0..p.degree()).map(|x| p.apply(x)).collect())
            .collect()
    }

    fn is_simple(&self) -> bool {
        self.inner.is_simple()
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    fn transitivity(&self) -> &'static str {
        match self.inner.transitivity() {
            Transitivity::Intransitive => "intransitive",
            Transitivity::Transitive => "transitive",
            Transitivity::DoublyTransitive => "doubly_transitive",
        }
    }

    fn pair_orbit_size(&self, a: usize, b: usize) -> PyResult<usize> {
        if a.max(b) >= self.inner.degree() {
            return Err(PyValueError::new_err("point out of range"));
        }
        Ok(self.inner.pair_orbit_size(a, b))
    }

    fn point_stabilizer(&self, point: usize) -> PyResult<Group> {
        if point >= self.inner.degree() {
            return Err(PyValueError::new_err("point out of range"));
        }
        Ok(wrap(self.inner.point_stabilizer(point)))
    }

    fn derived_subgroup(&self) -> Group {
        wrap(self.inner.derived_subgroup())
    }

    fn center(&self) -> Group {
        wrap(self.inner.center())
    }

    /// Order histogram, class sizes and abelianization order as JSON.
    fn fingerprint(&self) -> String {
        serde_json::to_string(&self.inner.fingerprint()).expect("serializable")
    }

    /// True only when a verified isomorphism witness is found.
    fn is_isomorphic(&self, other: &Group) -> bool {
        isomorphic(&self.inner, &other.inner, &IsoOptions::default()).is_isomorphic()
    }

    fn __repr__(&self) -> String {
        format!("Group(order={}, degree={})", self.inner.order(), self.inner.degree())
    }
}

#[pyfunction]
fn qubit_symmetries(allow_reflections: bool) -> Group {
    wrap(sic::qubit_symmetries(allow_reflections))
}

/// `(full_group, stabilizer0, antiunitary_count)`.
#[pyfunction]
fn hesse_symmetries(py: Python<'_>) -> PyResult<(Group, Group, usize)> {
    let s = py.detach(|| sic::hesse_symmetries(&sic::triple_products(&sic::hesse_system())));
    let s = s.map_err(err)?;
    Ok((wrap(s.full_group), wrap(s.stabilizer0), s.antiunitary.len()))
}

/// `(unitary_stabilizer, antiunitary_coset_size)` from the full Sp(6,2) scan.
#[pyfunction]
fn hoggar_stabilizer(py: Python<'_>) -> PyResult<(Group, usize)> {
    let s = py
        .detach(|| sic::hoggar_stabilizer(&sic::triple_products(&sic::hoggar_system())))
        .map_err(err)?;
    let anti = s.antiunitary_coset_size();
    Ok((wrap(s.unitary), anti))
}

#[pyfunction]
fn hoggar_full_symmetry(py: Python<'_>) -> PyResult<Group> {
    py.detach(|| {
        let s = sic::hoggar_stabilizer(&sic::triple_products(&sic::hoggar_system()))?;
        sic::hoggar_full_symmetry(&s)
    })
    .map(wrap)
    .map_err(err)
}

/// SL(2,3) acting on the 8 nonzero vectors of F₃².
#[pyfunction]
fn sl23() -> PyResult<Group> {
    action_on_vectors(&build_sl23()).map(wrap).map_err(err)
}

#[pyfunction]
fn psu33(py: Python<'_>) -> Group {
    wrap(py.detach(build_psu33))
}

#[pyfunction]
fn cayley_units() -> PyResult<Vec<Vec<String>>> {
    let ring = algebras::cayley_ring().map_err(err)?;
    let units = algebras::cayley_units(&ring).map_err(err)?;
    Ok(units
        .units
        .iter()
        .map(|o| o.c.iter().map(ToString::to_string).collect())
        .collect())
}

/// Automorphisms of the Cayley integers as permutations of the 240 units.
#[pyfunction]
fn cayley_automorphisms(py: Python<'_>) -> PyResult<Group> {
    py.detach(|| {
        let ring = algebras::cayley_ring()?;
        let units = algebras::cayley_units(&ring)?;
        algebras::cayley_automorphisms(&units)
    })
    .map(|a| wrap(a.group))
    .map_err(err)
}

/// Root-system identification of `"eisenstein"`, `"hurwitz"` or `"cayley"`
/// units, as JSON.
#[pyfunction]
fn identify_units(which: &str) -> PyResult<String> {
    let family = match which {
        "eisenstein" => VectorFamily::from_eisenstein(&algebras::eisenstein_unit_scan(1)),
        "hurwitz" => VectorFamily::from_quaternions(&algebras::hurwitz_unit_scan()),
        "cayley" => {
            let ring = algebras::cayley_ring().map_err(err)?;
            algebras::cayley_units(&ring).map_err(err)?.family()
        }
        other => return Err(PyValueError::new_err(format!("unknown unit set '{other}'"))),
    };
    Ok(serde_json::to_string(&identify_root_system(&family)).expect("serializable"))
}

/// Run claims (all when `ids` is empty) and return the JSON report.
#[pyfunction]
#[pyo3(signature = (ids = Vec::new()))]
fn verify_claims(py: Python<'_>, ids: Vec<String>) -> PyResult<String> {
    let selected = claims::select(&ids).map_err(err)?;
    let result = py.detach(|| claims::run(&selected, &Context::new(), RunOptions::default()));
    Ok(result.report.to_json())
}

#[pymodule]
fn sporadic(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", claims::ARTIFACT_VERSION)?;
    m.add_class::<SicSystem>()?;
    m.add_class::<Group>()?;
    m.add_function(wrap_pyfunction!(qubit_symmetries, m)?)?;
    m.add_function(wrap_pyfunction!(hesse_symmetries, m)?)?;
    m.add_function(wrap_pyfunction!(hoggar_stabilizer, m)?)?;
    m.add_function(wrap_pyfunction!(hoggar_full_symmetry, m)?)?;
    m.add_function(wrap_pyfunction!(sl23, m)?)?;
    m.add_function(wrap_pyfunction!(psu33, m)?)?;
    m.add_function(wrap_pyfunction!(cayley_units, m)?)?;
    m.add_function(wrap_pyfunction!(cayley_automorphisms, m)?)?;
    m.add_function(wrap_pyfunction!(identify_units, m)?)?;
    m.add_function(wrap_pyfunction!(verify_claims, m)?)?;
    Ok(())
}
