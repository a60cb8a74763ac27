//! Python bindings: a `Group` class wrapping the full analysis of one group,
//! plus a few word helpers.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use ::wordmap::realize::Verdict;
use ::wordmap::report::{orbit_labels, parse_id_set, parse_named_set, CertificateJson};
use ::wordmap::search::{
    census, default_maxlen, distribution, distribution_naive, image_of, image_of_naive,
};
use ::wordmap::{
    build_group, certify_image, hall_rank, Analysis, CensusOptions, Error, GroupSpec, Word,
    DEFAULT_ORDER_CAP,
};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Inconsistency(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse_word(text: &str) -> PyResult<Word> {
    text.parse().map_err(py_err)
}

/// A finite simple group with its automorphism group and pair classification.
#[pyclass(frozen, module = "wordmap")]
pub struct Group {
    an: Analysis,
    labels: Vec<String>,
}

impl Group {
    fn from_spec(spec: &GroupSpec, order_cap: usize) -> PyResult<Self> {
        let g = build_group(spec, order_cap).map_err(py_err)?;
        let an = Analysis::new(g).map_err(py_err)?;
        let labels = orbit_labels(&an.group, &an.elem_orbits);
        Ok(Group { an, labels })
    }
}

/// Outcome of certifying a candidate image set.
#[pyclass(frozen, get_all, module = "wordmap")]
pub struct Certificate {
    pub set: Vec<u32>,
    pub realizable: bool,
    pub failed: Option<String>,
    pub witnesses: Vec<(u32, u32)>,
    pub eprime_ok: bool,
}

#[pymethods]
impl Certificate {
    fn __repr__(&self) -> String {
        match &self.failed {
            None => format!("Certificate(realizable, |A|={})", self.set.len()),
            Some(f) => format!("Certificate(rejected: {f}, |A|={})", self.set.len()),
        }
    }
}

#[pymethods]
impl Group {
    /// A built-in group: "a5", "a6", "a7", "psl2_7" or "psl2_11".
    #[staticmethod]
    #[pyo3(signature = (name, order_cap = DEFAULT_ORDER_CAP))]
    fn catalog(name: &str, order_cap: usize) -> PyResult<Self> {
        let spec = ::wordmap::spec::catalog(name)
            .ok_or_else(|| PyValueError::new_err(format!("unknown catalog group {name:?}")))?;
        Self::from_spec(&spec, order_cap)
    }

    #[staticmethod]
    #[pyo3(signature = (n, order_cap = DEFAULT_ORDER_CAP))]
    fn alternating(n: usize, order_cap: usize) -> PyResult<Self> {
        Self::from_spec(&GroupSpec::alternating(n), order_cap)
    }

    #[staticmethod]
    #[pyo3(signature = (p, order_cap = DEFAULT_ORDER_CAP))]
    fn psl2(p: usize, order_cap: usize) -> PyResult<Self> {
        Self::from_spec(&GroupSpec::psl2(p), order_cap)
    }

    /// Builds a group from a JSON group spec.
    #[staticmethod]
    #[pyo3(signature = (text, order_cap = DEFAULT_ORDER_CAP))]
    fn from_json(text: &str, order_cap: usize) -> PyResult<Self> {
        Self::from_spec(&GroupSpec::from_json_str(text).map_err(py_err)?, order_cap)
    }

    #[getter]
    fn name(&self) -> String {
        self.an.group.name().to_string()
    }

    #[getter]
    fn order(&self) -> usize {
        self.an.group.order()
    }

    #[getter]
    fn aut_order(&self) -> usize {
        self.an.aut.order()
    }

    /// Number of ordered generating pairs.
    #[getter]
    fn ell(&self) -> usize {
        self.an.pairs.ell()
    }

    /// Number of Aut-orbits on generating pairs.
    #[getter]
    fn r(&self) -> usize {
        self.an.pairs.r()
    }

    #[getter]
    fn hall_consistent(&self) -> bool {
        hall_rank(&self.an.pairs, &self.an.aut).consistent
    }

    #[getter]
    fn spread_total(&self) -> bool {
        self.an.spread.is_ok()
    }

    /// Element `i` in cycle notation.
    fn element(&self, i: u32) -> PyResult<String> {
        if (i as usize) < self.an.group.order() {
            Ok(self.an.group.element(i).to_string())
        } else {
            Err(PyValueError::new_err(format!(
                "element id {i} out of range"
            )))
        }
    }

    fn mul(&self, a: u32, b: u32) -> PyResult<u32> {
        let n = self.an.group.order() as u32;
        if a >= n || b >= n {
            return Err(PyValueError::new_err("element id out of range"));
        }
        Ok(self.an.group.mul(a, b))
    }

    /// Labels of the Aut-orbits on elements, such as "e" or "o3x20".
    fn orbit_labels(&self) -> Vec<String> {
        self.labels.clone()
    }

    /// Members of every Aut-orbit on elements, in label order.
    fn orbits(&self) -> Vec<Vec<u32>> {
        (0..self.an.elem_orbits.len() as u32)
            .map(|o| self.an.elem_orbits.members(o))
            .collect()
    }

    /// Sorted image of a word such as "xyXY".
    fn image(&self, word: &str) -> PyResult<Vec<u32>> {
        let w = parse_word(word)?;
        Ok(image_of(&self.an.group, &self.an.search, &w))
    }

    /// The same image, by evaluating on every pair.
    fn image_naive(&self, word: &str) -> PyResult<Vec<u32>> {
        let w = parse_word(word)?;
        Ok(image_of_naive(&self.an.group, &w))
    }

    /// Fibre sizes of a word, indexed by element id.
    #[pyo3(signature = (word, naive = false))]
    fn distribution(&self, word: &str, naive: bool) -> PyResult<Vec<u64>> {
        let w = parse_word(word)?;
        let d = if naive {
            distribution_naive(&self.an.group, &w)
        } else {
            distribution(&self.an.group, &self.an.search, &w).map_err(py_err)?
        };
        Ok(d.counts)
    }

    /// Certifies a set given by orbit labels ("e,o3x20") or element ids.
    #[pyo3(signature = (set = None, ids = None))]
    fn certify(&self, set: Option<&str>, ids: Option<Vec<u32>>) -> PyResult<Certificate> {
        let candidate = match (set, ids) {
            (Some(s), None) => parse_named_set(&self.an.group, &self.an.elem_orbits, s),
            (None, Some(ids)) => {
                let text = ids.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
                parse_id_set(&self.an.group, &text)
            }
            _ => return Err(PyValueError::new_err("give exactly one of set= or ids=")),
        }
        .map_err(py_err)?;
        let spread = self.an.spread_certificate().map_err(py_err)?;
        let cert = certify_image(
            &self.an.aut,
            &self.an.elem_orbits,
            &self.an.pairs,
            spread,
            &candidate,
        )
        .map_err(py_err)?;
        let json = CertificateJson::from(&cert);
        Ok(Certificate {
            set: json.set,
            realizable: json.verdict == Verdict::Realizable,
            failed: json.failed,
            witnesses: json.witnesses.iter().map(|w| (w.a, w.b)).collect(),
            eprime_ok: json.eprime_ok,
        })
    }

    /// Images of all canonical words up to `maxlen`, as
    /// `(orbit labels, size, shortest word)` tuples.
    #[pyo3(signature = (maxlen = None))]
    fn census(
        &self,
        py: Python<'_>,
        maxlen: Option<usize>,
    ) -> PyResult<Vec<(Vec<String>, u64, String)>> {
        let maxlen = maxlen.unwrap_or_else(|| default_maxlen(&self.an.search));
        let opts = CensusOptions {
            maxlen,
            ..Default::default()
        };
        let an = &self.an;
        let c = py
            .detach(|| census(&an.group, &an.aut, &an.search, &opts))
            .map_err(py_err)?;
        Ok(c.records
            .values()
            .map(|r| {
                let labels = (0..self.labels.len())
                    .filter(|&o| r.signature >> o & 1 == 1)
                    .map(|o| self.labels[o].clone())
                    .collect();
                (labels, r.size, r.min_word.to_string())
            })
            .collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "Group({:?}, order={})",
            self.an.group.name(),
            self.an.group.order()
        )
    }
}

/// Freely reduces a word.
#[pyfunction]
fn reduce(word: &str) -> PyResult<String> {
    Ok(parse_word(word)?.to_string())
}

/// Least representative of a word's class under rotation, inversion and
/// the signed swaps of the variables.
#[pyfunction]
fn canonical(word: &str) -> PyResult<String> {
    Ok(parse_word(word)?.canonical().to_string())
}

#[pymodule]
#[pyo3(name = "wordmap")]
fn wordmap_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Group>()?;
    m.add_class::<Certificate>()?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(canonical, m)?)?;
    Ok(())
}
