//! Machine-readable reports. Every writer here produces the same bytes for
//! the same inputs: fields are emitted in declaration order and all lists are
//! sorted.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{ElemId, GroupTable, Simplicity, IDENTITY};
use crate::orbit::OrbitPartition;
use crate::pairs::hall_rank;
use crate::pipeline::Analysis;
use crate::realize::{certify_image, CandidateSet, ImageCertificate, Verdict};
use crate::search::{Census, ImageRecord, OrbitMask, WordDistribution};
use crate::word::Word;

/// Pretty JSON with a trailing newline.
pub fn to_json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(value)?;
    out.push(b'\n');
    Ok(out)
}

/// Labels for element orbits: `e` for the identity, otherwise
/// `o<order>x<size>`, with `_1`, `_2`, … appended when two orbits would
/// share a label.
pub fn orbit_labels(g: &GroupTable, orbits: &OrbitPartition) -> Vec<String> {
    let base: Vec<String> = (0..orbits.len())
        .map(|o| {
            let rep = orbits.reps[o];
            if rep == IDENTITY {
                "e".to_string()
            } else {
                format!("o{}x{}", g.element_order(rep), orbits.sizes[o])
            }
        })
        .collect();
    let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
    for b in &base {
        *seen.entry(b).or_default() += 1;
    }
    let mut next: BTreeMap<&str, usize> = BTreeMap::new();
    base.iter()
        .map(|b| {
            if seen[b.as_str()] > 1 {
                let k = next.entry(b).or_default();
                *k += 1;
                format!("{b}_{k}")
            } else {
                b.clone()
            }
        })
        .collect()
}

/// Parses a comma-separated union of orbit labels; `all` names `G`.
pub fn parse_named_set(
    g: &GroupTable,
    orbits: &OrbitPartition,
    text: &str,
) -> Result<CandidateSet> {
    let labels = orbit_labels(g, orbits);
    let mut chosen = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if part == "all" {
            chosen.extend(0..orbits.len() as u32);
            continue;
        }
        match labels.iter().position(|l| l == part) {
            Some(o) => chosen.push(o as u32),
            None => {
                return Err(Error::InvalidInput(format!(
                    "unknown orbit label {part:?}; known labels: {}",
                    labels.join(", ")
                )))
            }
        }
    }
    Ok(CandidateSet::from_orbits(orbits, chosen))
}

/// Parses a comma-separated list of element ids.
pub fn parse_id_set(g: &GroupTable, text: &str) -> Result<CandidateSet> {
    let ids = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<ElemId>()
                .map_err(|_| Error::InvalidInput(format!("bad element id {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    CandidateSet::new(g, ids)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderCount {
    pub order: u32,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub name: String,
    pub order: usize,
    pub degree: usize,
    pub simple: bool,
    pub order_histogram: Vec<OrderCount>,
}

pub fn group_summary(g: &GroupTable, simplicity: &Simplicity) -> GroupSummary {
    let mut hist: BTreeMap<u32, usize> = BTreeMap::new();
    for e in 0..g.order() as ElemId {
        *hist.entry(g.element_order(e)).or_default() += 1;
    }
    GroupSummary {
        name: g.name().to_string(),
        order: g.order(),
        degree: g.degree(),
        simple: simplicity.is_simple(),
        order_histogram: hist
            .into_iter()
            .map(|(order, count)| OrderCount { order, count })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementOrbit {
    pub size: u32,
    pub rep: ElemId,
    pub rep_order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutReport {
    pub aut_order: usize,
    pub inner_order: usize,
    pub element_orbits: Vec<ElementOrbit>,
}

pub fn aut_report(an: &Analysis) -> AutReport {
    let g = &an.group;
    let inner = (0..g.order() as ElemId)
        .filter(|&h| an.aut.inner_index(g, h).is_some())
        .count();
    AutReport {
        aut_order: an.aut.order(),
        inner_order: inner,
        element_orbits: an
            .elem_orbits
            .reps
            .iter()
            .zip(&an.elem_orbits.sizes)
            .map(|(&rep, &size)| ElementOrbit {
                size,
                rep,
                rep_order: g.element_order(rep),
            })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairsReport {
    pub order: usize,
    pub aut_order: usize,
    pub ell: usize,
    pub r: usize,
    pub hall_consistent: bool,
    pub spread_total: bool,
}

pub fn pairs_report(an: &Analysis) -> PairsReport {
    let hall = hall_rank(&an.pairs, &an.aut);
    PairsReport {
        order: an.group.order(),
        aut_order: an.aut.order(),
        ell: hall.ell,
        r: hall.r,
        hall_consistent: hall.consistent,
        spread_total: an.spread.is_ok(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPair {
    pub a: ElemId,
    pub b: ElemId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpreadReport {
    pub total: bool,
    /// Element without a generating mate, when `total` is false.
    pub missing: Option<ElemId>,
    pub witnesses: Vec<WitnessPair>,
}

pub fn spread_report(an: &Analysis) -> SpreadReport {
    match &an.spread {
        Ok(cert) => SpreadReport {
            total: true,
            missing: None,
            witnesses: cert.pairs().map(|(a, b)| WitnessPair { a, b }).collect(),
        },
        Err(a) => SpreadReport {
            total: false,
            missing: Some(*a),
            witnesses: Vec::new(),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub set: Vec<ElemId>,
    pub verdict: Verdict,
    pub failed: Option<String>,
    pub witnesses: Vec<WitnessPair>,
    pub eprime_ok: bool,
}

impl From<&ImageCertificate> for CertificateJson {
    fn from(c: &ImageCertificate) -> Self {
        CertificateJson {
            set: c.set.members().to_vec(),
            verdict: c.verdict,
            failed: c.failed.as_ref().map(|f| f.label().to_string()),
            witnesses: c
                .witnesses
                .iter()
                .map(|&(a, b)| WitnessPair { a, b })
                .collect(),
            eprime_ok: c.eprime_ok,
        }
    }
}

/// Recomputes a certificate from scratch and lists every disagreement with
/// the stored one. An empty list means the certificate re-validates.
pub fn verify_certificate(an: &Analysis, stored: &CertificateJson) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let set = CandidateSet::new(&an.group, stored.set.clone())?;
    if set.members() != stored.set.as_slice() {
        problems.push("set is not sorted and duplicate-free".to_string());
    }
    for w in &stored.witnesses {
        if !set.contains(w.a) {
            problems.push(format!("witness element {} is not in the set", w.a));
        }
        if !crate::pairs::is_generating(&an.group, w.a, w.b) {
            problems.push(format!("witness ({}, {}) does not generate", w.a, w.b));
        }
    }
    let fresh = certify_image(
        &an.aut,
        &an.elem_orbits,
        &an.pairs,
        an.spread_certificate()?,
        &set,
    )?;
    let fresh = CertificateJson::from(&fresh);
    if fresh.verdict != stored.verdict {
        problems.push(format!(
            "verdict {:?} recomputes as {:?}",
            stored.verdict, fresh.verdict
        ));
    }
    if fresh.failed != stored.failed {
        problems.push(format!(
            "failed condition {:?} recomputes as {:?}",
            stored.failed, fresh.failed
        ));
    }
    if fresh.eprime_ok != stored.eprime_ok {
        problems.push("equivariance result differs".to_string());
    }
    if fresh.verdict == Verdict::Realizable {
        // every orbit of A′ needs a witness
        let mut need: Vec<u32> = set
            .nonidentity()
            .map(|x| an.elem_orbits.orbit_of(x))
            .collect();
        need.sort_unstable();
        need.dedup();
        let mut have: Vec<u32> = stored
            .witnesses
            .iter()
            .map(|w| an.elem_orbits.orbit_of(w.a))
            .collect();
        have.sort_unstable();
        have.dedup();
        if need != have {
            problems.push("witnesses do not cover every orbit of the set".to_string());
        }
    }
    Ok(problems)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub orbit_signature: Vec<String>,
    pub size: u64,
    pub min_word: String,
    pub min_length: usize,
    pub words_found: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenerationProbeJson {
    pub word: String,
    pub violating_pairs: u64,
    pub exact_words: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniformProbeJson {
    pub word: String,
    pub max_deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusMeta {
    pub group: String,
    pub maxlen: usize,
    pub complete: bool,
    pub next_task: Option<usize>,
    pub tasks_total: usize,
    pub classes_searched: u64,
    pub images_found: usize,
    pub admissible_sets: Option<usize>,
    pub all_images_admissible: bool,
    pub generation_probe: Option<GenerationProbeJson>,
    pub uniform_probe: Option<UniformProbeJson>,
    pub note: String,
}

fn signature_labels(labels: &[String], mask: OrbitMask) -> Vec<String> {
    (0..labels.len())
        .filter(|&o| mask >> o & 1 == 1)
        .map(|o| labels[o].clone())
        .collect()
}

pub fn census_entries(an: &Analysis, census: &Census) -> Vec<CensusEntry> {
    let labels = orbit_labels(&an.group, &an.elem_orbits);
    census
        .records
        .values()
        .map(|r| CensusEntry {
            orbit_signature: signature_labels(&labels, r.signature),
            size: r.size,
            min_word: r.min_word.to_string(),
            min_length: r.min_length(),
            words_found: r.words_found,
        })
        .collect()
}

pub fn census_meta(an: &Analysis, census: &Census) -> CensusMeta {
    let k = an.elem_orbits.len() - 1;
    CensusMeta {
        group: an.group.name().to_string(),
        maxlen: census.maxlen,
        complete: census.is_complete(),
        next_task: census.next_task,
        tasks_total: census.tasks_total,
        classes_searched: census.classes_searched,
        images_found: census.records.len(),
        admissible_sets: (k < 64).then(|| 1usize << k),
        all_images_admissible: census.records.keys().all(|&m| m & 1 == 1),
        generation_probe: census
            .generation_probe
            .as_ref()
            .map(|p| GenerationProbeJson {
                word: p.word.to_string(),
                violating_pairs: p.violations,
                exact_words: p.exact,
            }),
        uniform_probe: census.uniform_probe.as_ref().map(|p| UniformProbeJson {
            word: p.word.to_string(),
            max_deviation: p.deviation,
        }),
        note: "min_length values are minima over the searched lengths only".to_string(),
    }
}

/// Reads census records back, e.g. to resume a partial run.
pub fn census_from_entries(
    an: &Analysis,
    entries: &[CensusEntry],
) -> Result<BTreeMap<OrbitMask, ImageRecord>> {
    let labels = orbit_labels(&an.group, &an.elem_orbits);
    let mut out = BTreeMap::new();
    for e in entries {
        let mut mask: OrbitMask = 0;
        for l in &e.orbit_signature {
            let o = labels.iter().position(|x| x == l).ok_or_else(|| {
                Error::InvalidInput(format!("unknown orbit label {l:?} in census"))
            })?;
            mask |= 1 << o;
        }
        let min_word: Word = e.min_word.parse()?;
        out.insert(
            mask,
            ImageRecord {
                signature: mask,
                size: an.search.mask_size(mask),
                min_word,
                words_found: e.words_found,
            },
        );
    }
    Ok(out)
}

/// `element_id,orbit_id,count` rows with a header.
pub fn distribution_csv(orbits: &OrbitPartition, d: &WordDistribution) -> String {
    let mut out = String::from("element_id,orbit_id,count\n");
    for (e, &c) in d.counts.iter().enumerate() {
        out.push_str(&format!("{e},{},{c}\n", orbits.orbit_of(e as u32)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;
    use crate::spec::{GroupSpec, DEFAULT_ORDER_CAP};

    fn a5() -> Analysis {
        Analysis::new(build_group(&GroupSpec::alternating(5), DEFAULT_ORDER_CAP).unwrap()).unwrap()
    }

    #[test]
    fn labels_and_named_sets() {
        let an = a5();
        let labels = orbit_labels(&an.group, &an.elem_orbits);
        let mut sorted = labels.clone();
        sorted.sort();
        assert_eq!(sorted, vec!["e", "o2x15", "o3x20", "o5x24"]);
        let set = parse_named_set(&an.group, &an.elem_orbits, "e, o3x20").unwrap();
        assert_eq!(set.len(), 21);
        assert_eq!(
            parse_named_set(&an.group, &an.elem_orbits, "all")
                .unwrap()
                .len(),
            60
        );
        assert!(parse_named_set(&an.group, &an.elem_orbits, "3cycles").is_err());
    }

    #[test]
    fn duplicate_labels_get_suffixes() {
        // PSL(2,11) has two Aut-orbits of elements of order 5, each of size 132.
        let an =
            Analysis::new(build_group(&GroupSpec::psl2(11), DEFAULT_ORDER_CAP).unwrap()).unwrap();
        let labels = orbit_labels(&an.group, &an.elem_orbits);
        assert!(labels.iter().any(|l| l == "o5x132_1"));
        assert!(labels.iter().any(|l| l == "o5x132_2"));
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), labels.len());
    }

    #[test]
    fn pairs_report_for_a5() {
        let r = pairs_report(&a5());
        assert_eq!((r.order, r.aut_order, r.ell, r.r), (60, 120, 2280, 19));
        assert!(r.hall_consistent && r.spread_total);
        let text = String::from_utf8(to_json_bytes(&r).unwrap()).unwrap();
        assert!(text.contains("\"ell\": 2280"));
    }

    #[test]
    fn certificates_round_trip_through_verify() {
        let an = a5();
        let set = parse_named_set(&an.group, &an.elem_orbits, "e,o2x15").unwrap();
        let cert = certify_image(
            &an.aut,
            &an.elem_orbits,
            &an.pairs,
            an.spread_certificate().unwrap(),
            &set,
        )
        .unwrap();
        let mut json = CertificateJson::from(&cert);
        assert!(verify_certificate(&an, &json).unwrap().is_empty());
        json.verdict = Verdict::Rejected;
        assert!(!verify_certificate(&an, &json).unwrap().is_empty());
    }

    #[test]
    fn csv_has_header_and_all_rows() {
        let an = a5();
        let d = crate::search::distribution(&an.group, &an.search, &"x".parse().unwrap()).unwrap();
        let csv = distribution_csv(&an.elem_orbits, &d);
        assert_eq!(csv.lines().count(), 61);
        assert!(csv.starts_with("element_id,orbit_id,count\n0,0,60\n"));
    }
}
