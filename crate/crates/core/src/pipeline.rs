use crate::aut::{compute_automorphisms, orbits_on_elements, AutGroup};
use crate::error::{Error, Result};
use crate::group::{validate_simple, ElemId, GroupTable, Simplicity};
use crate::orbit::OrbitPartition;
use crate::pairs::{classify_pairs, gk_spread_check, PairClassification, SpreadCertificate};
use crate::search::SearchContext;

/// Everything downstream stages need about one group, computed once.
pub struct Analysis {
    pub group: GroupTable,
    pub aut: AutGroup,
    pub elem_orbits: OrbitPartition,
    pub pairs: PairClassification,
    /// The element with no generating mate, on failure.
    pub spread: std::result::Result<SpreadCertificate, ElemId>,
    pub search: SearchContext,
}

impl Analysis {
    pub fn new(group: GroupTable) -> Result<Self> {
        require_simple(&group)?;
        let aut = compute_automorphisms(&group)?;
        let pairs = classify_pairs(&group, &aut)?;
        Self::from_parts(group, aut, pairs)
    }

    pub fn from_parts(group: GroupTable, aut: AutGroup, pairs: PairClassification) -> Result<Self> {
        let elem_orbits = orbits_on_elements(&group, &aut);
        let spread = gk_spread_check(&pairs);
        let search = SearchContext::new(&group, &elem_orbits, &pairs)?;
        Ok(Analysis {
            group,
            aut,
            elem_orbits,
            pairs,
            spread,
            search,
        })
    }

    /// The spread certificate, or an alarm naming the element without a mate.
    pub fn spread_certificate(&self) -> Result<&SpreadCertificate> {
        self.spread
            .as_ref()
            .map_err(|a| Error::Inconsistency(format!("element {a} has no generating mate")))
    }
}

pub fn require_simple(group: &GroupTable) -> Result<()> {
    match validate_simple(group) {
        Simplicity::Simple => Ok(()),
        Simplicity::Abelian => Err(Error::NotSimple("abelian".into())),
        Simplicity::NotSimple {
            element,
            closure_order,
        } => Err(Error::NotSimple(format!(
            "normal closure of element {element} = {} has order {closure_order} < {}",
            group.element(element),
            group.order()
        ))),
    }
}

/// Runs `f` on a dedicated pool of `workers` threads. Results never depend on
/// the worker count.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
    {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Every report of the full pipeline, keyed by file name, for one group.
/// `maxlen` of `None` uses the size-scaled default.
pub fn full_reports(
    spec: &crate::spec::GroupSpec,
    order_cap: usize,
    maxlen: Option<usize>,
) -> Result<std::collections::BTreeMap<String, Vec<u8>>> {
    use crate::report::*;
    use crate::search::{census, default_maxlen, distribution, CensusOptions};

    let group = crate::group::build_group(spec, order_cap)?;
    let simplicity = validate_simple(&group);
    let mut files = std::collections::BTreeMap::new();
    files.insert(
        "group.json".to_string(),
        to_json_bytes(&group_summary(&group, &simplicity))?,
    );
    files.insert("group.bin".to_string(), crate::cache::encode_group(&group));
    let an = Analysis::new(group)?;
    files.insert("aut.json".to_string(), to_json_bytes(&aut_report(&an))?);
    files.insert(
        "aut.bin".to_string(),
        crate::cache::encode_aut(&an.group, &an.aut),
    );
    files.insert("pairs.json".to_string(), to_json_bytes(&pairs_report(&an))?);
    files.insert(
        "pairs.bin".to_string(),
        crate::cache::encode_pairs(&an.pairs),
    );
    files.insert(
        "spread.json".to_string(),
        to_json_bytes(&spread_report(&an))?,
    );

    let spread = an.spread_certificate()?;
    let certs = crate::realize::admissible_sets(&an.elem_orbits)?
        .iter()
        .map(|set| {
            crate::realize::certify_image(&an.aut, &an.elem_orbits, &an.pairs, spread, set)
                .map(|c| CertificateJson::from(&c))
        })
        .collect::<Result<Vec<_>>>()?;
    files.insert("certificates.json".to_string(), to_json_bytes(&certs)?);

    let maxlen = maxlen.unwrap_or_else(|| default_maxlen(&an.search));
    let c = census(
        &an.group,
        &an.aut,
        &an.search,
        &CensusOptions {
            maxlen,
            ..Default::default()
        },
    )?;
    files.insert(
        "census.json".to_string(),
        to_json_bytes(&census_entries(&an, &c))?,
    );
    files.insert(
        "census_meta.json".to_string(),
        to_json_bytes(&census_meta(&an, &c))?,
    );

    let comm = crate::word::Word::commutator();
    let d = distribution(&an.group, &an.search, &comm)?;
    files.insert(
        format!("dist_{comm}.csv"),
        distribution_csv(&an.elem_orbits, &d).into_bytes(),
    );
    Ok(files)
}
