//! Generating pairs of `G × G`, their Aut-orbits, the orbit-count identity
//! `r · |Aut(G)| = ℓ`, and spread witnesses.
//!
//! Pairs are indexed as `a·|G| + b`.

use rayon::prelude::*;
use serde::Serialize;

use crate::aut::{orbits_on_all_pairs, AutGroup};
use crate::error::{Error, Result};
use crate::group::{ElemId, GroupTable, IDENTITY};
use crate::orbit::OrbitPartition;

pub fn pair_index(n: usize, a: ElemId, b: ElemId) -> u32 {
    a * n as u32 + b
}

pub fn pair_of(n: usize, index: u32) -> (ElemId, ElemId) {
    (index / n as u32, index % n as u32)
}

/// True iff `a` and `b` generate `g`.
pub fn is_generating(g: &GroupTable, a: ElemId, b: ElemId) -> bool {
    let n = g.order();
    g.subgroup_size(&[a, b], n) == n
}

#[derive(Clone, Debug)]
pub struct PairClassification {
    order: usize,
    is_gen: Vec<bool>,
    generating: Vec<u32>,
    pair_orbits: OrbitPartition,
    orbit_generating: Vec<bool>,
    gen_orbits: Vec<u32>,
    // transport[k]: automorphism carrying the orbit rep to generating[k]
    transport: Vec<u32>,
}

impl PairClassification {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn total(&self) -> usize {
        self.order * self.order
    }

    /// Number of generating pairs, ℓ.
    pub fn ell(&self) -> usize {
        self.generating.len()
    }

    /// Number of Aut-orbits on generating pairs, counted directly.
    pub fn r(&self) -> usize {
        self.gen_orbits.len()
    }

    /// Sorted indices of the generating pairs.
    pub fn generating(&self) -> &[u32] {
        &self.generating
    }

    pub fn generating_pairs(&self) -> Vec<(ElemId, ElemId)> {
        self.generating
            .iter()
            .map(|&i| pair_of(self.order, i))
            .collect()
    }

    pub fn nongenerating(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.total() as u32).filter(|&i| !self.is_gen[i as usize])
    }

    pub fn is_generating_index(&self, index: u32) -> bool {
        self.is_gen[index as usize]
    }

    /// Generation flag of every pair, by index.
    pub fn flags(&self) -> &[bool] {
        &self.is_gen
    }

    pub fn is_generating_pair(&self, a: ElemId, b: ElemId) -> bool {
        self.is_gen[pair_index(self.order, a, b) as usize]
    }

    /// Orbits of Aut(G) on all of `G × G`.
    pub fn pair_orbits(&self) -> &OrbitPartition {
        &self.pair_orbits
    }

    pub fn orbit_is_generating(&self, orbit: u32) -> bool {
        self.orbit_generating[orbit as usize]
    }

    /// Pair-orbit ids of the generating orbits.
    pub fn gen_orbits(&self) -> &[u32] {
        &self.gen_orbits
    }

    pub fn gen_orbit_reps(&self) -> impl Iterator<Item = u32> + '_ {
        self.gen_orbits
            .iter()
            .map(|&o| self.pair_orbits.reps[o as usize])
    }

    /// Position of a generating pair in `generating()`.
    pub fn position(&self, index: u32) -> Option<usize> {
        self.generating.binary_search(&index).ok()
    }

    /// The automorphism carrying the orbit representative of generating pair
    /// `generating()[k]` onto it. Unique when the action is free.
    pub fn transport(&self, k: usize) -> usize {
        self.transport[k] as usize
    }
}

/// Classifies one representative per Aut-orbit of `G × G` and spreads the
/// verdict over its orbit.
pub fn classify_pairs(g: &GroupTable, aut: &AutGroup) -> Result<PairClassification> {
    let n = g.order();
    let pair_orbits = orbits_on_all_pairs(g, aut);
    let orbit_generating: Vec<bool> = pair_orbits
        .reps
        .par_iter()
        .map(|&rep| {
            let (a, b) = pair_of(n, rep);
            is_generating(g, a, b)
        })
        .collect();
    assemble(g, aut, pair_orbits, orbit_generating)
}

/// Rebuilds a classification from per-pair generation flags, e.g. loaded
/// from a cache. The flags must be constant on Aut-orbits.
pub fn classification_from_flags(
    g: &GroupTable,
    aut: &AutGroup,
    flags: &[bool],
) -> Result<PairClassification> {
    let n = g.order();
    if flags.len() != n * n {
        return Err(Error::InvalidInput(
            "generation flags have the wrong length".into(),
        ));
    }
    let pair_orbits = orbits_on_all_pairs(g, aut);
    let orbit_generating: Vec<bool> = pair_orbits
        .reps
        .iter()
        .map(|&r| flags[r as usize])
        .collect();
    if flags
        .iter()
        .zip(&pair_orbits.orbit_id)
        .any(|(&f, &o)| f != orbit_generating[o as usize])
    {
        return Err(Error::Inconsistency(
            "generation flags are not constant on pair orbits".into(),
        ));
    }
    assemble(g, aut, pair_orbits, orbit_generating)
}

fn assemble(
    g: &GroupTable,
    aut: &AutGroup,
    pair_orbits: OrbitPartition,
    orbit_generating: Vec<bool>,
) -> Result<PairClassification> {
    let n = g.order();
    let is_gen: Vec<bool> = pair_orbits
        .orbit_id
        .iter()
        .map(|&o| orbit_generating[o as usize])
        .collect();
    let generating: Vec<u32> = (0..(n * n) as u32)
        .filter(|&i| is_gen[i as usize])
        .collect();
    let gen_orbits: Vec<u32> = (0..pair_orbits.len() as u32)
        .filter(|&o| orbit_generating[o as usize])
        .collect();

    let mut transport = vec![u32::MAX; generating.len()];
    for &o in &gen_orbits {
        let (a, b) = pair_of(n, pair_orbits.reps[o as usize]);
        for (i, alpha) in aut.autos().iter().enumerate() {
            let j = pair_index(n, alpha.apply(a), alpha.apply(b));
            let k = generating.binary_search(&j).map_err(|_| {
                Error::Inconsistency("generating orbit leaves the generating set".into())
            })?;
            if transport[k] == u32::MAX {
                transport[k] = i as u32;
            }
        }
    }
    if transport.contains(&u32::MAX) {
        return Err(Error::Inconsistency(
            "generating pair not reached from its orbit rep".into(),
        ));
    }

    Ok(PairClassification {
        order: n,
        is_gen,
        generating,
        pair_orbits,
        orbit_generating,
        gen_orbits,
        transport,
    })
}

/// Direct closure test on every pair. Test oracle for `classify_pairs`.
pub fn classify_pairs_naive(g: &GroupTable) -> Vec<bool> {
    let n = g.order();
    (0..(n * n) as u32)
        .into_par_iter()
        .map(|i| {
            let (a, b) = pair_of(n, i);
            is_generating(g, a, b)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HallVerdict {
    pub ell: usize,
    pub aut_order: usize,
    /// Orbit count on generating pairs, counted directly.
    pub r: usize,
    pub divisible: bool,
    pub consistent: bool,
}

/// Checks `ℓ ≡ 0 (mod |Aut|)` and `ℓ / |Aut| = r`.
pub fn hall_rank(pc: &PairClassification, aut: &AutGroup) -> HallVerdict {
    let ell = pc.ell();
    let aut_order = aut.order();
    let divisible = ell.is_multiple_of(aut_order);
    HallVerdict {
        ell,
        aut_order,
        r: pc.r(),
        divisible,
        consistent: divisible && ell / aut_order == pc.r(),
    }
}

/// For each non-identity `a`, the least `b` with `⟨a, b⟩ = G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadCertificate {
    witness: Vec<ElemId>,
}

impl SpreadCertificate {
    pub fn witness(&self, a: ElemId) -> Option<ElemId> {
        (a != IDENTITY).then(|| self.witness[a as usize])
    }

    /// `(a, b)` for every non-identity `a`, by `a`.
    pub fn pairs(&self) -> impl Iterator<Item = (ElemId, ElemId)> + '_ {
        self.witness
            .iter()
            .enumerate()
            .skip(1)
            .map(|(a, &b)| (a as ElemId, b))
    }
}

/// Finds a generating mate for every non-identity element, or returns the
/// first element that has none.
pub fn gk_spread_check(pc: &PairClassification) -> std::result::Result<SpreadCertificate, ElemId> {
    let n = pc.order();
    let mut witness = vec![IDENTITY; n];
    for a in 1..n as ElemId {
        match (0..n as ElemId).find(|&b| pc.is_generating_pair(a, b)) {
            Some(b) => witness[a as usize] = b,
            None => return Err(a),
        }
    }
    Ok(SpreadCertificate { witness })
}
