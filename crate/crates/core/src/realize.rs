//! Certificates that a candidate set is the image of some two-letter word.
//!
//! A set `A` qualifies when it contains the identity and is Aut-invariant.
//! The certificate then records the chain that makes the existence checkable
//! without producing the word: a generating mate for each orbit of
//! `A′ = A \ {e}`, and the assignment `z` on generating pairs (first
//! coordinate when it lies in `A′`, identity otherwise), which must be
//! Aut-equivariant and must take every value in `A′`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::aut::AutGroup;
use crate::error::{Error, Result};
use crate::group::{ElemId, GroupTable, IDENTITY};
use crate::orbit::OrbitPartition;
use crate::pairs::{pair_index, pair_of, PairClassification, SpreadCertificate};
use crate::word::Word;

/// Exhaustive enumeration of admissible sets refuses above this many
/// non-identity orbits.
pub const MAX_ENUMERATED_ORBITS: usize = 20;

/// A subset of `G`, kept sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CandidateSet {
    members: Vec<ElemId>,
}

impl CandidateSet {
    pub fn new(g: &GroupTable, mut ids: Vec<ElemId>) -> Result<Self> {
        if let Some(&bad) = ids.iter().find(|&&e| e as usize >= g.order()) {
            return Err(Error::InvalidInput(format!(
                "element id {bad} out of range for order {}",
                g.order()
            )));
        }
        ids.sort_unstable();
        ids.dedup();
        Ok(CandidateSet { members: ids })
    }

    /// Union of the given element orbits.
    pub fn from_orbits(orbits: &OrbitPartition, ids: impl IntoIterator<Item = u32>) -> Self {
        let mut chosen = vec![false; orbits.len()];
        for o in ids {
            chosen[o as usize] = true;
        }
        let members = (0..orbits.orbit_id.len() as u32)
            .filter(|&e| chosen[orbits.orbit_of(e) as usize])
            .collect();
        CandidateSet { members }
    }

    pub fn members(&self) -> &[ElemId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: ElemId) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    /// `A′ = A \ {e}`.
    pub fn nonidentity(&self) -> impl Iterator<Item = ElemId> + '_ {
        self.members.iter().copied().filter(|&g| g != IDENTITY)
    }
}

/// Every union of non-identity orbits with the identity adjoined, ordered by
/// the bitmask of included orbits: `{e}` first, `G` last.
pub fn admissible_sets(orbits: &OrbitPartition) -> Result<Vec<CandidateSet>> {
    let k = orbits.len() - 1;
    if k > MAX_ENUMERATED_ORBITS {
        return Err(Error::TooManyOrbits {
            count: k,
            limit: MAX_ENUMERATED_ORBITS,
        });
    }
    Ok((0u64..1 << k)
        .map(|mask| {
            let chosen = (0..k as u32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1);
            CandidateSet::from_orbits(orbits, std::iter::once(0).chain(chosen))
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailedCondition {
    MissingIdentity,
    /// `alpha` sends `element ∈ A` outside `A`.
    NotAutInvariant {
        alpha: usize,
        element: ElemId,
    },
}

impl FailedCondition {
    pub fn label(&self) -> &'static str {
        match self {
            FailedCondition::MissingIdentity => "missing-identity",
            FailedCondition::NotAutInvariant { .. } => "not-aut-invariant",
        }
    }
}

impl fmt::Display for FailedCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The two necessary conditions: `e ∈ A` and `α(A) = A` for every listed `α`.
pub fn check_conditions(
    aut: &AutGroup,
    a: &CandidateSet,
) -> std::result::Result<(), FailedCondition> {
    if !a.contains(IDENTITY) {
        return Err(FailedCondition::MissingIdentity);
    }
    for (i, alpha) in aut.autos().iter().enumerate() {
        // α is a bijection, so α(A) ⊆ A already gives equality.
        if let Some(&x) = a.members().iter().find(|&&x| !a.contains(alpha.apply(x))) {
            return Err(FailedCondition::NotAutInvariant {
                alpha: i,
                element: x,
            });
        }
    }
    Ok(())
}

/// A value for every generating pair, aligned with
/// [`PairClassification::generating`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantAssignment {
    values: Vec<ElemId>,
}

impl EquivariantAssignment {
    pub fn from_values(pc: &PairClassification, values: Vec<ElemId>) -> Result<Self> {
        if values.len() != pc.ell() {
            return Err(Error::InvalidInput(format!(
                "assignment has {} values for {} generating pairs",
                values.len(),
                pc.ell()
            )));
        }
        Ok(EquivariantAssignment { values })
    }

    /// Extends values given on the generating-orbit representatives (in the
    /// order of [`PairClassification::gen_orbits`]) by equivariance.
    pub fn from_representatives(
        aut: &AutGroup,
        pc: &PairClassification,
        rep_values: &[ElemId],
    ) -> Result<Self> {
        if rep_values.len() != pc.r() {
            return Err(Error::InvalidInput(format!(
                "{} representative values for {} orbits",
                rep_values.len(),
                pc.r()
            )));
        }
        let orbit_slot: std::collections::HashMap<u32, usize> = pc
            .gen_orbits()
            .iter()
            .enumerate()
            .map(|(k, &o)| (o, k))
            .collect();
        let values = pc
            .generating()
            .iter()
            .enumerate()
            .map(|(k, &idx)| {
                let slot = orbit_slot[&pc.pair_orbits().orbit_of(idx)];
                aut.get(pc.transport(k)).apply(rep_values[slot])
            })
            .collect();
        Ok(EquivariantAssignment { values })
    }

    pub fn values(&self) -> &[ElemId] {
        &self.values
    }

    pub fn value_at(&self, pc: &PairClassification, pair: u32) -> Option<ElemId> {
        pc.position(pair).map(|k| self.values[k])
    }

    /// Number of generating pairs with a non-identity value.
    pub fn support(&self) -> usize {
        self.values.iter().filter(|&&v| v != IDENTITY).count()
    }
}

/// `z_i = a_i` when `a_i ∈ A′`, identity otherwise, over the generating pairs
/// `(a_i, b_i)`. Coordinates on non-generating pairs are the identity and are
/// not stored.
pub fn build_z_assignment(pc: &PairClassification, a: &CandidateSet) -> EquivariantAssignment {
    let n = pc.order();
    let values = pc
        .generating()
        .iter()
        .map(|&idx| {
            let (first, _) = pair_of(n, idx);
            if first != IDENTITY && a.contains(first) {
                first
            } else {
                IDENTITY
            }
        })
        .collect();
    EquivariantAssignment { values }
}

/// An automorphism carrying generating pair `i` to `j` whose values disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivarianceViolation {
    pub alpha: usize,
    pub i: u32,
    pub j: u32,
}

/// Checks `u_j = α(u_i)` whenever `α` carries pair `i` to pair `j`. Testing
/// every `α` against every orbit representative covers all `(α, i, j)`.
pub fn check_e_prime_membership(
    aut: &AutGroup,
    pc: &PairClassification,
    u: &EquivariantAssignment,
) -> std::result::Result<(), EquivarianceViolation> {
    let n = pc.order();
    let reps: Vec<u32> = pc.gen_orbit_reps().collect();
    let found = reps.par_iter().find_map_first(|&rep| {
        let (a, b) = pair_of(n, rep);
        let ui = u.value_at(pc, rep).expect("rep is generating");
        aut.autos().iter().enumerate().find_map(|(k, alpha)| {
            let j = pair_index(n, alpha.apply(a), alpha.apply(b));
            let uj = u.value_at(pc, j).expect("orbit of a generating pair");
            (uj != alpha.apply(ui)).then_some(EquivarianceViolation {
                alpha: k,
                i: rep,
                j,
            })
        })
    });
    match found {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Realizable,
    Rejected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageCertificate {
    pub set: CandidateSet,
    pub verdict: Verdict,
    pub failed: Option<FailedCondition>,
    /// One `(a, b)` with `⟨a, b⟩ = G` per Aut-orbit of `A′`, keyed by the
    /// orbit's least element.
    pub witnesses: Vec<(ElemId, ElemId)>,
    /// Generating pairs where `z` is non-identity.
    pub z_support: usize,
    pub eprime_ok: bool,
    /// `{z_i} ∪ {e} = A`.
    pub coverage_ok: bool,
}

impl ImageCertificate {
    fn rejected(set: CandidateSet, why: FailedCondition) -> Self {
        ImageCertificate {
            set,
            verdict: Verdict::Rejected,
            failed: Some(why),
            witnesses: Vec::new(),
            z_support: 0,
            eprime_ok: false,
            coverage_ok: false,
        }
    }
}

/// Certifies that `a` is the image of some word, or names the failed
/// condition. A broken link in the evidence chain of an admissible set is an
/// error, never a rejection.
pub fn certify_image(
    aut: &AutGroup,
    orbits: &OrbitPartition,
    pc: &PairClassification,
    spread: &SpreadCertificate,
    a: &CandidateSet,
) -> Result<ImageCertificate> {
    if let Err(why) = check_conditions(aut, a) {
        return Ok(ImageCertificate::rejected(a.clone(), why));
    }

    let mut orbit_ids: Vec<u32> = a.nonidentity().map(|x| orbits.orbit_of(x)).collect();
    orbit_ids.sort_unstable();
    orbit_ids.dedup();
    let mut witnesses = Vec::with_capacity(orbit_ids.len());
    for o in orbit_ids {
        let rep = orbits.reps[o as usize];
        let mate = spread
            .witness(rep)
            .filter(|&b| pc.is_generating_pair(rep, b))
            .ok_or_else(|| {
                Error::Inconsistency(format!("no generating mate recorded for {rep}"))
            })?;
        witnesses.push((rep, mate));
    }

    let z = build_z_assignment(pc, a);
    if let Err(v) = check_e_prime_membership(aut, pc, &z) {
        return Err(Error::Inconsistency(format!(
            "z assignment of an admissible set is not equivariant: automorphism {} maps pair {} to {}",
            v.alpha, v.i, v.j
        )));
    }

    let mut covered = vec![false; pc.order()];
    covered[IDENTITY as usize] = true;
    for &v in z.values() {
        covered[v as usize] = true;
    }
    let coverage_ok = (0..pc.order() as ElemId).all(|x| covered[x as usize] == a.contains(x));
    if !coverage_ok {
        return Err(Error::Inconsistency("z assignment does not cover A".into()));
    }

    Ok(ImageCertificate {
        set: a.clone(),
        verdict: Verdict::Realizable,
        failed: None,
        witnesses,
        z_support: z.support(),
        eprime_ok: true,
        coverage_ok,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionVerdict {
    Realizable,
    /// `f(α(a), α(b)) ≠ α(f(a, b))`.
    NotEquivariant {
        alpha: usize,
        pair: (ElemId, ElemId),
    },
    /// `f(a, b) ≠ e` although `⟨a, b⟩ ≠ G`.
    NonTrivialOffGenerating {
        pair: (ElemId, ElemId),
    },
}

/// A function `G × G → G` (indexed by pair) is the map of some word when it
/// is Aut-equivariant and trivial off the generating pairs. Both checks are
/// exhaustive; equivariance is checked first.
pub fn certify_function(
    aut: &AutGroup,
    pc: &PairClassification,
    f: &[ElemId],
) -> Result<FunctionVerdict> {
    let n = pc.order();
    if f.len() != n * n {
        return Err(Error::InvalidInput(format!(
            "function table has {} entries, expected {}",
            f.len(),
            n * n
        )));
    }
    if f.iter().any(|&v| v as usize >= n) {
        return Err(Error::InvalidInput("function value out of range".into()));
    }
    let bad = aut
        .autos()
        .par_iter()
        .enumerate()
        .find_map_first(|(k, alpha)| {
            (0..(n * n) as u32).find_map(|i| {
                let (a, b) = pair_of(n, i);
                let j = pair_index(n, alpha.apply(a), alpha.apply(b));
                (f[j as usize] != alpha.apply(f[i as usize])).then_some(
                    FunctionVerdict::NotEquivariant {
                        alpha: k,
                        pair: (a, b),
                    },
                )
            })
        });
    if let Some(v) = bad {
        return Ok(v);
    }
    if let Some(i) = pc.nongenerating().find(|&i| f[i as usize] != IDENTITY) {
        return Ok(FunctionVerdict::NonTrivialOffGenerating {
            pair: pair_of(n, i),
        });
    }
    Ok(FunctionVerdict::Realizable)
}

/// The commutator on generating pairs and the identity elsewhere.
pub fn commutator_on_generating(g: &GroupTable, pc: &PairClassification) -> Vec<ElemId> {
    let n = g.order();
    (0..(n * n) as u32)
        .map(|i| {
            let (a, b) = pair_of(n, i);
            if pc.is_generating_index(i) {
                g.commutator(a, b)
            } else {
                IDENTITY
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenerationDetection {
    Holds,
    /// First pair by index where `w(a, b) ≠ e` disagrees with `⟨a, b⟩ = G`.
    Counterexample {
        pair: (ElemId, ElemId),
        value: ElemId,
        generating: bool,
    },
}

/// Tests whether `w` detects generation: `w(a, b) ≠ e ⟺ ⟨a, b⟩ = G`.
pub fn generation_detection_test(
    g: &GroupTable,
    pc: &PairClassification,
    w: &Word,
) -> GenerationDetection {
    let n = g.order();
    for i in 0..(n * n) as u32 {
        let (a, b) = pair_of(n, i);
        let value = g.evaluate(w, a, b);
        let generating = pc.is_generating_index(i);
        if (value != IDENTITY) != generating {
            return GenerationDetection::Counterexample {
                pair: (a, b),
                value,
                generating,
            };
        }
    }
    GenerationDetection::Holds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::{compute_automorphisms, orbits_on_elements};
    use crate::group::build_group;
    use crate::pairs::{classify_pairs, gk_spread_check};
    use crate::spec::{GroupSpec, DEFAULT_ORDER_CAP};

    struct Fx {
        g: GroupTable,
        aut: AutGroup,
        orbits: OrbitPartition,
        pc: PairClassification,
        spread: SpreadCertificate,
    }

    fn a5() -> Fx {
        let g = build_group(&GroupSpec::alternating(5), DEFAULT_ORDER_CAP).unwrap();
        let aut = compute_automorphisms(&g).unwrap();
        let orbits = orbits_on_elements(&g, &aut);
        let pc = classify_pairs(&g, &aut).unwrap();
        let spread = gk_spread_check(&pc).unwrap();
        Fx {
            g,
            aut,
            orbits,
            pc,
            spread,
        }
    }

    fn orbit_with(fx: &Fx, order: u32) -> u32 {
        (1..fx.orbits.len() as u32)
            .find(|&o| fx.g.element_order(fx.orbits.reps[o as usize]) == order)
            .unwrap()
    }

    #[test]
    fn eight_admissible_sets_on_a5() {
        let fx = a5();
        let sets = admissible_sets(&fx.orbits).unwrap();
        assert_eq!(sets.len(), 8);
        assert_eq!(sets[0].members(), &[IDENTITY]);
        assert_eq!(sets[7].len(), 60);
    }

    #[test]
    fn conditions() {
        let fx = a5();
        let threes = CandidateSet::from_orbits(&fx.orbits, [orbit_with(&fx, 3)]);
        assert_eq!(
            check_conditions(&fx.aut, &threes),
            Err(FailedCondition::MissingIdentity)
        );

        let invols = CandidateSet::from_orbits(&fx.orbits, [0, orbit_with(&fx, 2)]);
        assert_eq!(invols.len(), 16);
        assert_eq!(check_conditions(&fx.aut, &invols), Ok(()));

        // One conjugacy class of 5-cycles is not closed under the outer automorphism.
        let c = fx.orbits.reps[orbit_with(&fx, 5) as usize];
        let class =
            fx.g.conjugacy_classes()
                .into_iter()
                .find(|cl| cl.contains(&c))
                .unwrap();
        assert_eq!(class.len(), 12);
        let mut ids = class.clone();
        ids.push(IDENTITY);
        let half = CandidateSet::new(&fx.g, ids).unwrap();
        assert!(matches!(
            check_conditions(&fx.aut, &half),
            Err(FailedCondition::NotAutInvariant { .. })
        ));
    }

    #[test]
    fn z_assignments() {
        let fx = a5();
        let trivial = CandidateSet::from_orbits(&fx.orbits, [0]);
        let z = build_z_assignment(&fx.pc, &trivial);
        assert_eq!(z.support(), 0);
        assert!(check_e_prime_membership(&fx.aut, &fx.pc, &z).is_ok());

        let all = CandidateSet::from_orbits(&fx.orbits, 0..4);
        let z = build_z_assignment(&fx.pc, &all);
        for (k, &idx) in fx.pc.generating().iter().enumerate() {
            assert_eq!(z.values()[k], pair_of(60, idx).0);
        }

        let invols = CandidateSet::from_orbits(&fx.orbits, [0, orbit_with(&fx, 2)]);
        let z = build_z_assignment(&fx.pc, &invols);
        for (k, &idx) in fx.pc.generating().iter().enumerate() {
            let first = pair_of(60, idx).0;
            assert_eq!(z.values()[k] != IDENTITY, fx.g.element_order(first) == 2);
        }
        assert!(check_e_prime_membership(&fx.aut, &fx.pc, &z).is_ok());
    }

    #[test]
    fn single_nonidentity_value_breaks_equivariance() {
        let fx = a5();
        let mut values = vec![IDENTITY; fx.pc.ell()];
        let rep = fx.pc.gen_orbit_reps().next().unwrap();
        let k = fx.pc.position(rep).unwrap();
        values[k] = pair_of(60, rep).0;
        let u = EquivariantAssignment::from_values(&fx.pc, values).unwrap();
        let v = check_e_prime_membership(&fx.aut, &fx.pc, &u).unwrap_err();
        assert_eq!(v.i, rep);
        assert_ne!(v.j, rep);
    }

    #[test]
    fn representatives_extend_equivariantly() {
        let fx = a5();
        let reps: Vec<ElemId> = fx
            .pc
            .gen_orbit_reps()
            .map(|r| fx.g.commutator(r / 60, r % 60))
            .collect();
        let u = EquivariantAssignment::from_representatives(&fx.aut, &fx.pc, &reps).unwrap();
        assert!(check_e_prime_membership(&fx.aut, &fx.pc, &u).is_ok());
        for (k, &idx) in fx.pc.generating().iter().enumerate() {
            let (a, b) = pair_of(60, idx);
            assert_eq!(u.values()[k], fx.g.commutator(a, b));
        }
    }

    #[test]
    fn certify_examples() {
        let fx = a5();
        let threes = CandidateSet::from_orbits(&fx.orbits, [0, orbit_with(&fx, 3)]);
        let cert = certify_image(&fx.aut, &fx.orbits, &fx.pc, &fx.spread, &threes).unwrap();
        assert_eq!(cert.verdict, Verdict::Realizable);
        assert_eq!(cert.witnesses.len(), 1);
        assert!(cert.eprime_ok && cert.coverage_ok);

        let trivial = CandidateSet::from_orbits(&fx.orbits, [0]);
        let cert = certify_image(&fx.aut, &fx.orbits, &fx.pc, &fx.spread, &trivial).unwrap();
        assert_eq!(cert.verdict, Verdict::Realizable);
        assert!(cert.witnesses.is_empty());

        let no_e = CandidateSet::from_orbits(&fx.orbits, [orbit_with(&fx, 3)]);
        let cert = certify_image(&fx.aut, &fx.orbits, &fx.pc, &fx.spread, &no_e).unwrap();
        assert_eq!(cert.verdict, Verdict::Rejected);
        assert_eq!(cert.failed, Some(FailedCondition::MissingIdentity));
    }

    #[test]
    fn function_certificates() {
        let fx = a5();
        let comm = commutator_on_generating(&fx.g, &fx.pc);
        assert_eq!(
            certify_function(&fx.aut, &fx.pc, &comm).unwrap(),
            FunctionVerdict::Realizable
        );

        let proj: Vec<ElemId> = (0..3600u32).map(|i| i / 60).collect();
        assert!(matches!(
            certify_function(&fx.aut, &fx.pc, &proj).unwrap(),
            FunctionVerdict::NonTrivialOffGenerating { .. }
        ));

        let constant = vec![5; 3600];
        assert!(matches!(
            certify_function(&fx.aut, &fx.pc, &constant).unwrap(),
            FunctionVerdict::NotEquivariant { .. }
        ));
        assert!(certify_function(&fx.aut, &fx.pc, &[0; 10]).is_err());
    }

    #[test]
    fn generation_detection_counterexamples() {
        let fx = a5();
        match generation_detection_test(&fx.g, &fx.pc, &"x".parse().unwrap()) {
            GenerationDetection::Counterexample {
                pair: (a, b),
                generating,
                ..
            } => {
                assert!(a != IDENTITY && !generating);
                assert_eq!(b, IDENTITY);
            }
            other => panic!("{other:?}"),
        }
        match generation_detection_test(&fx.g, &fx.pc, &Word::empty()) {
            GenerationDetection::Counterexample {
                generating, value, ..
            } => {
                assert!(generating);
                assert_eq!(value, IDENTITY);
            }
            other => panic!("{other:?}"),
        }
        match generation_detection_test(&fx.g, &fx.pc, &Word::commutator()) {
            GenerationDetection::Counterexample {
                pair: (a, b),
                generating,
                value,
            } => {
                // a nonabelian proper subgroup
                assert!(!generating);
                assert_ne!(value, IDENTITY);
                assert!(fx.g.subgroup_size(&[a, b], 60) < 60);
            }
            other => panic!("{other:?}"),
        }
    }
}
