//! The full automorphism group of a table, found by extending candidate
//! images of the basis pair, and the orbits it induces on elements and pairs.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{ElemId, GroupTable, IDENTITY};
use crate::orbit::OrbitPartition;

/// Largest order for which every accepted automorphism is re-checked on all
/// `|G|²` products.
pub const FULL_RECHECK_MAX: usize = 360;

/// A bijection of element ids respecting the multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automorphism {
    pub map: Vec<ElemId>,
}

impl Automorphism {
    #[inline]
    pub fn apply(&self, g: ElemId) -> ElemId {
        self.map[g as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &g)| i as ElemId == g)
    }

    pub fn inverse(&self) -> Automorphism {
        let mut map = vec![0; self.map.len()];
        for (g, &h) in self.map.iter().enumerate() {
            map[h as usize] = g as ElemId;
        }
        Automorphism { map }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            map: other.map.iter().map(|&g| self.map[g as usize]).collect(),
        }
    }

    /// Exhaustive homomorphism, bijectivity and identity checks.
    pub fn is_automorphism_of(&self, g: &GroupTable) -> bool {
        let n = g.order();
        if self.map.len() != n || self.map[IDENTITY as usize] != IDENTITY {
            return false;
        }
        let mut seen = vec![false; n];
        for &h in &self.map {
            if h as usize >= n || std::mem::replace(&mut seen[h as usize], true) {
                return false;
            }
        }
        (0..n as ElemId).all(|a| {
            (0..n as ElemId).all(|b| self.apply(g.mul(a, b)) == g.mul(self.apply(a), self.apply(b)))
        })
    }
}

/// Every automorphism of a group, keyed by the images of the basis pair.
#[derive(Clone, Debug)]
pub struct AutGroup {
    autos: Vec<Automorphism>,
    by_basis_image: HashMap<(ElemId, ElemId), usize>,
    basis: [ElemId; 2],
    identity_index: usize,
    generators: Vec<usize>,
}

impl AutGroup {
    /// Assembles a group from a list of automorphisms. The list must be
    /// closed under composition; only the closure-independent bookkeeping is
    /// done here.
    pub fn from_list(g: &GroupTable, autos: Vec<Automorphism>) -> Result<Self> {
        let basis = g.basis();
        let mut by_basis_image = HashMap::with_capacity(autos.len());
        for (i, a) in autos.iter().enumerate() {
            if by_basis_image
                .insert((a.apply(basis[0]), a.apply(basis[1])), i)
                .is_some()
            {
                return Err(Error::Inconsistency(
                    "duplicate automorphism in list".into(),
                ));
            }
        }
        let identity_index = *by_basis_image
            .get(&(basis[0], basis[1]))
            .ok_or_else(|| Error::InvalidInput("automorphism list lacks the identity".into()))?;
        let mut aut = AutGroup {
            autos,
            by_basis_image,
            basis,
            identity_index,
            generators: Vec::new(),
        };
        aut.generators = aut.small_generating_set()?;
        Ok(aut)
    }

    pub fn order(&self) -> usize {
        self.autos.len()
    }

    pub fn autos(&self) -> &[Automorphism] {
        &self.autos
    }

    pub fn get(&self, i: usize) -> &Automorphism {
        &self.autos[i]
    }

    pub fn identity_index(&self) -> usize {
        self.identity_index
    }

    /// Indices of a small subset that generates the whole list.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Index of the automorphism sending the basis to `(a, b)`, if listed.
    pub fn index_of_basis_image(&self, a: ElemId, b: ElemId) -> Option<usize> {
        self.by_basis_image.get(&(a, b)).copied()
    }

    pub fn index_of(&self, alpha: &Automorphism) -> Option<usize> {
        self.index_of_basis_image(alpha.apply(self.basis[0]), alpha.apply(self.basis[1]))
            .filter(|&i| self.autos[i] == *alpha)
    }

    /// Index of `autos[i] ∘ autos[j]`, if listed.
    pub fn compose_index(&self, i: usize, j: usize) -> Option<usize> {
        let (a, b) = (&self.autos[i], &self.autos[j]);
        self.index_of_basis_image(
            a.apply(b.apply(self.basis[0])),
            a.apply(b.apply(self.basis[1])),
        )
    }

    pub fn inverse_index(&self, i: usize) -> Option<usize> {
        self.index_of(&self.autos[i].inverse())
    }

    /// Index of conjugation `h ↦ g⁻¹ h g`.
    pub fn inner_index(&self, g: &GroupTable, by: ElemId) -> Option<usize> {
        self.index_of_basis_image(g.conj(self.basis[0], by), g.conj(self.basis[1], by))
    }

    /// Closure under composition and inverses, checked on the whole list.
    pub fn verify_closure(&self) -> Result<()> {
        for i in 0..self.order() {
            if self.inverse_index(i).is_none() {
                return Err(Error::Inconsistency(format!(
                    "inverse of automorphism {i} missing"
                )));
            }
            for j in 0..self.order() {
                if self.compose_index(i, j).is_none() {
                    return Err(Error::Inconsistency(format!(
                        "composition of automorphisms {i} and {j} missing"
                    )));
                }
            }
        }
        Ok(())
    }

    fn small_generating_set(&self) -> Result<Vec<usize>> {
        let mut gens: Vec<usize> = Vec::new();
        let mut member = vec![false; self.order()];
        member[self.identity_index] = true;
        let mut elements = vec![self.identity_index];
        for candidate in 0..self.order() {
            if member[candidate] {
                continue;
            }
            gens.push(candidate);
            // Re-close: multiply every known element by every generator.
            let mut head = 0;
            while head < elements.len() {
                let e = elements[head];
                head += 1;
                for &s in &gens {
                    let k = self.compose_index(e, s).ok_or_else(|| {
                        Error::Inconsistency("automorphism list is not closed".into())
                    })?;
                    if !member[k] {
                        member[k] = true;
                        elements.push(k);
                    }
                }
            }
        }
        Ok(gens)
    }
}

type Fingerprint = [u32; 5];

fn fingerprint(g: &GroupTable, a: ElemId, b: ElemId) -> Fingerprint {
    [
        g.element_order(a),
        g.element_order(b),
        g.element_order(g.mul(a, b)),
        g.element_order(g.mul(a, g.inv(b))),
        g.element_order(g.commutator(a, b)),
    ]
}

/// Extends `basis ↦ (a, b)` along the spanning tree and accepts it iff the
/// result is a bijection commuting with right multiplication by both basis
/// elements, which forces the homomorphism property.
fn try_extend(g: &GroupTable, a: ElemId, b: ElemId) -> Option<Automorphism> {
    let n = g.order();
    let images = [a, b];
    let mut map = vec![IDENTITY; n];
    for &e in &g.tree_order()[1..] {
        let (p, l) = g.tree_edge(e).expect("non-identity");
        map[e as usize] = g.mul(map[p as usize], images[l]);
    }
    let mut seen = vec![false; n];
    for &h in &map {
        if std::mem::replace(&mut seen[h as usize], true) {
            return None;
        }
    }
    let [x, y] = g.basis();
    for e in 0..n as ElemId {
        let me = map[e as usize];
        if map[g.mul(e, x) as usize] != g.mul(me, a) || map[g.mul(e, y) as usize] != g.mul(me, b) {
            return None;
        }
    }
    Some(Automorphism { map })
}

/// All automorphisms of `g`, in order of the basis image `(a, b)` by `a·|G| + b`.
pub fn compute_automorphisms(g: &GroupTable) -> Result<AutGroup> {
    let n = g.order();
    let [x, y] = g.basis();
    let target = fingerprint(g, x, y);
    let autos: Vec<Automorphism> = (0..n as ElemId)
        .into_par_iter()
        .flat_map_iter(|a| {
            (0..n as ElemId)
                .filter(move |&b| fingerprint(g, a, b) == target)
                .filter_map(move |b| try_extend(g, a, b))
        })
        .collect();

    if n <= FULL_RECHECK_MAX {
        if let Some(bad) = autos.par_iter().position_any(|a| !a.is_automorphism_of(g)) {
            return Err(Error::Inconsistency(format!(
                "accepted candidate {bad} fails the full homomorphism check"
            )));
        }
    }
    let aut = AutGroup::from_list(g, autos)?;
    for h in 0..n as ElemId {
        if aut.inner_index(g, h).is_none() {
            return Err(Error::Inconsistency(format!(
                "inner automorphism by {h} not found"
            )));
        }
    }
    Ok(aut)
}

/// Orbits of Aut(G) on elements. The identity is always orbit 0.
pub fn orbits_on_elements(g: &GroupTable, aut: &AutGroup) -> OrbitPartition {
    OrbitPartition::from_generators(g.order(), |e, sink| {
        for &s in aut.generators() {
            sink(aut.get(s).apply(e));
        }
    })
}

/// Orbits of the diagonal action on all of `G × G`, indexed by `a·|G| + b`.
pub fn orbits_on_all_pairs(g: &GroupTable, aut: &AutGroup) -> OrbitPartition {
    let n = g.order() as u32;
    OrbitPartition::from_generators((n * n) as usize, |p, sink| {
        let (a, b) = (p / n, p % n);
        for &s in aut.generators() {
            let alpha = aut.get(s);
            sink(alpha.apply(a) * n + alpha.apply(b));
        }
    })
}

/// Orbits of the diagonal action on an Aut-closed list of pairs, indexed by
/// position in `pairs`.
pub fn orbits_on_pairs(
    g: &GroupTable,
    aut: &AutGroup,
    pairs: &[(ElemId, ElemId)],
) -> Result<OrbitPartition> {
    if pairs.is_empty() {
        return Err(Error::InvalidInput("pair list is empty".into()));
    }
    let n = g.order() as u64;
    let position: HashMap<u64, u32> = pairs
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| (a as u64 * n + b as u64, i as u32))
        .collect();
    let mut missing = None;
    let part = OrbitPartition::from_generators(pairs.len(), |i, sink| {
        let (a, b) = pairs[i as usize];
        for &s in aut.generators() {
            let alpha = aut.get(s);
            let key = alpha.apply(a) as u64 * n + alpha.apply(b) as u64;
            match position.get(&key) {
                Some(&j) => sink(j),
                None => missing = Some((alpha.apply(a), alpha.apply(b))),
            }
        }
    });
    match missing {
        Some(p) => Err(Error::InvalidInput(format!(
            "pair list is not Aut-closed: image {p:?} is missing"
        ))),
        None => Ok(part),
    }
}

/// A nonidentity automorphism fixing a generating pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPair {
    pub alpha: usize,
    pub pair: (ElemId, ElemId),
}

/// Checks that no nonidentity automorphism fixes any of `generating_pairs`.
pub fn verify_free_action(
    aut: &AutGroup,
    generating_pairs: &[(ElemId, ElemId)],
) -> std::result::Result<(), FixedPair> {
    let found = (0..aut.order())
        .into_par_iter()
        .filter(|&i| i != aut.identity_index())
        .find_map_first(|i| {
            let alpha = aut.get(i);
            generating_pairs
                .iter()
                .find(|&&(a, b)| alpha.apply(a) == a && alpha.apply(b) == b)
                .map(|&pair| FixedPair { alpha: i, pair })
        });
    match found {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;
    use crate::perm::Permutation;
    use crate::spec::{GroupSpec, DEFAULT_ORDER_CAP};

    fn setup(spec: GroupSpec) -> (GroupTable, AutGroup) {
        let g = build_group(&spec, DEFAULT_ORDER_CAP).unwrap();
        let aut = compute_automorphisms(&g).unwrap();
        (g, aut)
    }

    #[test]
    fn a5_has_120_automorphisms() {
        let (g, aut) = setup(GroupSpec::alternating(5));
        assert_eq!(aut.order(), 120);
        assert_eq!(aut.order() % g.order(), 0);
        assert_eq!(aut.order() / g.order(), 2);
        assert!(aut.get(aut.identity_index()).is_identity());
        aut.verify_closure().unwrap();
    }

    #[test]
    fn inner_automorphisms_are_distinct() {
        let (g, aut) = setup(GroupSpec::alternating(5));
        let mut inner: Vec<usize> = (0..60).map(|h| aut.inner_index(&g, h).unwrap()).collect();
        inner.sort_unstable();
        inner.dedup();
        assert_eq!(inner.len(), 60);
    }

    #[test]
    fn a5_element_orbits() {
        let (g, aut) = setup(GroupSpec::alternating(5));
        let orbits = orbits_on_elements(&g, &aut);
        let mut sizes = orbits.sizes.clone();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 15, 20, 24]);
        assert_eq!(orbits.orbit_of(IDENTITY), 0);
        assert_eq!(orbits.sizes[0], 1);
        // Both classes of 5-cycles are fused.
        let c = g
            .id_of(&Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap())
            .unwrap();
        let c2 = g.mul(c, c);
        assert!(orbits.same_orbit(c, c2));
    }

    #[test]
    fn orbits_are_preserved_by_every_automorphism() {
        let (g, aut) = setup(GroupSpec::psl2(7));
        let orbits = orbits_on_elements(&g, &aut);
        assert_eq!(orbits.sizes.iter().sum::<u32>(), 168);
        for alpha in aut.autos() {
            for e in 0..168 {
                assert!(orbits.same_orbit(e, alpha.apply(e)));
            }
        }
        for &s in &orbits.sizes {
            assert_eq!(aut.order() % s as usize, 0);
        }
    }

    #[test]
    fn pair_orbits_of_a5() {
        let (g, aut) = setup(GroupSpec::alternating(5));
        let part = orbits_on_all_pairs(&g, &aut);
        assert_eq!(part.sizes.iter().sum::<u32>(), 3600);
        assert!(part.sizes.iter().all(|&s| 120 % s == 0));
        assert_eq!(part.sizes[part.orbit_of(0) as usize], 1);
    }

    #[test]
    fn pair_list_orbits_match_full_orbits() {
        let (g, aut) = setup(GroupSpec::alternating(5));
        let all: Vec<(ElemId, ElemId)> =
            (0..60).flat_map(|a| (0..60).map(move |b| (a, b))).collect();
        let listed = orbits_on_pairs(&g, &aut, &all).unwrap();
        let full = orbits_on_all_pairs(&g, &aut);
        assert_eq!(listed, full);
        assert!(orbits_on_pairs(&g, &aut, &[]).is_err());
        assert!(orbits_on_pairs(&g, &aut, &[(1, 2)]).is_err());
        let single = orbits_on_pairs(&g, &aut, &[(0, 0)]).unwrap();
        assert_eq!(single.sizes, vec![1]);
    }

    #[test]
    fn free_action_detects_fixed_pairs() {
        let (_, aut) = setup(GroupSpec::alternating(5));
        let err = verify_free_action(&aut, &[(0, 0)]).unwrap_err();
        assert_eq!(err.pair, (0, 0));
        assert_ne!(err.alpha, aut.identity_index());
    }

    #[test]
    fn a6_has_exceptional_outer_automorphisms() {
        let (g, aut) = setup(GroupSpec::alternating(6));
        assert_eq!(aut.order(), 1440);
        // The outer automorphism swaps 3-cycles and double 3-cycles, so both
        // classes of order-3 elements fuse into one orbit of size 80.
        let orbits = orbits_on_elements(&g, &aut);
        let three = g
            .id_of(&Permutation::from_cycles(6, &[&[0, 1, 2]]).unwrap())
            .unwrap();
        assert_eq!(orbits.sizes[orbits.orbit_of(three) as usize], 80);
    }
}
