//! Exhaustive search over short words: canonical classes, images, the census
//! of realized images, and value distributions.
//!
//! Images are computed on one pair per Aut-orbit of `G × G`. Since
//! `α(w(a, b)) = w(α(a), α(b))`, the values over a pair orbit fill exactly the
//! element orbit of the representative's value, so an image is a union of
//! element orbits and is stored as a bitmask over them.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::aut::AutGroup;
use crate::error::{Error, Result};
use crate::group::{ElemId, GroupTable, IDENTITY};
use crate::orbit::OrbitPartition;
use crate::pairs::{pair_of, PairClassification};
use crate::realize::{check_conditions, CandidateSet};
use crate::word::{is_canonical_letters, Letter, Word};

/// Bitmask over element orbits; bit 0 is `{e}`.
pub type OrbitMask = u64;

/// Prefix length used to split the search into independent tasks.
const SPLIT_DEPTH: usize = 4;

/// Default search budget, in pair-representative evaluations per DFS level.
const DEFAULT_EVAL_BUDGET: f64 = 1.3e7;

/// A class of cyclically reduced words under signed swaps and rotations,
/// represented by its lexicographically least member.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CanonicalWordClass {
    pub representative: Word,
}

impl CanonicalWordClass {
    pub fn members(&self) -> Vec<Word> {
        self.representative.class_members()
    }
}

/// Canonical representatives of length `1..=maxlen`, in depth-first
/// lexicographic order (a word precedes its extensions).
pub fn enumerate_canonical(maxlen: usize) -> Vec<CanonicalWordClass> {
    let mut out = Vec::new();
    let mut letters = Vec::with_capacity(maxlen);
    fn go(letters: &mut Vec<Letter>, maxlen: usize, out: &mut Vec<CanonicalWordClass>) {
        if is_visitable(letters) {
            out.push(CanonicalWordClass {
                representative: Word::from(letters.clone()),
            });
        }
        if letters.len() == maxlen {
            return;
        }
        let last = *letters.last().expect("non-empty");
        for l in Letter::ALL {
            if l != last.inverse() {
                letters.push(l);
                go(letters, maxlen, out);
                letters.pop();
            }
        }
    }
    if maxlen >= 1 {
        letters.push(Letter::X);
        go(&mut letters, maxlen, &mut out);
    }
    out
}

fn is_visitable(letters: &[Letter]) -> bool {
    let cyc = letters.len() == 1 || letters[0] != letters[letters.len() - 1].inverse();
    cyc && is_canonical_letters(letters)
}

/// Precomputed orbit data for fast word evaluation.
#[derive(Clone, Debug)]
pub struct SearchContext {
    n: usize,
    // letter values at each pair-orbit representative, letter-major
    letter_vals: [Vec<ElemId>; 4],
    rep_size: Vec<u64>,
    rep_generating: Vec<bool>,
    elem_orbit: Vec<u32>,
    elem_orbit_size: Vec<u64>,
    orbit_members: Vec<Vec<ElemId>>,
}

impl SearchContext {
    pub fn new(
        g: &GroupTable,
        elem_orbits: &OrbitPartition,
        pc: &PairClassification,
    ) -> Result<Self> {
        if elem_orbits.len() > 64 {
            return Err(Error::TooManyOrbits {
                count: elem_orbits.len(),
                limit: 64,
            });
        }
        let n = g.order();
        let reps = &pc.pair_orbits().reps;
        let mut letter_vals: [Vec<ElemId>; 4] = Default::default();
        for &rep in reps {
            let (a, b) = pair_of(n, rep);
            letter_vals[0].push(a);
            letter_vals[1].push(g.inv(a));
            letter_vals[2].push(b);
            letter_vals[3].push(g.inv(b));
        }
        let orbit_members = (0..elem_orbits.len() as u32)
            .map(|o| elem_orbits.members(o))
            .collect();
        Ok(SearchContext {
            n,
            letter_vals,
            rep_size: pc.pair_orbits().sizes.iter().map(|&s| s as u64).collect(),
            rep_generating: (0..reps.len() as u32)
                .map(|o| pc.orbit_is_generating(o))
                .collect(),
            elem_orbit: elem_orbits.orbit_id.clone(),
            elem_orbit_size: elem_orbits.sizes.iter().map(|&s| s as u64).collect(),
            orbit_members,
        })
    }

    pub fn num_reps(&self) -> usize {
        self.rep_size.len()
    }

    pub fn mask_members(&self, mask: OrbitMask) -> Vec<ElemId> {
        let mut out: Vec<ElemId> = (0..self.orbit_members.len())
            .filter(|&o| mask >> o & 1 == 1)
            .flat_map(|o| self.orbit_members[o].iter().copied())
            .collect();
        out.sort_unstable();
        out
    }

    pub fn mask_size(&self, mask: OrbitMask) -> u64 {
        (0..self.elem_orbit_size.len())
            .filter(|&o| mask >> o & 1 == 1)
            .map(|o| self.elem_orbit_size[o])
            .sum()
    }

    fn eval_reps(&self, g: &GroupTable, w: &Word) -> Vec<ElemId> {
        let mut vals = vec![IDENTITY; self.num_reps()];
        for l in w.letters() {
            let lv = &self.letter_vals[l.index() as usize];
            for (v, &x) in vals.iter_mut().zip(lv) {
                *v = g.mul(*v, x);
            }
        }
        vals
    }

    fn mask_of(&self, vals: &[ElemId]) -> OrbitMask {
        vals.iter()
            .fold(0, |m, &v| m | 1 << self.elem_orbit[v as usize])
    }
}

/// `w(G)` as an orbit mask, evaluated on pair-orbit representatives.
pub fn image_signature(g: &GroupTable, ctx: &SearchContext, w: &Word) -> OrbitMask {
    ctx.mask_of(&ctx.eval_reps(g, w))
}

/// `w(G)`, sorted.
pub fn image_of(g: &GroupTable, ctx: &SearchContext, w: &Word) -> Vec<ElemId> {
    ctx.mask_members(image_signature(g, ctx, w))
}

/// `w(G)` by evaluating every pair. Test oracle for [`image_of`].
pub fn image_of_naive(g: &GroupTable, w: &Word) -> Vec<ElemId> {
    let n = g.order();
    let mut hit = vec![false; n];
    for a in 0..n as ElemId {
        for b in 0..n as ElemId {
            hit[g.evaluate(w, a, b) as usize] = true;
        }
    }
    (0..n as ElemId).filter(|&e| hit[e as usize]).collect()
}

/// Number of pairs mapped to each element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordDistribution {
    pub counts: Vec<u64>,
}

impl WordDistribution {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Exact distribution from pair-orbit representatives: a pair orbit of size
/// `s` whose value lies in an element orbit of size `t` puts `s / t` on each
/// element of that orbit.
pub fn distribution(g: &GroupTable, ctx: &SearchContext, w: &Word) -> Result<WordDistribution> {
    let vals = ctx.eval_reps(g, w);
    let mut per_orbit = vec![0u64; ctx.elem_orbit_size.len()];
    for (r, &v) in vals.iter().enumerate() {
        per_orbit[ctx.elem_orbit[v as usize] as usize] += ctx.rep_size[r];
    }
    let mut counts = vec![0u64; ctx.n];
    for (o, &c) in per_orbit.iter().enumerate() {
        let t = ctx.elem_orbit_size[o];
        if c % t != 0 {
            return Err(Error::Inconsistency(format!(
                "pair mass {c} on element orbit {o} is not divisible by its size {t}"
            )));
        }
        for &e in &ctx.orbit_members[o] {
            counts[e as usize] = c / t;
        }
    }
    Ok(WordDistribution { counts })
}

/// Distribution by scanning every pair. Test oracle for [`distribution`].
pub fn distribution_naive(g: &GroupTable, w: &Word) -> WordDistribution {
    let n = g.order();
    let mut counts = vec![0u64; n];
    for a in 0..n as ElemId {
        for b in 0..n as ElemId {
            counts[g.evaluate(w, a, b) as usize] += 1;
        }
    }
    WordDistribution { counts }
}

/// `max_c |counts[c] / |G|² − p(c)|`. The target must be a probability
/// vector that is constant on Aut-orbits.
pub fn distribution_distance(
    d: &WordDistribution,
    p: &[f64],
    elem_orbits: &OrbitPartition,
) -> Result<f64> {
    if p.len() != d.counts.len() {
        return Err(Error::InvalidInput(
            "target length differs from group order".into(),
        ));
    }
    if p.iter().any(|&x| x.is_nan() || x < 0.0) || (p.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidInput(
            "target is not a probability vector".into(),
        ));
    }
    for (c, &x) in p.iter().enumerate() {
        let rep = elem_orbits.reps[elem_orbits.orbit_of(c as u32) as usize];
        if (x - p[rep as usize]).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "target is not Aut-invariant at element {c}"
            )));
        }
    }
    let total = d.total() as f64;
    Ok(d.counts
        .iter()
        .zip(p)
        .map(|(&c, &x)| (c as f64 / total - x).abs())
        .fold(0.0, f64::max))
}

/// Everything recorded for one realized image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageRecord {
    pub signature: OrbitMask,
    pub size: u64,
    pub min_word: Word,
    pub words_found: u64,
}

impl ImageRecord {
    pub fn min_length(&self) -> usize {
        self.min_word.len()
    }
}

/// The word closest to detecting generation: fewest pairs where
/// `w(a, b) ≠ e` disagrees with `⟨a, b⟩ = G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationProbe {
    pub word: Word,
    pub violations: u64,
    /// Words (classes) with zero violations.
    pub exact: u64,
}

/// The word whose distribution is closest to uniform.
#[derive(Clone, Debug, PartialEq)]
pub struct UniformProbe {
    pub word: Word,
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Census {
    pub maxlen: usize,
    pub records: BTreeMap<OrbitMask, ImageRecord>,
    pub classes_searched: u64,
    pub tasks_total: usize,
    /// First task not yet searched; `None` when the census is complete.
    pub next_task: Option<usize>,
    pub generation_probe: Option<GenerationProbe>,
    pub uniform_probe: Option<UniformProbe>,
}

impl Census {
    pub fn is_complete(&self) -> bool {
        self.next_task.is_none()
    }

    fn empty(maxlen: usize, tasks_total: usize) -> Self {
        Census {
            maxlen,
            records: BTreeMap::new(),
            classes_searched: 0,
            tasks_total,
            next_task: Some(0),
            generation_probe: None,
            uniform_probe: None,
        }
    }

    /// Folds `other` in. Associative, and independent of how the word space
    /// was split: minima use the (length, word) order.
    pub fn merge(&mut self, other: Census) {
        for (sig, rec) in other.records {
            match self.records.get_mut(&sig) {
                Some(mine) => {
                    mine.words_found += rec.words_found;
                    if shortlex(&rec.min_word) < shortlex(&mine.min_word) {
                        mine.min_word = rec.min_word;
                    }
                }
                None => {
                    self.records.insert(sig, rec);
                }
            }
        }
        self.classes_searched += other.classes_searched;
        self.generation_probe = match (self.generation_probe.take(), other.generation_probe) {
            (Some(a), Some(b)) => {
                let exact = a.exact + b.exact;
                let mut best =
                    if (b.violations, shortlex(&b.word)) < (a.violations, shortlex(&a.word)) {
                        b
                    } else {
                        a
                    };
                best.exact = exact;
                Some(best)
            }
            (a, b) => a.or(b),
        };
        self.uniform_probe = match (self.uniform_probe.take(), other.uniform_probe) {
            (Some(a), Some(b)) => {
                let b_better = b.deviation < a.deviation
                    || (b.deviation == a.deviation && shortlex(&b.word) < shortlex(&a.word));
                Some(if b_better { b } else { a })
            }
            (a, b) => a.or(b),
        };
    }
}

fn shortlex(w: &Word) -> (usize, &Word) {
    (w.len(), w)
}

#[derive(Clone, Debug, Default)]
pub struct CensusOptions {
    pub maxlen: usize,
    pub budget: Option<Duration>,
    /// Task to start from; earlier tasks are assumed already searched.
    pub resume_from: usize,
}

/// Largest length up to 12 whose search stays within a fixed number of
/// representative evaluations; 12 for `A₅`, smaller as `|G|²` grows.
pub fn default_maxlen(ctx: &SearchContext) -> usize {
    let reps = ctx.num_reps() as f64;
    (1..=12)
        .rev()
        .find(|&l| 3f64.powi(l as i32 - 1) * reps <= DEFAULT_EVAL_BUDGET)
        .unwrap_or(1)
}

/// Task 0 covers words shorter than the split depth; task `k ≥ 1` covers
/// the subtree below the `k`-th reduced prefix of that length.
pub fn census_tasks(maxlen: usize) -> Vec<Vec<Letter>> {
    let d = SPLIT_DEPTH.min(maxlen);
    let mut out = vec![Vec::new()];
    fn go(prefix: &mut Vec<Letter>, d: usize, out: &mut Vec<Vec<Letter>>) {
        if prefix.len() == d {
            out.push(prefix.clone());
            return;
        }
        let last = *prefix.last().expect("non-empty");
        for l in Letter::ALL {
            if l != last.inverse() {
                prefix.push(l);
                go(prefix, d, out);
                prefix.pop();
            }
        }
    }
    if maxlen >= 1 {
        go(&mut vec![Letter::X], d, &mut out);
    }
    out
}

/// Searches every canonical class up to `maxlen` and records which images
/// occur, with the shortest word for each. Every recorded image is checked
/// against the two necessary conditions; a failure is an error.
pub fn census(
    g: &GroupTable,
    aut: &AutGroup,
    ctx: &SearchContext,
    opts: &CensusOptions,
) -> Result<Census> {
    if opts.maxlen == 0 {
        return Err(Error::InvalidInput("maxlen must be at least 1".into()));
    }
    let tasks = census_tasks(opts.maxlen);
    let mut total = Census::empty(opts.maxlen, tasks.len());
    let start = Instant::now();
    let chunk = rayon::current_num_threads().max(1);
    let mut next = opts.resume_from.min(tasks.len());
    while next < tasks.len() {
        if let Some(budget) = opts.budget {
            if start.elapsed() >= budget {
                break;
            }
        }
        let end = (next + chunk).min(tasks.len());
        let parts: Vec<Census> = (next..end)
            .into_par_iter()
            .map(|t| run_task(g, ctx, opts.maxlen, t, &tasks[t]))
            .collect();
        for p in parts {
            total.merge(p);
        }
        next = end;
    }
    total.next_task = (next < tasks.len()).then_some(next);

    for rec in total.records.values() {
        let set = CandidateSet::new(g, ctx.mask_members(rec.signature))?;
        if let Err(why) = check_conditions(aut, &set) {
            return Err(Error::Inconsistency(format!(
                "image of {} fails the necessary conditions: {why}",
                rec.min_word
            )));
        }
    }
    Ok(total)
}

struct TaskState<'a> {
    g: &'a GroupTable,
    ctx: &'a SearchContext,
    maxlen: usize,
    letters: Vec<Letter>,
    // vals[k * reps .. (k + 1) * reps] holds the prefix of length k evaluated
    vals: Vec<ElemId>,
    census: Census,
}

fn run_task(
    g: &GroupTable,
    ctx: &SearchContext,
    maxlen: usize,
    task: usize,
    prefix: &[Letter],
) -> Census {
    let reps = ctx.num_reps();
    let mut st = TaskState {
        g,
        ctx,
        maxlen,
        letters: Vec::with_capacity(maxlen),
        vals: vec![IDENTITY; (maxlen + 1) * reps],
        census: Census::empty(maxlen, 0),
    };
    if task == 0 {
        // Words shorter than the split depth.
        let limit = SPLIT_DEPTH.min(maxlen) - 1;
        if limit >= 1 {
            st.push(Letter::X);
            st.dfs(limit);
        }
    } else {
        for &l in prefix {
            st.push(l);
        }
        st.dfs(maxlen);
    }
    st.census.next_task = None;
    st.census
}

impl TaskState<'_> {
    fn push(&mut self, l: Letter) {
        let reps = self.ctx.num_reps();
        let k = self.letters.len();
        let (lo, hi) = self.vals.split_at_mut((k + 1) * reps);
        let prev = &lo[k * reps..];
        let lv = &self.ctx.letter_vals[l.index() as usize];
        for ((out, &p), &x) in hi[..reps].iter_mut().zip(prev).zip(lv) {
            *out = self.g.mul(p, x);
        }
        self.letters.push(l);
    }

    fn dfs(&mut self, limit: usize) {
        if is_visitable(&self.letters) {
            self.visit();
        }
        if self.letters.len() >= limit.min(self.maxlen) {
            return;
        }
        let last = *self.letters.last().expect("non-empty");
        for l in Letter::ALL {
            if l != last.inverse() {
                self.push(l);
                self.dfs(limit);
                self.letters.pop();
            }
        }
    }

    fn visit(&mut self) {
        let reps = self.ctx.num_reps();
        let k = self.letters.len();
        let vals = &self.vals[k * reps..(k + 1) * reps];
        let ctx = self.ctx;
        let mut mask: OrbitMask = 0;
        let mut violations = 0u64;
        let mut per_orbit = [0u64; 64];
        for (r, &v) in vals.iter().enumerate() {
            let o = ctx.elem_orbit[v as usize];
            mask |= 1 << o;
            per_orbit[o as usize] += ctx.rep_size[r];
            if (v != IDENTITY) != ctx.rep_generating[r] {
                violations += ctx.rep_size[r];
            }
        }
        let nn = (ctx.n * ctx.n) as f64;
        let uniform = 1.0 / ctx.n as f64;
        let deviation = ctx
            .elem_orbit_size
            .iter()
            .zip(&per_orbit)
            .map(|(&t, &c)| (c as f64 / t as f64 / nn - uniform).abs())
            .fold(0.0, f64::max);

        let c = &mut self.census;
        c.classes_searched += 1;
        let word = Word::from(self.letters.clone());
        match c.records.get_mut(&mask) {
            Some(rec) => {
                rec.words_found += 1;
                if shortlex(&word) < shortlex(&rec.min_word) {
                    rec.min_word = word.clone();
                }
            }
            None => {
                c.records.insert(
                    mask,
                    ImageRecord {
                        signature: mask,
                        size: ctx.mask_size(mask),
                        min_word: word.clone(),
                        words_found: 1,
                    },
                );
            }
        }
        let exact = (violations == 0) as u64;
        match &mut c.generation_probe {
            Some(p) => {
                p.exact += exact;
                if (violations, shortlex(&word)) < (p.violations, shortlex(&p.word)) {
                    p.violations = violations;
                    p.word = word.clone();
                }
            }
            None => {
                c.generation_probe = Some(GenerationProbe {
                    word: word.clone(),
                    violations,
                    exact,
                })
            }
        }
        match &mut c.uniform_probe {
            Some(p)
                if deviation > p.deviation
                    || (deviation == p.deviation && shortlex(&word) >= shortlex(&p.word)) => {}
            _ => c.uniform_probe = Some(UniformProbe { word, deviation }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aut::{compute_automorphisms, orbits_on_elements};
    use crate::group::build_group;
    use crate::pairs::classify_pairs;
    use crate::spec::{GroupSpec, DEFAULT_ORDER_CAP};
    use std::collections::BTreeSet;

    struct Fx {
        g: GroupTable,
        aut: AutGroup,
        orbits: OrbitPartition,
        ctx: SearchContext,
    }

    fn a5() -> Fx {
        let g = build_group(&GroupSpec::alternating(5), DEFAULT_ORDER_CAP).unwrap();
        let aut = compute_automorphisms(&g).unwrap();
        let orbits = orbits_on_elements(&g, &aut);
        let pc = classify_pairs(&g, &aut).unwrap();
        let ctx = SearchContext::new(&g, &orbits, &pc).unwrap();
        Fx {
            g,
            aut,
            orbits,
            ctx,
        }
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Every freely reduced word of length `len`, by brute force over all
    /// letter strings.
    fn reduced_words(len: usize) -> Vec<Vec<Letter>> {
        let mut out = Vec::new();
        for code in 0..4usize.pow(len as u32) {
            let letters: Vec<Letter> = (0..len)
                .map(|i| Letter::from_index((code >> (2 * i)) as u8 & 3))
                .collect();
            if letters.windows(2).all(|p| p[1] != p[0].inverse()) {
                out.push(letters);
            }
        }
        out
    }

    #[test]
    fn reduced_word_counts() {
        for k in 1..=6 {
            assert_eq!(reduced_words(k).len(), 4 * 3usize.pow(k as u32 - 1));
        }
    }

    #[test]
    fn classes_cover_cyclic_words_exactly_once() {
        let classes = enumerate_canonical(6);
        let mut seen = BTreeSet::new();
        for c in &classes {
            assert!(c.representative.is_canonical());
            for m in c.members() {
                assert!(seen.insert(m), "member listed twice");
            }
        }
        let mut expected = BTreeSet::new();
        for k in 1..=6 {
            for letters in reduced_words(k) {
                let word = Word::from(letters);
                if word.is_cyclically_reduced() {
                    expected.insert(word);
                }
            }
        }
        assert_eq!(seen, expected);
    }

    #[test]
    fn single_letters_form_one_class() {
        let classes = enumerate_canonical(1);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].representative, w("x"));
    }

    #[test]
    fn basic_images() {
        let fx = a5();
        assert_eq!(image_of(&fx.g, &fx.ctx, &w("x")).len(), 60);
        assert_eq!(image_of(&fx.g, &fx.ctx, &w("x").power(30)), vec![IDENTITY]);
        assert_eq!(image_of(&fx.g, &fx.ctx, &Word::commutator()).len(), 60);
        let squares = image_of(&fx.g, &fx.ctx, &w("xx"));
        assert_eq!(squares.len(), 45);
        assert!(squares.iter().all(|&e| fx.g.element_order(e) != 2));
    }

    #[test]
    fn orbit_images_match_naive() {
        let fx = a5();
        for s in ["xyxY", "xxyyXY", "xyyxYYxY", "xxxyy"] {
            assert_eq!(
                image_of(&fx.g, &fx.ctx, &w(s)),
                image_of_naive(&fx.g, &w(s)),
                "{s}"
            );
        }
    }

    #[test]
    fn census_up_to_length_two() {
        let fx = a5();
        let c = census(
            &fx.g,
            &fx.aut,
            &fx.ctx,
            &CensusOptions {
                maxlen: 2,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(c.is_complete());
        // x, xx, xy
        assert_eq!(c.classes_searched, 3);
        let full = c.records.values().find(|r| r.size == 60).unwrap();
        assert_eq!(full.min_word, w("x"));
        assert_eq!(full.min_length(), 1);
        assert!(c
            .records
            .values()
            .any(|r| r.size == 45 && r.min_word == w("xx")));
    }

    #[test]
    fn census_is_split_invariant() {
        let fx = a5();
        let opts = CensusOptions {
            maxlen: 7,
            ..Default::default()
        };
        let whole = census(&fx.g, &fx.aut, &fx.ctx, &opts).unwrap();
        assert_eq!(
            whole.classes_searched as usize,
            enumerate_canonical(7).len()
        );

        let tasks = census_tasks(7).len();
        let mut pieces = Census::empty(7, tasks);
        for t in 0..tasks {
            let prefix = &census_tasks(7)[t];
            pieces.merge(run_task(&fx.g, &fx.ctx, 7, t, prefix));
        }
        pieces.next_task = None;
        assert_eq!(pieces, whole);
    }

    #[test]
    fn zero_budget_gives_partial_census() {
        let fx = a5();
        let opts = CensusOptions {
            maxlen: 6,
            budget: Some(Duration::ZERO),
            resume_from: 0,
        };
        let c = census(&fx.g, &fx.aut, &fx.ctx, &opts).unwrap();
        assert!(!c.is_complete());
        assert_eq!(c.next_task, Some(0));
        let resumed = census(
            &fx.g,
            &fx.aut,
            &fx.ctx,
            &CensusOptions {
                maxlen: 6,
                budget: None,
                resume_from: 0,
            },
        )
        .unwrap();
        assert!(resumed.is_complete());
    }

    #[test]
    fn distributions() {
        let fx = a5();
        let d = distribution(&fx.g, &fx.ctx, &w("x")).unwrap();
        assert!(d.counts.iter().all(|&c| c == 60));
        let d = distribution(&fx.g, &fx.ctx, &Word::empty()).unwrap();
        assert_eq!(d.counts[0], 3600);
        let uniform = vec![1.0 / 60.0; 60];
        let dev = distribution_distance(&d, &uniform, &fx.orbits).unwrap();
        assert!((dev - (1.0 - 1.0 / 60.0)).abs() < 1e-12);

        let d = distribution(&fx.g, &fx.ctx, &Word::commutator()).unwrap();
        assert_eq!(d, distribution_naive(&fx.g, &Word::commutator()));
        assert_eq!(d.total(), 3600);
    }

    #[test]
    fn distance_rejects_bad_targets() {
        let fx = a5();
        let d = distribution(&fx.g, &fx.ctx, &w("x")).unwrap();
        assert_eq!(
            distribution_distance(&d, &vec![1.0 / 60.0; 60], &fx.orbits).unwrap(),
            0.0
        );
        assert!(distribution_distance(&d, &vec![1.0 / 50.0; 60], &fx.orbits).is_err());
        let mut skewed = vec![0.0; 60];
        skewed[1] = 1.0;
        assert!(distribution_distance(&d, &skewed, &fx.orbits).is_err());
    }

    #[test]
    fn default_maxlen_for_a5_is_twelve() {
        assert_eq!(default_maxlen(&a5().ctx), 12);
    }
}
