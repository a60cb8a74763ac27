//! Finite groups as multiplication tables over element ids.
//!
//! Element `0` is always the identity. Products are read left to right, so
//! `mul(a, b)` is the permutation "apply `a`, then `b`".

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::spec::GroupSpec;
use crate::word::{Letter, Word};

pub type ElemId = u32;

pub const IDENTITY: ElemId = 0;

/// Largest order for which associativity is checked on every triple.
const FULL_ASSOC_CHECK_MAX: usize = 200;
const SAMPLED_TRIPLES: usize = 10_000;

#[derive(Clone, Debug)]
pub struct GroupTable {
    name: String,
    degree: usize,
    elements: Vec<Permutation>,
    mult: Vec<ElemId>,
    inv: Vec<ElemId>,
    orders: Vec<u32>,
    gen_ids: Vec<ElemId>,
    basis: [ElemId; 2],
    // Breadth-first spanning tree over `basis`: `tree_order` lists elements in
    // discovery order; each non-identity g equals parent(g) * basis[letter(g)].
    tree_order: Vec<ElemId>,
    tree_parent: Vec<ElemId>,
    tree_letter: Vec<u8>,
}

impl GroupTable {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn identity(&self) -> ElemId {
        IDENTITY
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, g: ElemId) -> &Permutation {
        &self.elements[g as usize]
    }

    pub fn id_of(&self, p: &Permutation) -> Option<ElemId> {
        self.elements
            .iter()
            .position(|q| q == p)
            .map(|i| i as ElemId)
    }

    #[inline]
    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        self.mult[a as usize * self.elements.len() + b as usize]
    }

    #[inline]
    pub fn inv(&self, g: ElemId) -> ElemId {
        self.inv[g as usize]
    }

    /// Row-major `|G| x |G|` table.
    pub fn mult_table(&self) -> &[ElemId] {
        &self.mult
    }

    pub fn inv_table(&self) -> &[ElemId] {
        &self.inv
    }

    pub fn gen_ids(&self) -> &[ElemId] {
        &self.gen_ids
    }

    /// The generating pair that words in `expr` are written over.
    pub fn basis(&self) -> [ElemId; 2] {
        self.basis
    }

    pub fn element_order(&self, g: ElemId) -> u32 {
        self.orders[g as usize]
    }

    pub fn conj(&self, g: ElemId, by: ElemId) -> ElemId {
        self.mul(self.mul(self.inv(by), g), by)
    }

    pub fn commutator(&self, a: ElemId, b: ElemId) -> ElemId {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order() as ElemId;
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements in breadth-first order over the basis, identity first.
    pub fn tree_order(&self) -> &[ElemId] {
        &self.tree_order
    }

    /// `(parent, letter)` with `g = parent * basis[letter]`; `None` for the identity.
    pub fn tree_edge(&self, g: ElemId) -> Option<(ElemId, usize)> {
        (g != IDENTITY).then(|| {
            (
                self.tree_parent[g as usize],
                self.tree_letter[g as usize] as usize,
            )
        })
    }

    /// Word over the basis `(x, y)` that evaluates to `g`.
    pub fn expr(&self, g: ElemId) -> Word {
        let mut letters = Vec::new();
        let mut cur = g;
        while let Some((p, l)) = self.tree_edge(cur) {
            letters.push(if l == 0 { Letter::X } else { Letter::Y });
            cur = p;
        }
        letters.reverse();
        Word::reduce(letters)
    }

    /// Substitutes `a` for `x` and `b` for `y` and multiplies left to right.
    pub fn evaluate(&self, w: &Word, a: ElemId, b: ElemId) -> ElemId {
        let vals = [a, self.inv(a), b, self.inv(b)];
        w.letters()
            .iter()
            .fold(IDENTITY, |acc, l| self.mul(acc, vals[l.index() as usize]))
    }

    /// Size of the subgroup generated by `gens`, stopping early once it
    /// reaches `stop_at`.
    pub fn subgroup_size(&self, gens: &[ElemId], stop_at: usize) -> usize {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut queue = Vec::with_capacity(n);
        seen[IDENTITY as usize] = true;
        queue.push(IDENTITY);
        let mut head = 0;
        while head < queue.len() {
            let g = queue[head];
            head += 1;
            for &s in gens {
                let h = self.mul(g, s);
                if !seen[h as usize] {
                    seen[h as usize] = true;
                    queue.push(h);
                    if queue.len() >= stop_at {
                        return queue.len();
                    }
                }
            }
        }
        queue.len()
    }

    /// Elements of the subgroup generated by `gens`, sorted.
    pub fn subgroup(&self, gens: &[ElemId]) -> Vec<ElemId> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut queue = vec![IDENTITY];
        seen[IDENTITY as usize] = true;
        let mut head = 0;
        while head < queue.len() {
            let g = queue[head];
            head += 1;
            for &s in gens {
                let h = self.mul(g, s);
                if !seen[h as usize] {
                    seen[h as usize] = true;
                    queue.push(h);
                }
            }
        }
        queue.sort_unstable();
        queue
    }

    /// Conjugacy classes, each sorted, listed by least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<ElemId>> {
        let n = self.order();
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n as ElemId {
            if class_of[start as usize] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            class_of[start as usize] = id;
            let mut members = vec![start];
            let mut head = 0;
            while head < members.len() {
                let g = members[head];
                head += 1;
                for &s in &self.basis {
                    let h = self.conj(g, s);
                    if class_of[h as usize] == u32::MAX {
                        class_of[h as usize] = id;
                        members.push(h);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }

    /// Normal closure of `g`: the subgroup generated by its conjugacy class.
    pub fn normal_closure(&self, g: ElemId) -> Vec<ElemId> {
        let class = self
            .conjugacy_classes()
            .into_iter()
            .find(|c| c.binary_search(&g).is_ok())
            .expect("every element lies in a class");
        self.subgroup(&class)
    }

    /// Checks the tables against the permutations they were built from:
    /// inverses, products, and associativity (every triple up to order 200,
    /// 10⁴ sampled triples above).
    pub fn verify_tables(&self) -> Result<()> {
        let n = self.order();
        for g in 0..n as ElemId {
            if self.mul(self.inv(g), g) != IDENTITY || self.mul(g, self.inv(g)) != IDENTITY {
                return Err(Error::Inconsistency(format!(
                    "inverse of element {g} is wrong"
                )));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let check_product = |a: ElemId, b: ElemId| -> Result<()> {
            let expect = self.element(a).then(self.element(b));
            if *self.element(self.mul(a, b)) != expect {
                return Err(Error::Inconsistency(format!(
                    "table product {a}*{b} is wrong"
                )));
            }
            Ok(())
        };
        if n <= FULL_ASSOC_CHECK_MAX {
            for a in 0..n as ElemId {
                for b in 0..n as ElemId {
                    check_product(a, b)?;
                    let ab = self.mul(a, b);
                    for c in 0..n as ElemId {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Err(Error::Inconsistency(format!(
                                "associativity fails on ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            for _ in 0..SAMPLED_TRIPLES {
                let a = rng.gen_range(0..n as ElemId);
                let b = rng.gen_range(0..n as ElemId);
                let c = rng.gen_range(0..n as ElemId);
                check_product(a, b)?;
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return Err(Error::Inconsistency(format!(
                        "associativity fails on ({a},{b},{c})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Rebuilds a table from a cached element list. The element order must be
    /// the one `build_group` produced.
    pub(crate) fn from_elements(
        name: String,
        elements: Vec<Permutation>,
        gen_ids: Vec<ElemId>,
    ) -> Result<Self> {
        let gens: Vec<Permutation> = gen_ids
            .iter()
            .map(|&g| {
                elements
                    .get(g as usize)
                    .cloned()
                    .ok_or_else(|| Error::Cache(format!("generator id {g} out of range")))
            })
            .collect::<Result<_>>()?;
        let rebuilt = closure(name, &gens, elements.len())?;
        if rebuilt.elements != elements {
            return Err(Error::Cache(
                "element order differs from a fresh build".into(),
            ));
        }
        Ok(rebuilt)
    }
}

/// Builds the multiplication table of the group generated by `spec`.
pub fn build_group(spec: &GroupSpec, order_cap: usize) -> Result<GroupTable> {
    spec.validate(order_cap)?;
    let gens = spec.generators()?;
    let table = closure(spec.name.clone(), &gens, order_cap)?;
    if let Some(expected) = spec.expected_order() {
        if table.order() != expected {
            return Err(Error::Inconsistency(format!(
                "closure found {} elements, family formula gives {expected}",
                table.order()
            )));
        }
    }
    table.verify_tables()?;
    Ok(table)
}

fn closure(name: String, gens: &[Permutation], order_cap: usize) -> Result<GroupTable> {
    let first = gens.first().ok_or(Error::EmptyGenerators)?;
    let degree = first.degree();
    if gens.iter().any(|g| g.degree() != degree) {
        return Err(Error::InvalidInput(
            "generators have different degrees".into(),
        ));
    }
    let k = gens.len();

    // Breadth-first closure under right multiplication by the generators.
    let mut index: HashMap<Permutation, ElemId> = HashMap::new();
    let mut elements = vec![Permutation::identity(degree)];
    index.insert(elements[0].clone(), IDENTITY);
    let mut parent = vec![IDENTITY];
    let mut letter = vec![0u8];
    let mut rmul: Vec<ElemId> = Vec::new();
    let mut head = 0;
    while head < elements.len() {
        let g = elements[head].clone();
        for (s, gen) in gens.iter().enumerate() {
            let h = g.then(gen);
            let id = match index.get(&h) {
                Some(&id) => id,
                None => {
                    if elements.len() >= order_cap {
                        return Err(Error::OrderCapExceeded { cap: order_cap });
                    }
                    let id = elements.len() as ElemId;
                    index.insert(h.clone(), id);
                    elements.push(h);
                    parent.push(head as ElemId);
                    letter.push(s as u8);
                    id
                }
            };
            rmul.push(id);
        }
        head += 1;
    }
    let n = elements.len();
    let gen_ids: Vec<ElemId> = gens.iter().map(|g| index[g]).collect();

    // Full table: since elements were discovered in tree order, the row of a
    // follows from mult[a][g] = mult[a][parent(g)] * gen(letter(g)).
    let mut mult = vec![0 as ElemId; n * n];
    for a in 0..n {
        let row = a * n;
        mult[row] = a as ElemId;
        for g in 1..n {
            let p = mult[row + parent[g] as usize] as usize;
            mult[row + g] = rmul[p * k + letter[g] as usize];
        }
    }
    let mut inv = vec![0 as ElemId; n];
    for a in 0..n {
        let row = &mult[a * n..(a + 1) * n];
        inv[a] = row
            .iter()
            .position(|&x| x == IDENTITY)
            .expect("finite group") as ElemId;
    }

    let mut table = GroupTable {
        name,
        degree,
        elements,
        mult,
        inv,
        orders: Vec::new(),
        gen_ids: gen_ids.clone(),
        basis: [IDENTITY; 2],
        tree_order: Vec::new(),
        tree_parent: Vec::new(),
        tree_letter: Vec::new(),
    };
    table.orders = (0..n as ElemId).map(|g| compute_order(&table, g)).collect();

    let basis = if k == 2 {
        [gen_ids[0], gen_ids[1]]
    } else {
        find_generating_pair(&table)
            .ok_or_else(|| Error::InvalidInput("group is not 2-generated".into()))?
    };
    table.set_basis(basis);
    Ok(table)
}

impl GroupTable {
    fn set_basis(&mut self, basis: [ElemId; 2]) {
        let n = self.order();
        let mut parent = vec![IDENTITY; n];
        let mut letter = vec![0u8; n];
        let mut seen = vec![false; n];
        let mut order = vec![IDENTITY];
        seen[0] = true;
        let mut head = 0;
        while head < order.len() {
            let g = order[head];
            head += 1;
            for (l, &s) in basis.iter().enumerate() {
                let h = self.mul(g, s);
                if !seen[h as usize] {
                    seen[h as usize] = true;
                    parent[h as usize] = g;
                    letter[h as usize] = l as u8;
                    order.push(h);
                }
            }
        }
        debug_assert_eq!(order.len(), n);
        self.basis = basis;
        self.tree_order = order;
        self.tree_parent = parent;
        self.tree_letter = letter;
    }
}

fn compute_order(table: &GroupTable, g: ElemId) -> u32 {
    let mut k = 1;
    let mut cur = g;
    while cur != IDENTITY {
        cur = table.mul(cur, g);
        k += 1;
    }
    k
}

fn find_generating_pair(table: &GroupTable) -> Option<[ElemId; 2]> {
    let n = table.order();
    (0..n as ElemId)
        .flat_map(|a| (0..n as ElemId).map(move |b| [a, b]))
        .find(|&[a, b]| table.subgroup_size(&[a, b], n) == n)
}

/// Outcome of the simplicity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Simplicity {
    Simple,
    /// Abelian groups (including the trivial group) are excluded.
    Abelian,
    /// `element` is the least id whose normal closure is a proper subgroup.
    NotSimple {
        element: ElemId,
        closure_order: usize,
    },
}

impl Simplicity {
    pub fn is_simple(&self) -> bool {
        matches!(self, Simplicity::Simple)
    }
}

/// True iff `g` is nonabelian and every nonidentity normal closure is all of `g`.
pub fn validate_simple(g: &GroupTable) -> Simplicity {
    if g.order() == 1 || g.is_abelian() {
        return Simplicity::Abelian;
    }
    let n = g.order();
    let mut classes = g.conjugacy_classes();
    classes.sort_by_key(|c| c[0]);
    for class in classes.iter().filter(|c| c[0] != IDENTITY) {
        let size = g.subgroup_size(class, n);
        if size < n {
            return Simplicity::NotSimple {
                element: class[0],
                closure_order: size,
            };
        }
    }
    Simplicity::Simple
}
