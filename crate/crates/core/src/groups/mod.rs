//! Finite groups materialized from generators.
//!
//! A [`FiniteGroup`] stores every element once in an insertion-ordered hash
//! set, so element `i` has a stable index and membership is O(1). All
//! structural queries work on those indices.

mod iso;
mod perm;

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::OnceLock;

use indexmap::IndexSet;
use serde::Serialize;

use crate::error::{Error, Result};

pub use iso::{isomorphic, verify_isomorphism, IsoOptions, IsoOutcome, IsoWitness};
pub use perm::Perm;

/// Closure bound for matrix and permutation carriers.
pub const MATRIX_CARRIER_LIMIT: usize = 20_000_000;
/// Closure bound for composition-table carriers.
pub const TABLE_CARRIER_LIMIT: usize = 100_000;

/// An element of some carrier group with decidable equality.
pub trait GroupElement: Clone + Eq + Hash + Send + Sync + Debug {
    /// `self · rhs`.
    fn compose(&self, rhs: &Self) -> Self;

    /// Closure bound used by [`FiniteGroup::closure`].
    const DEFAULT_LIMIT: usize = MATRIX_CARRIER_LIMIT;

    /// Permutation carriers expose their point images so quotients can act on
    /// orbits instead of cosets.
    fn as_permutation(&self) -> Option<&Perm> {
        None
    }
}

/// Element of a group given by a composition table; `compose` is looked up in
/// the shared table.
#[derive(Clone, Debug)]
pub struct TableElement {
    pub index: u32,
    pub table: std::sync::Arc<Vec<Vec<u32>>>,
}

impl PartialEq for TableElement {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index
    }
}
impl Eq for TableElement {}

impl Hash for TableElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.index.hash(state)
    }
}

impl GroupElement for TableElement {
    fn compose(&self, rhs: &Self) -> Self {
        TableElement {
            index: self.table[self.index as usize][rhs.index as usize],
            table: self.table.clone(),
        }
    }

    const DEFAULT_LIMIT: usize = TABLE_CARRIER_LIMIT;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Transitivity {
    Intransitive,
    Transitive,
    DoublyTransitive,
}

/// Isomorphism invariants. Equal fingerprints are necessary, not sufficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupFingerprint {
    pub order: usize,
    pub element_order_histogram: BTreeMap<usize, usize>,
    pub conjugacy_class_sizes: Vec<usize>,
    pub abelianization_order: usize,
}

struct Cycles {
    orders: Vec<u32>,
    inverses: Vec<u32>,
}

pub struct FiniteGroup<E: GroupElement> {
    elements: IndexSet<E>,
    generators: Vec<usize>,
    cycles: OnceLock<Cycles>,
    classes: OnceLock<Vec<Vec<usize>>>,
}

impl<E: GroupElement> Clone for FiniteGroup<E> {
    fn clone(&self) -> Self {
        Self {
            elements: self.elements.clone(),
            generators: self.generators.clone(),
            cycles: OnceLock::new(),
            classes: OnceLock::new(),
        }
    }
}

impl<E: GroupElement> Debug for FiniteGroup<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order())
            .field("generators", &self.generators.len())
            .finish()
    }
}

/// Materialize the group generated by `generators` with [`GroupElement::DEFAULT_LIMIT`].
pub fn closure<E: GroupElement>(identity: E, generators: &[E]) -> Result<FiniteGroup<E>> {
    FiniteGroup::closure(identity, generators, E::DEFAULT_LIMIT)
}

impl<E: GroupElement> FiniteGroup<E> {
    /// Breadth-first closure under right multiplication by the generators.
    /// Element 0 is the identity; enumeration order is a function of the
    /// generator order only.
    pub fn closure(identity: E, generators: &[E], limit: usize) -> Result<Self> {
        let mut elements = IndexSet::new();
        elements.insert(identity);
        let mut i = 0;
        while i < elements.len() {
            for g in generators {
                let x = elements[i].compose(g);
                if !elements.contains(&x) {
                    if elements.len() >= limit {
                        return Err(Error::SizeLimit { limit });
                    }
                    elements.insert(x);
                }
            }
            i += 1;
        }
        let generators = generators
            .iter()
            .map(|g| elements.get_index_of(g).expect("generator in closure"))
            .collect();
        Ok(Self {
            elements,
            generators,
            cycles: OnceLock::new(),
            classes: OnceLock::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, i: usize) -> &E {
        &self.elements[i]
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = &E> {
        self.elements.iter()
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.elements.get_index_of(e)
    }

    pub fn contains(&self, e: &E) -> bool {
        self.elements.contains(e)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_elements(&self) -> Vec<E> {
        self.generators.iter().map(|&g| self.elements[g].clone()).collect()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let x = self.elements[a].compose(&self.elements[b]);
        self.elements
            .get_index_of(&x)
            .expect("product escaped a materialized group")
    }

    fn cycles(&self) -> &Cycles {
        self.cycles.get_or_init(|| {
            let n = self.order();
            let mut orders = vec![0u32; n];
            let mut inverses = vec![0u32; n];
            orders[0] = 1;
            for start in 1..n {
                if orders[start] != 0 {
                    continue;
                }
                // powers[k] = start^(k+1)
                let mut powers = vec![start];
                let mut cur = start;
                while cur != 0 {
                    cur = self.mul(cur, start);
                    powers.push(cur);
                }
                let o = powers.len();
                for k in 1..=o {
                    let x = powers[k - 1];
                    if orders[x] == 0 {
                        orders[x] = (o / num_integer::gcd(k, o)) as u32;
                        inverses[x] = if k == o { 0 } else { powers[o - k - 1] as u32 };
                    }
                }
            }
            Cycles { orders, inverses }
        })
    }

    pub fn inv(&self, a: usize) -> usize {
        self.cycles().inverses[a] as usize
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.cycles().orders[a] as usize
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// `g⁻¹ x g`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter()
            .all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn order_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for &o in &self.cycles().orders {
            *h.entry(o as usize).or_insert(0) += 1;
        }
        h
    }

    /// Conjugacy classes, each sorted, listed by smallest member.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        self.classes.get_or_init(|| {
            let n = self.order();
            let mut class_of = vec![u32::MAX; n];
            let mut classes = Vec::new();
            for start in 0..n {
                if class_of[start] != u32::MAX {
                    continue;
                }
                let id = classes.len() as u32;
                class_of[start] = id;
                let mut class = vec![start];
                let mut i = 0;
                while i < class.len() {
                    for &g in &self.generators {
                        let y = self.conjugate(class[i], g);
                        if class_of[y] == u32::MAX {
                            class_of[y] = id;
                            class.push(y);
                        }
                    }
                    i += 1;
                }
                class.sort_unstable();
                classes.push(class);
            }
            classes
        })
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.conjugacy_classes().iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    }

    /// Map from element index to the size of its conjugacy class.
    pub fn class_size_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.order()];
        for c in self.conjugacy_classes() {
            for &x in c {
                out[x] = c.len();
            }
        }
        out
    }

    /// Subgroup generated by the given elements of `self`.
    pub fn subgroup(&self, gens: &[usize]) -> FiniteGroup<E> {
        let gens: Vec<E> = gens.iter().map(|&g| self.elements[g].clone()).collect();
        FiniteGroup::closure(self.elements[0].clone(), &gens, usize::MAX)
            .expect("subgroup bounded by parent")
    }

    /// Subgroup whose element set is exactly `members` (indices into `self`),
    /// with a small generating set picked greedily.
    pub fn subgroup_from_members(&self, members: &[usize]) -> Result<FiniteGroup<E>> {
        let mut gens: Vec<usize> = Vec::new();
        let mut current = self.subgroup(&[]);
        for &m in members {
            if !current.contains(&self.elements[m]) {
                gens.push(m);
                current = self.subgroup(&gens);
            }
        }
        if current.order() != members.len() {
            return Err(Error::InvalidInput(format!(
                "{} elements do not form a subgroup (they generate {})",
                members.len(),
                current.order()
            )));
        }
        Ok(current)
    }

    /// Group whose elements are exactly `members` (which must be closed).
    pub fn from_members(identity: E, members: Vec<E>) -> Result<FiniteGroup<E>> {
        let total = members.len();
        let mut gens: Vec<E> = Vec::new();
        let mut current = FiniteGroup::closure(identity.clone(), &gens, total + 1)?;
        for m in members {
            if !current.contains(&m) {
                gens.push(m);
                current = FiniteGroup::closure(identity.clone(), &gens, total + 1)?;
            }
        }
        if current.order() != total {
            return Err(Error::InvalidInput(format!(
                "{total} members generate a group of order {}",
                current.order()
            )));
        }
        Ok(current)
    }

    /// Indices in `self` of every element of `sub`.
    pub fn embed(&self, sub: &FiniteGroup<E>) -> Option<Vec<usize>> {
        sub.elements.iter().map(|e| self.index_of(e)).collect()
    }

    pub fn center(&self) -> FiniteGroup<E> {
        let members: Vec<usize> = (0..self.order())
            .filter(|&x| {
                self.generators
                    .iter()
                    .all(|&g| self.mul(x, g) == self.mul(g, x))
            })
            .collect();
        self.subgroup_from_members(&members)
            .expect("center is a subgroup")
    }

    /// Smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[usize]) -> FiniteGroup<E> {
        let mut gens: Vec<usize> = seeds.iter().copied().filter(|&s| s != 0).collect();
        let mut n = self.subgroup(&gens);
        loop {
            let mut extra = None;
            'scan: for &s in &gens {
                for &g in &self.generators {
                    let c = self.conjugate(s, g);
                    if !n.contains(&self.elements[c]) {
                        extra = Some(c);
                        break 'scan;
                    }
                }
            }
            match extra {
                Some(c) => {
                    gens.push(c);
                    n = self.subgroup(&gens);
                }
                None => return n,
            }
        }
    }

    pub fn derived_subgroup(&self) -> FiniteGroup<E> {
        let g = &self.generators;
        let comms: Vec<usize> = g
            .iter()
            .enumerate()
            .flat_map(|(i, &a)| g[i + 1..].iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        self.normal_closure(&comms)
    }

    pub fn is_normal(&self, n: &FiniteGroup<E>) -> bool {
        n.elements.iter().all(|e| self.contains(e))
            && n.generators.iter().all(|&s| {
                let s = self.index_of(&n.elements[s]).expect("checked above");
                self.generators
                    .iter()
                    .all(|&g| n.contains(&self.elements[self.conjugate(s, g)]))
            })
    }

    /// `true` iff the normal closure of every nontrivial class is the whole group.
    pub fn is_simple(&self) -> bool {
        if self.order() <= 1 {
            return false;
        }
        self.conjugacy_classes()
            .iter()
            .filter(|c| c[0] != 0)
            .all(|c| self.normal_closure(&[c[0]]).order() == self.order())
    }

    pub fn fingerprint(&self) -> GroupFingerprint {
        GroupFingerprint {
            order: self.order(),
            element_order_histogram: self.order_histogram(),
            conjugacy_class_sizes: self.class_sizes(),
            abelianization_order: self.order() / self.derived_subgroup().order(),
        }
    }

    /// `G/N`. Permutation carriers act on the orbits of `N` when that action is
    /// faithful on the quotient; otherwise `G` acts on the right cosets of `N`.
    pub fn quotient(&self, n: &FiniteGroup<E>) -> Result<FiniteGroup<Perm>> {
        if !self.is_normal(n) {
            return Err(Error::InvalidInput(
                "quotient by a subgroup that is not normal".into(),
            ));
        }
        let target = self.order() / n.order();
        if let Some(q) = self.quotient_on_orbits(n, target) {
            return Ok(q);
        }
        Ok(self.quotient_on_cosets(n))
    }

    fn quotient_on_orbits(&self, n: &FiniteGroup<E>, target: usize) -> Option<FiniteGroup<Perm>> {
        let degree = self.elements[0].as_permutation()?.degree();
        let mut orbit_of = vec![usize::MAX; degree];
        let mut count = 0;
        let n_gens: Vec<&Perm> = n
            .generators
            .iter()
            .map(|&g| n.elements[g].as_permutation().expect("same carrier"))
            .collect();
        for start in 0..degree {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            orbit_of[start] = count;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for p in &n_gens {
                    let y = p.apply(x);
                    if orbit_of[y] == usize::MAX {
                        orbit_of[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        let reps: Vec<usize> = (0..count)
            .map(|o| orbit_of.iter().position(|&x| x == o).expect("nonempty"))
            .collect();
        let induced: Vec<Perm> = self
            .generators
            .iter()
            .map(|&g| {
                let p = self.elements[g].as_permutation().expect("same carrier");
                Perm::from_images(reps.iter().map(|&r| orbit_of[p.apply(r)]).collect())
            })
            .collect();
        let q = FiniteGroup::closure(Perm::identity(count), &induced, target + 1).ok()?;
        (q.order() == target).then_some(q)
    }

    fn quotient_on_cosets(&self, n: &FiniteGroup<E>) -> FiniteGroup<Perm> {
        let total = self.order();
        let mut coset_of = vec![usize::MAX; total];
        let mut reps = Vec::new();
        for x in 0..total {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for e in n.elements.iter() {
                let y = self.index_of(&e.compose(&self.elements[x])).expect("N ⊆ G");
                coset_of[y] = id;
            }
        }
        let induced: Vec<Perm> = self
            .generators
            .iter()
            .map(|&g| Perm::from_images(reps.iter().map(|&r| coset_of[self.mul(r, g)]).collect()))
            .collect();
        FiniteGroup::closure(Perm::identity(reps.len()), &induced, usize::MAX)
            .expect("quotient bounded by parent")
    }

    /// Image of `self` under an element map that is assumed to be a
    /// homomorphism; fails if the image is smaller (map not injective).
    pub fn faithful_image<F: GroupElement>(
        &self,
        identity: F,
        f: impl Fn(&E) -> F,
    ) -> Result<FiniteGroup<F>> {
        let gens: Vec<F> = self.generator_elements().iter().map(&f).collect();
        let img = FiniteGroup::closure(identity, &gens, self.order() + 1)?;
        if img.order() != self.order() {
            return Err(Error::InvalidInput(format!(
                "action not faithful: image order {} vs {}",
                img.order(),
                self.order()
            )));
        }
        Ok(img)
    }

    /// Exhaustive (or, above `exhaustive_limit` elements, generator-wise)
    /// closure audit: every product lands back in the set.
    pub fn audit_closure(&self, exhaustive_limit: usize) -> bool {
        if self.order() <= exhaustive_limit {
            self.elements.iter().all(|a| {
                self.elements
                    .iter()
                    .all(|b| self.contains(&a.compose(b)))
            })
        } else {
            self.elements.iter().all(|a| {
                self.generators
                    .iter()
                    .all(|&g| self.contains(&a.compose(&self.elements[g])))
            })
        }
    }
}

impl FiniteGroup<Perm> {
    pub fn degree(&self) -> usize {
        self.elements[0].degree()
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let gens = self.generator_elements();
        let mut seen = vec![false; self.degree()];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut i = 0;
        while i < orbit.len() {
            for g in &gens {
                let y = g.apply(orbit[i]);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit
    }

    /// Size of the orbit of the ordered pair `(a, b)`.
    pub fn pair_orbit_size(&self, a: usize, b: usize) -> usize {
        let n = self.degree();
        let gens = self.generator_elements();
        let mut seen = vec![false; n * n];
        seen[a * n + b] = true;
        let mut queue = VecDeque::from([(a, b)]);
        let mut count = 1;
        while let Some((x, y)) = queue.pop_front() {
            for g in &gens {
                let (u, v) = (g.apply(x), g.apply(y));
                if !seen[u * n + v] {
                    seen[u * n + v] = true;
                    count += 1;
                    queue.push_back((u, v));
                }
            }
        }
        count
    }

    pub fn transitivity(&self) -> Transitivity {
        let n = self.degree();
        if self.orbit(0).len() != n {
            return Transitivity::Intransitive;
        }
        if n >= 2 && self.pair_orbit_size(0, 1) == n * (n - 1) {
            Transitivity::DoublyTransitive
        } else {
            Transitivity::Transitive
        }
    }

    pub fn point_stabilizer(&self, point: usize) -> FiniteGroup<Perm> {
        let members: Vec<usize> = (0..self.order())
            .filter(|&i| self.elements[i].fixes(point))
            .collect();
        self.subgroup_from_members(&members)
            .expect("stabilizer is a subgroup")
    }
}
