//! Permutation groups with a certified stabilizer chain, plus an optional
//! enumerated element table used by every desk-scale algorithm.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use fixedbitset::FixedBitSet;
use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::chartab::CharacterTable;
use crate::classes::ClassData;
use crate::error::{Error, Result};
use crate::lattice::SubgroupLattice;
use crate::partial::PartialTable;
use crate::perm::Perm;
use crate::primes::PrimeSet;
use crate::schreier::StabChain;

/// A set of elements, indexed by position in the parent's element table.
pub type ElemSet = FixedBitSet;

/// Size bounds for the enumeration-based algorithms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Element enumeration and conjugacy classes.
    pub elements: u64,
    /// Centralizers and normalizers by enumeration.
    pub normalizer: u64,
    /// Subgroup lattice.
    pub lattice: u64,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits { elements: 100_000, normalizer: 20_000, lattice: 2_000 }
    }
}

const MULT_TABLE_MAX: usize = 1024;

/// Enumerated elements, sorted lexicographically by image list (identity first).
pub struct ElementTable {
    elems: Vec<Perm>,
    index: HashMap<Perm, u32>,
    orders: Vec<u32>,
    inverses: Vec<u32>,
    mult: Option<Vec<u32>>,
}

impl ElementTable {
    fn build(degree: usize, gens: &[Perm]) -> ElementTable {
        let id = Perm::identity(degree);
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        let mut all = Vec::new();
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = &x * g;
                if !seen.contains_key(&y) {
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
            all.push(x);
        }
        all.sort();
        let index: HashMap<Perm, u32> = all.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let orders = all.iter().map(|p| p.order() as u32).collect();
        let inverses = all.iter().map(|p| index[&p.inverse()]).collect();
        let n = all.len();
        let mult = (n <= MULT_TABLE_MAX).then(|| {
            let mut t = vec![0u32; n * n];
            for (i, a) in all.iter().enumerate() {
                for (j, b) in all.iter().enumerate() {
                    t[i * n + j] = index[&(a * b)];
                }
            }
            t
        });
        ElementTable { elems: all, index, orders, inverses, mult }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elems
    }

    pub fn get(&self, i: usize) -> &Perm {
        &self.elems[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    pub fn order_of(&self, i: usize) -> u64 {
        self.orders[i] as u64
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i] as usize
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        match &self.mult {
            Some(t) => t[i * self.elems.len() + j] as usize,
            None => self.index[&(&self.elems[i] * &self.elems[j])] as usize,
        }
    }

    /// `x^-1 y x`.
    pub fn conj(&self, y: usize, x: usize) -> usize {
        self.mul(self.mul(self.inverse(x), y), x)
    }

    pub fn pow(&self, i: usize, e: u64) -> usize {
        let e = e % self.order_of(i);
        let mut acc = 0;
        for _ in 0..e {
            acc = self.mul(acc, i);
        }
        acc
    }

    /// Indices of the permutations `x -> x^-1 y x` for each `y`.
    pub fn conjugation_map(&self, x: usize) -> Vec<u32> {
        (0..self.len()).map(|y| self.conj(y, x) as u32).collect()
    }

    pub fn full_set(&self) -> ElemSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        s.insert_range(..);
        s
    }

    pub fn singleton(&self, i: usize) -> ElemSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        s.insert(i);
        s
    }

    /// Subgroup generated by the given element indices.
    pub fn closure(&self, gens: &[usize]) -> ElemSet {
        let mut set = self.singleton(0);
        self.extend_closure(&mut set, gens);
        set
    }

    /// Grows a subgroup (given as a set) by additional generators.
    pub fn extend_closure(&self, set: &mut ElemSet, extra: &[usize]) {
        let mut gens: Vec<usize> = self.generators_of(set);
        gens.extend(extra.iter().copied().filter(|&g| g != 0));
        let mut queue: Vec<usize> = set.ones().collect();
        for &g in extra {
            if !set.contains(g) {
                set.insert(g);
                queue.push(g);
            }
        }
        while let Some(x) = queue.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !set.contains(y) {
                    set.insert(y);
                    queue.push(y);
                }
            }
        }
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators_of(&self, set: &ElemSet) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.singleton(0);
        let mut members: Vec<usize> = set.ones().collect();
        // prefer elements of large order
        members.sort_by(|&a, &b| self.order_of(b).cmp(&self.order_of(a)).then(a.cmp(&b)));
        for x in members {
            if span.contains(x) {
                continue;
            }
            gens.push(x);
            let mut queue: Vec<usize> = span.ones().collect();
            queue.push(x);
            span.insert(x);
            while let Some(y) = queue.pop() {
                for &g in &gens {
                    let z = self.mul(y, g);
                    if !span.contains(z) {
                        span.insert(z);
                        queue.push(z);
                    }
                }
            }
            if span.count_ones(..) == set.count_ones(..) {
                break;
            }
        }
        gens
    }

    pub fn conjugate_set(&self, set: &ElemSet, x: usize) -> ElemSet {
        let mut out = FixedBitSet::with_capacity(self.len());
        for y in set.ones() {
            out.insert(self.conj(y, x));
        }
        out
    }

    pub fn conjugate_set_by_map(&self, set: &ElemSet, map: &[u32]) -> ElemSet {
        let mut out = FixedBitSet::with_capacity(self.len());
        for y in set.ones() {
            out.insert(map[y] as usize);
        }
        out
    }

    /// `{x : H^x = H}`, testing generators only.
    pub fn normalizer_of(&self, set: &ElemSet) -> ElemSet {
        let gens = self.generators_of(set);
        let mut out = FixedBitSet::with_capacity(self.len());
        for x in 0..self.len() {
            if gens.iter().all(|&h| set.contains(self.conj(h, x))) {
                out.insert(x);
            }
        }
        out
    }

    /// `{x in within : H^x = H}`.
    pub fn normalizer_in(&self, within: &ElemSet, set: &ElemSet) -> ElemSet {
        let gens = self.generators_of(set);
        let mut out = FixedBitSet::with_capacity(self.len());
        for x in within.ones() {
            if gens.iter().all(|&h| set.contains(self.conj(h, x))) {
                out.insert(x);
            }
        }
        out
    }

    /// `{x in within : x commutes with every element of set}`.
    pub fn centralizer_in(&self, within: &ElemSet, set: &ElemSet) -> ElemSet {
        let gens = self.generators_of(set);
        let mut out = FixedBitSet::with_capacity(self.len());
        for x in within.ones() {
            if gens.iter().all(|&h| self.mul(h, x) == self.mul(x, h)) {
                out.insert(x);
            }
        }
        out
    }

    pub fn is_normal_in(&self, within: &ElemSet, set: &ElemSet) -> bool {
        let gens = self.generators_of(set);
        let wgens = self.generators_of(within);
        wgens.iter().all(|&x| gens.iter().all(|&h| set.contains(self.conj(h, x))))
    }

    /// Normal closure of `set` in `within`.
    pub fn normal_closure_in(&self, within: &ElemSet, set: &ElemSet) -> ElemSet {
        let wgens = self.generators_of(within);
        let mut cur = self.closure(&set.ones().collect::<Vec<_>>());
        loop {
            let gens = self.generators_of(&cur);
            let extra: Vec<usize> = wgens
                .iter()
                .flat_map(|&x| gens.iter().map(move |&h| (h, x)))
                .map(|(h, x)| self.conj(h, x))
                .filter(|&c| !cur.contains(c))
                .collect();
            if extra.is_empty() {
                return cur;
            }
            self.extend_closure(&mut cur, &extra);
        }
    }

    /// `[A, B]` for subgroups given as sets.
    pub fn commutator(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        let ga = self.generators_of(a);
        let gb = self.generators_of(b);
        let mut comms = FixedBitSet::with_capacity(self.len());
        comms.insert(0);
        for &x in &ga {
            for &y in &gb {
                let c = self.mul(self.mul(self.inverse(x), self.inverse(y)), self.mul(x, y));
                comms.insert(c);
            }
        }
        // [A,B] is the normal closure of these commutators in <A,B>
        let mut ab = a.clone();
        self.extend_closure(&mut ab, &gb);
        self.normal_closure_in(&ab, &comms)
    }

    /// Nilpotent iff each Sylow subgroup is normal, i.e. the p-elements number exactly `|H|_p`.
    pub fn set_is_nilpotent(&self, set: &ElemSet) -> bool {
        let n = set.count_ones(..) as u64;
        for p in crate::primes::prime_divisors(n) {
            let part = crate::primes::sigma_part(n, &PrimeSet::new([p]).expect("prime"));
            let count = set.ones().filter(|&x| part.is_multiple_of(self.order_of(x))).count() as u64;
            if count != part {
                return false;
            }
        }
        true
    }

    pub fn set_is_solvable(&self, set: &ElemSet) -> bool {
        let mut cur = set.clone();
        loop {
            if cur.count_ones(..) == 1 {
                return true;
            }
            let next = self.commutator(&cur, &cur);
            if next.count_ones(..) == cur.count_ones(..) {
                return false;
            }
            cur = next;
        }
    }

    pub fn set_perms(&self, set: &ElemSet) -> Vec<Perm> {
        set.ones().map(|i| self.elems[i].clone()).collect()
    }

    pub fn is_subgroup(&self, set: &ElemSet) -> bool {
        if !set.contains(0) {
            return false;
        }
        let gens = self.generators_of(set);
        set.ones().all(|x| gens.iter().all(|&g| set.contains(self.mul(x, g))))
    }
}

/// A finite permutation group.
pub struct PermGroup {
    name: Option<String>,
    degree: usize,
    generators: Vec<Perm>,
    chain: StabChain,
    order: BigUint,
    limits: Limits,
    elements: OnceLock<Arc<ElementTable>>,
    pub(crate) classes: OnceLock<Arc<ClassData>>,
    pub(crate) char_table: OnceLock<Arc<CharacterTable>>,
    pub(crate) lattice: OnceLock<Arc<SubgroupLattice>>,
    pub(crate) normal_subgroups: OnceLock<Arc<Vec<ElemSet>>>,
    pub(crate) partials: Mutex<HashMap<PrimeSet, Arc<PartialTable>>>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    /// Builds the stabilizer chain for `generators` on `degree` points.
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Arc<PermGroup>> {
        PermGroup::with_limits(degree, generators, Limits::default())
    }

    pub fn with_limits(degree: usize, generators: Vec<Perm>, limits: Limits) -> Result<Arc<PermGroup>> {
        PermGroup::build(None, degree, generators, limits)
    }

    fn build(name: Option<String>, degree: usize, generators: Vec<Perm>, limits: Limits) -> Result<Arc<PermGroup>> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch { expected: degree, got: g.degree() });
        }
        let chain = StabChain::new(degree, &generators);
        let order = chain.order();
        Ok(Arc::new(PermGroup {
            name,
            degree,
            generators,
            chain,
            order,
            limits,
            elements: OnceLock::new(),
            classes: OnceLock::new(),
            char_table: OnceLock::new(),
            lattice: OnceLock::new(),
            normal_subgroups: OnceLock::new(),
            partials: Mutex::new(HashMap::new()),
        }))
    }

    /// Convenience constructor from cycle strings.
    pub fn from_cycles(degree: usize, gens: &[&str]) -> Result<Arc<PermGroup>> {
        let gens = gens.iter().map(|g| Perm::parse_cycles(degree, g)).collect::<Result<Vec<_>>>()?;
        PermGroup::new(degree, gens)
    }

    pub fn named(name: &str, degree: usize, generators: Vec<Perm>, limits: Limits) -> Result<Arc<PermGroup>> {
        PermGroup::build(Some(name.to_string()), degree, generators, limits)
    }

    pub fn name(&self) -> &str {
        self.name.as_deref().unwrap_or("G")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.base()
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        self.chain.strong_generators()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.chain.orbit_lengths()
    }

    pub fn order_big(&self) -> &BigUint {
        &self.order
    }

    /// Order as `u64`; panics for groups too large for any desk-scale algorithm.
    pub fn order(&self) -> u64 {
        self.order.to_u64().expect("group order fits in u64")
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain.contains(g)
    }

    pub fn membership_test(&self, g: &Perm) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, got: g.degree() });
        }
        Ok(self.chain.contains(g))
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn check_bound(&self, what: &'static str, bound: u64) -> Result<()> {
        if self.order > BigUint::from(bound) {
            return Err(Error::BoundExceeded {
                what,
                order: self.order.to_u128().unwrap_or(u128::MAX),
                bound: bound as u128,
            });
        }
        Ok(())
    }

    pub fn elements(&self) -> Result<Arc<ElementTable>> {
        if let Some(t) = self.elements.get() {
            return Ok(t.clone());
        }
        self.check_bound("element enumeration", self.limits.elements)?;
        let table = ElementTable::build(self.degree, &self.generators);
        debug_assert_eq!(table.len() as u64, self.order());
        let _ = self.elements.set(Arc::new(table));
        Ok(self.elements.get().expect("just set").clone())
    }

    /// Exponent (lcm of element orders).
    pub fn exponent(&self) -> Result<u64> {
        let t = self.elements()?;
        Ok((0..t.len()).fold(1, |acc, i| num_integer::lcm(acc, t.order_of(i))))
    }

    /// A subgroup generated by `gens` (which must be members).
    pub fn subgroup(self: &Arc<Self>, gens: &[Perm]) -> Result<SubgroupRef> {
        let t = self.elements()?;
        let mut idx = Vec::new();
        for g in gens {
            if g.degree() != self.degree {
                return Err(Error::DegreeMismatch { expected: self.degree, got: g.degree() });
            }
            idx.push(t.index_of(g).ok_or_else(|| Error::Precondition(format!("{g} is not in {}", self.name())))?);
        }
        let set = t.closure(&idx);
        Ok(SubgroupRef::from_set(self.clone(), set))
    }

    pub fn subgroup_from_cycles(self: &Arc<Self>, gens: &[&str]) -> Result<SubgroupRef> {
        let gens = gens.iter().map(|g| Perm::parse_cycles(self.degree, g)).collect::<Result<Vec<_>>>()?;
        self.subgroup(&gens)
    }

    pub fn whole(self: &Arc<Self>) -> Result<SubgroupRef> {
        let t = self.elements()?;
        Ok(SubgroupRef::from_set(self.clone(), t.full_set()))
    }

    pub fn trivial_subgroup(self: &Arc<Self>) -> Result<SubgroupRef> {
        let t = self.elements()?;
        Ok(SubgroupRef::from_set(self.clone(), t.singleton(0)))
    }

    /// Builds a subgroup from an element set; the set must be a subgroup.
    pub fn subgroup_from_set(self: &Arc<Self>, set: ElemSet) -> SubgroupRef {
        SubgroupRef::from_set(self.clone(), set)
    }

    /// Brute-force closure of the generators, independent of the stabilizer chain.
    pub fn brute_force_order(&self) -> u64 {
        let mut seen = std::collections::HashSet::new();
        let id = self.identity();
        seen.insert(id.clone());
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            for g in &self.generators {
                let y = &x * g;
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen.len() as u64
    }
}

/// A subgroup of an enumerated parent group.
#[derive(Clone)]
pub struct SubgroupRef {
    parent: Arc<PermGroup>,
    members: ElemSet,
    generators: Vec<Perm>,
    order: u64,
    group: Arc<OnceLock<Arc<PermGroup>>>,
}

impl fmt::Debug for SubgroupRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, gens {:?})", self.order, self.generators)
    }
}

impl PartialEq for SubgroupRef {
    fn eq(&self, other: &SubgroupRef) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.members == other.members
    }
}

impl SubgroupRef {
    pub fn from_set(parent: Arc<PermGroup>, members: ElemSet) -> SubgroupRef {
        let t = parent.elements().expect("parent is enumerated");
        let generators = t.generators_of(&members).into_iter().map(|i| t.get(i).clone()).collect();
        let order = members.count_ones(..) as u64;
        let group = Arc::new(OnceLock::new());
        if order == parent.order() {
            // the whole group reuses the parent and its cached tables
            let _ = group.set(parent.clone());
        }
        SubgroupRef { parent, members, generators, order, group }
    }

    pub fn parent(&self) -> &Arc<PermGroup> {
        &self.parent
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn index(&self) -> u64 {
        self.parent.order() / self.order
    }

    pub fn contains(&self, g: &Perm) -> bool {
        let t = self.parent.elements().expect("enumerated");
        t.index_of(g).is_some_and(|i| self.members.contains(i))
    }

    pub fn is_subgroup_of(&self, other: &SubgroupRef) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn elements(&self) -> Vec<Perm> {
        let t = self.parent.elements().expect("enumerated");
        t.set_perms(&self.members)
    }

    /// This subgroup as a standalone permutation group (cached).
    pub fn as_group(&self) -> Arc<PermGroup> {
        self.group
            .get_or_init(|| {
                PermGroup::with_limits(self.parent.degree(), self.generators.clone(), self.parent.limits())
                    .expect("generators share the parent degree")
            })
            .clone()
    }

    /// Re-expresses this subgroup inside another enumerated group containing it.
    pub fn reparent(&self, new_parent: &Arc<PermGroup>) -> Result<SubgroupRef> {
        new_parent.subgroup(&self.generators)
    }

    pub fn conjugate(&self, x: &Perm) -> SubgroupRef {
        let t = self.parent.elements().expect("enumerated");
        let xi = t.index_of(x).expect("conjugating element lies in parent");
        SubgroupRef::from_set(self.parent.clone(), t.conjugate_set(&self.members, xi))
    }

    pub fn is_nilpotent(&self) -> bool {
        let t = self.parent.elements().expect("enumerated");
        t.set_is_nilpotent(&self.members)
    }

    pub fn is_solvable(&self) -> bool {
        let t = self.parent.elements().expect("enumerated");
        t.set_is_solvable(&self.members)
    }

    pub fn is_sigma_group(&self, sigma: &PrimeSet) -> bool {
        sigma.is_sigma_number(self.order)
    }

    pub fn is_normal(&self) -> bool {
        let t = self.parent.elements().expect("enumerated");
        t.is_normal_in(&t.full_set(), &self.members)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_match_brute_force() {
        let s3 = PermGroup::from_cycles(3, &["(1,2)", "(1,2,3)"]).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.brute_force_order(), 6);
        let a5 = PermGroup::from_cycles(5, &["(1,2,3,4,5)", "(3,4,5)"]).unwrap();
        assert_eq!(a5.order(), 60);
        assert_eq!(a5.brute_force_order(), 60);
        let triv = PermGroup::new(4, vec![]).unwrap();
        assert_eq!(triv.order(), 1);
    }

    #[test]
    fn membership() {
        let s3 = PermGroup::from_cycles(3, &["(1,2)", "(1,2,3)"]).unwrap();
        assert!(s3.membership_test(&Perm::parse_cycles(3, "(1,2)").unwrap()).unwrap());
        let a5 = PermGroup::from_cycles(5, &["(1,2,3,4,5)", "(3,4,5)"]).unwrap();
        assert!(!a5.membership_test(&Perm::parse_cycles(5, "(1,2)").unwrap()).unwrap());
        assert!(a5.membership_test(&Perm::identity(5)).unwrap());
        assert!(a5.membership_test(&Perm::identity(4)).is_err());
    }

    #[test]
    fn inconsistent_degrees_rejected() {
        let g = PermGroup::new(3, vec![Perm::identity(4)]);
        assert!(matches!(g, Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn element_table_is_sorted_with_identity_first() {
        let s4 = PermGroup::from_cycles(4, &["(1,2)", "(1,2,3,4)"]).unwrap();
        let t = s4.elements().unwrap();
        assert_eq!(t.len(), 24);
        assert!(t.get(0).is_identity());
        assert!(t.elements().windows(2).all(|w| w[0] < w[1]));
        for i in 0..t.len() {
            assert_eq!(t.mul(i, t.inverse(i)), 0);
        }
    }

    #[test]
    fn nilpotency_and_solvability_of_sets() {
        let s4 = PermGroup::from_cycles(4, &["(1,2)", "(1,2,3,4)"]).unwrap();
        let t = s4.elements().unwrap();
        assert!(!t.set_is_nilpotent(&t.full_set()));
        assert!(t.set_is_solvable(&t.full_set()));
        let d8 = s4.subgroup_from_cycles(&["(1,2,3,4)", "(1,3)"]).unwrap();
        assert_eq!(d8.order(), 8);
        assert!(d8.is_nilpotent());
        let a5 = PermGroup::from_cycles(5, &["(1,2,3,4,5)", "(3,4,5)"]).unwrap();
        let t5 = a5.elements().unwrap();
        assert!(!t5.set_is_solvable(&t5.full_set()));
    }
}
