//! Subgroups up to conjugacy, built by cyclic extension.
//!
//! Starting from the trivial subgroup, every class representative `H` is
//! extended by every cyclic subgroup of prime-power order not contained in
//! it. Every subgroup is generated by its prime-power-order cyclic
//! subgroups, and conjugating a join conjugates its parts, so processing
//! one representative per class reaches every class.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::group::{ElemSet, ElementTable, PermGroup, SubgroupRef};
use crate::perm::Perm;
use crate::primes::{factorize, PrimeSet};

pub struct SubgroupClass {
    pub id: usize,
    pub order: u64,
    pub class_size: u64,
    pub nilpotent: bool,
    pub solvable: bool,
    pub rep_set: ElemSet,
    pub rep_generators: Vec<Perm>,
    /// Every subgroup in the class.
    pub members: Vec<ElemSet>,
    rep_group: OnceLock<Arc<PermGroup>>,
    degree: usize,
    limits: crate::group::Limits,
}

impl std::fmt::Debug for SubgroupClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SubgroupClass#{}(order {}, size {}, gens {:?})", self.id, self.order, self.class_size, self.rep_generators)
    }
}

impl SubgroupClass {
    pub fn is_sigma_group(&self, sigma: &PrimeSet) -> bool {
        sigma.is_sigma_number(self.order)
    }

    pub fn representative(&self, parent: &Arc<PermGroup>) -> SubgroupRef {
        parent.subgroup_from_set(self.rep_set.clone())
    }

    /// The representative as a standalone group (cached, so its tables are reused).
    pub fn rep_group(&self) -> Arc<PermGroup> {
        self.rep_group
            .get_or_init(|| {
                PermGroup::with_limits(self.degree, self.rep_generators.clone(), self.limits).expect("valid generators")
            })
            .clone()
    }

    pub fn normalizer_order(&self, group_order: u64) -> u64 {
        group_order / self.class_size
    }
}

pub struct SubgroupLattice {
    pub classes: Vec<SubgroupClass>,
    lookup: HashMap<ElemSet, usize>,
}

impl SubgroupLattice {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of_set(&self, set: &ElemSet) -> Option<usize> {
        self.lookup.get(set).copied()
    }

    /// Total number of subgroups.
    pub fn subgroup_count(&self) -> u64 {
        self.classes.iter().map(|c| c.class_size).sum()
    }

    pub fn all_subgroups(&self) -> impl Iterator<Item = (usize, &ElemSet)> {
        self.classes.iter().flat_map(|c| c.members.iter().map(move |m| (c.id, m)))
    }
}

fn conjugacy_orbit(t: &ElementTable, maps: &[Vec<u32>], set: &ElemSet) -> Vec<ElemSet> {
    let mut orbit = vec![set.clone()];
    let mut seen: HashMap<ElemSet, ()> = HashMap::from([(set.clone(), ())]);
    let mut i = 0;
    while i < orbit.len() {
        for m in maps {
            let c = t.conjugate_set_by_map(&orbit[i], m);
            if !seen.contains_key(&c) {
                seen.insert(c.clone(), ());
                orbit.push(c);
            }
        }
        i += 1;
    }
    orbit
}

fn is_prime_power(n: u64) -> bool {
    n > 1 && factorize(n).len() == 1
}

impl PermGroup {
    pub fn subgroup_lattice(&self) -> Result<Arc<SubgroupLattice>> {
        if let Some(l) = self.lattice.get() {
            return Ok(l.clone());
        }
        self.check_bound("subgroup lattice", self.limits().lattice)?;
        let t = self.elements()?;
        let gens: Vec<usize> = self.generators().iter().map(|g| t.index_of(g).expect("generator")).collect();
        let maps: Vec<Vec<u32>> = gens.iter().map(|&g| t.conjugation_map(g)).collect();

        let mut zuppos: Vec<(usize, ElemSet)> = Vec::new();
        let mut zseen: HashMap<ElemSet, ()> = HashMap::new();
        for x in 1..t.len() {
            if is_prime_power(t.order_of(x)) {
                let z = t.closure(&[x]);
                if zseen.insert(z.clone(), ()).is_none() {
                    zuppos.push((x, z));
                }
            }
        }

        let mut lookup: HashMap<ElemSet, usize> = HashMap::new();
        let mut raw: Vec<Vec<ElemSet>> = Vec::new();
        let trivial = t.singleton(0);
        lookup.insert(trivial.clone(), 0);
        raw.push(vec![trivial]);
        let mut i = 0;
        while i < raw.len() {
            let h = raw[i][0].clone();
            for (z, zset) in &zuppos {
                if zset.is_subset(&h) {
                    continue;
                }
                let mut k = h.clone();
                t.extend_closure(&mut k, &[*z]);
                if lookup.contains_key(&k) {
                    continue;
                }
                let id = raw.len();
                let orbit = conjugacy_orbit(&t, &maps, &k);
                for m in &orbit {
                    lookup.insert(m.clone(), id);
                }
                raw.push(orbit);
            }
            i += 1;
        }

        // canonical order: by subgroup order, then by the least member's element list
        for orbit in raw.iter_mut() {
            orbit.sort_by(|a, b| a.ones().cmp(b.ones()));
        }
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by(|&a, &b| {
            let (sa, sb) = (&raw[a][0], &raw[b][0]);
            sa.count_ones(..).cmp(&sb.count_ones(..)).then_with(|| sa.ones().cmp(sb.ones()))
        });
        let mut classes = Vec::with_capacity(raw.len());
        let mut lookup = HashMap::new();
        for (new_id, &old) in order.iter().enumerate() {
            let members = std::mem::take(&mut raw[old]);
            let rep = members[0].clone();
            for m in &members {
                lookup.insert(m.clone(), new_id);
            }
            let rep_generators = t.generators_of(&rep).into_iter().map(|g| t.get(g).clone()).collect();
            classes.push(SubgroupClass {
                id: new_id,
                order: rep.count_ones(..) as u64,
                class_size: members.len() as u64,
                nilpotent: t.set_is_nilpotent(&rep),
                solvable: t.set_is_solvable(&rep),
                rep_set: rep,
                rep_generators,
                members,
                rep_group: OnceLock::new(),
                degree: self.degree(),
                limits: self.limits(),
            });
        }
        let lattice = SubgroupLattice { classes, lookup };
        let _ = self.lattice.set(Arc::new(lattice));
        Ok(self.lattice.get().expect("set").clone())
    }

    /// Class index of a subgroup of this group.
    pub fn subgroup_class_of(self: &Arc<Self>, h: &SubgroupRef) -> Result<usize> {
        let h = self.own(h)?;
        let lat = self.subgroup_lattice()?;
        lat.class_of_set(h.members())
            .ok_or_else(|| Error::Consistency("subgroup missing from lattice".into()))
    }

    pub fn are_conjugate(self: &Arc<Self>, a: &SubgroupRef, b: &SubgroupRef) -> Result<bool> {
        Ok(self.subgroup_class_of(a)? == self.subgroup_class_of(b)?)
    }

    /// Classes whose representatives are nilpotent σ-groups.
    pub fn nilpotent_sigma_subgroup_classes(&self, sigma: &PrimeSet) -> Result<Vec<usize>> {
        let lat = self.subgroup_lattice()?;
        Ok(lat.classes.iter().filter(|c| c.nilpotent && c.is_sigma_group(sigma)).map(|c| c.id).collect())
    }

    /// The unique class of self-normalizing nilpotent subgroups of a solvable group.
    pub fn carter_subgroups(&self) -> Result<usize> {
        if !self.structure_flags().is_solvable {
            return Err(Error::Precondition("Carter subgroups need a solvable group".into()));
        }
        let lat = self.subgroup_lattice()?;
        let found: Vec<usize> = lat.classes.iter().filter(|c| c.nilpotent && c.class_size * c.order == self.order()).map(|c| c.id).collect();
        match found.as_slice() {
            [one] => Ok(*one),
            _ => Err(Error::Consistency(format!("found {} classes of Carter subgroups", found.len()))),
        }
    }

    /// Hall σ-subgroup, found among the subgroup classes of order `|G|_σ`.
    pub fn hall_sigma_subgroup(self: &Arc<Self>, sigma: &PrimeSet) -> Result<SubgroupRef> {
        if !self.is_sigma_separable(sigma)? {
            return Err(Error::Precondition(format!("{} is not {sigma}-separable", self.name())));
        }
        self.hall_subgroup_any(sigma)
            .and_then(|h| h.ok_or_else(|| Error::Consistency(format!("no Hall {sigma}-subgroup found"))))
    }

    /// A subgroup of order `|G|_σ` if one exists, without a separability check.
    pub fn hall_subgroup_any(self: &Arc<Self>, sigma: &PrimeSet) -> Result<Option<SubgroupRef>> {
        let target = sigma.part_of(self.order());
        let lat = self.subgroup_lattice()?;
        Ok(lat.classes.iter().find(|c| c.order == target).map(|c| c.representative(self)))
    }
}

/// `R` is nilpotent and self-normalizing in `Q`.
pub fn is_carter_in(r: &SubgroupRef, q: &SubgroupRef) -> Result<bool> {
    if !Arc::ptr_eq(r.parent(), q.parent()) {
        return Err(Error::Precondition("subgroups live in different parents".into()));
    }
    if !r.is_subgroup_of(q) {
        return Err(Error::Precondition("R is not contained in Q".into()));
    }
    let t = r.parent().elements()?;
    Ok(set_is_carter_in(&t, r.members(), q.members()))
}

pub fn set_is_carter_in(t: &ElementTable, r: &ElemSet, q: &ElemSet) -> bool {
    t.set_is_nilpotent(r) && t.normalizer_in(q, r).count_ones(..) == r.count_ones(..)
}

/// A σ′-subgroup class together with one member that contains `R` as a Carter subgroup.
#[derive(Clone, Debug)]
pub struct FiberEntry {
    pub class_id: usize,
    pub witness: ElemSet,
}

/// σ′-subgroup classes having a member `Q ⊇ R` in which `R` is a Carter subgroup.
pub fn carter_fiber(g: &Arc<PermGroup>, sigma: &PrimeSet, r: &SubgroupRef) -> Result<Vec<FiberEntry>> {
    let r = g.own(r)?;
    if !r.is_nilpotent() {
        return Err(Error::Precondition("R is not nilpotent".into()));
    }
    if !sigma.is_sigma_prime_number(r.order()) {
        return Err(Error::Precondition(format!("R is not a {sigma}′-group")));
    }
    let t = g.elements()?;
    let lat = g.subgroup_lattice()?;
    let mut out = Vec::new();
    for c in &lat.classes {
        if !sigma.is_sigma_prime_number(c.order) || c.order % r.order() != 0 {
            continue;
        }
        if let Some(w) = c.members.iter().find(|m| r.members().is_subset(m) && set_is_carter_in(&t, r.members(), m)) {
            out.push(FiberEntry { class_id: c.id, witness: w.clone() });
        }
    }
    Ok(out)
}

/// Brute-force subgroup enumeration: close the set of cyclic subgroups under pairwise joins.
pub fn brute_force_subgroups(t: &ElementTable) -> Vec<ElemSet> {
    let mut seen: HashMap<ElemSet, ()> = HashMap::new();
    let mut all: Vec<ElemSet> = Vec::new();
    for x in 0..t.len() {
        let c = t.closure(&[x]);
        if seen.insert(c.clone(), ()).is_none() {
            all.push(c);
        }
    }
    let cyclic = all.clone();
    let mut i = 0;
    while i < all.len() {
        for c in &cyclic {
            if c.is_subset(&all[i]) {
                continue;
            }
            let mut j = all[i].clone();
            t.extend_closure(&mut j, &t.generators_of(c));
            if seen.insert(j.clone(), ()).is_none() {
                all.push(j);
            }
        }
        i += 1;
    }
    all
}
