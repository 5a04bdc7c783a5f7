//! Normal structure: series, normal subgroups, σ-radicals, separability and quotients.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{ElemSet, PermGroup, SubgroupRef};
use crate::perm::Perm;
use crate::primes::PrimeSet;
use crate::schreier::StabChain;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureFlags {
    pub is_solvable: bool,
    pub is_nilpotent: bool,
    /// `None` when the derived series does not reach the identity.
    pub derived_length: Option<usize>,
}

fn commutator(a: &Perm, b: &Perm) -> Perm {
    &(&a.inverse() * &b.inverse()) * &(a * b)
}

/// Generators of the normal closure of `<seeds>` under conjugation by `by`.
fn normal_closure_gens(degree: usize, by: &[Perm], seeds: Vec<Perm>) -> (Vec<Perm>, StabChain) {
    let mut gens: Vec<Perm> = seeds.into_iter().filter(|g| !g.is_identity()).collect();
    let mut chain = StabChain::new(degree, &gens);
    let mut i = 0;
    while i < gens.len() {
        let h = gens[i].clone();
        for s in by {
            let c = h.conjugate_by(s);
            if !chain.contains(&c) {
                gens.push(c);
                chain = StabChain::new(degree, &gens);
            }
        }
        i += 1;
    }
    (gens, chain)
}

impl PermGroup {
    /// Derived series `G = G^(0) > G^(1) > ...` until it stabilizes, as generator lists.
    pub fn derived_series(&self) -> Vec<(Vec<Perm>, u64)> {
        let mut series = vec![(self.generators().to_vec(), self.order())];
        loop {
            let (gens, ord) = series.last().expect("nonempty").clone();
            if ord == 1 {
                break;
            }
            let comms: Vec<Perm> =
                gens.iter().flat_map(|a| gens.iter().map(move |b| commutator(a, b))).collect();
            let (next, chain) = normal_closure_gens(self.degree(), &gens, comms);
            let next_ord: u64 = chain.order().try_into().expect("fits");
            if next_ord == ord {
                break;
            }
            series.push((next, next_ord));
        }
        series
    }

    /// Lower central series orders.
    pub fn lower_central_orders(&self) -> Vec<u64> {
        let mut orders = vec![self.order()];
        let mut gens = self.generators().to_vec();
        loop {
            let comms: Vec<Perm> =
                gens.iter().flat_map(|h| self.generators().iter().map(move |s| commutator(h, s))).collect();
            let (next, chain) = normal_closure_gens(self.degree(), self.generators(), comms);
            let ord: u64 = chain.order().try_into().expect("fits");
            if ord == *orders.last().expect("nonempty") {
                break;
            }
            orders.push(ord);
            if ord == 1 {
                break;
            }
            gens = next;
        }
        orders
    }

    pub fn structure_flags(&self) -> StructureFlags {
        let derived = self.derived_series();
        let solvable = derived.last().map(|d| d.1) == Some(1);
        let nilpotent = self.lower_central_orders().last() == Some(&1);
        StructureFlags {
            is_solvable: solvable,
            is_nilpotent: nilpotent,
            derived_length: solvable.then(|| derived.len() - 1),
        }
    }

    /// All normal subgroups as element sets, ordered by size then lexicographically.
    ///
    /// Every normal subgroup is a product of normal closures of class representatives.
    pub fn normal_subgroup_sets(&self) -> Result<Arc<Vec<ElemSet>>> {
        if let Some(n) = self.normal_subgroups.get() {
            return Ok(n.clone());
        }
        let t = self.elements()?;
        let cd = self.class_data()?;
        let full = t.full_set();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut sets: Vec<ElemSet> = Vec::new();
        let push = |s: ElemSet, found: &mut BTreeSet<Vec<usize>>, sets: &mut Vec<ElemSet>| {
            if found.insert(s.ones().collect()) {
                sets.push(s);
                true
            } else {
                false
            }
        };
        push(t.singleton(0), &mut found, &mut sets);
        let mut atoms = Vec::new();
        for c in &cd.classes {
            let ncl = t.normal_closure_in(&full, &t.singleton(c.rep_index));
            atoms.push(ncl.clone());
            push(ncl, &mut found, &mut sets);
        }
        let mut i = 0;
        while i < sets.len() {
            for a in &atoms {
                if a.is_subset(&sets[i]) {
                    continue;
                }
                let mut joined = sets[i].clone();
                t.extend_closure(&mut joined, &t.generators_of(a));
                let s = joined;
                push(s, &mut found, &mut sets);
            }
            i += 1;
        }
        sets.sort_by(|a, b| {
            a.count_ones(..).cmp(&b.count_ones(..)).then_with(|| a.ones().cmp(b.ones()))
        });
        let _ = self.normal_subgroups.set(Arc::new(sets));
        Ok(self.normal_subgroups.get().expect("set").clone())
    }

    pub fn normal_subgroups(self: &Arc<Self>) -> Result<Vec<SubgroupRef>> {
        Ok(self.normal_subgroup_sets()?.iter().map(|s| self.subgroup_from_set(s.clone())).collect())
    }

    /// A chief series `1 = N_0 < ... < N_k = G`, each step minimal among normal subgroups above the last.
    pub fn chief_series(&self) -> Result<Vec<ElemSet>> {
        let normals = self.normal_subgroup_sets()?;
        let mut series = vec![normals[0].clone()];
        loop {
            let cur = series.last().expect("nonempty");
            let cur_n = cur.count_ones(..);
            if cur_n as u64 == self.order() {
                break;
            }
            // normals are sorted by size, so the first proper overgroup is minimal
            let next = normals
                .iter()
                .find(|n| n.count_ones(..) > cur_n && cur.is_subset(n))
                .expect("G itself lies above");
            series.push(next.clone());
        }
        Ok(series)
    }

    /// Orders of the chief factors.
    pub fn chief_factor_orders(&self) -> Result<Vec<u64>> {
        let series = self.chief_series()?;
        Ok(series.windows(2).map(|w| (w[1].count_ones(..) / w[0].count_ones(..)) as u64).collect())
    }

    /// Every composition factor is a σ-group or a σ′-group.
    ///
    /// Chief factors are direct powers of one simple group, so testing their
    /// orders decides the composition factors.
    pub fn is_sigma_separable(&self, sigma: &PrimeSet) -> Result<bool> {
        Ok(self
            .chief_factor_orders()?
            .into_iter()
            .all(|n| sigma.is_sigma_number(n) || sigma.is_sigma_prime_number(n)))
    }

    /// The largest normal σ-subgroup.
    pub fn o_sigma(self: &Arc<Self>, sigma: &PrimeSet) -> Result<SubgroupRef> {
        let normals = self.normal_subgroup_sets()?;
        let best = normals
            .iter()
            .filter(|n| sigma.is_sigma_number(n.count_ones(..) as u64))
            .max_by_key(|n| n.count_ones(..))
            .expect("trivial subgroup is a σ-group")
            .clone();
        for n in normals.iter().filter(|n| sigma.is_sigma_number(n.count_ones(..) as u64)) {
            if !n.is_subset(&best) {
                return Err(Error::Consistency("normal σ-subgroups are not all contained in O_σ".into()));
            }
        }
        Ok(self.subgroup_from_set(best))
    }

    /// Permutation action on right cosets of `h`.
    ///
    /// With `quotient = true`, `h` must be normal and the image is `G/H`.
    pub fn coset_action_quotient(self: &Arc<Self>, h: &SubgroupRef, quotient: bool) -> Result<CosetAction> {
        let h = self.own(h)?;
        let t = self.elements()?;
        if quotient && !h.is_normal() {
            return Err(Error::Precondition("subgroup is not normal; quotient undefined".into()));
        }
        let n = t.len();
        let mut coset_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        let hm: Vec<usize> = h.members().ones().collect();
        for x in 0..n {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &y in &hm {
                coset_of[t.mul(y, x)] = id;
            }
        }
        let k = reps.len();
        let image_of = |g: usize| -> Perm {
            Perm::from_images((0..k).map(|c| coset_of[t.mul(reps[c], g)]).collect()).expect("coset action")
        };
        let gens: Vec<Perm> = self.generators().iter().map(|g| image_of(t.index_of(g).expect("gen"))).collect();
        let image = PermGroup::with_limits(k, gens, self.limits())?;
        let expect = if quotient { self.order() / h.order() } else { image.order() };
        if image.order() != expect {
            return Err(Error::Consistency("quotient order differs from |G|/|H|".into()));
        }
        let images: Vec<Perm> = (0..n).map(image_of).collect();
        Ok(CosetAction { source: self.clone(), image, images, coset_of })
    }
}

/// The permutation image of a coset action with its element map.
pub struct CosetAction {
    pub source: Arc<PermGroup>,
    pub image: Arc<PermGroup>,
    images: Vec<Perm>,
    coset_of: Vec<u32>,
}

impl CosetAction {
    pub fn map(&self, g: &Perm) -> Result<Perm> {
        let t = self.source.elements()?;
        let i = t.index_of(g).ok_or_else(|| Error::Precondition(format!("{g} not in source group")))?;
        Ok(self.images[i].clone())
    }

    pub fn map_index(&self, i: usize) -> &Perm {
        &self.images[i]
    }

    pub fn coset_of(&self, i: usize) -> usize {
        self.coset_of[i] as usize
    }

    /// Image of a subgroup of the source.
    pub fn map_subgroup(&self, s: &SubgroupRef) -> Result<SubgroupRef> {
        let gens: Vec<Perm> = s.generators().iter().map(|g| self.map(g)).collect::<Result<_>>()?;
        self.image.subgroup(&gens)
    }

    /// Full preimage of a subgroup of the image.
    pub fn preimage(&self, s: &SubgroupRef) -> Result<SubgroupRef> {
        let t = self.source.elements()?;
        let mut set = ElemSet::with_capacity(t.len());
        let mut cache: HashMap<usize, bool> = HashMap::new();
        for i in 0..t.len() {
            let c = self.coset_of(i);
            let inside = *cache.entry(c).or_insert_with(|| s.contains(&self.images[i]));
            if inside {
                set.insert(i);
            }
        }
        Ok(self.source.subgroup_from_set(set))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> Arc<PermGroup> {
        PermGroup::from_cycles(4, &["(1,2)", "(1,2,3,4)"]).unwrap()
    }

    #[test]
    fn structure_flag_examples() {
        let f = s4().structure_flags();
        assert_eq!(f, StructureFlags { is_solvable: true, is_nilpotent: false, derived_length: Some(3) });
        let d8 = PermGroup::from_cycles(4, &["(1,2,3,4)", "(1,3)"]).unwrap();
        assert!(d8.structure_flags().is_nilpotent);
        let a5 = PermGroup::from_cycles(5, &["(1,2,3,4,5)", "(3,4,5)"]).unwrap();
        let f = a5.structure_flags();
        assert!(!f.is_solvable && !f.is_nilpotent);
        assert_eq!(f.derived_length, None);
    }

    #[test]
    fn normal_subgroups_of_s4() {
        let g = s4();
        let orders: Vec<u64> = g.normal_subgroups().unwrap().iter().map(|n| n.order()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        assert_eq!(g.chief_factor_orders().unwrap(), vec![4, 3, 2]);
    }

    #[test]
    fn o_sigma_examples() {
        let g = s4();
        assert_eq!(g.o_sigma(&"2".parse().unwrap()).unwrap().order(), 4);
        assert_eq!(g.o_sigma(&"3".parse().unwrap()).unwrap().order(), 1);
        assert_eq!(g.o_sigma(&"2,3".parse().unwrap()).unwrap().order(), 24);
    }

    #[test]
    fn separability() {
        let a5 = PermGroup::from_cycles(5, &["(1,2,3,4,5)", "(3,4,5)"]).unwrap();
        assert!(!a5.is_sigma_separable(&"2".parse().unwrap()).unwrap());
        assert!(a5.is_sigma_separable(&"2,3,5".parse().unwrap()).unwrap());
        assert!(s4().is_sigma_separable(&"3".parse().unwrap()).unwrap());
    }

    #[test]
    fn quotients() {
        let g = s4();
        let v4 = g.subgroup_from_cycles(&["(1,2)(3,4)", "(1,3)(2,4)"]).unwrap();
        let q = g.coset_action_quotient(&v4, true).unwrap();
        assert_eq!(q.image.order(), 6);
        assert!(!q.image.structure_flags().is_nilpotent);
        let whole = g.whole().unwrap();
        assert_eq!(g.coset_action_quotient(&whole, true).unwrap().image.order(), 1);
        let d8 = PermGroup::from_cycles(4, &["(1,2,3,4)", "(1,3)"]).unwrap();
        let z = d8.subgroup_from_cycles(&["(1,3)(2,4)"]).unwrap();
        let q = d8.coset_action_quotient(&z, true).unwrap();
        assert_eq!(q.image.order(), 4);
        assert_eq!(q.image.exponent().unwrap(), 2);
        let c2 = g.subgroup_from_cycles(&["(1,2)"]).unwrap();
        assert!(g.coset_action_quotient(&c2, true).is_err());
        // faithful action of S4 on the 12 cosets of <(1,2)>
        assert_eq!(g.coset_action_quotient(&c2, false).unwrap().image.order(), 24);
    }
}
