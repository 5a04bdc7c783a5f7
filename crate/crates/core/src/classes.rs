//! Conjugacy classes by orbit enumeration, centralizers and normalizers.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{ElemSet, PermGroup, SubgroupRef};
use crate::perm::Perm;
use crate::primes::PrimeSet;

#[derive(Clone, Debug)]
pub struct ConjClassElem {
    pub representative: Perm,
    pub rep_index: usize,
    pub size: u64,
    pub element_order: u64,
}

/// Classes in the fixed global order `(element_order, size, minimal representative)`.
#[derive(Debug)]
pub struct ClassData {
    pub classes: Vec<ConjClassElem>,
    /// Class index of every element.
    pub class_of: Vec<u32>,
    /// Class of the inverse of each class.
    pub inverse_class: Vec<usize>,
}

impl ClassData {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.size).collect()
    }

    pub fn members(&self, class: usize) -> impl Iterator<Item = usize> + '_ {
        self.class_of.iter().enumerate().filter(move |(_, &c)| c as usize == class).map(|(i, _)| i)
    }
}

impl PermGroup {
    pub fn class_data(&self) -> Result<Arc<ClassData>> {
        if let Some(c) = self.classes.get() {
            return Ok(c.clone());
        }
        let t = self.elements()?;
        let n = t.len();
        let gens: Vec<usize> = self.generators().iter().map(|g| t.index_of(g).expect("generator")).collect();
        let conj_maps: Vec<Vec<u32>> = gens.iter().map(|&g| t.conjugation_map(g)).collect();
        let mut raw_of = vec![u32::MAX; n];
        let mut raw: Vec<(u64, u64, usize)> = Vec::new();
        for start in 0..n {
            if raw_of[start] != u32::MAX {
                continue;
            }
            let id = raw.len() as u32;
            raw_of[start] = id;
            let mut stack = vec![start];
            let mut size = 0u64;
            while let Some(x) = stack.pop() {
                size += 1;
                for m in &conj_maps {
                    let y = m[x] as usize;
                    if raw_of[y] == u32::MAX {
                        raw_of[y] = id;
                        stack.push(y);
                    }
                }
            }
            // start is the least index of its class since we scan in index order
            raw.push((t.order_of(start), size, start));
        }
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by_key(|&i| raw[i]);
        let mut rank = vec![0usize; raw.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let class_of: Vec<u32> = raw_of.iter().map(|&c| rank[c as usize] as u32).collect();
        let classes: Vec<ConjClassElem> = order
            .iter()
            .map(|&old| {
                let (ord, size, rep) = raw[old];
                ConjClassElem { representative: t.get(rep).clone(), rep_index: rep, size, element_order: ord }
            })
            .collect();
        let inverse_class =
            classes.iter().map(|c| class_of[t.inverse(c.rep_index)] as usize).collect();
        let data = ClassData { classes, class_of, inverse_class };
        let _ = self.classes.set(Arc::new(data));
        Ok(self.classes.get().expect("set").clone())
    }

    pub fn conjugacy_classes(&self) -> Result<Vec<ConjClassElem>> {
        Ok(self.class_data()?.classes.clone())
    }

    /// Class index of an element of this group.
    pub fn class_index_of(&self, g: &Perm) -> Result<usize> {
        let t = self.elements()?;
        let i = t.index_of(g).ok_or_else(|| Error::Precondition(format!("{g} is not in the group")))?;
        Ok(self.class_data()?.class_of[i] as usize)
    }

    /// Classes whose element order is a σ-number.
    pub fn sigma_element_classes(&self, sigma: &PrimeSet) -> Result<Vec<ConjClassElem>> {
        Ok(self.sigma_class_indices(sigma)?.into_iter().map(|i| self.class_data().unwrap().classes[i].clone()).collect())
    }

    pub fn sigma_class_indices(&self, sigma: &PrimeSet) -> Result<Vec<usize>> {
        let cd = self.class_data()?;
        Ok((0..cd.len()).filter(|&i| sigma.is_sigma_number(cd.classes[i].element_order)).collect())
    }

    /// `C_G(g)` by enumeration.
    pub fn centralizer(self: &Arc<Self>, g: &Perm) -> Result<SubgroupRef> {
        self.check_bound("centralizer", self.limits().normalizer)?;
        let t = self.elements()?;
        let gi = t.index_of(g).ok_or_else(|| Error::Precondition(format!("{g} is not in the group")))?;
        let mut set = ElemSet::with_capacity(t.len());
        for x in 0..t.len() {
            if t.mul(x, gi) == t.mul(gi, x) {
                set.insert(x);
            }
        }
        Ok(self.subgroup_from_set(set))
    }

    /// `C_G(H)` for a subgroup `H`.
    pub fn centralizer_of_subgroup(self: &Arc<Self>, h: &SubgroupRef) -> Result<SubgroupRef> {
        self.check_bound("centralizer", self.limits().normalizer)?;
        let h = self.own(h)?;
        let t = self.elements()?;
        Ok(self.subgroup_from_set(t.centralizer_in(&t.full_set(), h.members())))
    }

    /// `N_G(H)` by enumeration.
    pub fn normalizer(self: &Arc<Self>, h: &SubgroupRef) -> Result<SubgroupRef> {
        self.check_bound("normalizer", self.limits().normalizer)?;
        let h = self.own(h)?;
        let t = self.elements()?;
        Ok(self.subgroup_from_set(t.normalizer_of(h.members())))
    }

    /// Returns `h` as a subgroup of this group, re-indexing if it was built in another parent.
    pub fn own(self: &Arc<Self>, h: &SubgroupRef) -> Result<SubgroupRef> {
        if Arc::ptr_eq(h.parent(), self) {
            return Ok(h.clone());
        }
        if h.parent().degree() != self.degree() {
            return Err(Error::DegreeMismatch { expected: self.degree(), got: h.parent().degree() });
        }
        for g in h.generators() {
            if !self.contains(g) {
                return Err(Error::Precondition(format!("subgroup generator {g} is not in {}", self.name())));
            }
        }
        self.subgroup(h.generators())
    }

    /// Permutation of this group's classes induced by conjugation with `x` (which normalizes the group).
    /// Entry `i` is the class of `x^-1 g_i x`.
    pub fn class_permutation(&self, x: &Perm) -> Result<Vec<usize>> {
        let cd = self.class_data()?;
        let t = self.elements()?;
        cd.classes
            .iter()
            .map(|c| {
                let y = c.representative.conjugate_by(x);
                t.index_of(&y)
                    .map(|i| cd.class_of[i] as usize)
                    .ok_or_else(|| Error::Precondition(format!("{x} does not normalize {}", self.name())))
            })
            .collect()
    }

    /// For each class, the class of the `e`-th power of its representative.
    pub fn power_map(&self, e: u64) -> Result<Vec<usize>> {
        let cd = self.class_data()?;
        let t = self.elements()?;
        Ok(cd.classes.iter().map(|c| cd.class_of[t.pow(c.rep_index, e)] as usize).collect())
    }
}

/// Maps each class of `sub` to the class of `group` containing it.
pub fn fusion_map(sub: &PermGroup, group: &PermGroup) -> Result<Vec<usize>> {
    let cd = sub.class_data()?;
    cd.classes.iter().map(|c| group.class_index_of(&c.representative)).collect()
}
