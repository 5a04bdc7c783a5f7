//! Glauberman correspondence for a coprime action of a solvable group,
//! with both groups realised inside a common permutation group.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_integer::Integer;

use crate::chartab::conjugate_irreducibles;
use crate::classes::fusion_map;
use crate::error::{Error, Result};
use crate::group::{ElemSet, PermGroup, SubgroupRef};

pub struct GlaubermanAction {
    pub overgroup: Arc<PermGroup>,
    /// The group acted on.
    pub acted: SubgroupRef,
    /// The solvable acting group.
    pub acting: SubgroupRef,
    /// `C_G(S)`.
    pub fixed: SubgroupRef,
    steps: Mutex<HashMap<ElemSet, SubgroupRef>>,
}

impl GlaubermanAction {
    pub fn new(overgroup: &Arc<PermGroup>, acted: &SubgroupRef, acting: &SubgroupRef) -> Result<GlaubermanAction> {
        let acted = overgroup.own(acted)?;
        let acting = overgroup.own(acting)?;
        let t = overgroup.elements()?;
        if acted.order().gcd(&acting.order()) != 1 {
            return Err(Error::Precondition("acting and acted groups have non-coprime orders".into()));
        }
        if !acting.is_solvable() {
            return Err(Error::Precondition("acting group is not solvable".into()));
        }
        if t.normalizer_in(acting.members(), acted.members()).count_ones(..) != acting.order() as usize {
            return Err(Error::Precondition("acting group does not normalize the acted group".into()));
        }
        let fixed = overgroup.subgroup_from_set(t.centralizer_in(acted.members(), acting.members()));
        Ok(GlaubermanAction { overgroup: overgroup.clone(), acted, acting, fixed, steps: Mutex::new(HashMap::new()) })
    }

    /// Indices in `Irr(acted)` of the characters fixed by every element of the acting group.
    pub fn invariant_characters(&self) -> Result<Vec<usize>> {
        invariant_under(&self.acted, &self.acting)
    }

    /// Up to `limit` chains `1 = S_0 < S_1 < … < S_r = S` with `S_{i-1} ⊴ S_i` of prime index.
    pub fn composition_series(&self, limit: usize) -> Result<Vec<Vec<ElemSet>>> {
        let t = self.overgroup.elements()?;
        let mut out = Vec::new();
        let mut chain = vec![self.acting.members().clone()];
        let lat = self.overgroup.subgroup_lattice()?;
        let subs: Vec<ElemSet> = lat
            .all_subgroups()
            .filter(|(_, m)| m.is_subset(self.acting.members()))
            .map(|(_, m)| m.clone())
            .collect();
        descend(&t, &subs, &mut chain, &mut out, limit);
        for c in &mut out {
            c.reverse();
        }
        Ok(out)
    }

    fn step_group(&self, set: &ElemSet) -> SubgroupRef {
        if *set == *self.fixed.members() {
            return self.fixed.clone();
        }
        if *set == *self.acted.members() {
            return self.acted.clone();
        }
        self.steps
            .lock()
            .expect("poisoned")
            .entry(set.clone())
            .or_insert_with(|| self.overgroup.subgroup_from_set(set.clone()))
            .clone()
    }

    /// The correspondence `Irr_S(G) -> Irr(C_G(S))` along one composition series.
    pub fn correspondence_along(&self, series: &[ElemSet]) -> Result<BTreeMap<usize, usize>> {
        let t = self.overgroup.elements()?;
        let invariant = self.invariant_characters()?;
        let mut current: Vec<(usize, usize)> = invariant.iter().map(|&i| (i, i)).collect();
        let mut level = self.acted.clone();
        for w in series.windows(2) {
            let p = (w[1].count_ones(..) / w[0].count_ones(..)) as u64;
            let next_set = t.centralizer_in(level.members(), &w[1]);
            let next = self.step_group(&next_set);
            let lg = level.as_group();
            let ng = next.as_group();
            let ltab = lg.character_table()?;
            let ntab = ng.character_table()?;
            let fus = fusion_map(&ng, &lg)?;
            for entry in current.iter_mut() {
                let values = ltab.irreducibles()[entry.1].values();
                let res: Vec<_> = fus.iter().map(|&c| values[c].clone()).collect();
                let mult = ntab.decompose_character(&res)?;
                let hits: Vec<usize> = (0..mult.len()).filter(|&j| mult[j] % p != 0).collect();
                match hits.as_slice() {
                    [j] => entry.1 = *j,
                    _ => {
                        return Err(Error::Consistency(format!(
                            "{} constituents with multiplicity prime to {p}",
                            hits.len()
                        )))
                    }
                }
            }
            level = next;
        }
        if *level.members() != *self.fixed.members() {
            return Err(Error::Consistency("series did not end at the fixed-point subgroup".into()));
        }
        Ok(current.into_iter().collect())
    }

    /// The correspondence along the first composition series, checked to be a bijection.
    pub fn correspondence(&self) -> Result<BTreeMap<usize, usize>> {
        let series = self.composition_series(1)?;
        let map = self.correspondence_along(&series[0])?;
        let targets: std::collections::BTreeSet<usize> = map.values().copied().collect();
        let c_count = self.fixed.as_group().character_table()?.len();
        if targets.len() != map.len() || targets.len() != c_count {
            return Err(Error::Consistency(format!(
                "correspondence hits {} of {} characters of the fixed-point group from {} invariant characters",
                targets.len(),
                c_count,
                map.len()
            )));
        }
        Ok(map)
    }

    /// True when up to `limit` composition series all give the same map.
    pub fn series_independent(&self, limit: usize) -> Result<bool> {
        let all = self.composition_series(limit)?;
        let first = self.correspondence_along(&all[0])?;
        for s in &all[1..] {
            if self.correspondence_along(s)? != first {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// For every normal subgroup `T` of the acting group, the `T`-correspondence
    /// commutes with the action of the acting group's generators.
    pub fn equivariant(&self) -> Result<bool> {
        let t = self.overgroup.elements()?;
        let lat = self.overgroup.subgroup_lattice()?;
        let normals: Vec<ElemSet> = lat
            .all_subgroups()
            .filter(|(_, m)| m.is_subset(self.acting.members()) && t.is_normal_in(self.acting.members(), m))
            .map(|(_, m)| m.clone())
            .collect();
        let ag = self.acted.as_group();
        for tset in normals {
            let sub = GlaubermanAction::new(&self.overgroup, &self.acted, &self.overgroup.subgroup_from_set(tset))?;
            let map = sub.correspondence()?;
            let cg = sub.fixed.as_group();
            for s in self.acting.generators() {
                let on_g = conjugate_irreducibles(&ag, s)?;
                let on_c = conjugate_irreducibles(&cg, s)?;
                for (&chi, &star) in &map {
                    if map.get(&on_g[chi]) != Some(&on_c[star]) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Indices of `Irr(acted)` fixed by conjugation with every generator of `acting`.
pub fn invariant_under(acted: &SubgroupRef, acting: &SubgroupRef) -> Result<Vec<usize>> {
    let ag = acted.as_group();
    let n = ag.character_table()?.len();
    let mut fixed = vec![true; n];
    for s in acting.generators() {
        let perm = conjugate_irreducibles(&ag, s)?;
        for (i, &j) in perm.iter().enumerate() {
            if i != j {
                fixed[i] = false;
            }
        }
    }
    Ok((0..n).filter(|&i| fixed[i]).collect())
}

/// The correspondent of one invariant character.
pub fn glauberman_correspondent(action: &GlaubermanAction, chi: usize) -> Result<usize> {
    action
        .correspondence()?
        .get(&chi)
        .copied()
        .ok_or_else(|| Error::Precondition("character is not invariant under the acting group".into()))
}

fn descend(
    t: &crate::group::ElementTable,
    subs: &[ElemSet],
    chain: &mut Vec<ElemSet>,
    out: &mut Vec<Vec<ElemSet>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    let top = chain.last().expect("nonempty").clone();
    let n = top.count_ones(..);
    if n == 1 {
        out.push(chain.clone());
        return;
    }
    for b in subs {
        let m = b.count_ones(..);
        if m < n && n.is_multiple_of(m) && crate::primes::is_prime((n / m) as u64) && b.is_subset(&top) && t.is_normal_in(&top, b) {
            chain.push(b.clone());
            descend(t, subs, chain, out, limit);
            chain.pop();
            if out.len() >= limit {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::Cyclotomic;

    fn swap_group() -> Arc<PermGroup> {
        PermGroup::from_cycles(6, &["(1,2,3)", "(4,5,6)", "(1,4)(2,5)(3,6)"]).unwrap()
    }

    #[test]
    fn swap_action_on_c3_squared() {
        let x = swap_group();
        let g = x.subgroup_from_cycles(&["(1,2,3)", "(4,5,6)"]).unwrap();
        let s = x.subgroup_from_cycles(&["(1,4)(2,5)(3,6)"]).unwrap();
        let a = GlaubermanAction::new(&x, &g, &s).unwrap();
        assert_eq!(a.fixed.order(), 3);
        let inv = a.invariant_characters().unwrap();
        assert_eq!(inv.len(), 3);
        let map = a.correspondence().unwrap();
        let gg = a.acted.as_group();
        let cg = a.fixed.as_group();
        let gt = gg.character_table().unwrap();
        let ct = cg.character_table().unwrap();
        let diag = cg.elements().unwrap().get(1).clone();
        // an invariant character is α⊗α and restricts to α² on the diagonal
        let (c0, c1) = (gg.class_index_of(&x.identity()).unwrap(), gg.class_index_of(&diag).unwrap());
        let mut squares = Vec::new();
        for (&chi, &star) in &map {
            let image = ct.irreducibles()[star].values()[cg.class_index_of(&diag).unwrap()].clone();
            let at_diag = gt.irreducibles()[chi].values()[c1].clone();
            assert_eq!(gt.irreducibles()[chi].values()[c0], Cyclotomic::one());
            assert_eq!(at_diag, image);
            squares.push(image);
        }
        assert!(squares.contains(&Cyclotomic::one()));
        assert!(squares.contains(&Cyclotomic::root_of_unity(3, 1)));
        assert!(squares.contains(&Cyclotomic::root_of_unity(3, 2)));
        assert!(a.series_independent(4).unwrap());
        assert!(a.equivariant().unwrap());
    }

    #[test]
    fn trivial_acting_group_is_identity() {
        let x = swap_group();
        let g = x.subgroup_from_cycles(&["(1,2,3)", "(4,5,6)"]).unwrap();
        let a = GlaubermanAction::new(&x, &g, &x.trivial_subgroup().unwrap()).unwrap();
        let map = a.correspondence().unwrap();
        assert!(map.iter().all(|(a, b)| a == b));
        assert_eq!(map.len(), 9);
    }

    #[test]
    fn rejects_bad_actions() {
        let x = swap_group();
        let g = x.subgroup_from_cycles(&["(1,2,3)", "(4,5,6)"]).unwrap();
        assert!(GlaubermanAction::new(&x, &g, &g).is_err());
        let s4 = PermGroup::from_cycles(4, &["(1,2)", "(1,2,3,4)"]).unwrap();
        let c3 = s4.subgroup_from_cycles(&["(1,2,3)"]).unwrap();
        let c2 = s4.subgroup_from_cycles(&["(1,4)"]).unwrap();
        assert!(GlaubermanAction::new(&s4, &c3, &c2).is_err());
    }

    #[test]
    fn composite_acting_group() {
        // C_5 x C_5 acted on by V_4 = <inversion on each factor>
        let x = PermGroup::from_cycles(10, &["(1,2,3,4,5)", "(6,7,8,9,10)", "(2,5)(3,4)", "(7,10)(8,9)"]).unwrap();
        let g = x.subgroup_from_cycles(&["(1,2,3,4,5)", "(6,7,8,9,10)"]).unwrap();
        let s = x.subgroup_from_cycles(&["(2,5)(3,4)", "(7,10)(8,9)"]).unwrap();
        let a = GlaubermanAction::new(&x, &g, &s).unwrap();
        assert_eq!(a.fixed.order(), 1);
        assert_eq!(a.correspondence().unwrap().len(), 1);
        assert!(a.series_independent(8).unwrap());
        assert!(a.equivariant().unwrap());
    }
}
