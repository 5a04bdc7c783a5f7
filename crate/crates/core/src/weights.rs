//! Weights `(Q, γ)`: `Q` a σ-subgroup and `γ ∈ Irr(N_G(Q)/Q)` of σ-defect zero.

use std::fmt;
use std::sync::Arc;

use crate::chartab::has_sigma_defect_zero;
use crate::error::Result;
use crate::group::{PermGroup, SubgroupRef};
use crate::normal::CosetAction;
use crate::perm::Perm;
use crate::primes::PrimeSet;

pub struct Weight {
    /// Subgroup class id in the lattice of `G`.
    pub q_class: usize,
    pub q_order: u64,
    pub q_generators: Vec<Perm>,
    pub normalizer_order: u64,
    /// `N_G(Q) -> N_G(Q)/Q` as a coset action.
    pub quotient: Arc<CosetAction>,
    /// Index into `Irr(N_G(Q)/Q)`.
    pub gamma: usize,
    pub gamma_degree: u64,
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Weight")
            .field("q_class", &self.q_class)
            .field("q_order", &self.q_order)
            .field("normalizer_order", &self.normalizer_order)
            .field("gamma", &self.gamma)
            .field("gamma_degree", &self.gamma_degree)
            .finish()
    }
}

/// A quotient group and `(index, degree)` of some of its irreducibles.
pub type QuotientCharacters = (Arc<CosetAction>, Vec<(usize, u64)>);

/// The quotient `N_G(Q)/Q` and the indices of its σ-defect-zero irreducibles.
pub fn defect_zero_quotient_characters(
    g: &Arc<PermGroup>,
    sigma: &PrimeSet,
    q: &SubgroupRef,
) -> Result<QuotientCharacters> {
    let q = g.own(q)?;
    let n = g.normalizer(&q)?;
    let ng = n.as_group();
    let qn = ng.own(&q)?;
    let quotient = Arc::new(ng.coset_action_quotient(&qn, true)?);
    let order = quotient.image.order();
    let table = quotient.image.character_table()?;
    let hits = table
        .irreducibles()
        .iter()
        .enumerate()
        .filter(|(_, chi)| has_sigma_defect_zero(chi.degree(), order, sigma))
        .map(|(i, chi)| (i, chi.degree()))
        .collect();
    Ok((quotient, hits))
}

/// One entry per conjugacy class of weights, ordered by subgroup class then character.
pub fn enumerate_weights(g: &Arc<PermGroup>, sigma: &PrimeSet, nilpotent_only: bool) -> Result<Vec<Weight>> {
    let lat = g.subgroup_lattice()?;
    let mut out = Vec::new();
    for c in &lat.classes {
        if !c.is_sigma_group(sigma) || (nilpotent_only && !c.nilpotent) {
            continue;
        }
        let q = c.representative(g);
        let (quotient, hits) = defect_zero_quotient_characters(g, sigma, &q)?;
        for (gamma, gamma_degree) in hits {
            out.push(Weight {
                q_class: c.id,
                q_order: c.order,
                q_generators: c.rep_generators.clone(),
                normalizer_order: c.normalizer_order(g.order()),
                quotient: quotient.clone(),
                gamma,
                gamma_degree,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(s: &str) -> PrimeSet {
        s.parse().unwrap()
    }

    #[test]
    fn weight_examples() {
        let s4 = PermGroup::from_cycles(4, &["(1,2)", "(1,2,3,4)"]).unwrap();
        let w = enumerate_weights(&s4, &ps("2"), true).unwrap();
        let summary: Vec<(u64, u64, u64)> = w.iter().map(|w| (w.q_order, w.normalizer_order, w.gamma_degree)).collect();
        assert_eq!(summary, vec![(4, 24, 2), (8, 8, 1)]);

        let a5 = PermGroup::from_cycles(5, &["(1,2,3,4,5)", "(3,4,5)"]).unwrap();
        assert!(enumerate_weights(&a5, &ps("2,3,5"), true).unwrap().is_empty());
        assert_eq!(enumerate_weights(&a5, &ps("2"), true).unwrap().len(), 4);
    }

    #[test]
    fn sigma_groups_have_one_nilpotent_weight() {
        for gens in [vec!["(1,2)", "(1,2,3)"], vec!["(1,2,3)", "(1,2)(3,4)"], vec!["(1,2)", "(1,2,3,4)"]] {
            let deg = if gens.iter().any(|g| g.contains('4')) { 4 } else { 3 };
            let g = PermGroup::from_cycles(deg, &gens).unwrap();
            let all = PrimeSet::of(g.order());
            let w = enumerate_weights(&g, &all, true).unwrap();
            assert_eq!(w.len(), 1);
            assert_eq!(w[0].q_class, g.carter_subgroups().unwrap());
        }
    }
}
