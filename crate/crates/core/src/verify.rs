//! Checkers comparing the two sides of the counting theorems on concrete groups.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::chartab::{conjugate_irreducibles, induce_with_fusion};
use crate::classes::fusion_map;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::glauberman::GlaubermanAction;
use crate::group::{ElemSet, PermGroup, SubgroupRef};
use crate::lattice::{carter_fiber, set_is_carter_in};
use crate::partial::{decompose_on_subgroup, stabilizer, vertices};
use crate::perm::Perm;
use crate::primes::PrimeSet;
use crate::weights::{defect_zero_quotient_characters, enumerate_weights};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Holds,
    Fails,
    HypothesesUnmet,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::HypothesesUnmet => "hypotheses-unmet",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub met: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Lhs,
    Rhs,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Lhs => "lhs",
            Side::Rhs => "rhs",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BreakdownRow {
    pub side: Side,
    pub label: String,
    pub count: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub group: String,
    pub sigma: PrimeSet,
    /// Extra identification, e.g. the generators of `R`.
    pub subject: Option<String>,
    pub hypotheses: Vec<Hypothesis>,
    pub lhs: u64,
    pub rhs: u64,
    pub verdict: Verdict,
    pub rows: Vec<BreakdownRow>,
    pub notes: Vec<(String, String)>,
}

impl VerificationReport {
    fn new(theorem: &str, g: &PermGroup, sigma: &PrimeSet) -> VerificationReport {
        VerificationReport {
            theorem: theorem.to_string(),
            group: g.name().to_string(),
            sigma: sigma.clone(),
            subject: None,
            hypotheses: Vec::new(),
            lhs: 0,
            rhs: 0,
            verdict: Verdict::HypothesesUnmet,
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn hyp(&mut self, name: &str, met: bool) {
        self.hypotheses.push(Hypothesis { name: name.to_string(), met });
    }

    fn row(&mut self, side: Side, label: String) {
        self.rows.push(BreakdownRow { side, label, count: 1 });
    }

    fn note(&mut self, key: &str, value: impl ToString) {
        self.notes.push((key.to_string(), value.to_string()));
    }

    pub fn hypotheses_met(&self) -> bool {
        self.hypotheses.iter().all(|h| h.met)
    }

    pub fn unmet(&self) -> Vec<&str> {
        self.hypotheses.iter().filter(|h| !h.met).map(|h| h.name.as_str()).collect()
    }

    /// Sets the verdict from the counts and hypotheses; `extra_ok` folds in internal cross-checks.
    fn decide(&mut self, extra_ok: bool) {
        self.verdict = if self.lhs != self.rhs || !extra_ok {
            Verdict::Fails
        } else if self.hypotheses_met() {
            Verdict::Holds
        } else {
            Verdict::HypothesesUnmet
        };
    }

    /// Breakdown rows sum to the top-line counts.
    pub fn rows_consistent(&self) -> bool {
        let sum = |s: Side| self.rows.iter().filter(|r| r.side == s).map(|r| r.count).sum::<u64>();
        sum(Side::Lhs) == self.lhs && sum(Side::Rhs) == self.rhs
    }
}

fn gens_label(gens: &[Perm]) -> String {
    if gens.is_empty() {
        return "()".to_string();
    }
    gens.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn solvable_hall(g: &Arc<PermGroup>, sigma: &PrimeSet) -> Result<bool> {
    Ok(g.hall_subgroup_any(sigma)?.map(|h| h.is_solvable()).unwrap_or(false))
}

/// ω′-element classes against nilpotent ω-weights.
#[allow(non_snake_case)]
pub fn check_theorem_A(g: &Arc<PermGroup>, omega: &PrimeSet) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("A", g, omega);
    rep.hyp("separable", g.is_sigma_separable(omega)?);
    rep.hyp("solvable Hall subgroup", solvable_hall(g, omega)?);
    let cd = g.class_data()?;
    for c in &cd.classes {
        if omega.is_sigma_prime_number(c.element_order) {
            rep.lhs += 1;
            rep.row(Side::Lhs, format!("class order={} size={} rep={}", c.element_order, c.size, c.representative));
        }
    }
    for w in enumerate_weights(g, omega, true)? {
        rep.rhs += 1;
        rep.row(
            Side::Rhs,
            format!(
                "weight Q_order={} Q={} N_order={} gamma_degree={}",
                w.q_order,
                gens_label(&w.q_generators),
                w.normalizer_order,
                w.gamma_degree
            ),
        );
    }
    rep.decide(true);
    Ok(rep)
}

/// Per-`R` refinement: partial characters with vertex in the Carter fiber of `R`
/// against members of `Iσ(N_G(R))` with vertex `R`.
#[allow(non_snake_case)]
pub fn check_theorem_B(g: &Arc<PermGroup>, sigma: &PrimeSet, r: &SubgroupRef) -> Result<VerificationReport> {
    let r = g.own(r)?;
    let mut rep = VerificationReport::new("B", g, sigma);
    rep.subject = Some(format!("R={}", gens_label(r.generators())));
    let sigma_prime = sigma.complement_in(g.order());
    let separable = g.is_sigma_separable(sigma)?;
    let r_ok = r.is_nilpotent() && sigma.is_sigma_prime_number(r.order());
    rep.hyp("separable", separable);
    rep.hyp("solvable Hall complement", separable && solvable_hall(g, &sigma_prime)?);
    rep.hyp("R nilpotent complement-subgroup", r_ok);
    if !separable || !r_ok {
        rep.note("counts", "not computed");
        return Ok(rep);
    }
    let lat = g.subgroup_lattice()?;
    let pt = g.partial_table(sigma)?;
    let v = vertices(g, sigma)?;
    for entry in carter_fiber(g, sigma, &r)? {
        let c = &lat.classes[entry.class_id];
        for (i, _) in v.iter().enumerate().filter(|(_, &vc)| vc == entry.class_id) {
            rep.lhs += 1;
            rep.row(
                Side::Lhs,
                format!("phi degree={} vertex_order={} vertex={}", pt.members[i].degree(), c.order, gens_label(&c.rep_generators)),
            );
        }
    }
    let n = g.normalizer(&r)?;
    let ng = n.as_group();
    let rn = ng.own(&r)?;
    let r_class = ng.subgroup_class_of(&rn)?;
    let npt = ng.partial_table(sigma)?;
    let nv = vertices(&ng, sigma)?;
    for (i, _) in nv.iter().enumerate().filter(|(_, &vc)| vc == r_class) {
        rep.rhs += 1;
        rep.row(Side::Rhs, format!("normalizer member degree={}", npt.members[i].degree()));
    }
    let (_, weights) = defect_zero_quotient_characters(g, &sigma_prime, &r)?;
    rep.note("weights with first component R", weights.len());
    rep.note("normalizer order", n.order());
    let cross = weights.len() as u64 == rep.rhs;
    if !cross {
        rep.note("cross-check", "weight count differs from normalizer count");
    }
    rep.decide(cross);
    Ok(rep)
}

/// Theorem B for every class of nilpotent σ′-subgroups, with the aggregation totals.
#[allow(non_snake_case)]
pub fn check_theorem_B_all(g: &Arc<PermGroup>, sigma: &PrimeSet) -> Result<(Vec<VerificationReport>, Aggregate)> {
    let sigma_prime = sigma.complement_in(g.order());
    let lat = g.subgroup_lattice()?;
    let mut reports = Vec::new();
    for id in g.nilpotent_sigma_subgroup_classes(&sigma_prime)? {
        let r = lat.classes[id].representative(g);
        reports.push(check_theorem_B(g, sigma, &r)?);
    }
    let mut agg = Aggregate {
        lhs_sum: reports.iter().map(|r| r.lhs).sum(),
        rhs_sum: reports.iter().map(|r| r.rhs).sum(),
        partial_count: 0,
        weight_count: 0,
    };
    if g.is_sigma_separable(sigma)? {
        agg.partial_count = g.partial_table(sigma)?.len() as u64;
        agg.weight_count = enumerate_weights(g, &sigma_prime, true)?.len() as u64;
    }
    Ok((reports, agg))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Aggregate {
    pub lhs_sum: u64,
    pub rhs_sum: u64,
    /// `|Iσ(G)|`.
    pub partial_count: u64,
    /// Number of nilpotent σ′-weights.
    pub weight_count: u64,
}

impl Aggregate {
    pub fn holds(&self) -> bool {
        self.lhs_sum == self.partial_count && self.rhs_sum == self.weight_count
    }
}

/// Members of `Iσ(X)` with vertex class `q` lying over `phi ∈ Iσ(M)`.
fn count_vertex_over(x: &Arc<PermGroup>, sigma: &PrimeSet, q: &SubgroupRef, m: &SubgroupRef, phi: usize) -> Result<u64> {
    let q = x.own(q)?;
    let m = x.own(m)?;
    let qc = x.subgroup_class_of(&q)?;
    let pt = x.partial_table(sigma)?;
    let v = vertices(x, sigma)?;
    let mut count = 0;
    for i in 0..pt.len() {
        if v[i] == qc && decompose_on_subgroup(x, sigma, &pt.members[i].values, &m)?.iter().any(|&(j, _)| j == phi) {
            count += 1;
        }
    }
    Ok(count)
}

/// `|Iσ(G|Q,φ)| = |Iσ(N_G(Q)|Q,φ)|` for `L ⊴ G` a σ-group, `LQ ⊴ G`, `M ≤ Z(G) ∩ L`, `φ ∈ Irr(M)`
/// (`phi` indexes `Iσ(M) = Irr(M)`).
pub fn check_normalizer_counting(
    g: &Arc<PermGroup>,
    sigma: &PrimeSet,
    q: &SubgroupRef,
    l: &SubgroupRef,
    m: &SubgroupRef,
    phi: usize,
) -> Result<VerificationReport> {
    let (q, l, m) = (g.own(q)?, g.own(l)?, g.own(m)?);
    let t = g.elements()?;
    let mut rep = VerificationReport::new("normalizer-counting", g, sigma);
    rep.subject = Some(format!("Q={} L={} M={} phi={phi}", gens_label(q.generators()), gens_label(l.generators()), gens_label(m.generators())));
    let separable = g.is_sigma_separable(sigma)?;
    rep.hyp("separable", separable);
    rep.hyp("L normal sigma-subgroup", l.is_normal() && l.is_sigma_group(sigma));
    rep.hyp("Q solvable complement-subgroup", q.is_solvable() && sigma.is_sigma_prime_number(q.order()));
    let mut lq = l.members().clone();
    t.extend_closure(&mut lq, &t.generators_of(q.members()));
    rep.hyp("LQ normal", t.is_normal_in(&t.full_set(), &lq));
    let center = t.centralizer_in(&t.full_set(), &t.full_set());
    rep.hyp("M central in L", m.members().is_subset(&center) && m.is_subgroup_of(&l));
    if !separable {
        rep.note("counts", "not computed");
        return Ok(rep);
    }
    rep.lhs = count_vertex_over(g, sigma, &q, &m, phi)?;
    let n = g.normalizer(&q)?;
    let ng = n.as_group();
    rep.rhs = count_vertex_over(&ng, sigma, &q, &m, phi)?;
    rep.rows.push(BreakdownRow { side: Side::Lhs, label: "Iσ(G|Q,phi)".into(), count: rep.lhs });
    rep.rows.push(BreakdownRow { side: Side::Rhs, label: "Iσ(N_G(Q)|Q,phi)".into(), count: rep.rhs });
    rep.decide(true);
    Ok(rep)
}

/// The explicit map `φ ↦ (θ*×1_R)^{N_G(R)}` for `G = NH`, `N` a normal σ-subgroup,
/// `H` a solvable σ′-complement and `R ≤ H` nilpotent.
pub fn check_canonical_bijection(
    g: &Arc<PermGroup>,
    n: &SubgroupRef,
    h: &SubgroupRef,
    sigma: &PrimeSet,
    r: &SubgroupRef,
) -> Result<VerificationReport> {
    let (n, h, r) = (g.own(n)?, g.own(h)?, g.own(r)?);
    let t = g.elements()?;
    let mut rep = VerificationReport::new("bijection", g, sigma);
    rep.subject = Some(format!("N={} H={} R={}", gens_label(n.generators()), gens_label(h.generators()), gens_label(r.generators())));
    let mut meet = n.members().clone();
    meet.intersect_with(h.members());
    rep.hyp("N normal sigma-subgroup", n.is_normal() && n.is_sigma_group(sigma));
    rep.hyp("H solvable complement-subgroup", h.is_solvable() && sigma.is_sigma_prime_number(h.order()));
    rep.hyp("G = NH, N meet H = 1", meet.count_ones(..) == 1 && n.order() * h.order() == g.order());
    rep.hyp("R nilpotent subgroup of H", r.is_nilpotent() && r.is_subgroup_of(&h));
    if !rep.hypotheses_met() {
        rep.note("map", "not constructed");
        return Ok(rep);
    }

    let lat = g.subgroup_lattice()?;
    let qs: Vec<ElemSet> = lat
        .all_subgroups()
        .map(|(_, m)| m)
        .filter(|m| m.is_subset(h.members()) && r.members().is_subset(m) && set_is_carter_in(&t, r.members(), m))
        .cloned()
        .collect();
    let q_classes: BTreeSet<usize> = qs.iter().map(|q| lat.class_of_set(q).expect("in lattice")).collect();
    let pt = g.partial_table(sigma)?;
    let v = vertices(g, sigma)?;
    let domain: Vec<usize> = (0..pt.len()).filter(|&i| q_classes.contains(&v[i])).collect();

    let nr = g.normalizer(&r)?;
    let nrg = nr.as_group();
    let r_in = nrg.own(&r)?;
    let r_class = nrg.subgroup_class_of(&r_in)?;
    let nrpt = nrg.partial_table(sigma)?;
    let nrv = vertices(&nrg, sigma)?;
    let target: BTreeSet<usize> = (0..nrpt.len()).filter(|&i| nrv[i] == r_class).collect();

    let action = GlaubermanAction::new(g, &n, &r)?;
    let star = action.correspondence()?;
    let ng = n.as_group();
    let npt = ng.partial_table(sigma)?;
    let cg = action.fixed.as_group();
    let ctab = cg.character_table()?;

    // C_N(R) × R and its classes decomposed as (c, r)
    let mut d_set = action.fixed.members().clone();
    t.extend_closure(&mut d_set, &t.generators_of(r.members()));
    let d = g.subgroup_from_set(d_set);
    let dg = d.as_group();
    let dcd = dg.class_data()?;
    let r_elems = r.elements();
    let split: Vec<usize> = dcd
        .classes
        .iter()
        .map(|c| {
            r_elems
                .iter()
                .find_map(|x| {
                    let y = &c.representative * &x.inverse();
                    action.fixed.contains(&y).then(|| cg.class_index_of(&y))
                })
                .expect("direct product decomposition")
        })
        .collect::<Result<_>>()?;
    let d_fus = fusion_map(&dg, &nrg)?;
    let nr_sigma = nrg.sigma_class_indices(sigma)?;

    let image_of = |theta_star: usize| -> Result<Option<usize>> {
        let vals: Vec<Cyclotomic> = split.iter().map(|&c| ctab.irreducibles()[theta_star].values()[c].clone()).collect();
        let ind = induce_with_fusion(&nrg, &dg, &d_fus, &vals)?;
        let restricted: Vec<Cyclotomic> = nr_sigma.iter().map(|&c| ind[c].clone()).collect();
        Ok(nrpt.index_of(&restricted))
    };

    let mut well_defined = true;
    let mut images: BTreeMap<usize, usize> = BTreeMap::new();
    for &phi in &domain {
        let under: Vec<usize> = decompose_on_subgroup(g, sigma, &pt.members[phi].values, &n)?
            .into_iter()
            .map(|(j, _)| npt.members[j].lifts[0])
            .collect();
        let mut found: BTreeSet<Option<usize>> = BTreeSet::new();
        for q in qs.iter().filter(|q| lat.class_of_set(q) == Some(v[phi])) {
            let q_gens: Vec<Perm> = t.generators_of(q).into_iter().map(|i| t.get(i).clone()).collect();
            let perms: Vec<Vec<usize>> = q_gens.iter().map(|x| conjugate_irreducibles(&ng, x)).collect::<Result<_>>()?;
            for &theta in &under {
                if perms.iter().any(|p| p[theta] != theta) {
                    continue;
                }
                let theta_star = *star
                    .get(&theta)
                    .ok_or_else(|| Error::Consistency("Q-invariant character is not R-invariant".into()))?;
                found.insert(image_of(theta_star)?);
            }
        }
        match found.iter().collect::<Vec<_>>().as_slice() {
            [Some(img)] if target.contains(img) => {
                images.insert(phi, *img);
            }
            _ => {
                well_defined = false;
                rep.note("ill-defined", format!("phi degree {} has images {:?}", pt.members[phi].degree(), found));
            }
        }
    }
    let image_set: BTreeSet<usize> = images.values().copied().collect();
    let injective = image_set.len() == images.len();
    let surjective = image_set == target;
    rep.lhs = domain.len() as u64;
    rep.rhs = target.len() as u64;
    for (&phi, &img) in &images {
        rep.row(Side::Lhs, format!("phi degree={} maps to normalizer member degree={}", pt.members[phi].degree(), nrpt.members[img].degree()));
    }
    for _ in images.len()..domain.len() {
        rep.row(Side::Lhs, "phi without a well-defined image".into());
    }
    for &i in &target {
        rep.row(Side::Rhs, format!("normalizer member degree={}", nrpt.members[i].degree()));
    }
    rep.note("well defined", well_defined);
    rep.note("injective", injective);
    rep.note("surjective", surjective);

    let factor = normalizer_factorization(g, &n, &h)?;
    rep.note("normalizer factorization subgroups checked", factor.0);
    rep.note("normalizer factorization holds", factor.1);
    let selfnorm = r_self_normalizing(&action, &nrg, &h, &r, &star)?;
    rep.note("R self-normalizing in stabilizers: characters checked", selfnorm.0);
    rep.note("R self-normalizing in stabilizers holds", selfnorm.1);
    rep.decide(well_defined && injective && surjective && factor.1 && selfnorm.1);
    Ok(rep)
}

/// `N_G(Q) = C_N(Q) N_H(Q)` for every `Q ≤ H`; returns (subgroups checked, all hold).
fn normalizer_factorization(g: &Arc<PermGroup>, n: &SubgroupRef, h: &SubgroupRef) -> Result<(usize, bool)> {
    let t = g.elements()?;
    let lat = g.subgroup_lattice()?;
    let mut checked = 0;
    let mut ok = true;
    for (_, q) in lat.all_subgroups().filter(|(_, q)| q.is_subset(h.members())) {
        checked += 1;
        let ngq = t.normalizer_of(q).count_ones(..);
        let cnq = t.centralizer_in(n.members(), q).count_ones(..);
        let nhq = t.normalizer_in(h.members(), q).count_ones(..);
        ok &= ngq == cnq * nhq;
    }
    Ok((checked, ok))
}

/// For `τ ∈ Irr(C_N(R))` with `N_G(R)_τ = C_N(R) × R` and `γ` its Glauberman preimage, `R = N_{H_γ}(R)`.
fn r_self_normalizing(
    action: &GlaubermanAction,
    nrg: &Arc<PermGroup>,
    h: &SubgroupRef,
    r: &SubgroupRef,
    star: &BTreeMap<usize, usize>,
) -> Result<(usize, bool)> {
    let cg = action.fixed.as_group();
    let ng = action.acted.as_group();
    let cr_order = action.fixed.order() * r.order();
    let hg = h.as_group();
    let mut checked = 0;
    let mut ok = true;
    for (&gamma, &tau) in star {
        let stab = stabilizer(nrg, tau, |x| conjugate_irreducibles(&cg, x))?;
        if stab.order() != cr_order {
            continue;
        }
        checked += 1;
        let h_gamma = stabilizer(&hg, gamma, |x| conjugate_irreducibles(&ng, x))?;
        let hgg = h_gamma.as_group();
        let r_in = hgg.own(r)?;
        ok &= hgg.normalizer(&r_in)?.order() == r.order();
    }
    Ok((checked, ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(s: &str) -> PrimeSet {
        s.parse().unwrap()
    }

    fn s4() -> Arc<PermGroup> {
        PermGroup::from_cycles(4, &["(1,2)", "(1,2,3,4)"]).unwrap()
    }

    #[test]
    fn theorem_a_examples() {
        let rep = check_theorem_A(&s4(), &ps("2")).unwrap();
        assert_eq!((rep.lhs, rep.rhs, rep.verdict), (2, 2, Verdict::Holds));
        assert!(rep.rows_consistent());

        let a5 = PermGroup::from_cycles(5, &["(1,2,3,4,5)", "(3,4,5)"]).unwrap();
        let rep = check_theorem_A(&a5, &ps("2,3,5")).unwrap();
        assert_eq!((rep.lhs, rep.rhs, rep.verdict), (1, 0, Verdict::Fails));
        assert_eq!(rep.unmet(), vec!["solvable Hall subgroup"]);
        let rep = check_theorem_A(&a5, &ps("2")).unwrap();
        assert_eq!(rep.verdict, Verdict::HypothesesUnmet);

        let triv = PermGroup::new(1, vec![]).unwrap();
        let rep = check_theorem_A(&triv, &ps("2")).unwrap();
        assert_eq!((rep.lhs, rep.rhs, rep.verdict), (1, 1, Verdict::Holds));
    }

    #[test]
    fn theorem_b_examples() {
        let g = s4();
        let sigma = ps("3");
        let cases = [(vec!["(1,2,3,4)", "(1,3)"], 1), (vec!["(1,2)(3,4)", "(1,3)(2,4)"], 1), (vec!["(1,2)"], 0), (vec!["(1,2,3,4)"], 0), (vec!["(1,2)(3,4)"], 0)];
        for (gens, expect) in cases {
            let r = g.subgroup_from_cycles(&gens).unwrap();
            let rep = check_theorem_B(&g, &sigma, &r).unwrap();
            assert_eq!((rep.lhs, rep.rhs, rep.verdict), (expect, expect, Verdict::Holds), "{gens:?}");
            assert!(rep.rows_consistent());
        }
        let (reports, agg) = check_theorem_B_all(&g, &sigma).unwrap();
        assert!(reports.iter().all(|r| r.verdict == Verdict::Holds));
        assert_eq!(agg.lhs_sum, 2);
        assert!(agg.holds());
    }

    #[test]
    fn normalizer_counting_examples() {
        let a4 = PermGroup::from_cycles(4, &["(1,2,3)", "(1,2)(3,4)"]).unwrap();
        let two = ps("2");
        let v4 = a4.subgroup_from_cycles(&["(1,2)(3,4)", "(1,3)(2,4)"]).unwrap();
        let c3 = a4.subgroup_from_cycles(&["(1,2,3)"]).unwrap();
        let one = a4.trivial_subgroup().unwrap();
        let rep = check_normalizer_counting(&a4, &two, &c3, &v4, &one, 0).unwrap();
        assert_eq!((rep.lhs, rep.rhs, rep.verdict), (1, 1, Verdict::Holds));
        let rep = check_normalizer_counting(&a4, &two, &one, &v4, &one, 0).unwrap();
        assert_eq!(rep.lhs, rep.rhs);
    }

    #[test]
    fn canonical_bijection_examples() {
        let a4 = PermGroup::from_cycles(4, &["(1,2,3)", "(1,2)(3,4)"]).unwrap();
        let two = ps("2");
        let v4 = a4.subgroup_from_cycles(&["(1,2)(3,4)", "(1,3)(2,4)"]).unwrap();
        let c3 = a4.subgroup_from_cycles(&["(1,2,3)"]).unwrap();
        let rep = check_canonical_bijection(&a4, &v4, &c3, &two, &c3).unwrap();
        assert_eq!((rep.lhs, rep.rhs, rep.verdict), (1, 1, Verdict::Holds), "{rep:?}");
        let one = a4.trivial_subgroup().unwrap();
        let rep = check_canonical_bijection(&a4, &v4, &c3, &two, &one).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds, "{rep:?}");

        let s4 = s4();
        let v4 = s4.subgroup_from_cycles(&["(1,2)(3,4)", "(1,3)(2,4)"]).unwrap();
        let s3 = s4.subgroup_from_cycles(&["(1,2)", "(1,2,3)"]).unwrap();
        let rep = check_canonical_bijection(&s4, &v4, &s3, &two, &s4.trivial_subgroup().unwrap()).unwrap();
        assert_eq!(rep.verdict, Verdict::HypothesesUnmet);

        let x = PermGroup::from_cycles(6, &["(1,2,3)", "(4,5,6)", "(1,4)(2,5)(3,6)"]).unwrap();
        let n = x.subgroup_from_cycles(&["(1,2,3)", "(4,5,6)"]).unwrap();
        let h = x.subgroup_from_cycles(&["(1,4)(2,5)(3,6)"]).unwrap();
        for r in [h.clone(), x.trivial_subgroup().unwrap()] {
            let rep = check_canonical_bijection(&x, &n, &h, &ps("3"), &r).unwrap();
            assert_eq!(rep.verdict, Verdict::Holds, "{rep:?}");
        }
    }
}
