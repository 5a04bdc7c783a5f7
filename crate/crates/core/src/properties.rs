//! Property suite over a list of groups, brute-force oracles, and corpus scans.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chartab::{has_sigma_defect_zero, induce_from_group, inner_product, restrict_character};
use crate::error::{Error, Result};
use crate::glauberman::GlaubermanAction;
use crate::group::{ElemSet, PermGroup, SubgroupRef};
use crate::lattice::brute_force_subgroups;
use crate::partial::{clifford_correspondent_in, conjugate_partials, decompose_on_subgroup, ipi_with_vertex, partial_inertia_group, vertices};
use crate::perm::Perm;
use crate::primes::PrimeSet;
use crate::verify::{
    check_canonical_bijection, check_normalizer_counting, check_theorem_A, check_theorem_B, check_theorem_B_all,
    VerificationReport, Verdict,
};

/// Largest order for which the brute-force oracles run.
pub const ORACLE_MAX_ORDER: u64 = 200;
pub const FROBENIUS_SAMPLES: usize = 100;
const SERIES_LIMIT: usize = 8;

pub const PROPERTIES: &[&str] = &[
    "table-orthogonality",
    "degree-sum",
    "degree-divides-order",
    "frobenius-reciprocity",
    "oracle-order",
    "oracle-classes",
    "oracle-normalizers",
    "oracle-subgroups",
    "carter-uniqueness",
    "defect-zero-radical",
    "partial-count",
    "vertex-degree-law",
    "clifford-round-trip",
    "vertex-orbit",
    "vertex-induction-count",
    "theorem-A",
    "theorem-B",
    "theorem-B-aggregate",
    "normalizer-counting",
    "canonical-bijection",
    "glauberman-bijective",
    "glauberman-series-independent",
    "glauberman-equivariant",
];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropertyTally {
    pub checked: u64,
    /// Instances skipped because a hypothesis or resource bound excluded them.
    pub excluded: u64,
    /// Witnessing instance for each failure.
    pub failures: Vec<String>,
}

impl PropertyTally {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// One tally per entry of [`PROPERTIES`], in that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub tallies: Vec<PropertyTally>,
    pub groups: Vec<String>,
}

impl Default for PropertyReport {
    fn default() -> Self {
        PropertyReport { tallies: vec![PropertyTally::default(); PROPERTIES.len()], groups: Vec::new() }
    }
}

impl PropertyReport {
    pub fn get(&self, name: &str) -> &PropertyTally {
        &self.tallies[index(name)]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &PropertyTally)> {
        PROPERTIES.iter().copied().zip(&self.tallies)
    }

    pub fn all_pass(&self) -> bool {
        self.tallies.iter().all(PropertyTally::passed)
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn merge(&mut self, other: PropertyReport) {
        for (a, b) in self.tallies.iter_mut().zip(other.tallies) {
            a.checked += b.checked;
            a.excluded += b.excluded;
            a.failures.extend(b.failures);
        }
        self.groups.extend(other.groups);
    }

    fn record(&mut self, name: &str, witness: impl FnOnce() -> String, ok: bool) {
        let t = &mut self.tallies[index(name)];
        t.checked += 1;
        if !ok {
            t.failures.push(witness());
        }
    }

    fn exclude(&mut self, name: &str) {
        self.tallies[index(name)].excluded += 1;
    }

    /// Folds a fallible check in: bound errors exclude, other errors fail.
    fn outcome(&mut self, name: &str, at: &str, r: Result<bool>) {
        match r {
            Ok(ok) => self.record(name, || at.to_string(), ok),
            Err(Error::BoundExceeded { .. }) => self.exclude(name),
            Err(e) => self.record(name, || format!("{at}: {e}"), false),
        }
    }
}

fn index(name: &str) -> usize {
    PROPERTIES.iter().position(|p| *p == name).unwrap_or_else(|| panic!("unknown property {name}"))
}

/// Which prime sets to visit for each group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SigmaRange {
    /// Every subset of the primes dividing `|G|`.
    All,
    Fixed(PrimeSet),
}

impl SigmaRange {
    pub fn sets_for(&self, g: &PermGroup) -> Vec<PrimeSet> {
        match self {
            SigmaRange::All => PrimeSet::subsets_of(g.order()),
            SigmaRange::Fixed(s) => vec![s.clone()],
        }
    }
}

pub fn run_property_suite(corpus: &[Arc<PermGroup>], range: &SigmaRange, seed: u64) -> PropertyReport {
    let mut report = PropertyReport::default();
    for g in corpus {
        report.merge(properties_for_group(g, range, seed));
    }
    report
}

/// All properties for one group; independent of every other group, so callers may run these in parallel.
pub fn properties_for_group(g: &Arc<PermGroup>, range: &SigmaRange, seed: u64) -> PropertyReport {
    let mut rep = PropertyReport { groups: vec![g.name().to_string()], ..Default::default() };
    let name = g.name().to_string();
    table_properties(g, &mut rep);
    let r = frobenius_samples(g, seed);
    rep.outcome("frobenius-reciprocity", &name, r);
    if g.order() <= ORACLE_MAX_ORDER {
        let r = oracle_order(g);
        rep.outcome("oracle-order", &name, r);
        let r = oracle_classes(g);
        rep.outcome("oracle-classes", &name, r);
        let r = oracle_normalizers(g);
        rep.outcome("oracle-normalizers", &name, r);
        let r = oracle_subgroups(g);
        rep.outcome("oracle-subgroups", &name, r);
    } else {
        for p in ["oracle-order", "oracle-classes", "oracle-normalizers", "oracle-subgroups"] {
            rep.exclude(p);
        }
    }
    if g.structure_flags().is_solvable {
        let r = g.carter_subgroups().map(|_| true);
        rep.outcome("carter-uniqueness", &name, r);
    } else {
        rep.exclude("carter-uniqueness");
    }
    for sigma in range.sets_for(g) {
        match sigma_properties(g, &sigma, &mut rep) {
            Ok(()) | Err(Error::BoundExceeded { .. }) => {}
            Err(e) => {
                let at = format!("{name} sigma={sigma}: {e}");
                rep.tallies[index("partial-count")].failures.push(at);
            }
        }
    }
    rep
}

fn table_properties(g: &Arc<PermGroup>, rep: &mut PropertyReport) {
    let name = g.name().to_string();
    let table = match g.character_table() {
        Ok(t) => t,
        Err(Error::BoundExceeded { .. }) => {
            for p in ["table-orthogonality", "degree-sum", "degree-divides-order"] {
                rep.exclude(p);
            }
            return;
        }
        Err(e) => {
            rep.record("table-orthogonality", || format!("{name}: {e}"), false);
            return;
        }
    };
    let irr = table.irreducibles();
    let rows = (|| -> Result<bool> {
        for (i, a) in irr.iter().enumerate() {
            for (j, b) in irr.iter().enumerate() {
                let ip = table.inner_product(a.values(), b.values())?;
                if ip != num_rational::Rational64::from_integer((i == j) as i64) {
                    return Ok(false);
                }
            }
        }
        Ok(table.validate().is_ok())
    })();
    rep.outcome("table-orthogonality", &name, rows);
    let degrees = table.degrees();
    rep.record("degree-sum", || name.clone(), degrees.iter().map(|d| d * d).sum::<u64>() == g.order());
    rep.record("degree-divides-order", || name.clone(), degrees.iter().all(|d| g.order().is_multiple_of(*d)));
}

/// `⟨θ^G, χ⟩_G = ⟨θ, χ_H⟩_H` on seeded random triples.
fn frobenius_samples(g: &Arc<PermGroup>, seed: u64) -> Result<bool> {
    let lat = g.subgroup_lattice()?;
    let gt = g.character_table()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ g.order().wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut subs: HashMap<usize, SubgroupRef> = HashMap::new();
    for _ in 0..FROBENIUS_SAMPLES {
        let c = rng.gen_range(0..lat.len());
        let h = subs.entry(c).or_insert_with(|| lat.classes[c].representative(g)).clone();
        let hg = h.as_group();
        let ht = hg.character_table()?;
        let theta = ht.irreducibles().choose(&mut rng).expect("nonempty").values().to_vec();
        let chi = gt.irreducibles().choose(&mut rng).expect("nonempty").values().to_vec();
        let up = induce_from_group(g, &hg, &theta)?;
        let down = restrict_character(g, &chi, &h)?;
        if inner_product(g, &up, &chi)? != inner_product(&hg, &theta, &down)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn oracle_order(g: &Arc<PermGroup>) -> Result<bool> {
    let t = g.elements()?;
    Ok(g.brute_force_order() == g.order() && t.len() as u64 == g.order())
}

/// Conjugacy classes by direct orbit computation on permutations.
fn oracle_classes(g: &Arc<PermGroup>) -> Result<bool> {
    let t = g.elements()?;
    let cd = g.class_data()?;
    let elems = t.elements();
    let mut seen: HashSet<&Perm> = HashSet::new();
    let mut brute: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for e in elems {
        if seen.contains(e) {
            continue;
        }
        let orbit: BTreeSet<usize> = elems.iter().map(|x| t.index_of(&e.conjugate_by(x)).expect("closed")).collect();
        for &i in &orbit {
            seen.insert(&elems[i]);
        }
        brute.insert(orbit);
    }
    let ours: BTreeSet<BTreeSet<usize>> = (0..cd.len()).map(|c| cd.members(c).collect()).collect();
    let sizes_ok = cd.classes.iter().enumerate().all(|(c, k)| cd.members(c).count() as u64 == k.size);
    Ok(brute == ours && sizes_ok)
}

fn oracle_normalizers(g: &Arc<PermGroup>) -> Result<bool> {
    let t = g.elements()?;
    let lat = g.subgroup_lattice()?;
    let elems = t.elements();
    for (_, set) in lat.all_subgroups() {
        let h: HashSet<Perm> = t.set_perms(set).into_iter().collect();
        let brute: BTreeSet<usize> = elems
            .iter()
            .enumerate()
            .filter(|(_, x)| h.iter().all(|y| h.contains(&y.conjugate_by(x))))
            .map(|(i, _)| i)
            .collect();
        let n = g.normalizer(&g.subgroup_from_set(set.clone()))?;
        if brute != n.members().ones().collect::<BTreeSet<_>>() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn oracle_subgroups(g: &Arc<PermGroup>) -> Result<bool> {
    let t = g.elements()?;
    let lat = g.subgroup_lattice()?;
    let brute: HashSet<ElemSet> = brute_force_subgroups(&t).into_iter().collect();
    let ours: HashSet<ElemSet> = lat.all_subgroups().map(|(_, s)| s.clone()).collect();
    if brute != ours || lat.subgroup_count() as usize != ours.len() {
        return Ok(false);
    }
    // classes: every member's conjugates are exactly its class
    for c in &lat.classes {
        let mut conj: HashSet<ElemSet> = HashSet::new();
        for x in 0..t.len() {
            conj.insert(t.conjugate_set(&c.rep_set, x));
        }
        let members: HashSet<ElemSet> = c.members.iter().cloned().collect();
        if conj != members || c.class_size as usize != members.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn sigma_properties(g: &Arc<PermGroup>, sigma: &PrimeSet, rep: &mut PropertyReport) -> Result<()> {
    let at = format!("{} sigma={}", g.name(), sigma);
    let r = defect_zero_radical(g, sigma);
    rep.outcome("defect-zero-radical", &at, r);

    let a = check_theorem_A(g, sigma)?;
    if a.hypotheses_met() {
        rep.record("theorem-A", || at.clone(), a.verdict == Verdict::Holds && a.rows_consistent());
    } else {
        rep.exclude("theorem-A");
    }

    if !g.is_sigma_separable(sigma)? {
        for p in [
            "partial-count",
            "vertex-degree-law",
            "clifford-round-trip",
            "vertex-orbit",
            "vertex-induction-count",
            "theorem-B",
            "theorem-B-aggregate",
            "normalizer-counting",
            "canonical-bijection",
            "glauberman-bijective",
        ] {
            rep.exclude(p);
        }
        return Ok(());
    }

    let pt = match g.partial_table(sigma) {
        Ok(pt) => pt,
        Err(e) => {
            rep.record("partial-count", || format!("{at}: {e}"), false);
            return Ok(());
        }
    };
    let sigma_classes = g.sigma_class_indices(sigma)?.len();
    rep.record("partial-count", || at.clone(), pt.len() == sigma_classes);

    let lat = g.subgroup_lattice()?;
    let v = vertices(g, sigma)?;
    let sp = |n: u64| n / sigma.part_of(n);
    for (i, phi) in pt.members.iter().enumerate() {
        let q = lat.classes[v[i]].order;
        let ok = sp(phi.degree()) == sp(g.order() / q) && sp(q) == q;
        rep.record("vertex-degree-law", || format!("{at} phi={i}"), ok);
    }

    let mut ic = InertiaCache::default();
    for n in g.normal_subgroups()? {
        if n.order() == 1 || n.order() == g.order() {
            continue;
        }
        let at_n = format!("{at} N={}", gens(n.generators()));
        let r = clifford_round_trip(g, sigma, &n, &mut ic);
        rep.outcome("clifford-round-trip", &at_n, r);
        let r = vertex_orbit(g, sigma, &n, &mut ic);
        rep.outcome("vertex-orbit", &at_n, r);
        let r = vertex_induction_count(g, sigma, &n, &mut ic);
        rep.outcome("vertex-induction-count", &at_n, r);
    }

    let (reports, agg) = check_theorem_B_all(g, sigma)?;
    let b_qualifies = reports.first().is_none_or(|r| r.hypotheses_met());
    if b_qualifies {
        for b in &reports {
            rep.record("theorem-B", || format!("{at} {}", b.subject.clone().unwrap_or_default()), b.verdict == Verdict::Holds && b.rows_consistent());
        }
        rep.record("theorem-B-aggregate", || format!("{at}: {agg:?}"), agg.holds());
    } else {
        rep.exclude("theorem-B");
        rep.exclude("theorem-B-aggregate");
    }

    normalizer_counting_instances(g, sigma, &at, rep)?;
    normal_hall_instances(g, sigma, &at, &reports, rep)?;
    Ok(())
}

fn gens(g: &[Perm]) -> String {
    g.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// A σ-defect-zero irreducible forces `O_σ(G) = 1`; checked from both sides.
fn defect_zero_radical(g: &Arc<PermGroup>, sigma: &PrimeSet) -> Result<bool> {
    let table = g.character_table()?;
    let has_dz = table.degrees().iter().any(|&d| has_sigma_defect_zero(d, g.order(), sigma));
    let radical_trivial = g.o_sigma(sigma)?.order() == 1;
    Ok(!has_dz || radical_trivial)
}

/// Inertia groups for one `(G, σ)`, shared so each distinct subgroup is built and tabulated once.
#[derive(Default)]
struct InertiaCache {
    by_key: HashMap<(ElemSet, usize), SubgroupRef>,
    by_set: HashMap<ElemSet, SubgroupRef>,
}

impl InertiaCache {
    fn get(&mut self, g: &Arc<PermGroup>, sigma: &PrimeSet, n: &SubgroupRef, tau: usize) -> Result<SubgroupRef> {
        let key = (n.members().clone(), tau);
        if let Some(s) = self.by_key.get(&key) {
            return Ok(s.clone());
        }
        let s = partial_inertia_group(g, n, sigma, tau)?;
        let s = self.by_set.entry(s.members().clone()).or_insert(s).clone();
        self.by_key.insert(key, s.clone());
        Ok(s)
    }
}

/// The Clifford correspondent over the first constituent induces back to `φ`.
fn clifford_round_trip(g: &Arc<PermGroup>, sigma: &PrimeSet, n: &SubgroupRef, ic: &mut InertiaCache) -> Result<bool> {
    let pt = g.partial_table(sigma)?;
    for (i, phi) in pt.members.iter().enumerate() {
        let theta = decompose_on_subgroup(g, sigma, &phi.values, n)?[0].0;
        let cc = clifford_correspondent_in(g, sigma, i, n, theta, ic.get(g, sigma, n, theta)?)?;
        let tg = cc.inertia.as_group();
        if crate::partial::induce_partial(g, &tg, sigma, cc.mu)? != phi.values {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For each `μ` with vertex `Q`, the `τ` under `μ` whose Clifford correspondent has vertex `Q`
/// are `Q`-invariant and form one `N_G(Q)`-orbit.
fn vertex_orbit(g: &Arc<PermGroup>, sigma: &PrimeSet, n: &SubgroupRef, ic: &mut InertiaCache) -> Result<bool> {
    let pt = g.partial_table(sigma)?;
    let v = vertices(g, sigma)?;
    let lat = g.subgroup_lattice()?;
    let ng = n.as_group();
    for (i, mu) in pt.members.iter().enumerate() {
        let q = lat.classes[v[i]].representative(g);
        let mut hits = BTreeSet::new();
        for (tau, _) in decompose_on_subgroup(g, sigma, &mu.values, n)? {
            let cc = clifford_correspondent_in(g, sigma, i, n, tau, ic.get(g, sigma, n, tau)?)?;
            if !q.is_subgroup_of(&cc.inertia) {
                continue;
            }
            let tg = cc.inertia.as_group();
            let qt = tg.own(&q)?;
            if vertices(&tg, sigma)?[cc.mu] == tg.subgroup_class_of(&qt)? {
                hits.insert(tau);
            }
        }
        let Some(&first) = hits.iter().next() else { return Ok(false) };
        for x in q.generators() {
            let perm = conjugate_partials(&ng, sigma, x)?;
            if hits.iter().any(|&tau| perm[tau] != tau) {
                return Ok(false);
            }
        }
        let nq = g.normalizer(&q)?;
        let perms: Vec<Vec<usize>> = nq.generators().iter().map(|x| conjugate_partials(&ng, sigma, x)).collect::<Result<_>>()?;
        let mut orbit = BTreeSet::from([first]);
        let mut stack = vec![first];
        while let Some(t) = stack.pop() {
            for p in &perms {
                if orbit.insert(p[t]) {
                    stack.push(p[t]);
                }
            }
        }
        if orbit != hits {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `|Iσ(G|Q,τ)| = Σ_U |Iσ(G_τ|U,τ)|` over `G_τ`-orbit representatives `U` of the conjugates of `Q` inside `G_τ`.
fn vertex_induction_count(g: &Arc<PermGroup>, sigma: &PrimeSet, n: &SubgroupRef, ic: &mut InertiaCache) -> Result<bool> {
    let t = g.elements()?;
    let lat = g.subgroup_lattice()?;
    let sigma_prime = sigma.complement_in(g.order());
    let ng = n.as_group();
    let npt = ng.partial_table(sigma)?;
    for c in lat.classes.iter().filter(|c| c.is_sigma_group(&sigma_prime)) {
        let q = c.representative(g);
        let q_perms: Vec<Vec<usize>> = q.generators().iter().map(|x| conjugate_partials(&ng, sigma, x)).collect::<Result<_>>()?;
        for tau in 0..npt.len() {
            if q_perms.iter().any(|p| p[tau] != tau) {
                continue;
            }
            let gt = ic.get(g, sigma, n, tau)?;
            let tg = gt.as_group();
            let nt = tg.own(n)?;
            let tau_t = nt
                .as_group()
                .partial_table(sigma)?
                .index_of(&npt.members[tau].values)
                .ok_or_else(|| Error::Consistency("τ missing from the inertia group's copy of N".into()))?;
            let lhs = ipi_with_vertex(g, sigma, &q, Some((n, tau)))?.len();
            let gt_gens: Vec<usize> = gt.generators().iter().map(|x| t.index_of(x).expect("in G")).collect();
            let mut pending: Vec<&ElemSet> = c.members.iter().filter(|m| m.is_subset(gt.members())).collect();
            let mut rhs = 0;
            let mut rhs_q = None;
            while let Some(u) = pending.first().copied() {
                let mut orbit = HashSet::from([u.clone()]);
                let mut stack = vec![u.clone()];
                while let Some(s) = stack.pop() {
                    for &x in &gt_gens {
                        let y = t.conjugate_set(&s, x);
                        if orbit.insert(y.clone()) {
                            stack.push(y);
                        }
                    }
                }
                pending.retain(|m| !orbit.contains(*m));
                let ut = tg.own(&g.subgroup_from_set(u.clone()))?;
                let k = ipi_with_vertex(&tg, sigma, &ut, Some((&nt, tau_t)))?.len();
                if orbit.contains(q.members()) {
                    rhs_q = Some(k);
                }
                rhs += k;
            }
            if lhs != rhs {
                return Ok(false);
            }
            // G_τ N_G(Q) = G collapses the sum to the single term at Q
            let nq = t.normalizer_of(q.members());
            let mut meet = nq.clone();
            meet.intersect_with(gt.members());
            let product = gt.order() as usize * nq.count_ones(..) / meet.count_ones(..);
            if product as u64 == g.order() && rhs_q != Some(lhs) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Instances with `L = O_σ(G)`, every solvable σ′-subgroup class `Q` with `LQ ⊴ G`, and `M ∈ {1, Z(G) ∩ L}`.
fn normalizer_counting_instances(g: &Arc<PermGroup>, sigma: &PrimeSet, at: &str, rep: &mut PropertyReport) -> Result<()> {
    let t = g.elements()?;
    let lat = g.subgroup_lattice()?;
    let sigma_prime = sigma.complement_in(g.order());
    let l = g.o_sigma(sigma)?;
    let mut zl = t.centralizer_in(&t.full_set(), &t.full_set());
    zl.intersect_with(l.members());
    let ms = if zl.count_ones(..) > 1 {
        vec![g.trivial_subgroup()?, g.subgroup_from_set(zl)]
    } else {
        vec![g.trivial_subgroup()?]
    };
    let mut any = false;
    for c in lat.classes.iter().filter(|c| c.is_sigma_group(&sigma_prime) && c.solvable) {
        let mut lq = l.members().clone();
        t.extend_closure(&mut lq, &t.generators_of(&c.rep_set));
        if !t.is_normal_in(&t.full_set(), &lq) {
            continue;
        }
        let q = c.representative(g);
        for m in &ms {
            let count = m.as_group().partial_table(sigma)?.len();
            for phi in 0..count {
                any = true;
                let r = check_normalizer_counting(g, sigma, &q, &l, m, phi)?;
                rep.record(
                    "normalizer-counting",
                    || format!("{at} Q={} M order {} phi={phi}", gens(&c.rep_generators), m.order()),
                    r.verdict == Verdict::Holds,
                );
            }
        }
    }
    if !any {
        rep.exclude("normalizer-counting");
    }
    Ok(())
}

/// Canonical bijection and Glauberman checks when `O_σ(G)` is a normal Hall σ-subgroup with a solvable complement.
fn normal_hall_instances(
    g: &Arc<PermGroup>,
    sigma: &PrimeSet,
    at: &str,
    b_reports: &[VerificationReport],
    rep: &mut PropertyReport,
) -> Result<()> {
    let n = g.o_sigma(sigma)?;
    let sigma_prime = sigma.complement_in(g.order());
    let h = match g.hall_subgroup_any(&sigma_prime)? {
        Some(h) if h.is_solvable() && n.order() == sigma.part_of(g.order()) => h,
        _ => {
            rep.exclude("canonical-bijection");
            for p in ["glauberman-bijective", "glauberman-series-independent", "glauberman-equivariant"] {
                rep.exclude(p);
            }
            return Ok(());
        }
    };
    let lat = g.subgroup_lattice()?;
    for c in &lat.classes {
        let Some(s) = c.members.iter().find(|m| m.is_subset(h.members())) else { continue };
        let s = g.subgroup_from_set(s.clone());
        let at_s = format!("{at} S={}", gens(s.generators()));
        if c.nilpotent {
            let bij = check_canonical_bijection(g, &n, &h, sigma, &s)?;
            let b = check_theorem_B(g, sigma, &s)?;
            let matches_b = b_reports.iter().any(|r| r.subject == b.subject) || b.lhs == bij.lhs;
            rep.record(
                "canonical-bijection",
                || format!("{at_s}: {:?}", bij.notes),
                bij.verdict == Verdict::Holds && bij.lhs == b.lhs && bij.rhs == b.rhs && matches_b,
            );
        }
        if n.order() == 1 || s.order() == 1 {
            continue;
        }
        let action = GlaubermanAction::new(g, &n, &s)?;
        let r = action.correspondence().map(|m| m.len() == action.fixed.as_group().character_table().map(|t| t.len()).unwrap_or(0));
        rep.outcome("glauberman-bijective", &at_s, r);
        let r = action.series_independent(SERIES_LIMIT);
        rep.outcome("glauberman-series-independent", &at_s, r);
        let r = action.equivariant();
        rep.outcome("glauberman-equivariant", &at_s, r);
    }
    Ok(())
}

/// Which verifier a corpus scan runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    TheoremA,
    TheoremBAllR,
}

/// One report per `(G, σ)` (and per `R` class in `TheoremBAllR` mode), in corpus order.
pub fn scan_group(g: &Arc<PermGroup>, range: &SigmaRange, mode: ScanMode) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for sigma in range.sets_for(g) {
        match mode {
            ScanMode::TheoremA => out.push(check_theorem_A(g, &sigma)?),
            ScanMode::TheoremBAllR => out.extend(check_theorem_B_all(g, &sigma)?.0),
        }
    }
    Ok(out)
}

pub fn scan_corpus(corpus: &[Arc<PermGroup>], range: &SigmaRange, mode: ScanMode) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for g in corpus {
        out.extend(scan_group(g, range, mode)?);
    }
    Ok(out)
}

/// Counts of holds / fails / hypotheses-unmet.
pub fn summarize(reports: &[VerificationReport]) -> (usize, usize, usize) {
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    (count(Verdict::Holds), count(Verdict::Fails), count(Verdict::HypothesesUnmet))
}

/// The order-216 group on 9 points where a Clifford correspondent's vertex count differs from the full group's.
pub fn order_216_generators() -> [&'static str; 4] {
    ["(1,2,3)", "(4,5,6)", "(4,5)", "(2,3)(4,7)(5,8)(6,9)"]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordVertexExample {
    pub order: u64,
    /// Structure: a unique normal subgroup of order 3, Fitting subgroup of order 27 with quotient `D8`.
    pub structure_ok: bool,
    pub inertia_index: u64,
    /// `|Iσ(G_τ|Q₁,τ)|`.
    pub inertia_count: usize,
    /// `|Iσ(G|Q₁,τ)|`.
    pub group_count: usize,
    /// `|Iσ(G_τ|Q₂,τ)|` for the second involution class.
    pub inertia_count_q2: usize,
}

/// σ = {3}, `N = ⟨(1,2,3)⟩`, `τ` nontrivial, `Q₁ = ⟨(4,5)⟩`, `Q₂ = ⟨(7,8)⟩`.
pub fn clifford_vertex_example() -> Result<CliffordVertexExample> {
    let g = PermGroup::named("C3xC3^2:D8", 9, order_216_generators().iter().map(|s| Perm::parse_cycles(9, s)).collect::<Result<_>>()?, Default::default())?;
    let sigma = PrimeSet::new([3])?;
    let n = g.subgroup_from_cycles(&["(1,2,3)"])?;
    let q1 = g.subgroup_from_cycles(&["(4,5)"])?;
    let q2 = g.subgroup_from_cycles(&["(7,8)"])?;

    let normals = g.normal_subgroups()?;
    let unique_c3 = normals.iter().filter(|m| m.order() == 3).count() == 1 && n.is_normal();
    let fitting = g.o_sigma(&sigma)?;
    let quotient = g.coset_action_quotient(&fitting, true)?;
    let d8 = PermGroup::from_cycles(4, &["(1,2,3,4)", "(1,3)"])?;
    let qi = &quotient.image;
    let quotient_d8 = qi.order() == 8
        && qi.class_data()?.sizes() == d8.class_data()?.sizes()
        && qi.structure_flags().is_nilpotent
        && qi.structure_flags().derived_length == Some(2);
    let fitting_ok = fitting.order() == 27 && fitting.is_nilpotent();

    let ng = n.as_group();
    let npt = ng.partial_table(&sigma)?;
    let tau = (0..npt.len()).find(|&i| npt.members[i].values.iter().any(|v| !v.is_rational())).expect("nontrivial τ");
    let gt = partial_inertia_group(&g, &n, &sigma, tau)?;
    let tg = gt.as_group();
    let nt = tg.own(&n)?;
    let tau_t = nt.as_group().partial_table(&sigma)?.index_of(&npt.members[tau].values).expect("τ in copy");
    let in_t = |q: &SubgroupRef| -> Result<usize> { Ok(ipi_with_vertex(&tg, &sigma, &tg.own(q)?, Some((&nt, tau_t)))?.len()) };
    Ok(CliffordVertexExample {
        order: g.order(),
        structure_ok: unique_c3 && fitting_ok && quotient_d8,
        inertia_index: gt.index(),
        inertia_count: in_t(&q1)?,
        group_count: ipi_with_vertex(&g, &sigma, &q1, Some((&n, tau)))?.len(),
        inertia_count_q2: in_t(&q2)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn groups() -> Vec<Arc<PermGroup>> {
        vec![
            PermGroup::from_cycles(3, &["(1,2)", "(1,2,3)"]).unwrap(),
            PermGroup::from_cycles(4, &["(1,2)", "(1,2,3,4)"]).unwrap(),
            PermGroup::from_cycles(4, &["(1,2,3)", "(1,2)(3,4)"]).unwrap(),
            PermGroup::from_cycles(6, &["(1,2,3)", "(4,5,6)", "(1,4)(2,5)(3,6)"]).unwrap(),
        ]
    }

    #[test]
    fn suite_passes_on_small_groups() {
        let rep = run_property_suite(&groups(), &SigmaRange::All, 7);
        for (name, t) in rep.iter() {
            assert!(t.passed(), "{name}: {:?}", t.failures);
        }
        assert!(rep.get("glauberman-bijective").checked > 0);
        assert!(rep.get("canonical-bijection").checked > 0);
        assert!(rep.get("vertex-induction-count").checked > 0);
    }

    #[test]
    fn a5_excludes_theorem_a() {
        let a5 = PermGroup::from_cycles(5, &["(1,2,3,4,5)", "(3,4,5)"]).unwrap();
        let rep = run_property_suite(&[a5], &SigmaRange::Fixed("2,3,5".parse().unwrap()), 1);
        assert!(rep.all_pass(), "{rep:?}");
        assert_eq!(rep.get("theorem-A").checked, 0);
        assert_eq!(rep.get("theorem-A").excluded, 1);
    }

    #[test]
    fn empty_corpus() {
        let rep = run_property_suite(&[], &SigmaRange::All, 0);
        assert!(rep.is_empty() && rep.all_pass());
        assert!(rep.tallies.iter().all(|t| t.checked == 0));
    }

    #[test]
    fn scans() {
        let a5 = PermGroup::from_cycles(5, &["(1,2,3,4,5)", "(3,4,5)"]).unwrap();
        let reps = scan_corpus(&[a5], &SigmaRange::All, ScanMode::TheoremA).unwrap();
        let fails: Vec<String> = reps.iter().filter(|r| r.verdict == Verdict::Fails).map(|r| r.sigma.to_string()).collect();
        assert_eq!(fails, vec!["{2,3}", "{2,5}", "{3,5}", "{2,3,5}"]);
        assert!(reps.iter().filter(|r| r.verdict == Verdict::Fails).all(|r| !r.hypotheses_met()));
        let triv = PermGroup::new(1, vec![]).unwrap();
        let reps = scan_corpus(&[triv], &SigmaRange::All, ScanMode::TheoremA).unwrap();
        assert_eq!(summarize(&reps), (1, 0, 0));
        let reps = scan_corpus(&groups(), &SigmaRange::All, ScanMode::TheoremBAllR).unwrap();
        assert_eq!(summarize(&reps).1, 0);
    }

    #[test]
    fn order_216_clifford_vertex_example() {
        let ex = clifford_vertex_example().unwrap();
        assert_eq!(ex.order, 216);
        assert!(ex.structure_ok);
        assert_eq!(ex.inertia_index, 2);
        assert_eq!((ex.inertia_count, ex.group_count), (1, 2));
    }
}
