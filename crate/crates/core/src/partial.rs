//! σ-partial characters: restrictions of ordinary characters to the
//! σ-elements, the irreducible ones `Iσ(G)`, their vertices and Clifford
//! correspondents.

use std::cmp::Reverse;
use std::sync::{Arc, OnceLock};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::chartab::induce_with_fusion;
use crate::classes::fusion_map;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{ElemSet, PermGroup, SubgroupRef};
use crate::perm::Perm;
use crate::primes::PrimeSet;

type Q = Ratio<i128>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialCharacter {
    pub sigma: PrimeSet,
    /// Values on the σ-element classes, in class order.
    pub values: Vec<Cyclotomic>,
    /// Indices into `Irr(G)` of the characters restricting to this one.
    pub lifts: Vec<usize>,
    /// Subgroup class id (in the lattice of `G`) of the vertex, once computed.
    pub vertex: Option<usize>,
}

impl PartialCharacter {
    pub fn degree(&self) -> u64 {
        self.values[0].to_integer().expect("degree is an integer") as u64
    }
}

/// `Iσ(G)` with the data needed to decompose further partial characters.
#[derive(Debug)]
pub struct PartialTable {
    pub sigma: PrimeSet,
    /// Class indices of the σ-element classes.
    pub sigma_classes: Vec<usize>,
    pub members: Vec<PartialCharacter>,
    /// Row `i`: multiplicities of the members in `χ_i⁰`.
    pub decomposition: Vec<Vec<u64>>,
    exponent: u32,
    solver: Solver,
    vertices: OnceLock<Arc<Vec<usize>>>,
}

impl PartialTable {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Coefficients of a class function on the σ-classes in the basis `Iσ(G)`;
    /// fails unless they are nonnegative integers.
    pub fn decompose(&self, values: &[Cyclotomic]) -> Result<Vec<u64>> {
        let target = coords(values, self.exponent);
        let c = self
            .solver
            .solve(&target)
            .ok_or_else(|| Error::Consistency("class function is outside the span of the partial characters".into()))?;
        nonnegative_integers(&c)
    }

    /// Index of the member with exactly these values.
    pub fn index_of(&self, values: &[Cyclotomic]) -> Option<usize> {
        self.members.iter().position(|m| m.values == values)
    }

    /// Members with their vertex field filled in, if vertices have been computed.
    pub fn members_with_vertices(&self) -> Vec<PartialCharacter> {
        let v = self.vertices.get();
        self.members
            .iter()
            .enumerate()
            .map(|(i, m)| PartialCharacter { vertex: v.map(|v| v[i]), ..m.clone() })
            .collect()
    }
}

impl PermGroup {
    /// `Iσ(G)`, computed once per prime set.
    pub fn partial_table(self: &Arc<Self>, sigma: &PrimeSet) -> Result<Arc<PartialTable>> {
        if let Some(t) = self.partials.lock().expect("poisoned").get(sigma) {
            return Ok(t.clone());
        }
        let t = Arc::new(build_partial_table(self, sigma)?);
        Ok(self.partials.lock().expect("poisoned").entry(sigma.clone()).or_insert(t).clone())
    }
}

/// `Iσ(G)` sorted by degree.
pub fn sigma_partial_characters(g: &Arc<PermGroup>, sigma: &PrimeSet) -> Result<Vec<PartialCharacter>> {
    Ok(g.partial_table(sigma)?.members.clone())
}

fn build_partial_table(g: &Arc<PermGroup>, sigma: &PrimeSet) -> Result<PartialTable> {
    if !g.is_sigma_separable(sigma)? {
        return Err(Error::Precondition(format!("{} is not {sigma}-separable", g.name())));
    }
    let table = g.character_table()?;
    let sigma_classes = g.sigma_class_indices(sigma)?;
    let exponent = g.exponent()? as u32;

    let mut distinct: Vec<(Vec<Cyclotomic>, Vec<usize>)> = Vec::new();
    for (i, chi) in table.irreducibles().iter().enumerate() {
        let r: Vec<Cyclotomic> = sigma_classes.iter().map(|&c| chi.values()[c].clone()).collect();
        match distinct.iter_mut().find(|(v, _)| *v == r) {
            Some((_, lifts)) => lifts.push(i),
            None => distinct.push((r, vec![i])),
        }
    }
    distinct.sort_by_key(|(v, _)| v[0].to_integer());

    let mut members: Vec<PartialCharacter> = Vec::new();
    let mut basis: Vec<Vec<Q>> = Vec::new();
    for (values, lifts) in distinct {
        let target = coords(&values, exponent);
        let solver = Solver::new(basis.clone())
            .ok_or_else(|| Error::Consistency("partial characters found so far are dependent".into()))?;
        match solver.solve(&target) {
            Some(c) => {
                nonnegative_integers(&c)?;
            }
            None => {
                basis.push(target);
                members.push(PartialCharacter { sigma: sigma.clone(), values, lifts, vertex: None });
            }
        }
    }
    if members.len() != sigma_classes.len() {
        return Err(Error::Consistency(format!(
            "{} irreducible partial characters but {} σ-classes",
            members.len(),
            sigma_classes.len()
        )));
    }
    let solver = Solver::new(basis)
        .ok_or_else(|| Error::Consistency("irreducible partial characters are dependent".into()))?;
    let mut decomposition = Vec::with_capacity(table.len());
    for chi in table.irreducibles() {
        let r: Vec<Cyclotomic> = sigma_classes.iter().map(|&c| chi.values()[c].clone()).collect();
        let c = solver
            .solve(&coords(&r, exponent))
            .ok_or_else(|| Error::Consistency("restriction outside the span of Iσ".into()))?;
        decomposition.push(nonnegative_integers(&c)?);
    }
    Ok(PartialTable {
        sigma: sigma.clone(),
        sigma_classes,
        members,
        decomposition,
        exponent,
        solver,
        vertices: OnceLock::new(),
    })
}

/// Values of a partial character of `g` on the σ-classes of the subgroup `h`.
pub fn restrict_partial(g: &Arc<PermGroup>, sigma: &PrimeSet, values: &[Cyclotomic], h: &PermGroup) -> Result<Vec<Cyclotomic>> {
    let pt = g.partial_table(sigma)?;
    let fus = fusion_map(h, g)?;
    let hs = h.sigma_class_indices(sigma)?;
    hs.iter()
        .map(|&c| {
            let gc = fus[c];
            pt.sigma_classes
                .iter()
                .position(|&s| s == gc)
                .map(|p| values[p].clone())
                .ok_or_else(|| Error::Consistency("σ-class fuses into a non-σ class".into()))
        })
        .collect()
}

/// `φ_H = Σ a_μ μ` over `μ ∈ Iσ(H)`; returns the pairs with `a_μ > 0`.
pub fn decompose_on_subgroup(
    g: &Arc<PermGroup>,
    sigma: &PrimeSet,
    values: &[Cyclotomic],
    h: &SubgroupRef,
) -> Result<Vec<(usize, u64)>> {
    let h = g.own(h)?;
    let hg = h.as_group();
    decompose_on_group(g, sigma, values, &hg)
}

pub fn decompose_on_group(
    g: &Arc<PermGroup>,
    sigma: &PrimeSet,
    values: &[Cyclotomic],
    hg: &Arc<PermGroup>,
) -> Result<Vec<(usize, u64)>> {
    let res = restrict_partial(g, sigma, values, hg)?;
    let c = hg.partial_table(sigma)?.decompose(&res)?;
    Ok(c.into_iter().enumerate().filter(|(_, m)| *m > 0).collect())
}

/// `μ^G` on the σ-classes of `g`, for `μ ∈ Iσ(h)` with `h ≤ g`.
pub fn induce_partial(g: &Arc<PermGroup>, h: &Arc<PermGroup>, sigma: &PrimeSet, mu: usize) -> Result<Vec<Cyclotomic>> {
    let fus = fusion_map(h, g)?;
    induce_partial_with_fusion(g, h, &fus, sigma, mu)
}

fn induce_partial_with_fusion(
    g: &Arc<PermGroup>,
    h: &Arc<PermGroup>,
    fus: &[usize],
    sigma: &PrimeSet,
    mu: usize,
) -> Result<Vec<Cyclotomic>> {
    let hpt = h.partial_table(sigma)?;
    let lift = h.character_table()?.irreducibles()[hpt.members[mu].lifts[0]].values().to_vec();
    let ind = induce_with_fusion(g, h, fus, &lift)?;
    Ok(g.sigma_class_indices(sigma)?.iter().map(|&c| ind[c].clone()).collect())
}

/// Permutation of `Iσ(n)` induced by conjugation with `x` (normalizing `n`): entry `i` is the index of `θ_i^x`.
pub fn conjugate_partials(n: &Arc<PermGroup>, sigma: &PrimeSet, x: &Perm) -> Result<Vec<usize>> {
    let pt = n.partial_table(sigma)?;
    let cp = n.class_permutation(x)?;
    let pos_of = |c: usize| pt.sigma_classes.iter().position(|&s| s == c).expect("conjugation preserves σ-classes");
    pt.members
        .iter()
        .map(|theta| {
            let mut moved = vec![Cyclotomic::zero(); theta.values.len()];
            for (s, &c) in pt.sigma_classes.iter().enumerate() {
                moved[pos_of(cp[c])] = theta.values[s].clone();
            }
            pt.index_of(&moved)
                .ok_or_else(|| Error::Consistency("conjugate of a partial character is not a member".into()))
        })
        .collect()
}

/// Stabilizer in `g` of a point under an action given by generator images.
pub(crate) fn stabilizer<F>(g: &Arc<PermGroup>, point: usize, act: F) -> Result<SubgroupRef>
where
    F: Fn(&Perm) -> Result<Vec<usize>>,
{
    let t = g.elements()?;
    let gens = g.generators().to_vec();
    let images: Vec<Vec<usize>> = gens.iter().map(&act).collect::<Result<_>>()?;
    let mut orbit = vec![point];
    let mut transversal = vec![g.identity()];
    let mut schreier = Vec::new();
    let mut i = 0;
    while i < orbit.len() {
        let p = orbit[i];
        for (gen, img) in gens.iter().zip(&images) {
            let q = img[p];
            let u = &transversal[i] * gen;
            match orbit.iter().position(|&o| o == q) {
                Some(j) => schreier.push(t.index_of(&(&u * &transversal[j].inverse())).expect("in group")),
                None => {
                    orbit.push(q);
                    transversal.push(u);
                }
            }
        }
        i += 1;
    }
    Ok(g.subgroup_from_set(t.closure(&schreier)))
}

/// The inertia group `G_θ` of `θ ∈ Iσ(N)`.
pub fn partial_inertia_group(g: &Arc<PermGroup>, n: &SubgroupRef, sigma: &PrimeSet, theta: usize) -> Result<SubgroupRef> {
    let n = g.own(n)?;
    if !n.is_normal() {
        return Err(Error::Precondition("subgroup is not normal".into()));
    }
    let ng = n.as_group();
    stabilizer(g, theta, |x| conjugate_partials(&ng, sigma, x))
}

#[derive(Clone, Debug)]
pub struct CliffordCorrespondent {
    /// `G_θ`.
    pub inertia: SubgroupRef,
    /// Index of `μ` in `Iσ(G_θ)`, computed on `inertia.as_group()`.
    pub mu: usize,
    pub values: Vec<Cyclotomic>,
}

/// The unique `μ ∈ Iσ(G_θ|θ)` with `μ^G = φ`.
pub fn clifford_correspondent(
    g: &Arc<PermGroup>,
    sigma: &PrimeSet,
    phi: usize,
    n: &SubgroupRef,
    theta: usize,
) -> Result<CliffordCorrespondent> {
    let n = g.own(n)?;
    let inertia = partial_inertia_group(g, &n, sigma, theta)?;
    clifford_correspondent_in(g, sigma, phi, &n, theta, inertia)
}

/// As [`clifford_correspondent`], with the inertia group `G_θ` supplied by the caller.
pub fn clifford_correspondent_in(
    g: &Arc<PermGroup>,
    sigma: &PrimeSet,
    phi: usize,
    n: &SubgroupRef,
    theta: usize,
    inertia: SubgroupRef,
) -> Result<CliffordCorrespondent> {
    let n = g.own(n)?;
    let pt = g.partial_table(sigma)?;
    let phi_values = &pt.members[phi].values;
    let under = decompose_on_subgroup(g, sigma, phi_values, &n)?;
    if !under.iter().any(|&(i, _)| i == theta) {
        return Err(Error::Precondition("θ does not lie under φ".into()));
    }
    let tg = inertia.as_group();
    let ng_in_t = tg.own(&n)?.as_group();
    let tpt = tg.partial_table(sigma)?;
    let fus = fusion_map(&tg, g)?;
    // θ must be computed in the same standalone copy of N as above
    let ng = n.as_group();
    let theta_values = &ng.partial_table(sigma)?.members[theta].values;
    let theta_here = ng_in_t
        .partial_table(sigma)?
        .index_of(theta_values)
        .ok_or_else(|| Error::Consistency("θ not found in the inertia group's copy of N".into()))?;
    let mut hits = Vec::new();
    for mu in 0..tpt.len() {
        let over = decompose_on_group(&tg, sigma, &tpt.members[mu].values, &ng_in_t)?;
        if !over.iter().any(|&(i, _)| i == theta_here) {
            continue;
        }
        if induce_partial_with_fusion(g, &tg, &fus, sigma, mu)? == *phi_values {
            hits.push(mu);
        }
    }
    match hits.as_slice() {
        [mu] => Ok(CliffordCorrespondent { inertia, mu: *mu, values: tpt.members[*mu].values.clone() }),
        _ => Err(Error::Consistency(format!("{} Clifford correspondents found", hits.len()))),
    }
}

/// Vertex class (lattice id) of every member of `Iσ(G)`.
pub fn vertices(g: &Arc<PermGroup>, sigma: &PrimeSet) -> Result<Arc<Vec<usize>>> {
    let pt = g.partial_table(sigma)?;
    if let Some(v) = pt.vertices.get() {
        return Ok(v.clone());
    }
    let lat = g.subgroup_lattice()?;
    let order = g.order();
    let degrees: Vec<u64> = pt.members.iter().map(PartialCharacter::degree).collect();
    let mut classes: Vec<usize> = (0..lat.len()).collect();
    classes.sort_by_key(|&c| (Reverse(lat.classes[c].order / sigma.part_of(lat.classes[c].order)), c));
    let mut found: Vec<Vec<usize>> = vec![Vec::new(); pt.len()];
    for c in classes {
        let u = &lat.classes[c];
        let index = order / u.order;
        if !degrees.iter().any(|d| d % index == 0 && sigma.is_sigma_number(d / index)) {
            continue;
        }
        let hall_order = u.order / sigma.part_of(u.order);
        let hall = hall_in(&lat.classes, &u.rep_set, hall_order)
            .ok_or_else(|| Error::Consistency(format!("no Hall {sigma}′-subgroup in subgroup class {c}")))?;
        let ug = u.rep_group();
        let upt = ug.partial_table(sigma)?;
        let fus = fusion_map(&ug, g)?;
        for (a, alpha) in upt.members.iter().enumerate() {
            let d = alpha.degree();
            if !sigma.is_sigma_number(d) || !degrees.contains(&(d * index)) {
                continue;
            }
            let induced = induce_partial_with_fusion(g, &ug, &fus, sigma, a)?;
            if let Some(i) = pt.index_of(&induced) {
                found[i].push(hall);
            }
        }
    }
    let mut out = Vec::with_capacity(pt.len());
    for (i, hits) in found.iter().enumerate() {
        let Some(&v) = hits.first() else {
            return Err(Error::Consistency(format!("no vertex found for partial character {i}")));
        };
        if hits.iter().any(|&h| h != v) {
            return Err(Error::Consistency(format!("non-conjugate vertices found for partial character {i}")));
        }
        let q = lat.classes[v].order;
        let sp = |n: u64| n / sigma.part_of(n);
        if sp(degrees[i]) != sp(order / q) {
            return Err(Error::Consistency(format!("vertex degree law fails for partial character {i}")));
        }
        out.push(v);
    }
    let v = Arc::new(out);
    let _ = pt.vertices.set(v.clone());
    Ok(pt.vertices.get().expect("set").clone())
}

fn hall_in(classes: &[crate::lattice::SubgroupClass], within: &ElemSet, order: u64) -> Option<usize> {
    classes
        .iter()
        .filter(|c| c.order == order)
        .find(|c| c.members.iter().any(|m| m.is_subset(within)))
        .map(|c| c.id)
}

/// Members of `Iσ(G)` whose vertex is the class of `q`, optionally only those over `θ ∈ Iσ(N)`.
pub fn ipi_with_vertex(
    g: &Arc<PermGroup>,
    sigma: &PrimeSet,
    q: &SubgroupRef,
    over: Option<(&SubgroupRef, usize)>,
) -> Result<Vec<usize>> {
    let qc = g.subgroup_class_of(q)?;
    let pt = g.partial_table(sigma)?;
    let v = vertices(g, sigma)?;
    let mut out = Vec::new();
    for i in 0..pt.len() {
        if v[i] != qc {
            continue;
        }
        if let Some((n, theta)) = over {
            let parts = decompose_on_subgroup(g, sigma, &pt.members[i].values, n)?;
            if !parts.iter().any(|&(j, _)| j == theta) {
                continue;
            }
        }
        out.push(i);
    }
    Ok(out)
}

fn coords(values: &[Cyclotomic], e: u32) -> Vec<Q> {
    values
        .iter()
        .flat_map(|v| {
            let l = v.lift(e);
            l.coeffs().iter().map(|c| Q::new(*c.numer() as i128, *c.denom() as i128)).collect::<Vec<_>>()
        })
        .collect()
}

fn nonnegative_integers(c: &[Q]) -> Result<Vec<u64>> {
    c.iter()
        .map(|x| {
            if x.is_integer() && !x.is_negative() {
                Ok(x.to_integer() as u64)
            } else {
                Err(Error::Consistency(format!("coefficient {x} is not a nonnegative integer")))
            }
        })
        .collect()
}

/// Exact solver for `Σ c_j b_j = t` with linearly independent `b_j`.
#[derive(Debug)]
struct Solver {
    basis: Vec<Vec<Q>>,
    rows: Vec<usize>,
    inverse: Vec<Vec<Q>>,
}

impl Solver {
    fn new(basis: Vec<Vec<Q>>) -> Option<Solver> {
        let n = basis.len();
        if n == 0 {
            return Some(Solver { basis, rows: Vec::new(), inverse: Vec::new() });
        }
        let len = basis[0].len();
        // choose n independent coordinates
        let mut echelon: Vec<(usize, Vec<Q>)> = Vec::new();
        let mut rows = Vec::new();
        for r in 0..len {
            let mut v: Vec<Q> = basis.iter().map(|b| b[r]).collect();
            for (p, e) in &echelon {
                if !v[*p].is_zero() {
                    let f = v[*p] / e[*p];
                    for (x, y) in v.iter_mut().zip(e) {
                        *x -= f * y;
                    }
                }
            }
            if let Some(p) = v.iter().position(|x| !x.is_zero()) {
                echelon.push((p, v));
                rows.push(r);
                if rows.len() == n {
                    break;
                }
            }
        }
        if rows.len() < n {
            return None;
        }
        let mut m: Vec<Vec<Q>> = rows
            .iter()
            .map(|&r| {
                let mut row: Vec<Q> = basis.iter().map(|b| b[r]).collect();
                row.extend((0..n).map(|j| if j == rows.iter().position(|&x| x == r).unwrap() { Q::one() } else { Q::zero() }));
                row
            })
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&r| !m[r][col].is_zero())?;
            m.swap(p, col);
            let inv = m[col][col].recip();
            for x in m[col].iter_mut() {
                *x *= inv;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col];
                    let pivot = m[col].clone();
                    for (x, y) in m[r].iter_mut().zip(&pivot) {
                        *x -= f * y;
                    }
                }
            }
        }
        let inverse = m.into_iter().map(|row| row[n..].to_vec()).collect();
        Some(Solver { basis, rows, inverse })
    }

    fn solve(&self, target: &[Q]) -> Option<Vec<Q>> {
        let n = self.basis.len();
        let picked: Vec<Q> = self.rows.iter().map(|&r| target[r]).collect();
        let c: Vec<Q> = (0..n).map(|i| (0..n).map(|j| self.inverse[i][j] * picked[j]).sum()).collect();
        let ok = (0..target.len()).all(|r| (0..n).map(|j| c[j] * self.basis[j][r]).sum::<Q>() == target[r]);
        ok.then_some(c)
    }
}
