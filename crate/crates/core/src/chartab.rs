//! Ordinary character tables by the Dixon–Schneider method, and character arithmetic.

use std::sync::Arc;

use num_integer::Roots;
use num_rational::Rational64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classes::fusion_map;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::field::{find_prime, roots, Fq, Mat};
use crate::group::{PermGroup, SubgroupRef};
use crate::perm::Perm;
use crate::primes::PrimeSet;

/// Largest prime considered for the modular computation.
const PRIME_CAP: u64 = 1 << 31;
const SPLIT_SEED: u64 = 0x5eed_c1a5;
const RANDOM_SPLIT_ATTEMPTS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    group_order: u64,
    values: Vec<Cyclotomic>,
}

impl Character {
    pub fn new(group_order: u64, values: Vec<Cyclotomic>) -> Character {
        Character { group_order, values }
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn degree(&self) -> u64 {
        self.values[0].to_integer().expect("degree is a rational integer") as u64
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| *v == Cyclotomic::one())
    }

    /// `χ(1)_σ = |G|_σ`.
    pub fn has_sigma_defect_zero(&self, sigma: &PrimeSet) -> bool {
        has_sigma_defect_zero(self.degree(), self.group_order, sigma)
    }
}

pub fn has_sigma_defect_zero(degree: u64, group_order: u64, sigma: &PrimeSet) -> bool {
    sigma.part_of(degree) == sigma.part_of(group_order)
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    order: u64,
    class_sizes: Vec<u64>,
    element_orders: Vec<u64>,
    inverse_class: Vec<usize>,
    irreducibles: Vec<Character>,
}

impl CharacterTable {
    /// Assembles a table from stored rows and checks every table invariant.
    pub fn from_parts(g: &PermGroup, rows: Vec<Vec<Cyclotomic>>) -> Result<CharacterTable> {
        let cd = g.class_data()?;
        let order = g.order();
        let table = CharacterTable {
            order,
            class_sizes: cd.sizes(),
            element_orders: cd.classes.iter().map(|c| c.element_order).collect(),
            inverse_class: cd.inverse_class.clone(),
            irreducibles: rows.into_iter().map(|v| Character::new(order, v)).collect(),
        };
        table.validate()?;
        Ok(table)
    }

    pub fn group_order(&self) -> u64 {
        self.order
    }

    pub fn class_sizes(&self) -> &[u64] {
        &self.class_sizes
    }

    pub fn element_orders(&self) -> &[u64] {
        &self.element_orders
    }

    pub fn inverse_class(&self) -> &[usize] {
        &self.inverse_class
    }

    pub fn irreducibles(&self) -> &[Character] {
        &self.irreducibles
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.irreducibles.iter().map(Character::degree).collect()
    }

    /// `(1/|G|) Σ |C| α(g) conj(β(g))`.
    pub fn inner_product(&self, a: &[Cyclotomic], b: &[Cyclotomic]) -> Result<Rational64> {
        let k = self.class_sizes.len();
        if a.len() != k || b.len() != k {
            return Err(Error::Precondition(format!(
                "class functions of length {} and {} on a group with {k} classes",
                a.len(),
                b.len()
            )));
        }
        let total: Cyclotomic = (0..k)
            .map(|m| (&a[m] * &b[m].conj()).scale(Rational64::from_integer(self.class_sizes[m] as i64)))
            .sum();
        let r = total
            .to_rational()
            .ok_or_else(|| Error::Consistency(format!("inner product {total} is not rational")))?;
        Ok(r / Rational64::from_integer(self.order as i64))
    }

    /// Multiplicities `⟨f, χ⟩` for every irreducible `χ`.
    pub fn decompose(&self, f: &[Cyclotomic]) -> Result<Vec<Rational64>> {
        self.irreducibles.iter().map(|chi| self.inner_product(f, chi.values())).collect()
    }

    /// Decomposes a character; fails unless all multiplicities are nonnegative integers.
    pub fn decompose_character(&self, f: &[Cyclotomic]) -> Result<Vec<u64>> {
        self.decompose(f)?
            .into_iter()
            .map(|r| {
                if r.is_integer() && r >= Rational64::zero() {
                    Ok(r.to_integer() as u64)
                } else {
                    Err(Error::Consistency(format!("multiplicity {r} is not a nonnegative integer")))
                }
            })
            .collect()
    }

    /// Checks orthogonality, the degree equation and integrality.
    pub fn validate(&self) -> Result<()> {
        let k = self.class_sizes.len();
        if self.irreducibles.len() != k {
            return Err(Error::Consistency(format!("{} irreducibles for {k} classes", self.irreducibles.len())));
        }
        let mut sum_sq = 0u64;
        for chi in &self.irreducibles {
            if chi.values.len() != k {
                return Err(Error::Consistency("row length differs from class count".into()));
            }
            let d = chi.values[0]
                .to_integer()
                .filter(|&d| d > 0)
                .ok_or_else(|| Error::Consistency("degree is not a positive integer".into()))? as u64;
            if !self.order.is_multiple_of(d) {
                return Err(Error::Consistency(format!("degree {d} does not divide {}", self.order)));
            }
            if !chi.values.iter().all(Cyclotomic::is_integral) {
                return Err(Error::Consistency("character value is not an algebraic integer".into()));
            }
            sum_sq += d * d;
        }
        if sum_sq != self.order {
            return Err(Error::Consistency(format!("sum of squared degrees {sum_sq} != {}", self.order)));
        }
        for (i, a) in self.irreducibles.iter().enumerate() {
            for (j, b) in self.irreducibles.iter().enumerate().skip(i) {
                let ip = self.inner_product(a.values(), b.values())?;
                let expect = if i == j { Rational64::one() } else { Rational64::zero() };
                if ip != expect {
                    return Err(Error::Consistency(format!("rows {i} and {j} have inner product {ip}")));
                }
            }
        }
        for m in 0..k {
            for l in m..k {
                let s: Cyclotomic =
                    self.irreducibles.iter().map(|chi| &chi.values[m] * &chi.values[l].conj()).sum();
                let expect = if m == l { (self.order / self.class_sizes[m]) as i64 } else { 0 };
                if s != Cyclotomic::from_int(expect) {
                    return Err(Error::Consistency(format!("columns {m} and {l} fail orthogonality")));
                }
            }
        }
        Ok(())
    }
}

impl PermGroup {
    /// The character table, computed once and cached.
    pub fn character_table(&self) -> Result<Arc<CharacterTable>> {
        if let Some(t) = self.char_table.get() {
            return Ok(t.clone());
        }
        let table = dixon_schneider(self)?;
        let _ = self.char_table.set(Arc::new(table));
        Ok(self.char_table.get().expect("set").clone())
    }

    /// Installs a table obtained elsewhere (e.g. a disk cache) after validating it against this group.
    pub fn install_character_table(&self, rows: Vec<Vec<Cyclotomic>>) -> Result<Arc<CharacterTable>> {
        let table = CharacterTable::from_parts(self, rows)?;
        let _ = self.char_table.set(Arc::new(table));
        Ok(self.char_table.get().expect("set").clone())
    }

    pub fn has_character_table(&self) -> bool {
        self.char_table.get().is_some()
    }
}

/// Values of a class function of `g` on the classes of `h`.
pub fn restrict_character(g: &Arc<PermGroup>, f: &[Cyclotomic], h: &SubgroupRef) -> Result<Vec<Cyclotomic>> {
    let h = g.own(h)?;
    let fus = fusion_map(&h.as_group(), g)?;
    Ok(fus.iter().map(|&c| f[c].clone()).collect())
}

/// Induces a class function of `h` (indexed by `h`'s own classes) to `g`.
pub fn induce_character(g: &Arc<PermGroup>, h: &SubgroupRef, theta: &[Cyclotomic]) -> Result<Vec<Cyclotomic>> {
    let h = g.own(h)?;
    induce_from_group(g, &h.as_group(), theta)
}

/// Induction from a group whose elements all lie in `g`.
pub fn induce_from_group(g: &PermGroup, hg: &PermGroup, theta: &[Cyclotomic]) -> Result<Vec<Cyclotomic>> {
    let fus = fusion_map(hg, g)?;
    induce_with_fusion(g, hg, &fus, theta)
}

pub(crate) fn induce_with_fusion(
    g: &PermGroup,
    hg: &PermGroup,
    fus: &[usize],
    theta: &[Cyclotomic],
) -> Result<Vec<Cyclotomic>> {
    let hcd = hg.class_data()?;
    if theta.len() != hcd.len() {
        return Err(Error::Precondition(format!(
            "class function has {} entries, subgroup has {} classes",
            theta.len(),
            hcd.len()
        )));
    }
    let gcd = g.class_data()?;
    let mut sums = vec![Cyclotomic::zero(); gcd.len()];
    for (i, &m) in fus.iter().enumerate() {
        sums[m] = &sums[m] + &theta[i].scale(Rational64::from_integer(hcd.classes[i].size as i64));
    }
    let horder = hg.order() as i64;
    Ok(sums
        .into_iter()
        .enumerate()
        .map(|(m, s)| {
            let cent = (g.order() / gcd.classes[m].size) as i64;
            s.scale(Rational64::new(cent, horder))
        })
        .collect())
}

/// Permutation of `Irr(n)` induced by conjugation with `x` (which normalizes `n`): entry `i` is the index of `χ_i^x`.
pub fn conjugate_irreducibles(n: &PermGroup, x: &Perm) -> Result<Vec<usize>> {
    let table = n.character_table()?;
    let cp = n.class_permutation(x)?;
    table
        .irreducibles()
        .iter()
        .map(|chi| {
            let mut moved = vec![Cyclotomic::zero(); cp.len()];
            for (c, &img) in cp.iter().enumerate() {
                moved[img] = chi.values()[c].clone();
            }
            table
                .irreducibles()
                .iter()
                .position(|psi| psi.values() == moved.as_slice())
                .ok_or_else(|| Error::Consistency("conjugate of an irreducible is not irreducible".into()))
        })
        .collect()
}

/// Inner product of class functions on `g`.
pub fn inner_product(g: &PermGroup, a: &[Cyclotomic], b: &[Cyclotomic]) -> Result<Rational64> {
    g.character_table()?.inner_product(a, b)
}

/// Indices of the irreducibles of `g` lying over `theta ∈ Irr(n)`.
pub fn irr_over(g: &Arc<PermGroup>, n: &SubgroupRef, theta: &[Cyclotomic]) -> Result<Vec<usize>> {
    let n = g.own(n)?;
    if !n.is_normal() {
        return Err(Error::Precondition("subgroup is not normal".into()));
    }
    let ng = n.as_group();
    let fus = fusion_map(&ng, g)?;
    let table = g.character_table()?;
    let mut out = Vec::new();
    for (i, chi) in table.irreducibles().iter().enumerate() {
        let res: Vec<Cyclotomic> = fus.iter().map(|&c| chi.values()[c].clone()).collect();
        if !inner_product(&ng, &res, theta)?.is_zero() {
            out.push(i);
        }
    }
    Ok(out)
}

fn dixon_schneider(g: &PermGroup) -> Result<CharacterTable> {
    let t = g.elements()?;
    let cd = g.class_data()?;
    let k = cd.len();
    let n = t.len() as u64;
    let e = g.exponent()?;

    let mut lower = 2 * n.sqrt();
    let q = loop {
        let q = find_prime(e, lower, PRIME_CAP)
            .ok_or_else(|| Error::Config(format!("no prime q = 1 mod {e} with q^2 > 4|G| below {PRIME_CAP}")))?;
        if q * q > 4 * n {
            break q;
        }
        lower = q;
    };
    let f = Fq::new(q);

    // c[(j*k + l)*k + m] = #{(x, y) : x in C_j, y in C_l, xy = g_m}
    let mut coeff = vec![0u64; k * k * k];
    for m in 0..k {
        let gm = cd.classes[m].rep_index;
        for y in 0..t.len() {
            let l = cd.class_of[y] as usize;
            let x = t.mul(gm, t.inverse(y));
            let j = cd.class_of[x] as usize;
            coeff[(j * k + l) * k + m] += 1;
        }
    }
    let class_matrix = |j: usize| -> Mat {
        let mut a = Mat::zero(k, k);
        for l in 0..k {
            for m in 0..k {
                a.set(l, m, coeff[(j * k + l) * k + m] % q);
            }
        }
        a
    };

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k).map(|i| unit(k, i)).collect()];
    for j in 1..k {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let a = class_matrix(j);
        spaces = split_all(f, &a, spaces)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut attempts = 0;
    while spaces.iter().any(|s| s.len() > 1) {
        if attempts == RANDOM_SPLIT_ATTEMPTS {
            return Err(Error::Consistency("class matrices failed to split the centre".into()));
        }
        attempts += 1;
        let mut a = Mat::zero(k, k);
        for j in 0..k {
            let r = rng.gen_range(1..q);
            for l in 0..k {
                for m in 0..k {
                    let v = f.add(a.at(l, m), f.mul(r, coeff[(j * k + l) * k + m] % q));
                    a.set(l, m, v);
                }
            }
        }
        spaces = split_all(f, &a, spaces)?;
    }
    if spaces.len() != k {
        return Err(Error::Consistency(format!("found {} eigenvectors for {k} classes", spaces.len())));
    }

    let z = f.primitive_root();
    let power_classes: Vec<Vec<usize>> = cd
        .classes
        .iter()
        .map(|c| {
            let mut out = vec![0usize; c.element_order as usize];
            let mut acc = 0usize;
            for slot in out.iter_mut() {
                *slot = cd.class_of[acc] as usize;
                acc = t.mul(acc, c.rep_index);
            }
            out
        })
        .collect();

    let max_degree = n.sqrt();
    let mut rows = Vec::with_capacity(k);
    for space in spaces {
        let w0 = &space[0];
        let s = f.inv(w0[0]);
        let omega: Vec<u64> = w0.iter().map(|&x| f.mul(x, s)).collect();
        let mut norm = 0u64;
        for m in 0..k {
            let term = f.mul(f.mul(omega[m], omega[cd.inverse_class[m]]), f.inv(cd.classes[m].size % q));
            norm = f.add(norm, term);
        }
        let d2 = f.mul(n % q, f.inv(norm));
        let d = (1..=max_degree)
            .find(|&d| d * d % q == d2)
            .ok_or_else(|| Error::Consistency("no integral degree for an eigenvector".into()))?;
        let values_mod: Vec<u64> =
            (0..k).map(|m| f.mul(f.mul(omega[m], d % q), f.inv(cd.classes[m].size % q))).collect();
        let mut row = Vec::with_capacity(k);
        for m in 0..k {
            let o = cd.classes[m].element_order;
            let zeta = f.pow(z, (q - 1) / o);
            let inv_o = f.inv(o % q);
            let mut mult = Vec::with_capacity(o as usize);
            for kk in 0..o {
                let mut acc = 0u64;
                for l in 0..o {
                    let root = f.pow(zeta, (o - (kk * l) % o) % o);
                    acc = f.add(acc, f.mul(values_mod[power_classes[m][l as usize]], root));
                }
                let a = f.mul(acc, inv_o);
                if a > d {
                    return Err(Error::Consistency(format!("eigenvalue multiplicity {a} exceeds degree {d}")));
                }
                mult.push(a as i64);
            }
            row.push(Cyclotomic::from_root_multiplicities(o as u32, &mult));
        }
        rows.push(row);
    }
    rows.sort_by_cached_key(|row| {
        let degree = row[0].to_integer().unwrap_or(0);
        let nontrivial = row.iter().any(|v| *v != Cyclotomic::one());
        let coords: Vec<Vec<Rational64>> = row.iter().map(|v| v.coeffs().to_vec()).collect();
        (degree, nontrivial, coords)
    });
    CharacterTable::from_parts(g, rows)
}

fn unit(k: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; k];
    v[i] = 1;
    v
}

fn split_all(f: Fq, a: &Mat, spaces: Vec<Vec<Vec<u64>>>) -> Result<Vec<Vec<Vec<u64>>>> {
    let mut out = Vec::with_capacity(spaces.len());
    for s in spaces {
        if s.len() == 1 {
            out.push(s);
        } else {
            out.extend(split(f, a, s)?);
        }
    }
    Ok(out)
}

/// Splits an `a`-invariant subspace (rows in reduced echelon form) into eigenspaces.
fn split(f: Fq, a: &Mat, basis: Vec<Vec<u64>>) -> Result<Vec<Vec<Vec<u64>>>> {
    let k = a.rows;
    let d = basis.len();
    let pivots: Vec<usize> = basis.iter().map(|b| b.iter().position(|&x| x != 0).expect("nonzero row")).collect();
    let mut r = Mat::zero(d, d);
    for (i, b) in basis.iter().enumerate() {
        for (ip, &p) in pivots.iter().enumerate() {
            let v = (0..k).fold(0u64, |acc, m| f.add(acc, f.mul(a.at(p, m), b[m])));
            r.set(ip, i, v);
        }
    }
    let lambdas = roots(f, &r.char_poly(f));
    if lambdas.len() <= 1 {
        return Ok(vec![basis]);
    }
    let mut out = Vec::with_capacity(lambdas.len());
    let mut total = 0;
    for lambda in lambdas {
        let mut shifted = r.clone();
        for i in 0..d {
            let v = f.sub(shifted.at(i, i), lambda);
            shifted.set(i, i, v);
        }
        let coords = shifted.nullspace(f);
        total += coords.len();
        let vecs: Vec<Vec<u64>> = coords
            .iter()
            .map(|c| {
                let mut v = vec![0u64; k];
                for (ci, b) in c.iter().zip(&basis) {
                    if *ci != 0 {
                        for m in 0..k {
                            v[m] = f.add(v[m], f.mul(*ci, b[m]));
                        }
                    }
                }
                v
            })
            .collect();
        out.push(echelon(f, vecs));
    }
    if total != d {
        return Err(Error::Consistency("class matrix is not diagonalizable over the chosen field".into()));
    }
    Ok(out)
}

/// Reduced row echelon form of independent rows.
fn echelon(f: Fq, rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let mut m = Mat { rows: rows.len(), cols: rows[0].len(), data: rows.concat() };
    let mut out_rows = 0;
    for col in 0..m.cols {
        let Some(p) = (out_rows..m.rows).find(|&r| m.at(r, col) != 0) else { continue };
        for c in 0..m.cols {
            m.data.swap(p * m.cols + c, out_rows * m.cols + c);
        }
        let inv = f.inv(m.at(out_rows, col));
        for c in 0..m.cols {
            let v = f.mul(m.at(out_rows, c), inv);
            m.set(out_rows, c, v);
        }
        for r in 0..m.rows {
            if r != out_rows && m.at(r, col) != 0 {
                let factor = m.at(r, col);
                for c in 0..m.cols {
                    let v = f.sub(m.at(r, c), f.mul(factor, m.at(out_rows, c)));
                    m.set(r, c, v);
                }
            }
        }
        out_rows += 1;
        if out_rows == m.rows {
            break;
        }
    }
    m.data.chunks(m.cols).take(out_rows).map(<[u64]>::to_vec).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Arc<PermGroup> {
        PermGroup::from_cycles(3, &["(1,2)", "(1,2,3)"]).unwrap()
    }

    fn ints(v: &[Cyclotomic]) -> Vec<i64> {
        v.iter().map(|x| x.to_integer().unwrap()).collect()
    }

    /// Permutation character counted directly from fixed points.
    fn fixed_point_character(g: &PermGroup) -> Vec<Cyclotomic> {
        g.conjugacy_classes()
            .unwrap()
            .iter()
            .map(|c| {
                let fixed = (0..g.degree()).filter(|&p| c.representative.image(p) == p).count();
                Cyclotomic::from_int(fixed as i64)
            })
            .collect()
    }

    fn orbit_count(g: &PermGroup) -> i64 {
        let mut seen = vec![false; g.degree()];
        let mut count = 0;
        for p in 0..g.degree() {
            if seen[p] {
                continue;
            }
            count += 1;
            let mut stack = vec![p];
            seen[p] = true;
            while let Some(x) = stack.pop() {
                for gen in g.generators() {
                    let y = gen.image(x);
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        count
    }

    #[test]
    fn small_tables() {
        let t = s3().character_table().unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 2]);
        assert_eq!(ints(t.irreducibles()[0].values()), vec![1, 1, 1]);
        assert_eq!(ints(t.irreducibles()[1].values()), vec![1, -1, 1]);
        assert_eq!(ints(t.irreducibles()[2].values()), vec![2, 0, -1]);

        let triv = PermGroup::new(2, vec![]).unwrap();
        let t = triv.character_table().unwrap();
        assert_eq!(t.len(), 1);
        assert!(t.irreducibles()[0].is_trivial());

        let a5 = PermGroup::from_cycles(5, &["(1,2,3,4,5)", "(3,4,5)"]).unwrap();
        assert_eq!(a5.character_table().unwrap().degrees(), vec![1, 3, 3, 4, 5]);
    }

    #[test]
    fn cyclic_rows_are_powers_of_a_root() {
        let c3 = PermGroup::from_cycles(3, &["(1,2,3)"]).unwrap();
        let t = c3.character_table().unwrap();
        let cd = c3.class_data().unwrap();
        let gen = Perm::parse_cycles(3, "(1,2,3)").unwrap();
        let mut expected: Vec<Vec<Cyclotomic>> = (0..3)
            .map(|j| {
                (0..3)
                    .map(|m| {
                        let g = &cd.classes[m].representative;
                        let k = (0..3).find(|&k| gen.pow(k) == *g).unwrap() as i64;
                        Cyclotomic::root_of_unity(3, j * k)
                    })
                    .collect()
            })
            .collect();
        for row in t.irreducibles() {
            let pos = expected.iter().position(|e| e.as_slice() == row.values()).expect("row is a power character");
            expected.remove(pos);
        }
        assert!(expected.is_empty());
    }

    #[test]
    fn permutation_character_oracle() {
        for (deg, gens) in [
            (4, vec!["(1,2)", "(1,2,3,4)"]),
            (5, vec!["(1,2,3,4,5)", "(3,4,5)"]),
            (6, vec!["(1,2,3)", "(4,5,6)", "(1,4)(2,5)(3,6)"]),
            (7, vec!["(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"]),
        ] {
            let g = PermGroup::from_cycles(deg, &gens).unwrap();
            let t = g.character_table().unwrap();
            let pi = fixed_point_character(&g);
            let mult = t.decompose_character(&pi).unwrap();
            assert_eq!(mult[0] as i64, orbit_count(&g));
            let rebuilt: u64 = mult.iter().zip(t.degrees()).map(|(m, d)| m * d).sum();
            assert_eq!(rebuilt, deg as u64);
        }
    }

    #[test]
    fn regular_character_contains_each_irreducible_by_degree() {
        let g = PermGroup::from_cycles(4, &["(1,2,3)", "(1,2)(3,4)"]).unwrap();
        let t = g.character_table().unwrap();
        let mut reg = vec![Cyclotomic::zero(); t.len()];
        reg[0] = Cyclotomic::from_int(12);
        let mult = t.decompose_character(&reg).unwrap();
        assert_eq!(mult, t.degrees());
    }

    #[test]
    fn restriction_and_induction() {
        let g = s3();
        let t = g.character_table().unwrap();
        let chi2 = t.irreducibles()[2].values().to_vec();
        let c3 = g.subgroup_from_cycles(&["(1,2,3)"]).unwrap();
        let res = restrict_character(&g, &chi2, &c3).unwrap();
        let ct = c3.as_group().character_table().unwrap();
        assert_eq!(ct.decompose_character(&res).unwrap(), vec![0, 1, 1]);
        assert_eq!(restrict_character(&g, &chi2, &g.whole().unwrap()).unwrap(), chi2);

        let lin = ct.irreducibles()[1].values().to_vec();
        assert_eq!(induce_character(&g, &c3, &lin).unwrap(), chi2);

        let c2 = g.subgroup_from_cycles(&["(1,2)"]).unwrap();
        let one = vec![Cyclotomic::one(); 2];
        let ind = induce_character(&g, &c2, &one).unwrap();
        assert_eq!(t.decompose_character(&ind).unwrap(), vec![1, 0, 1]);

        let a4 = PermGroup::from_cycles(4, &["(1,2,3)", "(1,2)(3,4)"]).unwrap();
        let s4 = PermGroup::from_cycles(4, &["(1,2)", "(1,2,3,4)"]).unwrap();
        assert!(restrict_character(&a4, &vec![Cyclotomic::one(); 4], &s4.whole().unwrap()).is_err());
    }

    #[test]
    fn inner_products_and_defect() {
        let g = s3();
        let t = g.character_table().unwrap();
        let chi2 = t.irreducibles()[2].values();
        let sum: Vec<Cyclotomic> = chi2.iter().map(|v| v + &Cyclotomic::one()).collect();
        assert_eq!(inner_product(&g, chi2, &sum).unwrap(), Rational64::one());
        assert!(inner_product(&g, chi2, &sum[..2]).is_err());
        let two: PrimeSet = "2".parse().unwrap();
        assert!(t.irreducibles()[2].has_sigma_defect_zero(&two));
        assert!(!t.irreducibles()[0].has_sigma_defect_zero(&two));
        assert!(t.irreducibles()[0].has_sigma_defect_zero(&"5".parse().unwrap()));
    }

    #[test]
    fn characters_over_a_normal_subgroup() {
        let g = s3();
        let c3 = g.subgroup_from_cycles(&["(1,2,3)"]).unwrap();
        let ct = c3.as_group().character_table().unwrap();
        assert_eq!(irr_over(&g, &c3, ct.irreducibles()[1].values()).unwrap(), vec![2]);
        assert_eq!(irr_over(&g, &c3, ct.irreducibles()[0].values()).unwrap(), vec![0, 1]);
        let c2 = g.subgroup_from_cycles(&["(1,2)"]).unwrap();
        assert!(irr_over(&g, &c2, &[Cyclotomic::one(), Cyclotomic::one()]).is_err());
        let whole = g.whole().unwrap();
        let t = g.character_table().unwrap();
        let chi = t.irreducibles()[2].values().to_vec();
        let wg = whole.as_group();
        let fus = crate::classes::fusion_map(&wg, &g).unwrap();
        let theta: Vec<Cyclotomic> = fus.iter().map(|&c| chi[c].clone()).collect();
        assert_eq!(irr_over(&g, &whole, &theta).unwrap(), vec![2]);
    }
}
