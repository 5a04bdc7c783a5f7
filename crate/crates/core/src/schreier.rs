//! Deterministic Schreier–Sims.
//!
//! Base points are chosen greedily: when a new base point is needed, the
//! point moved by the offending element with the largest orbit under the
//! current level's generators is taken (ties broken by the smallest point).

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::perm::Perm;

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    /// Strong generators fixing all earlier base points.
    gens: Vec<Perm>,
    /// `point -> u` with `base_point^u = point`.
    transversal: HashMap<usize, Perm>,
    /// Orbit in discovery order (deterministic).
    orbit: Vec<usize>,
}

impl Level {
    fn new(base_point: usize, degree: usize) -> Level {
        let mut l = Level { base_point, gens: Vec::new(), transversal: HashMap::new(), orbit: Vec::new() };
        l.recompute(degree);
        l
    }

    fn recompute(&mut self, degree: usize) {
        self.transversal.clear();
        self.orbit.clear();
        self.transversal.insert(self.base_point, Perm::identity(degree));
        self.orbit.push(self.base_point);
        let mut i = 0;
        while i < self.orbit.len() {
            let p = self.orbit[i];
            let u = self.transversal[&p].clone();
            for s in &self.gens {
                let q = s.image(p);
                if let std::collections::hash_map::Entry::Vacant(e) = self.transversal.entry(q) {
                    e.insert(&u * s);
                    self.orbit.push(q);
                }
            }
            i += 1;
        }
    }
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

fn orbit_len(point: usize, gens: &[Perm], degree: usize) -> usize {
    let mut seen = vec![false; degree];
    seen[point] = true;
    let mut stack = vec![point];
    let mut n = 1;
    while let Some(p) = stack.pop() {
        for g in gens {
            let q = g.image(p);
            if !seen[q] {
                seen[q] = true;
                n += 1;
                stack.push(q);
            }
        }
    }
    n
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Perm]) -> StabChain {
        let mut chain = StabChain { degree, levels: Vec::new() };
        let gens: Vec<Perm> = generators.iter().filter(|g| !g.is_identity()).cloned().collect();
        for g in gens {
            chain.add_generator(g);
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        let mut out: Vec<Perm> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Sifts `g` from level `start`; returns the residue and the level where it stopped.
    fn sift_from(&self, g: &Perm, start: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (i, l) in self.levels.iter().enumerate().skip(start) {
            let b = h.image(l.base_point);
            match l.transversal.get(&b) {
                Some(u) => h = &h * &u.inverse(),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, _) = self.sift_from(g, 0);
        h.is_identity()
    }

    fn pick_base_point(&self, h: &Perm, level_gens: &[Perm]) -> usize {
        let mut gens = level_gens.to_vec();
        gens.push(h.clone());
        let mut best = None;
        for p in h.support() {
            let len = orbit_len(p, &gens, self.degree);
            if best.is_none_or(|(_, l)| len > l) {
                best = Some((p, len));
            }
        }
        best.expect("non-identity permutation moves a point").0
    }

    fn add_generator(&mut self, g: Perm) {
        if self.contains(&g) {
            return;
        }
        if self.levels.is_empty() {
            let bp = self.pick_base_point(&g, &[]);
            self.levels.push(Level::new(bp, self.degree));
        }
        // the new generator enters at level 0
        self.insert_at(g, 0);
        self.complete(0);
    }

    /// Places `h` into levels `from..` where it fixes the earlier base points, extending the base if needed.
    fn insert_at(&mut self, h: Perm, from: usize) -> usize {
        let mut j = from;
        loop {
            if j == self.levels.len() {
                let bp = self.pick_base_point(&h, &[]);
                self.levels.push(Level::new(bp, self.degree));
            }
            self.levels[j].gens.push(h.clone());
            self.levels[j].recompute(self.degree);
            if h.image(self.levels[j].base_point) != self.levels[j].base_point {
                return j;
            }
            j += 1;
        }
    }

    /// Runs the Schreier–Sims loop from the bottom up to level `top`.
    fn complete(&mut self, top: usize) {
        let mut i = self.levels.len() as isize - 1;
        while i >= top as isize {
            let lvl = i as usize;
            match self.find_failing_schreier_gen(lvl) {
                Some((h, stop)) => {
                    // h fixes base points before `stop`; add it to levels lvl+1..=stop
                    let mut j = lvl + 1;
                    while j < stop.min(self.levels.len()) {
                        self.levels[j].gens.push(h.clone());
                        self.levels[j].recompute(self.degree);
                        j += 1;
                    }
                    let placed = self.insert_at(h, stop);
                    let _ = placed;
                    i = self.levels.len() as isize - 1;
                }
                None => i -= 1,
            }
        }
    }

    fn find_failing_schreier_gen(&self, lvl: usize) -> Option<(Perm, usize)> {
        let l = &self.levels[lvl];
        for &p in &l.orbit {
            let u = &l.transversal[&p];
            for s in &l.gens {
                let q = s.image(p);
                let uq = &l.transversal[&q];
                let schreier = &(u * s) * &uq.inverse();
                if schreier.is_identity() {
                    continue;
                }
                let (h, stop) = self.sift_from(&schreier, lvl + 1);
                if !h.is_identity() {
                    return Some((h, stop));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Perm {
        Perm::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn symmetric_and_alternating() {
        let s3 = StabChain::new(3, &[p(3, "(1,2)"), p(3, "(1,2,3)")]);
        assert_eq!(s3.order(), BigUint::from(6u32));
        let a5 = StabChain::new(5, &[p(5, "(1,2,3,4,5)"), p(5, "(3,4,5)")]);
        assert_eq!(a5.order(), BigUint::from(60u32));
        assert!(!a5.contains(&p(5, "(1,2)")));
        assert!(a5.contains(&p(5, "(1,2)(3,4)")));
        let s8 = StabChain::new(8, &[p(8, "(1,2)"), p(8, "(1,2,3,4,5,6,7,8)")]);
        assert_eq!(s8.order(), BigUint::from(40320u32));
        let m = StabChain::new(4, &[]);
        assert_eq!(m.order(), BigUint::from(1u32));
        assert!(m.contains(&Perm::identity(4)));
    }
}
