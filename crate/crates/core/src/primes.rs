//! Sets of primes and the arithmetic of σ-parts.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(p, exponent)` pairs in increasing order of `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeSet {
    primes: BTreeSet<u64>,
}

impl PrimeSet {
    pub fn empty() -> PrimeSet {
        PrimeSet::default()
    }

    pub fn new<I: IntoIterator<Item = u64>>(primes: I) -> Result<PrimeSet> {
        let primes: BTreeSet<u64> = primes.into_iter().collect();
        if let Some(&bad) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::Malformed(format!("{bad} is not a prime")));
        }
        Ok(PrimeSet { primes })
    }

    /// The primes dividing `n`.
    pub fn of(n: u64) -> PrimeSet {
        PrimeSet { primes: prime_divisors(n).into_iter().collect() }
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.contains(&p)
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().copied()
    }

    /// `n_σ = ∏_{p∈σ} p^{v_p(n)}`.
    pub fn part_of(&self, n: u64) -> u64 {
        sigma_part(n, self)
    }

    /// True iff every prime divisor of `n` lies in the set.
    pub fn is_sigma_number(&self, n: u64) -> bool {
        self.part_of(n) == n
    }

    /// True iff no prime divisor of `n` lies in the set.
    pub fn is_sigma_prime_number(&self, n: u64) -> bool {
        self.part_of(n) == 1
    }

    /// The complement inside the primes dividing `n`.
    pub fn complement_in(&self, n: u64) -> PrimeSet {
        PrimeSet { primes: prime_divisors(n).into_iter().filter(|p| !self.contains(*p)).collect() }
    }

    pub fn intersection(&self, other: &PrimeSet) -> PrimeSet {
        PrimeSet { primes: self.primes.intersection(&other.primes).copied().collect() }
    }

    /// Every subset of the primes dividing `n`, smallest first.
    pub fn subsets_of(n: u64) -> Vec<PrimeSet> {
        let ps = prime_divisors(n);
        let mut out: Vec<PrimeSet> = (0u32..1 << ps.len())
            .map(|mask| PrimeSet {
                primes: ps.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect(),
            })
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

pub fn sigma_part(mut n: u64, sigma: &PrimeSet) -> u64 {
    assert!(n >= 1, "sigma_part needs a positive integer");
    let mut part = 1;
    for p in sigma.iter() {
        while n.is_multiple_of(p) {
            n /= p;
            part *= p;
        }
    }
    part
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.primes.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses a comma-separated list such as `2,3,5`; the empty string is `{}`.
impl FromStr for PrimeSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<PrimeSet> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        if s.trim().is_empty() {
            return Ok(PrimeSet::empty());
        }
        let primes = s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Malformed(format!("bad prime {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        PrimeSet::new(primes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sigma_part_examples() {
        let s23: PrimeSet = "2,3".parse().unwrap();
        assert_eq!(sigma_part(60, &s23), 12);
        assert_eq!(sigma_part(60, &PrimeSet::empty()), 1);
        assert_eq!(sigma_part(60, &"2,3,5".parse().unwrap()), 60);
    }

    #[test]
    fn parse_rejects_composites() {
        assert!("2,4".parse::<PrimeSet>().is_err());
        assert_eq!("".parse::<PrimeSet>().unwrap(), PrimeSet::empty());
        assert_eq!(PrimeSet::subsets_of(60).len(), 8);
    }

    proptest! {
        #[test]
        fn part_times_complement_part(n in 1u64..100_000, mask in 0u32..16) {
            let base = [2u64, 3, 5, 7];
            let sigma = PrimeSet::new(base.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p)).unwrap();
            let a = sigma_part(n, &sigma);
            let b = sigma_part(n, &sigma.complement_in(n));
            prop_assert_eq!(a * b, n);
            prop_assert!(sigma.is_sigma_number(a));
        }
    }
}
