//! Exact elements of cyclotomic fields `Q(ζ_n)`.
//!
//! Values are stored in the power basis `1, ζ, …, ζ^{φ(n)-1}`, i.e. reduced
//! modulo the cyclotomic polynomial `Φ_n`, which makes the coefficient
//! vector a canonical form for a fixed conductor. Values of different
//! conductors are compared and combined in the least common multiple.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    if let Some(p) = phi_cache().lock().expect("poisoned").get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_polynomial(d);
            num = exact_div(&num, &div);
        }
    }
    let p = Arc::new(num);
    phi_cache().lock().expect("poisoned").insert(n, p.clone());
    p
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

pub fn euler_phi(n: u32) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

#[derive(Clone)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<Rational64>,
}

impl Cyclotomic {
    pub fn zero() -> Cyclotomic {
        Cyclotomic { conductor: 1, coeffs: vec![Rational64::zero()] }
    }

    pub fn one() -> Cyclotomic {
        Cyclotomic::from_int(1)
    }

    pub fn from_int(v: i64) -> Cyclotomic {
        Cyclotomic::from_rational(Rational64::from_integer(v))
    }

    pub fn from_rational(v: Rational64) -> Cyclotomic {
        Cyclotomic { conductor: 1, coeffs: vec![v] }
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Cyclotomic {
        let mut poly = vec![Rational64::zero(); n as usize];
        poly[k.rem_euclid(n as i64) as usize] = Rational64::one();
        Cyclotomic::from_poly(n, poly)
    }

    /// `Σ a_k ζ_n^k` for integer `a_k`, `k = 0..a.len()`.
    pub fn from_root_multiplicities(n: u32, a: &[i64]) -> Cyclotomic {
        let mut poly = vec![Rational64::zero(); n as usize];
        for (k, &c) in a.iter().enumerate() {
            poly[k % n as usize] += Rational64::from_integer(c);
        }
        Cyclotomic::from_poly(n, poly)
    }

    /// Reduces an arbitrary polynomial in `ζ_n` (any length) to canonical form.
    fn from_poly(n: u32, poly: Vec<Rational64>) -> Cyclotomic {
        let mut folded = vec![Rational64::zero(); n as usize];
        for (k, c) in poly.into_iter().enumerate() {
            folded[k % n as usize] += c;
        }
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        for i in (deg..folded.len()).rev() {
            let c = folded[i];
            if !c.is_zero() {
                for (j, &p) in phi.iter().enumerate() {
                    folded[i - deg + j] -= c * Rational64::from_integer(p);
                }
            }
        }
        folded.truncate(deg);
        Cyclotomic { conductor: n, coeffs: folded }
    }

    /// Rebuilds a value from its canonical coordinates; `None` if the length is not `φ(n)`.
    pub fn from_coeffs(conductor: u32, coeffs: Vec<Rational64>) -> Option<Cyclotomic> {
        (conductor > 0 && coeffs.len() == euler_phi(conductor)).then_some(Cyclotomic { conductor, coeffs })
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Canonical coordinates in the power basis of `Q(ζ_conductor)`.
    pub fn coeffs(&self) -> &[Rational64] {
        &self.coeffs
    }

    /// Re-expresses the value in `Q(ζ_m)`; `m` must be a multiple of the conductor.
    pub fn lift(&self, m: u32) -> Cyclotomic {
        assert!(m.is_multiple_of(self.conductor), "conductor {} does not divide {m}", self.conductor);
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut poly = vec![Rational64::zero(); m as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * step] = *c;
        }
        Cyclotomic::from_poly(m, poly)
    }

    fn common(&self, other: &Cyclotomic) -> (Cyclotomic, Cyclotomic) {
        let m = self.conductor.lcm(&other.conductor);
        (self.lift(m), other.lift(m))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<Rational64> {
        self.is_rational().then(|| self.coeffs[0])
    }

    pub fn to_integer(&self) -> Option<i64> {
        self.to_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    /// Algebraic integer test: coordinates in the power basis of a monic polynomial are integral.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Complex conjugation `ζ -> ζ^{-1}`.
    pub fn conj(&self) -> Cyclotomic {
        let n = self.conductor as usize;
        let mut poly = vec![Rational64::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[(n - k) % n] += *c;
        }
        Cyclotomic::from_poly(self.conductor, poly)
    }

    /// Galois image `ζ -> ζ^k` for `k` coprime to the conductor.
    pub fn galois(&self, k: i64) -> Cyclotomic {
        let n = self.conductor as i64;
        let mut poly = vec![Rational64::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            poly[(j as i64 * k).rem_euclid(n) as usize] += *c;
        }
        Cyclotomic::from_poly(self.conductor, poly)
    }

    pub fn scale(&self, r: Rational64) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Numerical value, for display and sanity checks only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let v = *c.numer() as f64 / *c.denom() as f64;
            let a = 2.0 * std::f64::consts::PI * k as f64 / n;
            re += v * a.cos();
            im += v * a.sin();
        }
        (re, im)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Cyclotomic) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;

    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor == rhs.conductor {
            return Cyclotomic {
                conductor: self.conductor,
                coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
            };
        }
        let (a, b) = self.common(rhs);
        &a + &b
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;

    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;

    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor != rhs.conductor {
            let (a, b) = self.common(rhs);
            return &a * &b;
        }
        if self.conductor == 1 {
            return Cyclotomic::from_rational(self.coeffs[0] * rhs.coeffs[0]);
        }
        let n = self.conductor as usize;
        let mut poly = vec![Rational64::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    poly[(i + j) % n] += a * b;
                }
            }
        }
        Cyclotomic::from_poly(self.conductor, poly)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Cyclotomic {
        iter.fold(Cyclotomic::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = match k {
                0 => String::new(),
                1 => format!("E({})", self.conductor),
                _ => format!("E({})^{k}", self.conductor),
            };
            let sign = if *c < Rational64::zero() { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if term.is_empty() {
                write!(f, "{sign}{mag}")?;
            } else if mag.is_one() {
                write!(f, "{sign}{term}")?;
            } else {
                write!(f, "{sign}{mag}*{term}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
