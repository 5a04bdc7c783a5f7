//! Arithmetic in prime fields `F_q` (q < 2^31) and the small amount of
//! linear algebra the character table needs.

use crate::primes::{is_prime, prime_divisors};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fq {
    pub q: u64,
}

impl Fq {
    pub fn new(q: u64) -> Fq {
        assert!(is_prime(q) && q < (1 << 31));
        Fq { q }
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q { s - self.q } else { s }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b { a - b } else { a + self.q - b }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.q
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 { 0 } else { self.q - a }
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        a %= self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.q), "inverse of zero");
        self.pow(a, self.q - 2)
    }

    pub fn from_i64(self, v: i64) -> u64 {
        v.rem_euclid(self.q as i64) as u64
    }

    /// Least primitive root.
    pub fn primitive_root(self) -> u64 {
        let factors = prime_divisors(self.q - 1);
        (2..self.q)
            .find(|&g| factors.iter().all(|&p| self.pow(g, (self.q - 1) / p) != 1))
            .unwrap_or(1)
    }
}

/// Least prime `q ≡ 1 (mod m)` with `q > lower`, below `cap`.
pub fn find_prime(m: u64, lower: u64, cap: u64) -> Option<u64> {
    let mut q = (lower / m + 1) * m + 1;
    while q < cap {
        if is_prime(q) {
            return Some(q);
        }
        q += m;
    }
    None
}

/// Dense matrix over `F_q`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, f: Fq, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.at(i, j), f.mul(a, other.at(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Basis of the right null space `{x : Mx = 0}` as column vectors.
    pub fn nullspace(&self, f: Fq) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            let Some(p) = (row..m.rows).find(|&r| m.at(r, col) != 0) else { continue };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = f.inv(m.at(row, col));
            for c in 0..m.cols {
                let v = f.mul(m.at(row, c), inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r != row && m.at(r, col) != 0 {
                    let factor = m.at(r, col);
                    for c in 0..m.cols {
                        let v = f.sub(m.at(r, c), f.mul(factor, m.at(row, c)));
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == m.rows {
                break;
            }
        }
        let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u64; m.cols];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.at(r, fc));
                }
                v
            })
            .collect()
    }

    /// Characteristic polynomial via Hessenberg reduction; coefficients lowest degree first, monic.
    pub fn char_poly(&self, f: Fq) -> Vec<u64> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut h = self.clone();
        // reduce to upper Hessenberg form by similarity transforms
        for col in 0..n.saturating_sub(2) {
            let Some(p) = (col + 1..n).find(|&r| h.at(r, col) != 0) else { continue };
            if p != col + 1 {
                let r2 = col + 1;
                for c in 0..n {
                    h.data.swap(p * n + c, r2 * n + c);
                }
                for r in 0..n {
                    h.data.swap(r * n + p, r * n + r2);
                }
            }
            let pivot_inv = f.inv(h.at(col + 1, col));
            for r in col + 2..n {
                let factor = f.mul(h.at(r, col), pivot_inv);
                if factor == 0 {
                    continue;
                }
                for c in 0..n {
                    let v = f.sub(h.at(r, c), f.mul(factor, h.at(col + 1, c)));
                    h.set(r, c, v);
                }
                for rr in 0..n {
                    let v = f.add(h.at(rr, col + 1), f.mul(factor, h.at(rr, r)));
                    h.set(rr, col + 1, v);
                }
            }
        }
        // recurrence on leading principal minors
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for m in 1..=n {
            let mut next = vec![0u64; m + 1];
            // (x - h[m-1][m-1]) * p_{m-1}
            let prev = &polys[m - 1];
            for (i, &c) in prev.iter().enumerate() {
                next[i + 1] = f.add(next[i + 1], c);
                next[i] = f.sub(next[i], f.mul(h.at(m - 1, m - 1), c));
            }
            let mut prod = 1u64;
            for i in 1..m {
                prod = f.mul(prod, h.at(m - i, m - i - 1));
                let coef = f.mul(prod, h.at(m - i - 1, m - 1));
                if coef == 0 {
                    continue;
                }
                for (j, &c) in polys[m - i - 1].iter().enumerate() {
                    next[j] = f.sub(next[j], f.mul(coef, c));
                }
            }
            polys.push(next);
        }
        polys.pop().expect("n+1 polynomials")
    }
}

/// Roots of a polynomial in `F_q` by exhaustive evaluation.
pub fn roots(f: Fq, poly: &[u64]) -> Vec<u64> {
    (0..f.q)
        .filter(|&x| poly.iter().rev().fold(0u64, |acc, &c| f.add(f.mul(acc, x), c)) == 0)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_search_and_roots() {
        assert_eq!(find_prime(6, 4, 1000), Some(7));
        assert_eq!(find_prime(60, 22, 10_000), Some(61));
        let f = Fq::new(61);
        let g = f.primitive_root();
        assert_eq!(g, 2);
        assert_eq!(f.mul(f.inv(17), 17), 1);
    }

    #[test]
    fn char_poly_matches_determinant_expansion() {
        let f = Fq::new(101);
        // [[2,1,0],[1,3,1],[4,0,5]]
        let m = Mat { rows: 3, cols: 3, data: vec![2, 1, 0, 1, 3, 1, 4, 0, 5] };
        let p = m.char_poly(f);
        // det(xI - M) = x^3 - 10x^2 + 30x - 29
        assert_eq!(p, vec![f.from_i64(-29), 30, f.from_i64(-10), 1]);
        let mut rts = roots(f, &p);
        rts.sort();
        for r in rts {
            let mut shifted = m.clone();
            for i in 0..3 {
                let v = f.sub(shifted.at(i, i), r);
                shifted.set(i, i, v);
            }
            assert!(!shifted.nullspace(f).is_empty());
        }
    }

    #[test]
    fn nullspace_dimension() {
        let f = Fq::new(7);
        let m = Mat { rows: 2, cols: 3, data: vec![1, 2, 3, 2, 4, 6] };
        let ns = m.nullspace(f);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for r in 0..2 {
                let s = (0..3).fold(0, |acc, c| f.add(acc, f.mul(m.at(r, c), v[c])));
                assert_eq!(s, 0);
            }
        }
    }
}
