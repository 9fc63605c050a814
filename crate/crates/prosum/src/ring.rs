//! Finite chain rings `Z/p^k`, the coefficient rings for every computation
//! in this crate. The field case is `k = 1`.

use crate::error::{Error, Result};

/// The ring `Z/p^k` for a prime `p` and exponent `k >= 1`.
///
/// Elements are canonical representatives in `[0, p^k)` stored as `u64`.
/// Every nonzero element factors uniquely as `unit * p^v`, which is what
/// makes row reduction over these rings tractable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChainRing {
    p: u64,
    k: u32,
    modulus: u64,
}

impl ChainRing {
    /// Builds `Z/p^k`, rejecting composite `p`, `k = 0`, and moduli that
    /// overflow `u64`.
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::BadExponent);
        }
        let mut modulus: u64 = 1;
        for _ in 0..k {
            modulus = modulus
                .checked_mul(p)
                .ok_or(Error::ModulusOverflow { p, k })?;
        }
        Ok(ChainRing { p, k, modulus })
    }

    /// The prime field `F_p`.
    pub fn field(p: u64) -> Result<Self> {
        ChainRing::new(p, 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// True when this ring is a field, i.e. `k = 1`.
    pub fn is_field(&self) -> bool {
        self.k == 1
    }

    pub fn reduce(&self, x: u64) -> u64 {
        x % self.modulus
    }

    pub fn reduce_i64(&self, x: i64) -> u64 {
        let m = self.modulus as i64;
        ((x % m + m) % m) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    /// `p`-adic valuation of `x`; by convention `val(0) = k`.
    pub fn val(&self, x: u64) -> u32 {
        if x == 0 {
            return self.k;
        }
        let mut v = 0;
        let mut x = x;
        while x % self.p == 0 {
            x /= self.p;
            v += 1;
        }
        v
    }

    /// True when `x` is invertible, i.e. `p` does not divide `x`.
    pub fn is_unit(&self, x: u64) -> bool {
        x % self.p != 0
    }

    /// The unit `u` with `x = u * p^val(x)`; `unit_part(0) = 1`.
    pub fn unit_part(&self, x: u64) -> u64 {
        if x == 0 {
            return 1;
        }
        let mut x = x;
        while x % self.p == 0 {
            x /= self.p;
        }
        x % self.modulus
    }

    /// `p^v` as an element; requires `v <= k`.
    pub fn p_pow(&self, v: u32) -> u64 {
        if v >= self.k {
            return 0;
        }
        let mut r: u64 = 1;
        for _ in 0..v {
            r *= self.p;
        }
        r
    }

    /// Inverse of a unit via the extended Euclidean algorithm.
    pub fn inv(&self, x: u64) -> Option<u64> {
        if !self.is_unit(x % self.modulus) {
            return None;
        }
        let (mut r0, mut r1) = (self.modulus as i128, (x % self.modulus) as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        let m = self.modulus as i128;
        Some(((t0 % m + m) % m) as u64)
    }

    /// All ring elements in canonical order. Only sensible for tiny moduli.
    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.modulus
    }
}

/// Deterministic Miller-Rabin test, valid for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructs_valid_rings() {
        let z4 = ChainRing::new(2, 2).unwrap();
        assert_eq!(z4.modulus(), 4);
        assert!(!z4.is_field());
        let f3 = ChainRing::field(3).unwrap();
        assert!(f3.is_field());
    }

    #[test]
    fn rejects_composite_and_zero_exponent() {
        assert!(ChainRing::new(4, 1).is_err());
        assert!(ChainRing::new(1, 1).is_err());
        assert!(ChainRing::new(2, 0).is_err());
        assert!(ChainRing::new(3, 41).is_err());
    }

    #[test]
    fn valuation_and_units() {
        let z8 = ChainRing::new(2, 3).unwrap();
        assert_eq!(z8.val(0), 3);
        assert_eq!(z8.val(4), 2);
        assert_eq!(z8.val(6), 1);
        assert_eq!(z8.unit_part(6), 3);
        assert!(z8.is_unit(3));
        assert!(!z8.is_unit(6));
        assert_eq!(z8.mul(3, z8.inv(3).unwrap()), 1);
        assert_eq!(z8.inv(2), None);
    }

    #[test]
    fn arithmetic_matches_i64_reduction() {
        let z9 = ChainRing::new(3, 2).unwrap();
        for a in 0..9u64 {
            for b in 0..9u64 {
                assert_eq!(z9.add(a, b), (a + b) % 9);
                assert_eq!(z9.mul(a, b), (a * b) % 9);
                assert_eq!(z9.sub(a, b), z9.reduce_i64(a as i64 - b as i64));
            }
        }
    }

    #[test]
    fn primality_spot_checks() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(5051));
        assert!(!is_prime_u64(5041)); // 71^2
        assert!(is_prime_u64((1 << 61) - 1));
        assert!(!is_prime_u64(u64::MAX));
    }
}
