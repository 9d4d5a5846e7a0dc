//! Arithmetic in a prime field `F_p` for the randomized evaluation oracle.
//!
//! Elements are plain `u64` residues; the modulus travels in a [`PrimeField`]
//! value instead of the element type so contexts can pick their own prime.

/// A prime modulus together with the basic field operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

/// Default oracle prime: the Mersenne prime 2^61 - 1.
pub const DEFAULT_PRIME: u64 = 2_305_843_009_213_693_951;

impl PrimeField {
    /// Wraps a modulus, checking primality (Miller-Rabin, exact for u64).
    pub fn new(p: u64) -> Option<PrimeField> {
        if is_prime_u64(p) {
            Some(PrimeField { p })
        } else {
            None
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a.wrapping_add(b);
        if s >= self.p || s < a {
            s.wrapping_sub(self.p)
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + (self.p - b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            return None;
        }
        Some(self.pow(a, self.p - 2))
    }

    /// Reduces a signed big integer (as sign + magnitude decimal-free limbs is
    /// overkill here; callers hand us i128-safe magnitudes).
    #[inline]
    pub fn from_i128(&self, v: i128) -> u64 {
        let p = self.p as i128;
        let r = v.rem_euclid(p);
        r as u64
    }
}

/// Deterministic Miller-Rabin for u64 (the standard 7-witness set).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let f = PrimeField { p: n };
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let mut x = f.pow(a % n, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = f.mul(x, x);
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
    fn default_prime_is_prime() {
        assert!(is_prime_u64(DEFAULT_PRIME));
        assert!(PrimeField::new(DEFAULT_PRIME).is_some());
    }

    #[test]
    fn composite_rejected() {
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(2_305_843_009_213_693_950));
        assert!(PrimeField::new(1 << 52).is_none());
    }

    #[test]
    fn field_ops() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let p = f.modulus();
        assert_eq!(f.add(p - 1, 5), 4);
        assert_eq!(f.sub(3, 7), p - 4);
        assert_eq!(f.neg(0), 0);
        let a = 123_456_789_123_456_789u64;
        let inv = f.inv(a).unwrap();
        assert_eq!(f.mul(a, inv), 1);
        assert_eq!(f.inv(0), None);
        assert_eq!(f.from_i128(-1), p - 1);
    }
}
