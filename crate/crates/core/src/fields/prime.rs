use crate::error::{Error, Result};

/// Largest admissible prime modulus (exclusive).
pub const MAX_PRIME: u64 = 1 << 20;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Odd primes `p` with `lo <= p <= hi`.
pub fn odd_primes(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo.max(3)..=hi).filter(|&n| n % 2 == 1 && is_prime(n))
}

/// True mathematical remainder of `a` in `0..p`.
#[inline]
pub fn reduce_i64(a: i64, p: u32) -> u32 {
    a.rem_euclid(p as i64) as u32
}

#[inline]
pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * a as u128 % p as u128) as u64;
        }
        a = (a as u128 * a as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod(a as u64, p as u64 - 2, p as u64) as u32
}

/// Legendre symbol by Euler's criterion.
pub fn legendre_symbol(a: i64, p: u64) -> Result<i8> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !is_prime(p) {
        return Err(Error::NonPrimeModulus(p));
    }
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(r, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

/// The prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        if p >= MAX_PRIME {
            return Err(Error::FieldTooLarge { p, k: 1 });
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn reduce(&self, a: i64) -> u32 {
        reduce_i64(a, self.p)
    }
}

/// Squarefree test by trial factorization.
pub fn is_squarefree(n: i64) -> bool {
    let mut m = n.unsigned_abs();
    if m == 0 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            m /= d;
            if m % d == 0 {
                return false;
            }
        }
        d += 1;
    }
    true
}

/// Integer square root (floor).
pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(-163, 3).unwrap(), -1);
        assert_eq!(legendre_symbol(-163, 41).unwrap(), 1);
        assert_eq!(legendre_symbol(326, 163).unwrap(), 0);
        assert_eq!(legendre_symbol(5, 2), Err(Error::EvenPrime));
    }

    #[test]
    fn primes() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1 << 21).is_err());
        assert_eq!(odd_primes(1, 20).collect::<Vec<_>>(), vec![3, 5, 7, 11, 13, 17, 19]);
        assert!(is_squarefree(-163));
        assert!(!is_squarefree(-12));
    }
}
