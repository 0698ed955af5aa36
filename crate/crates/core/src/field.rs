//! Base fields for rank computations.

use crate::error::{Error, Result};

/// The coefficient field used for rank and homology computations.
///
/// Prime fields are limited to `p < 2^31` so that products fit in `u64`.
/// The rationals are handled by integer-preserving elimination and never
/// touch floating point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    /// Prime field of order `p`. Fails if `p` is not prime or too large.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::Precondition(format!("prime {p} exceeds 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn rational() -> Self {
        FieldSpec::Rational
    }

    /// The default working field: a large word-sized prime.
    pub fn default_prime() -> Self {
        FieldSpec::Prime(32003)
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Arithmetic helpers mod p, with p < 2^31.
pub(crate) mod fp {
    pub fn sub(a: u64, b: u64, p: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + p - b
        }
    }

    pub fn mul(a: u64, b: u64, p: u64) -> u64 {
        a * b % p
    }

    pub fn pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        base %= p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base, p);
            }
            base = mul(base, base, p);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        debug_assert!(a % p != 0);
        pow(a, p - 2, p)
    }

    /// Reduce a signed integer into [0, p).
    pub fn from_i64(v: i64, p: u64) -> u64 {
        let m = v.rem_euclid(p as i64);
        m as u64
    }
}
