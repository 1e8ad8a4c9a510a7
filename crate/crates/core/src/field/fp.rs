use std::fmt;

use super::{Field, FieldError, FiniteField, Scalar};

/// An element of the prime field F_p, carrying its modulus.
///
/// Moduli are machine-width (`p < 2^62`); products go through `u128`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    /// Reduces `value` modulo `p`. Primality of `p` is the caller's concern.
    pub fn new(value: u64, p: u64) -> Self {
        assert!(p >= 2, "modulus must be at least 2");
        Fp {
            value: value % p,
            modulus: p,
        }
    }

    pub fn from_i64(value: i64, p: u64) -> Self {
        let r = (value as i128).rem_euclid(p as i128) as u64;
        Fp {
            value: r,
            modulus: p,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Field for Fp {
    fn zero_like(&self) -> Self {
        Fp {
            value: 0,
            modulus: self.modulus,
        }
    }

    fn one_like(&self) -> Self {
        Fp {
            value: 1,
            modulus: self.modulus,
        }
    }

    fn from_i64_like(&self, v: i64) -> Self {
        Fp::from_i64(v, self.modulus)
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }

    fn compatible(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }

    fn plus(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let p = self.modulus;
        let s = self.value + rhs.value;
        Fp {
            value: if s >= p { s - p } else { s },
            modulus: p,
        }
    }

    fn minus(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let p = self.modulus;
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + p - rhs.value
        };
        Fp {
            value: v,
            modulus: p,
        }
    }

    fn times(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Fp {
            value: Fp::mul_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }

    fn negate(&self) -> Self {
        let v = if self.value == 0 {
            0
        } else {
            self.modulus - self.value
        };
        Fp {
            value: v,
            modulus: self.modulus,
        }
    }

    /// Extended Euclid on (value, p). A nontrivial gcd means p was not prime.
    fn inverse(&self) -> Result<Self, FieldError> {
        if self.value == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.modulus as i128, self.value as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if r0 != 1 {
            return Err(FieldError::ZeroDivisor);
        }
        Ok(Fp {
            value: t0.rem_euclid(self.modulus as i128) as u64,
            modulus: self.modulus,
        })
    }

    fn pow_u64(&self, mut e: u64) -> Self {
        let p = self.modulus;
        let mut base = self.value;
        let mut acc = 1 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = Fp::mul_mod(acc, base, p);
            }
            base = Fp::mul_mod(base, base, p);
            e >>= 1;
        }
        Fp {
            value: acc,
            modulus: p,
        }
    }
}

impl Scalar for Fp {
    type Ctx = u64;

    fn zero(p: &u64) -> Self {
        Fp::new(0, *p)
    }

    fn one(p: &u64) -> Self {
        Fp::new(1, *p)
    }

    fn from_i64(p: &u64, v: i64) -> Self {
        Fp::from_i64(v, *p)
    }

    fn ctx(&self) -> u64 {
        self.modulus
    }

    /// Decimal integer, possibly negative, reduced mod p.
    fn parse(p: &u64, s: &str) -> Result<Self, FieldError> {
        let digits = s.strip_prefix('-').unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(FieldError::Parse(format!("malformed integer {s:?}")));
        }
        let r = num_bigint::BigInt::parse_bytes(s.as_bytes(), 10)
            .ok_or_else(|| FieldError::Parse(format!("malformed integer {s:?}")))?;
        let m = num_bigint::BigInt::from(*p);
        let v = num_integer::Integer::mod_floor(&r, &m);
        Ok(Fp::new(
            u64::try_from(v).expect("reduced below modulus"),
            *p,
        ))
    }
}

impl FiniteField for Fp {
    fn characteristic(&self) -> u64 {
        self.modulus
    }

    fn cardinality(&self) -> u64 {
        self.modulus
    }

    fn frobenius(&self) -> Self {
        *self
    }

    fn all_elements(&self) -> Vec<Self> {
        (0..self.modulus)
            .map(|v| Fp::new(v, self.modulus))
            .collect()
    }

    fn coords_u64(&self) -> Vec<u64> {
        vec![self.value]
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for &w in &WITNESSES {
        let mut x = powmod(w, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
