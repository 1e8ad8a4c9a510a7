use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{linalg, Field, FieldError, Fp, Scalar};

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, FieldError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    /// Image in F_p, or `None` when p divides the denominator.
    pub fn reduce_mod(&self, p: u64) -> Option<Fp> {
        let modulus = BigInt::from(p);
        let den = self.denom().mod_floor(&modulus).to_u64()?;
        if den == 0 {
            return None;
        }
        let num = self.numer().mod_floor(&modulus).to_u64()?;
        let den = Fp::new(den, p).inverse().ok()?;
        Some(Fp::new(num, p).times(&den))
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_integer(v)
    }
}

impl From<BigRational> for Rational {
    fn from(v: BigRational) -> Self {
        Rational(v)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_integer(s: &str, whole: &str) -> Result<BigInt, FieldError> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(FieldError::Parse(format!("malformed rational {whole:?}")));
    }
    BigInt::from_str(s).map_err(|_| FieldError::Parse(format!("malformed rational {whole:?}")))
}

impl FromStr for Rational {
    type Err = FieldError;

    /// Accepts `"n"` or `"n/d"` with an optional leading minus on `n` and `d > 0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once('/') {
            None => Ok(Rational::from_integer(parse_integer(s, s)?)),
            Some((n, d)) => {
                let n = parse_integer(n, s)?;
                if d.starts_with('-') {
                    return Err(FieldError::Parse(format!("negative denominator in {s:?}")));
                }
                let d = parse_integer(d, s)?;
                if d.is_zero() {
                    return Err(FieldError::Parse(format!("zero denominator in {s:?}")));
                }
                Rational::new(n, d)
            }
        }
    }
}

impl Field for Rational {
    fn zero_like(&self) -> Self {
        Rational(BigRational::zero())
    }

    fn one_like(&self) -> Self {
        Rational(BigRational::one())
    }

    fn from_i64_like(&self, v: i64) -> Self {
        Rational::from(v)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    fn plus(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }

    fn minus(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }

    fn times(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }

    fn negate(&self) -> Self {
        Rational(-&self.0)
    }

    fn inverse(&self) -> Result<Self, FieldError> {
        if self.0.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }
}

impl Scalar for Rational {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        Rational(BigRational::zero())
    }

    fn one(_: &()) -> Self {
        Rational(BigRational::one())
    }

    fn from_i64(_: &(), v: i64) -> Self {
        Rational::from(v)
    }

    fn ctx(&self) {}

    fn parse(_: &(), s: &str) -> Result<Self, FieldError> {
        s.parse()
    }

    fn solve(matrix: Vec<Vec<Self>>, rhs: Vec<Self>) -> Option<Vec<Self>> {
        linalg::bareiss_solve(&matrix, &rhs)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}
