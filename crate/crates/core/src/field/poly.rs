//! Dense univariate polynomials over a [`Field`], constant term first.

use std::fmt;

use num_bigint::BigUint;

use super::{Field, FieldError, Fp, Rational};

/// How many primes [`certify_irreducible_over_q`] tries by default.
pub const DEFAULT_CERTIFICATION_PRIMES: usize = 25;

/// A polynomial with trailing zeros stripped. `zero` is a representative of
/// the coefficient domain so constants can be formed even for the zero poly.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
    zero: F,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>, zero: F) -> Self {
        while coeffs.last().is_some_and(Field::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs, zero }
    }

    pub fn zero(zero: F) -> Self {
        Poly {
            coeffs: Vec::new(),
            zero,
        }
    }

    pub fn constant(c: F) -> Self {
        let zero = c.zero_like();
        Poly::new(vec![c], zero)
    }

    /// The monomial `x`.
    pub fn x(zero: F) -> Self {
        Poly::new(vec![zero.clone(), zero.one_like()], zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.zero.clone())
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Field::is_one)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n).map(|i| self.coeff(i).plus(&rhs.coeff(i))).collect(),
            self.zero.clone(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n).map(|i| self.coeff(i).minus(&rhs.coeff(i))).collect(),
            self.zero.clone(),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.zero.clone());
        }
        let mut out = vec![self.zero.clone(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Poly::new(out, self.zero.clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        Poly::new(
            self.coeffs.iter().map(|a| a.times(c)).collect(),
            self.zero.clone(),
        )
    }

    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self), FieldError> {
        let dd = divisor.degree().ok_or(FieldError::DivisionByZero)?;
        let lead_inv = divisor.coeffs[dd].inverse()?;
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&nd| nd >= dd) else {
            return Ok((Poly::zero(self.zero.clone()), self.clone()));
        };
        let mut quot = vec![self.zero.clone(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd].times(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].minus(&c.times(d));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((
            Poly::new(quot, self.zero.clone()),
            Poly::new(rem, self.zero.clone()),
        ))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self, FieldError> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Scales to leading coefficient one; the zero polynomial stays zero.
    pub fn monic(&self) -> Result<Self, FieldError> {
        match self.leading() {
            None => Ok(self.clone()),
            Some(l) => Ok(self.scale(&l.inverse()?)),
        }
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g` and `g` monic
    /// (or zero when both inputs are zero).
    pub fn ext_gcd(&self, other: &Self) -> Result<(Self, Self, Self), FieldError> {
        let zero = self.zero.clone();
        let one = Poly::constant(zero.one_like());
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (one.clone(), Poly::zero(zero.clone()));
        let (mut t0, mut t1) = (Poly::zero(zero.clone()), one);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s2);
            (t0, t1) = (t1, t2);
        }
        match r0.leading() {
            None => Ok((r0, s0, t0)),
            Some(l) => {
                let inv = l.inverse()?;
                Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
            }
        }
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(self.zero.clone(), |acc, c| acc.times(x).plus(c))
    }
}

impl<F: Field + fmt::Display> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

/// Monic gcd; `gcd(f, 0) = monic(f)`.
pub fn poly_gcd<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Result<Poly<F>, FieldError> {
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let r = a.rem(&b)?;
        a = b;
        b = r;
    }
    a.monic()
}

/// `f^e mod m` by square-and-multiply. `m` must be monic of degree at least 1.
pub fn powmod<F: Field>(f: &Poly<F>, e: &BigUint, m: &Poly<F>) -> Result<Poly<F>, FieldError> {
    if !m.is_monic() || m.degree() == Some(0) {
        return Err(FieldError::Structure(
            "modulus must be monic of degree >= 1".into(),
        ));
    }
    let base = f.rem(m)?;
    let mut acc = Poly::constant(m.zero.one_like());
    for i in (0..e.bits()).rev() {
        acc = acc.mul(&acc).rem(m)?;
        if e.bit(i) {
            acc = acc.mul(&base).rem(m)?;
        }
    }
    Ok(acc)
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `x^(p^n) ≡ x (mod f)` and `gcd(x^(p^(n/q)) - x, f) = 1` for
/// every prime `q | n`. Non-monic input is normalised first; constants and
/// the zero polynomial are not irreducible.
pub fn is_irreducible_mod_p(f: &Poly<Fp>) -> bool {
    let Some(n) = f.degree().filter(|&n| n >= 1) else {
        return false;
    };
    let Ok(f) = f.monic() else {
        return false;
    };
    let p = BigUint::from(f.zero.modulus());
    let x = Poly::x(f.zero);

    // frob[i] = x^(p^i) mod f
    let mut frob = vec![x.rem(&f).expect("monic modulus")];
    for i in 1..=n {
        let next = powmod(&frob[i - 1], &p, &f).expect("monic modulus");
        frob.push(next);
    }
    if frob[n] != frob[0] {
        return false;
    }
    prime_factors(n).into_iter().all(|q| {
        let h = frob[n / q].sub(&frob[0]);
        poly_gcd(&h, &f).is_ok_and(|g| g.degree() == Some(0))
    })
}

/// Searches the first `max_primes` primes for one at which the monic rational
/// polynomial `f` stays of full degree and is irreducible mod p. Such a prime
/// certifies irreducibility over Q. `None` means "not certified", not "reducible".
pub fn certify_irreducible_over_q(f: &[Rational], max_primes: usize) -> Option<u64> {
    let n = f.len().checked_sub(1).filter(|&n| n >= 1)?;
    if !f[n].is_one() {
        return None;
    }
    (2u64..)
        .filter(|&p| super::is_prime_u64(p))
        .filter_map(|p| {
            let reduced: Option<Vec<Fp>> = f.iter().map(|c| c.reduce_mod(p)).collect();
            Some((p, reduced?))
        })
        .take(max_primes)
        .find(|(p, coeffs)| is_irreducible_mod_p(&Poly::new(coeffs.clone(), Fp::new(0, *p))))
        .map(|(p, _)| p)
}
