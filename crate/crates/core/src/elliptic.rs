//! Long Weierstrass curves, Tate normal form, the chord-tangent group law and
//! exact order certificates.
//!
//! The curve is `y^2 + a1·xy + a3·y = x^3 + a2·x^2 + a4·x + a6`. The Tate
//! normal form `E(b,c): y^2 + (1-c)xy - by = x^3 - bx^2` is the special case
//! `(a1, a2, a3, a4, a6) = (1-c, -b, -b, 0, 0)`, on which `(0,0)` is a point.

use serde::Serialize;

use crate::field::{Field, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("point ({x}, {y}) is not on the curve")]
    NotOnCurve { x: String, y: String },
    #[error("curve coefficients belong to different fields")]
    Mismatch,
    #[error("curve is singular (discriminant is zero)")]
    Singular,
    #[error("degenerate coordinates: {0}")]
    DegenerateCoordinates(&'static str),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The Tate normal form parameters `(b, c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TateParams<F> {
    pub b: F,
    pub c: F,
}

impl<F: Field> TateParams<F> {
    pub fn new(b: F, c: F) -> Result<Self, CurveError> {
        if !b.compatible(&c) {
            return Err(CurveError::Mismatch);
        }
        Ok(TateParams { b, c })
    }

    pub fn curve(&self) -> Curve<F> {
        tate_curve(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve<F> {
    pub a1: F,
    pub a2: F,
    pub a3: F,
    pub a4: F,
    pub a6: F,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point<F> {
    Infinity,
    Affine { x: F, y: F },
}

impl<F> Point<F> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }
}

/// Standard Weierstrass invariants. `j` is absent when `disc` is not invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveInvariants<F> {
    pub b2: F,
    pub b4: F,
    pub b6: F,
    pub b8: F,
    pub c4: F,
    pub c6: F,
    pub disc: F,
    pub j: Option<F>,
}

impl<F: Field> CurveInvariants<F> {
    pub fn is_singular(&self) -> bool {
        self.disc.is_zero()
    }
}

/// Record of the multiples evaluated by [`Curve::verify_order`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderCertificate {
    pub order: u64,
    pub prime_factors: Vec<u64>,
    /// `(k, [k]P == O)` in the order checked: `N` first, then `N/q` per prime `q`.
    pub checked: Vec<CheckedMultiple>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckedMultiple {
    pub k: u64,
    pub is_infinity: bool,
}

/// `(a1, a2, a3, a4, a6) = (1 - c, -b, -b, 0, 0)`.
pub fn tate_curve<F: Field>(params: &TateParams<F>) -> Curve<F> {
    let TateParams { b, c } = params;
    Curve {
        a1: c.one_like().minus(c),
        a2: b.negate(),
        a3: b.negate(),
        a4: b.zero_like(),
        a6: b.zero_like(),
    }
}

/// Distinct prime divisors of `n` by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q.saturating_mul(q) <= n {
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

impl<F: Field> Curve<F> {
    pub fn new(a1: F, a2: F, a3: F, a4: F, a6: F) -> Result<Self, CurveError> {
        if [&a2, &a3, &a4, &a6].iter().any(|a| !a1.compatible(a)) {
            return Err(CurveError::Mismatch);
        }
        Ok(Curve { a1, a2, a3, a4, a6 })
    }

    pub fn from_tate(params: &TateParams<F>) -> Self {
        tate_curve(params)
    }

    pub fn invariants(&self) -> CurveInvariants<F> {
        let (b2, b4, b6, b8, c4, c6, disc) = self.invariants_without_j();
        let j = if disc.is_zero() {
            None
        } else {
            disc.inverse()
                .ok()
                .map(|inv| c4.square().times(&c4).times(&inv))
        };
        CurveInvariants {
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            disc,
            j,
        }
    }

    #[allow(clippy::type_complexity)]
    fn invariants_without_j(&self) -> (F, F, F, F, F, F, F) {
        let Curve { a1, a2, a3, a4, a6 } = self;
        let k = |v: i64| a1.from_i64_like(v);
        let a1a1 = a1.square();
        let b2 = a1a1.plus(&k(4).times(a2));
        let b4 = k(2).times(a4).plus(&a1.times(a3));
        let b6 = a3.square().plus(&k(4).times(a6));
        let b8 = a1a1
            .times(a6)
            .plus(&k(4).times(a2).times(a6))
            .minus(&a1.times(a3).times(a4))
            .plus(&a2.times(&a3.square()))
            .minus(&a4.square());
        let c4 = b2.square().minus(&k(24).times(&b4));
        let c6 = b2
            .square()
            .times(&b2)
            .negate()
            .plus(&k(36).times(&b2).times(&b4))
            .minus(&k(216).times(&b6));
        let disc = b2
            .square()
            .times(&b8)
            .negate()
            .minus(&k(8).times(&b4.square()).times(&b4))
            .minus(&k(27).times(&b6.square()))
            .plus(&k(9).times(&b2).times(&b4).times(&b6));
        (b2, b4, b6, b8, c4, c6, disc)
    }

    pub fn discriminant(&self) -> F {
        self.invariants_without_j().6
    }

    /// Left minus right side of the curve equation at `(x, y)`.
    fn equation_residual(&self, x: &F, y: &F) -> F {
        let lhs = y
            .square()
            .plus(&self.a1.times(x).times(y))
            .plus(&self.a3.times(y));
        let x2 = x.square();
        let rhs = x2
            .times(x)
            .plus(&self.a2.times(&x2))
            .plus(&self.a4.times(x))
            .plus(&self.a6);
        lhs.minus(&rhs)
    }

    pub fn contains(&self, x: &F, y: &F) -> bool {
        self.a1.compatible(x) && self.a1.compatible(y) && self.equation_residual(x, y).is_zero()
    }

    /// Affine point constructor; rejects points not on the curve.
    pub fn point(&self, x: F, y: F) -> Result<Point<F>, CurveError> {
        if !self.a1.compatible(&x) || !self.a1.compatible(&y) {
            return Err(CurveError::Mismatch);
        }
        if !self.equation_residual(&x, &y).is_zero() {
            return Err(CurveError::NotOnCurve {
                x: format!("{x:?}"),
                y: format!("{y:?}"),
            });
        }
        Ok(Point::Affine { x, y })
    }

    /// The point `(0, 0)`, which lies on every curve with `a6 = 0`.
    pub fn origin(&self) -> Result<Point<F>, CurveError> {
        self.point(self.a1.zero_like(), self.a1.zero_like())
    }

    pub fn is_on_curve(&self, p: &Point<F>) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine { x, y } => self.contains(x, y),
        }
    }

    /// `-(x, y) = (x, -y - a1·x - a3)`.
    pub fn negate(&self, p: &Point<F>) -> Point<F> {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::Affine {
                x: x.clone(),
                y: y.negate().minus(&self.a1.times(x)).minus(&self.a3),
            },
        }
    }

    pub fn double(&self, p: &Point<F>) -> Result<Point<F>, CurveError> {
        let Point::Affine { x, y } = p else {
            return Ok(Point::Infinity);
        };
        let two = x.from_i64_like(2);
        let denom = two.times(y).plus(&self.a1.times(x)).plus(&self.a3);
        if denom.is_zero() {
            return Ok(Point::Infinity);
        }
        let inv = denom.inverse()?;
        let x2 = x.square();
        let lambda = x
            .from_i64_like(3)
            .times(&x2)
            .plus(&two.times(&self.a2).times(x))
            .plus(&self.a4)
            .minus(&self.a1.times(y))
            .times(&inv);
        let nu = x2
            .times(x)
            .negate()
            .plus(&self.a4.times(x))
            .plus(&two.times(&self.a6))
            .minus(&self.a3.times(y))
            .times(&inv);
        Ok(self.third_point(&lambda, &nu, x, x))
    }

    pub fn add(&self, p: &Point<F>, q: &Point<F>) -> Result<Point<F>, CurveError> {
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return Ok(q.clone()),
            (_, Point::Infinity) => return Ok(p.clone()),
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        if x1 == x2 {
            return if *y1 == *y2 {
                self.double(p)
            } else {
                // same x, different y: q = -p
                Ok(Point::Infinity)
            };
        }
        let lambda = y2.minus(y1).times(&x2.minus(x1).inverse()?);
        let nu = y1.minus(&lambda.times(x1));
        Ok(self.third_point(&lambda, &nu, x1, x2))
    }

    /// Reflection of the third intersection of `y = λx + ν` with the curve.
    fn third_point(&self, lambda: &F, nu: &F, x1: &F, x2: &F) -> Point<F> {
        let x3 = lambda
            .square()
            .plus(&self.a1.times(lambda))
            .minus(&self.a2)
            .minus(x1)
            .minus(x2);
        let y3 = lambda
            .plus(&self.a1)
            .times(&x3)
            .negate()
            .minus(nu)
            .minus(&self.a3);
        Point::Affine { x: x3, y: y3 }
    }

    /// Double-and-add, most significant bit first.
    pub fn scalar_mul(&self, k: u64, p: &Point<F>) -> Result<Point<F>, CurveError> {
        let mut acc = Point::Infinity;
        for i in (0..u64::BITS - k.leading_zeros()).rev() {
            acc = self.double(&acc)?;
            if (k >> i) & 1 == 1 {
                acc = self.add(&acc, p)?;
            }
        }
        Ok(acc)
    }

    /// Certifies that `p` has exact order `n`: `[n]p = O` and `[n/q]p ≠ O`
    /// for every prime `q | n`. Singular curves are rejected up front.
    pub fn verify_order(&self, p: &Point<F>, n: u64) -> Result<OrderCertificate, CurveError> {
        assert!(n >= 1, "order must be positive");
        if self.discriminant().is_zero() {
            return Err(CurveError::Singular);
        }
        let primes = prime_factors(n);
        let mut checked = Vec::with_capacity(primes.len() + 1);
        let full = self.scalar_mul(n, p)?.is_infinity();
        checked.push(CheckedMultiple {
            k: n,
            is_infinity: full,
        });
        let mut pass = full;
        if full {
            for &q in &primes {
                let k = n / q;
                let at_inf = self.scalar_mul(k, p)?.is_infinity();
                checked.push(CheckedMultiple {
                    k,
                    is_infinity: at_inf,
                });
                pass &= !at_inf;
            }
        }
        Ok(OrderCertificate {
            order: n,
            prime_factors: primes,
            checked,
            pass,
        })
    }
}

/// Maps a point `(x, y)` of the alternative model of X1(N) to Tate parameters:
/// `r = (x²y − xy + y − 1)/(x²y − x)`, `s = (xy − y + 1)/(xy)`,
/// `b = rs(r − 1)`, `c = s(r − 1)`.
pub fn sutherland_to_tate<F: Field>(x: &F, y: &F) -> Result<TateParams<F>, CurveError> {
    if !x.compatible(y) {
        return Err(CurveError::Mismatch);
    }
    let one = x.one_like();
    let xy = x.times(y);
    let x2y = x.times(&xy);
    let r_den = x2y.minus(x);
    if r_den.is_zero() {
        return Err(CurveError::DegenerateCoordinates("x^2*y - x vanishes"));
    }
    if xy.is_zero() {
        return Err(CurveError::DegenerateCoordinates("x*y vanishes"));
    }
    let r = x2y.minus(&xy).plus(y).minus(&one).divide(&r_den)?;
    let s = xy.minus(y).plus(&one).divide(&xy)?;
    let r1 = r.minus(&one);
    Ok(TateParams {
        b: r.times(&s).times(&r1),
        c: s.times(&r1),
    })
}
