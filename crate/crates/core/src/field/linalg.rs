//! Dense linear solves used by tower inversion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Field, Rational};

/// Gaussian elimination with first-nonzero pivoting over any field.
pub(crate) fn gauss_solve<F: Field>(mut a: Vec<Vec<F>>, mut b: Vec<F>) -> Option<Vec<F>> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|row| row.len() == n));
    for k in 0..n {
        let pivot = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(k, pivot);
        b.swap(k, pivot);
        let inv = a[k][k].inverse().ok()?;
        for v in &mut a[k][k..] {
            *v = v.times(&inv);
        }
        b[k] = b[k].times(&inv);
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let factor = a[i][k].clone();
            let pivot_row = a[k].clone();
            for (v, pv) in a[i][k..].iter_mut().zip(&pivot_row[k..]) {
                *v = v.minus(&factor.times(pv));
            }
            let t = factor.times(&b[k]);
            b[i] = b[i].minus(&t);
        }
    }
    Some(b)
}

/// Fraction-free (Bareiss) elimination over Z after clearing row denominators,
/// followed by rational back-substitution.
pub(crate) fn bareiss_solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|row| row.len() == n));

    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let lcm = row
                .iter()
                .chain(std::iter::once(rhs))
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter()
                .chain(std::iter::once(rhs))
                .map(|q| q.numer() * (&lcm / q.denom()))
                .collect()
        })
        .collect();

    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n).find(|&r| !m[r][k].is_zero())?;
        m.swap(k, pivot);
        for i in k + 1..n {
            for j in k + 1..=n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }

    let mut x = vec![Rational::from(0); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(m[i][n].clone());
        for j in i + 1..n {
            let t = Rational::from_integer(m[i][j].clone()).times(&x[j]);
            acc = acc.minus(&t);
        }
        x[i] = acc.times(&Rational::from_integer(m[i][i].clone()).inverse().ok()?);
    }
    Some(x)
}
