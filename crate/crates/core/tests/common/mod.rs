//! Shared helpers for the integration tests: random sampling, independent
//! oracles and property checks that both the proptest suites and the
//! acceptance run call.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tatecert::elliptic::{tate_curve, Curve, Point, TateParams};
use tatecert::field::{
    Element, Field, FieldDescriptor, FiniteField, Fp, Generator, Rational, Scalar,
};
use tatecert::scan::{point_count, scan_fp, ScanOptions};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(v: i64) -> Rational {
    Rational::from_integer(v)
}

pub fn rational_poly(coeffs: &[i64]) -> Vec<Rational> {
    coeffs.iter().map(|&c| q(c)).collect()
}

pub fn fp_poly(coeffs: &[u64], p: u64) -> Vec<Fp> {
    coeffs.iter().map(|&c| Fp::new(c, p)).collect()
}

/// Q(α, τ) with α³ + α² − 2α − 1 = 0 and τ² − τ − 1 = 0.
pub fn alpha_tau() -> Arc<FieldDescriptor<Rational>> {
    FieldDescriptor::new(
        (),
        vec![
            Generator {
                name: "alpha".into(),
                minpoly: rational_poly(&[-1, -2, 1, 1]),
            },
            Generator {
                name: "tau".into(),
                minpoly: rational_poly(&[-1, -1, 1]),
            },
        ],
    )
    .unwrap()
}

/// The degree 9 field from the first N = 29 example.
pub fn nonic() -> Arc<FieldDescriptor<Rational>> {
    FieldDescriptor::simple(
        (),
        "a",
        rational_poly(&[-1, -1, 4, -2, -8, 7, 5, -5, -1, 1]),
    )
    .unwrap()
}

/// F_{7^3} as F_7[t]/(t³ − 3), irreducible since 3 is not a cube mod 7.
pub fn f343() -> Arc<FieldDescriptor<Fp>> {
    FieldDescriptor::simple(7, "t", fp_poly(&[4, 0, 0, 1], 7)).unwrap()
}

pub fn random_rational(rng: &mut impl Rng) -> Rational {
    let n: i64 = rng.gen_range(-20..=20);
    let d: i64 = rng.gen_range(1..=6);
    Rational::new(n, d).unwrap()
}

pub fn random_rational_element(
    field: &Arc<FieldDescriptor<Rational>>,
    rng: &mut impl Rng,
) -> Element<Rational> {
    let coords = (0..field.dimension())
        .map(|_| random_rational(rng))
        .collect();
    field.from_coords(coords).unwrap()
}

pub fn random_fp(p: u64, rng: &mut impl Rng) -> Fp {
    Fp::new(rng.gen_range(0..p), p)
}

pub fn random_fp_element(field: &Arc<FieldDescriptor<Fp>>, rng: &mut impl Rng) -> Element<Fp> {
    let p = *field.base();
    let coords = (0..field.dimension()).map(|_| random_fp(p, rng)).collect();
    field.from_coords(coords).unwrap()
}

// ---------------------------------------------------------------------------
// field checks

pub fn check_ring_axioms<F: Field>(x: &F, y: &F, z: &F) -> Result<(), String> {
    let ensure = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(format!("{what} fails for {x:?}, {y:?}, {z:?}"))
        }
    };
    ensure(
        x.plus(y).plus(z) == x.plus(&y.plus(z)),
        "additive associativity",
    )?;
    ensure(
        x.times(y).times(z) == x.times(&y.times(z)),
        "multiplicative associativity",
    )?;
    ensure(x.plus(y) == y.plus(x), "additive commutativity")?;
    ensure(x.times(y) == y.times(x), "multiplicative commutativity")?;
    ensure(
        x.times(&y.plus(z)) == x.times(y).plus(&x.times(z)),
        "distributivity",
    )?;
    ensure(x.plus(&x.negate()).is_zero(), "additive inverse")?;
    ensure(x.minus(y) == x.plus(&y.negate()), "subtraction")?;
    ensure(x.times(&x.one_like()) == *x, "multiplicative identity")?;
    Ok(())
}

pub fn check_inverse<F: Field>(x: &F) -> Result<(), String> {
    if x.is_zero() {
        return Ok(());
    }
    let inv = x.inverse().map_err(|e| format!("inverse of {x:?}: {e}"))?;
    if x.times(&inv).is_one() {
        Ok(())
    } else {
        Err(format!("{x:?} · {inv:?} ≠ 1"))
    }
}

/// Serialize, parse, serialize again: the two texts must be identical and the
/// parsed element equal to the original.
pub fn check_text_round_trip<K: Scalar>(x: &Element<K>) -> Result<(), String> {
    let text = x.to_nested().to_string();
    let nested = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let back = x
        .descriptor()
        .from_nested(&nested)
        .map_err(|e| e.to_string())?;
    let again = back.to_nested().to_string();
    if back == *x && again == text {
        Ok(())
    } else {
        Err(format!("{text} re-emitted as {again}"))
    }
}

/// Companion matrix of a monic polynomial (constant first): column k is the
/// image of the basis vector e_k under multiplication by the root.
pub fn companion(minpoly: &[Rational]) -> Vec<Vec<Rational>> {
    let n = minpoly.len() - 1;
    let mut m = vec![vec![q(0); n]; n];
    for k in 0..n {
        if k + 1 < n {
            m[k + 1][k] = q(1);
        } else {
            for (i, row) in m.iter_mut().enumerate() {
                row[k] = minpoly[i].negate();
            }
        }
    }
    m
}

pub fn kron(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![q(0); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j].times(&b[k][l]);
                }
            }
        }
    }
    out
}

pub fn identity(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| (0..n).map(|j| q(i64::from(i == j))).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(q(0), |acc, k| acc.plus(&a[i][k].times(&b[k][j]))))
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(q(0), |acc, (m, x)| acc.plus(&m.times(x)))
        })
        .collect()
}

/// Multiplication-by-x matrix for Q(α, τ) built from Kronecker products of
/// companion matrices, independently of the tower reduction code.
pub fn alpha_tau_matrix(x: &Element<Rational>) -> Vec<Vec<Rational>> {
    let gens = x.descriptor().generators();
    let m_alpha = kron(&companion(&gens[0].minpoly), &identity(2));
    let m_tau = kron(&identity(3), &companion(&gens[1].minpoly));
    let mut total = vec![vec![q(0); 6]; 6];
    let mut alpha_pow = identity(6);
    for i in 0..3 {
        let mut basis = alpha_pow.clone();
        for j in 0..2 {
            let coeff = &x.coords()[i * 2 + j];
            for (r, row) in basis.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    total[r][c] = total[r][c].plus(&coeff.times(v));
                }
            }
            basis = mat_mul(&basis, &m_tau);
        }
        alpha_pow = mat_mul(&alpha_pow, &m_alpha);
    }
    total
}

pub fn check_tower_against_matrix(
    x: &Element<Rational>,
    y: &Element<Rational>,
) -> Result<(), String> {
    let expected = mat_vec(&alpha_tau_matrix(x), y.coords());
    let got = x.times(y);
    if got.coords() == expected.as_slice() {
        Ok(())
    } else {
        Err(format!("{x} · {y}: tower {got}, matrix {expected:?}"))
    }
}

pub fn check_frobenius_fixes(z: &Element<Fp>) -> Result<(), String> {
    let mut w = z.clone();
    for _ in 0..z.descriptor().dimension() {
        w = w.frobenius();
    }
    if w == *z {
        Ok(())
    } else {
        Err(format!("z^(p^d) = {w} ≠ {z}"))
    }
}

// ---------------------------------------------------------------------------
// curve helpers and checks

/// Square root in F_p by Tonelli–Shanks, `None` for non-residues.
pub fn sqrt_fp(a: Fp) -> Option<Fp> {
    let p = a.modulus();
    if a.is_zero() {
        return Some(a);
    }
    if p == 2 {
        return Some(a);
    }
    if !a.pow_u64((p - 1) / 2).is_one() {
        return None;
    }
    let (mut qv, mut s) = (p - 1, 0u32);
    while qv % 2 == 0 {
        qv /= 2;
        s += 1;
    }
    let z = (2..p)
        .map(|v| Fp::new(v, p))
        .find(|z| !z.pow_u64((p - 1) / 2).is_one())
        .unwrap();
    let mut m = s;
    let mut c = z.pow_u64(qv);
    let mut t = a.pow_u64(qv);
    let mut r = a.pow_u64(qv.div_ceil(2));
    while !t.is_one() {
        let mut i = 0;
        let mut t2 = t;
        while !t2.is_one() {
            t2 = t2.square();
            i += 1;
        }
        let b = c.pow_u64(1 << (m - i - 1));
        m = i;
        c = b.square();
        t = t.times(&c);
        r = r.times(&b);
    }
    Some(r)
}

/// A point with the given x on an odd-characteristic curve, if there is one.
pub fn lift_x(curve: &Curve<Fp>, x: Fp) -> Option<Point<Fp>> {
    // (2y + a1 x + a3)² = 4(x³ + a2 x² + a4 x + a6) + (a1 x + a3)²
    let h = curve.a1.times(&x).plus(&curve.a3);
    let rhs = x
        .pow_u64(3)
        .plus(&curve.a2.times(&x.square()))
        .plus(&curve.a4.times(&x))
        .plus(&curve.a6);
    let disc = rhs.times(&Fp::new(4, x.modulus())).plus(&h.square());
    let w = sqrt_fp(disc)?;
    let y = w.minus(&h).divide(&Fp::new(2, x.modulus())).ok()?;
    curve.point(x, y).ok()
}

pub fn random_point(curve: &Curve<Fp>, rng: &mut impl Rng) -> Point<Fp> {
    let p = curve.a1.modulus();
    loop {
        if let Some(pt) = lift_x(curve, random_fp(p, rng)) {
            return pt;
        }
    }
}

pub fn random_tate(p: u64, rng: &mut impl Rng) -> (TateParams<Fp>, Curve<Fp>) {
    loop {
        let params = TateParams {
            b: random_fp(p, rng),
            c: random_fp(p, rng),
        };
        let curve = tate_curve(&params);
        if !curve.discriminant().is_zero() {
            return (params, curve);
        }
    }
}

pub fn naive_mul<F: Field>(curve: &Curve<F>, k: u64, p: &Point<F>) -> Point<F> {
    let mut acc = Point::Infinity;
    for _ in 0..k {
        acc = curve.add(&acc, p).unwrap();
    }
    acc
}

pub fn check_group_laws(
    curve: &Curve<Fp>,
    p: &Point<Fp>,
    q: &Point<Fp>,
    r: &Point<Fp>,
) -> Result<(), String> {
    let add = |a: &Point<Fp>, b: &Point<Fp>| curve.add(a, b).map_err(|e| e.to_string());
    let pq = add(p, q)?;
    if !curve.is_on_curve(&pq) {
        return Err(format!("{p:?} + {q:?} = {pq:?} is off the curve"));
    }
    if pq != add(q, p)? {
        return Err(format!("{p:?} + {q:?} is not commutative"));
    }
    if add(&pq, r)? != add(p, &add(q, r)?)? {
        return Err(format!("associativity fails for {p:?}, {q:?}, {r:?}"));
    }
    if add(p, &Point::Infinity)? != *p || add(&Point::Infinity, p)? != *p {
        return Err("identity law fails".into());
    }
    if !add(p, &curve.negate(p))?.is_infinity() {
        return Err(format!("{p:?} + (−{p:?}) ≠ O"));
    }
    Ok(())
}

pub fn check_scalar_homomorphism(
    curve: &Curve<Fp>,
    p: &Point<Fp>,
    m: u64,
    n: u64,
) -> Result<(), String> {
    let mul = |k: u64, pt: &Point<Fp>| curve.scalar_mul(k, pt).map_err(|e| e.to_string());
    let sum = curve
        .add(&mul(m, p)?, &mul(n, p)?)
        .map_err(|e| e.to_string())?;
    if mul(m + n, p)? != sum {
        return Err(format!("[{m}+{n}]P ≠ [{m}]P + [{n}]P"));
    }
    if mul(m * n, p)? != mul(m, &mul(n, p)?)? {
        return Err(format!("[{m}·{n}]P ≠ [{m}]([{n}]P)"));
    }
    Ok(())
}

pub fn check_closed_forms<F: Field>(params: &TateParams<F>) -> Result<(), String> {
    let curve = tate_curve(params);
    let origin = curve.origin().map_err(|e| e.to_string())?;
    let two = curve.scalar_mul(2, &origin).map_err(|e| e.to_string())?;
    let three = curve.scalar_mul(3, &origin).map_err(|e| e.to_string())?;
    let (b, c) = (&params.b, &params.c);
    let want_two = Point::Affine {
        x: b.clone(),
        y: b.times(c),
    };
    let want_three = Point::Affine {
        x: c.clone(),
        y: b.minus(c),
    };
    if two != want_two {
        return Err(format!("[2](0,0) = {two:?} for b={b:?}, c={c:?}"));
    }
    if three != want_three {
        return Err(format!("[3](0,0) = {three:?} for b={b:?}, c={c:?}"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// scan oracle

/// Smallest k ≥ 1 with [k]P = O found by repeated addition, up to `limit`.
pub fn naive_order<F: Field>(curve: &Curve<F>, p: &Point<F>, limit: u64) -> Option<u64> {
    let mut acc = p.clone();
    for k in 1..=limit {
        if acc.is_infinity() {
            return Some(k);
        }
        acc = curve.add(&acc, p).ok()?;
    }
    None
}

/// Exhaustive single-threaded scan by repeated addition; returns the set of
/// (b, c) coordinate vectors where (0,0) has exact order n.
pub fn naive_scan<F: FiniteField>(elements: &[F], n: u64) -> BTreeSet<(Vec<u64>, Vec<u64>)> {
    let mut out = BTreeSet::new();
    for b in elements {
        for c in elements {
            let params = TateParams {
                b: b.clone(),
                c: c.clone(),
            };
            let curve = tate_curve(&params);
            let inv = curve.invariants();
            let singular = if b.characteristic() == 2 {
                inv.disc.is_zero()
            } else {
                // 4·disc from b2, b4, b6 alone (using 4b8 = b2b6 − b4²),
                // independent of the library's disc formula
                let four_b8 = inv.b2.times(&inv.b6).minus(&inv.b4.square());
                inv.b2
                    .square()
                    .times(&four_b8)
                    .negate()
                    .minus(&inv.b4.pow_u64(3).times(&b.from_i64_like(32)))
                    .minus(&inv.b6.square().times(&b.from_i64_like(108)))
                    .plus(
                        &inv.b2
                            .times(&inv.b4)
                            .times(&inv.b6)
                            .times(&b.from_i64_like(36)),
                    )
                    .is_zero()
            };
            if singular {
                continue;
            }
            let origin = Point::Affine {
                x: b.zero_like(),
                y: b.zero_like(),
            };
            if naive_order(&curve, &origin, n) == Some(n) {
                out.insert((b.coords_u64(), c.coords_u64()));
            }
        }
    }
    out
}

pub fn scan_set(p: u64, d: u32, n: u64) -> BTreeSet<(Vec<u64>, Vec<u64>)> {
    scan_fp(p, d, n, None, &ScanOptions::default())
        .unwrap()
        .hits
        .into_iter()
        .map(|h| (h.b, h.c))
        .collect()
}

/// Hasse and Lagrange for one curve over F_q: returns the point count.
pub fn check_hasse_lagrange<F: FiniteField>(
    curve: &Curve<F>,
    q: u64,
    n: u64,
) -> Result<u64, String> {
    let count = point_count(curve, u128::MAX).map_err(|e| e.to_string())?;
    let dev = i128::from(count) - i128::from(q) - 1;
    if dev * dev > 4 * i128::from(q) {
        return Err(format!("#E = {count} violates Hasse over F_{q}"));
    }
    if count % n != 0 {
        return Err(format!("{n} ∤ #E = {count} over F_{q}"));
    }
    Ok(count)
}
