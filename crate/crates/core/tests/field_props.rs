mod common;

use std::sync::Arc;

use num_bigint::BigUint;
use proptest::prelude::*;

use common::*;
use tatecert::field::{
    certify_irreducible_over_q, is_irreducible_mod_p, poly_gcd, powmod, Element, Field,
    FieldDescriptor, FiniteField, Fp, Poly, Rational, DEFAULT_CERTIFICATION_PRIMES,
};

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=9).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn q_element(field: Arc<FieldDescriptor<Rational>>) -> impl Strategy<Value = Element<Rational>> {
    let dim = field.dimension();
    prop::collection::vec(rational_strategy(), dim)
        .prop_map(move |coords| field.from_coords(coords).unwrap())
}

fn fp_element(field: Arc<FieldDescriptor<Fp>>) -> impl Strategy<Value = Element<Fp>> {
    let (dim, p) = (field.dimension(), *field.base());
    prop::collection::vec(0..p, dim).prop_map(move |coords| {
        field
            .from_coords(coords.into_iter().map(|v| Fp::new(v, p)).collect())
            .unwrap()
    })
}

fn triple<S: Strategy>(make: impl Fn() -> S) -> (S, S, S) {
    (make(), make(), make())
}

fn f101() -> impl Strategy<Value = Fp> {
    (0u64..101).prop_map(|v| Fp::new(v, 101))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms_rationals((x, y, z) in triple(rational_strategy)) {
        check_ring_axioms(&x, &y, &z).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn ring_axioms_f101((x, y, z) in triple(f101)) {
        check_ring_axioms(&x, &y, &z).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn ring_axioms_alpha_tau((x, y, z) in triple(|| q_element(alpha_tau()))) {
        check_ring_axioms(&x, &y, &z).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn ring_axioms_nonic((x, y, z) in triple(|| q_element(nonic()))) {
        check_ring_axioms(&x, &y, &z).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn ring_axioms_f343((x, y, z) in triple(|| fp_element(f343()))) {
        check_ring_axioms(&x, &y, &z).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn tower_matches_matrix_model(x in q_element(alpha_tau()), y in q_element(alpha_tau())) {
        check_tower_against_matrix(&x, &y).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn text_round_trip_alpha_tau(x in q_element(alpha_tau())) {
        check_text_round_trip(&x).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn text_round_trip_f343(x in fp_element(f343())) {
        check_text_round_trip(&x).map_err(TestCaseError::fail)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn inverse_rationals(x in rational_strategy()) {
        check_inverse(&x).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn inverse_f101(x in f101()) {
        check_inverse(&x).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn inverse_alpha_tau(x in q_element(alpha_tau())) {
        check_inverse(&x).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn inverse_nonic(x in q_element(nonic())) {
        check_inverse(&x).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn inverse_f343(x in fp_element(f343())) {
        check_inverse(&x).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn rabin_matches_trial_division(p in prop::sample::select(vec![2u64, 3, 5]), tail in prop::collection::vec(0u64..5, 1..=4)) {
        let mut coeffs: Vec<Fp> = tail.iter().map(|&v| Fp::new(v, p)).collect();
        coeffs.push(Fp::new(1, p));
        let f = Poly::new(coeffs, Fp::new(0, p));
        prop_assert_eq!(is_irreducible_mod_p(&f), trial_division_irreducible(&f));
    }
}

/// All monic polynomials of the given degree over F_p.
fn monic_polys(p: u64, degree: usize) -> Vec<Poly<Fp>> {
    let count = p.pow(degree as u32);
    (0..count)
        .map(|mut idx| {
            let mut coeffs: Vec<Fp> = (0..degree)
                .map(|_| {
                    let v = idx % p;
                    idx /= p;
                    Fp::new(v, p)
                })
                .collect();
            coeffs.push(Fp::new(1, p));
            Poly::new(coeffs, Fp::new(0, p))
        })
        .collect()
}

fn trial_division_irreducible(f: &Poly<Fp>) -> bool {
    let n = f.degree().unwrap();
    let p = f.coeff(0).modulus();
    (1..=n / 2).all(|k| {
        monic_polys(p, k)
            .iter()
            .all(|g| !f.rem(g).unwrap().is_zero())
    })
}

#[test]
fn frobenius_fixes_every_element() {
    let fields = [
        f343(),
        FieldDescriptor::simple(2, "t", fp_poly(&[1, 0, 1, 0, 0, 1], 2)).unwrap(),
        FieldDescriptor::simple(3, "t", fp_poly(&[2, 0, 0, 2, 1], 3)).unwrap(),
    ];
    for field in fields {
        let m = Poly::new(
            field.generators()[0].minpoly.clone(),
            Fp::new(0, *field.base()),
        );
        assert!(is_irreducible_mod_p(&m));
        for z in field.zero().all_elements() {
            check_frobenius_fixes(&z).unwrap();
        }
    }
}

#[test]
fn every_element_of_f343_inverts() {
    for z in f343().zero().all_elements() {
        check_inverse(&z).unwrap();
    }
}

/// Distinct-degree factorisation: the degrees of the irreducible factors.
fn ddf_degrees(f: &Poly<Fp>) -> Vec<usize> {
    let p = f.coeff(0).modulus();
    let zero = Fp::new(0, p);
    let x = Poly::x(zero);
    let mut rest = f.monic().unwrap();
    let mut h = x.clone();
    let mut degrees = Vec::new();
    let mut i = 0;
    while rest.degree().unwrap_or(0) > 0 {
        i += 1;
        if 2 * i > rest.degree().unwrap() {
            degrees.push(rest.degree().unwrap());
            break;
        }
        h = powmod(&h, &BigUint::from(p), &rest).unwrap();
        let g = poly_gcd(&h.sub(&x), &rest).unwrap();
        let gd = g.degree().unwrap();
        if gd > 0 {
            degrees.extend(std::iter::repeat_n(i, gd / i));
            rest = rest.divrem(&g).unwrap().0;
            h = h.rem(&rest).unwrap();
        }
    }
    degrees
}

#[test]
fn nonic_certificate_agrees_with_ddf() {
    let minpoly = nonic().generators()[0].minpoly.clone();
    let p = certify_irreducible_over_q(&minpoly, DEFAULT_CERTIFICATION_PRIMES).unwrap();
    let f = Poly::new(
        minpoly.iter().map(|c| c.reduce_mod(p).unwrap()).collect(),
        Fp::new(0, p),
    );
    assert_eq!(ddf_degrees(&f), vec![9], "p = {p}");
    // and the primes skipped before it really do factor
    for small in (2..p).filter(|&l| tatecert::field::is_prime_u64(l)) {
        let g = Poly::new(
            minpoly
                .iter()
                .map(|c| c.reduce_mod(small).unwrap())
                .collect(),
            Fp::new(0, small),
        );
        assert_ne!(ddf_degrees(&g), vec![9], "p = {small}");
    }
}

#[test]
fn ddf_oracle_sanity() {
    // (x² + 1)(x + 1) over F_3 has factor degrees {1, 2}
    let f = Poly::new(fp_poly(&[1, 1, 1, 1], 3), Fp::new(0, 3));
    let mut d = ddf_degrees(&f);
    d.sort();
    assert_eq!(d, vec![1, 2]);
}

#[test]
fn alpha_tau_generators_and_field_facts() {
    let k = alpha_tau();
    let alpha = k.generator(0);
    let tau = k.generator(1);
    // α and τ commute with everything and satisfy their minimal polynomials
    let lhs = alpha
        .pow_u64(3)
        .plus(&alpha.square())
        .minus(&alpha.from_i64_like(2).times(&alpha));
    assert!(lhs.is_one());
    assert_eq!(tau.square(), tau.plus(&tau.one_like()));
    assert_eq!(k.dimension(), 6);
}
