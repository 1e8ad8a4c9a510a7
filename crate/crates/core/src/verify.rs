//! End-to-end verification of fixtures.

use std::path::Path;

use serde::Serialize;

use crate::elliptic::{tate_curve, CurveError, OrderCertificate, TateParams};
use crate::field::{
    certify_irreducible_over_q, is_prime_u64, Element, Field, Fp, Rational,
    DEFAULT_CERTIFICATION_PRIMES,
};
use crate::fixture::{fixture_paths, load_fixture, Fixture, FixtureError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrreducibilityEntry {
    pub generator: String,
    /// Prime modulo which the minimal polynomial is irreducible; `None`
    /// means "not certified", which is not a proof of reducibility.
    pub certified_prime: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureReport {
    pub label: String,
    pub source: String,
    pub parsed: bool,
    pub degree: Option<usize>,
    pub irreducibility: Vec<IrreducibilityEntry>,
    pub nonsingular: Option<bool>,
    pub order: Option<OrderCertificate>,
    /// Set when reduction at a degree-one prime already shows `[N]P ≠ O`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modular_rejection: Option<ModularRejection>,
    pub gonality: Option<u64>,
    pub below_gonality: Option<bool>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl FixtureReport {
    /// Every minimal polynomial certified irreducible over Q.
    pub fn irreducibility_certified(&self) -> bool {
        self.irreducibility
            .iter()
            .all(|e| e.certified_prime.is_some())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub fixtures: Vec<FixtureReport>,
    pub passed: usize,
    pub failed: usize,
    pub all_pass: bool,
}

impl VerificationReport {
    pub fn from_entries(fixtures: Vec<FixtureReport>) -> Self {
        let passed = fixtures.iter().filter(|f| f.pass).count();
        let failed = fixtures.len() - passed;
        VerificationReport {
            all_pass: failed == 0,
            fixtures,
            passed,
            failed,
        }
    }

    /// True when some entry failed to load (as opposed to failing verification).
    pub fn has_input_errors(&self) -> bool {
        self.fixtures.iter().any(|f| !f.parsed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Irreducibility certificates, the Tate curve, `disc ≠ 0`, the order
/// certificate at N, and the degree-vs-gonality comparison, in that order.
/// Arithmetic failures (zero divisors) become a failed entry.
pub fn verify_fixture(fixture: &Fixture, source: &str) -> FixtureReport {
    let irreducibility = fixture
        .field
        .generators()
        .iter()
        .map(|g| IrreducibilityEntry {
            generator: g.name.clone(),
            certified_prime: certify_irreducible_over_q(&g.minpoly, DEFAULT_CERTIFICATION_PRIMES),
        })
        .collect();
    let degree = fixture.degree();
    let below_gonality = fixture.gonality.map(|g| (degree as u64) < g);
    let mut report = FixtureReport {
        label: fixture.label.clone(),
        source: source.to_string(),
        parsed: true,
        degree: Some(degree),
        irreducibility,
        nonsingular: None,
        order: None,
        modular_rejection: None,
        gonality: fixture.gonality,
        below_gonality,
        pass: false,
        error: None,
    };

    let curve = tate_curve(&fixture.params);
    let nonsingular = !curve.discriminant().is_zero();
    report.nonsingular = Some(nonsingular);
    if !nonsingular {
        report.error = Some(CurveError::Singular.to_string());
        return report;
    }
    if let Some(rejection) = modular_order_rejection(&fixture.params, fixture.expected_order) {
        report.modular_rejection = Some(rejection);
        return report;
    }
    let result = curve
        .origin()
        .and_then(|p| curve.verify_order(&p, fixture.expected_order));
    match result {
        Ok(cert) => {
            report.pass = cert.pass;
            report.order = Some(cert);
        }
        Err(e) => report.error = Some(e.to_string()),
    }
    report
}

/// Primes tried by [`modular_order_rejection`].
const REDUCTION_PRIME_LIMIT: u64 = 1000;

/// A prime `p` and a root of each minimal polynomial mod p such that, on the
/// reduced curve over F_p, `[N]P ≠ O`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModularRejection {
    pub prime: u64,
    pub roots: Vec<u64>,
    pub certificate: OrderCertificate,
}

/// Image of `x` under the ring map sending generator `i` to `roots[i]` mod p,
/// or `None` when p divides a denominator.
fn reduce_at(x: &Element<Rational>, p: u64, roots: &[Fp]) -> Option<Fp> {
    let degrees = x.descriptor().degrees();
    let mut acc = Fp::new(0, p);
    for (idx, coord) in x.coords().iter().enumerate() {
        if coord.is_zero() {
            continue;
        }
        let mut term = coord.reduce_mod(p)?;
        let mut rest = idx;
        for (root, &deg) in roots.iter().zip(&degrees).rev() {
            term = term.times(&root.pow_u64((rest % deg) as u64));
            rest /= deg;
        }
        acc = acc.plus(&term);
    }
    Some(acc)
}

/// Fast sound rejection: if `[N]P = O` over the number field then the same
/// holds on the reduction at any prime of good reduction, so one prime with
/// `[N]P̄ ≠ O` proves the order claim false. `None` means no prime decided it.
pub fn modular_order_rejection(
    params: &TateParams<Element<Rational>>,
    n: u64,
) -> Option<ModularRejection> {
    let field = params.b.descriptor();
    for p in (2..REDUCTION_PRIME_LIMIT).filter(|&p| is_prime_u64(p)) {
        let roots: Option<Vec<Fp>> = field
            .generators()
            .iter()
            .map(|g| {
                let f: Option<Vec<Fp>> = g.minpoly.iter().map(|c| c.reduce_mod(p)).collect();
                let f = f?;
                (0..p).map(|r| Fp::new(r, p)).find(|r| {
                    f.iter()
                        .rev()
                        .fold(Fp::new(0, p), |acc, c| acc.times(r).plus(c))
                        .is_zero()
                })
            })
            .collect();
        let Some(roots) = roots else { continue };
        let (Some(b), Some(c)) = (
            reduce_at(&params.b, p, &roots),
            reduce_at(&params.c, p, &roots),
        ) else {
            continue;
        };
        let curve = tate_curve(&TateParams { b, c });
        let Ok(origin) = curve.origin() else { continue };
        // singular reductions are skipped
        let Ok(cert) = curve.verify_order(&origin, n) else {
            continue;
        };
        if !cert.checked[0].is_infinity {
            return Some(ModularRejection {
                prime: p,
                roots: roots.iter().map(Fp::value).collect(),
                certificate: cert,
            });
        }
    }
    None
}

fn load_error_entry(source: &str, err: &FixtureError) -> FixtureReport {
    FixtureReport {
        label: String::new(),
        source: source.to_string(),
        parsed: false,
        degree: None,
        irreducibility: Vec::new(),
        nonsingular: None,
        order: None,
        modular_rejection: None,
        gonality: None,
        below_gonality: None,
        pass: false,
        error: Some(err.to_string()),
    }
}

/// Verifies every fixture under `path` (a directory or a single file).
pub fn verify_path(path: impl AsRef<Path>) -> Result<VerificationReport, FixtureError> {
    let entries = fixture_paths(path)?
        .into_iter()
        .map(|p| {
            let source = p.display().to_string();
            match load_fixture(&p) {
                Ok(f) => verify_fixture(&f, &source),
                Err(e) => load_error_entry(&source, &e),
            }
        })
        .collect();
    Ok(VerificationReport::from_entries(entries))
}
