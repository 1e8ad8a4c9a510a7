//! Exhaustive search for Tate parameters `(b, c)` over `F_{p^d}` at which
//! `(0,0)` has exact order `N`, with residue degrees and the low-degree filter.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::elliptic::{tate_curve, Curve, CurveError, TateParams};
use crate::field::{
    is_irreducible_mod_p, is_prime_u64, Element, Field, FieldDescriptor, FieldError, FiniteField,
    Fp, Poly,
};

/// Default cap on the number of `(b, c)` pairs (or `(x, y)` pairs when
/// counting points) a single call may visit.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

const IRREDUCIBLE_SEARCH_TRIALS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScanError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree and target order must be at least 1")]
    InvalidArgument,
    #[error(
        "refusing to visit {required} pairs: work budget is {budget} (raise it with --budget)"
    )]
    BudgetExceeded { required: u128, budget: u128 },
    #[error(
        "no irreducible polynomial of degree {d} over F_{p} found after {trials} random trials"
    )]
    NoIrreducible { p: u64, d: u32, trials: usize },
    #[error("invalid defining polynomial: {0}")]
    BadModulus(String),
    #[error("no gonality known for N = {n}; known levels: {known:?}")]
    UnknownLevel { n: u64, known: Vec<u64> },
    #[error("could not build worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Known Q-gonalities of X1(N).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GonalityTable(BTreeMap<u64, u64>);

impl GonalityTable {
    pub fn builtin() -> Self {
        GonalityTable(BTreeMap::from([(29, 11), (31, 12), (37, 18)]))
    }

    /// Adds or replaces an entry; zero gonalities are ignored.
    pub fn with(mut self, n: u64, gonality: u64) -> Self {
        if gonality > 0 {
            self.0.insert(n, gonality);
        }
        self
    }

    pub fn get(&self, n: u64) -> Option<u64> {
        self.0.get(&n).copied()
    }

    pub fn known_levels(&self) -> Vec<u64> {
        self.0.keys().copied().collect()
    }
}

impl Default for GonalityTable {
    fn default() -> Self {
        Self::builtin()
    }
}

/// One `(b, c)` with `disc ≠ 0` at which `(0,0)` has exact order `order`.
/// Coordinates are over `F_p` in the scan's basis, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ScanHit {
    pub p: u64,
    pub d: u32,
    #[serde(serialize_with = "coords_as_strings")]
    pub b: Vec<u64>,
    #[serde(serialize_with = "coords_as_strings")]
    pub c: Vec<u64>,
    pub order: u64,
    pub place_degree: u32,
}

fn coords_as_strings<S: serde::Serializer>(v: &[u64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(u64::to_string))
}

impl ScanHit {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("hit serializes")
    }
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub budget: u128,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            budget: DEFAULT_BUDGET,
            jobs: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ScanResult {
    pub p: u64,
    pub d: u32,
    pub order: u64,
    /// Defining polynomial of `F_{p^d}` over `F_p`, constant term first
    /// (`[0, 1]` for `d = 1`).
    pub modulus: Vec<u64>,
    /// Sorted by `(b, c)` in lexicographic coordinate order.
    pub hits: Vec<ScanHit>,
    pub pairs_scanned: u128,
    pub elapsed: Duration,
}

#[derive(Serialize)]
struct SummaryRecord<'a> {
    p: u64,
    d: u32,
    order: u64,
    #[serde(serialize_with = "coords_as_strings")]
    modulus: &'a [u64],
    pairs_scanned: u128,
    hits: usize,
    low_degree_hits: Option<usize>,
    elapsed_ms: u128,
}

impl ScanResult {
    /// `F_{p^d}` as used by the scan; `None` for the prime field.
    pub fn field(&self) -> Option<Arc<FieldDescriptor<Fp>>> {
        (self.d > 1).then(|| {
            FieldDescriptor::simple(
                self.p,
                "t",
                self.modulus.iter().map(|&v| Fp::new(v, self.p)).collect(),
            )
            .expect("validated during the scan")
        })
    }

    /// `(b, c)` of a hit as field elements of [`ScanResult::field`].
    pub fn elements(&self, hit: &ScanHit) -> Option<(Element<Fp>, Element<Fp>)> {
        let field = self.field()?;
        let lift = |v: &[u64]| {
            field
                .from_coords(v.iter().map(|&x| Fp::new(x, self.p)).collect())
                .ok()
        };
        Some((lift(&hit.b)?, lift(&hit.c)?))
    }

    /// Applies the p-power map to both parameters of a hit.
    pub fn frobenius(&self, hit: &ScanHit) -> ScanHit {
        match self.elements(hit) {
            None => hit.clone(),
            Some((b, c)) => ScanHit {
                b: b.frobenius().coords_u64(),
                c: c.frobenius().coords_u64(),
                ..hit.clone()
            },
        }
    }

    /// Groups hits into Frobenius orbits, each sorted, ordered by first member.
    pub fn orbits(&self) -> Vec<Vec<ScanHit>> {
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for hit in &self.hits {
            if seen.contains(hit) {
                continue;
            }
            let mut orbit = vec![hit.clone()];
            let mut next = self.frobenius(hit);
            while next != *hit {
                orbit.push(next.clone());
                next = self.frobenius(&next);
            }
            orbit.sort();
            seen.extend(orbit.iter().cloned());
            out.push(orbit);
        }
        out
    }

    /// Summary line; `low_degree_hits` is filled when a filter was applied.
    pub fn summary_json(&self, low_degree_hits: Option<usize>) -> String {
        let record = SummaryRecord {
            p: self.p,
            d: self.d,
            order: self.order,
            modulus: &self.modulus,
            pairs_scanned: self.pairs_scanned,
            hits: self.hits.len(),
            low_degree_hits,
            elapsed_ms: self.elapsed.as_millis(),
        };
        serde_json::json!({ "summary": record }).to_string()
    }
}

fn check_budget(required: Option<u128>, budget: u128) -> Result<u128, ScanError> {
    match required {
        Some(r) if r <= budget => Ok(r),
        Some(r) => Err(ScanError::BudgetExceeded {
            required: r,
            budget,
        }),
        None => Err(ScanError::BudgetExceeded {
            required: u128::MAX,
            budget,
        }),
    }
}

/// Random monic polynomials of degree `d` from a generator seeded by `(p, d)`
/// until one passes [`is_irreducible_mod_p`].
pub fn find_irreducible(p: u64, d: u32) -> Result<Poly<Fp>, ScanError> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.rotate_left(8) ^ u64::from(d));
    for _ in 0..IRREDUCIBLE_SEARCH_TRIALS {
        let mut coeffs: Vec<Fp> = (0..d).map(|_| Fp::new(rng.gen_range(0..p), p)).collect();
        coeffs.push(Fp::new(1, p));
        let f = Poly::new(coeffs, Fp::new(0, p));
        if is_irreducible_mod_p(&f) {
            return Ok(f);
        }
    }
    Err(ScanError::NoIrreducible {
        p,
        d,
        trials: IRREDUCIBLE_SEARCH_TRIALS,
    })
}

/// Smallest `e ≥ 1` such that the `e`-th Frobenius power fixes both `b` and `c`.
pub fn place_degree<F: FiniteField>(b: &F, c: &F) -> u32 {
    let (mut bb, mut cc) = (b.frobenius(), c.frobenius());
    let mut e = 1;
    while bb != *b || cc != *c {
        bb = bb.frobenius();
        cc = cc.frobenius();
        e += 1;
    }
    e
}

/// Exact order test for `(0,0)` on `E(b,c)`; `false` on singular curves.
/// One scalar multiplication rejects most pairs before the full certificate.
pub fn origin_has_order<F: Field>(b: &F, c: &F, n: u64) -> Result<bool, CurveError> {
    let curve = tate_curve(&TateParams {
        b: b.clone(),
        c: c.clone(),
    });
    if curve.discriminant().is_zero() {
        return Ok(false);
    }
    let origin = curve.origin()?;
    if !curve.scalar_mul(n, &origin)?.is_infinity() {
        return Ok(false);
    }
    Ok(curve.verify_order(&origin, n)?.pass)
}

fn scan_grid<F: FiniteField>(
    elements: &[F],
    n: u64,
    place: impl Fn(&F, &F) -> u32 + Sync,
) -> Result<Vec<(usize, usize, u32)>, ScanError> {
    let rows: Vec<Vec<(usize, usize, u32)>> = (0..elements.len())
        .into_par_iter()
        .map(|bi| {
            let b = &elements[bi];
            let mut row = Vec::new();
            for (ci, c) in elements.iter().enumerate() {
                if origin_has_order(b, c, n)? {
                    row.push((bi, ci, place(b, c)));
                }
            }
            Ok(row)
        })
        .collect::<Result<_, ScanError>>()?;
    let mut hits: Vec<_> = rows.into_iter().flatten().collect();
    hits.sort_unstable();
    Ok(hits)
}

fn in_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, ScanError> {
    match jobs {
        None => Ok(f()),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| ScanError::Pool(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// Enumerates all `(b, c) ∈ F_{p^d}²` and keeps those with `disc ≠ 0` where
/// `(0,0)` has exact order `n`.
///
/// For `d > 1` the field is `F_p[t]/(modulus)`; when no modulus is supplied
/// one is found by seeded random search, so output is reproducible.
pub fn scan_fp(
    p: u64,
    d: u32,
    n: u64,
    modulus: Option<&[u64]>,
    opts: &ScanOptions,
) -> Result<ScanResult, ScanError> {
    if !is_prime_u64(p) {
        return Err(ScanError::NotPrime(p));
    }
    if d == 0 || n == 0 {
        return Err(ScanError::InvalidArgument);
    }
    let required = p
        .checked_pow(d)
        .and_then(|q| (q as u128).checked_mul(q as u128));
    let pairs = check_budget(required, opts.budget)?;

    let start = Instant::now();
    let (modulus, hits) = if d == 1 {
        let elements = Fp::new(0, p).all_elements();
        let raw = in_pool(opts.jobs, || scan_grid(&elements, n, |_, _| 1))??;
        let hits = raw
            .into_iter()
            .map(|(bi, ci, e)| ScanHit {
                p,
                d,
                b: vec![bi as u64],
                c: vec![ci as u64],
                order: n,
                place_degree: e,
            })
            .collect();
        (vec![0, 1], hits)
    } else {
        let poly = match modulus {
            Some(m) => {
                let f = Poly::new(m.iter().map(|&v| Fp::new(v, p)).collect(), Fp::new(0, p));
                if f.degree() != Some(d as usize) || !f.is_monic() {
                    return Err(ScanError::BadModulus(format!(
                        "expected a monic polynomial of degree {d}"
                    )));
                }
                if !is_irreducible_mod_p(&f) {
                    return Err(ScanError::BadModulus(format!("reducible over F_{p}")));
                }
                f
            }
            None => find_irreducible(p, d)?,
        };
        let field = FieldDescriptor::simple(p, "t", poly.coeffs().to_vec())?;
        let elements = field.zero().all_elements();
        let raw = in_pool(opts.jobs, || scan_grid(&elements, n, place_degree))??;
        let hits = raw
            .into_iter()
            .map(|(bi, ci, e)| ScanHit {
                p,
                d,
                b: elements[bi].coords_u64(),
                c: elements[ci].coords_u64(),
                order: n,
                place_degree: e,
            })
            .collect();
        (poly.coeffs().iter().map(Fp::value).collect(), hits)
    };

    Ok(ScanResult {
        p,
        d,
        order: n,
        modulus,
        hits,
        pairs_scanned: pairs,
        elapsed: start.elapsed(),
    })
}

/// Keeps hits whose place degree is strictly below gon(N); order is preserved.
pub fn low_degree_filter(
    hits: &[ScanHit],
    n: u64,
    table: &GonalityTable,
) -> Result<Vec<ScanHit>, ScanError> {
    let gon = table.get(n).ok_or_else(|| ScanError::UnknownLevel {
        n,
        known: table.known_levels(),
    })?;
    Ok(hits
        .iter()
        .filter(|h| u64::from(h.place_degree) < gon)
        .cloned()
        .collect())
}

/// `#E(F_q)` by enumerating every affine `(x, y)` plus the point at infinity.
pub fn point_count<F: FiniteField>(curve: &Curve<F>, budget: u128) -> Result<u64, ScanError> {
    if curve.discriminant().is_zero() {
        return Err(CurveError::Singular.into());
    }
    let q = curve.a1.cardinality() as u128;
    check_budget(q.checked_mul(q), budget)?;
    let elements = curve.a1.all_elements();
    let affine: u64 = elements
        .par_iter()
        .map(|x| {
            let x2 = x.square();
            let u = curve.a1.times(x).plus(&curve.a3);
            let v = x2
                .times(x)
                .plus(&curve.a2.times(&x2))
                .plus(&curve.a4.times(x))
                .plus(&curve.a6);
            elements.iter().filter(|y| y.plus(&u).times(y) == v).count() as u64
        })
        .sum();
    Ok(affine + 1)
}
