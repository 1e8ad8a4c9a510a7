//! Multi-generator extensions `K[g_1, …, g_n] / (m_1(g_1), …, m_n(g_n))`.
//!
//! Elements are stored as a flat coordinate vector over the base. The first
//! generator is the outermost index: coordinate `(e_1, …, e_n)` sits at
//! `Σ e_i · stride_i` where `stride_i` is the product of the degrees of the
//! generators after `i`. Every minimal polynomial has coefficients in the
//! base, so products reduce level by level with no cross terms.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::poly::Poly;
use super::text::Nested;
use super::{Field, FieldError, FiniteField, Fp, Scalar};

/// A named generator with its monic defining polynomial, constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator<K> {
    pub name: String,
    pub minpoly: Vec<K>,
}

impl<K> Generator<K> {
    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDescriptor<K: Scalar> {
    base: K::Ctx,
    generators: Vec<Generator<K>>,
    strides: Vec<usize>,
    dimension: usize,
}

impl<K: Scalar> FieldDescriptor<K> {
    pub fn new(base: K::Ctx, generators: Vec<Generator<K>>) -> Result<Arc<Self>, FieldError> {
        for (i, g) in generators.iter().enumerate() {
            if g.minpoly.len() < 2 {
                return Err(FieldError::Structure(format!(
                    "generator {:?}: defining polynomial must have degree >= 1",
                    g.name
                )));
            }
            if g.minpoly.iter().any(|c| c.ctx() != base) {
                return Err(FieldError::Structure(format!(
                    "generator {:?}: coefficient outside the base field",
                    g.name
                )));
            }
            if !g.minpoly.last().is_some_and(Field::is_one) {
                return Err(FieldError::Structure(format!(
                    "generator {:?}: defining polynomial is not monic",
                    g.name
                )));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(FieldError::Structure(format!(
                    "duplicate generator name {:?}",
                    g.name
                )));
            }
        }
        let mut strides = vec![1; generators.len()];
        for i in (0..generators.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * generators[i + 1].degree();
        }
        let dimension = generators.iter().map(Generator::degree).product();
        Ok(Arc::new(FieldDescriptor {
            base,
            generators,
            strides,
            dimension,
        }))
    }

    /// Convenience constructor for a single generator.
    pub fn simple(
        base: K::Ctx,
        name: impl Into<String>,
        minpoly: Vec<K>,
    ) -> Result<Arc<Self>, FieldError> {
        Self::new(
            base,
            vec![Generator {
                name: name.into(),
                minpoly,
            }],
        )
    }

    pub fn base(&self) -> &K::Ctx {
        &self.base
    }

    pub fn generators(&self) -> &[Generator<K>] {
        &self.generators
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.generators.iter().map(Generator::degree).collect()
    }

    /// Product of the generator degrees.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn zero(self: &Arc<Self>) -> Element<K> {
        Element {
            desc: Arc::clone(self),
            coords: vec![K::zero(&self.base); self.dimension],
        }
    }

    pub fn one(self: &Arc<Self>) -> Element<K> {
        self.scalar(K::one(&self.base))
    }

    pub fn scalar(self: &Arc<Self>, s: K) -> Element<K> {
        let mut e = self.zero();
        e.coords[0] = s;
        e
    }

    pub fn from_i64(self: &Arc<Self>, v: i64) -> Element<K> {
        self.scalar(K::from_i64(&self.base, v))
    }

    /// The `i`-th generator as an element.
    pub fn generator(self: &Arc<Self>, i: usize) -> Element<K> {
        let g = &self.generators[i];
        if g.degree() == 1 {
            return self.scalar(g.minpoly[0].negate());
        }
        let mut e = self.zero();
        e.coords[self.strides[i]] = K::one(&self.base);
        e
    }

    pub fn generator_by_name(self: &Arc<Self>, name: &str) -> Option<Element<K>> {
        let i = self.generators.iter().position(|g| g.name == name)?;
        Some(self.generator(i))
    }

    pub fn from_coords(self: &Arc<Self>, coords: Vec<K>) -> Result<Element<K>, FieldError> {
        if coords.len() != self.dimension {
            return Err(FieldError::Structure(format!(
                "expected {} coordinates, got {}",
                self.dimension,
                coords.len()
            )));
        }
        if coords.iter().any(|c| c.ctx() != self.base) {
            return Err(FieldError::DescriptorMismatch);
        }
        Ok(Element {
            desc: Arc::clone(self),
            coords,
        })
    }

    /// Builds an element from its nested text form.
    pub fn from_nested(self: &Arc<Self>, nested: &Nested) -> Result<Element<K>, FieldError> {
        let mut coords = Vec::with_capacity(self.dimension);
        self.flatten_level(nested, 0, "", &mut coords)?;
        Ok(Element {
            desc: Arc::clone(self),
            coords,
        })
    }

    fn flatten_level(
        &self,
        nested: &Nested,
        level: usize,
        path: &str,
        out: &mut Vec<K>,
    ) -> Result<(), FieldError> {
        if level == self.generators.len() {
            return match nested {
                Nested::Leaf(s) => {
                    out.push(K::parse(&self.base, s)?);
                    Ok(())
                }
                Nested::List(_) => Err(FieldError::Parse(format!(
                    "at {}: nesting deeper than the {} generator(s)",
                    display_path(path),
                    self.generators.len()
                ))),
            };
        }
        let Nested::List(items) = nested else {
            return Err(FieldError::Parse(format!(
                "at {}: expected an array over powers of {:?}",
                display_path(path),
                self.generators[level].name
            )));
        };
        let deg = self.generators[level].degree();
        if items.len() != deg {
            return Err(FieldError::Parse(format!(
                "at {}: array over powers of {:?} has length {}, expected {}",
                display_path(path),
                self.generators[level].name,
                items.len(),
                deg
            )));
        }
        for (i, item) in items.iter().enumerate() {
            self.flatten_level(item, level + 1, &format!("{path}[{i}]"), out)?;
        }
        Ok(())
    }

    /// Multiplication of two coordinate blocks at `level`, already reduced.
    fn mul_level(&self, level: usize, a: &[K], b: &[K]) -> Vec<K> {
        if level == self.generators.len() {
            return vec![a[0].times(&b[0])];
        }
        let gen = &self.generators[level];
        let n = gen.degree();
        let s = self.strides[level];
        let zero = K::zero(&self.base);
        let is_zero_block = |blk: &[K]| blk.iter().all(Field::is_zero);

        if level + 1 == self.generators.len() {
            return Self::mul_innermost(&gen.minpoly, a, b, zero);
        }
        let mut prod: Vec<Vec<K>> = vec![vec![zero.clone(); s]; 2 * n - 1];
        for i in 0..n {
            let ai = &a[i * s..(i + 1) * s];
            if is_zero_block(ai) {
                continue;
            }
            for j in 0..n {
                let bj = &b[j * s..(j + 1) * s];
                if is_zero_block(bj) {
                    continue;
                }
                let t = self.mul_level(level + 1, ai, bj);
                for (dst, v) in prod[i + j].iter_mut().zip(&t) {
                    *dst = dst.plus(v);
                }
            }
        }
        // g^k = -Σ m_j g^(k-n+j) for k >= n
        for k in (n..2 * n - 1).rev() {
            let top = std::mem::take(&mut prod[k]);
            if is_zero_block(&top) {
                continue;
            }
            for j in 0..n {
                let m = &gen.minpoly[j];
                if m.is_zero() {
                    continue;
                }
                for (dst, v) in prod[k - n + j].iter_mut().zip(&top) {
                    *dst = dst.minus(&m.times(v));
                }
            }
        }
        prod.truncate(n);
        prod.into_iter().flatten().collect()
    }

    /// Base-coefficient polynomial product reduced by `minpoly`, without
    /// the per-coefficient allocations of the general path.
    fn mul_innermost(minpoly: &[K], a: &[K], b: &[K], zero: K) -> Vec<K> {
        let n = a.len();
        let mut prod = vec![zero; 2 * n - 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                prod[i + j] = prod[i + j].plus(&ai.times(bj));
            }
        }
        for k in (n..2 * n - 1).rev() {
            let top = std::mem::replace(&mut prod[k], minpoly[0].zero_like());
            if top.is_zero() {
                continue;
            }
            for (j, m) in minpoly[..n].iter().enumerate() {
                if !m.is_zero() {
                    prod[k - n + j] = prod[k - n + j].minus(&m.times(&top));
                }
            }
        }
        prod.truncate(n);
        prod
    }

    fn to_nested_level(&self, coords: &[K], level: usize) -> Nested {
        if level == self.generators.len() {
            return Nested::Leaf(coords[0].to_string());
        }
        let n = self.generators[level].degree();
        let s = coords.len() / n;
        Nested::List(
            (0..n)
                .map(|i| self.to_nested_level(&coords[i * s..(i + 1) * s], level + 1))
                .collect(),
        )
    }
}

fn display_path(path: &str) -> &str {
    if path.is_empty() {
        "top level"
    } else {
        path
    }
}

/// An element of an extension ring in canonical (fully reduced) form.
#[derive(Clone, PartialEq, Eq)]
pub struct Element<K: Scalar> {
    desc: Arc<FieldDescriptor<K>>,
    coords: Vec<K>,
}

impl<K: Scalar> Element<K> {
    pub fn descriptor(&self) -> &Arc<FieldDescriptor<K>> {
        &self.desc
    }

    pub fn coords(&self) -> &[K] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<K> {
        self.coords
    }

    pub fn to_nested(&self) -> Nested {
        self.desc.to_nested_level(&self.coords, 0)
    }

    fn check(&self, rhs: &Self) -> Result<(), FieldError> {
        if self.compatible(rhs) {
            Ok(())
        } else {
            Err(FieldError::DescriptorMismatch)
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, FieldError> {
        self.check(rhs)?;
        Ok(self.plus(rhs))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, FieldError> {
        self.check(rhs)?;
        Ok(self.minus(rhs))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, FieldError> {
        self.check(rhs)?;
        Ok(self.times(rhs))
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&K, &K) -> K) -> Self {
        assert!(
            self.compatible(rhs),
            "arithmetic between elements of different descriptors"
        );
        Element {
            desc: Arc::clone(&self.desc),
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// Multiplication-by-self matrix: column j holds the coordinates of `self · e_j`.
    fn multiplication_matrix(&self) -> Vec<Vec<K>> {
        let dim = self.desc.dimension;
        let zero = K::zero(&self.desc.base);
        let mut m = vec![vec![zero.clone(); dim]; dim];
        let mut basis = vec![zero; dim];
        for j in 0..dim {
            basis[j] = K::one(&self.desc.base);
            let col = self.desc.mul_level(0, &self.coords, &basis);
            for (i, v) in col.into_iter().enumerate() {
                m[i][j] = v;
            }
            basis[j] = K::zero(&self.desc.base);
        }
        m
    }

    fn inverse_single(&self) -> Result<Self, FieldError> {
        let zero = K::zero(&self.desc.base);
        let modulus = Poly::new(self.desc.generators[0].minpoly.clone(), zero.clone());
        let a = Poly::new(self.coords.clone(), zero.clone());
        let (g, s, _) = a.ext_gcd(&modulus)?;
        if g.degree() != Some(0) {
            return Err(FieldError::ZeroDivisor);
        }
        // s·a ≡ g (mod m) with g a nonzero constant
        let s = s.scale(&g.coeff(0).inverse()?).rem(&modulus)?;
        let mut coords = s.into_coeffs();
        coords.resize(self.desc.dimension, zero);
        Ok(Element {
            desc: Arc::clone(&self.desc),
            coords,
        })
    }

    fn inverse_tower(&self) -> Result<Self, FieldError> {
        let dim = self.desc.dimension;
        let mut rhs = vec![K::zero(&self.desc.base); dim];
        rhs[0] = K::one(&self.desc.base);
        let coords = K::solve(self.multiplication_matrix(), rhs).ok_or(FieldError::ZeroDivisor)?;
        Ok(Element {
            desc: Arc::clone(&self.desc),
            coords,
        })
    }
}

impl<K: Scalar> Field for Element<K> {
    fn zero_like(&self) -> Self {
        self.desc.zero()
    }

    fn one_like(&self) -> Self {
        self.desc.one()
    }

    fn from_i64_like(&self, v: i64) -> Self {
        self.desc.from_i64(v)
    }

    fn is_zero(&self) -> bool {
        self.coords.iter().all(Field::is_zero)
    }

    fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Field::is_zero)
    }

    fn compatible(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.desc, &other.desc) || self.desc == other.desc
    }

    fn plus(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, K::plus)
    }

    fn minus(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, K::minus)
    }

    /// Reduces each generator's powers by its minpoly, innermost generator first.
    fn times(&self, rhs: &Self) -> Self {
        assert!(
            self.compatible(rhs),
            "arithmetic between elements of different descriptors"
        );
        Element {
            desc: Arc::clone(&self.desc),
            coords: self.desc.mul_level(0, &self.coords, &rhs.coords),
        }
    }

    fn negate(&self) -> Self {
        Element {
            desc: Arc::clone(&self.desc),
            coords: self.coords.iter().map(Field::negate).collect(),
        }
    }

    /// Extended Euclid for one generator; a base-field linear solve for towers.
    fn inverse(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match self.desc.generators.len() {
            0 => Ok(self.desc.scalar(self.coords[0].inverse()?)),
            1 => self.inverse_single(),
            _ => self.inverse_tower(),
        }
    }
}

impl FiniteField for Element<Fp> {
    fn characteristic(&self) -> u64 {
        self.desc.base
    }

    fn cardinality(&self) -> u64 {
        self.desc.base.pow(self.desc.dimension as u32)
    }

    fn all_elements(&self) -> Vec<Self> {
        let p = self.desc.base;
        let dim = self.desc.dimension;
        let q = self.cardinality();
        (0..q)
            .map(|mut idx| {
                let mut coords = vec![Fp::new(0, p); dim];
                for slot in coords.iter_mut().rev() {
                    *slot = Fp::new(idx % p, p);
                    idx /= p;
                }
                Element {
                    desc: Arc::clone(&self.desc),
                    coords,
                }
            })
            .collect()
    }

    fn coords_u64(&self) -> Vec<u64> {
        self.coords.iter().map(Fp::value).collect()
    }
}

impl<K: Scalar> fmt::Display for Element<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_nested())
    }
}

impl<K: Scalar> fmt::Debug for Element<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_nested())
    }
}

impl<K: Scalar> Add for &Element<K> {
    type Output = Element<K>;
    fn add(self, rhs: Self) -> Element<K> {
        self.plus(rhs)
    }
}

impl<K: Scalar> Sub for &Element<K> {
    type Output = Element<K>;
    fn sub(self, rhs: Self) -> Element<K> {
        self.minus(rhs)
    }
}

impl<K: Scalar> Mul for &Element<K> {
    type Output = Element<K>;
    fn mul(self, rhs: Self) -> Element<K> {
        self.times(rhs)
    }
}

impl<K: Scalar> Neg for &Element<K> {
    type Output = Element<K>;
    fn neg(self) -> Element<K> {
        self.negate()
    }
}
