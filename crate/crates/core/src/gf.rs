//! Exact arithmetic in finite fields `F_{p^n}`.
//!
//! A [`FieldCtx`] is either a prime-power field `F_p[X]/(f)` with `f` the
//! lexicographically smallest monic irreducible polynomial of degree `n`, or a
//! quadratic tower `K(sqrt d)` over another context. Towers are how the crate
//! materializes square roots that do not exist at the current level.
//!
//! Elements are plain coefficient vectors; every operation goes through the
//! context, so an element is only meaningful next to the context it came from.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("unsupported prime {0}: need a prime p >= 5")]
    UnsupportedPrime(u32),
    #[error("extension degree must be at least 1")]
    InvalidDegree,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element has {got} coefficients, field has degree {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("coefficient {0} is not reduced mod p")]
    Unreduced(u32),
}

/// Element of a finite field, stored as its coefficient vector
/// (little-endian in the basis of the owning context).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(Vec<u32>);

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let len = self.0.iter().rposition(|&c| c != 0).map_or(1, |i| i + 1);
        if len == 1 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "{:?}", &self.0[..len])
        }
    }
}

/// Binary/unary operations exposed through [`FieldCtx::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Inv,
    Neg,
    Pow(u128),
}

/// Roots of a monic quadratic `y^2 + b y + c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuadraticRoots {
    /// Two distinct roots, in enumeration order.
    Distinct(FieldElement, FieldElement),
    /// One root of multiplicity two.
    Double(FieldElement),
    /// No root at this level; the roots live in the degree-2 extension.
    /// Carries the defining polynomial as `(b, c)` and its discriminant.
    NeedsExtension {
        b: FieldElement,
        c: FieldElement,
        discriminant: FieldElement,
    },
}

impl QuadraticRoots {
    /// Roots listed once each (empty when they need an extension).
    pub fn roots(&self) -> Vec<FieldElement> {
        match self {
            QuadraticRoots::Distinct(a, b) => vec![a.clone(), b.clone()],
            QuadraticRoots::Double(a) => vec![a.clone()],
            QuadraticRoots::NeedsExtension { .. } => Vec::new(),
        }
    }

    pub fn is_double(&self) -> bool {
        matches!(self, QuadraticRoots::Double(_))
    }
}

#[derive(Debug)]
enum Repr {
    /// `F_p[X]/(modulus)`; modulus is monic, stored low to high, length n + 1.
    Poly { modulus: Vec<u32> },
    /// `base[Y]/(Y^2 - d)` with `d` a non-square of `base`.
    Quadratic { base: FieldCtx, d: FieldElement },
}

#[derive(Debug)]
struct Inner {
    p: u32,
    degree: usize,
    order: u128,
    repr: Repr,
    nonresidue: OnceLock<FieldElement>,
    doubled: OnceLock<FieldCtx>,
}

/// A finite field context. Cheap to clone.
#[derive(Clone, Debug)]
pub struct FieldCtx(Arc<Inner>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.degree == other.0.degree
                && match (&self.0.repr, &other.0.repr) {
                    (Repr::Poly { modulus: a }, Repr::Poly { modulus: b }) => a == b,
                    (Repr::Quadratic { base: a, d: x }, Repr::Quadratic { base: b, d: y }) => {
                        a == b && x == y
                    }
                    _ => false,
                })
    }
}

impl Eq for FieldCtx {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds `F_{p^n}` with the lexicographically smallest monic irreducible
/// modulus (coefficients compared from the top degree down).
pub fn make_ctx(p: u32, n: usize) -> Result<FieldCtx, GfError> {
    if p < 5 || !is_prime(p) {
        return Err(GfError::UnsupportedPrime(p));
    }
    if n == 0 {
        return Err(GfError::InvalidDegree);
    }
    let modulus = smallest_irreducible(p, n);
    Ok(FieldCtx(Arc::new(Inner {
        p,
        degree: n,
        order: (p as u128).pow(n as u32),
        repr: Repr::Poly { modulus },
        nonresidue: OnceLock::new(),
        doubled: OnceLock::new(),
    })))
}

impl FieldCtx {
    pub fn p(&self) -> u32 {
        self.0.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// Number of elements.
    pub fn order(&self) -> u128 {
        self.0.order
    }

    /// Defining polynomial over `F_p` (low to high, monic) for non-tower contexts.
    pub fn modulus(&self) -> Option<&[u32]> {
        match &self.0.repr {
            Repr::Poly { modulus } => Some(modulus),
            Repr::Quadratic { .. } => None,
        }
    }

    /// The field this one is a quadratic tower over, if any.
    pub fn base(&self) -> Option<&FieldCtx> {
        match &self.0.repr {
            Repr::Quadratic { base, .. } => Some(base),
            Repr::Poly { .. } => None,
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(vec![0; self.0.degree])
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> FieldElement {
        let mut c = vec![0; self.0.degree];
        c[0] = v.rem_euclid(self.0.p as i64) as u32;
        FieldElement(c)
    }

    /// Validates a coefficient vector.
    pub fn element(&self, coeffs: Vec<u32>) -> Result<FieldElement, GfError> {
        if coeffs.len() != self.0.degree {
            return Err(GfError::WrongLength {
                expected: self.0.degree,
                got: coeffs.len(),
            });
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.0.p) {
            return Err(GfError::Unreduced(c));
        }
        Ok(FieldElement(coeffs))
    }

    /// Like [`FieldCtx::element`] but pads short vectors with zeros and reduces mod p.
    pub fn element_lenient(&self, coeffs: &[i64]) -> Result<FieldElement, GfError> {
        if coeffs.len() > self.0.degree {
            return Err(GfError::WrongLength {
                expected: self.0.degree,
                got: coeffs.len(),
            });
        }
        let mut c = vec![0; self.0.degree];
        for (slot, &v) in c.iter_mut().zip(coeffs) {
            *slot = v.rem_euclid(self.0.p as i64) as u32;
        }
        Ok(FieldElement(c))
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, a: &FieldElement) -> bool {
        a.0[0] == 1 && a.0[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.0.p;
        FieldElement(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + y) % p).collect())
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.0.p;
        FieldElement(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| (x + p - y) % p)
                .collect(),
        )
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.0.p;
        FieldElement(a.0.iter().map(|&x| (p - x) % p).collect())
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        debug_assert_eq!(a.0.len(), self.0.degree);
        debug_assert_eq!(b.0.len(), self.0.degree);
        match &self.0.repr {
            Repr::Poly { modulus } => FieldElement(poly_mulmod(&a.0, &b.0, modulus, self.0.p)),
            Repr::Quadratic { base, d } => {
                let (a0, a1) = self.split(a);
                let (b0, b1) = self.split(b);
                let re = base.add(&base.mul(&a0, &b0), &base.mul(&base.mul(&a1, &b1), d));
                let im = base.add(&base.mul(&a0, &b1), &base.mul(&a1, &b0));
                Self::join(re, im)
            }
        }
    }

    pub fn square(&self, a: &FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn scale(&self, a: &FieldElement, k: i64) -> FieldElement {
        self.mul(a, &self.from_int(k))
    }

    pub fn pow(&self, a: &FieldElement, mut e: u128) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.square(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, GfError> {
        if self.is_zero(a) {
            return Err(GfError::DivisionByZero);
        }
        Ok(match &self.0.repr {
            Repr::Poly { .. } => self.pow(a, self.0.order - 2),
            Repr::Quadratic { base, d } => {
                let (a0, a1) = self.split(a);
                let norm = base.sub(&base.square(&a0), &base.mul(&base.square(&a1), d));
                let ninv = base.inv(&norm)?;
                Self::join(base.mul(&a0, &ninv), base.neg(&base.mul(&a1, &ninv)))
            }
        })
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn arith(
        &self,
        a: &FieldElement,
        b: Option<&FieldElement>,
        op: ArithOp,
    ) -> Result<FieldElement, GfError> {
        let rhs = || b.expect("binary operation needs a second operand");
        Ok(match op {
            ArithOp::Add => self.add(a, rhs()),
            ArithOp::Mul => self.mul(a, rhs()),
            ArithOp::Inv => self.inv(a)?,
            ArithOp::Neg => self.neg(a),
            ArithOp::Pow(e) => self.pow(a, e),
        })
    }

    /// Position of `a` in the enumeration order: `sum c_i p^i`.
    pub fn index(&self, a: &FieldElement) -> u128 {
        a.0.iter()
            .rev()
            .fold(0u128, |acc, &c| acc * self.0.p as u128 + c as u128)
    }

    pub fn element_at(&self, mut idx: u128) -> FieldElement {
        let p = self.0.p as u128;
        let mut c = vec![0; self.0.degree];
        for slot in c.iter_mut() {
            *slot = (idx % p) as u32;
            idx /= p;
        }
        FieldElement(c)
    }

    /// All elements, zero first.
    pub fn enumerate_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.order).map(move |i| self.element_at(i))
    }

    /// All `p^n - 1` nonzero elements in enumeration order.
    pub fn enumerate_units(&self) -> Vec<FieldElement> {
        (1..self.0.order).map(|i| self.element_at(i)).collect()
    }

    pub fn is_square(&self, a: &FieldElement) -> bool {
        self.is_zero(a) || self.is_one(&self.pow(a, (self.0.order - 1) / 2))
    }

    fn nonresidue(&self) -> &FieldElement {
        self.0.nonresidue.get_or_init(|| {
            (2..self.0.order)
                .map(|i| self.element_at(i))
                .find(|a| !self.is_square(a))
                .expect("odd-order field has a non-square")
        })
    }

    /// Square root, choosing the root that comes first in enumeration order.
    pub fn sqrt(&self, a: &FieldElement) -> Option<FieldElement> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        if !self.is_square(a) {
            return None;
        }
        // Tonelli-Shanks
        let mut s = 0u32;
        let mut t = self.0.order - 1;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        let mut m = s;
        let mut c = self.pow(self.nonresidue(), t);
        let mut tt = self.pow(a, t);
        let mut r = self.pow(a, t.div_ceil(2));
        while !self.is_one(&tt) {
            let mut i = 0u32;
            let mut probe = tt.clone();
            while !self.is_one(&probe) {
                probe = self.square(&probe);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = self.square(&b);
            }
            m = i;
            c = self.square(&b);
            tt = self.mul(&tt, &c);
            r = self.mul(&r, &b);
        }
        let other = self.neg(&r);
        Some(if self.index(&other) < self.index(&r) {
            other
        } else {
            r
        })
    }

    /// Roots of `y^2 + b y + c`.
    pub fn solve_quadratic(&self, b: &FieldElement, c: &FieldElement) -> QuadraticRoots {
        let disc = self.sub(&self.square(b), &self.scale(c, 4));
        let half = self.inv(&self.from_int(2)).expect("p is odd");
        let minus_b = self.neg(b);
        if self.is_zero(&disc) {
            return QuadraticRoots::Double(self.mul(&minus_b, &half));
        }
        match self.sqrt(&disc) {
            None => QuadraticRoots::NeedsExtension {
                b: b.clone(),
                c: c.clone(),
                discriminant: disc,
            },
            Some(s) => {
                let r1 = self.mul(&self.add(&minus_b, &s), &half);
                let r2 = self.mul(&self.sub(&minus_b, &s), &half);
                if self.index(&r1) <= self.index(&r2) {
                    QuadraticRoots::Distinct(r1, r2)
                } else {
                    QuadraticRoots::Distinct(r2, r1)
                }
            }
        }
    }

    /// The quadratic tower `self(sqrt d)` with `d` the first non-square.
    /// Built once and cached.
    pub fn doubled(&self) -> FieldCtx {
        self.0
            .doubled
            .get_or_init(|| {
                FieldCtx(Arc::new(Inner {
                    p: self.0.p,
                    degree: 2 * self.0.degree,
                    order: self.0.order * self.0.order,
                    repr: Repr::Quadratic {
                        base: self.clone(),
                        d: self.nonresidue().clone(),
                    },
                    nonresidue: OnceLock::new(),
                    doubled: OnceLock::new(),
                }))
            })
            .clone()
    }

    /// Whether `sub` is this field or one of the fields below it in the tower.
    pub fn contains_subfield(&self, sub: &FieldCtx) -> bool {
        self == sub || self.base().is_some_and(|b| b.contains_subfield(sub))
    }

    /// Maps an element of a subfield in the tower into this field.
    pub fn embed_from(&self, sub: &FieldCtx, a: &FieldElement) -> FieldElement {
        if self == sub {
            return a.clone();
        }
        let base = self
            .base()
            .expect("embedding from a field that is not below this one");
        let inner = base.embed_from(sub, a);
        Self::join(inner, base.zero())
    }

    /// Inverse of [`FieldCtx::embed_from`]; `None` if `a` is not in the subfield.
    pub fn restrict_to(&self, sub: &FieldCtx, a: &FieldElement) -> Option<FieldElement> {
        if self == sub {
            return Some(a.clone());
        }
        let base = self.base()?;
        let (re, im) = self.split(a);
        if !base.is_zero(&im) {
            return None;
        }
        base.restrict_to(sub, &re)
    }

    fn split(&self, a: &FieldElement) -> (FieldElement, FieldElement) {
        let h = self.0.degree / 2;
        (
            FieldElement(a.0[..h].to_vec()),
            FieldElement(a.0[h..].to_vec()),
        )
    }

    fn join(re: FieldElement, im: FieldElement) -> FieldElement {
        let mut c = re.0;
        c.extend(im.0);
        FieldElement(c)
    }
}

fn smallest_irreducible(p: u32, n: usize) -> Vec<u32> {
    let total = (p as u128).pow(n as u32);
    for idx in 0..total {
        let mut f = Vec::with_capacity(n + 1);
        let mut rest = idx;
        for _ in 0..n {
            f.push((rest % p as u128) as u32);
            rest /= p as u128;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials of every degree exist")
}

/// Ben-Or test: `f` (monic, degree n) is irreducible iff
/// `gcd(X^{p^i} - X, f) = 1` for `1 <= i <= n/2`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    let mut x = vec![0u32; n];
    x[1] = 1;
    let mut h = x.clone();
    for _ in 0..n / 2 {
        h = poly_powmod(&h, p as u128, f, p);
        let mut diff = h.clone();
        diff[1] = (diff[1] + p - 1) % p;
        let g = poly_gcd(trim(diff), f.to_vec(), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Remainder of `a` modulo `b` (b trimmed, nonzero).
fn poly_rem(mut a: Vec<u32>, b: &[u32], p: u32) -> Vec<u32> {
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p) as u64;
    a = trim(a);
    while a.len() > db {
        let top = a.len() - 1;
        let coef = a[top] as u64 * lead_inv % p as u64;
        let shift = top - db;
        for (j, &bj) in b.iter().enumerate() {
            let t = coef * bj as u64 % p as u64;
            a[shift + j] = ((a[shift + j] as u64 + p as u64 - t) % p as u64) as u32;
        }
        a = trim(a);
    }
    a
}

fn poly_gcd(mut a: Vec<u32>, mut b: Vec<u32>, p: u32) -> Vec<u32> {
    a = trim(a);
    b = trim(b);
    while !b.is_empty() {
        let r = poly_rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `a * b mod modulus` for reduced `a`, `b` of length `deg(modulus)`.
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let n = modulus.len() - 1;
    let pp = p as u64;
    if n == 1 {
        return vec![(a[0] as u64 * b[0] as u64 % pp) as u32];
    }
    let mut prod = vec![0u64; 2 * n - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % pp;
        }
    }
    for top in (n..2 * n - 1).rev() {
        let coef = prod[top];
        if coef == 0 {
            continue;
        }
        prod[top] = 0;
        for (j, &mj) in modulus[..n].iter().enumerate() {
            let idx = top - n + j;
            prod[idx] = (prod[idx] + pp - coef * mj as u64 % pp) % pp;
        }
    }
    prod.truncate(n);
    prod.into_iter().map(|c| c as u32).collect()
}

fn poly_powmod(a: &[u32], mut e: u128, modulus: &[u32], p: u32) -> Vec<u32> {
    let n = modulus.len() - 1;
    let mut acc = vec![0u32; n];
    acc[0] = 1;
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &base, modulus, p);
        }
        base = poly_mulmod(&base, &base, modulus, p);
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(ctx: &FieldCtx, v: i64) -> FieldElement {
        ctx.from_int(v)
    }

    /// Brute-force irreducibility: no root and, for degree <= 3, that suffices;
    /// higher degrees check all monic factors of degree <= n/2 by division.
    fn brute_irreducible(f: &[u32], p: u32) -> bool {
        let n = f.len() - 1;
        for d in 1..=n / 2 {
            let count = (p as u128).pow(d as u32);
            for idx in 0..count {
                let mut g = Vec::new();
                let mut r = idx;
                for _ in 0..d {
                    g.push((r % p as u128) as u32);
                    r /= p as u128;
                }
                g.push(1);
                if poly_rem(f.to_vec(), &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn prime_field_modulus_is_x() {
        let ctx = make_ctx(5, 1).unwrap();
        assert_eq!(ctx.modulus().unwrap(), &[0, 1]);
    }

    #[test]
    fn f25_modulus_is_x2_plus_2() {
        let ctx = make_ctx(5, 2).unwrap();
        assert_eq!(ctx.modulus().unwrap(), &[2, 0, 1]);
        // oracle: X^2 + 2 has no root mod 5, and X^2, X^2 + 1 do
        let roots = |c: u32| (0..5u32).filter(|x| (x * x + c) % 5 == 0).count();
        assert_eq!(roots(0), 1);
        assert_eq!(roots(1), 2);
        assert_eq!(roots(2), 0);
    }

    #[test]
    fn small_primes_rejected() {
        assert_eq!(make_ctx(3, 1).unwrap_err(), GfError::UnsupportedPrime(3));
        assert_eq!(make_ctx(2, 1).unwrap_err(), GfError::UnsupportedPrime(2));
        assert_eq!(make_ctx(9, 1).unwrap_err(), GfError::UnsupportedPrime(9));
        assert_eq!(make_ctx(5, 0).unwrap_err(), GfError::InvalidDegree);
    }

    #[test]
    fn ben_or_matches_brute_force() {
        for &(p, n) in &[(5u32, 2usize), (5, 3), (5, 4), (7, 2), (7, 3)] {
            let total = (p as u128).pow(n as u32);
            for idx in 0..total.min(400) {
                let mut f = Vec::new();
                let mut r = idx;
                for _ in 0..n {
                    f.push((r % p as u128) as u32);
                    r /= p as u128;
                }
                f.push(1);
                assert_eq!(
                    is_irreducible(&f, p),
                    brute_irreducible(&f, p),
                    "{f:?} over F_{p}"
                );
            }
        }
    }

    #[test]
    fn arithmetic_in_f5() {
        let ctx = make_ctx(5, 1).unwrap();
        assert_eq!(ctx.mul(&el(&ctx, 2), &el(&ctx, 3)), el(&ctx, 1));
        assert_eq!(ctx.inv(&el(&ctx, 2)).unwrap(), el(&ctx, 3));
        assert_eq!(ctx.inv(&ctx.zero()), Err(GfError::DivisionByZero));
        assert_eq!(
            ctx.arith(&el(&ctx, 4), None, ArithOp::Neg).unwrap(),
            el(&ctx, 1)
        );
        assert_eq!(
            ctx.arith(&el(&ctx, 2), None, ArithOp::Pow(4)).unwrap(),
            el(&ctx, 1)
        );
    }

    #[test]
    fn generator_squared_in_f25() {
        let ctx = make_ctx(5, 2).unwrap();
        let x = ctx.element(vec![0, 1]).unwrap();
        assert_eq!(ctx.mul(&x, &x), el(&ctx, 3));
    }

    #[test]
    fn every_unit_has_an_inverse() {
        for ctx in [
            make_ctx(7, 1).unwrap(),
            make_ctx(5, 2).unwrap(),
            make_ctx(5, 1).unwrap().doubled(),
        ] {
            for a in ctx.enumerate_units() {
                assert!(ctx.is_one(&ctx.mul(&a, &ctx.inv(&a).unwrap())));
            }
        }
    }

    #[test]
    fn unit_enumeration() {
        let f5 = make_ctx(5, 1).unwrap();
        let units: Vec<u32> = f5.enumerate_units().iter().map(|a| a.coeffs()[0]).collect();
        assert_eq!(units, vec![1, 2, 3, 4]);
        assert_eq!(make_ctx(5, 2).unwrap().enumerate_units().len(), 24);
        assert_eq!(make_ctx(7, 1).unwrap().enumerate_units().len(), 6);
        let f25 = make_ctx(5, 2).unwrap();
        let set: std::collections::HashSet<_> = f25.enumerate_units().into_iter().collect();
        assert_eq!(set.len(), 24);
    }

    #[test]
    fn quadratic_examples() {
        let f5 = make_ctx(5, 1).unwrap();
        // (y - 1)^2
        assert_eq!(
            f5.solve_quadratic(&el(&f5, -2), &el(&f5, 1)),
            QuadraticRoots::Double(el(&f5, 1))
        );
        // y^2 - y + 1: discriminant -3 = 2, not a square mod 5
        match f5.solve_quadratic(&el(&f5, -1), &el(&f5, 1)) {
            QuadraticRoots::NeedsExtension { discriminant, .. } => {
                assert_eq!(discriminant, el(&f5, 2))
            }
            other => panic!("expected no roots, got {other:?}"),
        }
        let f25 = make_ctx(5, 2).unwrap();
        let roots = f25.solve_quadratic(&el(&f25, -1), &el(&f25, 1)).roots();
        assert_eq!(roots.len(), 2);
        assert!(f25.is_one(&f25.mul(&roots[0], &roots[1])));
        // exhaustive oracle over the 25 elements
        let brute: Vec<_> = f25
            .enumerate_elements()
            .filter(|y| f25.is_one(&f25.sub(y, &f25.square(y))))
            .collect();
        assert_eq!(brute, roots);
    }

    #[test]
    fn tower_embeds_and_restricts() {
        let f7 = make_ctx(7, 1).unwrap();
        let e = f7.doubled();
        assert_eq!(e.order(), 49);
        for a in f7.enumerate_elements() {
            let up = e.embed_from(&f7, &a);
            assert_eq!(e.restrict_to(&f7, &up), Some(a.clone()));
            assert!(e.is_square(&up));
        }
        let ee = e.doubled();
        assert!(ee.contains_subfield(&f7));
        assert_eq!(ee.degree(), 4);
        let three = ee.embed_from(&f7, &f7.from_int(3));
        assert_eq!(ee.restrict_to(&f7, &three), Some(f7.from_int(3)));
    }

    #[test]
    fn sqrt_returns_first_root() {
        let f13 = make_ctx(13, 1).unwrap();
        for a in f13.enumerate_units() {
            if let Some(r) = f13.sqrt(&a) {
                assert_eq!(f13.square(&r), a);
                assert!(f13.index(&r) <= f13.index(&f13.neg(&r)));
            }
        }
        let f = make_ctx(11, 2).unwrap();
        let squares = f
            .enumerate_units()
            .iter()
            .filter(|a| f.sqrt(a).is_some())
            .count();
        assert_eq!(squares, 60);
    }
}
