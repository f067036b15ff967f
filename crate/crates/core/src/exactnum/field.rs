use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::algebraic::RealAlgebraic;
use super::factor::squarefree_part;
use super::poly::{IntPolynomial, QPoly};
use super::ratfun::RationalFunction;
use super::{format_rational, format_sig, rational_to_f64};
use crate::error::{MondrianError, Result};

/// Bits of isolating precision a shared base carries, so most sign tests finish without
/// further refinement.
pub const BASE_BITS: u32 = 160;

/// Refines a root once for use as the shared base of a partition.
pub fn make_base(root: &RealAlgebraic) -> Arc<RealAlgebraic> {
    Arc::new(root.refine_bits(BASE_BITS))
}

/// Base for purely rational partitions (the root of `x`).
pub fn rational_base() -> Arc<RealAlgebraic> {
    Arc::new(RealAlgebraic::rational(&BigRational::zero()))
}

/// An element of Q(α) for a real algebraic α, stored as the canonical remainder
/// `Σ coeffs[i] α^i` with fewer coefficients than the degree of α.
#[derive(Clone, Debug)]
pub struct FieldElement {
    base: Arc<RealAlgebraic>,
    coeffs: Vec<BigRational>,
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// True when two bases denote the same real number with the same defining polynomial.
pub fn same_base(a: &Arc<RealAlgebraic>, b: &Arc<RealAlgebraic>) -> bool {
    Arc::ptr_eq(a, b) || a.same_root(b)
}

impl FieldElement {
    fn modulus(base: &RealAlgebraic) -> QPoly {
        base.defining().to_qpoly()
    }

    /// Reduces an arbitrary coefficient vector modulo the defining polynomial.
    pub fn from_coeffs(base: &Arc<RealAlgebraic>, coeffs: Vec<BigRational>) -> Self {
        let p = QPoly::new(coeffs);
        let r = if p.degree().unwrap_or(0) >= base.degree() { p.rem(&Self::modulus(base)) } else { p };
        FieldElement { base: Arc::clone(base), coeffs: r.into_coeffs() }
    }

    pub fn from_rational(base: &Arc<RealAlgebraic>, r: BigRational) -> Self {
        FieldElement { base: Arc::clone(base), coeffs: trim(vec![r]) }
    }

    pub fn from_int(base: &Arc<RealAlgebraic>, v: i64) -> Self {
        Self::from_rational(base, BigRational::from_integer(BigInt::from(v)))
    }

    pub fn zero(base: &Arc<RealAlgebraic>) -> Self {
        FieldElement { base: Arc::clone(base), coeffs: Vec::new() }
    }

    pub fn one(base: &Arc<RealAlgebraic>) -> Self {
        Self::from_int(base, 1)
    }

    /// The base root α itself.
    pub fn generator(base: &Arc<RealAlgebraic>) -> Self {
        Self::from_coeffs(base, vec![BigRational::zero(), BigRational::one()])
    }

    pub fn base(&self) -> &Arc<RealAlgebraic> {
        &self.base
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Same value over another base denoting the same root.
    pub fn rebased(&self, base: &Arc<RealAlgebraic>) -> Result<Self> {
        if !same_base(&self.base, base) {
            return Err(MondrianError::BaseMismatch);
        }
        Ok(FieldElement { base: Arc::clone(base), coeffs: self.coeffs.clone() })
    }

    fn check(&self, other: &Self) {
        assert!(same_base(&self.base, &other.base), "field elements over different bases");
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        FieldElement { base: Arc::clone(&self.base), coeffs: trim(self.coeffs.iter().map(|c| c * r).collect()) }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm modulo the defining polynomial.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(MondrianError::DenominatorVanishes);
        }
        let a = QPoly::new(self.coeffs.clone());
        let (g, s) = a.gcd_cofactor(&Self::modulus(&self.base));
        if g.degree() != Some(0) {
            return Err(MondrianError::DenominatorVanishes);
        }
        Ok(Self::from_coeffs(&self.base, s.into_coeffs()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if !same_base(&self.base, &other.base) {
            return Err(MondrianError::BaseMismatch);
        }
        Ok(self * &other.inverse()?)
    }

    /// Interval enclosure of the value for the base interval `[lo, hi]`.
    fn enclose(&self, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
        let mut a = self.coeffs.last().cloned().unwrap_or_else(BigRational::zero);
        let mut b = a.clone();
        for c in self.coeffs.iter().rev().skip(1) {
            let prods = [&a * lo, &a * hi, &b * lo, &b * hi];
            let mn = prods.iter().min().unwrap().clone();
            let mx = prods.iter().max().unwrap().clone();
            a = mn + c;
            b = mx + c;
        }
        (a, b)
    }

    /// Rational interval of width at most `2^-bits` containing the value.
    pub fn enclosure(&self, bits: u32) -> (BigRational, BigRational) {
        let eps = BigRational::new(BigInt::one(), BigInt::one() << bits);
        if let Some(r) = self.as_rational() {
            return (r.clone(), r);
        }
        if let Some(a) = self.base.as_rational() {
            let v = QPoly::new(self.coeffs.clone()).eval(&a);
            return (v.clone(), v);
        }
        let mut root = (*self.base).clone();
        let mut extra = 0;
        loop {
            let (lo, hi) = root.interval();
            let (a, b) = self.enclose(lo, hi);
            if &b - &a <= eps {
                return (a, b);
            }
            extra += 32;
            root = root.refine_bits(bits + extra);
        }
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if let Some(r) = self.as_rational() {
            return if r.is_positive() { 1 } else { -1 };
        }
        if let Some(a) = self.base.as_rational() {
            let v = QPoly::new(self.coeffs.clone()).eval(&a);
            return if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            };
        }
        // Nonzero canonical remainder of an irreducible modulus never vanishes at the root.
        let mut root = (*self.base).clone();
        let mut bits = 64;
        loop {
            let (lo, hi) = root.interval();
            let (a, b) = self.enclose(lo, hi);
            if a.is_positive() {
                return 1;
            }
            if b.is_negative() {
                return -1;
            }
            bits = bits.max(root_bits(&root)) + 64;
            root = root.refine_bits(bits);
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    /// Exact comparison; panics when the bases differ.
    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        self.check(other);
        match (self - other).signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (a, b) = self.enclosure(64);
        rational_to_f64(&((a + b) / BigRational::from_integer(BigInt::from(2))))
    }

    /// Decimal approximation with `sig` significant digits.
    pub fn to_decimal(&self, sig: usize) -> String {
        if let Some(r) = self.as_rational() {
            return format_sig(&r, sig);
        }
        let (a, b) = self.enclosure(4 * sig as u32 + 40);
        format_sig(&((a + b) / BigRational::from_integer(BigInt::from(2))), sig)
    }

    /// Minimal polynomial over Q, primitive with positive leading coefficient. The
    /// characteristic polynomial of multiplication by `self` is a power of it.
    #[allow(clippy::needless_range_loop)]
    pub fn minimal_polynomial(&self) -> IntPolynomial {
        let n = self.base.degree();
        // Column j holds self·z^j in the power basis.
        let mut m = vec![vec![BigRational::zero(); n]; n];
        let mut col = self.clone();
        let z = Self::generator(&self.base);
        for j in 0..n {
            for (i, c) in col.coeffs.iter().enumerate() {
                m[i][j] = c.clone();
            }
            col = &col * &z;
        }
        // Faddeev-LeVerrier: c[n] = 1, c[n-k] = -tr(A·M_k)/k with M_k = A·M_{k-1} + c[n-k+1]·I.
        let mul = |a: &Vec<Vec<BigRational>>, b: &Vec<Vec<BigRational>>| -> Vec<Vec<BigRational>> {
            (0..n).map(|i| (0..n).map(|j| (0..n).map(|t| &a[i][t] * &b[t][j]).sum()).collect()).collect()
        };
        let mut c = vec![BigRational::zero(); n + 1];
        c[n] = BigRational::one();
        let mut mk = vec![vec![BigRational::zero(); n]; n];
        for k in 1..=n {
            mk = mul(&m, &mk);
            for (i, row) in mk.iter_mut().enumerate() {
                row[i] += &c[n - k + 1];
            }
            let am = mul(&m, &mk);
            let tr: BigRational = (0..n).map(|i| am[i][i].clone()).sum();
            c[n - k] = -tr / BigRational::from_integer(BigInt::from(k as i64));
        }
        let (_, charpoly) = QPoly::new(c).to_primitive();
        let min = squarefree_part(&charpoly);
        if min.leading().is_negative() { min.neg() } else { min }
    }

    /// Exact form as a polynomial in the base root `z`, e.g. `16/21 - 5/7*z`.
    pub fn exact_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let mag = if mag.is_integer() { mag.numer().to_string() } else { format_rational(&mag) };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&mag);
            match i {
                0 => {}
                1 => out.push_str("*z"),
                _ => out.push_str(&format!("*z^{i}")),
            }
        }
        out
    }
}

fn root_bits(root: &RealAlgebraic) -> u32 {
    // Bit length of 1/width, a lower bound on the current precision.
    let w = root.width();
    if w.is_zero() {
        return 0;
    }
    let ratio = w.denom() / w.numer();
    ratio.bits() as u32
}

/// Instantiates a rational function at the base root.
pub fn field_reduce(expr: &RationalFunction, base: &Arc<RealAlgebraic>) -> Result<FieldElement> {
    let num = FieldElement::from_coeffs(base, expr.numerator().to_qpoly().into_coeffs());
    let den = FieldElement::from_coeffs(base, expr.denominator().to_qpoly().into_coeffs());
    Ok(&num * &den.inverse()?)
}

/// Exact three-way comparison of elements over the same base.
pub fn fe_compare(u: &FieldElement, v: &FieldElement) -> Result<Ordering> {
    if !same_base(&u.base, &v.base) {
        return Err(MondrianError::BaseMismatch);
    }
    Ok(u.cmp_exact(v))
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_base(&self.base, &other.base)
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = BigRational::zero();
        let v = (0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) + rhs.coeffs.get(i).unwrap_or(&z)).collect();
        FieldElement { base: Arc::clone(&self.base), coeffs: trim(v) }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = BigRational::zero();
        let v = (0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) - rhs.coeffs.get(i).unwrap_or(&z)).collect();
        FieldElement { base: Arc::clone(&self.base), coeffs: trim(v) }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        let p = QPoly::new(self.coeffs.clone()).mul(&QPoly::new(rhs.coeffs.clone()));
        FieldElement::from_coeffs(&self.base, p.into_coeffs())
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { base: Arc::clone(&self.base), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(12))
    }
}
