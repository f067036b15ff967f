use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{IntPolynomial, QPoly};

/// Quotient of integer polynomials in one variable `x`.
///
/// Normal form: numerator and denominator coprime over Q, denominator with positive
/// leading coefficient, and the two contents coprime. Zero is `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPolynomial,
    den: IntPolynomial,
}

impl RationalFunction {
    /// Normalizes `num / den`; `None` when `den` is the zero polynomial.
    pub fn new(num: IntPolynomial, den: IntPolynomial) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::from_q(&num.to_qpoly(), &den.to_qpoly()))
    }

    fn from_q(num: &QPoly, den: &QPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let (cn, pn) = n.to_primitive();
        let (cd, pd) = d.to_primitive();
        let c = cn / cd;
        let (a, b) = (c.numer().clone(), c.denom().clone());
        RationalFunction { num: pn.scale(&a), den: pd.scale(&b) }
    }

    pub fn zero() -> Self {
        RationalFunction { num: IntPolynomial::zero(), den: IntPolynomial::from_i64s(&[1]) }
    }

    pub fn one() -> Self {
        Self::constant(&BigRational::one())
    }

    /// The free variable `x`.
    pub fn x() -> Self {
        RationalFunction { num: IntPolynomial::x(), den: IntPolynomial::from_i64s(&[1]) }
    }

    pub fn constant(c: &BigRational) -> Self {
        RationalFunction {
            num: IntPolynomial::constant(c.numer().clone()),
            den: IntPolynomial::constant(c.denom().clone()),
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(&BigRational::from_integer(BigInt::from(c)))
    }

    pub fn from_poly(p: &IntPolynomial) -> Self {
        Self::from_q(&p.to_qpoly(), &QPoly::constant(BigRational::one()))
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Constant value when both parts are constants.
    pub fn as_constant(&self) -> Option<BigRational> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(BigRational::zero()),
            (Some(0), Some(0)) => Some(BigRational::new(self.num.coeff(0), self.den.coeff(0))),
            _ => None,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (mut n, mut d) = (self.den.clone(), self.num.clone());
        if d.leading().is_negative() {
            n = n.neg();
            d = d.neg();
        }
        Some(RationalFunction { num: n, den: d })
    }

    /// Exact value at a rational point; `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    /// Numerator in primitive normal form (content removed, positive leading coefficient).
    pub fn primitive_numerator(&self) -> IntPolynomial {
        self.num.primitive()
    }

    /// Checks the normal-form invariant.
    pub fn is_normalized(&self) -> bool {
        if self.num.is_zero() {
            return self.den == IntPolynomial::from_i64s(&[1]);
        }
        let g = self.num.to_qpoly().gcd(&self.den.to_qpoly());
        g.degree() == Some(0)
            && self.den.leading().is_positive()
            && self.num.content().gcd(&self.den.content()).is_one()
    }

    fn combine(&self, other: &Self, sub: bool) -> Self {
        let (n1, d1) = (self.num.to_qpoly(), self.den.to_qpoly());
        let (n2, d2) = (other.num.to_qpoly(), other.den.to_qpoly());
        let a = n1.mul(&d2);
        let b = n2.mul(&d1);
        let n = if sub { a.sub(&b) } else { a.add(&b) };
        Self::from_q(&n, &d1.mul(&d2))
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        self.combine(rhs, false)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self.combine(rhs, true)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        let n = self.num.to_qpoly().mul(&rhs.num.to_qpoly());
        let d = self.den.to_qpoly().mul(&rhs.den.to_qpoly());
        RationalFunction::from_q(&n, &d)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by the zero function.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self * &rhs.recip().expect("division by the zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.coeff(0).is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
