use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::factor::irreducible_factors;
use super::poly::IntPolynomial;
use super::rational_to_f64;

/// A real root of an irreducible integer polynomial, located by an isolating interval.
///
/// Irrational roots carry an open interval `(lo, hi)` with `lo < hi`, both endpoints
/// non-roots and of opposite sign. Rational roots carry the point interval `[r, r]`.
#[derive(Clone, Debug)]
pub struct RealAlgebraic {
    defining: IntPolynomial,
    lo: BigRational,
    hi: BigRational,
}

/// Sturm sequence of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<IntPolynomial>,
}

impl SturmSequence {
    pub fn new(p: &IntPolynomial) -> Self {
        let mut seq = vec![p.primitive(), p.derivative().primitive()];
        if seq[1].is_zero() {
            seq.pop();
            return SturmSequence { seq };
        }
        loop {
            let n = seq.len();
            let (_, r) = seq[n - 2].to_qpoly().div_rem(&seq[n - 1].to_qpoly());
            if r.is_zero() {
                break;
            }
            // Positive rescaling keeps sign variations intact.
            let (c, prim) = r.to_primitive();
            let next = if c.is_negative() { prim } else { prim.neg() };
            seq.push(next);
        }
        SturmSequence { seq }
    }

    fn variations_at(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = 0;
        for p in &self.seq {
            let s = p.sign_at(x);
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_half_open(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Number of distinct real roots in the closed interval `[a, b]`.
    pub fn count_closed(&self, a: &BigRational, b: &BigRational) -> usize {
        let at_a = usize::from(self.seq[0].sign_at(a) == 0);
        at_a + self.count_half_open(a, b)
    }
}

/// Strict upper bound on the absolute value of every root (Cauchy).
fn root_bound(p: &IntPolynomial) -> BigRational {
    let lc = p.leading().abs();
    let m = p.coeffs()[..p.coeffs().len() - 1].iter().map(|c| c.abs()).max().unwrap_or_default();
    BigRational::one() + BigRational::new(m, lc) + BigRational::one()
}

fn midpoint(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / BigRational::from_integer(BigInt::from(2))
}

/// Isolating intervals for the roots of an irreducible polynomial of degree ≥ 2.
fn isolate_irreducible(p: &IntPolynomial) -> Vec<(BigRational, BigRational)> {
    let sturm = SturmSequence::new(p);
    let b = root_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match sturm.count_half_open(&lo, &hi) {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let m = midpoint(&lo, &hi);
                stack.push((m.clone(), hi));
                stack.push((lo, m));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// All distinct real roots of `p`, ascending, each with an irreducible defining polynomial.
pub fn isolate_roots(p: &IntPolynomial) -> Vec<RealAlgebraic> {
    assert!(!p.is_zero(), "isolate_roots of the zero polynomial");
    let mut roots: Vec<RealAlgebraic> = Vec::new();
    for f in irreducible_factors(p) {
        if f.degree() == Some(1) {
            let r = BigRational::new(-f.coeff(0), f.coeff(1));
            roots.push(RealAlgebraic { defining: f, lo: r.clone(), hi: r });
        } else {
            for (lo, hi) in isolate_irreducible(&f) {
                roots.push(RealAlgebraic { defining: f.clone(), lo, hi });
            }
        }
    }
    separate(&mut roots);
    roots.sort_by(|a, b| a.lo.cmp(&b.lo));
    roots
}

/// Refines overlapping intervals of distinct roots until all are pairwise disjoint.
fn separate(roots: &mut [RealAlgebraic]) {
    loop {
        let mut clash = None;
        'outer: for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                if roots[i].lo <= roots[j].hi && roots[j].lo <= roots[i].hi {
                    clash = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = clash else { return };
        for idx in [i, j] {
            if !roots[idx].is_rational() {
                roots[idx] = roots[idx].bisect_once();
            }
        }
    }
}

impl RealAlgebraic {
    /// Builds a root from parts, checking that `[lo, hi]` isolates exactly one root of
    /// `defining`. Irreducibility is the caller's responsibility.
    pub fn from_parts(defining: IntPolynomial, lo: BigRational, hi: BigRational) -> Option<Self> {
        if defining.degree().unwrap_or(0) == 0 || lo > hi {
            return None;
        }
        let defining = defining.primitive();
        if lo == hi {
            return (defining.sign_at(&lo) == 0 && defining.degree() == Some(1))
                .then_some(RealAlgebraic { defining, lo, hi });
        }
        if defining.degree() == Some(1) {
            let r = BigRational::new(-defining.coeff(0), defining.coeff(1));
            return (lo <= r && r <= hi).then(|| RealAlgebraic { defining, lo: r.clone(), hi: r });
        }
        if defining.sign_at(&lo) == 0 || defining.sign_at(&hi) == 0 {
            return None;
        }
        let sturm = SturmSequence::new(&defining);
        (sturm.count_closed(&lo, &hi) == 1).then_some(RealAlgebraic { defining, lo, hi })
    }

    /// The rational number `r` as the root of `den·x − num`.
    pub fn rational(r: &BigRational) -> Self {
        let defining = IntPolynomial::new(vec![-r.numer().clone(), r.denom().clone()]);
        RealAlgebraic { defining, lo: r.clone(), hi: r.clone() }
    }

    pub fn defining(&self) -> &IntPolynomial {
        &self.defining
    }

    pub fn degree(&self) -> usize {
        self.defining.degree().unwrap()
    }

    pub fn interval(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    pub fn is_rational(&self) -> bool {
        self.lo == self.hi
    }

    /// The exact value when the root is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.lo.clone())
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Sturm count over the closed isolating interval.
    pub fn sturm_count(&self) -> usize {
        SturmSequence::new(&self.defining).count_closed(&self.lo, &self.hi)
    }

    fn bisect_once(&self) -> Self {
        let m = midpoint(&self.lo, &self.hi);
        let s_lo = self.defining.sign_at(&self.lo);
        let s_m = self.defining.sign_at(&m);
        let (lo, hi) = if s_m == 0 {
            (m.clone(), m)
        } else if s_m == s_lo {
            (m, self.hi.clone())
        } else {
            (self.lo.clone(), m)
        };
        RealAlgebraic { defining: self.defining.clone(), lo, hi }
    }

    /// Narrows the isolating interval to width at most `eps` by bisection.
    pub fn refine(&self, eps: &BigRational) -> Self {
        assert!(eps.is_positive(), "refine needs eps > 0");
        let mut cur = self.clone();
        while !cur.is_rational() && &cur.width() > eps {
            cur = cur.bisect_once();
        }
        cur
    }

    /// Narrows to width at most `2^-bits`.
    pub fn refine_bits(&self, bits: u32) -> Self {
        let eps = BigRational::new(BigInt::one(), BigInt::one() << bits);
        self.refine(&eps)
    }

    /// True when both describe the same real number.
    pub fn same_root(&self, other: &Self) -> bool {
        if self.defining != other.defining {
            return false;
        }
        let lo = (&self.lo).max(&other.lo);
        let hi = (&self.hi).min(&other.hi);
        if lo > hi {
            return false;
        }
        if self.is_rational() || other.is_rational() {
            return self.lo == other.lo;
        }
        SturmSequence::new(&self.defining).count_closed(lo, hi) == 1
    }

    /// Exact comparison with a rational number.
    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        let mut cur = self.clone();
        loop {
            if cur.is_rational() {
                return cur.lo.cmp(r);
            }
            if r <= &cur.lo {
                return Ordering::Greater;
            }
            if r >= &cur.hi {
                return Ordering::Less;
            }
            if self.defining.sign_at(r) == 0 {
                return Ordering::Equal;
            }
            cur = cur.bisect_once();
        }
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.refine_bits(60);
        rational_to_f64(&midpoint(&r.lo, &r.hi))
    }

    /// Midpoint of an interval of width ≤ `2^-bits` around the root.
    pub fn approx(&self, bits: u32) -> BigRational {
        let r = self.refine_bits(bits);
        midpoint(&r.lo, &r.hi)
    }

    /// Decimal approximation with `sig` significant digits.
    pub fn to_decimal(&self, sig: usize) -> String {
        super::format_sig(&self.approx(4 * sig as u32 + 40), sig)
    }
}

impl fmt::Display for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root of {} in [{}, {}]", self.defining, self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat as q;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn near(r: &RealAlgebraic, v: f64, tol: f64) -> bool {
        (r.to_f64() - v).abs() < tol
    }

    #[test]
    fn k5_closure_roots() {
        let roots = isolate_roots(&p(&[1, -5, 5]));
        assert_eq!(roots.len(), 2);
        assert!(near(&roots[1], 0.7236067977, 1e-10));
        assert!(near(&roots[0], 0.2763932023, 1e-10));
        for r in &roots {
            assert_eq!(r.sturm_count(), 1);
        }
    }

    #[test]
    fn k7_closure_roots_include_rational() {
        let roots = isolate_roots(&p(&[-15, 101, -187, 105]));
        assert_eq!(roots.len(), 3);
        assert!(near(&roots[0], 0.2427, 1e-4));
        assert_eq!(roots[1].as_rational(), Some(q(5, 7)));
        assert!(near(&roots[2], 0.8239265962, 1e-10));
        assert_eq!(roots[2].defining(), &p(&[3, -16, 15]));
    }

    #[test]
    fn linear_root_is_exact() {
        let roots = isolate_roots(&p(&[-1, 1]));
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].as_rational(), Some(q(1, 1)));
    }

    #[test]
    fn constant_has_no_roots() {
        assert!(isolate_roots(&p(&[7])).is_empty());
    }

    #[test]
    fn refine_reaches_width_and_keeps_single_root() {
        let roots = isolate_roots(&p(&[3, -16, 15]));
        let hi = roots[1].refine(&q(1, 10_000_000_000));
        assert!(hi.width() <= q(1, 10_000_000_000));
        assert_eq!(hi.sturm_count(), 1);
        let (lo_e, hi_e) = hi.interval();
        let v = 0.8239265962;
        assert!(rational_to_f64(lo_e) <= v + 1e-10 && rational_to_f64(hi_e) >= v - 1e-10);
        let lo = roots[0].refine(&q(1, 1_000_000));
        assert!(near(&lo, 0.242740, 1e-6));
    }

    #[test]
    fn rational_point_refine_is_stable() {
        let r = isolate_roots(&p(&[-1, 2]))[0].refine(&q(1, 1000));
        assert!(r.is_rational());
        assert_eq!(r.as_rational(), Some(q(1, 2)));
    }

    #[test]
    fn same_root_across_refinements() {
        let roots = isolate_roots(&p(&[3, -16, 15]));
        let a = roots[1].refine_bits(10);
        let b = roots[1].refine_bits(40);
        assert!(a.same_root(&b));
        assert!(!a.same_root(&roots[0]));
    }

    #[test]
    fn clustered_roots_are_separated() {
        // (1000x - 1)(1001x - 1)(x^2 - 2) has two nearby rational roots.
        let f = p(&[-1, 1000]).mul(&p(&[-1, 1001])).mul(&p(&[-2, 0, 1]));
        let roots = isolate_roots(&f);
        assert_eq!(roots.len(), 4);
        for w in roots.windows(2) {
            assert!(w[0].interval().1 < w[1].interval().0);
        }
    }

    #[test]
    fn compare_with_rational() {
        let r = isolate_roots(&p(&[3, -16, 15]))[1].clone();
        assert_eq!(r.cmp_rational(&q(4, 5)), Ordering::Greater);
        assert_eq!(r.cmp_rational(&q(5, 6)), Ordering::Less);
    }
}
