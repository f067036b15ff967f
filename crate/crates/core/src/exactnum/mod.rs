//! Exact arithmetic: big rationals, integer polynomials, rational functions, real
//! algebraic numbers and elements of the number field they generate.

mod algebraic;
mod factor;
mod field;
mod modp;
mod poly;
mod ratfun;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use algebraic::{isolate_roots, RealAlgebraic, SturmSequence};
pub use factor::{irreducible_factors, is_irreducible, squarefree_part};
pub use field::{fe_compare, field_reduce, make_base, rational_base, same_base, FieldElement, BASE_BITS};
pub use num_rational::BigRational;
pub use poly::{IntPolynomial, QPoly};
pub use ratfun::RationalFunction;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn bigint_to_f64(v: &BigInt) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Canonical `num/den` text, always with an explicit denominator.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `n` or `n/d` (optional sign, base 10, nonzero denominator).
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let valid = |t: &str| {
        let t = t.strip_prefix(['-', '+']).unwrap_or(t);
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    if !valid(n) || !valid(d) {
        return None;
    }
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Decimal rendering rounded half away from zero to `sig` significant digits, with
/// trailing zeros removed.
pub fn format_sig(r: &BigRational, sig: usize) -> String {
    assert!(sig > 0);
    if r.is_zero() {
        return "0".into();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // e = floor(log10 a), estimated from digit counts then corrected.
    let mut e = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    let pow10 = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(BigInt::from(10).pow(k as u32))
        } else {
            BigRational::new(BigInt::one(), BigInt::from(10).pow((-k) as u32))
        }
    };
    while pow10(e) > a {
        e -= 1;
    }
    while pow10(e + 1) <= a {
        e += 1;
    }
    let scaled = &a * pow10(sig as i64 - 1 - e);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut n = (scaled + half).floor().to_integer();
    if n >= BigInt::from(10).pow(sig as u32) {
        n /= 10;
        e += 1;
    }
    let digits = n.to_string();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if e >= sig as i64 - 1 {
        out.push_str(&digits);
        out.push_str(&"0".repeat((e - (sig as i64 - 1)) as usize));
        return out;
    }
    let body = if e < 0 {
        format!("0.{}{}", "0".repeat((-e - 1) as usize), digits)
    } else {
        let (int, frac) = digits.split_at((e + 1) as usize);
        format!("{int}.{frac}")
    };
    let body = body.trim_end_matches('0').trim_end_matches('.');
    out.push_str(body);
    out
}
