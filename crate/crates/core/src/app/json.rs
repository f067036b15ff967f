//! Exact JSON form of a partition: the base root as defining polynomial plus isolating
//! interval, and every coordinate as its coefficient vector over that root.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{MondrianError, Result};
use crate::exactnum::{format_rational, is_irreducible, make_base, parse_rational, BigRational, FieldElement, IntPolynomial, RealAlgebraic};
use crate::geometry::{verify, Partition, Rect};

/// Documents larger than this are rejected before parsing.
pub const MAX_DOCUMENT_BYTES: usize = 1 << 24;
pub const MAX_RECTS: usize = 10_000;
pub const MAX_BASE_DEGREE: usize = 32;
/// Longest accepted integer or rational literal, in characters.
pub const MAX_LITERAL_LEN: usize = 4096;

/// Significant digits of the informational `approx` fields.
const APPROX_DIGITS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionDoc {
    pub k: usize,
    pub outer: OuterDoc,
    pub base: BaseDoc,
    pub rects: Vec<RectDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OuterDoc {
    pub w: CoordDoc,
    pub h: CoordDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseDoc {
    /// Integer coefficients, constant term first.
    pub poly: Vec<IntLiteral>,
    pub interval: [String; 2],
}

/// Integers that fit `i64` are written as JSON numbers, larger ones as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntLiteral {
    Small(i64),
    Big(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RectDoc {
    pub x: CoordDoc,
    pub y: CoordDoc,
    pub w: CoordDoc,
    pub h: CoordDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoordDoc {
    /// `"num/den"` coefficients of `1, z, z², …`.
    pub coeffs: Vec<String>,
    /// Decimal value, informational only.
    pub approx: String,
}

fn coord_doc(v: &FieldElement) -> CoordDoc {
    CoordDoc { coeffs: v.coeffs().iter().map(format_rational).collect(), approx: v.to_decimal(APPROX_DIGITS) }
}

fn int_literal(c: &BigInt) -> IntLiteral {
    match c.to_i64() {
        Some(v) => IntLiteral::Small(v),
        None => IntLiteral::Big(c.to_string()),
    }
}

pub fn to_doc(p: &Partition) -> PartitionDoc {
    let base = p.base();
    let (lo, hi) = base.interval();
    PartitionDoc {
        k: p.k(),
        outer: OuterDoc { w: coord_doc(p.width()), h: coord_doc(p.height()) },
        base: BaseDoc {
            poly: base.defining().coeffs().iter().map(int_literal).collect(),
            interval: [format_rational(lo), format_rational(hi)],
        },
        rects: p
            .rects()
            .iter()
            .map(|r| RectDoc { x: coord_doc(&r.x), y: coord_doc(&r.y), w: coord_doc(&r.w), h: coord_doc(&r.h) })
            .collect(),
    }
}

pub fn to_json(p: &Partition) -> String {
    serde_json::to_string_pretty(&to_doc(p)).expect("documents always serialize")
}

fn parse_err(msg: impl Into<String>) -> MondrianError {
    MondrianError::ParseError(msg.into())
}

fn literal(s: &str) -> Result<BigRational> {
    if s.len() > MAX_LITERAL_LEN {
        return Err(parse_err("literal too long"));
    }
    parse_rational(s).ok_or_else(|| parse_err(format!("bad rational {s:?}")))
}

fn integer(c: &IntLiteral) -> Result<BigInt> {
    match c {
        IntLiteral::Small(v) => Ok(BigInt::from(*v)),
        IntLiteral::Big(s) => {
            let r = literal(s)?;
            if !r.is_integer() || s.contains('/') {
                return Err(parse_err(format!("bad integer {s:?}")));
            }
            Ok(r.to_integer())
        }
    }
}

fn base_root(doc: &BaseDoc) -> Result<Arc<RealAlgebraic>> {
    if doc.poly.len() > MAX_BASE_DEGREE + 1 {
        return Err(parse_err(format!("base degree above {MAX_BASE_DEGREE}")));
    }
    let poly = IntPolynomial::new(doc.poly.iter().map(integer).collect::<Result<_>>()?);
    if !is_irreducible(&poly) {
        return Err(parse_err("base polynomial must be irreducible"));
    }
    let (lo, hi) = (literal(&doc.interval[0])?, literal(&doc.interval[1])?);
    let root = RealAlgebraic::from_parts(poly, lo, hi)
        .ok_or_else(|| parse_err("interval does not isolate exactly one root"))?;
    Ok(make_base(&root))
}

fn coord(base: &Arc<RealAlgebraic>, c: &CoordDoc) -> Result<FieldElement> {
    if c.coeffs.len() > base.degree() {
        return Err(parse_err("coefficient vector longer than the base degree"));
    }
    let coeffs = c.coeffs.iter().map(|s| literal(s)).collect::<Result<_>>()?;
    Ok(FieldElement::from_coeffs(base, coeffs))
}

/// Rebuilds the partition and re-certifies it: it must tile its rectangle and every
/// rectangle must have area `wh/k`.
pub fn from_doc(doc: &PartitionDoc) -> Result<Partition> {
    if doc.rects.len() != doc.k {
        return Err(parse_err(format!("k = {} but {} rects", doc.k, doc.rects.len())));
    }
    if doc.k > MAX_RECTS {
        return Err(parse_err(format!("more than {MAX_RECTS} rects")));
    }
    let base = base_root(&doc.base)?;
    let w = coord(&base, &doc.outer.w)?;
    let h = coord(&base, &doc.outer.h)?;
    let rects = doc
        .rects
        .iter()
        .map(|r| Ok(Rect::new(coord(&base, &r.x)?, coord(&base, &r.y)?, coord(&base, &r.w)?, coord(&base, &r.h)?)))
        .collect::<Result<Vec<_>>>()?;
    let p = Partition::new(w, h, rects).map_err(|e| MondrianError::CertificationFailure(e.to_string()))?;
    let report = verify(&p);
    if !report.tiling_ok || !report.perfect {
        return Err(MondrianError::CertificationFailure(format!(
            "tiling {}, equal areas {}: {:?}",
            report.tiling_ok, report.perfect, report.witnesses
        )));
    }
    Ok(p)
}

pub fn from_json(text: &str) -> Result<Partition> {
    if text.len() > MAX_DOCUMENT_BYTES {
        return Err(parse_err("document too large"));
    }
    let doc: PartitionDoc = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    from_doc(&doc)
}
