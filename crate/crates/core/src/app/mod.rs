//! Applications built on the certified partitions: integer defect search, perimeter and
//! integrality reports, JSON exchange and SVG drawings.

mod integer;
mod json;
mod reports;
mod svg;

pub use integer::{
    integer_search, integer_search_from, verify_integer, DefectReport, IntRect, IntegerPartition, DEFAULT_WINDOW,
    MAX_CANDIDATES, MAX_SIDE,
};
pub use json::{
    from_doc, from_json, to_doc, to_json, BaseDoc, CoordDoc, IntLiteral, OuterDoc, PartitionDoc, RectDoc,
    MAX_BASE_DEGREE, MAX_DOCUMENT_BYTES, MAX_LITERAL_LEN, MAX_RECTS,
};
pub use reports::{
    no_perfect_integer, perimeter_reference, perimeter_report, IrrationalWitness, NoIntegerEntry, NoIntegerReport,
    PerimeterReport,
};
pub use svg::{render_integer_svg, render_svg, write_svg};

use num_traits::Signed;

use crate::error::{MondrianError, Result};
use crate::exactnum::{parse_rational, BigRational};

/// Parses a positive aspect ratio `P/Q` (or an integer `P`).
pub fn parse_aspect(s: &str) -> Result<BigRational> {
    if s.len() > MAX_LITERAL_LEN {
        return Err(MondrianError::ParseError("aspect literal too long".into()));
    }
    let r = parse_rational(s).ok_or_else(|| MondrianError::ParseError(format!("aspect {s:?} is not P/Q")))?;
    if !r.is_positive() {
        return Err(MondrianError::ParseError(format!("aspect {s:?} must be positive")));
    }
    Ok(r)
}
