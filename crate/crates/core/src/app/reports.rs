//! Evidential reports: the maximum-perimeter comparison and the absence of perfect integer
//! Mondrian partitions for small `k`.

use std::fmt;

use serde::Serialize;

use crate::error::{MondrianError, Result};
use crate::exactnum::{irreducible_factors, BigRational, FieldElement, IntPolynomial};
use crate::geometry::{max_perimeter, Partition};
use crate::solver::{census, DEFAULT_CENSUS_MAX_K};
use crate::spiral::{closure_polynomial, solve_spiral};

/// Optimal max-perimeter values for splitting the unit square into `k` equal-area rectangles
/// when congruent rectangles are allowed.
pub fn perimeter_reference(k: usize) -> Option<(&'static str, f64)> {
    match k {
        7 => Some(("22/14", 22.0 / 14.0)),
        8 => Some(("17/12", 17.0 / 12.0)),
        _ => None,
    }
}

#[derive(Clone, Debug)]
pub struct PerimeterReport {
    pub k: usize,
    pub max_perimeter: FieldElement,
    /// 0-based index of the first rectangle attaining the maximum.
    pub rect: usize,
    /// Reference value with its exact fraction, when one is known for `k`.
    pub reference: Option<(&'static str, f64)>,
}

pub fn perimeter_report(p: &Partition) -> PerimeterReport {
    let (max, rect) = max_perimeter(p);
    PerimeterReport { k: p.k(), max_perimeter: max, rect, reference: perimeter_reference(p.k()) }
}

impl fmt::Display for PerimeterReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k = {}", self.k)?;
        writeln!(f, "max perimeter = {} ~ {}", self.max_perimeter.exact_string(), self.max_perimeter.to_decimal(12))?;
        writeln!(f, "attained by R{}", self.rect + 1)?;
        match self.reference {
            Some((label, v)) => write!(f, "reference (congruent rectangles allowed) = {label} ~ {v:.4}"),
            None => write!(f, "reference unavailable for k = {}", self.k),
        }
    }
}

/// A side of a perfect Mondrian partition shown irrational by its minimal polynomial.
#[derive(Clone, Debug, Serialize)]
pub struct IrrationalWitness {
    pub layout: String,
    /// Value of the longest irrational side.
    pub side: f64,
    pub minimal_polynomial: String,
    pub degree: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct NoIntegerEntry {
    pub k: usize,
    pub layouts: usize,
    /// Exactly certified perfect Mondrian partitions, up to symmetry.
    pub perfect_mondrian: usize,
    /// Numeric candidates without an exact certificate; must be zero for the conclusion.
    pub uncertified: usize,
    pub witnesses: Vec<IrrationalWitness>,
    /// Rational roots of the spiral closure polynomial, each rejected by the spiral solver.
    pub rejected_rational_roots: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NoIntegerReport {
    pub k_max: usize,
    pub entries: Vec<NoIntegerEntry>,
    /// Every perfect Mondrian partition found has an irrational side, so none scales to
    /// integers.
    pub holds: bool,
    pub scope: String,
}

/// For each `k ≤ k_max`, runs the census and shows that every perfect Mondrian partition it
/// finds has an irrational side length. Evidence rather than proof: the census covers
/// layouts whose segments meet only in T-junctions, and cross junctions appear there as
/// coinciding segment coordinates.
pub fn no_perfect_integer(k_max: usize) -> Result<NoIntegerReport> {
    if k_max > DEFAULT_CENSUS_MAX_K {
        return Err(MondrianError::KTooLarge { k: k_max, max: DEFAULT_CENSUS_MAX_K });
    }
    let mut entries = Vec::new();
    for k in 2..=k_max {
        let c = census(k)?;
        let witnesses = c
            .rows
            .iter()
            .filter(|r| r.mondrian)
            .filter_map(|r| {
                let p = r.partition.as_ref()?;
                // Longest irrational side; a rational one only when no irrational side exists.
                let sides = p.rects().iter().flat_map(|q| [&q.w, &q.h]);
                let side = sides
                    .clone()
                    .filter(|v| !v.is_rational())
                    .max_by(|a, b| a.cmp_exact(b))
                    .or_else(|| sides.max_by(|a, b| a.cmp_exact(b)))
                    .expect("k >= 2");
                let m = side.minimal_polynomial();
                Some(IrrationalWitness {
                    layout: r.layout.clone(),
                    side: side.to_f64(),
                    degree: m.degree().unwrap_or(0),
                    minimal_polynomial: m.to_string(),
                })
            })
            .collect::<Vec<_>>();
        let rejected_rational_roots = if k >= 5 { rejected_rational_roots(k)? } else { Vec::new() };
        entries.push(NoIntegerEntry {
            k,
            layouts: c.layouts_enumerated,
            perfect_mondrian: c.perfect_mondrian(),
            uncertified: c.uncertified(),
            witnesses,
            rejected_rational_roots,
        });
    }
    let holds = entries.iter().all(|e| e.uncertified == 0 && e.witnesses.len() == e.perfect_mondrian && e.witnesses.iter().all(|w| w.degree >= 2));
    let scope = format!(
        "census over generic layouts for k = 2..={k_max}; a perfect integer Mondrian partition of an n x n square would scale to a perfect Mondrian partition of the unit square with rational sides"
    );
    Ok(NoIntegerReport { k_max, entries, holds, scope })
}

fn rejected_rational_roots(k: usize) -> Result<Vec<String>> {
    let poly = closure_polynomial(k)?;
    let rational: Vec<BigRational> = irreducible_factors(&poly)
        .iter()
        .filter(|f| f.degree() == Some(1))
        .map(|f: &IntPolynomial| BigRational::new(-f.coeff(0), f.coeff(1)))
        .collect();
    let accepted = match solve_spiral(k) {
        Ok(sol) => sol.root.as_rational(),
        Err(_) => None,
    };
    Ok(rational
        .into_iter()
        .filter(|r| Some(r) != accepted.as_ref())
        .map(|r| crate::exactnum::format_rational(&r))
        .collect())
}

impl fmt::Display for NoIntegerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            write!(f, "k = {}: {} layouts, {} perfect Mondrian", e.k, e.layouts, e.perfect_mondrian)?;
            if e.uncertified > 0 {
                write!(f, ", {} uncertified candidates", e.uncertified)?;
            }
            if !e.rejected_rational_roots.is_empty() {
                write!(f, "; rational closure roots rejected: {}", e.rejected_rational_roots.join(", "))?;
            }
            writeln!(f)?;
            for w in &e.witnesses {
                writeln!(f, "  {}: side {:.10} has minimal polynomial {} (degree {})", w.layout, w.side, w.minimal_polynomial, w.degree)?;
            }
        }
        writeln!(f, "scope: {}", self.scope)?;
        if self.holds {
            write!(f, "conclusion: no perfect integer Mondrian partition of a square with k <= {}", self.k_max)
        } else {
            write!(f, "conclusion: not established for k <= {}", self.k_max)
        }
    }
}
