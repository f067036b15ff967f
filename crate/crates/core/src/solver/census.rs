//! Census of perfect partitions over all generic rectangulations with `k` rectangles.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use super::{build_system, solve_system, symmetry_key, NumericSolution};
use crate::error::{MondrianError, Result};
use crate::geometry::{verify, Partition};
use crate::layouts::{enumerate_layouts, forbidden_filter, layout_digraph};

/// Largest `k` a census runs for unless the caller raises the bound.
pub const DEFAULT_CENSUS_MAX_K: usize = 8;

/// Evidence behind a census row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Certification {
    /// Exact algebraic coordinates re-verified by the geometry certifiers.
    Exact,
    /// Numeric solution whose residual intervals on a tiny box contain zero.
    Interval,
    /// Numeric candidate that could be neither certified nor refuted.
    Unresolved,
}

impl fmt::Display for Certification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certification::Exact => "exact",
            Certification::Interval => "interval",
            Certification::Unresolved => "unresolved",
        })
    }
}

/// One solution of one layout, up to symmetry.
#[derive(Clone, Debug)]
pub struct CensusRow {
    pub k: usize,
    /// Insertion code of the layout's canonical representative.
    pub layout: String,
    pub admissible: bool,
    pub mondrian: bool,
    pub proper: bool,
    /// The layout passes the digraph filter for proper perfect partitions.
    pub filter_pass: bool,
    /// Longest rectangle side.
    pub x1: f64,
    pub certification: Certification,
    /// Present exactly for [`Certification::Exact`] rows.
    pub partition: Option<Partition>,
    /// Rounded rectangles of the symmetry-minimal image.
    pub key: Vec<[i64; 4]>,
}

impl CensusRow {
    /// Most specific class: `proper-perfect-mondrian`, `perfect-mondrian`,
    /// `perfect-admissible` or `perfect`.
    pub fn class(&self) -> &'static str {
        match (self.admissible, self.mondrian, self.proper) {
            (_, true, true) => "proper-perfect-mondrian",
            (_, true, false) => "perfect-mondrian",
            (true, false, _) => "perfect-admissible",
            _ => "perfect",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolutionCensus {
    pub k: usize,
    pub layouts_enumerated: usize,
    /// Layouts skipped because two rectangles share a full side in every realization.
    pub layouts_pruned: usize,
    /// Layouts whose equations leave a free parameter.
    pub families: usize,
    /// Sorted by certification, class, then key; independent of scheduling.
    pub rows: Vec<CensusRow>,
}

impl SolutionCensus {
    fn count(&self, pred: impl Fn(&CensusRow) -> bool) -> usize {
        self.rows.iter().filter(|r| r.certification == Certification::Exact && pred(r)).count()
    }

    /// Exactly certified perfect admissible partitions, up to symmetry.
    pub fn perfect_admissible(&self) -> usize {
        self.count(|r| r.admissible)
    }

    pub fn perfect_mondrian(&self) -> usize {
        self.count(|r| r.mondrian)
    }

    pub fn proper_perfect_mondrian(&self) -> usize {
        self.count(|r| r.mondrian && r.proper)
    }

    /// Rows without an exact certificate.
    pub fn uncertified(&self) -> usize {
        self.rows.iter().filter(|r| r.certification != Certification::Exact).count()
    }

    /// Statement of the evidence level behind the counts.
    pub fn scope(&self) -> String {
        let numeric = self.uncertified();
        let mut s = format!(
            "over generic rectangulations (T-junctions only) with k = {}: {} layouts up to symmetry, {} pruned for a shared full side",
            self.k, self.layouts_enumerated, self.layouts_pruned
        );
        if numeric > 0 {
            s.push_str(&format!("; {numeric} solutions rest on numeric evidence only"));
        }
        if self.families > 0 {
            s.push_str(&format!("; {} layouts admit a continuous family", self.families));
        }
        s
    }
}

/// Census with the default bound on `k`.
pub fn census(k: usize) -> Result<SolutionCensus> {
    census_with_bound(k, DEFAULT_CENSUS_MAX_K)
}

/// Solves every layout with `k` rectangles and classifies the solutions up to symmetry.
pub fn census_with_bound(k: usize, max_k: usize) -> Result<SolutionCensus> {
    if k < 2 {
        return Err(MondrianError::UnsupportedK { k, min: 2 });
    }
    if k > max_k {
        return Err(MondrianError::KTooLarge { k, max: max_k });
    }
    let layouts = enumerate_layouts(k)?;
    let enumerated = layouts.len();
    let candidates: Vec<_> = layouts.into_iter().filter(|l| !l.has_shared_full_side()).collect();
    let pruned = enumerated - candidates.len();
    let per_layout: Vec<(Vec<CensusRow>, bool)> = candidates
        .par_iter()
        .map(|l| -> Result<(Vec<CensusRow>, bool)> {
            let sys = build_system(l, k)?;
            let sols = solve_system(&sys);
            let code = l.code();
            let filter_pass = forbidden_filter(&layout_digraph(l));
            let mut rows = Vec::new();
            for p in sols.partitions {
                let report = verify(&p);
                debug_assert!(report.tiling_ok && report.perfect);
                let x1 = p.approx_rects().iter().flat_map(|r| [r[2], r[3]]).fold(0.0, f64::max);
                rows.push(CensusRow {
                    k,
                    layout: code.clone(),
                    admissible: report.admissible,
                    mondrian: report.mondrian,
                    proper: report.proper,
                    filter_pass,
                    x1,
                    certification: Certification::Exact,
                    key: symmetry_key(&p),
                    partition: Some(p),
                });
            }
            let numeric = sols.numeric.iter().map(|s| (s, Certification::Interval));
            let unresolved = sols.unresolved.iter().map(|s| (s, Certification::Unresolved));
            for (s, cert) in numeric.chain(unresolved) {
                rows.push(numeric_row(k, &code, filter_pass, s, cert));
            }
            Ok((rows, sols.family))
        })
        .collect::<Result<_>>()?;
    let families = per_layout.iter().filter(|(_, f)| *f).count();
    // Distinct layouts can realize symmetric images of one partition only through
    // coincidences; keep the first per key.
    let mut unique: BTreeMap<(Certification, Vec<[i64; 4]>), CensusRow> = BTreeMap::new();
    for row in per_layout.into_iter().flat_map(|(rows, _)| rows) {
        unique.entry((row.certification, row.key.clone())).or_insert(row);
    }
    let mut rows: Vec<CensusRow> = unique.into_values().collect();
    rows.sort_by(|a, b| (a.certification, a.class(), &a.key).cmp(&(b.certification, b.class(), &b.key)));
    Ok(SolutionCensus { k, layouts_enumerated: enumerated, layouts_pruned: pruned, families, rows })
}

fn numeric_row(k: usize, code: &str, filter_pass: bool, s: &NumericSolution, cert: Certification) -> CensusRow {
    let close = |a: f64, b: f64| (a - b).abs() < 1e-9;
    let n = s.rects.len();
    let mut mondrian = true;
    let mut admissible = true;
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (s.rects[i], s.rects[j]);
            if (close(a[2], b[2]) && close(a[3], b[3])) || (close(a[2], b[3]) && close(a[3], b[2])) {
                mondrian = false;
            }
            let stacked = close(a[0], b[0]) && close(a[2], b[2]) && (close(a[1] + a[3], b[1]) || close(b[1] + b[3], a[1]));
            let side = close(a[1], b[1]) && close(a[3], b[3]) && (close(a[0] + a[2], b[0]) || close(b[0] + b[2], a[0]));
            if stacked || side {
                admissible = false;
            }
        }
    }
    let mut key: Vec<[i64; 4]> = s.rects.iter().map(|r| r.map(|v| (v * 1e9).round() as i64)).collect();
    key.sort();
    CensusRow {
        k,
        layout: code.to_string(),
        admissible,
        mondrian,
        // Properness of numeric rows is taken from the layout filter.
        proper: filter_pass,
        filter_pass,
        x1: s.rects.iter().flat_map(|r| [r[2], r[3]]).fold(0.0, f64::max),
        certification: cert,
        partition: None,
        key,
    }
}
