//! Damped multistart Newton on the equal-area residuals, with clustering and a rational
//! interval check of the clustered solutions.

use nalgebra::{DMatrix, DVector};
use num_traits::{One, Signed, Zero};

use super::{Coord, EqualAreaSystem, DEGENERATE_SIDE};
use crate::exactnum::BigRational;
use crate::geometry::ranked::{rank_values, tiling_witness};
use crate::geometry::RankRect;

#[derive(Clone, Debug, PartialEq)]
pub struct NewtonConfig {
    pub points_per_dim: usize,
    pub max_starts: usize,
    /// Step factor applied while the residual norm does not decrease.
    pub damping: f64,
    pub tolerance: f64,
    pub cluster_radius: f64,
    pub max_iterations: usize,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        NewtonConfig {
            points_per_dim: 5,
            max_starts: 2000,
            damping: 0.5,
            tolerance: 1e-14,
            cluster_radius: 1e-8,
            max_iterations: 100,
        }
    }
}

/// A converged, non-degenerate numeric solution whose coordinates tile the square.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericSolution {
    pub point: Vec<f64>,
    /// `(x, y, w, h)` per rectangle.
    pub rects: Vec<[f64; 4]>,
    /// Largest absolute residual at `point`.
    pub residual: f64,
    /// Residual intervals on a box of radius `1e-40` around a refined point all contain zero
    /// and are narrower than `1e-30`.
    pub certified: bool,
}

fn value(c: Coord, point: &[f64]) -> f64 {
    match c {
        Coord::Fixed(v) => v as f64,
        Coord::Var(i) => point[i],
    }
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn jacobian(sys: &EqualAreaSystem, point: &[f64]) -> DMatrix<f64> {
    let frames = sys.frames();
    let mut j = DMatrix::zeros(frames.len(), sys.unknowns());
    for (row, f) in frames.iter().enumerate() {
        let w = value(f[1], point) - value(f[0], point);
        let h = value(f[3], point) - value(f[2], point);
        let mut add = |c: Coord, d: f64| {
            if let Coord::Var(i) = c {
                j[(row, i)] += d;
            }
        };
        add(f[1], h);
        add(f[0], -h);
        add(f[3], w);
        add(f[2], -w);
    }
    j
}

/// Gauss-Newton with step halving; the system has one redundant equation (areas always sum
/// to one), so steps come from a least-squares solve.
fn newton(sys: &EqualAreaSystem, start: &[f64], cfg: &NewtonConfig) -> Option<Vec<f64>> {
    let mut x = start.to_vec();
    let mut r = sys.residuals(&x);
    let mut norm = max_abs(&r);
    for _ in 0..cfg.max_iterations {
        if norm < cfg.tolerance {
            return Some(x);
        }
        let j = jacobian(sys, &x);
        let rhs = -DVector::from_vec(r.clone());
        let step = j.svd(true, true).solve(&rhs, 1e-13).ok()?;
        let mut lambda = 1.0;
        loop {
            let trial: Vec<f64> = x.iter().zip(step.iter()).map(|(a, d)| a + lambda * d).collect();
            let tr = sys.residuals(&trial);
            let tn = max_abs(&tr);
            if tn < norm || lambda < 1e-6 {
                x = trial;
                r = tr;
                norm = tn;
                break;
            }
            lambda *= cfg.damping;
        }
        if x.iter().any(|v| !v.is_finite() || v.abs() > 1e6) {
            return None;
        }
    }
    (norm < cfg.tolerance).then_some(x)
}

/// Deterministic starts: the rank-grid point, then a strided subset of the regular lattice
/// with `points_per_dim` interior values per unknown.
fn starts(sys: &EqualAreaSystem, cfg: &NewtonConfig) -> Vec<Vec<f64>> {
    let n = sys.unknowns();
    let p = cfg.points_per_dim;
    let total = (p as u128).saturating_pow(n as u32);
    let count = total.min(cfg.max_starts.saturating_sub(1) as u128);
    let stride = total.checked_div(count).map_or(1, |s| s.max(1));
    let mut out = vec![sys.rank_point()];
    for s in 0..count {
        let mut idx = s * stride;
        let mut pt = Vec::with_capacity(n);
        for _ in 0..n {
            pt.push(((idx % p as u128) as f64 + 1.0) / (p as f64 + 1.0));
            idx /= p as u128;
        }
        out.push(pt);
    }
    out
}

/// Rectangles of a point, or `None` when a side is degenerate or the rectangles do not tile.
pub(crate) fn placed_rects(sys: &EqualAreaSystem, point: &[f64]) -> Option<Vec<[f64; 4]>> {
    let mut rects = Vec::with_capacity(sys.k());
    for f in sys.frames() {
        let (x0, x1, y0, y1) = (value(f[0], point), value(f[1], point), value(f[2], point), value(f[3], point));
        if x1 - x0 < DEGENERATE_SIDE || y1 - y0 < DEGENERATE_SIDE {
            return None;
        }
        rects.push([x0, y0, x1 - x0, y1 - y0]);
    }
    let tol = |a: &f64, b: &f64| {
        if (a - b).abs() < 1e-9 {
            std::cmp::Ordering::Equal
        } else {
            a.total_cmp(b)
        }
    };
    let xs: Vec<f64> = rects.iter().flat_map(|r| [r[0], r[0] + r[2]]).collect();
    let ys: Vec<f64> = rects.iter().flat_map(|r| [r[1], r[1] + r[3]]).collect();
    let (xr, nx) = rank_values(&xs, tol);
    let (yr, ny) = rank_values(&ys, tol);
    let ranked: Vec<RankRect> =
        (0..rects.len()).map(|i| RankRect::new(xr[2 * i], xr[2 * i + 1], yr[2 * i], yr[2 * i + 1])).collect();
    tiling_witness(&ranked, RankRect::new(0, nx - 1, 0, ny - 1)).is_none().then_some(rects)
}

/// Converged solutions, clustered, filtered to non-degenerate tilings and checked on a box.
pub fn newton_solutions(sys: &EqualAreaSystem, cfg: &NewtonConfig) -> Vec<NumericSolution> {
    let mut clusters: Vec<Vec<f64>> = Vec::new();
    for start in starts(sys, cfg) {
        let Some(x) = newton(sys, &start, cfg) else { continue };
        let close = |c: &Vec<f64>| c.iter().zip(&x).all(|(a, b)| (a - b).abs() < cfg.cluster_radius);
        if !clusters.iter().any(close) {
            clusters.push(x);
        }
    }
    clusters.sort_by(|a, b| a.iter().zip(b).map(|(p, q)| p.total_cmp(q)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal));
    clusters
        .into_iter()
        .filter_map(|x| {
            let rects = placed_rects(sys, &x)?;
            let residual = max_abs(&sys.residuals(&x));
            let certified = certify(sys, &x);
            Some(NumericSolution { point: x, rects, residual, certified })
        })
        .collect()
}

fn to_rational(v: f64) -> BigRational {
    BigRational::from_float(v).unwrap_or_else(BigRational::zero)
}

/// Rounds to a multiple of `2^-bits` to keep rational Newton iterates small.
fn round_dyadic(v: &BigRational, bits: u32) -> BigRational {
    let scale = BigRational::from_integer(num_bigint::BigInt::one() << bits);
    (v * &scale).round() / scale
}

fn rational_residuals(sys: &EqualAreaSystem, x: &[BigRational]) -> Vec<BigRational> {
    let val = |c: Coord| match c {
        Coord::Fixed(v) => BigRational::from_integer(v.into()),
        Coord::Var(i) => x[i].clone(),
    };
    let target = BigRational::new(1.into(), (sys.k() as i64).into());
    sys.frames().iter().map(|f| (val(f[1]) - val(f[0])) * (val(f[3]) - val(f[2])) - &target).collect()
}

/// Least-squares step from the normal equations, solved exactly.
#[allow(clippy::needless_range_loop)]
fn rational_step(sys: &EqualAreaSystem, x: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = sys.unknowns();
    let frames = sys.frames();
    let val = |c: Coord| match c {
        Coord::Fixed(v) => BigRational::from_integer(v.into()),
        Coord::Var(i) => x[i].clone(),
    };
    let mut j = vec![vec![BigRational::zero(); n]; frames.len()];
    for (row, f) in frames.iter().enumerate() {
        let w = val(f[1]) - val(f[0]);
        let h = val(f[3]) - val(f[2]);
        for (c, d) in [(f[1], h.clone()), (f[0], -h), (f[3], w.clone()), (f[2], -w)] {
            if let Coord::Var(i) = c {
                j[row][i] += d;
            }
        }
    }
    let r = rational_residuals(sys, x);
    // (JᵀJ) δ = −Jᵀr
    let mut a = vec![vec![BigRational::zero(); n + 1]; n];
    for p in 0..n {
        for q in 0..n {
            a[p][q] = (0..frames.len()).map(|row| &j[row][p] * &j[row][q]).sum();
        }
        a[p][n] = -(0..frames.len()).map(|row| &j[row][p] * &r[row]).sum::<BigRational>();
    }
    for col in 0..n {
        let piv = (col..n).find(|&row| !a[row][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for c in col..=n {
            a[col][c] = &a[col][c] * &inv;
        }
        for row in 0..n {
            if row != col && !a[row][col].is_zero() {
                let factor = a[row][col].clone();
                for c in col..=n {
                    let sub = &factor * &a[col][c];
                    a[row][c] -= sub;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Refines `x` with exact Newton steps, then evaluates every residual in interval arithmetic
/// on a box of radius `1e-40`: each interval must contain zero and be narrower than `1e-30`.
fn certify(sys: &EqualAreaSystem, x: &[f64]) -> bool {
    let mut pt: Vec<BigRational> = x.iter().map(|&v| to_rational(v)).collect();
    for _ in 0..6 {
        let Some(step) = rational_step(sys, &pt) else { return false };
        pt = pt.iter().zip(&step).map(|(a, d)| round_dyadic(&(a + d), 256)).collect();
    }
    let radius = BigRational::new(1.into(), num_bigint::BigInt::from(10).pow(40));
    let width_bound = BigRational::new(1.into(), num_bigint::BigInt::from(10).pow(30));
    let interval = |c: Coord| match c {
        Coord::Fixed(v) => {
            let r = BigRational::from_integer(v.into());
            (r.clone(), r)
        }
        Coord::Var(i) => (&pt[i] - &radius, &pt[i] + &radius),
    };
    let target = BigRational::new(1.into(), (sys.k() as i64).into());
    sys.frames().iter().all(|f| {
        let (l, r, b, t) = (interval(f[0]), interval(f[1]), interval(f[2]), interval(f[3]));
        let w = (&r.0 - &l.1, &r.1 - &l.0);
        let h = (&t.0 - &b.1, &t.1 - &b.0);
        let products = [&w.0 * &h.0, &w.0 * &h.1, &w.1 * &h.0, &w.1 * &h.1];
        let lo = products.iter().min().unwrap() - &target;
        let hi = products.iter().max().unwrap() - &target;
        !lo.is_positive() && !hi.is_negative() && (&hi - &lo) < width_bound
    })
}
