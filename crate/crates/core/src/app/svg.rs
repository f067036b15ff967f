//! Deterministic SVG drawings of partitions. The longer outer side maps to 1000 units and
//! the y-axis points up, so rectangle 1 of a spiral sits at the top left.

use std::fmt::Write as _;
use std::path::Path;

use super::integer::IntegerPartition;
use crate::error::Result;
use crate::exactnum::{format_sig, BigRational, FieldElement};
use crate::geometry::Partition;

const SIG_DIGITS: usize = 12;
const CANVAS: i64 = 1000;

/// One rectangle in canvas units: `x`, `y` of the top-left corner, `w`, `h`, and the label
/// anchor. All values are exact so the decimal rendering is reproducible.
struct Shape {
    frame: [BigRational; 4],
    center: [BigRational; 2],
}

fn fmt(v: &BigRational) -> String {
    format_sig(v, SIG_DIGITS)
}

fn document(outer: [BigRational; 2], shapes: &[Shape], labels: bool) -> String {
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 {CANVAS} {CANVAS}\" width=\"{CANVAS}\" height=\"{CANVAS}\">"
    );
    let _ = writeln!(
        s,
        "  <rect class=\"frame\" x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"4\"/>",
        fmt(&outer[0]),
        fmt(&outer[1])
    );
    for (i, sh) in shapes.iter().enumerate() {
        let [x, y, w, h] = &sh.frame;
        let _ = writeln!(
            s,
            "  <rect id=\"R{}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"white\" stroke=\"black\" stroke-width=\"2\"/>",
            i + 1,
            fmt(x),
            fmt(y),
            fmt(w),
            fmt(h)
        );
    }
    if labels {
        for (i, sh) in shapes.iter().enumerate() {
            let _ = writeln!(
                s,
                "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"28\" text-anchor=\"middle\" dominant-baseline=\"middle\">R{}</text>",
                fmt(&sh.center[0]),
                fmt(&sh.center[1]),
                i + 1
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

fn exact(v: &FieldElement) -> BigRational {
    v.as_rational().unwrap_or_else(|| {
        // Midpoint of a fixed-width enclosure: a pure function of the exact value.
        let (lo, hi) = v.enclosure(80);
        (lo + hi) / BigRational::from_integer(2.into())
    })
}

pub fn render_svg(p: &Partition, labels: bool) -> String {
    let longest = if p.width().cmp_exact(p.height()).is_ge() { p.width() } else { p.height() };
    let unit = FieldElement::from_rational(p.base(), BigRational::from_integer(CANVAS.into()))
        .checked_div(longest)
        .expect("positive outer side");
    let s = |v: &FieldElement| exact(&(v * &unit));
    let b = p.height();
    let half = BigRational::new(1.into(), 2.into());
    let shapes: Vec<Shape> = p
        .rects()
        .iter()
        .map(|r| {
            let top = b - &r.top();
            let (x, y, w, h) = (s(&r.x), s(&top), s(&r.w), s(&r.h));
            let center = [&x + &w * &half, &y + &h * &half];
            Shape { frame: [x, y, w, h], center }
        })
        .collect();
    document([s(p.width()), s(p.height())], &shapes, labels)
}

pub fn render_integer_svg(p: &IntegerPartition, labels: bool) -> String {
    let unit = BigRational::new(CANVAS.into(), p.n.into());
    let r = |v: i64| BigRational::from_integer(v.into()) * &unit;
    let half = BigRational::new(1.into(), 2.into());
    let shapes: Vec<Shape> = p
        .rects
        .iter()
        .map(|q| {
            let (x, y, w, h) = (r(q.x), r(p.n - q.y - q.h), r(q.w), r(q.h));
            let center = [&x + &w * &half, &y + &h * &half];
            Shape { frame: [x, y, w, h], center }
        })
        .collect();
    document([r(p.n), r(p.n)], &shapes, labels)
}

pub fn write_svg(path: &Path, svg: &str) -> Result<()> {
    std::fs::write(path, svg)?;
    Ok(())
}
