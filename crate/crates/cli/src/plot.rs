//! Real locus of `f = 0` by marching squares, rendered as SVG.
//!
//! Sampling is in `f64`, so plots are illustrative only.

use std::collections::HashMap;
use std::fmt::Write;

use foliation_core::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PlotError {
    #[error("a numeric embedding of the field generator is required (--embed)")]
    MissingEmbedding,
    #[error("degenerate window: radius {radius}, grid {grid}")]
    DegenerateWindow { radius: f64, grid: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlotParams {
    /// Half-width `R` of the square `[−R, R]²`.
    pub radius: f64,
    /// Cells per side.
    pub grid: usize,
    pub embedding: Option<f64>,
}

impl Default for PlotParams {
    fn default() -> Self {
        PlotParams {
            radius: 2.0,
            grid: 200,
            embedding: None,
        }
    }
}

pub type Point = (f64, f64);

/// Grid edge holding a contour vertex: `(i, j, horizontal)`, with `(i, j)`
/// the lower-left grid vertex of the edge.
type EdgeId = (usize, usize, bool);

#[derive(Debug, Clone, Copy)]
struct Crossing {
    edge: EdgeId,
    at: Point,
}

pub struct Contour {
    pub params: PlotParams,
    pub segments: Vec<(Point, Point)>,
    /// Segments chained into polylines; `true` marks a closed loop.
    pub paths: Vec<(Vec<Point>, bool)>,
}

fn validate(p: &PlotParams) -> Result<(), PlotError> {
    if !(p.radius.is_finite() && p.radius > 0.0) || p.grid == 0 {
        return Err(PlotError::DegenerateWindow {
            radius: p.radius,
            grid: p.grid,
        });
    }
    Ok(())
}

pub fn trace(f: &Polynomial, params: PlotParams) -> Result<Contour, PlotError> {
    validate(&params)?;
    let n = params.grid;
    let r = params.radius;
    let h = 2.0 * r / n as f64;
    let coord = |k: usize| -r + h * k as f64;

    let mut values = vec![0.0; (n + 1) * (n + 1)];
    for j in 0..=n {
        for i in 0..=n {
            values[j * (n + 1) + i] = f
                .eval_float(coord(i), coord(j), params.embedding)
                .map_err(|_| PlotError::MissingEmbedding)?;
        }
    }
    let v = |i: usize, j: usize| values[j * (n + 1) + i];

    let cross = |a: (usize, usize), b: (usize, usize), edge: EdgeId| -> Crossing {
        let (va, vb) = (v(a.0, a.1), v(b.0, b.1));
        let t = if va == vb { 0.5 } else { va / (va - vb) };
        let (xa, ya) = (coord(a.0), coord(a.1));
        let (xb, yb) = (coord(b.0), coord(b.1));
        Crossing {
            edge,
            at: (xa + t * (xb - xa), ya + t * (yb - ya)),
        }
    };

    let mut segments = Vec::new();
    let mut links: Vec<(Crossing, Crossing)> = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let corners = [v(i, j), v(i + 1, j), v(i + 1, j + 1), v(i, j + 1)];
            let case = corners
                .iter()
                .enumerate()
                .fold(0u8, |acc, (k, &c)| acc | (u8::from(c > 0.0) << k));
            if case == 0 || case == 15 {
                continue;
            }
            let bottom = || cross((i, j), (i + 1, j), (i, j, true));
            let right = || cross((i + 1, j), (i + 1, j + 1), (i + 1, j, false));
            let top = || cross((i, j + 1), (i + 1, j + 1), (i, j + 1, true));
            let left = || cross((i, j), (i, j + 1), (i, j, false));
            let centre = corners.iter().sum::<f64>() / 4.0;
            let pairs: Vec<(Crossing, Crossing)> = match case {
                1 | 14 => vec![(left(), bottom())],
                2 | 13 => vec![(bottom(), right())],
                3 | 12 => vec![(left(), right())],
                4 | 11 => vec![(right(), top())],
                6 | 9 => vec![(bottom(), top())],
                7 | 8 => vec![(left(), top())],
                // saddles: the centre value decides which corners connect
                5 if centre > 0.0 => vec![(left(), top()), (bottom(), right())],
                5 => vec![(left(), bottom()), (right(), top())],
                10 if centre > 0.0 => vec![(left(), bottom()), (right(), top())],
                10 => vec![(left(), top()), (bottom(), right())],
                _ => unreachable!("cases 0 and 15 are skipped"),
            };
            for (a, b) in pairs {
                segments.push((a.at, b.at));
                links.push((a, b));
            }
        }
    }
    let paths = chain(&links);
    Ok(Contour {
        params,
        segments,
        paths,
    })
}

/// Joins segments sharing a grid edge into polylines.
fn chain(links: &[(Crossing, Crossing)]) -> Vec<(Vec<Point>, bool)> {
    let mut at_edge: HashMap<EdgeId, Vec<usize>> = HashMap::new();
    for (k, (a, b)) in links.iter().enumerate() {
        at_edge.entry(a.edge).or_default().push(k);
        at_edge.entry(b.edge).or_default().push(k);
    }
    let mut used = vec![false; links.len()];
    let next = |edge: EdgeId, used: &[bool]| at_edge[&edge].iter().copied().find(|&k| !used[k]);
    let mut paths = Vec::new();
    for start in 0..links.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let (a, b) = links[start];
        let mut forward = vec![b];
        while let Some(k) = next(forward.last().unwrap().edge, &used) {
            used[k] = true;
            let (p, q) = links[k];
            forward.push(if p.edge == forward.last().unwrap().edge { q } else { p });
        }
        let closed = forward.last().unwrap().edge == a.edge && forward.len() > 1;
        let mut backward = vec![a];
        if !closed {
            while let Some(k) = next(backward.last().unwrap().edge, &used) {
                used[k] = true;
                let (p, q) = links[k];
                backward.push(if p.edge == backward.last().unwrap().edge { q } else { p });
            }
        }
        backward.reverse();
        let mut points: Vec<Point> = backward.iter().chain(&forward).map(|c| c.at).collect();
        if closed {
            points.pop();
        }
        paths.push((points, closed));
    }
    paths
}

pub fn render_svg(contour: &Contour, title: &str) -> String {
    let r = contour.params.radius;
    let stroke = 2.0 * r / 400.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.6} {:.6} {:.6} {:.6}" width="400" height="400">"#,
        -r,
        -r,
        2.0 * r,
        2.0 * r
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(
        out,
        r#"<rect x="{:.6}" y="{:.6}" width="{:.6}" height="{:.6}" fill="white"/>"#,
        -r,
        -r,
        2.0 * r,
        2.0 * r
    );
    let _ = writeln!(
        out,
        r##"<g transform="scale(1,-1)" fill="none" stroke="#1f3b73" stroke-width="{stroke:.6}" stroke-linejoin="round">"##
    );
    for (points, closed) in &contour.paths {
        let mut d = String::new();
        for (k, (x, y)) in points.iter().enumerate() {
            let _ = write!(d, "{}{:.6} {:.6}", if k == 0 { "M" } else { " L" }, x, y);
        }
        if *closed {
            d.push_str(" Z");
        }
        let _ = writeln!(out, r#"<path d="{d}"/>"#);
    }
    out.push_str("</g>\n</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
