//! `B ⊆ A` through support dominance `h_B ≤ h_A`, certified between samples.

use std::f64::consts::TAU;

use serde::Serialize;

use super::angle::normalize;
use super::body::ConvexBody;
use super::numeric::golden_max;
use super::point::Point;
use super::tolerance::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Contained,
    NotContained,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Containment {
    pub verdict: Verdict,
    /// `min_ν h_A(ν) − h_B(ν)`; negative when a normal separates.
    pub margin: f64,
    /// Normal attaining the margin.
    pub normal: f64,
}

impl Containment {
    pub fn is_contained(&self) -> bool {
        self.verdict == Verdict::Contained
    }
}

/// Shortest cell the refinement will split. Exact bodies are taken as certified there.
const MIN_CELL: f64 = 1e-9;
const CELL_BUDGET: usize = 4_000_000;

/// Sorted normals: a uniform grid plus the breakpoints of both bodies.
pub(crate) fn normal_grid(n: usize, bodies: &[&ConvexBody]) -> Vec<f64> {
    let mut g: Vec<f64> = (0..n).map(|i| TAU * i as f64 / n as f64).collect();
    for b in bodies {
        g.extend(b.breakpoints().into_iter().map(normalize));
    }
    g.sort_by(f64::total_cmp);
    g.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    g
}

/// Decides whether `b ⊆ a`.
pub fn contains(a: &ConvexBody, b: &ConvexBody, tol: &Tolerance) -> Containment {
    let g = |nu: f64| b.support(nu) - a.support(nu);
    let eps = tol.eps_geom;
    let grid = normal_grid(tol.samples, &[a, b]);
    let vals: Vec<f64> = grid.iter().map(|&nu| g(nu)).collect();
    let n = grid.len();

    let imax = (0..n).max_by(|&i, &j| vals[i].total_cmp(&vals[j])).unwrap_or(0);
    if vals[imax] > eps {
        let lo = if imax == 0 { grid[n - 1] - TAU } else { grid[imax - 1] };
        let hi = if imax + 1 == n { grid[0] + TAU } else { grid[imax + 1] };
        let (nu, m) = golden_max(lo, hi, 200, g);
        let (nu, m) = if m >= vals[imax] { (nu, m) } else { (grid[imax], vals[imax]) };
        return Containment { verdict: Verdict::NotContained, margin: -m, normal: normalize(nu) };
    }

    let sampled = a.is_sampled() || b.is_sampled();
    let c = a.center().midpoint(b.center());
    let lip = a.radius_about(c) + b.radius_about(c);
    let rho = a.curvature_bound();
    // Lower bound on g'' inside a cell, as a function of the cell's upper bound on g.
    let curvature = |g_cell: f64| -> f64 {
        if sampled {
            let rb = if b.is_sampled() { 0.0 } else { b.radius_about(Point::ORIGIN) };
            let ra = if a.is_sampled() { 0.0 } else { rho + a.radius_about(Point::ORIGIN) };
            rb + ra
        } else {
            rho + g_cell.max(0.0)
        }
    };

    let mut worst = (grid[imax], vals[imax]);
    let mut unknown = false;
    let mut budget = CELL_BUDGET;
    let mut stack: Vec<(f64, f64, f64, f64)> = (0..n)
        .map(|i| {
            let (hi, ghi) = if i + 1 == n { (grid[0] + TAU, vals[0]) } else { (grid[i + 1], vals[i + 1]) };
            (grid[i], hi, vals[i], ghi)
        })
        .collect();
    while let Some((lo, hi, glo, ghi)) = stack.pop() {
        let w = hi - lo;
        let top = glo.max(ghi);
        let mid = 0.5 * (lo + hi);
        let one_piece = {
            let d = 1e-3 * w;
            let p = a.piece(lo + d);
            a.piece(mid) == p && a.piece(hi - d) == p
        };
        if one_piece {
            let m = curvature(top + lip * w / 2.0);
            if top + m * w * w / 8.0 <= eps {
                continue;
            }
        }
        if w < MIN_CELL {
            if sampled {
                unknown = true;
            }
            continue;
        }
        if budget == 0 {
            unknown = true;
            break;
        }
        budget -= 1;
        let gm = g(mid);
        if gm > worst.1 {
            worst = (mid, gm);
        }
        if gm > eps {
            let (nu, m) = golden_max(lo, hi, 200, g);
            let (nu, m) = if m >= gm { (nu, m) } else { (mid, gm) };
            return Containment { verdict: Verdict::NotContained, margin: -m, normal: normalize(nu) };
        }
        stack.push((lo, mid, glo, gm));
        stack.push((mid, hi, gm, ghi));
    }
    // Refine the largest grid values so the margin does not depend on grid placement.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[j].total_cmp(&vals[i]));
    for &i in order.iter().take(8) {
        let lo = if i == 0 { grid[n - 1] - TAU } else { grid[i - 1] };
        let hi = if i + 1 == n { grid[0] + TAU } else { grid[i + 1] };
        let (nu, m) = golden_max(lo, hi, 200, g);
        if m > worst.1 {
            worst = (nu, m);
        }
    }
    let verdict = if worst.1 > eps {
        Verdict::NotContained
    } else if unknown {
        Verdict::Unknown
    } else {
        Verdict::Contained
    };
    Containment { verdict, margin: -worst.1, normal: normalize(worst.0) }
}

/// `sup_ν |h_A(ν) − h_B(ν)|`, the Hausdorff distance of two convex bodies.
pub fn body_distance(a: &ConvexBody, b: &ConvexBody, samples: usize) -> f64 {
    let f = |nu: f64| (a.support(nu) - b.support(nu)).abs();
    let grid = normal_grid(samples, &[a, b]);
    let n = grid.len();
    let vals: Vec<f64> = grid.iter().map(|&nu| f(nu)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[j].total_cmp(&vals[i]));
    let mut best = vals[order[0]];
    for &i in order.iter().take(8) {
        let lo = if i == 0 { grid[n - 1] - TAU } else { grid[i - 1] };
        let hi = if i + 1 == n { grid[0] + TAU } else { grid[i + 1] };
        best = best.max(golden_max(lo, hi, 200, f).1);
    }
    best
}
