//! Depth-first enumeration of `{x ∈ Zⁿ : Ax = b, l <= x <= u}`.
//!
//! Before a coordinate is branched on, its range is tightened row by row
//! against the interval the still-unassigned coordinates can contribute, so
//! every partial assignment that survives can still meet every row's bounds.
//! Columns with more nonzeros are assigned first (stable, so ties keep
//! ascending coordinate order).

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOutcome {
    /// False when the node budget ran out or the visitor stopped early.
    pub complete: bool,
    pub nodes: u64,
}

pub struct PointEnumerator<'a> {
    rhs: &'a [i64],
    lower: &'a [i64],
    upper: &'a [i64],
    order: Vec<usize>,
    /// For depth `d`, the rows touched by `order[d]` with their coefficient.
    touching: Vec<Vec<(usize, i64)>>,
    /// `from_min[d][r]`: smallest contribution to row `r` of coordinates
    /// `order[d..]`; `from_max` likewise.
    from_min: Vec<Vec<i128>>,
    from_max: Vec<Vec<i128>>,
}

struct Walk<'v, F> {
    visit: &'v mut F,
    point: Vec<i64>,
    residual: Vec<i128>,
    nodes: u64,
    budget: Option<u64>,
    stopped: bool,
}

impl<'a> PointEnumerator<'a> {
    pub fn new(matrix: &'a IntMatrix, rhs: &'a [i64], lower: &'a [i64], upper: &'a [i64]) -> Result<Self> {
        let (m, n) = (matrix.rows(), matrix.cols());
        if rhs.len() != m || lower.len() != n || upper.len() != n {
            return Err(Error::dim("enumeration data does not match matrix shape"));
        }
        let nnz = |j: usize| (0..m).filter(|&r| matrix.get(r, j) != 0).count();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&j| std::cmp::Reverse(nnz(j)));

        let touching = order
            .iter()
            .map(|&j| {
                (0..m)
                    .filter_map(|r| {
                        let a = matrix.get(r, j);
                        (a != 0).then_some((r, a))
                    })
                    .collect()
            })
            .collect();

        // from_*[d]: extreme contributions of coordinates order[d..] per row.
        let mut from_min = vec![vec![0i128; m]; n + 1];
        let mut from_max = vec![vec![0i128; m]; n + 1];
        for d in (0..n).rev() {
            let j = order[d];
            for r in 0..m {
                let a = matrix.get(r, j) as i128;
                let (p, q) = (a * lower[j] as i128, a * upper[j] as i128);
                from_min[d][r] = from_min[d + 1][r] + p.min(q);
                from_max[d][r] = from_max[d + 1][r] + p.max(q);
            }
        }

        Ok(PointEnumerator { rhs, lower, upper, order, touching, from_min, from_max })
    }

    /// Visits every point in coordinate order of the DFS. Returns once the
    /// search completes, the visitor breaks, or `node_budget` is exhausted.
    pub fn run<F>(&self, node_budget: Option<u64>, mut visit: F) -> EnumerationOutcome
    where
        F: FnMut(&[i64]) -> ControlFlow<()>,
    {
        let n = self.order.len();
        let m = self.rhs.len();
        let residual: Vec<i128> = self.rhs.iter().map(|&b| b as i128).collect();

        // Rows untouched by any coordinate are only checked here.
        if (0..m).any(|r| residual[r] < self.from_min[0][r] || residual[r] > self.from_max[0][r]) {
            return EnumerationOutcome { complete: true, nodes: 0 };
        }

        let mut walk = Walk {
            visit: &mut visit,
            point: vec![0; n],
            residual,
            nodes: 0,
            budget: node_budget,
            stopped: false,
        };
        self.descend(0, &mut walk);
        EnumerationOutcome { complete: !walk.stopped, nodes: walk.nodes }
    }

    fn descend<F>(&self, depth: usize, walk: &mut Walk<'_, F>)
    where
        F: FnMut(&[i64]) -> ControlFlow<()>,
    {
        if depth == self.order.len() {
            debug_assert!(walk.residual.iter().all(|&r| r == 0));
            if (walk.visit)(&walk.point).is_break() {
                walk.stopped = true;
            }
            return;
        }
        let j = self.order[depth];
        let mut lo = self.lower[j] as i128;
        let mut hi = self.upper[j] as i128;
        for &(r, a) in &self.touching[depth] {
            // a * x_j must fit what the later coordinates leave open
            let t_lo = walk.residual[r] - self.from_max[depth + 1][r];
            let t_hi = walk.residual[r] - self.from_min[depth + 1][r];
            let a = a as i128;
            let (xlo, xhi) = if a > 0 {
                (div_ceil(t_lo, a), div_floor(t_hi, a))
            } else {
                (div_ceil(t_hi, a), div_floor(t_lo, a))
            };
            lo = lo.max(xlo);
            hi = hi.min(xhi);
            if lo > hi {
                return;
            }
        }
        let mut v = lo;
        while v <= hi {
            if let Some(b) = walk.budget {
                if walk.nodes >= b {
                    walk.stopped = true;
                    return;
                }
            }
            walk.nodes += 1;
            walk.point[j] = v as i64;
            for &(r, a) in &self.touching[depth] {
                walk.residual[r] -= a as i128 * v;
            }
            self.descend(depth + 1, walk);
            for &(r, a) in &self.touching[depth] {
                walk.residual[r] += a as i128 * v;
            }
            if walk.stopped {
                return;
            }
            v += 1;
        }
    }
}

fn div_floor(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -div_floor(-a, b)
}

/// Collects all points, failing with [`Error::CapExceeded`] past `cap`.
pub(crate) fn collect_points(
    matrix: &IntMatrix,
    rhs: &[i64],
    lower: &[i64],
    upper: &[i64],
    cap: u64,
    what: &'static str,
) -> Result<Vec<Vec<i64>>> {
    let enumerator = PointEnumerator::new(matrix, rhs, lower, upper)?;
    let mut points = Vec::new();
    let mut over = false;
    enumerator.run(None, |x| {
        if points.len() as u64 >= cap {
            over = true;
            return ControlFlow::Break(());
        }
        points.push(x.to_vec());
        ControlFlow::Continue(())
    });
    if over {
        return Err(Error::CapExceeded { what, limit: cap });
    }
    Ok(points)
}
