//! Graver-best augmentation for separable convex objectives.
//!
//! At a feasible point `x`, every direction `g` of the ± Graver set is tried
//! with its best step `λ* ∈ [1, λ_max(g, x)]`; the pair with the largest
//! decrease is applied. When no pair decreases the objective, `x` is optimal:
//! any improving feasible move decomposes conformally into Graver steps, and
//! for separable convex `f` one of those steps must itself improve.

use crate::error::{Error, Result};
use crate::graver::GraverBasis;
use crate::linalg::IntVector;
use crate::objective::SeparableConvexObjective;
use crate::set::StandardFormSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveCaps {
    pub max_iterations: u64,
}

impl Default for SolveCaps {
    fn default() -> Self {
        SolveCaps { max_iterations: 1_000_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// No improving Graver step exists at the final point.
    Optimal,
    /// The iteration cap was reached; the final point is not certified.
    Cap,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::Optimal => "optimal",
            Termination::Cap => "cap",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentationStep {
    pub direction: IntVector,
    pub step: i64,
    /// Objective value after the step.
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentationTrace {
    pub initial_point: IntVector,
    pub initial_value: i64,
    pub steps: Vec<AugmentationStep>,
    pub final_point: IntVector,
    pub final_value: i64,
    pub termination: Termination,
}

impl AugmentationTrace {
    /// Points visited, starting with the initial point.
    pub fn points(&self) -> Result<Vec<IntVector>> {
        let mut pts = vec![self.initial_point.clone()];
        for s in &self.steps {
            let next = pts.last().expect("nonempty").checked_axpy(s.step, &s.direction)?;
            pts.push(next);
        }
        Ok(pts)
    }
}

/// Largest `λ >= 0` with `l <= x + λg <= u`.
pub fn max_step(set: &StandardFormSet, x: &[i64], g: &[i64]) -> i64 {
    let mut best = i128::MAX;
    for i in 0..g.len() {
        let gi = g[i] as i128;
        let slack = if gi > 0 {
            (set.upper()[i] as i128 - x[i] as i128) / gi
        } else if gi < 0 {
            (x[i] as i128 - set.lower()[i] as i128) / -gi
        } else {
            continue;
        };
        best = best.min(slack);
    }
    if best == i128::MAX {
        return 0;
    }
    best.clamp(0, i64::MAX as i128) as i64
}

/// `f(x + λg) - f(x)`, evaluated over the support of `g` only.
fn delta(f: &SeparableConvexObjective, x: &[i64], g: &[i64], support: &[usize], lambda: i64) -> i128 {
    support
        .iter()
        .map(|&i| {
            let t = x[i] as i128 + lambda as i128 * g[i] as i128;
            let t = i64::try_from(t).expect("step stays within bounds");
            f.term(i).eval_wide(t) - f.term(i).eval_wide(x[i])
        })
        .sum()
}

/// Smallest minimizer of the convex `λ ↦ delta(λ)` over `[1, hi]`.
///
/// Binary search for the first `λ` whose forward difference is
/// nonnegative; on a plateau this lands on its left end.
fn best_step(f: &SeparableConvexObjective, x: &[i64], g: &[i64], support: &[usize], hi: i64) -> (i64, i128) {
    let (mut lo, mut up) = (1i64, hi);
    while lo < up {
        let mid = lo + (up - lo) / 2;
        let here = delta(f, x, g, support, mid);
        let next = delta(f, x, g, support, mid + 1);
        if next - here >= 0 {
            up = mid;
        } else {
            lo = mid + 1;
        }
    }
    (lo, delta(f, x, g, support, lo))
}

fn check_inputs(set: &StandardFormSet, basis: &GraverBasis, f: &SeparableConvexObjective, x0: &IntVector) -> Result<()> {
    let n = set.dim();
    if f.dim() != n || basis.dim() != n || x0.len() != n {
        return Err(Error::dim(format!(
            "set dimension {n}, objective {}, basis {}, start point {}",
            f.dim(),
            basis.dim(),
            x0.len()
        )));
    }
    if !basis.matches(set.matrix()) {
        return Err(Error::invalid("graver basis was computed for a different matrix"));
    }
    if !set.membership(x0)? {
        return Err(Error::invalid(format!("start point {x0} is not feasible")));
    }
    Ok(())
}

pub fn minimize_separable_convex(
    set: &StandardFormSet,
    basis: &GraverBasis,
    f: &SeparableConvexObjective,
    x0: &IntVector,
    caps: SolveCaps,
) -> Result<AugmentationTrace> {
    check_inputs(set, basis, f, x0)?;
    let directions = basis.full_set();
    let supports: Vec<Vec<usize>> = directions
        .iter()
        .map(|g| (0..g.len()).filter(|&i| g[i] != 0).collect())
        .collect();

    let mut x = x0.clone();
    let mut value = f.eval(&x)?;
    let initial_value = value;
    let mut steps = Vec::new();
    let mut termination = Termination::Optimal;

    loop {
        // (improvement, direction index, λ); directions are sorted, so the
        // first strict maximum is the lexicographically smallest.
        let mut best: Option<(i128, usize, i64)> = None;
        for (k, g) in directions.iter().enumerate() {
            let hi = max_step(set, &x, g);
            if hi == 0 {
                continue;
            }
            let (lambda, d) = best_step(f, &x, g, &supports[k], hi);
            if d < 0 && best.is_none_or(|(imp, _, _)| -d > imp) {
                best = Some((-d, k, lambda));
            }
        }
        let Some((_, k, lambda)) = best else {
            break;
        };
        if steps.len() as u64 >= caps.max_iterations {
            termination = Termination::Cap;
            break;
        }
        x = x.checked_axpy(lambda, &directions[k])?;
        value = f.eval(&x)?;
        steps.push(AugmentationStep { direction: directions[k].clone(), step: lambda, value });
    }

    Ok(AugmentationTrace {
        initial_point: x0.clone(),
        initial_value,
        steps,
        final_point: x,
        final_value: value,
        termination,
    })
}

pub fn minimize_linear(
    set: &StandardFormSet,
    basis: &GraverBasis,
    c: &IntVector,
    x0: &IntVector,
    caps: SolveCaps,
) -> Result<AugmentationTrace> {
    minimize_separable_convex(set, basis, &SeparableConvexObjective::linear(c), x0, caps)
}

/// Searches every direction and every step length in `[1, λ_max]` for an
/// improving move from `x`. `None` certifies optimality of `x` for `f` when
/// `basis` is the Graver basis of the set's matrix.
pub fn improving_step(
    set: &StandardFormSet,
    basis: &GraverBasis,
    f: &SeparableConvexObjective,
    x: &IntVector,
    step_cap: i64,
) -> Result<Option<(IntVector, i64)>> {
    check_inputs(set, basis, f, x)?;
    let base = f.eval(x)?;
    for g in basis.full_set() {
        let hi = max_step(set, x, &g).min(step_cap);
        for lambda in 1..=hi {
            let y = x.checked_axpy(lambda, &g)?;
            if f.eval(&y)? < base {
                return Ok(Some((g, lambda)));
            }
        }
    }
    Ok(None)
}
