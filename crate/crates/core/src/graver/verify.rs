use std::ops::ControlFlow;

use crate::graver::{kernel_points_in_box, GraverBasis};
use crate::lattice_points::PointEnumerator;
use crate::linalg::{conformal_leq_unchecked, IntMatrix, IntVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The check could not finish within its enumeration cap.
    Inconclusive,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
    /// Offending vectors: one for kernel, minimality and completeness
    /// failures (for minimality the element first, then the vector below
    /// it), two for an incomparability failure.
    pub counterexample: Vec<IntVector>,
}

impl CheckOutcome {
    fn pass(name: &'static str, detail: impl Into<String>) -> Self {
        CheckOutcome { name, status: CheckStatus::Pass, detail: detail.into(), counterexample: vec![] }
    }

    fn fail(name: &'static str, detail: impl Into<String>, counterexample: Vec<IntVector>) -> Self {
        CheckOutcome { name, status: CheckStatus::Fail, detail: detail.into(), counterexample }
    }

    fn inconclusive(name: &'static str, detail: impl Into<String>) -> Self {
        CheckOutcome { name, status: CheckStatus::Inconclusive, detail: detail.into(), counterexample: vec![] }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraverVerification {
    pub radius: i64,
    pub checks: Vec<CheckOutcome>,
}

impl GraverVerification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Cap on kernel points enumerated for the completeness check.
    pub point_cap: u64,
    /// Search-node budget per element for the minimality check.
    pub minimality_budget: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { point_cap: 5_000_000, minimality_budget: 1_000_000 }
    }
}

/// Checks a claimed Graver basis of `a`:
///
/// * `kernel`: every element is a nonzero vector of `ker(A)` of the right length;
/// * `incomparability`: no two distinct vectors of the ± set are ⊑-comparable;
/// * `minimality`: no nonzero kernel vector lies strictly ⊑-below an element;
/// * `completeness`: every nonzero kernel point with entries in
///   `[-radius, radius]` is reduced to zero by greedily subtracting elements
///   conformally below the remainder.
pub fn verify_graver(a: &IntMatrix, basis: &GraverBasis, radius: i64, opts: VerifyOptions) -> GraverVerification {
    let full = basis.full_set();
    let checks = vec![
        check_kernel(a, basis),
        check_incomparability(&full),
        check_minimality(a, basis, opts.minimality_budget),
        check_completeness(a, &full, radius, opts.point_cap),
    ];
    GraverVerification { radius, checks }
}

fn check_kernel(a: &IntMatrix, basis: &GraverBasis) -> CheckOutcome {
    const NAME: &str = "kernel";
    if basis.dim() != a.cols() {
        return CheckOutcome::fail(
            NAME,
            format!("basis dimension {} but matrix has {} columns", basis.dim(), a.cols()),
            vec![],
        );
    }
    for g in basis.elements() {
        if g.is_zero() || !a.annihilates(g) {
            return CheckOutcome::fail(NAME, format!("{g} is not a nonzero kernel vector"), vec![g.clone()]);
        }
    }
    CheckOutcome::pass(NAME, format!("{} elements in ker(A)", basis.len()))
}

fn check_incomparability(full: &[IntVector]) -> CheckOutcome {
    const NAME: &str = "incomparability";
    for (i, g) in full.iter().enumerate() {
        for (j, h) in full.iter().enumerate() {
            if i != j && g.len() == h.len() && conformal_leq_unchecked(g, h) {
                return CheckOutcome::fail(NAME, format!("{g} ⊑ {h}"), vec![g.clone(), h.clone()]);
            }
        }
    }
    CheckOutcome::pass(NAME, format!("{} vectors pairwise incomparable", full.len()))
}

fn check_minimality(a: &IntMatrix, basis: &GraverBasis, budget: u64) -> CheckOutcome {
    const NAME: &str = "minimality";
    if basis.dim() != a.cols() {
        return CheckOutcome::fail(NAME, "dimension mismatch", vec![]);
    }
    let zeros = vec![0; a.rows()];
    for g in basis.elements() {
        let lower: Vec<i64> = g.iter().map(|&v| v.min(0)).collect();
        let upper: Vec<i64> = g.iter().map(|&v| v.max(0)).collect();
        let Ok(e) = PointEnumerator::new(a, &zeros, &lower, &upper) else {
            return CheckOutcome::fail(NAME, "dimension mismatch", vec![]);
        };
        let mut below = None;
        let out = e.run(Some(budget), |y| {
            if y.iter().any(|&v| v != 0) && y != g.as_slice() {
                below = Some(IntVector::from(y));
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if let Some(y) = below {
            return CheckOutcome::fail(NAME, format!("{y} lies strictly below {g}"), vec![g.clone(), y]);
        }
        if !out.complete {
            return CheckOutcome::inconclusive(NAME, format!("search below {g} exceeded {budget} nodes"));
        }
    }
    CheckOutcome::pass(NAME, "every element is ⊑-minimal in ker(A)")
}

fn check_completeness(a: &IntMatrix, full: &[IntVector], radius: i64, cap: u64) -> CheckOutcome {
    const NAME: &str = "completeness";
    let mut points = match kernel_points_in_box(a, radius, cap) {
        Ok(p) => p,
        Err(e) => return CheckOutcome::inconclusive(NAME, e.to_string()),
    };
    // smallest counterexample first, canonical sign before its negation
    points.sort_by_cached_key(|p| {
        let norm: u64 = p.iter().map(|v| v.unsigned_abs()).sum();
        let v = IntVector::from(p.as_slice());
        (norm, !v.is_canonical(), v)
    });
    for z in &points {
        if !greedy_conformal_reduces(z, full) {
            return CheckOutcome::fail(
                NAME,
                format!("{} has no conformal decomposition", IntVector::from(z.as_slice())),
                vec![z.as_slice().into()],
            );
        }
    }
    CheckOutcome::pass(NAME, format!("{} kernel points within radius {radius} decompose", points.len()))
}

/// Greedy conformal reduction: subtract any element below the remainder as
/// many times as it stays below. Each element used is ⊑ `z`.
fn greedy_conformal_reduces(z: &[i64], full: &[IntVector]) -> bool {
    let mut r = z.to_vec();
    while r.iter().any(|&v| v != 0) {
        let Some(g) = full.iter().find(|g| g.len() == r.len() && conformal_leq_unchecked(g, &r)) else {
            return false;
        };
        let mult = g
            .iter()
            .zip(&r)
            .filter(|(a, _)| **a != 0)
            .map(|(a, b)| b / a)
            .min()
            .expect("nonzero element");
        for (x, a) in r.iter_mut().zip(g.iter()) {
            *x -= mult * a;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(a: &IntMatrix, els: &[&[i64]]) -> GraverBasis {
        GraverBasis::for_matrix(a, els.iter().map(|e| IntVector::from(*e)).collect()).unwrap()
    }

    #[test]
    fn unit_vectors_of_zero_matrix_pass() {
        let a = IntMatrix::zeros(1, 3);
        let b = basis(&a, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let rep = verify_graver(&a, &b, 4, VerifyOptions::default());
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn non_minimal_element_fails() {
        let a = IntMatrix::from_rows(&[vec![1, -1]]).unwrap();
        let b = basis(&a, &[&[2, 2]]);
        let rep = verify_graver(&a, &b, 3, VerifyOptions::default());
        assert!(!rep.passed());
        let m = rep.check("minimality").unwrap();
        assert_eq!(m.status, CheckStatus::Fail);
        assert_eq!(m.counterexample[1], IntVector::from([1, 1]));
        let c = rep.check("completeness").unwrap();
        assert_eq!(c.status, CheckStatus::Fail);
        assert_eq!(c.counterexample, vec![IntVector::from([1, 1])]);
    }

    #[test]
    fn comparable_pair_is_reported() {
        let a = IntMatrix::from_rows(&[vec![1, -1]]).unwrap();
        let b = basis(&a, &[&[1, 1], &[2, 2]]);
        let rep = verify_graver(&a, &b, 3, VerifyOptions::default());
        let inc = rep.check("incomparability").unwrap();
        assert_eq!(inc.status, CheckStatus::Fail);
        assert_eq!(inc.counterexample.len(), 2);
    }

    #[test]
    fn partition_maxmin_basis_passes() {
        let mut rows = Vec::new();
        let col = [6, -2, -4, -6];
        for (i, c) in col.iter().enumerate() {
            let mut r = vec![0; 5];
            r[i] = 1;
            r[4] = *c;
            rows.push(r);
        }
        let a = IntMatrix::from_rows(&rows).unwrap();
        let b = basis(&a, &[&[-6, 2, 4, 6, 1]]);
        assert_eq!(b.elements()[0], IntVector::from([6, -2, -4, -6, -1]));
        let rep = verify_graver(&a, &b, 6, VerifyOptions::default());
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn non_kernel_element_fails() {
        let a = IntMatrix::from_rows(&[vec![1, 1]]).unwrap();
        let b = basis(&a, &[&[1, 1]]);
        let rep = verify_graver(&a, &b, 2, VerifyOptions::default());
        assert_eq!(rep.check("kernel").unwrap().status, CheckStatus::Fail);
    }
}
