//! Separable convex piecewise-linear objectives `f(x) = Σ f_i(x_i)` where
//! each `f_i` is the maximum of finitely many affine pieces.

use crate::error::{Error, Result};
use crate::linalg::IntVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct AffinePiece {
    pub slope: i64,
    pub intercept: i64,
}

impl AffinePiece {
    fn eval(&self, t: i64) -> Result<i128> {
        Ok(self.slope as i128 * t as i128 + self.intercept as i128)
    }
}

/// A univariate convex function `max_k (slope_k t + intercept_k)`.
///
/// Pieces are canonical: strictly increasing slopes, none of them dominated
/// by the others everywhere on the integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexPiecewise {
    pieces: Vec<AffinePiece>,
}

impl ConvexPiecewise {
    pub fn new(pieces: Vec<AffinePiece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::invalid("convex function needs at least one affine piece"));
        }
        Ok(ConvexPiecewise { pieces: canonicalize(pieces) })
    }

    pub fn linear(slope: i64) -> Self {
        ConvexPiecewise { pieces: vec![AffinePiece { slope, intercept: 0 }] }
    }

    pub fn pieces(&self) -> &[AffinePiece] {
        &self.pieces
    }

    pub fn eval(&self, t: i64) -> Result<i64> {
        let mut best = i128::MIN;
        for p in &self.pieces {
            best = best.max(p.eval(t)?);
        }
        i64::try_from(best).map_err(|_| Error::Overflow("objective evaluation"))
    }

    pub(crate) fn eval_wide(&self, t: i64) -> i128 {
        self.pieces
            .iter()
            .map(|p| p.slope as i128 * t as i128 + p.intercept as i128)
            .max()
            .expect("nonempty")
    }
}

/// Sorts by slope, keeps the best intercept per slope, and drops pieces that
/// never attain the maximum. Upper-hull construction on (slope, intercept).
fn canonicalize(mut pieces: Vec<AffinePiece>) -> Vec<AffinePiece> {
    pieces.sort_by(|a, b| a.slope.cmp(&b.slope).then(b.intercept.cmp(&a.intercept)));
    pieces.dedup_by_key(|p| p.slope);
    let mut hull: Vec<AffinePiece> = Vec::with_capacity(pieces.len());
    for p in pieces {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // b is useless when a and p cross at or before the point where b
            // would overtake a.
            let lhs = (p.intercept as i128 - a.intercept as i128) * (b.slope as i128 - a.slope as i128);
            let rhs = (b.intercept as i128 - a.intercept as i128) * (p.slope as i128 - a.slope as i128);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparableConvexObjective {
    terms: Vec<ConvexPiecewise>,
}

impl SeparableConvexObjective {
    pub fn new(terms: Vec<ConvexPiecewise>) -> Self {
        SeparableConvexObjective { terms }
    }

    pub fn linear(c: &IntVector) -> Self {
        SeparableConvexObjective { terms: c.iter().map(|&s| ConvexPiecewise::linear(s)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.terms.len()
    }

    pub fn term(&self, i: usize) -> &ConvexPiecewise {
        &self.terms[i]
    }

    pub fn eval(&self, x: &[i64]) -> Result<i64> {
        if x.len() != self.terms.len() {
            return Err(Error::dim(format!(
                "point has length {}, objective has {} terms",
                x.len(),
                self.terms.len()
            )));
        }
        let mut acc: i128 = 0;
        for (f, &t) in self.terms.iter().zip(x) {
            acc = acc.checked_add(f.eval_wide(t)).ok_or(Error::Overflow("objective evaluation"))?;
        }
        i64::try_from(acc).map_err(|_| Error::Overflow("objective evaluation"))
    }
}

pub fn eval_objective(f: &SeparableConvexObjective, x: &IntVector) -> Result<i64> {
    f.eval(x)
}

/// `f_i(t) = max{lo_i t, hi_i t}`, the worst case of `c·x` over the box `[lo, hi]`.
pub fn box_objective(lo: &IntVector, hi: &IntVector) -> Result<SeparableConvexObjective> {
    if lo.len() != hi.len() {
        return Err(Error::dim(format!("box bounds have lengths {} and {}", lo.len(), hi.len())));
    }
    let terms = lo
        .iter()
        .zip(hi.iter())
        .enumerate()
        .map(|(i, (&d, &e))| {
            if d > e {
                return Err(Error::invalid(format!("box lower cost {d} exceeds upper cost {e} at index {i}")));
            }
            ConvexPiecewise::new(vec![
                AffinePiece { slope: d, intercept: 0 },
                AffinePiece { slope: e, intercept: 0 },
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SeparableConvexObjective::new(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(x: &[i64]) -> IntVector {
        x.into()
    }

    #[test]
    fn eval_examples() {
        let f = box_objective(&v(&[-1]), &v(&[2])).unwrap();
        assert_eq!(eval_objective(&f, &v(&[-1])).unwrap(), 1);
        assert_eq!(eval_objective(&f, &v(&[0])).unwrap(), 0);
        // max{2,6} + max{0,-2}
        let f = box_objective(&v(&[1, 0]), &v(&[3, 2])).unwrap();
        assert_eq!(eval_objective(&f, &v(&[2, -1])).unwrap(), 6);
        assert!(eval_objective(&f, &v(&[2])).is_err());
    }

    #[test]
    fn box_objective_examples() {
        let f = box_objective(&v(&[0]), &v(&[0])).unwrap();
        for t in -5..=5 {
            assert_eq!(f.eval(&[t]).unwrap(), 0);
        }
        let f = box_objective(&v(&[-2]), &v(&[5])).unwrap();
        assert_eq!(f.eval(&[3]).unwrap(), 15);
        assert_eq!(f.eval(&[-3]).unwrap(), 6);
        let f = box_objective(&v(&[1]), &v(&[1])).unwrap();
        assert_eq!(f.term(0).pieces().len(), 1);
        for t in -5..=5 {
            assert_eq!(f.eval(&[t]).unwrap(), t);
        }
        assert!(box_objective(&v(&[1]), &v(&[0])).is_err());
    }

    #[test]
    fn canonical_pieces_have_increasing_slopes() {
        let f = ConvexPiecewise::new(vec![
            AffinePiece { slope: 1, intercept: 0 },
            AffinePiece { slope: 0, intercept: -10 }, // dominated by the hull
            AffinePiece { slope: -1, intercept: 0 },
            AffinePiece { slope: 1, intercept: -3 },
            AffinePiece { slope: 3, intercept: -4 },
        ])
        .unwrap();
        let slopes: Vec<_> = f.pieces().iter().map(|p| p.slope).collect();
        assert_eq!(slopes, vec![-1, 1, 3]);
        for t in -10..=10 {
            let direct = [t, -10, -t, t - 3, 3 * t - 4].into_iter().max().unwrap();
            assert_eq!(f.eval(t).unwrap(), direct);
        }
    }

    #[test]
    fn box_objective_equals_vertex_maximum() {
        // exhaustive over all x in [-2,2]^4 for a fixed box
        let lo = v(&[-3, 0, 2, -1]);
        let hi = v(&[1, 4, 2, 0]);
        let f = box_objective(&lo, &hi).unwrap();
        let n = 4;
        let mut x = vec![-2i64; n];
        loop {
            let mut best = i64::MIN;
            for mask in 0..(1 << n) {
                let val: i64 = (0..n)
                    .map(|i| if mask >> i & 1 == 1 { hi[i] } else { lo[i] } * x[i])
                    .sum();
                best = best.max(val);
            }
            assert_eq!(f.eval(&x).unwrap(), best);
            let mut i = 0;
            while i < n && x[i] == 2 {
                x[i] = -2;
                i += 1;
            }
            if i == n {
                break;
            }
            x[i] += 1;
        }
    }

    proptest! {
        #[test]
        fn box_objective_is_vertex_max(
            lo in proptest::collection::vec(-4i64..=4, 3),
            w in proptest::collection::vec(0i64..=4, 3),
            x in proptest::collection::vec(-5i64..=5, 3),
        ) {
            let hi: Vec<i64> = lo.iter().zip(&w).map(|(a, b)| a + b).collect();
            let f = box_objective(&v(&lo), &v(&hi)).unwrap();
            let vertex_max = (0..8u32)
                .map(|m| (0..3).map(|i| if m >> i & 1 == 1 { hi[i] * x[i] } else { lo[i] * x[i] }).sum::<i64>())
                .max()
                .unwrap();
            prop_assert_eq!(f.eval(&x).unwrap(), vertex_max);
        }

        #[test]
        fn midpoint_convex(
            slopes in proptest::collection::vec((-5i64..=5, -9i64..=9), 1..5),
            t in -20i64..=20,
            d in 1i64..=6,
        ) {
            let pieces = slopes.into_iter().map(|(slope, intercept)| AffinePiece { slope, intercept }).collect();
            let f = ConvexPiecewise::new(pieces).unwrap();
            prop_assert!(f.eval(t - d).unwrap() + f.eval(t + d).unwrap() >= 2 * f.eval(t).unwrap());
        }
    }
}
