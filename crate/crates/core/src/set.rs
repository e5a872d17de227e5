use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, IntVector};

/// The bounded feasible set `{x ∈ Zⁿ : Ax = b, l <= x <= u}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardFormSet {
    matrix: IntMatrix,
    rhs: IntVector,
    lower: IntVector,
    upper: IntVector,
}

impl StandardFormSet {
    pub fn new(matrix: IntMatrix, rhs: IntVector, lower: IntVector, upper: IntVector) -> Result<Self> {
        let n = matrix.cols();
        if rhs.len() != matrix.rows() {
            return Err(Error::dim(format!(
                "rhs has length {}, matrix has {} rows",
                rhs.len(),
                matrix.rows()
            )));
        }
        if lower.len() != n || upper.len() != n {
            return Err(Error::dim(format!(
                "bounds have lengths {} and {}, matrix has {n} columns",
                lower.len(),
                upper.len()
            )));
        }
        if let Some(i) = (0..n).find(|&i| lower[i] > upper[i]) {
            return Err(Error::invalid(format!(
                "lower bound {} exceeds upper bound {} at index {i}",
                lower[i], upper[i]
            )));
        }
        Ok(StandardFormSet { matrix, rhs, lower, upper })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn rhs(&self) -> &IntVector {
        &self.rhs
    }

    pub fn lower(&self) -> &IntVector {
        &self.lower
    }

    pub fn upper(&self) -> &IntVector {
        &self.upper
    }

    pub fn dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn within_bounds(&self, x: &[i64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lower.iter().zip(self.upper.iter()))
                .all(|(v, (l, u))| l <= v && v <= u)
    }

    pub fn membership(&self, x: &IntVector) -> Result<bool> {
        if x.len() != self.dim() {
            return Err(Error::dim(format!(
                "point has length {}, set lives in dimension {}",
                x.len(),
                self.dim()
            )));
        }
        if !self.within_bounds(x) {
            return Ok(false);
        }
        // An overflowing product cannot equal a representable rhs.
        Ok(self.matrix.mul_vec(x).is_ok_and(|ax| ax == self.rhs))
    }

    /// Number of lattice points in the bounding box, saturating.
    pub fn box_volume(&self) -> u128 {
        self.lower
            .iter()
            .zip(self.upper.iter())
            .fold(1u128, |acc, (l, u)| acc.saturating_mul((*u as i128 - *l as i128 + 1) as u128))
    }
}
