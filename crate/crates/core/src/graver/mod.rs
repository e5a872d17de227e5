//! Graver bases: the ⊑-minimal nonzero integer vectors in `ker(A)`.
//!
//! A basis is stored as one canonical representative per antipodal pair
//! (first nonzero entry positive), sorted lexicographically. The full set is
//! the stored elements together with their negations.

mod brute;
mod completion;
mod kernel;
mod nfold;
mod verify;

pub use brute::{brute_force_graver, kernel_points_in_box};
pub use completion::{compute_graver, compute_graver_with_stats, CompletionLimits, CompletionStats};
pub use kernel::integer_kernel_basis;
pub use nfold::nfold_product;
pub use verify::{verify_graver, CheckOutcome, CheckStatus, GraverVerification, VerifyOptions};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, IntVector};

/// SHA-256 over `"{rows}x{cols}:"` followed by the row-major entries in
/// decimal, comma separated, as lowercase hex.
pub fn matrix_sha(a: &IntMatrix) -> String {
    let mut text = format!("{}x{}:", a.rows(), a.cols());
    for (i, v) in a.data().iter().enumerate() {
        if i > 0 {
            text.push(',');
        }
        text.push_str(&v.to_string());
    }
    hex(&Sha256::digest(text.as_bytes()))
}

pub(crate) fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraverBasis {
    matrix_sha: String,
    dim: usize,
    elements: Vec<IntVector>,
}

impl GraverBasis {
    /// Canonicalizes signs, sorts, and removes duplicates. Does not check
    /// minimality or kernel membership; see [`verify_graver`].
    pub fn new(matrix_sha: String, dim: usize, elements: Vec<IntVector>) -> Result<Self> {
        let mut canon = Vec::with_capacity(elements.len());
        for (k, g) in elements.into_iter().enumerate() {
            if g.len() != dim {
                return Err(Error::dim(format!("element {k} has length {}, expected {dim}", g.len())));
            }
            if g.is_zero() {
                return Err(Error::invalid(format!("element {k} is the zero vector")));
            }
            canon.push(g.canonical_sign()?);
        }
        canon.sort();
        canon.dedup();
        Ok(GraverBasis { matrix_sha, dim, elements: canon })
    }

    pub fn for_matrix(a: &IntMatrix, elements: Vec<IntVector>) -> Result<Self> {
        Self::new(matrix_sha(a), a.cols(), elements)
    }

    pub fn matrix_sha(&self) -> &str {
        &self.matrix_sha
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Canonical half, sorted.
    pub fn elements(&self) -> &[IntVector] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Every element and its negation, sorted lexicographically.
    pub fn full_set(&self) -> Vec<IntVector> {
        let mut all: Vec<IntVector> = self
            .elements
            .iter()
            .flat_map(|g| [g.clone(), g.checked_neg().expect("canonical elements negate")])
            .collect();
        all.sort();
        all
    }

    pub fn matches(&self, a: &IntMatrix) -> bool {
        self.dim == a.cols() && self.matrix_sha == matrix_sha(a)
    }

    pub fn max_abs_entry(&self) -> u64 {
        self.elements.iter().map(IntVector::max_abs).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sha_depends_on_shape() {
        let a = IntMatrix::zeros(1, 4);
        let b = IntMatrix::zeros(2, 2);
        assert_ne!(matrix_sha(&a), matrix_sha(&b));
        assert_eq!(matrix_sha(&a).len(), 64);
    }

    #[test]
    fn construction_canonicalizes() {
        let g = GraverBasis::new(
            "x".into(),
            2,
            vec![vec![-1, 1].into(), vec![1, -1].into(), vec![0, -3].into()],
        )
        .unwrap();
        assert_eq!(g.elements(), &[IntVector::from([0, 3]), IntVector::from([1, -1])]);
        assert_eq!(g.full_set().len(), 4);
        assert!(GraverBasis::new("x".into(), 2, vec![vec![0, 0].into()]).is_err());
    }
}
