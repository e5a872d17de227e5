//! Instance families: the two PARTITION reductions, multicommodity flow with a
//! slack commodity, three-dimensional transportation, and seeded random
//! instances.

mod mcf;
mod partition;
mod random;
mod transport;

pub use mcf::{build_mcf, McfData, McfInstance};
pub use partition::{gen_partition_maxmin, gen_partition_minmax, has_equal_partition, PartitionMaxMinInstance, PartitionMinMaxInstance};
pub use random::{gen_random, RandomCosts, RandomParams};
pub use transport::{build_transport3, Transport3Data, Transport3Instance};

use std::collections::BTreeMap;
use std::fmt;

use crate::cost::CostModel;
use crate::error::{Error, Result};
use crate::graver::nfold_product;
use crate::linalg::{IntMatrix, IntVector};
use crate::set::StandardFormSet;

/// Where an instance came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub generator: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn new(generator: &str) -> Self {
        Provenance { generator: generator.to_string(), params: BTreeMap::new(), seed: None }
    }

    pub fn param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }
}

/// A feasible set with its cost model and optional hints.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub set: StandardFormSet,
    pub costs: CostModel,
    /// Canonical half of a Graver basis of `set.matrix()`, when known.
    pub known_graver: Option<Vec<IntVector>>,
    pub feasible_hint: Option<IntVector>,
    pub provenance: Option<Provenance>,
}

impl Instance {
    pub fn new(set: StandardFormSet, costs: CostModel) -> Result<Self> {
        if costs.dim() != set.dim() {
            return Err(Error::dim(format!("costs have length {}, set dimension is {}", costs.dim(), set.dim())));
        }
        Ok(Instance { set, costs, known_graver: None, feasible_hint: None, provenance: None })
    }
}

/// An exact fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    pub num: i64,
    pub den: i64,
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den <= 0 {
            return Err(Error::invalid("denominator must be positive"));
        }
        Ok(Rational { num, den })
    }

    pub fn equals_int(&self, v: i64) -> bool {
        v as i128 * self.den as i128 == self.num as i128
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// The bimatrix `(top; bottom)`, the number of bricks, and the permutations
/// that bring a set's matrix into n-fold form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NfoldLayout {
    pub top: IntMatrix,
    pub bottom: IntMatrix,
    pub n: usize,
    /// Row `i` of the n-fold product is row `row_perm[i]` of the set's matrix.
    pub row_perm: Vec<usize>,
    /// Column `i` of the n-fold product is column `col_perm[i]`.
    pub col_perm: Vec<usize>,
}

/// Whether permuting the rows and columns of `set.matrix()` yields
/// `nfold_product(top, bottom, n)` exactly.
pub fn check_nfold_structure(
    set: &StandardFormSet,
    top: &IntMatrix,
    bottom: &IntMatrix,
    n: usize,
    row_perm: &[usize],
    col_perm: &[usize],
) -> Result<bool> {
    let product = nfold_product(top, bottom, n)?;
    let a = set.matrix();
    if (a.rows(), a.cols()) != (product.rows(), product.cols()) {
        return Err(Error::dim(format!(
            "matrix is {}x{}, the n-fold product is {}x{}",
            a.rows(),
            a.cols(),
            product.rows(),
            product.cols()
        )));
    }
    if row_perm.len() != a.rows() || col_perm.len() != a.cols() {
        return Err(Error::dim(format!(
            "permutations have lengths {} and {}, matrix is {}x{}",
            row_perm.len(),
            col_perm.len(),
            a.rows(),
            a.cols()
        )));
    }
    Ok(a.permute_rows(row_perm)?.permute_cols(col_perm)? == product)
}

impl NfoldLayout {
    pub fn check(&self, set: &StandardFormSet) -> Result<bool> {
        check_nfold_structure(set, &self.top, &self.bottom, self.n, &self.row_perm, &self.col_perm)
    }
}

pub(crate) fn ones(len: usize, pick: impl Fn(usize) -> bool) -> Vec<i64> {
    (0..len).map(|c| i64::from(pick(c))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nfold_output_passes_identity() {
        let top = IntMatrix::from_rows(&[vec![1, 1]]).unwrap();
        let bottom = IntMatrix::from_rows(&[vec![1, -1]]).unwrap();
        let a = nfold_product(&top, &bottom, 3).unwrap();
        let set = StandardFormSet::new(a, IntVector::zeros(4), IntVector::zeros(6), vec![1; 6].into()).unwrap();
        let id_r: Vec<usize> = (0..4).collect();
        let id_c: Vec<usize> = (0..6).collect();
        assert!(check_nfold_structure(&set, &top, &bottom, 3, &id_r, &id_c).unwrap());
        let swapped = [1, 0, 2, 3];
        assert!(!check_nfold_structure(&set, &top, &bottom, 3, &swapped, &id_c).unwrap());
        assert!(check_nfold_structure(&set, &top, &bottom, 2, &id_r, &id_c).is_err());
    }

    #[test]
    fn rational_compare() {
        let half = Rational::new(7, 2).unwrap();
        assert!(!half.equals_int(3) && !half.equals_int(4));
        assert!(Rational::new(6, 2).unwrap().equals_int(3));
        assert_eq!(half.to_string(), "7/2");
        assert!(Rational::new(1, 0).is_err());
    }
}
