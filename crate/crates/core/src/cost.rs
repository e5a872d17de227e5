use crate::error::{Error, Result};
use crate::linalg::IntVector;

/// The uncertainty set of cost vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CostModel {
    /// An explicit nonempty list of cost vectors.
    List(Vec<IntVector>),
    /// All integer vectors `c` with `lo <= c <= hi`.
    Box { lo: IntVector, hi: IntVector },
}

impl CostModel {
    pub fn list(costs: Vec<IntVector>) -> Result<Self> {
        let Some(first) = costs.first() else {
            return Err(Error::invalid("cost list is empty"));
        };
        let n = first.len();
        if let Some(k) = costs.iter().position(|c| c.len() != n) {
            return Err(Error::dim(format!(
                "cost vector {k} has length {}, expected {n}",
                costs[k].len()
            )));
        }
        Ok(CostModel::List(costs))
    }

    pub fn boxed(lo: IntVector, hi: IntVector) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::dim(format!(
                "box bounds have lengths {} and {}",
                lo.len(),
                hi.len()
            )));
        }
        if let Some(i) = (0..lo.len()).find(|&i| lo[i] > hi[i]) {
            return Err(Error::invalid(format!(
                "box lower cost {} exceeds upper cost {} at index {i}",
                lo[i], hi[i]
            )));
        }
        Ok(CostModel::Box { lo, hi })
    }

    pub fn dim(&self) -> usize {
        match self {
            CostModel::List(cs) => cs[0].len(),
            CostModel::Box { lo, .. } => lo.len(),
        }
    }

    pub fn contains(&self, c: &IntVector) -> bool {
        match self {
            CostModel::List(cs) => cs.contains(c),
            CostModel::Box { lo, hi } => {
                c.len() == lo.len() && (0..c.len()).all(|i| lo[i] <= c[i] && c[i] <= hi[i])
            }
        }
    }

    /// `-C`: each list vector negated, or the box `[-hi, -lo]`.
    pub fn negated(&self) -> Result<CostModel> {
        Ok(match self {
            CostModel::List(cs) => {
                CostModel::List(cs.iter().map(IntVector::checked_neg).collect::<Result<_>>()?)
            }
            CostModel::Box { lo, hi } => CostModel::Box { lo: hi.checked_neg()?, hi: lo.checked_neg()? },
        })
    }

    /// The worst-case cost `max_{c ∈ C} c·x` together with an attaining cost.
    ///
    /// For a box the maximizer picks `hi_i` where `x_i >= 0` and `lo_i` where
    /// `x_i < 0`; list ties resolve to the first vector.
    pub fn worst_case(&self, x: &IntVector) -> Result<(i64, IntVector)> {
        if x.len() != self.dim() {
            return Err(Error::dim(format!(
                "point has length {}, costs have length {}",
                x.len(),
                self.dim()
            )));
        }
        match self {
            CostModel::List(cs) => {
                let mut best: Option<(i64, &IntVector)> = None;
                for c in cs {
                    let v = c.dot(x)?;
                    if best.is_none_or(|(b, _)| v > b) {
                        best = Some((v, c));
                    }
                }
                let (v, c) = best.expect("nonempty list");
                Ok((v, c.clone()))
            }
            CostModel::Box { lo, hi } => {
                let c = box_argmax(lo, hi, x);
                Ok((c.dot(x)?, c))
            }
        }
    }

    /// Number of integer cost vectors in the model, saturating.
    pub fn cardinality(&self) -> u128 {
        match self {
            CostModel::List(cs) => cs.len() as u128,
            CostModel::Box { lo, hi } => lo.iter().zip(hi.iter()).fold(1u128, |acc, (l, h)| {
                acc.saturating_mul((*h as i128 - *l as i128 + 1) as u128)
            }),
        }
    }
}

pub(crate) fn box_argmax(lo: &IntVector, hi: &IntVector, x: &IntVector) -> IntVector {
    (0..x.len())
        .map(|i| if x[i] < 0 { lo[i] } else { hi[i] })
        .collect::<Vec<_>>()
        .into()
}
