use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::lattice_points::{collect_points, PointEnumerator};
use crate::linalg::IntVector;
use crate::set::StandardFormSet;

/// Every point of `set`, in depth-first order. More than `cap` points is an
/// error.
pub fn enumerate_feasible(set: &StandardFormSet, cap: u64) -> Result<Vec<IntVector>> {
    if cap == 0 {
        return Err(Error::invalid("enumeration cap must be positive"));
    }
    Ok(collect_points(set.matrix(), set.rhs(), set.lower(), set.upper(), cap, "feasible points")?
        .into_iter()
        .map(IntVector::from)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(IntVector),
    /// The search completed without finding a point.
    Infeasible,
}

/// Returns `hint` when it lies in `set`, otherwise the first point of the
/// depth-first search. `node_budget` bounds the search; running out before
/// any point is found is [`Error::CapExceeded`], distinct from a proof of
/// infeasibility.
pub fn find_feasible(set: &StandardFormSet, hint: Option<&IntVector>, node_budget: u64) -> Result<Feasibility> {
    if let Some(h) = hint {
        if set.membership(h)? {
            return Ok(Feasibility::Feasible(h.clone()));
        }
    }
    let e = PointEnumerator::new(set.matrix(), set.rhs(), set.lower(), set.upper())?;
    let mut found = None;
    let out = e.run(Some(node_budget), |x| {
        found = Some(IntVector::from(x));
        ControlFlow::Break(())
    });
    match found {
        Some(x) => Ok(Feasibility::Feasible(x)),
        None if out.complete => Ok(Feasibility::Infeasible),
        None => Err(Error::CapExceeded { what: "feasibility search nodes", limit: node_budget }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;

    fn partition_minmax_set(n: usize) -> StandardFormSet {
        let mut lower = vec![0; n + 1];
        lower[0] = 1;
        StandardFormSet::new(IntMatrix::zeros(1, n + 1), vec![0].into(), lower.into(), vec![1; n + 1].into())
            .unwrap()
    }

    fn partition_maxmin_set() -> StandardFormSet {
        let col = [6, -2, -4, -6];
        let rows: Vec<Vec<i64>> = (0..4)
            .map(|i| {
                let mut r = vec![0; 5];
                r[i] = 1;
                r[4] = col[i];
                r
            })
            .collect();
        StandardFormSet::new(
            IntMatrix::from_rows(&rows).unwrap(),
            vec![0, -1, -2, -3].into(),
            vec![-6, -6, -6, -6, 0].into(),
            vec![6, 6, 6, 6, 1].into(),
        )
        .unwrap()
    }

    fn contradictory() -> StandardFormSet {
        StandardFormSet::new(IntMatrix::zeros(1, 2), vec![1].into(), vec![0, 0].into(), vec![3, 3].into()).unwrap()
    }

    #[test]
    fn enumerate_examples() {
        let mut pts = enumerate_feasible(&partition_maxmin_set(), 100).unwrap();
        pts.sort();
        assert_eq!(pts, vec![IntVector::from([-6, 1, 2, 3, 1]), IntVector::from([0, -1, -2, -3, 0])]);
        assert!(enumerate_feasible(&contradictory(), 100).unwrap().is_empty());
        assert_eq!(enumerate_feasible(&partition_minmax_set(2), 100).unwrap().len(), 4);
        assert!(matches!(
            enumerate_feasible(&partition_minmax_set(3), 7),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn find_feasible_examples() {
        let set = partition_maxmin_set();
        let hint = IntVector::from([-6, 1, 2, 3, 1]);
        assert_eq!(find_feasible(&set, Some(&hint), 10).unwrap(), Feasibility::Feasible(hint));
        assert_eq!(
            find_feasible(&partition_minmax_set(3), None, 100).unwrap(),
            Feasibility::Feasible(IntVector::from([1, 0, 0, 0]))
        );
        assert_eq!(find_feasible(&contradictory(), None, 100).unwrap(), Feasibility::Infeasible);
    }

    #[test]
    fn exhausted_budget_is_not_infeasibility() {
        // 2x1 + 2x2 = 5 has no solution, but the search only learns that
        // after trying every admissible x1.
        let set = StandardFormSet::new(
            IntMatrix::from_rows(&[vec![2, 2, 0]]).unwrap(),
            vec![5].into(),
            vec![0, 0, 0].into(),
            vec![10, 10, 10].into(),
        )
        .unwrap();
        assert!(matches!(find_feasible(&set, None, 2), Err(Error::CapExceeded { .. })));
        assert_eq!(find_feasible(&set, None, 1_000_000).unwrap(), Feasibility::Infeasible);
    }
}
