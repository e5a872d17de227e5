use crate::cost::CostModel;
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, IntVector};
use crate::set::StandardFormSet;

use super::{Instance, Provenance, Rational};

fn check_weights(a: &[i64]) -> Result<i64> {
    if a.is_empty() {
        return Err(Error::invalid("partition weights are empty"));
    }
    if let Some(i) = a.iter().position(|&v| v < 1) {
        return Err(Error::invalid(format!("partition weight a[{i}] = {} is not positive", a[i])));
    }
    a.iter().try_fold(0i64, |s, &v| s.checked_add(v)).ok_or(Error::Overflow("partition weight sum"))
}

fn provenance(name: &str, a: &[i64]) -> Provenance {
    Provenance::new(name).param("a", a.to_vec())
}

/// Subset-sum check by dynamic programming over reachable sums.
pub fn has_equal_partition(a: &[i64]) -> bool {
    let total: i64 = a.iter().sum();
    if total % 2 != 0 {
        return false;
    }
    let half = (total / 2) as usize;
    let mut reach = vec![false; half + 1];
    reach[0] = true;
    for &v in a {
        let v = v as usize;
        for s in (v..=half).rev() {
            reach[s] |= reach[s - v];
        }
    }
    reach[half]
}

/// `X = {x ∈ Z^{n+1} : x_0 = 1, x_i ∈ {0,1}}` under the zero matrix, with
/// costs `(0, a)` and `(a_0, -a)`. A point `x` encodes the subset
/// `I(x) = {i >= 1 : x_i = 1}`; its worst-case cost is
/// `max(Σ_I a_i, a_0 - Σ_I a_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionMinMaxInstance {
    pub a: Vec<i64>,
    pub a0: i64,
    /// `a_0 / 2`: the min-max value equals it exactly when `a` has an equal
    /// partition.
    pub threshold: Rational,
    pub instance: Instance,
}

pub fn gen_partition_minmax(a: &[i64]) -> Result<PartitionMinMaxInstance> {
    let a0 = check_weights(a)?;
    let n = a.len();
    let mut lower = vec![0; n + 1];
    lower[0] = 1;
    let set = StandardFormSet::new(IntMatrix::zeros(1, n + 1), vec![0].into(), lower.into(), vec![1; n + 1].into())?;
    let mut c1 = vec![0];
    c1.extend_from_slice(a);
    let mut c2 = vec![a0];
    c2.extend(a.iter().map(|v| -v));
    let mut instance = Instance::new(set, CostModel::list(vec![c1.into(), c2.into()])?)?;
    // sorted canonical half: the last unit vector is lexicographically smallest
    instance.known_graver = Some((0..=n).rev().map(|i| IntVector::unit(n + 1, i)).collect());
    let mut hint = vec![0; n + 1];
    hint[0] = 1;
    instance.feasible_hint = Some(hint.into());
    instance.provenance = Some(provenance("partition-minmax", a));
    Ok(PartitionMinMaxInstance { a: a.to_vec(), a0, threshold: Rational::new(a0, 2)?, instance })
}

/// `A = (I_{n+1} | (a_0; -2a))`, `b = (0; -a)`, `|x_i| <= a_0` for `i <= n`,
/// `x_{n+1} ∈ {0,1}`. The set is exactly `{(0,-a,0), (-a_0,a,1)}` and the
/// Graver basis of `A` is `±(-a_0, 2a, 1)`. Costs range over the box
/// `c_0 = 1`, `c_i ∈ {0,1}`, `c_{n+1} = 0`; a cost `c` encodes
/// `I = {i : c_i = 1}` and `min_X c·x = -max(Σ_I a_i, a_0 - Σ_I a_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionMaxMinInstance {
    pub a: Vec<i64>,
    pub a0: i64,
    /// `-a_0 / 2`.
    pub threshold: Rational,
    /// The two feasible points `(0,-a,0)` and `(-a_0,a,1)`.
    pub points: [IntVector; 2],
    pub instance: Instance,
}

pub fn gen_partition_maxmin(a: &[i64]) -> Result<PartitionMaxMinInstance> {
    let a0 = check_weights(a)?;
    let n = a.len();
    let dim = n + 2;
    let doubled = a
        .iter()
        .map(|v| v.checked_mul(2).ok_or(Error::Overflow("partition weights")))
        .collect::<Result<Vec<_>>>()?;
    let mut last_col = vec![a0];
    last_col.extend(doubled.iter().map(|v| -v));
    let rows: Vec<Vec<i64>> = (0..=n)
        .map(|i| {
            let mut r = vec![0; dim];
            r[i] = 1;
            r[n + 1] = last_col[i];
            r
        })
        .collect();
    let mut b = vec![0];
    b.extend(a.iter().map(|v| -v));
    let mut lower = vec![-a0; dim];
    let mut upper = vec![a0; dim];
    lower[n + 1] = 0;
    upper[n + 1] = 1;
    let set = StandardFormSet::new(IntMatrix::from_rows(&rows)?, b.into(), lower.into(), upper.into())?;

    let mut d = vec![0; dim];
    let mut e = vec![1; dim];
    d[0] = 1;
    e[n + 1] = 0;
    let mut instance = Instance::new(set, CostModel::boxed(d.into(), e.into())?)?;

    let mut g = vec![-a0];
    g.extend_from_slice(&doubled);
    g.push(1);
    instance.known_graver = Some(vec![IntVector::from(g).canonical_sign()?]);

    let mut p0 = vec![0];
    p0.extend(a.iter().map(|v| -v));
    p0.push(0);
    let mut p1 = vec![-a0];
    p1.extend_from_slice(a);
    p1.push(1);
    instance.feasible_hint = Some(p0.clone().into());
    instance.provenance = Some(provenance("partition-maxmin", a));
    Ok(PartitionMaxMinInstance {
        a: a.to_vec(),
        a0,
        threshold: Rational::new(-a0, 2)?,
        points: [p0.into(), p1.into()],
        instance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graver::compute_graver;
    use crate::robust::{max_min_box_exact, min_max_list_exact, RobustCaps, StartPoint};
    use crate::solver::enumerate_feasible;
    use crate::GraverBasis;

    fn subset_oracle(a: &[i64]) -> bool {
        let total: i64 = a.iter().sum();
        (0u32..1 << a.len()).any(|m| 2 * (0..a.len()).filter(|i| m >> i & 1 == 1).map(|i| a[i]).sum::<i64>() == total)
    }

    #[test]
    fn partition_dp_matches_subsets() {
        for a in [vec![1, 2, 3], vec![2, 3, 4], vec![1], vec![5, 5], vec![1, 1, 1], vec![3, 1, 1, 2, 2, 1]] {
            assert_eq!(has_equal_partition(&a), subset_oracle(&a), "{a:?}");
        }
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(gen_partition_minmax(&[1, 0]).is_err());
        assert!(gen_partition_maxmin(&[-1]).is_err());
        assert!(gen_partition_minmax(&[]).is_err());
    }

    #[test]
    fn minmax_examples() {
        let p = gen_partition_minmax(&[1, 2, 3]).unwrap();
        assert_eq!(enumerate_feasible(&p.instance.set, 100).unwrap().len(), 8);
        let CostModel::List(cs) = &p.instance.costs else { panic!() };
        assert_eq!(cs[0], IntVector::from([0, 1, 2, 3]));
        assert_eq!(cs[1], IntVector::from([6, -1, -2, -3]));
        for (a, v) in [(vec![1, 2, 3], 3), (vec![1], 1), (vec![5, 5], 5), (vec![2, 3, 4], 5)] {
            let p = gen_partition_minmax(&a).unwrap();
            let CostModel::List(cs) = &p.instance.costs else { panic!() };
            let r = min_max_list_exact(&p.instance.set, cs, 1000).unwrap();
            assert_eq!(r.value, v, "{a:?}");
            assert_eq!(p.threshold.equals_int(r.value), has_equal_partition(&a));
        }
    }

    #[test]
    fn maxmin_examples() {
        let p = gen_partition_maxmin(&[1, 2, 3]).unwrap();
        assert_eq!((p.instance.set.matrix().rows(), p.instance.set.matrix().cols()), (4, 5));
        assert_eq!(p.instance.known_graver.as_deref().unwrap(), &[IntVector::from([6, -2, -4, -6, -1])]);
        for (a, v) in [(vec![1, 2, 3], -3), (vec![1, 1, 1], -2), (vec![5, 5], -5), (vec![2, 3, 4], -5)] {
            let p = gen_partition_maxmin(&a).unwrap();
            let CostModel::Box { lo, hi } = &p.instance.costs else { panic!() };
            let g = GraverBasis::for_matrix(p.instance.set.matrix(), p.instance.known_graver.clone().unwrap()).unwrap();
            let start = StartPoint::Hint(p.instance.feasible_hint.clone().unwrap());
            let r = max_min_box_exact(&p.instance.set, &g, lo, hi, &start, &RobustCaps::default()).unwrap();
            assert_eq!(r.value, v, "{a:?}");
            assert_eq!(p.threshold.equals_int(r.value), has_equal_partition(&a));
        }
    }

    #[test]
    fn maxmin_set_and_basis() {
        for a in [vec![1, 2, 3], vec![4], vec![2, 2, 1, 3]] {
            let p = gen_partition_maxmin(&a).unwrap();
            let mut pts = enumerate_feasible(&p.instance.set, 1_000_000).unwrap();
            pts.sort();
            let mut expect = p.points.to_vec();
            expect.sort();
            assert_eq!(pts, expect);
            let g = compute_graver(p.instance.set.matrix(), Default::default()).unwrap();
            assert_eq!(g.elements(), p.instance.known_graver.as_deref().unwrap());
        }
    }

    #[test]
    fn minmax_basis_is_units() {
        let p = gen_partition_minmax(&[3, 1, 2]).unwrap();
        let g = compute_graver(p.instance.set.matrix(), Default::default()).unwrap();
        assert_eq!(g.elements(), p.instance.known_graver.as_deref().unwrap());
    }
}
