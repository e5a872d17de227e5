//! Three-dimensional transportation with line sums
//! `Σ_i x_{i,j,k} = u_{j,k}`, `Σ_j x_{i,j,k} = v_{i,k}`, `Σ_k x_{i,j,k} = w_{i,j}`.
//!
//! Variables are ordered `k`-major: index `k·l·m + i·m + j`. Rows are grouped
//! by family: `u` rows `(j,k)` at `j·n + k`, `v` rows `(i,k)` at `mn + i·n + k`,
//! `w` rows `(i,j)` at `mn + ln + i·m + j`. Raw costs use the array order
//! `(i·m + j)·n + k`.
//!
//! The matrix is the `n`-fold product over `k` of `A1 = I_{lm}` (the `w`
//! rows) over `A2`, whose first `m` rows sum over `i` and last `l` rows sum
//! over `j`.

use crate::cost::CostModel;
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, IntVector};
use crate::set::StandardFormSet;

use super::{ones, Instance, NfoldLayout, Provenance};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transport3Data {
    /// `u[j][k]`.
    pub u: Vec<Vec<i64>>,
    /// `v[i][k]`.
    pub v: Vec<Vec<i64>>,
    /// `w[i][j]`.
    pub w: Vec<Vec<i64>>,
    /// Costs over the `l·m·n` array entries, index `(i·m + j)·n + k`.
    pub costs: CostModel,
}

impl Transport3Data {
    /// `(l, m, n)`.
    pub fn dims(&self) -> (usize, usize, usize) {
        let l = self.w.len();
        let m = self.u.len();
        let n = self.u.first().map_or(0, Vec::len);
        (l, m, n)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Transport3Instance {
    pub data: Transport3Data,
    pub layout: NfoldLayout,
    pub instance: Instance,
}

impl Transport3Instance {
    pub fn var_index(&self, i: usize, j: usize, k: usize) -> usize {
        let (l, m, _) = self.data.dims();
        k * l * m + i * m + j
    }

    /// Variable-ordered point to array order.
    pub fn to_array(&self, x: &IntVector) -> IntVector {
        let (l, m, n) = self.data.dims();
        let mut out = Vec::with_capacity(l * m * n);
        for i in 0..l {
            for j in 0..m {
                for k in 0..n {
                    out.push(x[self.var_index(i, j, k)]);
                }
            }
        }
        out.into()
    }
}

fn shape(name: &str, rows: &[Vec<i64>], r: usize, c: usize) -> Result<()> {
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(Error::dim(format!("line sums {name} must be {r}x{c}")));
    }
    for (a, row) in rows.iter().enumerate() {
        if let Some(b) = row.iter().position(|&x| x < 0) {
            return Err(Error::invalid(format!("line sum {name}[{a}][{b}] = {} is negative", row[b])));
        }
    }
    Ok(())
}

fn total(rows: &[Vec<i64>]) -> Result<i64> {
    rows.iter().flatten().try_fold(0i64, |s, &x| s.checked_add(x)).ok_or(Error::Overflow("line sum totals"))
}

fn agree(what: String, a: i64, b: i64) -> Result<()> {
    if a != b {
        return Err(Error::Infeasible(format!("inconsistent line sums: {what} ({a} vs {b})")));
    }
    Ok(())
}

pub fn build_transport3(data: Transport3Data) -> Result<Transport3Instance> {
    let (l, m, n) = data.dims();
    if l == 0 || m == 0 || n == 0 {
        return Err(Error::invalid("transportation dimensions must be positive"));
    }
    shape("u", &data.u, m, n)?;
    shape("v", &data.v, l, n)?;
    shape("w", &data.w, l, m)?;
    if data.costs.dim() != l * m * n {
        return Err(Error::dim(format!("costs have length {}, expected l·m·n = {}", data.costs.dim(), l * m * n)));
    }
    let (tu, tv, tw) = (total(&data.u)?, total(&data.v)?, total(&data.w)?);
    agree("total of u differs from total of w".into(), tu, tw)?;
    agree("total of v differs from total of w".into(), tv, tw)?;
    // Σ_j u = Σ_i v per k, Σ_k u = Σ_i w per j, Σ_k v = Σ_j w per i
    for k in 0..n {
        agree(format!("slice k={k}: Σ_j u differs from Σ_i v"), (0..m).map(|j| data.u[j][k]).sum(), (0..l).map(|i| data.v[i][k]).sum())?;
    }
    for j in 0..m {
        agree(format!("j={j}: Σ_k u differs from Σ_i w"), data.u[j].iter().sum(), (0..l).map(|i| data.w[i][j]).sum())?;
    }
    for i in 0..l {
        agree(format!("i={i}: Σ_k v differs from Σ_j w"), data.v[i].iter().sum(), data.w[i].iter().sum())?;
    }

    let t = l * m;
    let dim = n * t;
    let var = |i: usize, j: usize, k: usize| k * t + i * m + j;
    let mut rows = Vec::with_capacity(m * n + l * n + l * m);
    let mut rhs = Vec::with_capacity(rows.capacity());
    for j in 0..m {
        for k in 0..n {
            rows.push(ones(dim, |c| (0..l).any(|i| c == var(i, j, k))));
            rhs.push(data.u[j][k]);
        }
    }
    for i in 0..l {
        for k in 0..n {
            rows.push(ones(dim, |c| (0..m).any(|j| c == var(i, j, k))));
            rhs.push(data.v[i][k]);
        }
    }
    for i in 0..l {
        for j in 0..m {
            rows.push(ones(dim, |c| (0..n).any(|k| c == var(i, j, k))));
            rhs.push(data.w[i][j]);
        }
    }
    let mut upper = vec![0; dim];
    for i in 0..l {
        for j in 0..m {
            for k in 0..n {
                upper[var(i, j, k)] = data.u[j][k].min(data.v[i][k]).min(data.w[i][j]);
            }
        }
    }
    let set = StandardFormSet::new(IntMatrix::from_rows_with_cols(&rows, dim)?, rhs.into(), IntVector::zeros(dim), upper.into())?;

    let reorder = |c: &IntVector| -> IntVector {
        let mut out = vec![0; dim];
        for i in 0..l {
            for j in 0..m {
                for k in 0..n {
                    out[var(i, j, k)] = c[(i * m + j) * n + k];
                }
            }
        }
        out.into()
    };
    let costs = match &data.costs {
        CostModel::List(cs) => CostModel::list(cs.iter().map(reorder).collect())?,
        CostModel::Box { lo, hi } => CostModel::boxed(reorder(lo), reorder(hi))?,
    };
    let mut instance = Instance::new(set, costs)?;
    instance.provenance = Some(Provenance::new("transport3").param("l", l).param("m", m).param("n", n));

    let sum_i: Vec<Vec<i64>> = (0..m).map(|j| ones(t, |c| c % m == j)).collect();
    let sum_j: Vec<Vec<i64>> = (0..l).map(|i| ones(t, |c| c / m == i)).collect();
    let bottom = IntMatrix::from_rows_with_cols(&[sum_i, sum_j].concat(), t)?;
    let mut row_perm: Vec<usize> = (0..t).map(|c| m * n + l * n + c).collect();
    for k in 0..n {
        row_perm.extend((0..m).map(|j| j * n + k));
        row_perm.extend((0..l).map(|i| m * n + i * n + k));
    }
    let layout = NfoldLayout { top: IntMatrix::identity(t), bottom, n, row_perm, col_perm: (0..dim).collect() };
    Ok(Transport3Instance { data, layout, instance })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::enumerate_feasible;

    fn uniform(l: usize, m: usize, n: usize, u: i64, v: i64, w: i64) -> Transport3Data {
        Transport3Data {
            u: vec![vec![u; n]; m],
            v: vec![vec![v; n]; l],
            w: vec![vec![w; m]; l],
            costs: CostModel::list(vec![IntVector::zeros(l * m * n)]).unwrap(),
        }
    }

    /// All nonnegative integer arrays with the given marginals, by brute force
    /// over `[0, cap]^{lmn}`, returned in array order.
    fn marginal_oracle(d: &Transport3Data, cap: i64) -> Vec<IntVector> {
        let (l, m, n) = d.dims();
        let len = l * m * n;
        let mut out = Vec::new();
        let mut x = vec![0i64; len];
        loop {
            let at = |i: usize, j: usize, k: usize| x[(i * m + j) * n + k];
            let ok = (0..m).all(|j| (0..n).all(|k| (0..l).map(|i| at(i, j, k)).sum::<i64>() == d.u[j][k]))
                && (0..l).all(|i| (0..n).all(|k| (0..m).map(|j| at(i, j, k)).sum::<i64>() == d.v[i][k]))
                && (0..l).all(|i| (0..m).all(|j| (0..n).map(|k| at(i, j, k)).sum::<i64>() == d.w[i][j]));
            if ok {
                out.push(IntVector::from(x.clone()));
            }
            let mut p = 0;
            loop {
                if p == len {
                    out.sort();
                    return out;
                }
                if x[p] < cap {
                    x[p] += 1;
                    break;
                }
                x[p] = 0;
                p += 1;
            }
        }
    }

    fn check_against_oracle(d: Transport3Data, cap: i64) {
        let inst = build_transport3(d.clone()).unwrap();
        assert!(inst.layout.check(&inst.instance.set).unwrap());
        let mut pts: Vec<IntVector> =
            enumerate_feasible(&inst.instance.set, 1_000_000).unwrap().iter().map(|x| inst.to_array(x)).collect();
        pts.sort();
        assert_eq!(pts, marginal_oracle(&d, cap));
    }

    #[test]
    fn uniform_two_cube() {
        let d = uniform(2, 2, 2, 2, 2, 2);
        let inst = build_transport3(d.clone()).unwrap();
        assert!(inst.instance.set.upper().iter().all(|&b| b == 2));
        assert!(inst.instance.set.membership(&vec![1; 8].into()).unwrap());
        check_against_oracle(d, 2);
    }

    #[test]
    fn zero_line_sum_forces_zero() {
        let mut d = uniform(2, 2, 2, 1, 1, 1);
        d.u = vec![vec![2, 0], vec![0, 2]];
        d.v = vec![vec![1, 1], vec![1, 1]];
        d.w = vec![vec![1, 1], vec![1, 1]];
        let inst = build_transport3(d.clone()).unwrap();
        for i in 0..2 {
            assert_eq!(inst.instance.set.upper()[inst.var_index(i, 0, 1)], 0);
            assert_eq!(inst.instance.set.upper()[inst.var_index(i, 1, 0)], 0);
        }
        check_against_oracle(d, 2);
    }

    #[test]
    fn three_by_two_by_two() {
        let d = Transport3Data {
            u: vec![vec![2, 1], vec![1, 2]],
            v: vec![vec![1, 1], vec![1, 1], vec![1, 1]],
            w: vec![vec![1, 1], vec![1, 1], vec![1, 1]],
            costs: CostModel::list(vec![IntVector::zeros(12)]).unwrap(),
        };
        check_against_oracle(d, 1);
    }

    #[test]
    fn inconsistent_totals() {
        let mut d = uniform(2, 2, 2, 2, 2, 2);
        d.w[0][0] = 3;
        let err = build_transport3(d).unwrap_err();
        assert!(matches!(&err, Error::Infeasible(m) if m.contains("total of u differs from total of w")), "{err}");
    }

    #[test]
    fn three_cube_layout() {
        let inst = build_transport3(uniform(3, 3, 3, 1, 1, 1)).unwrap();
        assert!(inst.layout.check(&inst.instance.set).unwrap());
        let mut bad = inst.layout.clone();
        bad.row_perm.swap(0, 9);
        assert!(!bad.check(&inst.instance.set).unwrap());
    }
}
