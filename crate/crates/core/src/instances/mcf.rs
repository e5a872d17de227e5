//! Multicommodity flow with a slack commodity.
//!
//! Raw data has commodities `k = 1..=l` (stored at index `k-1`), suppliers
//! `i < m`, consumers `j < n`. The slack commodity `0` absorbs unused channel
//! capacity so that every capacity constraint becomes an equation.
//!
//! Variables `x^k_{i,j}` for `k = 0..=l` are ordered consumer-major:
//! index `j·(l+1)·m + k·m + i`. Rows are grouped by family:
//!
//! * supply `(k,i)` at `k·m + i`: `Σ_j x^k_{i,j} = s^k_i`;
//! * demand `(k,j)` at `(l+1)m + k·n + j`: `Σ_i x^k_{i,j} = d^k_j`;
//! * capacity `(i,j)` at `(l+1)(m+n) + i·n + j`: `Σ_k x^k_{i,j} = u_{i,j}`.
//!
//! With `t = (l+1)m`, the matrix is the `n`-fold product of the bimatrix
//! `A1 = I_t` over `A2`, where `A2` has `l+1` demand rows (row `k` sums the
//! variables of commodity `k`) followed by `m` capacity rows (row `i` sums the
//! variables of supplier `i`). Columns are already in brick order; rows move
//! the demand and capacity rows of consumer `j` into brick `j`.

use crate::cost::CostModel;
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, IntVector};
use crate::set::StandardFormSet;

use super::{ones, Instance, NfoldLayout, Provenance};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McfData {
    /// `supply[k-1][i] = s^k_i`.
    pub supply: Vec<Vec<i64>>,
    /// `demand[k-1][j] = d^k_j`.
    pub demand: Vec<Vec<i64>>,
    /// `capacity[i][j] = u_{i,j}`.
    pub capacity: Vec<Vec<i64>>,
    /// Costs over the raw variables, index `(k-1)·m·n + i·n + j`.
    pub costs: CostModel,
}

impl McfData {
    pub fn commodities(&self) -> usize {
        self.supply.len()
    }

    pub fn suppliers(&self) -> usize {
        self.capacity.len()
    }

    pub fn consumers(&self) -> usize {
        self.capacity.first().map_or(0, Vec::len)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct McfInstance {
    pub data: McfData,
    pub slack_supply: Vec<i64>,
    pub slack_demand: Vec<i64>,
    pub layout: NfoldLayout,
    pub instance: Instance,
}

fn check_shape(what: &str, rows: &[Vec<i64>], r: usize, c: usize) -> Result<()> {
    if rows.len() != r {
        return Err(Error::dim(format!("{what} has {} rows, expected {r}", rows.len())));
    }
    for (k, row) in rows.iter().enumerate() {
        if row.len() != c {
            return Err(Error::dim(format!("{what} row {k} has length {}, expected {c}", row.len())));
        }
        if let Some(p) = row.iter().position(|&v| v < 0) {
            return Err(Error::invalid(format!("{what}[{k}][{p}] = {} is negative", row[p])));
        }
    }
    Ok(())
}

fn sum(vals: impl Iterator<Item = i64>) -> Result<i64> {
    vals.into_iter().try_fold(0i64, |s, v| s.checked_add(v)).ok_or(Error::Overflow("flow totals"))
}

impl McfInstance {
    pub fn var_index(&self, k: usize, i: usize, j: usize) -> usize {
        let (l1, m) = (self.data.commodities() + 1, self.data.suppliers());
        j * l1 * m + k * m + i
    }

    /// Drops the slack commodity, returning raw flows in raw cost order.
    pub fn project(&self, x: &IntVector) -> IntVector {
        let (l, m, n) = (self.data.commodities(), self.data.suppliers(), self.data.consumers());
        let mut out = Vec::with_capacity(l * m * n);
        for k in 1..=l {
            for i in 0..m {
                for j in 0..n {
                    out.push(x[self.var_index(k, i, j)]);
                }
            }
        }
        out.into()
    }

    /// A raw cost vector extended by zero slack costs, in variable order.
    pub fn lift_cost(&self, c: &IntVector) -> IntVector {
        lift(&self.data, c)
    }
}

fn lift(data: &McfData, c: &IntVector) -> IntVector {
    let (l, m, n) = (data.commodities(), data.suppliers(), data.consumers());
    let mut out = vec![0; (l + 1) * m * n];
    for k in 1..=l {
        for i in 0..m {
            for j in 0..n {
                out[j * (l + 1) * m + k * m + i] = c[(k - 1) * m * n + i * n + j];
            }
        }
    }
    out.into()
}

/// Northwest-corner transport for each commodity; `None` if the combined
/// flow breaks a capacity.
fn northwest_corner(data: &McfData) -> Option<Vec<Vec<Vec<i64>>>> {
    let (m, n) = (data.suppliers(), data.consumers());
    let mut flows = Vec::new();
    let mut load = vec![vec![0i64; n]; m];
    for (s, d) in data.supply.iter().zip(&data.demand) {
        let (mut s, mut d) = (s.clone(), d.clone());
        let mut x = vec![vec![0i64; n]; m];
        let (mut i, mut j) = (0, 0);
        while i < m && j < n {
            let q = s[i].min(d[j]);
            x[i][j] = q;
            load[i][j] += q;
            s[i] -= q;
            d[j] -= q;
            if s[i] == 0 {
                i += 1;
            } else {
                j += 1;
            }
        }
        flows.push(x);
    }
    (0..m).all(|i| (0..n).all(|j| load[i][j] <= data.capacity[i][j])).then_some(flows)
}

pub fn build_mcf(data: McfData) -> Result<McfInstance> {
    let l = data.commodities();
    let m = data.suppliers();
    let n = data.consumers();
    if l == 0 || m == 0 || n == 0 {
        return Err(Error::invalid("flow instance needs at least one commodity, supplier, and consumer"));
    }
    check_shape("capacity", &data.capacity, m, n)?;
    check_shape("supply", &data.supply, l, m)?;
    check_shape("demand", &data.demand, l, n)?;
    if data.costs.dim() != l * m * n {
        return Err(Error::dim(format!("costs have length {}, expected l·m·n = {}", data.costs.dim(), l * m * n)));
    }
    for k in 0..l {
        let (s, d) = (sum(data.supply[k].iter().copied())?, sum(data.demand[k].iter().copied())?);
        if s != d {
            return Err(Error::Infeasible(format!("commodity {} is unbalanced: total supply {s}, total demand {d}", k + 1)));
        }
    }
    let mut slack_supply = Vec::with_capacity(m);
    for i in 0..m {
        let v = sum(data.capacity[i].iter().copied())? - sum(data.supply.iter().map(|s| s[i]))?;
        if v < 0 {
            return Err(Error::Infeasible(format!("supplier {i} ships more than its channel capacity (slack supply {v})")));
        }
        slack_supply.push(v);
    }
    let mut slack_demand = Vec::with_capacity(n);
    for j in 0..n {
        let v = sum(data.capacity.iter().map(|u| u[j]))? - sum(data.demand.iter().map(|d| d[j]))?;
        if v < 0 {
            return Err(Error::Infeasible(format!("consumer {j} receives more than its channel capacity (slack demand {v})")));
        }
        slack_demand.push(v);
    }

    let l1 = l + 1;
    let t = l1 * m;
    let dim = n * t;
    let var = |k: usize, i: usize, j: usize| j * t + k * m + i;
    let mut rows = Vec::with_capacity(l1 * (m + n) + m * n);
    let mut rhs = Vec::with_capacity(rows.capacity());
    for k in 0..l1 {
        for i in 0..m {
            rows.push(ones(dim, |c| (0..n).any(|j| c == var(k, i, j))));
            rhs.push(if k == 0 { slack_supply[i] } else { data.supply[k - 1][i] });
        }
    }
    for k in 0..l1 {
        for j in 0..n {
            rows.push(ones(dim, |c| (0..m).any(|i| c == var(k, i, j))));
            rhs.push(if k == 0 { slack_demand[j] } else { data.demand[k - 1][j] });
        }
    }
    for i in 0..m {
        for j in 0..n {
            rows.push(ones(dim, |c| (0..l1).any(|k| c == var(k, i, j))));
            rhs.push(data.capacity[i][j]);
        }
    }
    let mut upper = vec![0; dim];
    for k in 0..l1 {
        for i in 0..m {
            for j in 0..n {
                upper[var(k, i, j)] = data.capacity[i][j];
            }
        }
    }
    let set = StandardFormSet::new(IntMatrix::from_rows_with_cols(&rows, dim)?, rhs.into(), IntVector::zeros(dim), upper.into())?;

    let costs = match &data.costs {
        CostModel::List(cs) => CostModel::list(cs.iter().map(|c| lift(&data, c)).collect())?,
        CostModel::Box { lo, hi } => CostModel::boxed(lift(&data, lo), lift(&data, hi))?,
    };
    let mut instance = Instance::new(set, costs)?;

    if let Some(flows) = northwest_corner(&data) {
        let mut x = vec![0; dim];
        for i in 0..m {
            for j in 0..n {
                let mut used = 0;
                for k in 1..l1 {
                    x[var(k, i, j)] = flows[k - 1][i][j];
                    used += flows[k - 1][i][j];
                }
                x[var(0, i, j)] = data.capacity[i][j] - used;
            }
        }
        instance.feasible_hint = Some(x.into());
    }
    instance.provenance = Some(
        Provenance::new("mcf")
            .param("commodities", l)
            .param("suppliers", m)
            .param("consumers", n),
    );

    let demand_rows: Vec<Vec<i64>> = (0..l1).map(|k| ones(t, |c| c / m == k)).collect();
    let capacity_rows: Vec<Vec<i64>> = (0..m).map(|i| ones(t, |c| c % m == i)).collect();
    let bottom = IntMatrix::from_rows_with_cols(&[demand_rows, capacity_rows].concat(), t)?;
    let mut row_perm: Vec<usize> = (0..t).collect();
    for j in 0..n {
        row_perm.extend((0..l1).map(|k| t + k * n + j));
        row_perm.extend((0..m).map(|i| t + l1 * n + i * n + j));
    }
    let layout = NfoldLayout { top: IntMatrix::identity(t), bottom, n, row_perm, col_perm: (0..dim).collect() };

    Ok(McfInstance { data, slack_supply, slack_demand, layout, instance })
}
