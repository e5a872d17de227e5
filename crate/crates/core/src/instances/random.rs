use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cost::CostModel;
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, IntVector};
use crate::set::StandardFormSet;

use super::{Instance, Provenance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RandomCosts {
    /// `count` vectors with entries in `[-range, range]`.
    List { count: usize, range: i64 },
    /// `lo` entries in `[-range, range]`, `hi - lo` in `[0, range]`.
    Box { range: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomParams {
    pub rows: usize,
    pub cols: usize,
    /// Matrix entries in `[-entry_range, entry_range]`.
    pub entry_range: i64,
    /// `upper - lower` for every coordinate.
    pub bound_width: i64,
    /// The planted point has entries in `[-center_range, center_range]`.
    pub center_range: i64,
    pub costs: RandomCosts,
    /// Refuse parameters whose bound box holds more than this many points.
    pub box_cap: u64,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            rows: 2,
            cols: 5,
            entry_range: 2,
            bound_width: 2,
            center_range: 3,
            costs: RandomCosts::Box { range: 3 },
            box_cap: 1_000_000,
        }
    }
}

/// A planted point `x̂` fixes `b = A·x̂`; the bounds are a box of width
/// `bound_width` containing `x̂`, so `|X| <= (bound_width + 1)^cols` and `x̂`
/// is returned as the feasible hint. Identical seeds give identical output.
pub fn gen_random(params: &RandomParams, seed: u64) -> Result<Instance> {
    let p = params;
    if p.rows == 0 || p.cols == 0 {
        return Err(Error::invalid("random instances need at least one row and one column"));
    }
    if p.entry_range < 0 || p.bound_width < 0 || p.center_range < 0 {
        return Err(Error::invalid("ranges must be nonnegative"));
    }
    let volume = (p.bound_width as u128 + 1).checked_pow(p.cols as u32).unwrap_or(u128::MAX);
    if volume > p.box_cap as u128 {
        return Err(Error::CapExceeded { what: "random instance box volume", limit: p.box_cap });
    }
    let range_ok = |r: i64| r <= 1 << 20;
    if !(range_ok(p.entry_range) && range_ok(p.bound_width) && range_ok(p.center_range)) {
        return Err(Error::invalid("ranges above 2^20 are not supported"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sym = |r: i64| rng.random_range(-r..=r);
    let data: Vec<i64> = (0..p.rows * p.cols).map(|_| sym(p.entry_range)).collect();
    let a = IntMatrix::from_row_major(p.rows, p.cols, data)?;
    let x: IntVector = (0..p.cols).map(|_| sym(p.center_range)).collect::<Vec<_>>().into();
    let b = a.mul_vec(&x)?;
    let lower: Vec<i64> = x.iter().map(|&xi| xi - rng.random_range(0..=p.bound_width)).collect();
    let upper: Vec<i64> = lower.iter().map(|&l| l + p.bound_width).collect();
    let set = StandardFormSet::new(a, b, lower.into(), upper.into())?;

    let costs = match p.costs {
        RandomCosts::List { count, range } => {
            if count == 0 {
                return Err(Error::invalid("cost list must be nonempty"));
            }
            let cs = (0..count)
                .map(|_| IntVector::from((0..p.cols).map(|_| rng.random_range(-range..=range)).collect::<Vec<_>>()))
                .collect();
            CostModel::list(cs)?
        }
        RandomCosts::Box { range } => {
            let lo: Vec<i64> = (0..p.cols).map(|_| rng.random_range(-range..=range)).collect();
            let hi: Vec<i64> = lo.iter().map(|&l| l + rng.random_range(0..=range)).collect();
            CostModel::boxed(lo.into(), hi.into())?
        }
    };

    let mut instance = Instance::new(set, costs)?;
    instance.feasible_hint = Some(x);
    let mut prov = Provenance::new("random")
        .param("rows", p.rows)
        .param("cols", p.cols)
        .param("entry_range", p.entry_range)
        .param("bound_width", p.bound_width)
        .param("center_range", p.center_range);
    prov = match p.costs {
        RandomCosts::List { count, range } => prov.param("cost_kind", "list").param("cost_count", count).param("cost_range", range),
        RandomCosts::Box { range } => prov.param("cost_kind", "box").param("cost_range", range),
    };
    prov.seed = Some(seed);
    instance.provenance = Some(prov);
    Ok(instance)
}
