//! The four robust variants `min_X max_C c·x` / `max_C min_X c·x` over list or
//! box cost sets, and their profit counterparts obtained through `C ↦ -C`.
//!
//! | variant        | method                                             |
//! |----------------|----------------------------------------------------|
//! | `MinMaxBox`    | Graver augmentation on `Σ max(lo_i x_i, hi_i x_i)` |
//! | `MaxMinList`   | one Graver linear solve per listed cost            |
//! | `MinMaxList`   | exact enumeration of `X`                           |
//! | `MaxMinBox`    | exact enumeration of the box, Graver inner solves  |

use std::fmt;
use std::str::FromStr;

use crate::cost::{box_argmax, CostModel};
use crate::error::{Error, Result};
use crate::graver::GraverBasis;
use crate::linalg::IntVector;
use crate::objective::{box_objective, SeparableConvexObjective};
use crate::set::StandardFormSet;
use crate::solver::{
    enumerate_feasible, find_feasible, improving_step, minimize_linear, minimize_separable_convex,
    AugmentationTrace, Feasibility, SolveCaps, Termination,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    MinMaxList,
    MinMaxBox,
    MaxMinList,
    MaxMinBox,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::MinMaxBox, Variant::MaxMinList, Variant::MinMaxList, Variant::MaxMinBox];

    /// The command-line name.
    pub fn flag(self) -> &'static str {
        match self {
            Variant::MinMaxBox => "minmax-box",
            Variant::MaxMinList => "maxmin-list",
            Variant::MinMaxList => "minmax-list-exact",
            Variant::MaxMinBox => "maxmin-box-exact",
        }
    }

    pub fn is_min_max(self) -> bool {
        matches!(self, Variant::MinMaxList | Variant::MinMaxBox)
    }

    pub fn uses_box(self) -> bool {
        matches!(self, Variant::MinMaxBox | Variant::MaxMinBox)
    }

    pub fn needs_graver(self) -> bool {
        !matches!(self, Variant::MinMaxList)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.flag())
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.flag() == s)
            .ok_or_else(|| Error::invalid(format!("unknown variant '{s}'")))
    }
}

/// Whether `C` holds costs (to be paid by the `X` player) or profits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Cost,
    /// A profit report of variant `MinMax*` answers `max_X min_C c·x`; one of
    /// variant `MaxMin*` answers `min_C max_X c·x`.
    Profit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Graver,
    ExactEnumeration,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Graver => "graver",
            Method::ExactEnumeration => "exact-enumeration",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub augmentation_steps: u64,
    pub inner_solves: u64,
    pub points_enumerated: u64,
    pub costs_enumerated: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RobustReport {
    pub variant: Variant,
    pub sense: Sense,
    pub value: i64,
    /// `x*` for min-max variants, `c*` for max-min variants.
    pub optimizer: IntVector,
    /// The inner optimizer: the attaining cost for min-max, the attaining
    /// point for max-min.
    pub witness: IntVector,
    pub method: Method,
    pub stats: SolveStats,
}

impl RobustReport {
    pub fn point(&self) -> &IntVector {
        if self.variant.is_min_max() {
            &self.optimizer
        } else {
            &self.witness
        }
    }

    pub fn cost(&self) -> &IntVector {
        if self.variant.is_min_max() {
            &self.witness
        } else {
            &self.optimizer
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StartPoint {
    /// Use this point if it is feasible, otherwise search.
    Hint(IntVector),
    Search,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RobustCaps {
    pub solve: SolveCaps,
    /// Cap on enumerated feasible points or box costs for the exact variants.
    pub enumeration: u64,
    /// Node budget for the phase-one feasibility search.
    pub search_nodes: u64,
}

impl Default for RobustCaps {
    fn default() -> Self {
        RobustCaps { solve: SolveCaps::default(), enumeration: 1_000_000, search_nodes: 10_000_000 }
    }
}

fn start_point(set: &StandardFormSet, start: &StartPoint, caps: &RobustCaps) -> Result<IntVector> {
    let hint = match start {
        StartPoint::Hint(h) => Some(h),
        StartPoint::Search => None,
    };
    match find_feasible(set, hint, caps.search_nodes)? {
        Feasibility::Feasible(x) => Ok(x),
        Feasibility::Infeasible => Err(Error::Infeasible("the feasible set is empty".into())),
    }
}

fn certified(trace: AugmentationTrace) -> Result<AugmentationTrace> {
    match trace.termination {
        Termination::Optimal => Ok(trace),
        Termination::Cap => Err(Error::CapExceeded { what: "augmentation iterations", limit: trace.steps.len() as u64 }),
    }
}

fn check_cost_dim(set: &StandardFormSet, n: usize) -> Result<()> {
    if n != set.dim() {
        return Err(Error::dim(format!("costs have length {n}, set dimension is {}", set.dim())));
    }
    Ok(())
}

/// `min_{x∈X} max_{lo<=c<=hi} c·x` by separable convex augmentation.
///
/// The witness cost takes `hi_i` where `x*_i >= 0` and `lo_i` where `x*_i < 0`.
pub fn min_max_box(
    set: &StandardFormSet,
    basis: &GraverBasis,
    lo: &IntVector,
    hi: &IntVector,
    start: &StartPoint,
    caps: &RobustCaps,
) -> Result<RobustReport> {
    check_cost_dim(set, lo.len())?;
    let f = box_objective(lo, hi)?;
    let x0 = start_point(set, start, caps)?;
    let trace = certified(minimize_separable_convex(set, basis, &f, &x0, caps.solve)?)?;
    let witness = box_argmax(lo, hi, &trace.final_point);
    let report = RobustReport {
        variant: Variant::MinMaxBox,
        sense: Sense::Cost,
        value: trace.final_value,
        witness,
        optimizer: trace.final_point,
        method: Method::Graver,
        stats: SolveStats { augmentation_steps: trace.steps.len() as u64, inner_solves: 1, ..Default::default() },
    };
    recheck(&report, set, &CostModel::Box { lo: lo.clone(), hi: hi.clone() })?;
    Ok(report)
}

/// `max_{c∈C} min_{x∈X} c·x` for a listed `C`: one linear solve per cost.
/// Ties go to the first cost in list order.
pub fn max_min_list(
    set: &StandardFormSet,
    basis: &GraverBasis,
    costs: &[IntVector],
    start: &StartPoint,
    caps: &RobustCaps,
) -> Result<RobustReport> {
    let model = CostModel::list(costs.to_vec())?;
    check_cost_dim(set, model.dim())?;
    let x0 = start_point(set, start, caps)?;
    let mut stats = SolveStats::default();
    let mut best: Option<(i64, &IntVector, IntVector)> = None;
    for c in costs {
        let trace = certified(minimize_linear(set, basis, c, &x0, caps.solve)?)?;
        stats.inner_solves += 1;
        stats.augmentation_steps += trace.steps.len() as u64;
        if best.as_ref().is_none_or(|(v, _, _)| trace.final_value > *v) {
            best = Some((trace.final_value, c, trace.final_point));
        }
    }
    let (value, c, x) = best.expect("nonempty list");
    let report = RobustReport {
        variant: Variant::MaxMinList,
        sense: Sense::Cost,
        value,
        optimizer: c.clone(),
        witness: x,
        method: Method::Graver,
        stats,
    };
    recheck(&report, set, &model)?;
    Ok(report)
}

/// `min_{x∈X} max_{c∈C} c·x` for a listed `C`, by enumerating `X`.
/// Ties go to the first point in enumeration order and the first cost.
pub fn min_max_list_exact(set: &StandardFormSet, costs: &[IntVector], cap: u64) -> Result<RobustReport> {
    let model = CostModel::list(costs.to_vec())?;
    check_cost_dim(set, model.dim())?;
    let points = enumerate_feasible(set, cap)?;
    let mut best: Option<(i64, usize, IntVector)> = None;
    for (k, x) in points.iter().enumerate() {
        let (v, c) = model.worst_case(x)?;
        if best.as_ref().is_none_or(|(b, _, _)| v < *b) {
            best = Some((v, k, c));
        }
    }
    let Some((value, k, c)) = best else {
        return Err(Error::Infeasible("the feasible set is empty".into()));
    };
    let report = RobustReport {
        variant: Variant::MinMaxList,
        sense: Sense::Cost,
        value,
        optimizer: points[k].clone(),
        witness: c,
        method: Method::ExactEnumeration,
        stats: SolveStats { points_enumerated: points.len() as u64, ..Default::default() },
    };
    recheck(&report, set, &model)?;
    Ok(report)
}

/// `max_{lo<=c<=hi} min_{x∈X} c·x` by enumerating the box in lexicographic
/// order with a Graver linear solve per cost. A box with more than
/// `caps.enumeration` integer points is refused.
pub fn max_min_box_exact(
    set: &StandardFormSet,
    basis: &GraverBasis,
    lo: &IntVector,
    hi: &IntVector,
    start: &StartPoint,
    caps: &RobustCaps,
) -> Result<RobustReport> {
    let model = CostModel::boxed(lo.clone(), hi.clone())?;
    check_cost_dim(set, model.dim())?;
    if model.cardinality() > caps.enumeration as u128 {
        return Err(Error::CapExceeded { what: "box cost enumeration", limit: caps.enumeration });
    }
    let x0 = start_point(set, start, caps)?;
    let mut stats = SolveStats::default();
    let mut best: Option<(i64, IntVector, IntVector)> = None;
    let mut c = lo.to_vec();
    loop {
        let cv = IntVector::from(c.clone());
        let trace = certified(minimize_linear(set, basis, &cv, &x0, caps.solve)?)?;
        stats.inner_solves += 1;
        stats.costs_enumerated += 1;
        stats.augmentation_steps += trace.steps.len() as u64;
        if best.as_ref().is_none_or(|(v, _, _)| trace.final_value > *v) {
            best = Some((trace.final_value, cv, trace.final_point));
        }
        // odometer with the last coordinate running fastest
        let mut i = c.len();
        loop {
            if i == 0 {
                let (value, c, x) = best.expect("box is nonempty");
                let report = RobustReport {
                    variant: Variant::MaxMinBox,
                    sense: Sense::Cost,
                    value,
                    optimizer: c,
                    witness: x,
                    method: Method::ExactEnumeration,
                    stats,
                };
                recheck(&report, set, &model)?;
                return Ok(report);
            }
            i -= 1;
            if c[i] < hi[i] {
                c[i] += 1;
                break;
            }
            c[i] = lo[i];
        }
    }
}

/// Dispatches `variant` on `costs`, checking that the cost model matches.
pub fn solve(
    variant: Variant,
    set: &StandardFormSet,
    basis: Option<&GraverBasis>,
    costs: &CostModel,
    start: &StartPoint,
    caps: &RobustCaps,
) -> Result<RobustReport> {
    let need = || {
        basis.ok_or_else(|| Error::invalid(format!("variant {variant} needs a Graver basis")))
    };
    match (variant, costs) {
        (Variant::MinMaxBox, CostModel::Box { lo, hi }) => min_max_box(set, need()?, lo, hi, start, caps),
        (Variant::MaxMinBox, CostModel::Box { lo, hi }) => max_min_box_exact(set, need()?, lo, hi, start, caps),
        (Variant::MaxMinList, CostModel::List(cs)) => max_min_list(set, need()?, cs, start, caps),
        (Variant::MinMaxList, CostModel::List(cs)) => min_max_list_exact(set, cs, caps.enumeration),
        (v, CostModel::List(_)) => Err(Error::invalid(format!("variant {v} needs a box cost model"))),
        (v, CostModel::Box { .. }) => Err(Error::invalid(format!("variant {v} needs a list cost model"))),
    }
}

/// Profit counterpart of `variant`: solves the cost problem over `-C`, then
/// negates the value and maps the cost back, using
/// `max_X min_C c·x = -min_X max_{-C} c·x` and
/// `min_C max_X c·x = -max_{-C} min_X c·x`.
pub fn dual_profit_variant(
    variant: Variant,
    set: &StandardFormSet,
    basis: Option<&GraverBasis>,
    profits: &CostModel,
    start: &StartPoint,
    caps: &RobustCaps,
) -> Result<RobustReport> {
    let negated = profits.negated()?;
    let mut report = solve(variant, set, basis, &negated, start, caps)?;
    report.value = report.value.checked_neg().ok_or(Error::Overflow("profit value"))?;
    report.sense = Sense::Profit;
    if variant.is_min_max() {
        report.witness = report.witness.checked_neg()?;
    } else {
        report.optimizer = report.optimizer.checked_neg()?;
    }
    recheck(&report, set, profits)?;
    Ok(report)
}

/// A named consistency check on a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Checks a report against its instance without solving anything:
///
/// * `point_membership`: the point lies in `X`;
/// * `cost_membership`: the cost lies in `C`;
/// * `witness_consistency`: the reported value equals `c·x` for the reported pair;
/// * `worst_case` (min-max only): the value equals the inner optimum over `C`
///   at the reported point.
pub fn report_checks(report: &RobustReport, set: &StandardFormSet, costs: &CostModel) -> Vec<ReportCheck> {
    let mut out = Vec::new();
    let x = report.point();
    let c = report.cost();
    let in_x = set.membership(x).unwrap_or(false);
    out.push(ReportCheck { name: "point_membership", passed: in_x, detail: format!("x = {x}") });
    out.push(ReportCheck { name: "cost_membership", passed: costs.contains(c), detail: format!("c = {c}") });
    let cx = c.dot(x);
    out.push(ReportCheck {
        name: "witness_consistency",
        passed: cx.as_ref() == Ok(&report.value),
        detail: match &cx {
            Ok(v) => format!("c·x = {v}, reported value {}", report.value),
            Err(e) => e.to_string(),
        },
    });
    if report.variant.is_min_max() {
        // inner max over C for costs, inner min over C for profits
        let inner = match report.sense {
            Sense::Cost => costs.worst_case(x).map(|(v, _)| v),
            Sense::Profit => costs
                .negated()
                .and_then(|neg| neg.worst_case(x))
                .and_then(|(v, _)| v.checked_neg().ok_or(Error::Overflow("profit value"))),
        };
        out.push(ReportCheck {
            name: "worst_case",
            passed: inner.as_ref() == Ok(&report.value),
            detail: match &inner {
                Ok(v) => format!("inner optimum over C at x is {v}, reported value {}", report.value),
                Err(e) => e.to_string(),
            },
        });
    }
    out
}

/// Certifies that the reported point solves the inner problem over `X` for
/// the reported cost (max-min variants), using the Graver optimality
/// criterion. Returns the improving step if one exists.
pub fn inner_optimality(report: &RobustReport, set: &StandardFormSet, basis: &GraverBasis) -> Result<Option<(IntVector, i64)>> {
    let c = match report.sense {
        Sense::Cost => report.cost().clone(),
        Sense::Profit => report.cost().checked_neg()?,
    };
    improving_step(set, basis, &SeparableConvexObjective::linear(&c), report.point(), i64::MAX)
}

fn recheck(report: &RobustReport, set: &StandardFormSet, costs: &CostModel) -> Result<()> {
    if let Some(bad) = report_checks(report, set, costs).into_iter().find(|c| !c.passed) {
        return Err(Error::Invalid(format!("inconsistent report, {} failed: {}", bad.name, bad.detail)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use crate::graver::compute_graver;
    use crate::linalg::IntMatrix;

    fn free_interval(lo: &[i64], hi: &[i64]) -> (StandardFormSet, GraverBasis) {
        let n = lo.len();
        let a = IntMatrix::zeros(1, n);
        let set = StandardFormSet::new(a.clone(), vec![0].into(), lo.into(), hi.into()).unwrap();
        let g = compute_graver(&a, Default::default()).unwrap();
        (set, g)
    }

    #[test]
    fn min_max_box_on_interval() {
        let (set, g) = free_interval(&[-2], &[3]);
        let r = min_max_box(&set, &g, &vec![-1].into(), &vec![2].into(), &StartPoint::Search, &RobustCaps::default())
            .unwrap();
        assert_eq!(r.value, 0);
        assert_eq!(r.optimizer, IntVector::from([0]));
        assert_eq!(r.witness, IntVector::from([2]), "zero coordinates take the upper cost");
    }

    #[test]
    fn degenerate_box_is_linear_solve() {
        let (set, g) = free_interval(&[-2, 0], &[3, 4]);
        let c = IntVector::from([2, -1]);
        let r = min_max_box(&set, &g, &c, &c, &StartPoint::Search, &RobustCaps::default()).unwrap();
        assert_eq!(r.value, -4 - 4);
        let r2 = max_min_box_exact(&set, &g, &c, &c, &StartPoint::Search, &RobustCaps::default()).unwrap();
        assert_eq!(r2.value, r.value);
    }

    #[test]
    fn singleton_list_reduces_to_linear() {
        let (set, g) = free_interval(&[-2, 0], &[3, 4]);
        let c = IntVector::from([1, 1]);
        let r = max_min_list(&set, &g, std::slice::from_ref(&c), &StartPoint::Search, &RobustCaps::default()).unwrap();
        assert_eq!(r.value, -2);
        let r = min_max_list_exact(&set, &[c], 1000).unwrap();
        assert_eq!(r.value, -2);
    }

    #[test]
    fn list_min_max_partition() {
        // X = {x0 = 1, x_i ∈ {0,1}}, costs (0,a) and (a0,-a)
        let (set, _) = free_interval(&[1, 0, 0, 0], &[1, 1, 1, 1]);
        let r = min_max_list_exact(&set, &[vec![0, 1, 2, 3].into(), vec![6, -1, -2, -3].into()], 1000).unwrap();
        assert_eq!(r.value, 3);
        let r = min_max_list_exact(&set, &[vec![0, 2, 3, 4].into(), vec![9, -2, -3, -4].into()], 1000).unwrap();
        assert_eq!(r.value, 5);
    }

    #[test]
    fn variant_cost_mismatch() {
        let (set, g) = free_interval(&[0], &[1]);
        let list = CostModel::list(vec![vec![1].into()]).unwrap();
        let err = solve(Variant::MinMaxBox, &set, Some(&g), &list, &StartPoint::Search, &RobustCaps::default());
        assert!(matches!(err, Err(Error::Invalid(_))));
        let bx = CostModel::boxed(vec![0].into(), vec![1].into()).unwrap();
        let err = solve(Variant::MinMaxBox, &set, None, &bx, &StartPoint::Search, &RobustCaps::default());
        assert!(matches!(err, Err(Error::Invalid(_))));
    }

    #[test]
    fn infeasible_set_is_reported() {
        let a = IntMatrix::zeros(1, 1);
        let set = StandardFormSet::new(a.clone(), vec![1].into(), vec![0].into(), vec![1].into()).unwrap();
        let g = compute_graver(&a, Default::default()).unwrap();
        let c = IntVector::from([1]);
        let err = min_max_box(&set, &g, &c, &c, &StartPoint::Search, &RobustCaps::default());
        assert!(matches!(err, Err(Error::Infeasible(_))));
        assert!(matches!(min_max_list_exact(&set, &[c], 10), Err(Error::Infeasible(_))));
    }

    #[test]
    fn box_volume_cap() {
        let (set, g) = free_interval(&[0, 0], &[1, 1]);
        let caps = RobustCaps { enumeration: 3, ..Default::default() };
        let err = max_min_box_exact(&set, &g, &vec![0, 0].into(), &vec![1, 1].into(), &StartPoint::Search, &caps);
        assert!(matches!(err, Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn profit_examples() {
        // max_X min_{c ∈ [1,1]^n} c·x on X = [0,1]^n is n.
        let (set, g) = free_interval(&[0, 0, 0], &[1, 1, 1]);
        let profits = CostModel::boxed(vec![1, 1, 1].into(), vec![1, 1, 1].into()).unwrap();
        let r = dual_profit_variant(Variant::MinMaxBox, &set, Some(&g), &profits, &StartPoint::Search, &RobustCaps::default())
            .unwrap();
        assert_eq!(r.value, 3);
        assert_eq!(r.sense, Sense::Profit);
        assert_eq!(r.witness, IntVector::from([1, 1, 1]));

        // singleton: max_X min_{c} c·x = max_X c·x
        let c = IntVector::from([2, -1, 1]);
        let profits = CostModel::list(vec![c]).unwrap();
        let r = dual_profit_variant(Variant::MinMaxList, &set, None, &profits, &StartPoint::Search, &RobustCaps::default())
            .unwrap();
        assert_eq!(r.value, 3);
        let r = dual_profit_variant(Variant::MaxMinList, &set, Some(&g), &profits, &StartPoint::Search, &RobustCaps::default())
            .unwrap();
        assert_eq!(r.value, 3);
        assert!(inner_optimality(&r, &set, &g).unwrap().is_none());
    }

    #[test]
    fn tampered_report_fails_consistency() {
        let (set, g) = free_interval(&[-2], &[3]);
        let model = CostModel::boxed(vec![-1].into(), vec![2].into()).unwrap();
        let mut r = solve(Variant::MinMaxBox, &set, Some(&g), &model, &StartPoint::Search, &RobustCaps::default()).unwrap();
        assert!(report_checks(&r, &set, &model).iter().all(|c| c.passed));
        r.value += 1;
        let failed: Vec<_> = report_checks(&r, &set, &model).into_iter().filter(|c| !c.passed).map(|c| c.name).collect();
        assert_eq!(failed, vec!["witness_consistency", "worst_case"]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn weak_duality_and_profit_identities(seed in 0u64..10_000) {
            use crate::instances::{gen_random, RandomCosts, RandomParams};
            let params = RandomParams { rows: 1, cols: 4, costs: RandomCosts::Box { range: 2 }, ..RandomParams::default() };
            let inst = gen_random(&params, seed).unwrap();
            let g = compute_graver(inst.set.matrix(), Default::default()).unwrap();
            let start = StartPoint::Hint(inst.feasible_hint.clone().unwrap());
            let caps = RobustCaps::default();
            let mm = solve(Variant::MinMaxBox, &inst.set, Some(&g), &inst.costs, &start, &caps).unwrap();
            let xm = solve(Variant::MaxMinBox, &inst.set, Some(&g), &inst.costs, &start, &caps).unwrap();
            prop_assert!(xm.value <= mm.value);
            // profit min-max over C equals the negated cost problem over -C
            let neg = inst.costs.negated().unwrap();
            let p = dual_profit_variant(Variant::MinMaxBox, &inst.set, Some(&g), &neg, &start, &caps).unwrap();
            prop_assert_eq!(p.value, -mm.value);
            let p = dual_profit_variant(Variant::MaxMinBox, &inst.set, Some(&g), &neg, &start, &caps).unwrap();
            prop_assert_eq!(p.value, -xm.value);
        }
    }
}
