//! Graver basis by completion.
//!
//! Starting from a lattice basis of `ker(A)`, the working set `S` (implicitly
//! closed under negation) is completed: every sum `f ± g` of two elements is
//! reduced to normal form by repeatedly subtracting elements conformally
//! below the remainder, and nonzero normal forms join `S`. At closure `S`
//! contains the Graver basis, which is then extracted as the ⊑-minimal
//! elements.
//!
//! Pairs are processed in increasing 1-norm of their sum (ties by insertion
//! index), which lets small elements reduce larger sums before those sums
//! are ever inserted. Sums of two sign-compatible vectors are skipped: such
//! a sum reduces to zero by its own summands.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graver::{integer_kernel_basis, GraverBasis};
use crate::linalg::{IntMatrix, IntVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompletionLimits {
    /// Cap on the working set size (canonical representatives).
    pub max_elements: u64,
    /// Cap on the number of pair sums reduced.
    pub max_pair_reductions: u64,
}

impl Default for CompletionLimits {
    fn default() -> Self {
        CompletionLimits { max_elements: 100_000, max_pair_reductions: 10_000_000 }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CompletionStats {
    pub kernel_rank: usize,
    pub pair_reductions: u64,
    pub skipped_pairs: u64,
    pub working_set: usize,
    pub basis_size: usize,
}

/// A vector with its positive and negative supports as bitsets.
#[derive(Debug, Clone)]
struct Elem {
    v: Vec<i64>,
    pos: Vec<u64>,
    neg: Vec<u64>,
}

impl Elem {
    fn new(v: Vec<i64>) -> Self {
        let words = v.len().div_ceil(64).max(1);
        let mut pos = vec![0u64; words];
        let mut neg = vec![0u64; words];
        for (i, &x) in v.iter().enumerate() {
            if x > 0 {
                pos[i / 64] |= 1 << (i % 64);
            } else if x < 0 {
                neg[i / 64] |= 1 << (i % 64);
            }
        }
        Elem { v, pos, neg }
    }

    fn is_zero(&self) -> bool {
        self.pos.iter().chain(&self.neg).all(|&w| w == 0)
    }

    /// `sign * self ⊑ r` where `sign` is +1 (`flip == false`) or -1.
    #[inline]
    fn below(&self, r: &Elem, flip: bool) -> bool {
        let (p, q) = if flip { (&self.neg, &self.pos) } else { (&self.pos, &self.neg) };
        let supports = p.iter().zip(&r.pos).all(|(a, b)| a & !b == 0)
            && q.iter().zip(&r.neg).all(|(a, b)| a & !b == 0);
        supports && self.v.iter().zip(&r.v).all(|(a, b)| a.unsigned_abs() <= b.unsigned_abs())
    }

    /// True when `self` and `sign * other` never have opposite signs.
    #[inline]
    fn sign_compatible(&self, other: &Elem, flip: bool) -> bool {
        let (p, q) = if flip { (&other.neg, &other.pos) } else { (&other.pos, &other.neg) };
        self.pos.iter().zip(q).all(|(a, b)| a & b == 0) && self.neg.iter().zip(p).all(|(a, b)| a & b == 0)
    }
}

fn combine(f: &[i64], g: &[i64], flip: bool) -> Result<Vec<i64>> {
    f.iter()
        .zip(g)
        .map(|(&a, &b)| if flip { a.checked_sub(b) } else { a.checked_add(b) })
        .collect::<Option<Vec<_>>>()
        .ok_or(Error::Overflow("completion sum"))
}

fn canonical(mut v: Vec<i64>) -> Result<Vec<i64>> {
    if v.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        for x in &mut v {
            *x = x.checked_neg().ok_or(Error::Overflow("completion sign"))?;
        }
    }
    Ok(v)
}

struct Completion {
    set: Vec<Elem>,
    stats: CompletionStats,
}

impl Completion {
    /// Reduces `r` against the working set until no element (or its
    /// negation) lies conformally below it. The first reducer in insertion
    /// order is used, subtracted as often as it stays below.
    fn normal_form(&self, mut r: Elem) -> Result<Elem> {
        'outer: while !r.is_zero() {
            for h in &self.set {
                for flip in [false, true] {
                    if h.below(&r, flip) {
                        let mult = h
                            .v
                            .iter()
                            .zip(&r.v)
                            .filter(|(a, _)| **a != 0)
                            .map(|(a, b)| b.unsigned_abs() / a.unsigned_abs())
                            .min()
                            .expect("nonzero element") as i64;
                        let step = if flip { -mult } else { mult };
                        let v = r
                            .v
                            .iter()
                            .zip(&h.v)
                            .map(|(&x, &g)| g.checked_mul(step).and_then(|s| x.checked_sub(s)))
                            .collect::<Option<Vec<_>>>()
                            .ok_or(Error::Overflow("normal form"))?;
                        r = Elem::new(v);
                        continue 'outer;
                    }
                }
            }
            break;
        }
        Ok(r)
    }
}

/// Computes the Graver basis of `a` by completion. Exceeding either cap is an
/// error; a truncated basis is never returned.
pub fn compute_graver(a: &IntMatrix, limits: CompletionLimits) -> Result<GraverBasis> {
    compute_graver_with_stats(a, limits).map(|(g, _)| g)
}

pub fn compute_graver_with_stats(a: &IntMatrix, limits: CompletionLimits) -> Result<(GraverBasis, CompletionStats)> {
    if a.cols() == 0 {
        return Err(Error::invalid("matrix has no columns"));
    }
    let kernel = integer_kernel_basis(a)?;
    let mut c = Completion {
        set: Vec::new(),
        stats: CompletionStats { kernel_rank: kernel.len(), ..Default::default() },
    };
    // (norm of sum, i, j, flip): sum is set[i] + set[j] or set[i] - set[j]
    let mut queue: BinaryHeap<Reverse<(u64, u32, u32, bool)>> = BinaryHeap::new();

    let insert = |c: &mut Completion, queue: &mut BinaryHeap<_>, e: Elem| -> Result<()> {
        if c.set.len() as u64 >= limits.max_elements {
            return Err(Error::CapExceeded { what: "graver working set", limit: limits.max_elements });
        }
        let t = c.set.len();
        for (i, g) in c.set.iter().enumerate() {
            for flip in [false, true] {
                if e.sign_compatible(g, flip) {
                    c.stats.skipped_pairs += 1;
                    continue;
                }
                let norm = e
                    .v
                    .iter()
                    .zip(&g.v)
                    .map(|(&x, &y)| if flip { x as i128 - y as i128 } else { x as i128 + y as i128 })
                    .map(|s| s.unsigned_abs() as u64)
                    .sum();
                queue.push(Reverse((norm, i as u32, t as u32, flip)));
            }
        }
        c.set.push(e);
        Ok(())
    };

    for v in kernel {
        let r = c.normal_form(Elem::new(v.into_inner()))?;
        if !r.is_zero() {
            insert(&mut c, &mut queue, Elem::new(canonical(r.v)?))?;
        }
    }

    while let Some(Reverse((_, i, j, flip))) = queue.pop() {
        if c.stats.pair_reductions >= limits.max_pair_reductions {
            return Err(Error::CapExceeded { what: "graver pair reductions", limit: limits.max_pair_reductions });
        }
        c.stats.pair_reductions += 1;
        let sum = combine(&c.set[j as usize].v, &c.set[i as usize].v, flip)?;
        let r = c.normal_form(Elem::new(sum))?;
        if !r.is_zero() {
            insert(&mut c, &mut queue, Elem::new(canonical(r.v)?))?;
        }
    }
    c.stats.working_set = c.set.len();

    let minimal: Vec<IntVector> = c
        .set
        .iter()
        .enumerate()
        .filter(|(k, e)| {
            !c.set
                .iter()
                .enumerate()
                .any(|(h, other)| h != *k && (other.below(e, false) || other.below(e, true)))
        })
        .map(|(_, e)| IntVector::from(e.v.clone()))
        .collect();
    c.stats.basis_size = minimal.len();
    let basis = GraverBasis::for_matrix(a, minimal)?;
    Ok((basis, c.stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graver::brute_force_graver;
    use proptest::prelude::*;

    fn graver(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let a = IntMatrix::from_rows(rows).unwrap();
        compute_graver(&a, CompletionLimits::default())
            .unwrap()
            .elements()
            .iter()
            .map(|g| g.to_vec())
            .collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(graver(&[vec![1, -1]]), vec![vec![1, 1]]);
        assert_eq!(graver(&[vec![1, 1]]), vec![vec![1, -1]]);
        assert_eq!(graver(&[vec![0, 0, 0]]), vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert!(graver(&[vec![1, 0], vec![0, 1]]).is_empty());
    }

    #[test]
    fn agrees_with_enumeration_oracle() {
        for rows in [
            vec![vec![1, 2, 3]],
            vec![vec![2, -3, 1, 0], vec![0, 1, 1, -2]],
            vec![vec![3, -2, 0, 1, -1]],
        ] {
            let a = IntMatrix::from_rows(&rows).unwrap();
            let g = compute_graver(&a, CompletionLimits::default()).unwrap();
            let radius = g.max_abs_entry() as i64;
            let oracle = crate::graver::brute_force_graver(&a, radius, 10_000_000).unwrap();
            assert_eq!(g.elements(), oracle.as_slice(), "matrix {rows:?}");
        }
    }

    #[test]
    fn caps_are_enforced() {
        let a = IntMatrix::from_rows(&[vec![1, 2, 3, 5]]).unwrap();
        let err = compute_graver(&a, CompletionLimits { max_elements: 3, max_pair_reductions: 10 });
        assert!(matches!(err, Err(Error::CapExceeded { .. })));
        let err = compute_graver(&a, CompletionLimits { max_elements: 1000, max_pair_reductions: 2 });
        assert!(matches!(err, Err(Error::CapExceeded { what: "graver pair reductions", .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn matches_brute_force(rows in 1usize..=2, data in proptest::collection::vec(-2i64..=2, 8)) {
            let cols = 4;
            let a = IntMatrix::from_row_major(rows, cols, data[..rows * cols].to_vec()).unwrap();
            let g = compute_graver(&a, CompletionLimits::default()).unwrap();
            let full = g.full_set();
            for e in &full {
                prop_assert!(a.annihilates(e));
                prop_assert!(!e.is_zero());
            }
            for (i, x) in full.iter().enumerate() {
                for (j, y) in full.iter().enumerate() {
                    prop_assert!(i == j || !crate::linalg::conformal_leq(x, y).unwrap());
                }
            }
            prop_assert!(g.elements().iter().all(IntVector::is_canonical));
            let m = (g.max_abs_entry() as i64).max(1);
            prop_assert_eq!(brute_force_graver(&a, m, 10_000_000).unwrap(), g.elements().to_vec());
        }
    }
}
