use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, IntVector};

/// A lattice basis of `ker(A) ∩ Zⁿ`.
///
/// Unimodular column operations bring `A` to column echelon form `A·U = [H | 0]`;
/// the columns of `U` paired with the zero block span the integer kernel.
pub fn integer_kernel_basis(a: &IntMatrix) -> Result<Vec<IntVector>> {
    let (m, n) = (a.rows(), a.cols());
    // cols[j] holds column j of A·U followed by column j of U.
    let mut cols: Vec<Vec<i128>> = (0..n)
        .map(|j| {
            let mut c: Vec<i128> = (0..m).map(|r| a.get(r, j) as i128).collect();
            c.extend((0..n).map(|i| (i == j) as i128));
            c
        })
        .collect();

    let mut pivot = 0;
    for r in 0..m {
        if pivot == n {
            break;
        }
        // smallest nonzero |entry| in row r among the unpivoted columns
        while let Some(best) = (pivot..n)
            .filter(|&j| cols[j][r] != 0)
            .min_by_key(|&j| (cols[j][r].unsigned_abs(), j))
        {
            cols.swap(pivot, best);
            let mut done = true;
            for j in pivot + 1..n {
                if cols[j][r] != 0 {
                    let q = cols[j][r] / cols[pivot][r];
                    let (head, tail) = cols.split_at_mut(j);
                    for (dst, src) in tail[0].iter_mut().zip(&head[pivot]) {
                        *dst = dst
                            .checked_sub(q.checked_mul(*src).ok_or(Error::Overflow("kernel elimination"))?)
                            .ok_or(Error::Overflow("kernel elimination"))?;
                    }
                    if tail[0][r] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                pivot += 1;
                break;
            }
        }
    }

    cols[pivot..]
        .iter()
        .map(|c| {
            c[m..]
                .iter()
                .map(|&v| i64::try_from(v).map_err(|_| Error::Overflow("kernel basis")))
                .collect::<Result<Vec<_>>>()
                .map(IntVector::from)
        })
        .collect()
}
