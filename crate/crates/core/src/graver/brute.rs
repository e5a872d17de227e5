use crate::error::{Error, Result};
use crate::lattice_points::collect_points;
use crate::linalg::{conformal_leq_unchecked, IntMatrix, IntVector};

/// All nonzero `z` with `Az = 0` and entries in `[-radius, radius]`.
pub fn kernel_points_in_box(a: &IntMatrix, radius: i64, cap: u64) -> Result<Vec<Vec<i64>>> {
    if radius < 1 {
        return Err(Error::invalid(format!("radius must be positive, got {radius}")));
    }
    let n = a.cols();
    let zeros = vec![0; a.rows()];
    let mut pts = collect_points(a, &zeros, &vec![-radius; n], &vec![radius; n], cap, "kernel box points")?;
    pts.retain(|p| p.iter().any(|&v| v != 0));
    Ok(pts)
}

/// The ⊑-minimal nonzero kernel vectors with entries in `[-radius, radius]`,
/// canonical half, sorted. Coincides with the Graver basis once `radius`
/// dominates every entry of it.
///
/// Candidates are scanned by increasing 1-norm, so anything strictly below a
/// candidate has already been seen; a candidate is kept when nothing kept so
/// far lies below it. Every vector below a point in the box is in the box.
pub fn brute_force_graver(a: &IntMatrix, radius: i64, cap: u64) -> Result<Vec<IntVector>> {
    let mut pts = kernel_points_in_box(a, radius, cap)?;
    let norm = |p: &Vec<i64>| p.iter().map(|v| v.unsigned_abs()).sum::<u64>();
    pts.sort_by(|p, q| norm(p).cmp(&norm(q)).then(p.cmp(q)));
    let mut minimal: Vec<Vec<i64>> = Vec::new();
    for z in pts {
        if !minimal.iter().any(|g| conformal_leq_unchecked(g, &z)) {
            minimal.push(z);
        }
    }
    let mut out: Vec<IntVector> = minimal
        .into_iter()
        .map(IntVector::from)
        .filter(IntVector::is_canonical)
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(rows: &[Vec<i64>], cols: usize, radius: i64) -> Vec<Vec<i64>> {
        let a = IntMatrix::from_rows_with_cols(rows, cols).unwrap();
        brute_force_graver(&a, radius, 1_000_000)
            .unwrap()
            .into_iter()
            .map(IntVector::into_inner)
            .collect()
    }

    #[test]
    fn examples() {
        assert_eq!(run(&[vec![1, 1]], 2, 3), vec![vec![1, -1]]);
        assert_eq!(run(&[vec![0, 0]], 2, 1), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(run(&[vec![2, -2]], 2, 2), vec![vec![1, 1]]);
        assert_eq!(run(&[vec![1, -1]], 2, 5), vec![vec![1, 1]]);
    }

    #[test]
    fn radius_truncates() {
        // G((2 3)) = ±{(3,-2)}; a radius of 2 cannot see it.
        assert!(run(&[vec![2, 3]], 2, 2).is_empty());
        assert_eq!(run(&[vec![2, 3]], 2, 3), vec![vec![3, -2]]);
    }

    #[test]
    fn cap_and_radius_errors() {
        let a = IntMatrix::zeros(1, 4);
        assert!(matches!(brute_force_graver(&a, 2, 10), Err(Error::CapExceeded { .. })));
        assert!(brute_force_graver(&a, 0, 10).is_err());
    }
}
