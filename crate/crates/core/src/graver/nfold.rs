use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// The n-fold product of the bimatrix `(top; bottom)`:
///
/// ```text
/// top     top     ...  top
/// bottom  0       ...  0
/// 0       bottom  ...  0
/// ...
/// 0       0       ...  bottom
/// ```
///
/// of shape `(r + n·s) × n·t` for `top: r×t`, `bottom: s×t`.
pub fn nfold_product(top: &IntMatrix, bottom: &IntMatrix, n: usize) -> Result<IntMatrix> {
    if top.cols() != bottom.cols() {
        return Err(Error::dim(format!(
            "bimatrix blocks have {} and {} columns",
            top.cols(),
            bottom.cols()
        )));
    }
    if n == 0 {
        return Err(Error::invalid("n-fold product needs n >= 1"));
    }
    let (r, s, t) = (top.rows(), bottom.rows(), top.cols());
    let mut out = IntMatrix::zeros(r + n * s, n * t);
    for block in 0..n {
        for i in 0..r {
            for j in 0..t {
                out.set(i, block * t + j, top.get(i, j));
            }
        }
        for i in 0..s {
            for j in 0..t {
                out.set(r + block * s + i, block * t + j, bottom.get(i, j));
            }
        }
    }
    Ok(out)
}
