//! Exact Gaussian elimination over any [`SigmaField`] element type.

use crate::error::Error;
use crate::sigma::SigmaField;

/// Determinant of a square matrix. Pivoting scans for the first nonzero
/// entry in each column.
pub fn determinant<F: SigmaField>(field: &F, mat: &[Vec<F::Elem>]) -> F::Elem {
    let n = mat.len();
    assert!(
        mat.iter().all(|row| row.len() == n),
        "determinant needs a square matrix"
    );
    if n == 0 {
        return field.one();
    }
    let mut m = mat.to_vec();
    let mut det = field.one();
    let mut negate = false;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !field.is_zero(&m[r][col])) else {
            return field.zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            negate = !negate;
        }
        let pv = m[col][col].clone();
        det = field.mul(&det, &pv);
        let pinv = field.inv(&pv).expect("pivot is nonzero");
        for r in col + 1..n {
            if field.is_zero(&m[r][col]) {
                continue;
            }
            let factor = field.mul(&m[r][col], &pinv);
            for c in col..n {
                let sub = field.mul(&factor, &m[col][c]);
                m[r][c] = field.sub(&m[r][c], &sub);
            }
        }
    }
    if negate {
        det = field.neg(&det);
    }
    det
}

/// Unique solution x of mat * x = rhs for a square system, or
/// [`Error::SingularSystem`] when the matrix is singular.
pub fn solve<F: SigmaField>(
    field: &F,
    mat: &[Vec<F::Elem>],
    rhs: &[F::Elem],
) -> Result<Vec<F::Elem>, Error> {
    let n = mat.len();
    assert_eq!(rhs.len(), n, "system dimensions disagree");
    assert!(
        mat.iter().all(|row| row.len() == n),
        "solve needs a square matrix"
    );
    let mut m = mat.to_vec();
    let mut b = rhs.to_vec();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !field.is_zero(&m[r][col]))
            .ok_or(Error::SingularSystem)?;
        m.swap(pivot, col);
        b.swap(pivot, col);
        let pinv = field.inv(&m[col][col])?;
        for c in col..n {
            m[col][c] = field.mul(&m[col][c], &pinv);
        }
        b[col] = field.mul(&b[col], &pinv);
        for r in 0..n {
            if r == col || field.is_zero(&m[r][col]) {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..n {
                let sub = field.mul(&factor, &m[col][c]);
                m[r][c] = field.sub(&m[r][c], &sub);
            }
            let sub = field.mul(&factor, &b[col]);
            b[r] = field.sub(&b[r], &sub);
        }
    }
    Ok(b)
}
