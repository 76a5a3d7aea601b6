//! Determinants and small dense linear algebra over exact rings and fields.

use std::ops::{Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{ExactError, Field, Poly, Rational, UniPoly};

/// Rings with exact division: `a.div_exact(b)` is only called when `b | a`.
pub trait ExactDiv: Clone + Zero + One + Neg<Output = Self> + PartialEq
where
    for<'a> &'a Self: Mul<&'a Self, Output = Self> + Sub<&'a Self, Output = Self>,
{
    fn exact_quotient(&self, d: &Self) -> Self;
}

impl<F: Field> ExactDiv for Poly<F> {
    fn exact_quotient(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "Bareiss division was not exact");
        q
    }
}

impl ExactDiv for Rational {
    fn exact_quotient(&self, d: &Self) -> Self {
        self / d
    }
}

fn check_square<T>(m: &[Vec<T>]) -> Result<usize, ExactError> {
    let n = m.len();
    if n == 0 {
        return Err(ExactError::EmptyMatrix);
    }
    for (row, r) in m.iter().enumerate() {
        if r.len() != n {
            return Err(ExactError::NonSquare { rows: n, row, len: r.len() });
        }
    }
    Ok(n)
}

/// Fraction-free (Bareiss) determinant.
///
/// Every intermediate entry is itself a minor of the input, so entries never
/// leave the ring and the divisions by the previous pivot are exact.
pub fn bareiss_det<T>(matrix: &[Vec<T>]) -> Result<T, ExactError>
where
    T: ExactDiv,
    for<'a> &'a T: Mul<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    let n = check_square(matrix)?;
    let mut m: Vec<Vec<T>> = matrix.to_vec();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_quotient(&prev);
            }
            m[i][k] = T::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Exact determinant of a square matrix of polynomials in `t`.
pub fn poly_det(matrix: &[Vec<UniPoly>]) -> Result<UniPoly, ExactError> {
    bareiss_det(matrix)
}

/// Determinant over a field by Gaussian elimination.
pub fn field_det<F: Field>(matrix: &[Vec<F>]) -> Result<F, ExactError> {
    let n = check_square(matrix)?;
    let mut m = matrix.to_vec();
    let mut det = F::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Ok(F::zero());
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det = det * pivot.clone();
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = m[i][k].clone() / pivot.clone();
            for j in k..n {
                let v = m[i][j].clone() - f.clone() * m[k][j].clone();
                m[i][j] = v;
            }
        }
    }
    Ok(det)
}

/// Inverse of a square matrix over a field; `None` when singular.
pub fn invert_matrix<F: Field>(matrix: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = check_square(matrix).ok()?;
    let mut a: Vec<Vec<F>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(p, k);
        let inv = F::one() / a[k][k].clone();
        for v in a[k].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..2 * n {
                let v = a[i][j].clone() - f.clone() * a[k][j].clone();
                a[i][j] = v;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of the right null space `{x : A x = 0}` of a `rows × cols` matrix.
///
/// Vectors come out of reduced row echelon form, one per free column, in
/// increasing order of the free column.
pub fn nullspace<F: Field>(rows: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let mut a: Vec<Vec<F>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = F::one() / a[r][c].clone();
        for v in a[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..a.len() {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..cols {
                let v = a[i][j].clone() - f.clone() * a[r][j].clone();
                a[i][j] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}
