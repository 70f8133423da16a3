//! Characteristic polynomials (Berkowitz) and fraction-free elimination
//! (Bareiss) over the integers, lifted to rational matrices by clearing
//! denominators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, Zero};

use super::matrix::ExactMatrix;
use super::poly::{IntPolynomial, Polynomial, RatPolynomial};
use crate::error::{Error, Result};

/// Ascending coefficients of `det(xI - A)` by the Berkowitz recurrence.
/// Division free; `None` only if a checked operation overflows.
fn berkowitz<T>(a: &[Vec<T>]) -> Option<Vec<T>>
where
    T: Clone + Zero + One + CheckedAdd + CheckedSub + CheckedMul,
{
    let n = a.len();
    // descending coefficients of the charpoly of the leading k x k block
    let mut p: Vec<T> = vec![T::one()];
    for k in 0..n {
        // first column of the Toeplitz factor: 1, -a_kk, -r c, -r A c, ...
        let mut t: Vec<T> = Vec::with_capacity(k + 2);
        t.push(T::one());
        t.push(T::zero().checked_sub(&a[k][k])?);
        let mut v: Vec<T> = (0..k).map(|i| a[i][k].clone()).collect();
        for step in 0..k {
            let mut dot = T::zero();
            for (j, vj) in v.iter().enumerate() {
                dot = dot.checked_add(&a[k][j].checked_mul(vj)?)?;
            }
            t.push(T::zero().checked_sub(&dot)?);
            if step + 1 < k {
                let mut w = Vec::with_capacity(k);
                for i in 0..k {
                    let mut acc = T::zero();
                    for (j, vj) in v.iter().enumerate() {
                        if !a[i][j].is_zero() {
                            acc = acc.checked_add(&a[i][j].checked_mul(vj)?)?;
                        }
                    }
                    w.push(acc);
                }
                v = w;
            }
        }
        let mut next = Vec::with_capacity(k + 2);
        for i in 0..k + 2 {
            let mut acc = T::zero();
            for m in 0..=i.min(k) {
                if i - m < t.len() && !p[m].is_zero() {
                    acc = acc.checked_add(&t[i - m].checked_mul(&p[m])?)?;
                }
            }
            next.push(acc);
        }
        p = next;
    }
    p.reverse();
    Some(p)
}

/// Characteristic polynomial of a square integer matrix.
pub fn charpoly_integer(rows: &[Vec<BigInt>]) -> Result<IntPolynomial> {
    check_square_rows(rows)?;
    Ok(Polynomial::new(
        berkowitz(rows).expect("BigInt arithmetic cannot overflow"),
    ))
}

/// Characteristic polynomial of a small integer matrix given row-major,
/// computed in `i128` with a `BigInt` fallback on overflow.
pub fn charpoly_small(n: usize, entries: &[i64]) -> IntPolynomial {
    assert_eq!(entries.len(), n * n);
    let rows: Vec<Vec<i128>> = entries
        .chunks(n.max(1))
        .take(n)
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    match berkowitz(&rows) {
        Some(c) => Polynomial::new(c.into_iter().map(BigInt::from).collect()),
        None => {
            let big: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            Polynomial::new(berkowitz(&big).expect("BigInt arithmetic cannot overflow"))
        }
    }
}

/// `det(xI - m)`, exact. Rational matrices are scaled by a common
/// denominator `d` and the coefficients of the integer charpoly rescaled by
/// powers of `d`.
pub fn charpoly(m: &ExactMatrix) -> Result<RatPolynomial> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "charpoly of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let d = m.common_denominator();
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|r| {
            m.row_vec(r)
                .iter()
                .map(|x| x.numer() * (&d / x.denom()))
                .collect()
        })
        .collect();
    let scaled = berkowitz(&rows).expect("BigInt arithmetic cannot overflow");
    // charpoly of d*M is d^n p(x/d): coefficient k carries d^(n-k)
    let coeffs = scaled
        .into_iter()
        .enumerate()
        .map(|(k, c)| BigRational::new(c, num_traits::pow(d.clone(), n - k)))
        .collect();
    Ok(Polynomial::new(coeffs))
}

fn check_square_rows<T>(rows: &[Vec<T>]) -> Result<()> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Shape("matrix is not square".into()));
    }
    Ok(())
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn determinant_integer(rows: &[Vec<BigInt>]) -> Result<BigInt> {
    check_square_rows(rows)?;
    let mut a = rows.to_vec();
    let n = a.len();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in rest.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let v = pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = v.div_floor(&prev);
            }
            row[k] = BigInt::zero();
        }
        prev = pivot.clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Exact determinant. Each row is cleared to integers first.
pub fn determinant(m: &ExactMatrix) -> Result<BigRational> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "determinant of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let (rows, scales) = m.integer_rows();
    let det = determinant_integer(&rows)?;
    let scale = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
    Ok(BigRational::new(det, scale))
}

/// Fraction-free row echelon form. Returns the reduced rows (only the first
/// `pivots.len()` are nonzero) and the pivot columns.
pub(crate) fn echelon(mut a: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let m = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[col];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[col]);
            if lead.is_zero() {
                if prev.is_one() {
                    for x in row[col + 1..].iter_mut() {
                        if !x.is_zero() {
                            *x *= pivot;
                        }
                    }
                } else {
                    for x in row[col + 1..].iter_mut() {
                        if !x.is_zero() {
                            *x = (&*x * pivot).div_floor(&prev);
                        }
                    }
                }
                continue;
            }
            for j in col + 1..cols {
                let v = pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v.div_floor(&prev) };
            }
        }
        prev = pivot.clone();
        pivots.push(col);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &ExactMatrix) -> usize {
    let (rows, _) = m.integer_rows();
    echelon(rows, m.cols()).1.len()
}

/// Integer basis of `{x : A x = 0}` for an integer matrix with `cols`
/// columns; each vector is primitive (entries with gcd 1) and its leading
/// free coordinate is positive.
pub(crate) fn nullspace_integer(rows: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    let (ech, pivots) = echelon(rows, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut x: Vec<BigRational> = vec![BigRational::zero(); cols];
        x[free] = BigRational::one();
        for (r, &pc) in pivots.iter().enumerate().rev() {
            let row = &ech[r];
            let mut acc = BigRational::zero();
            for j in pc + 1..cols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    acc += &x[j] * BigRational::from_integer(row[j].clone());
                }
            }
            x[pc] = -acc / BigRational::from_integer(row[pc].clone());
        }
        basis.push(primitive(&x));
    }
    basis
}

/// Scales a nonzero rational vector to a primitive integer vector.
pub(crate) fn primitive(x: &[BigRational]) -> Vec<BigInt> {
    let den = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = x.iter().map(|v| v.numer() * (&den / v.denom())).collect();
    primitive_integer(ints)
}

pub(crate) fn primitive_integer(mut ints: Vec<BigInt>) -> Vec<BigInt> {
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in ints.iter_mut() {
            *v /= &g;
        }
    }
    if ints.iter().find(|v| !v.is_zero()).is_some_and(Signed::is_negative) {
        for v in ints.iter_mut() {
            *v = -&*v;
        }
    }
    ints
}

/// Basis of the right nullspace as column vectors.
pub fn nullspace(m: &ExactMatrix) -> Vec<ExactMatrix> {
    let (rows, _) = m.integer_rows();
    nullspace_integer(rows, m.cols())
        .into_iter()
        .map(|v| ExactMatrix::column(v.into_iter().map(BigRational::from_integer).collect()))
        .collect()
}
