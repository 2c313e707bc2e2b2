use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::filtration::Filtration;
use crate::ring::length_of_quotient;

/// The Hilbert-Samuel function n ↦ λ(R/I_n) tabulated on [0, n_max],
/// with H(n) = 0 for n <= 0 by the I_n = R convention.
#[derive(Debug, Clone)]
pub struct HilbertTable {
    filtration: Arc<Filtration>,
    values: Vec<u64>,
}

/// The exact integers e_0..e_d of the Hilbert polynomial
/// P(n) = sum_i (-1)^i e_i binom(n+d-1-i, d-i), plus the postulation index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertCoefficients {
    pub d: usize,
    pub e: Vec<i64>,
    /// Least n with H(n) = P(n) from n onward through the tabulated range.
    pub postulation: i64,
}

/// Generalized binomial coefficient binom(n, k) as a polynomial in n;
/// defined for negative n as well.
pub fn gbinom(n: i64, k: usize) -> i64 {
    let mut num: i128 = 1;
    for i in 0..k {
        num *= n as i128 - i as i128;
    }
    let mut den: i128 = 1;
    for i in 1..=k {
        den *= i as i128;
    }
    i64::try_from(num / den).expect("binomial within i64 range")
}

pub fn hilbert_table(filtration: &Arc<Filtration>, n_max: i64) -> Result<HilbertTable> {
    let d = filtration.ring().dim();
    assert!(n_max >= d as i64 + 4, "table range must cover d + 4 points");
    let mut values = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let len = length_of_quotient(&filtration.term(n)?)?
            .finite()
            .map_err(|_| Error::NotMPrimary)?;
        values.push(len);
    }
    Ok(HilbertTable { filtration: filtration.clone(), values })
}

impl HilbertTable {
    pub fn filtration(&self) -> &Arc<Filtration> {
        &self.filtration
    }

    pub fn n_max(&self) -> i64 {
        self.values.len() as i64 - 1
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// H(n), zero for n <= 0; errors beyond the tabulated range.
    pub fn value(&self, n: i64) -> Result<i64> {
        if n <= 0 {
            Ok(0)
        } else if n <= self.n_max() {
            Ok(self.values[n as usize] as i64)
        } else {
            Err(Error::RangeExceeded)
        }
    }

    /// k-th finite difference column of the table, for display.
    pub fn differences(&self, k: usize) -> Vec<i64> {
        let mut col: Vec<i64> = self.values.iter().map(|&v| v as i64).collect();
        for _ in 0..k {
            col = col.windows(2).map(|w| w[1] - w[0]).collect();
        }
        col
    }
}

/// Extract e_0..e_d by an exact rational solve in the binomial basis on the
/// trailing d+1 table points, guarded by 3 preceding points that must agree
/// with the fitted polynomial.
pub fn fit_coefficients(table: &HilbertTable) -> Result<HilbertCoefficients> {
    let d = table.filtration().ring().dim();
    let n_max = table.n_max();
    if n_max < d as i64 + 4 {
        return Err(Error::NoStabilization);
    }

    // Rows n = n_max - d .. n_max; unknowns s_i = (-1)^i e_i.
    let mut matrix: Vec<Vec<BigRational>> = Vec::new();
    for n in (n_max - d as i64)..=n_max {
        let mut row: Vec<BigRational> = (0..=d)
            .map(|i| BigRational::from(BigInt::from(gbinom(n + d as i64 - 1 - i as i64, d - i))))
            .collect();
        row.push(BigRational::from(BigInt::from(table.value(n)?)));
        matrix.push(row);
    }
    let solution = solve_exact(&mut matrix).ok_or(Error::NoStabilization)?;

    let mut e = Vec::with_capacity(d + 1);
    for (i, s) in solution.iter().enumerate() {
        if !s.is_integer() {
            return Err(Error::NoStabilization);
        }
        let signed = if i % 2 == 0 { s.clone() } else { -s.clone() };
        let as_int = signed.to_integer();
        let val = i64::try_from(&as_int).map_err(|_| Error::NoStabilization)?;
        e.push(val);
    }
    let coeffs = HilbertCoefficients { d, e, postulation: 0 };

    // Guard window: three points before the fit rows must already match.
    for n in (n_max - d as i64 - 3)..(n_max - d as i64) {
        if hilbert_poly_eval(&coeffs, n) != table.value(n)? {
            return Err(Error::NoStabilization);
        }
    }
    // Postulation index: least n from which H = P holds through n_max.
    let mut postulation = n_max - d as i64 - 3;
    while postulation > 0 && hilbert_poly_eval(&coeffs, postulation - 1) == table.value(postulation - 1)? {
        postulation -= 1;
    }
    Ok(HilbertCoefficients { postulation, ..coeffs })
}

/// Gaussian elimination over exact rationals; None if singular.
fn solve_exact(matrix: &mut [Vec<BigRational>]) -> Option<Vec<BigRational>> {
    let n = matrix.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !matrix[r][col].is_zero())?;
        matrix.swap(col, pivot);
        let p = matrix[col][col].clone();
        for entry in matrix[col][col..].iter_mut() {
            *entry /= p.clone();
        }
        for r in 0..n {
            if r != col && !matrix[r][col].is_zero() {
                let factor = matrix[r][col].clone();
                for c in col..=n {
                    let delta = factor.clone() * matrix[col][c].clone();
                    matrix[r][c] -= delta;
                }
            }
        }
    }
    Some((0..n).map(|r| matrix[r][n].clone()).collect())
}

/// Exact value of the Hilbert polynomial at any integer, including
/// nonpositive arguments (generalized binomials).
pub fn hilbert_poly_eval(coeffs: &HilbertCoefficients, n: i64) -> i64 {
    let d = coeffs.d;
    let mut acc: i64 = 0;
    for (i, &e) in coeffs.e.iter().enumerate() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        acc += sign * e * gbinom(n + d as i64 - 1 - i as i64, d - i);
    }
    acc
}

/// The d-th finite difference of P - H at n, with H clamped to 0 at
/// nonpositive arguments and P evaluated exactly everywhere. This is the
/// Euler characteristic of the n-th Koszul subcomplex.
pub fn delta_pd_minus_h(table: &HilbertTable, coeffs: &HilbertCoefficients, n: i64) -> Result<i64> {
    if n < 1 || n > table.n_max() {
        return Err(Error::RangeExceeded);
    }
    let d = coeffs.d;
    let mut acc: i64 = 0;
    for j in 0..=d {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let arg = n - j as i64;
        let diff = hilbert_poly_eval(coeffs, arg) - table.value(arg)?;
        acc += sign * gbinom(d as i64, j) * diff;
    }
    Ok(acc)
}

/// Fit with the spec's retry policy: if the table at `n_max` has not
/// stabilized, double the range once.
pub fn table_and_fit(
    filtration: &Arc<Filtration>,
    n_max: i64,
) -> Result<(HilbertTable, HilbertCoefficients)> {
    let table = hilbert_table(filtration, n_max)?;
    match fit_coefficients(&table) {
        Ok(c) => Ok((table, c)),
        Err(Error::NoStabilization) => {
            let table = hilbert_table(filtration, n_max * 2)?;
            let c = fit_coefficients(&table)?;
            Ok((table, c))
        }
        Err(e) => Err(e),
    }
}
