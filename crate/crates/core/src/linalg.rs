//! Fraction-free integer elimination.

use crate::error::{Error, Result};

/// Bareiss elimination without pivoting. Returns the leading principal
/// minors `det(M[..k, ..k])` for `k = 1..=n`, stopping after the first zero
/// minor (later minors are not reachable without pivoting).
pub fn leading_principal_minors(rows: &[Vec<i64>]) -> Result<Vec<i128>> {
    let n = rows.len();
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut minors = Vec::with_capacity(n);
    let mut prev: i128 = 1;
    for k in 0..n {
        let pivot = m[k][k];
        minors.push(pivot);
        if pivot == 0 {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = pivot.checked_mul(m[i][j]).ok_or(Error::Overflow)?;
                let b = m[i][k].checked_mul(m[k][j]).ok_or(Error::Overflow)?;
                // exact by Sylvester's identity
                m[i][j] = a.checked_sub(b).ok_or(Error::Overflow)? / prev;
            }
        }
        prev = pivot;
    }
    Ok(minors)
}

/// Exact determinant by Bareiss elimination with row pivoting.
pub fn determinant(rows: &[Vec<i64>]) -> Result<i128> {
    let n = rows.len();
    if n == 0 {
        return Ok(1);
    }
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev: i128 = 1;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        let pivot = m[k][k];
        for i in k + 1..n {
            for j in k + 1..n {
                let a = pivot.checked_mul(m[i][j]).ok_or(Error::Overflow)?;
                let b = m[i][k].checked_mul(m[k][j]).ok_or(Error::Overflow)?;
                m[i][j] = a.checked_sub(b).ok_or(Error::Overflow)? / prev;
            }
            m[i][k] = 0;
        }
        prev = pivot;
    }
    Ok(sign * m[n - 1][n - 1])
}
