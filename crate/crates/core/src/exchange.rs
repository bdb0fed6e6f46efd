//! Exact integer exchange matrices and quasi-Cartan matrices.
//!
//! Indices are 0-based in the API and 1-based in the text and JSON formats.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::diagram::{chordless_cycles, Diagram};
use crate::error::{parse_err, Error, Result};
use crate::linalg;

/// A skew-symmetrisable integer matrix together with its minimal symmetriser.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    entries: Vec<Vec<i64>>,
    symmetriser: Vec<i64>,
}

/// A symmetrisable integer matrix with 2 on the diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuasiCartanMatrix {
    entries: Vec<Vec<i64>>,
    symmetriser: Vec<i64>,
}

/// JSON shape shared by both matrix kinds.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub rows: Vec<Vec<i64>>,
}

fn check_square(entries: &[Vec<i64>]) -> Result<usize> {
    let n = entries.len();
    for (i, row) in entries.iter().enumerate() {
        if row.len() != n {
            return Err(parse_err(i + 1, format!("row has {} entries, expected {n}", row.len())));
        }
    }
    Ok(n)
}

/// Solves `d_i M_ij = sign * d_j M_ji` for positive integers `d` by ratio
/// propagation over the graph of nonzero entries. Each connected component is
/// scaled to coprime integers, which gives the componentwise-minimal witness.
fn propagate_symmetriser(entries: &[Vec<i64>], sign: i64) -> Option<Vec<i64>> {
    let n = entries.len();
    let mut ratio: Vec<Option<Ratio<i64>>> = vec![None; n];
    let mut component = vec![usize::MAX; n];
    let mut out = vec![0i64; n];
    for root in 0..n {
        if ratio[root].is_some() {
            continue;
        }
        ratio[root] = Some(Ratio::from_integer(1));
        component[root] = root;
        let mut members = vec![root];
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            let di = ratio[i].unwrap();
            for j in 0..n {
                if j == i {
                    continue;
                }
                let (a, b) = (entries[i][j], entries[j][i]);
                if a == 0 && b == 0 {
                    continue;
                }
                if a == 0 || b == 0 {
                    return None;
                }
                // d_j = sign * d_i * a / b
                let dj = di * Ratio::new(sign * a, b);
                if dj <= Ratio::from_integer(0) {
                    return None;
                }
                match ratio[j] {
                    Some(existing) if existing != dj => return None,
                    Some(_) => {}
                    None => {
                        ratio[j] = Some(dj);
                        component[j] = root;
                        members.push(j);
                        stack.push(j);
                    }
                }
            }
        }
        let lcm = members
            .iter()
            .fold(1i64, |acc, &m| acc.lcm(ratio[m].unwrap().denom()));
        let scaled: Vec<i64> = members
            .iter()
            .map(|&m| {
                let r = ratio[m].unwrap();
                r.numer() * (lcm / r.denom())
            })
            .collect();
        let g = scaled.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        for (&m, &v) in members.iter().zip(&scaled) {
            out[m] = v / g;
        }
    }
    Some(out)
}

/// Componentwise-minimal positive `d` with `d_i B_ij = -d_j B_ji`, or `None`
/// when the matrix is not skew-symmetrisable.
pub fn find_symmetriser(entries: &[Vec<i64>]) -> Option<Vec<i64>> {
    if check_square(entries).is_err() || entries.iter().enumerate().any(|(i, r)| r[i] != 0) {
        return None;
    }
    propagate_symmetriser(entries, -1)
}

impl ExchangeMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        check_square(&entries)?;
        let symmetriser = find_symmetriser(&entries).ok_or(Error::NotSkewSymmetrisable)?;
        Ok(Self {
            entries,
            symmetriser,
        })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            entries: vec![vec![0; n]; n],
            symmetriser: vec![1; n],
        }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn symmetriser(&self) -> &[i64] {
        &self.symmetriser
    }

    fn check_index(&self, k: usize) -> Result<()> {
        if k >= self.rank() {
            Err(Error::IndexOutOfRange {
                index: k + 1,
                rank: self.rank(),
            })
        } else {
            Ok(())
        }
    }

    /// Matrix mutation at `k`. The symmetriser carries over unchanged.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        self.check_index(k)?;
        let n = self.rank();
        let b = &self.entries;
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                out[i][j] = if i == k || j == k {
                    b[i][j].checked_neg().ok_or(Error::Overflow)?
                } else {
                    let left = b[i][k].abs().checked_mul(b[k][j]).ok_or(Error::Overflow)?;
                    let right = b[i][k].checked_mul(b[k][j].abs()).ok_or(Error::Overflow)?;
                    let sum = left.checked_add(right).ok_or(Error::Overflow)?;
                    debug_assert!(sum % 2 == 0);
                    b[i][j].checked_add(sum / 2).ok_or(Error::Overflow)?
                };
            }
        }
        Ok(Self {
            entries: out,
            symmetriser: self.symmetriser.clone(),
        })
    }

    /// Mutates along a sequence of 0-based vertices.
    pub fn mutate_sequence(&self, ks: &[usize]) -> Result<Self> {
        ks.iter().try_fold(self.clone(), |b, &k| b.mutate(k))
    }

    pub fn cartan_counterpart(&self) -> QuasiCartanMatrix {
        let n = self.rank();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { 2 } else { -self.entries[i][j].abs() })
                    .collect()
            })
            .collect();
        QuasiCartanMatrix {
            entries,
            symmetriser: self.symmetriser.clone(),
        }
    }

    /// `|B_ij B_ji| <= 3` for every pair.
    pub fn is_two_finite(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                (self.entries[i][j] as i128 * self.entries[j][i] as i128).abs() <= 3
            })
        })
    }

    /// Simultaneous permutation of rows and columns: entry `(p[i], p[j])` of
    /// the result is entry `(i, j)` of `self`.
    pub fn permute(&self, p: &[usize]) -> Result<Self> {
        let n = self.rank();
        if p.len() != n {
            return Err(Error::RankMismatch {
                left: p.len(),
                right: n,
            });
        }
        let mut entries = vec![vec![0; n]; n];
        let mut symmetriser = vec![0; n];
        for i in 0..n {
            symmetriser[p[i]] = self.symmetriser[i];
            for j in 0..n {
                entries[p[i]][p[j]] = self.entries[i][j];
            }
        }
        Ok(Self {
            entries,
            symmetriser,
        })
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            n: self.rank(),
            rows: self.entries.clone(),
        }
    }

    /// Accepts the text format or the JSON object format.
    pub fn parse(text: &str) -> Result<Self> {
        Self::new(parse_matrix_rows(text)?)
    }
}

impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, &self.entries)
    }
}

fn write_rows(f: &mut fmt::Formatter<'_>, rows: &[Vec<i64>]) -> fmt::Result {
    writeln!(f, "{}", rows.len())?;
    for row in rows {
        let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        writeln!(f, "{}", line.join(" "))?;
    }
    Ok(())
}

/// Parses either the line-oriented text format or `{ "n": .., "rows": .. }`.
pub fn parse_matrix_rows(text: &str) -> Result<Vec<Vec<i64>>> {
    if text.trim_start().starts_with('{') {
        let json: MatrixJson =
            serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
        if json.rows.len() != json.n || json.rows.iter().any(|r| r.len() != json.n) {
            return Err(parse_err(1, format!("rows do not form a {0}x{0} matrix", json.n)));
        }
        return Ok(json.rows);
    }
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let n: usize = header
        .parse()
        .map_err(|_| parse_err(first, format!("expected rank, found `{header}`")))?;
    let mut rows = Vec::with_capacity(n);
    for (line, content) in lines {
        let row: Vec<i64> = content
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| parse_err(line, format!("bad integer `{t}`"))))
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(parse_err(line, format!("expected {n} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(parse_err(first, format!("expected {n} rows, found {}", rows.len())));
    }
    Ok(rows)
}

impl QuasiCartanMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        check_square(&entries)?;
        for (i, row) in entries.iter().enumerate() {
            if row[i] != 2 {
                return Err(Error::BadDiagonal {
                    index: i + 1,
                    value: row[i],
                    expected: 2,
                });
            }
        }
        let symmetriser = propagate_symmetriser(&entries, 1).ok_or(Error::NotSymmetrisable)?;
        Ok(Self {
            entries,
            symmetriser,
        })
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn symmetriser(&self) -> &[i64] {
        &self.symmetriser
    }

    /// `|A_ij| = |B_ij|` for all `i != j`.
    pub fn is_companion_of(&self, b: &ExchangeMatrix) -> Result<bool> {
        if self.rank() != b.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: b.rank(),
            });
        }
        let n = self.rank();
        Ok((0..n).all(|i| (0..n).all(|j| i == j || self.get(i, j).abs() == b.get(i, j).abs())))
    }

    /// The symmetric matrix `DA` for the cached symmetriser.
    pub fn symmetrised(&self) -> Vec<Vec<i64>> {
        self.entries
            .iter()
            .zip(&self.symmetriser)
            .map(|(row, &d)| row.iter().map(|&a| d * a).collect())
            .collect()
    }

    /// `DA` positive definite, by leading principal minors.
    pub fn is_positive(&self) -> Result<bool> {
        let minors = linalg::leading_principal_minors(&self.symmetrised())?;
        Ok(minors.len() == self.rank() && minors.iter().all(|&m| m > 0))
    }

    /// For every chordless cycle `i_0 -> ... -> i_{d-1} -> i_0` of `diagram`,
    /// the product of `-A_{i_a, i_{a+1}}` is negative.
    pub fn cycle_sign_condition(&self, diagram: &Diagram) -> bool {
        chordless_cycles(diagram).iter().all(|cycle| {
            let v = &cycle.vertices;
            let d = v.len();
            let negatives = (0..d).filter(|&a| -self.get(v[a], v[(a + 1) % d]) < 0).count();
            let has_zero = (0..d).any(|a| self.get(v[a], v[(a + 1) % d]) == 0);
            !has_zero && negatives % 2 == 1
        })
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            n: self.rank(),
            rows: self.entries.clone(),
        }
    }
}

impl fmt::Display for QuasiCartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, &self.entries)
    }
}
