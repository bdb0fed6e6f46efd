//! Companion bases: `ℤ`-bases of the root lattice made of roots whose
//! matrix `(β_i, β_j∨)` is a quasi-Cartan companion of an exchange matrix.

use std::fmt;

use serde::Serialize;

use crate::diagram::Diagram;
use crate::error::{parse_err, Error, Result};
use crate::exchange::{ExchangeMatrix, QuasiCartanMatrix};
use crate::linalg;
use crate::roots::{RootSystem, RootVector};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CompanionBasis {
    pub vectors: Vec<RootVector>,
}

impl CompanionBasis {
    pub fn simple(system: &RootSystem) -> Self {
        let n = system.rank();
        CompanionBasis {
            vectors: (0..n).map(|i| RootVector::simple(n, i)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn determinant(&self) -> Result<i128> {
        let rows: Vec<Vec<i64>> = self.vectors.iter().map(|v| v.0.clone()).collect();
        linalg::determinant(&rows)
    }

    /// One root per line, as space-separated integers.
    pub fn parse(text: &str) -> Result<Self> {
        let mut vectors: Vec<RootVector> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let coords = line
                .split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|_| parse_err(i + 1, format!("bad integer `{t}`"))))
                .collect::<Result<Vec<_>>>()?;
            if let Some(first) = vectors.first() {
                if first.0.len() != coords.len() {
                    return Err(parse_err(i + 1, "rows have different lengths"));
                }
            }
            vectors.push(RootVector(coords));
        }
        if vectors.iter().any(|v| v.0.len() != vectors.len()) {
            return Err(parse_err(1, "basis must have as many vectors as coordinates"));
        }
        Ok(CompanionBasis { vectors })
    }
}

impl fmt::Display for CompanionBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vectors {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

fn check_basis_rank(system: &RootSystem, basis: &CompanionBasis) -> Result<()> {
    if basis.rank() != system.rank() {
        return Err(Error::RankMismatch {
            left: basis.rank(),
            right: system.rank(),
        });
    }
    Ok(())
}

/// `A_ij = (β_i, β_j∨)`.
pub fn companion_matrix(system: &RootSystem, basis: &CompanionBasis) -> Result<QuasiCartanMatrix> {
    check_basis_rank(system, basis)?;
    let rows = basis
        .vectors
        .iter()
        .map(|bi| basis.vectors.iter().map(|bj| system.copairing_int(bi, bj)).collect())
        .collect::<Result<Vec<Vec<i64>>>>()?;
    QuasiCartanMatrix::new(rows)
}

/// Why a candidate is not a companion basis. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum CompanionFailure {
    NotARoot { index: usize },
    NotUnimodular { determinant: i128 },
    NotCompanion { i: usize, j: usize, a: i64, b: i64 },
}

impl fmt::Display for CompanionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompanionFailure::NotARoot { index } => write!(f, "vector {index} is not a root"),
            CompanionFailure::NotUnimodular { determinant } => {
                write!(f, "determinant {determinant} is not ±1")
            }
            CompanionFailure::NotCompanion { i, j, a, b } => {
                write!(f, "|A_{i}{j}| = {} but |B_{i}{j}| = {}", a.abs(), b.abs())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompanionCheck {
    pub passed: bool,
    pub reason: Option<CompanionFailure>,
}

/// Roots, unimodular, and `|(β_i, β_j∨)| = |B_ij|` off the diagonal, checked in
/// that order.
pub fn is_companion_basis(system: &RootSystem, basis: &CompanionBasis, b: &ExchangeMatrix) -> Result<CompanionCheck> {
    check_basis_rank(system, basis)?;
    if b.rank() != basis.rank() {
        return Err(Error::RankMismatch {
            left: basis.rank(),
            right: b.rank(),
        });
    }
    let fail = |reason| Ok(CompanionCheck {
        passed: false,
        reason: Some(reason),
    });
    if let Some(i) = basis.vectors.iter().position(|v| !system.contains(v)) {
        return fail(CompanionFailure::NotARoot { index: i + 1 });
    }
    let det = basis.determinant()?;
    if det.abs() != 1 {
        return fail(CompanionFailure::NotUnimodular { determinant: det });
    }
    let a = companion_matrix(system, basis)?;
    let n = basis.rank();
    for i in 0..n {
        for j in 0..n {
            if i != j && a.get(i, j).abs() != b.get(i, j).abs() {
                return fail(CompanionFailure::NotCompanion {
                    i: i + 1,
                    j: j + 1,
                    a: a.get(i, j),
                    b: b.get(i, j),
                });
            }
        }
    }
    debug_assert!(a.is_companion_of(b)?);
    Ok(CompanionCheck {
        passed: true,
        reason: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Inward,
    Outward,
}

/// Inward: `β_i -> s_{β_k}(β_i)` when `i -> k` in `g`. Outward: the same
/// when `k -> i`.
pub fn mutate_companion(
    system: &RootSystem,
    basis: &CompanionBasis,
    k: usize,
    g: &Diagram,
    direction: Direction,
) -> Result<CompanionBasis> {
    check_basis_rank(system, basis)?;
    let n = basis.rank();
    if g.rank() != n {
        return Err(Error::RankMismatch { left: n, right: g.rank() });
    }
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k + 1, rank: n });
    }
    let beta_k = &basis.vectors[k];
    let vectors = (0..n)
        .map(|i| {
            let reflect = match direction {
                Direction::Inward => g.weight(i, k) > 0,
                Direction::Outward => g.weight(k, i) > 0,
            };
            if reflect {
                system.reflect(beta_k, &basis.vectors[i])
            } else {
                Ok(basis.vectors[i].clone())
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CompanionBasis { vectors })
}
