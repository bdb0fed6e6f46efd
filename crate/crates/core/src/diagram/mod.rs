//! Weighted oriented diagrams of exchange matrices.

mod canon;
mod class;
mod cycles;
mod validate;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use canon::{canonical_form, canonical_labeling, CanonicalForm, MAX_CANONICAL_RANK};
pub use class::{identify_dynkin_type, mutation_class, MutationClass, DEFAULT_CLASS_CAP};
pub use cycles::{chordless_cycles, ChordlessCycle};
pub use validate::{validate_finite_type_local, Violation, ValidationReport};

use crate::error::{parse_err, Error, Result};
use crate::exchange::ExchangeMatrix;

/// A weighted oriented graph on `0..n` with at most one edge per unordered
/// pair. `weight(i, j) > 0` means an edge `i -> j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    weights: Vec<Vec<u8>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub weight: u8,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramJson {
    pub n: usize,
    /// `[source, target, weight]`, 1-based vertices.
    pub edges: Vec<[usize; 3]>,
}

impl Diagram {
    pub fn empty(n: usize) -> Self {
        Self {
            weights: vec![vec![0; n]; n],
        }
    }

    /// Builds a diagram from 0-based edges, rejecting loops, parallel edges
    /// and zero weights.
    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self> {
        let mut d = Self::empty(n);
        for e in edges {
            if e.source >= n || e.target >= n {
                return Err(Error::IndexOutOfRange {
                    index: e.source.max(e.target) + 1,
                    rank: n,
                });
            }
            if e.source == e.target {
                return Err(Error::InvalidDiagram(format!("self-loop at {}", e.source + 1)));
            }
            if e.weight == 0 {
                return Err(Error::InvalidDiagram(format!(
                    "zero weight on {} -> {}",
                    e.source + 1,
                    e.target + 1
                )));
            }
            if d.weights[e.source][e.target] != 0 || d.weights[e.target][e.source] != 0 {
                return Err(Error::InvalidDiagram(format!(
                    "parallel edge between {} and {}",
                    e.source + 1,
                    e.target + 1
                )));
            }
            d.weights[e.source][e.target] = e.weight;
        }
        Ok(d)
    }

    /// Convenience constructor from `(source, target, weight)` triples, 0-based.
    pub fn from_triples(n: usize, triples: &[(usize, usize, u8)]) -> Result<Self> {
        let edges: Vec<Edge> = triples
            .iter()
            .map(|&(source, target, weight)| Edge {
                source,
                target,
                weight,
            })
            .collect();
        Self::from_edges(n, &edges)
    }

    /// `Γ(B)`: an edge `i -> j` of weight `|B_ij B_ji|` whenever `B_ij > 0`.
    pub fn of(b: &ExchangeMatrix) -> Self {
        let n = b.rank();
        let mut d = Self::empty(n);
        for i in 0..n {
            for j in 0..n {
                if b.get(i, j) > 0 {
                    let w = (b.get(i, j) * b.get(j, i)).unsigned_abs();
                    d.weights[i][j] = w.min(u8::MAX as u64) as u8;
                }
            }
        }
        d
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    /// Weight of the edge `i -> j`, zero when absent.
    pub fn weight(&self, i: usize, j: usize) -> u8 {
        self.weights[i][j]
    }

    /// Weight of the edge between `i` and `j` in either direction.
    pub fn undirected_weight(&self, i: usize, j: usize) -> u8 {
        self.weights[i][j].max(self.weights[j][i])
    }

    pub fn connected(&self, i: usize, j: usize) -> bool {
        self.undirected_weight(i, j) > 0
    }

    pub fn edges(&self) -> Vec<Edge> {
        let n = self.rank();
        let mut out = Vec::new();
        for source in 0..n {
            for target in 0..n {
                let weight = self.weights[source][target];
                if weight > 0 {
                    out.push(Edge {
                        source,
                        target,
                        weight,
                    });
                }
            }
        }
        out
    }

    pub fn neighbours(&self, k: usize) -> Vec<usize> {
        (0..self.rank()).filter(|&j| self.connected(k, j)).collect()
    }

    pub fn in_neighbours(&self, k: usize) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.weights[i][k] > 0).collect()
    }

    pub fn out_neighbours(&self, k: usize) -> Vec<usize> {
        (0..self.rank()).filter(|&j| self.weights[k][j] > 0).collect()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.rank();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in self.neighbours(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// All weights at most 3.
    pub fn is_two_finite(&self) -> bool {
        self.weights.iter().flatten().all(|&w| w <= 3)
    }

    /// Diagram mutation at `k`: reverse the edges at `k`, then for every path
    /// `i -a-> k -b-> j` replace the weight `c` of `j -> i` by an edge
    /// `i -> j` of weight `c'` where `c + c' = max(a, b)`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let n = self.rank();
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k + 1, rank: n });
        }
        let mut out = self.clone();
        for j in 0..n {
            out.weights[k][j] = self.weights[j][k];
            out.weights[j][k] = self.weights[k][j];
        }
        for i in self.in_neighbours(k) {
            let a = self.weights[i][k];
            for j in self.out_neighbours(k) {
                let b = self.weights[k][j];
                if self.weights[i][j] > 0 {
                    return Err(Error::NotFiniteType(format!(
                        "triangle on {}, {}, {} is not cyclically oriented",
                        i + 1,
                        k + 1,
                        j + 1
                    )));
                }
                let c = self.weights[j][i];
                let max = a.max(b);
                if c > max {
                    return Err(Error::NotFiniteType(format!(
                        "weight {c} on {} -> {} exceeds max({a}, {b})",
                        j + 1,
                        i + 1
                    )));
                }
                out.weights[j][i] = 0;
                out.weights[i][j] = max - c;
            }
        }
        if !out.is_two_finite() {
            return Err(Error::NotFiniteType(format!(
                "mutation at {} produces a weight above 3",
                k + 1
            )));
        }
        Ok(out)
    }

    pub fn mutate_sequence(&self, ks: &[usize]) -> Result<Self> {
        ks.iter().try_fold(self.clone(), |d, &k| d.mutate(k))
    }

    /// All edges reversed, weights kept.
    pub fn opposite(&self) -> Self {
        let n = self.rank();
        let weights = (0..n)
            .map(|i| (0..n).map(|j| self.weights[j][i]).collect())
            .collect();
        Self { weights }
    }

    /// Relabels vertex `i` as `p[i]`.
    pub fn permute(&self, p: &[usize]) -> Self {
        let n = self.rank();
        let mut weights = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                weights[p[i]][p[j]] = self.weights[i][j];
            }
        }
        Self { weights }
    }

    /// Induced subdiagram on `vertices`, relabelled `0..vertices.len()` in order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let weights = vertices
            .iter()
            .map(|&i| vertices.iter().map(|&j| self.weights[i][j]).collect())
            .collect();
        Self { weights }
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            n: self.rank(),
            edges: self
                .edges()
                .iter()
                .map(|e| [e.source + 1, e.target + 1, e.weight as usize])
                .collect(),
        }
    }

    pub fn from_json(json: &DiagramJson) -> Result<Self> {
        let mut edges = Vec::with_capacity(json.edges.len());
        for &[s, t, w] in &json.edges {
            if s == 0 || t == 0 || w > u8::MAX as usize {
                return Err(parse_err(1, format!("bad edge [{s}, {t}, {w}]")));
            }
            edges.push(Edge {
                source: s - 1,
                target: t - 1,
                weight: w as u8,
            });
        }
        Self::from_edges(json.n, &edges)
    }

    /// Text format: line 1 `n`, then `i j w` per edge (1-based), or JSON.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            let json: DiagramJson =
                serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
            return Self::from_json(&json);
        }
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (first, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
        let n: usize = header
            .parse()
            .map_err(|_| parse_err(first, format!("expected vertex count, found `{header}`")))?;
        let mut edges = Vec::new();
        for (line, content) in lines {
            let parts: Vec<&str> = content.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(parse_err(line, "expected `i j w`"));
            }
            let num = |t: &str| -> Result<usize> {
                t.parse().map_err(|_| parse_err(line, format!("bad integer `{t}`")))
            };
            let (s, t, w) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
            if s == 0 || t == 0 || s > n || t > n {
                return Err(parse_err(line, format!("vertex out of range 1..={n}")));
            }
            if w == 0 || w > u8::MAX as usize {
                return Err(parse_err(line, format!("bad weight {w}")));
            }
            edges.push(Edge {
                source: s - 1,
                target: t - 1,
                weight: w as u8,
            });
        }
        Self::from_edges(n, &edges)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.rank())?;
        for e in self.edges() {
            writeln!(f, "{} {} {}", e.source + 1, e.target + 1, e.weight)?;
        }
        Ok(())
    }
}
