//! Signed graphs of quasi-Cartan matrices and local switching.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{parse_err, Error, Result};
use crate::exchange::QuasiCartanMatrix;

/// Simple graph with a sign `±1` on each edge, keyed by `(i, j)` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SignedGraph {
    pub n: usize,
    pub edges: BTreeMap<(usize, usize), i8>,
}

fn key(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

impl SignedGraph {
    pub fn empty(n: usize) -> Self {
        SignedGraph {
            n,
            edges: BTreeMap::new(),
        }
    }

    pub fn sign(&self, i: usize, j: usize) -> Option<i8> {
        self.edges.get(&key(i, j)).copied()
    }

    pub fn set(&mut self, i: usize, j: usize, sign: i8) -> Result<()> {
        if i == j {
            return Err(Error::InvalidDiagram(format!("self-loop at {}", i + 1)));
        }
        for v in [i, j] {
            if v >= self.n {
                return Err(Error::IndexOutOfRange { index: v + 1, rank: self.n });
            }
        }
        self.edges.insert(key(i, j), sign.signum());
        Ok(())
    }

    pub fn remove(&mut self, i: usize, j: usize) {
        self.edges.remove(&key(i, j));
    }

    pub fn neighbours(&self, k: usize) -> BTreeSet<usize> {
        self.edges
            .keys()
            .filter_map(|&(a, b)| match (a == k, b == k) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect()
    }

    /// Line 1 `n`, then `i j +` or `i j -` per edge, 1-based.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
            .filter(|(_, l)| !l.is_empty());
        let (first, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
        let n: usize = header
            .parse()
            .map_err(|_| parse_err(first, format!("expected vertex count, found `{header}`")))?;
        let mut g = SignedGraph::empty(n);
        for (line, content) in lines {
            let parts: Vec<&str> = content.split_whitespace().collect();
            let [i, j, s] = parts.as_slice() else {
                return Err(parse_err(line, "expected `i j +` or `i j -`"));
            };
            let vertex = |t: &str| {
                t.parse::<usize>()
                    .ok()
                    .filter(|&v| v >= 1 && v <= n)
                    .ok_or_else(|| parse_err(line, format!("bad vertex `{t}`")))
            };
            let (i, j) = (vertex(i)?, vertex(j)?);
            let sign = match *s {
                "+" => 1,
                "-" => -1,
                other => return Err(parse_err(line, format!("bad sign `{other}`"))),
            };
            if i == j {
                return Err(parse_err(line, "self-loop"));
            }
            if g.sign(i - 1, j - 1).is_some() {
                return Err(parse_err(line, "parallel edge"));
            }
            g.set(i - 1, j - 1, sign)?;
        }
        Ok(g)
    }
}

impl fmt::Display for SignedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for (&(i, j), &s) in &self.edges {
            writeln!(f, "{} {} {}", i + 1, j + 1, if s > 0 { '+' } else { '-' })?;
        }
        Ok(())
    }
}

/// Edge `{i, j}` signed by `A_ij` wherever `A_ij != 0`.
pub fn signed_graph(a: &QuasiCartanMatrix) -> SignedGraph {
    let n = a.rank();
    let mut g = SignedGraph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            let v = a.get(i, j);
            if v != 0 {
                g.edges.insert((i, j), v.signum() as i8);
            }
        }
    }
    g
}

/// Local switching at `k` with respect to `I ⊆ N(k)`, `J = N(k) \ I`: drop
/// the `I`–`J` edges, join each previously unjoined `i ∈ I`, `j ∈ J` with the
/// sign that leaves the triangle `i, j, k` with an odd number of positive
/// signs once the `k`–`I` signs are flipped, then flip them.
pub fn local_switch(g: &SignedGraph, k: usize, in_set: &[usize]) -> Result<SignedGraph> {
    if k >= g.n {
        return Err(Error::IndexOutOfRange { index: k + 1, rank: g.n });
    }
    let nbrs = g.neighbours(k);
    let i_set: BTreeSet<usize> = in_set.iter().copied().collect();
    if !i_set.is_subset(&nbrs) {
        return Err(Error::NotNeighbours { vertex: k + 1 });
    }
    let j_set: Vec<usize> = nbrs.difference(&i_set).copied().collect();
    let mut out = g.clone();
    for &i in &i_set {
        for &j in &j_set {
            if g.sign(i, j).is_some() {
                out.remove(i, j);
            } else {
                let ki_after = -g.sign(k, i).unwrap();
                let kj = g.sign(k, j).unwrap();
                let positives = usize::from(ki_after > 0) + usize::from(kj > 0);
                out.set(i, j, if positives % 2 == 0 { 1 } else { -1 })?;
            }
        }
    }
    for &i in &i_set {
        let s = g.sign(k, i).unwrap();
        out.set(k, i, -s)?;
    }
    Ok(out)
}
