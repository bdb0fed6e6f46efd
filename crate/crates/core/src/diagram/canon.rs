//! Canonical forms of small weighted oriented diagrams by
//! individualization and refinement.

use std::fmt;

use super::Diagram;
use crate::error::{Error, Result};

pub const MAX_CANONICAL_RANK: usize = 10;

/// Byte string `[n, w(0,0), w(0,1), .., w(n-1,n-1)]` of the relabelled
/// diagram. Equal forms means isomorphic diagrams.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(pub Vec<u8>);

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl CanonicalForm {
    /// The diagram this form encodes.
    pub fn to_diagram(&self) -> Diagram {
        let n = self.0[0] as usize;
        let weights = (0..n)
            .map(|i| self.0[1 + i * n..1 + (i + 1) * n].to_vec())
            .collect();
        Diagram { weights }
    }
}

fn encode(g: &Diagram, labels: &[usize]) -> Vec<u8> {
    let n = g.rank();
    let mut code = vec![0u8; 1 + n * n];
    code[0] = n as u8;
    for i in 0..n {
        for j in 0..n {
            code[1 + labels[i] * n + labels[j]] = g.weights[i][j];
        }
    }
    code
}

fn edge_type(g: &Diagram, u: usize, v: usize) -> u16 {
    ((g.weights[u][v] as u16) << 8) | g.weights[v][u] as u16
}

/// Splits colour classes until every vertex in a class sees the same
/// multiset of (edge type, neighbour colour). Colours stay ranked so the
/// order of existing classes is preserved.
fn refine(g: &Diagram, colours: &mut [usize]) {
    let n = g.rank();
    let mut classes = count_classes(colours);
    loop {
        let signatures: Vec<(usize, Vec<(u16, usize)>)> = (0..n)
            .map(|v| {
                let mut nbrs: Vec<(u16, usize)> = (0..n)
                    .filter(|&u| u != v)
                    .map(|u| (edge_type(g, v, u), colours[u]))
                    .filter(|&(t, _)| t != 0)
                    .collect();
                nbrs.sort_unstable();
                (colours[v], nbrs)
            })
            .collect();
        let mut sorted = signatures.clone();
        sorted.sort();
        sorted.dedup();
        for v in 0..n {
            colours[v] = sorted.binary_search(&signatures[v]).unwrap();
        }
        let now = sorted.len();
        if now == classes {
            return;
        }
        classes = now;
    }
}

fn count_classes(colours: &[usize]) -> usize {
    let mut c = colours.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

// Swapping u and v fixes the diagram.
fn are_twins(g: &Diagram, u: usize, v: usize) -> bool {
    edge_type(g, u, v) == edge_type(g, v, u)
        && (0..g.rank())
            .filter(|&x| x != u && x != v)
            .all(|x| edge_type(g, u, x) == edge_type(g, v, x))
}

fn search(g: &Diagram, mut colours: Vec<usize>, best: &mut Option<(Vec<u8>, Vec<usize>)>) {
    refine(g, &mut colours);
    let n = g.rank();
    let classes = count_classes(&colours);
    if classes == n {
        let code = encode(g, &colours);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, colours));
        }
        return;
    }
    // first non-singleton class
    let mut sizes = vec![0usize; n];
    for &c in &colours {
        sizes[c] += 1;
    }
    let target = (0..n).find(|&c| sizes[c] > 1).unwrap();
    let cell: Vec<usize> = (0..n).filter(|&v| colours[v] == target).collect();
    let mut tried: Vec<usize> = Vec::new();
    for &v in &cell {
        if tried.iter().any(|&u| are_twins(g, u, v)) {
            continue;
        }
        tried.push(v);
        let next: Vec<usize> = (0..n)
            .map(|x| 2 * colours[x] + usize::from(colours[x] == target && x != v))
            .collect();
        search(g, next, best);
    }
}

/// Canonical form together with the labelling `v -> label[v]` that produces it.
pub fn canonical_labeling(g: &Diagram) -> Result<(CanonicalForm, Vec<usize>)> {
    let n = g.rank();
    if n > MAX_CANONICAL_RANK {
        return Err(Error::RankTooLarge {
            rank: n,
            max: MAX_CANONICAL_RANK,
        });
    }
    if n == 0 {
        return Ok((CanonicalForm(vec![0]), Vec::new()));
    }
    let mut best = None;
    search(g, vec![0; n], &mut best);
    let (code, labels) = best.expect("search reaches at least one leaf");
    Ok((CanonicalForm(code), labels))
}

pub fn canonical_form(g: &Diagram) -> Result<CanonicalForm> {
    canonical_labeling(g).map(|(f, _)| f)
}
