use serde::Serialize;

use super::Diagram;

/// An induced cycle of the underlying unoriented graph.
///
/// When `oriented` holds, `vertices` follows the edge orientation starting at
/// the smallest vertex. Otherwise it starts at the smallest vertex and steps
/// to its smaller cycle neighbour. `weights[a]` is the weight of the edge
/// between `vertices[a - 1]` and `vertices[a]` (indices mod the length).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ChordlessCycle {
    pub vertices: Vec<usize>,
    pub weights: Vec<u8>,
    pub oriented: bool,
}

impl ChordlessCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn all_weights_one(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    /// Vertices starting from position `a`.
    pub fn rotated(&self, a: usize) -> Vec<usize> {
        let d = self.len();
        (0..d).map(|t| self.vertices[(a + t) % d]).collect()
    }

    fn from_ring(g: &Diagram, ring: Vec<usize>) -> Self {
        let d = ring.len();
        let forward = (0..d).all(|a| g.weight(ring[a], ring[(a + 1) % d]) > 0);
        let backward = (0..d).all(|a| g.weight(ring[(a + 1) % d], ring[a]) > 0);
        let start = (0..d).min_by_key(|&a| ring[a]).unwrap();
        let step_forward = if forward {
            true
        } else if backward {
            false
        } else {
            ring[(start + 1) % d] < ring[(start + d - 1) % d]
        };
        let vertices: Vec<usize> = (0..d)
            .map(|t| {
                if step_forward {
                    ring[(start + t) % d]
                } else {
                    ring[(start + d - t) % d]
                }
            })
            .collect();
        let weights = (0..d)
            .map(|a| g.undirected_weight(vertices[(a + d - 1) % d], vertices[a]))
            .collect();
        Self {
            vertices,
            weights,
            oriented: forward || backward,
        }
    }
}

/// Every chordless cycle of the underlying unoriented graph, each once, in
/// lexicographic order of vertex sequences.
pub fn chordless_cycles(g: &Diagram) -> Vec<ChordlessCycle> {
    let n = g.rank();
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| g.connected(i, j)).collect())
        .collect();
    let mut rings = Vec::new();
    let mut path = Vec::with_capacity(n);
    let mut on_path = vec![false; n];
    for root in 0..n {
        path.push(root);
        on_path[root] = true;
        extend(&adj, root, &mut path, &mut on_path, &mut rings);
        on_path[root] = false;
        path.pop();
    }
    let mut cycles: Vec<ChordlessCycle> =
        rings.into_iter().map(|r| ChordlessCycle::from_ring(g, r)).collect();
    cycles.sort();
    cycles
}

// Grows induced paths whose vertices all exceed the root. A neighbour of the
// last vertex adjacent to nothing else on the path extends it; one adjacent to
// the root as well closes a cycle.
fn extend(
    adj: &[Vec<bool>],
    root: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    rings: &mut Vec<Vec<usize>>,
) {
    let n = adj.len();
    let last = *path.last().unwrap();
    for u in root + 1..n {
        if on_path[u] || !adj[last][u] {
            continue;
        }
        // no chords to interior path vertices
        if path.len() > 2 && path[1..path.len() - 1].iter().any(|&p| adj[p][u]) {
            continue;
        }
        let touches_root = path.len() > 1 && adj[root][u];
        if touches_root {
            if path[1] < u {
                let mut ring = path.clone();
                ring.push(u);
                rings.push(ring);
            }
            continue;
        }
        path.push(u);
        on_path[u] = true;
        extend(adj, root, path, on_path, rings);
        on_path[u] = false;
        path.pop();
    }
}
