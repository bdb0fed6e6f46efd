use serde::Serialize;

use super::{chordless_cycles, Diagram};

/// First local obstruction to finite type found in a diagram. Vertices are
/// 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// An edge weight above 3.
    WeightTooLarge { source: usize, target: usize, weight: u8 },
    /// A chordless cycle that is not cyclically oriented.
    UnorientedCycle { vertices: Vec<usize> },
    /// A chordless cycle whose weights are not one of the finite-type shapes.
    CycleWeights { vertices: Vec<usize>, weights: Vec<u8> },
    /// A connected induced subdiagram on three vertices of a forbidden shape.
    ThreeVertex { vertices: [usize; 3], weights: Vec<u8> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub witness: Option<Violation>,
}

impl ValidationReport {
    fn fail(v: Violation) -> Self {
        Self {
            passed: false,
            witness: Some(v),
        }
    }
}

fn cycle_shape_allowed(weights: &[u8]) -> bool {
    if weights.iter().all(|&w| w == 1) {
        return weights.len() >= 3;
    }
    match weights.len() {
        3 => {
            let mut sorted = weights.to_vec();
            sorted.sort();
            sorted == [1, 2, 2]
        }
        4 => {
            weights[0] == weights[2]
                && weights[1] == weights[3]
                && weights[0] != weights[1]
                && weights[0].min(weights[1]) == 1
                && weights[0].max(weights[1]) == 2
        }
        _ => false,
    }
}

/// Paths `{1,1}`, `{1,2}` and triangles `{1,1,1}`, `{1,2,2}`, as multisets of
/// unoriented weights.
fn three_vertex_allowed(mut weights: Vec<u8>) -> bool {
    weights.sort();
    matches!(weights.as_slice(), [1, 1] | [1, 2] | [1, 1, 1] | [1, 2, 2])
}

/// Checks in order: weights at most 3, chordless cycles cyclically oriented,
/// cycle weights from the finite-type catalog, and every connected 3-vertex
/// induced subdiagram of an allowed shape.
pub fn validate_finite_type_local(g: &Diagram) -> ValidationReport {
    for e in g.edges() {
        if e.weight > 3 {
            return ValidationReport::fail(Violation::WeightTooLarge {
                source: e.source,
                target: e.target,
                weight: e.weight,
            });
        }
    }
    let cycles = chordless_cycles(g);
    if let Some(c) = cycles.iter().find(|c| !c.oriented) {
        return ValidationReport::fail(Violation::UnorientedCycle {
            vertices: c.vertices.clone(),
        });
    }
    if let Some(c) = cycles.iter().find(|c| !cycle_shape_allowed(&c.weights)) {
        return ValidationReport::fail(Violation::CycleWeights {
            vertices: c.vertices.clone(),
            weights: c.weights.clone(),
        });
    }
    let n = g.rank();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let weights: Vec<u8> = [(a, b), (a, c), (b, c)]
                    .iter()
                    .map(|&(x, y)| g.undirected_weight(x, y))
                    .filter(|&w| w > 0)
                    .collect();
                if weights.len() >= 2 && !three_vertex_allowed(weights.clone()) {
                    return ValidationReport::fail(Violation::ThreeVertex {
                        vertices: [a, b, c],
                        weights,
                    });
                }
            }
        }
    }
    ValidationReport {
        passed: true,
        witness: None,
    }
}
