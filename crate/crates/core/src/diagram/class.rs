use std::collections::{HashMap, VecDeque};

use super::canon::{canonical_labeling, CanonicalForm};
use super::Diagram;
use crate::dynkin::DynkinType;
use crate::error::{Error, Result};

pub const DEFAULT_CLASS_CAP: usize = 50_000;

/// Isomorphism classes of diagrams reachable by mutation, in canonical-form
/// order. Each member is stored in its canonical labelling.
#[derive(Debug, Clone)]
pub struct MutationClass {
    pub members: Vec<Diagram>,
    pub forms: Vec<CanonicalForm>,
    /// `(member, vertex, member)`: mutating the first at `vertex` gives a
    /// diagram isomorphic to the second.
    pub edges: Vec<(usize, usize, usize)>,
    pub type_label: Option<DynkinType>,
}

impl MutationClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn label(&self) -> String {
        self.type_label
            .map(|t| t.diagram_label())
            .unwrap_or_else(|| "unknown".to_string())
    }
}

/// Breadth-first closure under mutation at every vertex, deduplicated by
/// canonical form. Fails with `ClassOverflow` past `cap` members and with
/// `NotFiniteType` when a member stops being 2-finite.
pub fn mutation_class(g: &Diagram, cap: usize) -> Result<MutationClass> {
    if !g.is_two_finite() {
        return Err(Error::NotFiniteType("diagram is not 2-finite".into()));
    }
    let n = g.rank();
    let (form, labels) = canonical_labeling(g)?;
    let mut index: HashMap<CanonicalForm, usize> = HashMap::new();
    let mut members = vec![g.permute(&labels)];
    let mut forms = vec![form.clone()];
    index.insert(form, 0);
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(m) = queue.pop_front() {
        for k in 0..n {
            let next = members[m].mutate(k)?;
            let (form, labels) = canonical_labeling(&next)?;
            let target = match index.get(&form) {
                Some(&t) => t,
                None => {
                    if members.len() >= cap {
                        return Err(Error::ClassOverflow { cap });
                    }
                    let t = members.len();
                    members.push(next.permute(&labels));
                    forms.push(form.clone());
                    index.insert(form, t);
                    queue.push_back(t);
                    t
                }
            };
            edges.push((m, k, target));
        }
    }
    // reorder by canonical form
    let mut order: Vec<usize> = (0..members.len()).collect();
    order.sort_by(|&a, &b| forms[a].cmp(&forms[b]));
    let mut rank_of = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        rank_of[old] = new;
    }
    let members: Vec<Diagram> = order.iter().map(|&o| members[o].clone()).collect();
    let forms: Vec<CanonicalForm> = order.iter().map(|&o| forms[o].clone()).collect();
    let mut edges: Vec<(usize, usize, usize)> = edges
        .into_iter()
        .map(|(a, k, b)| (rank_of[a], k, rank_of[b]))
        .collect();
    edges.sort();
    let mut class = MutationClass {
        members,
        forms,
        edges,
        type_label: None,
    };
    class.type_label = identify_dynkin_type(&class).ok();
    Ok(class)
}

/// Finds a tree member and matches it against the Dynkin catalog.
pub fn identify_dynkin_type(class: &MutationClass) -> Result<DynkinType> {
    class
        .members
        .iter()
        .find_map(DynkinType::identify_tree)
        .ok_or_else(|| Error::Internal("no Dynkin tree in mutation class".into()))
}
