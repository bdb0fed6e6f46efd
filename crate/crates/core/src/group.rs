//! Group orders, permutation representations and the homomorphism
//! certificates relating `W_Γ` and `W_{μ_k Γ}`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use crate::coset::{coset_enumerate, CosetTable, DEFAULT_COSET_CAP};
use crate::diagram::Diagram;
use crate::dynkin::DynkinType;
use crate::error::{Error, Result};
use crate::presentation::{coxeter_presentation, full_presentation, ti_words, tprime_words, Presentation, Relation, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Direct,
    Tower,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Direct => "direct",
            Strategy::Tower => "tower",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Strategy::Direct),
            "tower" | "parabolic-tower" => Ok(Strategy::Tower),
            other => Err(Error::Parse {
                line: 0,
                message: format!("unknown strategy `{other}`"),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderReport {
    pub order: u64,
    pub strategy: Strategy,
    pub cosets_defined: usize,
}

fn complete(t: CosetTable, cap: usize) -> Result<CosetTable> {
    if t.is_complete() {
        Ok(t)
    } else {
        Err(Error::CosetOverflow { cap })
    }
}

/// Order of the presented group. `Tower` multiplies the index of
/// `⟨s_1, .., s_{m-1}⟩` in the group of the relations on `s_1, .., s_m` for
/// `m = n, .., 1`.
pub fn group_order(p: &Presentation, strategy: Strategy, cap: usize) -> Result<OrderReport> {
    match strategy {
        Strategy::Direct => {
            let t = complete(coset_enumerate(p, &[], cap)?, cap)?;
            Ok(OrderReport {
                order: t.coset_count as u64,
                strategy,
                cosets_defined: t.cosets_defined,
            })
        }
        Strategy::Tower => {
            let mut order: u64 = 1;
            let mut defined = 0;
            for m in (1..=p.generators).rev() {
                let sub = p.restrict(m);
                let h: Vec<Word> = (0..m - 1).map(Word::letter).collect();
                let t = complete(coset_enumerate(&sub, &h, cap)?, cap)?;
                order = order.checked_mul(t.coset_count as u64).ok_or(Error::Overflow)?;
                defined += t.cosets_defined;
            }
            Ok(OrderReport {
                order,
                strategy,
                cosets_defined: defined,
            })
        }
    }
}

/// `p -> self[p]`. Composition runs left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(pub Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&p| other.0[p as usize]).collect())
    }

    pub fn pow(&self, e: u32) -> Permutation {
        let mut out = Permutation::identity(self.degree());
        for _ in 0..e {
            out = out.then(self);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    pub fn is_involution(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &p)| self.0[p as usize] as usize == i)
    }
}

#[derive(Debug, Clone)]
pub struct PermutationRep {
    pub degree: usize,
    pub images: Vec<Permutation>,
}

/// Generator actions read off a complete table.
pub fn perm_rep(t: &CosetTable) -> Result<PermutationRep> {
    if !t.is_complete() {
        return Err(Error::IncompleteTable);
    }
    let images = (0..t.generators)
        .map(|g| Permutation(t.rows.iter().map(|row| row[g]).collect()))
        .collect();
    Ok(PermutationRep {
        degree: t.coset_count,
        images,
    })
}

/// Regular representation of the presented group.
pub fn regular_rep(p: &Presentation, cap: usize) -> Result<PermutationRep> {
    perm_rep(&complete(coset_enumerate(p, &[], cap)?, cap)?)
}

impl PermutationRep {
    pub fn is_transitive(&self) -> bool {
        if self.degree == 0 {
            return true;
        }
        let mut seen = vec![false; self.degree];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(p) = stack.pop() {
            for img in &self.images {
                let q = img.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    count += 1;
                    stack.push(q);
                }
            }
        }
        count == self.degree
    }
}

pub fn evaluate_word(r: &PermutationRep, w: &Word) -> Result<Permutation> {
    let mut out = Permutation::identity(r.degree);
    for &l in w.letters() {
        let g = r.images.get(l).ok_or(Error::LetterOutOfRange {
            letter: l + 1,
            generators: r.images.len(),
        })?;
        out = out.then(g);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomomorphismCheck {
    pub holds: bool,
    pub failing: Option<Relation>,
}

/// Substitutes `images[i]` for generator `i` of every target relation and
/// evaluates in `r`.
pub fn check_homomorphism(r: &PermutationRep, images: &[Word], target: &Presentation) -> Result<HomomorphismCheck> {
    if images.len() != target.generators {
        return Err(Error::RankMismatch {
            left: images.len(),
            right: target.generators,
        });
    }
    let perms = images.iter().map(|w| evaluate_word(r, w)).collect::<Result<Vec<_>>>()?;
    for rel in &target.relations {
        let mut base = Permutation::identity(r.degree);
        for &l in rel.word.letters() {
            let p = perms.get(l).ok_or(Error::LetterOutOfRange {
                letter: l + 1,
                generators: perms.len(),
            })?;
            base = base.then(p);
        }
        if !base.pow(rel.exponent).is_identity() {
            return Ok(HomomorphismCheck {
                holds: false,
                failing: Some(rel.clone()),
            });
        }
    }
    Ok(HomomorphismCheck {
        holds: true,
        failing: None,
    })
}

/// Three-part certificate that `W_Γ ≅ W_{μ_k Γ}`: `s'_i -> t_i` and
/// `s_i -> t'_i` respect the defining relations, the two maps compose to the
/// identity on generators, and the orders agree.
#[derive(Debug, Clone, Serialize)]
pub struct MutationCertificate {
    pub vertex: usize,
    pub phi: HomomorphismCheck,
    pub psi: HomomorphismCheck,
    pub compositions: bool,
    pub order: u64,
    pub mutated_order: u64,
    pub passed: bool,
}

pub fn verify_mutation_isomorphism(g: &Diagram, k: usize, cap: usize) -> Result<MutationCertificate> {
    let gm = g.mutate(k)?;
    let p = full_presentation(g)?;
    let pm = full_presentation(&gm)?;
    let rep = regular_rep(&p, cap)?;
    let rep_m = regular_rep(&pm, cap)?;
    let t = ti_words(g, k)?;
    let tp = tprime_words(&gm, k)?;
    let phi = check_homomorphism(&rep, &t, &pm)?;
    let psi = check_homomorphism(&rep_m, &tp, &p)?;
    let mut compositions = true;
    for i in 0..g.rank() {
        let back_m = evaluate_word(&rep_m, &t[i].substitute(&tp)?)?;
        let back = evaluate_word(&rep, &tp[i].substitute(&t)?)?;
        if back_m != rep_m.images[i] || back != rep.images[i] {
            compositions = false;
            break;
        }
    }
    let (order, mutated_order) = (rep.degree as u64, rep_m.degree as u64);
    let passed = phi.holds && psi.holds && compositions && order == mutated_order;
    Ok(MutationCertificate {
        vertex: k,
        phi,
        psi,
        compositions,
        order,
        mutated_order,
        passed,
    })
}

fn weyl_cache() -> &'static Mutex<HashMap<DynkinType, u64>> {
    static CACHE: OnceLock<Mutex<HashMap<DynkinType, u64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Order of the Weyl group, by tower enumeration of the standard Coxeter
/// presentation. Results are cached per process.
pub fn weyl_order(ty: DynkinType) -> Result<u64> {
    let ty = ty.new_checked()?;
    if let Some(&o) = weyl_cache().lock().unwrap().get(&ty) {
        return Ok(o);
    }
    let o = group_order(&coxeter_presentation(ty), Strategy::Tower, DEFAULT_COSET_CAP)?.order;
    weyl_cache().lock().unwrap().insert(ty, o);
    Ok(o)
}
