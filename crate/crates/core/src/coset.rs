//! HLT coset enumeration for presentations by involutions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::{Presentation, Word};

pub const DEFAULT_COSET_CAP: usize = 2_000_000;
pub const CAP_ENV_VAR: &str = "CLUSTER_PRESENTS_CAP";

const NONE: u32 = u32::MAX;

/// The cap from `CLUSTER_PRESENTS_CAP`, falling back to the default.
pub fn default_cap() -> usize {
    std::env::var(CAP_ENV_VAR)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&c| c >= 1)
        .unwrap_or(DEFAULT_COSET_CAP)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableStatus {
    Complete,
    Overflow,
}

/// `rows[c][g]` is the coset `c·s_g`. Rows of a complete table are numbered
/// in order of definition and every entry is filled.
#[derive(Debug, Clone)]
pub struct CosetTable {
    pub generators: usize,
    pub rows: Vec<Vec<u32>>,
    pub status: TableStatus,
    pub coset_count: usize,
    pub cosets_defined: usize,
}

impl CosetTable {
    pub fn is_complete(&self) -> bool {
        self.status == TableStatus::Complete
    }

    pub fn act(&self, coset: usize, generator: usize) -> usize {
        self.rows[coset][generator] as usize
    }
}

struct Enumerator {
    gens: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<u32>,
    live: usize,
    cap: usize,
    overflow: bool,
}

impl Enumerator {
    fn new(gens: usize, cap: usize) -> Self {
        let mut e = Enumerator {
            gens,
            table: Vec::new(),
            parent: Vec::new(),
            queue: Vec::new(),
            live: 0,
            cap,
            overflow: false,
        };
        e.push_row();
        e
    }

    fn defined(&self) -> usize {
        self.parent.len()
    }

    fn push_row(&mut self) -> u32 {
        let c = self.parent.len() as u32;
        self.table.extend(std::iter::repeat_n(NONE, self.gens));
        self.parent.push(c);
        self.live += 1;
        c
    }

    #[inline]
    fn get(&self, c: u32, g: usize) -> u32 {
        self.table[c as usize * self.gens + g]
    }

    #[inline]
    fn set(&mut self, c: u32, g: usize, d: u32) {
        self.table[c as usize * self.gens + g] = d;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != root {
            let next = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = next;
        }
        root
    }

    fn define(&mut self, c: u32, g: usize) -> Option<u32> {
        if self.live >= self.cap || self.defined() >= NONE as usize {
            self.overflow = true;
            return None;
        }
        let d = self.push_row();
        self.set(c, g, d);
        self.set(d, g, c);
        Some(d)
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        self.parent[drop as usize] = keep;
        self.live -= 1;
        self.queue.push(drop);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        let mut head = 0;
        while head < self.queue.len() {
            let gamma = self.queue[head];
            head += 1;
            for g in 0..self.gens {
                let delta = self.get(gamma, g);
                if delta == NONE {
                    continue;
                }
                self.set(delta, g, NONE);
                let mu = self.rep(gamma);
                let nu = self.rep(delta);
                let mu_g = self.get(mu, g);
                if mu_g != NONE {
                    self.merge(nu, mu_g);
                    continue;
                }
                let nu_g = self.get(nu, g);
                if nu_g != NONE {
                    self.merge(mu, nu_g);
                } else {
                    self.set(mu, g, nu);
                    self.set(nu, g, mu);
                }
            }
        }
        self.queue.clear();
    }

    /// Scans `word` from coset `c`, defining cosets to close the gap.
    fn scan_and_fill(&mut self, c: u32, word: &[usize]) {
        if word.is_empty() {
            return;
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0isize;
        let mut j = word.len() as isize - 1;
        loop {
            while i <= j {
                let next = self.get(f, word[i as usize]);
                if next == NONE {
                    break;
                }
                f = next;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i {
                let next = self.get(b, word[j as usize]);
                if next == NONE {
                    break;
                }
                b = next;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return;
            }
            let g = word[i as usize];
            if i == j {
                self.set(f, g, b);
                self.set(b, g, f);
                return;
            }
            if self.define(f, g).is_none() {
                return;
            }
        }
    }
}

/// Cyclically reduced relator with `s_i s_i` cancelled. Empty words act
/// trivially.
fn reduce_relator(word: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    let mut start = 0;
    let mut end = out.len();
    while end - start >= 2 && out[start] == out[end - 1] {
        start += 1;
        end -= 1;
    }
    out[start..end].to_vec()
}

fn relators(p: &Presentation) -> Result<Vec<Vec<usize>>> {
    p.validate_letters()?;
    for g in 0..p.generators {
        let has = p
            .relations
            .iter()
            .any(|r| r.word.0 == [g] && (r.exponent == 1 || r.exponent == 2));
        if !has {
            return Err(Error::MissingInvolution { generator: g + 1 });
        }
    }
    let mut out: Vec<Vec<usize>> = p
        .relations
        .iter()
        .map(|r| reduce_relator(&r.relator().0))
        .filter(|w| !w.is_empty())
        .collect();
    out.sort_by_key(|w| w.len());
    out.dedup();
    Ok(out)
}

/// Enumerates the cosets of `⟨subgroup⟩` in the group presented by `p`.
/// Every generator must carry an involution relation. Overflow is reported
/// through the table status.
pub fn coset_enumerate(p: &Presentation, subgroup: &[Word], cap: usize) -> Result<CosetTable> {
    let rels = relators(p)?;
    for h in subgroup {
        if let Some(&l) = h.0.iter().find(|&&l| l >= p.generators) {
            return Err(Error::LetterOutOfRange {
                letter: l + 1,
                generators: p.generators,
            });
        }
    }
    let gens = p.generators;
    let mut e = Enumerator::new(gens, cap.max(1));
    for h in subgroup {
        let w = reduce_relator(&h.0);
        e.scan_and_fill(0, &w);
        if e.overflow {
            return Ok(overflowed(&e));
        }
    }
    let mut c = 0u32;
    while (c as usize) < e.defined() {
        if e.is_live(c) {
            for r in &rels {
                e.scan_and_fill(c, r);
                if e.overflow {
                    return Ok(overflowed(&e));
                }
                if !e.is_live(c) {
                    break;
                }
            }
            if e.is_live(c) {
                for g in 0..gens {
                    if e.get(c, g) == NONE && e.define(c, g).is_none() {
                        return Ok(overflowed(&e));
                    }
                }
            }
        }
        c += 1;
    }
    Ok(compact(&e))
}

fn overflowed(e: &Enumerator) -> CosetTable {
    CosetTable {
        generators: e.gens,
        rows: Vec::new(),
        status: TableStatus::Overflow,
        coset_count: e.live,
        cosets_defined: e.defined(),
    }
}

fn compact(e: &Enumerator) -> CosetTable {
    let mut new_index = vec![NONE; e.defined()];
    let mut next = 0u32;
    for c in 0..e.defined() as u32 {
        if e.is_live(c) {
            new_index[c as usize] = next;
            next += 1;
        }
    }
    let rows = (0..e.defined() as u32)
        .filter(|&c| e.is_live(c))
        .map(|c| (0..e.gens).map(|g| new_index[e.get(c, g) as usize]).collect())
        .collect();
    CosetTable {
        generators: e.gens,
        rows,
        status: TableStatus::Complete,
        coset_count: next as usize,
        cosets_defined: e.defined(),
    }
}
