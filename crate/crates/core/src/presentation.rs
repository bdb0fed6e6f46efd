//! Group presentations attached to diagrams of finite type.
//!
//! Generators are involutions `s_1, .., s_n`, so words are plain letter
//! sequences. Letters are 0-based here and printed 1-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{chordless_cycles, validate_finite_type_local, ChordlessCycle, Diagram};
use crate::dynkin::DynkinType;
use crate::error::{parse_err, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn letter(i: usize) -> Self {
        Word(vec![i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, e: u32) -> Word {
        Word(self.0.repeat(e as usize))
    }

    /// Replaces every letter `i` by `images[i]`.
    pub fn substitute(&self, images: &[Word]) -> Result<Word> {
        let mut out = Vec::new();
        for &l in &self.0 {
            let img = images.get(l).ok_or(Error::LetterOutOfRange {
                letter: l + 1,
                generators: images.len(),
            })?;
            out.extend_from_slice(&img.0);
        }
        Ok(Word(out))
    }

    fn write_with(&self, f: &mut fmt::Formatter<'_>, sep: &str) -> fmt::Result {
        for (t, l) in self.0.iter().enumerate() {
            if t > 0 {
                f.write_str(sep)?;
            }
            write!(f, "s{}", l + 1)?;
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, " ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RelationKind {
    R1,
    R2,
    R3a,
    R3b,
    #[serde(rename = "R3-reduced")]
    R3Reduced,
    Other,
}

impl RelationKind {
    pub fn tag(&self) -> &'static str {
        match self {
            RelationKind::R1 => "R1",
            RelationKind::R2 => "R2",
            RelationKind::R3a => "R3a",
            RelationKind::R3b => "R3b",
            RelationKind::R3Reduced => "R3-reduced",
            RelationKind::Other => "other",
        }
    }

    fn from_tag(tag: &str) -> Option<Self> {
        Some(match tag {
            "R1" => RelationKind::R1,
            "R2" => RelationKind::R2,
            "R3a" => RelationKind::R3a,
            "R3b" => RelationKind::R3b,
            "R3-reduced" => RelationKind::R3Reduced,
            "other" => RelationKind::Other,
            _ => return None,
        })
    }

    pub fn is_cycle_relation(&self) -> bool {
        matches!(self, RelationKind::R3a | RelationKind::R3b | RelationKind::R3Reduced)
    }
}

/// `word^exponent = e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Relation {
    pub word: Word,
    pub exponent: u32,
    pub kind: RelationKind,
}

impl Relation {
    /// The relator `word^exponent` written out.
    pub fn relator(&self) -> Word {
        self.word.pow(self.exponent)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})^{}", self.word, self.exponent)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: usize,
    pub relations: Vec<Relation>,
}

pub const PRESENTATION_FORMAT_VERSION: u32 = 1;

/// `m_ij` for an edge weight, `0` meaning no edge.
pub fn bond_order(weight: u8) -> Result<u32> {
    match weight {
        0 => Ok(2),
        1 => Ok(3),
        2 => Ok(4),
        3 => Ok(6),
        w => Err(Error::BadWeight(w)),
    }
}

/// `r(i_a, i_{a+1}) = s_{i_a} s_{i_{a+1}} .. s_{i_{a+d-1}} s_{i_{a+d-2}} .. s_{i_{a+1}}`,
/// of length `2d - 2`.
pub fn cycle_word(cycle: &ChordlessCycle, a: usize) -> Word {
    let v = cycle.rotated(a % cycle.len());
    let d = v.len();
    let mut letters: Vec<usize> = v.clone();
    letters.extend(v[1..d - 1].iter().rev());
    Word(letters)
}

fn involutions_and_bonds(g: &Diagram) -> Result<Vec<Relation>> {
    let n = g.rank();
    let mut rels: Vec<Relation> = (0..n)
        .map(|i| Relation {
            word: Word::letter(i),
            exponent: 2,
            kind: RelationKind::R1,
        })
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            rels.push(Relation {
                word: Word(vec![i, j]),
                exponent: bond_order(g.undirected_weight(i, j))?,
                kind: RelationKind::R2,
            });
        }
    }
    Ok(rels)
}

fn require_valid(g: &Diagram) -> Result<Vec<ChordlessCycle>> {
    let report = validate_finite_type_local(g);
    if let Some(w) = report.witness {
        return Err(Error::InvalidDiagram(format!("{w:?}")));
    }
    Ok(chordless_cycles(g))
}

/// Relations (R1), (R2) for every pair, and all `d` cycle relations of every
/// chordless cycle: exponent 2 when the cycle is simply laced, otherwise
/// `4 - w_a` where `w_a` weighs the edge left out of the path `r(i_a, i_{a+1})`.
pub fn full_presentation(g: &Diagram) -> Result<Presentation> {
    let cycles = require_valid(g)?;
    let mut relations = involutions_and_bonds(g)?;
    for c in &cycles {
        let simply_laced = c.all_weights_one();
        for a in 0..c.len() {
            let (exponent, kind) = if simply_laced {
                (2, RelationKind::R3a)
            } else {
                (4 - c.weights[a] as u32, RelationKind::R3b)
            };
            relations.push(Relation {
                word: cycle_word(c, a),
                exponent,
                kind,
            });
        }
    }
    Ok(Presentation {
        generators: g.rank(),
        relations,
    })
}

/// Rotation used for the single relation of a cycle: the lexicographically
/// smallest rotation whose closing edge has weight 2, or any rotation when all
/// weights are 1.
pub fn reduced_rotation(c: &ChordlessCycle) -> usize {
    let simply_laced = c.all_weights_one();
    (0..c.len())
        .filter(|&a| simply_laced || c.weights[a] == 2)
        .min_by_key(|&a| c.rotated(a))
        .expect("finite-type cycles with a weight-2 edge have an admissible rotation")
}

/// (R1), (R2) and one squared cycle relation per chordless cycle.
pub fn reduced_presentation(g: &Diagram) -> Result<Presentation> {
    let cycles = require_valid(g)?;
    let mut relations = involutions_and_bonds(g)?;
    for c in &cycles {
        relations.push(Relation {
            word: cycle_word(c, reduced_rotation(c)),
            exponent: 2,
            kind: RelationKind::R3Reduced,
        });
    }
    Ok(Presentation {
        generators: g.rank(),
        relations,
    })
}

/// `t_i = s_k s_i s_k` when `i -> k` in `g`, else `s_i`.
pub fn ti_words(g: &Diagram, k: usize) -> Result<Vec<Word>> {
    conjugated_words(g, k, |i| g.weight(i, k) > 0)
}

/// `t'_i = s'_k s'_i s'_k` when `k -> i` in `g_mutated`, else `s'_i`.
pub fn tprime_words(g_mutated: &Diagram, k: usize) -> Result<Vec<Word>> {
    conjugated_words(g_mutated, k, |i| g_mutated.weight(k, i) > 0)
}

fn conjugated_words(g: &Diagram, k: usize, conjugate: impl Fn(usize) -> bool) -> Result<Vec<Word>> {
    let n = g.rank();
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k + 1, rank: n });
    }
    Ok((0..n)
        .map(|i| {
            if conjugate(i) {
                Word(vec![k, i, k])
            } else {
                Word::letter(i)
            }
        })
        .collect())
}

/// Standard Coxeter presentation of a Dynkin type, built from its Coxeter
/// matrix.
pub fn coxeter_presentation(ty: DynkinType) -> Presentation {
    let m = ty.coxeter_matrix();
    let n = ty.rank();
    let mut relations: Vec<Relation> = (0..n)
        .map(|i| Relation {
            word: Word::letter(i),
            exponent: 2,
            kind: RelationKind::R1,
        })
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            relations.push(Relation {
                word: Word(vec![i, j]),
                exponent: m[i][j],
                kind: RelationKind::R2,
            });
        }
    }
    Presentation {
        generators: n,
        relations,
    }
}

impl Presentation {
    /// Relations mentioning only the first `m` generators.
    pub fn restrict(&self, m: usize) -> Presentation {
        Presentation {
            generators: m,
            relations: self
                .relations
                .iter()
                .filter(|r| r.word.0.iter().all(|&l| l < m))
                .cloned()
                .collect(),
        }
    }

    pub fn count(&self, kind: RelationKind) -> usize {
        self.relations.iter().filter(|r| r.kind == kind).count()
    }

    pub fn validate_letters(&self) -> Result<()> {
        for r in &self.relations {
            if let Some(&l) = r.word.0.iter().find(|&&l| l >= self.generators) {
                return Err(Error::LetterOutOfRange {
                    letter: l + 1,
                    generators: self.generators,
                });
            }
        }
        Ok(())
    }

    /// Neutral finitely-presented export, loadable by GAP.
    pub fn to_generic_fp(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# generic-fp {PRESENTATION_FORMAT_VERSION}\n"));
        out.push_str(&format!("F := FreeGroup({});\n", self.generators));
        let defs: Vec<String> = (1..=self.generators).map(|i| format!("s{i} := F.{i};")).collect();
        if !defs.is_empty() {
            out.push_str(&defs.join(" "));
            out.push('\n');
        }
        out.push_str("rels := [\n");
        for (t, r) in self.relations.iter().enumerate() {
            let word: Vec<String> = r.word.0.iter().map(|l| format!("s{}", l + 1)).collect();
            let sep = if t + 1 < self.relations.len() { "," } else { "" };
            out.push_str(&format!("  ({})^{}{}\n", word.join("*"), r.exponent, sep));
        }
        out.push_str("];\n");
        out
    }

    /// Native text format: `generators n`, then `(s1 s2)^3` per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let mut generators = None;
        let mut relations = Vec::new();
        for (line, raw) in lines.by_ref() {
            let (content, comment) = match raw.find('#') {
                Some(p) => (raw[..p].trim(), raw[p + 1..].trim()),
                None => (raw.trim(), ""),
            };
            if content.is_empty() {
                continue;
            }
            if generators.is_none() {
                let n = content
                    .strip_prefix("generators")
                    .map(str::trim)
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| parse_err(line, "expected `generators n`"))?;
                generators = Some(n);
                continue;
            }
            let n = generators.unwrap();
            let rest = content
                .strip_prefix('(')
                .ok_or_else(|| parse_err(line, "relation must start with `(`"))?;
            let close = rest.find(')').ok_or_else(|| parse_err(line, "missing `)`"))?;
            let letters: Vec<usize> = rest[..close]
                .split_whitespace()
                .map(|tok| {
                    tok.strip_prefix('s')
                        .and_then(|d| d.parse::<usize>().ok())
                        .filter(|&i| i >= 1 && i <= n)
                        .map(|i| i - 1)
                        .ok_or_else(|| parse_err(line, format!("bad generator `{tok}`")))
                })
                .collect::<Result<_>>()?;
            let exponent_text = rest[close + 1..].trim();
            let exponent = match exponent_text.strip_prefix('^') {
                Some(e) => e
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| parse_err(line, format!("bad exponent `{e}`")))?,
                None if exponent_text.is_empty() => 1,
                None => return Err(parse_err(line, "expected `^exponent`")),
            };
            let word = Word(letters);
            let kind = RelationKind::from_tag(comment).unwrap_or(match word.len() {
                1 if exponent == 2 => RelationKind::R1,
                2 if word.0[0] != word.0[1] => RelationKind::R2,
                _ => RelationKind::Other,
            });
            relations.push(Relation {
                word,
                exponent,
                kind,
            });
        }
        let generators = generators.ok_or_else(|| parse_err(1, "missing `generators n`"))?;
        Ok(Presentation {
            generators,
            relations,
        })
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators {}", self.generators)?;
        writeln!(f, "# format {PRESENTATION_FORMAT_VERSION}")?;
        for r in &self.relations {
            writeln!(f, "{r}  # {}", r.kind.tag())?;
        }
        Ok(())
    }
}
