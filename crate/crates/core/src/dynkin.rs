//! The finite-type Dynkin catalog: Gram matrices, Cartan matrices, Coxeter
//! matrices and standard seeds.

use std::fmt;
use std::str::FromStr;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::exchange::ExchangeMatrix;

/// A connected Dynkin type, Bourbaki numbering.
///
/// `B(n)` and `C(n)` share a diagram; [`DynkinType::diagram_label`] merges
/// them as `B/Cn`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DynkinType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl DynkinType {
    pub fn new_checked(self) -> Result<Self> {
        let ok = match self {
            DynkinType::A(n) => n >= 1,
            DynkinType::B(n) | DynkinType::C(n) => n >= 2,
            DynkinType::D(n) => n >= 4,
            DynkinType::E(n) => (6..=8).contains(&n),
            DynkinType::F4 | DynkinType::G2 => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::UnsupportedType(self.to_string()))
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            DynkinType::A(n) | DynkinType::B(n) | DynkinType::C(n) | DynkinType::D(n) | DynkinType::E(n) => n,
            DynkinType::F4 => 4,
            DynkinType::G2 => 2,
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self, DynkinType::A(_) | DynkinType::D(_) | DynkinType::E(_))
    }

    /// Label of the diagram class; B and C coincide here.
    pub fn diagram_label(&self) -> String {
        match *self {
            DynkinType::B(n) | DynkinType::C(n) => format!("B/C{n}"),
            other => other.to_string(),
        }
    }

    /// Unoriented edges `(i, j, weight)` with `i < j`, 0-based.
    fn bonds(&self) -> Vec<(usize, usize, u8)> {
        let path = |n: usize| (0..n.saturating_sub(1)).map(|i| (i, i + 1, 1u8)).collect::<Vec<_>>();
        match *self {
            DynkinType::A(n) => path(n),
            DynkinType::B(n) | DynkinType::C(n) => {
                let mut b = path(n);
                b.last_mut().unwrap().2 = 2;
                b
            }
            DynkinType::D(n) => {
                let mut b = path(n - 1);
                b.push((n - 3, n - 1, 1));
                b
            }
            DynkinType::E(n) => {
                let mut b = vec![(0, 2, 1), (1, 3, 1)];
                b.extend((2..n - 1).map(|i| (i, i + 1, 1)));
                b.sort();
                b
            }
            DynkinType::F4 => vec![(0, 1, 1), (1, 2, 2), (2, 3, 1)],
            DynkinType::G2 => vec![(0, 1, 3)],
        }
    }

    /// Squared root lengths of the simple roots (short roots have length 2).
    fn squared_lengths(&self) -> Vec<i64> {
        let n = self.rank();
        match *self {
            DynkinType::B(_) => (0..n).map(|i| if i + 1 < n { 4 } else { 2 }).collect(),
            DynkinType::C(_) => (0..n).map(|i| if i + 1 < n { 2 } else { 4 }).collect(),
            DynkinType::F4 => vec![4, 4, 2, 2],
            DynkinType::G2 => vec![2, 6],
            _ => vec![2; n],
        }
    }

    /// Gram matrix `(α_i, α_j)` of the simple roots.
    pub fn gram_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let len = self.squared_lengths();
        let mut s = vec![vec![0i64; n]; n];
        for i in 0..n {
            s[i][i] = len[i];
        }
        for (i, j, w) in self.bonds() {
            // |α_i||α_j|cos(θ) with cos²θ = w/4
            let v = match w {
                1 => -len[i].min(len[j]) / 2,
                2 => -2,
                3 => -3,
                _ => unreachable!(),
            };
            s[i][j] = v;
            s[j][i] = v;
        }
        s
    }

    /// Cartan matrix with entries `(α_i, α_j^∨) = 2(α_i, α_j)/(α_j, α_j)`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let s = self.gram_matrix();
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| 2 * s[i][j] / s[j][j]).collect())
            .collect()
    }

    /// Coxeter matrix read off the Cartan matrix: `m_ij` from `a_ij a_ji`.
    pub fn coxeter_matrix(&self) -> Vec<Vec<u32>> {
        let c = self.cartan_matrix();
        let n = self.rank();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            return 1;
                        }
                        match c[i][j] * c[j][i] {
                            0 => 2,
                            1 => 3,
                            2 => 4,
                            3 => 6,
                            p => panic!("non-crystallographic bond {p}"),
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Exchange matrix whose Cartan counterpart is the Cartan matrix,
    /// oriented `i -> j` for `i < j`.
    pub fn seed_matrix(&self) -> ExchangeMatrix {
        let c = self.cartan_matrix();
        let n = self.rank();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.cmp(&j) {
                        std::cmp::Ordering::Less => c[i][j].abs(),
                        std::cmp::Ordering::Greater => -c[i][j].abs(),
                        std::cmp::Ordering::Equal => 0,
                    })
                    .collect()
            })
            .collect();
        ExchangeMatrix::new(rows).expect("Dynkin seeds are skew-symmetrisable")
    }

    pub fn seed_diagram(&self) -> Diagram {
        Diagram::of(&self.seed_matrix())
    }

    /// Matches a tree diagram against the catalog; `B/C` comes back as `B`.
    pub fn identify_tree(g: &Diagram) -> Option<DynkinType> {
        let n = g.rank();
        if n == 0 || !g.is_connected() || g.edges().len() != n - 1 {
            return None;
        }
        if n == 1 {
            return Some(DynkinType::A(1));
        }
        let edges = g.edges();
        let degree = |v: usize| g.neighbours(v).len();
        let heavy: Vec<_> = edges.iter().filter(|e| e.weight > 1).collect();
        let is_path = (0..n).all(|v| degree(v) <= 2);
        match heavy.as_slice() {
            [] => {
                if is_path {
                    return Some(DynkinType::A(n));
                }
                let branch: Vec<usize> = (0..n).filter(|&v| degree(v) >= 3).collect();
                if branch.len() != 1 || degree(branch[0]) != 3 {
                    return None;
                }
                let centre = branch[0];
                let mut arms: Vec<usize> = g
                    .neighbours(centre)
                    .into_iter()
                    .map(|start| {
                        let (mut prev, mut cur, mut len) = (centre, start, 1);
                        loop {
                            let next: Vec<usize> =
                                g.neighbours(cur).into_iter().filter(|&x| x != prev).collect();
                            match next.as_slice() {
                                [x] => {
                                    prev = cur;
                                    cur = *x;
                                    len += 1;
                                }
                                _ => break len,
                            }
                        }
                    })
                    .collect();
                arms.sort();
                match arms.as_slice() {
                    [1, 1, k] => Some(DynkinType::D(k + 3)),
                    [1, 2, 2] => Some(DynkinType::E(6)),
                    [1, 2, 3] => Some(DynkinType::E(7)),
                    [1, 2, 4] => Some(DynkinType::E(8)),
                    _ => None,
                }
            }
            [e] if is_path => match e.weight {
                3 if n == 2 => Some(DynkinType::G2),
                2 => {
                    let end = degree(e.source) == 1 || degree(e.target) == 1;
                    if end {
                        Some(DynkinType::B(n))
                    } else if n == 4 {
                        Some(DynkinType::F4)
                    } else {
                        None
                    }
                }
                _ => None,
            },
            _ => None,
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::B(n) => write!(f, "B{n}"),
            DynkinType::C(n) => write!(f, "C{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
            DynkinType::F4 => write!(f, "F4"),
            DynkinType::G2 => write!(f, "G2"),
        }
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    /// Accepts `A3`, `B3`, `C3`, `B/C3` (read as `B3`), `BC3`, `D4`, `E6`,
    /// `F4`, `G2`, case-insensitive, optional `_` before the rank.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnsupportedType(s.to_string());
        let t = s.trim().to_ascii_uppercase().replace('_', "");
        let (letters, digits) = t.split_at(t.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
        let n: usize = digits.parse().map_err(|_| bad())?;
        let ty = match letters {
            "A" => DynkinType::A(n),
            "B" | "B/C" | "BC" => DynkinType::B(n),
            "C" => DynkinType::C(n),
            "D" => DynkinType::D(n),
            "E" => DynkinType::E(n),
            "F" if n == 4 => DynkinType::F4,
            "G" if n == 2 => DynkinType::G2,
            _ => return Err(bad()),
        };
        ty.new_checked().map_err(|_| bad())
    }
}
