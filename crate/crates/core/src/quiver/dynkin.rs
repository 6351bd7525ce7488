use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Quiver;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DynkinFamily {
    A,
    D,
    E,
}

/// A simply laced Dynkin diagram: `A_n` (n >= 1), `D_n` (n >= 4), `E_6..E_8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinType {
    family: DynkinFamily,
    rank: usize,
}

impl DynkinType {
    pub fn new(family: DynkinFamily, rank: usize) -> Result<Self> {
        let ok = match family {
            DynkinFamily::A => rank >= 1,
            DynkinFamily::D => rank >= 4,
            DynkinFamily::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(DynkinType { family, rank })
        } else {
            Err(Error::InvalidDynkinType(format!("{family:?}{rank}")))
        }
    }

    pub fn family(&self) -> DynkinFamily {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The standard orientation-free diagram as a quiver with every edge
    /// oriented from the smaller to the larger label. `A_n` is a path,
    /// `D_n` attaches vertex `n` to `n-2`, `E_n` attaches vertex `n` to 3.
    pub fn diagram(&self) -> Quiver {
        let n = self.rank;
        let mut edges: Vec<(usize, usize, i64)> = Vec::new();
        let spine = match self.family {
            DynkinFamily::A => n,
            DynkinFamily::D | DynkinFamily::E => n - 1,
        };
        for i in 1..spine {
            edges.push((i - 1, i, 1));
        }
        match self.family {
            DynkinFamily::A => {}
            DynkinFamily::D => edges.push((n - 3, n - 1, 1)),
            DynkinFamily::E => edges.push((2, n - 1, 1)),
        }
        Quiver::from_arrows(n, &edges).expect("standard diagram is valid")
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidDynkinType(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => DynkinFamily::A,
            Some('D') => DynkinFamily::D,
            Some('E') => DynkinFamily::E,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().trim_start_matches('_').parse().map_err(|_| bad())?;
        DynkinType::new(family, rank)
    }
}

impl Serialize for DynkinType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DynkinType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Recognises orientations of simply laced Dynkin diagrams.
///
/// Returns a type iff `q` is acyclic, every multiplicity is one and the
/// underlying graph is a tree of shape A, D or E.
pub fn dynkin_type(q: &Quiver) -> Option<DynkinType> {
    let n = q.n();
    if q.max_multiplicity() > 1 || !q.is_connected() || !q.is_acyclic() {
        return None;
    }
    let degree: Vec<usize> = (0..n).map(|v| q.neighbours(v).count()).collect();
    let edges: usize = degree.iter().sum::<usize>() / 2;
    if edges + 1 != n {
        return None;
    }
    let branch: Vec<usize> = (0..n).filter(|&v| degree[v] >= 3).collect();
    match branch.as_slice() {
        [] => DynkinType::new(DynkinFamily::A, n).ok(),
        [c] if degree[*c] == 3 => {
            // arm lengths, counted in vertices beyond the branch point
            let mut arms: Vec<usize> = q
                .neighbours(*c)
                .map(|start| {
                    let (mut prev, mut cur, mut len) = (*c, start, 1);
                    loop {
                        let next = q.neighbours(cur).find(|&w| w != prev);
                        match next {
                            Some(w) => {
                                prev = cur;
                                cur = w;
                                len += 1;
                            }
                            None => return len,
                        }
                    }
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => DynkinType::new(DynkinFamily::D, n).ok(),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => DynkinType::new(DynkinFamily::E, n).ok(),
                _ => None,
            }
        }
        _ => None,
    }
}
