//! Quivers without loops or 2-cycles, stored as skew-symmetric integer matrices.
//!
//! Vertices are 0-based inside the library. Every external format (JSON, DOT,
//! CLI arguments) is 1-based and converts at the boundary.

mod canonical;
mod dynkin;
mod format;

pub use canonical::{canonical_form, CanonicalQuiver};
pub use dynkin::{dynkin_type, DynkinFamily, DynkinType};
pub use format::{parse_quiver, serialize_quiver, to_dot, QuiverJson};

use crate::error::{Error, Result};

/// A quiver on `n` vertices. `b[i][j] > 0` is the number of arrows `i -> j`
/// and `b[j][i] = -b[i][j]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quiver {
    n: usize,
    b: Vec<i64>,
}

impl std::fmt::Debug for Quiver {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let arrows: Vec<String> = self
            .arrows()
            .map(|(i, j, m)| {
                if m == 1 {
                    format!("{}->{}", i + 1, j + 1)
                } else {
                    format!("{}->{}x{}", i + 1, j + 1, m)
                }
            })
            .collect();
        write!(f, "Quiver(n={}, [{}])", self.n, arrows.join(", "))
    }
}

impl Quiver {
    /// The quiver with `n` vertices and no arrows.
    pub fn empty(n: usize) -> Self {
        Quiver { n, b: vec![0; n * n] }
    }

    /// Builds a quiver from a row-major `n x n` exchange matrix.
    pub fn from_matrix(n: usize, b: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidQuiver("a quiver needs at least one vertex".into()));
        }
        if b.len() != n * n {
            return Err(Error::InvalidQuiver(format!(
                "matrix has {} entries, expected {}",
                b.len(),
                n * n
            )));
        }
        for i in 0..n {
            if b[i * n + i] != 0 {
                return Err(Error::InvalidQuiver(format!("loop at vertex {}", i + 1)));
            }
            for j in i + 1..n {
                if b[i * n + j] != -b[j * n + i] {
                    return Err(Error::InvalidQuiver(format!(
                        "matrix is not skew-symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Quiver { n, b })
    }

    /// Builds a quiver from 0-based `(source, target, multiplicity)` triples.
    /// Rejects loops, 2-cycles and repeated pairs.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize, i64)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidQuiver("a quiver needs at least one vertex".into()));
        }
        let mut q = Quiver::empty(n);
        for &(s, t, m) in arrows {
            if s >= n {
                return Err(Error::VertexOutOfRange { vertex: s + 1, n });
            }
            if t >= n {
                return Err(Error::VertexOutOfRange { vertex: t + 1, n });
            }
            if s == t {
                return Err(Error::InvalidQuiver(format!("loop at vertex {}", s + 1)));
            }
            if m < 1 {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {} -> {} has multiplicity {m}",
                    s + 1,
                    t + 1
                )));
            }
            match q.b[s * n + t] {
                0 => {}
                x if x > 0 => {
                    return Err(Error::InvalidQuiver(format!(
                        "duplicate arrow entry {} -> {}",
                        s + 1,
                        t + 1
                    )))
                }
                _ => {
                    return Err(Error::InvalidQuiver(format!(
                        "2-cycle between {} and {}",
                        s + 1,
                        t + 1
                    )))
                }
            }
            q.b[s * n + t] = m;
            q.b[t * n + s] = -m;
        }
        Ok(q)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Row-major exchange matrix.
    pub fn matrix(&self) -> &[i64] {
        &self.b
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.b[i * self.n + j]
    }

    /// Number of arrows `i -> j` (zero when they point the other way).
    #[inline]
    pub fn arrows_between(&self, i: usize, j: usize) -> i64 {
        self.entry(i, j).max(0)
    }

    /// All arrows as `(source, target, multiplicity)`, sorted by source then target.
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |i| (0..n).map(move |j| (i, j)))
            .filter_map(move |(i, j)| {
                let m = self.b[i * n + j];
                (m > 0).then_some((i, j, m))
            })
    }

    /// Arrows with multiplicity unrolled, in the order of [`Quiver::arrows`].
    /// The position in this list is the arrow index used by representations.
    pub fn arrow_list(&self) -> Vec<(usize, usize)> {
        self.arrows()
            .flat_map(|(i, j, m)| std::iter::repeat_n((i, j), m as usize))
            .collect()
    }

    pub fn arrow_count(&self) -> i64 {
        self.arrows().map(|(_, _, m)| m).sum()
    }

    pub fn max_multiplicity(&self) -> i64 {
        self.b.iter().copied().max().unwrap_or(0).max(0)
    }

    pub fn check_vertex(&self, k: usize) -> Result<()> {
        if k < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: k + 1, n: self.n })
        }
    }

    /// Quiver mutation at vertex `k`: arrows at `k` are reversed and every
    /// path `i -> k -> j` adds an arrow `i -> j`, cancelling against `j -> i`.
    pub fn mutate(&self, k: usize) -> Result<Quiver> {
        self.check_vertex(k)?;
        let n = self.n;
        let mut b = self.b.clone();
        for i in 0..n {
            for j in 0..n {
                let v = if i == k || j == k {
                    -self.b[i * n + j]
                } else {
                    let ik = self.b[i * n + k];
                    let kj = self.b[k * n + j];
                    let through = if ik > 0 && kj > 0 {
                        ik.checked_mul(kj)
                    } else if ik < 0 && kj < 0 {
                        ik.checked_mul(kj).and_then(i64::checked_neg)
                    } else {
                        Some(0)
                    };
                    through
                        .and_then(|t| self.b[i * n + j].checked_add(t))
                        .ok_or(Error::MultiplicityOverflow(k + 1))?
                };
                b[i * n + j] = v;
            }
        }
        Ok(Quiver { n, b })
    }

    /// Applies mutations in order.
    pub fn mutate_sequence(&self, ks: &[usize]) -> Result<Quiver> {
        let mut q = self.clone();
        for &k in ks {
            q = q.mutate(k)?;
        }
        Ok(q)
    }

    /// The quiver relabeled so that old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Quiver {
        let n = self.n;
        assert_eq!(perm.len(), n, "permutation length");
        let mut b = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                b[perm[i] * n + perm[j]] = self.b[i * n + j];
            }
        }
        Quiver { n, b }
    }

    /// The quiver with every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver { n: self.n, b: self.b.iter().map(|x| -x).collect() }
    }

    /// Neighbours in the underlying undirected graph.
    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&w| self.entry(v, w) != 0)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Kahn's algorithm; `None` when an oriented cycle exists.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.n;
        let mut indeg: Vec<usize> = (0..n)
            .map(|j| (0..n).filter(|&i| self.entry(i, j) > 0).count())
            .collect();
        let mut ready: Vec<usize> = (0..n).rev().filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for w in (0..n).rev() {
                if self.entry(v, w) > 0 {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        ready.push(w);
                    }
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }
}
