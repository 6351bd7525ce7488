use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::exchange_graph;
use crate::error::{Error, Result};
use crate::quiver::{dynkin_type, DynkinType, Quiver};

/// Positive roots of a simply laced Dynkin type in the simple-root basis of
/// its standard diagram (see [`DynkinType::diagram`]).
pub fn positive_roots(t: DynkinType) -> Vec<Vec<i64>> {
    positive_roots_of_graph(&t.diagram())
}

/// Positive roots of the root system whose Cartan matrix is `2I - A`, with
/// `A` the adjacency matrix of the underlying graph of `q`.
///
/// Closure of the simple roots under simple reflections, keeping vectors
/// with nonnegative entries. For a non-Dynkin graph the closure is infinite;
/// callers are expected to pass Dynkin diagrams.
pub fn positive_roots_of_graph(q: &Quiver) -> Vec<Vec<i64>> {
    let n = q.n();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(v) = queue.pop_front() {
        for i in 0..n {
            // (C v)_i = 2 v_i - sum of neighbours; s_i v = v - (C v)_i e_i
            let pairing = 2 * v[i] - q.neighbours(i).map(|j| v[j] * q.entry(i, j).abs()).sum::<i64>();
            if pairing == 0 {
                continue;
            }
            let mut w = v.clone();
            w[i] -= pairing;
            if w.iter().all(|&x| x >= 0) && w.iter().any(|&x| x > 0) && seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    seen.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootReport {
    pub dynkin_type: String,
    pub rank: usize,
    pub variables: usize,
    pub positive_roots: usize,
    /// `variables == rank + positive_roots`.
    pub count_matches: bool,
    /// Denominator vectors of the non-initial variables are pairwise
    /// distinct and are exactly the positive roots.
    pub bijection: bool,
    pub denominators_not_roots: Vec<Vec<i64>>,
    pub roots_not_hit: Vec<Vec<i64>>,
}

impl RootReport {
    pub fn passed(&self) -> bool {
        self.count_matches && self.bijection
    }
}

/// Matches the denominator vectors of the non-initial cluster variables of
/// a Dynkin orientation `q` against the positive roots of its underlying
/// diagram (simple roots indexed by the vertices of `q`).
pub fn verify_root_bijection(q: &Quiver, max_seeds: usize) -> Result<RootReport> {
    let t = dynkin_type(q).ok_or(Error::NotDynkin)?;
    let g = exchange_graph(q, max_seeds)?;
    if g.truncated() {
        return Err(Error::Truncated);
    }
    let n = q.n();
    let vars = g.cluster_variables();
    let mut by_denominator: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    let initial: Vec<_> = (0..n).map(|i| crate::LaurentPoly::var(n, i)).collect();
    for v in vars.iter().filter(|v| !initial.contains(v)) {
        *by_denominator.entry(v.denominator_vector()?).or_default() += 1;
    }
    let roots: BTreeSet<Vec<i64>> = positive_roots_of_graph(q).into_iter().collect();
    let denominators: BTreeSet<Vec<i64>> = by_denominator.keys().cloned().collect();
    let injective = by_denominator.values().all(|&c| c == 1);
    Ok(RootReport {
        dynkin_type: t.to_string(),
        rank: n,
        variables: vars.len(),
        positive_roots: roots.len(),
        count_matches: vars.len() == n + roots.len(),
        bijection: injective && denominators == roots,
        denominators_not_roots: denominators.difference(&roots).cloned().collect(),
        roots_not_hit: roots.difference(&denominators).cloned().collect(),
    })
}
