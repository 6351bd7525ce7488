use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::{Seed, SeedJson, SeedKey};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::quiver::Quiver;

pub const DEFAULT_MAX_SEEDS: usize = 100_000;

/// Seeds reachable from `(q, x)` modulo simultaneous relabeling, with one
/// edge per mutation. Vertex 0 is the initial seed; vertices are numbered
/// in breadth-first discovery order.
#[derive(Debug, Clone)]
pub struct ExchangeGraph {
    seeds: Vec<Seed>,
    keys: Vec<SeedKey>,
    /// `(a, b, k)`: mutating the stored representative of `a` at `k` gives `b`.
    edges: Vec<(usize, usize, usize)>,
    truncated: bool,
}

/// Breadth-first closure of the initial seed under all mutations.
///
/// Each frontier is mutated in parallel; results are merged in frontier
/// order, so the outcome does not depend on scheduling. Stops with
/// `truncated() == true` once `max_seeds` seeds are known. Every new
/// variable is checked for positivity.
pub fn exchange_graph(q: &Quiver, max_seeds: usize) -> Result<ExchangeGraph> {
    let n = q.n();
    let root = Seed::initial(q);
    let mut index: HashMap<SeedKey, usize> = HashMap::new();
    let mut g = ExchangeGraph { seeds: vec![], keys: vec![], edges: vec![], truncated: false };
    let root_key = root.canonical_key();
    index.insert(root_key.clone(), 0);
    g.seeds.push(root);
    g.keys.push(root_key);
    let mut seen_edges: HashSet<(usize, usize)> = HashSet::new();
    let mut frontier = vec![0usize];

    while !frontier.is_empty() {
        let expanded: Vec<Vec<(Seed, SeedKey)>> = frontier
            .par_iter()
            .map(|&id| {
                (0..n)
                    .map(|k| {
                        let s = g.seeds[id].mutate(k)?;
                        if !s.cluster[k].is_nonnegative() {
                            return Err(Error::NotPositive(s.cluster[k].to_string()));
                        }
                        let key = s.canonical_key();
                        Ok((s, key))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;

        let mut next = Vec::new();
        for (&from, children) in frontier.iter().zip(expanded) {
            for (k, (seed, key)) in children.into_iter().enumerate() {
                let to = match index.get(&key) {
                    Some(&id) => id,
                    None => {
                        if g.seeds.len() >= max_seeds {
                            g.truncated = true;
                            continue;
                        }
                        let id = g.seeds.len();
                        index.insert(key.clone(), id);
                        g.seeds.push(seed);
                        g.keys.push(key);
                        next.push(id);
                        id
                    }
                };
                if seen_edges.insert((from.min(to), from.max(to))) {
                    g.edges.push((from, to, k));
                }
            }
        }
        frontier = next;
    }
    Ok(g)
}

/// Union of the clusters of [`exchange_graph`], with its truncation flag.
pub fn collect_cluster_variables(q: &Quiver, max_seeds: usize) -> Result<(BTreeSet<LaurentPoly>, bool)> {
    let g = exchange_graph(q, max_seeds)?;
    Ok((g.cluster_variables(), g.truncated()))
}

/// Outcome of checking the exchange relation along every edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeReport {
    pub checked: usize,
    /// Edges `(a, b, k)` (0-based) where the relation failed.
    pub violations: Vec<(usize, usize, usize)>,
}

impl EdgeReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl ExchangeGraph {
    pub fn n(&self) -> usize {
        self.seeds[0].n()
    }

    pub fn seeds(&self) -> &[Seed] {
        &self.seeds
    }

    pub fn keys(&self) -> &[SeedKey] {
        &self.keys
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.seeds.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.seeds.len()];
        for &(a, b, _) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    /// Union of all clusters, in normal-form order.
    pub fn cluster_variables(&self) -> BTreeSet<LaurentPoly> {
        self.seeds.iter().flat_map(|s| s.cluster.iter().cloned()).collect()
    }

    /// For every edge `(s, s')` at `k`: `u_k * u'_k` must equal the sum of
    /// the two exchange monomials of `s` at `k`, where `u'_k` is the variable
    /// of the stored seed `s'` that is not in `s`.
    pub fn verify_exchange_edges(&self) -> EdgeReport {
        let violations = self
            .edges
            .par_iter()
            .filter(|&&(a, b, k)| !self.edge_holds(a, b, k))
            .copied()
            .collect();
        EdgeReport { checked: self.edges.len(), violations }
    }

    fn edge_holds(&self, a: usize, b: usize, k: usize) -> bool {
        let (s, t) = (&self.seeds[a], &self.seeds[b]);
        let in_s: BTreeSet<&LaurentPoly> = s.cluster.iter().collect();
        let fresh: Vec<&LaurentPoly> = t.cluster.iter().filter(|v| !in_s.contains(v)).collect();
        let [fresh] = fresh.as_slice() else { return false };
        let shared = t.cluster.iter().filter(|v| in_s.contains(v)).count();
        if shared != s.n() - 1 || in_s.contains(*fresh) {
            return false;
        }
        let Ok((incoming, outgoing)) = s.exchange_monomials(k) else { return false };
        &s.cluster[k] * fresh == &incoming + &outgoing
    }

    /// `{"vertices":[{key, quiver, cluster}], "edges":[[keyA, keyB, k]], ...}`
    /// with 1-based `k`.
    pub fn to_json(&self, with_seeds: bool) -> serde_json::Value {
        let digests: Vec<String> = self.keys.iter().map(SeedKey::digest).collect();
        let vertices: Vec<serde_json::Value> = self
            .seeds
            .iter()
            .zip(&digests)
            .map(|(s, key)| {
                if with_seeds {
                    let j = SeedJson::from(s);
                    serde_json::json!({ "key": key, "quiver": j.quiver, "cluster": j.cluster })
                } else {
                    serde_json::json!({ "key": key })
                }
            })
            .collect();
        let edges: Vec<serde_json::Value> = self
            .edges
            .iter()
            .map(|&(a, b, k)| serde_json::json!([digests[a], digests[b], k + 1]))
            .collect();
        serde_json::json!({
            "seeds": self.vertex_count(),
            "edges_count": self.edge_count(),
            "variables_count": self.cluster_variables().len(),
            "truncated": self.truncated,
            "root": digests[0],
            "vertices": vertices,
            "edges": edges,
            "variables": self.cluster_variables().iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }

    pub fn to_dot(&self) -> String {
        let digests: Vec<String> = self.keys.iter().map(SeedKey::digest).collect();
        let mut out = String::from("graph exchange {\n");
        for d in &digests {
            out.push_str(&format!("  \"{d}\";\n"));
        }
        for &(a, b, k) in &self.edges {
            out.push_str(&format!("  \"{}\" -- \"{}\" [label=\"{}\"];\n", digests[a], digests[b], k + 1));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: usize, arrows: &[(usize, usize, i64)]) -> Quiver {
        let a: Vec<_> = arrows.iter().map(|&(s, t, m)| (s - 1, t - 1, m)).collect();
        Quiver::from_arrows(n, &a).unwrap()
    }

    fn texts(vars: &BTreeSet<LaurentPoly>) -> BTreeSet<String> {
        vars.iter().map(|v| v.to_string()).collect()
    }

    #[test]
    fn a1_graph() {
        let g = exchange_graph(&Quiver::empty(1), 100).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
        let expected: BTreeSet<LaurentPoly> =
            ["x1", "2/x1"].iter().map(|s| LaurentPoly::parse(1, s).unwrap()).collect();
        assert_eq!(g.cluster_variables(), expected);
        assert!(g.verify_exchange_edges().passed());
    }

    #[test]
    fn a2_pentagon() {
        let g = exchange_graph(&q(2, &[(1, 2, 1)]), 100).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 5);
        assert!(g.degrees().iter().all(|&d| d == 2));
        let expected: BTreeSet<LaurentPoly> =
            ["x1", "x2", "(1+x2)/x1", "(1+x1)/x2", "(1+x1+x2)/(x1*x2)"]
                .iter()
                .map(|s| LaurentPoly::parse(2, s).unwrap())
                .collect();
        assert_eq!(texts(&g.cluster_variables()), texts(&expected));
    }

    #[test]
    fn a3_associahedron() {
        let g = exchange_graph(&q(3, &[(1, 2, 1), (2, 3, 1)]), 1000).unwrap();
        assert_eq!(g.vertex_count(), 14);
        assert_eq!(g.edge_count(), 21);
        assert!(!g.truncated());
        assert_eq!(g.cluster_variables().len(), 9);
        let r = g.verify_exchange_edges();
        assert_eq!(r.checked, 21);
        assert!(r.passed());
    }

    #[test]
    fn truncation_is_flagged() {
        let kronecker = q(2, &[(1, 2, 2)]);
        let g = exchange_graph(&kronecker, 20).unwrap();
        assert!(g.truncated());
        assert_eq!(g.vertex_count(), 20);
    }

    #[test]
    fn tampered_edge_is_reported() {
        let mut g = exchange_graph(&q(2, &[(1, 2, 1)]), 100).unwrap();
        let (a, b, k) = g.edges[0];
        g.edges[0] = (a, b, 1 - k);
        assert_eq!(g.verify_exchange_edges().violations.len(), 1);
    }

    #[test]
    fn json_export_shape() {
        let g = exchange_graph(&q(2, &[(1, 2, 1)]), 100).unwrap();
        let j = g.to_json(true);
        assert_eq!(j["vertices"].as_array().unwrap().len(), 5);
        assert_eq!(j["edges"].as_array().unwrap().len(), 5);
        assert_eq!(j["vertices"][0]["cluster"][0], "x1");
        assert!(g.to_dot().contains(" -- "));
    }
}
