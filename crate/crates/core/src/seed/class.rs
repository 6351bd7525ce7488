use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{canonical_form, dynkin_type, DynkinType, Quiver, QuiverJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassLimits {
    pub max_quivers: usize,
    /// Stop `classify` as soon as an arrow of multiplicity >= 2 appears.
    pub early_exit: bool,
}

impl Default for ClassLimits {
    fn default() -> Self {
        ClassLimits { max_quivers: 1_000_000, early_exit: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassStats {
    pub size: usize,
    /// Members with at least one arrow of multiplicity >= 2.
    pub double_arrows: usize,
    pub max_multiplicity: i64,
}

/// A mutation class, members identified up to relabeling.
#[derive(Debug, Clone)]
pub struct MutationClass {
    n: usize,
    keys: Vec<Vec<u8>>,
    members: Vec<Quiver>,
    edges: Vec<(usize, usize, usize)>,
    stats: ClassStats,
    truncated: bool,
}

impl MutationClass {
    /// Canonical representatives in discovery order.
    pub fn members(&self) -> &[Quiver] {
        &self.members
    }

    /// Mutation edges `(a, b, k)`, each unordered pair-with-direction seen
    /// from the smaller index. Empty unless edges were requested.
    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn stats(&self) -> ClassStats {
        self.stats
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn key_hex(&self, i: usize) -> String {
        self.keys[i].iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vertices: Vec<serde_json::Value> = self
            .members
            .iter()
            .enumerate()
            .map(|(i, q)| serde_json::json!({ "key": self.key_hex(i), "quiver": QuiverJson::from(q) }))
            .collect();
        let edges: Vec<serde_json::Value> = self
            .edges
            .iter()
            .map(|&(a, b, k)| serde_json::json!([self.key_hex(a), self.key_hex(b), k + 1]))
            .collect();
        serde_json::json!({
            "size": self.stats.size,
            "double_arrows": self.stats.double_arrows,
            "max_mult": self.stats.max_multiplicity,
            "truncated": self.truncated,
            "vertices": vertices,
            "edges": edges,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph mutation_class {\n");
        for i in 0..self.members.len() {
            out.push_str(&format!("  \"{}\";\n", self.key_hex(i)));
        }
        for &(a, b, k) in &self.edges {
            out.push_str(&format!(
                "  \"{}\" -- \"{}\" [label=\"{}\"];\n",
                self.key_hex(a),
                self.key_hex(b),
                k + 1
            ));
        }
        out.push_str("}\n");
        out
    }
}

struct Walk {
    keys: Vec<Vec<u8>>,
    /// `(parent, k)` for every member but the root.
    parents: Vec<(u32, u32)>,
    edges: Vec<(usize, usize, usize)>,
    truncated: bool,
    stopped_at: Option<usize>,
}

impl Walk {
    fn path_to(&self, mut id: usize) -> Vec<usize> {
        let mut ks = Vec::new();
        while id != 0 {
            let (p, k) = self.parents[id];
            ks.push(k as usize);
            id = p as usize;
        }
        ks.reverse();
        ks
    }
}

/// Breadth-first walk over the mutation class of `q`. Frontier quivers keep
/// the labels of `q`, so recorded paths replay on `q` directly. `stop` is
/// called once per new member, in deterministic order.
fn walk(
    q: &Quiver,
    max_quivers: usize,
    record_edges: bool,
    mut stop: impl FnMut(&Quiver) -> bool,
) -> Result<Walk> {
    let n = q.n();
    let mut w = Walk {
        keys: vec![canonical_form(q).key()],
        parents: vec![(0, u32::MAX)],
        edges: Vec::new(),
        truncated: false,
        stopped_at: None,
    };
    let mut index: HashMap<Vec<u8>, usize> = HashMap::new();
    index.insert(w.keys[0].clone(), 0);
    if stop(q) {
        w.stopped_at = Some(0);
        return Ok(w);
    }
    let mut frontier: Vec<(usize, Quiver)> = vec![(0, q.clone())];

    while !frontier.is_empty() {
        let parents = &w.parents;
        let expanded: Vec<Vec<Option<(Quiver, Vec<u8>)>>> = frontier
            .par_iter()
            .map(|(id, quiver)| {
                (0..n)
                    .map(|k| {
                        // mutating back towards the parent cannot find anything new
                        if !record_edges && *id != 0 && parents[*id].1 as usize == k {
                            return Ok(None);
                        }
                        let m = quiver.mutate(k)?;
                        let key = canonical_form(&m).key();
                        Ok(Some((m, key)))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;

        let mut next = Vec::new();
        for ((from, _), children) in frontier.iter().zip(expanded) {
            for (k, child) in children.into_iter().enumerate() {
                let Some((m, key)) = child else { continue };
                let to = match index.get(&key) {
                    Some(&id) => id,
                    None => {
                        if w.keys.len() >= max_quivers {
                            w.truncated = true;
                            continue;
                        }
                        let id = w.keys.len();
                        index.insert(key.clone(), id);
                        w.keys.push(key);
                        w.parents.push((*from as u32, k as u32));
                        if stop(&m) {
                            w.stopped_at = Some(id);
                            return Ok(w);
                        }
                        next.push((id, m));
                        id
                    }
                };
                if record_edges && *from <= to {
                    w.edges.push((*from, to, k));
                }
            }
        }
        frontier = next;
    }
    Ok(w)
}

/// The mutation class of `q` up to relabeling (opposite quivers are not
/// identified), with member statistics.
pub fn mutation_class(q: &Quiver, max_quivers: usize, record_edges: bool) -> Result<MutationClass> {
    let mut stats = ClassStats { size: 0, double_arrows: 0, max_multiplicity: 0 };
    let w = walk(q, max_quivers.max(1), record_edges, |m| {
        let mult = m.max_multiplicity();
        stats.size += 1;
        stats.max_multiplicity = stats.max_multiplicity.max(mult);
        if mult >= 2 {
            stats.double_arrows += 1;
        }
        false
    })?;
    let members = w.keys.iter().map(|k| decode_key(k)).collect();
    Ok(MutationClass { n: q.n(), keys: w.keys, members, edges: w.edges, stats, truncated: w.truncated })
}

fn decode_key(bytes: &[u8]) -> Quiver {
    let mut it = bytes.iter();
    let mut next = || {
        let mut z: u64 = 0;
        let mut shift = 0;
        for &b in it.by_ref() {
            z |= u64::from(b & 0x7f) << shift;
            if b & 0x80 == 0 {
                break;
            }
            shift += 7;
        }
        z
    };
    let n = next() as usize;
    let mut b = vec![0i64; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let z = next();
            let v = ((z >> 1) as i64) ^ -((z & 1) as i64);
            b[i * n + j] = v;
            b[j * n + i] = -v;
        }
    }
    Quiver::from_matrix(n, b).expect("decoded canonical matrix is skew-symmetric")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Finite(DynkinType),
    Infinite,
    DepthExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Mutations (0-based, in the input's labels) leading to a Dynkin orientation.
    DynkinOrientation { sequence: Vec<usize>, quiver: Quiver },
    /// Mutations leading to a quiver with an arrow of multiplicity >= 2.
    MultipleArrow { sequence: Vec<usize>, quiver: Quiver },
    /// The whole class was enumerated without meeting a Dynkin orientation.
    ExhaustedClass { size: usize },
    /// Limits were hit first.
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub witness: Witness,
    /// Class members visited before the verdict.
    pub explored: usize,
}

impl Classification {
    /// One-line summary, e.g. `Finite(D6) witness=5,3,1,6`.
    pub fn summary(&self) -> String {
        let verdict = match &self.verdict {
            Verdict::Finite(t) => format!("Finite({t})"),
            Verdict::Infinite => "Infinite".to_string(),
            Verdict::DepthExhausted => "DepthExhausted".to_string(),
        };
        let seq = |s: &[usize]| s.iter().map(|k| (k + 1).to_string()).collect::<Vec<_>>().join(",");
        match &self.witness {
            Witness::DynkinOrientation { sequence, .. } => format!("{verdict} witness={}", seq(sequence)),
            Witness::MultipleArrow { sequence, .. } => {
                format!("{verdict} multiple_arrow_witness={}", seq(sequence))
            }
            Witness::ExhaustedClass { size } => format!("{verdict} exhausted_class={size}"),
            Witness::None => format!("{verdict} explored={}", self.explored),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let verdict = match &self.verdict {
            Verdict::Finite(t) => serde_json::json!({ "kind": "Finite", "type": t.to_string() }),
            Verdict::Infinite => serde_json::json!({ "kind": "Infinite" }),
            Verdict::DepthExhausted => serde_json::json!({ "kind": "DepthExhausted" }),
        };
        let one_based = |s: &[usize]| s.iter().map(|k| k + 1).collect::<Vec<_>>();
        let witness = match &self.witness {
            Witness::DynkinOrientation { sequence, quiver } => serde_json::json!({
                "kind": "DynkinOrientation", "sequence": one_based(sequence), "quiver": QuiverJson::from(quiver)
            }),
            Witness::MultipleArrow { sequence, quiver } => serde_json::json!({
                "kind": "MultipleArrow", "sequence": one_based(sequence), "quiver": QuiverJson::from(quiver)
            }),
            Witness::ExhaustedClass { size } => serde_json::json!({ "kind": "ExhaustedClass", "size": size }),
            Witness::None => serde_json::json!({ "kind": "None" }),
        };
        serde_json::json!({ "verdict": verdict, "witness": witness, "explored": self.explored })
    }
}

/// Finite-type test by breadth-first search of the mutation class.
///
/// With `early_exit`, any arrow of multiplicity >= 2 proves infinite type
/// (the class of a finite-type quiver only has `|b_ij b_ji| <= 3`, i.e. simple
/// arrows in the skew-symmetric case). Without it the verdict rests purely on
/// finding or excluding a Dynkin orientation.
pub fn classify(q: &Quiver, limits: ClassLimits) -> Result<Classification> {
    if !q.is_connected() {
        return Err(Error::Disconnected);
    }
    enum Hit {
        Dynkin(DynkinType),
        Multiple,
    }
    let mut hit = None;
    let mut seen = 0usize;
    let walked = walk(q, limits.max_quivers.max(1), false, |m| {
        seen += 1;
        if let Some(t) = dynkin_type(m) {
            hit = Some(Hit::Dynkin(t));
            return true;
        }
        if limits.early_exit && m.max_multiplicity() >= 2 {
            hit = Some(Hit::Multiple);
            return true;
        }
        false
    });
    let w = match walked {
        Ok(w) => w,
        Err(Error::MultiplicityOverflow(_)) => {
            return Ok(Classification { verdict: Verdict::DepthExhausted, witness: Witness::None, explored: seen })
        }
        Err(e) => return Err(e),
    };
    let result = match (hit, w.stopped_at) {
        (Some(Hit::Dynkin(t)), Some(id)) => {
            let sequence = w.path_to(id);
            let quiver = q.mutate_sequence(&sequence)?;
            Classification {
                verdict: Verdict::Finite(t),
                witness: Witness::DynkinOrientation { sequence, quiver },
                explored: seen,
            }
        }
        (Some(Hit::Multiple), Some(id)) => {
            let sequence = w.path_to(id);
            let quiver = q.mutate_sequence(&sequence)?;
            Classification {
                verdict: Verdict::Infinite,
                witness: Witness::MultipleArrow { sequence, quiver },
                explored: seen,
            }
        }
        _ if w.truncated => {
            Classification { verdict: Verdict::DepthExhausted, witness: Witness::None, explored: seen }
        }
        _ => Classification {
            verdict: Verdict::Infinite,
            witness: Witness::ExhaustedClass { size: w.keys.len() },
            explored: seen,
        },
    };
    Ok(result)
}
