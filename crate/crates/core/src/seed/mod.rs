//! Seeds, seed mutation and everything built by iterating it.

mod class;
mod explore;
mod roots;

pub use class::{classify, mutation_class, ClassLimits, ClassStats, Classification, MutationClass, Verdict, Witness};
pub use explore::{collect_cluster_variables, exchange_graph, EdgeReport, ExchangeGraph, DEFAULT_MAX_SEEDS};
pub use roots::{positive_roots, positive_roots_of_graph, verify_root_bijection, RootReport};

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::quiver::{Quiver, QuiverJson};

/// A quiver together with an ordered cluster; `cluster[i]` sits at vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Seed {
    quiver: Quiver,
    cluster: Vec<LaurentPoly>,
}

impl Seed {
    /// The initial seed `(q, (x1, ..., xn))`.
    pub fn initial(q: &Quiver) -> Seed {
        let n = q.n();
        Seed { quiver: q.clone(), cluster: (0..n).map(|i| LaurentPoly::var(n, i)).collect() }
    }

    pub fn new(quiver: Quiver, cluster: Vec<LaurentPoly>) -> Result<Seed> {
        let n = quiver.n();
        if cluster.len() != n {
            return Err(Error::InvalidSeed(format!("{} variables for {n} vertices", cluster.len())));
        }
        if let Some(v) = cluster.iter().find(|v| v.nvars() != n) {
            return Err(Error::VariableMismatch(v.nvars(), n));
        }
        if cluster.iter().any(LaurentPoly::is_zero) {
            return Err(Error::InvalidSeed("zero cluster variable".into()));
        }
        let distinct: BTreeSet<&LaurentPoly> = cluster.iter().collect();
        if distinct.len() != n {
            return Err(Error::InvalidSeed("cluster variables are not distinct".into()));
        }
        Ok(Seed { quiver, cluster })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn cluster(&self) -> &[LaurentPoly] {
        &self.cluster
    }

    pub fn n(&self) -> usize {
        self.quiver.n()
    }

    /// The two monomials of the exchange relation at `k`: the product over
    /// arrows `i -> k` and the product over arrows `k -> j`, each arrow of
    /// multiplicity `m` contributing `u^m`.
    pub fn exchange_monomials(&self, k: usize) -> Result<(LaurentPoly, LaurentPoly)> {
        self.quiver.check_vertex(k)?;
        let n = self.n();
        let mut incoming = LaurentPoly::one(n);
        let mut outgoing = LaurentPoly::one(n);
        for i in 0..n {
            let b = self.quiver.entry(i, k);
            if b > 0 {
                incoming = &incoming * &self.cluster[i].pow(b as u32);
            } else if b < 0 {
                outgoing = &outgoing * &self.cluster[i].pow((-b) as u32);
            }
        }
        Ok((incoming, outgoing))
    }

    /// Seed mutation at `k`. The new variable is an exact quotient; a
    /// `NotDivisible` error here means the Laurent phenomenon was violated,
    /// which can only be a bug.
    pub fn mutate(&self, k: usize) -> Result<Seed> {
        let (incoming, outgoing) = self.exchange_monomials(k)?;
        let fresh = (&incoming + &outgoing).exact_divide(&self.cluster[k])?;
        let mut cluster = self.cluster.clone();
        cluster[k] = fresh;
        Ok(Seed { quiver: self.quiver.mutate(k)?, cluster })
    }

    pub fn mutate_sequence(&self, ks: &[usize]) -> Result<Seed> {
        let mut s = self.clone();
        for &k in ks {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// The seed relabeled so that old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Seed {
        let mut cluster = self.cluster.clone();
        for (v, &p) in perm.iter().enumerate() {
            cluster[p] = self.cluster[v].clone();
        }
        Seed { quiver: self.quiver.relabel(perm), cluster }
    }

    /// Key identifying the seed up to simultaneous renumbering of vertices
    /// and variables. Cluster variables are pairwise distinct, so sorting
    /// them fixes the relabeling; the quiver is then read off in that order.
    pub fn canonical_key(&self) -> SeedKey {
        let n = self.n();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| self.cluster[a].cmp(&self.cluster[b]));
        let mut perm = vec![0; n];
        for (rank, &v) in order.iter().enumerate() {
            perm[v] = rank;
        }
        SeedKey {
            cluster: order.iter().map(|&v| self.cluster[v].clone()).collect(),
            matrix: self.quiver.relabel(&perm).matrix().to_vec(),
        }
    }
}

/// Canonical identity of a seed modulo relabeling.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeedKey {
    pub cluster: Vec<LaurentPoly>,
    pub matrix: Vec<i64>,
}

impl SeedKey {
    /// Short stable hex identifier derived from the canonical text of the key.
    pub fn digest(&self) -> String {
        let mut text = String::new();
        for v in &self.cluster {
            let _ = write!(text, "{v};");
        }
        text.push('|');
        for b in &self.matrix {
            let _ = write!(text, "{b},");
        }
        let hash = Sha256::digest(text.as_bytes());
        hash.iter().take(8).fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }
}

/// Wire form of a seed: `{"quiver": <quiver JSON>, "cluster": ["<canonical text>", ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedJson {
    pub quiver: QuiverJson,
    pub cluster: Vec<String>,
}

impl From<&Seed> for SeedJson {
    fn from(s: &Seed) -> Self {
        SeedJson {
            quiver: QuiverJson::from(&s.quiver),
            cluster: s.cluster.iter().map(ToString::to_string).collect(),
        }
    }
}

impl TryFrom<&SeedJson> for Seed {
    type Error = Error;

    fn try_from(j: &SeedJson) -> Result<Seed> {
        let q = Quiver::try_from(&j.quiver)?;
        let cluster = j
            .cluster
            .iter()
            .map(|t| LaurentPoly::parse(q.n(), t))
            .collect::<Result<Vec<_>>>()?;
        Seed::new(q, cluster)
    }
}
