use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::linalg::rational_identity;
use crate::error::{Error, Result};
use crate::quiver::{dynkin_type, DynkinFamily, Quiver, QuiverJson};

pub type Matrix = Vec<Vec<BigRational>>;

/// A representation over the rationals: a space of dimension `dims[i]` at
/// each vertex and, for each arrow `a: i -> j` of [`Quiver::arrow_list`], a
/// `dims[j] x dims[i]` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    quiver: Quiver,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

fn zero_matrix(rows: usize, cols: usize) -> Matrix {
    vec![vec![BigRational::zero(); cols]; rows]
}

impl Representation {
    pub fn new(quiver: Quiver, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if dims.len() != quiver.n() {
            return Err(Error::LengthMismatch { got: dims.len(), n: quiver.n() });
        }
        let arrows = quiver.arrow_list();
        if maps.len() != arrows.len() {
            return Err(Error::InvalidRepresentation(format!(
                "{} maps for {} arrows",
                maps.len(),
                arrows.len()
            )));
        }
        for (a, (&(s, t), m)) in arrows.iter().zip(&maps).enumerate() {
            if m.len() != dims[t] || m.iter().any(|row| row.len() != dims[s]) {
                return Err(Error::InvalidRepresentation(format!(
                    "map of arrow {a} ({} -> {}) must be {} x {}",
                    s + 1,
                    t + 1,
                    dims[t],
                    dims[s]
                )));
            }
        }
        Ok(Representation { quiver, dims, maps })
    }

    /// All maps zero.
    pub fn semisimple(quiver: &Quiver, dims: Vec<usize>) -> Result<Self> {
        if dims.len() != quiver.n() {
            return Err(Error::LengthMismatch { got: dims.len(), n: quiver.n() });
        }
        let maps = quiver.arrow_list().iter().map(|&(s, t)| zero_matrix(dims[t], dims[s])).collect();
        Representation::new(quiver.clone(), dims, maps)
    }

    pub fn zero(quiver: &Quiver) -> Self {
        Self::semisimple(quiver, vec![0; quiver.n()]).expect("zero representation")
    }

    pub fn simple(quiver: &Quiver, i: usize) -> Result<Self> {
        quiver.check_vertex(i)?;
        let mut dims = vec![0; quiver.n()];
        dims[i] = 1;
        Self::semisimple(quiver, dims)
    }

    /// The projective `P_i`: at `j`, the span of the paths from `i` to `j`;
    /// arrows act by extending paths.
    pub fn projective(quiver: &Quiver, i: usize) -> Result<Self> {
        quiver.check_vertex(i)?;
        if !quiver.is_acyclic() {
            return Err(Error::NotAcyclic);
        }
        let arrows = quiver.arrow_list();
        // paths as arrow-index sequences, grouped by end vertex
        let mut paths: Vec<Vec<Vec<usize>>> = vec![Vec::new(); quiver.n()];
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(i, Vec::new())];
        while let Some((v, p)) = stack.pop() {
            for (a, &(s, t)) in arrows.iter().enumerate() {
                if s == v {
                    let mut np = p.clone();
                    np.push(a);
                    stack.push((t, np));
                }
            }
            paths[v].push(p);
        }
        for ps in &mut paths {
            ps.sort();
        }
        let dims: Vec<usize> = paths.iter().map(Vec::len).collect();
        let maps = arrows
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut m = zero_matrix(dims[t], dims[s]);
                for (col, p) in paths[s].iter().enumerate() {
                    let mut ext = p.clone();
                    ext.push(a);
                    let row = paths[t].binary_search(&ext).expect("extended path is a path");
                    m[row][col] = BigRational::one();
                }
                m
            })
            .collect();
        Representation::new(quiver.clone(), dims, maps)
    }

    /// The interval module on positions `i..=j` (0-based) of the path order
    /// of a type-A quiver; see [`path_order`].
    pub fn interval(quiver: &Quiver, i: usize, j: usize) -> Result<Self> {
        let order = path_order(quiver)?;
        if i > j || j >= order.len() {
            return Err(Error::BadInterval(i + 1, j + 1));
        }
        let mut dims = vec![0; quiver.n()];
        for &v in &order[i..=j] {
            dims[v] = 1;
        }
        let maps = quiver
            .arrow_list()
            .iter()
            .map(|&(s, t)| {
                if dims[s] == 1 && dims[t] == 1 {
                    rational_identity(1)
                } else {
                    zero_matrix(dims[t], dims[s])
                }
            })
            .collect();
        Representation::new(quiver.clone(), dims, maps)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.quiver != other.quiver {
            return Err(Error::QuiverMismatch);
        }
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let arrows = self.quiver.arrow_list();
        let maps = arrows
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut m = zero_matrix(dims[t], dims[s]);
                for (r, row) in self.maps[a].iter().enumerate() {
                    for (c, x) in row.iter().enumerate() {
                        m[r][c] = x.clone();
                    }
                }
                for (r, row) in other.maps[a].iter().enumerate() {
                    for (c, x) in row.iter().enumerate() {
                        m[self.dims[t] + r][self.dims[s] + c] = x.clone();
                    }
                }
                m
            })
            .collect();
        Representation::new(self.quiver.clone(), dims, maps)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Maps in the order of [`Quiver::arrow_list`].
    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Common denominators of all matrix entries (1 if integral).
    pub fn denominators(&self) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = self
            .maps
            .iter()
            .flatten()
            .flatten()
            .map(|x| x.denom().clone())
            .filter(|d| !d.is_one())
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Vertices of a type-A quiver listed along the underlying path, starting
/// from the endpoint with the smaller label.
pub fn path_order(q: &Quiver) -> Result<Vec<usize>> {
    match dynkin_type(q) {
        Some(t) if t.family() == DynkinFamily::A => {}
        _ => return Err(Error::NotTypeA),
    }
    let n = q.n();
    let start = (0..n).find(|&v| q.neighbours(v).count() <= 1).expect("a path has an endpoint");
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(next) = q.neighbours(cur).find(|&w| w != prev) {
        order.push(next);
        prev = cur;
        cur = next;
    }
    Ok(order)
}

/// An indecomposable object of the cluster category as seen from the
/// module category: a representation, or the shifted projective `ΣP_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CcObject {
    Module(Representation),
    ShiftedProjective(usize),
}

impl CcObject {
    pub fn quiver_n(&self) -> Option<usize> {
        match self {
            CcObject::Module(m) => Some(m.quiver.n()),
            CcObject::ShiftedProjective(_) => None,
        }
    }

    /// Short label: `M(d1,...,dn)` for modules, `SP<i>` for `ΣP_i` (1-based).
    pub fn label(&self) -> String {
        match self {
            CcObject::Module(m) => {
                let dims: Vec<String> = m.dims.iter().map(ToString::to_string).collect();
                format!("M({})", dims.join(","))
            }
            CcObject::ShiftedProjective(i) => format!("SP{}", i + 1),
        }
    }
}

/// Wire form: `{"quiver": ..., "dims": [...], "maps": {"<arrowIndex>": [["p/q", ...], ...]}}`.
/// Arrow indices are 0-based positions in [`Quiver::arrow_list`]; missing
/// maps are zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub quiver: QuiverJson,
    pub dims: Vec<usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<Vec<serde_json::Value>>>,
}

fn parse_rational(v: &serde_json::Value) -> Result<BigRational> {
    let bad = || Error::InvalidRepresentation(format!("bad matrix entry {v}"));
    let text = match v {
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        _ => return Err(bad()),
    };
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

fn render_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl TryFrom<&RepresentationJson> for Representation {
    type Error = Error;

    fn try_from(j: &RepresentationJson) -> Result<Self> {
        let q = Quiver::try_from(&j.quiver)?;
        let mut rep = Representation::semisimple(&q, j.dims.clone())?;
        let narrows = rep.maps.len();
        for (key, rows) in &j.maps {
            let a: usize = key
                .parse()
                .ok()
                .filter(|&a| a < narrows)
                .ok_or_else(|| Error::InvalidRepresentation(format!("no arrow with index {key}")))?;
            let m: Matrix = rows
                .iter()
                .map(|row| row.iter().map(parse_rational).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?;
            // an empty list stands for a matrix with no rows or no columns
            if !(m.is_empty() && rep.maps[a].iter().all(Vec::is_empty)) {
                rep.maps[a] = m;
            }
        }
        Representation::new(q, rep.dims, rep.maps)
    }
}

impl From<&Representation> for RepresentationJson {
    fn from(r: &Representation) -> Self {
        let maps = r
            .maps
            .iter()
            .enumerate()
            .filter(|(_, m)| m.iter().flatten().any(|x| !x.is_zero()))
            .map(|(a, m)| {
                let rows = m
                    .iter()
                    .map(|row| row.iter().map(|x| serde_json::Value::String(render_rational(x))).collect())
                    .collect();
                (a.to_string(), rows)
            })
            .collect();
        RepresentationJson { quiver: QuiverJson::from(&r.quiver), dims: r.dims.clone(), maps }
    }
}
