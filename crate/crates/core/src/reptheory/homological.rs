use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;

use super::linalg::rank;
use super::representation::{CcObject, Representation};
use crate::error::{Error, Result};
use crate::quiver::Quiver;

/// Dimension of `Hom(M, N)`: solutions `(φ_i)` of `φ_j M_a = N_a φ_i` for
/// every arrow `a: i -> j`.
pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    if m.quiver() != n.quiver() {
        return Err(Error::QuiverMismatch);
    }
    let (dm, dn) = (m.dims(), n.dims());
    // φ_i is dn[i] x dm[i]; unknown (i, r, c) sits at offset[i] + r * dm[i] + c
    let mut offset = Vec::with_capacity(dm.len());
    let mut unknowns = 0;
    for i in 0..dm.len() {
        offset.push(unknowns);
        unknowns += dn[i] * dm[i];
    }
    if unknowns == 0 {
        return Ok(0);
    }
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for (a, &(s, t)) in m.quiver().arrow_list().iter().enumerate() {
        let (ma, na) = (&m.maps()[a], &n.maps()[a]);
        for r in 0..dn[t] {
            for c in 0..dm[s] {
                let mut row = vec![BigRational::zero(); unknowns];
                // (φ_t M_a)[r][c] = Σ_l φ_t[r][l] M_a[l][c]
                for l in 0..dm[t] {
                    row[offset[t] + r * dm[t] + l] += &ma[l][c];
                }
                // (N_a φ_s)[r][c] = Σ_l N_a[r][l] φ_s[l][c]
                for l in 0..dn[s] {
                    row[offset[s] + l * dm[s] + c] -= &na[r][l];
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    Ok(unknowns - rank(rows))
}

/// `<d, e> = Σ_i d_i e_i - Σ_{a: i -> j} d_i e_j`, arrows with multiplicity.
pub fn euler_form(q: &Quiver, d: &[usize], e: &[usize]) -> Result<i64> {
    for v in [d, e] {
        if v.len() != q.n() {
            return Err(Error::LengthMismatch { got: v.len(), n: q.n() });
        }
    }
    let diagonal: i64 = d.iter().zip(e).map(|(a, b)| (a * b) as i64).sum();
    let arrows: i64 = q.arrows().map(|(i, j, m)| m * (d[i] * e[j]) as i64).sum();
    Ok(diagonal - arrows)
}

/// `dim Ext¹(M, N) = dim Hom(M, N) - <dim M, dim N>` over a hereditary path algebra.
pub fn ext1_module_dim(m: &Representation, n: &Representation) -> Result<usize> {
    if !m.quiver().is_acyclic() {
        return Err(Error::NotAcyclic);
    }
    let hom = hom_dim(m, n)? as i64;
    let ext = hom - euler_form(m.quiver(), m.dims(), n.dims())?;
    if ext < 0 {
        return Err(Error::NegativeExt(ext));
    }
    Ok(ext as usize)
}

/// `Ext¹` in the cluster category, by cases: two modules give
/// `ext¹(M,N) + ext¹(N,M)`; a module against `ΣP_i` gives `dim M_i`; two
/// shifted projectives give 0.
pub fn ext1_cluster_dim(x: &CcObject, y: &CcObject) -> Result<usize> {
    match (x, y) {
        (CcObject::Module(m), CcObject::Module(n)) => Ok(ext1_module_dim(m, n)? + ext1_module_dim(n, m)?),
        (CcObject::Module(m), CcObject::ShiftedProjective(i))
        | (CcObject::ShiftedProjective(i), CcObject::Module(m)) => {
            m.quiver().check_vertex(*i)?;
            Ok(m.dims()[*i])
        }
        (CcObject::ShiftedProjective(_), CcObject::ShiftedProjective(_)) => Ok(0),
    }
}

pub fn is_rigid(x: &CcObject) -> Result<bool> {
    Ok(ext1_cluster_dim(x, x)? == 0)
}

/// Whether `objects` (exactly `n` of them, pairwise non-isomorphic) have
/// vanishing cluster `Ext¹` between all pairs, self-pairs included.
///
/// Objects are compared by dimension vector, which determines rigid
/// indecomposables up to isomorphism.
pub fn is_cluster_tilting(q: &Quiver, objects: &[CcObject]) -> Result<bool> {
    if objects.len() != q.n() {
        return Err(Error::WrongSetSize { expected: q.n(), got: objects.len() });
    }
    let mut labels = BTreeSet::new();
    for x in objects {
        match x {
            CcObject::Module(m) if m.quiver() != q => return Err(Error::QuiverMismatch),
            CcObject::ShiftedProjective(i) => q.check_vertex(*i)?,
            _ => {}
        }
        if !labels.insert(x.label()) {
            return Err(Error::DuplicateObject);
        }
    }
    for (a, x) in objects.iter().enumerate() {
        for y in &objects[a..] {
            if ext1_cluster_dim(x, y)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
