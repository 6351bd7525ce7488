//! Quiver Grassmannians by point counting over prime fields.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::linalg::{FieldElem, Fp};
use super::representation::Representation;
use crate::error::{Error, Result};

/// A subspace of `F_p^d` in reduced row echelon form.
#[derive(Debug, Clone)]
struct Subspace {
    rows: Vec<Vec<Fp>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn contains(&self, v: &[Fp]) -> bool {
        let mut w = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if !w[c].is_zero_elem() {
                let f = w[c];
                for (x, r) in w.iter_mut().zip(row) {
                    *x = x.sub(&f.mul(r));
                }
            }
        }
        w.iter().all(FieldElem::is_zero_elem)
    }
}

/// Every `e`-dimensional subspace of `F_p^d`, once each, via RREF bases.
fn subspaces(d: usize, e: usize, p: u64) -> Vec<Subspace> {
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(e);
    choose_pivots(d, e, 0, &mut pivots, &mut |piv| {
        // free positions: row r, column c > piv[r] with c not a pivot
        let free: Vec<(usize, usize)> = (0..e)
            .flat_map(|r| ((piv[r] + 1)..d).filter(|c| !piv.contains(c)).map(move |c| (r, c)))
            .collect();
        let total = (p as u128).pow(free.len() as u32);
        for code in 0..total {
            let mut rows = vec![vec![Fp::new(0, p); d]; e];
            for (r, &c) in piv.iter().enumerate() {
                rows[r][c] = Fp::new(1, p);
            }
            let mut x = code;
            for &(r, c) in &free {
                rows[r][c] = Fp::new((x % p as u128) as u64, p);
                x /= p as u128;
            }
            out.push(Subspace { rows, pivots: piv.to_vec() });
        }
    });
    out
}

fn choose_pivots(d: usize, e: usize, from: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if acc.len() == e {
        f(acc);
        return;
    }
    for c in from..d {
        acc.push(c);
        choose_pivots(d, e, c + 1, acc, f);
        acc.pop();
    }
}

fn reduce(rep: &Representation, p: u64) -> Result<Vec<Vec<Vec<Fp>>>> {
    rep.maps()
        .iter()
        .map(|m| {
            m.iter()
                .map(|row| {
                    row.iter().map(|x| Fp::from_rational(x, p).ok_or(Error::PrimeCollision(p))).collect()
                })
                .collect()
        })
        .collect()
}

fn apply(m: &[Vec<Fp>], v: &[Fp], p: u64) -> Vec<Fp> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Fp::new(0, p), |acc, (a, b)| acc.add(&a.mul(b))))
        .collect()
}

/// Number of subrepresentations `U ⊆ V` with `dim U_i = e_i` over `F_p`,
/// where `V` is reduced modulo `p`.
pub fn count_subreps(rep: &Representation, e: &[usize], p: u64) -> Result<u64> {
    let dims = rep.dims();
    if e.len() != dims.len() {
        return Err(Error::LengthMismatch { got: e.len(), n: dims.len() });
    }
    if e.iter().zip(dims).any(|(a, b)| a > b) {
        return Err(Error::ProfileOutOfRange);
    }
    let maps = reduce(rep, p)?;
    let arrows = rep.quiver().arrow_list();
    let choices: Vec<Vec<Subspace>> = dims.iter().zip(e).map(|(&d, &k)| subspaces(d, k, p)).collect();
    let mut chosen: Vec<usize> = Vec::with_capacity(dims.len());
    Ok(count_from(0, &choices, &arrows, &maps, p, &mut chosen))
}

fn count_from(
    v: usize,
    choices: &[Vec<Subspace>],
    arrows: &[(usize, usize)],
    maps: &[Vec<Vec<Fp>>],
    p: u64,
    chosen: &mut Vec<usize>,
) -> u64 {
    if v == choices.len() {
        return 1;
    }
    let mut total = 0;
    for idx in 0..choices[v].len() {
        chosen.push(idx);
        let ok = arrows.iter().enumerate().all(|(a, &(s, t))| {
            // check arrows once both ends are fixed, i.e. when the later one is v
            if s.max(t) != v {
                return true;
            }
            let (us, ut) = (&choices[s][chosen[s]], &choices[t][chosen[t]]);
            us.rows.iter().all(|b| ut.contains(&apply(&maps[a], b, p)))
        });
        if ok {
            total += count_from(v + 1, choices, arrows, maps, p, chosen);
        }
        chosen.pop();
    }
    total
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Euler characteristic of the quiver Grassmannian `Gr_e(V)`.
///
/// Counts points over `D + 2` primes (skipping those dividing a denominator
/// of `V`), `D = Σ e_i (d_i - e_i)`; interpolates the count as a polynomial
/// of degree at most `D` through the first `D + 1`, requires the last one to
/// agree, and evaluates at `q = 1`.
pub fn grassmannian_euler_char(rep: &Representation, e: &[usize]) -> Result<BigInt> {
    let dims = rep.dims();
    if e.len() != dims.len() {
        return Err(Error::LengthMismatch { got: e.len(), n: dims.len() });
    }
    if e.iter().zip(dims).any(|(a, b)| a > b) {
        return Err(Error::ProfileOutOfRange);
    }
    let degree: usize = e.iter().zip(dims).map(|(&a, &d)| a * (d - a)).sum();
    let denominators = rep.denominators();
    let primes: Vec<u64> = (2u64..)
        .filter(|&p| is_prime(p))
        .filter(|&p| denominators.iter().all(|d| !(d % BigInt::from(p)).is_zero()))
        .take(degree + 2)
        .collect();
    let counts: Vec<u64> = primes.par_iter().map(|&p| count_subreps(rep, e, p)).collect::<Result<_>>()?;
    let points: Vec<(BigRational, BigRational)> = primes
        .iter()
        .zip(&counts)
        .map(|(&p, &c)| (BigRational::from_integer(p.into()), BigRational::from_integer(c.into())))
        .collect();
    let (fit, check) = points.split_at(degree + 1);
    let predicted = lagrange(fit, &check[0].0);
    if predicted != check[0].1 {
        return Err(Error::InterpolationInconsistent(format!(
            "counts {:?} at primes {:?} do not fit a polynomial of degree {degree}",
            counts, primes
        )));
    }
    let chi = lagrange(fit, &BigRational::one());
    if !chi.is_integer() {
        return Err(Error::InterpolationInconsistent(format!("non-integral value {chi} at q = 1")));
    }
    Ok(chi.to_integer())
}

fn lagrange(points: &[(BigRational, BigRational)], at: &BigRational) -> BigRational {
    let mut sum = BigRational::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut term = yi.clone();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                term = term * (at - xj) / (xi - xj);
            }
        }
        sum += term;
    }
    sum
}
