//! Gaussian elimination over exact fields: the rationals and prime fields.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub trait FieldElem: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn inv(&self) -> Self;
}

impl FieldElem for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// An element of `F_p`, carrying its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    pub v: u64,
    pub p: u64,
}

impl Fp {
    pub fn new(v: u64, p: u64) -> Self {
        Fp { v: v % p, p }
    }

    /// Reduces a rational modulo `p`; `None` when `p` divides the denominator.
    pub fn from_rational(x: &BigRational, p: u64) -> Option<Self> {
        let pb = BigInt::from(p);
        let den = ((x.denom() % &pb) + &pb) % &pb;
        if den.is_zero() {
            return None;
        }
        let num = ((x.numer() % &pb) + &pb) % &pb;
        let to_u64 = |b: BigInt| -> u64 { b.try_into().expect("reduced residue fits in u64") };
        Some(Fp::new(to_u64(num), p).mul(&Fp::new(to_u64(den), p).inv()))
    }
}

impl FieldElem for Fp {
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
    fn is_zero_elem(&self) -> bool {
        self.v == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp { v: (self.v + o.v) % self.p, p: self.p }
    }
    fn sub(&self, o: &Self) -> Self {
        Fp { v: (self.v + self.p - o.v) % self.p, p: self.p }
    }
    fn mul(&self, o: &Self) -> Self {
        Fp { v: ((u128::from(self.v) * u128::from(o.v)) % u128::from(self.p)) as u64, p: self.p }
    }
    fn inv(&self) -> Self {
        assert!(self.v != 0, "inverse of zero in F_{}", self.p);
        // Fermat
        let (mut base, mut e, mut acc) = (*self, self.p - 2, Fp { v: 1, p: self.p });
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// Reduces `rows` in place to reduced row echelon form and returns the
/// pivot columns. Zero rows end up at the bottom.
pub fn rref<F: FieldElem>(rows: &mut [Vec<F>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero_elem()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        for x in rows[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero_elem() {
                let f = rows[i][c].clone();
                for j in 0..ncols {
                    let delta = f.mul(&rows[r][j]);
                    rows[i][j] = rows[i][j].sub(&delta);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: FieldElem>(mut rows: Vec<Vec<F>>) -> usize {
    rref(&mut rows).len()
}

pub fn rational_identity(d: usize) -> Vec<Vec<BigRational>> {
    (0..d)
        .map(|i| (0..d).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn rational_rank() {
        assert_eq!(rank(vec![vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
        assert_eq!(rank(vec![vec![q(1), q(2)], vec![q(3), q(4)]]), 2);
        assert_eq!(rank::<BigRational>(vec![]), 0);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        let m = |p| vec![vec![Fp::new(1, p), Fp::new(1, p)], vec![Fp::new(1, p), Fp::new(3, p)]];
        assert_eq!(rank(m(2)), 1);
        assert_eq!(rank(m(5)), 2);
    }

    #[test]
    fn rational_reduction_mod_p() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(Fp::from_rational(&half, 2), None);
        assert_eq!(Fp::from_rational(&half, 5), Some(Fp::new(3, 5)));
        let neg = BigRational::new((-1).into(), 3.into());
        assert_eq!(Fp::from_rational(&neg, 7).unwrap().mul(&Fp::new(3, 7)), Fp::new(6, 7));
    }

    #[test]
    fn fermat_inverse() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            for v in 1..p {
                assert_eq!(Fp::new(v, p).mul(&Fp::new(v, p).inv()).v, 1);
            }
        }
    }
}
