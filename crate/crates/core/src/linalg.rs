//! Exact Gaussian elimination over `Q` and `Q(i)`.

use num_traits::{One, Zero};

use crate::rational::{GaussQ, Q};

/// The few field operations elimination needs.
pub trait Field: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse of a nonzero element.
    fn inverse(&self) -> Self;
}

impl Field for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn inverse(&self) -> Self {
        self.recip()
    }
}

impl Field for GaussQ {
    fn zero() -> Self {
        GaussQ::zero()
    }
    fn one() -> Self {
        GaussQ::one()
    }
    fn is_zero(&self) -> bool {
        GaussQ::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn inverse(&self) -> Self {
        self.inv().expect("nonzero pivot")
    }
}

/// Row-reduces in place; returns the rank and the determinant factor
/// (product of pivots with swap signs, only meaningful for square input).
fn eliminate<F: Field>(m: &mut [Vec<F>]) -> (usize, F) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut det = F::one();
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            det = F::zero();
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            det = det.neg();
        }
        let pivot = m[rank][c].clone();
        det = det.mul(&pivot);
        let inv = pivot.inverse();
        for r in rank + 1..rows {
            if m[r][c].is_zero() {
                continue;
            }
            let k = m[r][c].mul(&inv);
            let (top, bottom) = m.split_at_mut(r);
            for (x, p) in bottom[0][c..cols].iter_mut().zip(&top[rank][c..cols]) {
                *x = x.sub(&k.mul(p));
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    (rank, det)
}

pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    eliminate(&mut m.to_vec()).0
}

/// Determinant of a square matrix.
pub fn determinant<F: Field>(m: &[Vec<F>]) -> F {
    assert!(m.iter().all(|r| r.len() == m.len()), "square matrix");
    if m.is_empty() {
        return F::one();
    }
    let (rank, det) = eliminate(&mut m.to_vec());
    if rank < m.len() {
        F::zero()
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn q(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn rank_and_det() {
        let m = q(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(determinant(&m), int(0));
        let m = q(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&m), int(-1));
        let m = vec![vec![ratio(1, 2), int(0)], vec![int(3), ratio(2, 3)]];
        assert_eq!(determinant(&m), ratio(1, 3));
        assert_eq!(rank(&q(&[&[0, 0], &[0, 1], &[0, 2]])), 1);
    }

    #[test]
    fn gaussian_determinant() {
        // [[i, 1], [1, i]] has determinant -2
        let i = GaussQ::imag(int(1));
        let one = GaussQ::one();
        let m = vec![vec![i.clone(), one.clone()], vec![one, i]];
        assert_eq!(determinant(&m), GaussQ::real(int(-2)));
    }
}
