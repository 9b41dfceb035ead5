//! Dense linear algebra over finite fields.

use std::fmt::Debug;

use crate::numtheory::inv_mod;

pub trait Field {
    type Elem: Copy + Eq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `a` must be nonzero.
    fn inv(&self, a: Self::Elem) -> Self::Elem;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }
}

/// The prime field `Z/pZ` with elements in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        PrimeField { p }
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub fn pow(&self, b: u64, e: u64) -> u64 {
        crate::numtheory::pow_mod(b, e, self.p)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % self.p as u128) as u64
    }
    fn inv(&self, a: u64) -> u64 {
        inv_mod(a, self.p)
    }
}

pub type Matrix<E> = Vec<Vec<E>>;

/// Reduces `m` in place to reduced row echelon form and returns the pivot
/// columns. Pivoting takes the first usable row, so results are
/// deterministic.
pub fn rref<F: Field>(field: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !field.is_zero(m[i][c])) else {
            continue;
        };
        m.swap(r, pr);
        let inv = field.inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !field.is_zero(row[c]) {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = field.sub(*x, field.mul(f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> usize {
    let mut work = m.to_vec();
    rref(field, &mut work).len()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace<F: Field>(field: &F, m: &[Vec<F::Elem>], cols: usize) -> Matrix<F::Elem> {
    let mut work = m.to_vec();
    let pivots = rref(field, &mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![field.zero(); cols];
            v[fc] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(work[r][fc]);
            }
            v
        })
        .collect()
}

/// `m * v`.
pub fn mat_vec<F: Field>(field: &F, m: &[Vec<F::Elem>], v: &[F::Elem]) -> Vec<F::Elem> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(field.zero(), |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_nullspace_mod_7() {
        let f = PrimeField::new(7);
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank(&f, &m), 2);
        let ns = nullspace(&f, &m, 3);
        assert_eq!(ns.len(), 1);
        assert!(mat_vec(&f, &m, &ns[0]).iter().all(|&x| x == 0));
    }

    #[test]
    fn full_rank_identity() {
        let f = PrimeField::new(2);
        let mut m = vec![vec![0, 1], vec![1, 1]];
        assert_eq!(rref(&f, &mut m), vec![0, 1]);
        assert_eq!(m, vec![vec![1, 0], vec![0, 1]]);
    }
}
