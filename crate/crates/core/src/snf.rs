//! Dense integer matrices and their Smith normal form.
//!
//! The reduction first runs on `i64` with checked arithmetic and restarts
//! on `BigInt` if any intermediate value overflows.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// `cols` fixes the width when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            cols,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Invariant factors `d_1 | d_2 | ... | d_r` (all positive) of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// True when every invariant factor is 1.
    pub fn is_unimodular_image(&self) -> bool {
        self.invariant_factors.iter().all(One::is_one)
    }

    /// Rank of the free part of the cokernel `Z^cols / row span`.
    pub fn cokernel_free_rank(&self, cols: usize) -> usize {
        cols - self.rank
    }

    /// Nontrivial torsion coefficients of the cokernel.
    pub fn cokernel_torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let small: Option<Vec<i64>> = m.data.iter().map(ToPrimitive::to_i64).collect();
    if let Some(data) = small {
        if let Some(diag) = reduce(m.rows, m.cols, data) {
            return finish(diag.into_iter().map(BigInt::from).collect());
        }
    }
    let diag = reduce(m.rows, m.cols, m.data.clone()).expect("big integers never overflow");
    finish(diag)
}

fn finish(diag: Vec<BigInt>) -> SmithForm {
    let invariant_factors: Vec<BigInt> = diag.into_iter().map(|d| d.abs()).collect();
    SmithForm {
        rank: invariant_factors.len(),
        invariant_factors,
    }
}

trait Scalar: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn magnitude_lt(&self, other: &Self) -> bool;
    /// Quotient truncated toward zero.
    fn quot(&self, d: &Self) -> Self;
    fn divides(&self, x: &Self) -> bool;
    /// `self - q * x`.
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    fn add(&self, x: &Self) -> Option<Self>;
}

impl Scalar for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn magnitude_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }

    fn quot(&self, d: &Self) -> Self {
        // i64::MIN / -1 wraps; the checked product in sub_mul then overflows.
        self.wrapping_div(*d)
    }

    fn divides(&self, x: &Self) -> bool {
        x.checked_rem(*self).is_none_or(|r| r == 0)
    }

    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        q.checked_mul(*x).and_then(|p| self.checked_sub(p))
    }

    fn add(&self, x: &Self) -> Option<Self> {
        self.checked_add(*x)
    }
}

impl Scalar for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn magnitude_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }

    fn quot(&self, d: &Self) -> Self {
        self / d
    }

    fn divides(&self, x: &Self) -> bool {
        x.is_multiple_of(self)
    }

    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self - q * x)
    }

    fn add(&self, x: &Self) -> Option<Self> {
        Some(self + x)
    }
}

/// Diagonalize in place; returns the nonzero diagonal, or `None` on overflow.
fn reduce<T: Scalar>(rows: usize, cols: usize, mut a: Vec<T>) -> Option<Vec<T>> {
    let idx = |i: usize, j: usize| i * cols + j;
    let mut diag = Vec::new();

    for t in 0..rows.min(cols) {
        // Smallest nonzero entry of the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &a[idx(i, j)];
                if !x.is_zero() && pivot.is_none_or(|(pi, pj)| x.magnitude_lt(&a[idx(pi, pj)])) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut a, cols, t, pi);
        swap_cols(&mut a, cols, rows, t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[idx(i, t)].is_zero() {
                    continue;
                }
                let q = a[idx(i, t)].quot(&a[idx(t, t)]);
                for j in t..cols {
                    if a[idx(t, j)].is_zero() {
                        continue;
                    }
                    a[idx(i, j)] = a[idx(i, j)].sub_mul(&q, &a[idx(t, j)])?;
                }
                clean &= a[idx(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[idx(t, j)].is_zero() {
                    continue;
                }
                let q = a[idx(t, j)].quot(&a[idx(t, t)]);
                for i in t..rows {
                    if a[idx(i, t)].is_zero() {
                        continue;
                    }
                    a[idx(i, j)] = a[idx(i, j)].sub_mul(&q, &a[idx(i, t)])?;
                }
                clean &= a[idx(t, j)].is_zero();
            }

            if !clean {
                // A remainder smaller than the pivot survived; promote the smallest one.
                let mut best = (t, t);
                for i in t + 1..rows {
                    let x = &a[idx(i, t)];
                    if !x.is_zero() && x.magnitude_lt(&a[idx(best.0, best.1)]) {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    let x = &a[idx(t, j)];
                    if !x.is_zero() && x.magnitude_lt(&a[idx(best.0, best.1)]) {
                        best = (t, j);
                    }
                }
                swap_rows(&mut a, cols, t, best.0);
                swap_cols(&mut a, cols, rows, t, best.1);
                continue;
            }

            // The pivot must divide the whole trailing block.
            let pivot = a[idx(t, t)].clone();
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !pivot.divides(&a[idx(i, j)]))
            });
            match offender {
                Some(i) => {
                    for j in t..cols {
                        a[idx(t, j)] = a[idx(t, j)].add(&a[idx(i, j)])?;
                    }
                }
                None => break,
            }
        }
        diag.push(a[idx(t, t)].clone());
    }
    Some(diag)
}

fn swap_rows<T>(a: &mut [T], cols: usize, r1: usize, r2: usize) {
    if r1 == r2 {
        return;
    }
    for j in 0..cols {
        a.swap(r1 * cols + j, r2 * cols + j);
    }
}

fn swap_cols<T>(a: &mut [T], cols: usize, rows: usize, c1: usize, c2: usize) {
    if c1 == c2 {
        return;
    }
    for i in 0..rows {
        a.swap(i * cols + c1, i * cols + c2);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(m: &IntMatrix) -> Vec<i64> {
        smith_normal_form(m)
            .invariant_factors
            .iter()
            .map(|d| d.to_i64().unwrap())
            .collect()
    }

    #[test]
    fn identity() {
        assert_eq!(factors(&IntMatrix::identity(4)), vec![1, 1, 1, 1]);
    }

    #[test]
    fn coprime_diagonal() {
        assert_eq!(factors(&IntMatrix::from_i64(&[vec![2, 0], vec![0, 3]])), vec![1, 6]);
    }

    #[test]
    fn zero_matrix() {
        let snf = smith_normal_form(&IntMatrix::zeros(3, 2));
        assert!(snf.invariant_factors.is_empty());
        assert_eq!(snf.rank, 0);
        assert_eq!(snf.cokernel_free_rank(2), 2);
    }

    #[test]
    fn textbook_example() {
        // Classic example with invariant factors 2, 6, 12.
        let m = IntMatrix::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(factors(&m), vec![2, 6, 12]);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 2;
        let m = IntMatrix::from_i64(&[vec![big, big - 1], vec![big - 1, big - 3]]);
        let snf = smith_normal_form(&m);
        // det = big*(big-3) - (big-1)^2 = -big - 1
        let det = BigInt::from(big) * BigInt::from(big - 3) - BigInt::from(big - 1).pow(2);
        let prod: BigInt = snf.invariant_factors.iter().product();
        assert_eq!(prod, det.abs());
        assert_eq!(snf.invariant_factors[0], BigInt::one());
    }

    #[test]
    fn empty_shapes() {
        assert_eq!(smith_normal_form(&IntMatrix::zeros(0, 5)).rank, 0);
        assert_eq!(smith_normal_form(&IntMatrix::zeros(4, 0)).rank, 0);
    }
}
