//! Integer lattices given by generator rows: Hermite normal form, index and
//! membership.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Row-style Hermite normal form of a full row rank integer matrix: upper
/// triangular in echelon sense, positive pivots, entries above a pivot
/// reduced into `[0, pivot)`.
pub fn hnf(m: &[Vec<i64>]) -> Result<Vec<Vec<BigInt>>> {
    let rows: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    hnf_big(rows)
}

pub fn hnf_big(mut a: Vec<Vec<BigInt>>) -> Result<Vec<Vec<BigInt>>> {
    let m = a.len();
    if m == 0 {
        return Ok(a);
    }
    let n = a[0].len();
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidMatrix("ragged rows".into()));
    }
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        // Euclid on column c among rows r..m
        loop {
            let mut best: Option<usize> = None;
            for i in r..m {
                if !a[i][c].is_zero() && best.is_none_or(|b| a[i][c].abs() < a[b][c].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap(r, b);
            let mut done = true;
            for i in r + 1..m {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let pivot_row = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot_row = a[r].clone();
        for i in 0..r {
            let q = a[i][c].div_floor(&pivot_row[c]);
            if q.is_zero() {
                continue;
            }
            for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                *x -= &q * p;
            }
        }
        r += 1;
    }
    if r < m {
        return Err(Error::RankDeficient);
    }
    Ok(a)
}

/// A full-rank lattice in `Z^n`, stored by its Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    hnf: Vec<Vec<BigInt>>,
}

impl Lattice {
    /// Lattice spanned by the rows of `basis`, which must be square and
    /// nonsingular.
    pub fn new(basis: &[Vec<i64>]) -> Result<Self> {
        let n = basis.len();
        if let Some(r) = basis.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: r.len(),
            });
        }
        Ok(Lattice { hnf: hnf(basis)? })
    }

    /// The standard lattice `Z^n`.
    pub fn standard(n: usize) -> Self {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        Lattice::new(&rows).expect("identity is nonsingular")
    }

    pub fn dim(&self) -> usize {
        self.hnf.len()
    }

    pub fn hnf(&self) -> &[Vec<BigInt>] {
        &self.hnf
    }

    /// Absolute determinant (covolume).
    pub fn det(&self) -> BigInt {
        let mut d = BigInt::one();
        for (i, row) in self.hnf.iter().enumerate() {
            d *= &row[i];
        }
        d
    }

    /// Membership by back-substitution against the triangular basis.
    pub fn contains(&self, v: &[i64]) -> bool {
        let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.contains_big(&v)
    }

    /// Index `[ambient : self]`; `self` must be contained in `ambient`.
    pub fn index_in(&self, ambient: &Lattice) -> Result<BigInt> {
        if self.dim() != ambient.dim() {
            return Err(Error::DimensionMismatch {
                expected: ambient.dim(),
                got: self.dim(),
            });
        }
        if !self.hnf.iter().all(|row| ambient.contains_big(row)) {
            return Err(Error::NotSublattice);
        }
        Ok(self.det() / ambient.det())
    }

    pub fn contains_big(&self, v: &[BigInt]) -> bool {
        if v.len() != self.dim() {
            return false;
        }
        let mut residual: Vec<BigInt> = v.to_vec();
        for (i, row) in self.hnf.iter().enumerate() {
            let (q, rem) = residual[i].div_rem(&row[i]);
            if !rem.is_zero() {
                return false;
            }
            if q.is_zero() {
                continue;
            }
            for (x, p) in residual.iter_mut().zip(row) {
                *x -= &q * p;
            }
        }
        residual.iter().all(|x| x.is_zero())
    }
}

/// Index of the lattice spanned by `sub` rows in the one spanned by
/// `ambient` rows.
pub fn lattice_index(sub: &Lattice, ambient: &Lattice) -> Result<BigInt> {
    sub.index_in(ambient)
}

pub fn lattice_contains(lattice: &Lattice, v: &[i64]) -> bool {
    lattice.contains(v)
}
