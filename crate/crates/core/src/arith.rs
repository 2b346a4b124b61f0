//! Exact ordered fields and symmetric-matrix inertia.
//!
//! Two fields are provided: arbitrary-precision rationals, and the
//! biquadratic field `Q(sqrt 2, sqrt 3)` needed for Gram matrices of Coxeter
//! diagrams whose cycles admit no rational rescaling.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact ordered field.
pub trait ExactField: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Panics on division by zero.
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Sign relative to zero.
    fn sign(&self) -> Ordering;

    fn is_zero(&self) -> bool {
        self.sign() == Ordering::Equal
    }
}

impl ExactField for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sign(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `a + b*sqrt2 + c*sqrt3 + d*sqrt6` with rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Surd {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} + {}*r2 + {}*r3 + {}*r6)",
            self.a, self.b, self.c, self.d
        )
    }
}

impl Surd {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        Surd { a, b, c, d }
    }

    pub fn rational(a: BigRational) -> Self {
        Surd::new(a, rat(0), rat(0), rat(0))
    }

    pub fn sqrt2() -> Self {
        Surd::new(rat(0), rat(1), rat(0), rat(0))
    }

    pub fn sqrt3() -> Self {
        Surd::new(rat(0), rat(0), rat(1), rat(0))
    }

    fn conj2(&self) -> Self {
        Surd::new(self.a.clone(), -&self.b, self.c.clone(), -&self.d)
    }

    fn conj3(&self) -> Self {
        Surd::new(self.a.clone(), self.b.clone(), -&self.c, -&self.d)
    }
}

/// Sign of `p + q*sqrt3`.
fn sign_sqrt3(p: &BigRational, q: &BigRational) -> Ordering {
    let sp = ExactField::sign(p);
    let sq = ExactField::sign(q);
    match (sp, sq) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (x, y) if x == y => x,
        _ => {
            // opposite signs: compare p^2 with 3 q^2
            let lhs = p * p;
            let rhs = q * q * rat(3);
            match lhs.cmp(&rhs) {
                Ordering::Greater => sp,
                Ordering::Less => sq,
                Ordering::Equal => Ordering::Equal,
            }
        }
    }
}

impl ExactField for Surd {
    fn zero() -> Self {
        Surd::rational(rat(0))
    }
    fn one() -> Self {
        Surd::rational(rat(1))
    }
    fn add(&self, o: &Self) -> Self {
        Surd::new(
            &self.a + &o.a,
            &self.b + &o.b,
            &self.c + &o.c,
            &self.d + &o.d,
        )
    }
    fn sub(&self, o: &Self) -> Self {
        Surd::new(
            &self.a - &o.a,
            &self.b - &o.b,
            &self.c - &o.c,
            &self.d - &o.d,
        )
    }
    fn mul(&self, o: &Self) -> Self {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&o.a, &o.b, &o.c, &o.d);
        let r = a * e + rat(2) * b * f + rat(3) * c * g + rat(6) * d * h;
        let s2 = a * f + b * e + rat(3) * (c * h + d * g);
        let s3 = a * g + c * e + rat(2) * (b * h + d * f);
        let s6 = a * h + d * e + b * g + c * f;
        Surd::new(r, s2, s3, s6)
    }
    fn div(&self, o: &Self) -> Self {
        // x / y = x * conj2(y) * conj3(n) / norm, n = y * conj2(y) lies in Q(sqrt3)
        let c2 = o.conj2();
        let n = o.mul(&c2);
        let c3 = n.conj3();
        let norm = n.mul(&c3).a;
        assert!(!Zero::is_zero(&norm), "division by zero in Q(sqrt2, sqrt3)");
        let num = self.mul(&c2).mul(&c3);
        Surd::new(
            &num.a / &norm,
            &num.b / &norm,
            &num.c / &norm,
            &num.d / &norm,
        )
    }
    fn neg(&self) -> Self {
        Surd::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }
    fn sign(&self) -> Ordering {
        // self = P + Q*sqrt2 with P = a + c*sqrt3, Q = b + d*sqrt3
        let sp = sign_sqrt3(&self.a, &self.c);
        let sq = sign_sqrt3(&self.b, &self.d);
        match (sp, sq) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            _ => {
                let r = &self.a * &self.a + rat(3) * &self.c * &self.c
                    - rat(2) * &self.b * &self.b
                    - rat(6) * &self.d * &self.d;
                let s = rat(2) * &self.a * &self.c - rat(4) * &self.b * &self.d;
                match sign_sqrt3(&r, &s) {
                    Ordering::Greater => sp,
                    Ordering::Less => sq,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }
}

/// Sylvester inertia of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn dim(&self) -> usize {
        self.positive + self.negative + self.zero
    }
    pub fn is_positive_definite(&self) -> bool {
        self.negative == 0 && self.zero == 0
    }
    pub fn is_positive_semidefinite(&self) -> bool {
        self.negative == 0
    }
}

/// Exact inertia by symmetric pivoting (congruence transformations only).
/// Uses a 1x1 pivot when a nonzero diagonal entry exists and a 2x2
/// `[[0, b], [b, 0]]` pivot otherwise.
pub fn inertia<F: ExactField>(matrix: &[Vec<F>]) -> Inertia {
    let n = matrix.len();
    let mut m: Vec<Vec<F>> = matrix.to_vec();
    let mut active: Vec<usize> = (0..n).collect();
    let mut result = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&i| !m[i][i].is_zero()) {
            let p = active.swap_remove(pos);
            let pivot = m[p][p].clone();
            match pivot.sign() {
                Ordering::Greater => result.positive += 1,
                _ => result.negative += 1,
            }
            for &j in &active {
                if m[j][p].is_zero() {
                    continue;
                }
                let factor = m[j][p].div(&pivot);
                for &k in &active {
                    if m[p][k].is_zero() {
                        continue;
                    }
                    let delta = factor.mul(&m[p][k]);
                    m[j][k] = m[j][k].sub(&delta);
                }
            }
            continue;
        }
        let mut pair = None;
        'outer: for (x, &i) in active.iter().enumerate() {
            for &j in &active[x + 1..] {
                if !m[i][j].is_zero() {
                    pair = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = pair else {
            result.zero += active.len();
            break;
        };
        active.retain(|&x| x != i && x != j);
        let b = m[i][j].clone();
        result.positive += 1;
        result.negative += 1;
        let rows: Vec<usize> = active.clone();
        let mut updates = Vec::new();
        for &k in &rows {
            for &l in &rows {
                let t = m[k][i].mul(&m[j][l]).add(&m[k][j].mul(&m[i][l])).div(&b);
                if !t.is_zero() {
                    updates.push((k, l, t));
                }
            }
        }
        for (k, l, t) in updates {
            m[k][l] = m[k][l].sub(&t);
        }
    }
    result
}

/// Reduced fraction with `i128` parts; every operation reports overflow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Q128 {
    n: i128,
    d: i128,
}

impl Q128 {
    fn int(n: i64) -> Self {
        Q128 { n: n as i128, d: 1 }
    }

    fn reduce(n: i128, d: i128) -> Option<Self> {
        if d == 0 {
            return None;
        }
        let g = gcd_i128(n, d);
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = n.checked_neg()?;
            d = d.checked_neg()?;
        }
        Some(Q128 { n, d })
    }

    fn mul(self, o: Q128) -> Option<Q128> {
        let g1 = gcd_i128(self.n, o.d);
        let g2 = gcd_i128(o.n, self.d);
        let n = (self.n / g1).checked_mul(o.n / g2)?;
        let d = (self.d / g2).checked_mul(o.d / g1)?;
        Q128::reduce(n, d)
    }

    fn div(self, o: Q128) -> Option<Q128> {
        if o.n == 0 {
            return None;
        }
        self.mul(Q128 { n: o.d, d: o.n })
    }

    fn sub(self, o: Q128) -> Option<Q128> {
        let g = gcd_i128(self.d, o.d);
        let l = (self.d / g).checked_mul(o.d)?;
        let a = self.n.checked_mul(l / self.d)?;
        let b = o.n.checked_mul(l / o.d)?;
        Q128::reduce(a.checked_sub(b)?, l)
    }

    fn add(self, o: Q128) -> Option<Q128> {
        self.sub(Q128 {
            n: o.n.checked_neg()?,
            d: o.d,
        })
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    if a == 0 {
        1
    } else {
        a as i128
    }
}

/// Inertia of a small integer symmetric matrix using checked `i128`
/// fractions; `None` if an intermediate value overflows.
pub fn inertia_small(matrix: &[Vec<i64>]) -> Option<Inertia> {
    let n = matrix.len();
    let mut m: Vec<Vec<Q128>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| Q128::int(x)).collect())
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut result = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&i| m[i][i].n != 0) {
            let p = active.swap_remove(pos);
            let pivot = m[p][p];
            if pivot.n > 0 {
                result.positive += 1;
            } else {
                result.negative += 1;
            }
            for &j in &active {
                if m[j][p].n == 0 {
                    continue;
                }
                let factor = m[j][p].div(pivot)?;
                for &k in &active {
                    if m[p][k].n == 0 {
                        continue;
                    }
                    let delta = factor.mul(m[p][k])?;
                    m[j][k] = m[j][k].sub(delta)?;
                }
            }
            continue;
        }
        let mut pair = None;
        'outer: for (x, &i) in active.iter().enumerate() {
            for &j in &active[x + 1..] {
                if m[i][j].n != 0 {
                    pair = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = pair else {
            result.zero += active.len();
            break;
        };
        active.retain(|&x| x != i && x != j);
        let b = m[i][j];
        result.positive += 1;
        result.negative += 1;
        let mut updates = Vec::new();
        for &k in &active {
            for &l in &active {
                let t = m[k][i].mul(m[j][l])?.add(m[k][j].mul(m[i][l])?)?.div(b)?;
                if t.n != 0 {
                    updates.push((k, l, t));
                }
            }
        }
        for (k, l, t) in updates {
            m[k][l] = m[k][l].sub(t)?;
        }
    }
    Some(result)
}

/// Determinant by Gaussian elimination with row pivoting.
pub fn determinant<F: ExactField>(matrix: &[Vec<F>]) -> F {
    let n = matrix.len();
    let mut m = matrix.to_vec();
    let mut det = F::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return F::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = det.neg();
        }
        let p = m[col][col].clone();
        det = det.mul(&p);
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].div(&p);
            for c in col..n {
                let delta = f.mul(&m[col][c]);
                m[r][c] = m[r][c].sub(&delta);
            }
        }
    }
    det
}

/// Rank of a rational matrix (rows may be of any count).
pub fn rank<F: ExactField>(matrix: &[Vec<F>]) -> usize {
    let mut m = matrix.to_vec();
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(piv, r);
        let p = m[r][c].clone();
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].div(&p);
            for k in c..cols {
                let delta = f.mul(&m[r][k]);
                m[i][k] = m[i][k].sub(&delta);
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Inverse of a square rational matrix, `None` if singular.
pub fn inverse(rows: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = rows.len();
    let mut aug: Vec<Vec<BigRational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| BigRational::from_integer(BigInt::from(i64::from(i == j)))));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !Zero::is_zero(&aug[r][col]))?;
        aug.swap(piv, col);
        let p = aug[col][col].clone();
        for x in aug[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r == col || Zero::is_zero(&aug[r][col]) {
                continue;
            }
            let f = aug[r][col].clone();
            let pivot_row = aug[col].clone();
            for (x, q) in aug[r].iter_mut().zip(&pivot_row) {
                *x = &*x - &f * q;
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solve `x * M = v` for square nonsingular `M` (row combination), if a
/// solution exists.
pub fn solve_left(m: &[Vec<BigRational>], v: &[BigRational]) -> Option<Vec<BigRational>> {
    // x M = v  <=>  M^T x^T = v^T
    let n = m.len();
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..n).map(|j| m[j][i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !Zero::is_zero(&aug[r][col]))?;
        aug.swap(piv, col);
        let p = aug[col][col].clone();
        for k in col..=n {
            aug[col][k] = &aug[col][k] / &p;
        }
        for r in 0..n {
            if r == col || Zero::is_zero(&aug[r][col]) {
                continue;
            }
            let f = aug[r][col].clone();
            for k in col..=n {
                let delta = &f * &aug[col][k];
                aug[r][k] = &aug[r][k] - delta;
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n].clone()).collect())
}
