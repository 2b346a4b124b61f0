//! Real and imaginary roots of a symmetrizable generalized Cartan matrix.
//!
//! Node indices are 0-based throughout the library.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::diagram::GeneralizedCartanMatrix;
use crate::error::{Error, Result};

/// Integer coordinates in the simple-root basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVector(pub Vec<i64>);

impl fmt::Debug for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl RootVector {
    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        RootVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&x| x <= 0)
    }

    pub fn is_sign_coherent(&self) -> bool {
        self.is_positive() || self.is_negative()
    }

    pub fn neg(&self) -> RootVector {
        RootVector(self.0.iter().map(|&x| -x).collect())
    }

    pub fn checked_add(&self, o: &RootVector) -> Result<RootVector> {
        self.0
            .iter()
            .zip(&o.0)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::Overflow("root addition")))
            .collect::<Result<Vec<_>>>()
            .map(RootVector)
    }

    pub fn checked_sub(&self, o: &RootVector) -> Result<RootVector> {
        self.checked_add(&o.neg())
    }

    /// `self + c * o`.
    pub fn checked_axpy(&self, c: i64, o: &RootVector) -> Result<RootVector> {
        self.0
            .iter()
            .zip(&o.0)
            .map(|(&a, &b)| {
                c.checked_mul(b)
                    .and_then(|t| a.checked_add(t))
                    .ok_or(Error::Overflow("root arithmetic"))
            })
            .collect::<Result<Vec<_>>>()
            .map(RootVector)
    }
}

/// A symmetrizable GCM together with an integral multiple `G = s * B` of its
/// invariant form, so that `(u|v) = u^T G v / s`.
#[derive(Debug, Clone)]
pub struct RootSystem {
    a: GeneralizedCartanMatrix,
    g: Vec<i64>,
    scale: i64,
    /// `(a_i|a_i) * scale`.
    simple_norms: Vec<i64>,
}

impl RootSystem {
    pub fn new(a: &GeneralizedCartanMatrix) -> Result<Self> {
        let sym = a.symmetrize()?;
        let n = a.rank();
        let mut scale = BigInt::from(1);
        for d in &sym.d {
            scale = scale.lcm(d.denom());
        }
        let scale_r = BigRational::from_integer(scale.clone());
        let mut g = Vec::with_capacity(n * n);
        for row in &sym.b {
            for x in row {
                let v = (x * &scale_r).to_integer();
                g.push(v.to_i64().ok_or(Error::Overflow("invariant form"))?);
            }
        }
        let scale = scale.to_i64().ok_or(Error::Overflow("invariant form"))?;
        let simple_norms = (0..n).map(|i| g[i * n + i]).collect();
        Ok(RootSystem {
            a: a.clone(),
            g,
            scale,
            simple_norms,
        })
    }

    pub fn cartan(&self) -> &GeneralizedCartanMatrix {
        &self.a
    }

    pub fn rank(&self) -> usize {
        self.a.rank()
    }

    /// `s * (u|v)` as an exact integer.
    pub fn inner_scaled(&self, u: &RootVector, v: &RootVector) -> i128 {
        let n = self.rank();
        let mut total: i128 = 0;
        for i in 0..n {
            if u.0[i] == 0 {
                continue;
            }
            let mut row: i128 = 0;
            for j in 0..n {
                row += self.g[i * n + j] as i128 * v.0[j] as i128;
            }
            total += u.0[i] as i128 * row;
        }
        total
    }

    /// `(u|v)` as an exact rational.
    pub fn inner(&self, u: &RootVector, v: &RootVector) -> BigRational {
        BigRational::new(
            BigInt::from(self.inner_scaled(u, v)),
            BigInt::from(self.scale),
        )
    }

    pub fn norm(&self, v: &RootVector) -> BigRational {
        self.inner(v, v)
    }

    /// The scale `s` with `G = s * B`.
    pub fn scale(&self) -> i64 {
        self.scale
    }

    /// Distinct norms of simple roots, scaled by `s`, ascending.
    pub fn simple_norms_scaled(&self) -> Vec<i64> {
        let set: BTreeSet<i64> = self.simple_norms.iter().copied().collect();
        set.into_iter().collect()
    }

    pub fn simple_norm_scaled(&self, i: usize) -> i64 {
        self.simple_norms[i]
    }

    /// `<v, a_j^vee> = sum_i a_ji v_i`.
    pub fn coroot_pairing(&self, v: &RootVector, j: usize) -> i64 {
        let mut s = 0i64;
        for (i, &x) in v.0.iter().enumerate() {
            s += self.a.get(j, i) * x;
        }
        s
    }

    /// Simple reflection `s_j`.
    pub fn reflect_simple(&self, v: &RootVector, j: usize) -> Result<RootVector> {
        let c = self.coroot_pairing(v, j);
        let mut out = v.clone();
        out.0[j] = out.0[j]
            .checked_sub(c)
            .ok_or(Error::Overflow("simple reflection"))?;
        Ok(out)
    }

    /// Reflection `v - 2(v|b)/(b|b) b`.
    pub fn reflect(&self, v: &RootVector, beta: &RootVector) -> Result<RootVector> {
        let num = 2 * self.inner_scaled(v, beta);
        let den = self.inner_scaled(beta, beta);
        if den <= 0 {
            return Err(Error::NonIntegralReflection { num, den });
        }
        if num % den != 0 {
            let g = num.gcd(&den);
            return Err(Error::NonIntegralReflection {
                num: num / g,
                den: den / g,
            });
        }
        let c = i64::try_from(num / den).map_err(|_| Error::Overflow("reflection"))?;
        v.checked_axpy(-c, beta)
    }

    /// Apply `s_{w[0]} s_{w[1]} ... s_{w[m-1]}` to `v`.
    pub fn apply_word(&self, word: &[usize], v: &RootVector) -> Result<RootVector> {
        let mut out = v.clone();
        for &j in word.iter().rev() {
            out = self.reflect_simple(&out, j)?;
        }
        Ok(out)
    }

    /// Positive real roots of height at most `h`, sorted by height then
    /// coordinates.
    pub fn real_roots_up_to_height(&self, h: u64) -> Result<Vec<RootVector>> {
        let n = self.rank();
        let h = h as i64;
        let mut seen: HashSet<RootVector> = HashSet::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let r = RootVector::simple(n, i);
            if h >= 1 {
                seen.insert(r.clone());
                queue.push_back(r);
            }
        }
        while let Some(v) = queue.pop_front() {
            for j in 0..n {
                let c = self.coroot_pairing(&v, j);
                if c >= 0 {
                    continue;
                }
                let w = self.reflect_simple(&v, j)?;
                if w.height() <= h && !seen.contains(&w) {
                    seen.insert(w.clone());
                    queue.push_back(w);
                }
            }
        }
        let mut out: Vec<RootVector> = seen.into_iter().collect();
        out.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    /// Height descent of a positive vector: returns the word `[j1, ..]`
    /// and index `i` with `v = s_j1 ... s_jm a_i`, or `None` if the descent
    /// gets stuck.
    fn descend(&self, v: &RootVector) -> Option<(Vec<usize>, usize)> {
        let n = self.rank();
        let mut cur = v.clone();
        let mut word = vec![];
        loop {
            if !cur.is_positive() {
                return None;
            }
            if cur.height() == 1 {
                let i = cur.0.iter().position(|&x| x == 1)?;
                return Some((word, i));
            }
            let j = (0..n).find(|&j| self.coroot_pairing(&cur, j) > 0)?;
            cur = self.reflect_simple(&cur, j).ok()?;
            word.push(j);
        }
    }

    /// True iff `v` is a real root.
    pub fn is_real_root(&self, v: &RootVector) -> bool {
        self.express_as_w_alpha(v).is_ok()
    }

    /// Word `[k1, .., km]` and index `i` with `s_k1 ... s_km a_i = v`.
    pub fn express_as_w_alpha(&self, v: &RootVector) -> Result<(Vec<usize>, usize)> {
        if v.dim() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: v.dim(),
            });
        }
        if v.is_positive() {
            return self
                .descend(v)
                .ok_or_else(|| Error::NotRealRoot(v.0.clone()));
        }
        if v.is_negative() {
            // -v = w a_i  =>  v = w s_i a_i
            let (mut word, i) = self
                .descend(&v.neg())
                .ok_or_else(|| Error::NotRealRoot(v.0.clone()))?;
            word.push(i);
            return Ok((word, i));
        }
        Err(Error::NotRealRoot(v.0.clone()))
    }

    /// Nonzero, sign-coherent, and of non-positive norm.
    pub fn is_imaginary_root(&self, v: &RootVector) -> bool {
        v.dim() == self.rank() && v.is_sign_coherent() && self.inner_scaled(v, v) <= 0
    }

    /// Membership in the root system, valid for hyperbolic matrices where
    /// every nonzero lattice vector of non-positive norm is a root.
    pub fn is_root(&self, v: &RootVector) -> bool {
        self.is_imaginary_root(v) || self.is_real_root(v)
    }

    /// Word for the reflection in the real root `v`: `w s_i w^{-1}` where
    /// `v = +-w a_i`.
    pub fn reflection_word(&self, v: &RootVector) -> Result<Vec<usize>> {
        let positive = if v.is_negative() { v.neg() } else { v.clone() };
        let (word, i) = self.express_as_w_alpha(&positive)?;
        let mut out = word.clone();
        out.push(i);
        out.extend(word.iter().rev());
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(rows: &[&[i64]]) -> RootSystem {
        RootSystem::new(
            &GeneralizedCartanMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap(),
        )
        .unwrap()
    }

    fn rv(v: &[i64]) -> RootVector {
        RootVector(v.to_vec())
    }

    #[test]
    fn reflect_examples() {
        let s = sys(&[&[2, -1], &[-1, 2]]);
        assert_eq!(s.reflect(&rv(&[1, 0]), &rv(&[1, 0])).unwrap(), rv(&[-1, 0]));
        assert_eq!(s.reflect(&rv(&[1, 0]), &rv(&[0, 1])).unwrap(), rv(&[1, 1]));
    }

    #[test]
    fn non_integral_reflection() {
        // B = [[2,-2],[-2,4]]; b = a1 + 2 a2 is not a root: 2(a1|b)/(b|b) = -2/5
        let s = sys(&[&[2, -2], &[-1, 2]]);
        assert_eq!(
            s.reflect(&rv(&[1, 0]), &rv(&[1, 2])),
            Err(Error::NonIntegralReflection { num: -2, den: 5 })
        );
    }

    #[test]
    fn bounded_roots() {
        let a2 = sys(&[&[2, -1], &[-1, 2]]);
        assert_eq!(
            a2.real_roots_up_to_height(2).unwrap(),
            vec![rv(&[0, 1]), rv(&[1, 0]), rv(&[1, 1])]
        );
        let aff = sys(&[&[2, -2], &[-2, 2]]);
        let got: BTreeSet<RootVector> = aff
            .real_roots_up_to_height(5)
            .unwrap()
            .into_iter()
            .collect();
        let want: BTreeSet<RootVector> = [[1, 0], [0, 1], [2, 1], [1, 2], [3, 2], [2, 3]]
            .iter()
            .map(|v| rv(v))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn membership() {
        let aff = sys(&[&[2, -2], &[-2, 2]]);
        assert!(!aff.is_real_root(&rv(&[1, 1])));
        assert!(aff.is_imaginary_root(&rv(&[1, 1])));
        let a2 = sys(&[&[2, -1], &[-1, 2]]);
        assert!(!a2.is_real_root(&rv(&[2, 1])));
        assert!(!a2.is_imaginary_root(&rv(&[1, 1])));
        assert!(!a2.is_imaginary_root(&rv(&[0, 0])));
        assert!(a2.is_real_root(&rv(&[-1, -1])));
    }

    #[test]
    fn express_examples() {
        let a2 = sys(&[&[2, -1], &[-1, 2]]);
        assert_eq!(a2.express_as_w_alpha(&rv(&[1, 0])).unwrap(), (vec![], 0));
        assert_eq!(a2.express_as_w_alpha(&rv(&[1, 1])).unwrap(), (vec![0], 1));
        let (w, i) = a2.express_as_w_alpha(&rv(&[-1, -1])).unwrap();
        assert_eq!(
            a2.apply_word(&w, &RootVector::simple(2, i)).unwrap(),
            rv(&[-1, -1])
        );
        assert_eq!(a2.reflection_word(&rv(&[1, 1])).unwrap(), vec![0, 1, 0]);
    }
}
