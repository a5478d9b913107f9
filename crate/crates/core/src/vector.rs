//! Vector majorization.

use num_traits::{One, Zero};

use crate::error::{shape_err, Error, Result};
use crate::linalg::{Permutation, RMatrix, RVector};
use crate::rational::Rational;

/// `tI + (1-t)P_(ij)` on the coordinates of the sorted vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TTransform {
    pub i: usize,
    pub j: usize,
    pub t: Rational,
}

impl TTransform {
    pub fn to_matrix(&self, n: usize) -> RMatrix {
        let s = Rational::one() - &self.t;
        let mut m = RMatrix::identity(n);
        m.set(self.i, self.i, self.t.clone());
        m.set(self.j, self.j, self.t.clone());
        m.set(self.i, self.j, s.clone());
        m.set(self.j, self.i, s);
        m
    }
}

/// A doubly stochastic `D` with `a = Db`, plus the chain that built it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HlpWitness {
    pub matrix: RMatrix,
    /// Applied in order to `b↓`; the product maps `b↓` to `a↓`.
    pub chain: Vec<TTransform>,
    pub sort_a: Permutation,
    pub sort_b: Permutation,
}

fn check_same_len(a: &RVector, b: &RVector) -> Result<()> {
    if a.len() != b.len() {
        return Err(shape_err(format!("length {}", b.len()), format!("length {}", a.len())));
    }
    Ok(())
}

/// `a ≼ b`: sorted prefix sums of `a` never exceed those of `b`, totals equal.
pub fn check_vector_majorization(a: &RVector, b: &RVector) -> Result<bool> {
    check_same_len(a, b)?;
    let (sa, _) = a.sort_desc();
    let (sb, _) = b.sort_desc();
    let mut pa = Rational::zero();
    let mut pb = Rational::zero();
    for k in 0..a.len() {
        pa += &sa[k];
        pb += &sb[k];
        if pa > pb {
            return Ok(false);
        }
    }
    Ok(pa == pb)
}

/// Builds `D ∈ Ωₙ` with `a = Db` from at most `n-1` T-transforms.
///
/// On the sorted copies, each step takes the first `j` with `c_j > a_j` and
/// the first `k > j` with `c_k < a_k`, then moves
/// `min(c_j - a_j, a_k - c_k)` from `j` to `k`.
pub fn hlp_witness(a: &RVector, b: &RVector) -> Result<HlpWitness> {
    if !check_vector_majorization(a, b)? {
        return Err(Error::Precondition("a is not majorized by b".into()));
    }
    let n = a.len();
    let (sa, pa) = a.sort_desc();
    let (mut c, pb) = b.sort_desc();
    let mut chain = Vec::new();
    let mut prod = RMatrix::identity(n);
    while let Some(j) = (0..n).find(|&j| c[j] > sa[j]) {
        let k = (j + 1..n)
            .find(|&k| c[k] < sa[k])
            .ok_or_else(|| Error::Internal("no receiving coordinate in T-transform step".into()))?;
        let give = &c[j] - &sa[j];
        let take = &sa[k] - &c[k];
        let delta = if give < take { give } else { take };
        let t = Rational::one() - &delta / (&c[j] - &c[k]);
        c[j] -= &delta;
        c[k] += &delta;
        let s = Rational::one() - &t;
        for col in 0..n {
            let (x, y) = (prod.get(j, col).clone(), prod.get(k, col).clone());
            prod.set(j, col, &t * &x + &s * &y);
            prod.set(k, col, &s * &x + &t * &y);
        }
        chain.push(TTransform { i: j, j: k, t });
    }
    if c != sa {
        return Err(Error::Internal("T-transform chain did not reach a↓".into()));
    }
    let left = pa.inverse().permute_rows(&prod);
    let matrix = pb.inverse().permute_rows(&left.transpose()).transpose();
    if !matrix.is_doubly_stochastic() || matrix.mul_vec(b)? != *a {
        return Err(Error::Internal("HLP witness failed verification".into()));
    }
    Ok(HlpWitness {
        matrix,
        chain,
        sort_a: pa,
        sort_b: pb,
    })
}

/// `P` with `a = Pb` when the entries agree as multisets.
pub fn check_vector_equiv(a: &RVector, b: &RVector) -> Option<Permutation> {
    if a.len() != b.len() {
        return None;
    }
    let (sa, pa) = a.sort_desc();
    let (sb, pb) = b.sort_desc();
    if sa != sb {
        return None;
    }
    Some(pa.inverse().compose(&pb))
}

/// Result of shifting and normalizing a pair of vectors onto `𝟙ⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorReduction {
    pub a: RVector,
    pub b: RVector,
    pub lambda: Rational,
    /// The common divisor `eᵗa + nλ`.
    pub scale: Rational,
}

/// Maps `a, b` with equal sums to distributions `a', b'` with
/// `a ≼ b ⟺ a' ≼ b'`.
///
/// `λ = max(0, -min entry)`, raised by one when the shifted vectors are zero.
pub fn reduce_vector_to_distributions(a: &RVector, b: &RVector) -> Result<VectorReduction> {
    check_same_len(a, b)?;
    if a.sum() != b.sum() {
        return Err(Error::Precondition(
            "entry sums differ, so neither vector majorizes the other".into(),
        ));
    }
    let n = Rational::from_integer(a.len().into());
    let lo = std::cmp::min(a.min(), b.min());
    let mut lambda = if lo < Rational::zero() { -lo } else { Rational::zero() };
    if (a.sum() + &n * &lambda).is_zero() {
        lambda += Rational::one();
    }
    let scale = a.sum() + &n * &lambda;
    let inv = Rational::one() / &scale;
    Ok(VectorReduction {
        a: a.shift(&lambda).scale(&inv),
        b: b.shift(&lambda).scale(&inv),
        lambda,
        scale,
    })
}
