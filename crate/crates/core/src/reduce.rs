//! Reductions of majorization instances to column-stochastic form, and `Θ`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{RMatrix, RVector};
use crate::matrix::{check_directional, check_strong, check_strong_equiv};
use crate::rational::{int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReductionMethod {
    /// Shift by `λJ`, scale by `1/μ`, then add `evᵗ`.
    ShiftNormalize,
    /// Shift by `λJ`, then divide each column by its sum in `B + λJ`.
    DiagScale,
}

impl ReductionMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            ReductionMethod::ShiftNormalize => "shift",
            ReductionMethod::DiagScale => "diag",
        }
    }
}

/// Which matrix fixes `v` (or `D`). Anchoring on `A` makes `A'` column
/// stochastic instead of `B'`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Anchor {
    A,
    #[default]
    B,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionOptions {
    pub lambda: Option<Rational>,
    pub mu: Option<Rational>,
    pub anchor: Anchor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub method: ReductionMethod,
    pub anchor: Anchor,
    pub lambda: Rational,
    pub mu: Option<Rational>,
    pub v: Option<RVector>,
    pub d: Option<RMatrix>,
}

impl ReductionCertificate {
    /// Applies the recorded transformation to a fresh pair.
    pub fn replay(&self, a: &RMatrix, b: &RMatrix) -> Result<(RMatrix, RMatrix)> {
        a.check_same_shape(b)?;
        let a1 = a.shift(&self.lambda);
        let b1 = b.shift(&self.lambda);
        match self.method {
            ReductionMethod::ShiftNormalize => {
                let (mu, v) = match (&self.mu, &self.v) {
                    (Some(mu), Some(v)) => (mu, v),
                    _ => return Err(Error::Precondition("certificate lacks μ or v".into())),
                };
                let inv = Rational::one() / mu;
                Ok((a1.scale(&inv).add_to_columns(v)?, b1.scale(&inv).add_to_columns(v)?))
            }
            ReductionMethod::DiagScale => {
                let d = self
                    .d
                    .as_ref()
                    .ok_or_else(|| Error::Precondition("certificate lacks D".into()))?;
                let inv = RVector::new((0..d.rows()).map(|j| Rational::one() / d.get(j, j)).collect());
                Ok((a1.scale_columns(&inv)?, b1.scale_columns(&inv)?))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub a: RMatrix,
    pub b: RMatrix,
    pub certificate: ReductionCertificate,
}

fn minimal_shift(a: &RMatrix, b: &RMatrix) -> Rational {
    let lo = std::cmp::min(a.min_entry(), b.min_entry());
    if lo.is_negative() {
        -lo
    } else {
        Rational::zero()
    }
}

fn check_pinned_shift(a: &RMatrix, b: &RMatrix, lambda: &Rational) -> Result<()> {
    if lambda.is_negative() {
        return Err(Error::Precondition("λ must be nonnegative".into()));
    }
    if *lambda < minimal_shift(a, b) {
        return Err(Error::Precondition(format!(
            "λ = {lambda} leaves negative entries; need at least {}",
            minimal_shift(a, b)
        )));
    }
    Ok(())
}

fn anchored<'a>(anchor: Anchor, a: &'a RMatrix, b: &'a RMatrix) -> &'a RMatrix {
    match anchor {
        Anchor::A => a,
        Anchor::B => b,
    }
}

/// `A' = (A + λJ)/μ + evᵗ`, `B'` likewise, with `vᵗ = (eᵗ - eᵗB₂)/n`.
///
/// Canonical choices: `λ = max(0, -min entry)` and
/// `μ = max(1, largest column sum of A + λJ and B + λJ)`.
pub fn reduce_shift_normalize(a: &RMatrix, b: &RMatrix, opts: &ReductionOptions) -> Result<Reduction> {
    a.check_same_shape(b)?;
    let lambda = match &opts.lambda {
        Some(l) => {
            check_pinned_shift(a, b, l)?;
            l.clone()
        }
        None => minimal_shift(a, b),
    };
    let a1 = a.shift(&lambda);
    let b1 = b.shift(&lambda);
    let anchor_sums = anchored(opts.anchor, &a1, &b1).column_sums();
    let mu = match &opts.mu {
        Some(mu) => {
            if !mu.is_positive() {
                return Err(Error::Precondition("μ must be positive".into()));
            }
            if anchor_sums.max() > *mu {
                return Err(Error::Precondition(format!(
                    "μ = {mu} is below the largest anchor column sum {}",
                    anchor_sums.max()
                )));
            }
            mu.clone()
        }
        None => {
            let top = std::cmp::max(a1.column_sums().max(), b1.column_sums().max());
            std::cmp::max(Rational::one(), top)
        }
    };
    let n = int(a.rows() as i64);
    let v = RVector::new(anchor_sums.iter().map(|s| (Rational::one() - s / &mu) / &n).collect());
    let certificate = ReductionCertificate {
        method: ReductionMethod::ShiftNormalize,
        anchor: opts.anchor,
        lambda,
        mu: Some(mu),
        v: Some(v),
        d: None,
    };
    let (ra, rb) = certificate.replay(a, b)?;
    Ok(Reduction {
        a: ra,
        b: rb,
        certificate,
    })
}

/// `A' = (A + λJ)D⁻¹`, `B'` likewise, with `D = diag(eᵗ(B + λJ))`.
///
/// Canonical `λ = max(0, -min entry)`, plus one if `B + λJ` then has a
/// zero column.
pub fn reduce_diag_scale(a: &RMatrix, b: &RMatrix, opts: &ReductionOptions) -> Result<Reduction> {
    a.check_same_shape(b)?;
    if opts.mu.is_some() {
        return Err(Error::Unsupported("μ applies only to the shift method".into()));
    }
    let has_zero_column = |lambda: &Rational| {
        let x = anchored(opts.anchor, a, b).shift(lambda);
        (0..x.cols()).any(|j| x.column(j).is_zero())
    };
    let lambda = match &opts.lambda {
        Some(l) => {
            check_pinned_shift(a, b, l)?;
            if has_zero_column(l) {
                return Err(Error::Precondition(format!(
                    "λ = {l} leaves a zero column in the anchor matrix"
                )));
            }
            l.clone()
        }
        None => {
            let l = minimal_shift(a, b);
            if has_zero_column(&l) {
                l + Rational::one()
            } else {
                l
            }
        }
    };
    let sums = anchored(opts.anchor, a, b).shift(&lambda).column_sums();
    let certificate = ReductionCertificate {
        method: ReductionMethod::DiagScale,
        anchor: opts.anchor,
        lambda,
        mu: None,
        v: None,
        d: Some(RMatrix::diagonal(&sums)),
    };
    let (ra, rb) = certificate.replay(a, b)?;
    Ok(Reduction {
        a: ra,
        b: rb,
        certificate,
    })
}

pub fn reduce(a: &RMatrix, b: &RMatrix, method: ReductionMethod, opts: &ReductionOptions) -> Result<Reduction> {
    match method {
        ReductionMethod::ShiftNormalize => reduce_shift_normalize(a, b, opts),
        ReductionMethod::DiagScale => reduce_diag_scale(a, b, opts),
    }
}

/// Divides each nonzero column by its sum; zero columns become `e/n`.
///
/// Meant for nonnegative input. A nonzero column summing to zero is an error.
pub fn theta(a: &RMatrix) -> Result<RMatrix> {
    let n = a.rows();
    let mut out = a.clone();
    for j in 0..a.cols() {
        let col = a.column(j);
        if col.is_zero() {
            out.set_column(j, &RVector::new(vec![Rational::new(1.into(), n.into()); n]));
            continue;
        }
        let s = col.sum();
        if s.is_zero() {
            return Err(Error::ZeroSumColumn { column: j });
        }
        out.set_column(j, &col.scale(&(Rational::one() / s)));
    }
    Ok(out)
}

/// The five conditions relating a pair of (0,1) matrices with equal column sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroOneBridge {
    /// No `{0,1}ᵐ` direction refutes `A ≼ᵈ B`.
    pub directional: bool,
    pub strong: bool,
    pub permutation: bool,
    /// `Θ(A) ≼ᵈ Θ(B)` not refuted by the sampled directions.
    pub theta_directional: bool,
    pub theta_strong: bool,
}

impl ZeroOneBridge {
    pub fn all_equal(&self) -> bool {
        let v = [
            self.directional,
            self.strong,
            self.permutation,
            self.theta_directional,
            self.theta_strong,
        ];
        v.iter().all(|&x| x == v[0])
    }
}

pub fn zero_one_bridge(a: &RMatrix, b: &RMatrix, budget: usize, seed: u64) -> Result<ZeroOneBridge> {
    a.check_same_shape(b)?;
    if !a.is_zero_one() || !b.is_zero_one() {
        return Err(Error::Precondition("both matrices must have (0,1) entries".into()));
    }
    if a.column_sums() != b.column_sums() {
        return Err(Error::Precondition("column sums of A and B differ".into()));
    }
    let ta = theta(a)?;
    let tb = theta(b)?;
    Ok(ZeroOneBridge {
        directional: !check_directional(a, b, 0, seed)?.is_negative(),
        strong: check_strong(a, b)?.holds(),
        permutation: check_strong_equiv(a, b).is_some(),
        theta_directional: !check_directional(&ta, &tb, budget, seed)?.is_negative(),
        theta_strong: check_strong(&ta, &tb)?.holds(),
    })
}
