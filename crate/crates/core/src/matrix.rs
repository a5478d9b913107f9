//! Strong, weak and directional matrix majorization.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{Permutation, RMatrix, RVector};
use crate::lp::{solve_feasibility, FeasibilityOutcome, FeasibilitySystem};
use crate::rational::{frac, Rational};
use crate::vector::check_vector_majorization;

/// Largest column count for the exhaustive `{0,1}ᵐ` direction pass.
pub const MAX_DIRECTION_COLS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Strong,
    Weak,
    Directional,
    StrongEquiv,
}

impl Relation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Relation::Strong => "strong",
            Relation::Weak => "weak",
            Relation::Directional => "directional",
            Relation::StrongEquiv => "strong-equiv",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailReason {
    /// `eᵗA` and `eᵗB` differ in this column.
    ColumnSums { column: usize },
    /// Farkas certificate for the strong system.
    Certificate { y: RVector },
    /// Row `row` of `A` is not a convex combination of the rows of `B`.
    RowCertificate { row: usize, y: RVector },
    /// Rows of `A` and `B` differ as multisets.
    RowMultisets,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Holds { witness: RMatrix },
    Fails { reason: FailReason },
    Refuted { direction: RVector },
    NotRefuted { trials: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MajorizationVerdict {
    pub relation: Relation,
    pub outcome: Outcome,
}

impl MajorizationVerdict {
    pub fn holds(&self) -> bool {
        matches!(self.outcome, Outcome::Holds { .. })
    }

    /// True for `Fails` and `Refuted`.
    pub fn is_negative(&self) -> bool {
        matches!(self.outcome, Outcome::Fails { .. } | Outcome::Refuted { .. })
    }

    pub fn witness(&self) -> Option<&RMatrix> {
        match &self.outcome {
            Outcome::Holds { witness } => Some(witness),
            _ => None,
        }
    }

    /// Re-checks whatever evidence the verdict carries against `(A, B)`.
    pub fn verify(&self, a: &RMatrix, b: &RMatrix) -> bool {
        match &self.outcome {
            Outcome::Holds { witness } => {
                let ok = match self.relation {
                    Relation::Weak => witness.is_row_stochastic(),
                    _ => witness.is_doubly_stochastic(),
                };
                ok && witness.mul(b).map(|wb| wb == *a).unwrap_or(false)
            }
            Outcome::Fails { reason } => match reason {
                FailReason::ColumnSums { column } => a.column(*column).sum() != b.column(*column).sum(),
                FailReason::Certificate { y } => strong_system(a, b).map(|s| s.verify_certificate(y)).unwrap_or(false),
                FailReason::RowCertificate { row, y } => weak_row_system(a, b, *row)
                    .map(|s| s.verify_certificate(y))
                    .unwrap_or(false),
                FailReason::RowMultisets => check_strong_equiv(a, b).is_none(),
            },
            Outcome::Refuted { direction } => match (a.mul_vec(direction), b.mul_vec(direction)) {
                (Ok(av), Ok(bv)) => !check_vector_majorization(&av, &bv).unwrap_or(true),
                _ => false,
            },
            Outcome::NotRefuted { .. } => true,
        }
    }
}

fn first_column_sum_mismatch(a: &RMatrix, b: &RMatrix) -> Option<usize> {
    let (sa, sb) = (a.column_sums(), b.column_sums());
    (0..a.cols()).find(|&j| sa[j] != sb[j])
}

/// Feasibility system for `A = DB, D ∈ Ωₙ`; variable `d_ik` sits at `i*n + k`.
pub fn strong_system(a: &RMatrix, b: &RMatrix) -> Result<FeasibilitySystem> {
    a.check_same_shape(b)?;
    let (n, m) = a.shape();
    let rows = 2 * n + n * m;
    let mut e = RMatrix::zeros(rows, n * n);
    let mut f = Vec::with_capacity(rows);
    for i in 0..n {
        for k in 0..n {
            e.set(i, i * n + k, Rational::one());
        }
        f.push(Rational::one());
    }
    for k in 0..n {
        for i in 0..n {
            e.set(n + k, i * n + k, Rational::one());
        }
        f.push(Rational::one());
    }
    for i in 0..n {
        for j in 0..m {
            let r = 2 * n + i * m + j;
            for k in 0..n {
                e.set(r, i * n + k, b.get(k, j).clone());
            }
            f.push(a.get(i, j).clone());
        }
    }
    FeasibilitySystem::new(e, RVector::new(f))
}

/// Feasibility system for `A₍ᵢ₎ = rᵗB` with `r ∈ 𝟙ⁿ`.
pub fn weak_row_system(a: &RMatrix, b: &RMatrix, row: usize) -> Result<FeasibilitySystem> {
    a.check_same_shape(b)?;
    let (n, m) = a.shape();
    let mut e = RMatrix::zeros(m + 1, n);
    let mut f = Vec::with_capacity(m + 1);
    for k in 0..n {
        e.set(0, k, Rational::one());
    }
    f.push(Rational::one());
    for j in 0..m {
        for k in 0..n {
            e.set(j + 1, k, b.get(k, j).clone());
        }
        f.push(a.get(row, j).clone());
    }
    FeasibilitySystem::new(e, RVector::new(f))
}

/// `A ≼ˢ B`: `A = DB` for a doubly stochastic `D`.
pub fn check_strong(a: &RMatrix, b: &RMatrix) -> Result<MajorizationVerdict> {
    a.check_same_shape(b)?;
    let verdict = |outcome| MajorizationVerdict {
        relation: Relation::Strong,
        outcome,
    };
    if let Some(column) = first_column_sum_mismatch(a, b) {
        return Ok(verdict(Outcome::Fails {
            reason: FailReason::ColumnSums { column },
        }));
    }
    let n = a.rows();
    match solve_feasibility(&strong_system(a, b)?)? {
        FeasibilityOutcome::Feasible(x) => Ok(verdict(Outcome::Holds {
            witness: RMatrix::from_fn(n, n, |i, k| x[i * n + k].clone()),
        })),
        FeasibilityOutcome::Infeasible(y) => Ok(verdict(Outcome::Fails {
            reason: FailReason::Certificate { y },
        })),
    }
}

/// `A ≼ʷ B`: `A = RB` for a row stochastic `R`, solved one row at a time.
pub fn check_weak(a: &RMatrix, b: &RMatrix) -> Result<MajorizationVerdict> {
    a.check_same_shape(b)?;
    let n = a.rows();
    let mut r = RMatrix::zeros(n, n);
    for i in 0..n {
        match solve_feasibility(&weak_row_system(a, b, i)?)? {
            FeasibilityOutcome::Feasible(x) => {
                for k in 0..n {
                    r.set(i, k, x[k].clone());
                }
            }
            FeasibilityOutcome::Infeasible(y) => {
                return Ok(MajorizationVerdict {
                    relation: Relation::Weak,
                    outcome: Outcome::Fails {
                        reason: FailReason::RowCertificate { row: i, y },
                    },
                })
            }
        }
    }
    Ok(MajorizationVerdict {
        relation: Relation::Weak,
        outcome: Outcome::Holds { witness: r },
    })
}

/// Does `Av ≼ Bv` fail?
pub fn refutes(a: &RMatrix, b: &RMatrix, v: &RVector) -> Result<bool> {
    Ok(!check_vector_majorization(&a.mul_vec(v)?, &b.mul_vec(v)?)?)
}

/// Semi-decision for `A ≼ᵈ B`.
///
/// `Holds` only through the strong shortcut. Otherwise every `v ∈ {0,1}ᵐ`
/// is tried, then `budget` seeded random directions.
pub fn check_directional(a: &RMatrix, b: &RMatrix, budget: usize, seed: u64) -> Result<MajorizationVerdict> {
    a.check_same_shape(b)?;
    let m = a.cols();
    let verdict = |outcome| MajorizationVerdict {
        relation: Relation::Directional,
        outcome,
    };
    if let Some(j) = first_column_sum_mismatch(a, b) {
        return Ok(verdict(Outcome::Refuted {
            direction: RVector::basis(m, j),
        }));
    }
    let strong = check_strong(a, b)?;
    if let Outcome::Holds { witness } = strong.outcome {
        return Ok(verdict(Outcome::Holds { witness }));
    }
    if m > MAX_DIRECTION_COLS {
        return Err(Error::TooManyColumns { cols: m });
    }
    let mut trials = 0;
    for mask in 1u32..(1u32 << m) {
        let v = RVector::new(
            (0..m)
                .map(|j| {
                    if mask >> j & 1 == 1 {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
        );
        trials += 1;
        if refutes(a, b, &v)? {
            return Ok(verdict(Outcome::Refuted { direction: v }));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let v = random_direction(m, &mut rng);
        trials += 1;
        if refutes(a, b, &v)? {
            return Ok(verdict(Outcome::Refuted { direction: v }));
        }
    }
    Ok(verdict(Outcome::NotRefuted { trials }))
}

/// Entries uniform over `{-5..5}/q` with `q ∈ 1..=3`.
pub fn random_direction<R: Rng + ?Sized>(m: usize, rng: &mut R) -> RVector {
    RVector::new(
        (0..m)
            .map(|_| frac(rng.gen_range(-5..=5), rng.gen_range(1..=3)))
            .collect(),
    )
}

/// `P` with `A = PB`, matching equal rows first-fit.
pub fn check_strong_equiv(a: &RMatrix, b: &RMatrix) -> Option<Permutation> {
    if a.shape() != b.shape() {
        return None;
    }
    let n = a.rows();
    let mut used = vec![false; n];
    let mut map = vec![0; n];
    for i in 0..n {
        let r = (0..n).find(|&r| !used[r] && a.row_slice(i) == b.row_slice(r))?;
        used[r] = true;
        map[r] = i;
    }
    Permutation::from_map(map).ok()
}

/// `check_strong_equiv` wrapped as a verdict.
pub fn check_strong_equiv_verdict(a: &RMatrix, b: &RMatrix) -> Result<MajorizationVerdict> {
    a.check_same_shape(b)?;
    let outcome = match check_strong_equiv(a, b) {
        Some(p) => Outcome::Holds { witness: p.to_matrix() },
        None => Outcome::Fails {
            reason: FailReason::RowMultisets,
        },
    };
    Ok(MajorizationVerdict {
        relation: Relation::StrongEquiv,
        outcome,
    })
}

/// True when `A = DB` for the given `D ∈ Ωₙ`.
pub fn is_strong_witness(a: &RMatrix, b: &RMatrix, d: &RMatrix) -> bool {
    d.is_doubly_stochastic() && d.mul(b).map(|x| x == *a).unwrap_or(false)
}
