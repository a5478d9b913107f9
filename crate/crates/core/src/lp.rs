//! Exact phase-1 simplex for `Ex = f, x ≥ 0`.

use num_traits::{One, Signed, Zero};

use crate::error::{shape_err, Error, Result};
use crate::linalg::{RMatrix, RVector};
use crate::rational::Rational;

/// The system `E x = f, x ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilitySystem {
    pub constraints: RMatrix,
    pub rhs: RVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FeasibilityOutcome {
    /// `x ≥ 0` with `Ex = f`.
    Feasible(RVector),
    /// Farkas certificate `y` with `yᵗE ≤ 0` and `yᵗf > 0`.
    Infeasible(RVector),
}

impl FeasibilityOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityOutcome::Feasible(_))
    }
}

impl FeasibilitySystem {
    pub fn new(constraints: RMatrix, rhs: RVector) -> Result<Self> {
        if constraints.rows() != rhs.len() {
            return Err(shape_err(
                format!("right-hand side of length {}", constraints.rows()),
                format!("length {}", rhs.len()),
            ));
        }
        Ok(FeasibilitySystem { constraints, rhs })
    }

    /// Exact check that `x` is a feasible point.
    pub fn verify_witness(&self, x: &RVector) -> bool {
        x.len() == self.constraints.cols()
            && x.is_nonnegative()
            && self.constraints.mul_vec(x).map(|ex| ex == self.rhs).unwrap_or(false)
    }

    /// Exact check of a Farkas certificate.
    pub fn verify_certificate(&self, y: &RVector) -> bool {
        if y.len() != self.constraints.rows() {
            return false;
        }
        let ye = self.constraints.transpose().mul_vec(y).expect("shape checked");
        ye.iter().all(|c| !c.is_positive()) && y.dot(&self.rhs).expect("shape checked").is_positive()
    }

    pub fn verify(&self, outcome: &FeasibilityOutcome) -> bool {
        match outcome {
            FeasibilityOutcome::Feasible(x) => self.verify_witness(x),
            FeasibilityOutcome::Infeasible(y) => self.verify_certificate(y),
        }
    }
}

/// Decides feasibility of `Ex = f, x ≥ 0` with Bland's rule.
///
/// The returned witness is a basic feasible solution; both outcomes are
/// re-verified by substitution before returning.
pub fn solve_feasibility(sys: &FeasibilitySystem) -> Result<FeasibilityOutcome> {
    if sys.constraints.rows() != sys.rhs.len() {
        return Err(shape_err(
            format!("right-hand side of length {}", sys.constraints.rows()),
            format!("length {}", sys.rhs.len()),
        ));
    }
    let outcome = Tableau::new(sys).run();
    if !sys.verify(&outcome) {
        return Err(Error::Internal("simplex produced an unverifiable result".into()));
    }
    Ok(outcome)
}

struct Tableau {
    k: usize,
    n: usize,
    // k rows of n structural + k artificial coefficients
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    // reduced costs of the phase-1 objective (sum of artificials)
    cost: Vec<Rational>,
    basis: Vec<usize>,
    signs: Vec<bool>,
}

impl Tableau {
    fn new(sys: &FeasibilitySystem) -> Self {
        let k = sys.constraints.rows();
        let n = sys.constraints.cols();
        let mut rows = Vec::with_capacity(k);
        let mut rhs = Vec::with_capacity(k);
        let mut signs = Vec::with_capacity(k);
        for i in 0..k {
            let neg = sys.rhs[i].is_negative();
            let mut row: Vec<Rational> = sys
                .constraints
                .row_slice(i)
                .iter()
                .map(|x| if neg { -x } else { x.clone() })
                .collect();
            row.extend((0..k).map(|a| if a == i { Rational::one() } else { Rational::zero() }));
            rows.push(row);
            rhs.push(if neg { -&sys.rhs[i] } else { sys.rhs[i].clone() });
            signs.push(neg);
        }
        let mut cost = vec![Rational::zero(); n + k];
        for (j, c) in cost.iter_mut().enumerate().take(n) {
            for row in &rows {
                *c -= &row[j];
            }
        }
        Tableau {
            k,
            n,
            rows,
            rhs,
            cost,
            basis: (n..n + k).collect(),
            signs,
        }
    }

    fn objective(&self) -> Rational {
        self.basis
            .iter()
            .zip(&self.rhs)
            .filter(|(&b, _)| b >= self.n)
            .fold(Rational::zero(), |acc, (_, v)| acc + v)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        if !p.is_one() {
            for x in self.rows[r].iter_mut() {
                if !x.is_zero() {
                    *x /= &p;
                }
            }
            self.rhs[r] /= &p;
        }
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
        for i in 0..self.k {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for &j in &nz {
                let d = &f * &prow[j];
                self.rows[i][j] -= d;
            }
            if !prhs.is_zero() {
                self.rhs[i] -= &f * &prhs;
            }
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for &j in &nz {
                let d = &f * &prow[j];
                self.cost[j] -= d;
            }
        }
        self.basis[r] = c;
    }

    fn run(mut self) -> FeasibilityOutcome {
        while let Some(c) = (0..self.n).find(|&j| self.cost[j].is_negative()) {
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.k {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio < br || (ratio == br && self.basis[i] < self.basis[bi]) {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            // The phase-1 objective is bounded below, so a ratio row exists.
            let (r, _) = best.expect("phase-1 objective is bounded");
            self.pivot(r, c);
        }

        if self.objective().is_positive() {
            let y = (0..self.k)
                .map(|i| {
                    let yi = Rational::one() - &self.cost[self.n + i];
                    if self.signs[i] {
                        -yi
                    } else {
                        yi
                    }
                })
                .collect();
            return FeasibilityOutcome::Infeasible(RVector::new(y));
        }

        for r in 0..self.k {
            if self.basis[r] < self.n {
                continue;
            }
            if let Some(c) = (0..self.n).find(|&j| !self.rows[r][j].is_zero()) {
                self.pivot(r, c);
            }
            // otherwise the row is redundant and its artificial stays at zero
        }

        let mut x = vec![Rational::zero(); self.n];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < self.n {
                x[b] = self.rhs[r].clone();
            }
        }
        FeasibilityOutcome::Feasible(RVector::new(x))
    }
}
