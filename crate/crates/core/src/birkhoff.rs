//! Birkhoff–von Neumann decomposition and seeded exact generators.

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{Permutation, RMatrix, RVector};
use crate::lp::{solve_feasibility, FeasibilityOutcome, FeasibilitySystem};
use crate::rational::{frac, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirkhoffDecomposition {
    /// `(weight, P)` pairs with positive weights summing to one.
    pub terms: Vec<(Rational, Permutation)>,
}

impl BirkhoffDecomposition {
    pub fn reconstruct(&self, n: usize) -> RMatrix {
        let mut out = RMatrix::zeros(n, n);
        for (w, p) in &self.terms {
            for j in 0..n {
                let i = p.image(j);
                out[(i, j)] += w;
            }
        }
        out
    }

    pub fn max_terms(n: usize) -> usize {
        (n - 1) * (n - 1) + 1
    }
}

/// Perfect matching on the nonzero pattern: `col_of[i]` is the column
/// matched to row `i`.
fn perfect_matching(d: &RMatrix) -> Option<Vec<usize>> {
    let n = d.rows();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| !d.get(i, j).is_zero()).collect())
        .collect();
    let mut row_of: Vec<Option<usize>> = vec![None; n];

    fn augment(i: usize, adj: &[Vec<usize>], seen: &mut [bool], row_of: &mut [Option<usize>]) -> bool {
        for &j in &adj[i] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            if row_of[j].is_none_or(|r| augment(r, adj, seen, row_of)) {
                row_of[j] = Some(i);
                return true;
            }
        }
        false
    }

    for i in 0..n {
        let mut seen = vec![false; n];
        if !augment(i, &adj, &mut seen, &mut row_of) {
            return None;
        }
    }
    let mut col_of = vec![0; n];
    for (j, r) in row_of.iter().enumerate() {
        col_of[r.expect("perfect")] = j;
    }
    Some(col_of)
}

/// Writes a doubly stochastic matrix as a convex combination of at most
/// `(n-1)²+1` permutation matrices.
pub fn birkhoff_decompose(d: &RMatrix) -> Result<BirkhoffDecomposition> {
    if !d.is_doubly_stochastic() {
        return Err(Error::Precondition("matrix is not doubly stochastic".into()));
    }
    let n = d.rows();
    let mut rest = d.clone();
    let mut terms = Vec::new();
    while !rest.is_zero() {
        let col_of = perfect_matching(&rest)
            .ok_or_else(|| Error::Internal("support of remainder has no perfect matching".into()))?;
        let w = (0..n).map(|i| rest.get(i, col_of[i]).clone()).min().expect("n >= 1");
        for (i, &j) in col_of.iter().enumerate() {
            rest[(i, j)] -= &w;
        }
        // P sends e_j to e_i where row i is matched to column j
        let mut map = vec![0; n];
        for (i, &j) in col_of.iter().enumerate() {
            map[j] = i;
        }
        terms.push((w, Permutation::from_map(map)?));
    }
    let mut dec = BirkhoffDecomposition { terms };
    if dec.terms.len() > BirkhoffDecomposition::max_terms(n) {
        dec = prune_to_vertex(d, &dec)?;
    }
    if dec.reconstruct(n) != *d {
        return Err(Error::Internal("decomposition does not reconstruct input".into()));
    }
    Ok(dec)
}

// A basic solution over the found permutations uses at most
// dim span(P(n)) = (n-1)²+1 of them.
fn prune_to_vertex(d: &RMatrix, dec: &BirkhoffDecomposition) -> Result<BirkhoffDecomposition> {
    let n = d.rows();
    let k = dec.terms.len();
    let mut e = RMatrix::zeros(n * n + 1, k);
    let mut f = vec![Rational::zero(); n * n + 1];
    for (t, (_, p)) in dec.terms.iter().enumerate() {
        for j in 0..n {
            e.set(p.image(j) * n + j, t, Rational::one());
        }
        e.set(n * n, t, Rational::one());
    }
    for i in 0..n {
        for j in 0..n {
            f[i * n + j] = d.get(i, j).clone();
        }
    }
    f[n * n] = Rational::one();
    let sys = FeasibilitySystem::new(e, RVector::new(f))?;
    match solve_feasibility(&sys)? {
        FeasibilityOutcome::Feasible(x) => Ok(BirkhoffDecomposition {
            terms: dec
                .terms
                .iter()
                .zip(x.iter())
                .filter(|(_, w)| w.is_positive())
                .map(|((_, p), w)| (w.clone(), p.clone()))
                .collect(),
        }),
        FeasibilityOutcome::Infeasible(_) => Err(Error::Internal("found permutations do not span the input".into())),
    }
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    let mut map: Vec<usize> = (0..n).collect();
    map.shuffle(rng);
    Permutation::from_map(map).expect("shuffle is a bijection")
}

/// Convex combination of `k` random permutations with random positive weights.
pub fn random_doubly_stochastic_with<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> RMatrix {
    let k = k.max(1);
    let weights: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=10)).collect();
    let total: i64 = weights.iter().sum();
    let mut out = RMatrix::zeros(n, n);
    for w in weights {
        let p = random_permutation(n, rng);
        let w = frac(w, total);
        for j in 0..n {
            out[(p.image(j), j)] += &w;
        }
    }
    out
}

pub fn random_distribution_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RVector {
    let mut raw: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=9)).collect();
    if raw.iter().all(|&x| x == 0) {
        let i = rng.gen_range(0..n);
        raw[i] = 1;
    }
    let total: i64 = raw.iter().sum();
    RVector::new(raw.into_iter().map(|x| frac(x, total)).collect())
}

pub fn random_column_stochastic_with<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> RMatrix {
    let cols: Vec<RVector> = (0..m).map(|_| random_distribution_with(n, rng)).collect();
    RMatrix::from_columns(&cols).expect("equal lengths")
}

pub fn random_zero_sum_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RVector {
    let q = rng.gen_range(1..=4);
    let v = RVector::new((0..n).map(|_| frac(rng.gen_range(-9..=9), q)).collect());
    let mean = v.sum() / int(n as i64);
    v.shift(&-mean)
}

/// Small random rational in `[-bound, bound]` with denominator in `1..=4`.
pub fn random_rational<R: Rng + ?Sized>(bound: i64, rng: &mut R) -> Rational {
    let q = rng.gen_range(1..=4);
    frac(rng.gen_range(-bound * q..=bound * q), q)
}

pub fn random_matrix_with<R: Rng + ?Sized>(n: usize, m: usize, bound: i64, rng: &mut R) -> RMatrix {
    RMatrix::from_fn(n, m, |_, _| random_rational(bound, rng))
}

pub fn random_doubly_stochastic(n: usize, k: usize, seed: u64) -> RMatrix {
    random_doubly_stochastic_with(n, k, &mut rng_for(seed))
}

pub fn random_column_stochastic(n: usize, m: usize, seed: u64) -> RMatrix {
    random_column_stochastic_with(n, m, &mut rng_for(seed))
}

pub fn random_zero_sum(n: usize, seed: u64) -> RVector {
    random_zero_sum_with(n, &mut rng_for(seed))
}

pub fn random_distribution(n: usize, seed: u64) -> RVector {
    random_distribution_with(n, &mut rng_for(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn permutation_is_single_term() {
        let p = Permutation::from_map(vec![2, 0, 1]).unwrap();
        let dec = birkhoff_decompose(&p.to_matrix()).unwrap();
        assert_eq!(dec.terms, vec![(int(1), p)]);
    }

    #[test]
    fn half_j_splits_in_two() {
        let d = RMatrix::ones(2, 2).scale(&frac(1, 2));
        let dec = birkhoff_decompose(&d).unwrap();
        assert_eq!(dec.terms.len(), 2);
        assert!(dec.terms.iter().all(|(w, _)| *w == frac(1, 2)));
        let mut perms: Vec<_> = dec.terms.iter().map(|(_, p)| p.clone()).collect();
        perms.sort();
        assert_eq!(
            perms,
            vec![Permutation::identity(2), Permutation::transposition(2, 0, 1)]
        );
    }

    #[test]
    fn planted_three_terms() {
        let p1 = Permutation::from_map(vec![1, 2, 0, 3]).unwrap().to_matrix();
        let p2 = Permutation::from_map(vec![3, 2, 1, 0]).unwrap().to_matrix();
        let p3 = Permutation::identity(4).to_matrix();
        let d = p1
            .scale(&frac(1, 3))
            .add(&p2.scale(&frac(1, 6)))
            .unwrap()
            .add(&p3.scale(&frac(1, 2)))
            .unwrap();
        let dec = birkhoff_decompose(&d).unwrap();
        assert_eq!(dec.reconstruct(4), d);
        let total = dec.terms.iter().fold(Rational::zero(), |acc, (w, _)| acc + w);
        assert!(total.is_one());
    }

    #[test]
    fn rejects_non_doubly_stochastic() {
        assert!(birkhoff_decompose(&RMatrix::from_i64(&[&[1, 1], &[0, 0]])).is_err());
    }

    #[test]
    fn generator_examples() {
        let d = random_doubly_stochastic(3, 1, 7);
        assert!(Permutation::from_matrix(&d).is_some());
        assert!(random_zero_sum(5, 3).sum().is_zero());
        assert!(random_distribution(4, 11).is_distribution());
        assert_eq!(random_column_stochastic(3, 2, 5), random_column_stochastic(3, 2, 5));
    }

    #[test]
    fn vertex_pruning_respects_bound() {
        for seed in 0..20 {
            let d = random_doubly_stochastic(6, 30, seed);
            let dec = birkhoff_decompose(&d).unwrap();
            assert!(dec.terms.len() <= BirkhoffDecomposition::max_terms(6));
            assert_eq!(dec.reconstruct(6), d);
        }
    }

    proptest! {
        #[test]
        fn generators_meet_predicates(seed in any::<u64>(), n in 1usize..7, m in 1usize..5, k in 1usize..6) {
            prop_assert!(random_doubly_stochastic(n, k, seed).is_doubly_stochastic());
            prop_assert!(random_column_stochastic(n, m, seed).is_column_stochastic());
            prop_assert!(random_zero_sum(n, seed).sum().is_zero());
            prop_assert!(random_distribution(n, seed).is_distribution());
        }

        #[test]
        fn decomposition_round_trip(seed in any::<u64>(), n in 1usize..7, k in 1usize..6) {
            let d = random_doubly_stochastic(n, k, seed);
            let dec = birkhoff_decompose(&d).unwrap();
            prop_assert!(dec.terms.len() <= BirkhoffDecomposition::max_terms(n));
            prop_assert_eq!(dec.reconstruct(n), d);
        }
    }
}
