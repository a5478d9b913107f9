//! Seeded instance generators, a preserver fuzzer and the invariance suite.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::birkhoff::{
    random_column_stochastic_with, random_distribution_with, random_doubly_stochastic_with, random_matrix_with,
    random_permutation, random_rational, random_zero_sum_with,
};
use crate::error::{shape_err, Error, Result};
use crate::linalg::{Permutation, RMatrix, RVector};
use crate::matrix::{check_strong, check_strong_equiv, check_weak, random_direction, refutes};
use crate::preservers::{
    check_condition_alpha, classify_vector_preserver, classify_zero_sum_preserver, is_cs_preserver, make_ando1,
    make_ando2, make_cs_form, make_zero_sum, OperatorGrid, VectorOperator,
};
use crate::rational::{frac, int, Rational};
use crate::reduce::theta;
use crate::vector::{check_vector_equiv, check_vector_majorization};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationKind {
    Vector,
    Strong,
    Weak,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    All,
    Distributions,
    ZeroSum,
    ColumnStochastic,
    ZeroOne,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RelationSpec {
    pub relation: RelationKind,
    pub domain: Domain,
}

impl RelationSpec {
    pub fn new(relation: RelationKind, domain: Domain) -> Self {
        RelationSpec { relation, domain }
    }

    pub fn is_supported(&self) -> bool {
        match self.relation {
            RelationKind::Vector | RelationKind::Strong => true,
            RelationKind::Weak => self.domain == Domain::All,
        }
    }
}

impl fmt::Display for RelationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = match self.relation {
            RelationKind::Vector => "vector",
            RelationKind::Strong => "strong",
            RelationKind::Weak => "weak",
        };
        let d = match self.domain {
            Domain::All => "all",
            Domain::Distributions => "distributions",
            Domain::ZeroSum => "zero-sum",
            Domain::ColumnStochastic => "column-stochastic",
            Domain::ZeroOne => "zero-one",
        };
        write!(f, "{r}/{d}")
    }
}

/// Either kind of operator the fuzzer accepts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Operator {
    Vector(VectorOperator),
    Grid(OperatorGrid),
}

impl Operator {
    pub fn n(&self) -> usize {
        match self {
            Operator::Vector(v) => v.n(),
            Operator::Grid(g) => g.n(),
        }
    }

    /// Number of columns of the inputs; a vector operator takes vectors.
    pub fn m(&self) -> usize {
        match self {
            Operator::Vector(_) => 1,
            Operator::Grid(g) => g.m(),
        }
    }

    pub fn apply(&self, x: &RMatrix) -> Result<RMatrix> {
        match self {
            Operator::Vector(v) => v.apply_columns(x),
            Operator::Grid(g) => g.apply(x),
        }
    }
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Does the relation hold? Vectors are `n × 1` matrices.
pub fn relation_holds(kind: RelationKind, a: &RMatrix, b: &RMatrix) -> Result<bool> {
    a.check_same_shape(b)?;
    match kind {
        RelationKind::Vector => {
            if a.cols() != 1 {
                return Err(Error::Unsupported("vector relation needs single-column inputs".into()));
            }
            check_vector_majorization(&a.column(0), &b.column(0))
        }
        RelationKind::Strong => {
            if a.column_sums() != b.column_sums() {
                return Ok(false);
            }
            if check_strong_equiv(a, b).is_some() {
                return Ok(true);
            }
            Ok(check_strong(a, b)?.holds())
        }
        RelationKind::Weak => Ok(check_weak(a, b)?.holds()),
    }
}

fn random_zero_one<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> RMatrix {
    RMatrix::from_fn(n, m, |_, _| {
        if rng.gen_bool(0.5) {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

fn random_row_stochastic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RMatrix {
    let rows: Vec<RVector> = (0..n).map(|_| random_distribution_with(n, rng)).collect();
    RMatrix::from_columns(&rows).expect("equal lengths").transpose()
}

fn domain_matrix<R: Rng + ?Sized>(domain: Domain, n: usize, m: usize, rng: &mut R) -> RMatrix {
    match domain {
        Domain::All => random_matrix_with(n, m, 5, rng),
        Domain::Distributions | Domain::ColumnStochastic => random_column_stochastic_with(n, m, rng),
        Domain::ZeroSum => {
            let cols: Vec<RVector> = (0..m).map(|_| random_zero_sum_with(n, rng)).collect();
            RMatrix::from_columns(&cols).expect("equal lengths")
        }
        Domain::ZeroOne => random_zero_one(n, m, rng),
    }
}

/// A pair `(A, B)` with `A ≼ B` in the spec's relation, both in its domain.
///
/// Vector pairs are `n × 1`. The pair is checked before it is returned.
pub fn gen_pair(spec: RelationSpec, n: usize, m: usize, seed: u64) -> Result<(RMatrix, RMatrix)> {
    gen_pair_with(spec, n, m, &mut rng_for(seed))
}

pub fn gen_pair_with<R: Rng + ?Sized>(
    spec: RelationSpec,
    n: usize,
    m: usize,
    rng: &mut R,
) -> Result<(RMatrix, RMatrix)> {
    if !spec.is_supported() {
        return Err(Error::Unsupported(format!("no generator for {spec}")));
    }
    let m = if spec.relation == RelationKind::Vector { 1 } else { m };
    let b = domain_matrix(spec.domain, n, m, rng);
    let (a, mixer) = match (spec.relation, spec.domain) {
        (_, Domain::ZeroOne) if spec.relation != RelationKind::Weak => {
            let p = random_permutation(n, rng).to_matrix();
            (p.mul(&b)?, p)
        }
        (RelationKind::Weak, _) => {
            let r = random_row_stochastic(n, rng);
            (r.mul(&b)?, r)
        }
        _ => {
            let k = rng.gen_range(1..=n.max(1));
            let d = random_doubly_stochastic_with(n, k, rng);
            (d.mul(&b)?, d)
        }
    };
    let ok = match spec.relation {
        RelationKind::Weak => mixer.is_row_stochastic(),
        _ => mixer.is_doubly_stochastic(),
    };
    if !ok || mixer.mul(&b)? != a {
        return Err(Error::Internal("generated pair failed its witness check".into()));
    }
    Ok((a, b))
}

/// A failed preservation: `A ≼ B` but `Φ(A) ⋠ Φ(B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub spec: RelationSpec,
    pub a: RMatrix,
    pub b: RMatrix,
    pub image_a: RMatrix,
    pub image_b: RMatrix,
    pub transcript: Vec<String>,
    /// Trial index; battery trials come first.
    pub trial: usize,
    /// Seed that regenerates the pair, absent for battery pairs.
    pub replay_seed: Option<u64>,
}

impl Counterexample {
    /// Re-runs both relation checks on the stored data.
    pub fn reverify(&self) -> Result<bool> {
        Ok(relation_holds(self.spec.relation, &self.a, &self.b)?
            && !relation_holds(self.spec.relation, &self.image_a, &self.image_b)?)
    }

    /// Also checks that the stored images come from `op`.
    pub fn reverify_against(&self, op: &Operator) -> Result<bool> {
        Ok(op.apply(&self.a)? == self.image_a && op.apply(&self.b)? == self.image_b && self.reverify()?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzReport {
    pub counterexample: Option<Counterexample>,
    pub trials_run: usize,
    pub battery_size: usize,
}

impl FuzzReport {
    pub fn found_in_battery(&self) -> bool {
        self.counterexample.as_ref().is_some_and(|c| c.replay_seed.is_none())
    }
}

fn e_vec(n: usize, g: usize) -> RVector {
    RVector::basis(n, g)
}

fn vector_battery(spec: RelationSpec, n: usize) -> Vec<(RMatrix, RMatrix)> {
    let col = |v: RVector| v.to_column_matrix();
    let mut out = Vec::new();
    let dist = matches!(
        spec.domain,
        Domain::All | Domain::Distributions | Domain::ColumnStochastic
    );
    let zero_one = matches!(spec.domain, Domain::All | Domain::ZeroOne);
    if dist || zero_one {
        for g in 0..n {
            for h in 0..n {
                if g != h {
                    out.push((col(e_vec(n, g)), col(e_vec(n, h))));
                }
            }
        }
    }
    if dist {
        let u = RVector::new(vec![frac(1, n as i64); n]);
        for g in 0..n {
            out.push((col(u.clone()), col(e_vec(n, g))));
        }
    }
    if zero_one {
        for k in 2..n {
            let v = RVector::new(
                (0..n)
                    .map(|i| if i < k { Rational::one() } else { Rational::zero() })
                    .collect(),
            );
            for h in 0..n {
                let p = Permutation::transposition(n, 0, h);
                out.push((col(p.apply(&v)), col(v.clone())));
            }
        }
    }
    if matches!(spec.domain, Domain::All | Domain::ZeroSum) {
        for g in 0..n {
            for h in 0..n {
                if g == h {
                    continue;
                }
                let d = e_vec(n, g).sub(&e_vec(n, h)).expect("same length");
                for x in 0..n {
                    for y in x + 1..n {
                        let q = Permutation::transposition(n, x, y);
                        out.push((col(d.clone()), col(q.apply(&d))));
                    }
                }
            }
        }
    }
    out
}

fn strong_battery(spec: RelationSpec, n: usize, m: usize) -> Vec<(RMatrix, RMatrix)> {
    let mut out = Vec::new();
    let transpositions: Vec<Permutation> = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| Permutation::transposition(n, x, y)))
        .collect();
    let with_swaps = |out: &mut Vec<(RMatrix, RMatrix)>, a: RMatrix| {
        for q in &transpositions {
            let qa = q.permute_rows(&a);
            if qa != a {
                out.push((a.clone(), qa));
            }
        }
    };
    match spec.domain {
        Domain::All | Domain::ZeroOne => {
            for j in 0..m {
                for g in 0..n {
                    for h in 0..n {
                        if g != h {
                            out.push((
                                RMatrix::outer(&e_vec(n, g), &e_vec(m, j)),
                                RMatrix::outer(&e_vec(n, h), &e_vec(m, j)),
                            ));
                        }
                    }
                }
            }
        }
        Domain::ZeroSum => {
            for k in 0..m {
                for g in 0..n {
                    for h in g + 1..n {
                        let d = e_vec(n, g).sub(&e_vec(n, h)).expect("same length");
                        with_swaps(&mut out, RMatrix::outer(&d, &e_vec(m, k)));
                    }
                }
            }
        }
        Domain::ColumnStochastic | Domain::Distributions => {
            let inv = frac(1, n as i64);
            let uniform = RMatrix::ones(n, m).scale(&inv);
            let tilt = |g: usize, h: usize, k: usize| {
                let d = e_vec(n, g).sub(&e_vec(n, h)).expect("same length");
                RMatrix::outer(&d, &e_vec(m, k)).scale(&inv)
            };
            for k in 0..m {
                for g in 0..n {
                    for h in 0..n {
                        if g == h {
                            continue;
                        }
                        let a = uniform.add(&tilt(g, h, k)).expect("same shape");
                        out.push((uniform.clone(), a.clone()));
                        with_swaps(&mut out, a);
                    }
                }
            }
            for k in 0..m {
                for l in k + 1..m {
                    for g in 0..n {
                        for h in 0..n {
                            if g == h {
                                continue;
                            }
                            let a = uniform
                                .add(&tilt(g, h, k))
                                .and_then(|x| x.add(&tilt(h, g, l)))
                                .expect("same shape");
                            with_swaps(&mut out, a.clone());
                            let b = uniform
                                .add(&tilt(g, h, k))
                                .and_then(|x| x.add(&tilt(g, h, l)))
                                .expect("same shape");
                            with_swaps(&mut out, b);
                        }
                    }
                }
            }
        }
    }
    out
}

fn weak_battery(n: usize, m: usize) -> Vec<(RMatrix, RMatrix)> {
    let mut out = Vec::new();
    for j in 0..m {
        for g in 0..n {
            let b = RMatrix::outer(&e_vec(n, g), &e_vec(m, j));
            out.push((RMatrix::zeros(n, m), b.clone()));
            out.push((RMatrix::outer(&RVector::ones(n), &e_vec(m, j)), b));
        }
    }
    out
}

/// Structured pairs built from basis vectors and their differences.
pub fn structured_battery(spec: RelationSpec, n: usize, m: usize) -> Vec<(RMatrix, RMatrix)> {
    match spec.relation {
        RelationKind::Vector => vector_battery(spec, n),
        RelationKind::Strong => strong_battery(spec, n, m),
        RelationKind::Weak => weak_battery(n, m),
    }
}

/// Searches for `A ≼ B` with `Φ(A) ⋠ Φ(B)`.
///
/// The structured battery runs first and counts against `trials`; the rest
/// are seeded random pairs from [`gen_pair`].
pub fn fuzz_preserver(op: &Operator, spec: RelationSpec, trials: usize, seed: u64) -> Result<FuzzReport> {
    if !spec.is_supported() {
        return Err(Error::Unsupported(format!("no generator for {spec}")));
    }
    let (n, m) = (op.n(), op.m());
    if spec.relation == RelationKind::Vector && m != 1 {
        return Err(shape_err("a vector operator", format!("operator on {n}x{m} matrices")));
    }
    let battery = structured_battery(spec, n, m);
    let battery_size = battery.len().min(trials);
    let mut run = 0;

    let judge = |a: RMatrix, b: RMatrix, trial: usize, replay_seed: Option<u64>| -> Result<Option<Counterexample>> {
        if !relation_holds(spec.relation, &a, &b)? {
            return Err(Error::Internal("trial pair does not satisfy the relation".into()));
        }
        let image_a = op.apply(&a)?;
        let image_b = op.apply(&b)?;
        if relation_holds(spec.relation, &image_a, &image_b)? {
            return Ok(None);
        }
        let source = match replay_seed {
            Some(s) => format!("random pair, seed {s}"),
            None => "structured battery".to_string(),
        };
        let transcript = vec![
            format!("trial {trial} ({source}) under {spec}"),
            "A ≼ B holds".to_string(),
            format!("Φ(A) = {image_a}"),
            format!("Φ(B) = {image_b}"),
            "Φ(A) ≼ Φ(B) fails".to_string(),
        ];
        Ok(Some(Counterexample {
            spec,
            a,
            b,
            image_a,
            image_b,
            transcript,
            trial,
            replay_seed,
        }))
    };

    for (a, b) in battery.into_iter().take(battery_size) {
        run += 1;
        if let Some(c) = judge(a, b, run - 1, None)? {
            return Ok(FuzzReport {
                counterexample: Some(c),
                trials_run: run,
                battery_size,
            });
        }
    }
    let mut rng = rng_for(seed);
    while run < trials {
        let s: u64 = rng.gen();
        let (a, b) = gen_pair(spec, n, m, s)?;
        run += 1;
        if let Some(c) = judge(a, b, run - 1, Some(s))? {
            return Ok(FuzzReport {
                counterexample: Some(c),
                trials_run: run,
                battery_size,
            });
        }
    }
    Ok(FuzzReport {
        counterexample: None,
        trials_run: run,
        battery_size,
    })
}

/// Random invertible `m × m` matrix as unit-lower times upper.
pub fn random_invertible<R: Rng + ?Sized>(m: usize, rng: &mut R) -> RMatrix {
    let l = RMatrix::from_fn(m, m, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Greater => int(rng.gen_range(-2..=2)),
        std::cmp::Ordering::Equal => Rational::one(),
        std::cmp::Ordering::Less => Rational::zero(),
    });
    let u = RMatrix::from_fn(m, m, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => int(rng.gen_range(-2..=2)),
        std::cmp::Ordering::Equal => {
            let d = *[-2i64, -1, 1, 2].choose(rng).expect("nonempty");
            int(d)
        }
        std::cmp::Ordering::Greater => Rational::zero(),
    });
    l.mul(&u).expect("square")
}

fn nonzero_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    loop {
        let x = random_rational(4, rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Random `Φ(X) = Σⱼ(eᵗX⁽ʲ⁾)Sⱼ + PXR` that satisfies the column-stochastic
/// preserver constraint.
pub fn random_cs_preserver<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> OperatorGrid {
    let p = random_permutation(n, rng);
    let mut s: Vec<RMatrix> = (0..m).map(|_| random_matrix_with(n, m, 3, rng)).collect();
    let r = if rng.gen_bool(0.25) {
        RMatrix::zeros(m, m)
    } else {
        let r = random_matrix_with(m, m, 3, rng);
        // close the sum of the Sⱼ to evᵗ
        let v = RVector::new((0..m).map(|_| random_rational(3, rng)).collect());
        let mut total = RMatrix::zeros(n, m);
        for x in &s[..m - 1] {
            total = total.add(x).expect("same shape");
        }
        s[m - 1] = RMatrix::outer(&RVector::ones(n), &v).sub(&total).expect("same shape");
        r
    };
    make_cs_form(&s, &p, &r).expect("consistent shapes")
}

/// Random operator of the same shape whose `Σⱼ Sⱼ` has a non-constant
/// column while `R ≠ 0`. Needs `n ≥ 2`.
pub fn random_cs_violator<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> OperatorGrid {
    loop {
        let p = random_permutation(n, rng);
        let s: Vec<RMatrix> = (0..m).map(|_| random_matrix_with(n, m, 3, rng)).collect();
        let mut r = random_matrix_with(m, m, 3, rng);
        if r.is_zero() {
            r.set(0, 0, Rational::one());
        }
        let g = make_cs_form(&s, &p, &r).expect("consistent shapes");
        if !is_cs_preserver(&g) {
            return g;
        }
    }
}

/// Strong-majorization decision used by the suite; swappable for harness tests.
pub type StrongChecker<'a> = &'a dyn Fn(&RMatrix, &RMatrix) -> Result<bool>;

pub fn default_strong_checker(a: &RMatrix, b: &RMatrix) -> Result<bool> {
    Ok(check_strong(a, b)?.holds())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub max_n: usize,
    pub max_m: usize,
    pub cases: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            max_n: 5,
            max_m: 4,
            cases: 200,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// Seed that replays this property alone.
    pub replay_seed: u64,
    /// Case seed of the first failure.
    pub first_failure: Option<u64>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub properties: Vec<PropertyReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyReport::passed)
    }
}

struct Case<'a> {
    rng: ChaCha8Rng,
    n: usize,
    m: usize,
    strong: StrongChecker<'a>,
}

type Property = fn(&mut Case) -> Result<bool>;

/// Registered properties, in report order.
pub const PROPERTY_NAMES: &[&str] = &[
    "right-invariance-strong",
    "right-invariance-weak",
    "diagonal-invariance",
    "column-shift",
    "scalar-scale",
    "uniform-shift",
    "directional-shift",
    "vector-symmetry",
    "strong-symmetry",
    "zero-one-vectors",
    "zero-one-vector-preservation",
    "theta-composition",
    "zero-sum-necessary",
    "order-chain",
];

fn property(name: &str) -> Option<Property> {
    let p: Property = match name {
        "right-invariance-strong" => prop_right_invariance_strong,
        "right-invariance-weak" => prop_right_invariance_weak,
        "diagonal-invariance" => prop_diagonal_invariance,
        "column-shift" => prop_column_shift,
        "scalar-scale" => prop_scalar_scale,
        "uniform-shift" => prop_uniform_shift,
        "directional-shift" => prop_directional_shift,
        "vector-symmetry" => prop_vector_symmetry,
        "strong-symmetry" => prop_strong_symmetry,
        "zero-one-vectors" => prop_zero_one_vectors,
        "zero-one-vector-preservation" => prop_zero_one_vector_preservation,
        "theta-composition" => prop_theta_composition,
        "zero-sum-necessary" => prop_zero_sum_necessary,
        "order-chain" => prop_order_chain,
        _ => return None,
    };
    Some(p)
}

fn property_seed(base: u64, index: usize) -> u64 {
    rng_for(base ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)).gen()
}

/// Runs one registered property from its replay seed.
pub fn run_property(
    name: &str,
    config: &SuiteConfig,
    replay_seed: u64,
    strong: StrongChecker,
) -> Result<PropertyReport> {
    let (idx, _) = PROPERTY_NAMES
        .iter()
        .enumerate()
        .find(|(_, n)| **n == name)
        .ok_or_else(|| Error::Unsupported(format!("unknown property {name}")))?;
    let prop = property(name).expect("registered");
    let mut seeds = rng_for(replay_seed);
    let mut failures = 0;
    let mut first_failure = None;
    for _ in 0..config.cases {
        let case_seed: u64 = seeds.gen();
        let mut rng = rng_for(case_seed);
        let n = rng.gen_range(1..=config.max_n.max(1));
        let m = rng.gen_range(1..=config.max_m.max(1));
        let mut case = Case { rng, n, m, strong };
        if !prop(&mut case)? {
            failures += 1;
            first_failure.get_or_insert(case_seed);
        }
    }
    Ok(PropertyReport {
        name: PROPERTY_NAMES[idx],
        cases: config.cases,
        failures,
        replay_seed,
        first_failure,
    })
}

/// Runs every registered property.
pub fn lemma_suite(config: &SuiteConfig, strong: StrongChecker) -> Result<SuiteReport> {
    let mut properties = Vec::with_capacity(PROPERTY_NAMES.len());
    for (i, name) in PROPERTY_NAMES.iter().enumerate() {
        properties.push(run_property(name, config, property_seed(config.seed, i), strong)?);
    }
    Ok(SuiteReport { properties })
}

/// Half planted positives `A = DB`, half `A = DB + Z` with zero-sum columns in `Z`.
fn lemma_pair(c: &mut Case) -> (RMatrix, RMatrix) {
    let (n, m) = (c.n, c.m);
    let b = random_matrix_with(n, m, 4, &mut c.rng);
    let k = c.rng.gen_range(1..=n);
    let d = random_doubly_stochastic_with(n, k, &mut c.rng);
    let mut a = d.mul(&b).expect("square");
    if c.rng.gen_bool(0.5) {
        let cols: Vec<RVector> = (0..m).map(|_| random_zero_sum_with(n, &mut c.rng)).collect();
        a = a
            .add(&RMatrix::from_columns(&cols).expect("same length"))
            .expect("same shape");
    }
    (a, b)
}

fn prop_right_invariance_strong(c: &mut Case) -> Result<bool> {
    let (a, b) = lemma_pair(c);
    let y = random_invertible(c.m, &mut c.rng);
    Ok((c.strong)(&a, &b)? == (c.strong)(&a.mul(&y)?, &b.mul(&y)?)?)
}

fn prop_right_invariance_weak(c: &mut Case) -> Result<bool> {
    let (a, b) = if c.rng.gen_bool(0.5) {
        let b = random_matrix_with(c.n, c.m, 4, &mut c.rng);
        (random_row_stochastic(c.n, &mut c.rng).mul(&b)?, b)
    } else {
        lemma_pair(c)
    };
    let y = random_invertible(c.m, &mut c.rng);
    Ok(check_weak(&a, &b)?.holds() == check_weak(&a.mul(&y)?, &b.mul(&y)?)?.holds())
}

fn prop_diagonal_invariance(c: &mut Case) -> Result<bool> {
    let (a, b) = lemma_pair(c);
    let d = RVector::new((0..c.m).map(|_| nonzero_rational(&mut c.rng)).collect());
    Ok((c.strong)(&a, &b)? == (c.strong)(&a.scale_columns(&d)?, &b.scale_columns(&d)?)?)
}

fn prop_column_shift(c: &mut Case) -> Result<bool> {
    let (a, b) = lemma_pair(c);
    let v = RVector::new((0..c.m).map(|_| random_rational(4, &mut c.rng)).collect());
    Ok((c.strong)(&a, &b)? == (c.strong)(&a.add_to_columns(&v)?, &b.add_to_columns(&v)?)?)
}

fn prop_scalar_scale(c: &mut Case) -> Result<bool> {
    let (a, b) = lemma_pair(c);
    let l = nonzero_rational(&mut c.rng);
    Ok((c.strong)(&a, &b)? == (c.strong)(&a.scale(&l), &b.scale(&l))?)
}

fn prop_uniform_shift(c: &mut Case) -> Result<bool> {
    let (a, b) = lemma_pair(c);
    let l = random_rational(4, &mut c.rng);
    Ok((c.strong)(&a, &b)? == (c.strong)(&a.shift(&l), &b.shift(&l))?)
}

fn prop_directional_shift(c: &mut Case) -> Result<bool> {
    let (a, b) = lemma_pair(c);
    let v = RVector::new((0..c.m).map(|_| random_rational(4, &mut c.rng)).collect());
    let l = random_rational(4, &mut c.rng);
    let (av, bv) = (a.add_to_columns(&v)?, b.add_to_columns(&v)?);
    let (aj, bj) = (a.shift(&l), b.shift(&l));
    for _ in 0..8 {
        let w = random_direction(c.m, &mut c.rng);
        let base = refutes(&a, &b, &w)?;
        if base != refutes(&av, &bv, &w)? || base != refutes(&aj, &bj, &w)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn prop_vector_symmetry(c: &mut Case) -> Result<bool> {
    let n = c.n;
    let b = RVector::new((0..n).map(|_| random_rational(3, &mut c.rng)).collect());
    let a = if c.rng.gen_bool(0.5) {
        random_permutation(n, &mut c.rng).apply(&b)
    } else {
        let k = c.rng.gen_range(1..=n);
        random_doubly_stochastic_with(n, k, &mut c.rng).mul_vec(&b)?
    };
    let both = check_vector_majorization(&a, &b)? && check_vector_majorization(&b, &a)?;
    let p = check_vector_equiv(&a, &b);
    Ok(both == p.is_some() && p.is_none_or(|p| p.apply(&b) == a))
}

fn prop_strong_symmetry(c: &mut Case) -> Result<bool> {
    let (n, m) = (c.n, c.m);
    let b = random_matrix_with(n, m, 2, &mut c.rng);
    let a = if c.rng.gen_bool(0.5) {
        random_permutation(n, &mut c.rng).permute_rows(&b)
    } else {
        let k = c.rng.gen_range(1..=n);
        random_doubly_stochastic_with(n, k, &mut c.rng).mul(&b)?
    };
    let both = (c.strong)(&a, &b)? && (c.strong)(&b, &a)?;
    let p = check_strong_equiv(&a, &b);
    Ok(both == p.is_some() && p.is_none_or(|p| p.permute_rows(&b) == a))
}

fn random_zero_one_vector(n: usize, rng: &mut ChaCha8Rng) -> RVector {
    random_zero_one(n, 1, rng).column(0)
}

fn prop_zero_one_vectors(c: &mut Case) -> Result<bool> {
    let a = random_zero_one_vector(c.n, &mut c.rng);
    let b = if c.rng.gen_bool(0.5) {
        random_permutation(c.n, &mut c.rng).apply(&a)
    } else {
        random_zero_one_vector(c.n, &mut c.rng)
    };
    Ok(check_vector_majorization(&a, &b)? == (a.sum() == b.sum()))
}

fn random_ando(n: usize, rng: &mut ChaCha8Rng) -> VectorOperator {
    if rng.gen_bool(0.5) {
        make_ando1(&RVector::new((0..n).map(|_| random_rational(3, rng)).collect()))
    } else {
        let p = random_permutation(n, rng);
        make_ando2(&random_rational(3, rng), &random_rational(3, rng), &p)
    }
}

fn prop_zero_one_vector_preservation(c: &mut Case) -> Result<bool> {
    let phi = random_ando(c.n, &mut c.rng);
    let a = random_zero_one_vector(c.n, &mut c.rng);
    let b = random_permutation(c.n, &mut c.rng).apply(&a);
    if !check_vector_majorization(&a, &b)? {
        return Ok(false);
    }
    check_vector_majorization(&phi.apply(&a)?, &phi.apply(&b)?)
}

fn prop_theta_composition(c: &mut Case) -> Result<bool> {
    let (n, m) = (c.n, c.m);
    let phi = random_cs_preserver(n, m, &mut c.rng);
    let b = random_zero_one(n, m, &mut c.rng);
    let a = if c.rng.gen_bool(0.75) {
        random_permutation(n, &mut c.rng).permute_rows(&b)
    } else {
        random_zero_one(n, m, &mut c.rng)
    };
    if !(c.strong)(&a, &b)? {
        return Ok(true);
    }
    let (ta, tb) = (theta(&a)?, theta(&b)?);
    (c.strong)(&phi.apply(&ta)?, &phi.apply(&tb)?)
}

fn prop_zero_sum_necessary(c: &mut Case) -> Result<bool> {
    let n = c.n;
    let v = RVector::new((0..n).map(|_| random_rational(3, &mut c.rng)).collect());
    let lambda = if c.rng.gen_bool(0.2) {
        Rational::zero()
    } else {
        nonzero_rational(&mut c.rng)
    };
    let p = random_permutation(n, &mut c.rng);
    let x = make_zero_sum(&v, &lambda, &p)?;
    let z = match classify_zero_sum_preserver(&x) {
        Some(z) => z,
        None => return Ok(false),
    };
    if z.to_matrix() != x.matrix {
        return Ok(false);
    }
    let cols = x.matrix.columns();
    let sums: Vec<Rational> = cols.iter().map(RVector::sum).collect();
    if sums.iter().any(|s| *s != sums[0]) {
        return Ok(false);
    }
    if n >= 2 {
        let pick = |rng: &mut ChaCha8Rng| {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            (i, j)
        };
        let (i, j) = pick(&mut c.rng);
        let (k, l) = pick(&mut c.rng);
        if check_vector_equiv(&cols[i].sub(&cols[j])?, &cols[k].sub(&cols[l])?).is_none() {
            return Ok(false);
        }
    }
    let alpha = check_condition_alpha(&x);
    let expect = (n >= 2 && !z.lambda.is_zero()).then(|| z.lambda.abs());
    if alpha != expect {
        return Ok(false);
    }
    let ando = random_ando(n, &mut c.rng);
    if classify_vector_preserver(&ando).is_none() || classify_zero_sum_preserver(&ando).is_none() {
        return Ok(false);
    }
    let a = random_zero_sum_with(n, &mut c.rng);
    let q = random_permutation(n, &mut c.rng);
    let xa = x.apply(&a)?;
    Ok(xa.sum().is_zero() && check_vector_equiv(&xa, &x.apply(&q.apply(&a))?).is_some())
}

fn prop_order_chain(c: &mut Case) -> Result<bool> {
    let (a, b) = lemma_pair(c);
    let strong = (c.strong)(&a, &b)?;
    let seed = c.rng.gen();
    let refuted = c.m <= 6 && crate::matrix::check_directional(&a, &b, 16, seed)?.is_negative();
    let weak = check_weak(&a, &b)?.holds();
    Ok((!strong || !refuted) && (refuted || weak))
}
