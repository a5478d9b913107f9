//! Linear operators on vectors and matrices, and their preserver normal forms.

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use crate::error::{shape_err, Error, Result};
use crate::linalg::{Permutation, RMatrix, RVector};
use crate::rational::Rational;

/// A linear map on `ℝⁿ` given by its standard matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorOperator {
    pub matrix: RMatrix,
}

impl VectorOperator {
    pub fn new(matrix: RMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(shape_err(
                "a square matrix",
                format!("{}x{}", matrix.rows(), matrix.cols()),
            ));
        }
        Ok(VectorOperator { matrix })
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, x: &RVector) -> Result<RVector> {
        self.matrix.mul_vec(x)
    }

    /// Acts column by column on `n × m` matrices.
    pub fn apply_columns(&self, x: &RMatrix) -> Result<RMatrix> {
        self.matrix.mul(x)
    }
}

/// An operator on `n × m` matrices as `m²` blocks; block `(i, j)` maps input
/// column `j` into output column `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorGrid {
    n: usize,
    m: usize,
    blocks: Vec<RMatrix>,
}

impl OperatorGrid {
    /// `blocks[i][j]` is block `(i, j)`.
    pub fn new(blocks: Vec<Vec<RMatrix>>) -> Result<Self> {
        let m = blocks.len();
        if m == 0 {
            return Err(Error::Parse("operator grid needs at least one block".into()));
        }
        let n = blocks[0].first().map(RMatrix::rows).unwrap_or(0);
        if n == 0 {
            return Err(Error::Parse("operator grid needs at least one block".into()));
        }
        let mut flat = Vec::with_capacity(m * m);
        for (i, row) in blocks.into_iter().enumerate() {
            if row.len() != m {
                return Err(shape_err(
                    format!("{m} blocks per row"),
                    format!("{} in row {i}", row.len()),
                ));
            }
            for b in row {
                if b.shape() != (n, n) {
                    return Err(shape_err(
                        format!("{n}x{n} blocks"),
                        format!("{}x{}", b.rows(), b.cols()),
                    ));
                }
                flat.push(b);
            }
        }
        Ok(OperatorGrid { n, m, blocks: flat })
    }

    /// Block `(i, j)` column `q` is `Φ(e_q e_jᵗ)` column `i`.
    pub fn from_fn(n: usize, m: usize, mut phi: impl FnMut(&RMatrix) -> Result<RMatrix>) -> Result<Self> {
        let mut blocks = vec![RMatrix::zeros(n, n); m * m];
        for j in 0..m {
            for q in 0..n {
                let mut basis = RMatrix::zeros(n, m);
                basis.set(q, j, Rational::from_integer(1.into()));
                let image = phi(&basis)?;
                if image.shape() != (n, m) {
                    return Err(shape_err(
                        format!("{n}x{m} image"),
                        format!("{}x{}", image.rows(), image.cols()),
                    ));
                }
                for i in 0..m {
                    blocks[i * m + j].set_column(q, &image.column(i));
                }
            }
        }
        Ok(OperatorGrid { n, m, blocks })
    }

    /// From the `nm × nm` matrix acting on column-stacked `vec(X)`.
    ///
    /// Under that stacking the big matrix is exactly the block matrix.
    pub fn from_vectorized(n: usize, m: usize, big: &RMatrix) -> Result<Self> {
        if big.shape() != (n * m, n * m) {
            return Err(shape_err(
                format!("{0}x{0}", n * m),
                format!("{}x{}", big.rows(), big.cols()),
            ));
        }
        let mut blocks = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                blocks.push(big.block(i * n, (i + 1) * n, j * n, (j + 1) * n));
            }
        }
        Ok(OperatorGrid { n, m, blocks })
    }

    pub fn to_vectorized(&self) -> RMatrix {
        let (n, m) = (self.n, self.m);
        RMatrix::from_fn(n * m, n * m, |r, c| self.block(r / n, c / n).get(r % n, c % n).clone())
    }

    pub fn identity(n: usize, m: usize) -> Self {
        let mut blocks = vec![RMatrix::zeros(n, n); m * m];
        for i in 0..m {
            blocks[i * m + i] = RMatrix::identity(n);
        }
        OperatorGrid { n, m, blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn block(&self, i: usize, j: usize) -> &RMatrix {
        &self.blocks[i * self.m + j]
    }

    pub fn blocks(&self) -> Vec<Vec<RMatrix>> {
        (0..self.m)
            .map(|i| (0..self.m).map(|j| self.block(i, j).clone()).collect())
            .collect()
    }

    /// `Φ(X)⁽ⁱ⁾ = Σⱼ block(i, j) X⁽ʲ⁾`.
    pub fn apply(&self, x: &RMatrix) -> Result<RMatrix> {
        if x.shape() != (self.n, self.m) {
            return Err(shape_err(
                format!("{}x{} input", self.n, self.m),
                format!("{}x{}", x.rows(), x.cols()),
            ));
        }
        let cols: Vec<RVector> = x.columns();
        let mut out = RMatrix::zeros(self.n, self.m);
        for i in 0..self.m {
            let mut acc = RVector::zeros(self.n);
            for (j, c) in cols.iter().enumerate() {
                let blk = self.block(i, j);
                if !blk.is_zero() && !c.is_zero() {
                    acc = acc.add(&blk.mul_vec(c)?)?;
                }
            }
            out.set_column(i, &acc);
        }
        Ok(out)
    }

    /// `Σⱼ block(k, j)`, the operator `v ↦ Φ(veᵗ)⁽ᵏ⁾`.
    pub fn row_sum_operator(&self, k: usize) -> VectorOperator {
        let mut acc = RMatrix::zeros(self.n, self.n);
        for j in 0..self.m {
            acc = acc.add(self.block(k, j)).expect("equal shapes");
        }
        VectorOperator { matrix: acc }
    }
}

/// `X = veᵗ + λP`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroSumForm {
    pub v: RVector,
    pub lambda: Rational,
    pub p: Permutation,
    /// For `n = 2` the same matrix also equals `(v + λe)eᵗ - λP_swap`.
    pub alternate: Option<(RVector, Rational, Permutation)>,
}

impl ZeroSumForm {
    pub fn to_matrix(&self) -> RMatrix {
        let n = self.v.len();
        RMatrix::outer(&self.v, &RVector::ones(n))
            .add(&self.p.to_matrix().scale(&self.lambda))
            .expect("same shape")
    }
}

/// `Φ(X) = Σⱼ (eᵗX⁽ʲ⁾) Sⱼ + PXR`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsForm {
    pub s: Vec<RMatrix>,
    pub p: Permutation,
    pub r: RMatrix,
    /// `R = 0` or `Σⱼ Sⱼ = evᵗ` for some `v`.
    pub constraint_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PreserverForm {
    /// `x ↦ (eᵗx) s`
    Ando1 {
        s: RVector,
    },
    /// `x ↦ αPx + βJx`
    Ando2 {
        alpha: Rational,
        beta: Rational,
        p: Permutation,
    },
    ZeroSum(ZeroSumForm),
    /// `X ↦ Σⱼ (eᵗX⁽ʲ⁾) Sⱼ`
    LiPoon1 {
        s: Vec<RMatrix>,
    },
    /// `X ↦ PXR + JXS`
    LiPoon2 {
        r: RMatrix,
        s: RMatrix,
        p: Permutation,
    },
    Cs(CsForm),
}

impl PreserverForm {
    pub fn tag(&self) -> &'static str {
        match self {
            PreserverForm::Ando1 { .. } => "ando1",
            PreserverForm::Ando2 { .. } => "ando2",
            PreserverForm::ZeroSum(_) => "zero-sum",
            PreserverForm::LiPoon1 { .. } => "li-poon1",
            PreserverForm::LiPoon2 { .. } => "li-poon2",
            PreserverForm::Cs(_) => "cs",
        }
    }

    /// The operator described by a vector form.
    pub fn to_vector_operator(&self) -> Option<VectorOperator> {
        match self {
            PreserverForm::Ando1 { s } => Some(make_ando1(s)),
            PreserverForm::Ando2 { alpha, beta, p } => Some(make_ando2(alpha, beta, p)),
            PreserverForm::ZeroSum(z) => Some(VectorOperator { matrix: z.to_matrix() }),
            _ => None,
        }
    }

    /// The operator described by a matrix form.
    pub fn to_grid(&self) -> Option<OperatorGrid> {
        match self {
            PreserverForm::LiPoon1 { s } => make_li_poon1(s).ok(),
            PreserverForm::LiPoon2 { r, s, p } => make_li_poon2(p, r, s).ok(),
            PreserverForm::Cs(c) => make_cs_form(&c.s, &c.p, &c.r).ok(),
            _ => None,
        }
    }
}

// Majority value of a row and the columns that deviate from it.
fn row_pattern(row: &[Rational]) -> Option<(Rational, Vec<usize>)> {
    let n = row.len();
    let mut counts: HashMap<&Rational, usize> = HashMap::new();
    for x in row {
        *counts.entry(x).or_default() += 1;
    }
    let (maj, &count) = counts.iter().max_by_key(|(_, &c)| c)?;
    if count + 1 < n {
        return None;
    }
    let maj = (*maj).clone();
    let dev = (0..n).filter(|&j| row[j] != maj).collect();
    Some((maj, dev))
}

/// Decides whether `X = veᵗ + λP`.
///
/// For `n = 2` the `P = I` representation is returned, with the swap
/// representation in `alternate`.
pub fn classify_zero_sum_preserver(x: &VectorOperator) -> Option<ZeroSumForm> {
    let a = &x.matrix;
    let n = a.rows();
    let form = match n {
        1 => ZeroSumForm {
            v: a.column(0),
            lambda: Rational::zero(),
            p: Permutation::identity(1),
            alternate: None,
        },
        2 => {
            let sums = a.column_sums();
            if sums[0] != sums[1] {
                return None;
            }
            let v = RVector::new(vec![a.get(0, 1).clone(), a.get(1, 0).clone()]);
            let lambda = a.get(0, 0) - a.get(0, 1);
            let alternate = (v.shift(&lambda), -lambda.clone(), Permutation::transposition(2, 0, 1));
            ZeroSumForm {
                v,
                lambda,
                p: Permutation::identity(2),
                alternate: Some(alternate),
            }
        }
        _ => {
            let col0 = a.column(0);
            if (1..n).all(|j| a.column(j) == col0) {
                ZeroSumForm {
                    v: col0,
                    lambda: Rational::zero(),
                    p: Permutation::identity(n),
                    alternate: None,
                }
            } else {
                let mut v = Vec::with_capacity(n);
                let mut map = vec![usize::MAX; n];
                let mut lambda: Option<Rational> = None;
                for i in 0..n {
                    let (maj, dev) = row_pattern(a.row_slice(i))?;
                    if dev.len() != 1 {
                        return None;
                    }
                    let c = dev[0];
                    let d = a.get(i, c) - &maj;
                    match &lambda {
                        Some(l) if *l != d => return None,
                        Some(_) => {}
                        None => lambda = Some(d),
                    }
                    if map[c] != usize::MAX {
                        return None;
                    }
                    map[c] = i;
                    v.push(maj);
                }
                ZeroSumForm {
                    v: RVector::new(v),
                    lambda: lambda.expect("n >= 3"),
                    p: Permutation::from_map(map).ok()?,
                    alternate: None,
                }
            }
        }
    };
    (form.to_matrix() == *a).then_some(form)
}

/// Condition (α): every column difference is `α(e_g - e_h)` for one `α > 0`.
pub fn check_condition_alpha(x: &VectorOperator) -> Option<Rational> {
    let a = &x.matrix;
    let n = a.rows();
    let cols = a.columns();
    let mut alpha: Option<Rational> = None;
    for i in 0..n {
        for j in i + 1..n {
            let d = cols[i].sub(&cols[j]).ok()?;
            let nz: Vec<&Rational> = d.iter().filter(|x| !x.is_zero()).collect();
            if nz.len() != 2 || (nz[0] + nz[1]) != Rational::zero() {
                return None;
            }
            let a0 = nz[0].abs();
            match &alpha {
                Some(al) if *al != a0 => return None,
                Some(_) => {}
                None => alpha = Some(a0),
            }
        }
    }
    alpha
}

/// Ando's characterization of preservers of vector majorization.
pub fn classify_vector_preserver(x: &VectorOperator) -> Option<PreserverForm> {
    let a = &x.matrix;
    let n = a.rows();
    let col0 = a.column(0);
    if (1..n).all(|j| a.column(j) == col0) {
        return Some(PreserverForm::Ando1 { s: col0 });
    }
    let z = classify_zero_sum_preserver(x)?;
    if !z.v.is_constant() {
        return None;
    }
    let form = PreserverForm::Ando2 {
        alpha: z.lambda.clone(),
        beta: z.v[0].clone(),
        p: z.p.clone(),
    };
    (form.to_vector_operator()?.matrix == *a).then_some(form)
}

/// Same answer as [`classify_vector_preserver`]: preserving majorization on
/// distributions is equivalent to preserving it everywhere.
pub fn classify_prob_preserver(x: &VectorOperator) -> Option<PreserverForm> {
    classify_vector_preserver(x)
}

/// Li–Poon's characterization of preservers of strong majorization.
pub fn classify_strong_preserver(g: &OperatorGrid) -> Option<PreserverForm> {
    let (n, m) = (g.n(), g.m());
    let constant_columns = |b: &RMatrix| {
        let c0 = b.column(0);
        (1..n).all(|q| b.column(q) == c0)
    };
    if g.blocks.iter().all(constant_columns) {
        let s: Vec<RMatrix> = (0..m)
            .map(|j| {
                let cols: Vec<RVector> = (0..m).map(|i| g.block(i, j).column(0)).collect();
                RMatrix::from_columns(&cols).expect("equal lengths")
            })
            .collect();
        let form = PreserverForm::LiPoon1 { s };
        return (form.to_grid()? == *g).then_some(form);
    }
    let (forms, p) = common_zero_sum_forms(g)?;
    if forms.iter().any(|z| !z.v.is_constant()) {
        return None;
    }
    let r = RMatrix::from_fn(m, m, |j, i| forms[i * m + j].lambda.clone());
    let s = RMatrix::from_fn(m, m, |j, i| forms[i * m + j].v[0].clone());
    let form = PreserverForm::LiPoon2 { r, s, p };
    (form.to_grid()? == *g).then_some(form)
}

// Classifies every block as veᵗ + λP with one P shared by all blocks that
// have λ ≠ 0. Blocks with λ = 0 take the shared P.
fn common_zero_sum_forms(g: &OperatorGrid) -> Option<(Vec<ZeroSumForm>, Permutation)> {
    let n = g.n();
    let mut forms = Vec::with_capacity(g.blocks.len());
    let mut shared: Option<Permutation> = None;
    for b in &g.blocks {
        let z = classify_zero_sum_preserver(&VectorOperator { matrix: b.clone() })?;
        if !z.lambda.is_zero() {
            match &shared {
                Some(p) if *p != z.p => return None,
                Some(_) => {}
                None => shared = Some(z.p.clone()),
            }
        }
        forms.push(z);
    }
    let p = shared.unwrap_or_else(|| Permutation::identity(n));
    for z in forms.iter_mut() {
        if z.lambda.is_zero() {
            z.p = p.clone();
        }
    }
    Some((forms, p))
}

/// Extracts `Φ(X) = Σⱼ (eᵗX⁽ʲ⁾)Sⱼ + PXR` and evaluates the constraint
/// `R = 0 ∨ Σⱼ Sⱼ = evᵗ`.
pub fn extract_cs_preserver_form(g: &OperatorGrid) -> Option<CsForm> {
    let m = g.m();
    let (forms, p) = common_zero_sum_forms(g)?;
    let s: Vec<RMatrix> = (0..m)
        .map(|j| {
            let cols: Vec<RVector> = (0..m).map(|i| forms[i * m + j].v.clone()).collect();
            RMatrix::from_columns(&cols).expect("equal lengths")
        })
        .collect();
    let r = RMatrix::from_fn(m, m, |j, i| forms[i * m + j].lambda.clone());
    let constraint_ok = r.is_zero() || sum_has_constant_columns(&s);
    let form = CsForm { s, p, r, constraint_ok };
    (make_cs_form(&form.s, &form.p, &form.r).ok()? == *g).then_some(form)
}

fn sum_has_constant_columns(s: &[RMatrix]) -> bool {
    let mut total = s[0].clone();
    for x in &s[1..] {
        total = total.add(x).expect("equal shapes");
    }
    (0..total.cols()).all(|j| total.column(j).is_constant())
}

/// Preserves strong majorization on column-stochastic matrices.
pub fn is_cs_preserver(g: &OperatorGrid) -> bool {
    extract_cs_preserver_form(g).is_some_and(|f| f.constraint_ok)
}

pub fn make_ando1(s: &RVector) -> VectorOperator {
    VectorOperator {
        matrix: RMatrix::outer(s, &RVector::ones(s.len())),
    }
}

pub fn make_ando2(alpha: &Rational, beta: &Rational, p: &Permutation) -> VectorOperator {
    let n = p.len();
    VectorOperator {
        matrix: p
            .to_matrix()
            .scale(alpha)
            .add(&RMatrix::ones(n, n).scale(beta))
            .expect("same shape"),
    }
}

pub fn make_zero_sum(v: &RVector, lambda: &Rational, p: &Permutation) -> Result<VectorOperator> {
    if v.len() != p.len() {
        return Err(shape_err(format!("v of length {}", p.len()), format!("{}", v.len())));
    }
    let z = ZeroSumForm {
        v: v.clone(),
        lambda: lambda.clone(),
        p: p.clone(),
        alternate: None,
    };
    Ok(VectorOperator { matrix: z.to_matrix() })
}

fn check_s_list(s: &[RMatrix]) -> Result<(usize, usize)> {
    let m = s.len();
    if m == 0 {
        return Err(Error::Parse("need at least one S matrix".into()));
    }
    let n = s[0].rows();
    for x in s {
        if x.shape() != (n, m) {
            return Err(shape_err(
                format!("{n}x{m} S matrices"),
                format!("{}x{}", x.rows(), x.cols()),
            ));
        }
    }
    Ok((n, m))
}

fn check_square(x: &RMatrix, m: usize, what: &str) -> Result<()> {
    if x.shape() != (m, m) {
        return Err(shape_err(
            format!("{what} of shape {m}x{m}"),
            format!("{}x{}", x.rows(), x.cols()),
        ));
    }
    Ok(())
}

/// `X ↦ Σⱼ (eᵗX⁽ʲ⁾) Sⱼ` with each `Sⱼ` of shape `n × m`.
pub fn make_li_poon1(s: &[RMatrix]) -> Result<OperatorGrid> {
    let (n, m) = check_s_list(s)?;
    let e = RVector::ones(n);
    let mut blocks = Vec::with_capacity(m * m);
    for i in 0..m {
        for sj in s {
            blocks.push(RMatrix::outer(&sj.column(i), &e));
        }
    }
    Ok(OperatorGrid { n, m, blocks })
}

/// `X ↦ PXR + JXS` with `R, S` of shape `m × m`.
pub fn make_li_poon2(p: &Permutation, r: &RMatrix, s: &RMatrix) -> Result<OperatorGrid> {
    let m = r.rows();
    check_square(r, m, "R")?;
    check_square(s, m, "S")?;
    let n = p.len();
    let pm = p.to_matrix();
    let j = RMatrix::ones(n, n);
    let mut blocks = Vec::with_capacity(m * m);
    for i in 0..m {
        for jj in 0..m {
            blocks.push(pm.scale(r.get(jj, i)).add(&j.scale(s.get(jj, i)))?);
        }
    }
    Ok(OperatorGrid { n, m, blocks })
}

/// `X ↦ Σⱼ (eᵗX⁽ʲ⁾) Sⱼ + PXR`.
pub fn make_cs_form(s: &[RMatrix], p: &Permutation, r: &RMatrix) -> Result<OperatorGrid> {
    let (n, m) = check_s_list(s)?;
    check_square(r, m, "R")?;
    if p.len() != n {
        return Err(shape_err(format!("permutation of {n}"), format!("{}", p.len())));
    }
    let e = RVector::ones(n);
    let pm = p.to_matrix();
    let mut blocks = Vec::with_capacity(m * m);
    for i in 0..m {
        for (j, sj) in s.iter().enumerate() {
            blocks.push(RMatrix::outer(&sj.column(i), &e).add(&pm.scale(r.get(j, i)))?);
        }
    }
    Ok(OperatorGrid { n, m, blocks })
}

/// `Φ(X) = (eᵗX⁽¹⁾ - eᵗX⁽²⁾)I + X` on `2 × 2` matrices.
pub fn last_example_operator() -> OperatorGrid {
    let i = RMatrix::identity(2);
    make_cs_form(
        &[i.clone(), i.scale(&Rational::from_integer((-1).into()))],
        &Permutation::identity(2),
        &i,
    )
    .expect("fixed shapes")
}
