//! Dense exact vectors, matrices and permutations.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Signed, Zero};

use crate::error::{shape_err, Error, Result};
use crate::rational::Rational;

/// A column vector of rationals, length at least one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RVector(Vec<Rational>);

impl RVector {
    /// Panics on an empty vector.
    pub fn new(entries: Vec<Rational>) -> Self {
        assert!(!entries.is_empty(), "RVector must have at least one entry");
        RVector(entries)
    }

    pub fn try_new(entries: Vec<Rational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Parse("vector must have at least one entry".into()));
        }
        Ok(RVector(entries))
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        Self::new(entries.iter().map(|&x| crate::rational::int(x)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![Rational::zero(); n])
    }

    /// The all-ones vector `e`.
    pub fn ones(n: usize) -> Self {
        Self::new(vec![Rational::one(); n])
    }

    /// The standard basis vector `e_j` (0-based).
    pub fn basis(n: usize, j: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[j] = Rational::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn sum(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn min(&self) -> Rational {
        self.0.iter().min().cloned().expect("nonempty")
    }

    pub fn max(&self) -> Rational {
        self.0.iter().max().cloned().expect("nonempty")
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    /// All entries equal.
    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|x| *x == self.0[0])
    }

    pub fn is_distribution(&self) -> bool {
        self.is_nonnegative() && self.sum().is_one()
    }

    pub fn is_zero_one(&self) -> bool {
        self.0.iter().all(|x| x.is_zero() || x.is_one())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        RVector(self.0.iter().map(|x| x * s).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(RVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(RVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// Adds `s` to every entry.
    pub fn shift(&self, s: &Rational) -> Self {
        RVector(self.0.iter().map(|x| x + s).collect())
    }

    pub fn dot(&self, other: &Self) -> Result<Rational> {
        self.check_len(other)?;
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b))
    }

    pub fn neg(&self) -> Self {
        RVector(self.0.iter().map(|x| -x).collect())
    }

    /// Returns `v↓` and the permutation `σ` with `σ·v = v↓`.
    ///
    /// The sort is stable: equal entries keep their original relative order.
    pub fn sort_desc(&self) -> (RVector, Permutation) {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&i, &j| self.0[j].cmp(&self.0[i]));
        let sorted = RVector(order.iter().map(|&i| self.0[i].clone()).collect());
        // (σv)_k = v_{order[k]}, i.e. σ sends order[k] to k.
        let mut map = vec![0; self.len()];
        for (k, &i) in order.iter().enumerate() {
            map[i] = k;
        }
        (sorted, Permutation { map })
    }

    /// `v⁺`, the sum of the positive entries.
    pub fn positive_part_sum(&self) -> Rational {
        self.0
            .iter()
            .filter(|x| x.is_positive())
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    /// View as an `n × 1` matrix.
    pub fn to_column_matrix(&self) -> RMatrix {
        RMatrix {
            rows: self.len(),
            cols: 1,
            data: self.0.clone(),
        }
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(shape_err(
                format!("length {}", self.len()),
                format!("length {}", other.len()),
            ));
        }
        Ok(())
    }
}

impl Index<usize> for RVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl IndexMut<usize> for RVector {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.0[i]
    }
}

impl fmt::Display for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Dense row-major `rows × cols` rational matrix, both dimensions at least one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "RMatrix dimensions must be positive");
        RMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    /// The all-ones matrix `J`.
    pub fn ones(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Rational::one())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        assert!(rows > 0 && cols > 0, "RMatrix dimensions must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Parse("matrix must have at least one row".into()));
        }
        let m = rows[0].len();
        if m == 0 {
            return Err(Error::Parse("matrix must have at least one column".into()));
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != m) {
            return Err(shape_err(
                format!("{m} entries in every row"),
                format!("{} entries in row {bad}", rows[bad].len()),
            ));
        }
        Ok(RMatrix {
            rows: n,
            cols: m,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor for integer literals. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| crate::rational::int(x)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[RVector]) -> Result<Self> {
        if cols.is_empty() {
            return Err(Error::Parse("matrix must have at least one column".into()));
        }
        let n = cols[0].len();
        if let Some(bad) = cols.iter().position(|c| c.len() != n) {
            return Err(shape_err(
                format!("columns of length {n}"),
                format!("column {bad} of length {}", cols[bad].len()),
            ));
        }
        Ok(Self::from_fn(n, cols.len(), |i, j| cols[j][i].clone()))
    }

    /// `diag(d)`.
    pub fn diagonal(d: &RVector) -> Self {
        Self::from_fn(
            d.len(),
            d.len(),
            |i, j| {
                if i == j {
                    d[i].clone()
                } else {
                    Rational::zero()
                }
            },
        )
    }

    /// Outer product `u vᵗ`.
    pub fn outer(u: &RVector, v: &RVector) -> Self {
        Self::from_fn(u.len(), v.len(), |i, j| &u[i] * &v[j])
    }

    /// `(rows, cols)`
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> impl Iterator<Item = &Rational> {
        self.data.iter()
    }

    /// The `j`-th column `A⁽ʲ⁾`.
    pub fn column(&self, j: usize) -> RVector {
        RVector::new((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    /// The `i`-th row `A₍ᵢ₎`.
    pub fn row(&self, i: usize) -> RVector {
        RVector::new(self.row_slice(i).to_vec())
    }

    pub fn row_slice(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn columns(&self) -> Vec<RVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row_slice(i).to_vec()).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &RVector) {
        assert_eq!(v.len(), self.rows);
        for i in 0..self.rows {
            self.set(i, j, v[i].clone());
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, s: &Rational) -> Self {
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    /// Adds `s` to every entry (`A + sJ`).
    pub fn shift(&self, s: &Rational) -> Self {
        RMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x + s).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(shape_err(
                format!("{} rows on the right factor", self.cols),
                format!("{}", other.rows),
            ));
        }
        let mut out = RMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &RVector) -> Result<RVector> {
        if self.cols != v.len() {
            return Err(shape_err(
                format!("vector of length {}", self.cols),
                format!("length {}", v.len()),
            ));
        }
        Ok(RVector::new(
            (0..self.rows)
                .map(|i| {
                    self.row_slice(i)
                        .iter()
                        .zip(v.iter())
                        .filter(|(a, _)| !a.is_zero())
                        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        ))
    }

    /// Column sums `eᵗA` as a vector of length `cols`.
    pub fn column_sums(&self) -> RVector {
        RVector::new(
            (0..self.cols)
                .map(|j| (0..self.rows).fold(Rational::zero(), |acc, i| acc + self.get(i, j)))
                .collect(),
        )
    }

    /// Row sums `Ae` as a vector of length `rows`.
    pub fn row_sums(&self) -> RVector {
        RVector::new(
            (0..self.rows)
                .map(|i| self.row_slice(i).iter().fold(Rational::zero(), |acc, x| acc + x))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|x| !x.is_negative())
    }

    pub fn is_zero_one(&self) -> bool {
        self.data.iter().all(|x| x.is_zero() || x.is_one())
    }

    pub fn min_entry(&self) -> Rational {
        self.data.iter().min().cloned().expect("nonempty")
    }

    pub fn max_entry(&self) -> Rational {
        self.data.iter().max().cloned().expect("nonempty")
    }

    /// Nonnegative with every row summing to exactly one.
    pub fn is_row_stochastic(&self) -> bool {
        self.is_nonnegative() && self.row_sums().iter().all(One::is_one)
    }

    /// Nonnegative with every column summing to exactly one.
    pub fn is_column_stochastic(&self) -> bool {
        self.is_nonnegative() && self.column_sums().iter().all(One::is_one)
    }

    pub fn is_doubly_stochastic(&self) -> bool {
        self.is_square() && self.is_row_stochastic() && self.is_column_stochastic()
    }

    /// Right-multiplies by `diag(d)`, i.e. scales column `j` by `d_j`.
    pub fn scale_columns(&self, d: &RVector) -> Result<Self> {
        if d.len() != self.cols {
            return Err(shape_err(format!("{} scales", self.cols), format!("{}", d.len())));
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * &d[j]))
    }

    /// `A + e vᵗ`: adds `v_j` to every entry of column `j`.
    pub fn add_to_columns(&self, v: &RVector) -> Result<Self> {
        if v.len() != self.cols {
            return Err(shape_err(format!("{} offsets", self.cols), format!("{}", v.len())));
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + &v[j]))
    }

    /// Submatrix copy of rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(shape_err(
                format!("{}x{}", self.rows, self.cols),
                format!("{}x{}", other.rows, other.cols),
            ));
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for RMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        self.get(i, j)
    }
}

impl IndexMut<(usize, usize)> for RMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in self.row_slice(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

pub fn is_row_stochastic(a: &RMatrix) -> bool {
    a.is_row_stochastic()
}

pub fn is_column_stochastic(a: &RMatrix) -> bool {
    a.is_column_stochastic()
}

pub fn is_doubly_stochastic(a: &RMatrix) -> bool {
    a.is_doubly_stochastic()
}

pub fn sort_desc(v: &RVector) -> (RVector, Permutation) {
    v.sort_desc()
}

pub fn positive_part_sum(v: &RVector) -> Rational {
    v.positive_part_sum()
}

/// A bijection `σ` of `{0, …, n-1}`.
///
/// Its matrix `P` sends `e_j` to `e_{σ(j)}`, so `(Pv)_{σ(j)} = v_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { map: (0..n).collect() }
    }

    /// `σ(j) = map[j]`. Fails unless `map` is a bijection of `0..len`.
    pub fn from_map(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &x in &map {
            if x >= n || seen[x] {
                return Err(Error::Precondition(format!("{map:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Permutation { map })
    }

    /// The transposition `P_(ij)`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut map: Vec<usize> = (0..n).collect();
        map.swap(i, j);
        Permutation { map }
    }

    /// Recovers `σ` from a permutation matrix.
    pub fn from_matrix(p: &RMatrix) -> Option<Self> {
        if !p.is_square() || !p.is_zero_one() {
            return None;
        }
        let n = p.rows();
        let mut map = Vec::with_capacity(n);
        for j in 0..n {
            let col = p.column(j);
            let ones: Vec<usize> = (0..n).filter(|&i| col[i].is_one()).collect();
            if ones.len() != 1 {
                return None;
            }
            map.push(ones[0]);
        }
        Self::from_map(map).ok()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn image(&self, j: usize) -> usize {
        self.map[j]
    }

    pub fn as_map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut map = vec![0; self.len()];
        for (j, &i) in self.map.iter().enumerate() {
            map[i] = j;
        }
        Permutation { map }
    }

    /// `self ∘ other`; its matrix is `P_self · P_other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        Permutation {
            map: other.map.iter().map(|&j| self.map[j]).collect(),
        }
    }

    pub fn to_matrix(&self) -> RMatrix {
        let n = self.len();
        let mut p = RMatrix::zeros(n, n);
        for (j, &i) in self.map.iter().enumerate() {
            p.set(i, j, Rational::one());
        }
        p
    }

    /// `P v`.
    pub fn apply(&self, v: &RVector) -> RVector {
        assert_eq!(self.len(), v.len());
        let mut out = v.clone();
        for (j, &i) in self.map.iter().enumerate() {
            out[i] = v[j].clone();
        }
        out
    }

    /// `P A`: row `j` of `A` becomes row `σ(j)`.
    pub fn permute_rows(&self, a: &RMatrix) -> RMatrix {
        assert_eq!(self.len(), a.rows());
        RMatrix::from_fn(a.rows(), a.cols(), |i, c| a.get(self.inverse_image(i), c).clone())
    }

    fn inverse_image(&self, i: usize) -> usize {
        self.map.iter().position(|&x| x == i).expect("bijection")
    }

    /// Every permutation of `0..n` in lexicographic order. Only for small `n`.
    pub fn all(n: usize) -> Vec<Self> {
        fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            let n = used.len();
            if prefix.len() == n {
                out.push(Permutation { map: prefix.clone() });
                return;
            }
            for x in 0..n {
                if !used[x] {
                    used[x] = true;
                    prefix.push(x);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[x] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use proptest::prelude::*;

    fn half_j() -> RMatrix {
        RMatrix::ones(2, 2).scale(&frac(1, 2))
    }

    #[test]
    fn stochastic_predicates() {
        assert!(half_j().is_row_stochastic());
        assert!(RMatrix::identity(3).is_row_stochastic());
        assert!(!RMatrix::from_i64(&[&[1, 1], &[0, 0]]).is_row_stochastic());

        let b = RMatrix::from_rows(vec![
            vec![frac(13, 20), frac(7, 20), frac(7, 20), frac(1, 2)],
            vec![frac(7, 20), frac(13, 20), frac(13, 20), frac(1, 2)],
        ])
        .unwrap();
        assert!(b.is_column_stochastic());

        let p = Permutation::from_map(vec![2, 0, 3, 1]).unwrap();
        assert!(p.to_matrix().is_doubly_stochastic());

        let d = RMatrix::from_rows(vec![vec![frac(1, 2), frac(1, 2)], vec![frac(1, 2), frac(1, 4)]]).unwrap();
        assert!(!d.is_doubly_stochastic());
    }

    #[test]
    fn sort_desc_examples() {
        let (s, p) = RVector::from_i64(&[1, 3, 2]).sort_desc();
        assert_eq!(s, RVector::from_i64(&[3, 2, 1]));
        assert_eq!(p.apply(&RVector::from_i64(&[1, 3, 2])), s);

        let (s, p) = RVector::from_i64(&[2, 2, 2]).sort_desc();
        assert_eq!(s, RVector::from_i64(&[2, 2, 2]));
        assert!(p.is_identity());

        // ties keep their order: ones at 1,3 go to 0,1; zeros at 0,2 go to 2,3
        let (s, p) = RVector::from_i64(&[0, 1, 0, 1]).sort_desc();
        assert_eq!(s, RVector::from_i64(&[1, 1, 0, 0]));
        assert_eq!(p.as_map(), &[2, 0, 3, 1]);
    }

    #[test]
    fn positive_part_examples() {
        assert_eq!(RVector::from_i64(&[1, -1]).positive_part_sum(), int(1));
        assert_eq!(RVector::zeros(3).positive_part_sum(), int(0));
        let v = RVector::new(vec![frac(1, 3), frac(-1, 2), frac(1, 6)]);
        assert_eq!(v.positive_part_sum(), frac(1, 2));
    }

    #[test]
    fn permutation_matrix_conventions() {
        let p = Permutation::from_map(vec![1, 2, 0]).unwrap();
        let v = RVector::from_i64(&[10, 20, 30]);
        assert_eq!(p.to_matrix().mul_vec(&v).unwrap(), p.apply(&v));
        let q = Permutation::transposition(3, 0, 2);
        assert_eq!(p.compose(&q).to_matrix(), p.to_matrix().mul(&q.to_matrix()).unwrap());
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(Permutation::from_matrix(&p.to_matrix()), Some(p.clone()));
        let a = RMatrix::from_i64(&[&[1, 2], &[3, 4], &[5, 6]]);
        assert_eq!(p.permute_rows(&a), p.to_matrix().mul(&a).unwrap());
        assert_eq!(Permutation::all(4).len(), 24);
        assert!(Permutation::from_map(vec![0, 0]).is_err());
    }

    fn small_vec() -> impl Strategy<Value = RVector> {
        prop::collection::vec((-20i64..20, 1i64..6), 1..8)
            .prop_map(|v| RVector::new(v.into_iter().map(|(p, q)| frac(p, q)).collect()))
    }

    fn small_matrix() -> impl Strategy<Value = RMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(n, m)| {
            prop::collection::vec(0i64..4, n * m)
                .prop_map(move |v| RMatrix::from_fn(n, m, |i, j| frac(v[i * m + j], 2)))
        })
    }

    proptest! {
        #[test]
        fn sorted_is_nonincreasing_permutation(v in small_vec()) {
            let (s, p) = v.sort_desc();
            for k in 1..s.len() {
                prop_assert!(s[k - 1] >= s[k]);
            }
            prop_assert_eq!(p.apply(&v), s);
        }

        #[test]
        fn positive_part_identity(v in small_vec()) {
            prop_assert_eq!(v.positive_part_sum() - v.neg().positive_part_sum(), v.sum());
        }

        #[test]
        fn doubly_is_row_and_column(a in small_matrix()) {
            prop_assert_eq!(
                a.is_doubly_stochastic(),
                a.is_square() && a.is_row_stochastic() && a.is_column_stochastic()
            );
        }
    }
}
