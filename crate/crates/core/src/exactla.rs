//! Dense exact linear algebra over `Q`.
//!
//! Row reduction runs on integer rows (denominators cleared, each row kept
//! primitive). It is first attempted in `i128` with checked arithmetic and
//! rerun on `BigInt` only if an intermediate value overflows, so results are
//! exact either way.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Names the space a [`Subspace`] lives in, together with its coordinate
/// convention. Only subspaces with equal tags can be compared or combined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ambient {
    /// Bare `Q^m` with the standard basis.
    Plain,
    /// `S^d U` in the monomial basis of [`crate::symspace::basis`].
    Sym { n: usize, d: usize },
    /// `S^d U^vee` in the monomial basis of derivatives.
    Dual { n: usize, d: usize },
    /// `S^a U ⊗ S^b U` in the tensor-monomial basis of
    /// [`crate::operators::TensorSpace`].
    Tensor { n: usize, a: usize, b: usize },
}

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMatrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors, all of which must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!("row {i} has length {}, expected {cols}", row.len())));
            }
            data.extend(row);
        }
        Ok(QMatrix { rows: nrows, cols, data })
    }

    pub fn from_i64_rows(cols: usize, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: Vec<Vec<Rational>>) -> Result<Self> {
        Ok(Self::from_rows(rows, columns)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!("stacking {} columns on {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(QMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    /// Reduced row echelon form and its pivot columns. Zero rows are dropped.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        rref(self)
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

trait ElimInt: Clone + Sized {
    fn is_zero(&self) -> bool;
    /// Pivot preference; smaller is better.
    fn size_key(&self) -> u128;
    /// `a*x - b*y`, or `None` on overflow.
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd_with(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_unit(&self) -> bool;
    fn to_bigint(&self) -> BigInt;
}

impl ElimInt for i128 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn size_key(&self) -> u128 {
        self.unsigned_abs()
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd_with(&self, other: &Self) -> Self {
        self.gcd(other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ElimInt for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn size_key(&self) -> u128 {
        self.bits() as u128
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd_with(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

fn make_primitive<I: ElimInt>(row: &mut [I]) {
    let mut g: Option<I> = None;
    for x in row.iter().filter(|x| !x.is_zero()) {
        g = Some(match g {
            None => x.gcd_with(x),
            Some(g) => g.gcd_with(x),
        });
        if g.as_ref().is_some_and(ElimInt::is_unit) {
            return;
        }
    }
    if let Some(g) = g {
        for x in row.iter_mut().filter(|x| !x.is_zero()) {
            *x = x.div_exact(&g);
        }
    }
}

/// Integer Gauss(-Jordan) elimination. Returns the nonzero rows of the
/// echelon form and their pivot columns, or `None` on overflow.
fn eliminate<I: ElimInt>(mut rows: Vec<Vec<I>>, cols: usize, jordan: bool) -> Option<(Vec<Vec<I>>, Vec<usize>)> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let best = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).min_by_key(|&i| rows[i][c].size_key());
        let Some(p) = best else { continue };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, rest) = tail.split_first_mut().expect("pivot row exists");
        let pv = pivot_row[c].clone();
        let head_len = if jordan { head.len() } else { 0 };
        for row in rest.iter_mut().chain(head[..head_len].iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let g = pv.gcd_with(&row[c]);
            let a = pv.div_exact(&g);
            let b = row[c].div_exact(&g);
            for j in 0..cols {
                if pivot_row[j].is_zero() && row[j].is_zero() {
                    continue;
                }
                row[j] = I::mul_sub(&a, &row[j], &b, &pivot_row[j])?;
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Some((rows, pivots))
}

fn integer_rows(m: &QMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().filter(|x| !x.is_zero()).fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let mut out: Vec<BigInt> = row.iter().map(|x| (x * &lcm).to_integer()).collect();
            make_primitive(&mut out);
            out
        })
        .collect()
}

fn run_elimination(m: &QMatrix, jordan: bool) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let big = integer_rows(m);
    let small: Option<Vec<Vec<i128>>> = big.iter().map(|row| row.iter().map(ToPrimitive::to_i128).collect()).collect();
    if let Some(small) = small {
        if let Some((rows, piv)) = eliminate(small, m.cols, jordan) {
            return (rows.iter().map(|r| r.iter().map(ElimInt::to_bigint).collect()).collect(), piv);
        }
    }
    eliminate(big, m.cols, jordan).expect("BigInt elimination cannot overflow")
}

/// Rank over `Q`.
pub fn rank(m: &QMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    run_elimination(m, false).1.len()
}

/// Reduced row echelon form with pivot columns; zero rows removed.
pub fn rref(m: &QMatrix) -> (QMatrix, Vec<usize>) {
    if m.rows == 0 || m.cols == 0 {
        return (QMatrix::zeros(0, m.cols), Vec::new());
    }
    let (rows, pivots) = run_elimination(m, true);
    let data = rows
        .iter()
        .zip(&pivots)
        .flat_map(|(row, &p)| {
            let pv = row[p].clone();
            row.iter().map(move |x| Rational::new(x.clone(), pv.clone()))
        })
        .collect();
    (QMatrix { rows: rows.len(), cols: m.cols, data }, pivots)
}

/// Basis of `{v : m v = 0}` as a subspace of `Q^cols`, in canonical form.
pub fn kernel_basis(m: &QMatrix) -> Subspace {
    kernel_in(m, Ambient::Plain)
}

/// Like [`kernel_basis`], tagging the result with the given ambient.
pub fn kernel_in(m: &QMatrix, ambient: Ambient) -> Subspace {
    let cols = m.cols;
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors: Vec<Vec<Rational>> = (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                let e = r.get(i, f);
                if !e.is_zero() {
                    v[p] = -e.clone();
                }
            }
            v
        })
        .collect();
    Subspace::from_spanning(ambient, cols, vectors).expect("kernel vectors have the right length")
}

/// Column span of `m`, as a subspace of `Q^rows`.
pub fn column_span(m: &QMatrix, ambient: Ambient) -> Subspace {
    Subspace::from_matrix_rows(ambient, &m.transpose())
}

/// A linear subspace held as the reduced row echelon basis of its span.
///
/// Because the basis is canonical, two subspaces are equal exactly when
/// their `Subspace` values compare equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: Ambient,
    basis: QMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: Ambient, ambient_dim: usize) -> Self {
        Subspace { ambient, basis: QMatrix::zeros(0, ambient_dim), pivots: Vec::new() }
    }

    pub fn full(ambient: Ambient, ambient_dim: usize) -> Self {
        Subspace { ambient, basis: QMatrix::identity(ambient_dim), pivots: (0..ambient_dim).collect() }
    }

    pub fn from_spanning(ambient: Ambient, ambient_dim: usize, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        let m = QMatrix::from_rows(ambient_dim, vectors)?;
        Ok(Self::from_matrix_rows(ambient, &m))
    }

    /// Row span of `m`.
    pub fn from_matrix_rows(ambient: Ambient, m: &QMatrix) -> Self {
        let (basis, pivots) = rref(m);
        Subspace { ambient, basis, pivots }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[Rational]> {
        (0..self.dim()).map(move |i| self.basis.row(i))
    }

    pub fn relabel(mut self, ambient: Ambient) -> Self {
        self.ambient = ambient;
        self
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient || self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "{:?} (dim {}) vs {:?} (dim {})",
                self.ambient,
                self.ambient_dim(),
                other.ambient,
                other.ambient_dim()
            )));
        }
        Ok(())
    }

    /// Reduces `v` modulo the subspace; the result vanishes on every pivot
    /// column and is zero exactly when `v` lies in the subspace.
    pub fn residue(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a space of dimension {}",
                v.len(),
                self.ambient_dim()
            )));
        }
        let mut w = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if w[p].is_zero() {
                continue;
            }
            let c = w[p].clone();
            for (x, b) in w.iter_mut().zip(self.basis.row(i)) {
                if !b.is_zero() {
                    *x -= &c * b;
                }
            }
        }
        Ok(w)
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        Ok(self.residue(v)?.iter().all(Zero::is_zero))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        for v in self.vectors() {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(Subspace::from_matrix_rows(self.ambient, &self.basis.vstack(&other.basis)?))
    }

    /// Equations cutting out the subspace: a basis of its orthogonal
    /// complement under the standard dot product.
    pub fn equations(&self) -> Subspace {
        kernel_in(&self.basis, self.ambient)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let eqs = self.equations().basis.vstack(&other.equations().basis)?;
        Ok(kernel_in(&eqs, self.ambient))
    }

    /// `dim(a ∩ b)` through the Grassmann formula, without building a basis.
    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize> {
        self.check_compatible(other)?;
        let joint = rank(&self.basis.vstack(&other.basis)?);
        Ok(self.dim() + other.dim() - joint)
    }
}
