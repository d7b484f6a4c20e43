//! The `GL(U)`-equivariant operator calculus on `S^k U ⊗ S^d U`.
//!
//! Elements of tensor products are [`TensorElem`]s (sparse, for symbolic
//! checks); for rank work each operator is materialized as a [`QMatrix`]
//! in the tensor-monomial basis of a [`TensorSpace`], built column by
//! column from the generator formulas.
//!
//! On a generator `x^I ⊗ x^J`:
//!
//! - `delta`: `Σ_j ∂_j x^I ⊗ x_j x^J`
//! - `theta`: `Σ_j x_j x^I ⊗ ∂_j x^J`
//! - `xi(i, j)`: multiplication by `x_i ⊗ x_j - x_j ⊗ x_i`
//! - `dop(i, j)`: derivation by `∂_i ⊗ ∂_j - ∂_j ⊗ ∂_i`

use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::{column_span, kernel_in, Ambient, QMatrix, Rational, Subspace};
use crate::symspace::{basis, MonomialBasis, MultiIndex, QPoly, Side};

/// `S^a U ⊗ S^b U` with basis `x^I ⊗ x^J` ordered by
/// `(position of I, position of J)`.
#[derive(Clone, Debug)]
pub struct TensorSpace {
    n: usize,
    left: MonomialBasis,
    right: MonomialBasis,
}

impl TensorSpace {
    pub fn new(n: usize, a: usize, b: usize) -> Self {
        TensorSpace { n, left: basis(n, a), right: basis(n, b) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> usize {
        self.left.d()
    }

    pub fn b(&self) -> usize {
        self.right.d()
    }

    pub fn left(&self) -> &MonomialBasis {
        &self.left
    }

    pub fn right(&self) -> &MonomialBasis {
        &self.right
    }

    pub fn dim(&self) -> usize {
        self.left.len() * self.right.len()
    }

    pub fn ambient(&self) -> Ambient {
        Ambient::Tensor { n: self.n, a: self.a(), b: self.b() }
    }

    pub fn index(&self, i: &MultiIndex, j: &MultiIndex) -> Option<usize> {
        Some(self.left.position(i)? * self.right.len() + self.right.position(j)?)
    }

    pub fn pair(&self, idx: usize) -> (&MultiIndex, &MultiIndex) {
        (self.left.get(idx / self.right.len()), self.right.get(idx % self.right.len()))
    }

    pub fn basis_elem(&self, idx: usize) -> TensorElem {
        let (i, j) = self.pair(idx);
        let mut e = TensorElem::zero(self.n, self.a(), self.b());
        e.add_term(i.clone(), j.clone(), Rational::one());
        e
    }
}

/// A sparse element of `S^a U ⊗ S^b U`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorElem {
    n: usize,
    a: usize,
    b: usize,
    terms: BTreeMap<(MultiIndex, MultiIndex), Rational>,
}

impl TensorElem {
    pub fn zero(n: usize, a: usize, b: usize) -> Self {
        TensorElem { n, a, b, terms: BTreeMap::new() }
    }

    /// `p ⊗ q` for homogeneous primal `p`, `q`.
    pub fn from_polys(p: &QPoly, q: &QPoly, a: usize, b: usize) -> Result<Self> {
        if p.side() != Side::Primal || q.side() != Side::Primal || p.nvars() != q.nvars() {
            return Err(Error::DimensionMismatch("tensor factors must be primal forms in the same variables".into()));
        }
        let mut e = TensorElem::zero(p.nvars() - 1, a, b);
        for (i, x) in p.terms() {
            for (j, y) in q.terms() {
                if i.degree() as usize != a || j.degree() as usize != b {
                    return Err(Error::DegreeMismatch(format!("factor degrees differ from ({a}, {b})")));
                }
                e.add_term(i.clone(), j.clone(), x * y);
            }
        }
        Ok(e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degrees(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(MultiIndex, MultiIndex), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: &MultiIndex, j: &MultiIndex) -> Rational {
        self.terms.get(&(i.clone(), j.clone())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, i: MultiIndex, j: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!((i.degree() as usize, j.degree() as usize), (self.a, self.b));
        use std::collections::btree_map::Entry;
        match self.terms.entry((i, j)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> TensorElem {
        let mut out = TensorElem::zero(self.n, self.a, self.b);
        for ((i, j), x) in &self.terms {
            out.add_term(i.clone(), j.clone(), x * c);
        }
        out
    }

    pub fn coords(&self, space: &TensorSpace) -> Result<Vec<Rational>> {
        if (self.n, self.a, self.b) != (space.n, space.a(), space.b()) {
            return Err(Error::DimensionMismatch(format!(
                "element of S^{} ⊗ S^{} (n={}) in S^{} ⊗ S^{} (n={})",
                self.a,
                self.b,
                self.n,
                space.a(),
                space.b(),
                space.n
            )));
        }
        let mut v = vec![Rational::zero(); space.dim()];
        for ((i, j), c) in &self.terms {
            v[space.index(i, j).expect("term degrees match the space")] = c.clone();
        }
        Ok(v)
    }

    pub fn from_coords(space: &TensorSpace, v: &[Rational]) -> TensorElem {
        let mut e = TensorElem::zero(space.n, space.a(), space.b());
        for (idx, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let (i, j) = space.pair(idx);
                e.add_term(i.clone(), j.clone(), c.clone());
            }
        }
        e
    }

    fn same_space(&self, other: &TensorElem) {
        assert_eq!((self.n, self.a, self.b), (other.n, other.a, other.b), "tensor elements from different spaces");
    }
}

impl Add for &TensorElem {
    type Output = TensorElem;
    fn add(self, rhs: &TensorElem) -> TensorElem {
        self.same_space(rhs);
        let mut out = self.clone();
        for ((i, j), c) in &rhs.terms {
            out.add_term(i.clone(), j.clone(), c.clone());
        }
        out
    }
}

impl Sub for &TensorElem {
    type Output = TensorElem;
    fn sub(self, rhs: &TensorElem) -> TensorElem {
        self + &rhs.scale(&-Rational::one())
    }
}

fn int(c: u32) -> Rational {
    Rational::from_integer(BigInt::from(c))
}

fn factorial_ratio(d: usize, k: usize) -> Rational {
    // d! / (d+k)!
    let den: BigInt = ((d + 1)..=(d + k)).map(BigInt::from).product();
    Rational::new(BigInt::one(), den)
}

/// `p_k(q) = d!/(d+k)! Σ_{|I|=k} C(k; I) x^I ⊗ ∂^I q` where `deg q = d + k`.
pub fn polarize(q: &QPoly, k: usize) -> Result<TensorElem> {
    let deg = q
        .homogeneous_degree()
        .ok_or_else(|| Error::DegreeMismatch("polarization needs a nonzero homogeneous form".into()))?;
    polarize_in(q, k, deg as usize)
}

/// [`polarize`] with the degree of `q` given, so that zero is allowed.
pub fn polarize_in(q: &QPoly, k: usize, deg: usize) -> Result<TensorElem> {
    if q.side() != Side::Primal {
        return Err(Error::DimensionMismatch("polarization acts on primal forms".into()));
    }
    if deg < k {
        return Err(Error::DegreeMismatch(format!("p_{k} of a form of degree {deg}")));
    }
    if q.terms().any(|(m, _)| m.degree() as usize != deg) {
        return Err(Error::DegreeMismatch(format!("form is not homogeneous of degree {deg}")));
    }
    let n = q.nvars() - 1;
    let d = deg - k;
    let scale = factorial_ratio(d, k);
    let mut out = TensorElem::zero(n, k, d);
    for i in basis(n, k).iter() {
        let w = &scale * Rational::from_integer(i.multinomial());
        for (j, c) in q.derive_multi(i).terms() {
            out.add_term(i.clone(), j.clone(), &w * c);
        }
    }
    Ok(out)
}

pub fn delta(e: &TensorElem) -> Result<TensorElem> {
    if e.a == 0 {
        return Err(Error::DegreeMismatch("delta needs a left factor of positive degree".into()));
    }
    let mut out = TensorElem::zero(e.n, e.a - 1, e.b + 1);
    for ((i, j), c) in &e.terms {
        for v in 0..=e.n {
            if let Some(i2) = i.dec(v) {
                out.add_term(i2, j.inc(v), c * int(i.exponents()[v]));
            }
        }
    }
    Ok(out)
}

pub fn theta(e: &TensorElem) -> Result<TensorElem> {
    if e.b == 0 {
        return Err(Error::DegreeMismatch("theta needs a right factor of positive degree".into()));
    }
    let mut out = TensorElem::zero(e.n, e.a + 1, e.b - 1);
    for ((i, j), c) in &e.terms {
        for v in 0..=e.n {
            if let Some(j2) = j.dec(v) {
                out.add_term(i.inc(v), j2, c * int(j.exponents()[v]));
            }
        }
    }
    Ok(out)
}

fn check_pair(i: usize, j: usize, n: usize) -> Result<()> {
    if i >= j || j > n {
        return Err(Error::IndexOutOfRange(format!("index pair ({i}, {j}) needs i < j <= {n}")));
    }
    Ok(())
}

/// Multiplication by `x_i ⊗ x_j - x_j ⊗ x_i`.
pub fn xi(i: usize, j: usize, e: &TensorElem) -> Result<TensorElem> {
    check_pair(i, j, e.n)?;
    let mut out = TensorElem::zero(e.n, e.a + 1, e.b + 1);
    for ((l, r), c) in &e.terms {
        out.add_term(l.inc(i), r.inc(j), c.clone());
        out.add_term(l.inc(j), r.inc(i), -c);
    }
    Ok(out)
}

/// Derivation by `∂_i ⊗ ∂_j - ∂_j ⊗ ∂_i`.
pub fn dop(i: usize, j: usize, e: &TensorElem) -> Result<TensorElem> {
    check_pair(i, j, e.n)?;
    if e.a == 0 || e.b == 0 {
        return Err(Error::DegreeMismatch("D_{i,j} needs both factors of positive degree".into()));
    }
    let mut out = TensorElem::zero(e.n, e.a - 1, e.b - 1);
    for ((l, r), c) in &e.terms {
        if let (Some(l2), Some(r2)) = (l.dec(i), r.dec(j)) {
            out.add_term(l2, r2, c * int(l.exponents()[i] * r.exponents()[j]));
        }
        if let (Some(l2), Some(r2)) = (l.dec(j), r.dec(i)) {
            out.add_term(l2, r2, -(c * int(l.exponents()[j] * r.exponents()[i])));
        }
    }
    Ok(out)
}

/// Matrix of a linear map between tensor spaces, one column per source
/// basis element.
pub fn operator_matrix(
    src: &TensorSpace,
    tgt: &TensorSpace,
    f: impl Fn(&TensorElem) -> Result<TensorElem>,
) -> Result<QMatrix> {
    let columns = (0..src.dim()).map(|c| f(&src.basis_elem(c))?.coords(tgt)).collect::<Result<Vec<_>>>()?;
    QMatrix::from_columns(tgt.dim(), columns)
}

/// All pairs `i < j` of variable indices.
pub fn index_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..=n).flat_map(|i| ((i + 1)..=n).map(move |j| (i, j))).collect()
}

/// Matrix of `p_k: S^{d+k} U -> S^k U ⊗ S^d U`.
pub fn polarize_matrix(n: usize, k: usize, d: usize) -> Result<QMatrix> {
    let src = basis(n, d + k);
    let tgt = TensorSpace::new(n, k, d);
    let columns = src
        .iter()
        .map(|m| polarize_in(&QPoly::monomial(Side::Primal, m.clone(), Rational::one()), k, d + k)?.coords(&tgt))
        .collect::<Result<Vec<_>>>()?;
    QMatrix::from_columns(tgt.dim(), columns)
}

/// Image `p_k(S^{d+k} U)`.
pub fn polarization_image(n: usize, k: usize, d: usize) -> Result<Subspace> {
    Ok(column_span(&polarize_matrix(n, k, d)?, TensorSpace::new(n, k, d).ambient()))
}

/// Matrix of `D_{i,j}: S^k U ⊗ S^d U -> S^{k-1} U ⊗ S^{d-1} U`.
pub fn dop_matrix(n: usize, i: usize, j: usize, k: usize, d: usize) -> Result<QMatrix> {
    if k == 0 || d == 0 {
        return Err(Error::DegreeMismatch("D_{i,j} needs both factors of positive degree".into()));
    }
    operator_matrix(&TensorSpace::new(n, k, d), &TensorSpace::new(n, k - 1, d - 1), |e| dop(i, j, e))
}

/// Matrix of `ξ_{i,j}: S^k U ⊗ S^d U -> S^{k+1} U ⊗ S^{d+1} U`.
pub fn xi_matrix(n: usize, i: usize, j: usize, k: usize, d: usize) -> Result<QMatrix> {
    operator_matrix(&TensorSpace::new(n, k, d), &TensorSpace::new(n, k + 1, d + 1), |e| xi(i, j, e))
}

/// Matrix of `ψ_{k,t}: U ⊗ S^t U -> S^k U ⊗ S^{t-k+1} U`,
/// `x_j ⊗ q ↦ (1 ⊗ x_j) · p_k(q)`.
pub fn psi_matrix(n: usize, k: usize, t: usize) -> Result<QMatrix> {
    if k == 0 || t < k {
        return Err(Error::DegreeMismatch(format!("psi_{{{k},{t}}} needs 1 <= k <= t")));
    }
    let src = TensorSpace::new(n, 1, t);
    let tgt = TensorSpace::new(n, k, t - k + 1);
    let columns = (0..src.dim())
        .map(|c| {
            let (l, r) = src.pair(c);
            let j = l.support().next().expect("degree-one multi-index");
            let p = polarize_in(&QPoly::monomial(Side::Primal, r.clone(), Rational::one()), k, t)?;
            let mut out = TensorElem::zero(n, k, t - k + 1);
            for ((a, b), x) in p.terms() {
                out.add_term(a.clone(), b.inc(j), x.clone());
            }
            out.coords(&tgt)
        })
        .collect::<Result<Vec<_>>>()?;
    QMatrix::from_columns(tgt.dim(), columns)
}

/// `Im ψ_{k,t}` inside `S^k U ⊗ S^{t-k+1} U`.
pub fn psi_image(n: usize, k: usize, t: usize) -> Result<Subspace> {
    let m = psi_matrix(n, k, t)?;
    Ok(column_span(&m, TensorSpace::new(n, k, t - k + 1).ambient()))
}

/// `⋂_{i<j} ker D_{i,j}` on `S^k U ⊗ S^d U`; the whole space when `k = 0`
/// or `d = 0`.
pub fn ker_d(k: usize, d: usize, n: usize) -> Result<Subspace> {
    let space = TensorSpace::new(n, k, d);
    if k == 0 || d == 0 {
        return Ok(Subspace::full(space.ambient(), space.dim()));
    }
    let mut stacked = QMatrix::zeros(0, space.dim());
    for (i, j) in index_pairs(n) {
        stacked = stacked.vstack(&dop_matrix(n, i, j, k, d)?)?;
    }
    Ok(kernel_in(&stacked, space.ambient()))
}

/// `⋂ ker(D_{i,j} ∘ D_{r,s})` on `S^k U ⊗ S^d U`; the whole space when
/// `k < 2` or `d < 2`, where every composite is zero.
pub fn ker_dd(k: usize, d: usize, n: usize) -> Result<Subspace> {
    let space = TensorSpace::new(n, k, d);
    if k < 2 || d < 2 {
        return Ok(Subspace::full(space.ambient(), space.dim()));
    }
    let pairs = index_pairs(n);
    let outer: Vec<QMatrix> = pairs.iter().map(|&(i, j)| dop_matrix(n, i, j, k, d)).collect::<Result<_>>()?;
    let inner: Vec<QMatrix> = pairs.iter().map(|&(i, j)| dop_matrix(n, i, j, k - 1, d - 1)).collect::<Result<_>>()?;
    // the D_{i,j} commute, so unordered pairs of pairs are enough
    let mut stacked = QMatrix::zeros(0, space.dim());
    for (p, o) in outer.iter().enumerate() {
        for i in &inner[p..] {
            stacked = stacked.vstack(&i.mul(o)?)?;
        }
    }
    Ok(kernel_in(&stacked, space.ambient()))
}

/// The Pieri summand `A_t = Σ ξ⋯ξ p_{k-t}(S^{d+k-2t} U)` (`t` factors of
/// `ξ`) inside `S^k U ⊗ S^d U`.
pub fn pieri_summand(t: usize, k: usize, d: usize, n: usize) -> Result<Subspace> {
    if t > k {
        return Err(Error::DegreeMismatch(format!("summand A_{t} of S^{k} ⊗ S^{d}")));
    }
    let space = TensorSpace::new(n, k, d);
    if t > d {
        return Ok(Subspace::zero(space.ambient(), space.dim()));
    }
    let mut current = polarization_image(n, k - t, d - t)?;
    for step in 0..t {
        let (a, b) = (k - t + step, d - t + step);
        let ambient = Ambient::Tensor { n, a: a + 1, b: b + 1 };
        let mut images = QMatrix::zeros(0, TensorSpace::new(n, a + 1, b + 1).dim());
        for (i, j) in index_pairs(n) {
            let m = xi_matrix(n, i, j, a, b)?;
            images = images.vstack(&current.basis().mul(&m.transpose())?)?;
        }
        current = Subspace::from_matrix_rows(ambient, &images);
    }
    Ok(current)
}

/// Coordinates of the forms of a subspace as polynomials.
pub fn subspace_polys(s: &Subspace) -> Result<Vec<QPoly>> {
    let (n, d, side) = sym_params(s)?;
    let b = basis(n, d);
    Ok(s.vectors().map(|v| QPoly::from_coords(&b, side, v)).collect())
}

/// Span of homogeneous forms of degree `d` in `n + 1` variables.
pub fn span_of_polys(n: usize, d: usize, side: Side, polys: &[QPoly]) -> Result<Subspace> {
    let b = basis(n, d);
    let vectors = polys
        .iter()
        .map(|p| {
            if p.side() != side {
                return Err(Error::DimensionMismatch("forms on mixed sides".into()));
            }
            p.coords(&b)
        })
        .collect::<Result<Vec<_>>>()?;
    Subspace::from_spanning(sym_ambient(n, d, side), b.len(), vectors)
}

pub fn sym_ambient(n: usize, d: usize, side: Side) -> Ambient {
    match side {
        Side::Primal => Ambient::Sym { n, d },
        Side::Dual => Ambient::Dual { n, d },
    }
}

fn sym_params(s: &Subspace) -> Result<(usize, usize, Side)> {
    match s.ambient() {
        Ambient::Sym { n, d } => Ok((n, d, Side::Primal)),
        Ambient::Dual { n, d } => Ok((n, d, Side::Dual)),
        other => Err(Error::DimensionMismatch(format!("expected a space of forms, got {other:?}"))),
    }
}

/// `∂T = Σ_j ∂_j T ⊂ S^{d-1} U`.
pub fn partial_t(t: &Subspace) -> Result<Subspace> {
    let (n, d, side) = sym_params(t)?;
    if d == 0 {
        return Err(Error::DegreeMismatch("∂T of constants".into()));
    }
    let tgt = basis(n, d - 1);
    let mut vectors = Vec::new();
    for p in subspace_polys(t)? {
        for j in 0..=n {
            vectors.push(p.derive(j)?.coords(&tgt)?);
        }
    }
    Subspace::from_spanning(sym_ambient(n, d - 1, side), tgt.len(), vectors)
}

/// `∂^{-1}T = {q : ∂_j q ∈ T for all j}`, one degree up.
fn inv_partial_step(t: &Subspace) -> Result<Subspace> {
    let (n, d, side) = sym_params(t)?;
    let src = basis(n, d + 1);
    let tgt = basis(n, d);
    let columns = src
        .iter()
        .map(|m| {
            let q = QPoly::monomial(side, m.clone(), Rational::one());
            let mut col = Vec::with_capacity((n + 1) * tgt.len());
            for j in 0..=n {
                col.extend(t.residue(&q.derive(j)?.coords(&tgt)?)?);
            }
            Ok(col)
        })
        .collect::<Result<Vec<_>>>()?;
    let m = QMatrix::from_columns((n + 1) * tgt.len(), columns)?;
    Ok(kernel_in(&m, sym_ambient(n, d + 1, side)))
}

/// `∂^{-t}T ⊂ S^{d+t} U`, by `t` successive one-step preimages.
pub fn inv_partial_t(t_space: &Subspace, t: usize) -> Result<Subspace> {
    sym_params(t_space)?;
    let mut current = t_space.clone();
    for _ in 0..t {
        current = inv_partial_step(&current)?;
    }
    Ok(current)
}

/// `∂^{-t}T` through the dual description `(T^perp · S^t U^vee)^perp`.
pub fn inv_partial_t_dual(t_space: &Subspace, t: usize) -> Result<Subspace> {
    perp(&multiple_span(&perp(t_space)?, t)?)
}

/// Annihilator under the apolarity pairing; swaps primal and dual sides.
pub fn perp(s: &Subspace) -> Result<Subspace> {
    let (n, d, side) = sym_params(s)?;
    let b = basis(n, d);
    let weights: Vec<Rational> = b.iter().map(|m| Rational::from_integer(m.factorial())).collect();
    let m = QMatrix::from_fn(s.dim(), b.len(), |i, j| s.basis().get(i, j) * &weights[j]);
    let other = match side {
        Side::Primal => Side::Dual,
        Side::Dual => Side::Primal,
    };
    Ok(kernel_in(&m, sym_ambient(n, d, other)))
}

/// `A · S^t` for a space of forms `A`: all products with monomials of degree `t`.
pub fn multiple_span(a: &Subspace, t: usize) -> Result<Subspace> {
    let (n, d, side) = sym_params(a)?;
    let tgt = basis(n, d + t);
    let monos = basis(n, t);
    let mut vectors = Vec::new();
    for p in subspace_polys(a)? {
        for m in monos.iter() {
            vectors.push(p.multiply(&QPoly::monomial(side, m.clone(), Rational::one()))?.coords(&tgt)?);
        }
    }
    Subspace::from_spanning(sym_ambient(n, d + t, side), tgt.len(), vectors)
}

/// `S^c U ⊗ T` inside `S^c U ⊗ S^d U`.
pub fn embed_tensor_t(c: usize, t: &Subspace) -> Result<Subspace> {
    let (n, d, side) = sym_params(t)?;
    if side != Side::Primal {
        return Err(Error::DimensionMismatch("S^c U ⊗ T needs T ⊂ S^d U".into()));
    }
    let space = TensorSpace::new(n, c, d);
    let right = space.right().len();
    let mut vectors = Vec::with_capacity(space.left().len() * t.dim());
    for pos in 0..space.left().len() {
        for v in t.vectors() {
            let mut w = vec![Rational::zero(); space.dim()];
            w[pos * right..(pos + 1) * right].clone_from_slice(v);
            vectors.push(w);
        }
    }
    Subspace::from_spanning(space.ambient(), space.dim(), vectors)
}
