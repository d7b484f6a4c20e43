//! Sparse polynomials over `Q` in the variables `x_0..x_n` (elements of
//! `S^• U`) or in the derivations `∂_0..∂_n` (elements of `S^• U^vee`).
//!
//! The apolarity pairing is normalized by `<x^I, ∂^J> = I! δ_{I,J}`, i.e. a
//! dual monomial acts on a primal one as the corresponding differential
//! operator. With this choice `q(l^d) = d! q(a_0, ..., a_n)` for a linear
//! form `l = Σ a_j x_j`, multiplication by a dual form is adjoint to
//! contraction, and every other module relies on it.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactla::Rational;

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimension of `S^m U` for `dim U = n + 1`; zero for negative `m`.
pub fn sym_dim(n: usize, m: i64) -> usize {
    if m < 0 {
        0
    } else {
        binomial(m as u64 + n as u64, n as u64) as usize
    }
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Exponent vector `(i_0, ..., i_n)` of the monomial `x^I`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(nvars: usize) -> Self {
        MultiIndex(vec![0; nvars])
    }

    pub fn unit(nvars: usize, j: usize) -> Self {
        let mut e = vec![0; nvars];
        e[j] = 1;
        MultiIndex(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(MultiIndex)
    }

    /// `I + 1_j`.
    pub fn inc(&self, j: usize) -> MultiIndex {
        let mut e = self.0.clone();
        e[j] += 1;
        MultiIndex(e)
    }

    /// `I - 1_j`, if `i_j >= 1`.
    pub fn dec(&self, j: usize) -> Option<MultiIndex> {
        if self.0[j] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[j] -= 1;
        Some(MultiIndex(e))
    }

    /// `I! = i_0! ... i_n!`.
    pub fn factorial(&self) -> BigInt {
        self.0.iter().map(|&e| factorial(e)).product()
    }

    /// `|I|! / I!`.
    pub fn multinomial(&self) -> BigInt {
        factorial(self.degree()) / self.factorial()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(j, _)| j)
    }

    /// Degree-lexicographic descending: higher degree first, then
    /// lexicographically larger exponent tuples first.
    pub fn deglex_desc(&self, other: &MultiIndex) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Ordered monomial basis of `S^d U`, degree-lexicographic descending:
/// `x_0^d, x_0^{d-1} x_1, ..., x_n^d`. Fixes the coordinates of every
/// matrix and subspace in the crate.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    n: usize,
    d: usize,
    order: Vec<MultiIndex>,
    index: HashMap<MultiIndex, usize>,
}

fn push_exponents(nvars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
    if prefix.len() + 1 == nvars {
        prefix.push(d);
        out.push(MultiIndex(prefix.clone()));
        prefix.pop();
        return;
    }
    for e in (0..=d).rev() {
        prefix.push(e);
        push_exponents(nvars, d - e, prefix, out);
        prefix.pop();
    }
}

pub fn basis(n: usize, d: usize) -> MonomialBasis {
    let mut order = Vec::with_capacity(sym_dim(n, d as i64));
    push_exponents(n + 1, d as u32, &mut Vec::with_capacity(n + 1), &mut order);
    let index = order.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    MonomialBasis { n, d, order, index }
}

impl MonomialBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn get(&self, i: usize) -> &MultiIndex {
        &self.order[i]
    }

    pub fn position(&self, m: &MultiIndex) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &MultiIndex> {
        self.order.iter()
    }
}

/// Whether a polynomial lives in `S^• U` (variables `x_j`) or in
/// `S^• U^vee` (derivations `∂_j`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Primal,
    Dual,
}

#[derive(Clone, PartialEq, Eq)]
pub struct QPoly {
    nvars: usize,
    side: Side,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl QPoly {
    pub fn zero(nvars: usize, side: Side) -> Self {
        QPoly { nvars, side, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, side: Side, c: Rational) -> Self {
        Self::monomial(side, MultiIndex::zero(nvars), c)
    }

    pub fn one(nvars: usize, side: Side) -> Self {
        Self::constant(nvars, side, Rational::one())
    }

    pub fn monomial(side: Side, m: MultiIndex, c: Rational) -> Self {
        let mut p = QPoly::zero(m.nvars(), side);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The variable `x_j` (or `∂_j` on the dual side).
    pub fn var(nvars: usize, side: Side, j: usize) -> Self {
        Self::monomial(side, MultiIndex::unit(nvars, j), Rational::one())
    }

    /// Sums the given terms; zero coefficients are dropped.
    pub fn from_terms(nvars: usize, side: Side, terms: impl IntoIterator<Item = (MultiIndex, Rational)>) -> Self {
        let mut p = QPoly::zero(nvars, side);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "multi-index length must equal nvars");
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
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

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &MultiIndex) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    /// The common degree of all terms; `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(MultiIndex::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Degree in the single variable `j`.
    pub fn degree_in(&self, j: usize) -> u32 {
        self.terms.keys().map(|m| m.exponents()[j]).max().unwrap_or(0)
    }

    /// Leading term in degree-lexicographic descending order.
    pub fn leading_term(&self) -> Option<(&MultiIndex, &Rational)> {
        self.terms.iter().min_by(|a, b| a.0.deglex_desc(b.0))
    }

    /// Reinterprets the coefficients on the other side: `x^I <-> ∂^I`.
    pub fn with_side(&self, side: Side) -> QPoly {
        QPoly { nvars: self.nvars, side, terms: self.terms.clone() }
    }

    pub fn scale(&self, c: &Rational) -> QPoly {
        if c.is_zero() {
            return QPoly::zero(self.nvars, self.side);
        }
        QPoly {
            nvars: self.nvars,
            side: self.side,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    fn check_same_ring(&self, other: &QPoly) -> Result<()> {
        if self.nvars != other.nvars || self.side != other.side {
            return Err(Error::DimensionMismatch(format!(
                "polynomials over ({}, {:?}) and ({}, {:?})",
                self.nvars, self.side, other.nvars, other.side
            )));
        }
        Ok(())
    }

    pub fn multiply(&self, other: &QPoly) -> Result<QPoly> {
        self.check_same_ring(other)?;
        let mut out = QPoly::zero(self.nvars, self.side);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.add(b), x * y);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> QPoly {
        (0..e).fold(QPoly::one(self.nvars, self.side), |acc, _| &acc * self)
    }

    /// Formal partial derivative in the `j`-th variable.
    pub fn derive(&self, j: usize) -> Result<QPoly> {
        if j >= self.nvars {
            return Err(Error::IndexOutOfRange(format!("variable {j} of {}", self.nvars)));
        }
        Ok(QPoly::from_terms(
            self.nvars,
            self.side,
            self.terms
                .iter()
                .filter_map(|(m, c)| m.dec(j).map(|m2| (m2, c * Rational::from_integer(m.exponents()[j].into())))),
        ))
    }

    /// `∂^I` applied to `self` (primal).
    pub fn derive_multi(&self, by: &MultiIndex) -> QPoly {
        QPoly::from_terms(
            self.nvars,
            self.side,
            self.terms.iter().filter_map(|(m, c)| {
                let rest = m.checked_sub(by)?;
                let falling = m.factorial() / rest.factorial();
                Some((rest, c * Rational::from_integer(falling)))
            }),
        )
    }

    /// Coefficient vector in `b`'s ordering.
    pub fn coords(&self, b: &MonomialBasis) -> Result<Vec<Rational>> {
        if self.nvars != b.n() + 1 {
            return Err(Error::DimensionMismatch(format!("{} variables against basis of P^{}", self.nvars, b.n())));
        }
        let mut v = vec![Rational::zero(); b.len()];
        for (m, c) in &self.terms {
            let i = b.position(m).ok_or_else(|| {
                Error::DegreeMismatch(format!("term of degree {} in a basis of degree {}", m.degree(), b.d()))
            })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn from_coords(b: &MonomialBasis, side: Side, v: &[Rational]) -> QPoly {
        QPoly::from_terms(b.n() + 1, side, b.iter().cloned().zip(v.iter().cloned()))
    }
}

/// Contraction `S^i U^vee ⊗ S^j U -> S^{j-i} U`: the dual form `g` acting on
/// `p` as a constant-coefficient differential operator.
pub fn contract(g: &QPoly, p: &QPoly) -> Result<QPoly> {
    if g.side != Side::Dual || p.side != Side::Primal || g.nvars != p.nvars {
        return Err(Error::DimensionMismatch(
            "contraction needs a dual and a primal form in the same variables".into(),
        ));
    }
    if let (Some(i), Some(j)) = (g.homogeneous_degree(), p.homogeneous_degree()) {
        if j < i {
            return Err(Error::DegreeMismatch(format!("operator of degree {i} on a form of degree {j}")));
        }
    } else if !g.is_zero() && !p.is_zero() {
        return Err(Error::DegreeMismatch("contraction of inhomogeneous forms".into()));
    }
    Ok(apply_operator(g, p))
}

/// Differential action without degree checks; inhomogeneous input is fine.
pub fn apply_operator(g: &QPoly, p: &QPoly) -> QPoly {
    let mut out = QPoly::zero(p.nvars, Side::Primal);
    for (by, c) in &g.terms {
        for (m, x) in &p.terms {
            if let Some(rest) = m.checked_sub(by) {
                let falling = m.factorial() / rest.factorial();
                out.add_term(rest, c * x * Rational::from_integer(falling));
            }
        }
    }
    out
}

/// `<p, g>` for `p` primal and `g` dual of the same degree.
pub fn pairing(p: &QPoly, g: &QPoly) -> Result<Rational> {
    let c = contract(g, p)?;
    if c.terms.keys().any(|m| m.degree() > 0) {
        return Err(Error::DegreeMismatch("pairing needs equal degrees".into()));
    }
    Ok(c.coeff(&MultiIndex::zero(p.nvars)))
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        self.check_same_ring(rhs).expect("adding polynomials from different rings");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly { nvars: self.nvars, side: self.side, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        self.multiply(rhs).expect("multiplying polynomials from different rings")
    }
}

fn var_name(nvars: usize, j: usize, side: Side) -> String {
    let base = if nvars == 3 { ["x", "y", "u"][j].to_string() } else { format!("x{j}") };
    match side {
        Side::Primal => base,
        Side::Dual => format!("d{base}"),
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| a.0.deglex_desc(b.0));
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| {
                    let v = var_name(self.nvars, j, self.side);
                    if e == 1 {
                        v
                    } else {
                        format!("{v}^{e}")
                    }
                })
                .collect();
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{frac, rat};
    use proptest::prelude::*;

    fn mono(side: Side, e: &[u32], c: i64) -> QPoly {
        QPoly::monomial(side, MultiIndex::new(e.to_vec()), rat(c))
    }

    fn x(e: &[u32], c: i64) -> QPoly {
        mono(Side::Primal, e, c)
    }

    fn dx(e: &[u32], c: i64) -> QPoly {
        mono(Side::Dual, e, c)
    }

    #[test]
    fn basis_examples() {
        let b = basis(1, 2);
        let order: Vec<_> = b.iter().map(|m| m.exponents().to_vec()).collect();
        assert_eq!(order, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(basis(2, 3).len(), 10);
        let b0 = basis(2, 0);
        assert_eq!(b0.len(), 1);
        assert_eq!(b0.get(0).exponents(), &[0, 0, 0]);
    }

    #[test]
    fn basis_is_sorted_and_indexed() {
        for n in 1..4 {
            for d in 0..5 {
                let b = basis(n, d);
                assert_eq!(b.len(), sym_dim(n, d as i64));
                for i in 1..b.len() {
                    assert_eq!(b.get(i - 1).deglex_desc(b.get(i)), Ordering::Less);
                }
                for (i, m) in b.iter().enumerate() {
                    assert_eq!(b.position(m), Some(i));
                }
            }
        }
    }

    #[test]
    fn multiply_examples() {
        let p = &x(&[1, 0], 1) + &x(&[0, 1], 2);
        assert_eq!(p.multiply(&QPoly::one(2, Side::Primal)).unwrap(), p);
        let a = &x(&[1, 0], 1) + &x(&[0, 1], 1);
        let b = &x(&[1, 0], 1) - &x(&[0, 1], 1);
        assert_eq!(a.multiply(&b).unwrap(), &x(&[2, 0], 1) - &x(&[0, 2], 1));
        assert_eq!(x(&[1, 1, 0], 1).multiply(&x(&[1, 0, 1], 1)).unwrap(), x(&[2, 1, 1], 1));
        assert!(x(&[1, 0], 1).multiply(&dx(&[1, 0], 1)).is_err());
        assert!(x(&[1, 0], 1).multiply(&x(&[1, 0, 0], 1)).is_err());
    }

    #[test]
    fn derive_examples() {
        assert_eq!(x(&[3, 0], 1).derive(0).unwrap(), x(&[2, 0], 3));
        assert_eq!(x(&[1, 1, 1], 1).derive(1).unwrap(), x(&[1, 0, 1], 1));
        assert!(x(&[0, 0], 5).derive(1).unwrap().is_zero());
        assert!(x(&[1, 0], 1).derive(2).is_err());
    }

    #[test]
    fn contract_examples() {
        assert_eq!(contract(&dx(&[1, 0], 1), &x(&[2, 0], 1)).unwrap(), x(&[1, 0], 2));
        assert_eq!(contract(&dx(&[1, 1], 1), &x(&[1, 1], 1)).unwrap(), x(&[0, 0], 1));
        // ∂_0^2 on (a x_0 + b x_1)^2 gives 2! a^2
        let (a, b) = (3, -5);
        let l = &x(&[1, 0], a) + &x(&[0, 1], b);
        let full = contract(&dx(&[2, 0], 1), &l.pow(2)).unwrap();
        assert_eq!(full, x(&[0, 0], 2 * a * a));
        assert!(contract(&dx(&[1, 0], 1), &x(&[0, 3], 1)).unwrap().is_zero());
        assert!(matches!(contract(&dx(&[2, 0], 1), &x(&[1, 0], 1)), Err(Error::DegreeMismatch(_))));
    }

    #[test]
    fn linear_form_power_pairing() {
        // q(l^d) = d! q(a)
        let l = &(&x(&[1, 0, 0], 2) + &x(&[0, 1, 0], -1)) + &x(&[0, 0, 1], 3);
        let q = &dx(&[1, 1, 1], 1) + &dx(&[0, 3, 0], 2);
        let got = pairing(&l.pow(3), &q).unwrap();
        // q(2,-1,3) = 2*(-1)*3 + 2*(-1)^3 = -8; times 3! = -48
        assert_eq!(got, rat(-48));
    }

    #[test]
    fn coords_examples() {
        let b = basis(1, 2);
        assert_eq!(x(&[2, 0], 1).coords(&b).unwrap(), vec![rat(1), rat(0), rat(0)]);
        assert_eq!(QPoly::zero(2, Side::Primal).coords(&b).unwrap(), vec![rat(0); 3]);
        let p = &x(&[1, 1], 1) - &x(&[0, 2], 2);
        assert_eq!(p.coords(&b).unwrap(), vec![rat(0), rat(1), rat(-2)]);
        assert!(matches!((&p + &x(&[1, 0], 1)).coords(&b), Err(Error::DegreeMismatch(_))));
    }

    #[test]
    fn pairing_matrix_is_diagonal_factorials() {
        let b = basis(2, 3);
        for (i, a) in b.iter().enumerate() {
            for (j, c) in b.iter().enumerate() {
                let v = pairing(
                    &QPoly::monomial(Side::Primal, a.clone(), rat(1)),
                    &QPoly::monomial(Side::Dual, c.clone(), rat(1)),
                )
                .unwrap();
                if i == j {
                    assert_eq!(v, Rational::from_integer(a.factorial()));
                } else {
                    assert!(v.is_zero());
                }
            }
        }
    }

    #[test]
    fn display() {
        let p = &x(&[2, 0, 1], 1) - &x(&[0, 0, 0], 3);
        assert_eq!(p.to_string(), "x^2*u - 3");
        assert_eq!(QPoly::monomial(Side::Primal, MultiIndex::new(vec![1, 1]), frac(1, 2)).to_string(), "1/2*x0*x1");
    }

    fn arb_poly(nvars: usize, deg: u32, side: Side) -> impl Strategy<Value = QPoly> {
        let b = basis(nvars - 1, deg as usize);
        let len = b.len();
        prop::collection::vec(-4i64..5, len)
            .prop_map(move |cs| QPoly::from_coords(&b, side, &cs.into_iter().map(rat).collect::<Vec<_>>()))
    }

    proptest! {
        #[test]
        fn leibniz(p in arb_poly(3, 2, Side::Primal), q in arb_poly(3, 3, Side::Primal), j in 0usize..3) {
            let lhs = (&p * &q).derive(j).unwrap();
            let rhs = &(&p.derive(j).unwrap() * &q) + &(&p * &q.derive(j).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn contraction_composes(g1 in arb_poly(3, 1, Side::Dual), g2 in arb_poly(3, 2, Side::Dual), p in arb_poly(3, 4, Side::Primal)) {
            let lhs = contract(&(&g1 * &g2), &p).unwrap();
            let rhs = contract(&g1, &contract(&g2, &p).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn coords_round_trip(p in arb_poly(3, 3, Side::Primal)) {
            let b = basis(2, 3);
            let v = p.coords(&b).unwrap();
            prop_assert_eq!(QPoly::from_coords(&b, Side::Primal, &v), p);
        }
    }
}
