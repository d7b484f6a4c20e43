//! Multivariate gcd over `Q[x_0, ..., x_n]` by recursive content and
//! primitive-part extraction with a pseudo-remainder sequence in one
//! variable at a time.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactla::Rational;
use crate::symspace::{MultiIndex, QPoly};

/// Exact quotient `a / b`, or `None` when `b` does not divide `a`.
pub fn divide_exact(a: &QPoly, b: &QPoly) -> Option<QPoly> {
    if b.is_zero() {
        return None;
    }
    let (lb, cb) = b.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
    let mut r = a.clone();
    let mut q = QPoly::zero(a.nvars(), a.side());
    while let Some((lr, cr)) = r.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        let shift = lr.checked_sub(&lb)?;
        let t = QPoly::monomial(a.side(), shift, cr / &cb);
        r = &r - &(&t * b);
        q = &q + &t;
    }
    Some(q)
}

/// Coefficients of `p` as a polynomial in `x_v`, lowest power first.
fn coeffs_in(p: &QPoly, v: usize) -> Vec<QPoly> {
    let deg = p.degree_in(v) as usize;
    let mut out = vec![QPoly::zero(p.nvars(), p.side()); deg + 1];
    for (m, c) in p.terms() {
        let mut e = m.exponents().to_vec();
        let pow = std::mem::replace(&mut e[v], 0) as usize;
        out[pow].add_term(MultiIndex::new(e), c.clone());
    }
    out
}

fn x_pow(like: &QPoly, v: usize, e: u32) -> QPoly {
    let mut exps = vec![0; like.nvars()];
    exps[v] = e;
    QPoly::monomial(like.side(), MultiIndex::new(exps), Rational::one())
}

/// `lc^{...} a mod b` in `x_v`, with `deg_v b >= 1`.
fn pseudo_remainder(a: &QPoly, b: &QPoly, v: usize) -> QPoly {
    let db = b.degree_in(v);
    let lb = coeffs_in(b, v).pop().expect("b is nonzero");
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = coeffs_in(&r, v).pop().expect("r is nonzero");
        r = &(&lb * &r) - &(&(&lr * &x_pow(&r, v, dr - db)) * b);
    }
    r
}

fn content_in(p: &QPoly, v: usize) -> QPoly {
    coeffs_in(p, v).iter().fold(QPoly::zero(p.nvars(), p.side()), |g, c| gcd(&g, c))
}

fn primitive_in(p: &QPoly, v: usize) -> QPoly {
    if p.is_zero() {
        return p.clone();
    }
    divide_exact(p, &content_in(p, v)).expect("content divides")
}

/// Integer coefficients with content one and a positive leading coefficient.
pub fn normalize(p: &QPoly) -> QPoly {
    if p.is_zero() {
        return p.clone();
    }
    let lcm = p.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.terms().map(|(_, c)| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let mut scale = Rational::new(lcm, g);
    if p.leading_term().expect("nonzero").1.is_negative() {
        scale = -scale;
    }
    p.scale(&scale)
}

/// Greatest common divisor, normalized by [`normalize`]; `gcd(0, 0) = 0`.
pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    let v = match (0..a.nvars()).rev().find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0) {
        Some(v) => v,
        None => return QPoly::one(a.nvars(), a.side()),
    };
    let c = gcd(&content_in(a, v), &content_in(b, v));
    let (mut p, mut q) = (primitive_in(a, v), primitive_in(b, v));
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() && q.degree_in(v) > 0 {
        let r = pseudo_remainder(&p, &q, v);
        p = q;
        q = primitive_in(&r, v);
    }
    // a nonzero remainder free of x_v means the primitive parts are coprime
    let g = if q.is_zero() { p } else { QPoly::one(a.nvars(), a.side()) };
    normalize(&(&c * &g))
}

pub fn gcd_all<'a>(polys: impl IntoIterator<Item = &'a QPoly>) -> Option<QPoly> {
    polys.into_iter().fold(None, |acc: Option<QPoly>, p| Some(acc.map_or_else(|| normalize(p), |g| gcd(&g, p))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{frac, rat};
    use crate::symspace::Side;
    use proptest::prelude::*;

    fn x(e: &[u32], c: i64) -> QPoly {
        QPoly::monomial(Side::Primal, MultiIndex::new(e.to_vec()), rat(c))
    }

    #[test]
    fn monomial_gcds() {
        assert_eq!(gcd(&x(&[1, 1, 1], 1), &x(&[2, 0, 1], 3)), x(&[1, 0, 1], 1));
        let g = gcd_all(&[x(&[1, 1, 1], 1), x(&[2, 0, 1], 1), x(&[0, 2, 1], 1)]).unwrap();
        assert_eq!(g, x(&[0, 0, 1], 1));
    }

    #[test]
    fn non_monomial_gcd() {
        // (x + y)(x - u) and (x + y)(y + 2u)
        let s = &x(&[1, 0, 0], 1) + &x(&[0, 1, 0], 1);
        let a = &s * &(&x(&[1, 0, 0], 1) - &x(&[0, 0, 1], 1));
        let b = &s * &(&x(&[0, 1, 0], 1) + &x(&[0, 0, 1], 2));
        assert_eq!(gcd(&a, &b), s);
        assert_eq!(gcd(&a.scale(&frac(-3, 7)), &b), s);
    }

    #[test]
    fn coprime_and_zero() {
        let a = &x(&[1, 0, 0], 1) + &x(&[0, 1, 0], 1);
        let b = &x(&[1, 0, 0], 1) - &x(&[0, 1, 0], 1);
        assert_eq!(gcd(&a, &b), QPoly::one(3, Side::Primal));
        assert_eq!(gcd(&QPoly::zero(3, Side::Primal), &b.scale(&rat(-2))), b);
        assert!(divide_exact(&a, &b).is_none());
        assert_eq!(divide_exact(&(&a * &b), &b).unwrap(), a);
    }

    fn arb_poly(max_terms: usize, max_deg: u32) -> impl Strategy<Value = QPoly> {
        prop::collection::vec((0..=max_deg, 0..=max_deg, 0..=max_deg, -3i64..4), 1..=max_terms).prop_map(|ts| {
            QPoly::from_terms(
                3,
                Side::Primal,
                ts.into_iter().map(|(a, b, c, k)| (MultiIndex::new(vec![a, b, c]), rat(k))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn common_factor_divides(a in arb_poly(3, 2), b in arb_poly(3, 2), c in arb_poly(3, 2)) {
            prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
            let g = gcd(&(&a * &c), &(&b * &c));
            prop_assert!(divide_exact(&g, &c).is_some());
            prop_assert!(divide_exact(&(&a * &c), &g).is_some());
            prop_assert!(divide_exact(&(&b * &c), &g).is_some());
        }
    }
}
