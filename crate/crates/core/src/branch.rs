//! Branch locus of maps `f: P^2 -> P^3`.
//!
//! The homogeneous Jacobian `F = (∂f_i/∂x_j)` is `4 × 3`; its maximal
//! minors cut out the locus `Z` where `F` drops rank. The degree `h_N` of
//! the divisorial part of `Z` is computed twice: as the degree of the gcd
//! of the minors, and from the first twist where `h^2(N_f(-k))` becomes
//! nonzero, which happens at `k = 4d - h_N` with value `h^0(O(0)) = 1`.

use std::fmt;

use crate::cohomology::{h1_normal, h1_normal_kernel_route, h_line, MapSpec};
use crate::error::{Error, Result};
use crate::exactla::Rational;
use crate::gcd::gcd_all;
use crate::symspace::QPoly;

/// A matrix of primal forms.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<QPoly>,
}

impl PolyMatrix {
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> QPoly) -> Self {
        PolyMatrix { rows, cols, entries: (0..rows * cols).map(|x| f(x / cols, x % cols)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &QPoly {
        &self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `(∂f_i/∂x_j)` for four forms of a common degree in three variables.
pub fn jacobian(forms: &[QPoly]) -> Result<PolyMatrix> {
    if forms.len() != 4 || forms.iter().any(|f| f.nvars() != 3) {
        return Err(Error::InvalidSpec("the Jacobian needs four forms in three variables".into()));
    }
    let mut degrees = forms.iter().filter(|f| !f.is_zero()).map(|f| f.homogeneous_degree());
    let first = degrees.next().ok_or_else(|| Error::Degenerate("all four forms vanish".into()))?;
    if first.is_none() || degrees.any(|d| d != first) {
        return Err(Error::DegreeMismatch("forms must be homogeneous of one degree".into()));
    }
    Ok(PolyMatrix::from_fn(4, 3, |i, j| forms[i].derive(j).expect("three variables")))
}

fn det3(m: [[&QPoly; 3]; 3]) -> QPoly {
    let minor = |a: usize, b: usize| &(m[1][a] * m[2][b]) - &(m[1][b] * m[2][a]);
    let t0 = m[0][0] * &minor(1, 2);
    let t1 = m[0][1] * &minor(0, 2);
    let t2 = m[0][2] * &minor(0, 1);
    &(&t0 - &t1) + &t2
}

/// The four `3 × 3` minors; entry `i` deletes row `i` and carries sign `(-1)^i`.
pub fn maximal_minors(f: &PolyMatrix) -> Result<Vec<QPoly>> {
    if (f.rows, f.cols) != (4, 3) {
        return Err(Error::DimensionMismatch(format!("maximal minors of a {}x{} matrix", f.rows, f.cols)));
    }
    Ok((0..4)
        .map(|i| {
            let r: Vec<usize> = (0..4).filter(|&x| x != i).collect();
            let m = std::array::from_fn(|a| std::array::from_fn(|b| f.get(r[a], b)));
            let d = det3(m);
            if i % 2 == 1 {
                -&d
            } else {
                d
            }
        })
        .collect())
}

/// Degree of the gcd of the nonzero minors, with the normalized gcd.
pub fn divisorial_degree(minors: &[QPoly]) -> Result<(usize, QPoly)> {
    let g = gcd_all(minors.iter().filter(|m| !m.is_zero()))
        .ok_or_else(|| Error::Degenerate("every maximal minor of the Jacobian vanishes".into()))?;
    Ok((g.total_degree().unwrap_or(0) as usize, g))
}

/// `h^2(N_f(-k))` for a map `P^2 -> P^3`:
/// `4 h^0(O(k-d-3)) - 3 h^0(O(k-4)) + h^1(N_f(-k))`, with `h^1` from the
/// intersection route for `1 <= χ <= d` and from the `μ` kernel otherwise.
pub fn h2_normal(spec: &MapSpec, k: i64) -> Result<usize> {
    check_surface_map(spec)?;
    let d = spec.d() as i64;
    let chi = spec.twist_excess(k);
    let h1 = if chi >= 1 && chi <= d { h1_normal_kernel_route(spec, k)? } else { h1_normal(spec, k) };
    let value = 4 * h_line(2, k - d - 3, 0) as i64 - 3 * h_line(2, k - 4, 0) as i64 + h1 as i64;
    usize::try_from(value).map_err(|_| Error::Inconsistency(format!("negative h^2 at k = {k}")))
}

fn check_surface_map(spec: &MapSpec) -> Result<()> {
    if spec.n() != 2 || spec.s() != 3 {
        return Err(Error::NotApplicable(format!("needs a map P^2 -> P^3, got P^{} -> P^{}", spec.n(), spec.s())));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailSearch {
    pub h_n: usize,
    /// First `k` with `h^2(N_f(-k)) > 0`.
    pub k0: i64,
    /// `(k, h^2(N_f(-k)))` for every twist examined.
    pub values: Vec<(i64, usize)>,
}

/// `h_N = 4d - k_0` from the first nonzero `h^2(N_f(-k))`, searching
/// `d + 1 <= k <= 4d`.
pub fn h_n_from_tail(spec: &MapSpec) -> Result<TailSearch> {
    check_surface_map(spec)?;
    let d = spec.d() as i64;
    let mut values = Vec::new();
    for k in (d + 1)..=(4 * d) {
        let h2 = h2_normal(spec, k)?;
        values.push((k, h2));
        if h2 > 0 {
            if h2 != 1 {
                return Err(Error::Inconsistency(format!("first nonzero h^2(N_f(-{k})) is {h2}, expected 1")));
            }
            return Ok(TailSearch { h_n: (4 * d - k) as usize, k0: k, values });
        }
    }
    Err(Error::Inconsistency(format!("h^2(N_f(-k)) vanishes for every k <= {}", 4 * d)))
}

/// `1 + h^1(N_f(-q))`, `q = 4d - 3 - h_N`: an upper bound for `deg Z'`.
pub fn degzprime_bound(spec: &MapSpec, h_n: usize) -> usize {
    1 + h1_normal(spec, 4 * spec.d() as i64 - 3 - h_n as i64)
}

#[derive(Clone, Debug)]
pub struct BranchReport {
    pub h_n_gcd: usize,
    pub h_n_tail: usize,
    pub k0: i64,
    pub q: i64,
    pub h1_at_q: usize,
    pub degzprime_upper: usize,
    pub minors: Vec<QPoly>,
    pub gcd_poly: QPoly,
}

pub fn report(spec: &MapSpec) -> Result<BranchReport> {
    check_surface_map(spec)?;
    let jac = jacobian(spec.forms())?;
    let minors = maximal_minors(&jac)?;
    let (h_n_gcd, gcd_poly) = divisorial_degree(&minors)?;
    let tail = h_n_from_tail(spec)?;
    if h_n_gcd != tail.h_n {
        return Err(Error::Inconsistency(format!("h_N is {h_n_gcd} from the minors but {} from h^2", tail.h_n)));
    }
    let d = spec.d();
    if h_n_gcd > 3 * (d - 1) {
        return Err(Error::Inconsistency(format!("h_N = {h_n_gcd} exceeds 3(d-1) = {}", 3 * (d - 1))));
    }
    let q = 4 * d as i64 - 3 - h_n_gcd as i64;
    let h1_at_q = h1_normal(spec, q);
    Ok(BranchReport {
        h_n_gcd,
        h_n_tail: tail.h_n,
        k0: tail.k0,
        q,
        h1_at_q,
        degzprime_upper: 1 + h1_at_q,
        minors,
        gcd_poly,
    })
}

/// Whether `b = c · a` for some nonzero rational `c`.
pub fn proportional(a: &QPoly, b: &QPoly) -> bool {
    match (a.leading_term(), b.leading_term()) {
        (None, None) => true,
        (Some((ma, ca)), Some((mb, cb))) if ma == mb => {
            let r: Rational = cb / ca;
            &a.scale(&r) == b
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;
    use crate::symspace::{MultiIndex, Side};

    fn x(e: &[u32], c: i64) -> QPoly {
        QPoly::monomial(Side::Primal, MultiIndex::new(e.to_vec()), rat(c))
    }

    fn quadric_forms() -> Vec<QPoly> {
        vec![x(&[2, 0, 0], 1), x(&[0, 2, 0], 1), x(&[0, 0, 2], 1), x(&[1, 1, 0], 2)]
    }

    fn cubic_forms() -> Vec<QPoly> {
        vec![x(&[3, 0, 0], 1), x(&[0, 3, 0], 1), x(&[0, 0, 3], 1), x(&[2, 1, 0], 3)]
    }

    #[test]
    fn jacobian_examples() {
        let j = jacobian(&quadric_forms()).unwrap();
        assert_eq!(j.get(3, 0), &x(&[0, 1, 0], 2));
        assert_eq!(j.get(3, 1), &x(&[1, 0, 0], 2));
        assert!(j.get(3, 2).is_zero());
        let j = jacobian(&cubic_forms()).unwrap();
        assert_eq!(j.get(3, 0), &x(&[1, 1, 0], 6));
        assert_eq!(j.get(2, 2), &x(&[0, 0, 2], 3));
        let zero = QPoly::zero(3, Side::Primal);
        let j = jacobian(&[x(&[3, 0, 0], 1), zero.clone(), zero.clone(), zero]).unwrap();
        let nonzero = (0..4).flat_map(|i| (0..3).map(move |k| (i, k))).filter(|&(i, k)| !j.get(i, k).is_zero()).count();
        assert_eq!(nonzero, 1);
        assert!(jacobian(&quadric_forms()[..3]).is_err());
    }

    #[test]
    fn minors_examples() {
        let m = maximal_minors(&jacobian(&cubic_forms()).unwrap()).unwrap();
        let want = [x(&[1, 3, 2], 2), x(&[4, 0, 2], 1), QPoly::zero(3, Side::Primal), x(&[2, 2, 2], -1)];
        for (a, b) in m.iter().zip(&want) {
            assert_eq!(a, &b.scale(&rat(27)));
        }
        let (h, g) = divisorial_degree(&m).unwrap();
        assert_eq!((h, g), (3, x(&[1, 0, 2], 1)));

        let m = maximal_minors(&jacobian(&quadric_forms()).unwrap()).unwrap();
        let (h, g) = divisorial_degree(&m).unwrap();
        assert_eq!((h, g), (1, x(&[0, 0, 1], 1)));

        let c = |v: i64| x(&[0, 0, 0], v);
        let flat = PolyMatrix::from_fn(4, 3, |i, j| c([[1, 2, 3], [2, 4, 6], [1, 1, 1], [3, 6, 9]][i][j]));
        assert!(maximal_minors(&flat).unwrap().iter().all(QPoly::is_zero));
        assert!(matches!(divisorial_degree(&maximal_minors(&flat).unwrap()), Err(Error::Degenerate(_))));
    }

    #[test]
    fn reports() {
        let r = report(&MapSpec::from_forms(2, 2, &quadric_forms()).unwrap()).unwrap();
        assert_eq!((r.h_n_gcd, r.h_n_tail, r.k0, r.q, r.h1_at_q, r.degzprime_upper), (1, 1, 7, 4, 3, 4));
        let r = report(&MapSpec::from_forms(2, 3, &cubic_forms()).unwrap()).unwrap();
        assert_eq!((r.h_n_gcd, r.h_n_tail, r.k0, r.q, r.h1_at_q, r.degzprime_upper), (3, 3, 9, 6, 14, 15));
    }

    #[test]
    fn tail_one_step_up() {
        let spec = MapSpec::from_forms(2, 2, &quadric_forms()).unwrap();
        assert_eq!(h2_normal(&spec, 8).unwrap(), 3);
    }

    #[test]
    fn generic_quadric_has_no_divisor() {
        // x^2, y^2, u^2 and a general quadric: the branch locus is six points
        let p = &(&(&x(&[1, 1, 0], 1) + &x(&[1, 0, 1], 1)) + &x(&[0, 1, 1], 1)) + &x(&[2, 0, 0], 0);
        let spec = MapSpec::from_forms(2, 2, &[x(&[2, 0, 0], 1), x(&[0, 2, 0], 1), x(&[0, 0, 2], 1), p]).unwrap();
        let r = report(&spec).unwrap();
        assert_eq!(r.h_n_gcd, 0);
        assert_eq!(r.h_n_tail, 0);
    }

    #[test]
    fn needs_surface_to_threefold() {
        let spec = MapSpec::from_monomials(2, 3, &[vec![1, 1, 1]]).unwrap();
        assert!(matches!(report(&spec), Err(Error::NotApplicable(_))));
    }
}
