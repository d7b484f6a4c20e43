//! Cohomology of the twists `T_f(-k)` and `N_f(-k)`.
//!
//! Both sheaves are cokernels of maps between sums of line bundles:
//!
//! ```text
//! 0 -> O(-k)            -> O(d-k)^{s+1} -> T_f(-k) -> 0
//! 0 -> O(1-k)^{n+1}     -> O(d-k)^{s+1} -> N_f(-k) -> 0
//! ```
//!
//! On `P^n` a line bundle has cohomology only in degrees `0` and `n`, so
//! the long exact sequence gives `h^i = coker M_i + ker M_{i+1}` where
//! `M_0` is the map on global sections and `M_n` the map on top
//! cohomology. `H^n(O(m))` is modeled as `S^{-m-n-1} U`, on which forms
//! act by contraction. Every entry of a table comes from an explicit
//! rank; `h^{n-1}` is additionally available through the intersection
//! formulas in `S^χ U ⊗ S^d U`, `χ = k - d - n - 1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{Ambient, QMatrix, Rational, Subspace};
use crate::operators::{embed_tensor_t, inv_partial_t, ker_d, ker_dd, perp, span_of_polys, subspace_polys};
use crate::symspace::{apply_operator, basis, sym_dim, MonomialBasis, MultiIndex, QPoly, Side};

/// Outcome of the coordinate-support test for base points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status", content = "support")]
pub enum BasePoints {
    Free,
    /// Every form vanishes on the points with exactly this coordinate support.
    Found(Vec<usize>),
    NotVerified,
}

/// A map `f = π_T ∘ ν_d : P^n -> P^s`, `s = C(d+n, n) - 1 - dim T`.
#[derive(Clone, Debug)]
pub struct MapSpec {
    n: usize,
    d: usize,
    t: Subspace,
    tperp: Subspace,
    forms: Vec<QPoly>,
    base_points: BasePoints,
}

impl MapSpec {
    /// From the center `T ⊂ S^d U`; the forms are the reduced basis of `T^perp`.
    pub fn from_t(n: usize, d: usize, t: Subspace) -> Result<Self> {
        check_nd(n, d)?;
        if t.ambient() != (Ambient::Sym { n, d }) {
            return Err(Error::InvalidSpec(format!(
                "center lives in {:?}, expected S^{d} U with n = {n}",
                t.ambient()
            )));
        }
        let tperp = perp(&t)?;
        let forms = subspace_polys(&tperp)?.into_iter().map(|g| g.with_side(Side::Primal)).collect();
        Self::assemble(n, d, t, tperp, forms)
    }

    /// `T` spanned by monomials, given as exponent vectors.
    pub fn from_monomials(n: usize, d: usize, monomials: &[Vec<u32>]) -> Result<Self> {
        check_nd(n, d)?;
        let polys = monomials
            .iter()
            .map(|e| {
                if e.len() != n + 1 || e.iter().sum::<u32>() as usize != d {
                    return Err(Error::InvalidSpec(format!(
                        "exponent vector {e:?} is not a degree-{d} monomial in {} variables",
                        n + 1
                    )));
                }
                Ok(QPoly::monomial(Side::Primal, MultiIndex::new(e.clone()), Rational::from_integer(1.into())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_t_polys(n, d, &polys)
    }

    /// `T` spanned by the given primal forms.
    pub fn from_t_polys(n: usize, d: usize, polys: &[QPoly]) -> Result<Self> {
        check_nd(n, d)?;
        let t = span_of_polys(n, d, Side::Primal, polys).map_err(as_spec_error)?;
        Self::from_t(n, d, t)
    }

    /// From the `s + 1` forms defining `f`; `T` is their annihilator.
    pub fn from_forms(n: usize, d: usize, forms: &[QPoly]) -> Result<Self> {
        check_nd(n, d)?;
        let dual: Vec<QPoly> = forms.iter().map(|f| f.with_side(Side::Dual)).collect();
        if forms.iter().any(|f| f.side() != Side::Primal || f.nvars() != n + 1) {
            return Err(Error::InvalidSpec(format!("map forms must be polynomials in {} variables", n + 1)));
        }
        let tperp = span_of_polys(n, d, Side::Dual, &dual).map_err(as_spec_error)?;
        if tperp.dim() != forms.len() {
            return Err(Error::InvalidSpec(format!(
                "the {} map forms span only a {}-dimensional space",
                forms.len(),
                tperp.dim()
            )));
        }
        let t = perp(&tperp)?;
        Self::assemble(n, d, t, tperp, forms.to_vec())
    }

    fn assemble(n: usize, d: usize, t: Subspace, tperp: Subspace, forms: Vec<QPoly>) -> Result<Self> {
        if tperp.dim() == 0 {
            return Err(Error::InvalidSpec("T is all of S^d U, so the map is empty".into()));
        }
        let base_points = base_point_check(n, d, &t);
        Ok(MapSpec { n, d, t, tperp, forms, base_points })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `N = C(d+n, n) - 1`.
    pub fn big_n(&self) -> usize {
        sym_dim(self.n, self.d as i64) - 1
    }

    pub fn s(&self) -> usize {
        self.tperp.dim() - 1
    }

    pub fn t(&self) -> &Subspace {
        &self.t
    }

    pub fn tperp(&self) -> &Subspace {
        &self.tperp
    }

    /// The forms `f_0, ..., f_s` defining the map.
    pub fn forms(&self) -> &[QPoly] {
        &self.forms
    }

    /// The forms as elements `g_i` of `T^perp ⊂ S^d U^vee`.
    pub fn dual_forms(&self) -> Vec<QPoly> {
        self.forms.iter().map(|f| f.with_side(Side::Dual)).collect()
    }

    pub fn base_points(&self) -> &BasePoints {
        &self.base_points
    }

    /// Exponents of a monomial basis of `T`, if `T` is spanned by monomials.
    pub fn t_monomials(&self) -> Option<Vec<MultiIndex>> {
        monomials_of(&self.t)
    }

    /// `χ = k - d - n - 1`.
    pub fn twist_excess(&self, k: i64) -> i64 {
        k - self.d as i64 - self.n as i64 - 1
    }
}

fn check_nd(n: usize, d: usize) -> Result<()> {
    if n == 0 || d < 2 {
        return Err(Error::InvalidSpec(format!("need n >= 1 and d >= 2, got n = {n}, d = {d}")));
    }
    Ok(())
}

fn as_spec_error(e: Error) -> Error {
    match e {
        Error::DegreeMismatch(m) | Error::DimensionMismatch(m) => Error::InvalidSpec(m),
        other => other,
    }
}

/// The monomials spanning `s`, if it is spanned by monomials.
pub fn monomials_of(s: &Subspace) -> Option<Vec<MultiIndex>> {
    let (n, d) = match s.ambient() {
        Ambient::Sym { n, d } | Ambient::Dual { n, d } => (n, d),
        _ => return None,
    };
    let b = basis(n, d);
    s.vectors()
        .map(|v| {
            let mut nz = v.iter().enumerate().filter(|(_, c)| !num_traits::Zero::is_zero(*c));
            let (i, _) = nz.next()?;
            nz.next().is_none().then(|| b.get(i).clone())
        })
        .collect()
}

/// For monomial `T`, the forms are the complementary monomials; a common
/// zero with coordinate support `S` exists exactly when no complementary
/// monomial is supported inside `S`.
fn base_point_check(n: usize, d: usize, t: &Subspace) -> BasePoints {
    let Some(monos) = monomials_of(t) else {
        return BasePoints::NotVerified;
    };
    let b = basis(n, d);
    let complement: Vec<&MultiIndex> = b.iter().filter(|m| !monos.contains(m)).collect();
    for mask in 1u32..(1 << (n + 1)) {
        let inside = |m: &MultiIndex| m.support().all(|j| mask & (1 << j) != 0);
        if !complement.iter().any(|m| inside(m)) {
            return BasePoints::Found((0..=n).filter(|j| mask & (1 << j) != 0).collect());
        }
    }
    BasePoints::Free
}

/// `h^i(P^n, O(m))`.
pub fn h_line(n: usize, m: i64, i: usize) -> usize {
    if i == 0 {
        sym_dim(n, m)
    } else if i == n {
        sym_dim(n, -m - 1 - n as i64)
    } else {
        0
    }
}

/// `χ(O(m)) = Σ (-1)^i h^i(O(m))`.
pub fn euler_line(n: usize, m: i64) -> i64 {
    let top = h_line(n, m, n) as i64;
    h_line(n, m, 0) as i64 + if n.is_multiple_of(2) { top } else { -top }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sheaf {
    Tangent,
    Normal,
}

/// Which computation produced a table entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Explicit ranks of the maps in the long exact sequence.
    EulerSeq,
    /// `dim ∂^{-χ} T`.
    Theorem1,
    /// Kernel of `μ` on top cohomology.
    Theorem2Mu,
    /// `(S^χ U ⊗ T) ∩ ker(D∘D)`, or `μ_0^{-1}(T)` at `χ = 0`.
    Theorem2Kernel,
    /// Intermediate cohomology of line bundles vanishes.
    Vanishing,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::EulerSeq => "euler-seq",
            Route::Theorem1 => "theorem1",
            Route::Theorem2Mu => "theorem2-mu",
            Route::Theorem2Kernel => "theorem2-kernel",
            Route::Vanishing => "vanishing",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomRow {
    pub k: i64,
    /// `h^0, ..., h^n`.
    pub h: Vec<usize>,
    /// `Σ (-1)^i h^i`.
    pub chi: i64,
    /// Routes that produced each `h^i`; more than one means they agreed.
    pub routes: Vec<Vec<Route>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomTable {
    pub sheaf: Sheaf,
    pub n: usize,
    pub rows: Vec<CohomRow>,
}

impl CohomRow {
    pub fn alternating_sum(&self) -> i64 {
        self.h.iter().enumerate().map(|(i, &h)| if i % 2 == 0 { h as i64 } else { -(h as i64) }).sum()
    }
}

/// `Σ (-1)^i h^i` as predicted by the defining sequence.
pub fn euler_expected(spec: &MapSpec, sheaf: Sheaf, k: i64) -> i64 {
    let (n, d) = (spec.n, spec.d as i64);
    let b = (spec.s() as i64 + 1) * euler_line(n, d - k);
    match sheaf {
        Sheaf::Normal => b - (n as i64 + 1) * euler_line(n, 1 - k),
        Sheaf::Tangent => b - euler_line(n, -k),
    }
}

fn coords_or_empty(p: &QPoly, m: i64, n: usize) -> Vec<Rational> {
    if m < 0 {
        Vec::new()
    } else {
        p.coords(&basis(n, m as usize)).expect("product has the expected degree")
    }
}

fn monomials(n: usize, m: i64) -> Vec<MultiIndex> {
    if m < 0 {
        Vec::new()
    } else {
        basis(n, m as usize).iter().cloned().collect()
    }
}

fn matrix(rows: usize, columns: Vec<Vec<Rational>>) -> QMatrix {
    QMatrix::from_columns(rows, columns).expect("columns have the target dimension")
}

fn jacobian_columns(spec: &MapSpec) -> Vec<Vec<QPoly>> {
    (0..=spec.n).map(|j| spec.forms.iter().map(|f| f.derive(j).expect("variable in range")).collect()).collect()
}

/// Global sections of `O(1-k)^{n+1} -> O(d-k)^{s+1}`:
/// `(h_j) ↦ (Σ_j ∂_j f_i · h_j)_i`. Columns indexed by `(j, monomial)`.
pub fn section_matrix_normal(spec: &MapSpec, k: i64) -> QMatrix {
    let n = spec.n;
    let tgt = spec.d as i64 - k;
    let rows = spec.forms.len() * sym_dim(n, tgt);
    let jac = jacobian_columns(spec);
    let mut columns = Vec::new();
    for partials in &jac {
        for h in monomials(n, 1 - k) {
            let h = QPoly::monomial(Side::Primal, h, Rational::from_integer(1.into()));
            columns.push(partials.iter().flat_map(|p| coords_or_empty(&(p * &h), tgt, n)).collect());
        }
    }
    matrix(rows, columns)
}

/// Top cohomology of `O(1-k)^{n+1} -> O(d-k)^{s+1}` as
/// `μ: U ⊗ S^{k-n-2} U -> (T^perp)^vee ⊗ S^χ U`,
/// `x_j ⊗ q ↦ Σ_i g_i^vee ⊗ (∂g_i/∂(∂_j))(q)`.
pub fn mu_matrix(spec: &MapSpec, k: i64) -> QMatrix {
    let n = spec.n;
    let chi = spec.twist_excess(k);
    let rows = spec.forms.len() * sym_dim(n, chi);
    let dual = spec.dual_forms();
    let mut columns = Vec::new();
    for j in 0..=n {
        let partials: Vec<QPoly> = dual.iter().map(|g| g.derive(j).expect("variable in range")).collect();
        for q in monomials(n, k - n as i64 - 2) {
            let q = QPoly::monomial(Side::Primal, q, Rational::from_integer(1.into()));
            columns.push(partials.iter().flat_map(|g| coords_or_empty(&apply_operator(g, &q), chi, n)).collect());
        }
    }
    matrix(rows, columns)
}

/// Global sections of `O(-k) -> O(d-k)^{s+1}`: `h ↦ (f_i h)_i`.
pub fn section_matrix_tangent(spec: &MapSpec, k: i64) -> QMatrix {
    let n = spec.n;
    let tgt = spec.d as i64 - k;
    let rows = spec.forms.len() * sym_dim(n, tgt);
    let columns = monomials(n, -k)
        .into_iter()
        .map(|h| {
            let h = QPoly::monomial(Side::Primal, h, Rational::from_integer(1.into()));
            spec.forms.iter().flat_map(|f| coords_or_empty(&(f * &h), tgt, n)).collect()
        })
        .collect();
    matrix(rows, columns)
}

/// Top cohomology of `O(-k) -> O(d-k)^{s+1}`:
/// `S^{k-n-1} U -> (T^perp)^vee ⊗ S^χ U`, `q ↦ Σ_i g_i^vee ⊗ g_i(q)`.
pub fn tangent_top_matrix(spec: &MapSpec, k: i64) -> QMatrix {
    let n = spec.n;
    let chi = spec.twist_excess(k);
    let rows = spec.forms.len() * sym_dim(n, chi);
    let dual = spec.dual_forms();
    let columns = monomials(n, k - n as i64 - 1)
        .into_iter()
        .map(|q| {
            let q = QPoly::monomial(Side::Primal, q, Rational::from_integer(1.into()));
            dual.iter().flat_map(|g| coords_or_empty(&apply_operator(g, &q), chi, n)).collect()
        })
        .collect();
    matrix(rows, columns)
}

/// Multiplication `φ: T^perp ⊗ S^χ U^vee -> S^{d+χ} U^vee`.
pub fn phi_matrix(spec: &MapSpec, chi: usize) -> QMatrix {
    let n = spec.n;
    let tgt = basis(n, spec.d + chi);
    let mut columns = Vec::new();
    for g in spec.dual_forms() {
        for m in basis(n, chi).iter() {
            let p = &g * &QPoly::monomial(Side::Dual, m.clone(), Rational::from_integer(1.into()));
            columns.push(p.coords(&tgt).expect("product has degree d + χ"));
        }
    }
    matrix(tgt.len(), columns)
}

/// `dim S^{d+χ} U^vee - rank φ`, i.e. `dim (T^perp · S^χ U^vee)^perp`.
pub fn corank_phi(spec: &MapSpec, chi: usize) -> usize {
    let m = phi_matrix(spec, chi);
    m.rows() - m.rank()
}

fn kernel_dim(m: &QMatrix) -> usize {
    m.cols() - m.rank()
}

/// `h^{n-1}(N_f(-k))` for `n >= 2`, as `dim ker μ`. For `n = 1` this is
/// the top-cohomology contribution to `h^0`.
pub fn h1_normal(spec: &MapSpec, k: i64) -> usize {
    kernel_dim(&mu_matrix(spec, k))
}

/// `dim (S^χ U ⊗ T) ∩ ⋂ ker(D_{i,j} ∘ D_{r,s})` for `1 <= χ <= d`.
pub fn h1_normal_kernel_route(spec: &MapSpec, k: i64) -> Result<usize> {
    let chi = spec.twist_excess(k);
    if chi < 1 || chi as usize > spec.d {
        return Err(Error::NotApplicable(format!("intersection route needs 1 <= χ <= d, got χ = {chi}")));
    }
    let chi = chi as usize;
    let kdd = ker_dd(chi, spec.d, spec.n)?;
    embed_tensor_t(chi, &spec.t)?.intersection_dim(&kdd)
}

/// At `χ = 0`: `dim μ_0^{-1}(T)` for the multiplication `μ_0: U ⊗ S^{d-1} U -> S^d U`.
pub fn h1_normal_chi_zero(spec: &MapSpec) -> Result<usize> {
    let (n, d) = (spec.n, spec.d);
    let tgt = basis(n, d);
    let mut columns = Vec::new();
    for j in 0..=n {
        for q in basis(n, d - 1).iter() {
            columns.push(spec.t.residue(&tgt_coords(&q.inc(j), &tgt))?);
        }
    }
    Ok(kernel_dim(&matrix(tgt.len(), columns)))
}

fn tgt_coords(m: &MultiIndex, b: &MonomialBasis) -> Vec<Rational> {
    let mut v = vec![Rational::from_integer(0.into()); b.len()];
    v[b.position(m).expect("monomial of the basis degree")] = Rational::from_integer(1.into());
    v
}

/// `h^{n-1}(T_f(-k))` for `n >= 2`: `dim ∂^{-χ}T` when `χ >= 0`, and the
/// whole of `H^n(O(-k))` otherwise.
pub fn h1_tangent(spec: &MapSpec, k: i64) -> Result<usize> {
    let chi = spec.twist_excess(k);
    if chi >= 0 {
        Ok(inv_partial_t(&spec.t, chi as usize)?.dim())
    } else {
        Ok(sym_dim(spec.n, k - spec.n as i64 - 1))
    }
}

/// `dim (S^χ U ⊗ T) ∩ ⋂ ker D_{i,j}`; at `χ = 0` the intersection is `T`.
pub fn h1_tangent_intersection_route(spec: &MapSpec, k: i64) -> Result<usize> {
    let chi = spec.twist_excess(k);
    if chi < 0 {
        return Err(Error::NotApplicable(format!("intersection route needs χ >= 0, got χ = {chi}")));
    }
    let chi = chi as usize;
    let kd = ker_d(chi, spec.d, spec.n)?;
    embed_tensor_t(chi, &spec.t)?.intersection_dim(&kd)
}

struct Ranked {
    coker: usize,
    ker: usize,
}

fn ranked(m: &QMatrix) -> Ranked {
    let r = m.rank();
    Ranked { coker: m.rows() - r, ker: m.cols() - r }
}

/// One row of the table, cross-checking `h^{n-1}` by a second route
/// wherever one applies.
pub fn row(spec: &MapSpec, sheaf: Sheaf, k: i64, cross_check: bool) -> Result<CohomRow> {
    let n = spec.n;
    let chi = spec.twist_excess(k);
    let (m0, mn) = match sheaf {
        Sheaf::Normal => (ranked(&section_matrix_normal(spec, k)), mu_matrix(spec, k)),
        Sheaf::Tangent => (ranked(&section_matrix_tangent(spec, k)), tangent_top_matrix(spec, k)),
    };
    if m0.ker != 0 {
        return Err(Error::Inconsistency(format!("map on global sections is not injective at k = {k}")));
    }
    let mn_ranked = ranked(&mn);

    // the top-cohomology kernel feeding h^{n-1}, with the routes that agree on it
    let (top_ker, top_routes) = match sheaf {
        Sheaf::Normal => {
            let mut routes = vec![Route::Theorem2Mu];
            if cross_check {
                let other = if chi == 0 {
                    Some(h1_normal_chi_zero(spec)?)
                } else if chi >= 1 && chi as usize <= spec.d {
                    Some(h1_normal_kernel_route(spec, k)?)
                } else {
                    None
                };
                if let Some(v) = other {
                    if v != mn_ranked.ker {
                        return Err(Error::Inconsistency(format!(
                            "h^{} N_f(-{k}): μ kernel {} but intersection route {v}",
                            n - 1,
                            mn_ranked.ker
                        )));
                    }
                    routes.push(Route::Theorem2Kernel);
                }
            }
            (mn_ranked.ker, routes)
        }
        Sheaf::Tangent => {
            if chi >= 0 {
                let v = inv_partial_t(&spec.t, chi as usize)?.dim();
                let mut routes = vec![Route::Theorem1];
                if cross_check {
                    if v != mn_ranked.ker {
                        return Err(Error::Inconsistency(format!(
                            "h^{} T_f(-{k}): dim ∂^-χ T = {v} but top kernel {}",
                            n - 1,
                            mn_ranked.ker
                        )));
                    }
                    routes.push(Route::EulerSeq);
                }
                (v, routes)
            } else {
                (mn_ranked.ker, vec![Route::EulerSeq])
            }
        }
    };

    let mut h = vec![0usize; n + 1];
    let mut routes: Vec<Vec<Route>> = vec![vec![Route::Vanishing]; n + 1];
    h[0] = m0.coker;
    routes[0] = vec![Route::EulerSeq];
    h[n - 1] += top_ker;
    if n == 1 {
        for r in top_routes {
            if !routes[0].contains(&r) {
                routes[0].push(r);
            }
        }
    } else {
        routes[n - 1] = top_routes;
    }
    h[n] = mn_ranked.coker;
    routes[n] = vec![Route::EulerSeq];

    let mut out = CohomRow { k, h, chi: 0, routes };
    out.chi = out.alternating_sum();
    let expected = euler_expected(spec, sheaf, k);
    if out.chi != expected {
        return Err(Error::Inconsistency(format!("Euler characteristic {} at k = {k}, expected {expected}", out.chi)));
    }
    Ok(out)
}

/// `h^i` for every `i` and `kmin <= k <= kmax`, with cross-checks.
pub fn table(spec: &MapSpec, sheaf: Sheaf, kmin: i64, kmax: i64) -> Result<CohomTable> {
    table_with(spec, sheaf, kmin, kmax, true)
}

pub fn table_with(spec: &MapSpec, sheaf: Sheaf, kmin: i64, kmax: i64, cross_check: bool) -> Result<CohomTable> {
    if kmin > kmax {
        return Err(Error::IndexOutOfRange(format!("kmin = {kmin} > kmax = {kmax}")));
    }
    let rows = (kmin..=kmax).map(|k| row(spec, sheaf, k, cross_check)).collect::<Result<Vec<_>>>()?;
    Ok(CohomTable { sheaf, n: spec.n, rows })
}

/// `dim ker` of the tangent top map, for comparison with [`h1_tangent`].
pub fn h1_tangent_top_kernel(spec: &MapSpec, k: i64) -> usize {
    kernel_dim(&tangent_top_matrix(spec, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;
    use proptest::prelude::*;

    fn xm(e: &[u32], c: i64) -> QPoly {
        QPoly::monomial(Side::Primal, MultiIndex::new(e.to_vec()), rat(c))
    }

    pub(crate) fn quadric() -> MapSpec {
        MapSpec::from_forms(2, 2, &[xm(&[2, 0, 0], 1), xm(&[0, 2, 0], 1), xm(&[0, 0, 2], 1), xm(&[1, 1, 0], 2)])
            .unwrap()
    }

    pub(crate) fn cubic() -> MapSpec {
        MapSpec::from_forms(2, 3, &[xm(&[3, 0, 0], 1), xm(&[0, 3, 0], 1), xm(&[0, 0, 3], 1), xm(&[2, 1, 0], 3)])
            .unwrap()
    }

    fn xyu() -> MapSpec {
        MapSpec::from_monomials(2, 3, &[vec![1, 1, 1]]).unwrap()
    }

    #[test]
    fn h_line_examples() {
        assert_eq!(h_line(2, 3, 0), 10);
        assert_eq!(h_line(2, -3, 2), 1);
        for i in 0..3 {
            assert_eq!(h_line(2, -1, i), 0);
        }
        assert_eq!(euler_line(2, -3), 1);
        assert_eq!(euler_line(1, -3), -2);
    }

    #[test]
    fn spec_shapes() {
        let q = quadric();
        assert_eq!((q.big_n(), q.s(), q.t().dim()), (5, 3, 2));
        let t = q.t_monomials().unwrap();
        assert_eq!(t, vec![MultiIndex::new(vec![1, 0, 1]), MultiIndex::new(vec![0, 1, 1])]);
        assert_eq!(q.base_points(), &BasePoints::Free);
        assert_eq!(cubic().t().dim(), 6);
        let x = xyu();
        assert_eq!((x.big_n(), x.s()), (9, 8));
        let corner = MapSpec::from_monomials(2, 2, &[vec![2, 0, 0]]).unwrap();
        assert_eq!(corner.base_points(), &BasePoints::Found(vec![0]));
        let generic = MapSpec::from_t_polys(2, 2, &[&xm(&[1, 1, 0], 1) + &xm(&[0, 0, 2], 1)]).unwrap();
        assert_eq!(generic.base_points(), &BasePoints::NotVerified);
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!(MapSpec::from_monomials(2, 2, &[vec![1, 1, 1]]), Err(Error::InvalidSpec(_))));
        assert!(matches!(
            MapSpec::from_forms(2, 2, &[xm(&[2, 0, 0], 1), xm(&[2, 0, 0], 2)]),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(MapSpec::from_monomials(0, 2, &[vec![2]]), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn mu_shapes() {
        let q = quadric();
        assert_eq!(mu_matrix(&q, 3).cols(), 0);
        let m = mu_matrix(&q, 4);
        assert_eq!((m.rows(), m.cols()), (0, 3));
        assert_eq!(h1_normal(&q, 4), 3);
        assert_eq!(h1_normal(&q, 2), 0);
    }

    #[test]
    fn cubic_h1() {
        assert_eq!(h1_normal(&cubic(), 6), 14);
    }

    #[test]
    fn kernel_route_examples() {
        let q = quadric();
        for k in 6..=7 {
            assert_eq!(h1_normal_kernel_route(&q, k).unwrap(), h1_normal(&q, k));
        }
        // χ = 1 is everything: (n+1) dim T
        assert_eq!(h1_normal_kernel_route(&q, 6).unwrap(), 3 * 2);
        assert!(matches!(h1_normal_kernel_route(&q, 5), Err(Error::NotApplicable(_))));
        assert_eq!(h1_normal_chi_zero(&q).unwrap(), h1_normal(&q, 5));
    }

    #[test]
    fn tangent_examples() {
        let x = xyu();
        assert_eq!(h1_tangent(&x, 6).unwrap(), 1);
        assert_eq!(h1_tangent(&x, 7).unwrap(), 0);
        assert_eq!(h1_tangent_intersection_route(&x, 7).unwrap(), 0);
        assert_eq!(h1_tangent_intersection_route(&x, 6).unwrap(), 1);
        assert_eq!(corank_phi(&x, 1), 0);
        assert_eq!(h1_tangent_top_kernel(&x, 6), 1);
        assert!(h1_tangent_intersection_route(&x, 5).is_err());
    }

    #[test]
    fn tables_balance() {
        for spec in [quadric(), cubic(), xyu()] {
            for sheaf in [Sheaf::Normal, Sheaf::Tangent] {
                let t = table(&spec, sheaf, -2, 12).unwrap();
                for r in &t.rows {
                    assert_eq!(r.chi, euler_expected(&spec, sheaf, r.k));
                }
            }
        }
    }

    #[test]
    fn curves() {
        // twisted cubic projected to a plane cubic curve
        let spec = MapSpec::from_monomials(1, 3, &[vec![2, 1]]).unwrap();
        let t = table(&spec, Sheaf::Normal, -3, 8).unwrap();
        for r in &t.rows {
            assert_eq!(r.chi, euler_expected(&spec, Sheaf::Normal, r.k));
            assert_eq!(r.h.len(), 2);
        }
    }

    #[test]
    fn tangent_large_k() {
        let t = table(&quadric(), Sheaf::Tangent, 20, 20).unwrap();
        assert_eq!(t.rows[0].h[0], 0);
        assert_eq!(t.rows[0].h[1], 0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn routes_agree(monos in prop::collection::btree_set(0usize..10, 1..5)) {
            let b = basis(2, 3);
            let exps: Vec<Vec<u32>> = monos.iter().map(|&i| b.get(i).exponents().to_vec()).collect();
            let spec = MapSpec::from_monomials(2, 3, &exps).unwrap();
            for chi in 0..=3i64 {
                let k = chi + 6;
                if chi >= 1 {
                    prop_assert_eq!(h1_normal_kernel_route(&spec, k).unwrap(), h1_normal(&spec, k));
                }
                let t1 = h1_tangent(&spec, k).unwrap();
                prop_assert_eq!(h1_tangent_intersection_route(&spec, k).unwrap(), t1);
                prop_assert_eq!(corank_phi(&spec, chi as usize), t1);
            }
        }
    }
}
