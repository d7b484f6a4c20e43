//! Monomial maps of `P^2`: `T` is a set of exponent triples `(α, β, γ)`
//! with `α + β + γ = d`, i.e. vertices of the triangle graph `Δ_d`, where
//! two triples are adjacent when one unit moves between two coordinates.
//!
//! The shortcuts here recognise a few shapes of `T` and answer `None`
//! otherwise; the linear algebra in [`crate::operators`] always applies.

use std::collections::BTreeSet;
use std::fmt;

use crate::cohomology::MapSpec;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple(pub u32, pub u32, pub u32);

impl Triple {
    pub fn degree(&self) -> u32 {
        self.0 + self.1 + self.2
    }

    pub fn coords(&self) -> [u32; 3] {
        [self.0, self.1, self.2]
    }

    pub fn from_coords(c: [u32; 3]) -> Self {
        Triple(c[0], c[1], c[2])
    }

    /// On a side of `Δ_d`: some coordinate is zero.
    pub fn on_side(&self) -> bool {
        self.coords().contains(&0)
    }

    /// A vertex of `Δ_d`: two coordinates are zero.
    pub fn is_corner(&self) -> bool {
        self.coords().iter().filter(|&&c| c == 0).count() >= 2
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0, self.1, self.2)
    }
}

/// Graph distance in `Δ_d`: half the `L^1` distance.
pub fn graph_distance(a: &Triple, b: &Triple) -> Result<u32> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch(format!("{a} and {b} have different degrees")));
    }
    let l1: u32 = a.coords().iter().zip(b.coords()).map(|(x, y)| x.abs_diff(y)).sum();
    Ok(l1 / 2)
}

/// The monomial generators of `T` for a map of `P^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleT {
    d: u32,
    triples: BTreeSet<Triple>,
}

impl TriangleT {
    pub fn new(d: u32, triples: impl IntoIterator<Item = Triple>) -> Result<Self> {
        let triples: BTreeSet<Triple> = triples.into_iter().collect();
        if triples.is_empty() {
            return Err(Error::InvalidSpec("T needs at least one monomial".into()));
        }
        if let Some(t) = triples.iter().find(|t| t.degree() != d) {
            return Err(Error::DegreeMismatch(format!("{t} does not have degree {d}")));
        }
        Ok(TriangleT { d, triples })
    }

    /// The triples of a monomial map of `P^2`, if `spec` is one.
    pub fn from_spec(spec: &MapSpec) -> Option<Self> {
        if spec.n() != 2 {
            return None;
        }
        let monos = spec.t_monomials()?;
        let triples = monos.iter().map(|m| {
            let e = m.exponents();
            Triple(e[0], e[1], e[2])
        });
        TriangleT::new(spec.d() as u32, triples).ok()
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn triples(&self) -> &BTreeSet<Triple> {
        &self.triples
    }

    pub fn exponents(&self) -> Vec<Vec<u32>> {
        self.triples.iter().map(|t| t.coords().to_vec()).collect()
    }

    pub fn to_spec(&self) -> Result<MapSpec> {
        MapSpec::from_monomials(2, self.d as usize, &self.exponents())
    }

    fn min_pairwise_distance(&self) -> Option<u32> {
        let v: Vec<&Triple> = self.triples.iter().collect();
        (0..v.len())
            .flat_map(|i| ((i + 1)..v.len()).map(move |j| (i, j)))
            .map(|(i, j)| graph_distance(v[i], v[j]).expect("same degree"))
            .min()
    }

    fn has_corner(&self) -> bool {
        self.triples.iter().any(Triple::is_corner)
    }

    /// Connected components under adjacency (distance 1).
    fn components(&self) -> Vec<Vec<Triple>> {
        let mut left: Vec<Triple> = self.triples.iter().copied().collect();
        let mut out = Vec::new();
        while let Some(seed) = left.pop() {
            let mut comp = vec![seed];
            let mut i = 0;
            while i < comp.len() {
                let cur = comp[i];
                let (near, far): (Vec<Triple>, Vec<Triple>) =
                    left.into_iter().partition(|t| graph_distance(t, &cur).expect("same degree") == 1);
                comp.extend(near);
                left = far;
                i += 1;
            }
            comp.sort();
            out.push(comp);
        }
        out
    }
}

/// Triples violating `α, β, γ <= d - 2`, a necessary condition for the
/// map to be an embedding.
pub fn smoothness_necessary(t: &TriangleT) -> Vec<Triple> {
    let bound = t.d.saturating_sub(2);
    t.triples.iter().filter(|x| x.coords().iter().any(|&c| c > bound)).copied().collect()
}

/// `dim ∂T = 3a + 2b` (`a` interior generators, `b` on the sides) when all
/// generators are pairwise at distance at least 2 and none is a corner.
pub fn fast_dim_partial_t(t: &TriangleT) -> Option<usize> {
    if t.has_corner() || t.min_pairwise_distance().is_some_and(|m| m < 2) {
        return None;
    }
    Some(t.triples.iter().map(|x| if x.on_side() { 2 } else { 3 }).sum())
}

/// `dim ∂^{-1}T` for `T` a disjoint union of isolated generators, interior
/// triangles `{m - e_x, m - e_y, m - e_z}` and adjacent pairs on a common
/// side. Each triangle and each pair contributes one; anything else
/// (including corners) gives `None`.
pub fn fast_dim_inv_partial_t(t: &TriangleT) -> Option<usize> {
    if t.has_corner() {
        return None;
    }
    let mut total = 0;
    for comp in t.components() {
        match comp.len() {
            1 => {}
            2 => {
                let shared = (0..3).any(|i| comp[0].coords()[i] == 0 && comp[1].coords()[i] == 0);
                if !shared {
                    return None;
                }
                total += 1;
            }
            3 => {
                let top: [u32; 3] = std::array::from_fn(|i| comp.iter().map(|x| x.coords()[i]).max().unwrap());
                if top.iter().sum::<u32>() != t.d + 1 || top.contains(&0) {
                    return None;
                }
                let downs: BTreeSet<Triple> = (0..3)
                    .map(|i| {
                        let mut c = top;
                        c[i] -= 1;
                        Triple::from_coords(c)
                    })
                    .collect();
                if downs != comp.iter().copied().collect() {
                    return None;
                }
                total += 1;
            }
            _ => return None,
        }
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{inv_partial_t, partial_t};
    use proptest::prelude::*;

    fn tt(d: u32, v: &[(u32, u32, u32)]) -> TriangleT {
        TriangleT::new(d, v.iter().map(|&(a, b, c)| Triple(a, b, c))).unwrap()
    }

    fn dims(t: &TriangleT) -> (usize, usize) {
        let spec = t.to_spec().unwrap();
        (partial_t(spec.t()).unwrap().dim(), inv_partial_t(spec.t(), 1).unwrap().dim())
    }

    #[test]
    fn distance_examples() {
        let a = Triple(1, 1, 1);
        assert_eq!(graph_distance(&a, &a).unwrap(), 0);
        assert_eq!(graph_distance(&a, &Triple(2, 0, 1)).unwrap(), 1);
        assert_eq!(graph_distance(&Triple(3, 0, 0), &Triple(0, 3, 0)).unwrap(), 3);
        assert!(graph_distance(&a, &Triple(1, 1, 2)).is_err());
    }

    #[test]
    fn smoothness_examples() {
        assert!(smoothness_necessary(&tt(3, &[(1, 1, 1)])).is_empty());
        assert_eq!(smoothness_necessary(&tt(3, &[(3, 0, 0), (1, 1, 1)])), vec![Triple(3, 0, 0)]);
        assert_eq!(smoothness_necessary(&tt(4, &[(3, 1, 0)])), vec![Triple(3, 1, 0)]);
    }

    #[test]
    fn partial_examples() {
        assert_eq!(fast_dim_partial_t(&tt(3, &[(1, 1, 1)])), Some(3));
        assert_eq!(fast_dim_partial_t(&tt(3, &[(0, 2, 1)])), Some(2));
        assert_eq!(fast_dim_partial_t(&tt(4, &[(1, 1, 2), (2, 1, 1)])), None);
        assert_eq!(fast_dim_partial_t(&tt(3, &[(3, 0, 0)])), None);
        assert_eq!(dims(&tt(3, &[(0, 2, 1)])).0, 2);
    }

    #[test]
    fn inv_partial_examples() {
        assert_eq!(fast_dim_inv_partial_t(&tt(3, &[(1, 1, 1)])), Some(0));
        // triangle under m = (2, 2, 2)
        let tri = tt(5, &[(1, 2, 2), (2, 1, 2), (2, 2, 1)]);
        assert_eq!(fast_dim_inv_partial_t(&tri), Some(1));
        assert_eq!(dims(&tri).1, 1);
        let pair = tt(5, &[(0, 3, 2), (0, 4, 1)]);
        assert_eq!(fast_dim_inv_partial_t(&pair), Some(1));
        assert_eq!(dims(&pair).1, 1);
        // a path of three is not recognised
        assert_eq!(fast_dim_inv_partial_t(&tt(5, &[(1, 2, 2), (2, 1, 2), (3, 0, 2)])), None);
        assert_eq!(fast_dim_inv_partial_t(&tt(3, &[(3, 0, 0)])), None);
        // adjacent but on different sides
        assert_eq!(fast_dim_inv_partial_t(&tt(3, &[(0, 2, 1), (1, 2, 0)])), None);
    }

    #[test]
    fn mixed_pattern() {
        let t = tt(7, &[(1, 2, 4), (2, 1, 4), (2, 2, 3), (0, 6, 1), (0, 5, 2), (4, 2, 1), (5, 0, 2)]);
        assert_eq!(fast_dim_inv_partial_t(&t), Some(2));
        assert_eq!(dims(&t).1, 2);
    }

    fn permute(t: Triple, p: [usize; 3]) -> Triple {
        let c = t.coords();
        Triple(c[p[0]], c[p[1]], c[p[2]])
    }

    fn arb_triple(d: u32) -> impl Strategy<Value = Triple> {
        (0..=d).prop_flat_map(move |a| (0..=(d - a)).prop_map(move |b| Triple(a, b, d - a - b)))
    }

    proptest! {
        #[test]
        fn distance_is_a_metric(a in arb_triple(6), b in arb_triple(6), c in arb_triple(6)) {
            let ab = graph_distance(&a, &b).unwrap();
            prop_assert_eq!(ab, graph_distance(&b, &a).unwrap());
            prop_assert_eq!(ab == 0, a == b);
            prop_assert!(graph_distance(&a, &c).unwrap() <= ab + graph_distance(&b, &c).unwrap());
            for p in [[1, 0, 2], [2, 1, 0], [1, 2, 0]] {
                prop_assert_eq!(graph_distance(&permute(a, p), &permute(b, p)).unwrap(), ab);
            }
        }

        #[test]
        fn smoothness_is_symmetric(v in prop::collection::vec(arb_triple(5), 1..5), p in Just([2usize, 0, 1])) {
            let t = TriangleT::new(5, v.clone()).unwrap();
            let tp = TriangleT::new(5, v.iter().map(|&x| permute(x, p))).unwrap();
            let bad: BTreeSet<Triple> = smoothness_necessary(&t).into_iter().map(|x| permute(x, p)).collect();
            prop_assert_eq!(bad, smoothness_necessary(&tp).into_iter().collect());
        }

        #[test]
        fn fast_paths_match(v in prop::collection::vec(arb_triple(5), 1..6)) {
            let t = TriangleT::new(5, v).unwrap();
            if t.triples().len() < 21 {
                let (dp, di) = dims(&t);
                if let Some(f) = fast_dim_partial_t(&t) {
                    prop_assert_eq!(f, dp);
                }
                if let Some(f) = fast_dim_inv_partial_t(&t) {
                    prop_assert_eq!(f, di);
                }
            }
        }
    }
}
