use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use verocohom::branch::{divisorial_degree, jacobian, maximal_minors, proportional};
use verocohom::cohomology::{h1_normal, h1_tangent, row, MapSpec, Sheaf};
use verocohom::exactla::{kernel_basis, rat, Ambient};
use verocohom::operators::{inv_partial_t, ker_dd};
use verocohom::symspace::basis;
use verocohom::{MultiIndex, QMatrix, QPoly, Rational, Side, Subspace};

fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = QMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(-2i64..=2, r * c).prop_map(move |v| QMatrix::from_fn(r, c, |i, j| rat(v[i * c + j])))
    })
}

fn arb_subspace(dim: usize) -> impl Strategy<Value = Subspace> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, dim), 0..=dim).prop_map(move |vs| {
        let vs: Vec<Vec<Rational>> = vs.into_iter().map(|v| v.into_iter().map(rat).collect()).collect();
        Subspace::from_spanning(Ambient::Plain, dim, vs).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_of_transpose(m in arb_matrix(6, 6)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_nullity(m in arb_matrix(6, 7)) {
        prop_assert_eq!(kernel_basis(&m).dim() + m.rank(), m.cols());
    }

    #[test]
    fn intersection_commutes(a in arb_subspace(5), b in arb_subspace(5)) {
        prop_assert_eq!(a.intersect(&b).unwrap(), b.intersect(&a).unwrap());
    }

    #[test]
    fn grassmann_identity(a in arb_subspace(6), b in arb_subspace(6)) {
        let meet = a.intersect(&b).unwrap();
        prop_assert_eq!(meet.dim(), a.intersection_dim(&b).unwrap());
        prop_assert_eq!(a.dim() + b.dim(), meet.dim() + a.sum(&b).unwrap().dim());
    }
}

fn x(e: &[u32], c: i64) -> QPoly {
    QPoly::monomial(Side::Primal, MultiIndex::new(e.to_vec()), rat(c))
}

fn random_invertible(rng: &mut ChaCha8Rng) -> QMatrix {
    loop {
        let m = QMatrix::from_fn(4, 4, |_, _| rat(rng.gen_range(-3..=3)));
        if m.rank() == 4 {
            return m;
        }
    }
}

#[test]
fn divisorial_degree_ignores_basis_of_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let families: Vec<Vec<QPoly>> = vec![
        vec![x(&[2, 0, 0], 1), x(&[0, 2, 0], 1), x(&[0, 0, 2], 1), x(&[1, 1, 0], 2)],
        vec![x(&[3, 0, 0], 1), x(&[0, 3, 0], 1), x(&[0, 0, 3], 1), x(&[2, 1, 0], 3)],
        vec![x(&[4, 0, 0], 1), x(&[0, 4, 0], 1), x(&[0, 0, 4], 1), x(&[1, 1, 2], 1)],
    ];
    for forms in families {
        let (h, g) = divisorial_degree(&maximal_minors(&jacobian(&forms).unwrap()).unwrap()).unwrap();
        for _ in 0..4 {
            let a = random_invertible(&mut rng);
            let mixed: Vec<QPoly> = (0..4)
                .map(|i| (0..4).fold(QPoly::zero(3, Side::Primal), |acc, j| &acc + &forms[j].scale(a.get(i, j))))
                .collect();
            let (h2, g2) = divisorial_degree(&maximal_minors(&jacobian(&mixed).unwrap()).unwrap()).unwrap();
            assert_eq!(h, h2);
            assert!(proportional(&g, &g2), "{g} vs {g2}");
        }
    }
}

fn random_monomial_spec(rng: &mut ChaCha8Rng, d: usize, size: usize) -> MapSpec {
    let all: Vec<Vec<u32>> = basis(2, d).iter().map(|m| m.exponents().to_vec()).collect();
    let mut chosen: Vec<Vec<u32>> = Vec::new();
    while chosen.len() < size {
        let m = all[rng.gen_range(0..all.len())].clone();
        if !chosen.contains(&m) {
            chosen.push(m);
        }
    }
    MapSpec::from_monomials(2, d, &chosen).unwrap()
}

#[test]
fn vanishing_corollaries() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let d = rng.gen_range(2..=3);
        let size = rng.gen_range(1..=3);
        let spec = random_monomial_spec(&mut rng, d, size);
        for chi in 0..=d {
            let k = (chi + d + 3) as i64;
            if inv_partial_t(spec.t(), chi).unwrap().dim() == 0 {
                assert_eq!(row(&spec, Sheaf::Tangent, k, false).unwrap().h[1], 0);
            }
            if chi >= 1 && ker_dd(chi, d, 2).unwrap().dim() == 0 {
                assert_eq!(row(&spec, Sheaf::Normal, k, false).unwrap().h[1], 0);
            }
        }
    }
}

#[test]
fn generic_t_minimizes_h1() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let d = 3;
    let generic = {
        let polys: Vec<QPoly> = (0..2)
            .map(|_| {
                QPoly::from_terms(3, Side::Primal, basis(2, d).iter().map(|m| (m.clone(), rat(rng.gen_range(-5..=5)))))
            })
            .collect();
        MapSpec::from_t_polys(2, d, &polys).unwrap()
    };
    assert_eq!(generic.t().dim(), 2);
    let samples: Vec<MapSpec> = (0..10).map(|_| random_monomial_spec(&mut rng, d, 2)).collect();
    for k in 6..=9 {
        let g_normal = h1_normal(&generic, k);
        let g_tangent = h1_tangent(&generic, k).unwrap();
        for s in &samples {
            assert!(g_normal <= h1_normal(s, k));
            assert!(g_tangent <= h1_tangent(s, k).unwrap());
        }
    }
}
