//! Invariants checked on random inputs over small fields.

use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rmlab::gf::{fqn, Elem, Field};
use rmlab::io::{
    code_from_json, code_to_json, field_from_json, field_to_json, linpoly_from_json, linpoly_to_json,
    subspace_from_json, subspace_to_json,
};
use rmlab::linalg::FqMat;
use rmlab::linpoly::LinPoly;
use rmlab::linset::{is_h_scattered, is_scattered, linear_set, random_subspace, Subspace};
use rmlab::rmcode::{
    adjoint_code, delsarte_dual, left_idealiser, mrd_weight_distribution, right_idealiser, verify, Code, EnumOptions,
    MatrixCode, SquareCode,
};

const FIELDS: [(u32, u32); 6] = [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2)];

fn field_strategy() -> impl Strategy<Value = Arc<Field>> {
    (0..FIELDS.len()).prop_map(|i| fqn(FIELDS[i].0, FIELDS[i].1).unwrap())
}

/// A field with a list of `count` random q-polynomials drawn from `seed`.
fn polys(f: &Field, count: usize, seed: u64) -> Vec<LinPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| LinPoly::new((0..f.n()).map(|_| Elem(rand::Rng::gen_range(&mut rng, 0..f.order()))).collect()))
        .collect()
}

fn square_code(f: &Arc<Field>, count: usize, seed: u64) -> Option<SquareCode> {
    SquareCode::span(f, &polys(f, count, seed)).ok()
}

fn subspace(f: &Arc<Field>, r: usize, k: usize, seed: u64) -> Subspace {
    random_subspace(f, r, k.min(r * f.n()), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn frobenius_is_a_field_automorphism(f in field_strategy(), a in any::<u32>(), b in any::<u32>(), s in 0i64..6) {
        let (a, b) = (Elem(a % f.order()), Elem(b % f.order()));
        prop_assert_eq!(f.frob(f.mul(a, b), s), f.mul(f.frob(a, s), f.frob(b, s)));
        prop_assert_eq!(f.frob(f.add(a, b), s), f.add(f.frob(a, s), f.frob(b, s)));
        prop_assert!(f.in_subfield(f.norm(a, 1).unwrap(), 1).unwrap());
        prop_assert!(f.in_subfield(f.trace(a, 1).unwrap(), 1).unwrap());
    }

    #[test]
    fn polynomial_composition_is_matrix_product(f in field_strategy(), seed in any::<u64>()) {
        let p = polys(&f, 2, seed);
        let sf = f.small();
        let lhs = p[0].compose(&f, &p[1]).to_matrix(&f);
        let rhs = p[0].to_matrix(&f).mul(sf, &p[1].to_matrix(&f));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(p[0].adjoint(&f).adjoint(&f), p[0].clone());
        prop_assert_eq!(p[0].adjoint(&f).rank(&f), p[0].rank(&f));
    }

    #[test]
    fn point_weights_partition_the_subspace(f in field_strategy(), r in 2usize..4, k in 1usize..6, seed in any::<u64>()) {
        let u = subspace(&f, r, k, seed);
        let q = f.q() as u128;
        let ls = linear_set(&u, 1 << 20).unwrap();
        let lines: u128 = ls.points.iter().map(|p| (q.pow(p.1 as u32) - 1) / (q - 1)).sum();
        prop_assert_eq!(lines, (q.pow(u.dim() as u32) - 1) / (q - 1));
        let scaled = linear_set(&u.scale(f.primitive()), 1 << 20).unwrap();
        prop_assert_eq!(scaled.weight_spectrum, ls.weight_spectrum);
    }

    #[test]
    fn scattered_subspaces_respect_the_rank_bound(f in field_strategy(), r in 2usize..4, seed in any::<u64>()) {
        let k = r * f.n() / 2 + 1;
        let u = subspace(&f, r, k, seed);
        prop_assert!(!is_scattered(&u, 1 << 20).unwrap());
    }

    #[test]
    fn one_scattered_means_scattered_when_spanning(seed in any::<u64>(), k in 2usize..5) {
        let f = fqn(2, 3).unwrap();
        let u = subspace(&f, 2, k, seed);
        prop_assume!(u.fqn_rank() == 2);
        prop_assert_eq!(is_h_scattered(&u, 1, 1 << 20).unwrap(), is_scattered(&u, 1 << 20).unwrap());
    }

    #[test]
    fn codes_respect_the_singleton_bound(f in field_strategy(), count in 1usize..6, seed in any::<u64>()) {
        prop_assume!(f.order() <= 27);
        let Some(c) = square_code(&f, count, seed) else { return Ok(()) };
        let v = verify(&c.into(), &EnumOptions::default()).unwrap();
        prop_assert!(v.params.log_p_size <= v.params.singleton_log_p());
        prop_assert_eq!(v.mrd, v.params.log_p_size == v.params.singleton_log_p());
        prop_assert_eq!(v.spectrum.distribution.total(), (f.p() as u128).pow(v.params.log_p_size as u32));
    }

    #[test]
    fn delsarte_dual_is_an_involution(f in field_strategy(), count in 1usize..8, seed in any::<u64>()) {
        let Some(c) = square_code(&f, count, seed) else { return Ok(()) };
        let n = f.n();
        let code: Code = c.into();
        let dual = delsarte_dual(&code).unwrap();
        prop_assert_eq!(code.dim() + dual.dim(), n * n);
        if dual.dim() > 0 {
            prop_assert_eq!(delsarte_dual(&dual).unwrap(), code.clone());
        }
        let m: Code = code.to_matrix_code().unwrap().into();
        let mdual = delsarte_dual(&m).unwrap();
        prop_assert_eq!(mdual.dim(), dual.dim());
    }

    #[test]
    fn idealisers_transport_under_transpose_and_duality(f in field_strategy(), count in 1usize..6, seed in any::<u64>()) {
        let Some(c) = square_code(&f, count, seed) else { return Ok(()) };
        let code: Code = c.into();
        let m = code.to_matrix_code().unwrap();
        let (l, r) = (left_idealiser(&code).unwrap().dim(), right_idealiser(&code).unwrap().dim());
        let t: Code = m.transpose().into();
        prop_assert_eq!(left_idealiser(&t).unwrap().dim(), r);
        prop_assert_eq!(right_idealiser(&t).unwrap().dim(), l);
        let adj = adjoint_code(&code).unwrap();
        prop_assert_eq!(left_idealiser(&adj).unwrap().dim(), r);
        let dual = delsarte_dual(&Code::Matrix(m)).unwrap();
        if dual.dim() > 0 {
            prop_assert_eq!(left_idealiser(&dual).unwrap().dim(), l);
            prop_assert_eq!(right_idealiser(&dual).unwrap().dim(), r);
        }
    }

    #[test]
    fn mrd_distributions_count_the_whole_code(m in 1u32..5, n in 1u32..5, q in prop::sample::select(vec![2u32, 3, 4, 5]), d in 1u32..5) {
        let (lo, hi) = (m.min(n), m.max(n));
        prop_assume!(d <= lo);
        let counts = mrd_weight_distribution(m, n, q, d).unwrap();
        let total: u128 = counts.iter().sum();
        prop_assert_eq!(total, (q as u128).pow(hi * (lo - d + 1)));
        prop_assert!(counts[1..d as usize].iter().all(|&c| c == 0));
    }

    #[test]
    fn documents_round_trip(f in field_strategy(), count in 1usize..6, r in 1usize..4, k in 1usize..5, seed in any::<u64>()) {
        let g0 = field_from_json(&field_to_json(&f)).unwrap();
        prop_assert_eq!(g0.spec(), f.spec());
        let p = polys(&f, 1, seed).remove(0);
        let (g, back) = linpoly_from_json(&linpoly_to_json(&f, &p)).unwrap();
        prop_assert_eq!(g.spec(), f.spec());
        prop_assert_eq!(back, p);
        if let Some(c) = square_code(&f, count, seed) {
            let code: Code = c.into();
            prop_assert_eq!(code_from_json(&code_to_json(&code)).unwrap(), code.clone());
            let m: Code = code.to_matrix_code().unwrap().into();
            prop_assert_eq!(code_from_json(&code_to_json(&m)).unwrap(), m);
        }
        let u = subspace(&f, r, k, seed);
        prop_assert_eq!(subspace_from_json(&subspace_to_json(&u)).unwrap(), u);
    }

    #[test]
    fn rectangular_codes_round_trip_and_dualise(rows in 1usize..4, cols in 1usize..4, count in 1usize..5, seed in any::<u64>()) {
        let f = fqn(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mats: Vec<FqMat> = (0..count)
            .map(|_| FqMat::from_data(rows, cols, (0..rows * cols).map(|_| rand::Rng::gen_range(&mut rng, 0..3u8)).collect()))
            .collect();
        let Ok(c) = MatrixCode::span(&f, rows, cols, &mats) else { return Ok(()) };
        let code: Code = c.into();
        prop_assert_eq!(code_from_json(&code_to_json(&code)).unwrap(), code.clone());
        let dual = delsarte_dual(&code).unwrap();
        prop_assert_eq!(dual.dim() + code.dim(), rows * cols);
    }
}
