use std::collections::BTreeSet;
use std::path::PathBuf;
use std::sync::Arc;

use proptest::prelude::*;
use projinj::algcore::blocks;
use projinj::exactlin::congruent_diagonalize;
use projinj::format::{load, parse_quiver};
use projinj::gmod::socular_set;
use projinj::quiver::build_algebra;
use projinj::{Field, GradedAlgebra, LaurentPoly, Matrix};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FIXTURES: &[&str] = &[
    "kx2.alg",
    "exterior2.alg",
    "qplane_2.alg",
    "nakayama_c2.quiver",
    "sl2_principal.quiver",
    "zigzag_a2.quiver",
    "zigzag_a3_signed.quiver",
    "zigzag_a2_plus_nakayama_c2.quiver",
    "a2_line.quiver",
];

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn fixture(name: &str) -> GradedAlgebra {
    load(&fixture_path(name), None).unwrap()
}

fn shuffled(n: usize, seed: u64) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    v
}

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rationals), Just(Field::Prime(7))]
}

fn matrix() -> impl Strategy<Value = Matrix> {
    (field(), 1usize..5, 1usize..6).prop_flat_map(|(k, r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, c), r)
            .prop_map(move |rows| Matrix::from_rows(k, rows.iter().map(|row| row.iter().map(|&x| k.from_i64(x)).collect()).collect()))
    })
}

fn block_names(a: &GradedAlgebra) -> BTreeSet<BTreeSet<String>> {
    blocks(a).into_iter().map(|b| b.into_iter().map(|l| a.lambda_name(l).to_string()).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(m in matrix()) {
        let ker = m.kernel();
        prop_assert_eq!(m.rank() + ker.cols(), m.cols());
        prop_assert!(m.mul(&ker).is_zero());
    }

    #[test]
    fn solve_recovers_image(m in matrix(), seed in any::<u64>()) {
        let k = m.field();
        let x: Vec<_> = shuffled(m.cols(), seed).iter().map(|&i| k.from_i64(i as i64 - 2)).collect();
        let b = m.mul_vec(&x);
        let y = m.solve(&b).unwrap().unwrap();
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn inverse_is_two_sided(m in matrix()) {
        if let Some(inv) = m.inverse() {
            let id = Matrix::identity(m.field(), m.rows());
            prop_assert_eq!(m.mul(&inv), id.clone());
            prop_assert_eq!(inv.mul(&m), id);
        } else {
            prop_assert!(!m.is_invertible());
        }
    }

    #[test]
    fn left_inverse_of_full_column_rank(m in matrix()) {
        match m.left_inverse() {
            Some(l) => prop_assert_eq!(l.mul(&m), Matrix::identity(m.field(), m.cols())),
            None => prop_assert!(m.rank() < m.cols()),
        }
    }

    #[test]
    fn congruence_diagonalizes(m in matrix()) {
        let s = m.transpose().mul(&m);
        let (p, diag) = congruent_diagonalize(&s).unwrap();
        prop_assert!(p.is_invertible());
        let d = p.transpose().mul(&s).mul(&p);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let expected = if i == j { diag[i].clone() } else { s.field().zero() };
                prop_assert_eq!(d.get(i, j), &expected);
            }
        }
    }

    #[test]
    fn laurent_json_round_trip(terms in prop::collection::vec((-6i32..6, -4i64..4), 0..6)) {
        let p = LaurentPoly::from_terms(terms);
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<LaurentPoly>(&json).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn blocks_ignore_basis_order(i in 0..FIXTURES.len(), seed in any::<u64>()) {
        let a = fixture(FIXTURES[i]);
        let b = a.permute_basis(&shuffled(a.dim(), seed)).unwrap();
        prop_assert!(projinj::validate(&b).ok());
        prop_assert_eq!(block_names(&a), block_names(&b));
    }

    #[test]
    fn opposite_is_an_involution(i in 0..FIXTURES.len()) {
        let a = fixture(FIXTURES[i]);
        prop_assert_eq!(a.opposite().opposite(), a);
    }

    #[test]
    fn socular_set_ignores_simple_order(i in 0..FIXTURES.len(), seed in any::<u64>()) {
        let a = Arc::new(fixture(FIXTURES[i]));
        let b = Arc::new(a.permute_lambda(&shuffled(a.lambda_count(), seed)).unwrap());
        let (sa, sb) = (socular_set(&a).unwrap(), socular_set(&b).unwrap());
        let named = |x: &GradedAlgebra, s: &projinj::gmod::SocularData| -> BTreeSet<(String, String, i32)> {
            s.lambda0
                .iter()
                .map(|&l| (x.lambda_name(l).to_string(), x.lambda_name(s.primed[&l]).to_string(), s.top_degrees[l]))
                .collect()
        };
        prop_assert_eq!(named(&a, &sa), named(&b, &sb));
        prop_assert_eq!(sa.is_involution, sb.is_involution);
    }

    #[test]
    fn relation_order_is_irrelevant(seed in any::<u64>()) {
        for name in ["zigzag_a3_signed.quiver", "zigzag_a2_plus_nakayama_c2.quiver"] {
            let text = std::fs::read_to_string(fixture_path(name)).unwrap();
            let q = parse_quiver(&text, None).unwrap();
            let mut r = q.clone();
            let order = shuffled(q.relations.len(), seed);
            r.relations = order.iter().map(|&j| q.relations[j].clone()).collect();
            prop_assert_eq!(build_algebra(&q).unwrap(), build_algebra(&r).unwrap());
        }
    }
}
