#![allow(clippy::needless_range_loop)]

use lpalg::cluster::{
    acyclic_renumbering, cluster_mutate_word, coeff_mutate, exchange_binomials, is_acyclic, is_sign_skew_symmetric, is_totally_sss,
    matrix_mutate, renumber, skew_symmetrizer, ClusterSeed, CoefficientKind, ExchangeMatrix, TotalSssVerdict,
};
use proptest::prelude::*;

/// `b_ij = s_ij d_j` with `s` skew-symmetric, so `diag(d) B` is skew-symmetric.
fn symmetrizable(n: usize) -> impl Strategy<Value = (ExchangeMatrix, Vec<i64>)> {
    (prop::collection::vec(-2i64..=2, n * (n - 1) / 2), prop::collection::vec(1i64..=3, n)).prop_map(move |(upper, d)| {
        let mut s = vec![vec![0i64; n]; n];
        let mut it = upper.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = it.next().unwrap();
                s[i][j] = v;
                s[j][i] = -v;
            }
        }
        let b = (0..n).map(|i| (0..n).map(|j| s[i][j] * d[j]).collect()).collect();
        (b, d)
    })
}

fn principal(b: ExchangeMatrix) -> ClusterSeed {
    let vars = (1..=b.len()).map(|i| format!("x{i}")).collect();
    ClusterSeed::new(vars, b, CoefficientKind::Principal).unwrap()
}

fn small_matrix() -> impl Strategy<Value = ExchangeMatrix> {
    (2usize..=3).prop_flat_map(symmetrizable).prop_map(|(b, _)| b)
}

/// Entries stay small along short words, which keeps expansions cheap.
fn tame(b: &ExchangeMatrix) -> bool {
    b.iter().flatten().all(|x| x.abs() <= 2)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn matrix_mutation_is_an_involution((b, _) in (2usize..=5).prop_flat_map(symmetrizable), k in 0usize..5) {
        let k = k % b.len();
        prop_assert_eq!(matrix_mutate(&matrix_mutate(&b, k), k), b);
    }

    #[test]
    fn symmetrizer_survives_mutation((b, d) in (2usize..=5).prop_flat_map(symmetrizable), word in prop::collection::vec(0usize..5, 0..=4)) {
        let n = b.len();
        let mut cur = b;
        for k in word {
            cur = matrix_mutate(&cur, k % n);
            prop_assert!(is_sign_skew_symmetric(&cur));
            for i in 0..n {
                for j in 0..n {
                    prop_assert_eq!(d[i] * cur[i][j], -d[j] * cur[j][i]);
                }
            }
        }
        let found = skew_symmetrizer(&cur).expect("symmetrizable");
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(found[i] * cur[i][j], -found[j] * cur[j][i]);
            }
        }
        prop_assert_eq!(is_totally_sss(&cur, 2), TotalSssVerdict::Yes);
    }

    #[test]
    fn coefficient_mutation_is_an_involution(b in small_matrix(), word in prop::collection::vec(0usize..3, 0..=3), k in 0usize..3) {
        let n = b.len();
        let s = principal(b);
        let t = cluster_mutate_word(&s, &word.iter().map(|k| k % n).collect::<Vec<_>>()).unwrap();
        let k = k % n;
        let y1 = coeff_mutate(t.y(), t.matrix(), k);
        let b1 = matrix_mutate(t.matrix(), k);
        prop_assert_eq!(coeff_mutate(&y1, &b1, k), t.y().to_vec());
    }

    #[test]
    fn principal_coefficients_are_sign_coherent(b in small_matrix(), word in prop::collection::vec(0usize..3, 0..=5)) {
        let n = b.len();
        let t = principal(b);
        let (mut y, mut b) = (t.y().to_vec(), t.matrix().clone());
        for k in word {
            y = coeff_mutate(&y, &b, k % n);
            b = matrix_mutate(&b, k % n);
            for y in &y {
                prop_assert!(y.0.iter().all(|&e| e >= 0) || y.0.iter().all(|&e| e <= 0), "{:?}", y);
            }
        }
    }

    #[test]
    fn exchange_binomials_have_two_terms_and_skip_their_variable(b in small_matrix(), word in prop::collection::vec(0usize..3, 0..=3)) {
        let n = b.len();
        let t = cluster_mutate_word(&principal(b), &word.iter().map(|k| k % n).collect::<Vec<_>>()).unwrap();
        for (j, f) in exchange_binomials(&t).iter().enumerate() {
            prop_assert_eq!(f.num_terms(), 2);
            prop_assert!(!f.depends_on(j));
            prop_assert!(f.terms().all(|(m, c)| c == &1.into() && m.exps().iter().all(|&e| e >= 0)));
        }
    }

    #[test]
    fn cluster_mutation_is_an_involution(b in small_matrix(), word in prop::collection::vec(0usize..3, 0..=3), k in 0usize..3) {
        let n = b.len();
        prop_assume!(tame(&b));
        let t = cluster_mutate_word(&principal(b), &word.iter().map(|k| k % n).collect::<Vec<_>>()).unwrap();
        let back = cluster_mutate_word(&t, &[k % n, k % n]).unwrap();
        prop_assert_eq!(back.expansions(), t.expansions());
        prop_assert_eq!(back.y(), t.y());
        prop_assert_eq!(back.matrix(), t.matrix());
    }

    #[test]
    fn cluster_variables_are_laurent(b in small_matrix(), word in prop::collection::vec(0usize..3, 1..=4)) {
        let n = b.len();
        prop_assume!(tame(&b));
        let t = cluster_mutate_word(&principal(b), &word.iter().map(|k| k % n).collect::<Vec<_>>()).unwrap();
        for e in t.expansions() {
            let d = e.den();
            prop_assert!(d.num_terms() == 1, "{}", t.format_root(e));
            prop_assert!(d.terms().all(|(_, c)| c == &1.into() || c == &(-1).into()));
        }
    }

    #[test]
    fn json_round_trip(b in small_matrix(), word in prop::collection::vec(0usize..3, 0..=3)) {
        let n = b.len();
        prop_assume!(tame(&b));
        let t = cluster_mutate_word(&principal(b), &word.iter().map(|k| k % n).collect::<Vec<_>>()).unwrap();
        let back = ClusterSeed::from_json(&t.to_json()).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn acyclic_iff_renumbering((b, _) in (2usize..=6).prop_flat_map(symmetrizable)) {
        let r = acyclic_renumbering(&b);
        prop_assert_eq!(r.is_some(), is_acyclic(&b));
        if let Some(perm) = r {
            let s = renumber(&principal(b), &perm);
            let rb = s.matrix();
            for i in 0..rb.len() {
                for j in 0..i {
                    prop_assert!(rb[i][j] >= 0);
                }
            }
        }
    }
}
