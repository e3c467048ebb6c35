use proptest::prelude::*;

use oddkh::cube::Theory;
use oddkh::complex::odd_complex;
use oddkh::linalg::{elementary_divisors, smith_normal_form, IntMatrix};
use oddkh::linkdiag::{braid_closure, insert_kink, parse_pd};
use oddkh::oracles::{even_khovanov_mod2, kauffman_bracket};

fn matrix() -> impl Strategy<Value = (usize, usize, Vec<(usize, usize, i64)>)> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        let entries = proptest::collection::vec((0..r, 0..c, -4i64..=4), 0..(r * c + 1));
        (Just(r), Just(c), entries)
    })
}

fn braid_word() -> impl Strategy<Value = Vec<i32>> {
    proptest::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2)], 1..7)
}

fn nonzero(m: std::collections::BTreeMap<(i32, i32), usize>) -> Vec<((i32, i32), usize)> {
    m.into_iter().filter(|(_, r)| *r > 0).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn snf_is_invariant_under_signed_permutations((r, c, e) in matrix(), seed in any::<u64>()) {
        let a = IntMatrix::from_small(r, c, e.iter().copied());
        let pr: Vec<usize> = (0..r).map(|i| (i + seed as usize) % r).collect();
        let pc: Vec<usize> = (0..c).rev().collect();
        let flip = |i: usize| if (seed >> (i % 64)) & 1 == 1 { -1 } else { 1 };
        let b = IntMatrix::from_small(r, c, e.iter().map(|&(i, j, v)| (pr[i], pc[j], v * flip(i))));
        prop_assert_eq!(elementary_divisors(&a), elementary_divisors(&b));
    }

    #[test]
    fn snf_factorization_holds((r, c, e) in matrix()) {
        let a = IntMatrix::from_small(r, c, e);
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(r));
        prop_assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(c));
        prop_assert!(s.divisors.windows(2).all(|w| (&w[1] % &w[0]) == 0u8.into()));
    }

    #[test]
    fn braid_closures_match_the_oracles(word in braid_word()) {
        let d = braid_closure(3, &word).unwrap();
        let c = odd_complex(&d, Theory::Y).unwrap();
        c.check_d_squared().unwrap();
        prop_assert_eq!(c.graded_euler_characteristic(), kauffman_bracket(&d));
        prop_assert_eq!(nonzero(c.reduce_coefficients(2).unwrap()), nonzero(even_khovanov_mod2(&d)));
        prop_assert_eq!(c.homology(), odd_complex(&d, Theory::X).unwrap().homology());
    }

    #[test]
    fn kinks_do_not_change_homology(word in braid_word(), pick in any::<usize>(), positive in any::<bool>()) {
        let d = braid_closure(3, &word).unwrap();
        let arcs = d.arcs().to_vec();
        let k = insert_kink(&d, arcs[pick % arcs.len()], if positive { 1 } else { -1 }).unwrap();
        let h = odd_complex(&d, Theory::Y).unwrap().homology();
        prop_assert_eq!(h, odd_complex(&k, Theory::Y).unwrap().homology());
    }

    #[test]
    fn pd_text_round_trips(word in braid_word()) {
        let d = braid_closure(3, &word).unwrap();
        let text = serde_json::to_string(&d.spec()).unwrap();
        prop_assert_eq!(parse_pd(&text).unwrap().spec(), d.spec());
    }
}
