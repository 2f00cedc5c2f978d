use proptest::prelude::*;

use jacpair::corners::{b2_brute_force, b2_construct, b2_decide};
use jacpair::corpus::{random_pairs, CorpusShape};
use jacpair::field::FieldElem;
use jacpair::intersection::{resultant_y, sum_degrees_at_roots};
use jacpair::laurent::{ExponentPair, LaurentPoly};
use jacpair::piroot::{build_tree, check_degree_invariance, check_lambda_monotone, count_by_expansion, enumerate_final, XiPolicy};
use jacpair::text::{parse_poly, print_poly};
use jacpair::Exp;

fn small_shape(gaussian: bool) -> CorpusShape {
    CorpusShape { max_deg_y: 3, max_deg_x: 3, max_terms: 3, coeff_bound: 2, gaussian }
}

fn pair(seed: u64, gaussian: bool) -> (LaurentPoly, LaurentPoly) {
    random_pairs(seed, 1, &small_shape(gaussian)).unwrap().remove(0)
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    let term = (-9i64..=9, 1i64..=5, -6i64..=6, 1i64..=3, 0i64..=4);
    prop::collection::vec(term, 0..6).prop_map(|ts| {
        LaurentPoly::from_terms(
            ts.into_iter()
                .filter(|t| t.0 != 0)
                .map(|(n, d, ex, lx, ey)| (ExponentPair::new(Exp::new(ex, lx), ey), FieldElem::from_ratio(n, d))),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn parse_print_round_trip(p in laurent()) {
        let text = print_poly(&p);
        let back = parse_poly(&text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(print_poly(&back), text);
    }

    #[test]
    fn tree_nodes_match_expansions(seed in any::<u64>(), gaussian in any::<bool>()) {
        let (p, q) = pair(seed, gaussian);
        let tree = build_tree(&p).unwrap();
        prop_assert!(check_lambda_monotone(&tree));
        let mut bad = Vec::new();
        tree.walk(&mut |n| {
            if count_by_expansion(&p, &n.root).unwrap() != n.root.count {
                bad.push(n.root.j0);
            }
            if !n.children.is_empty() {
                let sum: usize = n.children.iter().map(|c| c.root.count * c.weight).sum();
                if sum != n.root.count * n.weight {
                    bad.push(n.root.j0);
                }
            }
            if !check_degree_invariance(&p, &n.root, 2, &[]).unwrap() {
                bad.push(n.root.j0);
            }
        });
        prop_assert!(bad.is_empty(), "P = {}, nodes {:?}", p, bad);
        let e = enumerate_final(&p, Some(&q), &XiPolicy::Auto(16)).unwrap();
        prop_assert_eq!(e.covered() as i64, p.deg_y().unwrap());
    }

    #[test]
    fn resultant_degree_matches_roots(seed in any::<u64>()) {
        let (p, q) = pair(seed, true);
        let res = resultant_y(&p, &q).unwrap();
        prop_assert_eq!(sum_degrees_at_roots(&p, &q).unwrap(), res.deg_x().unwrap());
    }

    #[test]
    fn resultant_is_multiplicative(seed in any::<u64>()) {
        let (p, q) = pair(seed, false);
        let (_, r) = pair(seed.wrapping_add(1), false);
        let lhs = resultant_y(&p, &q.try_mul(&r).unwrap()).unwrap();
        let rhs = resultant_y(&p, &q).unwrap().try_mul(&resultant_y(&p, &r).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn b2_decision_and_witnesses(l in 1i64..=5, extra in 1i64..=40) {
        let a = 2 * l + extra;
        let deltas = b2_decide(a, l).unwrap();
        prop_assert_eq!(&deltas, &b2_brute_force(a, l));
        for d in deltas {
            let w = b2_construct(a, l, d).unwrap();
            prop_assert!(w.verified(), "{:?}", w.checks);
        }
    }
}
