use num_bigint::BigInt;
use proptest::prelude::*;
use weylrank::rep_ring::LaurentPoly;
use weylrank::{Weight, WeylElement, WeylGroup};

const SPECS: [&str; 5] = ["A1", "A2", "B2", "C3", "A1xT1"];

fn group(k: usize) -> WeylGroup {
    WeylGroup::from_spec(SPECS[k]).unwrap()
}

fn element(g: &WeylGroup, raw: u32) -> WeylElement {
    WeylElement(raw % g.order() as u32)
}

fn weight(g: &WeylGroup, raw: &[i64]) -> Weight {
    Weight(raw.iter().copied().take(g.datum().lattice_rank).collect())
}

fn laurent(g: &WeylGroup, terms: &[(Vec<i64>, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().map(|(e, c)| (weight(g, e), BigInt::from(*c))))
}

fn terms() -> impl Strategy<Value = Vec<(Vec<i64>, i64)>> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, 3), -4i64..=4), 0..5)
}

proptest! {
    #[test]
    fn action_is_a_group_action(k in 0usize..5, a in any::<u32>(), b in any::<u32>(), raw in prop::collection::vec(-5i64..=5, 3)) {
        let g = group(k);
        let (a, b) = (element(&g, a), element(&g, b));
        let lam = weight(&g, &raw);
        let lhs = g.act(g.mul(a, b), &lam).unwrap();
        let rhs = g.act(a, &g.act(b, &lam).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(g.act(g.identity(), &lam).unwrap(), lam);
    }

    #[test]
    fn inverse_and_length(k in 0usize..5, a in any::<u32>()) {
        let g = group(k);
        let a = element(&g, a);
        prop_assert_eq!(g.mul(a, g.inv(a)), g.identity());
        prop_assert_eq!(g.length(a), g.length(g.inv(a)));
        prop_assert_eq!(g.length(a), g.word(a).len());
        prop_assert_eq!(g.parse_word(&g.word_string(a)).unwrap(), a);
    }

    #[test]
    fn roots_are_permuted(k in 0usize..5, a in any::<u32>()) {
        let g = group(k);
        let a = element(&g, a);
        for r in g.datum().roots() {
            prop_assert!(g.datum().is_root(&g.act(a, &r).unwrap()));
        }
    }

    #[test]
    fn laurent_action_is_ring_homomorphism(k in 0usize..5, w in any::<u32>(), p in terms(), q in terms()) {
        let g = group(k);
        let w = element(&g, w);
        let (p, q) = (laurent(&g, &p), laurent(&g, &q));
        prop_assert_eq!((&p * &q).act(&g, w), &p.act(&g, w) * &q.act(&g, w));
        prop_assert_eq!((&p + &q).act(&g, w), &p.act(&g, w) + &q.act(&g, w));
    }

    #[test]
    fn laurent_ring_axioms(k in 0usize..5, p in terms(), q in terms(), r in terms()) {
        let g = group(k);
        let (p, q, r) = (laurent(&g, &p), laurent(&g, &q), laurent(&g, &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn exact_division_recovers_factor(k in 0usize..5, p in terms(), q in terms()) {
        let g = group(k);
        let (p, q) = (laurent(&g, &p), laurent(&g, &q));
        prop_assume!(!q.is_zero());
        prop_assert_eq!((&p * &q).exact_div(&q), Some(p));
    }
}
