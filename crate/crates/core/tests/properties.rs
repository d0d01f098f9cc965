use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use weylrack::conj_classes::{juxtapose, split};
use weylrack::rack_core::{sq, sq_general_formula};
use weylrack::{Group, SignedPermutation};

fn triple(n: usize, seed: u64) -> (SignedPermutation, SignedPermutation, SignedPermutation) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = Group::b(n);
    (g.random_element(&mut rng), g.random_element(&mut rng), g.random_element(&mut rng))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn conjugation_is_a_rack_operation(n in 1usize..=9, seed in any::<u64>()) {
        let (x, y, z) = triple(n, seed);
        prop_assert_eq!(x.conjugate_by(&x).unwrap(), x);
        let left = z.conjugate_by(&y).unwrap().conjugate_by(&x).unwrap();
        let right = z.conjugate_by(&x).unwrap().conjugate_by(&y.conjugate_by(&x).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let back = y.conjugate_by(&x).unwrap().conjugate_by(&x.inverse()).unwrap();
        prop_assert_eq!(back, y);
    }

    #[test]
    fn text_round_trip(n in 1usize..=12, seed in any::<u64>()) {
        let (x, _, _) = triple(n, seed);
        let parsed: SignedPermutation = x.to_string().parse().unwrap();
        prop_assert_eq!(parsed, x);
        let json = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<SignedPermutation>(&json).unwrap(), x);
    }

    #[test]
    fn order_and_power(n in 1usize..=8, seed in any::<u64>()) {
        let (x, _, _) = triple(n, seed);
        let k = x.order();
        prop_assert!(x.pow(k).is_identity());
        for d in 1..k {
            if k % d == 0 {
                prop_assert!(!x.pow(d).is_identity());
            }
        }
    }

    #[test]
    fn sq_formula_matches(n in 1usize..=8, seed in any::<u64>()) {
        let (x, y, _) = triple(n, seed);
        prop_assert_eq!(sq_general_formula(&x, &y).unwrap(), sq(&x, &y).unwrap());
    }

    #[test]
    fn juxtaposition_is_a_homomorphism(n in 1usize..=5, m in 1usize..=5, s1 in any::<u64>(), s2 in any::<u64>()) {
        let (x1, x2, _) = triple(n, s1);
        let (y1, y2, _) = triple(m, s2);
        let lhs = juxtapose(&x1, &y1).unwrap().multiply(&juxtapose(&x2, &y2).unwrap()).unwrap();
        let rhs = juxtapose(&x1.multiply(&x2).unwrap(), &y1.multiply(&y2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(split(&lhs, n), Some((x1.multiply(&x2).unwrap(), y1.multiply(&y2).unwrap())));
    }

    #[test]
    fn signed_cycle_type_determines_the_class(n in 1usize..=7, seed in any::<u64>()) {
        let (x, g, _) = triple(n, seed);
        let t = x.signed_cycle_type();
        let rep = t.representative();
        prop_assert_eq!(rep.signed_cycle_type(), t);
        prop_assert_eq!(x.conjugate_by(&g).unwrap().signed_cycle_type(), x.signed_cycle_type());
    }
}

#[test]
fn mismatched_ranks_are_errors() {
    let x: SignedPermutation = "01:(1 2)".parse().unwrap();
    let y: SignedPermutation = "010:(1 2)".parse().unwrap();
    assert!(x.multiply(&y).is_err());
    assert!(x.conjugate_by(&y).is_err());
    assert!(sq(&x, &y).is_err());
}
