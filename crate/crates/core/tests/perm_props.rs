use std::collections::{HashSet, VecDeque};

use nilweight::{Perm, PermGroup};
use proptest::prelude::*;

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Perm::from_images(v).unwrap())
}

fn closure(n: usize, gens: &[Perm]) -> HashSet<Perm> {
    let mut seen = HashSet::from([Perm::identity(n)]);
    let mut queue = VecDeque::from([Perm::identity(n)]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = &x * g;
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

fn class_count(elems: &HashSet<Perm>) -> usize {
    let mut left = elems.clone();
    let mut count = 0;
    while let Some(x) = left.iter().next().cloned() {
        for y in elems {
            left.remove(&x.conjugate_by(y));
        }
        count += 1;
    }
    count
}

proptest! {
    #[test]
    fn product_is_associative(a in perm(7), b in perm(7), c in perm(7)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn right_action(a in perm(6), b in perm(6), x in 0usize..6) {
        prop_assert_eq!((&a * &b).image(x), b.image(a.image(x)));
    }

    #[test]
    fn inverse_cancels(a in perm(8)) {
        prop_assert!((&a * &a.inverse()).is_identity());
        prop_assert!((&a.inverse() * &a).is_identity());
    }

    #[test]
    fn conjugation_is_an_automorphism(a in perm(6), b in perm(6), x in perm(6)) {
        prop_assert_eq!((&a * &b).conjugate_by(&x), &a.conjugate_by(&x) * &b.conjugate_by(&x));
        prop_assert_eq!(a.conjugate_by(&x), &(&x.inverse() * &a) * &x);
    }

    #[test]
    fn cycle_text_round_trips(a in perm(9)) {
        prop_assert_eq!(Perm::parse_cycles(9, &a.to_string()).unwrap(), a);
    }

    #[test]
    fn order_is_minimal(a in perm(8)) {
        let o = a.order();
        prop_assert!(a.pow(o).is_identity());
        for k in 1..o {
            prop_assert!(!a.pow(k).is_identity());
        }
    }

    #[test]
    fn chain_matches_closure(gens in proptest::collection::vec(perm(6), 1..3)) {
        let g = PermGroup::new(6, gens.clone()).unwrap();
        let elems = closure(6, &gens);
        prop_assert_eq!(g.order(), elems.len() as u64);
        for x in elems.iter().take(20) {
            prop_assert!(g.contains(x));
        }
    }

    #[test]
    fn classes_and_characters_agree_with_enumeration(gens in proptest::collection::vec(perm(5), 1..3)) {
        let g = PermGroup::new(5, gens.clone()).unwrap();
        let elems = closure(5, &gens);
        let classes = class_count(&elems);
        let data = g.class_data().unwrap();
        prop_assert_eq!(data.classes.len(), classes);
        prop_assert_eq!(data.classes.iter().map(|c| c.size).sum::<u64>(), elems.len() as u64);
        let degrees = g.character_table().unwrap().degrees();
        prop_assert_eq!(degrees.len(), classes);
        prop_assert_eq!(degrees.iter().map(|d| d * d).sum::<u64>(), elems.len() as u64);
    }
}
