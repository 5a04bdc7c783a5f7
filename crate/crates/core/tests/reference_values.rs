use std::sync::Arc;

use nilweight::properties::clifford_vertex_example;
use nilweight::verify::{check_canonical_bijection, check_theorem_A, check_theorem_B_all, Side, Verdict};
use nilweight::weights::enumerate_weights;
use nilweight::{PermGroup, PrimeSet};

fn s4() -> Arc<PermGroup> {
    PermGroup::from_cycles(4, &["(1,2)", "(1,2,3,4)"]).unwrap()
}

fn a5() -> Arc<PermGroup> {
    PermGroup::from_cycles(5, &["(1,2,3)", "(1,2,3,4,5)"]).unwrap()
}

fn sigma(ps: &[u64]) -> PrimeSet {
    PrimeSet::new(ps.iter().copied()).unwrap()
}

fn sorted_degrees(g: &Arc<PermGroup>) -> Vec<u64> {
    let mut d = g.character_table().unwrap().degrees();
    d.sort();
    d
}

#[test]
fn familiar_degree_lists() {
    assert_eq!(sorted_degrees(&s4()), [1, 1, 2, 3, 3]);
    assert_eq!(sorted_degrees(&a5()), [1, 3, 3, 4, 5]);
    let q8 = PermGroup::from_cycles(8, &["(1,2,4,7)(3,6,8,5)", "(1,3,4,8)(2,5,7,6)"]).unwrap();
    assert_eq!(q8.order(), 8);
    assert_eq!(sorted_degrees(&q8), [1, 1, 1, 1, 2]);
}

#[test]
fn a5_all_primes_is_a_counterexample() {
    let r = check_theorem_A(&a5(), &sigma(&[2, 3, 5])).unwrap();
    assert_eq!((r.lhs, r.rhs), (1, 0));
    assert_eq!(r.verdict, Verdict::Fails);
    assert_eq!(r.unmet(), ["solvable Hall subgroup"]);
}

#[test]
fn s4_two_weights_for_prime_two() {
    let g = s4();
    let r = check_theorem_A(&g, &sigma(&[2])).unwrap();
    assert_eq!((r.lhs, r.rhs, r.verdict), (2, 2, Verdict::Holds));
    let mut w: Vec<(u64, u64, u64)> = enumerate_weights(&g, &sigma(&[2]), true)
        .unwrap()
        .iter()
        .map(|w| (w.q_order, w.normalizer_order, w.gamma_degree))
        .collect();
    w.sort();
    // (V4, N = S4, degree-2 character of S3) and (D8, self-normalizing, trivial)
    assert_eq!(w, [(4, 24, 2), (8, 8, 1)]);
    assert_eq!(r.rows.iter().filter(|row| row.side == Side::Rhs).count(), 2);
}

#[test]
fn s4_theorem_b_by_r() {
    let (reports, agg) = check_theorem_B_all(&s4(), &sigma(&[3])).unwrap();
    for r in &reports {
        assert_eq!(r.verdict, Verdict::Holds, "{:?}", r.subject);
        assert_eq!(r.lhs, r.rhs);
    }
    assert_eq!(reports.len(), 7);
    let nonzero: Vec<_> = reports.iter().filter(|r| r.lhs > 0).map(|r| r.subject.clone().unwrap()).collect();
    assert_eq!(nonzero.len(), 2);
    assert!(nonzero.iter().any(|s| s.contains("(1,2)(3,4) (1,3)(2,4)")));
    assert!(nonzero.iter().any(|s| s.contains("(1,3,2,4) (3,4)")));
    assert_eq!((agg.lhs_sum, agg.partial_count, agg.rhs_sum, agg.weight_count), (2, 2, 2, 2));
}

#[test]
fn bijection_on_a4_and_c3_squared_by_c2() {
    let a4 = PermGroup::from_cycles(4, &["(1,2,3)", "(2,3,4)"]).unwrap();
    let s = sigma(&[2]);
    let n = a4.o_sigma(&s).unwrap();
    let h = a4.subgroup_from_cycles(&["(2,3,4)"]).unwrap();
    for r in [a4.trivial_subgroup().unwrap(), h.clone()] {
        let rep = check_canonical_bijection(&a4, &n, &h, &s, &r).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds);
    }

    let g = PermGroup::from_cycles(6, &["(1,2,3)", "(4,5,6)", "(2,3)(5,6)"]).unwrap();
    assert_eq!(g.order(), 18);
    let s = sigma(&[3]);
    let n = g.o_sigma(&s).unwrap();
    assert_eq!(n.order(), 9);
    let h = g.subgroup_from_cycles(&["(2,3)(5,6)"]).unwrap();
    for r in [g.trivial_subgroup().unwrap(), h.clone()] {
        let rep = check_canonical_bijection(&g, &n, &h, &s, &r).unwrap();
        assert_eq!(rep.verdict, Verdict::Holds, "{:?}", rep.notes);
        assert!(rep.notes.iter().any(|(k, v)| k == "injective" && v == "true"));
    }
}

#[test]
fn order_216_inertia_counts() {
    let e = clifford_vertex_example().unwrap();
    assert_eq!(e.order, 216);
    assert!(e.structure_ok);
    assert_eq!((e.inertia_count, e.group_count), (1, 2));
}
