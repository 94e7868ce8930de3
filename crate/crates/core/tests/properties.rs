use std::collections::BTreeSet;

use harborth::{
    abelian_groups_of_order, brute_force_oracle, exists_free_of_size, is_k_zero_sum_free,
    k_subsums, max_zero_sum_free, sigma, subsums_up_to, Decision, ElementSet, GroupSpec,
    SearchBudget, Symmetry,
};
use proptest::prelude::*;

fn small_groups() -> Vec<GroupSpec> {
    (2..=16).flat_map(abelian_groups_of_order).collect()
}

/// A group of order ≤ 16, a subset of it with at most 12 members, and k ≤ 6.
fn group_set_k() -> impl Strategy<Value = (GroupSpec, Vec<usize>, usize)> {
    let groups = small_groups();
    (0..groups.len(), any::<u64>(), 1usize..=6).prop_map(move |(gi, bits, k)| {
        let g = groups[gi].clone();
        let n = g.size();
        let members: Vec<usize> = (0..n).filter(|&i| bits >> i & 1 == 1).take(12).collect();
        (g, members, k)
    })
}

fn enumerate_k_sums(g: &GroupSpec, members: &[usize], k: usize) -> BTreeSet<usize> {
    let arith = g.arith();
    let mut out = BTreeSet::new();
    let n = members.len();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let s = (0..n)
            .filter(|&i| mask >> i & 1 == 1)
            .fold(0, |acc, i| arith.add(acc, members[i]));
        out.insert(s);
    }
    out
}

fn index_set(s: &ElementSet) -> BTreeSet<usize> {
    s.indices().iter().copied().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn k_subsums_match_enumeration((g, members, k) in group_set_k()) {
        let set = ElementSet::from_indices(&g, members.iter().copied()).unwrap();
        let dp = k_subsums(&set, k).unwrap();
        prop_assert_eq!(index_set(&dp), enumerate_k_sums(&g, &members, k));
    }

    #[test]
    fn k_subsums_inside_subsums_up_to((g, members, k) in group_set_k()) {
        let set = ElementSet::from_indices(&g, members.iter().copied()).unwrap();
        let exact = index_set(&k_subsums(&set, k).unwrap());
        let up_to = index_set(&subsums_up_to(&set, k).unwrap());
        prop_assert!(exact.is_subset(&up_to));
        if !set.is_empty() {
            let full = k_subsums(&set, set.len()).unwrap();
            prop_assert_eq!(full.indices(), &[sigma(&set).index() as usize][..]);
        }
    }

    #[test]
    fn unit_scaling_commutes_with_subsums((g, members, k) in group_set_k(), m in 1u64..60) {
        let exp = g.exponent();
        prop_assume!(harborth::num::gcd(m, exp) == 1);
        let arith = g.arith();
        let set = ElementSet::from_indices(&g, members.iter().copied()).unwrap();
        let scaled = ElementSet::from_indices(&g, members.iter().map(|&x| arith.scalar(m, x))).unwrap();
        let lhs = index_set(&k_subsums(&scaled, k).unwrap());
        let rhs: BTreeSet<usize> = k_subsums(&set, k).unwrap().indices().iter().map(|&x| arith.scalar(m, x)).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn translation_shifts_subsums((g, members, k) in group_set_k(), t_seed in any::<u64>()) {
        let arith = g.arith();
        let t = (t_seed % g.order()) as usize;
        let set = ElementSet::from_indices(&g, members.iter().copied()).unwrap();
        let moved = ElementSet::from_indices(&g, members.iter().map(|&x| arith.add(x, t))).unwrap();
        let kt = arith.scalar(k as u64, t);
        let lhs = index_set(&k_subsums(&moved, k).unwrap());
        let rhs: BTreeSet<usize> = k_subsums(&set, k).unwrap().indices().iter().map(|&x| arith.add(x, kt)).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn set_file_roundtrip((g, members, _k) in group_set_k()) {
        let set = ElementSet::from_indices(&g, members.iter().copied()).unwrap();
        let text = set.to_set_file();
        let back = ElementSet::parse_set_file(&text).unwrap();
        prop_assert_eq!(back.to_set_file(), text);
        prop_assert_eq!(back.indices(), set.indices());
    }

    #[test]
    fn canonical_form_ignores_modulus_order(mut moduli in prop::collection::vec(2u64..13, 1..4), seed in any::<u64>()) {
        let a = GroupSpec::new(&moduli).unwrap();
        let len = moduli.len();
        moduli.rotate_left((seed as usize) % len);
        if seed % 2 == 0 {
            moduli.reverse();
        }
        let b = GroupSpec::new(&moduli).unwrap();
        prop_assert_eq!(a.factors(), b.factors());
        prop_assert_eq!(a.order(), moduli.iter().product::<u64>());
        prop_assert!(a.factors().windows(2).all(|w| w[1] % w[0] == 0));
    }

    #[test]
    fn element_laws(moduli in prop::collection::vec(2u64..10, 1..4), idx in any::<u64>(), jdx in any::<u64>()) {
        let g = GroupSpec::new(&moduli).unwrap();
        let x = g.element_from_index(idx % g.order()).unwrap();
        let y = g.element_from_index(jdx % g.order()).unwrap();
        prop_assert!(x.add(&x.neg()).unwrap().is_zero());
        prop_assert!(x.scalar_mul(g.exponent() as i64).is_zero());
        prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
        prop_assert_eq!(g.element_from_index(x.index()).unwrap(), x);
    }

    #[test]
    fn solver_witness_is_a_certificate(gi in 0usize..40, k in 2usize..=5) {
        let groups: Vec<GroupSpec> = (2..=14).flat_map(abelian_groups_of_order).collect();
        let g = &groups[gi % groups.len()];
        prop_assume!(k as u64 <= g.order());
        let r = max_zero_sum_free(g, k, &SearchBudget::default()).unwrap();
        prop_assert!(r.exhausted);
        prop_assert!(is_k_zero_sum_free(&r.witness, k).unwrap());
        prop_assert_eq!(r.witness.len(), r.max_free_size);
        if (r.max_free_size as u64) < g.order() {
            let next = exists_free_of_size(g, k, r.max_free_size + 1, &SearchBudget::default()).unwrap();
            prop_assert_eq!(next, Decision::NotFound);
        }
    }
}

#[test]
fn index_roundtrip_is_exhaustive() {
    for lit in ["2,12", "2,2,2,2,2,2", "3,3,9", "97", "4,8,16"] {
        let g = GroupSpec::parse(lit).unwrap();
        for i in 0..g.order() {
            let e = g.element_from_index(i).unwrap();
            assert_eq!(e.index(), i);
            assert_eq!(g.index_of(e.coords()), i);
        }
        assert!(g.element_from_index(g.order()).is_err());
    }
}

#[test]
fn halving_counts() {
    for n in 2..=40 {
        for g in abelian_groups_of_order(n) {
            let d = g.halving_decomposition();
            let torsion: u64 = g
                .factors()
                .iter()
                .map(|&f| harborth::num::gcd(2, f))
                .product();
            assert_eq!(d.torsion.len() as u64, torsion);
            assert_eq!(d.half.len() as u64, (g.order() - torsion) / 2);
            let arith = g.arith();
            for &a in d.half.indices() {
                assert!(!d.half.contains_index(arith.neg(a)));
                assert!(!d.torsion.contains_index(a));
            }
        }
    }
}

#[test]
fn symmetry_never_changes_the_answer() {
    for n in 2..=12 {
        for g in abelian_groups_of_order(n) {
            for k in 1..=(n as usize).min(5) {
                let oracle = brute_force_oracle(&g, k).unwrap().max_free_size;
                for sym in Symmetry::ALL {
                    let r = max_zero_sum_free(&g, k, &SearchBudget::default().with_symmetry(sym))
                        .unwrap();
                    assert_eq!(r.max_free_size, oracle, "{} k={k} {sym}", g.literal());
                }
            }
        }
    }
}

/// In `C_2^r`, any `r + 2` elements contain a zero-sum subset of even size
/// between 2 and `r + 2`; larger sets inherit it.
#[test]
fn elementary_two_groups_have_even_zero_sums() {
    for r in 1..=5usize {
        let n = 1usize << r;
        let size = r + 2;
        let mut chosen = Vec::with_capacity(size);
        fn walk(start: usize, n: usize, size: usize, r: usize, chosen: &mut Vec<usize>) {
            if chosen.len() == size {
                let found = (1u32..1 << size).any(|mask| {
                    let c = mask.count_ones() as usize;
                    c.is_multiple_of(2)
                        && c <= r + 2
                        && (0..size)
                            .filter(|&i| mask >> i & 1 == 1)
                            .fold(0, |acc, i| acc ^ chosen[i])
                            == 0
                });
                assert!(found, "no even zero-sum subset in {chosen:?}");
                return;
            }
            for x in start..n {
                chosen.push(x);
                walk(x + 1, n, size, r, chosen);
                chosen.pop();
            }
        }
        walk(0, n, size, r, &mut chosen);
    }
}
