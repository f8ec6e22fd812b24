mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use loopclass::catalog::{lookup, relative_type, CosetInvariant, FormKind, SimpleType};
use loopclass::cohomology::{hom_power, koszul_cohomology, koszul_differential, ZnModule};
use loopclass::group::FiniteGroup;
use loopclass::linalg::{glnz_generators, FinAb, FinAbHom, IntMatrix};
use loopclass::loops::{classify_commuting_tuples, LoopClass};
use loopclass::nullity2::{classify_k, classify_r2};

const MODULES: &[&[i64]] = &[
    &[2], &[3], &[4], &[5], &[6], &[7], &[8], &[9], &[12], &[16], &[2, 2], &[2, 4], &[2, 6], &[3, 3], &[4, 4],
    &[2, 8], &[2, 2, 2], &[2, 2, 4], &[2, 2, 2, 2], &[2, 2, 2, 4], &[4, 8], &[3, 9], &[2, 4, 8],
];

/// A random finite Z^n-module: the generators act by powers of one random
/// automorphism (falling back to a unit scalar), so they commute.
fn zn_module() -> impl Strategy<Value = ZnModule> {
    (prop::sample::select(MODULES), 1usize..=3, prop::collection::vec(0i64..64, 16), 1i64..64, prop::collection::vec(0i64..6, 3))
        .prop_map(|(divs, n, entries, unit, powers)| {
            let g = FinAb::from_canonical(divs.to_vec()).unwrap();
            let r = g.rank();
            let rows: Vec<Vec<i64>> = (0..r)
                .map(|i| (0..r).map(|j| entries[i * r + j] * (g.divisors()[i] / g.divisors()[j].min(g.divisors()[i]))).collect())
                .collect();
            let h = FinAbHom::new(g.clone(), g.clone(), rows)
                .ok()
                .filter(FinAbHom::is_automorphism)
                .unwrap_or_else(|| {
                    let e = g.exponent();
                    let u = (unit..unit + e).find(|u| num_integer::gcd(*u, e) == 1).unwrap();
                    FinAbHom::scalar(&g, u)
                });
            let sigmas = powers[..n].iter().map(|&k| hom_power(&h, k).unwrap()).collect();
            ZnModule::new(g, sigmas).unwrap()
        })
}

fn divides_rows(m: &IntMatrix, group: &FinAb) -> bool {
    let k = group.rank();
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| (m.get(i, j) % group.divisors()[i % k]) == 0.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn koszul_differentials_compose_to_zero(m in zn_module()) {
        for i in 0..m.nullity().saturating_sub(1) {
            let dd = koszul_differential(&m, i + 1).checked_mul(&koszul_differential(&m, i)).unwrap();
            prop_assert!(divides_rows(&dd, m.group()), "d{} d{} != 0", i + 1, i);
        }
    }

    #[test]
    fn euler_characteristic_is_one(m in zn_module()) {
        let mut even = 1u128;
        let mut odd = 1u128;
        for i in 0..=m.nullity() {
            let o = koszul_cohomology(&m, i).unwrap().group().order();
            if i % 2 == 0 { even *= o } else { odd *= o }
        }
        prop_assert_eq!(even, odd);
    }

    #[test]
    fn h0_is_fixed_points(m in zn_module()) {
        let fixed = m
            .group()
            .coordinate_vectors()
            .filter(|x| m.sigmas().iter().all(|s| &s.apply_coords(x) == x))
            .count() as u128;
        prop_assert_eq!(koszul_cohomology(&m, 0).unwrap().group().order(), fixed);
        prop_assert_eq!(m.fixed_points().len() as u128, fixed);
    }

    #[test]
    fn cohomology_order_divides_cochains(m in zn_module()) {
        for i in 0..=m.nullity() {
            let blocks = loopclass::linalg::matrix::combinations(m.nullity(), i).len() as u32;
            let cochains = m.group().order().pow(blocks);
            prop_assert_eq!(cochains % koszul_cohomology(&m, i).unwrap().group().order(), 0);
        }
    }
}

fn test_groups() -> Vec<FiniteGroup> {
    let mut out: Vec<FiniteGroup> = (1..=24).map(FiniteGroup::cyclic).collect();
    out.extend((3..=12).map(FiniteGroup::dihedral));
    out.push(FiniteGroup::symmetric(3));
    out.push(FiniteGroup::symmetric(4));
    out.push(FiniteGroup::from_permutations("A4", 4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).0);
    // quaternion group in its regular representation on {+-1, +-i, +-j, +-k}
    out.push(FiniteGroup::from_permutations("Q8", 8, &[vec![2, 3, 1, 0, 6, 7, 5, 4], vec![4, 5, 7, 6, 1, 0, 2, 3]]).0);
    let c2 = FiniteGroup::cyclic(2);
    out.push(FiniteGroup::direct_product(&c2, &FiniteGroup::symmetric(3)));
    out.push(FiniteGroup::direct_product(&c2, &FiniteGroup::dihedral(4)));
    out.push(FiniteGroup::direct_product(&FiniteGroup::cyclic(3), &FiniteGroup::symmetric(3)));
    out.push(FiniteGroup::direct_product(&c2, &FiniteGroup::direct_product(&c2, &c2)));
    out.push(FiniteGroup::direct_product(&FiniteGroup::cyclic(4), &FiniteGroup::symmetric(3)));
    out
}

#[test]
fn commuting_tuple_counts_match_burnside() {
    for g in test_groups() {
        assert!(g.order() <= 24, "{}", g.name());
        let g = Arc::new(g);
        for n in 1..=2 {
            assert_eq!(classify_commuting_tuples(&g, n).len(), common::burnside_commuting_tuples(&g, n), "{} n={n}", g.name());
        }
    }
}

#[test]
fn base_change_is_a_right_action() {
    for g in [FiniteGroup::symmetric(3), FiniteGroup::dihedral(4), FiniteGroup::symmetric(4)] {
        let g = Arc::new(g);
        for n in 2..=3 {
            let gens = glnz_generators(n);
            for class in classify_commuting_tuples(&g, n) {
                for a in &gens {
                    for b in &gens {
                        let lhs = class.act(a).unwrap().act(b).unwrap().canonical();
                        let rhs = class.act(&a.checked_mul(b).unwrap()).unwrap().canonical();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn base_change_is_pullback_on_abelian_targets(
        tuple in prop::collection::vec(0usize..24, 3),
        entries in prop::collection::vec(-3i64..=3, 9),
    ) {
        let target = Arc::new(FiniteGroup::direct_product(&FiniteGroup::cyclic(6), &FiniteGroup::cyclic(4)));
        let class = LoopClass::new(target.clone(), tuple).unwrap();
        let rows: Vec<Vec<i64>> = entries.chunks(3).map(|c| c.to_vec()).collect();
        let g = IntMatrix::from_rows(&rows);
        let moved = class.act(&g).unwrap();
        for i in 0..3 {
            let column: Vec<i64> = (0..3).map(|j| rows[j][i]).collect();
            let direct = (0..3).fold(target.identity(), |acc, j| target.mul(acc, target.pow(class.tuple()[j], column[j])));
            prop_assert_eq!(moved.tuple()[i], direct);
        }
        for v in [[1i64, 0, 0], [0, 1, 0], [2, -1, 3]] {
            let gv: Vec<i64> = (0..3).map(|i| (0..3).map(|j| rows[i][j] * v[j]).sum()).collect();
            prop_assert_eq!(moved.evaluate(&v), class.evaluate(&gv));
        }
    }
}

fn all_types() -> Vec<SimpleType> {
    let mut out: Vec<SimpleType> = Vec::new();
    for (fam, lo, hi) in [("A", 1, 9), ("B", 2, 7), ("C", 3, 7), ("D", 4, 10)] {
        out.extend((lo..=hi).map(|r| format!("{fam}{r}").parse::<SimpleType>().unwrap()));
    }
    out.extend(["E6", "E7", "E8", "F4", "G2"].iter().map(|s| s.parse::<SimpleType>().unwrap()));
    out
}

#[test]
fn triality_acts_as_gl2_f2() {
    let d = lookup("D4".parse().unwrap()).unwrap();
    assert_eq!(d.out.order(), 6);
    assert!(d.is_faithful());
    let orbit: BTreeSet<Vec<i64>> = d.action.iter().map(|u| u.apply_coords(&[1, 0])).collect();
    assert_eq!(orbit.len(), 3);
    assert!(!orbit.contains(&vec![0, 0]));
}

#[test]
fn center_data_are_actions() {
    for t in all_types() {
        let d = lookup(t).unwrap();
        d.check().unwrap();
        assert!([1, 2, 6].contains(&d.out.order()), "{t}");
    }
}

#[test]
fn split_relative_type_is_absolute() {
    for t in all_types() {
        assert_eq!(relative_type(t, &CosetInvariant::split()).unwrap(), t.to_string(), "{t}");
    }
}

#[test]
fn k_classes_refine_r2_classes() {
    for t in all_types() {
        let r2 = classify_r2(t).unwrap();
        let k = classify_k(t).unwrap();
        assert!(k.len() <= r2.len(), "{t}");
        if lookup(t).unwrap().out.order() == 1 {
            assert_eq!(k.len(), r2.len(), "{t}");
        }
    }
}

#[test]
fn quasisplit_is_neutral_coset() {
    for t in all_types() {
        let r2 = classify_r2(t).unwrap();
        for f in &r2 {
            assert_eq!(f.quasisplit, f.h2_rep.iter().all(|&x| x == 0), "{t}");
            if f.quasisplit {
                assert_eq!(f.orbit_size, 1, "{t}");
            }
        }
        let labels: BTreeSet<&str> = r2.iter().map(|f| f.dynkin_tits.label.as_str()).collect();
        for l in labels {
            assert_eq!(r2.iter().filter(|f| f.dynkin_tits.label == l && f.quasisplit).count(), 1, "{t} {l}");
        }
        let k = classify_k(t).unwrap();
        let kinds: BTreeSet<String> = k.iter().map(|c| c.form.dynkin_tits.kind.to_string()).collect();
        assert_eq!(k.iter().filter(|c| c.form.quasisplit).count(), kinds.len(), "{t}");
    }
}

#[test]
fn inner_fiber_orbit_counts() {
    for n in 1..=4usize {
        let even: SimpleType = format!("A{}", 2 * n).parse().unwrap();
        let inner = classify_r2(even).unwrap().into_iter().filter(|f| f.dynkin_tits.kind == FormKind::Inner).count();
        assert_eq!(inner, n + 1, "{even}");
        if n >= 2 {
            let odd: SimpleType = format!("A{}", 2 * n - 1).parse().unwrap();
            let inner = classify_r2(odd).unwrap().into_iter().filter(|f| f.dynkin_tits.kind == FormKind::Inner).count();
            assert_eq!(inner, n + 1, "{odd}");
        }
    }
    for r in 5..=10 {
        let t: SimpleType = format!("D{r}").parse().unwrap();
        let inner = classify_r2(t).unwrap().into_iter().filter(|f| f.dynkin_tits.kind == FormKind::Inner).count();
        assert_eq!(inner, 3, "{t}");
    }
}

#[test]
fn outer_quadratic_pair_never_merges() {
    let types = (2..=5).map(|n| format!("A{}", 2 * n - 1)).chain((4..=10).map(|r| format!("D{r}")));
    for t in types {
        let t: SimpleType = t.parse().unwrap();
        let quad: Vec<_> =
            classify_k(t).unwrap().into_iter().filter(|c| c.form.dynkin_tits.kind == FormKind::Quadratic).collect();
        assert_eq!(quad.len(), 2, "{t}");
        assert_eq!(quad.iter().filter(|c| c.form.quasisplit).count(), 1, "{t}");
    }
}
