mod common;

use proptest::prelude::*;

use loopclass::azumaya::{brussel_normal_form, mumford_generators, wedge_invariant, MumfordDatum, Phase};

const CHAINS: &[&[i64]] = &[&[2], &[3], &[4], &[5], &[6], &[2, 2], &[2, 4], &[2, 6], &[3, 3], &[3, 6], &[2, 2, 2], &[2, 2, 4]];

fn datum_and_elements(k: usize) -> impl Strategy<Value = (MumfordDatum, Vec<Vec<i64>>)> {
    prop::sample::select(CHAINS).prop_flat_map(move |chain| {
        let datum = MumfordDatum::new(chain).unwrap();
        let r = 2 * chain.len();
        (Just(datum), prop::collection::vec(prop::collection::vec(-40i64..40, r), k))
    })
}

fn add(x: &[i64], y: &[i64]) -> Vec<i64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

proptest! {
    #[test]
    fn pairing_is_bilinear_and_alternating((datum, v) in datum_and_elements(3)) {
        let p = |x: &[i64], y: &[i64]| datum.pairing(x, y).unwrap();
        prop_assert_eq!(p(&v[0], &v[0]), Phase::zero());
        prop_assert_eq!(p(&v[0], &v[1]), -p(&v[1], &v[0]));
        prop_assert_eq!(p(&add(&v[0], &v[1]), &v[2]), p(&v[0], &v[2]) + p(&v[1], &v[2]));
        prop_assert_eq!(p(&v[0], &add(&v[1], &v[2])), p(&v[0], &v[1]) + p(&v[0], &v[2]));
    }

    #[test]
    fn wedge_invariant_ignores_lifts(
        (datum, v) in prop::sample::select(CHAINS).prop_flat_map(|chain| {
            let datum = MumfordDatum::new(chain).unwrap();
            let r = 2 * chain.len();
            (Just(datum), prop::collection::vec(prop::collection::vec(-40i64..40, r), r))
        }),
        entry in any::<prop::sample::Index>(),
        coord in any::<prop::sample::Index>(),
        k in -5i64..=5,
    ) {
        let before = wedge_invariant(&datum, &v).unwrap();
        let mut w = v.clone();
        let i = entry.index(w.len());
        let c = coord.index(w[i].len());
        w[i][c] += k * datum.chain()[c / 2];
        prop_assert_eq!(wedge_invariant(&datum, &w).unwrap(), before);
    }
}

#[test]
fn pairing_matches_commutator_phases() {
    for chain in CHAINS {
        let datum = MumfordDatum::new(chain).unwrap();
        let gens = mumford_generators(chain, datum.degree() as usize).unwrap();
        let r = 2 * chain.len();
        let basis: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|k| (k == i) as i64).collect()).collect();
        for x in &basis {
            for y in &basis {
                let lx = datum.lift(x, &gens).unwrap();
                let ly = datum.lift(y, &gens).unwrap();
                assert_eq!(lx.commutator_phase(&ly).unwrap(), Some(datum.pairing(x, y).unwrap()), "{chain:?}");
            }
        }
    }
}

#[test]
fn pairing_automorphisms_fix_the_wedge() {
    for chain in [[2], [3]] {
        let datum = MumfordDatum::new(&chain).unwrap();
        let autos = common::pairing_automorphisms(&datum);
        assert!(!autos.is_empty());
        for t in common::generating_tuples(&datum, 2) {
            let delta = wedge_invariant(&datum, &t).unwrap();
            let form = brussel_normal_form(&datum, &t).unwrap();
            for u in &autos {
                let moved: Vec<Vec<i64>> = t.iter().map(|x| u.apply_coords(x)).collect();
                assert_eq!(wedge_invariant(&datum, &moved).unwrap(), delta);
                assert_eq!(brussel_normal_form(&datum, &moved).unwrap(), form);
            }
        }
    }
}

#[test]
fn only_sign_collapses_r1() {
    for d in [5i64, 7, 8, 9, 12] {
        let datum = MumfordDatum::new(&[d]).unwrap();
        for r in 1..d {
            if num_integer::gcd(r, d) != 1 {
                continue;
            }
            // (a, r^{-1} b) has wedge r^{-1}, hence twist r
            let inv = (1..d).find(|s| (s * r) % d == 1).unwrap();
            let form = brussel_normal_form(&datum, &[vec![1, 0], vec![0, inv]]).unwrap();
            assert_eq!(form.r1, r.min(d - r), "d={d} r={r}");
        }
    }
}
