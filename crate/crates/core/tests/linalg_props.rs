use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use loopclass::linalg::{alternating_divisors, glnz_generators, smith_normal_form, FinAb, FinAbHom, IntMatrix};

fn matrix(rows: usize, cols: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(lo..=hi, cols), rows).prop_map(|r| IntMatrix::from_rows(&r))
}

/// A random unimodular matrix as a word in the GL_n(Z) generators.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    let gens = glnz_generators(n);
    prop::collection::vec(0..gens.len(), 0..12).prop_map(move |word| {
        word.iter().fold(IntMatrix::identity(n), |acc, &i| acc.checked_mul(&gens[i]).unwrap())
    })
}

fn moduli() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(1i64..=12, 1..=4)
}

/// A well-defined homomorphism: entry (r, j) is a multiple of `c_r / gcd(d_j, c_r)`.
fn hom_between(domain: FinAb, codomain: FinAb) -> impl Strategy<Value = FinAbHom> {
    let (dr, cr) = (domain.rank(), codomain.rank());
    prop::collection::vec(prop::collection::vec(0i64..64, dr), cr).prop_map(move |ks| {
        let rows = ks
            .iter()
            .zip(codomain.divisors())
            .map(|(row, &c)| row.iter().zip(domain.divisors()).map(|(&k, &d)| k * (c / d.gcd(&c))).collect())
            .collect();
        FinAbHom::new(domain.clone(), codomain.clone(), rows).unwrap()
    })
}

fn small_group() -> impl Strategy<Value = FinAb> {
    moduli().prop_map(|m| FinAb::from_divisors(&m).unwrap()).prop_filter("order at most 256", |g| g.order() <= 256)
}

proptest! {
    #[test]
    fn snf_is_a_factorization(m in matrix(4, 4, -20, 20)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.checked_mul(&m).unwrap().checked_mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(s.d.is_diagonal());
        prop_assert!(s.u.det().unwrap().abs().is_one());
        prop_assert!(s.v.det().unwrap().abs().is_one());
        prop_assert_eq!(s.u.checked_mul(&s.u_inv).unwrap(), IntMatrix::identity(4));
    }

    #[test]
    fn snf_divisors_match_minor_gcds(m in matrix(4, 4, -20, 20)) {
        let diag = smith_normal_form(&m).diagonal();
        for w in diag.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
        let mut prefix = BigInt::one();
        for (k, d) in diag.iter().enumerate() {
            prefix *= d.abs();
            prop_assert_eq!(&prefix, &m.minor_gcd(k + 1));
        }
    }

    #[test]
    fn snf_rectangular(m in matrix(3, 5, -9, 9)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.checked_mul(&m).unwrap().checked_mul(&s.v).unwrap(), s.d);
    }

    #[test]
    fn canonical_form_is_invariant(mods in moduli(), seed in any::<u64>()) {
        let g = FinAb::from_divisors(&mods).unwrap();
        let mut shuffled = mods.clone();
        let len = shuffled.len();
        for i in (1..len).rev() {
            shuffled.swap(i, (seed >> (i * 3)) as usize % (i + 1));
        }
        prop_assert_eq!(FinAb::from_divisors(&shuffled).unwrap(), g.clone());
        prop_assert_eq!(FinAb::from_canonical(g.divisors().to_vec()).unwrap(), g.clone());
        prop_assert_eq!(g.order(), mods.iter().product::<i64>() as u128);
        prop_assert!(g.divisors().iter().all(|&d| d > 1));
        for w in g.divisors().windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn kernel_image_order_equation(
        (dom, hom) in (small_group(), small_group())
            .prop_flat_map(|(d, c)| (Just(d.clone()), hom_between(d, c)))
    ) {
        let kic = hom.kernel_image_cokernel();
        prop_assert_eq!(kic.kernel.order() * kic.image.order(), dom.order());
        prop_assert_eq!(kic.image.order() * kic.cokernel.order(), hom.codomain().order());
        prop_assert_eq!(hom.kernel_elements().len() as u128, kic.kernel.order());
    }

    #[test]
    fn alternating_divisors_are_gl_invariant(
        (n, upper, p) in (2usize..=4).prop_flat_map(|n| (Just(n), prop::collection::vec(-12i64..12, n * n), unimodular(n))),
        m in prop::sample::select(vec![2i64, 3, 4, 6, 8, 12]),
    ) {
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                rows[i][j] = upper[i * n + j];
                rows[j][i] = -upper[i * n + j];
            }
        }
        let b = IntMatrix::from_rows(&rows);
        let conj = p.transpose().checked_mul(&b).unwrap().checked_mul(&p).unwrap();
        prop_assert_eq!(alternating_divisors(&conj, m).unwrap(), alternating_divisors(&b, m).unwrap());
    }
}
