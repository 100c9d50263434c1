use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use utroots::embeddings::{phi_closed_form, phi_fr, psi_closed_form, psi_lc, theta, Homomorphism};
use utroots::roots::{qth_root_fr, qth_root_lc, verify_root};
use utroots::unitriangular::UTMatrix;
use utroots::wreath::{build_wreath_embedding, wr_inv, wr_mul, Tau, WreathElement};
use utroots::Prime;

fn prime(i: usize) -> Prime {
    Prime::new([2, 3, 5, 7][i]).unwrap()
}

fn matrix(n: usize, p: Prime, seed: u64) -> UTMatrix {
    UTMatrix::random(n, p, &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn transvection_decomposition_round_trips(n in 1usize..8, pi in 0usize..4, seed in any::<u64>()) {
        let p = prime(pi);
        let a = matrix(n, p, seed);
        let terms = a.decompose_transvections();
        prop_assert!(terms.iter().all(|t| !t.gamma.is_zero()));
        prop_assert_eq!(UTMatrix::from_terms(n, p, &terms).unwrap(), a);
    }

    #[test]
    fn subgroup_splittings_round_trip(n in 2usize..8, pi in 0usize..4, seed in any::<u64>()) {
        let a = matrix(n, prime(pi), seed);
        let (f, abar) = a.fr_a_decompose();
        prop_assert!(f.in_fr() && abar.in_a());
        prop_assert_eq!(&f * &abar, a.clone());
        let (l, bbar) = a.lc_b_decompose();
        prop_assert!(l.in_lc() && bbar.in_b());
        prop_assert_eq!(&l * &bbar, a);
    }

    #[test]
    fn group_laws(n in 1usize..7, pi in 0usize..4, seeds in any::<[u64; 3]>()) {
        let p = prime(pi);
        let [a, b, c] = seeds.map(|s| matrix(n, p, s));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a * &a.inv()).is_identity());
        let k = (p.get() as u64).pow(3);
        prop_assert!(a.pow(k * k).is_identity());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn embeddings_are_homomorphisms(n in 2usize..5, pi in 0usize..3, s in 1u32..3, seeds in any::<[u64; 2]>()) {
        let p = prime(pi);
        let [a, b] = seeds.map(|x| matrix(n, p, x));
        let ab = &a * &b;
        for images in [phi_fr(n, p, s).unwrap(), psi_lc(n, p, s).unwrap(), theta(n, p, s).unwrap()] {
            let h = Homomorphism::new(&images);
            prop_assert_eq!(h.apply(&ab).unwrap(), &h.apply(&a).unwrap() * &h.apply(&b).unwrap());
        }
        prop_assert_eq!(Homomorphism::new(&phi_fr(n, p, s).unwrap()).apply(&a).unwrap(), phi_closed_form(n, p, s, &a).unwrap());
        prop_assert_eq!(Homomorphism::new(&psi_lc(n, p, s).unwrap()).apply(&a).unwrap(), psi_closed_form(n, p, s, &a).unwrap());
    }

    #[test]
    fn roots_verify(n in 2usize..5, pi in 0usize..3, s in 1u32..3, seed in any::<u64>()) {
        let a = matrix(n, prime(pi), seed);
        for w in [qth_root_fr(&a, s).unwrap(), qth_root_lc(&a, s).unwrap()] {
            prop_assert_eq!(w.x.pow(w.q), w.target_image.clone());
            prop_assert!(verify_root(&w).passed());
        }
    }

    #[test]
    fn wreath_axioms_and_tau(n in 2usize..4, pi in 0usize..2, s in 1u32..3, seed in any::<u64>()) {
        let p = prime(pi);
        let data = build_wreath_embedding(n, p, s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [x, y, z] = std::array::from_fn(|_| WreathElement::random(n, p, data.q, &mut rng));
        prop_assert_eq!(wr_mul(&wr_mul(&x, &y).unwrap(), &z).unwrap(), wr_mul(&x, &wr_mul(&y, &z).unwrap()).unwrap());
        prop_assert!(wr_mul(&x, &wr_inv(&x)).unwrap().is_identity());
        let tau = Tau::new(&data);
        let txy = tau.apply(&wr_mul(&x, &y).unwrap()).unwrap();
        prop_assert_eq!(txy, &tau.apply(&x).unwrap() * &tau.apply(&y).unwrap());
        prop_assert_eq!(x.is_identity(), tau.apply(&x).unwrap().is_identity());
    }
}
