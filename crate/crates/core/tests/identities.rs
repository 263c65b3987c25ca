//! Cross-module identity tests for the kernel/KLS/Chow machinery on
//! the fixture corpus, with golden values frozen from hand
//! computation.

use std::sync::Arc;

use chow_core::fixtures;
use chow_core::incidence::{
    aug_inverse_check, check_kernel, kernel_from_chow, ncd_check, reduce_kernel,
    unimodality_transfer_check, ChowSystem, IncAlgebra,
};
use chow_core::kernels::{adhoc_b3, characteristic, chi_on, eulerian, kernel_from_g};
use chow_core::poly::{analyze, Poly};
use chow_core::poset::{boolean, chain, Poset, RankFn};

fn p(cs: &[i64]) -> Poly {
    Poly::from_i64(cs)
}

fn chi_system(poset: Poset) -> ChowSystem {
    let (_, chi) = chi_on(poset);
    ChowSystem::new(chi).unwrap()
}

fn eps_system(poset: Poset) -> ChowSystem {
    let poset = Arc::new(poset);
    let rank = Arc::new(RankFn::graded(&poset).unwrap());
    let alg = IncAlgebra::new(poset, rank);
    ChowSystem::new(eulerian(&alg).unwrap()).unwrap()
}

#[test]
fn adhoc_kernel_golden_values() {
    for m in [-8i64, -7, 0, 5] {
        let (_, kappa) = adhoc_b3(m);
        let sys = ChowSystem::new(kappa).unwrap();

        assert_eq!(*sys.kls_right().at_bounds(), p(&[1, m + 3]), "f_P at m={m}");
        // On this kernel the left KLS function coincides with the right.
        assert_eq!(sys.kls_left(), sys.kls_right(), "g = f at m={m}");
        // f = 1 on proper intervals.
        for (s, t) in sys.algebra().poset().comparable_pairs() {
            if (s, t) != (0, 7) {
                assert_eq!(*sys.kls_right().get(s, t), Poly::one());
            }
        }

        assert_eq!(*sys.chow().at_bounds(), p(&[1, m + 7, 1]), "H_P at m={m}");
        assert_eq!(
            *sys.z_function().at_bounds(),
            p(&[1, m + 6, m + 6, 1]),
            "Z_P at m={m}"
        );
        // Z = (x+1)^rho on proper intervals.
        for (s, t) in sys.algebra().poset().comparable_pairs() {
            if (s, t) != (0, 7) {
                let rho = sys.algebra().rho(s, t) as usize;
                assert_eq!(*sys.z_function().get(s, t), Poly::one_plus_x_pow(rho));
            }
        }

        let gg = p(&[1, m + 10, m + 10, 1]);
        assert_eq!(*sys.aug_left().at_bounds(), gg, "G_P at m={m}");
        assert_eq!(*sys.aug_right().at_bounds(), gg, "F_P at m={m}");

        assert!(ncd_check(&sys).ok(), "NCD identities at m={m}");
        assert!(aug_inverse_check(&sys).ok(), "perp inverses at m={m}");
    }
}

#[test]
fn adhoc_kernel_unimodality_boundary() {
    // m = -7: H = x^2 + 0x + 1 fails unimodality; m = -8 gets a
    // negative coefficient, and the transfer hypothesis fails too.
    let (_, kappa) = adhoc_b3(-7);
    let sys = ChowSystem::new(kappa).unwrap();
    assert_eq!(*sys.chow().at_bounds(), p(&[1, 0, 1]));
    assert!(!analyze(sys.chow().at_bounds(), None).is_unimodal);

    let (_, kappa) = adhoc_b3(-8);
    let sys = ChowSystem::new(kappa).unwrap();
    assert_eq!(*sys.chow().at_bounds(), p(&[1, -1, 1]));
    let transfer = unimodality_transfer_check(&sys);
    assert!(!transfer.f_nonnegative && !transfer.g_nonnegative);
    assert!(!transfer.hypothesis_holds);
    assert!(transfer.ok(), "no conclusion is asserted when the hypothesis fails");

    // m = 0: hypothesis holds and the conclusion is verified.
    let (_, kappa) = adhoc_b3(0);
    let sys = ChowSystem::new(kappa).unwrap();
    let transfer = unimodality_transfer_check(&sys);
    assert!(transfer.hypothesis_holds);
    assert!(transfer.ok());
    assert_eq!(*sys.chow().at_bounds(), p(&[1, 7, 1]));
}

#[test]
fn chi_chow_of_chains_and_booleans() {
    for n in 2..=10 {
        let sys = chi_system(chain(n));
        assert_eq!(
            *sys.chow().at_bounds(),
            Poly::one_plus_x_pow(n - 2),
            "chain on {n} elements"
        );
    }
    // Boolean lattices give the Eulerian polynomials.
    let expected: [&[i64]; 4] = [&[1], &[1, 1], &[1, 4, 1], &[1, 11, 11, 1]];
    for (k, coeffs) in (1..=4).zip(expected) {
        let sys = chi_system(boolean(k));
        assert_eq!(*sys.chow().at_bounds(), p(coeffs), "B_{k}");
    }
}

#[test]
fn chi_golden_values_on_fixture_posets() {
    let sys = chi_system(fixtures::rank6_non_cm());
    assert_eq!(*sys.chow().at_bounds(), p(&[1, 8, 20, 20, 8, 1]));
    assert_eq!(*sys.kls_right().at_bounds(), p(&[1, 0, 1]));
    assert_eq!(*sys.kls_left().at_bounds(), Poly::one());

    let sys = chi_system(fixtures::rank5_eulerian_non_cm());
    assert_eq!(*sys.chow().at_bounds(), p(&[1, 13, 25, 13, 1]));
    assert_eq!(*sys.kls_right().at_bounds(), Poly::one());
    assert_eq!(*sys.kls_left().at_bounds(), Poly::one());

    // Left augmented Chow polynomial of the interior factor.
    let sys = chi_system(fixtures::rank4_interior());
    assert_eq!(*sys.aug_left().at_bounds(), p(&[1, 7, 13, 7, 1]));

    let sys = chi_system(fixtures::rank5_non_gamma());
    let h = sys.chow().at_bounds().clone();
    assert_eq!(h, p(&[1, 7, 11, 7, 1]));
    let report = analyze(&h, None);
    assert!(report.is_unimodal && !report.is_gamma_positive);
    assert_eq!(report.gamma, Some(p(&[1, 3, -1])));

    let sys = chi_system(fixtures::rank4_cm_negative_z());
    assert_eq!(*sys.kls_right().at_bounds(), p(&[1, -3]));
    assert_eq!(*sys.z_function().at_bounds(), p(&[1, 1, -20, 1, 1]));
    assert_eq!(*sys.aug_right().at_bounds(), p(&[1, 11, -1, 11, 1]));
}

#[test]
fn eulerian_golden_values() {
    let sys = eps_system(fixtures::rank5_eulerian_non_cm());
    assert_eq!(*sys.kls_right().at_bounds(), p(&[1, -1, -6]));
    assert_eq!(*sys.kls_left().at_bounds(), p(&[1, -1, -6]));
    assert_eq!(*sys.chow().at_bounds(), p(&[1, 12, 6, 12, 1]));
    assert_eq!(*sys.aug_right().at_bounds(), p(&[1, 16, 18, 18, 16, 1]));
    assert_eq!(*sys.aug_left().at_bounds(), p(&[1, 16, 18, 18, 16, 1]));
    assert!(ncd_check(&sys).ok());
}

#[test]
fn chow_structure_laws() {
    for (name, poset) in fixtures::graded_corpus() {
        let sys = chi_system(poset);
        let alg = sys.algebra().clone();
        let h = sys.chow();
        let kappa = sys.kernel();

        // H = -(reduced kernel)^{-1}, via the generic inversion route.
        let direct = reduce_kernel(kappa).invert().unwrap().map(|_, _, q| -q);
        assert_eq!(*h, direct, "{name}: H as negated inverse");

        // kappa H = H^rev = H kappa.
        assert_eq!(kappa.convolve(h), h.rev(), "{name}: kappa H = H^rev");
        assert_eq!(h.convolve(kappa), h.rev(), "{name}: H kappa = H^rev");

        for (s, t) in alg.poset().comparable_pairs() {
            let rho = alg.rho(s, t) as usize;
            if s == t {
                assert_eq!(*h.get(s, t), Poly::one());
                continue;
            }
            // Degree, symmetry, and the leading-coefficient law.
            assert!(h.get(s, t).is_palindromic(rho - 1), "{name}: H symmetric");
            assert_eq!(
                h.get(s, t).coeff(rho - 1),
                kappa.get(s, t).coeff(rho),
                "{name}: [x^(rho-1)]H = [x^rho]kappa"
            );
            // Constant coefficient law for the KLS functions.
            assert_eq!(
                sys.kls_left().get(s, t).coeff(0),
                kappa.get(s, t).coeff(rho),
                "{name}: [x^0]g = [x^rho]kappa"
            );
            assert_eq!(
                sys.kls_right().get(s, t).coeff(0),
                kappa.get(s, t).coeff(rho),
                "{name}: [x^0]f = [x^rho]kappa"
            );
        }

        // F and G are rev-symmetric of degree rho.
        assert_eq!(sys.aug_right().rev(), *sys.aug_right(), "{name}: F^rev = F");
        assert_eq!(sys.aug_left().rev(), *sys.aug_left(), "{name}: G^rev = G");

        // chi is non-degenerate here, so degrees are exactly rho and rho-1.
        assert!(sys.kernel_check().is_nondegenerate, "{name}");
        for (s, t) in alg.poset().comparable_pairs() {
            if s == t {
                continue;
            }
            let rho = alg.rho(s, t) as usize;
            assert_eq!(h.get(s, t).degree(), Some(rho - 1), "{name}: deg H");
            assert_eq!(sys.aug_right().get(s, t).degree(), Some(rho), "{name}: deg F");
            assert_eq!(sys.aug_left().get(s, t).degree(), Some(rho), "{name}: deg G");
        }

        assert!(ncd_check(&sys).ok(), "{name}: NCD identities");
        assert!(aug_inverse_check(&sys).ok(), "{name}: perp inverses");

        // g = zeta for chi, so the transfer theorem applies.
        let transfer = unimodality_transfer_check(&sys);
        assert!(transfer.g_nonnegative && transfer.ok(), "{name}: transfer");
    }
}

#[test]
fn kernel_chow_round_trips() {
    // chow(kernel_from_chow(H)) = H and kernel_from_chow(chow(kappa)) = kappa.
    let (_, chi) = chi_on(boolean(3));
    let sys = ChowSystem::new(chi.clone()).unwrap();
    let recovered = kernel_from_chow(sys.chow()).unwrap();
    assert_eq!(recovered, chi);

    // Hand-built H on C2 with H_{01} = 1 forces kappa_{01} = x - 1.
    let c2 = Arc::new(chain(2));
    let rk = Arc::new(RankFn::graded(&c2).unwrap());
    let alg = IncAlgebra::new(c2, rk);
    let h = alg.from_fn(|_, _| Poly::one());
    let kappa = kernel_from_chow(&h).unwrap();
    assert_eq!(*kappa.get(0, 1), p(&[-1, 1]));
    let sys = ChowSystem::new(kappa).unwrap();
    assert_eq!(*sys.chow(), h);

    // Asymmetric entries are rejected.
    let b2 = Arc::new(boolean(2));
    let rk = Arc::new(RankFn::graded(&b2).unwrap());
    let alg = IncAlgebra::new(b2, rk);
    let bad = alg.from_fn(|s, t| {
        if s == t {
            Poly::one()
        } else if alg.rho(s, t) == 2 {
            Poly::x() // needs to be palindromic in window 1: it is not
        } else {
            Poly::one()
        }
    });
    assert!(kernel_from_chow(&bad).is_err());
}

#[test]
fn degenerate_kernels_still_satisfy_identities() {
    // kernel_from_g with g vanishing off the diagonal gives the
    // identity-like kernel delta; every identity degrades gracefully.
    let b3 = Arc::new(boolean(3));
    let rk = Arc::new(RankFn::graded(&b3).unwrap());
    let alg = IncAlgebra::new(b3, rk);
    let kappa = kernel_from_g(&alg.delta()).unwrap();
    let sys = ChowSystem::new(kappa).unwrap();
    assert!(!sys.kernel_check().is_nondegenerate);
    assert!(ncd_check(&sys).ok());
    let recovered = kernel_from_chow(sys.chow()).unwrap();
    assert_eq!(recovered, *sys.kernel());
}

#[test]
fn characteristic_is_combinatorially_invariant() {
    // Isomorphic intervals carry equal chi and equal H.
    let poset = fixtures::rank5_eulerian_non_cm();
    let sys = chi_system(poset);
    let alg = sys.algebra().clone();
    let poset = alg.poset();
    let pairs = poset.comparable_pairs();
    let mut count = 0;
    for &(s1, t1) in &pairs {
        for &(s2, t2) in &pairs {
            if (s1, t1) >= (s2, t2) || alg.rho(s1, t1) != alg.rho(s2, t2) {
                continue;
            }
            let i1 = poset.interval(s1, t1);
            let i2 = poset.interval(s2, t2);
            if i1.len() != i2.len() || i1.len() > 8 {
                continue;
            }
            let p1 = chow_core::poset::induced_subposet(poset, &i1);
            let p2 = chow_core::poset::induced_subposet(poset, &i2);
            if p1.find_isomorphism(&p2).is_some() {
                assert_eq!(sys.kernel().get(s1, t1), sys.kernel().get(s2, t2));
                assert_eq!(sys.chow().get(s1, t1), sys.chow().get(s2, t2));
                count += 1;
            }
        }
    }
    assert!(count > 10, "sanity: found {count} isomorphic pairs");
}

#[test]
fn characteristic_with_explicit_weak_rank() {
    // chi accepts a polymatroid-style weak rank: double every rank.
    let b2 = Arc::new(boolean(2));
    let rho: Vec<u32> = (0..4).map(|v| 2 * RankFn::graded(&b2).unwrap().rho_elem(v)).collect();
    let rank = Arc::new(RankFn::explicit(&b2, rho).unwrap());
    let alg = IncAlgebra::new(b2, rank);
    let chi = characteristic(&alg);
    assert!(check_kernel(&chi).is_kernel);
    let sys = ChowSystem::new(chi).unwrap();
    // H has degree rho - 1 = 3 and is palindromic.
    assert_eq!(sys.chow().at_bounds().degree(), Some(3));
    assert!(sys.chow().at_bounds().is_palindromic(3));
}
