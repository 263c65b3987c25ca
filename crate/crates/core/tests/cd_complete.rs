//! Complete cd-index of Bruhat intervals: fixture values and the two
//! Chow specializations.

use num_bigint::BigInt;

use chow_core::cdindex::{
    ab_index, chow_from_complete_cd, complete_cd_from_paths, gamma_from_complete_cd, to_cd,
    CdPoly,
};
use chow_core::coxeter::{bruhat_interval, chow_by_paths, CoxeterGroup, ReflectionOrder};
use chow_core::poly::{analyze, Poly};
use chow_core::poset::{flag_vectors, RankFn};

fn cdw(text: &str) -> Vec<chow_core::cdindex::CdLetter> {
    CdPoly::parse_word(text).unwrap()
}

#[test]
fn s4_fixture_complete_cd() {
    let g = CoxeterGroup::symmetric(4).unwrap();
    let v = g.element_from_word(&[1, 2, 3, 2, 1]).unwrap();
    let interval = bruhat_interval(&g, g.identity(), v).unwrap();
    let order = ReflectionOrder::default_for(&g);
    let psi = complete_cd_from_paths(&interval, &order);

    // psi = c^4 + dc^2 + 2cdc + 2c^2d + 2d^2 + 2c^2 + 1
    let expected: &[(&str, i64)] = &[
        ("cccc", 1),
        ("dcc", 1),
        ("cdc", 2),
        ("ccd", 2),
        ("dd", 2),
        ("cc", 2),
        ("1", 1),
    ];
    assert_eq!(psi.terms().len(), expected.len());
    for &(word, coeff) in expected {
        assert_eq!(psi.coeff(&cdw(word)), BigInt::from(coeff), "coefficient of {word}");
    }

    // Specializations reproduce H and its gamma polynomial.
    let golden_h = Poly::from_i64(&[1, 16, 39, 16, 1]);
    assert_eq!(chow_from_complete_cd(&psi, 5), golden_h);
    assert_eq!(gamma_from_complete_cd(&psi, 5), Poly::from_i64(&[1, 12, 9]));
    assert_eq!(chow_by_paths(&interval, &order), golden_h);

    // The top homogeneous part is the ordinary cd-index of the
    // interval poset.
    let flags = flag_vectors(&interval.poset, &interval.rank);
    let ordinary = to_cd(&ab_index(&flags)).unwrap();
    assert_eq!(psi.homogeneous_part(4), ordinary);
    // Karu nonnegativity shadow on this Gorenstein* interval.
    assert!(ordinary.is_nonnegative());
}

#[test]
fn tiny_intervals() {
    let g = CoxeterGroup::symmetric(3).unwrap();
    let order = ReflectionOrder::default_for(&g);

    // Singleton: psi = 1 by the empty-path convention.
    let e = g.identity();
    let interval = bruhat_interval(&g, e, e).unwrap();
    let psi = complete_cd_from_paths(&interval, &order);
    assert_eq!(psi, CdPoly::one());
    assert_eq!(chow_from_complete_cd(&psi, 1), Poly::one());

    // Rank-1 interval: single path of one edge, psi = 1.
    let s1 = g.element_from_word(&[1]).unwrap();
    let interval = bruhat_interval(&g, e, s1).unwrap();
    let psi = complete_cd_from_paths(&interval, &order);
    assert_eq!(psi, CdPoly::one());
    assert_eq!(chow_from_complete_cd(&psi, 1), Poly::one());

    // Rank-2 diamond: psi = c, H = 1 + x.
    let s1s2 = g.element_from_word(&[1, 2]).unwrap();
    let interval = bruhat_interval(&g, e, s1s2).unwrap();
    let psi = complete_cd_from_paths(&interval, &order);
    let mut expect = CdPoly::zero();
    expect.add_term(cdw("c"), BigInt::from(1));
    assert_eq!(psi, expect);
    assert_eq!(chow_from_complete_cd(&psi, 2), Poly::from_i64(&[1, 1]));
}

#[test]
fn complete_cd_consistency_across_s3_and_s4_intervals() {
    // For every interval: chow_from_complete_cd = chow_by_paths, and
    // gamma_from_complete_cd matches the extracted gamma vector.
    for n in [3usize, 4] {
        let g = CoxeterGroup::symmetric(n).unwrap();
        let order = ReflectionOrder::default_for(&g);
        for u in 0..g.order() as u32 {
            for v in 0..g.order() as u32 {
                if !g.bruhat_leq(u, v) || u == v {
                    continue;
                }
                let rho = g.length(v) - g.length(u);
                let interval = bruhat_interval(&g, u, v).unwrap();
                let psi = complete_cd_from_paths(&interval, &order);
                let h = chow_by_paths(&interval, &order);
                assert_eq!(chow_from_complete_cd(&psi, rho), h, "S_{n} pair ({u},{v})");
                let gamma = analyze(&h, Some(rho as usize - 1)).gamma.expect("H is palindromic");
                assert_eq!(gamma_from_complete_cd(&psi, rho), gamma);
                // Karu shadow: ordinary cd-index of a Bruhat interval
                // is nonnegative.
                let flags = flag_vectors(&interval.poset, &interval.rank);
                let ordinary = to_cd(&ab_index(&flags)).unwrap();
                assert!(ordinary.is_nonnegative());
                assert_eq!(psi.homogeneous_part(rho as usize - 1), ordinary);
            }
        }
    }
}

#[test]
fn eulerian_fixture_cd_indices() {
    // gal_gamma of the cd-index equals the gamma vector of the
    // epsilon-Chow polynomial on the Eulerian corpus.
    use chow_core::cdindex::gal_gamma;
    use chow_core::incidence::{ChowSystem, IncAlgebra};
    use chow_core::kernels::eulerian;
    use std::sync::Arc;

    for (name, poset) in chow_core::fixtures::eulerian_corpus() {
        let poset = Arc::new(poset);
        let rank = Arc::new(RankFn::graded(&poset).unwrap());
        let flags = flag_vectors(&poset, &rank);
        let phi = to_cd(&ab_index(&flags)).unwrap_or_else(|e| panic!("{name}: {e}"));
        let alg = IncAlgebra::new(poset.clone(), rank.clone());
        let sys = ChowSystem::new(eulerian(&alg).unwrap()).unwrap();
        let h = sys.chow().at_bounds();
        let r = rank.rank(&poset) as usize;
        let gamma = analyze(h, Some(r - 1)).gamma.expect("epsilon-Chow is palindromic");
        assert_eq!(gal_gamma(&phi), gamma, "{name}");
    }
}
