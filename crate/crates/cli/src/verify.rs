//! The `verify` subcommand: run every proved identity over the fixture
//! corpus (with golden values embedded in the fixture files), a seeded
//! batch of random posets, and the Coxeter/matroid cross-route checks.
//! Exit 0 iff everything holds exactly.

use std::sync::Arc;

use anyhow::{Context, Result};
use serde::Deserialize;

use chow_core::cdindex::{ab_index, gal_gamma, to_cd};
use chow_core::coxeter::{bruhat_interval, chow_by_paths, dfs_paths, CoxeterGroup, ReflectionOrder};
use chow_core::gen::{algebra_for, random_graded_poset, random_kls_g, rng_for};
use chow_core::homology::is_cohen_macaulay;
use chow_core::incidence::{
    aug_inverse_check, check_kernel, kernel_from_chow, ncd_check, unimodality_transfer_check,
    ChowSystem, IncAlgebra,
};
use chow_core::kernels::{characteristic, eulerian, kernel_from_g};
use chow_core::matroid::{chi_chow_identities, Matroid};
use chow_core::poly::{analyze, Poly};
use chow_core::poset::{
    flag_vectors, is_eulerian, is_eulerian_by_counts, order_complex_h, poset_from_json, RankFn,
};

use crate::emit;

#[derive(Deserialize, Default)]
struct Expected {
    #[serde(default)]
    chi: ExpectedKernel,
    #[serde(default)]
    eps: ExpectedKernel,
    cohen_macaulay: Option<bool>,
}

#[derive(Deserialize, Default)]
struct ExpectedKernel {
    #[serde(rename = "H")]
    h: Option<Poly>,
    f: Option<Poly>,
    g: Option<Poly>,
    #[serde(rename = "Z")]
    z: Option<Poly>,
    #[serde(rename = "F")]
    big_f: Option<Poly>,
    #[serde(rename = "G")]
    big_g: Option<Poly>,
    gamma: Option<Poly>,
}

#[derive(Deserialize)]
struct FixtureExtras {
    #[serde(default)]
    expected: Option<Expected>,
}

struct Failures(Vec<String>);

impl Failures {
    fn check(&mut self, ok: bool, context: impl Fn() -> String) {
        if !ok {
            self.0.push(context());
        }
    }
}

fn expect_poly(fails: &mut Failures, name: &str, what: &str, got: &Poly, want: &Option<Poly>) {
    if let Some(want) = want {
        fails.check(got == want, || {
            format!("{name}: {what} = {got}, fixture expects {want}")
        });
    }
}

fn check_system(fails: &mut Failures, name: &str, sys: &ChowSystem, expected: &ExpectedKernel) {
    let ncd = ncd_check(sys);
    fails.check(ncd.ok(), || {
        let f = ncd.failures.first().unwrap();
        format!("{name}: identity {} fails on interval {:?}", f.identity, f.interval)
    });
    let perp = aug_inverse_check(sys);
    fails.check(perp.ok(), || format!("{name}: augmented inverse presentation fails"));
    let transfer = unimodality_transfer_check(sys);
    fails.check(transfer.ok(), || format!("{name}: unimodality transfer violated"));
    // Round trip through the kernel-from-Chow construction.
    match kernel_from_chow(sys.chow()) {
        Ok(kappa) => fails.check(kappa == *sys.kernel(), || {
            format!("{name}: kernel_from_chow does not invert chow")
        }),
        Err(e) => fails.0.push(format!("{name}: kernel_from_chow rejected a Chow function: {e}")),
    }

    expect_poly(fails, name, "H", sys.chow().at_bounds(), &expected.h);
    expect_poly(fails, name, "f", sys.kls_right().at_bounds(), &expected.f);
    expect_poly(fails, name, "g", sys.kls_left().at_bounds(), &expected.g);
    expect_poly(fails, name, "Z", sys.z_function().at_bounds(), &expected.z);
    expect_poly(fails, name, "F", sys.aug_right().at_bounds(), &expected.big_f);
    expect_poly(fails, name, "G", sys.aug_left().at_bounds(), &expected.big_g);
    if let Some(want) = &expected.gamma {
        let poset = sys.algebra().poset().clone();
        let r = sys.algebra().rank().rank(&poset) as usize;
        let gamma = analyze(sys.chow().at_bounds(), Some(r.saturating_sub(1))).gamma;
        fails.check(gamma.as_ref() == Some(want), || {
            format!("{name}: gamma = {gamma:?}, fixture expects {want}")
        });
    }
}

pub fn run(fixtures_dir: &str, seed: u64) -> Result<i32> {
    let mut fails = Failures(Vec::new());
    let mut suites = 0usize;

    // ---- Fixture files ----
    let mut files: Vec<std::path::PathBuf> = match std::fs::read_dir(fixtures_dir) {
        Ok(entries) => entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect(),
        Err(_) => Vec::new(),
    };
    files.sort();
    if files.is_empty() {
        eprintln!("warning: no fixtures found in {fixtures_dir}; fixture suite passes vacuously");
    }
    for path in &files {
        let name = path.file_stem().unwrap().to_string_lossy().to_string();
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {path:?}"))?;
        let (poset, explicit_rank) =
            poset_from_json(&text).with_context(|| format!("parsing {path:?}"))?;
        let extras: FixtureExtras = serde_json::from_str(&text).unwrap_or(FixtureExtras { expected: None });
        let expected = extras.expected.unwrap_or_default();
        let poset = Arc::new(poset);
        let rank = Arc::new(match explicit_rank {
            Some(r) => r,
            None => RankFn::graded(&poset)
                .with_context(|| format!("{name}: fixture poset is not graded"))?,
        });
        let alg = IncAlgebra::new(poset.clone(), rank.clone());

        // chi side, always.
        let chi = characteristic(&alg);
        fails.check(check_kernel(&chi).is_kernel, || format!("{name}: chi is not a kernel"));
        let sys = ChowSystem::new(chi).unwrap();
        check_system(&mut fails, &name, &sys, &expected.chi);
        let battery = chi_chow_identities(&poset, &rank);
        fails.check(battery.ok(), || {
            let f = battery.failures.first().unwrap();
            format!("{name}: chi identity {} fails ({})", f.identity, f.context)
        });

        // eps side when Eulerian; the two Eulerian tests must agree.
        let e1 = is_eulerian(&poset, &rank);
        let e2 = is_eulerian_by_counts(&poset, &rank);
        fails.check(e1.is_eulerian == e2.is_eulerian, || {
            format!("{name}: the two Eulerian tests disagree")
        });
        if e1.is_eulerian {
            let sys = ChowSystem::new(eulerian(&alg).unwrap()).unwrap();
            check_system(&mut fails, &format!("{name} (eps)"), &sys, &expected.eps);
            let h = order_complex_h(&poset, &rank);
            fails.check(*sys.chow().at_bounds() == h, || {
                format!("{name}: eps-Chow differs from the order-complex h-polynomial")
            });
            let phi = to_cd(&ab_index(&flag_vectors(&poset, &rank)));
            match phi {
                Ok(phi) => {
                    let r = rank.rank(&poset) as usize;
                    let gamma = analyze(sys.chow().at_bounds(), Some(r - 1)).gamma.unwrap();
                    fails.check(gal_gamma(&phi) == gamma, || {
                        format!("{name}: cd-index gamma specialization mismatch")
                    });
                }
                Err(e) => fails.0.push(format!("{name}: Eulerian poset without cd-index: {e}")),
            }
        }

        if let Some(cm) = expected.cohen_macaulay {
            let verdict = is_cohen_macaulay(&poset, &rank).is_cohen_macaulay;
            fails.check(verdict == cm, || {
                format!("{name}: Cohen-Macaulay verdict {verdict}, fixture expects {cm}")
            });
        }
    }
    suites += 1;
    report_suite("fixture corpus", files.len(), &fails);

    // ---- Seeded random identity round ----
    let before = fails.0.len();
    let mut rng = rng_for(seed, 0xFEED);
    for i in 0..20 {
        let poset = random_graded_poset(&mut rng, 5, 4);
        let alg = algebra_for(poset);
        for kappa in [characteristic(&alg), kernel_from_g(&random_kls_g(&mut rng, &alg)).unwrap()]
        {
            let sys = ChowSystem::new(kappa).unwrap();
            let ncd = ncd_check(&sys);
            fails.check(ncd.ok(), || format!("random poset {i}: NCD identity failure"));
        }
    }
    suites += 1;
    report_suite_delta("seeded random posets", 20, &fails, before);

    // ---- Coxeter cross-route spot checks ----
    let before = fails.0.len();
    let g4 = CoxeterGroup::symmetric(4).unwrap();
    let v = g4.element_from_word(&[1, 2, 3, 2, 1]).unwrap();
    fails.check(
        g4.r_polynomial(g4.identity(), v) == Poly::from_i64(&[-1, 3, -5, 5, -3, 1]),
        || "S4 R-polynomial golden value".into(),
    );
    let interval = bruhat_interval(&g4, g4.identity(), v).unwrap();
    let order = ReflectionOrder::default_for(&g4);
    let stats = dfs_paths(&interval, &order);
    let golden = Poly::from_i64(&[1, 16, 39, 16, 1]);
    fails.check(stats.chow_des(5) == golden, || "S4 census route".into());
    fails.check(chow_by_paths(&interval, &order) == golden, || "S4 path DP route".into());
    let sys = ChowSystem::new(interval.r_polynomials()).unwrap();
    fails.check(*sys.chow().at_bounds() == golden, || "S4 incidence route".into());
    suites += 1;
    report_suite_delta("Coxeter cross-routes", 4, &fails, before);

    // ---- Matroid chain-formula route ----
    let before = fails.0.len();
    for (name, m) in [
        ("U_2_4", Matroid::uniform(2, 4).unwrap()),
        ("triangle", Matroid::graphic(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()),
        ("U_3_5", Matroid::uniform(3, 5).unwrap()),
    ] {
        let (poset, rank, _) = m.lattice_of_flats().unwrap();
        let alg = IncAlgebra::new(Arc::new(poset), Arc::new(rank));
        let sys = ChowSystem::new(characteristic(&alg)).unwrap();
        fails.check(m.fy_hilbert().unwrap() == *sys.chow().at_bounds(), || {
            format!("{name}: Hilbert-series route disagrees with the incidence route")
        });
    }
    suites += 1;
    report_suite_delta("matroid Hilbert-series routes", 3, &fails, before);

    if fails.0.is_empty() {
        emit!("verify: all {suites} suites passed");
        Ok(0)
    } else {
        for f in &fails.0 {
            emit!("FAIL {f}");
        }
        emit!("verify: {} failure(s)", fails.0.len());
        Ok(2)
    }
}

fn report_suite(name: &str, instances: usize, fails: &Failures) {
    if fails.0.is_empty() {
        emit!("ok {name} ({instances} fixtures)");
    } else {
        emit!("FAILING {name}: {} problem(s) so far", fails.0.len());
    }
}

fn report_suite_delta(name: &str, instances: usize, fails: &Failures, before: usize) {
    if fails.0.len() == before {
        emit!("ok {name} ({instances} instances)");
    } else {
        emit!("FAILING {name}: {} new problem(s)", fails.0.len() - before);
    }
}
