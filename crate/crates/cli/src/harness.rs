//! Conjecture harness: sweep seeded corpora, record per-instance
//! verdicts, and serialize any counterexample as a poset artifact.
//! Open conjectures are reported, never asserted: a counterexample
//! sets a flag and writes a file, and the process still exits 0.

use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

use chow_core::coxeter::{bruhat_interval, chow_by_paths, ReflectionOrder};
use chow_core::gen::{random_cm_poset, random_eulerian_poset, rng_for};
use chow_core::incidence::{ChowSystem, IncAlgebra};
use chow_core::kernels::{characteristic, eulerian};
use chow_core::poly::analyze;
use chow_core::poset::{poset_to_json, RankFn};

use crate::commands::{bruhat_pairs, group_name, parse_group};

use crate::emit;

#[derive(Serialize, Clone)]
struct Row {
    index: usize,
    generator: String,
    instance: String,
    hash: String,
    nonnegative: bool,
    symmetric: bool,
    unimodal: bool,
    gamma_positive: bool,
    real_rooted: bool,
    counterexample: bool,
}

struct Outcome {
    row: Row,
    artifact: Option<(String, String)>, // (filename, contents)
}

fn short_hash(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().take(6).map(|b| format!("{b:02x}")).collect()
}

fn verdict_row(
    index: usize,
    generator: &str,
    instance: String,
    poset_json: &str,
    h: &chow_core::poly::Poly,
    window: usize,
    fails_if: impl Fn(&chow_core::poly::PropertyReport) -> bool,
) -> Outcome {
    let report = analyze(h, Some(window));
    let counterexample = fails_if(&report);
    let hash = short_hash(poset_json);
    let artifact = counterexample
        .then(|| (format!("counterexample_{hash}.json"), poset_json.to_string()));
    Outcome {
        row: Row {
            index,
            generator: generator.to_string(),
            instance,
            hash,
            nonnegative: report.is_nonnegative,
            symmetric: report.is_symmetric,
            unimodal: report.is_unimodal,
            gamma_positive: report.is_gamma_positive,
            real_rooted: report.is_real_rooted,
            counterexample,
        },
        artifact,
    }
}

pub fn run(
    generator: &str,
    conjecture: &str,
    count: usize,
    seed: u64,
    jobs: usize,
    csv: bool,
    out_dir: &str,
) -> Result<i32> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .context("building worker pool")?;

    let outcomes: Vec<Outcome> = match (generator, conjecture) {
        ("random-graded", "1.2") => pool.install(|| {
            use rayon::prelude::*;
            (0..count)
                .into_par_iter()
                .map(|i| {
                    let mut rng = rng_for(seed, i as u64);
                    let (poset, rank) = random_cm_poset(&mut rng, 5, 4);
                    let text = poset_to_json(&poset, Some(&rank));
                    let r = rank.rank(&poset) as usize;
                    let alg = IncAlgebra::new(Arc::new(poset), Arc::new(rank));
                    let sys = ChowSystem::new(characteristic(&alg)).unwrap();
                    verdict_row(
                        i,
                        generator,
                        "chi-Chow of a Cohen-Macaulay poset".into(),
                        &text,
                        sys.chow().at_bounds(),
                        r.saturating_sub(1),
                        |rep| !rep.is_real_rooted,
                    )
                })
                .collect()
        }),
        ("random-eulerian", "1.3") => pool.install(|| {
            use rayon::prelude::*;
            (0..count)
                .into_par_iter()
                .map(|i| {
                    let mut rng = rng_for(seed, i as u64);
                    let poset = random_eulerian_poset(&mut rng, 120);
                    let rank = RankFn::graded(&poset).unwrap();
                    let text = poset_to_json(&poset, Some(&rank));
                    let r = rank.rank(&poset) as usize;
                    let alg = IncAlgebra::new(Arc::new(poset), Arc::new(rank));
                    let sys = ChowSystem::new(eulerian(&alg).unwrap()).unwrap();
                    verdict_row(
                        i,
                        generator,
                        "eps-Chow of an Eulerian poset".into(),
                        &text,
                        sys.chow().at_bounds(),
                        r - 1,
                        |rep| !rep.is_real_rooted,
                    )
                })
                .collect()
        }),
        (g, c @ ("1.4" | "1.5")) if g.starts_with("bruhat:") => {
            let group = parse_group(g.strip_prefix("bruhat:").unwrap())?;
            let pairs = bruhat_pairs(&group);
            let take = count.min(pairs.len());
            let gamma_mode = c == "1.4";
            pool.install(|| {
                use rayon::prelude::*;
                pairs[..take]
                    .par_iter()
                    .enumerate()
                    .map(|(i, &(u, v))| {
                        let interval = bruhat_interval(&group, u, v).unwrap();
                        let order = ReflectionOrder::default_for(&group);
                        let h = chow_by_paths(&interval, &order);
                        let rho = (group.length(v) - group.length(u)) as usize;
                        let text = poset_to_json(&interval.poset, Some(&interval.rank));
                        verdict_row(
                            i,
                            g,
                            format!("{} interval ({u}, {v})", group_name(&group)),
                            &text,
                            &h,
                            rho.saturating_sub(1),
                            |rep| {
                                if gamma_mode {
                                    !rep.is_gamma_positive
                                } else {
                                    !rep.is_real_rooted
                                }
                            },
                        )
                    })
                    .collect()
            })
        }
        _ => bail!(
            "unsupported generator/conjecture pair ({generator}, {conjecture}); supported: \
             random-graded with 1.2, random-eulerian with 1.3, bruhat:S<n> with 1.4 or 1.5"
        ),
    };

    for outcome in &outcomes {
        if let Some((name, contents)) = &outcome.artifact {
            let path = std::path::Path::new(out_dir).join(name);
            std::fs::write(&path, contents)
                .with_context(|| format!("writing {}", path.display()))?;
            eprintln!("counterexample artifact written to {}", path.display());
        }
    }

    let rows: Vec<&Row> = outcomes.iter().map(|o| &o.row).collect();
    if csv {
        emit!(
            "index,generator,instance,hash,nonnegative,symmetric,unimodal,gamma_positive,real_rooted,counterexample"
        );
        for r in &rows {
            emit!(
                "{},{},{},{},{},{},{},{},{},{}",
                r.index,
                r.generator,
                r.instance.replace(',', ";"),
                r.hash,
                r.nonnegative,
                r.symmetric,
                r.unimodal,
                r.gamma_positive,
                r.real_rooted,
                r.counterexample
            );
        }
    } else {
        emit!("{}", serde_json::to_string_pretty(&rows).map_err(|e| anyhow!("{e}"))?);
    }
    Ok(0)
}
