//! The single-shot subcommands: compute, coxeter, cd, cm.

use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Map, Value};

use chow_core::cdindex::{
    ab_index, chow_from_complete_cd, complete_cd_from_paths, gal_gamma, to_cd,
};
use chow_core::coxeter::{
    bruhat_interval, chow_by_paths, CoxeterGroup, GroupSpec, ReflectionOrder,
};
use chow_core::homology::is_cohen_macaulay;
use chow_core::incidence::{
    aug_inverse_check, inc_elem_from_json, ncd_check, unimodality_transfer_check, ChowSystem,
    IncAlgebra, IncElem,
};
use chow_core::kernels::{characteristic, eulerian};
use chow_core::poly::Poly;
use chow_core::poset::{flag_vectors, is_eulerian, poset_from_json, Poset, RankFn};

use crate::emit;

pub fn load_poset(path: &str) -> Result<(Arc<Poset>, Arc<RankFn>)> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    let (poset, rank) = poset_from_json(&text).with_context(|| format!("parsing {path}"))?;
    let poset = Arc::new(poset);
    let rank = match rank {
        Some(r) => r,
        None => RankFn::graded(&poset).context("poset is not bounded graded; supply a rank")?,
    };
    Ok((poset, Arc::new(rank)))
}

pub fn build_kernel(alg: &IncAlgebra, spec: &str) -> Result<IncElem> {
    if spec == "chi" {
        return Ok(characteristic(alg));
    }
    if spec == "eps" {
        return eulerian(alg).map_err(|e| anyhow!("{e}"));
    }
    if let Some(m) = spec.strip_prefix("adhoc:m=") {
        let m: i64 = m.parse().context("adhoc kernel needs an integer m")?;
        // Rank-keyed table; the kernel axioms are re-checked downstream,
        // so this is honest on any poset shaped like the rank-3 cube.
        return Ok(alg.from_fn(|s, t| match alg.rho(s, t) {
            0 => Poly::one(),
            1 => Poly::from_i64(&[-1, 1]),
            2 => Poly::from_i64(&[1, -2, 1]),
            3 => Poly::from_i64(&[-1, -m, m, 1]),
            d => panic!("adhoc kernel is only defined up to rank 3, found rank {d}"),
        }));
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        return inc_elem_from_json(alg, &text).map_err(|e| anyhow!("{e}"));
    }
    bail!("unknown kernel {spec:?}; expected chi | eps | adhoc:m=<int> | file:<path>")
}

pub fn compute(
    poset_path: &str,
    kernel_spec: &str,
    what: &[String],
    interval: Option<(u32, u32)>,
    assert: bool,
) -> Result<i32> {
    let (poset, rank) = load_poset(poset_path)?;
    let alg = IncAlgebra::new(poset.clone(), rank);
    let kappa = build_kernel(&alg, kernel_spec)?;
    let sys = ChowSystem::new(kappa).map_err(|e| anyhow!("kernel check failed: {e}"))?;

    let (s, t) = match interval {
        Some(pair) => {
            if pair.0 as usize >= poset.n() || pair.1 as usize >= poset.n() || !poset.leq(pair.0, pair.1)
            {
                bail!("invalid interval ({}, {})", pair.0, pair.1);
            }
            pair
        }
        None => poset.bounds().map_err(|e| anyhow!("{e}"))?,
    };

    let what: Vec<String> = if what.is_empty() { vec!["H".into()] } else { what.to_vec() };
    let mut out = Map::new();
    for w in &what {
        let value = match w.as_str() {
            "H" => sys.chow().get(s, t).clone(),
            "F" => sys.aug_right().get(s, t).clone(),
            "G" => sys.aug_left().get(s, t).clone(),
            "Z" => sys.z_function().get(s, t).clone(),
            "f" => sys.kls_right().get(s, t).clone(),
            "g" => sys.kls_left().get(s, t).clone(),
            other => bail!("unknown quantity {other:?}; expected H | F | G | Z | f | g"),
        };
        out.insert(w.clone(), serde_json::to_value(&value)?);
    }

    let mut code = 0;
    if assert {
        let ncd = ncd_check(&sys);
        let perp = aug_inverse_check(&sys);
        let transfer = unimodality_transfer_check(&sys);
        let ok = ncd.ok() && perp.ok() && transfer.ok();
        out.insert(
            "assert".into(),
            json!({
                "ncd_identities": ncd.ok(),
                "augmented_inverses": perp.ok(),
                "unimodality_transfer": transfer.ok(),
                "nondegenerate": sys.kernel_check().is_nondegenerate,
            }),
        );
        if !ok {
            code = 2;
        }
    }

    emit!("{}", serde_json::to_string(&Value::Object(out))?);
    Ok(code)
}

pub fn parse_group(spec: &str) -> Result<Arc<CoxeterGroup>> {
    if let Some(n) = spec.strip_prefix('S') {
        let n: usize = n.parse().context("group S<n> needs an integer n")?;
        return CoxeterGroup::symmetric(n).map_err(|e| anyhow!("{e}"));
    }
    if let Some(m) = spec.strip_prefix("I2:") {
        let m: usize = m.parse().context("group I2:<m> needs an integer m")?;
        return CoxeterGroup::dihedral(m).map_err(|e| anyhow!("{e}"));
    }
    bail!("unknown group {spec:?}; expected S<n> or I2:<m>")
}

fn parse_word(text: &str) -> Result<Vec<usize>> {
    text.split_whitespace()
        .map(|tok| tok.parse::<usize>().context("words are space-separated generator indices"))
        .collect()
}

pub fn coxeter(
    group_spec: &str,
    u_word: &str,
    v_word: &str,
    order_path: Option<&str>,
    what: &str,
) -> Result<i32> {
    let group = parse_group(group_spec)?;
    let u = group
        .element_from_word(&parse_word(u_word)?)
        .map_err(|e| anyhow!("--u: {e}"))?;
    let v = group
        .element_from_word(&parse_word(v_word)?)
        .map_err(|e| anyhow!("--v: {e}"))?;
    if !group.bruhat_leq(u, v) {
        bail!("u is not below v in Bruhat order");
    }
    let order = match order_path {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            let words: Vec<Vec<usize>> = serde_json::from_str(&text)
                .context("reflection order file must be a JSON array of generator-index words")?;
            ReflectionOrder::from_words(&group, &words).map_err(|e| anyhow!("{e}"))?
        }
        None => ReflectionOrder::default_for(&group),
    };

    let output = match what {
        "R" => json!({ "R": group.r_polynomial(u, v) }),
        "Rtilde" => json!({ "Rtilde": group.r_tilde(u, v) }),
        "H" => {
            let interval = bruhat_interval(&group, u, v).map_err(|e| anyhow!("{e}"))?;
            json!({ "H": chow_by_paths(&interval, &order) })
        }
        "cd" => {
            let interval = bruhat_interval(&group, u, v).map_err(|e| anyhow!("{e}"))?;
            let psi = complete_cd_from_paths(&interval, &order);
            let rho = group.length(v) - group.length(u);
            let h = if u == v { Poly::one() } else { chow_from_complete_cd(&psi, rho) };
            json!({ "complete_cd": psi, "H": h })
        }
        other => bail!("unknown quantity {other:?}; expected R | Rtilde | H | cd"),
    };
    emit!("{output}");
    Ok(0)
}

pub fn cd(poset_path: &str) -> Result<i32> {
    let (poset, rank) = load_poset(poset_path)?;
    let check = is_eulerian(&poset, &rank);
    if !check.is_eulerian {
        let (s, t) = check.witness.unwrap();
        bail!("poset is not Eulerian (witness interval ({s}, {t})); no cd-index exists");
    }
    let flags = flag_vectors(&poset, &rank);
    let phi = to_cd(&ab_index(&flags)).map_err(|e| anyhow!("{e}"))?;
    let gamma = gal_gamma(&phi);
    emit!("{}", json!({ "cd_index": phi, "gal_gamma": gamma }));
    Ok(0)
}

pub fn cm(poset_path: &str) -> Result<i32> {
    let (poset, rank) = load_poset(poset_path)?;
    let report = is_cohen_macaulay(&poset, &rank);
    let witness = report.witness.as_ref().map(|w| {
        json!({
            "interval": [w.interval.0, w.interval.1],
            "expected_dim": w.expected_dim,
            "betti": w.betti.by_dim,
        })
    });
    emit!(
        "{}",
        json!({ "cohen_macaulay": report.is_cohen_macaulay, "witness": witness })
    );
    Ok(0)
}

/// Shared with the harness: `bruhat:S<n>` interval enumeration.
pub fn bruhat_pairs(group: &Arc<CoxeterGroup>) -> Vec<(u32, u32)> {
    let mut pairs = Vec::new();
    for u in 0..group.order() as u32 {
        for v in 0..group.order() as u32 {
            if group.bruhat_leq(u, v) {
                pairs.push((u, v));
            }
        }
    }
    pairs
}

pub fn group_name(group: &CoxeterGroup) -> String {
    match group.spec() {
        GroupSpec::Symmetric(n) => format!("S{n}"),
        GroupSpec::Dihedral(m) => format!("I2:{m}"),
    }
}
