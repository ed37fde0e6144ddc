use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use burghelea::bar::burghelea_factor_table;
use burghelea::chain::{format_q, simplicial_chain_to_json};
use burghelea::dehn::{dehn_function, DehnOptions, SimplicialComplex, DEFAULT_ENUMERATION_CAP};
use burghelea::filling::{filling_estimate_check, FillingConfig};
use burghelea::hochschild::DEFAULT_MAX_DIM;
use burghelea::metric::{conjugacy_bound_profile, conjugacy_class};
use burghelea::norms::{class_sample, format_ratio, operator_growth_profile, triangular_grid, GrowthConfig, GrowthMap};
use burghelea::verify::{verify_identities, VerifyConfig};
use burghelea::{parse_group, GroupModel, HochschildComplex};

use crate::report::{cols, emit, opt, Status, Table};
use crate::{BurgheleaArgs, Command, ConjArgs, DehnArgs, FillArgs, HhRanksArgs, NormArgs, VerifyArgs};

/// Bytes charged per basis tuple when a memory cap is converted to a dimension cap.
const BYTES_PER_TUPLE: usize = 512;
const CAP_ENV: &str = "BURGHELEA_CAP_MB";

pub fn run(cmd: Command) -> Result<Status> {
    match cmd {
        Command::HhRanks(a) => hh_ranks(a),
        Command::BurgheleaCheck(a) => burghelea_check(a),
        Command::VerifyIdentities(a) => verify(a),
        Command::ConjBound(a) => conj_bound(a),
        Command::NormProfile(a) => norm_profile(a),
        Command::Dehn(a) => dehn(a),
        Command::Fill(a) => fill(a),
    }
}

/// A file path, or inline JSON if the argument starts with `{`.
fn read_source(arg: &str) -> Result<String> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(Path::new(arg)).with_context(|| format!("reading {arg}"))
}

fn load_group(arg: &str) -> Result<(GroupModel, Value)> {
    let text = read_source(arg)?;
    let model = parse_group(&text)?;
    let value: Value = serde_json::from_str(&text)?;
    Ok((model, value))
}

fn positive(name: &str, v: usize) -> Result<usize> {
    if v == 0 {
        bail!("--{name} must be positive");
    }
    Ok(v)
}

/// `--cap` if given, else the memory cap from the environment, else the default.
fn max_dim(cap: Option<usize>) -> Result<usize> {
    if let Some(c) = cap {
        return positive("cap", c);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => {
            let mb: usize = v.trim().parse().with_context(|| format!("{CAP_ENV}={v} is not a number"))?;
            Ok(positive(CAP_ENV, mb)? * 1024 * 1024 / BYTES_PER_TUPLE)
        }
        Err(_) => Ok(DEFAULT_MAX_DIM),
    }
}

/// Parses an inclusive range `a..b`.
fn parse_range(s: &str) -> Result<(u32, u32)> {
    let (a, b) = s.split_once("..").with_context(|| format!("range {s:?} is not of the form a..b"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b): (u32, u32) = (a.trim().parse()?, b.trim().parse()?);
    if a > b {
        bail!("empty range {s}");
    }
    Ok((a, b))
}

fn hh_ranks(a: HhRanksArgs) -> Result<Status> {
    let (model, desc) = load_group(&a.group)?;
    let class = a.class.as_deref().map(|c| model.parse_element(c)).transpose()?;
    let class = class.map(|g| conjugacy_class(&model, &g));
    let dim = max_dim(a.cap)?;
    let ranks = HochschildComplex::new(&model, class.clone()).with_max_dim(dim).homology_ranks(a.max_degree)?;
    let config = json!({
        "group": desc,
        "max_degree": a.max_degree,
        "class": class.as_ref().map(|c| model.format_element(&c.rep)),
        "max_dim": dim,
    });
    emit(&a.output, "hh-ranks", &config, &ranks, || Table {
        header: cols(&["degree", "dim_chain_space", "rank_boundary_in", "rank_boundary_out", "betti"]),
        rows: ranks
            .iter()
            .map(|r| {
                vec![
                    r.degree.to_string(),
                    r.dim_chain_space.to_string(),
                    r.rank_boundary_in.to_string(),
                    r.rank_boundary_out.to_string(),
                    r.betti.to_string(),
                ]
            })
            .collect(),
    })?;
    Ok(Status::Ok)
}

fn burghelea_check(a: BurgheleaArgs) -> Result<Status> {
    let (model, desc) = load_group(&a.group)?;
    let rows = burghelea_factor_table(&model, a.max_degree)?;
    let config = json!({ "group": desc, "max_degree": a.max_degree });
    emit(&a.output, "burghelea-check", &config, &rows, || Table {
        header: cols(&["class_rep", "degree", "centralizer_order", "group_homology_rank", "hochschild_rank", "agree"]),
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    r.class_rep.clone(),
                    r.degree.to_string(),
                    r.centralizer_order.to_string(),
                    r.group_homology_rank.to_string(),
                    r.hochschild_rank.to_string(),
                    r.agree.to_string(),
                ]
            })
            .collect(),
    })?;
    Ok(if rows.iter().all(|r| r.agree) { Status::Ok } else { Status::IdentityFailure })
}

fn verify(a: VerifyArgs) -> Result<Status> {
    let (model, desc) = load_group(&a.group)?;
    let cfg = VerifyConfig {
        max_degree: a.degree,
        samples: positive("samples", a.samples)?,
        seed: a.seed,
        radius: a.radius,
    };
    let summary = verify_identities(&model, &cfg)?;
    let config = json!({ "group": desc, "verify": cfg });
    emit(&a.output, "verify-identities", &config, &summary, || Table {
        header: cols(&["identity_name", "model", "degree", "samples", "cyclic_samples", "failure_count", "first_failure"]),
        rows: summary
            .reports
            .iter()
            .map(|r| {
                vec![
                    r.identity_name.clone(),
                    r.model.clone(),
                    r.degree.to_string(),
                    r.samples.to_string(),
                    r.cyclic_samples.to_string(),
                    r.failure_count.to_string(),
                    r.failures.first().map(|f| format!("{} {}", f.generator, f.detail)).unwrap_or_default(),
                ]
            })
            .collect(),
    })?;
    Ok(if summary.all_passed { Status::Ok } else { Status::IdentityFailure })
}

fn conj_bound(a: ConjArgs) -> Result<Status> {
    let (model, desc) = load_group(&a.group)?;
    let search = a.cap.map(|c| positive("cap", c)).transpose()?.unwrap_or(a.radius);
    let prof = conjugacy_bound_profile(&model, a.radius, search)?;
    let config = json!({ "group": desc, "sample_radius": a.radius, "search_radius": search });
    emit(&a.output, "conj-bound", &config, &prof, || Table {
        header: cols(&["class_rep", "h_length", "min_conjugator_len", "window_status"]),
        rows: prof
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.class_rep.clone(),
                    r.h_length.to_string(),
                    opt(&r.min_conjugator_len),
                    serde_json::to_value(&r.window_status)
                        .ok()
                        .and_then(|v| v.as_str().map(str::to_string))
                        .unwrap_or_default(),
                ]
            })
            .collect(),
    })?;
    Ok(Status::Ok)
}

fn norm_profile(a: NormArgs) -> Result<Status> {
    let (model, desc) = load_group(&a.group)?;
    let map = GrowthMap::parse(&a.map)?;
    let (lo, hi) = parse_range(&a.k_grid)?;
    let hs = match &a.class {
        Some(c) => vec![conjugacy_class(&model, &model.parse_element(c)?).rep],
        None => class_sample(&model, a.radius)?,
    };
    let cfg = GrowthConfig {
        map,
        degree: a.degree,
        radius: a.radius,
        grid: triangular_grid(lo, hi),
        samples: positive("samples", a.samples)?,
        seed: a.seed,
    };
    let prof = operator_growth_profile(&model, &hs, &cfg)?;
    let config = json!({ "group": desc, "profile": cfg });
    emit(&a.output, "norm-profile", &config, &prof, || Table {
        header: cols(&["h_rep", "h_length", "k", "k_prime", "max_ratio_num", "max_ratio_den", "ratio_float", "error"]),
        rows: prof
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.h_rep.clone(),
                    r.h_length.to_string(),
                    r.k.to_string(),
                    r.k_prime.to_string(),
                    opt(&r.max_ratio_num),
                    opt(&r.max_ratio_den),
                    opt(&r.ratio_float),
                    opt(&r.error),
                ]
            })
            .collect(),
    })?;
    Ok(Status::Ok)
}

fn dehn(a: DehnArgs) -> Result<Status> {
    let text = read_source(&a.complex)?;
    let x = SimplicialComplex::from_json(&text)?;
    let desc: Value = serde_json::from_str(&text)?;
    let opts = DehnOptions {
        enumeration_cap: a.cap.map(|c| positive("cap", c)).transpose()?.unwrap_or(DEFAULT_ENUMERATION_CAP),
        oracle_cap: Some(2 * a.k as u64),
    };
    let table = dehn_function(&x, a.degree, a.k, &opts)?;
    let labels = x.labels();
    let mut broken = !table.rows.windows(2).all(|w| w[0].value <= w[1].value);
    let witnesses: Vec<Value> = table
        .witnesses
        .iter()
        .enumerate()
        .map(|(id, w)| {
            let oracle = match &w.oracle_value {
                Some(Ok(v)) => {
                    broken |= *v < w.filling.value;
                    json!({ "value": format_q(v), "gap": *v != w.filling.value })
                }
                Some(Err(e)) => json!({ "error": e.to_string() }),
                None => Value::Null,
            };
            json!({
                "id": id,
                "mass": format_q(&w.mass),
                "boundary": simplicial_chain_to_json(labels, &w.boundary),
                "lp_value": format_q(&w.filling.value),
                "status": w.filling.status,
                "filling": simplicial_chain_to_json(labels, &w.filling.witness),
                "oracle": oracle,
            })
        })
        .collect();
    let config = json!({
        "complex": desc,
        "degree": a.degree,
        "k_max": a.k,
        "enumeration_cap": opts.enumeration_cap,
        "oracle_cap": opts.oracle_cap,
    });
    let result = json!({
        "mode": table.mode,
        "complete": table.complete,
        "rows": table.rows,
        "witnesses": witnesses,
    });
    emit(&a.output, "dehn", &config, &result, || Table {
        header: cols(&["k", "dN_value", "witness_id"]),
        rows: table
            .rows
            .iter()
            .map(|r| vec![r.k.to_string(), format_q(&r.value), opt(&r.witness_id)])
            .collect(),
    })?;
    Ok(if broken { Status::IdentityFailure } else { Status::Ok })
}

fn fill(a: FillArgs) -> Result<Status> {
    let (model, desc) = load_group(&a.group)?;
    let (lo, hi) = parse_range(&a.k_grid)?;
    let cfg = FillingConfig {
        degree: a.degree,
        radius: a.radius,
        k: a.k,
        p_grid: (lo..=hi).collect(),
        samples: a.samples,
        seed: a.seed,
    };
    let rep = filling_estimate_check(&model, &cfg)?;
    let broken = rep.rows.iter().any(|r| match (&r.fill_value, &r.known_value) {
        (Some(f), Some(k)) => f > k,
        _ => false,
    });
    let config = json!({ "group": desc, "filling": cfg });
    emit(&a.output, "fill", &config, &rep, || {
        let mut header = cols(&["source", "support_diameter", "status", "fill_norm", "known_norm"]);
        header.extend(cfg.p_grid.iter().map(|p| format!("ratio_p{p}")));
        Table {
            header,
            rows: rep
                .rows
                .iter()
                .map(|r| {
                    let mut row = vec![
                        r.source.clone(),
                        r.support_diameter.to_string(),
                        serde_json::to_value(&r.status)
                            .ok()
                            .and_then(|v| v.as_str().map(str::to_string))
                            .unwrap_or_default(),
                        opt(&r.fill_norm),
                        opt(&r.known_norm),
                    ];
                    row.extend(r.ratio_values.iter().map(format_ratio));
                    row
                })
                .collect(),
        }
    })?;
    Ok(if broken { Status::IdentityFailure } else { Status::Ok })
}
