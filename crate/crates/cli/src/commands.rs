use crate::args::{Command, IdealArg, ParamArg, PointArgs, RunConfig, ZooAction};
use hadarank_core::conciseness::{
    binomial_search, default_degree_bound, generic_rank_finiteness, is_concise, is_strongly_concise, FinitenessVerdict,
};
use hadarank_core::exactalg::point::point_strings;
use hadarank_core::exactalg::rat::fmt_rat;
use hadarank_core::exactalg::{Ideal, ProjPoint};
use hadarank_core::groebner::GbOptions;
use hadarank_core::hadamard::{power_membership, rank_locus, variety_power, variety_product, PowerCache};
use hadarank_core::numdim::{
    check_avoids_delta, generic_rank_estimate, pairwise_resultants, power_dimension, Parametrization,
    DEFAULT_HEIGHT, DEFAULT_TRIALS,
};
use hadarank_core::rankengine::{
    border_rank, decomposition_exists, decomposition_witness, hadamard_rank, reduce_and_rank, replay_certificate,
    Existence, RankCertificate, RankOptions, Verdict, WitnessOptions,
};
use hadarank_core::reproduce;
use hadarank_core::zoo::{zoo_entry, zoo_names};
use hadarank_core::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::path::Path;

pub struct Report {
    pub json: Value,
    pub text: String,
    pub exit: i32,
}

impl Report {
    fn done(json: Value, text: impl Into<String>) -> Self {
        Report { json, text: text.into(), exit: 0 }
    }
}

fn gb_options(cfg: &RunConfig) -> GbOptions {
    GbOptions { budget: cfg.budget, cache_dir: cfg.cache_dir.clone() }
}

fn load_ideal(source: &str) -> Result<Ideal> {
    match source.strip_prefix("zoo:") {
        Some(name) => zoo_entry(name)?
            .ideal
            .ok_or_else(|| Error::Invalid(format!("zoo entry `{name}` has no ideal"))),
        None => Ideal::read(Path::new(source)),
    }
}

fn load_param(source: &str) -> Result<Parametrization> {
    match source.strip_prefix("zoo:") {
        Some(name) => zoo_entry(name)?
            .param
            .ok_or_else(|| Error::Invalid(format!("zoo entry `{name}` has no parametrization"))),
        None => Parametrization::read(Path::new(source)),
    }
}

fn load_point(at: &PointArgs) -> Result<(Ideal, ProjPoint)> {
    Ok((load_ideal(&at.ideal.ideal)?, ProjPoint::parse(&at.point)?))
}

fn ideal_report(i: &Ideal) -> Report {
    let gens: Vec<String> = i.gens().iter().map(|g| g.to_string()).collect();
    Report::done(json!({ "ring": i.nvars() - 1, "generators": gens }), i.to_file_string(&[]))
}

fn rank_options(cfg: &RunConfig, max_m: usize) -> RankOptions {
    let defaults = WitnessOptions::default();
    RankOptions {
        max_m,
        seed: cfg.seed,
        check_obstruction: true,
        witness: WitnessOptions {
            retries: cfg.trials.unwrap_or(defaults.retries),
            height: cfg.height.unwrap_or(defaults.height),
        },
        gb: gb_options(cfg),
    }
}

fn certificate_report(cert: &RankCertificate) -> Report {
    let json = serde_json::to_value(cert.to_json_value()).expect("certificate serializes");
    let mut text = format!("{} {:?}", cert.point, cert.verdict);
    if !cert.witnesses.is_empty() {
        let w: Vec<String> = cert.witnesses.iter().map(|w| w.to_string()).collect();
        text.push_str(&format!("\nwitness {}", w.join(" * ")));
    }
    let exit = if matches!(cert.verdict, Verdict::Unknown { .. }) { 2 } else { 0 };
    Report { json, text, exit }
}

fn replay_report(path: &Path, ideal: &Ideal, gb: &GbOptions) -> Result<Report> {
    let cert = RankCertificate::from_json(&std::fs::read_to_string(path)?)?;
    let replay = replay_certificate(&cert, ideal, gb)?;
    let text = if replay.ok { "certificate verified".to_string() } else { replay.failures.join("\n") };
    let exit = if replay.ok { 0 } else { 1 };
    Ok(Report { json: json!({ "verified": replay.ok, "failures": replay.failures }), text, exit })
}

fn finiteness_text(v: &FinitenessVerdict) -> String {
    format!("{v:?}")
}

pub fn dispatch(command: &Command, cfg: &RunConfig) -> Result<Report> {
    let gb = gb_options(cfg);
    let height = cfg.height.unwrap_or(DEFAULT_HEIGHT);
    let trials = cfg.trials.unwrap_or(DEFAULT_TRIALS);
    match command {
        Command::Product { left, right } => Ok(ideal_report(&variety_product(&load_ideal(left)?, &load_ideal(right)?, &gb)?)),
        Command::Power { ideal, m } => {
            let mut cache = PowerCache::new(load_ideal(&ideal.ideal)?);
            Ok(ideal_report(&variety_power(&mut cache, *m, &gb)?))
        }
        Command::RankLocus { ideal, m } => Ok(ideal_report(&rank_locus(&load_ideal(&ideal.ideal)?, *m, &gb)?)),
        Command::Member { at, m } => {
            let (i, p) = load_point(at)?;
            let member = power_membership(&p, &mut PowerCache::new(i), *m, &gb)?;
            Ok(Report::done(
                json!({ "point": point_strings(&p), "m": m, "member": member, "semantics": "closure" }),
                format!("{p} {} the closure of power {m}", if member { "lies on" } else { "is not on" }),
            ))
        }
        Command::Concise { ideal: IdealArg { ideal } } => {
            let c = is_concise(&load_ideal(ideal)?, &gb)?;
            let all = c.iter().all(|&b| b);
            Ok(Report::done(json!({ "concise": c, "all_concise": all }), format!("concise {c:?}")))
        }
        Command::StronglyConcise { ideal: IdealArg { ideal } } => {
            let r = is_strongly_concise(&load_ideal(ideal)?, &gb)?;
            let text = format!("strongly concise {:?}, failing {:?}", r.strongly_concise, r.failing);
            Ok(Report::done(serde_json::to_value(&r).expect("report serializes"), text))
        }
        Command::BinomialSearch { ideal: IdealArg { ideal }, max_degree } => {
            let i = load_ideal(ideal)?;
            let d = max_degree.unwrap_or_else(|| default_degree_bound(&i));
            let b = binomial_search(&i, d, &gb)?.map(|f| f.to_string());
            let text = b.clone().unwrap_or_else(|| format!("no binomial up to degree {d}"));
            Ok(Report::done(json!({ "max_degree": d, "binomial": b }), text))
        }
        Command::Finiteness { ideal: IdealArg { ideal }, max_degree, accept_bound } => {
            let i = load_ideal(ideal)?;
            let d = max_degree.unwrap_or_else(|| default_degree_bound(&i));
            let v = generic_rank_finiteness(&i, d, *accept_bound, &gb)?;
            let exit = if matches!(v, FinitenessVerdict::Unknown { .. }) { 2 } else { 0 };
            let json = serde_json::to_value(&v).expect("verdict serializes");
            Ok(Report { text: finiteness_text(&v), json, exit })
        }
        Command::Rank { at, max_m, no_obstruction, verify } => {
            let (i, p) = load_point(at)?;
            if let Some(path) = verify {
                return replay_report(path, &i, &gb);
            }
            let opts = RankOptions { check_obstruction: !no_obstruction, ..rank_options(cfg, *max_m) };
            Ok(certificate_report(&hadamard_rank(&p, &i, &opts)?))
        }
        Command::BorderRank { at, max_m, verify } => {
            let (i, p) = load_point(at)?;
            if let Some(path) = verify {
                return replay_report(path, &i, &gb);
            }
            Ok(certificate_report(&border_rank(&p, &i, &rank_options(cfg, *max_m))?))
        }
        Command::Decompose { at, m } => {
            let (i, p) = load_point(at)?;
            let opts = rank_options(cfg, *m);
            let report = decomposition_exists(&p, &i, *m, &gb)?;
            let patterns = serde_json::to_value(&report.patterns).expect("patterns serialize");
            let exists = match report.existence {
                Existence::Exists => Some(true),
                Existence::Infeasible => Some(false),
                Existence::Unknown => None,
            };
            let mut witnesses = vec![];
            if exists == Some(true) {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                match decomposition_witness(&p, &i, &report, &mut rng, &opts.witness, &gb) {
                    Ok(w) => witnesses = w,
                    Err(Error::WitnessNotFound { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
            let wj: Vec<_> = witnesses.iter().map(hadarank_core::rankengine::point_repr).collect();
            let text = match exists {
                Some(true) => {
                    let w: Vec<String> = witnesses.iter().map(|w| w.to_string()).collect();
                    format!("{p} = {}", if w.is_empty() { "product exists, no witness found".into() } else { w.join(" * ") })
                }
                Some(false) => format!("{p} is not a product of {m} points"),
                None => "unknown: budget exhausted".into(),
            };
            Ok(Report {
                json: json!({
                    "point": point_strings(&p), "m": m, "exists": exists,
                    "patterns": patterns, "witnesses": wj, "seed": cfg.seed,
                }),
                text,
                exit: if exists.is_none() { 2 } else { 0 },
            })
        }
        Command::ReduceZeros { at, max_m } => {
            let (i, p) = load_point(at)?;
            let (red, cert) = reduce_and_rank(&p, &i, &rank_options(cfg, *max_m))?;
            let mut rep = certificate_report(&cert);
            let w: Vec<Vec<String>> = red.witnesses.iter().map(point_strings).collect();
            rep.json = json!({
                "p_prime": point_strings(&red.p_prime),
                "zero_witnesses": w,
                "certificate": rep.json,
            });
            rep.text = format!("p' = {}\n{}", red.p_prime, rep.text);
            Ok(rep)
        }
        Command::Dim { param: ParamArg { param }, power } => {
            let r = power_dimension(&load_param(param)?, *power, cfg.seed, trials, height)?;
            Ok(Report::done(
                json!({ "m": r.m, "dim": r.dimension, "seed": r.seed, "trials": r.trials, "method": r.method }),
                format!("power {} has dimension {}", r.m, r.dimension),
            ))
        }
        Command::GenericRank { param: ParamArg { param }, max_m } => {
            let r = generic_rank_estimate(&load_param(param)?, *max_m, cfg.seed, trials, height)?;
            let text = match r {
                Some(r) => format!("generic rank {r}"),
                None => format!("power {max_m} does not fill the space"),
            };
            Ok(Report::done(
                json!({ "generic_rank": r, "max_m": max_m, "seed": cfg.seed, "trials": trials }),
                text,
            ))
        }
        Command::CheckDelta { param: ParamArg { param }, k } => {
            let p = load_param(param)?;
            let n = p.len() - 1;
            let k = k.unwrap_or(n.saturating_sub(2));
            let avoids = check_avoids_delta(&p, k)?;
            let res: Vec<Value> = pairwise_resultants(&p)?
                .into_iter()
                .map(|((i, j), r)| json!({ "pair": [i, j], "resultant": fmt_rat(&r) }))
                .collect();
            Ok(Report::done(
                json!({ "k": k, "avoids": avoids, "resultants": res }),
                format!("{} Delta_{k}", if avoids { "avoids" } else { "meets" }),
            ))
        }
        Command::Zoo { action: ZooAction::List } => {
            let names = zoo_names();
            Ok(Report::done(json!(names), names.join("\n")))
        }
        Command::Zoo { action: ZooAction::Emit { name, dir } } => {
            let files = zoo_entry(name)?.emit();
            match dir {
                Some(d) => {
                    std::fs::create_dir_all(d)?;
                    let mut written = vec![];
                    for (f, body) in &files {
                        let path = d.join(f);
                        std::fs::write(&path, body)?;
                        written.push(path.display().to_string());
                    }
                    Ok(Report::done(json!({ "written": written }), written.join("\n")))
                }
                None => {
                    let text: String = files.iter().map(|(_, b)| b.as_str()).collect::<Vec<_>>().join("\n");
                    let json: serde_json::Map<String, Value> = files.into_iter().map(|(f, b)| (f, Value::String(b))).collect();
                    Ok(Report::done(Value::Object(json), text))
                }
            }
        }
        Command::Reproduce { all, criterion } => {
            let outcomes = match (all, criterion) {
                (_, Some(id)) if (1..=reproduce::CRITERIA.len()).contains(id) => vec![reproduce::run(*id, &gb)],
                (_, Some(id)) => return Err(Error::Invalid(format!("no criterion {id}"))),
                (true, None) => reproduce::run_all(&gb),
                (false, None) => return Err(Error::Invalid("pass --all or --criterion N".into())),
            };
            let passed = outcomes.iter().all(|o| o.passed);
            let text = outcomes.iter().map(|o| o.to_string()).collect::<Vec<_>>().join("\n");
            Ok(Report {
                json: serde_json::to_value(&outcomes).expect("outcomes serialize"),
                text,
                exit: if passed { 0 } else { 1 },
            })
        }
    }
}
