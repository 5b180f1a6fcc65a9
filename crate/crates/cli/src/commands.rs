//! The four subcommands, each producing one [`Report`].

use std::collections::BTreeMap;

use anbimod::bimodule::checks::{self as bc, SampleConfig, SpanCache};
use anbimod::bimodule::{quotient_scan, SpanConfig};
use anbimod::fusion::{checks as fc, EngineConfig, FusionEngine};
use anbimod::report::{Check, ModelEcho, Report, SpaceScan, Status, Witness};
use anbimod::{Error, Model, Result};

use crate::config::RunConfig;

fn build(cfg: &RunConfig) -> Result<Model> {
    cfg.model_spec()?.build()
}

fn echo(model: &Model) -> ModelEcho {
    ModelEcho {
        name: model.spec.name.clone(),
        c: model.central_charge().to_string(),
        minimal: model.spec.minimal,
        modules: model.summary(),
    }
}

fn empty_report(command: &str, cfg: &RunConfig, model: &Model, keys: &[&str]) -> Report {
    Report {
        command: command.to_string(),
        model: echo(model),
        space: cfg.space.clone(),
        n: Some(cfg.n),
        t: None,
        s: None,
        config: cfg.echo(keys),
        table: Vec::new(),
        stabilized_dim: None,
        graded_dims: BTreeMap::new(),
        scans: Vec::new(),
        fusion: None,
        checks: Vec::new(),
    }
}

/// Index of the requested space; `V` is the VOA.
fn space_index(model: &Model, label: &str) -> Result<usize> {
    if label == "V" {
        Ok(0)
    } else {
        model.index_of(label)
    }
}

fn scan(cfg: &RunConfig, model: &Model, i: usize, config: SpanConfig, family: &str) -> Result<(SpaceScan, Check)> {
    let carrier = model.module(i);
    let (report, span) =
        quotient_scan(model.vacuum().clone(), carrier.clone(), config, cfg.w_min, cfg.w_max(), cfg.window)?;
    let label = if i == 0 { "V".to_string() } else { carrier.label().to_string() };
    let name = format!("stabilization[space={label},family={family}]");
    let check = match report.stabilized_dim {
        Some(d) => Check::pass(name, format!("quotient dim {d} over the last {} cutoffs", cfg.window)),
        None => Check::new(
            name,
            Status::Inconclusive,
            Witness::text(format!("no {} equal consecutive quotient dims", cfg.window)).at_cutoff(cfg.w_max()),
        ),
    };
    let sym = carrier.vector_symbol();
    let coset_basis = match report.stabilized_dim {
        Some(_) => span.coset_basis().iter().map(|k| k.render(&sym)).collect(),
        None => Vec::new(),
    };
    Ok((
        SpaceScan {
            space: label,
            family: family.to_string(),
            table: report.table,
            stabilized_dim: report.stabilized_dim,
            coset_basis,
        },
        check,
    ))
}

const SCAN_KEYS: &[&str] = &["n", "t", "s", "w", "window", "seed"];

/// Graded dimensions of every module and the quotient tables at level `n`
/// (or for the pair `(t, s)`).
pub fn dims(cfg: &RunConfig) -> Result<Report> {
    let model = build(cfg)?;
    let target = space_index(&model, &cfg.space)?;
    let mut report = empty_report("dims", cfg, &model, SCAN_KEYS);
    for m in model.modules() {
        report.graded_dims.insert(m.label().to_string(), m.graded_dims(cfg.w_max()));
    }
    let mut jobs: Vec<(usize, SpanConfig, String)> = Vec::new();
    if let Some((t, s)) = cfg.pair()? {
        if target != 0 {
            return Err(Error::InvalidArgument("the (t, s) family lives on the VOA; use space V".into()));
        }
        report.n = None;
        report.t = Some(t);
        report.s = Some(s);
        jobs.push((0, SpanConfig::pair(t, s), format!("A_{{{t},{s}}}(V)")));
    } else {
        let n = cfg.n;
        jobs.push((0, SpanConfig::zhu(n), format!("A_{n}(V)")));
        for i in 0..model.num_modules() {
            jobs.push((i, SpanConfig::bimodule_enriched(n), format!("bimodule A_{n}(M)")));
        }
    }
    let mut primary = None;
    for (i, config, family) in jobs {
        let (scan, check) = scan(cfg, &model, i, config, &family)?;
        let is_primary = i == target && (i != 0 || primary.is_none());
        if is_primary {
            primary = Some(scan.clone());
        }
        report.scans.push(scan);
        report.checks.push(check);
    }
    let primary = primary.expect("target space is scanned");
    report.table = primary.table;
    report.stabilized_dim = primary.stabilized_dim;
    Ok(report)
}

/// Quotient of the VOA by the bimodule span against the Zhu-type span,
/// cutoff by cutoff.
pub fn compare_on(cfg: &RunConfig) -> Result<Report> {
    let model = build(cfg)?;
    let n = cfg.n;
    let mut report = empty_report("compare-on", cfg, &model, SCAN_KEYS);
    report.space = "V".into();
    let (bimodule, c1) = scan(cfg, &model, 0, SpanConfig::bimodule_enriched(n), &format!("bimodule A_{n}(V)"))?;
    let (zhu, c2) = scan(cfg, &model, 0, SpanConfig::zhu(n), &format!("A_{n}(V)"))?;
    report.checks.extend([c1, c2]);
    let name = format!("compare-on.equality[n={n}]");
    report.checks.push(if !model.is_rational() {
        Check::not_applicable(name, "no verdict for a non-rational model; both columns reported")
    } else {
        match (bimodule.stabilized_dim, zhu.stabilized_dim) {
            (Some(a), Some(b)) => Check::compare(name, a, b, "bimodule quotient vs Zhu-type quotient"),
            _ => Check::new(name, Status::Inconclusive, Witness::text("a quotient did not stabilize").at_cutoff(cfg.w_max())),
        }
    });
    report.table = bimodule.table.clone();
    report.stabilized_dim = bimodule.stabilized_dim;
    report.scans = vec![bimodule, zhu];
    Ok(report)
}

fn engine_config(cfg: &RunConfig) -> EngineConfig {
    EngineConfig { n: cfg.n, budget: cfg.budget, scan_max: cfg.w_max(), window: cfg.window }
}

/// Fusion table from balanced maps.
pub fn fusion(cfg: &RunConfig) -> Result<Report> {
    let model = build(cfg)?;
    let mut report = empty_report("fusion", cfg, &model, &["n", "w", "window", "budget", "seed"]);
    if !model.is_rational() {
        report.checks.push(Check::not_applicable(
            format!("fusion[n={}]", cfg.n),
            "fusion rules are only computed for rational presets",
        ));
        return Ok(report);
    }
    let engine = FusionEngine::new(&model, engine_config(cfg));
    let (table, checks) = fc::fusion(&engine);
    report.fusion = table;
    report.checks = checks;
    Ok(report)
}

const RATIONAL_ONLY: &[&str] =
    &["semisimplicity", "fusion", "bimodule-dims", "kernel-layer", "tensor-lemma", "surjectivity", "duality", "ats-dims"];

/// Runs the selected verification suites.
pub fn verify(cfg: &RunConfig) -> Result<Report> {
    let model = build(cfg)?;
    let suites = cfg.suites()?;
    let mut report = empty_report(
        "verify",
        cfg,
        &model,
        &["n", "w", "window", "budget", "random", "per_element", "seed", "suites"],
    );
    let n = cfg.n;
    let sample = SampleConfig {
        budget: cfg.budget,
        random_count: cfg.random,
        random_budget: cfg.budget + 1,
        per_element: cfg.per_element,
        seed: cfg.seed,
    };
    let mut cache = SpanCache::default();
    let engine = suites
        .iter()
        .any(|s| ["omega-filter", "representation"].contains(&s.as_str()) || RATIONAL_ONLY.contains(&s.as_str()))
        .then(|| FusionEngine::new(&model, engine_config(cfg)));
    for suite in &suites {
        let checks: Vec<Check> = match suite.as_str() {
            "identities" => model.modules().iter().flat_map(|m| bc::exact_identities(&model, m, n, 6)).collect(),
            "bimodule-axioms" => {
                model.modules().iter().flat_map(|m| bc::bimodule_axioms(&model, m, n, &sample, &mut cache)).collect()
            }
            "descent" => model.modules().iter().flat_map(|m| bc::descent(&model, m, n, &sample, &mut cache)).collect(),
            "phi" => model.modules().iter().flat_map(|m| bc::phi_suite(&model, m, n, &sample, &mut cache)).collect(),
            "ideals" => model.modules().iter().flat_map(|m| bc::ideals(&model, m, n, &sample, &mut cache)).collect(),
            s if RATIONAL_ONLY.contains(&s) && !model.is_rational() => {
                vec![Check::not_applicable(format!("{s}[n={n}]"), "requires a rational preset")]
            }
            s => {
                let e = engine.as_ref().expect("engine built for this suite");
                match s {
                    "omega-filter" => fc::omega_filter(e, cfg.budget + 2),
                    "representation" => {
                        let mut c = vec![fc::o_factoring(e, cfg.budget + 2)];
                        c.extend(fc::representation(e, cfg.budget, 20, cfg.budget + 1, cfg.seed));
                        c
                    }
                    "semisimplicity" => fc::semisimplicity(e),
                    "fusion" => {
                        let (table, checks) = fc::fusion(e);
                        report.fusion = table;
                        checks
                    }
                    "bimodule-dims" => fc::bimodule_dims(e),
                    "kernel-layer" => fc::kernel_layer(e),
                    "tensor-lemma" => vec![fc::tensor_lemma(e)],
                    "surjectivity" => vec![fc::surjectivity(e)],
                    "duality" => fc::duality(e, cfg.seed),
                    "ats-dims" => fc::ats_dims(e),
                    other => unreachable!("suite list is validated: {other}"),
                }
            }
        };
        report.checks.extend(checks);
    }
    Ok(report)
}
