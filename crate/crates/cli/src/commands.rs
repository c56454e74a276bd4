use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::time::Instant;

use johnson_core::edgelist::{parse_edge_list, to_edge_list};
use johnson_core::graph::{build_johnson, build_layer_graph, square};
use johnson_core::morphism::{certify_bijection, layer_square_candidate};
use johnson_core::subset::binomial;
use johnson_core::verify::Verdict;
use johnson_core::Graph;
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{
    Check, Cli, Command, FamilyArg, GenerateArgs, GraphArgs, IsoArgs, ReplayArgs, SearchArgs, SweepArgs, SweepFormat,
    VerifyArgs,
};
use crate::checks::{applicability, run_check, CheckContext};
use crate::error::CliError;
use crate::replay::replay;
use crate::report::{overall, CheckReport, ConfigEcho, GraphInfo, Report, SweepReport, SCHEMA, TOOL_VERSION};

pub const JOBS_ENV: &str = "PANCONNECT_JOBS";

/// `PANCONNECT_JOBS` if set, else `--jobs`; `None` means rayon's default.
pub fn resolve_jobs(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    match std::env::var(JOBS_ENV) {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(j) if j > 0 => Ok(Some(j)),
            _ => Err(CliError::Usage(format!("{JOBS_ENV} must be a positive integer, got {s:?}"))),
        },
        Err(_) => match flag {
            Some(0) => Err(CliError::Usage("--jobs must be positive".into())),
            j => Ok(j),
        },
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> Result<i32, CliError> {
    let jobs = resolve_jobs(cli.jobs)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    pool.install(|| match cli.command {
        Command::Generate(a) => generate(&a),
        Command::Verify(a) => verify(&a),
        Command::Iso(a) => iso(&a),
        Command::Sweep(a) => sweep(&a),
        Command::Replay(a) => replay_cmd(&a),
    })
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn build(family: FamilyArg, n: u32, m: u32, squared: bool) -> Result<Graph, CliError> {
    let g = match family {
        FamilyArg::Johnson => build_johnson(n, m)?,
        FamilyArg::Layer => build_layer_graph(n, m)?,
    };
    Ok(if squared { square(&g) } else { g })
}

pub fn load_graph(a: &GraphArgs) -> Result<Graph, CliError> {
    let g = match (&a.graph, a.family, a.n, a.m) {
        (Some(path), _, _, _) => parse_edge_list(&read(path)?)?,
        (None, Some(family), Some(n), Some(m)) => return build(family, n, m, a.square),
        _ => return Err(CliError::Usage("give --family with --n and --m, or --graph".into())),
    };
    Ok(if a.square { square(&g) } else { g })
}

fn context(s: &SearchArgs, witnesses: bool) -> CheckContext {
    CheckContext {
        budget: s.budget,
        seed: s.seed,
        symmetry_reduced: s.symmetry_reduced,
        witnesses,
        timing: s.timing,
    }
}

/// Checks in first-mention order, duplicates dropped.
fn dedup(checks: &[Check]) -> Vec<Check> {
    let mut out = Vec::new();
    for &c in checks {
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

fn build_report(g: &Graph, checks: &[Check], ctx: &CheckContext, config: ConfigEcho) -> Result<Report, CliError> {
    let started = Instant::now();
    let results = checks
        .iter()
        .map(|&c| run_check(g, c, ctx))
        .collect::<Result<Vec<CheckReport>, _>>()?;
    Ok(Report {
        schema: SCHEMA.to_string(),
        tool_version: TOOL_VERSION.to_string(),
        config,
        graph: GraphInfo::from(g.meta()),
        verdict: overall(results.iter().map(|r| &r.verdict)),
        checks: results,
        duration_ms: ctx.timing.then(|| started.elapsed().as_millis() as u64),
    })
}

fn exit_for(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::Pass => 0,
        _ => 1,
    }
}

fn generate(a: &GenerateArgs) -> Result<i32, CliError> {
    let g = load_graph(&a.graph)?;
    emit(a.out.as_deref(), &to_edge_list(&g))?;
    Ok(0)
}

fn verify(a: &VerifyArgs) -> Result<i32, CliError> {
    let g = load_graph(&a.graph)?;
    let ctx = context(&a.search, a.witnesses);
    let checks = dedup(&a.check);
    for &c in &checks {
        applicability(g.meta(), c, &ctx).map_err(CliError::Usage)?;
    }
    let config = ConfigEcho {
        command: "verify".into(),
        family: a.graph.family,
        n: a.graph.n,
        m: a.graph.m,
        graph_file: a.graph.graph.as_ref().map(|p| p.display().to_string()),
        square: a.graph.square,
        checks: checks.clone(),
        budget: a.search.budget,
        seed: a.search.seed,
        symmetry_reduced: a.search.symmetry_reduced,
        witnesses: a.witnesses,
        timing: a.search.timing,
    };
    let report = build_report(&g, &checks, &ctx, config)?;
    emit(a.out.as_deref(), &to_json(&report)?)?;
    Ok(exit_for(report.verdict))
}

fn iso(a: &IsoArgs) -> Result<i32, CliError> {
    let (source, target, map) = layer_square_candidate(a.n, a.m)?;
    let b = certify_bijection(&source, &target, map)?;
    emit(a.out.as_deref(), &to_json(&b)?)?;
    if b.is_certified() {
        Ok(0)
    } else {
        eprintln!("map from {} to {} is not an isomorphism: {:?}", b.source.name(), b.target.name(), b.status);
        Ok(1)
    }
}

/// `(n, m)` instances of a sweep in row order, after the vertex cap.
pub fn sweep_grid(a: &SweepArgs) -> Vec<(u32, u32)> {
    let mut grid = Vec::new();
    for n in a.n_min..=a.n_max {
        let (lo, hi) = match a.family {
            FamilyArg::Johnson => (1, n / 2),
            FamilyArg::Layer => (1, n.saturating_sub(1) / 2),
        };
        let lo = a.m_min.map_or(lo, |m| m.max(lo));
        let hi = a.m_max.map_or(hi, |m| m.min(hi));
        for m in lo..=hi {
            let vertices = match a.family {
                FamilyArg::Johnson => binomial(n, m),
                FamilyArg::Layer => binomial(n + 1, m + 1),
            };
            if a.max_vertices.is_none_or(|cap| vertices <= cap) {
                grid.push((n, m));
            }
        }
    }
    grid
}

#[derive(Serialize)]
struct CsvRow<'a> {
    family: &'a str,
    n: u32,
    m: u32,
    check: &'a str,
    verdict: &'a str,
    kappa: Option<u64>,
    delta: Option<u64>,
    pairs: usize,
    lengths_checked: usize,
    nodes_expanded: u64,
    ms: Option<u64>,
}

fn sweep(a: &SweepArgs) -> Result<i32, CliError> {
    if a.n_min > a.n_max {
        return Err(CliError::Usage("--n-min is above --n-max".into()));
    }
    if a.search.symmetry_reduced && (a.family != FamilyArg::Johnson || a.square) {
        return Err(CliError::Usage("--symmetry-reduced needs unsquared Johnson graphs".into()));
    }
    if a.square && a.check.contains(&Check::Iso35) {
        return Err(CliError::Usage("iso35 does not apply to squared graphs".into()));
    }
    let ctx = context(&a.search, false);
    let checks = dedup(&a.check);
    let grid = sweep_grid(a);
    let reports = grid
        .par_iter()
        .map(|&(n, m)| {
            let g = build(a.family, n, m, a.square)?;
            // iso35 has no source graph for J(n,1); those rows are left out
            let applicable: Vec<Check> = checks
                .iter()
                .copied()
                .filter(|&c| applicability(g.meta(), c, &ctx).is_ok())
                .collect();
            let config = ConfigEcho {
                command: "sweep".into(),
                family: Some(a.family),
                n: Some(n),
                m: Some(m),
                graph_file: None,
                square: a.square,
                checks: applicable.clone(),
                budget: a.search.budget,
                seed: a.search.seed,
                symmetry_reduced: a.search.symmetry_reduced,
                witnesses: false,
                timing: a.search.timing,
            };
            build_report(&g, &applicable, &ctx, config)
        })
        .collect::<Result<Vec<Report>, CliError>>()?;
    let verdict = overall(reports.iter().map(|r| &r.verdict));
    let text = match a.format {
        SweepFormat::Json => to_json(&SweepReport {
            schema: SCHEMA.to_string(),
            tool_version: TOOL_VERSION.to_string(),
            verdict,
            reports,
        })?,
        SweepFormat::Csv => sweep_csv(a, &reports)?,
    };
    emit(a.out.as_deref(), &text)?;
    Ok(exit_for(verdict))
}

fn sweep_csv(a: &SweepArgs, reports: &[Report]) -> Result<String, CliError> {
    let family = match (a.family, a.square) {
        (FamilyArg::Johnson, false) => "johnson",
        (FamilyArg::Johnson, true) => "johnson^2",
        (FamilyArg::Layer, false) => "layer",
        (FamilyArg::Layer, true) => "layer^2",
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in reports {
        for c in &r.checks {
            let detail = |key: &str| c.details.get(key).and_then(|v| v.as_u64());
            w.serialize(CsvRow {
                family,
                n: r.graph.meta.n,
                m: r.graph.meta.m,
                check: c.name.name(),
                verdict: c.verdict.as_str(),
                kappa: detail("kappa"),
                delta: detail("delta"),
                pairs: c.stats.pairs,
                lengths_checked: c.stats.lengths_checked,
                nodes_expanded: c.stats.nodes_expanded,
                ms: c.duration_ms,
            })?;
        }
    }
    if reports.iter().all(|r| r.checks.is_empty()) {
        w.write_record([
            "family", "n", "m", "check", "verdict", "kappa", "delta", "pairs", "lengths_checked", "nodes_expanded", "ms",
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn replay_cmd(a: &ReplayArgs) -> Result<i32, CliError> {
    let g = parse_edge_list(&read(&a.graph)?)?;
    let report: Report = serde_json::from_str(&read(&a.report)?)?;
    let summary = replay(&g, &report);
    emit(None, &summary.render())?;
    Ok(if summary.all_confirmed() { 0 } else { 1 })
}
