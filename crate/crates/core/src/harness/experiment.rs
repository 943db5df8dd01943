use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::bayesopt::{run, AlgorithmVariant, IterationRecord, MixerKind, RunTrace};
use crate::error::{Error, Result};
use crate::problems::Sense;

pub const CSV_HEADER: &str = "iteration,variant,mean_best,std_best,n_runs";

/// Statistics of the best-so-far objective at one iteration across runs.
/// Runs without a feasible sample yet are left out, so `n_runs` can be smaller
/// than the repetition count early on.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub iteration: usize,
    pub mean_best: Option<f64>,
    /// Population standard deviation.
    pub std_best: Option<f64>,
    pub n_runs: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateCurve {
    pub variant: MixerKind,
    pub rows: Vec<AggregateRow>,
}

fn mean_and_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

impl AggregateCurve {
    /// Aggregates traces that all belong to `variant`.
    pub fn from_traces(variant: MixerKind, traces: &[&RunTrace]) -> Self {
        let len = traces.iter().map(|t| t.records.len()).max().unwrap_or(0);
        let rows = (0..len)
            .map(|t| {
                let values: Vec<f64> = traces
                    .iter()
                    .filter_map(|tr| tr.records.get(t).and_then(|r| r.best_so_far))
                    .collect();
                let (mean_best, std_best) = if values.is_empty() {
                    (None, None)
                } else {
                    let (m, s) = mean_and_std(&values);
                    (Some(m), Some(s))
                };
                AggregateRow {
                    iteration: t,
                    mean_best,
                    std_best,
                    n_runs: values.len(),
                }
            })
            .collect();
        Self { variant, rows }
    }

    pub fn to_csv(&self) -> String {
        let field = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                row.iteration,
                self.variant,
                field(row.mean_best),
                field(row.std_best),
                row.n_runs
            ));
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let bad = |line: usize, message: String| Error::Parse {
            path: "<csv>".into(),
            line,
            message,
        };
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, header)) if header == CSV_HEADER => {}
            _ => return Err(bad(1, format!("expected header `{CSV_HEADER}`"))),
        }
        let mut variant = None;
        let mut rows = Vec::new();
        for (i, line) in lines {
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 5 {
                return Err(bad(
                    i + 1,
                    format!("expected 5 columns, found {}", cols.len()),
                ));
            }
            let num = |s: &str| -> Result<Option<f64>> {
                if s.is_empty() {
                    Ok(None)
                } else {
                    s.parse().map(Some).map_err(|e| bad(i + 1, format!("{e}")))
                }
            };
            let kind: MixerKind = cols[1].parse()?;
            if variant.is_some_and(|v| v != kind) {
                return Err(bad(i + 1, "mixed variants in one file".into()));
            }
            variant = Some(kind);
            rows.push(AggregateRow {
                iteration: cols[0].parse().map_err(|e| bad(i + 1, format!("{e}")))?,
                mean_best: num(cols[2])?,
                std_best: num(cols[3])?,
                n_runs: cols[4].parse().map_err(|e| bad(i + 1, format!("{e}")))?,
            });
        }
        let variant = variant.ok_or_else(|| bad(2, "no rows".into()))?;
        Ok(Self { variant, rows })
    }
}

/// One curve per variant, in the canonical variant order. Runs are combined
/// in seed order so the result does not depend on the order of `traces`.
pub fn aggregate(traces: &[RunTrace]) -> Vec<AggregateCurve> {
    let mut groups: BTreeMap<MixerKind, Vec<&RunTrace>> = BTreeMap::new();
    for trace in traces {
        groups.entry(trace.variant.kind).or_default().push(trace);
    }
    groups
        .into_iter()
        .map(|(kind, mut group)| {
            group.sort_by_key(|t| t.seed);
            AggregateCurve::from_traces(kind, &group)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct TraceHeader {
    problem: String,
    variant: AlgorithmVariant,
    seed: u64,
    sense: Sense,
}

#[derive(Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum TraceLine<'a> {
    Header(&'a TraceHeader),
    Record(&'a IterationRecord),
}

/// Line kind; parsed on its own because tagged-enum buffering loses the
/// integer keys of histogram maps.
#[derive(Deserialize)]
struct LineTag {
    #[serde(rename = "type")]
    kind: String,
}

/// Line-delimited JSON: a header line followed by one line per record.
pub fn trace_to_jsonl(trace: &RunTrace) -> Result<String> {
    let header = TraceHeader {
        problem: trace.problem.clone(),
        variant: trace.variant,
        seed: trace.seed,
        sense: trace.sense,
    };
    let mut out = serde_json::to_string(&TraceLine::Header(&header))?;
    out.push('\n');
    for record in &trace.records {
        out.push_str(&serde_json::to_string(&TraceLine::Record(record))?);
        out.push('\n');
    }
    Ok(out)
}

pub fn trace_from_jsonl(text: &str, source: &str) -> Result<RunTrace> {
    let bad = |line: usize, message: String| Error::Parse {
        path: source.to_string(),
        line,
        message,
    };
    let mut header = None;
    let mut records = Vec::new();
    for (i, line) in text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
    {
        let json_err = |e: serde_json::Error| bad(i + 1, e.to_string());
        let tag: LineTag = serde_json::from_str(line).map_err(json_err)?;
        match tag.kind.as_str() {
            "header" if header.is_none() && records.is_empty() => {
                header = Some(serde_json::from_str::<TraceHeader>(line).map_err(json_err)?);
            }
            "header" => return Err(bad(i + 1, "unexpected header line".into())),
            "record" => records.push(serde_json::from_str(line).map_err(json_err)?),
            other => return Err(bad(i + 1, format!("unknown line type `{other}`"))),
        }
    }
    let h = header.ok_or_else(|| bad(1, "missing header line".into()))?;
    Ok(RunTrace {
        problem: h.problem,
        variant: h.variant,
        seed: h.seed,
        sense: h.sense,
        records,
    })
}

pub fn write_trace(trace: &RunTrace, path: &Path) -> Result<()> {
    fs::write(path, trace_to_jsonl(trace)?).map_err(|e| Error::io(path, e))
}

pub fn read_trace(path: &Path) -> Result<RunTrace> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    trace_from_jsonl(&text, &path.display().to_string())
}

pub fn trace_file_name(trace: &RunTrace) -> String {
    format!("{}_seed{}.jsonl", trace.variant.kind, trace.seed)
}

pub fn csv_file_name(variant: MixerKind) -> String {
    format!("aggregate_{variant}.csv")
}

/// Reads every `*.jsonl` trace in `dir`, in file-name order.
pub fn read_trace_dir(dir: &Path) -> Result<Vec<RunTrace>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "jsonl"))
        .collect();
    paths.sort();
    paths.iter().map(|p| read_trace(p)).collect()
}

pub fn aggregate_dir(dir: &Path) -> Result<Vec<AggregateCurve>> {
    Ok(aggregate(&read_trace_dir(dir)?))
}

#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub curves: Vec<AggregateCurve>,
    pub traces: Vec<RunTrace>,
    pub trace_dir: PathBuf,
    pub csv_paths: Vec<PathBuf>,
}

/// Runs every `(variant, seed)` pair of `config` on a pool of `jobs` worker
/// threads, then writes one trace per run under `<output_dir>/traces` and one
/// aggregate CSV per variant under `<output_dir>`.
pub fn run_experiment(config: &ExperimentConfig, jobs: usize) -> Result<ExperimentResult> {
    config.validate()?;
    let problem = config.resolve_problem()?;
    let run_config = config.run_config()?;
    let variants = config.algorithm_variants()?;
    let tasks: Vec<(AlgorithmVariant, u64)> = variants
        .iter()
        .flat_map(|v| config.seeds().map(move |s| (*v, s)))
        .collect();

    let trace_dir = config.output_dir.join("traces");
    fs::create_dir_all(&trace_dir).map_err(|e| Error::io(&trace_dir, e))?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
    let traces: Vec<RunTrace> = pool.install(|| {
        tasks
            .par_iter()
            .map(|(variant, seed)| run(variant, &problem, &run_config, *seed))
            .collect::<Result<Vec<_>>>()
    })?;

    for trace in &traces {
        write_trace(trace, &trace_dir.join(trace_file_name(trace)))?;
    }
    let curves = aggregate(&traces);
    let mut csv_paths = Vec::new();
    for curve in &curves {
        let path = config.output_dir.join(csv_file_name(curve.variant));
        let mut file = fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
        file.write_all(curve.to_csv().as_bytes())
            .map_err(|e| Error::io(&path, e))?;
        csv_paths.push(path);
    }
    Ok(ExperimentResult {
        curves,
        traces,
        trace_dir,
        csv_paths,
    })
}
