use std::fs;
use std::path::{Path, PathBuf};

use qaboa_core::bayesopt::MixerKind;
use qaboa_core::harness::{
    aggregate, aggregate_dir, read_trace, read_trace_dir, run_experiment, trace_from_jsonl,
    trace_to_jsonl, verify, AggregateCurve, ExperimentConfig, CSV_HEADER,
};
use qaboa_core::problems::PROBLEM_IDS;

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn small_config(problem: &str, out: &Path) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::preset(problem).unwrap();
    cfg.iterations = 4;
    cfg.repetitions = 3;
    cfg.shots = 256;
    cfg.annealer.steps = 200;
    cfg.fit_restarts = 1;
    cfg.output_dir = out.to_path_buf();
    cfg
}

#[test]
fn bundled_configs_match_presets() {
    for id in PROBLEM_IDS {
        let path = configs_dir().join(format!("{id}.toml"));
        let loaded = ExperimentConfig::load(&path).unwrap();
        let preset = ExperimentConfig::preset(id).unwrap();
        assert_eq!(loaded, preset, "{id}");
        loaded.validate().unwrap();
        for v in loaded.algorithm_variants().unwrap() {
            assert_eq!(v.angle_count(), 6, "{id} {}", v.kind);
        }
    }
}

#[test]
fn config_toml_round_trips_and_rejects_bad_input() {
    let cfg = ExperimentConfig::preset("welded-beam").unwrap();
    assert_eq!(
        ExperimentConfig::from_toml_str(&cfg.to_toml_string()).unwrap(),
        cfg
    );
    assert!(ExperimentConfig::from_toml_str("problem = \"maxcut-k6\"\nbogus = 1\n").is_err());
    let mut bad = cfg.clone();
    bad.repetitions = 0;
    assert!(bad.validate().is_err());
    let mut bad = cfg.clone();
    bad.problem = "nope".into();
    assert!(bad.validate().is_err());
    let mut bad = cfg;
    bad.depth.single_mixer = 2;
    assert!(bad.validate().is_err());
}

#[test]
fn traces_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let result = run_experiment(&small_config("welded-beam", dir.path()), 1).unwrap();
    assert_eq!(result.traces.len(), 15);
    for trace in &result.traces {
        let text = trace_to_jsonl(trace).unwrap();
        assert_eq!(&trace_from_jsonl(&text, "mem").unwrap(), trace);
        assert_eq!(text.lines().count(), trace.records.len() + 1);
    }
    let mut from_disk = read_trace_dir(&result.trace_dir).unwrap();
    from_disk.sort_by_key(|t| (t.variant.kind, t.seed));
    let mut in_memory = result.traces.clone();
    in_memory.sort_by_key(|t| (t.variant.kind, t.seed));
    assert_eq!(from_disk, in_memory);
    assert!(trace_from_jsonl("{\"type\":\"record\"}\n", "x").is_err());
}

#[test]
fn aggregate_std_matches_recomputation_from_trace_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config("wmaxcut-k5-2", dir.path());
    let result = run_experiment(&cfg, 2).unwrap();
    for path in &result.csv_paths {
        let curve = AggregateCurve::from_csv(&fs::read_to_string(path).unwrap()).unwrap();
        assert_eq!(curve.rows.len(), cfg.n_initial + cfg.iterations);
        let traces: Vec<_> = fs::read_dir(&result.trace_dir)
            .unwrap()
            .map(|e| e.unwrap().path())
            .filter(|p| {
                p.file_name()
                    .unwrap()
                    .to_string_lossy()
                    .starts_with(&format!("{}_", curve.variant))
            })
            .map(|p| read_trace(&p).unwrap())
            .collect();
        assert_eq!(traces.len(), cfg.repetitions);
        for row in &curve.rows {
            let values: Vec<f64> = traces
                .iter()
                .filter_map(|t| t.records[row.iteration].best_so_far)
                .collect();
            assert_eq!(row.n_runs, values.len());
            let n = values.len() as f64;
            let mean = values.iter().sum::<f64>() / n;
            let std = (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
            assert!((row.mean_best.unwrap() - mean).abs() <= 1e-12 * mean.abs().max(1.0));
            assert!((row.std_best.unwrap() - std).abs() <= 1e-12);
            assert!(row.std_best.unwrap() >= 0.0);
        }
    }
}

#[test]
fn single_repetition_has_zero_spread() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small_config("lattice-protein", dir.path());
    cfg.repetitions = 1;
    cfg.variants = vec![MixerKind::Utm, MixerKind::X];
    let result = run_experiment(&cfg, 1).unwrap();
    for curve in &result.curves {
        let trace = result
            .traces
            .iter()
            .find(|t| t.variant.kind == curve.variant)
            .unwrap();
        for (row, best) in curve.rows.iter().zip(trace.best_curve()) {
            assert_eq!(row.mean_best, best);
            assert_eq!(row.std_best, best.map(|_| 0.0));
        }
    }
}

#[test]
fn reruns_produce_identical_files() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let ra = run_experiment(&small_config("maxcut-k6", a.path()), 3).unwrap();
    let rb = run_experiment(&small_config("maxcut-k6", b.path()), 1).unwrap();
    assert_eq!(ra.csv_paths.len(), 5);
    for (pa, pb) in ra.csv_paths.iter().zip(&rb.csv_paths) {
        let text = fs::read(pa).unwrap();
        assert!(text.starts_with(CSV_HEADER.as_bytes()));
        assert_eq!(text, fs::read(pb).unwrap());
    }
    for trace in &ra.traces {
        let name = format!("{}_seed{}.jsonl", trace.variant.kind, trace.seed);
        assert_eq!(
            fs::read(ra.trace_dir.join(&name)).unwrap(),
            fs::read(rb.trace_dir.join(&name)).unwrap()
        );
    }
    assert_eq!(aggregate_dir(&ra.trace_dir).unwrap(), ra.curves);
    assert_eq!(aggregate(&rb.traces), ra.curves);
}

#[test]
fn verify_reports_known_optima_and_selector_checks() {
    let k6 = verify("maxcut-k6").unwrap();
    assert_eq!(k6.optimum, 9.0);
    assert!(k6.selector.is_none());
    let lattice = verify("lattice-protein").unwrap();
    assert_eq!(lattice.optimum, -6.0);
    assert_eq!(lattice.optimizers, vec!["001011".to_string()]);
    let weld = verify("welded-beam").unwrap();
    let check = weld.selector.clone().unwrap();
    assert_eq!((check.patterns, check.draws), (8, 100));
    assert!(check.passed());
    assert!(weld.to_string().contains("PASS over 8 patterns x 100"));
    for id in ["speed-reducer", "pressure-vessel"] {
        let check = verify(id).unwrap().selector.unwrap();
        assert_eq!(check.patterns, 16);
        assert!(check.passed());
    }
    assert!(verify("unknown").is_err());
}
