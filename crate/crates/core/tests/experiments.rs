use helmcauchy_core::experiments::{run_figure, run_table1, run_table2, run_to_dir, Experiment, ExperimentConfig};
use helmcauchy_core::Error;

fn small_table1() -> ExperimentConfig {
    let mut cfg = ExperimentConfig::default_for(Experiment::Table1);
    cfg.deltas = vec![1e-2, 1e-3];
    cfg.z0 = vec![0.25, 0.05];
    cfg
}

#[test]
fn csv_is_identical_across_thread_counts() {
    let cfg = small_table1();
    let runs: Vec<String> = [1, 3, 8]
        .into_iter()
        .map(|t| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(t).build().unwrap();
            pool.install(|| run_table1(&cfg).unwrap().to_csv())
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], runs[2]);
}

#[test]
fn echoed_config_reproduces_the_report() {
    let cfg = small_table1();
    let rep = run_table2(&cfg).unwrap();
    let again = ExperimentConfig::parse(&rep.config_echo, Experiment::Bounds).unwrap();
    assert_eq!(again, cfg);
    let rep2 = run_table2(&again).unwrap();
    assert_eq!(rep.to_csv(), rep2.to_csv());
    assert_eq!(rep.config_hash, rep2.config_hash);
}

#[test]
fn rows_are_finite_and_sorted() {
    let mut cfg = small_table1();
    cfg.deltas = vec![1e-3, 1e-1, 1e-2];
    let rep = run_table1(&cfg).unwrap();
    let deltas: Vec<f64> = rep.rows.iter().map(|r| r.delta).collect();
    assert_eq!(deltas, vec![1e-1, 1e-2, 1e-3]);
    assert!(rep.rows.iter().flat_map(|r| &r.errors).all(|e| e.is_finite() && *e >= 0.0));
}

#[test]
fn invalid_config_fails_before_computing() {
    let mut cfg = small_table1();
    cfg.z0 = vec![0.7];
    assert!(matches!(run_table1(&cfg), Err(Error::Parameter(_))));
    let dir = tempfile::tempdir().unwrap();
    cfg.deltas.clear();
    assert!(matches!(run_to_dir(&cfg, dir.path()), Err(Error::Parameter(_))));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

fn argmax(path: &std::path::Path) -> (f64, f64) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut best = (f64::NEG_INFINITY, 0.0, 0.0);
    for line in text.lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        if v[2] > best.0 {
            best = (v[2], v[0], v[1]);
        }
    }
    (best.1, best.2)
}

#[test]
fn figure_peaks_agree() {
    let cfg = ExperimentConfig::default_for(Experiment::Figure);
    let dir = tempfile::tempdir().unwrap();
    let files = run_figure(&cfg, dir.path()).unwrap();
    assert_eq!(files.len(), 2);
    let (reg, exact) = (argmax(&files[0]), argmax(&files[1]));
    let r = (1.0 / helmcauchy_core::truncation::eps_apriori(1e-3, cfg.m0, &cfg.wave_params().unwrap()).unwrap().eps).sqrt();
    let cell = r / cfg.spacing_divisor;
    assert!((reg.0 - exact.0).abs() <= cell * (1.0 + 1e-9) && (reg.1 - exact.1).abs() <= cell * (1.0 + 1e-9));
}

#[test]
fn run_writes_csv_and_manifest() {
    let mut cfg = ExperimentConfig::default_for(Experiment::Blowup);
    cfg.blowup_n = vec![2, 3];
    let dir = tempfile::tempdir().unwrap();
    let paths = run_to_dir(&cfg, dir.path()).unwrap();
    assert_eq!(paths[0], dir.path().join("blowup.csv"));
    let manifest = std::fs::read_to_string(dir.path().join("blowup_manifest.txt")).unwrap();
    assert!(manifest.contains(&cfg.hash()));
    assert!(manifest.contains("blowup_n = 2, 3"));
}
