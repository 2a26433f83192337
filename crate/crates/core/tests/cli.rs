use std::fs;
use std::process::Command;

use lorentz_encode::cli::{
    cmd_encode, cmd_fit, cmd_metrics, cmd_qara_sweep, metrics_rows, Builder, EncodeConfig, FitRunConfig, MetricsConfig,
    RunOptions, SweepConfig, TermConfig,
};
use lorentz_encode::fitter::FitConfig;
use lorentz_encode::locfuncs::lf_vector;
use lorentz_encode::qara::{failure_weight_after_qara, ErroneousEstimate};

fn mirrored_pair() -> EncodeConfig {
    EncodeConfig::one_dim(4, &[(1.0, 0.5, 0), (1.0, 0.5, 8)])
}

fn csv_rows(path: &std::path::Path) -> Vec<Vec<String>> {
    let mut rdr = csv::Reader::from_path(path).unwrap();
    rdr.records().map(|r| r.unwrap().iter().map(str::to_string).collect()).collect()
}

#[test]
fn encode_mirrored_pair_writes_consistent_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = cmd_encode(&mirrored_pair(), &RunOptions::default(), dir.path()).unwrap();
    assert!(out.summary.fidelity >= 1.0 - 1e-10);
    assert!((out.summary.w_simulated - out.summary.w_analytic).abs() < 1e-12);
    assert_eq!(out.files.len(), 3);
    let target = csv_rows(&dir.path().join("target.csv"));
    let encoded = csv_rows(&dir.path().join("encoded.csv"));
    assert_eq!(target.len(), 16);
    for (t, e) in target.iter().zip(&encoded) {
        let (pt, pe): (f64, f64) = (t[3].parse().unwrap(), e[3].parse().unwrap());
        assert!((pt - pe).abs() < 1e-12);
    }
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    for key in ["w_analytic", "w_simulated", "fidelity", "m_opt", "theta_ar_opt", "depth", "counts"] {
        assert!(summary.get(key).is_some(), "{key}");
    }
    // Only the three outputs remain; no temporary files.
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 3);
}

#[test]
fn encode_deterministic_and_dagger() {
    let dir = tempfile::tempdir().unwrap();
    let opts = RunOptions { deterministic: true, qft_dagger: true, ..RunOptions::default() };
    let cfg = EncodeConfig::one_dim(3, &[(0.8, 0.4, 1), (-0.5, 1.3, 5), (0.3, 0.7, 6)]);
    let s = cmd_encode(&cfg, &opts, dir.path()).unwrap().summary;
    assert!(s.success_probability >= 1.0 - 1e-9);
    assert!(s.fidelity >= 1.0 - 1e-9);
    assert!(s.w_simulated < 1.0);
}

#[test]
fn single_term_has_unit_weight() {
    let dir = tempfile::tempdir().unwrap();
    let s =
        cmd_encode(&EncodeConfig::one_dim(3, &[(2.0, 0.9, 3)]), &RunOptions::default(), dir.path()).unwrap().summary;
    assert!((s.w_analytic - 1.0).abs() < 1e-15);
    assert_eq!(s.m_opt, 0);
}

#[test]
fn encode_complex_and_product_configs() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = EncodeConfig::one_dim(4, &[(1.0, 0.5, 0), (0.0, 0.8, 5)]);
    cfg.terms[1].coeff_im = 1.0;
    let s = cmd_encode(&cfg, &RunOptions::default(), dir.path()).unwrap().summary;
    assert!(s.complex && s.fidelity >= 1.0 - 1e-10);
    assert!((s.w_simulated - s.w_analytic).abs() < 1e-12);
    assert!(cmd_encode(&cfg, &RunOptions { deterministic: true, ..RunOptions::default() }, dir.path()).is_err());

    let json = r#"{"n_q": 3, "terms": [
        {"coeff": 1.0, "axes": [{"a": 0.5, "k_c": 1}, {"a": 0.7, "k_c": 4}]},
        {"coeff": -0.6, "axes": [{"a": 1.0, "k_c": 5}, {"a": 0.4, "k_c": 2}]}]}"#;
    let cfg: EncodeConfig = serde_json::from_str(json).unwrap();
    let s = cmd_encode(&cfg, &RunOptions { dim: Some(2), ..RunOptions::default() }, dir.path()).unwrap().summary;
    assert_eq!(s.dim, 2);
    assert!(s.fidelity >= 1.0 - 1e-10);
    assert!(cmd_encode(&cfg, &RunOptions { dim: Some(1), ..RunOptions::default() }, dir.path()).is_err());
}

#[test]
fn encode_rejects_invalid_specs() {
    let dir = tempfile::tempdir().unwrap();
    let opts = RunOptions::default();
    assert!(cmd_encode(&EncodeConfig::one_dim(3, &[(1.0, -0.5, 0)]), &opts, dir.path()).is_err());
    assert!(cmd_encode(&EncodeConfig::one_dim(3, &[(1.0, 0.5, 8)]), &opts, dir.path()).is_err());
    assert!(cmd_encode(&EncodeConfig::one_dim(3, &[(0.0, 0.5, 1)]), &opts, dir.path()).is_err());
    let cfg = EncodeConfig { n_q: 3, terms: vec![], deterministic: false, qft_dagger: false };
    assert!(cmd_encode(&cfg, &opts, dir.path()).is_err());
    assert!(serde_json::from_str::<TermConfig>(r#"{"coeff": 1, "a": 1, "k_c": 0, "typo": 1}"#).is_err());
}

#[test]
fn fit_self_target_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let samples = lf_vector(4, 0.7, 5);
    let target = dir.path().join("lf.json");
    fs::write(&target, serde_json::to_string(&samples).unwrap()).unwrap();
    let cfg = FitRunConfig {
        target: "lf.json".into(),
        fit: FitConfig { n_loc: 1, n_metropolis: 60, k_init: Some(vec![5]), ..FitConfig::default() },
    };
    let run = |sub: &str| {
        let out = dir.path().join(sub);
        let r = cmd_fit(&cfg, Some(dir.path()), &RunOptions::default(), &out).unwrap();
        (r.report.f, fs::read(out.join("fit.json")).unwrap(), fs::read(out.join("fit_curve.csv")).unwrap())
    };
    let (f, json_a, csv_a) = run("a");
    assert!(f >= 1.0 - 1e-6, "{f}");
    let (_, json_b, csv_b) = run("b");
    assert_eq!(json_a, json_b);
    assert_eq!(csv_a, csv_b);
}

#[test]
fn fit_bundled_target_reaches_bound() {
    let dir = tempfile::tempdir().unwrap();
    let out =
        cmd_fit(&FitRunConfig::default(), None, &RunOptions { seed: Some(1), ..RunOptions::default() }, dir.path())
            .unwrap();
    assert!(out.report.f >= 0.99);
    assert_eq!(out.report.trace_length, 400);
    assert_eq!(csv_rows(&dir.path().join("fit_curve.csv")).len(), 32);
}

#[test]
fn fit_reads_bundled_csv_and_rejects_bad_targets() {
    let dir = tempfile::tempdir().unwrap();
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/data/two_gaussians.csv");
    let cfg = FitRunConfig { target: data.into(), fit: FitConfig { n_metropolis: 5, ..FitConfig::default() } };
    assert!(cmd_fit(&cfg, None, &RunOptions::default(), dir.path()).is_ok());

    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "index,value\n0,1\n1,2\n2,3\n").unwrap();
    let cfg = FitRunConfig { target: bad.display().to_string(), ..FitRunConfig::default() };
    assert!(cmd_fit(&cfg, None, &RunOptions::default(), dir.path()).is_err());
    let cfg = FitRunConfig { target: "missing.csv".into(), ..FitRunConfig::default() };
    assert!(cmd_fit(&cfg, Some(dir.path()), &RunOptions::default(), dir.path()).is_err());
}

#[test]
fn qara_sweep_grids() {
    let dir = tempfile::tempdir().unwrap();
    let files = cmd_qara_sweep(&SweepConfig::default(), dir.path()).unwrap();
    assert_eq!(csv_rows(&files[0]).len(), 600);

    let empty = SweepConfig { w_grid: Some(vec![]), ..SweepConfig::default() };
    assert!(cmd_qara_sweep(&empty, dir.path()).is_err());
    assert!(cmd_qara_sweep(&SweepConfig { ratios: vec![], ..SweepConfig::default() }, dir.path()).is_err());

    let single = SweepConfig { ratios: vec![0.04], w_grid: Some(vec![0.003]), ..SweepConfig::default() };
    let rows = csv_rows(&cmd_qara_sweep(&single, dir.path()).unwrap()[0]);
    let wf: f64 = rows[0][2].parse().unwrap();
    let expect = failure_weight_after_qara(&ErroneousEstimate::relative(0.003, 0.04).unwrap()).unwrap();
    assert_eq!(wf, expect);
}

#[test]
fn metrics_sweeps() {
    let opts = RunOptions::default();
    let slater = metrics_rows(&MetricsConfig::default(), &opts).unwrap();
    assert_eq!(slater.len(), 15);
    for r in &slater {
        assert!(r.depth <= 3 * (r.n_q as f64).log2().ceil() as usize + 4);
    }
    let shift = MetricsConfig { builder: Builder::UShift, ..MetricsConfig::default() };
    assert!(metrics_rows(&shift, &opts).unwrap().iter().all(|r| r.depth == 1));

    let dir = tempfile::tempdir().unwrap();
    let cfg = MetricsConfig { builder: Builder::CLc, n_q: vec![3], n_loc: vec![2, 4, 8], ..MetricsConfig::default() };
    let rows = csv_rows(&cmd_metrics(&cfg, &opts, dir.path()).unwrap()[0]);
    let depths: Vec<usize> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
    assert!(depths[1] > 2 * depths[0] && depths[2] > 2 * depths[1]);
    let empty = MetricsConfig { n_q: vec![], ..MetricsConfig::default() };
    assert!(metrics_rows(&empty, &opts).is_err());
}

#[test]
fn binary_reports_errors_as_json() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"n_q": 3, "terms": [{"coeff": 1.0, "a": 0.5, "k_c": 99}]}"#).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_lorentz-encode"))
        .args(["encode", "--config"])
        .arg(&bad)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "InvalidParameter");

    let good = dir.path().join("good.json");
    fs::write(&good, serde_json::to_string(&mirrored_pair()).unwrap()).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_lorentz-encode"))
        .args(["encode", "--deterministic", "--config"])
        .arg(&good)
        .arg("--out")
        .arg(dir.path().join("o"))
        .env("LORENTZ_ENCODE_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let out = Command::new(env!("CARGO_BIN_EXE_lorentz-encode"))
        .args(["qara-sweep", "--out"])
        .arg(dir.path())
        .env("LORENTZ_ENCODE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
