use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use colloids_cli::RunManifest;

fn colloids(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_colloids")).args(args).env_remove("COLLOIDS_THREADS").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn config(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs").join(name).display().to_string()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.display().to_string()
}

fn manifest(dir: &Path) -> RunManifest {
    serde_json::from_str(&fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap()
}

#[test]
fn specfun_prints_one_value_per_line() {
    let out = colloids(&["specfun", "--fn", "besselk", "--args", "0", "1", "2"]);
    assert!(out.status.success());
    let values: Vec<f64> = stdout(&out).lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(values.len(), 2);
    assert!((values[0] - 0.421_024_438_240_708_3).abs() < 1e-14);
    assert!((values[1] - 0.113_893_872_749_533_4).abs() < 1e-14);

    let out = colloids(&["specfun", "--fn", "ck", "--args", "0", "1", "2", "-3", "6"]);
    assert_eq!(stdout(&out), "2\n0\n-2\n0\n-2\n");

    let out = colloids(&["specfun", "--fn", "erfc", "--args", "0"]);
    assert_eq!(stdout(&out), "1\n");
}

#[test]
fn bad_arguments_exit_with_config_status() {
    let out = colloids(&["specfun", "--fn", "polylog", "--args", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = colloids(&["specfun", "--fn", "theta", "--args", "x"]);
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_colloids"))
        .args(["specfun", "--fn", "erfc", "--args", "0"])
        .env("COLLOIDS_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_errors_name_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let overlap = write(
        dir.path(),
        "overlap.toml",
        "epsilon = 0.5\n[[particles]]\nx = 0.0\ny = 0.0\ndata = \"constant(1)\"\n[[particles]]\nx = 7.0\ny = 0.0\ndata = \"constant(1)\"\n",
    );
    let out = colloids(&["energy", "--config", &overlap]);
    assert_eq!(out.status.code(), Some(2));
    let broken = write(dir.path(), "broken.toml", "epsilon = \n");
    let out = colloids(&["energy", "--config", &broken]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("broken.toml") && err.contains("line"), "{err}");
    let unknown = write(dir.path(), "anneal.toml", "[protocol]\nsides = 4\n");
    let out = colloids(&["anneal", "--config", &unknown, "--out", dir.path().join("a").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn energy_sweep_emits_one_row_per_gap() {
    let out = colloids(&["energy", "--config", &config("two_disks.toml"), "--sweep", "b=1:3:0.5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "b_blownup,self_kappa,neck_total_kappa,remainder_bound_kappa,total_kappa");
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 5);
    for (k, row) in rows.iter().enumerate() {
        assert!((row[0] - (1.0 + 0.5 * k as f64)).abs() < 1e-12);
        assert!((row[1] + row[2] - row[4]).abs() < 1e-9 * row[4].abs());
        assert!(row[2] < 0.0);
    }
    assert!(rows.windows(2).all(|w| w[1][2] > w[0][2]));

    let out = colloids(&["--physical", "energy", "--config", &config("two_disks.toml")]);
    let text = stdout(&out);
    assert!(text.starts_with("b_physical,"));
    let b: f64 = text.lines().nth(1).unwrap().split(',').next().unwrap().parse().unwrap();
    assert!((b - 0.25).abs() < 1e-12);
}

#[test]
fn solve_writes_reproducible_outputs_and_one_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out_dir = dir.path().join(name);
        let out = colloids(&[
            "solve",
            "--config",
            &config("two_disks.toml"),
            "--modes",
            "16",
            "--colloc",
            "80",
            "--fd",
            "0.2,8",
            "--grid",
            "-8:8:4,-2:2:2",
            "--out",
            out_dir.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        out_dir
    };
    let (a, b) = (run("a"), run("b"));
    for file in ["summary.csv", "coefficients.csv", "field.csv"] {
        assert_eq!(fs::read(a.join(file)).unwrap(), fs::read(b.join(file)).unwrap(), "{file}");
    }
    let manifests = fs::read_dir(&a).unwrap().filter(|e| e.as_ref().unwrap().file_name() == "manifest.json").count();
    assert_eq!(manifests, 1);
    let (ma, mb) = (manifest(&a), manifest(&b));
    assert_eq!(ma.subcommand, "solve");
    assert_eq!(ma.input_hash, mb.input_hash);
    assert_eq!(ma.input_hash.len(), 64);
    assert_eq!(ma.outputs, vec!["summary.csv", "coefficients.csv", "field.csv"]);

    let summary = fs::read_to_string(a.join("summary.csv")).unwrap();
    let value = |method: &str| -> f64 {
        let line = summary.lines().find(|l| l.starts_with(&format!("{method},energy_kappa"))).unwrap();
        line.rsplit(',').next().unwrap().parse().unwrap()
    };
    assert!((value("fd") / value("collocation") - 1.0).abs() < 0.01);

    let field = fs::read_to_string(a.join("field.csv")).unwrap();
    let rows: Vec<&str> = field.lines().skip(1).collect();
    assert_eq!(rows.len(), 5 * 3);
    // disks of radius 4 at x = ±5 cover every sample except the x = 0 column
    assert_eq!(rows.iter().filter(|r| r.ends_with("NaN,NaN")).count(), 12);
    assert!(rows.iter().filter(|r| r.starts_with("0,")).all(|r| !r.contains("NaN")));
    assert_eq!(fs::read_to_string(a.join("coefficients.csv")).unwrap().lines().count(), 1 + 2 * 33);
}

#[test]
fn anneal_outputs_follow_the_schema() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "small.toml",
        "[protocol]\nside = 4\nbox_half_width = 6.0\ndegree = 3\n[schedule]\nsweeps = 60\n",
    );
    let run = |name: &str, seed: &str| {
        let out_dir = dir.path().join(name);
        let out =
            colloids(&["anneal", "--config", &cfg, "--seed", seed, "--snapshots", "3", "--out", out_dir.to_str().unwrap()]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        out_dir
    };
    let (a, b, c) = (run("a", "4"), run("b", "4"), run("c", "5"));
    let traj = fs::read_to_string(a.join("trajectory.jsonl")).unwrap();
    assert_eq!(traj, fs::read_to_string(b.join("trajectory.jsonl")).unwrap());
    assert_ne!(traj, fs::read_to_string(c.join("trajectory.jsonl")).unwrap());
    let records: Vec<serde_json::Value> = traj.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 4);
    for r in &records {
        assert_eq!(r["schema_version"], 1);
        assert_eq!(r["positions"].as_array().unwrap().len(), 16);
        assert!(r["degrees"].as_array().unwrap().iter().all(|d| d == 3));
    }
    assert_eq!(records.last().unwrap()["sweep"], 60);

    let hist = fs::read_to_string(a.join("histograms.csv")).unwrap();
    assert!(hist.starts_with("bin_center_rad,count,class,degree\n"));
    assert!(hist.lines().skip(1).all(|l| l.contains(",nn,") || l.contains(",second_nn,") || l.contains(",mixed_contact,")));
    let summary = fs::read_to_string(a.join("summary.csv")).unwrap();
    assert!(summary.starts_with("record,t_high,t_low,accepted,trials,value\n"));
    assert_eq!(summary.lines().filter(|l| l.starts_with("acceptance_decile_")).count(), 10);
    let m = manifest(&a);
    assert_eq!(m.seed, Some(4));
    assert_eq!(m.resolved_config["anneal"]["protocol"]["side"], 4);
    assert_ne!(m.input_hash, manifest(&c).input_hash);
}

#[test]
fn verify_reports_each_check() {
    let out = colloids(&["verify", "specfun"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("suite,criterion,check,measured,required,status\n"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",PASS")));

    let dir = tempfile::tempdir().unwrap();
    let out = colloids(&["verify", "asymptotics", "--criterion", "2", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    assert!(dir.path().join("report.csv").exists());
    assert_eq!(manifest(dir.path()).outputs, vec!["report.csv"]);

    let out = colloids(&["verify", "specfun", "--criterion", "3"]);
    assert_eq!(out.status.code(), Some(2));
}
