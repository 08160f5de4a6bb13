use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str], config: &str, out: &Path) -> Output {
    let dir = out.parent().unwrap();
    let cfg = dir.join(format!("{}.json", out.file_name().unwrap().to_string_lossy()));
    std::fs::write(&cfg, config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_polytoeplitz"))
        .args(args)
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(out)
        .output()
        .unwrap()
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn config_errors_exit_two_and_name_the_field() {
    let t = tempfile::tempdir().unwrap();
    let o = run(&["verify"], r#"{"N": 1}"#, &t.path().join("a"));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("`N`"));
    let o = run(&["verify"], r#"{"tolerance": "tight"}"#, &t.path().join("b"));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("`tolerance`"));
    let o = run(&["spectrum"], r#"{"symbol": "gaus:1"}"#, &t.path().join("c"));
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("`symbol`"));
}

#[test]
fn corrupted_tolerance_fails_verify() {
    let t = tempfile::tempdir().unwrap();
    let out = t.path().join("v");
    let o = run(&["verify"], r#"{"kind": "Disk", "tolerance": 1e-30}"#, &out);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&out.join("verify.json"));
    assert_eq!(v["result"]["pass"], false);
    assert!(v["config_hash"].as_str().unwrap().len() == 64);
}

#[test]
fn reduce_prints_reducers() {
    let t = tempfile::tempdir().unwrap();
    let o = run(&["reduce"], r#"{"kind": "FockPlane", "j": 1}"#, &t.path().join("f"));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().next(), Some("1 + (1/4)Δ"));
    let o = run(&["reduce"], r#"{"kind": "Disk", "j": 1}"#, &t.path().join("d"));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "1");
    let out = t.path().join("h");
    run(&["reduce"], r#"{"kind": "HalfPlane", "j": 2}"#, &out);
    let v = json(&out.join("reduce.json"));
    let w = v["result"]["weights"].as_array().unwrap();
    assert!(!w.is_empty() && w.iter().all(|x| x == 0));
}

#[test]
fn spectrum_carleson_and_bases_artifacts() {
    let t = tempfile::tempdir().unwrap();
    let out = t.path().join("s");
    let o = run(&["spectrum"], r#"{"kind": "Disk", "j": 2, "N": 20, "symbol": "indicator:0,0,0.5"}"#, &out);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(out.join("spectrum.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,s_n,log_s_n,class"));
    let s: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(s.len(), 20);
    assert!(s.windows(2).all(|w| w[0] > w[1]));

    let out = t.path().join("c");
    run(&["carleson"], r#"{"kind": "Disk", "k": 0, "symbol": "const:1"}"#, &out);
    let v = json(&out.join("carleson.json"));
    let k = v["result"]["constant"].as_f64().unwrap();
    assert!((k / (std::f64::consts::PI / 4.0) - 1.0).abs() < 0.01);
    assert!(v["result"]["profile"].as_array().unwrap().len() > 10);

    let out = t.path().join("b");
    run(&["bases"], r#"{"kind": "FockPlane", "j": 1, "N": 6}"#, &out);
    let gram = std::fs::read_to_string(out.join("gram.csv")).unwrap();
    assert_eq!(gram.lines().count(), 37);
    for l in gram.lines().skip(1) {
        let f: Vec<&str> = l.split(',').collect();
        let want = if f[0] == f[1] { 1.0 } else { 0.0 };
        assert!((f[2].parse::<f64>().unwrap() - want).abs() < 1e-10);
        assert!(f[3].parse::<f64>().unwrap().abs() < 1e-10);
    }
    let v = json(&out.join("bases.json"));
    assert!(v["quadrature"][0]["exactness"].as_u64().is_some());
}

#[test]
fn shipped_configs_verify() {
    let t = tempfile::tempdir().unwrap();
    for name in ["verify_fock", "verify_disk", "verify_halfplane"] {
        let cfg = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(format!("{name}.json"));
        let out = t.path().join(name);
        let o = Command::new(env!("CARGO_BIN_EXE_polytoeplitz"))
            .arg("--config")
            .arg(&cfg)
            .arg("--out")
            .arg(&out)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(out.join("verify.meta.json").exists());
    }
}
