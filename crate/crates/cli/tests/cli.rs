use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> PathBuf {
    root().join("fixtures").join(name)
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn hrg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hrg"))
        .args(args)
        .env("HRG_FIXTURES", root().join("fixtures"))
        .output()
        .expect("hrg runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn validate_exit_codes() {
    let o = hrg(&["validate", p(&fixture("pqr-7.1.json"))]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["ok"], true);

    let dir = tempfile::tempdir().unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(fixture("pqr-7.1.json")).unwrap()).unwrap();
    // two squares now share the path d·a, so the square map is not a bijection
    let first = v["squares"][0].clone();
    v["squares"][1]["i_edge"] = first["i_edge"].clone();
    v["squares"][1]["j_edge"] = first["j_edge"].clone();
    let bad = dir.path().join("corrupted.json");
    std::fs::write(&bad, serde_json::to_string(&v).unwrap()).unwrap();
    let o = hrg(&["validate", p(&bad)]);
    assert_eq!(code(&o), 1);
    let r = json(&o);
    assert_eq!(r["ok"], false);
    assert!(r["failure"]["pair"].is_array() || r["reason"].as_str().unwrap().contains(first["i_edge"].as_str().unwrap()), "{r}");

    let o = hrg(&["validate", p(&data("notjson.txt"))]);
    assert_eq!(code(&o), 64);
}

#[test]
fn analyze_verdicts() {
    let o = hrg(&["analyze", p(&fixture("pqr-7.1.json")), "--depth", "10"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["verdict"], "NotEmbeds");

    let o = hrg(&["analyze", p(&fixture("b2.json"))]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["verdict"], "Embeds");

    let o = hrg(&["analyze", p(&fixture("prop-3.21.json")), "--depth", "10"]);
    assert_eq!(code(&o), 2);
    let notes = json(&o)["notes"].to_string();
    assert!(notes.contains("vertex monoid"), "{notes}");
}

#[test]
fn analyze_with_hints_embeds_a_face_of_the_three_graph() {
    // the 1-2 face with c = 1 on the paper's edges
    let dir = tempfile::tempdir().unwrap();
    let full = hrg_core::catalog::example_3_3();
    let (colors, ones) = hrg_core::catalog::example_3_3_hints().into_iter().next().unwrap();
    let face = dir.path().join("face.json");
    std::fs::write(&face, full.restrict_colors(&colors).to_json()).unwrap();
    let hint: Vec<String> = ones.iter().map(|id| format!("{id}=1")).collect();
    let o = hrg(&["analyze", p(&face), "--depth", "20", "--hint", &hint.join(",")]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn fixtures_resolve_through_the_environment() {
    let o = hrg(&["validate", "pqr-7.1"]);
    assert_eq!(code(&o), 0);
    let o = Command::new(env!("CARGO_BIN_EXE_hrg"))
        .args(["validate", "pqr-7.1"])
        .env("HRG_FIXTURES", "/nonexistent")
        .current_dir(std::env::temp_dir())
        .output()
        .unwrap();
    assert_eq!(code(&o), 64);
}

#[test]
fn build_pipelines() {
    let o = hrg(&["build", p(&fixture("pipelines/b2-free-cover.json"))]);
    assert_eq!(code(&o), 0);
    let w = hrg_core::Presentation::from_json(&stdout(&o)).unwrap();
    assert!(w.vertices.contains(&"(1|u)".to_string()));
    // radius 3 in the 4-regular tree
    assert_eq!(w.vertices.len(), 1 + 4 + 12 + 36);

    let dir = tempfile::tempdir().unwrap();
    for name in ["monoidal-flip.json", "yang-baxter-3.json"] {
        let out = dir.path().join(name);
        let o = hrg(&["build", p(&fixture(&format!("pipelines/{name}"))), "--out", p(&out)]);
        assert_eq!(code(&o), 0, "{name}");
        assert_eq!(code(&hrg(&["validate", p(&out)])), 0, "{name}");
    }

    let o = hrg(&["build", p(&data("bad-step.json"))]);
    assert_eq!(code(&o), 64);
    assert!(String::from_utf8_lossy(&o.stderr).contains("step 2"));
}

#[test]
fn a2_subcommands() {
    let o = hrg(&["a2", "normalize", "--preset", "A1", "a0 a4^-1 a6"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "a3^-1 a0^-1 (0,2)\n");
    let o = hrg(&["a2", "normalize", "a1 a2"]);
    assert_eq!(stdout(&o), "a4^-1 (0,1)\n");
    assert_eq!(code(&hrg(&["a2", "normalize", "a9"])), 64);
    assert_eq!(code(&hrg(&["a2", "normalize", "b1"])), 64);

    let dir = tempfile::tempdir().unwrap();
    let l = dir.path().join("l.json");
    assert_eq!(code(&hrg(&["a2", "lambda-t", "--preset", "A1", "--out", p(&l)])), 0);
    assert_eq!(code(&hrg(&["validate", p(&l)])), 0);
    let side: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("l.cocycles.json")).unwrap()).unwrap();
    assert_eq!(side["c"].as_object().unwrap().len(), 336);
    assert_eq!(side["c"]["a0a3a5^-1"], "a0");

    let prefix = dir.path().join("M");
    let o = hrg(&["a2", "matrices", "--preset", "A1", "--out-prefix", p(&prefix)]);
    assert_eq!(code(&o), 0);
    for i in 1..=2 {
        let text = std::fs::read_to_string(format!("{}{i}.csv", p(&prefix))).unwrap();
        let rows: Vec<&str> = text.lines().collect();
        assert_eq!(rows.len(), 43);
        assert!(rows.iter().all(|r| r.split(',').count() == 43));
    }
}

#[test]
fn orbit_separation() {
    let o = hrg(&["orbit", "separate", "--graph", "lambda-E-4.5", "--x", "e-ray", "--y", "f-ray", "--n-max", "20"]);
    assert_eq!(code(&o), 2);
    let r = json(&o);
    assert_eq!(r["verdict"], "not_separated_within");
    assert_eq!(r["n"], 20);
    assert_eq!(r["witnesses"].as_array().unwrap().len(), 21);

    let o = hrg(&["orbit", "separate", "--graph", "tree-fixture", "--x", "p1", "--y", "p2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["verdict"], "separated");

    let o = hrg(&["orbit", "separate", "--graph", "lambda-E-4.5", "--x", "e-ray", "--y", "e-ray"]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["verdict"], "shift_equivalent");

    let o = hrg(&["orbit", "separate", "--graph", "lambda-E-4.5", "--x", "z:x", "--y", "e-ray"]);
    assert_eq!(code(&o), 64);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["analyze", "steinberg-3.2", "--depth", "10"],
        vec!["analyze", "three-graph-3.3", "--depth", "20"],
        vec!["orbit", "separate", "--graph", "tree-fixture", "--x", "ray:12", "--y", "ray:1/2"],
        vec!["a2", "sigma", "--radius", "1"],
    ] {
        let a = hrg(&args);
        let b = hrg(&args);
        assert!(!a.stdout.is_empty(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(code(&a), code(&b));
    }
}

#[test]
fn fixtures_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&hrg(&["fixtures", "emit", "--dir", p(dir.path())])), 0);
    for (name, file) in hrg_core::catalog::FIXTURE_FILES {
        let emitted = std::fs::read_to_string(dir.path().join(file)).unwrap();
        let parsed = hrg_core::Presentation::from_json(&emitted).unwrap();
        assert_eq!(parsed.to_json(), emitted, "{name}");
        let shipped = std::fs::read_to_string(fixture(file)).unwrap();
        assert_eq!(shipped, emitted, "shipped {file} is stale");
        assert_eq!(stdout(&hrg(&["fixtures", "show", name])), emitted);
    }
}

#[test]
fn seeds_fix_random_output() {
    let a = hrg(&["fixtures", "random", "--seed", "11"]);
    let b = hrg(&["fixtures", "random", "--seed", "11"]);
    let c = hrg(&["fixtures", "random", "--seed", "12"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let o = hrg(&["a2", "factorize", "--samples", "200", "--seed", "5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&hrg(&["no-such-command"])), 64);
    assert_eq!(code(&hrg(&["analyze"])), 64);
    assert_eq!(code(&hrg(&["a2", "oracle", "--max-len", "3", "--closure-len", "2"])), 64);
}
