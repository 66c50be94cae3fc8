// Copyright 2026 The tomoinfo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::process::Command;

use clap::CommandFactory;
use serde_json::Value;
use tomoinfo::cli::{run, Cli};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("tomoinfo").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn mub_check_qutrit() {
    let v = json(&["mub", "check", "--dim", "3"]);
    assert_eq!(v["pass"], true);
    assert!(v["max_deviation"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn mub_check_rejects_composite_dimension() {
    let (code, out, err) = call(&["mub", "check", "--dim", "4"]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.starts_with("error[unsupported_dimension]"), "{err}");
}

#[test]
fn mub_export_round_trips() {
    let (_, out, _) = call(&["mub", "export", "--dim", "5"]);
    let set: tomoinfo::MubSet = serde_json::from_str(&out).unwrap();
    assert_eq!(set.dim(), 5);
    assert!(tomoinfo::verify_complementarity(&set).pass);
}

#[test]
fn bz_error_pure_qubit() {
    let v = json(&["bz-error", "--dim", "2", "--purity", "1.0"]);
    assert!((v["E"].as_f64().unwrap() - 1.0).abs() <= 1e-12);
    assert!((v["invariant_information"].as_f64().unwrap() - 1.0).abs() <= 1e-12);
}

#[test]
fn missing_counts_file() {
    let (code, out, err) = call(&[
        "estimate",
        "--method",
        "direct",
        "--dim",
        "2",
        "--counts",
        "missing.json",
    ]);
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.contains("counts file not found"), "{err}");
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn sample_then_estimate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("counts.json");
    for scheme in ["mub", "ortho"] {
        let (_, counts, _) = call(&[
            "sample", "--dim", "3", "--purity", "0.5", "--scheme", scheme, "--shots", "500", "--seed", "3",
        ]);
        std::fs::write(&path, counts).unwrap();
        let p = path.to_str().unwrap();
        for method in ["direct", "direct-projected", "ml"] {
            let v = json(&[
                "estimate", "--method", method, "--scheme", scheme, "--dim", "3", "--counts", p,
            ]);
            assert_eq!(v["state"]["dim"], 3);
            assert!(v["min_eigenvalue"].is_number());
            assert!(v["iterations"].is_number());
            if method != "direct" {
                assert!(v["min_eigenvalue"].as_f64().unwrap() >= -1e-10);
                assert!(v["log_likelihood"].as_f64().unwrap() < 0.0);
            }
        }
        // A record of one scheme is refused by the other.
        let other = if scheme == "mub" { "ortho" } else { "mub" };
        let (code, _, err) = call(&["estimate", "--scheme", other, "--dim", "3", "--counts", p]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error[scheme_mismatch]"), "{err}");
    }
}

#[test]
fn estimate_rejects_dimension_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let (_, counts, _) = call(&["sample", "--dim", "2"]);
    std::fs::write(&path, counts).unwrap();
    let (code, _, err) = call(&["estimate", "--dim", "3", "--counts", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error[dimension_mismatch]"), "{err}");
}

#[test]
fn fisher_reports_closed_form() {
    let v = json(&[
        "fisher",
        "--dim",
        "3",
        "--shots",
        "90",
        "--closed-form",
        "--ellipsoid",
    ]);
    let t = v["trace_inverse"].as_f64().unwrap();
    assert!((t - 16.0 / (9.0 * 90.0)).abs() <= 1e-12);
    assert!((v["closed_form"].as_f64().unwrap() - t).abs() <= 1e-12);
    assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 8);
    let scales: f64 = v["ellipsoid"]["half_axis_scales"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .sum();
    assert!((scales - t).abs() <= 1e-12);
}

#[test]
fn fisher_state_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rho.json");
    let rho = tomoinfo::random_state(2, tomoinfo::StateKind::PurityTarget(0.5), 1).unwrap();
    std::fs::write(&path, tomoinfo::io::to_json_string(&rho).unwrap()).unwrap();
    let v = json(&[
        "fisher",
        "--dim",
        "2",
        "--state",
        path.to_str().unwrap(),
        "--form",
        "multinomial",
        "--shots",
        "10",
    ]);
    let want = (2.0 - tomoinfo::purity(&rho)) / 10.0;
    assert!((v["trace_inverse"].as_f64().unwrap() - want).abs() <= 1e-12);
    let (code, _, err) = call(&["fisher", "--dim", "2", "--state", "x.json", "--purity", "0.5"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error[usage]"), "{err}");
}

#[test]
fn scan_outputs() {
    let v = json(&[
        "scan",
        "invariance",
        "--dim",
        "2",
        "--quantity",
        "crb_gauss",
        "--purity",
        "0.5",
        "--unitaries",
        "20",
    ]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 20);
    assert!(v["relative_spread"].as_f64().unwrap() <= 1e-9);
    let (code, out, _) = call(&[
        "scan",
        "invariance",
        "--dim",
        "3",
        "--unitaries",
        "5",
        "--out",
        "csv",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("unitary,value"));
    assert_eq!(out.lines().count(), 6);
}

#[test]
fn mc_run_paper_table() {
    let v = json(&[
        "mc",
        "run",
        "--dim",
        "3",
        "--shots",
        "90",
        "--trials",
        "3000",
        "--paper-table",
    ]);
    let e_over_n = v["e_over_n"].as_f64().unwrap();
    assert!((e_over_n - 8.0 / 270.0).abs() <= 1e-15);
    assert!((v["trace_inverse_gaussian"].as_f64().unwrap() - 16.0 / 810.0).abs() <= 1e-15);
    let mean = v["mean_d"].as_f64().unwrap();
    let se = v["std_error_of_mean"].as_f64().unwrap();
    assert!((mean - e_over_n).abs() <= 3.0 * se);
}

#[test]
fn mc_config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("exp.json");
    std::fs::write(
        &path,
        r#"{"dim": 3, "scheme": "ortho", "estimator": "ortho-inv", "shots": 30, "trials": 40, "base_seed": 5}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let v = json(&["mc", "run", "--config", p]);
    assert_eq!(v["config"]["dim"], 3);
    assert_eq!(v["config"]["trials"], 40);
    assert_eq!(v["config"]["base_seed"], 5);
    assert_eq!(v["summary"]["trials_used"], 40);
    let v = json(&["mc", "run", "--config", p, "--trials", "7", "--seed", "9"]);
    assert_eq!(v["config"]["trials"], 7);
    assert_eq!(v["config"]["base_seed"], 9);
    assert_eq!(v["config"]["scheme"], "ortho");

    std::fs::write(&path, r#"{"dim": 3, "shots": 30, "colour": "red"}"#).unwrap();
    let (code, _, err) = call(&["mc", "run", "--config", p]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error[parse]"), "{err}");
}

#[test]
fn strict_flags_nonconverged_ml() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("exp.json");
    std::fs::write(
        &path,
        r#"{"dim": 3, "estimator": "ml", "shots": 30, "trials": 5, "ml": {"max_iter": 1, "tol": 0.0}}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let (code, out, err) = call(&["mc", "run", "--config", p]);
    assert_eq!(code, 0);
    assert!(err.starts_with("warning[reliability]"), "{err}");
    let (strict_code, strict_out, _) = call(&["mc", "run", "--config", p, "--strict"]);
    assert_eq!(strict_code, 2);
    assert_eq!(strict_out, out);
}

#[test]
fn incompatible_scheme_and_estimator() {
    for args in [
        ["mc", "run", "--scheme", "mub", "--method", "ortho-inv"],
        ["mc", "run", "--scheme", "eigen", "--method", "ml"],
    ] {
        let (code, out, err) = call(&args);
        assert_eq!(code, 1);
        assert!(out.is_empty());
        assert!(err.starts_with("error[incompatible_config]"), "{err}");
    }
}

#[test]
fn sweep_csv() {
    let (code, out, _) = call(&[
        "mc",
        "sweep",
        "--dim",
        "2",
        "--purity",
        "0.5",
        "--shots-list",
        "100,1000",
        "--trials",
        "50",
        "--out",
        "csv",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].starts_with("N,n_mean_d_ml,"));
    assert_eq!(lines.len(), 3);
    let (code, _, _) = call(&["mc", "sweep", "--shots-list", "1000,100", "--trials", "5"]);
    assert_eq!(code, 1);
}

#[test]
fn seeded_commands_are_reproducible() {
    let commands: [&[&str]; 5] = [
        &["sample", "--dim", "5", "--purity", "0.4", "--seed", "8"],
        &[
            "scan",
            "invariance",
            "--dim",
            "3",
            "--quantity",
            "crb_multinomial",
            "--unitaries",
            "10",
            "--seed",
            "8",
        ],
        &[
            "mc", "run", "--dim", "2", "--method", "ml", "--trials", "50", "--seed", "8",
        ],
        &[
            "mc",
            "sweep",
            "--shots-list",
            "10,100",
            "--trials",
            "30",
            "--seed",
            "8",
            "--out",
            "csv",
        ],
        &["bz-error", "--dim", "7", "--purity", "0.3", "--seed", "8"],
    ];
    for args in commands {
        let a = call(args);
        let b = call(args);
        assert_eq!(a.0, 0, "{}", a.2);
        assert_eq!(a, b, "{args:?}");
    }
    assert_ne!(
        call(&["sample", "--seed", "1"]).1,
        call(&["sample", "--seed", "2"]).1
    );
}

#[test]
fn help_lists_every_flag_with_its_default() {
    // Options without a value, and inputs that are absent by default.
    let no_default = [
        "help",
        "version",
        "strict",
        "closed_form",
        "ellipsoid",
        "paper_table",
        "exclude_nonconverged",
        "state",
        "config",
        "counts",
    ];
    let mut cmd = Cli::command();
    cmd.build();
    let mut stack = vec![cmd];
    let mut checked = 0;
    while let Some(c) = stack.pop() {
        let help = c.clone().render_help().to_string();
        for arg in c.get_arguments() {
            let Some(long) = arg.get_long() else { continue };
            assert!(
                help.contains(&format!("--{long}")),
                "{} help misses --{long}",
                c.get_name()
            );
            let id = arg.get_id().as_str();
            if no_default.contains(&id) {
                continue;
            }
            let line = help
                .lines()
                .skip_while(|l| !l.contains(&format!("--{long}")))
                .take_while(|l| !l.trim().is_empty())
                .collect::<Vec<_>>()
                .join(" ");
            assert!(
                line.contains("[default:"),
                "{} --{long} shows no default",
                c.get_name()
            );
            checked += 1;
        }
        stack.extend(c.get_subcommands().cloned());
    }
    assert!(checked > 30);
}

#[test]
fn help_defaults_match_behavior() {
    let pairs: [(&[&str], &[&str]); 5] = [
        (
            &["mc", "run", "--trials", "20"],
            &[
                "mc", "run", "--trials", "20", "--dim", "2", "--scheme", "mub", "--method", "direct",
                "--shots", "100", "--seed", "0", "--out", "json",
            ],
        ),
        (
            &["fisher"],
            &[
                "fisher", "--dim", "2", "--form", "gaussian", "--scheme", "mub", "--shots", "1",
            ],
        ),
        (
            &["scan", "invariance", "--unitaries", "5"],
            &[
                "scan",
                "invariance",
                "--unitaries",
                "5",
                "--dim",
                "2",
                "--purity",
                "0.9",
                "--quantity",
                "bz_error",
                "--shots",
                "1",
            ],
        ),
        (
            &["sample"],
            &[
                "sample", "--dim", "2", "--scheme", "mub", "--shots", "100", "--seed", "0",
            ],
        ),
        (
            &["mc", "sweep", "--trials", "10"],
            &[
                "mc",
                "sweep",
                "--trials",
                "10",
                "--shots-list",
                "100,1000,10000",
                "--dim",
                "2",
                "--jobs",
                "0",
            ],
        ),
    ];
    for (short, long) in pairs {
        assert_eq!(call(short), call(long), "{short:?}");
    }
    let (_, out, _) = call(&["sample", "--shots", "7"]);
    assert!(out.contains("\"N\":7"));
    let mixed = json(&["bz-error", "--dim", "3"]);
    assert!((mixed["E"].as_f64().unwrap() - 8.0 / 3.0).abs() <= 1e-12);
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out, err) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage"));
    assert!(err.is_empty());
    assert_eq!(call(&["--version"]).0, 0);
    assert_eq!(call(&[]).0, 1);
}

#[test]
fn seed_from_environment() {
    let bin = env!("CARGO_BIN_EXE_tomoinfo");
    let output = |env: Option<&str>, args: &[&str]| {
        let mut cmd = Command::new(bin);
        cmd.args(args).env_remove("TOMOINFO_SEED");
        if let Some(s) = env {
            cmd.env("TOMOINFO_SEED", s);
        }
        let o = cmd.output().unwrap();
        assert!(o.status.success());
        o.stdout
    };
    let by_env = output(Some("42"), &["sample", "--dim", "3", "--purity", "0.5"]);
    let by_flag = output(None, &["sample", "--dim", "3", "--purity", "0.5", "--seed", "42"]);
    let default = output(None, &["sample", "--dim", "3", "--purity", "0.5"]);
    let flag_wins = output(
        Some("42"),
        &["sample", "--dim", "3", "--purity", "0.5", "--seed", "0"],
    );
    assert_eq!(by_env, by_flag);
    assert_ne!(by_env, default);
    assert_eq!(flag_wins, default);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_tomoinfo");
    let o = Command::new(bin)
        .args(["estimate", "--counts", "nowhere.json"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("counts file not found"));
    let o = Command::new(bin)
        .args(["mub", "check", "--dim", "7"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
