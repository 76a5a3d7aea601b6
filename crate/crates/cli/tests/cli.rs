use std::path::PathBuf;
use std::process::Command;

use delpezzo_cli::{run, Status};
use delpezzo_core::degeneration::{gw_from_pt, RelEntry, RelativeTable};
use delpezzo_core::exact::{rat, RationalFunction};
use delpezzo_core::partitions::{GradedRing, WeightedPartition};
use serde_json::{json, Value};

fn cli(args: &str) -> delpezzo_cli::CommandResult {
    run(std::iter::once("delpezzo").chain(args.split_whitespace()))
}

fn ok(args: &str) -> Value {
    let r = cli(args);
    assert_eq!(r.status, Status::Ok, "{args}: {:?}", r.diagnostics);
    assert_eq!(r.exit_code, 0);
    r.payload
}

/// Writes `contents` to a per-test file under the target temp directory.
fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn table_rows() {
    let p = ok("table");
    let rows = p["rows"].as_array().unwrap();
    let c3: Vec<i64> = rows.iter().map(|r| r["c3_X"].as_i64().unwrap()).collect();
    assert_eq!(c3, vec![-38, -16, -6, 0, 4, 6, 8, 6, 4]);
    for r in rows {
        assert_eq!(r["delta_chi"], r["delta_chi_recomputed"]);
    }
    let one = ok("table --label 6II");
    assert_eq!(one["rows"][0]["label"], "6II");
    assert_eq!(one["rows"][0]["X"]["c1_cubed"], 48);
}

#[test]
fn usage_errors_exit_two() {
    for args in ["frobnicate", "table --label 9", "genpos", "toric --k 9", "nakajima --ring p2", "bridge --num 1"] {
        let r = cli(args);
        assert_eq!(r.status, Status::Error, "{args}");
        assert_eq!(r.exit_code, 2, "{args}");
        assert!(!r.diagnostics.is_empty());
    }
}

#[test]
fn help_is_not_an_error() {
    let r = cli("--help");
    assert_eq!(r.exit_code, 0);
    assert!(r.render_payload().unwrap().contains("degenerate"));
}

#[test]
fn malformed_json_reports_location() {
    let path = scratch("broken_fan.json", "{\"rays\": [[1, 0],\n  [0, 1]\n  \"labels\": []}");
    let r = cli(&format!("toric --json {}", path.display()));
    assert_eq!(r.exit_code, 1);
    assert!(r.diagnostics[0].contains("line 3"), "{:?}", r.diagnostics);
    let r = cli("toric --json /nonexistent/fan.json");
    assert_eq!(r.exit_code, 1);
}

#[test]
fn toric_output_reads_back() {
    let p = ok("toric --k 3");
    let fan = &p["fans"][0]["fan"];
    let path = scratch("fan_k3.json", &fan.to_string());
    let back = ok(&format!("toric --json {}", path.display()));
    assert_eq!(back["fan"], *fan);
    assert_eq!(back["report"]["K_squared"], 6);
    let all = ok("toric");
    let positions: Vec<&Value> = all["fans"].as_array().unwrap().iter().map(|f| &f["blow_up_position"]).collect();
    assert!(positions[0].is_null());
    assert!(positions[1..].iter().all(|p| p.is_u64()));
}

#[test]
fn non_smooth_fan_is_reported() {
    let path = scratch("singular_fan.json", r#"{"rays": [[1, 0], [1, 2], [-1, -1]], "labels": ["a", "b", "c"]}"#);
    let p = ok(&format!("toric --json {}", path.display()));
    assert_eq!(p["report"]["smooth"], false);
    assert!(p["report"]["K_squared"].is_null());
}

#[test]
fn chern_rows_and_json_input() {
    let p = ok("chern");
    assert_eq!(p["rows"].as_array().unwrap().len(), 8);
    assert_eq!(p["rows"][4]["chern"], json!({ "c1_cubed": 40, "c1_c2": 24, "c3": 14 }));
    let path = scratch("p2_trivial.json", r#"{"surface": {"K_squared": 9, "euler": 3}, "bundle": {"L_dot_L": 0, "L_dot_K": 0}}"#);
    let q = ok(&format!("chern --json {}", path.display()));
    // P² × P¹
    assert_eq!(q["chern"], json!({ "c1_cubed": 54, "c1_c2": 24, "c3": 6 }));
}

#[test]
fn genus_modes() {
    let todd = ok("genus");
    assert!(todd["rows"].as_array().unwrap().iter().all(|r| r["X"] == "1" && r["Y"] == "1"));
    let l = ok("genus --l-genus");
    assert!(l["rows"].as_array().unwrap().iter().all(|r| r["X"] == "0" && r["difference"] == "0"));
    let printed = ok("genus --as-printed --label 1");
    assert_ne!(printed["rows"][0]["X"], "1");
    let custom = ok("genus --weights 1/2,1/12,0");
    assert_eq!(custom["rows"], todd["rows"]);
    assert_eq!(cli("genus --weights 1,2").exit_code, 2);
}

#[test]
fn genpos_sigma_and_custom_points() {
    let p = ok("genpos --sigma --t 3");
    assert_eq!(p["all_generic"], true);
    assert_eq!(p["determinant_count"], 92);
    assert_eq!(p["sample"]["t"], "3");
    let points = p["points"].to_string();
    let path = scratch("sigma_points.json", &points);
    let again = ok(&format!("genpos --json {}", path.display()));
    assert_eq!(again["collinearity"], p["collinearity"]);
    // three points on the line y = 0
    let bad = json!([
        { "coords": [["1"], ["0"], ["1"]] }, { "coords": [["2"], ["0"], ["1"]] }, { "coords": [["3"], ["0"], ["1"]] },
        { "coords": [["0"], ["1"], ["1"]] }, { "coords": [["1"], ["5"], ["1"]] }, { "coords": [["7"], ["2"], ["1"]] },
        { "coords": [["4"], ["9"], ["1"]] }, { "coords": [["2"], ["11"], ["3"]] }
    ]);
    let path = scratch("collinear_points.json", &bad.to_string());
    let r = cli(&format!("genpos --json {}", path.display()));
    assert_eq!(r.exit_code, 1);
    assert_eq!(r.payload["all_generic"], false);
    assert!(r.payload["violations"].as_array().unwrap().contains(&json!("collinear[0,1,2]")));
}

#[test]
fn partitions_and_nakajima() {
    let p = ok("partitions --size 3 --ring point --set 4");
    assert_eq!(p["count"], 3);
    assert_eq!(p["set_partitions"]["count"], 15);
    let n = ok("nakajima --size 3 --ring p2");
    assert_eq!(n["diagonal_under_duality"], true);
    assert_eq!(n["nonzero"].as_array().unwrap().len(), n["basis"].as_array().unwrap().len());
    let one = ok("nakajima --ring p2 --eta 1:1,1:1,1:1 --nu 1:pt,1:pt,1:pt");
    assert_eq!(one["pairing"], "1/6");
    assert_eq!(cli("nakajima --ring p2 --eta 2:pt --nu 1:1").exit_code, 1);
}

#[test]
fn bar_transform_from_json() {
    let path = scratch("bar_identity.json", r#"{"alpha": [1, 1], "classes": ["h", "h"], "trunc": 4}"#);
    let p = ok(&format!("partitions --ring p2 --json {}", path.display()));
    let monomials: Vec<&Value> = p["bar"]["terms"].as_array().unwrap().iter().map(|t| &t["monomial"]).collect();
    assert_eq!(monomials, vec!["τ0(h)·τ0(h)"]);

    // K_{(1,1),(1)} = 2 merges the two insertions into τ0(h·h) = τ0(pt)
    let one = r#"{"var": "u", "valuation": 0, "coeffs": ["1"], "trunc": 4}"#;
    let two = r#"{"var": "u", "valuation": 0, "coeffs": ["2"], "trunc": 4}"#;
    let input = format!(
        r#"{{"alpha": [1, 1], "classes": ["h", "h"],
            "matrix": {{"max_size": 2, "trunc": 4, "entries": {{"1|1": [{{"series": {one}}}], "1,1|1": [{{"series": {two}}}]}}}}}}"#
    );
    let path = scratch("bar_merge.json", &input);
    let p = ok(&format!("partitions --ring p2 --json {}", path.display()));
    let terms = p["bar"]["terms"].as_array().unwrap();
    let merged = terms.iter().find(|t| t["monomial"] == "τ0(pt)").expect("merged term");
    assert_eq!(merged["coefficient"]["coeffs"][0]["re"], "2");
    assert_eq!(terms.len(), 2);
}

#[test]
fn rational_round_trips_into_bridge() {
    let p = ok("rational --coeffs 0,1,-2,3,-4,5,-6,7,-8,9");
    assert_eq!(p["display"], "(1*q) / (1 + 2*q + 1*q^2)");
    let path = scratch("q_over_1pq2.json", &p["function"].to_string());
    let a = ok(&format!("bridge --json {} --order 10", path.display()));
    let b = ok("bridge --num 0,1 --den 1,2,1 --order 10");
    assert_eq!(a, b);
    assert_eq!(b["series"]["valuation"], -2);
    assert_eq!(b["series"]["coeffs"][2]["re"], "1/12");
    assert_eq!(cli("rational --coeffs 1,2").exit_code, 1);
}

#[test]
fn degenerate_from_relative_tables() {
    // ρ = 0 splitting: GW entries built from PT entries by the relative correspondence
    let ring = GradedRing::point();
    let empty = WeightedPartition::new(Vec::new()).unwrap();
    let f0 = RationalFunction::from_real(&[rat(0), rat(1)], &[rat(1), rat(2), rat(1)]).unwrap();
    let f1 = RationalFunction::from_real(&[rat(1), rat(2)], &[rat(1), rat(-1)]).unwrap();
    let mut gw = RelativeTable::new();
    let mut pt = RelativeTable::new();
    for (comp, class, f, c) in [("A", "z0", &f0, 2), ("B", "i0", &f1, 0)] {
        let key = RelativeTable::key(comp, class, &[], &empty, &ring);
        gw.insert(key.clone(), RelEntry::Series(gw_from_pt(f, c, &empty, 12).unwrap()));
        pt.insert(key, RelEntry::Rational(f.clone()));
    }
    let input = json!({
        "lattice": {
            "zero_component": "A",
            "infinity_component": "B",
            "classes": {
                "beta": { "side": "total", "D_pairing": 0, "c_beta": 2, "pushforward": [0], "summands": [["z0", "i0"]] },
                "z0": { "side": "zero", "D_pairing": 0, "c_beta": 2, "pushforward": [0] },
                "i0": { "side": "infinity", "D_pairing": 0, "c_beta": 0, "pushforward": [0] }
            }
        },
        "ring": "point",
        "beta": "beta",
        "gw": gw,
        "pt": pt,
        "order": 8
    });
    let path = scratch("degenerate_rho0.json", &input.to_string());
    let p = ok(&format!("degenerate --json {}", path.display()));
    assert_eq!(p["correspondence"]["holds"], true);
    assert_eq!(p["splittings"].as_array().unwrap().len(), 1);

    // a wrong PT entry breaks the absolute correspondence
    let mut broken = input.clone();
    broken["pt"]["B|i0||"] = json!({ "num": ["1"], "den": ["1", "-1"] });
    let path = scratch("degenerate_broken.json", &broken.to_string());
    let r = cli(&format!("degenerate --json {}", path.display()));
    assert_eq!(r.exit_code, 1);
    assert_eq!(r.payload["correspondence"]["holds"], false);

    // a lattice that violates additivity is rejected while reading
    let mut bad = input;
    bad["lattice"]["classes"]["beta"]["c_beta"] = json!(3);
    let path = scratch("degenerate_bad_lattice.json", &bad.to_string());
    let r = cli(&format!("degenerate --json {}", path.display()));
    assert_eq!(r.exit_code, 1);
    assert!(r.diagnostics[0].contains("c_beta"), "{:?}", r.diagnostics);
}

#[test]
fn harness_and_control() {
    let p = ok("harness --seed 7 --runs 3 --order 8");
    assert_eq!(p["failures"], 0);
    let c = cli("harness --seed 7 --runs 2 --order 8 --corrupt");
    assert_eq!(c.exit_code, 0, "{:?}", c.diagnostics);
    assert_eq!(c.payload["localized"], 2);
    assert_eq!(cli("harness --runs 0").exit_code, 2);
}

#[test]
fn dt0_reports() {
    let p = ok("dt0 --order 6");
    let reports = p["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 9);
    assert!(reports.iter().all(|r| r["agrees"] == true));
}

#[test]
fn output_is_deterministic() {
    for args in ["table", "harness --seed 3 --runs 2 --order 6", "nakajima --size 2 --ring p2"] {
        assert_eq!(cli(args).render_payload(), cli(args).render_payload(), "{args}");
    }
}

#[test]
fn binary_exit_codes_and_streams() {
    let bin = env!("CARGO_BIN_EXE_delpezzo");
    let out = Command::new(bin).args(["bridge", "--num", "0,1", "--den", "1,2,1", "--order", "4"]).output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["series"]["valuation"], -2);
    let out = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}
