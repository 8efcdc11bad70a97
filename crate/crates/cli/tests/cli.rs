use realstack_cli::dispatch;
use realstack_cli::golden::{default_dir, expected_path, load_manifest, resolved_args};
use serde_json::Value;

fn golden(name: &str) -> String {
    default_dir().join(name).display().to_string()
}

fn json_of(stdout: &str) -> Value {
    serde_json::from_str(stdout).unwrap()
}

#[test]
fn every_golden_example_reproduces_byte_for_byte() {
    let dir = default_dir();
    let manifest = load_manifest(&dir).unwrap();
    assert!(manifest.examples.len() >= 12);
    for ex in &manifest.examples {
        let out = dispatch(resolved_args(&dir, ex));
        assert_eq!(out.code, 0, "{}: {}", ex.name, out.stderr);
        let expected = std::fs::read_to_string(expected_path(&dir, &ex.name)).unwrap();
        assert_eq!(
            out.stdout, expected,
            "{} drifted from its stored output",
            ex.name
        );
    }
}

#[test]
fn the_example_command_reports_a_match() {
    let out = dispatch(["example", "moduli_a1"]);
    assert_eq!(out.code, 0);
    let v = json_of(&out.stdout);
    assert_eq!(v["matches"], true);
    assert_eq!(v["output"]["inertia"], 8);
    let list = json_of(&dispatch(["example", "--list"]).stdout);
    assert!(list["examples"]
        .as_array()
        .unwrap()
        .iter()
        .any(|e| e["name"] == "enriques_1"));
    assert_eq!(dispatch(["example", "no_such_example"]).code, 2);
}

#[test]
fn h1_of_the_cyclic_group_of_order_two() {
    let out = dispatch(["h1", "--group", "C2", "--sigma", "id"]);
    assert_eq!(out.code, 0);
    let v = json_of(&out.stdout);
    assert_eq!(v["h1"], 2);
    assert_eq!(v["schema"], "realstack/v1");
    // the same involution by index and by images
    let by_index = json_of(&dispatch(["h1", "--group", "D4", "--sigma", "1"]).stdout);
    let images: Vec<String> = by_index["sigma"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.to_string())
        .collect();
    let by_images =
        json_of(&dispatch(["h1", "--group", "D4", "--sigma", &images.join(",")]).stdout);
    assert_eq!(by_index, by_images);
}

#[test]
fn bad_arguments_exit_with_two() {
    assert_eq!(dispatch(["h1", "--group", "C2", "--sigma", "0,0"]).code, 2);
    assert_eq!(dispatch(["h1", "--group", "Nope"]).code, 2);
    assert_eq!(dispatch(["frobnicate"]).code, 2);
    assert_eq!(
        dispatch(["quotient", "--space", "/definitely/missing.json"]).code,
        2
    );
    assert_eq!(dispatch(["--help"]).code, 0);
}

fn write_temp(name: &str, v: &Value) -> String {
    let path = std::env::temp_dir().join(format!("realstack-{}-{name}", std::process::id()));
    std::fs::write(&path, v.to_string()).unwrap();
    path.display().to_string()
}

fn error_of(stderr: &str) -> (String, String) {
    let v = json_of(stderr);
    (
        v["error"]["kind"].as_str().unwrap().to_string(),
        v["error"]["path"].as_str().unwrap().to_string(),
    )
}

#[test]
fn a_loop_that_does_not_commute_with_the_real_structure_is_located() {
    let mut doc: Value =
        serde_json::from_str(&std::fs::read_to_string(golden("enriques_1.json")).unwrap()).unwrap();
    doc["fiber"]["sigma"] = serde_json::json!([0, 2, 1, 3]);
    doc["components"][0]["loops"] = serde_json::json!([[0, 1, 3, 2]]);
    let path = write_temp("bad-enriques.json", &doc);
    let out = dispatch(["gerbe", "--spec", &path]);
    assert_eq!(out.code, 2);
    assert_eq!(
        error_of(&out.stderr),
        ("invariant_violated".into(), "components[0].loops[0]".into())
    );
}

#[test]
fn a_non_associative_table_names_a_triple() {
    // a Latin square with identity 0 that is not associative
    let table = serde_json::json!([
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0]
    ]);
    let doc = serde_json::json!({"schema": "realstack/v1", "group": {"table": table}, "sigma_x": [0], "action": [[0], [0], [0], [0], [0]]});
    let out = dispatch(["quotient", "--space", &write_temp("bad-table.json", &doc)]);
    assert_eq!(out.code, 2);
    let v = json_of(&out.stderr);
    assert_eq!(v["error"]["kind"], "invariant_violated");
    assert_eq!(v["error"]["path"], "group");
    assert!(
        v["error"]["message"]
            .as_str()
            .unwrap()
            .contains("associative"),
        "{}",
        out.stderr
    );
}

#[test]
fn malformed_documents_report_their_path() {
    let doc = serde_json::json!({"schema": "realstack/v1", "group": "C2", "sigma_x": [0], "action": [[0], ["x"]]});
    let out = dispatch(["quotient", "--space", &write_temp("malformed.json", &doc)]);
    assert_eq!(out.code, 2);
    assert_eq!(
        error_of(&out.stderr),
        ("malformed".into(), "action[1][0]".into())
    );
    let doc = serde_json::json!({"schema": "realstack/v9", "group": "C2", "sigma_x": [0], "action": [[0], [0]]});
    let out = dispatch(["quotient", "--space", &write_temp("schema.json", &doc)]);
    assert_eq!(error_of(&out.stderr).0, "unsupported_schema");
}

#[test]
fn a_failing_verdict_exits_with_one() {
    // a real circle cut at two points, but an inertia too small to cover it
    let doc = serde_json::json!({
        "schema": "realstack/v1",
        "kind": "abelian_quotient",
        "dimension": 2,
        "real_torsion_rank": 2,
        "inertia_h_star": {"value": 10, "source": "made up for the test"}
    });
    let out = dispatch(["curve", "--spec", &write_temp("failing.json", &doc)]);
    assert_eq!(out.code, 1);
    assert_eq!(json_of(&out.stdout)["verdict"]["status"], "fails");
}

#[test]
fn fibers_over_non_real_points_are_reported_as_unsupported() {
    let out = dispatch([
        "quotient",
        "--space",
        &golden("a1_mod_z2.json"),
        "--fiber",
        "0",
        "--fiber",
        "3",
    ]);
    assert_eq!(out.code, 0);
    let v = json_of(&out.stdout);
    assert_eq!(v["fibers"][0]["real_points"], 2);
    assert_eq!(v["fibers"][0]["law_holds"], true);
    assert_eq!(v["fibers"][1]["status"], "unsupported");
}

#[test]
fn single_component_reports() {
    let out = dispatch([
        "gerbe",
        "--spec",
        &golden("enriques_2.json"),
        "--component",
        "5",
    ]);
    assert_eq!(out.code, 0);
    let v = json_of(&out.stdout);
    assert_eq!(v["components"].as_array().unwrap().len(), 1);
    assert_eq!(v["components"][0]["h_star"], 3);
    assert_eq!(v["real"], 37);
    assert_eq!(
        dispatch([
            "gerbe",
            "--spec",
            &golden("enriques_2.json"),
            "--component",
            "6"
        ])
        .code,
        2
    );
}

#[test]
fn text_output_is_aligned() {
    let out = dispatch([
        "curve",
        "--spec",
        &golden("scheme_circle.json"),
        "--format",
        "text",
    ]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    let value_column = |l: &str| {
        let gap = l.find("  ").unwrap();
        gap + l[gap..].find(|c: char| c != ' ').unwrap()
    };
    let col = value_column(lines[0]);
    assert!(lines.iter().all(|l| value_column(l) == col));
    assert!(out.stdout.contains("verdict.status"));
}

#[test]
fn search_writes_a_report_and_is_reproducible() {
    let out_path =
        std::env::temp_dir().join(format!("realstack-{}-report.json", std::process::id()));
    let out_str = out_path.display().to_string();
    let args = [
        "search",
        "--kind",
        "gerbe2torsion",
        "--seed",
        "3",
        "--count",
        "50",
        "--workers",
        "2",
        "--out",
        &out_str,
    ];
    let first = dispatch(args);
    assert_eq!(first.code, 0, "{}", first.stderr);
    let mut a = json_of(&std::fs::read_to_string(&out_path).unwrap());
    let mut b = json_of(&dispatch(args).stdout);
    assert_eq!(
        a["checked"].as_u64().unwrap() + a["duplicates"].as_u64().unwrap(),
        50
    );
    a.as_object_mut().unwrap().remove("wall_time_ms");
    b.as_object_mut().unwrap().remove("wall_time_ms");
    assert_eq!(a, b);
    assert_eq!(dispatch(["search", "--kind", "nonsense"]).code, 2);
}
