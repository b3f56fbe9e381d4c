use std::process::{Command, Output};

fn gsv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gsv"))
        .args(args)
        .env_remove("GSV_CACHE_PATH")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sld_json_and_table() {
    let o = gsv(&["sld", "3:a"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "{\"n\":3,\"A\":[1,0,3,4],\"type\":\"I\"}\n");

    let o = gsv(&["sld", "3:a", "--format", "table"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[0].split('|').count(), 3);
    assert!(rows[4].contains("| 4 |") || rows[4].split('|').nth(1).unwrap().trim() == "4");
}

#[test]
fn noisy_sld() {
    let o = gsv(&["sld", "3:a", "--noise", "0.5"]);
    assert_eq!(
        stdout(&o),
        "{\"n\":3,\"A\":[1,0,3,4],\"type\":\"I\",\"p\":0.5,\"values\":[1,0,0.1875,0.0625]}\n"
    );
    assert_eq!(gsv(&["sld", "3:a", "--noise", "2"]).status.code(), Some(2));
}

#[test]
fn thresholds_of_ring6() {
    let o = gsv(&["thresholds", "6:8c4a"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let d = v["distillation"].as_f64().unwrap();
    assert!((d - 0.20630).abs() < 1e-5);
    assert!(v["nSector"].is_number() && v["majorization"].is_number());
}

#[test]
fn stabilizer_listing() {
    let o = gsv(&["stabilizers", "3:a", "--format", "table"]);
    assert_eq!(stdout(&o), "111\nXZ1\nZXZ\nYYZ\n1ZX\nX1X\nZYY\n-YXY\n");
    let o = gsv(&["stabilizers", "3:a", "--limit", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["total"], 8);
    assert_eq!(v["stabilizers"].as_array().unwrap().len(), 2);
}

#[test]
fn id_codec() {
    assert_eq!(
        stdout(&gsv(&["id", "decode", "2:8"])),
        "{\"n\":2,\"edges\":[[1,2]]}\n"
    );
    let o = gsv(&[
        "id",
        "encode",
        r#"{"n":6,"edges":[[1,2],[2,3],[3,4],[4,5],[5,6],[1,6]]}"#,
    ]);
    assert_eq!(stdout(&o), "{\"id\":\"6:8c4a\"}\n");
    assert_eq!(
        gsv(&["id", "encode", r#"{"n":2,"edges":[[1,1]]}"#])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn lc_and_random() {
    // star centred on vertex 1 becomes the complete graph
    let star = gsv(&["predefined", "star", "--n", "4", "--format", "table"]);
    let star = stdout(&star).trim().to_owned();
    let complete = stdout(&gsv(&[
        "predefined",
        "complete",
        "--n",
        "4",
        "--format",
        "table",
    ]));
    assert_eq!(
        stdout(&gsv(&["lc", &star, "1", "--format", "table"])),
        complete
    );
    assert_eq!(gsv(&["lc", &star, "0"]).status.code(), Some(2));

    let a = gsv(&["random", "--n", "10", "--p", "0.4", "--seed", "3"]);
    let b = gsv(&["random", "--n", "10", "--p", "0.4", "--seed", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(gsv(&["sld", "nonsense"]).status.code(), Some(2));
    assert_eq!(gsv(&["frobnicate"]).status.code(), Some(2));
    let p17 = stdout(&gsv(&[
        "predefined",
        "path",
        "--n",
        "17",
        "--format",
        "table",
    ]));
    let p17 = p17.trim();
    assert_eq!(gsv(&["sld", p17]).status.code(), Some(1));
    assert_eq!(gsv(&["sld", p17, "--force"]).status.code(), Some(0));
    let p29 = stdout(&gsv(&[
        "predefined",
        "path",
        "--n",
        "29",
        "--format",
        "table",
    ]));
    assert_eq!(gsv(&["sld", p29.trim(), "--force"]).status.code(), Some(1));
}

#[test]
fn cache_path_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.jsonl");
    let o = Command::new(env!("CARGO_BIN_EXE_gsv"))
        .args(["sld", "6:8c4a"])
        .env("GSV_CACHE_PATH", &file)
        .output()
        .unwrap();
    assert!(o.status.success());
    let log = std::fs::read_to_string(&file).unwrap();
    assert_eq!(log.lines().count(), 1);
    assert!(log.contains("\"key\":\"6:8c4a\""));
}
