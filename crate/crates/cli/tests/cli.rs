use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name]
        .iter()
        .collect();
    p.to_str().unwrap().to_string()
}

fn curvegraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvegraph"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn body(o: &Output) -> Vec<String> {
    stdout(o)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(String::from)
        .collect()
}

#[test]
fn header_names_seed_and_digest() {
    let o = curvegraph(&["--seed", "17", "covers", "--surface", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    let first = stdout(&o).lines().next().unwrap().to_string();
    let (head, digest) = first.rsplit_once(" config=").unwrap();
    assert_eq!(head, format!("# curvegraph {} seed=17", env!("CARGO_PKG_VERSION")));
    assert_eq!(digest.len(), 64);
    assert!(digest.chars().all(|c| c.is_ascii_hexdigit()));
}

#[test]
fn covers_tables() {
    let o = curvegraph(&["covers", "--surface", "0,5"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = body(&o);
    for d in 3..=6 {
        let row = rows.iter().find(|r| r.contains(&format!(",irregular,{d},"))).unwrap();
        assert!(row.contains(",false,"), "{row}");
    }
    let o = curvegraph(&["covers", "--surface", "1,1"]);
    assert!(stdout(&o).contains("S'_0(2,2,2,inf)"));
    let o = curvegraph(&["covers", "--surface", "0,3"]);
    assert!(stdout(&o).contains("# no pseudo-Anosov support"));
    assert_eq!(body(&o).len(), 1);
    for bad in ["0;5", "a,b", "-1,2"] {
        assert_eq!(
            curvegraph(&["covers", "--surface", bad]).status.code(),
            Some(2),
            "{bad}"
        );
    }
}

#[test]
fn electrify_cycle() {
    let g = fixture("c8_two_families.json");
    let o = curvegraph(&["electrify", "--graph", &g, "--query", "distance v0 v4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(body(&o), ["query,subject,base,electrified", "distance,v0 v4,8,6"]);

    let o = curvegraph(&["electrify", "--graph", &g, "--queries", &fixture("c8_queries.txt")]);
    let scans: Vec<String> = body(&o)
        .into_iter()
        .filter(|r| r.starts_with("projection-scan"))
        .collect();
    assert_eq!(scans.len(), 2);
}

#[test]
fn empty_family_matches_base() {
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("none.json");
    std::fs::write(&fam, "[]").unwrap();
    let g = fixture("c8_two_families.json");
    let fam = fam.to_str().unwrap();
    let o = curvegraph(&[
        "electrify",
        "--graph",
        &g,
        "--family",
        fam,
        "--queries",
        &fixture("c8_queries.txt"),
    ]);
    for row in body(&o).iter().skip(1) {
        let cells: Vec<&str> = row.rsplitn(3, ',').collect();
        assert_eq!(cells[0], cells[1], "{row}");
    }
}

#[test]
fn schema_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{\"vertices\": [\"a\"],\n \"edges\": [[\"a\"]]}\n").unwrap();
    let o = curvegraph(&["electrify", "--graph", p.to_str().unwrap(), "--query", "delta"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn walk_is_reproducible() {
    let a = curvegraph(&["--seed", "5", "walk", "--length", "8", "--samples", "50", "--measure"]);
    let b = curvegraph(&["--seed", "5", "walk", "--length", "8", "--samples", "50", "--measure"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = curvegraph(&["--seed", "6", "walk", "--length", "8", "--samples", "50", "--measure"]);
    assert_ne!(a.stdout, c.stdout);

    let o = curvegraph(&["walk", "--length", "1", "--samples", "30"]);
    assert!(stdout(&o).contains("pseudo_anosov=0 fraction=0.0000"));
    assert_eq!(curvegraph(&["walk", "--length", "0"]).status.code(), Some(2));
    assert_eq!(
        curvegraph(&["--cap-samples", "10", "walk", "--length", "3", "--samples", "11"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn walk_reports_leaving_the_ball() {
    let o = curvegraph(&[
        "--cap-radius",
        "2",
        "walk",
        "--length",
        "30",
        "--samples",
        "20",
        "--measure",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("cap_exceeded"));
}

#[test]
fn rauzy_exit_codes_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("summary.csv");
    let trace = dir.path().join("trace.jsonl");
    let o = curvegraph(&[
        "--out",
        out.to_str().unwrap(),
        "rauzy",
        "--fixture",
        &fixture("rotation_8_5.json"),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(std::fs::read_to_string(&trace).unwrap().lines().count(), 4);
    assert!(std::fs::read_to_string(&out).unwrap().contains("saddle_connection,4,"));

    let o = curvegraph(&[
        "rauzy",
        "--fixture",
        &fixture("rotation_89_55.json"),
        "--stop",
        "passages:2",
        "--twice",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(body(&o)[1], "stopped,4,21,13;8,\"[[5,3],[3,2]]\",2,4");

    let o = curvegraph(&["rauzy", "--rotation", "89,55", "--stop", "steps:0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(body(&o)[1].starts_with("stopped,0,144,"));

    let o = curvegraph(&["--cap-steps", "3", "rauzy", "--rotation", "89,55"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("cap_exceeded,3,"));

    assert_eq!(
        curvegraph(&["rauzy", "--rotation", "8,5", "--stop", "soon"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(curvegraph(&["rauzy", "--rotation", "-8,5"]).status.code(), Some(2));
}

#[test]
fn wpd_rows_per_power() {
    let g = fixture("c8_two_families.json");
    let m = fixture("c8_maps.json");
    let o = curvegraph(&[
        "wpd", "--graph", &g, "--maps", &m, "--x", "v0", "--r", "2", "--powers", "1..3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(body(&o), ["power,count,witnesses", "1,1,id", "2,1,id", "3,1,id"]);
    let o = curvegraph(&["wpd", "--graph", &g, "--maps", &m, "--x", "v0", "--r", "0"]);
    assert!(body(&o).iter().skip(1).all(|r| r.split(',').nth(1) == Some("0")));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("maps.json");
    std::fs::write(
        &bad,
        r#"{"mover": {"label": "g", "images": {"v0": "v1"}},
            "candidates": [{"label": "pinch", "images": {"v0": "v0", "v1": "v3"}}]}"#,
    )
    .unwrap();
    let o = curvegraph(&[
        "wpd",
        "--graph",
        &g,
        "--maps",
        bad.to_str().unwrap(),
        "--x",
        "v0",
        "--r",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn farey_ball_and_json() {
    let o = curvegraph(&["farey-ball", "--radius", "1", "--height-cap", "3"]);
    assert_eq!(body(&o).len(), 9);
    let o = curvegraph(&["--format", "json", "farey-ball", "--radius", "1", "--height-cap", "3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 8);
    assert_eq!(v["meta"]["seed"], 0);
    assert_eq!(curvegraph(&["farey-ball", "--radius", "9"]).status.code(), Some(2));
}
