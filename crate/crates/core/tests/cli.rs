use std::io::Write;
use std::process::{Command, Output};

fn tnd(args: &[&str], catalog: Option<&std::path::Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tnd"));
    cmd.args(args).env_remove("TND_CATALOG");
    if let Some(path) = catalog {
        cmd.env("TND_CATALOG", path);
    }
    cmd.output().expect("tnd runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn documented_examples() {
    let o = tnd(&["d0-bound", "sigma3", "--p", "2"], None);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("upper_bound"));
    assert!(text.contains("defect 0, e=0, reg=0"));

    let o = tnd(&["d0-calc", "s2", "--p", "3"], None);
    assert!(stdout(&o).contains("[2,2]"));

    let o = tnd(&["defect", "q8", "--p", "2", "--json"], None);
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["schema"], "tnd-report/1");
    let defect = json["fields"].as_array().unwrap().iter().find(|f| f["name"] == "defect").unwrap();
    assert_eq!(defect["value"], 0);
}

#[test]
fn exit_codes() {
    assert_eq!(tnd(&["validate-catalog"], None).status.code(), Some(0));
    assert_eq!(tnd(&["defect", "q8", "--p", "3"], None).status.code(), Some(2));
    assert_eq!(tnd(&["center", "no-such-entry"], None).status.code(), Some(2));
    assert_eq!(tnd(&["frobnicate"], None).status.code(), Some(2));
    let o = tnd(&["d0-bound", "inv-swap"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [&["cess", "q8"][..], &["validate-catalog", "--json"][..], &["quillen", "d8"][..]] {
        let a = tnd(args, None);
        let b = tnd(args, None);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

fn catalog_file(name: &str, text: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("tnd-{}-{name}.txt", std::process::id()));
    std::fs::File::create(&path).unwrap().write_all(text.as_bytes()).unwrap();
    path
}

#[test]
fn catalog_override_from_the_environment() {
    let bad = catalog_file(
        "bad",
        "version: 7\n\nentry: bad\nprime: 2\nsource: corrupted table\n[ring]\nx 1, w 2\n[steenrod]\nSq3 w = x*w\n",
    );
    let o = tnd(&["validate-catalog"], Some(&bad));
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("catalog v7"));
    assert!(text.contains("instability violated: sq^3(w)"), "{text}");

    let cross = catalog_file(
        "cross",
        "version: 1\nentry: pt\nprime: 2\ncenter: trivial\nsource: F_2[x]\n[ring]\nx 1\n[rector]\ntrivial 0 central :\nZ2 1 central : u1\n",
    );
    assert_eq!(tnd(&["center", "pt"], Some(&cross)).status.code(), Some(3));

    std::fs::remove_file(bad).unwrap();
    std::fs::remove_file(cross).unwrap();
    let o = tnd(&["--catalog", "/nonexistent/catalog.txt", "list"], None);
    assert_eq!(o.status.code(), Some(2));
}
