use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn wordmap(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wordmap"))
        .args(args)
        .env("WORDMAP_OUT", out)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn pipeline(out: &Path, group: &str, workers: &str) {
    let steps: Vec<Vec<&str>> = vec![
        vec!["group", "--catalog", group],
        vec!["aut", "--group", group],
        vec!["pairs", "--group", group],
        vec!["spread", "--group", group],
        vec!["certify", "--group", group, "--set", "all"],
        vec!["census", "--group", group, "--maxlen", "8"],
        vec!["dist", "--group", group, "--word", "xyXY"],
    ];
    for step in steps {
        let mut args = step.clone();
        args.extend(["--workers", workers]);
        let o = wordmap(out, &args);
        assert_eq!(code(&o), 0, "{step:?}: {}", stderr(&o));
    }
}

fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect()
}

#[test]
fn worker_count_does_not_change_outputs() {
    let one = tempfile::tempdir().unwrap();
    let eight = tempfile::tempdir().unwrap();
    pipeline(one.path(), "a5", "1");
    pipeline(eight.path(), "a5", "8");
    let a = snapshot(&one.path().join("a5"));
    let b = snapshot(&eight.path().join("a5"));
    assert_eq!(a.keys().collect::<Vec<_>>(), b.keys().collect::<Vec<_>>());
    for (name, bytes) in &a {
        assert!(bytes == &b[name], "{name} differs between 1 and 8 workers");
    }
}

#[test]
fn later_stage_without_cache_names_the_missing_stage() {
    let out = tempfile::tempdir().unwrap();
    let o = wordmap(out.path(), &["aut", "--group", "a5"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("wordmap group"), "{}", stderr(&o));

    assert_eq!(code(&wordmap(out.path(), &["group", "--catalog", "a5"])), 0);
    let o = wordmap(out.path(), &["certify", "--group", "a5", "--set", "all"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("wordmap aut"), "{}", stderr(&o));
}

#[test]
fn non_simple_group_is_refused() {
    let out = tempfile::tempdir().unwrap();
    let spec = out.path().join("s5.json");
    fs::write(
        &spec,
        r#"{"name": "s5", "degree": 5, "generators": [[1, 0, 2, 3, 4], [1, 2, 3, 4, 0]]}"#,
    )
    .unwrap();
    let o = wordmap(out.path(), &["group", "--spec", spec.to_str().unwrap()]);
    assert_eq!(code(&o), 1, "{}", stderr(&o));
    assert!(stderr(&o).contains("not"), "{}", stderr(&o));
    assert!(!out.path().join("s5").join("group.bin").exists());
}

#[test]
fn malformed_spec_names_the_field() {
    let out = tempfile::tempdir().unwrap();
    let spec = out.path().join("bad.json");
    fs::write(
        &spec,
        r#"{"name": "bad", "degree": 3, "generators": [[0, 1, 2], [0, 0, 1]]}"#,
    )
    .unwrap();
    let o = wordmap(out.path(), &["group", "--spec", spec.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("generators[1]"), "{}", stderr(&o));
}

#[test]
fn certify_and_verify_exit_codes() {
    let out = tempfile::tempdir().unwrap();
    for args in [
        vec!["group", "--catalog", "a5"],
        vec!["aut", "--group", "a5"],
        vec!["pairs", "--group", "a5"],
    ] {
        assert_eq!(code(&wordmap(out.path(), &args)), 0);
    }
    let good = out.path().join("good.json");
    let o = wordmap(
        out.path(),
        &[
            "certify",
            "--group",
            "a5",
            "--set",
            "e,o5x24",
            "--output",
            good.to_str().unwrap(),
        ],
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = wordmap(out.path(), &["certify", "--group", "a5", "--ids", "0,1"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("not-aut-invariant"));
    let o = wordmap(
        out.path(),
        &["certify", "--group", "a5", "--set", "3cycles"],
    );
    assert_eq!(code(&o), 2);

    let o = wordmap(
        out.path(),
        &[
            "verify",
            "--group",
            "a5",
            "--certificate",
            good.to_str().unwrap(),
        ],
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));

    // flip the verdict and the stored certificate must fail to re-validate
    let text = fs::read_to_string(&good)
        .unwrap()
        .replace("\"realizable\"", "\"rejected\"");
    let forged = out.path().join("forged.json");
    fs::write(&forged, text).unwrap();
    let o = wordmap(
        out.path(),
        &[
            "verify",
            "--group",
            "a5",
            "--certificate",
            forged.to_str().unwrap(),
        ],
    );
    assert_eq!(code(&o), 1);
}

#[test]
fn budgeted_census_resumes_to_the_full_result() {
    let out = tempfile::tempdir().unwrap();
    for args in [
        vec!["group", "--catalog", "a5"],
        vec!["aut", "--group", "a5"],
        vec!["pairs", "--group", "a5"],
    ] {
        assert_eq!(code(&wordmap(out.path(), &args)), 0);
    }
    let dir = out.path().join("a5");
    assert_eq!(
        code(&wordmap(
            out.path(),
            &["census", "--group", "a5", "--maxlen", "9"]
        )),
        0
    );
    let full = fs::read(dir.join("census.json")).unwrap();

    let o = wordmap(
        out.path(),
        &[
            "census",
            "--group",
            "a5",
            "--maxlen",
            "9",
            "--budget-secs",
            "0",
        ],
    );
    assert_eq!(code(&o), 0);
    let meta = fs::read_to_string(dir.join("census_meta.json")).unwrap();
    assert!(meta.contains("\"complete\": false"), "{meta}");
    let o = wordmap(out.path(), &["census", "--group", "a5", "--resume"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(fs::read(dir.join("census.json")).unwrap(), full);
}
