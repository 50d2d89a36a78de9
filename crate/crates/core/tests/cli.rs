//! End-to-end runs of the `neutralex` binary.

mod support;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use support::fixture;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_neutralex"))
        .args(args)
        .current_dir(dir)
        .env("RUST_LOG", "warn")
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = run(dir, args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn fx(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &[]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["--help"]).status.code(), Some(0));
    let no_mode = run(
        dir.path(),
        &["rewrite", "--input", &fx("newsmen.txt"), "--out", "o.txt"],
    );
    assert_eq!(no_mode.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&no_mode.stderr).starts_with("error:"));
    let missing = run(
        dir.path(),
        &[
            "rewrite",
            "--mode",
            "rep",
            "--input",
            "absent.txt",
            "--out",
            "o.txt",
        ],
    );
    assert_eq!(missing.status.code(), Some(1));
    let no_seed = run(
        dir.path(),
        &[
            "reduce",
            "--input",
            &fx("tiny_10.txt"),
            "--budget",
            "5",
            "--out",
            "r.txt",
        ],
    );
    assert_eq!(no_seed.status.code(), Some(2));
}

#[test]
fn rewrite_both_modes() {
    let dir = tempfile::tempdir().unwrap();
    ok(
        dir.path(),
        &[
            "rewrite",
            "--mode",
            "rep",
            "--input",
            &fx("newsmen.txt"),
            "--out",
            "rep.txt",
        ],
    );
    ok(
        dir.path(),
        &[
            "rewrite",
            "--mode",
            "rep-neutral",
            "--input",
            &fx("newsmen.txt"),
            "--out",
            "neutral.txt",
            "--emit-edits",
            "edits.jsonl",
        ],
    );
    let rep = fs::read_to_string(dir.path().join("rep.txt")).unwrap();
    let neutral = fs::read_to_string(dir.path().join("neutral.txt")).unwrap();
    assert!(rep.starts_with("He told reporters at the scene"));
    assert!(neutral.starts_with("They told reporters at the scene"));
    let edits = fs::read_to_string(dir.path().join("edits.jsonl")).unwrap();
    assert_eq!(edits.lines().count(), 2);
    assert!(edits.contains("\"original\":\"newsmen\""));
}

#[test]
fn config_supplies_mode_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("cfg.toml"),
        "[rewrite]\nmode = \"rep-neutral\"\n",
    )
    .unwrap();
    ok(
        dir.path(),
        &[
            "--config",
            "cfg.toml",
            "rewrite",
            "--input",
            &fx("newsmen.txt"),
            "--out",
            "a.txt",
        ],
    );
    ok(
        dir.path(),
        &[
            "--config",
            "cfg.toml",
            "rewrite",
            "--mode",
            "rep",
            "--input",
            &fx("newsmen.txt"),
            "--out",
            "b.txt",
        ],
    );
    assert!(fs::read_to_string(dir.path().join("a.txt"))
        .unwrap()
        .starts_with("They"));
    assert!(fs::read_to_string(dir.path().join("b.txt"))
        .unwrap()
        .starts_with("He"));
    fs::write(dir.path().join("bad.toml"), "[rewrite]\nmood = 1\n").unwrap();
    let bad = run(
        dir.path(),
        &[
            "--config",
            "bad.toml",
            "rewrite",
            "--input",
            &fx("newsmen.txt"),
            "--out",
            "c.txt",
        ],
    );
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn tiny_keeps_only_catalogue_lines() {
    let dir = tempfile::tempdir().unwrap();
    ok(
        dir.path(),
        &[
            "tiny",
            "--input",
            &fx("tiny_10.txt"),
            "--out",
            "kept.txt",
            "--report",
            "tiny.tsv",
        ],
    );
    let kept = fs::read_to_string(dir.path().join("kept.txt")).unwrap();
    assert_eq!(
        kept.trim_end(),
        "A spokesman for the council declined to comment."
    );
}

#[test]
fn metrics_for_each_benchmark() {
    let dir = tempfile::tempdir().unwrap();
    let crows = ok(
        dir.path(),
        &[
            "metrics",
            "--benchmark",
            "crows",
            "--scores",
            &fx("crows_scores.jsonl"),
            "--json",
            "c.json",
        ],
    );
    assert!(crows.contains("75.00"), "{crows}");
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("c.json")).unwrap()).unwrap();
    assert_eq!(json["value"], 75.0);
    assert_eq!(json["sub_scores"]["stereo"], 100.0);

    let reddit = ok(
        dir.path(),
        &[
            "metrics",
            "--benchmark",
            "reddit",
            "--scores",
            &fx("reddit_scores.jsonl"),
            "--model",
            "m",
        ],
    );
    assert!(reddit.contains("| m |"), "{reddit}");
    assert!(
        reddit.contains("-2.33 |") && reddit.contains("-3.14*"),
        "{reddit}"
    );

    let honest = ok(
        dir.path(),
        &[
            "metrics",
            "--benchmark",
            "honest",
            "--scores",
            &fx("honest_completions.jsonl"),
            "--lexicon",
            &fx("honest_lexicon.tsv"),
        ],
    );
    assert!(
        honest.contains("0.200") && honest.contains("0.400"),
        "{honest}"
    );

    let wrong = run(
        dir.path(),
        &[
            "metrics",
            "--benchmark",
            "crows",
            "--scores",
            &fx("reddit_scores.jsonl"),
        ],
    );
    assert_eq!(wrong.status.code(), Some(1));
}

#[test]
fn assemble_and_reduce_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let doc = |s: &str, i: usize| {
        format!(
            "{{\"text\":\"{s} document {i} {}\"}}\n",
            "word ".repeat(i % 17 + 3).trim()
        )
    };
    fs::write(
        p.join("a.jsonl"),
        (0..200).map(|i| doc("alpha", i)).collect::<String>(),
    )
    .unwrap();
    fs::write(
        p.join("b.jsonl"),
        (0..200).map(|i| doc("beta", i)).collect::<String>(),
    )
    .unwrap();
    fs::write(
        p.join("spec.toml"),
        "token_budget = 1500\n\n[[sources]]\nname = \"a\"\npath = \"a.jsonl\"\nweight = 0.7\n\n[[sources]]\nname = \"b\"\npath = \"b.jsonl\"\nweight = 0.3\n",
    )
    .unwrap();
    for out in ["one", "two"] {
        ok(
            p,
            &[
                "assemble",
                "--spec",
                "spec.toml",
                "--seed",
                "9",
                "--out",
                &format!("{out}.jsonl"),
                "--report",
                &format!("{out}.tsv"),
            ],
        );
    }
    assert_eq!(
        fs::read(p.join("one.jsonl")).unwrap(),
        fs::read(p.join("two.jsonl")).unwrap()
    );
    assert_eq!(
        fs::read(p.join("one.tsv")).unwrap(),
        fs::read(p.join("two.tsv")).unwrap()
    );
    ok(
        p,
        &[
            "assemble",
            "--spec",
            "spec.toml",
            "--seed",
            "10",
            "--out",
            "three.jsonl",
        ],
    );
    assert_ne!(
        fs::read(p.join("one.jsonl")).unwrap(),
        fs::read(p.join("three.jsonl")).unwrap()
    );

    ok(
        p,
        &[
            "reduce",
            "--input",
            "one.jsonl",
            "--budget",
            "500",
            "--seed",
            "1",
            "--out",
            "small.jsonl",
        ],
    );
    let small = fs::read_to_string(p.join("small.jsonl")).unwrap();
    assert!(
        small.lines().count() > 0
            && small.lines().count()
                < fs::read_to_string(p.join("one.jsonl"))
                    .unwrap()
                    .lines()
                    .count()
    );
}

#[test]
fn mining_review_and_verification_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    fs::write(
        p.join("corpus.txt"),
        "The spokesman said the chairman would resign.\n\
         A fireman and a businesswoman met heythereman at the man-cave.\n\
         We met Zimmerman near the german restaurant with a shaman.\n\
         The spokesman repeated that the policewoman saw a manager.\n",
    )
    .unwrap();
    fs::write(p.join("known.txt"), "german\nshaman\n").unwrap();
    fs::write(p.join("names.txt"), "zimmerman\n").unwrap();
    ok(
        p,
        &[
            "mine",
            "--input",
            "corpus.txt",
            "--out",
            "c.jsonl",
            "--known-words",
            "known.txt",
            "--names",
            "names.txt",
        ],
    );
    let mined = fs::read_to_string(p.join("c.jsonl")).unwrap();
    assert!(mined.contains(
        "\"surface\":\"spokesman\",\"affix_kind\":\"suffix\",\"affix\":\"man\",\"count\":2"
    ));
    assert!(!mined.contains("manager"));

    ok(
        p,
        &[
            "review-export",
            "--candidates",
            "c.jsonl",
            "--stage",
            "r1",
            "--out",
            "r1.csv",
        ],
    );
    let export = fs::read_to_string(p.join("r1.csv")).unwrap();
    assert!(export.starts_with("surface,decision,reason,reviewer\n"));
    assert!(export.contains("heythereman,,,"));
    let mut review = String::from("surface,decision,reason,reviewer\n");
    for line in export.lines().skip(1) {
        let surface = line.split(',').next().unwrap();
        let decision = if surface == "heythereman" {
            "reject,other"
        } else {
            "accept,"
        };
        review.push_str(&format!("{surface},{decision},ann\n"));
    }
    fs::write(p.join("r1_done.csv"), review).unwrap();
    ok(
        p,
        &[
            "review-import",
            "--candidates",
            "c.jsonl",
            "--review",
            "r1_done.csv",
            "--stage",
            "r1",
            "--out",
            "c1.jsonl",
        ],
    );
    ok(
        p,
        &[
            "verify",
            "--candidates",
            "c1.jsonl",
            "--out",
            "c2.jsonl",
            "--cache",
            "cache.jsonl",
        ],
    );
    assert!(p.join("cache.jsonl").exists());

    ok(
        p,
        &[
            "review-export",
            "--candidates",
            "c2.jsonl",
            "--stage",
            "r3",
            "--out",
            "r3.csv",
        ],
    );
    let r3 = fs::read_to_string(p.join("r3.csv")).unwrap();
    let mut done = String::from("surface,decision,reason,reviewer\n");
    for line in r3.lines().skip(1) {
        done.push_str(&format!("{},accept,,bo\n", line.split(',').next().unwrap()));
    }
    fs::write(p.join("r3_done.csv"), done).unwrap();
    ok(
        p,
        &[
            "review-import",
            "--candidates",
            "c2.jsonl",
            "--review",
            "r3_done.csv",
            "--stage",
            "r3",
            "--out",
            "c3.jsonl",
            "--accepted",
            "acc.txt",
        ],
    );
    let accepted = fs::read_to_string(p.join("acc.txt")).unwrap();
    assert!(accepted.lines().any(|l| l == "spokesman"));
    assert!(
        !accepted.contains("heythereman")
            && !accepted.contains("german")
            && !accepted.contains("zimmerman")
    );

    let report = ok(
        p,
        &[
            "report",
            "--candidates",
            "c3.jsonl",
            "--rounds-out",
            "rounds.tsv",
        ],
    );
    assert!(report.contains("spokesman"), "{report}");
    assert!(p.join("rounds.tsv").exists());
}

#[test]
fn catalogue_command_rebuilds_the_bundled_catalogue() {
    let dir = tempfile::tempdir().unwrap();
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let seed = data.join("catalogue_singular.tsv");
    ok(
        dir.path(),
        &[
            "catalogue",
            "--input",
            seed.to_str().unwrap(),
            "--out",
            "cat.tsv",
            "--skew-out",
            "skew.md",
        ],
    );
    assert_eq!(
        fs::read_to_string(dir.path().join("cat.tsv")).unwrap(),
        fs::read_to_string(data.join("catalogue.tsv")).unwrap()
    );
    assert!(fs::read_to_string(dir.path().join("skew.md"))
        .unwrap()
        .contains('|'));
}
