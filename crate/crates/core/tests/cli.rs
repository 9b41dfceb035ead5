use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blockforge"))
        .args(args)
        .env_remove("BLOCKFORGE_CAP")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn chartab_a4_text() {
    let o = run(&["chartab", "A4"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("A4: order 12, 4 classes, exponent 6\n"), "{out}");
    let degrees: Vec<&str> = out
        .lines()
        .filter(|l| l.trim_start().starts_with("X."))
        .map(|l| l.split_whitespace().nth(1).unwrap())
        .collect();
    assert_eq!(degrees, ["1", "1", "1", "3"]);
}

#[test]
fn chartab_s4_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s4.json");
    let o = run(&["chartab", "S4", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let (name, tbl) = blockforge::io::load_table(&path).unwrap();
    assert_eq!(name, "S4");
    assert_eq!(tbl.degrees(), &[1, 1, 2, 3, 3]);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["chars"].as_array().unwrap().len(), 5);
}

#[test]
fn chartab_from_generator_file() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("mygroup.gens");
    std::fs::write(&good, "degree 3\n2 3 1\n2 1 3\n").unwrap();
    let o = run(&["chartab", good.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("mygroup: order 6, 3 classes"));

    let bad = dir.path().join("bad.gens");
    std::fs::write(&bad, "degree 4\n1 1 3 4\n").unwrap();
    let o = run(&["chartab", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a bijection at line 2"));
}

#[test]
fn blocks_examples() {
    let out = stdout(&run(&["blocks", "A4", "-p", "3"]));
    assert!(out.contains("p = 3: 2 block(s)"), "{out}");
    assert!(out.contains("B0 (principal): chars [X.0(1), X.1(1), X.2(1)], defect 1"), "{out}");
    assert!(out.contains("B1: chars [X.3(3)], defect 0"), "{out}");

    let out = stdout(&run(&["blocks", "A4", "-p", "2"]));
    assert!(out.contains("p = 2: 1 block(s)"), "{out}");
    assert!(out.contains("chars [X.0(1), X.1(1), X.2(1), X.3(3)]"), "{out}");

    let o = run(&["blocks", "S4", "-p", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let blocks = v["primes"][0]["blocks"].as_array().unwrap();
    let defects: Vec<u64> = blocks.iter().map(|b| b["defect"].as_u64().unwrap()).collect();
    let sizes: Vec<usize> = blocks.iter().map(|b| b["chars"].as_array().unwrap().len()).collect();
    assert_eq!(defects, [1, 0, 0]);
    assert_eq!(sizes, [3, 1, 1]);
}

#[test]
fn frobenius_examples() {
    let o = run(&["frobenius", "A4", "--normal", "K4", "--all-primes"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let p2 = out.split("p = 3").next().unwrap();
    assert!(p2.contains("(b0, B0): Frobenius pair: yes"), "{out}");

    let o = run(&["frobenius", "S4", "--normal", "A4", "-p", "3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let pairs: Vec<(u64, u64, bool)> = v["primes"][0]["pairs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            (
                p["normal_block"].as_u64().unwrap(),
                p["block"].as_u64().unwrap(),
                p["verdict_char"].as_bool().unwrap(),
            )
        })
        .collect();
    assert_eq!(pairs, [(0, 0, true), (1, 1, false), (1, 2, false)]);

    let out = stdout(&run(&["frobenius", "S4", "--normal", "A4", "-p", "2"]));
    assert!(out.contains("(b0, B0): Frobenius pair: no"), "{out}");
    assert!(out.contains("induces to X.3(3) + X.4(3) (norm 2)"), "{out}");
}

#[test]
fn verify_commands() {
    let o = run(&["verify", "--catalog", "--suite", "all"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).trim_end().ends_with(" passed, 0 failed"));

    let out = stdout(&run(&["verify", "A4", "--suite", "brauer"]));
    assert!(out.contains("[PASS] brauer-counts  A4 > K4 p=2: b0: fixed 4/4,1/1,1/1 orbits 2/2"), "{out}");

    let out = stdout(&run(&["verify", "S4", "--suite", "partition"]));
    assert!(out.contains("S4 p=2: |Omega_B| = k(B) = [5]"), "{out}");
    assert!(out.contains("S4 p=3: |Omega_B| = k(B) = [3, 1, 1]"), "{out}");
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(code(&run(&["chartab", "NoSuchGroup"])), 2);
    assert_eq!(code(&run(&["blocks", "A4", "-p", "4"])), 2);
    assert_eq!(code(&run(&["frobenius", "S4", "--normal", "Q8"])), 2);
    assert_eq!(code(&run(&["verify", "A4", "--suite", "bogus"])), 2);
    assert_eq!(code(&run(&["chartab", "S4", "--cap", "10"])), 2);
    assert_eq!(code(&run(&["bogus-subcommand"])), 2);
    let o = Command::new(env!("CARGO_BIN_EXE_blockforge"))
        .args(["chartab", "S4"])
        .env("BLOCKFORGE_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("element cap of 10"));
}

#[test]
fn prime_not_dividing_the_order_warns() {
    let o = run(&["blocks", "A4", "-p", "5"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert!(stdout(&o).contains("p = 5: 4 block(s)"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        &["frobenius", "A4", "--normal", "K4", "--all-primes", "--format", "json"][..],
        &["frobenius", "C7:C3", "--normal", "C7", "--seed", "0"][..],
        &["verify", "--catalog", "--format", "json"][..],
        &["catalog", "--format", "json"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn catalog_listing() {
    let out = stdout(&run(&["catalog"]));
    for name in ["A4", "S4", "SL(2,3)", "C7:C3"] {
        assert!(out.lines().any(|l| l.starts_with(name)), "{name}");
    }
}

#[test]
fn consistency_failure_exits_1_with_full_report() {
    let dir = tempfile::tempdir().unwrap();
    let whole = dir.path().join("s3.gens");
    std::fs::write(&whole, "degree 3\n# name S3\n2 3 1\n2 1 3\n").unwrap();
    let o = run(&["frobenius", "S3", "--normal", whole.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.starts_with("S3 > S3: |G| = 6"), "{out}");
    assert!(out.contains("FAILURE: principal block intersection checks fail"), "{out}");
}
