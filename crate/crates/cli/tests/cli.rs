use std::process::{Command, Output};

use monotone_tr::tr::OmegaDifferential;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monotone-tr")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn hurwitz_examples() {
    let o = run(&["hurwitz", "--q", "1", "--g", "0", "--mu", "1,1,1", "--method", "brute", "--connected"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "8\n");
    let o = run(&["hurwitz", "--q", "2", "--g", "0", "--mu", "2", "--method", "schur", "--connected"]);
    assert_eq!(stdout(&o), "1/2\n");
    assert_eq!(stdout(&run(&["hurwitz", "--q", "2", "--g", "0", "--mu", "3"])), "0\n");
}

#[test]
fn hurwitz_methods_agree() {
    for mu in ["2,1", "1,1,1", "3"] {
        for g in ["0", "1"] {
            let base = ["hurwitz", "--q", "1", "--g", g, "--mu", mu];
            let brute = stdout(&run(&[&base[..], &["--method", "brute", "--connected"]].concat()));
            let schur = stdout(&run(&[&base[..], &["--connected"]].concat()));
            let log = stdout(&run(&[&base[..], &["--method", "connected-log"]].concat()));
            assert_eq!(brute, schur, "g={g} mu={mu}");
            assert_eq!(brute, log, "g={g} mu={mu}");
            let bd = stdout(&run(&[&base[..], &["--method", "brute"]].concat()));
            assert_eq!(bd, stdout(&run(&base)), "g={g} mu={mu}");
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["hurwitz", "--q", "1", "--mu", "2"]).status.code(), Some(2));
    assert_eq!(run(&["hurwitz", "--q", "0", "--g", "0", "--mu", "2"]).status.code(), Some(2));
    assert_eq!(run(&["hurwitz", "--q", "1", "--g", "0", "--mu", "x"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let o = run(&["hurwitz", "--q", "1", "--g", "2", "--mu", "4,4", "--method", "brute"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
    assert_eq!(run(&["omega", "--q", "1", "--g", "0", "--n", "0"]).status.code(), Some(2));
}

#[test]
fn table_csv_format() {
    let o = run(&["table", "--q", "1", "--gmax", "1", "--mumax", "4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("q,g,mu,connected,disconnected"));
    let rows: Vec<&str> = lines.collect();
    // 11 partitions of 1..=4, two genera
    assert_eq!(rows.len(), 22);
    assert!(rows.contains(&"1,0,1;1;1,8/1,11/1"));
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert!(reader.records().all(|r| r.unwrap().len() == 5));
}

#[test]
fn table_json_and_full_sample() {
    let o = run(&["table", "--q", "2", "--gmax", "1", "--mumax", "4", "--sample", "1.0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema"], "monotone-tr/v1");
    assert_eq!(v["agree"], true);
    let rows = v["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    for r in rows {
        assert_eq!(r["brute"], true, "{r}");
        assert!(r["connected"].as_str().unwrap().contains('/'));
    }
    let o = run(&["table", "--q", "2", "--gmax", "1", "--mumax", "4", "--sample", "0"]);
    assert!(json(&o)["rows"].as_array().unwrap().iter().all(|r| r.get("brute").is_none()));
    assert_eq!(run(&["table", "--q", "2", "--gmax", "1", "--mumax", "4", "--sample", "2"]).status.code(), Some(2));
}

#[test]
fn verify_examples() {
    let o = run(&["verify", "expansion", "--q", "1,2", "--gmax", "1", "--nmax", "2", "--mumax", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema"], "monotone-tr/v1");
    assert_eq!(v["suite"], "expansion");
    assert_eq!(v["agree"], true);
    let records = v["records"].as_array().unwrap();
    // (1,1) and (1,2) for two values of q
    assert_eq!(records.len(), 2 * (5 + 25));
    assert!(records.iter().all(|r| r["value"].as_str().unwrap().contains('/') && r.get("wall_ms").is_none()));

    let o = run(&["verify", "evolution", "--q", "1", "--weight", "4", "--hbar", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["agree"], true);
}

#[test]
fn mutation_flips_every_suite() {
    for suite in ["expansion", "loop-equations", "cutjoin", "evolution", "unstable"] {
        let o = run(&["verify", suite, "--q", "1", "--chimax", "1", "--mumax", "3", "--mutate"]);
        assert_eq!(o.status.code(), Some(1), "{suite}");
        let v = json(&o);
        assert_eq!(v["agree"], false, "{suite}");
    }
}

#[test]
fn printed_shift_is_reported() {
    let o = run(&["verify", "cutjoin", "--q", "1", "--chimax", "1", "--shift", "printed"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let by_n: Vec<(u64, bool)> = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["n"].as_u64().unwrap(), r["agree"].as_bool().unwrap()))
        .collect();
    assert_eq!(by_n, vec![(3, true), (1, false)]);
}

#[test]
fn timings_are_opt_in() {
    let o = run(&["verify", "evolution", "--q", "2", "--timings"]);
    assert!(json(&o)["records"][0].get("wall_ms").is_some());
}

#[test]
fn thread_count_sources() {
    let args = ["verify", "unstable", "--q", "1,2", "--mumax", "4"];
    let a = run(&[&["--threads", "1"][..], &args].concat());
    let b = Command::new(env!("CARGO_BIN_EXE_monotone-tr"))
        .env("MONOTONE_TR_THREADS", "3")
        .args(args)
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_monotone-tr"))
        .env("MONOTONE_TR_THREADS", "many")
        .args(args)
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    // the flag wins over a bad environment value
    let ok = Command::new(env!("CARGO_BIN_EXE_monotone-tr"))
        .env("MONOTONE_TR_THREADS", "many")
        .args([&["--threads", "2"][..], &args].concat())
        .output()
        .unwrap();
    assert_eq!(ok.stdout, a.stdout);
}

#[test]
fn omega_dump_round_trips() {
    let o = run(&["omega", "--q", "2", "--g", "1", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["pole_orders"], serde_json::json!([4]));
    let w = OmegaDifferential::from_json(&v).unwrap();
    assert_eq!((w.g, w.n, w.q), (1, 1, 2));
    let seed = json(&run(&["omega", "--q", "3", "--g", "0", "--n", "1"]));
    assert!(OmegaDifferential::from_json(&seed).is_ok());
}
