use std::process::{Command, Output};

fn cycdes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cycdes")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = cycdes(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn map_and_stats_examples() {
    assert_eq!(stdout(&["map", "--fn", "Phi", "(-4,-1,2,5,-3,-6,7)"]).trim(), "[1,2,-6,-3,-5,4]");
    assert_eq!(stdout(&["map", "--fn", "phi", "[2,5,-6,-1,-3,7,-4]"]).trim(), "[-1,2,-6,-3,-5,4]");
    assert_eq!(stdout(&["map", "--fn", "Phi", "[5,-6,4,8,7,-9,2,-1,3]"]).trim(), "[4,-1,5,8,7,-6,3,2]");
    assert_eq!(stdout(&["stats", "[-3,1,2,-5,-4,6]"]).trim(), "des=2 maj=3 neg=3 fmaj=9");
}

#[test]
fn invert_round_trips() {
    assert_eq!(stdout(&["invert", "--fn", "PsiD", "[1]"]).trim(), "[2,1]");
    let both = stdout(&["invert", "--fn", "Phi", "[2,-1,3]", "--notation", "cycles"]);
    assert_eq!(both.lines().collect::<Vec<_>>(), ["(3,-1,2,-4)", "(4,2,-1,3)"]);
    for line in both.lines() {
        assert_eq!(stdout(&["map", "--fn", "Phi", line]).trim(), "[2,-1,3]");
    }
}

#[test]
fn bad_input_exits_with_usage_code() {
    let out = cycdes(&["stats", "[1,1]"]);
    assert_eq!(out.status.code(), Some(2));
    let out = cycdes(&["stats", "[1,,1]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("column 4"));
    let out = cycdes(&["map", "--fn", "phi", "[5,-6,4,8,7,-9,2,-1,3]"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oversized_enumeration_exits_with_budget_code() {
    let out = cycdes(&["verify", "--claim", "phi-descents", "--n", "13"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_reports() {
    let text = stdout(&["verify", "--claim", "phi-descents", "--n", "5"]);
    assert!(text.starts_with("claim=phi-descents n=5 shard=0/1 checked=7680 result=PASS"));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["verify", "--claim", "corollary-counts", "--n", "5", "--format", "json"]))
            .unwrap();
    assert_eq!(json["passed"], true);
    assert_eq!(json["details"]["sets"], "32");
    assert_eq!(
        json["details"]["digest"],
        "aab72de332be146303f66a094053f7013db853adb9d058dd59bceeb07a7c5bbf"
    );
}

#[test]
fn shards_cover_the_domain() {
    let mut total = 0u64;
    for i in 0..3 {
        let shard = format!("{i}/3");
        let text = stdout(&["verify", "--claim", "phi-descents", "--n", "5", "--shard", &shard]);
        assert!(text.contains("result=PASS"));
        let checked = text.split_whitespace().find_map(|w| w.strip_prefix("checked=")).unwrap();
        total += checked.parse::<u64>().unwrap();
    }
    assert_eq!(total, 7680);
    assert_eq!(cycdes(&["verify", "--claim", "moments", "--n", "5", "--shard", "0/2"]).status.code(), Some(2));
}

#[test]
fn tabulate_json_schema() {
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["tabulate", "--domain", "CB", "--n", "5", "--stat", "fmaj"])).unwrap();
    let keys: Vec<_> = json.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["domain", "n", "stat", "counts"]);
    assert_eq!(json["domain"], "CB");
    assert_eq!(json["n"], 5);
    let counts = json["counts"].as_object().unwrap();
    let total: u64 = counts.values().map(|v| v.as_str().unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(total, 768);
    assert_eq!(counts["12"], "68");
}

#[test]
fn refined_tables_agree_across_classes() {
    let b = stdout(&["tabulate", "--domain", "B", "--n", "4", "--refined"]);
    let cd = stdout(&["tabulate", "--domain", "CD", "--n", "5", "--refined"]);
    let counts = |s: &str| serde_json::from_str::<serde_json::Value>(s).unwrap()["counts"].clone();
    assert_eq!(counts(&b), counts(&cd));
}

#[test]
fn sampling_is_reproducible() {
    let args = ["sample", "--domain", "CD", "--n", "9", "--samples", "50", "--seed", "7"];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args));
    assert_eq!(first.lines().count(), 50);
    let other = stdout(&["sample", "--domain", "CD", "--n", "9", "--samples", "50", "--seed", "8"]);
    assert_ne!(first, other);
}

#[test]
fn thread_count_does_not_change_output() {
    let base = ["tabulate", "--domain", "CB", "--n", "6", "--stat", "fmaj"];
    let one = stdout(&[&base[..], &["--threads", "1"]].concat());
    let four = stdout(&[&base[..], &["--threads", "4"]].concat());
    assert_eq!(one, four);
    let clt = ["clt", "--n", "30", "--samples", "5000", "--format", "json"];
    assert_eq!(stdout(&[&clt[..], &["--threads", "1"]].concat()), stdout(&[&clt[..], &["--threads", "3"]].concat()));
}
