use std::path::Path;
use std::process::{Command, Output};

fn apseq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apseq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn from_zero_table_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.csv");
    let o = apseq(&["table", "--kind", "from-zero", "--pattern", "11", "--dmax", "5", "--out", path_str(&out)]);
    assert!(o.status.success());
    assert_eq!(std::fs::read(&out).unwrap(), b"11\n3\n3\n1\n3\n3\n");
}

#[test]
fn global_table_row() {
    let o = apseq(&["table", "--pattern", "11", "--pattern", "001", "--dmax", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "11,001");
    assert!(rows[3].starts_with("5,"));
}

#[test]
fn table_rejects_zero_dmax() {
    let o = apseq(&["table", "--pattern", "11", "--dmax", "0"]);
    assert!(!o.status.success());
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["table", "--pattern", "11", "--pattern", "0", "--pattern", "101", "--dmax", "60"];
    let one = apseq(&[&["--threads", "1"][..], &args[..]].concat());
    let two = apseq(&[&["--threads", "3"][..], &args[..]].concat());
    assert!(one.status.success() && two.status.success());
    assert_eq!(one.stdout, two.stdout);
}

#[test]
fn unknown_suite_is_usage_error() {
    let o = apseq(&["verify", "--suite", "nonexistent"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn constants_suite_passes() {
    let o = apseq(&["verify", "--suite", "constants"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS C, B for 1000: 1/64, 7/8"));
}

#[test]
fn reductions_suite_reports_failure() {
    let o = apseq(&["verify", "--suite", "reductions"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("FAIL A_0(d) = A_t(d)"), "{text}");
    assert!(text.contains("d=9: 11 vs 10"));
}

#[test]
fn certify_then_replay() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("certs.txt");
    let o = apseq(&["certify", "--out", path_str(&out), "--dmax", "1024"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("exceptions: {1,5,7,39}"));
    assert!(text.contains("unresolved: 0"));
    assert!(text.contains(" 0 gaps"));
    let o = apseq(&["replay", path_str(&out)]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("all valid"));
}

#[test]
fn replay_detects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.txt");
    std::fs::write(&file, "p=11011 s=11101 i=4 j=5 sigma=10001 gamma=100001\n").unwrap();
    let o = apseq(&["replay", path_str(&file)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn suffix_family_run() {
    let o = apseq(&["certify", "--suffix-family", "0,5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("unresolved: 2"));
    assert!(text.contains("p=10010 s=0011111"));
    assert!(text.contains("p=11111 s=0011111"));
}

#[test]
fn skip_file_and_iteration_limit() {
    let dir = tempfile::tempdir().unwrap();
    let skip = dir.path().join("skip.txt");
    std::fs::write(&skip, "# nothing skipped\n").unwrap();
    let o = apseq(&["certify", "--skip-file", path_str(&skip), "--max-iter", "2", "--branch-variant", "quad"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("iterations: 2"));
    assert!(stdout(&o).contains("skipped: 0"));
}

#[test]
fn constants_rows() {
    let o = apseq(&["constants", "--max-len", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "v\tx_min\ty_min\tC\tB\n01\t1\t1\t1/2\t1/2\n10\t1\t1\t1/4\t1/2\n11\t1\t1\t1/2\t1/2\n");
    let o = apseq(&["constants", "--max-len", "4"]);
    assert_eq!(stdout(&o).lines().count(), 26);
    assert!(!apseq(&["constants", "--max-len", "1"]).status.success());
}

#[test]
fn histogram_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h.csv");
    let o = apseq(&["hist", "--pattern", "11", "--dmax", "16384", "--out", path_str(&out)]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("value,count"));
    let rows: Vec<(u64, usize)> = lines
        .map(|l| {
            let (a, n) = l.split_once(',').unwrap();
            (a.parse().unwrap(), n.parse().unwrap())
        })
        .collect();
    assert!(rows.iter().all(|&(a, _)| a >= 1));
    assert_eq!(rows.iter().map(|r| r.1).sum::<usize>(), 16384);
    let ones = rows.iter().find(|r| r.0 == 1).unwrap().1;
    assert!(rows.iter().all(|r| r.1 <= ones));
    assert!((6000..=10000).contains(&ones), "{ones}");

    let o = apseq(&["hist", "--pattern", "11", "--dmax", "0"]);
    assert_eq!(stdout(&o), "value,count\n");
    let o = apseq(&["hist", "--pattern", "11", "--dmax", "2", "--scatter"]);
    assert_eq!(stdout(&o), "d,log2_ratio\n1,1.584963\n2,0.584963\n");
}
