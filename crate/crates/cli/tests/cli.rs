use std::process::{Command, Output};

fn ringdef(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringdef"))
        .args(args)
        .env_remove("RINGDEF_SEED")
        .output()
        .expect("spawn ringdef")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn symbol_at_two_and_infinity() {
    let o = ringdef(&["symbol", "-1", "-1", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "-1");
    assert_eq!(stdout(&ringdef(&["symbol", "-1", "-1", "inf"])).trim(), "-1");
    assert_eq!(stdout(&ringdef(&["symbol", "2", "7", "7"])).trim(), "1");
}

#[test]
fn delta_of_hamilton_quaternions() {
    let o = ringdef(&["delta", "-1", "-1"]);
    assert_eq!(stdout(&o).trim(), "{3, inf}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(ringdef(&["symbol", "0", "1", "2"]).status.code(), Some(2));
    assert_eq!(ringdef(&["symbol", "1", "1", "4"]).status.code(), Some(2));
    assert_eq!(ringdef(&["define-semilocal", "2,x"]).status.code(), Some(2));
    assert_eq!(ringdef(&["suite", "nope"]).status.code(), Some(2));
    assert_eq!(ringdef(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn ledger_header() {
    let o = ringdef(&["ledger", "2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("{paper: 10, naive: 12, merge_constructed: false}"));
    let csv = stdout(&ringdef(&["ledger", "3", "--format", "tabular"]));
    assert!(csv.starts_with("block,quantifiers\n"));
    assert!(csv.contains("paper_total,10\n"));
}

#[test]
fn semilocal_certificate_round_trip() {
    let dir = std::env::temp_dir().join(format!("ringdef-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cert = dir.join("s.cert");
    let c = cert.to_str().unwrap();
    assert!(ringdef(&["define-semilocal", "2", "--out", c]).status.success());
    let text = std::fs::read_to_string(&cert).unwrap();
    assert!(text.starts_with("format = ringdef-semilocal/1\n"));
    assert!(text.contains("formula.quantifiers = 3\n"));

    let o = ringdef(&["verify-semilocal", c, "--count", "60", "--height", "100"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("status = pass"));

    let f = stdout(&ringdef(&["emit-formula", c]));
    assert_eq!(f.matches('∃').count(), 3);

    std::fs::write(&cert, text.replace("pi = 6", "pi = 7")).unwrap();
    assert_eq!(ringdef(&["verify-semilocal", c]).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn universal_reports_and_tabulates() {
    let o = ringdef(&["universal", "2,3", "--count", "40"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("check.universal-decision = pass"));
    let csv = stdout(&ringdef(&["universal", "5", "--count", "5", "--format", "tabular"]));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("value,oracle,certificate,route"));
    assert!(lines.all(|l| {
        let f: Vec<_> = l.split(',').collect();
        f[1] == f[2]
    }));
}

#[test]
fn poonen_decomposition() {
    let o = ringdef(&["poonen", "4", "3", "5"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("5 = "));
}

#[test]
fn seed_is_reported() {
    let o = ringdef(&["suite", "reciprocity", "--seed", "7", "--count", "20"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("seed = 7\n"));
}
