use std::io::Write;
use std::process::{Command, Output, Stdio};

fn sfp(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sfp"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut input = child.stdin.take().unwrap();
    input.write_all(stdin.unwrap_or_default()).unwrap();
    drop(input);
    child.wait_with_output().unwrap()
}

fn text(out: &[u8]) -> String {
    String::from_utf8(out.to_vec()).unwrap()
}

#[test]
fn classify_with_stats() {
    let out = sfp(&["classify", "--dim", "3", "--stats"], None);
    assert!(out.status.success());
    let stdout = text(&out.stdout);
    assert_eq!(stdout.lines().filter(|l| l.starts_with('#')).count(), 18);
    let stderr = text(&out.stderr);
    assert!(stderr.contains("polytopes 18"));
    assert!(stderr.contains("nodes "));
    assert!(stdout.lines().all(|l| l == l.trim_end()));
}

#[test]
fn structured_output_verifies() {
    let out = sfp(&["classify", "--dim", "3", "--format", "structured"], None);
    assert!(out.status.success());
    assert_eq!(out.stdout.iter().filter(|&&b| b == b'\n').count(), 18);
    let check = sfp(&["verify", "--in", "-"], Some(&out.stdout));
    assert!(check.status.success(), "{}", text(&check.stderr));
}

#[test]
fn classify_pipes_into_verify() {
    for d in 1..=5 {
        let out = sfp(&["classify", "--dim", &d.to_string()], None);
        let check = sfp(&["verify"], Some(&out.stdout));
        assert!(check.status.success(), "d={d}: {}", text(&check.stderr));
    }
}

#[test]
fn verify_rejects_a_perturbed_vertex() {
    let out = sfp(&["classify", "--dim", "3"], None);
    let good = text(&out.stdout);
    // the first record's last vertex line; shift its first coordinate
    let mut lines: Vec<String> = good.lines().map(String::from).collect();
    let header = lines[1].split(' ').nth(1).unwrap().parse::<usize>().unwrap();
    let target = 1 + header;
    let mut coords: Vec<i64> = lines[target].split(' ').map(|t| t.parse().unwrap()).collect();
    coords[0] += 1;
    lines[target] = coords.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
    let bad = lines.join("\n") + "\n";
    let check = sfp(&["verify", "--in", "-"], Some(bad.as_bytes()));
    assert_eq!(check.status.code(), Some(1));
}

#[test]
fn verify_rejects_duplicates_and_disorder() {
    let out = sfp(&["classify", "--dim", "2"], None);
    let good = text(&out.stdout);
    let doubled = format!("{good}{good}");
    assert_eq!(sfp(&["verify"], Some(doubled.as_bytes())).status.code(), Some(1));
    let garbage = "2 3\n1 0\n";
    assert_eq!(sfp(&["verify"], Some(garbage.as_bytes())).status.code(), Some(1));
}

#[test]
fn table_totals() {
    let out = sfp(&["table", "--max-dim", "5"], None);
    assert!(out.status.success());
    let stdout = text(&out.stdout);
    let total = stdout.lines().last().unwrap();
    assert_eq!(total.split_whitespace().collect::<Vec<_>>(), ["Total", "1", "5", "18", "124", "866"]);
    assert!(stdout.lines().all(|l| l == l.trim_end()));
}

#[test]
fn wd_lists_and_counts() {
    let out = sfp(&["wd", "--dim", "2"], None);
    assert_eq!(text(&out.stdout).lines().count(), 7);
    let out = sfp(&["wd", "--dim", "4", "--count"], None);
    assert_eq!(text(&out.stdout).trim(), "211");
}

#[test]
fn oracle_agrees() {
    let out = sfp(&["oracle", "--dim", "3"], None);
    assert!(out.status.success());
    assert!(text(&out.stdout).contains("agree"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(sfp(&["classify"], None).status.code(), Some(2));
    assert_eq!(sfp(&["oracle", "--dim", "4"], None).status.code(), Some(2));
    assert_eq!(sfp(&["classify", "--dim", "9"], None).status.code(), Some(2));
    assert_eq!(sfp(&["bogus"], None).status.code(), Some(2));
}

#[test]
fn progress_goes_to_stderr() {
    let out = sfp(&["classify", "--dim", "2", "--progress"], None);
    assert!(out.status.success());
    assert!(!text(&out.stdout).contains("nodes"));
}
