use std::path::PathBuf;

fn nofil(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = nofil::cli::run(std::iter::once("nofil").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nofil-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn table_records_match_golden_rows() {
    let (code, out, _) = nofil(&["table", "--family", "empty", "--from", "2", "--to", "45", "--format", "records"]);
    assert_eq!(code, 0);
    let golden: Vec<String> = include_str!("data/empty_minimal.txt")
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            // a v p a u counts... -> family a v p u e counts...
            format!("empty {} {} {} {} 0 {}", f[0], f[1], f[2], f[4], f[5..].join(" "))
        })
        .collect();
    let ours: Vec<String> = out.lines().map(|l| l.rsplit_once(' ').unwrap().0.to_string()).collect();
    assert_eq!(ours, golden);
}

#[test]
fn construct_then_verify() {
    let path = scratch("star3.cert");
    let p = path.to_str().unwrap();
    assert_eq!(nofil(&["construct", "--star", "3", "--emit", p]).0, 0);
    let (code, out, _) = nofil(&["verify", p]);
    assert_eq!(code, 0, "{out}");

    let text = std::fs::read_to_string(&path).unwrap();
    let broken = text.replacen("A:", "A: extra", 1);
    std::fs::write(&path, broken).unwrap();
    assert_ne!(nofil(&["verify", p]).0, 0);
}

#[test]
fn construct_presentation_file() {
    let cert = scratch("star11.cert");
    let pres = scratch("star11.cyc");
    let (code, _, err) = nofil(&[
        "--quiet",
        "construct",
        "--star",
        "11",
        "--emit",
        cert.to_str().unwrap(),
        "--presentation",
        pres.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(!std::fs::read_to_string(pres).unwrap().is_empty());
    assert_eq!(nofil(&["verify", cert.to_str().unwrap()]).0, 0);
}

#[test]
fn play_script_prints_turn_three() {
    let (code, out, _) = nofil(&["play", "--sts", "@sts9", "--script", "1,2,6"]);
    assert_eq!(code, 0);
    let turn3 = out.split("Turn 3").nth(1).unwrap();
    assert!(turn3.contains("available hypergraph: 59 49 45"), "{turn3}");
}

#[test]
fn play_reads_system_files() {
    let path = scratch("sts9.txt");
    std::fs::write(&path, nofil::design::io::write_sts(&nofil::design::fixtures::sts9())).unwrap();
    let (code, out, _) = nofil(&["play", "--sts", path.to_str().unwrap(), "--script", "1,2,6,4"]);
    assert_eq!(code, 0);
    assert!(out.contains("player 2 made the last move"));
}

#[test]
fn search_emits_certificate_and_log() {
    let path = scratch("c4.cert");
    let (code, out, _) = nofil(&["--seed", "3", "search", "--graph", "cycle:4", "--vmax", "9", "--emit", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let first = out.lines().next().unwrap();
    let fields: Vec<&str> = first.split_whitespace().collect();
    assert_eq!(fields.len(), 6, "{first}");
    assert_eq!(&fields[..3], ["7", "2", "1"]);
    assert_eq!(nofil(&["verify", path.to_str().unwrap()]).0, 0);
}

#[test]
fn search_failure_is_a_domain_error() {
    let (code, out, err) = nofil(&["search", "--graph", "empty:2", "--vmax", "13"]);
    assert_eq!(code, 1);
    assert!(out.contains("blocked"));
    assert!(err.contains("does not rule one out"));
}

#[test]
fn seeds_are_reproducible() {
    let args = ["--seed", "9", "search", "--graph", "path:5", "--vmax", "15", "--restarts", "4", "--format", "records"];
    let strip = |s: String| -> String {
        s.lines().filter(|l| l.split_whitespace().count() != 6).collect::<Vec<_>>().join("\n")
    };
    assert_eq!(strip(nofil(&args).1), strip(nofil(&args).1));
}

#[test]
fn harvest_and_find() {
    let (code, out, _) = nofil(&["harvest", "--sts", "@sts9", "--format", "records"]);
    assert_eq!(code, 0);
    assert!(out.lines().count() >= 2);
    let (code, out, _) = nofil(&["harvest", "--sts", "@fano", "--find", "cycle:4"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("found "));
    assert_eq!(nofil(&["harvest", "--sts", "@sts9", "--find", "complete:4"]).0, 1);
}

#[test]
fn pasch_list_switch_and_transfer() {
    let (code, out, _) = nofil(&["pasch", "--sts", "@fano", "--format", "records"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 7);
    assert_eq!(nofil(&["pasch", "--sts", "@sts9"]).1.lines().last().unwrap(), "# 0 Pasch configurations");
    assert_eq!(nofil(&["pasch", "--sts", "@fano", "--switch", "0"]).0, 0);

    let cert = scratch("star8.cert");
    let moved = scratch("star8-moved.cert");
    assert_eq!(nofil(&["construct", "--star", "8", "--emit", cert.to_str().unwrap()]).0, 0);
    let (code, _, err) = nofil(&["pasch", "--transfer", cert.to_str().unwrap(), "--emit", moved.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(nofil(&["verify", moved.to_str().unwrap()]).0, 0);
}

#[test]
fn bounds_and_skolem() {
    let (code, out, _) = nofil(&["bounds", "--graph", "path:4", "--format", "records"]);
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| l.starts_with("19 ")));
    let (code, out, _) = nofil(&["bounds", "--graph", "complete:4", "--v", "9"]);
    assert_eq!(code, 0);
    assert!(out.contains("FAIL"));
    let (code, out, _) = nofil(&["skolem", "--kind", "hooked", "--t", "7", "--special"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "2 1 3"));
    assert_eq!(nofil(&["skolem", "--kind", "split", "--t", "5"]).0, 1);
    assert_eq!(nofil(&["solve", "--sts", "@sts9", "--cap", "7"]).0, 1);
}
