use std::process::{Command, Output};

use altcsit_core::doc::{RegionDoc, ScheduleDoc};
use altcsit_core::figures::{parse_triples_csv, SURFACE_HEADER, TRADEOFF_HEADER};
use altcsit_core::rational::{int, q};
use altcsit_core::sim::from_csv;
use altcsit_core::{region_from_pmf, LambdaPmf};

fn altcsit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_altcsit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn region_document() {
    let o = altcsit(&["region", "--pmf", "PD=1/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("sum_dof 5/3\n"));

    let o = altcsit(&["region", "--pmf", "PP=1"]);
    assert!(stdout(&o).contains("(1,1)"));

    let o = altcsit(&["region", "--pmf", "DD=1/5,PN=2/5"]);
    let text = stdout(&o);
    assert!(text.contains("corner P0 (4/5,4/5)\n"));
    let doc = RegionDoc::parse(&text).unwrap();
    let pmf = LambdaPmf::parse("DD=1/5,PN=2/5").unwrap();
    assert_eq!(doc.region, region_from_pmf(&pmf));
    assert_eq!(doc, RegionDoc::from_pmf(&pmf));
}

#[test]
fn region_writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("region.txt");
    let o = altcsit(&["region", "--pmf", "PD=1/2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(RegionDoc::parse(&text).is_ok());
}

#[test]
fn bad_pmf_is_a_domain_error() {
    let o = altcsit(&["region", "--pmf", "PD=1/2, DD=1/2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("sum"));
    let o = altcsit(&["region", "--pmf", "XX=1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn compose_documents_validate() {
    let o = altcsit(&["compose", "--pmf", "PN=1/2", "--corner", "P1"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = ScheduleDoc::parse(&stdout(&o)).unwrap();
    assert!(doc.report.passed());
    assert!(stdout(&o).contains("row S3/2-3 normal none 1 states=PN,NP\n"));

    let o = altcsit(&["compose", "--pmf", "DD=1/5,PN=2/5", "--corner", "P0"]);
    assert!(stdout(&o).contains("row S8/5 normal none 1 states=DD,PN,NP,PN,NP\n"));
    assert!(stdout(&o).contains("achieved (4/5,4/5)\n"));

    let o = altcsit(&["compose", "--pmf", "PN=1/2", "--target", "(3/4,3/4)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(ScheduleDoc::parse(&stdout(&o)).unwrap().report.passed());
}

#[test]
fn compose_domain_errors() {
    let o = altcsit(&["compose", "--pmf", "PN=1/2", "--target", "(1,1)"]);
    assert_eq!(o.status.code(), Some(2));
    let o = altcsit(&["compose", "--pmf", "NN=1", "--corner", "P0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = altcsit(&["compose", "--pmf", "NN=1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_counts_passes() {
    for id in ["S2", "S8/5"] {
        let o = altcsit(&["verify", "--scheme", id, "--trials", "1000", "--seed", "5"]);
        assert_eq!(o.status.code(), Some(0), "{id}");
        assert!(stdout(&o).contains("rx1 1000/1000\nrx2 1000/1000\n"));
    }
    let o = altcsit(&["verify", "--scheme", "S7/4", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn simulate_emits_csv_and_slopes() {
    let args = [
        "simulate",
        "--scheme",
        "S8/5",
        "--snr-from",
        "20",
        "--snr-to",
        "60",
        "--snr-step",
        "5",
        "--trials",
        "2000",
        "--seed",
        "3",
    ];
    let o = altcsit(&args);
    assert_eq!(o.status.code(), Some(0));
    let rows = from_csv(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 9);
    assert!(rows
        .iter()
        .all(|(s, label)| label == "S8/5" && s.trials == 2000));
    let summary = String::from_utf8(o.stderr).unwrap();
    let d1: f64 = summary
        .split_whitespace()
        .find_map(|w| w.strip_prefix("d1="))
        .unwrap()
        .parse()
        .unwrap();
    assert!((d1 - 0.8).abs() < 0.1, "{summary}");
    // same flags, same bytes
    assert_eq!(altcsit(&args).stdout, o.stdout);
}

#[test]
fn simulate_needs_a_seed() {
    let o = altcsit(&["simulate", "--scheme", "S2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn simulate_a_schedule() {
    let o = altcsit(&[
        "simulate", "--pmf", "PN=1/2", "--corner", "P1", "--trials", "200", "--seed", "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(from_csv(&stdout(&o))
        .unwrap()
        .iter()
        .all(|(_, l)| l == "schedule"));
}

#[test]
fn surface_and_tradeoff_tables() {
    let o = altcsit(&["surface", "--grid-step", "1/30"]);
    let rows = parse_triples_csv(SURFACE_HEADER, &stdout(&o)).unwrap();
    let at = |d, p| {
        rows.iter()
            .find(|r| r.0 == d && r.1 == p)
            .unwrap()
            .2
            .clone()
    };
    assert_eq!(at(int(0), int(1)), int(2));
    assert_eq!(at(q(1, 3), int(0)), q(4, 3));
    assert_eq!(at(int(0), int(0)), int(1));

    let o = altcsit(&["tradeoff", "--grid-step", "1/60"]);
    let rows = parse_triples_csv(TRADEOFF_HEADER, &stdout(&o)).unwrap();
    let at = |x| {
        rows.iter()
            .find(|r| r.0 == x)
            .map(|r| (r.1.clone(), r.2.clone()))
            .unwrap()
    };
    assert_eq!(at(q(3, 2)), (q(1, 4), q(1, 4)));
    assert_eq!(at(q(5, 3)), (q(1, 2), q(1, 6)));
    assert_eq!(at(int(1)), (int(0), int(0)));

    let o = altcsit(&["tradeoff", "--dof-to", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn trace_output() {
    let o = altcsit(&["trace", "--scheme", "S3/2-3", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("# scheme S3/2-3 role normal slots 2 m1 2 m2 1\n"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn help_and_usage() {
    assert_eq!(altcsit(&["--help"]).status.code(), Some(0));
    assert_eq!(altcsit(&["--version"]).status.code(), Some(0));
    assert_eq!(altcsit(&["nonsense"]).status.code(), Some(1));
    assert_eq!(altcsit(&[]).status.code(), Some(1));
}
