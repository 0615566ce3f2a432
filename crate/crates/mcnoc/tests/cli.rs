use std::process::{Command, Output};

use mcnoc::formats::TopologyDoc;
use mcnoc_core::metrics::compare_row;
use mcnoc_core::sim::{run, RoutingMode, TrafficPattern};
use mcnoc_core::CirculantSpec;

fn mcnoc(args: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcnoc"))
        .args(args.split_whitespace())
        .output()
        .expect("binary runs")
}

fn stdout(args: &str) -> String {
    let out = mcnoc(args);
    assert!(
        out.status.success(),
        "{args}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn route_prints_node_sequence() {
    assert_eq!(
        stdout("route --s 4 --k 3 --from 5 --to 17 --algo greedy"),
        "5 21 17\n"
    );
    assert_eq!(
        stdout("route --s 4 --k 3 --from 5 --to 5 --algo bfs"),
        "5\n"
    );
}

#[test]
fn metrics_csv_reparses_to_the_report() {
    let text = stdout("metrics --s 2 --k 4 --mesh-compare --format csv");
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        header,
        ["spec", "n", "d(MC)", "L_av(MC)", "d(mesh)", "L_av(mesh)"]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 1);
    let r = &rows[0];
    let row = compare_row(&CirculantSpec::multiplicative(2, 4).unwrap());
    assert_eq!(&r[0], row.spec);
    assert_eq!(r[1].parse::<usize>().unwrap(), row.n);
    assert_eq!(r[2].parse::<u32>().unwrap(), row.diameter_bruteforce);
    let close = |s: &str, x: f64| (s.parse::<f64>().unwrap() - x).abs() <= 0.005;
    assert!(close(&r[3], row.avg_distance_bruteforce));
    assert!(close(&r[4], row.mesh_diameter));
    assert!(close(&r[5], row.mesh_avg));
    assert_eq!(&r[2], "2");
    assert_eq!(&r[4], "6.00");
}

#[test]
fn simulate_csv_reparses_to_the_report() {
    let text =
        stdout("simulate --s 3 --k 3 --algo greedy --traffic random:300 --seed 9 --format csv");
    let spec = CirculantSpec::multiplicative(3, 3).unwrap();
    let report = run(
        &spec,
        RoutingMode::Greedy,
        TrafficPattern::RandomPairs { count: 300 },
        9,
    )
    .unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let r = rdr.records().next().unwrap().unwrap();
    assert_eq!(&r[0], "greedy");
    assert_eq!(&r[1], "27");
    assert_eq!(&r[2], "3");
    assert_eq!(&r[3], "3");
    assert_eq!(r[4].parse::<u64>().unwrap(), report.injected);
    assert_eq!(r[5].parse::<u64>().unwrap(), report.delivered);
    assert!((r[6].parse::<f64>().unwrap() - report.avg_hops).abs() < 1e-6);
    assert_eq!(r[7].parse::<usize>().unwrap(), report.max_hops);
    assert_eq!(r[8].parse::<u64>().unwrap(), report.total_cycles);
}

#[test]
fn simulate_json_has_report_fields() {
    let text = stdout("simulate --s 4 --k 3 --algo bfs --traffic pair:5:17 --format json");
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in [
        "mode",
        "injected",
        "delivered",
        "hop_histogram",
        "avg_hops",
        "max_hops",
        "total_cycles",
    ] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["mode"], "source_routed");
    assert_eq!(v["max_hops"], 2);
}

#[test]
fn gen_writes_topology_document() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mc43.json");
    let out = mcnoc(&format!("gen --s 4 --k 3 --out {}", path.display()));
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: TopologyDoc = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(
        doc,
        TopologyDoc::from_spec(&CirculantSpec::multiplicative(4, 3).unwrap())
    );
    assert_eq!((doc.s, doc.k, doc.n), (Some(4), 3, 64));
    assert_eq!(doc.ports.len(), 6);
    assert_eq!(
        stdout("gen --s 4 --k 3"),
        std::fs::read_to_string(&path).unwrap()
    );
}

#[test]
fn memory_reports_total_bits() {
    let text = stdout("memory --s 3 --k 2 --format csv");
    assert_eq!(
        text,
        "spec,n,k,per_node_bits,total_bits,address_bits\n\"MC(3,2)\",9,2,19,171,4\n"
    );
}

#[test]
fn bench_emits_one_row() {
    let text = stdout("bench --s 2 --k 4 --repeat 3 --format csv");
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let r = rdr.records().next().unwrap().unwrap();
    assert_eq!(&r[0], "MC(2,4)");
    assert_eq!(&r[1], "16");
    assert!(r[2].parse::<f64>().unwrap() >= 0.0);
    assert!(r[3].parse::<f64>().unwrap() >= 0.0);
}

#[test]
fn failures_exit_with_one_line_diagnostics() {
    for args in [
        "route --s 1 --k 3 --from 0 --to 1 --algo bfs",
        "route --s 4 --k 3 --from 0 --to 64 --algo greedy",
        "metrics --s 4 --k 3 --format xml",
        "simulate --s 4 --k 3 --algo bfs --traffic pair:3:3",
        "simulate --s 4 --k 3 --algo bfs --traffic sometimes",
        "frobnicate",
        "bench --s 101 --k 2",
    ] {
        let out = mcnoc(args);
        assert_eq!(out.status.code(), Some(1), "{args}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args}: {err}");
        assert!(out.stdout.is_empty());
    }
}
