//! Serialized forms: the topology document, CSV rows and plain-text tables.
//!
//! All reals use a dot decimal separator. CSV and JSON output is a pure
//! function of its inputs, so repeated runs are byte-identical.

use serde::Serialize;

use mcnoc_core::metrics::MemoryEstimate;
use mcnoc_core::{CirculantSpec, MetricsRow, SimReport};

use crate::bench::BenchRow;

/// One router port in the topology document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct PortDoc {
    pub code: u32,
    /// Generatrix length.
    pub gen: usize,
    pub sign: i8,
}

/// Structured description of a circulant and its port numbering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct TopologyDoc {
    pub s: Option<usize>,
    pub k: usize,
    pub n: usize,
    pub generatrices: Vec<usize>,
    pub ports: Vec<PortDoc>,
}

impl TopologyDoc {
    pub fn from_spec(spec: &CirculantSpec) -> Self {
        let gens = spec.generatrices();
        TopologyDoc {
            s: spec.base(),
            k: spec.k(),
            n: spec.n(),
            generatrices: gens.to_vec(),
            ports: spec
                .port_table()
                .iter()
                .map(|(code, a)| PortDoc {
                    code: code.get(),
                    gen: gens[a.gen_index],
                    sign: a.direction.sign(),
                })
                .collect(),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

/// Left-aligned columns separated by two spaces.
pub fn text_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let cells: Vec<String> = cells
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    };
    line(&mut header.iter().copied());
    for r in rows {
        line(&mut r.iter().map(String::as_str));
    }
    out
}

fn real2(x: f64) -> String {
    format!("{x:.2}")
}

pub const METRICS_HEADER: [&str; 4] = ["spec", "n", "d(MC)", "L_av(MC)"];
pub const METRICS_MESH_HEADER: [&str; 6] =
    ["spec", "n", "d(MC)", "L_av(MC)", "d(mesh)", "L_av(mesh)"];

fn metrics_cells(row: &MetricsRow, mesh: bool) -> Vec<String> {
    let mut cells = vec![
        row.spec.clone(),
        row.n.to_string(),
        row.diameter_bruteforce.to_string(),
        real2(row.avg_distance_bruteforce),
    ];
    if mesh {
        cells.push(real2(row.mesh_diameter));
        cells.push(real2(row.mesh_avg));
    }
    cells
}

/// Circulant columns, then mesh columns when `mesh` is set. Reals to 2 decimals.
pub fn metrics_csv(rows: &[MetricsRow], mesh: bool) -> String {
    let header: &[&str] = if mesh {
        &METRICS_MESH_HEADER
    } else {
        &METRICS_HEADER
    };
    let cells: Vec<_> = rows.iter().map(|r| metrics_cells(r, mesh)).collect();
    csv_string(header, &cells)
}

pub fn metrics_table(rows: &[MetricsRow], mesh: bool) -> String {
    let mut header = vec!["spec", "n", "d(MC)", "L_av(MC)", "d(MC) eq", "L_av(MC) eq"];
    if mesh {
        header.extend(["d(mesh)", "L_av(mesh)"]);
    }
    let cells: Vec<_> = rows
        .iter()
        .map(|r| {
            let mut c = metrics_cells(r, false);
            c.push(r.diameter_analytic.map_or("-".into(), |d| d.to_string()));
            c.push(r.avg_distance_analytic.map_or("-".into(), real2));
            if mesh {
                c.push(real2(r.mesh_diameter));
                c.push(real2(r.mesh_avg));
            }
            c
        })
        .collect();
    text_table(&header, &cells)
}

pub const SIM_HEADER: [&str; 9] = [
    "mode",
    "n",
    "s",
    "k",
    "injected",
    "delivered",
    "avg_hops",
    "max_hops",
    "total_cycles",
];

fn sim_cells(spec: &CirculantSpec, r: &SimReport) -> Vec<String> {
    vec![
        r.mode.as_str().to_string(),
        spec.n().to_string(),
        spec.base().map_or(String::new(), |s| s.to_string()),
        spec.k().to_string(),
        r.injected.to_string(),
        r.delivered.to_string(),
        format!("{:.6}", r.avg_hops),
        r.max_hops.to_string(),
        r.total_cycles.to_string(),
    ]
}

pub fn sim_csv(spec: &CirculantSpec, r: &SimReport) -> String {
    csv_string(&SIM_HEADER, &[sim_cells(spec, r)])
}

pub fn sim_table(spec: &CirculantSpec, r: &SimReport) -> String {
    let mut out = text_table(&SIM_HEADER, &[sim_cells(spec, r)]);
    out.push('\n');
    let hist: Vec<_> = r
        .hop_histogram
        .iter()
        .map(|(h, c)| vec![h.to_string(), c.to_string()])
        .collect();
    out.push_str(&text_table(&["hops", "packets"], &hist));
    out
}

pub const MEMORY_HEADER: [&str; 6] = [
    "spec",
    "n",
    "k",
    "per_node_bits",
    "total_bits",
    "address_bits",
];

fn memory_cells(spec: &CirculantSpec, m: &MemoryEstimate) -> Vec<String> {
    vec![
        spec.label(),
        spec.n().to_string(),
        spec.k().to_string(),
        m.per_node_bits.to_string(),
        m.total_bits.to_string(),
        m.address_bits.to_string(),
    ]
}

pub fn memory_csv(spec: &CirculantSpec, m: &MemoryEstimate) -> String {
    csv_string(&MEMORY_HEADER, &[memory_cells(spec, m)])
}

pub fn memory_table(spec: &CirculantSpec, m: &MemoryEstimate) -> String {
    text_table(&MEMORY_HEADER, &[memory_cells(spec, m)])
}

pub const BENCH_HEADER: [&str; 4] = ["spec", "n", "bfs_seconds", "greedy_seconds"];

fn bench_cells(row: &BenchRow) -> Vec<String> {
    vec![
        row.spec.clone(),
        row.n.to_string(),
        format!("{:.6}", row.bfs_seconds),
        format!("{:.6}", row.greedy_seconds),
    ]
}

pub fn bench_csv(row: &BenchRow) -> String {
    csv_string(&BENCH_HEADER, &[bench_cells(row)])
}

pub fn bench_table(row: &BenchRow) -> String {
    let mut cells = bench_cells(row);
    cells.push(format!("{:.1}", row.ratio()));
    let mut header = BENCH_HEADER.to_vec();
    header.push("ratio");
    text_table(&header, &[cells])
}
