//! Argument parsing and command dispatch. Commands only adapt flags to the
//! core crate and render what it returns.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use mcnoc_core::greedy::greedy_path;
use mcnoc_core::metrics::{address_bits, compare_row, memory_bits};
use mcnoc_core::sim::{run, RoutingMode, TrafficPattern};
use mcnoc_core::static_route::{build_packet_with, shortest_path, PacketLayout};
use mcnoc_core::{CirculantSpec, Error, NodeId};

use crate::bench::bench_row;
use crate::formats::{self, TopologyDoc};

/// Failure of a command, split by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags or values; exit code 1.
    #[error("{0}")]
    Usage(String),
    /// A routing invariant broke; exit code 2.
    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Invariant(_) => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_invariant_violation() {
            CliError::Invariant(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Bfs,
    Greedy,
}

impl Algo {
    fn mode(self) -> RoutingMode {
        match self {
            Algo::Bfs => RoutingMode::SourceRouted,
            Algo::Greedy => RoutingMode::Greedy,
        }
    }
}

/// `all`, `random:N` or `pair:SRC:DST`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrafficArg(pub TrafficPattern);

impl FromStr for TrafficArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |x: &str| {
            x.parse::<usize>()
                .map_err(|_| format!("invalid number {x:?} in traffic {s:?}"))
        };
        let pattern = match parts.as_slice() {
            ["all"] => TrafficPattern::AllPairs,
            ["random", count] => TrafficPattern::RandomPairs { count: num(count)? },
            ["pair", src, dst] => TrafficPattern::Single {
                src: num(src)?,
                dst: num(dst)?,
            },
            _ => return Err(format!("expected all, random:N or pair:SRC:DST, got {s:?}")),
        };
        Ok(TrafficArg(pattern))
    }
}

#[derive(Debug, Clone, clap::Args)]
pub struct TopologyArgs {
    /// Base s of MC(s, k).
    #[arg(long)]
    pub s: usize,
    /// Dimension k of MC(s, k).
    #[arg(long)]
    pub k: usize,
}

impl TopologyArgs {
    fn spec(&self) -> Result<CirculantSpec, CliError> {
        Ok(CirculantSpec::multiplicative(self.s, self.k)?)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "mcnoc",
    version,
    about = "Multiplicative circulant network-on-chip toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the topology document of MC(s, k).
    Gen {
        #[command(flatten)]
        topo: TopologyArgs,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Diameter and average distance, optionally against a square mesh.
    Metrics {
        #[command(flatten)]
        topo: TopologyArgs,
        #[arg(long)]
        mesh_compare: bool,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Route one packet and print the node sequence.
    Route {
        #[command(flatten)]
        topo: TopologyArgs,
        #[arg(long)]
        from: NodeId,
        #[arg(long)]
        to: NodeId,
        #[arg(long, value_enum)]
        algo: Algo,
        /// Also print the packet header bits.
        #[arg(long)]
        show_packet: bool,
    },
    /// Push traffic through the forwarding simulator.
    Simulate {
        #[command(flatten)]
        topo: TopologyArgs,
        #[arg(long, value_enum)]
        algo: Algo,
        /// all | random:N | pair:SRC:DST
        #[arg(long)]
        traffic: TrafficArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Router memory estimate and destination address width.
    Memory {
        #[command(flatten)]
        topo: TopologyArgs,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Time all-pairs route computation, BFS against greedy.
    Bench {
        #[command(flatten)]
        topo: TopologyArgs,
        #[arg(long, default_value_t = 5)]
        repeat: usize,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
}

/// Runs a parsed command and returns what it prints on standard output.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Gen { topo, out } => {
            let doc = formats::to_json(&TopologyDoc::from_spec(&topo.spec()?));
            match out {
                Some(path) => {
                    std::fs::write(path, doc).map_err(|e| {
                        CliError::Usage(format!("cannot write {}: {e}", path.display()))
                    })?;
                    Ok(String::new())
                }
                None => Ok(doc),
            }
        }
        Command::Metrics {
            topo,
            mesh_compare,
            format,
        } => {
            let row = compare_row(&topo.spec()?);
            Ok(match format {
                OutputFormat::Table => formats::metrics_table(&[row], *mesh_compare),
                OutputFormat::Csv => formats::metrics_csv(&[row], *mesh_compare),
                OutputFormat::Json => formats::to_json(&row),
            })
        }
        Command::Route {
            topo,
            from,
            to,
            algo,
            show_packet,
        } => {
            let spec = topo.spec()?;
            let path = match algo {
                Algo::Bfs => shortest_path(&spec, *from, *to)?,
                Algo::Greedy => greedy_path(&spec, *from, *to)?,
            };
            let mut out = format!("{path}\n");
            if *show_packet {
                match algo {
                    Algo::Bfs => {
                        let layout = PacketLayout::new(&spec);
                        let pkt = build_packet_with(&layout, &spec, *from, *to)?;
                        out.push_str(&format!(
                            "packet: {} ({} bits per hop, {} hops)\n",
                            pkt.render_bits(),
                            pkt.bits_per_hop,
                            pkt.hops_encoded
                        ));
                    }
                    Algo::Greedy => {
                        let p = address_bits(&spec) as usize;
                        out.push_str(&format!("packet: dst={to:0p$b} ({p} address bits)\n"));
                    }
                }
            }
            Ok(out)
        }
        Command::Simulate {
            topo,
            algo,
            traffic,
            seed,
            format,
        } => {
            let spec = topo.spec()?;
            let report = run(&spec, algo.mode(), traffic.0, *seed)?;
            Ok(match format {
                OutputFormat::Table => formats::sim_table(&spec, &report),
                OutputFormat::Csv => formats::sim_csv(&spec, &report),
                OutputFormat::Json => formats::to_json(&report),
            })
        }
        Command::Memory { topo, format } => {
            let spec = topo.spec()?;
            let m = memory_bits(&spec)?;
            Ok(match format {
                OutputFormat::Table => formats::memory_table(&spec, &m),
                OutputFormat::Csv => formats::memory_csv(&spec, &m),
                OutputFormat::Json => formats::to_json(&m),
            })
        }
        Command::Bench {
            topo,
            repeat,
            format,
        } => {
            if *repeat == 0 {
                return Err(CliError::Usage("--repeat must be at least 1".into()));
            }
            let row = bench_row(&topo.spec()?, *repeat)?;
            Ok(match format {
                OutputFormat::Table => formats::bench_table(&row),
                OutputFormat::Csv => formats::bench_csv(&row),
                OutputFormat::Json => formats::to_json(&row),
            })
        }
    }
}

/// Parses `args` (program name first) and executes. Help and version
/// requests come back as `Ok` text.
pub fn run_args<I, T>(args: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                Ok(e.to_string())
            }
            _ => {
                // clap renders several lines; keep the message, drop the usage block.
                let msg = e.to_string();
                let line = msg
                    .lines()
                    .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more"))
                    .map(str::trim)
                    .filter(|l| !l.is_empty())
                    .collect::<Vec<_>>()
                    .join(" ");
                Err(CliError::Usage(
                    line.trim_start_matches("error: ").to_string(),
                ))
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(line: &str) -> Result<String, CliError> {
        run_args(std::iter::once("mcnoc").chain(line.split_whitespace()))
    }

    #[test]
    fn traffic_parsing() {
        assert_eq!("all".parse(), Ok(TrafficArg(TrafficPattern::AllPairs)));
        assert_eq!(
            "random:50".parse(),
            Ok(TrafficArg(TrafficPattern::RandomPairs { count: 50 }))
        );
        assert_eq!(
            "pair:5:17".parse(),
            Ok(TrafficArg(TrafficPattern::Single { src: 5, dst: 17 }))
        );
        assert!("pair:5".parse::<TrafficArg>().is_err());
        assert!("random:x".parse::<TrafficArg>().is_err());
    }

    #[test]
    fn route_worked_example() {
        assert_eq!(
            run("route --s 4 --k 3 --from 5 --to 17 --algo greedy").unwrap(),
            "5 21 17\n"
        );
        assert_eq!(
            run("route --s 4 --k 3 --from 5 --to 17 --algo bfs").unwrap(),
            "5 21 17\n"
        );
        assert_eq!(
            run("route --s 4 --k 3 --from 5 --to 5 --algo bfs").unwrap(),
            "5\n"
        );
        let out = run("route --s 4 --k 3 --from 5 --to 17 --algo bfs --show-packet").unwrap();
        assert!(out.contains("packet: 011|010"));
        let out = run("route --s 4 --k 3 --from 5 --to 17 --algo greedy --show-packet").unwrap();
        assert!(out.contains("dst=010001 (6 address bits)"));
    }

    #[test]
    fn error_exit_codes() {
        assert_eq!(
            run("route --s 1 --k 3 --from 0 --to 1 --algo bfs")
                .unwrap_err()
                .exit_code(),
            1
        );
        assert_eq!(
            run("route --s 4 --k 3 --from 0 --to 64 --algo bfs")
                .unwrap_err()
                .exit_code(),
            1
        );
        assert_eq!(
            run("metrics --s 4 --k 3 --bogus").unwrap_err().exit_code(),
            1
        );
        assert_eq!(
            run("simulate --s 4 --k 3 --algo bfs --traffic pair:3:3")
                .unwrap_err()
                .exit_code(),
            1
        );
        assert_eq!(
            run("bench --s 4 --k 3 --repeat 0").unwrap_err().exit_code(),
            1
        );
        let inv: CliError = Error::Undeliverable {
            src: 0,
            dst: 1,
            at: 2,
        }
        .into();
        assert_eq!(inv.exit_code(), 2);
    }

    #[test]
    fn help_is_not_an_error() {
        assert!(run("--help").unwrap().contains("Usage"));
    }
}
