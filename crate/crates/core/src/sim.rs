//! Contention-free, hop-per-cycle forwarding simulator.
//!
//! All packets are injected at cycle 0 and every router moves each packet it
//! holds one hop per cycle, using only its own id, the packet header and the
//! topology constants. Links have unbounded capacity.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::greedy::next_hop;
use crate::static_route::{build_packet_with, PacketLayout, SourceRoutedPacket, Step};
use crate::topology::{CirculantSpec, NodeId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RoutingMode {
    /// BFS route computed at the source and carried as port codes.
    SourceRouted,
    /// Every router computes the next hop from the destination id.
    Greedy,
}

impl RoutingMode {
    pub fn as_str(self) -> &'static str {
        match self {
            RoutingMode::SourceRouted => "source_routed",
            RoutingMode::Greedy => "greedy",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrafficPattern {
    /// Every ordered pair of distinct nodes, once.
    AllPairs,
    /// `count` pairs drawn with [`SplitMix64`] from the run seed.
    RandomPairs {
        count: usize,
    },
    Single {
        src: NodeId,
        dst: NodeId,
    },
}

/// SplitMix64 (Steele, Lea and Flood). Chosen because it is tiny and
/// reproducible bit-for-bit in any language.
///
/// ```text
/// state += 0x9E3779B97F4A7C15
/// z = state
/// z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
/// z = (z ^ (z >> 27)) * 0x94D049BB133111EB
/// return z ^ (z >> 31)
/// ```
///
/// A random pair is drawn as `src = next() % n`, `r = next() % (n - 1)`,
/// `dst = r + (r >= src)`, all arithmetic wrapping on 64 bits.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// Expands a traffic pattern into `(src, dst)` pairs.
pub fn traffic_pairs(
    spec: &CirculantSpec,
    traffic: TrafficPattern,
    seed: u64,
) -> Result<Vec<(NodeId, NodeId)>> {
    let n = spec.n();
    match traffic {
        TrafficPattern::AllPairs => Ok((0..n)
            .flat_map(|s| (0..n).filter(move |&d| d != s).map(move |d| (s, d)))
            .collect()),
        TrafficPattern::RandomPairs { count } => {
            let mut rng = SplitMix64::new(seed);
            let n64 = n as u64;
            Ok((0..count)
                .map(|_| {
                    let src = (rng.next_u64() % n64) as usize;
                    let r = (rng.next_u64() % (n64 - 1)) as usize;
                    (src, if r >= src { r + 1 } else { r })
                })
                .collect())
        }
        TrafficPattern::Single { src, dst } => {
            spec.check_node(src)?;
            spec.check_node(dst)?;
            if src == dst {
                return Err(Error::SameEndpoints(src));
            }
            Ok(alloc::vec![(src, dst)])
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimReport {
    pub mode: RoutingMode,
    pub injected: u64,
    pub delivered: u64,
    /// Hop count → number of packets.
    pub hop_histogram: BTreeMap<usize, u64>,
    pub avg_hops: f64,
    pub max_hops: usize,
    pub total_cycles: u64,
}

enum Header {
    Source(SourceRoutedPacket),
    Greedy { dst: NodeId },
}

struct InFlight {
    src: NodeId,
    dst: NodeId,
    at: NodeId,
    hops: usize,
    header: Header,
}

/// Runs `traffic` through the network and tallies exact hop counts.
///
/// A packet that stops anywhere but its destination, or wanders longer than
/// `n` hops, aborts the run with an invariant-violation error.
pub fn run(
    spec: &CirculantSpec,
    mode: RoutingMode,
    traffic: TrafficPattern,
    seed: u64,
) -> Result<SimReport> {
    if mode == RoutingMode::Greedy {
        spec.require_multiplicative()?;
    }
    let pairs = traffic_pairs(spec, traffic, seed)?;
    let layout = PacketLayout::new(spec);

    let mut in_flight = pairs
        .iter()
        .map(|&(src, dst)| {
            let header = match mode {
                RoutingMode::SourceRouted => {
                    Header::Source(build_packet_with(&layout, spec, src, dst)?)
                }
                RoutingMode::Greedy => Header::Greedy { dst },
            };
            Ok(InFlight {
                src,
                dst,
                at: src,
                hops: 0,
                header,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let budget = spec.n();
    let mut hop_histogram = BTreeMap::new();
    let mut delivered = 0u64;
    let mut hop_sum = 0u64;
    let mut max_hops = 0;
    let mut cycle = 0u64;
    let mut total_cycles = 0u64;
    while !in_flight.is_empty() {
        let mut still = Vec::with_capacity(in_flight.len());
        for mut p in in_flight {
            let arrived = match &mut p.header {
                Header::Source(pkt) => match layout.consume(pkt)? {
                    Step::Delivered => true,
                    Step::Forward(a) => {
                        p.at = spec.apply(p.at, a);
                        false
                    }
                },
                Header::Greedy { dst } => {
                    if p.at == *dst {
                        true
                    } else {
                        p.at = next_hop(spec, p.at, *dst)?.next_node;
                        false
                    }
                }
            };
            if arrived {
                if p.at != p.dst {
                    return Err(Error::Undeliverable {
                        src: p.src,
                        dst: p.dst,
                        at: p.at,
                    });
                }
                *hop_histogram.entry(p.hops).or_insert(0) += 1;
                delivered += 1;
                hop_sum += p.hops as u64;
                max_hops = max_hops.max(p.hops);
                total_cycles = cycle;
                continue;
            }
            p.hops += 1;
            if p.hops > budget {
                return Err(Error::Undeliverable {
                    src: p.src,
                    dst: p.dst,
                    at: p.at,
                });
            }
            still.push(p);
        }
        in_flight = still;
        cycle += 1;
    }

    Ok(SimReport {
        mode,
        injected: pairs.len() as u64,
        delivered,
        hop_histogram,
        avg_hops: if delivered == 0 {
            0.0
        } else {
            hop_sum as f64 / delivered as f64
        },
        max_hops,
        total_cycles,
    })
}
