//! Core model of networks-on-chip built on multiplicative circulants `MC(s, k)`.
//!
//! Everything here is `no_std` + `alloc`: topology construction, brute-force and
//! closed-form metrics, BFS source routing with port-coded packets, the per-hop
//! greedy generatrix router, and a contention-free forwarding simulator.
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod error;
pub mod greedy;
pub mod metrics;
pub mod sim;
pub mod static_route;
pub mod topology;

pub use error::Error;
pub use greedy::{
    greedy_path, next_hop, relative_dest, stretch_report, GreedyDecision, StretchReport,
};
pub use metrics::{MemoryEstimate, MetricsRow, Sweep};
pub use sim::{RoutingMode, SimReport, TrafficPattern};
pub use static_route::{NodePath, PacketLayout, SourceRoutedPacket, Step};
pub use topology::{CirculantSpec, Direction, HopAction, NodeId, PortCode, PortTable};
