//! Static source routing.
//!
//! The source router finds a shortest path by BFS, turns it into a sequence of
//! output-port codes and packs them into the packet's path field: hop `i`
//! occupies bits `[i·B, (i+1)·B)`, least significant first. Every router on
//! the way reads the low `B` bits, shifts the field right by `B` and forwards
//! through that port. An all-zero field means the packet has arrived.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::metrics::{ceil_log2, diameter};
use crate::topology::{CirculantSpec, HopAction, NodeId, PortCode, PortTable};

/// Vertex sequence from source to destination, both included.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodePath(Vec<NodeId>);

impl NodePath {
    pub fn new(nodes: Vec<NodeId>) -> Self {
        debug_assert!(!nodes.is_empty());
        NodePath(nodes)
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.0
    }

    pub fn hops(&self) -> usize {
        self.0.len() - 1
    }

    pub fn source(&self) -> NodeId {
        self.0[0]
    }

    pub fn destination(&self) -> NodeId {
        *self.0.last().expect("non-empty path")
    }

    pub fn into_vec(self) -> Vec<NodeId> {
        self.0
    }
}

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// BFS shortest path. Neighbours are explored in ascending port-code order and
/// the first predecessor found is kept, so the result is reproducible.
pub fn shortest_path(spec: &CirculantSpec, src: NodeId, dst: NodeId) -> Result<NodePath> {
    spec.check_node(src)?;
    spec.check_node(dst)?;
    if src == dst {
        return Ok(NodePath(vec![src]));
    }
    let n = spec.n();
    let offsets: Vec<usize> = spec
        .port_table()
        .actions()
        .iter()
        .map(|&a| spec.offset(a))
        .collect();
    let mut pred = vec![usize::MAX; n];
    pred[src] = src;
    let mut queue = VecDeque::with_capacity(n);
    queue.push_back(src);
    'search: while let Some(v) = queue.pop_front() {
        for &off in &offsets {
            let mut u = v + off;
            if u >= n {
                u -= n;
            }
            if pred[u] == usize::MAX {
                pred[u] = v;
                if u == dst {
                    break 'search;
                }
                queue.push_back(u);
            }
        }
    }
    let mut nodes = vec![dst];
    let mut v = dst;
    while v != src {
        v = pred[v];
        nodes.push(v);
    }
    nodes.reverse();
    Ok(NodePath(nodes))
}

/// One action per edge of `path`.
pub fn path_to_actions(spec: &CirculantSpec, path: &NodePath) -> Result<Vec<HopAction>> {
    path.nodes()
        .windows(2)
        .map(|w| spec.action_between(w[0], w[1]))
        .collect()
}

/// Fixed-width little-endian bit string holding the port codes of a route.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathField {
    words: Vec<u64>,
    width: usize,
}

impl PathField {
    pub fn zeroed(width: usize) -> Self {
        PathField {
            words: vec![0; width.div_ceil(64).max(1)],
            width,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Reads `len ≤ 32` bits starting at bit `offset`.
    pub fn get(&self, offset: usize, len: u32) -> u32 {
        let mut out = 0u32;
        for b in 0..len as usize {
            let bit = offset + b;
            if bit < self.width && (self.words[bit / 64] >> (bit % 64)) & 1 == 1 {
                out |= 1 << b;
            }
        }
        out
    }

    /// Writes the low `len` bits of `value` at bit `offset`. The range must fit the width.
    pub fn set(&mut self, offset: usize, len: u32, value: u32) {
        debug_assert!(offset + len as usize <= self.width);
        for b in 0..len as usize {
            let bit = offset + b;
            let mask = 1u64 << (bit % 64);
            if (value >> b) & 1 == 1 {
                self.words[bit / 64] |= mask;
            } else {
                self.words[bit / 64] &= !mask;
            }
        }
    }

    /// Logical shift right by `by < 64` bits; zeros enter at the top.
    pub fn shift_right(&mut self, by: u32) {
        debug_assert!(by < 64);
        if by == 0 {
            return;
        }
        for i in 0..self.words.len() {
            let hi = self.words.get(i + 1).copied().unwrap_or(0);
            self.words[i] = (self.words[i] >> by) | (hi << (64 - by));
        }
    }

    /// Low 64 bits, convenient for small fields and tests.
    pub fn low_word(&self) -> u64 {
        self.words[0]
    }
}

/// A packet whose header carries its whole route as port codes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SourceRoutedPacket {
    pub dst: NodeId,
    pub path_field: PathField,
    pub bits_per_hop: u32,
    /// Hops written at the source. Not decremented as hops are consumed.
    pub hops_encoded: usize,
}

impl SourceRoutedPacket {
    pub fn is_delivered(&self) -> bool {
        self.path_field.is_zero()
    }

    /// Capacity of the path field in hops.
    pub fn max_hops(&self) -> usize {
        self.path_field.width() / self.bits_per_hop as usize
    }

    /// Groups of `B` bits joined by `|`, most significant hop first, one group
    /// per encoded hop (at least one).
    pub fn render_bits(&self) -> String {
        let groups = self.hops_encoded.max(1);
        let b = self.bits_per_hop;
        let mut out = String::new();
        for g in (0..groups).rev() {
            let code = self.path_field.get(g * b as usize, b);
            for bit in (0..b).rev() {
                out.push(if (code >> bit) & 1 == 1 { '1' } else { '0' });
            }
            if g > 0 {
                out.push('|');
            }
        }
        out
    }
}

impl fmt::Display for SourceRoutedPacket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "dst={} path={}", self.dst, self.render_bits())
    }
}

/// What a router does with a source-routed packet it holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Forward(HopAction),
    Delivered,
}

/// Field geometry shared by every packet of a topology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PacketLayout {
    ports: PortTable,
    bits_per_hop: u32,
    max_hops: usize,
}

impl PacketLayout {
    /// Capacity equal to the diameter, which every shortest path fits.
    pub fn new(spec: &CirculantSpec) -> Self {
        Self::with_max_hops(spec, diameter(spec) as usize)
    }

    pub fn with_max_hops(spec: &CirculantSpec, max_hops: usize) -> Self {
        let ports = spec.port_table();
        // Code 0 is the terminator, hence port_count + 1 symbols.
        let bits_per_hop = ceil_log2(ports.len() as u64 + 1);
        PacketLayout {
            ports,
            bits_per_hop,
            max_hops,
        }
    }

    pub fn bits_per_hop(&self) -> u32 {
        self.bits_per_hop
    }

    pub fn max_hops(&self) -> usize {
        self.max_hops
    }

    pub fn width(&self) -> usize {
        self.max_hops * self.bits_per_hop as usize
    }

    pub fn port_count(&self) -> usize {
        self.ports.len()
    }

    pub fn ports(&self) -> &PortTable {
        &self.ports
    }

    pub fn encode(&self, dst: NodeId, actions: &[HopAction]) -> Result<SourceRoutedPacket> {
        if actions.len() > self.max_hops {
            return Err(Error::PathTooLong {
                hops: actions.len(),
                max: self.max_hops,
            });
        }
        let mut field = PathField::zeroed(self.width());
        for (i, &a) in actions.iter().enumerate() {
            let code = self
                .ports
                .code(a)
                .expect("every action of the spec has a port code");
            field.set(
                i * self.bits_per_hop as usize,
                self.bits_per_hop,
                code.get(),
            );
        }
        Ok(SourceRoutedPacket {
            dst,
            path_field: field,
            bits_per_hop: self.bits_per_hop,
            hops_encoded: actions.len(),
        })
    }

    /// Reads and strips the next port code.
    pub fn consume(&self, packet: &mut SourceRoutedPacket) -> Result<Step> {
        if packet.path_field.is_zero() {
            return Ok(Step::Delivered);
        }
        let raw = packet.path_field.get(0, packet.bits_per_hop);
        let action = PortCode::new(raw)
            .and_then(|c| self.ports.action(c))
            .ok_or(Error::CorruptPacket {
                code: raw,
                port_count: self.ports.len() as u32,
            })?;
        packet.path_field.shift_right(packet.bits_per_hop);
        Ok(Step::Forward(action))
    }
}

/// Encodes `actions` with the default layout of `spec`.
pub fn encode_path(
    spec: &CirculantSpec,
    dst: NodeId,
    actions: &[HopAction],
) -> Result<SourceRoutedPacket> {
    PacketLayout::new(spec).encode(dst, actions)
}

pub fn consume_step(spec: &CirculantSpec, packet: &mut SourceRoutedPacket) -> Result<Step> {
    PacketLayout::with_max_hops(spec, packet.max_hops()).consume(packet)
}

/// BFS, reverse into actions, encode.
pub fn build_packet(spec: &CirculantSpec, src: NodeId, dst: NodeId) -> Result<SourceRoutedPacket> {
    build_packet_with(&PacketLayout::new(spec), spec, src, dst)
}

pub fn build_packet_with(
    layout: &PacketLayout,
    spec: &CirculantSpec,
    src: NodeId,
    dst: NodeId,
) -> Result<SourceRoutedPacket> {
    let path = shortest_path(spec, src, dst)?;
    let actions = path_to_actions(spec, &path)?;
    layout.encode(dst, &actions)
}
