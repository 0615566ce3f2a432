//! Per-hop generatrix routing for `MC(s, k)`.
//!
//! A router sees only its own id, the destination id and `(s, k)`. It
//! measures the remaining cyclic distance, picks the shorter direction and
//! jumps by whichever of the two generatrices bracketing that distance lies
//! closer to it, overshooting when that is cheaper.

use alloc::vec::Vec;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::metrics::bfs_distances;
use crate::static_route::NodePath;
use crate::topology::{CirculantSpec, Direction, HopAction, NodeId};

/// Largest `n` accepted by [`stretch_report`].
pub const STRETCH_GUARD: usize = 10_000;

/// Most suboptimal pairs kept in [`StretchReport::worst_pairs`].
pub const WORST_PAIRS_LIMIT: usize = 4096;

/// Everything a router computed for one hop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GreedyDecision {
    /// `(dst − current) mod n`.
    pub relative_dest: usize,
    pub direction: Direction,
    /// `min(D, n − D)`.
    pub distance_in_direction: usize,
    /// Largest generatrix not exceeding the distance.
    pub g_lo: usize,
    /// Next larger generatrix, or `g_lo` when there is none.
    pub g_hi: usize,
    pub chosen: usize,
    pub action: HopAction,
    pub next_node: NodeId,
}

/// `(dst − current) mod n`.
pub fn relative_dest(spec: &CirculantSpec, current: NodeId, dst: NodeId) -> Result<usize> {
    spec.check_node(current)?;
    spec.check_node(dst)?;
    Ok((dst + spec.n() - current) % spec.n())
}

pub fn next_hop(spec: &CirculantSpec, current: NodeId, dst: NodeId) -> Result<GreedyDecision> {
    spec.require_multiplicative()?;
    let n = spec.n();
    let d = relative_dest(spec, current, dst)?;
    if d == 0 {
        return Err(Error::SameEndpoints(current));
    }
    let (direction, dd) = if d <= n - d {
        (Direction::Right, d)
    } else {
        (Direction::Left, n - d)
    };

    let gens = spec.generatrices();
    let lo = gens.partition_point(|&g| g <= dd) - 1;
    let (g_lo, g_hi) = (gens[lo], gens[(lo + 1).min(gens.len() - 1)]);
    let idx = select(gens, dd);
    let action = HopAction::new(idx, direction);
    Ok(GreedyDecision {
        relative_dest: d,
        direction,
        distance_in_direction: dd,
        g_lo,
        g_hi,
        chosen: gens[idx],
        action,
        next_node: spec.apply(current, action),
    })
}

/// Index of the generatrix to jump by for a remaining distance `dd ≥ 1`:
/// the closer of the largest generatrix `≤ dd` and the next larger one,
/// ties going to the smaller.
#[inline]
fn select(gens: &[usize], dd: usize) -> usize {
    // gens[0] = 1 <= dd, so lo always exists. A counting scan instead of a
    // binary search keeps this branch-free for the handful of generatrices.
    let lo = gens.iter().map(|&g| usize::from(g <= dd)).sum::<usize>() - 1;
    let hi = (lo + 1).min(gens.len() - 1);
    lo + usize::from(gens[hi].abs_diff(dd) < dd - gens[lo])
}

/// [`next_hop`] reduced to the next node id, for already validated inputs.
#[inline]
fn step(n: usize, gens: &[usize], at: NodeId, dst: NodeId) -> NodeId {
    // Written as selects rather than branches; direction is unpredictable.
    let mut d = dst + n - at;
    if d >= n {
        d -= n;
    }
    let right = d <= n - d;
    let dd = if right { d } else { n - d };
    let g = gens[select(gens, dd)];
    let mut w = at + if right { g } else { n - g };
    if w >= n {
        w -= n;
    }
    w
}

/// Follows [`next_hop`] from `src` until `dst`.
pub fn greedy_path(spec: &CirculantSpec, src: NodeId, dst: NodeId) -> Result<NodePath> {
    spec.require_multiplicative()?;
    spec.check_node(src)?;
    spec.check_node(dst)?;
    let budget = spec.n();
    let mut nodes = alloc::vec![src];
    let mut at = src;
    while at != dst {
        if nodes.len() > budget {
            return Err(Error::HopBudgetExceeded { src, dst, budget });
        }
        at = next_hop(spec, at, dst)?.next_node;
        nodes.push(at);
    }
    Ok(NodePath::new(nodes))
}

/// Hop count of [`greedy_path`] without materialising the path.
pub fn greedy_hops(spec: &CirculantSpec, src: NodeId, dst: NodeId) -> Result<usize> {
    spec.require_multiplicative()?;
    spec.check_node(src)?;
    spec.check_node(dst)?;
    let budget = spec.n();
    let mut hops = 0;
    let mut at = src;
    while at != dst {
        if hops >= budget {
            return Err(Error::HopBudgetExceeded { src, dst, budget });
        }
        at = step(spec.n(), spec.generatrices(), at, dst);
        hops += 1;
    }
    Ok(hops)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairStretch {
    pub src: NodeId,
    pub dst: NodeId,
    pub greedy_hops: usize,
    pub bfs_hops: usize,
    pub stretch: f64,
}

/// Greedy path lengths against true shortest paths over every ordered pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StretchReport {
    pub pairs: u64,
    pub max_stretch: f64,
    pub avg_stretch: f64,
    /// Pairs where greedy is longer than the shortest path.
    pub suboptimal_pairs: u64,
    /// Suboptimal pairs, worst stretch first, at most [`WORST_PAIRS_LIMIT`].
    pub worst_pairs: Vec<PairStretch>,
}

fn sort_worst(pairs: &mut Vec<PairStretch>) {
    pairs.sort_by(|a, b| {
        b.stretch
            .total_cmp(&a.stretch)
            .then(a.src.cmp(&b.src))
            .then(a.dst.cmp(&b.dst))
    });
    pairs.truncate(WORST_PAIRS_LIMIT);
}

pub fn stretch_report(spec: &CirculantSpec) -> Result<StretchReport> {
    spec.require_multiplicative()?;
    let n = spec.n();
    if n > STRETCH_GUARD {
        return Err(Error::TooLarge {
            n,
            limit: STRETCH_GUARD,
        });
    }
    // Distances depend only on dst − src.
    let shortest = bfs_distances(spec, 0)?;
    let mut pairs = 0u64;
    let mut max_stretch = 1.0f64;
    let mut sum = 0.0f64;
    let mut suboptimal_pairs = 0u64;
    let mut worst = Vec::new();
    for src in 0..n {
        for dst in 0..n {
            if src == dst {
                continue;
            }
            let g = greedy_hops(spec, src, dst)?;
            let b = shortest[(dst + n - src) % n] as usize;
            let stretch = g as f64 / b as f64;
            pairs += 1;
            sum += stretch;
            max_stretch = max_stretch.max(stretch);
            if g > b {
                suboptimal_pairs += 1;
                worst.push(PairStretch {
                    src,
                    dst,
                    greedy_hops: g,
                    bfs_hops: b,
                    stretch,
                });
                if worst.len() >= 2 * WORST_PAIRS_LIMIT {
                    sort_worst(&mut worst);
                }
            }
        }
    }
    sort_worst(&mut worst);
    Ok(StretchReport {
        pairs,
        max_stretch,
        avg_stretch: if pairs == 0 { 1.0 } else { sum / pairs as f64 },
        suboptimal_pairs,
        worst_pairs: worst,
    })
}
