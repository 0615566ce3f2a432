//! Distance metrics: brute-force BFS over the circulant, the closed forms for
//! `MC(2, k)` and for the square mesh baseline, and router memory sizing.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::Serialize;

use crate::error::Result;
use crate::topology::{CirculantSpec, NodeId};

/// How brute-force metrics visit source vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sweep {
    /// One BFS from vertex 0; exact because circulants are vertex-transitive.
    #[default]
    SingleSource,
    /// One BFS from every vertex. Used to cross-check the single-source path.
    AllPairs,
}

/// Hop distance from `src` to every vertex, exploring ports in ascending code order.
pub fn bfs_distances(spec: &CirculantSpec, src: NodeId) -> Result<Vec<u32>> {
    spec.check_node(src)?;
    let offsets: Vec<usize> = spec
        .port_table()
        .actions()
        .iter()
        .map(|&a| spec.offset(a))
        .collect();
    let n = spec.n();
    let mut dist = vec![u32::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    dist[src] = 0;
    queue.push_back(src);
    while let Some(v) = queue.pop_front() {
        let next = dist[v] + 1;
        for &off in &offsets {
            let mut u = v + off;
            if u >= n {
                u -= n;
            }
            if dist[u] == u32::MAX {
                dist[u] = next;
                queue.push_back(u);
            }
        }
    }
    Ok(dist)
}

/// Eccentricity maximum and distance sum accumulated over a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct DistanceTotals {
    diameter: u32,
    sum: u128,
    pairs: u128,
}

fn totals(spec: &CirculantSpec, sweep: Sweep) -> DistanceTotals {
    let sources = match sweep {
        Sweep::SingleSource => 0..1,
        Sweep::AllPairs => 0..spec.n(),
    };
    let mut acc = DistanceTotals {
        diameter: 0,
        sum: 0,
        pairs: 0,
    };
    for src in sources {
        let dist = bfs_distances(spec, src).expect("source in range");
        for (v, &d) in dist.iter().enumerate() {
            if v == src {
                continue;
            }
            acc.diameter = acc.diameter.max(d);
            acc.sum += u128::from(d);
            acc.pairs += 1;
        }
    }
    acc
}

pub fn diameter(spec: &CirculantSpec) -> u32 {
    diameter_with(spec, Sweep::SingleSource)
}

pub fn diameter_with(spec: &CirculantSpec, sweep: Sweep) -> u32 {
    totals(spec, sweep).diameter
}

/// Mean hop distance over ordered pairs of distinct vertices.
pub fn average_distance(spec: &CirculantSpec) -> f64 {
    average_distance_with(spec, Sweep::SingleSource)
}

pub fn average_distance_with(spec: &CirculantSpec, sweep: Sweep) -> f64 {
    let t = totals(spec, sweep);
    t.sum as f64 / t.pairs as f64
}

/// `⌈k/2⌉`, the exact diameter of `MC(2, k)`.
pub fn analytic_diameter_mc2(k: usize) -> u32 {
    k.div_ceil(2) as u32
}

/// `k/3`, an approximation of the average distance of `MC(2, k)`.
pub fn analytic_avg_mc2(k: usize) -> f64 {
    k as f64 / 3.0
}

/// `2(√n − 1)` for a square mesh of `n` nodes.
pub fn mesh_diameter(n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    2.0 * (libm::sqrt(n as f64) - 1.0)
}

/// `2(n − 1) / (3√n)` for a square mesh of `n` nodes.
pub fn mesh_avg(n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    2.0 * (n as f64 - 1.0) / (3.0 * libm::sqrt(n as f64))
}

/// One row of the circulant-versus-mesh comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsRow {
    pub spec: String,
    pub n: usize,
    pub diameter_bruteforce: u32,
    pub avg_distance_bruteforce: f64,
    /// Only for `s = 2`.
    pub diameter_analytic: Option<u32>,
    /// Only for `s = 2`.
    pub avg_distance_analytic: Option<f64>,
    pub mesh_diameter: f64,
    pub mesh_avg: f64,
}

pub fn compare_row(spec: &CirculantSpec) -> MetricsRow {
    let t = totals(spec, Sweep::SingleSource);
    let mc2_k = (spec.base() == Some(2)).then(|| spec.k());
    MetricsRow {
        spec: spec.label(),
        n: spec.n(),
        diameter_bruteforce: t.diameter,
        avg_distance_bruteforce: t.sum as f64 / t.pairs as f64,
        diameter_analytic: mc2_k.map(analytic_diameter_mc2),
        avg_distance_analytic: mc2_k.map(analytic_avg_mc2),
        mesh_diameter: mesh_diameter(spec.n()),
        mesh_avg: mesh_avg(spec.n()),
    }
}

/// `⌈log2 x⌉` with `⌈log2 1⌉ = 0`. `x` must be positive.
pub fn ceil_log2(x: u64) -> u32 {
    debug_assert!(x > 0);
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

/// Bits a greedy-routed packet needs to carry its destination id: `⌈log2 n⌉`.
pub fn address_bits(spec: &CirculantSpec) -> u32 {
    ceil_log2(spec.n() as u64)
}

/// Router storage estimate for greedy routing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MemoryEstimate {
    pub per_node_bits: u64,
    /// `M = n · per_node_bits`.
    pub total_bits: u64,
    /// Destination address width `P = ⌈log2 n⌉`.
    pub address_bits: u32,
}

/// Per-router storage
/// `⌈log2 N⌉ + ⌈log2 N⌉ + k(⌈log2 s^(k−1)⌉ + 1) + 3⌈log2 k⌉ + 2`
/// bits, summed over all `N` routers.
pub fn memory_bits(spec: &CirculantSpec) -> Result<MemoryEstimate> {
    let s = spec.require_multiplicative()? as u64;
    let k = spec.k() as u64;
    let n = spec.n() as u64;
    let log_n = u64::from(ceil_log2(n));
    let largest_gen = s.pow(k as u32 - 1);
    let per_node = log_n
        + log_n
        + k * (u64::from(ceil_log2(largest_gen)) + 1)
        + 3 * u64::from(ceil_log2(k))
        + 2;
    Ok(MemoryEstimate {
        per_node_bits: per_node,
        total_bits: n * per_node,
        address_bits: ceil_log2(n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn mc(s: usize, k: usize) -> CirculantSpec {
        CirculantSpec::multiplicative(s, k).unwrap()
    }

    /// Distances by plain relaxation over all edges until fixpoint.
    /// Independent of the queue-based BFS.
    fn relaxation_distances(spec: &CirculantSpec, src: usize) -> Vec<u32> {
        let n = spec.n();
        let mut dist = vec![u32::MAX; n];
        dist[src] = 0;
        loop {
            let mut changed = false;
            for v in 0..n {
                if dist[v] == u32::MAX {
                    continue;
                }
                for &g in spec.generatrices() {
                    for u in [(v + g) % n, (v + n - g) % n] {
                        if dist[v] + 1 < dist[u] {
                            dist[u] = dist[v] + 1;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                return dist;
            }
        }
    }

    #[test]
    fn bfs_examples() {
        let d = bfs_distances(&mc(2, 4), 0).unwrap();
        assert_eq!(d[0], 0);
        assert_eq!(d[8], 1);
        assert_eq!(d[3], 2);
        let d = bfs_distances(&mc(4, 3), 5).unwrap();
        assert_eq!(d[5], 0);
        assert_eq!(d[17], 2);
        assert_eq!(
            bfs_distances(&mc(4, 3), 64),
            Err(Error::NodeOutOfRange { node: 64, n: 64 })
        );
    }

    #[test]
    fn bfs_agrees_with_relaxation() {
        for (s, k) in [(2, 5), (3, 3), (4, 3), (5, 2), (7, 2)] {
            let spec = mc(s, k);
            for src in [0, 1, spec.n() - 1] {
                assert_eq!(
                    bfs_distances(&spec, src).unwrap(),
                    relaxation_distances(&spec, src)
                );
            }
        }
        let general = CirculantSpec::circulant(13, &[2, 5]).unwrap();
        assert_eq!(
            bfs_distances(&general, 4).unwrap(),
            relaxation_distances(&general, 4)
        );
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(diameter(&mc(2, 4)), 2);
        assert_eq!(diameter(&mc(7, 4)), 12);
        for s in 3..12 {
            assert_eq!(diameter(&mc(s, 1)), (s / 2) as u32);
        }
    }

    #[test]
    fn average_distance_examples() {
        assert!((average_distance(&mc(2, 4)) - 23.0 / 15.0).abs() < 1e-12);
        assert!((average_distance(&mc(5, 1)) - 1.5).abs() < 1e-12);
    }

    #[test]
    fn ring_average_matches_closed_form() {
        for n in 3..60usize {
            let ring = mc(n, 1);
            let nf = n as f64;
            let expected = if n % 2 == 0 {
                (nf * nf / 4.0) / (nf - 1.0)
            } else {
                (nf * nf - 1.0) / (4.0 * (nf - 1.0))
            };
            assert!((average_distance(&ring) - expected).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn single_source_matches_all_pairs() {
        for (s, k) in [(2, 6), (3, 4), (4, 3), (5, 3)] {
            let spec = mc(s, k);
            assert_eq!(
                totals(&spec, Sweep::SingleSource).diameter,
                totals(&spec, Sweep::AllPairs).diameter
            );
            let a = average_distance_with(&spec, Sweep::SingleSource);
            let b = average_distance_with(&spec, Sweep::AllPairs);
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn analytic_mc2() {
        assert_eq!(analytic_diameter_mc2(4), 2);
        assert_eq!(analytic_diameter_mc2(6), 3);
        assert_eq!(analytic_diameter_mc2(1), 1);
        assert!((analytic_avg_mc2(4) - 1.3333333333).abs() < 1e-9);
        assert_eq!(analytic_avg_mc2(6), 2.0);
        assert_eq!(analytic_avg_mc2(3), 1.0);
    }

    #[test]
    fn mesh_formulas() {
        assert_eq!(mesh_diameter(16), 6.0);
        assert_eq!(mesh_avg(16), 2.5);
        assert_eq!(mesh_diameter(64), 14.0);
        assert_eq!(mesh_avg(64), 5.25);
        assert_eq!(mesh_diameter(1), 0.0);
        assert_eq!(mesh_avg(1), 0.0);
    }

    #[test]
    fn compare_rows() {
        let row = compare_row(&mc(2, 6));
        assert_eq!(row.spec, "MC(2,6)");
        assert_eq!(row.diameter_bruteforce, 3);
        assert_eq!(row.diameter_analytic, Some(3));
        assert_eq!(row.avg_distance_analytic, Some(2.0));
        assert_eq!(row.mesh_diameter, 14.0);

        let row = compare_row(&mc(4, 3));
        assert_eq!(row.diameter_analytic, None);
        assert_eq!(row.avg_distance_analytic, None);
        assert!(row.diameter_bruteforce as f64 >= row.avg_distance_bruteforce);
        assert!(row.avg_distance_bruteforce >= 1.0);
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(8), 3);
        assert_eq!(ceil_log2(9), 4);
        assert_eq!(ceil_log2(1 << 40), 40);
        assert_eq!(ceil_log2((1 << 40) + 1), 41);
    }

    #[test]
    fn memory_examples() {
        // 4 + 4 + 4·(3 + 1) + 3·2 + 2
        let m = memory_bits(&mc(2, 4)).unwrap();
        assert_eq!(m.per_node_bits, 32);
        assert_eq!(m.total_bits, 512);
        assert_eq!(m.address_bits, 4);
        // 4 + 4 + 2·(2 + 1) + 3·1 + 2
        let m = memory_bits(&mc(3, 2)).unwrap();
        assert_eq!(m.per_node_bits, 19);
        assert_eq!(m.total_bits, 171);
        assert_eq!(m.address_bits, 4);
        assert_eq!(memory_bits(&mc(4, 3)).unwrap().address_bits, 6);
        // k = 1: ⌈log2 1⌉ = 0 twice.
        let m = memory_bits(&mc(5, 1)).unwrap();
        assert_eq!(m.per_node_bits, 3 + 3 + 1 + 2);

        let general = CirculantSpec::circulant(10, &[1, 3]).unwrap();
        assert_eq!(memory_bits(&general), Err(Error::NotMultiplicative));
    }
}
