//! Wall-clock cost of computing a route for every ordered pair of nodes.

use std::hint::black_box;
use std::time::{Duration, Instant};

use mcnoc_core::greedy::greedy_hops;
use mcnoc_core::static_route::shortest_path;
use mcnoc_core::{CirculantSpec, Error};

/// Largest `n` a sweep will accept.
pub const BENCH_GUARD: usize = 10_000;

/// Shortest timed batch; sweeps faster than this are repeated inside one sample.
const MIN_SAMPLE: Duration = Duration::from_millis(2);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RouteAlgo {
    /// A fresh BFS per pair, nothing cached between pairs.
    Bfs,
    /// Greedy next-hop iteration per pair.
    Greedy,
}

/// Computes one route per ordered pair and returns the summed hop count.
pub fn sweep(spec: &CirculantSpec, algo: RouteAlgo) -> Result<u64, Error> {
    let n = spec.n();
    if n > BENCH_GUARD {
        return Err(Error::TooLarge {
            n,
            limit: BENCH_GUARD,
        });
    }
    if algo == RouteAlgo::Greedy {
        spec.require_multiplicative()?;
    }
    let mut total = 0u64;
    for src in 0..n {
        for dst in 0..n {
            if src == dst {
                continue;
            }
            let hops = match algo {
                RouteAlgo::Bfs => shortest_path(spec, black_box(src), black_box(dst))?.hops(),
                RouteAlgo::Greedy => greedy_hops(spec, black_box(src), black_box(dst))?,
            };
            total += hops as u64;
        }
    }
    Ok(total)
}

/// Median seconds per all-pairs sweep over `repeat` samples.
pub fn bench_route_computation(
    spec: &CirculantSpec,
    algo: RouteAlgo,
    repeat: usize,
) -> Result<f64, Error> {
    let start = Instant::now();
    black_box(sweep(spec, algo)?);
    let once = start.elapsed().max(Duration::from_nanos(1));
    let batch = (MIN_SAMPLE.as_nanos() / once.as_nanos()).max(1) as u32;

    let mut samples = Vec::with_capacity(repeat.max(1));
    for _ in 0..repeat.max(1) {
        let start = Instant::now();
        for _ in 0..batch {
            black_box(sweep(spec, algo)?);
        }
        samples.push(start.elapsed().as_secs_f64() / f64::from(batch));
    }
    samples.sort_by(f64::total_cmp);
    let mid = samples.len() / 2;
    Ok(if samples.len() % 2 == 1 {
        samples[mid]
    } else {
        (samples[mid - 1] + samples[mid]) / 2.0
    })
}

/// One row shaped like the BFS-versus-greedy timing table.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct BenchRow {
    pub spec: String,
    pub n: usize,
    pub bfs_seconds: f64,
    pub greedy_seconds: f64,
}

impl BenchRow {
    pub fn ratio(&self) -> f64 {
        self.bfs_seconds / self.greedy_seconds
    }
}

pub fn bench_row(spec: &CirculantSpec, repeat: usize) -> Result<BenchRow, Error> {
    Ok(BenchRow {
        spec: spec.label(),
        n: spec.n(),
        bfs_seconds: bench_route_computation(spec, RouteAlgo::Bfs, repeat)?,
        greedy_seconds: bench_route_computation(spec, RouteAlgo::Greedy, repeat)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_sweeps_agree_on_total_hops() {
        let spec = CirculantSpec::multiplicative(2, 4).unwrap();
        assert_eq!(
            sweep(&spec, RouteAlgo::Bfs),
            sweep(&spec, RouteAlgo::Greedy)
        );
        // 16 sources × (7·1 + 8·2)
        assert_eq!(sweep(&spec, RouteAlgo::Bfs), Ok(16 * 23));
    }

    #[test]
    fn guard_and_family_checks() {
        let big = CirculantSpec::multiplicative(101, 2).unwrap();
        assert!(matches!(
            sweep(&big, RouteAlgo::Greedy),
            Err(Error::TooLarge { .. })
        ));
        let general = CirculantSpec::circulant(10, &[1, 3]).unwrap();
        assert_eq!(
            sweep(&general, RouteAlgo::Greedy),
            Err(Error::NotMultiplicative)
        );
        assert!(sweep(&general, RouteAlgo::Bfs).is_ok());
    }

    #[test]
    fn tiny_instance_completes() {
        let spec = CirculantSpec::multiplicative(2, 4).unwrap();
        let row = bench_row(&spec, 3).unwrap();
        assert!(row.bfs_seconds > 0.0 && row.greedy_seconds > 0.0);
    }
}
