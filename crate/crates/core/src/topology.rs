//! Circulant graphs `C(n; g_1, ..., g_k)` and the multiplicative family
//! `MC(s, k) = C(s^k; 1, s, ..., s^(k-1))`.
//!
//! Vertices are `0..n`. Vertex `i` is adjacent to `i ± g (mod n)` for every
//! generatrix `g`. A generatrix with `2g = n` (the last one of `MC(2, k)`)
//! reaches the same vertex in both directions and owns a single port.

use alloc::vec::Vec;
use core::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub type NodeId = usize;

/// Which way around the ring a hop goes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Subtract the generatrix.
    Left,
    /// Add the generatrix.
    Right,
}

impl Direction {
    pub fn sign(self) -> i8 {
        match self {
            Direction::Left => -1,
            Direction::Right => 1,
        }
    }

    pub fn reversed(self) -> Direction {
        match self {
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
        }
    }
}

/// One edge traversal: generatrix `generatrices[gen_index]` in `direction`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct HopAction {
    pub gen_index: usize,
    pub direction: Direction,
}

impl HopAction {
    pub fn new(gen_index: usize, direction: Direction) -> Self {
        HopAction {
            gen_index,
            direction,
        }
    }

    pub fn left(gen_index: usize) -> Self {
        HopAction::new(gen_index, Direction::Left)
    }

    pub fn right(gen_index: usize) -> Self {
        HopAction::new(gen_index, Direction::Right)
    }

    pub fn reversed(self) -> Self {
        HopAction::new(self.gen_index, self.direction.reversed())
    }
}

/// Output port number of a router. Zero is reserved as the path terminator,
/// so valid codes start at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PortCode(u32);

impl PortCode {
    pub const TERMINATOR: u32 = 0;

    pub fn new(code: u32) -> Option<Self> {
        (code != Self::TERMINATOR).then_some(PortCode(code))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for PortCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A validated circulant topology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirculantSpec {
    n: usize,
    generatrices: Vec<usize>,
    /// `Some(s)` when the generatrices are exactly `1, s, ..., s^(k-1)` and `n = s^k`.
    base: Option<usize>,
}

impl CirculantSpec {
    /// Builds `MC(s, k)`.
    pub fn multiplicative(s: usize, k: usize) -> Result<Self> {
        if s < 2 {
            return Err(Error::BaseTooSmall(s));
        }
        if k < 1 {
            return Err(Error::DimensionTooSmall(k));
        }
        let exp = u32::try_from(k).map_err(|_| Error::OrderOverflow { s, k })?;
        let n = s.checked_pow(exp).ok_or(Error::OrderOverflow { s, k })?;
        if n < 3 {
            return Err(Error::OrderTooSmall(n));
        }
        let mut generatrices = Vec::with_capacity(k);
        let mut g = 1;
        for _ in 0..k {
            generatrices.push(g);
            g *= s;
        }
        Ok(CirculantSpec {
            n,
            generatrices,
            base: Some(s),
        })
    }

    /// Builds a general circulant and recognises the `MC(s, k)` pattern when present.
    pub fn circulant(n: usize, gens: &[usize]) -> Result<Self> {
        if n < 3 {
            return Err(Error::OrderTooSmall(n));
        }
        if gens.is_empty() {
            return Err(Error::NoGeneratrices);
        }
        let max = n / 2;
        for &g in gens {
            if g < 1 || g > max {
                return Err(Error::GeneratrixOutOfRange { gen: g, max });
            }
        }
        for w in gens.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::GeneratricesNotIncreasing {
                    prev: w[0],
                    next: w[1],
                });
            }
        }
        let g = gens.iter().fold(n, |acc, &x| gcd(acc, x));
        if g != 1 {
            return Err(Error::Disconnected(g));
        }
        Ok(CirculantSpec {
            n,
            generatrices: gens.to_vec(),
            base: detect_base(n, gens),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of generatrices.
    pub fn k(&self) -> usize {
        self.generatrices.len()
    }

    /// The base `s` for multiplicative specs.
    pub fn base(&self) -> Option<usize> {
        self.base
    }

    pub fn generatrices(&self) -> &[usize] {
        &self.generatrices
    }

    pub fn is_multiplicative(&self) -> bool {
        self.base.is_some()
    }

    /// Returns `s` or fails with [`Error::NotMultiplicative`].
    pub fn require_multiplicative(&self) -> Result<usize> {
        self.base.ok_or(Error::NotMultiplicative)
    }

    /// `MC(s,k)` or `C(n; g1,...)`.
    pub fn label(&self) -> alloc::string::String {
        use alloc::string::ToString;
        match self.base {
            Some(s) => alloc::format!("MC({},{})", s, self.k()),
            None => {
                let gens: Vec<_> = self.generatrices.iter().map(|g| g.to_string()).collect();
                alloc::format!("C({};{})", self.n, gens.join(","))
            }
        }
    }

    /// True when both directions of this generatrix reach the same vertex.
    pub fn is_diametral(&self, gen_index: usize) -> bool {
        2 * self.generatrices[gen_index] == self.n
    }

    pub fn port_count(&self) -> usize {
        (0..self.k())
            .map(|j| if self.is_diametral(j) { 1 } else { 2 })
            .sum()
    }

    pub fn check_node(&self, v: NodeId) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { node: v, n: self.n })
        }
    }

    /// Forward offset in `0..n` that `action` adds to a node id.
    pub fn offset(&self, action: HopAction) -> usize {
        let g = self.generatrices[action.gen_index];
        match action.direction {
            Direction::Right => g,
            Direction::Left => self.n - g,
        }
    }

    /// `(v ± g) mod n`. `v` must already be in range.
    pub fn apply(&self, v: NodeId, action: HopAction) -> NodeId {
        let w = v + self.offset(action);
        if w >= self.n {
            w - self.n
        } else {
            w
        }
    }

    pub fn port_table(&self) -> PortTable {
        PortTable::new(self)
    }

    /// Distinct neighbours of `v`, in ascending port-code order.
    pub fn neighbors(&self, v: NodeId) -> Result<Vec<(NodeId, HopAction)>> {
        self.check_node(v)?;
        Ok(self
            .port_table()
            .actions()
            .iter()
            .map(|&a| (self.apply(v, a), a))
            .collect())
    }

    /// The canonical action taking `from` to `to`, if they are adjacent.
    pub fn action_between(&self, from: NodeId, to: NodeId) -> Result<HopAction> {
        self.check_node(from)?;
        self.check_node(to)?;
        let d = (to + self.n - from) % self.n;
        for (j, &g) in self.generatrices.iter().enumerate() {
            // Checked first so a diametral generatrix resolves to "right".
            if d == g {
                return Ok(HopAction::right(j));
            }
            if d == self.n - g {
                return Ok(HopAction::left(j));
            }
        }
        Err(Error::NotAdjacent { from, to })
    }

    /// Canonical form of an action: diametral hops are always [`Direction::Right`].
    pub fn canonical(&self, action: HopAction) -> HopAction {
        if self.is_diametral(action.gen_index) {
            HopAction::right(action.gen_index)
        } else {
            action
        }
    }
}

impl fmt::Display for CirculantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn detect_base(n: usize, gens: &[usize]) -> Option<usize> {
    if gens[0] != 1 {
        return None;
    }
    let s = if gens.len() == 1 { n } else { gens[1] };
    if s < 2 {
        return None;
    }
    let mut g = 1usize;
    for &x in gens {
        if x != g {
            return None;
        }
        g = g.checked_mul(s)?;
    }
    (g == n).then_some(s)
}

/// Bijection between port codes `1..=port_count` and hop actions.
///
/// Codes run from the largest generatrix to the smallest, left before right:
/// `-s^(k-1) -> 1`, `+s^(k-1) -> 2`, `-s^(k-2) -> 3`, ... A diametral
/// generatrix takes a single code and numbering continues after it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PortTable {
    actions: Vec<HopAction>,
    diametral: Option<usize>,
}

impl PortTable {
    fn new(spec: &CirculantSpec) -> Self {
        let mut actions = Vec::with_capacity(2 * spec.k());
        let mut diametral = None;
        for j in (0..spec.k()).rev() {
            if spec.is_diametral(j) {
                diametral = Some(j);
                actions.push(HopAction::right(j));
            } else {
                actions.push(HopAction::left(j));
                actions.push(HopAction::right(j));
            }
        }
        PortTable { actions, diametral }
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    /// Actions indexed by `code - 1`.
    pub fn actions(&self) -> &[HopAction] {
        &self.actions
    }

    pub fn action(&self, code: PortCode) -> Option<HopAction> {
        self.actions.get(code.get() as usize - 1).copied()
    }

    pub fn code(&self, action: HopAction) -> Option<PortCode> {
        let action = if Some(action.gen_index) == self.diametral {
            HopAction::right(action.gen_index)
        } else {
            action
        };
        self.actions
            .iter()
            .position(|&a| a == action)
            .map(|i| PortCode(i as u32 + 1))
    }

    pub fn iter(&self) -> impl Iterator<Item = (PortCode, HopAction)> + '_ {
        self.actions
            .iter()
            .enumerate()
            .map(|(i, &a)| (PortCode(i as u32 + 1), a))
    }
}
