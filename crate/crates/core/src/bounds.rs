//! Analytical lower and upper bounds on wavelength and ADM counts.
//!
//! All loads are taken over the post-split traffic. Node totals count only
//! traffic that originates or terminates at a node; transit traffic is
//! bypassed optically and does not touch the node's ADMs.

use serde::{Deserialize, Serialize};

use crate::topology::{Direction, LinkId, NodeId, Topology, TopologyKind};
use crate::traffic::{demand_pair, TrafficSet};

/// Summed demand per link, direction and pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkLoads {
    patterns: usize,
    /// `[(link * 2 + direction) * patterns + m]`
    load: Vec<u64>,
}

impl LinkLoads {
    pub fn link_count(&self) -> usize {
        self.load.len() / (2 * self.patterns)
    }

    pub fn per_pattern(&self, link: LinkId, direction: Direction, pattern: usize) -> u64 {
        self.load[(link * 2 + direction.index()) * self.patterns + pattern]
    }

    /// Maximum over patterns.
    pub fn peak(&self, link: LinkId, direction: Direction) -> u64 {
        (0..self.patterns)
            .map(|m| self.per_pattern(link, direction, m))
            .max()
            .unwrap_or(0)
    }

    /// Direction-1 (parent to child) peak.
    pub fn down(&self, link: LinkId) -> u64 {
        self.peak(link, Direction::ParentToChild)
    }

    /// Direction-2 (child to parent) peak.
    pub fn up(&self, link: LinkId) -> u64 {
        self.peak(link, Direction::ChildToParent)
    }
}

pub fn link_loads(traffic: &TrafficSet, topology: &Topology) -> LinkLoads {
    let n = traffic.node_count();
    let patterns = traffic.pattern_count();
    let mut load = vec![0u64; 2 * topology.link_count() * patterns];
    for d in 0..traffic.demand_count() {
        let (src, dst) = demand_pair(n, d);
        if traffic.peak(d) == 0 {
            continue;
        }
        let route = topology.route(src, dst).expect("distinct endpoints");
        for hop in &route.hops {
            let base = (hop.link * 2 + hop.direction.index()) * patterns;
            for m in 0..patterns {
                load[base + m] += u64::from(traffic.get(m, src, dst));
            }
        }
    }
    LinkLoads { patterns, load }
}

/// Terminated (`sigma`) and originated (`tau`) traffic per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeTotals {
    pub sigma_per_pattern: Vec<Vec<u64>>,
    pub tau_per_pattern: Vec<Vec<u64>>,
    /// Peak over patterns of traffic dropped at each node.
    pub sigma: Vec<u64>,
    /// Peak over patterns of traffic added at each node.
    pub tau: Vec<u64>,
}

impl NodeTotals {
    pub fn peak(&self, v: NodeId) -> u64 {
        self.sigma[v].max(self.tau[v])
    }
}

pub fn node_totals(traffic: &TrafficSet) -> NodeTotals {
    let n = traffic.node_count();
    let mut sigma_per_pattern = Vec::with_capacity(traffic.pattern_count());
    let mut tau_per_pattern = Vec::with_capacity(traffic.pattern_count());
    for m in 0..traffic.pattern_count() {
        let mut sigma = vec![0u64; n];
        let mut tau = vec![0u64; n];
        for i in 0..n {
            for j in 0..n {
                let r = u64::from(traffic.get(m, i, j));
                tau[i] += r;
                sigma[j] += r;
            }
        }
        sigma_per_pattern.push(sigma);
        tau_per_pattern.push(tau);
    }
    let peak = |per: &[Vec<u64>], v: usize| per.iter().map(|p| p[v]).max().unwrap_or(0);
    NodeTotals {
        sigma: (0..n).map(|v| peak(&sigma_per_pattern, v)).collect(),
        tau: (0..n).map(|v| peak(&tau_per_pattern, v)).collect(),
        sigma_per_pattern,
        tau_per_pattern,
    }
}

fn ceil_div(a: u64, g: u32) -> usize {
    a.div_ceil(u64::from(g)) as usize
}

/// Wavelength lower bound: every link direction needs `ceil(L/g)`
/// wavelengths and every internal node needs `ceil(max(sigma, tau)/g)`
/// ADMs, each on a distinct wavelength.
pub fn w_min(traffic: &TrafficSet, topology: &Topology) -> usize {
    let g = traffic.granularity();
    let loads = link_loads(traffic, topology);
    let totals = node_totals(traffic);
    let link_term = (0..topology.link_count())
        .flat_map(|l| [loads.down(l), loads.up(l)])
        .map(|load| ceil_div(load, g))
        .max()
        .unwrap_or(0);
    let node_term = (0..topology.node_count())
        .filter(|&v| topology.is_internal(v))
        .map(|v| ceil_div(totals.peak(v), g))
        .max()
        .unwrap_or(0);
    link_term.max(node_term)
}

/// ADM lower bound: each node needs `ceil(max(sigma, tau)/g)` ADMs.
pub fn m_min(traffic: &TrafficSet) -> usize {
    let g = traffic.granularity();
    let totals = node_totals(traffic);
    (0..traffic.node_count())
        .map(|v| ceil_div(totals.peak(v), g))
        .sum()
}

/// Calls (nonzero in some pattern) per link direction, maximized. One
/// wavelength per call on the busiest fiber always suffices.
pub fn w_max_generic(traffic: &TrafficSet, topology: &Topology) -> usize {
    let n = traffic.node_count();
    let mut calls = vec![0usize; 2 * topology.link_count()];
    for d in 0..traffic.demand_count() {
        if traffic.peak(d) == 0 {
            continue;
        }
        let (src, dst) = demand_pair(n, d);
        for hop in topology.route(src, dst).expect("distinct endpoints").hops {
            calls[hop.link * 2 + hop.direction.index()] += 1;
        }
    }
    calls.into_iter().max().unwrap_or(0)
}

/// Closed-form upper bound for a tree whose `n - 1` non-root nodes are
/// spread as evenly as possible over `k` root branches. The largest branch
/// has `b = ceil((n-1)/k)` nodes and its uplink carries `b * (n - b)` calls
/// per direction.
pub fn w_max_tree(n: usize, k: usize) -> usize {
    assert!(k >= 1, "a tree root has at least one branch");
    let b = (n - 1).div_ceil(k);
    (n - b) * b
}

pub fn w_max_binary(n: usize) -> usize {
    if n % 2 == 1 {
        (n * n - 1) / 4
    } else {
        n * n / 4
    }
}

pub fn w_max_star(n: usize) -> usize {
    n - 1
}

/// Star-specific wavelength lower bound: every leaf's add/drop volume is
/// its link load, and the hub is bounded by its own totals.
pub fn w_min_star(traffic: &TrafficSet) -> usize {
    let g = traffic.granularity();
    let totals = node_totals(traffic);
    (0..traffic.node_count())
        .map(|v| ceil_div(totals.peak(v), g))
        .max()
        .unwrap_or(0)
}

/// ADM upper bound. Stars: every node on each of the `W'_min`
/// wavelengths. Trees: the smaller of dedicated pairs and dropping every
/// node on `W_min` wavelengths.
pub fn m_max(traffic: &TrafficSet, topology: &Topology) -> usize {
    m_max_with_method(traffic, topology).0
}

fn m_max_with_method(traffic: &TrafficSet, topology: &Topology) -> (usize, BoundMethod) {
    let n = traffic.node_count();
    if topology.kind() == TopologyKind::Star {
        return (n * w_min_star(traffic), BoundMethod::StarAllNodes);
    }
    let dedicated = n * (n - 1);
    let all_nodes = n * w_min(traffic, topology);
    if all_nodes <= dedicated {
        (all_nodes, BoundMethod::AllNodesOnMinWavelengths)
    } else {
        (dedicated, BoundMethod::DedicatedPairs)
    }
}

/// Which formula produced a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMethod {
    /// Link loads and internal-node add/drop totals.
    LinkAndNodeLoad,
    /// Leaf and hub totals of a star.
    StarNodeLoad,
    /// Per-node add/drop totals.
    NodeTotals,
    /// Busiest fiber's call count.
    CallCount,
    /// Evenly split k-branch tree.
    BranchTree,
    BinaryTree,
    Star,
    StarAllNodes,
    AllNodesOnMinWavelengths,
    DedicatedPairs,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundsReport {
    pub w_min: usize,
    pub m_min: usize,
    pub w_max: usize,
    pub m_max: usize,
    pub w_min_method: BoundMethod,
    pub m_min_method: BoundMethod,
    pub w_max_method: BoundMethod,
    pub m_max_method: BoundMethod,
    pub w_max_generic: usize,
    /// Closed-form value, when the topology satisfies its premise.
    pub w_max_closed: Option<usize>,
}

/// Closed-form wavelength bound for this topology, if its even-branch
/// premise holds.
pub fn w_max_closed_form(topology: &Topology) -> Option<(usize, BoundMethod)> {
    let n = topology.node_count();
    match topology.kind() {
        TopologyKind::Star => Some((w_max_star(n), BoundMethod::Star)),
        TopologyKind::BinaryTree => Some((w_max_binary(n), BoundMethod::BinaryTree)),
        TopologyKind::ArbitraryTree => {
            let k = topology.root_branch_count();
            let widest = topology.root_branch_sizes().into_iter().max().unwrap_or(0);
            (widest <= (n - 1).div_ceil(k)).then(|| (w_max_tree(n, k), BoundMethod::BranchTree))
        }
    }
}

pub fn bounds(traffic: &TrafficSet, topology: &Topology) -> BoundsReport {
    let (w_min, w_min_method) = if topology.kind() == TopologyKind::Star {
        (w_min_star(traffic), BoundMethod::StarNodeLoad)
    } else {
        (w_min(traffic, topology), BoundMethod::LinkAndNodeLoad)
    };
    let generic = w_max_generic(traffic, topology);
    let closed = w_max_closed_form(topology);
    let (w_max, w_max_method) = match closed {
        Some((value, method)) if value < generic => (value, method),
        _ => (generic, BoundMethod::CallCount),
    };
    let (m_max, m_max_method) = m_max_with_method(traffic, topology);
    BoundsReport {
        w_min,
        m_min: m_min(traffic),
        w_max,
        m_max,
        w_min_method,
        m_min_method: BoundMethod::NodeTotals,
        w_max_method,
        m_max_method,
        w_max_generic: generic,
        w_max_closed: closed.map(|(v, _)| v),
    }
}
