//! Brute-force reference implementations for tests. Routing, loads and
//! feasibility are recomputed here from the raw tree structure; nothing
//! calls the library's own routing, load or decoding code.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::Rng;
use wdm_groom::topology::{Direction, LinkId, NodeId};
use wdm_groom::traffic::{demand_pair, DemandId};
use wdm_groom::{Topology, TrafficSet};

/// Undirected adjacency with the parent/child orientation of every edge.
#[derive(Debug, Clone)]
pub struct Tree {
    n: usize,
    adj: Vec<Vec<(NodeId, LinkId)>>,
    /// `(parent, child)` per link id
    ends: Vec<(NodeId, NodeId)>,
}

impl Tree {
    pub fn of(topology: &Topology) -> Self {
        let n = topology.node_count();
        let mut adj = vec![Vec::new(); n];
        let mut ends = vec![(0, 0); topology.link_count()];
        for link in topology.links() {
            adj[link.parent].push((link.child, link.id));
            adj[link.child].push((link.parent, link.id));
            ends[link.id] = (link.parent, link.child);
        }
        Tree { n, adj, ends }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn link_count(&self) -> usize {
        self.ends.len()
    }

    /// Shortest path by BFS, as directed hops.
    pub fn path(&self, src: NodeId, dst: NodeId) -> Vec<(LinkId, Direction)> {
        let mut prev: Vec<Option<(NodeId, LinkId)>> = vec![None; self.n];
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([src]);
        seen[src] = true;
        while let Some(u) = queue.pop_front() {
            for &(v, l) in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    prev[v] = Some((u, l));
                    queue.push_back(v);
                }
            }
        }
        let mut hops = Vec::new();
        let mut at = dst;
        while at != src {
            let (from, l) = prev[at].expect("tree is connected");
            let dir = if self.ends[l] == (from, at) {
                Direction::ParentToChild
            } else {
                Direction::ChildToParent
            };
            hops.push((l, dir));
            at = from;
        }
        hops.reverse();
        hops
    }

    /// Nodes visited by the path, endpoints included.
    pub fn path_nodes(&self, src: NodeId, dst: NodeId) -> Vec<NodeId> {
        let mut nodes = vec![src];
        for (l, dir) in self.path(src, dst) {
            let (p, c) = self.ends[l];
            nodes.push(if dir == Direction::ParentToChild { c } else { p });
        }
        nodes
    }
}

/// Per-pattern sums over a set of demands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Loads {
    pub patterns: usize,
    /// `[(link * 2 + direction) * patterns + m]`
    pub link: Vec<u64>,
    /// `[node * patterns + m]`
    pub add: Vec<u64>,
    pub drop: Vec<u64>,
}

impl Loads {
    pub fn link(&self, l: LinkId, dir: Direction, m: usize) -> u64 {
        self.link[(l * 2 + dir.index()) * self.patterns + m]
    }

    pub fn peak_link(&self, l: LinkId, dir: Direction) -> u64 {
        (0..self.patterns).map(|m| self.link(l, dir, m)).max().unwrap_or(0)
    }

    pub fn fits(&self, g: u32) -> bool {
        let g = u64::from(g);
        self.link.iter().chain(&self.add).chain(&self.drop).all(|&x| x <= g)
    }
}

pub fn loads_of(ts: &TrafficSet, tree: &Tree, demands: impl IntoIterator<Item = DemandId>) -> Loads {
    let n = ts.node_count();
    let patterns = ts.pattern_count();
    let mut out = Loads {
        patterns,
        link: vec![0; 2 * tree.link_count() * patterns],
        add: vec![0; n * patterns],
        drop: vec![0; n * patterns],
    };
    for d in demands {
        let (s, t) = demand_pair(n, d);
        let path = tree.path(s, t);
        for m in 0..patterns {
            let r = u64::from(ts.get(m, s, t));
            for &(l, dir) in &path {
                out.link[(l * 2 + dir.index()) * patterns + m] += r;
            }
            out.add[s * patterns + m] += r;
            out.drop[t * patterns + m] += r;
        }
    }
    out
}

pub fn all_link_loads(ts: &TrafficSet, topology: &Topology) -> Loads {
    loads_of(ts, &Tree::of(topology), 0..ts.demand_count())
}

/// `(sigma, tau)` per node: peak terminated and originated totals.
pub fn node_totals(ts: &TrafficSet) -> Vec<(u64, u64)> {
    let n = ts.node_count();
    (0..n)
        .map(|v| {
            let mut sigma = 0;
            let mut tau = 0;
            for m in 0..ts.pattern_count() {
                let inbound: u64 = (0..n).map(|u| u64::from(ts.get(m, u, v))).sum();
                let outbound: u64 = (0..n).map(|u| u64::from(ts.get(m, v, u))).sum();
                sigma = sigma.max(inbound);
                tau = tau.max(outbound);
            }
            (sigma, tau)
        })
        .collect()
}

fn ceil_div(x: u64, g: u32) -> usize {
    x.div_ceil(u64::from(g)) as usize
}

/// Link terms plus `internal` node terms. Passing every node adds the
/// leaf terms too.
pub fn w_min_formula(ts: &TrafficSet, topology: &Topology, nodes: &[NodeId]) -> usize {
    let g = ts.granularity();
    let loads = all_link_loads(ts, topology);
    let totals = node_totals(ts);
    let mut best = 0;
    for l in 0..topology.link_count() {
        for dir in Direction::BOTH {
            best = best.max(ceil_div(loads.peak_link(l, dir), g));
        }
    }
    for &v in nodes {
        best = best.max(ceil_div(totals[v].0.max(totals[v].1), g));
    }
    best
}

pub fn m_min_formula(ts: &TrafficSet) -> usize {
    let g = ts.granularity();
    node_totals(ts).into_iter().map(|(s, t)| ceil_div(s.max(t), g)).sum()
}

pub fn w_min_star_formula(ts: &TrafficSet) -> usize {
    let g = ts.granularity();
    node_totals(ts).into_iter().map(|(s, t)| ceil_div(s.max(t), g)).max().unwrap_or(0)
}

/// Calls per fiber direction, maximized.
pub fn call_count(ts: &TrafficSet, topology: &Topology) -> usize {
    let tree = Tree::of(topology);
    let n = ts.node_count();
    let mut count = vec![0; 2 * tree.link_count()];
    for d in 0..ts.demand_count() {
        if (0..ts.pattern_count()).all(|m| ts.demand(m, d) == 0) {
            continue;
        }
        let (s, t) = demand_pair(n, d);
        for (l, dir) in tree.path(s, t) {
            count[l * 2 + dir.index()] += 1;
        }
    }
    count.into_iter().max().unwrap_or(0)
}

/// Largest component left after deleting `u`.
pub fn max_branch(n: usize, edges: &[(usize, usize)], u: usize) -> usize {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    seen[u] = true;
    let mut best = 0;
    for &start in &adj[u] {
        let mut size = 0;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            size += 1;
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        best = best.max(size);
    }
    best
}

pub fn centroid(n: usize, edges: &[(usize, usize)]) -> usize {
    (0..n).min_by_key(|&u| (max_branch(n, edges, u), u)).expect("n >= 1")
}

/// Random labelled tree: each node attaches to an earlier one, then labels
/// are shuffled.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<(usize, usize)> {
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    (1..n).map(|v| (label[rng.gen_range(0..v)], label[v])).collect()
}

/// Uniform demands on `[lo, hi]` in every pattern, independently.
pub fn random_traffic<R: Rng + ?Sized>(n: usize, patterns: usize, g: u32, lo: u32, hi: u32, rng: &mut R) -> TrafficSet {
    let matrices = (0..patterns)
        .map(|_| {
            (0..n)
                .map(|i| (0..n).map(|j| if i == j { 0 } else { rng.gen_range(lo..=hi) }).collect())
                .collect()
        })
        .collect();
    TrafficSet::new(n, g, matrices).expect("valid random traffic")
}

fn endpoints(n: usize, group: &[DemandId]) -> Vec<bool> {
    let mut has = vec![false; n];
    for &d in group {
        let (s, t) = demand_pair(n, d);
        has[s] = true;
        has[t] = true;
    }
    has
}

/// ADMs of a grouping: distinct endpoints per group, summed.
pub fn adm_count(n: usize, groups: &[Vec<DemandId>]) -> usize {
    groups.iter().map(|g| endpoints(n, g).into_iter().filter(|&b| b).count()).sum()
}

pub fn group_fits(ts: &TrafficSet, tree: &Tree, group: &[DemandId]) -> bool {
    loads_of(ts, tree, group.iter().copied()).fits(ts.granularity())
}

fn nonzero(ts: &TrafficSet, d: DemandId) -> bool {
    (0..ts.pattern_count()).any(|m| ts.demand(m, d) > 0)
}

/// Decoder re-simulation with every feasibility check recomputed from
/// scratch. Returns the demand groups in wavelength order.
pub fn reference_decode(ts: &TrafficSet, topology: &Topology, chromosome: &[DemandId], reuse: bool) -> Vec<Vec<DemandId>> {
    let n = ts.node_count();
    let tree = Tree::of(topology);
    let new_adms = |group: &[DemandId], d: DemandId| {
        let has = endpoints(n, group);
        let (s, t) = demand_pair(n, d);
        usize::from(!has[s]) + usize::from(!has[t])
    };
    let admits = |group: &[DemandId], d: DemandId, max_new: usize| {
        if new_adms(group, d) > max_new {
            return false;
        }
        let mut with = group.to_vec();
        with.push(d);
        group_fits(ts, &tree, &with)
    };

    let mut order = chromosome.to_vec();
    let mut groups: Vec<Vec<DemandId>> = vec![Vec::new()];
    let mut k = 0;
    while k < order.len() {
        let d = order[k];
        if !nonzero(ts, d) {
            k += 1;
            continue;
        }
        let cur = groups.len() - 1;
        if reuse {
            if let Some(f) = (0..cur).find(|&f| admits(&groups[f], d, 1)) {
                groups[f].push(d);
                k += 1;
                continue;
            }
        }
        if admits(&groups[cur], d, 2) {
            groups[cur].push(d);
            k += 1;
            for l in k..order.len() {
                let e = order[l];
                if !nonzero(ts, e) {
                    continue;
                }
                let target = if admits(&groups[cur], e, 0) {
                    Some(cur)
                } else if reuse {
                    (0..cur).find(|&f| admits(&groups[f], e, 0))
                } else {
                    None
                };
                if let Some(f) = target {
                    groups[f].push(e);
                    order.swap(l, k);
                    k += 1;
                }
            }
        } else {
            assert!(!groups[cur].is_empty(), "demand {d} exceeds one wavelength");
            groups.push(Vec::new());
        }
    }
    if groups.last().is_some_and(|g| g.is_empty()) {
        groups.pop();
    }
    groups
}

/// Exact minimum ADM count over all ways of grouping the nonzero demands
/// onto wavelengths, by depth-first branch and bound.
pub fn min_adms(ts: &TrafficSet, topology: &Topology) -> usize {
    let n = ts.node_count();
    let g = ts.granularity();
    let tree = Tree::of(topology);
    let mut demands: Vec<DemandId> = (0..ts.demand_count()).filter(|&d| nonzero(ts, d)).collect();
    // big demands first prunes earlier
    demands.sort_by_key(|&d| std::cmp::Reverse((0..ts.pattern_count()).map(|m| ts.demand(m, d)).sum::<u32>()));

    let totals = node_totals(ts);
    let mut need = vec![0usize; n];
    for &d in &demands {
        let (s, t) = demand_pair(n, d);
        need[s] = need[s].max(1);
        need[t] = need[t].max(1);
    }
    for v in 0..n {
        need[v] = need[v].max(ceil_div(totals[v].0.max(totals[v].1), g));
    }

    struct Search<'a> {
        ts: &'a TrafficSet,
        tree: &'a Tree,
        paths: Vec<Vec<(LinkId, Direction)>>,
        demands: Vec<DemandId>,
        need: Vec<usize>,
        groups: Vec<(Loads, Vec<bool>)>,
        per_node: Vec<usize>,
        best: usize,
    }

    impl Search<'_> {
        fn bound(&self) -> usize {
            self.per_node.iter().zip(&self.need).map(|(&a, &b)| a.max(b)).sum()
        }

        fn try_add(&self, loads: &mut Loads, i: usize) -> bool {
            let n = self.ts.node_count();
            let d = self.demands[i];
            let (s, t) = demand_pair(n, d);
            let p = loads.patterns;
            let g = u64::from(self.ts.granularity());
            for m in 0..p {
                let r = u64::from(self.ts.get(m, s, t));
                if loads.add[s * p + m] + r > g || loads.drop[t * p + m] + r > g {
                    return false;
                }
                for &(l, dir) in &self.paths[i] {
                    if loads.link[(l * 2 + dir.index()) * p + m] + r > g {
                        return false;
                    }
                }
            }
            for m in 0..p {
                let r = u64::from(self.ts.get(m, s, t));
                loads.add[s * p + m] += r;
                loads.drop[t * p + m] += r;
                for &(l, dir) in &self.paths[i] {
                    loads.link[(l * 2 + dir.index()) * p + m] += r;
                }
            }
            true
        }

        fn go(&mut self, i: usize) {
            if self.bound() >= self.best {
                return;
            }
            if i == self.demands.len() {
                self.best = self.bound();
                return;
            }
            let n = self.ts.node_count();
            let (s, t) = demand_pair(n, self.demands[i]);
            let mut options: Vec<(usize, usize)> = (0..self.groups.len())
                .map(|j| {
                    let has = &self.groups[j].1;
                    (usize::from(!has[s]) + usize::from(!has[t]), j)
                })
                .collect();
            options.sort();
            for (_, j) in options {
                let mut loads = self.groups[j].0.clone();
                if !self.try_add(&mut loads, i) {
                    continue;
                }
                let saved = std::mem::replace(&mut self.groups[j].0, loads);
                let fresh: Vec<NodeId> = [s, t].into_iter().filter(|&v| !self.groups[j].1[v]).collect();
                for &v in &fresh {
                    self.groups[j].1[v] = true;
                    self.per_node[v] += 1;
                }
                self.go(i + 1);
                for &v in &fresh {
                    self.groups[j].1[v] = false;
                    self.per_node[v] -= 1;
                }
                self.groups[j].0 = saved;
            }
            // a fresh wavelength; all empty ones are interchangeable
            let empty = loads_of(self.ts, self.tree, std::iter::empty());
            let mut loads = empty;
            if self.try_add(&mut loads, i) {
                let mut has = vec![false; n];
                has[s] = true;
                has[t] = true;
                self.groups.push((loads, has));
                self.per_node[s] += 1;
                self.per_node[t] += 1;
                self.go(i + 1);
                self.per_node[s] -= 1;
                self.per_node[t] -= 1;
                self.groups.pop();
            }
        }
    }

    let paths = demands
        .iter()
        .map(|&d| {
            let (s, t) = demand_pair(n, d);
            tree.path(s, t)
        })
        .collect();
    let mut search = Search {
        ts,
        tree: &tree,
        paths,
        best: 2 * demands.len() + 1,
        demands,
        need,
        groups: Vec::new(),
        per_node: vec![0; n],
    };
    search.go(0);
    search.best.min(2 * search.demands.len())
}
