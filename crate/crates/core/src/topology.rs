//! Rooted star and tree networks.
//!
//! Every non-root node owns exactly one link, the one to its parent, so
//! link ids are dense: the link above node `v` has id `v - 1`. Each link
//! is a pair of unidirectional fibers and loads are always tracked per
//! [`Direction`].

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type NodeId = usize;
pub type LinkId = usize;

/// Fiber orientation relative to the parent/child edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    /// Direction 1: father to child.
    ParentToChild = 1,
    /// Direction 2: child to father.
    ChildToParent = 2,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::ParentToChild, Direction::ChildToParent];

    /// Dense index (0 or 1) for per-direction arrays.
    #[inline]
    pub fn index(self) -> usize {
        match self {
            Direction::ParentToChild => 0,
            Direction::ChildToParent => 1,
        }
    }

    pub fn flipped(self) -> Direction {
        match self {
            Direction::ParentToChild => Direction::ChildToParent,
            Direction::ChildToParent => Direction::ParentToChild,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::ParentToChild => f.write_str("down"),
            Direction::ChildToParent => f.write_str("up"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TopologyKind {
    Star,
    #[serde(rename = "binary")]
    BinaryTree,
    #[serde(rename = "tree")]
    ArbitraryTree,
}

impl fmt::Display for TopologyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologyKind::Star => f.write_str("star"),
            TopologyKind::BinaryTree => f.write_str("binary"),
            TopologyKind::ArbitraryTree => f.write_str("tree"),
        }
    }
}

impl std::str::FromStr for TopologyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "star" => Ok(TopologyKind::Star),
            "binary" | "binary-tree" | "binarytree" => Ok(TopologyKind::BinaryTree),
            "tree" | "arbitrary" | "arbitrary-tree" => Ok(TopologyKind::ArbitraryTree),
            other => Err(Error::InvalidTopology(format!("unknown topology kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Link {
    pub id: LinkId,
    pub parent: NodeId,
    pub child: NodeId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Hop {
    pub link: LinkId,
    pub direction: Direction,
}

/// The unique path between two nodes, as an ordered list of directed hops.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Route {
    pub hops: Vec<Hop>,
}

impl Route {
    pub fn len(&self) -> usize {
        self.hops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hops.is_empty()
    }
}

/// A validated rooted tree. Node 0 is always the root (the hub for stars).
#[derive(Debug, Clone)]
pub struct Topology {
    kind: TopologyKind,
    parent: Vec<Option<NodeId>>,
    children: Vec<Vec<NodeId>>,
    depth: Vec<usize>,
    /// `original[v]` is the caller's label for node `v` before re-rooting.
    original: Vec<usize>,
}

impl Topology {
    /// Star with hub 0 and leaves `1..n`.
    pub fn star(n: usize) -> Result<Self> {
        check_size(n)?;
        let edges: Vec<_> = (1..n).map(|leaf| (0, leaf)).collect();
        let mut t = Self::rooted_at(n, &edges, 0)?;
        t.kind = TopologyKind::Star;
        Ok(t)
    }

    /// Balanced binary tree: at every node the two subtrees differ in size
    /// by at most one, so the root is a centroid.
    pub fn binary(n: usize) -> Result<Self> {
        check_size(n)?;
        let mut edges = Vec::with_capacity(n - 1);
        let mut next = 1;
        grow_balanced(0, n, &mut next, &mut edges);
        let root = select_root(n, &edges)?;
        let mut t = Self::rooted_at(n, &edges, root)?;
        t.kind = TopologyKind::BinaryTree;
        Ok(t)
    }

    /// Arbitrary tree from an undirected edge list, re-rooted at its
    /// centroid and relabeled so the root is node 0.
    pub fn from_edges(edges: &[(usize, usize)]) -> Result<Self> {
        let n = edges
            .iter()
            .map(|&(u, v)| u.max(v) + 1)
            .max()
            .unwrap_or(0);
        check_size(n)?;
        let root = select_root(n, edges)?;
        let mut t = Self::rooted_at(n, edges, root)?;
        t.kind = TopologyKind::ArbitraryTree;
        Ok(t)
    }

    pub fn build(kind: TopologyKind, n: usize) -> Result<Self> {
        match kind {
            TopologyKind::Star => Self::star(n),
            TopologyKind::BinaryTree => Self::binary(n),
            TopologyKind::ArbitraryTree => Err(Error::InvalidTopology(
                "arbitrary trees need an edge list".into(),
            )),
        }
    }

    /// Relabels in BFS order from `root`, visiting neighbours by ascending
    /// original id.
    fn rooted_at(n: usize, edges: &[(usize, usize)], root: usize) -> Result<Self> {
        let adj = adjacency(n, edges)?;
        let mut new_of = vec![usize::MAX; n];
        let mut original = Vec::with_capacity(n);
        let mut queue = VecDeque::from([root]);
        new_of[root] = 0;
        original.push(root);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if new_of[v] == usize::MAX {
                    new_of[v] = original.len();
                    original.push(v);
                    queue.push_back(v);
                }
            }
        }
        if original.len() != n {
            return Err(Error::InvalidTopology("edge list is not connected".into()));
        }

        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut depth = vec![0; n];
        for new in 0..n {
            let old = original[new];
            for &nb in &adj[old] {
                let nb_new = new_of[nb];
                if nb_new > new && parent[nb_new].is_none() {
                    parent[nb_new] = Some(new);
                    depth[nb_new] = depth[new] + 1;
                    children[new].push(nb_new);
                }
            }
        }
        Ok(Topology {
            kind: TopologyKind::ArbitraryTree,
            parent,
            children,
            depth,
            original,
        })
    }

    pub fn kind(&self) -> TopologyKind {
        self.kind
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn link_count(&self) -> usize {
        self.parent.len() - 1
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.parent[v]
    }

    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.children[v]
    }

    pub fn depth(&self, v: NodeId) -> usize {
        self.depth[v]
    }

    /// Caller's label for `v` before re-rooting (identity for star/binary).
    pub fn original_label(&self, v: NodeId) -> usize {
        self.original[v]
    }

    pub fn is_internal(&self, v: NodeId) -> bool {
        !self.children[v].is_empty()
    }

    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.children[v].is_empty()
    }

    /// Link between `v` and its parent.
    pub fn uplink(&self, v: NodeId) -> Option<LinkId> {
        self.parent[v].map(|_| v - 1)
    }

    pub fn link(&self, id: LinkId) -> Link {
        let child = id + 1;
        Link {
            id,
            parent: self.parent[child].expect("non-root node has a parent"),
            child,
        }
    }

    pub fn links(&self) -> impl Iterator<Item = Link> + '_ {
        (0..self.link_count()).map(move |id| self.link(id))
    }

    /// Number of branches hanging off the root.
    pub fn root_branch_count(&self) -> usize {
        self.children[0].len()
    }

    /// Node count of each root branch, in child order.
    pub fn root_branch_sizes(&self) -> Vec<usize> {
        let sizes = self.subtree_sizes();
        self.children[0].iter().map(|&c| sizes[c]).collect()
    }

    /// Size of the subtree rooted at every node.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let n = self.node_count();
        let mut size = vec![1; n];
        // BFS labeling puts every child after its parent.
        for v in (1..n).rev() {
            let p = self.parent[v].expect("non-root node has a parent");
            size[p] += size[v];
        }
        size
    }

    pub fn lca(&self, mut a: NodeId, mut b: NodeId) -> NodeId {
        while a != b {
            if self.depth[a] >= self.depth[b] {
                a = self.parent[a].expect("deeper node has a parent");
            } else {
                b = self.parent[b].expect("deeper node has a parent");
            }
        }
        a
    }

    /// Unique path from `src` to `dst`: up-hops to the common ancestor,
    /// then down-hops to the destination.
    pub fn route(&self, src: NodeId, dst: NodeId) -> Result<Route> {
        if src == dst {
            return Err(Error::SameEndpoints(src));
        }
        let (mut a, mut b) = (src, dst);
        let mut up = Vec::new();
        let mut down = Vec::new();
        while a != b {
            if self.depth[a] >= self.depth[b] {
                up.push(Hop {
                    link: a - 1,
                    direction: Direction::ChildToParent,
                });
                a = self.parent[a].expect("deeper node has a parent");
            } else {
                down.push(Hop {
                    link: b - 1,
                    direction: Direction::ParentToChild,
                });
                b = self.parent[b].expect("deeper node has a parent");
            }
        }
        up.extend(down.into_iter().rev());
        Ok(Route { hops: up })
    }
}

fn check_size(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidTopology(format!(
            "need at least 2 nodes, got {n}"
        )));
    }
    Ok(())
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Result<Vec<Vec<usize>>> {
    if edges.len() + 1 != n {
        return Err(Error::InvalidTopology(format!(
            "a tree on {n} nodes has {} edges, got {}",
            n - 1,
            edges.len()
        )));
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(Error::InvalidTopology(format!("edge ({u}, {v}) out of range")));
        }
        if u == v {
            return Err(Error::InvalidTopology(format!("self loop at node {u}")));
        }
        if adj[u].contains(&v) {
            return Err(Error::InvalidTopology(format!("duplicate edge ({u}, {v})")));
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    for nbrs in &mut adj {
        nbrs.sort_unstable();
    }
    Ok(adj)
}

fn grow_balanced(root: usize, size: usize, next: &mut usize, edges: &mut Vec<(usize, usize)>) {
    let rest = size - 1;
    let left = rest.div_ceil(2);
    let right = rest / 2;
    for sub in [left, right] {
        if sub > 0 {
            let child = *next;
            *next += 1;
            edges.push((root, child));
            grow_balanced(child, sub, next, edges);
        }
    }
}

/// Tree centroid: the node whose largest branch is smallest. Ties go to
/// the lowest id.
pub fn select_root(n: usize, edges: &[(usize, usize)]) -> Result<NodeId> {
    check_size(n)?;
    let adj = adjacency(n, edges)?;

    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        order.push(u);
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                parent[v] = u;
                stack.push(v);
            }
        }
    }
    if order.len() != n {
        return Err(Error::InvalidTopology("edge list is not connected".into()));
    }

    let mut size = vec![1usize; n];
    for &u in order.iter().rev() {
        if parent[u] != usize::MAX {
            size[parent[u]] += size[u];
        }
    }
    let max_branch = |u: usize| {
        adj[u]
            .iter()
            .map(|&v| if parent[v] == u { size[v] } else { n - size[u] })
            .max()
            .unwrap_or(0)
    };
    Ok((0..n)
        .min_by_key(|&u| (max_branch(u), u))
        .expect("n >= 2"))
}

/// Parses `u v` pairs, one per line; `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<Vec<(usize, usize)>> {
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| {
                Error::InvalidTopology(format!("line {}: bad node id `{s}`", lineno + 1))
            })
        };
        match fields.as_slice() {
            [u, v] => edges.push((parse(u)?, parse(v)?)),
            _ => {
                return Err(Error::InvalidTopology(format!(
                    "line {}: expected `u v`, got `{line}`",
                    lineno + 1
                )))
            }
        }
    }
    Ok(edges)
}
