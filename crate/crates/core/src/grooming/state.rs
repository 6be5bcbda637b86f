use crate::error::{Error, Result};
use crate::topology::{Direction, LinkId, NodeId, Topology};
use crate::traffic::{demand_pair, DemandId, TrafficSet};

/// Read-only view of one instance shared by every decode: routes as dense
/// `(link, direction)` slots and per-pattern magnitudes for each demand.
#[derive(Debug, Clone)]
pub struct Instance {
    n: usize,
    patterns: usize,
    granularity: u32,
    leaf: Vec<bool>,
    endpoints: Vec<(NodeId, NodeId)>,
    route_start: Vec<usize>,
    route_slots: Vec<u32>,
    /// `magnitude[d * patterns + m]`.
    magnitude: Vec<u32>,
    zero: Vec<bool>,
}

impl Instance {
    /// Fails when node counts disagree or some demand cannot fit on an
    /// empty wavelength (run `split_over_granularity` first).
    pub fn new(traffic: &TrafficSet, topology: &Topology) -> Result<Self> {
        let n = traffic.node_count();
        if topology.node_count() != n {
            return Err(Error::InvalidParameter(format!(
                "traffic has {n} nodes but topology has {}",
                topology.node_count()
            )));
        }
        let patterns = traffic.pattern_count();
        let granularity = traffic.granularity();
        let count = traffic.demand_count();

        let mut endpoints = Vec::with_capacity(count);
        let mut route_start = Vec::with_capacity(count + 1);
        let mut route_slots = Vec::new();
        let mut magnitude = Vec::with_capacity(count * patterns);
        let mut zero = Vec::with_capacity(count);
        for d in 0..count {
            let (src, dst) = demand_pair(n, d);
            endpoints.push((src, dst));
            route_start.push(route_slots.len());
            for hop in topology.route(src, dst)?.hops {
                route_slots.push(slot(hop.link, hop.direction) as u32);
            }
            let mut peak = 0;
            for m in 0..patterns {
                let r = traffic.get(m, src, dst);
                if r > granularity {
                    return Err(Error::DemandExceedsCapacity {
                        demand: d,
                        magnitude: r,
                        granularity,
                    });
                }
                peak = peak.max(r);
                magnitude.push(r);
            }
            zero.push(peak == 0);
        }
        route_start.push(route_slots.len());

        Ok(Instance {
            n,
            patterns,
            granularity,
            leaf: (0..n).map(|v| topology.is_leaf(v)).collect(),
            endpoints,
            route_start,
            route_slots,
            magnitude,
            zero,
        })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn pattern_count(&self) -> usize {
        self.patterns
    }

    pub fn granularity(&self) -> u32 {
        self.granularity
    }

    pub fn demand_count(&self) -> usize {
        self.endpoints.len()
    }

    pub fn endpoints(&self, d: DemandId) -> (NodeId, NodeId) {
        self.endpoints[d]
    }

    #[inline]
    pub fn magnitudes(&self, d: DemandId) -> &[u32] {
        &self.magnitude[d * self.patterns..(d + 1) * self.patterns]
    }

    /// True when the demand is zero in every pattern.
    #[inline]
    pub fn is_zero(&self, d: DemandId) -> bool {
        self.zero[d]
    }

    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.leaf[v]
    }

    #[inline]
    fn route(&self, d: DemandId) -> &[u32] {
        &self.route_slots[self.route_start[d]..self.route_start[d + 1]]
    }

    pub fn empty_wavelength(&self) -> WavelengthState {
        WavelengthState {
            patterns: self.patterns,
            granularity: self.granularity,
            adm: vec![false; self.n],
            adm_count: 0,
            link_load: vec![0; 2 * (self.n - 1) * self.patterns],
            add_load: vec![0; self.n * self.patterns],
            drop_load: vec![0; self.n * self.patterns],
            assigned: Vec::new(),
        }
    }

    /// ADMs `d` would add to `w`.
    #[inline]
    pub fn new_adms(&self, w: &WavelengthState, d: DemandId) -> u8 {
        let (src, dst) = self.endpoints[d];
        u8::from(!w.adm[src]) + u8::from(!w.adm[dst])
    }

    /// Why (or whether) `d` fits on `w` in every pattern while adding at
    /// most `max_new_adms` ADMs. Link capacity is checked before the
    /// endpoint add/drop budget.
    pub fn check(&self, w: &WavelengthState, d: DemandId, max_new_adms: u8) -> Verdict {
        if self.zero[d] {
            return Verdict::Fits;
        }
        if self.new_adms(w, d) > max_new_adms {
            return Verdict::TooManyAdms;
        }
        let (src, dst) = self.endpoints[d];
        let g = self.granularity;
        let route = self.route(d);
        for (m, &r) in self.magnitudes(d).iter().enumerate() {
            if r == 0 {
                continue;
            }
            for &s in route {
                if w.link_load[s as usize * self.patterns + m] + r > g {
                    return Verdict::LinkFull { pattern: m };
                }
            }
            if w.add_load[src * self.patterns + m] + r > g {
                return Verdict::AddFull { node: src, pattern: m };
            }
            if w.drop_load[dst * self.patterns + m] + r > g {
                return Verdict::DropFull { node: dst, pattern: m };
            }
        }
        Verdict::Fits
    }

    #[inline]
    pub fn can_assign(&self, w: &WavelengthState, d: DemandId, max_new_adms: u8) -> bool {
        self.check(w, d, max_new_adms) == Verdict::Fits
    }

    /// Commits `d` to `w`. Intermediate route nodes bypass optically: they
    /// get neither an ADM nor any add/drop load.
    ///
    /// Panics if `d` does not fit; callers must check first.
    pub fn assign(&self, w: &mut WavelengthState, d: DemandId) {
        let verdict = self.check(w, d, 2);
        assert_eq!(verdict, Verdict::Fits, "demand {d} assigned without capacity");
        self.apply(w, d);
    }

    /// Adds the demand's load without checking capacity. Used to rebuild
    /// possibly-invalid solutions from documents.
    pub(crate) fn apply(&self, w: &mut WavelengthState, d: DemandId) {
        let (src, dst) = self.endpoints[d];
        let p = self.patterns;
        for (m, &r) in self.magnitudes(d).iter().enumerate() {
            for &s in self.route(d) {
                w.link_load[s as usize * p + m] += r;
            }
            w.add_load[src * p + m] += r;
            w.drop_load[dst * p + m] += r;
        }
        for v in [src, dst] {
            if !w.adm[v] {
                w.adm[v] = true;
                w.adm_count += 1;
            }
        }
        w.assigned.push(d);
    }
}

#[inline]
fn slot(link: LinkId, direction: Direction) -> usize {
    link * 2 + direction.index()
}

/// Outcome of a feasibility check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Fits,
    TooManyAdms,
    LinkFull { pattern: usize },
    AddFull { node: NodeId, pattern: usize },
    DropFull { node: NodeId, pattern: usize },
}

/// Capacity bookkeeping for one wavelength. Loads are stored as used
/// units; residuals are `g - load`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WavelengthState {
    patterns: usize,
    granularity: u32,
    adm: Vec<bool>,
    adm_count: usize,
    link_load: Vec<u32>,
    add_load: Vec<u32>,
    drop_load: Vec<u32>,
    assigned: Vec<DemandId>,
}

impl WavelengthState {
    pub fn is_empty(&self) -> bool {
        self.assigned.is_empty()
    }

    pub fn has_adm(&self, v: NodeId) -> bool {
        self.adm[v]
    }

    /// Number of nodes holding an ADM on this wavelength.
    pub fn adm_count(&self) -> usize {
        self.adm_count
    }

    /// Nodes holding an ADM, ascending.
    pub fn drop_nodes(&self) -> Vec<NodeId> {
        (0..self.adm.len()).filter(|&v| self.adm[v]).collect()
    }

    /// Demands carried, in assignment order.
    pub fn assigned(&self) -> &[DemandId] {
        &self.assigned
    }

    pub fn link_load(&self, link: LinkId, direction: Direction, pattern: usize) -> u32 {
        self.link_load[slot(link, direction) * self.patterns + pattern]
    }

    pub fn link_residual(&self, link: LinkId, direction: Direction, pattern: usize) -> i64 {
        i64::from(self.granularity) - i64::from(self.link_load(link, direction, pattern))
    }

    pub fn add_load(&self, v: NodeId, pattern: usize) -> u32 {
        self.add_load[v * self.patterns + pattern]
    }

    pub fn drop_load(&self, v: NodeId, pattern: usize) -> u32 {
        self.drop_load[v * self.patterns + pattern]
    }

    pub fn add_residual(&self, v: NodeId, pattern: usize) -> i64 {
        i64::from(self.granularity) - i64::from(self.add_load(v, pattern))
    }

    pub fn drop_residual(&self, v: NodeId, pattern: usize) -> i64 {
        i64::from(self.granularity) - i64::from(self.drop_load(v, pattern))
    }
}
