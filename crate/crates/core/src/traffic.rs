//! Dynamic traffic instances: `M` demand matrices sharing one granularity.
//!
//! Ordered node pairs are flattened to dense demand ids with
//! `id = i * (n - 1) + (j if j < i else j - 1)`, which is also the gene
//! alphabet of a chromosome.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::topology::NodeId;

pub type DemandId = usize;

/// Number of ordered pairs (`n(n-1)`).
pub fn demand_count(n: usize) -> usize {
    n * n.saturating_sub(1)
}

pub fn demand_index(n: usize, src: NodeId, dst: NodeId) -> DemandId {
    debug_assert!(src != dst && src < n && dst < n);
    src * (n - 1) + if dst < src { dst } else { dst - 1 }
}

pub fn demand_pair(n: usize, d: DemandId) -> (NodeId, NodeId) {
    let src = d / (n - 1);
    let r = d % (n - 1);
    (src, if r < src { r } else { r + 1 })
}

/// `patterns[m][i * n + j]` is the demand from `i` to `j` while pattern
/// `m` is active.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrafficSet {
    n: usize,
    granularity: u32,
    patterns: Vec<Vec<u32>>,
}

impl TrafficSet {
    pub fn new(n: usize, granularity: u32, patterns: Vec<Vec<Vec<u32>>>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidTraffic(format!("need at least 2 nodes, got {n}")));
        }
        if granularity == 0 {
            return Err(Error::InvalidTraffic("granularity must be positive".into()));
        }
        if patterns.is_empty() {
            return Err(Error::InvalidTraffic("need at least one pattern".into()));
        }
        let mut flat = Vec::with_capacity(patterns.len());
        for (m, matrix) in patterns.into_iter().enumerate() {
            if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
                return Err(Error::InvalidTraffic(format!("pattern {m} is not {n}x{n}")));
            }
            if let Some(i) = (0..n).find(|&i| matrix[i][i] != 0) {
                return Err(Error::InvalidTraffic(format!(
                    "pattern {m} has nonzero diagonal at node {i}"
                )));
            }
            flat.push(matrix.into_iter().flatten().collect());
        }
        Ok(TrafficSet {
            n,
            granularity,
            patterns: flat,
        })
    }

    /// All-zero instance.
    pub fn zeros(n: usize, patterns: usize, granularity: u32) -> Result<Self> {
        Self::new(n, granularity, vec![vec![vec![0; n]; n]; patterns])
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn pattern_count(&self) -> usize {
        self.patterns.len()
    }

    pub fn granularity(&self) -> u32 {
        self.granularity
    }

    pub fn demand_count(&self) -> usize {
        demand_count(self.n)
    }

    #[inline]
    pub fn get(&self, m: usize, src: NodeId, dst: NodeId) -> u32 {
        self.patterns[m][src * self.n + dst]
    }

    pub fn set(&mut self, m: usize, src: NodeId, dst: NodeId, value: u32) {
        assert_ne!(src, dst, "diagonal stays zero");
        self.patterns[m][src * self.n + dst] = value;
    }

    /// Demand `d` under pattern `m`.
    #[inline]
    pub fn demand(&self, m: usize, d: DemandId) -> u32 {
        let (i, j) = demand_pair(self.n, d);
        self.get(m, i, j)
    }

    /// Per-pattern magnitudes of demand `d`.
    pub fn magnitudes(&self, d: DemandId) -> Vec<u32> {
        let (i, j) = demand_pair(self.n, d);
        (0..self.pattern_count()).map(|m| self.get(m, i, j)).collect()
    }

    /// Peak of demand `d` over all patterns.
    pub fn peak(&self, d: DemandId) -> u32 {
        let (i, j) = demand_pair(self.n, d);
        (0..self.pattern_count())
            .map(|m| self.get(m, i, j))
            .max()
            .unwrap_or(0)
    }

    pub fn is_zero(&self, d: DemandId) -> bool {
        self.peak(d) == 0
    }

    pub fn matrix(&self, m: usize) -> Vec<Vec<u32>> {
        self.patterns[m].chunks(self.n).map(<[u32]>::to_vec).collect()
    }

    /// Single-pattern instance holding only pattern `m`.
    pub fn pattern(&self, m: usize) -> TrafficSet {
        TrafficSet {
            n: self.n,
            granularity: self.granularity,
            patterns: vec![self.patterns[m].clone()],
        }
    }

    pub fn with_granularity(&self, granularity: u32) -> Result<TrafficSet> {
        if granularity == 0 {
            return Err(Error::InvalidTraffic("granularity must be positive".into()));
        }
        Ok(TrafficSet {
            granularity,
            ..self.clone()
        })
    }

    /// Entrywise maximum over patterns as a one-pattern instance. Grooming
    /// it statically supports every pattern.
    pub fn max_matrix(&self) -> TrafficSet {
        let mut peak = vec![0u32; self.n * self.n];
        for pattern in &self.patterns {
            for (p, &v) in peak.iter_mut().zip(pattern) {
                *p = (*p).max(v);
            }
        }
        TrafficSet {
            n: self.n,
            granularity: self.granularity,
            patterns: vec![peak],
        }
    }

    /// Peels off full wavelengths from over-granularity demands. A pair
    /// gets `max_m floor(r[m] / g)` dedicated wavelengths so the same
    /// wavelengths serve it in every pattern.
    pub fn split_over_granularity(&self) -> SplitResult {
        let g = self.granularity;
        let mut residual = self.clone();
        let mut dedicated = Vec::new();
        for d in 0..self.demand_count() {
            let (i, j) = demand_pair(self.n, d);
            let base = (0..self.pattern_count())
                .map(|m| self.get(m, i, j) / g)
                .max()
                .unwrap_or(0);
            if base == 0 {
                continue;
            }
            dedicated.push((d, base));
            for m in 0..self.pattern_count() {
                let r = self.get(m, i, j);
                residual.set(m, i, j, r.saturating_sub(base * g));
            }
        }
        SplitResult {
            dedicated,
            residual,
        }
    }

    /// Largest single entry in any pattern.
    pub fn max_entry(&self) -> u32 {
        self.patterns
            .iter()
            .flat_map(|p| p.iter().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn to_document(&self) -> TrafficDocument {
        TrafficDocument {
            n: self.n,
            patterns: self.pattern_count(),
            granularity: self.granularity,
            demands: (0..self.pattern_count()).map(|m| self.matrix(m)).collect(),
        }
    }

    pub fn from_document(doc: TrafficDocument) -> Result<Self> {
        if doc.demands.len() != doc.patterns {
            return Err(Error::Document(format!(
                "M = {} but {} matrices given",
                doc.patterns,
                doc.demands.len()
            )));
        }
        Self::new(doc.n, doc.granularity, doc.demands)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_document())?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_document(serde_json::from_str(text)?)
    }
}

/// Serialized form of a [`TrafficSet`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrafficDocument {
    pub n: usize,
    #[serde(rename = "M")]
    pub patterns: usize,
    #[serde(rename = "g")]
    pub granularity: u32,
    pub demands: Vec<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitResult {
    /// Pairs that need whole dedicated wavelengths, with the count.
    pub dedicated: Vec<(DemandId, u32)>,
    /// What is left to groom; every entry is below the granularity.
    pub residual: TrafficSet,
}

impl SplitResult {
    pub fn dedicated_wavelengths(&self) -> u32 {
        self.dedicated.iter().map(|&(_, c)| c).sum()
    }
}

/// Parameters of the random traffic model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrafficParams {
    pub nodes: usize,
    pub patterns: usize,
    pub granularity: u32,
    pub seed: u64,
    pub lo: u32,
    pub hi: u32,
}

impl TrafficParams {
    pub fn new(nodes: usize, patterns: usize, granularity: u32, seed: u64) -> Self {
        TrafficParams {
            nodes,
            patterns,
            granularity,
            seed,
            lo: 0,
            hi: 15,
        }
    }
}

/// Random dynamic traffic. The two extreme patterns (first and last) are
/// drawn uniformly from `[lo, hi]`; every middle pattern draws each entry
/// uniformly between the two extremes, inclusive.
///
/// The extremes come from ChaCha8 stream 0 and the middles from stream 1,
/// so the extremes depend only on `(n, seed, lo, hi)` and stay the same
/// when `M` changes.
pub fn generate(params: &TrafficParams) -> Result<TrafficSet> {
    let TrafficParams {
        nodes: n,
        patterns: m_count,
        granularity,
        seed,
        lo,
        hi,
    } = *params;
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n must be >= 2, got {n}")));
    }
    if m_count == 0 {
        return Err(Error::InvalidParameter("M must be >= 1".into()));
    }
    if hi < lo {
        return Err(Error::InvalidParameter(format!("empty range [{lo}, {hi}]")));
    }
    if granularity == 0 {
        return Err(Error::InvalidParameter("granularity must be positive".into()));
    }

    let mut extremes = ChaCha8Rng::seed_from_u64(seed);
    extremes.set_stream(0);
    let mut middles = ChaCha8Rng::seed_from_u64(seed);
    middles.set_stream(1);

    let draw_uniform = |rng: &mut ChaCha8Rng| {
        let mut matrix = vec![vec![0u32; n]; n];
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                if i != j {
                    *cell = rng.gen_range(lo..=hi);
                }
            }
        }
        matrix
    };
    let first = draw_uniform(&mut extremes);
    let last = if m_count >= 2 {
        Some(draw_uniform(&mut extremes))
    } else {
        None
    };

    let mut patterns = Vec::with_capacity(m_count);
    patterns.push(first.clone());
    if let Some(last) = last {
        for _ in 1..m_count - 1 {
            let mut matrix = vec![vec![0u32; n]; n];
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        let (a, b) = (first[i][j], last[i][j]);
                        matrix[i][j] = middles.gen_range(a.min(b)..=a.max(b));
                    }
                }
            }
            patterns.push(matrix);
        }
        patterns.push(last);
    }
    TrafficSet::new(n, granularity, patterns)
}
