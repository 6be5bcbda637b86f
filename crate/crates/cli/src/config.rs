//! Experiment configuration: a flat `key = value` file, overridden by
//! command-line flags. Keys use `_` or `-` interchangeably; list values
//! are comma separated.

use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use serde::{Deserialize, Serialize};
use wdm_groom::topology::parse_edge_list;
use wdm_groom::{GaConfig, Topology, TopologyKind};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExperimentConfig {
    pub topology: TopologyKind,
    /// Edge-list file, required for arbitrary trees.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<PathBuf>,
    pub nodes: Vec<usize>,
    pub granularity: Vec<u32>,
    pub patterns: Vec<usize>,
    pub lo: u32,
    pub hi: u32,
    pub seed: u64,
    pub ga: GaConfig,
    pub reuse: bool,
    /// Also run the opposite reuse setting and report both.
    pub compare_reuse: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            topology: TopologyKind::BinaryTree,
            edges: None,
            nodes: vec![15],
            granularity: vec![24],
            patterns: vec![2],
            lo: 0,
            hi: 15,
            seed: 0,
            ga: GaConfig::default(),
            reuse: true,
            compare_reuse: false,
        }
    }
}

/// One combination of the sweep axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepPoint {
    pub nodes: usize,
    pub granularity: u32,
    pub patterns: usize,
}

fn list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|e| anyhow::anyhow!("{key}: bad value {s:?}: {e}")))
        .collect()
}

fn one<T: std::str::FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value.trim().parse::<T>().map_err(|e| anyhow::anyhow!("{key}: bad value {value:?}: {e}"))
}

impl ExperimentConfig {
    /// Sets one key. Unknown keys are errors.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().replace('-', "_");
        match key.as_str() {
            "topology" => self.topology = one(&key, value)?,
            "edges" => self.edges = Some(PathBuf::from(value.trim())),
            "nodes" | "sweep_nodes" => self.nodes = list(&key, value)?,
            "granularity" | "sweep_granularity" => self.granularity = list(&key, value)?,
            "patterns" | "sweep_patterns" => self.patterns = list(&key, value)?,
            "lo" => self.lo = one(&key, value)?,
            "hi" => self.hi = one(&key, value)?,
            "seed" => self.seed = one(&key, value)?,
            "generations" => self.ga.generations = one(&key, value)?,
            "population" | "mu" => self.ga.mu = one(&key, value)?,
            "offspring" | "lambda" => self.ga.lambda = one(&key, value)?,
            "crossover_rate" => self.ga.crossover_rate = one(&key, value)?,
            "mutation_rate" => self.ga.mutation_rate = one(&key, value)?,
            "restarts" => self.ga.restarts = one(&key, value)?,
            "reuse" => self.reuse = one(&key, value)?,
            "compare_reuse" => self.compare_reuse = one(&key, value)?,
            _ => bail!("unknown config key {key:?}"),
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .with_context(|| format!("line {}: expected key = value", no + 1))?;
            cfg.set(key, value).with_context(|| format!("line {}", no + 1))?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn validate(&self) -> Result<()> {
        self.ga.validate()?;
        ensure!(self.hi >= self.lo, "empty demand range [{}, {}]", self.lo, self.hi);
        ensure!(!self.granularity.is_empty() && !self.patterns.is_empty(), "sweep axes must be non-empty");
        ensure!(self.granularity.iter().all(|&g| g > 0), "granularity must be positive");
        ensure!(self.patterns.iter().all(|&m| m > 0), "pattern count must be positive");
        match self.topology {
            TopologyKind::ArbitraryTree => {
                let path = self.edges.as_ref().context("an arbitrary tree needs an edge list")?;
                ensure!(path.exists(), "edge list {} does not exist", path.display());
            }
            _ => {
                ensure!(!self.nodes.is_empty(), "sweep axes must be non-empty");
                ensure!(self.nodes.iter().all(|&n| n >= 2), "need at least 2 nodes");
            }
        }
        Ok(())
    }

    /// The arbitrary tree from the edge list, if that is the topology.
    pub fn edge_tree(&self) -> Result<Option<Topology>> {
        if self.topology != TopologyKind::ArbitraryTree {
            return Ok(None);
        }
        let path = self.edges.as_ref().context("an arbitrary tree needs an edge list")?;
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Ok(Some(Topology::from_edges(&parse_edge_list(&text)?)?))
    }

    /// Cartesian product of the sweep axes, nodes outermost. An edge-list
    /// tree fixes the node axis to its own size.
    pub fn points(&self) -> Result<Vec<SweepPoint>> {
        let nodes = match self.edge_tree()? {
            Some(t) => vec![t.node_count()],
            None => self.nodes.clone(),
        };
        let mut out = Vec::new();
        for &n in &nodes {
            for &g in &self.granularity {
                for &m in &self.patterns {
                    out.push(SweepPoint { nodes: n, granularity: g, patterns: m });
                }
            }
        }
        Ok(out)
    }

    pub fn topology_for(&self, n: usize) -> Result<Topology> {
        match self.edge_tree()? {
            Some(t) => Ok(t),
            None => Ok(Topology::build(self.topology, n)?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_file() {
        let cfg = ExperimentConfig::parse(
            "# star sweep\ntopology = star\nsweep-nodes = 5, 7,9\ngranularity=16\npatterns = 1,2\n\
             population = 30 # small\ncrossover_rate = 0.5\nreuse = false\n",
        )
        .unwrap();
        assert_eq!(cfg.topology, TopologyKind::Star);
        assert_eq!(cfg.nodes, vec![5, 7, 9]);
        assert_eq!(cfg.granularity, vec![16]);
        assert_eq!(cfg.ga.mu, 30);
        assert_eq!(cfg.ga.crossover_rate, 0.5);
        assert!(!cfg.reuse);
        assert_eq!(cfg.points().unwrap().len(), 6);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ExperimentConfig::parse("colour = blue").is_err());
        assert!(ExperimentConfig::parse("nodes 5").is_err());
        assert!(ExperimentConfig::parse("nodes = five").is_err());
        let cfg = ExperimentConfig::parse("topology = tree").unwrap();
        assert!(cfg.validate().is_err());
        let cfg = ExperimentConfig { nodes: vec![], ..ExperimentConfig::default() };
        assert!(cfg.validate().is_err());
    }
}
