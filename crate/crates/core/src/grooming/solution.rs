use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::state::{Instance, WavelengthState};
use crate::error::{Error, Result};
use crate::topology::NodeId;
use crate::traffic::{demand_index, demand_pair, DemandId};

/// Lexicographic cost: ADMs first, wavelengths second. Smaller is better,
/// so `Ord` sorts the fittest individual first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Fitness {
    pub adms: usize,
    pub wavelengths: usize,
}

impl Fitness {
    pub fn new(adms: usize, wavelengths: usize) -> Self {
        Fitness { adms, wavelengths }
    }

    pub fn is_better_than(&self, other: &Fitness) -> bool {
        self < other
    }
}

impl Ord for Fitness {
    fn cmp(&self, other: &Self) -> Ordering {
        self.adms
            .cmp(&other.adms)
            .then(self.wavelengths.cmp(&other.wavelengths))
    }
}

impl PartialOrd for Fitness {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ADMs / {} wavelengths", self.adms, self.wavelengths)
    }
}

/// Demand-to-wavelength assignment. Counts are derived from the
/// wavelength states on every call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroomingSolution {
    pub(crate) wavelengths: Vec<WavelengthState>,
    pub(crate) assignment: Vec<Option<usize>>,
}

impl GroomingSolution {
    pub fn empty(demands: usize) -> Self {
        GroomingSolution {
            wavelengths: Vec::new(),
            assignment: vec![None; demands],
        }
    }

    /// Non-empty wavelengths in opening order.
    pub fn wavelengths(&self) -> &[WavelengthState] {
        &self.wavelengths
    }

    /// Index into [`wavelengths`](Self::wavelengths) carrying `d`, or
    /// `None` for demands that are zero in every pattern.
    pub fn wavelength_of(&self, d: DemandId) -> Option<usize> {
        self.assignment[d]
    }

    pub fn assignment(&self) -> &[Option<usize>] {
        &self.assignment
    }

    pub fn adm_count(&self) -> usize {
        self.wavelengths.iter().map(WavelengthState::adm_count).sum()
    }

    pub fn wavelength_count(&self) -> usize {
        self.wavelengths.iter().filter(|w| !w.is_empty()).count()
    }

    pub fn fitness(&self) -> Fitness {
        Fitness::new(self.adm_count(), self.wavelength_count())
    }

    /// Builds a solution from explicit per-wavelength demand lists without
    /// any capacity checks; `validate` reports what is wrong with it.
    pub fn from_assignment(instance: &Instance, groups: &[Vec<DemandId>]) -> Result<Self> {
        let mut solution = GroomingSolution::empty(instance.demand_count());
        for group in groups {
            let index = solution.wavelengths.len();
            let mut w = instance.empty_wavelength();
            for &d in group {
                if d >= instance.demand_count() {
                    return Err(Error::Document(format!("demand id {d} out of range")));
                }
                if solution.assignment[d].is_some() {
                    return Err(Error::Document(format!("demand {d} assigned twice")));
                }
                instance.apply(&mut w, d);
                solution.assignment[d] = Some(index);
            }
            solution.wavelengths.push(w);
        }
        Ok(solution)
    }

    pub fn to_document(&self, instance: &Instance) -> SolutionDocument {
        let n = instance.node_count();
        SolutionDocument {
            n,
            granularity: instance.granularity(),
            patterns: instance.pattern_count(),
            adms: self.adm_count(),
            wavelength_count: self.wavelength_count(),
            wavelengths: self
                .wavelengths
                .iter()
                .enumerate()
                .map(|(i, w)| WavelengthDocument {
                    index: i + 1,
                    drop_nodes: w.drop_nodes(),
                    demands: w
                        .assigned()
                        .iter()
                        .map(|&d| {
                            let (src, dst) = demand_pair(n, d);
                            DemandDocument {
                                src,
                                dst,
                                magnitudes: instance.magnitudes(d).to_vec(),
                            }
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    /// Rebuilds the solution against `instance`, recomputing every load
    /// from the instance's traffic. Stored magnitudes are informational.
    pub fn from_document(doc: &SolutionDocument, instance: &Instance) -> Result<Self> {
        let n = instance.node_count();
        if doc.n != n {
            return Err(Error::Document(format!(
                "solution has {} nodes, instance has {n}",
                doc.n
            )));
        }
        let mut groups = Vec::with_capacity(doc.wavelengths.len());
        for w in &doc.wavelengths {
            let mut group = Vec::with_capacity(w.demands.len());
            for dem in &w.demands {
                if dem.src >= n || dem.dst >= n || dem.src == dem.dst {
                    return Err(Error::Document(format!(
                        "bad demand pair ({}, {})",
                        dem.src, dem.dst
                    )));
                }
                group.push(demand_index(n, dem.src, dem.dst));
            }
            groups.push(group);
        }
        let solution = Self::from_assignment(instance, &groups)?;
        for (w, doc_w) in solution.wavelengths.iter().zip(&doc.wavelengths) {
            if doc_w.drop_nodes.iter().any(|&v| v >= n) {
                return Err(Error::Document("drop node out of range".into()));
            }
            if doc_w.drop_nodes != w.drop_nodes() {
                return Err(Error::Document(format!(
                    "wavelength {} lists drop nodes {:?} but its demands terminate at {:?}",
                    doc_w.index,
                    doc_w.drop_nodes,
                    w.drop_nodes()
                )));
            }
        }
        Ok(solution)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionDocument {
    pub n: usize,
    #[serde(rename = "g")]
    pub granularity: u32,
    #[serde(rename = "M")]
    pub patterns: usize,
    pub adms: usize,
    #[serde(rename = "wavelengthCount")]
    pub wavelength_count: usize,
    pub wavelengths: Vec<WavelengthDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WavelengthDocument {
    /// 1-based.
    pub index: usize,
    #[serde(rename = "dropNodes")]
    pub drop_nodes: Vec<NodeId>,
    pub demands: Vec<DemandDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemandDocument {
    pub src: NodeId,
    pub dst: NodeId,
    pub magnitudes: Vec<u32>,
}
