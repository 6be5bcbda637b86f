use std::fmt;

use super::solution::GroomingSolution;
use crate::topology::{Direction, LinkId, NodeId, Topology};
use crate::traffic::{demand_pair, DemandId, TrafficSet};

/// One broken constraint. Wavelength indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ShapeMismatch {
        detail: String,
    },
    Unassigned {
        demand: DemandId,
        src: NodeId,
        dst: NodeId,
    },
    /// A demand appears on more than one wavelength, or the assignment map
    /// disagrees with the wavelength's demand list.
    InconsistentAssignment {
        demand: DemandId,
    },
    MissingAdm {
        wavelength: usize,
        demand: DemandId,
        node: NodeId,
    },
    LinkOverload {
        wavelength: usize,
        link: LinkId,
        direction: Direction,
        pattern: usize,
        load: u64,
        capacity: u32,
    },
    AddOverload {
        wavelength: usize,
        node: NodeId,
        pattern: usize,
        load: u64,
        capacity: u32,
    },
    DropOverload {
        wavelength: usize,
        node: NodeId,
        pattern: usize,
        load: u64,
        capacity: u32,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ShapeMismatch { detail } => write!(f, "shape mismatch: {detail}"),
            Violation::Unassigned { src, dst, .. } => {
                write!(f, "demand {src}->{dst} is not assigned")
            }
            Violation::InconsistentAssignment { demand } => {
                write!(f, "demand {demand} is assigned inconsistently")
            }
            Violation::MissingAdm { wavelength, demand, node } => write!(
                f,
                "wavelength {wavelength}: demand {demand} terminates at node {node} without an ADM"
            ),
            Violation::LinkOverload { wavelength, link, direction, pattern, load, capacity } => write!(
                f,
                "wavelength {wavelength}: link {link} ({direction}) carries {load} > {capacity} in pattern {pattern}"
            ),
            Violation::AddOverload { wavelength, node, pattern, load, capacity } => write!(
                f,
                "wavelength {wavelength}: node {node} adds {load} > {capacity} in pattern {pattern}"
            ),
            Violation::DropOverload { wavelength, node, pattern, load, capacity } => write!(
                f,
                "wavelength {wavelength}: node {node} drops {load} > {capacity} in pattern {pattern}"
            ),
        }
    }
}

/// Audits `solution` against `traffic` from scratch: routes are recomputed
/// from the topology and loads re-summed per wavelength and pattern.
/// Returns every violation found; empty means feasible.
pub fn validate(solution: &GroomingSolution, traffic: &TrafficSet, topology: &Topology) -> Vec<Violation> {
    let n = traffic.node_count();
    let mut out = Vec::new();
    if topology.node_count() != n || solution.assignment.len() != traffic.demand_count() {
        out.push(Violation::ShapeMismatch {
            detail: format!(
                "traffic has {n} nodes, topology {}, solution covers {} demands",
                topology.node_count(),
                solution.assignment.len()
            ),
        });
        return out;
    }
    let g = traffic.granularity();
    let patterns = traffic.pattern_count();

    let mut seen: Vec<Option<usize>> = vec![None; traffic.demand_count()];
    for (wi, w) in solution.wavelengths.iter().enumerate() {
        for &d in w.assigned() {
            if d >= seen.len() || seen[d].is_some() || solution.assignment[d] != Some(wi) {
                out.push(Violation::InconsistentAssignment { demand: d });
            }
            if d < seen.len() {
                seen[d] = Some(wi);
            }
        }
    }
    for d in 0..traffic.demand_count() {
        if seen[d].is_none() && solution.assignment[d].is_some() {
            out.push(Violation::InconsistentAssignment { demand: d });
        }
        if seen[d].is_none() && traffic.peak(d) > 0 {
            let (src, dst) = demand_pair(n, d);
            out.push(Violation::Unassigned { demand: d, src, dst });
        }
    }

    for (wi, w) in solution.wavelengths.iter().enumerate() {
        let label = wi + 1;
        let mut link = vec![0u64; 2 * topology.link_count() * patterns];
        let mut add = vec![0u64; n * patterns];
        let mut drop = vec![0u64; n * patterns];
        for &d in w.assigned() {
            if d >= traffic.demand_count() {
                continue;
            }
            let (src, dst) = demand_pair(n, d);
            for node in [src, dst] {
                if !w.has_adm(node) {
                    out.push(Violation::MissingAdm { wavelength: label, demand: d, node });
                }
            }
            let route = match topology.route(src, dst) {
                Ok(r) => r,
                Err(_) => continue,
            };
            for m in 0..patterns {
                let r = u64::from(traffic.get(m, src, dst));
                for hop in &route.hops {
                    link[(hop.link * 2 + hop.direction.index()) * patterns + m] += r;
                }
                add[src * patterns + m] += r;
                drop[dst * patterns + m] += r;
            }
        }
        for l in 0..topology.link_count() {
            for direction in Direction::BOTH {
                for m in 0..patterns {
                    let load = link[(l * 2 + direction.index()) * patterns + m];
                    if load > u64::from(g) {
                        out.push(Violation::LinkOverload {
                            wavelength: label,
                            link: l,
                            direction,
                            pattern: m,
                            load,
                            capacity: g,
                        });
                    }
                }
            }
        }
        for v in 0..n {
            for m in 0..patterns {
                let a = add[v * patterns + m];
                if a > u64::from(g) {
                    out.push(Violation::AddOverload { wavelength: label, node: v, pattern: m, load: a, capacity: g });
                }
                let dr = drop[v * patterns + m];
                if dr > u64::from(g) {
                    out.push(Violation::DropOverload { wavelength: label, node: v, pattern: m, load: dr, capacity: g });
                }
            }
        }
    }
    out
}
