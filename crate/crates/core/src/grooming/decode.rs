//! Chromosome decoder: first-fit packing with a greedy improvement scan
//! and, optionally, reuse of previously opened wavelengths.
//!
//! Decoding walks a working copy `order` of the chromosome with a frontier
//! `k` (everything before `k` is placed). For the item at the frontier:
//!
//! 1. zero in every pattern: skip it;
//! 2. with reuse, try every earlier wavelength allowing one new ADM;
//! 3. try the current wavelength allowing two new ADMs. On success, scan
//!    the rest of `order`: each item goes to the current wavelength if it
//!    needs no new ADM there, else (reuse only) to the first earlier
//!    wavelength where it needs no new ADM. Placed items are swapped to the
//!    frontier;
//! 4. otherwise open a new wavelength and retry.
//!
//! The chromosome itself is never rewritten.

use super::solution::GroomingSolution;
use super::state::{Instance, Verdict, WavelengthState};
use crate::error::{Error, Result};
use crate::traffic::DemandId;

/// Counters gathered while decoding.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DecodeStats {
    pub checks: u64,
    /// Rejections by a leaf's add/drop budget after its links had room.
    /// Leaf add/drop volume equals its single link's load, so this stays 0.
    pub leaf_add_drop_rejections: u64,
    /// Rejections by an internal node's add/drop budget.
    pub internal_add_drop_rejections: u64,
}

struct Decoder<'a> {
    instance: &'a Instance,
    stats: DecodeStats,
}

impl Decoder<'_> {
    fn fits(&mut self, w: &WavelengthState, d: DemandId, max_new_adms: u8) -> bool {
        self.stats.checks += 1;
        match self.instance.check(w, d, max_new_adms) {
            Verdict::Fits => true,
            Verdict::AddFull { node, .. } | Verdict::DropFull { node, .. } => {
                if self.instance.is_leaf(node) {
                    self.stats.leaf_add_drop_rejections += 1;
                } else {
                    self.stats.internal_add_drop_rejections += 1;
                }
                false
            }
            Verdict::TooManyAdms | Verdict::LinkFull { .. } => false,
        }
    }

    fn reuse_target(&mut self, wavelengths: &[WavelengthState], d: DemandId, max_new_adms: u8) -> Option<usize> {
        (0..wavelengths.len()).find(|&f| self.fits(&wavelengths[f], d, max_new_adms))
    }
}

/// Checks that `chromosome` is a permutation of `0..n`.
pub fn check_permutation(chromosome: &[usize], n: usize) -> Result<()> {
    if chromosome.len() != n {
        return Err(Error::NotAPermutation(n));
    }
    let mut seen = vec![false; n];
    for &g in chromosome {
        if g >= n || std::mem::replace(&mut seen[g], true) {
            return Err(Error::NotAPermutation(n));
        }
    }
    Ok(())
}

pub fn decode(instance: &Instance, chromosome: &[DemandId], reuse: bool) -> Result<GroomingSolution> {
    decode_with_stats(instance, chromosome, reuse).map(|(s, _)| s)
}

pub fn decode_with_stats(
    instance: &Instance,
    chromosome: &[DemandId],
    reuse: bool,
) -> Result<(GroomingSolution, DecodeStats)> {
    let total = instance.demand_count();
    check_permutation(chromosome, total)?;

    let mut dec = Decoder {
        instance,
        stats: DecodeStats::default(),
    };
    let mut solution = GroomingSolution::empty(total);
    let mut order = chromosome.to_vec();
    // `done` holds every wavelength before the current one.
    let mut done: Vec<WavelengthState> = Vec::new();
    let mut current = instance.empty_wavelength();
    let mut k = 0;

    while k < total {
        let d = order[k];
        if instance.is_zero(d) {
            k += 1;
            continue;
        }

        if reuse {
            if let Some(f) = dec.reuse_target(&done, d, 1) {
                instance.assign(&mut done[f], d);
                solution.assignment[d] = Some(f);
                k += 1;
                continue;
            }
        }

        if dec.fits(&current, d, 2) {
            let here = done.len();
            instance.assign(&mut current, d);
            solution.assignment[d] = Some(here);
            k += 1;

            for l in k..total {
                let e = order[l];
                if instance.is_zero(e) {
                    continue;
                }
                let placed = if dec.fits(&current, e, 0) {
                    instance.assign(&mut current, e);
                    solution.assignment[e] = Some(here);
                    true
                } else if let Some(f) = reuse.then(|| dec.reuse_target(&done, e, 0)).flatten() {
                    instance.assign(&mut done[f], e);
                    solution.assignment[e] = Some(f);
                    true
                } else {
                    false
                };
                if placed {
                    order.swap(l, k);
                    k += 1;
                }
            }
        } else {
            if current.is_empty() {
                let r = instance.magnitudes(d).iter().copied().max().unwrap_or(0);
                return Err(Error::DemandExceedsCapacity {
                    demand: d,
                    magnitude: r,
                    granularity: instance.granularity(),
                });
            }
            done.push(std::mem::replace(&mut current, instance.empty_wavelength()));
        }
    }
    if !current.is_empty() {
        done.push(current);
    }
    solution.wavelengths = done;
    Ok((solution, dec.stats))
}
