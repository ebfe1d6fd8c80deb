//! Exact directed and undirected orbital diameters by iterated sumsets.
//!
//! The directed diameter of the orbital graph with connection set `Δ` is the
//! least `n` with `n·(Δ ∪ {0}) = V`; the undirected diameter symmetrizes the
//! connection set first. The iteration grows `S_n = S_{n-1} ∪ (S_{n-1} + Δ)`
//! and only translates the fresh layer each round. Stagnation before full
//! coverage means `Δ` generates a proper subgroup, i.e. the action is
//! reducible.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::OrbitPartition;
use crate::space::VectorSpace;
use crate::sumset::{or_translated, ConnectionSet, TranslateScratch, VectorSet};

/// Default cap on the naive breadth-first oracle.
pub const DEFAULT_ORACLE_CAP: u64 = 10_000;

/// Diameters of a single orbital graph, with the coverage profile of the
/// sumset iteration (`layers[n]` = points first covered at step `n`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDiameter {
    pub rep: u64,
    pub orbit_size: u64,
    pub directed: u64,
    pub undirected: u64,
    pub directed_layers: Vec<u64>,
    pub undirected_layers: Vec<u64>,
}

/// Per-orbit diameters and the group maxima.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiameterReport {
    pub per_orbit: Vec<OrbitDiameter>,
    /// max over orbits of the directed diameter
    pub diamd: u64,
    /// max over orbits of the undirected diameter
    pub diam: u64,
}

/// Least `n >= 1` with `n·(Δ ∪ {0}) = V`, together with the layer sizes.
pub fn orbit_diameter_directed(
    space: &VectorSpace,
    delta: &ConnectionSet,
) -> Result<(u64, Vec<u64>)> {
    let total = space.size();
    let mut covered = VectorSet::zero_singleton(space);
    let mut frontier = covered.clone();
    let mut scratch = TranslateScratch::new(space);
    let mut layers = vec![1u64];
    let mut covered_count = 1u64;
    let mut n = 0u64;
    loop {
        n += 1;
        let mut next = covered.clone();
        for &d in delta.elements() {
            or_translated(space, &mut next, &frontier, d, &mut scratch);
        }
        let next_count = next.len();
        debug_assert!(covered.is_subset_of(&next));
        debug_assert!(next_count >= covered_count);
        layers.push(next_count - covered_count);
        if next_count == total {
            return Ok((n, layers));
        }
        if next_count == covered_count {
            return Err(Error::Stagnation {
                covered: covered_count,
                total,
            });
        }
        frontier.assign_difference(&next, &covered);
        covered = next;
        covered_count = next_count;
    }
}

/// Least `n >= 1` with `n·(Δ ∪ -Δ ∪ {0}) = V`.
pub fn orbit_diameter_undirected(
    space: &VectorSpace,
    delta: &ConnectionSet,
) -> Result<(u64, Vec<u64>)> {
    orbit_diameter_directed(space, &delta.symmetrized(space))
}

/// Diameters of every nonzero orbital graph, computed per orbit in parallel.
pub fn group_diameters(space: &VectorSpace, orbits: &OrbitPartition) -> Result<DiameterReport> {
    let elements = orbits.elements_by_orbit();
    let ids: Vec<u32> = orbits.nonzero_orbit_ids().collect();
    let per_orbit: Result<Vec<OrbitDiameter>> = ids
        .par_iter()
        .map(|&id| {
            let delta = ConnectionSet::new(space, &elements[id as usize])?;
            let (directed, directed_layers) = orbit_diameter_directed(space, &delta)?;
            let (undirected, undirected_layers) = if delta.is_symmetric() {
                (directed, directed_layers.clone())
            } else {
                orbit_diameter_undirected(space, &delta)?
            };
            debug_assert!(undirected <= directed);
            Ok(OrbitDiameter {
                rep: orbits.reps()[id as usize],
                orbit_size: orbits.sizes()[id as usize],
                directed,
                undirected,
                directed_layers,
                undirected_layers,
            })
        })
        .collect();
    let per_orbit = per_orbit?;
    if per_orbit.is_empty() {
        // dim >= 1 and p >= 2 guarantee a nonzero orbit
        return Err(Error::invalid("no nonzero orbits"));
    }
    let diamd = per_orbit.iter().map(|o| o.directed).max().unwrap();
    let diam = per_orbit.iter().map(|o| o.undirected).max().unwrap();
    Ok(DiameterReport {
        per_orbit,
        diamd,
        diam,
    })
}

/// Higman's criterion, computationally: every nonzero orbital digraph is
/// strongly connected iff no orbit's sumset iteration stagnates.
pub fn check_higman_connectivity(space: &VectorSpace, orbits: &OrbitPartition) -> bool {
    let elements = orbits.elements_by_orbit();
    orbits.nonzero_orbit_ids().all(|id| {
        let delta = ConnectionSet::new(space, &elements[id as usize])
            .expect("orbit elements are nonzero and in range");
        match orbit_diameter_directed(space, &delta) {
            Ok(_) => true,
            Err(Error::Stagnation { .. }) => false,
            Err(_) => unreachable!("sumset iteration only fails by stagnation"),
        }
    })
}

/// Independent oracle: eccentricity of 0 in the Cayley digraph with arcs
/// `x -> x + δ`, by explicit breadth-first search. Cayley digraphs are
/// vertex-transitive, so this eccentricity is the diameter.
pub fn naive_diameter_oracle(space: &VectorSpace, delta: &ConnectionSet) -> Result<u64> {
    naive_eccentricity(space, delta, 0, DEFAULT_ORACLE_CAP)
}

/// Eccentricity of an arbitrary start vertex under the same breadth-first
/// search; exposed so vertex transitivity itself can be spot-checked.
pub fn naive_eccentricity(
    space: &VectorSpace,
    delta: &ConnectionSet,
    start: u64,
    cap: u64,
) -> Result<u64> {
    let total = space.size();
    if total > cap {
        return Err(Error::CapExceeded {
            what: "naive breadth-first oracle",
            cap,
            reached: total,
        });
    }
    let mut dist: Vec<u64> = vec![u64::MAX; total as usize];
    dist[start as usize] = 0;
    let mut seen = 1u64;
    let mut ecc = 0u64;
    let mut queue = VecDeque::new();
    queue.push_back(start);
    while let Some(v) = queue.pop_front() {
        let dv = dist[v as usize];
        for &d in delta.elements() {
            let w = space.add_points(v, d);
            if dist[w as usize] == u64::MAX {
                dist[w as usize] = dv + 1;
                ecc = ecc.max(dv + 1);
                seen += 1;
                queue.push_back(w);
            }
        }
    }
    if seen < total {
        return Err(Error::Stagnation {
            covered: seen,
            total,
        });
    }
    Ok(ecc)
}
