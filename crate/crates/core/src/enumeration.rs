//! Exhaustive enumeration of small systems.
//!
//! The verification suites sweep every partial map and every admissible hull
//! on spaces of up to five points; these iterators produce them in a fixed
//! deterministic order (domains by ascending bit pattern, assignments in
//! mixed-radix order, hulls by ascending bit pattern of their free part).

use crate::dynsys::{PartialMap, SystemWithHull};
use crate::point_set::PointSet;

/// Every partial map on `n` points. There are `Σ_d C(n,d)·n^d` of them.
pub fn all_partial_maps(n: usize) -> Vec<PartialMap> {
    let mut maps = Vec::new();
    for domain in PointSet::full(n).subsets() {
        let dom: Vec<usize> = domain.to_vec();
        let d = dom.len();
        let mut assignment = vec![0usize; d];
        loop {
            let pairs: Vec<(usize, usize)> = dom
                .iter()
                .zip(assignment.iter())
                .map(|(&from, &to)| (from, to))
                .collect();
            maps.push(PartialMap::new(n, &pairs).expect("in range by construction"));
            // next mixed-radix assignment
            let mut i = 0;
            loop {
                if i == d {
                    break;
                }
                assignment[i] += 1;
                if assignment[i] < n {
                    break;
                }
                assignment[i] = 0;
                i += 1;
            }
            if d == 0 || i == d {
                break;
            }
        }
    }
    maps
}

/// Every valid system on `n` points: each partial map paired with every hull
/// `Y` satisfying `Y ∪ φ(Δ) = X`, i.e. `Y = (X ∖ φ(Δ)) ∪ S` for `S ⊆ φ(Δ)`.
pub fn all_valid_systems(n: usize) -> Vec<SystemWithHull> {
    let mut systems = Vec::new();
    for map in all_partial_maps(n) {
        let forced = crate::dynsys::minimal_hull(&map);
        for extra in map.image().subsets() {
            systems.push(SystemWithHull::new(map.clone(), forced.union(extra)));
        }
    }
    systems
}

/// Valid systems whose map has no cycle, i.e. whose extension space is finite.
pub fn all_acyclic_valid_systems(n: usize) -> Vec<SystemWithHull> {
    all_valid_systems(n)
        .into_iter()
        .filter(|s| s.map.cycles().is_empty())
        .collect()
}
