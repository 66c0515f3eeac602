//! Finite partial dynamical systems.
//!
//! A system is a finite point space `X = {0, …, n-1}`, a partial map
//! `φ : Δ → X` defined on a subset `Δ ⊆ X`, and a hull set `Y ⊆ X`.  The
//! triple is *valid* when `Y ∪ φ(Δ) = X`; that equality is the condition under
//! which the hull encodes an admissible relative ideal for the crossed product
//! the rest of the crate analyses.  On a finite discrete space every subset is
//! clopen and closure operators are identities, so everything here is plain
//! set combinatorics over bitsets.

use crate::error::{Error, Result};
use crate::point_set::{PointSet, MAX_POINTS};
use std::fmt;

/// A partial self-map of `{0, …, n-1}`: total on `domain`, undefined elsewhere.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialMap {
    size: usize,
    domain: PointSet,
    targets: Vec<Option<usize>>,
}

impl PartialMap {
    /// Build from `(from, to)` pairs. The domain is exactly the set of `from`
    /// points; duplicates and out-of-range indices are rejected.
    pub fn new(size: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if size > MAX_POINTS {
            return Err(Error::TooManyPoints {
                n: size,
                max: MAX_POINTS,
            });
        }
        let mut targets = vec![None; size];
        let mut domain = PointSet::EMPTY;
        for &(from, to) in pairs {
            if from >= size {
                return Err(Error::PointOutOfRange {
                    point: from,
                    n: size,
                });
            }
            if to >= size {
                return Err(Error::PointOutOfRange { point: to, n: size });
            }
            if domain.contains(from) {
                return Err(Error::DuplicateMapEntry { point: from });
            }
            domain.insert(from);
            targets[from] = Some(to);
        }
        Ok(PartialMap {
            size,
            domain,
            targets,
        })
    }

    /// The empty map on `size` points.
    pub fn empty(size: usize) -> Self {
        PartialMap::new(size, &[]).expect("size checked by caller")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn domain(&self) -> PointSet {
        self.domain
    }

    /// `φ(x)`, or `None` when `x ∉ Δ`.
    pub fn apply(&self, x: usize) -> Option<usize> {
        self.targets.get(x).copied().flatten()
    }

    /// `φᵏ(x)` when all intermediate iterates stay in `Δ`.
    pub fn apply_iter(&self, x: usize, k: usize) -> Option<usize> {
        let mut cur = x;
        for _ in 0..k {
            cur = self.apply(cur)?;
        }
        Some(cur)
    }

    /// `φ(S ∩ Δ)`.
    pub fn image_of(&self, s: PointSet) -> PointSet {
        s.intersect(self.domain)
            .iter()
            .map(|x| self.targets[x].expect("domain member"))
            .collect()
    }

    /// `φ(Δ)`, the full image.
    pub fn image(&self) -> PointSet {
        self.image_of(self.domain)
    }

    /// `φ⁻¹(S) = { x ∈ Δ : φ(x) ∈ S }`.
    pub fn preimage_of(&self, s: PointSet) -> PointSet {
        self.domain
            .iter()
            .filter(|&x| s.contains(self.targets[x].expect("domain member")))
            .collect()
    }

    /// Iterated domain `Δ_k`: `Δ_0 = X`, `Δ_k = φ⁻¹(Δ_{k-1}) ∩ Δ`.
    /// Decreasing in `k` and stable after at most `size` steps.
    pub fn iterated_domain(&self, k: usize) -> PointSet {
        let mut d = PointSet::full(self.size);
        for _ in 0..k {
            if d == self.domain && self.preimage_of(d) == d {
                break; // already stable
            }
            d = self.preimage_of(d).intersect(self.domain);
        }
        d
    }

    /// True when `φ` is injective on `Δ`, i.e. the system is reversible (the
    /// map is a partial bijection between clopen subsets of the finite space).
    pub fn is_injective(&self) -> bool {
        let mut seen = PointSet::EMPTY;
        for x in self.domain.iter() {
            let y = self.targets[x].expect("domain member");
            if seen.contains(y) {
                return false;
            }
            seen.insert(y);
        }
        true
    }

    /// All primitive cycles of `φ`, each listed in forward `φ`-order starting
    /// from its least vertex, sorted by least vertex.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut on_cycle = PointSet::EMPTY;
        let mut cycles = Vec::new();
        for start in 0..self.size {
            if on_cycle.contains(start) {
                continue;
            }
            // Walk forward; a revisit inside the walk closes a cycle.
            let mut path = Vec::new();
            let mut seen = PointSet::EMPTY;
            let mut cur = start;
            loop {
                if seen.contains(cur) {
                    let pos = path.iter().position(|&p| p == cur).expect("seen");
                    let cycle: Vec<usize> = path[pos..].to_vec();
                    if !on_cycle.contains(cur) {
                        for &v in &cycle {
                            on_cycle.insert(v);
                        }
                        let least = cycle
                            .iter()
                            .enumerate()
                            .min_by_key(|&(_, &v)| v)
                            .map(|(i, _)| i)
                            .expect("nonempty");
                        let mut rotated = cycle[least..].to_vec();
                        rotated.extend_from_slice(&cycle[..least]);
                        cycles.push(rotated);
                    }
                    break;
                }
                seen.insert(cur);
                path.push(cur);
                match self.apply(cur) {
                    Some(next) => cur = next,
                    None => break,
                }
            }
        }
        cycles.sort_by_key(|c| c[0]);
        cycles
    }

    /// Union of all cycle vertex sets.
    pub fn cycle_points(&self) -> PointSet {
        self.cycles().iter().flatten().copied().collect()
    }
}

impl fmt::Debug for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialMap(n={}; ", self.size)?;
        for (i, x) in self.domain.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}→{}", x, self.targets[x].expect("domain member"))?;
        }
        write!(f, ")")
    }
}

/// A partial dynamical system together with its hull set.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SystemWithHull {
    pub map: PartialMap,
    pub hull: PointSet,
}

impl SystemWithHull {
    /// No validity requirement at construction: repairing an inadmissible
    /// hull is itself an operation (see [`crate::lattice::reduce_system`]).
    pub fn new(map: PartialMap, hull: PointSet) -> Self {
        SystemWithHull { map, hull }
    }

    pub fn size(&self) -> usize {
        self.map.size()
    }

    pub fn points(&self) -> PointSet {
        PointSet::full(self.size())
    }

    pub fn iterated_domain(&self, k: usize) -> PointSet {
        self.map.iterated_domain(k)
    }

    /// Error out unless `validate_system` passes.
    pub fn require_valid(&self) -> Result<()> {
        let report = validate_system(self);
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidSystem(report))
        }
    }
}

/// One violated validity condition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    /// `Y ∪ φ(Δ) = X` fails; carries the uncovered points.
    HullConditionFailed { uncovered: PointSet },
    /// Hull contains indices `≥ n`.
    HullOutOfRange { points: PointSet },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::HullConditionFailed { uncovered } => write!(
                f,
                "hull ∪ φ(Δ) does not cover the space; missing {uncovered}"
            ),
            Violation::HullOutOfRange { points } => {
                write!(f, "hull points {points} out of range")
            }
        }
    }
}

/// Outcome of `validate_system`: valid iff no violations.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Check every validity condition and report each violation.
///
/// The map being defined exactly on its domain and in-range is enforced by
/// `PartialMap` construction, so only the hull conditions can fail here.
pub fn validate_system(sys: &SystemWithHull) -> ValidationReport {
    let mut violations = Vec::new();
    let space = sys.points();
    let out_of_range = sys.hull.minus(space);
    if !out_of_range.is_empty() {
        violations.push(Violation::HullOutOfRange {
            points: out_of_range,
        });
    }
    let covered = sys.hull.intersect(space).union(sys.map.image());
    let uncovered = space.minus(covered);
    if !uncovered.is_empty() {
        violations.push(Violation::HullConditionFailed { uncovered });
    }
    ValidationReport { violations }
}

/// `X ∖ φ(Δ)`: the least hull making the system valid.  It is the hull of the
/// annihilator of the kernel, i.e. the choice giving the unrelative crossed
/// product.
pub fn minimal_hull(map: &PartialMap) -> PointSet {
    map.image().complement(map.size())
}

/// `φ(V ∩ Δ) ⊆ V`.
pub fn is_positively_invariant(sys: &SystemWithHull, v: PointSet) -> bool {
    sys.map.image_of(v).is_subset(v)
}

/// Finite-space criterion for the dual endomorphism being pointwise
/// quasinilpotent: the iterated domains `Δ_k` reach `∅` within `n` steps.
pub fn is_pointwise_quasinilpotent(sys: &SystemWithHull) -> bool {
    let n = sys.size();
    (0..=n).any(|k| sys.iterated_domain(k).is_empty())
}

/// How a forward orbit walk ends.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrbitKind {
    /// The walk left `Δ` (or handed over to a previously found orbit).
    Terminating,
    /// The walk closed on its own starting point.
    PureCycle,
    /// The walk entered a cycle after a nonempty tail.
    TailIntoCycle,
}

/// One maximal forward `φ`-path found by `orbit_decomposition`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Orbit {
    /// Consecutive points satisfy `φ(p_i) = p_{i+1}` while `p_i ∈ Δ`.
    pub points: Vec<usize>,
    pub kind: OrbitKind,
    /// Length of the terminal cycle, when one exists.
    pub cycle_length: Option<usize>,
    /// Entrances of the cycle (of the whole path for terminating orbits):
    /// domain points outside the reference set mapping into it.
    pub entrances: PointSet,
}

impl Orbit {
    /// The cycle portion of the path, empty for terminating orbits.
    pub fn cycle(&self) -> &[usize] {
        match self.cycle_length {
            Some(len) => &self.points[self.points.len() - len..],
            None => &[],
        }
    }
}

/// Forward-orbit structure of the chosen seeds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrbitDecomposition {
    pub orbits: Vec<Orbit>,
}

/// Forward-iterate each seed until it leaves `Δ` or revisits a point.
///
/// Seeds are processed in ascending order.  A walk reaching the *start* of a
/// previously found orbit is prepended onto it, which keeps each orbit a
/// genuine `φ`-path; a walk reaching the interior of another orbit stops
/// there (paths cannot overlap), recorded as terminating.
pub fn orbit_decomposition(map: &PartialMap, seeds: PointSet) -> OrbitDecomposition {
    let mut orbits: Vec<Orbit> = Vec::new();
    let mut assigned = PointSet::EMPTY;
    let seeds = seeds.intersect(PointSet::full(map.size()));

    for seed in seeds.iter() {
        if assigned.contains(seed) {
            continue;
        }
        let mut path = vec![seed];
        let mut on_path = PointSet::singleton(seed);
        let (kind, cycle_length) = loop {
            let cur = *path.last().expect("nonempty");
            let Some(next) = map.apply(cur) else {
                break (OrbitKind::Terminating, None);
            };
            if on_path.contains(next) {
                let pos = path.iter().position(|&p| p == next).expect("on path");
                let len = path.len() - pos;
                let kind = if pos == 0 {
                    OrbitKind::PureCycle
                } else {
                    OrbitKind::TailIntoCycle
                };
                break (kind, Some(len));
            }
            if assigned.contains(next) {
                // Merge if we hit the start of an earlier orbit.
                if let Some(target) = orbits.iter_mut().find(|o| o.points[0] == next) {
                    let mut joined = path.clone();
                    joined.extend_from_slice(&target.points);
                    target.points = joined;
                    if target.kind == OrbitKind::PureCycle {
                        target.kind = OrbitKind::TailIntoCycle;
                    }
                    for &p in &path {
                        assigned.insert(p);
                    }
                    path.clear();
                    break (OrbitKind::Terminating, None);
                }
                break (OrbitKind::Terminating, None);
            }
            path.push(next);
            on_path.insert(next);
        };
        if path.is_empty() {
            continue; // merged into an earlier orbit
        }
        for &p in &path {
            assigned.insert(p);
        }
        orbits.push(Orbit {
            points: path,
            kind,
            cycle_length,
            entrances: PointSet::EMPTY,
        });
    }

    for orbit in &mut orbits {
        let reference: PointSet = if orbit.cycle_length.is_some() {
            orbit.cycle().iter().copied().collect()
        } else {
            orbit.points.iter().copied().collect()
        };
        orbit.entrances = map
            .domain()
            .iter()
            .filter(|&y| !reference.contains(y))
            .filter(|&y| reference.contains(map.apply(y).expect("domain member")))
            .collect();
    }

    OrbitDecomposition { orbits }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain() -> SystemWithHull {
        // 2 → 1 → 0, Δ = {1,2}, Y = {2}
        let map = PartialMap::new(3, &[(1, 0), (2, 1)]).unwrap();
        SystemWithHull::new(map, PointSet::from_indices(&[2]))
    }

    fn loop_sys(hull: &[usize]) -> SystemWithHull {
        // φ(0)=0, φ(1)=0, φ(2)=1, Δ = X
        let map = PartialMap::new(3, &[(0, 0), (1, 0), (2, 1)]).unwrap();
        SystemWithHull::new(map, PointSet::from_indices(hull))
    }

    fn three_cycle() -> SystemWithHull {
        let map = PartialMap::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        SystemWithHull::new(map, PointSet::EMPTY)
    }

    #[test]
    fn validate_chain() {
        assert!(validate_system(&chain()).is_valid());
    }

    #[test]
    fn validate_missing_hull_point() {
        let map = PartialMap::new(3, &[(1, 0), (2, 1)]).unwrap();
        let sys = SystemWithHull::new(map, PointSet::EMPTY);
        let report = validate_system(&sys);
        assert!(!report.is_valid());
        assert_eq!(
            report.violations,
            vec![Violation::HullConditionFailed {
                uncovered: PointSet::from_indices(&[2])
            }]
        );
    }

    #[test]
    fn validate_empty_domain_full_hull() {
        let sys = SystemWithHull::new(PartialMap::empty(4), PointSet::full(4));
        assert!(validate_system(&sys).is_valid());
    }

    #[test]
    fn minimal_hull_examples() {
        assert_eq!(minimal_hull(&chain().map), PointSet::from_indices(&[2]));
        assert_eq!(minimal_hull(&three_cycle().map), PointSet::EMPTY);
        assert_eq!(minimal_hull(&PartialMap::empty(3)), PointSet::full(3));
    }

    #[test]
    fn iterated_domain_chain() {
        let sys = chain();
        assert_eq!(sys.iterated_domain(0), PointSet::full(3));
        assert_eq!(sys.iterated_domain(1), PointSet::from_indices(&[1, 2]));
        assert_eq!(sys.iterated_domain(2), PointSet::from_indices(&[2]));
        assert_eq!(sys.iterated_domain(3), PointSet::EMPTY);
        assert_eq!(sys.iterated_domain(7), PointSet::EMPTY);
    }

    #[test]
    fn iterated_domain_total_maps() {
        let cycle = three_cycle();
        let lp = loop_sys(&[2]);
        for k in 0..6 {
            assert_eq!(cycle.iterated_domain(k), PointSet::full(3));
            assert_eq!(lp.iterated_domain(k), PointSet::full(3));
        }
    }

    #[test]
    fn positively_invariant_examples() {
        let sys = loop_sys(&[2]);
        assert!(is_positively_invariant(
            &sys,
            PointSet::from_indices(&[0, 1])
        ));
        assert!(!is_positively_invariant(&sys, PointSet::from_indices(&[1])));
        assert!(is_positively_invariant(&sys, PointSet::EMPTY));
    }

    #[test]
    fn quasinilpotent_examples() {
        assert!(is_pointwise_quasinilpotent(&chain()));
        assert!(!is_pointwise_quasinilpotent(&three_cycle()));
        let empty_map = SystemWithHull::new(PartialMap::empty(3), PointSet::full(3));
        assert!(is_pointwise_quasinilpotent(&empty_map));
    }

    #[test]
    fn orbit_chain_terminates() {
        let dec = orbit_decomposition(&chain().map, PointSet::from_indices(&[2]));
        assert_eq!(dec.orbits.len(), 1);
        let o = &dec.orbits[0];
        assert_eq!(o.points, vec![2, 1, 0]);
        assert_eq!(o.kind, OrbitKind::Terminating);
        assert_eq!(o.cycle_length, None);
        assert!(o.entrances.is_empty());
    }

    #[test]
    fn orbit_loop_tail_into_cycle() {
        let dec = orbit_decomposition(&loop_sys(&[2]).map, PointSet::from_indices(&[2]));
        assert_eq!(dec.orbits.len(), 1);
        let o = &dec.orbits[0];
        assert_eq!(o.points, vec![2, 1, 0]);
        assert_eq!(o.kind, OrbitKind::TailIntoCycle);
        assert_eq!(o.cycle_length, Some(1));
        assert_eq!(o.entrances, PointSet::from_indices(&[1]));
    }

    #[test]
    fn orbit_identity_point() {
        let map = PartialMap::new(1, &[(0, 0)]).unwrap();
        let dec = orbit_decomposition(&map, PointSet::full(1));
        assert_eq!(dec.orbits.len(), 1);
        let o = &dec.orbits[0];
        assert_eq!(o.points, vec![0]);
        assert_eq!(o.kind, OrbitKind::PureCycle);
        assert_eq!(o.cycle_length, Some(1));
        assert!(o.entrances.is_empty());
    }

    #[test]
    fn orbit_merge_keeps_paths() {
        // Seeds in ascending order stitch the chain back together.
        let dec = orbit_decomposition(&chain().map, PointSet::full(3));
        assert_eq!(dec.orbits.len(), 1);
        assert_eq!(dec.orbits[0].points, vec![2, 1, 0]);
    }

    #[test]
    fn cycles_detection() {
        assert_eq!(three_cycle().map.cycles(), vec![vec![0, 1, 2]]);
        assert_eq!(loop_sys(&[2]).map.cycles(), vec![vec![0]]);
        assert!(chain().map.cycles().is_empty());
    }

    #[test]
    fn minimal_hull_is_least_valid_exhaustive() {
        for n in 0..=4 {
            for sys in crate::enumeration::all_partial_maps(n) {
                let min = minimal_hull(&sys);
                for hull in PointSet::full(n).subsets() {
                    let s = SystemWithHull::new(sys.clone(), hull);
                    let valid = validate_system(&s).is_valid();
                    assert_eq!(valid, min.is_subset(hull), "hull {hull} map {sys:?}");
                }
            }
        }
    }
}
