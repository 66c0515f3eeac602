//! Topological freeness outside the hull, and the simplicity classifier.
//!
//! On a finite discrete space "empty interior" degenerates to "empty", so
//! freeness is the emptiness of the obstruction sets `F_k`: periodic points
//! of period `k` whose orbit avoids the hull and whose every orbit vertex has
//! a unique domain preimage (no entrances).  On the extension space the same
//! obstruction appears as an *isolated* periodic strand; the two views must
//! agree, and the test suites check that they do.

use crate::dynsys::{
    is_pointwise_quasinilpotent, minimal_hull, orbit_decomposition, validate_system, OrbitKind,
    SystemWithHull,
};
use crate::error::Result;
use crate::extension::PeriodicStrand;
use crate::lattice::{enumerate_pairs, IdealPair};
use crate::point_set::PointSet;
use std::fmt;

/// `F_k`: points `x` with `φᵏ(x) = x` such that for every `j = 1…k` the full
/// domain preimage of `φʲ(x)` is exactly `{φ^{j-1}(x)}` and lies outside the
/// hull.
pub fn obstruction_set(sys: &SystemWithHull, k: usize) -> PointSet {
    assert!(k >= 1, "period must be positive");
    let mut out = PointSet::EMPTY;
    'points: for x in 0..sys.size() {
        let mut orbit = Vec::with_capacity(k + 1);
        orbit.push(x);
        for _ in 0..k {
            match sys.map.apply(*orbit.last().expect("nonempty")) {
                Some(next) => orbit.push(next),
                None => continue 'points,
            }
        }
        if orbit[k] != x {
            continue;
        }
        for j in 1..=k {
            let expected = PointSet::singleton(orbit[j - 1]);
            if sys.map.preimage_of(PointSet::singleton(orbit[j])) != expected
                || sys.hull.contains(orbit[j - 1])
            {
                continue 'points;
            }
        }
        out.insert(x);
    }
    out
}

/// Periodic strands of primitive period dividing `k` that are isolated points
/// of the extension space.  Isolation holds exactly when every cycle vertex
/// lies outside the hull and has a unique domain preimage: any second branch
/// or hull membership would create a distinct strand in every neighbourhood.
/// One canonical representative per qualifying cycle.
pub fn isolated_periodic_strands(sys: &SystemWithHull, k: usize) -> Vec<PeriodicStrand> {
    assert!(k >= 1, "period must be positive");
    let mut out = Vec::new();
    for cycle in sys.map.cycles() {
        if !k.is_multiple_of(cycle.len()) {
            continue;
        }
        let isolated = cycle.iter().all(|&v| {
            !sys.hull.contains(v) && sys.map.preimage_of(PointSet::singleton(v)).len() == 1
        });
        if !isolated {
            continue;
        }
        // backward traversal, canonicalized by PeriodicStrand::new
        let mut word = vec![cycle[0]];
        for _ in 1..cycle.len() {
            let cur = *word.last().expect("nonempty");
            let pos = cycle.iter().position(|&v| v == cur).expect("on cycle");
            word.push(cycle[(pos + cycle.len() - 1) % cycle.len()]);
        }
        out.push(PeriodicStrand::new(Vec::new(), word));
    }
    out.sort();
    out
}

/// Freeness data for one system.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreenessReport {
    /// `f_sets[k-1]` is the obstruction set for period `k`, `k = 1…n`.
    pub f_sets: Vec<PointSet>,
    pub topologically_free_outside_hull: bool,
    pub periodic_points_exist: bool,
    pub all_ideals_gauge_invariant: bool,
}

/// Compute every field; the period search is bounded by `n` since any cycle
/// has length at most `n`.
pub fn freeness_report(sys: &SystemWithHull) -> Result<FreenessReport> {
    sys.require_valid()?;
    let n = sys.size();
    let f_sets: Vec<PointSet> = (1..=n).map(|k| obstruction_set(sys, k)).collect();
    let topologically_free_outside_hull = f_sets.iter().all(|s| s.is_empty());
    let periodic_points_exist = !sys.map.cycles().is_empty();
    Ok(FreenessReport {
        f_sets,
        topologically_free_outside_hull,
        periodic_points_exist,
        all_ideals_gauge_invariant: !periodic_points_exist,
    })
}

/// Why a system fails to be simple, in checkability order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NonSimplicityWitness {
    /// A pair strictly between bottom and top of the ideal lattice.
    NontrivialPair(IdealPair),
    /// A cycle, listed in forward map order from its least vertex.
    PeriodicOrbit(Vec<usize>),
    /// The hull strictly exceeds the minimal one.
    HullNotMinimal { hull: PointSet, minimal: PointSet },
    /// The zero algebra of the empty system is not simple by convention.
    EmptySpace,
}

impl fmt::Display for NonSimplicityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonSimplicityWitness::NontrivialPair(p) => write!(f, "nontrivial pair {p}"),
            NonSimplicityWitness::PeriodicOrbit(c) => write!(f, "periodic orbit {c:?}"),
            NonSimplicityWitness::HullNotMinimal { hull, minimal } => {
                write!(f, "hull {hull} strictly exceeds minimal hull {minimal}")
            }
            NonSimplicityWitness::EmptySpace => write!(f, "empty point space"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SimplicityVerdict {
    /// The crossed product is the full matrix algebra of this dimension.
    Simple {
        matrix_dimension: usize,
    },
    NotSimple {
        witness: NonSimplicityWitness,
    },
}

impl SimplicityVerdict {
    pub fn is_simple(&self) -> bool {
        matches!(self, SimplicityVerdict::Simple { .. })
    }
}

/// Simple exactly when the hull is minimal, the map is injective and the
/// whole space is a single non-periodic orbit; then the crossed product is
/// the `n × n` matrix algebra.  Otherwise a concrete witness is produced,
/// preferring one the lattice machinery can re-check.
pub fn classify_simplicity(sys: &SystemWithHull) -> Result<SimplicityVerdict> {
    sys.require_valid()?;
    let n = sys.size();
    let minimal = minimal_hull(&sys.map);
    let decomposition = orbit_decomposition(&sys.map, sys.points());
    let single_chain = n >= 1
        && decomposition.orbits.len() == 1
        && decomposition.orbits[0].kind == OrbitKind::Terminating
        && decomposition.orbits[0].points.len() == n;

    if sys.hull == minimal && sys.map.is_injective() && single_chain {
        return Ok(SimplicityVerdict::Simple {
            matrix_dimension: n,
        });
    }

    let lattice = enumerate_pairs(sys)?;
    let witness = if lattice.len() > 2 {
        NonSimplicityWitness::NontrivialPair(lattice.elements[1])
    } else if let Some(cycle) = sys.map.cycles().into_iter().next() {
        NonSimplicityWitness::PeriodicOrbit(cycle)
    } else if sys.hull != minimal {
        NonSimplicityWitness::HullNotMinimal {
            hull: sys.hull,
            minimal,
        }
    } else {
        NonSimplicityWitness::EmptySpace
    };
    Ok(SimplicityVerdict::NotSimple { witness })
}

/// Which branch of the simplicity dichotomy a system sits in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DichotomyBranch {
    /// Iterated domains die out: the dual endomorphism is pointwise
    /// quasinilpotent.
    Quasinilpotent,
    /// The map is surjective: the dual endomorphism is injective.
    Monomorphism,
    Neither,
    /// Only the empty system satisfies both vacuously.
    BothVacuously,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DichotomyReport {
    pub quasinilpotent: bool,
    pub monomorphism: bool,
    pub branch: DichotomyBranch,
    /// For valid systems: a simple verdict must land in exactly one branch.
    pub consistent_with_simplicity: Option<bool>,
}

pub fn dichotomy_report(sys: &SystemWithHull) -> DichotomyReport {
    let quasinilpotent = is_pointwise_quasinilpotent(sys);
    let monomorphism = sys.map.image() == sys.points();
    let branch = match (quasinilpotent, monomorphism) {
        (true, false) => DichotomyBranch::Quasinilpotent,
        (false, true) => DichotomyBranch::Monomorphism,
        (false, false) => DichotomyBranch::Neither,
        (true, true) => DichotomyBranch::BothVacuously,
    };
    let consistent_with_simplicity = if validate_system(sys).is_valid() {
        let simple = classify_simplicity(sys)
            .map(|v| v.is_simple())
            .unwrap_or(false);
        Some(!simple || quasinilpotent != monomorphism)
    } else {
        None
    };
    DichotomyReport {
        quasinilpotent,
        monomorphism,
        branch,
        consistent_with_simplicity,
    }
}
