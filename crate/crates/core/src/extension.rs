//! The reversible extension of a system, presented as a strand space.
//!
//! A point of the extension is a backward orbit of the base map: a sequence
//! `(x_0, x_1, …)` with `φ(x_k) = x_{k-1}`.  Finite strands end in a hull
//! point; infinite strands over a finite space are eventually (in fact
//! purely) periodic as sequences and are stored as a preperiod plus a cycle
//! word.  The shift prepends `φ(x_0)` and its inverse drops `x_0`, which
//! makes the extension a partial bijection even when the base map is not.
//!
//! Two independent constructions are provided: direct strand enumeration and
//! the tower of approximation spaces glued by bonding maps.  `thread_check`
//! verifies they agree; the tests lean on this as an oracle.

use crate::dynsys::SystemWithHull;
use crate::error::{Error, Result};
use crate::point_set::PointSet;
use std::fmt;

/// A finite backward orbit `(x_0, …, x_N)`: `φ(x_k) = x_{k-1}` for `k ≥ 1`
/// and `x_N` lies in the hull.  The *length* is `N`, one less than the
/// number of coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Strand {
    pub coords: Vec<usize>,
}

impl Strand {
    pub fn length(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn first(&self) -> usize {
        self.coords[0]
    }

    pub fn terminal(&self) -> usize {
        *self.coords.last().expect("strands are nonempty")
    }

    /// Check the strand conditions against a concrete system.
    pub fn is_valid_for(&self, sys: &SystemWithHull) -> bool {
        if self.coords.is_empty() {
            return false;
        }
        if !sys.hull.contains(self.terminal()) {
            return false;
        }
        self.coords
            .windows(2)
            .all(|w| sys.map.apply(w[1]) == Some(w[0]))
    }
}

impl fmt::Display for Strand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// An eventually periodic backward orbit, stored canonically: the cycle word
/// is primitive and the lexicographically least among its rotations, and the
/// preperiod is the shortest prefix realizing the sequence with that word.
///
/// The sequence it denotes is `preperiod` followed by `cycle` repeated
/// forever; the cycle word reads the underlying `φ`-cycle backward.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PeriodicStrand {
    pub preperiod: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl PeriodicStrand {
    /// Canonicalize an arbitrary `(preperiod, cycle)` presentation.
    pub fn new(preperiod: Vec<usize>, cycle: Vec<usize>) -> Self {
        assert!(!cycle.is_empty(), "cycle word must be nonempty");
        let (p, c) = canonical_form(preperiod, cycle);
        PeriodicStrand {
            preperiod: p,
            cycle: c,
        }
    }

    /// `x_k` of the denoted sequence.
    pub fn at(&self, k: usize) -> usize {
        if k < self.preperiod.len() {
            self.preperiod[k]
        } else {
            self.cycle[(k - self.preperiod.len()) % self.cycle.len()]
        }
    }

    pub fn first(&self) -> usize {
        self.at(0)
    }

    pub fn period(&self) -> usize {
        self.cycle.len()
    }

    /// Check the backward-orbit conditions against a concrete system.  One
    /// preperiod plus one full period of index pairs covers every distinct
    /// transition of the sequence.
    pub fn is_valid_for(&self, sys: &SystemWithHull) -> bool {
        let horizon = self.preperiod.len() + self.cycle.len();
        (1..=horizon).all(|k| sys.map.apply(self.at(k)) == Some(self.at(k - 1)))
    }
}

impl fmt::Display for PeriodicStrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.preperiod.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "|")?;
        for (i, x) in self.cycle.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Reduce a cycle word to its primitive root.
fn primitive_root(cycle: &[usize]) -> Vec<usize> {
    let len = cycle.len();
    for d in 1..=len {
        if !len.is_multiple_of(d) {
            continue;
        }
        let root = &cycle[..d];
        if cycle.chunks(d).all(|chunk| chunk == root) {
            return root.to_vec();
        }
    }
    unreachable!("d = len always matches")
}

/// Canonical `(preperiod, cycle)` for the sequence `preperiod · cycle^∞`.
fn canonical_form(mut pre: Vec<usize>, cycle: Vec<usize>) -> (Vec<usize>, Vec<usize>) {
    let mut cyc = primitive_root(&cycle);
    // Shrink the preperiod: absorbing a trailing element that matches the
    // cycle's last entry rotates the cycle right without changing the
    // sequence.
    while let Some(&last) = pre.last() {
        if last == *cyc.last().expect("nonempty") {
            pre.pop();
            let tail = cyc.pop().expect("nonempty");
            cyc.insert(0, tail);
        } else {
            break;
        }
    }
    // Rotate the cycle word to its lexicographically least rotation; the
    // rotation offset moves into the preperiod.
    let len = cyc.len();
    let best = (0..len)
        .min_by_key(|&r| {
            let mut rot = cyc[r..].to_vec();
            rot.extend_from_slice(&cyc[..r]);
            rot
        })
        .expect("nonempty");
    pre.extend_from_slice(&cyc[..best]);
    let mut canonical = cyc[best..].to_vec();
    canonical.extend_from_slice(&cyc[..best]);
    (pre, canonical)
}

/// A point of the extension space: a finite strand or a periodic one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ExtPoint {
    Finite(Strand),
    Periodic(PeriodicStrand),
}

impl ExtPoint {
    pub fn first(&self) -> usize {
        match self {
            ExtPoint::Finite(s) => s.first(),
            ExtPoint::Periodic(p) => p.first(),
        }
    }

    pub fn is_valid_for(&self, sys: &SystemWithHull) -> bool {
        match self {
            ExtPoint::Finite(s) => s.is_valid_for(sys),
            ExtPoint::Periodic(p) => p.is_valid_for(sys),
        }
    }
}

impl fmt::Display for ExtPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtPoint::Finite(s) => write!(f, "{s}"),
            ExtPoint::Periodic(p) => write!(f, "{p}"),
        }
    }
}

/// All strands of length `≤ depth`, ordered by ascending terminal point and
/// then ascending length.  A strand is determined by its terminal hull point
/// `y` and its length `N` (the other coordinates are the forward iterates of
/// `y`), so the enumeration extends each `y` forward while the front stays in
/// the domain.
pub fn build_strands(sys: &SystemWithHull, depth: usize) -> Result<Vec<Strand>> {
    sys.require_valid()?;
    let mut out = Vec::new();
    for y in sys.hull.iter() {
        let mut coords = vec![y];
        out.push(Strand {
            coords: coords.clone(),
        });
        for _ in 1..=depth {
            let front = coords[0];
            match sys.map.apply(front) {
                Some(image) => {
                    coords.insert(0, image);
                    out.push(Strand {
                        coords: coords.clone(),
                    });
                }
                None => break,
            }
        }
    }
    Ok(out)
}

/// Points of the base space admitting arbitrarily long backward chains inside
/// the domain: the greatest fixpoint of `W ↦ φ(Δ ∩ W)`.
pub fn infinite_core(sys: &SystemWithHull) -> PointSet {
    let mut w = sys.points();
    loop {
        let next = sys.map.image_of(w);
        if next == w {
            return w;
        }
        w = next;
    }
}

/// The infinite part of the extension: the core vertex set together with all
/// eventually periodic backward strands whose canonical preperiod is at most
/// `preperiod_cap`.  Each rotation of a backward cycle is a distinct point
/// and is listed once, in canonical form.
pub fn infinite_strands(
    sys: &SystemWithHull,
    preperiod_cap: usize,
) -> Result<(PointSet, Vec<PeriodicStrand>)> {
    sys.require_valid()?;
    let core = infinite_core(sys);
    let mut words: Vec<Vec<usize>> = sys
        .map
        .cycles()
        .iter()
        .map(|forward| {
            // Backward traversal: start anywhere, then repeatedly take the
            // cycle predecessor; canonical_form picks the least rotation.
            let mut word = vec![forward[0]];
            for _ in 1..forward.len() {
                let cur = *word.last().expect("nonempty");
                let pos = forward.iter().position(|&v| v == cur).expect("on cycle");
                let pred = forward[(pos + forward.len() - 1) % forward.len()];
                word.push(pred);
            }
            let (_, canon) = canonical_form(Vec::new(), word);
            canon
        })
        .collect();
    words.sort();

    let mut strands = Vec::new();
    for word in words {
        let len = word.len();
        // Rotation offsets by ascending preperiod length: the point starting
        // at word[j] has preperiod word[j..].
        let mut offsets: Vec<usize> = (0..len).collect();
        offsets.sort_by_key(|&j| if j == 0 { 0 } else { len - j });
        for j in offsets {
            let pre = if j == 0 {
                Vec::new()
            } else {
                word[j..].to_vec()
            };
            if pre.len() > preperiod_cap {
                continue;
            }
            strands.push(PeriodicStrand::new(pre, word.clone()));
        }
    }
    Ok((core, strands))
}

/// The extension's shift: prepend `φ(x_0)`.  `None` when `x_0` is outside the
/// domain; `Err` when the input is not a point of this system's extension.
pub fn extended_map(sys: &SystemWithHull, point: &ExtPoint) -> Result<Option<ExtPoint>> {
    check_point(sys, point)?;
    let x0 = point.first();
    let Some(image) = sys.map.apply(x0) else {
        return Ok(None);
    };
    Ok(Some(match point {
        ExtPoint::Finite(s) => {
            let mut coords = vec![image];
            coords.extend_from_slice(&s.coords);
            ExtPoint::Finite(Strand { coords })
        }
        ExtPoint::Periodic(p) => {
            let mut pre = vec![image];
            pre.extend_from_slice(&p.preperiod);
            ExtPoint::Periodic(PeriodicStrand::new(pre, p.cycle.clone()))
        }
    }))
}

/// The shift's inverse: drop `x_0`.  Defined on strands of length `≥ 1` and
/// on every periodic strand.
pub fn extended_map_inverse(sys: &SystemWithHull, point: &ExtPoint) -> Result<Option<ExtPoint>> {
    check_point(sys, point)?;
    Ok(match point {
        ExtPoint::Finite(s) => {
            if s.coords.len() >= 2 {
                Some(ExtPoint::Finite(Strand {
                    coords: s.coords[1..].to_vec(),
                }))
            } else {
                None
            }
        }
        ExtPoint::Periodic(p) => {
            let (pre, cycle) = if p.preperiod.is_empty() {
                (p.cycle[1..].to_vec(), p.cycle.clone())
            } else {
                (p.preperiod[1..].to_vec(), p.cycle.clone())
            };
            Some(ExtPoint::Periodic(PeriodicStrand::new(pre, cycle)))
        }
    })
}

fn check_point(sys: &SystemWithHull, point: &ExtPoint) -> Result<()> {
    if point.is_valid_for(sys) {
        Ok(())
    } else {
        Err(Error::MalformedExtensionPoint {
            reason: format!("{point} is not a backward orbit of this system"),
        })
    }
}

/// A truncated model of the whole extension space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtensionTruncation {
    pub finite_points: Vec<Strand>,
    pub periodic_points: Vec<PeriodicStrand>,
    pub infinite_core: PointSet,
    pub depth: usize,
}

impl ExtensionTruncation {
    pub fn points(&self) -> impl Iterator<Item = ExtPoint> + '_ {
        self.finite_points
            .iter()
            .cloned()
            .map(ExtPoint::Finite)
            .chain(self.periodic_points.iter().cloned().map(ExtPoint::Periodic))
    }

    pub fn len(&self) -> usize {
        self.finite_points.len() + self.periodic_points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Assemble the truncated extension at the given depth; periodic preperiods
/// are capped by the same depth.
pub fn truncate_extension(sys: &SystemWithHull, depth: usize) -> Result<ExtensionTruncation> {
    let finite_points = build_strands(sys, depth)?;
    let (infinite_core, periodic_points) = infinite_strands(sys, depth)?;
    Ok(ExtensionTruncation {
        finite_points,
        periodic_points,
        infinite_core,
        depth,
    })
}

/// Default truncation depth: `2n + 2` finds every strand when no backward
/// cycle exists and unrolls every cycle at least twice otherwise.
pub fn default_depth(n: usize) -> usize {
    2 * n + 2
}

/// A point of an approximation space: `component` indexes the tagged disjoint
/// union, `point` is a base-space index inside that component.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ApproxPoint {
    pub component: usize,
    pub point: usize,
}

/// Level-`n` approximation space: the disjoint union
/// `Y ⊔ (Y ∩ Δ_1) ⊔ … ⊔ (Y ∩ Δ_{n-1}) ⊔ Δ_n` (level 0 is the whole space).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ApproxSpace {
    pub level: usize,
    pub components: Vec<PointSet>,
}

impl ApproxSpace {
    pub fn points(&self) -> impl Iterator<Item = ApproxPoint> + '_ {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(component, set)| {
                set.iter()
                    .map(move |point| ApproxPoint { component, point })
            })
    }

    pub fn contains(&self, p: ApproxPoint) -> bool {
        p.component < self.components.len() && self.components[p.component].contains(p.point)
    }
}

/// Build the level-`n` approximation space.
pub fn approx_space(sys: &SystemWithHull, level: usize) -> Result<ApproxSpace> {
    sys.require_valid()?;
    let mut components = Vec::with_capacity(level + 1);
    for k in 0..level {
        components.push(sys.hull.intersect(sys.iterated_domain(k)));
    }
    components.push(sys.iterated_domain(level));
    Ok(ApproxSpace { level, components })
}

/// Bonding map from level `L+1` down to level `L`: identity on every
/// hull-tagged component, `φ` on the final (domain) component.
pub fn bond_point(sys: &SystemWithHull, upper_level: usize, p: ApproxPoint) -> ApproxPoint {
    debug_assert!(upper_level >= 1);
    if p.component == upper_level {
        ApproxPoint {
            component: upper_level - 1,
            point: sys.map.apply(p.point).expect("domain component"),
        }
    } else if p.component == upper_level - 1 {
        // hull copy of Δ_{L} sits inside the diagonal component below
        ApproxPoint {
            component: upper_level - 1,
            point: p.point,
        }
    } else {
        p
    }
}

/// Depth-bounded search for a backward chain of the given length; chains
/// longer than the space force a cycle, hence extend forever.
fn has_backward_chain(sys: &SystemWithHull, v: usize, steps: usize) -> bool {
    if steps == 0 {
        return true;
    }
    sys.map
        .preimage_of(PointSet::singleton(v))
        .iter()
        .any(|u| has_backward_chain(sys, u, steps - 1))
}

/// Cross-check the strand enumeration against the inverse limit of the
/// approximation tower.
///
/// Since each bonding map is a function, a coherent thread through levels
/// `0..=depth+1` is determined by its top coordinate.  Threads landing in a
/// hull-tagged component have stabilized ("slid off the diagonal") and must
/// reproduce exactly the strands of length `≤ depth`; the rest sit on the
/// diagonal `Δ_{depth+1}`, and the subfamily extending forever must match the
/// infinite core.
pub fn thread_check(sys: &SystemWithHull, depth: usize) -> Result<bool> {
    let strands = build_strands(sys, depth)?;
    let top_level = depth + 1;
    let spaces: Vec<ApproxSpace> = (0..=top_level)
        .map(|k| approx_space(sys, k))
        .collect::<Result<_>>()?;
    let top = &spaces[top_level];

    let mut stabilized: Vec<Strand> = Vec::new();
    let mut diagonal: PointSet = PointSet::EMPTY;
    for p in top.points() {
        // project the thread down and verify coherence level by level
        let mut cur = p;
        for level in (1..=top_level).rev() {
            if !spaces[level].contains(cur) {
                return Ok(false);
            }
            cur = bond_point(sys, level, cur);
        }
        if !spaces[0].contains(cur) {
            return Ok(false);
        }
        if p.component == top_level {
            diagonal.insert(p.point);
        } else {
            // stabilized at length `component`: coordinates are the forward
            // iterates of the hull point
            let k = p.component;
            let mut coords = Vec::with_capacity(k + 1);
            let mut x = p.point;
            coords.push(x);
            for _ in 0..k {
                match sys.map.apply(x) {
                    Some(next) => {
                        x = next;
                        coords.push(x);
                    }
                    None => return Ok(false),
                }
            }
            coords.reverse();
            stabilized.push(Strand { coords });
        }
    }

    let mut expected = strands;
    expected.sort();
    stabilized.sort();
    if stabilized != expected {
        return Ok(false);
    }

    if diagonal != sys.iterated_domain(top_level) {
        return Ok(false);
    }
    let survivors: PointSet = diagonal
        .iter()
        .filter(|&u| has_backward_chain(sys, u, sys.size() + 1))
        .collect();
    Ok(survivors == infinite_core(sys))
}

/// `φ` injective on its domain: the dual criterion for the base system
/// already being reversible.
pub fn is_reversible(sys: &SystemWithHull) -> bool {
    sys.map.is_injective()
}

/// Points that occur as `x_0` of some extension point: the greatest fixpoint
/// of `W ↦ Y ∪ φ(Δ ∩ W)`.  For valid systems this is the whole space.
pub fn extendable_points(sys: &SystemWithHull) -> PointSet {
    let mut w = sys.points();
    loop {
        let next = sys.hull.union(sys.map.image_of(w));
        if next == w {
            return w;
        }
        w = next;
    }
}

/// Explicit conjugacy between a reversible, minimally hulled system and its
/// own extension: `to_extension[x]` is the unique extension point starting at
/// `x`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConjugacyWitness {
    pub to_extension: Vec<ExtPoint>,
}

/// For a reversible system with minimal hull, exhibit the bijection
/// `x ↦ (unique backward orbit from x)` and verify it intertwines the maps.
/// Returns `Ok(None)` when the hypotheses fail.
pub fn conjugacy_with_extension(sys: &SystemWithHull) -> Result<Option<ConjugacyWitness>> {
    sys.require_valid()?;
    if !is_reversible(sys) || sys.hull != crate::dynsys::minimal_hull(&sys.map) {
        return Ok(None);
    }
    let n = sys.size();
    let mut to_extension = Vec::with_capacity(n);
    for x in 0..n {
        let mut seq = vec![x];
        let point = loop {
            let cur = *seq.last().expect("nonempty");
            let pre = sys.map.preimage_of(PointSet::singleton(cur));
            debug_assert!(pre.len() <= 1, "injectivity");
            match pre.iter().next() {
                None => {
                    break ExtPoint::Finite(Strand { coords: seq });
                }
                Some(u) => {
                    if let Some(i) = seq.iter().position(|&v| v == u) {
                        let cycle = seq[i..].to_vec();
                        let pre_part = seq[..i].to_vec();
                        break ExtPoint::Periodic(PeriodicStrand::new(pre_part, cycle));
                    }
                    seq.push(u);
                }
            }
        };
        to_extension.push(point);
    }

    // The map x ↦ point must hit the enumerated extension exactly once each.
    let truncation = truncate_extension(sys, default_depth(n))?;
    let mut enumerated: Vec<ExtPoint> = truncation.points().collect();
    let mut image = to_extension.clone();
    enumerated.sort();
    image.sort();
    if enumerated != image {
        return Ok(None);
    }
    // Intertwining: shifting the strand of x is the strand of φ(x), with
    // matching definedness.
    for x in 0..n {
        let shifted = extended_map(sys, &to_extension[x])?;
        match (sys.map.apply(x), shifted) {
            (Some(fx), Some(point)) => {
                if point != to_extension[fx] {
                    return Ok(None);
                }
            }
            (None, None) => {}
            _ => return Ok(None),
        }
    }
    Ok(Some(ConjugacyWitness { to_extension }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynsys::PartialMap;

    fn chain() -> SystemWithHull {
        let map = PartialMap::new(3, &[(1, 0), (2, 1)]).unwrap();
        SystemWithHull::new(map, PointSet::from_indices(&[2]))
    }

    fn loop_sys() -> SystemWithHull {
        let map = PartialMap::new(3, &[(0, 0), (1, 0), (2, 1)]).unwrap();
        SystemWithHull::new(map, PointSet::from_indices(&[2]))
    }

    fn three_cycle() -> SystemWithHull {
        let map = PartialMap::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        SystemWithHull::new(map, PointSet::EMPTY)
    }

    fn strand(coords: &[usize]) -> Strand {
        Strand {
            coords: coords.to_vec(),
        }
    }

    #[test]
    fn strands_of_chain() {
        let got = build_strands(&chain(), 5).unwrap();
        assert_eq!(got, vec![strand(&[2]), strand(&[1, 2]), strand(&[0, 1, 2])]);
    }

    #[test]
    fn strands_of_loop() {
        let got = build_strands(&loop_sys(), 3).unwrap();
        assert_eq!(
            got,
            vec![
                strand(&[2]),
                strand(&[1, 2]),
                strand(&[0, 1, 2]),
                strand(&[0, 0, 1, 2]),
            ]
        );
    }

    #[test]
    fn strands_of_empty_domain() {
        let sys = SystemWithHull::new(PartialMap::empty(3), PointSet::full(3));
        let got = build_strands(&sys, 4).unwrap();
        assert_eq!(got, vec![strand(&[0]), strand(&[1]), strand(&[2])]);
    }

    #[test]
    fn infinite_strands_loop() {
        let (core, strands) = infinite_strands(&loop_sys(), 8).unwrap();
        assert_eq!(core, PointSet::from_indices(&[0]));
        assert_eq!(strands, vec![PeriodicStrand::new(vec![], vec![0])]);
    }

    #[test]
    fn infinite_strands_chain() {
        let (core, strands) = infinite_strands(&chain(), 8).unwrap();
        assert!(core.is_empty());
        assert!(strands.is_empty());
    }

    #[test]
    fn infinite_strands_three_cycle() {
        let (core, strands) = infinite_strands(&three_cycle(), 8).unwrap();
        assert_eq!(core, PointSet::full(3));
        // one point per rotation of the backward cycle word [0,2,1]
        assert_eq!(
            strands,
            vec![
                PeriodicStrand::new(vec![], vec![0, 2, 1]),
                PeriodicStrand::new(vec![1], vec![0, 2, 1]),
                PeriodicStrand::new(vec![2, 1], vec![0, 2, 1]),
            ]
        );
    }

    #[test]
    fn extended_map_chain() {
        let sys = chain();
        let s2 = ExtPoint::Finite(strand(&[2]));
        let s12 = ExtPoint::Finite(strand(&[1, 2]));
        let s012 = ExtPoint::Finite(strand(&[0, 1, 2]));
        assert_eq!(extended_map(&sys, &s2).unwrap(), Some(s12.clone()));
        assert_eq!(extended_map(&sys, &s12).unwrap(), Some(s012.clone()));
        assert_eq!(extended_map(&sys, &s012).unwrap(), None);
        // inverse drops the first coordinate
        assert_eq!(extended_map_inverse(&sys, &s012).unwrap(), Some(s12));
        assert_eq!(extended_map_inverse(&sys, &s2).unwrap(), None);
    }

    #[test]
    fn extended_map_loop_and_periodic() {
        let sys = loop_sys();
        let s = ExtPoint::Finite(strand(&[0, 0, 1, 2]));
        assert_eq!(
            extended_map(&sys, &s).unwrap(),
            Some(ExtPoint::Finite(strand(&[0, 0, 0, 1, 2])))
        );
        let p = ExtPoint::Periodic(PeriodicStrand::new(vec![], vec![0]));
        assert_eq!(extended_map(&sys, &p).unwrap(), Some(p.clone()));
        assert_eq!(extended_map_inverse(&sys, &p).unwrap(), Some(p));
    }

    #[test]
    fn extended_map_rejects_malformed() {
        let sys = chain();
        let bogus = ExtPoint::Finite(strand(&[2, 1])); // wrong direction
        assert!(extended_map(&sys, &bogus).is_err());
    }

    #[test]
    fn periodic_canonicalization() {
        // squared word reduces to its primitive root
        let p = PeriodicStrand::new(vec![], vec![0, 1, 0, 1]);
        assert_eq!(p.cycle, vec![0, 1]);
        // rotation offset lands in the preperiod
        let q = PeriodicStrand::new(vec![], vec![2, 1, 0]);
        assert_eq!(q.cycle, vec![0, 2, 1]);
        assert_eq!(q.preperiod, vec![2, 1]);
        // redundant preperiod entry is absorbed
        let r = PeriodicStrand::new(vec![0], vec![0]);
        assert_eq!(r.preperiod, Vec::<usize>::new());
        assert_eq!(r.cycle, vec![0]);
    }

    #[test]
    fn periodic_rotations_are_distinct_points() {
        let a = PeriodicStrand::new(vec![], vec![0, 2, 1]);
        let b = PeriodicStrand::new(vec![1], vec![0, 2, 1]);
        assert_ne!(a, b);
        assert_eq!(a.at(0), 0);
        assert_eq!(b.at(0), 1);
        // shifting the pure cycle rotates into the preperiod form
        let sys = three_cycle();
        let shifted = extended_map(&sys, &ExtPoint::Periodic(a)).unwrap().unwrap();
        assert_eq!(shifted, ExtPoint::Periodic(b));
    }

    #[test]
    fn shift_is_partial_bijection_on_truncations() {
        for sys in [chain(), loop_sys(), three_cycle()] {
            let trunc = truncate_extension(&sys, 5).unwrap();
            for point in trunc.points() {
                if let Some(image) = extended_map(&sys, &point).unwrap() {
                    let back = extended_map_inverse(&sys, &image).unwrap();
                    assert_eq!(back, Some(point.clone()));
                }
                let long_enough = match &point {
                    ExtPoint::Finite(s) => s.coords.len() >= 2,
                    ExtPoint::Periodic(_) => true,
                };
                if long_enough {
                    let dropped = extended_map_inverse(&sys, &point).unwrap().unwrap();
                    // dropping then prepending restores the point when defined
                    if let Some(restored) = extended_map(&sys, &dropped).unwrap() {
                        assert_eq!(restored, point);
                    }
                }
            }
        }
    }

    #[test]
    fn approx_space_shapes() {
        let sys = chain();
        let level1 = approx_space(&sys, 1).unwrap();
        assert_eq!(
            level1.components,
            vec![
                PointSet::from_indices(&[2]),
                PointSet::from_indices(&[1, 2])
            ]
        );
        let level0 = approx_space(&sys, 0).unwrap();
        assert_eq!(level0.components, vec![PointSet::full(3)]);

        let lp = loop_sys();
        let level2 = approx_space(&lp, 2).unwrap();
        assert_eq!(
            level2.components,
            vec![
                PointSet::from_indices(&[2]),
                PointSet::from_indices(&[2]),
                PointSet::full(3)
            ]
        );
    }

    #[test]
    fn thread_check_fixtures() {
        assert!(thread_check(&chain(), 4).unwrap());
        assert!(thread_check(&loop_sys(), 4).unwrap());
        assert!(thread_check(&three_cycle(), 4).unwrap());
        let empty_domain = SystemWithHull::new(PartialMap::empty(3), PointSet::full(3));
        assert!(thread_check(&empty_domain, 4).unwrap());
    }

    #[test]
    fn thread_check_counts_loop_threads() {
        // depth 4: five strands stabilize, the diagonal family over the core
        // continues forever
        let sys = loop_sys();
        let strands = build_strands(&sys, 4).unwrap();
        assert_eq!(strands.len(), 5);
        assert!(thread_check(&sys, 4).unwrap());
    }

    #[test]
    fn reversibility_examples() {
        assert!(is_reversible(&chain()));
        assert!(!is_reversible(&loop_sys()));
        let empty = SystemWithHull::new(PartialMap::empty(2), PointSet::full(2));
        assert!(is_reversible(&empty));
    }

    #[test]
    fn every_point_extends() {
        for sys in crate::enumeration::all_valid_systems(3) {
            assert_eq!(extendable_points(&sys), sys.points());
            let trunc = truncate_extension(&sys, default_depth(3)).unwrap();
            let firsts: PointSet = trunc.points().map(|p| p.first()).collect();
            assert_eq!(firsts, sys.points());
        }
    }

    #[test]
    fn chain_is_conjugate_to_its_extension() {
        let witness = conjugacy_with_extension(&chain()).unwrap().unwrap();
        assert_eq!(
            witness.to_extension,
            vec![
                ExtPoint::Finite(strand(&[0, 1, 2])),
                ExtPoint::Finite(strand(&[1, 2])),
                ExtPoint::Finite(strand(&[2])),
            ]
        );
        // non-reversible input yields no witness
        assert_eq!(conjugacy_with_extension(&loop_sys()).unwrap(), None);
    }
}
