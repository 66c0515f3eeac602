//! The lattice of gauge-invariant ideals, in dual form.
//!
//! A pair `(V, V′)` of point sets with `V` positively invariant, `V′ ⊆ Y` and
//! `V′ ∪ φ(V ∩ Δ) = V` encodes one gauge-invariant ideal of the crossed
//! product attached to the system (the correspondence reverses inclusion).
//! Enumeration walks positively invariant `V` and reads the admissible `V′`
//! off an interval: the pair conditions hold exactly when
//! `V ∖ φ(V ∩ Δ) ⊆ V′ ⊆ Y ∩ V`, which cuts the search from `4^n` candidate
//! pairs to one powerset interval per invariant set.

use crate::dynsys::{is_positively_invariant, PartialMap, SystemWithHull};
use crate::error::{Error, Result};
use crate::point_set::PointSet;
use std::fmt;

/// One gauge-invariant ideal of the crossed product, encoded dually.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct IdealPair {
    pub v: PointSet,
    pub vprime: PointSet,
}

impl IdealPair {
    pub const BOTTOM: IdealPair = IdealPair {
        v: PointSet::EMPTY,
        vprime: PointSet::EMPTY,
    };

    /// Componentwise containment; anti-isomorphic to ideal inclusion.
    pub fn leq(&self, other: &IdealPair) -> bool {
        self.v.is_subset(other.v) && self.vprime.is_subset(other.vprime)
    }

    /// The three defining conditions.
    pub fn is_valid_for(&self, sys: &SystemWithHull) -> bool {
        let moved = sys.map.image_of(self.v);
        is_positively_invariant(sys, self.v)
            && self.vprime.is_subset(sys.hull)
            && self.vprime.union(moved) == self.v
    }

    fn check_valid(&self, sys: &SystemWithHull) -> Result<()> {
        if self.is_valid_for(sys) {
            Ok(())
        } else {
            Err(Error::InvalidPair {
                v: self.v,
                vprime: self.vprime,
                reason: "positive invariance, V′ ⊆ hull or V′ ∪ φ(V∩Δ) = V fails".into(),
            })
        }
    }
}

impl fmt::Display for IdealPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} | {})", self.v, self.vprime)
    }
}

/// Componentwise union. Unions of positively invariant sets are positively
/// invariant and the defining equation is union-stable, so no repair is
/// needed.
pub fn join_pairs(sys: &SystemWithHull, p: &IdealPair, q: &IdealPair) -> Result<IdealPair> {
    p.check_valid(sys)?;
    q.check_valid(sys)?;
    let joined = IdealPair {
        v: p.v.union(q.v),
        vprime: p.vprime.union(q.vprime),
    };
    if !joined.is_valid_for(sys) {
        return Err(Error::Internal(format!(
            "join of {p} and {q} produced invalid pair {joined}"
        )));
    }
    Ok(joined)
}

/// Greatest pair below both arguments, by a decreasing fixpoint: starting
/// from the componentwise intersection, repeatedly discard the part of `V`
/// not reproduced by `V′ ∪ φ(V ∩ Δ)`.  Maximality is certified against the
/// enumerated lattice by the exhaustive test suites.
pub fn meet_pairs(sys: &SystemWithHull, p: &IdealPair, q: &IdealPair) -> Result<IdealPair> {
    p.check_valid(sys)?;
    q.check_valid(sys)?;
    let mut v = p.v.intersect(q.v);
    let mut vprime = p.vprime.intersect(q.vprime);
    loop {
        let shrunk = v.intersect(vprime.union(sys.map.image_of(v)));
        let vprime_next = vprime.intersect(shrunk);
        if shrunk == v && vprime_next == vprime {
            break;
        }
        v = shrunk;
        vprime = vprime_next;
    }
    let met = IdealPair { v, vprime };
    if !met.is_valid_for(sys) {
        return Err(Error::Internal(format!(
            "meet of {p} and {q} produced invalid pair {met}"
        )));
    }
    Ok(met)
}

/// The pair lattice: elements in the deterministic enumeration order with
/// Hasse diagram and total meet/join tables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdealLattice {
    pub elements: Vec<IdealPair>,
    /// Covering relations `(lower, upper)` by element index.
    pub hasse_edges: Vec<(usize, usize)>,
    pub meet_table: Vec<Vec<usize>>,
    pub join_table: Vec<Vec<usize>>,
}

impl IdealLattice {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.elements[i].leq(&self.elements[j])
    }

    pub fn index_of(&self, pair: &IdealPair) -> Option<usize> {
        self.elements.iter().position(|p| p == pair)
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }
}

/// Enumerate every pair, in the fixed order: `V` by ascending cardinality
/// then bit value, `V′` likewise within each `V`.
pub fn enumerate_pairs(sys: &SystemWithHull) -> Result<IdealLattice> {
    sys.require_valid()?;
    let mut invariant_sets: Vec<PointSet> = sys
        .points()
        .subsets()
        .filter(|&v| is_positively_invariant(sys, v))
        .collect();
    invariant_sets.sort_by_key(|s| s.order_key());

    let mut elements = Vec::new();
    for v in invariant_sets {
        let lower = v.minus(sys.map.image_of(v));
        let upper = sys.hull.intersect(v);
        if !lower.is_subset(upper) {
            continue; // no admissible V′ for this V
        }
        let mut free: Vec<PointSet> = upper.minus(lower).subsets().collect();
        free.sort_by_key(|s| s.order_key());
        for extra in free {
            let pair = IdealPair {
                v,
                vprime: lower.union(extra),
            };
            debug_assert!(pair.is_valid_for(sys));
            elements.push(pair);
        }
    }

    let len = elements.len();
    let leq = |i: usize, j: usize| elements[i].leq(&elements[j]);

    let mut hasse_edges = Vec::new();
    for i in 0..len {
        for j in 0..len {
            if i == j || !leq(i, j) {
                continue;
            }
            let covered = (0..len).any(|k| k != i && k != j && leq(i, k) && leq(k, j));
            if !covered {
                hasse_edges.push((i, j));
            }
        }
    }
    hasse_edges.sort();

    let mut meet_table = vec![vec![0usize; len]; len];
    let mut join_table = vec![vec![0usize; len]; len];
    for i in 0..len {
        for j in 0..len {
            let met = meet_pairs(sys, &elements[i], &elements[j])?;
            let joined = join_pairs(sys, &elements[i], &elements[j])?;
            meet_table[i][j] = locate(&elements, &met, "meet")?;
            join_table[i][j] = locate(&elements, &joined, "join")?;
        }
    }

    Ok(IdealLattice {
        elements,
        hasse_edges,
        meet_table,
        join_table,
    })
}

fn locate(elements: &[IdealPair], pair: &IdealPair, what: &str) -> Result<usize> {
    elements
        .iter()
        .position(|p| p == pair)
        .ok_or_else(|| Error::Internal(format!("{what} result {pair} missing from lattice")))
}

/// All `V` that are positively invariant and hull-negatively invariant
/// (`V ⊆ Y ∪ φ(V ∩ Δ)`): the first components of pairs, equivalently the
/// ideals generated by their intersection with the coefficient algebra.
pub fn hull_invariant_sets(sys: &SystemWithHull) -> Result<Vec<PointSet>> {
    sys.require_valid()?;
    let mut sets: Vec<PointSet> = sys
        .points()
        .subsets()
        .filter(|&v| {
            is_positively_invariant(sys, v) && v.is_subset(sys.hull.union(sys.map.image_of(v)))
        })
        .collect();
    sets.sort_by_key(|s| s.order_key());
    Ok(sets)
}

/// A subsystem supported on a subset of the parent space, with the index
/// embedding back into the parent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuotientSystem {
    pub system: SystemWithHull,
    /// `embedding[new_index] = parent_index`, ascending.
    pub embedding: Vec<usize>,
}

impl QuotientSystem {
    /// Carry a subsystem point set back to parent indices.
    pub fn embed_set(&self, s: PointSet) -> PointSet {
        s.iter().map(|i| self.embedding[i]).collect()
    }
}

fn restrict(map: &PartialMap, hull: PointSet, support: PointSet) -> QuotientSystem {
    let embedding = support.to_vec();
    let mut back = vec![usize::MAX; map.size()];
    for (new, &old) in embedding.iter().enumerate() {
        back[old] = new;
    }
    let pairs: Vec<(usize, usize)> = support
        .intersect(map.domain())
        .iter()
        .filter(|&x| support.contains(map.apply(x).expect("domain member")))
        .map(|x| (back[x], back[map.apply(x).expect("domain member")]))
        .collect();
    let sub_map = PartialMap::new(embedding.len(), &pairs).expect("indices in range");
    let sub_hull: PointSet = hull.intersect(support).iter().map(|x| back[x]).collect();
    QuotientSystem {
        system: SystemWithHull::new(sub_map, sub_hull),
        embedding,
    }
}

/// The subsystem carried by a pair: space `V`, map `φ|_{V∩Δ}`, hull `V′`.
/// Dual to quotienting the crossed product by the pair's ideal; validity is
/// exactly the pair equation.
pub fn quotient_system(sys: &SystemWithHull, pair: &IdealPair) -> Result<QuotientSystem> {
    sys.require_valid()?;
    pair.check_valid(sys)?;
    let q = restrict(&sys.map, pair.vprime, pair.v);
    q.system
        .require_valid()
        .map_err(|_| Error::Internal(format!("quotient by {pair} failed hull validity")))?;
    Ok(q)
}

/// Verify that the pair lattice of the quotient by `pair` is order-isomorphic,
/// via the index embedding, to the principal down-set `{q : q ≤ pair}` of the
/// parent lattice (inclusion of gauge-invariant ideals reverses the pair
/// order, so quotient ideals sit below the pair).
pub fn quotient_lattice_check(sys: &SystemWithHull, pair: &IdealPair) -> Result<bool> {
    let parent = enumerate_pairs(sys)?;
    let quotient = quotient_system(sys, pair)?;
    let sub = enumerate_pairs(&quotient.system)?;

    let mut embedded: Vec<IdealPair> = sub
        .elements
        .iter()
        .map(|p| IdealPair {
            v: quotient.embed_set(p.v),
            vprime: quotient.embed_set(p.vprime),
        })
        .collect();
    let mut downset: Vec<IdealPair> = parent
        .elements
        .iter()
        .filter(|r| r.leq(pair))
        .copied()
        .collect();
    embedded.sort_by_key(|p| (p.v.order_key(), p.vprime.order_key()));
    downset.sort_by_key(|p| (p.v.order_key(), p.vprime.order_key()));
    if embedded != downset {
        return Ok(false);
    }
    // order preservation both ways (inclusion is intrinsic to the encoding,
    // but check rather than argue)
    for (i, a) in sub.elements.iter().enumerate() {
        for (j, b) in sub.elements.iter().enumerate() {
            let up = IdealPair {
                v: quotient.embed_set(a.v),
                vprime: quotient.embed_set(a.vprime),
            };
            let vq = IdealPair {
                v: quotient.embed_set(b.v),
                vprime: quotient.embed_set(b.vprime),
            };
            if a.leq(b) != up.leq(&vq) {
                return Ok(false);
            }
            let _ = (i, j);
        }
    }
    Ok(true)
}

/// Repair an arbitrary hull choice: restrict to the largest subset `W` on
/// which the hull condition holds.  `W` collects the forward orbits of hull
/// points while defined, plus the eventual image (points with arbitrarily
/// long backward chains); the restricted system always validates and the
/// operation is idempotent.
pub fn reduce_system(map: &PartialMap, hull: PointSet) -> QuotientSystem {
    let n = map.size();
    let sys = SystemWithHull::new(map.clone(), hull);

    // ⋃_{k ≤ n} φᵏ(Δ_k ∩ Y), via A_{k+1} = φ(A_k ∩ Δ)
    let mut orbit_part = PointSet::EMPTY;
    let mut a = hull.intersect(PointSet::full(n));
    for _ in 0..=n {
        orbit_part = orbit_part.union(a);
        a = map.image_of(a);
    }
    let eventual_image = crate::extension::infinite_core(&sys);
    let support = orbit_part.union(eventual_image);

    debug_assert!(is_positively_invariant(&sys, support));
    let reduced = restrict(map, hull, support);
    debug_assert!(reduced.system.require_valid().is_ok());
    reduced
}

/// Deterministic DOT rendering of the Hasse diagram; nodes carry the pair
/// written with the supplied point labels.
pub fn export_hasse(lattice: &IdealLattice, labels: &[String]) -> String {
    let fmt_set = |s: PointSet| {
        let names: Vec<&str> = s.iter().map(|i| labels[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    };
    let mut out = String::from("digraph ideal_lattice {\n  rankdir=BT;\n");
    for (i, pair) in lattice.elements.iter().enumerate() {
        out.push_str(&format!(
            "  n{} [label=\"{} | {}\"];\n",
            i,
            fmt_set(pair.v),
            fmt_set(pair.vprime)
        ));
    }
    for &(lower, upper) in &lattice.hasse_edges {
        out.push_str(&format!("  n{lower} -> n{upper};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynsys::PartialMap;

    fn chain() -> SystemWithHull {
        let map = PartialMap::new(3, &[(1, 0), (2, 1)]).unwrap();
        SystemWithHull::new(map, PointSet::from_indices(&[2]))
    }

    fn loop_sys(hull: &[usize]) -> SystemWithHull {
        let map = PartialMap::new(3, &[(0, 0), (1, 0), (2, 1)]).unwrap();
        SystemWithHull::new(map, PointSet::from_indices(hull))
    }

    fn pair(v: &[usize], vprime: &[usize]) -> IdealPair {
        IdealPair {
            v: PointSet::from_indices(v),
            vprime: PointSet::from_indices(vprime),
        }
    }

    /// Blind reference enumeration: test all 4^n pairs against the raw
    /// conditions.
    fn blind_pairs(sys: &SystemWithHull) -> Vec<IdealPair> {
        let mut out = Vec::new();
        for v in sys.points().subsets() {
            for vprime in sys.points().subsets() {
                let candidate = IdealPair { v, vprime };
                if candidate.is_valid_for(sys) {
                    out.push(candidate);
                }
            }
        }
        out.sort_by_key(|p| (p.v.order_key(), p.vprime.order_key()));
        out
    }

    #[test]
    fn loop_lattice_is_three_chain() {
        let lat = enumerate_pairs(&loop_sys(&[2])).unwrap();
        assert_eq!(
            lat.elements,
            vec![pair(&[], &[]), pair(&[0], &[]), pair(&[0, 1, 2], &[2])]
        );
        assert_eq!(lat.hasse_edges, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn loop_full_hull_has_nine_pairs() {
        let lat = enumerate_pairs(&loop_sys(&[0, 1, 2])).unwrap();
        assert_eq!(lat.len(), 9);
        // per-V counts: ∅:1, {0}:2, {0,1}:2, X:4
        let count = |v: PointSet| lat.elements.iter().filter(|p| p.v == v).count();
        assert_eq!(count(PointSet::EMPTY), 1);
        assert_eq!(count(PointSet::from_indices(&[0])), 2);
        assert_eq!(count(PointSet::from_indices(&[0, 1])), 2);
        assert_eq!(count(PointSet::full(3)), 4);
    }

    #[test]
    fn chain_lattice_is_trivial() {
        let lat = enumerate_pairs(&chain()).unwrap();
        assert_eq!(lat.elements, vec![pair(&[], &[]), pair(&[0, 1, 2], &[2])]);
    }

    #[test]
    fn enumeration_matches_blind_oracle_small() {
        for sys in crate::enumeration::all_valid_systems(3) {
            let lat = enumerate_pairs(&sys).unwrap();
            assert_eq!(lat.elements, blind_pairs(&sys), "system {:?}", sys);
        }
    }

    #[test]
    fn join_examples() {
        let sys = loop_sys(&[2]);
        let top = pair(&[0, 1, 2], &[2]);
        let mid = pair(&[0], &[]);
        let bot = IdealPair::BOTTOM;
        assert_eq!(join_pairs(&sys, &mid, &top).unwrap(), top);
        assert_eq!(join_pairs(&sys, &bot, &mid).unwrap(), mid);

        let full = loop_sys(&[0, 1, 2]);
        assert_eq!(
            join_pairs(&full, &pair(&[0], &[0]), &pair(&[0, 1], &[1])).unwrap(),
            pair(&[0, 1], &[0, 1])
        );
    }

    #[test]
    fn meet_examples() {
        let full = loop_sys(&[0, 1, 2]);
        let a = pair(&[0], &[0]);
        assert_eq!(meet_pairs(&full, &a, &a).unwrap(), a);
        assert_eq!(
            meet_pairs(&full, &a, &pair(&[0], &[])).unwrap(),
            pair(&[0], &[])
        );
    }

    #[test]
    fn meet_is_greatest_lower_bound_small() {
        for sys in crate::enumeration::all_valid_systems(3) {
            let lat = enumerate_pairs(&sys).unwrap();
            for i in 0..lat.len() {
                for j in 0..lat.len() {
                    let met = lat.elements[lat.meet_table[i][j]];
                    let glb = lat
                        .elements
                        .iter()
                        .filter(|r| r.leq(&lat.elements[i]) && r.leq(&lat.elements[j]))
                        .copied()
                        .reduce(|acc, r| if acc.leq(&r) { r } else { acc })
                        .expect("bottom is below everything");
                    assert_eq!(met, glb);
                }
            }
        }
    }

    #[test]
    fn hull_invariant_set_examples() {
        let got = hull_invariant_sets(&loop_sys(&[2])).unwrap();
        assert_eq!(
            got,
            vec![
                PointSet::EMPTY,
                PointSet::from_indices(&[0]),
                PointSet::full(3)
            ]
        );
        let chain_sets = hull_invariant_sets(&chain()).unwrap();
        assert_eq!(chain_sets, vec![PointSet::EMPTY, PointSet::full(3)]);
    }

    #[test]
    fn hull_invariant_sets_are_pair_components() {
        for sys in crate::enumeration::all_valid_systems(3) {
            let lat = enumerate_pairs(&sys).unwrap();
            let mut firsts: Vec<PointSet> = lat.elements.iter().map(|p| p.v).collect();
            firsts.sort_by_key(|s| s.order_key());
            firsts.dedup();
            assert_eq!(hull_invariant_sets(&sys).unwrap(), firsts);
        }
    }

    #[test]
    fn quotient_examples() {
        let sys = loop_sys(&[2]);
        let q = quotient_system(&sys, &pair(&[0], &[])).unwrap();
        assert_eq!(q.embedding, vec![0]);
        assert_eq!(q.system.size(), 1);
        assert_eq!(q.system.map.apply(0), Some(0));
        assert!(q.system.hull.is_empty());

        let top = quotient_system(&sys, &pair(&[0, 1, 2], &[2])).unwrap();
        assert_eq!(top.system, sys);

        let bot = quotient_system(&sys, &IdealPair::BOTTOM).unwrap();
        assert_eq!(bot.system.size(), 0);
    }

    #[test]
    fn quotient_rejects_invalid_pair() {
        assert!(quotient_system(&chain(), &pair(&[1], &[])).is_err());
    }

    #[test]
    fn quotient_lattice_check_examples() {
        let sys = loop_sys(&[2]);
        assert!(quotient_lattice_check(&sys, &pair(&[0], &[])).unwrap());
        assert!(quotient_lattice_check(&sys, &IdealPair::BOTTOM).unwrap());
        assert!(quotient_lattice_check(&sys, &pair(&[0, 1, 2], &[2])).unwrap());
    }

    #[test]
    fn reduce_examples() {
        // chain with empty hull collapses entirely
        let chain_map = chain().map;
        let reduced = reduce_system(&chain_map, PointSet::EMPTY);
        assert_eq!(reduced.system.size(), 0);

        // loop with empty hull keeps only the fixed point
        let loop_map = loop_sys(&[]).map;
        let reduced = reduce_system(&loop_map, PointSet::EMPTY);
        assert_eq!(reduced.embedding, vec![0]);
        assert_eq!(reduced.system.map.apply(0), Some(0));
        assert!(reduced.system.hull.is_empty());

        // valid hulls are untouched
        let reduced = reduce_system(&chain_map, PointSet::from_indices(&[2]));
        assert_eq!(reduced.embedding, vec![0, 1, 2]);
        assert_eq!(reduced.system, chain());
    }

    #[test]
    fn reduce_is_idempotent_small() {
        for map in crate::enumeration::all_partial_maps(3) {
            for hull in PointSet::full(3).subsets() {
                let once = reduce_system(&map, hull);
                let twice = reduce_system(&once.system.map, once.system.hull);
                assert_eq!(once.system, twice.system);
                assert!(once.system.require_valid().is_ok());
            }
        }
    }

    #[test]
    fn hasse_export_golden() {
        let lat = enumerate_pairs(&loop_sys(&[2])).unwrap();
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let dot = export_hasse(&lat, &labels);
        let expected = "digraph ideal_lattice {\n  rankdir=BT;\n  n0 [label=\"{} | {}\"];\n  n1 [label=\"{a} | {}\"];\n  n2 [label=\"{a,b,c} | {c}\"];\n  n0 -> n1;\n  n1 -> n2;\n}\n";
        assert_eq!(dot, expected);
    }

    #[test]
    fn hasse_of_singleton_lattice() {
        let sys = SystemWithHull::new(PartialMap::empty(0), PointSet::EMPTY);
        let lat = enumerate_pairs(&sys).unwrap();
        assert_eq!(lat.len(), 1);
        assert!(lat.hasse_edges.is_empty());
    }

    #[test]
    fn lattice_contains_bottom_and_top() {
        for sys in crate::enumeration::all_valid_systems(3) {
            let lat = enumerate_pairs(&sys).unwrap();
            assert_eq!(lat.elements[lat.bottom()], IdealPair::BOTTOM);
            let top = IdealPair {
                v: sys.points(),
                vprime: sys.hull,
            };
            assert!(top.is_valid_for(&sys));
            assert_eq!(lat.elements[lat.top()], top);
        }
    }

    #[test]
    fn quotients_compose_along_the_order() {
        for sys in crate::enumeration::all_valid_systems(3) {
            let lat = enumerate_pairs(&sys).unwrap();
            for p in &lat.elements {
                for q in &lat.elements {
                    if !p.leq(q) {
                        continue;
                    }
                    // restricting to q then to p (in q's coordinates) equals
                    // restricting to p directly
                    let to_q = quotient_system(&sys, q).unwrap();
                    let back: Vec<usize> = (0..sys.size())
                        .map(|old| {
                            to_q.embedding
                                .iter()
                                .position(|&e| e == old)
                                .unwrap_or(usize::MAX)
                        })
                        .collect();
                    let p_in_q = IdealPair {
                        v: p.v.iter().map(|x| back[x]).collect(),
                        vprime: p.vprime.iter().map(|x| back[x]).collect(),
                    };
                    let via_q = quotient_system(&to_q.system, &p_in_q).unwrap();
                    let direct = quotient_system(&sys, p).unwrap();
                    assert_eq!(via_q.system, direct.system);
                    let lifted: Vec<usize> =
                        via_q.embedding.iter().map(|&i| to_q.embedding[i]).collect();
                    assert_eq!(lifted, direct.embedding);
                }
            }
        }
    }

    #[test]
    fn reversible_minimal_hull_lattice_matches_invariant_sets() {
        // For injective maps with minimal hull, pairs biject with the sets
        // satisfying φ(V∩Δ) = V ∩ φ(Δ).
        for sys in (0..=4).flat_map(crate::enumeration::all_valid_systems) {
            if !sys.map.is_injective() || sys.hull != crate::dynsys::minimal_hull(&sys.map) {
                continue;
            }
            let lat = enumerate_pairs(&sys).unwrap();
            let invariant: Vec<PointSet> = sys
                .points()
                .subsets()
                .filter(|&v| sys.map.image_of(v) == v.intersect(sys.map.image()))
                .collect();
            assert_eq!(lat.len(), invariant.len());
            let firsts: Vec<PointSet> = lat.elements.iter().map(|p| p.v).collect();
            let mut sorted = invariant.clone();
            sorted.sort_by_key(|s| s.order_key());
            assert_eq!(firsts, sorted);
        }
    }
}
