//! Set-cover stage: the canonical translates become a finite cover instance,
//! solved greedily or exactly by branch and bound.

use crate::covset::CovSet;
use crate::error::{Error, Result};
use crate::CanonicalTranslate;
use serde::{Deserialize, Serialize};

pub const EXACT_COVER_SET_CAP: usize = 25;

/// A finite set-cover instance over the universe `{0, .., n-1}`.
#[derive(Clone, Debug)]
pub struct CoverInstance {
    pub universe: usize,
    pub sets: Vec<CovSet>,
    /// Index of the originating translate for each set.
    pub back_refs: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverTag {
    Greedy,
    Exact,
}

/// A selected subcollection whose union is the universe.
#[derive(Clone, Debug)]
pub struct CoverSolution {
    pub chosen: Vec<usize>,
    pub cardinality: usize,
    pub solver: SolverTag,
}

/// Builds the cover instance from reported translates, rejecting reporter
/// output that leaves a point uncovered.
pub fn to_cover_instance(translates: &[CanonicalTranslate], n: usize) -> Result<CoverInstance> {
    let mut union = CovSet::empty(n);
    for t in translates {
        union.union_with(&t.covered);
    }
    for i in 0..n {
        if !union.contains(i) {
            return Err(Error::UncoveredPoint(i));
        }
    }
    Ok(CoverInstance {
        universe: n,
        sets: translates.iter().map(|t| t.covered.clone()).collect(),
        back_refs: (0..translates.len()).collect(),
    })
}

impl CoverInstance {
    pub fn from_sets(universe: usize, sets: Vec<CovSet>) -> Result<Self> {
        let mut union = CovSet::empty(universe);
        for s in &sets {
            union.union_with(s);
        }
        for i in 0..universe {
            if !union.contains(i) {
                return Err(Error::UncoveredPoint(i));
            }
        }
        let back_refs = (0..sets.len()).collect();
        Ok(CoverInstance {
            universe,
            sets,
            back_refs,
        })
    }
}

/// Repeatedly picks the set covering the most uncovered elements, breaking
/// ties by lowest set index. Within the H(n) factor of optimal.
pub fn greedy_cover(instance: &CoverInstance) -> CoverSolution {
    let mut uncovered: Vec<bool> = vec![true; instance.universe];
    let mut remaining = instance.universe;
    let mut chosen = Vec::new();
    let mut used = vec![false; instance.sets.len()];
    while remaining > 0 {
        let mut best = usize::MAX;
        let mut best_gain = 0usize;
        for (i, s) in instance.sets.iter().enumerate() {
            if used[i] {
                continue;
            }
            let gain = s.iter().filter(|&e| uncovered[e]).count();
            if gain > best_gain {
                best_gain = gain;
                best = i;
            }
        }
        debug_assert!(best != usize::MAX, "instance union covers the universe");
        used[best] = true;
        chosen.push(best);
        for e in instance.sets[best].iter() {
            if uncovered[e] {
                uncovered[e] = false;
                remaining -= 1;
            }
        }
    }
    CoverSolution {
        cardinality: chosen.len(),
        chosen,
        solver: SolverTag::Greedy,
    }
}

/// Minimum-cardinality cover by branch and bound: branch on the lowest
/// uncovered element over the sets containing it, seeded with the greedy
/// solution as incumbent. `cap` bounds the number of sets accepted
/// (default 25); callers may raise it for larger desk-scale instances.
pub fn exact_cover(instance: &CoverInstance, cap: Option<usize>) -> Result<CoverSolution> {
    let cap = cap.unwrap_or(EXACT_COVER_SET_CAP);
    if instance.sets.len() > cap {
        return Err(Error::CapExceeded(format!(
            "{} sets exceed the exact solver cap {cap}",
            instance.sets.len()
        )));
    }
    let incumbent = greedy_cover(instance);
    let max_set_size = instance.sets.iter().map(CovSet::len).max().unwrap_or(1).max(1);
    let mut best: Vec<usize> = incumbent.chosen.clone();
    let mut covered = CovSet::empty(instance.universe);
    let mut partial: Vec<usize> = Vec::new();
    // Sets containing each element, precomputed for branching.
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); instance.universe];
    for (i, s) in instance.sets.iter().enumerate() {
        for e in s.iter() {
            containing[e].push(i);
        }
    }
    branch(
        instance,
        &containing,
        max_set_size,
        &mut covered,
        &mut partial,
        &mut best,
    );
    Ok(CoverSolution {
        cardinality: best.len(),
        chosen: best,
        solver: SolverTag::Exact,
    })
}

fn branch(
    instance: &CoverInstance,
    containing: &[Vec<usize>],
    max_set_size: usize,
    covered: &mut CovSet,
    partial: &mut Vec<usize>,
    best: &mut Vec<usize>,
) {
    let uncovered_count = instance.universe - covered.len();
    if uncovered_count == 0 {
        if partial.len() < best.len() {
            *best = partial.clone();
        }
        return;
    }
    // Lower bound: even perfectly disjoint sets need this many more.
    let bound = partial.len() + uncovered_count.div_ceil(max_set_size);
    if bound >= best.len() {
        return;
    }
    let element = (0..instance.universe)
        .find(|&e| !covered.contains(e))
        .expect("some element uncovered");
    for &si in &containing[element] {
        let before = covered.clone();
        covered.union_with(&instance.sets[si]);
        partial.push(si);
        branch(instance, containing, max_set_size, covered, partial, best);
        partial.pop();
        *covered = before;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets_of(universe: usize, sets: &[&[usize]]) -> CoverInstance {
        CoverInstance::from_sets(
            universe,
            sets.iter()
                .map(|s| CovSet::from_indices(universe, s.iter().copied()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn instance_building_and_uncovered_rejection() {
        let inst = sets_of(3, &[&[0, 1], &[1, 2]]);
        assert_eq!(inst.sets.len(), 2);

        let single = sets_of(1, &[&[0]]);
        assert_eq!(single.sets.len(), 1);

        assert!(matches!(
            CoverInstance::from_sets(1, vec![]),
            Err(Error::UncoveredPoint(0))
        ));
    }

    #[test]
    fn greedy_tie_break_by_lowest_index() {
        let inst = sets_of(5, &[&[0, 1, 2], &[1, 3], &[2, 3], &[4]]);
        let sol = greedy_cover(&inst);
        assert_eq!(sol.chosen, vec![0, 1, 3]);
        assert_eq!(sol.cardinality, 3);
    }

    #[test]
    fn greedy_trivial_cases() {
        let all = sets_of(4, &[&[0, 1, 2, 3]]);
        assert_eq!(greedy_cover(&all).cardinality, 1);

        let singletons = sets_of(3, &[&[0], &[1], &[2]]);
        assert_eq!(greedy_cover(&singletons).cardinality, 3);
    }

    #[test]
    fn exact_beats_or_ties_greedy() {
        let inst = sets_of(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        let exact = exact_cover(&inst, None).unwrap();
        assert_eq!(exact.cardinality, 2);

        let universal = sets_of(4, &[&[0], &[1, 2], &[0, 1, 2, 3], &[3]]);
        assert_eq!(exact_cover(&universal, None).unwrap().cardinality, 1);
    }

    #[test]
    fn exact_matches_exhaustive_on_random_instances() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let n = rng.gen_range(3..8);
            let m = rng.gen_range(2..7);
            let mut sets: Vec<CovSet> = (0..m)
                .map(|_| {
                    CovSet::from_indices(
                        n,
                        (0..n).filter(|_| rng.gen_bool(0.45)).collect::<Vec<_>>(),
                    )
                })
                .collect();
            // Ensure feasibility.
            sets.push(CovSet::from_indices(n, 0..n));
            let inst = CoverInstance::from_sets(n, sets).unwrap();
            let exact = exact_cover(&inst, None).unwrap();
            let greedy = greedy_cover(&inst);
            assert!(exact.cardinality <= greedy.cardinality);

            // Exhaustive check over subsets of size up to 3.
            let m = inst.sets.len();
            let mut best_small = usize::MAX;
            for a in 0..m {
                let mut u = inst.sets[a].clone();
                if u.len() == n {
                    best_small = best_small.min(1);
                }
                for b in a + 1..m {
                    let mut u2 = u.clone();
                    u2.union_with(&inst.sets[b]);
                    if u2.len() == n {
                        best_small = best_small.min(2);
                    }
                    for c in b + 1..m {
                        let mut u3 = u2.clone();
                        u3.union_with(&inst.sets[c]);
                        if u3.len() == n {
                            best_small = best_small.min(3);
                        }
                    }
                }
                u.union_with(&inst.sets[a]);
            }
            if best_small <= 3 {
                assert_eq!(exact.cardinality, best_small);
            } else {
                assert!(exact.cardinality > 3);
            }
        }
    }

    #[test]
    fn exact_cap() {
        let sets: Vec<&[usize]> = (0..30).map(|_| [0usize].as_slice()).collect();
        let inst = sets_of(1, &sets);
        assert!(matches!(exact_cover(&inst, None), Err(Error::CapExceeded(_))));
        assert!(exact_cover(&inst, Some(64)).is_ok());
    }
}
