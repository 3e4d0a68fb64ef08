//! Certified lower bounds for the union covering number.
//!
//! The search engines produce floors that depend on budgets. This module
//! instead certifies `c_u >= t` from structural facts that exhaustive copy
//! enumeration can confirm outright. The intended hosts are built so that
//! `t` special guests collide pairwise wherever they embed, while the only
//! other class member small enough to embed is a single edge.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};

use crate::graph::Graph;
use crate::iso::{enumerate_copies, is_isomorphic, CopyMode, EnumLimits};

/// Evidence backing a certified bound, one row per checked hypothesis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundTrace {
    /// Per special: number of hat components and number of enumerated hat
    /// images in the host.
    pub copy_counts: Vec<(usize, usize)>,
    /// Per pair `(a, b)` with `a < b`: a host vertex that every copy of
    /// special `a` and every copy of special `b` contain.
    pub intersections: Vec<(usize, usize, usize)>,
    /// Per special: a host vertex and how many of its incident edges no
    /// other special's hat image covers.
    pub fallback_sites: Vec<(usize, usize)>,
}

/// A certified union lower bound together with its evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniqueCopiesBound {
    pub bound: usize,
    pub trace: BoundTrace,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundError {
    #[error("no special guests were supplied")]
    Empty,
    #[error("special {guest} is not a disjoint union of copies of one connected graph with an edge")]
    MixedComponents { guest: usize },
    #[error("special {guest} has no copy in the host")]
    NoCopies { guest: usize },
    #[error("special {guest} has hat images in {found} host components but needs exactly {need}")]
    SupportMismatch { guest: usize, found: usize, need: usize },
    #[error("the {copies} hat images of special {guest} in one host component share no vertex")]
    CoreEmpty { guest: usize, copies: usize },
    #[error("specials {a} and {b} admit vertex-disjoint copies")]
    DisjointPair { a: usize, b: usize },
    #[error("special {guest}: best exclusive-edge site has {best} edges, need {need}")]
    PendantShortfall { guest: usize, best: usize, need: usize },
    #[error("copy enumeration exceeded its budget")]
    Budget,
}

/// Certify `specials.len()` as a lower bound on the union covering number
/// of `host` against any guest class whose members with a copy in `host`
/// are exactly `K2` and the given specials.
///
/// Each special must be a disjoint union of copies of one connected "hat".
/// The checked hypotheses, in order:
///
/// 1. the hat images of special `i` occupy exactly as many host components
///    as the special has hat copies, and within each such component all
///    images share a common vertex (the core); disjoint hats then land one
///    per component, so every copy of special `i` contains every core;
/// 2. for every pair of specials some component has intersecting cores, so
///    copies of distinct specials always share a vertex;
/// 3. for every special `i` some host vertex carries at least `t` edges
///    covered by no hat image of any other special.
///
/// A union layer holds guests with pairwise disjoint images, so by 1 and 2
/// the special copies a cover uses occupy one layer each. A cover that uses
/// every special therefore needs `t` layers. A cover that skips special `i`
/// must cover the `t` edges from hypothesis 3 with single-edge guests,
/// because a copy of special `j` covers an edge only through one of its
/// enumerated hat images; those single-edge guests meet at the site vertex
/// and again force `t` layers.
///
/// Returns the bound and its evidence, or refuses with the hypothesis that
/// failed; a refusal certifies nothing in either direction.
pub fn lower_bound_unique_copies(
    host: &Graph,
    specials: &[Graph],
) -> Result<UniqueCopiesBound, BoundError> {
    let t = specials.len();
    if t == 0 {
        return Err(BoundError::Empty);
    }

    let mut comp_of = vec![usize::MAX; host.n()];
    for (ci, comp) in host.components().iter().enumerate() {
        for &v in comp {
            comp_of[v] = ci;
        }
    }

    // Split each special into copies of one connected hat.
    let mut hats: Vec<(Graph, usize)> = Vec::with_capacity(t);
    for (i, g) in specials.iter().enumerate() {
        let comps = g.components();
        if comps.is_empty() {
            return Err(BoundError::MixedComponents { guest: i });
        }
        let (hat, _) = g.induced(&comps[0]);
        if hat.m() == 0 {
            return Err(BoundError::MixedComponents { guest: i });
        }
        for comp in &comps[1..] {
            let (cg, _) = g.induced(comp);
            if !is_isomorphic(&cg, &hat) {
                return Err(BoundError::MixedComponents { guest: i });
            }
        }
        hats.push((hat, comps.len()));
    }

    // Enumerate every hat image, group by host component, intersect vertex
    // sets into cores, and record which specials can cover each host edge.
    let limits = EnumLimits::default();
    let mut edge_owner: BTreeMap<(usize, usize), BTreeSet<usize>> = BTreeMap::new();
    let mut cores: Vec<BTreeMap<usize, BTreeSet<usize>>> = Vec::with_capacity(t);
    let mut copy_counts: Vec<(usize, usize)> = Vec::with_capacity(t);
    for (i, (hat, mult)) in hats.iter().enumerate() {
        let copies = enumerate_copies(hat, host, CopyMode::Subgraph, &limits)
            .map_err(|_| BoundError::Budget)?;
        if copies.is_empty() {
            return Err(BoundError::NoCopies { guest: i });
        }
        let mut per_comp: BTreeMap<usize, (BTreeSet<usize>, usize)> = BTreeMap::new();
        for map in &copies {
            for (a, b) in hat.edges() {
                let (u, v) = (map[a], map[b]);
                edge_owner.entry((u.min(v), u.max(v))).or_default().insert(i);
            }
            let verts: BTreeSet<usize> = map.iter().copied().collect();
            // The hat is connected, so its image sits in one host component.
            match per_comp.entry(comp_of[map[0]]) {
                Entry::Vacant(e) => {
                    e.insert((verts, 1));
                }
                Entry::Occupied(mut e) => {
                    let (core, count) = e.get_mut();
                    core.retain(|v| verts.contains(v));
                    *count += 1;
                }
            }
        }
        if per_comp.len() != *mult {
            return Err(BoundError::SupportMismatch {
                guest: i,
                found: per_comp.len(),
                need: *mult,
            });
        }
        for (core, count) in per_comp.values() {
            if core.is_empty() {
                return Err(BoundError::CoreEmpty { guest: i, copies: *count });
            }
        }
        copy_counts.push((*mult, copies.len()));
        cores.push(per_comp.into_iter().map(|(c, (core, _))| (c, core)).collect());
    }

    // Pairwise collision: some component where both cores meet.
    let mut intersections: Vec<(usize, usize, usize)> = Vec::new();
    for a in 0..t {
        for b in (a + 1)..t {
            let witness = cores[a].iter().find_map(|(comp, core_a)| {
                let core_b = cores[b].get(comp)?;
                core_a.intersection(core_b).next().copied()
            });
            match witness {
                Some(v) => intersections.push((a, b, v)),
                None => return Err(BoundError::DisjointPair { a, b }),
            }
        }
    }

    // Fallback sites: a vertex per special with t edges only it can cover.
    let mut fallback_sites: Vec<(usize, usize)> = Vec::with_capacity(t);
    for i in 0..t {
        let mut at = vec![0usize; host.n()];
        for (u, v) in host.edges() {
            let key = (u.min(v), u.max(v));
            let exclusive =
                edge_owner.get(&key).is_none_or(|owners| owners.iter().all(|&o| o == i));
            if exclusive {
                at[u] += 1;
                at[v] += 1;
            }
        }
        let (mut best_v, mut best) = (0, 0);
        for (v, &count) in at.iter().enumerate() {
            if count > best {
                best_v = v;
                best = count;
            }
        }
        if best < t {
            return Err(BoundError::PendantShortfall { guest: i, best, need: t });
        }
        fallback_sites.push((best_v, best));
    }

    Ok(UniqueCopiesBound {
        bound: t,
        trace: BoundTrace { copy_counts, intersections, fallback_sites },
    })
}
