//! Copy enumeration: injective embeddings of a pattern into a host,
//! isomorphism and automorphism search built on the same backtracker.

use crate::graph::Graph;
use std::collections::{BTreeMap, BTreeSet};

/// Image signature of a copy: sorted vertex list plus sorted edge list.
pub(crate) type CopyImage = (Vec<usize>, Vec<(usize, usize)>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CopyMode {
    /// Pattern edges must map to host edges; host may have extra edges
    /// inside the image.
    Subgraph,
    /// Image must induce exactly the pattern (cross-component non-edges
    /// included).
    Induced,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumError {
    #[error("enumeration budget exhausted after {0} nodes")]
    Budget(u64),
}

#[derive(Debug, Clone)]
pub struct EnumLimits {
    pub node_limit: u64,
    /// Stop after this many copies (the result is then a prefix, not the
    /// full deduplicated list).
    pub max_copies: Option<usize>,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits { node_limit: 10_000_000, max_copies: None }
    }
}

/// All copies of `pattern` in `host`: injective maps pattern-vertex to
/// host-vertex, deduplicated up to automorphisms of the pattern (two maps
/// with the same image vertex set and image edge set count once; the
/// lexicographically smallest map represents the copy). Sorted
/// lexicographically on the map tuple.
pub fn enumerate_copies(
    pattern: &Graph,
    host: &Graph,
    mode: CopyMode,
    limits: &EnumLimits,
) -> Result<Vec<Vec<usize>>, EnumError> {
    let comps = pattern.components();
    if comps.is_empty() {
        return Ok(vec![Vec::new()]);
    }
    let mut nodes = 0u64;

    // Enumerate copies per component shape; isomorphic components share a
    // copy list through an iso into the first component of their group.
    struct Group {
        rep_verts: Vec<usize>,
        rep_graph: Graph,
        // (component vertices in pattern ids, map component-local -> rep-local)
        members: Vec<(Vec<usize>, Vec<usize>)>,
        copies: Vec<Vec<usize>>, // rep-local -> host
    }
    let mut groups: Vec<Group> = Vec::new();
    for comp in &comps {
        let (cg, _) = pattern.induced(comp);
        let mut placed = false;
        for g in groups.iter_mut() {
            if let Some(iso) = find_iso(&cg, &g.rep_graph, &mut nodes, limits.node_limit)? {
                g.members.push((comp.clone(), iso));
                placed = true;
                break;
            }
        }
        if !placed {
            let ident: Vec<usize> = (0..cg.n()).collect();
            groups.push(Group {
                rep_verts: comp.clone(),
                rep_graph: cg,
                members: vec![(comp.clone(), ident)],
                copies: Vec::new(),
            });
        }
    }
    let _ = &groups.iter().map(|g| &g.rep_verts); // rep_verts kept for debugging
    for g in groups.iter_mut() {
        g.copies = connected_copies(&g.rep_graph, host, mode, &mut nodes, limits.node_limit, None)?;
    }

    // Combine: pick pairwise vertex-disjoint copies, one per component.
    // Components of the same group pick strictly increasing copy indices
    // (permuting equal components is a pattern automorphism).
    let order: Vec<(usize, usize)> = {
        let mut o = Vec::new();
        for (gi, g) in groups.iter().enumerate() {
            for mi in 0..g.members.len() {
                o.push((gi, mi));
            }
        }
        o
    };
    let mut results: Vec<Vec<usize>> = Vec::new();
    let mut used: Vec<bool> = vec![false; host.n()];
    let mut chosen: Vec<usize> = Vec::new(); // copy index per order position
    let mut map = vec![usize::MAX; pattern.n()];

    #[allow(clippy::too_many_arguments)]
    fn rec(
        pos: usize,
        order: &[(usize, usize)],
        groups: &[Group],
        host: &Graph,
        mode: CopyMode,
        used: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        map: &mut Vec<usize>,
        results: &mut Vec<Vec<usize>>,
        nodes: &mut u64,
        limits: &EnumLimits,
    ) -> Result<bool, EnumError> {
        if let Some(cap) = limits.max_copies {
            if results.len() >= cap {
                return Ok(true);
            }
        }
        if pos == order.len() {
            results.push(map.clone());
            return Ok(false);
        }
        let (gi, mi) = order[pos];
        let g = &groups[gi];
        let start = if mi > 0 { chosen[pos - 1] + 1 } else { 0 };
        let (comp_verts, to_rep) = &g.members[mi];
        for ci in start..g.copies.len() {
            *nodes += 1;
            if *nodes > limits.node_limit {
                return Err(EnumError::Budget(*nodes));
            }
            let copy = &g.copies[ci];
            if copy.iter().any(|&h| used[h]) {
                continue;
            }
            // Induced mode: no host edges between this copy and earlier ones.
            if mode == CopyMode::Induced
                && copy
                    .iter()
                    .any(|&h| host.neighbors(h).iter().any(|&w| used[w]))
            {
                continue;
            }
            for &h in copy {
                used[h] = true;
            }
            for (local, &pv) in comp_verts.iter().enumerate() {
                map[pv] = copy[to_rep[local]];
            }
            chosen.push(ci);
            let stop = rec(pos + 1, order, groups, host, mode, used, chosen, map, results, nodes, limits)?;
            chosen.pop();
            for &h in copy {
                used[h] = false;
            }
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }

    rec(0, &order, &groups, host, mode, &mut used, &mut chosen, &mut map, &mut results, &mut nodes, limits)?;

    // A disjoint union of connected copies decomposes uniquely, so no
    // cross-selection duplicates arise; still sort for determinism.
    results.sort();
    results.dedup();
    Ok(results)
}

/// First copy if any; `None` means none exists (within budget).
pub fn find_copy(
    pattern: &Graph,
    host: &Graph,
    mode: CopyMode,
    limits: &EnumLimits,
) -> Result<Option<Vec<usize>>, EnumError> {
    let l = EnumLimits { node_limit: limits.node_limit, max_copies: Some(1) };
    Ok(enumerate_copies(pattern, host, mode, &l)?.into_iter().next())
}

/// Copies of a connected pattern, deduplicated by image (vertex set, edge
/// set), each represented by its lexicographically smallest map.
fn connected_copies(
    pattern: &Graph,
    host: &Graph,
    mode: CopyMode,
    nodes: &mut u64,
    node_limit: u64,
    max: Option<usize>,
) -> Result<Vec<Vec<usize>>, EnumError> {
    let twins = twin_classes(pattern);
    let mut best: BTreeMap<CopyImage, Vec<usize>> = BTreeMap::new();
    embed(pattern, host, mode, true, &twins, nodes, node_limit, &mut |map| {
        let mut vs: Vec<usize> = map.to_vec();
        vs.sort_unstable();
        let mut es: Vec<(usize, usize)> = pattern
            .edges()
            .map(|(u, v)| {
                let (a, b) = (map[u], map[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        es.sort_unstable();
        let key = (vs, es);
        match best.get_mut(&key) {
            Some(m) if map >= &m[..] => {}
            Some(m) => *m = map.to_vec(),
            None => {
                best.insert(key, map.to_vec());
            }
        }
        // Early exit only when a prefix was requested.
        max.is_some_and(|cap| best.len() >= cap)
    })?;
    let mut out: Vec<Vec<usize>> = best.into_values().collect();
    out.sort();
    Ok(out)
}

/// All injective embeddings of a connected or disconnected `a` onto all of
/// `b` (isomorphisms). `None` if not isomorphic.
fn find_iso(
    a: &Graph,
    b: &Graph,
    nodes: &mut u64,
    node_limit: u64,
) -> Result<Option<Vec<usize>>, EnumError> {
    if a.n() != b.n() || a.m() != b.m() || a.degree_sequence() != b.degree_sequence() {
        return Ok(None);
    }
    let mut found = None;
    embed(a, b, CopyMode::Induced, false, &[], nodes, node_limit, &mut |map| {
        found = Some(map.to_vec());
        true
    })?;
    Ok(found)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    let mut nodes = 0;
    matches!(find_iso(a, b, &mut nodes, u64::MAX), Ok(Some(_)))
}

/// All automorphisms of `g`, as maps old-id -> new-id, sorted. Stops and
/// returns `None` if there are more than `cap`.
pub fn automorphisms(g: &Graph, cap: usize) -> Option<Vec<Vec<usize>>> {
    if g.n() == 0 {
        return Some(vec![Vec::new()]);
    }
    let mut nodes = 0u64;
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut overflow = false;
    let r = embed(g, g, CopyMode::Induced, false, &[], &mut nodes, u64::MAX, &mut |map| {
        if out.len() >= cap {
            overflow = true;
            return true;
        }
        out.push(map.to_vec());
        false
    });
    if r.is_err() || overflow {
        return None;
    }
    out.sort();
    Some(out)
}

/// Injective embeddings of `pattern` into `host` (all of them, component
/// structure handled inline since callers here pass connected patterns or
/// need full isomorphisms where component interleaving matters).
///
/// `emit` returns true to stop the search.
#[allow(clippy::too_many_arguments)]
fn embed(
    pattern: &Graph,
    host: &Graph,
    mode: CopyMode,
    twin_break: bool,
    twins: &[Vec<usize>],
    nodes: &mut u64,
    node_limit: u64,
    emit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<(), EnumError> {
    let pn = pattern.n();
    if pn > host.n() {
        return Ok(());
    }
    if pn == 0 {
        emit(&[]);
        return Ok(());
    }
    // Order: repeatedly take the vertex with most placed neighbors, ties by
    // higher degree then lower id. Components are exhausted one at a time.
    let order = {
        let mut order: Vec<usize> = Vec::with_capacity(pn);
        let mut placed = vec![false; pn];
        while order.len() < pn {
            let mut bestv = usize::MAX;
            let mut bestkey = (0usize, 0usize, usize::MAX);
            for v in 0..pn {
                if placed[v] {
                    continue;
                }
                let anchored = pattern.neighbors(v).iter().filter(|&&w| placed[w]).count();
                // Prefer continuing the current component.
                let key = (anchored, pattern.degree(v), usize::MAX - v);
                if bestv == usize::MAX || key > bestkey {
                    bestv = v;
                    bestkey = key;
                }
            }
            placed[bestv] = true;
            order.push(bestv);
        }
        order
    };
    // earlier twin with smaller pattern id, if any, for symmetry breaking
    let mut twin_pred = vec![usize::MAX; pn];
    if twin_break {
        let pos: Vec<usize> = {
            let mut p = vec![0; pn];
            for (i, &v) in order.iter().enumerate() {
                p[v] = i;
            }
            p
        };
        for class in twins {
            for w in class.windows(2) {
                // Only break symmetry when the earlier twin is placed earlier.
                if pos[w[0]] < pos[w[1]] {
                    twin_pred[w[1]] = w[0];
                }
            }
        }
    }

    let mut map = vec![usize::MAX; pn];
    let mut used = vec![false; host.n()];

    fn rec(
        depth: usize,
        order: &[usize],
        pattern: &Graph,
        host: &Graph,
        mode: CopyMode,
        twin_pred: &[usize],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        nodes: &mut u64,
        node_limit: u64,
        emit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<bool, EnumError> {
        if depth == order.len() {
            return Ok(emit(map));
        }
        let v = order[depth];
        let anchors: Vec<usize> =
            pattern.neighbors(v).iter().copied().filter(|&w| map[w] != usize::MAX).collect();
        let candidates: Vec<usize> = if let Some(&a) = anchors.first() {
            host.neighbors(map[a]).to_vec()
        } else {
            (0..host.n()).collect()
        };
        let floor = if twin_pred[v] != usize::MAX { map[twin_pred[v]] } else { 0 };
        for h in candidates {
            *nodes += 1;
            if *nodes > node_limit {
                return Err(EnumError::Budget(*nodes));
            }
            if used[h] || h < floor || host.degree(h) < pattern.degree(v) {
                continue;
            }
            if anchors.iter().any(|&a| !host.has_edge(map[a], h)) {
                continue;
            }
            if mode == CopyMode::Induced {
                let clash = (0..pattern.n()).any(|w| {
                    map[w] != usize::MAX && !pattern.has_edge(v, w) && host.has_edge(map[w], h)
                });
                if clash {
                    continue;
                }
            }
            map[v] = h;
            used[h] = true;
            let stop = rec(depth + 1, order, pattern, host, mode, twin_pred, map, used, nodes, node_limit, emit)?;
            map[v] = usize::MAX;
            used[h] = false;
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }

    rec(0, &order, pattern, host, mode, &twin_pred, &mut map, &mut used, nodes, node_limit, emit)?;
    Ok(())
}

/// Twin classes: vertices u, v with N(u)\{v} = N(v)\{u} are interchangeable
/// by an automorphism. Classes are maximal sets that are pairwise twins.
fn twin_classes(g: &Graph) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let nb = |u: usize, excl: usize| -> BTreeSet<usize> {
        g.neighbors(u).iter().copied().filter(|&w| w != excl).collect()
    };
    'outer: for v in 0..g.n() {
        for class in classes.iter_mut() {
            if class.iter().all(|&u| nb(u, v) == nb(v, u)) {
                class.push(v);
                continue 'outer;
            }
        }
        classes.push(vec![v]);
    }
    classes.retain(|c| c.len() > 1);
    classes
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EmbeddingError {
    #[error("embedding has wrong length {got}, subgraph has {want} vertices")]
    WrongLength { got: usize, want: usize },
    #[error("embedding target {0} out of range")]
    OutOfRange(usize),
    #[error("embedding not injective: vertices {0} and {1} share image {2}")]
    NotInjective(usize, usize, usize),
    #[error("embedding not edge-preserving: edge ({0}, {1}) has no host edge")]
    NotEdgePreserving(usize, usize),
}

/// Does `embedding` realize `sub` as a weak induced subgraph of `host`?
/// Every component of `sub` must be induced in `host`; host edges between
/// different components are allowed.
pub fn is_weak_induced_embedding(
    sub: &Graph,
    host: &Graph,
    embedding: &[usize],
) -> Result<bool, EmbeddingError> {
    check_embedding(sub, host, embedding)?;
    for comp in sub.components() {
        for (i, &u) in comp.iter().enumerate() {
            for &v in &comp[i + 1..] {
                if host.has_edge(embedding[u], embedding[v]) != sub.has_edge(u, v) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// All graphs on exactly `n` unlabeled vertices, one representative per
/// isomorphism class, in increasing edge-mask order. Exponential; meant for
/// exhaustive small-case sweeps.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 6, "representative enumeration walks all 2^(n choose 2) graphs");
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut reps: Vec<Graph> = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let mut g = Graph::new(n);
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
        }
        if !reps.iter().any(|r| is_isomorphic(r, &g)) {
            reps.push(g);
        }
    }
    reps
}

/// Validates an injective edge-preserving embedding.
pub fn check_embedding(sub: &Graph, host: &Graph, embedding: &[usize]) -> Result<(), EmbeddingError> {
    if embedding.len() != sub.n() {
        return Err(EmbeddingError::WrongLength { got: embedding.len(), want: sub.n() });
    }
    for &h in embedding {
        if h >= host.n() {
            return Err(EmbeddingError::OutOfRange(h));
        }
    }
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    for (v, &h) in embedding.iter().enumerate() {
        if let Some(&u) = seen.get(&h) {
            return Err(EmbeddingError::NotInjective(u, v, h));
        }
        seen.insert(h, v);
    }
    for (u, v) in sub.edges() {
        if !host.has_edge(embedding[u], embedding[v]) {
            return Err(EmbeddingError::NotEdgePreserving(u, v));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::disjoint_union;

    fn copies(p: &Graph, h: &Graph, mode: CopyMode) -> Vec<Vec<usize>> {
        enumerate_copies(p, h, mode, &EnumLimits::default()).unwrap()
    }

    #[test]
    fn triangle_copies_in_k4() {
        // Oracle: brute force over vertex triples of K4, all induce triangles.
        let k4 = Graph::complete(4);
        let tri = copies(&Graph::complete(3), &k4, CopyMode::Subgraph);
        assert_eq!(tri.len(), 4);
        let ind = copies(&Graph::complete(3), &k4, CopyMode::Induced);
        assert_eq!(ind.len(), 4);
        assert_eq!(tri[0], vec![0, 1, 2]);
    }

    #[test]
    fn triangle_copies_in_k7() {
        // C(7,3) = 35 triples, each a triangle.
        let t = copies(&Graph::complete(3), &Graph::complete(7), CopyMode::Subgraph);
        assert_eq!(t.len(), 35);
    }

    #[test]
    fn induced_copies_are_a_subset_of_subgraph_copies() {
        let p3 = Graph::path(3);
        let k4 = Graph::complete(4);
        // P3 occurs as a subgraph of K4 but never induced.
        assert_eq!(copies(&p3, &k4, CopyMode::Induced).len(), 0);
        assert_eq!(copies(&p3, &k4, CopyMode::Subgraph).len(), 12);
        let c4 = Graph::cycle(4);
        let sub = copies(&p3, &c4, CopyMode::Subgraph);
        let ind = copies(&p3, &c4, CopyMode::Induced);
        assert_eq!(sub, ind);
        assert_eq!(sub.len(), 4);
    }

    #[test]
    fn star_copies_respect_leaf_symmetry() {
        // K_{1,2} in K_{1,3}: choose 2 of 3 leaves.
        let s = copies(&Graph::star(2), &Graph::star(3), CopyMode::Subgraph);
        assert_eq!(s.len(), 3);
        for m in &s {
            assert_eq!(m[0], 0);
        }
    }

    #[test]
    fn disconnected_pattern_2k2_in_c4() {
        // C4 = 0-1-2-3: the two perfect matchings.
        let c4 = Graph::cycle(4);
        let m = copies(&Graph::matching(2), &c4, CopyMode::Subgraph);
        assert_eq!(m.len(), 2);
        // Induced mode: matching components see each other across host edges.
        let mi = copies(&Graph::matching(2), &c4, CopyMode::Induced);
        assert_eq!(mi.len(), 0);
    }

    #[test]
    fn weak_induced_matching_in_c4() {
        // 2K2 into C4 componentwise-induced: each K2 is induced, cross edges
        // are allowed, so the embedding qualifies.
        let c4 = Graph::cycle(4);
        let m = Graph::matching(2);
        assert!(is_weak_induced_embedding(&m, &c4, &[0, 1, 2, 3]).unwrap());
        // P3 with an extra host edge between its endpoints is not induced.
        let p3 = Graph::path(3);
        let k3 = Graph::complete(3);
        assert!(!is_weak_induced_embedding(&p3, &k3, &[0, 1, 2]).unwrap());
        assert_eq!(
            is_weak_induced_embedding(&p3, &c4, &[0, 1, 3]),
            Err(EmbeddingError::NotEdgePreserving(1, 2))
        );
    }

    #[test]
    fn isomorphism_and_automorphisms() {
        assert!(is_isomorphic(&Graph::cycle(4), &Graph::complete_bipartite(2, 2)));
        assert!(!is_isomorphic(&Graph::cycle(5), &Graph::path(5)));
        assert!(is_isomorphic(
            &disjoint_union(&[Graph::path(2), Graph::complete(3)]).0,
            &disjoint_union(&[Graph::complete(3), Graph::path(2)]).0,
        ));
        assert_eq!(automorphisms(&Graph::complete(4), 100).unwrap().len(), 24);
        assert_eq!(automorphisms(&Graph::cycle(5), 100).unwrap().len(), 10);
        assert_eq!(automorphisms(&Graph::star(3), 100).unwrap().len(), 6);
        assert!(automorphisms(&Graph::complete(4), 10).is_none());
    }

    #[test]
    fn isolated_vertices_count_as_copies() {
        // K1 has one copy per host vertex; 2K1 picks unordered pairs.
        let host = Graph::path(3);
        assert_eq!(copies(&Graph::empty(1), &host, CopyMode::Subgraph).len(), 3);
        assert_eq!(copies(&Graph::empty(2), &host, CopyMode::Subgraph).len(), 3);
        // Induced 2K1 in P3: only the two endpoints are non-adjacent.
        assert_eq!(copies(&Graph::empty(2), &host, CopyMode::Induced).len(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let r = enumerate_copies(
            &Graph::path(4),
            &Graph::complete(9),
            CopyMode::Subgraph,
            &EnumLimits { node_limit: 50, max_copies: None },
        );
        assert!(matches!(r, Err(EnumError::Budget(_))));
    }

    #[test]
    fn copies_are_lex_sorted_and_minimal() {
        let out = copies(&Graph::path(3), &Graph::cycle(4), CopyMode::Subgraph);
        let mut sorted = out.clone();
        sorted.sort();
        assert_eq!(out, sorted);
        // Representative of the copy centered at 1 is [0,1,2], not [2,1,0].
        assert!(out.contains(&vec![0, 1, 2]));
        assert!(!out.contains(&vec![2, 1, 0]));
    }

    #[test]
    fn representative_counts_match_the_census() {
        // 1, 2, 4, 11, 34 unlabeled graphs on 1..=5 vertices.
        for (n, want) in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)] {
            let reps = nonisomorphic_graphs(n);
            assert_eq!(reps.len(), want, "n = {n}");
            for (i, a) in reps.iter().enumerate() {
                for b in &reps[..i] {
                    assert!(!is_isomorphic(a, b));
                }
            }
        }
    }
}
