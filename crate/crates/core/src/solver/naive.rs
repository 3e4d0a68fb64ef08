//! Brute-force reference solver for tiny hosts.
//!
//! Everything here is deliberately naive: guest placements are enumerated as
//! raw vertex maps, and minimal covers come from breadth-first search over
//! covered-edge masks (global, union) or depth-first search over load
//! vectors (local, folded). None of the pruning or ordering machinery of the
//! real engines is shared, so agreement between the two is meaningful
//! evidence. Costs are exponential in the host's edge count; callers keep
//! hosts at a handful of vertices.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::cover::Variant;
use crate::graph::Graph;

/// One way to lay a member over the host: how often each host vertex is hit,
/// and which host edges are realized. Placements realizing no edge are
/// dropped up front, since removing such a guest from a cover never hurts
/// any of the four objectives.
struct Placement {
    vmult: Vec<u8>,
    edges: u32,
}

/// Minimum objective value over covers of `host` by the listed members, or
/// None when some edge cannot be covered at all. Injective variants use
/// injective placements; the folded variant uses arbitrary homomorphisms
/// with no repetition limit.
pub fn naive_cover_number(host: &Graph, members: &[Graph], variant: Variant) -> Option<usize> {
    let m = host.m();
    if m == 0 {
        return Some(0);
    }
    assert!(m <= 16, "edge masks are u32 and the search is exponential");
    assert!(host.n() <= 9, "load keys pack nine 5-bit counters");
    let ps = placements(host, members, variant != Variant::Folded);
    let full: u32 = (1 << m) - 1;
    if ps.iter().fold(0, |a, p| a | p.edges) != full {
        return None;
    }
    match variant {
        Variant::Global => min_guest_sets(ps.iter().map(|p| p.edges).collect(), full),
        Variant::Union => min_guest_sets(layer_masks(&ps), full),
        Variant::Local | Variant::Folded => {
            // One placement per edge keeps every load at or below m, so the
            // sweep is bounded.
            (1..=m).find(|&s| covers_with_load(host.n(), &ps, full, s))
        }
    }
}

/// All edge-realizing maps of every member into the host, deduplicated by
/// their effect (vertex multiplicities and realized edges).
fn placements(host: &Graph, members: &[Graph], injective: bool) -> Vec<Placement> {
    let n = host.n();
    let host_edges: Vec<(usize, usize)> = host.edge_set().iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for g in members {
        let gedges: Vec<(usize, usize)> = g.edges().collect();
        let mut map = Vec::with_capacity(g.n());
        all_maps(&mut map, g.n(), n, &mut |map| {
            if injective {
                let mut used = 0u32;
                for &x in map {
                    if used >> x & 1 == 1 {
                        return;
                    }
                    used |= 1 << x;
                }
            }
            let mut mask = 0u32;
            for &(a, b) in &gedges {
                let (u, v) = (map[a].min(map[b]), map[a].max(map[b]));
                match host_edges.iter().position(|&e| e == (u, v)) {
                    Some(i) if u != v => mask |= 1 << i,
                    _ => return,
                }
            }
            if mask != 0 {
                let mut vmult = vec![0u8; n];
                for &x in map {
                    vmult[x] += 1;
                }
                if seen.insert((vmult.clone(), mask)) {
                    out.push(Placement { vmult, edges: mask });
                }
            }
        });
    }
    out
}

fn all_maps(map: &mut Vec<usize>, k: usize, n: usize, f: &mut impl FnMut(&[usize])) {
    if map.len() == k {
        f(map);
        return;
    }
    for x in 0..n {
        map.push(x);
        all_maps(map, k, n, f);
        map.pop();
    }
}

/// Fewest options whose union is `full`; BFS over covered-edge masks, every
/// option costing one.
fn min_guest_sets(options: Vec<u32>, full: u32) -> Option<usize> {
    let mut dist = vec![u16::MAX; full as usize + 1];
    let mut queue = VecDeque::new();
    dist[0] = 0;
    queue.push_back(0u32);
    while let Some(s) = queue.pop_front() {
        if s == full {
            return Some(dist[full as usize] as usize);
        }
        for o in &options {
            let t = s | o;
            if dist[t as usize] == u16::MAX {
                dist[t as usize] = dist[s as usize] + 1;
                queue.push_back(t);
            }
        }
    }
    None
}

/// Edge masks coverable by one layer, i.e. by placements with pairwise
/// disjoint vertex supports. Placements here are injective, so the support
/// is just the set of hit vertices.
fn layer_masks(ps: &[Placement]) -> Vec<u32> {
    let supports: Vec<u32> = ps
        .iter()
        .map(|p| {
            p.vmult
                .iter()
                .enumerate()
                .fold(0u32, |a, (i, &x)| if x > 0 { a | 1 << i } else { a })
        })
        .collect();
    let mut out = BTreeSet::new();
    fn rec(
        from: usize,
        used: u32,
        covered: u32,
        ps: &[Placement],
        supports: &[u32],
        out: &mut BTreeSet<u32>,
    ) {
        for j in from..ps.len() {
            if supports[j] & used == 0 {
                out.insert(covered | ps[j].edges);
                rec(j + 1, used | supports[j], covered | ps[j].edges, ps, supports, out);
            }
        }
    }
    rec(0, 0, 0, ps, &supports, &mut out);
    out.into_iter().collect()
}

/// Is there a cover with every vertex load at most `s`? DFS on the first
/// uncovered edge with a visited-state cache; any cover contains a placement
/// realizing that edge, so the branching is complete.
fn covers_with_load(n: usize, ps: &[Placement], full: u32, s: usize) -> bool {
    let usable: Vec<&Placement> =
        ps.iter().filter(|p| p.vmult.iter().all(|&x| x as usize <= s)).collect();
    let mut seen = HashSet::new();
    let mut loads = vec![0u8; n];
    dfs_load(0, &mut loads, &usable, full, s, &mut seen)
}

fn state_key(covered: u32, loads: &[u8]) -> u64 {
    loads
        .iter()
        .enumerate()
        .fold(covered as u64, |k, (i, &l)| k | (l as u64) << (16 + 5 * i))
}

fn dfs_load(
    covered: u32,
    loads: &mut [u8],
    ps: &[&Placement],
    full: u32,
    s: usize,
    seen: &mut HashSet<u64>,
) -> bool {
    if covered == full {
        return true;
    }
    let e = (!covered & full).trailing_zeros();
    for p in ps {
        if p.edges >> e & 1 == 0
            || loads.iter().zip(&p.vmult).any(|(&l, &d)| (l + d) as usize > s)
        {
            continue;
        }
        for (l, d) in loads.iter_mut().zip(&p.vmult) {
            *l += d;
        }
        let next = covered | p.edges;
        if seen.insert(state_key(next, loads)) && dfs_load(next, loads, ps, full, s, seen) {
            return true;
        }
        for (l, d) in loads.iter_mut().zip(&p.vmult) {
            *l -= d;
        }
    }
    false
}
