//! Edge-partition search for classes closed under edge deletion.
//!
//! For such a class any injective cover can shed surplus guest edges until
//! the guest images partition the host edges, and no objective grows while
//! shedding. So the search assigns host edges, in canonical order, to parts
//! that must stay members the whole time (union-closure members for the
//! union variant, whose layers are exactly the parts). The prune is exact:
//! an intermediate part is an edge subset of its final form, so a non-member
//! part can never recover.

use std::collections::BTreeSet;
use std::time::Instant;

use crate::classes::GuestClass;
use crate::cover::{Claims, Cover, Variant};
use crate::graph::Graph;

use super::{certified, degree_floor, undecided, Search, SolveBudget, SolveError, SolveResult, Ticker};

pub(crate) fn drive(
    host: &Graph,
    class: &GuestClass,
    variant: Variant,
    budget: &SolveBudget,
    start: Instant,
) -> Result<SolveResult, SolveError> {
    // Edge deletion closes downward to single edges, so a class here without
    // K2 has no member with an edge at all.
    if !class.contains_k2() {
        let &edge = host.edge_set().iter().next().expect("host has edges");
        return Err(SolveError::NoCover { class: class.name().to_string(), edge });
    }
    let edges: Vec<(usize, usize)> = host.edge_set().iter().copied().collect();
    let mut ticker = Ticker::new(budget);
    let mut proof: Vec<String> = Vec::new();

    // Folded never reaches this engine.
    let mut k = match variant {
        Variant::Local => degree_floor(host, class, &mut proof)
            .max(density_floor(host, class, &mut proof)),
        _ => size_floor(host, class, variant, &mut proof),
    };
    // One single-edge part per host edge is always a valid leaf, so the
    // deepening must close by these depths.
    let ceiling = match variant {
        Variant::Local => host.max_degree(),
        _ => edges.len(),
    };
    loop {
        let mut state = PState {
            host,
            class,
            variant,
            edges: &edges,
            limit: k,
            parts: Vec::new(),
            load: vec![0usize; host.n()],
        };
        match state.dfs(0, &mut ticker) {
            Search::Found(cover) => {
                proof.push(format!(
                    "objective {k}: certificate found ({} guests)",
                    cover.guests.len()
                ));
                return Ok(certified(variant, k, cover, class, proof, Vec::new(), &ticker, start));
            }
            Search::Refuted => {
                proof.push(format!("objective {k}: refuted by exhaustive search"));
                k += 1;
                assert!(k <= ceiling, "single-edge parts must succeed by the ceiling");
            }
            Search::Exhausted => {
                proof.push(format!("objective {k}: search budget exhausted"));
                return Ok(undecided(variant, k, None, proof, Vec::new(), &ticker, start));
            }
        }
    }
}

/// Counting floor on part or layer count from edge capacity. A part is one
/// member, capped by the densest member that fits on the host. A layer is a
/// disjoint union of members: the named kinds this engine handles are closed
/// under disjoint union, so the same cap applies, and a finite-list layer on
/// n vertices is capped by the densest per-vertex member packing.
fn size_floor(host: &Graph, class: &GuestClass, variant: Variant, proof: &mut Vec<String>) -> usize {
    let m = host.m();
    let n = host.n();
    let cap = match (variant, class.members()) {
        (Variant::Union, Some(ms)) => ms
            .iter()
            .filter_map(|g| (n * g.m()).checked_div(g.without_isolated().0.n()))
            .max()
            .filter(|&c| c > 0),
        _ => class.max_member_edges(n),
    };
    match cap {
        Some(cap) if m > cap => {
            let k = m.div_ceil(cap);
            let what = if matches!(variant, Variant::Union) { "layer" } else { "guest" };
            proof.push(format!(
                "counting bound: {m} edges, at most {cap} per {what}, so the objective is at least {k}"
            ));
            k
        }
        _ => 1,
    }
}

/// Density floor for the local objective: part vertex counts sum to at most
/// s * n at load s, and a part on j vertices holds at most the class edge
/// cap, so the best packing bounds the edges coverable at load s.
fn density_floor(host: &Graph, class: &GuestClass, proof: &mut Vec<String>) -> usize {
    let n = host.n();
    let m = host.m();
    let dmax = host.max_degree();
    if n < 2 || dmax == 0 {
        return 1;
    }
    let cap: Vec<Option<usize>> = (0..=n).map(|j| class.max_member_edges(j)).collect();
    if cap.iter().all(Option::is_none) {
        return 1;
    }
    let mut pack = vec![0usize; dmax * n + 1];
    for b in 1..=dmax * n {
        for j in 2..=n.min(b) {
            if let Some(e) = cap[j] {
                pack[b] = pack[b].max(pack[b - j] + e);
            }
        }
    }
    let mut s = 1;
    while s < dmax && pack[s * n] < m {
        s += 1;
    }
    if s > 1 {
        proof.push(format!(
            "counting bound: guests at load {} pack at most {} edges over {} vertex slots, so the objective is at least {s}",
            s - 1,
            pack[(s - 1) * n],
            (s - 1) * n
        ));
    }
    s
}

struct PState<'a> {
    host: &'a Graph,
    class: &'a GuestClass,
    variant: Variant,
    edges: &'a [(usize, usize)],
    /// Max parts (global, union) or max load (local).
    limit: usize,
    parts: Vec<Part>,
    /// Local only: parts touching each host vertex.
    load: Vec<usize>,
}

struct Part {
    edges: Vec<(usize, usize)>,
    verts: BTreeSet<usize>,
}

impl PState<'_> {
    fn dfs(&mut self, idx: usize, ticker: &mut Ticker) -> Search {
        if idx == self.edges.len() {
            return Search::Found(self.build_cover());
        }
        if !ticker.tick() {
            return Search::Exhausted;
        }
        let e = self.edges[idx];
        for p in 0..self.parts.len() {
            if !self.fits(p, e) {
                continue;
            }
            self.push_edge(p, e);
            if self.part_ok(p) {
                match self.dfs(idx + 1, ticker) {
                    Search::Refuted => {}
                    done => {
                        self.pop_edge(p, e);
                        return done;
                    }
                }
            }
            self.pop_edge(p, e);
        }
        // A fresh part holding e alone is a K2: member and closure member.
        if self.can_open(e) {
            self.open_part(e);
            match self.dfs(idx + 1, ticker) {
                Search::Refuted => {}
                done => {
                    self.close_part(e);
                    return done;
                }
            }
            self.close_part(e);
        }
        Search::Refuted
    }

    fn local(&self) -> bool {
        matches!(self.variant, Variant::Local)
    }

    fn fits(&self, p: usize, e: (usize, usize)) -> bool {
        if !self.local() {
            return true;
        }
        for v in [e.0, e.1] {
            if !self.parts[p].verts.contains(&v) && self.load[v] + 1 > self.limit {
                return false;
            }
        }
        true
    }

    fn can_open(&self, e: (usize, usize)) -> bool {
        if self.local() {
            self.load[e.0] < self.limit && self.load[e.1] < self.limit
        } else {
            self.parts.len() < self.limit
        }
    }

    fn push_edge(&mut self, p: usize, e: (usize, usize)) {
        for v in [e.0, e.1] {
            if self.parts[p].verts.insert(v) && self.local() {
                self.load[v] += 1;
            }
        }
        self.parts[p].edges.push(e);
    }

    fn pop_edge(&mut self, p: usize, e: (usize, usize)) {
        self.parts[p].edges.pop();
        for v in [e.0, e.1] {
            if !self.parts[p].edges.iter().any(|&(a, b)| a == v || b == v) {
                self.parts[p].verts.remove(&v);
                if self.local() {
                    self.load[v] -= 1;
                }
            }
        }
    }

    fn open_part(&mut self, e: (usize, usize)) {
        self.parts.push(Part { edges: vec![e], verts: BTreeSet::from([e.0, e.1]) });
        if self.local() {
            self.load[e.0] += 1;
            self.load[e.1] += 1;
        }
    }

    fn close_part(&mut self, e: (usize, usize)) {
        self.parts.pop();
        if self.local() {
            self.load[e.0] -= 1;
            self.load[e.1] -= 1;
        }
    }

    fn part_ok(&self, p: usize) -> bool {
        let (g, _) = self.host.edge_subgraph(&self.parts[p].edges);
        match self.variant {
            Variant::Union => self.class.union_closure_member(&g),
            _ => self.class.is_member(&g),
        }
    }

    fn build_cover(&self) -> Cover {
        let mut guests: Vec<(Graph, Vec<usize>)> = Vec::new();
        let mut layers: Option<Vec<Vec<usize>>> = match self.variant {
            Variant::Union => Some(Vec::new()),
            _ => None,
        };
        for part in &self.parts {
            let (g, old) = self.host.edge_subgraph(&part.edges);
            match &mut layers {
                Some(ls) => {
                    // The part is the layer; its components are the guests.
                    // Components of a closure member are members themselves
                    // for an edge-deletion-closed class.
                    let mut layer = Vec::new();
                    for comp in g.components() {
                        let (cg, cold) = g.induced(&comp);
                        let map: Vec<usize> = cold.iter().map(|&i| old[i]).collect();
                        layer.push(guests.len());
                        guests.push((cg, map));
                    }
                    ls.push(layer);
                }
                None => guests.push((g, old)),
            }
        }
        let mut loads = vec![0usize; self.host.n()];
        for (_, map) in &guests {
            for &v in map {
                loads[v] += 1;
            }
        }
        let locality = loads.iter().copied().max().unwrap_or(0);
        let globality = match &layers {
            Some(ls) => ls.len(),
            None => guests.len(),
        };
        Cover {
            host: self.host.clone(),
            guests,
            claims: Claims {
                class_name: self.class.name().to_string(),
                injective: true,
                locality,
                globality,
                union_layers: layers,
            },
        }
    }
}
