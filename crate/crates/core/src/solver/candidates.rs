//! Candidate-image search for injective variants of classes that cannot
//! shed edges.
//!
//! Guests embed injectively, so every way a guest can appear in the host is
//! one candidate: an image vertex set, an image edge set, the member graph
//! and one embedding. Finite lists enumerate subgraph copies of each member;
//! the named kinds (cliques, complete bipartite, hairy cycles) have
//! generators walking the host directly. The cover searches then branch on
//! the first uncovered host edge. At the root, candidates are filtered to
//! one representative per orbit of the host automorphisms stabilizing that
//! edge; deeper states are no longer symmetric, so the filter stays at the
//! root.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use crate::classes::{CandidateKind, GuestClass};
use crate::cover::{Claims, Cover, Variant};
use crate::graph::Graph;
use crate::iso::{automorphisms, enumerate_copies, CopyMode, EnumLimits};

use super::{certified, undecided, Search, SolveBudget, SolveError, SolveResult, Ticker};

pub(crate) fn drive(
    host: &Graph,
    class: &GuestClass,
    variant: Variant,
    kind: CandidateKind,
    budget: &SolveBudget,
    start: Instant,
) -> Result<SolveResult, SolveError> {
    let mut ticker = Ticker::new(budget);
    let mut proof: Vec<String> = Vec::new();
    let edges: Vec<(usize, usize)> = host.edge_set().iter().copied().collect();
    let edge_index: BTreeMap<(usize, usize), usize> =
        edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();

    let mut cands = match enumerate(kind, host, class, &mut ticker) {
        Ok(c) => c,
        Err(why) => {
            return Ok(undecided(
                variant,
                1,
                None,
                vec![format!("candidate enumeration stopped: {why}")],
                vec![why],
                &ticker,
                start,
            ));
        }
    };
    // Canonical order, independent of generator order.
    cands.sort_by(|a, b| (&a.verts, &a.edges).cmp(&(&b.verts, &b.edges)));
    cands.dedup_by(|a, b| a.verts == b.verts && a.edges == b.edges);
    for c in &mut cands {
        c.eidx = c.edges.iter().map(|e| edge_index[e]).collect();
    }
    proof.push(format!("{} candidate guest images", cands.len()));

    let mut cover_ids: Vec<Vec<usize>> = vec![Vec::new(); edges.len()];
    for (ci, c) in cands.iter().enumerate() {
        for &ei in &c.eidx {
            cover_ids[ei].push(ci);
        }
    }
    if let Some(ei) = cover_ids.iter().position(|ids| ids.is_empty()) {
        // Enumeration ran to completion, so an uncoverable edge is final.
        return Err(SolveError::NoCover {
            class: class.name().to_string(),
            edge: edges[ei],
        });
    }

    let root_ok = root_filter(host, &cands, &cover_ids[0]);
    let max_cand_edges = cands.iter().map(|c| c.edges.len()).max().unwrap_or(1);

    // packcap[r]: most edges vertex-disjoint candidates can pack into r host
    // vertices. Bounds one union layer, and load-s covers overall through
    // packcap[s * n]. Monotone in r since slack is allowed.
    let packcap: Vec<usize> = {
        let n = host.n();
        let dmax = host.max_degree().max(1);
        let mut by_size = vec![0usize; n + 1];
        for c in &cands {
            by_size[c.verts.len()] = by_size[c.verts.len()].max(c.edges.len());
        }
        let mut pack = vec![0usize; dmax * n + 1];
        for b in 1..=dmax * n {
            for j in 1..=n.min(b) {
                if by_size[j] > 0 {
                    pack[b] = pack[b].max(pack[b - j] + by_size[j]);
                }
            }
        }
        pack
    };

    let mut k = floor(variant, host, &edges, &cands, &packcap, &mut proof);
    let ceiling = match variant {
        // Covering the first uncovered edge each step succeeds within m picks.
        Variant::Global | Variant::Union => edges.len(),
        Variant::Local => {
            (0..host.n())
                .map(|v| cands.iter().filter(|c| c.verts.binary_search(&v).is_ok()).count())
                .max()
                .unwrap_or(1)
        }
        Variant::Folded => unreachable!("folded has its own engine"),
    };
    loop {
        let mut s = CSearch {
            cands: &cands,
            cover_ids: &cover_ids,
            root_ok: &root_ok,
            packcap: &packcap,
            host,
            class,
            limit: k,
            max_cand_edges,
            covered: vec![0u32; edges.len()],
            uncovered: edges.len(),
            chosen: Vec::new(),
            layers: Vec::new(),
            loads: vec![0usize; host.n()],
        };
        let outcome = match variant {
            Variant::Global => s.dfs_global(0, k, &mut ticker),
            Variant::Union => s.dfs_union(0, &mut ticker),
            Variant::Local => s.dfs_local(0, &mut ticker),
            Variant::Folded => unreachable!(),
        };
        match outcome {
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
                assert!(k <= ceiling, "taking every candidate must succeed by the ceiling");
            }
            Search::Exhausted => {
                proof.push(format!("objective {k}: search budget exhausted"));
                return Ok(undecided(variant, k, None, proof, Vec::new(), &ticker, start));
            }
        }
    }
}

/// Sound starting depths from counting.
fn floor(
    variant: Variant,
    host: &Graph,
    edges: &[(usize, usize)],
    cands: &[Candidate],
    packcap: &[usize],
    proof: &mut Vec<String>,
) -> usize {
    match variant {
        Variant::Global => {
            let per = cands.iter().map(|c| c.edges.len()).max().unwrap_or(1);
            let k = edges.len().div_ceil(per);
            if k > 1 {
                proof.push(format!(
                    "counting bound: {} edges, at most {per} per guest, so the objective is at least {k}",
                    edges.len()
                ));
            }
            k
        }
        Variant::Union => {
            // One layer packs vertex-disjoint candidates into n vertices.
            let per_layer = packcap[host.n()].max(1);
            let k = edges.len().div_ceil(per_layer);
            if k > 1 {
                proof.push(format!(
                    "counting bound: a layer holds at most {per_layer} edges, so the objective is at least {k}",
                ));
            }
            k
        }
        Variant::Local => {
            let mut best = 1;
            let mut at = None;
            for v in 0..host.n() {
                let cap = cands
                    .iter()
                    .filter(|c| c.verts.binary_search(&v).is_ok())
                    .map(|c| c.edges.iter().filter(|&&(a, b)| a == v || b == v).count())
                    .max()
                    .unwrap_or(1)
                    .max(1);
                let need = host.degree(v).div_ceil(cap);
                if need > best {
                    best = need;
                    at = Some((v, cap));
                }
            }
            if let Some((v, cap)) = at {
                proof.push(format!(
                    "counting bound: vertex {v} has degree {} and a guest covers at most {cap} of its edges, so the objective is at least {best}",
                    host.degree(v)
                ));
            }
            // Density: guest vertex counts sum to at most s * n at load s,
            // and a guest on j vertices has at most the packed edge count.
            let m = edges.len();
            let n = host.n();
            let mut s = best;
            while s * n < packcap.len() && packcap[s * n] < m {
                s += 1;
            }
            if s > best {
                proof.push(format!(
                    "counting bound: guests at load {} pack at most {} edges over {} vertex slots, so the objective is at least {s}",
                    s - 1,
                    packcap[(s - 1) * n],
                    (s - 1) * n
                ));
            }
            s.max(best)
        }
        Variant::Folded => unreachable!(),
    }
}

pub(crate) struct Candidate {
    /// Sorted image vertices (isolated guest vertices included).
    verts: Vec<usize>,
    /// Sorted image edges.
    edges: Vec<(usize, usize)>,
    guest: Graph,
    map: Vec<usize>,
    /// Indices of `edges` in the host's canonical edge list.
    eidx: Vec<usize>,
}

fn candidate(guest: Graph, map: Vec<usize>) -> Candidate {
    let verts: Vec<usize> = {
        let s: BTreeSet<usize> = map.iter().copied().collect();
        s.into_iter().collect()
    };
    let edges: Vec<(usize, usize)> = {
        let s: BTreeSet<(usize, usize)> = guest
            .edges()
            .map(|(a, b)| {
                let (x, y) = (map[a], map[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        s.into_iter().collect()
    };
    Candidate { verts, edges, guest, map, eidx: Vec::new() }
}

fn enumerate(
    kind: CandidateKind,
    host: &Graph,
    class: &GuestClass,
    ticker: &mut Ticker,
) -> Result<Vec<Candidate>, String> {
    match kind {
        CandidateKind::List => enumerate_list(host, class, ticker),
        CandidateKind::Cliques => enumerate_cliques(host, ticker),
        CandidateKind::Bicliques => enumerate_bicliques(host, ticker),
        CandidateKind::HairyCycles => enumerate_hairy(host, ticker),
    }
}

fn enumerate_list(
    host: &Graph,
    class: &GuestClass,
    ticker: &mut Ticker,
) -> Result<Vec<Candidate>, String> {
    const COPY_CAP: usize = 500_000;
    let mut out = Vec::new();
    for m in class.members().expect("list class") {
        if m.m() == 0 {
            continue; // covers nothing
        }
        let limits = EnumLimits {
            node_limit: ticker.remaining().max(1),
            max_copies: Some(COPY_CAP),
        };
        match enumerate_copies(m, host, CopyMode::Subgraph, &limits) {
            Ok(maps) => {
                // A full prefix cannot be told apart from a complete list.
                if maps.len() >= COPY_CAP {
                    return Err("candidate cap hit; the candidate set may be incomplete".into());
                }
                ticker.charge(maps.len() as u64);
                for map in maps {
                    out.push(candidate(m.clone(), map));
                }
            }
            Err(e) => return Err(format!("copy enumeration ran out of budget ({e})")),
        }
    }
    Ok(out)
}

fn enumerate_cliques(host: &Graph, ticker: &mut Ticker) -> Result<Vec<Candidate>, String> {
    let n = host.n();
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn extend(
        host: &Graph,
        from: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Candidate>,
        ticker: &mut Ticker,
    ) -> bool {
        for v in from..host.n() {
            if !cur.iter().all(|&u| host.has_edge(u, v)) {
                continue;
            }
            if !ticker.tick() {
                return false;
            }
            cur.push(v);
            if cur.len() >= 2 {
                out.push(candidate(Graph::complete(cur.len()), cur.clone()));
            }
            if !extend(host, v + 1, cur, out, ticker) {
                return false;
            }
            cur.pop();
        }
        true
    }
    for s in 0..n {
        cur.push(s);
        if !extend(host, s + 1, &mut cur, &mut out, ticker) {
            return Err("clique enumeration ran out of budget".into());
        }
        cur.pop();
    }
    Ok(out)
}

fn enumerate_bicliques(host: &Graph, ticker: &mut Ticker) -> Result<Vec<Candidate>, String> {
    let n = host.n();
    if n > 20 {
        return Err(format!("host has {n} vertices; biclique enumeration is capped at 20"));
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| host.neighbors(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let bits = |mut m: u32| {
        let mut v = Vec::new();
        while m != 0 {
            let b = m.trailing_zeros() as usize;
            v.push(b);
            m &= m - 1;
        }
        v
    };
    let mut out = Vec::new();
    for a in 1u32..(1 << n) {
        if !ticker.tick() {
            return Err("biclique enumeration ran out of budget".into());
        }
        let mut common = (1u32 << n) - 1;
        for v in bits(a) {
            common &= adj[v];
        }
        // Sides are unordered: force min(A) < min(B).
        let low = a.trailing_zeros();
        common &= !((1u32 << (low + 1)) - 1);
        if common == 0 {
            continue;
        }
        let side_a = bits(a);
        let mut b = common;
        while b != 0 {
            if !ticker.tick() {
                return Err("biclique enumeration ran out of budget".into());
            }
            let side_b = bits(b);
            let mut map = side_a.clone();
            map.extend(&side_b);
            out.push(candidate(
                Graph::complete_bipartite(side_a.len(), side_b.len()),
                map,
            ));
            b = (b - 1) & common;
        }
    }
    Ok(out)
}

fn enumerate_hairy(host: &Graph, ticker: &mut Ticker) -> Result<Vec<Candidate>, String> {
    let mut out = Vec::new();
    // Every single edge is a K2 guest.
    for &(u, v) in host.edge_set() {
        out.push(candidate(Graph::matching(1), vec![u, v]));
    }
    // Simple cycles, smallest vertex first; path[1] < last fixes orientation.
    let n = host.n();
    let mut path: Vec<usize> = Vec::new();
    let mut in_path = vec![false; n];
    fn walk(
        host: &Graph,
        s: usize,
        path: &mut Vec<usize>,
        in_path: &mut Vec<bool>,
        out: &mut Vec<Candidate>,
        ticker: &mut Ticker,
    ) -> bool {
        let u = *path.last().unwrap();
        for &w in host.neighbors(u) {
            if w == s && path.len() >= 3 && path[1] < u && !emit_cycle(host, path, out, ticker) {
                return false;
            }
            if w > s && !in_path[w] {
                if !ticker.tick() {
                    return false;
                }
                path.push(w);
                in_path[w] = true;
                if !walk(host, s, path, in_path, out, ticker) {
                    return false;
                }
                path.pop();
                in_path[w] = false;
            }
        }
        true
    }
    for s in 0..n {
        path.push(s);
        in_path[s] = true;
        if !walk(host, s, &mut path, &mut in_path, &mut out, ticker) {
            return Err("hairy cycle enumeration ran out of budget".into());
        }
        path.pop();
        in_path[s] = false;
    }
    Ok(out)
}

/// All pendant decorations of one core cycle: each outside vertex either
/// stays out or hangs off one core neighbor.
fn emit_cycle(
    host: &Graph,
    core: &[usize],
    out: &mut Vec<Candidate>,
    ticker: &mut Ticker,
) -> bool {
    let mut cyc_edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..core.len() {
        let (a, b) = (core[i], core[(i + 1) % core.len()]);
        cyc_edges.push((a.min(b), a.max(b)));
    }
    let in_core: BTreeSet<usize> = core.iter().copied().collect();
    let outside: Vec<(usize, Vec<usize>)> = (0..host.n())
        .filter(|v| !in_core.contains(v))
        .map(|v| {
            let anchors: Vec<usize> = host
                .neighbors(v)
                .iter()
                .copied()
                .filter(|c| in_core.contains(c))
                .collect();
            (v, anchors)
        })
        .filter(|(_, a)| !a.is_empty())
        .collect();
    fn combos(
        host: &Graph,
        cyc_edges: &[(usize, usize)],
        outside: &[(usize, Vec<usize>)],
        i: usize,
        pend: &mut Vec<(usize, usize)>,
        out: &mut Vec<Candidate>,
        ticker: &mut Ticker,
    ) -> bool {
        if i == outside.len() {
            if !ticker.tick() {
                return false;
            }
            let mut es = cyc_edges.to_vec();
            es.extend(pend.iter().map(|&(x, c)| (x.min(c), x.max(c))));
            let (guest, map) = host.edge_subgraph(&es);
            out.push(candidate(guest, map));
            return true;
        }
        let (x, anchors) = &outside[i];
        if !combos(host, cyc_edges, outside, i + 1, pend, out, ticker) {
            return false;
        }
        for &c in anchors {
            pend.push((*x, c));
            if !combos(host, cyc_edges, outside, i + 1, pend, out, ticker) {
                return false;
            }
            pend.pop();
        }
        true
    }
    let mut pend = Vec::new();
    combos(host, &cyc_edges, &outside, 0, &mut pend, out, ticker)
}

/// Keep one candidate per orbit of the host automorphisms that stabilize the
/// first host edge; only those candidates may start the search.
fn root_filter(host: &Graph, cands: &[Candidate], first_edge_cands: &[usize]) -> Vec<bool> {
    let mut ok = vec![true; cands.len()];
    let Some(auts) = automorphisms(host, 10_000) else {
        return ok;
    };
    if auts.len() <= 1 || first_edge_cands.is_empty() {
        return ok;
    }
    let &(a0, b0) = host.edge_set().iter().next().expect("host has edges");
    let stab: Vec<&Vec<usize>> = auts
        .iter()
        .filter(|s| {
            let (x, y) = (s[a0], s[b0]);
            (x.min(y), x.max(y)) == (a0, b0)
        })
        .collect();
    if stab.len() <= 1 {
        return ok;
    }
    let mut seen: BTreeSet<crate::iso::CopyImage> = BTreeSet::new();
    for &ci in first_edge_cands {
        let c = &cands[ci];
        let mut key: Option<crate::iso::CopyImage> = None;
        for s in &stab {
            let mut vs: Vec<usize> = c.verts.iter().map(|&v| s[v]).collect();
            vs.sort_unstable();
            let mut es: Vec<(usize, usize)> = c
                .edges
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (s[a], s[b]);
                    (x.min(y), x.max(y))
                })
                .collect();
            es.sort_unstable();
            let cand_key = (vs, es);
            key = Some(match key.take() {
                Some(k) => k.min(cand_key),
                None => cand_key,
            });
        }
        if !seen.insert(key.expect("stabilizer nonempty")) {
            ok[ci] = false;
        }
    }
    ok
}

struct CSearch<'a> {
    cands: &'a [Candidate],
    cover_ids: &'a [Vec<usize>],
    root_ok: &'a [bool],
    packcap: &'a [usize],
    host: &'a Graph,
    class: &'a GuestClass,
    /// Max guests (global), max layers (union) or max load (local).
    limit: usize,
    max_cand_edges: usize,
    covered: Vec<u32>,
    uncovered: usize,
    chosen: Vec<usize>,
    /// Union: occupied vertex set and chosen candidates per layer.
    layers: Vec<(BTreeSet<usize>, Vec<usize>)>,
    loads: Vec<usize>,
}

impl CSearch<'_> {
    fn first_uncovered(&self, from: usize) -> Option<usize> {
        (from..self.covered.len()).find(|&i| self.covered[i] == 0)
    }

    fn at_root(&self, ei: usize) -> bool {
        ei == 0 && self.chosen.is_empty()
    }

    fn apply(&mut self, ci: usize) {
        for &ei in &self.cands[ci].eidx {
            if self.covered[ei] == 0 {
                self.uncovered -= 1;
            }
            self.covered[ei] += 1;
        }
        self.chosen.push(ci);
    }

    fn unapply(&mut self, ci: usize) {
        self.chosen.pop();
        for &ei in &self.cands[ci].eidx {
            self.covered[ei] -= 1;
            if self.covered[ei] == 0 {
                self.uncovered += 1;
            }
        }
    }

    fn dfs_global(&mut self, from: usize, left: usize, ticker: &mut Ticker) -> Search {
        let Some(ei) = self.first_uncovered(from) else {
            return Search::Found(self.build(None));
        };
        if left == 0 || self.uncovered > left * self.max_cand_edges {
            return Search::Refuted;
        }
        if !ticker.tick() {
            return Search::Exhausted;
        }
        let root = self.at_root(ei);
        for i in 0..self.cover_ids[ei].len() {
            let ci = self.cover_ids[ei][i];
            if root && !self.root_ok[ci] {
                continue;
            }
            self.apply(ci);
            match self.dfs_global(ei + 1, left - 1, ticker) {
                Search::Refuted => {}
                done => {
                    self.unapply(ci);
                    return done;
                }
            }
            self.unapply(ci);
        }
        Search::Refuted
    }

    fn dfs_union(&mut self, from: usize, ticker: &mut Ticker) -> Search {
        let Some(ei) = self.first_uncovered(from) else {
            let layers: Vec<Vec<usize>> = self
                .layers
                .iter()
                .map(|(_, ids)| ids.clone())
                .collect();
            return Search::Found(self.build(Some(layers)));
        };
        // Capacity left: each started layer can still pack edges into its
        // untouched vertices, each unstarted layer packs fresh.
        let n = self.host.n();
        let slack: usize = self
            .layers
            .iter()
            .map(|(vs, _)| self.packcap[n - vs.len()])
            .sum::<usize>()
            + (self.limit - self.layers.len()) * self.packcap[n];
        if self.uncovered > slack {
            return Search::Refuted;
        }
        if !ticker.tick() {
            return Search::Exhausted;
        }
        let root = self.at_root(ei);
        for i in 0..self.cover_ids[ei].len() {
            let ci = self.cover_ids[ei][i];
            if root && !self.root_ok[ci] {
                continue;
            }
            for li in 0..self.layers.len() {
                let disjoint =
                    self.cands[ci].verts.iter().all(|v| !self.layers[li].0.contains(v));
                if !disjoint {
                    continue;
                }
                self.place(ci, li);
                match self.dfs_union(ei + 1, ticker) {
                    Search::Refuted => {}
                    done => {
                        self.unplace(ci, li);
                        return done;
                    }
                }
                self.unplace(ci, li);
            }
            if self.layers.len() < self.limit {
                self.layers.push((BTreeSet::new(), Vec::new()));
                let li = self.layers.len() - 1;
                self.place(ci, li);
                match self.dfs_union(ei + 1, ticker) {
                    Search::Refuted => {}
                    done => {
                        self.unplace(ci, li);
                        self.layers.pop();
                        return done;
                    }
                }
                self.unplace(ci, li);
                self.layers.pop();
            }
        }
        Search::Refuted
    }

    fn place(&mut self, ci: usize, li: usize) {
        self.apply(ci);
        for &v in &self.cands[ci].verts {
            self.layers[li].0.insert(v);
        }
        self.layers[li].1.push(ci);
    }

    fn unplace(&mut self, ci: usize, li: usize) {
        self.layers[li].1.pop();
        for &v in &self.cands[ci].verts {
            self.layers[li].0.remove(&v);
        }
        self.unapply(ci);
    }

    fn dfs_local(&mut self, from: usize, ticker: &mut Ticker) -> Search {
        let Some(ei) = self.first_uncovered(from) else {
            return Search::Found(self.build(None));
        };
        if !ticker.tick() {
            return Search::Exhausted;
        }
        let root = self.at_root(ei);
        for i in 0..self.cover_ids[ei].len() {
            let ci = self.cover_ids[ei][i];
            if root && !self.root_ok[ci] {
                continue;
            }
            if !self.cands[ci].verts.iter().all(|&v| self.loads[v] < self.limit) {
                continue;
            }
            for &v in &self.cands[ci].verts {
                self.loads[v] += 1;
            }
            self.apply(ci);
            match self.dfs_local(ei + 1, ticker) {
                Search::Refuted => {}
                done => {
                    self.unapply(ci);
                    for &v in &self.cands[ci].verts {
                        self.loads[v] -= 1;
                    }
                    return done;
                }
            }
            self.unapply(ci);
            for &v in &self.cands[ci].verts {
                self.loads[v] -= 1;
            }
        }
        Search::Refuted
    }

    fn build(&self, union_layers: Option<Vec<Vec<usize>>>) -> Cover {
        // Layer entries index into `chosen`; guests are emitted in chosen
        // order, so positions line up.
        let layers = union_layers.map(|ls| {
            let pos: BTreeMap<usize, usize> =
                self.chosen.iter().enumerate().map(|(i, &ci)| (ci, i)).collect();
            ls.iter()
                .map(|layer| layer.iter().map(|ci| pos[ci]).collect())
                .collect::<Vec<Vec<usize>>>()
        });
        let guests: Vec<(Graph, Vec<usize>)> = self
            .chosen
            .iter()
            .map(|&ci| (self.cands[ci].guest.clone(), self.cands[ci].map.clone()))
            .collect();
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
