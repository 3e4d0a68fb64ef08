//! Folded search by vertex splitting.
//!
//! A folded cover with locality s is the same thing as a split of the host:
//! give each host vertex up to s copies, realize every host edge as at least
//! one copy pair, and ask the split graph to be a disjoint union of members.
//! Folding copies back onto their host vertex turns split components into
//! guests; conversely the guests of any folded cover, with each guest vertex
//! renamed to (host vertex, visit number), form such a split. Isolated
//! copies never help, so the search creates copies only when an edge needs
//! them; members that insist on isolated vertices are restored by padding
//! when a finite list is matched at the leaf.
//!
//! One host edge may be realized by several copy pairs (a guest folding two
//! of its edges onto the same host edge). Classes closed under edge deletion
//! shed the surplus, so one realization per edge is lossless there; for the
//! rest, repetition is allowed up to a cap and results are relative to it.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use crate::classes::{ClassKind, GuestClass, NamedKind, Strategy};
use crate::cover::{Claims, Cover, Variant};
use crate::graph::{disjoint_union, Graph};
use crate::iso::is_isomorphic;

use super::{certified, degree_floor, undecided, Search, SolveBudget, SolveError, SolveResult, Ticker};

pub(crate) fn drive(
    host: &Graph,
    class: &GuestClass,
    budget: &SolveBudget,
    start: Instant,
) -> Result<SolveResult, SolveError> {
    let edges: Vec<(usize, usize)> = host.edge_set().iter().copied().collect();
    let mut ticker = Ticker::new(budget);
    let mut proof: Vec<String> = Vec::new();
    let mut notes: Vec<String> = Vec::new();

    let em = matches!(class.strategy(), Strategy::EdgeMonotone);
    let rep_cap = if em && !budget.edge_repetition { 1 } else { budget.repetition_cap };
    if !em {
        notes.push(format!(
            "edge repetition enabled (cap {rep_cap}): these guests cannot shed surplus edges, so refutations are relative to the cap"
        ));
    }

    // Reachability and a witness ceiling. Named classes contain K2, so a
    // one-edge guest per host edge is a cover with locality max_degree.
    let natural = match class.kind() {
        ClassKind::Named(_) => host.max_degree(),
        ClassKind::FiniteList(ms) => match hom_ceiling(host, ms, &edges, &mut ticker) {
            Reach::Ceiling(c) => {
                proof.push(format!("witness cover found with locality {c}"));
                c
            }
            Reach::Missing(edge) => {
                return Err(SolveError::NoCover { class: class.name().to_string(), edge });
            }
            Reach::OutOfBudget => {
                return Ok(undecided(
                    Variant::Folded,
                    1,
                    None,
                    vec!["budget exhausted while checking edge reachability".into()],
                    notes,
                    &ticker,
                    start,
                ));
            }
        },
    };

    let cap = budget.multiplicity_cap.unwrap_or(usize::MAX);
    let stop = natural.min(cap);
    let prune = prune_kind(class);
    let mut s = degree_floor(host, class, &mut proof)
        .max(density_floor(host, class, natural, &mut proof));
    loop {
        if s > stop {
            if cap < natural {
                notes.push(format!(
                    "multiplicity cap {cap} reached; larger objectives were not searched"
                ));
            } else {
                notes.push(format!(
                    "nothing found up to the witness ceiling {natural}; the repetition cap blocks the known witness"
                ));
            }
            return Ok(undecided(Variant::Folded, s, None, proof, notes, &ticker, start));
        }
        let mut st = FState {
            host,
            class,
            edges: &edges,
            mcap: s,
            rep_cap,
            prune: &prune,
            mult: vec![0usize; host.n()],
            owner: Vec::new(),
            vcopies: vec![Vec::new(); host.n()],
            adj: Vec::new(),
        };
        match st.dfs_edge(0, &mut ticker) {
            Search::Found(cover) => {
                proof.push(format!(
                    "objective {s}: certificate found ({} guests)",
                    cover.guests.len()
                ));
                return Ok(certified(Variant::Folded, s, cover, class, proof, notes, &ticker, start));
            }
            Search::Refuted => {
                proof.push(format!("objective {s}: refuted by exhaustive search"));
                s += 1;
            }
            Search::Exhausted => {
                proof.push(format!("objective {s}: search budget exhausted"));
                return Ok(undecided(Variant::Folded, s, None, proof, notes, &ticker, start));
            }
        }
    }
}

enum Reach {
    Ceiling(usize),
    Missing((usize, usize)),
    OutOfBudget,
}

/// Density floor: at multiplicity s the split graph has at most s * n
/// vertices, its components are members (or group into them), and a member
/// on j vertices is capped by the class edge bound. Sizes are not capped by
/// n here, one component may span many copies of one host vertex.
fn density_floor(host: &Graph, class: &GuestClass, natural: usize, proof: &mut Vec<String>) -> usize {
    let n = host.n();
    let m = host.m();
    let bmax = natural * n;
    if n < 2 || bmax == 0 || bmax > 10_000 {
        return 1;
    }
    let cap: Vec<Option<usize>> = (0..=bmax).map(|j| class.max_member_edges(j)).collect();
    let mut pack = vec![0usize; bmax + 1];
    for b in 1..=bmax {
        for j in 2..=b {
            if let Some(e) = cap[j] {
                pack[b] = pack[b].max(pack[b - j] + e);
            }
        }
    }
    let mut s = 1;
    while s < natural && pack[s * n] < m {
        s += 1;
    }
    if s > 1 {
        proof.push(format!(
            "counting bound: a split at multiplicity {} holds at most {} edges, so the objective is at least {s}",
            s - 1,
            pack[(s - 1) * n]
        ));
    }
    s
}

/// Greedy pass over all member homomorphisms into the host: every host edge
/// must be realizable, and the accepted witnesses bound the folded number
/// from above.
fn hom_ceiling(
    host: &Graph,
    members: &[Graph],
    edges: &[(usize, usize)],
    ticker: &mut Ticker,
) -> Reach {
    let mut covered: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut loads = vec![0usize; host.n()];
    for m in members {
        if m.m() == 0 || covered.len() == edges.len() {
            continue;
        }
        let mut map = vec![usize::MAX; m.n()];
        if !hom_dfs(host, m, 0, &mut map, &mut covered, &mut loads, edges.len(), ticker) {
            return Reach::OutOfBudget;
        }
    }
    if covered.len() < edges.len() {
        let &e = edges.iter().find(|e| !covered.contains(e)).expect("some edge uncovered");
        return Reach::Missing(e);
    }
    Reach::Ceiling(loads.iter().copied().max().unwrap_or(1).max(1))
}

#[allow(clippy::too_many_arguments)]
fn hom_dfs(
    host: &Graph,
    m: &Graph,
    idx: usize,
    map: &mut Vec<usize>,
    covered: &mut BTreeSet<(usize, usize)>,
    loads: &mut [usize],
    total: usize,
    ticker: &mut Ticker,
) -> bool {
    if covered.len() == total {
        return true;
    }
    if idx == m.n() {
        let image: Vec<(usize, usize)> = m
            .edges()
            .map(|(a, b)| {
                let (x, y) = (map[a], map[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        if image.iter().any(|e| !covered.contains(e)) {
            covered.extend(image);
            for &v in map.iter() {
                loads[v] += 1;
            }
        }
        return true;
    }
    for hv in 0..host.n() {
        if !ticker.tick() {
            return false;
        }
        let fits = m
            .neighbors(idx)
            .iter()
            .filter(|&&w| w < idx)
            .all(|&w| host.has_edge(map[w], hv));
        if fits {
            map[idx] = hv;
            if !hom_dfs(host, m, idx + 1, map, covered, loads, total, ticker) {
                return false;
            }
            map[idx] = usize::MAX;
        }
    }
    true
}

/// Per-component pruning strength available for each class shape. Every
/// check must be implied for any connected subgraph of a final component.
enum Prune {
    /// Edge-deletion-closed named kinds: a growing component is an edge
    /// subset of its final member form, hence a member right now.
    Member,
    /// Finite lists: componentwise size, edge and degree caps taken over the
    /// members' components (isolated vertices dropped); exact match happens
    /// at the leaf.
    Dims { n: usize, m: usize, deg: usize },
    Clique,
    Biclique,
    Hairy,
}

fn prune_kind(class: &GuestClass) -> Prune {
    match class.kind() {
        ClassKind::FiniteList(ms) => {
            let (mut n, mut m, mut deg) = (0usize, 0usize, 0usize);
            for mem in ms {
                let (clean, _) = mem.without_isolated();
                for comp in clean.components() {
                    let (cg, _) = clean.induced(&comp);
                    n = n.max(cg.n());
                    m = m.max(cg.m());
                    deg = deg.max(cg.max_degree());
                }
            }
            Prune::Dims { n, m, deg }
        }
        ClassKind::Named(k) => match k {
            NamedKind::CompleteGraphs => Prune::Clique,
            NamedKind::CompleteBipartite => Prune::Biclique,
            NamedKind::HairyCycles => Prune::Hairy,
            _ => Prune::Member,
        },
    }
}

struct FState<'a> {
    host: &'a Graph,
    class: &'a GuestClass,
    edges: &'a [(usize, usize)],
    /// Copies allowed per host vertex (the current objective).
    mcap: usize,
    rep_cap: usize,
    prune: &'a Prune,
    mult: Vec<usize>,
    /// Copy id to host vertex; ids are creation-ordered.
    owner: Vec<usize>,
    vcopies: Vec<Vec<usize>>,
    adj: Vec<Vec<usize>>,
}

impl FState<'_> {
    fn dfs_edge(&mut self, eidx: usize, ticker: &mut Ticker) -> Search {
        if eidx == self.edges.len() {
            return self.leaf(ticker);
        }
        self.dfs_pairs(eidx, None, 0, ticker)
    }

    /// Assign one more copy pair to edge `eidx`, or move on. Pairs are taken
    /// in ascending lexicographic order and fresh copies always take the
    /// next index, so each set of realizations is built exactly once.
    fn dfs_pairs(
        &mut self,
        eidx: usize,
        last: Option<(usize, usize)>,
        count: usize,
        ticker: &mut Ticker,
    ) -> Search {
        if count > 0 {
            match self.dfs_edge(eidx + 1, ticker) {
                Search::Refuted => {}
                done => return done,
            }
        }
        if count == self.rep_cap {
            return Search::Refuted;
        }
        let (u, v) = self.edges[eidx];
        let iend = self.mult[u] + usize::from(self.mult[u] < self.mcap);
        let jend = self.mult[v] + usize::from(self.mult[v] < self.mcap);
        for i in 0..iend {
            for j in 0..jend {
                if let Some(l) = last {
                    if (i, j) <= l {
                        continue;
                    }
                }
                if !ticker.tick() {
                    return Search::Exhausted;
                }
                let (a, b, na, nb) = self.apply_pair(u, i, v, j);
                if self.comp_ok(a) {
                    match self.dfs_pairs(eidx, Some((i, j)), count + 1, ticker) {
                        Search::Refuted => {}
                        done => {
                            self.undo_pair(u, v, a, b, na, nb);
                            return done;
                        }
                    }
                }
                self.undo_pair(u, v, a, b, na, nb);
            }
        }
        Search::Refuted
    }

    fn new_copy(&mut self, hv: usize) -> usize {
        let id = self.owner.len();
        self.owner.push(hv);
        self.adj.push(Vec::new());
        self.vcopies[hv].push(id);
        self.mult[hv] += 1;
        id
    }

    fn drop_copy(&mut self, hv: usize) {
        self.owner.pop();
        self.adj.pop();
        self.vcopies[hv].pop();
        self.mult[hv] -= 1;
    }

    fn apply_pair(&mut self, u: usize, i: usize, v: usize, j: usize) -> (usize, usize, bool, bool) {
        let na = i == self.mult[u];
        let a = if na { self.new_copy(u) } else { self.vcopies[u][i] };
        let nb = j == self.mult[v];
        let b = if nb { self.new_copy(v) } else { self.vcopies[v][j] };
        self.adj[a].push(b);
        self.adj[b].push(a);
        (a, b, na, nb)
    }

    fn undo_pair(&mut self, u: usize, v: usize, a: usize, b: usize, na: bool, nb: bool) {
        self.adj[b].pop();
        self.adj[a].pop();
        if nb {
            self.drop_copy(v);
        }
        if na {
            self.drop_copy(u);
        }
    }

    fn comp_copies(&self, start: usize) -> Vec<usize> {
        let mut seen: BTreeSet<usize> = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    fn comp_edges(&self, copies: &[usize]) -> usize {
        copies.iter().map(|&c| self.adj[c].len()).sum::<usize>() / 2
    }

    /// Component as a graph plus the host vertex under each local vertex.
    fn comp_graph(&self, copies: &[usize]) -> (Graph, Vec<usize>) {
        let idx: BTreeMap<usize, usize> =
            copies.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut g = Graph::new(copies.len());
        for (li, &c) in copies.iter().enumerate() {
            for &d in &self.adj[c] {
                if d > c {
                    g.add_edge(li, idx[&d]).expect("split edges are simple");
                }
            }
        }
        let owners = copies.iter().map(|&c| self.owner[c]).collect();
        (g, owners)
    }

    fn comp_ok(&self, a: usize) -> bool {
        let copies = self.comp_copies(a);
        match self.prune {
            Prune::Member => {
                let (g, _) = self.comp_graph(&copies);
                self.class.is_member(&g)
            }
            Prune::Dims { n, m, deg } => {
                copies.len() <= *n
                    && self.comp_edges(&copies) <= *m
                    && copies.iter().all(|&c| self.adj[c].len() <= *deg)
            }
            Prune::Clique => {
                let mut owners: Vec<usize> = Vec::with_capacity(copies.len());
                for &c in &copies {
                    let o = self.owner[c];
                    // Two copies of one host vertex cannot sit in a clique
                    // guest: the edge between them would need a host loop.
                    if owners.contains(&o) {
                        return false;
                    }
                    owners.push(o);
                }
                for x in 0..owners.len() {
                    for y in x + 1..owners.len() {
                        if !self.host.has_edge(owners[x], owners[y]) {
                            return false;
                        }
                    }
                }
                true
            }
            Prune::Biclique => self.biclique_ok(&copies),
            Prune::Hairy => self.comp_edges(&copies) <= copies.len(),
        }
    }

    /// Necessary shape for growing into complete bipartite: the component is
    /// two-colorable, copies of one host vertex agree on a side, and
    /// opposite sides pair host-adjacent vertices.
    fn biclique_ok(&self, copies: &[usize]) -> bool {
        let mut color: BTreeMap<usize, u8> = BTreeMap::new();
        let mut stack = vec![copies[0]];
        color.insert(copies[0], 0);
        while let Some(x) = stack.pop() {
            let cx = color[&x];
            for &y in &self.adj[x] {
                match color.get(&y) {
                    Some(&cy) => {
                        if cy == cx {
                            return false;
                        }
                    }
                    None => {
                        color.insert(y, 1 - cx);
                        stack.push(y);
                    }
                }
            }
        }
        let mut side: BTreeMap<usize, u8> = BTreeMap::new();
        for &c in copies {
            let o = self.owner[c];
            match side.get(&o) {
                Some(&s) => {
                    if s != color[&c] {
                        return false;
                    }
                }
                None => {
                    side.insert(o, color[&c]);
                }
            }
        }
        let left: Vec<usize> = side.iter().filter(|(_, &s)| s == 0).map(|(&o, _)| o).collect();
        let right: Vec<usize> = side.iter().filter(|(_, &s)| s == 1).map(|(&o, _)| o).collect();
        for &l in &left {
            for &r in &right {
                if !self.host.has_edge(l, r) {
                    return false;
                }
            }
        }
        true
    }

    fn all_comps(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.owner.len()];
        let mut comps = Vec::new();
        for c in 0..self.owner.len() {
            if !seen[c] {
                let copies = self.comp_copies(c);
                for &x in &copies {
                    seen[x] = true;
                }
                comps.push(copies);
            }
        }
        comps
    }

    fn leaf(&mut self, ticker: &mut Ticker) -> Search {
        let comps = self.all_comps();
        match self.class.kind() {
            ClassKind::Named(_) => {
                let mut guests = Vec::new();
                for copies in &comps {
                    let (g, owners) = self.comp_graph(copies);
                    if !self.class.is_member(&g) {
                        return Search::Refuted;
                    }
                    guests.push((g, owners));
                }
                Search::Found(self.build_cover(guests))
            }
            ClassKind::FiniteList(ms) => self.list_leaf(&comps, ms, ticker),
        }
    }

    /// Match split components against the list: each guest is one member,
    /// realized as a multiset of components plus padding copies for the
    /// member's isolated vertices. Padding consumes leftover multiplicity.
    fn list_leaf(&self, comps: &[Vec<usize>], members: &[Graph], ticker: &mut Ticker) -> Search {
        let comp_graphs: Vec<(Graph, Vec<usize>)> =
            comps.iter().map(|c| self.comp_graph(c)).collect();
        let mut reps: Vec<&Graph> = Vec::new();
        let mut comp_class: Vec<usize> = Vec::new();
        for (g, _) in &comp_graphs {
            let cl = match reps.iter().position(|r| is_isomorphic(r, g)) {
                Some(i) => i,
                None => {
                    reps.push(g);
                    reps.len() - 1
                }
            };
            comp_class.push(cl);
        }
        let mut target = vec![0usize; reps.len()];
        for &cl in &comp_class {
            target[cl] += 1;
        }

        struct Opt {
            member: usize,
            vec: Vec<usize>,
            pads: usize,
        }
        let mut opts: Vec<Opt> = Vec::new();
        for (mi, m) in members.iter().enumerate() {
            let (clean, _) = m.without_isolated();
            if clean.n() == 0 {
                continue; // an edgeless guest never helps
            }
            let pads = m.n() - clean.n();
            let mut vec = vec![0usize; reps.len()];
            let mut usable = true;
            for comp in clean.components() {
                let (cg, _) = clean.induced(&comp);
                match reps.iter().position(|r| is_isomorphic(r, &cg)) {
                    Some(i) => vec[i] += 1,
                    None => {
                        usable = false;
                        break;
                    }
                }
            }
            if usable {
                opts.push(Opt { member: mi, vec, pads });
            }
        }
        let capacity: usize = (0..self.host.n()).map(|v| self.mcap - self.mult[v]).sum();

        fn pick(
            target: &mut Vec<usize>,
            opts: &[Opt],
            pads_left: usize,
            chosen: &mut Vec<usize>,
            ticker: &mut Ticker,
        ) -> Option<bool> {
            let first = match target.iter().position(|&x| x > 0) {
                None => return Some(true),
                Some(i) => i,
            };
            for (oi, o) in opts.iter().enumerate() {
                if o.vec[first] == 0
                    || o.pads > pads_left
                    || o.vec.iter().zip(target.iter()).any(|(a, b)| a > b)
                {
                    continue;
                }
                if !ticker.tick() {
                    return None;
                }
                for (t, a) in target.iter_mut().zip(&o.vec) {
                    *t -= a;
                }
                chosen.push(oi);
                match pick(target, opts, pads_left - o.pads, chosen, ticker) {
                    Some(true) => return Some(true),
                    Some(false) => {}
                    None => return None,
                }
                chosen.pop();
                for (t, a) in target.iter_mut().zip(&o.vec) {
                    *t += a;
                }
            }
            Some(false)
        }

        let mut chosen: Vec<usize> = Vec::new();
        match pick(&mut target, &opts, capacity, &mut chosen, ticker) {
            None => return Search::Exhausted,
            Some(false) => return Search::Refuted,
            Some(true) => {}
        }

        // Reconstruct concrete groups: hand out component ids per class in
        // order, then padding slots from leftover multiplicity.
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); reps.len()];
        for (ci, &cl) in comp_class.iter().enumerate() {
            buckets[cl].push(ci);
        }
        let mut bucket_ptr = vec![0usize; reps.len()];
        let mut slots: Vec<usize> = Vec::new();
        for v in 0..self.host.n() {
            for _ in self.mult[v]..self.mcap {
                slots.push(v);
            }
        }
        let mut slot_ptr = 0usize;
        let mut guests: Vec<(Graph, Vec<usize>)> = Vec::new();
        for &oi in &chosen {
            let o = &opts[oi];
            let mut ids: Vec<usize> = Vec::new();
            for (cl, &need) in o.vec.iter().enumerate() {
                for _ in 0..need {
                    ids.push(buckets[cl][bucket_ptr[cl]]);
                    bucket_ptr[cl] += 1;
                }
            }
            let parts: Vec<Graph> = ids.iter().map(|&ci| comp_graphs[ci].0.clone()).collect();
            let (mut g, offs) = disjoint_union(&parts);
            let mut map = vec![0usize; g.n()];
            for (k, &ci) in ids.iter().enumerate() {
                for (lv, &ow) in comp_graphs[ci].1.iter().enumerate() {
                    map[offs[k] + lv] = ow;
                }
            }
            for _ in 0..o.pads {
                g.add_vertex();
                map.push(slots[slot_ptr]);
                slot_ptr += 1;
            }
            debug_assert!(is_isomorphic(&g, &members[o.member]));
            guests.push((g, map));
        }
        Search::Found(self.build_cover(guests))
    }

    fn build_cover(&self, guests: Vec<(Graph, Vec<usize>)>) -> Cover {
        let mut loads = vec![0usize; self.host.n()];
        let mut injective = true;
        for (_, map) in &guests {
            let mut seen: BTreeSet<usize> = BTreeSet::new();
            for &v in map {
                loads[v] += 1;
                if !seen.insert(v) {
                    injective = false;
                }
            }
        }
        let claims = Claims {
            class_name: self.class.name().to_string(),
            injective,
            locality: loads.iter().copied().max().unwrap_or(0),
            globality: guests.len(),
            union_layers: None,
        };
        Cover { host: self.host.clone(), guests, claims }
    }
}
