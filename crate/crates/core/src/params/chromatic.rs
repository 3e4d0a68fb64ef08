//! Exact chromatic number by branch and bound with a greedy clique lower
//! bound and lowest-index branching.

use crate::graph::Graph;

#[derive(Debug, Clone)]
pub enum Chromatic {
    /// Exact value and a witness coloring.
    Exact { chi: u32, coloring: Vec<u32> },
    /// Budget ran out between the bounds; the witness attains `upper`.
    Undecided { lower: u32, upper: u32, coloring: Vec<u32> },
}

impl Chromatic {
    pub fn lower(&self) -> u32 {
        match self {
            Chromatic::Exact { chi, .. } => *chi,
            Chromatic::Undecided { lower, .. } => *lower,
        }
    }
    pub fn exact(&self) -> Option<u32> {
        match self {
            Chromatic::Exact { chi, .. } => Some(*chi),
            Chromatic::Undecided { .. } => None,
        }
    }
}

/// Greedy clique on descending degrees; a certified lower bound for chi.
pub fn greedy_clique(g: &Graph) -> Vec<usize> {
    let mut verts: Vec<usize> = (0..g.n()).collect();
    verts.sort_by_key(|&v| (usize::MAX - g.degree(v), v));
    let mut best: Vec<usize> = Vec::new();
    for &start in verts.iter().take(g.n().min(32)) {
        let mut clique = vec![start];
        for &v in &verts {
            if v != start && clique.iter().all(|&u| g.has_edge(u, v)) {
                clique.push(v);
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}

fn greedy_coloring(g: &Graph) -> Vec<u32> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (usize::MAX - g.degree(v), v));
    let mut color = vec![u32::MAX; g.n()];
    for &v in &order {
        let mut used: Vec<bool> = vec![false; g.degree(v) + 1];
        for &w in g.neighbors(v) {
            if color[w] != u32::MAX && (color[w] as usize) < used.len() {
                used[color[w] as usize] = true;
            }
        }
        color[v] = used.iter().position(|&u| !u).unwrap() as u32;
    }
    color
}

fn colorable(g: &Graph, k: u32, budget: &mut u64) -> Option<Option<Vec<u32>>> {
    // None: budget exhausted. Some(None): no k-coloring. Some(Some(c)): witness.
    let mut color = vec![u32::MAX; g.n()];
    fn rec(g: &Graph, k: u32, v: usize, color: &mut Vec<u32>, budget: &mut u64) -> Option<bool> {
        if v == g.n() {
            return Some(true);
        }
        let mut max_used = 0;
        for &cw in color.iter().take(v) {
            max_used = max_used.max(cw + 1);
        }
        for c in 0..k.min(max_used + 1) {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            if g.neighbors(v).iter().any(|&w| w < v && color[w] == c) {
                continue;
            }
            color[v] = c;
            match rec(g, k, v + 1, color, budget) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => return None,
            }
            color[v] = u32::MAX;
        }
        Some(false)
    }
    match rec(g, k, 0, &mut color, budget) {
        Some(true) => Some(Some(color)),
        Some(false) => Some(None),
        None => None,
    }
}

/// Exact chromatic number within a search-node budget. Vertices are tried
/// lowest-index first with at most one fresh color, so the search is
/// deterministic.
pub fn chromatic_number(g: &Graph, node_limit: u64) -> Chromatic {
    if g.n() == 0 {
        return Chromatic::Exact { chi: 0, coloring: Vec::new() };
    }
    if g.m() == 0 {
        return Chromatic::Exact { chi: 1, coloring: vec![0; g.n()] };
    }
    let lb = greedy_clique(g).len() as u32;
    let greedy = greedy_coloring(g);
    let ub = greedy.iter().max().unwrap() + 1;
    let mut budget = node_limit;
    let mut best = greedy.clone();
    let mut best_k = ub;
    let mut lower = lb;
    for k in lb..=ub {
        if k == ub {
            return Chromatic::Exact { chi: ub, coloring: best };
        }
        match colorable(g, k, &mut budget) {
            Some(Some(c)) => {
                best_k = k;
                best = c;
                return Chromatic::Exact { chi: best_k, coloring: best };
            }
            Some(None) => {
                lower = k + 1;
            }
            None => {
                return Chromatic::Undecided { lower, upper: best_k, coloring: best };
            }
        }
    }
    Chromatic::Exact { chi: best_k, coloring: best }
}

/// Does `coloring` properly color `g`?
pub fn is_proper_coloring(g: &Graph, coloring: &[u32]) -> bool {
    coloring.len() == g.n() && g.edges().all(|(u, v)| coloring[u] != coloring[v])
}
