//! Treewidth by branch and bound over elimination orders, with a min-fill
//! heuristic taking over past the exact size limit.

use crate::graph::Graph;
use std::collections::HashMap;

/// Exact search is attempted up to this many vertices (bitmask state).
pub const EXACT_LIMIT: usize = 25;
const NODE_BUDGET: u64 = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    /// Tree edges between bag indices.
    pub links: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
    }
}

#[derive(Debug, Clone)]
pub struct TreewidthResult {
    pub width: usize,
    /// Elimination order the decomposition was read off from.
    pub order: Vec<usize>,
    pub decomposition: TreeDecomposition,
    /// False when the heuristic path ran or the search budget expired.
    pub optimal: bool,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TdError {
    #[error("vertex {0} is in no bag")]
    VertexMissing(usize),
    #[error("edge ({0}, {1}) is in no bag")]
    EdgeMissing(usize, usize),
    #[error("bags containing vertex {0} do not form a subtree")]
    DisconnectedVertex(usize),
    #[error("bag links do not form a tree")]
    NotATree,
    #[error("bag {0} lists vertex {1} outside the graph")]
    BagOutOfRange(usize, usize),
}

/// Full tree-decomposition check; returns the width on success.
pub fn check_decomposition(g: &Graph, td: &TreeDecomposition) -> Result<usize, TdError> {
    for (i, bag) in td.bags.iter().enumerate() {
        if let Some(&v) = bag.iter().find(|&&v| v >= g.n()) {
            return Err(TdError::BagOutOfRange(i, v));
        }
    }
    let k = td.bags.len();
    if k == 0 || td.links.len() + 1 != k {
        return Err(TdError::NotATree);
    }
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in &td.links {
        if a >= k || b >= k {
            return Err(TdError::NotATree);
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; k];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(TdError::NotATree); // right edge count + connected = tree
    }
    for v in 0..g.n() {
        let holders: Vec<usize> =
            (0..k).filter(|&i| td.bags[i].contains(&v)).collect();
        if holders.is_empty() {
            return Err(TdError::VertexMissing(v));
        }
        // Connectivity of the holder set within the tree.
        let inside: Vec<bool> = (0..k).map(|i| holders.contains(&i)).collect();
        let mut reach = vec![false; k];
        reach[holders[0]] = true;
        let mut stack = vec![holders[0]];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if inside[y] && !reach[y] {
                    reach[y] = true;
                    stack.push(y);
                }
            }
        }
        if holders.iter().any(|&h| !reach[h]) {
            return Err(TdError::DisconnectedVertex(v));
        }
    }
    for (u, v) in g.edges() {
        if !td.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
            return Err(TdError::EdgeMissing(u, v));
        }
    }
    Ok(td.width())
}

fn filled_adj(g: &Graph) -> Vec<u64> {
    let mut adj = vec![0u64; g.n()];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

fn eliminate(adj: &mut [u64], v: usize) {
    let nb = adj[v];
    let mut rest = nb;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        adj[u] |= nb & !(1 << u);
        adj[u] &= !(1 << v);
    }
    adj[v] = 0;
}

fn set_adj(g: &Graph) -> Vec<std::collections::BTreeSet<usize>> {
    (0..g.n()).map(|v| g.neighbors(v).iter().copied().collect()).collect()
}

fn set_eliminate(adj: &mut [std::collections::BTreeSet<usize>], v: usize) {
    let nb: Vec<usize> = adj[v].iter().copied().collect();
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            adj[a].insert(b);
            adj[b].insert(a);
        }
    }
    for &a in &nb {
        adj[a].remove(&v);
    }
    adj[v].clear();
}

/// Width of a specific elimination order (max filled degree at removal).
pub fn width_of_order(g: &Graph, order: &[usize]) -> usize {
    let mut adj = set_adj(g);
    let mut width = 0;
    for &v in order {
        width = width.max(adj[v].len());
        set_eliminate(&mut adj, v);
    }
    width
}

fn min_fill_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut adj: Vec<std::collections::BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbors(v).iter().copied().collect())
        .collect();
    let mut alive: Vec<bool> = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best = usize::MAX;
        let mut pick = usize::MAX;
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            let nb: Vec<usize> = adj[v].iter().copied().collect();
            let mut fill = 0;
            for (i, &a) in nb.iter().enumerate() {
                for &b in &nb[i + 1..] {
                    if !adj[a].contains(&b) {
                        fill += 1;
                    }
                }
            }
            if fill < best {
                best = fill;
                pick = v;
            }
        }
        let nb: Vec<usize> = adj[pick].iter().copied().collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &a in &nb {
            adj[a].remove(&pick);
        }
        alive[pick] = false;
        order.push(pick);
    }
    order
}

struct Search {
    adj0: Vec<u64>,
    n: usize,
    best_width: usize,
    best_order: Vec<usize>,
    memo: HashMap<u64, usize>,
    nodes: u64,
    exhausted: bool,
}

impl Search {
    fn run(&mut self, adj: &[u64], eliminated: u64, depth: usize, max_so_far: usize, order: &mut Vec<usize>) {
        if max_so_far >= self.best_width {
            return;
        }
        if depth == self.n {
            self.best_width = max_so_far;
            self.best_order = order.clone();
            return;
        }
        self.nodes += 1;
        if self.nodes > NODE_BUDGET {
            self.exhausted = true;
            return;
        }
        match self.memo.get(&eliminated) {
            Some(&seen) if seen <= max_so_far => return,
            _ => {
                self.memo.insert(eliminated, max_so_far);
            }
        }
        // Min remaining filled degree lower-bounds whatever comes next:
        // fill only ever adds edges.
        let mut min_deg = usize::MAX;
        let mut simplicial = usize::MAX;
        for v in 0..self.n {
            if eliminated >> v & 1 == 1 {
                continue;
            }
            let d = adj[v].count_ones() as usize;
            min_deg = min_deg.min(d);
            if simplicial == usize::MAX && is_clique(adj, adj[v]) {
                simplicial = v;
            }
        }
        if max_so_far.max(min_deg) >= self.best_width {
            return;
        }
        let candidates: Vec<usize> = if simplicial != usize::MAX {
            vec![simplicial] // eliminating a simplicial vertex first is safe
        } else {
            let mut cs: Vec<usize> =
                (0..self.n).filter(|&v| eliminated >> v & 1 == 0).collect();
            cs.sort_by_key(|&v| (adj[v].count_ones(), v));
            cs
        };
        for v in candidates {
            let mut next = adj.to_vec();
            eliminate(&mut next, v);
            order.push(v);
            let d = adj[v].count_ones() as usize;
            self.run(&next, eliminated | 1 << v, depth + 1, max_so_far.max(d), order);
            order.pop();
            if self.exhausted {
                return;
            }
        }
    }
}

fn is_clique(adj: &[u64], set: u64) -> bool {
    let mut rest = set;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if set & !(1 << v) & !adj[v] != 0 {
            return false;
        }
    }
    true
}

/// Treewidth with a decomposition witness. Exact (and flagged so) when the
/// graph fits the search limit and the node budget holds out.
pub fn treewidth(g: &Graph) -> TreewidthResult {
    if g.n() == 0 {
        let td = TreeDecomposition { bags: vec![Vec::new()], links: Vec::new() };
        return TreewidthResult { width: 0, order: Vec::new(), decomposition: td, optimal: true };
    }
    let heuristic = min_fill_order(g);
    let mut order = heuristic.clone();
    let mut width = width_of_order(g, &order);
    let mut optimal = false;
    if g.n() <= EXACT_LIMIT {
        let mut search = Search {
            adj0: filled_adj(g),
            n: g.n(),
            best_width: width,
            best_order: order.clone(),
            memo: HashMap::new(),
            nodes: 0,
            exhausted: false,
        };
        let adj = search.adj0.clone();
        search.run(&adj, 0, 0, 0, &mut Vec::new());
        order = search.best_order.clone();
        width = search.best_width;
        optimal = !search.exhausted;
    }
    let decomposition = decomposition_from_order(g, &order);
    debug_assert_eq!(check_decomposition(g, &decomposition), Ok(width));
    TreewidthResult { width, order, decomposition, optimal }
}

/// Bags read off an elimination order: bag i holds v_i plus its filled
/// neighborhood, linked to the bag of the first-eliminated such neighbor.
pub fn decomposition_from_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    assert!(order.len() == g.n());
    let n = g.n();
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj = set_adj(g);
    let mut bags: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut links = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let mut bag = vec![v];
        let mut parent = usize::MAX;
        for &u in &adj[v] {
            bag.push(u);
            parent = parent.min(pos[u]);
        }
        bag.sort_unstable();
        bags.push(bag);
        if parent != usize::MAX {
            links.push((i, parent));
        } else if i + 1 < n {
            links.push((i, i + 1)); // isolated remainder: chain to keep a tree
        }
        set_eliminate(&mut adj, v);
    }
    if bags.is_empty() {
        bags.push(Vec::new());
    }
    TreeDecomposition { bags, links }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tw(g: &Graph) -> usize {
        let r = treewidth(g);
        assert!(r.optimal);
        assert_eq!(check_decomposition(g, &r.decomposition), Ok(r.width));
        r.width
    }

    #[test]
    fn known_values() {
        assert_eq!(tw(&Graph::path(5)), 1);
        assert_eq!(tw(&Graph::cycle(5)), 2);
        assert_eq!(tw(&Graph::complete(5)), 4);
        assert_eq!(tw(&Graph::complete_bipartite(3, 3)), 3);
        assert_eq!(tw(&Graph::star(6)), 1);
        assert_eq!(tw(&Graph::empty(4)), 0);
        assert_eq!(tw(&Graph::empty(0)), 0);
    }

    #[test]
    fn permutation_oracle_small() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            let n = rng.gen_range(2..=7);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            // Oracle: best width over every elimination order.
            let mut perm: Vec<usize> = (0..n).collect();
            let mut best = usize::MAX;
            loop {
                best = best.min(width_of_order(&g, &perm));
                if !next_permutation(&mut perm) {
                    break;
                }
            }
            assert_eq!(tw(&g), best);
        }
    }

    fn next_permutation(p: &mut [usize]) -> bool {
        let n = p.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && p[i - 1] >= p[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while p[j] <= p[i - 1] {
            j -= 1;
        }
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    #[test]
    fn petersen_width_four() {
        let mut g = Graph::cycle(5);
        for _ in 0..5 {
            g.add_vertex();
        }
        for i in 0..5 {
            g.add_edge(5 + i, 5 + (i + 2) % 5).unwrap();
            g.add_edge(i, 5 + i).unwrap();
        }
        assert_eq!(tw(&g), 4);
    }

    #[test]
    fn decomposition_validator_rejects_bad_inputs() {
        let g = Graph::cycle(4);
        let r = treewidth(&g);
        let mut td = r.decomposition.clone();
        td.bags[0].clear();
        assert!(check_decomposition(&g, &td).is_err());

        let mut td = r.decomposition.clone();
        td.links.clear();
        assert_eq!(check_decomposition(&g, &td), Err(TdError::NotATree));
    }

    #[test]
    fn heuristic_path_past_limit() {
        // 6x5 grid: 30 vertices forces the heuristic; width must be valid
        // and at least the exact treewidth 5 of the grid.
        let (w, h) = (6usize, 5usize);
        let mut g = Graph::new(w * h);
        for y in 0..h {
            for x in 0..w {
                if x + 1 < w {
                    g.add_edge(y * w + x, y * w + x + 1).unwrap();
                }
                if y + 1 < h {
                    g.add_edge(y * w + x, (y + 1) * w + x).unwrap();
                }
            }
        }
        let r = treewidth(&g);
        assert!(!r.optimal);
        assert_eq!(check_decomposition(&g, &r.decomposition), Ok(r.width));
        assert!(r.width >= 5);
    }
}
