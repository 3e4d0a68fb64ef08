//! Arboricity: minimum number of forests partitioning the edge set.
//!
//! Edges are inserted one by one into a growing family of forests, moving
//! old edges between forests along a shortest augmenting sequence when the
//! new edge fits nowhere directly. A new forest is opened only when
//! augmentation fails, which certifies that the edges seen so far need more
//! forests, so the final count is exact.

use crate::graph::Graph;
use std::collections::{HashMap, VecDeque};

#[derive(Debug, Clone)]
pub struct ArboricityResult {
    pub value: usize,
    /// Edge partition; forest i holds the edges oriented as stored in the graph.
    pub forests: Vec<Vec<(usize, usize)>>,
}

struct Partition {
    edges: Vec<(usize, usize)>,
    assignment: Vec<Option<usize>>,
    k: usize,
    n: usize,
}

impl Partition {
    /// Unique path between the endpoints of `edge` inside forest `i`, as edge
    /// ids, or None when the endpoints are in different trees (so it fits).
    fn blocking_path(&self, i: usize, edge: usize) -> Option<Vec<usize>> {
        let (s, t) = self.edges[edge];
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.n];
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if self.assignment[id] == Some(i) {
                adj[u].push((v, id));
                adj[v].push((u, id));
            }
        }
        let mut via: Vec<Option<(usize, usize)>> = vec![None; self.n];
        let mut queue = VecDeque::from([s]);
        let mut seen = vec![false; self.n];
        seen[s] = true;
        while let Some(x) = queue.pop_front() {
            if x == t {
                let mut path = Vec::new();
                let mut cur = t;
                while cur != s {
                    let (prev, id) = via[cur].unwrap();
                    path.push(id);
                    cur = prev;
                }
                return Some(path);
            }
            for &(y, id) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    via[y] = Some((x, id));
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Try to place `e0` using the current `k` forests, relocating edges
    /// along a BFS-shortest exchange chain. False means `k` is too small for
    /// the edges inserted so far plus `e0`.
    fn insert(&mut self, e0: usize) -> bool {
        let mut parent: HashMap<usize, (usize, usize)> = HashMap::new();
        let mut queue = VecDeque::from([e0]);
        let mut visited = vec![false; self.edges.len()];
        visited[e0] = true;
        while let Some(f) = queue.pop_front() {
            for i in 0..self.k {
                match self.blocking_path(i, f) {
                    None => {
                        // f enters forest i; ancestors shift into the slots
                        // their children vacated.
                        let mut cur = f;
                        let mut dest = i;
                        loop {
                            let old = self.assignment[cur];
                            self.assignment[cur] = Some(dest);
                            match parent.get(&cur) {
                                None => break,
                                Some(&(prev, forest)) => {
                                    debug_assert_eq!(old, Some(forest));
                                    cur = prev;
                                    dest = forest;
                                }
                            }
                        }
                        return true;
                    }
                    Some(path) => {
                        for h in path {
                            if !visited[h] {
                                visited[h] = true;
                                parent.insert(h, (f, i));
                                queue.push_back(h);
                            }
                        }
                    }
                }
            }
        }
        false
    }
}

pub fn arboricity(g: &Graph) -> ArboricityResult {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut part = Partition {
        assignment: vec![None; edges.len()],
        edges,
        k: 0,
        n: g.n(),
    };
    for e in 0..part.edges.len() {
        while !part.insert(e) {
            part.k += 1;
        }
        debug_assert!(forests_valid(&part));
    }
    let mut forests = vec![Vec::new(); part.k];
    for (id, slot) in part.assignment.iter().enumerate() {
        forests[slot.unwrap()].push(part.edges[id]);
    }
    ArboricityResult { value: part.k, forests }
}

fn forests_valid(part: &Partition) -> bool {
    for i in 0..part.k {
        let mut uf: Vec<usize> = (0..part.n).collect();
        fn root(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        for (id, &(u, v)) in part.edges.iter().enumerate() {
            if part.assignment[id] == Some(i) {
                let (ru, rv) = (root(&mut uf, u), root(&mut uf, v));
                if ru == rv {
                    return false;
                }
                uf[ru] = rv;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::predicates::is_forest;

    fn check(g: &Graph) -> usize {
        let r = arboricity(g);
        let mut seen = std::collections::BTreeSet::new();
        for part in &r.forests {
            let mut f = Graph::new(g.n());
            for &(u, v) in part {
                f.add_edge(u, v).unwrap();
                assert!(seen.insert((u, v)), "edge assigned twice");
            }
            assert!(is_forest(&f));
        }
        assert_eq!(seen.len(), g.m());
        r.value
    }

    /// Densest-subgraph formula, brute forced over all vertex subsets.
    fn oracle(g: &Graph) -> usize {
        assert!(g.n() <= 16);
        let mut adj = vec![0u32; g.n()];
        for (u, v) in g.edges() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        let mut best = 0usize;
        for mask in 1u32..(1 << g.n()) {
            if mask.count_ones() < 2 {
                continue;
            }
            let mut edges = 0usize;
            let mut rest = mask;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                edges += (adj[v] & rest).count_ones() as usize;
            }
            let verts = mask.count_ones() as usize;
            best = best.max(edges.div_ceil(verts - 1));
        }
        best
    }

    #[test]
    fn known_values() {
        assert_eq!(check(&Graph::complete(5)), 3);
        assert_eq!(check(&Graph::complete(4)), 2);
        assert_eq!(check(&Graph::path(7)), 1);
        assert_eq!(check(&Graph::star(5)), 1);
        assert_eq!(check(&Graph::cycle(6)), 2);
        assert_eq!(check(&Graph::complete_bipartite(3, 3)), 2);
        assert_eq!(check(&Graph::empty(4)), 0);
        assert_eq!(check(&Graph::empty(0)), 0);
    }

    #[test]
    fn matches_density_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..40 {
            let n = rng.gen_range(2..=9);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            if g.m() == 0 {
                continue;
            }
            assert_eq!(check(&g), oracle(&g));
        }
    }
}
