//! Maximum average degree, exact over the rationals.
//!
//! mad(G) = max over nonempty S of 2|E(S)|/|S|. Small graphs are handled by
//! subset enumeration; larger ones by iterated max-density improvement, where
//! each round asks a flow network whether some S beats the current density.

use crate::flow::FlowNetwork;
use crate::graph::Graph;
use crate::rational::Rational;

/// Exact mad together with a densest vertex set.
pub fn mad(g: &Graph) -> (Rational, Vec<usize>) {
    let (density, witness) = max_density(g);
    (density.mul_int(2), witness)
}

/// max |E(S)|/|S| over nonempty S, with a maximizing S.
pub fn max_density(g: &Graph) -> (Rational, Vec<usize>) {
    if g.n() == 0 {
        return (Rational::from_int(0), Vec::new());
    }
    if g.m() == 0 {
        return (Rational::from_int(0), vec![0]);
    }
    if g.n() <= 20 {
        max_density_subsets(g)
    } else {
        max_density_flow(g)
    }
}

fn max_density_subsets(g: &Graph) -> (Rational, Vec<usize>) {
    let n = g.n();
    let mut adj = vec![0u32; n];
    for (u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let mut best = Rational::from_int(0);
    let mut best_mask: u32 = 1;
    for mask in 1u32..(1 << n) {
        let mut edges = 0u32;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            edges += (adj[v] & rest).count_ones();
        }
        let d = Rational::new(edges as i64, mask.count_ones() as i64);
        if d > best {
            best = d;
            best_mask = mask;
        }
    }
    let verts = (0..n).filter(|&v| best_mask >> v & 1 == 1).collect();
    (best, verts)
}

/// Is there S with |E(S)|/|S| > a/b? Returns a witness S if so.
///
/// Network: source -> edge node (cap b) -> both endpoints (inf) -> sink
/// (cap a). The min cut equals b*m - max_S (b|E(S)| - a|S|), so max-flow
/// below b*m certifies an S strictly denser than a/b; the source side of the
/// cut restricted to vertex nodes is such an S.
fn denser_than(g: &Graph, a: i64, b: i64) -> Option<Vec<usize>> {
    let n = g.n();
    let m = g.m();
    // Nodes: 0 = source, 1..=m edge nodes, m+1..=m+n vertex nodes, m+n+1 = sink.
    let mut net = FlowNetwork::new(m + n + 2);
    let source = 0;
    let sink = m + n + 1;
    let inf = b * m as i64 + a * n as i64 + 1;
    for (i, (u, v)) in g.edges().enumerate() {
        net.add_edge(source, 1 + i, b);
        net.add_edge(1 + i, m + 1 + u, inf);
        net.add_edge(1 + i, m + 1 + v, inf);
    }
    for v in 0..n {
        net.add_edge(m + 1 + v, sink, a);
    }
    let flow = net.max_flow(source, sink);
    if flow >= b * m as i64 {
        return None;
    }
    let side = net.source_side(source);
    let s: Vec<usize> = (0..n).filter(|&v| side[m + 1 + v]).collect();
    assert!(!s.is_empty(), "cut below b*m must expose vertices");
    Some(s)
}

fn density_of(g: &Graph, s: &[usize]) -> Rational {
    let inside: std::collections::BTreeSet<usize> = s.iter().copied().collect();
    let edges = g.edges().filter(|&(u, v)| inside.contains(&u) && inside.contains(&v)).count();
    Rational::new(edges as i64, s.len() as i64)
}

fn max_density_flow(g: &Graph) -> (Rational, Vec<usize>) {
    let mut witness: Vec<usize> = (0..g.n()).collect();
    let mut best = density_of(g, &witness);
    // Each round strictly improves the attained density, and subgraph
    // densities form a finite set, so this terminates at the maximum.
    while let Some(s) = denser_than(g, best.num(), best.den()) {
        let d = density_of(g, &s);
        assert!(d > best, "flow witness must strictly improve");
        best = d;
        witness = s;
    }
    (best, witness)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        // K_{1,4}: densest set is the whole star, 4 edges on 5 vertices.
        let (m, w) = mad(&Graph::star(4));
        assert_eq!(m, Rational::new(8, 5));
        assert_eq!(w.len(), 5);

        let (m, _) = mad(&Graph::complete(5));
        assert_eq!(m, Rational::from_int(4));

        let (m, _) = mad(&Graph::cycle(7));
        assert_eq!(m, Rational::from_int(2));

        let (m, _) = mad(&Graph::path(6));
        assert_eq!(m, Rational::new(5, 3));

        let (m, w) = mad(&Graph::empty(3));
        assert_eq!(m, Rational::from_int(0));
        assert_eq!(w.len(), 1);

        let (m, _) = mad(&Graph::empty(0));
        assert_eq!(m, Rational::from_int(0));
    }

    #[test]
    fn dense_part_dominates() {
        // K5 with a long pendant path: mad stays 4, witness is the K5.
        let mut g = Graph::complete(5);
        let mut prev = 0;
        for _ in 0..10 {
            let v = g.add_vertex();
            g.add_edge(prev, v).unwrap();
            prev = v;
        }
        let (m, w) = mad(&g);
        assert_eq!(m, Rational::from_int(4));
        assert_eq!(w, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn flow_path_matches_subset_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..30 {
            let n = rng.gen_range(4..=12);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            if g.m() == 0 {
                continue;
            }
            let (oracle, _) = max_density_subsets(&g);
            let (flowed, wit) = max_density_flow(&g);
            assert_eq!(oracle, flowed);
            assert_eq!(density_of(&g, &wit), flowed);
        }
    }

    #[test]
    fn large_graph_uses_flow() {
        // Two K6 blocks joined by a path of 30 vertices: mad = 5.
        let mut g = Graph::complete(6);
        let mut prev = 0;
        for _ in 0..30 {
            let v = g.add_vertex();
            g.add_edge(prev, v).unwrap();
            prev = v;
        }
        let block = g.n();
        for _ in 0..6 {
            g.add_vertex();
        }
        for u in block..block + 6 {
            for v in u + 1..block + 6 {
                g.add_edge(u, v).unwrap();
            }
        }
        g.add_edge(prev, block).unwrap();
        assert!(g.n() > 20);
        let (m, w) = mad(&g);
        assert_eq!(m, Rational::from_int(5));
        // Both K6 blocks tie at density 5/2, so either one or their union
        // is a legal witness.
        assert_eq!(density_of(&g, &w), Rational::new(5, 2));
    }
}
