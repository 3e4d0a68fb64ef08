//! Dinic max-flow on small integer networks (orientation feasibility and
//! maximum-density witnesses).

#[derive(Clone, Debug)]
struct Edge {
    to: usize,
    cap: i64,
    rev: usize,
}

pub struct FlowNetwork {
    graph: Vec<Vec<Edge>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork { graph: vec![Vec::new(); nodes] }
    }

    /// Returns an edge id usable with `flow_on` after the run.
    pub fn add_edge(&mut self, from: usize, to: usize, cap: i64) -> (usize, usize) {
        let a = self.graph[from].len();
        let b = self.graph[to].len();
        self.graph[from].push(Edge { to, cap, rev: b });
        self.graph[to].push(Edge { to: from, cap: 0, rev: a });
        (from, a)
    }

    pub fn flow_on(&self, id: (usize, usize)) -> i64 {
        let e = &self.graph[id.0][id.1];
        self.graph[e.to][e.rev].cap
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let n = self.graph.len();
        let mut flow = 0;
        loop {
            // BFS level graph.
            let mut level = vec![usize::MAX; n];
            level[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for e in &self.graph[v] {
                    if e.cap > 0 && level[e.to] == usize::MAX {
                        level[e.to] = level[v] + 1;
                        queue.push_back(e.to);
                    }
                }
            }
            if level[t] == usize::MAX {
                return flow;
            }
            let mut it = vec![0usize; n];
            loop {
                let f = self.dfs(s, t, i64::MAX, &level, &mut it);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
    }

    fn dfs(&mut self, v: usize, t: usize, limit: i64, level: &[usize], it: &mut [usize]) -> i64 {
        if v == t {
            return limit;
        }
        while it[v] < self.graph[v].len() {
            let (to, cap, rev) = {
                let e = &self.graph[v][it[v]];
                (e.to, e.cap, e.rev)
            };
            if cap > 0 && level[to] == level[v] + 1 {
                let d = self.dfs(to, t, limit.min(cap), level, it);
                if d > 0 {
                    self.graph[v][it[v]].cap -= d;
                    self.graph[to][rev].cap += d;
                    return d;
                }
            }
            it[v] += 1;
        }
        0
    }

    /// Nodes reachable from `s` in the residual network (source side of a
    /// minimum cut after `max_flow`).
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.graph.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for e in &self.graph[v] {
                if e.cap > 0 && !seen[e.to] {
                    seen[e.to] = true;
                    stack.push(e.to);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_max_flow() {
        // s=0, t=3, classic diamond with a cross edge.
        let mut net = FlowNetwork::new(4);
        net.add_edge(0, 1, 3);
        net.add_edge(0, 2, 2);
        net.add_edge(1, 2, 1);
        net.add_edge(1, 3, 2);
        net.add_edge(2, 3, 3);
        assert_eq!(net.max_flow(0, 3), 5);
        let side = net.source_side(0);
        assert!(side[0]);
        assert!(!side[3]);
    }

    #[test]
    fn flow_on_reports_used_capacity() {
        let mut net = FlowNetwork::new(3);
        let e = net.add_edge(0, 1, 5);
        net.add_edge(1, 2, 2);
        assert_eq!(net.max_flow(0, 2), 2);
        assert_eq!(net.flow_on(e), 2);
    }
}
