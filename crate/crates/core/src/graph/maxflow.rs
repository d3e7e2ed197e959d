//! Dinic max-flow on integer capacities.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: u128,
}

/// Residual network; arcs are stored in pairs so `a ^ 1` is the reverse.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    arcs: Vec<Arc>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        Self { adj: vec![Vec::new(); nodes], arcs: Vec::new() }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: u128) {
        self.push_pair(from, to, cap, 0);
    }

    /// Undirected edge: capacity `cap` in both directions.
    pub fn add_edge(&mut self, u: usize, v: usize, cap: u128) {
        self.push_pair(u, v, cap, cap);
    }

    fn push_pair(&mut self, u: usize, v: usize, forward: u128, backward: u128) {
        self.adj[u].push(self.arcs.len());
        self.arcs.push(Arc { to: v, cap: forward });
        self.adj[v].push(self.arcs.len());
        self.arcs.push(Arc { to: u, cap: backward });
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> u128 {
        let n = self.adj.len();
        let mut flow = 0;
        loop {
            let mut level = vec![usize::MAX; n];
            level[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &a in &self.adj[u] {
                    let Arc { to, cap } = self.arcs[a];
                    if cap > 0 && level[to] == usize::MAX {
                        level[to] = level[u] + 1;
                        queue.push_back(to);
                    }
                }
            }
            if level[t] == usize::MAX {
                return flow;
            }
            let mut next = vec![0usize; n];
            loop {
                let pushed = self.augment(s, t, u128::MAX, &level, &mut next);
                if pushed == 0 {
                    break;
                }
                flow += pushed;
            }
        }
    }

    /// Iterative blocking-flow DFS from `s` along level-increasing arcs.
    fn augment(&mut self, s: usize, t: usize, limit: u128, level: &[usize], next: &mut [usize]) -> u128 {
        let mut path: Vec<usize> = Vec::new();
        let mut u = s;
        loop {
            if u == t {
                let pushed = path.iter().fold(limit, |m, &a| m.min(self.arcs[a].cap));
                for &a in &path {
                    self.arcs[a].cap -= pushed;
                    self.arcs[a ^ 1].cap += pushed;
                }
                return pushed;
            }
            let mut advanced = false;
            while next[u] < self.adj[u].len() {
                let a = self.adj[u][next[u]];
                let Arc { to, cap } = self.arcs[a];
                if cap > 0 && level[to] == level[u] + 1 {
                    path.push(a);
                    u = to;
                    advanced = true;
                    break;
                }
                next[u] += 1;
            }
            if !advanced {
                if u == s {
                    return 0;
                }
                // Dead end: retreat and skip the arc that led here.
                let a = path.pop().expect("non-empty path");
                u = self.arcs[a ^ 1].to;
                next[u] += 1;
            }
        }
    }

    /// Nodes reachable from `s` in the residual network.
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u] {
                let Arc { to, cap } = self.arcs[a];
                if cap > 0 && !seen[to] {
                    seen[to] = true;
                    queue.push_back(to);
                }
            }
        }
        seen
    }
}
