//! Bitmask adjacency and the hot search kernels.
//!
//! Graphs up to 64 vertices are stored as one neighborhood mask per vertex.
//! Ternary vectors are a pair of disjoint masks (plus, minus); verification
//! is a handful of popcounts per vertex. The census sweeps run entirely in
//! this representation.

use crate::graph::Graph;

#[derive(Clone, Debug)]
pub(crate) struct BitGraph {
    pub n: usize,
    pub adj: Vec<u64>,
}

/// One found eigenvector in mask form, sign-normalized so the lowest set
/// bit of plus|minus lies in plus.
pub(crate) type MaskCert = (u32, u64, u64);

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct SearchCounters {
    pub nodes: u64,
    pub prunes: u64,
}

impl BitGraph {
    pub fn from_graph(g: &Graph) -> Self {
        assert!(g.n() <= 64, "bit graphs support at most 64 vertices");
        let mut adj = vec![0u64; g.n()];
        for (u, v) in g.edges() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        BitGraph { n: g.n(), adj }
    }

    /// Builds from an upper-triangle edge mask: bit k of `mask` is the pair
    /// (i, j) with k = j*(j-1)/2 + i, i < j (column order, n <= 11 for u64).
    pub fn from_edge_mask(n: usize, mask: u64) -> Self {
        let mut adj = vec![0u64; n];
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if mask >> k & 1 == 1 {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
                k += 1;
            }
        }
        BitGraph { n, adj }
    }

    pub fn to_graph(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            let mut rest = self.adj[u] >> (u + 1) << (u + 1);
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                edges.push((u, v));
                rest &= rest - 1;
            }
        }
        Graph::from_edges(self.n, &edges).unwrap()
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    pub fn edge_count(&self) -> u32 {
        self.adj.iter().map(|m| m.count_ones()).sum::<u32>() / 2
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let all = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        let mut seen = 1u64;
        loop {
            let mut next = seen;
            let mut frontier = seen;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                next |= self.adj[v];
            }
            if next == seen {
                return seen == all;
            }
            seen = next;
        }
    }

    /// Exact eigenvalue of the ternary vector (plus, minus), or None.
    /// Accepts only a single consistent lambda >= 1.
    #[inline]
    pub fn verify_masks(&self, plus: u64, minus: u64) -> Option<u32> {
        debug_assert_eq!(plus & minus, 0);
        let mut lambda = i32::MIN;
        for v in 0..self.n {
            let nbrs = self.adj[v];
            let s = (nbrs & plus).count_ones() as i32 - (nbrs & minus).count_ones() as i32;
            let bit = 1u64 << v;
            if plus & bit != 0 {
                let l = nbrs.count_ones() as i32 - s;
                if lambda == i32::MIN {
                    lambda = l;
                } else if lambda != l {
                    return None;
                }
            } else if minus & bit != 0 {
                let l = nbrs.count_ones() as i32 + s;
                if lambda == i32::MIN {
                    lambda = l;
                } else if lambda != l {
                    return None;
                }
            } else if s != 0 {
                return None;
            }
        }
        (lambda >= 1).then_some(lambda as u32)
    }

    /// Enumerates every ternary vector whose lowest-indexed nonzero entry is
    /// +1 and returns the verified ones. Counters report vectors tested.
    pub fn brute_force_masks(&self) -> (Vec<MaskCert>, SearchCounters) {
        let mut found = Vec::new();
        let mut counters = SearchCounters::default();
        if self.n == 0 {
            return (found, counters);
        }
        assert!(self.n <= 32, "brute force enumeration is limited to n <= 32");
        let total = 1u64 << self.n;
        for support in 1..total {
            let low = support & support.wrapping_neg();
            let rest = support ^ low;
            // plus ranges over subsets of support containing the lowest bit
            let mut sub = rest;
            loop {
                let plus = sub | low;
                let minus = support ^ plus;
                counters.nodes += 1;
                if let Some(lambda) = self.verify_masks(plus, minus) {
                    found.push((lambda, plus, minus));
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
        }
        found.sort_unstable();
        (found, counters)
    }

    /// Backtracking search for eigenvectors with the given lambda.
    ///
    /// Vertices are assigned in BFS order from a maximum-degree vertex so
    /// each vertex (after the first per component) has an assigned
    /// neighbor. A vertex equation (d - lambda)*v = sum of neighbor values
    /// is checked exactly once all neighbors are assigned, and partial sums
    /// prune when the unassigned neighbors cannot reach the target.
    pub fn csp_masks(&self, lambda: u32, prune: bool) -> (Vec<MaskCert>, SearchCounters) {
        let mut counters = SearchCounters::default();
        let mut found = Vec::new();
        if self.n == 0 {
            return (found, counters);
        }
        let order = self.bfs_order();
        let mut pos_of = vec![0usize; self.n];
        for (i, &v) in order.iter().enumerate() {
            pos_of[v] = i;
        }

        // assigned_sum[v]: sum of assigned neighbor values
        // unassigned[v]: count of not-yet-assigned neighbors
        let mut state = CspState {
            graph: self,
            lambda: lambda as i32,
            order,
            values: vec![0i8; self.n],
            assigned: vec![false; self.n],
            assigned_sum: vec![0i32; self.n],
            unassigned: (0..self.n).map(|v| self.degree(v) as i32).collect(),
            prune,
            counters: SearchCounters::default(),
            found: Vec::new(),
        };
        state.assign(0);
        counters.nodes = state.counters.nodes;
        counters.prunes = state.counters.prunes;
        let mut seen = std::collections::BTreeSet::new();
        for &(plus, minus) in &state.found {
            // canonicalize sign on the lowest-indexed nonzero vertex
            let support = plus | minus;
            let low = support & support.wrapping_neg();
            let (p, m) = if plus & low != 0 {
                (plus, minus)
            } else {
                (minus, plus)
            };
            if seen.insert((p, m)) {
                found.push((lambda, p, m));
            }
        }
        found.sort_unstable();
        (found, counters)
    }

    /// BFS order from a maximum-degree vertex, restarting at the next
    /// unvisited maximum-degree vertex for further components.
    fn bfs_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.n);
        let mut seen = vec![false; self.n];
        loop {
            let start = (0..self.n)
                .filter(|&v| !seen[v])
                .max_by_key(|&v| (self.degree(v), std::cmp::Reverse(v)));
            let Some(start) = start else { break };
            seen[start] = true;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                order.push(u);
                let mut rest = self.adj[u];
                while rest != 0 {
                    let w = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        order
    }
}

struct CspState<'a> {
    graph: &'a BitGraph,
    lambda: i32,
    order: Vec<usize>,
    values: Vec<i8>,
    assigned: Vec<bool>,
    assigned_sum: Vec<i32>,
    unassigned: Vec<i32>,
    prune: bool,
    counters: SearchCounters,
    found: Vec<(u64, u64)>,
}

impl CspState<'_> {
    fn assign(&mut self, depth: usize) {
        if depth == self.order.len() {
            let mut plus = 0u64;
            let mut minus = 0u64;
            for (v, &x) in self.values.iter().enumerate() {
                match x {
                    1 => plus |= 1 << v,
                    -1 => minus |= 1 << v,
                    _ => {}
                }
            }
            if plus | minus == 0 {
                return;
            }
            // with pruning every full assignment already satisfies all
            // equations; without it, verify from scratch
            if self.prune || self.graph.verify_masks(plus, minus) == Some(self.lambda as u32) {
                self.found.push((plus, minus));
            }
            return;
        }
        let vertex = self.order[depth];
        // global sign symmetry: restrict the very first vertex to {0, +1}
        let candidates: &[i8] = if depth == 0 { &[1, 0] } else { &[1, 0, -1] };
        for &val in candidates {
            self.counters.nodes += 1;
            if self.try_assign(vertex, val) {
                self.assign(depth + 1);
                self.undo_assign(vertex, val);
            } else {
                self.counters.prunes += 1;
            }
        }
    }

    /// Applies the assignment and checks local feasibility; returns false
    /// (after rolling back) when some equation can no longer be satisfied.
    fn try_assign(&mut self, vertex: usize, val: i8) -> bool {
        self.values[vertex] = val;
        self.assigned[vertex] = true;
        let mut rest = self.graph.adj[vertex];
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            self.assigned_sum[w] += val as i32;
            self.unassigned[w] -= 1;
        }
        if !self.prune {
            return true;
        }
        let mut ok = self.feasible(vertex);
        if ok {
            let mut rest = self.graph.adj[vertex];
            while rest != 0 {
                let w = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if !self.feasible(w) {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            self.undo_assign(vertex, val);
        }
        ok
    }

    fn undo_assign(&mut self, vertex: usize, val: i8) {
        self.assigned[vertex] = false;
        self.values[vertex] = 0;
        let mut rest = self.graph.adj[vertex];
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            self.assigned_sum[w] -= val as i32;
            self.unassigned[w] += 1;
        }
    }

    /// Can vertex w's equation (d - lambda) v_w = sum of neighbors still be
    /// satisfied? Each unassigned neighbor contributes at most +-1.
    #[inline]
    fn feasible(&self, w: usize) -> bool {
        let slack = self.unassigned[w];
        let sum = self.assigned_sum[w];
        let coeff = self.graph.degree(w) as i32 - self.lambda;
        if self.assigned[w] {
            (coeff * self.values[w] as i32 - sum).abs() <= slack
        } else {
            [1i32, 0, -1]
                .iter()
                .any(|&v| (coeff * v - sum).abs() <= slack)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_mask_roundtrip() {
        // triangle plus pendant on 4 vertices: pairs (0,1),(0,2),(1,2),(2,3)
        let bg = BitGraph::from_edge_mask(4, 0b100111);
        let g = bg.to_graph();
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 2), (2, 3)]);
        assert_eq!(BitGraph::from_graph(&g).adj, bg.adj);
    }

    #[test]
    fn connectivity() {
        assert!(BitGraph::from_graph(&Graph::cycle(5).unwrap()).is_connected());
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!BitGraph::from_graph(&g).is_connected());
        assert!(BitGraph::from_graph(&Graph::empty(0)).is_connected());
    }

    #[test]
    fn verify_masks_agrees_with_slow_verify() {
        use crate::certificate::verify;
        use crate::valuation::Valuation;
        for n in 1..=5usize {
            let bits = n * (n - 1) / 2;
            for mask in 0..1u64 << bits {
                let bg = BitGraph::from_edge_mask(n, mask);
                let g = bg.to_graph();
                for code in 0..3u32.pow(n as u32) {
                    let mut c = code;
                    let mut values = vec![0i8; n];
                    for slot in values.iter_mut() {
                        *slot = (c % 3) as i8 - 1;
                        c /= 3;
                    }
                    let (mut plus, mut minus) = (0u64, 0u64);
                    for (v, &x) in values.iter().enumerate() {
                        match x {
                            1 => plus |= 1 << v,
                            -1 => minus |= 1 << v,
                            _ => {}
                        }
                    }
                    let fast = bg.verify_masks(plus, minus);
                    let slow = Valuation::new(values.clone())
                        .ok()
                        .and_then(|val| verify(&g, &val));
                    assert_eq!(fast, slow, "n={n} mask={mask} values={values:?}");
                }
            }
        }
    }

    #[test]
    fn csp_equals_brute_force_on_small_graphs() {
        for n in 1..=5usize {
            let bits = n * (n - 1) / 2;
            for mask in 0..1u64 << bits {
                let bg = BitGraph::from_edge_mask(n, mask);
                let (brute, _) = bg.brute_force_masks();
                let mut merged = Vec::new();
                for lambda in 1..=n as u32 {
                    let (found, _) = bg.csp_masks(lambda, true);
                    let (unpruned, _) = bg.csp_masks(lambda, false);
                    assert_eq!(found, unpruned, "pruning changed results");
                    merged.extend(found);
                }
                merged.sort_unstable();
                assert_eq!(merged, brute, "n={n} mask={mask}");
            }
        }
    }
}
