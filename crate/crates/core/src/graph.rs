//! Simple undirected graphs over dense vertex ids 0..n-1.
//!
//! Adjacency lists are kept sorted; construction validates symmetry,
//! rejects self-loops and duplicate edges. Values are immutable after
//! construction, so graphs can be shared freely across threads.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Rejects out-of-range endpoints,
    /// self-loops and duplicate edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Graph(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            if u == v {
                return Err(Error::Graph(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, nbrs) in adj.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if nbrs.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Graph(format!("duplicate edge at vertex {v}")));
            }
        }
        Ok(Graph {
            adj,
            m: edges.len(),
        })
    }

    /// Cycle graph C_n (n >= 3).
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Graph(format!("cycle needs n >= 3, got {n}")));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Path graph P_n.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    /// Star with center 0 and `leaves` pendant vertices.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).unwrap()
    }

    /// Complete bipartite graph K_{a,b} with part A = 0..a.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::with_capacity(a * b);
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        Graph::from_edges(a + b, &edges).unwrap()
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges as (u, v) with u < v, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Degree shared by all vertices, if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        if self.n() == 0 {
            return None;
        }
        let d = self.degree(0);
        self.vertices().all(|v| self.degree(v) == d).then_some(d)
    }

    pub fn leaves(&self) -> Vec<usize> {
        self.vertices().filter(|&v| self.degree(v) == 1).collect()
    }

    /// Connected components as sorted vertex lists, in order of discovery.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut comps = Vec::new();
        for start in self.vertices() {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Cyclomatic number m - n + (number of components).
    pub fn cyclomatic(&self) -> usize {
        self.m + self.component_count() - self.n()
    }

    /// Proper 2-coloring (side 0/1 per vertex) if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut side = vec![u8::MAX; self.n()];
        for start in self.vertices() {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    /// The unique cycle of a connected unicyclic graph, in traversal order.
    pub fn unique_cycle(&self) -> Option<Vec<usize>> {
        if !self.is_connected() || self.m != self.n() {
            return None;
        }
        // peel leaves until only the cycle remains
        let mut deg: Vec<usize> = self.vertices().map(|v| self.degree(v)).collect();
        let mut queue: VecDeque<usize> = self.vertices().filter(|&v| deg[v] == 1).collect();
        let mut alive = vec![true; self.n()];
        while let Some(u) = queue.pop_front() {
            alive[u] = false;
            for &w in &self.adj[u] {
                if alive[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        queue.push_back(w);
                    }
                }
            }
        }
        let start = self.vertices().find(|&v| alive[v])?;
        let mut cycle = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = *self
                .adj[cur]
                .iter()
                .find(|&&w| alive[w] && w != prev)
                .expect("cycle vertex has two live neighbors");
            if next == start {
                break;
            }
            cycle.push(next);
            prev = cur;
            cur = next;
        }
        Some(cycle)
    }

    /// Copy with one more edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        if u >= self.n() || v >= self.n() {
            return Err(Error::Graph(format!("edge ({u},{v}) out of range")));
        }
        if u == v {
            return Err(Error::Graph(format!("self-loop at vertex {u}")));
        }
        if self.has_edge(u, v) {
            return Err(Error::Graph(format!("edge ({u},{v}) already present")));
        }
        let mut adj = self.adj.clone();
        let iu = adj[u].binary_search(&v).unwrap_err();
        adj[u].insert(iu, v);
        let iv = adj[v].binary_search(&u).unwrap_err();
        adj[v].insert(iv, u);
        Ok(Graph { adj, m: self.m + 1 })
    }

    /// Copy with one edge removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Self> {
        if u >= self.n() || v >= self.n() || !self.has_edge(u, v) {
            return Err(Error::Graph(format!("edge ({u},{v}) not present")));
        }
        let mut adj = self.adj.clone();
        adj[u].retain(|&w| w != v);
        adj[v].retain(|&w| w != u);
        Ok(Graph { adj, m: self.m - 1 })
    }

    /// Copy with several edges removed.
    pub fn without_edges(&self, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = self.clone();
        for &(u, v) in edges {
            g = g.without_edge(u, v)?;
        }
        Ok(g)
    }

    /// Induced subgraph on `verts` (must be sorted); vertex i of the result
    /// corresponds to verts[i].
    pub fn induced(&self, verts: &[usize]) -> Graph {
        debug_assert!(verts.windows(2).all(|w| w[0] < w[1]));
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in verts.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in verts.iter().enumerate() {
            for &w in &self.adj[v] {
                if w > v && index[w] != usize::MAX {
                    edges.push((i, index[w]));
                }
            }
        }
        Graph::from_edges(verts.len(), &edges).unwrap()
    }

    /// Relabels vertices: vertex v becomes perm[v].
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let edges: Vec<_> = self
            .edges()
            .iter()
            .map(|&(u, v)| (perm[u], perm[v]))
            .collect();
        Graph::from_edges(self.n(), &edges).unwrap()
    }

    /// Disjoint union; vertices of `other` are shifted by self.n().
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut edges = self.edges();
        edges.extend(other.edges().iter().map(|&(u, v)| (u + off, v + off)));
        Graph::from_edges(off + other.n(), &edges).unwrap()
    }

    /// Biconnected components (blocks). Each block is returned as a sorted
    /// vertex list plus its edge list; an isolated vertex yields no block.
    pub fn blocks(&self) -> Vec<Block> {
        let n = self.n();
        let mut state = BlockState {
            graph: self,
            disc: vec![0; n],
            low: vec![0; n],
            timer: 1,
            stack: Vec::new(),
            blocks: Vec::new(),
        };
        for v in 0..n {
            if state.disc[v] == 0 {
                state.dfs(v);
            }
        }
        state.blocks
    }

    /// Cut vertices (articulation points).
    pub fn cut_vertices(&self) -> Vec<usize> {
        let mut count = vec![0usize; self.n()];
        for b in self.blocks() {
            for &v in &b.vertices {
                count[v] += 1;
            }
        }
        self.vertices().filter(|&v| count[v] >= 2).collect()
    }

    /// A connected graph is a cactus when every block is a single edge or a
    /// cycle (block edge count equals block vertex count).
    pub fn is_cactus(&self) -> bool {
        self.is_connected()
            && self
                .blocks()
                .iter()
                .all(|b| b.edges.len() == 1 || b.edges.len() == b.vertices.len())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

/// One biconnected component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl Block {
    pub fn is_bridge(&self) -> bool {
        self.edges.len() == 1
    }

    pub fn is_cycle(&self) -> bool {
        self.edges.len() >= 3 && self.edges.len() == self.vertices.len()
    }
}

struct BlockState<'a> {
    graph: &'a Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    timer: usize,
    stack: Vec<(usize, usize)>,
    blocks: Vec<Block>,
}

impl BlockState<'_> {
    // Iterative Hopcroft-Tarjan; the recursion depth would otherwise be n.
    fn dfs(&mut self, root: usize) {
        // frame: (vertex, parent, next neighbor index)
        let mut frames: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        self.disc[root] = self.timer;
        self.low[root] = self.timer;
        self.timer += 1;

        while let Some(top) = frames.len().checked_sub(1) {
            let (u, parent) = (frames[top].0, frames[top].1);
            if frames[top].2 < self.graph.adj[u].len() {
                let w = self.graph.adj[u][frames[top].2];
                frames[top].2 += 1;
                if w == parent {
                    continue;
                }
                if self.disc[w] == 0 {
                    self.stack.push((u, w));
                    self.disc[w] = self.timer;
                    self.low[w] = self.timer;
                    self.timer += 1;
                    frames.push((w, u, 0));
                } else if self.disc[w] < self.disc[u] {
                    self.stack.push((u, w));
                    self.low[u] = self.low[u].min(self.disc[w]);
                }
            } else {
                frames.pop();
                if frames.is_empty() {
                    continue;
                }
                let p = frames[frames.len() - 1].0;
                self.low[p] = self.low[p].min(self.low[u]);
                if self.low[u] >= self.disc[p] {
                    // p is a cut vertex (or the root); pop one block
                    let mut edges = Vec::new();
                    while let Some(&(a, b)) = self.stack.last() {
                        if self.disc[a] >= self.disc[u] || (a, b) == (p, u) {
                            edges.push(self.stack.pop().unwrap());
                            if (a, b) == (p, u) {
                                break;
                            }
                        } else {
                            break;
                        }
                    }
                    let mut verts: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
                    verts.sort_unstable();
                    verts.dedup();
                    let edges = edges
                        .into_iter()
                        .map(|(a, b)| if a < b { (a, b) } else { (b, a) })
                        .collect();
                    self.blocks.push(Block {
                        vertices: verts,
                        edges,
                    });
                }
            }
        }
    }
}
