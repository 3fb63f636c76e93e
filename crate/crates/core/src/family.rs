//! Graph family classification: trees, unicyclic, bicyclic (with shape),
//! cactus, regular bipartite.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Shape of a connected bicyclic graph.
///
/// Leafless bicyclic graphs fall into exactly one of three families:
/// * `B1(p, q)` - two cycles of lengths p <= q sharing one vertex,
///   n = p + q - 1;
/// * `B2(p, q, r)` - cycles of lengths p <= q joined by a bridge path with
///   r internal vertices (r = 0 means a single bridge edge), n = p + q + r;
/// * `B3(chains)` - two degree-3 hubs joined by three internally disjoint
///   chains; each chain length counts its vertices including both hubs, so
///   n = p + q + r - 4. Chain lengths are reported in decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BicyclicShape {
    B1 { p: usize, q: usize },
    B2 { p: usize, q: usize, r: usize },
    B3 { chains: [usize; 3] },
    WithLeaves,
}

impl fmt::Display for BicyclicShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BicyclicShape::B1 { p, q } => write!(f, "B1({p},{q})"),
            BicyclicShape::B2 { p, q, r } => write!(f, "B2({p},{q},{r})"),
            BicyclicShape::B3 { chains } => {
                write!(f, "B3({},{},{})", chains[0], chains[1], chains[2])
            }
            BicyclicShape::WithLeaves => write!(f, "bicyclic-with-leaves"),
        }
    }
}

/// One family a graph belongs to. A graph may satisfy several kinds at once
/// (for example C6 is unicyclic, a cactus and 2-regular bipartite).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    Tree,
    Unicyclic,
    Bicyclic { shape: Option<BicyclicShape> },
    Cactus,
    RegularBipartite { degree: usize },
    General,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Tree => write!(f, "tree"),
            FamilyKind::Unicyclic => write!(f, "unicyclic"),
            FamilyKind::Bicyclic { shape: Some(s) } => write!(f, "bicyclic[{s}]"),
            FamilyKind::Bicyclic { shape: None } => write!(f, "bicyclic"),
            FamilyKind::Cactus => write!(f, "cactus"),
            FamilyKind::RegularBipartite { degree } => write!(f, "regular-bipartite(d={degree})"),
            FamilyKind::General => write!(f, "general"),
        }
    }
}

/// Full classification of a graph: all applicable kinds, the cyclomatic
/// number and connectivity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyClassification {
    pub kinds: Vec<FamilyKind>,
    pub cyclomatic: usize,
    pub connected: bool,
}

impl FamilyClassification {
    pub fn has(&self, kind: &FamilyKind) -> bool {
        self.kinds.contains(kind)
    }

    pub fn is_tree(&self) -> bool {
        self.has(&FamilyKind::Tree)
    }

    pub fn is_unicyclic(&self) -> bool {
        self.has(&FamilyKind::Unicyclic)
    }

    pub fn is_bicyclic(&self) -> bool {
        self.kinds
            .iter()
            .any(|k| matches!(k, FamilyKind::Bicyclic { .. }))
    }

    pub fn is_cactus(&self) -> bool {
        self.has(&FamilyKind::Cactus)
    }
}

/// Reports every family the graph belongs to. Disconnected graphs are
/// reported as General with `connected = false`.
pub fn classify_family(g: &Graph) -> FamilyClassification {
    let connected = g.is_connected();
    let cyclomatic = g.cyclomatic();
    let mut kinds = Vec::new();

    if connected && g.n() > 0 {
        if g.m() == g.n() - 1 {
            kinds.push(FamilyKind::Tree);
        }
        if g.m() == g.n() {
            kinds.push(FamilyKind::Unicyclic);
        }
        if g.m() == g.n() + 1 {
            let shape = bicyclic_shape(g).ok();
            kinds.push(FamilyKind::Bicyclic { shape });
        }
        if g.is_cactus() {
            kinds.push(FamilyKind::Cactus);
        }
        if g.n() >= 2 {
            if let (Some(d), Some(_)) = (g.regular_degree(), g.bipartition()) {
                kinds.push(FamilyKind::RegularBipartite { degree: d });
            }
        }
    }
    if kinds.is_empty() {
        kinds.push(FamilyKind::General);
    }
    FamilyClassification {
        kinds,
        cyclomatic,
        connected,
    }
}

/// Determines the shape of a connected bicyclic graph (m = n + 1).
pub fn bicyclic_shape(g: &Graph) -> Result<BicyclicShape> {
    if !g.is_connected() || g.m() != g.n() + 1 {
        return Err(Error::Contract(format!(
            "bicyclic shape needs a connected graph with m = n+1, got n={} m={} connected={}",
            g.n(),
            g.m(),
            g.is_connected()
        )));
    }
    if g.vertices().any(|v| g.degree(v) == 1) {
        return Ok(BicyclicShape::WithLeaves);
    }

    // Leafless: degree sum 2n+2 with all degrees >= 2 leaves exactly one
    // degree-4 vertex (B1) or two degree-3 vertices (B2/B3).
    let deg4: Vec<usize> = g.vertices().filter(|&v| g.degree(v) == 4).collect();
    let deg3: Vec<usize> = g.vertices().filter(|&v| g.degree(v) == 3).collect();

    if deg4.len() == 1 && deg3.is_empty() {
        let hub = deg4[0];
        // removing the hub splits the two cycles into two paths
        let verts: Vec<usize> = g.vertices().filter(|&v| v != hub).collect();
        let rest = g.induced(&verts);
        let comps = rest.components();
        if comps.len() != 2 {
            return Err(Error::Internal(format!(
                "degree-4 hub should split a B1 graph into two paths, got {} parts",
                comps.len()
            )));
        }
        let mut p = comps[0].len() + 1;
        let mut q = comps[1].len() + 1;
        if p > q {
            std::mem::swap(&mut p, &mut q);
        }
        return Ok(BicyclicShape::B1 { p, q });
    }

    if deg3.len() == 2 && deg4.is_empty() {
        let (u, v) = (deg3[0], deg3[1]);
        // walk the three maximal degree-2 chains leaving u
        let mut closes_at_u = Vec::new(); // cycle lengths back at u
        let mut reaches_v = Vec::new(); // internal vertex counts of u..v chains
        for &start in g.neighbors(u) {
            let mut prev = u;
            let mut cur = start;
            let mut inner = 0usize;
            while cur != u && cur != v {
                inner += 1;
                let next = *g
                    .neighbors(cur)
                    .iter()
                    .find(|&&w| w != prev)
                    .expect("chain vertex has degree 2");
                prev = cur;
                cur = next;
            }
            if cur == u {
                closes_at_u.push(inner + 1); // cycle length
            } else {
                reaches_v.push(inner);
            }
        }
        match reaches_v.len() {
            3 => {
                // three internally disjoint chains between the hubs
                let mut chains = [reaches_v[0] + 2, reaches_v[1] + 2, reaches_v[2] + 2];
                chains.sort_unstable_by(|a, b| b.cmp(a));
                Ok(BicyclicShape::B3 { chains })
            }
            1 => {
                // cycle at u, bridge path to v, cycle at v
                let p_u = closes_at_u[0]; // both walk directions found it
                let r = reaches_v[0];
                let q_v = g.n() - p_u - r;
                let (p, q) = if p_u <= q_v { (p_u, q_v) } else { (q_v, p_u) };
                Ok(BicyclicShape::B2 { p, q, r })
            }
            _ => Err(Error::Internal(format!(
                "unexpected chain structure at degree-3 hubs: {} chains reach the far hub",
                reaches_v.len()
            ))),
        }
    } else {
        Err(Error::Internal(
            "leafless bicyclic graph without the expected degree profile".into(),
        ))
    }
}
