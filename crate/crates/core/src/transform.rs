//! Eigenpair-preserving surgeries and certificate decomposition.
//!
//! Adding or deleting an edge between equal-valued vertices preserves the
//! eigenpair, as does attaching zero-valued vertices to soft nodes. Every
//! surgery re-verifies its output. Decomposition deletes all equal links
//! and classifies the resulting connected components against the catalog
//! of link-free certificate shapes.

use std::fmt;

use crate::certificate::{verify, Certificate};
use crate::error::{Error, Result};
use crate::family::{bicyclic_shape, BicyclicShape};
use crate::graph::Graph;
use crate::valuation::Valuation;

/// Adds the edge {i,j}; requires v_i = v_j and that the edge is absent.
pub fn add_equal_link(cert: &Certificate, i: usize, j: usize) -> Result<Certificate> {
    require_equal(cert, i, j)?;
    let graph = cert.graph().with_edge(i, j)?;
    reverify(cert, graph)
}

/// Deletes the edge {i,j}; requires v_i = v_j and that the edge is present.
pub fn remove_equal_link(cert: &Certificate, i: usize, j: usize) -> Result<Certificate> {
    require_equal(cert, i, j)?;
    let graph = cert.graph().without_edge(i, j)?;
    reverify(cert, graph)
}

fn require_equal(cert: &Certificate, i: usize, j: usize) -> Result<()> {
    let n = cert.graph().n();
    if i >= n || j >= n {
        return Err(Error::Contract(format!("vertex pair ({i},{j}) out of range")));
    }
    if cert.valuation().get(i) != cert.valuation().get(j) {
        return Err(Error::Contract(format!(
            "vertices {i} and {j} carry different values; not an equal link"
        )));
    }
    Ok(())
}

fn reverify(cert: &Certificate, graph: Graph) -> Result<Certificate> {
    Certificate::with_lambda(graph, cert.valuation().clone(), cert.lambda())
        .map_err(|e| Error::Internal(format!("surgery broke the certificate: {e}")))
}

/// Attaches a zero-valued graph: vertices of `attachment` are appended
/// after the host's, and each join (attachment vertex, host vertex) becomes
/// an edge. Every host endpoint must be a soft node.
pub fn extend_soft(
    cert: &Certificate,
    attachment: &Graph,
    joins: &[(usize, usize)],
) -> Result<Certificate> {
    let host_n = cert.graph().n();
    for &(a, h) in joins {
        if a >= attachment.n() {
            return Err(Error::Contract(format!(
                "attachment vertex {a} out of range for attachment order {}",
                attachment.n()
            )));
        }
        if h >= host_n {
            return Err(Error::Contract(format!("host vertex {h} out of range")));
        }
        if cert.valuation().get(h) != 0 {
            return Err(Error::Contract(format!(
                "join endpoint {h} is not a soft node"
            )));
        }
    }
    let mut graph = cert.graph().disjoint_union(attachment);
    for &(a, h) in joins {
        graph = graph.with_edge(host_n + a, h)?;
    }
    let mut values = cert.valuation().values().to_vec();
    values.extend(std::iter::repeat(0).take(attachment.n()));
    let valuation = Valuation::new(values)?;
    Certificate::with_lambda(graph, valuation, cert.lambda())
        .map_err(|e| Error::Internal(format!("soft extension broke the certificate: {e}")))
}

/// Classification of one equal-link-free component against the catalog of
/// elementary certificate shapes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentClass {
    /// Every vertex is zero (internal edges allowed, e.g. an all-soft cycle).
    IsolatedZeros,
    /// A single edge valued +1/-1 (eigenvalue 2).
    ChainP2,
    /// Star S_{2k+1} with a soft center and k leaves of each sign
    /// (eigenvalue 1).
    SoftStar { k: usize },
    /// Cycle C_{4k} (eigenvalue 2).
    Cycle4k { k: usize },
    /// Cycle C_{3k} (eigenvalue 3).
    Cycle3k { k: usize },
    /// Even cycle C_{2k}, bivalent (eigenvalue 4).
    EvenCycle { k: usize },
    /// Two cycles sharing one (soft) vertex.
    B1 { p: usize, q: usize, lambda: u32 },
    /// Two hubs joined by three chains (chain lengths count both hubs).
    B3 { chains: [usize; 3], lambda: u32 },
    /// Two hubs joined by four or more chains (eigenvalue 3).
    GeneralizedTheta { chains: Vec<usize>, lambda: u32 },
    /// Three or more cycles glued at soft cut vertices.
    SoftGluedCycles { lengths: Vec<usize>, lambda: u32 },
    /// Outside the catalog.
    Other,
}

impl ComponentClass {
    /// The eigenvalue this class certifies (None: any, for all-zero parts).
    pub fn certified_lambda(&self) -> Option<u32> {
        match self {
            ComponentClass::IsolatedZeros | ComponentClass::Other => None,
            ComponentClass::ChainP2 => Some(2),
            ComponentClass::SoftStar { .. } => Some(1),
            ComponentClass::Cycle4k { .. } => Some(2),
            ComponentClass::Cycle3k { .. } => Some(3),
            ComponentClass::EvenCycle { .. } => Some(4),
            ComponentClass::B1 { lambda, .. }
            | ComponentClass::B3 { lambda, .. }
            | ComponentClass::GeneralizedTheta { lambda, .. }
            | ComponentClass::SoftGluedCycles { lambda, .. } => Some(*lambda),
        }
    }

    /// Re-evaluates the divisibility hypotheses attached to the class.
    pub fn hypotheses_hold(&self) -> bool {
        match self {
            ComponentClass::IsolatedZeros
            | ComponentClass::ChainP2
            | ComponentClass::SoftStar { .. }
            | ComponentClass::Cycle4k { .. }
            | ComponentClass::Cycle3k { .. }
            | ComponentClass::EvenCycle { .. } => true,
            ComponentClass::B1 { p, q, lambda } => match lambda {
                2 => (p % 4 == 0 && q % 4 == 0) || (p % 4 == 2 && q % 4 == 2),
                3 => p % 3 == 0 && q % 3 == 0,
                1 => p % 6 == 0 && q % 6 == 0,
                _ => false,
            },
            ComponentClass::B3 { chains, lambda } => match lambda {
                3 => chains.iter().all(|c| c % 3 == 0),
                4 => *chains == [3, 3, 2],
                _ => false,
            },
            ComponentClass::GeneralizedTheta { chains, lambda } => {
                *lambda == 3 && chains.iter().all(|c| c % 3 == 0)
            }
            ComponentClass::SoftGluedCycles { lengths, lambda } => match lambda {
                2 => lengths.iter().all(|l| l % 4 == 0),
                3 => lengths.iter().all(|l| l % 3 == 0),
                _ => false,
            },
            ComponentClass::Other => true,
        }
    }
}

impl fmt::Display for ComponentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentClass::IsolatedZeros => write!(f, "isolated-zeros"),
            ComponentClass::ChainP2 => write!(f, "chain-p2"),
            ComponentClass::SoftStar { k } => write!(f, "soft-star(k={k})"),
            ComponentClass::Cycle4k { k } => write!(f, "cycle-4k(k={k})"),
            ComponentClass::Cycle3k { k } => write!(f, "cycle-3k(k={k})"),
            ComponentClass::EvenCycle { k } => write!(f, "even-cycle(k={k})"),
            ComponentClass::B1 { p, q, lambda } => write!(f, "b1({p},{q})@{lambda}"),
            ComponentClass::B3 { chains, lambda } => {
                write!(f, "b3({},{},{})@{lambda}", chains[0], chains[1], chains[2])
            }
            ComponentClass::GeneralizedTheta { chains, lambda } => {
                write!(f, "theta({chains:?})@{lambda}")
            }
            ComponentClass::SoftGluedCycles { lengths, lambda } => {
                write!(f, "soft-glued-cycles({lengths:?})@{lambda}")
            }
            ComponentClass::Other => write!(f, "other"),
        }
    }
}

/// One equal-link-free component of a decomposed certificate.
#[derive(Debug, Clone)]
pub struct Component {
    pub graph: Graph,
    pub values: Vec<i8>,
    /// Original vertex ids, sorted; vertex i of `graph` is `vertices[i]`.
    pub vertices: Vec<usize>,
    pub class: ComponentClass,
    /// Eigenvalue verified on the component itself (None for all-zero).
    pub lambda: Option<u32>,
}

impl Component {
    pub fn valuation(&self) -> Option<Valuation> {
        Valuation::new(self.values.clone()).ok()
    }
}

/// Splits a certificate at its equal links and classifies each connected
/// component.
///
/// Links between nonzero equal values are always deleted, so components
/// containing nonzero vertices are link-free certificates for the same
/// eigenvalue. A 0-0 link is kept when both endpoints have only zero
/// neighbors: such regions separate anyway and are reported as single
/// IsolatedZeros components with their internal structure (an all-soft
/// cycle stays a cycle).
pub fn decompose(cert: &Certificate) -> Vec<Component> {
    let val = cert.valuation();
    let deep_soft: Vec<bool> = cert
        .graph()
        .vertices()
        .map(|v| {
            val.get(v) == 0
                && cert
                    .graph()
                    .neighbors(v)
                    .iter()
                    .all(|&w| val.get(w) == 0)
        })
        .collect();
    let links: Vec<(usize, usize)> = cert
        .equal_links()
        .into_iter()
        .filter(|&(u, v)| !(val.get(u) == 0 && deep_soft[u] && deep_soft[v]))
        .collect();
    let stripped = cert
        .graph()
        .without_edges(&links)
        .expect("equal links are edges of the graph");
    stripped
        .components()
        .into_iter()
        .map(|verts| {
            let graph = stripped.induced(&verts);
            let values: Vec<i8> = verts.iter().map(|&v| cert.valuation().get(v)).collect();
            let lambda = Valuation::new(values.clone())
                .ok()
                .and_then(|val| verify(&graph, &val));
            let class = classify_component(&graph, &values, lambda);
            Component {
                graph,
                values,
                vertices: verts,
                class,
                lambda,
            }
        })
        .collect()
}

fn classify_component(g: &Graph, values: &[i8], lambda: Option<u32>) -> ComponentClass {
    if values.iter().all(|&x| x == 0) {
        return ComponentClass::IsolatedZeros;
    }
    let Some(lambda) = lambda else {
        return ComponentClass::Other;
    };
    let n = g.n();

    // single edge
    if n == 2 && g.m() == 1 && lambda == 2 {
        return ComponentClass::ChainP2;
    }
    // star with a soft center
    if n >= 3 && g.m() == n - 1 {
        let center = g.vertices().find(|&v| g.degree(v) == n - 1);
        if let Some(c) = center {
            let leaves_ok = g.vertices().all(|v| v == c || g.degree(v) == 1);
            if leaves_ok && values[c] == 0 && lambda == 1 && (n - 1) % 2 == 0 {
                return ComponentClass::SoftStar { k: (n - 1) / 2 };
            }
        }
    }
    // plain cycle
    if n >= 3 && g.m() == n && g.regular_degree() == Some(2) && g.is_connected() {
        match lambda {
            2 if n % 4 == 0 => return ComponentClass::Cycle4k { k: n / 4 },
            3 if n % 3 == 0 => return ComponentClass::Cycle3k { k: n / 3 },
            4 if n % 2 == 0 => return ComponentClass::EvenCycle { k: n / 2 },
            _ => return ComponentClass::Other,
        }
    }
    // bicyclic shapes
    if g.is_connected() && g.m() == n + 1 {
        match bicyclic_shape(g) {
            Ok(BicyclicShape::B1 { p, q }) => return ComponentClass::B1 { p, q, lambda },
            Ok(BicyclicShape::B3 { chains }) => return ComponentClass::B3 { chains, lambda },
            _ => return ComponentClass::Other,
        }
    }
    // generalized theta: two hubs of degree t >= 4, all else degree 2
    if let Some(theta) = theta_chains(g) {
        return ComponentClass::GeneralizedTheta {
            chains: theta,
            lambda,
        };
    }
    // cactus of cycles glued at soft cut vertices
    if g.is_connected() && g.is_cactus() {
        let blocks = g.blocks();
        if blocks.iter().all(|b| b.is_cycle()) {
            let cuts = g.cut_vertices();
            if cuts.iter().all(|&v| values[v] == 0) {
                let mut lengths: Vec<usize> = blocks.iter().map(|b| b.vertices.len()).collect();
                lengths.sort_unstable();
                return ComponentClass::SoftGluedCycles { lengths, lambda };
            }
        }
    }
    ComponentClass::Other
}

/// Chain vertex counts when g is two hubs of degree >= 4 joined by
/// internally disjoint chains (each count includes both hubs); all other
/// vertices must have degree 2.
fn theta_chains(g: &Graph) -> Option<Vec<usize>> {
    if !g.is_connected() {
        return None;
    }
    let hubs: Vec<usize> = g.vertices().filter(|&v| g.degree(v) >= 3).collect();
    if hubs.len() != 2 {
        return None;
    }
    let (u, v) = (hubs[0], hubs[1]);
    if g.degree(u) != g.degree(v) || g.degree(u) < 4 {
        return None;
    }
    if g.vertices().any(|w| w != u && w != v && g.degree(w) != 2) {
        return None;
    }
    let mut chains = Vec::new();
    for &start in g.neighbors(u) {
        let mut prev = u;
        let mut cur = start;
        let mut inner = 0usize;
        while cur != v {
            if cur == u {
                return None; // a cycle closing at u: not a theta
            }
            inner += 1;
            let next = *g.neighbors(cur).iter().find(|&&w| w != prev)?;
            prev = cur;
            cur = next;
        }
        chains.push(inner + 2);
    }
    // all edges accounted for: chains cover everything exactly once
    let total_edges: usize = chains.iter().map(|c| c - 1).sum();
    if total_edges != g.m() {
        return None;
    }
    chains.sort_unstable_by(|a, b| b.cmp(a));
    Some(chains)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2_pair() -> Certificate {
        // two disjoint P2 chains valued [-,+] and [+,-]
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        Certificate::new(g, "-++-".parse().unwrap()).unwrap()
    }

    #[test]
    fn linking_two_chains_gives_a_path_certificate() {
        let base = p2_pair();
        // link the two +1 vertices (after canonicalization: [+,-,-,+], so
        // vertices 0 and 3 carry +1)
        let linked = add_equal_link(&base, 0, 3).unwrap();
        assert_eq!(linked.lambda(), 2);
        assert!(linked.graph().is_connected());
        let degs: Vec<usize> = linked.graph().vertices().map(|v| linked.graph().degree(v)).collect();
        let mut sorted = degs.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 1, 2, 2]); // a path
    }

    #[test]
    fn chord_on_even_cycle_stays_bivalent_lambda4() {
        let c8 = Graph::cycle(8).unwrap();
        let cert = Certificate::new(c8, "+-+-+-+-".parse().unwrap()).unwrap();
        assert_eq!(cert.lambda(), 4);
        let chord = add_equal_link(&cert, 0, 2).unwrap();
        assert_eq!(chord.lambda(), 4);
        assert_eq!(chord.graph().m(), 9);
        assert!(crate::family::classify_family(chord.graph()).is_bicyclic());
    }

    #[test]
    fn remove_then_add_is_identity() {
        let base = p2_pair();
        let linked = add_equal_link(&base, 0, 3).unwrap();
        let removed = remove_equal_link(&linked, 0, 3).unwrap();
        assert_eq!(removed, base);
    }

    #[test]
    fn unequal_endpoints_are_rejected() {
        let base = p2_pair();
        assert!(matches!(
            add_equal_link(&base, 0, 1),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn soft_extension_of_star() {
        // S5 (center 0 soft) plus a two-vertex zero path hung on the center
        let star = Certificate::new(
            Graph::star(4),
            Valuation::new(vec![0, 1, -1, 1, -1]).unwrap(),
        )
        .unwrap();
        assert_eq!(star.lambda(), 1);
        let tail = Graph::path(2);
        let extended = extend_soft(&star, &tail, &[(0, 0)]).unwrap();
        assert_eq!(extended.lambda(), 1);
        assert_eq!(extended.graph().n(), 7);
        assert_eq!(extended.graph().m(), 6); // still a tree
    }

    #[test]
    fn soft_extension_on_cycle_soft_node() {
        let c6 = Certificate::new(Graph::cycle(6).unwrap(), "+0-+0-".parse().unwrap()).unwrap();
        assert_eq!(c6.lambda(), 3);
        let pendant = Graph::empty(1);
        let extended = extend_soft(&c6, &pendant, &[(0, 1)]).unwrap();
        assert_eq!(extended.lambda(), 3);
        assert_eq!(extended.graph().degree(6), 1);
    }

    #[test]
    fn empty_extension_is_identity() {
        let base = p2_pair();
        let same = extend_soft(&base, &Graph::empty(0), &[]).unwrap();
        assert_eq!(same, base);
    }

    #[test]
    fn joining_at_nonsoft_vertex_is_rejected() {
        let base = p2_pair();
        assert!(matches!(
            extend_soft(&base, &Graph::empty(1), &[(0, 0)]),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn p4_decomposes_into_two_chains() {
        let cert = Certificate::new(Graph::path(4), "-++-".parse().unwrap()).unwrap();
        let comps = decompose(&cert);
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.class == ComponentClass::ChainP2));
        assert!(comps.iter().all(|c| c.lambda == Some(2)));
    }

    #[test]
    fn link_free_certificate_is_one_component() {
        let cert = Certificate::new(Graph::cycle(4).unwrap(), "+0-0".parse().unwrap()).unwrap();
        let comps = decompose(&cert);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].class, ComponentClass::Cycle4k { k: 1 });
    }

    #[test]
    fn figure_seven_style_cactus_decomposition() {
        // C8 and C4 glued at a shared soft vertex, a P2 attached by an
        // equal link, and an all-zero C5 hung on a soft node.
        let c8 = Certificate::new(
            Graph::cycle(8).unwrap(),
            "+0-0+0-0".parse().unwrap(),
        )
        .unwrap();
        // glue C4 at soft vertex 1: new vertices 8,9,10 with pattern
        // continuing around 1: values +,0,- chosen so 1 stays balanced
        let mut g = c8.graph().clone();
        for &(u, v) in &[(1, 8), (8, 9), (9, 10), (10, 1)] {
            g = g.with_edge(u, v).unwrap();
        }
        let mut values = c8.valuation().values().to_vec();
        values.extend([1, 0, -1]);
        let glued = Certificate::new(g, Valuation::new(values).unwrap()).unwrap();
        assert_eq!(glued.lambda(), 2);

        // attach P2 by an equal link from its +1 end to vertex 0 (+1)
        let p2 = Graph::path(2);
        let mut g = glued.graph().disjoint_union(&p2);
        g = g.with_edge(11, 0).unwrap();
        let mut values = glued.valuation().values().to_vec();
        values.extend([1, -1]);
        let with_p2 = Certificate::new(g, Valuation::new(values).unwrap()).unwrap();
        assert_eq!(with_p2.lambda(), 2);

        // extend with an all-zero C5 on soft vertex 3
        let c5 = Graph::cycle(5).unwrap();
        let full = extend_soft(&with_p2, &c5, &[(0, 3)]).unwrap();
        assert_eq!(full.lambda(), 2);

        let mut classes: Vec<ComponentClass> =
            decompose(&full).into_iter().map(|c| c.class).collect();
        classes.sort_by_key(|c| format!("{c}"));
        assert_eq!(
            classes,
            vec![
                ComponentClass::B1 { p: 4, q: 8, lambda: 2 },
                ComponentClass::ChainP2,
                ComponentClass::IsolatedZeros,
            ]
        );
    }

    #[test]
    fn decompose_then_relink_reconstructs() {
        let cert = Certificate::new(Graph::path(6), "+--++-".parse().unwrap()).unwrap();
        let links = cert.equal_links();
        let comps = decompose(&cert);
        // rebuild: union of component edges plus the removed links
        let mut edges = Vec::new();
        for comp in &comps {
            for (a, b) in comp.graph.edges() {
                edges.push((comp.vertices[a], comp.vertices[b]));
            }
        }
        edges.extend(links);
        edges.sort_unstable();
        assert_eq!(edges, cert.graph().edges());
    }

    #[test]
    fn soft_glued_class_and_hypotheses() {
        // three C4 cycles glued at one shared soft vertex
        let mut g = Graph::cycle(4).unwrap();
        for &(u, v) in &[(0, 4), (4, 5), (5, 6), (6, 0), (0, 7), (7, 8), (8, 9), (9, 0)] {
            g = g.with_edge(u, v).unwrap();
        }
        let values = Valuation::new(vec![0, 1, 0, -1, 1, 0, -1, 1, 0, -1]).unwrap();
        let cert = Certificate::new(g, values).unwrap();
        assert_eq!(cert.lambda(), 2);
        let comps = decompose(&cert);
        assert_eq!(comps.len(), 1);
        assert_eq!(
            comps[0].class,
            ComponentClass::SoftGluedCycles {
                lengths: vec![4, 4, 4],
                lambda: 2
            }
        );
        assert!(comps[0].class.hypotheses_hold());
    }

    #[test]
    fn theta_component_is_classified() {
        // four chains of 3 vertices each between two hubs: n = 2 + 4 = 6
        let g = Graph::from_edges(
            6,
            &[
                (0, 2),
                (2, 1),
                (0, 3),
                (3, 1),
                (0, 4),
                (4, 1),
                (0, 5),
                (5, 1),
            ],
        )
        .unwrap();
        let values = Valuation::new(vec![1, -1, 0, 0, 0, 0]).unwrap();
        let cert = Certificate::new(g, values).unwrap();
        assert_eq!(cert.lambda(), 3);
        let comps = decompose(&cert);
        assert_eq!(
            comps[0].class,
            ComponentClass::GeneralizedTheta {
                chains: vec![3, 3, 3, 3],
                lambda: 3
            }
        );
        assert!(comps[0].class.hypotheses_hold());
    }
}
