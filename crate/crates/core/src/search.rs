//! Exhaustive certificate discovery: a 3^n enumeration oracle and a pruned
//! constraint-propagation search, both exact.

use std::collections::{BTreeMap, BTreeSet};

use crate::bitgraph::BitGraph;
use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::valuation::Valuation;

pub const DEFAULT_BRUTE_FORCE_BOUND: usize = 16;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    pub prunes: u64,
}

/// All certificates of one graph, sign-normalized and deduplicated, sorted
/// by (lambda, valuation).
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub certificates: Vec<Certificate>,
    pub stats: SearchStats,
}

impl SearchResult {
    pub fn lambdas(&self) -> BTreeSet<u32> {
        self.certificates.iter().map(|c| c.lambda()).collect()
    }

    pub fn by_lambda(&self) -> BTreeMap<u32, Vec<&Certificate>> {
        let mut map: BTreeMap<u32, Vec<&Certificate>> = BTreeMap::new();
        for c in &self.certificates {
            map.entry(c.lambda()).or_default().push(c);
        }
        map
    }

    /// The comparable fingerprint used by equivalence tests.
    pub fn signature(&self) -> BTreeSet<(u32, String)> {
        self.certificates
            .iter()
            .map(|c| (c.lambda(), c.valuation().to_string()))
            .collect()
    }
}

fn mask_to_valuation(n: usize, plus: u64, minus: u64) -> Valuation {
    let values = (0..n)
        .map(|v| {
            if plus >> v & 1 == 1 {
                1
            } else if minus >> v & 1 == 1 {
                -1
            } else {
                0
            }
        })
        .collect();
    Valuation::new(values).expect("search never yields the all-zero vector")
}

fn build_result(graph: &Graph, masks: Vec<(u32, u64, u64)>, stats: SearchStats) -> SearchResult {
    let mut certificates: Vec<Certificate> = masks
        .into_iter()
        .map(|(lambda, plus, minus)| {
            let val = mask_to_valuation(graph.n(), plus, minus);
            Certificate::with_lambda(graph.clone(), val, lambda)
                .expect("search output must verify")
        })
        .collect();
    certificates.sort_by(|a, b| {
        (a.lambda(), a.valuation().to_string()).cmp(&(b.lambda(), b.valuation().to_string()))
    });
    SearchResult {
        certificates,
        stats,
    }
}

/// Ground-truth oracle: checks every ternary vector (first nonzero entry
/// forced to +1) against the eigenvector identity.
pub fn brute_force(graph: &Graph) -> Result<SearchResult> {
    brute_force_bounded(graph, DEFAULT_BRUTE_FORCE_BOUND)
}

/// `brute_force` with an explicit size bound.
pub fn brute_force_bounded(graph: &Graph, bound: usize) -> Result<SearchResult> {
    if graph.n() > bound {
        return Err(Error::BoundExceeded {
            what: "brute force enumeration",
            n: graph.n(),
            bound,
        });
    }
    let bg = BitGraph::from_graph(graph);
    let (masks, counters) = bg.brute_force_masks();
    Ok(build_result(
        graph,
        masks,
        SearchStats {
            nodes_expanded: counters.nodes,
            prunes: counters.prunes,
        },
    ))
}

/// Pruned backtracking search for all certificates with eigenvalue `lambda`.
/// Equal links are permitted; the search constrains the raw linear system.
pub fn csp_search(graph: &Graph, lambda: u32) -> Result<SearchResult> {
    csp_search_with_options(graph, lambda, true)
}

/// `csp_search` with pruning optionally disabled (for differential tests).
pub fn csp_search_with_options(graph: &Graph, lambda: u32, prune: bool) -> Result<SearchResult> {
    if lambda == 0 || lambda as usize > graph.n().max(1) {
        return Err(Error::Contract(format!(
            "lambda must lie in 1..=n, got {lambda} for n={}",
            graph.n()
        )));
    }
    if graph.n() > 64 {
        return Err(Error::BoundExceeded {
            what: "constraint search",
            n: graph.n(),
            bound: 64,
        });
    }
    let bg = BitGraph::from_graph(graph);
    let (masks, counters) = bg.csp_masks(lambda, prune);
    Ok(build_result(
        graph,
        masks,
        SearchStats {
            nodes_expanded: counters.nodes,
            prunes: counters.prunes,
        },
    ))
}

/// Runs `csp_search` for every lambda in 1..=n and merges the results.
/// Produces exactly the same certificate set as `brute_force`.
pub fn full_spectrum(graph: &Graph) -> Result<SearchResult> {
    if graph.n() > 64 {
        return Err(Error::BoundExceeded {
            what: "spectrum search",
            n: graph.n(),
            bound: 64,
        });
    }
    let bg = BitGraph::from_graph(graph);
    let mut stats = SearchStats::default();
    let mut masks = Vec::new();
    for lambda in 1..=graph.n() as u32 {
        let (found, counters) = bg.csp_masks(lambda, true);
        stats.nodes_expanded += counters.nodes;
        stats.prunes += counters.prunes;
        masks.extend(found);
    }
    masks.sort_unstable();
    Ok(build_result(graph, masks, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::Valence;

    #[test]
    fn c4_certificates_exactly() {
        // Frozen from the enumeration oracle. Besides the trivalent
        // lambda=2 rotations and the alternating bivalent lambda=4 vector,
        // C4 carries the blocked bivalent lambda=2 pair (two P2 chains
        // closed into a cycle by two equal links).
        let got = brute_force(&Graph::cycle(4).unwrap()).unwrap();
        let want: Vec<(u32, &str)> = vec![
            (2, "+0-0"),
            (2, "++--"),
            (2, "+--+"),
            (2, "0+0-"),
            (4, "+-+-"),
        ];
        let want: BTreeSet<(u32, String)> =
            want.into_iter().map(|(l, v)| (l, v.to_string())).collect();
        assert_eq!(got.signature(), want);
    }

    #[test]
    fn p3_has_exactly_the_soft_star_certificate() {
        let got = brute_force(&Graph::path(3)).unwrap();
        assert_eq!(got.certificates.len(), 1);
        assert_eq!(got.certificates[0].lambda(), 1);
        assert_eq!(got.certificates[0].valuation().to_string(), "+0-");
    }

    #[test]
    fn degenerate_graphs_have_no_certificates() {
        assert!(brute_force(&Graph::empty(1)).unwrap().certificates.is_empty());
        assert!(brute_force(&Graph::cycle(5).unwrap())
            .unwrap()
            .certificates
            .is_empty());
    }

    #[test]
    fn brute_force_refuses_large_graphs() {
        let g = Graph::path(17);
        assert!(matches!(
            brute_force(&g),
            Err(Error::BoundExceeded { .. })
        ));
        assert!(brute_force_bounded(&g, 17).is_ok());
    }

    #[test]
    fn c6_by_lambda() {
        let g = Graph::cycle(6).unwrap();
        let l3 = csp_search(&g, 3).unwrap();
        let vals: Vec<String> = l3
            .certificates
            .iter()
            .map(|c| c.valuation().to_string())
            .collect();
        assert_eq!(vals, vec!["+-0+-0", "+0-+0-", "0+-0+-"]);

        let l4 = csp_search(&g, 4).unwrap();
        assert_eq!(l4.certificates.len(), 1);
        assert_eq!(l4.certificates[0].valuation().to_string(), "+-+-+-");
        assert_eq!(l4.certificates[0].valence(), Valence::Bivalent);

        // C6 also carries lambda=1 eigenvectors: v_{i+1} = v_i - v_{i-1}
        // closes after six steps, e.g. [1,1,0,-1,-1,0] (two stars S3 joined
        // by two equal links). Checked against the dense Laplacian.
        let l1 = csp_search(&g, 1).unwrap();
        let vals: Vec<String> = l1
            .certificates
            .iter()
            .map(|c| c.valuation().to_string())
            .collect();
        assert_eq!(vals, vec!["++0--0", "+0--0+", "0++0--"]);
    }

    #[test]
    fn full_spectrum_examples() {
        // diamond: hubs 0,1 valued +-, the degree-2 vertices soft, lambda 4
        let diamond = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let spec = full_spectrum(&diamond).unwrap();
        assert!(spec
            .signature()
            .contains(&(4, "+-00".to_string())));

        let k33 = Graph::complete_bipartite(3, 3);
        let spec = full_spectrum(&k33).unwrap();
        assert!(spec.signature().contains(&(6, "+++---".to_string())));

        let p2 = Graph::path(2);
        let spec = full_spectrum(&p2).unwrap();
        assert_eq!(spec.signature(), BTreeSet::from([(2, "+-".to_string())]));
    }

    #[test]
    fn full_spectrum_matches_brute_force_on_random_graphs() {
        // deterministic xorshift so the test is reproducible
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for n in 2..=8usize {
            for _ in 0..30 {
                let bits = n * (n - 1) / 2;
                let mask = next() & ((1u64 << bits) - 1);
                let g = crate::bitgraph::BitGraph::from_edge_mask(n, mask).to_graph();
                let a = brute_force(&g).unwrap().signature();
                let b = full_spectrum(&g).unwrap().signature();
                assert_eq!(a, b, "n={n} mask={mask}");
            }
        }
    }

    #[test]
    fn lambda_of_bivalent_certificates_is_even() {
        for n in 2..=7usize {
            let bits = n * (n - 1) / 2;
            for mask in (0..1u64 << bits).step_by(7) {
                let g = crate::bitgraph::BitGraph::from_edge_mask(n, mask).to_graph();
                for cert in brute_force(&g).unwrap().certificates {
                    if cert.valence() == Valence::Bivalent {
                        assert_eq!(cert.lambda() % 2, 0);
                    }
                }
            }
        }
    }
}
