//! Exact eigenvector verification and the certificate type.
//!
//! A certificate is a triple (graph, valuation, lambda) satisfying the
//! per-vertex integer identity d_i*v_i - sum_{j~i} v_j = lambda*v_i.
//! Everything is integer arithmetic; there is no floating point anywhere.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::{encode_graph6, parse_graph6};
use crate::valuation::Valuation;

/// Whether a valuation uses both signs only, or also zeros.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Valence {
    Bivalent,
    Trivalent,
}

/// Checks whether `valuation` is a Laplacian eigenvector of `graph` and
/// returns its eigenvalue.
///
/// Returns `Some(lambda)` iff d_i*v_i - sum_{j~i} v_j = lambda*v_i holds at
/// every vertex for a single integer lambda >= 1. Requiring lambda >= 1
/// excludes exactly the vectors that are constant on every component, so a
/// successful verification is always nonconstant.
pub fn verify(graph: &Graph, valuation: &Valuation) -> Option<u32> {
    assert_eq!(
        valuation.len(),
        graph.n(),
        "valuation length must match graph order"
    );
    let mut lambda: Option<i64> = None;
    for i in graph.vertices() {
        let vi = valuation.get(i) as i64;
        let s: i64 = graph
            .neighbors(i)
            .iter()
            .map(|&j| valuation.get(j) as i64)
            .sum();
        if vi == 0 {
            // soft vertex: neighbor values must cancel
            if s != 0 {
                return None;
            }
        } else {
            // lambda = d_i - s_i * v_i since v_i is +-1
            let li = graph.degree(i) as i64 - s * vi;
            match lambda {
                None => lambda = Some(li),
                Some(l) if l != li => return None,
                _ => {}
            }
        }
    }
    match lambda {
        Some(l) if l >= 1 => Some(l as u32),
        _ => None,
    }
}

/// A verified (graph, valuation, eigenvalue) triple, sign-normalized so the
/// lowest-indexed nonzero vertex has value +1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Certificate {
    graph: Graph,
    valuation: Valuation,
    lambda: u32,
}

impl Certificate {
    /// Verifies and canonicalizes. Fails when the pair is not an eigenpair.
    pub fn new(graph: Graph, valuation: Valuation) -> Result<Self> {
        if valuation.len() != graph.n() {
            return Err(Error::Contract(format!(
                "valuation length {} does not match graph order {}",
                valuation.len(),
                graph.n()
            )));
        }
        match verify(&graph, &valuation) {
            Some(lambda) => Ok(Certificate {
                graph,
                valuation: valuation.canonical(),
                lambda,
            }),
            None => Err(Error::NotEigenvector(format!(
                "valuation {valuation} is not a Laplacian eigenvector"
            ))),
        }
    }

    /// Like `new`, but also requires the given eigenvalue.
    pub fn with_lambda(graph: Graph, valuation: Valuation, lambda: u32) -> Result<Self> {
        let cert = Certificate::new(graph, valuation)?;
        if cert.lambda != lambda {
            return Err(Error::NotEigenvector(format!(
                "eigenvalue is {}, expected {lambda}",
                cert.lambda
            )));
        }
        Ok(cert)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn valuation(&self) -> &Valuation {
        &self.valuation
    }

    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    pub fn valence(&self) -> Valence {
        if self.valuation.is_bivalent() {
            Valence::Bivalent
        } else {
            Valence::Trivalent
        }
    }

    /// Edges whose endpoints carry equal values.
    pub fn equal_links(&self) -> Vec<(usize, usize)> {
        self.graph
            .edges()
            .into_iter()
            .filter(|&(u, v)| self.valuation.get(u) == self.valuation.get(v))
            .collect()
    }

    pub fn to_record(&self) -> CertificateRecord {
        CertificateRecord {
            graph: encode_graph6(&self.graph),
            valuation: self.valuation.to_string(),
            lambda: self.lambda,
        }
    }

    pub fn from_record(record: &CertificateRecord) -> Result<Self> {
        let graph = parse_graph6(&record.graph)?;
        let valuation: Valuation = record.valuation.parse()?;
        Certificate::with_lambda(graph, valuation, record.lambda)
    }
}

/// Wire form of a certificate: graph6 text, valuation over "+-0", lambda.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub graph: String,
    pub valuation: String,
    pub lambda: u32,
}

/// Per-vertex outcome of the local trivalence conditions at a given lambda.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCheck {
    pub vertex: usize,
    /// lambda = d + hard degree at nonzero vertices; balanced +-1 neighbor
    /// counts at soft vertices.
    pub pass: bool,
}

/// Evaluates the local eigenvector conditions for valuations without equal
/// links: a nonzero vertex passes iff lambda equals its degree plus hard
/// degree; a soft vertex passes iff it sees as many +1 as -1 neighbors.
///
/// Fails when the valuation has an equal link under `graph`, since the
/// conditions only characterize eigenvectors in the link-free case.
pub fn trivalent_local_check(
    graph: &Graph,
    valuation: &Valuation,
    lambda: u32,
) -> Result<Vec<VertexCheck>> {
    assert_eq!(
        valuation.len(),
        graph.n(),
        "valuation length must match graph order"
    );
    for (u, v) in graph.edges() {
        if valuation.get(u) == valuation.get(v) {
            return Err(Error::Contract(format!(
                "equal link ({u},{v}) present; local conditions need a link-free valuation"
            )));
        }
    }
    let report = graph
        .vertices()
        .map(|j| {
            let pass = if valuation.get(j) == 0 {
                let plus = graph
                    .neighbors(j)
                    .iter()
                    .filter(|&&w| valuation.get(w) == 1)
                    .count();
                let minus = graph
                    .neighbors(j)
                    .iter()
                    .filter(|&&w| valuation.get(w) == -1)
                    .count();
                plus == minus
            } else {
                let hard = crate::valuation::hard_degree(graph, valuation, j);
                graph.degree(j) + hard == lambda as usize
            };
            VertexCheck { vertex: j, pass }
        })
        .collect();
    Ok(report)
}

/// True when every vertex passes.
pub fn all_pass(report: &[VertexCheck]) -> bool {
    report.iter().all(|c| c.pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: multiply the dense Laplacian by the vector and
    /// solve for a rational eigenvalue.
    fn laplacian_eigenvalue(graph: &Graph, values: &[i8]) -> Option<i64> {
        let n = graph.n();
        let mut image = vec![0i64; n];
        for i in 0..n {
            let mut acc = graph.degree(i) as i64 * values[i] as i64;
            for &j in graph.neighbors(i) {
                acc -= values[j] as i64;
            }
            image[i] = acc;
        }
        let mut lambda: Option<i64> = None;
        for i in 0..n {
            match (values[i], image[i]) {
                (0, 0) => {}
                (0, _) => return None,
                (v, im) => {
                    if im % v as i64 != 0 {
                        return None;
                    }
                    let l = im / v as i64;
                    if *lambda.get_or_insert(l) != l {
                        return None;
                    }
                }
            }
        }
        lambda
    }

    #[test]
    fn p2_verifies_at_two() {
        let g = Graph::path(2);
        let v: Valuation = "+-".parse().unwrap();
        assert_eq!(verify(&g, &v), Some(2));
        assert_eq!(laplacian_eigenvalue(&g, v.values()), Some(2));
    }

    #[test]
    fn star_with_balanced_leaves_verifies_at_one() {
        let g = Graph::star(4);
        let v = Valuation::new(vec![0, -1, 1, -1, 1]).unwrap();
        assert_eq!(verify(&g, &v), Some(1));
        assert_eq!(laplacian_eigenvalue(&g, v.values()), Some(1));
    }

    #[test]
    fn c4_blocked_pattern_is_an_eigenvector() {
        // The two-and-two pattern on C4 is a genuine lambda=2 eigenvector:
        // it is two P2 chains closed into a cycle by two equal links.
        let g = Graph::cycle(4).unwrap();
        let v = Valuation::new(vec![1, 1, -1, -1]).unwrap();
        assert_eq!(laplacian_eigenvalue(&g, v.values()), Some(2));
        assert_eq!(verify(&g, &v), Some(2));
    }

    #[test]
    fn p4_blocked_pattern_is_not() {
        let g = Graph::path(4);
        let v = Valuation::new(vec![1, 1, -1, -1]).unwrap();
        assert_eq!(laplacian_eigenvalue(&g, v.values()), None);
        assert_eq!(verify(&g, &v), None);
    }

    #[test]
    fn constant_vector_rejected() {
        let g = Graph::path(2);
        let v = Valuation::new(vec![1, 1]).unwrap();
        assert_eq!(verify(&g, &v), None);
        // nonconstant across components but constant per component: lambda 0
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let v = Valuation::new(vec![1, 1, -1, -1]).unwrap();
        assert_eq!(verify(&two_k2, &v), None);
    }

    #[test]
    fn certificate_canonicalizes_sign() {
        let g = Graph::path(2);
        let v: Valuation = "-+".parse().unwrap();
        let cert = Certificate::new(g, v).unwrap();
        assert_eq!(cert.valuation().to_string(), "+-");
        assert_eq!(cert.lambda(), 2);
        assert_eq!(cert.valence(), Valence::Bivalent);
    }

    #[test]
    fn equal_links_of_p4_chain_composition() {
        // P4 valued [-1,1,1,-1] (canonicalized to [+,-,-,+]): middle edge only
        let g = Graph::path(4);
        let cert = Certificate::new(g, "-++-".parse().unwrap()).unwrap();
        assert_eq!(cert.lambda(), 2);
        assert_eq!(cert.equal_links(), vec![(1, 2)]);

        let c4 = Graph::cycle(4).unwrap();
        let cert = Certificate::new(c4, "+-+-".parse().unwrap()).unwrap();
        assert_eq!(cert.lambda(), 4);
        assert!(cert.equal_links().is_empty());
    }

    #[test]
    fn record_roundtrip() {
        let cert = Certificate::new(Graph::path(2), "+-".parse().unwrap()).unwrap();
        let rec = cert.to_record();
        assert_eq!(rec.graph, "A_");
        assert_eq!(rec.valuation, "+-");
        assert_eq!(Certificate::from_record(&rec).unwrap(), cert);

        let bad = CertificateRecord {
            lambda: 3,
            ..rec
        };
        assert!(Certificate::from_record(&bad).is_err());
    }

    #[test]
    fn local_check_matches_cycle_catalog() {
        // C6 with [1,0,-1,1,0,-1] at lambda=3: every vertex passes
        let g = Graph::cycle(6).unwrap();
        let v: Valuation = "+0-+0-".parse().unwrap();
        let report = trivalent_local_check(&g, &v, 3).unwrap();
        assert!(all_pass(&report));

        // C4 with [1,0,-1,0] passes at 2 but the nonzero vertices fail at 3
        let g = Graph::cycle(4).unwrap();
        let v: Valuation = "+0-0".parse().unwrap();
        assert!(all_pass(&trivalent_local_check(&g, &v, 2).unwrap()));
        let report = trivalent_local_check(&g, &v, 3).unwrap();
        assert!(!report[0].pass);
        assert!(report[1].pass);
        assert!(!report[2].pass);
    }

    #[test]
    fn local_check_rejects_equal_links() {
        let g = Graph::path(4);
        let v: Valuation = "+--+".parse().unwrap();
        assert!(trivalent_local_check(&g, &v, 2).is_err());
    }
}
