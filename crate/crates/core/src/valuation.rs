//! Ternary vertex valuations with entries in {-1, 0, +1}.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A per-vertex value in {-1, 0, +1} with at least one nonzero entry
/// (the all-zero vector is never a valuation).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Valuation {
    values: Vec<i8>,
}

impl Valuation {
    pub fn new(values: Vec<i8>) -> Result<Self> {
        if values.iter().any(|&x| !(-1..=1).contains(&x)) {
            return Err(Error::Valuation("entries must lie in {-1,0,+1}".into()));
        }
        if values.iter().all(|&x| x == 0) {
            return Err(Error::Valuation("the all-zero vector is not allowed".into()));
        }
        Ok(Valuation { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, v: usize) -> i8 {
        self.values[v]
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    /// True when no entry is zero.
    pub fn is_bivalent(&self) -> bool {
        self.values.iter().all(|&x| x != 0)
    }

    pub fn negated(&self) -> Valuation {
        Valuation {
            values: self.values.iter().map(|&x| -x).collect(),
        }
    }

    /// Sign-normalized copy: the lowest-indexed nonzero vertex gets +1.
    pub fn canonical(&self) -> Valuation {
        match self.values.iter().find(|&&x| x != 0) {
            Some(&x) if x < 0 => self.negated(),
            _ => self.clone(),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.values.iter().find(|&&x| x != 0).copied().unwrap_or(0) >= 0
    }

    /// The display symbol of one entry: '+', '0' or '-'.
    pub fn symbol(&self, v: usize) -> char {
        match self.values[v] {
            1 => '+',
            -1 => '-',
            _ => '0',
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in 0..self.len() {
            write!(f, "{}", self.symbol(v))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Valuation({self})")
    }
}

impl FromStr for Valuation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                '0' => Ok(0),
                other => Err(Error::Valuation(format!(
                    "unexpected character {other:?}, expected one of \"+-0\""
                ))),
            })
            .collect::<Result<Vec<i8>>>()?;
        Valuation::new(values)
    }
}

/// Number of neighbors of `j` with a nonzero value.
pub fn hard_degree(graph: &Graph, valuation: &Valuation, j: usize) -> usize {
    assert_eq!(
        valuation.len(),
        graph.n(),
        "valuation length must match graph order"
    );
    assert!(j < graph.n(), "vertex {j} out of range");
    graph
        .neighbors(j)
        .iter()
        .filter(|&&w| valuation.get(w) != 0)
        .count()
}

/// Vertices valued zero.
pub fn soft_nodes(graph: &Graph, valuation: &Valuation) -> Vec<usize> {
    assert_eq!(
        valuation.len(),
        graph.n(),
        "valuation length must match graph order"
    );
    graph.vertices().filter(|&v| valuation.get(v) == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_vectors() {
        assert!(Valuation::new(vec![0, 0]).is_err());
        assert!(Valuation::new(vec![2, 0]).is_err());
        assert!(Valuation::new(vec![]).is_err());
    }

    #[test]
    fn string_roundtrip() {
        let v: Valuation = "+0-0".parse().unwrap();
        assert_eq!(v.values(), &[1, 0, -1, 0]);
        assert_eq!(v.to_string(), "+0-0");
        assert!("+x".parse::<Valuation>().is_err());
    }

    #[test]
    fn canonicalization_flips_leading_minus() {
        let v: Valuation = "0-+".parse().unwrap();
        assert_eq!(v.canonical().to_string(), "0+-");
        assert!(!v.is_canonical());
        assert!(v.canonical().is_canonical());
    }

    #[test]
    fn star_center_is_soft_with_full_hard_degree() {
        // S5: center 0, leaves valued -1,+1,-1,+1
        let g = Graph::star(4);
        let v = Valuation::new(vec![0, -1, 1, -1, 1]).unwrap();
        assert_eq!(hard_degree(&g, &v, 0), 4);
        assert_eq!(soft_nodes(&g, &v), vec![0]);
    }

    #[test]
    fn p2_has_no_soft_nodes() {
        let g = Graph::path(2);
        let v = Valuation::new(vec![1, -1]).unwrap();
        assert_eq!(hard_degree(&g, &v, 0), 1);
        assert!(soft_nodes(&g, &v).is_empty());
    }

    #[test]
    fn trivalent_cycle_hard_degrees() {
        // C4 with [1,0,-1,0]: nonzero vertices see only soft neighbors
        let g = Graph::cycle(4).unwrap();
        let v: Valuation = "+0-0".parse().unwrap();
        assert_eq!(hard_degree(&g, &v, 0), 0);
        assert_eq!(hard_degree(&g, &v, 1), 2);
    }
}
