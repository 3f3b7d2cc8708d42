use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::Graph;
use crate::error::{Error, Result};

/// A degree sequence kept in non-decreasing order, `d_1 <= ... <= d_n`.
///
/// Entries are bounded by `n - 1`. Graphicality is not implied; see
/// [`crate::conditions::is_graphic`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    /// Sorts `degrees` and checks every entry is at most `len - 1`.
    pub fn new(mut degrees: Vec<usize>) -> Result<Self> {
        let n = degrees.len();
        if let Some(&bad) = degrees.iter().find(|&&d| d + 1 > n) {
            return Err(Error::DegreeOutOfRange { degree: bad, n });
        }
        degrees.sort_unstable();
        Ok(DegreeSequence(degrees))
    }

    pub(crate) fn from_graph(g: &Graph) -> Self {
        let mut d = g.degrees();
        d.sort_unstable();
        DegreeSequence(d)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// `d_i` with the 1-based indexing used for degree conditions.
    #[inline]
    pub fn d(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn count_of(&self, degree: usize) -> usize {
        self.0.iter().filter(|&&d| d == degree).count()
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for DegreeSequence {
    type Err = Error;

    /// Parses comma-separated integers, e.g. `"2,2,2,2,2"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return DegreeSequence::new(Vec::new());
        }
        let degrees = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| Error::InvalidParameters(format!("bad degree {t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        DegreeSequence::new(degrees)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorts_and_validates() {
        let d = DegreeSequence::new(vec![3, 1, 2, 2]).unwrap();
        assert_eq!(d.as_slice(), &[1, 2, 2, 3]);
        assert_eq!(d.d(1), 1);
        assert_eq!(d.d(4), 3);
        assert!(matches!(DegreeSequence::new(vec![4, 1, 1, 1]), Err(Error::DegreeOutOfRange { degree: 4, n: 4 })));
    }

    #[test]
    fn parses_comma_list() {
        let d: DegreeSequence = "2, 2,2,2,2".parse().unwrap();
        assert_eq!(d.to_string(), "2,2,2,2,2");
        assert!("2,x".parse::<DegreeSequence>().is_err());
    }

    #[test]
    fn from_graph_sums_to_twice_edges() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let d = g.degree_sequence();
        assert_eq!(d.as_slice(), &[2, 2, 3, 3]);
        assert_eq!(d.sum(), 2 * g.size());
    }
}
