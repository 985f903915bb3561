//! Integer partitions and Young-diagram contents.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers; row lengths of a Young diagram.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn rank(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows, l(λ).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Longest row, λ₁ (0 for the empty partition).
    pub fn largest(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Transposed diagram.
    pub fn conjugate(&self) -> Partition {
        let parts = (1..=self.largest()).map(|col| self.parts.iter().take_while(|&&p| p >= col).count()).collect();
        Partition { parts }
    }

    /// Column index c(i) of every box, reading the diagram row by row.
    pub fn contents(&self) -> Vec<usize> {
        self.parts.iter().flat_map(|&p| 0..p).collect()
    }

    /// Offset of the first basis vector of each row (Jordan block).
    pub fn block_offsets(&self) -> Vec<usize> {
        self.parts
            .iter()
            .scan(0, |acc, &p| {
                let start = *acc;
                *acc += p;
                Some(start)
            })
            .collect()
    }

    /// Rows rendered as `#` boxes, one line per row.
    pub fn diagram(&self) -> String {
        self.parts.iter().map(|&p| "#".repeat(p)).collect::<Vec<_>>().join("\n")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"2,1,1"`; the empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::InvalidPartition(format!("bad part `{t}` in `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Partition::new(Vec::<usize>::deserialize(deserializer)?).map_err(serde::de::Error::custom)
    }
}

/// Iterator over the partitions of `n` in reverse-lexicographic order,
/// starting from `(n)` and ending at `(1, …, 1)`.
pub struct Partitions {
    next: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        self.next = successor(&current);
        Some(Partition { parts: current })
    }
}

fn successor(parts: &[usize]) -> Option<Vec<usize>> {
    let pos = parts.iter().rposition(|&p| p > 1)?;
    let mut out = parts[..pos].to_vec();
    let k = parts[pos] - 1;
    // Everything after `pos` is ones; redistribute them plus the removed box.
    let mut rest = parts.len() - pos;
    out.push(k);
    while rest > 0 {
        let part = rest.min(k);
        out.push(part);
        rest -= part;
    }
    Some(out)
}

/// All partitions of `n`. For `n = 0` this yields the single empty partition.
pub fn enumerate_partitions(n: usize) -> Partitions {
    Partitions { next: Some(if n == 0 { Vec::new() } else { vec![n] }) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_partitions(1).collect::<Vec<_>>(), vec![p("1")]);
        let four: Vec<String> = enumerate_partitions(4).map(|x| x.to_string()).collect();
        assert_eq!(four, ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]);
        let zero: Vec<_> = enumerate_partitions(0).collect();
        assert_eq!(zero, vec![Partition::empty()]);
    }

    #[test]
    fn contents_examples() {
        assert_eq!(p("2").contents(), [0, 1]);
        assert_eq!(p("2,1,1").contents(), [0, 1, 0, 0]);
        assert_eq!(p("2,2").contents(), [0, 1, 0, 1]);
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p("2,2").conjugate(), p("2,2"));
        assert_eq!(p("2,1,1").conjugate(), p("3,1"));
        assert_eq!(p("4").conjugate(), p("1,1,1,1"));
    }

    #[test]
    fn parse_errors() {
        assert!("1,2".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
        assert_eq!(serde_json::from_str::<Partition>("[3,1]").unwrap(), p("3,1"));
    }

    #[test]
    fn offsets_and_diagram() {
        assert_eq!(p("3,2,2").block_offsets(), [0, 3, 5]);
        assert_eq!(p("2,1").diagram(), "##\n#");
    }
}
