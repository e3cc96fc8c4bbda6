use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph_model::VertexSet;

/// Disjoint families (`D_n`) or partitions (`P_n`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Disjoint,
    Partition,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Disjoint => "disjoint",
            Mode::Partition => "partition",
        })
    }
}

/// `n` pairwise-disjoint nonempty vertex sets, ordered by minimum vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SubsetFamily {
    pub classes: Vec<VertexSet>,
    pub mode: Mode,
}

impl SubsetFamily {
    /// Validates and canonicalises.
    pub fn new(mut classes: Vec<VertexSet>, mode: Mode, vertex_count: usize) -> Result<Self> {
        if classes.iter().any(VertexSet::is_empty) {
            return Err(Error::InvalidFamily("empty class".into()));
        }
        if classes.iter().flat_map(VertexSet::iter).any(|v| v >= vertex_count) {
            return Err(Error::InvalidFamily("vertex out of range".into()));
        }
        let total: usize = classes.iter().map(VertexSet::len).sum();
        let union = classes.iter().fold(VertexSet::default(), |a, q| a.union(q));
        if union.len() != total {
            return Err(Error::InvalidFamily("classes overlap".into()));
        }
        if mode == Mode::Partition && total != vertex_count {
            return Err(Error::InvalidFamily("classes do not cover every vertex".into()));
        }
        classes.sort_by_key(|q| q.min());
        Ok(SubsetFamily { classes, mode })
    }

    /// From a restricted-growth labelling: label 0 is unassigned, class `i`
    /// collects the vertices labelled `i`.
    pub fn from_labels(labels: &[usize], n: usize, mode: Mode) -> Self {
        let classes = (1..=n)
            .map(|i| VertexSet::new((0..labels.len()).filter(|&v| labels[v] == i)))
            .collect();
        SubsetFamily { classes, mode }
    }

    pub fn labels(&self, vertex_count: usize) -> Vec<usize> {
        let mut labels = vec![0; vertex_count];
        for (i, q) in self.classes.iter().enumerate() {
            for v in q.iter() {
                labels[v] = i + 1;
            }
        }
        labels
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// `(∪ Q_i)ᶜ`.
    pub fn uncovered(&self, vertex_count: usize) -> VertexSet {
        self.classes.iter().fold(VertexSet::default(), |a, q| a.union(q)).complement(vertex_count)
    }
}

impl fmt::Display for SubsetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, q) in self.classes.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, ")")
    }
}

/// Streams every canonical family in `D_n` or `P_n` exactly once, in
/// lexicographic order of the restricted-growth labelling.
pub fn enumerate_families(vertex_count: usize, n: usize, mode: Mode) -> Result<Families> {
    if n == 0 || n > vertex_count {
        return Err(Error::OutOfRange { n, max: vertex_count });
    }
    Ok(Families { labels: None, vertex_count, n, mode, done: false })
}

/// Iterator returned by [`enumerate_families`].
#[derive(Clone, Debug)]
pub struct Families {
    labels: Option<Vec<usize>>,
    vertex_count: usize,
    n: usize,
    mode: Mode,
    done: bool,
}

impl Families {
    fn lowest(&self) -> usize {
        match self.mode {
            Mode::Disjoint => 0,
            Mode::Partition => 1,
        }
    }

    /// Smallest feasible completion of `labels[from..]` given the prefix.
    fn fill(&self, labels: &mut [usize], from: usize) -> bool {
        let mut max = labels[..from].iter().copied().max().unwrap_or(0);
        for j in from..self.vertex_count {
            let remaining = self.vertex_count - 1 - j;
            let top = (max + 1).min(self.n);
            let Some(v) = (self.lowest()..=top).find(|&v| max.max(v) + remaining >= self.n) else {
                return false;
            };
            labels[j] = v;
            max = max.max(v);
        }
        max == self.n
    }
}

impl Iterator for Families {
    type Item = SubsetFamily;

    fn next(&mut self) -> Option<SubsetFamily> {
        if self.done {
            return None;
        }
        let labels = match self.labels.take() {
            None => {
                let mut l = vec![0; self.vertex_count];
                if !self.fill(&mut l, 0) {
                    self.done = true;
                    return None;
                }
                l
            }
            Some(mut l) => {
                let mut advanced = false;
                for i in (0..self.vertex_count).rev() {
                    let prefix_max = l[..i].iter().copied().max().unwrap_or(0);
                    let top = (prefix_max + 1).min(self.n);
                    let remaining = self.vertex_count - 1 - i;
                    let next = (l[i] + 1..=top).find(|&v| prefix_max.max(v) + remaining >= self.n);
                    if let Some(v) = next {
                        l[i] = v;
                        if self.fill(&mut l, i + 1) {
                            advanced = true;
                            break;
                        }
                    }
                }
                if !advanced {
                    self.done = true;
                    return None;
                }
                l
            }
        };
        let family = SubsetFamily::from_labels(&labels, self.n, self.mode);
        self.labels = Some(labels);
        Some(family)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn count(v: usize, n: usize, mode: Mode) -> usize {
        enumerate_families(v, n, mode).unwrap().count()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count(3, 3, Mode::Partition), 1);
        assert_eq!(count(3, 2, Mode::Partition), 3);
        assert_eq!(count(3, 2, Mode::Disjoint), 6);
        assert_eq!(count(3, 1, Mode::Disjoint), 7);
        // Stirling numbers S(5, k)
        assert_eq!((1..=5).map(|k| count(5, k, Mode::Partition)).collect::<Vec<_>>(), vec![1, 15, 25, 10, 1]);
    }

    #[test]
    fn disjoint_counts_match_brute_force() {
        // every labelling V -> {0..n} with all classes used, divided by n!
        for v in 1..=6usize {
            for n in 1..=v {
                let mut surj = 0usize;
                let total = (n + 1).pow(v as u32);
                for code in 0..total {
                    let mut seen = vec![false; n + 1];
                    let mut c = code;
                    for _ in 0..v {
                        seen[c % (n + 1)] = true;
                        c /= n + 1;
                    }
                    if seen[1..].iter().all(|s| *s) {
                        surj += 1;
                    }
                }
                let fact: usize = (1..=n).product();
                assert_eq!(count(v, n, Mode::Disjoint), surj / fact, "v={v} n={n}");
            }
        }
    }

    #[test]
    fn families_are_distinct_canonical_and_sorted() {
        let all: Vec<_> = enumerate_families(5, 3, Mode::Disjoint).unwrap().collect();
        let distinct: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(distinct.len(), all.len());
        let labels: Vec<_> = all.iter().map(|f| f.labels(5)).collect();
        assert!(labels.windows(2).all(|w| w[0] < w[1]));
        for f in &all {
            let mins: Vec<_> = f.classes.iter().map(|q| q.min().unwrap()).collect();
            assert!(mins.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn out_of_range() {
        assert!(enumerate_families(3, 0, Mode::Disjoint).is_err());
        assert!(enumerate_families(3, 4, Mode::Partition).is_err());
    }

    #[test]
    fn family_validation() {
        let a = VertexSet::new([2]);
        let b = VertexSet::new([0, 1]);
        let f = SubsetFamily::new(vec![a.clone(), b.clone()], Mode::Partition, 3).unwrap();
        assert_eq!(f.classes[0], b);
        assert_eq!(f.to_string(), "({0,1}, {2})");
        assert!(SubsetFamily::new(vec![a.clone(), a], Mode::Disjoint, 3).is_err());
        assert!(SubsetFamily::new(vec![b], Mode::Partition, 3).is_err());
    }
}
