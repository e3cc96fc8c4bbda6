//! Exact `ι_n` and `ι̃_n` by branch-and-bound over canonical families.
//!
//! Every subset's normalised outflow `∂→(Q)/π(Q)` is tabulated once, both
//! exactly and as `f64`. The search fixes classes in order of their minimum
//! vertex and tries candidates in ascending float ratio, so the first
//! complete families are already good. Float values guide pruning with a
//! margin far above their rounding error; every decision between
//! near-equal candidates falls back to the exact table.

use serde::Serialize;

use super::families::{Mode, SubsetFamily};
use crate::error::{Error, Result};
use crate::graph_model::{MarkovChain, VertexSet};
use crate::scalar::Scalar;

/// Default `|V|` limit for exhaustive enumeration.
pub const DEFAULT_CAP: usize = 14;

/// Largest vertex count accepted even with a raised cap.
pub const HARD_CAP: usize = 22;

const MARGIN: f64 = 1e-9;

/// `∂→(Q) / π(Q)` for every nonempty `Q ⊆ V`, indexed by bitmask.
#[derive(Clone, Debug)]
pub struct RatioTable<S> {
    pub vertex_count: usize,
    pub boundary: Vec<S>,
    pub measure: Vec<S>,
    pub exact: Vec<S>,
    pub float: Vec<f64>,
}

impl<S: Scalar> RatioTable<S> {
    pub fn new(chain: &MarkovChain<S>, cap: usize) -> Result<Self> {
        let n = chain.vertex_count();
        if n > cap.min(HARD_CAP) {
            return Err(Error::CapExceeded { vertices: n, cap: cap.min(HARD_CAP) });
        }
        let size = 1usize << n;
        let mut boundary = vec![S::zero(); size];
        let mut measure = vec![S::zero(); size];
        for mask in 1..size {
            let w = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            let mut b = boundary[rest].clone();
            for v in 0..n {
                if mask >> v & 1 == 0 {
                    b = b + chain.phi(w, v).clone();
                } else if rest >> v & 1 == 1 {
                    b = b - chain.phi(v, w).clone();
                }
            }
            boundary[mask] = b;
            measure[mask] = measure[rest].clone() + chain.pi()[w].clone();
        }
        let exact: Vec<S> = (0..size)
            .map(|m| if m == 0 { S::zero() } else { boundary[m].clone() / measure[m].clone() })
            .collect();
        let float = exact.iter().map(Scalar::to_f64).collect();
        Ok(RatioTable { vertex_count: n, boundary, measure, exact, float })
    }

    pub fn ratio(&self, q: &VertexSet) -> &S {
        &self.exact[q.mask() as usize]
    }
}

/// Minimum of one mode at one `n`.
#[derive(Clone, Debug)]
pub struct IsoperimetricValue<S> {
    pub n: usize,
    pub mode: Mode,
    pub value: S,
    pub witness: SubsetFamily,
    pub families_examined: u64,
}

/// `ι_n` and `ι̃_n` together.
#[derive(Clone, Debug)]
pub struct IsoperimetricReport<S> {
    pub n: usize,
    pub iota: S,
    pub iota_tilde: S,
    pub witness: SubsetFamily,
    pub witness_tilde: SubsetFamily,
    pub families_examined: u64,
}

impl<S: Scalar> IsoperimetricReport<S> {
    /// `ι_n = ι̃_n`.
    pub fn geometric(&self) -> bool {
        self.iota == self.iota_tilde
    }
}

/// Mean normalised outflow `(1/n) Σ ∂→(Q_i)/π(Q_i)` of a family.
pub fn family_objective<S: Scalar>(chain: &MarkovChain<S>, family: &SubsetFamily) -> Result<S> {
    let mut total = S::zero();
    for q in &family.classes {
        total = total + chain.normalized_outflow(q)?;
    }
    Ok(total / S::from_usize(family.len()))
}

pub fn isoperimetric_constant<S: Scalar>(
    chain: &MarkovChain<S>,
    n: usize,
    mode: Mode,
    cap: usize,
) -> Result<IsoperimetricValue<S>> {
    let table = RatioTable::new(chain, cap)?;
    minimize(&table, n, mode)
}

pub fn isoperimetric_report<S: Scalar>(chain: &MarkovChain<S>, n: usize, cap: usize) -> Result<IsoperimetricReport<S>> {
    let table = RatioTable::new(chain, cap)?;
    report_from_table(&table, n)
}

pub fn report_from_table<S: Scalar>(table: &RatioTable<S>, n: usize) -> Result<IsoperimetricReport<S>> {
    let d = minimize(table, n, Mode::Disjoint)?;
    let p = minimize(table, n, Mode::Partition)?;
    Ok(IsoperimetricReport {
        n,
        iota: d.value,
        iota_tilde: p.value,
        witness: d.witness,
        witness_tilde: p.witness,
        families_examined: d.families_examined + p.families_examined,
    })
}

/// Branch-and-bound over a precomputed table.
pub fn minimize<S: Scalar>(table: &RatioTable<S>, n: usize, mode: Mode) -> Result<IsoperimetricValue<S>> {
    let v = table.vertex_count;
    if n == 0 || n > v {
        return Err(Error::OutOfRange { n, max: v });
    }
    let full = (1u32 << v) - 1;
    // candidates with a given minimum vertex, ascending float ratio then mask
    let by_min: Vec<Vec<u32>> = (0..v)
        .map(|m| {
            let mut c: Vec<u32> = (1..=full).filter(|&s| s.trailing_zeros() as usize == m).collect();
            c.sort_by(|&a, &b| table.float[a as usize].total_cmp(&table.float[b as usize]).then(a.cmp(&b)));
            c
        })
        .collect();
    let lower = (1..full).map(|s| table.float[s as usize]).fold(f64::INFINITY, f64::min);
    let lower = if lower.is_finite() { lower } else { 0.0 };

    let mut search = Search { table, by_min: &by_min, n, mode, full, lower, best: None, examined: 0, stack: Vec::new() };
    search.descend(0, 0, 0.0);
    let best = search.best.expect("every admissible n has a family");
    let classes = best.classes.iter().map(|&m| VertexSet::from_mask(m as u64)).collect();
    Ok(IsoperimetricValue {
        n,
        mode,
        value: best.sum / S::from_usize(n),
        witness: SubsetFamily { classes, mode },
        families_examined: search.examined,
    })
}

struct Best<S> {
    sum: S,
    sum_f: f64,
    classes: Vec<u32>,
    labels: Vec<usize>,
}

struct Search<'a, S> {
    table: &'a RatioTable<S>,
    by_min: &'a [Vec<u32>],
    n: usize,
    mode: Mode,
    full: u32,
    lower: f64,
    best: Option<Best<S>>,
    examined: u64,
    stack: Vec<u32>,
}

impl<S: Scalar> Search<'_, S> {
    fn bound(&self) -> f64 {
        self.best.as_ref().map_or(f64::INFINITY, |b| b.sum_f + MARGIN)
    }

    fn descend(&mut self, used: u32, next_min: usize, partial: f64) {
        let depth = self.stack.len();
        if depth == self.n {
            self.leaf();
            return;
        }
        let remaining = self.n - depth;
        let v = self.table.vertex_count;
        let free = self.full & !used;
        let (mins, must_cover) = match self.mode {
            Mode::Partition => {
                let m = free.trailing_zeros() as usize;
                (m..m + 1, true)
            }
            Mode::Disjoint => (next_min..v, false),
        };
        for m in mins {
            if free >> m & 1 == 0 {
                continue;
            }
            let above = free & !((1u32 << (m + 1)) - 1);
            if (above.count_ones() as usize) + 1 < remaining {
                break;
            }
            if must_cover && remaining == 1 {
                // the last class of a partition takes everything left
                let r = self.table.float[free as usize];
                if partial + r <= self.bound() {
                    self.stack.push(free);
                    self.descend(self.full, v, partial + r);
                    self.stack.pop();
                }
                return;
            }
            for &cand in &self.by_min[m] {
                if cand & !free != 0 {
                    continue;
                }
                let r = self.table.float[cand as usize];
                if partial + r + (remaining - 1) as f64 * self.lower > self.bound() {
                    break;
                }
                let after = free & !cand;
                let spare = (after & !((1u32 << (m + 1)) - 1)).count_ones() as usize;
                if spare < remaining - 1 {
                    continue;
                }
                self.stack.push(cand);
                self.descend(used | cand, m + 1, partial + r);
                self.stack.pop();
            }
        }
    }

    fn leaf(&mut self) {
        self.examined += 1;
        let sum_f: f64 = self.stack.iter().map(|&m| self.table.float[m as usize]).sum();
        if let Some(b) = &self.best {
            if sum_f > b.sum_f + MARGIN {
                return;
            }
        }
        let sum = self.stack.iter().fold(S::zero(), |a, &m| a + self.table.exact[m as usize].clone());
        let labels = self.labels();
        let better = match &self.best {
            None => true,
            Some(b) => match sum.partial_cmp(&b.sum) {
                Some(std::cmp::Ordering::Less) => true,
                Some(std::cmp::Ordering::Equal) => labels < b.labels,
                _ => false,
            },
        };
        if better {
            self.best = Some(Best { sum, sum_f, classes: self.stack.clone(), labels });
        }
    }

    fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.table.vertex_count];
        for (i, &m) in self.stack.iter().enumerate() {
            for (v, l) in labels.iter_mut().enumerate() {
                if m >> v & 1 == 1 {
                    *l = i + 1;
                }
            }
        }
        labels
    }
}

/// Which classical Cheeger constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheegerVersion {
    /// `min ∂(Q) / (2π(Q)(1 − π(Q)))` over `∅ ≠ Q ⊊ V`.
    Mean,
    /// `min ∂(Q) / π(Q)` over `π(Q) ≤ ½`.
    Min,
}

pub fn classical_cheeger<S: Scalar>(chain: &MarkovChain<S>, version: CheegerVersion, cap: usize) -> Result<S> {
    let table = RatioTable::new(chain, cap)?;
    let n = chain.vertex_count();
    if n < 2 {
        return Err(Error::OutOfRange { n, max: 1 });
    }
    let full = (1usize << n) - 1;
    let half = S::from_ratio(1, 2);
    let two = S::from_ratio(2, 1);
    let values = (1..full).filter_map(|m| {
        let p = table.measure[m].clone();
        match version {
            CheegerVersion::Mean => {
                Some(table.boundary[m].clone() / (two.clone() * p.clone() * (S::one() - p)))
            }
            CheegerVersion::Min => (p <= half).then(|| table.exact[m].clone()),
        }
    });
    Ok(values.reduce(S::min_of).expect("at least one proper subset"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_model::Graph;
    use crate::isoperimetry::families::enumerate_families;
    use crate::scalar::{q, Rational};

    fn natural(g: &Graph) -> MarkovChain<Rational> {
        MarkovChain::natural_walk(g).unwrap()
    }

    fn oracle(c: &MarkovChain<Rational>, n: usize, mode: Mode) -> (Rational, SubsetFamily) {
        let mut best: Option<(Rational, SubsetFamily)> = None;
        for f in enumerate_families(c.vertex_count(), n, mode).unwrap() {
            let v = family_objective(c, &f).unwrap();
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, f));
            }
        }
        best.unwrap()
    }

    #[test]
    fn first_constant_is_zero() {
        let c = natural(&Graph::petersen());
        let r = isoperimetric_constant(&c, 1, Mode::Disjoint, DEFAULT_CAP).unwrap();
        assert_eq!(r.value, q(0, 1));
        assert_eq!(r.witness.classes, vec![VertexSet::full(10)]);
    }

    #[test]
    fn complete_graph_k4() {
        let c = natural(&Graph::complete(4));
        let got: Vec<_> = (2..=4)
            .map(|n| isoperimetric_constant(&c, n, Mode::Disjoint, DEFAULT_CAP).unwrap().value)
            .collect();
        assert_eq!(got, vec![q(2, 3), q(8, 9), q(1, 1)]);
    }

    #[test]
    fn cycle_c4_table() {
        let c = natural(&Graph::cycle(4));
        let r2 = isoperimetric_report(&c, 2, DEFAULT_CAP).unwrap();
        assert_eq!((r2.iota.clone(), r2.iota_tilde.clone()), (q(1, 2), q(1, 2)));
        assert_eq!(r2.witness.to_string(), "({0,1}, {2,3})");
        let r3 = isoperimetric_report(&c, 3, DEFAULT_CAP).unwrap();
        assert_eq!((r3.iota, r3.iota_tilde), (q(5, 6), q(5, 6)));
    }

    #[test]
    fn matches_enumeration_oracle() {
        let graphs = [
            Graph::with_order(5, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (1, 3)]).unwrap(),
            Graph::path(5),
            Graph::three_clique(2),
            Graph::complete_bipartite(2, 3),
        ];
        for g in &graphs {
            for chain in [natural(g), MarkovChain::lazy_max_degree(g).unwrap()] {
                for n in 1..=g.vertex_count() {
                    for mode in [Mode::Disjoint, Mode::Partition] {
                        let fast = isoperimetric_constant(&chain, n, mode, DEFAULT_CAP).unwrap();
                        let (value, witness) = oracle(&chain, n, mode);
                        assert_eq!(fast.value, value, "{g:?} n={n} {mode}");
                        assert_eq!(fast.witness, witness, "{g:?} n={n} {mode}");
                    }
                }
            }
        }
    }

    #[test]
    fn float_backend_agrees() {
        let g = Graph::three_clique(2);
        let exact = isoperimetric_constant(&natural(&g), 3, Mode::Disjoint, DEFAULT_CAP).unwrap();
        let float = isoperimetric_constant(&MarkovChain::<f64>::natural_walk(&g).unwrap(), 3, Mode::Disjoint, DEFAULT_CAP)
            .unwrap();
        assert!((exact.value.to_f64() - float.value).abs() < 1e-12);
    }

    #[test]
    fn cap_is_enforced() {
        let c = natural(&Graph::cycle(6));
        assert_eq!(
            isoperimetric_constant(&c, 2, Mode::Disjoint, 5).unwrap_err(),
            Error::CapExceeded { vertices: 6, cap: 5 }
        );
        assert!(isoperimetric_constant(&c, 7, Mode::Disjoint, 14).is_err());
    }

    #[test]
    fn classical_cheeger_values() {
        let k3 = natural(&Graph::complete(3));
        assert_eq!(classical_cheeger(&k3, CheegerVersion::Mean, 14).unwrap(), q(3, 4));
        let c4 = natural(&Graph::cycle(4));
        assert_eq!(classical_cheeger(&c4, CheegerVersion::Mean, 14).unwrap(), q(1, 2));
        let d3 = natural(&Graph::directed_cycle(3));
        assert_eq!(classical_cheeger(&d3, CheegerVersion::Mean, 14).unwrap(), q(3, 4));
        assert_eq!(classical_cheeger(&c4, CheegerVersion::Min, 14).unwrap(), q(1, 2));
    }
}
