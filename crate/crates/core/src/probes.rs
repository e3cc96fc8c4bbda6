//! Experiments whose outcomes are recorded as findings rather than asserted.

use crate::check::Finding;
use crate::error::Result;
use crate::graph_model::{Graph, MarkovChain, VertexSet};
use crate::isoperimetry::{
    complete_graph_iota, complete_graph_iota_without_mean, report_from_table, supergeometric_classify, RatioTable,
    SupergeometricReport,
};
use crate::nodal::gen_cheeger_probe;
use crate::scalar::{Rational, Scalar};
use crate::spectral::spectrum;

#[derive(Clone, Debug)]
pub struct ThreeCliqueRow {
    pub m: usize,
    pub pi_y: Rational,
    pub pi_y_matches: bool,
    pub iota3: Rational,
    pub iota3_tilde: Rational,
    pub strict_gap: bool,
    /// `ι₃ · m²`.
    pub scaled: Rational,
    pub witness: Vec<VertexSet>,
    /// The minimiser is the three blocks.
    pub blocks_witness: bool,
}

pub fn three_clique_probe(ms: impl IntoIterator<Item = usize>, cap: usize) -> Result<Vec<ThreeCliqueRow>> {
    ms.into_iter()
        .map(|m| {
            let chain = MarkovChain::<Rational>::natural_walk(&Graph::three_clique(m))?;
            let pi_y = chain.pi()[0].clone();
            let expected = Rational::from_ratio(1, (m * m - m + 2) as i64);
            let table = RatioTable::new(&chain, cap)?;
            let r = report_from_table(&table, 3)?;
            let blocks: Vec<VertexSet> = (0..3).map(|b| VertexSet::new(1 + b * m..1 + (b + 1) * m)).collect();
            Ok(ThreeCliqueRow {
                m,
                pi_y_matches: pi_y == expected,
                pi_y,
                strict_gap: r.iota < r.iota_tilde,
                scaled: r.iota.clone() * Rational::from_usize(m * m),
                blocks_witness: r.witness.classes == blocks,
                witness: r.witness.classes.clone(),
                iota3: r.iota,
                iota3_tilde: r.iota_tilde,
            })
        })
        .collect()
}

/// Supergeometric verdict for a circulant under the lazy max-degree kernel.
pub fn circulant_probe(order: usize, connections: &[usize], cap: usize) -> Result<(Finding, SupergeometricReport<Rational>)> {
    let g = Graph::circulant(order, connections)?;
    let chain = MarkovChain::<Rational>::lazy_max_degree(&g)?;
    let report = supergeometric_classify(&chain, order.max(2), cap)?;
    let finding = Finding {
        name: format!("circulant({order}, {connections:?}) supergeometric"),
        holds: report.supergeometric,
        detail: report
            .rows
            .iter()
            .map(|r| format!("n={}: {} vs {}", r.n, r.iota.render(), r.iota_tilde.render()))
            .collect::<Vec<_>>()
            .join("; "),
    };
    Ok((finding, report))
}

/// Generalized Cheeger findings for `n = 2..=|V|` on one chain.
pub fn gen_cheeger_findings(chain: &MarkovChain<Rational>, cap: usize) -> Result<Vec<Finding>> {
    let cf = chain.to_f64();
    let s = spectrum(&cf)?;
    let table = RatioTable::new(chain, cap)?;
    (2..=chain.vertex_count())
        .map(|n| {
            let iota = report_from_table(&table, n)?.iota;
            Ok(gen_cheeger_probe(&cf, &s, n, iota.to_f64()))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct CompleteGraphRow {
    pub n: usize,
    pub t: usize,
    pub iota: Rational,
    pub iota_tilde: Rational,
    pub formula: Rational,
    pub printed: Rational,
}

impl CompleteGraphRow {
    pub fn matches_formula(&self) -> bool {
        self.iota == self.formula && self.iota_tilde == self.formula
    }

    pub fn matches_printed(&self) -> bool {
        self.iota == self.printed
    }
}

/// Enumerated `ι_t(K_n)` beside `n(t−1)/(t(n−1))` and the printed `n(t−1)/(n−1)`.
pub fn complete_graph_table(ns: impl IntoIterator<Item = usize>, cap: usize) -> Result<(Vec<CompleteGraphRow>, Finding)> {
    let mut rows = Vec::new();
    for n in ns {
        let chain = MarkovChain::<Rational>::natural_walk(&Graph::complete(n))?;
        let table = RatioTable::new(&chain, cap)?;
        for t in 1..=n {
            let r = report_from_table(&table, t)?;
            rows.push(CompleteGraphRow {
                n,
                t,
                iota: r.iota,
                iota_tilde: r.iota_tilde,
                formula: complete_graph_iota(n, t),
                printed: complete_graph_iota_without_mean(n, t),
            });
        }
    }
    let mismatches: Vec<String> =
        rows.iter().filter(|r| !r.matches_printed()).map(|r| format!("K_{} t={}", r.n, r.t)).collect();
    let finding = Finding {
        name: "printed complete-graph formula n(t-1)/(n-1)".into(),
        holds: Some(mismatches.is_empty()),
        detail: if mismatches.is_empty() {
            "agrees with enumeration".into()
        } else {
            format!("discrepancy: disagrees with enumeration at {} of {} rows ({}, ...); n(t-1)/(t(n-1)) agrees", mismatches.len(), rows.len(), mismatches[0])
        },
    };
    Ok((rows, finding))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isoperimetry::DEFAULT_CAP;
    use crate::scalar::q;

    #[test]
    fn three_clique_at_three() {
        let rows = three_clique_probe([2, 3], DEFAULT_CAP).unwrap();
        assert!(rows.iter().all(|r| r.pi_y_matches));
        assert_eq!(rows[1].pi_y, q(1, 8));
    }

    #[test]
    fn small_circulants() {
        let (f, _) = circulant_probe(4, &[1], DEFAULT_CAP).unwrap();
        assert_eq!(f.holds, Some(true));
        let (f, _) = circulant_probe(5, &[1, 2], DEFAULT_CAP).unwrap();
        assert_eq!(f.holds, Some(true));
    }

    #[test]
    fn complete_graph_discrepancy_flagged() {
        let (rows, finding) = complete_graph_table(3..=4, DEFAULT_CAP).unwrap();
        assert!(rows.iter().all(CompleteGraphRow::matches_formula));
        assert_eq!(finding.holds, Some(false));
        assert!(finding.detail.starts_with("discrepancy"));
    }

    #[test]
    fn c4_gen_cheeger_upper_fails() {
        let c = MarkovChain::<Rational>::natural_walk(&Graph::cycle(4)).unwrap();
        let f = gen_cheeger_findings(&c, DEFAULT_CAP).unwrap();
        assert_eq!(f[0].holds, Some(false));
    }
}
