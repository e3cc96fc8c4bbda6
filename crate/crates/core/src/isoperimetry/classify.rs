use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::constant::{report_from_table, IsoperimetricReport, RatioTable};
use super::families::{Mode, SubsetFamily};
use crate::check::Check;
use crate::error::{Error, Result};
use crate::graph_model::MarkovChain;
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug)]
pub struct SupergeometricReport<S> {
    pub rows: Vec<IsoperimetricReport<S>>,
    /// Largest `n` examined.
    pub max_n: usize,
    /// `ι_n = ι̃_n` for every examined `n ≥ 2`.
    pub geometric_up_to_max_n: bool,
    /// The full verdict; `None` when `max_n < |V|`.
    pub supergeometric: Option<bool>,
}

/// `ι_n` and `ι̃_n` for `n = 2..=max_n`.
pub fn supergeometric_classify<S: Scalar>(
    chain: &MarkovChain<S>,
    max_n: usize,
    cap: usize,
) -> Result<SupergeometricReport<S>> {
    let v = chain.vertex_count();
    if max_n < 2 || max_n > v {
        return Err(Error::OutOfRange { n: max_n, max: v });
    }
    let table = RatioTable::new(chain, cap)?;
    let rows = (2..=max_n).map(|n| report_from_table(&table, n)).collect::<Result<Vec<_>>>()?;
    let geometric = rows.iter().all(IsoperimetricReport::geometric);
    Ok(SupergeometricReport {
        rows,
        max_n,
        geometric_up_to_max_n: geometric,
        supergeometric: (max_n == v).then_some(geometric),
    })
}

/// `ι_t(K_n)` under the natural walk: `n(t−1) / (t(n−1))`.
pub fn complete_graph_iota(n: usize, t: usize) -> Rational {
    Rational::from_ratio((n * (t - 1)) as i64, (t * (n - 1)) as i64)
}

/// The closed form `n(t−1)/(n−1)` that omits the `1/t` of the mean.
pub fn complete_graph_iota_without_mean(n: usize, t: usize) -> Rational {
    Rational::from_ratio((n * (t - 1)) as i64, (n - 1) as i64)
}

#[derive(Clone, Debug)]
pub struct StructuralReport<S> {
    /// `ι_1, …, ι_{|V|}`.
    pub iota: Vec<S>,
    /// `ι̃_1, …, ι̃_{|V|}`.
    pub iota_tilde: Vec<S>,
    pub checks: Vec<Check>,
}

/// Random family in `D_n`: `n` distinct seed vertices, the rest labelled
/// uniformly from `0..=n`.
pub fn random_disjoint_family<R: Rng>(vertex_count: usize, n: usize, rng: &mut R) -> SubsetFamily {
    let mut order: Vec<usize> = (0..vertex_count).collect();
    order.shuffle(rng);
    let mut labels = vec![0; vertex_count];
    for (i, &v) in order.iter().enumerate() {
        labels[v] = if i < n { i + 1 } else { rng.gen_range(0..=n) };
    }
    let mut family = SubsetFamily::from_labels(&labels, n, Mode::Disjoint);
    family.classes.sort_by_key(|q| q.min());
    family
}

/// The corollary parts, the chain endpoints and the proposition bounds on
/// `samples` random families per `n`.
pub fn structural_inequalities_check<S: Scalar>(
    chain: &MarkovChain<S>,
    cap: usize,
    samples: usize,
    seed: u64,
) -> Result<StructuralReport<S>> {
    let v = chain.vertex_count();
    let table = RatioTable::new(chain, cap)?;
    let reports = (1..=v).map(|n| report_from_table(&table, n)).collect::<Result<Vec<_>>>()?;
    let iota: Vec<S> = reports.iter().map(|r| r.iota.clone()).collect();
    let tilde: Vec<S> = reports.iter().map(|r| r.iota_tilde.clone()).collect();
    let mut checks = Vec::new();
    let one = S::one();

    for n in 1..=v {
        let gap = tilde[n - 1].clone() - iota[n - 1].clone();
        let inv = one.clone() / S::from_usize(n);
        checks.push(Check::new(
            format!("gap bound n={n}"),
            !gap.is_negative() && gap.le_tol(&inv, 1e-12),
            format!("iota_tilde - iota = {}", gap.render()),
        ));
        if n < v {
            let nn = S::from_usize(n * n);
            let factor = one.clone() - one.clone() / nn;
            let rhs = factor * tilde[n].clone();
            checks.push(Check::new(
                format!("partition growth n={n}"),
                tilde[n - 1].le_tol(&rhs, 1e-12),
                format!("{} <= {}", tilde[n - 1].render(), rhs.render()),
            ));
            checks.push(Check::new(
                format!("monotone n={n}"),
                iota[n - 1].le_tol(&iota[n], 1e-12),
                format!("{} <= {}", iota[n - 1].render(), iota[n].render()),
            ));
        }
    }
    if v >= 2 {
        checks.push(Check::new(
            "two classes agree",
            iota[1].eq_tol(&tilde[1], 1e-12),
            format!("iota_2 = {}, iota_tilde_2 = {}", iota[1].render(), tilde[1].render()),
        ));
    }
    checks.push(Check::new("first is zero", iota[0].is_zero(), iota[0].render()));
    let endpoint = one.clone() - chain.kernel().trace() / S::from_usize(v);
    checks.push(Check::new(
        "endpoint",
        iota[v - 1].eq_tol(&endpoint, 1e-12),
        format!("iota_|V| = {}, 1 - tr(K)/|V| = {}", iota[v - 1].render(), endpoint.render()),
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 1..=v {
        let mut s_ok = true;
        let mut t_ok = true;
        for _ in 0..samples {
            let fam = random_disjoint_family(v, n, &mut rng);
            s_ok &= proposition_s_holds(&table, &fam);
            if n < v {
                let fam = random_disjoint_family(v, n + 1, &mut rng);
                t_ok &= proposition_t_holds(&table, &fam);
            }
        }
        checks.push(Check::new(format!("absorb complement n={n}"), s_ok, format!("{samples} random families")));
        if n < v {
            checks.push(Check::new(format!("merge pair n={n}"), t_ok, format!("{samples} random families")));
        }
    }
    Ok(StructuralReport { iota, iota_tilde: tilde, checks })
}

fn mask(q: &crate::graph_model::VertexSet) -> usize {
    q.mask() as usize
}

/// `min_j S^n_j` against its bound for a family in `D_n`.
pub fn proposition_s_holds<S: Scalar>(table: &RatioTable<S>, fam: &SubsetFamily) -> bool {
    let n = fam.len();
    let star = mask(&fam.uncovered(table.vertex_count));
    let ratios: Vec<S> = fam.classes.iter().map(|q| table.exact[mask(q)].clone()).collect();
    let total = ratios.iter().cloned().fold(S::zero(), |a, b| a + b);
    let nn = S::from_usize(n);
    let min_s = (0..n)
        .map(|j| {
            let merged = mask(&fam.classes[j]) | star;
            (table.exact[merged].clone() + total.clone() - ratios[j].clone()) / nn.clone()
        })
        .reduce(S::min_of)
        .expect("n >= 1");
    let p_star = table.measure[star].clone();
    let d_star = table.boundary[star].clone();
    let n_minus_2 = S::from_usize(n) - S::from_usize(2);
    let denom = nn.clone() * (S::one() + (nn.clone() - S::one()) * p_star.clone());
    let bound = (n_minus_2.clone() * d_star + (S::one() + n_minus_2 * p_star) * total) / denom;
    min_s.le_tol(&bound, 1e-12)
}

/// `min_{j,k} T^n_{j,k}` against its bound for a family in `D_{n+1}`.
pub fn proposition_t_holds<S: Scalar>(table: &RatioTable<S>, fam: &SubsetFamily) -> bool {
    let n = fam.len() - 1;
    let star = mask(&fam.uncovered(table.vertex_count));
    let ratios: Vec<S> = fam.classes.iter().map(|q| table.exact[mask(q)].clone()).collect();
    let total = ratios.iter().cloned().fold(S::zero(), |a, b| a + b);
    let nn = S::from_usize(n);
    let mut min_t: Option<S> = None;
    for j in 0..=n {
        for k in j + 1..=n {
            let merged = mask(&fam.classes[j]) | mask(&fam.classes[k]);
            let t = (table.exact[merged].clone() + total.clone() - ratios[j].clone() - ratios[k].clone()) / nn.clone();
            min_t = Some(match min_t {
                None => t,
                Some(m) => S::min_of(m, t),
            });
        }
    }
    let n2 = nn.clone() * nn.clone();
    let bound = table.boundary[star].clone() / (n2.clone() * (S::one() - table.measure[star].clone()))
        + (nn - S::one()) / n2 * total;
    min_t.expect("at least one pair").le_tol(&bound, 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::all_passed;
    use crate::graph_model::Graph;
    use crate::isoperimetry::constant::DEFAULT_CAP;
    use crate::scalar::{q, Rational};

    #[test]
    fn c4_chain_and_checks() {
        let c = MarkovChain::<Rational>::natural_walk(&Graph::cycle(4)).unwrap();
        let r = structural_inequalities_check(&c, DEFAULT_CAP, 200, 1).unwrap();
        assert_eq!(r.iota, vec![q(0, 1), q(1, 2), q(5, 6), q(1, 1)]);
        assert!(all_passed(&r.checks), "{:?}", r.checks);
    }

    #[test]
    fn lazy_path_endpoint() {
        let c = MarkovChain::<Rational>::lazy_max_degree(&Graph::path(3)).unwrap();
        let r = structural_inequalities_check(&c, DEFAULT_CAP, 50, 2).unwrap();
        assert_eq!(r.iota[2], q(2, 3));
        assert!(all_passed(&r.checks), "{:?}", r.checks);
    }

    #[test]
    fn complete_graphs_are_supergeometric() {
        for n in 3..=5 {
            let c = MarkovChain::<Rational>::natural_walk(&Graph::complete(n)).unwrap();
            let r = supergeometric_classify(&c, n, DEFAULT_CAP).unwrap();
            assert_eq!(r.supergeometric, Some(true));
            for row in &r.rows {
                assert_eq!(row.iota, complete_graph_iota(n, row.n));
            }
        }
        assert_eq!(complete_graph_iota_without_mean(4, 4), q(4, 1));
    }

    #[test]
    fn partial_range_has_no_verdict() {
        let c = MarkovChain::<Rational>::natural_walk(&Graph::cycle(5)).unwrap();
        let r = supergeometric_classify(&c, 3, DEFAULT_CAP).unwrap();
        assert_eq!(r.supergeometric, None);
        assert!(supergeometric_classify(&c, 1, DEFAULT_CAP).is_err());
    }
}
