//! Sign-graphs of functions, excessive and deficient functions, bipolar
//! parts, and the Cheeger-type bounds they feed.

use serde::Serialize;

use crate::calculus::{gradient, laplacian_apply, norm2_squared_pi, restrict, GradientKind, LaplacianKind};
use crate::check::{Check, Finding};
use crate::error::{Error, Result};
use crate::graph_model::{Graph, MarkovChain, VertexSet};
use crate::scalar::Scalar;
use crate::spectral::SpectrumReport;

/// Tolerance for float vector inequalities.
pub const FLOAT_INEQUALITY: f64 = 1e-10;

/// How components of a vertex subset are formed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Connectivity {
    /// Connected components in the undirected view.
    #[default]
    Undirected,
    /// Strongly connected components of the induced directed subgraph.
    Strong,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
    Zero,
}

pub fn sign_of<S: Scalar>(x: &S) -> Sign {
    if x.is_negligible() {
        Sign::Zero
    } else if x.is_positive() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignDecomposition {
    pub positives: VertexSet,
    pub negatives: VertexSet,
    pub zeros: VertexSet,
    pub positive_components: Vec<VertexSet>,
    pub negative_components: Vec<VertexSet>,
    pub kappa_plus: usize,
    pub kappa_minus: usize,
    pub kappa: usize,
}

impl SignDecomposition {
    /// All strong sign-graphs, positive ones first.
    pub fn sign_graphs(&self) -> impl Iterator<Item = &VertexSet> {
        self.positive_components.iter().chain(&self.negative_components)
    }
}

pub fn sign_decomposition<S: Scalar>(g: &Graph, f: &[S], connectivity: Connectivity) -> SignDecomposition {
    let by_sign =
        |s: Sign| VertexSet::new((0..f.len()).filter(|&v| sign_of(&f[v]) == s));
    let positives = by_sign(Sign::Positive);
    let negatives = by_sign(Sign::Negative);
    let zeros = by_sign(Sign::Zero);
    let positive_components = components(g, &positives, connectivity);
    let negative_components = components(g, &negatives, connectivity);
    let kappa_plus = positive_components.len();
    let kappa_minus = negative_components.len();
    SignDecomposition {
        positives,
        negatives,
        zeros,
        positive_components,
        negative_components,
        kappa_plus,
        kappa_minus,
        kappa: kappa_plus + kappa_minus,
    }
}

/// Components of the subgraph induced on `w`, ordered by minimum vertex.
pub fn components(g: &Graph, w: &VertexSet, connectivity: Connectivity) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let inside = w.indicator(n);
    let reach = |start: usize, forward: bool| -> Vec<bool> {
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            let next: Vec<usize> = match (connectivity, forward) {
                (Connectivity::Undirected, _) => g.undirected_neighbors(x),
                (Connectivity::Strong, true) => g.out_neighbors(x).to_vec(),
                (Connectivity::Strong, false) => g.in_neighbors(x).to_vec(),
            };
            for y in next {
                if inside[y] && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    };
    let mut assigned = vec![false; n];
    let mut out = Vec::new();
    for start in w.iter() {
        if assigned[start] {
            continue;
        }
        let fwd = reach(start, true);
        let members: Vec<usize> = match connectivity {
            Connectivity::Undirected => (0..n).filter(|&v| fwd[v]).collect(),
            Connectivity::Strong => {
                let bwd = reach(start, false);
                (0..n).filter(|&v| fwd[v] && bwd[v]).collect()
            }
        };
        for &v in &members {
            assigned[v] = true;
        }
        out.push(VertexSet::new(members));
    }
    out
}

/// The operator an excessive/deficient test refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Operator {
    K,
    KBar,
    Delta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `Tf ≤ ζf`.
    Excessive,
    /// `Tf ≥ ζf`.
    Deficient,
}

pub fn apply_operator<S: Scalar>(chain: &MarkovChain<S>, f: &[S], op: Operator) -> Vec<S> {
    match op {
        Operator::K => chain.kernel().apply(f),
        Operator::KBar => chain.kernel_bar().apply(f),
        Operator::Delta => laplacian_apply(chain, f, LaplacianKind::Symmetric),
    }
}

pub fn excessive_check<S: Scalar>(chain: &MarkovChain<S>, f: &[S], zeta: &S, op: Operator, dir: Direction) -> bool {
    let tf = apply_operator(chain, f, op);
    tf.iter().zip(f).all(|(t, x)| {
        let zf = zeta.clone() * x.clone();
        match dir {
            Direction::Excessive => t.le_tol(&zf, FLOAT_INEQUALITY),
            Direction::Deficient => zf.le_tol(t, FLOAT_INEQUALITY),
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Nonnegative,
    Nonpositive,
    Neither,
}

/// Sign of `f` on `q` together with `f(u)f(v) ≤ 0` across every cut edge.
pub fn bipolar_part_check<S: Scalar>(g: &Graph, f: &[S], q: &VertexSet) -> Polarity {
    let cut_ok = g.undirected_edges().into_iter().all(|(u, v)| {
        if q.contains(u) == q.contains(v) {
            return true;
        }
        (f[u].clone() * f[v].clone()).le_tol(&S::zero(), FLOAT_INEQUALITY)
    });
    if !cut_ok {
        return Polarity::Neither;
    }
    if q.iter().all(|v| sign_of(&f[v]) != Sign::Negative) {
        Polarity::Nonnegative
    } else if q.iter().all(|v| sign_of(&f[v]) != Sign::Positive) {
        Polarity::Nonpositive
    } else {
        Polarity::Neither
    }
}

/// `‖∇̄g‖²₂,φ̄ / ‖g‖²₂,π`.
pub fn symmetric_rayleigh<S: Scalar>(chain: &MarkovChain<S>, g: &[S]) -> S {
    gradient(chain, g, GradientKind::Symmetric).norm2_squared(chain) / norm2_squared_pi(chain, g)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RayleighBound<S> {
    pub zeta: S,
    pub rayleigh: S,
    pub holds: bool,
}

/// `ζ ≥ ‖∇̄g‖² / ‖g‖²` for `g = f|_Q`, after validating that `f` is
/// `ζ`-excessive (nonnegative `Q`) or `ζ`-deficient (nonpositive `Q`) for `Δ`.
pub fn duval_reiner_bound<S: Scalar>(chain: &MarkovChain<S>, f: &[S], zeta: &S, q: &VertexSet) -> Result<RayleighBound<S>> {
    if q.is_empty() {
        return Err(Error::EmptySubset);
    }
    let g = restrict(f, q);
    if g.iter().all(|x| x.is_negligible()) {
        return Err(Error::precondition("f vanishes on Q"));
    }
    let polarity = bipolar_part_check(chain.graph(), f, q);
    let qualifies = match polarity {
        Polarity::Nonnegative => excessive_check(chain, f, zeta, Operator::Delta, Direction::Excessive),
        Polarity::Nonpositive => excessive_check(chain, f, zeta, Operator::Delta, Direction::Deficient),
        Polarity::Neither => return Err(Error::precondition("Q is not a bipolar part of f")),
    };
    if !qualifies {
        return Err(Error::precondition(format!(
            "f is not {}-{} for the Laplacian",
            zeta.render(),
            if polarity == Polarity::Nonnegative { "excessive" } else { "deficient" }
        )));
    }
    let rayleigh = symmetric_rayleigh(chain, &g);
    let holds = rayleigh.le_tol(zeta, 1e-9);
    Ok(RayleighBound { zeta: zeta.clone(), rayleigh, holds })
}

/// `λ̄_n ≤ ι_n`.
pub fn cheeger_lower(report: &SpectrumReport, n: usize, iota_n: f64) -> Check {
    let mean = report.mean_lambda(n);
    Check::new(format!("mean spectrum below iota n={n}"), mean <= iota_n + 1e-9, format!("{mean:.12} <= {iota_n:.12}"))
}

/// `λ̄_n ≤ ι_n` for every `n`, the classical sandwich `½λ₂ ≤ ι₂ ≤ √(2λ₂)`, and
/// `λ_k ≥ ½ι_κ²` with `κ` the number of strong sign-graphs of `f_k`.
/// `iota[i]` holds `ι_{i+1}`.
pub fn cheeger_suite(g: &Graph, report: &SpectrumReport, iota: &[f64]) -> Vec<Check> {
    let v = iota.len();
    let mut checks: Vec<Check> = (1..=v).map(|n| cheeger_lower(report, n, iota[n - 1])).collect();
    if v >= 2 {
        let (l2, i2) = (report.lambda(2), iota[1]);
        checks.push(Check::new(
            "classical sandwich",
            0.5 * l2 <= i2 + 1e-9 && i2 <= (2.0 * l2).sqrt() + 1e-9,
            format!("{:.12} <= {i2:.12} <= {:.12}", 0.5 * l2, (2.0 * l2).sqrt()),
        ));
    }
    for k in 1..=v {
        let kappa = sign_decomposition(g, report.eigenfunction(k), Connectivity::Undirected).kappa;
        let bound = 0.5 * iota[kappa.max(1) - 1].powi(2);
        let lambda = report.lambda(k);
        checks.push(Check::new(
            format!("sign-graph cheeger k={k}"),
            kappa >= 1 && lambda + 1e-9 >= bound,
            format!("lambda = {lambda:.12} >= {bound:.12} (kappa = {kappa})"),
        ));
    }
    checks
}

/// Functions, levels and parts satisfying the compatibility conditions.
#[derive(Clone, Debug, PartialEq)]
pub struct CompatibleSet<S> {
    pub zetas: Vec<S>,
    pub functions: Vec<Vec<S>>,
    pub parts: Vec<VertexSet>,
    pub polarity: Vec<Polarity>,
}

impl<S: Scalar> CompatibleSet<S> {
    pub fn len(&self) -> usize {
        self.zetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zetas.is_empty()
    }

    /// Reports the first failing condition.
    pub fn validate(&self, chain: &MarkovChain<S>) -> Result<()> {
        let n = self.zetas.len();
        if self.functions.len() != n || self.parts.len() != n || self.polarity.len() != n {
            return Err(Error::precondition("compatible set lists differ in length"));
        }
        for i in 0..n {
            for j in i + 1..n {
                if !self.parts[i].is_disjoint(&self.parts[j]) {
                    return Err(Error::precondition(format!("parts {} and {} overlap", i + 1, j + 1)));
                }
            }
        }
        for i in 0..n {
            let f = &self.functions[i];
            let q = &self.parts[i];
            if q.iter().all(|v| f[v].is_negligible()) {
                return Err(Error::precondition(format!("f{} vanishes on its part", i + 1)));
            }
            let dir = match self.polarity[i] {
                Polarity::Nonnegative => Direction::Excessive,
                Polarity::Nonpositive => Direction::Deficient,
                Polarity::Neither => return Err(Error::precondition(format!("entry {} has no polarity", i + 1))),
            };
            if !excessive_check(chain, f, &self.zetas[i], Operator::Delta, dir) {
                return Err(Error::precondition(format!("f{} is not {:?} at its level", i + 1, dir)));
            }
            let actual = bipolar_part_check(chain.graph(), f, q);
            if actual != self.polarity[i] && !(actual == Polarity::Nonnegative && q.iter().all(|v| f[v].is_negligible())) {
                return Err(Error::precondition(format!("part {} is not a {:?} bipolar part", i + 1, self.polarity[i])));
            }
        }
        Ok(())
    }

    pub fn mean_zeta(&self) -> S {
        self.zetas.iter().cloned().fold(S::zero(), |a, b| a + b) / S::from_usize(self.len())
    }
}

/// `2 ζ̄_n ≥ ι_n²` for a validated compatible set.
pub fn cheeger_upper<S: Scalar>(chain: &MarkovChain<S>, cs: &CompatibleSet<S>, iota_n: &S) -> Result<Check> {
    cs.validate(chain)?;
    let lhs = S::from_usize(2) * cs.mean_zeta();
    let rhs = iota_n.clone() * iota_n.clone();
    Ok(Check::new(
        format!("twice mean level above iota squared n={}", cs.len()),
        rhs.le_tol(&lhs, 1e-9),
        format!("{} >= {}", lhs.render(), rhs.render()),
    ))
}

/// Compatible set built from `f_2, …, f_n` of a spectrum report.
pub fn compatible_set_search(chain: &MarkovChain<f64>, report: &SpectrumReport, n: usize) -> Option<CompatibleSet<f64>> {
    if n < 2 || n > chain.vertex_count() {
        return None;
    }
    let zetas: Vec<f64> = (2..=n).map(|k| report.lambda(k)).collect();
    let functions: Vec<Vec<f64>> = (2..=n).map(|k| report.eigenfunction(k).to_vec()).collect();
    compatible_set_for(chain, zetas, functions)
}

/// Picks one strong sign-graph per function so that the chosen parts are
/// pairwise disjoint. Depth-first in sign-graph order.
pub fn compatible_set_for<S: Scalar>(chain: &MarkovChain<S>, zetas: Vec<S>, functions: Vec<Vec<S>>) -> Option<CompatibleSet<S>> {
    let options: Vec<Vec<(VertexSet, Polarity)>> = functions
        .iter()
        .map(|f| {
            let d = sign_decomposition(chain.graph(), f, Connectivity::Undirected);
            d.positive_components
                .into_iter()
                .map(|q| (q, Polarity::Nonnegative))
                .chain(d.negative_components.into_iter().map(|q| (q, Polarity::Nonpositive)))
                .collect()
        })
        .collect();
    let mut chosen: Vec<usize> = Vec::new();
    fn go(options: &[Vec<(VertexSet, Polarity)>], chosen: &mut Vec<usize>) -> bool {
        let i = chosen.len();
        if i == options.len() {
            return true;
        }
        for (j, (q, _)) in options[i].iter().enumerate() {
            if chosen.iter().enumerate().all(|(a, &b)| options[a][b].0.is_disjoint(q)) {
                chosen.push(j);
                if go(options, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    if !go(&options, &mut chosen) {
        return None;
    }
    let (parts, polarity) = chosen.iter().enumerate().map(|(i, &j)| options[i][j].clone()).unzip();
    Some(CompatibleSet { zetas, functions, parts, polarity })
}

/// Evaluates `((n−1)/2n) ι_n² ≤ λ̄_n ≤ ((n−1)/n) ι_n` without asserting it.
pub fn gen_cheeger_probe(chain: &MarkovChain<f64>, report: &SpectrumReport, n: usize, iota_n: f64) -> Finding {
    let name = format!("generalized cheeger n={n}");
    if compatible_set_search(chain, report, n).is_none() {
        return Finding { name, holds: None, detail: "hypothesis unmet: no disjoint sign-graph selection".into() };
    }
    let mean = report.mean_lambda(n);
    let nf = n as f64;
    let lower = (nf - 1.0) / (2.0 * nf) * iota_n * iota_n;
    let upper = (nf - 1.0) / nf * iota_n;
    let lower_ok = lower <= mean + 1e-9;
    let upper_ok = mean <= upper + 1e-9;
    Finding {
        name,
        holds: Some(lower_ok && upper_ok),
        detail: format!(
            "iota={iota_n:.12} mean_lambda={mean:.12} lower={lower:.12} ({}) upper={upper:.12} ({})",
            if lower_ok { "holds" } else { "fails" },
            if upper_ok { "holds" } else { "fails" }
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Rational};
    use crate::spectral::spectrum;

    fn qs(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x, 1)).collect()
    }

    fn c4() -> MarkovChain<Rational> {
        MarkovChain::natural_walk(&Graph::cycle(4)).unwrap()
    }

    #[test]
    fn c4_sign_decompositions() {
        let g = Graph::cycle(4);
        let d = sign_decomposition(&g, &qs(&[1, 0, -1, 0]), Connectivity::Undirected);
        assert_eq!((d.kappa_plus, d.kappa_minus, d.kappa), (1, 1, 2));
        let d = sign_decomposition(&g, &qs(&[1, -1, 1, -1]), Connectivity::Undirected);
        assert_eq!((d.kappa_plus, d.kappa_minus, d.kappa), (2, 2, 4));
        let d = sign_decomposition(&g, &qs(&[1, 2, 0, 3]), Connectivity::Undirected);
        assert_eq!(d.kappa_minus, 0);
        assert_eq!(d.positive_components, vec![VertexSet::new([0, 1, 3])]);
    }

    #[test]
    fn strong_connectivity_splits_one_way_paths() {
        let g = Graph::with_order(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let f = qs(&[1, 1, -1]);
        assert_eq!(sign_decomposition(&g, &f, Connectivity::Undirected).kappa_plus, 1);
        assert_eq!(sign_decomposition(&g, &f, Connectivity::Strong).kappa_plus, 2);
    }

    #[test]
    fn excessive_and_deficient() {
        let c = c4();
        let f = qs(&[1, 0, -1, 0]);
        assert!(excessive_check(&c, &f, &q(1, 1), Operator::Delta, Direction::Excessive));
        assert!(excessive_check(&c, &f, &q(1, 1), Operator::Delta, Direction::Deficient));
        let one = qs(&[1, 1, 1, 1]);
        assert!(excessive_check(&c, &one, &q(1, 1), Operator::K, Direction::Excessive));
        assert!(excessive_check(&c, &one, &q(1, 1), Operator::K, Direction::Deficient));
        assert!(excessive_check(&c, &f, &q(0, 1), Operator::KBar, Direction::Deficient));
        assert!(!excessive_check(&c, &f, &q(1, 2), Operator::KBar, Direction::Deficient));
    }

    #[test]
    fn bipolar_parts() {
        let g = Graph::cycle(4);
        assert_eq!(bipolar_part_check(&g, &qs(&[1, 1, -1, 0]), &VertexSet::new([0, 1])), Polarity::Nonnegative);
        assert_eq!(bipolar_part_check(&g, &qs(&[1, 2, 0, 3]), &VertexSet::full(4)), Polarity::Nonnegative);
        assert_eq!(bipolar_part_check(&g, &qs(&[1, -2, 0, 3]), &VertexSet::full(4)), Polarity::Neither);
        assert_eq!(bipolar_part_check(&g, &qs(&[1, 1, 1, 0]), &VertexSet::new([0, 1])), Polarity::Neither);
        let f = qs(&[1, 0, -1, 0]);
        for part in sign_decomposition(&g, &f, Connectivity::Undirected).sign_graphs() {
            assert_ne!(bipolar_part_check(&g, &f, part), Polarity::Neither);
        }
    }

    #[test]
    fn rayleigh_bounds() {
        let c = c4();
        let f = qs(&[1, 0, -1, 0]);
        let b = duval_reiner_bound(&c, &f, &q(1, 1), &VertexSet::new([0])).unwrap();
        assert_eq!(b.rayleigh, q(1, 1));
        assert!(b.holds);
        let b = duval_reiner_bound(&c, &qs(&[2, 2, 2, 2]), &q(0, 1), &VertexSet::full(4)).unwrap();
        assert_eq!(b.rayleigh, q(0, 1));
        assert!(duval_reiner_bound(&c, &f, &q(1, 2), &VertexSet::new([0])).is_err());
        assert!(duval_reiner_bound(&c, &f, &q(1, 1), &VertexSet::new([1])).is_err());
    }

    #[test]
    fn worked_compatible_set() {
        let c = c4();
        let f = qs(&[1, 0, -1, 0]);
        let cs = CompatibleSet {
            zetas: vec![q(1, 1), q(1, 1)],
            functions: vec![f.clone(), f],
            parts: vec![VertexSet::new([0]), VertexSet::new([2])],
            polarity: vec![Polarity::Nonnegative, Polarity::Nonpositive],
        };
        let check = cheeger_upper(&c, &cs, &q(1, 2)).unwrap();
        assert!(check.passed);
        let mut bad = cs.clone();
        bad.parts[1] = VertexSet::new([0]);
        assert!(cheeger_upper(&c, &bad, &q(1, 2)).is_err());
    }

    #[test]
    fn search_and_probe_on_c4() {
        let c = MarkovChain::<f64>::natural_walk(&Graph::cycle(4)).unwrap();
        let s = spectrum(&c).unwrap();
        assert!(compatible_set_search(&c, &s, 2).is_some());
        let basis = vec![vec![1.0, 0.0, -1.0, 0.0], vec![0.0, 1.0, 0.0, -1.0]];
        let cs = compatible_set_for(&c, vec![1.0, 1.0], basis).unwrap();
        cs.validate(&c).unwrap();
        assert_eq!(cs.parts, vec![VertexSet::new([0]), VertexSet::new([1])]);
        let finding = gen_cheeger_probe(&c, &s, 2, 0.5);
        assert_eq!(finding.holds, Some(false));
        assert!(cheeger_lower(&s, 2, 0.5).passed);
    }
}
