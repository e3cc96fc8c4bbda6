use super::graph::{Graph, VertexSet};
use super::matrix::Matrix;
use super::stationary::{is_stationary, stationary_distribution, uniform_is_stationary};
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar, FLOAT_ROW_SUM};

/// How a kernel was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelKind {
    /// `1 / outdeg(u)` on every arc.
    Natural,
    /// Maximum-degree kernel with the residual mass on the diagonal.
    Lazy,
    /// Supplied entry by entry.
    Explicit,
    /// `½(K + K*)` of another chain.
    Reversibilized,
}

/// A Markov kernel on a base graph together with its nowherezero stationary
/// distribution and the derived flows.
///
/// Immutable after construction. `phi(u, v) = K(u, v) π(u)`,
/// `K̄ = ½(K + K*)` where `K*` is the π-adjoint, and `φ̄` is the
/// symmetrised flow.
#[derive(Clone, Debug)]
pub struct MarkovChain<S> {
    graph: Graph,
    kind: KernelKind,
    kernel: Matrix<S>,
    pi: Vec<S>,
    phi: Matrix<S>,
    kernel_bar: Matrix<S>,
    phi_bar: Matrix<S>,
}

impl<S: Scalar> MarkovChain<S> {
    /// Validates an explicit kernel and solves for its stationary distribution.
    ///
    /// Diagonal mass is always allowed; off-diagonal mass requires an arc.
    pub fn from_kernel(graph: Graph, kernel: Matrix<S>) -> Result<Self> {
        Self::build(graph, kernel, KernelKind::Explicit)
    }

    fn build(graph: Graph, kernel: Matrix<S>, kind: KernelKind) -> Result<Self> {
        validate_kernel(&graph, &kernel)?;
        let pi = stationary_distribution(&kernel)?;
        Ok(Self::assemble(graph, kernel, pi, kind))
    }

    fn assemble(graph: Graph, kernel: Matrix<S>, pi: Vec<S>, kind: KernelKind) -> Self {
        let n = graph.vertex_count();
        let phi = Matrix::from_fn(n, |u, v| kernel[(u, v)].clone() * pi[u].clone());
        let half = S::from_ratio(1, 2);
        let kernel_bar = Matrix::from_fn(n, |u, v| {
            half.clone() * (kernel[(u, v)].clone() + kernel[(v, u)].clone() * pi[v].clone() / pi[u].clone())
        });
        let phi_bar = Matrix::from_fn(n, |u, v| half.clone() * (phi[(u, v)].clone() + phi[(v, u)].clone()));
        MarkovChain { graph, kind, kernel, pi, phi, kernel_bar, phi_bar }
    }

    /// Simple random walk: `K(u, v) = 1 / outdeg(u)` on arcs.
    pub fn natural_walk(graph: &Graph) -> Result<Self> {
        let n = graph.vertex_count();
        if let Some(u) = (0..n).find(|&u| graph.out_degree(u) == 0) {
            return Err(Error::Sink(u));
        }
        let kernel = Matrix::from_fn(n, |u, v| {
            if graph.has_arc(u, v) {
                S::from_ratio(1, graph.out_degree(u) as i64)
            } else {
                S::zero()
            }
        });
        Self::build(graph.clone(), kernel, KernelKind::Natural)
    }

    /// Maximum-degree kernel `K_c`: `1/d_max` on non-loop arcs, the remaining
    /// mass on the diagonal (one extra `1/d_max` when `u` carries a loop).
    ///
    /// The stationary distribution is solved, not assumed uniform; see
    /// [`MarkovChain::uniform_is_stationary`].
    pub fn lazy_max_degree(graph: &Graph) -> Result<Self> {
        let n = graph.vertex_count();
        let d_max = graph.max_out_degree();
        if d_max == 0 {
            return Err(Error::Sink(0));
        }
        let d = d_max as i64;
        let kernel = Matrix::from_fn(n, |u, v| {
            if u != v {
                if graph.has_arc(u, v) {
                    S::from_ratio(1, d)
                } else {
                    S::zero()
                }
            } else {
                let du = graph.out_degree(u) as i64;
                let extra = i64::from(graph.has_loop(u));
                S::from_ratio(d - du + extra, d)
            }
        });
        Self::build(graph.clone(), kernel, KernelKind::Lazy)
    }

    /// The reversibilisation: kernel `K̄` on the symmetric directed view,
    /// same stationary distribution.
    pub fn reversibilize(&self) -> Self {
        let graph = self.graph.symmetric_directed();
        let chain = Self::assemble(graph, self.kernel_bar.clone(), self.pi.clone(), KernelKind::Reversibilized);
        debug_assert!(is_stationary(&chain.kernel, &chain.pi));
        chain
    }

    /// Same chain on the float backend.
    pub fn to_f64(&self) -> MarkovChain<f64> {
        MarkovChain {
            graph: self.graph.clone(),
            kind: self.kind,
            kernel: self.kernel.map(|x| x.to_f64()),
            pi: self.pi.iter().map(|x| x.to_f64()).collect(),
            phi: self.phi.map(|x| x.to_f64()),
            kernel_bar: self.kernel_bar.map(|x| x.to_f64()),
            phi_bar: self.phi_bar.map(|x| x.to_f64()),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn kernel(&self) -> &Matrix<S> {
        &self.kernel
    }

    pub fn pi(&self) -> &[S] {
        &self.pi
    }

    pub fn phi(&self, u: usize, v: usize) -> &S {
        &self.phi[(u, v)]
    }

    pub fn phi_matrix(&self) -> &Matrix<S> {
        &self.phi
    }

    pub fn kernel_bar(&self) -> &Matrix<S> {
        &self.kernel_bar
    }

    pub fn phi_bar(&self, u: usize, v: usize) -> &S {
        &self.phi_bar[(u, v)]
    }

    /// Whether the uniform vector happens to be stationary for this kernel.
    pub fn uniform_is_stationary(&self) -> bool {
        uniform_is_stationary(&self.kernel)
    }

    /// `π(Q)`.
    pub fn measure(&self, q: &VertexSet) -> S {
        q.iter().fold(S::zero(), |acc, v| acc + self.pi[v].clone())
    }

    /// Outflow `∂→(Q) = Σ_{u ∈ Q, v ∉ Q} φ(u, v)`.
    pub fn directed_boundary(&self, q: &VertexSet) -> Result<S> {
        if q.is_empty() {
            return Err(Error::EmptySubset);
        }
        let inside = q.indicator(self.vertex_count());
        Ok(self.crossing(&inside, true))
    }

    /// Inflow `∂←(Q) = Σ_{u ∉ Q, v ∈ Q} φ(u, v)`.
    pub fn inflow(&self, q: &VertexSet) -> Result<S> {
        if q.is_empty() {
            return Err(Error::EmptySubset);
        }
        let inside = q.indicator(self.vertex_count());
        Ok(self.crossing(&inside, false))
    }

    fn crossing(&self, inside: &[bool], outward: bool) -> S {
        let n = self.vertex_count();
        let mut total = S::zero();
        for u in 0..n {
            for v in 0..n {
                if inside[u] == outward && inside[v] != outward {
                    total = total + self.phi[(u, v)].clone();
                }
            }
        }
        total
    }

    /// Normalised outflow `∂→(Q) / π(Q)`.
    pub fn normalized_outflow(&self, q: &VertexSet) -> Result<S> {
        Ok(self.directed_boundary(q)? / self.measure(q))
    }

    /// Maximum and minimum of `π`.
    pub fn pi_extremes(&self) -> (S, S) {
        let max = self.pi.iter().cloned().reduce(S::max_of).unwrap_or_else(S::zero);
        let min = self.pi.iter().cloned().reduce(S::min_of).unwrap_or_else(S::zero);
        (max, min)
    }

    /// Maximum and minimum of `φ̄(u, v)` over `u ≠ v` with `φ̄(u, v) ≠ 0`.
    pub fn phi_bar_extremes(&self) -> Option<(S, S)> {
        let n = self.vertex_count();
        let values: Vec<S> = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|&(u, v)| u != v)
            .map(|(u, v)| self.phi_bar[(u, v)].clone())
            .filter(|x| !x.is_zero())
            .collect();
        let max = values.iter().cloned().reduce(S::max_of)?;
        let min = values.into_iter().reduce(S::min_of)?;
        Some((max, min))
    }
}

impl MarkovChain<Rational> {
    /// Exact copy on the rational backend (identity here; mirrors [`MarkovChain::to_f64`]).
    pub fn to_exact(&self) -> Self {
        self.clone()
    }
}

/// Nonnegativity, unit row sums, and support on arcs (diagonal excepted).
pub fn validate_kernel<S: Scalar>(graph: &Graph, kernel: &Matrix<S>) -> Result<()> {
    let n = graph.vertex_count();
    if kernel.order() != n {
        return Err(Error::Dimension { expected: n, got: kernel.order() });
    }
    for u in 0..n {
        let mut row_sum = S::zero();
        for v in 0..n {
            let x = &kernel[(u, v)];
            if x.is_negative() {
                return Err(Error::NegativeEntry { from: u, to: v });
            }
            if u != v && !x.is_zero() && !graph.has_arc(u, v) {
                return Err(Error::SupportOutsideArcs { from: u, to: v });
            }
            row_sum = row_sum + x.clone();
        }
        let ok = if S::EXACT {
            row_sum.is_one()
        } else {
            (row_sum.to_f64() - 1.0).abs() <= FLOAT_ROW_SUM
        };
        if !ok {
            return Err(Error::RowSum { row: u, sum: row_sum.render() });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    type Chain = MarkovChain<Rational>;

    #[test]
    fn directed_three_cycle_is_uniform() {
        let c = Chain::natural_walk(&Graph::directed_cycle(3)).unwrap();
        assert!(c.pi().iter().all(|p| *p == q(1, 3)));
        for (u, v) in c.graph().arcs() {
            assert_eq!(*c.phi(u, v), q(1, 3));
        }
        let s = VertexSet::new([0]);
        assert_eq!(c.directed_boundary(&s).unwrap(), q(1, 3));
        assert_eq!(c.inflow(&s).unwrap(), q(1, 3));
    }

    #[test]
    fn path_three_natural_walk() {
        // solving πK = π by hand: π1 = π0 + π2, π0 = π1/2 = π2, Σπ = 1
        let c = Chain::natural_walk(&Graph::path(3)).unwrap();
        assert_eq!(c.pi(), &[q(1, 4), q(1, 2), q(1, 4)]);
    }

    #[test]
    fn complete_graph_natural_walk() {
        for n in 3..7 {
            let c = Chain::natural_walk(&Graph::complete(n)).unwrap();
            assert_eq!(c.kernel()[(0, 1)], q(1, n as i64 - 1));
            assert!(c.pi().iter().all(|p| *p == q(1, n as i64)));
        }
    }

    #[test]
    fn three_clique_centre_mass() {
        for m in 2..6i64 {
            let c = Chain::natural_walk(&Graph::three_clique(m as usize)).unwrap();
            assert_eq!(c.pi()[0], q(1, m * m - m + 2));
        }
    }

    #[test]
    fn lazy_kernel_on_path() {
        let c = Chain::lazy_max_degree(&Graph::path(3)).unwrap();
        let k = c.kernel();
        assert_eq!(k[(0, 0)], q(1, 2));
        assert_eq!(k[(0, 1)], q(1, 2));
        assert_eq!(k[(1, 0)], q(1, 2));
        assert_eq!(k[(1, 2)], q(1, 2));
        assert_eq!(k[(1, 1)], q(0, 1));
        assert!(c.uniform_is_stationary());
        assert!(c.pi().iter().all(|p| *p == q(1, 3)));
    }

    #[test]
    fn lazy_kernel_on_unbalanced_digraph() {
        // out-degrees (2, 1, 1); solving by hand gives π = (1/4, 1/4, 1/2)
        let g = Graph::with_order(3, [(0, 1), (0, 2), (1, 2), (2, 0)]).unwrap();
        let c = Chain::lazy_max_degree(&g).unwrap();
        assert!(!c.uniform_is_stationary());
        assert_eq!(c.pi(), &[q(1, 4), q(1, 4), q(1, 2)]);
    }

    #[test]
    fn lazy_kernel_loop_branch() {
        let g = Graph::with_order(2, [(0, 0), (0, 1), (1, 0)]).unwrap();
        let c = Chain::lazy_max_degree(&g).unwrap();
        // d_max = 2, vertex 0 has a loop: (2 - 2 + 1) / 2
        assert_eq!(c.kernel()[(0, 0)], q(1, 2));
        assert_eq!(c.kernel()[(1, 1)], q(1, 2));
    }

    #[test]
    fn complete_lazy_equals_natural() {
        let g = Graph::complete(5);
        let a = Chain::lazy_max_degree(&g).unwrap();
        let b = Chain::natural_walk(&g).unwrap();
        assert_eq!(a.kernel(), b.kernel());
    }

    #[test]
    fn sink_is_rejected() {
        let g = Graph::with_order(2, [(0, 1)]).unwrap();
        assert_eq!(Chain::natural_walk(&g).unwrap_err(), Error::Sink(1));
    }

    #[test]
    fn explicit_kernel_errors() {
        let g = Graph::cycle(3);
        let bad_sum = Matrix::from_fn(3, |u, v| if u != v { q(1, 3) } else { q(0, 1) });
        assert!(matches!(Chain::from_kernel(g.clone(), bad_sum), Err(Error::RowSum { .. })));
        let g2 = Graph::directed_cycle(3);
        let off = Matrix::from_fn(3, |u, v| if u != v { q(1, 2) } else { q(0, 1) });
        assert!(matches!(Chain::from_kernel(g2, off), Err(Error::SupportOutsideArcs { .. })));
    }

    #[test]
    fn cycle_boundary() {
        let c = Chain::natural_walk(&Graph::cycle(4)).unwrap();
        let q01 = VertexSet::new([0, 1]);
        assert_eq!(c.directed_boundary(&q01).unwrap(), q(1, 4));
        assert_eq!(c.measure(&q01), q(1, 2));
        assert_eq!(c.directed_boundary(&VertexSet::full(4)).unwrap(), q(0, 1));
        assert_eq!(c.directed_boundary(&VertexSet::default()), Err(Error::EmptySubset));
    }

    #[test]
    fn reversibilize_directed_cycle() {
        let c = Chain::natural_walk(&Graph::directed_cycle(3)).unwrap();
        let r = c.reversibilize();
        let k = r.kernel();
        for u in 0..3 {
            for v in 0..3 {
                let expected = if u == v { q(0, 1) } else { q(1, 2) };
                assert_eq!(k[(u, v)], expected);
            }
        }
        assert_eq!(r.reversibilize().kernel(), r.kernel());
        let undirected = Chain::natural_walk(&Graph::cycle(5)).unwrap();
        assert_eq!(undirected.reversibilize().kernel(), undirected.kernel());
    }
}
