//! Gradients, divergence, Laplacians and the weighted norms they live in.
//!
//! Vertex functions are plain slices weighted by `π`. Arc functions carry the
//! measure they are integrated against: `φ` on the arcs of the symmetric
//! directed view, or `φ̄` on the undirected edges `u <= v`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph_model::{Graph, MarkovChain, Matrix, VertexSet};
use crate::scalar::{Rational, Scalar};

/// Which gradient to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradientKind {
    /// `(f(u) − f(v))⁺` on arcs, measured by `φ`.
    Directed,
    /// `f(u) − f(v)` on arcs, measured by `φ`.
    Classical,
    /// `|f(u) − f(v)|` on undirected edges, measured by `φ̄`.
    Symmetric,
}

/// The measure space an [`ArcFunction`] is defined on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcDomain {
    Arcs,
    Edges,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ArcFunction<S> {
    pub domain: ArcDomain,
    pub pairs: Vec<(usize, usize)>,
    pub values: Vec<S>,
}

impl<S: Scalar> ArcFunction<S> {
    /// An arc function on the arcs of the symmetric directed view.
    pub fn on_arcs(chain: &MarkovChain<S>, mut value: impl FnMut(usize, usize) -> S) -> Self {
        let pairs: Vec<_> = chain.graph().symmetric_directed().arcs().collect();
        let values = pairs.iter().map(|&(u, v)| value(u, v)).collect();
        ArcFunction { domain: ArcDomain::Arcs, pairs, values }
    }

    fn weight<'a>(&self, chain: &'a MarkovChain<S>, i: usize) -> &'a S {
        let (u, v) = self.pairs[i];
        match self.domain {
            ArcDomain::Arcs => chain.phi(u, v),
            ArcDomain::Edges => chain.phi_bar(u, v),
        }
    }

    pub fn norm1(&self, chain: &MarkovChain<S>) -> S {
        (0..self.values.len()).fold(S::zero(), |acc, i| acc + self.values[i].abs() * self.weight(chain, i).clone())
    }

    pub fn norm2_squared(&self, chain: &MarkovChain<S>) -> S {
        self.inner(chain, self)
    }

    /// Weighted inner product; both functions must share the same pairs.
    pub fn inner(&self, chain: &MarkovChain<S>, other: &Self) -> S {
        debug_assert_eq!(self.pairs, other.pairs);
        (0..self.values.len()).fold(S::zero(), |acc, i| {
            acc + self.values[i].clone() * other.values[i].clone() * self.weight(chain, i).clone()
        })
    }
}

pub fn gradient<S: Scalar>(chain: &MarkovChain<S>, f: &[S], kind: GradientKind) -> ArcFunction<S> {
    match kind {
        GradientKind::Directed => ArcFunction::on_arcs(chain, |u, v| positive(f[u].clone() - f[v].clone())),
        GradientKind::Classical => ArcFunction::on_arcs(chain, |u, v| f[u].clone() - f[v].clone()),
        GradientKind::Symmetric => {
            let pairs = chain.graph().undirected_edges();
            let values = pairs.iter().map(|&(u, v)| (f[u].clone() - f[v].clone()).abs()).collect();
            ArcFunction { domain: ArcDomain::Edges, pairs, values }
        }
    }
}

/// The adjoint `∇*` of the classical gradient:
/// `∇*F(u) = (Σ_v F(uv)φ(u,v) − Σ_v F(vu)φ(v,u)) / π(u)`.
pub fn divergence<S: Scalar>(chain: &MarkovChain<S>, field: &ArcFunction<S>) -> Result<Vec<S>> {
    if field.domain != ArcDomain::Arcs {
        return Err(Error::precondition("divergence takes a function on arcs"));
    }
    let n = chain.vertex_count();
    let mut acc = vec![S::zero(); n];
    for (&(u, v), value) in field.pairs.iter().zip(&field.values) {
        let flow = value.clone() * chain.phi(u, v).clone();
        acc[u] = acc[u].clone() + flow.clone();
        acc[v] = acc[v].clone() - flow;
    }
    Ok(acc.into_iter().zip(chain.pi()).map(|(a, p)| a / p.clone()).collect())
}

/// Which Laplacian to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaplacianKind {
    /// `I − K`.
    Directed,
    /// `I − K̄`.
    Symmetric,
}

pub fn laplacian_apply<S: Scalar>(chain: &MarkovChain<S>, f: &[S], kind: LaplacianKind) -> Vec<S> {
    let k = match kind {
        LaplacianKind::Directed => chain.kernel(),
        LaplacianKind::Symmetric => chain.kernel_bar(),
    };
    k.apply(f).into_iter().zip(f).map(|(kf, x)| x.clone() - kf).collect()
}

/// `Δ = I − K̄` as a matrix.
pub fn laplacian_matrix<S: Scalar>(chain: &MarkovChain<S>) -> Matrix<S> {
    let kb = chain.kernel_bar();
    Matrix::from_fn(chain.vertex_count(), |u, v| {
        let id = if u == v { S::one() } else { S::zero() };
        id - kb[(u, v)].clone()
    })
}

/// `∇*∇` as a matrix, assembled column by column from unit vectors.
pub fn divergence_of_gradient_matrix<S: Scalar>(chain: &MarkovChain<S>) -> Matrix<S> {
    let n = chain.vertex_count();
    let columns: Vec<Vec<S>> = (0..n)
        .map(|j| {
            let e: Vec<S> = (0..n).map(|i| if i == j { S::one() } else { S::zero() }).collect();
            divergence(chain, &gradient(chain, &e, GradientKind::Classical)).expect("arc domain")
        })
        .collect();
    Matrix::from_fn(n, |i, j| columns[j][i].clone())
}

/// `Λ_G = D_G − A_G` with `A_G(u, v)` equal to 1, ½ or 0 for two-way, one-way
/// and absent adjacency. Loops do not contribute.
pub fn combinatorial_laplacian(g: &Graph) -> Matrix<Rational> {
    let n = g.vertex_count();
    let adj = Matrix::from_fn(n, |u, v| {
        if u == v {
            return Rational::zero();
        }
        match (g.has_arc(u, v), g.has_arc(v, u)) {
            (true, true) => Rational::one(),
            (false, false) => Rational::zero(),
            _ => Rational::from_ratio(1, 2),
        }
    });
    Matrix::from_fn(n, |u, v| {
        if u == v {
            adj.row(u).iter().fold(Rational::zero(), |a, x| a + x)
        } else {
            -adj[(u, v)].clone()
        }
    })
}

pub fn positive<S: Scalar>(x: S) -> S {
    if x.is_positive() {
        x
    } else {
        S::zero()
    }
}

/// `f⁺`.
pub fn positive_part<S: Scalar>(f: &[S]) -> Vec<S> {
    f.iter().cloned().map(positive).collect()
}

/// `f⁻`, so that `f = f⁺ − f⁻`.
pub fn negative_part<S: Scalar>(f: &[S]) -> Vec<S> {
    f.iter().map(|x| positive(-x.clone())).collect()
}

pub fn support<S: Scalar>(f: &[S]) -> VertexSet {
    VertexSet::new((0..f.len()).filter(|&v| !f[v].is_zero()))
}

/// `f` restricted to `q`, zero elsewhere.
pub fn restrict<S: Scalar>(f: &[S], q: &VertexSet) -> Vec<S> {
    (0..f.len()).map(|v| if q.contains(v) { f[v].clone() } else { S::zero() }).collect()
}

pub fn inner_pi<S: Scalar>(chain: &MarkovChain<S>, f: &[S], g: &[S]) -> S {
    f.iter()
        .zip(g)
        .zip(chain.pi())
        .fold(S::zero(), |acc, ((a, b), p)| acc + a.clone() * b.clone() * p.clone())
}

pub fn norm1_pi<S: Scalar>(chain: &MarkovChain<S>, f: &[S]) -> S {
    f.iter().zip(chain.pi()).fold(S::zero(), |acc, (a, p)| acc + a.abs() * p.clone())
}

pub fn norm2_squared_pi<S: Scalar>(chain: &MarkovChain<S>, f: &[S]) -> S {
    inner_pi(chain, f, f)
}

/// Rayleigh quotient `⟨Δf, f⟩ / ‖f‖²`.
pub fn rayleigh<S: Scalar>(chain: &MarkovChain<S>, f: &[S]) -> S {
    let lf = laplacian_apply(chain, f, LaplacianKind::Symmetric);
    inner_pi(chain, &lf, f) / norm2_squared_pi(chain, f)
}

/// Both sides of the Duval–Reiner identity for `T = Δ`, with
/// `g = Σ c_i f|_{Q_i}` over a partition `Q`.
pub fn duval_reiner_sides<S: Scalar>(
    chain: &MarkovChain<S>,
    f: &[S],
    partition: &[VertexSet],
    coeffs: &[S],
    zeta: &S,
) -> Result<(S, S)> {
    if partition.len() != coeffs.len() {
        return Err(Error::Dimension { expected: partition.len(), got: coeffs.len() });
    }
    let n = chain.vertex_count();
    let covered: usize = partition.iter().map(VertexSet::len).sum();
    let union = partition.iter().fold(VertexSet::default(), |a, q| a.union(q));
    if covered != n || union.len() != n {
        return Err(Error::InvalidFamily("classes do not partition the vertex set".into()));
    }
    let pieces: Vec<Vec<S>> = partition.iter().map(|q| restrict(f, q)).collect();
    let t = |h: &[S]| laplacian_apply(chain, h, LaplacianKind::Symmetric);

    let mut g = vec![S::zero(); n];
    for (piece, c) in pieces.iter().zip(coeffs) {
        for (gv, pv) in g.iter_mut().zip(piece) {
            *gv = gv.clone() + c.clone() * pv.clone();
        }
    }
    let lhs = inner_pi(chain, &t(&g), &g) - zeta.clone() * norm2_squared_pi(chain, &g);

    let shifted: Vec<S> = t(f).into_iter().zip(f).map(|(a, b)| a - zeta.clone() * b.clone()).collect();
    let t_pieces: Vec<Vec<S>> = pieces.iter().map(|p| t(p)).collect();
    let mut rhs = S::zero();
    for (i, ci) in coeffs.iter().enumerate() {
        rhs = rhs + ci.clone() * ci.clone() * inner_pi(chain, &shifted, &pieces[i]);
    }
    let half = S::from_ratio(1, 2);
    for (i, ci) in coeffs.iter().enumerate() {
        for (j, cj) in coeffs.iter().enumerate() {
            let d = ci.clone() - cj.clone();
            if !d.is_zero() {
                rhs = rhs - half.clone() * d.clone() * d * inner_pi(chain, &t_pieces[j], &pieces[i]);
            }
        }
    }
    Ok((lhs, rhs))
}

/// Truth values of the gradient norm relations for one function, each tested
/// without square roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormRelations {
    /// `‖∇→f‖₁ = ½‖∇f‖₁ = ‖∇̄f‖₁`.
    pub l1_identities: bool,
    /// `‖∇→f‖₁ = ‖∇→f⁺‖₁ + ‖∇→f⁻‖₁`.
    pub sign_split: bool,
    /// `½‖∇f‖₂² = ‖∇̄f‖₂² = ⟨Δf, f⟩ = ⟨Δ→f, f⟩`.
    pub l2_identities: bool,
    /// `‖∇f‖₁ ≤ ‖∇f‖₂` and `‖∇̄f‖₁ ≤ (√2/2)‖∇̄f‖₂`.
    pub cauchy_schwarz: bool,
    /// `‖∇→f²‖₁ / ‖f²‖₁ ≤ √2 ‖∇̄f‖₂ / ‖f‖₂` (vacuous for `f = 0`).
    pub square_bound: bool,
}

impl NormRelations {
    pub fn all(&self) -> bool {
        self.l1_identities && self.sign_split && self.l2_identities && self.cauchy_schwarz && self.square_bound
    }
}

pub fn norm_relations<S: Scalar>(chain: &MarkovChain<S>, f: &[S]) -> NormRelations {
    let tol = 1e-12;
    let directed = gradient(chain, f, GradientKind::Directed);
    let classical = gradient(chain, f, GradientKind::Classical);
    let symmetric = gradient(chain, f, GradientKind::Symmetric);
    let half = S::from_ratio(1, 2);
    let two = S::from_ratio(2, 1);

    let d1 = directed.norm1(chain);
    let c1 = classical.norm1(chain);
    let s1 = symmetric.norm1(chain);
    let l1_identities = d1.eq_tol(&(half.clone() * c1.clone()), tol) && d1.eq_tol(&s1, tol);

    let plus = gradient(chain, &positive_part(f), GradientKind::Directed).norm1(chain);
    let minus = gradient(chain, &negative_part(f), GradientKind::Directed).norm1(chain);
    let sign_split = d1.eq_tol(&(plus + minus), tol);

    let c2 = classical.norm2_squared(chain);
    let s2 = symmetric.norm2_squared(chain);
    let sym = inner_pi(chain, &laplacian_apply(chain, f, LaplacianKind::Symmetric), f);
    let dir = inner_pi(chain, &laplacian_apply(chain, f, LaplacianKind::Directed), f);
    let l2_identities =
        (half.clone() * c2.clone()).eq_tol(&s2, tol) && s2.eq_tol(&sym, tol) && sym.eq_tol(&dir, tol);

    let cauchy_schwarz =
        (c1.clone() * c1).le_tol(&c2, tol) && (s1.clone() * s1).le_tol(&(half * s2.clone()), tol);

    let squared: Vec<S> = f.iter().map(|x| x.clone() * x.clone()).collect();
    let sq1 = gradient(chain, &squared, GradientKind::Directed).norm1(chain);
    let f2 = norm2_squared_pi(chain, f);
    let square_bound = (sq1.clone() * sq1).le_tol(&(two * s2 * f2), tol);

    NormRelations { l1_identities, sign_split, l2_identities, cauchy_schwarz, square_bound }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn c4() -> MarkovChain<Rational> {
        MarkovChain::natural_walk(&Graph::cycle(4)).unwrap()
    }

    fn qs(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn constant_has_zero_gradients() {
        let c = c4();
        let f = qs(&[3, 3, 3, 3]);
        for kind in [GradientKind::Directed, GradientKind::Classical, GradientKind::Symmetric] {
            assert!(gradient(&c, &f, kind).values.iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn c4_alternating_norms() {
        let c = c4();
        let f = qs(&[1, 0, -1, 0]);
        assert_eq!(gradient(&c, &f, GradientKind::Directed).norm1(&c), q(1, 2));
        assert_eq!(gradient(&c, &f, GradientKind::Classical).norm1(&c), q(1, 1));
        assert_eq!(gradient(&c, &f, GradientKind::Symmetric).norm1(&c), q(1, 2));
        assert!(norm_relations(&c, &f).all());
        assert_eq!(laplacian_apply(&c, &f, LaplacianKind::Symmetric), f);
    }

    #[test]
    fn characteristic_function_gives_boundary() {
        let c = MarkovChain::natural_walk(&Graph::three_clique(2)).unwrap();
        let q_set = VertexSet::new([0, 1, 2]);
        let chi: Vec<Rational> = (0..c.vertex_count()).map(|v| q(q_set.contains(v) as i64, 1)).collect();
        assert_eq!(gradient(&c, &chi, GradientKind::Directed).norm1(&c), c.directed_boundary(&q_set).unwrap());
    }

    #[test]
    fn twice_laplacian_is_div_grad() {
        let g = Graph::with_order(4, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 0)]).unwrap();
        let c = MarkovChain::<Rational>::natural_walk(&g).unwrap();
        let two_delta = laplacian_matrix(&c).map(|x| x * q(2, 1));
        assert_eq!(divergence_of_gradient_matrix(&c), two_delta);
    }

    #[test]
    fn zero_field_has_zero_divergence() {
        let c = c4();
        let zero = ArcFunction::on_arcs(&c, |_, _| q(0, 1));
        assert!(divergence(&c, &zero).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn combinatorial_laplacians() {
        let p3 = combinatorial_laplacian(&Graph::path(3));
        assert_eq!(
            p3.to_rows(),
            vec![qs(&[1, -1, 0]), qs(&[-1, 2, -1]), qs(&[0, -1, 1])]
        );
        let one_way = combinatorial_laplacian(&Graph::with_order(2, [(0, 1)]).unwrap());
        assert_eq!(one_way[(0, 1)], q(-1, 2));
        let k4 = combinatorial_laplacian(&Graph::complete(4));
        assert_eq!(k4[(0, 0)], q(3, 1));
        assert_eq!(k4[(0, 3)], q(-1, 1));
    }

    #[test]
    fn duval_reiner_trivial_cases() {
        let c = c4();
        let f = vec![q(2, 1), q(-1, 3), q(1, 2), q(0, 1)];
        let zeta = q(3, 7);
        let one = [VertexSet::full(4)];
        let (l, r) = duval_reiner_sides(&c, &f, &one, &[q(1, 1)], &zeta).unwrap();
        assert_eq!(l, r);
        let two = [VertexSet::new([0, 3]), VertexSet::new([1, 2])];
        let (l, r) = duval_reiner_sides(&c, &f, &two, &[q(5, 2), q(5, 2)], &zeta).unwrap();
        assert_eq!(l, r);
        let (l, r) = duval_reiner_sides(&c, &f, &two, &[q(1, 1), q(-2, 1)], &zeta).unwrap();
        assert_eq!(l, r);
        assert!(duval_reiner_sides(&c, &f, &two, &[q(1, 1)], &zeta).is_err());
    }
}
