//! The functional side: positive orthonormal families, the `γ_n` objective
//! and level-set rounding back to vertex sets.

use rand::Rng;

use super::classify::random_disjoint_family;
use super::constant::RatioTable;
use super::families::{Mode, SubsetFamily};
use crate::calculus::{gradient, norm1_pi, support, GradientKind};
use crate::error::{Error, Result};
use crate::graph_model::{MarkovChain, VertexSet};
use crate::scalar::Scalar;

/// `n` nonnegative functions with `‖f_i‖₁,π = 1` and disjoint supports.
#[derive(Clone, Debug, PartialEq)]
pub struct PositiveOrthonormalFamily<S> {
    functions: Vec<Vec<S>>,
}

impl<S: Scalar> PositiveOrthonormalFamily<S> {
    pub fn new(chain: &MarkovChain<S>, functions: Vec<Vec<S>>) -> Result<Self> {
        let n = chain.vertex_count();
        let mut seen = VertexSet::default();
        for (i, f) in functions.iter().enumerate() {
            if f.len() != n {
                return Err(Error::Dimension { expected: n, got: f.len() });
            }
            if f.iter().any(|x| x.is_negative()) {
                return Err(Error::InvalidFamily(format!("f{} takes a negative value", i + 1)));
            }
            let supp = support(f);
            if supp.is_empty() {
                return Err(Error::InvalidFamily(format!("f{} is zero", i + 1)));
            }
            if !supp.is_disjoint(&seen) {
                return Err(Error::InvalidFamily(format!("support of f{} overlaps an earlier one", i + 1)));
            }
            if !norm1_pi(chain, f).eq_tol(&S::one(), 1e-12) {
                return Err(Error::InvalidFamily(format!("f{} is not normalised", i + 1)));
            }
            seen = seen.union(&supp);
        }
        if functions.is_empty() {
            return Err(Error::InvalidFamily("no functions".into()));
        }
        Ok(PositiveOrthonormalFamily { functions })
    }

    /// `χ_{Q_i} / π(Q_i)` for each class.
    pub fn characteristic(chain: &MarkovChain<S>, family: &SubsetFamily) -> Result<Self> {
        let n = chain.vertex_count();
        let functions = family
            .classes
            .iter()
            .map(|q| {
                let w = S::one() / chain.measure(q);
                (0..n).map(|v| if q.contains(v) { w.clone() } else { S::zero() }).collect()
            })
            .collect();
        Self::new(chain, functions)
    }

    pub fn functions(&self) -> &[Vec<S>] {
        &self.functions
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    /// Whether the supports cover every vertex.
    pub fn supports_partition(&self, vertex_count: usize) -> bool {
        self.functions.iter().map(|f| support(f).len()).sum::<usize>() == vertex_count
    }
}

/// `(1/n) Σ ‖∇→f_i‖₁,φ`.
pub fn gamma_objective<S: Scalar>(chain: &MarkovChain<S>, family: &PositiveOrthonormalFamily<S>) -> S {
    let total = family
        .functions
        .iter()
        .fold(S::zero(), |acc, f| acc + gradient(chain, f, GradientKind::Directed).norm1(chain));
    total / S::from_usize(family.len())
}

/// The ascending level grid `0 = r_0 < r_1 < …` of a set of functions.
fn level_grid<'a, S: Scalar>(values: impl IntoIterator<Item = &'a S>) -> Vec<S> {
    let mut grid: Vec<S> = vec![S::zero()];
    for x in values {
        if x.is_positive() && !grid.iter().any(|g| g == x) {
            grid.push(x.clone());
        }
    }
    grid.sort_by(|a, b| a.partial_cmp(b).expect("comparable"));
    grid
}

fn superlevel<S: Scalar>(f: &[S], r: &S) -> VertexSet {
    VertexSet::new((0..f.len()).filter(|&v| f[v] > *r))
}

/// Per function, the superlevel set `{f_i > r_j}` on the merged level grid
/// with the least normalised outflow. Ties keep the lower level. The result
/// is a disjoint family even when the supports partition the vertex set.
pub fn level_set_rounding<S: Scalar>(chain: &MarkovChain<S>, family: &PositiveOrthonormalFamily<S>) -> SubsetFamily {
    rounding(chain.vertex_count(), family, |q| chain.normalized_outflow(q).expect("nonempty"))
}

/// As [`level_set_rounding`], reading ratios from a precomputed table.
pub fn level_set_rounding_in<S: Scalar>(table: &RatioTable<S>, family: &PositiveOrthonormalFamily<S>) -> SubsetFamily {
    rounding(table.vertex_count, family, |q| table.ratio(q).clone())
}

fn rounding<S: Scalar>(
    vertex_count: usize,
    family: &PositiveOrthonormalFamily<S>,
    ratio_of: impl Fn(&VertexSet) -> S,
) -> SubsetFamily {
    let grid = level_grid(family.functions.iter().flatten());
    let classes = family
        .functions
        .iter()
        .map(|f| {
            let mut best: Option<(S, VertexSet)> = None;
            for r in &grid {
                let q = superlevel(f, r);
                if q.is_empty() {
                    break;
                }
                let ratio = ratio_of(&q);
                if best.as_ref().is_none_or(|(b, _)| ratio < *b) {
                    best = Some((ratio, q));
                }
            }
            best.expect("nonzero function").1
        })
        .collect();
    SubsetFamily::new(classes, Mode::Disjoint, vertex_count).expect("superlevel sets of disjoint supports")
}

/// Co-area decomposition of a nonnegative `f`: with `s_j = r_{j+1} − r_j` and
/// `F_j = {f > r_j}`, returns `(Σ s_j ∂→(F_j), Σ s_j π(F_j))`, which equal
/// `‖∇→f‖₁,φ` and `‖f‖₁,π`.
pub fn coarea_sums<S: Scalar>(chain: &MarkovChain<S>, f: &[S]) -> (S, S) {
    let grid = level_grid(f);
    let mut flow = S::zero();
    let mut mass = S::zero();
    for w in grid.windows(2) {
        let s = w[1].clone() - w[0].clone();
        let q = superlevel(f, &w[0]);
        flow = flow + s.clone() * chain.directed_boundary(&q).expect("nonempty");
        mass = mass + s * chain.measure(&q);
    }
    (flow, mass)
}

/// A random disjoint family of supports carrying independent positive
/// rational values, each function `L¹(π)`-normalised.
pub fn random_family<S: Scalar, R: Rng>(chain: &MarkovChain<S>, n: usize, rng: &mut R) -> PositiveOrthonormalFamily<S> {
    let v = chain.vertex_count();
    assert!((1..=v).contains(&n), "family size out of range");
    let labels = random_disjoint_family(v, n, rng).labels(v);
    let functions = (1..=n)
        .map(|i| {
            let raw: Vec<S> = labels
                .iter()
                .map(|&l| if l == i { S::from_ratio(rng.gen_range(1..=12), rng.gen_range(1..=12)) } else { S::zero() })
                .collect();
            let norm = norm1_pi(chain, &raw);
            raw.into_iter().map(|x| x / norm.clone()).collect()
        })
        .collect();
    PositiveOrthonormalFamily::new(chain, functions).expect("construction satisfies the invariants")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_model::Graph;
    use crate::isoperimetry::constant::{family_objective, isoperimetric_constant, DEFAULT_CAP};
    use crate::scalar::{q, Rational};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c4() -> MarkovChain<Rational> {
        MarkovChain::natural_walk(&Graph::cycle(4)).unwrap()
    }

    #[test]
    fn characteristic_family_reaches_iota() {
        let c = c4();
        for n in 1..=4 {
            let iso = isoperimetric_constant(&c, n, Mode::Disjoint, DEFAULT_CAP).unwrap();
            let fam = PositiveOrthonormalFamily::characteristic(&c, &iso.witness).unwrap();
            assert_eq!(gamma_objective(&c, &fam), iso.value);
            assert_eq!(level_set_rounding(&c, &fam).classes, iso.witness.classes);
        }
    }

    #[test]
    fn two_level_rounding_does_not_increase() {
        let c = c4();
        let f = vec![q(2, 1), q(1, 1), q(0, 1), q(0, 1)];
        let norm = norm1_pi(&c, &f);
        let f: Vec<Rational> = f.into_iter().map(|x| x / norm.clone()).collect();
        let g = vec![q(0, 1), q(0, 1), q(0, 1), q(4, 1)];
        let fam = PositiveOrthonormalFamily::new(&c, vec![f, g]).unwrap();
        let rounded = level_set_rounding(&c, &fam);
        assert!(family_objective(&c, &rounded).unwrap() <= gamma_objective(&c, &fam));
    }

    #[test]
    fn coarea_identities() {
        let c = MarkovChain::<Rational>::natural_walk(&Graph::three_clique(2)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let fam = random_family(&c, 2, &mut rng);
            for f in fam.functions() {
                let (flow, mass) = coarea_sums(&c, f);
                assert_eq!(flow, gradient(&c, f, GradientKind::Directed).norm1(&c));
                assert_eq!(mass, q(1, 1));
            }
        }
    }

    #[test]
    fn invalid_families_are_rejected() {
        let c = c4();
        let one = vec![q(1, 1); 4];
        assert!(PositiveOrthonormalFamily::new(&c, vec![one.clone()]).is_ok());
        assert!(PositiveOrthonormalFamily::new(&c, vec![one.clone(), one]).is_err());
        assert!(PositiveOrthonormalFamily::new(&c, vec![vec![q(0, 1); 4]]).is_err());
        assert!(PositiveOrthonormalFamily::new(&c, vec![vec![q(2, 1); 4]]).is_err());
        assert!(PositiveOrthonormalFamily::new(&c, vec![vec![q(-1, 1), q(3, 1), q(1, 1), q(1, 1)]]).is_err());
    }
}
