use nalgebra::DMatrix;
use proptest::prelude::*;

use isospec::calculus::{divergence_of_gradient_matrix, duval_reiner_sides, laplacian_matrix, norm_relations};
use isospec::isoperimetry::{isoperimetric_report, DEFAULT_CAP};
use isospec::spectral::spectrum;
use isospec::{q, Graph, MarkovChain, Rational, Scalar, VertexSet};

/// A strongly connected digraph: a directed Hamiltonian cycle plus extra arcs.
fn digraph() -> impl Strategy<Value = Graph> {
    (2usize..=5).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |extra| {
            let mut arcs: Vec<(usize, usize)> = (0..n).map(|u| (u, (u + 1) % n)).collect();
            arcs.extend((0..n * n).filter(|&i| extra[i] && i / n != i % n).map(|i| (i / n, i % n)));
            arcs.sort_unstable();
            arcs.dedup();
            Graph::with_order(n, arcs).unwrap()
        })
    })
}

fn chain_and_function() -> impl Strategy<Value = (MarkovChain<Rational>, Vec<Rational>)> {
    digraph().prop_flat_map(|g| {
        let n = g.vertex_count();
        let c = MarkovChain::natural_walk(&g).unwrap();
        proptest::collection::vec((-9i64..=9, 1i64..=5), n)
            .prop_map(move |xs| (c.clone(), xs.into_iter().map(|(a, b)| q(a, b)).collect()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn flow_is_conserved(g in digraph(), mask in 1u64..31) {
        let c = MarkovChain::<Rational>::natural_walk(&g).unwrap();
        let n = g.vertex_count();
        let set = VertexSet::from_mask(mask & ((1 << n) - 1));
        prop_assume!(!set.is_empty());
        prop_assert_eq!(c.inflow(&set).unwrap(), c.directed_boundary(&set).unwrap());
        let total = c.pi().iter().fold(q(0, 1), |a, p| a + p.clone());
        prop_assert_eq!(total, q(1, 1));
    }

    #[test]
    fn divergence_of_gradient_is_twice_laplacian(g in digraph()) {
        let c = MarkovChain::<Rational>::natural_walk(&g).unwrap();
        let two = q(2, 1);
        prop_assert_eq!(divergence_of_gradient_matrix(&c), laplacian_matrix(&c).map(|x| x.clone() * two.clone()));
    }

    #[test]
    fn norm_relations_hold((c, f) in chain_and_function()) {
        prop_assert!(norm_relations(&c, &f).all());
    }

    #[test]
    fn duval_reiner_identity((c, f) in chain_and_function(), split in 1u64..31, a in -5i64..=5, b in -5i64..=5, z in -4i64..=4) {
        let n = c.vertex_count();
        let first = VertexSet::from_mask(split & ((1 << n) - 1));
        prop_assume!(!first.is_empty() && first.len() < n);
        let partition = [first.clone(), first.complement(n)];
        let (lhs, rhs) = duval_reiner_sides(&c, &f, &partition, &[q(a, 1), q(b, 1)], &q(z, 2)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mean_spectrum_below_iota(g in digraph()) {
        let c = MarkovChain::<Rational>::natural_walk(&g).unwrap();
        let s = spectrum(&c).unwrap();
        for n in 1..=g.vertex_count() {
            let iota = isoperimetric_report(&c, n, DEFAULT_CAP).unwrap().iota;
            prop_assert!(s.mean_lambda(n) <= iota.to_f64() + 1e-9);
        }
    }

    #[test]
    fn jacobi_matches_nalgebra(g in digraph()) {
        let c = MarkovChain::<Rational>::natural_walk(&g).unwrap().to_f64();
        let n = g.vertex_count();
        let m = DMatrix::from_fn(n, n, |u, v| {
            let id = if u == v { 1.0 } else { 0.0 };
            id - c.phi_bar(u, v) / (c.pi()[u] * c.pi()[v]).sqrt()
        });
        let mut oracle: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        oracle.sort_by(f64::total_cmp);
        let s = spectrum(&c).unwrap();
        for (a, b) in s.lambdas.iter().zip(&oracle) {
            prop_assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }
}
