//! Graph homomorphisms, the comparison constants they induce, and the
//! spectral comparison and Courant–Hilbert-type checks.

use rand::Rng;
use serde::Serialize;

use crate::check::Check;
use crate::error::{Error, Result};
use crate::graph_model::{Graph, MarkovChain, Matrix};
use crate::isoperimetry::{report_from_table, RatioTable};
use crate::nodal::{components, excessive_check, sign_decomposition, Connectivity, Direction, Operator};
use crate::scalar::{Rational, Scalar};
use crate::spectral::{spectrum, SpectrumReport};

/// Default bound on `|V(H)|^|V(G)|` for exhaustive map enumeration.
pub const DEFAULT_MAP_CAP: f64 = 1e8;

/// Strength of a vertex map, weakest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HomClass {
    NotHom,
    Hom,
    OntoVertex,
    OntoEdge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OntoMode {
    VertexOnto,
    EdgeOnto,
}

impl OntoMode {
    fn required(self) -> HomClass {
        match self {
            OntoMode::VertexOnto => HomClass::OntoVertex,
            OntoMode::EdgeOnto => HomClass::OntoEdge,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomWitness {
    pub map: Vec<usize>,
    pub class: HomClass,
}

pub fn validate_hom(g: &Graph, h: &Graph, map: &[usize]) -> Result<HomWitness> {
    if map.len() != g.vertex_count() {
        return Err(Error::Dimension { expected: g.vertex_count(), got: map.len() });
    }
    if let Some(&bad) = map.iter().find(|&&x| x >= h.vertex_count()) {
        return Err(Error::OutOfRange { n: bad, max: h.vertex_count().saturating_sub(1) });
    }
    Ok(HomWitness { map: map.to_vec(), class: classify(g, h, map) })
}

fn classify(g: &Graph, h: &Graph, map: &[usize]) -> HomClass {
    if !g.arcs().all(|(u, v)| h.has_arc(map[u], map[v])) {
        return HomClass::NotHom;
    }
    let mut hit = vec![false; h.vertex_count()];
    map.iter().for_each(|&x| hit[x] = true);
    if !hit.iter().all(|&b| b) {
        return HomClass::Hom;
    }
    let images: std::collections::BTreeSet<(usize, usize)> = g.arcs().map(|(u, v)| (map[u], map[v])).collect();
    if h.arcs().all(|a| images.contains(&a)) {
        HomClass::OntoEdge
    } else {
        HomClass::OntoVertex
    }
}

/// Fiber statistics and kernel extremes of a homomorphism.
#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonConstants<S> {
    /// Least nonzero arc count between two fibers.
    pub m_sigma: usize,
    /// Greatest arc count between two fibers.
    pub m_sup: usize,
    pub s_sigma: usize,
    pub s_sup: usize,
    pub tau_gh: S,
    pub tau_hg: S,
    /// `(max, min)` of `π_G`.
    pub pi_g: (S, S),
    pub pi_h: (S, S),
    /// `(max, min)` of `φ̄_G` over distinct vertices with nonzero value.
    pub phi_bar_g: (S, S),
    pub phi_bar_h: (S, S),
}

impl<S: Scalar> ComparisonConstants<S> {
    /// `(M^σ/S_σ)(φ̄^M_G π^M_H)/(φ̄^m_H π^m_G)`.
    pub fn factor_upper(&self) -> S {
        S::from_ratio(self.m_sup as i64, self.s_sigma as i64) * self.phi_bar_g.0.clone() * self.pi_h.0.clone()
            / (self.phi_bar_h.1.clone() * self.pi_g.1.clone())
    }

    /// `(M_σ/S^σ)(φ̄^m_G π^m_H)/(φ̄^M_H π^M_G)`.
    pub fn factor_lower(&self) -> S {
        S::from_ratio(self.m_sigma as i64, self.s_sup as i64) * self.phi_bar_g.1.clone() * self.pi_h.1.clone()
            / (self.phi_bar_h.0.clone() * self.pi_g.0.clone())
    }
}

fn extremes<S: Scalar>(c: &MarkovChain<S>) -> Result<(S, S)> {
    c.phi_bar_extremes()
        .ok_or_else(|| Error::precondition("chain has no flow between distinct vertices"))
}

/// `(π^M_H/π^m_G) · max φ̄_G / min φ̄_H`.
pub fn tau<S: Scalar>(cg: &MarkovChain<S>, ch: &MarkovChain<S>) -> Result<S> {
    let (_, pi_g_min) = cg.pi_extremes();
    let (pi_h_max, _) = ch.pi_extremes();
    Ok(pi_h_max / pi_g_min * extremes(cg)?.0 / extremes(ch)?.1)
}

pub fn comparison_constants<S: Scalar>(
    cg: &MarkovChain<S>,
    ch: &MarkovChain<S>,
    w: &HomWitness,
) -> Result<ComparisonConstants<S>> {
    if w.class < HomClass::Hom {
        return Err(Error::precondition("map is not a homomorphism"));
    }
    let m = ch.vertex_count();
    let mut between = vec![0usize; m * m];
    for (u, v) in cg.graph().symmetric_directed().arcs() {
        between[w.map[u] * m + w.map[v]] += 1;
    }
    let mut sizes = vec![0usize; m];
    w.map.iter().for_each(|&x| sizes[x] += 1);
    let nonempty_sizes = sizes.iter().copied().filter(|&s| s > 0);
    Ok(ComparisonConstants {
        m_sigma: between.iter().copied().filter(|&c| c > 0).min().unwrap_or(0),
        m_sup: between.iter().copied().max().unwrap_or(0),
        s_sigma: sizes.iter().copied().min().unwrap_or(0),
        s_sup: nonempty_sizes.max().unwrap_or(0),
        tau_gh: tau(cg, ch)?,
        tau_hg: tau(ch, cg)?,
        pi_g: cg.pi_extremes(),
        pi_h: ch.pi_extremes(),
        phi_bar_g: extremes(cg)?,
        phi_bar_h: extremes(ch)?,
    })
}

/// `ι_1, …, ι_k` from one ratio table.
fn iota_prefix<S: Scalar>(c: &MarkovChain<S>, k: usize, cap: usize) -> Result<Vec<S>> {
    let table = RatioTable::new(c, cap)?;
    (1..=k).map(|n| report_from_table(&table, n).map(|r| r.iota)).collect()
}

/// Part (a) for `λ` and `ι` when the map is vertex-onto; part (b) when it is
/// also edge-onto.
pub fn comparison_check<S: Scalar>(
    cg: &MarkovChain<S>,
    ch: &MarkovChain<S>,
    w: &HomWitness,
    cap: usize,
) -> Result<Vec<Check>> {
    if w.class < HomClass::OntoVertex {
        return Err(Error::precondition("comparison needs a vertex-onto homomorphism"));
    }
    let consts = comparison_constants(cg, ch, w)?;
    let (n, m) = (cg.vertex_count(), ch.vertex_count());
    let sg = spectrum(cg)?;
    let sh = spectrum(ch)?;
    let iota_g = iota_prefix(cg, m, cap)?;
    let iota_h = iota_prefix(ch, m, cap)?;
    let upper = consts.factor_upper();
    let up = upper.to_f64();
    let mut checks = Vec::new();
    for k in 1..=m {
        let (lg, lh) = (sg.lambda(k), sh.lambda(k));
        checks.push(Check::new(
            format!("comparison lambda upper k={k}"),
            lg <= up * lh + 1e-9,
            format!("{lg:.12} <= {up:.12} * {lh:.12}"),
        ));
        let rhs = upper.clone() * iota_h[k - 1].clone();
        checks.push(Check::new(
            format!("comparison iota upper k={k}"),
            iota_g[k - 1].le_tol(&rhs, 1e-9),
            format!("{} <= {}", iota_g[k - 1].render(), rhs.render()),
        ));
    }
    if w.class == HomClass::OntoEdge {
        let low = consts.factor_lower().to_f64();
        for k in 1..=m {
            let (lg, lh) = (sg.lambda(n - m + k), sh.lambda(k));
            checks.push(Check::new(
                format!("comparison lambda lower k={k}"),
                lg + 1e-9 >= low * lh,
                format!("lambda_{} = {lg:.12} >= {low:.12} * {lh:.12}", n - m + k),
            ));
        }
    }
    Ok(checks)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CourantHilbert {
    /// `f` is `ζ`-excessive for `Δ_H`; vertex-onto map.
    Excessive,
    /// `f` is `ζ`-deficient for `K̄_H`; edge-onto map.
    DeficientA,
    /// As `DeficientA` with `κ⁻(f) ≠ 0` and `H` strongly connected; strict.
    DeficientB,
}

pub fn courant_hilbert_check<S: Scalar>(
    cg: &MarkovChain<S>,
    ch: &MarkovChain<S>,
    w: &HomWitness,
    f: &[S],
    zeta: &S,
    theorem: CourantHilbert,
) -> Result<Check> {
    if f.len() != ch.vertex_count() {
        return Err(Error::Dimension { expected: ch.vertex_count(), got: f.len() });
    }
    let consts = comparison_constants(cg, ch, w)?;
    let decomposition = sign_decomposition(ch.graph(), f, Connectivity::Undirected);
    let sg = spectrum(cg)?;
    match theorem {
        CourantHilbert::Excessive => {
            if w.class < HomClass::OntoVertex {
                return Err(Error::precondition("needs a vertex-onto homomorphism"));
            }
            if !excessive_check(ch, f, zeta, Operator::Delta, Direction::Excessive) {
                return Err(Error::precondition("f is not excessive for the Laplacian of H"));
            }
            let k = positive_count(&decomposition.kappa_plus)?;
            let bound = S::from_ratio(consts.m_sup as i64, consts.s_sigma as i64) * consts.tau_gh.clone() * zeta.clone();
            let b = bound.to_f64();
            let lg = sg.lambda(k);
            Ok(Check::new(
                format!("excessive transfer k={k}"),
                lg <= b + 1e-9,
                format!("lambda_{k} = {lg:.12} <= {b:.12}"),
            ))
        }
        CourantHilbert::DeficientA | CourantHilbert::DeficientB => {
            if w.class < HomClass::OntoEdge {
                return Err(Error::precondition("needs an edge-onto homomorphism"));
            }
            if !excessive_check(ch, f, zeta, Operator::KBar, Direction::Deficient) {
                return Err(Error::precondition("f is not deficient for the averaged kernel of H"));
            }
            let bound = S::from_ratio(consts.m_sigma as i64, consts.s_sup as i64) / consts.tau_hg.clone() * zeta.clone();
            let b = bound.to_f64();
            if theorem == CourantHilbert::DeficientA {
                let k = positive_count(&decomposition.kappa_plus)?;
                let a = sg.alpha(k);
                return Ok(Check::new(
                    format!("deficient transfer k={k}"),
                    a + 1e-9 >= b,
                    format!("alpha_{k} = {a:.12} >= {b:.12}"),
                ));
            }
            if !ch.graph().is_strongly_connected() {
                return Err(Error::precondition("H is not strongly connected"));
            }
            if decomposition.kappa_minus == 0 {
                return Err(Error::precondition("f has no negative sign-graph"));
            }
            let nonnegative = decomposition.positives.union(&decomposition.zeros);
            let k = components(ch.graph(), &nonnegative, Connectivity::Undirected).len();
            let a = sg.alpha(k);
            Ok(Check::new(
                format!("strict deficient transfer k={k}"),
                a > b + 1e-9,
                format!("alpha_{k} = {a:.12} > {b:.12}"),
            ))
        }
    }
}

fn positive_count(k: &usize) -> Result<usize> {
    if *k == 0 {
        Err(Error::precondition("f has no positive sign-graph"))
    } else {
        Ok(*k)
    }
}

/// For each eigenfunction `f_k`: `κ(f_k) ≤ k` and `λ_{κ(f_k)} ≤ λ_k`.
pub fn courant_hilbert_identity(chain: &MarkovChain<f64>, report: &SpectrumReport) -> Vec<Check> {
    let n = chain.vertex_count();
    let mut checks = Vec::new();
    for k in 1..=n {
        let kappa = sign_decomposition(chain.graph(), report.eigenfunction(k), Connectivity::Undirected).kappa;
        let flag = if report.degenerate[k - 1] { " (degenerate)" } else { "" };
        checks.push(Check::new(format!("nodal count k={k}"), kappa <= k, format!("kappa = {kappa}{flag}")));
        let holds = kappa >= 1 && report.lambda(kappa) <= report.lambda(k) + 1e-9;
        checks.push(Check::new(
            format!("nodal eigenvalue k={k}"),
            holds,
            format!("lambda_kappa = {:.12}, lambda_k = {:.12}", report.lambda(kappa.max(1)), report.lambda(k)),
        ));
    }
    checks
}

fn search_space(g: &Graph, h: &Graph, cap: f64) -> Result<()> {
    let size = (h.vertex_count() as f64).powi(g.vertex_count() as i32);
    if size > cap {
        return Err(Error::SearchSpaceExceeded { size, cap });
    }
    Ok(())
}

/// Every homomorphism of at least the requested class, in lexicographic map
/// order, stopping after `limit` results.
fn enumerate(g: &Graph, h: &Graph, mode: OntoMode, cap: f64, limit: usize) -> Result<Vec<HomWitness>> {
    search_space(g, h, cap)?;
    let n = g.vertex_count();
    let m = h.vertex_count();
    let mut found = Vec::new();
    if m == 0 || n == 0 {
        return Ok(found);
    }
    let mut map = vec![0usize; n];
    let consistent = |map: &[usize], u: usize| {
        g.out_neighbors(u).iter().filter(|&&v| v <= u).all(|&v| h.has_arc(map[u], map[v]))
            && g.in_neighbors(u).iter().filter(|&&v| v < u).all(|&v| h.has_arc(map[v], map[u]))
    };
    let mut depth = 0usize;
    let mut next = vec![0usize; n];
    loop {
        if next[depth] == m {
            if depth == 0 {
                break;
            }
            next[depth] = 0;
            depth -= 1;
            continue;
        }
        map[depth] = next[depth];
        next[depth] += 1;
        if !consistent(&map, depth) {
            continue;
        }
        if depth + 1 < n {
            depth += 1;
            continue;
        }
        let class = classify(g, h, &map);
        if class >= mode.required() {
            found.push(HomWitness { map: map.clone(), class });
            if found.len() >= limit {
                break;
            }
        }
    }
    Ok(found)
}

/// The first onto homomorphism of the requested kind, or `None` if none exists.
pub fn no_hom_search(g: &Graph, h: &Graph, mode: OntoMode, cap: f64) -> Result<Option<HomWitness>> {
    Ok(enumerate(g, h, mode, cap, 1)?.into_iter().next())
}

pub fn all_onto_homs(g: &Graph, h: &Graph, mode: OntoMode, cap: f64) -> Result<Vec<HomWitness>> {
    enumerate(g, h, mode, cap, usize::MAX)
}

/// Spectral obstruction under a caller-supplied bound `M^σ/S_σ ≤ ratio`:
/// the first `k` with `λ^G_k` above what any vertex-onto map would allow.
pub fn spectral_obstruction<S: Scalar>(cg: &MarkovChain<S>, ch: &MarkovChain<S>, ratio: &S) -> Result<Option<usize>> {
    let (_, pi_g_min) = cg.pi_extremes();
    let (pi_h_max, _) = ch.pi_extremes();
    let factor = ratio.clone() * extremes(cg)?.0 * pi_h_max / (extremes(ch)?.1 * pi_g_min);
    let f = factor.to_f64();
    let sg = spectrum(cg)?;
    let sh = spectrum(ch)?;
    Ok((1..=ch.vertex_count().min(cg.vertex_count())).find(|&k| sg.lambda(k) > f * sh.lambda(k) + 1e-9))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NoHomVerdict {
    pub witness: Option<HomWitness>,
    /// Index `k` of a spectral obstruction, when a ratio bound was supplied.
    pub obstruction: Option<usize>,
    /// `false` only if an obstruction was claimed while a map exists.
    pub certificate_sound: bool,
}

pub fn no_hom_verdict<S: Scalar>(
    cg: &MarkovChain<S>,
    ch: &MarkovChain<S>,
    mode: OntoMode,
    ratio: Option<&S>,
    cap: f64,
) -> Result<NoHomVerdict> {
    let witness = no_hom_search(cg.graph(), ch.graph(), mode, cap)?;
    let obstruction = match ratio {
        Some(r) => spectral_obstruction(cg, ch, r)?,
        None => None,
    };
    let certificate_sound = obstruction.is_none() || witness.is_none();
    Ok(NoHomVerdict { witness, obstruction, certificate_sound })
}

/// Random kernel on the arcs of `g` (loops excluded unless `g` has them)
/// with integer weights in `1..=9`, rows normalised.
pub fn random_kernel<R: Rng>(g: &Graph, rng: &mut R) -> Result<MarkovChain<Rational>> {
    let n = g.vertex_count();
    let mut rows = vec![vec![Rational::from_usize(0); n]; n];
    for (u, row) in rows.iter_mut().enumerate() {
        let weights: Vec<(usize, i64)> = g.out_neighbors(u).iter().map(|&v| (v, rng.gen_range(1..=9))).collect();
        let total: i64 = weights.iter().map(|w| w.1).sum();
        for (v, w) in weights {
            row[v] = Rational::from_ratio(w, total);
        }
    }
    let kernel = Matrix::from_rows(rows).ok_or_else(|| Error::InvalidGraph("ragged kernel".into()))?;
    MarkovChain::from_kernel(g.clone(), kernel)
}

/// `λ₂(K) ≤ λ₂(K_c)`, `λ_n(K) ≥ λ_n(K_c)` and `ι_k(K) ≤ ι_k(K_c)` for all `k`,
/// with `K_c` the lazy max-degree kernel on the same graph.
pub fn transitive_dominance_check(chain: &MarkovChain<Rational>, cap: usize) -> Result<Vec<Check>> {
    let combinatorial = MarkovChain::<Rational>::lazy_max_degree(chain.graph())?;
    let n = chain.vertex_count();
    let (s, sc) = (spectrum(chain)?, spectrum(&combinatorial)?);
    let (iota, iota_c) = (iota_prefix(chain, n, cap)?, iota_prefix(&combinatorial, n, cap)?);
    let mut checks = vec![
        Check::new(
            "dominance lambda_2",
            s.lambda(2) <= sc.lambda(2) + 1e-9,
            format!("{:.12} <= {:.12}", s.lambda(2), sc.lambda(2)),
        ),
        Check::new(
            "dominance lambda_max",
            s.lambda(n) + 1e-9 >= sc.lambda(n),
            format!("{:.12} >= {:.12}", s.lambda(n), sc.lambda(n)),
        ),
    ];
    for k in 1..=n {
        checks.push(Check::new(
            format!("dominance iota k={k}"),
            iota[k - 1] <= iota_c[k - 1],
            format!("{} <= {}", iota[k - 1].render(), iota_c[k - 1].render()),
        ));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::all_passed;
    use crate::isoperimetry::DEFAULT_CAP;
    use crate::scalar::q;

    fn walk(g: &Graph) -> MarkovChain<Rational> {
        MarkovChain::natural_walk(g).unwrap()
    }

    #[test]
    fn classification() {
        let c6 = Graph::cycle(6);
        let k2 = Graph::complete(2);
        let id: Vec<usize> = (0..6).collect();
        assert_eq!(validate_hom(&c6, &c6, &id).unwrap().class, HomClass::OntoEdge);
        assert_eq!(validate_hom(&c6, &k2, &[0, 1, 0, 1, 0, 1]).unwrap().class, HomClass::OntoEdge);
        assert_eq!(validate_hom(&c6, &k2, &[0, 0, 1, 1, 0, 1]).unwrap().class, HomClass::NotHom);
        assert_eq!(validate_hom(&Graph::path(3), &Graph::complete(3), &[0, 1, 0]).unwrap().class, HomClass::Hom);
        assert_eq!(validate_hom(&Graph::path(3), &Graph::complete(3), &[0, 1, 2]).unwrap().class, HomClass::OntoVertex);
        assert!(validate_hom(&c6, &k2, &[0, 1]).is_err());
    }

    #[test]
    fn c6_to_k2_constants() {
        let (g, h) = (walk(&Graph::cycle(6)), walk(&Graph::complete(2)));
        let w = validate_hom(g.graph(), h.graph(), &[0, 1, 0, 1, 0, 1]).unwrap();
        let c = comparison_constants(&g, &h, &w).unwrap();
        assert_eq!((c.m_sigma, c.m_sup, c.s_sigma, c.s_sup), (6, 6, 3, 3));
        assert_eq!(c.tau_gh, q(1, 2));
        assert_eq!(c.factor_upper(), q(1, 1));
        assert!(all_passed(&comparison_check(&g, &h, &w, DEFAULT_CAP).unwrap()));
    }

    #[test]
    fn identity_constants() {
        let g = walk(&Graph::cycle(4));
        let id = validate_hom(g.graph(), g.graph(), &[0, 1, 2, 3]).unwrap();
        let c = comparison_constants(&g, &g, &id).unwrap();
        assert_eq!((c.m_sup, c.s_sigma), (1, 1));
        assert_eq!(tau(&g, &g).unwrap(), q(1, 1));
        assert!(all_passed(&comparison_check(&g, &g, &id, DEFAULT_CAP).unwrap()));
    }

    #[test]
    fn c4_courant_hilbert_instances() {
        let g = walk(&Graph::cycle(4));
        let id = validate_hom(g.graph(), g.graph(), &[0, 1, 2, 3]).unwrap();
        let f = vec![q(1, 1), q(0, 1), q(-1, 1), q(0, 1)];
        let alt = vec![q(1, 1), q(-1, 1), q(1, 1), q(-1, 1)];
        let a = courant_hilbert_check(&g, &g, &id, &f, &q(1, 1), CourantHilbert::Excessive).unwrap();
        let b = courant_hilbert_check(&g, &g, &id, &f, &q(0, 1), CourantHilbert::DeficientB).unwrap();
        let c = courant_hilbert_check(&g, &g, &id, &alt, &q(-1, 1), CourantHilbert::DeficientA).unwrap();
        assert!(a.passed && b.passed && c.passed, "{a:?} {b:?} {c:?}");
        assert_eq!(b.name, "strict deficient transfer k=1");
        assert_eq!(c.name, "deficient transfer k=2");
        assert!(courant_hilbert_check(&g, &g, &id, &f, &q(1, 2), CourantHilbert::Excessive).is_err());
    }

    #[test]
    fn exhaustive_search() {
        let vertex = OntoMode::VertexOnto;
        assert!(no_hom_search(&Graph::cycle(5), &Graph::complete(2), vertex, DEFAULT_MAP_CAP).unwrap().is_none());
        let w = no_hom_search(&Graph::cycle(6), &Graph::complete(2), OntoMode::EdgeOnto, DEFAULT_MAP_CAP).unwrap();
        assert_eq!(w.unwrap().map, vec![0, 1, 0, 1, 0, 1]);
        assert_eq!(all_onto_homs(&Graph::complete(3), &Graph::complete(3), vertex, DEFAULT_MAP_CAP).unwrap().len(), 6);
        assert!(all_onto_homs(&Graph::complete(4), &Graph::complete(2), vertex, DEFAULT_MAP_CAP).unwrap().is_empty());
        assert_eq!(all_onto_homs(&Graph::cycle(4), &Graph::cycle(4), vertex, DEFAULT_MAP_CAP).unwrap().len(), 8);
        assert!(no_hom_search(&Graph::cycle(6), &Graph::complete(5), vertex, 100.0).is_err());
    }

    #[test]
    fn certificate_without_map_is_sound() {
        let (g, h) = (walk(&Graph::cycle(5)), walk(&Graph::complete(2)));
        let v = no_hom_verdict(&g, &h, OntoMode::VertexOnto, Some(&q(1, 10)), DEFAULT_MAP_CAP).unwrap();
        assert!(v.witness.is_none());
        assert!(v.obstruction.is_some());
        assert!(v.certificate_sound);
    }

    #[test]
    fn identity_nodal_counts_on_simple_spectra() {
        let c = MarkovChain::<f64>::natural_walk(&Graph::path(5)).unwrap();
        let s = spectrum(&c).unwrap();
        assert!(all_passed(&courant_hilbert_identity(&c, &s)));
    }

    #[test]
    fn random_kernels_are_valid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let c = random_kernel(&Graph::complete(4), &mut rng).unwrap();
        assert_eq!(c.kind(), crate::graph_model::KernelKind::Explicit);
        assert!(all_passed(&transitive_dominance_check(&walk(&Graph::complete(4)), DEFAULT_CAP).unwrap()));
    }
}
