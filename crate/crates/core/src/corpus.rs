//! The fixed graph corpus used by sweeps and acceptance runs.

use crate::graph_model::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: Graph,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn go(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            go(k + 1, p, out);
            p.swap(k, i);
        }
    }
    go(0, &mut p, &mut out);
    out
}

/// Off-diagonal arc positions of an `n`-vertex digraph, in bit order.
fn arc_slots(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect()
}

fn slot_index(n: usize, u: usize, v: usize) -> usize {
    u * (n - 1) + if v > u { v - 1 } else { v }
}

fn is_canonical(n: usize, mask: u64, slots: &[(usize, usize)], perms: &[Vec<usize>]) -> bool {
    perms.iter().all(|p| {
        let mut image = 0u64;
        for (i, &(u, v)) in slots.iter().enumerate() {
            if mask >> i & 1 == 1 {
                image |= 1 << slot_index(n, p[u], p[v]);
            }
        }
        image >= mask
    })
}

fn from_mask(n: usize, mask: u64, slots: &[(usize, usize)]) -> Graph {
    Graph::with_order(n, slots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &a)| a))
        .expect("valid arcs")
}

/// Loop-free strongly connected digraphs on `n` vertices, one per
/// isomorphism class, in increasing order of their least arc mask.
pub fn strongly_connected_digraphs(n: usize) -> Vec<Graph> {
    assert!((1..=5).contains(&n), "digraph enumeration supports 1..=5 vertices");
    if n == 1 {
        return vec![Graph::with_order(1, []).expect("single vertex")];
    }
    let slots = arc_slots(n);
    let perms = permutations(n);
    (0..1u64 << slots.len())
        .filter(|&mask| is_canonical(n, mask, &slots, &perms))
        .map(|mask| from_mask(n, mask, &slots))
        .filter(Graph::is_strongly_connected)
        .collect()
}

/// Connected simple undirected graphs on `n` vertices up to isomorphism,
/// as symmetric digraphs.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=6).contains(&n), "graph enumeration supports 1..=6 vertices");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let perms = permutations(n);
    let index = |u: usize, v: usize| pairs.iter().position(|&p| p == (u.min(v), u.max(v))).expect("pair");
    let table: Vec<Vec<usize>> =
        perms.iter().map(|p| pairs.iter().map(|&(u, v)| index(p[u], p[v])).collect()).collect();
    (0..1u64 << pairs.len())
        .filter(|&mask| {
            table.iter().all(|t| {
                let image = t.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(0u64, |a, (_, &j)| a | 1 << j);
                image >= mask
            })
        })
        .map(|mask| {
            Graph::undirected(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e))
                .expect("valid edges")
        })
        .filter(Graph::is_strongly_connected)
        .collect()
}

/// Strongly connected digraphs on two to four vertices, connected graphs on
/// five, then `C_6`, `K_6`, `K_{3,3}`, Petersen and the three-clique graph
/// with blocks of size 3.
pub fn standard_corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    for n in 2..=4 {
        for (i, graph) in strongly_connected_digraphs(n).into_iter().enumerate() {
            out.push(CorpusEntry { name: format!("d{n}-{i:02}"), graph });
        }
    }
    for (i, graph) in connected_graphs(5).into_iter().enumerate() {
        out.push(CorpusEntry { name: format!("g5-{i:02}"), graph });
    }
    let named = [
        ("c6", Graph::cycle(6)),
        ("k6", Graph::complete(6)),
        ("k3-3", Graph::complete_bipartite(3, 3)),
        ("petersen", Graph::petersen()),
        ("three-clique-3", Graph::three_clique(3)),
    ];
    out.extend(named.into_iter().map(|(name, graph)| CorpusEntry { name: name.into(), graph }));
    out
}

/// Corpus members with at most `max_vertices` vertices.
pub fn small_corpus(max_vertices: usize) -> Vec<CorpusEntry> {
    standard_corpus().into_iter().filter(|e| e.graph.vertex_count() <= max_vertices).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| strongly_connected_digraphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 5, 83]);
        let counts: Vec<usize> = (1..=5).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21]);
    }

    #[test]
    fn corpus_contains_directed_triangle() {
        let corpus = standard_corpus();
        assert!(corpus.iter().any(|e| e.graph == Graph::directed_cycle(3)));
        assert_eq!(corpus.len(), 89 + 21 + 5);
    }
}
