use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::subsets::{for_each_submask, EdgeSet};
use crate::graph::Graph;
use crate::poly::{MultiPoly, VarKey};

/// Rank data of an edge subset: `rank + components = n` and
/// `nullity = |A| - rank`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankNullity {
    pub rank: usize,
    pub nullity: usize,
    pub components: usize,
}

/// Rank data of the spanning subgraph of `g` with the given edges.
pub fn rank_nullity(g: &Graph, edges: &[(usize, usize)]) -> RankNullity {
    let mut h = Graph::empty(g.order());
    for &(u, v) in edges {
        assert!(g.has_edge(u, v), "{u}-{v} is not an edge");
        h.add_edge(u, v);
    }
    let components = h.components().len();
    let rank = g.order() - components;
    RankNullity { rank, nullity: h.edge_count() - rank, components }
}

pub fn tutte(g: &Graph) -> MultiPoly {
    let es = EdgeSet::plain(g);
    let n = g.order();
    let full_rank = n - es.component_count(es.all());
    let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for_each_submask(es.all(), |a| {
        let rank = n - es.component_count(a);
        let nullity = a.count_ones() as usize - rank;
        *counts.entry((full_rank - rank, nullity)).or_insert(0) += 1;
    });
    let xm1 = &MultiPoly::var(VarKey::X) - &MultiPoly::one();
    let ym1 = &MultiPoly::var(VarKey::Y) - &MultiPoly::one();
    let mut out = MultiPoly::zero();
    for ((i, j), c) in counts {
        out += (&xm1.pow(i as u32) * &ym1.pow(j as u32)).scale(&BigInt::from(c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_graphs_with_limit;

    fn poly(terms: &[(i64, u32, u32)]) -> MultiPoly {
        let mut p = MultiPoly::zero();
        for &(c, i, j) in terms {
            p += (&MultiPoly::var(VarKey::X).pow(i) * &MultiPoly::var(VarKey::Y).pow(j)).scale(&c.into());
        }
        p
    }

    #[test]
    fn small_examples() {
        assert_eq!(tutte(&Graph::complete(2)), poly(&[(1, 1, 0)]));
        assert_eq!(tutte(&Graph::empty(4)), MultiPoly::one());
        assert_eq!(tutte(&Graph::complete(3)), poly(&[(1, 2, 0), (1, 1, 0), (1, 0, 1)]));
        assert_eq!(tutte(&Graph::path(3)), poly(&[(1, 2, 0)]));
        assert_eq!(tutte(&Graph::cycle(4)), poly(&[(1, 3, 0), (1, 2, 0), (1, 1, 0), (1, 0, 1)]));
    }

    #[test]
    fn rank_nullity_of_subsets() {
        let k3 = Graph::complete(3);
        let rn = rank_nullity(&k3, &k3.edges());
        assert_eq!(rn, RankNullity { rank: 2, nullity: 1, components: 1 });
        let rn = rank_nullity(&k3, &[]);
        assert_eq!(rn, RankNullity { rank: 0, nullity: 0, components: 3 });
    }

    /// Subset expansion over a multigraph given as an edge list; loops are
    /// pairs `(v, v)`.
    fn multigraph_tutte(n: usize, edges: &[(usize, usize)]) -> MultiPoly {
        let comps = |mask: u64| {
            let mut parent: Vec<usize> = (0..n).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                if p[x] != x {
                    let r = find(p, p[x]);
                    p[x] = r;
                }
                p[x]
            }
            let mut k = n;
            for (i, &(u, v)) in edges.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                    if a != b {
                        parent[a] = b;
                        k -= 1;
                    }
                }
            }
            k
        };
        let m = edges.len();
        let full_rank = n - comps((1 << m) - 1);
        let mut terms = Vec::new();
        for a in 0u64..1 << m {
            let rank = n - comps(a);
            terms.push((1, (full_rank - rank) as u32, (a.count_ones() as usize - rank) as u32));
        }
        let xm1 = &MultiPoly::var(VarKey::X) - &MultiPoly::one();
        let ym1 = &MultiPoly::var(VarKey::Y) - &MultiPoly::one();
        terms.iter().fold(MultiPoly::zero(), |acc, &(_, i, j)| &acc + &(&xm1.pow(i) * &ym1.pow(j)))
    }

    #[test]
    fn deletion_contraction_on_small_graphs() {
        for n in 2..=6 {
            for g in enumerate_graphs_with_limit(n, false, 9).unwrap() {
                let t = tutte(&g);
                let edges = g.edges();
                assert_eq!(t, multigraph_tutte(n, &edges));
                let k = g.components().len();
                for (i, &(u, v)) in edges.iter().enumerate() {
                    let mut h = g.clone();
                    h.remove_edge(u, v);
                    if h.components().len() != k {
                        continue;
                    }
                    let deleted: Vec<_> = edges.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &e)| e).collect();
                    // Contract u-v onto u, keeping parallel edges and loops.
                    let relabel = |w: usize| {
                        let w = if w == v { u } else { w };
                        if w > v {
                            w - 1
                        } else {
                            w
                        }
                    };
                    let contracted: Vec<_> = deleted.iter().map(|&(a, b)| (relabel(a), relabel(b))).collect();
                    assert_eq!(t, &tutte(&h) + &multigraph_tutte(n - 1, &contracted));
                }
            }
        }
    }
}
