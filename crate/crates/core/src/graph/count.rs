use super::{bits, full_mask, AnyGraph, EdgeLabelled, Graph};
use crate::error::{Error, Result};

/// How copies of a pattern are counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CountMode {
    /// Distinct (vertex set, edge set) pairs forming a copy of the pattern.
    Subgraph,
    /// Vertex subsets whose induced subgraph is a copy of the pattern.
    Induced,
}

/// `s(H, F)`: number of copies of `pattern` in `host`. Colored inputs
/// require color-preserving copies.
pub fn count_subgraphs<G: EdgeLabelled>(pattern: &G, host: &G, mode: CountMode) -> u64 {
    if pattern.order() > host.order() {
        return 0;
    }
    let maps = count_maps(pattern, host, mode);
    if maps == 0 {
        return 0;
    }
    let autos = count_maps(pattern, pattern, CountMode::Induced);
    assert_eq!(maps % autos, 0, "embedding count must be a multiple of |Aut(H)|");
    maps / autos
}

pub fn count_subgraphs_any(pattern: &AnyGraph, host: &AnyGraph, mode: CountMode) -> Result<u64> {
    match (pattern, host) {
        (AnyGraph::Plain(h), AnyGraph::Plain(f)) => Ok(count_subgraphs(h, f, mode)),
        (AnyGraph::Colored(h), AnyGraph::Colored(f)) => Ok(count_subgraphs(h, f, mode)),
        _ => Err(Error::MixedColoring),
    }
}

/// Injective maps `V(pattern) -> V(host)` sending edges to edges of the same
/// label; in induced mode non-edges must also go to non-edges.
pub(crate) fn count_maps<G: EdgeLabelled>(pattern: &G, host: &G, mode: CountMode) -> u64 {
    let k = pattern.order();
    let n = host.order();
    if k > n {
        return 0;
    }
    if k == 0 {
        return 1;
    }
    // Map pattern vertices in an order where each vertex, where possible,
    // is adjacent to an earlier one.
    let pg = pattern.base();
    let mut order = Vec::with_capacity(k);
    let mut placed = 0u64;
    while order.len() < k {
        let frontier = (0..k)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| ((pg.neighbors(v) & placed).count_ones(), pg.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        order.push(frontier);
        placed |= 1 << frontier;
    }
    let hg = host.base();
    let mut image = vec![usize::MAX; k];
    let ctx = MapCtx {
        pattern,
        host,
        hg,
        order: &order,
        mode,
        all: full_mask(n),
    };
    ctx.rec(0, 0, &mut image)
}

struct MapCtx<'a, G: EdgeLabelled> {
    pattern: &'a G,
    host: &'a G,
    hg: &'a Graph,
    order: &'a [usize],
    mode: CountMode,
    all: u64,
}

impl<G: EdgeLabelled> MapCtx<'_, G> {
    fn rec(&self, depth: usize, used: u64, image: &mut [usize]) -> u64 {
        if depth == self.order.len() {
            return 1;
        }
        let v = self.order[depth];
        let pdeg = self.pattern.base().degree(v);
        let mut cand = self.all & !used;
        for &u in &self.order[..depth] {
            let iu = image[u];
            let label = self.pattern.label(v, u);
            if label != 0 {
                cand &= self.hg.neighbors(iu);
            } else if self.mode == CountMode::Induced {
                cand &= !self.hg.neighbors(iu);
            }
        }
        let mut total = 0;
        for w in bits(cand) {
            if self.hg.degree(w) < pdeg {
                continue;
            }
            if self.order[..depth].iter().any(|&u| {
                let l = self.pattern.label(v, u);
                l != 0 && self.host.label(w, image[u]) != l
            }) {
                continue;
            }
            image[v] = w;
            total += self.rec(depth + 1, used | 1 << w, image);
        }
        image[v] = usize::MAX;
        total
    }
}

/// Number of perfect matchings, by branching on the lowest unmatched vertex.
pub fn perfect_matching_count(g: &Graph) -> u64 {
    fn rec(g: &Graph, free: u64) -> u64 {
        if free == 0 {
            return 1;
        }
        let v = free.trailing_zeros() as usize;
        let rest = free & !(1 << v);
        bits(g.neighbors(v) & rest).map(|u| rec(g, rest & !(1 << u))).sum()
    }
    if g.order() % 2 == 1 {
        return 0;
    }
    rec(g, full_mask(g.order()))
}
