//! Simple undirected graphs, edge-coloured graphs and the machinery built on
//! them: canonical forms, decks, subgraph counting, GF(2) rank, enumeration
//! and text formats.

mod canon;
mod count;
mod deck;
mod enumerate;
mod gf2;
pub mod io;

pub use canon::{automorphism_count, canonical_form, canonical_labelling, pointed_canonical_form, CanonicalForm};
pub(crate) use canon::canonical_form_from_labels;
pub use count::{count_subgraphs, count_subgraphs_any, perfect_matching_count, CountMode};
pub use deck::{deck, deck_any, Deck};
pub use enumerate::{enumerate_graphs, enumerate_graphs_with_limit, max_order_from_env, GraphStream, DEFAULT_ENUMERATION_LIMIT};
pub use gf2::{gf2_rank, gf2_rank_rows};

use crate::error::{Error, Result};

/// Largest order representable by the bitset adjacency rows.
pub const MAX_ORDER: usize = 64;

/// Iterate over the set bits of a vertex mask, lowest first.
#[inline]
pub fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A simple undirected graph on the vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_ORDER, "graphs are limited to {MAX_ORDER} vertices");
        Graph { n, adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::InvalidArgument(format!("order {n} exceeds {MAX_ORDER}")));
        }
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!("edge ({u},{v}) out of range for order {n}")));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidArgument(format!("duplicate edge ({u},{v})")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Build from raw adjacency rows. Rows must describe a symmetric,
    /// irreflexive relation on `0..n`.
    pub fn from_adjacency(n: usize, adj: Vec<u64>) -> Self {
        debug_assert_eq!(adj.len(), n);
        debug_assert!((0..n).all(|v| adj[v] >> v & 1 == 0 && adj[v] & !full_mask(n) == 0));
        debug_assert!((0..n).all(|u| bits(adj[u]).all(|v| adj[v] >> u & 1 == 1)));
        Graph { n, adj }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 0..n {
            g.adj[v] = full_mask(n) & !(1 << v);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(0, n - 1);
        }
        g
    }

    /// `self` followed by `other`, with `other`'s vertices shifted up.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        assert!(n <= MAX_ORDER);
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|row| row << self.n));
        Graph { n, adj }
    }

    /// Cartesian product, vertex `(a, b)` numbered `a * other.n + b`.
    pub fn cartesian_product(&self, other: &Graph) -> Graph {
        let n = self.n * other.n;
        let mut g = Graph::empty(n);
        for a in 0..self.n {
            for b in 0..other.n {
                let v = a * other.n + b;
                for a2 in bits(self.adj[a]) {
                    g.adj[v] |= 1 << (a2 * other.n + b);
                }
                for b2 in bits(other.adj[b]) {
                    g.adj[v] |= 1 << (a * other.n + b2);
                }
            }
        }
        g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in bits(self.adj[u] & !full_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    /// Subgraph induced by the vertices in `mask`, renumbered in increasing order.
    pub fn induced(&self, mask: u64) -> Graph {
        let verts: Vec<usize> = bits(mask & full_mask(self.n)).collect();
        let mut g = Graph::empty(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// `G - v`.
    pub fn delete_vertex(&self, v: usize) -> Graph {
        self.induced(full_mask(self.n) & !(1 << v))
    }

    /// Vertex masks of the connected components, ordered by lowest vertex.
    pub fn components(&self) -> Vec<u64> {
        components_of(&self.adj, full_mask(self.n))
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// BFS distances from `v`; `None` for unreachable vertices.
    pub fn distances_from(&self, v: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[v] = Some(0);
        let mut frontier = 1u64 << v;
        let mut seen = frontier;
        let mut d = 0;
        while frontier != 0 {
            d += 1;
            let mut next = 0;
            for u in bits(frontier) {
                next |= self.adj[u];
            }
            next &= !seen;
            for u in bits(next) {
                dist[u] = Some(d);
            }
            seen |= next;
            frontier = next;
        }
        dist
    }

    /// Vertices within distance `d` of `v`.
    pub fn ball_mask(&self, v: usize, d: usize) -> u64 {
        let mut seen = 1u64 << v;
        let mut frontier = seen;
        for _ in 0..d {
            let mut next = 0;
            for u in bits(frontier) {
                next |= self.adj[u];
            }
            next &= !seen;
            if next == 0 {
                break;
            }
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Apply a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }
}

/// Connected components of the graph with rows `adj` restricted to `within`.
pub(crate) fn components_of(adj: &[u64], within: u64) -> Vec<u64> {
    let mut rest = within;
    let mut out = Vec::new();
    while rest != 0 {
        let start = rest & rest.wrapping_neg();
        let mut comp = start;
        let mut frontier = start;
        while frontier != 0 {
            let mut next = 0;
            for u in bits(frontier) {
                next |= adj[u];
            }
            next &= within & !comp;
            comp |= next;
            frontier = next;
        }
        out.push(comp);
        rest &= !comp;
    }
    out
}

/// A graph whose edges carry colors in `1..=palette`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ColoredGraph {
    base: Graph,
    colors: Vec<u8>,
    palette: u8,
}

impl ColoredGraph {
    pub fn empty(n: usize, palette: u8) -> Self {
        ColoredGraph {
            base: Graph::empty(n),
            colors: vec![0; n * n],
            palette,
        }
    }

    pub fn from_edges(n: usize, palette: u8, edges: &[(usize, usize, u8)]) -> Result<Self> {
        let plain: Vec<(usize, usize)> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
        let base = Graph::from_edges(n, &plain)?;
        let mut g = ColoredGraph {
            base,
            colors: vec![0; n * n],
            palette,
        };
        for &(u, v, c) in edges {
            if c == 0 || c > palette {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u},{v}) has color {c}, palette is 1..={palette}"
                )));
            }
            g.colors[u * n + v] = c;
            g.colors[v * n + u] = c;
        }
        Ok(g)
    }

    /// Every edge of `g` colored 1.
    pub fn monochrome(g: &Graph) -> Self {
        let n = g.order();
        let mut colors = vec![0; n * n];
        for (u, v) in g.edges() {
            colors[u * n + v] = 1;
            colors[v * n + u] = 1;
        }
        ColoredGraph {
            base: g.clone(),
            colors,
            palette: 1,
        }
    }

    /// Color the edges of `g` (in `g.edges()` order) with `colors`.
    pub fn with_colors(g: &Graph, palette: u8, colors: &[u8]) -> Result<Self> {
        let edges = g.edges();
        if edges.len() != colors.len() {
            return Err(Error::InvalidArgument(format!(
                "{} colors for {} edges",
                colors.len(),
                edges.len()
            )));
        }
        let triples: Vec<_> = edges.iter().zip(colors).map(|(&(u, v), &c)| (u, v, c)).collect();
        ColoredGraph::from_edges(g.order(), palette, &triples)
    }

    #[inline]
    pub fn base(&self) -> &Graph {
        &self.base
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.base.n
    }

    #[inline]
    pub fn palette(&self) -> u8 {
        self.palette
    }

    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Option<u8> {
        match self.colors[u * self.base.n + v] {
            0 => None,
            c => Some(c),
        }
    }

    /// Edges as `(u, v, color)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize, u8)> {
        self.base
            .edges()
            .into_iter()
            .map(|(u, v)| (u, v, self.colors[u * self.base.n + v]))
            .collect()
    }

    /// `|f^{-1}(c)|` for `c = 1..=palette`.
    pub fn color_class_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.palette as usize];
        for (_, _, c) in self.edges() {
            out[c as usize - 1] += 1;
        }
        out
    }

    pub fn induced(&self, mask: u64) -> ColoredGraph {
        let verts: Vec<usize> = bits(mask & full_mask(self.order())).collect();
        let k = verts.len();
        let mut g = ColoredGraph::empty(k, self.palette);
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if let Some(c) = self.color(u, v) {
                    g.base.add_edge(i, j);
                    g.colors[i * k + j] = c;
                    g.colors[j * k + i] = c;
                }
            }
        }
        g
    }

    pub fn delete_vertex(&self, v: usize) -> ColoredGraph {
        self.induced(full_mask(self.order()) & !(1 << v))
    }
}

/// Common view over plain and colored graphs. Plain edges carry label 1.
pub trait EdgeLabelled: Clone {
    fn base(&self) -> &Graph;
    /// Edge label, 0 when `u` and `v` are not adjacent.
    fn label(&self, u: usize, v: usize) -> u8;
    /// `None` for plain graphs.
    fn palette(&self) -> Option<u8>;
    fn induced_on(&self, mask: u64) -> Self;
    fn from_labelled_edges(n: usize, palette: Option<u8>, edges: &[(usize, usize, u8)]) -> Self;

    fn order(&self) -> usize {
        self.base().order()
    }
}

impl EdgeLabelled for Graph {
    fn base(&self) -> &Graph {
        self
    }
    #[inline]
    fn label(&self, u: usize, v: usize) -> u8 {
        self.has_edge(u, v) as u8
    }
    fn palette(&self) -> Option<u8> {
        None
    }
    fn induced_on(&self, mask: u64) -> Self {
        self.induced(mask)
    }
    fn from_labelled_edges(n: usize, _palette: Option<u8>, edges: &[(usize, usize, u8)]) -> Self {
        let mut g = Graph::empty(n);
        for &(u, v, _) in edges {
            g.add_edge(u, v);
        }
        g
    }
}

impl EdgeLabelled for ColoredGraph {
    fn base(&self) -> &Graph {
        &self.base
    }
    #[inline]
    fn label(&self, u: usize, v: usize) -> u8 {
        self.colors[u * self.base.n + v]
    }
    fn palette(&self) -> Option<u8> {
        Some(self.palette)
    }
    fn induced_on(&self, mask: u64) -> Self {
        self.induced(mask)
    }
    fn from_labelled_edges(n: usize, palette: Option<u8>, edges: &[(usize, usize, u8)]) -> Self {
        let palette = palette.unwrap_or_else(|| edges.iter().map(|e| e.2).max().unwrap_or(1));
        let mut g = ColoredGraph::empty(n, palette);
        for &(u, v, c) in edges {
            g.base.add_edge(u, v);
            g.colors[u * n + v] = c;
            g.colors[v * n + u] = c;
        }
        g
    }
}

/// A plain or colored graph, as read from a file.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AnyGraph {
    Plain(Graph),
    Colored(ColoredGraph),
}

impl AnyGraph {
    pub fn order(&self) -> usize {
        self.base().order()
    }

    pub fn base(&self) -> &Graph {
        match self {
            AnyGraph::Plain(g) => g,
            AnyGraph::Colored(g) => g.base(),
        }
    }

    pub fn is_colored(&self) -> bool {
        matches!(self, AnyGraph::Colored(_))
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        match self {
            AnyGraph::Plain(g) => canonical_form(g),
            AnyGraph::Colored(g) => canonical_form(g),
        }
    }
}

impl From<Graph> for AnyGraph {
    fn from(g: Graph) -> Self {
        AnyGraph::Plain(g)
    }
}

impl From<ColoredGraph> for AnyGraph {
    fn from(g: ColoredGraph) -> Self {
        AnyGraph::Colored(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_constructions() {
        assert_eq!(Graph::complete(4).edge_count(), 6);
        assert_eq!(Graph::cycle(5).edge_count(), 5);
        assert_eq!(Graph::path(1).edge_count(), 0);
        let ladder = Graph::path(2).cartesian_product(&Graph::path(5));
        assert_eq!(ladder.order(), 10);
        assert_eq!(ladder.edge_count(), 13);
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(ColoredGraph::from_edges(3, 2, &[(0, 1, 3)]).is_err());
    }

    #[test]
    fn components_and_balls() {
        let g = Graph::cycle(4).disjoint_union(&Graph::path(3));
        assert_eq!(g.components(), vec![0b1111, 0b111_0000]);
        assert!(!g.is_connected());
        let c = Graph::cycle(12);
        assert_eq!(c.ball_mask(0, 2).count_ones(), 5);
        assert_eq!(c.distances_from(0)[6], Some(6));
    }

    #[test]
    fn colored_induced_keeps_colors() {
        let g = ColoredGraph::from_edges(3, 2, &[(0, 1, 1), (1, 2, 2)]).unwrap();
        let h = g.delete_vertex(0);
        assert_eq!(h.color(0, 1), Some(2));
        assert_eq!(g.color_class_sizes(), vec![1, 1]);
    }
}
