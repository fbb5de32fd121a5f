//! Type interning and per-card subgraph catalogs.
//!
//! Every isomorphism type that shows up during reconstruction is interned
//! once as an edge-colored type (plain decks use the single color 1). Cards
//! recur across decks of a sweep, so their catalogs are cached per card type.

use std::collections::BTreeMap;
use std::rc::Rc;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::graph::{canonical_form, canonical_form_from_labels, gf2_rank, AnyGraph, CanonicalForm, ColoredGraph, Deck, Graph};

pub type TypeId = u32;

/// What reconstruction needs to know about an interned type.
pub(crate) struct TypeInfo {
    pub graph: ColoredGraph,
    pub order: usize,
    pub edges: usize,
    /// Edge count per color, index `c - 1`.
    pub profile: Vec<u8>,
    /// Component orders, descending.
    pub component_orders: Vec<usize>,
    pub connected: bool,
    pub gf2_rank: usize,
}

impl TypeInfo {
    pub fn profile_in(&self, palette: usize) -> Vec<u8> {
        let mut p = self.profile.clone();
        p.resize(palette.max(p.len()), 0);
        p
    }
}

type Catalog = Rc<Vec<(TypeId, u64)>>;

/// Reusable reconstruction context. One per thread; all caches only grow.
#[derive(Default)]
pub struct Reconstructor {
    pub(crate) types: Vec<TypeInfo>,
    index: FxHashMap<CanonicalForm, TypeId>,
    labelled: FxHashMap<(u8, u8, u128), TypeId>,
    subgraph_catalogs: FxHashMap<(TypeId, usize), Catalog>,
    induced_catalogs: FxHashMap<TypeId, Catalog>,
    pub(crate) union_counts: FxHashMap<(Vec<TypeId>, TypeId), i128>,
}

/// Kelly-averaged counts `s(H, G)` for every type `H` met in the cards.
pub(crate) struct Census {
    pub n: usize,
    pub palette: usize,
    pub counts: BTreeMap<TypeId, u128>,
}

impl Census {
    pub fn get(&self, t: TypeId) -> u128 {
        self.counts.get(&t).copied().unwrap_or(0)
    }
}

impl Reconstructor {
    pub fn new() -> Self {
        Self::default()
    }

    pub(crate) fn info(&self, t: TypeId) -> &TypeInfo {
        &self.types[t as usize]
    }

    /// Intern a type given by a form of a colored (or plain) graph.
    pub(crate) fn intern_form(&mut self, form: &CanonicalForm) -> TypeId {
        if let Some(&t) = self.index.get(form) {
            return t;
        }
        let graph: ColoredGraph = form.decode(None);
        let colored = canonical_form(&graph);
        let t = self.intern_colored(colored, graph);
        self.index.insert(form.clone(), t);
        t
    }

    pub(crate) fn intern_graph(&mut self, g: &AnyGraph) -> TypeId {
        let colored = match g {
            AnyGraph::Plain(g) => ColoredGraph::monochrome(g),
            AnyGraph::Colored(g) => g.clone(),
        };
        let form = canonical_form(&colored);
        self.intern_form(&form)
    }

    fn intern_colored(&mut self, form: CanonicalForm, graph: ColoredGraph) -> TypeId {
        debug_assert!(form.is_colored());
        if let Some(&t) = self.index.get(&form) {
            return t;
        }
        // Store the canonical representative so later decodes agree.
        let graph: ColoredGraph = form.decode(Some(graph.palette().max(1)));
        let mut profile = Vec::new();
        for (_, _, c) in graph.edges() {
            let c = c as usize;
            if profile.len() < c {
                profile.resize(c, 0);
            }
            profile[c - 1] += 1;
        }
        let base: &Graph = graph.base();
        let mut component_orders: Vec<usize> = base.components().iter().map(|c| c.count_ones() as usize).collect();
        component_orders.sort_unstable_by(|a, b| b.cmp(a));
        let info = TypeInfo {
            order: graph.order(),
            edges: base.edge_count(),
            connected: component_orders.len() == 1,
            gf2_rank: gf2_rank(base),
            component_orders,
            profile,
            graph,
        };
        let t = self.types.len() as TypeId;
        self.types.push(info);
        self.index.insert(form, t);
        t
    }

    /// Type of the labelled graph on `k` vertices with the given row-major
    /// `k * k` label matrix.
    fn labelled_type(&mut self, k: usize, labels: &[u8]) -> TypeId {
        let max = labels.iter().copied().max().unwrap_or(0);
        let width = (8 - max.max(1).leading_zeros()) as usize;
        let pairs = k * k.saturating_sub(1) / 2;
        if pairs * width <= 128 {
            let mut key = 0u128;
            let mut idx = 0;
            for i in 0..k {
                for j in i + 1..k {
                    key |= (labels[i * k + j] as u128) << (idx * width);
                    idx += 1;
                }
            }
            let mkey = (k as u8, width as u8, key);
            if let Some(&t) = self.labelled.get(&mkey) {
                return t;
            }
            let t = self.labelled_type_slow(k, labels, max);
            self.labelled.insert(mkey, t);
            t
        } else {
            self.labelled_type_slow(k, labels, max)
        }
    }

    fn labelled_type_slow(&mut self, k: usize, labels: &[u8], max: u8) -> TypeId {
        let form = canonical_form_from_labels(k, labels, true);
        if let Some(&t) = self.index.get(&form) {
            return t;
        }
        let mut edges = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                if labels[i * k + j] != 0 {
                    edges.push((i, j, labels[i * k + j]));
                }
            }
        }
        let graph = ColoredGraph::from_edges(k, max.max(1), &edges).expect("labels form a simple graph");
        self.intern_colored(form, graph)
    }

    /// Type of the subgraph formed by the edges in `mask` and their ends.
    pub(crate) fn edge_subset_type(&mut self, edges: &[(usize, usize, u8)], mask: u64, labels: &mut Vec<u8>) -> TypeId {
        let mut verts = 0u64;
        for i in crate::graph::bits(mask) {
            verts |= 1 << edges[i].0 | 1 << edges[i].1;
        }
        let k = verts.count_ones() as usize;
        labels.clear();
        labels.resize(k * k, 0);
        for i in crate::graph::bits(mask) {
            let (u, v, c) = edges[i];
            let (a, b) = (compact(verts, u), compact(verts, v));
            labels[a * k + b] = c;
            labels[b * k + a] = c;
        }
        self.labelled_type(k, labels)
    }

    /// Card types of a deck with multiplicities.
    pub(crate) fn card_types(&mut self, d: &Deck) -> Vec<(TypeId, usize)> {
        d.cards().map(|(f, m)| (self.intern_form(f), m)).collect()
    }

    /// Subgraphs without isolated vertices of a card, at most `limit`
    /// edges, as (type, number of edge subsets).
    fn subgraph_catalog(&mut self, card: TypeId, limit: usize) -> Catalog {
        let m = self.info(card).edges;
        let limit = if limit >= m { usize::MAX } else { limit };
        if let Some(c) = self.subgraph_catalogs.get(&(card, limit)) {
            return c.clone();
        }
        let g = self.info(card).graph.clone();
        let edges = g.edges();
        assert!(edges.len() < 64, "card with {} edges is out of reach", edges.len());
        let mut counts: FxHashMap<TypeId, u64> = FxHashMap::default();
        let mut labels = Vec::new();
        for_each_subset_upto(edges.len(), limit.min(edges.len()), &mut |mask| {
            if mask != 0 {
                let t = self.edge_subset_type(&edges, mask, &mut labels);
                *counts.entry(t).or_insert(0) += 1;
            }
        });
        let mut list: Vec<_> = counts.into_iter().collect();
        list.sort_unstable();
        let c = Rc::new(list);
        self.subgraph_catalogs.insert((card, limit), c.clone());
        c
    }

    /// Induced subgraphs of a card on every vertex subset (empty included).
    fn induced_catalog(&mut self, card: TypeId) -> Catalog {
        if let Some(c) = self.induced_catalogs.get(&card) {
            return c.clone();
        }
        let g = self.info(card).graph.clone();
        let k = g.order();
        assert!(k < 32, "card with {k} vertices is out of reach");
        let mut counts: FxHashMap<TypeId, u64> = FxHashMap::default();
        let mut labels = Vec::new();
        for s in 0u64..1 << k {
            let verts: Vec<usize> = crate::graph::bits(s).collect();
            let j = verts.len();
            labels.clear();
            labels.resize(j * j, 0);
            for (a, &u) in verts.iter().enumerate() {
                for (b, &v) in verts.iter().enumerate().skip(a + 1) {
                    if let Some(c) = g.color(u, v) {
                        labels[a * j + b] = c;
                        labels[b * j + a] = c;
                    }
                }
            }
            let t = self.labelled_type(j, &labels);
            *counts.entry(t).or_insert(0) += 1;
        }
        let mut list: Vec<_> = counts.into_iter().collect();
        list.sort_unstable();
        let c = Rc::new(list);
        self.induced_catalogs.insert(card, c.clone());
        c
    }

    /// Kelly counts of all subgraph types (no isolated vertices, at most
    /// `limit` edges) of the graph behind `d`.
    pub(crate) fn subgraph_census(&mut self, d: &Deck, limit: usize) -> Result<Census> {
        let cards = self.card_types(d);
        let mut sums: BTreeMap<TypeId, u128> = BTreeMap::new();
        for (card, mult) in cards {
            for &(t, c) in self.subgraph_catalog(card, limit).iter() {
                *sums.entry(t).or_insert(0) += c as u128 * mult as u128;
            }
        }
        self.average(d, sums)
    }

    /// Kelly counts of all induced subgraph types on fewer than `n` vertices.
    pub(crate) fn induced_census(&mut self, d: &Deck) -> Result<Census> {
        let cards = self.card_types(d);
        let mut sums: BTreeMap<TypeId, u128> = BTreeMap::new();
        for (card, mult) in cards {
            for &(t, c) in self.induced_catalog(card).iter() {
                *sums.entry(t).or_insert(0) += c as u128 * mult as u128;
            }
        }
        self.average(d, sums)
    }

    fn average(&self, d: &Deck, sums: BTreeMap<TypeId, u128>) -> Result<Census> {
        let n = d.order();
        let mut counts = BTreeMap::new();
        for (t, s) in sums {
            let order = self.info(t).order;
            let div = (n - order) as u128;
            if s % div != 0 {
                return Err(Error::inconsistent(format!(
                    "card counts of a {order}-vertex type sum to {s}, not a multiple of {div}"
                )));
            }
            counts.insert(t, s / div);
        }
        Ok(Census {
            n,
            palette: d.palette().unwrap_or(1) as usize,
            counts,
        })
    }

    /// The single-edge type of color `c`.
    pub(crate) fn edge_type(&mut self, c: u8) -> TypeId {
        let g = ColoredGraph::from_edges(2, c, &[(0, 1, c)]).expect("valid edge");
        self.intern_graph(&AnyGraph::Colored(g))
    }
}

fn compact(verts: u64, v: usize) -> usize {
    (verts & ((1u64 << v) - 1)).count_ones() as usize
}

/// Every subset of `0..m` with at most `limit` elements, as bit masks.
pub(crate) fn for_each_subset_upto(m: usize, limit: usize, f: &mut impl FnMut(u64)) {
    if limit >= m {
        for mask in 0..(1u64 << m) {
            f(mask);
        }
        return;
    }
    fn rec(start: usize, m: usize, left: usize, mask: u64, f: &mut impl FnMut(u64)) {
        f(mask);
        if left == 0 {
            return;
        }
        for i in start..m {
            rec(i + 1, m, left - 1, mask | 1 << i, f);
        }
    }
    rec(0, m, limit, 0, f);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounded_subsets() {
        let mut seen = Vec::new();
        for_each_subset_upto(4, 2, &mut |m| seen.push(m));
        assert_eq!(seen.len(), 1 + 4 + 6);
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 11);
        let mut all = 0;
        for_each_subset_upto(3, 3, &mut |_| all += 1);
        assert_eq!(all, 8);
    }

    #[test]
    fn plain_and_colored_forms_share_a_type() {
        let mut r = Reconstructor::new();
        let p3 = Graph::path(3);
        let a = r.intern_form(&canonical_form(&p3));
        let b = r.intern_graph(&AnyGraph::Plain(p3.clone()));
        let c = r.intern_graph(&AnyGraph::Colored(ColoredGraph::monochrome(&p3)));
        assert_eq!(a, b);
        assert_eq!(b, c);
        assert_eq!(r.info(a).component_orders, vec![3]);
        assert_eq!(r.info(a).profile, vec![2]);
    }

    #[test]
    fn census_of_c4() {
        let mut r = Reconstructor::new();
        let d = crate::graph::deck(&Graph::cycle(4)).unwrap();
        let census = r.subgraph_census(&d, usize::MAX).unwrap();
        let k2 = r.edge_type(1);
        let p3 = r.intern_graph(&AnyGraph::Plain(Graph::path(3)));
        assert_eq!(census.get(k2), 4);
        assert_eq!(census.get(p3), 4);
        assert_eq!(census.counts.len(), 2);
    }
}
