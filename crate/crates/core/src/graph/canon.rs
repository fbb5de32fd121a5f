//! Canonical forms by partition refinement and a search tree over
//! individualised vertices, pruned with the automorphisms discovered along
//! the way.

use std::fmt;

use super::{bits, full_mask, EdgeLabelled, Graph};

/// Isomorphism-complete encoding of a (possibly colored, possibly pointed)
/// graph. Two graphs have equal forms iff they are isomorphic, preserving
/// edge colors and the root.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: u16,
    colored: bool,
    pointed: bool,
    /// Edge labels of the canonically relabelled graph, pairs `(i, j)` with
    /// `i < j` in row-major order; 0 means no edge.
    code: Box<[u8]>,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.n as usize
    }

    pub fn is_colored(&self) -> bool {
        self.colored
    }

    /// Pointed forms always carry their root at vertex 0.
    pub fn is_pointed(&self) -> bool {
        self.pointed
    }

    pub fn code(&self) -> &[u8] {
        &self.code
    }

    pub fn edge_count(&self) -> usize {
        self.code.iter().filter(|&&c| c != 0).count()
    }

    /// Canonical edges `(i, j, label)`.
    pub fn labelled_edges(&self) -> Vec<(usize, usize, u8)> {
        let n = self.order();
        let mut out = Vec::new();
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.code[k] != 0 {
                    out.push((i, j, self.code[k]));
                }
                k += 1;
            }
        }
        out
    }

    /// The canonical representative itself.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::empty(self.order());
        for (i, j, _) in self.labelled_edges() {
            g.add_edge(i, j);
        }
        g
    }

    /// The canonical representative with its labels.
    pub fn decode<G: EdgeLabelled>(&self, palette: Option<u8>) -> G {
        G::from_labelled_edges(self.order(), palette, &self.labelled_edges())
    }

    pub(crate) fn from_parts(n: usize, colored: bool, pointed: bool, code: Vec<u8>) -> Self {
        debug_assert_eq!(code.len(), n * n.saturating_sub(1) / 2);
        CanonicalForm {
            n: n as u16,
            colored,
            pointed,
            code: code.into_boxed_slice(),
        }
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form(n={}", self.n)?;
        if self.pointed {
            write!(f, ", root=0")?;
        }
        write!(f, ", edges=[")?;
        for (i, (u, v, c)) in self.labelled_edges().into_iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if self.colored {
                write!(f, "{u}-{v}:{c}")?;
            } else {
                write!(f, "{u}-{v}")?;
            }
        }
        write!(f, "])")
    }
}

pub fn canonical_form<G: EdgeLabelled>(g: &G) -> CanonicalForm {
    canonical_labelling(g).0
}

/// Canonical form together with the canonical order: `order[i]` is the
/// vertex of `g` placed at canonical position `i`.
pub fn canonical_labelling<G: EdgeLabelled>(g: &G) -> (CanonicalForm, Vec<usize>) {
    let n = g.order();
    let labels = label_matrix(g);
    let initial = if n == 0 { vec![] } else { vec![full_mask(n)] };
    let canon = canonize(n, &labels, initial);
    (
        CanonicalForm::from_parts(n, g.palette().is_some(), false, canon.code),
        canon.order,
    )
}

/// Canonical form of `g` rooted at `root`; isomorphisms must fix the root.
pub fn pointed_canonical_form<G: EdgeLabelled>(g: &G, root: usize) -> CanonicalForm {
    let n = g.order();
    let labels = label_matrix(g);
    let rest = full_mask(n) & !(1 << root);
    let initial = if rest == 0 { vec![1 << root] } else { vec![1 << root, rest] };
    let canon = canonize(n, &labels, initial);
    debug_assert_eq!(canon.order[0], root);
    CanonicalForm::from_parts(n, g.palette().is_some(), true, canon.code)
}

/// Canonical form straight from a label matrix (`n * n`, symmetric, 0 = no
/// edge). Used by the hot loops that build graphs on the fly.
pub(crate) fn canonical_form_from_labels(n: usize, labels: &[u8], colored: bool) -> CanonicalForm {
    let initial = if n == 0 { vec![] } else { vec![full_mask(n)] };
    let canon = canonize(n, labels, initial);
    CanonicalForm::from_parts(n, colored, false, canon.code)
}

fn label_matrix<G: EdgeLabelled>(g: &G) -> Vec<u8> {
    let n = g.order();
    let mut labels = vec![0u8; n * n];
    for u in 0..n {
        for v in bits(g.base().neighbors(u)) {
            labels[u * n + v] = g.label(u, v);
        }
    }
    labels
}

/// Last cell of the equitable refinement of the unit partition. The
/// canonically last vertex always lies in it.
pub(crate) fn last_refined_cell(g: &Graph) -> u64 {
    let n = g.order();
    if n == 0 {
        return 0;
    }
    let search = Search {
        n,
        labels: &[],
        layers: vec![g.adjacency().to_vec()],
        first: None,
        best: None,
        autos: Vec::new(),
    };
    let mut cells = vec![full_mask(n)];
    search.refine(&mut cells);
    *cells.last().expect("nonempty partition")
}

/// Number of automorphisms, from the canonical search.
pub fn automorphism_count<G: EdgeLabelled>(g: &G) -> u64 {
    super::count::count_maps(g, g, super::CountMode::Induced)
}

pub(crate) struct Canon {
    pub order: Vec<usize>,
    pub code: Vec<u8>,
}

pub(crate) fn canonize(n: usize, labels: &[u8], initial: Vec<u64>) -> Canon {
    if n == 0 {
        return Canon {
            order: vec![],
            code: vec![],
        };
    }
    let mut layer_labels: Vec<u8> = labels.iter().copied().filter(|&c| c != 0).collect();
    layer_labels.sort_unstable();
    layer_labels.dedup();
    let layers: Vec<Vec<u64>> = layer_labels
        .iter()
        .map(|&c| {
            (0..n)
                .map(|u| {
                    let row = &labels[u * n..(u + 1) * n];
                    row.iter()
                        .enumerate()
                        .filter(|(_, &l)| l == c)
                        .fold(0u64, |m, (v, _)| m | 1 << v)
                })
                .collect()
        })
        .collect();
    let mut search = Search {
        n,
        labels,
        layers,
        first: None,
        best: None,
        autos: Vec::new(),
    };
    let mut cells = initial;
    search.refine(&mut cells);
    let mut path = Vec::new();
    search.explore(cells, &mut path);
    let best = search.best.expect("search visits at least one leaf");
    Canon {
        order: best.order,
        code: best.code,
    }
}

struct Leaf {
    code: Vec<u8>,
    order: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'a> {
    n: usize,
    labels: &'a [u8],
    layers: Vec<Vec<u64>>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    /// Automorphisms as images `v -> auto[v]`.
    autos: Vec<Vec<u8>>,
}

const MAX_STORED_AUTOS: usize = 128;

impl Search<'_> {
    /// Refine an ordered partition (cells as vertex masks) to the coarsest
    /// equitable refinement. Cells split in place, sub-cells ordered by their
    /// neighbor count into the splitter, so the result is label-invariant.
    fn refine(&self, cells: &mut Vec<u64>) {
        let mut groups: Vec<(u32, u64)> = Vec::with_capacity(self.n);
        loop {
            let mut changed = false;
            let mut s = 0;
            while s < cells.len() {
                let splitter = cells[s];
                for layer in &self.layers {
                    let mut i = 0;
                    while i < cells.len() {
                        let cell = cells[i];
                        if cell & (cell - 1) == 0 {
                            i += 1;
                            continue;
                        }
                        groups.clear();
                        for v in bits(cell) {
                            let c = (layer[v] & splitter).count_ones();
                            match groups.iter_mut().find(|g| g.0 == c) {
                                Some(g) => g.1 |= 1 << v,
                                None => groups.push((c, 1 << v)),
                            }
                        }
                        if groups.len() == 1 {
                            i += 1;
                            continue;
                        }
                        groups.sort_unstable_by_key(|g| g.0);
                        let k = groups.len();
                        cells.splice(i..=i, groups.iter().map(|g| g.1));
                        i += k;
                        changed = true;
                    }
                }
                s += 1;
            }
            if !changed {
                break;
            }
        }
    }

    fn leaf_code(&self, order: &[usize]) -> Vec<u8> {
        let n = self.n;
        let mut code = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            let row = &self.labels[order[i] * n..(order[i] + 1) * n];
            for &v in &order[i + 1..] {
                code.push(row[v]);
            }
        }
        code
    }

    /// Returns `Some(level)` to abandon every node deeper than `level`.
    fn explore(&mut self, cells: Vec<u64>, path: &mut Vec<usize>) -> Option<usize> {
        if cells.len() == self.n {
            return self.visit_leaf(&cells, path);
        }
        let (target, tc) = cells
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(i, c)| (c.count_ones(), *i))
            .expect("non-discrete partition has a non-singleton cell");
        let mut explored = 0u64;
        for w in bits(tc) {
            if explored != 0 && self.equivalent_to_explored(w, explored, path) {
                continue;
            }
            explored |= 1 << w;
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(1 << w);
            child.push(tc & !(1 << w));
            child.extend_from_slice(&cells[target + 1..]);
            self.refine(&mut child);
            path.push(w);
            let signal = self.explore(child, path);
            path.pop();
            if let Some(level) = signal {
                if level < path.len() {
                    return Some(level);
                }
            }
        }
        None
    }

    fn visit_leaf(&mut self, cells: &[u64], path: &[usize]) -> Option<usize> {
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let code = self.leaf_code(&order);
        let leaf = Leaf {
            code,
            order,
            path: path.to_vec(),
        };
        if self.first.is_none() {
            self.first = Some(Leaf {
                code: leaf.code.clone(),
                order: leaf.order.clone(),
                path: leaf.path.clone(),
            });
            self.best = Some(leaf);
            return None;
        }
        for reference in [self.first.as_ref(), self.best.as_ref()].into_iter().flatten() {
            if reference.code == leaf.code {
                let mut auto = vec![0u8; self.n];
                for (a, b) in reference.order.iter().zip(&leaf.order) {
                    auto[*a] = *b as u8;
                }
                let maps_path = reference.path.len() == leaf.path.len()
                    && reference.path.iter().zip(&leaf.path).all(|(&a, &b)| auto[a] as usize == b);
                let common = reference
                    .path
                    .iter()
                    .zip(&leaf.path)
                    .take_while(|(a, b)| a == b)
                    .count();
                if self.autos.len() < MAX_STORED_AUTOS {
                    self.autos.push(auto);
                }
                return maps_path.then_some(common);
            }
        }
        if leaf.code < self.best.as_ref().unwrap().code {
            self.best = Some(leaf);
        }
        None
    }

    /// Is `w` in the orbit of an explored vertex under the stored
    /// automorphisms that fix `path` pointwise?
    fn equivalent_to_explored(&self, w: usize, explored: u64, path: &[usize]) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for auto in &self.autos {
            if path.iter().all(|&p| auto[p] as usize == p) {
                any = true;
                for v in 0..self.n {
                    let (a, b) = (find(&mut parent, v), find(&mut parent, auto[v] as usize));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, w);
        bits(explored).any(|e| find(&mut parent, e) == root)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ColoredGraph;

    fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
        if a.order() != b.order() || a.edge_count() != b.edge_count() {
            return false;
        }
        let n = a.order();
        let mut perm: Vec<usize> = (0..n).collect();
        fn rec(i: usize, perm: &mut Vec<usize>, a: &Graph, b: &Graph) -> bool {
            let n = perm.len();
            if i == n {
                return a.edges().iter().all(|&(u, v)| b.has_edge(perm[u], perm[v]));
            }
            for j in i..n {
                perm.swap(i, j);
                if rec(i + 1, perm, a, b) {
                    return true;
                }
                perm.swap(i, j);
            }
            false
        }
        rec(0, &mut perm, a, b)
    }

    #[test]
    fn relabelled_path_has_same_form() {
        let p = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let q = Graph::from_edges(3, &[(1, 0), (0, 2)]).unwrap();
        assert_eq!(canonical_form(&p), canonical_form(&q));
        assert_ne!(canonical_form(&Graph::complete(3)), canonical_form(&p));
    }

    #[test]
    fn forms_match_brute_force_on_all_labelled_graphs_of_order_5() {
        // Every labelled graph on 5 vertices against a fixed sample of pairs.
        let n = 5;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let graphs: Vec<Graph> = (0u32..1 << pairs.len())
            .step_by(7)
            .map(|m| {
                let e: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &p)| p).collect();
                Graph::from_edges(n, &e).unwrap()
            })
            .collect();
        let forms: Vec<_> = graphs.iter().map(canonical_form).collect();
        for i in 0..graphs.len() {
            for j in i..graphs.len() {
                assert_eq!(forms[i] == forms[j], brute_isomorphic(&graphs[i], &graphs[j]), "{i} {j}");
            }
        }
    }

    #[test]
    fn symmetric_graphs_terminate_quickly() {
        let k = Graph::complete(30);
        let f = canonical_form(&k);
        assert_eq!(f.edge_count(), 435);
        let c = Graph::cycle(40);
        assert_eq!(canonical_form(&c).to_graph().edge_count(), 40);
        let e = Graph::empty(20);
        assert_eq!(canonical_form(&e).edge_count(), 0);
    }

    #[test]
    fn labelling_reproduces_form() {
        let g = Graph::from_edges(5, &[(0, 3), (3, 4), (4, 1), (1, 2)]).unwrap();
        let (form, order) = canonical_labelling(&g);
        let mut pos = vec![0; 5];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        assert_eq!(canonical_form(&g.permuted(&pos)), form);
        assert_eq!(g.permuted(&pos), form.to_graph());
    }

    #[test]
    fn colors_distinguish_forms() {
        let a = ColoredGraph::from_edges(3, 2, &[(0, 1, 1), (1, 2, 2)]).unwrap();
        let b = ColoredGraph::from_edges(3, 2, &[(0, 1, 2), (1, 2, 1)]).unwrap();
        let c = ColoredGraph::from_edges(3, 2, &[(0, 1, 1), (1, 2, 1)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_ne!(canonical_form(&a), canonical_form(&c));
        assert_ne!(canonical_form(&c), canonical_form(c.base()));
    }

    #[test]
    fn pointed_forms_respect_root() {
        let p = Graph::path(3);
        assert_ne!(pointed_canonical_form(&p, 0), pointed_canonical_form(&p, 1));
        assert_eq!(pointed_canonical_form(&p, 0), pointed_canonical_form(&p, 2));
        let f = pointed_canonical_form(&p, 1);
        assert_eq!(f.to_graph().degree(0), 2);
    }
}
