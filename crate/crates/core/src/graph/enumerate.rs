//! One representative per isomorphism class, by canonical vertex
//! augmentation: a child is kept only when deleting its canonically last
//! vertex gives back its parent.

use rustc_hash::FxHashSet;

use super::canon::last_refined_cell;
use super::{canonical_form, canonical_labelling, full_mask, CanonicalForm, Graph};
use crate::error::{Error, Result};

pub const DEFAULT_ENUMERATION_LIMIT: usize = 9;

/// The order cap, overridable with `DECKWRIGHT_MAX_N`.
pub fn max_order_from_env() -> usize {
    std::env::var("DECKWRIGHT_MAX_N")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_graphs(n: usize, connected_only: bool) -> Result<GraphStream> {
    enumerate_graphs_with_limit(n, connected_only, max_order_from_env())
}

pub fn enumerate_graphs_with_limit(n: usize, connected_only: bool, limit: usize) -> Result<GraphStream> {
    if n > limit || n > 16 {
        return Err(Error::OrderLimit { n, limit: limit.min(16) });
    }
    let parents = if n == 0 {
        Vec::new()
    } else {
        let mut level = vec![Graph::empty(0)];
        for k in 1..n {
            level = Children::new(k, level).collect();
        }
        level
    };
    Ok(GraphStream {
        connected_only,
        inner: if n == 0 { None } else { Some(Children::new(n, parents)) },
        emitted_empty: false,
    })
}

/// Graphs of one order, generated lazily from the previous level.
pub struct GraphStream {
    connected_only: bool,
    inner: Option<Children>,
    emitted_empty: bool,
}

impl Iterator for GraphStream {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        let Some(inner) = self.inner.as_mut() else {
            if self.emitted_empty {
                return None;
            }
            self.emitted_empty = true;
            return Some(Graph::empty(0));
        };
        loop {
            let g = inner.next()?;
            if !self.connected_only || g.is_connected() {
                return Some(g);
            }
        }
    }
}

struct Children {
    n: usize,
    parents: Vec<Graph>,
    parent_forms: Vec<CanonicalForm>,
    idx: usize,
    subset: u64,
    seen: FxHashSet<CanonicalForm>,
}

impl Children {
    fn new(n: usize, parents: Vec<Graph>) -> Self {
        let parent_forms = parents.iter().map(canonical_form).collect();
        Children {
            n,
            parents,
            parent_forms,
            idx: 0,
            subset: 0,
            seen: FxHashSet::default(),
        }
    }
}

impl Iterator for Children {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        let new = self.n - 1;
        while self.idx < self.parents.len() {
            let parent = &self.parents[self.idx];
            if self.subset >> new != 0 {
                self.idx += 1;
                self.subset = 0;
                self.seen.clear();
                continue;
            }
            let s = self.subset;
            self.subset += 1;
            let mut adj = Vec::with_capacity(self.n);
            for v in 0..new {
                adj.push(parent.neighbors(v) | (s >> v & 1) << new);
            }
            adj.push(s);
            let child = Graph::from_adjacency(self.n, adj);
            let new_deg = s.count_ones() as usize;
            if (0..new).any(|v| child.degree(v) > new_deg) {
                continue;
            }
            if last_refined_cell(&child) >> new & 1 == 0 {
                continue;
            }
            let (form, order) = canonical_labelling(&child);
            let last = order[self.n - 1];
            if last != new {
                let reduced = child.induced(full_mask(self.n) & !(1 << last));
                if canonical_form(&reduced) != self.parent_forms[self.idx] {
                    continue;
                }
            }
            if self.seen.insert(form) {
                return Some(child);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn known_counts() {
        // OEIS A000088 and A001349.
        let all = [1, 1, 2, 4, 11, 34, 156, 1044];
        let connected = [1, 1, 1, 2, 6, 21, 112, 853];
        for n in 0..all.len() {
            assert_eq!(enumerate_graphs_with_limit(n, false, 9).unwrap().count(), all[n], "n={n}");
            assert_eq!(enumerate_graphs_with_limit(n, true, 9).unwrap().count(), connected[n], "n={n}");
        }
    }

    #[test]
    fn brute_force_classes_at_order_4() {
        let n = 4;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let mut classes = HashSet::new();
        for m in 0u32..1 << pairs.len() {
            let e: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &p)| p).collect();
            classes.insert(canonical_form(&Graph::from_edges(n, &e).unwrap()));
        }
        let generated: HashSet<_> = enumerate_graphs_with_limit(n, false, 9).unwrap().map(|g| canonical_form(&g)).collect();
        assert_eq!(classes, generated);
    }

    #[test]
    fn limit_is_enforced() {
        assert!(matches!(enumerate_graphs_with_limit(10, false, 9), Err(Error::OrderLimit { .. })));
    }
}
