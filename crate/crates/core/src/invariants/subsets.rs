//! Shared edge-subset machinery for the subset expansions.

use crate::graph::{bits, full_mask, ColoredGraph, Graph};

/// The edges of a graph in a fixed order, addressable by bit masks.
pub(crate) struct EdgeSet {
    pub n: usize,
    pub ends: Vec<(usize, usize)>,
    /// Edge masks per color, index 0 is color 1.
    pub color_masks: Vec<u64>,
}

impl EdgeSet {
    pub fn plain(g: &Graph) -> Self {
        let ends = g.edges();
        let all = mask_of_len(ends.len());
        EdgeSet::checked(g.order(), ends, vec![all])
    }

    pub fn colored(g: &ColoredGraph) -> Self {
        let edges = g.edges();
        let mut color_masks = vec![0u64; g.palette() as usize];
        for (i, &(_, _, c)) in edges.iter().enumerate() {
            color_masks[c as usize - 1] |= 1 << i;
        }
        EdgeSet::checked(g.order(), edges.iter().map(|&(u, v, _)| (u, v)).collect(), color_masks)
    }

    fn checked(n: usize, ends: Vec<(usize, usize)>, color_masks: Vec<u64>) -> Self {
        assert!(ends.len() < 64, "subset expansion over {} edges is out of reach", ends.len());
        EdgeSet { n, ends, color_masks }
    }

    pub fn len(&self) -> usize {
        self.ends.len()
    }

    pub fn all(&self) -> u64 {
        mask_of_len(self.ends.len())
    }

    pub fn adjacency(&self, mask: u64, adj: &mut [u64; 64]) {
        adj[..self.n].fill(0);
        for i in bits(mask) {
            let (u, v) = self.ends[i];
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
    }

    /// Vertices touched by the edges in `mask`.
    pub fn covered(&self, mask: u64) -> u64 {
        bits(mask).fold(0, |acc, i| acc | 1 << self.ends[i].0 | 1 << self.ends[i].1)
    }

    /// Component sizes of the spanning subgraph `(V, mask)`, added to
    /// `hist` (indexed by size). Returns the component count.
    pub fn component_histogram(&self, mask: u64, hist: &mut [u8]) -> usize {
        let mut adj = [0u64; 64];
        self.adjacency(mask, &mut adj);
        let mut count = 0;
        for comp in flood(&adj, full_mask(self.n)) {
            hist[comp.count_ones() as usize] += 1;
            count += 1;
        }
        count
    }

    pub fn component_count(&self, mask: u64) -> usize {
        let mut adj = [0u64; 64];
        self.adjacency(mask, &mut adj);
        flood(&adj, full_mask(self.n)).count()
    }

    pub fn color_counts(&self, mask: u64) -> impl Iterator<Item = u8> + '_ {
        self.color_masks.iter().map(move |c| (c & mask).count_ones() as u8)
    }
}

fn mask_of_len(m: usize) -> u64 {
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

/// Components of the vertex set `within` under `adj`, as masks.
pub(crate) fn flood(adj: &[u64], within: u64) -> impl Iterator<Item = u64> + '_ {
    let mut unseen = within;
    std::iter::from_fn(move || {
        if unseen == 0 {
            return None;
        }
        let v = unseen.trailing_zeros() as usize;
        let mut comp = 1u64 << v;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            for u in bits(frontier) {
                next |= adj[u];
            }
            next &= within & !comp;
            comp |= next;
            frontier = next;
        }
        unseen &= !comp;
        Some(comp)
    })
}

/// Visit every submask of `mask`, the empty one included.
pub(crate) fn for_each_submask(mask: u64, mut f: impl FnMut(u64)) {
    let mut s = mask;
    loop {
        f(s);
        if s == 0 {
            break;
        }
        s = (s - 1) & mask;
    }
}
