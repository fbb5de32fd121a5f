//! Spanning subgraph counts from Kelly counts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::catalog::{Census, Reconstructor, TypeId};
use crate::error::{Error, Result};

impl Reconstructor {
    /// Number of spanning subgraphs of the graph behind `census` whose
    /// components are exactly the parts of `parts` (sorted type ids, all
    /// connected with at least two vertices, orders summing to `n`).
    pub(crate) fn spanning_disconnected(&mut self, parts: &[TypeId], census: &Census) -> Result<BigInt> {
        let n = census.n;
        let mut product = BigInt::from(1);
        for &f in parts {
            let s = census.get(f);
            if s == 0 {
                return Ok(BigInt::zero());
            }
            product *= BigInt::from(s);
        }
        let total_edges: usize = parts.iter().map(|&f| self.info(f).edges).sum();
        let max_edges = parts.iter().map(|&f| self.info(f).edges).max().unwrap_or(0);
        let max_order = parts.iter().map(|&f| self.info(f).order).max().unwrap_or(0);
        let candidates: Vec<(TypeId, u128)> = census
            .counts
            .iter()
            .filter(|&(&w, _)| {
                let info = self.info(w);
                info.order < n && info.edges <= total_edges && info.edges >= max_edges && info.order >= max_order
            })
            .map(|(&w, &s)| (w, s))
            .collect();
        let mut overlap = BigInt::zero();
        for (w, s) in candidates {
            let ways = self.union_count(parts, w);
            if ways != 0 {
                overlap += BigInt::from(ways) * BigInt::from(s);
            }
        }
        let mut symmetry = BigInt::from(1);
        let mut i = 0;
        while i < parts.len() {
            let j = parts[i..].iter().take_while(|&&p| p == parts[i]).count();
            for k in 2..=j {
                symmetry *= k;
            }
            i += j;
        }
        let (q, r) = (product - overlap).div_rem(&symmetry);
        if !r.is_zero() || q.is_negative() {
            return Err(Error::inconsistent("spanning subgraph count is not a non-negative integer"));
        }
        Ok(q)
    }

    /// Ordered tuples `(X_1, ..., X_t)` of subgraphs of `w` with `X_i` of
    /// type `parts[i]` whose union is all of `w`.
    fn union_count(&mut self, parts: &[TypeId], w: TypeId) -> i128 {
        let key = (parts.to_vec(), w);
        if let Some(&c) = self.union_counts.get(&key) {
            return c;
        }
        let g = self.info(w).graph.clone();
        let edges = g.edges();
        let m = edges.len();
        // Edge masks of the copies of each distinct part type inside w.
        let mut within: BTreeMap<TypeId, Vec<i128>> = BTreeMap::new();
        for &f in parts {
            if within.contains_key(&f) {
                continue;
            }
            let fe = self.info(f).edges;
            let mut table = vec![0i128; 1 << m];
            let mut labels = Vec::new();
            for mask in masks_with_popcount(m, fe) {
                if self.edge_subset_type(&edges, mask, &mut labels) == f {
                    table[mask as usize] += 1;
                }
            }
            // Subset sums: copies contained in each edge set.
            for b in 0..m {
                for mask in 0..1usize << m {
                    if mask >> b & 1 == 1 {
                        table[mask] += table[mask ^ 1 << b];
                    }
                }
            }
            within.insert(f, table);
        }
        let mut total = 0i128;
        for t in 0..1usize << m {
            let mut prod = 1i128;
            for f in parts {
                prod *= within[f][t];
                if prod == 0 {
                    break;
                }
            }
            if (m - t.count_ones() as usize) % 2 == 0 {
                total += prod;
            } else {
                total -= prod;
            }
        }
        self.union_counts.insert(key, total);
        total
    }

    /// All multisets of at least two types drawn from `pool` (connected,
    /// order at least 2) whose orders sum to `n`, as sorted id lists.
    pub(crate) fn component_multisets(&self, pool: &[TypeId], n: usize) -> Vec<Vec<TypeId>> {
        let mut pool: Vec<TypeId> = pool.to_vec();
        pool.sort_unstable();
        pool.dedup();
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.multisets_rec(&pool, 0, n, &mut current, &mut out);
        out
    }

    fn multisets_rec(&self, pool: &[TypeId], start: usize, left: usize, current: &mut Vec<TypeId>, out: &mut Vec<Vec<TypeId>>) {
        if left == 0 {
            if current.len() >= 2 {
                out.push(current.clone());
            }
            return;
        }
        for i in start..pool.len() {
            let order = self.info(pool[i]).order;
            if order <= left {
                current.push(pool[i]);
                self.multisets_rec(pool, i, left - order, current, out);
                current.pop();
            }
        }
    }

    /// Connected types with at least two vertices present in the census.
    pub(crate) fn connected_pool(&self, census: &Census) -> Vec<TypeId> {
        census
            .counts
            .keys()
            .copied()
            .filter(|&t| {
                let info = self.info(t);
                info.connected && info.order >= 2
            })
            .collect()
    }

    /// Edge counts per color of the graph behind the census.
    pub(crate) fn color_class_sizes(&mut self, census: &Census) -> Vec<u128> {
        (1..=census.palette as u8)
            .map(|c| {
                let t = self.edge_type(c);
                census.get(t)
            })
            .collect()
    }

    /// Connected spanning subgraph counts for every color profile, plus the
    /// non-spanning and disconnected-spanning totals by profile. Only
    /// profiles with at most `max_edges` edges are covered; the census must
    /// include every subgraph type up to that size.
    pub(crate) fn spanning_tables(&mut self, census: &Census, max_edges: usize) -> Result<SpanningTables> {
        let n = census.n;
        let palette = census.palette;
        let mut nonspanning: BTreeMap<Vec<u8>, BigInt> = BTreeMap::new();
        for (&h, &s) in &census.counts {
            let info = self.info(h);
            if info.edges > 0 && info.order < n {
                *nonspanning.entry(info.profile_in(palette)).or_default() += BigInt::from(s);
            }
        }
        let pool = self.connected_pool(census);
        let mut disconnected: Vec<(Vec<TypeId>, BigInt)> = Vec::new();
        let mut disconnected_by_profile: BTreeMap<Vec<u8>, BigInt> = BTreeMap::new();
        for parts in self.component_multisets(&pool, n) {
            if parts.iter().map(|&f| self.info(f).edges).sum::<usize>() > max_edges {
                continue;
            }
            let count = self.spanning_disconnected(&parts, census)?;
            if count.is_zero() {
                continue;
            }
            let mut profile = vec![0u8; palette];
            for &f in &parts {
                for (p, q) in profile.iter_mut().zip(self.info(f).profile_in(palette)) {
                    *p += q;
                }
            }
            *disconnected_by_profile.entry(profile).or_default() += &count;
            disconnected.push((parts, count));
        }
        let sizes = self.color_class_sizes(census);
        let mut connected = BTreeMap::new();
        let mut profile = vec![0u8; palette];
        loop {
            let mut total = BigInt::from(1);
            for (&a, &m) in profile.iter().zip(&sizes) {
                total *= num_integer::binomial(BigInt::from(m), BigInt::from(a));
            }
            if profile.iter().all(|&a| a == 0) {
                total -= 1;
            }
            if let Some(v) = nonspanning.get(&profile) {
                total -= v;
            }
            if let Some(v) = disconnected_by_profile.get(&profile) {
                total -= v;
            }
            let edges: usize = profile.iter().map(|&a| a as usize).sum();
            if edges > max_edges {
                total = BigInt::zero();
            }
            if total.is_negative() || (edges + 1 < n && !total.is_zero()) {
                return Err(Error::inconsistent(format!(
                    "connected spanning count {total} for color profile {profile:?}"
                )));
            }
            if !total.is_zero() {
                connected.insert(profile.clone(), total);
            }
            // Next profile in mixed radix.
            let mut i = 0;
            loop {
                if i == palette {
                    return Ok(SpanningTables {
                        nonspanning,
                        disconnected,
                        connected,
                    });
                }
                if (profile[i] as u128) < sizes[i] {
                    profile[i] += 1;
                    break;
                }
                profile[i] = 0;
                i += 1;
            }
        }
    }
}

pub(crate) struct SpanningTables {
    pub nonspanning: BTreeMap<Vec<u8>, BigInt>,
    pub disconnected: Vec<(Vec<TypeId>, BigInt)>,
    pub connected: BTreeMap<Vec<u8>, BigInt>,
}

fn masks_with_popcount(m: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << m;
    let mut next = if k == 0 {
        Some(0)
    } else if k > m {
        None
    } else {
        Some((1u64 << k) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        if cur >= limit {
            return None;
        }
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack.
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            Some((((r ^ cur) >> 2) / c) | r)
        };
        Some(cur)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn popcount_masks() {
        let v: Vec<u64> = masks_with_popcount(4, 2).collect();
        assert_eq!(v.len(), 6);
        assert!(v.iter().all(|m| m.count_ones() == 2 && *m < 16));
        assert_eq!(masks_with_popcount(3, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(masks_with_popcount(3, 3).collect::<Vec<_>>(), vec![7]);
        assert!(masks_with_popcount(2, 3).next().is_none());
    }
}
