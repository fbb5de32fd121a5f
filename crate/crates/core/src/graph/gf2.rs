use super::Graph;

/// Rank over GF(2) of a matrix given as bit rows.
pub fn gf2_rank_rows(rows: &[u64]) -> usize {
    let mut rows = rows.to_vec();
    let mut rank = 0;
    for bit in 0..64 {
        let pivot = match rows[rank..].iter().position(|r| r >> bit & 1 == 1) {
            Some(p) => rank + p,
            None => continue,
        };
        rows.swap(rank, pivot);
        let p = rows[rank];
        for r in rows.iter_mut().skip(rank + 1) {
            if *r >> bit & 1 == 1 {
                *r ^= p;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Rank of the adjacency matrix over GF(2). Always even, since the matrix
/// is alternating.
pub fn gf2_rank(g: &Graph) -> usize {
    gf2_rank_rows(g.adjacency())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        assert_eq!(gf2_rank(&Graph::complete(2)), 2);
        assert_eq!(gf2_rank(&Graph::cycle(4)), 2);
        assert_eq!(gf2_rank(&Graph::complete(3)), 2);
        assert_eq!(gf2_rank(&Graph::path(4)), 4);
        assert_eq!(gf2_rank(&Graph::empty(5)), 0);
        assert_eq!(gf2_rank(&Graph::complete(4)), 4);
        assert_eq!(gf2_rank_rows(&[0b11, 0b11, 0b01]), 2);
    }
}
