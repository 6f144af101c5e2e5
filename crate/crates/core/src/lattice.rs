//! Chunked parallel scans over Z_d^k in base-d counter order.

use rayon::prelude::*;

use crate::zd;

const CHUNK: u64 = 1 << 14;

/// Folds `visit` over the first `total` points of Z_d^dims. Chunks run in
/// parallel; `merge` must be associative and must break ties on the counter
/// index so the result does not depend on the partitioning.
pub(crate) fn par_scan<A, I, V, M>(
    d: u32,
    dims: usize,
    total: u64,
    identity: I,
    visit: V,
    merge: M,
) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    V: Fn(&mut A, u64, &[u32]) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let end = total.min(start + CHUNK);
            let mut digits = vec![0u32; dims];
            zd::decode(start, d, &mut digits);
            let mut acc = identity();
            for idx in start..end {
                visit(&mut acc, idx, &digits);
                zd::increment(&mut digits, d);
            }
            acc
        })
        .reduce(&identity, &merge)
}

/// Running maximum with the lowest counter index kept on exact ties.
#[derive(Debug, Clone)]
pub(crate) struct Best<T> {
    pub value: T,
    pub index: u64,
    pub point: Vec<u32>,
}

impl<T: PartialOrd + Copy> Best<T> {
    pub fn offer(slot: &mut Option<Self>, value: T, index: u64, point: &[u32]) {
        let better = match slot {
            None => true,
            Some(b) => value > b.value || (value == b.value && index < b.index),
        };
        if better {
            *slot = Some(Best {
                value,
                index,
                point: point.to_vec(),
            });
        }
    }

    pub fn merge(a: Option<Self>, b: Option<Self>) -> Option<Self> {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => {
                if b.value > a.value || (b.value == a.value && b.index < a.index) {
                    Some(b)
                } else {
                    Some(a)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scan_visits_every_point_once_in_order() {
        let total = 5u64.pow(7);
        let (count, sum, ok) = par_scan(
            5,
            7,
            total,
            || (0u64, 0u64, true),
            |acc, idx, digits| {
                acc.0 += 1;
                acc.1 += idx;
                acc.2 &= zd::encode(digits, 5) == idx;
            },
            |a, b| (a.0 + b.0, a.1 + b.1, a.2 && b.2),
        );
        assert_eq!(count, total);
        assert_eq!(sum, total * (total - 1) / 2);
        assert!(ok);
    }

    #[test]
    fn best_prefers_lowest_index_on_ties() {
        let best = par_scan(
            2,
            16,
            1 << 16,
            || None,
            |acc, idx, p| Best::offer(acc, (p.iter().sum::<u32>() % 3) as i32, idx, p),
            Best::merge,
        )
        .unwrap();
        assert_eq!(best.value, 2);
        // smallest index with popcount 2 mod 3 is 0b11
        assert_eq!(best.index, 3);
    }
}
