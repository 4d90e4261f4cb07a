//! Exhaustive search over vertex partitions with prescribed block sizes.

use crate::graph::{bits, subsets_of_size, Graph};

/// Edges of `g` inside `mask`.
pub(crate) fn inside(g: &Graph, mask: u16) -> u32 {
    bits(mask).map(|v| (g.neighbors(v) & mask).count_ones()).sum::<u32>() / 2
}

/// Minimum number of edges inside blocks over all partitions of `avail`
/// into blocks of the given sizes (which must sum to `|avail|`). Blocks of
/// equal size are treated as unordered.
pub(crate) fn min_inside(g: &Graph, avail: u16, sizes: &[usize]) -> u32 {
    let mut best = u32::MAX;
    search(g, avail, sizes, 0, 0, &mut best);
    best
}

fn search(g: &Graph, avail: u16, sizes: &[usize], min_low: u16, acc: u32, best: &mut u32) {
    if acc >= *best {
        return;
    }
    let Some((&k, rest)) = sizes.split_first() else {
        *best = acc;
        return;
    };
    if rest.is_empty() {
        search(g, 0, rest, 0, acc + inside(g, avail), best);
        return;
    }
    let same_next = rest[0] == k;
    for block in subsets_of_size(avail, k) {
        let low = block & block.wrapping_neg();
        if low < min_low {
            continue;
        }
        // with an equal-size block next, fixing the order of the lowest
        // vertices removes the block permutations
        let next_low = if same_next { low } else { 0 };
        search(g, avail & !block, rest, next_low, acc + inside(g, block), best);
    }
}
