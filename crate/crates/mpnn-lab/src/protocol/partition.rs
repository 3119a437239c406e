//! Exact minimum monochromatic rectangle partitions.
//!
//! Finding the minimum is NP-hard in general, so this module runs an
//! exhaustive exact-cover search and caps the table at
//! [`MAX_PARTITION_CELLS`] cells. States are bitmasks of uncovered cells;
//! the search always branches on the lowest uncovered cell and memoizes
//! on the mask.

use super::{FunctionTable, ProtocolError};
use std::collections::HashMap;

/// Largest `rows * cols` the exhaustive search accepts.
pub const MAX_PARTITION_CELLS: usize = 16;

/// Exact minimum number of monochromatic rectangles that partition the
/// table's domain.
pub fn min_monochromatic_partition(table: &FunctionTable) -> Result<u32, ProtocolError> {
    let rows = table.rows();
    let cols = table.cols();
    let cells = rows * cols;
    if cells > MAX_PARTITION_CELLS {
        return Err(ProtocolError::TooManyCells {
            cells,
            limit: MAX_PARTITION_CELLS,
        });
    }
    let cell_bit = |a: usize, b: usize| 1u32 << (a * cols + b);

    // Every monochromatic rectangle, as a cell mask. Subsets of rows and
    // columns are enumerated directly; the partition optimum may use
    // non-maximal rectangles, so all of them are kept.
    let mut rects: Vec<u32> = Vec::new();
    for row_set in 1u32..1 << rows {
        for col_set in 1u32..1 << cols {
            let mut color: Option<u32> = None;
            let mut mask = 0u32;
            let mut mono = true;
            'outer: for a in 0..rows {
                if row_set >> a & 1 == 0 {
                    continue;
                }
                for b in 0..cols {
                    if col_set >> b & 1 == 0 {
                        continue;
                    }
                    let v = table.value(a, b);
                    if *color.get_or_insert(v) != v {
                        mono = false;
                        break 'outer;
                    }
                    mask |= cell_bit(a, b);
                }
            }
            if mono {
                rects.push(mask);
            }
        }
    }

    let full = if cells == 32 {
        u32::MAX
    } else {
        (1u32 << cells) - 1
    };
    let mut memo: HashMap<u32, u32> = HashMap::new();
    Ok(search(full, &rects, &mut memo))
}

fn search(uncovered: u32, rects: &[u32], memo: &mut HashMap<u32, u32>) -> u32 {
    if uncovered == 0 {
        return 0;
    }
    if let Some(&cached) = memo.get(&uncovered) {
        return cached;
    }
    let lowest = 1u32 << uncovered.trailing_zeros();
    let mut best = u32::MAX;
    for &rect in rects {
        // Must cover the branching cell and stay inside the uncovered set.
        if rect & lowest != 0 && rect & !uncovered == 0 {
            best = best.min(1 + search(uncovered & !rect, rects, memo));
        }
    }
    memo.insert(uncovered, best);
    best
}
