//! Exhaustive enumeration of every subset, kept independent of the
//! subsum table and the search code so it can serve as a reference.

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::set::ElementSet;

use super::{check_k, ExactResult, Symmetry};

pub const ORACLE_MAX_ORDER: u64 = 20;

/// Computes the largest k-zero-sum-free subset by looking at all `2^|G|`
/// subsets. Refuses groups of order above [`ORACLE_MAX_ORDER`].
pub fn brute_force_oracle(group: &GroupSpec, k: usize) -> Result<ExactResult> {
    if group.order() > ORACLE_MAX_ORDER {
        return Err(Error::Refused(format!(
            "brute-force oracle is capped at order {ORACLE_MAX_ORDER}, got {}",
            group.order()
        )));
    }
    check_k(group, k)?;
    let n = group.size();
    let arith = group.arith();
    let full = 1usize << n;

    // sum[mask] by peeling the lowest bit; bad[mask] marks masks holding a
    // zero-sum k-subset, closed upwards one bit at a time.
    let mut sum = vec![0u32; full];
    let mut bad = vec![false; full];
    for mask in 1..full {
        let low = mask.trailing_zeros() as usize;
        let s = arith.add(sum[mask & (mask - 1)] as usize, low);
        sum[mask] = s as u32;
        if mask.count_ones() as usize == k && s == 0 {
            bad[mask] = true;
            continue;
        }
        let mut rest = mask;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            if bad[mask ^ bit] {
                bad[mask] = true;
                break;
            }
            rest ^= bit;
        }
    }

    let mut best = 0usize;
    let mut best_size = 0u32;
    for (mask, &is_bad) in bad.iter().enumerate() {
        if is_bad {
            continue;
        }
        let size = mask.count_ones();
        // For equal sizes, the sorted index list is smaller exactly when the
        // lowest differing element belongs to it.
        let diff = mask ^ best;
        if size > best_size
            || (size == best_size && diff != 0 && mask & diff & diff.wrapping_neg() != 0)
        {
            best = mask;
            best_size = size;
        }
    }

    let witness = ElementSet::from_indices(group, (0..n).filter(|&i| best >> i & 1 == 1))?;
    Ok(ExactResult {
        group: group.clone(),
        k,
        max_free_size: best_size as usize,
        harborth: best_size as u64 + 1,
        witness,
        nodes_explored: full as u64,
        exhausted: true,
        symmetry: Symmetry::None,
    })
}
