//! Subsums of element sets: `σ(S)`, `Σ_k(S)`, `Σ_{≤k}(S)`, k-zero-sum
//! freeness and restricted sumsets.
//!
//! Everything is driven by [`SubsumTable`], a dynamic program that keeps, for
//! every group element `g`, a bit mask over subset sizes `0..=k`: bit `s` of
//! `reach[g]` is set iff some `s`-subset of the processed members sums to
//! `g`. Appending a member `x` is one shift-and-or pass over the group
//! (`reach[g] |= reach[g - x] << 1`), and the bits it newly set are kept on a
//! stack so the append can be undone exactly.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Element, GroupSpec, IndexArith};
use crate::set::ElementSet;

pub struct SubsumTable {
    group: GroupSpec,
    arith: IndexArith,
    max_size: usize,
    words: usize,
    /// Mask of valid size bits in the last word.
    top_mask: u64,
    reach: Vec<u64>,
    members: Vec<usize>,
    /// Per push: (flat word position, bits newly set).
    deltas: Vec<Vec<(u32, u64)>>,
    scratch: Vec<(u32, u64)>,
}

impl SubsumTable {
    /// Empty table tracking subset sizes up to `max_size`.
    pub fn new(group: &GroupSpec, max_size: usize) -> Self {
        Self::with_arith(group, group.arith(), max_size)
    }

    pub fn with_arith(group: &GroupSpec, arith: IndexArith, max_size: usize) -> Self {
        let bits = max_size + 1;
        let words = bits.div_ceil(64);
        let rem = bits % 64;
        let top_mask = if rem == 0 {
            u64::MAX
        } else {
            (1u64 << rem) - 1
        };
        let order = group.size();
        let mut reach = vec![0u64; order * words];
        reach[0] = 1;
        SubsumTable {
            group: group.clone(),
            arith,
            max_size,
            words,
            top_mask,
            reach,
            members: Vec::new(),
            deltas: Vec::new(),
            scratch: Vec::new(),
        }
    }

    pub fn from_set(set: &ElementSet, max_size: usize) -> Self {
        let mut table = Self::new(set.group(), max_size);
        for &x in set.indices() {
            table.push(x);
        }
        table
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn arith(&self) -> &IndexArith {
        &self.arith
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Appends member `x` (an element index). The caller keeps members distinct.
    pub fn push(&mut self, x: usize) {
        debug_assert!(!self.members.contains(&x));
        let neg_x = self.arith.neg(x);
        let row = self.arith.row(neg_x);
        let words = self.words;
        let mut delta = std::mem::take(&mut self.scratch);
        delta.clear();
        for (g, &src) in row.iter().enumerate() {
            let src = src as usize * words;
            let dst = g * words;
            let mut carry = 0u64;
            for w in 0..words {
                let s = self.reach[src + w];
                let mut shifted = (s << 1) | carry;
                carry = s >> 63;
                if w + 1 == words {
                    shifted &= self.top_mask;
                }
                let fresh = shifted & !self.reach[dst + w];
                if fresh != 0 {
                    delta.push(((dst + w) as u32, fresh));
                }
            }
        }
        for &(pos, bits) in &delta {
            self.reach[pos as usize] |= bits;
        }
        self.members.push(x);
        self.deltas.push(delta);
    }

    /// Undoes the most recent [`push`](Self::push).
    pub fn pop(&mut self) -> Option<usize> {
        let x = self.members.pop()?;
        let delta = self.deltas.pop().expect("one delta per member");
        for &(pos, bits) in &delta {
            self.reach[pos as usize] &= !bits;
        }
        self.scratch = delta;
        Some(x)
    }

    /// Whether some `size`-subset of the members sums to the element with index `g`.
    #[inline]
    pub fn reaches(&self, g: usize, size: usize) -> bool {
        if size > self.max_size {
            return false;
        }
        self.reach[g * self.words + size / 64] >> (size % 64) & 1 == 1
    }

    /// Whether appending `x` would create a zero-sum subset of size
    /// `max_size` containing `x`, i.e. `-x ∈ Σ_{max_size - 1}`.
    #[inline]
    pub fn blocks(&self, x: usize) -> bool {
        self.max_size >= 1 && self.reaches(self.arith.neg(x), self.max_size - 1)
    }

    /// `Σ_size` of the current members.
    pub fn sums_of_size(&self, size: usize) -> ElementSet {
        let order = self.group.size();
        ElementSet::from_indices(&self.group, (0..order).filter(|&g| self.reaches(g, size)))
            .expect("distinct indices")
    }

    /// `Σ_{≤size}`: sums of nonempty subsets with at most `size` members.
    pub fn sums_up_to(&self, size: usize) -> ElementSet {
        let order = self.group.size();
        let top = size.min(self.max_size);
        ElementSet::from_indices(
            &self.group,
            (0..order).filter(|&g| (1..=top).any(|s| self.reaches(g, s))),
        )
        .expect("distinct indices")
    }
}

/// Sum of all members; the empty set sums to zero.
pub fn sigma(set: &ElementSet) -> Element {
    let arith = set.group().arith();
    let idx = set.indices().iter().fold(0, |acc, &x| arith.add(acc, x));
    set.group()
        .element_from_index(idx as u64)
        .expect("index in range")
}

fn check_k(k: usize) -> Result<()> {
    if k < 1 {
        return Err(Error::domain("subset size k must be at least 1"));
    }
    Ok(())
}

/// `Σ_k(S)`, the sums of `k` distinct members. Empty when `k > |S|`.
pub fn k_subsums(set: &ElementSet, k: usize) -> Result<ElementSet> {
    check_k(k)?;
    if k > set.len() {
        return Ok(ElementSet::empty(set.group()));
    }
    Ok(SubsumTable::from_set(set, k).sums_of_size(k))
}

/// `Σ_{≤k}(S)`, the union of `Σ_s(S)` for `1 ≤ s ≤ min(k, |S|)`.
pub fn subsums_up_to(set: &ElementSet, k: usize) -> Result<ElementSet> {
    check_k(k)?;
    let k = k.min(set.len());
    if k == 0 {
        return Ok(ElementSet::empty(set.group()));
    }
    Ok(SubsumTable::from_set(set, k).sums_up_to(k))
}

/// True iff no `k` distinct members sum to zero.
pub fn is_k_zero_sum_free(set: &ElementSet, k: usize) -> Result<bool> {
    check_k(k)?;
    if k > set.len() {
        return Ok(true);
    }
    let mut table = SubsumTable::new(set.group(), k);
    for &x in set.indices() {
        if table.blocks(x) {
            return Ok(false);
        }
        table.push(x);
    }
    Ok(true)
}

/// Restricted-sumset size against the lower bound `min(k|X| - k² + 1, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DshCheck {
    pub size: u64,
    pub bound: u64,
    pub holds: bool,
}

/// Compares `|Σ_k(X)|` with `min(k|X| - k² + 1, p)` for `X ⊆ C_p`.
pub fn dsh_check(set: &ElementSet, k: usize) -> Result<DshCheck> {
    let p = set.group().prime_cyclic().ok_or_else(|| {
        Error::domain(format!(
            "restricted-sumset bound needs a prime cyclic group, got {}",
            set.group().literal()
        ))
    })?;
    check_k(k)?;
    if k > set.len() {
        return Err(Error::domain(format!(
            "k = {k} exceeds |X| = {}",
            set.len()
        )));
    }
    let size = k_subsums(set, k)?.len() as u64;
    let (k, x) = (k as i64, set.len() as i64);
    let linear = k * x - k * k + 1;
    let bound = linear.min(p as i64).max(0) as u64;
    Ok(DshCheck {
        size,
        bound,
        holds: size >= bound,
    })
}
