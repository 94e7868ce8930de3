//! Exact computation of `g^k(G)` through the largest k-zero-sum-free set.
//!
//! `g^k(G) = 1 + max{|S| : S ⊆ G, 0 ∉ Σ_k(S)}`: any set containing a zero
//! k-subset keeps it in every superset, so the first size at which every set
//! fails is one past the largest free set.

mod oracle;
mod search;
mod symmetry;

use serde::{Deserialize, Serialize};

use crate::bounds::dsh_upper;
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::set::ElementSet;
use crate::subsum::is_k_zero_sum_free;

pub use oracle::{brute_force_oracle, ORACLE_MAX_ORDER};
pub use symmetry::Symmetry;

use search::{greedy, SearchParams};
use symmetry::SymGroup;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_seconds: f64,
    /// `None` picks [`Symmetry::default_for`] the group.
    pub symmetry: Option<Symmetry>,
    /// Threads used for the split subtrees. Results do not depend on it.
    pub workers: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 100_000_000,
            max_seconds: 300.0,
            symmetry: None,
            workers: 1,
        }
    }
}

impl SearchBudget {
    pub fn with_symmetry(mut self, symmetry: Symmetry) -> Self {
        self.symmetry = Some(symmetry);
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn unlimited() -> Self {
        SearchBudget {
            max_nodes: u64::MAX,
            max_seconds: f64::INFINITY,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.max_nodes == 0 {
            return Err(Error::domain("node budget must be positive"));
        }
        if self.max_seconds.is_nan() || self.max_seconds <= 0.0 {
            return Err(Error::domain("time budget must be positive"));
        }
        if self.workers == 0 {
            return Err(Error::domain("worker count must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct ExactResult {
    pub group: GroupSpec,
    pub k: usize,
    pub max_free_size: usize,
    pub harborth: u64,
    pub witness: ElementSet,
    pub nodes_explored: u64,
    pub exhausted: bool,
    pub symmetry: Symmetry,
}

/// JSON form of an [`ExactResult`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactSummary {
    pub group: String,
    pub k: usize,
    pub max_free_size: usize,
    pub harborth: u64,
    pub exhausted: bool,
    pub nodes_explored: u64,
    pub symmetry: Symmetry,
    pub witness: Vec<Vec<u64>>,
}

impl ExactResult {
    pub fn summary(&self) -> ExactSummary {
        ExactSummary {
            group: self.group.literal(),
            k: self.k,
            max_free_size: self.max_free_size,
            harborth: self.harborth,
            exhausted: self.exhausted,
            nodes_explored: self.nodes_explored,
            symmetry: self.symmetry,
            witness: self
                .witness
                .indices()
                .iter()
                .map(|&i| self.group.coords_of(i as u64))
                .collect(),
        }
    }
}

fn check_k(group: &GroupSpec, k: usize) -> Result<()> {
    if k < 1 || k as u64 > group.order() {
        return Err(Error::domain(format!(
            "k = {k} outside 1..={} for group {}",
            group.order(),
            group.literal()
        )));
    }
    Ok(())
}

/// Largest possible free-set size that the search needs to look for.
fn free_size_cap(group: &GroupSpec, k: usize) -> usize {
    if let Some(p) = group.prime_cyclic() {
        if (k as u64) < p {
            if let Ok(upper) = dsh_upper(p, k as u64) {
                return (upper - 1).min(group.order()) as usize;
            }
        }
    }
    group.size()
}

fn to_set(group: &GroupSpec, indices: &[u32]) -> ElementSet {
    ElementSet::from_indices(group, indices.iter().map(|&x| x as usize)).expect("distinct indices")
}

/// Computes the largest k-zero-sum-free subset of `group`.
///
/// When the budget runs out the result carries the best set found so far
/// and `exhausted = false`; that size is then only a lower bound.
pub fn max_zero_sum_free(
    group: &GroupSpec,
    k: usize,
    budget: &SearchBudget,
) -> Result<ExactResult> {
    check_k(group, k)?;
    budget.validate()?;
    let symmetry = budget
        .symmetry
        .unwrap_or_else(|| Symmetry::default_for(group, k));
    let greedy_set = greedy(group, k);
    let cap = free_size_cap(group, k);

    let (best, nodes, complete) = if greedy_set.len() >= cap {
        (greedy_set, 0, true)
    } else {
        let params = SearchParams {
            seed: greedy_set.len(),
            stop_at: cap,
            max_nodes: budget.max_nodes,
            max_seconds: budget.max_seconds,
            workers: budget.workers,
        };
        let out = search::run(group, k, SymGroup::build(group, k, symmetry), &params);
        let best = match out.best {
            Some(b)
                if b.len() > greedy_set.len()
                    || (b.len() == greedy_set.len() && b < greedy_set) =>
            {
                b
            }
            _ => greedy_set,
        };
        (best, out.nodes, out.complete)
    };

    let witness = to_set(group, &best);
    debug_assert!(is_k_zero_sum_free(&witness, k).unwrap_or(false));
    Ok(ExactResult {
        group: group.clone(),
        k,
        max_free_size: best.len(),
        harborth: best.len() as u64 + 1,
        witness,
        nodes_explored: nodes,
        exhausted: complete,
        symmetry,
    })
}

/// Outcome of the decision form "is there a free set of size `t`?".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Found(ElementSet),
    /// The search space was exhausted without finding one.
    NotFound,
    /// The budget ran out before a decision was reached.
    Indeterminate,
}

impl Decision {
    pub fn is_found(&self) -> bool {
        matches!(self, Decision::Found(_))
    }
}

pub fn exists_free_of_size(
    group: &GroupSpec,
    k: usize,
    t: usize,
    budget: &SearchBudget,
) -> Result<Decision> {
    check_k(group, k)?;
    budget.validate()?;
    if t as u64 > group.order() {
        return Err(Error::domain(format!(
            "size {t} exceeds the group order {}",
            group.order()
        )));
    }
    if t > free_size_cap(group, k) {
        return Ok(Decision::NotFound);
    }
    let greedy_set = greedy(group, k);
    if t <= greedy_set.len() {
        return Ok(Decision::Found(to_set(group, &greedy_set[..t])));
    }
    let symmetry = budget
        .symmetry
        .unwrap_or_else(|| Symmetry::default_for(group, k));
    let params = SearchParams {
        seed: t,
        stop_at: t,
        max_nodes: budget.max_nodes,
        max_seconds: budget.max_seconds,
        workers: budget.workers,
    };
    let out = search::run(group, k, SymGroup::build(group, k, symmetry), &params);
    Ok(match out.best {
        Some(b) if b.len() >= t => Decision::Found(to_set(group, &b[..t])),
        _ if out.complete => Decision::NotFound,
        _ => Decision::Indeterminate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(lit: &str, k: usize) -> ExactResult {
        let g = GroupSpec::parse(lit).unwrap();
        max_zero_sum_free(&g, k, &SearchBudget::default()).unwrap()
    }

    #[test]
    fn known_values() {
        assert_eq!(exact("2,2,2,2", 4).harborth, 7);
        assert_eq!(exact("18", 3).harborth, 10);
        for lit in ["7", "2,6", "3,3", "2,2,2"] {
            let r = exact(lit, 1);
            assert_eq!(r.harborth, r.group.order());
            assert!(r.exhausted);
        }
    }

    #[test]
    fn whole_group_free_gives_order_plus_one() {
        let r = exact("2,2", 2);
        assert_eq!((r.max_free_size, r.harborth), (4, 5));
    }

    #[test]
    fn witnesses_are_free() {
        for (lit, k) in [("12", 3), ("2,8", 4), ("3,3", 3), ("13", 8), ("16", 5)] {
            let r = exact(lit, k);
            assert_eq!(r.witness.len(), r.max_free_size);
            assert!(is_k_zero_sum_free(&r.witness, k).unwrap());
        }
    }

    #[test]
    fn k_out_of_range() {
        let g = GroupSpec::cyclic(5).unwrap();
        assert!(matches!(
            max_zero_sum_free(&g, 0, &SearchBudget::default()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            max_zero_sum_free(&g, 6, &SearchBudget::default()),
            Err(Error::Domain(_))
        ));
        let bad = SearchBudget {
            max_nodes: 0,
            ..SearchBudget::default()
        };
        assert!(max_zero_sum_free(&g, 2, &bad).is_err());
    }

    #[test]
    fn budget_exhaustion_is_partial() {
        let g = GroupSpec::cyclic(60).unwrap();
        let budget = SearchBudget {
            max_nodes: 10,
            symmetry: Some(Symmetry::None),
            ..SearchBudget::default()
        };
        let r = max_zero_sum_free(&g, 5, &budget).unwrap();
        assert!(!r.exhausted);
        assert!(is_k_zero_sum_free(&r.witness, 5).unwrap());
    }

    #[test]
    fn decision_form() {
        let c8 = GroupSpec::cyclic(8).unwrap();
        let b = SearchBudget::default();
        match exists_free_of_size(&c8, 3, 5, &b).unwrap() {
            Decision::Found(s) => {
                assert_eq!(s.len(), 5);
                assert!(is_k_zero_sum_free(&s, 3).unwrap());
            }
            other => panic!("expected a witness, got {other:?}"),
        }
        assert_eq!(
            exists_free_of_size(&c8, 3, 6, &b).unwrap(),
            Decision::NotFound
        );
        assert_eq!(
            exists_free_of_size(&c8, 3, 0, &b).unwrap(),
            Decision::Found(ElementSet::empty(&c8))
        );
        assert!(exists_free_of_size(&c8, 3, 9, &b).is_err());

        let c60 = GroupSpec::cyclic(60).unwrap();
        let tiny = SearchBudget {
            max_nodes: 5,
            symmetry: Some(Symmetry::None),
            ..SearchBudget::default()
        };
        assert_eq!(
            exists_free_of_size(&c60, 5, 40, &tiny).unwrap(),
            Decision::Indeterminate
        );
    }

    #[test]
    fn lexicographic_witness_without_symmetry() {
        // C_8, k = 3: the smallest free 5-set in sorted-index order.
        let g = GroupSpec::cyclic(8).unwrap();
        let r = max_zero_sum_free(
            &g,
            3,
            &SearchBudget::default().with_symmetry(Symmetry::None),
        )
        .unwrap();
        let mut best: Option<Vec<usize>> = None;
        for mask in 0u32..256 {
            let idx: Vec<usize> = (0..8).filter(|&i| mask >> i & 1 == 1).collect();
            if idx.len() != 5 {
                continue;
            }
            let s = ElementSet::from_indices(&g, idx.iter().copied()).unwrap();
            if is_k_zero_sum_free(&s, 3).unwrap() && best.as_ref().is_none_or(|b| &idx < b) {
                best = Some(idx);
            }
        }
        assert_eq!(r.witness.sorted_indices(), best.unwrap());
    }
}
