//! Explicit k-zero-sum-free sets that give lower bounds `g^k(G) ≥ |S| + 1`.
//!
//! Every generator checks its output before returning it. A set that fails
//! the check is reported as [`Error::Verification`], except for
//! [`prime_cyclic_extremal`], which is meant to be run outside the range
//! where it is known to work and so reports the outcome in `verified`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::num::{ceil_div, is_prime};
use crate::set::ElementSet;
use crate::subsum::is_k_zero_sum_free;

#[derive(Clone, Debug, Serialize)]
pub struct ConstructionResult {
    pub name: String,
    pub group: GroupSpec,
    pub k: usize,
    pub set: ElementSet,
    pub claimed_size: usize,
    pub implied_lower_bound: u64,
    pub verified: bool,
}

/// Names accepted by [`by_name`], in the order they are documented.
pub const GENERATORS: [&str; 8] = [
    "interval_k3",
    "odd_residues_k3",
    "axis_union_k3",
    "slab",
    "elementary_two_group_k4",
    "prime_cyclic_extremal",
    "interval_with_tail_k4",
    "double_lift",
];

fn build(name: &str, set: ElementSet, k: usize, claimed_size: usize) -> Result<ConstructionResult> {
    let verified = is_k_zero_sum_free(&set, k)?;
    if set.len() != claimed_size {
        return Err(Error::Verification(format!(
            "{name}: generated {} elements, expected {claimed_size}",
            set.len()
        )));
    }
    Ok(ConstructionResult {
        name: name.to_string(),
        group: set.group().clone(),
        k,
        claimed_size,
        implied_lower_bound: claimed_size as u64 + 1,
        verified,
        set,
    })
}

fn checked(result: ConstructionResult) -> Result<ConstructionResult> {
    if result.verified {
        Ok(result)
    } else {
        Err(Error::Verification(format!(
            "{} in {} is not {}-zero-sum free: {}",
            result.name,
            result.group.literal(),
            result.k,
            result.set
        )))
    }
}

/// `{1, …, ⌈n/3⌉}` in `C_n`: the three largest members sum to less than `n`.
pub fn interval_k3(n: u64) -> Result<ConstructionResult> {
    if n < 4 {
        return Err(Error::domain(format!("interval_k3 needs n ≥ 4, got {n}")));
    }
    let g = GroupSpec::cyclic(n)?;
    let top = n - (2 * n) / 3;
    let residues: Vec<u64> = (1..=top).collect();
    checked(build(
        "interval_k3",
        ElementSet::from_residues(&g, &residues)?,
        3,
        top as usize,
    )?)
}

/// The `n/2` odd residues of `C_n`, `n` even: three odd numbers never sum to
/// an even one.
pub fn odd_residues_k3(n: u64) -> Result<ConstructionResult> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::domain(format!(
            "odd_residues_k3 needs an even n ≥ 4, got {n}"
        )));
    }
    let g = GroupSpec::cyclic(n)?;
    let residues: Vec<u64> = (1..n).step_by(2).collect();
    checked(build(
        "odd_residues_k3",
        ElementSet::from_residues(&g, &residues)?,
        3,
        (n / 2) as usize,
    )?)
}

/// Union over coordinates of the one-dimensional k = 3 sets placed on each
/// axis, plus the zero element when every invariant factor is odd.
pub fn axis_union_k3(group: &GroupSpec) -> Result<ConstructionResult> {
    let factors = group.factors();
    if factors[0] < 4 {
        return Err(Error::domain(format!(
            "axis_union_k3 needs the smallest invariant factor ≥ 4, got {}",
            group.literal()
        )));
    }
    let rank = factors.len();
    let mut elements = Vec::new();
    let mut claimed = 0usize;
    for (axis, &n) in factors.iter().enumerate() {
        let steps: Vec<u64> = if n % 2 == 0 {
            (1..n).step_by(2).collect()
        } else {
            (1..=ceil_div(n, 3)).collect()
        };
        claimed += steps.len();
        for j in steps {
            let mut coords = vec![0u64; rank];
            coords[axis] = j;
            elements.push(group.element(&coords)?);
        }
    }
    if factors.iter().all(|n| n % 2 == 1) {
        elements.push(group.zero());
        claimed += 1;
    }
    let set = ElementSet::from_elements(group, elements.iter())?;
    checked(build("axis_union_k3", set, 3, claimed)?)
}

/// Every element whose last coordinate lies in `[1, ⌊n_t/k⌋ − ε]`, with
/// `ε = 1` when `k | n_t`.
pub fn slab(group: &GroupSpec, k: usize) -> Result<ConstructionResult> {
    let nt = group.exponent();
    let kk = k as u64;
    if k < 1 || kk >= nt {
        return Err(Error::domain(format!(
            "slab needs 1 ≤ k < {nt} for {}, got k = {k}",
            group.literal()
        )));
    }
    let eps = u64::from(nt.is_multiple_of(kk));
    let height = nt / kk - eps;
    if height == 0 {
        return Err(Error::domain(format!(
            "slab is empty for {} and k = {k}",
            group.literal()
        )));
    }
    let indices = (0..group.size()).filter(|&i| {
        let last = i as u64 % nt;
        (1..=height).contains(&last)
    });
    let set = ElementSet::from_indices(group, indices)?;
    let claimed = (group.order() / nt * height) as usize;
    checked(build("slab", set, k, claimed)?)
}

/// Basis vectors of `C_2^r`, sums of consecutive basis pairs and, for
/// `r ≥ 7`, sums of seven consecutive basis vectors starting at `1, 4, 7, …`.
pub fn elementary_two_group_k4(r: usize) -> Result<ConstructionResult> {
    if r < 2 {
        return Err(Error::domain(format!(
            "elementary_two_group_k4 needs r ≥ 2, got {r}"
        )));
    }
    let g = GroupSpec::elementary_two(r)?;
    // Basis vector e_i (1-based) as a coordinate mask.
    let e = |i: usize| -> usize { 1 << (r - i) };
    let mut indices: Vec<usize> = (1..=r).map(e).collect();
    indices.extend((1..=r / 2).map(|i| e(2 * i - 1) | e(2 * i)));
    let mut tail = 0;
    if r >= 7 {
        for start in (1..=r - 6).step_by(3) {
            indices.push((start..start + 7).map(e).fold(0, |a, b| a | b));
            tail += 1;
        }
    }
    let claimed = r + r / 2 + tail;
    checked(build(
        "elementary_two_group_k4",
        ElementSet::from_indices(&g, indices)?,
        4,
        claimed,
    )?)
}

/// Size of the tail-block set for `C_2^r` with `k = 4`.
pub fn elementary_two_group_k4_size(r: usize) -> usize {
    r + r / 2 + if r >= 7 { (r - 4) / 3 } else { 0 }
}

/// Two blocks of consecutive residues near `0` and just below `p` whose
/// k-subsums avoid `0` in the range where the closed form for `g^k(C_p)`
/// holds. Outside that range `verified` may be false.
pub fn prime_cyclic_extremal(p: u64, k: usize) -> Result<ConstructionResult> {
    let kk = k as u64;
    if !is_prime(p) {
        return Err(Error::domain(format!(
            "prime_cyclic_extremal needs a prime, got {p}"
        )));
    }
    if k < 3 || kk >= p {
        return Err(Error::domain(format!(
            "prime_cyclic_extremal needs 3 ≤ k < p, got k = {k}, p = {p}"
        )));
    }
    let m = kk / 2;
    let c = ceil_div(p - 1, kk);
    let r = p % kk;
    let (left, right_start): (Vec<u64>, u64) = if k.is_multiple_of(2) {
        ((0..m).collect(), p - c - m + 1)
    } else if r == 1 {
        ((1..=m).collect(), p - c - m)
    } else {
        ((1..=m).collect(), p - c - m + 1)
    };
    let residues: BTreeSet<u64> = left.iter().copied().chain(right_start..p).collect();
    let claimed = left.len() + (p - right_start) as usize;
    if residues.len() != claimed {
        return Err(Error::domain(format!(
            "prime_cyclic_extremal blocks overlap for p = {p}, k = {k}"
        )));
    }
    let g = GroupSpec::cyclic(p)?;
    let residues: Vec<u64> = residues.into_iter().collect();
    build(
        "prime_cyclic_extremal",
        ElementSet::from_residues(&g, &residues)?,
        k,
        claimed,
    )
}

/// `{0, 1, …, L, n − 2}` in `C_n` for `k = 4`, with `L` chosen so that the
/// set has `⌈(n+15)/4⌉ − 1` elements for odd `n ≥ 5` and `⌈(n+14)/4⌉ − 1`
/// elements for even `n > 5`.
pub fn interval_with_tail_k4(n: u64) -> Result<ConstructionResult> {
    let bound = if n % 2 == 1 && n >= 5 {
        ceil_div(n + 15, 4)
    } else if n.is_multiple_of(2) && n > 5 {
        ceil_div(n + 14, 4)
    } else {
        return Err(Error::domain(format!(
            "interval_with_tail_k4 needs odd n ≥ 5 or even n > 5, got {n}"
        )));
    };
    let top = bound - 3;
    let g = GroupSpec::cyclic(n)?;
    let mut residues: Vec<u64> = (0..=top).collect();
    residues.push(n - 2);
    checked(build(
        "interval_with_tail_k4",
        ElementSet::from_residues(&g, &residues)?,
        4,
        (bound - 1) as usize,
    )?)
}

/// Moves a k-zero-sum-free subset of `C_n` (`n` odd, `k` even) onto the
/// coset `{(1, g)}` of `C_2 ⊕ C_n ≅ C_{2n}`: an even number of ones sums to
/// zero in the first coordinate, so freeness is preserved.
pub fn double_lift(set: &ElementSet, k: usize) -> Result<ConstructionResult> {
    let g = set.group();
    let n = g.order();
    if !g.is_cyclic() || n.is_multiple_of(2) || k % 2 == 1 {
        return Err(Error::domain(format!(
            "double_lift needs an odd cyclic group and even k, got {} and k = {k}",
            g.literal()
        )));
    }
    if !is_k_zero_sum_free(set, k)? {
        return Err(Error::domain(format!(
            "double_lift input is not {k}-zero-sum free"
        )));
    }
    let lifted = GroupSpec::cyclic(2 * n)?;
    // x ≡ 1 (mod 2) and x ≡ a (mod n).
    let residues: Vec<u64> = set
        .indices()
        .iter()
        .map(|&a| if a % 2 == 1 { a as u64 } else { a as u64 + n })
        .collect();
    checked(build(
        "double_lift",
        ElementSet::from_residues(&lifted, &residues)?,
        k,
        set.len(),
    )?)
}

/// Sets written out explicitly as examples of extremal k-zero-sum-free sets.
pub fn fixture_sets() -> Vec<ConstructionResult> {
    const FIXTURES: [(&str, u64, usize, &[u64]); 9] = [
        ("fixture_c8_k3", 8, 3, &[1, 2, 4, 6, 7]),
        ("fixture_c9_k3", 9, 3, &[1, 2, 4, 5, 7, 8]),
        ("fixture_c10_k3", 10, 3, &[2, 3, 4, 6, 7, 8]),
        ("fixture_c11_k3", 11, 3, &[3, 4, 5, 6, 7, 8]),
        ("fixture_c12_k3", 12, 3, &[1, 2, 5, 7, 10, 11]),
        ("fixture_c7_k6", 7, 6, &[0, 1, 2, 4, 5, 6]),
        ("fixture_c11_k8_a", 11, 8, &[0, 1, 2, 4, 6, 7, 8, 9, 10]),
        ("fixture_c11_k8_b", 11, 8, &[0, 1, 2, 5, 6, 7, 8, 9, 10]),
        ("fixture_c13_k8", 13, 8, &[0, 1, 2, 3, 8, 9, 10, 11, 12]),
    ];
    FIXTURES
        .iter()
        .map(|&(name, n, k, residues)| {
            let g = GroupSpec::cyclic(n).expect("valid fixture group");
            let set = ElementSet::from_residues(&g, residues).expect("valid fixture set");
            build(name, set, k, residues.len()).expect("fixture sizes match")
        })
        .collect()
}

/// Parameters for [`by_name`]; each generator reads the ones it needs.
#[derive(Clone, Debug, Default)]
pub struct GeneratorParams {
    pub group: Option<GroupSpec>,
    pub k: Option<usize>,
    pub n: Option<u64>,
    pub r: Option<usize>,
    pub p: Option<u64>,
    /// Input set for `double_lift`.
    pub set: Option<ElementSet>,
}

fn need<T: Clone>(value: &Option<T>, flag: &str, name: &str) -> Result<T> {
    value
        .clone()
        .ok_or_else(|| Error::domain(format!("{name} requires --{flag}")))
}

/// Runs a generator by name. `fixture` returns every fixture, filtered by
/// group and `k` when those are given.
pub fn by_name(name: &str, params: &GeneratorParams) -> Result<Vec<ConstructionResult>> {
    let one = |r: Result<ConstructionResult>| r.map(|c| vec![c]);
    match name {
        "interval_k3" | "c3_interval" => one(interval_k3(need(&params.n, "n", name)?)),
        "odd_residues_k3" | "c3_odds" => one(odd_residues_k3(need(&params.n, "n", name)?)),
        "axis_union_k3" => one(axis_union_k3(&need(&params.group, "group", name)?)),
        "slab" => one(slab(
            &need(&params.group, "group", name)?,
            need(&params.k, "k", name)?,
        )),
        "elementary_two_group_k4" => one(elementary_two_group_k4(need(&params.r, "r", name)?)),
        "prime_cyclic_extremal" => one(prime_cyclic_extremal(
            need(&params.p, "p", name)?,
            need(&params.k, "k", name)?,
        )),
        "interval_with_tail_k4" => one(interval_with_tail_k4(need(&params.n, "n", name)?)),
        "double_lift" => one(double_lift(
            &need(&params.set, "set", name)?,
            need(&params.k, "k", name)?,
        )),
        "fixture" => Ok(fixture_sets()
            .into_iter()
            .filter(|c| params.group.as_ref().is_none_or(|g| &c.group == g))
            .filter(|c| params.k.is_none_or(|k| c.k == k))
            .collect()),
        other => Err(Error::domain(format!(
            "unknown construction `{other}`; expected one of {} or fixture",
            GENERATORS.join(", ")
        ))),
    }
}

/// Every generator and fixture that produces a verified set for `(group, k)`.
pub fn applicable(group: &GroupSpec, k: usize) -> Vec<ConstructionResult> {
    let mut out = Vec::new();
    let mut push = |r: Result<ConstructionResult>| {
        if let Ok(c) = r {
            if c.verified {
                out.push(c);
            }
        }
    };
    if k == 3 {
        if group.is_cyclic() {
            let n = group.order();
            push(interval_k3(n));
            if n.is_multiple_of(2) {
                push(odd_residues_k3(n));
            }
        }
        if group.factors()[0] >= 4 {
            push(axis_union_k3(group));
        }
    }
    if (k as u64) < group.exponent() {
        push(slab(group, k));
    }
    if k == 4 && group.is_elementary_two_group() {
        push(elementary_two_group_k4(group.rank()));
    }
    if let Some(p) = group.prime_cyclic() {
        if k >= 3 && (k as u64) < p {
            push(prime_cyclic_extremal(p, k));
        }
    }
    if k == 4 && group.is_cyclic() {
        push(interval_with_tail_k4(group.order()));
    }
    for fixture in fixture_sets() {
        if &fixture.group == group && fixture.k == k {
            push(Ok(fixture));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residues(c: &ConstructionResult) -> Vec<usize> {
        c.set.sorted_indices()
    }

    #[test]
    fn interval_examples() {
        assert_eq!(residues(&interval_k3(7).unwrap()), vec![1, 2, 3]);
        assert_eq!(residues(&interval_k3(4).unwrap()), vec![1, 2]);
        assert_eq!(interval_k3(9).unwrap().claimed_size, 3);
        assert!(interval_k3(3).is_err());
    }

    #[test]
    fn odd_residue_examples() {
        assert_eq!(residues(&odd_residues_k3(8).unwrap()), vec![1, 3, 5, 7]);
        assert_eq!(residues(&odd_residues_k3(4).unwrap()), vec![1, 3]);
        assert_eq!(odd_residues_k3(12).unwrap().claimed_size, 6);
        assert!(odd_residues_k3(9).is_err());
    }

    #[test]
    fn axis_union_examples() {
        let size = |lit: &str| axis_union_k3(&GroupSpec::parse(lit).unwrap()).unwrap();
        let c = size("5,5");
        assert_eq!((c.claimed_size, c.implied_lower_bound), (5, 6));
        assert_eq!(size("4,4").implied_lower_bound, 5);
        assert_eq!(size("5,10").claimed_size, 7);
        assert!(axis_union_k3(&GroupSpec::parse("3,6").unwrap()).is_err());
    }

    #[test]
    fn slab_examples() {
        let c13 = GroupSpec::cyclic(13).unwrap();
        assert_eq!(residues(&slab(&c13, 4).unwrap()), vec![1, 2, 3]);
        let c12 = GroupSpec::cyclic(12).unwrap();
        assert_eq!(residues(&slab(&c12, 4).unwrap()), vec![1, 2]);
        assert_eq!(
            slab(&GroupSpec::parse("2,12").unwrap(), 4)
                .unwrap()
                .claimed_size,
            4
        );
        assert!(slab(&c12, 12).is_err());
    }

    #[test]
    fn elementary_two_group_sizes() {
        for (r, size) in [(2, 3), (3, 4), (4, 6), (5, 7), (6, 9), (7, 11), (12, 20)] {
            let c = elementary_two_group_k4(r).unwrap();
            assert_eq!(c.claimed_size, size, "r = {r}");
            assert_eq!(elementary_two_group_k4_size(r), size);
        }
    }

    #[test]
    fn prime_cyclic_examples() {
        let c = prime_cyclic_extremal(13, 4).unwrap();
        assert_eq!(residues(&c), vec![0, 1, 9, 10, 11, 12]);
        assert!(c.verified);
        let c = prime_cyclic_extremal(7, 3).unwrap();
        assert_eq!(residues(&c), vec![1, 4, 5, 6]);
        assert_eq!(c.implied_lower_bound, 5);
        let c = prime_cyclic_extremal(11, 4).unwrap();
        assert_eq!((c.claimed_size, c.verified), (6, true));
        // Below the range of the closed form the set can fail.
        assert!(!prime_cyclic_extremal(11, 8).unwrap().verified);
        assert!(prime_cyclic_extremal(12, 4).is_err());
        assert!(prime_cyclic_extremal(7, 7).is_err());
    }

    #[test]
    fn interval_with_tail_examples() {
        assert_eq!(
            residues(&interval_with_tail_k4(13).unwrap()),
            vec![0, 1, 2, 3, 4, 11]
        );
        assert_eq!(
            residues(&interval_with_tail_k4(11).unwrap()),
            vec![0, 1, 2, 3, 4, 9]
        );
        let c = interval_with_tail_k4(12).unwrap();
        assert_eq!(residues(&c), vec![0, 1, 2, 3, 4, 10]);
        assert_eq!(c.implied_lower_bound, 7);
        assert!(interval_with_tail_k4(4).is_err());
    }

    #[test]
    fn fixtures_verify() {
        let all = fixture_sets();
        assert_eq!(all.len(), 9);
        assert!(all.iter().all(|c| c.verified));
    }

    #[test]
    fn double_lift_preserves_freeness() {
        let c5 = GroupSpec::cyclic(5).unwrap();
        let s = ElementSet::from_residues(&c5, &[0, 1, 2, 3]).unwrap();
        let lifted = double_lift(&s, 4).unwrap();
        assert_eq!(lifted.group.order(), 10);
        assert!(lifted.set.indices().iter().all(|x| x % 2 == 1));
        assert!(double_lift(&s, 3).is_err());
    }

    #[test]
    fn by_name_dispatch() {
        let params = GeneratorParams {
            n: Some(8),
            ..GeneratorParams::default()
        };
        assert_eq!(by_name("c3_odds", &params).unwrap()[0].claimed_size, 4);
        assert!(by_name("interval_k3", &GeneratorParams::default()).is_err());
        let fx = by_name(
            "fixture",
            &GeneratorParams {
                k: Some(8),
                ..GeneratorParams::default()
            },
        )
        .unwrap();
        assert_eq!(fx.len(), 3);
        assert!(by_name("nope", &params).is_err());
    }
}
