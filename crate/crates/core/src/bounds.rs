//! Closed-form values and bounds for `g^k(G)`, and their aggregation.
//!
//! Each [`FormulaEntry`] evaluates to an [`Estimate`] where its hypotheses
//! hold and to [`Inapplicable`] elsewhere. [`Registry::best_bounds`]
//! combines every applicable entry, every verified construction, the
//! special-value table and any registered solver results, and fails loudly
//! when two sources contradict each other.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::constructions;
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::num::{ceil_div, is_prime};
use crate::set::ElementSet;
use crate::solver::ExactResult;

/// Lower and/or upper bound on `g^k(G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Estimate {
    pub lower: Option<u64>,
    pub upper: Option<u64>,
}

impl Estimate {
    pub fn exact(v: u64) -> Self {
        Estimate {
            lower: Some(v),
            upper: Some(v),
        }
    }

    pub fn interval(lower: u64, upper: u64) -> Self {
        Estimate {
            lower: Some(lower),
            upper: Some(upper),
        }
    }

    pub fn lower(v: u64) -> Self {
        Estimate {
            lower: Some(v),
            upper: None,
        }
    }

    pub fn upper(v: u64) -> Self {
        Estimate {
            lower: None,
            upper: Some(v),
        }
    }

    pub fn exact_value(&self) -> Option<u64> {
        match (self.lower, self.upper) {
            (Some(l), Some(u)) if l == u => Some(l),
            _ => None,
        }
    }

    pub fn contains(&self, v: u64) -> bool {
        self.lower.is_none_or(|l| l <= v) && self.upper.is_none_or(|u| v <= u)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inapplicable {
    pub reason: String,
}

impl Inapplicable {
    fn new(reason: impl Into<String>) -> Self {
        Inapplicable {
            reason: reason.into(),
        }
    }
}

impl fmt::Display for Inapplicable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "inapplicable: {}", self.reason)
    }
}

pub type Evaluation = std::result::Result<Estimate, Inapplicable>;

fn require(cond: bool, reason: impl FnOnce() -> String) -> std::result::Result<(), Inapplicable> {
    if cond {
        Ok(())
    } else {
        Err(Inapplicable::new(reason()))
    }
}

/// A closed-form value or bound together with its hypotheses.
#[derive(Clone, Copy)]
pub struct FormulaEntry {
    pub id: &'static str,
    pub description: &'static str,
    eval: fn(&GroupSpec, usize) -> Evaluation,
}

impl FormulaEntry {
    pub fn evaluate(&self, group: &GroupSpec, k: usize) -> Evaluation {
        (self.eval)(group, k)
    }

    pub fn applies(&self, group: &GroupSpec, k: usize) -> bool {
        self.evaluate(group, k).is_ok()
    }
}

impl fmt::Debug for FormulaEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FormulaEntry")
            .field("id", &self.id)
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Lower,
    Upper,
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub source: String,
    pub value: u64,
    pub kind: BoundKind,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub group: GroupSpec,
    pub k: usize,
    pub lower: u64,
    pub upper: u64,
    pub exact: Option<u64>,
    pub provenance: Vec<Provenance>,
    /// A k-zero-sum-free set of size `lower − 1`, when one is known.
    pub witness: Option<ElementSet>,
}

impl BoundReport {
    pub fn estimate(&self) -> Estimate {
        Estimate::interval(self.lower, self.upper)
    }
}

// ---------------------------------------------------------------------------
// Individual formulas.

/// Upper bound `⌈(p + k² − 1)/k⌉` for `g^k(C_p)`, from the lower bound on
/// restricted sumsets in `C_p`.
pub fn dsh_upper(p: u64, k: u64) -> Result<u64> {
    if !is_prime(p) || k < 1 || k >= p {
        return Err(Error::domain(format!(
            "dsh_upper needs a prime p and 1 ≤ k < p, got p = {p}, k = {k}"
        )));
    }
    Ok(ceil_div(p + k * k - 1, k))
}

/// Closed form for `g^k(C_p)`, `k ≥ 3`: exact for even `k` and for odd `k`
/// with `p ≡ 1 (mod k)`, a two-point interval otherwise.
pub fn prime_cyclic_value(p: u64, k: u64) -> Evaluation {
    require(is_prime(p), || format!("{p} is not prime"))?;
    require(k >= 3, || format!("needs k ≥ 3, got {k}"))?;
    require(k < p, || format!("needs k < p, got k = {k}, p = {p}"))?;
    let m = k / 2;
    let r = p % k;
    if k.is_multiple_of(2) {
        require(p > m * m, || format!("needs p > {} for k = {k}", m * m))?;
        require(r == 1 || r > m, || {
            format!("residue p mod {k} = {r} lies in the uncovered band 2..={m}")
        })?;
        Ok(if r == 1 {
            Estimate::exact((p - 1) / k + k)
        } else {
            Estimate::exact((p - r) / k + k + 1)
        })
    } else {
        // p > (2m³ + 5m² − 8m − 3) / (2(m + 1)), kept in integers.
        let lhs = 2 * (m + 1) as i64 * p as i64;
        let rhs = 2 * (m as i64).pow(3) + 5 * (m as i64).pow(2) - 8 * m as i64 - 3;
        require(lhs > rhs, || {
            format!("p = {p} is below the threshold for k = {k}")
        })?;
        Ok(if r == 1 {
            Estimate::exact((p - 1) / k + k)
        } else {
            Estimate::interval((p - r) / k + k, (p - r) / k + k + 1)
        })
    }
}

/// `g^k(C_{2n}) ≤ 2·g^k(C_n) − 1` for even `k` and odd `n ≥ k`.
pub fn lift_bounds(n: u64, k: u64, known_gk_cn: u64) -> std::result::Result<u64, Inapplicable> {
    require(k.is_multiple_of(2), || format!("needs even k, got {k}"))?;
    require(n % 2 == 1 && n >= k, || {
        format!("needs odd n ≥ k, got n = {n}")
    })?;
    Ok(2 * known_gk_cn - 1)
}

/// `(p+7)/2 ≤ g^4(C_{2p}) ≤ 2⌈(p+15)/4⌉ − 1` for odd primes `p > 3`.
pub fn double_prime_k4_bounds(p: u64) -> Evaluation {
    require(is_prime(p) && p > 3, || {
        format!("needs a prime p > 3, got {p}")
    })?;
    Ok(Estimate::interval((p + 7) / 2, 2 * ceil_div(p + 15, 4) - 1))
}

fn special_values() -> &'static [(&'static str, usize, u64)] {
    &[
        ("2,2", 4, 4),
        ("2,2,2", 4, 5),
        ("2,2,2,2", 4, 7),
        ("2,2,2,2,2", 4, 8),
        ("2,2,2,2,2,2", 4, 10),
        ("4", 3, 4),
        ("5", 3, 5),
        ("6", 3, 5),
        ("7", 3, 5),
        ("8", 3, 6),
        ("9", 3, 7),
        ("10", 3, 7),
        ("11", 3, 7),
        ("12", 3, 7),
        ("18", 3, 10),
        ("7", 6, 7),
        ("11", 8, 10),
        ("13", 8, 10),
    ]
}

/// Individually established values, keyed by group literal and `k`.
pub fn special_value(group: &GroupSpec, k: usize) -> Option<u64> {
    let lit = group.literal();
    special_values()
        .iter()
        .find(|(g, kk, _)| *g == lit && *kk == k)
        .map(|&(_, _, v)| v)
}

fn cyclic_order(g: &GroupSpec) -> std::result::Result<u64, Inapplicable> {
    if g.is_cyclic() {
        Ok(g.order())
    } else {
        Err(Inapplicable::new(format!("{} is not cyclic", g.literal())))
    }
}

fn harborth_k(g: &GroupSpec, k: usize) -> std::result::Result<(), Inapplicable> {
    require(k as u64 == g.exponent(), || {
        format!("only for k = exp(G) = {}, got {k}", g.exponent())
    })
}

/// `C_n^d` with all invariant factors equal.
fn power_group(g: &GroupSpec) -> Option<(u64, u32)> {
    let f = g.factors();
    f.iter().all(|&x| x == f[0]).then(|| (f[0], f.len() as u32))
}

fn eval_trivial(g: &GroupSpec, k: usize) -> Evaluation {
    Ok(Estimate::interval(k as u64, g.order() + 1))
}

fn eval_k_one(g: &GroupSpec, k: usize) -> Evaluation {
    require(k == 1, || "needs k = 1".into())?;
    Ok(Estimate::exact(g.order()))
}

fn eval_pair_halving(g: &GroupSpec, k: usize) -> Evaluation {
    require(k == 2, || "needs k = 2".into())?;
    let h = g.halving_decomposition();
    Ok(Estimate::exact((h.half.len() + h.torsion.len()) as u64 + 1))
}

fn eval_odd_order_pairs(g: &GroupSpec, k: usize) -> Evaluation {
    require(k == 2, || "needs k = 2".into())?;
    require(g.order() % 2 == 1, || "needs odd order".into())?;
    Ok(Estimate::exact((g.order() + 3) / 2))
}

fn eval_dsh(g: &GroupSpec, k: usize) -> Evaluation {
    let p = g
        .prime_cyclic()
        .ok_or_else(|| Inapplicable::new("needs a cyclic group of prime order"))?;
    dsh_upper(p, k as u64)
        .map(Estimate::upper)
        .map_err(|e| Inapplicable::new(e.to_string()))
}

fn eval_prime_cyclic(g: &GroupSpec, k: usize) -> Evaluation {
    let p = g
        .prime_cyclic()
        .ok_or_else(|| Inapplicable::new("needs a cyclic group of prime order"))?;
    prime_cyclic_value(p, k as u64)
}

fn eval_even_cyclic_k3(g: &GroupSpec, k: usize) -> Evaluation {
    let n = cyclic_order(g)?;
    require(k == 3 && n % 2 == 0 && n >= 4, || {
        "needs k = 3 and even n ≥ 4".into()
    })?;
    Ok(Estimate::upper(n / 2 + 3))
}

fn eval_odd_cyclic_k4(g: &GroupSpec, k: usize) -> Evaluation {
    let n = cyclic_order(g)?;
    require(k == 4 && n % 2 == 1 && n >= 5, || {
        "needs k = 4 and odd n ≥ 5".into()
    })?;
    Ok(Estimate::interval(ceil_div(n + 15, 4), (n + 6) / 2))
}

fn eval_even_cyclic_k4(g: &GroupSpec, k: usize) -> Evaluation {
    let n = cyclic_order(g)?;
    require(k == 4 && n % 2 == 0 && n > 5, || {
        "needs k = 4 and even n > 5".into()
    })?;
    Ok(Estimate::interval(ceil_div(n + 14, 4), n / 2 + 3))
}

fn eval_odd_lift(g: &GroupSpec, k: usize) -> Evaluation {
    let order = cyclic_order(g)?;
    require(order % 4 == 2, || "needs C_2n with n odd".into())?;
    let n = order / 2;
    lift_bounds(n, k as u64, 1)?;
    let half = GroupSpec::cyclic(n).expect("n ≥ 2");
    let known = best_formula_upper(&half, k);
    Ok(Estimate::upper(2 * known - 1))
}

fn eval_double_prime_k4(g: &GroupSpec, k: usize) -> Evaluation {
    let order = cyclic_order(g)?;
    require(k == 4 && order % 2 == 0, || "needs k = 4 and C_2p".into())?;
    double_prime_k4_bounds(order / 2)
}

fn eval_full_group(g: &GroupSpec, k: usize) -> Evaluation {
    harborth_k(g, k)?;
    if g.is_elementary_two_group() || (g.is_cyclic() && g.order().is_multiple_of(2)) {
        Ok(Estimate::exact(g.order() + 1))
    } else {
        Ok(Estimate::upper(g.order()))
    }
}

fn eval_power_interval(g: &GroupSpec, k: usize) -> Evaluation {
    harborth_k(g, k)?;
    let (n, d) = power_group(g).ok_or_else(|| Inapplicable::new("needs C_n^d"))?;
    require(n > 2, || "needs n > 2".into())?;
    let lower = (n - 1) * 2u64.pow(d - 1) + 1;
    if d == 1 && n % 2 == 0 {
        Ok(Estimate::lower(lower))
    } else {
        Ok(Estimate::interval(lower, (n - 1) * n.pow(d - 1) + 1))
    }
}

fn eval_power_even_lower(g: &GroupSpec, k: usize) -> Evaluation {
    harborth_k(g, k)?;
    let (n, d) = power_group(g).ok_or_else(|| Inapplicable::new("needs C_n^d"))?;
    require(n % 2 == 0, || "needs even n".into())?;
    Ok(Estimate::lower(n * 2u64.pow(d - 1) + 1))
}

fn eval_prime_square(g: &GroupSpec, k: usize) -> Evaluation {
    harborth_k(g, k)?;
    let (p, d) = power_group(g).ok_or_else(|| Inapplicable::new("needs C_p^2"))?;
    require(d == 2 && is_prime(p), || "needs C_p^2".into())?;
    require(matches!(p, 3 | 5 | 7) || p >= 47, || {
        format!("p = {p} not covered")
    })?;
    Ok(Estimate::exact(2 * p - 1))
}

fn eval_ternary_powers(g: &GroupSpec, k: usize) -> Evaluation {
    harborth_k(g, k)?;
    match power_group(g) {
        Some((3, 3)) => Ok(Estimate::exact(10)),
        Some((3, 4)) => Ok(Estimate::exact(21)),
        Some((3, 5)) => Ok(Estimate::exact(45)),
        _ => Err(Inapplicable::new("needs C_3^3, C_3^4 or C_3^5")),
    }
}

fn eval_two_by_even(g: &GroupSpec, k: usize) -> Evaluation {
    harborth_k(g, k)?;
    let f = g.factors();
    require(f.len() == 2 && f[0] == 2, || "needs C_2 ⊕ C_2n".into())?;
    let n = f[1] / 2;
    Ok(Estimate::exact(if n % 2 == 1 {
        2 * n + 3
    } else {
        2 * n + 2
    }))
}

fn eval_three_by_three_prime(g: &GroupSpec, k: usize) -> Evaluation {
    harborth_k(g, k)?;
    let f = g.factors();
    require(
        f.len() == 2 && f[0] == 3 && f[1].is_multiple_of(3) && is_prime(f[1] / 3),
        || "needs C_3 ⊕ C_3p with p prime".into(),
    )?;
    let p = f[1] / 3;
    Ok(Estimate::exact(if p == 3 { 13 } else { 3 * p + 3 }))
}

fn eval_special(g: &GroupSpec, k: usize) -> Evaluation {
    special_value(g, k)
        .map(Estimate::exact)
        .ok_or_else(|| Inapplicable::new("no tabulated value"))
}

pub const FORMULAS: &[FormulaEntry] = &[
    FormulaEntry {
        id: "trivial",
        description: "k ≤ g^k(G) ≤ |G| + 1",
        eval: eval_trivial,
    },
    FormulaEntry {
        id: "k_equals_one",
        description: "g^1(G) = |G|",
        eval: eval_k_one,
    },
    FormulaEntry {
        id: "pair_halving",
        description: "g^2(G) = |A| + |B| + 1 with B the 2-torsion and G \\ B = A ∪ −A",
        eval: eval_pair_halving,
    },
    FormulaEntry {
        id: "odd_order_pairs",
        description: "g^2(G) = (|G| + 3)/2 for |G| odd",
        eval: eval_odd_order_pairs,
    },
    FormulaEntry {
        id: "dsh_upper",
        description: "g^k(C_p) ≤ ⌈(p + k² − 1)/k⌉",
        eval: eval_dsh,
    },
    FormulaEntry {
        id: "prime_cyclic_formula",
        description: "closed form for g^k(C_p) above the threshold in p",
        eval: eval_prime_cyclic,
    },
    FormulaEntry {
        id: "even_cyclic_k3_upper",
        description: "g^3(C_n) ≤ n/2 + 3 for even n ≥ 4",
        eval: eval_even_cyclic_k3,
    },
    FormulaEntry {
        id: "odd_cyclic_k4_interval",
        description: "⌈(n+15)/4⌉ ≤ g^4(C_n) ≤ ⌊(n+6)/2⌋ for odd n ≥ 5",
        eval: eval_odd_cyclic_k4,
    },
    FormulaEntry {
        id: "even_cyclic_k4_interval",
        description: "⌈(n+14)/4⌉ ≤ g^4(C_n) ≤ n/2 + 3 for even n > 5",
        eval: eval_even_cyclic_k4,
    },
    FormulaEntry {
        id: "odd_lift_upper",
        description: "g^k(C_2n) ≤ 2·g^k(C_n) − 1 for even k and odd n ≥ k",
        eval: eval_odd_lift,
    },
    FormulaEntry {
        id: "double_prime_k4_interval",
        description: "(p+7)/2 ≤ g^4(C_2p) ≤ 2⌈(p+15)/4⌉ − 1 for primes p > 3",
        eval: eval_double_prime_k4,
    },
    FormulaEntry {
        id: "full_group_free",
        description: "g(G) = |G| + 1 exactly for elementary 2-groups and even cyclic groups",
        eval: eval_full_group,
    },
    FormulaEntry {
        id: "power_group_interval",
        description: "(n−1)2^(d−1) + 1 ≤ g(C_n^d) ≤ (n−1)n^(d−1) + 1 for n > 2",
        eval: eval_power_interval,
    },
    FormulaEntry {
        id: "power_group_even_lower",
        description: "g(C_n^d) ≥ n·2^(d−1) + 1 for even n",
        eval: eval_power_even_lower,
    },
    FormulaEntry {
        id: "prime_square_value",
        description: "g(C_p^2) = 2p − 1 for p ∈ {3, 5, 7} and p ≥ 47",
        eval: eval_prime_square,
    },
    FormulaEntry {
        id: "ternary_power_values",
        description: "g(C_3^3) = 10, g(C_3^4) = 21, g(C_3^5) = 45",
        eval: eval_ternary_powers,
    },
    FormulaEntry {
        id: "two_by_even_value",
        description: "g(C_2 ⊕ C_2n) = 2n + 3 for odd n, 2n + 2 for even n",
        eval: eval_two_by_even,
    },
    FormulaEntry {
        id: "three_by_three_prime_value",
        description: "g(C_3 ⊕ C_3p) = 3p + 3 for primes p ≠ 3, 13 for p = 3",
        eval: eval_three_by_three_prime,
    },
    FormulaEntry {
        id: "special_values",
        description: "individually established small values",
        eval: eval_special,
    },
];

/// Entries that only concern the classical case `k = exp(G)`.
const CLASSICAL_IDS: [&str; 7] = [
    "full_group_free",
    "power_group_interval",
    "power_group_even_lower",
    "prime_square_value",
    "ternary_power_values",
    "two_by_even_value",
    "three_by_three_prime_value",
];

const SMALL_K_CYCLIC_IDS: [&str; 4] = [
    "special_values",
    "even_cyclic_k3_upper",
    "odd_cyclic_k4_interval",
    "even_cyclic_k4_interval",
];

pub fn formula(id: &str) -> Option<&'static FormulaEntry> {
    FORMULAS.iter().find(|e| e.id == id)
}

fn best_formula_upper(g: &GroupSpec, k: usize) -> u64 {
    FORMULAS
        .iter()
        .filter(|e| e.id != "odd_lift_upper")
        .filter_map(|e| e.evaluate(g, k).ok()?.upper)
        .min()
        .unwrap_or(g.order() + 1)
}

// ---------------------------------------------------------------------------
// Aggregation.

#[derive(Default)]
struct Collector {
    provenance: Vec<Provenance>,
    lower: Option<(u64, String)>,
    upper: Option<(u64, String)>,
    witness: Option<(u64, ElementSet)>,
}

impl Collector {
    fn add(&mut self, source: &str, est: Estimate) {
        if let Some(v) = est.exact_value() {
            self.push(source, v, BoundKind::Exact);
        } else {
            if let Some(v) = est.lower {
                self.push(source, v, BoundKind::Lower);
            }
            if let Some(v) = est.upper {
                self.push(source, v, BoundKind::Upper);
            }
        }
    }

    fn push(&mut self, source: &str, value: u64, kind: BoundKind) {
        self.provenance.push(Provenance {
            source: source.to_string(),
            value,
            kind,
        });
        if kind != BoundKind::Upper && self.lower.as_ref().is_none_or(|(l, _)| value > *l) {
            self.lower = Some((value, source.to_string()));
        }
        if kind != BoundKind::Lower && self.upper.as_ref().is_none_or(|(u, _)| value < *u) {
            self.upper = Some((value, source.to_string()));
        }
    }

    fn offer_witness(&mut self, bound: u64, set: &ElementSet) {
        if self.witness.as_ref().is_none_or(|(b, _)| bound > *b) {
            self.witness = Some((bound, set.clone()));
        }
    }

    fn finish(self, group: &GroupSpec, k: usize) -> Result<BoundReport> {
        let (lower, lower_source) = self.lower.unwrap_or((k as u64, "trivial".into()));
        let (upper, upper_source) = self.upper.unwrap_or((group.order() + 1, "trivial".into()));
        if lower > upper {
            return Err(Error::Inconsistent {
                lower,
                lower_source,
                upper,
                upper_source,
            });
        }
        Ok(BoundReport {
            group: group.clone(),
            k,
            lower,
            upper,
            exact: (lower == upper).then_some(lower),
            provenance: self.provenance,
            witness: self.witness.filter(|(b, _)| *b == lower).map(|(_, s)| s),
        })
    }
}

/// Formula table plus solver results registered at run time.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    solved: HashMap<(String, usize), SolverRecord>,
}

#[derive(Clone, Debug)]
struct SolverRecord {
    size: usize,
    exhausted: bool,
    witness: ElementSet,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a solver result: an exact value when the search was
    /// exhausted, otherwise the lower bound given by its witness.
    pub fn register(&mut self, result: &ExactResult) {
        let key = (result.group.literal(), result.k);
        let better = self.solved.get(&key).is_none_or(|old| {
            (result.exhausted && !old.exhausted)
                || (result.exhausted == old.exhausted && result.max_free_size > old.size)
        });
        if better {
            self.solved.insert(
                key,
                SolverRecord {
                    size: result.max_free_size,
                    exhausted: result.exhausted,
                    witness: result.witness.clone(),
                },
            );
        }
    }

    pub fn best_bounds(&self, group: &GroupSpec, k: usize) -> Result<BoundReport> {
        if k < 1 || k as u64 > group.order() {
            return Err(Error::domain(format!(
                "k = {k} outside 1..={} for group {}",
                group.order(),
                group.literal()
            )));
        }
        let mut c = Collector::default();
        for entry in FORMULAS {
            if let Ok(est) = entry.evaluate(group, k) {
                c.add(entry.id, est);
            }
        }
        for built in constructions::applicable(group, k) {
            c.push(
                &format!("construction:{}", built.name),
                built.implied_lower_bound,
                BoundKind::Lower,
            );
            c.offer_witness(built.implied_lower_bound, &built.set);
        }
        if let Some(rec) = self.solved.get(&(group.literal(), k)) {
            let v = rec.size as u64 + 1;
            let kind = if rec.exhausted {
                BoundKind::Exact
            } else {
                BoundKind::Lower
            };
            c.push("solver", v, kind);
            c.offer_witness(v, &rec.witness);
        }
        c.finish(group, k)
    }
}

/// [`Registry::best_bounds`] without any registered solver results.
pub fn best_bounds(group: &GroupSpec, k: usize) -> Result<BoundReport> {
    Registry::new().best_bounds(group, k)
}

fn report_from(group: &GroupSpec, k: usize, ids: &[&str]) -> Result<BoundReport> {
    let mut c = Collector::default();
    for id in ids {
        let entry = formula(id).expect("known formula id");
        if let Ok(est) = entry.evaluate(group, k) {
            c.add(entry.id, est);
        }
    }
    c.finish(group, k)
}

/// Exact `g^1` and `g^2`.
pub fn g1_g2_values(group: &GroupSpec, k: usize) -> Result<BoundReport> {
    if k != 1 && k != 2 {
        return Err(Error::domain(format!(
            "g1_g2_values needs k ∈ {{1, 2}}, got {k}"
        )));
    }
    if k as u64 > group.order() {
        return Err(Error::domain(format!(
            "k = {k} exceeds |G| = {}",
            group.order()
        )));
    }
    report_from(
        group,
        k,
        &["k_equals_one", "pair_halving", "odd_order_pairs"],
    )
}

/// Tightest known bounds on `g^3(C_n)` and `g^4(C_n)` from the small-k
/// formulas and the table of established values.
pub fn small_k_cyclic_bounds(n: u64, k: usize) -> Evaluation {
    if k != 3 && k != 4 {
        return Err(Inapplicable::new(format!("needs k ∈ {{3, 4}}, got {k}")));
    }
    let g = GroupSpec::cyclic(n).map_err(|e| Inapplicable::new(e.to_string()))?;
    let mut lower = None;
    let mut upper = None;
    for id in SMALL_K_CYCLIC_IDS {
        if let Ok(est) = formula(id).expect("known formula id").evaluate(&g, k) {
            lower = lower.max(est.lower);
            upper = match (upper, est.upper) {
                (Some(a), Some(b)) => Some(u64::min(a, b)),
                (a, b) => a.or(b),
            };
        }
    }
    if lower.is_none() && upper.is_none() {
        return Err(Inapplicable::new(format!(
            "no small-k formula covers n = {n}, k = {k}"
        )));
    }
    Ok(Estimate { lower, upper })
}

/// Known bounds for the classical constant `g(G) = g^{exp G}(G)`.
pub fn classical_harborth(group: &GroupSpec) -> Result<BoundReport> {
    let k = group.exponent() as usize;
    let mut ids = vec!["trivial"];
    ids.extend(CLASSICAL_IDS);
    report_from(group, k, &ids)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: u64) -> GroupSpec {
        GroupSpec::cyclic(n).unwrap()
    }

    #[test]
    fn dsh_examples() {
        assert_eq!(dsh_upper(13, 4).unwrap(), 7);
        assert_eq!(dsh_upper(7, 3).unwrap(), 5);
        assert_eq!(dsh_upper(11, 8).unwrap(), 10);
        assert!(dsh_upper(12, 3).is_err());
        assert!(dsh_upper(7, 7).is_err());
    }

    #[test]
    fn prime_cyclic_examples() {
        for p in [5u64, 13, 17, 29, 101, 9973] {
            assert_eq!(
                prime_cyclic_value(p, 4).unwrap(),
                Estimate::exact(ceil_div(p + 15, 4))
            );
        }
        for p in [7u64, 13, 19, 31] {
            assert_eq!(
                prime_cyclic_value(p, 3).unwrap(),
                Estimate::exact(ceil_div(p + 8, 3))
            );
        }
        assert!(prime_cyclic_value(7, 6).is_err());
        assert!(prime_cyclic_value(19, 8).is_err());
        assert_eq!(prime_cyclic_value(17, 8).unwrap(), Estimate::exact(10));
        assert_eq!(prime_cyclic_value(11, 3).unwrap(), Estimate::interval(6, 7));
    }

    #[test]
    fn g1_g2_examples() {
        assert_eq!(g1_g2_values(&cyc(5), 2).unwrap().exact, Some(4));
        let v8 = GroupSpec::elementary_two(3).unwrap();
        assert_eq!(g1_g2_values(&v8, 2).unwrap().exact, Some(9));
        let g = GroupSpec::parse("2,12").unwrap();
        assert_eq!(g1_g2_values(&g, 2).unwrap().exact, Some(15));
        assert_eq!(g1_g2_values(&g, 1).unwrap().exact, Some(24));
        assert!(g1_g2_values(&g, 3).is_err());
    }

    #[test]
    fn small_k_examples() {
        assert_eq!(small_k_cyclic_bounds(10, 3).unwrap(), Estimate::exact(7));
        assert_eq!(
            small_k_cyclic_bounds(9, 4).unwrap(),
            Estimate::interval(6, 7)
        );
        assert_eq!(small_k_cyclic_bounds(18, 3).unwrap(), Estimate::exact(10));
        assert!(small_k_cyclic_bounds(15, 3).is_err());
        assert!(small_k_cyclic_bounds(9, 5).is_err());
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift_bounds(5, 4, 5).unwrap(), 9);
        assert!(lift_bounds(3, 4, 3).is_err());
        assert!(lift_bounds(5, 3, 5).is_err());
        assert_eq!(double_prime_k4_bounds(5).unwrap().lower, Some(6));
        let r = best_bounds(&cyc(10), 4).unwrap();
        assert_eq!(r.upper, 8);
        let r = best_bounds(&cyc(14), 4).unwrap();
        assert_eq!(r.upper, 10);
    }

    #[test]
    fn classical_examples() {
        let g = GroupSpec::parse("2,6").unwrap();
        assert_eq!(classical_harborth(&g).unwrap().exact, Some(9));
        let g = GroupSpec::parse("3,15").unwrap();
        assert_eq!(classical_harborth(&g).unwrap().exact, Some(18));
        assert_eq!(classical_harborth(&cyc(6)).unwrap().exact, Some(7));
        assert_eq!(classical_harborth(&cyc(7)).unwrap().exact, Some(7));
        let g = GroupSpec::parse("4,4").unwrap();
        let r = classical_harborth(&g).unwrap();
        assert_eq!((r.lower, r.upper), (9, 13));
    }

    #[test]
    fn best_bounds_examples() {
        let r = best_bounds(&cyc(13), 4).unwrap();
        assert_eq!(r.exact, Some(7));
        let sources: Vec<&str> = r.provenance.iter().map(|p| p.source.as_str()).collect();
        for s in [
            "prime_cyclic_formula",
            "dsh_upper",
            "odd_cyclic_k4_interval",
        ] {
            assert!(sources.contains(&s), "missing {s}");
        }
        assert_eq!(r.witness.as_ref().map(|w| w.len()), Some(6));

        let r = best_bounds(&cyc(11), 8).unwrap();
        assert_eq!(r.exact, Some(10));

        let g = GroupSpec::elementary_two(5).unwrap();
        assert_eq!(best_bounds(&g, 4).unwrap().lower, 8);
        assert!(best_bounds(&g, 0).is_err());
    }

    #[test]
    fn registered_results_tighten() {
        let g = cyc(15);
        let before = best_bounds(&g, 5).unwrap();
        assert!(before.exact.is_none());
        let result = crate::solver::max_zero_sum_free(&g, 5, &Default::default()).unwrap();
        let mut reg = Registry::new();
        reg.register(&result);
        let after = reg.best_bounds(&g, 5).unwrap();
        assert_eq!(after.exact, Some(result.harborth));
    }

    #[test]
    fn contradiction_is_reported() {
        let mut c = Collector::default();
        c.add("a", Estimate::lower(9));
        c.add("b", Estimate::upper(8));
        match c.finish(&cyc(10), 4) {
            Err(Error::Inconsistent {
                lower_source,
                upper_source,
                ..
            }) => assert_eq!((lower_source.as_str(), upper_source.as_str()), ("a", "b")),
            other => panic!("expected an inconsistency, got {other:?}"),
        }
    }
}
