//! Symmetry groups used for orbital branching.
//!
//! Every action here maps k-zero-sum-free sets to k-zero-sum-free sets:
//! unit scalars `x ↦ m·x` with `gcd(m, exp G) = 1`, translations `x ↦ x + t`
//! with `k·t = 0`, and on `C_2^r` every invertible linear map (plus every
//! translation when `k` is even).
//!
//! At a search node the active group is the pointwise stabilizer of the
//! members chosen so far. Branching either includes the smallest candidate
//! `c` or excludes its whole orbit; both children stay invariant under the
//! group they inherit, which is what makes the pruning sound.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::group::GroupSpec;
use crate::num::gcd;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    None,
    Scalar,
    ScalarAndTranslation,
    /// Affine maps of `C_2^r`. On other groups this behaves like
    /// [`Symmetry::ScalarAndTranslation`].
    LinearOverF2,
}

impl Symmetry {
    pub const ALL: [Symmetry; 4] = [
        Symmetry::None,
        Symmetry::Scalar,
        Symmetry::ScalarAndTranslation,
        Symmetry::LinearOverF2,
    ];

    pub fn default_for(group: &GroupSpec, _k: usize) -> Symmetry {
        if group.is_elementary_two_group() {
            Symmetry::LinearOverF2
        } else {
            Symmetry::ScalarAndTranslation
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Symmetry::None => "none",
            Symmetry::Scalar => "scalar",
            Symmetry::ScalarAndTranslation => "scalar_and_translation",
            Symmetry::LinearOverF2 => "linear_over_f2",
        }
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Symmetry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Symmetry::ALL
            .into_iter()
            .find(|sym| sym.name() == s || sym.name().replace('_', "-") == s)
            .ok_or_else(|| Error::domain(format!("unknown symmetry option `{s}`")))
    }
}

#[derive(Clone)]
pub(crate) enum SymGroup {
    Trivial,
    /// Explicit list of permutations of element indices, identity included.
    Perms(Arc<Vec<Box<[u32]>>>),
    /// Pointwise stabilizer, inside the affine (or linear) group of `C_2^r`,
    /// of a set of points whose affine span is `span`. `span` is empty when
    /// nothing is fixed yet, which only happens with translations allowed.
    AffineF2 {
        span: Arc<Vec<bool>>,
        base: usize,
        span_len: usize,
    },
}

impl SymGroup {
    pub(crate) fn build(group: &GroupSpec, k: usize, symmetry: Symmetry) -> SymGroup {
        let n = group.size();
        match symmetry {
            Symmetry::None => SymGroup::Trivial,
            Symmetry::LinearOverF2 if group.is_elementary_two_group() => {
                if k.is_multiple_of(2) {
                    SymGroup::AffineF2 {
                        span: Arc::new(Vec::new()),
                        base: 0,
                        span_len: 0,
                    }
                } else {
                    let mut span = vec![false; n];
                    span[0] = true;
                    SymGroup::AffineF2 {
                        span: Arc::new(span),
                        base: 0,
                        span_len: 1,
                    }
                    .normalized(n)
                }
            }
            Symmetry::Scalar => Self::affine_perms(group, &[0]),
            Symmetry::ScalarAndTranslation | Symmetry::LinearOverF2 => {
                Self::affine_perms(group, &group.torsion_indices(k as u64))
            }
        }
    }

    /// All maps `x ↦ m·x + t` for units `m` and the given translations.
    fn affine_perms(group: &GroupSpec, translations: &[usize]) -> SymGroup {
        let arith = group.arith();
        let n = group.size();
        let exp = group.exponent();
        let units: Vec<u64> = (1..exp.max(2)).filter(|&m| gcd(m, exp) == 1).collect();
        let mut perms = Vec::with_capacity(units.len() * translations.len());
        for &m in &units {
            let scaled: Vec<usize> = (0..n).map(|x| arith.scalar(m, x)).collect();
            for &t in translations {
                let p: Box<[u32]> = scaled.iter().map(|&y| arith.add(y, t) as u32).collect();
                perms.push(p);
            }
        }
        if perms.len() <= 1 {
            SymGroup::Trivial
        } else {
            SymGroup::Perms(Arc::new(perms))
        }
    }

    fn normalized(self, order: usize) -> SymGroup {
        match &self {
            SymGroup::Perms(p) if p.len() <= 1 => SymGroup::Trivial,
            SymGroup::AffineF2 { span_len, .. } if *span_len >= order => SymGroup::Trivial,
            _ => self,
        }
    }

    pub(crate) fn is_trivial(&self) -> bool {
        matches!(self, SymGroup::Trivial)
    }

    /// Orbit of `c` intersected with `cands` (sorted, contains `c`).
    pub(crate) fn orbit(&self, c: usize, cands: &[u32]) -> Vec<u32> {
        match self {
            SymGroup::Trivial => vec![c as u32],
            SymGroup::Perms(perms) => {
                let mut orbit: Vec<u32> = perms.iter().map(|p| p[c]).collect();
                orbit.sort_unstable();
                orbit.dedup();
                debug_assert!(orbit.iter().all(|x| cands.binary_search(x).is_ok()));
                orbit
            }
            SymGroup::AffineF2 { span, span_len, .. } => {
                if *span_len == 0 {
                    cands.to_vec()
                } else if span[c] {
                    vec![c as u32]
                } else {
                    cands
                        .iter()
                        .copied()
                        .filter(|&x| !span[x as usize])
                        .collect()
                }
            }
        }
    }

    /// Pointwise stabilizer of `c`.
    pub(crate) fn stabilizer(&self, c: usize, order: usize) -> SymGroup {
        match self {
            SymGroup::Trivial => SymGroup::Trivial,
            SymGroup::Perms(perms) => {
                let kept: Vec<Box<[u32]>> = perms
                    .iter()
                    .filter(|p| p[c] as usize == c)
                    .cloned()
                    .collect();
                SymGroup::Perms(Arc::new(kept)).normalized(order)
            }
            SymGroup::AffineF2 {
                span,
                base,
                span_len,
            } => {
                if *span_len == 0 {
                    let mut s = vec![false; order];
                    s[c] = true;
                    return SymGroup::AffineF2 {
                        span: Arc::new(s),
                        base: c,
                        span_len: 1,
                    }
                    .normalized(order);
                }
                if span[c] {
                    return self.clone();
                }
                // Elements of C_2^r are bit vectors of their index, so
                // addition is XOR. New span = span ∪ (span + c + base).
                let shift = c ^ base;
                let mut s = span.as_ref().clone();
                for a in 0..order {
                    if span[a] {
                        s[a ^ shift] = true;
                    }
                }
                SymGroup::AffineF2 {
                    span: Arc::new(s),
                    base: *base,
                    span_len: span_len * 2,
                }
                .normalized(order)
            }
        }
    }
}
