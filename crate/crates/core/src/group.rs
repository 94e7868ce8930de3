//! Finite abelian groups in invariant-factor form.
//!
//! A group is stored as its chain `n_1 | n_2 | ... | n_r`. Elements are
//! coordinate vectors with `0 <= c_i < n_i`, and every element also has a
//! canonical mixed-radix index in `[0, order)` with the last coordinate
//! varying fastest. Indices are what the rest of the crate works with.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::num::{gcd, lcm};
use crate::set::ElementSet;

/// Above this order the addition table is computed row by row instead of
/// being stored in full.
const FULL_TABLE_MAX_ORDER: usize = 1024;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    factors: Arc<[u64]>,
    order: u64,
}

impl GroupSpec {
    /// Builds the group `C_{m_1} ⊕ ... ⊕ C_{m_s}` for an arbitrary list of
    /// moduli and normalizes it to invariant-factor form.
    pub fn new(moduli: &[u64]) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidGroup("empty modulus list".into()));
        }
        if let Some(&bad) = moduli.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidGroup(format!("modulus {bad} is below 2")));
        }
        let mut chain = moduli.to_vec();
        // One pass of pairwise gcd/lcm exchange leaves a divisibility chain:
        // after step i, chain[i] divides every later entry.
        for i in 0..chain.len() {
            for j in i + 1..chain.len() {
                let (a, b) = (chain[i], chain[j]);
                chain[i] = gcd(a, b);
                chain[j] = lcm(a, b)
                    .ok_or_else(|| Error::InvalidGroup("group order overflows u64".into()))?;
            }
        }
        chain.retain(|&f| f != 1);
        Self::from_chain(chain)
    }

    /// Accepts only lists that already form a divisibility chain.
    pub fn from_invariant_factors(factors: &[u64]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidGroup("empty factor list".into()));
        }
        if let Some(&bad) = factors.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidGroup(format!("factor {bad} is below 2")));
        }
        if let Some(w) = factors.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidGroup(format!(
                "{} does not divide {}; not in invariant-factor form",
                w[0], w[1]
            )));
        }
        Self::from_chain(factors.to_vec())
    }

    fn from_chain(chain: Vec<u64>) -> Result<Self> {
        let order = chain
            .iter()
            .try_fold(1u64, |acc, &f| acc.checked_mul(f))
            .ok_or_else(|| Error::InvalidGroup("group order overflows u64".into()))?;
        Ok(GroupSpec {
            factors: chain.into(),
            order,
        })
    }

    /// Parses a group literal such as `"2,2,2"` or `"6, 4"`.
    pub fn parse(literal: &str) -> Result<Self> {
        let moduli = parse_moduli(literal)?;
        Self::new(&moduli)
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(&[n])
    }

    /// `C_2^r`.
    pub fn elementary_two(r: usize) -> Result<Self> {
        Self::new(&vec![2; r])
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        *self.factors.last().expect("nonempty chain")
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Canonical literal, e.g. `"2,12"`.
    pub fn literal(&self) -> String {
        self.factors
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn is_cyclic(&self) -> bool {
        self.rank() == 1
    }

    pub fn is_elementary_two_group(&self) -> bool {
        self.exponent() == 2
    }

    /// `Some(p)` when the group is `C_p` for a prime `p`.
    pub fn prime_cyclic(&self) -> Option<u64> {
        (self.is_cyclic() && crate::num::is_prime(self.order)).then_some(self.order)
    }

    /// Order as a `usize`, for algorithms that enumerate the group.
    pub fn size(&self) -> usize {
        usize::try_from(self.order).expect("group order fits in memory")
    }

    pub fn zero(&self) -> Element {
        Element {
            group: self.clone(),
            coords: vec![0; self.rank()],
        }
    }

    pub fn element(&self, coords: &[u64]) -> Result<Element> {
        if coords.len() != self.rank() {
            return Err(Error::domain(format!(
                "element has {} coordinates, group {} has rank {}",
                coords.len(),
                self.literal(),
                self.rank()
            )));
        }
        for (&c, &n) in coords.iter().zip(self.factors.iter()) {
            if c >= n {
                return Err(Error::domain(format!(
                    "coordinate {c} out of range for modulus {n}"
                )));
            }
        }
        Ok(Element {
            group: self.clone(),
            coords: coords.to_vec(),
        })
    }

    pub fn element_from_index(&self, index: u64) -> Result<Element> {
        if index >= self.order {
            return Err(Error::Range {
                index,
                order: self.order,
            });
        }
        Ok(Element {
            group: self.clone(),
            coords: self.coords_of(index),
        })
    }

    /// Mixed-radix decomposition; the caller guarantees `index < order`.
    pub fn coords_of(&self, mut index: u64) -> Vec<u64> {
        let mut coords = vec![0; self.rank()];
        for (c, &n) in coords.iter_mut().zip(self.factors.iter()).rev() {
            *c = index % n;
            index /= n;
        }
        coords
    }

    pub fn index_of(&self, coords: &[u64]) -> u64 {
        coords
            .iter()
            .zip(self.factors.iter())
            .fold(0, |acc, (&c, &n)| acc * n + c)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order).map(move |i| Element {
            group: self.clone(),
            coords: self.coords_of(i),
        })
    }

    /// Index-level arithmetic tables for the hot loops.
    pub fn arith(&self) -> IndexArith {
        IndexArith::new(self)
    }

    /// `B = {x : 2x = 0}` and one representative of each pair `{x, -x}`
    /// outside `B`, namely the one with the smaller index.
    pub fn halving_decomposition(&self) -> HalvingDecomposition {
        let arith = self.arith();
        let n = self.size();
        let mut torsion = ElementSet::empty(self);
        let mut half = ElementSet::empty(self);
        for x in 0..n {
            let neg = arith.neg(x);
            if neg == x {
                torsion.insert_index(x).expect("in range");
            } else if x < neg {
                half.insert_index(x).expect("in range");
            }
        }
        HalvingDecomposition { torsion, half }
    }

    /// `{t : k·t = 0}` as sorted indices.
    pub fn torsion_indices(&self, k: u64) -> Vec<usize> {
        let arith = self.arith();
        (0..self.size())
            .filter(|&t| arith.scalar(k, t) == 0)
            .collect()
    }
}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupSpec({})", self.literal())
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|n| format!("C_{n}")).collect();
        f.write_str(&parts.join(" ⊕ "))
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.literal())
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        GroupSpec::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Parses a comma-separated modulus list without canonicalizing it.
pub fn parse_moduli(literal: &str) -> Result<Vec<u64>> {
    let trimmed = literal.trim();
    if trimmed.is_empty() {
        return Err(Error::InvalidGroup("empty group literal".into()));
    }
    trimmed
        .split(',')
        .map(|part| {
            part.trim().parse::<u64>().map_err(|_| {
                Error::InvalidGroup(format!("`{}` is not a positive integer", part.trim()))
            })
        })
        .collect()
}

/// Every abelian group of order `n`, as invariant-factor chains in
/// lexicographic order of the chain.
pub fn abelian_groups_of_order(n: u64) -> Vec<GroupSpec> {
    fn rec(rem: u64, lower: u64, chain: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rem == 1 {
            if !chain.is_empty() {
                out.push(chain.clone());
            }
            return;
        }
        for f in 2..=rem {
            if !rem.is_multiple_of(f) || f % lower != 0 {
                continue;
            }
            let rest = rem / f;
            if rest != 1 && !rest.is_multiple_of(f) {
                continue;
            }
            chain.push(f);
            rec(rest, f, chain, out);
            chain.pop();
        }
    }
    if n < 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut out);
    out.sort();
    out.into_iter()
        .map(|c| GroupSpec::from_invariant_factors(&c).expect("valid chain"))
        .collect()
}

/// A group element together with the group it belongs to.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    group: GroupSpec,
    coords: Vec<u64>,
}

impl Element {
    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn index(&self) -> u64 {
        self.group.index_of(&self.coords)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn same_group(&self, other: &Element) -> Result<()> {
        if self.group != other.group {
            return Err(Error::domain(format!(
                "elements of {} and {} cannot be combined",
                self.group.literal(),
                other.group.literal()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.same_group(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .zip(self.group.factors.iter())
            .map(|((&a, &b), &n)| ((a as u128 + b as u128) % n as u128) as u64)
            .collect();
        Ok(Element {
            group: self.group.clone(),
            coords,
        })
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        let coords = self
            .coords
            .iter()
            .zip(self.group.factors.iter())
            .map(|(&a, &n)| (n - a) % n)
            .collect();
        Element {
            group: self.group.clone(),
            coords,
        }
    }

    /// `m·g`, with `m` reduced per coordinate modulus (negative `m` allowed).
    pub fn scalar_mul(&self, m: i64) -> Element {
        let coords = self
            .coords
            .iter()
            .zip(self.group.factors.iter())
            .map(|(&a, &n)| {
                let m = m.rem_euclid(n as i64) as u128;
                ((m * a as u128) % n as u128) as u64
            })
            .collect();
        Element {
            group: self.group.clone(),
            coords,
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            write!(f, "{}", self.coords[0])
        } else {
            let parts: Vec<String> = self.coords.iter().map(u64::to_string).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

/// `G = B ∪ A ∪ −A` with `B` the 2-torsion.
#[derive(Clone, Debug)]
pub struct HalvingDecomposition {
    pub torsion: ElementSet,
    pub half: ElementSet,
}

/// Addition, negation and scalar multiplication on element indices.
#[derive(Clone)]
pub struct IndexArith {
    factors: Vec<u64>,
    strides: Vec<usize>,
    order: usize,
    neg: Vec<u32>,
    table: Option<Vec<u32>>,
}

impl IndexArith {
    fn new(group: &GroupSpec) -> Self {
        let order = group.size();
        assert!(
            order <= u32::MAX as usize,
            "group too large for index arithmetic"
        );
        let factors = group.factors().to_vec();
        let mut strides = vec![1usize; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1] as usize;
        }
        let mut arith = IndexArith {
            factors,
            strides,
            order,
            neg: Vec::new(),
            table: None,
        };
        arith.neg = (0..order).map(|x| arith.slow_neg(x) as u32).collect();
        if order <= FULL_TABLE_MAX_ORDER {
            let mut table = Vec::with_capacity(order * order);
            for x in 0..order {
                table.extend(arith.slow_row(x));
            }
            arith.table = Some(table);
        }
        arith
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn slow_neg(&self, x: usize) -> usize {
        let mut out = 0;
        let mut rest = x;
        for (i, &n) in self.factors.iter().enumerate().rev() {
            let n = n as usize;
            let c = rest % n;
            rest /= n;
            out += ((n - c) % n) * self.strides[i];
        }
        out
    }

    fn slow_add(&self, x: usize, y: usize) -> usize {
        let mut out = 0;
        let (mut a, mut b) = (x, y);
        for (i, &n) in self.factors.iter().enumerate().rev() {
            let n = n as usize;
            let c = (a % n + b % n) % n;
            a /= n;
            b /= n;
            out += c * self.strides[i];
        }
        out
    }

    fn slow_row(&self, x: usize) -> Vec<u32> {
        (0..self.order)
            .map(|g| self.slow_add(g, x) as u32)
            .collect()
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x] as usize
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        match &self.table {
            Some(t) => t[x * self.order + y] as usize,
            None => self.slow_add(x, y),
        }
    }

    #[inline]
    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    /// The translation `g ↦ g + x` as a lookup row.
    pub fn row(&self, x: usize) -> std::borrow::Cow<'_, [u32]> {
        match &self.table {
            Some(t) => std::borrow::Cow::Borrowed(&t[x * self.order..(x + 1) * self.order]),
            None => std::borrow::Cow::Owned(self.slow_row(x)),
        }
    }

    /// `m·x` for a nonnegative multiplier.
    pub fn scalar(&self, m: u64, x: usize) -> usize {
        let mut out = 0;
        let mut rest = x;
        for (i, &n) in self.factors.iter().enumerate().rev() {
            let c = (rest as u64) % n;
            rest /= n as usize;
            let v = ((m % n) as u128 * c as u128 % n as u128) as usize;
            out += v * self.strides[i];
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        let g = GroupSpec::new(&[2, 2, 2]).unwrap();
        assert_eq!(
            (g.factors(), g.order(), g.exponent()),
            (&[2, 2, 2][..], 8, 2)
        );
        let g = GroupSpec::new(&[6, 4]).unwrap();
        assert_eq!(
            (g.factors(), g.order(), g.exponent()),
            (&[2, 12][..], 24, 12)
        );
        let g = GroupSpec::new(&[18]).unwrap();
        assert_eq!((g.factors(), g.order(), g.exponent()), (&[18][..], 18, 18));
        assert_eq!(GroupSpec::new(&[3, 5]).unwrap().factors(), &[15]);
        assert_eq!(GroupSpec::new(&[4, 2, 6]).unwrap().factors(), &[2, 2, 12]);
    }

    #[test]
    fn invalid_groups() {
        assert!(matches!(GroupSpec::new(&[]), Err(Error::InvalidGroup(_))));
        assert!(matches!(GroupSpec::new(&[1]), Err(Error::InvalidGroup(_))));
        assert!(matches!(
            GroupSpec::new(&[4, 0]),
            Err(Error::InvalidGroup(_))
        ));
        assert!(matches!(
            GroupSpec::parse("2,x"),
            Err(Error::InvalidGroup(_))
        ));
        assert!(matches!(GroupSpec::parse(" "), Err(Error::InvalidGroup(_))));
        assert!(GroupSpec::from_invariant_factors(&[4, 6]).is_err());
        assert_eq!(GroupSpec::parse(" 6, 4 ").unwrap().literal(), "2,12");
    }

    #[test]
    fn element_arithmetic() {
        let c18 = GroupSpec::cyclic(18).unwrap();
        let a = c18.element(&[7]).unwrap();
        let b = c18.element(&[15]).unwrap();
        assert_eq!(a.add(&b).unwrap().coords(), &[4]);
        assert!(c18.element(&[6]).unwrap().scalar_mul(3).is_zero());

        let g = GroupSpec::new(&[2, 12]).unwrap();
        assert_eq!(g.element(&[1, 5]).unwrap().neg().coords(), &[1, 7]);
        assert_eq!(g.element(&[1, 5]).unwrap().scalar_mul(-1).coords(), &[1, 7]);

        let other = GroupSpec::new(&[3, 12]).unwrap();
        let x = other.element(&[1, 5]).unwrap();
        assert!(matches!(
            g.element(&[1, 5]).unwrap().add(&x),
            Err(Error::Domain(_))
        ));
        assert!(g.element(&[2, 0]).is_err());
        assert!(g.element(&[1]).is_err());
    }

    #[test]
    fn mixed_radix_indices() {
        let g = GroupSpec::new(&[2, 12]).unwrap();
        assert_eq!(g.zero().index(), 0);
        assert_eq!(g.element(&[1, 0]).unwrap().index(), 12);
        assert_eq!(g.element_from_index(23).unwrap().coords(), &[1, 11]);
        assert!(matches!(
            g.element_from_index(24),
            Err(Error::Range {
                index: 24,
                order: 24
            })
        ));
    }

    #[test]
    fn halving_counts() {
        let d = GroupSpec::cyclic(5).unwrap().halving_decomposition();
        assert_eq!((d.torsion.len(), d.half.len()), (1, 2));
        let d = GroupSpec::elementary_two(3)
            .unwrap()
            .halving_decomposition();
        assert_eq!((d.torsion.len(), d.half.len()), (8, 0));
        let g = GroupSpec::new(&[2, 12]).unwrap();
        let d = g.halving_decomposition();
        // Oracle: count 2x = 0 by coordinates.
        let torsion = g.elements().filter(|x| x.scalar_mul(2).is_zero()).count();
        assert_eq!(torsion, 4);
        assert_eq!((d.torsion.len(), d.half.len()), (4, 10));
    }

    #[test]
    fn group_enumeration() {
        let lits: Vec<String> = abelian_groups_of_order(16)
            .iter()
            .map(GroupSpec::literal)
            .collect();
        assert_eq!(lits, ["2,2,2,2", "2,2,4", "2,8", "4,4", "16"]);
        assert_eq!(abelian_groups_of_order(12).len(), 2);
        assert_eq!(abelian_groups_of_order(7).len(), 1);
        assert!(abelian_groups_of_order(1).is_empty());
        let total: usize = (2..=18).map(|n| abelian_groups_of_order(n).len()).sum();
        assert_eq!(total, 27);
    }

    #[test]
    fn arith_matches_elements() {
        for lit in ["2,12", "3,3,3", "2048"] {
            let g = GroupSpec::parse(lit).unwrap();
            let ar = g.arith();
            let n = g.order().min(300);
            for x in 0..n {
                let ex = g.element_from_index(x).unwrap();
                assert_eq!(ar.neg(x as usize) as u64, ex.neg().index());
                for y in (0..n).step_by(7) {
                    let ey = g.element_from_index(y).unwrap();
                    assert_eq!(
                        ar.add(x as usize, y as usize) as u64,
                        ex.add(&ey).unwrap().index()
                    );
                }
                assert_eq!(ar.scalar(5, x as usize) as u64, ex.scalar_mul(5).index());
            }
        }
    }
}
