//! Duplicate-free element sets and the plain-text set file format.
//!
//! A set file looks like
//!
//! ```text
//! group: 2,12
//! 0,1
//! 1,5
//! ```
//!
//! The first line names the group in invariant-factor form; every following
//! line is one element given by its coordinates. Writing a parsed file
//! reproduces it byte for byte.

use std::fmt;
use std::path::Path;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{parse_moduli, Element, GroupSpec};

const GROUP_PREFIX: &str = "group:";

/// Ordered, duplicate-free collection of elements with O(1) membership.
#[derive(Clone)]
pub struct ElementSet {
    group: GroupSpec,
    members: Vec<usize>,
    bits: Vec<u64>,
}

impl ElementSet {
    pub fn empty(group: &GroupSpec) -> Self {
        ElementSet {
            group: group.clone(),
            members: Vec::new(),
            bits: vec![0; group.size().div_ceil(64)],
        }
    }

    /// Builds a set from indices, rejecting duplicates and out-of-range values.
    pub fn from_indices<I>(group: &GroupSpec, indices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = Self::empty(group);
        for i in indices {
            if !set.insert_index(i)? {
                return Err(Error::domain(format!("duplicate element with index {i}")));
            }
        }
        Ok(set)
    }

    /// Builds a set from cyclic residues; only valid for cyclic groups.
    pub fn from_residues(group: &GroupSpec, residues: &[u64]) -> Result<Self> {
        if !group.is_cyclic() {
            return Err(Error::domain(format!(
                "residue list given for non-cyclic group {}",
                group.literal()
            )));
        }
        Self::from_indices(group, residues.iter().map(|&r| r as usize))
    }

    pub fn from_elements<'a, I>(group: &GroupSpec, elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Element>,
    {
        let mut set = Self::empty(group);
        for e in elements {
            if e.group() != group {
                return Err(Error::domain(format!(
                    "element {e} belongs to {}, not {}",
                    e.group().literal(),
                    group.literal()
                )));
            }
            let i = e.index() as usize;
            if !set.insert_index(i)? {
                return Err(Error::domain(format!("duplicate element {e}")));
            }
        }
        Ok(set)
    }

    /// Appends `index` if absent. Returns whether it was inserted.
    pub fn insert_index(&mut self, index: usize) -> Result<bool> {
        if index >= self.group.size() {
            return Err(Error::Range {
                index: index as u64,
                order: self.group.order(),
            });
        }
        if self.contains_index(index) {
            return Ok(false);
        }
        self.bits[index / 64] |= 1 << (index % 64);
        self.members.push(index);
        Ok(true)
    }

    pub fn insert(&mut self, e: &Element) -> Result<bool> {
        if e.group() != &self.group {
            return Err(Error::domain("element from a different group"));
        }
        self.insert_index(e.index() as usize)
    }

    #[inline]
    pub fn contains_index(&self, index: usize) -> bool {
        index < self.group.size() && self.bits[index / 64] >> (index % 64) & 1 == 1
    }

    pub fn contains(&self, e: &Element) -> bool {
        e.group() == &self.group && self.contains_index(e.index() as usize)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Member indices in insertion order.
    pub fn indices(&self) -> &[usize] {
        &self.members
    }

    pub fn sorted_indices(&self) -> Vec<usize> {
        let mut v = self.members.clone();
        v.sort_unstable();
        v
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.members.iter().map(|&i| {
            self.group
                .element_from_index(i as u64)
                .expect("member in range")
        })
    }

    /// Same members, sorted by index.
    pub fn sorted(&self) -> ElementSet {
        ElementSet::from_indices(&self.group, self.sorted_indices()).expect("valid members")
    }

    /// Set equality, ignoring member order.
    pub fn same_members(&self, other: &ElementSet) -> bool {
        self.group == other.group && self.bits == other.bits
    }

    pub fn is_subset_of(&self, other: &ElementSet) -> bool {
        self.group == other.group && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// Writes the set file text.
    pub fn to_set_file(&self) -> String {
        let mut out = format!("{GROUP_PREFIX} {}\n", self.group.literal());
        for &i in &self.members {
            let coords = self.group.coords_of(i as u64);
            let line: Vec<String> = coords.iter().map(u64::to_string).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn parse_set_file(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let group = loop {
            let (no, line) = lines.next().ok_or(Error::Parse {
                line: 1,
                message: "missing `group:` header".into(),
            })?;
            if line.trim().is_empty() {
                continue;
            }
            let rest = line.trim().strip_prefix(GROUP_PREFIX).ok_or(Error::Parse {
                line: no + 1,
                message: format!("expected `{GROUP_PREFIX} n_1,...,n_r`"),
            })?;
            let moduli = parse_moduli(rest).map_err(|e| Error::Parse {
                line: no + 1,
                message: e.to_string(),
            })?;
            break GroupSpec::from_invariant_factors(&moduli).map_err(|e| Error::Parse {
                line: no + 1,
                message: e.to_string(),
            })?;
        };
        let mut set = ElementSet::empty(&group);
        for (no, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: no + 1,
                message,
            };
            let coords = line
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<u64>()
                        .map_err(|_| err(format!("bad coordinate `{c}`")))
                })
                .collect::<Result<Vec<u64>>>()?;
            let e = group.element(&coords).map_err(|e| err(e.to_string()))?;
            if !set.insert(&e)? {
                return Err(err(format!("duplicate element {e}")));
            }
        }
        Ok(set)
    }

    pub fn read_set_file(path: &Path) -> Result<Self> {
        Self::parse_set_file(&std::fs::read_to_string(path)?)
    }

    pub fn write_set_file(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_set_file())?;
        Ok(())
    }
}

impl PartialEq for ElementSet {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.members == other.members
    }
}

impl Eq for ElementSet {}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ElementSet[{}]{self}", self.group.literal())
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Serialized as a list of coordinate vectors.
impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for &i in &self.members {
            seq.serialize_element(&self.group.coords_of(i as u64))?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_and_duplicates() {
        let g = GroupSpec::cyclic(8).unwrap();
        let s = ElementSet::from_residues(&g, &[1, 3, 5, 7]).unwrap();
        assert!(s.contains_index(5) && !s.contains_index(4));
        assert!(ElementSet::from_residues(&g, &[1, 1]).is_err());
        assert!(matches!(
            ElementSet::from_residues(&g, &[8]),
            Err(Error::Range { .. })
        ));
        let other = GroupSpec::cyclic(9).unwrap();
        assert!(ElementSet::from_elements(&g, [&other.zero()]).is_err());
    }

    #[test]
    fn set_file_exact_text() {
        let g = GroupSpec::parse("2,12").unwrap();
        let s = ElementSet::from_indices(&g, [1, 17, 0]).unwrap();
        let text = s.to_set_file();
        assert_eq!(text, "group: 2,12\n0,1\n1,5\n0,0\n");
        let back = ElementSet::parse_set_file(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_set_file(), text);
    }

    #[test]
    fn set_file_errors() {
        assert!(matches!(
            ElementSet::parse_set_file("0,1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            ElementSet::parse_set_file("group: 6,4\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            ElementSet::parse_set_file("group: 12\n3\n3\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            ElementSet::parse_set_file("group: 12\n13\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(ElementSet::parse_set_file("").is_err());
    }
}
