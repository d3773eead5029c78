//! Ground-set elements and canonical element sets.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Index of an element of the ground set `0..n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(pub u32);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for ElementId {
    fn from(i: usize) -> Self {
        ElementId(i as u32)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// A set of elements stored as a strictly ascending list, so that two sets are equal exactly
/// when their representations are.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<ElementId>", into = "Vec<ElementId>")]
pub struct ElementSet(Vec<ElementId>);

impl ElementSet {
    pub fn new() -> Self {
        ElementSet(Vec::new())
    }

    /// The full ground set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        ElementSet((0..n).map(ElementId::from).collect())
    }

    pub fn singleton(u: ElementId) -> Self {
        ElementSet(vec![u])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, u: ElementId) -> bool {
        self.0.binary_search(&u).is_ok()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = ElementId> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[ElementId] {
        &self.0
    }

    /// Inserts `u`; returns false if it was already present.
    pub fn insert(&mut self, u: ElementId) -> bool {
        match self.0.binary_search(&u) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, u);
                true
            }
        }
    }

    pub fn remove(&mut self, u: ElementId) -> bool {
        match self.0.binary_search(&u) {
            Ok(pos) => {
                self.0.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    /// `S + u`
    pub fn with(&self, u: ElementId) -> Self {
        let mut s = self.clone();
        s.insert(u);
        s
    }

    /// `S - u`
    pub fn without(&self, u: ElementId) -> Self {
        let mut s = self.clone();
        s.remove(u);
        s
    }

    pub fn union(&self, other: &ElementSet) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        ElementSet(out)
    }

    pub fn difference(&self, other: &ElementSet) -> Self {
        ElementSet(self.iter().filter(|&u| !other.contains(u)).collect())
    }

    pub fn intersection(&self, other: &ElementSet) -> Self {
        ElementSet(self.iter().filter(|&u| other.contains(u)).collect())
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.iter().all(|u| !other.contains(u))
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.iter().all(|u| other.contains(u))
    }

    /// Largest element, if any.
    pub fn max_element(&self) -> Option<ElementId> {
        self.0.last().copied()
    }

    /// Bit mask of the members; only meaningful for ground sets of at most 64 elements.
    pub fn to_mask(&self) -> u64 {
        self.iter().fold(0u64, |m, u| m | (1u64 << u.0))
    }

    pub fn from_mask(mask: u64) -> Self {
        ElementSet(
            (0..64)
                .filter(|b| mask >> b & 1 == 1)
                .map(ElementId)
                .collect(),
        )
    }
}

impl From<Vec<ElementId>> for ElementSet {
    fn from(mut v: Vec<ElementId>) -> Self {
        v.sort_unstable();
        v.dedup();
        ElementSet(v)
    }
}

impl From<ElementSet> for Vec<ElementId> {
    fn from(s: ElementSet) -> Self {
        s.0
    }
}

impl FromIterator<ElementId> for ElementSet {
    fn from_iter<I: IntoIterator<Item = ElementId>>(iter: I) -> Self {
        ElementSet::from(iter.into_iter().collect::<Vec<_>>())
    }
}

impl<const N: usize> From<[u32; N]> for ElementSet {
    fn from(ids: [u32; N]) -> Self {
        ids.into_iter().map(ElementId).collect()
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = ElementId;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, ElementId>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, u) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{u}")?;
        }
        write!(f, "}}")
    }
}
