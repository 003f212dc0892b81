use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use super::{Elem, FiniteGroup};

/// A subset of a group's element ids known to be closed under multiplication.
///
/// Subgroups do not borrow their parent; operations that need the
/// multiplication take the group explicitly. Equality, hashing and ordering
/// use `(order, sorted members)`.
#[derive(Clone, Debug)]
pub struct Subgroup {
    bits: Vec<u64>,
    members: Vec<Elem>,
}

impl Subgroup {
    pub(crate) fn from_members_unchecked(group_order: usize, mut members: Vec<Elem>) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut bits = vec![0u64; group_order.div_ceil(64)];
        for &m in &members {
            bits[m / 64] |= 1 << (m % 64);
        }
        Subgroup { bits, members }
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.bits
            .get(x / 64)
            .is_some_and(|w| w >> (x % 64) & 1 == 1)
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    /// Index of `x` in the sorted member list.
    pub fn position(&self, x: Elem) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect();
        Subgroup::from_members_unchecked(self.bits.len() * 64, members)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Left cosets `gH`, each represented by its smallest element id.
/// Cosets are numbered in ascending order of representative.
#[derive(Clone, Debug)]
pub struct LeftCosets {
    reps: Vec<Elem>,
    coset_of: Vec<usize>,
}

impl LeftCosets {
    pub fn new(group: &FiniteGroup, h: &Subgroup) -> Self {
        let n = group.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::with_capacity(n / h.order());
        for g in group.elements() {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(g);
            for &x in h.members() {
                coset_of[group.mul(g, x)] = idx;
            }
        }
        LeftCosets { reps, coset_of }
    }

    pub fn reps(&self) -> &[Elem] {
        &self.reps
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    #[inline]
    pub fn coset_of(&self, g: Elem) -> usize {
        self.coset_of[g]
    }

    pub fn rep_of(&self, g: Elem) -> Elem {
        self.reps[self.coset_of[g]]
    }
}
