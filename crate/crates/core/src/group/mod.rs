//! Finite groups stored as Cayley tables over dense element ids `0..n`.
//!
//! Commutators follow the convention `[x, y] = x·y·x⁻¹·y⁻¹`. With the opposite
//! convention every alternating pairing built from commutators flips to its
//! inverse, so anything downstream depends on this choice.

mod construct;
mod hom;
mod subgroup;

pub(crate) use construct::is_prime;
pub use construct::GroupSpec;
pub use hom::GroupHom;
pub use subgroup::{LeftCosets, Subgroup};

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Dense element id.
pub type Elem = usize;

/// Orders up to this bound get a full O(n³) associativity check.
pub const DEFAULT_ASSOCIATIVITY_BOUND: usize = 512;
/// Largest group order for which subgroup lattices are enumerated.
pub const DEFAULT_SUBGROUP_BOUND: usize = 256;
/// Random triples tried when the group is too large for the full check.
const ASSOCIATIVITY_SAMPLES: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("not a group: {0}")]
    NotAGroup(Violation),
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal: {by}·{member}·{by}⁻¹ leaves it")]
    NotNormal { member: Elem, by: Elem },
    #[error("enumeration bound exceeded: order {order} > {bound}")]
    EnumerationBoundExceeded { order: usize, bound: usize },
}

/// First axiom violation found while validating a Cayley table.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("table is empty")]
    Empty,
    #[error("row {row} has length {len}, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry ({row}, {col}) = {value} is out of range")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("row {0} is not a permutation")]
    RowNotPermutation(usize),
    #[error("column {0} is not a permutation")]
    ColumnNotPermutation(usize),
    #[error("no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(Elem),
    #[error("associativity fails for ({i}, {j}, {k})")]
    NotAssociative { i: Elem, j: Elem, k: Elem },
}

/// A finite group given by its multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    label: String,
    order: usize,
    table: Vec<Elem>,
    identity: Elem,
    inverse: Vec<Elem>,
    fully_validated: bool,
    center: OnceLock<Subgroup>,
    derived: OnceLock<Subgroup>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Validates `table` (`table[i][j]` is the id of `g_i·g_j`) and builds the group.
    pub fn from_cayley_table(
        table: Vec<Vec<Elem>>,
        label: impl Into<String>,
    ) -> Result<Self, GroupError> {
        Self::from_cayley_table_with_bound(table, label, DEFAULT_ASSOCIATIVITY_BOUND)
    }

    /// Like [`FiniteGroup::from_cayley_table`], but only groups of order at most
    /// `assoc_bound` get the exhaustive associativity check. Larger tables are
    /// spot-checked on random triples and flagged as partially validated.
    pub fn from_cayley_table_with_bound(
        table: Vec<Vec<Elem>>,
        label: impl Into<String>,
        assoc_bound: usize,
    ) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::NotAGroup(Violation::Empty));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(GroupError::NotAGroup(Violation::NotSquare {
                    row,
                    len: entries.len(),
                    expected: n,
                }));
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= n {
                    return Err(GroupError::NotAGroup(Violation::EntryOutOfRange {
                        row,
                        col,
                        value,
                    }));
                }
            }
            flat.extend_from_slice(entries);
        }
        Self::from_flat(flat, n, label.into(), assoc_bound)
    }

    /// Builds a group from a multiplication rule on `0..order`, validating it.
    pub(crate) fn from_rule(
        order: usize,
        label: impl Into<String>,
        rule: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Self, GroupError> {
        let mut flat = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                let value = rule(i, j);
                if value >= order {
                    return Err(GroupError::NotAGroup(Violation::EntryOutOfRange {
                        row: i,
                        col: j,
                        value,
                    }));
                }
                flat.push(value);
            }
        }
        Self::from_flat(flat, order, label.into(), DEFAULT_ASSOCIATIVITY_BOUND)
    }

    fn from_flat(
        table: Vec<Elem>,
        n: usize,
        label: String,
        assoc_bound: usize,
    ) -> Result<Self, GroupError> {
        let mut seen = vec![0usize; n];
        for i in 0..n {
            for j in 0..n {
                let v = table[i * n + j];
                if seen[v] == i + 1 {
                    return Err(GroupError::NotAGroup(Violation::RowNotPermutation(i)));
                }
                seen[v] = i + 1;
            }
        }
        seen.fill(0);
        for j in 0..n {
            for i in 0..n {
                let v = table[i * n + j];
                if seen[v] == j + 1 {
                    return Err(GroupError::NotAGroup(Violation::ColumnNotPermutation(j)));
                }
                seen[v] = j + 1;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x))
            .ok_or(GroupError::NotAGroup(Violation::NoIdentity))?;
        let mut inverse = vec![0; n];
        for (x, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&y| table[x * n + y] == identity && table[y * n + x] == identity)
                .ok_or(GroupError::NotAGroup(Violation::NoInverse(x)))?;
        }

        let at = |i: usize, j: usize| table[i * n + j];
        let fully_validated = n <= assoc_bound;
        if fully_validated {
            for i in 0..n {
                for j in 0..n {
                    let ij = at(i, j);
                    for k in 0..n {
                        if at(ij, k) != at(i, at(j, k)) {
                            return Err(GroupError::NotAGroup(Violation::NotAssociative {
                                i,
                                j,
                                k,
                            }));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..ASSOCIATIVITY_SAMPLES {
                let (i, j, k) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if at(at(i, j), k) != at(i, at(j, k)) {
                    return Err(GroupError::NotAGroup(Violation::NotAssociative { i, j, k }));
                }
            }
        }

        Ok(FiniteGroup {
            label,
            order: n,
            table,
            identity,
            inverse,
            fully_validated,
            center: OnceLock::new(),
            derived: OnceLock::new(),
        })
    }

    /// Builds the group described by `spec`.
    pub fn construct(spec: &GroupSpec) -> Result<Self, GroupError> {
        spec.build()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    /// `false` when associativity was only spot-checked.
    pub fn is_fully_validated(&self) -> bool {
        self.fully_validated
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    /// Rows of the Cayley table.
    pub fn cayley_table(&self) -> Vec<Vec<Elem>> {
        self.table
            .chunks(self.order)
            .map(<[Elem]>::to_vec)
            .collect()
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.table[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        self.inverse[x]
    }

    /// `x^k` by square-and-multiply; negative `k` inverts first.
    pub fn pow(&self, x: Elem, k: i64) -> Elem {
        let mut base = if k < 0 { self.inv(x) } else { x };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: Elem) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|x| self.element_order(x))
            .fold(1, num_integer::lcm)
    }

    /// `[x, y] = x·y·x⁻¹·y⁻¹`.
    pub fn commutator(&self, x: Elem, y: Elem) -> Elem {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(xy, self.inv(yx))
    }

    /// `g·x·g⁻¹`.
    pub fn conjugate(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|x| (x + 1..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Smallest subgroup containing `gens`, by breadth-first closure.
    pub fn subgroup_generated(&self, gens: &[Elem]) -> Subgroup {
        let mut bits = vec![false; self.order];
        let mut members = vec![self.identity];
        bits[self.identity] = true;
        // Generators already in the closure are skipped, so the cost is
        // |⟨gens⟩| times the length of an irredundant generating sequence.
        let mut used: Vec<Elem> = Vec::new();
        for &g in gens {
            if bits[g] {
                continue;
            }
            used.push(g);
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                for &u in &used {
                    let y = self.mul(x, u);
                    if !bits[y] {
                        bits[y] = true;
                        members.push(y);
                    }
                }
                i += 1;
            }
        }
        Subgroup::from_members_unchecked(self.order, members)
    }

    /// Validates that `members` is closed and returns it as a subgroup.
    pub fn subgroup_from_members(&self, members: &[Elem]) -> Result<Subgroup, GroupError> {
        if let Some(&bad) = members.iter().find(|&&x| x >= self.order) {
            return Err(GroupError::NotASubgroup(format!(
                "element {bad} out of range"
            )));
        }
        let candidate = Subgroup::from_members_unchecked(self.order, members.to_vec());
        if !candidate.contains(self.identity) {
            return Err(GroupError::NotASubgroup("identity missing".into()));
        }
        for &x in candidate.members() {
            for &y in candidate.members() {
                let xy = self.mul(x, y);
                if !candidate.contains(xy) {
                    return Err(GroupError::NotASubgroup(format!(
                        "{x}·{y} = {xy} escapes the set"
                    )));
                }
            }
        }
        Ok(candidate)
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_members_unchecked(self.order, self.elements().collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_members_unchecked(self.order, vec![self.identity])
    }

    /// Smallest subgroup containing both.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens = a.members().to_vec();
        gens.extend_from_slice(b.members());
        self.subgroup_generated(&gens)
    }

    pub fn center(&self) -> &Subgroup {
        self.center.get_or_init(|| {
            let members = self
                .elements()
                .filter(|&z| self.elements().all(|g| self.mul(z, g) == self.mul(g, z)))
                .collect();
            Subgroup::from_members_unchecked(self.order, members)
        })
    }

    /// `[G, G]`.
    pub fn commutator_subgroup(&self) -> &Subgroup {
        self.derived.get_or_init(|| {
            let whole = self.whole();
            self.commutator_of(&whole, &whole)
        })
    }

    /// `[A, B]`, the subgroup generated by all `[a, b]`.
    pub fn commutator_of(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut seen = vec![false; self.order];
        let mut gens = Vec::new();
        for &x in a.members() {
            for &y in b.members() {
                let c = self.commutator(x, y);
                if !seen[c] {
                    seen[c] = true;
                    gens.push(c);
                }
            }
        }
        self.subgroup_generated(&gens)
    }

    /// `[C¹G, C²G, …]` with `C¹G = G` and `Cⁱ⁺¹G = [CⁱG, G]`, stopping at the
    /// first repeated term.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let whole = self.whole();
        let mut series = vec![whole.clone()];
        loop {
            let next = self.commutator_of(series.last().expect("nonempty"), &whole);
            if &next == series.last().expect("nonempty") {
                return series;
            }
            series.push(next);
        }
    }

    /// Nilpotency class, or `None` when the lower central series stalls above `{e}`.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let series = self.lower_central_series();
        series
            .last()
            .filter(|s| s.is_trivial())
            .map(|_| series.len() - 1)
    }

    /// `[G, [G, G]] = {e}`.
    pub fn is_two_step_nilpotent(&self) -> bool {
        let derived = self.commutator_subgroup();
        derived.members().iter().all(|&c| self.center().contains(c))
    }

    /// The raw set `{g^d : g ∈ G}` (not necessarily a subgroup).
    pub fn power_set(&self, d: i64) -> Vec<Elem> {
        let mut set: Vec<Elem> = self.elements().map(|g| self.pow(g, d)).collect();
        set.sort_unstable();
        set.dedup();
        set
    }

    /// `G^d`, the subgroup generated by all `d`-th powers.
    pub fn power_subgroup(&self, d: i64) -> Subgroup {
        self.subgroup_generated(&self.power_set(d))
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.normality_witness(h).is_none()
    }

    /// `(member, conjugator)` with `conjugator·member·conjugator⁻¹ ∉ h`.
    pub fn normality_witness(&self, h: &Subgroup) -> Option<(Elem, Elem)> {
        for g in self.elements() {
            for &x in h.members() {
                if !h.contains(self.conjugate(g, x)) {
                    return Some((x, g));
                }
            }
        }
        None
    }

    /// Every subgroup, ordered by `(order, members)`.
    ///
    /// Subgroups are grown one generator at a time from `{e}`; for each known
    /// subgroup `S` only one element per left coset `gS` needs adjoining.
    pub fn all_subgroups(&self, bound: usize) -> Result<Vec<Subgroup>, GroupError> {
        if self.order > bound {
            return Err(GroupError::EnumerationBoundExceeded {
                order: self.order,
                bound,
            });
        }
        let mut seen: HashSet<Subgroup> = HashSet::new();
        let mut found: Vec<(Subgroup, Vec<Elem>)> = Vec::new();
        let trivial = self.trivial_subgroup();
        seen.insert(trivial.clone());
        found.push((trivial, Vec::new()));
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        let mut marked = vec![false; self.order];
        while let Some(idx) = queue.pop_front() {
            let (sub, gens) = found[idx].clone();
            marked.fill(false);
            for g in self.elements() {
                if sub.contains(g) || marked[g] {
                    continue;
                }
                for &s in sub.members() {
                    marked[self.mul(g, s)] = true;
                }
                let mut next_gens = gens.clone();
                next_gens.push(g);
                let next = self.subgroup_generated(&next_gens);
                if seen.insert(next.clone()) {
                    found.push((next, next_gens));
                    queue.push_back(found.len() - 1);
                }
            }
        }
        let mut subs: Vec<Subgroup> = found.into_iter().map(|(s, _)| s).collect();
        subs.sort();
        Ok(subs)
    }

    pub fn normal_subgroups(&self, bound: usize) -> Result<Vec<Subgroup>, GroupError> {
        Ok(self
            .all_subgroups(bound)?
            .into_iter()
            .filter(|h| self.is_normal(h))
            .collect())
    }

    /// Subgroups containing `[G, G]` (all normal, with abelian quotient),
    /// found through the subgroup lattice of the abelianization. Only the
    /// abelianization's order counts against `bound`.
    pub fn coabelian_subgroups(&self, bound: usize) -> Result<Vec<Subgroup>, GroupError> {
        let derived = self.commutator_subgroup().clone();
        let (ab, proj) = self.quotient(&derived)?;
        let mut subs: Vec<Subgroup> = ab
            .all_subgroups(bound)?
            .iter()
            .map(|s| proj.preimage(self, s))
            .collect();
        subs.sort();
        Ok(subs)
    }

    /// Left cosets `gH` with canonical representatives.
    pub fn left_cosets(&self, h: &Subgroup) -> LeftCosets {
        LeftCosets::new(self, h)
    }

    /// Minimal element of each left coset, ascending.
    pub fn left_transversal(&self, h: &Subgroup) -> Vec<Elem> {
        self.left_cosets(h).reps().to_vec()
    }

    /// `G/N` with cosets ordered by minimal representative, plus the projection.
    pub fn quotient(&self, n: &Subgroup) -> Result<(FiniteGroup, GroupHom), GroupError> {
        if let Some((member, by)) = self.normality_witness(n) {
            return Err(GroupError::NotNormal { member, by });
        }
        let cosets = self.left_cosets(n);
        let reps = cosets.reps();
        let q = reps.len();
        let mut table = Vec::with_capacity(q * q);
        for &a in reps {
            for &b in reps {
                table.push(cosets.coset_of(self.mul(a, b)));
            }
        }
        let label = if n.is_trivial() {
            self.label.clone()
        } else {
            format!("{}/N{}", self.label, n.order())
        };
        let quotient = self.derived_group(table, q, label);
        let map = self.elements().map(|g| cosets.coset_of(g)).collect();
        Ok((quotient, GroupHom::new(map, q)))
    }

    /// The subgroup as a group in its own right, with ids relabeled to
    /// positions in `h.members()`; the second component maps them back.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> (FiniteGroup, Vec<Elem>) {
        let members = h.members().to_vec();
        let k = members.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &members {
            for &b in &members {
                table.push(h.position(self.mul(a, b)).expect("subgroup is closed"));
            }
        }
        (
            self.derived_group(table, k, format!("{}<{}>", self.label, k)),
            members,
        )
    }

    /// Wraps the table of a subgroup or quotient of `self`. The group axioms
    /// are inherited, so only the identity and inverses are located.
    fn derived_group(&self, table: Vec<Elem>, n: usize, label: String) -> FiniteGroup {
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] == x))
            .expect("identity is inherited");
        let mut inverse = vec![0; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| table[x * n + y] == identity)
                .expect("inverses are inherited");
            inverse[x] = y;
        }
        FiniteGroup {
            label,
            order: n,
            table,
            identity,
            inverse,
            fully_validated: self.fully_validated,
            center: OnceLock::new(),
            derived: OnceLock::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d8() -> FiniteGroup {
        GroupSpec::Dihedral { order: 8 }.build().unwrap()
    }

    // Dihedral ids: a^i b^j has id 2i + j.
    const A: Elem = 2;
    const B: Elem = 1;
    const A2: Elem = 4;

    #[test]
    fn tiny_tables() {
        let g = FiniteGroup::from_cayley_table(vec![vec![0]], "1").unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.identity(), 0);
        let z2 = FiniteGroup::from_cayley_table(vec![vec![0, 1], vec![1, 0]], "Z2").unwrap();
        assert_eq!(z2.inv(1), 1);
    }

    #[test]
    fn rejects_non_associative_latin_square() {
        // A loop of order 5 that is not a group.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_cayley_table(t, "loop").unwrap_err();
        assert!(
            matches!(err, GroupError::NotAGroup(Violation::NotAssociative { .. })),
            "{err}"
        );
    }

    #[test]
    fn rejects_malformed_tables() {
        let err = FiniteGroup::from_cayley_table(vec![vec![0, 1], vec![1]], "x").unwrap_err();
        assert!(matches!(
            err,
            GroupError::NotAGroup(Violation::NotSquare { row: 1, .. })
        ));
        let err = FiniteGroup::from_cayley_table(vec![vec![0, 2], vec![1, 0]], "x").unwrap_err();
        assert!(matches!(
            err,
            GroupError::NotAGroup(Violation::EntryOutOfRange { .. })
        ));
        let err = FiniteGroup::from_cayley_table(vec![vec![0, 0], vec![1, 1]], "x").unwrap_err();
        assert!(matches!(
            err,
            GroupError::NotAGroup(Violation::RowNotPermutation(0))
        ));
        let err =
            FiniteGroup::from_cayley_table(vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]], "x")
                .unwrap_err();
        assert!(matches!(err, GroupError::NotAGroup(Violation::NoIdentity)));
    }

    #[test]
    fn partial_validation_flag() {
        let g = GroupSpec::Cyclic { n: 12 }.build().unwrap();
        let t = g.cayley_table();
        let partial = FiniteGroup::from_cayley_table_with_bound(t, "C12", 4).unwrap();
        assert!(!partial.is_fully_validated());
        assert!(g.is_fully_validated());
    }

    #[test]
    fn powers_and_orders() {
        let z4 = GroupSpec::Cyclic { n: 4 }.build().unwrap();
        assert_eq!(z4.pow(1, 4), 0);
        assert_eq!(z4.pow(1, -1), 3);
        let g = d8();
        assert_eq!(g.pow(g.identity(), -7), g.identity());
        assert_eq!(g.element_order(B), 2);
        assert_eq!(g.element_order(A), 4);
        assert_eq!(g.exponent(), 4);
    }

    #[test]
    fn commutators_in_d8() {
        let g = d8();
        assert_eq!(g.commutator(A, B), A2);
        for x in g.elements() {
            assert_eq!(g.commutator(x, x), g.identity());
        }
        assert_eq!(g.commutator_subgroup().members(), &[0, A2]);
        assert_eq!(g.center().members(), &[0, A2]);
        assert_eq!(g.power_subgroup(2).members(), &[0, A2]);
        assert_eq!(g.nilpotency_class(), Some(2));
    }

    #[test]
    fn abelian_commutators_vanish() {
        let g = GroupSpec::Abelian {
            factors: vec![2, 6],
        }
        .build()
        .unwrap();
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(g.commutator(x, y), g.identity());
            }
        }
        assert_eq!(g.center().order(), g.order());
    }

    #[test]
    fn heisenberg_three_series() {
        let g = GroupSpec::HeisenbergMod { n: 3 }.build().unwrap();
        let series = g.lower_central_series();
        let orders: Vec<usize> = series.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![27, 3, 1]);
        assert_eq!(&series[1], g.center());
        assert!(g.power_subgroup(3).is_trivial());
        assert_eq!(g.power_subgroup(1).order(), 27);
    }

    #[test]
    fn subgroup_lattices() {
        let z4 = GroupSpec::Cyclic { n: 4 }.build().unwrap();
        let normals = z4.normal_subgroups(DEFAULT_SUBGROUP_BOUND).unwrap();
        let members: Vec<&[Elem]> = normals.iter().map(Subgroup::members).collect();
        assert_eq!(members, vec![&[0][..], &[0, 2][..], &[0, 1, 2, 3][..]]);
        let g = d8();
        assert_eq!(g.all_subgroups(DEFAULT_SUBGROUP_BOUND).unwrap().len(), 10);
        assert_eq!(g.normal_subgroups(DEFAULT_SUBGROUP_BOUND).unwrap().len(), 6);
        assert!(!g.is_normal(&g.subgroup_generated(&[B])));
        assert!(matches!(
            g.all_subgroups(4),
            Err(GroupError::EnumerationBoundExceeded { order: 8, bound: 4 })
        ));
    }

    #[test]
    fn coabelian_subgroups_of_d8() {
        let g = d8();
        // [G,G] = {e, a²}; G/[G,G] is Klein four with 5 subgroups.
        let subs = g.coabelian_subgroups(DEFAULT_SUBGROUP_BOUND).unwrap();
        assert_eq!(subs.len(), 5);
        assert!(subs.iter().all(|s| s.contains(A2) && g.is_normal(s)));
    }

    #[test]
    fn quotients() {
        let g = d8();
        let (same, proj) = g.quotient(&g.trivial_subgroup()).unwrap();
        assert_eq!(same.order(), 8);
        assert!(proj.is_homomorphism(&g, &same));
        assert!(proj.map().iter().enumerate().all(|(i, &j)| i == j));
        let (triv, _) = g.quotient(&g.whole()).unwrap();
        assert_eq!(triv.order(), 1);
        let (klein, proj) = g.quotient(g.center()).unwrap();
        assert_eq!(klein.order(), 4);
        assert!(klein.is_abelian());
        assert_eq!(klein.exponent(), 2);
        assert_eq!(proj.kernel(&g, &klein), *g.center());
        let err = g.quotient(&g.subgroup_generated(&[B])).unwrap_err();
        assert!(matches!(err, GroupError::NotNormal { .. }));
    }

    #[test]
    fn transversals() {
        let g = d8();
        assert_eq!(g.left_transversal(&g.whole()), vec![0]);
        assert_eq!(
            g.left_transversal(&g.trivial_subgroup()),
            (0..8).collect::<Vec<_>>()
        );
        assert_eq!(g.left_transversal(&g.subgroup_generated(&[A])), vec![0, B]);
    }

    #[test]
    fn subgroup_validation() {
        let g = d8();
        assert!(g.subgroup_from_members(&[0, A2]).is_ok());
        assert!(g.subgroup_from_members(&[0, A]).is_err());
        assert!(g.subgroup_from_members(&[A2]).is_err());
    }

    #[test]
    fn subgroup_as_group_relabels() {
        let g = d8();
        let h = g.subgroup_generated(&[A]);
        let (sub, embed) = g.subgroup_as_group(&h);
        assert_eq!(sub.order(), 4);
        assert!(sub.is_abelian());
        assert_eq!(embed, h.members());
    }
}
