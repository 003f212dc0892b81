//! Heisenberg pairs `(Z, χ)`: a coabelian normal subgroup `Z` with a
//! `G`-invariant character `χ` whose pairing `X(g₁, g₂) = χ([g₁, g₂])` is
//! nondegenerate on `G/Z`. Each pair determines an irreducible representation
//! of dimension `√[G : Z]`, induced from any maximal isotropic subgroup.

use std::collections::HashSet;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::abelian;
use crate::character::{
    all_extensions, bicharacter_of, invariance_witness, linear_characters, Bicharacter,
    CharacterError, LinearCharacter, QmodZ,
};
use crate::group::{Elem, FiniteGroup, GroupError, GroupHom, Subgroup};

/// Largest `[G : Z]` for which all maximal isotropic subgroups are listed.
pub const DEFAULT_ISOTROPIC_BOUND: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeisenbergError {
    #[error("Z is not normal: {by}·{member}·{by}⁻¹ ∉ Z")]
    NotNormal { member: Elem, by: Elem },
    #[error("G/Z is not abelian: commutator {0} ∉ Z")]
    NotCoabelian(Elem),
    #[error("χ is not G-invariant: χ({g}·{z}·{g}⁻¹) ≠ χ({z})")]
    NotInvariant { g: Elem, z: Elem },
    #[error("pairing is degenerate modulo Z: {0} lies in its radical but not in Z")]
    Degenerate(Elem),
    #[error("character domain differs from Z")]
    DomainMismatch,
    #[error("enumeration bound exceeded: {what} {size} > {bound}")]
    EnumerationBoundExceeded {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A validated Heisenberg pair.
#[derive(Clone, Debug)]
pub struct HeisenbergPair {
    group: Arc<FiniteGroup>,
    z: Subgroup,
    chi: LinearCharacter,
    pairing: Arc<Bicharacter>,
    dim: usize,
}

impl HeisenbergPair {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn z(&self) -> &Subgroup {
        &self.z
    }

    pub fn chi(&self) -> &LinearCharacter {
        &self.chi
    }

    pub fn pairing(&self) -> &Bicharacter {
        &self.pairing
    }

    /// Dimension of the associated representation, `√[G : Z]`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `[G : Z]`.
    pub fn z_index(&self) -> usize {
        self.group.order() / self.z.order()
    }
}

impl Serialize for HeisenbergPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("HeisenbergPair", 3)?;
        s.serialize_field("Z", self.z.members())?;
        s.serialize_field("chi", &self.chi)?;
        s.serialize_field("dim", &self.dim)?;
        s.end()
    }
}

impl HeisenbergPair {
    /// `(Z, χ + ω|_Z)` for a linear character `ω` of all of `G`. Since `ω` is
    /// a class function vanishing on commutators, invariance and the pairing
    /// carry over unchanged.
    pub(crate) fn shifted_by(&self, omega: &LinearCharacter) -> Result<Self, HeisenbergError> {
        if omega.domain().order() != self.group.order() {
            return Err(HeisenbergError::DomainMismatch);
        }
        let chi = self.chi.add(&omega.restrict(&self.z)?)?;
        Ok(HeisenbergPair {
            chi,
            ..self.clone()
        })
    }
}

/// Checks every defining condition and returns the pair.
pub fn validate_pair(
    group: Arc<FiniteGroup>,
    z: Subgroup,
    chi: LinearCharacter,
) -> Result<HeisenbergPair, HeisenbergError> {
    if chi.domain() != &z {
        return Err(HeisenbergError::DomainMismatch);
    }
    if let Some((member, by)) = group.normality_witness(&z) {
        return Err(HeisenbergError::NotNormal { member, by });
    }
    if let Some(&c) = group
        .commutator_subgroup()
        .members()
        .iter()
        .find(|&&c| !z.contains(c))
    {
        return Err(HeisenbergError::NotCoabelian(c));
    }
    if let Some((g, zz)) = invariance_witness(&group, &chi) {
        return Err(HeisenbergError::NotInvariant { g, z: zz });
    }
    let pairing = bicharacter_of(&group, &chi)?;
    let radical = pairing.radical(&group);
    if let Some(&r) = radical.members().iter().find(|&&r| !z.contains(r)) {
        return Err(HeisenbergError::Degenerate(r));
    }
    let index = group.order() / z.order();
    let dim = (1..=index).find(|d| d * d >= index).unwrap_or(1);
    assert_eq!(dim * dim, index, "nondegenerate quotient has square order");
    Ok(HeisenbergPair {
        group,
        z,
        chi,
        pairing: Arc::new(pairing),
        dim,
    })
}

/// All Heisenberg pairs of `G`, sorted by `(|Z|` descending`, Z, χ)` where
/// characters of a fixed `Z` keep their index-tuple order.
///
/// For each `G`-invariant character `ψ` of `[G, G]`, the only possible `Z` is
/// the radical `R` of `ψ([·,·])`, and the pairs are `(R, χ)` for the
/// `G`-invariant extensions `χ` of `ψ` to `R`.
pub fn enumerate_pairs(
    group: &Arc<FiniteGroup>,
    bound: usize,
) -> Result<Vec<HeisenbergPair>, HeisenbergError> {
    if group.order() > bound {
        return Err(HeisenbergError::EnumerationBoundExceeded {
            what: "group order",
            size: group.order(),
            bound,
        });
    }
    let derived = group.commutator_subgroup().clone();
    let mut keyed = Vec::new();
    for psi in linear_characters(group, &derived) {
        if invariance_witness(group, &psi).is_some() {
            continue;
        }
        let pairing = bicharacter_of(group, &psi)?;
        let radical = pairing.radical(group);
        if !derived.is_subset_of(&radical) {
            continue;
        }
        let canonical = linear_characters(group, &radical);
        for chi in all_extensions(group, &psi, &radical)? {
            if invariance_witness(group, &chi).is_some() {
                continue;
            }
            let pos = canonical
                .iter()
                .position(|c| c == &chi)
                .expect("extension is a character of R");
            let pair = validate_pair(Arc::clone(group), radical.clone(), chi)?;
            keyed.push((pos, pair));
        }
    }
    keyed.sort_by(|(pa, a), (pb, b)| {
        b.z.order()
            .cmp(&a.z.order())
            .then_with(|| a.z.members().cmp(b.z.members()))
            .then(pa.cmp(pb))
    });
    Ok(keyed.into_iter().map(|(_, p)| p).collect())
}

/// The pair on `Ḡ = G/ker χ`, together with the projection `G → Ḡ`.
pub fn reduce_kernel(pair: &HeisenbergPair) -> Result<(HeisenbergPair, GroupHom), HeisenbergError> {
    let group = pair.group();
    let kernel = pair.chi().kernel();
    let (quotient, proj) = group.quotient(&kernel)?;
    let label = if kernel.is_trivial() {
        group.label().to_string()
    } else {
        format!("{}/ker", group.label())
    };
    let quotient = Arc::new(quotient.with_label(label));
    let z = proj.image(&quotient, pair.z());
    let chi = LinearCharacter::from_fn(&quotient, z.clone(), |x| {
        let lift = pair
            .z()
            .members()
            .iter()
            .find(|&&zz| proj.apply(zz) == x)
            .expect("image of Z");
        pair.chi().at(*lift)
    })?;
    Ok((validate_pair(quotient, z, chi)?, proj))
}

/// Whether the pair is already kernel-reduced: `χ` faithful.
pub fn is_kernel_reduced(pair: &HeisenbergPair) -> bool {
    pair.chi().kernel().is_trivial()
}

/// A maximal isotropic subgroup `H ⊇ Z·⟨g⟩`, grown by adjoining the smallest
/// id of `H^⊥ \ H` until `H = H^⊥`.
pub fn maximal_isotropic_through(pair: &HeisenbergPair, g: Elem) -> Subgroup {
    let group = pair.group();
    let mut gens = pair.z().members().to_vec();
    gens.push(g);
    let mut h = group.subgroup_generated(&gens);
    loop {
        let perp = pair.pairing().perp(group, &h);
        match perp.members().iter().find(|&&x| !h.contains(x)) {
            None => return h,
            Some(&t) => {
                let mut gens = h.members().to_vec();
                gens.push(t);
                h = group.subgroup_generated(&gens);
            }
        }
    }
}

/// Every maximal isotropic subgroup containing `Z`, sorted.
pub fn all_maximal_isotropics(
    pair: &HeisenbergPair,
    bound: usize,
) -> Result<Vec<Subgroup>, HeisenbergError> {
    let index = pair.z_index();
    if index > bound {
        return Err(HeisenbergError::EnumerationBoundExceeded {
            what: "[G:Z]",
            size: index,
            bound,
        });
    }
    let group = pair.group();
    let target = pair.z().order() * pair.dim();
    let mut seen: HashSet<Subgroup> = HashSet::new();
    let mut frontier = vec![pair.z().clone()];
    seen.insert(pair.z().clone());
    let mut maximal = Vec::new();
    let mut marked = vec![false; group.order()];
    while let Some(s) = frontier.pop() {
        if s.order() == target {
            maximal.push(s);
            continue;
        }
        let perp = pair.pairing().perp(group, &s);
        marked.fill(false);
        for &t in perp.members() {
            if s.contains(t) || marked[t] {
                continue;
            }
            for &x in s.members() {
                marked[group.mul(t, x)] = true;
            }
            let mut gens = s.members().to_vec();
            gens.push(t);
            let next = group.subgroup_generated(&gens);
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    maximal.sort();
    Ok(maximal)
}

/// A symplectic basis of `G/Z`: pairs `(t_i, t_i')` of order `m_i` with
/// `X(t_i, t_i') = 1/m_i`, distinct pairs orthogonal, and
/// `m₁ | m₂ | …`. Elements are reported by their smallest lift to `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymplecticBasis {
    pub pairs: Vec<SymplecticPair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymplecticPair {
    pub t: Elem,
    pub t_prime: Elem,
    pub m: u64,
}

impl SymplecticBasis {
    /// `(Z·⟨t_i⟩, Z·⟨t_i'⟩)`, two complementary maximal isotropic subgroups.
    pub fn lagrangians(&self, pair: &HeisenbergPair) -> (Subgroup, Subgroup) {
        let group = pair.group();
        let mut a = pair.z().members().to_vec();
        let mut b = a.clone();
        for p in &self.pairs {
            a.push(p.t);
            b.push(p.t_prime);
        }
        (group.subgroup_generated(&a), group.subgroup_generated(&b))
    }
}

/// Repeatedly takes `t` of maximal order `m` in what remains of `G/Z`, the
/// smallest partner with pairing of exact order `m` (scaled so the pairing
/// is `1/m`), and passes to their orthogonal complement.
pub fn symplectic_basis(pair: &HeisenbergPair) -> Result<SymplecticBasis, HeisenbergError> {
    let group = pair.group();
    let (a, proj) = group.quotient(pair.z())?;
    let lifts: Vec<Elem> = proj
        .min_preimages()
        .into_iter()
        .map(|x| x.expect("onto"))
        .collect();
    let x = |u: Elem, v: Elem| pair.pairing().value(lifts[u], lifts[v]);
    let mut remaining: Vec<Elem> = a.elements().collect();
    let mut pairs = Vec::new();
    while remaining.len() > 1 {
        let (t, m) = remaining.iter().map(|&u| (u, a.element_order(u))).fold(
            (a.identity(), 1),
            |best, cur| if cur.1 > best.1 { cur } else { best },
        );
        let partner = *remaining
            .iter()
            .find(|&&s| x(t, s).den() == m as u64)
            .ok_or(HeisenbergError::Degenerate(lifts[t]))?;
        let v = x(t, partner);
        let k = (1..m as u64)
            .find(|k| v.scale(*k as i64) == QmodZ::new(1, m as u64))
            .unwrap_or(1);
        let t_prime = a.pow(partner, k as i64);
        pairs.push(SymplecticPair {
            t: lifts[t],
            t_prime: lifts[t_prime],
            m: m as u64,
        });
        remaining.retain(|&s| x(s, t).is_zero() && x(s, t_prime).is_zero());
    }
    pairs.reverse();
    Ok(SymplecticBasis { pairs })
}

/// `rk₂(G/Z)`, always even for a Heisenberg pair.
pub fn two_rank_mod_z(pair: &HeisenbergPair) -> Result<usize, HeisenbergError> {
    let (a, _) = pair.group().quotient(pair.z())?;
    Ok(abelian::two_rank(&a).expect("G/Z is abelian"))
}
