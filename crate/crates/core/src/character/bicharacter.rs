use crate::group::{Elem, FiniteGroup, Subgroup};

use super::{CharacterError, LinearCharacter, QmodZ};

/// The pairing `X(g₁, g₂) = χ([g₁, g₂])` attached to a character `χ` whose
/// domain contains `[G, G]`.
#[derive(Clone, Debug)]
pub struct Bicharacter {
    n: usize,
    values: Vec<QmodZ>,
}

/// Tabulates `X(g₁, g₂) = χ([g₁, g₂])` for all pairs.
pub fn bicharacter_of(
    group: &FiniteGroup,
    chi: &LinearCharacter,
) -> Result<Bicharacter, CharacterError> {
    let n = group.order();
    let mut values = Vec::with_capacity(n * n);
    for x in group.elements() {
        for y in group.elements() {
            let v = chi
                .get(group.commutator(x, y))
                .ok_or(CharacterError::CommutatorOutsideDomain { x, y })?;
            values.push(v);
        }
    }
    Ok(Bicharacter { n, values })
}

impl Bicharacter {
    #[inline]
    pub fn value(&self, x: Elem, y: Elem) -> QmodZ {
        self.values[x * self.n + y]
    }

    /// `{x : X(x, y) = 0 for all y}`.
    pub fn radical(&self, group: &FiniteGroup) -> Subgroup {
        let members: Vec<Elem> = group
            .elements()
            .filter(|&x| (0..self.n).all(|y| self.value(x, y).is_zero()))
            .collect();
        group.subgroup_generated(&members)
    }

    /// `{x : X(x, s) = 0 for all s ∈ S}` (a subgroup when `X` is bimultiplicative).
    pub fn perp(&self, group: &FiniteGroup, s: &Subgroup) -> Subgroup {
        let members: Vec<Elem> = group
            .elements()
            .filter(|&x| s.members().iter().all(|&y| self.value(x, y).is_zero()))
            .collect();
        group.subgroup_generated(&members)
    }

    /// `X(x, y) = 0` for all `x, y ∈ S`.
    pub fn is_isotropic(&self, s: &Subgroup) -> bool {
        s.members()
            .iter()
            .all(|&x| s.members().iter().all(|&y| self.value(x, y).is_zero()))
    }

    /// Radical equals `z`.
    pub fn is_nondegenerate_mod(&self, group: &FiniteGroup, z: &Subgroup) -> bool {
        &self.radical(group) == z
    }

    pub fn is_alternating(&self) -> bool {
        (0..self.n).all(|x| self.value(x, x).is_zero())
    }

    /// First `(x, y, w)` with `X(xy, w) ≠ X(x, w) + X(y, w)`.
    pub fn bimultiplicativity_witness(&self, group: &FiniteGroup) -> Option<(Elem, Elem, Elem)> {
        for x in group.elements() {
            for y in group.elements() {
                let xy = group.mul(x, y);
                for w in group.elements() {
                    if self.value(xy, w) != self.value(x, w) + self.value(y, w) {
                        return Some((x, y, w));
                    }
                }
            }
        }
        None
    }
}
