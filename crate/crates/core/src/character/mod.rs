//! Linear characters with values in `Q/Z`, their extensions and the
//! alternating pairings they induce on two-step nilpotent groups.

mod bicharacter;
mod qmodz;

pub use bicharacter::{bicharacter_of, Bicharacter};
pub use qmodz::{ParseQmodZError, QmodZ};

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::abelian::{self, AbelianError};
use crate::group::{Elem, FiniteGroup, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("not multiplicative: χ({x}·{y}) ≠ χ({x}) + χ({y})")]
    NotMultiplicative { x: Elem, y: Elem },
    #[error(transparent)]
    NotAbelian(#[from] AbelianError),
    #[error("domain is not normal: {by}·{member}·{by}⁻¹ leaves it")]
    DomainNotNormal { member: Elem, by: Elem },
    #[error("characters live on different domains")]
    DomainMismatch,
    #[error("element {0} is outside the character's domain")]
    OutsideDomain(Elem),
    #[error("commutator [{x}, {y}] lies outside the character's domain")]
    CommutatorOutsideDomain { x: Elem, y: Elem },
    #[error("no extension exists: {0}")]
    NoExtension(String),
}

/// A homomorphism from a subgroup into `Q/Z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearCharacter {
    domain: Subgroup,
    values: Vec<Option<QmodZ>>,
}

impl LinearCharacter {
    /// Builds `x ↦ f(x)` on `domain`, checking multiplicativity on all pairs.
    pub fn from_fn(
        group: &FiniteGroup,
        domain: Subgroup,
        f: impl Fn(Elem) -> QmodZ,
    ) -> Result<Self, CharacterError> {
        let mut values = vec![None; group.order()];
        for &x in domain.members() {
            values[x] = Some(f(x));
        }
        let chi = LinearCharacter { domain, values };
        chi.check_multiplicative(group)?;
        Ok(chi)
    }

    pub fn trivial(group: &FiniteGroup, domain: Subgroup) -> Self {
        let mut values = vec![None; group.order()];
        for &x in domain.members() {
            values[x] = Some(QmodZ::ZERO);
        }
        LinearCharacter { domain, values }
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn get(&self, x: Elem) -> Option<QmodZ> {
        self.values.get(x).copied().flatten()
    }

    /// Value at `x`. Panics when `x` is outside the domain.
    pub fn at(&self, x: Elem) -> QmodZ {
        self.get(x)
            .unwrap_or_else(|| panic!("element {x} outside character domain"))
    }

    pub fn check_multiplicative(&self, group: &FiniteGroup) -> Result<(), CharacterError> {
        for &x in self.domain.members() {
            for &y in self.domain.members() {
                if self.at(group.mul(x, y)) != self.at(x) + self.at(y) {
                    return Err(CharacterError::NotMultiplicative { x, y });
                }
            }
        }
        Ok(())
    }

    pub fn is_trivial(&self) -> bool {
        self.domain.members().iter().all(|&x| self.at(x).is_zero())
    }

    pub fn kernel(&self) -> Subgroup {
        let members: Vec<Elem> = self
            .domain
            .members()
            .iter()
            .copied()
            .filter(|&x| self.at(x).is_zero())
            .collect();
        Subgroup::from_members_unchecked(self.values.len(), members)
    }

    pub fn restrict(&self, sub: &Subgroup) -> Result<LinearCharacter, CharacterError> {
        if let Some(&x) = sub.members().iter().find(|&&x| !self.domain.contains(x)) {
            return Err(CharacterError::OutsideDomain(x));
        }
        let mut values = vec![None; self.values.len()];
        for &x in sub.members() {
            values[x] = self.values[x];
        }
        Ok(LinearCharacter {
            domain: sub.clone(),
            values,
        })
    }

    /// Pointwise sum (product of the corresponding roots of unity).
    pub fn add(&self, other: &LinearCharacter) -> Result<LinearCharacter, CharacterError> {
        if self.domain != other.domain {
            return Err(CharacterError::DomainMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.zip(*b).map(|(a, b)| a + b))
            .collect();
        Ok(LinearCharacter {
            domain: self.domain.clone(),
            values,
        })
    }

    pub fn scale(&self, k: i64) -> LinearCharacter {
        let values = self.values.iter().map(|v| v.map(|v| v.scale(k))).collect();
        LinearCharacter {
            domain: self.domain.clone(),
            values,
        }
    }

    /// Order of the character in the character group.
    pub fn order(&self) -> u64 {
        self.domain
            .members()
            .iter()
            .map(|&x| self.at(x).den())
            .fold(1, num_integer::lcm)
    }

    /// Dense value vector over the whole group (`None` off the domain).
    pub fn values(&self) -> &[Option<QmodZ>] {
        &self.values
    }
}

impl Serialize for LinearCharacter {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let values: BTreeMap<String, QmodZ> = self
            .domain
            .members()
            .iter()
            .map(|&x| (x.to_string(), self.at(x)))
            .collect();
        let mut s = serializer.serialize_struct("LinearCharacter", 2)?;
        s.serialize_field("domain", self.domain.members())?;
        s.serialize_field("values", &values)?;
        s.end()
    }
}

/// Value vectors (indexed by element id) of all characters of an abelian
/// group, ordered lexicographically by their index tuple `(c₁, …, c_s)` where
/// `χ_c(∏ t_i^{a_i}) = Σ c_i·a_i/m_i`.
fn abelian_character_table(a: &FiniteGroup) -> Result<Vec<Vec<QmodZ>>, AbelianError> {
    let dec = abelian::decompose(a)?;
    let factors = dec.factors().to_vec();
    let count: u64 = factors.iter().product();
    let mut table = Vec::with_capacity(count as usize);
    let mut c = vec![0u64; factors.len()];
    for _ in 0..count {
        let row = a
            .elements()
            .map(|g| {
                dec.coordinates(g)
                    .iter()
                    .zip(&c)
                    .zip(&factors)
                    .map(|((&ai, &ci), &mi)| QmodZ::new((ai * ci % mi) as i64, mi))
                    .sum()
            })
            .collect();
        table.push(row);
        for k in (0..factors.len()).rev() {
            c[k] += 1;
            if c[k] < factors[k] {
                break;
            }
            c[k] = 0;
        }
    }
    Ok(table)
}

/// All characters of an abelian group, in index-tuple order.
pub fn characters_of_abelian(a: &FiniteGroup) -> Result<Vec<LinearCharacter>, CharacterError> {
    let whole = a.whole();
    Ok(abelian_character_table(a)?
        .into_iter()
        .map(|row| LinearCharacter {
            domain: whole.clone(),
            values: row.into_iter().map(Some).collect(),
        })
        .collect())
}

/// All linear characters of a subgroup `S ⊆ G`, obtained from the
/// characters of `S/[S, S]` and listed in their index-tuple order.
pub fn linear_characters(group: &FiniteGroup, s: &Subgroup) -> Vec<LinearCharacter> {
    let (sg, embed) = group.subgroup_as_group(s);
    let derived = sg.commutator_subgroup().clone();
    let (q, proj) = sg
        .quotient(&derived)
        .expect("commutator subgroup is normal");
    abelian_character_table(&q)
        .expect("abelianization is abelian")
        .into_iter()
        .map(|row| {
            let mut values = vec![None; group.order()];
            for (local, &global) in embed.iter().enumerate() {
                values[global] = Some(row[proj.apply(local)]);
            }
            LinearCharacter {
                domain: s.clone(),
                values,
            }
        })
        .collect()
}

/// `χ(g·z·g⁻¹) = χ(z)` for all `g ∈ G`, `z` in the (normal) domain.
pub fn is_g_invariant(group: &FiniteGroup, chi: &LinearCharacter) -> Result<bool, CharacterError> {
    if let Some((member, by)) = group.normality_witness(chi.domain()) {
        return Err(CharacterError::DomainNotNormal { member, by });
    }
    Ok(invariance_witness(group, chi).is_none())
}

/// `(g, z)` with `χ(g·z·g⁻¹) ≠ χ(z)`, assuming the domain is normal.
pub fn invariance_witness(group: &FiniteGroup, chi: &LinearCharacter) -> Option<(Elem, Elem)> {
    for g in group.elements() {
        for &z in chi.domain().members() {
            if chi.get(group.conjugate(g, z)) != Some(chi.at(z)) {
                return Some((g, z));
            }
        }
    }
    None
}

/// One extension of `χ` (defined on `Z ⊆ H`) to all of `H`.
///
/// Starting from `D = Z·[H, H]` with `χ` trivial on `[H, H]`, repeatedly
/// adjoins the smallest id `t ∈ H \ D`; with `m` the order of `t` modulo `D`
/// it sets `χ(t) = χ(t^m)/m` using the smallest-exponent root.
pub fn extend_character(
    group: &FiniteGroup,
    chi: &LinearCharacter,
    h: &Subgroup,
) -> Result<LinearCharacter, CharacterError> {
    extend(group, chi, h, false).map(|mut v| v.swap_remove(0))
}

/// Every extension of `χ` from `Z` to `H`; there are `[H : Z·[H,H]]` of them
/// whenever one exists.
pub fn all_extensions(
    group: &FiniteGroup,
    chi: &LinearCharacter,
    h: &Subgroup,
) -> Result<Vec<LinearCharacter>, CharacterError> {
    extend(group, chi, h, true)
}

fn extend(
    group: &FiniteGroup,
    chi: &LinearCharacter,
    h: &Subgroup,
    all_branches: bool,
) -> Result<Vec<LinearCharacter>, CharacterError> {
    let z = chi.domain();
    if let Some(&x) = z.members().iter().find(|&&x| !h.contains(x)) {
        return Err(CharacterError::NoExtension(format!(
            "{x} lies in the domain but not in the target"
        )));
    }
    let derived = group.commutator_of(h, h);
    let mut domain = group.join(z, &derived);
    let mut seed = vec![None; group.order()];
    for &zz in z.members() {
        for &c in derived.members() {
            let v = chi.at(zz);
            let slot = &mut seed[group.mul(zz, c)];
            match slot {
                Some(old) if *old != v => {
                    return Err(CharacterError::NoExtension(format!(
                        "character is nontrivial on the commutator element {}",
                        group.mul(zz, c)
                    )));
                }
                _ => *slot = Some(v),
            }
        }
    }
    let mut branches = vec![seed];
    while domain.order() < h.order() {
        let t = *h
            .members()
            .iter()
            .find(|&&x| !domain.contains(x))
            .expect("domain is proper");
        let mut m = 1;
        let mut tm = t;
        while !domain.contains(tm) {
            tm = group.mul(tm, t);
            m += 1;
        }
        let mut next = Vec::new();
        for values in &branches {
            let base = values[tm].expect("power lies in domain");
            let choices = if all_branches { m } else { 1 };
            for j in 0..choices {
                let ct = QmodZ::new((base.num() + j * base.den()) as i64, base.den() * m);
                let mut vals = values.clone();
                let mut ti = group.identity();
                let mut cti = QmodZ::ZERO;
                for _ in 0..m {
                    for &d in domain.members() {
                        vals[group.mul(ti, d)] = Some(cti + values[d].expect("domain value"));
                    }
                    ti = group.mul(ti, t);
                    cti += ct;
                }
                next.push(vals);
            }
        }
        branches = next;
        let mut gens = domain.members().to_vec();
        gens.push(t);
        domain = group.subgroup_generated(&gens);
    }
    let mut out = Vec::with_capacity(branches.len());
    for values in branches {
        let ext = LinearCharacter {
            domain: h.clone(),
            values,
        };
        ext.check_multiplicative(group).map_err(|e| {
            CharacterError::NoExtension(format!("candidate fails to be a character ({e})"))
        })?;
        out.push(ext);
    }
    Ok(out)
}
