//! Structure of finite abelian groups: invariant-factor bases, Miller
//! products and 2-ranks.

use serde::Serialize;
use thiserror::Error;

use crate::group::{Elem, FiniteGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("group {label} is not abelian: {x} and {y} do not commute")]
    NotAbelian { label: String, x: Elem, y: Elem },
}

/// An invariant-factor basis `A = ⟨t₁⟩ × … × ⟨t_s⟩` with `m₁ | m₂ | … | m_s`
/// and every `m_i > 1`, together with the coordinate table of every element.
#[derive(Clone, Debug, Serialize)]
pub struct AbelianDecomposition {
    factors: Vec<u64>,
    generators: Vec<Elem>,
    #[serde(skip)]
    coords: Vec<Vec<u64>>,
}

impl AbelianDecomposition {
    /// Invariant factors in ascending divisibility order.
    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Exponents `(a₁, …, a_s)` with `g = ∏ t_i^{a_i}`, `0 <= a_i < m_i`.
    pub fn coordinates(&self, g: Elem) -> &[u64] {
        &self.coords[g]
    }
}

fn require_abelian(a: &FiniteGroup) -> Result<(), AbelianError> {
    for x in a.elements() {
        for y in x + 1..a.order() {
            if a.mul(x, y) != a.mul(y, x) {
                return Err(AbelianError::NotAbelian {
                    label: a.label().to_string(),
                    x,
                    y,
                });
            }
        }
    }
    Ok(())
}

/// Invariant-factor decomposition.
///
/// Takes `t` of maximal order `m` (smallest id on ties), decomposes `A/⟨t⟩`
/// recursively and lifts each generator `q` of order `k` to the smallest
/// preimage `u`, corrected to `u·t^{-j/k}` where `u^k = t^j`. Maximality of `m`
/// forces `k | j`, and the corrected lifts split `⟨t⟩` off as a direct factor.
pub fn decompose(a: &FiniteGroup) -> Result<AbelianDecomposition, AbelianError> {
    require_abelian(a)?;
    let basis = invariant_basis(a);
    let factors: Vec<u64> = basis.iter().map(|&(_, m)| m as u64).collect();
    let generators: Vec<Elem> = basis.iter().map(|&(t, _)| t).collect();

    let mut coords: Vec<Option<Vec<u64>>> = vec![None; a.order()];
    let mut digits = vec![0u64; factors.len()];
    loop {
        let g = generators
            .iter()
            .zip(&digits)
            .fold(a.identity(), |acc, (&t, &e)| a.mul(acc, a.pow(t, e as i64)));
        assert!(coords[g].is_none(), "basis is not free");
        coords[g] = Some(digits.clone());
        // Mixed-radix increment, last coordinate fastest.
        let mut k = factors.len();
        loop {
            if k == 0 {
                let coords = coords
                    .into_iter()
                    .map(|c| c.expect("basis spans"))
                    .collect();
                return Ok(AbelianDecomposition {
                    factors,
                    generators,
                    coords,
                });
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < factors[k] {
                break;
            }
            digits[k] = 0;
        }
    }
}

fn invariant_basis(a: &FiniteGroup) -> Vec<(Elem, usize)> {
    if a.order() == 1 {
        return Vec::new();
    }
    let (t, m) =
        a.elements()
            .map(|x| (x, a.element_order(x)))
            .fold(
                (a.identity(), 1),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
    let cyc = a.subgroup_generated(&[t]);
    let mut dlog = vec![None; a.order()];
    let mut y = a.identity();
    for j in 0..m {
        dlog[y] = Some(j as i64);
        y = a.mul(y, t);
    }
    let (q, proj) = a
        .quotient(&cyc)
        .expect("subgroups of abelian groups are normal");
    let lifts = proj.min_preimages();
    let mut basis: Vec<(Elem, usize)> = invariant_basis(&q)
        .into_iter()
        .map(|(qg, k)| {
            let u = lifts[qg].expect("projection is onto");
            let j = dlog[a.pow(u, k as i64)].expect("u^k lies in <t>");
            debug_assert_eq!(j % k as i64, 0);
            (a.mul(u, a.pow(t, -(j / k as i64))), k)
        })
        .collect();
    basis.push((t, m));
    basis
}

/// Product of all elements.
pub fn miller_product(a: &FiniteGroup) -> Result<Elem, AbelianError> {
    require_abelian(a)?;
    Ok(a.elements().fold(a.identity(), |acc, x| a.mul(acc, x)))
}

/// Number of even invariant factors, i.e. `log₂` of the size of the
/// 2-torsion.
pub fn two_rank(a: &FiniteGroup) -> Result<usize, AbelianError> {
    require_abelian(a)?;
    let torsion = a
        .elements()
        .filter(|&x| a.mul(x, x) == a.identity())
        .count();
    Ok(torsion.trailing_zeros() as usize)
}

/// The 2-torsion `{x : x² = e}`, identity included.
pub fn two_torsion(g: &FiniteGroup) -> Vec<Elem> {
    g.elements()
        .filter(|&x| g.mul(x, x) == g.identity())
        .collect()
}

/// Elements of order exactly 2.
pub fn involutions(g: &FiniteGroup) -> Vec<Elem> {
    g.elements()
        .filter(|&x| x != g.identity() && g.mul(x, x) == g.identity())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn ab(factors: &[usize]) -> FiniteGroup {
        GroupSpec::Abelian {
            factors: factors.to_vec(),
        }
        .build()
        .unwrap()
    }

    #[test]
    fn invariant_factors() {
        let cases: [(&[usize], &[u64]); 6] = [
            (&[1], &[]),
            (&[6], &[6]),
            (&[2, 3], &[6]),
            (&[4, 6], &[2, 12]),
            (&[2, 2, 2], &[2, 2, 2]),
            (&[3, 9, 4], &[3, 36]),
        ];
        for (input, want) in cases {
            let d = decompose(&ab(input)).unwrap();
            assert_eq!(d.factors(), want, "{input:?}");
            let g = ab(input);
            for (t, &m) in d.generators().iter().zip(d.factors()) {
                assert_eq!(g.element_order(*t) as u64, m);
            }
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let g = ab(&[2, 4, 4]);
        let d = decompose(&g).unwrap();
        for x in g.elements() {
            let back = d
                .generators()
                .iter()
                .zip(d.coordinates(x))
                .fold(g.identity(), |acc, (&t, &e)| g.mul(acc, g.pow(t, e as i64)));
            assert_eq!(back, x);
        }
    }

    #[test]
    fn miller_products() {
        assert_eq!(miller_product(&ab(&[5])).unwrap(), 0);
        let z4 = ab(&[4]);
        assert_eq!(miller_product(&z4).unwrap(), 2);
        // Two or more even factors give the identity.
        assert_eq!(miller_product(&ab(&[2, 2])).unwrap(), 0);
    }

    #[test]
    fn two_ranks() {
        assert_eq!(two_rank(&ab(&[3, 5])).unwrap(), 0);
        assert_eq!(two_rank(&ab(&[2, 4, 3])).unwrap(), 2);
        assert_eq!(two_rank(&ab(&[2, 2, 2, 2])).unwrap(), 4);
    }

    #[test]
    fn rejects_nonabelian() {
        let d8 = GroupSpec::Dihedral { order: 8 }.build().unwrap();
        assert!(decompose(&d8).is_err());
        assert!(miller_product(&d8).is_err());
        assert_eq!(involutions(&d8).len(), 5);
    }
}
