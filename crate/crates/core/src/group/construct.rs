use serde::{Deserialize, Serialize};

use super::{Elem, FiniteGroup, GroupError};

/// Declarative description of a group from one of the built-in families.
///
/// Element ids follow the lexicographic order of each family's parameter
/// tuple; products list the first factor as the most significant digit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case")]
pub enum GroupSpec {
    /// `Z/n`, element `k` has id `k`.
    Cyclic {
        n: usize,
    },
    /// Dihedral group of the given order; `a^i b^j` has id `2i + j`.
    Dihedral {
        order: usize,
    },
    /// The quaternion group of order 8 (same labeling as `Quaternion { order: 8 }`).
    Quaternion8 {},
    /// Dicyclic group `⟨x, y | x^{2m}, y² = x^m, yxy⁻¹ = x⁻¹⟩` of order `4m`;
    /// `x^i y^j` has id `2i + j`.
    Quaternion {
        order: usize,
    },
    DirectProduct {
        factors: Vec<GroupSpec>,
    },
    /// Unitriangular 3×3 matrices over `Z/n`; `(a, b, c)` has id `a·n² + b·n + c`
    /// and `(a,b,c)(a',b',c') = (a+a', b+b'+a·c', c+c')`.
    HeisenbergMod {
        n: usize,
    },
    /// `Z/p² ⋊ Z/p` with the generator acting by multiplication by `1 + p`;
    /// `(x, y)` has id `x·p + y`.
    ExtraspecialP3ExpP2 {
        p: usize,
    },
    /// `(G₁ × G₂)/⟨(z₁, z₂)⟩` for central involutions `z₁`, `z₂`. When an
    /// involution is not given the factor must have exactly one central involution.
    CentralProduct {
        left: Box<GroupSpec>,
        right: Box<GroupSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        left_z: Option<Elem>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        right_z: Option<Elem>,
    },
    /// `Z/m₁ × … × Z/m_k`.
    Abelian {
        factors: Vec<usize>,
    },
}

fn invalid(msg: impl Into<String>) -> GroupError {
    GroupError::InvalidSpec(msg.into())
}

pub(crate) fn is_prime(p: usize) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

impl GroupSpec {
    /// Short human-readable name.
    pub fn label(&self) -> String {
        match self {
            GroupSpec::Cyclic { n } => format!("C{n}"),
            GroupSpec::Dihedral { order } => format!("D{order}"),
            GroupSpec::Quaternion8 {} => "Q8".into(),
            GroupSpec::Quaternion { order } => format!("Q{order}"),
            GroupSpec::DirectProduct { factors } => factors
                .iter()
                .map(GroupSpec::label)
                .collect::<Vec<_>>()
                .join("x"),
            GroupSpec::HeisenbergMod { n } => format!("Heis{n}"),
            GroupSpec::ExtraspecialP3ExpP2 { p } => format!("M{}", p * p * p),
            GroupSpec::CentralProduct { left, right, .. } => {
                format!("{}o{}", left.label(), right.label())
            }
            GroupSpec::Abelian { factors } => factors
                .iter()
                .map(|m| format!("C{m}"))
                .collect::<Vec<_>>()
                .join("x"),
        }
    }

    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        let label = self.label();
        match self {
            GroupSpec::Cyclic { n } => cyclic(*n, label),
            GroupSpec::Dihedral { order } => dihedral(*order, label),
            GroupSpec::Quaternion8 {} => dicyclic(8, label),
            GroupSpec::Quaternion { order } => dicyclic(*order, label),
            GroupSpec::DirectProduct { factors } => {
                if factors.is_empty() {
                    return Err(invalid("direct product needs at least one factor"));
                }
                let groups = factors
                    .iter()
                    .map(GroupSpec::build)
                    .collect::<Result<Vec<_>, _>>()?;
                direct_product(&groups, label)
            }
            GroupSpec::HeisenbergMod { n } => heisenberg_mod(*n, label),
            GroupSpec::ExtraspecialP3ExpP2 { p } => extraspecial_exp_p2(*p, label),
            GroupSpec::CentralProduct {
                left,
                right,
                left_z,
                right_z,
            } => {
                let l = left.build()?;
                let r = right.build()?;
                central_product(&l, &r, *left_z, *right_z, label)
            }
            GroupSpec::Abelian { factors } => {
                if factors.is_empty() || factors.contains(&0) {
                    return Err(invalid("abelian factors must be positive and nonempty"));
                }
                let groups = factors
                    .iter()
                    .map(|&m| cyclic(m, format!("C{m}")))
                    .collect::<Result<Vec<_>, _>>()?;
                direct_product(&groups, label)
            }
        }
    }
}

fn cyclic(n: usize, label: String) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(invalid("cyclic group needs n >= 1"));
    }
    FiniteGroup::from_rule(n, label, |i, j| (i + j) % n)
}

fn dihedral(order: usize, label: String) -> Result<FiniteGroup, GroupError> {
    if order < 2 || !order.is_multiple_of(2) {
        return Err(invalid(format!(
            "dihedral order must be even and >= 2, got {order}"
        )));
    }
    let n = order / 2;
    FiniteGroup::from_rule(order, label, |x, y| {
        let (i1, j1) = (x / 2, x % 2);
        let (i2, j2) = (y / 2, y % 2);
        let i = if j1 == 0 { i1 + i2 } else { i1 + n - i2 } % n;
        2 * i + (j1 ^ j2)
    })
}

fn dicyclic(order: usize, label: String) -> Result<FiniteGroup, GroupError> {
    if order < 4 || !order.is_multiple_of(4) {
        return Err(invalid(format!(
            "quaternion order must be a multiple of 4, got {order}"
        )));
    }
    let m = order / 4;
    let n = 2 * m;
    FiniteGroup::from_rule(order, label, |x, y| {
        let (i1, j1) = (x / 2, x % 2);
        let (i2, j2) = (y / 2, y % 2);
        let mut i = if j1 == 0 { i1 + i2 } else { i1 + n - i2 };
        if j1 == 1 && j2 == 1 {
            i += m;
        }
        2 * (i % n) + (j1 ^ j2)
    })
}

fn direct_product(groups: &[FiniteGroup], label: String) -> Result<FiniteGroup, GroupError> {
    let orders: Vec<usize> = groups.iter().map(FiniteGroup::order).collect();
    let total: usize = orders.iter().product();
    let split = |mut x: usize| {
        let mut digits = vec![0; orders.len()];
        for (k, &o) in orders.iter().enumerate().rev() {
            digits[k] = x % o;
            x /= o;
        }
        digits
    };
    FiniteGroup::from_rule(total, label, |x, y| {
        let (dx, dy) = (split(x), split(y));
        groups
            .iter()
            .enumerate()
            .fold(0, |acc, (k, g)| acc * orders[k] + g.mul(dx[k], dy[k]))
    })
}

fn heisenberg_mod(n: usize, label: String) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(invalid("heisenberg modulus must be >= 1"));
    }
    FiniteGroup::from_rule(n * n * n, label, |x, y| {
        let (a, b, c) = (x / (n * n), x / n % n, x % n);
        let (a2, b2, c2) = (y / (n * n), y / n % n, y % n);
        ((a + a2) % n) * n * n + ((b + b2 + a * c2) % n) * n + (c + c2) % n
    })
}

fn extraspecial_exp_p2(p: usize, label: String) -> Result<FiniteGroup, GroupError> {
    if !is_prime(p) {
        return Err(invalid(format!("{p} is not prime")));
    }
    let p2 = p * p;
    // (1 + p)^y mod p².
    let twist: Vec<usize> = (0..p)
        .map(|y| (0..y).fold(1, |acc, _| acc * (1 + p) % p2))
        .collect();
    FiniteGroup::from_rule(p2 * p, label, |u, v| {
        let (x1, y1) = (u / p, u % p);
        let (x2, y2) = (v / p, v % p);
        ((x1 + twist[y1] * x2) % p2) * p + (y1 + y2) % p
    })
}

fn central_involution(g: &FiniteGroup, given: Option<Elem>) -> Result<Elem, GroupError> {
    let center = g.center();
    match given {
        Some(z) => {
            if z >= g.order() || !center.contains(z) || g.element_order(z) != 2 {
                return Err(invalid(format!(
                    "{z} is not a central involution of {}",
                    g.label()
                )));
            }
            Ok(z)
        }
        None => {
            let invols: Vec<Elem> = center
                .members()
                .iter()
                .copied()
                .filter(|&z| g.element_order(z) == 2)
                .collect();
            match invols.as_slice() {
                [z] => Ok(*z),
                _ => Err(invalid(format!(
                    "{} has {} central involutions; name one explicitly",
                    g.label(),
                    invols.len()
                ))),
            }
        }
    }
}

fn central_product(
    left: &FiniteGroup,
    right: &FiniteGroup,
    left_z: Option<Elem>,
    right_z: Option<Elem>,
    label: String,
) -> Result<FiniteGroup, GroupError> {
    let z1 = central_involution(left, left_z)?;
    let z2 = central_involution(right, right_z)?;
    let product = direct_product(&[left.clone(), right.clone()], label.clone())?;
    let glue = product.subgroup_generated(&[z1 * right.order() + z2]);
    let (q, _) = product.quotient(&glue)?;
    Ok(q.with_label(label))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_centers() {
        let cases = [
            (GroupSpec::Cyclic { n: 7 }, 7, 7),
            (GroupSpec::Dihedral { order: 8 }, 8, 2),
            (GroupSpec::Dihedral { order: 10 }, 10, 1),
            (GroupSpec::Quaternion8 {}, 8, 2),
            (GroupSpec::Quaternion { order: 16 }, 16, 2),
            (GroupSpec::HeisenbergMod { n: 3 }, 27, 3),
            (GroupSpec::HeisenbergMod { n: 4 }, 64, 4),
            (GroupSpec::ExtraspecialP3ExpP2 { p: 3 }, 27, 3),
            (
                GroupSpec::Abelian {
                    factors: vec![2, 4],
                },
                8,
                8,
            ),
        ];
        for (spec, order, center) in cases {
            let g = spec.build().unwrap();
            assert_eq!(g.order(), order, "{}", spec.label());
            assert_eq!(g.center().order(), center, "{}", spec.label());
        }
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = GroupSpec::Quaternion8 {}.build().unwrap();
        let invols = q.elements().filter(|&x| q.element_order(x) == 2).count();
        assert_eq!(invols, 1);
        assert_eq!(q.exponent(), 4);
        assert!(!q.is_abelian());
    }

    #[test]
    fn exponents_of_order_p_cubed() {
        let h = GroupSpec::HeisenbergMod { n: 5 }.build().unwrap();
        assert_eq!(h.exponent(), 5);
        let m = GroupSpec::ExtraspecialP3ExpP2 { p: 5 }.build().unwrap();
        assert_eq!(m.exponent(), 25);
        assert!(!m.is_abelian());
        assert_eq!(m.commutator_subgroup(), m.center());
    }

    #[test]
    fn central_products_of_order_32() {
        let d8 = Box::new(GroupSpec::Dihedral { order: 8 });
        let q8 = Box::new(GroupSpec::Quaternion8 {});
        for (l, r) in [(d8.clone(), d8.clone()), (d8.clone(), q8)] {
            let spec = GroupSpec::CentralProduct {
                left: l,
                right: r,
                left_z: None,
                right_z: None,
            };
            let g = spec.build().unwrap();
            assert_eq!(g.order(), 32);
            assert_eq!(g.center().order(), 2);
            assert_eq!(g.commutator_subgroup(), g.center());
        }
    }

    #[test]
    fn direct_product_ids_are_lexicographic() {
        let g = GroupSpec::Abelian {
            factors: vec![2, 3],
        }
        .build()
        .unwrap();
        // (1, 0) has id 3, (0, 1) has id 1.
        assert_eq!(g.mul(3, 1), 4);
        assert_eq!(g.element_order(1), 3);
        assert_eq!(g.element_order(3), 2);
    }

    #[test]
    fn invalid_specs() {
        for spec in [
            GroupSpec::Cyclic { n: 0 },
            GroupSpec::Dihedral { order: 7 },
            GroupSpec::Quaternion { order: 10 },
            GroupSpec::ExtraspecialP3ExpP2 { p: 4 },
            GroupSpec::Abelian { factors: vec![] },
            GroupSpec::DirectProduct { factors: vec![] },
            GroupSpec::CentralProduct {
                left: Box::new(GroupSpec::Abelian {
                    factors: vec![2, 2],
                }),
                right: Box::new(GroupSpec::Quaternion8 {}),
                left_z: None,
                right_z: None,
            },
        ] {
            assert!(
                matches!(spec.build(), Err(GroupError::InvalidSpec(_))),
                "{spec:?}"
            );
        }
    }

    #[test]
    fn serde_shape() {
        let spec = GroupSpec::Dihedral { order: 8 };
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"family":"dihedral","params":{"order":8}}"#);
        let q: GroupSpec = serde_json::from_str(r#"{"family":"quaternion8","params":{}}"#).unwrap();
        assert_eq!(q, GroupSpec::Quaternion8 {});
        let es: GroupSpec =
            serde_json::from_str(r#"{"family":"extraspecial_p3_exp_p2","params":{"p":3}}"#)
                .unwrap();
        assert_eq!(es, GroupSpec::ExtraspecialP3ExpP2 { p: 3 });
    }
}
