//! Roquette isomorphism types and their recognition.
//!
//! A finite p-group is Roquette when all of its normal abelian subgroups
//! are cyclic. For odd p these are exactly the cyclic groups; for p = 2
//! the cyclic, generalized quaternion, and the dihedral and semidihedral
//! groups of order at least 16. `roquette_type` recognizes the type from
//! cheap invariants (abelian/cyclic test, exponent, involution count);
//! `roquette_type_by_definition` runs the defining normal-rank check over
//! the whole lattice and exists as an independent oracle for tests.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{is_prime, Family, FiniteGroup, Provenance};
use crate::subgroup::all_subgroups;

/// Isomorphism type of a Roquette p-group. Nonabelian variants always
/// have p = 2; the size parameter `n` is the exponent of 2 in the order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RoquetteType {
    Trivial,
    /// Cyclic of order p^n, n ≥ 1.
    Cyclic { p: u64, n: u32 },
    /// Dihedral of order 2^n, n ≥ 4.
    Dihedral { n: u32 },
    /// Generalized quaternion of order 2^n, n ≥ 3.
    Quaternion { n: u32 },
    /// Semidihedral of order 2^n, n ≥ 4.
    Semidihedral { n: u32 },
}

use RoquetteType::*;

impl RoquetteType {
    pub fn cyclic(p: u64, n: u32) -> Result<RoquetteType> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        if n == 0 {
            return Err(Error::InvalidParameter(
                "cyclic type needs order at least p; use Trivial".into(),
            ));
        }
        Ok(Cyclic { p, n })
    }

    pub fn dihedral(n: u32) -> Result<RoquetteType> {
        if n < 4 {
            return Err(Error::InvalidParameter(
                "dihedral groups of order below 16 are not Roquette".into(),
            ));
        }
        Ok(Dihedral { n })
    }

    pub fn quaternion(n: u32) -> Result<RoquetteType> {
        if n < 3 {
            return Err(Error::InvalidParameter(
                "generalized quaternion groups start at order 8".into(),
            ));
        }
        Ok(Quaternion { n })
    }

    pub fn semidihedral(n: u32) -> Result<RoquetteType> {
        if n < 4 {
            return Err(Error::InvalidParameter(
                "semidihedral groups start at order 16".into(),
            ));
        }
        Ok(Semidihedral { n })
    }

    /// Prime attached to the type; `Trivial` carries none.
    pub fn prime(&self) -> Option<u64> {
        match *self {
            Trivial => None,
            Cyclic { p, .. } => Some(p),
            Dihedral { .. } | Quaternion { .. } | Semidihedral { .. } => Some(2),
        }
    }

    pub fn order(&self) -> BigUint {
        match *self {
            Trivial => BigUint::from(1u32),
            Cyclic { p, n } => BigUint::from(p).pow(n),
            Dihedral { n } | Quaternion { n } | Semidihedral { n } => {
                BigUint::from(2u32).pow(n)
            }
        }
    }

    /// Exponent: p^n for cyclic types, half the order for the others.
    pub fn exponent(&self) -> BigUint {
        match *self {
            Trivial => BigUint::from(1u32),
            Cyclic { p, n } => BigUint::from(p).pow(n),
            Dihedral { n } | Quaternion { n } | Semidihedral { n } => {
                BigUint::from(2u32).pow(n - 1)
            }
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Trivial)
    }

    pub fn is_q8(&self) -> bool {
        matches!(self, Quaternion { n: 3 })
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self, Trivial | Cyclic { .. })
    }

    /// Serialization tag: `1`, `C:p^n`, `D:2^n`, `Q:2^n`, `SD:2^n`.
    pub fn tag(&self) -> String {
        match *self {
            Trivial => "1".into(),
            Cyclic { p, n } => format!("C:{p}^{n}"),
            Dihedral { n } => format!("D:2^{n}"),
            Quaternion { n } => format!("Q:2^{n}"),
            Semidihedral { n } => format!("SD:2^{n}"),
        }
    }

    pub fn from_tag(tag: &str) -> Result<RoquetteType> {
        if tag == "1" {
            return Ok(Trivial);
        }
        let (kind, rest) = tag
            .split_once(':')
            .ok_or_else(|| Error::BadTag(tag.into()))?;
        let (base, exp) = rest
            .split_once('^')
            .ok_or_else(|| Error::BadTag(tag.into()))?;
        let base: u64 = base.parse().map_err(|_| Error::BadTag(tag.into()))?;
        let exp: u32 = exp.parse().map_err(|_| Error::BadTag(tag.into()))?;
        match kind {
            "C" => RoquetteType::cyclic(base, exp),
            "D" if base == 2 => RoquetteType::dihedral(exp),
            "Q" if base == 2 => RoquetteType::quaternion(exp),
            "SD" if base == 2 => RoquetteType::semidihedral(exp),
            _ => Err(Error::BadTag(tag.into())),
        }
        .map_err(|_| Error::BadTag(tag.into()))
    }
}

impl std::fmt::Display for RoquetteType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Trivial => write!(f, "1"),
            Cyclic { .. } => write!(f, "C{}", self.order()),
            Dihedral { .. } => write!(f, "D{}", self.order()),
            Quaternion { .. } => write!(f, "Q{}", self.order()),
            Semidihedral { .. } => write!(f, "SD{}", self.order()),
        }
    }
}

fn log_prime(order: usize, p: u64) -> u32 {
    let mut n = order as u64;
    let mut k = 0;
    while n > 1 {
        n /= p;
        k += 1;
    }
    k
}

/// Recognizes the Roquette type of a concrete group, or `None` when some
/// normal abelian subgroup is non-cyclic. Nonabelian 2-groups with a
/// cyclic subgroup of index 2 are separated by their involution count
/// (dihedral 2^{n-1}+1, semidihedral 2^{n-2}+1, quaternion 1, modular 3).
pub fn roquette_type(g: &FiniteGroup) -> Option<RoquetteType> {
    let t = roquette_type_inner(g);
    debug_assert_eq!(
        t,
        match g.tag() {
            Some(Provenance::Family(f)) => family_roquette_type(f),
            _ => t,
        },
        "classification disagrees with the construction tag"
    );
    t
}

fn roquette_type_inner(g: &FiniteGroup) -> Option<RoquetteType> {
    if g.is_trivial() {
        return Some(Trivial);
    }
    let p = g.prime();
    if g.is_abelian() {
        return if g.exponent() == g.order() as u64 {
            Some(Cyclic {
                p,
                n: log_prime(g.order(), p),
            })
        } else {
            None
        };
    }
    if p != 2 {
        return None;
    }
    if g.exponent() != g.order() as u64 / 2 {
        return None;
    }
    let n = log_prime(g.order(), 2);
    let involutions = (1..g.order()).filter(|&x| g.elem_order(x) == 2).count();
    if involutions == 1 {
        Some(Quaternion { n })
    } else if involutions == (1 << (n - 1)) + 1 {
        (n >= 4).then_some(Dihedral { n })
    } else if n >= 4 && involutions == (1 << (n - 2)) + 1 {
        Some(Semidihedral { n })
    } else {
        None
    }
}

/// The expected recognition result for a group built from `family`.
pub fn family_roquette_type(family: &Family) -> Option<RoquetteType> {
    match *family {
        Family::Cyclic { p, n } => {
            if n == 0 {
                Some(Trivial)
            } else {
                Some(Cyclic { p, n })
            }
        }
        Family::Dihedral { n } => (n >= 4).then_some(Dihedral { n }),
        Family::Quaternion { n } => Some(Quaternion { n }),
        Family::Semidihedral { n } => Some(Semidihedral { n }),
        Family::ElementaryAbelian { p, rank } => match rank {
            0 => Some(Trivial),
            1 => Some(Cyclic { p, n: 1 }),
            _ => None,
        },
        Family::Extraspecial { p, plus } => (p == 2 && !plus).then_some(Quaternion { n: 3 }),
    }
}

/// Defining check, by exhausting the subgroup lattice: the group is
/// Roquette iff no normal abelian subgroup is non-cyclic. Slow; kept as
/// the independent oracle for `roquette_type`.
pub fn roquette_type_by_definition(
    g: &FiniteGroup,
    max_order: u64,
) -> Result<Option<RoquetteType>> {
    for s in all_subgroups(g, max_order)? {
        if s.is_abelian() && !s.is_cyclic() && s.is_normal() {
            return Ok(None);
        }
    }
    // Normal rank 1: classification by invariants is now exact.
    let t = roquette_type_inner(g);
    debug_assert!(t.is_some(), "normal rank 1 group must classify");
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{direct_product, make_family, Family, DEFAULT_MAX_ORDER};
    use crate::subgroup::{normal_subgroups, quotient_group};

    fn build(f: Family) -> FiniteGroup {
        make_family(f, DEFAULT_MAX_ORDER).unwrap()
    }

    #[test]
    fn families_classify_as_expected() {
        let cases: Vec<(Family, Option<RoquetteType>)> = vec![
            (Family::Cyclic { p: 2, n: 0 }, Some(Trivial)),
            (Family::Cyclic { p: 3, n: 2 }, Some(Cyclic { p: 3, n: 2 })),
            (Family::Dihedral { n: 3 }, None),
            (Family::Dihedral { n: 4 }, Some(Dihedral { n: 4 })),
            (Family::Dihedral { n: 6 }, Some(Dihedral { n: 6 })),
            (Family::Quaternion { n: 3 }, Some(Quaternion { n: 3 })),
            (Family::Quaternion { n: 5 }, Some(Quaternion { n: 5 })),
            (Family::Semidihedral { n: 4 }, Some(Semidihedral { n: 4 })),
            (Family::ElementaryAbelian { p: 2, rank: 2 }, None),
            (Family::ElementaryAbelian { p: 3, rank: 3 }, None),
            (Family::Extraspecial { p: 3, plus: true }, None),
            (Family::Extraspecial { p: 3, plus: false }, None),
            (Family::Extraspecial { p: 2, plus: true }, None),
            (
                Family::Extraspecial { p: 2, plus: false },
                Some(Quaternion { n: 3 }),
            ),
        ];
        for (f, expected) in cases {
            assert_eq!(roquette_type(&build(f)), expected, "{f:?}");
        }
    }

    #[test]
    fn recognizer_matches_definition_on_small_corpus() {
        let families = [
            Family::Cyclic { p: 2, n: 4 },
            Family::Dihedral { n: 4 },
            Family::Dihedral { n: 5 },
            Family::Quaternion { n: 4 },
            Family::Semidihedral { n: 4 },
            Family::Semidihedral { n: 5 },
            Family::ElementaryAbelian { p: 2, rank: 3 },
            Family::Extraspecial { p: 3, plus: true },
            Family::Extraspecial { p: 3, plus: false },
        ];
        for f in families {
            let g = build(f);
            assert_eq!(
                roquette_type(&g),
                roquette_type_by_definition(&g, 512).unwrap(),
                "{f:?}"
            );
            // every quotient too
            for n in normal_subgroups(&g, 512).unwrap() {
                let (q, _) = quotient_group(&g, &n).unwrap();
                assert_eq!(
                    roquette_type(&q),
                    roquette_type_by_definition(&q, 512).unwrap(),
                    "{f:?} quotient of order {}",
                    q.order()
                );
            }
        }
        let d8 = build(Family::Dihedral { n: 3 });
        let p = direct_product(&d8, &d8, 512).unwrap();
        assert_eq!(roquette_type(&p), None);
        assert_eq!(roquette_type_by_definition(&p, 512).unwrap(), None);
    }

    #[test]
    fn modular_group_of_order_16_is_rejected() {
        // x of order 8, y² = 1, y x y = x⁵: cyclic-by-2 but not Roquette.
        let h = 8usize;
        let mut mul = vec![0u16; 256];
        for u in 0..16 {
            for v in 0..16 {
                let (a, b) = (u % h, u / h);
                let (c, d) = (v % h, v / h);
                let c = if b == 1 { c * 5 % h } else { c };
                mul[u * 16 + v] = ((a + c) % h + ((b + d) % 2) * h) as u16;
            }
        }
        let m16 = FiniteGroup::from_mul_table(2, mul, None, None, 512).unwrap();
        assert!(!m16.is_abelian());
        assert_eq!(m16.exponent(), 8);
        assert_eq!(roquette_type(&m16), None);
        assert_eq!(roquette_type_by_definition(&m16, 512).unwrap(), None);
    }

    #[test]
    fn tags_round_trip() {
        let types = [
            Trivial,
            Cyclic { p: 3, n: 2 },
            Cyclic { p: 2, n: 1 },
            Dihedral { n: 4 },
            Quaternion { n: 3 },
            Semidihedral { n: 5 },
        ];
        for t in types {
            assert_eq!(RoquetteType::from_tag(&t.tag()).unwrap(), t);
        }
        assert!(RoquetteType::from_tag("SD:2^3").is_err());
        assert!(RoquetteType::from_tag("C:4^2").is_err());
        assert!(RoquetteType::from_tag("D16").is_err());
    }

    #[test]
    fn constructors_enforce_ranges() {
        assert!(RoquetteType::dihedral(3).is_err());
        assert!(RoquetteType::semidihedral(3).is_err());
        assert!(RoquetteType::quaternion(2).is_err());
        assert!(RoquetteType::cyclic(6, 1).is_err());
        assert!(RoquetteType::cyclic(2, 0).is_err());
    }
}
