//! Per-edge value tables for rational invariants, and their evaluation
//! on edge sums.
//!
//! A `FunctorTable` assigns an abelian-group signature to some edge
//! types. Evaluating a sum adds the signatures of the edges the table
//! knows and reports the rest as an explicit unknown remainder — tables
//! never extrapolate beyond their stated domain.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::edge::{euler_phi_prime_power, EdgeSum};
use crate::error::{Error, Result};
use crate::roquette::RoquetteType;

/// A finitely generated abelian group up to isomorphism: free rank plus
/// a multiset of prime-power cyclic orders.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AbelianSignature {
    pub free_rank: BigUint,
    /// cyclic order → number of summands of that order
    pub torsion: BTreeMap<u64, BigUint>,
}

impl AbelianSignature {
    pub fn zero() -> AbelianSignature {
        AbelianSignature::default()
    }

    pub fn torsion_of(order: u64, copies: BigUint) -> AbelianSignature {
        let mut torsion = BTreeMap::new();
        if !copies.is_zero() {
            torsion.insert(order, copies);
        }
        AbelianSignature {
            free_rank: BigUint::zero(),
            torsion,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank.is_zero() && self.torsion.is_empty()
    }

    /// Adds `copies` direct copies of `other` to this signature.
    pub fn accumulate(&mut self, other: &AbelianSignature, copies: &BigUint) {
        if copies.is_zero() {
            return;
        }
        self.free_rank += &other.free_rank * copies;
        for (order, count) in &other.torsion {
            let entry = self.torsion.entry(*order).or_default();
            *entry += count * copies;
        }
    }

    /// Total number of torsion summands.
    pub fn torsion_rank(&self) -> BigUint {
        self.torsion.values().sum()
    }
}

impl fmt::Display for AbelianSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if !self.free_rank.is_zero() {
            if self.free_rank.is_one() {
                parts.push("Z".to_string());
            } else {
                parts.push(format!("Z^{}", self.free_rank));
            }
        }
        for (order, count) in &self.torsion {
            if count.is_one() {
                parts.push(format!("Z/{order}"));
            } else {
                parts.push(format!("(Z/{order})^{count}"));
            }
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// Which edge types a table entry covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgePattern {
    Exact(RoquetteType),
    /// Cyclic of order p^n for every n ≥ min_n.
    CyclicAtLeast { p: u64, min_n: u32 },
    AnyDihedral,
    AnyQuaternion,
    AnySemidihedral,
}

impl EdgePattern {
    fn matches(&self, t: &RoquetteType) -> bool {
        match (self, t) {
            (EdgePattern::Exact(x), t) => x == t,
            (EdgePattern::CyclicAtLeast { p, min_n }, RoquetteType::Cyclic { p: q, n }) => {
                p == q && n >= min_n
            }
            (EdgePattern::AnyDihedral, RoquetteType::Dihedral { .. }) => true,
            (EdgePattern::AnyQuaternion, RoquetteType::Quaternion { .. }) => true,
            (EdgePattern::AnySemidihedral, RoquetteType::Semidihedral { .. }) => true,
            _ => false,
        }
    }
}

/// A named partial map from edge types to signatures.
#[derive(Debug, Clone)]
pub struct FunctorTable {
    pub name: String,
    pub scope_note: String,
    rules: Vec<(EdgePattern, AbelianSignature)>,
}

impl FunctorTable {
    pub fn new(
        name: impl Into<String>,
        scope_note: impl Into<String>,
        rules: Vec<(EdgePattern, AbelianSignature)>,
    ) -> Result<FunctorTable> {
        let table = FunctorTable {
            name: name.into(),
            scope_note: scope_note.into(),
            rules,
        };
        table.check_collapse_invariance()?;
        Ok(table)
    }

    /// ∂C₂ ≅ 1 forces equal values whenever both are defined.
    fn check_collapse_invariance(&self) -> Result<()> {
        let unit = self.value(&RoquetteType::Trivial);
        let c2 = self.value(&RoquetteType::Cyclic { p: 2, n: 1 });
        if let (Some(a), Some(b)) = (unit, c2) {
            if a != b {
                return Err(Error::InvalidParameter(format!(
                    "table {}: values at the trivial edge and at C2 differ",
                    self.name
                )));
            }
        }
        Ok(())
    }

    pub fn value(&self, t: &RoquetteType) -> Option<&AbelianSignature> {
        self.rules
            .iter()
            .find(|(pat, _)| pat.matches(t))
            .map(|(_, sig)| sig)
    }

    /// Registers an exact-type entry from the serialized form: the same
    /// type tags as the edge-sum wire format, a free rank, and a list of
    /// torsion orders.
    pub fn register(&mut self, type_tag: &str, free_rank: u64, torsion: &[u64]) -> Result<()> {
        let ty = RoquetteType::from_tag(type_tag)?;
        let mut sig = AbelianSignature {
            free_rank: BigUint::from(free_rank),
            torsion: BTreeMap::new(),
        };
        for &t in torsion {
            if t < 2 {
                return Err(Error::InvalidParameter(
                    "torsion orders must exceed 1".into(),
                ));
            }
            *sig.torsion.entry(t).or_default() += BigUint::one();
        }
        self.rules.insert(0, (EdgePattern::Exact(ty), sig));
        self.check_collapse_invariance()
    }

    /// Torsion of the Dade group at each 2-group edge: trivial and C₂
    /// edges vanish, larger cyclic edges and semidihedral edges each
    /// carry a Z/2, dihedral edges are torsion free. Quaternion edges
    /// and all odd-p edges are outside the table.
    pub fn dade_torsion_2() -> FunctorTable {
        FunctorTable::new(
            "dade-torsion",
            "2-group edges except generalized quaternion",
            vec![
                (
                    EdgePattern::Exact(RoquetteType::Trivial),
                    AbelianSignature::zero(),
                ),
                (
                    EdgePattern::Exact(RoquetteType::Cyclic { p: 2, n: 1 }),
                    AbelianSignature::zero(),
                ),
                (
                    EdgePattern::CyclicAtLeast { p: 2, min_n: 2 },
                    AbelianSignature::torsion_of(2, BigUint::one()),
                ),
                (EdgePattern::AnyDihedral, AbelianSignature::zero()),
                (
                    EdgePattern::AnySemidihedral,
                    AbelianSignature::torsion_of(2, BigUint::one()),
                ),
            ],
        )
        .expect("built-in table is collapse-invariant")
    }

    /// Burnside unit groups over F₂: each trivial, C₂ or dihedral edge
    /// contributes one F₂ summand; nothing else is covered.
    pub fn burnside_units_2() -> FunctorTable {
        FunctorTable::new(
            "burnside-units",
            "sums of trivial, C2 and dihedral edges",
            vec![
                (
                    EdgePattern::Exact(RoquetteType::Trivial),
                    AbelianSignature::torsion_of(2, BigUint::one()),
                ),
                (
                    EdgePattern::Exact(RoquetteType::Cyclic { p: 2, n: 1 }),
                    AbelianSignature::torsion_of(2, BigUint::one()),
                ),
                (
                    EdgePattern::AnyDihedral,
                    AbelianSignature::torsion_of(2, BigUint::one()),
                ),
            ],
        )
        .expect("built-in table is collapse-invariant")
    }
}

/// Result of a table evaluation: either every edge was covered, or the
/// known part together with the uncovered remainder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evaluation {
    Total(AbelianSignature),
    Partial {
        known: AbelianSignature,
        unknown: EdgeSum,
    },
}

impl Evaluation {
    pub fn known(&self) -> &AbelianSignature {
        match self {
            Evaluation::Total(sig) => sig,
            Evaluation::Partial { known, .. } => known,
        }
    }

    pub fn is_total(&self) -> bool {
        matches!(self, Evaluation::Total(_))
    }
}

impl fmt::Display for Evaluation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evaluation::Total(sig) => write!(f, "{sig}"),
            Evaluation::Partial { known, unknown } => {
                write!(f, "partial: known {known}, outside table: {unknown}")
            }
        }
    }
}

/// Sums table values over the edges of `x` as given (no collapse).
pub fn evaluate(table: &FunctorTable, x: &EdgeSum) -> Evaluation {
    let mut known = AbelianSignature::zero();
    let mut unknown = EdgeSum::empty(x.prime());
    for (ty, mult) in x.terms() {
        match table.value(ty) {
            Some(sig) => known.accumulate(sig, mult),
            None => unknown
                .add(*ty, mult)
                .expect("terms of a valid sum keep their prime"),
        }
    }
    if unknown.is_zero() {
        Evaluation::Total(known)
    } else {
        Evaluation::Partial { known, unknown }
    }
}

/// Rank of R_Q on the object: the total multiplicity of the canonical
/// form. For the decomposition of a group this counts the conjugacy
/// classes of cyclic subgroups.
pub fn rq_rank(x: &EdgeSum) -> BigUint {
    x.canonical_form().total_multiplicity()
}

/// Number of faithful irreducible rational representations encoded by a
/// faithful-part sum: its total multiplicity, exactly as given.
pub fn faithful_count(x: &EdgeSum) -> BigUint {
    x.total_multiplicity()
}

/// Torsion of the Dade group, summed per edge over the built-in table.
pub fn dade_torsion(x: &EdgeSum) -> Evaluation {
    evaluate(&FunctorTable::dade_torsion_2(), x)
}

/// F₂-rank of the Burnside unit group, when every edge lies in the
/// stated domain (trivial, C₂ and dihedral edges).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RankResult {
    Exact(BigUint),
    Partial { known: BigUint, unknown: EdgeSum },
}

impl fmt::Display for RankResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankResult::Exact(r) => write!(f, "{r}"),
            RankResult::Partial { known, unknown } => {
                write!(f, "partial: known rank {known}, outside table: {unknown}")
            }
        }
    }
}

pub fn burnside_units_rank(x: &EdgeSum) -> Result<RankResult> {
    if x.prime() != 2 {
        return Err(Error::InvalidParameter(
            "the Burnside unit table is stated for p = 2".into(),
        ));
    }
    Ok(match evaluate(&FunctorTable::burnside_units_2(), x) {
        Evaluation::Total(sig) => RankResult::Exact(sig.torsion_rank()),
        Evaluation::Partial { known, unknown } => RankResult::Partial {
            known: known.torsion_rank(),
            unknown,
        },
    })
}

/// For odd p: the multiset of cyclotomic degrees φ(p^n) over the edges,
/// with multiplicity. This determines the center of the rational group
/// algebra up to isomorphism.
pub fn center_signature(x: &EdgeSum) -> Result<BTreeMap<BigUint, BigUint>> {
    if x.prime() == 2 {
        return Err(Error::OddPrimeRequired);
    }
    let mut out: BTreeMap<BigUint, BigUint> = BTreeMap::new();
    for (ty, mult) in x.terms() {
        let degree = match ty {
            RoquetteType::Trivial => BigUint::one(),
            RoquetteType::Cyclic { p, n } => euler_phi_prime_power(*p, *n),
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unexpected non-cyclic edge {other} at an odd prime"
                )))
            }
        };
        *out.entry(degree).or_default() += mult;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{decompose_raw, faithful_raw, parse_expr};

    fn raw(src: &str) -> EdgeSum {
        decompose_raw(&parse_expr(src).unwrap()).unwrap()
    }

    #[test]
    fn rq_rank_examples() {
        assert_eq!(rq_rank(&raw("D8")), 5u32.into());
        assert_eq!(rq_rank(&raw("C27")), 4u32.into());
        assert_eq!(rq_rank(&raw("D16 x Q8")), 30u32.into());
        let d8 = raw("D8");
        for n in 0..6u32 {
            assert_eq!(
                rq_rank(&d8.power(n).unwrap()),
                BigUint::from(5u32).pow(n)
            );
        }
    }

    #[test]
    fn faithful_counts() {
        let f = |src: &str| faithful_count(&faithful_raw(&parse_expr(src).unwrap()).unwrap());
        assert_eq!(f("D8 * D8"), 1u32.into());
        assert_eq!(f("D8 * Q8"), 1u32.into());
        assert_eq!(f("SD16 ^* 2"), 2u32.into());
        assert_eq!(f("E2,2"), 0u32.into());
    }

    #[test]
    fn dade_torsion_values() {
        // any product of C₂s and dihedral groups is torsion free
        for src in ["D8", "D16 x D32", "C2 x D8 x D16"] {
            let ev = dade_torsion(&raw(src));
            assert!(ev.is_total(), "{src}");
            assert!(ev.known().is_zero(), "{src}");
        }
        // semidihedral central powers
        for (m, n, expect) in [(4u32, 1u32, 1u64), (4, 2, 2), (5, 2, 4), (4, 3, 4)] {
            let src = format!("SD{} ^* {}", 1u64 << m, n);
            let ev = dade_torsion(&raw(&src));
            assert!(ev.is_total(), "{src}");
            assert_eq!(
                ev.known().torsion,
                BTreeMap::from([(2, BigUint::from(2u32).pow((n - 1) * (m - 3)))]),
                "{src} expected (Z/2)^{expect}"
            );
        }
        // quaternion edges are outside the table
        match dade_torsion(&raw("Q8")) {
            Evaluation::Partial { known, unknown } => {
                assert!(known.is_zero());
                assert_eq!(
                    unknown.multiplicity(&RoquetteType::Quaternion { n: 3 }),
                    1u32.into()
                );
            }
            other => panic!("expected a partial result, got {other:?}"),
        }
        // larger cyclic edges carry one Z/2 each
        let ev = dade_torsion(&raw("C8"));
        assert_eq!(ev.known().torsion[&2], 2u32.into());
    }

    #[test]
    fn burnside_unit_ranks() {
        assert_eq!(
            burnside_units_rank(&raw("D8")).unwrap(),
            RankResult::Exact(5u32.into())
        );
        assert_eq!(
            burnside_units_rank(&raw("D16")).unwrap(),
            RankResult::Exact(6u32.into())
        );
        assert_eq!(
            burnside_units_rank(&raw("D8 x D8")).unwrap(),
            RankResult::Exact(25u32.into())
        );
        assert!(matches!(
            burnside_units_rank(&raw("Q8")).unwrap(),
            RankResult::Partial { .. }
        ));
        assert!(matches!(
            burnside_units_rank(&raw("SD16")).unwrap(),
            RankResult::Partial { .. }
        ));
        assert!(burnside_units_rank(&raw("C27")).is_err());
    }

    #[test]
    fn center_signatures() {
        let sig = center_signature(&raw("X+3")).unwrap();
        assert_eq!(sig[&BigUint::one()], 1u32.into());
        assert_eq!(sig[&BigUint::from(2u32)], 5u32.into());

        let sig = center_signature(&raw("C9")).unwrap();
        let degrees: Vec<u32> = sig.keys().map(|d| d.try_into().unwrap()).collect();
        assert_eq!(degrees, vec![1, 2, 6]);

        let sig = center_signature(&raw("1")).unwrap();
        assert_eq!(sig.len(), 1);
        assert!(center_signature(&raw("C8")).is_err());
    }

    #[test]
    fn evaluators_are_additive_over_direct_sum() {
        let a = raw("SD16");
        let b = raw("C8 x C2");
        let joined = a.direct_sum_raw(&b).unwrap();
        let (da, db, dj) = (dade_torsion(&a), dade_torsion(&b), dade_torsion(&joined));
        let mut sum = da.known().clone();
        sum.accumulate(db.known(), &BigUint::one());
        assert_eq!(dj.known(), &sum);
    }

    #[test]
    fn registration_and_collapse_invariance() {
        let mut t = FunctorTable::dade_torsion_2();
        assert!(t.value(&RoquetteType::Quaternion { n: 3 }).is_none());
        t.register("Q:2^3", 0, &[2]).unwrap();
        assert_eq!(
            t.value(&RoquetteType::Quaternion { n: 3 }),
            Some(&AbelianSignature::torsion_of(2, BigUint::one()))
        );
        // breaking collapse invariance is rejected
        let mut t2 = FunctorTable::burnside_units_2();
        assert!(t2.register("C:2^1", 5, &[]).is_err());
    }

    #[test]
    fn signature_display() {
        assert_eq!(AbelianSignature::zero().to_string(), "0");
        assert_eq!(
            AbelianSignature::torsion_of(2, BigUint::from(4u32)).to_string(),
            "(Z/2)^4"
        );
        let mut s = AbelianSignature::torsion_of(2, BigUint::one());
        s.free_rank = BigUint::from(3u32);
        assert_eq!(s.to_string(), "Z^3 x Z/2");
    }
}
