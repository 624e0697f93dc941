//! Formal sums of edges of Roquette p-groups and their tensor algebra.
//!
//! An `EdgeSum` is a finite multiset of Roquette types with
//! arbitrary-precision multiplicities. Two presentation layers coexist:
//! the raw layer keeps ∂C₂ terms exactly as decompositions produce them,
//! the canonical layer merges ∂C₂ into the unit (for p = 2, ∂C₂ ≅ 1).
//! All equality-in-the-category questions are decided on canonical forms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roquette::RoquetteType;

#[derive(Debug, Clone, Eq)]
pub struct EdgeSum {
    prime: u64,
    terms: BTreeMap<RoquetteType, BigUint>,
    canonical: bool,
}

/// Equality compares prime and term multiset; the canonical flag is
/// presentation state, not content.
impl PartialEq for EdgeSum {
    fn eq(&self, other: &Self) -> bool {
        self.prime == other.prime && self.terms == other.terms
    }
}

/// One serialized term: a type tag and a decimal multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    #[serde(rename = "type")]
    pub type_tag: String,
    pub mult: String,
}

/// Wire form of an `EdgeSum`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSumRepr {
    pub prime: u64,
    pub terms: Vec<EdgeRecord>,
}

impl EdgeSum {
    pub fn empty(prime: u64) -> EdgeSum {
        EdgeSum {
            prime,
            terms: BTreeMap::new(),
            canonical: true,
        }
    }

    /// The unit object: one copy of the trivial edge.
    pub fn unit(prime: u64) -> EdgeSum {
        let mut terms = BTreeMap::new();
        terms.insert(RoquetteType::Trivial, BigUint::one());
        EdgeSum {
            prime,
            terms,
            canonical: true,
        }
    }

    pub fn single(prime: u64, ty: RoquetteType, mult: u64) -> Result<EdgeSum> {
        let mut s = EdgeSum::empty(prime);
        s.add(ty, &BigUint::from(mult))?;
        Ok(s)
    }

    pub fn from_terms<I>(prime: u64, terms: I) -> Result<EdgeSum>
    where
        I: IntoIterator<Item = (RoquetteType, BigUint)>,
    {
        let mut s = EdgeSum::empty(prime);
        for (ty, m) in terms {
            s.add(ty, &m)?;
        }
        Ok(s)
    }

    /// Adds `mult` copies of an edge, checking prime compatibility.
    pub fn add(&mut self, ty: RoquetteType, mult: &BigUint) -> Result<()> {
        if let Some(p) = ty.prime() {
            if p != self.prime {
                return Err(Error::PrimeMismatch {
                    left: self.prime,
                    right: p,
                });
            }
        }
        if mult.is_zero() {
            return Ok(());
        }
        self.canonical = false;
        *self.terms.entry(ty).or_default() += mult;
        Ok(())
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn terms(&self) -> &BTreeMap<RoquetteType, BigUint> {
        &self.terms
    }

    pub fn multiplicity(&self, ty: &RoquetteType) -> BigUint {
        self.terms.get(ty).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether the p = 2 collapse has been applied to this value.
    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn total_multiplicity(&self) -> BigUint {
        self.terms.values().sum()
    }

    /// Merges ∂C₂ into the unit when p = 2; identity otherwise. The
    /// result is flagged canonical either way.
    pub fn canonical_form(&self) -> EdgeSum {
        let mut out = self.clone();
        if self.prime == 2 {
            let c2 = RoquetteType::Cyclic { p: 2, n: 1 };
            if let Some(m) = out.terms.remove(&c2) {
                *out.terms.entry(RoquetteType::Trivial).or_default() += m;
            }
        }
        out.canonical = true;
        out
    }

    /// Isomorphism in the category: equality of canonical forms.
    pub fn iso_equal(&self, other: &EdgeSum) -> Result<bool> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch {
                left: self.prime,
                right: other.prime,
            });
        }
        Ok(self.canonical_form().terms == other.canonical_form().terms)
    }

    fn check_prime(&self, other: &EdgeSum) -> Result<()> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch {
                left: self.prime,
                right: other.prime,
            });
        }
        Ok(())
    }

    /// Raw direct sum: term-wise addition with no collapse.
    pub fn direct_sum_raw(&self, other: &EdgeSum) -> Result<EdgeSum> {
        self.check_prime(other)?;
        let mut out = self.clone();
        out.canonical = false;
        for (ty, m) in &other.terms {
            *out.terms.entry(*ty).or_default() += m;
        }
        Ok(out)
    }

    pub fn direct_sum(&self, other: &EdgeSum) -> Result<EdgeSum> {
        Ok(self.direct_sum_raw(other)?.canonical_form())
    }

    /// Raw bilinear tensor product over the edge multiplication table.
    pub fn tensor_raw(&self, other: &EdgeSum) -> Result<EdgeSum> {
        self.check_prime(other)?;
        let mut out = EdgeSum::empty(self.prime);
        out.canonical = false;
        for (ta, ma) in &self.terms {
            for (tb, mb) in &other.terms {
                let d = diamond(*ta, *tb)?;
                let nu = diamond_multiplicity(*ta, *tb)?;
                *out.terms.entry(d).or_default() += ma * mb * nu;
            }
        }
        Ok(out)
    }

    pub fn tensor(&self, other: &EdgeSum) -> Result<EdgeSum> {
        Ok(self.tensor_raw(other)?.canonical_form())
    }

    /// Raw n-fold tensor power; the 0-th power is the unit.
    pub fn power_raw(&self, n: u32) -> Result<EdgeSum> {
        let mut acc = EdgeSum::unit(self.prime);
        for _ in 0..n {
            acc = acc.tensor_raw(self)?;
        }
        Ok(acc)
    }

    pub fn power(&self, n: u32) -> Result<EdgeSum> {
        Ok(self.power_raw(n)?.canonical_form())
    }

    pub fn scale(&self, k: &BigUint) -> EdgeSum {
        if k.is_zero() {
            return EdgeSum {
                prime: self.prime,
                terms: BTreeMap::new(),
                canonical: self.canonical,
            };
        }
        let mut out = self.clone();
        for m in out.terms.values_mut() {
            *m *= k;
        }
        out
    }

    /// Exact term-wise subtraction; fails if `other` is not a sub-multiset.
    pub fn sub_exact(&self, other: &EdgeSum) -> Result<EdgeSum> {
        self.check_prime(other)?;
        let mut out = self.clone();
        for (ty, m) in &other.terms {
            let cur = out
                .terms
                .get_mut(ty)
                .ok_or_else(|| Error::InvalidParameter(format!("cannot subtract {ty}: absent")))?;
            if &*cur < m {
                return Err(Error::InvalidParameter(format!(
                    "cannot subtract {ty}: multiplicity underflow"
                )));
            }
            *cur -= m;
            if cur.is_zero() {
                out.terms.remove(ty);
            }
        }
        Ok(out)
    }

    /// Exact division of every multiplicity by `k`.
    pub fn div_exact(&self, k: u64) -> Result<EdgeSum> {
        let k = BigUint::from(k);
        let mut out = self.clone();
        for m in out.terms.values_mut() {
            if (&*m % &k) != BigUint::zero() {
                return Err(Error::AmbiguousGluing(format!(
                    "multiplicity {m} is not divisible by {k}"
                )));
            }
            *m /= &k;
        }
        Ok(out)
    }

    pub fn to_repr(&self) -> EdgeSumRepr {
        EdgeSumRepr {
            prime: self.prime,
            terms: self
                .terms
                .iter()
                .map(|(ty, m)| EdgeRecord {
                    type_tag: ty.tag(),
                    mult: m.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_repr(repr: &EdgeSumRepr) -> Result<EdgeSum> {
        let mut out = EdgeSum::empty(repr.prime);
        for rec in &repr.terms {
            let ty = RoquetteType::from_tag(&rec.type_tag)?;
            let m: BigUint = rec
                .mult
                .parse()
                .map_err(|_| Error::BadTag(rec.mult.clone()))?;
            out.add(ty, &m)?;
        }
        if repr.prime != 2 || !out.terms.contains_key(&RoquetteType::Cyclic { p: 2, n: 1 }) {
            out.canonical = true;
        }
        Ok(out)
    }
}

impl fmt::Display for EdgeSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (ty, m) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let name = if ty.is_trivial() {
                "1".to_string()
            } else {
                format!("∂{ty}")
            };
            if m.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{m}·{name}")?;
            }
        }
        Ok(())
    }
}

fn compatible_prime(a: RoquetteType, b: RoquetteType) -> Result<()> {
    if let (Some(p), Some(q)) = (a.prime(), b.prime()) {
        if p != q {
            return Err(Error::PrimeMismatch { left: p, right: q });
        }
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Dih,
    Quat,
    Semi,
}

fn nonabelian_kind(t: RoquetteType) -> Option<(Kind, u32)> {
    match t {
        RoquetteType::Dihedral { n } => Some((Kind::Dih, n)),
        RoquetteType::Quaternion { n } => Some((Kind::Quat, n)),
        RoquetteType::Semidihedral { n } => Some((Kind::Semi, n)),
        _ => None,
    }
}

/// The diamond product of two Roquette types: the common type of
/// N(L)/L over the centrally diagonal genetic subgroups L of the direct
/// product. Symmetric in its arguments.
pub fn diamond(a: RoquetteType, b: RoquetteType) -> Result<RoquetteType> {
    use RoquetteType::*;
    compatible_prime(a, b)?;
    if a.is_trivial() {
        return Ok(b);
    }
    if b.is_trivial() {
        return Ok(a);
    }
    // An order-p factor absorbs into the other side.
    if matches!(a, Cyclic { n: 1, .. }) {
        return Ok(b);
    }
    if matches!(b, Cyclic { n: 1, .. }) {
        return Ok(a);
    }
    if a.is_q8() && b.is_q8() {
        return Ok(Cyclic { p: 2, n: 1 });
    }
    match (nonabelian_kind(a), nonabelian_kind(b)) {
        // At least one factor cyclic of order ≥ p²: the result is cyclic
        // of the larger exponent.
        (None, _) | (_, None) => {
            let p = a.prime().expect("non-trivial");
            let (ea, eb) = (exponent_index(a), exponent_index(b));
            Ok(Cyclic { p, n: ea.max(eb) })
        }
        (Some((ka, na)), Some((kb, nb))) => {
            let n = na.max(nb);
            Ok(match (ka, kb) {
                (Kind::Dih, Kind::Dih) | (Kind::Quat, Kind::Quat) => Dihedral { n },
                (Kind::Dih, Kind::Quat) | (Kind::Quat, Kind::Dih) => Quaternion { n },
                (Kind::Semi, Kind::Semi) => {
                    if na == nb {
                        Semidihedral { n }
                    } else {
                        Cyclic { p: 2, n: n - 1 }
                    }
                }
                (Kind::Semi, Kind::Dih | Kind::Quat) => {
                    if na > nb {
                        Semidihedral { n: na }
                    } else {
                        Cyclic { p: 2, n: n - 1 }
                    }
                }
                (Kind::Dih | Kind::Quat, Kind::Semi) => {
                    if nb > na {
                        Semidihedral { n: nb }
                    } else {
                        Cyclic { p: 2, n: n - 1 }
                    }
                }
            })
        }
    }
}

/// Exponent of p in the exponent of the group of this type.
fn exponent_index(t: RoquetteType) -> u32 {
    match t {
        RoquetteType::Trivial => 0,
        RoquetteType::Cyclic { n, .. } => n,
        RoquetteType::Dihedral { n }
        | RoquetteType::Quaternion { n }
        | RoquetteType::Semidihedral { n } => n - 1,
    }
}

pub(crate) fn euler_phi_prime_power(p: u64, k: u32) -> BigUint {
    if k == 0 {
        BigUint::one()
    } else {
        BigUint::from(p).pow(k - 1) * BigUint::from(p - 1)
    }
}

/// Number of equivalence classes of centrally diagonal genetic subgroups
/// of the product: the multiplicity ν in ∂P × ∂Q ≅ ν·∂(P⋄Q). Equal to
/// φ(m)·m·|P⋄Q| / (|P|·|Q|) with m = min(e_P, e_Q), except that a
/// trivial or Q₈ factor forces ν = 1.
pub fn diamond_multiplicity(a: RoquetteType, b: RoquetteType) -> Result<BigUint> {
    compatible_prime(a, b)?;
    if a.is_trivial() || b.is_trivial() || a.is_q8() || b.is_q8() {
        return Ok(BigUint::one());
    }
    let p = a.prime().expect("non-trivial");
    let k = exponent_index(a).min(exponent_index(b));
    let m = BigUint::from(p).pow(k);
    let num = euler_phi_prime_power(p, k) * m * diamond(a, b)?.order();
    let den = a.order() * b.order();
    let (q, r) = (&num / &den, &num % &den);
    if !r.is_zero() {
        return Err(Error::InvalidParameter(format!(
            "multiplicity formula did not divide for {a} and {b}"
        )));
    }
    Ok(q)
}

/// ∂a × ∂b as a canonical edge sum: ν copies of the diamond type.
pub fn edge_tensor(a: RoquetteType, b: RoquetteType) -> Result<EdgeSum> {
    let prime = a.prime().or(b.prime()).unwrap_or(2);
    let mut out = EdgeSum::empty(prime);
    out.add(diamond(a, b)?, &diamond_multiplicity(a, b)?)?;
    Ok(out.canonical_form())
}

/// Closed form for the n-th direct power of the dihedral group of order
/// 2^m: the unit, (5^n − 1) copies of ∂C₂, and for 4 ≤ l ≤ m the edge
/// ∂D_{2^l} with multiplicity ((3+2^{l−2})^n − (3+2^{l−3})^n) / 2^{l−3}.
/// Returns the raw sum together with its canonical form.
pub fn dihedral_power_closed_form(m: u32, n: u32) -> Result<(EdgeSum, EdgeSum)> {
    if m < 3 {
        return Err(Error::InvalidParameter(
            "dihedral groups here start at order 8".into(),
        ));
    }
    let mut raw = EdgeSum::empty(2);
    raw.add(RoquetteType::Trivial, &BigUint::one())?;
    let five_n = BigUint::from(5u32).pow(n);
    raw.add(
        RoquetteType::Cyclic { p: 2, n: 1 },
        &(five_n - BigUint::one()),
    )?;
    for l in 4..=m {
        let big = BigUint::from(3u32) + BigUint::from(2u32).pow(l - 2);
        let small = BigUint::from(3u32) + BigUint::from(2u32).pow(l - 3);
        let num = big.pow(n) - small.pow(n);
        let den = BigUint::from(2u32).pow(l - 3);
        debug_assert!((&num % &den).is_zero());
        raw.add(RoquetteType::Dihedral { n: l }, &(num / den))?;
    }
    let canonical = raw.canonical_form();
    Ok((raw, canonical))
}
