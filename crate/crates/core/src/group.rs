//! Concrete finite p-groups as explicit multiplication tables.
//!
//! Element 0 is always the identity. Everything downstream (subgroup
//! lattices, genetic bases) works over these tables, so construction
//! validates the group axioms: exhaustively up to order 512, by
//! deterministic sampling above that.

use std::fmt;
use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::par;

/// Default cap on concrete group orders. Override per call for larger
/// experiments; the acceptance sweeps raise it to 1024 for the diamond
/// table.
pub const DEFAULT_MAX_ORDER: u64 = 512;

/// Built-in group families. Size parameters follow the exponent-of-2
/// convention for the 2-group families: `Dihedral { n: 4 }` has order 16.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Cyclic of order `p^n` (n = 0 gives the trivial group).
    Cyclic { p: u64, n: u32 },
    /// Dihedral of order `2^n`, n ≥ 3.
    Dihedral { n: u32 },
    /// Generalized quaternion of order `2^n`, n ≥ 3.
    Quaternion { n: u32 },
    /// Semidihedral of order `2^n`, n ≥ 4.
    Semidihedral { n: u32 },
    /// Elementary abelian of order `p^rank`.
    ElementaryAbelian { p: u64, rank: u32 },
    /// Extraspecial of order `p^3`. For odd p, `plus` selects exponent p
    /// (`true`) or p² (`false`); for p = 2 it selects D₈ or Q₈.
    Extraspecial { p: u64, plus: bool },
}

/// How a group was built, kept for diagnostics and consistency checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Family(Family),
    DirectProduct,
    CentralProduct,
    Quotient,
    SubgroupOf,
}

struct GroupData {
    order: usize,
    prime: u64,
    mul: Vec<u16>,
    inv: Vec<u16>,
    elem_order: Vec<u32>,
    exponent: u64,
    center: BitSet,
    abelian: bool,
    labels: Option<Vec<String>>,
    tag: Option<Provenance>,
}

/// A finite p-group backed by an explicit multiplication table.
///
/// Cheap to clone (shared immutable data) and safe to use from many
/// threads at once.
#[derive(Clone)]
pub struct FiniteGroup(Arc<GroupData>);

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_power_exponent(order: u64, p: u64) -> Option<u32> {
    let mut n = order;
    let mut k = 0;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    (n == 1).then_some(k)
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a
    }
    if a == 0 || b == 0 {
        return a.max(b);
    }
    a / gcd(a, b) * b
}

impl FiniteGroup {
    /// Builds a group from a raw multiplication table and checks the
    /// axioms. `mul[a * order + b]` is the product `a·b`; index 0 must be
    /// the identity.
    pub fn from_mul_table(
        prime: u64,
        mul: Vec<u16>,
        labels: Option<Vec<String>>,
        tag: Option<Provenance>,
        max_order: u64,
    ) -> Result<FiniteGroup> {
        let g = Self::assemble(prime, mul, labels, tag, max_order)?;
        g.check_axioms()?;
        Ok(g)
    }

    /// Assembles derived data without running the axiom checks. Used by
    /// the structured constructors (families, products, quotients) whose
    /// tables are groups by construction.
    pub(crate) fn from_parts_unchecked(
        prime: u64,
        mul: Vec<u16>,
        labels: Option<Vec<String>>,
        tag: Option<Provenance>,
        max_order: u64,
    ) -> Result<FiniteGroup> {
        Self::assemble(prime, mul, labels, tag, max_order)
    }

    fn assemble(
        prime: u64,
        mul: Vec<u16>,
        labels: Option<Vec<String>>,
        tag: Option<Provenance>,
        max_order: u64,
    ) -> Result<FiniteGroup> {
        let order_sq = mul.len();
        let order = (order_sq as f64).sqrt().round() as usize;
        if order * order != order_sq || order == 0 {
            return Err(Error::InvalidParameter(
                "multiplication table is not square".into(),
            ));
        }
        if order as u64 > max_order {
            return Err(Error::GroupTooLarge {
                order: order as u128,
                bound: max_order,
            });
        }
        if !is_prime(prime) {
            return Err(Error::InvalidParameter(format!("{prime} is not prime")));
        }
        if prime_power_exponent(order as u64, prime).is_none() {
            return Err(Error::InvalidParameter(format!(
                "order {order} is not a power of {prime}"
            )));
        }
        if mul.iter().any(|&x| x as usize >= order) {
            return Err(Error::InvalidParameter(
                "table entry out of range".into(),
            ));
        }

        let at = |a: usize, b: usize| mul[a * order + b] as usize;

        let mut inv = vec![0u16; order];
        for a in 0..order {
            let b = (0..order)
                .find(|&b| at(a, b) == 0)
                .ok_or_else(|| Error::InvalidParameter(format!("element {a} has no inverse")))?;
            if at(b, a) != 0 {
                return Err(Error::InvalidParameter(format!(
                    "element {a} has no two-sided inverse"
                )));
            }
            inv[a] = b as u16;
        }

        let mut elem_order = vec![0u32; order];
        for a in 0..order {
            let mut x = a;
            let mut k = 1u32;
            while x != 0 {
                x = at(x, a);
                k += 1;
                if k as usize > order + 1 {
                    return Err(Error::InvalidParameter(format!(
                        "element {a} does not generate a finite cycle"
                    )));
                }
            }
            elem_order[a] = k;
        }
        let exponent = elem_order.iter().fold(1u64, |e, &o| lcm_u64(e, o as u64));

        let mut center = BitSet::new(order);
        let mut abelian = true;
        for a in 0..order {
            let mut central = true;
            for b in 0..order {
                if at(a, b) != at(b, a) {
                    central = false;
                    abelian = false;
                    break;
                }
            }
            if central {
                center.insert(a);
            }
        }

        Ok(FiniteGroup(Arc::new(GroupData {
            order,
            prime,
            mul,
            inv,
            elem_order,
            exponent,
            center,
            abelian,
            labels,
            tag,
        })))
    }

    /// Verifies identity, associativity, inverses and Lagrange on element
    /// orders. Associativity is exhaustive up to order 512 and checked on
    /// a deterministic sample of triples above that.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.order();
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(Error::InvalidParameter(format!(
                    "index 0 is not an identity at {x}"
                )));
            }
            if self.mul(x, self.inv(x)) != 0 || self.mul(self.inv(x), x) != 0 {
                return Err(Error::InvalidParameter(format!("bad inverse at {x}")));
            }
            if n as u64 % self.elem_order(x) as u64 != 0 {
                return Err(Error::InvalidParameter(format!(
                    "element order at {x} does not divide group order"
                )));
            }
        }
        let assoc = if n <= 512 {
            par::par_range_all(n, |a| {
                (0..n).all(|b| {
                    let ab = self.mul(a, b);
                    (0..n).all(|c| self.mul(ab, c) == self.mul(a, self.mul(b, c)))
                })
            })
        } else {
            let mut state = 0x2545f4914f6cdd1du64;
            let mut next = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state
            };
            (0..200_000).all(|_| {
                let a = next() as usize % n;
                let b = next() as usize % n;
                let c = next() as usize % n;
                self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
            })
        };
        if !assoc {
            return Err(Error::InvalidParameter("table is not associative".into()));
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn prime(&self) -> u64 {
        self.0.prime
    }

    pub fn is_trivial(&self) -> bool {
        self.0.order == 1
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.mul[a * self.0.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.0.inv[a] as usize
    }

    /// Conjugate `x^g = g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn elem_order(&self, a: usize) -> u32 {
        self.0.elem_order[a]
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> u64 {
        self.0.exponent
    }

    pub fn is_abelian(&self) -> bool {
        self.0.abelian
    }

    pub fn center_set(&self) -> &BitSet {
        &self.0.center
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.0.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.0.labels {
            Some(l) => l[x].clone(),
            None => format!("#{x}"),
        }
    }

    pub fn tag(&self) -> Option<&Provenance> {
        self.0.tag.as_ref()
    }

    /// Identity of the backing data; used to detect parent mismatches.
    pub fn same_group(&self, other: &FiniteGroup) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn power(&self, x: usize, k: u64) -> usize {
        let mut acc = 0;
        let mut base = x;
        let mut k = k % (self.elem_order(x) as u64);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// The cyclic subgroup generated by `x`, as a member set.
    pub fn cyclic_set(&self, x: usize) -> BitSet {
        let mut bits = BitSet::new(self.order());
        let mut y = 0;
        loop {
            bits.insert(y);
            y = self.mul(y, x);
            if y == 0 {
                break;
            }
        }
        bits
    }

    /// Closure of a seed set under multiplication (and hence inversion,
    /// since the group is finite).
    pub fn closure(&self, seed: &[usize]) -> BitSet {
        let mut bits = BitSet::new(self.order());
        bits.insert(0);
        let mut elems = vec![0usize];
        let mut queue: Vec<usize> = Vec::new();
        for &s in seed {
            if !bits.contains(s) {
                bits.insert(s);
                elems.push(s);
                queue.push(s);
            }
        }
        while let Some(x) = queue.pop() {
            for i in 0..elems.len() {
                let e = elems[i];
                for &prod in &[self.mul(x, e), self.mul(e, x)] {
                    if !bits.contains(prod) {
                        bits.insert(prod);
                        elems.push(prod);
                        queue.push(prod);
                    }
                }
            }
        }
        bits
    }

    /// `{x^g | x ∈ set}`.
    pub fn conjugate_set(&self, set: &BitSet, g: usize) -> BitSet {
        let mut out = BitSet::new(self.order());
        for x in set.iter() {
            out.insert(self.conj(x, g));
        }
        out
    }

    /// Element-wise product `{a·b | a ∈ left, b ∈ right}`.
    pub fn product_set(&self, left: &BitSet, right: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.order());
        for a in left.iter() {
            for b in right.iter() {
                out.insert(self.mul(a, b));
            }
        }
        out
    }

    pub fn conjugacy_class_count(&self) -> usize {
        let n = self.order();
        let mut seen = BitSet::new(n);
        let mut classes = 0;
        for x in 0..n {
            if seen.contains(x) {
                continue;
            }
            classes += 1;
            for g in 0..n {
                seen.insert(self.conj(x, g));
            }
        }
        classes
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteGroup(order={}, p={}, tag={:?})",
            self.order(),
            self.prime(),
            self.tag()
        )
    }
}

/// Builds one of the built-in families.
pub fn make_family(family: Family, max_order: u64) -> Result<FiniteGroup> {
    let check_order = |order: u128| -> Result<usize> {
        if order > max_order as u128 {
            return Err(Error::GroupTooLarge {
                order,
                bound: max_order,
            });
        }
        Ok(order as usize)
    };
    match family {
        Family::Cyclic { p, n } => {
            if !is_prime(p) {
                return Err(Error::InvalidParameter(format!("{p} is not prime")));
            }
            let order = check_order((p as u128).pow(n))?;
            let mul = table(order, |a, b| (a + b) % order);
            let labels = (0..order).map(|a| format!("x^{a}")).collect();
            FiniteGroup::from_parts_unchecked(
                p,
                mul,
                Some(labels),
                Some(Provenance::Family(family)),
                max_order,
            )
        }
        Family::Dihedral { n } => {
            if n < 3 {
                return Err(Error::InvalidParameter(
                    "dihedral groups here start at order 8".into(),
                ));
            }
            let order = check_order(1u128 << n)?;
            let h = order / 2;
            // index = a + b·h encodes x^a y^b with y x y⁻¹ = x⁻¹
            let mul = table(order, |u, v| {
                let (a, b) = (u % h, u / h);
                let (c, d) = (v % h, v / h);
                let c = if b == 1 { (h - c) % h } else { c };
                (a + c) % h + ((b + d) % 2) * h
            });
            FiniteGroup::from_parts_unchecked(
                2,
                mul,
                Some(two_gen_labels(h)),
                Some(Provenance::Family(family)),
                max_order,
            )
        }
        Family::Quaternion { n } => {
            if n < 3 {
                return Err(Error::InvalidParameter(
                    "generalized quaternion groups start at order 8".into(),
                ));
            }
            let order = check_order(1u128 << n)?;
            let h = order / 2;
            // x^a y^b with y x y⁻¹ = x⁻¹ and y² = x^{h/2}
            let mul = table(order, |u, v| {
                let (a, b) = (u % h, u / h);
                let (c, d) = (v % h, v / h);
                let c = if b == 1 { (h - c) % h } else { c };
                let twist = if b == 1 && d == 1 { h / 2 } else { 0 };
                (a + c + twist) % h + ((b + d) % 2) * h
            });
            FiniteGroup::from_parts_unchecked(
                2,
                mul,
                Some(two_gen_labels(h)),
                Some(Provenance::Family(family)),
                max_order,
            )
        }
        Family::Semidihedral { n } => {
            if n < 4 {
                return Err(Error::InvalidParameter(
                    "semidihedral groups start at order 16".into(),
                ));
            }
            let order = check_order(1u128 << n)?;
            let h = order / 2;
            let t = h / 2 - 1; // y x y⁻¹ = x^t
            let mul = table(order, |u, v| {
                let (a, b) = (u % h, u / h);
                let (c, d) = (v % h, v / h);
                let c = if b == 1 { c * t % h } else { c };
                (a + c) % h + ((b + d) % 2) * h
            });
            FiniteGroup::from_parts_unchecked(
                2,
                mul,
                Some(two_gen_labels(h)),
                Some(Provenance::Family(family)),
                max_order,
            )
        }
        Family::ElementaryAbelian { p, rank } => {
            if !is_prime(p) {
                return Err(Error::InvalidParameter(format!("{p} is not prime")));
            }
            let order = check_order((p as u128).pow(rank))?;
            let pu = p as usize;
            let mul = table(order, |a, b| {
                let mut out = 0;
                let mut place = 1;
                let (mut a, mut b) = (a, b);
                for _ in 0..rank {
                    out += (a % pu + b % pu) % pu * place;
                    a /= pu;
                    b /= pu;
                    place *= pu;
                }
                out
            });
            FiniteGroup::from_parts_unchecked(
                p,
                mul,
                None,
                Some(Provenance::Family(family)),
                max_order,
            )
        }
        Family::Extraspecial { p, plus } => {
            if !is_prime(p) {
                return Err(Error::InvalidParameter(format!("{p} is not prime")));
            }
            if p == 2 {
                let base = if plus {
                    make_family(Family::Dihedral { n: 3 }, max_order)?
                } else {
                    make_family(Family::Quaternion { n: 3 }, max_order)?
                };
                return FiniteGroup::from_parts_unchecked(
                    2,
                    base.0.mul.clone(),
                    base.0.labels.clone(),
                    Some(Provenance::Family(family)),
                    max_order,
                );
            }
            let order = check_order((p as u128).pow(3))?;
            let pu = p as usize;
            let mul = if plus {
                // Heisenberg group: exponent p for odd p.
                table(order, |u, v| {
                    let (a, b, c) = (u / (pu * pu), u / pu % pu, u % pu);
                    let (a2, b2, c2) = (v / (pu * pu), v / pu % pu, v % pu);
                    ((a + a2) % pu) * pu * pu + ((b + b2) % pu) * pu + (c + c2 + a * b2) % pu
                })
            } else {
                // x of order p², y of order p acting by x ↦ x^{1+p}.
                let h = pu * pu;
                table(order, |u, v| {
                    let (a, b) = (u / pu, u % pu);
                    let (c, d) = (v / pu, v % pu);
                    let mut scale = 1;
                    for _ in 0..b {
                        scale = scale * (1 + pu) % h;
                    }
                    (a + c * scale) % h * pu + (b + d) % pu
                })
            };
            FiniteGroup::from_parts_unchecked(
                p,
                mul,
                None,
                Some(Provenance::Family(family)),
                max_order,
            )
        }
    }
}

fn table(order: usize, f: impl Fn(usize, usize) -> usize) -> Vec<u16> {
    let mut mul = vec![0u16; order * order];
    for a in 0..order {
        for b in 0..order {
            mul[a * order + b] = f(a, b) as u16;
        }
    }
    mul
}

fn two_gen_labels(h: usize) -> Vec<String> {
    (0..2 * h)
        .map(|u| {
            let (a, b) = (u % h, u / h);
            match (a, b) {
                (0, 0) => "1".into(),
                (a, 0) => format!("x^{a}"),
                (0, 1) => "y".into(),
                (a, 1) => format!("x^{a}y"),
                _ => unreachable!(),
            }
        })
        .collect()
}

/// Direct product with the row-major element encoding
/// `(a, b) ↦ a·|h| + b`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup, max_order: u64) -> Result<FiniteGroup> {
    if !g.is_trivial() && !h.is_trivial() && g.prime() != h.prime() {
        return Err(Error::PrimeMismatch {
            left: g.prime(),
            right: h.prime(),
        });
    }
    let order = g.order() as u128 * h.order() as u128;
    if order > max_order as u128 {
        return Err(Error::GroupTooLarge {
            order,
            bound: max_order,
        });
    }
    let (no, ho) = (order as usize, h.order());
    let mut mul = vec![0u16; no * no];
    for a1 in 0..g.order() {
        for b1 in 0..ho {
            let u = a1 * ho + b1;
            for a2 in 0..g.order() {
                for b2 in 0..ho {
                    let v = a2 * ho + b2;
                    mul[u * no + v] = (g.mul(a1, a2) * ho + h.mul(b1, b2)) as u16;
                }
            }
        }
    }
    let prime = if g.is_trivial() { h.prime() } else { g.prime() };
    FiniteGroup::from_parts_unchecked(prime, mul, None, Some(Provenance::DirectProduct), max_order)
}

/// Index of `(a, b)` inside `direct_product(g, h, ..)`.
pub fn product_index(a: usize, b: usize, h_order: usize) -> usize {
    a * h_order + b
}
