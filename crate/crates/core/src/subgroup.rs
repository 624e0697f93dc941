//! Subgroups, the full subgroup lattice, quotients and central products.
//!
//! A subgroup is a canonical bitset of element indices tied to its parent
//! group. Lattice enumeration walks level by level: every subgroup of
//! order p^{k+1} in a p-group contains a normal subgroup of index p, so
//! extending each known subgroup H by elements x ∈ N(H) \ H with x^p ∈ H
//! reaches everything. The output ordering is (size, member set), which
//! downstream code relies on for reproducible representative choices.

use std::collections::HashSet;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{direct_product, FiniteGroup, Provenance};
use crate::par;

#[derive(Clone)]
pub struct Subgroup {
    parent: FiniteGroup,
    members: BitSet,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}
impl Eq for Subgroup {}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    /// Canonical subgroup order: size first, then member set.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members
            .count()
            .cmp(&other.members.count())
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(order={}, {:?})", self.order(), self.members)
    }
}

impl Subgroup {
    /// Wraps a member set after checking it really is a subgroup.
    pub fn new(parent: &FiniteGroup, members: BitSet) -> Result<Subgroup> {
        if members.len() != parent.order() || !members.contains(0) {
            return Err(Error::InvalidParameter(
                "member set must contain the identity".into(),
            ));
        }
        let elems = members.members();
        for &a in &elems {
            for &b in &elems {
                if !members.contains(parent.mul(a, b)) {
                    return Err(Error::InvalidParameter(
                        "member set is not closed under multiplication".into(),
                    ));
                }
            }
        }
        Ok(Subgroup {
            parent: parent.clone(),
            members,
        })
    }

    pub(crate) fn from_set_unchecked(parent: &FiniteGroup, members: BitSet) -> Subgroup {
        debug_assert!(members.contains(0));
        Subgroup {
            parent: parent.clone(),
            members,
        }
    }

    /// The subgroup generated by the given elements.
    pub fn generated_by(parent: &FiniteGroup, elements: &[usize]) -> Subgroup {
        Subgroup {
            parent: parent.clone(),
            members: parent.closure(elements),
        }
    }

    pub fn trivial(parent: &FiniteGroup) -> Subgroup {
        Subgroup {
            parent: parent.clone(),
            members: BitSet::singleton(parent.order(), 0),
        }
    }

    pub fn full(parent: &FiniteGroup) -> Subgroup {
        let mut members = BitSet::new(parent.order());
        (0..parent.order()).for_each(|i| members.insert(i));
        Subgroup {
            parent: parent.clone(),
            members,
        }
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn set(&self) -> &BitSet {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.count()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_full(&self) -> bool {
        self.order() == self.parent.order()
    }

    fn assert_same_parent(&self, other: &Subgroup) {
        assert!(
            self.parent.same_group(&other.parent),
            "subgroups belong to different parent groups"
        );
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.assert_same_parent(other);
        self.members.is_subset_of(&other.members)
    }

    /// `S^g = g⁻¹ S g`.
    pub fn conjugate(&self, g: usize) -> Subgroup {
        Subgroup {
            parent: self.parent.clone(),
            members: self.parent.conjugate_set(&self.members, g),
        }
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        (0..g.order()).all(|x| {
            self.members
                .iter()
                .all(|m| self.members.contains(g.conj(m, x)))
        })
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.parent;
        let m = self.members.members();
        m.iter()
            .all(|&a| m.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        let g = &self.parent;
        let n = self.order() as u32;
        self.members.iter().any(|x| g.elem_order(x) == n)
    }

    pub fn normalizer(&self) -> Subgroup {
        let g = &self.parent;
        let mut bits = BitSet::new(g.order());
        let elems = self.members.members();
        for x in 0..g.order() {
            if elems.iter().all(|&m| self.members.contains(g.conj(m, x))) {
                bits.insert(x);
            }
        }
        Subgroup {
            parent: g.clone(),
            members: bits,
        }
    }

    pub fn centralizer(&self) -> Subgroup {
        let g = &self.parent;
        let mut bits = BitSet::new(g.order());
        let elems = self.members.members();
        for x in 0..g.order() {
            if elems.iter().all(|&m| g.conj(m, x) == m) {
                bits.insert(x);
            }
        }
        Subgroup {
            parent: g.clone(),
            members: bits,
        }
    }

    /// Rebuilds this subgroup as a standalone group, together with the
    /// list mapping local indices back to parent elements.
    pub fn to_group(&self) -> (FiniteGroup, Vec<usize>) {
        let g = &self.parent;
        let members = self.members.members();
        let order = members.len();
        let mut local = vec![u16::MAX; g.order()];
        for (i, &m) in members.iter().enumerate() {
            local[m] = i as u16;
        }
        let mut mul = vec![0u16; order * order];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                mul[i * order + j] = local[g.mul(a, b)];
            }
        }
        let grp = FiniteGroup::from_parts_unchecked(
            g.prime(),
            mul,
            None,
            Some(Provenance::SubgroupOf),
            order as u64,
        )
        .expect("subgroup table is valid");
        (grp, members)
    }
}

/// The center Z(G) as a subgroup.
pub fn center(g: &FiniteGroup) -> Subgroup {
    Subgroup {
        parent: g.clone(),
        members: g.center_set().clone(),
    }
}

/// All cyclic subgroups of maximal order (the axes).
pub fn axes(g: &FiniteGroup) -> Vec<Subgroup> {
    let e = g.exponent() as u32;
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut out = Vec::new();
    for x in 0..g.order() {
        if g.elem_order(x) == e {
            let bits = g.cyclic_set(x);
            if seen.insert(bits.clone()) {
                out.push(Subgroup {
                    parent: g.clone(),
                    members: bits,
                });
            }
        }
    }
    out.sort();
    out
}

/// All subgroups of axes, the trivial subgroup included.
pub fn axial_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut out = Vec::new();
    for axis in axes(g) {
        for x in axis.set().iter() {
            let bits = g.cyclic_set(x);
            if seen.insert(bits.clone()) {
                out.push(Subgroup {
                    parent: g.clone(),
                    members: bits,
                });
            }
        }
    }
    out.sort();
    out
}

/// Axial subgroups of one given order.
pub fn axial_subgroups_of_order(g: &FiniteGroup, order: usize) -> Vec<Subgroup> {
    axial_subgroups(g)
        .into_iter()
        .filter(|s| s.order() == order)
        .collect()
}

/// The complete subgroup lattice in canonical order.
pub fn all_subgroups(g: &FiniteGroup, max_order: u64) -> Result<Vec<Subgroup>> {
    if g.order() as u64 > max_order {
        return Err(Error::GroupTooLarge {
            order: g.order() as u128,
            bound: max_order,
        });
    }
    let p = g.prime() as usize;
    let trivial = BitSet::singleton(g.order(), 0);
    let mut seen: HashSet<BitSet> = HashSet::new();
    seen.insert(trivial.clone());
    let mut all = vec![trivial.clone()];
    let mut frontier = vec![trivial];
    while !frontier.is_empty() {
        let extension_lists = par::par_map(&frontier, |h| index_p_overgroups(g, h, p));
        let mut next = Vec::new();
        for list in extension_lists {
            for k in list {
                if seen.insert(k.clone()) {
                    next.push(k);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    let mut subs: Vec<Subgroup> = all
        .into_iter()
        .map(|bits| Subgroup {
            parent: g.clone(),
            members: bits,
        })
        .collect();
    subs.sort();
    Ok(subs)
}

/// Subgroups K with H ⊴ K and |K| = p|H|, found as H⟨x⟩ for x in
/// N(H) \ H with x^p ∈ H. In a p-group every overgroup of index p in
/// which H is maximal arises this way.
fn index_p_overgroups(g: &FiniteGroup, h: &BitSet, p: usize) -> Vec<BitSet> {
    let members = h.members();
    let mut out = Vec::new();
    for x in 0..g.order() {
        if h.contains(x) {
            continue;
        }
        if !members.iter().all(|&m| h.contains(g.conj(m, x))) {
            continue;
        }
        if !h.contains(g.power(x, p as u64)) {
            continue;
        }
        let mut k = h.clone();
        let mut xi = x;
        for _ in 1..p {
            for &m in &members {
                k.insert(g.mul(m, xi));
            }
            xi = g.mul(xi, x);
        }
        out.push(k);
    }
    out
}

/// Normal subgroups only.
pub fn normal_subgroups(g: &FiniteGroup, max_order: u64) -> Result<Vec<Subgroup>> {
    Ok(all_subgroups(g, max_order)?
        .into_iter()
        .filter(|s| s.is_normal())
        .collect())
}

/// Number of conjugacy classes of cyclic subgroups, the trivial one
/// included.
pub fn cyclic_subgroup_classes(g: &FiniteGroup, max_order: u64) -> Result<usize> {
    if g.order() as u64 > max_order {
        return Err(Error::GroupTooLarge {
            order: g.order() as u128,
            bound: max_order,
        });
    }
    let mut cyclics: HashSet<BitSet> = HashSet::new();
    for x in 0..g.order() {
        cyclics.insert(g.cyclic_set(x));
    }
    let list: Vec<BitSet> = cyclics.into_iter().collect();
    let reps = par::par_map(&list, |c| {
        (0..g.order())
            .map(|t| g.conjugate_set(c, t))
            .min()
            .expect("non-empty orbit")
    });
    let distinct: HashSet<BitSet> = reps.into_iter().collect();
    Ok(distinct.len())
}

/// A section (T, S): S normal in T.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    top: Subgroup,
    bottom: Subgroup,
}

impl Section {
    pub fn new(top: Subgroup, bottom: Subgroup) -> Result<Section> {
        assert!(top.parent().same_group(bottom.parent()));
        if !bottom.set().is_subset_of(top.set()) {
            return Err(Error::InvalidParameter(
                "section bottom must lie inside the top".into(),
            ));
        }
        let g = top.parent();
        for t in top.set().iter() {
            for s in bottom.set().iter() {
                if !bottom.contains(g.conj(s, t)) {
                    return Err(Error::NotNormal);
                }
            }
        }
        Ok(Section { top, bottom })
    }

    pub fn top(&self) -> &Subgroup {
        &self.top
    }

    pub fn bottom(&self) -> &Subgroup {
        &self.bottom
    }

    pub fn conjugate(&self, g: usize) -> Section {
        Section {
            top: self.top.conjugate(g),
            bottom: self.bottom.conjugate(g),
        }
    }
}

/// Result of forming T/S: the coset group, the projection from parent
/// element indices (u16::MAX outside T) and a coset representative list.
pub struct SectionQuotient {
    pub group: FiniteGroup,
    pub proj: Vec<u16>,
    pub reps: Vec<usize>,
}

impl SectionQuotient {
    pub fn project(&self, parent_elem: usize) -> Option<usize> {
        match self.proj[parent_elem] {
            u16::MAX => None,
            c => Some(c as usize),
        }
    }
}

/// Builds the quotient T/S for S normal in T.
pub fn section_quotient(top: &Subgroup, bottom: &Subgroup) -> Result<SectionQuotient> {
    assert!(top.parent().same_group(bottom.parent()));
    let g = top.parent();
    if !bottom.set().is_subset_of(top.set()) {
        return Err(Error::InvalidParameter(
            "quotient bottom must lie inside the top".into(),
        ));
    }
    for t in top.set().iter() {
        for s in bottom.set().iter() {
            if !bottom.contains(g.conj(s, t)) {
                return Err(Error::NotNormal);
            }
        }
    }
    let mut proj = vec![u16::MAX; g.order()];
    let mut reps: Vec<usize> = Vec::new();
    for t in top.set().iter() {
        if proj[t] != u16::MAX {
            continue;
        }
        let idx = reps.len() as u16;
        reps.push(t);
        for s in bottom.set().iter() {
            proj[g.mul(s, t)] = idx;
        }
    }
    let q = reps.len();
    let mut mul = vec![0u16; q * q];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            mul[i * q + j] = proj[g.mul(a, b)];
        }
    }
    let group =
        FiniteGroup::from_parts_unchecked(g.prime(), mul, None, Some(Provenance::Quotient), q as u64)?;
    Ok(SectionQuotient { group, proj, reps })
}

/// G/N with its projection map.
pub fn quotient_group(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, Vec<u16>)> {
    let sq = section_quotient(&Subgroup::full(g), n)?;
    Ok((sq.group, sq.proj))
}

/// A central gluing: order-p central subgroups on both sides plus the
/// identification between them.
#[derive(Clone, Debug)]
pub struct CentralGluing {
    pub zp: Subgroup,
    pub zq: Subgroup,
    pub phi: Vec<(usize, usize)>,
}

/// Order-p subgroups of the center.
pub fn central_order_p_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let p = g.prime() as u32;
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut out = Vec::new();
    for z in g.center_set().iter() {
        if g.elem_order(z) == p {
            let bits = g.cyclic_set(z);
            if seen.insert(bits.clone()) {
                out.push(Subgroup::from_set_unchecked(g, bits));
            }
        }
    }
    out.sort();
    out
}

/// All central products (G × H)/Δ_φ(Z_P), one per choice of order-p
/// central subgroups Z_P ≤ Z(G), Z_Q ≤ Z(H) and gluing isomorphism φ.
pub fn central_products(
    g: &FiniteGroup,
    h: &FiniteGroup,
    max_order: u64,
) -> Result<Vec<(CentralGluing, FiniteGroup)>> {
    if !g.is_trivial() && !h.is_trivial() && g.prime() != h.prime() {
        return Err(Error::PrimeMismatch {
            left: g.prime(),
            right: h.prime(),
        });
    }
    let zps = central_order_p_subgroups(g);
    let zqs = central_order_p_subgroups(h);
    if zps.is_empty() || zqs.is_empty() {
        return Err(Error::NoCentralSubgroup);
    }
    let p = g.prime();
    let result_order = g.order() as u128 * h.order() as u128 / p as u128;
    if result_order > max_order as u128 {
        return Err(Error::GroupTooLarge {
            order: result_order,
            bound: max_order,
        });
    }
    let product = direct_product(g, h, g.order() as u64 * h.order() as u64)?;
    let mut out = Vec::new();
    for zp in &zps {
        let zp_gen = zp.set().iter().find(|&x| x != 0).expect("non-trivial");
        for zq in &zqs {
            let zq_gen = zq.set().iter().find(|&x| x != 0).expect("non-trivial");
            for j in 1..p {
                let image = h.power(zq_gen, j);
                let mut phi = Vec::new();
                let mut delta = BitSet::new(product.order());
                for i in 0..p {
                    let a = g.power(zp_gen, i);
                    let b = h.power(image, i);
                    phi.push((a, b));
                    delta.insert(a * h.order() + b);
                }
                phi.sort();
                let delta_sub = Subgroup::from_set_unchecked(&product, delta);
                let (quotient, _) = quotient_group(&product, &delta_sub)?;
                out.push((
                    CentralGluing {
                        zp: zp.clone(),
                        zq: zq.clone(),
                        phi,
                    },
                    FiniteGroup::from_parts_unchecked(
                        quotient.prime(),
                        (0..quotient.order() * quotient.order())
                            .map(|k| quotient.mul(k / quotient.order(), k % quotient.order()) as u16)
                            .collect(),
                        None,
                        Some(Provenance::CentralProduct),
                        max_order,
                    )?,
                ));
            }
        }
    }
    Ok(out)
}

/// Invariant fingerprint used for quick isomorphism-type sanity checks.
/// Equal fingerprints do not prove isomorphism in general, but they
/// separate all the small groups this crate compares.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub order: usize,
    pub exponent: u64,
    pub abelian: bool,
    pub center_order: usize,
    pub conjugacy_classes: usize,
    pub elem_order_histogram: Vec<(u32, usize)>,
    pub abelianization_histogram: Vec<(u32, usize)>,
}

fn order_histogram(g: &FiniteGroup) -> Vec<(u32, usize)> {
    let mut map = std::collections::BTreeMap::new();
    for x in 0..g.order() {
        *map.entry(g.elem_order(x)).or_insert(0usize) += 1;
    }
    map.into_iter().collect()
}

pub fn commutator_subgroup(g: &FiniteGroup) -> Subgroup {
    let mut gens = Vec::new();
    for a in 0..g.order() {
        for b in 0..g.order() {
            let c = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
            if c != 0 {
                gens.push(c);
            }
        }
    }
    Subgroup::generated_by(g, &gens)
}

pub fn fingerprint(g: &FiniteGroup) -> Fingerprint {
    let derived = commutator_subgroup(g);
    let (ab, _) = quotient_group(g, &derived).expect("derived subgroup is normal");
    Fingerprint {
        order: g.order(),
        exponent: g.exponent(),
        abelian: g.is_abelian(),
        center_order: g.center_set().count(),
        conjugacy_classes: g.conjugacy_class_count(),
        elem_order_histogram: order_histogram(g),
        abelianization_histogram: order_histogram(&ab),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_family, Family, DEFAULT_MAX_ORDER};

    fn build(f: Family) -> FiniteGroup {
        make_family(f, DEFAULT_MAX_ORDER).unwrap()
    }

    #[test]
    fn lattice_counts() {
        let c4 = build(Family::Cyclic { p: 2, n: 2 });
        assert_eq!(all_subgroups(&c4, 512).unwrap().len(), 3);
        let d8 = build(Family::Dihedral { n: 3 });
        assert_eq!(all_subgroups(&d8, 512).unwrap().len(), 10);
        let q8 = build(Family::Quaternion { n: 3 });
        let subs = all_subgroups(&q8, 512).unwrap();
        assert_eq!(subs.len(), 6);
        assert_eq!(
            subs.iter().map(Subgroup::order).collect::<Vec<_>>(),
            vec![1, 2, 4, 4, 4, 8]
        );
    }

    #[test]
    fn lattice_is_canonically_sorted_and_closed() {
        let d8 = build(Family::Dihedral { n: 3 });
        let subs = all_subgroups(&d8, 512).unwrap();
        for w in subs.windows(2) {
            assert!(w[0] < w[1]);
        }
        for s in &subs {
            Subgroup::new(&d8, s.set().clone()).unwrap();
        }
    }

    #[test]
    fn normalizer_of_noncentral_involution_in_d8() {
        let d8 = build(Family::Dihedral { n: 3 });
        // element 4 is the reflection y; ⟨y⟩ is non-central of order 2
        let i = Subgroup::generated_by(&d8, &[4]);
        assert_eq!(i.order(), 2);
        assert!(!d8.center_set().contains(4));
        let n = i.normalizer();
        assert_eq!(n.order(), 4);
        assert!(center(&d8).is_subgroup_of(&n));
    }

    #[test]
    fn centralizer_of_c4_in_q8_is_itself() {
        let q8 = build(Family::Quaternion { n: 3 });
        for s in all_subgroups(&q8, 512).unwrap() {
            if s.order() == 4 {
                assert_eq!(s.centralizer(), s);
            }
        }
    }

    #[test]
    fn axes_counts() {
        let q8 = build(Family::Quaternion { n: 3 });
        assert_eq!(axes(&q8).len(), 3);
        let d16 = build(Family::Dihedral { n: 4 });
        assert_eq!(axes(&d16).len(), 1);
        assert_eq!(axial_subgroups(&d16).len(), 4);
        let e9 = build(Family::ElementaryAbelian { p: 3, rank: 2 });
        assert_eq!(e9.exponent(), 3);
    }

    #[test]
    fn cyclic_class_counts() {
        let d8 = build(Family::Dihedral { n: 3 });
        assert_eq!(cyclic_subgroup_classes(&d8, 512).unwrap(), 5);
        let c27 = build(Family::Cyclic { p: 3, n: 3 });
        assert_eq!(cyclic_subgroup_classes(&c27, 512).unwrap(), 4);
        let p = direct_product(&d8, &d8, 512).unwrap();
        assert_eq!(cyclic_subgroup_classes(&p, 512).unwrap(), 25);
    }

    #[test]
    fn quotient_d16_by_center_is_d8() {
        let d16 = build(Family::Dihedral { n: 4 });
        let (q, _) = quotient_group(&d16, &center(&d16)).unwrap();
        let d8 = build(Family::Dihedral { n: 3 });
        assert_eq!(fingerprint(&q), fingerprint(&d8));
    }

    #[test]
    fn quotient_q16_by_center_is_d8() {
        let q16 = build(Family::Quaternion { n: 4 });
        let (q, _) = quotient_group(&q16, &center(&q16)).unwrap();
        let d8 = build(Family::Dihedral { n: 3 });
        assert_eq!(fingerprint(&q), fingerprint(&d8));
        let whole = Subgroup::full(&q16);
        let (one, _) = quotient_group(&q16, &whole).unwrap();
        assert_eq!(one.order(), 1);
    }

    #[test]
    fn quotient_requires_normality() {
        let d8 = build(Family::Dihedral { n: 3 });
        let i = Subgroup::generated_by(&d8, &[4]);
        assert!(matches!(quotient_group(&d8, &i), Err(Error::NotNormal)));
    }

    #[test]
    fn central_product_counts_and_orders() {
        let d8 = build(Family::Dihedral { n: 3 });
        let glued = central_products(&d8, &d8, 512).unwrap();
        assert_eq!(glued.len(), 1);
        assert_eq!(glued[0].1.order(), 32);

        let x = build(Family::Extraspecial { p: 3, plus: true });
        let glued = central_products(&x, &x, 512).unwrap();
        assert_eq!(glued.len(), 2);
        assert!(glued.iter().all(|(_, g)| g.order() == 243));

        let c2 = build(Family::Cyclic { p: 2, n: 1 });
        let glued = central_products(&c2, &c2, 512).unwrap();
        assert_eq!(glued.len(), 1);
        assert_eq!(glued[0].1.order(), 2);

        let one = build(Family::Cyclic { p: 2, n: 0 });
        assert!(matches!(
            central_products(&one, &c2, 512),
            Err(Error::NoCentralSubgroup)
        ));
    }

    #[test]
    fn product_quotient_recovers_factor() {
        let d8 = build(Family::Dihedral { n: 3 });
        let c4 = build(Family::Cyclic { p: 2, n: 2 });
        let p = direct_product(&d8, &c4, 512).unwrap();
        let embedded: Vec<usize> = (0..4).map(|b| b).collect();
        let right = Subgroup::generated_by(&p, &embedded);
        assert_eq!(right.order(), 4);
        let (q, _) = quotient_group(&p, &right).unwrap();
        assert_eq!(fingerprint(&q), fingerprint(&d8));
    }

    #[test]
    fn randomized_closures_appear_in_lattice() {
        let q16 = build(Family::Quaternion { n: 4 });
        let subs = all_subgroups(&q16, 512).unwrap();
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state as usize
        };
        for _ in 0..200 {
            let a = next() % 16;
            let b = next() % 16;
            let generated = Subgroup::generated_by(&q16, &[a, b]);
            assert!(subs.iter().any(|s| s == &generated));
        }
    }
}
