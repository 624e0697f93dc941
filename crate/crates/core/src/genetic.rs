//! Expansive and genetic subgroups, the equivalence relation between
//! them, genetic bases, and the induced edge decompositions of concrete
//! groups. Everything here is brute force over multiplication tables and
//! serves as the oracle for the symbolic edge algebra.
//!
//! For a subgroup S of a p-group P, write Ẑ(S) for the subgroup above S
//! with Ẑ(S)/S = Z(N_P(S)/S). Then:
//!
//! * S is expansive iff for all g, S^g ∩ Ẑ(S) ≤ S forces S^g = S;
//! * S is genetic iff it is expansive and N_P(S)/S is Roquette;
//! * S and T are related iff some g satisfies both S^g ∩ Ẑ(T) ≤ T and
//!   ᵍT ∩ Ẑ(S) ≤ S. Restricted to genetic subgroups this is an
//!   equivalence; a genetic basis picks one representative per class.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::bitset::BitSet;
use crate::edge::EdgeSum;
use crate::error::{Error, Result};
use crate::group::{direct_product, product_index, FiniteGroup};
use crate::par;
use crate::roquette::{roquette_type, RoquetteType};
use crate::subgroup::{
    all_subgroups, axial_subgroups_of_order, section_quotient, Section, Subgroup,
};

/// One genetic subgroup with the data the calculus needs about it.
#[derive(Clone, Debug)]
pub struct GeneticRecord {
    pub subgroup: Subgroup,
    pub normalizer: Subgroup,
    /// Ẑ(S): preimage in N_P(S) of the center of N_P(S)/S.
    pub relative_center: Subgroup,
    pub quotient_type: RoquetteType,
    /// S ∩ Z(P) = 1.
    pub central_trivial: bool,
}

/// A transversal of the equivalence classes of genetic subgroups,
/// canonically ordered by (size, member set) of the representatives.
#[derive(Clone, Debug)]
pub struct GeneticBasis {
    parent: FiniteGroup,
    records: Vec<GeneticRecord>,
}

impl GeneticBasis {
    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn records(&self) -> &[GeneticRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn type_histogram(&self) -> BTreeMap<RoquetteType, u64> {
        let mut map = BTreeMap::new();
        for r in &self.records {
            *map.entry(r.quotient_type).or_insert(0) += 1;
        }
        map
    }

    /// The raw edge decomposition read off this basis.
    pub fn edge_sum_raw(&self) -> EdgeSum {
        let mut sum = EdgeSum::empty(self.parent.prime());
        for r in &self.records {
            sum.add(r.quotient_type, &BigUint::one())
                .expect("record types share the parent prime");
        }
        sum
    }

    /// The raw faithful part: edges of records with S ∩ Z(P) = 1.
    pub fn faithful_sum_raw(&self) -> EdgeSum {
        let mut sum = EdgeSum::empty(self.parent.prime());
        for r in self.records.iter().filter(|r| r.central_trivial) {
            sum.add(r.quotient_type, &BigUint::one())
                .expect("record types share the parent prime");
        }
        sum
    }
}

struct SubgroupData {
    normalizer: BitSet,
    zhat: BitSet,
    quotient_type: Option<RoquetteType>,
}

fn subgroup_data(s: &Subgroup) -> Result<SubgroupData> {
    let n = s.normalizer();
    let sq = section_quotient(&n, s)?;
    let mut zhat = BitSet::new(s.parent().order());
    for x in n.set().iter() {
        if sq.group.center_set().contains(sq.proj[x] as usize) {
            zhat.insert(x);
        }
    }
    Ok(SubgroupData {
        normalizer: n.set().clone(),
        zhat,
        quotient_type: roquette_type(&sq.group),
    })
}

/// Ẑ(S): the subgroup of N_P(S) containing S whose quotient by S is the
/// center of N_P(S)/S.
pub fn relative_center(s: &Subgroup) -> Subgroup {
    let data = subgroup_data(s).expect("the bottom is normal in its normalizer");
    Subgroup::from_set_unchecked(s.parent(), data.zhat)
}

/// Expansivity via coset representatives: the defining condition is
/// invariant under left translation of g by N_P(S).
fn expansive_with(g: &FiniteGroup, s: &BitSet, zhat: &BitSet, normalizer: &BitSet) -> bool {
    let order = g.order();
    let mut seen = BitSet::new(order);
    for t in 0..order {
        if seen.contains(t) {
            continue;
        }
        for n in normalizer.iter() {
            seen.insert(g.mul(n, t));
        }
        let conj = g.conjugate_set(s, t);
        if conj.intersection_within(zhat, s) && conj != *s {
            return false;
        }
    }
    true
}

/// The p-group expansivity criterion, checked over coset representatives
/// of N_P(S) in P.
pub fn is_expansive(s: &Subgroup) -> bool {
    let data = subgroup_data(s).expect("the bottom is normal in its normalizer");
    expansive_with(s.parent(), s.set(), &data.zhat, &data.normalizer)
}

/// Roquette type of N_P(S)/S when S is genetic, `None` otherwise.
pub fn genetic_quotient_type(s: &Subgroup) -> Option<RoquetteType> {
    let data = subgroup_data(s).ok()?;
    let t = data.quotient_type?;
    expansive_with(s.parent(), s.set(), &data.zhat, &data.normalizer).then_some(t)
}

pub fn is_genetic(s: &Subgroup) -> bool {
    genetic_quotient_type(s).is_some()
}

/// Search strategy for the relation between subgroups. `Exhaustive`
/// scans every group element; `DoubleCoset` scans one representative per
/// N_P(A)·g·N_P(B) double coset, which the condition only depends on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EquivalenceStrategy {
    #[default]
    Exhaustive,
    DoubleCoset,
}

#[allow(clippy::too_many_arguments)]
fn related_with(
    g: &FiniteGroup,
    a: &BitSet,
    a_zhat: &BitSet,
    a_normalizer: Option<&BitSet>,
    b: &BitSet,
    b_zhat: &BitSet,
    b_normalizer: Option<&BitSet>,
    strategy: EquivalenceStrategy,
) -> bool {
    let order = g.order();
    let mut seen = match strategy {
        EquivalenceStrategy::Exhaustive => None,
        EquivalenceStrategy::DoubleCoset => Some(BitSet::new(order)),
    };
    for t in 0..order {
        if let Some(seen) = seen.as_mut() {
            if seen.contains(t) {
                continue;
            }
            let (na, nb) = (
                a_normalizer.expect("double-coset strategy needs normalizers"),
                b_normalizer.expect("double-coset strategy needs normalizers"),
            );
            for x in na.iter() {
                let xt = g.mul(x, t);
                for y in nb.iter() {
                    seen.insert(g.mul(xt, y));
                }
            }
        }
        let conj_a = g.conjugate_set(a, t);
        if !conj_a.intersection_within(b_zhat, b) {
            continue;
        }
        let conj_b = g.conjugate_set(b, g.inv(t));
        if conj_b.intersection_within(a_zhat, a) {
            return true;
        }
    }
    false
}

/// The relation whose classes on genetic subgroups index a genetic
/// basis: some g satisfies A^g ∩ Ẑ(B) ≤ B and ᵍB ∩ Ẑ(A) ≤ A.
pub fn genetically_related(a: &Subgroup, b: &Subgroup, strategy: EquivalenceStrategy) -> bool {
    assert!(a.parent().same_group(b.parent()));
    let da = subgroup_data(a).expect("the bottom is normal in its normalizer");
    let db = subgroup_data(b).expect("the bottom is normal in its normalizer");
    related_with(
        a.parent(),
        a.set(),
        &da.zhat,
        Some(&da.normalizer),
        b.set(),
        &db.zhat,
        Some(&db.normalizer),
        strategy,
    )
}

/// Plain linkage of two sections (T, S) and (Y, X):
/// S(T∩Y) = T, X(T∩Y) = Y and T∩X = S∩Y.
pub fn sections_linked(a: &Section, b: &Section) -> bool {
    let g = a.top().parent();
    assert!(g.same_group(b.top().parent()));
    let meet = a.top().set().intersection(b.top().set());
    if g.product_set(a.bottom().set(), &meet) != *a.top().set() {
        return false;
    }
    if g.product_set(b.bottom().set(), &meet) != *b.top().set() {
        return false;
    }
    a.top().set().intersection(b.bottom().set()) == a.bottom().set().intersection(b.top().set())
}

/// Linkage modulo the ambient group: some conjugate of `b` links to `a`.
pub fn sections_linked_mod(a: &Section, b: &Section) -> bool {
    let g = a.top().parent().clone();
    (0..g.order()).any(|t| sections_linked(a, &b.conjugate(t)))
}

struct Candidate {
    set: BitSet,
    normalizer: BitSet,
    zhat: BitSet,
    quotient_type: RoquetteType,
}

fn scan_candidates(g: &FiniteGroup, subs: &[Subgroup]) -> Vec<Candidate> {
    par::par_map(subs, |s| {
        let data = subgroup_data(s).ok()?;
        let t = data.quotient_type?;
        expansive_with(g, s.set(), &data.zhat, &data.normalizer).then(|| Candidate {
            set: s.set().clone(),
            normalizer: data.normalizer,
            zhat: data.zhat,
            quotient_type: t,
        })
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Greedy partition of candidates (already in canonical order) into
/// equivalence classes; returns indices of class representatives.
fn partition_reps(g: &FiniteGroup, candidates: &[Candidate]) -> Vec<usize> {
    let mut reps: Vec<usize> = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        let hits = par::par_map(&reps, |&r| {
            let rep = &candidates[r];
            related_with(
                g,
                &c.set,
                &c.zhat,
                None,
                &rep.set,
                &rep.zhat,
                None,
                EquivalenceStrategy::Exhaustive,
            )
        });
        if !hits.iter().any(|&h| h) {
            reps.push(i);
        } else {
            debug_assert_eq!(
                hits.iter().filter(|&&h| h).count(),
                1,
                "the relation must match exactly one class"
            );
        }
    }
    reps
}

fn record_from_candidate(g: &FiniteGroup, c: &Candidate) -> GeneticRecord {
    let central_trivial = c.set.intersection(g.center_set()).count() == 1;
    GeneticRecord {
        subgroup: Subgroup::from_set_unchecked(g, c.set.clone()),
        normalizer: Subgroup::from_set_unchecked(g, c.normalizer.clone()),
        relative_center: Subgroup::from_set_unchecked(g, c.zhat.clone()),
        quotient_type: c.quotient_type,
        central_trivial,
    }
}

/// Computes a genetic basis by full enumeration: list all subgroups,
/// keep the genetic ones, partition them, and pick the canonically least
/// member of each class as its representative.
pub fn genetic_basis(g: &FiniteGroup, max_order: u64) -> Result<GeneticBasis> {
    let subs = all_subgroups(g, max_order)?;
    let candidates = scan_candidates(g, &subs);
    let reps = partition_reps(g, &candidates);
    let records = reps
        .into_iter()
        .map(|i| record_from_candidate(g, &candidates[i]))
        .collect();
    Ok(GeneticBasis {
        parent: g.clone(),
        records,
    })
}

/// All genetic subgroups in canonical order (not just representatives).
pub fn genetic_subgroups(g: &FiniteGroup, max_order: u64) -> Result<Vec<Subgroup>> {
    let subs = all_subgroups(g, max_order)?;
    Ok(scan_candidates(g, &subs)
        .into_iter()
        .map(|c| Subgroup::from_set_unchecked(g, c.set))
        .collect())
}

/// Raw multiset of quotient types over a genetic basis.
pub fn edge_decomposition_bruteforce(g: &FiniteGroup, max_order: u64) -> Result<EdgeSum> {
    Ok(genetic_basis(g, max_order)?.edge_sum_raw())
}

/// Raw multiset of quotient types over the records with S ∩ Z(P) = 1.
pub fn faithful_edges_bruteforce(g: &FiniteGroup, max_order: u64) -> Result<EdgeSum> {
    Ok(genetic_basis(g, max_order)?.faithful_sum_raw())
}

/// The centrally diagonal genetic subgroups of a product of two Roquette
/// groups, enumerated constructively: from the isomorphisms between the
/// factors when both are quaternion of order 8, from axial subgroups of
/// order min(e_P, e_Q) and the embeddings between them otherwise.
pub struct CentrallyDiagonal {
    pub product: FiniteGroup,
    /// Every centrally diagonal genetic subgroup found, canonical order.
    pub subgroups: Vec<Subgroup>,
    /// One representative per equivalence class.
    pub class_representatives: Vec<Subgroup>,
    pub quotient_type: RoquetteType,
    pub class_count: usize,
}

/// All isomorphisms between two small groups, each as an image table.
/// Backtracks over generator images; meant for the tiny groups this
/// crate needs it for.
pub fn isomorphisms(a: &FiniteGroup, b: &FiniteGroup) -> Vec<Vec<usize>> {
    if a.order() != b.order() {
        return Vec::new();
    }
    let mut gens: Vec<usize> = Vec::new();
    let mut span = a.closure(&[]);
    for x in 0..a.order() {
        if !span.contains(x) {
            gens.push(x);
            span = a.closure(&gens);
        }
    }
    let mut out = Vec::new();
    let mut images = vec![0usize; gens.len()];
    search(a, b, &gens, 0, &mut images, &mut out);
    return out;

    fn search(
        a: &FiniteGroup,
        b: &FiniteGroup,
        gens: &[usize],
        k: usize,
        images: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == gens.len() {
            if let Some(map) = extend_hom(a, b, gens, images) {
                out.push(map);
            }
            return;
        }
        for y in 0..b.order() {
            if b.elem_order(y) == a.elem_order(gens[k]) {
                images[k] = y;
                search(a, b, gens, k + 1, images, out);
            }
        }
    }

    /// Propagates generator images across the group, then verifies the
    /// result is a bijective homomorphism.
    fn extend_hom(
        a: &FiniteGroup,
        b: &FiniteGroup,
        gens: &[usize],
        images: &[usize],
    ) -> Option<Vec<usize>> {
        let n = a.order();
        let undefined = usize::MAX;
        let mut map = vec![undefined; n];
        map[0] = 0;
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            let y = map[x];
            for (i, &g) in gens.iter().enumerate() {
                let xg = a.mul(x, g);
                let yg = b.mul(y, images[i]);
                if map[xg] == undefined {
                    map[xg] = yg;
                    queue.push(xg);
                } else if map[xg] != yg {
                    return None;
                }
            }
        }
        if map.contains(&undefined) {
            return None;
        }
        let mut hit = vec![false; n];
        for &y in &map {
            if hit[y] {
                return None;
            }
            hit[y] = true;
        }
        for x in 0..n {
            for y in 0..n {
                if map[a.mul(x, y)] != b.mul(map[x], map[y]) {
                    return None;
                }
            }
        }
        Some(map)
    }
}

fn central_nontrivial_elements(g: &FiniteGroup) -> Vec<usize> {
    g.center_set().iter().filter(|&z| z != 0).collect()
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn keep_centrally_diagonal_genetic(
    product: &FiniteGroup,
    q_order: usize,
    zp: &[usize],
    zq: &[usize],
    candidate_sets: &[BitSet],
) -> Vec<Candidate> {
    par::par_map(candidate_sets, |set| {
        let centrally_diagonal = zp
            .iter()
            .all(|&z| !set.contains(product_index(z, 0, q_order)))
            && zq
                .iter()
                .all(|&z| !set.contains(product_index(0, z, q_order)));
        if !centrally_diagonal {
            return None;
        }
        let s = Subgroup::from_set_unchecked(product, set.clone());
        let data = subgroup_data(&s).ok()?;
        let t = data.quotient_type?;
        expansive_with(product, set, &data.zhat, &data.normalizer).then(|| Candidate {
            set: set.clone(),
            normalizer: data.normalizer,
            zhat: data.zhat,
            quotient_type: t,
        })
    })
    .into_iter()
    .flatten()
    .collect()
}

fn assemble_centrally_diagonal(
    product: FiniteGroup,
    kept: Vec<Candidate>,
) -> Result<CentrallyDiagonal> {
    if kept.is_empty() {
        return Err(Error::InvalidParameter(
            "no centrally diagonal genetic subgroup found".into(),
        ));
    }
    let quotient_type = kept[0].quotient_type;
    debug_assert!(kept.iter().all(|c| c.quotient_type == quotient_type));
    let reps = partition_reps(&product, &kept);
    let class_representatives: Vec<Subgroup> = reps
        .iter()
        .map(|&i| Subgroup::from_set_unchecked(&product, kept[i].set.clone()))
        .collect();
    let subgroups = kept
        .into_iter()
        .map(|c| Subgroup::from_set_unchecked(&product, c.set))
        .collect();
    Ok(CentrallyDiagonal {
        product,
        subgroups,
        class_count: class_representatives.len(),
        class_representatives,
        quotient_type,
    })
}

pub fn centrally_diagonal_genetics(
    p: &FiniteGroup,
    q: &FiniteGroup,
    max_order: u64,
) -> Result<CentrallyDiagonal> {
    let tp = roquette_type(p).ok_or(Error::NotRoquette)?;
    let tq = roquette_type(q).ok_or(Error::NotRoquette)?;
    let product = direct_product(p, q, max_order)?;

    let mut candidate_sets: Vec<BitSet> = Vec::new();
    if tp.is_trivial() || tq.is_trivial() {
        candidate_sets.push(BitSet::singleton(product.order(), 0));
    } else if tp.is_q8() && tq.is_q8() {
        for iso in isomorphisms(p, q) {
            let mut bits = BitSet::new(product.order());
            for x in 0..p.order() {
                bits.insert(product_index(x, iso[x], q.order()));
            }
            candidate_sets.push(bits);
        }
    } else {
        let m = p.exponent().min(q.exponent());
        for h in axial_subgroups_of_order(p, m as usize) {
            let h_gen = h
                .set()
                .iter()
                .find(|&x| p.elem_order(x) as u64 == m)
                .expect("cyclic subgroup has a generator");
            for k in axial_subgroups_of_order(q, m as usize) {
                let k_gen = k
                    .set()
                    .iter()
                    .find(|&x| q.elem_order(x) as u64 == m)
                    .expect("cyclic subgroup has a generator");
                for j in (1..m).filter(|&j| gcd(j, m) == 1) {
                    let gen_image = q.power(k_gen, j);
                    let mut bits = BitSet::new(product.order());
                    let mut x = 0usize;
                    let mut y = 0usize;
                    loop {
                        bits.insert(product_index(x, y, q.order()));
                        x = p.mul(x, h_gen);
                        y = q.mul(y, gen_image);
                        if x == 0 {
                            break;
                        }
                    }
                    candidate_sets.push(bits);
                }
            }
        }
    }
    candidate_sets.sort();
    candidate_sets.dedup();

    let zp = central_nontrivial_elements(p);
    let zq = central_nontrivial_elements(q);
    let kept = keep_centrally_diagonal_genetic(&product, q.order(), &zp, &zq, &candidate_sets);
    assemble_centrally_diagonal(product, kept)
}

/// Cross-check path: find the centrally diagonal genetic subgroups by
/// filtering the full lattice of the product. Slow; for products of
/// order ≤ 256.
pub fn centrally_diagonal_genetics_bruteforce(
    p: &FiniteGroup,
    q: &FiniteGroup,
    max_order: u64,
) -> Result<CentrallyDiagonal> {
    roquette_type(p).ok_or(Error::NotRoquette)?;
    roquette_type(q).ok_or(Error::NotRoquette)?;
    let product = direct_product(p, q, max_order)?;
    let subs = all_subgroups(&product, max_order)?;
    let sets: Vec<BitSet> = subs.iter().map(|s| s.set().clone()).collect();
    let zp = central_nontrivial_elements(p);
    let zq = central_nontrivial_elements(q);
    let kept = keep_centrally_diagonal_genetic(&product, q.order(), &zp, &zq, &sets);
    assemble_centrally_diagonal(product, kept)
}

/// Builds a genetic basis of P × Q out of bases of the factors: for each
/// pair of records, lift the class representatives of the centrally
/// diagonal genetic subgroups of N̄_P(S) × N̄_Q(T) back through the
/// projections.
pub fn product_genetic_basis(
    p: &FiniteGroup,
    q: &FiniteGroup,
    bp: &GeneticBasis,
    bq: &GeneticBasis,
    max_order: u64,
) -> Result<GeneticBasis> {
    assert!(bp.parent().same_group(p) && bq.parent().same_group(q));
    let product = direct_product(p, q, max_order)?;
    let mut records: Vec<GeneticRecord> = Vec::new();
    for rs in bp.records() {
        let sq_s = section_quotient(&rs.normalizer, &rs.subgroup)?;
        for rt in bq.records() {
            let sq_t = section_quotient(&rt.normalizer, &rt.subgroup)?;
            let lifted_sets: Vec<BitSet> = if sq_s.group.is_trivial() || sq_t.group.is_trivial() {
                // The only centrally diagonal genetic subgroup of the
                // quotient pair is trivial; its preimage is S × T.
                let mut bits = BitSet::new(product.order());
                for x in rs.subgroup.set().iter() {
                    for y in rt.subgroup.set().iter() {
                        bits.insert(product_index(x, y, q.order()));
                    }
                }
                vec![bits]
            } else {
                let pair_bound = (sq_s.group.order() * sq_t.group.order()) as u64;
                let cd = centrally_diagonal_genetics(&sq_s.group, &sq_t.group, pair_bound)?;
                cd.class_representatives
                    .iter()
                    .map(|rbar| {
                        let mut bits = BitSet::new(product.order());
                        for x in rs.normalizer.set().iter() {
                            for y in rt.normalizer.set().iter() {
                                let local = product_index(
                                    sq_s.proj[x] as usize,
                                    sq_t.proj[y] as usize,
                                    sq_t.group.order(),
                                );
                                if rbar.contains(local) {
                                    bits.insert(product_index(x, y, q.order()));
                                }
                            }
                        }
                        bits
                    })
                    .collect()
            };
            for bits in lifted_sets {
                let s = Subgroup::from_set_unchecked(&product, bits);
                let data = subgroup_data(&s)?;
                let quotient_type = data
                    .quotient_type
                    .expect("lifted subgroup has a Roquette quotient");
                debug_assert!(expansive_with(
                    &product,
                    s.set(),
                    &data.zhat,
                    &data.normalizer
                ));
                let central_trivial = s.set().intersection(product.center_set()).count() == 1;
                records.push(GeneticRecord {
                    normalizer: Subgroup::from_set_unchecked(&product, data.normalizer),
                    relative_center: Subgroup::from_set_unchecked(&product, data.zhat),
                    subgroup: s,
                    quotient_type,
                    central_trivial,
                });
            }
        }
    }
    records.sort_by(|a, b| a.subgroup.cmp(&b.subgroup));
    Ok(GeneticBasis {
        parent: product,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_family, Family, DEFAULT_MAX_ORDER};
    use crate::subgroup::center;

    fn build(f: Family) -> FiniteGroup {
        make_family(f, DEFAULT_MAX_ORDER).unwrap()
    }

    fn d8() -> FiniteGroup {
        build(Family::Dihedral { n: 3 })
    }

    fn q8() -> FiniteGroup {
        build(Family::Quaternion { n: 3 })
    }

    #[test]
    fn relative_center_examples() {
        // abelian quotient: Ẑ(S) = P when S ⊴ P with P/S abelian
        let g = d8();
        let z = center(&g);
        assert_eq!(relative_center(&z).order(), 8);
        // non-central involution in D₈: Ẑ = N = I·Z of order 4
        let i = Subgroup::generated_by(&g, &[4]);
        let zi = relative_center(&i);
        assert_eq!(zi.order(), 4);
        assert!(center(&g).is_subgroup_of(&zi));
        // Ẑ(1) = Z(P)
        let q = q8();
        let one = Subgroup::trivial(&q);
        assert_eq!(relative_center(&one), center(&q));
    }

    #[test]
    fn expansive_examples() {
        let g = d8();
        for s in all_subgroups(&g, 512).unwrap() {
            if s.is_normal() {
                assert!(is_expansive(&s), "normal subgroups are expansive");
            }
        }
        let i = Subgroup::generated_by(&g, &[4]);
        assert!(is_expansive(&i));

        // diagonal of P × P for P = D₈ (commutators are central)
        let p2 = direct_product(&g, &g, 512).unwrap();
        let diag: Vec<usize> = (0..8).map(|x| product_index(x, x, 8)).collect();
        let delta = Subgroup::generated_by(&p2, &diag);
        assert_eq!(delta.order(), 8);
        assert!(is_expansive(&delta));
    }

    #[test]
    fn noncentral_involution_in_d16_is_not_expansive() {
        let g = build(Family::Dihedral { n: 4 });
        let reflections: Vec<usize> = (1..16)
            .filter(|&x| g.elem_order(x) == 2 && !g.center_set().contains(x))
            .collect();
        assert!(reflections.iter().any(|&r| {
            let s = Subgroup::generated_by(&g, &[r]);
            !is_expansive(&s)
        }));
    }

    #[test]
    fn genetic_examples() {
        let g = q8();
        assert_eq!(
            genetic_quotient_type(&Subgroup::full(&g)),
            Some(RoquetteType::Trivial)
        );
        assert_eq!(
            genetic_quotient_type(&Subgroup::trivial(&g)),
            Some(RoquetteType::Quaternion { n: 3 })
        );
        let h = d8();
        assert_eq!(genetic_quotient_type(&Subgroup::trivial(&h)), None);
    }

    #[test]
    fn relation_basics() {
        let g = d8();
        let subs = all_subgroups(&g, 512).unwrap();
        for s in &subs {
            assert!(genetically_related(s, s, EquivalenceStrategy::Exhaustive));
        }
        let index2: Vec<&Subgroup> = subs.iter().filter(|s| s.order() == 4).collect();
        assert_eq!(index2.len(), 3);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(!genetically_related(
                        index2[i],
                        index2[j],
                        EquivalenceStrategy::Exhaustive
                    ));
                }
            }
        }
    }

    #[test]
    fn relation_for_conjugates_with_common_normal_normalizer() {
        let x = build(Family::Extraspecial { p: 3, plus: true });
        let a = (1..27)
            .map(|e| Subgroup::generated_by(&x, &[e]))
            .find(|s| s.order() == 3 && !s.is_normal())
            .unwrap();
        let b = (0..27).map(|t| a.conjugate(t)).find(|c| c != &a).unwrap();
        let na = a.normalizer();
        assert_eq!(na, b.normalizer());
        assert!(na.is_normal());
        assert!(genetically_related(&a, &b, EquivalenceStrategy::Exhaustive));
    }

    #[test]
    fn strategies_agree() {
        for g in [d8(), q8(), build(Family::Semidihedral { n: 4 })] {
            let subs = all_subgroups(&g, 512).unwrap();
            for a in &subs {
                for b in &subs {
                    assert_eq!(
                        genetically_related(a, b, EquivalenceStrategy::Exhaustive),
                        genetically_related(a, b, EquivalenceStrategy::DoubleCoset),
                        "{a:?} vs {b:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn linked_sections_have_matching_subquotients() {
        let g = d8();
        let subs = all_subgroups(&g, 512).unwrap();
        let top = subs
            .iter()
            .find(|s| s.order() == 4 && s.is_cyclic())
            .unwrap();
        let sec = Section::new(top.clone(), center(&g)).unwrap();
        assert!(sections_linked(&sec, &sec));
        let mut sections = Vec::new();
        for t in &subs {
            for b in &subs {
                if b.is_subgroup_of(t) {
                    if let Ok(s) = Section::new(t.clone(), b.clone()) {
                        sections.push(s);
                    }
                }
            }
        }
        for s1 in &sections {
            for s2 in &sections {
                if sections_linked(s1, s2) {
                    assert_eq!(
                        s1.top().order() / s1.bottom().order(),
                        s2.top().order() / s2.bottom().order(),
                    );
                }
            }
        }
    }

    #[test]
    fn genetic_basis_of_d8_and_q8() {
        let b = genetic_basis(&d8(), 512).unwrap();
        assert_eq!(b.len(), 5);
        let hist = b.type_histogram();
        assert_eq!(hist[&RoquetteType::Trivial], 1);
        assert_eq!(hist[&RoquetteType::Cyclic { p: 2, n: 1 }], 4);

        let g = q8();
        let b = genetic_basis(&g, 512).unwrap();
        assert_eq!(b.len(), 5);
        let hist = b.type_histogram();
        assert_eq!(hist[&RoquetteType::Trivial], 1);
        assert_eq!(hist[&RoquetteType::Cyclic { p: 2, n: 1 }], 3);
        assert_eq!(hist[&RoquetteType::Quaternion { n: 3 }], 1);
        // the basis is unique here: every class is a singleton
        assert_eq!(genetic_subgroups(&g, 512).unwrap().len(), 5);
    }

    #[test]
    fn genetic_basis_of_elementary_abelian() {
        for (p, rank) in [(2u64, 3u32), (3, 2), (5, 2)] {
            let g = build(Family::ElementaryAbelian { p, rank });
            let b = genetic_basis(&g, 512).unwrap();
            let expected = 1 + (p.pow(rank) - 1) / (p - 1);
            assert_eq!(b.len() as u64, expected);
        }
    }

    #[test]
    fn q8_isomorphism_count() {
        let a = q8();
        let b = q8();
        assert_eq!(isomorphisms(&a, &b).len(), 24);
        let c4 = build(Family::Cyclic { p: 2, n: 2 });
        assert_eq!(isomorphisms(&c4, &c4).len(), 2);
        assert!(isomorphisms(&a, &d8()).is_empty());
    }

    #[test]
    fn centrally_diagonal_q8_q8() {
        let cd = centrally_diagonal_genetics(&q8(), &q8(), 512).unwrap();
        assert_eq!(cd.subgroups.len(), 24);
        assert_eq!(cd.class_count, 1);
        assert_eq!(cd.quotient_type, RoquetteType::Cyclic { p: 2, n: 1 });
    }

    #[test]
    fn centrally_diagonal_c4_c8() {
        let c4 = build(Family::Cyclic { p: 2, n: 2 });
        let c8 = build(Family::Cyclic { p: 2, n: 3 });
        let cd = centrally_diagonal_genetics(&c4, &c8, 512).unwrap();
        assert_eq!(cd.subgroups.len(), 2);
        assert_eq!(cd.class_count, 2);
        assert_eq!(cd.quotient_type, RoquetteType::Cyclic { p: 2, n: 3 });
    }

    #[test]
    fn centrally_diagonal_cp_times_roquette() {
        let c2 = build(Family::Cyclic { p: 2, n: 1 });
        for (f, expected) in [
            (
                Family::Quaternion { n: 3 },
                RoquetteType::Quaternion { n: 3 },
            ),
            (Family::Dihedral { n: 4 }, RoquetteType::Dihedral { n: 4 }),
            (
                Family::Cyclic { p: 2, n: 3 },
                RoquetteType::Cyclic { p: 2, n: 3 },
            ),
        ] {
            let r = build(f);
            let cd = centrally_diagonal_genetics(&c2, &r, 512).unwrap();
            assert_eq!(cd.quotient_type, expected);
            assert_eq!(cd.class_count, 1);
        }
    }

    #[test]
    fn constructive_matches_bruteforce_on_small_pairs() {
        let pairs = [
            (Family::Quaternion { n: 3 }, Family::Quaternion { n: 3 }),
            (Family::Cyclic { p: 2, n: 2 }, Family::Cyclic { p: 2, n: 3 }),
            (Family::Cyclic { p: 2, n: 2 }, Family::Quaternion { n: 3 }),
            (Family::Cyclic { p: 3, n: 1 }, Family::Cyclic { p: 3, n: 2 }),
            (Family::Dihedral { n: 4 }, Family::Cyclic { p: 2, n: 2 }),
        ];
        for (fa, fb) in pairs {
            let a = build(fa);
            let b = build(fb);
            let fast = centrally_diagonal_genetics(&a, &b, 512).unwrap();
            let slow = centrally_diagonal_genetics_bruteforce(&a, &b, 512).unwrap();
            assert_eq!(fast.quotient_type, slow.quotient_type, "{fa:?} {fb:?}");
            assert_eq!(fast.class_count, slow.class_count, "{fa:?} {fb:?}");
            let fast_sets: Vec<_> = fast.subgroups.iter().map(|s| s.set().clone()).collect();
            let slow_sets: Vec<_> = slow.subgroups.iter().map(|s| s.set().clone()).collect();
            assert_eq!(fast_sets, slow_sets, "{fa:?} {fb:?}");
        }
    }

    #[test]
    fn product_basis_c2_c2() {
        let c2 = build(Family::Cyclic { p: 2, n: 1 });
        let b = genetic_basis(&c2, 512).unwrap();
        let pb = product_genetic_basis(&c2, &c2, &b, &b, 512).unwrap();
        assert_eq!(pb.len(), 4);
        let hist = pb.type_histogram();
        assert_eq!(hist[&RoquetteType::Trivial], 1);
        assert_eq!(hist[&RoquetteType::Cyclic { p: 2, n: 1 }], 3);
        let direct = genetic_basis(&direct_product(&c2, &c2, 512).unwrap(), 512).unwrap();
        assert_eq!(pb.type_histogram(), direct.type_histogram());
    }
}
