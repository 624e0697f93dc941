//! Cross-check suites: every rule of the symbolic calculus against the
//! brute-force engine, and the closed-form identities against direct
//! expansion. The CLI `verify` command runs these; the acceptance tests
//! assert on them.

use num_bigint::BigUint;

use crate::edge::{diamond, diamond_multiplicity, dihedral_power_closed_form, edge_tensor, EdgeSum};
use crate::error::{Error, Result};
use crate::expr::{build, decompose, decompose_raw, faithful_raw, parse_expr};
use crate::functor::{burnside_units_rank, dade_torsion, RankResult};
use crate::genetic::{
    centrally_diagonal_genetics, edge_decomposition_bruteforce, faithful_edges_bruteforce,
    genetic_basis, product_genetic_basis,
};
use crate::group::{make_family, Family};
use crate::roquette::RoquetteType;
use crate::subgroup::cyclic_subgroup_classes;

#[derive(Debug, Clone)]
pub struct CaseResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.pass)
    }
}

pub const SUITES: &[&str] = &[
    "diamond-table",
    "oracle-families",
    "product-basis",
    "identities",
];

pub fn run_suite(name: &str, max_order: u64) -> Result<SuiteReport> {
    match name {
        "diamond-table" => diamond_table(),
        "oracle-families" => oracle_families(max_order),
        "product-basis" => product_basis(max_order),
        "identities" => identities(max_order),
        other => Err(Error::InvalidParameter(format!(
            "unknown suite {other:?}; available: {}",
            SUITES.join(", ")
        ))),
    }
}

fn case(cases: &mut Vec<CaseResult>, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
    cases.push(CaseResult {
        name: name.into(),
        pass,
        detail: detail.into(),
    });
}

fn type_family(t: &RoquetteType) -> Family {
    match *t {
        RoquetteType::Trivial => Family::Cyclic { p: 2, n: 0 },
        RoquetteType::Cyclic { p, n } => Family::Cyclic { p, n },
        RoquetteType::Dihedral { n } => Family::Dihedral { n },
        RoquetteType::Quaternion { n } => Family::Quaternion { n },
        RoquetteType::Semidihedral { n } => Family::Semidihedral { n },
    }
}

/// All Roquette 2-group types of order ≤ 32.
pub fn small_roquette_types() -> Vec<RoquetteType> {
    let mut types = Vec::new();
    for n in 1..=5 {
        types.push(RoquetteType::Cyclic { p: 2, n });
    }
    for n in 3..=5 {
        types.push(RoquetteType::Quaternion { n });
    }
    for n in 4..=5 {
        types.push(RoquetteType::Dihedral { n });
        types.push(RoquetteType::Semidihedral { n });
    }
    types
}

/// For every ordered pair of Roquette types with both orders ≤ 32, the
/// constructively enumerated centrally diagonal genetic subgroups of the
/// concrete product must reproduce the diamond type and multiplicity.
/// The sweep builds products up to order 1024 regardless of any global
/// bound: its size is fixed by the table itself.
pub fn diamond_table() -> Result<SuiteReport> {
    let types = small_roquette_types();
    let mut cases = Vec::new();
    for &ta in &types {
        for &tb in &types {
            let a = make_family(type_family(&ta), 32)?;
            let b = make_family(type_family(&tb), 32)?;
            let bound = (a.order() * b.order()) as u64;
            let expected_type = diamond(ta, tb)?;
            let expected_count = diamond_multiplicity(ta, tb)?;
            let name = format!("{ta} ⋄ {tb}");
            match centrally_diagonal_genetics(&a, &b, bound) {
                Ok(cd) => {
                    let pass = cd.quotient_type == expected_type
                        && BigUint::from(cd.class_count) == expected_count;
                    case(
                        &mut cases,
                        name,
                        pass,
                        format!(
                            "expected {expected_count}·∂{expected_type}, found {}·∂{}",
                            cd.class_count, cd.quotient_type
                        ),
                    );
                }
                Err(e) => case(&mut cases, name, false, format!("error: {e}")),
            }
        }
    }
    Ok(SuiteReport {
        suite: "diamond-table".into(),
        cases,
    })
}

/// Built-in family expressions whose concrete groups stay within order
/// 256, used for the symbolic-vs-brute-force sweep.
pub fn oracle_expressions() -> Vec<&'static str> {
    vec![
        "C2", "C4", "C8", "C16", "C32", "C64", "C128", "C256", //
        "D8", "D16", "D32", "D64", "D128", "D256", //
        "Q8", "Q16", "Q32", "Q64", //
        "SD16", "SD32", "SD64", //
        "E2,2", "E2,3", "E2,4", //
        "D8 x D8", "Q8 x Q8", "C4 x D16", "D8 x Q8", "D8 x C4", "C2 x D16", "C4 x Q8", //
        "D8 * Q8", "D8 * D8", "Q8 * Q8", "SD16 * SD16", //
        "C3", "C9", "C27", "C81", "C243", //
        "E3,2", "E3,3", "X+3", "X-3", //
        "C3 x C9", "X+3 x C3", "X+3 * X+3", "X-3 * C9", //
        "C5", "C25", "E5,2", "X+5", "X-5", //
    ]
}

/// Canonical symbolic decomposition against the brute-force basis, for
/// every oracle expression.
pub fn oracle_families(max_order: u64) -> Result<SuiteReport> {
    let mut cases = Vec::new();
    for src in oracle_expressions() {
        let expr = parse_expr(src)?;
        let symbolic = decompose(&expr)?;
        let group = build(&expr, max_order)?;
        let brute = edge_decomposition_bruteforce(&group, max_order)?.canonical_form();
        let pass = symbolic == brute;
        case(
            &mut cases,
            src,
            pass,
            format!("symbolic {symbolic} vs brute force {brute}"),
        );
    }
    Ok(SuiteReport {
        suite: "oracle-families".into(),
        cases,
    })
}

/// The lifted product basis against a directly computed basis of the
/// product, on products of order ≤ 64.
pub fn product_basis(max_order: u64) -> Result<SuiteReport> {
    let pairs = [
        ("C2", "C2"),
        ("D8", "C4"),
        ("D8", "D8"),
        ("Q8", "Q8"),
    ];
    let mut cases = Vec::new();
    for (sa, sb) in pairs {
        let a = build(&parse_expr(sa)?, max_order)?;
        let b = build(&parse_expr(sb)?, max_order)?;
        let ba = genetic_basis(&a, max_order)?;
        let bb = genetic_basis(&b, max_order)?;
        let lifted = product_genetic_basis(&a, &b, &ba, &bb, max_order)?;
        let direct = genetic_basis(lifted.parent(), max_order)?;
        let classes = cyclic_subgroup_classes(lifted.parent(), max_order)?;
        let pass = lifted.type_histogram() == direct.type_histogram() && lifted.len() == classes;
        case(
            &mut cases,
            format!("{sa} x {sb}"),
            pass,
            format!(
                "lifted {:?} ({} records), direct {:?}, cyclic classes {}",
                lifted.type_histogram(),
                lifted.len(),
                direct.type_histogram(),
                classes
            ),
        );
    }
    Ok(SuiteReport {
        suite: "product-basis".into(),
        cases,
    })
}

/// Closed-form and algebraic identities, plus a few concrete spot
/// checks of the faithful part.
pub fn identities(max_order: u64) -> Result<SuiteReport> {
    let mut cases = Vec::new();
    let c = |n| RoquetteType::Cyclic { p: 2, n };
    let q = |n| RoquetteType::Quaternion { n };
    let d = |n| RoquetteType::Dihedral { n };
    let sd = |n| RoquetteType::Semidihedral { n };

    // ∂C₂ is the unit
    {
        let raw = decompose_raw(&parse_expr("D8")?)?;
        let five = EdgeSum::single(2, RoquetteType::Trivial, 5)?;
        case(
            &mut cases,
            "∂C2 collapse: D8 ≅ 5·1",
            raw.iso_equal(&five)?,
            format!("{raw} vs {five}"),
        );
    }

    // the Q₈ edge is an involution and permutes the other edges
    case(
        &mut cases,
        "∂Q8 × ∂Q8 = 1",
        edge_tensor(q(3), q(3))? == EdgeSum::unit(2),
        String::new(),
    );
    for n in 4..=6 {
        let rows = [
            (d(n), q(n)),
            (q(n), d(n)),
            (sd(n), sd(n)),
            (c(n), c(n)),
        ];
        for (input, expect) in rows {
            let got = edge_tensor(q(3), input)?;
            let want = EdgeSum::single(2, expect, 1)?.canonical_form();
            case(
                &mut cases,
                format!("∂Q8 × ∂{input} = ∂{expect}"),
                got == want,
                format!("{got}"),
            );
        }
    }

    // cyclic edge rule at odd primes
    {
        let got = edge_tensor(RoquetteType::Cyclic { p: 3, n: 1 }, RoquetteType::Cyclic { p: 3, n: 1 })?;
        let want = EdgeSum::single(3, RoquetteType::Cyclic { p: 3, n: 1 }, 2)?;
        case(&mut cases, "∂C3 × ∂C3 = 2·∂C3", got == want, format!("{got}"));
        let got = edge_tensor(RoquetteType::Cyclic { p: 3, n: 2 }, RoquetteType::Cyclic { p: 3, n: 3 })?;
        let want = EdgeSum::single(3, RoquetteType::Cyclic { p: 3, n: 3 }, 6)?;
        case(&mut cases, "∂C9 × ∂C27 = 6·∂C27", got == want, format!("{got}"));
    }

    // the two extraspecial groups of order p³ agree in the category
    for p in [3u64, 5] {
        let a = decompose(&parse_expr(&format!("X+{p}"))?)?;
        let b = decompose(&parse_expr(&format!("X-{p}"))?)?;
        case(
            &mut cases,
            format!("X+{p} ≅ X-{p}"),
            a.iso_equal(&b)?,
            format!("{a} vs {b}"),
        );
    }

    // ... while D₈ and Q₈ do not
    {
        let a = decompose(&parse_expr("D8")?)?;
        let b = decompose(&parse_expr("Q8")?)?;
        case(
            &mut cases,
            "D8 ≇ Q8",
            !a.iso_equal(&b)?,
            format!("{a} vs {b}"),
        );
    }

    // dihedral power closed form against direct expansion
    for m in 3..=5u32 {
        for n in 1..=3u32 {
            let (raw, _) = dihedral_power_closed_form(m, n)?;
            let direct = decompose_raw(&parse_expr(&format!("D{}", 1u64 << m))?)?.power_raw(n)?;
            case(
                &mut cases,
                format!("closed form (D{})^{n}", 1u64 << m),
                raw == direct,
                format!("{raw} vs {direct}"),
            );
        }
    }

    // cancellation through canonical uniqueness
    {
        let x = decompose(&parse_expr("Q16")?)?;
        let y = decompose(&parse_expr("SD16")?)?;
        let z = decompose(&parse_expr("D8 x D16")?)?;
        let xz = x.direct_sum(&z)?;
        let yz = y.direct_sum(&z)?;
        case(
            &mut cases,
            "cancellation: x⊕z = y⊕z iff x = y",
            !xz.iso_equal(&yz)? && xz.sub_exact(&z.canonical_form())?.iso_equal(&x)?,
            format!("{xz} vs {yz}"),
        );
    }

    // edges of extraspecial central products
    for (src, expect) in [
        ("D8 * D8", EdgeSum::single(2, c(1), 1)?),
        ("D8 * D8 * D8", EdgeSum::single(2, c(1), 1)?),
        ("Q8 * Q8", EdgeSum::single(2, c(1), 1)?),
        ("Q8 * Q8 * Q8", EdgeSum::single(2, q(3), 1)?),
        ("D8 * Q8", EdgeSum::single(2, q(3), 1)?),
    ] {
        let got = faithful_raw(&parse_expr(src)?)?;
        case(
            &mut cases,
            format!("∂({src})"),
            got.iso_equal(&expect)?,
            format!("{got}"),
        );
    }

    // concrete faithful parts at order ≤ 64
    for (src, expect) in [
        ("E2,2", EdgeSum::empty(2)),
        ("D8 * D8", EdgeSum::single(2, c(1), 1)?),
        ("D8 * Q8", EdgeSum::single(2, q(3), 1)?),
    ] {
        let g = build(&parse_expr(src)?, max_order)?;
        let brute = faithful_edges_bruteforce(&g, max_order)?;
        case(
            &mut cases,
            format!("brute-force ∂({src})"),
            brute.iso_equal(&expect)?,
            format!("{brute}"),
        );
    }

    // Dade torsion of semidihedral central powers, symbolic
    for (m, n) in [(4u32, 1u32), (4, 2), (5, 2), (4, 3)] {
        let src = format!("SD{} ^* {n}", 1u64 << m);
        let ev = dade_torsion(&decompose_raw(&parse_expr(&src)?)?);
        let expect = BigUint::from(2u32).pow((n - 1) * (m - 3));
        let pass = ev.is_total() && ev.known().torsion.get(&2) == Some(&expect);
        case(
            &mut cases,
            format!("dade torsion of {src} = (Z/2)^{expect}"),
            pass,
            format!("{ev}"),
        );
    }
    {
        let ev = dade_torsion(&decompose_raw(&parse_expr("SD16 * SD32")?)?);
        let pass = ev.is_total() && ev.known().torsion.get(&2) == Some(&BigUint::one());
        case(&mut cases, "dade torsion of SD16 * SD32 = Z/2", pass, format!("{ev}"));
    }

    // Burnside unit ranks
    for (src, expect) in [("D8", 5u64), ("D16", 6), ("D8 x D8", 25)] {
        let got = burnside_units_rank(&decompose_raw(&parse_expr(src)?)?)?;
        case(
            &mut cases,
            format!("burnside rank of {src} = {expect}"),
            got == RankResult::Exact(BigUint::from(expect)),
            format!("{got}"),
        );
    }

    // total multiplicity against conjugacy classes of cyclic subgroups
    {
        let expr = parse_expr("D16 x Q8")?;
        let symbolic = decompose(&expr)?.total_multiplicity();
        let classes = cyclic_subgroup_classes(&build(&expr, max_order)?, max_order)?;
        case(
            &mut cases,
            "rank(D16 x Q8) = cyclic subgroup classes",
            symbolic == BigUint::from(classes),
            format!("{symbolic} vs {classes}"),
        );
    }

    Ok(SuiteReport {
        suite: "identities".into(),
        cases,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_suite_is_green() {
        let report = identities(512).unwrap();
        for c in report.failures() {
            eprintln!("FAIL {}: {}", c.name, c.detail);
        }
        assert!(report.passed());
    }

    #[test]
    fn product_basis_suite_is_green() {
        let report = product_basis(512).unwrap();
        for c in report.failures() {
            eprintln!("FAIL {}: {}", c.name, c.detail);
        }
        assert!(report.passed());
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(run_suite("nope", 512).is_err());
    }
}
