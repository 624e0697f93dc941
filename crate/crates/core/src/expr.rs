//! A small expression language over the built-in families.
//!
//! Atoms name groups by their order: `C4`, `D16`, `Q8`, `SD32`, `E3,2`,
//! `X+5`, `X-3`, `1`. Binary `x` is the direct product, binary `*` the
//! central product, postfix `^n` the direct power, `^*n` the central
//! power, and `.modZ` the quotient by the unique central subgroup of
//! order p. Whitespace is ignored; `x` is lowercase, family letters are
//! uppercase.
//!
//! Every expression can be realized two ways: `build` produces the
//! concrete multiplication table, `decompose_raw` the symbolic edge sum.
//! The two routes are checked against each other in the test suites.

use num_bigint::BigUint;
use num_traits::One;

use crate::edge::EdgeSum;
use crate::error::{Error, Result};
use crate::group::{direct_product, is_prime, make_family, Family, FiniteGroup};
use crate::roquette::RoquetteType;
use crate::subgroup::{central_order_p_subgroups, central_products, fingerprint, quotient_group};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupExpr {
    One,
    Atom(Family),
    Product(Box<GroupExpr>, Box<GroupExpr>),
    CentralProduct(Box<GroupExpr>, Box<GroupExpr>),
    Power(Box<GroupExpr>, u32),
    CentralPower(Box<GroupExpr>, u32),
    ModZ(Box<GroupExpr>),
}

// ---------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn peek_raw(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.pos).copied();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn parse_err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self
            .peek_raw()
            .map(|c| c.is_ascii_digit())
            .unwrap_or(false)
        {
            self.pos += 1;
        }
        if start == self.pos {
            return self.parse_err("expected a number");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("digits are utf8")
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "number too large".into(),
            })
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'x') => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = GroupExpr::Product(Box::new(acc), Box::new(rhs));
                }
                Some(b'*') => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = GroupExpr::CentralProduct(Box::new(acc), Box::new(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<GroupExpr> {
        let mut acc = self.atom()?;
        loop {
            match self.peek() {
                Some(b'^') => {
                    self.bump();
                    let central = self.peek() == Some(b'*');
                    if central {
                        self.bump();
                    }
                    let pos = self.pos;
                    let n = self.number()?;
                    let n = u32::try_from(n).map_err(|_| Error::Parse {
                        pos,
                        msg: "exponent too large".into(),
                    })?;
                    acc = if central {
                        if n == 0 {
                            return Err(Error::Semantic {
                                pos,
                                msg: "central power needs at least one factor".into(),
                            });
                        }
                        GroupExpr::CentralPower(Box::new(acc), n)
                    } else {
                        GroupExpr::Power(Box::new(acc), n)
                    };
                }
                Some(b'.') => {
                    self.bump();
                    for want in b"modZ" {
                        if self.bump() != Some(*want) {
                            return self.parse_err("expected `modZ` after `.`");
                        }
                    }
                    acc = GroupExpr::ModZ(Box::new(acc));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn atom(&mut self) -> Result<GroupExpr> {
        let pos = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.parse_err("expected `)`");
                }
                self.bump();
                Ok(inner)
            }
            Some(b'1') => {
                self.bump();
                if self
                    .peek_raw()
                    .map(|c| c.is_ascii_digit())
                    .unwrap_or(false)
                {
                    return self.parse_err("group atoms start with a family letter");
                }
                Ok(GroupExpr::One)
            }
            Some(b'C') => {
                self.bump();
                let order = self.number()?;
                cyclic_atom(order, pos)
            }
            Some(b'D') => {
                self.bump();
                let order = self.number()?;
                two_group_atom(order, pos, 3, |n| Family::Dihedral { n }, "dihedral")
            }
            Some(b'Q') => {
                self.bump();
                let order = self.number()?;
                two_group_atom(order, pos, 3, |n| Family::Quaternion { n }, "quaternion")
            }
            Some(b'S') => {
                self.bump();
                if self.bump() != Some(b'D') {
                    return self.parse_err("expected `SD`");
                }
                let order = self.number()?;
                two_group_atom(order, pos, 4, |n| Family::Semidihedral { n }, "semidihedral")
            }
            Some(b'E') => {
                self.bump();
                let p = self.number()?;
                if self.peek() != Some(b',') {
                    return self.parse_err("expected `,` in elementary abelian atom");
                }
                self.bump();
                let rank = self.number()?;
                if !is_prime(p) {
                    return Err(Error::Semantic {
                        pos,
                        msg: format!("{p} is not prime"),
                    });
                }
                let rank = u32::try_from(rank).map_err(|_| Error::Semantic {
                    pos,
                    msg: "rank too large".into(),
                })?;
                Ok(GroupExpr::Atom(Family::ElementaryAbelian { p, rank }))
            }
            Some(b'X') => {
                self.bump();
                let plus = match self.bump() {
                    Some(b'+') => true,
                    Some(b'-') => false,
                    _ => return self.parse_err("expected `+` or `-` after `X`"),
                };
                let p = self.number()?;
                if !is_prime(p) {
                    return Err(Error::Semantic {
                        pos,
                        msg: format!("{p} is not prime"),
                    });
                }
                Ok(GroupExpr::Atom(Family::Extraspecial { p, plus }))
            }
            Some(c) => self.parse_err(format!("unexpected `{}`", c as char)),
            None => self.parse_err("unexpected end of input"),
        }
    }
}

fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            break;
        }
        p += 1;
    }
    if n % p != 0 {
        p = n;
    }
    let mut m = n;
    let mut k = 0;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

fn cyclic_atom(order: u64, pos: usize) -> Result<GroupExpr> {
    if order == 1 {
        return Ok(GroupExpr::One);
    }
    let (p, n) = prime_power(order).ok_or_else(|| Error::Semantic {
        pos,
        msg: format!("{order} is not a prime power"),
    })?;
    Ok(GroupExpr::Atom(Family::Cyclic { p, n }))
}

fn two_group_atom(
    order: u64,
    pos: usize,
    min_n: u32,
    make: impl Fn(u32) -> Family,
    kind: &str,
) -> Result<GroupExpr> {
    match prime_power(order) {
        Some((2, n)) if n >= min_n => Ok(GroupExpr::Atom(make(n))),
        _ => Err(Error::Semantic {
            pos,
            msg: format!("no {kind} group of order {order} here (minimum {})", 1u64 << min_n),
        }),
    }
}

/// Parses an expression, requiring the whole input to be consumed.
pub fn parse_expr(text: &str) -> Result<GroupExpr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.parse_err("trailing input");
    }
    Ok(e)
}

// ---------------------------------------------------------------------
// Structural information
// ---------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct ExprInfo {
    pub prime: Option<u64>,
    pub order: BigUint,
    pub center_order: BigUint,
    pub center_cyclic: bool,
}

impl ExprInfo {
    fn trivial() -> ExprInfo {
        ExprInfo {
            prime: None,
            order: BigUint::one(),
            center_order: BigUint::one(),
            center_cyclic: true,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }
}

fn merge_primes(a: Option<u64>, b: Option<u64>) -> Result<Option<u64>> {
    match (a, b) {
        (Some(p), Some(q)) if p != q => Err(Error::PrimeMismatch { left: p, right: q }),
        (Some(p), _) => Ok(Some(p)),
        (_, q) => Ok(q),
    }
}

fn family_info(f: &Family) -> ExprInfo {
    let big = |p: u64, k: u32| BigUint::from(p).pow(k);
    match *f {
        Family::Cyclic { p, n } => ExprInfo {
            prime: (n > 0).then_some(p),
            order: big(p, n),
            center_order: big(p, n),
            center_cyclic: true,
        },
        Family::Dihedral { n } | Family::Quaternion { n } | Family::Semidihedral { n } => {
            ExprInfo {
                prime: Some(2),
                order: big(2, n),
                center_order: BigUint::from(2u32),
                center_cyclic: true,
            }
        }
        Family::ElementaryAbelian { p, rank } => ExprInfo {
            prime: (rank > 0).then_some(p),
            order: big(p, rank),
            center_order: big(p, rank),
            center_cyclic: rank <= 1,
        },
        Family::Extraspecial { p, .. } => ExprInfo {
            prime: Some(p),
            order: big(p, 3),
            center_order: BigUint::from(p),
            center_cyclic: true,
        },
    }
}

/// How a central product sits relative to the prime: either some factor
/// has center of order exactly p (the decomposable case) or both centers
/// are strictly larger.
enum CentralCase {
    MinIsP,
    BothLarger,
}

fn central_case(a: &ExprInfo, b: &ExprInfo, p: u64) -> Result<CentralCase> {
    if a.is_trivial() || b.is_trivial() {
        return Err(Error::NoCentralSubgroup);
    }
    if !a.center_cyclic || !b.center_cyclic {
        return Err(Error::NoUniqueCentralSubgroup);
    }
    let p = BigUint::from(p);
    if a.center_order == p || b.center_order == p {
        Ok(CentralCase::MinIsP)
    } else {
        Ok(CentralCase::BothLarger)
    }
}

/// Structural invariants of the group an expression denotes, without
/// building it. `ModZ` nodes are rewritten away first.
pub fn expr_info(e: &GroupExpr) -> Result<ExprInfo> {
    match e {
        GroupExpr::One => Ok(ExprInfo::trivial()),
        GroupExpr::Atom(f) => Ok(family_info(f)),
        GroupExpr::Product(a, b) => {
            let (ia, ib) = (expr_info(a)?, expr_info(b)?);
            Ok(ExprInfo {
                prime: merge_primes(ia.prime, ib.prime)?,
                order: &ia.order * &ib.order,
                center_order: &ia.center_order * &ib.center_order,
                center_cyclic: ia.center_cyclic
                    && ib.center_cyclic
                    && (ia.center_order.is_one() || ib.center_order.is_one()),
            })
        }
        GroupExpr::CentralProduct(a, b) => {
            let (ia, ib) = (expr_info(a)?, expr_info(b)?);
            let prime = merge_primes(ia.prime, ib.prime)?;
            let p = prime.ok_or(Error::NoCentralSubgroup)?;
            central_case(&ia, &ib, p)?;
            let pbig = BigUint::from(p);
            Ok(ExprInfo {
                prime,
                order: &ia.order * &ib.order / &pbig,
                center_cyclic: ia.center_order == pbig || ib.center_order == pbig,
                center_order: &ia.center_order * &ib.center_order / &pbig,
            })
        }
        GroupExpr::Power(a, n) => {
            let ia = expr_info(a)?;
            if *n == 0 || ia.is_trivial() {
                return Ok(ExprInfo {
                    prime: ia.prime,
                    ..ExprInfo::trivial()
                });
            }
            Ok(ExprInfo {
                prime: ia.prime,
                order: ia.order.pow(*n),
                center_order: ia.center_order.pow(*n),
                center_cyclic: *n == 1 && ia.center_cyclic,
            })
        }
        GroupExpr::CentralPower(a, n) => expr_info(&unfold_central_power(a, *n)?),
        GroupExpr::ModZ(a) => expr_info(&mod_z_rewrite(a)?),
    }
}

pub fn expr_prime(e: &GroupExpr) -> Result<u64> {
    Ok(expr_info(e)?.prime.unwrap_or(2))
}

fn unfold_central_power(a: &GroupExpr, n: u32) -> Result<GroupExpr> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "central power needs at least one factor".into(),
        ));
    }
    let mut acc = a.clone();
    for _ in 1..n {
        acc = GroupExpr::CentralProduct(Box::new(acc), Box::new(a.clone()));
    }
    Ok(acc)
}

/// Rewrites `e / Z` as a plain expression, where Z is the unique central
/// subgroup of order p. Fails when no such subgroup exists.
pub fn mod_z_rewrite(e: &GroupExpr) -> Result<GroupExpr> {
    use GroupExpr::*;
    match e {
        One => Err(Error::NoCentralSubgroup),
        Atom(f) => match *f {
            Family::Cyclic { n: 0, .. } => Err(Error::NoCentralSubgroup),
            Family::Cyclic { p, n: 1 } => {
                let _ = p;
                Ok(One)
            }
            Family::Cyclic { p, n } => Ok(Atom(Family::Cyclic { p, n: n - 1 })),
            Family::Dihedral { n: 3 } | Family::Quaternion { n: 3 } => {
                Ok(Atom(Family::ElementaryAbelian { p: 2, rank: 2 }))
            }
            Family::Dihedral { n } | Family::Quaternion { n } | Family::Semidihedral { n } => {
                Ok(Atom(Family::Dihedral { n: n - 1 }))
            }
            Family::ElementaryAbelian { rank: 0, .. } => Err(Error::NoCentralSubgroup),
            Family::ElementaryAbelian { p, rank: 1 } => {
                let _ = p;
                Ok(One)
            }
            Family::ElementaryAbelian { .. } => Err(Error::NoUniqueCentralSubgroup),
            Family::Extraspecial { p, .. } => {
                if p == 2 {
                    Ok(Atom(Family::ElementaryAbelian { p: 2, rank: 2 }))
                } else {
                    Ok(Atom(Family::ElementaryAbelian { p, rank: 2 }))
                }
            }
        },
        Product(a, b) => {
            let (ia, ib) = (expr_info(a)?, expr_info(b)?);
            if ia.is_trivial() {
                mod_z_rewrite(b)
            } else if ib.is_trivial() {
                mod_z_rewrite(a)
            } else {
                Err(Error::NoUniqueCentralSubgroup)
            }
        }
        CentralProduct(a, b) => {
            let (ia, ib) = (expr_info(a)?, expr_info(b)?);
            let p = merge_primes(ia.prime, ib.prime)?.ok_or(Error::NoCentralSubgroup)?;
            match central_case(&ia, &ib, p)? {
                CentralCase::MinIsP => Ok(Product(
                    Box::new(mod_z_rewrite(a)?),
                    Box::new(mod_z_rewrite(b)?),
                )),
                CentralCase::BothLarger => Err(Error::CentralProductUndefined(
                    "both centers exceed order p".into(),
                )),
            }
        }
        Power(a, n) => {
            let ia = expr_info(a)?;
            match n {
                0 => Err(Error::NoCentralSubgroup),
                1 => mod_z_rewrite(a),
                _ if ia.is_trivial() => Err(Error::NoCentralSubgroup),
                _ => Err(Error::NoUniqueCentralSubgroup),
            }
        }
        CentralPower(a, n) => mod_z_rewrite(&unfold_central_power(a, *n)?),
        ModZ(a) => mod_z_rewrite(&mod_z_rewrite(a)?),
    }
}

// ---------------------------------------------------------------------
// Symbolic decomposition
// ---------------------------------------------------------------------

fn family_decompose_raw(f: &Family, prime: u64) -> Result<EdgeSum> {
    let mut sum = EdgeSum::empty(prime);
    let one = BigUint::one();
    match *f {
        Family::Cyclic { p, n } => {
            sum.add(RoquetteType::Trivial, &one)?;
            for l in 1..=n {
                sum.add(RoquetteType::Cyclic { p, n: l }, &one)?;
            }
        }
        Family::Dihedral { n } => {
            sum.add(RoquetteType::Trivial, &one)?;
            sum.add(RoquetteType::Cyclic { p: 2, n: 1 }, &BigUint::from(4u32))?;
            for l in 4..=n {
                sum.add(RoquetteType::Dihedral { n: l }, &one)?;
            }
        }
        Family::Quaternion { n } => {
            // Q₈/Z is the Klein group; Q_{2^n}/Z is dihedral for n ≥ 4.
            sum = if n == 3 {
                family_decompose_raw(&Family::ElementaryAbelian { p: 2, rank: 2 }, prime)?
            } else {
                family_decompose_raw(&Family::Dihedral { n: n - 1 }, prime)?
            };
            sum.add(RoquetteType::Quaternion { n }, &one)?;
        }
        Family::Semidihedral { n } => {
            sum = family_decompose_raw(&Family::Dihedral { n: n - 1 }, prime)?;
            sum.add(RoquetteType::Semidihedral { n }, &one)?;
        }
        Family::ElementaryAbelian { p, rank } => {
            sum.add(RoquetteType::Trivial, &one)?;
            if rank > 0 {
                let count = (BigUint::from(p).pow(rank) - &one) / BigUint::from(p - 1);
                sum.add(RoquetteType::Cyclic { p, n: 1 }, &count)?;
            }
        }
        Family::Extraspecial { p, plus } => {
            if p == 2 {
                let base = if plus {
                    Family::Dihedral { n: 3 }
                } else {
                    Family::Quaternion { n: 3 }
                };
                return family_decompose_raw(&base, prime);
            }
            sum.add(RoquetteType::Trivial, &one)?;
            sum.add(RoquetteType::Cyclic { p, n: 1 }, &BigUint::from(p + 2))?;
        }
    }
    Ok(sum)
}

fn family_faithful_raw(f: &Family, prime: u64) -> Result<EdgeSum> {
    let single = |t| EdgeSum::from_terms(prime, [(t, BigUint::one())]);
    match *f {
        Family::Cyclic { n: 0, .. } => Ok(EdgeSum::unit(prime)),
        Family::Cyclic { p, n } => single(RoquetteType::Cyclic { p, n }),
        Family::Dihedral { n: 3 } => single(RoquetteType::Cyclic { p: 2, n: 1 }),
        Family::Dihedral { n } => single(RoquetteType::Dihedral { n }),
        Family::Quaternion { n } => single(RoquetteType::Quaternion { n }),
        Family::Semidihedral { n } => single(RoquetteType::Semidihedral { n }),
        Family::ElementaryAbelian { rank: 0, .. } => Ok(EdgeSum::unit(prime)),
        Family::ElementaryAbelian { p, rank: 1 } => single(RoquetteType::Cyclic { p, n: 1 }),
        Family::ElementaryAbelian { .. } => Ok(EdgeSum::empty(prime)),
        Family::Extraspecial { p: 2, plus: true } => single(RoquetteType::Cyclic { p: 2, n: 1 }),
        Family::Extraspecial { p: 2, plus: false } => single(RoquetteType::Quaternion { n: 3 }),
        Family::Extraspecial { p, .. } => single(RoquetteType::Cyclic { p, n: 1 }),
    }
}

/// The raw faithful part ∂(e): the sub-sum of the decomposition coming
/// from basis records with S ∩ Z(P) = 1.
pub fn faithful_raw(e: &GroupExpr) -> Result<EdgeSum> {
    let prime = expr_prime(e)?;
    match e {
        GroupExpr::One => Ok(EdgeSum::unit(prime)),
        GroupExpr::Atom(f) => family_faithful_raw(f, prime),
        GroupExpr::Product(a, b) => {
            let (ia, ib) = (expr_info(a)?, expr_info(b)?);
            if ia.is_trivial() {
                faithful_raw(b)
            } else if ib.is_trivial() {
                faithful_raw(a)
            } else {
                // the center of the product is non-cyclic
                Ok(EdgeSum::empty(prime))
            }
        }
        GroupExpr::CentralProduct(a, b) => {
            let (ia, ib) = (expr_info(a)?, expr_info(b)?);
            match central_case(&ia, &ib, prime)? {
                CentralCase::BothLarger => Ok(EdgeSum::empty(prime)),
                CentralCase::MinIsP => {
                    // the p − 1 gluings share one edge: divide the product
                    let glued = faithful_raw(a)?.tensor_raw(&faithful_raw(b)?)?;
                    glued.div_exact(prime - 1)
                }
            }
        }
        GroupExpr::Power(a, n) => {
            let ia = expr_info(a)?;
            match n {
                0 => Ok(EdgeSum::unit(prime)),
                1 => faithful_raw(a),
                _ if ia.is_trivial() => Ok(EdgeSum::unit(prime)),
                _ => Ok(EdgeSum::empty(prime)),
            }
        }
        GroupExpr::CentralPower(a, n) => faithful_raw(&unfold_central_power(a, *n)?),
        GroupExpr::ModZ(a) => faithful_raw(&mod_z_rewrite(a)?),
    }
}

/// The raw symbolic decomposition of the group an expression denotes,
/// with ∂C₂ terms kept as the family formulas print them.
pub fn decompose_raw(e: &GroupExpr) -> Result<EdgeSum> {
    let prime = expr_prime(e)?;
    match e {
        GroupExpr::One => Ok(EdgeSum::unit(prime)),
        GroupExpr::Atom(f) => family_decompose_raw(f, prime),
        GroupExpr::Product(a, b) => decompose_raw(a)?.tensor_raw(&decompose_raw(b)?),
        GroupExpr::CentralProduct(a, b) => {
            let (ia, ib) = (expr_info(a)?, expr_info(b)?);
            match central_case(&ia, &ib, prime)? {
                CentralCase::BothLarger => Err(Error::CentralProductUndefined(
                    "both centers exceed order p; the faithful part is zero but the \
                     remainder has no symbolic form here"
                        .into(),
                )),
                CentralCase::MinIsP => {
                    let faithful = faithful_raw(e)?;
                    let quotient = GroupExpr::Product(
                        Box::new(mod_z_rewrite(a)?),
                        Box::new(mod_z_rewrite(b)?),
                    );
                    faithful.direct_sum_raw(&decompose_raw(&quotient)?)
                }
            }
        }
        GroupExpr::Power(a, n) => decompose_raw(a)?.power_raw(*n),
        GroupExpr::CentralPower(a, n) => decompose_raw(&unfold_central_power(a, *n)?),
        GroupExpr::ModZ(a) => decompose_raw(&mod_z_rewrite(a)?),
    }
}

/// Canonical symbolic decomposition.
pub fn decompose(e: &GroupExpr) -> Result<EdgeSum> {
    Ok(decompose_raw(e)?.canonical_form())
}

// ---------------------------------------------------------------------
// Concrete realization
// ---------------------------------------------------------------------

fn build_central_product(
    g: &FiniteGroup,
    h: &FiniteGroup,
    max_order: u64,
) -> Result<FiniteGroup> {
    if central_order_p_subgroups(g).len() != 1 || central_order_p_subgroups(h).len() != 1 {
        return Err(Error::NoUniqueCentralSubgroup);
    }
    let glued = central_products(g, h, max_order)?;
    let first = fingerprint(&glued[0].1);
    if glued.iter().any(|(_, grp)| fingerprint(grp) != first) {
        return Err(Error::AmbiguousGluing(format!(
            "{} gluings with differing invariants",
            glued.len()
        )));
    }
    Ok(glued.into_iter().next().expect("at least one gluing").1)
}

/// Builds the concrete group for an expression. Central products with
/// several gluings are accepted only when all gluings share the same
/// invariant fingerprint.
pub fn build(e: &GroupExpr, max_order: u64) -> Result<FiniteGroup> {
    let prime = expr_prime(e)?;
    match e {
        GroupExpr::One => make_family(Family::Cyclic { p: prime, n: 0 }, max_order),
        GroupExpr::Atom(f) => make_family(*f, max_order),
        GroupExpr::Product(a, b) => {
            direct_product(&build(a, max_order)?, &build(b, max_order)?, max_order)
        }
        GroupExpr::CentralProduct(a, b) => {
            build_central_product(&build(a, max_order)?, &build(b, max_order)?, max_order)
        }
        GroupExpr::Power(a, n) => {
            let mut acc = make_family(Family::Cyclic { p: prime, n: 0 }, max_order)?;
            if *n > 0 {
                let base = build(a, max_order)?;
                acc = base.clone();
                for _ in 1..*n {
                    acc = direct_product(&acc, &base, max_order)?;
                }
            }
            Ok(acc)
        }
        GroupExpr::CentralPower(a, n) => {
            if *n == 0 {
                return Err(Error::InvalidParameter(
                    "central power needs at least one factor".into(),
                ));
            }
            let base = build(a, max_order)?;
            let mut acc = base.clone();
            for _ in 1..*n {
                acc = build_central_product(&acc, &base, max_order)?;
            }
            Ok(acc)
        }
        GroupExpr::ModZ(a) => {
            let g = build(a, max_order)?;
            let zs = central_order_p_subgroups(&g);
            if g.is_trivial() {
                return Err(Error::NoCentralSubgroup);
            }
            if zs.len() != 1 {
                return Err(Error::NoUniqueCentralSubgroup);
            }
            let (q, _) = quotient_group(&g, &zs[0])?;
            Ok(q)
        }
    }
}

impl std::fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupExpr::One => write!(f, "1"),
            GroupExpr::Atom(fam) => match *fam {
                Family::Cyclic { p, n } => write!(f, "C{}", (p as u128).pow(n)),
                Family::Dihedral { n } => write!(f, "D{}", 1u128 << n),
                Family::Quaternion { n } => write!(f, "Q{}", 1u128 << n),
                Family::Semidihedral { n } => write!(f, "SD{}", 1u128 << n),
                Family::ElementaryAbelian { p, rank } => write!(f, "E{p},{rank}"),
                Family::Extraspecial { p, plus } => {
                    write!(f, "X{}{p}", if plus { "+" } else { "-" })
                }
            },
            GroupExpr::Product(a, b) => write!(f, "({a} x {b})"),
            GroupExpr::CentralProduct(a, b) => write!(f, "({a} * {b})"),
            GroupExpr::Power(a, n) => write!(f, "{a}^{n}"),
            GroupExpr::CentralPower(a, n) => write!(f, "{a}^*{n}"),
            GroupExpr::ModZ(a) => write!(f, "{a}.modZ"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roquette::RoquetteType::*;

    fn parse(s: &str) -> GroupExpr {
        parse_expr(s).unwrap()
    }

    #[test]
    fn grammar_accepts_the_usual_forms() {
        assert_eq!(
            parse("D16 x Q8"),
            GroupExpr::Product(
                Box::new(GroupExpr::Atom(Family::Dihedral { n: 4 })),
                Box::new(GroupExpr::Atom(Family::Quaternion { n: 3 })),
            )
        );
        assert_eq!(
            parse("SD16 ^* 2"),
            GroupExpr::CentralPower(Box::new(GroupExpr::Atom(Family::Semidihedral { n: 4 })), 2)
        );
        assert_eq!(
            parse(" ( C4 x D16 ) ^ 2 "),
            parse("(C4xD16)^2"),
        );
        assert_eq!(parse("C1"), GroupExpr::One);
        assert_eq!(
            parse("Q8.modZ"),
            GroupExpr::ModZ(Box::new(GroupExpr::Atom(Family::Quaternion { n: 3 })))
        );
        assert_eq!(
            parse("E3,2 x X+3"),
            GroupExpr::Product(
                Box::new(GroupExpr::Atom(Family::ElementaryAbelian { p: 3, rank: 2 })),
                Box::new(GroupExpr::Atom(Family::Extraspecial { p: 3, plus: true })),
            )
        );
    }

    #[test]
    fn grammar_rejects_bad_atoms() {
        assert!(matches!(parse_expr("SD8"), Err(Error::Semantic { .. })));
        assert!(matches!(parse_expr("Q4"), Err(Error::Semantic { .. })));
        assert!(matches!(parse_expr("D4"), Err(Error::Semantic { .. })));
        assert!(matches!(parse_expr("C6"), Err(Error::Semantic { .. })));
        assert!(matches!(parse_expr("E4,2"), Err(Error::Semantic { .. })));
        assert!(matches!(parse_expr("D16 )"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr("D16 y D8"), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr(""), Err(Error::Parse { .. })));
        assert!(parse_expr("D8").is_ok());
    }

    #[test]
    fn prime_unification() {
        assert_eq!(expr_prime(&parse("C4 x D16")).unwrap(), 2);
        assert_eq!(expr_prime(&parse("1 x 1")).unwrap(), 2);
        assert_eq!(expr_prime(&parse("X+3 x 1")).unwrap(), 3);
        assert!(matches!(
            expr_prime(&parse("C3 x C4")),
            Err(Error::PrimeMismatch { .. })
        ));
    }

    #[test]
    fn mod_z_rewrites() {
        let cases = [
            ("C8", "C4"),
            ("C2", "1"),
            ("D8", "E2,2"),
            ("Q8", "E2,2"),
            ("D32", "D16"),
            ("Q16", "D8"),
            ("SD16", "D8"),
            ("X+3", "E3,2"),
            ("D8 * Q8", "E2,2 x E2,2"),
        ];
        for (src, expect) in cases {
            assert_eq!(
                mod_z_rewrite(&parse(src)).unwrap(),
                parse(expect),
                "{src}.modZ"
            );
        }
        assert!(mod_z_rewrite(&parse("E2,2")).is_err());
        assert!(mod_z_rewrite(&parse("D8 x D8")).is_err());
        assert!(mod_z_rewrite(&parse("1")).is_err());
    }

    #[test]
    fn golden_family_decompositions() {
        let d8 = decompose_raw(&parse("D8")).unwrap();
        assert_eq!(d8.multiplicity(&Trivial), 1u32.into());
        assert_eq!(d8.multiplicity(&Cyclic { p: 2, n: 1 }), 4u32.into());
        assert_eq!(d8.total_multiplicity(), 5u32.into());

        let q8 = decompose_raw(&parse("Q8")).unwrap();
        assert_eq!(q8.multiplicity(&Trivial), 1u32.into());
        assert_eq!(q8.multiplicity(&Cyclic { p: 2, n: 1 }), 3u32.into());
        assert_eq!(q8.multiplicity(&Quaternion { n: 3 }), 1u32.into());

        let sd16 = decompose_raw(&parse("SD16")).unwrap();
        assert_eq!(sd16.multiplicity(&Cyclic { p: 2, n: 1 }), 4u32.into());
        assert_eq!(sd16.multiplicity(&Semidihedral { n: 4 }), 1u32.into());
        assert_eq!(sd16.total_multiplicity(), 6u32.into());

        let c27 = decompose_raw(&parse("C27")).unwrap();
        assert_eq!(c27.total_multiplicity(), 4u32.into());

        let x5 = decompose_raw(&parse("X-5")).unwrap();
        assert_eq!(x5.multiplicity(&Cyclic { p: 5, n: 1 }), 7u32.into());
    }

    #[test]
    fn faithful_parts() {
        assert_eq!(
            faithful_raw(&parse("D8")).unwrap(),
            EdgeSum::single(2, Cyclic { p: 2, n: 1 }, 1).unwrap()
        );
        assert_eq!(
            faithful_raw(&parse("SD32")).unwrap(),
            EdgeSum::single(2, Semidihedral { n: 5 }, 1).unwrap()
        );
        assert!(faithful_raw(&parse("E2,2")).unwrap().is_zero());
        assert!(faithful_raw(&parse("D8 x Q8")).unwrap().is_zero());
        assert_eq!(
            faithful_raw(&parse("X+3")).unwrap(),
            EdgeSum::single(3, Cyclic { p: 3, n: 1 }, 1).unwrap()
        );
        // ∂(D₈ * Q₈) = ∂C₂ × ∂Q₈ = ∂Q₈
        assert_eq!(
            faithful_raw(&parse("D8 * Q8")).unwrap(),
            EdgeSum::single(2, Quaternion { n: 3 }, 1).unwrap()
        );
        // ∂((SD16)^{*2}) = 2·∂SD16
        assert_eq!(
            faithful_raw(&parse("SD16 ^* 2")).unwrap(),
            EdgeSum::single(2, Semidihedral { n: 4 }, 2).unwrap()
        );
        // odd p: ∂(X⁺(3) * X⁺(3)) = (∂C₃ × ∂C₃)/2 = ∂C₃
        assert_eq!(
            faithful_raw(&parse("X+3 * X+3")).unwrap(),
            EdgeSum::single(3, Cyclic { p: 3, n: 1 }, 1).unwrap()
        );
    }

    #[test]
    fn central_product_decompositions() {
        // (SD16)^{*2} = 2·∂SD16 ⊕ (D8 x D8)
        let sum = decompose_raw(&parse("SD16 ^* 2")).unwrap();
        assert_eq!(sum.multiplicity(&Semidihedral { n: 4 }), 2u32.into());
        assert_eq!(sum.multiplicity(&Trivial), 1u32.into());
        assert_eq!(sum.multiplicity(&Cyclic { p: 2, n: 1 }), 24u32.into());

        assert!(matches!(
            decompose_raw(&parse("C4 * C4")),
            Err(Error::CentralProductUndefined(_))
        ));
        assert!(matches!(
            decompose_raw(&parse("E2,2 * D8")),
            Err(Error::NoUniqueCentralSubgroup)
        ));
    }

    #[test]
    fn build_matches_expected_orders() {
        for (src, order) in [
            ("D8 x D8", 64),
            ("D8 * Q8", 32),
            ("SD16 ^* 2", 128),
            ("Q8 ^ 2", 64),
            ("X+3 * X+3", 243),
            ("C4 x D16", 64),
            ("D16.modZ", 8),
            ("1", 1),
            ("C2 ^ 0", 1),
        ] {
            let g = build(&parse(src), 512).unwrap();
            assert_eq!(g.order(), order, "{src}");
            g.check_axioms().unwrap();
        }
    }

    #[test]
    fn build_and_rewrite_agree_on_mod_z() {
        for src in ["C8", "D32", "Q16", "SD16", "Q8", "D8", "X+3", "X-3", "D8 * Q8"] {
            let e = parse(src);
            let direct = build(&GroupExpr::ModZ(Box::new(e.clone())), 512).unwrap();
            let rewritten = build(&mod_z_rewrite(&e).unwrap(), 512).unwrap();
            assert_eq!(
                crate::subgroup::fingerprint(&direct),
                crate::subgroup::fingerprint(&rewritten),
                "{src}"
            );
        }
    }

    #[test]
    fn power_grammar_binds_tighter_than_product() {
        let e = parse("D8 x C2 ^ 2");
        let info = expr_info(&e).unwrap();
        assert_eq!(info.order, 32u32.into());
    }
}
