//! Products of the generic degree-1 classes Â_{X-a} * Â_{X-b} in closed
//! form, and their projections to GL(n, F_q).

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::center::{pi_scalar, CentralVector};
use crate::conjtype::{class_size, Partition, Polypartition};
use crate::error::{invalid, Error, Result};
use crate::field::{Elem, Field};
use crate::poly::Poly;
use crate::rational::{big, int, qpow, Q};

/// I_b = {c ∈ F_q : X² + cX + b is irreducible}, computed by trial division
/// and by the discriminant / trace criterion; the two must agree and have
/// the expected size.
pub fn irreducible_quadratics_i(f: &Field, b: Elem) -> Result<BTreeSet<Elem>> {
    if b == 0 {
        return invalid("b must be nonzero");
    }
    let direct: BTreeSet<Elem> = f
        .elements()
        .filter(|&c| Poly::new(vec![b, c, 1]).is_irreducible(f).unwrap_or(false))
        .collect();
    let by_criterion: BTreeSet<Elem> = if f.p() == 2 {
        f.elements().filter(|&c| c != 0 && f.abs_trace(f.mul(b, f.inv(f.mul(c, c)))) == 1).collect()
    } else {
        let four_b = f.mul(f.from_int(4), b);
        f.elements()
            .filter(|&c| {
                let disc = f.sub(f.mul(c, c), four_b);
                disc != 0 && !f.is_square(disc)
            })
            .collect()
    };
    if direct != by_criterion {
        return Err(Error::Check("quadratic irreducibility criteria disagree".into()));
    }
    let q = f.q() as usize;
    let expected = if f.p() == 2 { q / 2 } else { q.div_ceil(2) - usize::from(f.is_square(b)) };
    if direct.len() != expected {
        return Err(Error::Check(format!("|I_b| = {} but expected {expected}", direct.len())));
    }
    Ok(direct)
}

/// Which of the seven formulas applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    OddSquare,
    OddNonSquare,
    EvenGeneric,
    OddEqual,
    EvenEqual,
    BUnit,
    BothUnit,
}

impl CaseTag {
    pub fn name(self) -> &'static str {
        match self {
            CaseTag::OddSquare => "odd-square",
            CaseTag::OddNonSquare => "odd-nonsquare",
            CaseTag::EvenGeneric => "even-generic",
            CaseTag::OddEqual => "odd-equal",
            CaseTag::EvenEqual => "even-equal",
            CaseTag::BUnit => "b-unit",
            CaseTag::BothUnit => "both-unit",
        }
    }
}

/// A classified pair (a, b). For `BUnit` the pair is stored with b = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Degree1Case {
    pub a: Elem,
    pub b: Elem,
    pub tag: CaseTag,
    /// A square root of ab when the formula uses one.
    pub delta: Option<Elem>,
}

impl Degree1Case {
    pub fn classify(f: &Field, a: Elem, b: Elem) -> Result<Degree1Case> {
        if a == 0 || b == 0 {
            return invalid("a and b must be nonzero");
        }
        let odd = f.p() != 2;
        let ab = f.mul(a, b);
        let (a, b, tag, delta) = match (a == 1, b == 1) {
            (true, true) => (a, b, CaseTag::BothUnit, None),
            (false, true) => (a, b, CaseTag::BUnit, None),
            (true, false) => (b, a, CaseTag::BUnit, None),
            (false, false) if a == b => (a, b, if odd { CaseTag::OddEqual } else { CaseTag::EvenEqual }, Some(a)),
            _ if !odd => (a, b, CaseTag::EvenGeneric, Some(f.pow(ab, f.q() as u64 / 2))),
            _ if f.is_square(ab) => (a, b, CaseTag::OddSquare, f.sqrt(ab)),
            _ => (a, b, CaseTag::OddNonSquare, None),
        };
        if let Some(d) = delta {
            debug_assert_eq!(f.mul(d, d), f.mul(a, b));
        }
        Ok(Degree1Case { a, b, tag, delta })
    }
}

fn lin(f: &Field, c: Elem, parts: &[usize]) -> Polypartition {
    Polypartition::linear(f, c, parts)
}

fn pair(f: &Field, c: Elem, d: Elem) -> Polypartition {
    lin(f, c, &[1]).union(&lin(f, d, &[1]))
}

fn quad(f: &Field, c: Elem, b: Elem) -> Result<Polypartition> {
    Polypartition::new(f, vec![(Poly::new(vec![b, c, 1]), Partition::new(vec![1])?)])
}

fn add(out: &mut BTreeMap<Polypartition, Q>, key: Polypartition, c: Q) {
    *out.entry(key).or_insert_with(Q::zero) += c;
}

/// Â_{X-a} * Â_{X-b} in the Â basis, by the seven explicit formulas.
pub fn degree1_product(f: &Field, a: Elem, b: Elem) -> Result<BTreeMap<Polypartition, Q>> {
    let case = Degree1Case::classify(f, a, b)?;
    let (a, b) = (case.a, case.b);
    let q = f.q() as i64;
    let qq = int(q);
    let mut out = BTreeMap::new();
    match case.tag {
        CaseTag::BothUnit => {
            add(&mut out, lin(f, 1, &[1, 1]), Q::from_integer(1.into()));
            add(&mut out, lin(f, 1, &[1]), &qq - int(1));
            return Ok(out);
        }
        CaseTag::BUnit => {
            add(&mut out, lin(f, a, &[1]).union(&lin(f, 1, &[1])), Q::from_integer(1.into()));
            add(&mut out, lin(f, a, &[1]), &qq - int(1));
            return Ok(out);
        }
        _ => {}
    }
    let ab = f.mul(a, b);
    let w = (&qq - int(1)) / (&qq * &qq);
    let binv = f.inv(b);
    add(&mut out, lin(f, ab, &[1]), &qq - int(1));
    for c in irreducible_quadratics_i(f, ab)? {
        add(&mut out, quad(f, c, ab)?, w.clone());
    }
    let mut excluded: BTreeSet<Elem> = BTreeSet::from([1]);
    match case.tag {
        CaseTag::OddSquare | CaseTag::OddNonSquare | CaseTag::EvenGeneric => {
            excluded.insert(f.mul(binv, a));
            add(&mut out, pair(f, a, b), Q::new(BigInt::from(2 * q - 1), BigInt::from(q * q)));
            if let Some(d) = case.delta {
                excluded.insert(f.mul(binv, d));
                add(&mut out, lin(f, d, &[2]), w.clone());
                if case.tag == CaseTag::OddSquare {
                    excluded.insert(f.mul(binv, f.neg(d)));
                    add(&mut out, lin(f, f.neg(d), &[2]), w.clone());
                }
            }
        }
        CaseTag::OddEqual | CaseTag::EvenEqual => {
            add(&mut out, lin(f, a, &[1, 1]), Q::new(BigInt::from(1), BigInt::from(q * q)));
            add(&mut out, lin(f, a, &[2]), &w * int(2));
            if case.tag == CaseTag::OddEqual {
                excluded.insert(f.neg(1));
                add(&mut out, lin(f, f.neg(a), &[2]), w.clone());
            }
        }
        _ => unreachable!(),
    }
    // The excluded d are exactly those producing {a, b} itself or a repeated
    // eigenvalue; the explicit terms above account for them.
    for &d in &excluded {
        let (x, y) = (f.mul(a, f.inv(d)), f.mul(b, d));
        if !((x == a && y == b) || (x == b && y == a) || x == y) {
            return Err(Error::Check(format!("excluded d = {} is not absorbed", f.fmt_elem(d))));
        }
    }
    let half = &w / int(2);
    for d in f.units().filter(|d| !excluded.contains(d)) {
        add(&mut out, pair(f, f.mul(a, f.inv(d)), f.mul(b, d)), half.clone());
    }
    out.retain(|_, c| !c.is_zero());
    let denom = int(2 * q * q);
    if out.values().any(|c| !(c * &denom).is_integer()) {
        return Err(Error::Check("a coefficient has a denominator not dividing 2q^2".into()));
    }
    Ok(out)
}

/// Π_n(Â_ν) / C_{ν↑n} from the explicit list for labels of size ≤ 2; labels
/// the list does not cover fall back to the general formula.
pub fn listed_pi_scalar(f: &Field, nu: &Polypartition, n: usize) -> Result<Q> {
    let q = f.q();
    let qm1 = int(q as i64 - 1);
    let qn = qpow(q, n as i64);
    let entries: Vec<(&Poly, &Partition)> = nu.entries().iter().collect();
    let is_one = |p: &Poly| *p == Poly::linear(f, 1);
    let v = match entries.as_slice() {
        [(p, part)] if p.deg() == 1 => match (is_one(p), part.parts()) {
            (true, [1]) => Some(&qn - int(1)),
            (true, [1, 1]) => Some((&qn - int(1)) * (&qn - int(q as i64))),
            (false, [1]) => Some(qpow(q, 1 - n as i64) * &qm1),
            (false, [2]) => Some(qpow(q, 5 - 2 * n as i64) * &qm1),
            (false, [1, 1]) => Some(qpow(q, 5 - 2 * n as i64) * &qm1 * (qpow(q, 2) - int(1))),
            _ => None,
        },
        [(p, part)] if p.deg() == 2 && part.parts() == [1] => Some(qpow(q, 4 - 2 * n as i64) * (qpow(q, 2) - int(1))),
        [(p1, a), (p2, b)] if p1.deg() == 1 && p2.deg() == 1 && a.parts() == [1] && b.parts() == [1] => {
            if is_one(p1) || is_one(p2) {
                Some(qpow(q, 2 - n as i64) * &qm1 * (qpow(q, n as i64 - 1) - int(1)))
            } else {
                Some(qpow(q, 4 - 2 * n as i64) * &qm1 * &qm1)
            }
        }
        _ => None,
    };
    match v {
        Some(v) => Ok(v),
        None => pi_scalar(f, nu, n),
    }
}

/// C_{X-a↑n} * C_{X-b↑n} in completed classes, from the closed-form table.
pub fn project_degree1(f: &Field, a: Elem, b: Elem, n: usize) -> Result<CentralVector> {
    if n < 2 {
        return invalid("n must be at least 2");
    }
    let table = degree1_product(f, a, b)?;
    let ca = class_size(f, &lin(f, a, &[1]).complete(f, n)?, n)?;
    let cb = class_size(f, &lin(f, b, &[1]).complete(f, n)?, n)?;
    let qn1 = qpow(f.q(), n as i64) - int(1);
    let scale = big(&(ca * cb)) / (&qn1 * &qn1);
    let mut coeffs: BTreeMap<Polypartition, Q> = BTreeMap::new();
    for (nu, c) in &table {
        let v = c * listed_pi_scalar(f, nu, n)? * &scale;
        *coeffs.entry(nu.complete(f, n)?).or_insert_with(Q::zero) += v;
    }
    coeffs.retain(|_, c| !c.is_zero());
    Ok(CentralVector { n, q: f.q(), coeffs })
}

/// The expansion of C_{X-a↑n} * C_{X-b↑n} for odd q, a ≠ b, a, b ≠ 1 and ab
/// a square δ², read term by term:
///
/// q C_{X∓δ:2} + (2q-1) C_{X-a,X-b} + q^{n-1} C_{X-ab}
///   + Σ_{I_ab} (q+1) C_{X²+cX+ab} + ½ Σ_d (q-1) C_{X-a/d,X-bd}, d ∉ {1, a/b, ±δ/b}.
///
/// The d-sum keeps d = a and d = 1/b, whose labels complete to {X-ab}↑n.
pub fn first_case_expansion(f: &Field, a: Elem, b: Elem, n: usize) -> Result<CentralVector> {
    let case = Degree1Case::classify(f, a, b)?;
    if case.tag != CaseTag::OddSquare || n < 2 {
        return invalid("needs odd q, a ≠ b, a, b ≠ 1, ab a square and n ≥ 2");
    }
    let q = f.q() as i64;
    let d0 = case.delta.expect("odd-square case has a root");
    let ab = f.mul(a, b);
    let binv = f.inv(b);
    let mut terms = BTreeMap::new();
    add(&mut terms, lin(f, d0, &[2]), int(q));
    add(&mut terms, lin(f, f.neg(d0), &[2]), int(q));
    add(&mut terms, pair(f, a, b), int(2 * q - 1));
    add(&mut terms, lin(f, ab, &[1]), qpow(f.q(), n as i64 - 1));
    for c in irreducible_quadratics_i(f, ab)? {
        add(&mut terms, quad(f, c, ab)?, int(q + 1));
    }
    let excluded = [1, f.mul(binv, a), f.mul(binv, d0), f.mul(binv, f.neg(d0))];
    for d in f.units().filter(|d| !excluded.contains(d)) {
        add(&mut terms, pair(f, f.mul(a, f.inv(d)), f.mul(b, d)), Q::new((q - 1).into(), 2.into()));
    }
    let mut coeffs = BTreeMap::new();
    for (nu, c) in terms {
        add(&mut coeffs, nu.complete(f, n)?, c);
    }
    coeffs.retain(|_, c| !c.is_zero());
    Ok(CentralVector { n, q: f.q(), coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_sets() {
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(irreducible_quadratics_i(&f3, 2).unwrap(), BTreeSet::from([1, 2]));
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(irreducible_quadratics_i(&f5, 4).unwrap().len(), 2);
        let f4 = Field::new(2, 2).unwrap();
        for b in 1..4 {
            assert_eq!(irreducible_quadratics_i(&f4, b).unwrap().len(), 2);
        }
        assert!(irreducible_quadratics_i(&f4, 0).is_err());
    }

    #[test]
    fn unit_cases() {
        let f = Field::new(5, 1).unwrap();
        let r = degree1_product(&f, 3, 1).unwrap();
        assert_eq!(r[&lin(&f, 3, &[1])], int(4));
        assert_eq!(r[&lin(&f, 3, &[1]).union(&lin(&f, 1, &[1]))], int(1));
        let r = degree1_product(&f, 1, 1).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[&lin(&f, 1, &[1, 1])], int(1));
    }

    #[test]
    fn first_case_pair_coefficient() {
        let f = Field::new(5, 1).unwrap();
        let c = Degree1Case::classify(&f, 2, 3).unwrap();
        assert_eq!(c.tag, CaseTag::OddSquare);
        let r = degree1_product(&f, 2, 3).unwrap();
        assert_eq!(r[&pair(&f, 2, 3)], Q::new(9.into(), 25.into()));
    }

    #[test]
    fn listed_scalars_match_general_formula_off_x_minus_one() {
        for q in [3u32, 4, 5] {
            let f = Field::with_order(q).unwrap();
            for n in 2..5 {
                for nu in crate::conjtype::enumerate_polypartitions(&f, 2)
                    .into_iter()
                    .chain(crate::conjtype::enumerate_polypartitions(&f, 1))
                {
                    if nu == lin(&f, 1, &[2]) {
                        continue;
                    }
                    assert_eq!(listed_pi_scalar(&f, &nu, n).unwrap(), pi_scalar(&f, &nu, n).unwrap(), "{}", nu.to_string(&f));
                }
            }
        }
    }
}
