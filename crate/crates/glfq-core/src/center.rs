//! Products in the centers Z(C GL(n, F_q)): brute-force class products,
//! the projections Π_n of the generic classes Â_μ, the generic structure
//! constants S and the Farahat–Higman polynomials.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::conjtype::{class_size, jordan_matrix, type_of, Polypartition};
use crate::error::{invalid, Error, Result};
use crate::field::Field;
use crate::group::class_elements;
use crate::matrix::Mat;
use crate::partial_iso::{invariant_product, tilde_to_hat};
use crate::rational::{big, fmt_q, qinv_poch, qpow, to_integer, Q};

/// A central element Σ c_ν C_ν of C GL(n, F_q), keyed by types of size n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralVector {
    pub n: usize,
    pub q: u32,
    pub coeffs: BTreeMap<Polypartition, Q>,
}

impl CentralVector {
    pub fn coeff(&self, nu: &Polypartition) -> Q {
        self.coeffs.get(nu).cloned().unwrap_or_else(Q::zero)
    }
    /// Image under g ↦ 1: Σ c_ν card C_ν.
    pub fn mass(&self, f: &Field) -> Result<Q> {
        let mut m = Q::zero();
        for (nu, c) in &self.coeffs {
            m += c * big(&class_size(f, nu, self.n)?);
        }
        Ok(m)
    }
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }
}

fn check_sizes(lambda: &Polypartition, mu: &Polypartition, n: usize) -> Result<()> {
    if lambda.size() > n || mu.size() > n {
        return invalid(format!("labels of sizes {}, {} do not fit in n = {n}", lambda.size(), mu.size()));
    }
    Ok(())
}

/// C_{λ↑n} * C_{μ↑n} in completed classes, by counting for each target class
/// representative z the g ∈ C_{λ↑n} with g⁻¹z ∈ C_{μ↑n}.
pub fn completed_product(f: &Field, lambda: &Polypartition, mu: &Polypartition, n: usize) -> Result<CentralVector> {
    check_sizes(lambda, mu, n)?;
    let (ln, mn) = (lambda.complete(f, n)?, mu.complete(f, n)?);
    let cl = class_elements(f, &ln)?;
    let cm = class_elements(f, &mn)?;
    let cm_set: HashSet<&Mat> = cm.iter().collect();
    // Every class of C_λ C_μ meets J(λ↑n) C_μ.
    let j = jordan_matrix(f, &ln);
    let cands: BTreeMap<Polypartition, ()> = cm
        .par_iter()
        .map(|h| type_of(f, &j.mul(f, h)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .map(|t| (t, ()))
        .collect();
    let mut coeffs = BTreeMap::new();
    for nu in cands.keys() {
        let z = jordan_matrix(f, nu);
        let c = count_factorizations(f, &cl, &cm_set, &z)?;
        coeffs.insert(nu.clone(), Q::from_integer(BigInt::from(c)));
    }
    let out = CentralVector { n, q: f.q(), coeffs };
    let expected = big(&(BigInt::from(cl.len()) * BigInt::from(cm.len())));
    if out.mass(f)? != expected {
        return Err(Error::Check("completed product misses classes".into()));
    }
    Ok(out)
}

/// #{g ∈ cl : g⁻¹ z ∈ cm}, the coefficient of z in (Σ cl)(Σ cm).
pub fn count_factorizations(f: &Field, cl: &[Mat], cm: &HashSet<&Mat>, z: &Mat) -> Result<usize> {
    let hits: Result<Vec<bool>> = cl.par_iter().map(|g| Ok(cm.contains(&g.inverse(f)?.mul(f, z)))).collect();
    Ok(hits?.into_iter().filter(|&b| b).count())
}

/// Oracle: the same product by the double loop over C_{λ↑n} × C_{μ↑n}.
pub fn completed_product_double_loop(
    f: &Field,
    lambda: &Polypartition,
    mu: &Polypartition,
    n: usize,
) -> Result<CentralVector> {
    check_sizes(lambda, mu, n)?;
    let cl = class_elements(f, &lambda.complete(f, n)?)?;
    let cm = class_elements(f, &mu.complete(f, n)?)?;
    let mut counts: BTreeMap<Polypartition, u64> = BTreeMap::new();
    for g in &cl {
        for h in &cm {
            *counts.entry(type_of(f, &g.mul(f, h))?).or_insert(0) += 1;
        }
    }
    let mut coeffs = BTreeMap::new();
    for (nu, c) in counts {
        coeffs.insert(nu.clone(), Q::new(BigInt::from(c), class_size(f, &nu, n)?));
    }
    Ok(CentralVector { n, q: f.q(), coeffs })
}

/// The scalar s with Π_n(Â_μ) = s · C_{μ↑n}; zero when |μ| > n.
pub fn pi_scalar(f: &Field, mu: &Polypartition, n: usize) -> Result<Q> {
    let q = f.q();
    let (k, k1, k11) = (mu.size(), mu.k1(f), mu.k11(f));
    if k > n {
        return Ok(Q::zero());
    }
    let e = n as i64 * (2 * k1 as i64 - k as i64) + 2 * (k * (k - k1)) as i64;
    let num = qpow(q, e) * qinv_poch(q, k) * qinv_poch(q, n - k + k11);
    let den = qinv_poch(q, k11) * qinv_poch(q, n - k) * big(&class_size(f, mu, k)?);
    Ok(num / den)
}

/// Generic structure constants: Â_λ * Â_μ = Σ S^ν Â_ν, computed at
/// n0 = |λ| + |μ| (or at a larger `n` when given).
pub fn generic_s(f: &Field, lambda: &Polypartition, mu: &Polypartition, n: Option<usize>) -> Result<BTreeMap<Polypartition, Q>> {
    let (k, l) = (lambda.size(), mu.size());
    let n = n.unwrap_or(k + l);
    if n < k + l {
        return invalid("generic constants need n >= |lambda| + |mu|");
    }
    let tilde = invariant_product(f, lambda, mu, n)?;
    Ok(tilde_to_hat(f.q(), n, k, l, &tilde))
}

/// Projects a generic product to GL(n): C_{λ↑n} C_{μ↑n} = Σ S^ν Π_n(Â_ν) /
/// (Π_n(Â_λ) Π_n(Â_μ)) in completed classes.
pub fn project(
    f: &Field,
    s: &BTreeMap<Polypartition, Q>,
    lambda: &Polypartition,
    mu: &Polypartition,
    n: usize,
) -> Result<CentralVector> {
    check_sizes(lambda, mu, n)?;
    let norm = pi_scalar(f, lambda, n)? * pi_scalar(f, mu, n)?;
    let mut coeffs: BTreeMap<Polypartition, Q> = BTreeMap::new();
    for (nu, c) in s {
        if nu.size() > n {
            continue;
        }
        let v = c * pi_scalar(f, nu, n)? / &norm;
        *coeffs.entry(nu.complete(f, n)?).or_insert_with(Q::zero) += v;
    }
    coeffs.retain(|_, c| !c.is_zero());
    Ok(CentralVector { n, q: f.q(), coeffs })
}

/// Polynomial in X = q^n with rational coefficients, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructPoly(pub Vec<Q>);

impl StructPoly {
    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }
    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }
    /// Value at X = q^n.
    pub fn at(&self, q: u32, n: usize) -> Q {
        self.eval(&qpow(q, n as i64))
    }
    /// "c0 + c1*X + ..." with exact rationals.
    pub fn to_text(&self) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("({c})*X"),
                _ => format!("({c})*X^{i}"),
            })
            .collect();
        terms.join(" + ")
    }
}

/// Output of the Farahat–Higman computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericProduct {
    pub q: u32,
    pub lhs: (Polypartition, Polypartition),
    /// Reduced ν (no parts 1 at X - 1) ↦ p^ν.
    pub rhs: BTreeMap<Polypartition, StructPoly>,
    /// Generic structure constants S^ν.
    pub s: BTreeMap<Polypartition, Q>,
}

/// The modified coefficient s^ν from S^ν.
pub fn modified_coefficient(f: &Field, s: &Q, lambda: &Polypartition, mu: &Polypartition, nu: &Polypartition) -> Result<Q> {
    let q = f.q();
    let (k, k1) = (lambda.size() as i64, lambda.k1(f) as i64);
    let (l, l1) = (mu.size() as i64, mu.k1(f) as i64);
    let (m, m1) = (nu.size() as i64, nu.k1(f) as i64);
    let cards = big(&(class_size(f, lambda, lambda.size())? * class_size(f, mu, mu.size())?));
    let e = 2 * m * (m - m1) - 2 * k * (k - k1) - 2 * l * (l - l1);
    let num = cards * qpow(q, e) * qinv_poch(q, nu.size());
    let den = big(&class_size(f, nu, nu.size())?)
        * qinv_poch(q, lambda.size())
        * qinv_poch(q, mu.size())
        * qinv_poch(q, nu.k11(f));
    Ok(s * num / den)
}

/// Farahat–Higman polynomials p^ν(X) for labels without parts 1 at X - 1.
pub fn fh_polynomials(f: &Field, lambda: &Polypartition, mu: &Polypartition) -> Result<GenericProduct> {
    if lambda.k11(f) != 0 || mu.k11(f) != 0 {
        return invalid("labels must have no parts 1 in their X - 1 partition");
    }
    let q = f.q();
    let (k, k1) = (lambda.size() as i64, lambda.k1(f) as i64);
    let (l, l1) = (mu.size() as i64, mu.k1(f) as i64);
    let s_map = generic_s(f, lambda, mu, None)?;
    let mut laurent: BTreeMap<Polypartition, BTreeMap<i64, Q>> = BTreeMap::new();
    for (nu, s) in &s_map {
        let sm = modified_coefficient(f, s, lambda, mu, nu)?;
        let (m, m1, m11) = (nu.size() as i64, nu.k1(f) as i64, nu.k11(f) as i64);
        let shift = (k - 2 * k1) + (l - 2 * l1) - (m - 2 * m1);
        // ∏_{i=1}^{m11} (1 - q^{m-i} X⁻¹), expanded in powers of X⁻¹.
        let mut prod: BTreeMap<i64, Q> = BTreeMap::from([(0, Q::one())]);
        for i in 1..=m11 {
            let c = qpow(q, m - i);
            let mut next: BTreeMap<i64, Q> = BTreeMap::new();
            for (p, v) in &prod {
                *next.entry(*p).or_insert_with(Q::zero) += v;
                *next.entry(p - 1).or_insert_with(Q::zero) -= v * &c;
            }
            prod = next;
        }
        let acc = laurent.entry(nu.reduce(f).0).or_default();
        for (p, v) in prod {
            *acc.entry(p + shift).or_insert_with(Q::zero) += &sm * v;
        }
    }
    let mut rhs = BTreeMap::new();
    for (nu, terms) in laurent {
        let terms: BTreeMap<i64, Q> = terms.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        if let Some((&p, v)) = terms.iter().next() {
            if p < 0 {
                return Err(Error::Check(format!(
                    "negative power X^{p} with coefficient {} survives for {}",
                    fmt_q(v),
                    nu.to_string(f)
                )));
            }
        }
        let deg = terms.keys().next_back().copied().unwrap_or(-1);
        if deg < 0 {
            continue;
        }
        let mut c = vec![Q::zero(); deg as usize + 1];
        for (p, v) in terms {
            c[p as usize] = v;
        }
        rhs.insert(nu, StructPoly(c));
    }
    Ok(GenericProduct { q, lhs: (lambda.clone(), mu.clone()), rhs, s: s_map })
}

/// Result of comparing Farahat–Higman polynomials with brute force.
#[derive(Clone, Debug, Default)]
pub struct FhReport {
    pub checked: Vec<usize>,
    pub evaluations: usize,
    pub mismatches: Vec<String>,
}

impl FhReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Evaluates every p^ν at X = q^n and compares with `completed_product`.
pub fn verify_fh(f: &Field, gp: &GenericProduct, n_list: &[usize]) -> Result<FhReport> {
    let (lambda, mu) = &gp.lhs;
    let mut rep = FhReport::default();
    for &n in n_list {
        if n < lambda.size() + mu.size() {
            return invalid(format!("n = {n} is below |lambda| + |mu|"));
        }
        let brute = completed_product(f, lambda, mu, n)?;
        let mut predicted: BTreeMap<Polypartition, Q> = BTreeMap::new();
        for (nu, p) in &gp.rhs {
            let v = p.at(gp.q, n);
            if to_integer(&v).is_none() {
                rep.mismatches.push(format!("n={n}: p({}) = {} is not an integer", nu.to_string(f), fmt_q(&v)));
            }
            rep.evaluations += 1;
            if !v.is_zero() {
                predicted.insert(nu.complete(f, n)?, v);
            }
        }
        for nu in predicted.keys().chain(brute.coeffs.keys()).collect::<HashSet<_>>() {
            let (a, b) = (predicted.get(nu).cloned().unwrap_or_else(Q::zero), brute.coeff(nu));
            if a != b {
                rep.mismatches.push(format!("n={n}: {} predicted {} brute force {}", nu.to_string(f), fmt_q(&a), fmt_q(&b)));
            }
        }
        rep.checked.push(n);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_scalar_examples() {
        let f = Field::new(3, 1).unwrap();
        for n in 1..4 {
            let one = Polypartition::linear(&f, 1, &[1]);
            assert_eq!(pi_scalar(&f, &one, n).unwrap(), qpow(3, n as i64) - Q::one());
            let a = Polypartition::linear(&f, 2, &[1]);
            assert_eq!(pi_scalar(&f, &a, n).unwrap(), qpow(3, 1 - n as i64) * Q::from_integer(2.into()));
        }
        assert_eq!(pi_scalar(&f, &Polypartition::empty(), 3).unwrap(), Q::one());
    }

    #[test]
    fn identity_class_is_unit() {
        let f = Field::new(3, 1).unwrap();
        let a = Polypartition::linear(&f, 2, &[1]);
        let one = Polypartition::linear(&f, 1, &[1]);
        let p = completed_product(&f, &a, &one, 2).unwrap();
        assert_eq!(p.coeffs, BTreeMap::from([(a.complete(&f, 2).unwrap(), Q::one())]));
    }

    #[test]
    fn struct_poly_eval() {
        let p = StructPoly(vec![Q::from_integer(2.into()), Q::new(1.into(), 3.into())]);
        assert_eq!(p.at(3, 2), Q::from_integer(5.into()));
        assert_eq!(p.degree(), 1);
    }
}
