//! Orbits of the two-sided GL action, the invariant classes A, Â, Ã, and
//! their products.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::alg::{product, product_basis, AlgElem};
use super::PartialIso;
use crate::conjtype::{class_size, jordan_matrix, Polypartition};
use crate::error::{invalid, Error, Result};
use crate::field::Field;
use crate::group::{class_elements, gl_elements};
use crate::matrix::Mat;
use crate::rational::{big, free_families, int, qinv_poch, qpow, to_integer, Q};
use crate::subspace::{enumerate_subspaces, Subspace};

/// Every partial isomorphism of F_q^n, grouped by dimension.
pub fn all_partial_isos(f: &Field, n: usize) -> Result<Vec<PartialIso>> {
    let mut out = Vec::new();
    for k in 0..=n {
        let spaces = enumerate_subspaces(f, n, k, None)?;
        let gl = gl_elements(f, k)?;
        for v in &spaces {
            for w in &spaces {
                for g1 in &gl {
                    for g2 in &gl {
                        out.push(PartialIso::raw(v.clone(), w.clone(), g1.clone(), g2.clone()));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// card I(n, F_q) = Σ_k q^{2nk} ((q⁻¹)_n / (q⁻¹)_{n-k})².
pub fn partial_iso_count(q: u32, n: usize) -> BigInt {
    let total = (0..=n).fold(Q::zero(), |acc, k| {
        let r = qinv_poch(q, n) / qinv_poch(q, n - k);
        acc + qpow(q, (2 * n * k) as i64) * &r * &r
    });
    to_integer(&total).expect("count is integral")
}

/// All partial isomorphisms of type μ in F_q^n: (V | I ⇄ C | W) in
/// canonical bases with g1 ∈ GL(k) and g2 g1 ∈ C_μ.
pub fn orbit_of_type(f: &Field, mu: &Polypartition, n: usize) -> Result<Vec<PartialIso>> {
    let k = mu.size();
    if k > n {
        return invalid(format!("|mu| = {k} exceeds n = {n}"));
    }
    let spaces = enumerate_subspaces(f, n, k, None)?;
    let gl = gl_elements(f, k)?;
    let class = class_elements(f, mu)?;
    let mut out = Vec::with_capacity(spaces.len() * spaces.len() * gl.len() * class.len());
    for v in &spaces {
        for w in &spaces {
            for g1 in &gl {
                let g1i = g1.inverse(f)?;
                for c in &class {
                    out.push(PartialIso::raw(v.clone(), w.clone(), g1.clone(), c.mul(f, &g1i)));
                }
            }
        }
    }
    Ok(out)
}

/// Orbit size Gr(k,n)² · |GL(k)| · card C_μ.
pub fn orbit_size(f: &Field, mu: &Polypartition, n: usize) -> Result<BigInt> {
    let k = mu.size();
    if k > n {
        return invalid(format!("|mu| = {k} exceeds n = {n}"));
    }
    let gr = crate::rational::gaussian_binomial(f.q(), n, k);
    Ok(&gr * &gr * crate::rational::gl_order(f.q(), k) * class_size(f, mu, k)?)
}

/// Number of terms of A_{μ,n}: (q^{nk}(q⁻¹)_n/(q⁻¹)_{n-k})².
pub fn a_count(q: u32, n: usize, k: usize) -> BigInt {
    let r = free_families(q, n, k);
    &r * &r
}

/// Â_{μ,n} = hat_scale · Ã_{μ,n}, with hat_scale = q^{nk}(q⁻¹)_n/(q⁻¹)_{n-k}.
pub fn hat_scale(q: u32, n: usize, k: usize) -> Q {
    big(&free_families(q, n, k))
}

/// Ã_{μ,n}: uniform average over the orbit of type μ.
pub fn a_tilde(f: &Field, mu: &Polypartition, n: usize) -> Result<AlgElem> {
    let orbit = orbit_of_type(f, mu, n)?;
    let w = Q::new(BigInt::one(), BigInt::from(orbit.len()));
    let mut r = AlgElem::zero(n);
    for i in orbit {
        r.add_term(i, w.clone());
    }
    Ok(r)
}

/// Â_{μ,n}.
pub fn a_hat(f: &Field, mu: &Polypartition, n: usize) -> Result<AlgElem> {
    Ok(a_tilde(f, mu, n)?.scale(&hat_scale(f.q(), n, mu.size())))
}

/// Ã_λ * Ã_μ in the Ã basis, via a single representative of the λ orbit.
///
/// The type census of a product is invariant under both actions and under
/// simultaneous change of coordinates, so averaging over the two orbits
/// reduces to I0 = (E_k | I ⇄ J(λ) | E_k) times (W | I ⇄ B | W) with W
/// running over Gr(l, n) and B over C_μ.
pub fn invariant_product(
    f: &Field,
    lambda: &Polypartition,
    mu: &Polypartition,
    n: usize,
) -> Result<BTreeMap<Polypartition, Q>> {
    let (k, l) = (lambda.size(), mu.size());
    if k > n || l > n {
        return invalid(format!("labels of sizes {k}, {l} do not fit in n = {n}"));
    }
    let i0 = PartialIso::raw(Subspace::coordinate(n, k), Subspace::coordinate(n, k), Mat::identity(k), jordan_matrix(f, lambda));
    let spaces = enumerate_subspaces(f, n, l, None)?;
    let class = class_elements(f, mu)?;
    let mut census: BTreeMap<Polypartition, Q> = BTreeMap::new();
    for w in &spaces {
        for b in &class {
            let j = PartialIso::raw(w.clone(), w.clone(), Mat::identity(l), b.clone());
            let (counts, total) = product_basis(f, &i0, &j)?;
            let wt = Q::new(BigInt::one(), BigInt::from(total));
            for (t, c) in counts {
                *census.entry(t.piso_type(f)).or_insert_with(Q::zero) += &wt * int(c as i64);
            }
        }
    }
    let norm = Q::new(BigInt::one(), BigInt::from(spaces.len() * class.len()));
    census.values_mut().for_each(|c| *c *= &norm);
    census.retain(|_, c| !c.is_zero());
    Ok(census)
}

/// Ã_λ * Ã_μ by the full double orbit sum. Also checks that every element
/// of each type orbit carries the same coefficient. Small cases only.
pub fn invariant_product_exhaustive(
    f: &Field,
    lambda: &Polypartition,
    mu: &Polypartition,
    n: usize,
) -> Result<BTreeMap<Polypartition, Q>> {
    let prod = product(f, &a_tilde(f, lambda, n)?, &a_tilde(f, mu, n)?)?;
    let mut by_type: HashMap<Polypartition, (Q, usize)> = HashMap::new();
    for (t, c) in prod.terms() {
        let e = by_type.entry(t.piso_type(f)).or_insert((c.clone(), 0));
        if e.0 != *c {
            return Err(Error::Check(format!("coefficient is not constant on the orbit of {}", t.piso_type(f).to_string(f))));
        }
        e.1 += 1;
    }
    let mut out = BTreeMap::new();
    for (nu, (c, seen)) in by_type {
        let size = orbit_size(f, &nu, n)?;
        if BigInt::from(seen) != size {
            return Err(Error::Check(format!("orbit of {} only partially hit", nu.to_string(f))));
        }
        out.insert(nu, c * big(&size));
    }
    Ok(out)
}

/// Converts Ã-basis coefficients of Ã_λ * Ã_μ to Â-basis coefficients of
/// Â_λ * Â_μ.
pub fn tilde_to_hat(
    q: u32,
    n: usize,
    k: usize,
    l: usize,
    tilde: &BTreeMap<Polypartition, Q>,
) -> BTreeMap<Polypartition, Q> {
    let s = hat_scale(q, n, k) * hat_scale(q, n, l);
    tilde.iter().map(|(nu, c)| (nu.clone(), c * &s / hat_scale(q, n, nu.size()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(all_partial_isos(&f, 2).unwrap().len(), 46);
        assert_eq!(partial_iso_count(2, 2), BigInt::from(46));
        let line = Polypartition::linear(&f, 1, &[1]);
        assert_eq!(orbit_of_type(&f, &line, 2).unwrap().len(), 9);
        assert_eq!(orbit_size(&f, &line, 2).unwrap(), BigInt::from(9));
        assert_eq!(orbit_of_type(&f, &Polypartition::empty(), 2).unwrap(), vec![PartialIso::empty(2)]);
    }

    #[test]
    fn unit_label_is_neutral() {
        let f = Field::new(3, 1).unwrap();
        let mu = Polypartition::linear(&f, 2, &[1]);
        let r = invariant_product(&f, &Polypartition::empty(), &mu, 2).unwrap();
        assert_eq!(r, BTreeMap::from([(mu.clone(), Q::one())]));
    }

    #[test]
    fn reduced_matches_exhaustive() {
        let f = Field::new(2, 1).unwrap();
        let one = Polypartition::linear(&f, 1, &[1]);
        let a = invariant_product(&f, &one, &one, 2).unwrap();
        let b = invariant_product_exhaustive(&f, &one, &one, 2).unwrap();
        assert_eq!(a, b);
        let hat = tilde_to_hat(2, 2, 1, 1, &a);
        let two = Polypartition::linear(&f, 1, &[1, 1]);
        assert_eq!(hat, BTreeMap::from([(one, Q::one()), (two, Q::one())]));
    }
}
