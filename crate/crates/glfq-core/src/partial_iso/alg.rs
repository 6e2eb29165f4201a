//! The algebra 𝒜(n, F_q): averaged product, extension operators, the
//! projection π_n to the pair group algebra, and the maps φ.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::ext::{extensions_both_fixed, extensions_fixed_left, extensions_fixed_right};
use super::PartialIso;
use crate::error::{invalid, Error, Result};
use crate::field::Field;
use crate::matrix::Mat;
use crate::rational::{int, qinv_poch, qpow, Q};
use crate::subspace::Subspace;

/// Sparse rational combination of partial isomorphisms of F_q^n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgElem {
    n: usize,
    terms: HashMap<PartialIso, Q>,
}

impl AlgElem {
    pub fn zero(n: usize) -> AlgElem {
        AlgElem { n, terms: HashMap::new() }
    }
    /// The empty partial isomorphism, unit of the product.
    pub fn unit(n: usize) -> AlgElem {
        AlgElem::basis(PartialIso::empty(n))
    }
    pub fn basis(i: PartialIso) -> AlgElem {
        let n = i.ambient();
        let mut terms = HashMap::new();
        terms.insert(i, Q::one());
        AlgElem { n, terms }
    }
    pub fn ambient(&self) -> usize {
        self.n
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> &HashMap<PartialIso, Q> {
        &self.terms
    }
    pub fn coeff(&self, i: &PartialIso) -> Q {
        self.terms.get(i).cloned().unwrap_or_else(Q::zero)
    }
    /// Terms sorted by partial isomorphism, for deterministic output.
    pub fn sorted_terms(&self) -> Vec<(&PartialIso, &Q)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }
    pub fn add_term(&mut self, i: PartialIso, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(i).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }
    pub fn add(&self, o: &AlgElem) -> AlgElem {
        let mut r = self.clone();
        for (i, c) in &o.terms {
            r.add_term(i.clone(), c.clone());
        }
        r
    }
    pub fn sub(&self, o: &AlgElem) -> AlgElem {
        self.add(&o.scale(&int(-1)))
    }
    pub fn scale(&self, c: &Q) -> AlgElem {
        if c.is_zero() {
            return AlgElem::zero(self.n);
        }
        AlgElem { n: self.n, terms: self.terms.iter().map(|(i, x)| (i.clone(), x * c)).collect() }
    }
    /// Largest dimension among the terms.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(PartialIso::dim).max().unwrap_or(0)
    }
    pub fn act_left(&self, f: &Field, k: &Mat) -> Result<AlgElem> {
        self.map_terms(|i| i.act_left(f, k))
    }
    pub fn act_right(&self, f: &Field, l: &Mat) -> Result<AlgElem> {
        self.map_terms(|i| i.act_right(f, l))
    }
    fn map_terms(&self, g: impl Fn(&PartialIso) -> Result<PartialIso>) -> Result<AlgElem> {
        let mut r = AlgElem::zero(self.n);
        for (i, c) in &self.terms {
            r.add_term(g(i)?, c.clone());
        }
        Ok(r)
    }
    /// Sum of all coefficients.
    pub fn mass(&self) -> Q {
        self.terms.values().fold(Q::zero(), |a, c| a + c)
    }
}

/// Product of two basis elements, as a distribution: (counts, total), where
/// the result is Σ counts[t] · t / total.
pub fn product_basis(f: &Field, x: &PartialIso, y: &PartialIso) -> Result<(HashMap<PartialIso, u64>, u64)> {
    if x.ambient() != y.ambient() {
        return Err(Error::Shape("ambient dimensions differ".into()));
    }
    let s = x.right().sum(f, y.left());
    let left = extensions_fixed_right(f, x, &s)?;
    let right = extensions_fixed_left(f, y, &s)?;
    let mut counts: HashMap<PartialIso, u64> = HashMap::new();
    for a in &left {
        for b in &right {
            // (U⁺ | g1⁺ ⇄ g2⁺ | S) * (S | h1⁺ ⇄ h2⁺ | X⁺) = (U⁺ | g1⁺h1⁺ ⇄ h2⁺g2⁺ | X⁺)
            let g1 = b.g1().mul(f, a.g1());
            let g2 = a.g2().mul(f, b.g2());
            let t = PartialIso::raw(a.left().clone(), b.right().clone(), g1, g2);
            *counts.entry(t).or_insert(0) += 1;
        }
    }
    Ok((counts, (left.len() * right.len()) as u64))
}

/// The averaged product x * y.
pub fn product(f: &Field, x: &AlgElem, y: &AlgElem) -> Result<AlgElem> {
    if x.n != y.n {
        return Err(Error::Shape("ambient dimensions differ".into()));
    }
    let mut acc: HashMap<PartialIso, Q> = HashMap::new();
    for (i, ci) in &x.terms {
        for (j, cj) in &y.terms {
            let (counts, total) = product_basis(f, i, j)?;
            let w = ci * cj / int(total as i64);
            for (t, c) in counts {
                *acc.entry(t).or_insert_with(Q::zero) += &w * int(c as i64);
            }
        }
    }
    acc.retain(|_, c| !c.is_zero());
    Ok(AlgElem { n: x.n, terms: acc })
}

fn average_into(acc: &mut AlgElem, list: Vec<PartialIso>, c: &Q) {
    let w = c / int(list.len() as i64);
    for t in list {
        acc.add_term(t, w.clone());
    }
}

/// R^X: each term with right space W becomes the average of its trivial
/// extensions with right space W + X.
pub fn op_r(f: &Field, x_space: &Subspace, x: &AlgElem) -> Result<AlgElem> {
    let mut acc = AlgElem::zero(x.n);
    for (i, c) in &x.terms {
        let target = i.right().sum(f, x_space);
        average_into(&mut acc, extensions_fixed_right(f, i, &target)?, c);
    }
    Ok(acc)
}

/// L^W: each term with left space V becomes the average of its trivial
/// extensions with left space V + W.
pub fn op_l(f: &Field, w_space: &Subspace, x: &AlgElem) -> Result<AlgElem> {
    let mut acc = AlgElem::zero(x.n);
    for (i, c) in &x.terms {
        let target = i.left().sum(f, w_space);
        average_into(&mut acc, extensions_fixed_left(f, i, &target)?, c);
    }
    Ok(acc)
}

/// R_W^{W⁺}: every term must have its right space inside `w_plus`; it
/// becomes the average of its trivial extensions with right space `w_plus`.
pub fn op_r_to(f: &Field, w_plus: &Subspace, x: &AlgElem) -> Result<AlgElem> {
    let mut acc = AlgElem::zero(x.n);
    for (i, c) in &x.terms {
        if !w_plus.contains_space(f, i.right()) {
            return invalid("right space is not contained in the target");
        }
        average_into(&mut acc, extensions_fixed_right(f, i, w_plus)?, c);
    }
    Ok(acc)
}

/// L_V^{V⁺}, the mirror of [`op_r_to`].
pub fn op_l_to(f: &Field, v_plus: &Subspace, x: &AlgElem) -> Result<AlgElem> {
    let mut acc = AlgElem::zero(x.n);
    for (i, c) in &x.terms {
        if !v_plus.contains_space(f, i.left()) {
            return invalid("left space is not contained in the target");
        }
        average_into(&mut acc, extensions_fixed_left(f, i, v_plus)?, c);
    }
    Ok(acc)
}

/// LR with both target spaces fixed; every term must satisfy V ⊆ V⁺, W ⊆ W⁺.
pub fn op_lr(f: &Field, v_plus: &Subspace, w_plus: &Subspace, x: &AlgElem) -> Result<AlgElem> {
    if v_plus.dim() != w_plus.dim() {
        return invalid("target spaces must have equal dimension");
    }
    let mut acc = AlgElem::zero(x.n);
    for (i, c) in &x.terms {
        if !v_plus.contains_space(f, i.left()) || !w_plus.contains_space(f, i.right()) {
            return invalid("term spaces are not contained in the targets");
        }
        average_into(&mut acc, extensions_both_fixed(f, i, v_plus, w_plus)?, c);
    }
    Ok(acc)
}

/// Rational combination of pairs (g1, g2) ∈ GL(n) × GL(n)^opp.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairAlgElem {
    n: usize,
    terms: HashMap<(Mat, Mat), Q>,
}

impl PairAlgElem {
    pub fn zero(n: usize) -> PairAlgElem {
        PairAlgElem { n, terms: HashMap::new() }
    }
    pub fn terms(&self) -> &HashMap<(Mat, Mat), Q> {
        &self.terms
    }
    pub fn add_term(&mut self, key: (Mat, Mat), c: Q) {
        let e = self.terms.entry(key).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }
    /// Convolution with (g1, g2)(h1, h2) = (g1 h1, h2 g2).
    pub fn mul(&self, f: &Field, o: &PairAlgElem) -> PairAlgElem {
        let mut r = PairAlgElem::zero(self.n);
        for ((g1, g2), a) in &self.terms {
            for ((h1, h2), b) in &o.terms {
                r.add_term((h1.mul(f, g1), g2.mul(f, h2)), a * b);
            }
        }
        r
    }
    /// k · (g1, g2) · l = (k g1 l⁻¹, l g2 k⁻¹).
    pub fn act(&self, f: &Field, k: &Mat, l: &Mat) -> Result<PairAlgElem> {
        let (ki, li) = (k.inverse(f)?, l.inverse(f)?);
        let mut r = PairAlgElem::zero(self.n);
        for ((g1, g2), c) in &self.terms {
            r.add_term((li.mul(f, g1).mul(f, k), ki.mul(f, g2).mul(f, l)), c.clone());
        }
        Ok(r)
    }
}

/// π_n = R^{F_q^n}: average of the full trivial extensions, as pairs.
pub fn pi_n(f: &Field, x: &AlgElem) -> Result<PairAlgElem> {
    let full = op_r(f, &Subspace::full(x.n), x)?;
    let mut r = PairAlgElem::zero(x.n);
    for (i, c) in full.terms {
        r.add_term((i.g1().clone(), i.g2().clone()), c);
    }
    Ok(r)
}

/// Scalar of φ_n^{n+p} on a term of dimension k:
/// q^{pk} (q⁻¹)_{n+p} (q⁻¹)_{n-k} / ((q⁻¹)_{n+p-k} (q⁻¹)_n).
pub fn phi_scalar(q: u32, n: usize, p: usize, k: usize) -> Q {
    qpow(q, (p * k) as i64) * qinv_poch(q, n + p) * qinv_poch(q, n - k)
        / (qinv_poch(q, n + p - k) * qinv_poch(q, n))
}

/// φ from ambient n' = x.ambient() down to n: terms with V + W inside the
/// first n coordinates are rescaled and restricted, the others dropped.
pub fn phi(f: &Field, x: &AlgElem, n: usize) -> Result<AlgElem> {
    let big = x.n;
    if n > big {
        return invalid(format!("cannot map ambient {big} to larger {n}"));
    }
    let mut r = AlgElem::zero(n);
    for (i, c) in &x.terms {
        if i.left().inside_first(n) && i.right().inside_first(n) {
            r.add_term(i.truncate(n), c * phi_scalar(f.q(), n, big - n, i.dim()));
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(f: &Field, v: Vec<u8>) -> Subspace {
        Subspace::span_vecs(f, 2, &[v])
    }

    fn colinear_term(f: &Field, u: Vec<u8>, a: u8, v: Vec<u8>) -> PartialIso {
        // (u | 1 ⇄ a | v): g1(u) = v, g2(v) = a u.
        let e = Mat::from_rows(&[u]).unwrap();
        let fb = Mat::from_rows(&[v]).unwrap();
        PartialIso::from_bases(f, &e, &fb, &Mat::identity(1), &Mat::from_vec(1, 1, vec![a]).unwrap()).unwrap()
    }

    #[test]
    fn colinear_product() {
        let f = Field::new(5, 1).unwrap();
        let (a, b, alpha) = (2, 3, 4);
        let x = colinear_term(&f, vec![1, 2], a, vec![0, 1]);
        let w = vec![0, alpha];
        let y = colinear_term(&f, w, b, vec![1, 1]);
        let prod = product(&f, &AlgElem::basis(x), &AlgElem::basis(y)).unwrap();
        let xv = vec![f.inv(alpha), f.inv(alpha)];
        let expected = colinear_term(&f, vec![1, 2], f.mul(a, b), xv);
        assert_eq!(prod, AlgElem::basis(expected));
        let _ = line(&f, vec![1, 0]);
    }

    #[test]
    fn empty_iso_averages_over_translates() {
        // On a single term the empty partial isomorphism averages over the
        // left (resp. right) GL action; it is neutral on invariant elements.
        let f = Field::new(3, 1).unwrap();
        let x = colinear_term(&f, vec![1, 1], 2, vec![1, 0]);
        let u = AlgElem::unit(2);
        let xe = AlgElem::basis(x.clone());
        let gl = crate::group::gl_elements(&f, 2).unwrap();
        let w = Q::new(1.into(), (gl.len() as i64).into());
        let mut left = AlgElem::zero(2);
        let mut right = AlgElem::zero(2);
        for k in &gl {
            left.add_term(x.act_left(&f, k).unwrap(), w.clone());
            right.add_term(x.act_right(&f, k).unwrap(), w.clone());
        }
        assert_eq!(product(&f, &u, &xe).unwrap(), left);
        assert_eq!(product(&f, &xe, &u).unwrap(), right);
        assert_eq!(product(&f, &u, &left).unwrap(), left);
    }

    #[test]
    fn pi_of_unit_is_average_of_inverse_pairs() {
        let f = Field::new(2, 1).unwrap();
        let p = pi_n(&f, &AlgElem::unit(2)).unwrap();
        assert_eq!(p.terms().len(), 6);
        for ((g1, g2), c) in p.terms() {
            assert!(g2.mul(&f, g1).is_identity());
            assert_eq!(*c, Q::new(1.into(), 6.into()));
        }
    }

    #[test]
    fn phi_identity_when_equal() {
        let f = Field::new(2, 1).unwrap();
        let x = AlgElem::basis(colinear_term(&f, vec![1, 1], 1, vec![1, 0]));
        assert_eq!(phi(&f, &x, 2).unwrap(), x);
        assert!(phi(&f, &x, 3).is_err());
    }
}
