//! Trivial extensions of partial isomorphisms.

use std::collections::HashSet;

use num_bigint::BigInt;

use super::PartialIso;
use crate::conjtype::Polypartition;
use crate::error::{invalid, Result};
use crate::field::{Elem, Field};
use crate::matrix::Mat;
use crate::subspace::{all_vectors, enumerate_completions, Subspace};

/// E_q(n, k⁺, k, k1) = q^{(k-k1)(k⁺-k)} (qⁿ-q^k)...(qⁿ-q^{k⁺-1}).
pub fn count_e(q: u32, n: usize, k_plus: usize, k: usize, k1: usize) -> Result<BigInt> {
    if !(k1 <= k && k <= k_plus && k_plus <= n) {
        return invalid("need k1 <= k <= k+ <= n");
    }
    let qb = BigInt::from(q);
    let qn = qb.pow(n as u32);
    let head = qb.pow(((k - k1) * (k_plus - k)) as u32);
    Ok((k..k_plus).fold(head, |acc, i| acc * (&qn - qb.pow(i as u32))))
}

/// F_q(k⁺, k, k1) = q^{(k-k1)(k⁺-k)} (q^{k⁺}-q^k)...(q^{k⁺}-q^{k⁺-1}).
pub fn count_f(q: u32, k_plus: usize, k: usize, k1: usize) -> Result<BigInt> {
    if !(k1 <= k && k <= k_plus) {
        return invalid("need k1 <= k <= k+");
    }
    count_e(q, k_plus, k_plus, k, k1)
}

/// Column space of (G - I), as a list of distinct vectors.
fn image_of_g_minus_one(f: &Field, g: &Mat) -> Vec<Vec<Elem>> {
    let k = g.rows();
    let d = g.sub(f, &Mat::identity(k));
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for c in all_vectors(f, k) {
        let v = d.apply(f, &c);
        if seen.insert(v.clone()) {
            out.push(v);
        }
    }
    out
}

fn tuples<T: Clone>(items: &[T], len: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                items.iter().map(move |x| {
                    let mut t2 = t.clone();
                    t2.push(x.clone());
                    t2
                })
            })
            .collect();
    }
    out
}

/// Shared enumeration: right space fixed to `w_plus`; the new left vectors
/// come from `pool` when given (both spaces fixed) or from all of F_q^n.
fn extensions_impl(f: &Field, i: &PartialIso, w_plus: &Subspace, pool: Option<&Subspace>) -> Result<Vec<PartialIso>> {
    if !w_plus.contains_space(f, i.right()) {
        return invalid("right space is not contained in W+");
    }
    if let Some(p) = pool {
        if !p.contains_space(f, i.left()) || p.dim() != w_plus.dim() {
            return invalid("left space is not contained in V+ of the right dimension");
        }
    }
    let k = i.dim();
    let kp = w_plus.dim();
    if kp == k {
        return Ok(vec![i.clone()]);
    }
    let n = i.ambient();
    // F = canonical basis of W, completed inside W+; E = g1⁻¹(F).
    let mut f_rows = i.right().basis().row_vecs();
    f_rows.extend(i.right().complete_within(f, w_plus));
    let m1_inv = i.g1().inverse(f)?;
    let e = if k == 0 { Mat::zeros(0, n) } else { m1_inv.transpose().mul(f, i.left().basis()) };
    let g = i.g1().mul(f, i.g2());
    let cols = image_of_g_minus_one(f, &g);
    let ps = tuples(&cols, kp - k);
    let xf_inv = w_plus.coord_matrix(&f_rows).inverse(f)?;
    let lower = Mat::block(&Mat::zeros(kp - k, k), &Mat::identity(kp - k), &Mat::zeros(0, k), &Mat::zeros(0, kp - k));
    let mut out = Vec::with_capacity(ps.len());
    for comp in enumerate_completions(f, &e, kp, pool)? {
        let v_plus = Subspace::span(f, &comp);
        let xe = v_plus.coord_matrix(&comp.row_vecs());
        let m1 = w_plus.coord_matrix(&f_rows).mul(f, &xe.inverse(f)?);
        for p in &ps {
            let pm = Mat::from_cols(k, p);
            let top = Mat::block(&g, &pm, &Mat::zeros(0, k), &Mat::zeros(0, kp - k));
            let a2 = Mat::block(&top, &Mat::zeros(0, 0), &lower, &Mat::zeros(kp - k, 0));
            let m2 = xe.mul(f, &a2).mul(f, &xf_inv);
            out.push(PartialIso::raw(v_plus.clone(), w_plus.clone(), m1.clone(), m2));
        }
    }
    Ok(out)
}

/// All trivial extensions of `i` with right space `w_plus` (left space free).
pub fn extensions_fixed_right(f: &Field, i: &PartialIso, w_plus: &Subspace) -> Result<Vec<PartialIso>> {
    extensions_impl(f, i, w_plus, None)
}

/// All trivial extensions of `i` with left space `v_plus` (right space free).
pub fn extensions_fixed_left(f: &Field, i: &PartialIso, v_plus: &Subspace) -> Result<Vec<PartialIso>> {
    Ok(extensions_impl(f, &i.transpose(), v_plus, None)?.into_iter().map(|x| x.transpose()).collect())
}

/// All trivial extensions of `i` with both spaces fixed.
pub fn extensions_both_fixed(
    f: &Field,
    i: &PartialIso,
    v_plus: &Subspace,
    w_plus: &Subspace,
) -> Result<Vec<PartialIso>> {
    extensions_impl(f, i, w_plus, Some(v_plus))
}

/// Every extension of `i` (trivial or not) with right space `w_plus`, by
/// brute force. Only for small cases.
pub fn all_extensions_fixed_right(f: &Field, i: &PartialIso, w_plus: &Subspace) -> Result<Vec<PartialIso>> {
    if !w_plus.contains_space(f, i.right()) {
        return invalid("right space is not contained in W+");
    }
    let k = i.dim();
    let kp = w_plus.dim();
    if kp == k {
        return Ok(vec![i.clone()]);
    }
    let n = i.ambient();
    let w_rows = i.right().basis().row_vecs();
    let mut f_rows = w_rows.clone();
    f_rows.extend(i.right().complete_within(f, w_plus));
    let vb = if k == 0 { Mat::zeros(0, n) } else { i.left().basis().clone() };
    let mut seen = HashSet::new();
    for comp in enumerate_completions(f, &vb, kp, None)? {
        let v_plus = Subspace::span(f, &comp);
        let e_rows = comp.row_vecs();
        let wb = if k == 0 { Mat::zeros(0, n) } else { i.right().basis().clone() };
        // g1⁺ on the new left vectors: images completing g1(V) = W to W+.
        for img in enumerate_completions(f, &wb, kp, Some(w_plus))? {
            // a1: columns are F-coordinates of g1⁺(e_j), expressed in (w_rows, img extra).
            let mut g1_img: Vec<Vec<Elem>> = (0..k).map(|j| i.right().vector(f, &i.g1().col(j))).collect();
            g1_img.extend(img.row_vecs()[k..].iter().cloned());
            // g2⁺ on the new right vectors: images completing V to V+.
            for img2 in enumerate_completions(f, &vb, kp, Some(&v_plus))? {
                let mut g2_img: Vec<Vec<Elem>> = (0..k).map(|j| i.left().vector(f, &i.g2().col(j))).collect();
                g2_img.extend(img2.row_vecs()[k..].iter().cloned());
                let fmat = Mat::from_rows(&f_rows)?;
                let emat = Mat::from_rows(&e_rows)?;
                let wp = Subspace::span(f, &fmat);
                let a1 = wp.coord_matrix(&g1_img);
                let xf = wp.coord_matrix(&f_rows);
                let a1 = xf.inverse(f)?.mul(f, &a1);
                let vp = Subspace::span(f, &emat);
                let xe = vp.coord_matrix(&e_rows);
                let a2 = xe.inverse(f)?.mul(f, &vp.coord_matrix(&g2_img));
                seen.insert(PartialIso::from_bases(f, &emat, &fmat, &a1, &a2)?);
            }
        }
    }
    let mut out: Vec<PartialIso> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Trivial by type: t(g1⁺g2⁺) = t(g1g2) with k⁺-k extra parts 1 on X-1.
pub fn is_trivial_by_type(f: &Field, base: &PartialIso, ext: &PartialIso) -> bool {
    let extra = Polypartition::linear(f, 1, &vec![1; ext.dim() - base.dim()]);
    ext.piso_type(f) == base.piso_type(f).union(&extra)
}

/// Trivial by quotients: the maps induced on V⁺/V and W⁺/W are inverse to
/// each other, i.e. (g1⁺g2⁺ - id) sends V⁺ into V.
pub fn is_trivial_by_quotient(f: &Field, base: &PartialIso, ext: &PartialIso) -> bool {
    let kp = ext.dim();
    let d = ext.composite(f).sub(f, &Mat::identity(kp));
    (0..kp).all(|j| {
        let v = ext.left().vector(f, &d.col(j));
        base.left().contains(f, &v)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_examples() {
        assert_eq!(count_e(2, 2, 1, 0, 0).unwrap(), BigInt::from(3));
        assert_eq!(count_e(2, 2, 2, 1, 1).unwrap(), BigInt::from(2));
        assert_eq!(count_f(2, 2, 1, 1).unwrap(), BigInt::from(2));
        assert_eq!(count_e(5, 4, 2, 2, 1).unwrap(), BigInt::from(1));
        assert!(count_e(2, 2, 1, 2, 0).is_err());
    }

    #[test]
    fn identity_line_extends_twice() {
        let f = Field::new(2, 1).unwrap();
        let l = Subspace::coordinate(2, 1);
        let i = PartialIso::new(&f, l.clone(), l, Mat::identity(1), Mat::identity(1)).unwrap();
        let exts = extensions_fixed_right(&f, &i, &Subspace::full(2)).unwrap();
        assert_eq!(exts.len(), 2);
        let same = extensions_fixed_right(&f, &i, i.right()).unwrap();
        assert_eq!(same, vec![i.clone()]);
        assert!(extensions_fixed_right(&f, &i, &Subspace::span_vecs(&f, 2, &[vec![0, 1]])).is_err());
    }

    #[test]
    fn empty_extends_to_lines() {
        let f = Field::new(2, 1).unwrap();
        let line = Subspace::coordinate(2, 1);
        let exts = extensions_fixed_right(&f, &PartialIso::empty(2), &line).unwrap();
        assert_eq!(exts.len(), 3);
    }
}
