//! The single-automorphism construction: (V, g) with g ∈ GL(V), multiplied
//! by averaging trivial extensions. It is not associative for n ≥ 2, which is
//! what this module exhibits.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::conjtype::{type_of, Polypartition};
use crate::error::{invalid, Result};
use crate::field::Field;
use crate::group::gl_elements;
use crate::matrix::Mat;
use crate::rational::Q;
use crate::subspace::{all_vectors, enumerate_subspaces, Subspace};

/// An automorphism of a subspace, in its canonical basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NaiveIso {
    pub v: Subspace,
    pub g: Mat,
}

pub type NaiveElem = BTreeMap<NaiveIso, Q>;

/// Trivial extensions of (V, g) to V⁺ ⊇ V: automorphisms of V⁺ restricting
/// to g whose type only gains parts 1 at X - 1.
fn naive_extensions(f: &Field, x: &NaiveIso, v_plus: &Subspace) -> Result<Vec<NaiveIso>> {
    let k = x.v.dim();
    let kp = v_plus.dim();
    if kp == k {
        return Ok(vec![x.clone()]);
    }
    let mut rows = x.v.basis().row_vecs();
    rows.extend(x.v.complete_within(f, v_plus));
    let xm = v_plus.coord_matrix(&rows);
    let xi = xm.inverse(f)?;
    let target = type_of(f, &x.g)?.union(&Polypartition::linear(f, 1, &vec![1; kp - k]));
    let mut out = Vec::new();
    for p in all_vectors(f, k * (kp - k)) {
        let pm = Mat::from_vec(k, kp - k, p)?;
        for m in gl_elements(f, kp - k)? {
            let b = Mat::block(&x.g, &pm, &Mat::zeros(kp - k, k), &m);
            if type_of(f, &b)? == target {
                out.push(NaiveIso { v: v_plus.clone(), g: xm.mul(f, &b).mul(f, &xi) });
            }
        }
    }
    Ok(out)
}

/// Product of two naive elements: each basis pair is replaced by the mean
/// of h⁺ ∘ g⁺ over trivial extensions to V + W.
pub fn naive_product(f: &Field, x: &NaiveElem, y: &NaiveElem) -> Result<NaiveElem> {
    let mut acc = NaiveElem::new();
    for (a, ca) in x {
        for (b, cb) in y {
            let s = a.v.sum(f, &b.v);
            let ea = naive_extensions(f, a, &s)?;
            let eb = naive_extensions(f, b, &s)?;
            let w = ca * cb / Q::from_integer(BigInt::from(ea.len() * eb.len()));
            for ga in &ea {
                for hb in &eb {
                    let t = NaiveIso { v: s.clone(), g: hb.g.mul(f, &ga.g) };
                    *acc.entry(t).or_insert_with(Q::zero) += &w;
                }
            }
        }
    }
    acc.retain(|_, c| !c.is_zero());
    Ok(acc)
}

/// A triple with (g * h) * i ≠ g * (h * i).
#[derive(Clone, Debug)]
pub struct NaiveCounterexample {
    pub g: NaiveIso,
    pub h: NaiveIso,
    pub i: NaiveIso,
    pub lhs: NaiveElem,
    pub rhs: NaiveElem,
}

fn single(x: &NaiveIso) -> NaiveElem {
    NaiveElem::from([(x.clone(), Q::from_integer(1.into()))])
}

fn check(f: &Field, g: &NaiveIso, h: &NaiveIso, i: &NaiveIso) -> Result<Option<NaiveCounterexample>> {
    let lhs = naive_product(f, &naive_product(f, &single(g), &single(h))?, &single(i))?;
    let rhs = naive_product(f, &single(g), &naive_product(f, &single(h), &single(i))?)?;
    Ok((lhs != rhs).then(|| NaiveCounterexample { g: g.clone(), h: h.clone(), i: i.clone(), lhs, rhs }))
}

/// Finds a non-associative triple in F_q^n. Tries the recipe first: G = H a
/// non-identity automorphism of a coordinate subspace of dimension d, I the
/// identity of a coordinate subspace of dimension d + 1. Falls back to a
/// search over all triples when the basis is small.
pub fn naive_counterexample(f: &Field, n: usize) -> Result<Option<NaiveCounterexample>> {
    if n < 2 {
        return invalid("the naive product is associative for n < 2");
    }
    for d in 1..n {
        let i = NaiveIso { v: Subspace::coordinate(n, d + 1), g: Mat::identity(d + 1) };
        for g in gl_elements(f, d)?.into_iter().filter(|g| !g.is_identity()) {
            let g = NaiveIso { v: Subspace::coordinate(n, d), g };
            if let Some(cex) = check(f, &g, &g, &i)? {
                return Ok(Some(cex));
            }
        }
    }
    let mut all = Vec::new();
    for k in 0..=n {
        let gl = gl_elements(f, k)?;
        for v in enumerate_subspaces(f, n, k, None)? {
            for g in &gl {
                all.push(NaiveIso { v: v.clone(), g: g.clone() });
            }
        }
    }
    if all.len() > MAX_SEARCH {
        return Ok(None);
    }
    for g in &all {
        for h in &all {
            for i in &all {
                if let Some(cex) = check(f, g, h, i)? {
                    return Ok(Some(cex));
                }
            }
        }
    }
    Ok(None)
}

/// Largest naive basis searched exhaustively.
const MAX_SEARCH: usize = 64;
