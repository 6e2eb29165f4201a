//! Explicit elements of GL(n, F_q): full enumeration, censuses by type, and
//! conjugacy classes as conjugation orbits.

use std::collections::{BTreeMap, HashSet, VecDeque};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::conjtype::{jordan_matrix, type_of, Polypartition};
use crate::error::{invalid, Result};
use crate::field::Field;
use crate::matrix::Mat;
use crate::rational::gl_order;
use crate::subspace::all_vectors;

/// Upper bound on |GL(n, F_q)| for full enumeration.
pub const MAX_GROUP: u64 = 10_000_000;
/// Upper bound on the size of a class built by orbit search.
pub const MAX_CLASS: usize = 1_000_000;

/// All invertible n x n matrices, built row by row.
pub fn gl_elements(f: &Field, n: usize) -> Result<Vec<Mat>> {
    let order = gl_order(f.q(), n);
    if order > BigInt::from(MAX_GROUP) {
        return invalid(format!("|GL({n},{})| = {order} is too large to enumerate", f.q()));
    }
    let vecs = all_vectors(f, n);
    let mut out = Vec::new();
    let mut rows: Vec<Vec<u8>> = Vec::new();
    fn rec(f: &Field, n: usize, vecs: &[Vec<u8>], rows: &mut Vec<Vec<u8>>, out: &mut Vec<Mat>) {
        if rows.len() == n {
            out.push(Mat::from_rows(rows).expect("square"));
            return;
        }
        for v in vecs {
            rows.push(v.clone());
            let m = Mat::from_rows(rows).expect("rows");
            if m.rank(f) == rows.len() {
                rec(f, n, vecs, rows, out);
            }
            rows.pop();
        }
    }
    if n == 0 {
        return Ok(vec![Mat::identity(0)]);
    }
    rec(f, n, &vecs, &mut rows, &mut out);
    Ok(out)
}

/// Buckets all of GL(n, F_q) by conjugacy type.
pub fn census(f: &Field, n: usize) -> Result<BTreeMap<Polypartition, u64>> {
    let elems = gl_elements(f, n)?;
    let types: Result<Vec<Polypartition>> = elems.par_iter().map(|g| type_of(f, g)).collect();
    let mut out = BTreeMap::new();
    for t in types? {
        *out.entry(t).or_insert(0) += 1;
    }
    Ok(out)
}

/// A generating set of GL(n, F_q): elementary transvections I + α E_ij with α
/// running over an F_p-basis of F_q, plus diag(ω, 1, ..., 1) for a primitive ω.
pub fn gl_generators(f: &Field, n: usize) -> Vec<Mat> {
    let mut gens = Vec::new();
    let alphas: Vec<u8> = (0..f.e()).map(|i| f.pow(f.generator().unwrap_or(1), i as u64)).collect();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for &a in &alphas {
                let mut m = Mat::identity(n);
                m.set(i, j, a);
                gens.push(m);
            }
        }
    }
    if n > 0 && f.q() > 2 {
        let mut d = Mat::identity(n);
        d.set(0, 0, f.primitive_element());
        gens.push(d);
    }
    gens
}

/// The conjugacy class of g, by breadth-first search under conjugation by
/// the generators (both s g s^{-1} and s^{-1} g s).
pub fn conjugacy_class(f: &Field, g: &Mat) -> Result<Vec<Mat>> {
    let n = g.rows();
    let gens: Vec<(Mat, Mat)> = gl_generators(f, n)
        .into_iter()
        .map(|s| {
            let si = s.inverse(f).expect("generators are invertible");
            (s, si)
        })
        .collect();
    let mut seen: HashSet<Mat> = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(g.clone());
    queue.push_back(g.clone());
    while let Some(x) = queue.pop_front() {
        for (s, si) in &gens {
            for y in [s.mul(f, &x).mul(f, si), si.mul(f, &x).mul(f, s)] {
                if seen.insert(y.clone()) {
                    if seen.len() > MAX_CLASS {
                        return invalid("conjugacy class too large for orbit search");
                    }
                    queue.push_back(y);
                }
            }
        }
        order.push(x);
    }
    order.sort();
    Ok(order)
}

/// Elements of the class C_μ in GL(|μ|, F_q).
pub fn class_elements(f: &Field, mu: &Polypartition) -> Result<Vec<Mat>> {
    conjugacy_class(f, &jordan_matrix(f, mu))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_orders() {
        for (q, n, order) in [(2, 2, 6), (3, 2, 48), (2, 3, 168)] {
            let f = Field::with_order(q).unwrap();
            assert_eq!(gl_elements(&f, n).unwrap().len(), order);
        }
    }

    #[test]
    fn orbit_of_identity_is_trivial() {
        let f = Field::with_order(4).unwrap();
        assert_eq!(conjugacy_class(&f, &Mat::identity(2)).unwrap().len(), 1);
    }
}
