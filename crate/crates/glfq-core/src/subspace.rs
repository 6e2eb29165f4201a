//! Subspaces of F_q^n in canonical (reduced row-echelon) form.

use crate::error::{invalid, Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::Mat;

/// A subspace of F_q^n, stored by its RREF basis (rows). Two subspaces are
/// equal iff their bases are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    basis: Mat,
}

impl Subspace {
    pub fn zero(n: usize) -> Subspace {
        Subspace { basis: Mat::zeros(0, n) }
    }
    pub fn full(n: usize) -> Subspace {
        Subspace { basis: Mat::identity(n) }
    }
    /// Span of the rows of a k x n matrix.
    pub fn span(f: &Field, rows: &Mat) -> Subspace {
        Subspace { basis: rows.rref(f).0 }
    }
    pub fn span_vecs(f: &Field, n: usize, vecs: &[Vec<Elem>]) -> Subspace {
        if vecs.is_empty() {
            return Subspace::zero(n);
        }
        Subspace::span(f, &Mat::from_rows(vecs).expect("vectors of equal length"))
    }
    /// Wraps a matrix that is already in RREF without zero rows.
    pub fn from_rref(basis: Mat) -> Subspace {
        Subspace { basis }
    }
    /// Standard coordinate subspace spanned by e_0, ..., e_{k-1}.
    pub fn coordinate(n: usize, k: usize) -> Subspace {
        let mut m = Mat::zeros(k, n);
        for i in 0..k {
            m.set(i, i, 1);
        }
        Subspace { basis: m }
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn basis(&self) -> &Mat {
        &self.basis
    }
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|i| self.basis.row(i).iter().position(|&x| x != 0).expect("no zero rows"))
            .collect()
    }

    /// Coordinates of v in the canonical basis: its entries at the pivot
    /// columns. Only meaningful for v in the subspace.
    pub fn coords(&self, v: &[Elem]) -> Vec<Elem> {
        self.pivots().iter().map(|&c| v[c]).collect()
    }
    /// Vector with the given coordinates.
    pub fn vector(&self, f: &Field, coords: &[Elem]) -> Vec<Elem> {
        let mut v = vec![0; self.ambient()];
        for (i, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, x) in v.iter_mut().enumerate() {
                *x = f.add(*x, f.mul(c, self.basis.get(i, j)));
            }
        }
        v
    }
    pub fn contains(&self, f: &Field, v: &[Elem]) -> bool {
        self.vector(f, &self.coords(v)) == v
    }
    pub fn contains_space(&self, f: &Field, o: &Subspace) -> bool {
        (0..o.dim()).all(|i| self.contains(f, o.basis.row(i)))
    }
    pub fn sum(&self, f: &Field, o: &Subspace) -> Subspace {
        let mut rows = self.basis.row_vecs();
        rows.extend(o.basis.row_vecs());
        Subspace::span_vecs(f, self.ambient(), &rows)
    }
    /// Image of the subspace under a linear map (matrix acting on columns).
    pub fn image(&self, f: &Field, m: &Mat) -> Subspace {
        let rows: Vec<Vec<Elem>> = (0..self.dim()).map(|i| m.apply(f, self.basis.row(i))).collect();
        Subspace::span_vecs(f, m.rows(), &rows)
    }
    /// Matrix (dim x dim) whose columns are the coordinates of the given vectors.
    pub fn coord_matrix(&self, vecs: &[Vec<Elem>]) -> Mat {
        let piv = self.pivots();
        let k = vecs.len();
        let mut m = Mat::zeros(piv.len(), k);
        for (j, v) in vecs.iter().enumerate() {
            for (i, &c) in piv.iter().enumerate() {
                m.set(i, j, v[c]);
            }
        }
        m
    }
    /// Truncates to the first m coordinates (the subspace must lie there).
    pub fn truncate(&self, m: usize) -> Subspace {
        let rows: Vec<Vec<Elem>> = self.basis.row_vecs().into_iter().map(|r| r[..m].to_vec()).collect();
        if rows.is_empty() {
            return Subspace::zero(m);
        }
        Subspace { basis: Mat::from_rows(&rows).expect("rows of equal length") }
    }
    /// Embeds into F_q^m (m >= n) via the first n coordinates.
    pub fn embed(&self, m: usize) -> Subspace {
        let rows: Vec<Vec<Elem>> = self
            .basis
            .row_vecs()
            .into_iter()
            .map(|mut r| {
                r.resize(m, 0);
                r
            })
            .collect();
        if rows.is_empty() {
            return Subspace::zero(m);
        }
        Subspace { basis: Mat::from_rows(&rows).expect("rows of equal length") }
    }
    /// True if the subspace lies in the span of the first m coordinates.
    pub fn inside_first(&self, m: usize) -> bool {
        (0..self.dim()).all(|i| self.basis.row(i)[m..].iter().all(|&x| x == 0))
    }

    /// All vectors of the subspace, in coordinate order.
    pub fn vectors(&self, f: &Field) -> Vec<Vec<Elem>> {
        all_vectors(f, self.dim()).iter().map(|c| self.vector(f, c)).collect()
    }

    /// Extends the canonical basis by rows from `within` to a basis of `within`.
    pub fn complete_within(&self, f: &Field, within: &Subspace) -> Vec<Vec<Elem>> {
        let mut cur = self.clone();
        let mut extra = Vec::new();
        for i in 0..within.dim() {
            let v = within.basis.row(i);
            if !cur.contains(f, v) {
                extra.push(v.to_vec());
                cur = cur.sum(f, &Subspace::span_vecs(f, self.ambient(), &[v.to_vec()]));
            }
        }
        extra
    }
}

/// All vectors of F_q^k in lexicographic order (last coordinate fastest).
pub fn all_vectors(f: &Field, k: usize) -> Vec<Vec<Elem>> {
    let q = f.q() as usize;
    let total = q.pow(k as u32);
    (0..total)
        .map(|mut idx| {
            let mut v = vec![0; k];
            for i in (0..k).rev() {
                v[i] = (idx % q) as Elem;
                idx /= q;
            }
            v
        })
        .collect()
}

/// All k-dimensional subspaces of F_q^n (containing `containing` if given),
/// in a deterministic order (by pivot set, then free entries).
pub fn enumerate_subspaces(
    f: &Field,
    n: usize,
    k: usize,
    containing: Option<&Subspace>,
) -> Result<Vec<Subspace>> {
    if k > n {
        return invalid(format!("dimension {k} exceeds ambient {n}"));
    }
    if let Some(c) = containing {
        if c.ambient() != n {
            return Err(Error::Shape("containing subspace has another ambient".into()));
        }
        if c.dim() > k {
            return Ok(Vec::new());
        }
    }
    let mut out = Vec::new();
    let mut piv = Vec::with_capacity(k);
    pivot_sets(n, k, 0, &mut piv, &mut |pivots| {
        // Free positions: row i, columns > pivots[i] that are not pivots.
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| (pivots[i] + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (i, c)))
            .collect();
        for vals in all_vectors(f, free.len()) {
            let mut m = Mat::zeros(k, n);
            for (i, &p) in pivots.iter().enumerate() {
                m.set(i, p, 1);
            }
            for (&(i, c), &v) in free.iter().zip(&vals) {
                m.set(i, c, v);
            }
            let s = Subspace { basis: m };
            if containing.is_none_or(|c| s.contains_space(f, c)) {
                out.push(s);
            }
        }
    });
    Ok(out)
}

fn pivot_sets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        visit(cur);
        return;
    }
    for c in start..n {
        if n - c < k - cur.len() {
            break;
        }
        cur.push(c);
        pivot_sets(n, k, c + 1, cur, visit);
        cur.pop();
    }
}

/// All ways to extend the rows of `basis` (rank k) by k_plus - k vectors so
/// that the family stays linearly independent. The new vectors are drawn
/// from `pool` when given, otherwise from all of F_q^n.
pub fn enumerate_completions(
    f: &Field,
    basis: &Mat,
    k_plus: usize,
    pool: Option<&Subspace>,
) -> Result<Vec<Mat>> {
    let n = basis.cols();
    let k = basis.rows();
    if basis.rank(f) != k {
        return invalid("basis rows are linearly dependent");
    }
    if k_plus < k || k_plus > n {
        return invalid(format!("cannot complete {k} vectors to {k_plus} in dimension {n}"));
    }
    let candidates = match pool {
        Some(p) => p.vectors(f),
        None => all_vectors(f, n),
    };
    let mut out = Vec::new();
    let mut rows = basis.row_vecs();
    let span = Subspace::span(f, basis);
    extend_rec(f, n, k_plus, &candidates, &mut rows, &span, &mut out);
    Ok(out)
}

fn extend_rec(
    f: &Field,
    n: usize,
    k_plus: usize,
    candidates: &[Vec<Elem>],
    rows: &mut Vec<Vec<Elem>>,
    span: &Subspace,
    out: &mut Vec<Mat>,
) {
    if rows.len() == k_plus {
        out.push(Mat::from_rows(rows).unwrap_or_else(|_| Mat::zeros(0, n)));
        return;
    }
    for v in candidates {
        if span.contains(f, v) {
            continue;
        }
        let next = span.sum(f, &Subspace::span_vecs(f, n, std::slice::from_ref(v)));
        rows.push(v.clone());
        extend_rec(f, n, k_plus, candidates, rows, &next, out);
        rows.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(enumerate_subspaces(&f, 2, 1, None).unwrap().len(), 3);
        assert_eq!(enumerate_subspaces(&f, 2, 0, None).unwrap(), vec![Subspace::zero(2)]);
        assert_eq!(enumerate_subspaces(&f, 2, 2, None).unwrap(), vec![Subspace::full(2)]);
        assert!(enumerate_subspaces(&f, 2, 3, None).is_err());
        assert_eq!(enumerate_completions(&f, &Mat::zeros(0, 2), 1, None).unwrap().len(), 3);
        let e1 = Mat::parse(&f, "1,0").unwrap();
        assert_eq!(enumerate_completions(&f, &e1, 2, None).unwrap().len(), 2);
        assert_eq!(enumerate_completions(&f, &e1, 1, None).unwrap(), vec![e1.clone()]);
        let dep = Mat::parse(&f, "1,0;1,0").unwrap();
        assert!(enumerate_completions(&f, &dep, 2, None).is_err());
    }

    #[test]
    fn containing_filter() {
        let f = Field::new(3, 1).unwrap();
        let line = Subspace::coordinate(3, 1);
        let planes = enumerate_subspaces(&f, 3, 2, Some(&line)).unwrap();
        assert_eq!(planes.len(), 4);
        assert!(planes.iter().all(|p| p.contains_space(&f, &line)));
    }

    #[test]
    fn coordinates_round_trip() {
        let f = Field::new(5, 1).unwrap();
        let s = Subspace::span_vecs(&f, 3, &[vec![2, 1, 0], vec![0, 3, 1]]);
        for v in s.vectors(&f) {
            assert_eq!(s.vector(&f, &s.coords(&v)), v);
            assert!(s.contains(&f, &v));
        }
        assert!(!s.contains(&f, &[1, 0, 0]));
    }
}
