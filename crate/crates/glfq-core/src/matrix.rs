//! Dense matrices over F_q.
//!
//! A matrix acts on column vectors. With the composition convention
//! `gh = h∘g`, the matrix of `gh` is `mat(h) · mat(g)`.

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }
    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Elem>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Mat { rows, cols, data })
    }
    pub fn from_rows(rows: &[Vec<Elem>]) -> Result<Mat> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Mat { rows: rows.len(), cols, data: rows.concat() })
    }
    /// Matrix whose columns are the given vectors.
    pub fn from_cols(n: usize, cols: &[Vec<Elem>]) -> Mat {
        let mut m = Mat::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                m.set(i, j, c[i]);
            }
        }
        m
    }
    /// Block matrix [[a, b], [c, d]].
    pub fn block(a: &Mat, b: &Mat, c: &Mat, d: &Mat) -> Mat {
        let (r, s) = (a.rows + c.rows, a.cols + b.cols);
        let mut m = Mat::zeros(r, s);
        for (blk, ro, co) in [(a, 0, 0), (b, 0, a.cols), (c, a.rows, 0), (d, a.rows, a.cols)] {
            for i in 0..blk.rows {
                for j in 0..blk.cols {
                    m.set(ro + i, co + j, blk.get(i, j));
                }
            }
        }
        m
    }
    /// Block-diagonal matrix.
    pub fn diag_blocks(blocks: &[Mat]) -> Mat {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = Mat::zeros(n, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(off + i, off + j, b.get(i, j));
                }
            }
            off += b.rows;
        }
        m
    }
    /// Companion matrix of a monic polynomial: ones on the subdiagonal,
    /// last column `-a_0, ..., -a_{d-1}`.
    pub fn companion(f: &Field, p: &Poly) -> Mat {
        let d = p.deg();
        let mut m = Mat::zeros(d, d);
        for i in 1..d {
            m.set(i, i - 1, 1);
        }
        for i in 0..d {
            m.set(i, d - 1, f.neg(p.coeff(i)));
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }
    pub fn data(&self) -> &[Elem] {
        &self.data
    }
    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }
    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Mat::identity(self.rows)
    }

    pub fn mul(&self, f: &Field, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "shape mismatch in matrix product");
        let mut r = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    r.data[idx] = f.add(r.data[idx], f.mul(a, o.get(k, j)));
                }
            }
        }
        r
    }
    pub fn try_mul(&self, f: &Field, o: &Mat) -> Result<Mat> {
        if self.cols != o.rows {
            return Err(Error::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(self.mul(f, o))
    }
    pub fn add(&self, f: &Field, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| f.add(a, b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }
    pub fn sub(&self, f: &Field, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }
    pub fn scale(&self, f: &Field, a: Elem) -> Mat {
        let data = self.data.iter().map(|&x| f.mul(a, x)).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }
    /// Matrix times column vector.
    pub fn apply(&self, f: &Field, v: &[Elem]) -> Vec<Elem> {
        (0..self.rows)
            .map(|i| (0..self.cols).fold(0, |acc, j| f.add(acc, f.mul(self.get(i, j), v[j]))))
            .collect()
    }

    /// In-place reduced row-echelon form; returns pivot columns.
    pub fn rref_in_place(&mut self, f: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else { continue };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            for j in c..self.cols {
                let v = f.mul(inv, self.get(r, j));
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                let factor = self.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
    /// Reduced row-echelon form with zero rows removed, and pivot columns.
    pub fn rref(&self, f: &Field) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let piv = m.rref_in_place(f);
        m.data.truncate(piv.len() * m.cols);
        m.rows = piv.len();
        (m, piv)
    }
    pub fn rank(&self, f: &Field) -> usize {
        self.clone().rref_in_place(f).len()
    }
    pub fn is_invertible(&self, f: &Field) -> bool {
        self.is_square() && self.rank(f) == self.rows
    }
    pub fn inverse(&self, f: &Field) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Mat::identity(0));
        }
        let aug = Mat::block(self, &Mat::identity(n), &Mat::zeros(0, n), &Mat::zeros(0, n));
        let mut m = aug;
        let piv = m.rref_in_place(f);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, m.get(i, n + j));
            }
        }
        Ok(inv)
    }
    /// Basis (as rows, in RREF) of the right kernel {x : A x = 0}.
    pub fn kernel_rows(&self, f: &Field) -> Vec<Vec<Elem>> {
        let (r, piv) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let mut basis: Vec<Vec<Elem>> = free
            .iter()
            .map(|&fc| {
                let mut v = vec![0; self.cols];
                v[fc] = 1;
                for (i, &pc) in piv.iter().enumerate() {
                    v[pc] = f.neg(r.get(i, fc));
                }
                v
            })
            .collect();
        let m = Mat::from_rows(&basis).unwrap_or_else(|_| Mat::zeros(0, self.cols));
        if !basis.is_empty() {
            basis = m.rref(f).0.row_vecs();
        }
        basis
    }
    pub fn nullity(&self, f: &Field) -> usize {
        self.cols - self.rank(f)
    }

    /// Monic characteristic polynomial det(XI - A), via Hessenberg reduction.
    pub fn charpoly(&self, f: &Field) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::Shape("charpoly of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(piv) = (j + 1..n).find(|&i| h.get(i, j) != 0) else { continue };
            if piv != j + 1 {
                for c in 0..n {
                    h.data.swap(piv * n + c, (j + 1) * n + c);
                }
                for r in 0..n {
                    h.data.swap(r * n + piv, r * n + j + 1);
                }
            }
            let inv = f.inv(h.get(j + 1, j));
            for i in j + 2..n {
                let u = f.mul(h.get(i, j), inv);
                if u == 0 {
                    continue;
                }
                for c in 0..n {
                    let v = f.sub(h.get(i, c), f.mul(u, h.get(j + 1, c)));
                    h.set(i, c, v);
                }
                for r in 0..n {
                    let v = f.add(h.get(r, j + 1), f.mul(u, h.get(r, i)));
                    h.set(r, j + 1, v);
                }
            }
        }
        // p[m] = charpoly of the leading m x m block.
        let mut p: Vec<Poly> = vec![Poly::one()];
        for m in 1..=n {
            let mm = m - 1;
            let lin = Poly::new(vec![f.neg(h.get(mm, mm)), 1]);
            let mut next = lin.mul(f, &p[m - 1]);
            let mut prod: Elem = 1;
            for i in (0..mm).rev() {
                prod = f.mul(prod, h.get(i + 1, i));
                let coef = f.mul(prod, h.get(i, mm));
                if coef != 0 {
                    next = next.sub(f, &p[i].scale(f, coef));
                }
            }
            p.push(next);
        }
        Ok(p.pop().unwrap())
    }

    /// P(A) by Horner's rule.
    pub fn eval_poly(&self, f: &Field, p: &Poly) -> Mat {
        let n = self.rows;
        let mut acc = Mat::zeros(n, n);
        for &c in p.coeffs().iter().rev() {
            acc = acc.mul(f, self);
            for i in 0..n {
                let v = f.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    pub fn pow(&self, f: &Field, k: usize) -> Mat {
        (0..k).fold(Mat::identity(self.rows), |acc, _| acc.mul(f, self))
    }

    /// Text form "a,b;c,d" in canonical element syntax.
    pub fn to_string(&self, f: &Field) -> String {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&x| f.fmt_elem(x)).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Parses rows separated by ';' and entries by ','.
    pub fn parse(f: &Field, s: &str) -> Result<Mat> {
        let rows: Result<Vec<Vec<Elem>>> = s
            .split(';')
            .map(|r| r.split(',').map(|x| f.parse_elem(x)).collect())
            .collect();
        Mat::from_rows(&rows?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_order_convention() {
        // The composite "g then h" (written gh) sends v to h(g(v)); its matrix is
        // mat(h)·mat(g).
        let f = Field::new(5, 1).unwrap();
        let g = Mat::parse(&f, "1,2;0,1").unwrap();
        let h = Mat::parse(&f, "3,3;1,2").unwrap();
        let v = vec![1, 4];
        let gh = h.mul(&f, &g);
        assert_eq!(gh.apply(&f, &v), h.apply(&f, &g.apply(&f, &v)));
        assert_ne!(gh.apply(&f, &v), g.mul(&f, &h).apply(&f, &v));
    }

    #[test]
    fn charpoly_of_companion_example() {
        let f = Field::new(5, 1).unwrap();
        let m = Mat::parse(&f, "0,2;1,2").unwrap();
        assert_eq!(m.charpoly(&f).unwrap().to_string(&f), "X^2+3*X+3");
    }

    #[test]
    fn rank_kernel_inverse() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(Mat::identity(2).rank(&f), 2);
        assert_eq!(Mat::zeros(2, 2).kernel_rows(&f).len(), 2);
        let m = Mat::parse(&f, "1,1;0,1").unwrap();
        let inv = m.inverse(&f).unwrap();
        assert!(m.mul(&f, &inv).is_identity());
        assert_eq!(Mat::parse(&f, "1,1;1,1").unwrap().inverse(&f), Err(Error::Singular));
    }

    #[test]
    fn charpoly_needs_hessenberg_pivoting() {
        let f = Field::new(3, 1).unwrap();
        // First subdiagonal entry zero forces a row/column swap.
        let m = Mat::parse(&f, "1,2,0;0,1,1;1,0,2").unwrap();
        let cp = m.charpoly(&f).unwrap();
        assert!(m.eval_poly(&f, &cp).data().iter().all(|&x| x == 0));
    }
}
