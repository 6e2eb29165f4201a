//! Partial isomorphisms of F_q^n and the algebra they span.
//!
//! A partial isomorphism (V | g1 ⇄ g2 | W) is a pair of isomorphisms
//! g1: V → W and g2: W → V between subspaces of equal dimension. Matrices are
//! always taken with respect to the canonical (RREF) bases of V and W, so
//! equality and hashing are structural.

mod alg;
mod ext;
mod naive;
mod orbit;

pub use alg::{op_l, op_l_to, op_lr, op_r, op_r_to, phi, phi_scalar, pi_n, product, product_basis, AlgElem, PairAlgElem};
pub use ext::{
    count_e, count_f, extensions_both_fixed, extensions_fixed_left, extensions_fixed_right,
    is_trivial_by_quotient, is_trivial_by_type, all_extensions_fixed_right,
};
pub use naive::{naive_counterexample, naive_product, NaiveCounterexample, NaiveElem, NaiveIso};
pub use orbit::{
    a_count, a_hat, a_tilde, all_partial_isos, hat_scale, invariant_product, invariant_product_exhaustive,
    orbit_of_type, orbit_size, partial_iso_count, tilde_to_hat,
};

use std::fmt::Write as _;

use crate::conjtype::{type_of, Polypartition};
use crate::error::{invalid, Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::Mat;
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialIso {
    v: Subspace,
    w: Subspace,
    g1: Mat,
    g2: Mat,
}

impl PartialIso {
    /// The empty partial isomorphism of F_q^n (the unit of the algebra).
    pub fn empty(n: usize) -> PartialIso {
        PartialIso { v: Subspace::zero(n), w: Subspace::zero(n), g1: Mat::zeros(0, 0), g2: Mat::zeros(0, 0) }
    }

    /// From canonical data: g1, g2 given in the RREF bases of v and w.
    pub fn new(f: &Field, v: Subspace, w: Subspace, g1: Mat, g2: Mat) -> Result<PartialIso> {
        let k = v.dim();
        if w.dim() != k || v.ambient() != w.ambient() {
            return Err(Error::Shape("left and right spaces differ in dimension".into()));
        }
        if (g1.rows(), g1.cols(), g2.rows(), g2.cols()) != (k, k, k, k) {
            return Err(Error::Shape("maps must be square of the subspace dimension".into()));
        }
        if !g1.is_invertible(f) || !g2.is_invertible(f) {
            return Err(Error::Singular);
        }
        Ok(PartialIso { v, w, g1, g2 })
    }

    pub(crate) fn raw(v: Subspace, w: Subspace, g1: Mat, g2: Mat) -> PartialIso {
        PartialIso { v, w, g1, g2 }
    }

    /// From arbitrary bases: `e` spans V, `fb` spans W (rows), `a1` is the
    /// matrix of g1 w.r.t. (e, fb) and `a2` that of g2 w.r.t. (fb, e).
    /// Re-bases everything onto the canonical bases.
    pub fn from_bases(f: &Field, e: &Mat, fb: &Mat, a1: &Mat, a2: &Mat) -> Result<PartialIso> {
        let k = e.rows();
        if fb.rows() != k || e.cols() != fb.cols() {
            return Err(Error::Shape("bases of different sizes".into()));
        }
        if e.rank(f) != k || fb.rank(f) != k {
            return invalid("basis rows are linearly dependent");
        }
        let v = Subspace::span(f, e);
        let w = Subspace::span(f, fb);
        let xe = v.coord_matrix(&e.row_vecs());
        let xf = w.coord_matrix(&fb.row_vecs());
        let xe_inv = xe.inverse(f)?;
        let xf_inv = xf.inverse(f)?;
        let g1 = xf.mul(f, a1).mul(f, &xe_inv);
        let g2 = xe.mul(f, a2).mul(f, &xf_inv);
        PartialIso::new(f, v, w, g1, g2)
    }

    /// Full-space partial isomorphism from a pair of n x n matrices.
    pub fn full(f: &Field, g1: Mat, g2: Mat) -> Result<PartialIso> {
        let n = g1.rows();
        PartialIso::new(f, Subspace::full(n), Subspace::full(n), g1, g2)
    }

    pub fn left(&self) -> &Subspace {
        &self.v
    }
    pub fn right(&self) -> &Subspace {
        &self.w
    }
    pub fn g1(&self) -> &Mat {
        &self.g1
    }
    pub fn g2(&self) -> &Mat {
        &self.g2
    }
    pub fn dim(&self) -> usize {
        self.v.dim()
    }
    pub fn ambient(&self) -> usize {
        self.v.ambient()
    }

    /// Matrix of g1 g2 = g2 ∘ g1, an automorphism of V.
    pub fn composite(&self, f: &Field) -> Mat {
        self.g2.mul(f, &self.g1)
    }
    /// k1 = dim Fix(g1 g2).
    pub fn k1(&self, f: &Field) -> usize {
        let c = self.composite(f);
        c.sub(f, &Mat::identity(self.dim())).nullity(f)
    }
    /// The conjugacy type of g1 g2.
    pub fn piso_type(&self, f: &Field) -> Polypartition {
        type_of(f, &self.composite(f)).expect("composite of isomorphisms is invertible")
    }

    /// (W | g2 ⇄ g1 | V).
    pub fn transpose(&self) -> PartialIso {
        PartialIso { v: self.w.clone(), w: self.v.clone(), g1: self.g2.clone(), g2: self.g1.clone() }
    }

    /// Rows of the canonical basis of V.
    pub fn left_rows(&self) -> Vec<Vec<Elem>> {
        self.v.basis().row_vecs()
    }

    /// k · I for k ∈ GL(n): (k⁻¹V | k g1 ⇄ g2 k⁻¹ | W).
    pub fn act_left(&self, f: &Field, k: &Mat) -> Result<PartialIso> {
        let ki = k.inverse(f)?;
        let e = move_rows(f, &ki, self.v.basis());
        PartialIso::from_bases(f, &e, self.w.basis(), &self.g1, &self.g2)
    }
    /// I · l for l ∈ GL(n): (V | g1 l⁻¹ ⇄ l g2 | l⁻¹W).
    pub fn act_right(&self, f: &Field, l: &Mat) -> Result<PartialIso> {
        let li = l.inverse(f)?;
        let fb = move_rows(f, &li, self.w.basis());
        PartialIso::from_bases(f, self.v.basis(), &fb, &self.g1, &self.g2)
    }

    /// Moves the term into F_q^m with m ≥ n (first n coordinates).
    pub fn embed(&self, m: usize) -> PartialIso {
        PartialIso { v: self.v.embed(m), w: self.w.embed(m), g1: self.g1.clone(), g2: self.g2.clone() }
    }
    /// Restricts to F_q^m; V + W must lie in the first m coordinates.
    pub fn truncate(&self, m: usize) -> PartialIso {
        PartialIso { v: self.v.truncate(m), w: self.w.truncate(m), g1: self.g1.clone(), g2: self.g2.clone() }
    }

    /// Debug form "[V rows | g1 | g2 | W rows]".
    pub fn to_string(&self, f: &Field) -> String {
        let mut s = String::new();
        let _ = write!(
            s,
            "[{} | {} | {} | {}]",
            self.v.basis().to_string(f),
            self.g1.to_string(f),
            self.g2.to_string(f),
            self.w.basis().to_string(f)
        );
        s
    }
}

/// Images of the rows of `rows` under the map with matrix `m`, as rows.
pub(crate) fn move_rows(f: &Field, m: &Mat, rows: &Mat) -> Mat {
    let moved: Vec<Vec<Elem>> = (0..rows.rows()).map(|i| m.apply(f, rows.row(i))).collect();
    if moved.is_empty() {
        Mat::zeros(0, rows.cols())
    } else {
        Mat::from_rows(&moved).expect("rows of equal length")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_of_worked_example() {
        let f = Field::new(5, 1).unwrap();
        let v = Subspace::span(&f, &Mat::parse(&f, "1,0,0;0,1,0").unwrap());
        let w = Subspace::span(&f, &Mat::parse(&f, "0,1,0;0,0,1").unwrap());
        let g1 = Mat::parse(&f, "1,2;0,1").unwrap();
        let g2 = Mat::parse(&f, "3,3;1,2").unwrap();
        let i = PartialIso::new(&f, v, w, g1, g2).unwrap();
        assert_eq!(i.piso_type(&f).to_string(&f), "{X^2+3*X+3:(1)}");
        assert_eq!(PartialIso::empty(3).piso_type(&f), Polypartition::empty());
    }

    #[test]
    fn identity_type() {
        let f = Field::new(3, 1).unwrap();
        let v = Subspace::coordinate(3, 2);
        let i = PartialIso::new(&f, v.clone(), v, Mat::identity(2), Mat::identity(2)).unwrap();
        assert_eq!(i.piso_type(&f), Polypartition::linear(&f, 1, &[1, 1]));
        assert_eq!(i.k1(&f), 2);
    }

    #[test]
    fn rebasing_is_canonical() {
        let f = Field::new(3, 1).unwrap();
        let e = Mat::parse(&f, "1,1,0;0,2,1").unwrap();
        let fb = Mat::parse(&f, "0,0,1;1,0,0").unwrap();
        let a1 = Mat::parse(&f, "1,1;0,1").unwrap();
        let a2 = Mat::parse(&f, "2,0;1,1").unwrap();
        let i = PartialIso::from_bases(&f, &e, &fb, &a1, &a2).unwrap();
        // Same maps described in a different pair of bases.
        let p = Mat::parse(&f, "1,1;1,2").unwrap();
        let pe = p.transpose().mul(&f, &e);
        let pi = p.inverse(&f).unwrap();
        let j = PartialIso::from_bases(&f, &pe, &fb, &a1.mul(&f, &p), &pi.mul(&f, &a2)).unwrap();
        assert_eq!(i, j);
    }
}
