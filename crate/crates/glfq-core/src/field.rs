//! Finite fields F_q with q = p^e, backed by lookup tables.
//!
//! An element is encoded by the integer `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`
//! where `c_0 + c_1 t + ...` is its representative modulo the defining
//! polynomial. Encodings are the canonical order on elements.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{invalid, Result};
use crate::poly::Poly;

/// Field element, encoded as described in the module docs.
pub type Elem = u8;

/// Largest supported field order (elements are stored in a `u8`).
pub const MAX_Q: u32 = 256;

pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    /// Ascending coefficients over F_p, length e+1; only meaningful when e > 1.
    modulus: Vec<u32>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
    irreducibles: Mutex<HashMap<usize, Arc<Vec<Poly>>>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for Field {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits q into (p, e) with q = p^e, if q is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut e) = (q, 0);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

// Small helpers on ascending coefficient vectors over F_p, used only to
// pick the modulus before the tables exist.
fn fp_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = fp_trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = modpow(b[db], p - 2, p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * bi % p) % p;
        }
        r = fp_trim(r);
    }
    r
}

fn modpow(mut b: u32, mut e: u32, m: u32) -> u32 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Monic polynomials of degree d over F_p, in lexicographic order of
/// (c_0, c_1, ..., c_{d-1}).
fn fp_monics(p: u32, d: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = p.pow(d);
    (0..count).map(move |mut idx| {
        let mut c = vec![0; d as usize + 1];
        // c_0 is the most significant digit.
        for i in (0..d as usize).rev() {
            c[i] = idx % p;
            idx /= p;
        }
        c[d as usize] = 1;
        c
    })
}

fn fp_irreducible(f: &[u32], p: u32) -> bool {
    let d = f.len() as u32 - 1;
    (1..=d / 2).all(|k| fp_monics(p, k).all(|g| !fp_rem(f, &g, p).is_empty()))
}

impl Field {
    /// Builds F_{p^e}. For e > 1 the modulus is the lexicographically
    /// smallest monic irreducible of degree e (coefficients compared from the
    /// constant term upward).
    pub fn new(p: u32, e: u32) -> Result<Arc<Field>> {
        if !is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        if e == 0 {
            return invalid("extension degree must be at least 1");
        }
        let q = match p.checked_pow(e) {
            Some(q) if q <= MAX_Q => q,
            _ => return invalid(format!("field order {p}^{e} exceeds {MAX_Q}")),
        };
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            fp_monics(p, e)
                .find(|f| fp_irreducible(f, p))
                .expect("irreducible polynomials exist in every degree")
        };
        let digits = |x: u32| -> Vec<u32> {
            let mut x = x;
            (0..e)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let encode = |c: &[u32]| -> Elem {
            let v = c.iter().rev().fold(0u32, |acc, &d| acc * p + d);
            v as Elem
        };
        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for x in 0..q {
            let dx = digits(x);
            for y in 0..q {
                let dy = digits(y);
                let s: Vec<u32> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
                add[(x * q + y) as usize] = encode(&s);
                let mut prod = vec![0u32; 2 * e as usize];
                for (i, a) in dx.iter().enumerate() {
                    for (j, b) in dy.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + a * b) % p;
                    }
                }
                let mut r = if e == 1 { fp_trim(prod) } else { fp_rem(&prod, &modulus, p) };
                r.resize(e as usize, 0);
                mul[(x * q + y) as usize] = encode(&r);
            }
        }
        let mut neg = vec![0; qs];
        let mut inv = vec![0; qs];
        for x in 0..qs {
            for y in 0..qs {
                if add[x * qs + y] == 0 {
                    neg[x] = y as Elem;
                }
                if x != 0 && mul[x * qs + y] == 1 {
                    inv[x] = y as Elem;
                }
            }
        }
        Ok(Arc::new(Field {
            p,
            e,
            q,
            modulus: if e == 1 { Vec::new() } else { modulus },
            add,
            mul,
            neg,
            inv,
            irreducibles: Mutex::new(HashMap::new()),
        }))
    }

    /// Field of order q, if q is a supported prime power.
    pub fn with_order(q: u32) -> Result<Arc<Field>> {
        match prime_power(q) {
            Some((p, e)) => Field::new(p, e),
            None => invalid(format!("{q} is not a prime power")),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    /// Ascending F_p-coefficients of the defining polynomial (empty for prime fields).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b as usize])
    }
    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }
    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }
    pub fn pow(&self, a: Elem, mut k: u64) -> Elem {
        let (mut base, mut acc) = (a, 1);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(|x| x as Elem)
    }
    /// Nonzero elements in encoding order.
    pub fn units(&self) -> impl Iterator<Item = Elem> {
        (1..self.q).map(|x| x as Elem)
    }
    /// Image of the integer k in the prime subfield.
    pub fn from_int(&self, k: i64) -> Elem {
        k.rem_euclid(self.p as i64) as Elem
    }
    /// The generator t of the extension (t = 0 when e = 1 is meaningless, so
    /// this returns None for prime fields).
    pub fn generator(&self) -> Option<Elem> {
        (self.e > 1).then_some(self.p as Elem)
    }

    /// Smallest element of multiplicative order q-1.
    pub fn primitive_element(&self) -> Elem {
        let order = self.q as u64 - 1;
        let primes: Vec<u64> = (2..=order).filter(|d| order.is_multiple_of(*d) && is_prime(*d as u32)).collect();
        self.units()
            .find(|&a| primes.iter().all(|&r| self.pow(a, order / r) != 1))
            .expect("the multiplicative group is cyclic")
    }

    pub fn is_square(&self, a: Elem) -> bool {
        if a == 0 || self.p == 2 {
            return true;
        }
        self.pow(a, (self.q as u64 - 1) / 2) == 1
    }

    /// A square root of a, choosing the smaller encoding when there are two.
    pub fn sqrt(&self, a: Elem) -> Option<Elem> {
        if self.p == 2 {
            return Some(self.pow(a, self.q as u64 / 2));
        }
        self.elements().find(|&x| self.mul(x, x) == a)
    }

    /// Absolute trace to the prime field: a + a^p + ... + a^{p^{e-1}}.
    pub fn abs_trace(&self, a: Elem) -> Elem {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.e {
            acc = self.add(acc, x);
            x = self.pow(x, self.p as u64);
        }
        acc
    }

    /// F_p-coefficients of an element, ascending in t.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let mut x = a as u32;
        (0..self.e)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    /// Canonical text form: a residue for prime fields, a polynomial in t otherwise.
    pub fn fmt_elem(&self, a: Elem) -> String {
        if self.e == 1 {
            return a.to_string();
        }
        let d = self.digits(a);
        let mut parts = Vec::new();
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            parts.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }

    /// Parses an element in the syntax accepted by [`Poly::parse`], without X.
    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let p = crate::poly::parse_expr(self, s, false)?;
        match p.degree() {
            None => Ok(0),
            Some(0) => Ok(p.coeffs()[0]),
            _ => invalid(format!("'{s}' is not a field element")),
        }
    }

    /// Monic irreducibles of degree d (X included when d = 1), sorted
    /// lexicographically by ascending coefficients. Cached per degree.
    pub fn irreducibles(&self, d: usize) -> Arc<Vec<Poly>> {
        if let Some(v) = self.irreducibles.lock().unwrap().get(&d) {
            return v.clone();
        }
        let list: Vec<Poly> = Poly::monics(self, d)
            .filter(|f| {
                (1..=d / 2).all(|k| self.irreducibles(k).iter().all(|g| !f.rem(self, g).is_zero()))
            })
            .collect();
        let list = Arc::new(list);
        self.irreducibles.lock().unwrap().insert(d, list.clone());
        list
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_modulus_and_trace() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let t = f.generator().unwrap();
        assert_eq!(f.mul(t, t), f.add(t, 1));
        assert_eq!(f.abs_trace(0), 0);
        assert_eq!(f.abs_trace(t), 1);
        assert_eq!(f.abs_trace(1), 0);
        assert!(f.is_square(t));
        let r = f.sqrt(t).unwrap();
        assert_eq!(f.mul(r, r), t);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Field::new(4, 1).is_err());
        assert!(Field::new(2, 0).is_err());
        assert!(Field::new(2, 9).is_err());
        assert!(Field::with_order(6).is_err());
    }

    #[test]
    fn squares_mod_5() {
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.sqrt(4), Some(2));
        assert!(!f.is_square(2));
        assert_eq!(f.sqrt(2), None);
        assert_eq!(f.units().filter(|&a| f.is_square(a)).count(), 2);
    }

    #[test]
    fn field_axioms_small() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16] {
            let f = Field::with_order(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                    assert_eq!(f.pow(a, q as u64 - 1), 1);
                }
                for b in f.elements() {
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
            let w = f.primitive_element();
            let mut seen: Vec<Elem> = (0..q as u64 - 1).map(|k| f.pow(w, k)).collect();
            seen.sort();
            seen.dedup();
            assert_eq!(seen.len(), q as usize - 1);
        }
    }

    #[test]
    fn element_text_round_trip() {
        for q in [3, 4, 9, 8] {
            let f = Field::with_order(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.parse_elem(&f.fmt_elem(a)).unwrap(), a);
            }
        }
    }
}
