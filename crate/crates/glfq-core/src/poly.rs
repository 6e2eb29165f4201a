//! Univariate polynomials over F_q.

use std::cmp::Ordering;

use crate::error::{invalid, Error, Result};
use crate::field::{Elem, Field};

/// Polynomial with ascending coefficients and no trailing zeros.
///
/// The order is by degree first, then lexicographic on the coefficient
/// vector starting from the constant term. This is the canonical key order
/// for polypartition labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    c: Vec<Elem>,
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c.len().cmp(&other.c.len()).then_with(|| self.c.cmp(&other.c))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    pub fn new(mut c: Vec<Elem>) -> Poly {
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { c }
    }
    pub fn zero() -> Poly {
        Poly { c: Vec::new() }
    }
    pub fn one() -> Poly {
        Poly { c: vec![1] }
    }
    pub fn constant(a: Elem) -> Poly {
        Poly::new(vec![a])
    }
    /// X - a.
    pub fn linear(f: &Field, a: Elem) -> Poly {
        Poly::new(vec![f.neg(a), 1])
    }
    pub fn x() -> Poly {
        Poly { c: vec![0, 1] }
    }
    pub fn coeffs(&self) -> &[Elem] {
        &self.c
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    /// Degree, with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }
    pub fn lead(&self) -> Elem {
        self.c.last().copied().unwrap_or(0)
    }
    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }
    pub fn coeff(&self, i: usize) -> Elem {
        self.c.get(i).copied().unwrap_or(0)
    }

    /// Monic polynomials of degree d in canonical order.
    pub fn monics(f: &Field, d: usize) -> impl Iterator<Item = Poly> + '_ {
        let q = f.q() as u64;
        let count = q.pow(d as u32);
        (0..count).map(move |mut idx| {
            let mut c = vec![0 as Elem; d + 1];
            for i in (0..d).rev() {
                c[i] = (idx % q) as Elem;
                idx /= q;
            }
            c[d] = 1;
            Poly { c }
        })
    }

    pub fn add(&self, f: &Field, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect())
    }
    pub fn sub(&self, f: &Field, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        Poly::new((0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect())
    }
    pub fn scale(&self, f: &Field, a: Elem) -> Poly {
        Poly::new(self.c.iter().map(|&x| f.mul(a, x)).collect())
    }
    pub fn mul(&self, f: &Field, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut r = vec![0; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                r[i + j] = f.add(r[i + j], f.mul(a, b));
            }
        }
        Poly::new(r)
    }
    pub fn pow(&self, f: &Field, k: usize) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| acc.mul(f, self))
    }

    pub fn divmod(&self, f: &Field, d: &Poly) -> Result<(Poly, Poly)> {
        if d.is_zero() {
            return Err(Error::InvalidArgument("division by the zero polynomial".into()));
        }
        let dd = d.c.len() - 1;
        let li = f.inv(d.lead());
        let mut r = self.c.clone();
        let mut quo = vec![0; self.c.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let c = f.mul(*r.last().unwrap(), li);
            quo[shift] = c;
            for (i, &b) in d.c.iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(c, b));
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        Ok((Poly::new(quo), Poly::new(r)))
    }
    /// Remainder; panics on a zero divisor.
    pub fn rem(&self, f: &Field, d: &Poly) -> Poly {
        self.divmod(f, d).expect("nonzero divisor").1
    }
    pub fn monic(&self, f: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f, f.inv(self.lead()))
    }
    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, f: &Field, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }
    pub fn eval(&self, f: &Field, x: Elem) -> Elem {
        self.c.iter().rev().fold(0, |acc, &a| f.add(f.mul(acc, x), a))
    }
    /// self^k mod m.
    pub fn powmod(&self, f: &Field, mut k: u64, m: &Poly) -> Result<Poly> {
        let mut base = self.divmod(f, m)?.1;
        let mut acc = Poly::one().divmod(f, m)?.1;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(f, &base).rem(f, m);
            }
            base = base.mul(f, &base).rem(f, m);
            k >>= 1;
        }
        Ok(acc)
    }

    /// Trial division against the irreducibles of degree at most deg/2.
    pub fn is_irreducible(&self, f: &Field) -> Result<bool> {
        if !self.is_monic() || self.deg() == 0 {
            return invalid("irreducibility test needs a monic polynomial of positive degree");
        }
        let d = self.deg();
        Ok((1..=d / 2).all(|k| f.irreducibles(k).iter().all(|g| !self.rem(f, g).is_zero())))
    }

    /// Factorization into monic irreducibles with multiplicities, sorted.
    pub fn factor(&self, f: &Field) -> Result<Vec<(Poly, usize)>> {
        if !self.is_monic() || self.deg() == 0 {
            return invalid("factorization needs a monic polynomial of positive degree");
        }
        let mut rest = self.clone();
        let mut out = Vec::new();
        let mut d = 1;
        while 2 * d <= rest.deg() {
            for g in f.irreducibles(d).iter() {
                let mut m = 0;
                loop {
                    let (quo, r) = rest.divmod(f, g)?;
                    if !r.is_zero() {
                        break;
                    }
                    rest = quo;
                    m += 1;
                }
                if m > 0 {
                    out.push((g.clone(), m));
                }
            }
            d += 1;
        }
        if rest.deg() > 0 {
            match out.iter_mut().find(|(g, _)| *g == rest) {
                Some(entry) => entry.1 += 1,
                None => out.push((rest, 1)),
            }
        }
        out.sort();
        Ok(out)
    }

    /// Canonical text: sparse, descending in X, `+`-separated.
    pub fn to_string(&self, f: &Field) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            let coef = f.fmt_elem(a);
            let coef = if coef.contains('+') { format!("({coef})") } else { coef };
            parts.push(match (a, i) {
                (_, 0) => coef,
                (1, _) => mono,
                _ => format!("{coef}*{mono}"),
            });
        }
        parts.join("+")
    }

    /// Parses a polynomial in X; accepts `-`, `*`, `^`, parentheses, integer
    /// literals (reduced mod p) and the generator `t` of an extension field.
    pub fn parse(f: &Field, s: &str) -> Result<Poly> {
        parse_expr(f, s, true)
    }
}

pub(crate) fn parse_expr(f: &Field, s: &str, allow_x: bool) -> Result<Poly> {
    let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { f, toks: &toks, pos: 0, allow_x, src: s };
    let r = p.expr()?;
    if p.pos != toks.len() {
        return p.fail();
    }
    Ok(r)
}

struct Parser<'a> {
    f: &'a Field,
    toks: &'a [char],
    pos: usize,
    allow_x: bool,
    src: &'a str,
}

impl Parser<'_> {
    fn fail<T>(&self) -> Result<T> {
        Err(Error::Parse(format!("cannot parse '{}' at position {}", self.src, self.pos)))
    }
    fn peek(&self) -> Option<char> {
        self.toks.get(self.pos).copied()
    }
    fn expr(&mut self) -> Result<Poly> {
        let mut neg = false;
        if self.peek() == Some('-') {
            self.pos += 1;
            neg = true;
        }
        let mut acc = self.term()?;
        if neg {
            acc = Poly::zero().sub(self.f, &acc);
        }
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc.add(self.f, &t) } else { acc.sub(self.f, &t) };
        }
        Ok(acc)
    }
    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = acc.mul(self.f, &self.factor()?);
        }
        Ok(acc)
    }
    fn nat(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail();
        }
        let s: String = self.toks[start..self.pos].iter().collect();
        s.parse().or_else(|_| self.fail())
    }
    fn factor(&mut self) -> Result<Poly> {
        let base = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let v = self.nat()?;
                Poly::constant((v % self.f.p() as u64) as Elem)
            }
            Some('t') => {
                self.pos += 1;
                match self.f.generator() {
                    Some(t) => Poly::constant(t),
                    None => return self.fail(),
                }
            }
            Some('X' | 'x') if self.allow_x => {
                self.pos += 1;
                Poly::x()
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return self.fail();
                }
                self.pos += 1;
                inner
            }
            _ => return self.fail(),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            let k = self.nat()?;
            return Ok(base.pow(self.f, k as usize));
        }
        Ok(base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u32) -> std::sync::Arc<Field> {
        Field::with_order(q).unwrap()
    }

    #[test]
    fn examples_over_f5() {
        let f5 = f(5);
        let a = Poly::parse(&f5, "X^2-1").unwrap();
        let b = Poly::parse(&f5, "X-1").unwrap();
        assert_eq!(a.gcd(&f5, &b), b);
        assert_eq!(b.to_string(&f5), "X+4");
        let c = Poly::parse(&f5, "X^2+3*X+3").unwrap();
        assert_eq!(c.eval(&f5, 0), 3);
        assert!(c.is_irreducible(&f5).unwrap());
        assert_eq!(c.factor(&f5).unwrap(), vec![(c.clone(), 1)]);
        let fac = a.factor(&f5).unwrap();
        let names: Vec<String> = fac.iter().map(|(p, m)| format!("{}^{m}", p.to_string(&f5))).collect();
        assert_eq!(names, ["X+1^1", "X+4^1"]);
    }

    #[test]
    fn frobenius_and_squares() {
        let f2 = f(2);
        let x1 = Poly::parse(&f2, "X+1").unwrap();
        assert_eq!(x1.pow(&f2, 2).to_string(&f2), "X^2+1");
        let f3 = f(3);
        assert!(!Poly::parse(&f3, "X^2+2").unwrap().is_irreducible(&f3).unwrap());
        let sq = Poly::parse(&f3, "(X+1)^2").unwrap();
        assert_eq!(sq.factor(&f3).unwrap(), vec![(x1_f3(&f3), 2)]);
    }

    fn x1_f3(f3: &Field) -> Poly {
        Poly::parse(f3, "X+1").unwrap()
    }

    #[test]
    fn irreducible_lists() {
        let f2 = f(2);
        let names = |d| f2.irreducibles(d).iter().map(|p| p.to_string(&f2)).collect::<Vec<_>>();
        assert_eq!(names(1), ["X", "X+1"]);
        assert_eq!(names(2), ["X^2+X+1"]);
        assert_eq!(f(3).irreducibles(2).len(), 3);
    }

    #[test]
    fn extension_coefficients_print_and_parse() {
        let f4 = f(4);
        let t = f4.generator().unwrap();
        let p = Poly::new(vec![f4.add(t, 1), t, 1]);
        let s = p.to_string(&f4);
        assert_eq!(s, "X^2+t*X+(t+1)");
        assert_eq!(Poly::parse(&f4, &s).unwrap(), p);
        assert!(Poly::parse(&f(5), "t+1").is_err());
        assert!(Poly::parse(&f(5), "X+").is_err());
    }

    #[test]
    fn divmod_by_zero_errors() {
        let f5 = f(5);
        assert!(Poly::x().divmod(&f5, &Poly::zero()).is_err());
    }

    #[test]
    fn powmod_matches_repeated_product() {
        let f3 = f(3);
        let m = Poly::parse(&f3, "X^3+2*X+1").unwrap();
        let x = Poly::x();
        let direct = x.pow(&f3, 11).rem(&f3, &m);
        assert_eq!(x.powmod(&f3, 11, &m).unwrap(), direct);
    }
}
