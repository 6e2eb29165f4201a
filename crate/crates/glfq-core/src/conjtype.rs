//! Partitions, polypartitions and conjugacy types of invertible matrices.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{invalid, Error, Result};
use crate::field::Field;
use crate::matrix::Mat;
use crate::poly::Poly;
use crate::rational::{gl_order, qinv_poch, qpow, to_integer, Q};

/// Integer partition with non-increasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Partition> {
        if parts.contains(&0) {
            return invalid("partition parts must be positive");
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }
    /// (1, 1, ..., 1) with k parts.
    pub fn ones(k: usize) -> Partition {
        Partition(vec![1; k])
    }
    pub fn parts(&self) -> &[usize] {
        &self.0
    }
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    /// m_k: number of parts equal to k.
    pub fn mult(&self, k: usize) -> usize {
        self.0.iter().filter(|&&p| p == k).count()
    }
    /// b(μ) = Σ_j (j-1) μ_j.
    pub fn b(&self) -> usize {
        self.0.iter().enumerate().map(|(j, &p)| j * p).sum()
    }
    pub fn conjugate(&self) -> Partition {
        let top = self.0.first().copied().unwrap_or(0);
        Partition((1..=top).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }
    /// All partitions of n, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Family of partitions indexed by monic irreducible polynomials other than X.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Polypartition {
    entries: BTreeMap<Poly, Partition>,
}

/// The polynomial X - 1.
pub fn x_minus_one(f: &Field) -> Poly {
    Poly::linear(f, 1)
}

impl Polypartition {
    pub fn empty() -> Polypartition {
        Polypartition::default()
    }

    /// Validating constructor. Entries with the same key are merged.
    pub fn new(f: &Field, entries: Vec<(Poly, Partition)>) -> Result<Polypartition> {
        let mut map: BTreeMap<Poly, Partition> = BTreeMap::new();
        for (p, part) in entries {
            if !p.is_monic() || p.deg() == 0 || !p.is_irreducible(f)? || p == Poly::x() {
                return invalid(format!("{} is not a monic irreducible other than X", p.to_string(f)));
            }
            if part.is_empty() {
                continue;
            }
            let merged = match map.remove(&p) {
                Some(old) => Partition::new([old.0, part.0].concat())?,
                None => part,
            };
            map.insert(p, merged);
        }
        Ok(Polypartition { entries: map })
    }

    /// Builds from trusted parts (keys already validated).
    pub(crate) fn from_map(entries: BTreeMap<Poly, Partition>) -> Polypartition {
        Polypartition { entries: entries.into_iter().filter(|(_, p)| !p.is_empty()).collect() }
    }

    /// Single-entry label {X - a : parts}.
    pub fn linear(f: &Field, a: u8, parts: &[usize]) -> Polypartition {
        let mut m = BTreeMap::new();
        m.insert(Poly::linear(f, a), Partition::new(parts.to_vec()).expect("positive parts"));
        Polypartition::from_map(m)
    }

    /// Merges another label in (disjoint union of parts).
    pub fn union(&self, o: &Polypartition) -> Polypartition {
        let mut m = self.entries.clone();
        for (p, part) in &o.entries {
            let merged = match m.remove(p) {
                Some(old) => Partition::new([old.0, part.0.clone()].concat()).expect("positive parts"),
                None => part.clone(),
            };
            m.insert(p.clone(), merged);
        }
        Polypartition { entries: m }
    }

    pub fn entries(&self) -> &BTreeMap<Poly, Partition> {
        &self.entries
    }
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
    /// |μ| = Σ deg(P) |μ(P)|.
    pub fn size(&self) -> usize {
        self.entries.iter().map(|(p, part)| p.deg() * part.size()).sum()
    }
    /// b(μ) = Σ deg(P) b(μ(P)).
    pub fn b(&self) -> usize {
        self.entries.iter().map(|(p, part)| p.deg() * part.b()).sum()
    }
    pub fn unipotent_part(&self, f: &Field) -> Partition {
        self.entries.get(&x_minus_one(f)).cloned().unwrap_or_default()
    }
    /// k1 = ℓ(μ(X-1)), the dimension of the fixed space.
    pub fn k1(&self, f: &Field) -> usize {
        self.unipotent_part(f).len()
    }
    /// k11 = m_1(μ(X-1)).
    pub fn k11(&self, f: &Field) -> usize {
        self.unipotent_part(f).mult(1)
    }

    /// Characteristic polynomial ∏ P^{|μ(P)|}.
    pub fn charpoly(&self, f: &Field) -> Poly {
        self.entries
            .iter()
            .fold(Poly::one(), |acc, (p, part)| acc.mul(f, &p.pow(f, part.size())))
    }
    /// Minimal polynomial ∏ P^{μ(P)_1}.
    pub fn minpoly(&self, f: &Field) -> Poly {
        self.entries
            .iter()
            .fold(Poly::one(), |acc, (p, part)| acc.mul(f, &p.pow(f, part.parts()[0])))
    }

    /// Adds n - |μ| parts 1 to μ(X-1).
    pub fn complete(&self, f: &Field, n: usize) -> Result<Polypartition> {
        let s = self.size();
        if s > n {
            return invalid(format!("polypartition of size {s} cannot be completed to {n}"));
        }
        Ok(self.union(&Polypartition::linear(f, 1, &vec![1; n - s])))
    }

    /// Strips the parts 1 of μ(X-1); returns the reduced label and their number.
    pub fn reduce(&self, f: &Field) -> (Polypartition, usize) {
        let key = x_minus_one(f);
        let mut m = self.entries.clone();
        let mut stripped = 0;
        if let Some(part) = m.remove(&key) {
            stripped = part.mult(1);
            let rest: Vec<usize> = part.0.into_iter().filter(|&p| p > 1).collect();
            if !rest.is_empty() {
                m.insert(key, Partition(rest));
            }
        }
        (Polypartition { entries: m }, stripped)
    }

    /// Canonical text, e.g. `{X+3:(1,1);X^2+X+1:(2)}`.
    pub fn to_string(&self, f: &Field) -> String {
        let body: Vec<String> =
            self.entries.iter().map(|(p, part)| format!("{}:{}", p.to_string(f), part)).collect();
        format!("{{{}}}", body.join(";"))
    }

    pub fn parse(f: &Field, s: &str) -> Result<Polypartition> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("'{s}' is not wrapped in braces")))?;
        if inner.is_empty() {
            return Ok(Polypartition::empty());
        }
        let mut entries = Vec::new();
        for entry in inner.split(';') {
            let (poly, part) = entry
                .rsplit_once(':')
                .ok_or_else(|| Error::Parse(format!("entry '{entry}' lacks ':'")))?;
            let part = part
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("partition '{part}' lacks parentheses")))?;
            let parts: std::result::Result<Vec<usize>, _> = part.split(',').map(str::parse).collect();
            let parts = parts.map_err(|_| Error::Parse(format!("bad partition '({part})'")))?;
            entries.push((Poly::parse(f, poly)?, Partition::new(parts)?));
        }
        Polypartition::new(f, entries)
    }
}

/// Block-diagonal representative J(μ): companion blocks of P^{part}, in key
/// order and then by decreasing part.
pub fn jordan_matrix(f: &Field, mu: &Polypartition) -> Mat {
    let blocks: Vec<Mat> = mu
        .entries
        .iter()
        .flat_map(|(p, part)| part.parts().iter().map(move |&k| (p, k)))
        .map(|(p, k)| Mat::companion(f, &p.pow(f, k)))
        .collect();
    Mat::diag_blocks(&blocks)
}

/// Conjugacy type of an invertible matrix.
///
/// For each irreducible factor P of the characteristic polynomial, the
/// increments of dim ker P(g)^j divided by deg P give the conjugate of μ(P).
pub fn type_of(f: &Field, g: &Mat) -> Result<Polypartition> {
    if !g.is_square() {
        return Err(Error::Shape("type of a non-square matrix".into()));
    }
    if g.rows() == 0 {
        return Ok(Polypartition::empty());
    }
    let cp = g.charpoly(f)?;
    if cp.coeff(0) == 0 {
        return Err(Error::Singular);
    }
    let mut map = BTreeMap::new();
    for (p, e) in cp.factor(f)? {
        let d = p.deg();
        let target = e * d;
        let np = g.eval_poly(f, &p);
        let mut pw = np.clone();
        let mut prev = 0;
        let mut conj = Vec::new();
        loop {
            let k = pw.nullity(f);
            if k == prev {
                return Err(Error::Check("kernel filtration stalled".into()));
            }
            conj.push((k - prev) / d);
            prev = k;
            if k == target {
                break;
            }
            pw = pw.mul(f, &np);
        }
        map.insert(p, Partition(conj).conjugate());
    }
    Ok(Polypartition { entries: map })
}

/// Size of the conjugacy class C_μ in GL(|μ|, F_q), by the closed formula
/// |GL_n| / (q^{|μ|+2b(μ)} ∏_P ∏_k (q^{-deg P})_{m_k(μ(P))}).
pub fn class_size(f: &Field, mu: &Polypartition, n: usize) -> Result<BigInt> {
    if mu.size() != n {
        return invalid(format!("polypartition has size {} but n = {n}", mu.size()));
    }
    let q = f.q();
    let mut denom = qpow(q, (mu.size() + 2 * mu.b()) as i64);
    for (p, part) in &mu.entries {
        let qd = q.pow(p.deg() as u32);
        let top = part.parts().first().copied().unwrap_or(0);
        for k in 1..=top {
            denom *= qinv_poch(qd, part.mult(k));
        }
    }
    let val = Q::from_integer(gl_order(q, n)) / denom;
    to_integer(&val).ok_or_else(|| Error::Check(format!("non-integral class size {val}")))
}

/// Centralizer order |GL_k| / |C_μ| for k = |μ|.
pub fn centralizer_order(f: &Field, mu: &Polypartition) -> Result<BigInt> {
    let k = mu.size();
    Ok(gl_order(f.q(), k) / class_size(f, mu, k)?)
}

/// All polypartitions of size exactly n, sorted.
pub fn enumerate_polypartitions(f: &Field, n: usize) -> Vec<Polypartition> {
    let x = Poly::x();
    let keys: Vec<Poly> = (1..=n)
        .flat_map(|d| f.irreducibles(d).iter().cloned().collect::<Vec<_>>())
        .filter(|p| *p != x)
        .collect();
    let mut out = Vec::new();
    fn rec(
        keys: &[Poly],
        i: usize,
        rest: usize,
        cur: &mut BTreeMap<Poly, Partition>,
        out: &mut Vec<Polypartition>,
    ) {
        if rest == 0 {
            out.push(Polypartition { entries: cur.clone() });
            return;
        }
        if i == keys.len() {
            return;
        }
        rec(keys, i + 1, rest, cur, out);
        let d = keys[i].deg();
        for s in 1..=rest / d {
            for part in Partition::all(s) {
                cur.insert(keys[i].clone(), part);
                rec(keys, i + 1, rest - s * d, cur, out);
            }
            cur.remove(&keys[i]);
        }
    }
    rec(&keys, 0, n, &mut BTreeMap::new(), &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_by_six_class_size() {
        let f = Field::new(5, 1).unwrap();
        let mu = Polypartition::parse(&f, "{x^2+x+1:(2);x+3:(1,1)}").unwrap();
        assert_eq!(mu.to_string(&f), "{X+3:(1,1);X^2+X+1:(2)}");
        assert_eq!(mu.size(), 6);
        let j = jordan_matrix(&f, &mu);
        let expected = Mat::parse(
            &f,
            "2,0,0,0,0,0;0,2,0,0,0,0;0,0,0,0,0,4;0,0,1,0,0,3;0,0,0,1,0,2;0,0,0,0,1,3",
        )
        .unwrap();
        assert_eq!(j, expected);
        assert_eq!(type_of(&f, &j).unwrap(), mu);
        assert_eq!(class_size(&f, &mu, 6).unwrap().to_string(), "38418317437500000000");
    }

    #[test]
    fn identity_and_completion() {
        let f = Field::new(5, 1).unwrap();
        let id = Polypartition::linear(&f, 1, &[1, 1, 1]);
        assert_eq!(type_of(&f, &Mat::identity(3)).unwrap(), id);
        assert_eq!(class_size(&f, &id, 3).unwrap(), BigInt::from(1));
        let a = Polypartition::linear(&f, 2, &[1]);
        let c = a.complete(&f, 3).unwrap();
        assert_eq!(c.to_string(&f), "{X+3:(1);X+4:(1,1)}");
        assert_eq!(c.reduce(&f), (a.clone(), 2));
        assert!(a.complete(&f, 0).is_err());
        assert_eq!(Polypartition::empty().complete(&f, 2).unwrap(), Polypartition::linear(&f, 1, &[1, 1]));
        let u = Polypartition::linear(&f, 1, &[2, 1, 1]);
        assert_eq!(u.reduce(&f), (Polypartition::linear(&f, 1, &[2]), 2));
    }

    #[test]
    fn parse_rejects_bad_labels() {
        let f = Field::new(3, 1).unwrap();
        assert!(Polypartition::parse(&f, "{X:(1)}").is_err());
        assert!(Polypartition::parse(&f, "{X^2+2:(1)}").is_err());
        assert!(Polypartition::parse(&f, "{X+1:(0)}").is_err());
        assert!(Polypartition::parse(&f, "X+1:(1)").is_err());
        assert_eq!(Polypartition::parse(&f, "{}").unwrap(), Polypartition::empty());
    }

    #[test]
    fn small_enumerations() {
        let f = Field::new(2, 1).unwrap();
        let one = enumerate_polypartitions(&f, 1);
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].to_string(&f), "{X+1:(1)}");
        assert_eq!(enumerate_polypartitions(&f, 0), vec![Polypartition::empty()]);
        assert_eq!(enumerate_polypartitions(&f, 2).len(), 3);
    }

    #[test]
    fn partition_stats() {
        let p = Partition::new(vec![1, 3, 1]).unwrap();
        assert_eq!(p.parts(), &[3, 1, 1]);
        assert_eq!(p.b(), 3);
        assert_eq!(p.conjugate().parts(), &[3, 1, 1]);
        assert_eq!(Partition::all(4).len(), 5);
    }
}
