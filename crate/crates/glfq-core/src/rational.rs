//! Exact rational helpers for q-analogues.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn big(n: &BigInt) -> Q {
    Q::from_integer(n.clone())
}

pub fn frac(a: i64, b: i64) -> Q {
    Q::new(BigInt::from(a), BigInt::from(b))
}

/// q^e for any integer exponent.
pub fn qpow(q: u32, e: i64) -> Q {
    let base = BigInt::from(q).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Q::from_integer(base)
    } else {
        Q::new(BigInt::one(), base)
    }
}

/// Pochhammer symbol (x)_m = (1-x)(1-x^2)...(1-x^m).
pub fn pochhammer(x: &Q, m: usize) -> Q {
    let mut acc = Q::one();
    let mut pw = Q::one();
    for _ in 0..m {
        pw = &pw * x;
        acc *= Q::one() - &pw;
    }
    acc
}

/// (q^{-1})_m.
pub fn qinv_poch(q: u32, m: usize) -> Q {
    pochhammer(&qpow(q, -1), m)
}

/// (q^n - 1)(q^n - q)...(q^n - q^{k-1}), the number of free k-families in F_q^n.
pub fn free_families(q: u32, n: usize, k: usize) -> BigInt {
    let qn = BigInt::from(q).pow(n as u32);
    (0..k).fold(BigInt::one(), |acc, i| acc * (&qn - BigInt::from(q).pow(i as u32)))
}

/// |GL(n, F_q)|.
pub fn gl_order(q: u32, n: usize) -> BigInt {
    free_families(q, n, n)
}

/// Gaussian binomial [n choose k]_q.
pub fn gaussian_binomial(q: u32, n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    free_families(q, n, k) / free_families(q, k, k)
}

/// Exact integer value of a rational known to be integral.
pub fn to_integer(x: &Q) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

/// "num/den" with a positive denominator.
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses "num/den" or an integer.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            (!b.is_zero()).then(|| Q::new(a, b))
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

pub fn is_nonnegative(x: &Q) -> bool {
    !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&frac(1, 2), 2), frac(3, 8));
        assert_eq!(pochhammer(&frac(7, 3), 0), int(1));
        assert_eq!(pochhammer(&frac(1, 5), 1), frac(4, 5));
    }

    #[test]
    fn counts() {
        assert_eq!(gl_order(2, 2), BigInt::from(6));
        assert_eq!(gl_order(3, 3), BigInt::from(11232));
        assert_eq!(gaussian_binomial(2, 3, 1), BigInt::from(7));
        assert_eq!(qpow(2, -3), frac(1, 8));
    }

    #[test]
    fn text_round_trip() {
        for x in [frac(-3, 4), int(0), int(7)] {
            assert_eq!(parse_q(&fmt_q(&x)).unwrap(), x);
        }
        assert_eq!(fmt_q(&int(0)), "0/1");
        assert!(parse_q("1/0").is_none());
    }
}
