//! Exact laws of the rank chain X_k = rank(v_1, ..., v_k) of uniform vectors
//! in F_q^d, the law of dim(U⁺ + W), and constrained subspace counts.
//!
//! Out-of-support arguments give 0; only structurally impossible parameter
//! chains are errors.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};
use crate::rational::{qinv_poch, qpow, to_integer, Q};

/// (q⁻¹)_m, or None for a negative index (which means probability 0).
fn poch(q: u32, m: i64) -> Option<Q> {
    (m >= 0).then(|| qinv_poch(q, m as usize))
}

/// P_{d,q}[X_a = c] = q^{(d-c)(c-a)} (q⁻¹)_a (q⁻¹)_d / ((q⁻¹)_c (q⁻¹)_{a-c} (q⁻¹)_{d-c}).
pub fn rank_law(d: usize, q: u32, a: usize, c: usize) -> Q {
    let (d, a, c) = (d as i64, a as i64, c as i64);
    let parts = || -> Option<Q> {
        let num = poch(q, a)? * poch(q, d)?;
        let den = poch(q, c)? * poch(q, a - c)? * poch(q, d - c)?;
        Some(qpow(q, (d - c) * (c - a)) * num / den)
    };
    parts().unwrap_or_else(Q::zero)
}

/// P_{d,q}[X_a = c | X_b = dd] for a ≤ b, via Bayes and the fact that after
/// reaching rank c the chain continues as the chain of F_q^{d-c}.
pub fn rank_law_conditional(d: usize, q: u32, a: usize, b: usize, c: usize, dd: usize) -> Result<Q> {
    if a > b {
        return invalid("need a <= b");
    }
    let pb = rank_law(d, q, b, dd);
    if pb.is_zero() || c > dd || c > d {
        return Ok(Q::zero());
    }
    Ok(rank_law(d - c, q, b - a, dd - c) * rank_law(d, q, a, c) / pb)
}

/// Law of m = dim(U⁺ + W) where dim U = j, dim(U + W) = k and U⁺ ⊇ U is
/// uniform of dimension l, inside F_q^n.
pub fn dim_sum_law(n: usize, q: u32, j: usize, k: usize, l: usize, m: usize) -> Result<Q> {
    if j > k || j > l || k > n || l > n {
        return invalid("need j <= k, j <= l and k, l <= n");
    }
    let (n, j, k, l, m) = (n as i64, j as i64, k as i64, l as i64, m as i64);
    let parts = || -> Option<Q> {
        let num = poch(q, n - k)? * poch(q, n - l)? * poch(q, k - j)? * poch(q, l - j)?;
        let den = poch(q, k + l - j - m)? * poch(q, n - m)? * poch(q, n - j)? * poch(q, m - k)? * poch(q, m - l)?;
        Some(qpow(q, (k + l - j - m) * (m - n)) * num / den)
    };
    Ok(parts().unwrap_or_else(Q::zero))
}

/// Number of U⁺ with dim U⁺ = l, U ⊆ U⁺ ⊆ Y and U⁺ + W = Y, where
/// dim U = j, dim(U + W) = k and dim Y = m:
/// q^{(m-l)(l-j)} (q⁻¹)_{k-j} / ((q⁻¹)_{m-l} (q⁻¹)_{k+l-j-m}).
pub fn count_constrained_subspaces(j: usize, k: usize, l: usize, m: usize, q: u32) -> Result<BigInt> {
    if j > k || j > l || k > m || l > m {
        return invalid("need j <= k <= m and j <= l <= m");
    }
    if m > k + l - j {
        return Ok(BigInt::zero());
    }
    let (j, k, l, m) = (j as i64, k as i64, l as i64, m as i64);
    let v = qpow(q, (m - l) * (l - j)) * qinv_poch(q, (k - j) as usize)
        / (qinv_poch(q, (m - l) as usize) * qinv_poch(q, (k + l - j - m) as usize));
    to_integer(&v).ok_or_else(|| crate::error::Error::Check("non-integral subspace count".into()))
}

/// h_r(1, q, ..., q^c), the complete homogeneous symmetric polynomial of
/// degree r at a geometric progression.
pub fn homogeneous_geometric(r: usize, c: usize, q: u32) -> BigInt {
    // h[i] = h_i of the variables seen so far; adding x multiplies the
    // generating function by 1/(1 - xt).
    let mut h = vec![BigInt::zero(); r + 1];
    h[0] = BigInt::one();
    for v in 0..=c {
        let x = BigInt::from(q).pow(v as u32);
        for i in 1..=r {
            let prev = h[i - 1].clone();
            h[i] += &x * prev;
        }
    }
    h[r].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn examples() {
        assert_eq!(rank_law(2, 2, 2, 2), frac(3, 8));
        assert_eq!(rank_law(5, 3, 0, 0), Q::one());
        assert_eq!(rank_law(1, 2, 1, 1), frac(1, 2));
        assert_eq!(rank_law(2, 2, 1, 2), Q::zero());
        assert_eq!(rank_law_conditional(2, 2, 1, 2, 1, 2).unwrap(), Q::one());
        assert_eq!(rank_law_conditional(3, 2, 2, 2, 1, 1).unwrap(), Q::one());
        assert_eq!(dim_sum_law(2, 2, 0, 1, 1, 1).unwrap(), frac(1, 3));
        assert_eq!(dim_sum_law(2, 2, 0, 1, 1, 2).unwrap(), frac(2, 3));
        assert_eq!(dim_sum_law(3, 2, 1, 1, 1, 1).unwrap(), Q::one());
        assert_eq!(dim_sum_law(3, 2, 0, 1, 1, 3).unwrap(), Q::zero());
        assert_eq!(count_constrained_subspaces(0, 1, 1, 1, 2).unwrap(), BigInt::one());
        assert_eq!(count_constrained_subspaces(0, 1, 1, 2, 2).unwrap(), BigInt::from(2));
        assert_eq!(homogeneous_geometric(0, 3, 5), BigInt::one());
        assert_eq!(homogeneous_geometric(1, 1, 7), BigInt::from(8));
        assert_eq!(homogeneous_geometric(2, 2, 2), BigInt::from(35));
    }
}
