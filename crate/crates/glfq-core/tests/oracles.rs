//! Oracle tests. Worked values are checked directly; everything else is
//! compared against small brute-force computations written here, outside
//! the library.

use std::collections::BTreeSet;

use glfq_core::center::completed_product;
use glfq_core::conjtype::{class_size, enumerate_polypartitions, type_of, Polypartition};
use glfq_core::degree1::first_case_expansion;
use glfq_core::field::Field;
use glfq_core::group::census;
use glfq_core::matrix::Mat;
use glfq_core::partial_iso::{
    a_tilde, count_e, count_f, invariant_product, invariant_product_exhaustive, naive_counterexample, pi_n, product,
    AlgElem, PartialIso,
};
use glfq_core::ranklaw::{count_constrained_subspaces, dim_sum_law, rank_law, rank_law_conditional};
use glfq_core::rational::{frac, Q};
use glfq_core::subspace::Subspace;
use glfq_core::verify::pi_counterexample;
use num_bigint::BigInt;
use num_traits::{One, Zero};

fn piso(f: &Field, v: &str, g1: &str, g2: &str, w: &str) -> PartialIso {
    let span = |s: &str| Subspace::span(f, &Mat::parse(f, s).unwrap());
    PartialIso::new(f, span(v), span(w), Mat::parse(f, g1).unwrap(), Mat::parse(f, g2).unwrap()).unwrap()
}

#[test]
fn worked_values() {
    let f5 = Field::with_order(5).unwrap();
    let mu = Polypartition::parse(&f5, "{X^2+X+1:(2);X+3:(1,1)}").unwrap();
    assert_eq!(class_size(&f5, &mu, 6).unwrap(), "38418317437500000000".parse::<BigInt>().unwrap());
    let g = Mat::parse(&f5, "0,2;1,2").unwrap();
    assert_eq!(type_of(&f5, &g).unwrap().to_string(&f5), "{X^2+3*X+3:(1)}");
    assert_eq!(count_e(2, 2, 1, 0, 0).unwrap(), BigInt::from(3));
    assert_eq!(count_f(2, 2, 1, 1).unwrap(), BigInt::from(2));
}

#[test]
fn types_of_size_two_over_f2() {
    let f = Field::with_order(2).unwrap();
    let by_census: BTreeSet<_> = census(&f, 2).unwrap().into_keys().collect();
    assert_eq!(by_census.len(), 3);
    assert_eq!(enumerate_polypartitions(&f, 2).into_iter().collect::<BTreeSet<_>>(), by_census);
}

// Subspaces of F_2^n as bitmasks over the 2^n vectors, n ≤ 4.
fn span2(gens: &[u32]) -> u32 {
    let mut set: u32 = 1;
    for &g in gens {
        let mut next = set;
        for v in 0..16 {
            if set >> v & 1 == 1 {
                next |= 1 << (v ^ g);
            }
        }
        set = next;
    }
    set
}

fn dim2(s: u32) -> usize {
    s.count_ones().trailing_zeros() as usize
}

fn subspaces2(n: usize) -> BTreeSet<u32> {
    let mut out = BTreeSet::from([1u32]);
    let mut frontier = vec![1u32];
    while let Some(s) = frontier.pop() {
        for v in 1..(1u32 << n) {
            let t = span2_with(s, v);
            if out.insert(t) {
                frontier.push(t);
            }
        }
    }
    out
}

fn span2_with(s: u32, g: u32) -> u32 {
    let mut t = s;
    for v in 0..16 {
        if s >> v & 1 == 1 {
            t |= 1 << (v ^ g);
        }
    }
    t
}

fn coords2(k: usize) -> u32 {
    span2(&(0..k).map(|i| 1u32 << i).collect::<Vec<_>>())
}

fn sum2(a: u32, b: u32) -> u32 {
    (0..16).filter(|v| b >> v & 1 == 1).fold(a, span2_with)
}

#[test]
fn rank_law_by_enumeration_over_f2() {
    for d in 0..=3usize {
        for a in 0..=3usize {
            let mut counts = vec![0u64; d + 1];
            let total = 1u64 << (d * a);
            for t in 0..total {
                let vecs: Vec<u32> = (0..a).map(|i| ((t >> (d * i)) & ((1 << d) - 1)) as u32).collect();
                counts[dim2(span2(&vecs))] += 1;
            }
            for (c, &k) in counts.iter().enumerate() {
                assert_eq!(rank_law(d, 2, a, c), frac(k as i64, total as i64), "d={d} a={a} c={c}");
            }
        }
    }
    assert_eq!(rank_law(2, 2, 2, 2), frac(3, 8));
    assert_eq!(rank_law_conditional(2, 2, 1, 2, 1, 2).unwrap(), Q::one());
}

#[test]
fn dim_sum_law_by_enumeration_over_f2() {
    for n in 1..=4usize {
        let all = subspaces2(n);
        for k in 0..=n {
            for j in 0..=k {
                let (u, w) = (coords2(j), coords2(k));
                for l in j..=n {
                    let ext: Vec<u32> = all.iter().copied().filter(|&s| dim2(s) == l && s & u == u).collect();
                    for m in 0..=n {
                        let hits = ext.iter().filter(|&&s| dim2(sum2(s, w)) == m).count();
                        let want = frac(hits as i64, ext.len() as i64);
                        assert_eq!(dim_sum_law(n, 2, j, k, l, m).unwrap(), want, "n={n} j={j} k={k} l={l} m={m}");
                    }
                }
            }
        }
    }
}

#[test]
fn constrained_counts_by_enumeration_over_f2() {
    for m in 0..=4usize {
        let all = subspaces2(m);
        let y = coords2(m);
        for k in 0..=m {
            for j in 0..=k {
                let (u, w) = (coords2(j), coords2(k));
                for l in j..=m {
                    let hits = all.iter().filter(|&&s| dim2(s) == l && s & u == u && sum2(s, w) == y).count();
                    assert_eq!(count_constrained_subspaces(j, k, l, m, 2).unwrap(), BigInt::from(hits), "j={j} k={k} l={l} m={m}");
                }
            }
        }
    }
    assert!(count_constrained_subspaces(2, 1, 2, 2, 2).is_err());
}

#[test]
fn empty_iso_averages_instead_of_acting_as_unit() {
    let f = Field::with_order(2).unwrap();
    let x = AlgElem::basis(piso(&f, "1,0", "1", "1", "1,0"));
    let left = product(&f, &AlgElem::unit(2), &x).unwrap();
    assert_ne!(left, x);
    assert_eq!(left.len(), 3);
    assert_eq!(left.mass(), Q::one());
    let inv = a_tilde(&f, &Polypartition::linear(&f, 1, &[1]), 2).unwrap();
    assert_eq!(product(&f, &AlgElem::unit(2), &inv).unwrap(), inv);
    assert_eq!(product(&f, &inv, &AlgElem::unit(2)).unwrap(), inv);
}

#[test]
fn invariant_product_matches_double_orbit_sum() {
    for q in [2u32, 3] {
        let f = Field::with_order(q).unwrap();
        let labels: Vec<Polypartition> = enumerate_polypartitions(&f, 1);
        for lambda in &labels {
            for mu in &labels {
                let fast = invariant_product(&f, lambda, mu, 2).unwrap();
                let slow = invariant_product_exhaustive(&f, lambda, mu, 2).unwrap();
                assert_eq!(fast, slow, "q={q} {} * {}", lambda.to_string(&f), mu.to_string(&f));
            }
        }
    }
}

#[test]
fn naive_product_fails_associativity_at_q3() {
    let f3 = Field::with_order(3).unwrap();
    let cex = naive_counterexample(&f3, 2).unwrap().expect("counterexample at q=3, n=2");
    assert_ne!(cex.lhs, cex.rhs);
    // Over F_2 the plane admits none: GL(1, F_2) is trivial.
    let f2 = Field::with_order(2).unwrap();
    assert!(naive_counterexample(&f2, 2).unwrap().is_none());
}

// Under the type characterisation of trivial extensions these two known
// defects are real; the tests pin them so a behaviour change is noticed.
#[test]
fn pi_is_not_multiplicative_on_this_pair() {
    let f = Field::with_order(3).unwrap();
    let x = AlgElem::basis(pi_counterexample(&f).unwrap());
    let lhs = pi_n(&f, &product(&f, &x, &x).unwrap()).unwrap();
    let px = pi_n(&f, &x).unwrap();
    assert_ne!(lhs, px.mul(&f, &px));
}

#[test]
fn product_is_not_associative_on_this_triple() {
    let f = Field::with_order(3).unwrap();
    let x = AlgElem::basis(piso(&f, "1,0;0,1", "2,1;2,0", "1,1;0,1", "1,0;0,1"));
    let y = AlgElem::basis(piso(&f, "1,0", "2", "1", "1,2"));
    let z = AlgElem::basis(piso(&f, "1,2", "1", "2", "0,1"));
    let lhs = product(&f, &product(&f, &x, &y).unwrap(), &z).unwrap();
    let rhs = product(&f, &x, &product(&f, &y, &z).unwrap()).unwrap();
    assert_ne!(lhs, rhs);
    assert_eq!(lhs.mass(), rhs.mass());
}

#[test]
fn first_case_display_at_q7() {
    let f = Field::with_order(7).unwrap();
    let (a, b) = (3, 6);
    let shown = first_case_expansion(&f, a, b, 2).unwrap();
    let brute = completed_product(&f, &Polypartition::linear(&f, a, &[1]), &Polypartition::linear(&f, b, &[1]), 2).unwrap();
    assert_eq!(shown, brute);
    // X - ab collects q^{n-1} from its own term and (q-1)/2 from d = a and d = 1/b.
    let key = Polypartition::linear(&f, f.mul(a, b), &[1]).complete(&f, 2).unwrap();
    assert_eq!(brute.coeff(&key), Q::from_integer(13.into()));
    assert!(first_case_expansion(&f, 3, 3, 2).is_err());
}

mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn field_axioms(qi in 0usize..7, a in 0u32..256, b in 0u32..256, c in 0u32..256) {
            let q = [2u32, 3, 4, 5, 7, 8, 9][qi];
            let f = Field::with_order(q).unwrap();
            let (a, b, c) = ((a % q) as u8, (b % q) as u8, (c % q) as u8);
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a)), 1);
                prop_assert_eq!(f.pow(a, q as u64 - 1), 1);
            }
        }

        #[test]
        fn rank_law_sums_to_one(d in 0usize..6, a in 0usize..7, qi in 0usize..4) {
            let q = [2u32, 3, 4, 5][qi];
            let total = (0..=d).fold(Q::zero(), |s, c| s + rank_law(d, q, a, c));
            prop_assert_eq!(total, Q::one());
        }
    }
}
