//! Property tests for the exact-algebra and ℓ-adic layers.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use quadlog_core::abelian::{
    alternating_square, cokernel, ell_sylow, smith_normal_form, snf_diagonal, FinAbGroup, IntMatrix,
};
use quadlog_core::padic::{
    fermat_quotient, hensel_sqrt, iwasawa_log_rational, principal_unit_dlog, PadicInt,
};

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-30i64..30, r * c)
            .prop_map(move |v| IntMatrix::from_i64(r, c, &v))
    })
}

proptest! {
    #[test]
    fn snf_factorization_and_chain(m in small_matrix()) {
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.s.clone());
        prop_assert!(snf.u.determinant().abs().is_one());
        prop_assert!(snf.v.determinant().abs().is_one());
        let d = snf_diagonal(&snf.s);
        for w in d.windows(2) {
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
        for x in &d {
            prop_assert!(!x.is_negative());
        }
    }

    #[test]
    fn cokernel_order_is_determinant(v in proptest::collection::vec(-9i64..9, 9)) {
        let m = IntMatrix::from_i64(3, 3, &v);
        let det = m.determinant();
        prop_assume!(!det.is_zero());
        let (g, rank) = cokernel(&m);
        prop_assert_eq!(rank, 0);
        prop_assert_eq!(BigInt::from(g.order()), det.abs());
    }

    #[test]
    fn alternating_square_order(orders in proptest::collection::vec(2u64..40, 0..5)) {
        let g = FinAbGroup::from_u64_orders(&orders).unwrap();
        let (sq, pairs) = alternating_square(&g);
        let d = g.invariant_factors();
        let mut want = BigUint::one();
        for i in 0..d.len() {
            for j in i + 1..d.len() {
                want *= num_integer::Integer::gcd(&d[i], &d[j]);
            }
        }
        prop_assert_eq!(sq.order(), want);
        prop_assert_eq!(pairs.len(), d.len() * d.len().saturating_sub(1) / 2);
    }

    #[test]
    fn ell_sylow_splits_order(orders in proptest::collection::vec(2u64..60, 1..5)) {
        let g = FinAbGroup::from_u64_orders(&orders).unwrap();
        let s3 = ell_sylow(&g, 3).unwrap();
        let s5 = ell_sylow(&g, 5).unwrap();
        // Sylow orders multiply into the full order, and each is the full
        // power of its prime
        let mut n = g.order();
        let three = BigUint::from(3u32);
        let mut three_part = BigUint::one();
        while (&n % &three).is_zero() { n /= &three; three_part *= &three; }
        prop_assert_eq!(s3.order(), three_part);
        let five = BigUint::from(5u32);
        let mut five_part = BigUint::one();
        while (&n % &five).is_zero() { n /= &five; five_part *= &five; }
        prop_assert_eq!(s5.order(), five_part);
    }

    #[test]
    fn log_homomorphism_many_precisions(
        a in 1i64..2000,
        b in 1i64..2000,
        ell_idx in 0usize..4,
        m_idx in 0usize..3,
    ) {
        let ell = [3u64, 5, 7, 13][ell_idx];
        let m = [4u32, 8, 12][m_idx];
        prop_assume!(a % ell as i64 != 0 && b % ell as i64 != 0);
        let ra = BigRational::from_integer(BigInt::from(a));
        let rb = BigRational::from_integer(BigInt::from(b));
        let la = iwasawa_log_rational(&ra, ell, m).unwrap();
        let lb = iwasawa_log_rational(&rb, ell, m).unwrap();
        let lab = iwasawa_log_rational(&(ra * rb), ell, m).unwrap();
        prop_assert_eq!(&la + &lb, lab);
    }

    #[test]
    fn log_precision_monotone(a in 2i64..5000, m in 2u32..10) {
        let ell = 7u64;
        prop_assume!(a % 7 != 0);
        let ra = BigRational::from_integer(BigInt::from(a));
        let big = iwasawa_log_rational(&ra, ell, m + 5).unwrap();
        let small = iwasawa_log_rational(&ra, ell, m).unwrap();
        prop_assert_eq!(big.truncate(m).unwrap(), small);
    }

    #[test]
    fn hensel_always_squares_back(a in 2i64..500, m in 1u32..12) {
        for ell in [3u64, 5, 7, 11] {
            if a % ell as i64 == 0 { continue; }
            if let Ok(r) = hensel_sqrt(&BigInt::from(a), ell, m) {
                let sq = &r * &r;
                let want = PadicInt::from_bigint(ell, m, &BigInt::from(a)).unwrap();
                prop_assert_eq!(sq, want);
            }
        }
    }

    #[test]
    fn dlog_additive(e1 in 0u64..3000, e2 in 0u64..3000) {
        let ell = 7u64;
        let m = 7u32;
        let base = PadicInt::new(ell, m, BigUint::from(8u32)).unwrap();
        let u = base.pow(&BigUint::from(e1));
        let v = base.pow(&BigUint::from(e2));
        let du = principal_unit_dlog(&u).unwrap();
        let dv = principal_unit_dlog(&v).unwrap();
        let duv = principal_unit_dlog(&(&u * &v)).unwrap();
        prop_assert_eq!(&du + &dv, duv);
    }

    #[test]
    fn fermat_quotient_matches_log_valuation(q in 2u64..800) {
        let ell = 11u64;
        prop_assume!(q % ell != 0);
        let fq = fermat_quotient(&BigInt::from(q), ell).unwrap();
        let lq = iwasawa_log_rational(
            &BigRational::from_integer(BigInt::from(q)), ell, 2).unwrap();
        // Log(q) ≡ (ℓ·FQ)/(…unit) mod ℓ²: valuation ≥ 2 iff FQ = 0
        prop_assert_eq!(fq == 0, lq.valuation() >= 2);
    }
}
