//! Fundamental unit of a real quadratic order via the continued fraction
//! of √d.
//!
//! The period of √d gives the fundamental solution of x² − dy² = ±1, hence
//! the fundamental unit of Z[√d]. For Δ ≡ 1 (mod 4) the maximal order may
//! be three times larger; the candidate cube root (t+u√d)/2 is recovered
//! from the integer equation d·u³ + 3n·u = 2y and verified exactly.

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::QuadElem;
use crate::error::{Error, Result};

const PERIOD_CAP: usize = 50_000_000;

/// Fundamental unit ε > 1 with its norm sign.
#[derive(Clone, Debug)]
pub struct FundamentalUnit {
    pub epsilon: QuadElem,
    pub norm: i8,
}

/// Fundamental unit of the maximal order of discriminant Δ > 0.
pub fn fundamental_unit(delta: i64) -> Result<FundamentalUnit> {
    let field = crate::quadfield::FieldDesc::new(delta)?;
    if !field.is_real() {
        return Err(Error::Malformed(alloc::format!(
            "fundamental unit needs a real field, got {delta}"
        )));
    }
    let d = if delta % 4 == 0 { delta / 4 } else { delta };
    let (x, y, norm) = pell_fundamental(d)?;

    if delta % 4 != 0 {
        // maximal order Z[(1+√d)/2]: check for a smaller half-integer unit,
        // the cube root of x + y√d
        if let Some((t, u, n)) = half_unit_cube_root(d, &x, &y) {
            let eps = half_coords_to_omega(delta, &t, &u);
            debug_assert_eq!(
                eps.norm(),
                BigRational::from_integer(BigInt::from(n as i64))
            );
            return Ok(FundamentalUnit {
                epsilon: eps,
                norm: n,
            });
        }
    }
    // ε = x + y√d in ω coordinates
    let eps = if delta % 4 == 0 {
        // ω = 2d' + √d' with d' = Δ/4
        QuadElem::new(
            delta,
            BigRational::from_integer(&x - BigInt::from(2) * d * &y),
            BigRational::from_integer(y.clone()),
        )
    } else {
        // √Δ = 2ω − Δ
        QuadElem::new(
            delta,
            BigRational::from_integer(&x - BigInt::from(delta) * &y),
            BigRational::from_integer(BigInt::from(2) * &y),
        )
    };
    debug_assert_eq!(
        eps.norm(),
        BigRational::from_integer(BigInt::from(norm as i64))
    );
    Ok(FundamentalUnit { epsilon: eps, norm })
}

/// Fundamental solution of x² − d·y² = ±1 from the continued fraction of
/// √d; the sign is (−1)^period.
fn pell_fundamental(d: i64) -> Result<(BigInt, BigInt, i8)> {
    let a0 = (d as u64).sqrt() as i64;
    debug_assert!(a0 * a0 != d, "fundamental discriminants are nonsquare");
    let mut p_prev = BigInt::one();
    let mut p = BigInt::from(a0);
    let mut q_prev = BigInt::zero();
    let mut q = BigInt::one();
    let mut pp = a0; // P_1
    let mut qq = d - a0 * a0; // Q_1
    let mut period = 1usize;
    loop {
        let a = (a0 + pp) / qq;
        if a == 2 * a0 {
            break;
        }
        let p_new = BigInt::from(a) * &p + &p_prev;
        p_prev = core::mem::replace(&mut p, p_new);
        let q_new = BigInt::from(a) * &q + &q_prev;
        q_prev = core::mem::replace(&mut q, q_new);
        pp = a * qq - pp;
        qq = (d - pp * pp) / qq;
        period += 1;
        if period > PERIOD_CAP {
            return Err(Error::ResourceLimit(alloc::format!(
                "continued fraction period of sqrt({d})"
            )));
        }
    }
    let sign = if period % 2 == 0 { 1 } else { -1 };
    debug_assert_eq!(&p * &p - BigInt::from(d) * &q * &q, BigInt::from(sign));
    Ok((p, q, sign as i8))
}

/// Solve ((t+u√d)/2)³ = x + y√d for integral t, u of equal parity. With
/// n = (t² − du²)/4 this reduces to d·u³ + 3n·u = 2y and t² = du² + 4n.
fn half_unit_cube_root(d: i64, x: &BigInt, y: &BigInt) -> Option<(BigInt, BigInt, i8)> {
    let dd = BigInt::from(d);
    let two_y = BigInt::from(2) * y;
    for n in [1i8, -1] {
        let approx = (&two_y / &dd).cbrt();
        for du in -2i64..=2 {
            let u = &approx + BigInt::from(du);
            if !u.is_positive() {
                continue;
            }
            if &dd * &u * &u * &u + BigInt::from(3 * n as i64) * &u != two_y {
                continue;
            }
            let t_sq = &dd * &u * &u + BigInt::from(4 * n as i64);
            if !t_sq.is_positive() {
                continue;
            }
            let t = t_sq.sqrt();
            if &t * &t != t_sq {
                continue;
            }
            // verify the cube exactly: t(t² + 3du²) = 8x
            let lhs = &t * (&t * &t + BigInt::from(3) * &dd * &u * &u);
            if lhs == BigInt::from(8) * x {
                return Some((t, u, n));
            }
        }
    }
    None
}

/// (t + u√Δ)/2 in ω coordinates (Δ odd): (t − uΔ)/2 + uω.
fn half_coords_to_omega(delta: i64, t: &BigInt, u: &BigInt) -> QuadElem {
    let a = (t - BigInt::from(delta) * u) / BigInt::from(2);
    QuadElem::new(
        delta,
        BigRational::from_integer(a),
        BigRational::from_integer(u.clone()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio() {
        // Δ = 5: ε = (1+√5)/2, norm −1; in ω coordinates that is ω − 2
        let u = fundamental_unit(5).unwrap();
        assert_eq!(u.norm, -1);
        assert_eq!(u.epsilon, QuadElem::from_integers(5, -2, 1));
    }

    #[test]
    fn sqrt_two() {
        // Δ = 8: ε = 1 + √2 = 1 − 4 + ω (ω = 2 + √2)
        let u = fundamental_unit(8).unwrap();
        assert_eq!(u.norm, -1);
        assert_eq!(u.epsilon, QuadElem::from_integers(8, -3, 1));
        assert_eq!(
            u.epsilon.norm(),
            BigRational::from_integer(BigInt::from(-1))
        );
    }

    #[test]
    fn sqrt_three() {
        // Δ = 12: ε = 2 + √3, norm +1
        let u = fundamental_unit(12).unwrap();
        assert_eq!(u.norm, 1);
        // ω = 6 + √3, so 2 + √3 = −4 + ω
        assert_eq!(u.epsilon, QuadElem::from_integers(12, -4, 1));
    }

    #[test]
    fn norm_signs_and_integrality_sweep() {
        for delta in [
            5i64, 8, 12, 13, 17, 21, 24, 28, 29, 33, 40, 44, 56, 61, 76, 229, 401,
        ] {
            if !crate::quadfield::is_fundamental(delta) {
                continue;
            }
            let u = fundamental_unit(delta).unwrap();
            let n = u.epsilon.norm();
            assert_eq!(
                n,
                BigRational::from_integer(BigInt::from(u.norm as i64)),
                "norm sign for {delta}"
            );
            assert!(u.epsilon.is_integral(), "integral for {delta}");
            // ε ∉ {±1}: a nontrivial unit
            assert!(!u.epsilon.coord_b().is_zero(), "{delta}");
        }
    }

    #[test]
    fn not_a_proper_power() {
        // ε is fundamental: no ℓ-th root inside the unit group for small ℓ.
        // Check by size: the real embedding of ε exceeds that of ε' = x+y√d
        // solutions only if... instead verify ε generates: ε, ε² and ε³ have
        // strictly growing coordinate height and the Pell solution is hit.
        for delta in [13i64, 61, 109] {
            let u = fundamental_unit(delta).unwrap();
            // norm −1 for these; ε² has norm +1, and the fundamental Pell
            // (norm +1) solution must equal ε² exactly
            assert_eq!(u.norm, -1, "{delta}");
            let sq = u.epsilon.mul(&u.epsilon);
            let d = delta; // odd cases
            let (x, y, s) = pell_fundamental(d).unwrap();
            // x + y√d = smallest unit of Z[√d] ⊆ O; for these fields the
            // index is 3: ε³ = x + y√d
            let cube = sq.mul(&u.epsilon);
            let as_omega = QuadElem::new(
                delta,
                BigRational::from_integer(&x - BigInt::from(delta) * &y),
                BigRational::from_integer(BigInt::from(2) * &y),
            );
            assert!(s == -1);
            assert_eq!(cube, as_omega, "{delta}");
        }
    }

    #[test]
    fn imaginary_rejected() {
        assert!(fundamental_unit(-4).is_err());
    }

    #[test]
    fn not_a_square_or_cube() {
        // η² = ε forces t² = Tr(ε)+2n and d·u² = Tr(ε)−2n with n² = N(ε);
        // η³ = ε forces d·u³ + 3n·u = Y where ε = (X+Y√d)/2 and n = N(ε).
        // The fundamental unit admits neither.
        for delta in [5i64, 8, 12, 13, 40, 229, 401] {
            let fu = fundamental_unit(delta).unwrap();
            let d = if delta % 4 == 0 { delta / 4 } else { delta };
            let tr = fu.epsilon.trace().to_integer();
            // X + Y√d = 2ε: Y from the ω-coordinate
            let (_, b, den) = fu.epsilon.to_integral_triplet();
            assert!(den.is_one());
            // the cube equation reads d·u³ + 3n·u = 2·(√d-coordinate of ε)
            let y: BigInt = if delta % 4 != 0 {
                b.clone() // ε = ((2a+bΔ) + b√Δ)/2
            } else {
                BigInt::from(2) * &b // ε = (a+2bd) + b√d
            };

            if fu.norm == 1 {
                for n in [1i64, -1] {
                    let t_sq = &tr + BigInt::from(2 * n);
                    let du_sq = &tr - BigInt::from(2 * n);
                    if t_sq.is_negative() || du_sq.is_negative() || !(&du_sq % d).is_zero() {
                        continue;
                    }
                    let u_sq = du_sq / d;
                    let t = t_sq.sqrt();
                    let u = u_sq.sqrt();
                    let both_square = &t * &t == t_sq && &u * &u == u_sq;
                    assert!(
                        !(both_square && !u.is_zero()),
                        "fundamental unit of {delta} is a square"
                    );
                }
            }
            // cube root, same technique as the construction helper
            let n = fu.norm as i64;
            let dd = BigInt::from(d);
            let approx = (&y / &dd).cbrt();
            for du in -2i64..=2 {
                let u = &approx + BigInt::from(du);
                if !u.is_positive() {
                    continue;
                }
                if &dd * &u * &u * &u + BigInt::from(3 * n) * &u == y && y > BigInt::from(1) {
                    let t_sq = &dd * &u * &u + BigInt::from(4 * n);
                    let t = t_sq.sqrt();
                    assert!(&t * &t != t_sq, "fundamental unit of {delta} is a cube");
                }
            }
        }
    }
}
