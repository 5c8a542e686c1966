//! Elements of a quadratic field as exact rational combinations a + bω,
//! with ω = (Δ+√Δ)/2 the standard integral generator (trace Δ, norm
//! (Δ²−Δ)/4, valid for both parities of Δ).

use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::omega_norm;

#[derive(Clone, PartialEq, Eq)]
pub struct QuadElem {
    delta: i64,
    a: BigRational,
    b: BigRational,
}

impl QuadElem {
    pub fn new(delta: i64, a: BigRational, b: BigRational) -> Self {
        QuadElem { delta, a, b }
    }

    pub fn from_integers(delta: i64, a: i64, b: i64) -> Self {
        QuadElem {
            delta,
            a: BigRational::from_integer(BigInt::from(a)),
            b: BigRational::from_integer(BigInt::from(b)),
        }
    }

    pub fn from_rational(delta: i64, a: BigRational) -> Self {
        QuadElem {
            delta,
            a,
            b: BigRational::zero(),
        }
    }

    pub fn one(delta: i64) -> Self {
        Self::from_integers(delta, 1, 0)
    }

    pub fn omega(delta: i64) -> Self {
        Self::from_integers(delta, 0, 1)
    }

    /// √Δ = 2ω − Δ.
    pub fn sqrt_delta(delta: i64) -> Self {
        Self::from_integers(delta, -delta, 2)
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    pub fn coord_a(&self) -> &BigRational {
        &self.a
    }

    pub fn coord_b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Integral means lying in O = Z[ω]: both coordinates integers.
    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    pub fn conj(&self) -> QuadElem {
        // σ(ω) = Δ − ω
        QuadElem {
            delta: self.delta,
            a: &self.a + &self.b * BigRational::from_integer(BigInt::from(self.delta)),
            b: -self.b.clone(),
        }
    }

    pub fn norm(&self) -> BigRational {
        let d = BigRational::from_integer(BigInt::from(self.delta));
        let n = BigRational::from_integer(omega_norm(self.delta));
        &self.a * &self.a + &self.a * &self.b * d + &self.b * &self.b * n
    }

    pub fn trace(&self) -> BigRational {
        let d = BigRational::from_integer(BigInt::from(self.delta));
        BigRational::from_integer(BigInt::from(2)) * &self.a + &self.b * d
    }

    pub fn mul(&self, other: &QuadElem) -> QuadElem {
        assert_eq!(self.delta, other.delta, "mixed fields");
        let d = BigRational::from_integer(BigInt::from(self.delta));
        let n = BigRational::from_integer(omega_norm(self.delta));
        // (a1 + b1ω)(a2 + b2ω) with ω² = Δω − N(ω)
        let a = &self.a * &other.a - &self.b * &other.b * n;
        let b = &self.a * &other.b + &self.b * &other.a + &self.b * &other.b * d;
        QuadElem {
            delta: self.delta,
            a,
            b,
        }
    }

    pub fn inverse(&self) -> Option<QuadElem> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(QuadElem {
            delta: self.delta,
            a: c.a / &n,
            b: c.b / &n,
        })
    }

    pub fn div(&self, other: &QuadElem) -> Option<QuadElem> {
        other.inverse().map(|inv| self.mul(&inv))
    }

    pub fn neg(&self) -> QuadElem {
        QuadElem {
            delta: self.delta,
            a: -self.a.clone(),
            b: -self.b.clone(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> QuadElem {
        QuadElem {
            delta: self.delta,
            a: &self.a * c,
            b: &self.b * c,
        }
    }

    pub fn pow(&self, e: u32) -> QuadElem {
        let mut acc = QuadElem::one(self.delta);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Write as (A + Bω)/D with integral A, B and D > 0 minimal.
    pub fn to_integral_triplet(&self) -> (BigInt, BigInt, BigInt) {
        let da = self.a.denom().clone();
        let db = self.b.denom().clone();
        let d: BigInt = num_integer::lcm(da, db);
        let a = (&self.a * BigRational::from_integer(d.clone())).to_integer();
        let b = (&self.b * BigRational::from_integer(d.clone())).to_integer();
        debug_assert!(d.is_positive());
        (a, b, d)
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let mut s = String::new();
        if !self.a.is_zero() {
            fmt::write(&mut s, format_args!("{} + ", self.a))?;
        }
        if self.b.is_one() {
            fmt::write(&mut s, format_args!("w"))?;
        } else {
            fmt::write(&mut s, format_args!("{}*w", self.b))?;
        }
        write!(f, "{s}")
    }
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadElem[{}]({})", self.delta, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_trace_conj() {
        // Δ = −4: ω = (−4 + 2i)/2 = −2 + i, so i = ω + 2
        let i = QuadElem::from_integers(-4, 2, 1);
        assert_eq!(i.norm(), BigRational::from_integer(BigInt::one()));
        assert!(i.trace().is_zero());
        let sq = i.mul(&i);
        assert_eq!(sq, QuadElem::from_integers(-4, -1, 0));

        // golden ratio in Δ = 5: ω = (5+√5)/2 = 2 + (1+√5)/2
        let phi = QuadElem::from_integers(5, -2, 1);
        assert_eq!(phi.norm(), BigRational::from_integer(BigInt::from(-1)));
        assert_eq!(phi.trace(), BigRational::from_integer(BigInt::one()));
    }

    #[test]
    fn sqrt_delta_squares_to_delta() {
        for d in [5i64, 8, 12, -4, -23, 40] {
            let s = QuadElem::sqrt_delta(d);
            assert_eq!(s.mul(&s), QuadElem::from_integers(d, d, 0), "delta {d}");
            assert!(s.trace().is_zero());
        }
    }

    #[test]
    fn multiplicative_norm() {
        let x = QuadElem::from_integers(40, 3, 2);
        let y = QuadElem::from_integers(40, -1, 5);
        assert_eq!(x.mul(&y).norm(), x.norm() * y.norm());
        assert_eq!(x.conj().norm(), x.norm());
    }

    #[test]
    fn inverse_roundtrip() {
        let x = QuadElem::from_integers(-23, 3, 2);
        let inv = x.inverse().unwrap();
        assert_eq!(x.mul(&inv), QuadElem::one(-23));
        assert!(QuadElem::from_integers(-23, 0, 0).inverse().is_none());
    }

    #[test]
    fn triplet_roundtrip() {
        let x = QuadElem::new(
            5,
            BigRational::new(BigInt::from(3), BigInt::from(4)),
            BigRational::new(BigInt::from(-7), BigInt::from(6)),
        );
        let (a, b, d) = x.to_integral_triplet();
        assert_eq!(d, BigInt::from(12));
        assert_eq!(a, BigInt::from(9));
        assert_eq!(b, BigInt::from(-14));
    }
}
