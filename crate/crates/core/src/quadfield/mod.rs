//! Arithmetic of quadratic fields.
//!
//! A field is described by its fundamental discriminant Δ; elements are
//! exact rational combinations of 1 and ω = (Δ+√Δ)/2, ideals are HNF
//! lattices, class groups come from reduced binary quadratic forms and
//! Gauss composition, and the split-prime machinery (embeddings into Q_ℓ,
//! residue units, ray class groups) lives in [`ray`].

mod elem;
mod forms;
mod ideal;
pub(crate) mod ray;
mod unit;

pub use elem::QuadElem;
pub use forms::{class_group, class_number, reduced_forms, QuadForm};
pub use ideal::{principal_generator, QuadIdeal};
pub use ray::{
    class_generators, ray_class_group_ellpart, ray_presentation, ray_presentation_for,
    residue_units, wide_class_group, wide_class_number, ClassGroupCtx, Place, RayClassData,
    RayPresentation, ResidueUnits, SplitField,
};
pub use unit::{fundamental_unit, FundamentalUnit};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// A quadratic field given by its fundamental discriminant.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FieldDesc {
    delta: i64,
}

impl FieldDesc {
    pub fn new(delta: i64) -> Result<Self> {
        if !is_fundamental(delta) {
            return Err(Error::NotFundamental(delta));
        }
        Ok(FieldDesc { delta })
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    pub fn is_real(&self) -> bool {
        self.delta > 0
    }

    /// (r_K, c_K): number of real and complex places.
    pub fn signature(&self) -> (u32, u32) {
        if self.delta > 0 {
            (2, 0)
        } else {
            (0, 1)
        }
    }

    pub fn complex_places(&self) -> u32 {
        self.signature().1
    }

    /// Order of the torsion unit group μ_K.
    pub fn torsion_units(&self) -> u32 {
        match self.delta {
            -3 => 6,
            -4 => 4,
            _ => 2,
        }
    }
}

/// Fundamental discriminant test: Δ ≡ 1 mod 4 squarefree, or Δ = 4d with
/// d ≡ 2, 3 mod 4 squarefree; 0 and 1 excluded.
pub fn is_fundamental(delta: i64) -> bool {
    if delta == 0 || delta == 1 {
        return false;
    }
    match delta.rem_euclid(4) {
        1 => is_squarefree(delta),
        0 => {
            let d = delta / 4;
            matches!(d.rem_euclid(4), 2 | 3) && is_squarefree(d)
        }
        _ => false,
    }
}

fn is_squarefree(n: i64) -> bool {
    let mut n = n.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Kronecker symbol (a | b), fully general.
pub fn kronecker(a: &BigInt, b: &BigInt) -> i8 {
    if b.is_zero() {
        return if a.abs() == BigInt::from(1) { 1 } else { 0 };
    }
    let mut a = a.clone();
    let mut b = b.clone();
    if b.is_even() && a.is_even() {
        return 0;
    }
    let mut result: i8 = 1;
    if b.is_negative() {
        b = -b;
        if a.is_negative() {
            result = -result;
        }
    }
    // strip factors of 2 from b using (a|2) = (2|a) for odd a
    let mut v2 = 0u32;
    while b.is_even() {
        b /= 2;
        v2 += 1;
    }
    if v2 % 2 == 1 {
        // a is odd here: the even-even case returned 0 above
        let a8 = (&a).mod_floor(&BigInt::from(8));
        if a8 == BigInt::from(3) || a8 == BigInt::from(5) {
            result = -result;
        }
    }
    a = a.mod_floor(&b);
    // now the Jacobi loop
    while !a.is_zero() {
        let mut t = 0u32;
        while a.is_even() {
            a /= 2;
            t += 1;
        }
        if t % 2 == 1 {
            let b8 = (&b).mod_floor(&BigInt::from(8));
            if b8 == BigInt::from(3) || b8 == BigInt::from(5) {
                result = -result;
            }
        }
        // quadratic reciprocity for odd positive a, b
        if (&a).mod_floor(&BigInt::from(4)) == BigInt::from(3)
            && (&b).mod_floor(&BigInt::from(4)) == BigInt::from(3)
        {
            result = -result;
        }
        let r = (&b).mod_floor(&a);
        b = core::mem::replace(&mut a, r);
    }
    if b == BigInt::from(1) {
        result
    } else {
        0
    }
}

pub fn kronecker_i64(a: i64, b: i64) -> i8 {
    kronecker(&BigInt::from(a), &BigInt::from(b))
}

/// Is ℓ completely split in Q(√Δ), i.e. is the field totally ℓ-adic at ℓ?
pub fn is_totally_ell_adic(delta: i64, ell: u64) -> Result<bool> {
    crate::padic::require_odd_prime(ell)?;
    FieldDesc::new(delta)?;
    Ok(kronecker_i64(delta, ell as i64) == 1)
}

/// ω's minimal polynomial is x² − Δx + (Δ²−Δ)/4; this is the constant term.
pub(crate) fn omega_norm(delta: i64) -> BigInt {
    let d = BigInt::from(delta);
    (&d * &d - &d) / 4
}
