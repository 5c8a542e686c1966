//! ℓ-adic integer arithmetic at fixed finite precision.
//!
//! Values are residues modulo ℓ^m with ℓ an odd prime; every public result
//! is exact modulo its stated precision. The Iwasawa logarithm is extended
//! by `Log ℓ = 0` and kills roots of unity; series evaluation pads the
//! working precision by the worst-case denominator valuation, derived from
//! the term count rather than guessed.
//!
//! Division by ℓ is only available through [`PadicVal`], which carries the
//! valuation certificate that makes the division exact.

use alloc::string::ToString;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::abelian::is_prime_u64;
use crate::error::{Error, Result};

/// Check the standing hypothesis ℓ odd prime; 2 is rejected everywhere.
pub fn require_odd_prime(ell: u64) -> Result<()> {
    if ell < 3 || !is_prime_u64(ell) {
        return Err(Error::InvalidPrime(ell));
    }
    Ok(())
}

pub fn ell_pow(ell: u64, k: u32) -> BigUint {
    BigUint::from(ell).pow(k)
}

/// Modular inverse of a unit.
pub fn inv_mod(a: &BigUint, modulus: &BigUint) -> Result<BigUint> {
    let e = BigInt::from(a.clone()).extended_gcd(&BigInt::from(modulus.clone()));
    if !e.gcd.is_one() {
        return Err(Error::NotAUnit(a.to_string()));
    }
    let m = BigInt::from(modulus.clone());
    let x = e.x.mod_floor(&m);
    Ok(x.to_biguint().expect("mod_floor of positive modulus"))
}

/// An ℓ-adic integer known modulo ℓ^m.
#[derive(Clone, PartialEq, Eq)]
pub struct PadicInt {
    ell: u64,
    precision: u32,
    residue: BigUint,
}

impl PadicInt {
    pub fn new(ell: u64, precision: u32, residue: BigUint) -> Result<Self> {
        require_odd_prime(ell)?;
        if precision == 0 {
            return Err(Error::PrecisionShortfall {
                required: 1,
                available: 0,
            });
        }
        let modulus = ell_pow(ell, precision);
        Ok(PadicInt {
            ell,
            precision,
            residue: residue % modulus,
        })
    }

    pub fn from_bigint(ell: u64, precision: u32, value: &BigInt) -> Result<Self> {
        require_odd_prime(ell)?;
        let modulus = BigInt::from(ell_pow(ell, precision));
        let r = value.mod_floor(&modulus);
        Self::new(ell, precision, r.to_biguint().expect("nonnegative"))
    }

    pub fn zero(ell: u64, precision: u32) -> Result<Self> {
        Self::new(ell, precision, BigUint::zero())
    }

    pub fn one(ell: u64, precision: u32) -> Result<Self> {
        Self::new(ell, precision, BigUint::one())
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn residue(&self) -> &BigUint {
        &self.residue
    }

    pub fn modulus(&self) -> BigUint {
        ell_pow(self.ell, self.precision)
    }

    pub fn is_unit(&self) -> bool {
        !(&self.residue % self.ell).is_zero()
    }

    /// Residue is 0 mod ℓ^m. The true value may still be nonzero with
    /// valuation ≥ m; only [`PadicVal`] distinguishes exact zero.
    pub fn is_zero_residue(&self) -> bool {
        self.residue.is_zero()
    }

    /// ℓ-adic valuation of the residue, capped at the precision.
    pub fn valuation(&self) -> u32 {
        if self.residue.is_zero() {
            return self.precision;
        }
        let l = BigUint::from(self.ell);
        let mut v = 0;
        let mut r = self.residue.clone();
        while (&r % &l).is_zero() {
            r /= &l;
            v += 1;
        }
        v
    }

    pub fn truncate(&self, precision: u32) -> Result<PadicInt> {
        if precision > self.precision {
            return Err(Error::PrecisionShortfall {
                required: precision,
                available: self.precision,
            });
        }
        PadicInt::new(self.ell, precision, self.residue.clone())
    }

    pub fn inv(&self) -> Result<PadicInt> {
        if !self.is_unit() {
            return Err(Error::NotAUnit(self.residue.to_string()));
        }
        let r = inv_mod(&self.residue, &self.modulus())?;
        PadicInt::new(self.ell, self.precision, r)
    }

    pub fn pow(&self, e: &BigUint) -> PadicInt {
        let r = self.residue.modpow(e, &self.modulus());
        PadicInt {
            ell: self.ell,
            precision: self.precision,
            residue: r,
        }
    }

    fn align(&self, other: &PadicInt) -> (PadicInt, PadicInt) {
        assert_eq!(
            self.ell, other.ell,
            "mixed ell-adic arithmetic: {} vs {}",
            self.ell, other.ell
        );
        let m = core::cmp::min(self.precision, other.precision);
        (
            self.truncate(m).expect("min precision"),
            other.truncate(m).expect("min precision"),
        )
    }
}

impl core::ops::Add for &PadicInt {
    type Output = PadicInt;
    fn add(self, rhs: &PadicInt) -> PadicInt {
        let (a, b) = self.align(rhs);
        let modulus = a.modulus();
        let r = (a.residue + b.residue) % modulus;
        PadicInt {
            ell: a.ell,
            precision: a.precision,
            residue: r,
        }
    }
}

impl core::ops::Sub for &PadicInt {
    type Output = PadicInt;
    fn sub(self, rhs: &PadicInt) -> PadicInt {
        let (a, b) = self.align(rhs);
        let m = a.modulus();
        let r = (m.clone() + a.residue - b.residue) % m;
        PadicInt {
            ell: a.ell,
            precision: a.precision,
            residue: r,
        }
    }
}

impl core::ops::Mul for &PadicInt {
    type Output = PadicInt;
    fn mul(self, rhs: &PadicInt) -> PadicInt {
        let (a, b) = self.align(rhs);
        let modulus = a.modulus();
        let r = (a.residue * b.residue) % modulus;
        PadicInt {
            ell: a.ell,
            precision: a.precision,
            residue: r,
        }
    }
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self.residue, self.ell, self.precision)
    }
}

impl fmt::Debug for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An ℓ-adic valuation: finite or +∞ (the value 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

/// The ℓ-adic valuation of a rational number; negative for denominators,
/// +∞ for zero.
pub fn padic_val(x: &BigRational, ell: u64) -> Result<Valuation> {
    require_odd_prime(ell)?;
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let l = BigInt::from(ell);
    let count = |mut n: BigInt| -> i64 {
        let mut v = 0;
        n = n.abs();
        while (&n % &l).is_zero() {
            n /= &l;
            v += 1;
        }
        v
    };
    Ok(Valuation::Finite(
        count(x.numer().clone()) - count(x.denom().clone()),
    ))
}

/// A value together with a valuation certificate, the only gate through
/// which division by ℓ is allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicVal {
    value: Option<PadicInt>,
    valuation: Valuation,
}

impl PadicVal {
    /// Exactly zero (valuation +∞).
    pub fn exact_zero() -> Self {
        PadicVal {
            value: None,
            valuation: Valuation::Infinite,
        }
    }

    /// Certify the valuation of a finite value from its residue. A zero
    /// residue certifies only "≥ precision".
    pub fn from_padic(x: PadicInt) -> Self {
        let v = x.valuation();
        PadicVal {
            valuation: Valuation::Finite(v as i64),
            value: Some(x),
        }
    }

    pub fn valuation(&self) -> Valuation {
        self.valuation
    }

    pub fn value(&self) -> Option<&PadicInt> {
        self.value.as_ref()
    }

    /// Divide by ℓ^k, exactly. Requires the certificate `valuation ≥ k`;
    /// the result loses k digits of precision.
    pub fn div_exact_ell(&self, k: u32) -> Result<PadicVal> {
        match (&self.value, self.valuation) {
            (None, _) => Ok(PadicVal::exact_zero()),
            (Some(x), Valuation::Finite(v)) => {
                if v < k as i64 {
                    return Err(Error::PrecisionShortfall {
                        required: k,
                        available: v.max(0) as u32,
                    });
                }
                if x.precision() <= k {
                    return Err(Error::PrecisionShortfall {
                        required: k + 1,
                        available: x.precision(),
                    });
                }
                let q = &x.residue / ell_pow(x.ell, k);
                let out = PadicInt::new(x.ell, x.precision - k, q)?;
                Ok(PadicVal::from_padic(out))
            }
            (Some(_), Valuation::Infinite) => Ok(PadicVal::exact_zero()),
        }
    }
}

/// Smallest index from which all series terms `t^k/k` (v(t) ≥ 1) vanish
/// mod ℓ^m, plus the worst-case denominator valuation over the used terms.
fn series_cutoff(ell: u64, m: u32) -> (u64, u32) {
    let mut k = 1u64;
    loop {
        let drop = k.ilog(ell) as u64;
        if k >= m as u64 + drop {
            return (k, k.ilog(ell));
        }
        k += 1;
    }
}

fn trailing_ell(mut n: u64, ell: u64) -> u32 {
    let mut v = 0;
    while n % ell == 0 {
        n /= ell;
        v += 1;
    }
    v
}

/// Iwasawa logarithm of an ℓ-adic unit, exact mod ℓ^m.
///
/// Uses `Log(u) = Log(u^{ℓ−1})/(ℓ−1)`, which kills the Teichmüller part,
/// and the series `log(1+t) = Σ (−1)^{k+1} t^k/k` at padded working
/// precision. The argument must be a unit known at precision ≥ m.
pub fn iwasawa_log(u: &PadicInt, m: u32) -> Result<PadicInt> {
    if !u.is_unit() {
        return Err(Error::NotAUnit(
            "iwasawa_log needs a unit; strip the ell-power first".to_string(),
        ));
    }
    if u.precision() < m {
        return Err(Error::PrecisionShortfall {
            required: m,
            available: u.precision(),
        });
    }
    let ell = u.ell();
    let (k_max, pad) = series_cutoff(ell, m);
    let work = m + pad;
    let modulus = ell_pow(ell, work);
    // t = u^{ℓ−1} − 1 has valuation ≥ 1
    let t = {
        let p = u.residue.modpow(&BigUint::from(ell - 1), &modulus);
        (&modulus + p - BigUint::one()) % &modulus
    };
    debug_assert!((&t % ell).is_zero());

    let mut sum = BigUint::zero();
    let mut tk = BigUint::one();
    for k in 1..=k_max {
        tk = (&tk * &t) % &modulus;
        if tk.is_zero() {
            break;
        }
        let j = trailing_ell(k, ell);
        let unit_part = k / ell.pow(j);
        // exact division of the residue by ℓ^j, then invert the unit part
        let divided = &tk / ell_pow(ell, j);
        let term = (divided * inv_mod(&BigUint::from(unit_part), &modulus)?) % &modulus;
        if k % 2 == 1 {
            sum = (sum + term) % &modulus;
        } else {
            sum = (&modulus + sum - term) % &modulus;
        }
    }
    let result = (sum * inv_mod(&BigUint::from(ell - 1), &modulus)?) % &modulus;
    PadicInt::new(ell, m, result % ell_pow(ell, m))
}

/// Iwasawa logarithm of a nonzero rational, with `Log(ℓ) := 0`: the power
/// of ℓ is stripped exactly before taking the unit logarithm.
pub fn iwasawa_log_rational(x: &BigRational, ell: u64, m: u32) -> Result<PadicInt> {
    require_odd_prime(ell)?;
    if x.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let l = BigInt::from(ell);
    let strip = |mut n: BigInt| -> BigInt {
        while (&n % &l).is_zero() {
            n /= &l;
        }
        n
    };
    let a = strip(x.numer().clone());
    let b = strip(x.denom().clone());
    let modulus = ell_pow(ell, m);
    let a_res = a
        .mod_floor(&BigInt::from(modulus.clone()))
        .to_biguint()
        .expect("nonnegative");
    let b_res = b
        .mod_floor(&BigInt::from(modulus.clone()))
        .to_biguint()
        .expect("nonnegative");
    let unit = (a_res * inv_mod(&b_res, &modulus)?) % &modulus;
    let u = PadicInt::new(ell, m, unit)?;
    iwasawa_log(&u, m)
}

/// Fermat quotient `((q^{ℓ−1} − 1)/ℓ) mod ℓ` for q prime to ℓ.
///
/// Zero exactly when `Log(q)` has valuation ≥ 2.
pub fn fermat_quotient(q: &BigInt, ell: u64) -> Result<u64> {
    require_odd_prime(ell)?;
    let l = BigInt::from(ell);
    if (q % &l).is_zero() {
        return Err(Error::NotAUnit(q.to_string()));
    }
    let ell2 = ell_pow(ell, 2);
    let q_res = q
        .mod_floor(&BigInt::from(ell2.clone()))
        .to_biguint()
        .expect("nonnegative");
    let p = q_res.modpow(&BigUint::from(ell - 1), &ell2);
    let num = (&ell2 + p - BigUint::one()) % &ell2;
    debug_assert!((&num % ell).is_zero());
    let fq = (num / ell) % ell;
    Ok(fq.to_u64().expect("reduced mod ell"))
}

/// Square root modulo an odd prime (Tonelli–Shanks); `None` when `a` is a
/// non-residue or divisible by ℓ.
pub fn sqrt_mod_prime(a: u64, ell: u64) -> Option<u64> {
    let a = a % ell;
    if a == 0 {
        return None;
    }
    fn pow(b: u64, mut e: u64, m: u64) -> u64 {
        let mut acc: u128 = 1;
        let mut bb = b as u128 % m as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * bb % m as u128;
            }
            bb = bb * bb % m as u128;
            e >>= 1;
        }
        acc as u64
    }
    if pow(a, (ell - 1) / 2, ell) != 1 {
        return None;
    }
    if ell % 4 == 3 {
        return Some(pow(a, (ell + 1) / 4, ell));
    }
    // Tonelli–Shanks
    let mut q = ell - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2u64;
    while pow(z, (ell - 1) / 2, ell) == 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow(z, q, ell);
    let mut t = pow(a, q, ell);
    let mut r = pow(a, (q + 1) / 2, ell);
    while t != 1 {
        let mut i = 0u32;
        let mut tt = t;
        while tt != 1 {
            tt = (tt as u128 * tt as u128 % ell as u128) as u64;
            i += 1;
        }
        let b = pow(c, 1u64 << (m - i - 1), ell);
        m = i;
        c = (b as u128 * b as u128 % ell as u128) as u64;
        t = (t as u128 * c as u128 % ell as u128) as u64;
        r = (r as u128 * b as u128 % ell as u128) as u64;
    }
    Some(r)
}

/// Hensel lift of a square root of `a` to precision ℓ^m. Requires `a`
/// prime to ℓ and a quadratic residue; the other root is the negation.
pub fn hensel_sqrt(a: &BigInt, ell: u64, m: u32) -> Result<PadicInt> {
    require_odd_prime(ell)?;
    let l = BigInt::from(ell);
    if (a % &l).is_zero() {
        return Err(Error::NonResidue {
            a: a.to_string(),
            ell,
        });
    }
    let a0 = a
        .mod_floor(&l)
        .to_u64()
        .expect("residue mod a u64 prime fits u64");
    let r0 = sqrt_mod_prime(a0, ell).ok_or(Error::NonResidue {
        a: a.to_string(),
        ell,
    })?;

    // Newton iteration r ← r − (r² − a)/(2r), doubling the precision.
    let mut prec = 1u32;
    let mut r = BigUint::from(r0);
    while prec < m {
        prec = core::cmp::min(prec.saturating_mul(2), m);
        let modulus = ell_pow(ell, prec);
        let a_res = a
            .mod_floor(&BigInt::from(modulus.clone()))
            .to_biguint()
            .expect("nonnegative");
        let r_sq = (&r * &r) % &modulus;
        let diff = (&modulus + r_sq - a_res) % &modulus;
        let two_r_inv = inv_mod(&((BigUint::from(2u32) * &r) % &modulus), &modulus)?;
        r = (&modulus + &r - (diff * two_r_inv) % &modulus) % &modulus;
    }
    let out = PadicInt::new(ell, m, r)?;
    debug_assert_eq!(
        (&out * &out).residue(),
        &a.mod_floor(&BigInt::from(out.modulus()))
            .to_biguint()
            .unwrap()
    );
    Ok(out)
}

/// Discrete logarithm in the principal units: the exponent e mod ℓ^{m−1}
/// with `(1+ℓ)^e ≡ u (mod ℓ^m)`, computed as `Log(u)/Log(1+ℓ)` at matched
/// precision.
pub fn principal_unit_dlog(u: &PadicInt) -> Result<PadicInt> {
    let ell = u.ell();
    let m = u.precision();
    if m < 2 {
        return Err(Error::PrecisionShortfall {
            required: 2,
            available: m,
        });
    }
    if u.residue() % ell != BigUint::one() {
        return Err(Error::NotAUnit(alloc::format!(
            "{} is not a principal unit mod {}",
            u.residue(),
            ell
        )));
    }
    let lu = iwasawa_log(u, m)?;
    let base = PadicInt::new(ell, m, BigUint::one() + BigUint::from(ell))?;
    let lb = iwasawa_log(&base, m)?;
    // both logs have valuation ≥ 1; Log(1+ℓ) has valuation exactly 1
    let lu_div = PadicVal::from_padic(lu).div_exact_ell(1)?;
    let lb_div = PadicVal::from_padic(lb).div_exact_ell(1)?;
    let lb_unit = lb_div.value().expect("Log(1+ell)/ell is a unit");
    let lu_val = lu_div.value().expect("finite");
    Ok(lu_val * &lb_unit.inv()?)
}

/// Discrete logarithm of the principal-unit part of an arbitrary unit: the
/// Teichmüller component is killed by raising to the (ℓ−1)-st power.
/// Result mod ℓ^{m−1}.
pub fn unit_ellpart_dlog(x: &PadicInt) -> Result<PadicInt> {
    if !x.is_unit() {
        return Err(Error::NotAUnit(x.residue().to_string()));
    }
    let ell = x.ell();
    let m = x.precision();
    let p = x.pow(&BigUint::from(ell - 1));
    let d = principal_unit_dlog(&p)?;
    let inv = inv_mod(&BigUint::from(ell - 1), &ell_pow(ell, m - 1))?;
    let scale = PadicInt::new(ell, m - 1, inv)?;
    Ok(&d * &scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn valuations() {
        assert_eq!(padic_val(&rat(45, 1), 3).unwrap(), Valuation::Finite(2));
        assert_eq!(padic_val(&rat(1, 3), 3).unwrap(), Valuation::Finite(-1));
        assert_eq!(padic_val(&rat(7, 1), 3).unwrap(), Valuation::Finite(0));
        assert_eq!(padic_val(&rat(0, 1), 3).unwrap(), Valuation::Infinite);
        assert!(padic_val(&rat(1, 1), 2).is_err());
    }

    #[test]
    fn even_prime_rejected_everywhere() {
        assert!(PadicInt::new(2, 4, BigUint::one()).is_err());
        assert!(hensel_sqrt(&BigInt::from(7), 2, 3).is_err());
        assert!(fermat_quotient(&BigInt::from(3), 2).is_err());
        assert!(PadicInt::new(9, 4, BigUint::one()).is_err());
    }

    #[test]
    #[should_panic(expected = "mixed ell-adic arithmetic")]
    fn mixed_primes_panic() {
        let a = PadicInt::new(3, 2, BigUint::one()).unwrap();
        let b = PadicInt::new(5, 2, BigUint::one()).unwrap();
        let _ = &a + &b;
    }

    #[test]
    fn mixed_precision_truncates() {
        let a = PadicInt::new(5, 4, BigUint::from(7u32)).unwrap();
        let b = PadicInt::new(5, 2, BigUint::from(24u32)).unwrap();
        let c = &a * &b;
        assert_eq!(c.precision(), 2);
        assert_eq!(c.residue(), &BigUint::from((7u32 * 24) % 25));
    }

    #[test]
    fn log_kills_torsion_and_ell() {
        // Log(−1) = 0
        let x = iwasawa_log_rational(&rat(-1, 1), 5, 6).unwrap();
        assert!(x.is_zero_residue());
        // Log(ℓ) = 0 by the extension
        let x = iwasawa_log_rational(&rat(5, 1), 5, 6).unwrap();
        assert!(x.is_zero_residue());
        // Log(ℓ^3 · (−1)) = 0
        let x = iwasawa_log_rational(&rat(-125, 1), 5, 6).unwrap();
        assert!(x.is_zero_residue());
    }

    #[test]
    fn log_of_one_plus_ell_has_valuation_one() {
        let x = iwasawa_log_rational(&rat(6, 1), 5, 4).unwrap();
        assert_eq!(x.valuation(), 1);
    }

    #[test]
    fn log_is_a_homomorphism() {
        let ell = 7u64;
        let m = 8u32;
        for (a, b) in [(3i64, 5i64), (10, 31), (2, 2), (-3, 11), (45, 46)] {
            let la = iwasawa_log_rational(&rat(a, 1), ell, m).unwrap();
            let lb = iwasawa_log_rational(&rat(b, 1), ell, m).unwrap();
            let lab = iwasawa_log_rational(&rat(a * b, 1), ell, m).unwrap();
            assert_eq!(&la + &lb, lab, "Log({a}·{b})");
        }
    }

    #[test]
    fn log_precision_monotone() {
        let big = iwasawa_log_rational(&rat(2, 1), 5, 12).unwrap();
        let small = iwasawa_log_rational(&rat(2, 1), 5, 5).unwrap();
        assert_eq!(big.truncate(5).unwrap(), small);
    }

    #[test]
    fn fermat_quotient_pins() {
        // Wieferich pair
        assert_eq!(fermat_quotient(&BigInt::from(2), 1093).unwrap(), 0);
        // (2^4 − 1)/5 = 3
        assert_eq!(fermat_quotient(&BigInt::from(2), 5).unwrap(), 3);
        // q with q^{ℓ−1} ≡ 1 mod ℓ²: 26 = 1 + 5²
        assert_eq!(fermat_quotient(&BigInt::from(26), 5).unwrap(), 0);
        assert!(fermat_quotient(&BigInt::from(10), 5).is_err());
    }

    #[test]
    fn fermat_quotient_matches_log() {
        // Log(q^{ℓ−1}) ≡ ℓ · FermatQuotient(q, ℓ) mod ℓ²
        for (q, ell) in [(2i64, 5u64), (3, 7), (10, 13), (7, 3), (2, 1093)] {
            let fq = fermat_quotient(&BigInt::from(q), ell).unwrap();
            let qp = BigRational::from_i64(q).unwrap().pow((ell - 1) as i32);
            let lq = iwasawa_log_rational(&qp, ell, 2).unwrap();
            let want = PadicInt::new(ell, 2, BigUint::from(ell) * fq).unwrap();
            assert_eq!(lq, want, "q={q}, ell={ell}");
        }
    }

    #[test]
    fn hensel_sqrt_pins() {
        // r² ≡ −1 mod 125: r ∈ {57, 68}
        let r = hensel_sqrt(&BigInt::from(-1), 5, 3).unwrap();
        let v = r.residue().to_u64().unwrap();
        assert!(v == 57 || v == 68, "got {v}");

        // exact square
        let r = hensel_sqrt(&BigInt::from(4), 7, 5).unwrap();
        let v = r.residue().to_u64().unwrap();
        assert!(v == 2 || v == 7u64.pow(5) - 2);

        // lift of 2 mod 49
        let r = hensel_sqrt(&BigInt::from(2), 7, 2).unwrap();
        let sq = (r.residue() * r.residue()) % BigUint::from(49u32);
        assert_eq!(sq, BigUint::from(2u32));

        assert!(hensel_sqrt(&BigInt::from(3), 5, 3).is_err()); // non-residue
        assert!(hensel_sqrt(&BigInt::from(25), 5, 3).is_err()); // divisible
    }

    #[test]
    fn hensel_sqrt_roundtrip_small_sweep() {
        for ell in [3u64, 5, 7, 11, 13, 17] {
            for a in 2..40i64 {
                if a % ell as i64 == 0 {
                    continue;
                }
                if let Ok(r) = hensel_sqrt(&BigInt::from(a), ell, 9) {
                    let m = ell_pow(ell, 9);
                    let sq = (r.residue() * r.residue()) % &m;
                    let want = BigInt::from(a)
                        .mod_floor(&BigInt::from(m))
                        .to_biguint()
                        .unwrap();
                    assert_eq!(sq, want, "a={a}, ell={ell}");
                }
            }
        }
    }

    #[test]
    fn dlog_pins() {
        let ell = 7u64;
        let m = 6u32;
        let base = PadicInt::new(ell, m, BigUint::from(8u32)).unwrap();
        assert_eq!(
            principal_unit_dlog(&base).unwrap().residue(),
            &BigUint::one()
        );
        let one = PadicInt::one(ell, m).unwrap();
        assert!(principal_unit_dlog(&one).unwrap().is_zero_residue());

        // round-trip (1+ℓ)^7
        let p = base.pow(&BigUint::from(7u32));
        assert_eq!(
            principal_unit_dlog(&p).unwrap().residue(),
            &BigUint::from(7u32)
        );

        // non-principal unit rejected
        let u = PadicInt::new(ell, m, BigUint::from(3u32)).unwrap();
        assert!(principal_unit_dlog(&u).is_err());
    }

    #[test]
    fn dlog_is_additive() {
        let ell = 5u64;
        let m = 8u32;
        let base = PadicInt::new(ell, m, BigUint::from(6u32)).unwrap();
        let u = base.pow(&BigUint::from(123u32));
        let v = base.pow(&BigUint::from(456u32));
        let du = principal_unit_dlog(&u).unwrap();
        let dv = principal_unit_dlog(&v).unwrap();
        let duv = principal_unit_dlog(&(&u * &v)).unwrap();
        assert_eq!(&du + &dv, duv);
    }

    #[test]
    fn ellpart_dlog_strips_teichmueller() {
        let ell = 5u64;
        let m = 6u32;
        let x = PadicInt::new(ell, m, BigUint::from(2u32)).unwrap();
        let y = PadicInt::new(ell, m, BigUint::from(3u32)).unwrap();
        let dx = unit_ellpart_dlog(&x).unwrap();
        let dy = unit_ellpart_dlog(&y).unwrap();
        let dxy = unit_ellpart_dlog(&(&x * &y)).unwrap();
        assert_eq!(&dx + &dy, dxy);
    }

    #[test]
    fn padic_val_division_gate() {
        let x = PadicInt::new(5, 4, BigUint::from(50u32)).unwrap();
        let v = PadicVal::from_padic(x);
        assert_eq!(v.valuation(), Valuation::Finite(2));
        let d = v.div_exact_ell(2).unwrap();
        assert_eq!(d.value().unwrap().residue(), &BigUint::from(2u32));
        assert_eq!(d.value().unwrap().precision(), 2);
        assert!(v.div_exact_ell(3).is_err());
        assert_eq!(
            PadicVal::exact_zero().div_exact_ell(10).unwrap(),
            PadicVal::exact_zero()
        );
    }
}
