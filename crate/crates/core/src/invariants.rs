//! Derived invariants: the ℓ-rationality test by ray-class stabilization,
//! Gras logarithms over Q with their Fermat-quotient criterion, and the
//! Chevalley ambiguous class number formula.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use crate::abelian::FinAbGroup;
use crate::error::{Error, Result};
use crate::padic::{iwasawa_log_rational, PadicInt, PadicVal};
use crate::quadfield::{is_totally_ell_adic, ray_class_group_ellpart, FieldDesc};

/// Outcome of the ℓ-rationality test.
///
/// `rank` and `torsion` are meaningful only when `stabilized`; the field
/// is ℓ-rational exactly when the stable torsion vanishes (the free rank
/// is then c_K + 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalityReport {
    pub rank: u32,
    pub torsion: FinAbGroup,
    pub is_rational: bool,
    /// (first, last) modulus exponent of the stabilization window
    pub window: (u32, u32),
    pub stabilized: bool,
}

/// Decide ℓ-rationality by watching the ℓ-part ray class groups mod ℓ^m
/// grow: across three consecutive levels exactly c_K+1 invariant-factor
/// exponents must grow by one per step while the rest stay constant; the
/// constant part is the torsion of the Galois group of the maximal
/// ℓ-ramified abelian pro-ℓ extension.
pub fn ell_rationality(delta: i64, ell: u64, m_max: u32) -> Result<RationalityReport> {
    if !is_totally_ell_adic(delta, ell)? {
        return Err(Error::NotSplit { delta, ell });
    }
    let field = FieldDesc::new(delta)?;
    let r = field.complex_places() + 1;
    if m_max < 3 {
        return Err(Error::PrecisionShortfall {
            required: 3,
            available: m_max,
        });
    }
    let mut exps: Vec<Vec<u32>> = Vec::new();
    for m in 1..=m_max {
        let ray = ray_class_group_ellpart(delta, ell, m)?;
        let mut e = ray
            .group
            .ell_exponents(ell)
            .expect("ray group is an ell-group");
        e.sort_unstable_by(|a, b| b.cmp(a));
        exps.push(e);
        // check the newest window (m−2, m−1, m)
        if m >= 3 {
            let w = (m - 3) as usize;
            if let Some(torsion_exps) = growth_pattern(&exps[w], &exps[w + 1], &exps[w + 2], r) {
                let torsion = torsion_group(ell, &torsion_exps)?;
                let is_rational = torsion.is_trivial();
                return Ok(RationalityReport {
                    rank: r,
                    torsion,
                    is_rational,
                    window: (m - 2, m),
                    stabilized: true,
                });
            }
        }
    }
    Ok(RationalityReport {
        rank: 0,
        torsion: FinAbGroup::trivial(),
        is_rational: false,
        window: (1, m_max),
        stabilized: false,
    })
}

/// Match "exactly r exponents grow by one per step, the rest constant"
/// across a three-level window of descending exponent vectors. Returns
/// the constant part on success.
pub(crate) fn growth_pattern(e0: &[u32], e1: &[u32], e2: &[u32], r: u32) -> Option<Vec<u32>> {
    let len = e0.len().max(e1.len()).max(e2.len());
    let pad = |v: &[u32]| -> Vec<u32> {
        let mut p = v.to_vec();
        p.resize(len, 0);
        p
    };
    let (e0, e1, e2) = (pad(e0), pad(e1), pad(e2));
    let mut grow = Vec::new();
    for i in 0..len {
        if e1[i] == e0[i] + 1 {
            grow.push(i);
        } else if e1[i] != e0[i] {
            return None;
        }
    }
    if grow.len() != r as usize {
        return None;
    }
    for i in 0..len {
        let expect = if grow.contains(&i) { e1[i] + 1 } else { e1[i] };
        if e2[i] != expect {
            return None;
        }
    }
    let torsion: Vec<u32> = (0..len)
        .filter(|i| !grow.contains(i))
        .map(|i| e2[i])
        .filter(|&e| e > 0)
        .collect();
    Some(torsion)
}

fn torsion_group(ell: u64, exps: &[u32]) -> Result<FinAbGroup> {
    let orders: Vec<BigUint> = exps.iter().map(|&e| BigUint::from(ell).pow(e)).collect();
    FinAbGroup::from_orders(&orders)
}

/// Gras logarithm of a rational prime q over Q: `Log(q)/ℓ mod ℓ^m`.
/// A unit exactly when the Fermat quotient of q is nonzero.
pub fn gras_log_q(q: u64, ell: u64, m: u32) -> Result<PadicInt> {
    if q == ell || !crate::abelian::is_prime_u64(q) {
        return Err(Error::Malformed(alloc::format!(
            "gras logarithm over Q needs a prime different from ell, got {q}"
        )));
    }
    let lq = iwasawa_log_rational(&BigRational::from_integer(BigInt::from(q)), ell, m + 1)?;
    let divided = PadicVal::from_padic(lq).div_exact_ell(1)?;
    match divided.value() {
        Some(v) => v.truncate(m),
        None => PadicInt::zero(ell, m),
    }
}

/// Over Q the Galois group of the compositum of Z_ℓ-extensions has rank 1,
/// so an ℓ-extension with the given tamely ramified primes is primitively
/// ramified exactly when some prime has a unit Gras logarithm. The empty
/// list cannot generate anything.
pub fn is_primitively_ramified_over_q(
    ramified_tame_primes: &[u64],
    ell: u64,
    m: u32,
) -> Result<bool> {
    crate::padic::require_odd_prime(ell)?;
    for (i, &p) in ramified_tame_primes.iter().enumerate() {
        if ramified_tame_primes[..i].contains(&p) {
            return Err(Error::Malformed("duplicate ramified prime".into()));
        }
    }
    for &q in ramified_tame_primes {
        if gras_log_q(q, ell, m)?.is_unit() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Inputs of the ambiguous class number formula for a cyclic extension of
/// degree n: class number of the base, ramification indices, and the unit
/// norm index (E : E ∩ N).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChevalleyInput {
    pub class_number: u64,
    pub degree: u64,
    pub ramification_indices: Vec<u64>,
    pub unit_norm_index: u64,
}

impl ChevalleyInput {
    pub fn unramified(class_number: u64, degree: u64) -> Self {
        ChevalleyInput {
            class_number,
            degree,
            ramification_indices: Vec::new(),
            unit_norm_index: 1,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.class_number == 0 || self.degree == 0 || self.unit_norm_index == 0 {
            return Err(Error::Malformed("Chevalley inputs must be positive".into()));
        }
        if self.ramification_indices.iter().any(|&e| e == 0) {
            return Err(Error::Malformed("ramification index 0".into()));
        }
        let prod: BigUint = self
            .ramification_indices
            .iter()
            .map(|&e| BigUint::from(e))
            .product();
        if !(prod % BigUint::from(self.unit_norm_index)).is_zero() {
            return Err(Error::Malformed(
                "unit norm index must divide the product of ramification indices".into(),
            ));
        }
        Ok(())
    }
}

/// Number of ambiguous classes `h · ∏ e_v / (n · [E : E∩N])`. The formula
/// must produce a positive integer on genuine data; a fractional result
/// flags inconsistent input.
pub fn chevalley_ambiguous(input: &ChevalleyInput) -> Result<BigUint> {
    input.validate()?;
    let mut num = BigUint::from(input.class_number);
    for &e in &input.ramification_indices {
        num *= BigUint::from(e);
    }
    let den = BigUint::from(input.degree) * BigUint::from(input.unit_norm_index);
    if !(&num % &den).is_zero() {
        return Err(Error::Inconsistency(alloc::format!(
            "ambiguous class number {num}/{den} is not an integer"
        )));
    }
    Ok(num / den)
}
