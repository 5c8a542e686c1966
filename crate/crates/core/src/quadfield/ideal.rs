//! Fractional ideals of a quadratic order in Hermite normal form, with
//! multiplier-tracked reduction.
//!
//! A fractional ideal is a positive rational scalar times a primitive
//! integral ideal `[a, b+ω]` (a > 0, 0 ≤ b < a, a | N(b+ω)). Reduction
//! walks multiply the ideal by explicit field elements, so principality
//! tests come with a generator: for Δ < 0 the walk terminates at the
//! unique reduced representative, for Δ > 0 it enters the cycle of reduced
//! ideals of the class and the unit ideal is found there exactly when the
//! class is (widely) trivial.

use alloc::collections::BTreeSet;
use alloc::string::ToString;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{omega_norm, QuadElem};
use crate::error::{Error, Result};

const WALK_CAP: usize = 2_000_000;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct QuadIdeal {
    delta: i64,
    scalar: BigRational,
    a: BigInt,
    b: BigInt,
}

impl QuadIdeal {
    /// Primitive integral ideal `[a, b+ω]`.
    pub fn new_primitive(delta: i64, a: BigInt, b: BigInt) -> Result<Self> {
        if !a.is_positive() {
            return Err(Error::Malformed(
                "ideal leading coefficient must be > 0".into(),
            ));
        }
        let b = b.mod_floor(&a);
        let n = norm_b_omega(delta, &b);
        if !n.mod_floor(&a).is_zero() {
            return Err(Error::Malformed(alloc::format!(
                "[{a}, {b}+w] is not an ideal for discriminant {delta}"
            )));
        }
        Ok(QuadIdeal {
            delta,
            scalar: BigRational::one(),
            a,
            b,
        })
    }

    pub fn unit(delta: i64) -> Self {
        QuadIdeal {
            delta,
            scalar: BigRational::one(),
            a: BigInt::one(),
            b: BigInt::zero(),
        }
    }

    /// The prime ideal above an odd prime q that splits or ramifies.
    pub fn prime_above(delta: i64, q: u64) -> Result<Self> {
        if q == 2 || crate::quadfield::kronecker_i64(delta, q as i64) == -1 {
            return Err(Error::NotSplit { delta, ell: q });
        }
        let r = if delta.rem_euclid(q as i64) == 0 {
            0
        } else {
            crate::padic::sqrt_mod_prime(delta.rem_euclid(q as i64) as u64, q)
                .ok_or(Error::NotSplit { delta, ell: q })?
        };
        // ω ≡ (Δ + r)/2 at this place; the ideal is (q, ω − that)
        let inv2 = (q + 1) / 2;
        let w = (BigInt::from(delta) + BigInt::from(r)) * BigInt::from(inv2);
        let b = (-w).mod_floor(&BigInt::from(q));
        QuadIdeal::new_primitive(delta, BigInt::from(q), b)
    }

    /// The principal ideal generated by a nonzero element.
    pub fn from_element(x: &QuadElem) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::ZeroArgument);
        }
        let delta = x.delta();
        let (u, v, d) = x.to_integral_triplet();
        // lattice spanned by (u+vω) and (u+vω)·ω in coordinates (1, ω)
        let nw = omega_norm(delta);
        let rows = [
            (u.clone(), v.clone()),
            (-(&v * &nw), &u + &v * BigInt::from(delta)),
        ];
        let (n, x0, g) = hnf_two_col(&rows)?;
        let a = &n / &g;
        let prim = QuadIdeal::new_primitive(delta, a.clone(), (&x0 / &g).mod_floor(&a))?;
        Ok(prim.scaled(&(BigRational::from_integer(g) / BigRational::from_integer(d))))
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    pub fn scalar(&self) -> &BigRational {
        &self.scalar
    }

    /// (a, b) of the primitive part `[a, b+ω]`.
    pub fn primitive_ab(&self) -> (&BigInt, &BigInt) {
        (&self.a, &self.b)
    }

    pub fn is_integral(&self) -> bool {
        self.scalar.is_integer()
    }

    pub fn norm(&self) -> BigRational {
        &self.scalar * &self.scalar * BigRational::from_integer(self.a.clone())
    }

    fn scaled(&self, c: &BigRational) -> QuadIdeal {
        QuadIdeal {
            delta: self.delta,
            scalar: (&self.scalar * c).abs(),
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    pub fn conj(&self) -> QuadIdeal {
        let b = (-(&self.b + BigInt::from(self.delta))).mod_floor(&self.a);
        QuadIdeal {
            delta: self.delta,
            scalar: self.scalar.clone(),
            a: self.a.clone(),
            b,
        }
    }

    pub fn inv(&self) -> QuadIdeal {
        // primitive part satisfies P·σ(P) = (a)
        let c = self.conj();
        let s = BigRational::one() / (&self.scalar * BigRational::from_integer(self.a.clone()));
        QuadIdeal {
            scalar: s.abs(),
            ..c
        }
    }

    pub fn mul(&self, other: &QuadIdeal) -> QuadIdeal {
        assert_eq!(self.delta, other.delta, "mixed fields");
        let delta = self.delta;
        let nw = omega_norm(delta);
        let (a1, b1) = (&self.a, &self.b);
        let (a2, b2) = (&other.a, &other.b);
        let rows = [
            (a1 * a2, BigInt::zero()),
            (a1 * b2, a1.clone()),
            (a2 * b1, a2.clone()),
            (b1 * b2 - &nw, b1 + b2 + BigInt::from(delta)),
        ];
        let (n, x0, g) = hnf_two_col(&rows).expect("ideal product lattice is full rank");
        debug_assert!(n.mod_floor(&g).is_zero() && x0.mod_floor(&g).is_zero());
        let a = &n / &g;
        let b = (&x0 / &g).mod_floor(&a);
        QuadIdeal {
            delta,
            scalar: (&self.scalar * &other.scalar * BigRational::from_integer(g)).abs(),
            a,
            b,
        }
    }

    pub fn mul_elem(&self, x: &QuadElem) -> Result<QuadIdeal> {
        Ok(self.mul(&QuadIdeal::from_element(x)?))
    }

    pub fn pow(&self, e: i64) -> QuadIdeal {
        if e < 0 {
            return self.pow(-e).inv();
        }
        let mut acc = QuadIdeal::unit(self.delta);
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// One reduction step: translate the associated form into the standard
    /// window, then flip through β = b+ω. Returns the new primitive ideal
    /// and the multiplier ψ with `new = ψ · old` (as lattices, up to ±1).
    fn rho_step(&self) -> (QuadIdeal, QuadElem) {
        let delta = self.delta;
        let d = BigInt::from(delta);
        let a = &self.a;
        let two_a = BigInt::from(2) * a;
        let b0 = BigInt::from(2) * &self.b + &d;
        let bt = if delta > 0 {
            let s = d.sqrt();
            let hi = if a > &s { a.clone() } else { s };
            &hi - (&hi - &b0).mod_floor(&two_a)
        } else {
            // minimal |B|: window (−a, a]
            let mut r = b0.mod_floor(&two_a);
            if r > *a {
                r -= &two_a;
            }
            r
        };
        let b_t: BigInt = (&bt - &d) / 2;
        let beta = QuadElem::new(
            delta,
            BigRational::from_integer(b_t.clone()),
            BigRational::one(),
        );
        let c = norm_b_omega(delta, &b_t) / a;
        debug_assert!(!c.is_zero());
        let new_a = c.abs();
        let new_b = (-(&b_t + &d)).mod_floor(&new_a);
        let psi = beta
            .conj()
            .scale(&(BigRational::one() / BigRational::from_integer(a.clone())));
        (
            QuadIdeal {
                delta,
                scalar: BigRational::one(),
                a: new_a,
                b: new_b,
            },
            psi,
        )
    }

    /// Imaginary only: is the associated (window-translated) form reduced?
    fn is_reduced_imag(&self) -> bool {
        debug_assert!(self.delta < 0);
        let d = BigInt::from(self.delta);
        let two_a = BigInt::from(2) * &self.a;
        let mut bt = (BigInt::from(2) * &self.b + &d).mod_floor(&two_a);
        if bt > self.a {
            bt -= &two_a;
        }
        let c = norm_b_omega(self.delta, &((&bt - &d) / 2)) / &self.a;
        if bt.abs() > self.a || self.a > c {
            return false;
        }
        if (bt.abs() == self.a || self.a == c) && bt.is_negative() {
            return false;
        }
        true
    }
}

fn norm_b_omega(delta: i64, b: &BigInt) -> BigInt {
    b * b + b * BigInt::from(delta) + omega_norm(delta)
}

/// Lower-triangular HNF of a rank-2 sublattice of Z ⊕ Zω spanned by the
/// given rows: basis [(n, 0), (x0, g)].
fn hnf_two_col(rows: &[(BigInt, BigInt)]) -> Result<(BigInt, BigInt, BigInt)> {
    let mut x0 = BigInt::zero();
    let mut g = BigInt::zero();
    for (x, y) in rows {
        if y.is_zero() {
            continue;
        }
        if g.is_zero() {
            x0 = x.clone();
            g = y.clone();
        } else {
            let e = g.extended_gcd(y);
            // e.gcd = e.x·g + e.y·y
            x0 = &e.x * &x0 + &e.y * x;
            g = e.gcd;
        }
    }
    if g.is_zero() {
        return Err(Error::Malformed("rank-deficient ideal lattice".into()));
    }
    if g.is_negative() {
        g = -g;
        x0 = -x0;
    }
    let mut n = BigInt::zero();
    for (x, y) in rows {
        debug_assert!((y % &g).is_zero());
        let rem = x - (y / &g) * &x0;
        n = n.gcd(&rem);
    }
    if n.is_zero() {
        return Err(Error::Malformed("rank-deficient ideal lattice".into()));
    }
    x0 = x0.mod_floor(&n);
    Ok((n, x0, g))
}

/// A generator of a principal fractional ideal: γ with (γ) = I exactly.
/// Non-principal input is detected (the reduction walk exhausts the cycle)
/// and rejected.
pub fn principal_generator(ideal: &QuadIdeal) -> Result<QuadElem> {
    let delta = ideal.delta;
    let prim = QuadIdeal {
        scalar: BigRational::one(),
        ..ideal.clone()
    };
    let gamma_prim = if delta < 0 {
        principal_generator_imag(&prim)?
    } else {
        principal_generator_real(&prim)?
    };
    Ok(gamma_prim.scale(&ideal.scalar))
}

fn principal_generator_imag(prim: &QuadIdeal) -> Result<QuadElem> {
    let mut cur = prim.clone();
    let mut mult = QuadElem::one(prim.delta);
    let mut steps = 0usize;
    while !cur.is_reduced_imag() {
        let (next, psi) = cur.rho_step();
        mult = mult.mul(&psi);
        cur = next;
        steps += 1;
        if steps > WALK_CAP {
            return Err(Error::ResourceLimit("imaginary reduction walk".into()));
        }
    }
    if !cur.a.is_one() {
        return Err(Error::NotPrincipal(alloc::format!(
            "reduced representative [{}, {}+w]",
            cur.a,
            cur.b
        )));
    }
    // cur = mult · prim = O, so prim = (mult⁻¹)
    mult.inverse().ok_or(Error::ZeroArgument)
}

fn principal_generator_real(prim: &QuadIdeal) -> Result<QuadElem> {
    let mut cur = prim.clone();
    let mut mult = QuadElem::one(prim.delta);
    let mut visited: BTreeSet<(BigInt, BigInt)> = BTreeSet::new();
    loop {
        if cur.a.is_one() {
            return mult.inverse().ok_or(Error::ZeroArgument);
        }
        if !visited.insert((cur.a.clone(), cur.b.clone())) {
            return Err(Error::NotPrincipal(
                "cycle exhausted without reaching the unit ideal".to_string(),
            ));
        }
        if visited.len() > WALK_CAP {
            return Err(Error::ResourceLimit("real reduction walk".into()));
        }
        let (next, psi) = cur.rho_step();
        mult = mult.mul(&psi);
        cur = next;
    }
}

/// Canonical key of the (wide) ideal class: for Δ < 0 the unique reduced
/// ideal, for Δ > 0 the least (a, b) on the cycle of reduced ideals.
pub fn canonical_class_key(ideal: &QuadIdeal) -> Result<(BigInt, BigInt)> {
    let delta = ideal.delta;
    let mut cur = QuadIdeal {
        scalar: BigRational::one(),
        ..ideal.clone()
    };
    if delta < 0 {
        let mut steps = 0usize;
        while !cur.is_reduced_imag() {
            cur = cur.rho_step().0;
            steps += 1;
            if steps > WALK_CAP {
                return Err(Error::ResourceLimit("imaginary reduction walk".into()));
            }
        }
        return Ok((cur.a, cur.b));
    }
    // walk into the terminal cycle, then take its minimum
    let mut visited: BTreeSet<(BigInt, BigInt)> = BTreeSet::new();
    loop {
        let key = (cur.a.clone(), cur.b.clone());
        if !visited.insert(key) {
            break;
        }
        if visited.len() > WALK_CAP {
            return Err(Error::ResourceLimit("real reduction walk".into()));
        }
        cur = cur.rho_step().0;
    }
    let mut best: Option<(BigInt, BigInt)> = None;
    let mut seen: BTreeSet<(BigInt, BigInt)> = BTreeSet::new();
    loop {
        let key = (cur.a.clone(), cur.b.clone());
        if !seen.insert(key.clone()) {
            break;
        }
        match &best {
            None => best = Some(key),
            Some(b) => {
                if key < *b {
                    best = Some(key);
                }
            }
        }
        cur = cur.rho_step().0;
    }
    Ok(best.expect("cycle nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::QuadElem;

    fn ideal_of(delta: i64, a: i64, b: i64) -> QuadIdeal {
        QuadIdeal::new_primitive(delta, BigInt::from(a), BigInt::from(b)).unwrap()
    }

    #[test]
    fn prime_above_has_right_norm() {
        for (delta, q) in [(-23i64, 3u64), (-4, 5), (5, 11), (40, 3)] {
            let p = QuadIdeal::prime_above(delta, q).unwrap();
            assert_eq!(p.norm(), BigRational::from_integer(BigInt::from(q)));
            // p · σ(p) = (q)
            let prod = p.mul(&p.conj());
            let want = QuadIdeal::unit(delta).scaled(&BigRational::from_integer(BigInt::from(q)));
            assert_eq!(prod, want);
        }
        assert!(QuadIdeal::prime_above(-23, 2).is_err()); // q = 2 unsupported
        assert!(QuadIdeal::prime_above(-4, 3).is_err()); // inert
    }

    #[test]
    fn from_element_norm_matches() {
        for (delta, a, b) in [(-23i64, 3i64, 2i64), (-4, 4, 1), (5, 7, 3), (40, 5, 2)] {
            let x = QuadElem::from_integers(delta, a, b);
            let i = QuadIdeal::from_element(&x).unwrap();
            assert_eq!(i.norm(), x.norm().abs(), "({a},{b}) in {delta}");
        }
    }

    #[test]
    fn inverse_multiplies_to_unit() {
        let p = QuadIdeal::prime_above(-23, 3).unwrap();
        assert_eq!(p.mul(&p.inv()), QuadIdeal::unit(-23));
        let q = QuadIdeal::prime_above(40, 3).unwrap();
        assert_eq!(q.mul(&q.inv()), QuadIdeal::unit(40));
    }

    #[test]
    fn principal_generator_roundtrip_imag() {
        for (delta, a, b) in [
            (-23i64, 3i64, 2i64),
            (-23, 1, 5),
            (-4, 2, 1),
            (-20, 7, 4),
            (-84, 5, 11),
        ] {
            let x = QuadElem::from_integers(delta, a, b);
            let i = QuadIdeal::from_element(&x).unwrap();
            let g = principal_generator(&i).unwrap();
            assert_eq!(
                QuadIdeal::from_element(&g).unwrap(),
                i,
                "generator of ({a}+{b}w) in {delta}"
            );
        }
    }

    #[test]
    fn principal_generator_roundtrip_real() {
        for (delta, a, b) in [
            (5i64, 2i64, 1i64),
            (8, 3, 1),
            (40, 3, 2),
            (40, 7, 5),
            (229, 4, 3),
            (401, 11, 7),
        ] {
            let x = QuadElem::from_integers(delta, a, b);
            let i = QuadIdeal::from_element(&x).unwrap();
            let g = principal_generator(&i).unwrap();
            assert_eq!(
                QuadIdeal::from_element(&g).unwrap(),
                i,
                "generator of ({a}+{b}w) in {delta}"
            );
        }
    }

    #[test]
    fn non_principal_detected() {
        // h(−23) = 3: the prime above 3 is not principal, its cube is
        let p = QuadIdeal::prime_above(-23, 3).unwrap();
        assert!(matches!(
            principal_generator(&p),
            Err(Error::NotPrincipal(_))
        ));
        let p3 = p.pow(3);
        let g = principal_generator(&p3).unwrap();
        assert_eq!(QuadIdeal::from_element(&g).unwrap(), p3);
        assert_eq!(g.norm().abs(), BigRational::from_integer(BigInt::from(27)));

        // Q(√10): the prime above 3 generates the class group of order 2
        let q = QuadIdeal::prime_above(40, 3).unwrap();
        assert!(matches!(
            principal_generator(&q),
            Err(Error::NotPrincipal(_))
        ));
        let q2 = q.pow(2);
        let g = principal_generator(&q2).unwrap();
        assert_eq!(QuadIdeal::from_element(&g).unwrap(), q2);
    }

    #[test]
    fn ell_splits_into_conjugates() {
        // (ℓ) = l·l′ for split ℓ
        let l = QuadIdeal::prime_above(-4, 5).unwrap();
        let lp = l.conj();
        assert_ne!(l, lp);
        let prod = l.mul(&lp);
        let five = QuadIdeal::unit(-4).scaled(&BigRational::from_integer(BigInt::from(5)));
        assert_eq!(prod, five);
        // l / l′ is principal here (h = 1)
        let frac = l.mul(&lp.inv());
        let g = principal_generator(&frac).unwrap();
        assert_eq!(QuadIdeal::from_element(&g).unwrap(), frac);
    }

    #[test]
    fn canonical_keys_separate_classes() {
        // disc −23: classes of (1), p₃, p₃² are distinct, p₃³ principal
        let o = QuadIdeal::unit(-23);
        let p = QuadIdeal::prime_above(-23, 3).unwrap();
        let k0 = canonical_class_key(&o).unwrap();
        let k1 = canonical_class_key(&p).unwrap();
        let k2 = canonical_class_key(&p.pow(2)).unwrap();
        let k3 = canonical_class_key(&p.pow(3)).unwrap();
        assert_ne!(k0, k1);
        assert_ne!(k0, k2);
        assert_ne!(k1, k2);
        assert_eq!(k0, k3);

        // wide class structure of Q(√10)
        let q = QuadIdeal::prime_above(40, 3).unwrap();
        let k0 = canonical_class_key(&QuadIdeal::unit(40)).unwrap();
        assert_ne!(canonical_class_key(&q).unwrap(), k0);
        assert_eq!(canonical_class_key(&q.pow(2)).unwrap(), k0);
    }

    #[test]
    fn canonical_key_constant_on_class() {
        let p = QuadIdeal::prime_above(-23, 3).unwrap();
        let x = QuadElem::from_integers(-23, 5, 3);
        assert_eq!(
            canonical_class_key(&p).unwrap(),
            canonical_class_key(&p.mul_elem(&x).unwrap()).unwrap()
        );

        let q = QuadIdeal::prime_above(401, 7).unwrap();
        let y = QuadElem::from_integers(401, 2, 1);
        assert_eq!(
            canonical_class_key(&q).unwrap(),
            canonical_class_key(&q.mul_elem(&y).unwrap()).unwrap()
        );
    }
}
