//! Binary quadratic forms: reduction in both signatures, Gauss composition,
//! enumeration of reduced forms, and class group structure.
//!
//! For Δ < 0 a class has a unique reduced representative. For Δ > 0 the
//! reduced forms of a class form a cycle under the ρ operator; the
//! canonical representative is the lexicographically least cycle member
//! with positive leading coefficient, and the group is the narrow (form)
//! class group.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};

use crate::abelian::FinAbGroup;
use crate::error::{Error, Result};

/// Desk-scale guard for reduced-form enumeration.
pub const MAX_CLASS_DISC: i64 = 20_000_000;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct QuadForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl QuadForm {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Self {
        QuadForm { a, b, c }
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Self {
        QuadForm::new(BigInt::from(a), BigInt::from(b), BigInt::from(c))
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c).is_one()
    }

    /// Principal form of discriminant Δ: (1, b₀, c₀) with b₀ ≡ Δ (mod 2),
    /// b₀ ∈ {0,1} for Δ < 0 and b₀ the largest value ≤ ⌊√Δ⌋ for Δ > 0.
    pub fn principal(delta: i64) -> Self {
        let b = if delta < 0 {
            BigInt::from(delta.rem_euclid(2))
        } else {
            let s = BigInt::from(delta).sqrt();
            let par = delta.rem_euclid(2);
            if s.mod_floor(&BigInt::from(2)) == BigInt::from(par) {
                s
            } else {
                s - 1
            }
        };
        let c = (&b * &b - delta) / 4;
        QuadForm::new(BigInt::one(), b, c)
    }

    pub fn inverse(&self) -> QuadForm {
        QuadForm::new(self.a.clone(), -self.b.clone(), self.c.clone())
    }

    pub fn is_reduced(&self) -> bool {
        let d = self.discriminant();
        if d.is_negative() {
            // |b| ≤ a ≤ c, and b ≥ 0 at either boundary
            let ab = self.b.abs();
            if ab > self.a || self.a > self.c {
                return false;
            }
            if (ab == self.a || self.a == self.c) && self.b.is_negative() {
                return false;
            }
            true
        } else {
            // 0 < b < √Δ and |√Δ − 2|a|| < b, tested exactly
            if !self.b.is_positive() {
                return false;
            }
            if &self.b * &self.b >= d {
                return false;
            }
            // (√Δ − 2|a|)² < b²  ⇔  Δ + 4a² − b² < 4|a|√Δ
            let lhs = &d + BigInt::from(4) * &self.a * &self.a - &self.b * &self.b;
            if !lhs.is_positive() {
                return true;
            }
            &lhs * &lhs < BigInt::from(16) * &self.a * &self.a * &d
        }
    }

    /// One reduction/ρ step for an indefinite form: (a,b,c) → (c,b',c').
    pub fn rho(&self, delta: &BigInt) -> QuadForm {
        let c = self.c.clone();
        let two_c = BigInt::from(2) * c.abs();
        let s = delta.sqrt();
        let w_hi = if c.abs() > s { c.abs() } else { s };
        // b' ≡ −b (mod 2|c|), b' ∈ (w_hi − 2|c|, w_hi]
        let r = (&w_hi + &self.b).mod_floor(&two_c);
        let b_new = w_hi - r;
        let c_new = (&b_new * &b_new - delta) / (BigInt::from(4) * &c);
        QuadForm::new(c, b_new, c_new)
    }

    /// Reduce to a reduced form of the same class (canonical only for Δ<0).
    pub fn reduce(&self) -> QuadForm {
        let d = self.discriminant();
        if d.is_negative() {
            let mut f = self.clone();
            loop {
                // translate b into (−a, a]
                let two_a = BigInt::from(2) * &f.a;
                let mut r = f.b.mod_floor(&two_a);
                if r > f.a {
                    r -= &two_a;
                }
                let c = (&r * &r - &d) / (BigInt::from(4) * &f.a);
                f = QuadForm::new(f.a.clone(), r, c);
                if f.a > f.c {
                    f = QuadForm::new(f.c.clone(), -f.b.clone(), f.a.clone());
                    continue;
                }
                if f.a == f.c && f.b.is_negative() {
                    f = QuadForm::new(f.a.clone(), -f.b.clone(), f.c.clone());
                }
                return f;
            }
        } else {
            let mut f = self.clone();
            let mut guard = 0usize;
            while !f.is_reduced() {
                f = f.rho(&d);
                guard += 1;
                assert!(guard < 100_000, "reduction did not terminate");
            }
            f
        }
    }

    /// Canonical representative of the proper equivalence class.
    pub fn canonical(&self) -> QuadForm {
        let d = self.discriminant();
        let f = self.reduce();
        if d.is_negative() {
            return f;
        }
        // minimum over the ρ-cycle, among forms with positive leading term
        let mut best: Option<QuadForm> = None;
        let mut cur = f.clone();
        loop {
            if cur.a.is_positive() {
                match &best {
                    None => best = Some(cur.clone()),
                    Some(b) => {
                        if cur < *b {
                            best = Some(cur.clone());
                        }
                    }
                }
            }
            cur = cur.rho(&d);
            if cur == f {
                break;
            }
        }
        best.expect("every cycle contains forms with positive leading term")
    }

    /// Gauss/Dirichlet composition of primitive forms of equal discriminant.
    pub fn compose(&self, other: &QuadForm) -> QuadForm {
        debug_assert_eq!(self.discriminant(), other.discriminant());
        let (f1, f2) = if self.a <= other.a {
            (self.clone(), other.clone())
        } else {
            (other.clone(), self.clone())
        };
        let s: BigInt = (&f1.b + &f2.b) / 2;
        let n = &f2.b - &s;
        let (y1, d) = if f2.a.mod_floor(&f1.a).is_zero() {
            (BigInt::zero(), f1.a.clone())
        } else {
            let e = f2.a.extended_gcd(&f1.a);
            (e.x, e.gcd)
        };
        let (x2, y2, d1) = if s.mod_floor(&d).is_zero() {
            (BigInt::zero(), -BigInt::one(), d.clone())
        } else {
            let e = s.extended_gcd(&d);
            (e.x, -e.y, e.gcd)
        };
        let v1 = &f1.a / &d1;
        let v2 = &f2.a / &d1;
        let r = (&y1 * &y2 * &n - &x2 * &f2.c).mod_floor(&v1);
        let b3 = &f2.b + BigInt::from(2) * &v2 * &r;
        let a3 = &v1 * &v2;
        let c3_num = &f2.c * &d1 + &r * (&f2.b + &v2 * &r);
        debug_assert!(c3_num.mod_floor(&v1).is_zero());
        let c3 = c3_num / &v1;
        QuadForm::new(a3, b3, c3)
    }
}

/// All primitive reduced forms of a fundamental discriminant.
pub fn reduced_forms(delta: i64) -> Result<Vec<QuadForm>> {
    if delta.unsigned_abs() > MAX_CLASS_DISC as u64 {
        return Err(Error::ResourceLimit(alloc::format!(
            "discriminant {delta} beyond the desk-scale bound"
        )));
    }
    let mut out = Vec::new();
    if delta < 0 {
        let lim = ((-delta) as u64 / 3).sqrt() as i64;
        for a in 1..=lim.max(1) {
            let b_lo = -a + 1;
            for b in b_lo..=a {
                if (b - delta).rem_euclid(2) != 0 {
                    continue;
                }
                let num = b as i128 * b as i128 - delta as i128;
                if num % (4 * a as i128) != 0 {
                    continue;
                }
                let c = num / (4 * a as i128);
                if c < a as i128 {
                    continue;
                }
                let f = QuadForm::from_i64(a, b, c as i64);
                if f.is_reduced() && f.is_primitive() {
                    out.push(f);
                }
            }
        }
    } else {
        let s = (delta as u64).sqrt() as i64;
        for b in 1..=s {
            if (delta - b).rem_euclid(2) != 0 {
                continue;
            }
            let m = (delta as i128 - b as i128 * b as i128) / 4;
            // a·c = −m with m > 0: run over divisors of m
            let mut a_abs = 1i128;
            while a_abs * a_abs <= m {
                if m % a_abs == 0 {
                    for (aa, cc) in [
                        (a_abs, -m / a_abs),
                        (-a_abs, m / a_abs),
                        (m / a_abs, -a_abs),
                        (-m / a_abs, a_abs),
                    ] {
                        let f = QuadForm::from_i64(aa as i64, b, cc as i64);
                        if f.is_reduced() && f.is_primitive() && !out.contains(&f) {
                            out.push(f);
                        }
                    }
                }
                a_abs += 1;
            }
        }
        out.sort();
        out.dedup();
    }
    Ok(out)
}

/// Class number: reduced-form count for Δ < 0, ρ-cycle count for Δ > 0.
/// This is the narrow class number when Δ > 0.
pub fn class_number(delta: i64) -> Result<u64> {
    let forms = reduced_forms(delta)?;
    if delta < 0 {
        return Ok(forms.len() as u64);
    }
    let d = BigInt::from(delta);
    let mut seen: BTreeMap<QuadForm, ()> = BTreeMap::new();
    let mut cycles = 0u64;
    for f in &forms {
        if seen.contains_key(f) {
            continue;
        }
        cycles += 1;
        let mut cur = f.clone();
        loop {
            seen.insert(cur.clone(), ());
            cur = cur.rho(&d);
            if cur == *f {
                break;
            }
        }
    }
    Ok(cycles)
}

/// Structure of an explicit finite abelian group given by canonical element
/// keys and a composition law, via order counting prime by prime.
pub fn explicit_group_structure<K, F>(elements: &[K], op: F, identity: &K) -> Result<FinAbGroup>
where
    K: Ord + Clone,
    F: Fn(&K, &K) -> K,
{
    let n = elements.len() as u64;
    if n == 1 {
        return Ok(FinAbGroup::trivial());
    }
    let pow = |x: &K, mut e: u64| -> K {
        let mut acc = identity.clone();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = op(&acc, &base);
            }
            base = op(&base, &base);
            e >>= 1;
        }
        acc
    };
    let mut orders: Vec<BigUint> = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest || (rest > 1 && p <= rest) {
        if rest % p != 0 {
            p += 1;
            continue;
        }
        let mut e_max = 0u32;
        while rest % p == 0 {
            rest /= p;
            e_max += 1;
        }
        // N_k = #elements killed by p^k determines the p-partition
        let mut prev_count = 1u64;
        let mut ranks: Vec<u32> = Vec::new();
        for k in 1..=e_max {
            let pk = p.pow(k);
            let count = elements
                .iter()
                .filter(|x| pow(x, pk as u64) == *identity)
                .count() as u64;
            debug_assert_eq!(count % prev_count, 0);
            let ratio = count / prev_count;
            let mut r = 0u32;
            let mut rr = ratio;
            while rr > 1 {
                debug_assert_eq!(rr % p, 0);
                rr /= p;
                r += 1;
            }
            ranks.push(r);
            prev_count = count;
        }
        // conjugate partition: ranks[k−1] = #{λ_i ≥ k}
        let depth = ranks.first().copied().unwrap_or(0);
        for i in 0..depth {
            let lam = ranks.iter().filter(|&&r| r > i).count() as u32;
            orders.push(BigUint::from(p).pow(lam));
        }
    }
    FinAbGroup::from_orders(&orders)
}

/// Form class group: full group for Δ < 0, narrow group for Δ > 0 (the
/// wide group follows from the fundamental-unit norm).
pub fn class_group(delta: i64) -> Result<FinAbGroup> {
    crate::quadfield::FieldDesc::new(delta)?;
    let forms = reduced_forms(delta)?;
    let canon: Vec<QuadForm> = {
        let mut set: Vec<QuadForm> = forms.iter().map(|f| f.canonical()).collect();
        set.sort();
        set.dedup();
        set
    };
    let id = QuadForm::principal(delta).canonical();
    debug_assert!(canon.contains(&id));
    explicit_group_structure(&canon, |x, y| x.compose(y).canonical(), &id)
}
