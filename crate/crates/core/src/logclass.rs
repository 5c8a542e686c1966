//! The logarithmic class group of a totally ℓ-adic quadratic field at
//! finite precision ℓ^m.
//!
//! The group of degree-zero logarithmic divisor classes is presented on
//! the places l, l′ above ℓ together with prime ideals generating the
//! class group. The logarithmic valuation at a split place is
//! `ṽ(x) = Log(ι(x)) / Log(1+ℓ)`, normalized so that ṽ(ℓ) = 0 and
//! ṽ(1+ℓ) = 1; at tame places it is the ordinary valuation. Degrees are
//! deg(l) = deg(l′) = 1 and deg(p) = −Log(Np)/Log(1+ℓ), the sign that
//! makes every principal logarithmic divisor have degree zero (checked on
//! every relation row, never assumed). The group is the kernel of the
//! degree map modulo the span of the principal rows, over Z/ℓ^m.
//!
//! The construction depends on pinned normalizations; everything the
//! choice could affect is covered by the invariance options used in tests
//! (embedding swap, witness rescaling, degree rescaling, precision).

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::abelian::{cokernel, ell_sylow, FinAbGroup, IntMatrix};
use crate::error::{Error, Result};
use crate::padic::{ell_pow, iwasawa_log, PadicInt, PadicVal};
use crate::quadfield::{
    class_generators, fundamental_unit, ClassGroupCtx, Place, QuadElem, QuadIdeal, SplitField,
};

/// A logarithmic divisor on the fixed support [l, l′, p_1, …, p_k], with
/// coefficients mod ℓ^m.
#[derive(Clone, Debug)]
pub struct LogDivisor {
    pub coefficients: Vec<PadicInt>,
}

impl LogDivisor {
    /// Degree against a vector of place degrees, recomputed on demand.
    pub fn degree(&self, degs: &[PadicInt]) -> PadicInt {
        assert_eq!(self.coefficients.len(), degs.len());
        let ell = degs[0].ell();
        let m = degs[0].precision();
        let mut acc = PadicInt::zero(ell, m).expect("valid prime");
        for (c, d) in self.coefficients.iter().zip(degs) {
            acc = &acc + &(c * d);
        }
        acc
    }
}

/// ~Cl_K at precision ℓ^m with stabilization metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogClassGroup {
    pub group: FinAbGroup,
    pub precision: u32,
    pub stabilized: bool,
    pub normalization: Normalization,
}

/// Which uniformizing scale ṽ and deg are divided by. All choices differ
/// by a unit of Z_ℓ and give isomorphic groups; the default makes
/// ṽ(1+ℓ) = 1 exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// divide by Log(1+ℓ)
    LogOnePlusEll,
    /// divide by ℓ itself
    Ell,
    /// divide by c·Log(1+ℓ) for a unit c mod ℓ^m
    ScaledLog(u64),
}

/// Test hooks: every knob must leave the isomorphism class unchanged.
#[derive(Clone, Debug)]
pub struct WclOptions {
    pub swap_embeddings: bool,
    pub normalization: Normalization,
    /// multiply the whole degree functional by this unit
    pub degree_unit_scale: u64,
    /// multiply every class-relation witness γ by ε^j (real fields)
    pub witness_unit_power: i64,
    /// multiply every witness γ by ℓ^t
    pub witness_ell_power: u32,
    /// negate every witness
    pub witness_negate: bool,
}

impl Default for WclOptions {
    fn default() -> Self {
        WclOptions {
            swap_embeddings: false,
            normalization: Normalization::LogOnePlusEll,
            degree_unit_scale: 1,
            witness_unit_power: 0,
            witness_ell_power: 0,
            witness_negate: false,
        }
    }
}

/// Logarithmic valuation ṽ at a place above ℓ: `Log(ι(x)) / scale`, with
/// ṽ(ℓ) = 0 and (for the default scale) ṽ(1+ℓ) = 1.
pub fn log_valuation(split: &SplitField, x: &QuadElem, place: Place, m: u32) -> Result<PadicInt> {
    scaled_log(split, x, place, m, Normalization::LogOnePlusEll)
}

fn scale_value(ell: u64, m_plus: u32, norm: Normalization) -> Result<PadicInt> {
    let one_plus = PadicInt::new(ell, m_plus, BigUint::from(ell) + BigUint::one())?;
    match norm {
        Normalization::LogOnePlusEll => iwasawa_log(&one_plus, m_plus),
        Normalization::Ell => PadicInt::new(ell, m_plus, BigUint::from(ell)),
        Normalization::ScaledLog(c) => {
            let base = iwasawa_log(&one_plus, m_plus)?;
            let c = PadicInt::new(ell, m_plus, BigUint::from(c))?;
            if !c.is_unit() {
                return Err(Error::NotAUnit("normalization scale".into()));
            }
            Ok(&base * &c)
        }
    }
}

fn scaled_log(
    split: &SplitField,
    x: &QuadElem,
    place: Place,
    m: u32,
    norm: Normalization,
) -> Result<PadicInt> {
    let ell = split.ell();
    let lx = split.log_at(x, place, m + 1)?;
    let scale = scale_value(ell, m + 1, norm)?;
    divide_by_scale(&lx, &scale, m)
}

fn divide_by_scale(lx: &PadicInt, scale: &PadicInt, m: u32) -> Result<PadicInt> {
    // both logs have valuation ≥ 1, the scale exactly 1
    let lx_div = PadicVal::from_padic(lx.clone()).div_exact_ell(1)?;
    let sc_div = PadicVal::from_padic(scale.clone()).div_exact_ell(1)?;
    let sc_unit = sc_div
        .value()
        .ok_or_else(|| Error::NotAUnit("scale".into()))?
        .inv()?;
    let v = lx_div.value().expect("finite after exact division");
    (v * &sc_unit).truncate(m)
}

/// Scaled logarithm of a rational number (for tame degrees): Log(q)/scale.
fn scaled_log_rational(ell: u64, q: &BigRational, m: u32, norm: Normalization) -> Result<PadicInt> {
    let lq = crate::padic::iwasawa_log_rational(q, ell, m + 1)?;
    let scale = scale_value(ell, m + 1, norm)?;
    divide_by_scale(&lq, &scale, m)
}

/// The presentation of ~Cl_K mod ℓ^m: generator support, degree vector,
/// and principal relation rows (all rows verified to be of degree 0).
pub struct WclPresentation {
    pub ell: u64,
    pub m: u32,
    /// degrees of [l, l′, p_1.., p_k] mod ℓ^m
    pub degrees: Vec<PadicInt>,
    pub rows: Vec<LogDivisor>,
    pub generators: Vec<QuadIdeal>,
}

/// Assemble the presentation at one precision level.
pub fn wcl_presentation(
    delta: i64,
    ell: u64,
    m: u32,
    opts: &WclOptions,
) -> Result<WclPresentation> {
    if m < 2 {
        return Err(Error::PrecisionShortfall {
            required: 2,
            available: m,
        });
    }
    let split = if opts.swap_embeddings {
        SplitField::new(delta, ell)?.swapped()
    } else {
        SplitField::new(delta, ell)?
    };
    let (l, lbar) = split.primes_above_ell()?;
    let ps = class_generators(delta, ell)?;
    let mut gens = vec![l, lbar];
    gens.extend(ps.iter().cloned());
    let ctx = ClassGroupCtx::for_generators(delta, gens.clone())?;

    // degrees: deg l = deg l′ = 1; deg p = −Log(Np)/scale, the sign that
    // puts principal divisors in the kernel of deg
    let unit_scale = PadicInt::new(ell, m, BigUint::from(opts.degree_unit_scale))?;
    if !unit_scale.is_unit() {
        return Err(Error::NotAUnit("degree scale".into()));
    }
    let mut degrees = vec![unit_scale.clone(), unit_scale.clone()];
    for p in &ps {
        let q = p.norm();
        let d = scaled_log_rational(ell, &q, m, opts.normalization)?;
        let minus_d = &PadicInt::zero(ell, m)? - &d;
        degrees.push(&minus_d * &unit_scale);
    }

    // relation rows: witnesses of the lattice on (l, l′, p⃗), plus ε
    let eps = if delta > 0 {
        Some(fundamental_unit(delta)?.epsilon)
    } else {
        None
    };
    let mut rows: Vec<LogDivisor> = Vec::new();
    for (row, gamma) in ctx.relation_rows().iter().zip(ctx.witnesses()) {
        let mut g = gamma.clone();
        if opts.witness_negate {
            g = g.neg();
        }
        if opts.witness_ell_power > 0 {
            let lp = BigRational::from_integer(BigInt::from(ell).pow(opts.witness_ell_power));
            g = g.scale(&lp);
        }
        if opts.witness_unit_power != 0 {
            if let Some(e) = &eps {
                let mut u = e.pow(opts.witness_unit_power.unsigned_abs() as u32);
                if opts.witness_unit_power < 0 {
                    u = u.inverse().expect("unit");
                }
                g = g.mul(&u);
            }
        }
        rows.push(principal_log_divisor(&split, &g, &row[2..], m, opts)?);
    }
    if let Some(e) = &eps {
        rows.push(principal_log_divisor(
            &split,
            e,
            &vec![0; ps.len()],
            m,
            opts,
        )?);
    }

    let pres = WclPresentation {
        ell,
        m,
        degrees,
        rows,
        generators: gens,
    };
    // the product formula is a theorem, not an assumption: verify it
    for row in &pres.rows {
        if !row.degree(&pres.degrees).is_zero_residue() {
            return Err(Error::Inconsistency(
                "principal logarithmic divisor of nonzero degree".into(),
            ));
        }
    }
    Ok(pres)
}

/// Logarithmic divisor of a principal witness: ṽ at l, l′ and the known
/// ordinary valuations at the tame support.
fn principal_log_divisor(
    split: &SplitField,
    gamma: &QuadElem,
    tame_exponents: &[i64],
    m: u32,
    opts: &WclOptions,
) -> Result<LogDivisor> {
    let ell = split.ell();
    let v_l = scaled_log(split, gamma, Place::L, m, opts.normalization)?;
    let v_lbar = scaled_log(split, gamma, Place::LBar, m, opts.normalization)?;
    let mut coefficients = vec![v_l, v_lbar];
    for &n in tame_exponents {
        coefficients.push(PadicInt::from_bigint(ell, m, &BigInt::from(n))?);
    }
    Ok(LogDivisor { coefficients })
}

/// Quotient (ker deg)/(row span) over Z/ℓ^m. deg(l) is a unit, so the
/// kernel is free on the last 1+k coordinates and rows in the kernel
/// project by dropping their first coordinate.
pub fn group_from_presentation(pres: &WclPresentation) -> Result<FinAbGroup> {
    let n = pres.degrees.len() - 1;
    let modulus = BigInt::from(ell_pow(pres.ell, pres.m));
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    for row in &pres.rows {
        let c: Vec<BigInt> = row.coefficients[1..]
            .iter()
            .map(|x| BigInt::from(x.residue().clone()))
            .collect();
        cols.push(c);
    }
    for i in 0..n {
        let mut c = vec![BigInt::zero(); n];
        c[i] = modulus.clone();
        cols.push(c);
    }
    let mut m_cols = IntMatrix::new(n, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for i in 0..n {
            m_cols[(i, j)] = c[i].clone();
        }
    }
    let (group, rank) = cokernel(&m_cols);
    debug_assert_eq!(rank, 0);
    // a quotient of (Z/ℓ^m)^n is an ℓ-group already
    debug_assert_eq!(group, ell_sylow(&group, pres.ell)?);
    Ok(group)
}

/// ~Cl_K with the stabilization contract: the group is recomputed at
/// precisions m, m+1, m+2 and flagged stabilized only on agreement.
pub fn wcl(delta: i64, ell: u64, m: u32) -> Result<LogClassGroup> {
    wcl_with_options(delta, ell, m, &WclOptions::default())
}

pub fn wcl_with_options(delta: i64, ell: u64, m: u32, opts: &WclOptions) -> Result<LogClassGroup> {
    let g0 = group_from_presentation(&wcl_presentation(delta, ell, m, opts)?)?;
    let g1 = group_from_presentation(&wcl_presentation(delta, ell, m + 1, opts)?)?;
    let g2 = group_from_presentation(&wcl_presentation(delta, ell, m + 2, opts)?)?;
    let stabilized = g0 == g1 && g1 == g2;
    Ok(LogClassGroup {
        group: g0,
        precision: m,
        stabilized,
        normalization: opts.normalization,
    })
}

/// One level of the locally-cyclotomic tower: the ray class group mod ℓ^j
/// with the local reciprocity images of ℓ at both split places killed.
/// The limit over j is Gal(K^lc/K), free of rank one over the ℓ-adics
/// with torsion subgroup ~Cl_K.
fn lc_tower_level(delta: i64, ell: u64, j: u32, swap: bool) -> Result<FinAbGroup> {
    use crate::quadfield::{ray_presentation_for, QuadIdeal};
    let base = SplitField::new(delta, ell)?;
    let pres = ray_presentation_for(if swap { base.swapped() } else { base }, j)?;
    let split = &pres.split;
    let (l, lbar) = split.primes_above_ell()?;
    let width = 2 + pres.gens.len();
    let mut cols = pres.rows.clone();

    for (place, prime) in [(Place::L, &l), (Place::LBar, &lbar)] {
        // x ≡ ℓ at this place, ≡ 1 at the other, mod ℓ^{j+1}; then the
        // reciprocity image of the idele (ℓ at place) is the ray class of
        // the prime-to-ℓ ideal (x)·prime⁻¹ (up to inversion, irrelevant
        // for the quotient)
        let prec = j + 1;
        let w_here = split.omega_residue(place, prec)?;
        let w_there = split.omega_residue(place.other(), prec)?;
        let diff_inv = (&w_here - &w_there).inv()?;
        let ell_elem = PadicInt::from_bigint(ell, prec, &BigInt::from(ell))?;
        let one = PadicInt::one(ell, prec)?;
        let b = &(&ell_elem - &one) * &diff_inv;
        let a = &ell_elem - &(&b * &w_here);
        let x = QuadElem::new(
            delta,
            BigRational::from_integer(BigInt::from(a.residue().clone())),
            BigRational::from_integer(BigInt::from(b.residue().clone())),
        );
        let c_ideal = QuadIdeal::from_element(&x)?.mul(&prime.inv());
        debug_assert!(c_ideal.is_integral());
        let class_vec = pres
            .ctx
            .class_vector(&c_ideal)?
            .ok_or_else(|| Error::Inconsistency("class generators do not generate".into()))?;
        let mut principal_part = c_ideal.clone();
        for (gen, &e) in pres.gens.iter().zip(&class_vec) {
            if e != 0 {
                principal_part = principal_part.mul(&gen.pow(-e));
            }
        }
        let g = crate::quadfield::principal_generator(&principal_part)?;
        let mut col = vec![BigInt::zero(); width];
        if j >= 2 {
            let (d1, d2) = split.dlog_pair(&g, j)?;
            col[0] = BigInt::from(d1.residue().clone());
            col[1] = BigInt::from(d2.residue().clone());
        }
        for (t, &e) in class_vec.iter().enumerate() {
            col[2 + t] = BigInt::from(e);
        }
        cols.push(col);
    }

    let m_cols = crate::quadfield::ray::columns_matrix(width, &cols);
    let (full, rank) = cokernel(&m_cols);
    if rank != 0 {
        return Err(Error::Inconsistency(
            "locally-cyclotomic presentation is not of full rank".into(),
        ));
    }
    ell_sylow(&full, ell)
}

/// ~Cl_K as the stable torsion of the locally-cyclotomic tower: across
/// three consecutive levels exactly one invariant factor grows (the
/// cyclotomic direction) and the constant part is the logarithmic class
/// group.
pub fn wcl_tower(delta: i64, ell: u64, m: u32, swap: bool) -> Result<LogClassGroup> {
    let mut exps: Vec<Vec<u32>> = Vec::new();
    let mut last = FinAbGroup::trivial();
    for j in 1..=(m + 2) {
        let q = lc_tower_level(delta, ell, j, swap)?;
        let mut e = q.ell_exponents(ell).expect("ell-group");
        e.sort_unstable_by(|a, b| b.cmp(a));
        exps.push(e);
        last = q;
        if j >= 3 {
            let w = (j - 3) as usize;
            if let Some(torsion) =
                crate::invariants::growth_pattern(&exps[w], &exps[w + 1], &exps[w + 2], 1)
            {
                let orders: Vec<BigUint> =
                    torsion.iter().map(|&t| BigUint::from(ell).pow(t)).collect();
                return Ok(LogClassGroup {
                    group: FinAbGroup::from_orders(&orders)?,
                    precision: m,
                    stabilized: true,
                    normalization: Normalization::LogOnePlusEll,
                });
            }
        }
    }
    Ok(LogClassGroup {
        group: last,
        precision: m,
        stabilized: false,
        normalization: Normalization::LogOnePlusEll,
    })
}

/// The logarithmic norm obstruction Θ: the deg-zero line of the semi-local
/// units above ℓ modulo the valuation image of the logarithmic units (the
/// elements supported above ℓ whose Iwasawa logarithms vanish at both
/// places). For a real field its order measures the part of the ray-tower
/// torsion not seen by the class group and the logarithmic class group:
/// T_K = 1 ⟺ Cl_ℓ = 1 ∧ ~Cl = 1 ∧ Θ = 1. The generic source of
/// nontriviality is a fundamental unit whose image at the split places is
/// congruent to a root of unity mod ℓ², which happens at density ~1/ℓ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormObstruction {
    /// Θ ≅ Z/ℓ^e
    pub order_exponent: u32,
    pub stabilized: bool,
}

impl NormObstruction {
    pub fn is_trivial(&self) -> bool {
        self.order_exponent == 0
    }
}

pub fn norm_obstruction(delta: i64, ell: u64, m: u32) -> Result<NormObstruction> {
    if delta < 0 {
        // the compositum of Z_ℓ-extensions has rank 2 over an imaginary
        // field: the unit direction that carries this obstruction does not
        // exist there
        return Err(Error::Malformed(
            "the norm obstruction is a real-field invariant".into(),
        ));
    }
    let split = SplitField::new(delta, ell)?;
    let (l, lbar) = split.primes_above_ell()?;
    let ctx = ClassGroupCtx::for_generators(delta, vec![l, lbar])?;
    let prec = m + 4;
    let modulus = BigInt::from(ell_pow(ell, prec));

    // generators of the group of elements supported above ℓ, mod torsion:
    // the fundamental unit (real case) and the relation witnesses on (l, l′)
    let mut log_rows: Vec<[BigInt; 2]> = Vec::new();
    let mut val_diffs: Vec<i64> = Vec::new();
    let mut push = |x: &QuadElem, v_l: i64, v_lbar: i64| -> Result<()> {
        let a = split.log_at(x, Place::L, prec)?;
        let b = split.log_at(x, Place::LBar, prec)?;
        log_rows.push([
            BigInt::from(a.residue().clone()),
            BigInt::from(b.residue().clone()),
        ]);
        val_diffs.push(v_l - v_lbar);
        Ok(())
    };
    if delta > 0 {
        push(&fundamental_unit(delta)?.epsilon, 0, 0)?;
    }
    for (row, gamma) in ctx.relation_rows().iter().zip(ctx.witnesses()) {
        push(gamma, row[0], row[1])?;
    }

    // exponent vectors killing both logarithms mod ℓ^prec: the kernel of
    // [log matrix; ℓ^prec·I] via SNF
    let n = log_rows.len();
    let mut mat = IntMatrix::new(n + 2, 2);
    for (i, r) in log_rows.iter().enumerate() {
        mat[(i, 0)] = r[0].clone();
        mat[(i, 1)] = r[1].clone();
    }
    mat[(n, 0)] = modulus.clone();
    mat[(n + 1, 1)] = modulus.clone();
    let snf = crate::abelian::smith_normal_form(&mat);
    let diag = crate::abelian::snf_diagonal(&snf.s);

    // image of the kernel under the valuation-difference functional
    let mut content: Option<BigInt> = None;
    for i in 0..(n + 2) {
        let mult = match diag.get(i) {
            Some(s_i) if !s_i.is_zero() => {
                let g = num_integer::Integer::gcd(s_i, &modulus);
                &modulus / g
            }
            _ => BigInt::one(),
        };
        let mut acc = BigInt::zero();
        for (j, &d) in val_diffs.iter().enumerate() {
            acc += &snf.u[(i, j)] * BigInt::from(d);
        }
        acc = num_integer::Integer::mod_floor(&(acc * mult), &modulus);
        if !acc.is_zero() {
            content = Some(match content {
                None => acc,
                Some(c) => num_integer::Integer::gcd(&c, &acc),
            });
        }
    }
    let c = content.unwrap_or_else(|| modulus.clone());
    let le = BigInt::from(ell);
    let mut v = 0u32;
    let mut cc = c;
    while num_integer::Integer::mod_floor(&cc, &le).is_zero() && v <= m + 2 {
        cc /= &le;
        v += 1;
    }
    Ok(NormObstruction {
        order_exponent: v,
        stabilized: v <= m,
    })
}

/// ℓ-group of ℓ-classes: the ℓ-class group modulo the subgroup generated
/// by the classes of l and l′.
pub fn cl_prime(delta: i64, ell: u64) -> Result<FinAbGroup> {
    let split = SplitField::new(delta, ell)?;
    let (l, lbar) = split.primes_above_ell()?;
    let ps = class_generators(delta, ell)?;
    let mut gens = vec![l, lbar];
    gens.extend(ps.iter().cloned());
    let ctx = ClassGroupCtx::for_generators(delta, gens.clone())?;
    let width = gens.len();
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    for row in ctx.relation_rows() {
        cols.push(row.iter().map(|&x| BigInt::from(x)).collect());
    }
    // kill the classes of l and l′
    for i in 0..2 {
        let mut c = vec![BigInt::zero(); width];
        c[i] = BigInt::one();
        cols.push(c);
    }
    let mut m_cols = IntMatrix::new(width, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for i in 0..width {
            m_cols[(i, j)] = c[i].clone();
        }
    }
    let (group, rank) = cokernel(&m_cols);
    if rank != 0 {
        return Err(Error::Inconsistency("ell-class presentation rank".into()));
    }
    ell_sylow(&group, ell)
}
