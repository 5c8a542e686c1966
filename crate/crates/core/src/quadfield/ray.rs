//! Split-prime machinery: embeddings into Q_ℓ, residue units mod ℓ^m,
//! explicit class-group presentations with principal generators, and the
//! ℓ-part of ray class groups mod ℓ^m.
//!
//! The ray class group presentation follows the exact sequence
//! `1 → (O/ℓ^m)^×/im(units) → Cl_{ℓ^m} → Cl → 1`: generators are the two
//! residue principal-unit coordinates plus prime ideals generating the
//! class group; relations are the residue orders, the image of the global
//! units, and the class-group relation lattice lifted through principal
//! generators. Tensoring with Z_ℓ (taking ℓ-Sylow of the cokernel) kills
//! the prime-to-ℓ residue part that the presentation omits.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ideal::canonical_class_key;
use super::{
    fundamental_unit, is_totally_ell_adic, kronecker_i64, principal_generator, FieldDesc, QuadElem,
    QuadIdeal,
};
use crate::abelian::{cokernel, ell_sylow, in_row_span, FinAbGroup, IntMatrix};
use crate::error::{Error, Result};
use crate::padic::{ell_pow, hensel_sqrt, iwasawa_log, unit_ellpart_dlog, PadicInt};

/// The two places of K above a split ℓ.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Place {
    L,
    LBar,
}

impl Place {
    pub fn other(self) -> Place {
        match self {
            Place::L => Place::LBar,
            Place::LBar => Place::L,
        }
    }
}

/// A quadratic field together with a split odd prime ℓ and a fixed choice
/// of the two embeddings into Q_ℓ.
#[derive(Clone, Debug)]
pub struct SplitField {
    field: FieldDesc,
    ell: u64,
    swap: bool,
}

impl SplitField {
    pub fn new(delta: i64, ell: u64) -> Result<Self> {
        if !is_totally_ell_adic(delta, ell)? {
            return Err(Error::NotSplit { delta, ell });
        }
        let field = FieldDesc::new(delta)?;
        // ℓ odd and split never divides |μ_K| (the ℓ = 3, Δ = −3 case is
        // ramified), so torsion units have trivial ℓ-part
        debug_assert!(field.torsion_units() % ell as u32 != 0);
        Ok(SplitField {
            field,
            ell,
            swap: false,
        })
    }

    /// Same field with the two embeddings (and the two primes) exchanged.
    pub fn swapped(&self) -> SplitField {
        SplitField {
            swap: !self.swap,
            ..self.clone()
        }
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn delta(&self) -> i64 {
        self.field.delta()
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    /// The image of ω under the chosen embedding, mod ℓ^prec.
    pub fn omega_residue(&self, place: Place, prec: u32) -> Result<PadicInt> {
        let delta = self.delta();
        let r = hensel_sqrt(&BigInt::from(delta), self.ell, prec)?;
        let flip = matches!((place, self.swap), (Place::LBar, false) | (Place::L, true));
        let root = if flip {
            &PadicInt::zero(self.ell, prec)? - &r
        } else {
            r
        };
        let d = PadicInt::from_bigint(self.ell, prec, &BigInt::from(delta))?;
        let two_inv = PadicInt::from_bigint(self.ell, prec, &BigInt::from(2))?.inv()?;
        Ok(&(&d + &root) * &two_inv)
    }

    /// The prime ideals (l, l′) matching (ι_l, ι_{l′}): ι_l maps l into ℓZ_ℓ.
    pub fn primes_above_ell(&self) -> Result<(QuadIdeal, QuadIdeal)> {
        let w = self.omega_residue(Place::L, 1)?;
        let b = BigInt::from(self.ell) - BigInt::from(w.residue().clone());
        let l = QuadIdeal::new_primitive(self.delta(), BigInt::from(self.ell), b)?;
        let lbar = l.conj();
        debug_assert_ne!(l, lbar);
        Ok((l, lbar))
    }

    /// Decompose ι(x) = ℓ^v · u with u a unit known mod ℓ^m.
    pub fn embed(&self, x: &QuadElem, place: Place, m: u32) -> Result<(i64, PadicInt)> {
        if x.is_zero() {
            return Err(Error::ZeroArgument);
        }
        assert_eq!(x.delta(), self.delta(), "element of a different field");
        let ell = self.ell;
        let (a, b, d) = x.to_integral_triplet();
        // v_l(A+Bω) ≤ v_ℓ(N(A+Bω)); one padded precision is enough
        let num_norm = {
            let xi = QuadElem::new(
                x.delta(),
                BigRational::from_integer(a.clone()),
                BigRational::from_integer(b.clone()),
            );
            xi.norm().to_integer()
        };
        let v_norm = val_ell(&num_norm, ell);
        let v_den = val_ell(&d, ell);
        let prec = m + v_norm + v_den + 1;
        let w = self.omega_residue(place, prec)?;
        let num =
            &PadicInt::from_bigint(ell, prec, &a)? + &(&PadicInt::from_bigint(ell, prec, &b)? * &w);
        let v_num = num.valuation();
        if num.is_zero_residue() || prec - v_num < m {
            return Err(Error::PrecisionShortfall {
                required: prec + m,
                available: prec,
            });
        }
        let num_unit = PadicInt::new(ell, prec - v_num, num.residue() / ell_pow(ell, v_num))?;
        let den_unit = PadicInt::from_bigint(ell, m, &(&d / BigInt::from(ell).pow(v_den)))?;
        let unit = &num_unit.truncate(m)? * &den_unit.inv()?;
        Ok((v_num as i64 - v_den as i64, unit))
    }

    /// Iwasawa logarithm of ι(x), exact mod ℓ^m (the ℓ-power part of x is
    /// stripped by `Log ℓ = 0`).
    pub fn log_at(&self, x: &QuadElem, place: Place, m: u32) -> Result<PadicInt> {
        let (_, unit) = self.embed(x, place, m)?;
        iwasawa_log(&unit, m)
    }

    /// Discrete-log coordinates of a unit-at-ℓ element in the principal
    /// units of both completions, mod ℓ^{m−1}.
    pub fn dlog_pair(&self, x: &QuadElem, m: u32) -> Result<(PadicInt, PadicInt)> {
        let (v1, u1) = self.embed(x, Place::L, m)?;
        let (v2, u2) = self.embed(x, Place::LBar, m)?;
        if v1 != 0 || v2 != 0 {
            return Err(Error::NotAUnit(alloc::format!(
                "element has valuation ({v1}, {v2}) at the places above ell"
            )));
        }
        Ok((unit_ellpart_dlog(&u1)?, unit_ellpart_dlog(&u2)?))
    }
}

fn val_ell(n: &BigInt, ell: u64) -> u32 {
    if n.is_zero() {
        return 0;
    }
    let l = BigInt::from(ell);
    let mut v = 0;
    let mut n = n.abs();
    while (&n % &l).is_zero() {
        n /= &l;
        v += 1;
    }
    v
}

/// ℓ-part of the unit group of O/ℓ^m for split ℓ: two principal-unit
/// coordinates, each cyclic of order ℓ^{m−1}, with CRT discrete logs.
pub struct ResidueUnits {
    split: SplitField,
    m: u32,
    group: FinAbGroup,
}

impl ResidueUnits {
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn modulus_exponent(&self) -> u32 {
        self.m
    }

    /// Coordinates of a unit in the two principal-unit cyclic factors.
    pub fn dlog(&self, x: &QuadElem) -> Result<(PadicInt, PadicInt)> {
        self.split.dlog_pair(x, self.m)
    }
}

pub fn residue_units(delta: i64, ell: u64, m: u32) -> Result<ResidueUnits> {
    let split = SplitField::new(delta, ell)?;
    if m == 0 {
        return Err(Error::PrecisionShortfall {
            required: 1,
            available: 0,
        });
    }
    let group = if m == 1 {
        FinAbGroup::trivial()
    } else {
        let order = ell_pow(ell, m - 1);
        FinAbGroup::from_orders(&[order.clone(), order])?
    };
    Ok(ResidueUnits { split, m, group })
}

type ClassKey = (BigInt, BigInt);

/// Explicit class-group context: a dictionary from canonical (wide) class
/// keys to exponent vectors over a chosen generator list, built by the
/// relative-order algorithm. Every relation comes with the principal
/// generator that witnesses it.
pub struct ClassGroupCtx {
    delta: i64,
    gens: Vec<QuadIdeal>,
    rows: Vec<Vec<i64>>,
    gammas: Vec<QuadElem>,
    table: BTreeMap<ClassKey, Vec<i64>>,
}

impl ClassGroupCtx {
    /// Relation lattice of the subgroup generated by `gens`, with witnesses.
    pub fn for_generators(delta: i64, gens: Vec<QuadIdeal>) -> Result<Self> {
        let k = gens.len();
        let mut table: BTreeMap<ClassKey, (Vec<i64>, QuadIdeal)> = BTreeMap::new();
        table.insert(
            canonical_class_key(&QuadIdeal::unit(delta))?,
            (vec![0; k], QuadIdeal::unit(delta)),
        );
        let mut rows = Vec::new();
        let mut gammas = Vec::new();
        for i in 0..k {
            let g = &gens[i];
            let mut e = 1i64;
            let mut power = g.clone();
            let entry = loop {
                let key = canonical_class_key(&power)?;
                if let Some((v, _)) = table.get(&key) {
                    break v.clone();
                }
                e += 1;
                power = power.mul(g);
                if e > 10_000_000 {
                    return Err(Error::ResourceLimit("class order search".into()));
                }
            };
            // relation g_i^e = ∏_{j<i} g_j^{v_j}
            let mut row: Vec<i64> = entry.iter().map(|x| -x).collect();
            row[i] += e;
            let ideal = product_over(delta, &gens, &row);
            let gamma = principal_generator(&ideal)?;
            rows.push(row);
            gammas.push(gamma);
            // extend the dictionary by the new coset representatives
            let olds: Vec<(Vec<i64>, QuadIdeal)> = table.values().cloned().collect();
            let mut gp = QuadIdeal::unit(delta);
            for t in 1..e {
                gp = gp.mul(g);
                for (v, rep) in &olds {
                    let ideal = rep.mul(&gp);
                    let key = canonical_class_key(&ideal)?;
                    let mut vv = v.clone();
                    vv[i] += t;
                    // store a small canonical representative
                    let canon = QuadIdeal::new_primitive(delta, key.0.clone(), key.1.clone())?;
                    table.insert(key, (vv, canon));
                }
            }
        }
        let table = table.into_iter().map(|(key, (v, _))| (key, v)).collect();
        Ok(ClassGroupCtx {
            delta,
            gens,
            rows,
            gammas,
            table,
        })
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    pub fn generators(&self) -> &[QuadIdeal] {
        &self.gens
    }

    /// Lower-triangular relation rows (the lattice basis).
    pub fn relation_rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Witness generators: `∏ gens^row_i = (γ_i)`.
    pub fn witnesses(&self) -> &[QuadElem] {
        &self.gammas
    }

    /// Order of the subgroup generated by the generator list.
    pub fn subgroup_order(&self) -> u64 {
        self.table.len() as u64
    }

    /// Exponent vector of an ideal's class over the generators, if the
    /// class lies in the generated subgroup.
    pub fn class_vector(&self, ideal: &QuadIdeal) -> Result<Option<Vec<i64>>> {
        let key = canonical_class_key(ideal)?;
        Ok(self.table.get(&key).cloned())
    }
}

fn product_over(delta: i64, gens: &[QuadIdeal], row: &[i64]) -> QuadIdeal {
    let mut acc = QuadIdeal::unit(delta);
    for (g, &e) in gens.iter().zip(row) {
        if e != 0 {
            acc = acc.mul(&g.pow(e));
        }
    }
    acc
}

/// Wide (ordinary) class number: the narrow form class number corrected by
/// the fundamental-unit norm.
pub fn wide_class_number(delta: i64) -> Result<u64> {
    let narrow = super::class_number(delta)?;
    if delta < 0 {
        return Ok(narrow);
    }
    let u = fundamental_unit(delta)?;
    Ok(if u.norm == -1 { narrow } else { narrow / 2 })
}

/// Smallest odd split primes (≠ ℓ) whose classes generate the wide class
/// group, certified by regenerating its order from them.
pub fn class_generators(delta: i64, ell: u64) -> Result<Vec<QuadIdeal>> {
    class_generators_excluding(delta, Some(ell))
}

/// The wide (ordinary) class group with its structure, from the relation
/// lattice of a certified generator set.
pub fn wide_class_group(delta: i64) -> Result<FinAbGroup> {
    let gens = class_generators_excluding(delta, None)?;
    let ctx = ClassGroupCtx::for_generators(delta, gens.clone())?;
    let k = gens.len();
    let mut m = IntMatrix::new(k, ctx.relation_rows().len());
    for (j, row) in ctx.relation_rows().iter().enumerate() {
        for i in 0..k {
            m[(i, j)] = BigInt::from(row[i]);
        }
    }
    let (g, rank) = cokernel(&m);
    debug_assert_eq!(rank, 0);
    Ok(g)
}

fn class_generators_excluding(delta: i64, ell: Option<u64>) -> Result<Vec<QuadIdeal>> {
    let h = wide_class_number(delta)?;
    let mut gens: Vec<QuadIdeal> = Vec::new();
    if h == 1 {
        return Ok(gens);
    }
    let mut covered = 1u64;
    let mut q = 3u64;
    while covered < h {
        if q > 100_000 {
            return Err(Error::ResourceLimit(
                "split prime search for class generators".into(),
            ));
        }
        if Some(q) != ell && crate::abelian::is_prime_u64(q) && kronecker_i64(delta, q as i64) == 1
        {
            let p = QuadIdeal::prime_above(delta, q)?;
            let mut trial = gens.clone();
            trial.push(p);
            let ctx = ClassGroupCtx::for_generators(delta, trial.clone())?;
            if ctx.subgroup_order() > covered {
                covered = ctx.subgroup_order();
                gens = trial;
            }
        }
        q += 2;
    }
    Ok(gens)
}

/// ℓ-part of a ray class group mod ℓ^m, as a presentation with its
/// transition data.
pub struct RayClassData {
    pub modulus_exponent: u32,
    pub group: FinAbGroup,
    pub generator_ideals: Vec<QuadIdeal>,
    /// Relation rows over (u_l, u_l′ | ideal generators).
    relation_rows: Vec<Vec<BigInt>>,
}

impl RayClassData {
    /// Verify that the natural surjection onto the coarser level exists:
    /// every relation at this level maps into the coarser relation lattice
    /// (the generator labels are shared, so surjectivity on generators is
    /// by construction).
    pub fn check_transition(&self, coarser: &RayClassData) -> Result<()> {
        if coarser.modulus_exponent + 1 != self.modulus_exponent {
            return Err(Error::Malformed(
                "transition check expects consecutive levels".into(),
            ));
        }
        let basis = IntMatrix::from_rows(coarser.relation_rows.clone());
        for row in &self.relation_rows {
            if !in_row_span(&basis, row) {
                return Err(Error::Inconsistency(alloc::format!(
                    "level-{} relation does not map into level-{} lattice",
                    self.modulus_exponent,
                    coarser.modulus_exponent
                )));
            }
        }
        Ok(())
    }
}

/// The presentation underlying the ray class group mod ℓ^m: generators
/// (u_l, u_l′ | class generator ideals) and the relation rows, reusable by
/// the logarithmic-class construction.
pub struct RayPresentation {
    pub split: SplitField,
    pub gens: Vec<QuadIdeal>,
    pub ctx: ClassGroupCtx,
    pub rows: Vec<Vec<BigInt>>,
}

/// The ℓ-part of the ray class group of conductor ℓ^m (wide sense: no
/// infinite places in the modulus; for odd ℓ the narrow/wide difference is
/// prime to ℓ).
pub fn ray_class_group_ellpart(delta: i64, ell: u64, m: u32) -> Result<RayClassData> {
    let pres = ray_presentation(delta, ell, m)?;
    let (full, rank) = cokernel(&columns_matrix(2 + pres.gens.len(), &pres.rows));
    if rank != 0 {
        return Err(Error::Inconsistency(
            "ray class presentation is not of full rank".into(),
        ));
    }
    let group = ell_sylow(&full, ell)?;
    Ok(RayClassData {
        modulus_exponent: m,
        group,
        generator_ideals: pres.gens,
        relation_rows: pres.rows,
    })
}

pub(crate) fn columns_matrix(width: usize, cols: &[Vec<BigInt>]) -> IntMatrix {
    let mut m_cols = IntMatrix::new(width, cols.len());
    for (j, row) in cols.iter().enumerate() {
        for i in 0..width {
            m_cols[(i, j)] = row[i].clone();
        }
    }
    m_cols
}

pub fn ray_presentation(delta: i64, ell: u64, m: u32) -> Result<RayPresentation> {
    ray_presentation_for(SplitField::new(delta, ell)?, m)
}

/// Same presentation relative to a fixed (possibly swapped) embedding
/// choice: the residue coordinates follow the given split field.
pub fn ray_presentation_for(split: SplitField, m: u32) -> Result<RayPresentation> {
    let delta = split.delta();
    let ell = split.ell();
    if m == 0 {
        return Err(Error::PrecisionShortfall {
            required: 1,
            available: 0,
        });
    }
    let gens = class_generators(delta, ell)?;
    let ctx = ClassGroupCtx::for_generators(delta, gens.clone())?;
    let k = gens.len();
    let width = 2 + k;
    let mut rows: Vec<Vec<BigInt>> = Vec::new();

    if m >= 2 {
        let order = BigInt::from(ell_pow(ell, m - 1));
        let mut r1 = vec![BigInt::zero(); width];
        r1[0] = order.clone();
        rows.push(r1);
        let mut r2 = vec![BigInt::zero(); width];
        r2[1] = order;
        rows.push(r2);

        if split.field().is_real() {
            let eps = fundamental_unit(delta)?.epsilon;
            let (d1, d2) = split.dlog_pair(&eps, m)?;
            let mut r = vec![BigInt::zero(); width];
            r[0] = BigInt::from(d1.residue().clone());
            r[1] = BigInt::from(d2.residue().clone());
            rows.push(r);
        }
        // torsion units have trivial ℓ-part (checked on construction)

        for (row, gamma) in ctx.relation_rows().iter().zip(ctx.witnesses()) {
            let (g1, g2) = split.dlog_pair(gamma, m)?;
            let mut r = vec![BigInt::zero(); width];
            r[0] = -BigInt::from(g1.residue().clone());
            r[1] = -BigInt::from(g2.residue().clone());
            for (j, &n) in row.iter().enumerate() {
                r[2 + j] = BigInt::from(n);
            }
            rows.push(r);
        }
    } else {
        // m = 1: no ℓ-part in the residue units; the group is Cl itself,
        // with the residue coordinates pinned to zero
        let mut r1 = vec![BigInt::zero(); width];
        r1[0] = BigInt::one();
        rows.push(r1);
        let mut r2 = vec![BigInt::zero(); width];
        r2[1] = BigInt::one();
        rows.push(r2);
        for row in ctx.relation_rows() {
            let mut r = vec![BigInt::zero(); width];
            for (j, &n) in row.iter().enumerate() {
                r[2 + j] = BigInt::from(n);
            }
            rows.push(r);
        }
    }

    Ok(RayPresentation {
        split,
        gens,
        ctx,
        rows,
    })
}
