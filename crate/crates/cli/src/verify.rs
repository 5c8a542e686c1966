//! Self-verification suite: correctness criteria runnable both from the
//! `verify` subcommand and from the acceptance test target.
//!
//! Each criterion prints one pass/fail line. Oracles here are independent
//! of the library code paths they check: the knot oracle enumerates the
//! alternating square as a plain finite set, class numbers are recounted
//! from reduced forms, and the cross-route criteria compare invariants
//! computed through disjoint pipelines (ray-class towers vs logarithmic
//! divisor presentations).

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quadlog_core::abelian::{ell_sylow, knot_group, FinAbGroup, GroupHom};
use quadlog_core::invariants::{chevalley_ambiguous, ell_rationality, gras_log_q, ChevalleyInput};
use quadlog_core::logclass::{norm_obstruction, wcl, wcl_with_options, Normalization, WclOptions};
use quadlog_core::padic::{fermat_quotient, hensel_sqrt, iwasawa_log_rational, PadicInt};
use quadlog_core::quadfield::{class_group, class_number, is_fundamental, kronecker_i64};
use quadlog_core::verdicts::{verdict_c_infty, verdict_c_z, Status};

/// Outcome of one criterion.
#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "criterion {} ({}): {} — {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.details
        )
    }
}

/// Data carried from the real sweep (criterion 1) into criterion 8.
#[derive(Clone, Debug)]
pub struct RealPairOutcome {
    pub delta: i64,
    pub ell: u64,
    pub stabilized: bool,
    pub rational: bool,
    pub wcl_factors: String,
}

const ELL_SET: [u64; 5] = [3, 5, 7, 11, 13];
const WCL_PRECISION: u32 = 8;
const M_MAX: u32 = 12;

/// First real quadratic pair (ascending Δ, then ℓ) in the criterion-1
/// sweep with a nontrivial logarithmic class group, frozen as a
/// regression value once discovered by the sweep itself.
pub const FIRST_NONTRIVIAL_WCL_REAL: (i64, u64, &str) = (253, 3, "3");

fn real_sweep_pairs(quick: bool) -> Vec<(i64, u64)> {
    let hi = if quick { 120 } else { 500 };
    let ells: &[u64] = if quick { &ELL_SET[..2] } else { &ELL_SET };
    let mut pairs = Vec::new();
    for delta in 2..hi {
        if !is_fundamental(delta) {
            continue;
        }
        for &ell in ells {
            if kronecker_i64(delta, ell as i64) == 1 {
                pairs.push((delta, ell));
            }
        }
    }
    pairs
}

/// Criterion 1: on every stabilized real split pair the torsion route
/// (T_K = 1) agrees with the group route. The provable identity is
/// T_K = 1 ⟺ (Cl_ℓ = 1 ∧ wCl = 1 ∧ Θ = 1), with Θ the logarithmic norm
/// obstruction; the two-invariant form without Θ fails exactly on the
/// density-1/ℓ locus where the fundamental unit embeds as a root of unity
/// mod ℓ², and every such exception must carry that signature.
pub fn criterion_1_cross_route(quick: bool) -> (CriterionReport, Vec<RealPairOutcome>) {
    let pairs = real_sweep_pairs(quick);
    let mut outcomes = Vec::new();
    let mut disagreements = Vec::new();
    let mut malformed_exceptions = Vec::new();
    let mut theta_exceptions = 0usize;
    let mut unstabilized = 0usize;
    let mut errors = Vec::new();
    for &(delta, ell) in &pairs {
        let computed = (|| -> anyhow::Result<RealPairOutcome> {
            let r = ell_rationality(delta, ell, M_MAX)?;
            let w = wcl(delta, ell, WCL_PRECISION)?;
            let theta = norm_obstruction(delta, ell, WCL_PRECISION)?;
            let cl = ell_sylow(&class_group(delta)?, ell)?;
            let stab = r.stabilized && w.stabilized && theta.stabilized;
            if stab {
                let route_torsion = r.is_rational;
                let route_groups = cl.is_trivial() && w.group.is_trivial() && theta.is_trivial();
                if route_torsion != route_groups {
                    disagreements.push(format!(
                        "({delta}, {ell}): T_K trivial = {route_torsion}, \
                         (Cl, wCl, theta) trivial = {route_groups}"
                    ));
                }
                // the two-invariant form: exceptions allowed only with the
                // unit-norm-obstruction signature
                let two_form = cl.is_trivial() && w.group.is_trivial();
                if route_torsion != two_form {
                    if theta.is_trivial() || route_torsion {
                        malformed_exceptions.push(format!(
                            "({delta}, {ell}): exception without the obstruction signature"
                        ));
                    } else {
                        theta_exceptions += 1;
                    }
                }
                // the verdict engine performs the same cross-check and must
                // not report an internal inconsistency
                verdict_c_z(delta, ell, &r, &cl, &w, Some(&theta))?;
            }
            Ok(RealPairOutcome {
                delta,
                ell,
                stabilized: stab,
                rational: r.is_rational,
                wcl_factors: crate::report::format_group(&w.group),
            })
        })();
        match computed {
            Ok(o) => {
                if !o.stabilized {
                    unstabilized += 1;
                }
                outcomes.push(o);
            }
            Err(e) => errors.push(format!("({delta}, {ell}): {e}")),
        }
    }
    let passed = disagreements.is_empty() && malformed_exceptions.is_empty() && errors.is_empty();
    let mut details = format!(
        "{} split pairs, {} stabilized, 0 disagreements on the three-invariant identity; \
         {} unit-norm-obstruction pairs where the two-invariant form needs theta",
        pairs.len(),
        pairs.len() - unstabilized,
        theta_exceptions
    );
    if !disagreements.is_empty() {
        let _ = write!(details, "; DISAGREEMENTS: {}", disagreements.join("; "));
    }
    if !malformed_exceptions.is_empty() {
        let _ = write!(
            details,
            "; MALFORMED EXCEPTIONS: {}",
            malformed_exceptions.join("; ")
        );
    }
    if !errors.is_empty() {
        let _ = write!(details, "; ERRORS: {}", errors.join("; "));
    }
    (
        CriterionReport {
            id: 1,
            name: "cross-route agreement on real fields",
            passed,
            details,
        },
        outcomes,
    )
}

/// Criterion 2: imaginary pairs: C_Z verdict equals triviality of wCl
/// exactly, and C_infty is Nontrivial for every imaginary field.
pub fn criterion_2_imaginary(quick: bool) -> CriterionReport {
    let lo = if quick { -120 } else { -500 };
    let ells: &[u64] = if quick { &ELL_SET[..2] } else { &ELL_SET };
    let mut n = 0usize;
    let mut failures = Vec::new();
    for delta in (lo..0).rev() {
        if !is_fundamental(delta) {
            continue;
        }
        for &ell in ells {
            if kronecker_i64(delta, ell as i64) != 1 {
                continue;
            }
            n += 1;
            let check = (|| -> anyhow::Result<()> {
                let r = ell_rationality(delta, ell, M_MAX)?;
                let w = wcl(delta, ell, WCL_PRECISION)?;
                let cl = ell_sylow(&class_group(delta)?, ell)?;
                let vi = verdict_c_infty(delta, ell, &r)?;
                if vi.status != Status::Nontrivial {
                    anyhow::bail!("C_infty = {} for an imaginary field", vi.status);
                }
                let vz = verdict_c_z(delta, ell, &r, &cl, &w, None)?;
                if w.stabilized {
                    let want = if w.group.is_trivial() {
                        Status::Trivial
                    } else {
                        Status::Nontrivial
                    };
                    if vz.status != want {
                        anyhow::bail!("C_Z = {} but wCl trivial = {}", vz.status, want);
                    }
                } else if vz.status != Status::Undetermined {
                    anyhow::bail!("unstabilized wCl must leave C_Z undetermined");
                }
                Ok(())
            })();
            if let Err(e) = check {
                failures.push(format!("({delta}, {ell}): {e}"));
            }
        }
    }
    CriterionReport {
        id: 2,
        name: "imaginary verdict consistency",
        passed: failures.is_empty(),
        details: if failures.is_empty() {
            format!("{n} split pairs, all verdicts consistent")
        } else {
            format!("failures: {}", failures.join("; "))
        },
    }
}

// --- knot oracle (enumeration, independent of the SNF path) ---

fn wedge_moduli(exps: &[u32]) -> Vec<u64> {
    let mut m = Vec::new();
    for i in 0..exps.len() {
        for j in i + 1..exps.len() {
            m.push(3u64.pow(exps[i].min(exps[j])));
        }
    }
    m
}

fn oracle_knot(exps: &[u32], subs: &[Vec<Vec<i64>>]) -> Vec<u32> {
    let moduli = wedge_moduli(exps);
    if moduli.is_empty() {
        return Vec::new();
    }
    let k = exps.len();
    let mut gens: Vec<Vec<u64>> = Vec::new();
    for images in subs {
        for a in 0..images.len() {
            for b in a + 1..images.len() {
                let (u, v) = (&images[a], &images[b]);
                let mut w = Vec::with_capacity(moduli.len());
                let mut idx = 0;
                for i in 0..k {
                    for j in i + 1..k {
                        let m = moduli[idx] as i64;
                        w.push((u[i] * v[j] - u[j] * v[i]).rem_euclid(m) as u64);
                        idx += 1;
                    }
                }
                gens.push(w);
            }
        }
    }
    // subgroup closure in the explicit ambient
    let mut set: BTreeSet<Vec<u64>> = BTreeSet::new();
    set.insert(vec![0; moduli.len()]);
    let mut frontier: Vec<Vec<u64>> = vec![vec![0; moduli.len()]];
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y: Vec<u64> = x
                .iter()
                .zip(g)
                .zip(&moduli)
                .map(|((a, b), m)| (a + b) % m)
                .collect();
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    // quotient structure from element-order counts
    let vals: Vec<u32> = moduli.iter().map(|m| m.ilog(3)).collect();
    let max_v = vals.iter().copied().max().unwrap_or(0);
    let mut log_n = Vec::new();
    for kk in 0..=max_v {
        let in_scaled = set
            .iter()
            .filter(|x| {
                x.iter()
                    .zip(&vals)
                    .all(|(&c, &v)| c % 3u64.pow(kk.min(v)) == 0)
            })
            .count() as u128;
        let ker: u32 = vals.iter().map(|&v| kk.min(v)).sum();
        let n = in_scaled * 3u128.pow(ker) / set.len() as u128;
        let mut e = 0u32;
        let mut nn = n;
        while nn > 1 {
            nn /= 3;
            e += 1;
        }
        log_n.push(e);
    }
    let mut lambdas = Vec::new();
    for kk in 1..=max_v as usize {
        lambdas.push(log_n[kk] - log_n[kk - 1]);
    }
    let depth = lambdas.first().copied().unwrap_or(0);
    let mut out = Vec::new();
    for i in 0..depth {
        out.push(lambdas.iter().filter(|&&r| r > i).count() as u32);
    }
    out.sort_unstable();
    out
}

fn library_knot(exps: &[u32], subs: &[Vec<Vec<i64>>]) -> anyhow::Result<Vec<u32>> {
    let orders: Vec<BigUint> = exps.iter().map(|&e| BigUint::from(3u32).pow(e)).collect();
    let g = FinAbGroup::from_orders(&orders)?;
    let mut homs = Vec::new();
    for images in subs {
        let imgs: Vec<Vec<BigInt>> = images
            .iter()
            .map(|v| v.iter().map(|&c| BigInt::from(c)).collect())
            .collect();
        homs.push(GroupHom::from_generator_images(&g, &imgs)?);
    }
    let k = knot_group(&g, &homs)?;
    Ok(k.ell_exponents(3).expect("3-group"))
}

fn random_knot_instance(rng: &mut ChaCha8Rng) -> (Vec<u32>, Vec<Vec<Vec<i64>>>) {
    let n = rng.gen_range(1..=6u32);
    let mut exps = Vec::new();
    let mut left = n;
    while left > 0 {
        let part = rng.gen_range(1..=left);
        exps.push(part);
        left -= part;
    }
    exps.sort_unstable();
    let k = exps.len();
    let n_subs = rng.gen_range(0..=3usize);
    let mut subs = Vec::new();
    for _ in 0..n_subs {
        let n_gens = rng.gen_range(1..=3usize);
        let images: Vec<Vec<i64>> = (0..n_gens)
            .map(|_| {
                (0..k)
                    .map(|i| rng.gen_range(0..3i64.pow(exps[i])))
                    .collect()
            })
            .collect();
        subs.push(images);
    }
    (exps, subs)
}

/// Criterion 3: 500 random instances with |G| ≤ 3^6 agree with the
/// enumeration oracle; appending a cyclic subgroup never changes the knot.
pub fn criterion_3_knot_oracle(quick: bool) -> CriterionReport {
    let count = if quick { 100 } else { 500 };
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b6e6f74_0005);
    let mut failures = Vec::new();
    for case in 0..count {
        let (exps, mut subs) = random_knot_instance(&mut rng);
        match library_knot(&exps, &subs) {
            Ok(lib) => {
                let orc = oracle_knot(&exps, &subs);
                if lib != orc {
                    failures.push(format!("case {case}: lib {lib:?} vs oracle {orc:?}"));
                    continue;
                }
                // cyclic-append invariance
                let k = exps.len();
                let w: Vec<i64> = (0..k)
                    .map(|i| rng.gen_range(0..3i64.pow(exps[i])))
                    .collect();
                subs.push(vec![w]);
                match library_knot(&exps, &subs) {
                    Ok(after) => {
                        if after != lib {
                            failures.push(format!("case {case}: cyclic append changed the knot"));
                        }
                    }
                    Err(e) => failures.push(format!("case {case}: {e}")),
                }
            }
            Err(e) => failures.push(format!("case {case}: {e}")),
        }
    }
    CriterionReport {
        id: 3,
        name: "knot-group oracle equivalence",
        passed: failures.is_empty(),
        details: if failures.is_empty() {
            format!("{count} random instances plus cyclic-append invariance")
        } else {
            failures.join("; ")
        },
    }
}

/// Criterion 4: Chevalley pins: h/n in the unramified case, and the
/// genus-count instance (two ramified primes over a quadratic extension)
/// matching the computed ambiguous order for Δ = −20.
pub fn criterion_4_chevalley() -> CriterionReport {
    let mut failures = Vec::new();
    match chevalley_ambiguous(&ChevalleyInput::unramified(3, 3)) {
        Ok(v) if v == BigUint::from(1u32) => {}
        other => failures.push(format!("unramified h=3, n=3: {other:?}")),
    }
    let genus = ChevalleyInput {
        class_number: 1,
        degree: 2,
        ramification_indices: vec![2, 2],
        unit_norm_index: 1,
    };
    match chevalley_ambiguous(&genus) {
        Ok(v) if v == BigUint::from(2u32) => {
            // cross-check against the genus bound 2^{t−1} realized by
            // Δ = −20 (t = 2 ramified primes, h = 2 with full 2-part)
            match class_group(-20) {
                Ok(g) if g.order() == BigUint::from(2u32) => {}
                other => failures.push(format!("h(−20) cross-check: {other:?}")),
            }
        }
        other => failures.push(format!("genus instance: {other:?}")),
    }
    match chevalley_ambiguous(&ChevalleyInput::unramified(1, 1)) {
        Ok(v) if v == BigUint::from(1u32) => {}
        other => failures.push(format!("trivial extension: {other:?}")),
    }
    if chevalley_ambiguous(&ChevalleyInput::unramified(3, 2)).is_ok() {
        failures.push("non-integral input was not flagged".into());
    }
    CriterionReport {
        id: 4,
        name: "Chevalley ambiguous class pins",
        passed: failures.is_empty(),
        details: if failures.is_empty() {
            "unramified h/n, genus instance, integrality flag".into()
        } else {
            failures.join("; ")
        },
    }
}

/// Criterion 5: ℓ-adic core: Log homomorphism on random unit pairs at
/// m ∈ {4, 8, 12}, the Fermat-quotient congruence, the Wieferich pin, and
/// Hensel round-trips at every precision.
pub fn criterion_5_padic(quick: bool) -> CriterionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(0x70616469_0005);
    let pair_target = if quick { 120 } else { 1000 };
    let mut failures = Vec::new();
    let ells = [3u64, 5, 7, 11, 13];
    let mut done = 0usize;
    'outer: for m in [4u32, 8, 12] {
        loop {
            if done >= pair_target * (m as usize / 4) / 3 && m != 12 {
                break;
            }
            if done >= pair_target && m == 12 {
                break 'outer;
            }
            let ell = ells[rng.gen_range(0..ells.len())];
            let a = rng.gen_range(2i64..100_000);
            let b = rng.gen_range(2i64..100_000);
            if a % ell as i64 == 0 || b % ell as i64 == 0 {
                continue;
            }
            done += 1;
            let ra = BigRational::from_integer(BigInt::from(a));
            let rb = BigRational::from_integer(BigInt::from(b));
            let la = iwasawa_log_rational(&ra, ell, m).unwrap();
            let lb = iwasawa_log_rational(&rb, ell, m).unwrap();
            let lab = iwasawa_log_rational(&(ra * rb), ell, m).unwrap();
            if &la + &lb != lab {
                failures.push(format!("Log({a}·{b}) mod {ell}^{m}"));
            }
        }
    }
    // Log(q^{ℓ−1}) ≡ ℓ·FermatQuotient mod ℓ²
    for (q, ell) in [(2u64, 5u64), (3, 7), (2, 1093), (10, 13), (7, 3)] {
        let fq = fermat_quotient(&BigInt::from(q), ell).unwrap();
        let qp = BigRational::from_integer(BigInt::from(q)).pow((ell - 1) as i32);
        let lq = iwasawa_log_rational(&qp, ell, 2).unwrap();
        let want = PadicInt::new(ell, 2, BigUint::from(ell) * fq).unwrap();
        if lq != want {
            failures.push(format!("Fermat congruence for q={q}, ell={ell}"));
        }
    }
    // Wieferich pin
    match gras_log_q(2, 1093, 1) {
        Ok(g) if g.is_zero_residue() => {}
        other => failures.push(format!("Wieferich pin: {other:?}")),
    }
    // Hensel round-trips exact at all precisions
    for m in 1..=12u32 {
        for (a, ell) in [(-1i64, 5u64), (2, 7), (4, 7), (13, 3), (3, 11)] {
            match hensel_sqrt(&BigInt::from(a), ell, m) {
                Ok(r) => {
                    let sq = &r * &r;
                    let want = PadicInt::from_bigint(ell, m, &BigInt::from(a)).unwrap();
                    if sq != want {
                        failures.push(format!("hensel a={a}, ell={ell}, m={m}"));
                    }
                }
                Err(e) => failures.push(format!("hensel a={a}, ell={ell}, m={m}: {e}")),
            }
        }
    }
    CriterionReport {
        id: 5,
        name: "ell-adic core properties",
        passed: failures.is_empty(),
        details: if failures.is_empty() {
            format!("{done} Log pairs, Fermat congruences, Wieferich pin, Hensel round-trips")
        } else {
            failures.join("; ")
        },
    }
}

/// Criterion 6: wCl invariant factors identical under embedding swap,
/// witness rescaling, degree rescaling, and precision increase.
pub fn criterion_6_wcl_robustness(quick: bool) -> CriterionReport {
    let target = if quick { 10 } else { 50 };
    let mut rng = ChaCha8Rng::seed_from_u64(0x77636c00_0006);
    let mut tested = 0usize;
    let mut failures = Vec::new();
    let m = 4u32;
    let mut seen = BTreeSet::new();
    while tested < target {
        let delta = if rng.gen_bool(0.5) {
            rng.gen_range(2i64..300)
        } else {
            -rng.gen_range(3i64..300)
        };
        let ell = ELL_SET[rng.gen_range(0..ELL_SET.len())];
        if !is_fundamental(delta)
            || kronecker_i64(delta, ell as i64) != 1
            || !seen.insert((delta, ell))
        {
            continue;
        }
        tested += 1;
        let check = (|| -> anyhow::Result<()> {
            let base = wcl(delta, ell, m)?;
            let variants = [
                WclOptions {
                    swap_embeddings: true,
                    ..Default::default()
                },
                WclOptions {
                    witness_ell_power: 1,
                    witness_negate: true,
                    witness_unit_power: i64::from(delta > 0),
                    ..Default::default()
                },
                WclOptions {
                    normalization: Normalization::Ell,
                    degree_unit_scale: 2,
                    ..Default::default()
                },
            ];
            for (i, opts) in variants.iter().enumerate() {
                let v = wcl_with_options(delta, ell, m, opts)?;
                if v.group != base.group {
                    anyhow::bail!("variant {i} changed the group");
                }
            }
            if base.stabilized {
                let higher = wcl(delta, ell, m + 2)?;
                if higher.group != base.group {
                    anyhow::bail!("precision increase changed a stabilized group");
                }
            }
            Ok(())
        })();
        if let Err(e) = check {
            failures.push(format!("({delta}, {ell}): {e}"));
        }
    }
    CriterionReport {
        id: 6,
        name: "wCl robustness",
        passed: failures.is_empty(),
        details: if failures.is_empty() {
            format!("{tested} split pairs, 4 invariance checks each")
        } else {
            failures.join("; ")
        },
    }
}

/// Criterion 7: class numbers from the composition-based group structure
/// match the raw reduced-form/cycle counts for all fundamental |Δ| ≤ 10^4.
pub fn criterion_7_class_numbers(quick: bool) -> CriterionReport {
    let bound = if quick { 1500 } else { 10_000 };
    let mut checked = 0u64;
    let mut failures = Vec::new();
    for a in 3..=bound {
        for delta in [-a, a] {
            if !is_fundamental(delta) {
                continue;
            }
            checked += 1;
            match (class_group(delta), class_number(delta)) {
                (Ok(g), Ok(h)) => {
                    if g.order() != BigUint::from(h) {
                        failures.push(format!("disc {delta}: structure {g} vs count {h}"));
                    }
                }
                (a, b) => failures.push(format!("disc {delta}: {a:?} / {b:?}")),
            }
            if failures.len() > 8 {
                break;
            }
        }
    }
    // the specific pin
    match class_group(-23) {
        Ok(g) if g == FinAbGroup::from_u64_orders(&[3]).unwrap() => {}
        other => failures.push(format!("h(−23) pin: {other:?}")),
    }
    CriterionReport {
        id: 7,
        name: "class-group ground truth",
        passed: failures.is_empty(),
        details: if failures.is_empty() {
            format!("{checked} fundamental discriminants, h(−23) = 3 pinned")
        } else {
            failures.join("; ")
        },
    }
}

/// Criterion 8: in the criterion-1 sweep the ℓ-rational fraction exceeds
/// 0.5, and the first real pair with nontrivial wCl matches the frozen
/// regression value.
pub fn criterion_8_heuristic(outcomes: &[RealPairOutcome], quick: bool) -> CriterionReport {
    let stabilized: Vec<_> = outcomes.iter().filter(|o| o.stabilized).collect();
    let mut failures = Vec::new();
    if stabilized.is_empty() {
        failures.push("no stabilized outcomes".to_string());
    }
    let rational = stabilized.iter().filter(|o| o.rational).count();
    let frac = rational as f64 / stabilized.len().max(1) as f64;
    if frac <= 0.5 {
        failures.push(format!("rational fraction {frac:.3} is not above 0.5"));
    }
    // the regression pin lies beyond the reduced quick range
    let mut pin_note = String::new();
    if quick {
        pin_note = "; pin skipped (reduced range)".into();
    } else {
        let first_nontrivial = stabilized.iter().find(|o| o.wcl_factors != "1");
        match first_nontrivial {
            Some(o) => {
                let (d, l, f) = FIRST_NONTRIVIAL_WCL_REAL;
                if (o.delta, o.ell, o.wcl_factors.as_str()) != (d, l, f) {
                    failures.push(format!(
                        "first nontrivial wCl pair is ({}, {}) = {}, pinned ({}, {}) = {}",
                        o.delta, o.ell, o.wcl_factors, d, l, f
                    ));
                } else {
                    pin_note = format!("; first nontrivial wCl at ({d}, {l}) = {f}");
                }
            }
            None => failures.push("no real pair with nontrivial wCl found".to_string()),
        }
    }
    CriterionReport {
        id: 8,
        name: "rationality heuristic and wCl regression pin",
        passed: failures.is_empty(),
        details: if failures.is_empty() {
            format!(
                "rational fraction {:.3} over {} stabilized pairs{}",
                frac,
                stabilized.len(),
                pin_note
            )
        } else {
            failures.join("; ")
        },
    }
}

/// Run criteria 1–6 (the default verify level) or 1–8 (full).
pub fn run(full: bool, quick: bool) -> Vec<CriterionReport> {
    let (c1, outcomes) = criterion_1_cross_route(quick);
    let mut out = vec![
        c1,
        criterion_2_imaginary(quick),
        criterion_3_knot_oracle(quick),
        criterion_4_chevalley(),
        criterion_5_padic(quick),
        criterion_6_wcl_robustness(quick),
    ];
    if full {
        out.push(criterion_7_class_numbers(quick));
        out.push(criterion_8_heuristic(&outcomes, quick));
    }
    out
}
