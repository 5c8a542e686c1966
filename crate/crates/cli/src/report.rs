//! Full invariant computation for one (Δ, ℓ) pair, and its flat record
//! encodings (CSV and JSONL carry the same thirteen fields).

use std::time::Instant;

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use quadlog_core::abelian::{ell_sylow, FinAbGroup};
use quadlog_core::invariants::{ell_rationality, RationalityReport};
use quadlog_core::logclass::{norm_obstruction, wcl, LogClassGroup, NormObstruction};
use quadlog_core::quadfield::{class_group, is_totally_ell_adic};
use quadlog_core::verdicts::{
    verdict_c_infty, verdict_c_prime_infty, verdict_c_z, Status, Verdict,
};

/// Everything computed for one pair, with the verdicts.
#[derive(Clone, Debug)]
pub struct PairReport {
    pub delta: i64,
    pub ell: u64,
    pub m: u32,
    pub m_max: u32,
    pub cl_ell: FinAbGroup,
    pub rationality: RationalityReport,
    pub wcl: LogClassGroup,
    pub theta: Option<NormObstruction>,
    pub v_c_infty: Verdict,
    pub v_c_prime: Verdict,
    pub v_c_z: Verdict,
    pub ms: u64,
}

/// Compute the full invariant set for (Δ, ℓ): ℓ-class group, rationality
/// report up to `m_max`, logarithmic class group at precision `m`, and the
/// three verdicts.
pub fn compute_pair(delta: i64, ell: u64, m: u32, m_max: u32) -> anyhow::Result<PairReport> {
    let start = Instant::now();
    if !is_totally_ell_adic(delta, ell)? {
        bail!(
            "ell = {ell} is not split in Q(sqrt {delta}): the field is not totally ell-adic there"
        );
    }
    let cl = class_group(delta).context("class group")?;
    let cl_ell = ell_sylow(&cl, ell)?;
    let rationality = ell_rationality(delta, ell, m_max).context("rationality report")?;
    let w = wcl(delta, ell, m).context("logarithmic class group")?;
    let theta = if delta > 0 {
        Some(norm_obstruction(delta, ell, m).context("norm obstruction")?)
    } else {
        None
    };
    let v_c_infty = verdict_c_infty(delta, ell, &rationality)?;
    let v_c_prime = verdict_c_prime_infty(delta, ell, &w)?;
    let v_c_z = verdict_c_z(delta, ell, &rationality, &cl_ell, &w, theta.as_ref())?;
    Ok(PairReport {
        delta,
        ell,
        m,
        m_max,
        cl_ell,
        rationality,
        wcl: w,
        theta,
        v_c_infty,
        v_c_prime,
        v_c_z,
        ms: start.elapsed().as_millis() as u64,
    })
}

impl PairReport {
    pub fn any_undetermined(&self) -> bool {
        [&self.v_c_infty, &self.v_c_prime, &self.v_c_z]
            .iter()
            .any(|v| v.status == Status::Undetermined)
    }

    pub fn to_record(&self) -> ResultRecord {
        ResultRecord {
            delta: self.delta,
            ell: self.ell,
            split: true,
            h_ell: format_group(&self.cl_ell),
            wcl: format_group(&self.wcl.group),
            rank: self.rationality.rank,
            torsion: format_group(&self.rationality.torsion),
            rational: self.rationality.is_rational,
            v_c_infty: self.v_c_infty.status.to_string(),
            v_c_prime: self.v_c_prime.status.to_string(),
            v_c_z: self.v_c_z.status.to_string(),
            stabilized: self.rationality.stabilized
                && self.wcl.stabilized
                && self.theta.as_ref().map_or(true, |t| t.stabilized),
            ms: self.ms,
        }
    }

    /// Human-readable report for the `field` subcommand.
    pub fn human(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "field  delta = {}, ell = {}", self.delta, self.ell);
        let _ = writeln!(out, "  split            : true");
        let _ = writeln!(out, "  ell-class group  : {}", self.cl_ell);
        let _ = writeln!(
            out,
            "  wCl              : {}  (precision ell^{}, stabilized = {})",
            self.wcl.group, self.wcl.precision, self.wcl.stabilized
        );
        if let Some(t) = &self.theta {
            let _ = writeln!(
                out,
                "  norm obstruction : Z/{}^{}  (stabilized = {})",
                self.ell, t.order_exponent, t.stabilized
            );
        }
        if self.rationality.stabilized {
            let _ = writeln!(
                out,
                "  rationality      : rank {}, torsion {}, window {}..{}  -> ell-rational = {}",
                self.rationality.rank,
                self.rationality.torsion,
                self.rationality.window.0,
                self.rationality.window.1,
                self.rationality.is_rational
            );
        } else {
            let _ = writeln!(
                out,
                "  rationality      : not stabilized by m_max = {}",
                self.m_max
            );
        }
        for v in [&self.v_c_infty, &self.v_c_prime, &self.v_c_z] {
            let _ = writeln!(out, "  {:<16} : {}", v.target.to_string(), v.status);
            for c in &v.justification {
                let _ = writeln!(out, "      [{}] {}", c.tag, c.statement);
                for i in &c.inputs {
                    let _ = writeln!(out, "        - {i}");
                }
            }
        }
        out
    }
}

/// Invariant factors as a compact token: "1" for the trivial group,
/// otherwise factors joined by 'x' (e.g. "3x9").
pub fn format_group(g: &FinAbGroup) -> String {
    if g.is_trivial() {
        return "1".into();
    }
    g.invariant_factors()
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("x")
}

/// Flat result record; the same thirteen fields appear in the CSV columns
/// (in this order) and in the JSONL objects.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub delta: i64,
    pub ell: u64,
    pub split: bool,
    pub h_ell: String,
    pub wcl: String,
    pub rank: u32,
    pub torsion: String,
    pub rational: bool,
    pub v_c_infty: String,
    pub v_c_prime: String,
    pub v_c_z: String,
    pub stabilized: bool,
    pub ms: u64,
}

pub const CSV_HEADER: &str =
    "delta,ell,split,h_ell,wcl,rank,torsion,rational,v_C_infty,v_Cprime,v_C_Z,stabilized,ms";

impl ResultRecord {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.delta,
            self.ell,
            self.split,
            self.h_ell,
            self.wcl,
            self.rank,
            self.torsion,
            self.rational,
            self.v_c_infty,
            self.v_c_prime,
            self.v_c_z,
            self.stabilized,
            self.ms
        )
    }

    pub fn from_csv(line: &str) -> anyhow::Result<ResultRecord> {
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 13 {
            bail!("expected 13 CSV fields, got {}", f.len());
        }
        Ok(ResultRecord {
            delta: f[0].parse().context("delta")?,
            ell: f[1].parse().context("ell")?,
            split: f[2].parse().context("split")?,
            h_ell: f[3].into(),
            wcl: f[4].into(),
            rank: f[5].parse().context("rank")?,
            torsion: f[6].into(),
            rational: f[7].parse().context("rational")?,
            v_c_infty: f[8].into(),
            v_c_prime: f[9].into(),
            v_c_z: f[10].into(),
            stabilized: f[11].parse().context("stabilized")?,
            ms: f[12].parse().context("ms")?,
        })
    }

    pub fn to_jsonl(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    /// Sort key for deterministic output: ascending |Δ| with negatives
    /// first at ties, then ℓ.
    pub fn sort_key(&self) -> (i64, i64, u64) {
        (self.delta.abs(), self.delta, self.ell)
    }
}
