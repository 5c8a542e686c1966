//! Summary tables over result records: per-ℓ and aggregate frequencies of
//! ℓ-rationality, trivial logarithmic class groups, trivial C_Z, and
//! undetermined outcomes.

use std::collections::BTreeMap;
use std::fmt::Write;

use anyhow::bail;

use crate::report::ResultRecord;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Bucket {
    pub count: u64,
    pub rational: u64,
    pub wcl_trivial: u64,
    pub cz_trivial: u64,
    pub undetermined: u64,
}

impl Bucket {
    fn add(&mut self, r: &ResultRecord) {
        self.count += 1;
        if r.rational {
            self.rational += 1;
        }
        if r.wcl == "1" {
            self.wcl_trivial += 1;
        }
        if r.v_c_z == "Trivial" {
            self.cz_trivial += 1;
        }
        if [&r.v_c_infty, &r.v_c_prime, &r.v_c_z]
            .iter()
            .any(|s| s.as_str() == "Undetermined")
        {
            self.undetermined += 1;
        }
    }

    fn frac(num: u64, den: u64) -> f64 {
        if den == 0 {
            0.0
        } else {
            num as f64 / den as f64
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Summary {
    pub per_ell: BTreeMap<u64, Bucket>,
    pub total: Bucket,
}

pub fn summarize(records: &[ResultRecord]) -> anyhow::Result<Summary> {
    if records.is_empty() {
        bail!("no records to summarize");
    }
    let mut per_ell: BTreeMap<u64, Bucket> = BTreeMap::new();
    let mut total = Bucket::default();
    for r in records {
        per_ell.entry(r.ell).or_default().add(r);
        total.add(r);
    }
    Ok(Summary { per_ell, total })
}

impl Summary {
    /// Fixed-width table, rows ordered by ascending ℓ, aggregate last.
    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>6} {:>7} {:>10} {:>10} {:>10} {:>12}",
            "ell", "pairs", "rational", "wcl=1", "C_Z=1", "undetermined"
        );
        let mut row = |label: String, b: &Bucket| {
            let _ = writeln!(
                out,
                "{:>6} {:>7} {:>10.4} {:>10.4} {:>10.4} {:>12}",
                label,
                b.count,
                Bucket::frac(b.rational, b.count),
                Bucket::frac(b.wcl_trivial, b.count),
                Bucket::frac(b.cz_trivial, b.count),
                b.undetermined
            );
        };
        for (ell, b) in &self.per_ell {
            row(ell.to_string(), b);
        }
        row("all".into(), &self.total);
        out
    }
}
