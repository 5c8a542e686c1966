//! The decision engine: triviality verdicts for the Iwasawa modules
//! attached to the cyclotomic tower (C_∞, C′_∞) and to the compositum of
//! Z_ℓ-extensions (C_Z), for totally ℓ-adic quadratic fields at odd ℓ.
//!
//! Each verdict is a pure function of the computed reports and carries a
//! justification chain of the equivalences used, with the invariant values
//! they were applied to. Undetermined (unstabilized evidence) is a
//! first-class outcome. Hypothesis failures (even ℓ, non-split ℓ) reject
//! the query instead of guessing.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::abelian::FinAbGroup;
use crate::error::{Error, Result};
use crate::invariants::RationalityReport;
use crate::logclass::{LogClassGroup, NormObstruction};
use crate::quadfield::is_totally_ell_adic;

/// The Iwasawa module a verdict is about.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Target {
    /// projective limit of the ℓ-class groups along the cyclotomic tower
    CInfinity,
    /// same limit for ℓ-classes of ℓ-ideals
    CPrimeInfinity,
    /// limit over the compositum of Z_ℓ-extensions
    CZ,
}

impl core::fmt::Display for Target {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Target::CInfinity => write!(f, "C_infty"),
            Target::CPrimeInfinity => write!(f, "C_prime_infty"),
            Target::CZ => write!(f, "C_Z"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Trivial,
    Nontrivial,
    Undetermined,
}

impl core::fmt::Display for Status {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Status::Trivial => write!(f, "Trivial"),
            Status::Nontrivial => write!(f, "Nontrivial"),
            Status::Undetermined => write!(f, "Undetermined"),
        }
    }
}

/// One applied equivalence: a stable tag, the statement it encodes, and
/// the invariant values it was applied to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Citation {
    pub tag: &'static str,
    pub statement: &'static str,
    pub inputs: Vec<String>,
}

/// A justified three-valued decision for one Iwasawa module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub target: Target,
    pub status: Status,
    pub justification: Vec<Citation>,
    pub preconditions_checked: Vec<String>,
}

const TAG_REAL_RATIONAL: &str = "cyclotomic-triviality";
const STMT_REAL_RATIONAL: &str = "C_infty vanishes iff the field is ell-rational and totally real";
const TAG_LOG_PRINCIPAL: &str = "log-principality";
const STMT_LOG_PRINCIPAL: &str =
    "C_prime_infty vanishes iff the logarithmic class group is trivial";
const TAG_REAL_CZ: &str = "real-CZ-equivalences";
const STMT_REAL_CZ: &str = "for real quadratic fields: C_Z = C_infty vanishes iff T_K = 1, \
     equivalently the ell-class group, the logarithmic class group and the logarithmic \
     norm obstruction are all trivial";
const TAG_IMAG_CZ: &str = "imaginary-CZ-equivalence";
const STMT_IMAG_CZ: &str =
    "for imaginary quadratic fields: C_Z vanishes iff the logarithmic class group is trivial";
const TAG_CM_NECESSARY: &str = "cm-necessary-conditions";
const STMT_CM_NECESSARY: &str = "if C_Z vanishes for a CM field then the real subfield is \
     ell-rational of degree at most 3 and the logarithmic class group is trivial";

fn check_hypotheses(delta: i64, ell: u64) -> Result<Vec<String>> {
    if !is_totally_ell_adic(delta, ell)? {
        return Err(Error::NotSplit { delta, ell });
    }
    Ok(vec![
        format!("ell = {ell} is an odd prime"),
        format!("ell splits completely in Q(sqrt {delta})"),
        "the tower above ell is tamely ramified (split odd ell)".into(),
    ])
}

/// Triviality of the Iwasawa module of the cyclotomic tower.
pub fn verdict_c_infty(delta: i64, ell: u64, rationality: &RationalityReport) -> Result<Verdict> {
    let preconditions_checked = check_hypotheses(delta, ell)?;
    let mut inputs = vec![format!("delta = {delta}"), format!("ell = {ell}")];
    let status = if delta < 0 {
        inputs.push("field is imaginary: the totally-real condition fails".into());
        Status::Nontrivial
    } else if !rationality.stabilized {
        inputs.push("rationality report not stabilized".into());
        Status::Undetermined
    } else {
        inputs.push(format!(
            "rank = {}, torsion = {}, stabilized over levels {}..{}",
            rationality.rank, rationality.torsion, rationality.window.0, rationality.window.1
        ));
        if rationality.is_rational {
            Status::Trivial
        } else {
            Status::Nontrivial
        }
    };
    let justification = if status == Status::Undetermined {
        vec![]
    } else {
        vec![Citation {
            tag: TAG_REAL_RATIONAL,
            statement: STMT_REAL_RATIONAL,
            inputs,
        }]
    };
    Ok(Verdict {
        target: Target::CInfinity,
        status,
        justification,
        preconditions_checked,
    })
}

/// Triviality of the ℓ-ideal-class limit along the cyclotomic tower.
pub fn verdict_c_prime_infty(delta: i64, ell: u64, wcl: &LogClassGroup) -> Result<Verdict> {
    let preconditions_checked = check_hypotheses(delta, ell)?;
    let inputs = vec![
        format!("delta = {delta}"),
        format!("ell = {ell}"),
        format!(
            "wCl = {} at precision ell^{}, stabilized = {}",
            wcl.group, wcl.precision, wcl.stabilized
        ),
    ];
    let status = if !wcl.stabilized {
        Status::Undetermined
    } else if wcl.group.is_trivial() {
        Status::Trivial
    } else {
        Status::Nontrivial
    };
    let justification = if status == Status::Undetermined {
        vec![]
    } else {
        vec![Citation {
            tag: TAG_LOG_PRINCIPAL,
            statement: STMT_LOG_PRINCIPAL,
            inputs,
        }]
    };
    Ok(Verdict {
        target: Target::CPrimeInfinity,
        status,
        justification,
        preconditions_checked,
    })
}

/// Triviality of the Iwasawa module over the compositum of the
/// Z_ℓ-extensions. For real fields the two computable routes (torsion
/// vanishing; class group plus logarithmic class group) are cross-checked
/// and a stabilized disagreement is a hard error, never resolved silently.
pub fn verdict_c_z(
    delta: i64,
    ell: u64,
    rationality: &RationalityReport,
    cl_ell: &FinAbGroup,
    wcl: &LogClassGroup,
    theta: Option<&NormObstruction>,
) -> Result<Verdict> {
    let preconditions_checked = check_hypotheses(delta, ell)?;
    if delta < 0 {
        let inputs = vec![
            format!("delta = {delta}"),
            format!("ell = {ell}"),
            format!(
                "wCl = {} at precision ell^{}, stabilized = {}",
                wcl.group, wcl.precision, wcl.stabilized
            ),
        ];
        let status = if !wcl.stabilized {
            Status::Undetermined
        } else if wcl.group.is_trivial() {
            Status::Trivial
        } else {
            Status::Nontrivial
        };
        let justification = if status == Status::Undetermined {
            vec![]
        } else {
            vec![Citation {
                tag: TAG_IMAG_CZ,
                statement: STMT_IMAG_CZ,
                inputs,
            }]
        };
        return Ok(Verdict {
            target: Target::CZ,
            status,
            justification,
            preconditions_checked,
        });
    }

    // real case: evaluate both routes (the group route needs the norm
    // obstruction alongside the class data)
    let route_torsion: Option<bool> = rationality.stabilized.then_some(rationality.is_rational);
    let route_groups: Option<bool> = theta.and_then(|t| {
        (wcl.stabilized && t.stabilized)
            .then_some(cl_ell.is_trivial() && wcl.group.is_trivial() && t.is_trivial())
    });
    if let (Some(a), Some(b)) = (route_torsion, route_groups) {
        if a != b {
            return Err(Error::Inconsistency(format!(
                "stabilized routes disagree for (delta, ell) = ({delta}, {ell}): \
                 T_K trivial = {a}, (Cl_ell, wCl, norm obstruction trivial) = {b}"
            )));
        }
    }
    let decided = route_torsion.or(route_groups);
    let mut justification = Vec::new();
    if let Some(trivial) = decided {
        let mut inputs = vec![format!("delta = {delta}"), format!("ell = {ell}")];
        if route_torsion.is_some() {
            inputs.push(format!(
                "T_K = {} (stabilized over levels {}..{})",
                rationality.torsion, rationality.window.0, rationality.window.1
            ));
        }
        if route_groups.is_some() {
            inputs.push(format!("Cl_ell = {cl_ell}"));
            inputs.push(format!(
                "wCl = {} at precision ell^{}, stabilized",
                wcl.group, wcl.precision
            ));
            if let Some(t) = theta {
                inputs.push(format!("norm obstruction = Z/{}^{}", ell, t.order_exponent));
            }
        }
        if route_torsion.is_some() && route_groups.is_some() {
            inputs.push("both routes agree".into());
        }
        justification.push(Citation {
            tag: TAG_REAL_CZ,
            statement: STMT_REAL_CZ,
            inputs,
        });
        return Ok(Verdict {
            target: Target::CZ,
            status: if trivial {
                Status::Trivial
            } else {
                Status::Nontrivial
            },
            justification,
            preconditions_checked,
        });
    }
    Ok(Verdict {
        target: Target::CZ,
        status: Status::Undetermined,
        justification,
        preconditions_checked,
    })
}

/// Abstract descriptor of a CM field over a totally real subfield, for the
/// necessary-conditions-only test below.
#[derive(Clone, Debug)]
pub struct CmDescriptor {
    /// degree of the totally real subfield over Q
    pub plus_degree: u32,
    /// ℓ-rationality of the real subfield, when known
    pub plus_rational: Option<bool>,
    /// triviality of the logarithmic class group, when known
    pub wcl_trivial: Option<bool>,
}

/// Necessary conditions for C_Z = 1 over a CM field: any violation forces
/// Nontrivial; satisfaction alone proves nothing (Undetermined), since
/// only one direction is available beyond the quadratic case.
pub fn verdict_c_z_cm_necessary(desc: &CmDescriptor) -> Verdict {
    let mut inputs = vec![format!("degree of real subfield = {}", desc.plus_degree)];
    if let Some(r) = desc.plus_rational {
        inputs.push(format!("real subfield ell-rational = {r}"));
    }
    if let Some(w) = desc.wcl_trivial {
        inputs.push(format!("wCl trivial = {w}"));
    }
    let violated = desc.plus_degree > 3
        || desc.plus_rational == Some(false)
        || desc.wcl_trivial == Some(false);
    Verdict {
        target: Target::CZ,
        status: if violated {
            Status::Nontrivial
        } else {
            Status::Undetermined
        },
        justification: if violated {
            vec![Citation {
                tag: TAG_CM_NECESSARY,
                statement: STMT_CM_NECESSARY,
                inputs,
            }]
        } else {
            vec![]
        },
        preconditions_checked: vec!["necessary-conditions check only".into()],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::ell_rationality;
    use crate::logclass::wcl;
    use crate::quadfield::class_group;

    fn full_reports(
        delta: i64,
        ell: u64,
    ) -> (
        RationalityReport,
        FinAbGroup,
        LogClassGroup,
        Option<NormObstruction>,
    ) {
        let r = ell_rationality(delta, ell, 12).unwrap();
        let cl = crate::abelian::ell_sylow(&class_group(delta).unwrap(), ell).unwrap();
        let w = wcl(delta, ell, 4).unwrap();
        let t = (delta > 0).then(|| crate::logclass::norm_obstruction(delta, ell, 4).unwrap());
        (r, cl, w, t)
    }

    #[test]
    fn gaussian_field_verdicts() {
        let (r, cl, w, t) = full_reports(-4, 5);
        let v1 = verdict_c_infty(-4, 5, &r).unwrap();
        assert_eq!(v1.status, Status::Nontrivial); // imaginary
        let v2 = verdict_c_prime_infty(-4, 5, &w).unwrap();
        assert_eq!(v2.status, Status::Trivial);
        let v3 = verdict_c_z(-4, 5, &r, &cl, &w, t.as_ref()).unwrap();
        assert_eq!(v3.status, Status::Trivial);
        assert!(!v3.justification.is_empty());
    }

    #[test]
    fn real_field_verdicts_double_route() {
        let (r, cl, w, t) = full_reports(5, 11);
        let v = verdict_c_z(5, 11, &r, &cl, &w, t.as_ref()).unwrap();
        assert_eq!(v.status, Status::Trivial);
        // both routes fired
        let cite = &v.justification[0];
        assert!(cite.inputs.iter().any(|s| s.contains("both routes agree")));

        let v1 = verdict_c_infty(5, 11, &r).unwrap();
        assert_eq!(v1.status, Status::Trivial);
    }

    #[test]
    fn wieferich_unit_pair_is_consistent() {
        // (37, 7): the fundamental unit embeds as a root of unity mod 49;
        // T_K = Z/7 while Cl and wCl are trivial, and the norm obstruction
        // carries the difference
        let (r, cl, w, t) = full_reports(37, 7);
        assert!(!r.is_rational);
        assert!(cl.is_trivial());
        assert!(w.group.is_trivial());
        let t = t.unwrap();
        assert_eq!(t.order_exponent, 1);
        let v = verdict_c_z(37, 7, &r, &cl, &w, Some(&t)).unwrap();
        assert_eq!(v.status, Status::Nontrivial);
    }

    #[test]
    fn nontrivial_class_group_blocks_cz() {
        // Δ = −23, ℓ = 3: wCl is the obstruction report carrier here; the
        // field is imaginary so C_infty is automatically nontrivial
        let (r, _cl, w, _t) = full_reports(-23, 3);
        let v1 = verdict_c_infty(-23, 3, &r).unwrap();
        assert_eq!(v1.status, Status::Nontrivial);
        let v = verdict_c_prime_infty(-23, 3, &w).unwrap();
        assert!(matches!(v.status, Status::Trivial | Status::Nontrivial));
    }

    #[test]
    fn hypothesis_failures_rejected() {
        let (r, cl, w, t) = full_reports(-4, 5);
        // inert ℓ
        assert!(verdict_c_infty(-4, 3, &r).is_err());
        // ramified ℓ
        assert!(verdict_c_z(-15, 3, &r, &cl, &w, t.as_ref()).is_err());
        // even ℓ
        assert!(verdict_c_prime_infty(12, 2, &w).is_err());
    }

    #[test]
    fn undetermined_on_unstabilized() {
        let (mut r, cl, mut w, t) = full_reports(5, 11);
        r.stabilized = false;
        w.stabilized = false;
        let v = verdict_c_infty(5, 11, &r).unwrap();
        assert_eq!(v.status, Status::Undetermined);
        assert!(v.justification.is_empty());
        let v = verdict_c_z(5, 11, &r, &cl, &w, t.as_ref()).unwrap();
        assert_eq!(v.status, Status::Undetermined);
    }

    #[test]
    fn verdicts_are_deterministic() {
        let (r, cl, w, t) = full_reports(40, 3);
        let a = verdict_c_z(40, 3, &r, &cl, &w, t.as_ref()).unwrap();
        let b = verdict_c_z(40, 3, &r, &cl, &w, t.as_ref()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cm_necessary_conditions() {
        let v = verdict_c_z_cm_necessary(&CmDescriptor {
            plus_degree: 4,
            plus_rational: None,
            wcl_trivial: None,
        });
        assert_eq!(v.status, Status::Nontrivial);

        let v = verdict_c_z_cm_necessary(&CmDescriptor {
            plus_degree: 3,
            plus_rational: Some(true),
            wcl_trivial: Some(true),
        });
        assert_eq!(v.status, Status::Undetermined);

        let v = verdict_c_z_cm_necessary(&CmDescriptor {
            plus_degree: 2,
            plus_rational: Some(false),
            wcl_trivial: Some(true),
        });
        assert_eq!(v.status, Status::Nontrivial);
    }
}
