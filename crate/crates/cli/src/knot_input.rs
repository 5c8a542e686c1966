//! Plain-text input format for the knot calculator:
//!
//! ```text
//! # comment
//! G: 3,3
//! 1,0
//! 0,1; 1,2
//! ```
//!
//! The `G:` line gives the cyclic orders of the Galois group. Every later
//! non-empty line is one decomposition subgroup, listing the images of its
//! generators as exponent vectors (vectors separated by ';', components by
//! ','). Parse errors carry line numbers.

use anyhow::{bail, Context};
use num_bigint::{BigInt, BigUint};

use quadlog_core::abelian::{FinAbGroup, GroupHom};

#[derive(Debug)]
pub struct KnotInput {
    pub group: FinAbGroup,
    pub subgroups: Vec<GroupHom>,
}

pub fn parse(text: &str) -> anyhow::Result<KnotInput> {
    let mut group: Option<FinAbGroup> = None;
    let mut subgroups = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("G:") {
            if group.is_some() {
                bail!("line {no}: duplicate G: line");
            }
            let orders: Vec<BigUint> = rest
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<BigUint>()
                        .with_context(|| format!("line {no}: bad order '{}'", t.trim()))
                })
                .collect::<Result<_, _>>()?;
            group = Some(
                FinAbGroup::from_orders(&orders)
                    .with_context(|| format!("line {no}: invalid group orders"))?,
            );
            continue;
        }
        let g = group
            .as_ref()
            .with_context(|| format!("line {no}: subgroup before the G: line"))?;
        let mut images: Vec<Vec<BigInt>> = Vec::new();
        for vec_txt in line.split(';') {
            let v: Vec<BigInt> = vec_txt
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<BigInt>()
                        .with_context(|| format!("line {no}: bad exponent '{}'", t.trim()))
                })
                .collect::<Result<_, _>>()?;
            if v.len() != g.rank() {
                bail!(
                    "line {no}: vector has {} components, group has rank {}",
                    v.len(),
                    g.rank()
                );
            }
            images.push(v);
        }
        let hom = GroupHom::from_generator_images(g, &images)
            .with_context(|| format!("line {no}: invalid subgroup"))?;
        subgroups.push(hom);
    }
    let group = group.context("missing G: line")?;
    Ok(KnotInput { group, subgroups })
}

#[cfg(test)]
mod tests {
    use super::*;
    use quadlog_core::abelian::knot_group;

    #[test]
    fn parses_module_example() {
        let text = "# two cyclic subgroups\nG: 3,3\n1,0\n0,1\n";
        let input = parse(text).unwrap();
        assert_eq!(input.subgroups.len(), 2);
        let k = knot_group(&input.group, &input.subgroups).unwrap();
        assert_eq!(k, FinAbGroup::from_u64_orders(&[3]).unwrap());
    }

    #[test]
    fn multi_generator_subgroup_on_one_line() {
        let text = "G: 3,3\n1,0; 0,1\n";
        let input = parse(text).unwrap();
        assert_eq!(input.subgroups.len(), 1);
        let k = knot_group(&input.group, &input.subgroups).unwrap();
        assert!(k.is_trivial());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse("G: 3,3\n1,0,0\n").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
        let err = parse("1,0\n").unwrap_err().to_string();
        assert!(err.contains("line 1"), "{err}");
        let err = parse("G: 3,x\n").unwrap_err().to_string();
        assert!(err.contains("line 1"), "{err}");
        assert!(parse("# nothing\n").is_err());
    }
}
