//! Parsing of the `--complex`, `--group`, `--subgroup` and `--coeff`
//! specifiers.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde::de::DeserializeOwned;
use zk_core::action::{aut_group, ComplexAction};
use zk_core::coeffsys::{homology_system, CoefficientSystem, SystemJson};
use zk_core::doman::{realize_injective, WeylRep};
use zk_core::groups::{parse_generators, PermGroup, Subgroup};
use zk_core::orbitcat::OrbitCategory;
use zk_core::simplicial::{boundary, ngon, simplex, star, trilinder, SimplicialComplex};

fn read_json<T: DeserializeOwned>(path: &str) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {path}"))?;
    serde_json::from_str(&text).with_context(|| format!("malformed JSON in {path}"))
}

fn number(spec: &str, prefix: &str) -> Result<usize> {
    spec[prefix.len()..]
        .parse()
        .with_context(|| format!("expected a number after '{prefix}' in '{spec}'"))
}

/// `boundary:m`, `simplex:m`, `ngon:n`, `star`, `trilinder` or a JSON file.
pub fn complex(spec: &str) -> Result<SimplicialComplex> {
    Ok(match spec {
        "star" => star(),
        "trilinder" => trilinder(),
        s if s.starts_with("boundary:") => boundary(number(s, "boundary:")?)?,
        s if s.starts_with("simplex:") => simplex(number(s, "simplex:")?),
        s if s.starts_with("ngon:") => ngon(number(s, "ngon:")?)?,
        s if Path::new(s).exists() => read_json(s)?,
        s => bail!("unknown complex '{s}': expected boundary:m, simplex:m, ngon:n, star, trilinder or a JSON file"),
    })
}

/// Largest point mentioned in a cycle-notation string, plus one.
fn inferred_degree(gens: &str) -> usize {
    gens.split(|c: char| !c.is_ascii_digit())
        .filter_map(|t| t.parse::<usize>().ok())
        .max()
        .map_or(1, |m| m + 1)
}

/// `gens=(..),(..)`, `aut`, `trivial`, `symmetric` or a JSON file. The
/// degree comes from the complex when there is one.
pub fn group(spec: &str, complex: Option<&SimplicialComplex>, degree: Option<usize>) -> Result<PermGroup> {
    let degree = complex.map(SimplicialComplex::num_vertices).or(degree);
    Ok(match spec {
        "aut" => aut_group(complex.ok_or_else(|| anyhow!("--group aut needs --complex"))?)?,
        "trivial" => PermGroup::trivial(degree.ok_or_else(|| anyhow!("--group trivial needs --complex or --degree"))?),
        "symmetric" => PermGroup::symmetric(
            degree.ok_or_else(|| anyhow!("--group symmetric needs --complex or --degree"))?,
        )?,
        s if s.starts_with("gens=") => {
            let gens = &s["gens=".len()..];
            let degree = degree.unwrap_or_else(|| inferred_degree(gens));
            PermGroup::closure(degree, &parse_generators(degree, gens)?)?
        }
        s if Path::new(s).exists() => read_json(s)?,
        s => bail!("unknown group '{s}': expected gens=..., aut, trivial, symmetric or a JSON file"),
    })
}

/// `gens=(..)` or `object:i` (an orbit-category object).
pub fn subgroup(spec: &str, group: &PermGroup, cat: Option<&OrbitCategory>) -> Result<Subgroup> {
    if let Some(gens) = spec.strip_prefix("gens=") {
        return Ok(group.subgroup_from_perms(&parse_generators(group.degree(), gens)?)?);
    }
    if spec.starts_with("object:") {
        let i = number(spec, "object:")?;
        let cat = cat.ok_or_else(|| anyhow!("object:i needs the orbit category"))?;
        if i >= cat.num_objects() {
            bail!("object {i} out of range: the orbit category has {} objects", cat.num_objects());
        }
        return Ok(cat.subgroup(i).clone());
    }
    bail!("unknown subgroup '{spec}': expected gens=... or object:i")
}

/// `constant`, `m`, `zero`, `homology:q`, `atom:i` or a JSON file.
pub fn coefficients(
    spec: &str,
    cat: &Arc<OrbitCategory>,
    action: Option<&ComplexAction>,
) -> Result<CoefficientSystem> {
    Ok(match spec {
        "constant" => CoefficientSystem::constant(cat.clone()),
        "m" | "free-point" => CoefficientSystem::free_point(cat.clone()),
        "zero" => CoefficientSystem::zero(cat.clone()),
        s if s.starts_with("homology:") => {
            let q = number(s, "homology:")?;
            let action = action.ok_or_else(|| anyhow!("--coeff homology:q needs --complex"))?;
            homology_system(action, cat.clone(), q)?
        }
        s if s.starts_with("atom:") => {
            let i = number(s, "atom:")?;
            if i >= cat.num_objects() {
                bail!("object {i} out of range: the orbit category has {} objects", cat.num_objects());
            }
            realize_injective(cat.clone(), &WeylRep::trivial(cat, i, 1))?.system
        }
        s if Path::new(s).exists() => {
            let raw: SystemJson = read_json(s)?;
            CoefficientSystem::from_json(&raw, cat.clone()).with_context(|| format!("in {s}"))?
        }
        s => bail!("unknown coefficient system '{s}': expected constant, m, zero, homology:q, atom:i or a JSON file"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_agree_with_constructors() {
        assert_eq!(complex("boundary:3").unwrap(), boundary(3).unwrap());
        assert_eq!(complex("simplex:2").unwrap(), simplex(2));
        assert_eq!(complex("ngon:5").unwrap(), ngon(5).unwrap());
        assert!(complex("ngon:2").is_err());
        assert!(complex("cube:3").is_err());
    }

    #[test]
    fn group_degrees() {
        let g = group("gens=(0 1 2 3),(0 1)(2 3)", None, None).unwrap();
        assert_eq!((g.degree(), g.order()), (4, 8));
        let k = star();
        let g = group("gens=(1 2 3)", Some(&k), None).unwrap();
        assert_eq!((g.degree(), g.order()), (4, 3));
        assert_eq!(group("aut", Some(&ngon(6).unwrap()), None).unwrap().order(), 12);
        assert!(group("aut", None, None).is_err());
    }
}
