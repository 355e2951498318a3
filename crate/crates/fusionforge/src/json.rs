//! JSON forms of groups, subgroups, G-sets, decompositions, Goursat data and
//! fusion-system generator files. Elements are always referred to by their
//! index in the canonical element order of the group they belong to.

use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use fusionforge_core::catalog;
use fusionforge_core::fusion::{FusionSystem, SaturationFailure};
use fusionforge_core::goursat::GoursatData;
use fusionforge_core::{
    DirectProduct, GSet, GroupMorphism, Limits, Perm, PermGroup, Subgroup, TransitiveDecomposition,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
}

impl GroupJson {
    pub fn of(group: &PermGroup) -> GroupJson {
        GroupJson {
            degree: group.degree(),
            generators: group.generators().iter().map(|g| g.images().to_vec()).collect(),
        }
    }

    pub fn build(&self, limits: &Limits) -> Result<PermGroup> {
        let gens = self
            .generators
            .iter()
            .map(|g| Perm::from_images(g.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PermGroup::closure(&gens, self.degree, limits)?)
    }
}

/// A group given as a catalog name, inline JSON, or a path to a JSON file.
pub fn read_group(spec: &str, limits: &Limits) -> Result<PermGroup> {
    let trimmed = spec.trim();
    if trimmed.starts_with('{') {
        let g: GroupJson = serde_json::from_str(trimmed).context("malformed group JSON")?;
        return g.build(limits);
    }
    if trimmed.ends_with(".json") || Path::new(trimmed).is_file() {
        let text = std::fs::read_to_string(trimmed).with_context(|| format!("reading {}", trimmed))?;
        let g: GroupJson =
            serde_json::from_str(&text).with_context(|| format!("malformed group JSON in {}", trimmed))?;
        return g.build(limits);
    }
    Ok(catalog::parse(trimmed, limits)?)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SubgroupInput {
    Elements(Vec<u32>),
    Generators { generators: Vec<u32> },
}

/// `trivial`, `whole`, a JSON list of element indices, or
/// `{"generators": [..]}`.
pub fn read_subgroup(group: &PermGroup, spec: &str) -> Result<Subgroup> {
    let spec = spec.trim();
    match spec {
        "trivial" => return Ok(Subgroup::trivial(group)),
        "whole" | "full" => return Ok(Subgroup::whole(group)),
        _ => {}
    }
    let input: SubgroupInput = serde_json::from_str(spec).with_context(|| format!("bad subgroup {:?}", spec))?;
    let n = group.order() as u32;
    match input {
        SubgroupInput::Elements(mut elems) => {
            if elems.iter().any(|&x| x >= n) {
                bail!("element index out of range for a group of order {}", n);
            }
            elems.sort_unstable();
            elems.dedup();
            Subgroup::from_elements(group, &elems).map_err(|e| anyhow!("{}", e))
        }
        SubgroupInput::Generators { generators } => {
            if generators.iter().any(|&x| x >= n) {
                bail!("element index out of range for a group of order {}", n);
            }
            Ok(Subgroup::generated(group, &generators))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GSetJson {
    pub group: GroupJson,
    pub points: usize,
    /// `action[g][x]` is the image of point `x` under element `g`.
    pub action: Vec<Vec<u32>>,
}

impl GSetJson {
    pub fn of(s: &GSet) -> GSetJson {
        let n = s.len();
        GSetJson {
            group: GroupJson::of(s.group()),
            points: n,
            action: s
                .table()
                .chunks(n.max(1))
                .map(|c| c.to_vec())
                .take(s.group().order())
                .collect(),
        }
    }

    pub fn build(&self, limits: &Limits) -> Result<GSet> {
        let group = Arc::new(self.group.build(limits)?);
        if self.action.len() != group.order() || self.action.iter().any(|row| row.len() != self.points) {
            bail!(
                "action table must have one row of {} points per group element",
                self.points
            );
        }
        let table = self.action.concat();
        GSet::from_table(group, self.points, table).map_err(|e| anyhow!("{}", e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartJson {
    pub stabilizer: Vec<u32>,
    pub multiplicity: usize,
}

pub fn decomposition(d: &TransitiveDecomposition) -> Vec<PartJson> {
    d.parts
        .iter()
        .map(|(s, m)| PartJson {
            stabilizer: s.elements().to_vec(),
            multiplicity: *m,
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoursatJson {
    #[serde(rename = "p1X")]
    pub p1x: Vec<u32>,
    #[serde(rename = "p2X")]
    pub p2x: Vec<u32>,
    #[serde(rename = "X1")]
    pub x1: Vec<u32>,
    #[serde(rename = "X2")]
    pub x2: Vec<u32>,
    /// Pairs `(a, b)` of elements of the two factors with `θ(aX₁) = bX₂`.
    pub theta: Vec<(u32, u32)>,
}

impl GoursatJson {
    pub fn of(d: &GoursatData) -> GoursatJson {
        GoursatJson {
            p1x: d.p1x.elements().to_vec(),
            p2x: d.p2x.elements().to_vec(),
            x1: d.x1.elements().to_vec(),
            x2: d.x2.elements().to_vec(),
            theta: d.theta_pairs(),
        }
    }

    pub fn build(&self, dp: &DirectProduct) -> Result<GoursatData> {
        let sub = |g: &PermGroup, e: &[u32], name: &str| {
            Subgroup::from_elements(g, e).map_err(|e| anyhow!("{}: {}", name, e))
        };
        let d = GoursatData::from_pairs(
            dp,
            sub(&dp.left, &self.p1x, "p1X")?,
            sub(&dp.right, &self.p2x, "p2X")?,
            sub(&dp.left, &self.x1, "X1")?,
            sub(&dp.right, &self.x2, "X2")?,
            &self.theta,
        )?;
        Ok(d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    /// Element indices of the source subgroup of `P`.
    pub source: Vec<u32>,
    /// `images[i]` is the image of `source[i]`.
    pub images: Vec<u32>,
}

/// A fusion system on `P` given by generating morphisms; `group` is `P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionFileJson {
    pub group: GroupJson,
    pub prime: u32,
    pub generators: Vec<MorphismJson>,
}

impl FusionFileJson {
    pub fn build(&self, limits: &Limits) -> Result<FusionSystem> {
        let p = Arc::new(self.group.build(limits)?);
        if !p.is_p_group(self.prime) {
            bail!("group of order {} is not a {}-group", p.order(), self.prime);
        }
        let whole = Subgroup::whole(&p);
        let mut gens = Vec::new();
        for m in &self.generators {
            if m.source.len() != m.images.len() {
                bail!("source and images differ in length");
            }
            let mut pairs: Vec<(u32, u32)> = m.source.iter().copied().zip(m.images.iter().copied()).collect();
            pairs.sort_unstable();
            let src: Vec<u32> = pairs.iter().map(|p| p.0).collect();
            let source = Subgroup::from_elements(&p, &src).map_err(|e| anyhow!("generator source: {}", e))?;
            let images = pairs.iter().map(|p| p.1).collect();
            gens.push(GroupMorphism::from_table(source, whole.clone(), images).map_err(|e| anyhow!("{}", e))?);
        }
        Ok(FusionSystem::generated(p, self.prime, &gens, limits)?)
    }
}

/// A saturation failure certificate.
pub fn failure_json(f: &SaturationFailure) -> Value {
    match f {
        SaturationFailure::NotFullyCentralized { subgroup } => {
            json!({ "kind": "not_fully_centralized", "subgroup": subgroup.elements() })
        }
        SaturationFailure::AutNotSylow { subgroup, aut_p, aut_f } => {
            json!({ "kind": "aut_not_sylow", "subgroup": subgroup.elements(), "aut_p": aut_p, "aut_f": aut_f })
        }
        SaturationFailure::NoExtension { subgroup, map, n_phi } => json!({
            "kind": "no_extension",
            "subgroup": subgroup.elements(),
            "map": map,
            "n_phi": n_phi.elements(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l() -> Limits {
        Limits::default()
    }

    #[test]
    fn group_round_trip() {
        let g = catalog::parse("D8", &l()).unwrap();
        let back = GroupJson::of(&g).build(&l()).unwrap();
        assert_eq!(g, back);
        let inline = serde_json::to_string(&GroupJson::of(&g)).unwrap();
        assert_eq!(read_group(&inline, &l()).unwrap(), g);
    }

    #[test]
    fn gset_round_trip() {
        let g = Arc::new(catalog::parse("S3", &l()).unwrap());
        let h = Subgroup::generated(&g, &[1]);
        let s = GSet::cosets(g, &h);
        let j = GSetJson::of(&s);
        assert_eq!(j.points, 3);
        let back = j.build(&l()).unwrap();
        assert_eq!(back.table(), s.table());
    }

    #[test]
    fn subgroup_forms() {
        let g = catalog::parse("C4", &l()).unwrap();
        assert_eq!(read_subgroup(&g, "trivial").unwrap().order(), 1);
        assert_eq!(read_subgroup(&g, "whole").unwrap().order(), 4);
        let sq = g.pow(g.generator_indices()[0], 2);
        assert_eq!(read_subgroup(&g, &format!("[0, {}]", sq)).unwrap().order(), 2);
        assert_eq!(
            read_subgroup(&g, &format!("{{\"generators\": [{}]}}", sq))
                .unwrap()
                .order(),
            2
        );
        assert!(read_subgroup(&g, "[1]").is_err());
        assert!(read_subgroup(&g, "[9]").is_err());
    }

    #[test]
    fn goursat_round_trip() {
        let g = catalog::parse("C2 x C2", &l()).unwrap();
        let dp = DirectProduct::new(&g, &g);
        let d = fusionforge_core::goursat::decompose(&dp, &dp.diagonal().unwrap());
        let j = GoursatJson::of(&d);
        assert_eq!(j.build(&dp).unwrap(), d);
    }

    #[test]
    fn fusion_file_with_swap_generator() {
        // the coordinate swap generates an automizer of order 2
        let p = catalog::parse("C2 x C2", &l()).unwrap();
        let gj = GroupJson::of(&p);
        let swap: Vec<u32> = {
            let (a, b) = (p.generator_indices()[0], p.generator_indices()[1]);
            (0..4u32)
                .map(|x| {
                    if x == a {
                        b
                    } else if x == b {
                        a
                    } else {
                        x
                    }
                })
                .collect()
        };
        let file = FusionFileJson {
            group: gj,
            prime: 2,
            generators: vec![MorphismJson {
                source: vec![0, 1, 2, 3],
                images: swap,
            }],
        };
        let f = file.build(&l()).unwrap();
        assert_eq!(f.automizer(&Subgroup::whole(f.p())).len(), 2);
    }
}
