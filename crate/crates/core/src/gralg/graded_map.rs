//! Degreewise maps of presented groups, induced from images of generators.

use super::abelian::{GroupMap, GroupSummary};
use crate::{Error, Result};
use num_bigint::BigInt;
use serde_json::{json, Value};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct GradedMap {
    pub name: String,
    /// generator -> image, as displayed
    pub generator_images: BTreeMap<String, String>,
    /// abutment degree -> component
    pub components: BTreeMap<i64, GroupMap>,
}

impl GradedMap {
    pub fn new(name: &str, generator_images: &[(&str, &str)]) -> Self {
        GradedMap {
            name: name.to_string(),
            generator_images: generator_images.iter().map(|(g, i)| (g.to_string(), i.to_string())).collect(),
            components: BTreeMap::new(),
        }
    }

    pub fn component(&self, d: i64) -> Result<&GroupMap> {
        self.components.get(&d).ok_or_else(|| Error::Window(format!("{} has no component in degree {d}", self.name)))
    }

    pub fn kernel_cokernel(&self, d: i64) -> Result<(GroupSummary, GroupSummary)> {
        let f = self.component(d)?;
        Ok((f.kernel()?.0.summary()?, f.cokernel().summary()?))
    }

    /// `self - other`, degreewise on identical groups.
    pub fn difference(&self, other: &GradedMap, name: &str) -> Result<GradedMap> {
        let mut out = GradedMap { name: name.to_string(), generator_images: BTreeMap::new(), components: BTreeMap::new() };
        for (d, f) in &self.components {
            let g = other.component(*d)?;
            if f.source != g.source || f.target != g.target {
                return Err(Error::Inconsistent(format!("components in degree {d} have different groups")));
            }
            let m: Vec<Vec<BigInt>> =
                f.matrix.iter().zip(&g.matrix).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect()).collect();
            out.components.insert(*d, GroupMap::new(f.source.clone(), f.target.clone(), m)?);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let comps: BTreeMap<String, Value> = self
            .components
            .iter()
            .map(|(d, f)| {
                let rows: Vec<Vec<String>> = f.matrix.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
                let orders = |g: &super::AbGroup| -> Vec<String> {
                    (0..g.ngens)
                        .map(|i| g.relations.iter().find(|r| !r[i].eq(&BigInt::from(0))).map_or("0".to_string(), |r| r[i].to_string()))
                        .collect()
                };
                (d.to_string(), json!({ "source_orders": orders(&f.source), "target_orders": orders(&f.target), "matrix": rows }))
            })
            .collect();
        json!({ "schema": "rcyclo/graded-map", "version": 1, "name": self.name, "generator_images": self.generator_images, "components": comps })
    }
}
