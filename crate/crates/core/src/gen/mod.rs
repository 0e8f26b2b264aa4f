//! Parameterized constructions, each producing a validated binding.

mod field;
mod instances;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use field::{Field, MAX_FIELD_ORDER};
pub use instances::{
    case_iib_a5, construction_5_2, f20_case_iia, fano_pair, full_slopes, gamma_km_product, gamma_lambda,
    line_i_a5, line_ii_a5, named_group, points_pairs_s4, product_pair, Slope,
};

use crate::action::BoundAction;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Generator names accepted by [`GeneratorSpec::build`].
pub const GENERATORS: &[&str] = &[
    "gamma_lambda",
    "gamma_km",
    "construction_5_2",
    "fano_pair",
    "points_pairs_S4",
    "f20_case_iia",
    "line_i_A5",
    "line_ii_A5",
    "case_iib_A5",
    "product_pair",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
}

impl GeneratorSpec {
    pub fn new(name: &str, params: &[(&str, &str)]) -> Self {
        GeneratorSpec {
            name: name.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
        }
    }

    /// A readable id such as `gamma_lambda(d=1,lambda=full,p=2)`.
    pub fn id(&self) -> String {
        if self.params.is_empty() {
            return self.name.clone();
        }
        let p: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}({})", self.name, p.join(","))
    }

    fn get(&self, key: &str) -> Result<&str> {
        self.params
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| Error::Parse(format!("generator {} needs parameter --{key}", self.name)))
    }

    fn get_usize(&self, key: &str) -> Result<usize> {
        let v = self.get(key)?;
        v.parse().map_err(|_| Error::Parse(format!("parameter --{key}: {v:?} is not a non-negative integer")))
    }

    fn check_params(&self, allowed: &[&str]) -> Result<()> {
        match self.params.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(Error::Parse(format!("generator {} has no parameter --{k}", self.name))),
            None => Ok(()),
        }
    }

    pub fn build(&self, limits: &Limits) -> Result<BoundAction> {
        match self.name.as_str() {
            "gamma_lambda" => {
                self.check_params(&["p", "d", "lambda"])?;
                let (p, d) = (self.get_usize("p")?, self.get_usize("d")?);
                let lambda = match self.params.get("lambda").map(String::as_str).unwrap_or("full") {
                    "full" => full_slopes(p, d)?,
                    list => list.split(',').map(Slope::parse).collect::<Result<Vec<_>>>()?,
                };
                gamma_lambda(p, d, &lambda)
            }
            "gamma_km" => {
                self.check_params(&["k", "m", "group"])?;
                let symmetric = match self.params.get("group").map(String::as_str).unwrap_or("symmetric") {
                    "symmetric" => true,
                    "cyclic" => false,
                    other => return Err(Error::Parse(format!("--group must be symmetric or cyclic, not {other:?}"))),
                };
                gamma_km_product(self.get_usize("k")?, self.get_usize("m")?, symmetric)
            }
            "construction_5_2" => {
                self.check_params(&["t1", "t2"])?;
                construction_5_2(&named_group(self.get("t1")?)?, &named_group(self.get("t2")?)?, limits)
            }
            "product_pair" => {
                self.check_params(&["left", "right"])?;
                let left = GeneratorSpec::new(self.get("left")?, &[]).build(limits)?;
                let right = GeneratorSpec::new(self.get("right")?, &[]).build(limits)?;
                product_pair(&left, &right)
            }
            name => {
                self.check_params(&[])?;
                match name {
                    "fano_pair" => fano_pair(),
                    "points_pairs_S4" => points_pairs_s4(),
                    "f20_case_iia" => f20_case_iia(),
                    "line_i_A5" => line_i_a5(),
                    "line_ii_A5" => line_ii_a5(),
                    "case_iib_A5" => case_iib_a5(),
                    _ => Err(Error::Parse(format!(
                        "unknown generator {name:?}; expected one of {}",
                        GENERATORS.join(", ")
                    ))),
                }
            }
        }
    }
}

/// The normal-basic instances every classifier check runs over.
pub fn normal_basic_battery() -> Vec<GeneratorSpec> {
    let gl = |p: &str, d: &str, l: &str| GeneratorSpec::new("gamma_lambda", &[("p", p), ("d", d), ("lambda", l)]);
    let c52 = |a: &str, b: &str| GeneratorSpec::new("construction_5_2", &[("t1", a), ("t2", b)]);
    vec![
        GeneratorSpec::new("fano_pair", &[]),
        GeneratorSpec::new("points_pairs_S4", &[]),
        GeneratorSpec::new("f20_case_iia", &[]),
        c52("Z3", "S3"),
        c52("Z2", "Z2"),
        c52("Z5", "F20"),
        gl("2", "1", "full"),
        gl("3", "1", "full"),
        gl("2", "2", "full"),
        gl("5", "1", "full"),
        gl("3", "1", "0,1,inf"),
        gl("3", "1", "0,inf"),
        GeneratorSpec::new("line_i_A5", &[]),
        GeneratorSpec::new("line_ii_A5", &[]),
        GeneratorSpec::new("case_iib_A5", &[]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_ids_are_stable() {
        let s = GeneratorSpec::new("gamma_lambda", &[("p", "2"), ("d", "1"), ("lambda", "full")]);
        assert_eq!(s.id(), "gamma_lambda(d=1,lambda=full,p=2)");
    }

    #[test]
    fn parameter_errors() {
        let lim = Limits::default();
        assert!(matches!(GeneratorSpec::new("nope", &[]).build(&lim), Err(Error::Parse(_))));
        assert!(matches!(GeneratorSpec::new("fano_pair", &[("x", "1")]).build(&lim), Err(Error::Parse(_))));
        assert!(matches!(GeneratorSpec::new("gamma_lambda", &[("p", "2")]).build(&lim), Err(Error::Parse(_))));
        let missing_inf = GeneratorSpec::new("gamma_lambda", &[("p", "3"), ("d", "1"), ("lambda", "0,1")]);
        assert!(matches!(missing_inf.build(&lim), Err(Error::Precondition(_))));
        let non_prime = GeneratorSpec::new("gamma_lambda", &[("p", "4"), ("d", "1")]);
        assert!(matches!(non_prime.build(&lim), Err(Error::Precondition(_))));
    }

    #[test]
    fn small_generators_bind() {
        let lim = Limits::default();
        for spec in normal_basic_battery().iter().take(12) {
            let a = spec.build(&lim).unwrap();
            assert!(a.in_family_g(), "{}", spec.id());
        }
    }

    #[test]
    fn gamma_lambda_orders() {
        for (p, d, order) in [(2, 1, 4), (3, 1, 18), (2, 2, 48)] {
            let a = gamma_lambda(p, d, &full_slopes(p, d).unwrap()).unwrap();
            assert_eq!(a.group().order(), order);
            assert_eq!(a.rank(), p.pow(d as u32) + 1);
        }
    }

    #[test]
    fn construction_rejects_non_quasiprimitive() {
        let lim = Limits::default();
        let z4 = named_group("Z4").unwrap();
        assert!(matches!(construction_5_2(&z4, &z4, &lim), Err(Error::Precondition(_))));
        assert_eq!(construction_5_2(&named_group("Z3").unwrap(), &named_group("S3").unwrap(), &lim).unwrap().group().order(), 18);
    }

    #[test]
    fn named_groups() {
        assert_eq!(named_group("A5").unwrap().order(), 60);
        assert_eq!(named_group("D4").unwrap().order(), 8);
        assert_eq!(named_group("F20").unwrap().order(), 20);
        assert!(named_group("Q8").is_err());
    }
}
