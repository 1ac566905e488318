use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Value kinds accepted by recipe parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Int,
    Real,
    /// Comma-separated reals.
    Reals,
    Text,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Int => "integer",
            Kind::Real => "real",
            Kind::Reals => "list of reals",
            Kind::Text => "text",
        })
    }
}

/// One documented parameter of a recipe.
#[derive(Debug, Clone, Copy)]
pub struct Spec {
    pub key: &'static str,
    pub kind: Kind,
    pub default: &'static str,
    pub help: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamError(pub String);

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Type-checked `key=value` parameters, defaults filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    values: BTreeMap<String, String>,
}

impl Params {
    pub fn parse(specs: &[Spec], args: &[String]) -> Result<Self, ParamError> {
        let mut values: BTreeMap<String, String> = specs
            .iter()
            .map(|s| (s.key.to_string(), s.default.to_string()))
            .collect();
        for arg in args {
            let (key, value) = arg
                .split_once('=')
                .ok_or_else(|| ParamError(format!("`{arg}` is not of the form key=value")))?;
            let spec = specs
                .iter()
                .find(|s| s.key == key)
                .ok_or_else(|| ParamError(format!("unknown parameter `{key}`")))?;
            check(spec, value)?;
            values.insert(key.to_string(), value.to_string());
        }
        Ok(Self { values })
    }

    /// Parameters in key order, for the output header.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn text(&self, key: &str) -> &str {
        self.values.get(key).map(String::as_str).unwrap_or("")
    }

    pub fn real(&self, key: &str) -> f64 {
        self.text(key).parse().unwrap_or(f64::NAN)
    }

    pub fn int(&self, key: &str) -> usize {
        self.text(key).parse().unwrap_or(0)
    }

    pub fn reals(&self, key: &str) -> Vec<f64> {
        split_reals(self.text(key)).unwrap_or_default()
    }
}

fn split_reals(text: &str) -> Result<Vec<f64>, std::num::ParseFloatError> {
    text.split(',').map(|p| f64::from_str(p.trim())).collect()
}

fn check(spec: &Spec, value: &str) -> Result<(), ParamError> {
    let bad = || {
        ParamError(format!(
            "parameter `{}` expects {}, got `{value}`",
            spec.key, spec.kind
        ))
    };
    match spec.kind {
        Kind::Int => value.parse::<usize>().map(|_| ()).map_err(|_| bad()),
        Kind::Real => match value.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(()),
            _ => Err(bad()),
        },
        Kind::Reals => match split_reals(value) {
            Ok(v) if !v.is_empty() && v.iter().all(|x| x.is_finite()) => Ok(()),
            _ => Err(bad()),
        },
        Kind::Text => {
            if value.is_empty() {
                Err(bad())
            } else {
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPECS: &[Spec] = &[
        Spec {
            key: "N",
            kind: Kind::Int,
            default: "8",
            help: "",
        },
        Spec {
            key: "x",
            kind: Kind::Reals,
            default: "0.1,0.2",
            help: "",
        },
        Spec {
            key: "s",
            kind: Kind::Real,
            default: "-0.5",
            help: "",
        },
    ];

    fn args(a: &[&str]) -> Vec<String> {
        a.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn defaults_and_overrides() {
        let p = Params::parse(SPECS, &args(&["N=32", "x=1e-2,1e-3"])).unwrap();
        assert_eq!(p.int("N"), 32);
        assert_eq!(p.reals("x"), vec![1e-2, 1e-3]);
        assert_eq!(p.real("s"), -0.5);
        let keys: Vec<&str> = p.iter().map(|(k, _)| k).collect();
        assert_eq!(keys, ["N", "s", "x"]);
    }

    #[test]
    fn rejects_malformed() {
        assert!(Params::parse(SPECS, &args(&["N=-1"])).is_err());
        assert!(Params::parse(SPECS, &args(&["N"])).is_err());
        assert!(Params::parse(SPECS, &args(&["q=1"])).is_err());
        assert!(Params::parse(SPECS, &args(&["s=nan"])).is_err());
        assert!(Params::parse(SPECS, &args(&["x=1,,2"])).is_err());
    }
}
