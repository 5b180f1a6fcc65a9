//! Run configuration: defaults, then a key-value file, then command-line
//! flags.
//!
//! File format, one setting per line, `#` starts a comment:
//!
//! ```text
//! model = virasoro
//! c = 7/10
//! module = m 1/2
//! n = 2
//! w = 0..12
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use anbimod::{Error, Field, ModelSpec, Result, Scalar};
use serde_json::{json, Value};

pub const SUITES: &[&str] = &[
    "identities",
    "bimodule-axioms",
    "descent",
    "phi",
    "ideals",
    "omega-filter",
    "representation",
    "semisimplicity",
    "fusion",
    "bimodule-dims",
    "kernel-layer",
    "tensor-lemma",
    "surjectivity",
    "duality",
    "ats-dims",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// Preset name, `minimal:p:q`, or `virasoro` for the universal VOA.
    pub model: String,
    pub c: Option<String>,
    /// Extra Verma modules of the universal model as `(label, h)`.
    pub modules: Vec<(String, String)>,
    pub space: String,
    pub n: u32,
    pub t: Option<u32>,
    pub s: Option<u32>,
    pub w_min: u32,
    pub w_max: Option<u32>,
    pub window: usize,
    pub budget: u32,
    pub random: usize,
    pub per_element: bool,
    pub seed: u64,
    pub suites: Vec<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            model: "ising".into(),
            c: None,
            modules: Vec::new(),
            space: "V".into(),
            n: 0,
            t: None,
            s: None,
            w_min: 0,
            w_max: None,
            window: 3,
            budget: 4,
            random: 200,
            per_element: false,
            seed: 20240601,
            suites: Vec::new(),
        }
    }
}

fn parse_num<N: std::str::FromStr>(key: &str, v: &str) -> Result<N> {
    v.trim().parse().map_err(|_| Error::Config(format!("`{key}` expects a nonnegative integer, got `{v}`")))
}

/// Parses `A..B` (inclusive).
pub fn parse_range(v: &str) -> Result<(u32, u32)> {
    let (a, b) = v
        .split_once("..")
        .ok_or_else(|| Error::Config(format!("cutoff range must look like A..B, got `{v}`")))?;
    let (a, b): (u32, u32) = (parse_num("w", a)?, parse_num("w", b)?);
    if a > b {
        return Err(Error::Config(format!("empty cutoff range {a}..{b}")));
    }
    Ok((a, b))
}

impl RunConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key {
            "model" => self.model = value.to_string(),
            "c" => self.c = Some(value.to_string()),
            "module" => {
                let mut parts = value.split_whitespace();
                match (parts.next(), parts.next(), parts.next()) {
                    (Some(l), Some(h), None) => self.modules.push((l.to_string(), h.to_string())),
                    _ => return Err(Error::Config(format!("`module` expects `label h`, got `{value}`"))),
                }
            }
            "space" => self.space = value.to_string(),
            "n" => self.n = parse_num(key, value)?,
            "t" => self.t = Some(parse_num(key, value)?),
            "s" => self.s = Some(parse_num(key, value)?),
            "w" => {
                let (a, b) = parse_range(value)?;
                self.w_min = a;
                self.w_max = Some(b);
            }
            "window" => self.window = parse_num(key, value)?,
            "budget" => self.budget = parse_num(key, value)?,
            "random" => self.random = parse_num(key, value)?,
            "per-element" | "per_element" => {
                self.per_element = match value {
                    "true" | "yes" | "1" => true,
                    "false" | "no" | "0" => false,
                    _ => return Err(Error::Config(format!("`{key}` expects true or false, got `{value}`"))),
                }
            }
            "seed" => self.seed = parse_num(key, value)?,
            "suite" | "suites" => {
                self.suites = value.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
            }
            other => return Err(Error::Config(format!("unknown setting `{other}`"))),
        }
        Ok(())
    }

    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", no + 1)))?;
            self.set(k.trim(), v)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        self.apply_text(&text)
    }

    pub fn pair(&self) -> Result<Option<(u32, u32)>> {
        match (self.t, self.s) {
            (None, None) => Ok(None),
            (Some(t), Some(s)) => Ok(Some((t, s))),
            _ => Err(Error::Config("`t` and `s` must be given together".into())),
        }
    }

    /// Last cutoff: explicit, or enough for the level in use to stabilize.
    pub fn w_max(&self) -> u32 {
        let level = match (self.t, self.s) {
            (Some(t), Some(s)) => t.max(s),
            _ => self.n,
        };
        self.w_max.unwrap_or(10 + 2 * level)
    }

    pub fn suites(&self) -> Result<Vec<String>> {
        if self.suites.is_empty() {
            return Ok(SUITES.iter().map(|s| s.to_string()).collect());
        }
        for s in &self.suites {
            if !SUITES.contains(&s.as_str()) {
                return Err(Error::Config(format!("unknown suite `{s}`; known: {}", SUITES.join(", "))));
            }
        }
        Ok(self.suites.clone())
    }

    pub fn model_spec(&self) -> Result<ModelSpec> {
        let parse = |key: &str, v: &str| {
            Scalar::parse_rational(v).ok_or_else(|| Error::Config(format!("`{key}` expects a rational p/q, got `{v}`")))
        };
        let mut spec = if self.model == "virasoro" {
            let c = parse("c", self.c.as_deref().ok_or_else(|| Error::Config("model virasoro needs `c`".into()))?)?;
            let modules: Vec<(String, String)> = if self.modules.is_empty() {
                vec![("m".to_string(), "1/2".to_string())]
            } else {
                self.modules.clone()
            };
            let mut weights = Vec::new();
            for (l, h) in &modules {
                weights.push((l.as_str(), parse("module", h)?));
            }
            ModelSpec::universal(c, &weights)
        } else if let Some(rest) = self.model.strip_prefix("minimal:") {
            let (p, q) = rest
                .split_once(':')
                .ok_or_else(|| Error::Config(format!("expected minimal:p:q, got `{}`", self.model)))?;
            ModelSpec::minimal(parse_num("model", p)?, parse_num("model", q)?)?
        } else {
            if !self.modules.is_empty() {
                return Err(Error::Config("`module` settings only apply to the virasoro model".into()));
            }
            ModelSpec::preset(&self.model)?
        };
        if let Some(c) = &self.c {
            if self.model != "virasoro" {
                spec.c = parse("c", c)?;
            }
        }
        spec.validate()?;
        Ok(spec)
    }

    /// Settings echoed into every report.
    pub fn echo(&self, keys: &[&str]) -> BTreeMap<String, Value> {
        let mut out = BTreeMap::new();
        for &k in keys {
            let v = match k {
                "n" => json!(self.n),
                "t" => json!(self.t),
                "s" => json!(self.s),
                "w" => json!(format!("{}..{}", self.w_min, self.w_max())),
                "window" => json!(self.window),
                "budget" => json!(self.budget),
                "random" => json!(self.random),
                "per_element" => json!(self.per_element),
                "seed" => json!(self.seed),
                "suites" => json!(self.suites().unwrap_or_default()),
                _ => continue,
            };
            out.insert(k.to_string(), v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let mut cfg = RunConfig::default();
        cfg.apply_text("# universal\nmodel = virasoro\nc = 7/10 # central charge\nmodule = m 1/2\nw = 2..9\n").unwrap();
        assert_eq!(cfg.model, "virasoro");
        assert_eq!((cfg.w_min, cfg.w_max()), (2, 9));
        cfg.set("c", "1/2").unwrap();
        let spec = cfg.model_spec().unwrap();
        assert_eq!(spec.c, Scalar::from_frac(1, 2));
        assert_eq!(spec.modules.len(), 2);
    }

    #[test]
    fn rejects_bad_settings() {
        let mut cfg = RunConfig::default();
        assert!(cfg.apply_text("colour = blue").is_err());
        assert!(cfg.set("w", "9..2").is_err());
        assert!(cfg.set("c", "x").is_ok());
        assert!(cfg.model_spec().is_err());
        cfg.suites = vec!["nope".into()];
        assert!(cfg.suites().is_err());
    }

    #[test]
    fn preset_with_wrong_central_charge_is_rejected() {
        let mut cfg = RunConfig::default();
        cfg.set("c", "1/3").unwrap();
        assert!(matches!(cfg.model_spec(), Err(Error::InvalidPreset(_))));
    }
}
