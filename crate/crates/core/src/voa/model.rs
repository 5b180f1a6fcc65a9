use std::sync::Arc;

use serde::Serialize;

use super::space::{QuotientMode, Space, SpaceKind};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// One module of a model: label, lowest weight and representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec<T> {
    pub label: String,
    pub h: T,
    pub mode: QuotientMode,
}

/// A Virasoro VOA instance together with the modules to compute with.
///
/// The VOA itself is always module 0. Minimal-model presets use the simple
/// quotient everywhere; the `virasoro` model is the universal VOA with Verma
/// modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSpec<T> {
    pub name: String,
    pub c: T,
    pub vacuum_mode: QuotientMode,
    pub minimal: Option<(u32, u32)>,
    pub modules: Vec<ModuleSpec<T>>,
}

/// Central charge `1 - 6 (p-q)^2 / (p q)` of the `(p, q)` minimal model.
pub fn minimal_central_charge<T: Field>(p: u32, q: u32) -> T {
    let (p, q) = (p as i64, q as i64);
    T::one() - T::from_frac(6 * (p - q) * (p - q), p * q)
}

/// Kac weight `h_{r,s} = ((r q - s p)^2 - (p-q)^2) / (4 p q)`.
pub fn kac_weight<T: Field>(p: u32, q: u32, r: u32, s: u32) -> T {
    let (p, q, r, s) = (p as i64, q as i64, r as i64, s as i64);
    let a = r * q - s * p;
    T::from_frac(a * a - (p - q) * (p - q), 4 * p * q)
}

/// Distinct Kac weights of the `(p, q)` minimal model in increasing `(r, s)`
/// order, starting with `h_{1,1} = 0`.
pub fn kac_table<T: Field>(p: u32, q: u32) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    for r in 1..p {
        for s in 1..q {
            let h = kac_weight::<T>(p, q, r, s);
            if !out.contains(&h) {
                out.push(h);
            }
        }
    }
    out
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl<T: Field> ModelSpec<T> {
    /// Ising model: `(p, q) = (3, 4)`, `c = 1/2`, weights `0, 1/2, 1/16`.
    pub fn ising() -> Self {
        Self::minimal_labeled("ising", 3, 4, &[("0", T::zero()), ("epsilon", T::from_frac(1, 2)), ("sigma", T::from_frac(1, 16))])
    }

    /// Lee-Yang model: `(p, q) = (2, 5)`, `c = -22/5`, weights `0, -1/5`.
    pub fn lee_yang() -> Self {
        Self::minimal_labeled("lee-yang", 2, 5, &[("0", T::zero()), ("phi", T::from_frac(-1, 5))])
    }

    /// Any minimal model, modules labelled `h=<weight>`.
    pub fn minimal(p: u32, q: u32) -> Result<Self> {
        if p < 2 || q < 2 || gcd(p, q) != 1 {
            return Err(Error::InvalidPreset(format!("({p}, {q}) is not a coprime pair with p, q >= 2")));
        }
        let modules = kac_table::<T>(p, q)
            .into_iter()
            .map(|h| ModuleSpec {
                label: if h.is_zero() { "0".to_string() } else { format!("h={h}") },
                h,
                mode: QuotientMode::SimpleQuotient,
            })
            .collect();
        Ok(ModelSpec {
            name: format!("minimal({p},{q})"),
            c: minimal_central_charge(p, q),
            vacuum_mode: QuotientMode::SimpleQuotient,
            minimal: Some((p, q)),
            modules,
        })
    }

    fn minimal_labeled(name: &str, p: u32, q: u32, weights: &[(&str, T)]) -> Self {
        ModelSpec {
            name: name.to_string(),
            c: minimal_central_charge(p, q),
            vacuum_mode: QuotientMode::SimpleQuotient,
            minimal: Some((p, q)),
            modules: weights
                .iter()
                .map(|(l, h)| ModuleSpec { label: l.to_string(), h: h.clone(), mode: QuotientMode::SimpleQuotient })
                .collect(),
        }
    }

    /// Universal Virasoro VOA at central charge `c` with Verma modules of the
    /// given weights (module 0 is the VOA itself).
    pub fn universal(c: T, weights: &[(&str, T)]) -> Self {
        let mut modules = vec![ModuleSpec { label: "0".to_string(), h: T::zero(), mode: QuotientMode::Verma }];
        for (l, h) in weights {
            modules.push(ModuleSpec { label: l.to_string(), h: h.clone(), mode: QuotientMode::Verma });
        }
        ModelSpec { name: "virasoro".to_string(), c, vacuum_mode: QuotientMode::Verma, minimal: None, modules }
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "ising" => Ok(Self::ising()),
            "lee-yang" | "leeyang" | "yang-lee" => Ok(Self::lee_yang()),
            "tricritical-ising" => Self::minimal(4, 5),
            other => Err(Error::Config(format!("unknown model preset `{other}`"))),
        }
    }

    /// Checks the minimal-model constraints on `c` and every weight.
    pub fn validate(&self) -> Result<()> {
        if self.modules.first().map(|m| m.h.is_zero()) != Some(true) {
            return Err(Error::InvalidPreset("module 0 must be the VOA itself (h = 0)".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for m in &self.modules {
            if !seen.insert(m.label.clone()) {
                return Err(Error::Config(format!("duplicate module label `{}`", m.label)));
            }
        }
        if let Some((p, q)) = self.minimal {
            let c: T = minimal_central_charge(p, q);
            if c != self.c {
                return Err(Error::InvalidPreset(format!("c = {} but the ({p},{q}) model has c = {c}", self.c)));
            }
            let table = kac_table::<T>(p, q);
            for m in &self.modules {
                if !table.contains(&m.h) {
                    return Err(Error::InvalidPreset(format!("h = {} is not in the ({p},{q}) Kac table", m.h)));
                }
            }
        }
        Ok(())
    }

    /// Builds the spaces.
    pub fn build(&self) -> Result<Model<T>> {
        self.validate()?;
        let vacuum = Arc::new(Space::new("0", SpaceKind::Vacuum, self.vacuum_mode, self.c.clone(), T::zero()));
        let mut modules = Vec::new();
        for (i, m) in self.modules.iter().enumerate() {
            if i == 0 {
                modules.push(vacuum.clone());
            } else {
                modules.push(Arc::new(Space::new(
                    m.label.clone(),
                    SpaceKind::HighestWeight,
                    m.mode,
                    self.c.clone(),
                    m.h.clone(),
                )));
            }
        }
        Ok(Model { spec: self.clone(), vacuum, modules })
    }

    /// Rational presets: a minimal model with every space a simple quotient.
    pub fn is_rational(&self) -> bool {
        self.minimal.is_some()
            && self.vacuum_mode == QuotientMode::SimpleQuotient
            && self.modules.iter().all(|m| m.mode == QuotientMode::SimpleQuotient)
    }
}

/// Instantiated model: the VOA as a space plus its modules.
#[derive(Debug)]
pub struct Model<T: Field> {
    pub spec: ModelSpec<T>,
    vacuum: Arc<Space<T>>,
    modules: Vec<Arc<Space<T>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleSummary {
    pub label: String,
    pub h: String,
    pub mode: QuotientMode,
}

impl<T: Field> Model<T> {
    pub fn vacuum(&self) -> &Arc<Space<T>> {
        &self.vacuum
    }

    pub fn modules(&self) -> &[Arc<Space<T>>] {
        &self.modules
    }

    pub fn module(&self, i: usize) -> &Arc<Space<T>> {
        &self.modules[i]
    }

    pub fn num_modules(&self) -> usize {
        self.modules.len()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.modules
            .iter()
            .position(|m| m.label() == label)
            .ok_or_else(|| Error::UnknownSpace(label.to_string()))
    }

    pub fn space(&self, label: &str) -> Result<Arc<Space<T>>> {
        if label == "V" {
            return Ok(self.vacuum.clone());
        }
        self.index_of(label).map(|i| self.modules[i].clone())
    }

    /// Contragredient label. Minimal-model modules are self-dual.
    pub fn dual(&self, i: usize) -> usize {
        i
    }

    pub fn is_rational(&self) -> bool {
        self.spec.is_rational()
    }

    pub fn central_charge(&self) -> &T {
        &self.spec.c
    }

    pub fn summary(&self) -> Vec<ModuleSummary> {
        self.spec
            .modules
            .iter()
            .map(|m| ModuleSummary { label: m.label.clone(), h: m.h.to_string(), mode: m.mode })
            .collect()
    }
}
