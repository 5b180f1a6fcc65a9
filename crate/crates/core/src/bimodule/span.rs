use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::products;
use crate::error::{Error, Result};
use crate::linalg::{SparseVector, SubspaceBasis};
use crate::parallel::pool;
use crate::scalar::Field;
use crate::voa::{GradedVector, PbwKey, Space};

/// Index of the product family: `n` for `A_n`, or the pair `(t, s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProductParams {
    Level { n: u32 },
    Pair { t: u32, s: u32 },
}

impl ProductParams {
    /// Output-degree shift of the basic residue: `u o w` has degree at most
    /// `deg u + deg w + shift`.
    fn base_shift(&self) -> u32 {
        match *self {
            ProductParams::Level { n } => 2 * n + 1,
            ProductParams::Pair { t, s } => t + s + 1,
        }
    }

    fn l_shift(&self) -> i64 {
        match *self {
            ProductParams::Level { .. } => 0,
            ProductParams::Pair { t, s } => s as i64 - t as i64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorFamily {
    CircOnly,
    CircPlusReductions,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SpanConfig {
    pub params: ProductParams,
    pub family: GeneratorFamily,
    /// Adds `L(-1)u + (L(0) + shift)u`; only meaningful when the carrier is the VOA.
    pub include_l_terms: bool,
}

impl SpanConfig {
    /// Span of `O_n(M)`: circle products only.
    pub fn bimodule(n: u32) -> Self {
        SpanConfig { params: ProductParams::Level { n }, family: GeneratorFamily::CircOnly, include_l_terms: false }
    }

    /// Same quotient as [`SpanConfig::bimodule`], with the reduction elements
    /// added so truncations converge faster.
    pub fn bimodule_enriched(n: u32) -> Self {
        SpanConfig { family: GeneratorFamily::CircPlusReductions, ..Self::bimodule(n) }
    }

    /// Span of `O_n(V)` inside `V`.
    pub fn zhu(n: u32) -> Self {
        SpanConfig { include_l_terms: true, ..Self::bimodule_enriched(n) }
    }

    pub fn zhu_circ_only(n: u32) -> Self {
        SpanConfig { include_l_terms: true, ..Self::bimodule(n) }
    }

    /// Span of `O_{t,s}(V)`.
    pub fn pair(t: u32, s: u32) -> Self {
        SpanConfig {
            params: ProductParams::Pair { t, s },
            family: GeneratorFamily::CircPlusReductions,
            include_l_terms: true,
        }
    }
}

/// One spanning element, named by its inputs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `Res Y(u,z) w (1+z)^{wt u + base + a} / z^{shift + 1 + b}`; `a = b = 0`
    /// is the circle product.
    Residue { u: PbwKey, w: PbwKey, a: u32, b: u32 },
    LTerm { u: PbwKey },
}

impl Generator {
    pub fn degree(&self, params: ProductParams) -> u32 {
        match self {
            Generator::Residue { u, w, b, .. } => u.degree() + w.degree() + params.base_shift() + b,
            Generator::LTerm { u } => u.degree() + 1,
        }
    }

    pub fn evaluate<T: Field>(&self, carrier: &Space<T>, params: ProductParams) -> GradedVector<T> {
        match self {
            Generator::Residue { u, w, a, b } => {
                let (uv, wv) = (GradedVector::basis(u.clone()), GradedVector::basis(w.clone()));
                match params {
                    ProductParams::Level { n } => {
                        products::reduction_element(carrier, &uv, &wv, n, *a, *b).expect("a <= b by construction")
                    }
                    ProductParams::Pair { t, s } => products::ats_element(carrier, &uv, &wv, t, s, *a, *b),
                }
            }
            Generator::LTerm { u } => products::l_term(carrier, &GradedVector::basis(u.clone()), params.l_shift()),
        }
    }

    pub fn describe(&self, voa: &str, carrier: &str) -> String {
        match self {
            Generator::Residue { u, w, a, b } => {
                format!("residue(u={}, w={}, a={a}, b={b})", u.render(voa), w.render(carrier))
            }
            Generator::LTerm { u } => format!("l-term(u={})", u.render(voa)),
        }
    }
}

/// Generators of total degree exactly `degree`, in a fixed order.
pub fn generators_at<T: Field>(voa: &Space<T>, carrier: &Space<T>, config: &SpanConfig, degree: u32) -> Vec<Generator> {
    let mut out = Vec::new();
    let base = config.params.base_shift();
    let max_b = match (config.family, config.params) {
        (GeneratorFamily::CircOnly, ProductParams::Level { .. }) => 0,
        _ => degree.saturating_sub(base),
    };
    for b in 0..=max_b {
        if base + b > degree {
            break;
        }
        let rest = degree - base - b;
        for a in 0..=b {
            for du in 1..=rest {
                let dw = rest - du;
                for u in voa.basis(du) {
                    for w in carrier.basis(dw) {
                        out.push(Generator::Residue { u: u.clone(), w, a, b });
                    }
                }
            }
        }
    }
    if config.include_l_terms && carrier.is_vacuum() && degree >= 1 {
        for u in voa.basis(degree - 1) {
            out.push(Generator::LTerm { u });
        }
    }
    out
}

/// Column layout of `M_{<= cap}`: highest degree first, so row reduction
/// pivots on high-degree keys and coset representatives stay low.
#[derive(Clone, Debug)]
struct Columns {
    cap: u32,
    keys: Vec<PbwKey>,
    index: HashMap<PbwKey, usize>,
}

impl Columns {
    fn new<T: Field>(space: &Space<T>, cap: u32) -> Self {
        let mut keys = Vec::new();
        for d in (0..=cap).rev() {
            keys.extend(space.basis(d));
        }
        let index = keys.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
        Columns { cap, keys, index }
    }

    fn encode<T: Field>(&self, v: &GradedVector<T>) -> Result<SparseVector<T>> {
        let mut pairs = Vec::with_capacity(v.len());
        for (k, c) in v.terms() {
            let col = self
                .index
                .get(k)
                .ok_or_else(|| Error::InvalidArgument(format!("key {k:?} outside the column range (cap {})", self.cap)))?;
            pairs.push((*col, c.clone()));
        }
        Ok(SparseVector::from_pairs(pairs))
    }

    fn decode<T: Field>(&self, v: &SparseVector<T>) -> GradedVector<T> {
        GradedVector::from_terms(v.entries().iter().map(|(c, x)| (self.keys[*c].clone(), x.clone())))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    #[serde(rename = "W")]
    pub w: u32,
    pub dim_space: usize,
    pub dim_span: usize,
    pub dim_quotient: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub table: Vec<ScanRow>,
    pub stabilized_dim: Option<usize>,
    pub stabilization_window: usize,
}

impl QuotientReport {
    pub fn from_rows(table: Vec<ScanRow>, window: usize) -> Self {
        let stabilized_dim = stabilized(&table, window);
        QuotientReport { table, stabilized_dim, stabilization_window: window }
    }

    pub fn last_cutoff(&self) -> Option<u32> {
        self.table.last().map(|r| r.w)
    }
}

fn stabilized(rows: &[ScanRow], window: usize) -> Option<usize> {
    if window == 0 || rows.len() < window {
        return None;
    }
    let tail = &rows[rows.len() - window..];
    let d = tail[0].dim_quotient;
    tail.iter().all(|r| r.dim_quotient == d).then_some(d)
}

/// Outcome of testing a vector against a truncated span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership<T> {
    /// The vector is the listed combination of span rows (named by pivot key).
    Member { cutoff: u32, certificate: Vec<(PbwKey, T)> },
    /// Not in the span at this cutoff; the residual is its reduced form.
    Outside { cutoff: u32, residual: GradedVector<T> },
}

impl<T> Membership<T> {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

/// Incrementally built span of generators inside a truncated carrier space.
pub struct QuotientSpan<T: Field> {
    voa: Arc<Space<T>>,
    carrier: Arc<Space<T>>,
    config: SpanConfig,
    columns: Columns,
    basis: SubspaceBasis<T>,
    built: Option<u32>,
    rows: Vec<ScanRow>,
    /// Basis after each degree, kept on request so membership can be tested
    /// at any intermediate cutoff.
    snapshots: Option<Vec<SubspaceBasis<T>>>,
}

impl<T: Field> QuotientSpan<T> {
    pub fn new(voa: Arc<Space<T>>, carrier: Arc<Space<T>>, config: SpanConfig) -> Self {
        let columns = Columns::new(&carrier, 0);
        QuotientSpan {
            voa,
            carrier,
            config,
            columns,
            basis: SubspaceBasis::new(),
            built: None,
            rows: Vec::new(),
            snapshots: None,
        }
    }

    /// Keeps the basis of every intermediate cutoff (see [`QuotientSpan::certify_at`]).
    pub fn with_snapshots(mut self) -> Self {
        assert!(self.built.is_none(), "snapshots must be enabled before building");
        self.snapshots = Some(Vec::new());
        self
    }

    pub fn config(&self) -> &SpanConfig {
        &self.config
    }

    pub fn carrier(&self) -> &Arc<Space<T>> {
        &self.carrier
    }

    pub fn voa(&self) -> &Arc<Space<T>> {
        &self.voa
    }

    /// Highest degree whose generators have all been inserted.
    pub fn cutoff(&self) -> Option<u32> {
        self.built
    }

    pub fn rows(&self) -> &[ScanRow] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    fn grow_columns(&mut self, cap: u32) {
        if cap <= self.columns.cap && self.built.is_some() {
            return;
        }
        let new_cap = cap.max(self.columns.cap + 4);
        let columns = Columns::new(&self.carrier, new_cap);
        let remap = |b: &SubspaceBasis<T>| {
            let mut out = SubspaceBasis::new();
            for r in b.rows() {
                out.insert(columns.encode(&self.columns.decode(r)).expect("rows stay inside the cap"));
            }
            out
        };
        let basis = remap(&self.basis);
        let snapshots = self.snapshots.as_ref().map(|snaps| snaps.iter().map(remap).collect());
        self.columns = columns;
        self.basis = basis;
        self.snapshots = snapshots;
    }

    /// Inserts every generator of degree at most `w`.
    pub fn extend_to(&mut self, w: u32) {
        let start = match self.scanned_cutoff() {
            Some(b) if b >= w => return,
            Some(b) => b + 1,
            None => 0,
        };
        self.grow_columns(w);
        for d in start..=w {
            let gens = generators_at(&self.voa, &self.carrier, &self.config, d);
            let carrier = &self.carrier;
            let params = self.config.params;
            let columns = &self.columns;
            let vectors: Vec<SparseVector<T>> = pool().install(|| {
                gens.par_iter()
                    .map(|g| columns.encode(&g.evaluate(carrier, params)).expect("generator degree within cap"))
                    .collect()
            });
            for v in vectors {
                if !v.is_zero() {
                    self.basis.insert(v);
                }
            }
            let dim_space: usize = (0..=d).map(|k| self.carrier.dim(k)).sum();
            let dim_span = self.basis.pivots().iter().filter(|&&p| self.columns.keys[p].degree() <= d).count();
            self.rows.push(ScanRow { w: d, dim_space, dim_span, dim_quotient: dim_space - dim_span });
            if let Some(snaps) = &mut self.snapshots {
                snaps.push(self.basis.clone());
            }
            self.built = Some(self.built.map_or(d, |b| b.max(d)));
        }
    }

    /// Extends reduction capability up to degree `w` without completing the
    /// scan: at each new degree, generators are inserted in order only until
    /// every key of that degree is a pivot. Every inserted vector is a genuine
    /// span element, so reductions stay sound; the scan table is not
    /// extended. Returns false if some degree could not be saturated, i.e.
    /// the quotient grew.
    pub fn extend_saturating(&mut self, w: u32) -> bool {
        let start = match self.built {
            Some(b) if b >= w => return true,
            Some(b) => b + 1,
            None => 0,
        };
        self.grow_columns(w);
        let mut saturated = true;
        for d in start..=w {
            let gens = generators_at(&self.voa, &self.carrier, &self.config, d);
            let cols: Vec<usize> = self.carrier.basis(d).iter().map(|k| self.columns.index[k]).collect();
            let carrier = &self.carrier;
            let params = self.config.params;
            let columns = &self.columns;
            let mut done = cols.iter().all(|c| self.basis.is_pivot(*c));
            for chunk in gens.chunks(64) {
                if done {
                    break;
                }
                let vectors: Vec<SparseVector<T>> = pool().install(|| {
                    chunk
                        .par_iter()
                        .map(|g| columns.encode(&g.evaluate(carrier, params)).expect("generator degree within cap"))
                        .collect()
                });
                for v in vectors {
                    if !v.is_zero() {
                        self.basis.insert(v);
                    }
                }
                done = cols.iter().all(|c| self.basis.is_pivot(*c));
            }
            saturated &= done;
            self.built = Some(d);
        }
        saturated
    }

    /// Quotient dimension at the last fully scanned cutoff.
    pub fn quotient_dim(&self) -> usize {
        self.rows.last().map(|r| r.dim_quotient).unwrap_or(0)
    }

    /// Highest cutoff at which every generator has been inserted.
    pub fn scanned_cutoff(&self) -> Option<u32> {
        self.rows.last().map(|r| r.w)
    }

    /// Keys not hit by a pivot, lowest degree first: a basis of the quotient.
    pub fn coset_basis(&self) -> Vec<PbwKey> {
        let Some(b) = self.built else { return Vec::new() };
        let mut out: Vec<PbwKey> = self
            .columns
            .keys
            .iter()
            .enumerate()
            .filter(|(i, k)| k.degree() <= b && !self.basis.is_pivot(*i))
            .map(|(_, k)| k.clone())
            .collect();
        out.sort();
        out
    }

    /// Canonical representative of `v` modulo the span: a combination of
    /// [`QuotientSpan::coset_basis`] keys. Extends the span if needed.
    pub fn reduce(&mut self, v: &GradedVector<T>) -> GradedVector<T> {
        if let Some(d) = v.max_degree() {
            self.extend_to(d);
        }
        self.reduce_at_cutoff(v).0
    }

    fn reduce_at_cutoff(&self, v: &GradedVector<T>) -> (GradedVector<T>, Vec<(PbwKey, T)>) {
        self.reduce_with(&self.basis, v)
    }

    fn reduce_with(&self, basis: &SubspaceBasis<T>, v: &GradedVector<T>) -> (GradedVector<T>, Vec<(PbwKey, T)>) {
        let sv = self.columns.encode(v).expect("vector within the cap");
        let (res, cert) = basis.reduce(&sv);
        let cert = cert.terms.into_iter().map(|(p, c)| (self.columns.keys[p].clone(), c)).collect();
        (self.columns.decode(&res), cert)
    }

    /// Membership test at cutoff `max(deg v, min_cutoff)`.
    pub fn certify(&mut self, v: &GradedVector<T>, min_cutoff: u32) -> Membership<T> {
        let cutoff = v.max_degree().unwrap_or(0).max(min_cutoff);
        self.extend_to(cutoff);
        let cutoff = self.built.unwrap_or(0);
        let (residual, certificate) = self.reduce_at_cutoff(v);
        if residual.is_zero() {
            Membership::Member { cutoff, certificate }
        } else {
            Membership::Outside { cutoff, residual }
        }
    }

    /// Reduction against the span as currently built; `None` if `v` has
    /// degree beyond it.
    pub fn reduce_built(&self, v: &GradedVector<T>) -> Option<GradedVector<T>> {
        let built = self.built?;
        if v.max_degree().unwrap_or(0) > built {
            return None;
        }
        Some(self.reduce_at_cutoff(v).0)
    }

    /// Membership in the span of generators of degree at most `cutoff`
    /// (default: the degree of `v`). Needs snapshots and a span built at
    /// least that far.
    pub fn certify_at(&self, v: &GradedVector<T>, cutoff: Option<u32>) -> Membership<T> {
        let cutoff = cutoff.unwrap_or_else(|| v.max_degree().unwrap_or(0));
        let snaps = self.snapshots.as_ref().expect("span built with snapshots");
        let basis = snaps.get(cutoff as usize).expect("span built up to the cutoff");
        let (residual, certificate) = self.reduce_with(basis, v);
        if residual.is_zero() {
            Membership::Member { cutoff, certificate }
        } else {
            Membership::Outside { cutoff, residual }
        }
    }

    pub fn report(&self, w_min: u32, window: usize) -> QuotientReport {
        let rows = self.rows.iter().filter(|r| r.w >= w_min).cloned().collect();
        QuotientReport::from_rows(rows, window)
    }
}

/// Builds the span up to `w_max` and reports quotient dimensions for
/// cutoffs `w_min..=w_max`.
pub fn quotient_scan<T: Field>(
    voa: Arc<Space<T>>,
    carrier: Arc<Space<T>>,
    config: SpanConfig,
    w_min: u32,
    w_max: u32,
    window: usize,
) -> Result<(QuotientReport, QuotientSpan<T>)> {
    if w_min > w_max {
        return Err(Error::InvalidArgument(format!("empty cutoff range {w_min}..{w_max}")));
    }
    let mut span = QuotientSpan::new(voa, carrier, config);
    span.extend_to(w_max);
    Ok((span.report(w_min, window), span))
}

/// Span of the `(t, s)` family in the VOA.
pub fn ats_span<T: Field>(voa: Arc<Space<T>>, t: u32, s: u32, w_min: u32, w_max: u32, window: usize) -> Result<(QuotientReport, QuotientSpan<T>)> {
    quotient_scan(voa.clone(), voa, SpanConfig::pair(t, s), w_min, w_max, window)
}
