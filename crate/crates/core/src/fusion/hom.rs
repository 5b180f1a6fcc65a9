//! Balanced maps `A_n(M^i) x M^j(s) -> M^k(t)` and the fusion rules they
//! count.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;

use super::action::{nonzero_pieces, o_matrix, Piece};
use crate::bimodule::{quotient_scan, star_left, star_right, QuotientReport, QuotientSpan, SpanConfig};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, rank, Matrix, SparseVector};
use crate::parallel::pool;
use crate::report::{Check, FusionTable, Status, Witness};
use crate::scalar::Field;
use crate::voa::{GradedVector, Model, PbwKey};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub n: u32,
    /// Degree bound of the VOA elements `a, b` imposing the balance conditions.
    pub budget: u32,
    /// Last cutoff of the quotient scans.
    pub scan_max: u32,
    pub window: usize,
}

impl EngineConfig {
    pub fn new(n: u32) -> Self {
        EngineConfig { n, budget: 4, scan_max: 10 + 2 * n, window: 3 }
    }
}

/// `A_n(M)` for one module: stabilized scan, coset basis, and the two
/// actions of VOA basis elements on cosets written in coset coordinates.
pub struct ModuleQuotient<T: Field> {
    pub report: QuotientReport,
    pub cosets: Vec<PbwKey>,
    /// Set when the quotient is unusable (no stabilization, or products
    /// leave the coset set).
    pub problem: Option<String>,
    /// `x *_n b` for each VOA key `b`: one coordinate vector per coset `x`.
    right: HashMap<PbwKey, Vec<SparseVector<T>>>,
    /// `a *_n x` for each VOA key `a`.
    left: HashMap<PbwKey, Vec<SparseVector<T>>>,
}

impl<T: Field> ModuleQuotient<T> {
    pub fn stabilized_dim(&self) -> Option<usize> {
        if self.problem.is_some() {
            None
        } else {
            self.report.stabilized_dim
        }
    }
}

/// Solution space of a balanced-map system.
#[derive(Clone, Debug)]
pub struct HomSpace<T> {
    pub dim: usize,
    /// Basis of solutions; coordinate `(x * dj + u) * dk + e` is the
    /// coefficient of `e` in `f(x (x) u)`.
    pub solutions: Vec<SparseVector<T>>,
    pub cosets: usize,
    pub dj: usize,
    pub dk: usize,
}

pub struct FusionEngine<'m, T: Field> {
    model: &'m Model<T>,
    cfg: EngineConfig,
    quotients: Vec<OnceLock<ModuleQuotient<T>>>,
    voa_keys: Vec<PbwKey>,
    actions: HashMap<(PbwKey, Piece), Matrix<T>>,
    scans: Mutex<HashMap<(usize, SpanConfig), QuotientReport>>,
    table: OnceLock<(Option<FusionTable>, Vec<Check>)>,
}

impl<'m, T: Field> FusionEngine<'m, T> {
    pub fn new(model: &'m Model<T>, cfg: EngineConfig) -> Self {
        let top = cfg.scan_max.max(cfg.budget + 2);
        let voa_keys = model.vacuum().basis_upto(top);
        let pieces = nonzero_pieces(model, cfg.n);
        let jobs: Vec<(PbwKey, Piece)> =
            voa_keys.iter().flat_map(|k| pieces.iter().map(move |p| (k.clone(), *p))).collect();
        let actions = pool().install(|| {
            jobs.into_par_iter()
                .map(|(k, p)| {
                    let m = o_matrix(model.module(p.module), &GradedVector::basis(k.clone()), p.level);
                    ((k, p), m)
                })
                .collect()
        });
        let quotients = (0..model.num_modules()).map(|_| OnceLock::new()).collect();
        FusionEngine {
            model,
            cfg,
            quotients,
            voa_keys,
            actions,
            scans: Mutex::new(HashMap::new()),
            table: OnceLock::new(),
        }
    }

    pub fn model(&self) -> &'m Model<T> {
        self.model
    }

    pub fn config(&self) -> &EngineConfig {
        &self.cfg
    }

    pub fn pieces(&self) -> Vec<Piece> {
        nonzero_pieces(self.model, self.cfg.n)
    }

    /// VOA basis keys of degree at most `budget`.
    pub fn voa_keys(&self, budget: u32) -> impl Iterator<Item = &PbwKey> {
        self.voa_keys.iter().filter(move |k| k.degree() <= budget)
    }

    /// `o(key)` on a piece (keys up to the engine's top degree).
    pub fn action(&self, key: &PbwKey, piece: Piece) -> &Matrix<T> {
        &self.actions[&(key.clone(), piece)]
    }

    /// `o(v)` on a piece for any `v` in the precomputed range.
    pub fn action_of(&self, v: &GradedVector<T>, piece: Piece) -> Matrix<T> {
        let d = piece.dim(self.model);
        let mut out = Matrix::zeros(d, d);
        for (k, c) in v.terms() {
            out = out.add(&self.action(k, piece).scaled(c));
        }
        out
    }

    /// Quotient table of module `i` (0 is the VOA) for any span family,
    /// scanned up to the engine's last cutoff.
    pub fn scan(&self, i: usize, config: SpanConfig) -> QuotientReport {
        if config == SpanConfig::bimodule_enriched(self.cfg.n) {
            return self.quotient(i).report.clone();
        }
        if let Some(r) = self.scans.lock().expect("scan cache").get(&(i, config)) {
            return r.clone();
        }
        let (report, _) = quotient_scan(
            self.model.vacuum().clone(),
            self.model.module(i).clone(),
            config,
            0,
            self.cfg.scan_max,
            self.cfg.window,
        )
        .expect("nonempty range");
        self.scans.lock().expect("scan cache").insert((i, config), report.clone());
        report
    }

    /// Fusion table at the engine's level with its consistency checks,
    /// computed once.
    pub fn table(&self) -> &(Option<FusionTable>, Vec<Check>) {
        self.table.get_or_init(|| self.fusion_table())
    }

    pub fn quotient(&self, i: usize) -> &ModuleQuotient<T> {
        self.quotients[i].get_or_init(|| self.build_quotient(i))
    }

    fn build_quotient(&self, i: usize) -> ModuleQuotient<T> {
        let n = self.cfg.n;
        let carrier = self.model.module(i).clone();
        let mut span = QuotientSpan::new(self.model.vacuum().clone(), carrier.clone(), SpanConfig::bimodule_enriched(n));
        span.extend_to(self.cfg.scan_max);
        let report = span.report(0, self.cfg.window);
        let cosets = span.coset_basis();
        let mut quotient =
            ModuleQuotient { report, cosets, problem: None, right: HashMap::new(), left: HashMap::new() };
        if quotient.report.stabilized_dim.is_none() {
            quotient.problem =
                Some(format!("quotient of {} did not stabilize by W = {}", carrier.label(), self.cfg.scan_max));
            return quotient;
        }
        let budget = self.cfg.budget + 2;
        let keys: Vec<&PbwKey> = self.voa_keys(budget).collect();
        let m = &*carrier;
        let cosets = &quotient.cosets;
        type Products<T> = Vec<(PbwKey, Vec<GradedVector<T>>, Vec<GradedVector<T>>)>;
        let raw: Products<T> = pool().install(|| {
            keys.par_iter()
                .map(|b| {
                    let bv = GradedVector::basis((*b).clone());
                    let r = cosets.iter().map(|x| star_right(m, &GradedVector::basis(x.clone()), &bv, n)).collect();
                    let l = cosets.iter().map(|x| star_left(m, &bv, &GradedVector::basis(x.clone()), n)).collect();
                    ((*b).clone(), r, l)
                })
                .collect()
        });
        let need = raw
            .iter()
            .flat_map(|(_, r, l)| r.iter().chain(l))
            .filter_map(|v| v.max_degree())
            .max()
            .unwrap_or(0);
        if !span.extend_saturating(need) || span.coset_basis() != quotient.cosets {
            quotient.problem = Some(format!(
                "quotient of {} grew while extending reductions to degree {need}",
                carrier.label()
            ));
            return quotient;
        }
        let index: HashMap<&PbwKey, usize> = quotient.cosets.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let coords = |v: &GradedVector<T>| -> SparseVector<T> {
            let r = span.reduce_built(v).expect("span extended far enough");
            SparseVector::from_pairs(r.into_terms().map(|(k, c)| (index[&k], c)))
        };
        let (right, left): (Vec<_>, Vec<_>) = pool().install(|| {
            raw.par_iter()
                .map(|(b, r, l)| {
                    ((b.clone(), r.iter().map(&coords).collect()), (b.clone(), l.iter().map(&coords).collect()))
                })
                .unzip()
        });
        quotient.right = right.into_iter().collect();
        quotient.left = left.into_iter().collect();
        quotient
    }

    /// Balanced maps `f: A_n(M^i) x M^j(s) -> M^k(t)` with
    /// `f(x * b, u) = f(x, o(b) u)` and `f(a * x, u) = o(a) f(x, u)` for VOA
    /// basis elements `a, b` of degree at most `budget`.
    pub fn balanced_hom(&self, i: usize, src: Piece, dst: Piece, budget: u32) -> Result<HomSpace<T>> {
        let (dj, dk) = (src.dim(self.model), dst.dim(self.model));
        if dj == 0 || dk == 0 {
            return Err(Error::Hypothesis(format!(
                "pieces {} and {} must be nonzero",
                src.label(self.model),
                dst.label(self.model)
            )));
        }
        if src.level > self.cfg.n || dst.level > self.cfg.n || budget > self.cfg.budget + 2 {
            return Err(Error::InvalidArgument("piece level or budget outside the engine range".into()));
        }
        let q = self.quotient(i);
        if let Some(p) = &q.problem {
            return Err(Error::NotStabilized(p.clone()));
        }
        let dx = q.cosets.len();
        let idx = |x: usize, u: usize, e: usize| (x * dj + u) * dk + e;
        let mut rows = Vec::new();
        for b in self.voa_keys(budget) {
            let ob = self.action(b, src);
            let oa = self.action(b, dst);
            for x in 0..dx {
                let xb = &q.right[b][x];
                let ax = &q.left[b][x];
                for u in 0..dj {
                    for e in 0..dk {
                        let mut pairs = Vec::new();
                        for (x2, c) in xb.entries() {
                            pairs.push((idx(*x2, u, e), c.clone()));
                        }
                        for u2 in 0..dj {
                            let c = ob.get(u2, u);
                            if !c.is_zero() {
                                pairs.push((idx(x, u2, e), -c.clone()));
                            }
                        }
                        rows.push(SparseVector::from_pairs(pairs));
                        let mut pairs = Vec::new();
                        for (x2, c) in ax.entries() {
                            pairs.push((idx(*x2, u, e), c.clone()));
                        }
                        for e2 in 0..dk {
                            let c = oa.get(e, e2);
                            if !c.is_zero() {
                                pairs.push((idx(x, u, e2), -c.clone()));
                            }
                        }
                        rows.push(SparseVector::from_pairs(pairs));
                    }
                }
            }
        }
        let sol = nullspace(&rows, dx * dj * dk);
        Ok(HomSpace { dim: sol.rank(), solutions: sol.rows().cloned().collect(), cosets: dx, dj, dk })
    }

    /// `N_{ij}^k` from every admissible `(s, t)` pair.
    pub fn fusion_cells(&self, budget: u32) -> Vec<FusionCell> {
        let model = self.model;
        let nm = model.num_modules();
        let mut jobs = Vec::new();
        for i in 0..nm {
            for j in 0..nm {
                for k in 0..nm {
                    for s in 0..=self.cfg.n {
                        for t in 0..=self.cfg.n {
                            let (src, dst) = (Piece::new(j, s), Piece::new(k, t));
                            if src.dim(model) > 0 && dst.dim(model) > 0 {
                                jobs.push((i, src, dst));
                            }
                        }
                    }
                }
            }
        }
        for i in 0..nm {
            self.quotient(i);
        }
        pool().install(|| {
            jobs.into_par_iter()
                .map(|(i, src, dst)| FusionCell {
                    i,
                    src,
                    dst,
                    value: self.balanced_hom(i, src, dst, budget).map(|h| h.dim).map_err(|e| e.to_string()),
                })
                .collect()
        })
    }

    /// Fusion table with its consistency checks: independence of `(s, t)`
    /// and of the budget, unit row, and symmetry.
    pub fn fusion_table(&self) -> (Option<FusionTable>, Vec<Check>) {
        let model = self.model;
        let n = self.cfg.n;
        let labels: Vec<String> = model.modules().iter().map(|m| m.label().to_string()).collect();
        let nm = labels.len();
        let cells = self.fusion_cells(self.cfg.budget);
        let wider = self.fusion_cells(self.cfg.budget + 2);
        let mut checks = Vec::new();
        if let Some(bad) = cells.iter().find(|c| c.value.is_err()) {
            let why = bad.value.clone().unwrap_err();
            checks.push(Check::new(
                format!("fusion.table[n={n}]"),
                Status::Inconclusive,
                Witness::text(format!("cell {}: {why}", bad.describe(model))).at_cutoff(self.cfg.scan_max),
            ));
            return (None, checks);
        }
        let mut entries = vec![vec![vec![None::<usize>; nm]; nm]; nm];
        let mut inconsistent = None;
        for c in &cells {
            let v = *c.value.as_ref().unwrap();
            let slot = &mut entries[c.i][c.src.module][c.dst.module];
            match slot {
                None => *slot = Some(v),
                Some(prev) if *prev != v && inconsistent.is_none() => {
                    inconsistent = Some(format!("{} gives {v}, another (s, t) gives {prev}", c.describe(model)))
                }
                _ => {}
            }
        }
        let entries: Vec<Vec<Vec<usize>>> =
            entries.into_iter().map(|a| a.into_iter().map(|b| b.into_iter().map(|x| x.unwrap_or(0)).collect()).collect()).collect();
        let table = FusionTable { n, labels, entries };
        checks.push(match inconsistent {
            None => Check::pass(
                format!("fusion.st-independence[n={n}]"),
                format!("{} cells agree across all nonzero (s, t) <= {n}", cells.len()),
            ),
            Some(w) => Check::fail(format!("fusion.st-independence[n={n}]"), Witness::text(w)),
        });
        let moved = cells.iter().zip(&wider).find(|(a, b)| a.value != b.value);
        checks.push(match moved {
            None => Check::pass(
                format!("fusion.budget-invariance[n={n}]"),
                format!("identical dimensions with budgets {} and {}", self.cfg.budget, self.cfg.budget + 2),
            ),
            Some((a, b)) => Check::new(
                format!("fusion.budget-invariance[n={n}]"),
                Status::Inconclusive,
                Witness::text(format!("{}: {:?} vs {:?} with the larger budget", a.describe(model), a.value, b.value)),
            ),
        });
        let mut unit = Vec::new();
        for j in 0..nm {
            for k in 0..nm {
                if table.get(0, j, k) != usize::from(j == k) {
                    unit.push(format!("N[0][{}][{}] = {}", table.labels[j], table.labels[k], table.get(0, j, k)));
                }
            }
        }
        checks.push(if unit.is_empty() {
            Check::pass(format!("fusion.unit-row[n={n}]"), "N_{0j}^k = delta_{jk}")
        } else {
            Check::fail(format!("fusion.unit-row[n={n}]"), Witness::text(unit.join("; ")))
        });
        let mut asym = Vec::new();
        for i in 0..nm {
            for j in 0..nm {
                for k in 0..nm {
                    if table.get(i, j, k) != table.get(j, i, k) {
                        asym.push(format!("({}, {}, {})", table.labels[i], table.labels[j], table.labels[k]));
                    }
                }
            }
        }
        checks.push(if asym.is_empty() {
            Check::pass(format!("fusion.symmetry[n={n}]"), "N_{ij}^k = N_{ji}^k for all labels")
        } else {
            Check::fail(format!("fusion.symmetry[n={n}]"), Witness::text(format!("asymmetric at {}", asym.join(", "))))
        });
        (Some(table), checks)
    }

    /// `dim S* (x)_A T`: `dS dT` minus the rank of `(f a) (x) t - f (x) (a t)`.
    pub fn tensor_over_algebra_dim(&self, s: Piece, t: Piece) -> usize {
        let (ds, dt) = (s.dim(self.model), t.dim(self.model));
        let mut rows = Vec::new();
        for a in self.voa_keys(self.cfg.budget) {
            let os = self.action(a, s);
            let ot = self.action(a, t);
            for p in 0..ds {
                for q in 0..dt {
                    let mut pairs = Vec::new();
                    for r in 0..ds {
                        let c = os.get(p, r);
                        if !c.is_zero() {
                            pairs.push((r * dt + q, c.clone()));
                        }
                    }
                    for q2 in 0..dt {
                        let c = ot.get(q2, q);
                        if !c.is_zero() {
                            pairs.push((p * dt + q2, -c.clone()));
                        }
                    }
                    rows.push(SparseVector::from_pairs(pairs));
                }
            }
        }
        ds * dt - rank(&rows)
    }
}

#[derive(Clone, Debug)]
pub struct FusionCell {
    pub i: usize,
    pub src: Piece,
    pub dst: Piece,
    pub value: std::result::Result<usize, String>,
}

impl FusionCell {
    pub fn describe<T: Field>(&self, model: &Model<T>) -> String {
        format!("({}, {}, {})", model.module(self.i).label(), self.src.label(model), self.dst.label(model))
    }
}
