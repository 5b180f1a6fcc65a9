//! Suites on the representation side: zero-mode filtration, the algebra
//! action on graded pieces, semisimplicity, and the checks that tie the
//! fusion table back to quotient dimensions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::action::{o_matrix, Piece};
use super::hom::FusionEngine;
use crate::bimodule::checks::{derive_seed, random_vector};
use crate::bimodule::{generators_at, star_left, SpanConfig};
use crate::linalg::{rank, Matrix, SparseVector, SubspaceBasis};
use crate::parallel::pool;
use crate::report::{Check, FusionTable, Status, Witness};
use crate::scalar::Field;
use crate::voa::{GradedVector, PbwKey, Space};

fn matrix_text<T: Field>(m: &Matrix<T>) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|r| {
            let cells: Vec<String> = (0..m.cols()).map(|c| m.get(r, c).to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

/// First mode `u_m`, `m` in `wt u + n ..= wt u + n + 2`, that does not kill
/// `w`. Such modes must vanish on every piece of degree at most `n`.
pub fn filter_violation<T: Field>(
    space: &Space<T>,
    u: &PbwKey,
    w: &GradedVector<T>,
    n: u32,
) -> Option<(i64, GradedVector<T>)> {
    let wt = u.degree() as i64;
    let uv = GradedVector::basis(u.clone());
    (wt + n as i64..=wt + n as i64 + 2).find_map(|m| {
        let image = space.mode_apply(&uv, m, w);
        (!image.is_zero()).then_some((m, image))
    })
}

/// `u_m M^i(s) = 0` for `m > wt u - 1 + n`, every nonzero piece with
/// `s <= n` and every VOA basis element of degree at most `budget`.
pub fn omega_filter<T: Field>(engine: &FusionEngine<'_, T>, budget: u32) -> Vec<Check> {
    let model = engine.model();
    let n = engine.config().n;
    let keys: Vec<PbwKey> = model.vacuum().basis_upto(budget);
    let mut checks: Vec<Check> = engine
        .pieces()
        .into_iter()
        .map(|p| {
            let space = model.module(p.module);
            let name = format!("omega-filter[M={},s={},n={n}]", space.label(), p.level);
            let mut count = 0usize;
            for u in &keys {
                for w in space.basis(p.level) {
                    count += 1;
                    if let Some((m, image)) = filter_violation(space, u, &GradedVector::basis(w.clone()), n) {
                        let sym = space.vector_symbol();
                        let summary = format!(
                            "mode {m} of {} does not kill {}",
                            u.render(&model.vacuum().vector_symbol()),
                            w.render(&sym)
                        );
                        return Check::fail(name, Witness::text(summary).with_vector(space, &image));
                    }
                }
            }
            Check::pass(name, format!("{count} pairs (u, w) with deg u <= {budget}, three modes each"))
        })
        .collect();
    checks.push(omega_filter_self_test(engine));
    checks
}

/// Feeds the filter check vectors of degree `n + 1` and expects it to trip.
pub fn omega_filter_self_test<T: Field>(engine: &FusionEngine<'_, T>) -> Check {
    let model = engine.model();
    let n = engine.config().n;
    let name = format!("omega-filter.self-test[n={n}]");
    let omega = PbwKey::new(&[2]);
    for space in model.modules() {
        for w in space.basis(n + 1) {
            if filter_violation(space, &omega, &GradedVector::basis(w.clone()), n).is_some() {
                return Check::pass(
                    name,
                    format!(
                        "a degree-{} vector {} placed as a degree-{n} input is rejected",
                        n + 1,
                        w.render(&space.vector_symbol())
                    ),
                );
            }
        }
    }
    Check::fail(name, Witness::text("no mis-graded input tripped the filter check"))
}

/// `o(x) = 0` on every piece for the generators of the `A_n(V)` span up to
/// degree `degree`.
pub fn o_factoring<T: Field>(engine: &FusionEngine<'_, T>, degree: u32) -> Check {
    let model = engine.model();
    let n = engine.config().n;
    let voa = model.vacuum();
    let config = SpanConfig::zhu(n);
    let gens: Vec<_> = (0..=degree).flat_map(|d| generators_at(voa, voa, &config, d)).collect();
    let pieces = engine.pieces();
    let name = format!("representation.o-factoring[n={n}]");
    let bad = pool().install(|| {
        gens.par_iter().find_map_first(|g| {
            let x = g.evaluate(voa, config.params);
            pieces.iter().find_map(|p| {
                let m = o_matrix(model.module(p.module), &x, p.level);
                (!m.is_zero()).then(|| (g.describe(&voa.vector_symbol(), &voa.vector_symbol()), p.label(model), m))
            })
        })
    });
    match bad {
        None => Check::pass(name, format!("{} generators of degree <= {degree} act as zero on {} pieces", gens.len(), pieces.len())),
        Some((g, piece, m)) => Check::fail(name, Witness::text(format!("o({g}) on {piece} is {}", matrix_text(&m)))),
    }
}

/// `o(u *_n v) = o(u) o(v)` on every piece: all basis pairs with
/// `deg u + deg v <= budget` plus `random` seeded pairs of degree at most
/// `random_degree` each.
pub fn representation<T: Field>(
    engine: &FusionEngine<'_, T>,
    budget: u32,
    random: usize,
    random_degree: u32,
    seed: u64,
) -> Vec<Check> {
    let model = engine.model();
    let n = engine.config().n;
    let voa = model.vacuum();
    let sym = voa.vector_symbol();
    let mut pairs: Vec<(String, GradedVector<T>, GradedVector<T>)> = Vec::new();
    for du in 0..=budget {
        for dv in 0..=budget - du {
            for u in voa.basis(du) {
                for v in voa.basis(dv) {
                    pairs.push((
                        format!("({}, {})", u.render(&sym), v.render(&sym)),
                        GradedVector::basis(u.clone()),
                        GradedVector::basis(v),
                    ));
                }
            }
        }
    }
    let degrees: Vec<u32> = (0..=random_degree).filter(|&d| voa.dim(d) > 0).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &format!("representation[n={n}]")));
    for r in 0..random {
        let du = degrees[rng.gen_range(0..degrees.len())];
        let dv = degrees[rng.gen_range(0..degrees.len())];
        let u = random_vector(voa, du, &mut rng).expect("nonzero degree");
        let v = random_vector(voa, dv, &mut rng).expect("nonzero degree");
        pairs.push((format!("random #{r} degrees ({du}, {dv})"), u, v));
    }
    let products: Vec<GradedVector<T>> =
        pool().install(|| pairs.par_iter().map(|(_, u, v)| star_left(voa, u, v, n)).collect());
    engine
        .pieces()
        .into_iter()
        .map(|p| {
            let space = model.module(p.module);
            let name = format!("representation.compatibility[M={},s={},n={n}]", space.label(), p.level);
            let bad = pool().install(|| {
                pairs.par_iter().zip(&products).find_map_first(|((label, u, v), uv)| {
                    let lhs = o_matrix(space, uv, p.level);
                    let rhs = o_matrix(space, u, p.level).mul(&o_matrix(space, v, p.level));
                    (lhs != rhs).then(|| format!("{label}: o(u*v) = {} but o(u)o(v) = {}", matrix_text(&lhs), matrix_text(&rhs)))
                })
            });
            match bad {
                None => Check::pass(name, format!("{} pairs agree exactly", pairs.len())),
                Some(w) => Check::fail(name, Witness::text(w)),
            }
        })
        .collect()
}

/// Rank of the joint zero-mode map `V_{<=W} -> (+) End M^i(s)` against
/// `sum dim M^i(s)^2` and the stabilized dimension of `A_n(V)`; per-piece
/// irreducibility; and, at `n >= 1`, that the previous level's span still
/// acts on the top pieces.
pub fn semisimplicity<T: Field>(engine: &FusionEngine<'_, T>) -> Vec<Check> {
    let model = engine.model();
    let cfg = *engine.config();
    let n = cfg.n;
    let top = cfg.scan_max.max(cfg.budget + 2);
    let pieces = engine.pieces();
    let keys: Vec<&PbwKey> = engine.voa_keys(top).collect();
    let mut checks = Vec::new();

    let offsets: Vec<usize> = pieces
        .iter()
        .scan(0, |acc, p| {
            let at = *acc;
            *acc += p.dim(model).pow(2);
            Some(at)
        })
        .collect();
    let rows: Vec<SparseVector<T>> = keys
        .iter()
        .map(|k| {
            SparseVector::from_pairs(pieces.iter().zip(&offsets).flat_map(|(p, off)| {
                engine.action(k, *p).flatten().entries().iter().map(|(c, v)| (c + off, v.clone())).collect::<Vec<_>>()
            }))
        })
        .collect();
    let joint = rank(&rows);
    let squares: usize = pieces.iter().map(|p| p.dim(model).pow(2)).sum();
    let stabilized = engine.scan(0, SpanConfig::zhu(n)).stabilized_dim;
    let name = format!("semisimplicity.rank[n={n}]");
    checks.push(match stabilized {
        None => Check::new(
            name,
            Status::Inconclusive,
            Witness::text(format!("joint rank {joint}; the A_n(V) quotient did not stabilize")).at_cutoff(cfg.scan_max),
        ),
        Some(d) => {
            let summary = format!(
                "joint rank over V_<= {top} is {joint}; sum of squared piece dims {squares}; stabilized dim A_n(V) {d}"
            );
            if joint == squares && squares == d {
                Check::pass(name, summary)
            } else {
                Check::fail(name, Witness::text(summary))
            }
        }
    });

    let mut reducible = Vec::new();
    for p in &pieces {
        let own: Vec<SparseVector<T>> = keys.iter().map(|k| engine.action(k, *p).flatten()).collect();
        let r = rank(&own);
        if r != p.dim(model).pow(2) {
            reducible.push(format!("{}: image rank {r}, expected {}", p.label(model), p.dim(model).pow(2)));
        }
    }
    let name = format!("semisimplicity.irreducibility[n={n}]");
    checks.push(if reducible.is_empty() {
        Check::pass(name, format!("each of {} pieces has full matrix image", pieces.len()))
    } else {
        Check::fail(name, Witness::text(reducible.join("; ")))
    });

    let name = format!("semisimplicity.correspondence[n={n}]");
    if n == 0 {
        checks.push(Check::not_applicable(name, "only defined for n >= 1"));
    } else {
        let voa = model.vacuum();
        let config = SpanConfig::zhu(n - 1);
        let gens: Vec<GradedVector<T>> = (0..=cfg.budget + 2)
            .flat_map(|d| generators_at(voa, voa, &config, d))
            .map(|g| g.evaluate(voa, config.params))
            .collect();
        let mut dead = Vec::new();
        for p in pieces.iter().filter(|p| p.level == n) {
            let space = model.module(p.module);
            if gens.iter().all(|x| o_matrix(space, x, n).is_zero()) {
                dead.push(p.label(model));
            }
        }
        checks.push(if dead.is_empty() {
            Check::pass(name, format!("the level-{} span acts nontrivially on every nonzero degree-{n} piece", n - 1))
        } else {
            Check::fail(name, Witness::text(format!("annihilated pieces: {}", dead.join(", "))))
        });
    }
    checks
}

/// Fusion table plus its consistency checks.
pub fn fusion<T: Field>(engine: &FusionEngine<'_, T>) -> (Option<FusionTable>, Vec<Check>) {
    engine.table().clone()
}

fn table_or_checks<'a, T: Field>(engine: &'a FusionEngine<'_, T>, name: &str) -> Result<&'a FusionTable, Check> {
    match &engine.table().0 {
        Some(t) => Ok(t),
        None => Err(Check::new(
            name,
            Status::Inconclusive,
            Witness::text("fusion table unavailable").at_cutoff(engine.config().scan_max),
        )),
    }
}

/// `sum_{j,k} sum_{s,t <= n} N_{ij}^k dim M^k(t) dim M^{j*}(s)`.
pub fn bimodule_dim_formula<T: Field>(engine: &FusionEngine<'_, T>, table: &FusionTable, i: usize, n: u32) -> usize {
    let model = engine.model();
    let nm = model.num_modules();
    let upto = |m: usize| -> usize { (0..=n).map(|s| model.module(m).dim(s)).sum() };
    let mut total = 0;
    for j in 0..nm {
        for k in 0..nm {
            total += table.get(i, j, k) * upto(k) * upto(model.dual(j));
        }
    }
    total
}

/// Stabilized `dim A_n(M^i)` against the decomposition formula, for every
/// module; for the VOA also against the circle-only span.
pub fn bimodule_dims<T: Field>(engine: &FusionEngine<'_, T>) -> Vec<Check> {
    let model = engine.model();
    let n = engine.config().n;
    let table = match table_or_checks(engine, &format!("bimodule-dims[n={n}]")) {
        Ok(t) => t,
        Err(c) => return vec![c],
    };
    let mut checks = Vec::new();
    for i in 0..model.num_modules() {
        let label = model.module(i).label();
        let expected = bimodule_dim_formula(engine, table, i, n);
        let mut families = vec![("enriched", engine.quotient(i).report.stabilized_dim)];
        if i == 0 {
            families.push(("circ-only", engine.scan(0, SpanConfig::bimodule(n)).stabilized_dim));
        }
        for (family, dim) in families {
            let name = format!("bimodule-dims.{family}[M={label},n={n}]");
            checks.push(match dim {
                None => Check::new(
                    name,
                    Status::Inconclusive,
                    Witness::text("quotient did not stabilize").at_cutoff(engine.config().scan_max),
                ),
                Some(d) => Check::compare(name, d, expected, "stabilized dim vs fusion decomposition"),
            });
        }
    }
    checks
}

/// Layer `A_n(M^i)` over `A_{n-1}(M^i)` against the fusion formula, and for
/// the VOA the algebra layer `A_n(V) - A_{n-1}(V) = sum_i dim M^i(n)^2`.
pub fn kernel_layer<T: Field>(engine: &FusionEngine<'_, T>) -> Vec<Check> {
    let model = engine.model();
    let n = engine.config().n;
    if n == 0 {
        return vec![Check::not_applicable(format!("kernel-layer[n={n}]"), "only defined for n >= 1")];
    }
    let table = match table_or_checks(engine, &format!("kernel-layer[n={n}]")) {
        Ok(t) => t,
        Err(c) => return vec![c],
    };
    let nm = model.num_modules();
    let dim = |m: usize, s: u32| model.module(m).dim(s);
    let cutoff = engine.config().scan_max;
    let inconclusive = |name: String| Check::new(name, Status::Inconclusive, Witness::text("quotient did not stabilize").at_cutoff(cutoff));
    let mut checks = Vec::new();
    for i in 0..nm {
        let label = model.module(i).label();
        let name = format!("kernel-layer.bimodule[M={label},n={n}]");
        let mut expected = 0usize;
        for j in 0..nm {
            let jd = model.dual(j);
            for k in 0..nm {
                let nijk = table.get(i, j, k);
                for s in 0..=n {
                    expected += nijk * (dim(k, n) * dim(jd, s) + dim(k, s) * dim(jd, n));
                }
                expected -= nijk * dim(k, n) * dim(jd, n);
            }
        }
        let upper = engine.quotient(i).report.stabilized_dim;
        let lower = engine.scan(i, SpanConfig::bimodule_enriched(n - 1)).stabilized_dim;
        checks.push(match (upper, lower) {
            (Some(a), Some(b)) => Check::compare(name, a as i64 - b as i64, expected as i64, "layer dimension vs fusion formula"),
            _ => inconclusive(name),
        });
    }
    let name = format!("kernel-layer.algebra[n={n}]");
    let expected: usize = (0..nm).map(|i| dim(i, n).pow(2)).sum();
    let upper = engine.scan(0, SpanConfig::zhu(n)).stabilized_dim;
    let lower = engine.scan(0, SpanConfig::zhu(n - 1)).stabilized_dim;
    checks.push(match (upper, lower) {
        (Some(a), Some(b)) => Check::compare(name, a as i64 - b as i64, expected as i64, "A_n(V) layer vs sum dim M^i(n)^2"),
        _ => inconclusive(name),
    });
    checks
}

/// `dim S* (x)_A T = delta_{S,T}` over all ordered pairs of nonzero pieces.
pub fn tensor_lemma<T: Field>(engine: &FusionEngine<'_, T>) -> Check {
    let model = engine.model();
    let n = engine.config().n;
    let pieces = engine.pieces();
    let pairs: Vec<(Piece, Piece)> = pieces.iter().flat_map(|s| pieces.iter().map(move |t| (*s, *t))).collect();
    let dims: Vec<usize> = pool().install(|| pairs.par_iter().map(|(s, t)| engine.tensor_over_algebra_dim(*s, *t)).collect());
    let name = format!("tensor-lemma[n={n}]");
    for ((s, t), d) in pairs.iter().zip(&dims) {
        let expected = usize::from(s == t);
        if *d != expected {
            return Check::fail(
                name,
                Witness::text(format!("dim {}* (x) {} = {d}, expected {expected}", s.label(model), t.label(model))),
            );
        }
    }
    Check::pass(name, format!("{} ordered pairs give delta", pairs.len()))
}

/// Every nonzero balanced map is onto `Hom(M^j(s), M^k(t))` as `x` ranges
/// over the cosets.
pub fn surjectivity<T: Field>(engine: &FusionEngine<'_, T>) -> Check {
    let model = engine.model();
    let n = engine.config().n;
    let name = format!("surjectivity[n={n}]");
    let cells = engine.fusion_cells(engine.config().budget);
    let mut tested = 0usize;
    for cell in &cells {
        let hom = match engine.balanced_hom(cell.i, cell.src, cell.dst, engine.config().budget) {
            Ok(h) => h,
            Err(e) => {
                return Check::new(name, Status::Inconclusive, Witness::text(e.to_string()).at_cutoff(engine.config().scan_max))
            }
        };
        let block = hom.dj * hom.dk;
        for f in &hom.solutions {
            tested += 1;
            let mut span = SubspaceBasis::new();
            for x in 0..hom.cosets {
                let slice = SparseVector::from_pairs(
                    f.entries().iter().filter(|(c, _)| c / block == x).map(|(c, v)| (c % block, v.clone())),
                );
                span.insert(slice);
            }
            if span.rank() != block {
                return Check::fail(
                    name,
                    Witness::text(format!(
                        "{}: images span rank {} of {block}",
                        cell.describe(model),
                        span.rank()
                    )),
                );
            }
        }
    }
    if tested == 0 {
        Check::not_applicable(name, "no nonzero balanced maps")
    } else {
        Check::pass(name, format!("{tested} basis solutions onto their full Hom spaces"))
    }
}

fn random_matrix<T: Field, R: Rng>(rows: usize, cols: usize, rng: &mut R) -> Matrix<T> {
    Matrix::from_rows((0..rows).map(|_| (0..cols).map(|_| T::from_int(rng.gen_range(-3..=3))).collect()).collect())
}

/// `N_{i*j}^k = N_{ik}^j`, equal dimensions for dual modules, and the
/// pairing `(a X b, Y) = (X, b Y a)` between `S (x) T*` and `T (x) S*`.
pub fn duality<T: Field>(engine: &FusionEngine<'_, T>, seed: u64) -> Vec<Check> {
    let model = engine.model();
    let n = engine.config().n;
    let mut checks = Vec::new();
    let negative: Vec<String> = model
        .modules()
        .iter()
        .skip(1)
        .filter(|m| *m.h() <= T::zero())
        .map(|m| format!("{} has lowest weight {}", m.label(), m.h()))
        .collect();
    checks.push(if negative.is_empty() {
        Check::pass(format!("duality.hypothesis[n={n}]"), "every nonvacuum lowest weight is positive")
    } else {
        Check::not_applicable(
            format!("duality.hypothesis[n={n}]"),
            format!("positivity of lowest weights fails ({}); remaining checks run regardless", negative.join(", ")),
        )
    });
    match table_or_checks(engine, &format!("duality.multiplicities[n={n}]")) {
        Err(c) => checks.push(c),
        Ok(table) => {
            let nm = model.num_modules();
            let mut bad = Vec::new();
            for i in 0..nm {
                for j in 0..nm {
                    for k in 0..nm {
                        if table.get(model.dual(i), j, k) != table.get(i, k, j) {
                            bad.push(format!("({}, {}, {})", table.labels[i], table.labels[j], table.labels[k]));
                        }
                    }
                }
            }
            let name = format!("duality.multiplicities[n={n}]");
            checks.push(if bad.is_empty() {
                Check::pass(name, "N_{i* j}^k = N_{i k}^j for all labels")
            } else {
                Check::fail(name, Witness::text(format!("mismatch at {}", bad.join(", "))))
            });
            let mut dims = Vec::new();
            for i in 0..nm {
                let a = engine.quotient(i).stabilized_dim();
                let b = engine.quotient(model.dual(i)).stabilized_dim();
                if a != b {
                    dims.push(format!("{}: {a:?} vs {b:?}", table.labels[i]));
                }
            }
            let name = format!("duality.dimensions[n={n}]");
            checks.push(if dims.is_empty() {
                Check::pass(name, "dim A_n(M^i) = dim A_n(M^{i*})")
            } else {
                Check::fail(name, Witness::text(dims.join("; ")))
            });
        }
    }
    checks.push(pairing(engine, seed));
    checks
}

fn pairing<T: Field>(engine: &FusionEngine<'_, T>, seed: u64) -> Check {
    let model = engine.model();
    let n = engine.config().n;
    let name = format!("duality.pairing[n={n}]");
    let pieces = engine.pieces();
    let nonvacuum: Vec<Piece> = pieces.iter().copied().filter(|p| p.module != 0).collect();
    let (s, t) = match nonvacuum.as_slice() {
        [a, b, ..] => (*a, *b),
        [a] => (*a, *a),
        [] => return Check::not_applicable(name, "no nonvacuum pieces"),
    };
    let (ds, dt) = (s.dim(model), t.dim(model));
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &name));
    let keys: Vec<&PbwKey> = engine.voa_keys(engine.config().budget).collect();
    let combo = |rng: &mut ChaCha8Rng| -> GradedVector<T> {
        GradedVector::from_terms(keys.iter().map(|k| ((*k).clone(), T::from_int(rng.gen_range(-3..=3)))))
    };
    let (a, b) = (combo(&mut rng), combo(&mut rng));
    let sa = engine.action_of(&a, s);
    let tb = engine.action_of(&b, t);
    let x: Matrix<T> = random_matrix(ds, dt, &mut rng);
    let y: Matrix<T> = random_matrix(dt, ds, &mut rng);
    let lhs = sa.mul(&x).mul(&tb).mul(&y).trace();
    let rhs = x.mul(&tb.mul(&y).mul(&sa)).trace();
    let summary = format!(
        "S = {}, T = {}, random a, b of degree <= {}: (aXb, Y) = {lhs}, (X, bYa) = {rhs}",
        s.label(model),
        t.label(model),
        engine.config().budget
    );
    if lhs == rhs {
        Check::pass(name, summary)
    } else {
        Check::fail(name, Witness::text(summary))
    }
}

/// `dim A_{t,s}(V) = sum_i sum_{l <= min(t, s)} dim M^i(t - l) dim M^{i*}(s - l)`
/// for all `t, s <= n`, and the `(n, n)` quotient never exceeds the bimodule
/// quotient of the VOA at equal cutoff.
pub fn ats_dims<T: Field>(engine: &FusionEngine<'_, T>) -> Vec<Check> {
    let model = engine.model();
    let n = engine.config().n;
    let cutoff = engine.config().scan_max;
    let dim = |m: usize, s: u32| model.module(m).dim(s);
    let mut checks = Vec::new();
    for t in 0..=n {
        for s in 0..=n {
            let name = format!("ats-dims[t={t},s={s}]");
            let expected: usize = (0..model.num_modules())
                .map(|i| (0..=t.min(s)).map(|l| dim(i, t - l) * dim(model.dual(i), s - l)).sum::<usize>())
                .sum();
            checks.push(match engine.scan(0, SpanConfig::pair(t, s)).stabilized_dim {
                None => Check::new(name, Status::Inconclusive, Witness::text("quotient did not stabilize").at_cutoff(cutoff)),
                Some(d) => Check::compare(name, d, expected, "stabilized dim vs closed form"),
            });
        }
    }
    let pair = engine.scan(0, SpanConfig::pair(n, n));
    let full = engine.quotient(0).report.clone();
    let name = format!("ats-dims.containment[n={n}]");
    let over = pair.table.iter().zip(&full.table).find(|(p, f)| p.dim_quotient > f.dim_quotient);
    checks.push(match over {
        None => Check::pass(name, format!("A_{{{n},{n}}} quotient <= bimodule quotient at every cutoff up to {cutoff}")),
        Some((p, f)) => Check::fail(
            name,
            Witness::text(format!("W = {}: {} > {}", p.w, p.dim_quotient, f.dim_quotient)).at_cutoff(p.w),
        ),
    });
    checks
}
