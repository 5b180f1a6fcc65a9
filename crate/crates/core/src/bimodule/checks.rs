//! Certificate suites for the bimodule identities.
//!
//! Identities that must hold on the nose are checked exactly (FAIL on any
//! nonzero difference). Identities that hold modulo a span are certified by
//! membership at the cutoff equal to the degree of the tested vector; a
//! missing certificate is INCONCLUSIVE, never FAIL.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::products::{circ, commutator_term, l_term, phi, reduction_element, star_left, star_right};
use super::span::{Membership, QuotientSpan, SpanConfig};
use crate::parallel::pool;
use crate::report::{Check, Status, Witness};
use crate::scalar::Field;
use crate::voa::{GradedVector, Model, PbwKey, Space};

/// Which instances the suites run on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    /// Every basis triple with total degree at most this.
    pub budget: u32,
    /// Number of extra seeded random triples.
    pub random_count: usize,
    /// Total degree bound of the random triples.
    pub random_budget: u32,
    /// Bound each element's degree instead of the total degree.
    pub per_element: bool,
    pub seed: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { budget: 4, random_count: 200, random_budget: 5, per_element: false, seed: 20240601 }
    }
}

/// `u, v` in the VOA and `w` in the carrier.
#[derive(Clone, Debug)]
pub struct Triple<T> {
    pub u: GradedVector<T>,
    pub v: GradedVector<T>,
    pub w: GradedVector<T>,
    pub label: String,
}

/// Seeds derived from the run seed and a stream tag, so separate suites
/// draw independent but reproducible samples.
pub fn derive_seed(seed: u64, tag: &str) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for b in tag.bytes() {
        h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
        h ^= h >> 29;
    }
    h
}

/// Random integer combination (coefficients in -3..=3, not all zero) of the
/// basis keys of one degree.
pub fn random_vector<T: Field, R: Rng>(space: &Space<T>, degree: u32, rng: &mut R) -> Option<GradedVector<T>> {
    let keys = space.basis(degree);
    if keys.is_empty() {
        return None;
    }
    loop {
        let v = GradedVector::from_terms(keys.iter().map(|k| (k.clone(), T::from_int(rng.gen_range(-3..=3)))));
        if !v.is_zero() {
            return Some(v);
        }
    }
}

pub fn sample_triples<T: Field>(voa: &Space<T>, carrier: &Space<T>, cfg: &SampleConfig, tag: &str) -> Vec<Triple<T>> {
    let vs = voa.vector_symbol();
    let ms = carrier.vector_symbol();
    let mut out = Vec::new();
    let mut full = Vec::new();
    for du in 0..=cfg.budget {
        for dv in 0..=cfg.budget {
            for dw in 0..=cfg.budget {
                if cfg.per_element || du + dv + dw <= cfg.budget {
                    full.push((du, dv, dw));
                }
            }
        }
    }
    full.sort_by_key(|&(a, b, c)| (a + b + c, a, b));
    {
        for (du, dv, dw) in full {
            {
                for u in voa.basis(du) {
                    for v in voa.basis(dv) {
                        for w in carrier.basis(dw) {
                            out.push(Triple {
                                label: format!("({}, {}, {})", u.render(&vs), v.render(&vs), w.render(&ms)),
                                u: GradedVector::basis(u.clone()),
                                v: GradedVector::basis(v.clone()),
                                w: GradedVector::basis(w),
                            });
                        }
                    }
                }
            }
        }
    }
    let mut shapes = Vec::new();
    for du in 0..=cfg.random_budget {
        for dv in 0..=cfg.random_budget {
            for dw in 0..=cfg.random_budget {
                if !cfg.per_element && du + dv + dw > cfg.random_budget {
                    continue;
                }
                if voa.dim(du) > 0 && voa.dim(dv) > 0 && carrier.dim(dw) > 0 {
                    shapes.push((du, dv, dw));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, tag));
    for r in 0..cfg.random_count {
        let &(du, dv, dw) = shapes.choose(&mut rng).expect("degree zero is always available");
        let u = random_vector(voa, du, &mut rng).expect("nonzero piece");
        let v = random_vector(voa, dv, &mut rng).expect("nonzero piece");
        let w = random_vector(carrier, dw, &mut rng).expect("nonzero piece");
        out.push(Triple { label: format!("random #{r} degrees ({du}, {dv}, {dw})"), u, v, w });
    }
    out
}

/// Spans with per-cutoff snapshots, shared between suites.
pub struct SpanCache<T: Field> {
    spans: HashMap<(String, SpanConfig), QuotientSpan<T>>,
}

impl<T: Field> Default for SpanCache<T> {
    fn default() -> Self {
        SpanCache { spans: HashMap::new() }
    }
}

impl<T: Field> SpanCache<T> {
    pub fn get(&mut self, voa: &Arc<Space<T>>, carrier: &Arc<Space<T>>, config: SpanConfig) -> &mut QuotientSpan<T> {
        self.spans
            .entry((carrier.label().to_string(), config))
            .or_insert_with(|| QuotientSpan::new(voa.clone(), carrier.clone(), config).with_snapshots())
    }
}

/// Certifies each vector into the span at its own degree.
pub fn certify_batch<T: Field>(
    name: &str,
    span: &mut QuotientSpan<T>,
    items: Vec<(String, GradedVector<T>)>,
) -> Check {
    if items.is_empty() {
        return Check::not_applicable(name, "no instances in range");
    }
    let top = items.iter().filter_map(|(_, v)| v.max_degree()).max().unwrap_or(0);
    span.extend_to(top);
    let span_ref = &*span;
    let results: Vec<Membership<T>> = pool().install(|| items.par_iter().map(|(_, v)| span_ref.certify_at(v, None)).collect());
    let mut terms = 0usize;
    for ((label, _), res) in items.iter().zip(&results) {
        match res {
            Membership::Member { certificate, .. } => terms += certificate.len(),
            Membership::Outside { cutoff, residual } => {
                let summary = format!("no certificate for {label} at cutoff W = {cutoff}; residual shown");
                return Check::new(
                    name,
                    Status::Inconclusive,
                    Witness::text(summary).with_vector(span.carrier(), residual).at_cutoff(*cutoff),
                );
            }
        }
    }
    Check::new(
        name,
        Status::Pass,
        Witness::text(format!("{} instances certified, {terms} certificate terms in total", items.len())).at_cutoff(top),
    )
}

/// Exact identities: every listed difference must vanish.
pub fn exact_batch<T: Field>(name: &str, space: &Space<T>, items: Vec<(String, GradedVector<T>)>) -> Check {
    if items.is_empty() {
        return Check::not_applicable(name, "no instances in range");
    }
    for (label, diff) in &items {
        if !diff.is_zero() {
            return Check::fail(name, Witness::text(format!("identity fails for {label}; difference shown")).with_vector(space, diff));
        }
    }
    Check::pass(name, format!("{} instances hold exactly", items.len()))
}

fn par_items<T: Field, S: Sync>(
    inputs: &[S],
    f: impl Fn(&S) -> Option<(String, GradedVector<T>)> + Sync + Send,
) -> Vec<(String, GradedVector<T>)> {
    pool().install(|| inputs.par_iter().filter_map(f).collect())
}

fn par_items_multi<T: Field, S: Sync>(
    inputs: &[S],
    f: impl Fn(&S) -> Vec<(String, GradedVector<T>)> + Sync + Send,
) -> Vec<(String, GradedVector<T>)> {
    pool().install(|| inputs.par_iter().flat_map_iter(f).collect())
}

fn tag(suite: &str, check: &str, carrier: &Space<impl Field>, n: u32) -> String {
    format!("{suite}.{check}[M={},n={n}]", carrier.label())
}

fn basis_vectors<T: Field>(space: &Space<T>, max_degree: u32) -> Vec<(String, GradedVector<T>)> {
    let sym = space.vector_symbol();
    space.basis_upto(max_degree).into_iter().map(|k| (k.render(&sym), GradedVector::basis(k))).collect()
}

/// Identity element laws and the conformal-vector commutator, all exact.
pub fn exact_identities<T: Field>(model: &Model<T>, carrier: &Arc<Space<T>>, n: u32, degree: u32) -> Vec<Check> {
    let vac = GradedVector::<T>::unit();
    let omega = GradedVector::<T>::basis(PbwKey::new(&[2]));
    let ws = basis_vectors(carrier, degree);
    let m = &**carrier;
    let mut checks = vec![
        exact_batch(
            &tag("identities", "left-unit", m, n),
            m,
            par_items(&ws, |(l, w)| Some((l.clone(), star_left(m, &vac, w, n) - w.clone()))),
        ),
        exact_batch(
            &tag("identities", "right-unit", m, n),
            m,
            par_items(&ws, |(l, w)| Some((l.clone(), star_right(m, w, &vac, n) - w.clone()))),
        ),
        exact_batch(
            &tag("identities", "omega-commutator", m, n),
            m,
            par_items(&ws, |(l, w)| {
                Some((l.clone(), star_left(m, &omega, w, n) - star_right(m, w, &omega, n) - l_term(m, w, 0)))
            }),
        ),
    ];
    if carrier.is_vacuum() || model.vacuum().label() == carrier.label() {
        let d = star_left(m, &omega, &omega, n) - star_right(m, &omega, &omega, n);
        let name = tag("identities", "omega-not-central", m, n);
        checks.push(if d.is_zero() {
            Check::fail(name, Witness::text("omega *_n omega - omega *_n omega vanished"))
        } else {
            Check::new(name, Status::Pass, Witness::text("commutator with u = omega is nonzero").with_vector(m, &d))
        });
    }
    checks
}

/// Associativity of the two actions and their compatibility, modulo the span.
pub fn bimodule_axioms<T: Field>(
    model: &Model<T>,
    carrier: &Arc<Space<T>>,
    n: u32,
    sample: &SampleConfig,
    cache: &mut SpanCache<T>,
) -> Vec<Check> {
    let voa = model.vacuum();
    let (v, m) = (&**voa, &**carrier);
    let triples = sample_triples(v, m, sample, &format!("axioms/{}/{n}", m.label()));
    let left = par_items(&triples, |t| {
        let lhs = star_left(m, &star_left(v, &t.u, &t.v, n), &t.w, n);
        Some((t.label.clone(), lhs - star_left(m, &t.u, &star_left(m, &t.v, &t.w, n), n)))
    });
    let middle = par_items(&triples, |t| {
        let lhs = star_right(m, &star_left(m, &t.u, &t.w, n), &t.v, n);
        Some((t.label.clone(), lhs - star_left(m, &t.u, &star_right(m, &t.w, &t.v, n), n)))
    });
    let right = par_items(&triples, |t| {
        let lhs = star_right(m, &star_right(m, &t.w, &t.u, n), &t.v, n);
        Some((t.label.clone(), lhs - star_right(m, &t.w, &star_left(v, &t.u, &t.v, n), n)))
    });
    let span = cache.get(voa, carrier, SpanConfig::bimodule_enriched(n));
    let mut checks = vec![
        certify_batch(&tag("bimodule-axioms", "left-associativity", m, n), span, left),
        certify_batch(&tag("bimodule-axioms", "left-right-compatibility", m, n), span, middle),
        certify_batch(&tag("bimodule-axioms", "right-associativity", m, n), span, right),
    ];
    checks.extend(reduction_lemma(model, carrier, n, &triples, cache));
    checks.push(monotonicity(model, carrier, n, sample.budget + 2 * n + 5));
    checks
}

/// The reduction elements and the product defect both lie in the span.
fn reduction_lemma<T: Field>(
    model: &Model<T>,
    carrier: &Arc<Space<T>>,
    n: u32,
    triples: &[Triple<T>],
    cache: &mut SpanCache<T>,
) -> Vec<Check> {
    let voa = model.vacuum();
    let m = &**carrier;
    let mut cases = Vec::new();
    for t in triples {
        for b in 0..=2u32 {
            for a in 0..=b {
                cases.push((t, a, b));
            }
        }
    }
    let reductions = par_items(&cases, |(t, a, b)| {
        let r = reduction_element(m, &t.u, &t.w, n, *a, *b).expect("a <= b");
        Some((format!("{} with (a, b) = ({a}, {b})", t.label), r))
    });
    let defects = par_items(triples, |t| {
        let d = star_left(m, &t.u, &t.w, n) - star_right(m, &t.w, &t.u, n) - commutator_term(m, &t.u, &t.w);
        Some((t.label.clone(), d))
    });
    let circ_span = cache.get(voa, carrier, SpanConfig::bimodule(n));
    let first = certify_batch(&tag("bimodule-axioms", "reduction-elements", m, n), circ_span, reductions);
    let span = cache.get(voa, carrier, SpanConfig::bimodule_enriched(n));
    vec![first, certify_batch(&tag("bimodule-axioms", "product-defect", m, n), span, defects)]
}

/// Adding reduction elements never enlarges the truncated quotient.
pub fn monotonicity<T: Field>(model: &Model<T>, carrier: &Arc<Space<T>>, n: u32, w_max: u32) -> Check {
    let voa = model.vacuum();
    let mut plain = QuotientSpan::new(voa.clone(), carrier.clone(), SpanConfig::bimodule(n));
    let mut rich = QuotientSpan::new(voa.clone(), carrier.clone(), SpanConfig::bimodule_enriched(n));
    plain.extend_to(w_max);
    rich.extend_to(w_max);
    let name = tag("bimodule-axioms", "quotient-monotonicity", carrier, n);
    for (p, r) in plain.rows().iter().zip(rich.rows()) {
        if r.dim_quotient > p.dim_quotient {
            return Check::fail(
                name,
                Witness::text(format!("W = {}: enriched quotient {} exceeds circle-only {}", p.w, r.dim_quotient, p.dim_quotient))
                    .at_cutoff(p.w),
            );
        }
    }
    let pairs: Vec<String> = plain.rows().iter().zip(rich.rows()).map(|(p, r)| format!("{}>={}", p.dim_quotient, r.dim_quotient)).collect();
    Check::new(name, Status::Pass, Witness::text(format!("per-cutoff quotient dims {}", pairs.join(" "))).at_cutoff(w_max))
}

/// `O_n(V)` acts into the span from both sides, and the span is stable
/// under both actions of the VOA.
pub fn ideals<T: Field>(
    model: &Model<T>,
    carrier: &Arc<Space<T>>,
    n: u32,
    sample: &SampleConfig,
    cache: &mut SpanCache<T>,
) -> Vec<Check> {
    let voa = model.vacuum();
    let (v, m) = (&**voa, &**carrier);
    let triples = sample_triples(v, m, sample, &format!("ideals/{}/{n}", m.label()));
    let zhu_generators = |t: &Triple<T>| [("circle", circ(v, &t.u, &t.v, n)), ("l-term", l_term(v, &t.u, 0))];
    let left = par_items_multi(&triples, |t| {
        zhu_generators(t).into_iter().map(|(kind, x)| (format!("{kind} from {}", t.label), star_left(m, &x, &t.w, n))).collect()
    });
    let right = par_items_multi(&triples, |t| {
        zhu_generators(t).into_iter().map(|(kind, x)| (format!("{kind} from {}", t.label), star_right(m, &t.w, &x, n))).collect()
    });
    let stable_left = par_items(&triples, |t| Some((t.label.clone(), star_left(m, &t.u, &circ(m, &t.v, &t.w, n), n))));
    let stable_right = par_items(&triples, |t| Some((t.label.clone(), star_right(m, &circ(m, &t.v, &t.w, n), &t.u, n))));
    let span = cache.get(voa, carrier, SpanConfig::bimodule_enriched(n));
    vec![
        certify_batch(&tag("ideals", "zhu-span-left", m, n), span, left),
        certify_batch(&tag("ideals", "zhu-span-right", m, n), span, right),
        certify_batch(&tag("ideals", "voa-times-span", m, n), span, stable_left),
        certify_batch(&tag("ideals", "span-times-voa", m, n), span, stable_right),
    ]
}

/// Generators and products at level `n` reduce to level `n - 1`.
pub fn descent<T: Field>(
    model: &Model<T>,
    carrier: &Arc<Space<T>>,
    n: u32,
    sample: &SampleConfig,
    cache: &mut SpanCache<T>,
) -> Vec<Check> {
    let m = &**carrier;
    if n == 0 {
        return vec![Check::not_applicable(tag("descent", "all", m, n), "descent needs n >= 1")];
    }
    let voa = model.vacuum();
    let triples = sample_triples(voa, m, sample, &format!("descent/{}/{n}", m.label()));
    let gens = par_items(&triples, |t| Some((t.label.clone(), circ(m, &t.u, &t.w, n))));
    let left = par_items(&triples, |t| Some((t.label.clone(), star_left(m, &t.u, &t.w, n) - star_left(m, &t.u, &t.w, n - 1))));
    let right =
        par_items(&triples, |t| Some((t.label.clone(), star_right(m, &t.w, &t.u, n) - star_right(m, &t.w, &t.u, n - 1))));
    let span = cache.get(voa, carrier, SpanConfig::bimodule_enriched(n - 1));
    vec![
        certify_batch(&tag("descent", "span-inclusion", m, n), span, gens),
        certify_batch(&tag("descent", "left-product", m, n), span, left),
        certify_batch(&tag("descent", "right-product", m, n), span, right),
    ]
}

/// The twist `phi` is an involution, preserves the span and reverses the
/// two products.
pub fn phi_suite<T: Field>(
    model: &Model<T>,
    carrier: &Arc<Space<T>>,
    n: u32,
    sample: &SampleConfig,
    cache: &mut SpanCache<T>,
) -> Vec<Check> {
    let voa = model.vacuum();
    let (v, m) = (&**voa, &**carrier);
    let ws = basis_vectors(m, 6);
    let involution = par_items(&ws, |(l, w)| Some((l.clone(), phi(m, &phi(m, w)) - w.clone())));
    let triples = sample_triples(v, m, sample, &format!("phi/{}/{n}", m.label()));
    let stability = par_items(&triples, |t| Some((t.label.clone(), phi(m, &circ(m, &t.u, &t.w, n)))));
    let anti_left = par_items(&triples, |t| {
        let d = phi(m, &star_left(m, &t.u, &t.w, n)) - star_right(m, &phi(m, &t.w), &phi(v, &t.u), n);
        Some((t.label.clone(), d))
    });
    let anti_right = par_items(&triples, |t| {
        let d = phi(m, &star_right(m, &t.w, &t.u, n)) - star_left(m, &phi(v, &t.u), &phi(m, &t.w), n);
        Some((t.label.clone(), d))
    });
    let span = cache.get(voa, carrier, SpanConfig::bimodule_enriched(n));
    vec![
        exact_batch(&tag("phi", "involution", m, n), m, involution),
        certify_batch(&tag("phi", "span-stability", m, n), span, stability),
        certify_batch(&tag("phi", "anti-homomorphism-left", m, n), span, anti_left),
        certify_batch(&tag("phi", "anti-homomorphism-right", m, n), span, anti_right),
    ]
}
