use std::collections::HashMap;
use std::sync::{Arc, Mutex, RwLock};

use dashmap::DashMap;

use super::key::{partitions, PbwKey};
use super::ordering::NormalOrdering;
use super::vector::GradedVector;
use crate::linalg::{SparseVector, SubspaceBasis};
use crate::scalar::{binomial_in, sign, Field};

/// Whether a space is the vacuum module of the Virasoro VOA (parts >= 2)
/// or a module generated by a highest-weight vector (parts >= 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpaceKind {
    Vacuum,
    HighestWeight,
}

/// Universal (Verma, or the universal vacuum module) versus the simple
/// quotient by the radical of the Shapovalov form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuotientMode {
    Verma,
    SimpleQuotient,
}

/// Shapovalov form on one level of the universal space.
#[derive(Clone, Debug)]
pub struct GramForm<T> {
    pub level: u32,
    pub keys: Vec<PbwKey>,
    pub matrix: Vec<Vec<T>>,
}

impl<T: Field> GramForm<T> {
    pub fn rank(&self) -> usize {
        let rows: Vec<SparseVector<T>> = self.matrix.iter().map(|r| SparseVector::from_dense(r)).collect();
        crate::linalg::rank(&rows)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.matrix.len();
        (0..n).all(|i| (0..n).all(|j| self.matrix[i][j] == self.matrix[j][i]))
    }
}

/// Quotient data of one level: surviving keys and, for every other key, its
/// normal form in terms of the surviving ones.
#[derive(Debug)]
pub(crate) struct Level<T> {
    basis: Vec<PbwKey>,
    reducers: HashMap<PbwKey, GradedVector<T>>,
    kernel: Vec<GradedVector<T>>,
}

type ModeMemo<T> = DashMap<(PbwKey, i64, PbwKey), Arc<GradedVector<T>>>;

/// A graded Virasoro module with exact PBW arithmetic: the vacuum module of
/// the Virasoro VOA or a highest-weight module, universal or simple.
pub struct Space<T> {
    label: String,
    kind: SpaceKind,
    mode: QuotientMode,
    c: T,
    h: T,
    universal: NormalOrdering<T>,
    reduced: NormalOrdering<T>,
    levels: RwLock<Vec<Arc<Level<T>>>>,
    level_guard: Mutex<()>,
    modes: ModeMemo<T>,
}

impl<T: Field> Space<T> {
    pub fn new(label: impl Into<String>, kind: SpaceKind, mode: QuotientMode, c: T, h: T) -> Self {
        let h = if kind == SpaceKind::Vacuum { T::zero() } else { h };
        let vacuum = kind == SpaceKind::Vacuum;
        Space {
            label: label.into(),
            kind,
            mode,
            universal: NormalOrdering::new(c.clone(), h.clone(), vacuum),
            reduced: NormalOrdering::new(c.clone(), h.clone(), vacuum),
            c,
            h,
            levels: RwLock::new(Vec::new()),
            level_guard: Mutex::new(()),
            modes: DashMap::new(),
        }
    }

    pub fn vacuum(c: T, mode: QuotientMode) -> Self {
        Self::new("0", SpaceKind::Vacuum, mode, c, T::zero())
    }

    pub fn highest_weight(label: impl Into<String>, c: T, h: T, mode: QuotientMode) -> Self {
        Self::new(label, SpaceKind::HighestWeight, mode, c, h)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn mode(&self) -> QuotientMode {
        self.mode
    }

    pub fn is_simple(&self) -> bool {
        self.mode == QuotientMode::SimpleQuotient
    }

    pub fn is_vacuum(&self) -> bool {
        self.kind == SpaceKind::Vacuum
    }

    pub fn central_charge(&self) -> &T {
        &self.c
    }

    /// Lowest conformal weight.
    pub fn h(&self) -> &T {
        &self.h
    }

    pub fn min_part(&self) -> u16 {
        match self.kind {
            SpaceKind::Vacuum => 2,
            SpaceKind::HighestWeight => 1,
        }
    }

    /// Symbol for the generating vector in PBW notation.
    pub fn vector_symbol(&self) -> String {
        match self.kind {
            SpaceKind::Vacuum => "|0>".to_string(),
            SpaceKind::HighestWeight => format!("|{}>", self.label),
        }
    }

    pub fn render(&self, v: &GradedVector<T>) -> String {
        v.render(&self.vector_symbol())
    }

    /// `L(0)` eigenvalue of a key.
    pub fn weight(&self, key: &PbwKey) -> T {
        self.h.clone() + T::from_int(key.degree() as i64)
    }

    /// PBW keys of the universal space at a degree.
    pub fn universal_basis(&self, degree: u32) -> Vec<PbwKey> {
        partitions(degree, self.min_part())
    }

    /// Basis of the degree-`degree` piece; for simple quotients these are the
    /// keys surviving the Gram-kernel quotient.
    pub fn basis(&self, degree: u32) -> Vec<PbwKey> {
        if self.is_simple() {
            self.level(degree).basis.clone()
        } else {
            self.universal_basis(degree)
        }
    }

    pub fn dim(&self, degree: u32) -> usize {
        self.basis(degree).len()
    }

    /// Graded dimensions for degrees `0..=max_degree`.
    pub fn graded_dims(&self, max_degree: u32) -> Vec<usize> {
        (0..=max_degree).map(|d| self.dim(d)).collect()
    }

    /// All basis keys of degree at most `max_degree`, in key order.
    pub fn basis_upto(&self, max_degree: u32) -> Vec<PbwKey> {
        (0..=max_degree).flat_map(|d| self.basis(d)).collect()
    }

    /// Kernel vectors of the Shapovalov form at a level (empty for universal
    /// spaces).
    pub fn kernel_basis(&self, degree: u32) -> Vec<GradedVector<T>> {
        if self.is_simple() {
            self.level(degree).kernel.clone()
        } else {
            Vec::new()
        }
    }

    /// Shapovalov form at a level, on the universal PBW basis, with
    /// `L(n)` adjoint to `L(-n)` and the generating vector of norm one.
    pub fn gram_matrix(&self, level: u32) -> GramForm<T> {
        let keys = self.universal_basis(level);
        let n = keys.len();
        let id = |v: GradedVector<T>| v;
        let mut matrix = vec![vec![T::zero(); n]; n];
        for (a, ka) in keys.iter().enumerate() {
            for (b, kb) in keys.iter().enumerate().skip(a) {
                let mut v = GradedVector::basis(kb.clone());
                for &p in ka.parts() {
                    v = self.universal.apply_vec(p as i32, &v, &id);
                    if v.is_zero() {
                        break;
                    }
                }
                let entry = v.coefficient(&PbwKey::vacuum());
                matrix[a][b] = entry.clone();
                matrix[b][a] = entry;
            }
        }
        GramForm { level, keys, matrix }
    }

    fn level(&self, degree: u32) -> Arc<Level<T>> {
        if let Some(l) = self.levels.read().unwrap().get(degree as usize) {
            return l.clone();
        }
        let _guard = self.level_guard.lock().unwrap();
        loop {
            let have = self.levels.read().unwrap().len() as u32;
            if have > degree {
                break;
            }
            let level = Arc::new(self.compute_level(have));
            self.levels.write().unwrap().push(level);
        }
        self.levels.read().unwrap()[degree as usize].clone()
    }

    fn compute_level(&self, degree: u32) -> Level<T> {
        let gram = self.gram_matrix(degree);
        let keys = gram.keys.clone();
        let rows: Vec<SparseVector<T>> = gram.matrix.iter().map(|r| SparseVector::from_dense(r)).collect();
        let reduced = SubspaceBasis::from_vectors(&rows);
        let basis: Vec<PbwKey> = reduced.pivots().into_iter().map(|p| keys[p].clone()).collect();
        let mut reducers = HashMap::new();
        let mut kernel = Vec::new();
        for (f, key) in keys.iter().enumerate() {
            if reduced.is_pivot(f) {
                continue;
            }
            // e_f - sum_p R[p][f] e_p spans the kernel direction of column f
            let mut normal_form = GradedVector::zero();
            for (p, row) in reduced.pivots().into_iter().zip(reduced.rows()) {
                if let Some(x) = row.get(f) {
                    normal_form.add_term(keys[p].clone(), x);
                }
            }
            let mut k = GradedVector::basis(key.clone());
            k.add_scaled(&-T::one(), &normal_form);
            kernel.push(k);
            reducers.insert(key.clone(), normal_form);
        }
        Level { basis, reducers, kernel }
    }

    /// Canonical representative: rewrites every key outside the quotient
    /// basis in terms of basis keys. The identity on universal spaces.
    pub fn reduce(&self, v: GradedVector<T>) -> GradedVector<T> {
        if !self.is_simple() || v.is_zero() {
            return v;
        }
        let mut out = GradedVector::zero();
        let mut current: Option<(u32, Arc<Level<T>>)> = None;
        for (key, coef) in v.into_terms() {
            let d = key.degree();
            let level = match &current {
                Some((deg, l)) if *deg == d => l.clone(),
                _ => {
                    let l = self.level(d);
                    current = Some((d, l.clone()));
                    l
                }
            };
            match level.reducers.get(&key) {
                Some(nf) => out.add_scaled(&coef, nf),
                None => out.add_term(key, &coef),
            }
        }
        out
    }

    /// `L(m)` on a single key, reduced.
    pub fn apply_l_key(&self, m: i32, key: &PbwKey) -> Arc<GradedVector<T>> {
        if self.is_simple() {
            let red = |v: GradedVector<T>| self.reduce(v);
            self.reduced.apply_key(m, key, &red)
        } else {
            let id = |v: GradedVector<T>| v;
            self.universal.apply_key(m, key, &id)
        }
    }

    /// `L(m) w`.
    pub fn virasoro_apply(&self, m: i32, w: &GradedVector<T>) -> GradedVector<T> {
        let mut out = GradedVector::zero();
        for (k, coef) in w.terms() {
            out.add_scaled(coef, &self.apply_l_key(m, k));
        }
        out
    }

    /// `L(m)` applied repeatedly.
    pub fn virasoro_power(&self, m: i32, times: usize, w: &GradedVector<T>) -> GradedVector<T> {
        let mut v = w.clone();
        for _ in 0..times {
            if v.is_zero() {
                break;
            }
            v = self.virasoro_apply(m, &v);
        }
        v
    }

    /// `u_k w` for a key `u` of the vacuum module of the VOA acting on a key
    /// `w` of this space.
    pub fn key_mode(&self, u: &PbwKey, k: i64, w: &PbwKey) -> Arc<GradedVector<T>> {
        let memo_key = (u.clone(), k, w.clone());
        if let Some(hit) = self.modes.get(&memo_key) {
            return hit.clone();
        }
        let out = Arc::new(self.compute_mode(u, k, w));
        self.modes.insert(memo_key, out.clone());
        out
    }

    fn compute_mode(&self, u: &PbwKey, k: i64, w: &PbwKey) -> GradedVector<T> {
        let wt_u = u.degree() as i64;
        let dw = w.degree() as i64;
        if wt_u + dw - k - 1 < 0 {
            return GradedVector::zero();
        }
        let Some(j) = u.first() else {
            return if k == -1 { self.reduce(GradedVector::basis(w.clone())) } else { GradedVector::zero() };
        };
        // u = L(-j) a = omega_{n} a with n = 1 - j, and
        // (omega_n a)_k = sum_i (-1)^i C(n,i) (omega_{n-i} a_{k+i} - (-1)^n a_{n+k-i} omega_i)
        let n = 1 - j as i64;
        let rest = u.tail();
        let wt_rest = rest.degree() as i64;
        let mut out = GradedVector::zero();

        let mut i = 0i64;
        while wt_rest + dw - (k + i) - 1 >= 0 {
            let inner = self.key_mode(&rest, k + i, w);
            if !inner.is_zero() {
                let coef: T = sign::<T>(i) * binomial_in::<T>(n, i);
                let created = self.virasoro_apply((n - i - 1) as i32, &inner);
                out.add_scaled(&coef, &created);
            }
            i += 1;
        }

        let w_vec = GradedVector::basis(w.clone());
        for i in 0..=(dw + 1) {
            let lw = self.virasoro_apply((i - 1) as i32, &w_vec);
            if lw.is_zero() {
                continue;
            }
            let coef: T = -(sign::<T>(n) * sign::<T>(i) * binomial_in::<T>(n, i));
            let moved = self.mode_keyvec(&rest, n + k - i, &lw);
            out.add_scaled(&coef, &moved);
        }
        self.reduce(out)
    }

    fn mode_keyvec(&self, u: &PbwKey, k: i64, w: &GradedVector<T>) -> GradedVector<T> {
        let mut out = GradedVector::zero();
        for (wk, coef) in w.terms() {
            out.add_scaled(coef, &self.key_mode(u, k, wk));
        }
        out
    }

    /// `u_k w` for `u` in the vacuum module of the VOA (given on its PBW
    /// keys) and `w` in this space.
    pub fn mode_apply(&self, u: &GradedVector<T>, k: i64, w: &GradedVector<T>) -> GradedVector<T> {
        let mut out = GradedVector::zero();
        for (uk, cu) in u.terms() {
            for (wk, cw) in w.terms() {
                let image = self.key_mode(uk, k, wk);
                if image.is_zero() {
                    continue;
                }
                out.add_scaled(&cu.mul_ref(cw), &image);
            }
        }
        out
    }

    pub fn memo_sizes(&self) -> (usize, usize, usize) {
        (self.universal.memo_len(), self.reduced.memo_len(), self.modes.len())
    }
}

impl<T: Field> std::fmt::Debug for Space<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Space")
            .field("label", &self.label)
            .field("kind", &self.kind)
            .field("mode", &self.mode)
            .field("c", &self.c)
            .field("h", &self.h)
            .finish()
    }
}
