use std::sync::Arc;

use dashmap::DashMap;

use super::key::PbwKey;
use super::vector::GradedVector;
use crate::scalar::Field;

/// Virasoro action on PBW monomials by normal ordering.
///
/// Holds the data of one highest-weight space (central charge, weight, and
/// whether `L(-1)` kills the generating vector) and memoizes `L(m)` on keys.
/// An optional reduction is applied to every memoized result, which is how
/// simple quotients reuse the same recursion.
pub(crate) struct NormalOrdering<T> {
    c: T,
    h: T,
    vacuum: bool,
    memo: DashMap<(i32, PbwKey), Arc<GradedVector<T>>>,
}

impl<T: Field> NormalOrdering<T> {
    pub fn new(c: T, h: T, vacuum: bool) -> Self {
        NormalOrdering { c, h, vacuum, memo: DashMap::new() }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// `L(m)` applied to a single key.
    pub fn apply_key<R>(&self, m: i32, key: &PbwKey, reduce: &R) -> Arc<GradedVector<T>>
    where
        R: Fn(GradedVector<T>) -> GradedVector<T>,
    {
        let memo_key = (m, key.clone());
        if let Some(hit) = self.memo.get(&memo_key) {
            return hit.clone();
        }
        let out = Arc::new(reduce(self.compute(m, key, reduce)));
        self.memo.insert(memo_key, out.clone());
        out
    }

    pub fn apply_vec<R>(&self, m: i32, v: &GradedVector<T>, reduce: &R) -> GradedVector<T>
    where
        R: Fn(GradedVector<T>) -> GradedVector<T>,
    {
        let mut out = GradedVector::zero();
        for (k, coef) in v.terms() {
            let image = self.apply_key(m, k, reduce);
            out.add_scaled(coef, &image);
        }
        out
    }

    fn compute<R>(&self, m: i32, key: &PbwKey, reduce: &R) -> GradedVector<T>
    where
        R: Fn(GradedVector<T>) -> GradedVector<T>,
    {
        let deg = key.degree() as i64;
        let target = deg - m as i64;
        if target < 0 || (self.vacuum && target == 1) {
            return GradedVector::zero();
        }
        if m == 0 {
            let w = self.h.clone() + T::from_int(deg);
            return GradedVector::term(key.clone(), w);
        }
        let Some(first) = key.first() else {
            // m < 0 here: create directly on the generating vector
            return GradedVector::basis(PbwKey::new(&[(-m) as u16]));
        };
        if -m >= first as i32 {
            return GradedVector::basis(key.prepend((-m) as u16));
        }
        // L(m) L(-n) X = L(-n) L(m) X + (m+n) L(m-n) X + delta_{m,n} c/12 (m^3-m) X
        let n = first as i32;
        let rest = key.tail();
        let inner = self.apply_key(m, &rest, reduce);
        let mut out = self.apply_vec(-n, &inner, reduce);
        if m + n != 0 {
            let shifted = self.apply_key(m - n, &rest, reduce);
            out.add_scaled(&T::from_int((m + n) as i64), &shifted);
        }
        if m == n {
            let m = m as i64;
            let central = self.c.clone() * T::from_frac(m * m * m - m, 12);
            out.add_term(rest, &central);
        }
        out
    }
}
