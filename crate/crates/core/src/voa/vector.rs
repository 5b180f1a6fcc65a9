use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use super::key::PbwKey;
use crate::scalar::Field;

/// Finite linear combination of PBW keys of a single space.
///
/// Terms are kept in key order, which groups them by degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedVector<T> {
    terms: BTreeMap<PbwKey, T>,
}

impl<T: Field> GradedVector<T> {
    pub fn zero() -> Self {
        GradedVector { terms: BTreeMap::new() }
    }

    pub fn basis(key: PbwKey) -> Self {
        Self::term(key, T::one())
    }

    pub fn term(key: PbwKey, coef: T) -> Self {
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(key, coef);
        }
        GradedVector { terms }
    }

    /// The vacuum (or highest-weight vector) with coefficient one.
    pub fn unit() -> Self {
        Self::basis(PbwKey::vacuum())
    }

    pub fn from_terms<I: IntoIterator<Item = (PbwKey, T)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (k, v) in terms {
            out.add_term(k, &v);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwKey, &T)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (PbwKey, T)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, key: &PbwKey) -> T {
        self.terms.get(key).cloned().unwrap_or_else(T::zero)
    }

    pub fn add_term(&mut self, key: PbwKey, coef: &T) {
        if coef.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(slot) => {
                *slot += coef.clone();
                if slot.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coef.clone());
            }
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: &T, other: &GradedVector<T>) {
        if factor.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            let c = factor.mul_ref(v);
            self.add_term(k.clone(), &c);
        }
    }

    pub fn scale(&mut self, factor: &T) {
        if factor.is_zero() {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            *v = v.mul_ref(factor);
        }
    }

    pub fn scaled(&self, factor: &T) -> Self {
        let mut out = self.clone();
        out.scale(factor);
        out
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.degree()).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|k| k.degree())
    }

    /// Component of a single degree.
    pub fn project(&self, degree: u32) -> Self {
        GradedVector {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.degree() == degree)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Components of degree at most `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Self {
        GradedVector {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.degree() <= max_degree)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Homogeneous components in increasing degree.
    pub fn components(&self) -> Vec<(u32, GradedVector<T>)> {
        let mut out: Vec<(u32, GradedVector<T>)> = Vec::new();
        for (k, v) in &self.terms {
            let d = k.degree();
            match out.last_mut() {
                Some((deg, comp)) if *deg == d => {
                    comp.terms.insert(k.clone(), v.clone());
                }
                _ => out.push((d, GradedVector::term(k.clone(), v.clone()))),
            }
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    /// PBW notation, e.g. `2*L(-2)L(-2)|0> - 1/3*L(-4)|0>`.
    pub fn render(&self, vector: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (k, v) in &self.terms {
            parts.push(format!("({v})*{}", k.render(vector)));
        }
        parts.join(" + ")
    }
}

impl<T: Field> Add for GradedVector<T> {
    type Output = GradedVector<T>;
    fn add(mut self, rhs: Self) -> Self {
        self.add_scaled(&T::one(), &rhs);
        self
    }
}

impl<T: Field> Sub for GradedVector<T> {
    type Output = GradedVector<T>;
    fn sub(mut self, rhs: Self) -> Self {
        self.add_scaled(&-T::one(), &rhs);
        self
    }
}

impl<'a, T: Field> Sub<&'a GradedVector<T>> for &'a GradedVector<T> {
    type Output = GradedVector<T>;
    fn sub(self, rhs: &'a GradedVector<T>) -> GradedVector<T> {
        let mut out = self.clone();
        out.add_scaled(&-T::one(), rhs);
        out
    }
}

impl<T: Field> Neg for GradedVector<T> {
    type Output = GradedVector<T>;
    fn neg(mut self) -> Self {
        self.scale(&-T::one());
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::BigRational;

    type Q = BigRational;

    #[test]
    fn cancellation_drops_terms() {
        let k = PbwKey::new(&[2]);
        let mut v = GradedVector::<Q>::basis(k.clone());
        v.add_term(k, &-Q::from_int(1));
        assert!(v.is_zero());
    }

    #[test]
    fn components_split_by_degree() {
        let v = GradedVector::<Q>::from_terms(vec![
            (PbwKey::vacuum(), Q::from_int(1)),
            (PbwKey::new(&[2]), Q::from_int(2)),
            (PbwKey::new(&[4]), Q::from_int(3)),
            (PbwKey::new(&[2, 2]), Q::from_int(4)),
        ]);
        let comps = v.components();
        assert_eq!(comps.iter().map(|c| c.0).collect::<Vec<_>>(), vec![0, 2, 4]);
        assert_eq!(comps[2].1.len(), 2);
        assert_eq!(v.truncate(2).len(), 2);
        assert_eq!(v.project(4), comps[2].1);
    }
}
