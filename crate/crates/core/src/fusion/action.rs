use crate::linalg::Matrix;
use crate::scalar::Field;
use crate::voa::{GradedVector, Model, Space};

/// The degree-`level` piece `M^i(level)` of module `module`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Piece {
    pub module: usize,
    pub level: u32,
}

impl Piece {
    pub fn new(module: usize, level: u32) -> Self {
        Piece { module, level }
    }

    pub fn dim<T: Field>(&self, model: &Model<T>) -> usize {
        model.module(self.module).dim(self.level)
    }

    pub fn label<T: Field>(&self, model: &Model<T>) -> String {
        format!("{}({})", model.module(self.module).label(), self.level)
    }
}

/// Nonzero pieces `M^i(s)`, `s <= n`, ordered by module then level.
pub fn nonzero_pieces<T: Field>(model: &Model<T>, n: u32) -> Vec<Piece> {
    let mut out = Vec::new();
    for i in 0..model.num_modules() {
        for s in 0..=n {
            let p = Piece::new(i, s);
            if p.dim(model) > 0 {
                out.push(p);
            }
        }
    }
    out
}

/// Matrix of the zero mode `o(v) = v_{wt v - 1}` (summed over homogeneous
/// components) on the degree-`s` piece of `space`, in its basis order.
pub fn o_matrix<T: Field>(space: &Space<T>, v: &GradedVector<T>, s: u32) -> Matrix<T> {
    let basis = space.basis(s);
    let mut m = Matrix::zeros(basis.len(), basis.len());
    let comps = v.components();
    for (c, key) in basis.iter().enumerate() {
        let w = GradedVector::basis(key.clone());
        let mut image = GradedVector::zero();
        for (deg, comp) in &comps {
            image = image + space.mode_apply(comp, *deg as i64 - 1, &w);
        }
        debug_assert!(image.terms().all(|(k, _)| k.degree() == s), "zero modes preserve degree");
        for (r, rk) in basis.iter().enumerate() {
            m.set(r, c, image.coefficient(rk));
        }
    }
    m
}
