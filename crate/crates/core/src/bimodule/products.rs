//! The products of the bimodule theory, realized as finite mode sums.
//!
//! Every residue `Res_z Y(u,z) w (1+z)^A / z^B` equals
//! `sum_i C(A, i) u_{i-B} w`, and the sum stops once the grading kills the
//! mode. `u` is always an element of the VOA given on its PBW keys; `w` lives
//! in the carrier space.

use crate::error::{Error, Result};
use crate::scalar::{binomial_in, sign, Field};
use crate::voa::{GradedVector, Space};

/// `sum_i C(upper, i) u_{i + offset} w` for homogeneous `u` of weight `wt`.
pub fn residue_sum<T: Field>(
    space: &Space<T>,
    u: &GradedVector<T>,
    wt: i64,
    w: &GradedVector<T>,
    upper: i64,
    offset: i64,
) -> GradedVector<T> {
    let mut out = GradedVector::zero();
    let Some(dw) = w.max_degree() else { return out };
    // u_k w vanishes once wt + deg w - k - 1 < 0
    let mut last = wt + dw as i64 - offset - 1;
    if upper >= 0 {
        last = last.min(upper);
    }
    for i in 0..=last {
        let c: T = binomial_in(upper, i);
        if c.is_zero() {
            continue;
        }
        let term = space.mode_apply(u, i + offset, w);
        out.add_scaled(&c, &term);
    }
    out
}

fn per_component<T: Field>(
    u: &GradedVector<T>,
    mut f: impl FnMut(&GradedVector<T>, i64) -> GradedVector<T>,
) -> GradedVector<T> {
    let mut out = GradedVector::zero();
    for (d, comp) in u.components() {
        out = out + f(&comp, d as i64);
    }
    out
}

/// `u o_n w = Res_z Y(u,z) w (1+z)^{wt u+n} / z^{2n+2}`.
pub fn circ<T: Field>(space: &Space<T>, u: &GradedVector<T>, w: &GradedVector<T>, n: u32) -> GradedVector<T> {
    let n = n as i64;
    per_component(u, |uc, wt| residue_sum(space, uc, wt, w, wt + n, -2 * n - 2))
}

/// Left product `u *_n w`.
pub fn star_left<T: Field>(space: &Space<T>, u: &GradedVector<T>, w: &GradedVector<T>, n: u32) -> GradedVector<T> {
    let n = n as i64;
    per_component(u, |uc, wt| {
        let mut out = GradedVector::zero();
        for m in 0..=n {
            let c: T = sign::<T>(m) * binomial_in::<T>(m + n, n);
            out.add_scaled(&c, &residue_sum(space, uc, wt, w, wt + n, -m - n - 1));
        }
        out
    })
}

/// Right product `w *_n u`, with the sign `(-1)^n` constant in `m`.
pub fn star_right<T: Field>(space: &Space<T>, w: &GradedVector<T>, u: &GradedVector<T>, n: u32) -> GradedVector<T> {
    let n = n as i64;
    per_component(u, |uc, wt| {
        let mut out = GradedVector::zero();
        for m in 0..=n {
            let c: T = sign::<T>(n) * binomial_in::<T>(m + n, n);
            out.add_scaled(&c, &residue_sum(space, uc, wt, w, wt + m - 1, -m - n - 1));
        }
        out
    })
}

/// `Res_z Y(u,z) w (1+z)^{wt u - 1}`, the defect between the two products.
pub fn commutator_term<T: Field>(space: &Space<T>, u: &GradedVector<T>, w: &GradedVector<T>) -> GradedVector<T> {
    per_component(u, |uc, wt| residue_sum(space, uc, wt, w, wt - 1, 0))
}

/// `Res_z Y(u,z) w (1+z)^{wt u+n+a} / z^{2n+2+b}` for `b >= a`.
pub fn reduction_element<T: Field>(
    space: &Space<T>,
    u: &GradedVector<T>,
    w: &GradedVector<T>,
    n: u32,
    a: u32,
    b: u32,
) -> Result<GradedVector<T>> {
    if b < a {
        return Err(Error::InvalidArgument(format!("reduction element needs b >= a, got a = {a}, b = {b}")));
    }
    let (n, a, b) = (n as i64, a as i64, b as i64);
    Ok(per_component(u, |uc, wt| residue_sum(space, uc, wt, w, wt + n + a, -2 * n - 2 - b)))
}

/// `Res_z Y(u,z) v (1+z)^{wt u+s+a} / z^{t+s+2+b}`, the `(t, s)` family.
pub fn ats_element<T: Field>(
    space: &Space<T>,
    u: &GradedVector<T>,
    v: &GradedVector<T>,
    t: u32,
    s: u32,
    a: u32,
    b: u32,
) -> GradedVector<T> {
    let (t, s, a, b) = (t as i64, s as i64, a as i64, b as i64);
    per_component(u, |uc, wt| residue_sum(space, uc, wt, v, wt + s + a, -t - s - 2 - b))
}

/// `L(-1) u + (L(0) + shift) u`; `shift = 0` gives the `A_n` family and
/// `shift = s - t` the `(t, s)` one.
pub fn l_term<T: Field>(space: &Space<T>, u: &GradedVector<T>, shift: i64) -> GradedVector<T> {
    let mut out = space.virasoro_apply(-1, u);
    out = out + space.virasoro_apply(0, u);
    out.add_scaled(&T::from_int(shift), u);
    out
}

/// `e^{L(1)} (-1)^{deg}` applied to `w`; the global unit `e^{pi i h}` of the
/// carrier is left out.
pub fn phi<T: Field>(space: &Space<T>, w: &GradedVector<T>) -> GradedVector<T> {
    let mut twisted = GradedVector::zero();
    for (d, comp) in w.components() {
        twisted.add_scaled(&sign::<T>(d as i64), &comp);
    }
    let mut out = twisted.clone();
    let mut term = twisted;
    let mut j = 1i64;
    loop {
        term = space.virasoro_apply(1, &term);
        if term.is_zero() {
            break;
        }
        term.scale(&T::from_frac(1, j));
        out = out + term.clone();
        j += 1;
    }
    out
}
