//! Random sampling of group and Lie algebra elements with small entries.

use rand::Rng;

use crate::field::{Field, FieldElement};
use crate::linalg::{exp_nilpotent, Matrix};

use super::GroupSpec;

/// Random `Σ cᵢ bᵢ` over the Lie algebra basis with `cᵢ ∈ [−range, range]`.
pub fn random_lie_element<R: Rng>(g: &GroupSpec, field: &Field, rng: &mut R, range: i64) -> Matrix {
    let n = g.n();
    let mut x = Matrix::zeros(field, n, n);
    for b in g.lie_algebra_basis(field) {
        let c = rng.gen_range(-range..=range);
        if c != 0 {
            x = &x + &b.scale(&FieldElement::from_int(field, c));
        }
    }
    x
}

/// Random invertible integer matrix with entries in `[−range, range]`.
pub fn random_invertible<R: Rng>(field: &Field, n: usize, rng: &mut R, range: i64) -> Matrix {
    loop {
        let m = Matrix::from_fn(field, n, n, |_, _| {
            FieldElement::from_int(field, rng.gen_range(-range..=range))
        });
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Random element of the group. Quadratic groups use the Cayley transform
/// `(I − X)⁻¹(I + X)` of a random Lie algebra element (times a random
/// reflection for `O`); tensor stabilizers use products of exponentials of
/// nilpotent Lie algebra basis elements.
pub fn random_element<R: Rng>(g: &GroupSpec, field: &Field, rng: &mut R) -> Matrix {
    let n = g.n();
    match g {
        GroupSpec::GL { .. } => random_invertible(field, n, rng, 2),
        GroupSpec::SL { .. } => {
            let mut m = random_invertible(field, n, rng, 2);
            let inv = m.det().inv().expect("invertible");
            for j in 0..n {
                let v = m.get(0, j) * &inv;
                m.set(0, j, v);
            }
            m
        }
        GroupSpec::Sp { .. } | GroupSpec::SO { .. } | GroupSpec::O { .. } => {
            let id = Matrix::identity(field, n);
            let c = loop {
                let x = random_lie_element(g, field, rng, 1);
                if let Ok(inv) = (&id - &x).inverse() {
                    break &inv * &(&id + &x);
                }
            };
            if let GroupSpec::O { form, .. } = g {
                if rng.gen_bool(0.5) {
                    if let Some(r) = random_reflection(form, rng) {
                        return &r * &c;
                    }
                }
            }
            c
        }
        GroupSpec::Product(fs) => {
            let mut m: Option<Matrix> = None;
            for f in fs {
                let b = random_element(f, field, rng);
                m = Some(match m {
                    None => b,
                    Some(acc) => acc.direct_sum(&b),
                });
            }
            m.expect("non-empty product")
        }
        GroupSpec::TensorStabilizer { .. } => {
            let mut m = Matrix::identity(field, n);
            for b in g.lie_algebra_basis(field) {
                if b.is_nilpotent() {
                    let c = rng.gen_range(-2..=2);
                    if c != 0 {
                        let e = exp_nilpotent(&b.scale(&FieldElement::from_int(field, c)))
                            .expect("nilpotent");
                        m = &m * &e;
                    }
                }
            }
            m
        }
    }
}

/// Reflection `x ↦ x − 2B(x,v)/B(v,v)·v` through a random anisotropic `v`.
pub fn random_reflection<R: Rng>(form: &Matrix, rng: &mut R) -> Option<Matrix> {
    let field = form.field();
    let n = form.rows();
    for _ in 0..64 {
        let v: Vec<FieldElement> = (0..n)
            .map(|_| FieldElement::from_int(field, rng.gen_range(-2..=2)))
            .collect();
        if let Some(r) = reflection(form, &v) {
            return Some(r);
        }
    }
    None
}

/// Reflection through `v` for the symmetric form `B`, if `B(v,v) ≠ 0`.
pub fn reflection(form: &Matrix, v: &[FieldElement]) -> Option<Matrix> {
    let field = form.field();
    let n = form.rows();
    let bv = form.mul_vec(v);
    let mut bvv = FieldElement::zero(field);
    for (a, b) in v.iter().zip(&bv) {
        bvv = &bvv + &(a * b);
    }
    if bvv.is_zero() {
        return None;
    }
    let c = &FieldElement::from_int(field, 2) / &bvv;
    // x - c (v^T B x) v  => I - c v (Bv)^T
    Some(Matrix::from_fn(field, n, n, |i, j| {
        let d = if i == j {
            FieldElement::one(field)
        } else {
            FieldElement::zero(field)
        };
        &d - &(&c * &(&v[i] * &bv[j]))
    }))
}
