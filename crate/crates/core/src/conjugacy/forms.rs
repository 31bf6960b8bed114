//! Bilinear-form utilities: normal forms, isometries, Pfaffians.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::rational::rational_sqrt;
use crate::field::FieldElement;
use crate::linalg::{roots_in_field, KPoly, Matrix};

type Vector = Vec<FieldElement>;

fn pair(g: &Matrix, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
    let gy = g.mul_vec(y);
    let mut acc = FieldElement::zero(g.field());
    for (a, b) in x.iter().zip(&gy) {
        if !a.is_zero() && !b.is_zero() {
            acc = &acc + &(a * b);
        }
    }
    acc
}

fn axpy(a: &FieldElement, x: &[FieldElement], y: &[FieldElement]) -> Vector {
    y.iter().zip(x).map(|(yi, xi)| yi + &(a * xi)).collect()
}

fn unit_vectors(m: &Matrix) -> Vec<Vector> {
    (0..m.rows())
        .map(|i| Matrix::identity(m.field(), m.rows()).column(i))
        .collect()
}

/// A square root inside the field, if one exists.
pub fn sqrt_in_field(x: &FieldElement) -> Option<FieldElement> {
    let field = x.field();
    if x.is_zero() {
        return Some(x.clone());
    }
    if let Some(r) = x.as_rational() {
        if let Some(s) = rational_sqrt(&r) {
            return Some(FieldElement::from_rational(field, s));
        }
        if field.is_rational() {
            return None;
        }
    }
    let poly = KPoly::new(
        field,
        vec![-x, FieldElement::zero(field), FieldElement::one(field)],
    );
    roots_in_field(&poly).into_iter().next()
}

/// A basis `T` (as columns) with `Tᵀ G T` block diagonal with blocks
/// `[[0,1],[−1,0]]`, for a nondegenerate alternating Gram matrix `G`.
pub fn symplectic_basis(g: &Matrix) -> Option<Matrix> {
    let mut rest = unit_vectors(g);
    let mut out: Vec<Vector> = Vec::new();
    while !rest.is_empty() {
        let v = rest.remove(0);
        let k = rest.iter().position(|w| !pair(g, &v, w).is_zero())?;
        let w = rest.remove(k);
        let c = pair(g, &v, &w).inv().ok()?;
        let w: Vector = w.iter().map(|x| x * &c).collect();
        for r in rest.iter_mut() {
            let a = -&pair(g, r, &w);
            let b = pair(g, r, &v);
            *r = axpy(&b, &w, &axpy(&a, &v, r));
        }
        out.push(v);
        out.push(w);
    }
    Some(Matrix::from_columns(g.field(), g.rows(), &out))
}

/// An orthogonal basis for a nondegenerate symmetric Gram matrix, with the
/// diagonal values.
pub fn orthogonal_basis(g: &Matrix) -> Option<(Vec<Vector>, Vec<FieldElement>)> {
    orthogonal_basis_of(g, unit_vectors(g))
}

fn orthogonal_basis_of(
    g: &Matrix,
    mut rest: Vec<Vector>,
) -> Option<(Vec<Vector>, Vec<FieldElement>)> {
    let mut basis = Vec::new();
    let mut values = Vec::new();
    while !rest.is_empty() {
        let idx = match rest.iter().position(|v| !pair(g, v, v).is_zero()) {
            Some(i) => i,
            None => {
                let (i, j) = (0..rest.len())
                    .flat_map(|i| (i + 1..rest.len()).map(move |j| (i, j)))
                    .find(|&(i, j)| !pair(g, &rest[i], &rest[j]).is_zero())?;
                rest[i] = rest[i].iter().zip(&rest[j]).map(|(a, b)| a + b).collect();
                i
            }
        };
        let v = rest.remove(idx);
        let d = pair(g, &v, &v);
        let di = d.inv().ok()?;
        for r in rest.iter_mut() {
            let c = -&(&pair(g, r, &v) * &di);
            *r = axpy(&c, &v, r);
        }
        basis.push(v);
        values.push(d);
    }
    Some((basis, values))
}

/// A matrix `P` with `Pᵀ G2 P = G1` for nondegenerate symmetric Gram
/// matrices, found by matching an orthogonal basis of `G1` one vector at a
/// time against small combinations in `G2`.  `None` when the search runs out.
pub fn symmetric_isometry(g1: &Matrix, g2: &Matrix, tries: usize) -> Option<Matrix> {
    let field = g1.field();
    let m = g1.rows();
    let (w, a) = orthogonal_basis(g1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x15_0e_7a_11);
    let mut complement = unit_vectors(g2);
    let mut images: Vec<Vector> = Vec::new();
    for ai in &a {
        let found = candidates(&complement, tries, &mut rng)
            .into_iter()
            .find_map(|v| {
                let val = pair(g2, &v, &v);
                if val.is_zero() {
                    return None;
                }
                let x = sqrt_in_field(&(ai / &val))?;
                Some(v.iter().map(|c| c * &x).collect::<Vector>())
            })?;
        let inv = ai.inv().ok()?;
        let projected: Vec<Vector> = complement
            .iter()
            .map(|c| {
                let k = -&(&pair(g2, c, &found) * &inv);
                axpy(&k, &found, c)
            })
            .collect();
        complement = independent(field, m, projected);
        images.push(found);
    }
    let t1 = Matrix::from_columns(field, m, &w);
    let v = Matrix::from_columns(field, m, &images);
    let p = &v * &t1.inverse().ok()?;
    (&(&p.transpose() * g2) * &p == *g1).then_some(p)
}

fn candidates(basis: &[Vector], tries: usize, rng: &mut ChaCha8Rng) -> Vec<Vector> {
    let mut out: Vec<Vector> = basis.to_vec();
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i == j {
                continue;
            }
            for k in [1i64, -1, 2, -2, 3, -3] {
                let c = FieldElement::from_int(basis[i][0].field(), k);
                out.push(axpy(&c, &basis[j], &basis[i]));
            }
        }
    }
    if let Some(first) = basis.first() {
        let field = first[0].field().clone();
        for _ in 0..tries {
            let mut v = vec![FieldElement::zero(&field); first.len()];
            for b in basis {
                let c = FieldElement::from_int(&field, rng.gen_range(-4..=4));
                v = axpy(&c, b, &v);
            }
            out.push(v);
        }
    }
    out
}

fn independent(field: &crate::field::Field, n: usize, vecs: Vec<Vector>) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    for v in vecs {
        out.push(v);
        if Matrix::from_columns(field, n, &out).rank() < out.len() {
            out.pop();
        }
    }
    out
}

/// A reflection in the isometry group of a symmetric Gram matrix.
pub fn form_reflection(g: &Matrix) -> Option<Matrix> {
    let (basis, values) = orthogonal_basis(g)?;
    let v = &basis[0];
    let d = &values[0];
    let field = g.field();
    let m = g.rows();
    let gv = g.mul_vec(v);
    let two_over = (&FieldElement::from_int(field, 2) / d).clone();
    Some(Matrix::from_fn(field, m, m, |i, j| {
        let delta = if i == j {
            FieldElement::one(field)
        } else {
            FieldElement::zero(field)
        };
        &delta - &(&(&v[i] * &gv[j]) * &two_over)
    }))
}

/// Pfaffian of an antisymmetric matrix (zero for odd size).
pub fn pfaffian(a: &Matrix) -> FieldElement {
    let field = a.field().clone();
    let n = a.rows();
    if n % 2 == 1 {
        return FieldElement::zero(&field);
    }
    let mut m = a.to_rows();
    let mut pf = FieldElement::one(&field);
    let mut k = 0;
    while k < n {
        let Some(p) = (k + 1..n).find(|&p| !m[k][p].is_zero()) else {
            return FieldElement::zero(&field);
        };
        if p != k + 1 {
            m.swap(p, k + 1);
            for row in m.iter_mut() {
                row.swap(p, k + 1);
            }
            pf = -&pf;
        }
        let pivot = m[k][k + 1].clone();
        pf = &pf * &pivot;
        let pinv = pivot.inv().expect("nonzero pivot");
        for i in k + 2..n {
            let t = &m[k][i] * &pinv;
            if t.is_zero() {
                continue;
            }
            // column i -= t * column k+1, then row i -= t * row k+1
            for row in m.iter_mut() {
                let v = &row[i] - &(&t * &row[k + 1]);
                row[i] = v;
            }
            let src = m[k + 1].clone();
            for (x, s) in m[i].iter_mut().zip(&src) {
                *x = &*x - &(&t * s);
            }
        }
        k += 2;
    }
    pf
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;
    use crate::groups::standard_symplectic_form;

    #[test]
    fn pfaffian_4x4_formula() {
        let q = NumberField::rationals();
        let (a12, a13, a14, a23, a24, a34) = (2i64, -3, 5, 7, 1, 4);
        let a = Matrix::from_ints(
            &q,
            &[
                vec![0, a12, a13, a14],
                vec![-a12, 0, a23, a24],
                vec![-a13, -a23, 0, a34],
                vec![-a14, -a24, -a34, 0],
            ],
        );
        let expected = a12 * a34 - a13 * a24 + a14 * a23;
        assert_eq!(pfaffian(&a), FieldElement::from_int(&q, expected));
        assert_eq!(&pfaffian(&a) * &pfaffian(&a), a.det());
        assert_eq!(
            pfaffian(&standard_symplectic_form(&q, 4))
                .as_rational()
                .map(|r| &r * &r),
            Some(crate::field::rational::int(1))
        );
    }

    #[test]
    fn isometries() {
        let q = NumberField::rationals();
        let g1 = Matrix::from_ints(&q, &[vec![1, 0], vec![0, 1]]);
        let g2 = Matrix::from_ints(&q, &[vec![2, 0], vec![0, 2]]);
        let p = symmetric_isometry(&g1, &g2, 50).unwrap();
        assert_eq!(&(&p.transpose() * &g2) * &p, g1);
        assert!(
            symmetric_isometry(&g1, &Matrix::from_ints(&q, &[vec![1, 0], vec![0, 3]]), 50)
                .is_none()
        );
        let j = Matrix::from_ints(
            &q,
            &[
                vec![0, 0, 3, 1],
                vec![0, 0, 0, 2],
                vec![-3, 0, 0, 1],
                vec![-1, -2, -1, 0],
            ],
        );
        let t = symplectic_basis(&j).unwrap();
        let n = &(&t.transpose() * &j) * &t;
        assert_eq!(
            n,
            Matrix::from_ints(
                &q,
                &[
                    vec![0, 1, 0, 0],
                    vec![-1, 0, 0, 0],
                    vec![0, 0, 0, 1],
                    vec![0, 0, -1, 0]
                ]
            )
        );
        let r = form_reflection(&g2).unwrap();
        assert_eq!(&(&r.transpose() * &g2) * &r, g2);
        assert_eq!(r.det(), FieldElement::from_int(&q, -1));
    }
}
