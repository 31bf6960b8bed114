//! Roots of polynomials over a number field, field automorphisms and square
//! root adjunction.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::factor;
use crate::field::qpoly;
use crate::field::rational::{int, rat, rational_sqrt};
use crate::field::{Field, FieldElement, NumberField, Rational, RootBox};

use super::kpoly::KPoly;
use super::matrix::Matrix;

/// All roots of `poly` lying in its coefficient field, with multiplicity,
/// sorted by coordinates.
pub fn roots_in_field(poly: &KPoly) -> Vec<FieldElement> {
    if poly.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sf = poly.squarefree_part();
    let mut out = Vec::new();
    for r in simple_roots(&sf) {
        let m = poly.root_multiplicity(&r);
        for _ in 0..m {
            out.push(r.clone());
        }
    }
    out.sort_by(|a, b| a.coords().cmp(b.coords()));
    out
}

/// Distinct roots of a monic squarefree polynomial.
fn simple_roots(sf: &KPoly) -> Vec<FieldElement> {
    let field = sf.field().clone();
    let deg = sf.degree().unwrap_or(0);
    if deg == 0 {
        return Vec::new();
    }
    if deg == 1 {
        return vec![-&sf.coeffs()[0]];
    }
    if field.is_rational() {
        let coeffs = sf.rational_coeffs().expect("rational field");
        return factor::rational_roots(&coeffs)
            .into_iter()
            .map(|r| FieldElement::from_rational(&field, r))
            .collect();
    }
    let d = field.degree();
    let alpha = FieldElement::generator(&field);
    for step in 0.. {
        // k = 0, 1, -1, 2, -2, ...
        let k = if step % 2 == 1 {
            (step + 1) / 2
        } else {
            -(step / 2)
        } as i64;
        let shift = alpha.scale(&int(k));
        let h = compose_linear(sf, &shift);
        let norm = norm_polynomial(&h);
        if !qpoly::is_squarefree(&norm) {
            continue;
        }
        let mut roots = Vec::new();
        for e in (1..=d).filter(|e| d.is_multiple_of(*e)) {
            for f in factor::rational_factors_of_degree(&norm, e) {
                let fk = KPoly::new(
                    &field,
                    f.into_iter()
                        .map(|c| FieldElement::from_rational(&field, c))
                        .collect(),
                );
                let g = h.gcd(&fk);
                if g.degree() == Some(1) {
                    let root = -&g.coeffs()[0];
                    roots.push(&root - &shift);
                }
            }
        }
        return roots;
    }
    unreachable!()
}

/// `p(t − c)`: roots shift by `+c`.
fn compose_linear(p: &KPoly, c: &FieldElement) -> KPoly {
    let field = p.field();
    let lin = KPoly::new(field, vec![-c, FieldElement::one(field)]);
    let mut acc = KPoly::zero(field);
    for coeff in p.coeffs().iter().rev() {
        acc = (&acc * &lin).add(&KPoly::constant(coeff));
    }
    acc
}

/// Norm `N_{K/Q}(h)` of a monic polynomial over `K`, computed as the
/// characteristic polynomial of multiplication by `t` on `K[t]/(h)` over `Q`.
pub fn norm_polynomial(h: &KPoly) -> Vec<Rational> {
    let field = h.field();
    let d = field.degree();
    let dd = h.degree().expect("nonzero polynomial");
    let h = h.monic();
    let q = NumberField::rationals();
    let dim = d * dd;
    let x = FieldElement::generator(field);
    let mut xa = vec![FieldElement::one(field)];
    for a in 1..d {
        xa.push(&xa[a - 1] * &x);
    }
    let mut m = Matrix::zeros(&q, dim, dim);
    for b in 0..dd {
        for a in 0..d {
            let col = b * d + a;
            if b + 1 < dd {
                m.set((b + 1) * d + a, col, FieldElement::one(&q));
            } else {
                for j in 0..dd {
                    let c = -&(&xa[a] * &h.coeffs()[j]);
                    for (i, ci) in c.coords().iter().enumerate() {
                        if !ci.is_zero() {
                            m.set(j * d + i, col, FieldElement::from_rational(&q, ci.clone()));
                        }
                    }
                }
            }
        }
    }
    m.charpoly().rational_coeffs().expect("rational matrix")
}

/// Images of the generator under the automorphisms of `K`, i.e. the roots of
/// the minimal polynomial in `K`. The identity is included.
pub fn field_automorphisms(field: &Field) -> Vec<FieldElement> {
    let f = KPoly::new(
        field,
        field
            .minpoly()
            .iter()
            .map(|c| FieldElement::from_rational(field, c.clone()))
            .collect(),
    );
    roots_in_field(&f)
}

/// A field containing a chosen square root of a positive rational.
#[derive(Clone, Debug)]
pub struct SqrtExtension {
    /// The (possibly enlarged) field.
    pub field: Field,
    /// Image of the original field's generator.
    pub embed: FieldElement,
    /// The chosen square root.
    pub sqrt: FieldElement,
    /// Whether a genuine extension was built.
    pub adjoined: bool,
}

impl SqrtExtension {
    pub fn embed_element(&self, e: &FieldElement) -> FieldElement {
        if self.adjoined {
            e.map_generator(&self.embed)
        } else {
            e.clone()
        }
    }

    pub fn embed_matrix(&self, m: &Matrix) -> Matrix {
        if self.adjoined {
            m.map(|e| e.map_generator(&self.embed))
        } else {
            m.clone()
        }
    }
}

/// Square root of a positive rational `q`, adjoining `x² − q` when `K` does
/// not already contain one. The positive root is chosen whenever an embedding
/// is known; otherwise the root whose last nonzero coordinate is positive.
pub fn adjoin_sqrt(field: &Field, q: &Rational) -> Result<SqrtExtension> {
    if !q.is_positive() {
        return Err(Error::InvalidInput(
            "square root of a non-positive rational".into(),
        ));
    }
    let identity = FieldElement::generator(field);
    if let Some(r) = rational_sqrt(q) {
        return Ok(SqrtExtension {
            field: field.clone(),
            embed: identity,
            sqrt: FieldElement::from_rational(field, r),
            adjoined: false,
        });
    }
    let t2 = KPoly::new(
        field,
        vec![
            FieldElement::from_rational(field, -q.clone()),
            FieldElement::zero(field),
            FieldElement::one(field),
        ],
    );
    let roots = roots_in_field(&t2);
    if !roots.is_empty() {
        let sqrt = choose_positive(&roots);
        return Ok(SqrtExtension {
            field: field.clone(),
            embed: identity,
            sqrt,
            adjoined: false,
        });
    }
    build_compositum(field, q)
}

fn choose_positive(roots: &[FieldElement]) -> FieldElement {
    if let Some(r) = roots
        .iter()
        .find(|r| r.real_part_sign() == Some(std::cmp::Ordering::Greater))
    {
        return r.clone();
    }
    roots
        .iter()
        .find(|r| {
            r.coords()
                .iter()
                .rev()
                .find(|c| !c.is_zero())
                .is_some_and(|c| c.is_positive())
        })
        .unwrap_or(&roots[0])
        .clone()
}

fn build_compositum(field: &Field, q: &Rational) -> Result<SqrtExtension> {
    let d = field.degree();
    let qf = NumberField::rationals();
    let my = FieldElement::generator(field).mul_matrix();
    let dim = 2 * d;
    for k in 1i64.. {
        // basis y^a z^b at index b*d + a
        let theta = Matrix::from_fn(&qf, dim, dim, |i, j| {
            let (bi, ai) = (i / d, i % d);
            let (bj, aj) = (j / d, j % d);
            let mut v = Rational::zero();
            if bi == bj {
                v += &my[ai][aj];
            }
            if ai == aj {
                if bi == 1 && bj == 0 {
                    v += int(k);
                }
                if bi == 0 && bj == 1 {
                    v += int(k) * q;
                }
            }
            FieldElement::from_rational(&qf, v)
        });
        let minpoly = theta.charpoly().rational_coeffs().expect("rational matrix");
        if !qpoly::is_squarefree(&minpoly) {
            continue;
        }
        // powers of theta applied to 1 give the change of basis
        let mut cols = Vec::with_capacity(dim);
        let mut v: Vec<FieldElement> = (0..dim)
            .map(|i| FieldElement::from_int(&qf, (i == 0) as i64))
            .collect();
        for _ in 0..dim {
            cols.push(v.clone());
            v = theta.mul_vec(&v);
        }
        let change = Matrix::from_columns(&qf, dim, &cols);
        let unit = |idx: usize| -> Vec<FieldElement> {
            (0..dim)
                .map(|i| FieldElement::from_int(&qf, (i == idx) as i64))
                .collect()
        };
        let y_target = if d > 1 {
            unit(1)
        } else {
            let mut v = unit(0);
            v[0] = FieldElement::from_rational(&qf, -field.minpoly()[0].clone());
            v
        };
        let y_coords = change.solve(&y_target).ok_or(Error::SingularMatrix)?;
        let z_coords = change.solve(&unit(d)).ok_or(Error::SingularMatrix)?;
        let embedding = compositum_box(field, q, k, &minpoly);
        let new_field = NumberField::new_trusted(minpoly, embedding);
        let to_coords =
            |v: Vec<FieldElement>| v.into_iter().map(|e| e.as_rational().unwrap()).collect();
        let embed = FieldElement::from_coords(&new_field, to_coords(y_coords));
        let sqrt = FieldElement::from_coords(&new_field, to_coords(z_coords));
        return Ok(SqrtExtension {
            field: new_field,
            embed,
            sqrt,
            adjoined: true,
        });
    }
    unreachable!()
}

/// Isolating box for `y + k·√q` with `y` in the embedding of `K` and the
/// positive square root.
fn compositum_box(field: &Field, q: &Rational, k: i64, minpoly: &[Rational]) -> Option<RootBox> {
    let mut base = match field.embedding() {
        Some(b) => b.clone(),
        None if field.is_rational() => {
            let y = -field.minpoly()[0].clone();
            RootBox::new(y.clone(), y.clone(), Rational::zero(), Rational::zero())
        }
        None => return None,
    };
    let (mut lo, mut hi) = (Rational::zero(), q + Rational::one());
    let kq = int(k);
    for step in 0..80 {
        for _ in 0..2 {
            let mid = (&lo + &hi) * rat(1, 2);
            if &mid * &mid < *q {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if step > 0 && !field.is_rational() {
            base = base.refine(field.minpoly())?;
        }
        let eps = &hi - &lo;
        let b = RootBox::new(
            &base.re_lo + &kq * &lo - &eps,
            &base.re_hi + &kq * &hi + &eps,
            &base.im_lo - &eps,
            &base.im_hi + &eps,
        );
        if crate::field::isolate::count_roots_in_box(minpoly, &b) == Some(1) {
            return Some(b);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(field: &Field, c: &[i64]) -> KPoly {
        KPoly::new(
            field,
            c.iter()
                .map(|&v| FieldElement::from_int(field, v))
                .collect(),
        )
    }

    #[test]
    fn sqrt2_roots() {
        let q = NumberField::rationals();
        assert!(roots_in_field(&poly(&q, &[-2, 0, 1])).is_empty());
        let k = NumberField::new(vec![int(-2), int(0), int(1)], None, 8).unwrap();
        let roots = roots_in_field(&poly(&k, &[-2, 0, 1]));
        assert_eq!(roots.len(), 2);
        let x = FieldElement::generator(&k);
        assert!(roots.contains(&x) && roots.contains(&-&x));
    }

    #[test]
    fn multiplicities_and_mixed_roots() {
        let k = NumberField::new(vec![int(1), int(0), int(1)], None, 8).unwrap();
        let i = FieldElement::generator(&k);
        // (t - i)^2 (t + 2) (t^2 - 3)
        let lin = KPoly::linear(&i);
        let p = &(&(&lin * &lin) * &poly(&k, &[2, 1])) * &poly(&k, &[-3, 0, 1]);
        let roots = roots_in_field(&p);
        assert_eq!(roots.len(), 3);
        assert_eq!(roots.iter().filter(|r| **r == i).count(), 2);
    }

    #[test]
    fn automorphisms_of_gaussian_field() {
        let k = NumberField::new(vec![int(1), int(0), int(1)], None, 8).unwrap();
        assert_eq!(field_automorphisms(&k).len(), 2);
        let c = NumberField::new(vec![int(-2), int(0), int(0), int(1)], None, 8).unwrap();
        assert_eq!(field_automorphisms(&c).len(), 1);
    }

    #[test]
    fn adjoin_sqrt_cases() {
        let q = NumberField::rationals();
        let e = adjoin_sqrt(&q, &int(4)).unwrap();
        assert!(!e.adjoined);
        assert_eq!(e.sqrt.as_rational(), Some(int(2)));
        let e = adjoin_sqrt(&q, &int(2)).unwrap();
        assert!(e.adjoined);
        assert_eq!((&e.sqrt * &e.sqrt).as_rational(), Some(int(2)));
        assert_eq!(e.sqrt.real_part_sign(), Some(std::cmp::Ordering::Greater));
        let gi = NumberField::new(vec![int(1), int(0), int(1)], None, 8).unwrap();
        let e = adjoin_sqrt(&gi, &int(2)).unwrap();
        assert_eq!(e.field.degree(), 4);
        assert_eq!((&e.sqrt * &e.sqrt).as_rational(), Some(int(2)));
        assert_eq!((&e.embed * &e.embed).as_rational(), Some(int(-1)));
    }
}
