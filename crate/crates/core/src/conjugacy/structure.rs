//! Conjugacy of "structures": commuting semisimple elements together with an
//! sl₂-triple they normalize.  The space decomposes into isotypic pieces
//! `U ⊗ R_ℓ` labelled by the joint eigenvalues on highest-weight vectors;
//! an intertwiner is the same thing as a family of linear maps between the
//! highest-weight spaces, and membership in an orthogonal or symplectic group
//! becomes an isometry condition on induced forms on those spaces.

use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField, Rational};
use crate::groups::GroupSpec;
use crate::linalg::{roots_in_field, Matrix};
use crate::sl2::SL2Triple;

use super::forms::{form_reflection, symmetric_isometry, symplectic_basis};

/// Semisimple elements `σ` with `σ F σ⁻¹ = κ F`, and a triple.
#[derive(Clone, Debug)]
pub struct Structure {
    pub semisimple: Vec<(Matrix, FieldElement)>,
    pub triple: SL2Triple,
}

/// Result of trying to conjugate one structure onto another inside a group.
#[derive(Clone, Debug)]
pub enum StructureOutcome {
    /// A group element carrying the first structure to the second.
    Witness(Matrix),
    /// The multiplicity data differ, so no linear intertwiner exists.
    Mismatch(String),
    /// Intertwiners exist in the orthogonal group but all have determinant
    /// −1, and the orthogonal centralizer lies in the special orthogonal one.
    DetObstruction { o_witness: Matrix },
    /// Not decided over the working field.
    Unresolved(String),
}

#[derive(Clone, Debug)]
struct Class {
    label: Vec<FieldElement>,
    ell: usize,
    hw: Vec<Vec<FieldElement>>,
}

impl Class {
    fn key(&self) -> (usize, Vec<Vec<Rational>>) {
        (
            self.ell,
            self.label.iter().map(|x| x.coords().to_vec()).collect(),
        )
    }
}

const TRIES: usize = 400;

fn intersect(basis: &[Vec<FieldElement>], m: &Matrix) -> Vec<Vec<FieldElement>> {
    if basis.is_empty() {
        return Vec::new();
    }
    let field = m.field();
    let n = m.rows();
    let b = Matrix::from_columns(field, n, basis);
    (m * &b)
        .kernel()
        .into_iter()
        .map(|c| b.mul_vec(&c))
        .collect()
}

fn classes(st: &Structure) -> Result<Vec<Class>> {
    let e = &st.triple.e;
    let field = e.field().clone();
    let n = e.rows();
    let mut spectra = Vec::new();
    for (s, _) in &st.semisimple {
        let roots = roots_in_field(&s.charpoly());
        if roots.len() != n {
            return Err(Error::NonSplitSpectrum(
                "semisimple part is not split over the field".into(),
            ));
        }
        let mut distinct: Vec<FieldElement> = Vec::new();
        for r in roots {
            if !distinct.contains(&r) {
                distinct.push(r);
            }
        }
        spectra.push(distinct);
    }
    let ker_e = e.kernel();
    let mut out = Vec::new();
    let mut total = 0;
    for ell in 1..=n {
        let w = FieldElement::from_int(&field, ell as i64 - 1);
        let hw = intersect(&ker_e, &(&st.triple.h - &Matrix::scalar(&field, n, &w)));
        if hw.is_empty() {
            continue;
        }
        let mut pieces = vec![(Vec::new(), hw)];
        for ((s, _), spec) in st.semisimple.iter().zip(&spectra) {
            let mut next = Vec::new();
            for (label, basis) in &pieces {
                for mu in spec {
                    let sub = intersect(basis, &(s - &Matrix::scalar(&field, n, mu)));
                    if !sub.is_empty() {
                        let mut l: Vec<FieldElement> = label.clone();
                        l.push(mu.clone());
                        next.push((l, sub));
                    }
                }
            }
            pieces = next;
        }
        for (label, hw) in pieces {
            total += ell * hw.len();
            out.push(Class { label, ell, hw });
        }
    }
    if total != n {
        return Err(Error::InvalidInput(
            "semisimple elements do not normalize the triple as required".into(),
        ));
    }
    out.sort_by_key(|c| c.key());
    Ok(out)
}

/// Gram matrix `uᵢᵀ B F^{ℓ−1} u′ⱼ` pairing two highest-weight spaces.
fn gram(
    b: &Matrix,
    f: &Matrix,
    ell: usize,
    u: &[Vec<FieldElement>],
    v: &[Vec<FieldElement>],
) -> Matrix {
    let field = b.field();
    let fp = f.pow(ell as u64 - 1);
    let bf = b * &fp;
    Matrix::from_fn(field, u.len(), v.len(), |i, j| {
        let bv = bf.mul_vec(&v[j]);
        u[i].iter()
            .zip(&bv)
            .fold(FieldElement::zero(field), |acc, (x, y)| &acc + &(x * y))
    })
}

fn partner_label(st: &Structure, c: &Class) -> Result<Vec<FieldElement>> {
    c.label
        .iter()
        .zip(&st.semisimple)
        .map(|(mu, (_, kappa))| Ok(&mu.inv()? * &kappa.pow(-(c.ell as i64 - 1))?))
        .collect()
}

/// Assemble `g` from the per-class maps `P_c` between highest-weight bases.
fn assemble(
    a: &Structure,
    b: &Structure,
    ca: &[Class],
    cb: &[Class],
    maps: &[Matrix],
) -> Result<Matrix> {
    let field = a.triple.e.field();
    let n = a.triple.e.rows();
    let mut x1 = Vec::with_capacity(n);
    let mut x2 = Vec::with_capacity(n);
    for ((c1, c2), p) in ca.iter().zip(cb).zip(maps) {
        for i in 0..c1.hw.len() {
            let mut u1 = c1.hw[i].clone();
            let mut u2 = vec![FieldElement::zero(field); n];
            for (k, w) in c2.hw.iter().enumerate() {
                let coef = p.get(k, i);
                if !coef.is_zero() {
                    for (x, y) in u2.iter_mut().zip(w) {
                        *x = &*x + &(coef * y);
                    }
                }
            }
            for j in 0..c1.ell {
                if j > 0 {
                    u1 = a.triple.f.mul_vec(&u1);
                    u2 = b.triple.f.mul_vec(&u2);
                }
                x1.push(u1.clone());
                x2.push(u2.clone());
            }
        }
    }
    let m1 = Matrix::from_columns(field, n, &x1);
    let m2 = Matrix::from_columns(field, n, &x2);
    Ok(&m2 * &m1.inverse()?)
}

fn intertwines(a: &Structure, b: &Structure, g: &Matrix) -> bool {
    let pairs = a
        .semisimple
        .iter()
        .zip(&b.semisimple)
        .map(|((x, _), (y, _))| (x, y))
        .chain([
            (&a.triple.e, &b.triple.e),
            (&a.triple.h, &b.triple.h),
            (&a.triple.f, &b.triple.f),
        ]);
    for (x, y) in pairs {
        if (g * x) != (y * g) {
            return false;
        }
    }
    true
}

/// Bezout coefficients: `Σ aᵢ eᵢ = gcd(e)`.
fn bezout(e: &[i64]) -> (i64, Vec<i64>) {
    let mut g = 0i64;
    let mut coeffs: Vec<i64> = Vec::new();
    for &x in e {
        // extended gcd of (g, x)
        let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (g, x, 1i64, 0i64, 0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        for c in coeffs.iter_mut() {
            *c *= s0;
        }
        coeffs.push(t0);
        g = r0;
    }
    if g < 0 {
        g = -g;
        for c in coeffs.iter_mut() {
            *c = -*c;
        }
    }
    (g, coeffs)
}

/// Tries to carry structure `a` onto structure `b` by an element of `g`.
pub fn conjugate_structures(
    g: &GroupSpec,
    a: &Structure,
    b: &Structure,
) -> Result<StructureOutcome> {
    let field = a.triple.e.field().clone();
    if !NumberField::same(&field, b.triple.e.field()) {
        return Err(Error::FieldMismatch);
    }
    if a.semisimple.len() != b.semisimple.len() {
        return Err(Error::InvalidInput(
            "structures have different shapes".into(),
        ));
    }
    let ca = classes(a)?;
    let cb = classes(b)?;
    let sig = |cs: &[Class]| cs.iter().map(|c| (c.key(), c.hw.len())).collect::<Vec<_>>();
    if sig(&ca) != sig(&cb) {
        return Ok(StructureOutcome::Mismatch(
            "highest-weight multiplicities differ (eigenvalue, block length, multiplicity)".into(),
        ));
    }
    let ident = |c: &Class| Matrix::identity(&field, c.hw.len());
    let (form, symmetric) = match g {
        GroupSpec::GL { .. } | GroupSpec::SL { .. } => (None, false),
        GroupSpec::Sp { form, .. } => (Some(form), false),
        GroupSpec::SO { form, .. } | GroupSpec::O { form, .. } => (Some(form), true),
        _ => {
            return Ok(StructureOutcome::Unresolved(format!(
                "no structured intertwiner search for {}",
                g.variant_name()
            )))
        }
    };
    let mut maps: Vec<Matrix> = ca.iter().map(ident).collect();
    // classes whose multiplicity form is symmetric and self-paired
    let mut orthogonal_classes: Vec<usize> = Vec::new();
    if let Some(bform) = form {
        let mut done = vec![false; ca.len()];
        for i in 0..ca.len() {
            if done[i] {
                continue;
            }
            let pl = partner_label(a, &ca[i])?;
            let Some(j) = ca.iter().position(|c| c.ell == ca[i].ell && c.label == pl) else {
                return Ok(StructureOutcome::Unresolved(
                    "form does not pair the isotypic pieces".into(),
                ));
            };
            let g1 = gram(bform, &a.triple.f, ca[i].ell, &ca[i].hw, &ca[j].hw);
            let g2 = gram(bform, &b.triple.f, cb[i].ell, &cb[i].hw, &cb[j].hw);
            done[i] = true;
            done[j] = true;
            if i != j {
                // P_i = I, P_j determined by the pairing
                maps[j] = &g2.inverse()? * &g1;
                continue;
            }
            let sym_type = symmetric == ((ca[i].ell - 1) % 2 == 0);
            let p = if sym_type {
                orthogonal_classes.push(i);
                symmetric_isometry(&g1, &g2, TRIES)
            } else {
                match (symplectic_basis(&g1), symplectic_basis(&g2)) {
                    (Some(t1), Some(t2)) => Some(&t2 * &t1.inverse()?),
                    _ => None,
                }
            };
            match p {
                Some(p) => maps[i] = p,
                None => {
                    return Ok(StructureOutcome::Unresolved(
                        "multiplicity forms not matched over the working field".into(),
                    ))
                }
            }
        }
    }
    let mut w = assemble(a, b, &ca, &cb, &maps)?;
    match g {
        GroupSpec::SO { form, .. } if w.det() != FieldElement::one(&field) => {
            let Some(&i) = orthogonal_classes.iter().find(|&&i| ca[i].ell % 2 == 1) else {
                return Ok(StructureOutcome::DetObstruction { o_witness: w });
            };
            let g1 = gram(form, &a.triple.f, ca[i].ell, &ca[i].hw, &ca[i].hw);
            let r = form_reflection(&g1)
                .ok_or_else(|| Error::InvalidInput("degenerate form".into()))?;
            maps[i] = &maps[i] * &r;
            w = assemble(a, b, &ca, &cb, &maps)?;
        }
        GroupSpec::SL { .. } => {
            let delta = w.det();
            if !delta.is_one() {
                let exps: Vec<i64> = ca.iter().map(|c| (c.ell * c.hw.len()) as i64).collect();
                let (d, coeffs) = bezout(&exps);
                let target = delta.inv()?;
                let mut poly = vec![FieldElement::zero(&field); d as usize + 1];
                poly[0] = -&target;
                poly[d as usize] = FieldElement::one(&field);
                let Some(rho) = roots_in_field(&crate::linalg::KPoly::new(&field, poly))
                    .into_iter()
                    .next()
                else {
                    return Ok(StructureOutcome::Unresolved(
                        "determinant correction needs a root outside the working field".into(),
                    ));
                };
                for (m, c) in maps.iter_mut().zip(coeffs) {
                    *m = m.scale(&rho.pow(c)?);
                }
                w = assemble(a, b, &ca, &cb, &maps)?;
            }
        }
        _ => {}
    }
    if !intertwines(a, b, &w) || !g.contains(&w)? {
        return Ok(StructureOutcome::Unresolved(
            "assembled intertwiner failed verification".into(),
        ));
    }
    Ok(StructureOutcome::Witness(w))
}
