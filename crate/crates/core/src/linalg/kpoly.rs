//! Univariate polynomials with number-field coefficients.

use std::ops::{Mul, Sub};

use crate::error::{Error, Result};
use crate::field::rational::int;
use crate::field::{Field, FieldElement};

use super::matrix::Matrix;

/// Polynomial over `K`, ascending coefficients, trimmed (no trailing zeros).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPoly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl KPoly {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElement>) -> KPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        KPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> KPoly {
        KPoly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> KPoly {
        Self::constant(&FieldElement::one(field))
    }

    pub fn constant(c: &FieldElement) -> KPoly {
        Self::new(c.field(), vec![c.clone()])
    }

    /// `t − r`.
    pub fn linear(r: &FieldElement) -> KPoly {
        Self::new(r.field(), vec![-r, FieldElement::one(r.field())])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &FieldElement) -> KPoly {
        Self::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> KPoly {
        match self.leading() {
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    pub fn add(&self, o: &KPoly) -> KPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = FieldElement::zero(&self.field);
        Self::new(
            &self.field,
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn divrem(&self, d: &KPoly) -> Result<(KPoly, KPoly)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::InvalidInput("polynomial division by zero".into()))?;
        let mut r = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((KPoly::zero(&self.field), KPoly::zero(&self.field)));
        };
        if nd < dd {
            return Ok((KPoly::zero(&self.field), self.clone()));
        }
        let lc_inv = d.coeffs[dd].inv()?;
        let mut q = vec![FieldElement::zero(&self.field); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &r[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = &r[k + j] - &(&c * dc);
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(&self.field, q), Self::new(&self.field, r)))
    }

    pub fn rem(&self, d: &KPoly) -> KPoly {
        self.divrem(d).expect("nonzero divisor").1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &KPoly) -> KPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> KPoly {
        Self::new(
            &self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&int(i as i64)))
                .collect(),
        )
    }

    /// `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> KPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).expect("nonzero gcd").0.monic()
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Evaluate at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let n = m.rows();
        let mut acc = Matrix::zeros(&self.field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = &acc * m;
            for i in 0..n {
                let v = acc.get(i, i) + c;
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &FieldElement) -> usize {
        let lin = KPoly::linear(r);
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() {
            let (q, rem) = p.divrem(&lin).expect("nonzero divisor");
            if !rem.is_zero() {
                break;
            }
            p = q;
            k += 1;
        }
        k
    }

    /// Coefficients as rationals, if every coefficient lies in `Q`.
    pub fn rational_coeffs(&self) -> Option<Vec<crate::field::Rational>> {
        self.coeffs.iter().map(|c| c.as_rational()).collect()
    }

    /// Apply a coefficient map (e.g. a field automorphism).
    pub fn map(&self, f: impl Fn(&FieldElement) -> FieldElement) -> KPoly {
        let coeffs: Vec<FieldElement> = self.coeffs.iter().map(f).collect();
        let field = coeffs
            .first()
            .map_or(self.field.clone(), |c| c.field().clone());
        Self::new(&field, coeffs)
    }
}

impl<'a> Mul<&'a KPoly> for &'a KPoly {
    type Output = KPoly;
    fn mul(self, o: &KPoly) -> KPoly {
        if self.is_zero() || o.is_zero() {
            return KPoly::zero(&self.field);
        }
        let mut out = vec![FieldElement::zero(&self.field); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        KPoly::new(&self.field, out)
    }
}

impl<'a> Sub<&'a KPoly> for &'a KPoly {
    type Output = KPoly;
    fn sub(self, o: &KPoly) -> KPoly {
        self.add(&o.scale(&-&FieldElement::one(&o.field)))
    }
}
