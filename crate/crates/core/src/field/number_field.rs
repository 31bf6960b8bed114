//! Number fields `K = Q[x]/(f)` and exact arithmetic on their elements.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use super::factor;
use super::isolate::{count_roots_in_box, RootBox};
use super::qpoly;
use super::rational::{int, Rational};
use crate::error::{Error, Result};

/// Degree bound used when certifying irreducibility of a defining polynomial.
pub const DEFAULT_IRREDUCIBILITY_BOUND: usize = 8;

/// `Q[x]/(f)` for a monic irreducible `f`, with an optional isolating box
/// selecting a complex embedding.
#[derive(Debug)]
pub struct NumberField {
    minpoly: Vec<Rational>,
    /// `x^(d+i)` reduced into the power basis, for `i` in `0..d-1`.
    reduction: Vec<Vec<Rational>>,
    embedding: Option<RootBox>,
}

pub type Field = Arc<NumberField>;

impl PartialEq for NumberField {
    fn eq(&self, o: &Self) -> bool {
        self.minpoly == o.minpoly && self.embedding == o.embedding
    }
}

impl Eq for NumberField {}

impl NumberField {
    /// Builds `Q[x]/(f)`. The polynomial is made monic; irreducibility is
    /// verified by trial factorisation up to `irreducibility_bound`.
    pub fn new(
        minpoly: Vec<Rational>,
        embedding: Option<RootBox>,
        irreducibility_bound: usize,
    ) -> Result<Field> {
        let f = qpoly::trimmed(minpoly);
        let d = qpoly::degree(&f).ok_or_else(|| Error::InvalidField("zero polynomial".into()))?;
        if d == 0 {
            return Err(Error::InvalidField("constant polynomial".into()));
        }
        let f = qpoly::monic(&f);
        if d > 1 && !factor::is_irreducible_up_to(&f, irreducibility_bound) {
            return Err(Error::InvalidField(
                "defining polynomial is reducible".into(),
            ));
        }
        if let Some(b) = &embedding {
            if b.re_lo > b.re_hi || b.im_lo > b.im_hi {
                return Err(Error::InvalidField("degenerate isolating box".into()));
            }
            match count_roots_in_box(&f, b) {
                Some(1) => {}
                _ => {
                    return Err(Error::InvalidField(
                        "box does not isolate exactly one root".into(),
                    ))
                }
            }
        }
        Ok(Arc::new(Self::build(f, embedding)))
    }

    /// Builds `Q[x]/(f)` for a polynomial known to be irreducible by
    /// construction (e.g. a squarefree characteristic polynomial of a
    /// primitive element); the embedding box is trusted as well.
    pub(crate) fn new_trusted(minpoly: Vec<Rational>, embedding: Option<RootBox>) -> Field {
        Arc::new(Self::build(qpoly::monic(&minpoly), embedding))
    }

    fn build(f: Vec<Rational>, embedding: Option<RootBox>) -> NumberField {
        let d = f.len() - 1;
        let mut reduction = Vec::with_capacity(d.saturating_sub(1));
        // x^d = -(f_0 + ... + f_{d-1} x^{d-1})
        let mut cur: Vec<Rational> = f[..d].iter().map(|c| -c).collect();
        for _ in 0..d.saturating_sub(1) {
            reduction.push(cur.clone());
            // multiply by x
            let top = cur[d - 1].clone();
            let mut next = vec![Rational::zero(); d];
            for i in (1..d).rev() {
                next[i] = cur[i - 1].clone();
            }
            for i in 0..d {
                next[i] -= &top * &f[i];
            }
            cur = next;
        }
        NumberField {
            minpoly: f,
            reduction,
            embedding,
        }
    }

    /// The field of rationals, `Q[x]/(x)`.
    pub fn rationals() -> Field {
        static Q: OnceLock<Field> = OnceLock::new();
        Q.get_or_init(|| Arc::new(Self::build(vec![Rational::zero(), Rational::one()], None)))
            .clone()
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// Monic defining polynomial, ascending coefficients.
    pub fn minpoly(&self) -> &[Rational] {
        &self.minpoly
    }

    pub fn embedding(&self) -> Option<&RootBox> {
        self.embedding.as_ref()
    }

    /// Structural equality of two fields.
    pub fn same(a: &Field, b: &Field) -> bool {
        Arc::ptr_eq(a, b) || (a.minpoly == b.minpoly && a.embedding == b.embedding)
    }

    fn reduce(&self, mut c: Vec<Rational>) -> Vec<Rational> {
        let d = self.degree();
        if c.len() > d + self.reduction.len() {
            let mut r = qpoly::divrem(&c, &self.minpoly).1;
            r.resize(d, Rational::zero());
            return r;
        }
        if c.len() > d {
            let high: Vec<Rational> = c.drain(d..).collect();
            c.resize(d, Rational::zero());
            for (i, h) in high.iter().enumerate() {
                if h.is_zero() {
                    continue;
                }
                for (j, r) in self.reduction[i].iter().enumerate() {
                    c[j] += h * r;
                }
            }
        } else {
            c.resize(d, Rational::zero());
        }
        c
    }
}

/// An element of a number field, stored by power-basis coordinates.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    coords: Vec<Rational>,
}

impl FieldElement {
    /// Element with the given coordinates (reduced modulo the minimal polynomial).
    pub fn from_coords(field: &Field, coords: Vec<Rational>) -> FieldElement {
        let coords = field.reduce(coords);
        FieldElement {
            field: field.clone(),
            coords,
        }
    }

    pub fn from_rational(field: &Field, r: Rational) -> FieldElement {
        let mut coords = vec![Rational::zero(); field.degree()];
        coords[0] = r;
        FieldElement {
            field: field.clone(),
            coords,
        }
    }

    pub fn from_int(field: &Field, n: i64) -> FieldElement {
        Self::from_rational(field, int(n))
    }

    pub fn zero(field: &Field) -> FieldElement {
        FieldElement {
            field: field.clone(),
            coords: vec![Rational::zero(); field.degree()],
        }
    }

    pub fn one(field: &Field) -> FieldElement {
        Self::from_int(field, 1)
    }

    /// The class of `x`.
    pub fn generator(field: &Field) -> FieldElement {
        Self::from_coords(field, vec![Rational::zero(), Rational::one()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    fn check(&self, other: &FieldElement) {
        assert!(
            NumberField::same(&self.field, &other.field),
            "field mismatch in arithmetic"
        );
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::SingularMatrix);
        }
        if self.field.is_rational() {
            return Ok(Self::from_rational(&self.field, self.coords[0].recip()));
        }
        let a = qpoly::trimmed(self.coords.clone());
        let (g, s, _) = qpoly::ext_gcd(&a, &self.field.minpoly);
        // g is a nonzero constant because the minimal polynomial is irreducible
        let g0 = g[0].clone();
        Ok(Self::from_coords(
            &self.field,
            qpoly::scale(&s, &g0.recip()),
        ))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn scale(&self, r: &Rational) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    /// Image under the homomorphism sending `x` to `image_of_x` (which may live
    /// in a different field).
    pub fn map_generator(&self, image_of_x: &FieldElement) -> FieldElement {
        let target = image_of_x.field();
        let mut acc = FieldElement::zero(target);
        for c in self.coords.iter().rev() {
            acc = &(&acc * image_of_x) + &FieldElement::from_rational(target, c.clone());
        }
        acc
    }

    /// The minimal polynomial of multiplication by this element has the
    /// characteristic polynomial over `Q` given here (ascending, monic).
    pub fn mul_matrix(&self) -> Vec<Vec<Rational>> {
        let d = self.field.degree();
        let mut cols = Vec::with_capacity(d);
        let mut basis = FieldElement::one(&self.field);
        let x = FieldElement::generator(&self.field);
        for _ in 0..d {
            cols.push((&basis * self).coords);
            basis = &basis * &x;
        }
        (0..d)
            .map(|i| (0..d).map(|j| cols[j][i].clone()).collect())
            .collect()
    }

    /// Sign of the real part of this element under the field's embedding,
    /// decided by refining the isolating box; `None` without an embedding or
    /// when the real part is zero (or not separated within the refinement cap).
    pub fn real_part_sign(&self) -> Option<std::cmp::Ordering> {
        use num_traits::Signed;
        let mut b = self.field.embedding()?.clone();
        if let Some(r) = self.as_rational() {
            return Some(r.cmp(&Rational::zero()));
        }
        for _ in 0..256 {
            let enc = b.eval_enclosure(&self.coords);
            if enc.re_lo.is_positive() {
                return Some(std::cmp::Ordering::Greater);
            }
            if enc.re_hi.is_negative() {
                return Some(std::cmp::Ordering::Less);
            }
            b = b.refine(&self.field.minpoly)?;
        }
        None
    }

    /// Enclosure of this element's value under the field's chosen embedding.
    pub fn embedded_enclosure(&self) -> Option<RootBox> {
        self.field
            .embedding()
            .map(|b| b.eval_enclosure(&self.coords))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        NumberField::same(&self.field, &other.field) && self.coords == other.coords
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let terms: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        write!(f, "({})", terms.join(" + "))
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        self.check(o);
        FieldElement {
            field: self.field.clone(),
            coords: self
                .coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        self.check(o);
        FieldElement {
            field: self.field.clone(),
            coords: self
                .coords
                .iter()
                .zip(&o.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        self.check(o);
        let d = self.field.degree();
        if d == 1 {
            return FieldElement {
                field: self.field.clone(),
                coords: vec![&self.coords[0] * &o.coords[0]],
            };
        }
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        FieldElement::from_coords(&self.field, prod)
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    /// Panics on division by zero; use [`FieldElement::inv`] for a fallible path.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &FieldElement) -> FieldElement {
        self * &o.inv().expect("division by zero")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::rat;

    fn gaussian() -> Field {
        NumberField::new(
            vec![int(1), int(0), int(1)],
            None,
            DEFAULT_IRREDUCIBILITY_BOUND,
        )
        .unwrap()
    }

    #[test]
    fn gaussian_arithmetic() {
        let k = gaussian();
        let i = FieldElement::generator(&k);
        assert_eq!(&i * &i, FieldElement::from_int(&k, -1));
        let z = &FieldElement::from_int(&k, 3) + &i.scale(&int(4));
        let w = z.inv().unwrap();
        assert!((&z * &w).is_one());
        assert_eq!(w.coords(), &[rat(3, 25), rat(-4, 25)]);
        assert_eq!(i.pow(4).unwrap(), FieldElement::one(&k));
        assert_eq!(i.pow(-1).unwrap(), -&i);
    }

    #[test]
    fn rejects_reducible_and_bad_boxes() {
        assert!(NumberField::new(vec![int(-4), int(0), int(1)], None, 8).is_err());
        assert!(NumberField::new(vec![int(4), int(0), int(0), int(0), int(1)], None, 8).is_err());
        let b = RootBox::new(int(-1), int(1), int(-2), int(2));
        assert!(NumberField::new(vec![int(1), int(0), int(1)], Some(b), 8).is_err());
        let b = RootBox::new(int(-1), int(1), rat(1, 2), int(2));
        assert!(NumberField::new(vec![int(1), int(0), int(1)], Some(b), 8).is_ok());
    }

    #[test]
    fn cubic_reduction_and_inverse() {
        // x^3 - x - 1
        let k = NumberField::new(vec![int(-1), int(-1), int(0), int(1)], None, 8).unwrap();
        let x = FieldElement::generator(&k);
        let x3 = x.pow(3).unwrap();
        assert_eq!(x3, &x + &FieldElement::one(&k));
        let x5 = x.pow(5).unwrap();
        assert!((&x5 * &x5.inv().unwrap()).is_one());
    }

    #[test]
    fn rationals_field_is_shared() {
        let q = NumberField::rationals();
        let a = FieldElement::from_rational(&q, rat(2, 3));
        assert_eq!(format!("{}", &a * &a), "4/9");
    }
}
