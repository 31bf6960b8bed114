//! Dense univariate polynomials over the rationals, coefficients in ascending order.

use num_traits::{One, Zero};

use super::rational::Rational;

pub type QPoly = Vec<Rational>;

pub fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn trimmed(mut p: QPoly) -> QPoly {
    trim(&mut p);
    p
}

/// Degree, with the zero polynomial reported as `None`.
pub fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn add(a: &[Rational], b: &[Rational]) -> QPoly {
    let n = a.len().max(b.len());
    let z = Rational::zero();
    trimmed(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
            .collect(),
    )
}

pub fn sub(a: &[Rational], b: &[Rational]) -> QPoly {
    let n = a.len().max(b.len());
    let z = Rational::zero();
    trimmed(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

pub fn scale(a: &[Rational], c: &Rational) -> QPoly {
    trimmed(a.iter().map(|x| x * c).collect())
}

pub fn mul(a: &[Rational], b: &[Rational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trimmed(out)
}

/// Euclidean division; panics on a zero divisor.
pub fn divrem(a: &[Rational], b: &[Rational]) -> (QPoly, QPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let mut r = trimmed(a.to_vec());
    let lead_inv = b[db].recip();
    let mut q = vec![Rational::zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = &r[dr] * &lead_inv;
        let shift = dr - db;
        for (i, bi) in b.iter().enumerate().take(db + 1) {
            r[i + shift] -= &c * bi;
        }
        q[shift] = c;
        trim(&mut r);
    }
    (trimmed(q), r)
}

pub fn monic(a: &[Rational]) -> QPoly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = a[d].recip();
            a[..=d].iter().map(|c| c * &inv).collect()
        }
    }
}

pub fn gcd(a: &[Rational], b: &[Rational]) -> QPoly {
    let mut x = trimmed(a.to_vec());
    let mut y = trimmed(b.to_vec());
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// Returns `(g, s, t)` with `s·a + t·b = g`, `g` monic.
pub fn ext_gcd(a: &[Rational], b: &[Rational]) -> (QPoly, QPoly, QPoly) {
    let (mut r0, mut r1) = (trimmed(a.to_vec()), trimmed(b.to_vec()));
    let (mut s0, mut s1): (QPoly, QPoly) = (vec![Rational::one()], Vec::new());
    let (mut t0, mut t1): (QPoly, QPoly) = (Vec::new(), vec![Rational::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        let t2 = sub(&t0, &mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match degree(&r0) {
        None => (Vec::new(), s0, t0),
        Some(d) => {
            let inv = r0[d].recip();
            (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv))
        }
    }
}

pub fn derivative(a: &[Rational]) -> QPoly {
    trimmed(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer((i as i64).into()))
            .collect(),
    )
}

pub fn eval(a: &[Rational], x: &Rational) -> Rational {
    a.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// `p / gcd(p, p')`, made monic.
pub fn squarefree_part(p: &[Rational]) -> QPoly {
    let g = gcd(p, &derivative(p));
    monic(&divrem(p, &g).0)
}

pub fn is_squarefree(p: &[Rational]) -> bool {
    degree(&gcd(p, &derivative(p))).unwrap_or(0) == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::int;

    fn p(cs: &[i64]) -> QPoly {
        cs.iter().map(|&c| int(c)).collect()
    }

    #[test]
    fn division_and_gcd() {
        // (x^2 - 1) = (x - 1)(x + 1)
        let (q, r) = divrem(&p(&[-1, 0, 1]), &p(&[-1, 1]));
        assert_eq!(q, p(&[1, 1]));
        assert!(r.is_empty());
        assert_eq!(gcd(&p(&[-1, 0, 1]), &p(&[1, 2, 1])), p(&[1, 1]));
    }

    #[test]
    fn bezout_identity() {
        let a = p(&[2, 0, 1]);
        let b = p(&[-1, 1]);
        let (g, s, t) = ext_gcd(&a, &b);
        assert_eq!(g, p(&[1]));
        assert_eq!(add(&mul(&s, &a), &mul(&t, &b)), g);
    }

    #[test]
    fn squarefree() {
        // (x-1)^2 (x+2)
        let f = mul(&mul(&p(&[-1, 1]), &p(&[-1, 1])), &p(&[2, 1]));
        assert_eq!(squarefree_part(&f), mul(&p(&[-1, 1]), &p(&[2, 1])));
        assert!(!is_squarefree(&f));
    }
}
