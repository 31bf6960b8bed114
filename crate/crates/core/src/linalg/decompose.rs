//! Exponential, logarithm and Jordan–Chevalley decomposition.

use crate::error::{Error, Result};
use crate::field::rational::rat;
use crate::field::FieldElement;

use super::matrix::Matrix;

/// `exp(n) = Σ nᵏ/k!`, a finite sum for nilpotent `n`.
pub fn exp_nilpotent(n: &Matrix) -> Result<Matrix> {
    if !n.is_square() {
        return Err(Error::DimensionMismatch(
            "exp of a non-square matrix".into(),
        ));
    }
    let dim = n.rows();
    let mut term = Matrix::identity(n.field(), dim);
    let mut acc = term.clone();
    for k in 1..=dim {
        term = (&term * n).scale_rational(&rat(1, k as i64));
        if term.is_zero() {
            return Ok(acc);
        }
        acc = &acc + &term;
    }
    if (&term * n).is_zero() {
        Ok(acc)
    } else {
        Err(Error::NotNilpotent)
    }
}

/// `log(u) = Σ (−1)^{k+1}(u−I)ᵏ/k`, a finite sum for unipotent `u`.
pub fn log_unipotent(u: &Matrix) -> Result<Matrix> {
    if !u.is_square() {
        return Err(Error::DimensionMismatch(
            "log of a non-square matrix".into(),
        ));
    }
    let dim = u.rows();
    let x = u - &Matrix::identity(u.field(), dim);
    if !x.pow(dim as u64).is_zero() {
        return Err(Error::NotUnipotent);
    }
    let mut acc = Matrix::zeros(u.field(), dim, dim);
    let mut power = Matrix::identity(u.field(), dim);
    for k in 1..dim.max(1) {
        power = &power * &x;
        if power.is_zero() {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        acc = &acc + &power.scale_rational(&rat(sign, k as i64));
    }
    Ok(acc)
}

/// Whether `m` is semisimple: the squarefree part of its characteristic
/// polynomial annihilates it.
pub fn is_semisimple(m: &Matrix) -> bool {
    m.charpoly().squarefree_part().eval_matrix(m).is_zero()
}

/// Multiplicative Jordan–Chevalley decomposition `m = S·U` of an invertible
/// matrix, with `S` a polynomial in `m`.
pub fn jordan_chevalley(m: &Matrix) -> Result<(Matrix, Matrix)> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(
            "Jordan–Chevalley of a non-square matrix".into(),
        ));
    }
    if m.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    let s = semisimple_part(m);
    let u = &s.inverse()? * m;
    Ok((s, u))
}

/// Newton iteration `S ← S − P(S)·P′(S)⁻¹` for the squarefree part `P` of the
/// characteristic polynomial; converges to the semisimple part.
pub fn semisimple_part(m: &Matrix) -> Matrix {
    let p = m.charpoly().squarefree_part();
    let dp = p.derivative();
    let mut s = m.clone();
    loop {
        let ps = p.eval_matrix(&s);
        if ps.is_zero() {
            return s;
        }
        let dps = dp
            .eval_matrix(&s)
            .inverse()
            .expect("P′(S) is invertible since P is squarefree");
        s = &s - &(&ps * &dps);
    }
}

/// Additive Jordan decomposition `m = S + N` (semisimple plus nilpotent).
pub fn additive_jordan(m: &Matrix) -> (Matrix, Matrix) {
    let s = semisimple_part(m);
    let n = m - &s;
    (s, n)
}

/// `t^H` for a semisimple `h` with integer eigenvalues: acts by `t^k` on the
/// `h = k` eigenspace.
pub fn power_by_grading(h: &Matrix, t: &FieldElement) -> Result<Matrix> {
    let field = h.field();
    let n = h.rows();
    let mut cols: Vec<Vec<FieldElement>> = Vec::new();
    let mut vals: Vec<FieldElement> = Vec::new();
    let bound = 2 * n as i64 + 2;
    for k in -bound..=bound {
        let shifted = h - &Matrix::scalar(field, n, &FieldElement::from_int(field, k));
        let ker = shifted.kernel();
        let tk = t.pow(k)?;
        for v in ker {
            cols.push(v);
            vals.push(tk.clone());
        }
    }
    if cols.len() != n {
        return Err(Error::NonSplitSpectrum(
            "grading element is not integrally diagonalizable".into(),
        ));
    }
    let p = Matrix::from_columns(field, n, &cols);
    let d = Matrix::diagonal(field, &vals);
    Ok(&(&p * &d) * &p.inverse()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::int;
    use crate::field::{Field, NumberField};

    fn q() -> Field {
        NumberField::rationals()
    }

    #[test]
    fn jc_of_jordan_block() {
        let m = Matrix::from_ints(&q(), &[vec![2, 1], vec![0, 2]]);
        let (s, u) = jordan_chevalley(&m).unwrap();
        assert_eq!(s, Matrix::from_ints(&q(), &[vec![2, 0], vec![0, 2]]));
        let expected_u =
            Matrix::from_rationals(&q(), &[vec![int(1), rat(1, 2)], vec![int(0), int(1)]]).unwrap();
        assert_eq!(u, expected_u);
    }

    #[test]
    fn jc_identity_and_semisimple() {
        let i = Matrix::identity(&q(), 3);
        assert_eq!(jordan_chevalley(&i).unwrap(), (i.clone(), i.clone()));
        let d = Matrix::from_ints(&q(), &[vec![1, 0], vec![0, 2]]);
        assert_eq!(
            jordan_chevalley(&d).unwrap(),
            (d.clone(), Matrix::identity(&q(), 2))
        );
        let z = Matrix::zeros(&q(), 2, 2);
        assert!(matches!(jordan_chevalley(&z), Err(Error::SingularMatrix)));
    }

    #[test]
    fn log_exp_examples() {
        let u = Matrix::from_rationals(
            &q(),
            &[
                vec![int(1), int(1), rat(1, 2)],
                vec![int(0), int(1), int(1)],
                vec![int(0), int(0), int(1)],
            ],
        )
        .unwrap();
        let n = log_unipotent(&u).unwrap();
        assert_eq!(
            n,
            Matrix::from_ints(&q(), &[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]])
        );
        assert_eq!(exp_nilpotent(&n).unwrap(), u);
        assert!(log_unipotent(&Matrix::identity(&q(), 2)).unwrap().is_zero());
        assert!(exp_nilpotent(&Matrix::zeros(&q(), 3, 3))
            .unwrap()
            .is_identity());
        assert!(matches!(
            log_unipotent(&Matrix::from_ints(&q(), &[vec![2]])),
            Err(Error::NotUnipotent)
        ));
        assert!(matches!(
            exp_nilpotent(&Matrix::from_ints(&q(), &[vec![1]])),
            Err(Error::NotNilpotent)
        ));
    }

    #[test]
    fn grading_power() {
        let h = Matrix::from_ints(&q(), &[vec![1, 0], vec![0, -1]]);
        let t = FieldElement::from_int(&q(), 3);
        let th = power_by_grading(&h, &t).unwrap();
        assert_eq!(
            th,
            Matrix::from_rationals(&q(), &[vec![int(3), int(0)], vec![int(0), rat(1, 3)]]).unwrap()
        );
    }
}
