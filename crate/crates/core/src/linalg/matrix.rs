//! Dense matrices over a number field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, NumberField, Rational};

use super::kpoly::KPoly;

/// Row-major dense matrix whose entries share one number field.
#[derive(Clone)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        if data.iter().any(|e| !NumberField::same(e.field(), field)) {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix {
            rows,
            cols,
            field: field.clone(),
            data,
        })
    }

    pub fn from_fn(
        field: &Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            field: field.clone(),
            data,
        }
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        let z = FieldElement::zero(field);
        Matrix {
            rows,
            cols,
            field: field.clone(),
            data: vec![z; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        Self::scalar(field, n, &FieldElement::one(field))
    }

    pub fn scalar(field: &Field, n: usize, c: &FieldElement) -> Matrix {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn diagonal(field: &Field, diag: &[FieldElement]) -> Matrix {
        let n = diag.len();
        let mut m = Self::zeros(field, n, n);
        for (i, d) in diag.iter().enumerate() {
            m.data[i * n + i] = d.clone();
        }
        m
    }

    /// Elementary matrix `E_ij` (zero-based indices).
    pub fn unit(field: &Field, n: usize, i: usize, j: usize) -> Matrix {
        let mut m = Self::zeros(field, n, n);
        m.data[i * n + j] = FieldElement::one(field);
        m
    }

    pub fn from_rationals(field: &Field, rows: &[Vec<Rational>]) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self::from_fn(field, r, c, |i, j| {
            FieldElement::from_rational(field, rows[i][j].clone())
        }))
    }

    pub fn from_ints(field: &Field, rows: &[Vec<i64>]) -> Matrix {
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(field, rows.len(), c, |i, j| {
            FieldElement::from_int(field, rows[i][j])
        })
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<FieldElement>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(field, r, c, rows.into_iter().flatten().collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Field, n: usize, cols: &[Vec<FieldElement>]) -> Matrix {
        Self::from_fn(field, n, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<FieldElement> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j).is_one()
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn map(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Matrix {
        let data: Vec<FieldElement> = self.data.iter().map(f).collect();
        let field = data
            .first()
            .map_or(self.field.clone(), |e| e.field().clone());
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field,
            data,
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix {
        self.map(|e| e * c)
    }

    pub fn scale_rational(&self, c: &Rational) -> Matrix {
        self.map(|e| e.scale(c))
    }

    pub fn trace(&self) -> FieldElement {
        let mut t = FieldElement::zero(&self.field);
        for i in 0..self.rows.min(self.cols) {
            t = &t + self.get(i, i);
        }
        t
    }

    fn check_same_shape(&self, o: &Matrix) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Matrix) -> Result<Matrix> {
        self.check_same_shape(o)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field.clone(),
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, o: &Matrix) -> Result<Matrix> {
        self.check_same_shape(o)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field.clone(),
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn try_mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Matrix::zeros(&self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        (0..self.rows)
            .map(|i| {
                let mut acc = FieldElement::zero(&self.field);
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Commutator `[self, o] = self·o − o·self`.
    pub fn bracket(&self, o: &Matrix) -> Matrix {
        &(self * o) - &(o * self)
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power, negative exponents via the inverse.
    pub fn powi(&self, e: i64) -> Result<Matrix> {
        if e < 0 {
            Ok(self.inverse()?.pow(e.unsigned_abs()))
        } else {
            Ok(self.pow(e as u64))
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let rv = m.get(r, j);
                    if !rv.is_zero() {
                        let v = m.get(i, j) - &(&f * rv);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : self·v = 0}`, in the deterministic
    /// order of free columns.
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![FieldElement::zero(&self.field); self.cols];
            v[free] = FieldElement::one(&self.field);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free);
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `self·x = b`, if any.
    pub fn solve(&self, b: &[FieldElement]) -> Option<Vec<FieldElement>> {
        let aug = Matrix::from_fn(&self.field, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![FieldElement::zero(&self.field); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "inverse of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let aug = Matrix::from_fn(&self.field, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                FieldElement::one(&self.field)
            } else {
                FieldElement::zero(&self.field)
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularMatrix);
        }
        Ok(Matrix::from_fn(&self.field, n, n, |i, j| {
            r.get(i, n + j).clone()
        }))
    }

    pub fn det(&self) -> FieldElement {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = FieldElement::one(&self.field);
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return FieldElement::zero(&self.field);
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -&det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..n {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// Characteristic polynomial `det(t·I − self)` via Hessenberg reduction.
    pub fn charpoly(&self) -> KPoly {
        assert!(
            self.is_square(),
            "characteristic polynomial of a non-square matrix"
        );
        let n = self.rows;
        let f = &self.field;
        let mut h = self.clone();
        // reduce to upper Hessenberg form by similarity
        for c in 0..n.saturating_sub(2) {
            let Some(p) = (c + 1..n).find(|&i| !h.get(i, c).is_zero()) else {
                continue;
            };
            if p != c + 1 {
                let q = c + 1;
                for j in 0..n {
                    h.data.swap(p * n + j, q * n + j);
                }
                for i in 0..n {
                    h.data.swap(i * n + p, i * n + q);
                }
            }
            let inv = h.get(c + 1, c).inv().expect("nonzero pivot");
            for i in c + 2..n {
                let m = h.get(i, c) * &inv;
                if m.is_zero() {
                    continue;
                }
                // row_i -= m row_{c+1}; col_{c+1} += m col_i
                for j in 0..n {
                    let v = h.get(i, j) - &(&m * h.get(c + 1, j));
                    h.set(i, j, v);
                }
                for k in 0..n {
                    let v = h.get(k, c + 1) + &(&m * h.get(k, i));
                    h.set(k, c + 1, v);
                }
            }
        }
        // recurrence on leading principal minors
        let mut polys: Vec<KPoly> = vec![KPoly::one(f)];
        for k in 0..n {
            let lin = KPoly::new(f, vec![-h.get(k, k), FieldElement::one(f)]);
            let mut pk = &lin * &polys[k];
            let mut prod = FieldElement::one(f);
            for i in (0..k).rev() {
                prod = &prod * h.get(i + 1, i);
                let coeff = &prod * h.get(i, k);
                if !coeff.is_zero() {
                    pk = &pk - &polys[i].scale(&coeff);
                }
            }
            polys.push(pk);
        }
        polys.pop().unwrap()
    }

    /// Kronecker product.
    pub fn kron(&self, o: &Matrix) -> Matrix {
        Matrix::from_fn(
            &self.field,
            self.rows * o.rows,
            self.cols * o.cols,
            |i, j| self.get(i / o.rows, j / o.cols) * o.get(i % o.rows, j % o.cols),
        )
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, o: &Matrix) -> Matrix {
        Matrix::from_fn(
            &self.field,
            self.rows + o.rows,
            self.cols + o.cols,
            |i, j| {
                if i < self.rows && j < self.cols {
                    self.get(i, j).clone()
                } else if i >= self.rows && j >= self.cols {
                    o.get(i - self.rows, j - self.cols).clone()
                } else {
                    FieldElement::zero(&self.field)
                }
            },
        )
    }

    /// Whether some power up to the size vanishes.
    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows as u64).is_zero()
    }

    /// Entries flattened into rational coordinates (entry-major).
    pub fn rational_coords(&self) -> Vec<Rational> {
        self.data
            .iter()
            .flat_map(|e| e.coords().iter().cloned())
            .collect()
    }
}

impl PartialEq for Matrix {
    fn eq(&self, o: &Self) -> bool {
        self.rows == o.rows && self.cols == o.cols && self.data == o.data
    }
}

impl Eq for Matrix {}

impl std::hash::Hash for Matrix {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn add(self, o: &Matrix) -> Matrix {
        self.try_add(o).expect("shape mismatch in matrix addition")
    }
}

impl<'a> Sub<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn sub(self, o: &Matrix) -> Matrix {
        self.try_sub(o)
            .expect("shape mismatch in matrix subtraction")
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;
    fn mul(self, o: &Matrix) -> Matrix {
        self.try_mul(o).expect("shape mismatch in matrix product")
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.map(|e| -e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::int;

    fn q() -> Field {
        NumberField::rationals()
    }

    #[test]
    fn inverse_and_det() {
        let m = Matrix::from_ints(&q(), &[vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert_eq!(m.det().as_rational(), Some(int(18)));
        let s = Matrix::from_ints(&q(), &[vec![1, 2], vec![2, 4]]);
        assert!(matches!(s.inverse(), Err(Error::SingularMatrix)));
        assert!(s.det().is_zero());
    }

    #[test]
    fn rank_nullity() {
        let m = Matrix::from_ints(
            &q(),
            &[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 1, 0]],
        );
        let k = m.kernel();
        assert_eq!(m.rank() + k.len(), 4);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|e| e.is_zero()));
        }
    }

    #[test]
    fn charpoly_matches_det_expansion() {
        let m = Matrix::from_ints(&q(), &[vec![0, 1, 0], vec![0, 0, 1], vec![6, -11, 6]]);
        let cp = m.charpoly();
        let c: Vec<_> = cp
            .coeffs()
            .iter()
            .map(|e| e.as_rational().unwrap())
            .collect();
        assert_eq!(c, vec![int(-6), int(11), int(-6), int(1)]);
        // Cayley-Hamilton
        assert!(cp.eval_matrix(&m).is_zero());
    }

    #[test]
    fn charpoly_with_zero_subdiagonal() {
        let m = Matrix::from_ints(&q(), &[vec![1, 5, 7], vec![0, 2, 0], vec![0, 3, 3]]);
        let cp = m.charpoly();
        assert!(cp.eval_matrix(&m).is_zero());
        assert_eq!(cp.coeffs()[0].as_rational(), Some(int(-6)));
    }

    #[test]
    fn solve_and_kron() {
        let m = Matrix::from_ints(&q(), &[vec![1, 1], vec![1, -1]]);
        let b = vec![
            FieldElement::from_int(&q(), 3),
            FieldElement::from_int(&q(), 1),
        ];
        let x = m.solve(&b).unwrap();
        assert_eq!(x[0].as_rational(), Some(int(2)));
        let k = m.kron(&Matrix::identity(&q(), 2));
        assert_eq!(k.rows(), 4);
        assert_eq!(k.det().as_rational(), Some(int(4)));
    }
}
