//! Reductive groups given by defining equations, and their tensor
//! representations.

pub mod rep;
pub mod sample;
pub mod word;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::Matrix;

pub use rep::{build_rep, rep_family, Rep};
pub use word::Word;

/// An element of a tensor space built from `V` and `V*`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor {
    pub word: Word,
    pub entries: Vec<FieldElement>,
}

/// A linear algebraic group inside `GL_n`.
#[derive(Clone, Debug, PartialEq)]
pub enum GroupSpec {
    GL {
        n: usize,
    },
    SL {
        n: usize,
    },
    /// Symplectic group of the antisymmetric form `J` (`n` is the matrix size).
    Sp {
        n: usize,
        form: Matrix,
    },
    SO {
        n: usize,
        form: Matrix,
    },
    O {
        n: usize,
        form: Matrix,
    },
    /// Block-diagonal product of the factors.
    Product(Vec<GroupSpec>),
    /// Stabilizer in `GL_n` of a list of tensors.
    TensorStabilizer {
        n: usize,
        tensors: Vec<Tensor>,
    },
}

impl GroupSpec {
    pub fn gl(n: usize) -> GroupSpec {
        GroupSpec::GL { n }
    }

    pub fn sl(n: usize) -> GroupSpec {
        GroupSpec::SL { n }
    }

    /// `Sp_n` with the standard form `[[0, I], [−I, 0]]`.
    pub fn sp_standard(field: &Field, n: usize) -> GroupSpec {
        GroupSpec::Sp {
            n,
            form: standard_symplectic_form(field, n),
        }
    }

    /// `SO_n` of the identity form.
    pub fn so_identity(field: &Field, n: usize) -> GroupSpec {
        GroupSpec::SO {
            n,
            form: Matrix::identity(field, n),
        }
    }

    /// `O_n` of the identity form.
    pub fn o_identity(field: &Field, n: usize) -> GroupSpec {
        GroupSpec::O {
            n,
            form: Matrix::identity(field, n),
        }
    }

    pub fn sp(form: Matrix) -> Result<GroupSpec> {
        let g = GroupSpec::Sp {
            n: form.rows(),
            form,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn so(form: Matrix) -> Result<GroupSpec> {
        let g = GroupSpec::SO {
            n: form.rows(),
            form,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn o(form: Matrix) -> Result<GroupSpec> {
        let g = GroupSpec::O {
            n: form.rows(),
            form,
        };
        g.validate()?;
        Ok(g)
    }

    /// Matrix size of the defining representation.
    pub fn n(&self) -> usize {
        match self {
            GroupSpec::GL { n }
            | GroupSpec::SL { n }
            | GroupSpec::Sp { n, .. }
            | GroupSpec::SO { n, .. }
            | GroupSpec::O { n, .. }
            | GroupSpec::TensorStabilizer { n, .. } => *n,
            GroupSpec::Product(fs) => fs.iter().map(|f| f.n()).sum(),
        }
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            GroupSpec::GL { .. } => "GL",
            GroupSpec::SL { .. } => "SL",
            GroupSpec::Sp { .. } => "Sp",
            GroupSpec::SO { .. } => "SO",
            GroupSpec::O { .. } => "O",
            GroupSpec::Product(_) => "Product",
            GroupSpec::TensorStabilizer { .. } => "TensorStabilizer",
        }
    }

    /// The bilinear form for Sp/SO/O.
    pub fn form(&self) -> Option<&Matrix> {
        match self {
            GroupSpec::Sp { form, .. } | GroupSpec::SO { form, .. } | GroupSpec::O { form, .. } => {
                Some(form)
            }
            _ => None,
        }
    }

    /// Whether this is `GL_n` itself.
    pub fn is_gl(&self) -> bool {
        matches!(self, GroupSpec::GL { .. })
    }

    /// Checks the structural invariants of the specification.
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupSpec::GL { n } | GroupSpec::SL { n } => {
                if *n == 0 {
                    return Err(Error::InvalidGroup("n must be positive".into()));
                }
            }
            GroupSpec::Sp { n, form } => {
                check_form(form, *n)?;
                if *n % 2 != 0 {
                    return Err(Error::InvalidGroup(
                        "symplectic groups need even size".into(),
                    ));
                }
                if form.transpose() != -form {
                    return Err(Error::InvalidGroup(
                        "symplectic form is not antisymmetric".into(),
                    ));
                }
            }
            GroupSpec::SO { n, form } | GroupSpec::O { n, form } => {
                check_form(form, *n)?;
                if &form.transpose() != form {
                    return Err(Error::InvalidGroup(
                        "orthogonal form is not symmetric".into(),
                    ));
                }
            }
            GroupSpec::Product(fs) => {
                if fs.is_empty() {
                    return Err(Error::InvalidGroup("empty product".into()));
                }
                for f in fs {
                    f.validate()?;
                }
            }
            GroupSpec::TensorStabilizer { n, tensors } => {
                for t in tensors {
                    if t.entries.len() != t.word.dim(*n) {
                        return Err(Error::InvalidGroup(format!(
                            "tensor of shape {} needs {} entries, got {}",
                            t.word,
                            t.word.dim(*n),
                            t.entries.len()
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_size(&self, m: &Matrix) -> Result<()> {
        let n = self.n();
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} group of size {n} vs a {}x{} matrix",
                self.variant_name(),
                m.rows(),
                m.cols()
            )));
        }
        Ok(())
    }

    /// Exact membership test via the defining equations.
    pub fn contains(&self, m: &Matrix) -> Result<bool> {
        self.check_size(m)?;
        Ok(match self {
            GroupSpec::GL { .. } => !m.det().is_zero(),
            GroupSpec::SL { .. } => m.det().is_one(),
            GroupSpec::Sp { form, .. } | GroupSpec::O { form, .. } => {
                &(&m.transpose() * form) * m == *form
            }
            GroupSpec::SO { form, .. } => &(&m.transpose() * form) * m == *form && m.det().is_one(),
            GroupSpec::Product(fs) => {
                let blocks = blocks_of(fs, m);
                match blocks {
                    Some(bs) => {
                        for (f, b) in fs.iter().zip(&bs) {
                            if !f.contains(b)? {
                                return Ok(false);
                            }
                        }
                        true
                    }
                    None => false,
                }
            }
            GroupSpec::TensorStabilizer { tensors, .. } => {
                if m.det().is_zero() {
                    return Ok(false);
                }
                for t in tensors {
                    let r = rep::group_action(&t.word, m)?;
                    if r.mul_vec(&t.entries) != t.entries {
                        return Ok(false);
                    }
                }
                true
            }
        })
    }

    /// Exact membership test for the Lie algebra.
    pub fn lie_contains(&self, x: &Matrix) -> Result<bool> {
        self.check_size(x)?;
        Ok(self.lie_conditions(x).iter().all(|c| c.is_zero()))
    }

    /// Values of the linear equations cutting out `Lie(G)` inside `gl_n`.
    pub fn lie_conditions(&self, x: &Matrix) -> Vec<FieldElement> {
        match self {
            GroupSpec::GL { .. } => Vec::new(),
            GroupSpec::SL { .. } => vec![x.trace()],
            GroupSpec::Sp { form, .. } | GroupSpec::SO { form, .. } | GroupSpec::O { form, .. } => {
                (&(&x.transpose() * form) + &(form * x)).entries().to_vec()
            }
            GroupSpec::Product(fs) => {
                let mut out = Vec::new();
                let mut offset = 0;
                let n = self.n();
                for f in fs {
                    let k = f.n();
                    for i in offset..offset + k {
                        for j in 0..n {
                            if j < offset || j >= offset + k {
                                out.push(x.get(i, j).clone());
                            }
                        }
                    }
                    let b = Matrix::from_fn(x.field(), k, k, |i, j| {
                        x.get(offset + i, offset + j).clone()
                    });
                    out.extend(f.lie_conditions(&b));
                    offset += k;
                }
                out
            }
            GroupSpec::TensorStabilizer { tensors, .. } => {
                let mut out = Vec::new();
                for t in tensors {
                    out.extend(rep::lie_action(&t.word, x).mul_vec(&t.entries));
                }
                out
            }
        }
    }

    /// A basis of `Lie(G)` over `field`, in the deterministic order of free
    /// coordinates.
    pub fn lie_algebra_basis(&self, field: &Field) -> Vec<Matrix> {
        let n = self.n();
        let units: Vec<Matrix> = (0..n * n)
            .map(|k| Matrix::unit(field, n, k / n, k % n))
            .collect();
        if self.is_gl() {
            return units;
        }
        let conds: Vec<Vec<FieldElement>> = units.iter().map(|u| self.lie_conditions(u)).collect();
        let rows = conds.first().map_or(0, |c| c.len());
        if rows == 0 {
            return units;
        }
        let a = Matrix::from_fn(field, rows, n * n, |i, j| conds[j][i].clone());
        a.kernel()
            .into_iter()
            .map(|v| Matrix::from_fn(field, n, n, |i, j| v[i * n + j].clone()))
            .collect()
    }

    /// Applies a map to every matrix and tensor entry (e.g. a field embedding).
    pub fn map_entries(&self, f: &impl Fn(&FieldElement) -> FieldElement) -> GroupSpec {
        match self {
            GroupSpec::GL { .. } | GroupSpec::SL { .. } => self.clone(),
            GroupSpec::Sp { n, form } => GroupSpec::Sp {
                n: *n,
                form: form.map(f),
            },
            GroupSpec::SO { n, form } => GroupSpec::SO {
                n: *n,
                form: form.map(f),
            },
            GroupSpec::O { n, form } => GroupSpec::O {
                n: *n,
                form: form.map(f),
            },
            GroupSpec::Product(fs) => {
                GroupSpec::Product(fs.iter().map(|g| g.map_entries(f)).collect())
            }
            GroupSpec::TensorStabilizer { n, tensors } => GroupSpec::TensorStabilizer {
                n: *n,
                tensors: tensors
                    .iter()
                    .map(|t| Tensor {
                        word: t.word.clone(),
                        entries: t.entries.iter().map(f).collect(),
                    })
                    .collect(),
            },
        }
    }
}

fn check_form(form: &Matrix, n: usize) -> Result<()> {
    if form.rows() != n || form.cols() != n {
        return Err(Error::InvalidGroup(format!("form must be {n}x{n}")));
    }
    if form.det().is_zero() {
        return Err(Error::InvalidGroup("form is degenerate".into()));
    }
    Ok(())
}

fn blocks_of(fs: &[GroupSpec], m: &Matrix) -> Option<Vec<Matrix>> {
    let n = m.rows();
    let mut out = Vec::new();
    let mut offset = 0;
    for f in fs {
        let k = f.n();
        for i in offset..offset + k {
            for j in 0..n {
                if (j < offset || j >= offset + k) && !m.get(i, j).is_zero() {
                    return None;
                }
            }
        }
        out.push(Matrix::from_fn(m.field(), k, k, |i, j| {
            m.get(offset + i, offset + j).clone()
        }));
        offset += k;
    }
    Some(out)
}

/// `[[0, I_m], [−I_m, 0]]` for `n = 2m`.
pub fn standard_symplectic_form(field: &Field, n: usize) -> Matrix {
    let m = n / 2;
    Matrix::from_fn(field, n, n, |i, j| {
        if j == i + m && i < m {
            FieldElement::one(field)
        } else if i == j + m && j < m {
            -&FieldElement::one(field)
        } else {
            FieldElement::zero(field)
        }
    })
}

/// Split symmetric form `[[0, I_m], [I_m, 0]]` (plus a trailing `1` when `n` is odd).
pub fn hyperbolic_form(field: &Field, n: usize) -> Matrix {
    let m = n / 2;
    Matrix::from_fn(field, n, n, |i, j| {
        let hit = (i < m && j == i + m)
            || (j < m && i == j + m)
            || (n % 2 == 1 && i == n - 1 && j == n - 1);
        if hit {
            FieldElement::one(field)
        } else {
            FieldElement::zero(field)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;

    fn q() -> Field {
        NumberField::rationals()
    }

    #[test]
    fn membership_examples() {
        let sp2 = GroupSpec::sp(Matrix::from_ints(&q(), &[vec![0, 1], vec![-1, 0]])).unwrap();
        assert!(sp2.contains(&Matrix::identity(&q(), 2)).unwrap());
        let so2 = GroupSpec::so_identity(&q(), 2);
        assert!(so2
            .contains(&Matrix::from_ints(&q(), &[vec![0, 1], vec![-1, 0]]))
            .unwrap());
        assert!(!so2
            .contains(&Matrix::from_ints(&q(), &[vec![0, 1], vec![1, 0]]))
            .unwrap());
        assert!(GroupSpec::o_identity(&q(), 2)
            .contains(&Matrix::from_ints(&q(), &[vec![0, 1], vec![1, 0]]))
            .unwrap());
        assert!(GroupSpec::sl(2)
            .lie_contains(&Matrix::from_ints(&q(), &[vec![1, 0], vec![0, -1]]))
            .unwrap());
        assert!(matches!(
            GroupSpec::sl(2).contains(&Matrix::identity(&q(), 3)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn lie_algebra_dimensions() {
        assert_eq!(
            GroupSpec::sp_standard(&q(), 4)
                .lie_algebra_basis(&q())
                .len(),
            10
        );
        assert_eq!(
            GroupSpec::so_identity(&q(), 4)
                .lie_algebra_basis(&q())
                .len(),
            6
        );
        assert_eq!(GroupSpec::sl(3).lie_algebra_basis(&q()).len(), 8);
        let prod = GroupSpec::Product(vec![GroupSpec::gl(1), GroupSpec::sl(2)]);
        assert_eq!(prod.lie_algebra_basis(&q()).len(), 4);
    }

    #[test]
    fn tensor_stabilizer_of_a_symplectic_form() {
        // the form e1*∧e2* as an element of Alt^2(V*)
        let t = Tensor {
            word: Word::alt(2, Word::Dual),
            entries: vec![FieldElement::one(&q())],
        };
        let g = GroupSpec::TensorStabilizer {
            n: 2,
            tensors: vec![t],
        };
        g.validate().unwrap();
        let m = Matrix::from_ints(&q(), &[vec![2, 1], vec![1, 1]]);
        assert!(g.contains(&m).unwrap());
        assert!(!g
            .contains(&Matrix::from_ints(&q(), &[vec![2, 0], vec![0, 1]]))
            .unwrap());
        assert_eq!(g.lie_algebra_basis(&q()).len(), 3);
    }
}
