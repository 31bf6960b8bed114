//! Truncated log connections with nilpotent residue and a compatible
//! Frobenius over `u ↦ u^p`, their fibers at `u = 0`, and the passage from
//! `(φ, N)`-modules to WD pairs.
//!
//! Conventions: in a basis `e`, `∂ = u·d/du` acts by `∂e = e·A(u)` and the
//! Frobenius by `φ(e) = e·Φ(u)`, semilinear for `u ↦ u^p`.  Expanding
//! `∂∘φ = p·φ∘∂` gives `u·Φ′(u) + A(u)·Φ(u) = p·Φ(u)·A(u^p)`.  Changing basis
//! to `e·G(u)` gives `A ↦ G⁻¹AG + G⁻¹·u·G′` and `Φ ↦ G⁻¹·Φ·G(u^p)`.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::field::rational::int;
use crate::field::{Field, FieldElement, NumberField};
use crate::groups::GroupSpec;
use crate::linalg::Matrix;
use crate::wd::{Report, WDPair};

/// A square matrix of polynomials in `u`, truncated modulo `u^T`, stored as
/// its coefficient matrices `C_0, …, C_{T−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMatrix {
    coeffs: Vec<Matrix>,
}

impl SeriesMatrix {
    pub fn new(coeffs: Vec<Matrix>) -> Result<SeriesMatrix> {
        let first = coeffs
            .first()
            .ok_or_else(|| Error::InvalidModule("truncation order must be positive".into()))?;
        let (n, field) = (first.rows(), first.field().clone());
        if coeffs.iter().any(|c| c.rows() != n || c.cols() != n) {
            return Err(Error::DimensionMismatch(
                "series coefficients must be square of one size".into(),
            ));
        }
        if coeffs.iter().any(|c| !NumberField::same(c.field(), &field)) {
            return Err(Error::FieldMismatch);
        }
        Ok(SeriesMatrix { coeffs })
    }

    /// The constant series `m`.
    pub fn constant(m: &Matrix, order: usize) -> SeriesMatrix {
        let mut coeffs = vec![Matrix::zeros(m.field(), m.rows(), m.cols()); order.max(1)];
        coeffs[0] = m.clone();
        SeriesMatrix { coeffs }
    }

    pub fn identity(field: &Field, n: usize, order: usize) -> SeriesMatrix {
        SeriesMatrix::constant(&Matrix::identity(field, n), order)
    }

    /// Truncates to, or pads with zeros up to, the order `t ≥ 1`.
    pub fn with_order(&self, t: usize) -> SeriesMatrix {
        let zero = Matrix::zeros(self.field(), self.dim(), self.dim());
        SeriesMatrix {
            coeffs: (0..t.max(1))
                .map(|k| self.coeffs.get(k).cloned().unwrap_or_else(|| zero.clone()))
                .collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn dim(&self) -> usize {
        self.coeffs[0].rows()
    }

    pub fn field(&self) -> &Field {
        self.coeffs[0].field()
    }

    pub fn coeff(&self, k: usize) -> &Matrix {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Matrix] {
        &self.coeffs
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    fn zero_like(&self) -> Matrix {
        Matrix::zeros(self.field(), self.dim(), self.dim())
    }

    pub fn add(&self, o: &SeriesMatrix) -> SeriesMatrix {
        SeriesMatrix {
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, o: &SeriesMatrix) -> SeriesMatrix {
        SeriesMatrix {
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Truncated product.
    pub fn mul(&self, o: &SeriesMatrix) -> SeriesMatrix {
        let t = self.order().min(o.order());
        let coeffs = (0..t)
            .map(|k| {
                let mut acc = self.zero_like();
                for i in 0..=k {
                    if !self.coeffs[i].is_zero() && !o.coeffs[k - i].is_zero() {
                        acc = &acc + &(&self.coeffs[i] * &o.coeffs[k - i]);
                    }
                }
                acc
            })
            .collect();
        SeriesMatrix { coeffs }
    }

    /// Truncated inverse; requires `C_0` invertible.
    pub fn inverse(&self) -> Result<SeriesMatrix> {
        let h0 = self.coeffs[0].inverse()?;
        let mut h = vec![h0.clone()];
        for k in 1..self.order() {
            let mut acc = self.zero_like();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc = &acc + &(&self.coeffs[i] * &h[k - i]);
                }
            }
            h.push(-&(&h0 * &acc));
        }
        Ok(SeriesMatrix { coeffs: h })
    }

    /// `u·d/du`.
    pub fn log_derivative(&self) -> SeriesMatrix {
        SeriesMatrix {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.scale_rational(&int(k as i64)))
                .collect(),
        }
    }

    /// Substitution `u ↦ u^p`, truncated.
    pub fn frobenius_pullback(&self, p: u64) -> SeriesMatrix {
        let mut coeffs = vec![self.zero_like(); self.order()];
        for (k, c) in self.coeffs.iter().enumerate() {
            let idx = k * p as usize;
            if idx < self.order() {
                coeffs[idx] = c.clone();
            }
        }
        SeriesMatrix { coeffs }
    }

    pub fn scale_rational(&self, r: &crate::field::Rational) -> SeriesMatrix {
        SeriesMatrix {
            coeffs: self.coeffs.iter().map(|c| c.scale_rational(r)).collect(),
        }
    }
}

/// A connection `u·d/du + A(u)` with a compatible Frobenius `Φ(u)`, modulo
/// `u^T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogModule {
    pub p: u64,
    pub a: SeriesMatrix,
    pub phi: SeriesMatrix,
}

/// Linear `(φ, N)`-module: `N·φ₀ = p·φ₀·N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiNModule {
    pub p: u64,
    pub phi0: Matrix,
    pub n: Matrix,
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

impl LogModule {
    pub fn new(p: u64, a: SeriesMatrix, phi: SeriesMatrix) -> LogModule {
        LogModule { p, a, phi }
    }

    pub fn order(&self) -> usize {
        self.a.order()
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// The same data modulo `u^t` (zero-padded when `t` exceeds the order).
    pub fn with_order(&self, t: usize) -> LogModule {
        LogModule {
            p: self.p,
            a: self.a.with_order(t),
            phi: self.phi.with_order(t),
        }
    }

    /// `u·Φ′ + A·Φ − p·Φ·A(u^p)`.
    pub fn compatibility_defect(&self) -> SeriesMatrix {
        let lhs = self.phi.log_derivative().add(&self.a.mul(&self.phi));
        let rhs = self
            .phi
            .mul(&self.a.frobenius_pullback(self.p))
            .scale_rational(&int(self.p as i64));
        lhs.sub(&rhs)
    }

    /// Lowest power of `u` at which the compatibility identity fails.
    pub fn first_incompatible_power(&self) -> Option<usize> {
        self.compatibility_defect()
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
    }

    /// The module in the basis `e·G(u)`.
    pub fn gauge(&self, g: &SeriesMatrix) -> Result<LogModule> {
        if g.order() != self.order() || g.dim() != self.dim() {
            return Err(Error::DimensionMismatch(
                "gauge has the wrong shape or order".into(),
            ));
        }
        let gi = g.inverse()?;
        let a = gi.mul(&self.a).mul(g).add(&gi.mul(&g.log_derivative()));
        let phi = gi.mul(&self.phi).mul(&g.frobenius_pullback(self.p));
        Ok(LogModule { p: self.p, a, phi })
    }
}

/// Reports shapes, primality of `p`, invertibility of `Φ(0)`, nilpotence of
/// the residue and the compatibility identity (naming the first failing
/// power of `u`).
pub fn validate_log_module(m: &LogModule) -> Report {
    let mut r = Report::default();
    let shapes = m.a.order() == m.phi.order()
        && m.a.dim() == m.phi.dim()
        && NumberField::same(m.a.field(), m.phi.field());
    r.push(
        "shapes",
        shapes,
        (!shapes).then(|| "A and Phi must share size, order and field".to_string()),
    );
    if !shapes {
        return r;
    }
    r.push(
        "p_prime",
        is_prime(m.p),
        (!is_prime(m.p)).then(|| format!("{} is not prime", m.p)),
    );
    let inv = !m.phi.coeff(0).det().is_zero();
    r.push("phi0_invertible", inv, None);
    let nil = m.a.coeff(0).is_nilpotent();
    r.push(
        "residue_nilpotent",
        nil,
        (!nil).then(|| "A(0) is not nilpotent".to_string()),
    );
    let bad = m.first_incompatible_power();
    r.push(
        "compatibility",
        bad.is_none(),
        bad.map(|k| format!("fails at power u^{k}")),
    );
    r
}

fn require_valid(m: &LogModule) -> Result<()> {
    let r = validate_log_module(m);
    if r.ok() {
        Ok(())
    } else {
        let msgs: Vec<String> = r
            .failures()
            .iter()
            .map(|c| {
                format!(
                    "{}{}",
                    c.name,
                    c.detail
                        .as_ref()
                        .map(|d| format!(" ({d})"))
                        .unwrap_or_default()
                )
            })
            .collect();
        Err(Error::InvalidModule(msgs.join(", ")))
    }
}

/// The fiber at `u = 0`: `(Φ(0), −A(0))`.
pub fn special_fiber(m: &LogModule) -> Result<PhiNModule> {
    require_valid(m)?;
    Ok(PhiNModule {
        p: m.p,
        phi0: m.phi.coeff(0).clone(),
        n: -m.a.coeff(0),
    })
}

/// Solves `(k + ad_{A₀})(X) = R`, i.e. `k·X + A₀X − XA₀ = R`.
fn solve_shifted_ad(a0: &Matrix, k: usize, rhs: &Matrix) -> Result<Matrix> {
    let field = a0.field();
    let n = a0.rows();
    let id = Matrix::identity(field, n);
    // vec(A₀X) = (A₀ ⊗ I) vec(X), vec(XA₀) = (I ⊗ A₀ᵀ) vec(X) in row-major order
    let op = &(&Matrix::scalar(field, n * n, &FieldElement::from_int(field, k as i64))
        + &a0.kron(&id))
        - &id.kron(&a0.transpose());
    let x = op.solve(rhs.entries()).ok_or(Error::SingularMatrix)?;
    Matrix::new(field, n, n, x)
}

/// A gauge `G = I + Σ G_k u^k` bringing the connection to the constant form
/// `A(0)`, and the module in that basis (whose Frobenius is then constant).
pub fn gauge_to_constant(m: &LogModule) -> Result<(SeriesMatrix, LogModule)> {
    require_valid(m)?;
    let field = m.a.field().clone();
    let n = m.dim();
    let a0 = m.a.coeff(0);
    let mut g = vec![Matrix::identity(&field, n)];
    for k in 1..m.order() {
        let mut rhs = Matrix::zeros(&field, n, n);
        for i in 1..=k {
            if !m.a.coeff(i).is_zero() {
                rhs = &rhs - &(m.a.coeff(i) * &g[k - i]);
            }
        }
        g.push(solve_shifted_ad(a0, k, &rhs)?);
    }
    let g = SeriesMatrix::new(g)?;
    let constant = m.gauge(&g)?;
    if !constant.a.is_constant() || !constant.phi.is_constant() {
        return Err(Error::InvalidModule(
            "gauge did not reach a constant form".into(),
        ));
    }
    Ok((g, constant))
}

/// Compares the fiber computed from the constant form (the lattice with
/// `N = −A(0)` and the transported `Φ(0)`) with the special fiber.
pub fn check_fiber_comparison(m: &LogModule) -> Result<Report> {
    let (g, constant) = gauge_to_constant(m)?;
    let fiber = special_fiber(m)?;
    let mut r = Report::default();
    r.push("gauge_normalized", g.coeff(0).is_identity(), None);
    r.push(
        "constant_form",
        constant.a.is_constant() && constant.phi.is_constant(),
        None,
    );
    r.push("monodromy_agrees", -constant.a.coeff(0) == fiber.n, None);
    r.push(
        "frobenius_agrees",
        *constant.phi.coeff(0) == fiber.phi0,
        None,
    );
    Ok(r)
}

impl PhiNModule {
    pub fn validate(&self) -> Report {
        let mut r = Report::default();
        let shapes =
            self.phi0.is_square() && self.n.rows() == self.phi0.rows() && self.n.is_square();
        r.push("shapes", shapes, None);
        if !shapes {
            return r;
        }
        r.push("p_prime", is_prime(self.p), None);
        r.push("phi0_invertible", !self.phi0.det().is_zero(), None);
        r.push("n_nilpotent", self.n.is_nilpotent(), None);
        let rel =
            &self.n * &self.phi0 == (&self.phi0 * &self.n).scale_rational(&int(self.p as i64));
        r.push("relation", rel, (!rel).then(|| "N·φ₀ ≠ p·φ₀·N".to_string()));
        r
    }

    pub fn conjugate(&self, g: &Matrix) -> Result<PhiNModule> {
        let gi = g.inverse()?;
        Ok(PhiNModule {
            p: self.p,
            phi0: &(g * &self.phi0) * &gi,
            n: &(g * &self.n) * &gi,
        })
    }
}

/// `(GL_n, φ₀^{−s_deg}, N, p^{s_deg})`.
pub fn wd_from_phi_n(d: &PhiNModule, s_deg: u32) -> Result<WDPair> {
    let r = d.validate();
    if !r.ok() {
        let names: Vec<&str> = r.failures().iter().map(|c| c.name).collect();
        return Err(Error::InvalidModule(names.join(", ")));
    }
    if s_deg == 0 {
        return Err(Error::InvalidModule("s_deg must be positive".into()));
    }
    let s = d.phi0.powi(-(s_deg as i64))?;
    let q = int(d
        .p
        .to_i64()
        .ok_or_else(|| Error::InvalidModule("p too large".into()))?
        .pow(s_deg));
    Ok(WDPair::new(GroupSpec::gl(d.phi0.rows()), s, d.n.clone(), q))
}
