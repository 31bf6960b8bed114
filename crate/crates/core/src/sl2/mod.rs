//! Jacobson–Morozov sl₂-triples and the decomposition of a URFS pair into an
//! sl₂-part and a commuting semisimple part.

pub mod jordan;

use crate::conjugacy::structure::{conjugate_structures, Structure, StructureOutcome};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::groups::GroupSpec;
use crate::linalg::decompose::power_by_grading;
use crate::linalg::{adjoin_sqrt, Matrix, SqrtExtension};
use crate::wd::{is_urfs, WDPair};

pub use jordan::{jordan_chains, nilpotent_partition};

/// Matrices `(E, H, F)` with `[H,E] = 2E`, `[H,F] = −2F`, `[E,F] = H`.
#[derive(Clone, Debug, PartialEq)]
pub struct SL2Triple {
    pub e: Matrix,
    pub h: Matrix,
    pub f: Matrix,
}

impl SL2Triple {
    pub fn zero(field: &Field, n: usize) -> SL2Triple {
        let z = Matrix::zeros(field, n, n);
        SL2Triple {
            e: z.clone(),
            h: z.clone(),
            f: z,
        }
    }

    /// Exact check of the three bracket relations.
    pub fn satisfies_relations(&self) -> bool {
        self.h.bracket(&self.e) == self.e.scale_rational(&crate::field::rational::int(2))
            && self.h.bracket(&self.f) == self.f.scale_rational(&crate::field::rational::int(-2))
            && self.e.bracket(&self.f) == self.h
    }

    pub fn map(&self, f: impl Fn(&Matrix) -> Matrix) -> SL2Triple {
        SL2Triple {
            e: f(&self.e),
            h: f(&self.h),
            f: f(&self.f),
        }
    }

    /// Conjugate by `g`.
    pub fn conjugate(&self, g: &Matrix) -> Result<SL2Triple> {
        let gi = g.inverse()?;
        Ok(self.map(|m| &(g * m) * &gi))
    }
}

/// An sl₂-triple through the nilpotent `n` inside `Lie(g)`.
pub fn jacobson_morozov(n: &Matrix, g: &GroupSpec) -> Result<SL2Triple> {
    if !n.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    if !g.lie_contains(n)? {
        return Err(Error::InvalidInput(
            "nilpotent is not in the Lie algebra".into(),
        ));
    }
    if n.is_zero() {
        return Ok(SL2Triple::zero(n.field(), n.rows()));
    }
    match g {
        GroupSpec::GL { .. } | GroupSpec::SL { .. } => Ok(triple_from_jordan_basis(n)),
        _ => graded_triple(n, g, None),
    }
}

/// The triple attached to a Jordan basis: on a chain `w_j = N^j v` of length
/// `m`, `H w_j = (2j − m + 1) w_j` and `F w_j = j(m − j) w_{j−1}`.
pub fn triple_from_jordan_basis(n: &Matrix) -> SL2Triple {
    let field = n.field();
    let dim = n.rows();
    let chains = jordan_chains(n);
    let mut cols = Vec::with_capacity(dim);
    let mut weights = Vec::with_capacity(dim);
    let mut f_entries = Vec::new();
    for chain in &chains {
        let m = chain.len() as i64;
        let base = cols.len();
        for (j, w) in chain.iter().enumerate() {
            cols.push(w.clone());
            weights.push(FieldElement::from_int(field, 2 * j as i64 - m + 1));
            if j > 0 {
                let j = j as i64;
                f_entries.push((base + j as usize - 1, base + j as usize, j * (m - j)));
            }
        }
    }
    let p = Matrix::from_columns(field, dim, &cols);
    let pi = p.inverse().expect("Jordan basis");
    let h = &(&p * &Matrix::diagonal(field, &weights)) * &pi;
    let mut fs = Matrix::zeros(field, dim, dim);
    for (r, c, v) in f_entries {
        fs.set(r, c, FieldElement::from_int(field, v));
    }
    let f = &(&p * &fs) * &pi;
    SL2Triple { e: n.clone(), h, f }
}

/// Solves `A·c = b` for coefficient vectors over a basis, returning the
/// combination `Σ cᵢ basisᵢ`.
fn solve_in_span(
    field: &Field,
    basis: &[Matrix],
    maps: &[Vec<FieldElement>],
    rhs: &[FieldElement],
) -> Option<Matrix> {
    let rows = rhs.len();
    let a = Matrix::from_fn(field, rows, basis.len(), |i, j| maps[j][i].clone());
    let c = a.solve(rhs)?;
    let n = basis[0].rows();
    let mut out = Matrix::zeros(field, n, n);
    for (ci, b) in c.iter().zip(basis) {
        if !ci.is_zero() {
            out = &out + &b.scale(ci);
        }
    }
    Some(out)
}

/// Triple through `n` inside `Lie(g)`; with a grading constraint `(s, κ)`
/// (meaning `s·N·s⁻¹ = κ⁻¹·N`), `F` is taken in the `κ`-eigenspace of
/// `Ad(s)` so that `H` commutes with `s`.
pub fn graded_triple(
    n: &Matrix,
    g: &GroupSpec,
    grading: Option<(&Matrix, &FieldElement)>,
) -> Result<SL2Triple> {
    let field = n.field().clone();
    let dim = n.rows();
    if n.is_zero() {
        return Ok(SL2Triple::zero(&field, dim));
    }
    let mut basis = g.lie_algebra_basis(&field);
    if let Some((s, kappa)) = grading {
        // restrict to {X : s X = κ X s}
        let conds: Vec<Vec<FieldElement>> = basis
            .iter()
            .map(|b| (&(s * b) - &(b * s).scale(kappa)).entries().to_vec())
            .collect();
        let a = Matrix::from_fn(&field, dim * dim, basis.len(), |i, j| conds[j][i].clone());
        basis = a
            .kernel()
            .into_iter()
            .map(|c| {
                let mut out = Matrix::zeros(&field, dim, dim);
                for (ci, b) in c.iter().zip(&basis) {
                    if !ci.is_zero() {
                        out = &out + &b.scale(ci);
                    }
                }
                out
            })
            .collect();
    }
    if basis.is_empty() {
        return Err(Error::NotFound(
            "no graded complement for the nilpotent".into(),
        ));
    }
    // [N, [N, Z]] = -2N
    let maps: Vec<Vec<FieldElement>> = basis
        .iter()
        .map(|b| n.bracket(&n.bracket(b)).entries().to_vec())
        .collect();
    let rhs = n
        .scale_rational(&crate::field::rational::int(-2))
        .entries()
        .to_vec();
    let z = solve_in_span(&field, &basis, &maps, &rhs)
        .ok_or_else(|| Error::NotFound("Jacobson–Morozov system has no solution".into()))?;
    let h = n.bracket(&z);
    let f0 = z;
    // Y = [H, F0] + 2 F0 lies in the centralizer of N; solve (ad H + 2) C = Y
    // with [N, C] = 0 and C in the same span.
    let y = &h.bracket(&f0) + &f0.scale_rational(&crate::field::rational::int(2));
    let two = FieldElement::from_int(&field, 2);
    let maps: Vec<Vec<FieldElement>> = basis
        .iter()
        .map(|b| {
            let mut v = (&h.bracket(b) + &b.scale(&two)).entries().to_vec();
            v.extend(n.bracket(b).entries().iter().cloned());
            v
        })
        .collect();
    let mut rhs = y.entries().to_vec();
    rhs.extend(std::iter::repeat_n(FieldElement::zero(&field), dim * dim));
    let c = solve_in_span(&field, &basis, &maps, &rhs)
        .ok_or_else(|| Error::NotFound("sl2 correction system has no solution".into()))?;
    let f = &f0 - &c;
    let t = SL2Triple { e: n.clone(), h, f };
    debug_assert!(t.satisfies_relations());
    Ok(t)
}

/// Decomposition of a URFS pair: `s = t^H · s′⁻¹` with `t² = q` and `s′`
/// centralizing the triple.
#[derive(Clone, Debug)]
pub struct ImaiData {
    /// Triple with `E = N` and `H` commuting with `s` (over the working field).
    pub triple: SL2Triple,
    /// `t^H · s⁻¹`, over the field containing `t`.
    pub s_prime: Matrix,
    /// The chosen square root `t` of `q`.
    pub sqrt_q: FieldElement,
    /// The field holding `t` and the map into it.
    pub extension: SqrtExtension,
}

impl ImaiData {
    /// The triple transported into the field containing `t`.
    pub fn triple_extended(&self) -> SL2Triple {
        self.triple.map(|m| self.extension.embed_matrix(m))
    }

    /// `t^H · s′⁻¹`, which recovers `s` (over the extension field).
    pub fn reconstruct_s(&self) -> Result<Matrix> {
        let h = self.extension.embed_matrix(&self.triple.h);
        Ok(&power_by_grading(&h, &self.sqrt_q)? * &self.s_prime.inverse()?)
    }

    /// Whether `s′` commutes with all three triple elements.
    pub fn commutes(&self) -> bool {
        let t = self.triple_extended();
        [&t.e, &t.h, &t.f]
            .iter()
            .all(|m| self.s_prime.bracket(m).is_zero())
    }
}

/// Splits a URFS pair into a graded triple through `N` and `s′ = t^H·s⁻¹`.
pub fn imai_decompose(p: &WDPair) -> Result<ImaiData> {
    if !is_urfs(p) {
        return Err(Error::NotUrfs);
    }
    let field = p.field().clone();
    let kappa = FieldElement::from_rational(&field, p.q.recip());
    let triple = graded_triple(&p.n, &p.group, Some((&p.s, &kappa)))?;
    let extension = adjoin_sqrt(&field, &p.q)?;
    let h = extension.embed_matrix(&triple.h);
    let s = extension.embed_matrix(&p.s);
    let t = extension.sqrt.clone();
    let s_prime = &power_by_grading(&h, &t)? * &s.inverse()?;
    Ok(ImaiData {
        triple,
        s_prime,
        sqrt_q: t,
        extension,
    })
}

/// Outcome of comparing two triples inside the centralizer of `s′`.
#[derive(Clone, Debug)]
pub enum TripleVerdict {
    Conjugate(Matrix),
    NotConjugate(String),
    Unknown(String),
}

/// Whether two triples commuting with `s_prime` are conjugate by an element
/// of `g` centralizing `s_prime`.
pub fn triples_conjugate_in(
    g: &GroupSpec,
    s_prime: &Matrix,
    t1: &SL2Triple,
    t2: &SL2Triple,
) -> Result<TripleVerdict> {
    let one = FieldElement::one(s_prime.field());
    if let Some(msg) = h_spectrum_mismatch(s_prime, &t1.h, &t2.h) {
        return Ok(TripleVerdict::NotConjugate(msg));
    }
    let a = Structure {
        semisimple: vec![(s_prime.clone(), one.clone())],
        triple: t1.clone(),
    };
    let b = Structure {
        semisimple: vec![(s_prime.clone(), one)],
        triple: t2.clone(),
    };
    Ok(match conjugate_structures(g, &a, &b)? {
        StructureOutcome::Witness(w) => TripleVerdict::Conjugate(w),
        StructureOutcome::Mismatch(m) => TripleVerdict::NotConjugate(m),
        StructureOutcome::DetObstruction { .. } => TripleVerdict::NotConjugate(
            "only determinant −1 isometries intertwine the triples".into(),
        ),
        StructureOutcome::Unresolved(m) => TripleVerdict::Unknown(m),
    })
}

/// Compares the characteristic polynomials of `s′` on the `H = k` eigenspaces.
fn h_spectrum_mismatch(s_prime: &Matrix, h1: &Matrix, h2: &Matrix) -> Option<String> {
    let field = s_prime.field();
    let n = s_prime.rows();
    for k in -(n as i64)..=(n as i64) {
        let kk = Matrix::scalar(field, n, &FieldElement::from_int(field, k));
        let c1 = restricted_charpoly(s_prime, &(h1 - &kk).kernel());
        let c2 = restricted_charpoly(s_prime, &(h2 - &kk).kernel());
        if c1 != c2 {
            return Some(format!("H = {k} eigenspaces carry different s′ spectra"));
        }
    }
    None
}

/// Characteristic polynomial of `m` restricted to an invariant subspace.
pub fn restricted_charpoly(m: &Matrix, basis: &[Vec<FieldElement>]) -> Vec<FieldElement> {
    let field = m.field();
    if basis.is_empty() {
        return vec![FieldElement::one(field)];
    }
    let n = m.rows();
    let b = Matrix::from_columns(field, n, basis);
    let k = basis.len();
    let cols: Vec<Vec<FieldElement>> = basis
        .iter()
        .map(|v| b.solve(&m.mul_vec(v)).expect("invariant subspace"))
        .collect();
    Matrix::from_columns(field, k, &cols)
        .charpoly()
        .coeffs()
        .to_vec()
}
