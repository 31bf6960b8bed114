//! Equivalence deciders for WD pairs: the canonical `GL_n` invariant, the
//! staged `G`-conjugacy procedure, element-conjugacy and field-of-definition
//! checks.

pub mod chain;
pub mod finite;
pub mod forms;
pub mod structure;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};
use crate::groups::{build_rep, rep_family, GroupSpec, Word};
use crate::linalg::Matrix;
use crate::sl2::{graded_triple, imai_decompose};
use crate::wd::{is_urfs, pushforward, verifies_witness, WDPair};

pub use chain::{chain_invariant, split_spectrum, Chain, ChainInvariant};
pub use finite::{FiniteImagePair, GenWord};
pub use structure::{conjugate_structures, Structure, StructureOutcome};

/// Search limits for the budgeted deciders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Degree bound for the representation family.
    pub degree: usize,
    /// Number of trial points in generic intertwiner searches.
    pub trials: usize,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            degree: 3,
            trials: 200,
            seed: 0,
        }
    }
}

/// Why two objects are not conjugate; every variant can be re-checked.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    /// Pushforwards along `rep` have different chain invariants.
    ChainInvariants {
        rep: Word,
        left: ChainInvariant,
        right: ChainInvariant,
    },
    /// `rep(s′)` has different characteristic polynomials.
    SemisimpleCharpoly {
        rep: Word,
        left: Vec<FieldElement>,
        right: Vec<FieldElement>,
    },
    /// The (eigenvalue, block length) multiplicities of `s` together with an
    /// sl₂-triple through `N` differ.
    Multiplicities(String),
    /// Orthogonal intertwiners exist, all of determinant −1, and the
    /// orthogonal centralizer lies in the special orthogonal group.
    Determinant { o_witness: Matrix },
    /// `Pf(B·X)` with `X = Σ c·(ρ(γ) − ρ(γ)⁻¹)` differs; it is invariant
    /// under special orthogonal conjugation.
    Pfaffian {
        terms: Vec<(Vec<usize>, i64)>,
        left: FieldElement,
        right: FieldElement,
    },
}

/// Three-valued outcome of a conjugacy decision.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Equivalent(Matrix),
    Inequivalent(Certificate),
    Unknown(String),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Equivalent(_) => "equivalent",
            Verdict::Inequivalent(_) => "inequivalent",
            Verdict::Unknown(_) => "unknown",
        }
    }

    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent(_))
    }

    pub fn is_inequivalent(&self) -> bool {
        matches!(self, Verdict::Inequivalent(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }

    pub fn witness(&self) -> Option<&Matrix> {
        match self {
            Verdict::Equivalent(w) => Some(w),
            _ => None,
        }
    }
}

fn check_comparable(p1: &WDPair, p2: &WDPair, same_group: bool) -> Result<()> {
    if p1.dim() != p2.dim() {
        return Err(Error::DimensionMismatch(
            "pairs have different sizes".into(),
        ));
    }
    if p1.q != p2.q {
        return Err(Error::InvalidInput("pairs have different q".into()));
    }
    if !NumberField::same(p1.field(), p2.field()) {
        return Err(Error::FieldMismatch);
    }
    if same_group && p1.group != p2.group {
        return Err(Error::InvalidInput("pairs live in different groups".into()));
    }
    if !is_urfs(p1) || !is_urfs(p2) {
        return Err(Error::NotUrfs);
    }
    Ok(())
}

/// `(s, sl₂-triple graded by s)` inside `Lie(g)`.
fn wd_structure(p: &WDPair, g: &GroupSpec) -> Result<Structure> {
    let kappa = FieldElement::from_rational(p.field(), p.q.recip());
    let triple = graded_triple(&p.n, g, Some((&p.s, &kappa)))?;
    Ok(Structure {
        semisimple: vec![(p.s.clone(), kappa)],
        triple,
    })
}

fn with_group(p: &WDPair, g: GroupSpec) -> WDPair {
    WDPair {
        group: g,
        ..p.clone()
    }
}

/// `GL_n`-conjugacy of two URFS pairs, decided by the chain invariant, with
/// an explicit witness when equivalent.
pub fn gl_equivalent(p1: &WDPair, p2: &WDPair) -> Result<Verdict> {
    check_comparable(p1, p2, false)?;
    let i1 = chain_invariant(p1)?;
    let i2 = chain_invariant(p2)?;
    if i1 != i2 {
        return Ok(Verdict::Inequivalent(Certificate::ChainInvariants {
            rep: Word::Std,
            left: i1,
            right: i2,
        }));
    }
    let gl = GroupSpec::gl(p1.dim());
    let a = wd_structure(p1, &gl)?;
    let b = wd_structure(p2, &gl)?;
    Ok(match conjugate_structures(&gl, &a, &b)? {
        StructureOutcome::Witness(w)
            if verifies_witness(&with_group(p1, gl.clone()), &with_group(p2, gl), &w) =>
        {
            Verdict::Equivalent(w)
        }
        other => Verdict::Unknown(format!(
            "invariants agree but witness construction failed: {other:?}"
        )),
    })
}

/// Basis of `{X : X·Aᵢ = Bᵢ·X for all i}`.
pub fn intertwiner_space(pairs: &[(&Matrix, &Matrix)]) -> Vec<Matrix> {
    let Some((a0, _)) = pairs.first() else {
        return Vec::new();
    };
    let field = a0.field().clone();
    let n = a0.rows();
    let vars = n * n;
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    for (a, b) in pairs {
        for i in 0..n {
            for j in 0..n {
                // (XA)_{ij} - (BX)_{ij}
                let mut row = vec![FieldElement::zero(&field); vars];
                for l in 0..n {
                    let al = a.get(l, j);
                    if !al.is_zero() {
                        row[i * n + l] = &row[i * n + l] + al;
                    }
                    let bl = b.get(i, l);
                    if !bl.is_zero() {
                        row[l * n + j] = &row[l * n + j] - bl;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..vars)
            .map(|k| {
                (0..vars)
                    .map(|l| FieldElement::from_int(&field, (k == l) as i64))
                    .collect()
            })
            .collect()
    } else {
        Matrix::from_rows(&field, rows)
            .expect("rectangular")
            .kernel()
    };
    kernel
        .into_iter()
        .map(|v| Matrix::new(&field, n, n, v).expect("square"))
        .collect()
}

/// Scans the intertwiner space for a group element: first the sum of the
/// basis, then seeded integer combinations with coefficients in `−3..=3`.
pub fn search_group_intertwiner(
    g: &GroupSpec,
    pairs: &[(&Matrix, &Matrix)],
    budget: &Budget,
) -> Result<Option<Matrix>> {
    let basis = intertwiner_space(pairs);
    if basis.is_empty() {
        return Ok(None);
    }
    let field = basis[0].field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for t in 0..budget.trials.max(1) {
        let mut x = Matrix::zeros(&field, basis[0].rows(), basis[0].cols());
        for b in &basis {
            let c = if t == 0 { 1 } else { rng.gen_range(-3..=3) };
            if c != 0 {
                x = &x + &b.scale(&FieldElement::from_int(&field, c));
            }
        }
        if !x.det().is_zero() && g.contains(&x)? {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// `G`-conjugacy of two URFS pairs: chain-invariant refutation, Imai
/// decomposition, comparison of `s′` across a representation family, then an
/// exact intertwiner construction.
pub fn g_equivalent(p1: &WDPair, p2: &WDPair, budget: &Budget) -> Result<Verdict> {
    check_comparable(p1, p2, true)?;
    let g = &p1.group;
    if g.is_gl() {
        return gl_equivalent(p1, p2);
    }
    let i1 = chain_invariant(p1)?;
    let i2 = chain_invariant(p2)?;
    if i1 != i2 {
        return Ok(Verdict::Inequivalent(Certificate::ChainInvariants {
            rep: Word::Std,
            left: i1,
            right: i2,
        }));
    }
    let d1 = imai_decompose(p1)?;
    let d2 = imai_decompose(p2)?;
    let (e1, e2) = (diagonal_model(&d1.s_prime), diagonal_model(&d2.s_prime));
    for r in rep_family(g, budget.degree) {
        let c1 = rep_charpoly(&r, &d1.s_prime, e1.as_ref())?;
        let c2 = rep_charpoly(&r, &d2.s_prime, e2.as_ref())?;
        if c1 != c2 {
            return Ok(Verdict::Inequivalent(Certificate::SemisimpleCharpoly {
                rep: r.word().clone(),
                left: c1,
                right: c2,
            }));
        }
    }
    let a = wd_structure(p1, g)?;
    let b = wd_structure(p2, g)?;
    let reason = match conjugate_structures(g, &a, &b)? {
        StructureOutcome::Witness(w) if verifies_witness(p1, p2, &w) => {
            return Ok(Verdict::Equivalent(w))
        }
        StructureOutcome::Witness(_) => "constructed witness failed verification".to_string(),
        StructureOutcome::Mismatch(m) => {
            return Ok(Verdict::Inequivalent(Certificate::Multiplicities(m)))
        }
        StructureOutcome::DetObstruction { o_witness } => {
            return Ok(Verdict::Inequivalent(Certificate::Determinant {
                o_witness,
            }))
        }
        StructureOutcome::Unresolved(m) => m,
    };
    let pairs = [
        (&a.semisimple[0].0, &b.semisimple[0].0),
        (&a.triple.e, &b.triple.e),
        (&a.triple.h, &b.triple.h),
        (&a.triple.f, &b.triple.f),
    ];
    if let Some(w) = search_group_intertwiner(g, &pairs, budget)? {
        if verifies_witness(p1, p2, &w) {
            return Ok(Verdict::Equivalent(w));
        }
    }
    Ok(Verdict::Unknown(format!(
        "{reason}; {} trial points exhausted",
        budget.trials
    )))
}

/// The diagonal matrix of eigenvalues of a semisimple matrix whose spectrum
/// splits over its field.
fn diagonal_model(m: &Matrix) -> Option<Matrix> {
    if !crate::linalg::is_semisimple(m) {
        return None;
    }
    let roots = crate::linalg::roots_in_field(&m.charpoly());
    (roots.len() == m.rows()).then(|| Matrix::diagonal(m.field(), &roots))
}

/// Characteristic polynomial of `r(m)`; with a diagonal model of `m` (same
/// conjugacy class), `r` of it is diagonal and the polynomial is a product
/// of linear factors.
fn rep_charpoly(
    r: &crate::groups::Rep,
    m: &Matrix,
    diagonal: Option<&Matrix>,
) -> Result<Vec<FieldElement>> {
    let Some(d) = diagonal else {
        return Ok(r.group_action(m)?.charpoly().coeffs().to_vec());
    };
    let rd = r.group_action(d)?;
    let mut poly = crate::linalg::KPoly::one(m.field());
    for i in 0..rd.rows() {
        poly = &poly * &crate::linalg::KPoly::linear(rd.get(i, i));
    }
    Ok(poly.coeffs().to_vec())
}

/// Re-checks an inequivalence certificate for two WD pairs from scratch.
pub fn verify_certificate(
    p1: &WDPair,
    p2: &WDPair,
    cert: &Certificate,
    budget: &Budget,
) -> Result<bool> {
    Ok(match cert {
        Certificate::ChainInvariants { rep, left, right } => {
            let r = build_rep(&p1.group, rep, budget.degree.max(rep.degree()))?;
            let l = chain_invariant(&pushforward(p1, &r)?)?;
            let rr = chain_invariant(&pushforward(p2, &r)?)?;
            &l == left && &rr == right && l != rr
        }
        Certificate::SemisimpleCharpoly { rep, left, right } => {
            let r = build_rep(&p1.group, rep, budget.degree.max(rep.degree()))?;
            let l = rep_charpoly(&r, &imai_decompose(p1)?.s_prime, None)?;
            let rr = rep_charpoly(&r, &imai_decompose(p2)?.s_prime, None)?;
            &l == left && &rr == right && l != rr
        }
        Certificate::Multiplicities(_) => {
            let (a, b) = (wd_structure(p1, &p1.group)?, wd_structure(p2, &p2.group)?);
            matches!(
                conjugate_structures(&p1.group, &a, &b)?,
                StructureOutcome::Mismatch(_)
            )
        }
        Certificate::Determinant { o_witness } => {
            let GroupSpec::SO { form, .. } = &p1.group else {
                return Ok(false);
            };
            let o = GroupSpec::o(form.clone())?;
            let (a, b) = (wd_structure(p1, &p1.group)?, wd_structure(p2, &p2.group)?);
            verifies_witness(&with_group(p1, o.clone()), &with_group(p2, o), o_witness)
                && o_witness.det() == FieldElement::from_int(p1.field(), -1)
                && matches!(
                    conjugate_structures(&p1.group, &a, &b)?,
                    StructureOutcome::DetObstruction { .. }
                )
        }
        Certificate::Pfaffian { .. } => false,
    })
}

/// Whether all pushforwards along the representation family are
/// `GL`-equivalent; returns the first separating representation otherwise.
pub fn element_conjugate(
    p1: &WDPair,
    p2: &WDPair,
    degree_bound: usize,
) -> Result<(bool, Option<Word>)> {
    check_comparable(p1, p2, true)?;
    for r in rep_family(&p1.group, degree_bound) {
        let a = chain_invariant(&pushforward(p1, &r)?)?;
        let b = chain_invariant(&pushforward(p2, &r)?)?;
        if a != b {
            return Ok((false, Some(r.word().clone())));
        }
    }
    Ok((true, None))
}

/// Outcome of a field-of-definition check.
#[derive(Clone, Debug, PartialEq)]
pub enum Rationality {
    Defined,
    /// The class moves under the automorphism with this index.
    NotDefined {
        automorphism: usize,
    },
    Inconclusive(String),
}

/// Whether the class of `p` is fixed by each automorphism of the field, given
/// as images of the generator.
pub fn class_defined_over(
    p: &WDPair,
    automorphisms: &[FieldElement],
    budget: &Budget,
) -> Result<Rationality> {
    if !is_urfs(p) {
        return Err(Error::NotUrfs);
    }
    let gl_type = p.group.is_gl();
    let base = if gl_type {
        Some(chain_invariant(p)?)
    } else {
        None
    };
    let mut inconclusive = None;
    for (k, image) in automorphisms.iter().enumerate() {
        if !NumberField::same(image.field(), p.field()) {
            return Err(Error::FieldMismatch);
        }
        let sigma = |e: &FieldElement| e.map_generator(image);
        if let Some(inv) = &base {
            if inv.map_eigenvalues(sigma) != *inv {
                return Ok(Rationality::NotDefined { automorphism: k });
            }
            continue;
        }
        let moved = p.map_entries(&sigma);
        match g_equivalent(p, &moved, budget)? {
            Verdict::Equivalent(_) => {}
            Verdict::Inequivalent(_) => return Ok(Rationality::NotDefined { automorphism: k }),
            Verdict::Unknown(m) => inconclusive = Some(m),
        }
    }
    Ok(match inconclusive {
        Some(m) => Rationality::Inconclusive(m),
        None => Rationality::Defined,
    })
}
