//! Concrete anchor instances: the Tate-curve pair and a search for a pair of
//! homomorphisms `Z/4 × Z/4 → SO₆` that are element-conjugate but not
//! conjugate.

use std::fmt;

use serde_json::{json, Value};

use crate::conjugacy::finite::{
    element_conjugate_finite, finite_conjugate, verify_finite_certificate,
};
use crate::conjugacy::{Budget, Certificate, FiniteImagePair, GenWord, Verdict};
use crate::error::{Error, Result};
use crate::field::rational::int;
use crate::field::{Field, FieldElement, NumberField, DEFAULT_IRREDUCIBILITY_BOUND};
use crate::groups::{hyperbolic_form, GroupSpec};
use crate::io::{
    certificate_from_json, certificate_to_json, finite_pair_from_json, finite_pair_to_json,
    matrix_from_json, matrix_to_json,
};
use crate::linalg::{exp_nilpotent, Matrix};
use crate::monodromy::TamePresentation;
use crate::wd::{Report, WDPair};

/// `Q(i) = Q[x]/(x² + 1)`.
pub fn gaussian_rationals() -> Field {
    NumberField::new(
        vec![int(1), int(0), int(1)],
        None,
        DEFAULT_IRREDUCIBILITY_BOUND,
    )
    .expect("x^2 + 1 is irreducible")
}

/// `(GL₂, diag(1, q), E₂₁, q)`: Frobenius eigenvalues `1, q` and monodromy
/// mapping the `1`-line onto the `q`-line.
pub fn tate_pair(q: u64) -> Result<WDPair> {
    if q < 2 {
        return Err(Error::InvalidInput(format!(
            "residue size must be at least 2, got {q}"
        )));
    }
    let k = NumberField::rationals();
    Ok(WDPair::new(
        GroupSpec::gl(2),
        Matrix::from_ints(&k, &[vec![1, 0], vec![0, q as i64]]),
        Matrix::unit(&k, 2, 1, 0),
        int(q as i64),
    ))
}

/// The tame action on the Tate module: `σ = diag(1, q)` and the unipotent
/// inertia generator `γ = [[1, 0], [1, 1]]`.
pub fn tate_presentation(q: u64) -> Result<TamePresentation> {
    let p = tate_pair(q)?;
    Ok(TamePresentation {
        group: p.group.clone(),
        sigma: p.s.clone(),
        gamma: exp_nilpotent(&p.n)?,
        q: p.q,
    })
}

/// A character `Z/4 × Z/4 → μ₄`, `(x, y) ↦ i^(a·x + b·y)`.
pub type Character = (u8, u8);

fn negate(c: Character) -> Character {
    ((4 - c.0) % 4, (4 - c.1) % 4)
}

fn is_self_dual(c: Character) -> bool {
    negate(c) == c
}

/// Representatives of characters up to inversion, in lexicographic order.
fn characters_up_to_sign() -> Vec<Character> {
    let mut out = Vec::new();
    for a in 0..4u8 {
        for b in 0..4u8 {
            let c = (a, b);
            if c <= negate(c) {
                out.push(c);
            }
        }
    }
    out
}

/// Weight data of every `O₆`-class of diagonal homomorphisms: unordered
/// triples of characters up to inversion, in lexicographic order.
pub fn so6_candidates() -> Vec<[Character; 3]> {
    let cs = characters_up_to_sign();
    let mut out = Vec::new();
    for i in 0..cs.len() {
        for j in i..cs.len() {
            for k in j..cs.len() {
                out.push([cs[i], cs[j], cs[k]]);
            }
        }
    }
    out
}

/// The diagonal homomorphism with eigencharacters `χ₁, χ₂, χ₃, χ₁⁻¹, χ₂⁻¹, χ₃⁻¹`
/// into `SO₆` of the split form `[[0, I₃], [I₃, 0]]` over `Q(i)`.
pub fn diagonal_so6(field: &Field, chars: &[Character; 3]) -> FiniteImagePair {
    let i = FieldElement::generator(field);
    let power = |e: u8| i.pow(e as i64).expect("i is a unit");
    let generator = |pick: fn(Character) -> u8| {
        let mut d: Vec<FieldElement> = chars.iter().map(|&c| power(pick(c))).collect();
        d.extend(chars.iter().map(|&c| power(pick(negate(c)))));
        Matrix::diagonal(field, &d)
    };
    let relations: Vec<GenWord> = vec![
        vec![(0, 4)],
        vec![(1, 4)],
        vec![(0, 1), (1, 1), (0, -1), (1, -1)],
    ];
    FiniteImagePair {
        group: GroupSpec::SO {
            n: 6,
            form: hyperbolic_form(field, 6),
        },
        generators: vec![generator(|c| c.0), generator(|c| c.1)],
        relations,
    }
}

/// The orthogonal reflection exchanging the third hyperbolic pair
/// `e₃ ↔ e₆`; it has determinant −1.
pub fn so6_swap(field: &Field) -> Matrix {
    let perm = [0usize, 1, 5, 3, 4, 2];
    Matrix::from_fn(field, 6, 6, |r, c| {
        if perm[c] == r {
            FieldElement::one(field)
        } else {
            FieldElement::zero(field)
        }
    })
}

/// Limits of the counterexample search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct So6Budget {
    /// Maximum number of weight-data candidates examined.
    pub candidates: usize,
    /// Cap on enumerated group elements.
    pub elements: usize,
    /// Degree bound for the element-conjugacy check.
    pub degree: usize,
    pub search: Budget,
}

impl Default for So6Budget {
    fn default() -> Self {
        So6Budget {
            candidates: 220,
            elements: 64,
            degree: 2,
            search: Budget::default(),
        }
    }
}

/// An element-conjugate, non-conjugate pair with its certificates.
#[derive(Clone, Debug, PartialEq)]
pub struct So6Counterexample {
    /// Position of the weight data in [`so6_candidates`].
    pub candidate: usize,
    pub characters: [Character; 3],
    pub rho1: FiniteImagePair,
    pub rho2: FiniteImagePair,
    /// Orthogonal element of determinant −1 with `rho2 = g·rho1·g⁻¹`.
    pub swap: Matrix,
    /// Why `rho1` and `rho2` are not special-orthogonally conjugate.
    pub certificate: Certificate,
}

impl fmt::Display for So6Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self
            .characters
            .iter()
            .map(|(a, b)| format!("({a},{b})"))
            .collect();
        write!(
            f,
            "candidate {} with characters {}",
            self.candidate,
            cs.join(" ")
        )
    }
}

/// Cheap necessary condition for pointwise conjugacy of `ρ` and its
/// reflection: every element has an eigenvalue `±1`.
fn every_element_has_real_eigenvalue(chars: &[Character; 3]) -> bool {
    (0..4u8).all(|x| (0..4u8).all(|y| chars.iter().any(|&(a, b)| (a * x + b * y) % 2 == 0)))
}

/// Enumerates `O₆`-classes of diagonal homomorphisms `Z/4 × Z/4 → SO₆(Q(i))`
/// by weight data and returns the first `ρ` whose reflection `ρ′ = gρg⁻¹`
/// (`det g = −1`) is element-conjugate to `ρ` at the degree bound but not
/// `SO₆`-conjugate to it.
pub fn so6_counterexample_search(budget: &So6Budget) -> Result<So6Counterexample> {
    let field = gaussian_rationals();
    let swap = so6_swap(&field);
    for (candidate, chars) in so6_candidates()
        .into_iter()
        .enumerate()
        .take(budget.candidates)
    {
        if chars.iter().any(|&c| is_self_dual(c)) || !every_element_has_real_eigenvalue(&chars) {
            continue;
        }
        let rho1 = diagonal_so6(&field, &chars);
        let rho2 = rho1.conjugate(&swap)?;
        let Verdict::Inequivalent(certificate) =
            finite_conjugate(&rho1, &rho2, &budget.search, budget.elements)?
        else {
            continue;
        };
        if !element_conjugate_finite(&rho1, &rho2, budget.degree, budget.elements)?.0 {
            continue;
        }
        return Ok(So6Counterexample {
            candidate,
            characters: chars,
            rho1,
            rho2,
            swap,
            certificate,
        });
    }
    Err(Error::NotFound(format!(
        "no element-conjugate, non-conjugate pair among {} candidates",
        budget.candidates
    )))
}

/// Re-checks every claim about a counterexample from its data alone.
pub fn verify_so6_counterexample(
    c: &So6Counterexample,
    degree: usize,
    elements: usize,
) -> Result<Report> {
    let mut r = Report::default();
    r.push("rho1_valid", c.rho1.validate().is_ok(), None);
    r.push("rho2_valid", c.rho2.validate().is_ok(), None);
    let form = c
        .rho1
        .group
        .form()
        .ok_or_else(|| Error::InvalidInput("group has no form".into()))?;
    let o6 = GroupSpec::o(form.clone())?;
    let swap_ok = o6.contains(&c.swap)? && c.swap.det() == FieldElement::from_int(form.field(), -1);
    r.push("swap_orthogonal_det_minus_one", swap_ok, None);
    r.push(
        "rho2_is_swap_conjugate",
        c.rho1.conjugate(&c.swap)?.generators == c.rho2.generators,
        None,
    );
    let (pointwise, sep) = element_conjugate_finite(&c.rho1, &c.rho2, degree, elements)?;
    r.push(
        "element_conjugate",
        pointwise,
        sep.map(|s| format!("separated at element {:?}", s.element)),
    );
    r.push(
        "certificate_verifies",
        verify_finite_certificate(&c.rho1, &c.rho2, &c.certificate)?,
        None,
    );
    let identity = Matrix::identity(form.field(), 6);
    r.push(
        "rho1_self_conjugate",
        c.rho1.conjugate(&identity)?.generators == c.rho1.generators,
        None,
    );
    Ok(r)
}

pub fn counterexample_to_json(c: &So6Counterexample) -> Value {
    json!({
        "candidate": c.candidate,
        "characters": c.characters.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
        "rho1": finite_pair_to_json(&c.rho1),
        "rho2": finite_pair_to_json(&c.rho2),
        "swap": matrix_to_json(&c.swap),
        "certificate": certificate_to_json(&c.certificate),
    })
}

pub fn counterexample_from_json(v: &Value) -> Result<So6Counterexample> {
    let missing = |k: &str| Error::Parse(format!("$: missing field {k:?}"));
    let rho1 = finite_pair_from_json(v.get("rho1").ok_or_else(|| missing("rho1"))?)?;
    let rho2 = finite_pair_from_json(v.get("rho2").ok_or_else(|| missing("rho2"))?)?;
    let field = rho1
        .generators
        .first()
        .ok_or_else(|| Error::Parse("$.rho1.generators: empty".into()))?
        .field()
        .clone();
    let swap = matrix_from_json(
        &field,
        v.get("swap").ok_or_else(|| missing("swap"))?,
        "$.swap",
    )?;
    let certificate = certificate_from_json(
        &field,
        v.get("certificate").ok_or_else(|| missing("certificate"))?,
        "$.certificate",
    )?;
    let candidate = v
        .get("candidate")
        .and_then(Value::as_u64)
        .ok_or_else(|| missing("candidate"))? as usize;
    let chars: Vec<Character> = v
        .get("characters")
        .and_then(Value::as_array)
        .ok_or_else(|| missing("characters"))?
        .iter()
        .map(|c| {
            let ab = c
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::Parse("$.characters: expected [a, b]".into()))?;
            let get = |x: &Value| {
                x.as_u64()
                    .filter(|&v| v < 4)
                    .map(|v| v as u8)
                    .ok_or_else(|| Error::Parse("$.characters: entries must be in 0..4".into()))
            };
            Ok((get(&ab[0])?, get(&ab[1])?))
        })
        .collect::<Result<_>>()?;
    let characters: [Character; 3] = chars
        .try_into()
        .map_err(|_| Error::Parse("$.characters: expected three characters".into()))?;
    Ok(So6Counterexample {
        candidate,
        characters,
        rho1,
        rho2,
        swap,
        certificate,
    })
}
