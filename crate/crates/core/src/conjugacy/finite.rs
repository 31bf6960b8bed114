//! Homomorphisms from a finite group, given by generator images, and their
//! conjugacy / element-conjugacy tests.

use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};
use crate::groups::{rep_family, GroupSpec, Word};
use crate::linalg::Matrix;

use super::forms::pfaffian;
use super::structure::{conjugate_structures, Structure, StructureOutcome};
use super::{search_group_intertwiner, Budget, Certificate, Verdict};
use crate::sl2::SL2Triple;

/// A word in the generators: `(index, exponent)` factors, left to right.
pub type GenWord = Vec<(usize, i64)>;

/// Images of the generators of a finite group, with defining relations.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteImagePair {
    pub group: GroupSpec,
    pub generators: Vec<Matrix>,
    pub relations: Vec<GenWord>,
}

impl FiniteImagePair {
    pub fn eval(&self, w: &GenWord) -> Result<Matrix> {
        let field = self
            .generators
            .first()
            .ok_or_else(|| Error::InvalidInput("no generators".into()))?
            .field();
        let mut m = Matrix::identity(field, self.group.n());
        for &(i, e) in w {
            let g = self
                .generators
                .get(i)
                .ok_or_else(|| Error::InvalidInput(format!("no generator {i}")))?;
            m = &m * &g.powi(e)?;
        }
        Ok(m)
    }

    /// Checks that every relation evaluates to the identity and every
    /// generator lies in the group.
    pub fn validate(&self) -> Result<()> {
        for g in &self.generators {
            if g.rows() != self.group.n() || !self.group.contains(g)? {
                return Err(Error::NotInGroup);
            }
        }
        for r in &self.relations {
            if !self.eval(r)?.is_identity() {
                return Err(Error::InvalidInput(
                    "relation does not evaluate to the identity".into(),
                ));
            }
        }
        Ok(())
    }

    /// Conjugate every generator by `g`.
    pub fn conjugate(&self, g: &Matrix) -> Result<FiniteImagePair> {
        let gi = g.inverse()?;
        Ok(FiniteImagePair {
            group: self.group.clone(),
            generators: self.generators.iter().map(|x| &(g * x) * &gi).collect(),
            relations: self.relations.clone(),
        })
    }

    fn commuting(&self) -> bool {
        let gs = &self.generators;
        (0..gs.len()).all(|i| (i + 1..gs.len()).all(|j| (&gs[i] * &gs[j]) == (&gs[j] * &gs[i])))
    }
}

/// Group elements of the joint image, as words (generator indices), found by
/// breadth-first search; `cap` bounds the enumeration.
pub fn joint_elements(
    r1: &FiniteImagePair,
    r2: &FiniteImagePair,
    cap: usize,
) -> Result<Vec<(Vec<usize>, Matrix, Matrix)>> {
    let field = r1.generators[0].field().clone();
    let n = r1.group.n();
    let id = Matrix::identity(&field, n);
    let mut seen: HashMap<(Matrix, Matrix), usize> = HashMap::new();
    let mut out = vec![(Vec::new(), id.clone(), id.clone())];
    seen.insert((id.clone(), id), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for (i, (g1, g2)) in r1.generators.iter().zip(&r2.generators).enumerate() {
            let m1 = &out[k].1 * g1;
            let m2 = &out[k].2 * g2;
            let key = (m1.clone(), m2.clone());
            if seen.contains_key(&key) {
                continue;
            }
            if out.len() >= cap {
                return Err(Error::BudgetExhausted(format!(
                    "group image exceeds {cap} elements"
                )));
            }
            let mut w = out[k].0.clone();
            w.push(i);
            seen.insert(key, out.len());
            queue.push_back(out.len());
            out.push((w, m1, m2));
        }
    }
    Ok(out)
}

/// Where two finite-image homomorphisms were told apart pointwise.
#[derive(Clone, Debug, PartialEq)]
pub struct Separation {
    pub element: Vec<usize>,
    /// Separating representation; `None` means the Pfaffian test on the
    /// standard representation.
    pub rep: Option<Word>,
}

fn so_even_form(g: &GroupSpec) -> Option<&Matrix> {
    match g {
        GroupSpec::SO { n, form } if n % 2 == 0 => Some(form),
        _ => None,
    }
}

/// Pointwise conjugacy: for every element of the image, characteristic
/// polynomials agree in every representation of the family, and (for even
/// special orthogonal groups) `Pf(B(g − g⁻¹))` agrees.
pub fn element_conjugate_finite(
    r1: &FiniteImagePair,
    r2: &FiniteImagePair,
    degree_bound: usize,
    cap: usize,
) -> Result<(bool, Option<Separation>)> {
    if r1.group != r2.group || r1.generators.len() != r2.generators.len() {
        return Err(Error::InvalidInput(
            "homomorphisms have different shapes".into(),
        ));
    }
    let elements = joint_elements(r1, r2, cap)?;
    let family = rep_family(&r1.group, degree_bound);
    let so_form = so_even_form(&r1.group);
    for (w, g1, g2) in &elements {
        if let Some(b) = so_form {
            let pf =
                |g: &Matrix| -> Result<FieldElement> { Ok(pfaffian(&(b * &(g - &g.inverse()?)))) };
            if pf(g1)? != pf(g2)? {
                return Ok((
                    false,
                    Some(Separation {
                        element: w.clone(),
                        rep: None,
                    }),
                ));
            }
        }
        for r in &family {
            if r.group_action(g1)?.charpoly() != r.group_action(g2)?.charpoly() {
                return Ok((
                    false,
                    Some(Separation {
                        element: w.clone(),
                        rep: Some(r.word().clone()),
                    }),
                ));
            }
        }
    }
    Ok((true, None))
}

fn pfaffian_of_combination(
    r: &FiniteImagePair,
    form: &Matrix,
    terms: &[(Vec<usize>, i64)],
) -> Result<FieldElement> {
    let field = form.field();
    let n = form.rows();
    let mut x = Matrix::zeros(field, n, n);
    for (w, c) in terms {
        let word: GenWord = w.iter().map(|&i| (i, 1)).collect();
        let g = r.eval(&word)?;
        x = &x + &(&g - &g.inverse()?).scale(&FieldElement::from_int(field, *c));
    }
    Ok(pfaffian(&(form * &x)))
}

/// A Pfaffian certificate separating two homomorphisms into an even special
/// orthogonal group, searched over small combinations of group elements.
pub fn pfaffian_certificate(
    r1: &FiniteImagePair,
    r2: &FiniteImagePair,
    budget: &Budget,
    cap: usize,
) -> Result<Option<Certificate>> {
    let Some(form) = so_even_form(&r1.group) else {
        return Ok(None);
    };
    let elements = joint_elements(r1, r2, cap)?;
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    for t in 0..budget.trials.max(1) {
        let terms: Vec<(Vec<usize>, i64)> = elements
            .iter()
            .enumerate()
            .map(|(k, (w, _, _))| {
                (
                    w.clone(),
                    if t == 0 {
                        k as i64
                    } else {
                        rng.gen_range(-3..=3)
                    },
                )
            })
            .filter(|(_, c)| *c != 0)
            .collect();
        let left = pfaffian_of_combination(r1, form, &terms)?;
        let right = pfaffian_of_combination(r2, form, &terms)?;
        if left != right {
            return Ok(Some(Certificate::Pfaffian { terms, left, right }));
        }
    }
    Ok(None)
}

/// Re-checks a certificate separating two finite-image homomorphisms.
pub fn verify_finite_certificate(
    r1: &FiniteImagePair,
    r2: &FiniteImagePair,
    cert: &Certificate,
) -> Result<bool> {
    Ok(match cert {
        Certificate::Pfaffian { terms, left, right } => {
            let Some(form) = so_even_form(&r1.group) else {
                return Ok(false);
            };
            let l = pfaffian_of_combination(r1, form, terms)?;
            let r = pfaffian_of_combination(r2, form, terms)?;
            &l == left && &r == right && l != r
        }
        Certificate::Determinant { o_witness } => {
            let (Some(form), Ok(a), Ok(b)) =
                (so_even_form(&r1.group), structure_of(r1), structure_of(r2))
            else {
                return Ok(false);
            };
            let o = GroupSpec::o(form.clone())?;
            o.contains(o_witness)?
                && o_witness.det() == FieldElement::from_int(form.field(), -1)
                && r1.conjugate(o_witness)?.generators == r2.generators
                && matches!(
                    conjugate_structures(&r1.group, &a, &b)?,
                    StructureOutcome::DetObstruction { .. }
                )
        }
        Certificate::Multiplicities(_) => {
            let (a, b) = (structure_of(r1)?, structure_of(r2)?);
            matches!(
                conjugate_structures(&r1.group, &a, &b)?,
                StructureOutcome::Mismatch(_)
            )
        }
        _ => false,
    })
}

fn structure_of(r: &FiniteImagePair) -> Result<Structure> {
    if !r.commuting() {
        return Err(Error::InvalidInput("generators do not commute".into()));
    }
    let field = r.generators[0].field();
    let one = FieldElement::one(field);
    Ok(Structure {
        semisimple: r
            .generators
            .iter()
            .map(|g| (g.clone(), one.clone()))
            .collect(),
        triple: SL2Triple::zero(field, r.group.n()),
    })
}

/// Conjugacy of two finite-image homomorphisms inside their group.
pub fn finite_conjugate(
    r1: &FiniteImagePair,
    r2: &FiniteImagePair,
    budget: &Budget,
    cap: usize,
) -> Result<Verdict> {
    if r1.group != r2.group || r1.generators.len() != r2.generators.len() {
        return Err(Error::InvalidInput(
            "homomorphisms have different shapes".into(),
        ));
    }
    if !NumberField::same(r1.generators[0].field(), r2.generators[0].field()) {
        return Err(Error::FieldMismatch);
    }
    let verified = |w: &Matrix| -> Result<bool> {
        Ok(r1.group.contains(w)? && r1.conjugate(w)?.generators == r2.generators)
    };
    if r1.commuting() && r2.commuting() {
        let (a, b) = (structure_of(r1)?, structure_of(r2)?);
        match conjugate_structures(&r1.group, &a, &b)? {
            StructureOutcome::Witness(w) if verified(&w)? => return Ok(Verdict::Equivalent(w)),
            StructureOutcome::Mismatch(m) => {
                return Ok(Verdict::Inequivalent(Certificate::Multiplicities(m)))
            }
            StructureOutcome::DetObstruction { o_witness } => {
                if let Some(c) = pfaffian_certificate(r1, r2, budget, cap)? {
                    return Ok(Verdict::Inequivalent(c));
                }
                return Ok(Verdict::Inequivalent(Certificate::Determinant {
                    o_witness,
                }));
            }
            _ => {}
        }
    }
    if let Some(c) = pfaffian_certificate(r1, r2, budget, cap)? {
        return Ok(Verdict::Inequivalent(c));
    }
    let pairs: Vec<(&Matrix, &Matrix)> = r1.generators.iter().zip(&r2.generators).collect();
    if let Some(w) = search_group_intertwiner(&r1.group, &pairs, budget)? {
        if verified(&w)? {
            return Ok(Verdict::Equivalent(w));
        }
    }
    Ok(Verdict::Unknown(format!(
        "no intertwiner found in {} trial points",
        budget.trials
    )))
}
