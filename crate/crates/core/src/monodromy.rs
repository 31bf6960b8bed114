//! WD pairs from the tame quotient: a Frobenius lift `σ` and a generator `γ`
//! of tame inertia with `σγσ⁻¹ = γ^q`.

use num_traits::ToPrimitive;

use crate::conjugacy::{g_equivalent, Budget, Verdict};
use crate::error::{Error, Result};
use crate::field::rational::is_integer;
use crate::field::{FieldElement, Rational};
use crate::groups::GroupSpec;
use crate::linalg::{exp_nilpotent, log_unipotent, Matrix};
use crate::wd::{Report, WDPair};

/// Images of the Frobenius lift and of the tame inertia generator.
#[derive(Clone, Debug, PartialEq)]
pub struct TamePresentation {
    pub group: GroupSpec,
    pub sigma: Matrix,
    pub gamma: Matrix,
    pub q: Rational,
}

fn is_unipotent(m: &Matrix) -> bool {
    (m - &Matrix::identity(m.field(), m.rows())).is_nilpotent()
}

/// The integer value of `q` when it is an integer `≥ 2`.
fn integral_q(q: &Rational) -> Option<u64> {
    if is_integer(q) {
        q.to_integer().to_u64().filter(|&v| v >= 2)
    } else {
        None
    }
}

/// Checks the tame relation, unipotence of `γ` and group membership.
pub fn validate_presentation(t: &TamePresentation) -> Report {
    let mut r = Report::default();
    let n = t.group.n();
    let shapes = [&t.sigma, &t.gamma]
        .iter()
        .all(|m| m.rows() == n && m.cols() == n);
    r.push(
        "shapes",
        shapes,
        (!shapes).then(|| format!("expected {n}×{n} matrices")),
    );
    if !shapes {
        return r;
    }
    let q = integral_q(&t.q);
    r.push(
        "q_integer",
        q.is_some(),
        q.is_none().then(|| "q must be an integer ≥ 2".to_string()),
    );
    let relation = match (q, t.sigma.inverse()) {
        (Some(q), Ok(si)) => &(&t.sigma * &t.gamma) * &si == t.gamma.pow(q),
        _ => false,
    };
    r.push(
        "relation",
        relation,
        (!relation).then(|| "σγσ⁻¹ ≠ γ^q".to_string()),
    );
    r.push("gamma_unipotent", is_unipotent(&t.gamma), None);
    for (name, m) in [("sigma_in_group", &t.sigma), ("gamma_in_group", &t.gamma)] {
        match t.group.contains(m) {
            Ok(ok) => r.push(name, ok, None),
            Err(e) => r.push(name, false, Some(e.to_string())),
        }
    }
    r
}

/// `(σ, log γ, q)`.
pub fn extract_wd(t: &TamePresentation) -> Result<WDPair> {
    if !is_unipotent(&t.gamma) {
        return Err(Error::NotUnipotent);
    }
    let report = validate_presentation(t);
    if !report.ok() {
        let names: Vec<&str> = report.failures().iter().map(|c| c.name).collect();
        return Err(Error::InvalidInput(format!(
            "invalid presentation: {}",
            names.join(", ")
        )));
    }
    Ok(WDPair::new(
        t.group.clone(),
        t.sigma.clone(),
        log_unipotent(&t.gamma)?,
        t.q.clone(),
    ))
}

/// `(s, exp N, q)`, the inverse of [`extract_wd`] on valid pairs.
pub fn presentation_from_pair(p: &WDPair) -> Result<TamePresentation> {
    Ok(TamePresentation {
        group: p.group.clone(),
        sigma: p.s.clone(),
        gamma: exp_nilpotent(&p.n)?,
        q: p.q.clone(),
    })
}

/// Restriction to the totally ramified extension of degree `e`: `γ ↦ γ^e`,
/// so `N ↦ e·N`; with `renormalize` the inertia parameter is divided by `e`
/// and the pair is unchanged.
pub fn restrict_totally_ramified(p: &WDPair, e: u64, renormalize: bool) -> Result<WDPair> {
    if e == 0 {
        return Err(Error::InvalidInput(
            "extension degree must be positive".into(),
        ));
    }
    if renormalize {
        return Ok(p.clone());
    }
    let factor = FieldElement::from_int(p.field(), e as i64);
    Ok(WDPair {
        n: p.n.scale(&factor),
        ..p.clone()
    })
}

/// Compares classes of pairs coming from a mixed-characteristic field and an
/// equal-characteristic field with the same residue size.
pub fn identify_across_fields(
    p_mixed: &WDPair,
    p_equal: &WDPair,
    budget: &Budget,
) -> Result<Verdict> {
    if p_mixed.q != p_equal.q {
        return Err(Error::InvalidInput("residue field sizes differ".into()));
    }
    g_equivalent(p_mixed, p_equal, budget)
}
