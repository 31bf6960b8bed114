//! The operations behind each command-line subcommand, on parsed JSON
//! documents. Each returns a machine-readable result, a one-paragraph human
//! summary and an [`Outcome`] that fixes the exit status.

use serde_json::{json, Value};

use crate::config::Config;
use crate::conjugacy::finite::{
    element_conjugate_finite, finite_conjugate, verify_finite_certificate,
};
use crate::conjugacy::{
    chain_invariant, class_defined_over, element_conjugate, g_equivalent, verify_certificate,
    Rationality, Verdict,
};
use crate::error::{Error, Result};
use crate::fixtures::{
    counterexample_to_json, so6_counterexample_search, tate_pair, verify_so6_counterexample,
};
use crate::groups::{build_rep, Word};
use crate::io::{
    chain_invariant_to_json, document_field, element_from_json, element_to_json,
    finite_pair_from_json, log_module_from_json, log_module_to_json, matrix_to_json,
    pair_from_json, pair_to_json, phi_n_from_json, phi_n_to_json, presentation_from_json,
    report_to_json, verdict_to_json,
};
use crate::isocrystal::{
    check_fiber_comparison, gauge_to_constant, special_fiber, validate_log_module, wd_from_phi_n,
    PhiNModule,
};
use crate::linalg::field_automorphisms;
use crate::monodromy::{extract_wd, restrict_totally_ramified, validate_presentation};
use crate::wd::{
    is_urfs, pushforward, semisimplify, validate_pair, verifies_witness, Report, WDPair,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;
pub const EXIT_CHECK_FAILED: i32 = 4;

/// How a command ended, mathematically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// A verdict or value was established.
    Definitive,
    /// A budgeted decider gave up.
    Unknown,
    /// The input was well-formed but violates an invariant being checked.
    CheckFailed,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Definitive => EXIT_OK,
            Outcome::Unknown => EXIT_UNKNOWN,
            Outcome::CheckFailed => EXIT_CHECK_FAILED,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Outcome::Definitive => "definitive",
            Outcome::Unknown => "unknown",
            Outcome::CheckFailed => "check_failed",
        }
    }
}

/// Exit status for an error raised while running a command.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExhausted(_) | Error::NotFound(_) => EXIT_UNKNOWN,
        _ => EXIT_INPUT,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommandOutput {
    pub command: String,
    pub result: Value,
    pub summary: String,
    pub outcome: Outcome,
}

impl CommandOutput {
    fn new(
        command: &str,
        result: Value,
        summary: impl Into<String>,
        outcome: Outcome,
    ) -> CommandOutput {
        CommandOutput {
            command: command.to_string(),
            result,
            summary: summary.into(),
            outcome,
        }
    }

    /// The machine-readable report.
    pub fn report(&self) -> Value {
        json!({"command": self.command, "outcome": self.outcome.name(), "result": self.result})
    }
}

fn read_pair(doc: &Value, cfg: &Config) -> Result<WDPair> {
    pair_from_json(doc)?.to_arithmetic(cfg.convention())
}

fn write_pair(p: &WDPair, cfg: &Config) -> Result<Value> {
    Ok(pair_to_json(&p.from_arithmetic(cfg.convention())?))
}

fn report_outcome(r: &Report) -> Outcome {
    if r.ok() {
        Outcome::Definitive
    } else {
        Outcome::CheckFailed
    }
}

fn report_summary(what: &str, r: &Report) -> String {
    if r.ok() {
        format!("{what}: all {} checks pass", r.checks.len())
    } else {
        let failed: Vec<String> = r
            .failures()
            .iter()
            .map(|c| match &c.detail {
                Some(d) => format!("{} ({d})", c.name),
                None => c.name.to_string(),
            })
            .collect();
        format!("{what}: failed {}", failed.join(", "))
    }
}

fn is_finite_pair(doc: &Value) -> bool {
    doc.get("generators").is_some()
}

/// Validates a pair, a tame presentation, a log module, a `(φ, N)`-module or
/// a finite-image homomorphism, chosen by the document's keys.
pub fn validate(doc: &Value, cfg: &Config) -> Result<CommandOutput> {
    let (what, report) = if doc.get("sigma").is_some() {
        (
            "presentation",
            validate_presentation(&presentation_from_json(doc)?),
        )
    } else if doc.get("Phi").is_some() {
        (
            "log module",
            validate_log_module(&log_module_from_json(doc, None)?),
        )
    } else if doc.get("phi0").is_some() {
        ("(phi, N)-module", phi_n_from_json(doc)?.validate())
    } else if is_finite_pair(doc) {
        let r = finite_pair_from_json(doc)?;
        let mut rep = Report::default();
        let v = r.validate();
        rep.push("homomorphism", v.is_ok(), v.err().map(|e| e.to_string()));
        ("finite image", rep)
    } else {
        let p = read_pair(doc, cfg)?;
        let mut r = validate_pair(&p);
        r.push("urfs", is_urfs(&p), None);
        ("pair", r)
    };
    Ok(CommandOutput::new(
        "validate",
        report_to_json(&report),
        report_summary(what, &report),
        report_outcome(&report),
    ))
}

fn verdict_output(command: &str, v: &Verdict, verified: bool) -> CommandOutput {
    let mut result = verdict_to_json(v);
    result["verified"] = json!(verified);
    let summary = match v {
        Verdict::Equivalent(g) if g.is_identity() => "Equivalent (witness I)".to_string(),
        Verdict::Equivalent(_) => format!(
            "Equivalent (witness {})",
            if verified { "verified" } else { "NOT verified" }
        ),
        Verdict::Inequivalent(c) => format!(
            "Inequivalent ({} certificate {})",
            crate::io::certificate_to_json(c)["kind"]
                .as_str()
                .unwrap_or("?"),
            if verified { "verified" } else { "NOT verified" }
        ),
        Verdict::Unknown(r) => format!("Unknown: {r}"),
    };
    let outcome = if v.is_unknown() {
        Outcome::Unknown
    } else {
        Outcome::Definitive
    };
    CommandOutput::new(command, result, summary, outcome)
}

/// Group conjugacy of two pairs (or two finite-image homomorphisms).
pub fn check_equiv(a: &Value, b: &Value, cfg: &Config) -> Result<CommandOutput> {
    let budget = cfg.budget();
    if is_finite_pair(a) {
        let (r1, r2) = (finite_pair_from_json(a)?, finite_pair_from_json(b)?);
        r1.validate()?;
        r2.validate()?;
        let v = finite_conjugate(&r1, &r2, &budget, cfg.elements)?;
        let verified = match &v {
            Verdict::Equivalent(g) => r1.conjugate(g)?.generators == r2.generators,
            Verdict::Inequivalent(c) => verify_finite_certificate(&r1, &r2, c)?,
            Verdict::Unknown(_) => false,
        };
        return Ok(verdict_output("check-equiv", &v, verified));
    }
    let (p1, p2) = (read_pair(a, cfg)?, read_pair(b, cfg)?);
    let v = g_equivalent(&p1, &p2, &budget)?;
    let verified = match &v {
        Verdict::Equivalent(g) => verifies_witness(&p1, &p2, g),
        Verdict::Inequivalent(c) => verify_certificate(&p1, &p2, c, &budget)?,
        Verdict::Unknown(_) => false,
    };
    Ok(verdict_output("check-equiv", &v, verified))
}

/// The chain invariant of the defining representation.
pub fn canonical_form(doc: &Value, cfg: &Config) -> Result<CommandOutput> {
    let p = read_pair(doc, cfg)?;
    let c = chain_invariant(&p)?;
    Ok(CommandOutput::new(
        "canonical-form",
        chain_invariant_to_json(&c),
        c.to_string(),
        Outcome::Definitive,
    ))
}

pub fn semisimplify_cmd(doc: &Value, cfg: &Config) -> Result<CommandOutput> {
    let p = read_pair(doc, cfg)?;
    let ss = semisimplify(&p)?;
    let changed = ss != p;
    Ok(CommandOutput::new(
        "semisimplify",
        write_pair(&ss, cfg)?,
        if changed {
            "replaced s by its semisimple part"
        } else {
            "already Frobenius-semisimple"
        },
        Outcome::Definitive,
    ))
}

pub fn pushforward_cmd(doc: &Value, word: &str, cfg: &Config) -> Result<CommandOutput> {
    let p = read_pair(doc, cfg)?;
    let w = Word::parse(word)?;
    let r = build_rep(&p.group, &w, cfg.degree)?;
    let out = pushforward(&p, &r)?;
    Ok(CommandOutput::new(
        "pushforward",
        write_pair(&out, cfg)?,
        format!("pushed forward along {w} (dimension {})", r.dim()),
        Outcome::Definitive,
    ))
}

/// Pointwise conjugacy: every representation of the family agrees.
pub fn element_conj(a: &Value, b: &Value, cfg: &Config) -> Result<CommandOutput> {
    let (same, separation) = if is_finite_pair(a) {
        let (r1, r2) = (finite_pair_from_json(a)?, finite_pair_from_json(b)?);
        let (same, sep) = element_conjugate_finite(&r1, &r2, cfg.degree, cfg.elements)?;
        (same, sep.map(|s| json!({"element": s.element, "rep": s.rep.map(|w| w.to_string()).unwrap_or_else(|| "pfaffian".into())})))
    } else {
        let (p1, p2) = (read_pair(a, cfg)?, read_pair(b, cfg)?);
        let (same, rep) = element_conjugate(&p1, &p2, cfg.degree)?;
        (same, rep.map(|w| json!({"rep": w.to_string()})))
    };
    let summary = match &separation {
        None => format!("element-conjugate up to degree {}", cfg.degree),
        Some(s) => format!("not element-conjugate: separated by {s}"),
    };
    Ok(CommandOutput::new(
        "element-conj",
        json!({"element_conjugate": same, "degree": cfg.degree, "separation": separation}),
        summary,
        Outcome::Definitive,
    ))
}

/// Whether the class is fixed by field automorphisms. `automorphisms` are
/// images of the generator; by default every automorphism of the field.
pub fn rationality(
    doc: &Value,
    automorphisms: Option<&[Value]>,
    cfg: &Config,
) -> Result<CommandOutput> {
    let p = read_pair(doc, cfg)?;
    let field = document_field(doc)?;
    let autos = match automorphisms {
        Some(vs) => vs
            .iter()
            .enumerate()
            .map(|(i, v)| element_from_json(&field, v, &format!("--auto[{i}]")))
            .collect::<Result<Vec<_>>>()?,
        None => field_automorphisms(&field),
    };
    let r = class_defined_over(&p, &autos, &cfg.budget())?;
    let (result, summary, outcome) = match r {
        Rationality::Defined => (
            json!({"defined": true}),
            format!("class fixed by all {} automorphisms", autos.len()),
            Outcome::Definitive,
        ),
        Rationality::NotDefined { automorphism } => (
            json!({"defined": false, "automorphism": element_to_json(&autos[automorphism])}),
            format!(
                "class moved by the automorphism x ↦ {}",
                autos[automorphism]
            ),
            Outcome::Definitive,
        ),
        Rationality::Inconclusive(m) => (
            json!({"defined": null, "reason": m}),
            format!("inconclusive: {m}"),
            Outcome::Unknown,
        ),
    };
    Ok(CommandOutput::new("rationality", result, summary, outcome))
}

pub fn monodromy_extract(doc: &Value, cfg: &Config) -> Result<CommandOutput> {
    let t = presentation_from_json(doc)?;
    let r = validate_presentation(&t);
    if !r.ok() {
        return Ok(CommandOutput::new(
            "monodromy extract",
            report_to_json(&r),
            report_summary("presentation", &r),
            Outcome::CheckFailed,
        ));
    }
    let p = extract_wd(&t)?;
    Ok(CommandOutput::new(
        "monodromy extract",
        write_pair(&p, cfg)?,
        "N = log γ, s = σ",
        Outcome::Definitive,
    ))
}

pub fn restrict_ram(doc: &Value, e: u64, renormalize: bool, cfg: &Config) -> Result<CommandOutput> {
    let p = read_pair(doc, cfg)?;
    let out = restrict_totally_ramified(&p, e, renormalize)?;
    let summary = if renormalize {
        format!("degree {e}, renormalized: pair unchanged")
    } else {
        format!("degree {e}: N scaled by {e}")
    };
    Ok(CommandOutput::new(
        "restrict-ram",
        write_pair(&out, cfg)?,
        summary,
        Outcome::Definitive,
    ))
}

pub fn isoc_validate(doc: &Value, cfg: &Config) -> Result<CommandOutput> {
    let m = log_module_from_json(doc, doc.get("order").is_none().then_some(cfg.order))?;
    let mut r = validate_log_module(&m);
    if r.ok() {
        let c = check_fiber_comparison(&m)?;
        r.checks.extend(c.checks);
    }
    Ok(CommandOutput::new(
        "isoc validate",
        report_to_json(&r),
        report_summary("log module", &r),
        report_outcome(&r),
    ))
}

fn fiber_summary(d: &PhiNModule) -> String {
    format!("phi0 = {}; N = {}", d.phi0, d.n)
}

pub fn isoc_fiber(doc: &Value, order: Option<usize>) -> Result<CommandOutput> {
    let m = log_module_from_json(doc, order)?;
    let d = special_fiber(&m)?;
    Ok(CommandOutput::new(
        "isoc fiber",
        phi_n_to_json(&d),
        fiber_summary(&d),
        Outcome::Definitive,
    ))
}

pub fn isoc_gauge(doc: &Value, order: Option<usize>) -> Result<CommandOutput> {
    let m = log_module_from_json(doc, order)?;
    let (g, constant) = gauge_to_constant(&m)?;
    let gauge: Vec<Value> = g.coeffs().iter().map(matrix_to_json).collect();
    Ok(CommandOutput::new(
        "isoc gauge",
        json!({"gauge": gauge, "module": log_module_to_json(&constant)}),
        format!("constant form reached modulo u^{}", m.order()),
        Outcome::Definitive,
    ))
}

/// `(φ₀^{−d}, N, p^d)` from a `(φ, N)`-module, or from the special fiber of
/// a log module.
pub fn isoc_to_wd(doc: &Value, s_deg: u32, cfg: &Config) -> Result<CommandOutput> {
    let d = if doc.get("phi0").is_some() {
        phi_n_from_json(doc)?
    } else {
        special_fiber(&log_module_from_json(doc, None)?)?
    };
    let p = wd_from_phi_n(&d, s_deg)?;
    let r = validate_pair(&p);
    if !r.ok() {
        return Ok(CommandOutput::new(
            "isoc to-wd",
            report_to_json(&r),
            report_summary("pair", &r),
            Outcome::CheckFailed,
        ));
    }
    Ok(CommandOutput::new(
        "isoc to-wd",
        write_pair(&p, cfg)?,
        format!("q = {}", p.q),
        Outcome::Definitive,
    ))
}

pub fn fixture_tate(q: u64, cfg: &Config) -> Result<CommandOutput> {
    let p = tate_pair(q)?;
    Ok(CommandOutput::new(
        "fixture tate",
        write_pair(&p, cfg)?,
        chain_invariant(&p)?.to_string(),
        Outcome::Definitive,
    ))
}

pub fn fixture_so6(cfg: &Config) -> Result<CommandOutput> {
    let budget = cfg.so6_budget();
    let c = so6_counterexample_search(&budget)?;
    let r = verify_so6_counterexample(&c, budget.degree, budget.elements)?;
    let mut result = counterexample_to_json(&c);
    result["verification"] = report_to_json(&r);
    Ok(CommandOutput::new(
        "fixture so6",
        result,
        format!("{c}: {}", report_summary("certificates", &r)),
        report_outcome(&r),
    ))
}
