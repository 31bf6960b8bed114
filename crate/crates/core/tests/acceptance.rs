//! Acceptance suite: ten properties of the library, each checked on a
//! seeded random sample (or an exhaustive family) against an independent
//! oracle. Prints one PASS/FAIL line per criterion; exits non-zero if any
//! criterion fails.
//!
//! Run a subset by passing substrings of criterion names as arguments,
//! e.g. `cargo test --test acceptance -- oracle isocrystal`.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, ToPrimitive};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use urfs::conjugacy::{
    chain_invariant, class_defined_over, g_equivalent, gl_equivalent, verify_certificate, Budget,
    Rationality, Verdict,
};
use urfs::field::rational::{int, rat};
use urfs::field::{Field, FieldElement, NumberField, Rational};
use urfs::fixtures::{
    counterexample_from_json, counterexample_to_json, gaussian_rationals,
    so6_counterexample_search, verify_so6_counterexample, So6Budget,
};
use urfs::groups::sample::{random_element, random_invertible};
use urfs::groups::{hyperbolic_form, rep_family, GroupSpec};
use urfs::isocrystal::{
    gauge_to_constant, special_fiber, validate_log_module, wd_from_phi_n, LogModule, SeriesMatrix,
};
use urfs::linalg::{exp_nilpotent, log_unipotent, Matrix};
use urfs::monodromy::{
    extract_wd, presentation_from_pair, validate_presentation, TamePresentation,
};
use urfs::random::{
    random_gl_urfs, random_sp4_pair, random_twisted_nilpotent, random_valid_pair, sp4_pair,
    Sp4Orbit,
};
use urfs::sl2::{imai_decompose, jacobson_morozov};
use urfs::wd::{
    apply_conjugation, is_urfs, pushforward, rescale_nilpotent, semisimplify, validate_pair,
    verifies_witness, WDPair,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q_field() -> Field {
    NumberField::rationals()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// ------------------------------------------------------------------ 1

/// Integer matrix as `i128` rows; panics on non-integers.
fn integer_rows(m: &Matrix) -> Vec<Vec<i128>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    m.get(i, j)
                        .as_rational()
                        .expect("rational")
                        .to_integer()
                        .to_i128()
                        .expect("small")
                })
                .collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) determinant.
fn det_i128(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Basis of `{X : X·A₁ = A₂·X for every pair}`, solved directly from the
/// entrywise equations and scaled to integer matrices.
fn commutant_basis(pairs: &[(&Matrix, &Matrix)]) -> Vec<Vec<Vec<i128>>> {
    let field = pairs[0].0.field();
    let n = pairs[0].0.rows();
    let mut rows = Vec::new();
    for (a1, a2) in pairs {
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![FieldElement::zero(field); n * n];
                for k in 0..n {
                    row[i * n + k] = &row[i * n + k] + a1.get(k, j);
                    row[k * n + j] = &row[k * n + j] - a2.get(i, k);
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_rows(field, rows).expect("rectangular");
    system
        .kernel()
        .into_iter()
        .map(|v| {
            let denoms = v
                .iter()
                .map(|x| x.as_rational().expect("rational").denom().clone())
                .fold(num_bigint::BigInt::one(), |a, d| {
                    num_integer::Integer::lcm(&a, &d)
                });
            let scale = Rational::from_integer(denoms);
            let m = Matrix::from_fn(field, n, n, |i, j| v[i * n + j].scale(&scale));
            integer_rows(&m)
        })
        .collect()
}

fn combination(basis: &[Vec<Vec<i128>>], coeffs: &[i128]) -> Vec<Vec<i128>> {
    let n = basis[0].len();
    let mut out = vec![vec![0i128; n]; n];
    for (b, c) in basis.iter().zip(coeffs) {
        for i in 0..n {
            for j in 0..n {
                out[i][j] += c * b[i][j];
            }
        }
    }
    out
}

/// Brute-force conjugacy: random combinations of the intertwiner basis,
/// then every coefficient vector in `{0, …, n}^d`. The determinant of a
/// combination is a polynomial of degree at most `n` in each coefficient,
/// so if it is not identically zero it is non-zero somewhere on that grid.
fn brute_force_conjugate(p1: &WDPair, p2: &WDPair, rng: &mut ChaCha8Rng) -> bool {
    let basis = commutant_basis(&[(&p1.s, &p2.s), (&p1.n, &p2.n)]);
    if basis.is_empty() {
        return false;
    }
    let n = p1.dim();
    let d = basis.len();
    for _ in 0..40 {
        let c: Vec<i128> = (0..d).map(|_| rng.gen_range(-3..=3)).collect();
        if det_i128(combination(&basis, &c)) != 0 {
            return true;
        }
    }
    let values = (n + 1) as i128;
    let mut c = vec![0i128; d];
    loop {
        if det_i128(combination(&basis, &c)) != 0 {
            return true;
        }
        let mut k = 0;
        loop {
            if k == d {
                return false;
            }
            c[k] += 1;
            if c[k] < values {
                break;
            }
            c[k] = 0;
            k += 1;
        }
    }
}

fn criterion_gl_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let k = q_field();
    let gl = |n| GroupSpec::gl(n);
    let (mut equal, mut different) = (0, 0);
    for trial in 0..500 {
        let n = rng.gen_range(1..=3);
        let p1 = random_gl_urfs(&mut rng, &k, n, 2, 2);
        let p2 = match rng.gen_range(0..3) {
            0 => apply_conjugation(&p1, &random_invertible(&k, n, &mut rng, 2)).unwrap(),
            1 => {
                let nil = random_twisted_nilpotent(&mut rng, &gl(n), &p1.s, &int(2));
                apply_conjugation(
                    &WDPair {
                        n: nil,
                        ..p1.clone()
                    },
                    &random_invertible(&k, n, &mut rng, 2),
                )
                .unwrap()
            }
            _ => random_gl_urfs(&mut rng, &k, n, 2, 2),
        };
        let invariant_equal = chain_invariant(&p1).map_err(|e| e.to_string())?
            == chain_invariant(&p2).map_err(|e| e.to_string())?;
        let oracle = brute_force_conjugate(&p1, &p2, &mut rng);
        ensure(invariant_equal == oracle, || {
            format!("pair {trial}: invariant says {invariant_equal}, oracle says {oracle}")
        })?;
        let verdict = gl_equivalent(&p1, &p2).map_err(|e| e.to_string())?;
        match &verdict {
            Verdict::Equivalent(w) => ensure(oracle && verifies_witness(&p1, &p2, w), || {
                format!("pair {trial}: bad witness")
            })?,
            Verdict::Inequivalent(_) => {
                ensure(!oracle, || format!("pair {trial}: wrongly inequivalent"))?
            }
            Verdict::Unknown(r) => return Err(format!("pair {trial}: unknown ({r})")),
        }
        if oracle {
            equal += 1;
        } else {
            different += 1;
        }
    }
    ensure(start.elapsed() < Duration::from_secs(10 * 60), || {
        format!("took {:?}", start.elapsed())
    })?;
    Ok(format!(
        "500/500 agree ({equal} conjugate, {different} not)"
    ))
}

// ------------------------------------------------------------------ 2

fn families(k: &Field) -> Vec<(&'static str, GroupSpec)> {
    vec![
        ("GL2", GroupSpec::gl(2)),
        ("GL3", GroupSpec::gl(3)),
        ("SL2", GroupSpec::sl(2)),
        ("Sp4", GroupSpec::sp_standard(k, 4)),
        (
            "SO4",
            GroupSpec::SO {
                n: 4,
                form: hyperbolic_form(k, 4),
            },
        ),
    ]
}

fn criterion_twist_preservation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let k = q_field();
    let scales = [int(2), int(-1), rat(1, 3)];
    let mut checked = 0usize;
    for (name, g) in families(&k) {
        let reps = rep_family(&g, 2);
        for trial in 0..200 {
            let urfs = rng.gen_bool(0.5);
            let p = random_valid_pair(&mut rng, &g, &k, &int(2), urfs);
            let fail = |what: &str| format!("{name} pair {trial}: {what} breaks validation");
            ensure(validate_pair(&p).ok(), || fail("generation"))?;
            ensure(validate_pair(&semisimplify(&p).unwrap()).ok(), || {
                fail("semisimplify")
            })?;
            for r in &reps {
                ensure(validate_pair(&pushforward(&p, r).unwrap()).ok(), || {
                    fail(&format!("pushforward along {}", r.word()))
                })?;
            }
            for a in &scales {
                ensure(
                    validate_pair(
                        &rescale_nilpotent(&p, &FieldElement::from_rational(&k, a.clone()))
                            .unwrap(),
                    )
                    .ok(),
                    || fail("rescale"),
                )?;
            }
            let c = random_element(&g, &k, &mut rng);
            ensure(
                validate_pair(&apply_conjugation(&p, &c).unwrap()).ok(),
                || fail("conjugation"),
            )?;
            checked += 3 + reps.len() + scales.len();
        }
    }
    Ok(format!("1000 pairs, {checked} transformed pairs valid"))
}

// ------------------------------------------------------------------ 3

fn criterion_rescale_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let k = q_field();
    let scales = [int(2), int(-1), rat(1, 3)];
    for trial in 0..100 {
        let n = rng.gen_range(1..=4);
        let p = random_gl_urfs(&mut rng, &k, n, 2, 2);
        for a in &scales {
            let r = rescale_nilpotent(&p, &FieldElement::from_rational(&k, a.clone())).unwrap();
            match gl_equivalent(&p, &r).map_err(|e| e.to_string())? {
                Verdict::Equivalent(w) => ensure(verifies_witness(&p, &r, &w), || {
                    format!("pair {trial}, a = {a}: witness fails")
                })?,
                v => return Err(format!("pair {trial}, a = {a}: {}", v.name())),
            }
        }
    }
    Ok("300/300 rescalings equivalent with verified witnesses".into())
}

// ------------------------------------------------------------------ 4

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Weights `m−1, m−3, …, 1−m` of each part, as a multiset.
fn weighted_partition(parts: &[usize]) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for &m in parts {
        for j in 0..m {
            *out.entry(m as i64 - 1 - 2 * j as i64).or_insert(0) += 1;
        }
    }
    out
}

fn jordan_nilpotent(k: &Field, parts: &[usize]) -> Matrix {
    let n: usize = parts.iter().sum();
    let mut m = Matrix::zeros(k, n, n);
    let mut offset = 0;
    for &p in parts {
        for j in 0..p.saturating_sub(1) {
            m.set(offset + j + 1, offset + j, FieldElement::one(k));
        }
        offset += p;
    }
    m
}

/// Integer eigenvalues of a diagonalizable matrix with their multiplicities.
fn integer_spectrum(h: &Matrix) -> BTreeMap<i64, usize> {
    let k = h.field();
    let n = h.rows() as i64;
    let mut out = BTreeMap::new();
    for w in -n..=n {
        let shifted = h - &Matrix::scalar(k, h.rows(), &FieldElement::from_int(k, w));
        let d = h.rows() - shifted.rank();
        if d > 0 {
            out.insert(w, d);
        }
    }
    out
}

fn criterion_jacobson_morozov() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let k = q_field();
    let mut count = 0;
    for n in 1..=6 {
        let g = GroupSpec::gl(n);
        for parts in partitions(n, n) {
            let base = jordan_nilpotent(&k, &parts);
            let c = random_invertible(&k, n, &mut rng, 2);
            for e in [base.clone(), &(&c * &base) * &c.inverse().unwrap()] {
                let t = jacobson_morozov(&e, &g).map_err(|err| format!("{parts:?}: {err}"))?;
                let two = FieldElement::from_int(&k, 2);
                ensure(t.e == e, || format!("{parts:?}: E ≠ N"))?;
                ensure(t.h.bracket(&t.e) == t.e.scale(&two), || {
                    format!("{parts:?}: [H,E] ≠ 2E")
                })?;
                ensure(t.h.bracket(&t.f) == t.f.scale(&-&two), || {
                    format!("{parts:?}: [H,F] ≠ −2F")
                })?;
                ensure(t.e.bracket(&t.f) == t.h, || format!("{parts:?}: [E,F] ≠ H"))?;
                let spec = integer_spectrum(&t.h);
                ensure(spec.values().sum::<usize>() == n, || {
                    format!("{parts:?}: H not diagonalizable over Z")
                })?;
                ensure(spec == weighted_partition(&parts), || {
                    format!("{parts:?}: H spectrum {spec:?}")
                })?;
                count += 1;
            }
        }
    }
    Ok(format!(
        "{count} nilpotents (all Jordan types n ≤ 6, plain and conjugated) exact"
    ))
}

// ------------------------------------------------------------------ 5

fn criterion_imai() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let k = q_field();
    let gl3 = GroupSpec::gl(3);
    let mut adjoined = 0;
    for trial in 0..200 {
        let (label, p) = if trial < 100 {
            ("GL3", random_valid_pair(&mut rng, &gl3, &k, &int(2), true))
        } else if trial < 150 {
            ("Sp4", random_sp4_pair(&mut rng, &k))
        } else {
            (
                "Sp4",
                random_valid_pair(&mut rng, &GroupSpec::sp_standard(&k, 4), &k, &int(2), true),
            )
        };
        ensure(is_urfs(&p), || format!("{label} pair {trial} not URFS"))?;
        let d = imai_decompose(&p).map_err(|e| format!("{label} pair {trial}: {e}"))?;
        let t = d.triple_extended();
        ensure(d.triple.e == p.n && t.satisfies_relations(), || {
            format!("{label} pair {trial}: triple")
        })?;
        ensure(d.commutes(), || {
            format!("{label} pair {trial}: s′ does not commute with the triple")
        })?;
        let s = d.extension.embed_matrix(&p.s);
        ensure(d.reconstruct_s().map_err(|e| e.to_string())? == s, || {
            format!("{label} pair {trial}: t^H·s′⁻¹ ≠ s")
        })?;
        if d.extension.adjoined {
            adjoined += 1;
        }
    }
    Ok(format!(
        "100 GL3 + 100 Sp4 pairs decomposed exactly ({adjoined} over Q(√q))"
    ))
}

// ------------------------------------------------------------------ 6

fn criterion_monodromy_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let k = q_field();
    let groups = [
        GroupSpec::gl(2),
        GroupSpec::gl(3),
        GroupSpec::sp_standard(&k, 4),
    ];
    let (mut relation_holds, mut twist_holds) = (0, 0);
    for trial in 0..100 {
        let g = groups.choose(&mut rng).unwrap().clone();
        let q = int(rng.gen_range(2..=3));
        let urfs = rng.gen_bool(0.5);
        let p = random_valid_pair(&mut rng, &g, &k, &q, urfs);
        let t = presentation_from_pair(&p).map_err(|e| e.to_string())?;
        ensure(validate_presentation(&t).ok(), || {
            format!(
                "presentation {trial} invalid: {:?}",
                validate_presentation(&t).failures()
            )
        })?;
        let back = extract_wd(&t).map_err(|e| e.to_string())?;
        ensure(back == p, || {
            format!("presentation {trial}: extracted pair differs")
        })?;
        ensure(
            presentation_from_pair(&back).map_err(|e| e.to_string())? == t,
            || format!("presentation {trial}: round trip differs"),
        )?;
        // relation ⇒ twist on further inertia images: a rescaled one (both
        // hold) and one perturbed by a nilpotent twisted by the wrong q
        let alt = random_twisted_nilpotent(&mut rng, &g, &p.s, &(&q + int(1)));
        let two = FieldElement::from_int(&k, 2);
        for gamma in [
            t.gamma.clone(),
            exp_nilpotent(&p.n.scale(&two)).unwrap(),
            exp_nilpotent(&(&p.n + &alt)).unwrap(),
        ] {
            let log = log_unipotent(&gamma).map_err(|e| e.to_string())?;
            let cand = TamePresentation { gamma, ..t.clone() };
            let rel = validate_presentation(&cand).passed("relation") == Some(true);
            let twist = validate_pair(&WDPair::new(g.clone(), p.s.clone(), log, q.clone()))
                .passed("twist_relation")
                == Some(true);
            ensure(!rel || twist, || {
                format!("presentation {trial}: relation holds but twist fails")
            })?;
            relation_holds += rel as usize;
            twist_holds += twist as usize;
        }
    }
    Ok(format!("100/100 round trips exact; relation held in {relation_holds}/300 candidates, twist in {twist_holds}, no counterexample"))
}

// ------------------------------------------------------------------ 7

fn nilpotent_ranks(n: &Matrix) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = n.clone();
    while !p.is_zero() {
        out.push(p.rank());
        p = &p * n;
    }
    out
}

fn criterion_prop_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let k = q_field();
    let budget = Budget::default();
    let mut unknown = 0;
    for trial in 0..100 {
        let p = random_sp4_pair(&mut rng, &k);
        let partner = apply_conjugation(&p, &random_element(&p.group, &k, &mut rng)).unwrap();
        match g_equivalent(&p, &partner, &budget).map_err(|e| e.to_string())? {
            Verdict::Equivalent(w) => ensure(verifies_witness(&p, &partner, &w), || {
                format!("conjugate pair {trial}: witness fails")
            })?,
            Verdict::Unknown(_) => unknown += 1,
            Verdict::Inequivalent(_) => {
                return Err(format!("conjugate pair {trial}: wrongly inequivalent"))
            }
        }
    }
    let equivalent_unknown = unknown;
    let pool = [int(2), int(3), rat(1, 3), int(-2), rat(1, 2), int(5)];
    for trial in 0..50 {
        let (p1, p2) = if trial % 2 == 0 {
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            let r = sp4_pair(&k, Sp4Orbit::Regular, &int(1), sign, 2);
            let sub = sp4_pair(&k, Sp4Orbit::Subregular, &rat(1, 4), 1, 2);
            let sub = WDPair {
                s: sub.s.scale(&FieldElement::from_int(&k, sign)),
                ..sub
            };
            (r, sub)
        } else {
            let orbit = *[Sp4Orbit::Zero, Sp4Orbit::Minimal, Sp4Orbit::Subregular]
                .choose(&mut rng)
                .unwrap();
            let a = pool.choose(&mut rng).unwrap().clone();
            let b = loop {
                let b = pool.choose(&mut rng).unwrap().clone();
                if b != a && b != a.recip() {
                    break b;
                }
            };
            (sp4_pair(&k, orbit, &a, 1, 2), sp4_pair(&k, orbit, &b, 1, 2))
        };
        let p1 = apply_conjugation(&p1, &random_element(&p1.group, &k, &mut rng)).unwrap();
        let p2 = apply_conjugation(&p2, &random_element(&p2.group, &k, &mut rng)).unwrap();
        // ground truth by elementary invariants: Jordan type of N or spectrum of s
        let truly_different =
            nilpotent_ranks(&p1.n) != nilpotent_ranks(&p2.n) || p1.s.charpoly() != p2.s.charpoly();
        ensure(truly_different, || {
            format!("engineered pair {trial} is not provably inequivalent")
        })?;
        ensure(validate_pair(&p1).ok() && validate_pair(&p2).ok(), || {
            format!("engineered pair {trial} invalid")
        })?;
        match g_equivalent(&p1, &p2, &budget).map_err(|e| e.to_string())? {
            Verdict::Inequivalent(c) => ensure(
                verify_certificate(&p1, &p2, &c, &budget).map_err(|e| e.to_string())?,
                || format!("engineered pair {trial}: certificate does not verify"),
            )?,
            Verdict::Unknown(_) => unknown += 1,
            Verdict::Equivalent(_) => {
                return Err(format!("engineered pair {trial}: wrongly equivalent"))
            }
        }
    }
    ensure(equivalent_unknown == 0, || {
        format!("{equivalent_unknown} conjugate pairs came back Unknown")
    })?;
    let rate = unknown as f64 / 150.0;
    ensure(rate <= 0.10, || {
        format!("Unknown rate {:.1}%", rate * 100.0)
    })?;
    Ok(format!(
        "0 wrong verdicts; Unknown rate {:.1}% ({unknown}/150)",
        rate * 100.0
    ))
}

// ------------------------------------------------------------------ 8

fn criterion_isocrystal() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let k = q_field();
    let order = 8;
    let mut with_monodromy = 0;
    for trial in 0..100 {
        let n = rng.gen_range(1..=4);
        let p = *[2u64, 3].choose(&mut rng).unwrap();
        // every other module is redrawn until it carries monodromy
        let mut pair = random_gl_urfs(&mut rng, &k, n, p as i64, 2);
        for _ in 0..50 {
            if trial % 2 == 1 || n == 1 || !pair.n.is_zero() {
                break;
            }
            pair = random_gl_urfs(&mut rng, &k, n, p as i64, 2);
        }
        let phi0 = pair.s.inverse().unwrap();
        let a0 = -&pair.n;
        let module = LogModule::new(
            p,
            SeriesMatrix::constant(&a0, order),
            SeriesMatrix::constant(&phi0, order),
        );
        let mut coeffs = vec![Matrix::identity(&k, n)];
        for _ in 1..order {
            coeffs.push(Matrix::from_fn(&k, n, n, |_, _| {
                FieldElement::from_int(&k, rng.gen_range(-2..=2))
            }));
        }
        let g = SeriesMatrix::new(coeffs).unwrap();
        let gauged = module.gauge(&g).map_err(|e| e.to_string())?;
        let fail = |what: &str| format!("module {trial} (n = {n}, p = {p}): {what}");
        ensure(validate_log_module(&gauged).ok(), || {
            fail(&format!(
                "validation {:?}",
                validate_log_module(&gauged).failures()
            ))
        })?;
        let (_, constant) = gauge_to_constant(&gauged).map_err(|e| fail(&e.to_string()))?;
        ensure(
            constant.a.is_constant() && constant.phi.is_constant(),
            || fail("not constant"),
        )?;
        ensure(
            *constant.a.coeff(0) == a0 && *constant.phi.coeff(0) == phi0,
            || fail("residue not recovered"),
        )?;
        let d = special_fiber(&gauged).map_err(|e| fail(&e.to_string()))?;
        let rel = &d.n * &d.phi0 == (&d.phi0 * &d.n).scale_rational(&int(p as i64));
        ensure(rel && d.validate().ok(), || fail("Nφ₀ ≠ pφ₀N"))?;
        let wd = wd_from_phi_n(&d, 1).map_err(|e| fail(&e.to_string()))?;
        ensure(wd.q == int(p as i64) && validate_pair(&wd).ok(), || {
            fail("WD pair invalid")
        })?;
        with_monodromy += (!d.n.is_zero()) as usize;
    }
    Ok(format!(
        "100/100 gauged modules pass ({with_monodromy} with N ≠ 0)"
    ))
}

// ------------------------------------------------------------------ 9

fn criterion_so6_counterexample() -> Outcome {
    let start = Instant::now();
    let budget = So6Budget::default();
    let found = so6_counterexample_search(&budget).map_err(|e| e.to_string())?;
    let search_time = start.elapsed();
    ensure(search_time < Duration::from_secs(30 * 60), || {
        format!("search took {search_time:?}")
    })?;
    let report =
        verify_so6_counterexample(&found, 2, budget.elements).map_err(|e| e.to_string())?;
    ensure(report.ok(), || {
        format!("fresh pair fails {:?}", report.failures())
    })?;
    let golden_path =
        std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/so6_pair.json");
    let text = std::fs::read_to_string(&golden_path)
        .map_err(|e| format!("{}: {e}", golden_path.display()))?;
    let golden_json: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    ensure(counterexample_to_json(&found) == golden_json, || {
        "search result differs from the frozen fixture".into()
    })?;
    let t = Instant::now();
    let golden = counterexample_from_json(&golden_json).map_err(|e| e.to_string())?;
    let report =
        verify_so6_counterexample(&golden, 2, budget.elements).map_err(|e| e.to_string())?;
    let reverify = t.elapsed();
    ensure(report.ok(), || {
        format!("golden pair fails {:?}", report.failures())
    })?;
    ensure(reverify < Duration::from_secs(5), || {
        format!("re-verification took {reverify:?}")
    })?;
    Ok(format!(
        "{found}; search {:.2}s, golden re-verified in {:.2}s",
        search_time.as_secs_f64(),
        reverify.as_secs_f64()
    ))
}

// ------------------------------------------------------------------ 10

fn criterion_field_of_definition() -> Outcome {
    let k = gaussian_rationals();
    let i = FieldElement::generator(&k);
    let conj = -&i;
    let el = |n| FieldElement::from_int(&k, n);
    let budget = Budget::default();
    // the stated examples
    let p = WDPair::new(
        GroupSpec::gl(2),
        Matrix::diagonal(&k, &[i.clone(), &el(2) * &i]),
        Matrix::unit(&k, 2, 1, 0),
        int(2),
    );
    ensure(
        class_defined_over(&p, std::slice::from_ref(&conj), &budget).map_err(|e| e.to_string())?
            == Rationality::NotDefined { automorphism: 0 },
        || "diag(i, 2i) should not be defined over Q".into(),
    )?;
    let s = Matrix::diagonal(&k, &[i.clone(), &el(2) * &i, -&i, -&(&el(2) * &i)]);
    let n = &Matrix::unit(&k, 4, 1, 0) + &Matrix::unit(&k, 4, 3, 2);
    let p = WDPair::new(GroupSpec::gl(4), s, n, int(2));
    ensure(
        class_defined_over(&p, std::slice::from_ref(&conj), &budget).map_err(|e| e.to_string())?
            == Rationality::Defined,
        || "diag(i, 2i, −i, −2i) should be defined over Q".into(),
    )?;
    let p = WDPair::new(
        GroupSpec::gl(2),
        Matrix::diagonal(&k, &[el(1), el(2)]),
        Matrix::unit(&k, 2, 1, 0),
        int(2),
    );
    ensure(
        class_defined_over(&p, std::slice::from_ref(&conj), &budget).map_err(|e| e.to_string())?
            == Rationality::Defined,
        || "rational pair should be defined over Q".into(),
    )?;

    // random pairs: Galois stability of the invariant vs direct comparison
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let pool = [
        el(1),
        el(2),
        el(-1),
        i.clone(),
        &el(2) * &i,
        &el(1) + &i,
        &el(2) + &(&el(2) * &i),
        &el(4) * &i,
    ];
    let sigma = |e: &FieldElement| e.map_generator(&conj);
    let (mut stable, mut moved) = (0, 0);
    for trial in 0..50 {
        let n = rng.gen_range(2..=3);
        let mut diag: Vec<FieldElement> = Vec::new();
        while diag.len() < n {
            let x = pool.choose(&mut rng).unwrap().clone();
            if rng.gen_bool(0.5) && diag.len() + 2 <= n {
                diag.push(sigma(&x));
            }
            diag.push(x);
        }
        diag.shuffle(&mut rng);
        let g = GroupSpec::gl(n);
        let s = Matrix::diagonal(&k, &diag);
        let nil = random_twisted_nilpotent(&mut rng, &g, &s, &int(2));
        let p = apply_conjugation(
            &WDPair::new(g.clone(), s, nil, int(2)),
            &random_invertible(&k, n, &mut rng, 2),
        )
        .unwrap();
        let inv = chain_invariant(&p).map_err(|e| e.to_string())?;
        let galois_stable = inv.map_eigenvalues(sigma) == inv;
        let image = p.map_entries(&sigma);
        let direct = match g_equivalent(&p, &image, &budget).map_err(|e| e.to_string())? {
            Verdict::Equivalent(w) => {
                ensure(verifies_witness(&p, &image, &w), || {
                    format!("pair {trial}: witness fails")
                })?;
                true
            }
            Verdict::Inequivalent(_) => false,
            Verdict::Unknown(r) => return Err(format!("pair {trial}: unknown ({r})")),
        };
        ensure(galois_stable == direct, || {
            format!("pair {trial}: invariant stability {galois_stable}, direct comparison {direct}")
        })?;
        let via_api = class_defined_over(&p, std::slice::from_ref(&conj), &budget)
            .map_err(|e| e.to_string())?;
        ensure((via_api == Rationality::Defined) == direct, || {
            format!("pair {trial}: class_defined_over disagrees")
        })?;
        if direct {
            stable += 1;
        } else {
            moved += 1;
        }
    }
    Ok(format!(
        "3 reference examples correct; 50/50 random pairs agree ({stable} stable, {moved} moved)"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("gl-oracle-equivalence", criterion_gl_oracle),
        ("twist-relation-preservation", criterion_twist_preservation),
        ("rescale-invariance", criterion_rescale_invariance),
        ("jacobson-morozov-exactness", criterion_jacobson_morozov),
        ("imai-decomposition", criterion_imai),
        ("monodromy-round-trip", criterion_monodromy_round_trip),
        ("non-gl-consistency", criterion_prop_consistency),
        ("isocrystal-suite", criterion_isocrystal),
        ("so6-counterexample", criterion_so6_counterexample),
        ("field-of-definition", criterion_field_of_definition),
    ];
    let filters: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (idx, (name, run)) in criteria.iter().enumerate() {
        if !filters.is_empty() && !filters.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "criterion {:>2} {name}: PASS — {detail} [{secs:.1}s]",
                idx + 1
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "criterion {:>2} {name}: FAIL — {detail} [{secs:.1}s]",
                    idx + 1
                );
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
