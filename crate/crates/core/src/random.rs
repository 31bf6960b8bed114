//! Seeded generators of random WD pairs for property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::field::rational::{int, rat};
use crate::field::{Field, FieldElement, Rational};
use crate::groups::sample::{random_element, random_invertible};
use crate::groups::GroupSpec;
use crate::linalg::decompose::power_by_grading;
use crate::linalg::{exp_nilpotent, Matrix};
use crate::sl2::{jacobson_morozov, SL2Triple};
use crate::wd::{apply_conjugation, WDPair};

fn small_nonzero<R: Rng>(rng: &mut R, range: i64) -> i64 {
    loop {
        let v = rng.gen_range(-range..=range);
        if v != 0 {
            return v;
        }
    }
}

/// A URFS pair in `GL_n` with integer data in `−range..=range`: diagonal `s`,
/// a nilpotent supported on the positions the twist relation allows, then
/// (usually) conjugated by an integer matrix with entries in the same range.
pub fn random_gl_urfs<R: Rng>(rng: &mut R, field: &Field, n: usize, q: i64, range: i64) -> WDPair {
    let q_el = FieldElement::from_int(field, q);
    let diag: Vec<FieldElement> = (0..n)
        .map(|_| FieldElement::from_int(field, small_nonzero(rng, range)))
        .collect();
    let mut nil = Matrix::zeros(field, n, n);
    for i in 0..n {
        for j in 0..n {
            if diag[i] == &q_el * &diag[j] && rng.gen_bool(0.8) {
                nil.set(
                    i,
                    j,
                    FieldElement::from_int(field, rng.gen_range(-range..=range)),
                );
            }
        }
    }
    let p = WDPair::new(
        GroupSpec::gl(n),
        Matrix::diagonal(field, &diag),
        nil,
        int(q),
    );
    if rng.gen_bool(0.75) {
        let g = random_invertible(field, n, rng, range);
        apply_conjugation(&p, &g).expect("GL element")
    } else {
        p
    }
}

/// Eigenvalue pool for random tori.
fn pool<R: Rng>(rng: &mut R) -> Rational {
    let choices = [
        int(1),
        int(-1),
        int(2),
        int(-2),
        int(3),
        rat(1, 2),
        rat(-1, 2),
        int(4),
        rat(1, 4),
        int(8),
    ];
    choices.choose(rng).expect("non-empty").clone()
}

/// A torus element of the group: diagonal, with `(a, a⁻¹)` pairs for the
/// split forms `[[0, I], [±I, 0]]` (a trailing `1` in odd orthogonal size).
pub fn random_torus<R: Rng>(rng: &mut R, g: &GroupSpec, field: &Field) -> Option<Matrix> {
    let n = g.n();
    let el = |r: Rational| FieldElement::from_rational(field, r);
    let diag: Vec<FieldElement> = match g {
        GroupSpec::GL { .. } => (0..n).map(|_| el(pool(rng))).collect(),
        GroupSpec::SL { .. } => {
            let mut d: Vec<Rational> = (0..n - 1).map(|_| pool(rng)).collect();
            let prod = d.iter().fold(int(1), |a, b| a * b);
            d.push(prod.recip());
            d.into_iter().map(el).collect()
        }
        GroupSpec::Sp { .. } | GroupSpec::SO { .. } | GroupSpec::O { .. } => {
            let m = n / 2;
            let a: Vec<Rational> = (0..m).map(|_| pool(rng)).collect();
            let mut d: Vec<FieldElement> = a.iter().cloned().map(el).collect();
            d.extend(a.iter().map(|x| el(x.recip())));
            if n % 2 == 1 {
                d.push(FieldElement::one(field));
            }
            d
        }
        _ => return None,
    };
    let t = Matrix::diagonal(field, &diag);
    g.contains(&t).ok()?.then_some(t)
}

/// Random combination of the `q`-eigenspace of `Ad(s)` inside `Lie(g)`.
pub fn random_twisted_nilpotent<R: Rng>(
    rng: &mut R,
    g: &GroupSpec,
    s: &Matrix,
    q: &Rational,
) -> Matrix {
    let field = s.field();
    let n = s.rows();
    let basis = g.lie_algebra_basis(field);
    let qe = FieldElement::from_rational(field, q.clone());
    let conds: Vec<Vec<FieldElement>> = basis
        .iter()
        .map(|b| (&(s * b) - &(b * s).scale(&qe)).entries().to_vec())
        .collect();
    let a = Matrix::from_fn(field, n * n, basis.len(), |i, j| conds[j][i].clone());
    let mut out = Matrix::zeros(field, n, n);
    for c in a.kernel() {
        let k = FieldElement::from_int(field, rng.gen_range(-2..=2));
        if k.is_zero() {
            continue;
        }
        for (ci, b) in c.iter().zip(&basis) {
            if !ci.is_zero() {
                out = &out + &b.scale(&(ci * &k));
            }
        }
    }
    out
}

/// A valid pair for a classical group from a random torus element and a
/// random nilpotent in the matching root spaces, conjugated randomly.  With
/// `urfs = false`, `s` may acquire the unipotent factor `exp(N)`.
pub fn random_valid_pair<R: Rng>(
    rng: &mut R,
    g: &GroupSpec,
    field: &Field,
    q: &Rational,
    urfs: bool,
) -> WDPair {
    let s0 = random_torus(rng, g, field).expect("classical group");
    let n0 = random_twisted_nilpotent(rng, g, &s0, q);
    let s0 = if !urfs && !n0.is_zero() && rng.gen_bool(0.5) {
        &s0 * &exp_nilpotent(&n0).expect("nilpotent")
    } else {
        s0
    };
    let p = WDPair::new(g.clone(), s0, n0, q.clone());
    let c = random_element(g, field, rng);
    apply_conjugation(&p, &c).expect("group element")
}

/// Nilpotent orbits of `sp₄` (standard form) by partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sp4Orbit {
    Zero,
    Minimal,
    Subregular,
    Regular,
}

impl Sp4Orbit {
    pub const ALL: [Sp4Orbit; 4] = [
        Sp4Orbit::Zero,
        Sp4Orbit::Minimal,
        Sp4Orbit::Subregular,
        Sp4Orbit::Regular,
    ];

    pub fn partition(self) -> Vec<usize> {
        match self {
            Sp4Orbit::Zero => vec![1, 1, 1, 1],
            Sp4Orbit::Minimal => vec![2, 1, 1],
            Sp4Orbit::Subregular => vec![2, 2],
            Sp4Orbit::Regular => vec![4],
        }
    }

    /// A representative nilpotent for the standard symplectic form.
    pub fn nilpotent(self, field: &Field) -> Matrix {
        let e = |i, j| Matrix::unit(field, 4, i, j);
        match self {
            Sp4Orbit::Zero => Matrix::zeros(field, 4, 4),
            Sp4Orbit::Minimal => e(0, 2),
            Sp4Orbit::Subregular => &e(0, 3) + &e(1, 2),
            Sp4Orbit::Regular => &(&e(0, 1) - &e(3, 2)) + &e(1, 3),
        }
    }

    /// `s′` in the centralizer of the standard triple, parametrized by `a`.
    pub fn centralizer_element(self, field: &Field, a: &Rational, sign: i64) -> Matrix {
        let el = |r: Rational| FieldElement::from_rational(field, r);
        let e = int(sign);
        let d = match self {
            Sp4Orbit::Zero => vec![el(a.clone()), el(e.clone()), el(a.recip()), el(e.recip())],
            Sp4Orbit::Minimal => vec![el(e.clone()), el(a.clone()), el(e.clone()), el(a.recip())],
            Sp4Orbit::Subregular => {
                vec![el(a.clone()), el(a.recip()), el(a.recip()), el(a.clone())]
            }
            Sp4Orbit::Regular => vec![el(e.clone()); 4],
        };
        Matrix::diagonal(field, &d)
    }
}

/// The URFS pair `(t^H·s′⁻¹, E, t²)` in `Sp₄` for the orbit and
/// centralizer parameters, before any conjugation.
pub fn sp4_pair(field: &Field, orbit: Sp4Orbit, a: &Rational, sign: i64, t: i64) -> WDPair {
    let g = GroupSpec::sp_standard(field, 4);
    let n = orbit.nilpotent(field);
    let triple: SL2Triple = jacobson_morozov(&n, &g).expect("symplectic nilpotent");
    let s_prime = orbit.centralizer_element(field, a, sign);
    debug_assert!([&triple.e, &triple.h, &triple.f]
        .iter()
        .all(|m| s_prime.bracket(m).is_zero()));
    let th =
        power_by_grading(&triple.h, &FieldElement::from_int(field, t)).expect("integral grading");
    let s = &th * &s_prime.inverse().expect("invertible");
    WDPair::new(g, s, n, int(t * t))
}

/// A random URFS `Sp₄` pair over all orbit types, randomly conjugated.
pub fn random_sp4_pair<R: Rng>(rng: &mut R, field: &Field) -> WDPair {
    let orbit = *Sp4Orbit::ALL.choose(rng).expect("non-empty");
    let a = pool(rng);
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let p = sp4_pair(field, orbit, &a, sign, 2);
    let g = random_element(&p.group, field, rng);
    apply_conjugation(&p, &g).expect("group element")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::NumberField;
    use crate::sl2::nilpotent_partition;
    use crate::wd::{is_urfs, validate_pair};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_pairs_are_valid() {
        let q = NumberField::rationals();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let p = random_gl_urfs(&mut rng, &q, 3, 2, 2);
            assert!(validate_pair(&p).ok() && is_urfs(&p));
            let p = random_sp4_pair(&mut rng, &q);
            assert!(
                validate_pair(&p).ok() && is_urfs(&p),
                "{:?}",
                validate_pair(&p)
            );
            for g in [
                GroupSpec::sl(2),
                GroupSpec::so(crate::groups::hyperbolic_form(&q, 4)).unwrap(),
            ] {
                let p = random_valid_pair(&mut rng, &g, &q, &int(2), false);
                assert!(validate_pair(&p).ok());
            }
        }
        for o in Sp4Orbit::ALL {
            assert_eq!(nilpotent_partition(&o.nilpotent(&q)), o.partition());
        }
    }
}
