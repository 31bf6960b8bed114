//! Weil–Deligne pairs `(s, N)` with `s·N·s⁻¹ = q·N` and their elementary
//! transformations.

use num_traits::One;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, NumberField, Rational};
use crate::groups::{GroupSpec, Rep};
use crate::linalg::{jordan_chevalley, Matrix};

/// A pair `(s, N)` in `G(K) × Lie(G)` together with the residue size `q`.
/// `s` is the image of an arithmetic Frobenius lift.
#[derive(Clone, Debug, PartialEq)]
pub struct WDPair {
    pub group: GroupSpec,
    pub s: Matrix,
    pub n: Matrix,
    pub q: Rational,
}

/// Which Frobenius `s` is the image of.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Convention {
    #[default]
    Arithmetic,
    Geometric,
}

/// Outcome of a single validation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: Option<String>,
}

/// Report-style result of a validation.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, name: &'static str, passed: bool, detail: Option<String>) {
        self.checks.push(Check {
            name,
            passed,
            detail,
        });
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn passed(&self, name: &str) -> Option<bool> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.passed)
    }
}

impl WDPair {
    pub fn new(group: GroupSpec, s: Matrix, n: Matrix, q: Rational) -> WDPair {
        WDPair { group, s, n, q }
    }

    pub fn field(&self) -> &Field {
        self.s.field()
    }

    pub fn dim(&self) -> usize {
        self.s.rows()
    }

    /// Converts a pair given in `convention` to the arithmetic normalisation
    /// (a geometric Frobenius image is inverted).
    pub fn to_arithmetic(&self, convention: Convention) -> Result<WDPair> {
        match convention {
            Convention::Arithmetic => Ok(self.clone()),
            Convention::Geometric => Ok(WDPair {
                s: self.s.inverse()?,
                ..self.clone()
            }),
        }
    }

    /// Inverse of [`WDPair::to_arithmetic`].
    pub fn from_arithmetic(&self, convention: Convention) -> Result<WDPair> {
        self.to_arithmetic(convention)
    }

    /// Applies a coefficient map entrywise (e.g. a field automorphism).
    pub fn map_entries(&self, f: &impl Fn(&FieldElement) -> FieldElement) -> WDPair {
        WDPair {
            group: self.group.map_entries(f),
            s: self.s.map(f),
            n: self.n.map(f),
            q: self.q.clone(),
        }
    }
}

/// Checks every invariant of a pair and reports each one.
pub fn validate_pair(p: &WDPair) -> Report {
    let mut r = Report::default();
    let n = p.group.n();
    let shapes_ok = p.s.rows() == n && p.s.cols() == n && p.n.rows() == n && p.n.cols() == n;
    r.push(
        "shapes",
        shapes_ok,
        (!shapes_ok).then(|| {
            format!(
                "group size {n}, s {}x{}, N {}x{}",
                p.s.rows(),
                p.s.cols(),
                p.n.rows(),
                p.n.cols()
            )
        }),
    );
    let same_field = NumberField::same(p.s.field(), p.n.field())
        && p.group
            .form()
            .is_none_or(|f| NumberField::same(f.field(), p.s.field()));
    r.push("field", same_field, None);
    let group_ok = p.group.validate();
    r.push(
        "group",
        group_ok.is_ok(),
        group_ok.err().map(|e| e.to_string()),
    );
    r.push("q_greater_than_one", p.q > Rational::one(), None);
    if !shapes_ok || !same_field {
        return r;
    }
    r.push("s_in_group", p.group.contains(&p.s).unwrap_or(false), None);
    r.push(
        "n_in_lie_algebra",
        p.group.lie_contains(&p.n).unwrap_or(false),
        None,
    );
    let twist = match p.s.inverse() {
        Ok(si) => &(&p.s * &p.n) * &si == p.n.scale_rational(&p.q),
        Err(_) => false,
    };
    r.push(
        "twist_relation",
        twist,
        (!twist).then(|| "s·N·s⁻¹ ≠ q·N".to_string()),
    );
    r.push("n_nilpotent", p.n.is_nilpotent(), None);
    r
}

/// Whether the pair is Frobenius-semisimple (the Jordan–Chevalley unipotent
/// part of `s` is trivial) with nilpotent `N`.
pub fn is_urfs(p: &WDPair) -> bool {
    match jordan_chevalley(&p.s) {
        Ok((_, u)) => u.is_identity() && p.n.is_nilpotent(),
        Err(_) => false,
    }
}

/// Replaces `s` by its semisimple part.
pub fn semisimplify(p: &WDPair) -> Result<WDPair> {
    let (ss, _) = jordan_chevalley(&p.s)?;
    Ok(WDPair { s: ss, ..p.clone() })
}

/// `(GL(dim r), r(s), dr(N), q)`.
pub fn pushforward(p: &WDPair, r: &Rep) -> Result<WDPair> {
    if r.source().n() != p.group.n() {
        return Err(Error::DimensionMismatch(
            "representation source does not match the pair's group".into(),
        ));
    }
    Ok(WDPair {
        group: GroupSpec::gl(r.dim()),
        s: r.group_action(&p.s)?,
        n: r.lie_action(&p.n)?,
        q: p.q.clone(),
    })
}

/// `(s, a·N, q)`.
pub fn rescale_nilpotent(p: &WDPair, a: &FieldElement) -> Result<WDPair> {
    if a.is_zero() {
        return Err(Error::ZeroScale);
    }
    Ok(WDPair {
        n: p.n.scale(a),
        ..p.clone()
    })
}

/// `(g s g⁻¹, g N g⁻¹, q)` for `g` in the group.
pub fn apply_conjugation(p: &WDPair, g: &Matrix) -> Result<WDPair> {
    if !p.group.contains(g)? {
        return Err(Error::NotInGroup);
    }
    let gi = g.inverse()?;
    Ok(WDPair {
        s: &(g * &p.s) * &gi,
        n: &(g * &p.n) * &gi,
        ..p.clone()
    })
}

/// Whether `g` conjugates `p1` onto `p2` exactly.
pub fn verifies_witness(p1: &WDPair, p2: &WDPair, g: &Matrix) -> bool {
    match apply_conjugation(p1, g) {
        Ok(c) => c.s == p2.s && c.n == p2.n,
        Err(_) => false,
    }
}

/// `q` as an element of the pair's field.
pub fn q_element(p: &WDPair) -> FieldElement {
    FieldElement::from_rational(p.field(), p.q.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::int;
    use crate::groups::{build_rep, Word};

    fn q() -> Field {
        NumberField::rationals()
    }

    fn tate() -> WDPair {
        WDPair::new(
            GroupSpec::gl(2),
            Matrix::from_ints(&q(), &[vec![1, 0], vec![0, 2]]),
            Matrix::unit(&q(), 2, 1, 0),
            int(2),
        )
    }

    #[test]
    fn validation_examples() {
        assert!(validate_pair(&tate()).ok());
        let bad = WDPair::new(
            GroupSpec::gl(2),
            Matrix::identity(&q(), 2),
            Matrix::unit(&q(), 2, 0, 1),
            int(2),
        );
        let r = validate_pair(&bad);
        assert_eq!(r.passed("twist_relation"), Some(false));
        let zero = WDPair::new(
            GroupSpec::gl(3),
            Matrix::identity(&q(), 3),
            Matrix::zeros(&q(), 3, 3),
            int(5),
        );
        assert!(validate_pair(&zero).ok());
    }

    #[test]
    fn urfs_and_semisimplification() {
        assert!(is_urfs(&tate()));
        let p = WDPair::new(
            GroupSpec::gl(2),
            Matrix::from_ints(&q(), &[vec![2, 1], vec![0, 2]]),
            Matrix::zeros(&q(), 2, 2),
            int(2),
        );
        assert!(!is_urfs(&p));
        let ss = semisimplify(&p).unwrap();
        assert_eq!(ss.s, Matrix::from_ints(&q(), &[vec![2, 0], vec![0, 2]]));
        assert!(is_urfs(&ss));
        let sl = WDPair::new(
            GroupSpec::sl(2),
            Matrix::from_rationals(
                &q(),
                &[
                    vec![int(3), int(0)],
                    vec![int(0), crate::field::rational::rat(1, 3)],
                ],
            )
            .unwrap(),
            Matrix::zeros(&q(), 2, 2),
            int(7),
        );
        assert!(is_urfs(&sl));
        // block(diag(1), [[2,2],[0,2]]) with N mapping the 1-eigenline to the 2-block
        let s3 = Matrix::from_ints(&q(), &[vec![1, 0, 0], vec![0, 2, 2], vec![0, 0, 2]]);
        let n3 = Matrix::unit(&q(), 3, 1, 0);
        let p3 = WDPair::new(GroupSpec::gl(3), s3, n3.clone(), int(2));
        assert!(validate_pair(&p3).ok());
        let ss3 = semisimplify(&p3).unwrap();
        assert_eq!(
            ss3.s,
            Matrix::from_ints(&q(), &[vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 2]])
        );
        assert_eq!(ss3.n, n3);
        assert!(validate_pair(&ss3).ok());
    }

    #[test]
    fn pushforward_examples() {
        let g = GroupSpec::gl(2);
        let wedge = build_rep(&g, &Word::alt(2, Word::Std), 3).unwrap();
        let p = pushforward(&tate(), &wedge).unwrap();
        assert_eq!(p.s, Matrix::from_ints(&q(), &[vec![2]]));
        assert!(p.n.is_zero());
        let tt = build_rep(&g, &Word::tensor(Word::Std, Word::Std), 3).unwrap();
        let p = pushforward(&tate(), &tt).unwrap();
        assert!(p.s.is_diagonal());
        let diag: Vec<_> = (0..4)
            .map(|i| p.s.get(i, i).as_rational().unwrap())
            .collect();
        assert_eq!(diag, vec![int(1), int(2), int(2), int(4)]);
        assert_eq!(p.n.rank(), 2);
        assert!(validate_pair(&p).ok());
    }

    #[test]
    fn conjugation_and_rescaling() {
        let g = Matrix::from_ints(&q(), &[vec![1, 0], vec![0, 5]]);
        let c = apply_conjugation(&tate(), &g).unwrap();
        assert_eq!(c.n, Matrix::unit(&q(), 2, 1, 0).scale_rational(&int(5)));
        assert_eq!(c.s, tate().s);
        let perm = Matrix::from_ints(&q(), &[vec![0, 1], vec![1, 0]]);
        let p = WDPair::new(
            GroupSpec::gl(2),
            Matrix::from_ints(&q(), &[vec![2, 0], vec![0, 1]]),
            Matrix::unit(&q(), 2, 0, 1),
            int(2),
        );
        let c = apply_conjugation(&p, &perm).unwrap();
        assert_eq!(c, tate());
        let r = rescale_nilpotent(&tate(), &FieldElement::from_int(&q(), 3)).unwrap();
        assert!(validate_pair(&r).ok());
        assert!(matches!(
            rescale_nilpotent(&tate(), &FieldElement::zero(&q())),
            Err(Error::ZeroScale)
        ));
        let sl2 = WDPair {
            group: GroupSpec::sl(2),
            ..tate()
        };
        assert!(matches!(
            apply_conjugation(&sl2, &g),
            Err(Error::NotInGroup)
        ));
    }
}
