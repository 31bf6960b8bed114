//! Tensor-constructed representations `r: G → GL(W)`.
//!
//! Basis conventions: `V ⊗ W` uses the Kronecker ordering (index `i·dim W + j`);
//! `Sym^k` uses sorted index tuples `i₁ ≤ … ≤ i_k` in lexicographic order,
//! the basis vector being the plain monomial `e_{i₁}⋯e_{i_k}` (no factorial
//! normalisation); `Alt^k` uses strictly increasing tuples in lexicographic
//! order with basis `e_{i₁}∧…∧e_{i_k}`; `V ⊕ W` is block diagonal.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::linalg::Matrix;

use super::word::Word;
use super::GroupSpec;

/// A representation of a group given by a construction word.
#[derive(Clone, Debug, PartialEq)]
pub struct Rep {
    source: GroupSpec,
    word: Word,
    dim: usize,
}

impl Rep {
    pub fn source(&self) -> &GroupSpec {
        &self.source
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Matrix of `g` acting on the constructed space.
    pub fn group_action(&self, g: &Matrix) -> Result<Matrix> {
        self.check(g)?;
        group_action(&self.word, g)
    }

    /// Matrix of `X ∈ Lie(G)` acting on the constructed space (a derivation).
    pub fn lie_action(&self, x: &Matrix) -> Result<Matrix> {
        self.check(x)?;
        Ok(lie_action(&self.word, x))
    }

    fn check(&self, m: &Matrix) -> Result<()> {
        let n = self.source.n();
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "representation of a rank-{n} group applied to a {}x{} matrix",
                m.rows(),
                m.cols()
            )));
        }
        Ok(())
    }
}

/// Builds the representation `word` of `g`, rejecting words above `max_degree`.
pub fn build_rep(g: &GroupSpec, word: &Word, max_degree: usize) -> Result<Rep> {
    let degree = word.degree();
    if degree > max_degree {
        return Err(Error::DegreeBudgetExceeded {
            degree,
            budget: max_degree,
        });
    }
    Ok(Rep {
        source: g.clone(),
        word: word.clone(),
        dim: word.dim(g.n()),
    })
}

/// Deterministic spanning family of representations up to total degree `bound`:
/// `V`, `V*`, then for each `k = 2..=bound` the powers `Sym^k` and `Alt^k`
/// (`k ≤ n`) of `V` and `V*`, then tensor products of pairs from that list
/// whose degrees sum to at most `bound`. Duplicate words are dropped.
pub fn rep_family(g: &GroupSpec, bound: usize) -> Vec<Rep> {
    let n = g.n();
    let mut base = vec![Word::Std, Word::Dual];
    for k in 2..=bound {
        for w in [Word::Std, Word::Dual] {
            base.push(Word::sym(k, w.clone()));
            if k <= n {
                base.push(Word::alt(k, w));
            }
        }
    }
    let mut words = base.clone();
    for (i, a) in base.iter().enumerate() {
        for b in &base[i..] {
            if a.degree() + b.degree() <= bound {
                words.push(Word::tensor(a.clone(), b.clone()));
            }
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    words
        .into_iter()
        .filter(|w| seen.insert(w.clone()))
        .map(|w| Rep {
            source: g.clone(),
            dim: w.dim(n),
            word: w,
        })
        .collect()
}

/// Sorted index tuples of length `k` from `0..n`, non-decreasing when
/// `repeat`, strictly increasing otherwise, in lexicographic order.
pub fn index_tuples(n: usize, k: usize, repeat: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(
        n: usize,
        k: usize,
        start: usize,
        repeat: bool,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, if repeat { i } else { i + 1 }, repeat, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, repeat, &mut cur, &mut out);
    out
}

pub(crate) fn group_action(word: &Word, g: &Matrix) -> Result<Matrix> {
    Ok(match word {
        Word::Std => g.clone(),
        Word::Dual => g.inverse()?.transpose(),
        Word::Tensor(a, b) => group_action(a, g)?.kron(&group_action(b, g)?),
        Word::Sum(a, b) => group_action(a, g)?.direct_sum(&group_action(b, g)?),
        Word::Sym(k, a) => sym_power(&group_action(a, g)?, *k),
        Word::Alt(k, a) => alt_power(&group_action(a, g)?, *k),
    })
}

pub(crate) fn lie_action(word: &Word, x: &Matrix) -> Matrix {
    match word {
        Word::Std => x.clone(),
        Word::Dual => -&x.transpose(),
        Word::Tensor(a, b) => {
            let xa = lie_action(a, x);
            let xb = lie_action(b, x);
            let ia = Matrix::identity(x.field(), xa.rows());
            let ib = Matrix::identity(x.field(), xb.rows());
            &xa.kron(&ib) + &ia.kron(&xb)
        }
        Word::Sum(a, b) => lie_action(a, x).direct_sum(&lie_action(b, x)),
        Word::Sym(k, a) => sym_derivation(&lie_action(a, x), *k),
        Word::Alt(k, a) => alt_derivation(&lie_action(a, x), *k),
    }
}

fn position_map(tuples: &[Vec<usize>]) -> BTreeMap<Vec<usize>, usize> {
    tuples
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect()
}

/// `Sym^k(m)`: the image of `e_{i₁}⋯e_{i_k}` is `∏ⱼ (m e_{iⱼ})` expanded in monomials.
pub fn sym_power(m: &Matrix, k: usize) -> Matrix {
    let n = m.rows();
    let field = m.field();
    let tuples = index_tuples(n, k, true);
    let pos = position_map(&tuples);
    let mut out = Matrix::zeros(field, tuples.len(), tuples.len());
    for (col, t) in tuples.iter().enumerate() {
        let mut poly: BTreeMap<Vec<usize>, FieldElement> = BTreeMap::new();
        poly.insert(Vec::new(), FieldElement::one(field));
        for &i in t {
            let mut next: BTreeMap<Vec<usize>, FieldElement> = BTreeMap::new();
            for (mono, c) in &poly {
                for a in 0..n {
                    let e = m.get(a, i);
                    if e.is_zero() {
                        continue;
                    }
                    let mut nm = mono.clone();
                    let at = nm.partition_point(|&v| v <= a);
                    nm.insert(at, a);
                    let v = c * e;
                    next.entry(nm).and_modify(|x| *x = &*x + &v).or_insert(v);
                }
            }
            poly = next;
        }
        for (mono, c) in poly {
            if !c.is_zero() {
                out.set(pos[&mono], col, c);
            }
        }
    }
    out
}

/// `Alt^k(m)`: entries are the `k × k` minors `det m[I, J]`.
pub fn alt_power(m: &Matrix, k: usize) -> Matrix {
    let n = m.rows();
    let field = m.field();
    let tuples = index_tuples(n, k, false);
    Matrix::from_fn(field, tuples.len(), tuples.len(), |r, c| {
        let sub = Matrix::from_fn(field, k, k, |i, j| {
            m.get(tuples[r][i], tuples[c][j]).clone()
        });
        sub.det()
    })
}

fn sym_derivation(x: &Matrix, k: usize) -> Matrix {
    let n = x.rows();
    let field = x.field();
    let tuples = index_tuples(n, k, true);
    let pos = position_map(&tuples);
    let mut out = Matrix::zeros(field, tuples.len(), tuples.len());
    for (col, t) in tuples.iter().enumerate() {
        for j in 0..k {
            for a in 0..n {
                let e = x.get(a, t[j]);
                if e.is_zero() {
                    continue;
                }
                let mut nm = t.clone();
                nm[j] = a;
                nm.sort_unstable();
                let row = pos[&nm];
                let v = out.get(row, col) + e;
                out.set(row, col, v);
            }
        }
    }
    out
}

fn alt_derivation(x: &Matrix, k: usize) -> Matrix {
    let n = x.rows();
    let field = x.field();
    let tuples = index_tuples(n, k, false);
    let pos = position_map(&tuples);
    let mut out = Matrix::zeros(field, tuples.len(), tuples.len());
    for (col, t) in tuples.iter().enumerate() {
        for j in 0..k {
            for a in 0..n {
                let e = x.get(a, t[j]);
                if e.is_zero() || (a != t[j] && t.contains(&a)) {
                    continue;
                }
                let mut nm = t.clone();
                nm[j] = a;
                // sign of the sorting permutation
                let mut sign = 1;
                for p in 0..k {
                    for q in p + 1..k {
                        if nm[p] > nm[q] {
                            sign = -sign;
                        }
                    }
                }
                nm.sort_unstable();
                let row = pos[&nm];
                let v = if sign > 0 {
                    out.get(row, col) + e
                } else {
                    out.get(row, col) - e
                };
                out.set(row, col, v);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, NumberField};
    use crate::linalg::exp_nilpotent;

    fn q() -> Field {
        NumberField::rationals()
    }

    #[test]
    fn wedge_square_of_2x2_is_det() {
        let g = Matrix::from_ints(&q(), &[vec![2, 3], vec![5, 7]]);
        let r = build_rep(&GroupSpec::gl(2), &Word::alt(2, Word::Std), 3).unwrap();
        let m = r.group_action(&g).unwrap();
        assert_eq!(m.rows(), 1);
        assert_eq!(m.get(0, 0), &g.det());
    }

    #[test]
    fn std_tensor_dual_lie_action() {
        let x = Matrix::from_ints(&q(), &[vec![1, 2], vec![3, 4]]);
        let r = build_rep(&GroupSpec::gl(2), &Word::tensor(Word::Std, Word::Dual), 3).unwrap();
        let i = Matrix::identity(&q(), 2);
        let expected = &x.kron(&i) - &i.kron(&x.transpose());
        assert_eq!(r.lie_action(&x).unwrap(), expected);
    }

    #[test]
    fn actions_are_compatible() {
        let g = Matrix::from_ints(&q(), &[vec![1, 1, 0], vec![0, 2, 1], vec![1, 0, 1]]);
        let h = Matrix::from_ints(&q(), &[vec![1, 0, 2], vec![0, 1, 0], vec![-1, 0, -1]]);
        let x = Matrix::from_ints(&q(), &[vec![0, 1, 2], vec![0, 0, -1], vec![0, 0, 0]]);
        let y = Matrix::from_ints(&q(), &[vec![1, 0, 2], vec![3, -1, 0], vec![0, 1, 0]]);
        let gl3 = GroupSpec::gl(3);
        for w in [
            "Sym^2(V)",
            "Sym^3(V*)",
            "Alt^2(V)",
            "(V ⊗ Alt^2(V*))",
            "(V ⊕ Sym^2(V))",
            "Alt^2(Sym^2(V))",
        ] {
            let r = build_rep(&gl3, &Word::parse(w).unwrap(), 6).unwrap();
            let gh = r.group_action(&(&g * &h)).unwrap();
            assert_eq!(
                gh,
                &r.group_action(&g).unwrap() * &r.group_action(&h).unwrap(),
                "{w}"
            );
            assert!(r
                .group_action(&Matrix::identity(&q(), 3))
                .unwrap()
                .is_identity());
            let ex = exp_nilpotent(&x).unwrap();
            assert_eq!(
                r.group_action(&ex).unwrap(),
                exp_nilpotent(&r.lie_action(&x).unwrap()).unwrap(),
                "{w}"
            );
            let lb = r.lie_action(&x.bracket(&y)).unwrap();
            assert_eq!(
                lb,
                r.lie_action(&x)
                    .unwrap()
                    .bracket(&r.lie_action(&y).unwrap()),
                "{w}"
            );
        }
    }

    #[test]
    fn family_sizes() {
        let f = rep_family(&GroupSpec::gl(2), 1);
        assert_eq!(
            f.iter().map(|r| r.word().clone()).collect::<Vec<_>>(),
            vec![Word::Std, Word::Dual]
        );
        assert!(rep_family(&GroupSpec::gl(3), 2)
            .iter()
            .all(|r| r.dim() <= 9));
        let so6 = GroupSpec::so_identity(&q(), 6);
        assert!(rep_family(&so6, 2)
            .iter()
            .any(|r| r.word() == &Word::alt(2, Word::Std) && r.dim() == 15));
        assert!(matches!(
            build_rep(&GroupSpec::gl(2), &Word::sym(4, Word::Std), 3),
            Err(Error::DegreeBudgetExceeded { .. })
        ));
    }
}
