//! The complete `GL_n`-conjugacy invariant of a URFS pair: the spectrum of
//! `s` grouped into `q`-chains, and on each chain the interval
//! multiplicities of the graded nilpotent map.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, Rational};
use crate::linalg::{roots_in_field, Matrix};
use crate::wd::{is_urfs, WDPair};

/// One `q`-chain `λ, qλ, …, q^kλ` with its interval multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    pub eigenvalues: Vec<FieldElement>,
    /// `m[i][j − i]` counts indecomposable summands supported on `i..=j`.
    pub multiplicities: Vec<Vec<usize>>,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// `m[i, j]` for `i ≤ j` (zero outside the chain).
    pub fn m(&self, i: usize, j: usize) -> usize {
        if i > j || j >= self.len() {
            return 0;
        }
        self.multiplicities[i][j - i]
    }

    fn sort_key(&self) -> Vec<Rational> {
        self.eigenvalues[0].coords().to_vec()
    }
}

/// Chains sorted by their first eigenvalue.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainInvariant {
    pub q: Rational,
    pub chains: Vec<Chain>,
}

impl ChainInvariant {
    /// The invariant with a field automorphism applied to every eigenvalue.
    pub fn map_eigenvalues(&self, f: impl Fn(&FieldElement) -> FieldElement) -> ChainInvariant {
        let mut chains: Vec<Chain> = self
            .chains
            .iter()
            .map(|c| Chain {
                eigenvalues: c.eigenvalues.iter().map(&f).collect(),
                multiplicities: c.multiplicities.clone(),
            })
            .collect();
        chains.sort_by_key(|c| c.sort_key());
        ChainInvariant {
            q: self.q.clone(),
            chains,
        }
    }

    /// Dimension of the underlying space.
    pub fn dim(&self) -> usize {
        self.chains
            .iter()
            .map(|c| {
                (0..c.len())
                    .flat_map(|i| (i..c.len()).map(move |j| (i, j)))
                    .map(|(i, j)| (j - i + 1) * c.m(i, j))
                    .sum::<usize>()
            })
            .sum()
    }
}

impl fmt::Display for ChainInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.chains.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            let eig: Vec<String> = c.eigenvalues.iter().map(|e| e.to_string()).collect();
            write!(f, "chain ({})", eig.join(", "))?;
            for i in 0..c.len() {
                for j in i..c.len() {
                    if c.m(i, j) > 0 {
                        write!(f, " m[{i},{j}]={}", c.m(i, j))?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Distinct eigenvalues with multiplicities; errors if the spectrum does not
/// split over the field.
pub fn split_spectrum(m: &Matrix) -> Result<Vec<(FieldElement, usize)>> {
    let roots = roots_in_field(&m.charpoly());
    if roots.len() != m.rows() {
        return Err(Error::NonSplitSpectrum(format!(
            "only {} of {} eigenvalues lie in the field",
            roots.len(),
            m.rows()
        )));
    }
    let mut out: Vec<(FieldElement, usize)> = Vec::new();
    for r in roots {
        match out.iter_mut().find(|(x, _)| *x == r) {
            Some((_, k)) => *k += 1,
            None => out.push((r, 1)),
        }
    }
    Ok(out)
}

/// The chain invariant of a URFS pair (any group; the standard
/// representation is used).
pub fn chain_invariant(p: &WDPair) -> Result<ChainInvariant> {
    if !is_urfs(p) {
        return Err(Error::NotUrfs);
    }
    let field = p.field().clone();
    let n = p.dim();
    let spectrum = split_spectrum(&p.s)?;
    let q = FieldElement::from_rational(&field, p.q.clone());
    let qi = q.inv()?;
    let present = |x: &FieldElement| spectrum.iter().any(|(e, _)| e == x);
    let mut chains = Vec::new();
    for (lambda, _) in &spectrum {
        if present(&(lambda * &qi)) {
            continue; // not the start of its chain
        }
        let mut eig = vec![lambda.clone()];
        loop {
            let next = eig.last().unwrap() * &q;
            if !present(&next) {
                break;
            }
            eig.push(next);
        }
        // eigenspace bases
        let spaces: Vec<Matrix> = eig
            .iter()
            .map(|e| {
                let basis = (&p.s - &Matrix::scalar(&field, n, e)).kernel();
                Matrix::from_columns(&field, n, &basis)
            })
            .collect();
        let k = eig.len();
        // r[i][j] = rank of N^{j-i} on V_i, for i <= j
        let mut r = vec![vec![0usize; k]; k];
        for i in 0..k {
            let mut img = spaces[i].clone();
            r[i][i] = img.cols();
            for j in i + 1..k {
                img = &p.n * &img;
                r[i][j] = img.rank();
            }
        }
        let rr = |i: isize, j: usize| -> isize {
            if i < 0 || j >= k || (i as usize) > j {
                0
            } else {
                r[i as usize][j] as isize
            }
        };
        let mut mult = Vec::with_capacity(k);
        for i in 0..k {
            let mut row = Vec::with_capacity(k - i);
            for j in i..k {
                let ii = i as isize;
                let v = rr(ii, j) - rr(ii - 1, j) - rr(ii, j + 1) + rr(ii - 1, j + 1);
                debug_assert!(v >= 0);
                row.push(v.max(0) as usize);
            }
            mult.push(row);
        }
        chains.push(Chain {
            eigenvalues: eig,
            multiplicities: mult,
        });
    }
    chains.sort_by_key(|c| c.sort_key());
    Ok(ChainInvariant {
        q: p.q.clone(),
        chains,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rational::int;
    use crate::field::NumberField;
    use crate::groups::GroupSpec;

    fn pair(s: &[i64], n: Matrix) -> WDPair {
        let q = NumberField::rationals();
        let d: Vec<FieldElement> = s.iter().map(|&x| FieldElement::from_int(&q, x)).collect();
        WDPair::new(GroupSpec::gl(s.len()), Matrix::diagonal(&q, &d), n, int(2))
    }

    #[test]
    fn examples() {
        let q = NumberField::rationals();
        let inv = chain_invariant(&pair(&[1, 2], Matrix::unit(&q, 2, 1, 0))).unwrap();
        assert_eq!(inv.chains.len(), 1);
        let c = &inv.chains[0];
        assert_eq!((c.m(0, 0), c.m(0, 1), c.m(1, 1)), (0, 1, 0));
        let inv = chain_invariant(&pair(&[1, 2], Matrix::zeros(&q, 2, 2))).unwrap();
        let c = &inv.chains[0];
        assert_eq!((c.m(0, 0), c.m(0, 1), c.m(1, 1)), (1, 0, 1));
        let inv = chain_invariant(&pair(&[1, 3], Matrix::zeros(&q, 2, 2))).unwrap();
        assert_eq!(inv.chains.len(), 2);
        assert!(inv.chains.iter().all(|c| c.len() == 1 && c.m(0, 0) == 1));
        assert_eq!(inv.dim(), 2);
    }
}
