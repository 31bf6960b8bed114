//! Jordan chains of nilpotent matrices.

use crate::field::FieldElement;
use crate::linalg::Matrix;

/// Jordan chains `[v, Nv, …, N^{m−1}v]` of a nilpotent matrix, longest first.
/// The vectors of all chains together form a basis.
pub fn jordan_chains(n: &Matrix) -> Vec<Vec<Vec<FieldElement>>> {
    let dim = n.rows();
    let field = n.field();
    // kernels of N^k until the whole space
    let mut kers: Vec<Vec<Vec<FieldElement>>> = vec![Vec::new()];
    let mut power = Matrix::identity(field, dim);
    while kers.last().unwrap().len() < dim {
        power = &power * n;
        kers.push(power.kernel());
        if kers.len() > dim + 1 {
            break;
        }
    }
    let m = kers.len() - 1;
    let mut chains: Vec<Vec<Vec<FieldElement>>> = Vec::new();
    for k in (1..=m).rev() {
        let mut span: Vec<Vec<FieldElement>> = kers[k - 1].clone();
        for c in &chains {
            // the vector of this chain lying at level k
            let len = c.len();
            span.push(c[len - k].clone());
        }
        let mut rank = rank_of(field, dim, &span);
        for b in &kers[k] {
            span.push(b.clone());
            let r = rank_of(field, dim, &span);
            if r > rank {
                rank = r;
                let mut chain = vec![b.clone()];
                for _ in 1..k {
                    let next = n.mul_vec(chain.last().unwrap());
                    chain.push(next);
                }
                chains.push(chain);
            } else {
                span.pop();
            }
        }
    }
    chains
}

/// Jordan type (block sizes, non-increasing) of a nilpotent matrix.
pub fn nilpotent_partition(n: &Matrix) -> Vec<usize> {
    jordan_chains(n).iter().map(|c| c.len()).collect()
}

fn rank_of(field: &crate::field::Field, dim: usize, vecs: &[Vec<FieldElement>]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    Matrix::from_columns(field, dim, vecs).rank()
}
