use num_rational::Ratio;

use super::{hom_basis_dim, realize, MatRep, OracleError};
use crate::nakayama::{Indec, Shape};

/// Splits a representation into indecomposables, returned as a sorted multiset.
///
/// Linear quivers use the interval rank formula
/// `r(i,j) - r(i-1,j) - r(i,j+1) + r(i-1,j+1)` where `r(i,j)` is the rank of
/// the path map from `i` to `j`. Cyclic quivers solve the linear system
/// `dim Hom(M_k, X) = sum_j mult_j dim Hom(M_k, M_j)` over the rationals,
/// and give up with [`OracleError::Unsupported`] when it is singular.
pub fn decompose(x: &MatRep) -> Result<Vec<Indec>, OracleError> {
    let out = match x.algebra.shape() {
        Shape::Linear => decompose_linear(x)?,
        Shape::Cyclic => decompose_by_homs(x)?,
    };
    let mut dims = vec![0usize; x.algebra.n()];
    for &m in &out {
        for (v, d) in x.algebra.dim_vector(m).into_iter().enumerate() {
            dims[v] += d;
        }
    }
    if dims != x.dims {
        return Err(OracleError::Inconsistent(format!(
            "summands have dimension vector {dims:?}, module has {:?}",
            x.dims
        )));
    }
    Ok(out)
}

fn decompose_linear(x: &MatRep) -> Result<Vec<Indec>, OracleError> {
    let n = x.algebra.n();
    // rank[i][j] for 1-based i <= j, zero outside 1..=n.
    let mut rank = vec![vec![0i64; n + 2]; n + 2];
    for i in 1..=n {
        for j in i..=n {
            let m = x.path_map(i - 1, j - i).expect("path inside linear quiver");
            rank[i][j] = m.rank() as i64;
        }
    }
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            let mult = rank[i][j] - rank[i - 1][j] - rank[i][j + 1] + rank[i - 1][j + 1];
            if mult < 0 {
                return Err(OracleError::Inconsistent(format!(
                    "negative multiplicity for interval [{i},{j}]"
                )));
            }
            if mult > 0 {
                let m = Indec::new(i, j - i + 1);
                if !x.algebra.contains(m) {
                    return Err(OracleError::InvalidIndec(m));
                }
                out.extend(std::iter::repeat_n(m, mult as usize));
            }
        }
    }
    Ok(out)
}

fn decompose_by_homs(x: &MatRep) -> Result<Vec<Indec>, OracleError> {
    let indecs = x.algebra.indecomposables();
    let reps: Vec<MatRep> = indecs
        .iter()
        .map(|&m| realize(&x.algebra, &[m], x.p))
        .collect::<Result<_, _>>()?;
    let size = indecs.len();
    let mut system: Vec<Vec<Ratio<i64>>> = Vec::with_capacity(size);
    for k in 0..size {
        let mut row = Vec::with_capacity(size + 1);
        for j in 0..size {
            row.push(Ratio::from_integer(hom_basis_dim(&reps[k], &reps[j])? as i64));
        }
        row.push(Ratio::from_integer(hom_basis_dim(&reps[k], x)? as i64));
        system.push(row);
    }
    let solution = solve_rational(system).ok_or(OracleError::Unsupported)?;
    let mut out = Vec::new();
    for (m, mult) in indecs.into_iter().zip(solution) {
        if !mult.is_integer() || mult < Ratio::from_integer(0) {
            return Err(OracleError::Inconsistent(format!(
                "non-integral multiplicity {mult} for {m}"
            )));
        }
        out.extend(std::iter::repeat_n(m, mult.to_integer() as usize));
    }
    Ok(out)
}

/// Gauss-Jordan on an augmented square system; `None` when singular.
fn solve_rational(mut a: Vec<Vec<Ratio<i64>>>) -> Option<Vec<Ratio<i64>>> {
    let n = a.len();
    let zero = Ratio::from_integer(0);
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col] != zero)?;
        a.swap(col, pivot);
        let inv = Ratio::from_integer(1) / a[col][col];
        for c in col..=n {
            a[col][c] *= inv;
        }
        for r in 0..n {
            if r != col && a[r][col] != zero {
                let factor = a[r][col];
                for c in col..=n {
                    let delta = factor * a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n]).collect())
}
