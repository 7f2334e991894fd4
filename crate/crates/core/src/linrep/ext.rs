use serde::Serialize;

use super::{arrow_head, decompose, realize, FpMatrix, MatRep, OracleError};
use crate::nakayama::{AlgebraSpec, Indec};

/// Middle terms of the nonsplit extensions `0 -> sub -> X -> quot -> 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Extensions {
    /// Dimension of `Ext^1(quot, sub)` over `F_p`.
    pub dim: usize,
    /// One decomposed middle term per enumerated nonzero class.
    pub middles: Vec<Vec<Indec>>,
    /// Set when `p^dim - 1` exceeded the class cap and only a prefix was visited.
    pub truncated: bool,
}

/// Enumerates nonzero extension classes of `quot` by `sub`.
///
/// `X` is built on `sub ⊕ quot` with arrow matrices `[[B_a, C_a], [0, T_a]]`.
/// The relation paths make the cochain `C` satisfy linear equations (each
/// path product has an off-diagonal block linear in `C`); classes are
/// cocycles modulo the coboundaries `C_a = B_a h_v - h_{v+1} T_a`.
///
/// Middle terms are split with [`decompose`], so on cyclic algebras this
/// fails with [`OracleError::Unsupported`] whenever that does.
pub fn extension_middles(
    algebra: &AlgebraSpec,
    sub: Indec,
    quot: Indec,
    p: u32,
    max_classes: usize,
) -> Result<Extensions, OracleError> {
    let b = realize(algebra, &[sub], p)?;
    let t = realize(algebra, &[quot], p)?;
    let n = algebra.n();
    let arrows = b.mats.len();

    // Unknown layout: C_a is dims_b[head] x dims_t[a], stored row-major.
    let mut c_offsets = vec![0];
    for a in 0..arrows {
        let head = arrow_head(algebra, a);
        c_offsets.push(c_offsets[a] + b.dims[head] * t.dims[a]);
    }
    let c_len = c_offsets[arrows];
    let cochain = |vec: &[u32]| -> Vec<FpMatrix> {
        (0..arrows)
            .map(|a| {
                let head = arrow_head(algebra, a);
                let cols = t.dims[a];
                FpMatrix::from_fn(p, b.dims[head], cols, |r, c| vec[c_offsets[a] + r * cols + c])
            })
            .collect()
    };

    // Cocycle condition: every relation path's off-diagonal block vanishes.
    let unit = |k: usize| {
        let mut v = vec![0u32; c_len];
        v[k] = 1;
        v
    };
    let mut constraint_cols: Vec<Vec<u32>> = Vec::with_capacity(c_len);
    for k in 0..c_len {
        let cs = cochain(&unit(k));
        let mut col = Vec::new();
        for v in 0..n {
            let len = algebra.projective_len(v + 1);
            if let Some(off) = off_diagonal_along(&b, &t, &cs, v, len) {
                for r in 0..off.rows() {
                    for c in 0..off.cols() {
                        col.push(off.get(r, c));
                    }
                }
            }
        }
        constraint_cols.push(col);
    }
    let constraint_rows = constraint_cols.first().map_or(0, Vec::len);
    let cocycles = if constraint_rows == 0 {
        FpMatrix::identity(p, c_len)
    } else {
        FpMatrix::from_columns(p, constraint_rows, &constraint_cols).nullspace()
    };

    // Coboundaries from h_v: quot_v -> sub_v.
    let mut coboundaries: Vec<Vec<u32>> = Vec::new();
    for v in 0..n {
        for r in 0..b.dims[v] {
            for c in 0..t.dims[v] {
                let mut h: Vec<FpMatrix> =
                    (0..n).map(|w| FpMatrix::zeros(p, b.dims[w], t.dims[w])).collect();
                h[v].set(r, c, 1);
                let mut vec = vec![0u32; c_len];
                for a in 0..arrows {
                    let head = arrow_head(algebra, a);
                    let delta = b.mats[a].mul(&h[a]).sub(&h[head].mul(&t.mats[a]));
                    let cols = t.dims[a];
                    for rr in 0..delta.rows() {
                        for cc in 0..cols {
                            vec[c_offsets[a] + rr * cols + cc] = delta.get(rr, cc);
                        }
                    }
                }
                coboundaries.push(vec);
            }
        }
    }

    // Extend a basis of the coboundaries by cocycles to pick class representatives.
    let mut span = coboundaries;
    let mut base_rank = rank_of(p, c_len, &span);
    let mut reps = Vec::new();
    for k in 0..cocycles.cols() {
        let z = cocycles.column(k);
        span.push(z.clone());
        let r = rank_of(p, c_len, &span);
        if r > base_rank {
            base_rank = r;
            reps.push(z);
        } else {
            span.pop();
        }
    }

    let dim = reps.len();
    let total = (p as u128).checked_pow(dim as u32).map(|t| t - 1);
    let truncated = total.is_none_or(|t| t > max_classes as u128);
    let visit = total.map_or(max_classes, |t| t.min(max_classes as u128) as usize);

    let mut middles = Vec::with_capacity(visit);
    for code in 1..=visit {
        let mut rest = code;
        let mut class = vec![0u32; c_len];
        for rep in &reps {
            let coeff = (rest % p as usize) as u32;
            rest /= p as usize;
            for (acc, &x) in class.iter_mut().zip(rep) {
                *acc = ((*acc as u64 + coeff as u64 * x as u64) % p as u64) as u32;
            }
        }
        let cs = cochain(&class);
        let dims: Vec<usize> = (0..n).map(|v| b.dims[v] + t.dims[v]).collect();
        let mats = (0..arrows)
            .map(|a| FpMatrix::block_upper(&b.mats[a], &cs[a], &t.mats[a]))
            .collect();
        let x = MatRep::from_parts(algebra, p, dims, mats)?;
        middles.push(decompose(&x)?);
    }
    Ok(Extensions { dim, middles, truncated })
}

fn rank_of(p: u32, len: usize, vectors: &[Vec<u32>]) -> usize {
    if vectors.is_empty() || len == 0 {
        return 0;
    }
    FpMatrix::from_columns(p, len, vectors).rank()
}

/// Off-diagonal block of the product of `len` block-triangular arrow matrices
/// starting at vertex `v`, or `None` if the path leaves the quiver.
fn off_diagonal_along(
    b: &MatRep,
    t: &MatRep,
    cs: &[FpMatrix],
    v: usize,
    len: usize,
) -> Option<FpMatrix> {
    let p = b.p;
    let mut t_acc = FpMatrix::identity(p, t.dims[v]);
    let mut off = FpMatrix::zeros(p, b.dims[v], t.dims[v]);
    let mut at = v;
    for _ in 0..len {
        if at >= b.mats.len() {
            return None;
        }
        off = b.mats[at].mul(&off).add(&cs[at].mul(&t_acc));
        t_acc = t.mats[at].mul(&t_acc);
        at = arrow_head(&b.algebra, at);
    }
    Some(off)
}
