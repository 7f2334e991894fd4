//! Matrix representations of Nakayama modules over `F_p`.
//!
//! This is the independent route: every module is an explicit tuple of
//! vector spaces and arrow matrices, and Hom spaces, kernels, cokernels and
//! extensions are obtained by solving linear systems. Nothing here consults
//! the combinatorial rules of [`crate::nakayama`].

mod decompose;
mod ext;
pub mod matrix;

use thiserror::Error;

use crate::nakayama::{AlgebraSpec, Indec, Shape};

pub use decompose::decompose;
pub use ext::{extension_middles, Extensions};
pub use matrix::{is_prime, FpMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("operation not supported for {0} quivers")]
    UnsupportedShape(&'static str),
    #[error("{0} is not a prime below 65536")]
    NotPrime(u32),
    #[error("representations live over different algebras or fields")]
    ShapeMismatch,
    #[error("map does not commute with the arrow at vertex {0}")]
    NotIntertwiner(usize),
    #[error("{0} is not an indecomposable module of this algebra")]
    InvalidIndec(Indec),
    #[error("hom-count system is singular; cannot decompose")]
    Unsupported,
    #[error("representation is inconsistent with the algebra: {0}")]
    Inconsistent(String),
}

/// A finite-dimensional representation of the bound quiver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatRep {
    algebra: AlgebraSpec,
    p: u32,
    dims: Vec<usize>,
    /// `mats[a]` is the map along arrow `a: a -> a+1` (0-based vertices).
    mats: Vec<FpMatrix>,
}

/// Component maps `comps[v]: src_v -> dst_v` of a candidate morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Intertwiner {
    pub comps: Vec<FpMatrix>,
}

fn arrow_count(algebra: &AlgebraSpec) -> usize {
    match algebra.shape() {
        Shape::Linear => algebra.n() - 1,
        Shape::Cyclic => algebra.n(),
    }
}

fn arrow_head(algebra: &AlgebraSpec, a: usize) -> usize {
    (a + 1) % algebra.n()
}

fn check_prime(p: u32) -> Result<(), OracleError> {
    if p < matrix::MAX_PRIME && is_prime(p) {
        Ok(())
    } else {
        Err(OracleError::NotPrime(p))
    }
}

impl MatRep {
    pub fn algebra(&self) -> &AlgebraSpec {
        &self.algebra
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn arrow(&self, a: usize) -> &FpMatrix {
        &self.mats[a]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn zero(algebra: &AlgebraSpec, p: u32) -> Self {
        let n = algebra.n();
        Self {
            algebra: algebra.clone(),
            p,
            dims: vec![0; n],
            mats: (0..arrow_count(algebra)).map(|_| FpMatrix::zeros(p, 0, 0)).collect(),
        }
    }

    /// Builds a representation from raw data, checking matrix shapes and
    /// that every relation path acts as zero.
    pub fn from_parts(
        algebra: &AlgebraSpec,
        p: u32,
        dims: Vec<usize>,
        mats: Vec<FpMatrix>,
    ) -> Result<Self, OracleError> {
        check_prime(p)?;
        if dims.len() != algebra.n() || mats.len() != arrow_count(algebra) {
            return Err(OracleError::ShapeMismatch);
        }
        for (a, m) in mats.iter().enumerate() {
            let head = arrow_head(algebra, a);
            if m.p() != p || m.rows() != dims[head] || m.cols() != dims[a] {
                return Err(OracleError::ShapeMismatch);
            }
        }
        let rep = Self { algebra: algebra.clone(), p, dims, mats };
        rep.check_relations()?;
        Ok(rep)
    }

    /// Composite map along the path of `len` arrows starting at vertex `v`
    /// (0-based), or `None` if the path leaves a linear quiver.
    pub fn path_map(&self, v: usize, len: usize) -> Option<FpMatrix> {
        let mut acc = FpMatrix::identity(self.p, self.dims[v]);
        let mut at = v;
        for _ in 0..len {
            if at >= self.mats.len() {
                return None;
            }
            acc = self.mats[at].mul(&acc);
            at = arrow_head(&self.algebra, at);
        }
        Some(acc)
    }

    fn check_relations(&self) -> Result<(), OracleError> {
        for v in 0..self.algebra.n() {
            let c = self.algebra.projective_len(v + 1);
            if let Some(m) = self.path_map(v, c) {
                if !m.is_zero() {
                    return Err(OracleError::Inconsistent(format!(
                        "relation path of length {c} from vertex {} acts nonzero",
                        v + 1
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &MatRep) -> Result<MatRep, OracleError> {
        if self.algebra != other.algebra || self.p != other.p {
            return Err(OracleError::ShapeMismatch);
        }
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| {
                let zero = FpMatrix::zeros(self.p, a.rows(), b.cols());
                FpMatrix::block_upper(a, &zero, b)
            })
            .collect();
        Ok(MatRep { algebra: self.algebra.clone(), p: self.p, dims, mats })
    }
}

/// Realizes a direct sum of indecomposables with 0/1 shift matrices.
///
/// The basis of `M(i, l)` is `e_0, ..., e_{l-1}` with `e_k` at vertex
/// `i + k`, and each arrow sends `e_k` to `e_{k+1}`.
pub fn realize(algebra: &AlgebraSpec, summands: &[Indec], p: u32) -> Result<MatRep, OracleError> {
    check_prime(p)?;
    let n = algebra.n();
    // basis[v] lists (summand, position) pairs living at vertex v.
    let mut basis: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (s, &m) in summands.iter().enumerate() {
        if !algebra.contains(m) {
            return Err(OracleError::InvalidIndec(m));
        }
        for k in 0..m.len {
            let v = algebra.step(m.top, k).ok_or(OracleError::InvalidIndec(m))?;
            basis[v - 1].push((s, k));
        }
    }
    let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
    let mats = (0..arrow_count(algebra))
        .map(|a| {
            let head = arrow_head(algebra, a);
            let mut m = FpMatrix::zeros(p, dims[head], dims[a]);
            for (col, &(s, k)) in basis[a].iter().enumerate() {
                if k + 1 < summands[s].len {
                    let row = basis[head]
                        .iter()
                        .position(|&e| e == (s, k + 1))
                        .expect("successor basis vector");
                    m.set(row, col, 1);
                }
            }
            m
        })
        .collect();
    MatRep::from_parts(algebra, p, dims, mats)
}

fn check_compatible(x: &MatRep, y: &MatRep) -> Result<(), OracleError> {
    if x.algebra != y.algebra || x.p != y.p {
        Err(OracleError::ShapeMismatch)
    } else {
        Ok(())
    }
}

/// Basis of `Hom(x, y)`, solving `phi_head * x_a = y_a * phi_tail` for every arrow.
pub fn hom_basis(x: &MatRep, y: &MatRep) -> Result<Vec<Intertwiner>, OracleError> {
    check_compatible(x, y)?;
    let p = x.p;
    let n = x.algebra.n();
    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0);
    for v in 0..n {
        offsets.push(offsets[v] + y.dims[v] * x.dims[v]);
    }
    let unknowns = offsets[n];
    // phi_v[r][c] lives at offsets[v] + r * x.dims[v] + c.
    let var = |v: usize, r: usize, c: usize| offsets[v] + r * x.dims[v] + c;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for a in 0..x.mats.len() {
        let (tail, head) = (a, arrow_head(&x.algebra, a));
        let (xa, ya) = (&x.mats[a], &y.mats[a]);
        for r in 0..y.dims[head] {
            for c in 0..x.dims[tail] {
                let mut row = vec![0u32; unknowns];
                for k in 0..x.dims[head] {
                    let coeff = xa.get(k, c);
                    let i = var(head, r, k);
                    row[i] = (row[i] + coeff) % p;
                }
                for k in 0..y.dims[tail] {
                    let coeff = ya.get(r, k);
                    let i = var(tail, k, c);
                    row[i] = (row[i] + p - coeff) % p;
                }
                rows.push(row);
            }
        }
    }
    let basis = if rows.is_empty() {
        FpMatrix::identity(p, unknowns)
    } else {
        FpMatrix::from_fn(p, rows.len(), unknowns, |r, c| rows[r][c]).nullspace()
    };
    Ok((0..basis.cols())
        .map(|k| Intertwiner {
            comps: (0..n)
                .map(|v| {
                    FpMatrix::from_fn(p, y.dims[v], x.dims[v], |r, c| basis.get(var(v, r, c), k))
                })
                .collect(),
        })
        .collect())
}

pub fn hom_basis_dim(x: &MatRep, y: &MatRep) -> Result<usize, OracleError> {
    Ok(hom_basis(x, y)?.len())
}

impl Intertwiner {
    pub fn zero(x: &MatRep, y: &MatRep) -> Self {
        Self {
            comps: (0..x.dims.len())
                .map(|v| FpMatrix::zeros(x.p, y.dims[v], x.dims[v]))
                .collect(),
        }
    }

    pub fn linear_combination(basis: &[Intertwiner], coeffs: &[u32], zero: Intertwiner) -> Self {
        basis.iter().zip(coeffs).fold(zero, |acc, (f, &k)| Intertwiner {
            comps: acc
                .comps
                .iter()
                .zip(&f.comps)
                .map(|(a, b)| a.add(&b.scale(k)))
                .collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(FpMatrix::is_zero)
    }

    pub fn validate(&self, x: &MatRep, y: &MatRep) -> Result<(), OracleError> {
        check_compatible(x, y)?;
        if self.comps.len() != x.dims.len() {
            return Err(OracleError::ShapeMismatch);
        }
        for (v, f) in self.comps.iter().enumerate() {
            if f.rows() != y.dims[v] || f.cols() != x.dims[v] {
                return Err(OracleError::ShapeMismatch);
            }
        }
        for a in 0..x.mats.len() {
            let head = arrow_head(&x.algebra, a);
            if self.comps[head].mul(&x.mats[a]) != y.mats[a].mul(&self.comps[a]) {
                return Err(OracleError::NotIntertwiner(a + 1));
            }
        }
        Ok(())
    }
}

/// Every element of `Hom(x, y)` when there are at most `cap` of them;
/// otherwise the basis together with all pairwise sums.
pub fn hom_elements(x: &MatRep, y: &MatRep, cap: usize) -> Result<Vec<Intertwiner>, OracleError> {
    let basis = hom_basis(x, y)?;
    let d = basis.len() as u32;
    let p = x.p as usize;
    let total = (p as u128).checked_pow(d).filter(|&t| t <= cap as u128);
    let mut out = Vec::new();
    if let Some(total) = total {
        for code in 1..total as usize {
            let mut rest = code;
            let coeffs: Vec<u32> = (0..d)
                .map(|_| {
                    let c = (rest % p) as u32;
                    rest /= p;
                    c
                })
                .collect();
            out.push(Intertwiner::linear_combination(&basis, &coeffs, Intertwiner::zero(x, y)));
        }
    } else {
        for i in 0..basis.len() {
            out.push(basis[i].clone());
            for j in i + 1..basis.len() {
                let mut coeffs = vec![0; basis.len()];
                coeffs[i] = 1;
                coeffs[j] = 1;
                out.push(Intertwiner::linear_combination(&basis, &coeffs, Intertwiner::zero(x, y)));
            }
        }
    }
    Ok(out)
}

/// Kernel and cokernel of `f: x -> y`, with canonical bases coming from
/// reduced echelon forms.
pub fn kernel_cokernel(
    x: &MatRep,
    y: &MatRep,
    f: &Intertwiner,
) -> Result<(MatRep, MatRep), OracleError> {
    f.validate(x, y)?;
    let p = x.p;
    let n = x.algebra.n();
    let kernels: Vec<FpMatrix> = f.comps.iter().map(FpMatrix::nullspace).collect();
    let quotients: Vec<FpMatrix> = f.comps.iter().map(FpMatrix::left_nullspace).collect();
    let sections: Vec<FpMatrix> = quotients
        .iter()
        .map(|q| {
            q.solve(&FpMatrix::identity(p, q.rows()))
                .expect("left null space basis has full row rank")
        })
        .collect();

    let mut ker_mats = Vec::new();
    let mut coker_mats = Vec::new();
    for a in 0..x.mats.len() {
        let head = arrow_head(&x.algebra, a);
        let image = x.mats[a].mul(&kernels[a]);
        let restricted = kernels[head]
            .solve(&image)
            .ok_or_else(|| OracleError::Inconsistent("kernel not arrow-stable".into()))?;
        ker_mats.push(restricted);
        let induced = quotients[head].mul(&y.mats[a]).mul(&sections[a]);
        coker_mats.push(induced);
    }
    let ker_dims = (0..n).map(|v| kernels[v].cols()).collect();
    let coker_dims = (0..n).map(|v| quotients[v].rows()).collect();
    Ok((
        MatRep::from_parts(&x.algebra, p, ker_dims, ker_mats)?,
        MatRep::from_parts(&x.algebra, p, coker_dims, coker_mats)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin2() -> AlgebraSpec {
        AlgebraSpec::lin_a(2).unwrap()
    }

    const S1: Indec = Indec::simple(1);
    const S2: Indec = Indec::simple(2);
    const P1: Indec = Indec::new(1, 2);

    #[test]
    fn realize_small() {
        let a = lin2();
        let s1 = realize(&a, &[S1], 2).unwrap();
        assert_eq!(s1.dims(), &[1, 0]);
        assert_eq!((s1.arrow(0).rows(), s1.arrow(0).cols()), (0, 1));
        let p1 = realize(&a, &[P1], 2).unwrap();
        assert_eq!(p1.dims(), &[1, 1]);
        assert_eq!(p1.arrow(0), &FpMatrix::from_rows(2, &[&[1]]));
        assert_eq!(realize(&a, &[P1, S2], 2).unwrap().dims(), &[1, 2]);
        assert!(realize(&a, &[Indec::new(2, 2)], 2).is_err());
        assert!(realize(&a, &[S1], 4).is_err());
    }

    #[test]
    fn relation_violation_detected() {
        let a: AlgebraSpec = "nakayama:linear:2,2,1".parse().unwrap();
        let one = FpMatrix::from_rows(2, &[&[1]]);
        let err = MatRep::from_parts(&a, 2, vec![1, 1, 1], vec![one.clone(), one]);
        assert!(matches!(err, Err(OracleError::Inconsistent(_))));
    }

    #[test]
    fn hom_dims_by_hand() {
        let a = lin2();
        let r = |m| realize(&a, &[m], 2).unwrap();
        assert_eq!(hom_basis_dim(&r(S1), &r(S1)).unwrap(), 1);
        assert_eq!(hom_basis_dim(&r(P1), &r(S2)).unwrap(), 0);
        assert_eq!(hom_basis_dim(&r(S2), &r(P1)).unwrap(), 1);
        assert_eq!(hom_basis_dim(&r(P1), &r(S1)).unwrap(), 1);
    }

    #[test]
    fn cyclic_endomorphisms() {
        let a: AlgebraSpec = "nakayama:cyclic:3,3".parse().unwrap();
        let m = realize(&a, &[Indec::new(1, 3)], 3).unwrap();
        assert_eq!(hom_basis_dim(&m, &m).unwrap(), 2);
    }

    #[test]
    fn kernel_and_cokernel_examples() {
        let a = lin2();
        let p1 = realize(&a, &[P1], 2).unwrap();
        let s1 = realize(&a, &[S1], 2).unwrap();
        let s2 = realize(&a, &[S2], 2).unwrap();

        let id = hom_basis(&p1, &p1).unwrap().remove(0);
        let (k, c) = kernel_cokernel(&p1, &p1, &id).unwrap();
        assert_eq!(k.total_dim(), 0);
        assert_eq!(c.total_dim(), 0);

        let proj = hom_basis(&p1, &s1).unwrap().remove(0);
        let (k, _) = kernel_cokernel(&p1, &s1, &proj).unwrap();
        assert_eq!(decompose(&k).unwrap(), vec![S2]);

        let inc = hom_basis(&s2, &p1).unwrap().remove(0);
        let (k, c) = kernel_cokernel(&s2, &p1, &inc).unwrap();
        assert_eq!(k.total_dim(), 0);
        assert_eq!(decompose(&c).unwrap(), vec![S1]);
    }

    #[test]
    fn non_intertwiner_rejected() {
        let a = lin2();
        let p1 = realize(&a, &[P1], 2).unwrap();
        let s1 = realize(&a, &[S1], 2).unwrap();
        // S1 -> P1 sending the top to the top does not commute with the arrow.
        let bogus = Intertwiner {
            comps: vec![FpMatrix::from_rows(2, &[&[1]]), FpMatrix::zeros(2, 1, 0)],
        };
        assert_eq!(
            kernel_cokernel(&s1, &p1, &bogus),
            Err(OracleError::NotIntertwiner(1))
        );
    }

    #[test]
    fn hom_elements_enumerates_space() {
        let a = AlgebraSpec::lin_a(3).unwrap();
        let x = realize(&a, &[Indec::new(1, 3), Indec::new(2, 2)], 3).unwrap();
        let d = hom_basis_dim(&x, &x).unwrap();
        let all = hom_elements(&x, &x, 10_000).unwrap();
        assert_eq!(all.len(), 3usize.pow(d as u32) - 1);
        assert!(all.iter().all(|f| f.validate(&x, &x).is_ok() && !f.is_zero()));
    }
}
