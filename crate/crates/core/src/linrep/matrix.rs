//! Dense matrices over a small prime field `F_p`.

use std::fmt;

/// Largest characteristic accepted; products of two residues fit in `u64`.
pub const MAX_PRIME: u32 = 1 << 16;

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    result as u32
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Self { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_fn(p: u32, rows: usize, cols: usize, f: impl Fn(usize, usize) -> u32) -> Self {
        let mut m = Self::zeros(p, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[&[u32]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(p, rows.len(), cols, |r, c| rows[r][c])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn from_columns(p: u32, rows: usize, columns: &[Vec<u32>]) -> Self {
        Self::from_fn(p, rows, columns.len(), |r, c| columns[c][r])
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        assert_eq!(self.p, other.p);
        let p = self.p as u64;
        let mut out = FpMatrix::zeros(self.p, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * out.cols + c;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.get(k, c) as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        FpMatrix {
            p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| (a + b) % p).collect(),
        }
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        self.add(&other.scale(self.p - 1))
    }

    pub fn scale(&self, k: u32) -> FpMatrix {
        let p = self.p as u64;
        FpMatrix {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| (a as u64 * k as u64 % p) as u32).collect(),
        }
    }

    pub fn transpose(&self) -> FpMatrix {
        FpMatrix::from_fn(self.p, self.cols, self.rows, |r, c| self.get(c, r))
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let p = self.p as u64;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pivot) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(row, pivot);
            let inv = inv_mod(m.get(row, col), self.p) as u64;
            for c in 0..m.cols {
                let v = m.get(row, c) as u64 * inv % p;
                m.data[row * m.cols + c] = v as u32;
            }
            for r in 0..m.rows {
                let factor = m.get(r, col) as u64;
                if r == row || factor == 0 {
                    continue;
                }
                for c in 0..m.cols {
                    let sub = factor * m.get(row, c) as u64 % p;
                    let v = (m.get(r, c) as u64 + p - sub) % p;
                    m.data[r * m.cols + c] = v as u32;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one basis vector per column.
    pub fn nullspace(&self) -> FpMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = FpMatrix::zeros(self.p, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis.set(f, k, 1);
            for (row, &pc) in pivots.iter().enumerate() {
                let v = r.get(row, f);
                basis.set(pc, k, (self.p - v) % self.p);
            }
        }
        basis
    }

    /// Basis of the left null space, one basis vector per row.
    pub fn left_nullspace(&self) -> FpMatrix {
        self.transpose().nullspace().transpose()
    }

    /// Some `X` with `self * X = rhs`, or `None` if the system is inconsistent.
    pub fn solve(&self, rhs: &FpMatrix) -> Option<FpMatrix> {
        assert_eq!(self.rows, rhs.rows);
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = FpMatrix::zeros(self.p, self.cols, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(pc, c, r.get(row, self.cols + c));
            }
        }
        Some(x)
    }

    pub fn hstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.rows, other.rows);
        FpMatrix::from_fn(self.p, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self.get(r, c)
            } else {
                other.get(r, c - self.cols)
            }
        })
    }

    /// Block upper triangular matrix `[[a, b], [0, d]]`.
    pub fn block_upper(a: &FpMatrix, b: &FpMatrix, d: &FpMatrix) -> FpMatrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(b.cols, d.cols);
        let (rows, cols) = (a.rows + d.rows, a.cols + d.cols);
        FpMatrix::from_fn(a.p, rows, cols, |r, c| match (r < a.rows, c < a.cols) {
            (true, true) => a.get(r, c),
            (true, false) => b.get(r, c - a.cols),
            (false, true) => 0,
            (false, false) => d.get(r - a.rows, c - a.cols),
        })
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}[{}x{}]", self.p, self.rows, self.cols)?;
        let rows: Vec<Vec<u32>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c)).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(3) && is_prime(5) && is_prime(65521));
        assert!(!is_prime(1) && !is_prime(4) && !is_prime(9));
    }

    #[test]
    fn rank_and_nullspace_f2() {
        let m = FpMatrix::from_rows(2, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let n = m.nullspace();
        assert_eq!(n.cols(), 1);
        assert!(m.mul(&n).is_zero());
    }

    #[test]
    fn solve_inconsistent() {
        let a = FpMatrix::from_rows(3, &[&[1, 0], &[0, 0]]);
        let b = FpMatrix::from_rows(3, &[&[1], &[1]]);
        assert!(a.solve(&b).is_none());
        let b = FpMatrix::from_rows(3, &[&[2], &[0]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
    }

    fn matrix(p: u32) -> impl Strategy<Value = FpMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(0..p, r * c)
                .prop_map(move |d| FpMatrix::from_fn(p, r, c, |i, j| d[i * c + j]))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in prop_oneof![matrix(2), matrix(3), matrix(5)]) {
            let n = m.nullspace();
            prop_assert_eq!(m.rank() + n.cols(), m.cols());
            prop_assert!(m.mul(&n).is_zero());
            prop_assert_eq!(n.rank(), n.cols());
            let l = m.left_nullspace();
            prop_assert!(l.mul(&m).is_zero());
            prop_assert_eq!(l.rows() + m.rank(), m.rows());
        }
    }
}
