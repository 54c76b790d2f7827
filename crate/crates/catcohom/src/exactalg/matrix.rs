use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Integer matrix with exact arbitrary-precision entries.
///
/// Semantics are dense (`rows x cols`), storage is sparse: only nonzero
/// entries are kept, in a deterministic row-major order.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.entries.insert((i, i), BigInt::one());
        }
        m
    }

    /// Dense construction from rows of machine integers (test and parser use).
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                if *v != 0 {
                    m.entries.insert((i, j), BigInt::from(*v));
                }
            }
        }
        m
    }

    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        let mut m = IntMatrix::zero(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            if !d.is_zero() {
                m.entries.insert((i, i), d.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &BigInt) {
        if v.is_zero() {
            return;
        }
        let cur = self.get(i, j) + v;
        self.set(i, j, cur);
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(
            self.cols, other.rows,
            "shape mismatch in matrix multiplication"
        );
        // Row-major sparse product: group the right factor by row first.
        let mut rhs_rows: Vec<Vec<(usize, &BigInt)>> = vec![Vec::new(); other.rows];
        for (&(i, j), v) in &other.entries {
            rhs_rows[i].push((j, v));
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
        let mut cur_row = usize::MAX;
        let flush = |row: usize, acc: &mut BTreeMap<usize, BigInt>, out: &mut IntMatrix| {
            for (j, v) in std::mem::take(acc) {
                if !v.is_zero() {
                    out.entries.insert((row, j), v);
                }
            }
        };
        for (&(i, k), v) in &self.entries {
            if i != cur_row {
                if cur_row != usize::MAX {
                    flush(cur_row, &mut acc, &mut out);
                }
                cur_row = i;
            }
            for &(j, w) in &rhs_rows[k] {
                let slot = acc.entry(j).or_default();
                *slot += v * w;
            }
        }
        if cur_row != usize::MAX {
            flush(cur_row, &mut acc, &mut out);
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, x.len(), "shape mismatch in matrix apply");
        let mut out = vec![BigInt::zero(); self.rows];
        for (&(i, j), v) in &self.entries {
            if !x[j].is_zero() {
                out[i] += v * &x[j];
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        assert!(j < self.cols, "column index out of range");
        let mut out = vec![BigInt::zero(); self.rows];
        for (&(i, jj), v) in &self.entries {
            if jj == j {
                out[i] = v.clone();
            }
        }
        out
    }

    /// Stack `self` and `other` horizontally: `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut m = IntMatrix::zero(self.rows, self.cols + other.cols);
        for (&(i, j), v) in &self.entries {
            m.entries.insert((i, j), v.clone());
        }
        for (&(i, j), v) in &other.entries {
            m.entries.insert((i, j + self.cols), v.clone());
        }
        m
    }

    /// Select a subset of columns, in the given order.
    pub fn select_columns(&self, keep: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zero(self.rows, keep.len());
        let mut pos: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (newj, &oldj) in keep.iter().enumerate() {
            pos.entry(oldj).or_default().push(newj);
        }
        for (&(i, j), v) in &self.entries {
            if let Some(newjs) = pos.get(&j) {
                for &nj in newjs {
                    m.entries.insert((i, nj), v.clone());
                }
            }
        }
        m
    }

    /// Select a subset of rows, in the given order.
    pub fn select_rows(&self, keep: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zero(keep.len(), self.cols);
        let mut pos: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (newi, &oldi) in keep.iter().enumerate() {
            pos.entry(oldi).or_default().push(newi);
        }
        for (&(i, j), v) in &self.entries {
            if let Some(newis) = pos.get(&i) {
                for &ni in newis {
                    m.entries.insert((ni, j), v.clone());
                }
            }
        }
        m
    }

    /// Absolute value of the determinant, by SNF-free expansion for tests.
    /// Only intended for small square matrices.
    pub fn det_abs(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        // Fraction-free Bareiss elimination.
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j)).collect())
            .collect();
        let mut denom = BigInt::one();
        let mut sign = 1i32;
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let swap = (k + 1..n).find(|&i| !a[i][k].is_zero());
                match swap {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = &t / &denom;
                }
                a[i][k] = BigInt::zero();
            }
            denom = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone() * BigInt::from(sign);
        d.abs()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows.min(16) {
            let row: Vec<String> = (0..self.cols.min(16)).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
