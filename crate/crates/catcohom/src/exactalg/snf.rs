//! Smith normal form over the integers.
//!
//! One engine, two working representations: a dense one for small matrices
//! and a sparse row-map one above the `DENSE_LIMIT` threshold. Differentials
//! of nerve complexes have at most `n + 2` nonzeros per column, so the sparse
//! path is what keeps large windows tractable. Pivots are chosen with the
//! smallest nonzero magnitude (ties broken by Markowitz fill) to limit entry
//! growth.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

const DENSE_LIMIT: usize = 64;

/// Full Smith normal form data: `U * A * V = S`.
pub struct SnfResult {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

pub(crate) struct SnfCore {
    /// All `min(m, n)` diagonal entries, nonnegative, divisibility chain,
    /// zeros trailing.
    pub factors: Vec<BigInt>,
    pub rank: usize,
    pub u: Option<IntMatrix>,
    pub u_inv: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub v_inv: Option<IntMatrix>,
}

/// Smith normal form with unimodular transforms.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let core = snf_core(a, true);
    let s = IntMatrix::diagonal(a.rows(), a.cols(), &core.factors);
    SnfResult {
        u: core.u.unwrap(),
        s,
        v: core.v.unwrap(),
    }
}

/// Nonzero invariant factors of `a`, in divisibility order.
pub(crate) fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    let core = snf_core(a, false);
    core.factors.into_iter().take(core.rank).collect()
}

/// Rank of `a` over the rationals (= number of nonzero invariant factors).
pub(crate) fn rank(a: &IntMatrix) -> usize {
    snf_core(a, false).rank
}

pub(crate) fn snf_core(a: &IntMatrix, with_transforms: bool) -> SnfCore {
    if a.rows().max(a.cols()) < DENSE_LIMIT {
        dense::run(a, with_transforms)
    } else {
        sparse::run(a, with_transforms)
    }
}

/// Tracks the four transform matrices alongside the elimination.
struct Transforms {
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Transforms {
    fn new(m: usize, n: usize) -> Self {
        Transforms {
            u: IntMatrix::identity(m),
            u_inv: IntMatrix::identity(m),
            v: IntMatrix::identity(n),
            v_inv: IntMatrix::identity(n),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        mat_swap_rows(&mut self.u, a, b);
        mat_swap_cols(&mut self.u_inv, a, b);
    }

    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        mat_add_row(&mut self.u, dst, src, q);
        mat_add_col(&mut self.u_inv, src, dst, &-q);
    }

    fn negate_row(&mut self, i: usize) {
        mat_negate_row(&mut self.u, i);
        mat_negate_col(&mut self.u_inv, i);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        mat_swap_cols(&mut self.v, a, b);
        mat_swap_rows(&mut self.v_inv, a, b);
    }

    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        mat_add_col(&mut self.v, dst, src, q);
        mat_add_row(&mut self.v_inv, src, dst, &-q);
    }

}

fn mat_swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let va = m.get(a, j);
        let vb = m.get(b, j);
        m.set(a, j, vb);
        m.set(b, j, va);
    }
}

fn mat_swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows() {
        let va = m.get(i, a);
        let vb = m.get(i, b);
        m.set(i, a, vb);
        m.set(i, b, va);
    }
}

fn mat_add_row(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for j in 0..m.cols() {
        let s = m.get(src, j);
        if !s.is_zero() {
            m.add_to(dst, j, &(q * s));
        }
    }
}

fn mat_add_col(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for i in 0..m.rows() {
        let s = m.get(i, src);
        if !s.is_zero() {
            m.add_to(i, dst, &(q * s));
        }
    }
}

fn mat_negate_row(m: &mut IntMatrix, i: usize) {
    for j in 0..m.cols() {
        let v = m.get(i, j);
        if !v.is_zero() {
            m.set(i, j, -v);
        }
    }
}

fn mat_negate_col(m: &mut IntMatrix, j: usize) {
    for i in 0..m.rows() {
        let v = m.get(i, j);
        if !v.is_zero() {
            m.set(i, j, -v);
        }
    }
}

mod dense {
    use super::*;

    pub(super) fn run(a: &IntMatrix, with_transforms: bool) -> SnfCore {
        let m = a.rows();
        let n = a.cols();
        let mut w: Vec<Vec<BigInt>> = (0..m)
            .map(|i| (0..n).map(|j| a.get(i, j)).collect())
            .collect();
        let mut t = with_transforms.then(|| Transforms::new(m, n));

        for k in 0..m.min(n) {
            if !reduce_pivot(&mut w, k, m, n, &mut t) {
                break;
            }
        }

        let mut factors: Vec<BigInt> = (0..m.min(n)).map(|k| w[k][k].clone()).collect();
        let rank = factors.iter().take_while(|f| !f.is_zero()).count();
        factors.iter_mut().skip(rank).for_each(|f| *f = BigInt::zero());
        SnfCore {
            factors,
            rank,
            u: t.as_ref().map(|t| t.u.clone()),
            u_inv: t.as_ref().map(|t| t.u_inv.clone()),
            v: t.as_ref().map(|t| t.v.clone()),
            v_inv: t.as_ref().map(|t| t.v_inv.clone()),
        }
    }

    /// Clears row and column `k` of the working matrix, leaving a pivot that
    /// divides the rest of the submatrix. Returns false when the submatrix
    /// is already zero.
    fn reduce_pivot(
        w: &mut Vec<Vec<BigInt>>,
        k: usize,
        m: usize,
        n: usize,
        t: &mut Option<Transforms>,
    ) -> bool {
        'outer: loop {
            // Pivot selection: smallest nonzero magnitude in the submatrix.
            let mut pivot: Option<(usize, usize)> = None;
            let mut best: Option<BigInt> = None;
            for i in k..m {
                for j in k..n {
                    if w[i][j].is_zero() {
                        continue;
                    }
                    let mag = w[i][j].abs();
                    if best.as_ref().map_or(true, |b| mag < *b) {
                        best = Some(mag);
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return false;
            };
            if pi != k {
                w.swap(pi, k);
                if let Some(t) = t {
                    t.swap_rows(pi, k);
                }
            }
            if pj != k {
                for row in w.iter_mut() {
                    row.swap(pj, k);
                }
                if let Some(t) = t {
                    t.swap_cols(pj, k);
                }
            }
            if w[k][k].is_negative() {
                for v in w[k].iter_mut() {
                    *v = -std::mem::take(v);
                }
                if let Some(t) = t {
                    t.negate_row(k);
                }
            }

            // Clear column k.
            let mut dirty = false;
            for i in k + 1..m {
                if w[i][k].is_zero() {
                    continue;
                }
                let q = &w[i][k] / &w[k][k];
                if !q.is_zero() {
                    for j in k..n {
                        let d = &q * &w[k][j];
                        if !d.is_zero() {
                            w[i][j] -= d;
                        }
                    }
                    if let Some(t) = t {
                        t.add_row(i, k, &-q);
                    }
                }
                if !w[i][k].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'outer;
            }
            // Clear row k.
            for j in k + 1..n {
                if w[k][j].is_zero() {
                    continue;
                }
                let q = &w[k][j] / &w[k][k];
                if !q.is_zero() {
                    for i in k..m {
                        let d = &q * &w[i][k];
                        if !d.is_zero() {
                            w[i][j] -= d;
                        }
                    }
                    if let Some(t) = t {
                        t.add_col(j, k, &-q);
                    }
                }
                if !w[k][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'outer;
            }
            // Divisibility sweep.
            for i in k + 1..m {
                for j in k + 1..n {
                    if !(&w[i][j] % &w[k][k]).is_zero() {
                        let one = BigInt::from(1);
                        for jj in k..n {
                            let add = w[i][jj].clone();
                            if !add.is_zero() {
                                w[k][jj] += add;
                            }
                        }
                        if let Some(t) = t {
                            t.add_row(k, i, &one);
                        }
                        continue 'outer;
                    }
                }
            }
            return true;
        }
    }
}

mod sparse {
    use super::*;

    struct Work {
        m: usize,
        n: usize,
        rows: Vec<BTreeMap<usize, BigInt>>,
        cols: Vec<BTreeSet<usize>>,
    }

    impl Work {
        fn from_matrix(a: &IntMatrix) -> Self {
            let mut w = Work {
                m: a.rows(),
                n: a.cols(),
                rows: vec![BTreeMap::new(); a.rows()],
                cols: vec![BTreeSet::new(); a.cols()],
            };
            for (i, j, v) in a.nonzeros() {
                w.rows[i].insert(j, v.clone());
                w.cols[j].insert(i);
            }
            w
        }

        fn get(&self, i: usize, j: usize) -> Option<&BigInt> {
            self.rows[i].get(&j)
        }

        fn set(&mut self, i: usize, j: usize, v: BigInt) {
            if v.is_zero() {
                if self.rows[i].remove(&j).is_some() {
                    self.cols[j].remove(&i);
                }
            } else {
                self.rows[i].insert(j, v);
                self.cols[j].insert(i);
            }
        }

        fn swap_rows(&mut self, a: usize, b: usize) {
            if a == b {
                return;
            }
            let keys: BTreeSet<usize> = self.rows[a]
                .keys()
                .chain(self.rows[b].keys())
                .copied()
                .collect();
            self.rows.swap(a, b);
            for j in keys {
                if self.rows[a].contains_key(&j) {
                    self.cols[j].insert(a);
                } else {
                    self.cols[j].remove(&a);
                }
                if self.rows[b].contains_key(&j) {
                    self.cols[j].insert(b);
                } else {
                    self.cols[j].remove(&b);
                }
            }
        }

        fn swap_cols(&mut self, a: usize, b: usize) {
            if a == b {
                return;
            }
            let rows: BTreeSet<usize> = self.cols[a].iter().chain(self.cols[b].iter()).copied().collect();
            for i in rows {
                let va = self.rows[i].remove(&a);
                let vb = self.rows[i].remove(&b);
                if let Some(vb) = vb {
                    self.rows[i].insert(a, vb);
                }
                if let Some(va) = va {
                    self.rows[i].insert(b, va);
                }
            }
            self.cols.swap(a, b);
        }

        /// row[dst] += q * row[src]
        fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
            if q.is_zero() {
                return;
            }
            let src_row: Vec<(usize, BigInt)> =
                self.rows[src].iter().map(|(&j, v)| (j, v.clone())).collect();
            for (j, v) in src_row {
                let cur = self.rows[dst].get(&j).cloned().unwrap_or_default() + q * v;
                self.set(dst, j, cur);
            }
        }

        /// col[dst] += q * col[src]
        fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
            if q.is_zero() {
                return;
            }
            let src_rows: Vec<usize> = self.cols[src].iter().copied().collect();
            for i in src_rows {
                let v = self.rows[i].get(&src).cloned().unwrap_or_default();
                let cur = self.rows[i].get(&dst).cloned().unwrap_or_default() + q * v;
                self.set(i, dst, cur);
            }
        }

        fn negate_row(&mut self, i: usize) {
            for v in self.rows[i].values_mut() {
                *v = -std::mem::take(v);
            }
        }
    }

    pub(super) fn run(a: &IntMatrix, with_transforms: bool) -> SnfCore {
        let mut w = Work::from_matrix(a);
        let mut t = with_transforms.then(|| Transforms::new(w.m, w.n));
        let bound = w.m.min(w.n);
        for k in 0..bound {
            if !reduce_pivot(&mut w, k, &mut t) {
                break;
            }
        }
        let mut factors: Vec<BigInt> = (0..bound)
            .map(|k| w.get(k, k).cloned().unwrap_or_default())
            .collect();
        let rank = factors.iter().take_while(|f| !f.is_zero()).count();
        factors.iter_mut().skip(rank).for_each(|f| *f = BigInt::zero());
        SnfCore {
            factors,
            rank,
            u: t.as_ref().map(|t| t.u.clone()),
            u_inv: t.as_ref().map(|t| t.u_inv.clone()),
            v: t.as_ref().map(|t| t.v.clone()),
            v_inv: t.as_ref().map(|t| t.v_inv.clone()),
        }
    }

    fn select_pivot(w: &Work, k: usize) -> Option<(usize, usize)> {
        let mut pivot: Option<(usize, usize)> = None;
        let mut best_mag: Option<BigInt> = None;
        let mut best_fill = usize::MAX;
        for i in k..w.m {
            for (&j, v) in w.rows[i].range(k..) {
                let mag = v.abs();
                let fill = (w.rows[i].len() - 1) * (w.cols[j].len() - 1);
                let better = match &best_mag {
                    None => true,
                    Some(b) => mag < *b || (mag == *b && fill < best_fill),
                };
                if better {
                    best_mag = Some(mag);
                    best_fill = fill;
                    pivot = Some((i, j));
                }
            }
        }
        pivot
    }

    fn reduce_pivot(w: &mut Work, k: usize, t: &mut Option<Transforms>) -> bool {
        'outer: loop {
            let Some((pi, pj)) = select_pivot(w, k) else {
                return false;
            };
            if pi != k {
                w.swap_rows(pi, k);
                if let Some(t) = t {
                    t.swap_rows(pi, k);
                }
            }
            if pj != k {
                w.swap_cols(pj, k);
                if let Some(t) = t {
                    t.swap_cols(pj, k);
                }
            }
            if w.get(k, k).map_or(false, |v| v.is_negative()) {
                w.negate_row(k);
                if let Some(t) = t {
                    t.negate_row(k);
                }
            }
            let pivot_val = w.get(k, k).cloned().expect("pivot vanished");

            // Clear column k below the pivot.
            let below: Vec<usize> = w.cols[k].iter().copied().filter(|&i| i > k).collect();
            let mut dirty = false;
            for i in below {
                let v = w.get(i, k).cloned().unwrap_or_default();
                if v.is_zero() {
                    continue;
                }
                let q = &v / &pivot_val;
                if !q.is_zero() {
                    let neg = -q;
                    w.add_row(i, k, &neg);
                    if let Some(t) = t {
                        t.add_row(i, k, &neg);
                    }
                }
                if w.get(i, k).is_some() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'outer;
            }
            // Clear row k to the right of the pivot.
            let right: Vec<usize> = w.rows[k].range(k + 1..).map(|(&j, _)| j).collect();
            for j in right {
                let v = w.get(k, j).cloned().unwrap_or_default();
                if v.is_zero() {
                    continue;
                }
                let q = &v / &pivot_val;
                if !q.is_zero() {
                    let neg = -q;
                    w.add_col(j, k, &neg);
                    if let Some(t) = t {
                        t.add_col(j, k, &neg);
                    }
                }
                if w.get(k, j).is_some() {
                    dirty = true;
                }
            }
            if dirty {
                continue 'outer;
            }
            // Divisibility sweep over the remaining submatrix.
            for i in k + 1..w.m {
                for (&j, v) in w.rows[i].range(k + 1..) {
                    let _ = j;
                    if !(v % &pivot_val).is_zero() {
                        let one = BigInt::from(1);
                        w.add_row(k, i, &one);
                        if let Some(t) = t {
                            t.add_row(k, i, &one);
                        }
                        continue 'outer;
                    }
                }
            }
            return true;
        }
    }
}
