//! Sparse matrices over the integers and Smith normal form.
//!
//! All arithmetic is arbitrary precision: intermediate entries in an
//! integer elimination can grow far beyond the input magnitudes, and
//! every homology claim downstream depends on these computations being
//! exact.
//!
//! [`smith_normal_form`] diagonalizes by elementary row/column operations,
//! always choosing the smallest-magnitude nonzero pivot in the active
//! submatrix (ties broken row-major). The operations are logged, so the
//! unimodular transforms `U`, `V` with `U·A·V = S` are available either as
//! explicit matrices (small inputs) or as operation logs that can be
//! replayed onto another matrix (how homology applies `V⁻¹` without ever
//! materializing it).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Sparse integer matrix; absent entries are zero, zeros are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl SparseIntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries.insert((i, i), BigInt::one());
        }
        m
    }

    pub fn from_triples<I>(rows: usize, cols: usize, triples: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, BigInt)>,
    {
        let mut m = Self::zero(rows, cols);
        for (i, j, v) in triples {
            m.add_to(i, j, &v);
        }
        m
    }

    pub fn from_i64_rows(data: &[&[i64]]) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let mut m = Self::zero(rows, cols);
        for (i, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
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

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
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
        assert!(i < self.rows && j < self.cols, "index out of range");
        if v.is_zero() {
            return;
        }
        let e = self.entries.entry((i, j)).or_default();
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    /// Entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, &BigInt)> {
        self.entries
            .range((i, 0)..=(i, self.cols.saturating_sub(1).max(0)))
            .map(|(&(_, j), v)| (j, v))
    }

    pub fn mul(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = SparseIntMatrix::zero(self.rows, other.cols);
        for (&(i, k), v) in &self.entries {
            for (j, w) in other.row(k) {
                out.add_to(i, j, &(v * w));
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseIntMatrix {
        let mut out = SparseIntMatrix::zero(self.cols, self.rows);
        for (&(i, j), v) in &self.entries {
            out.entries.insert((j, i), v.clone());
        }
        out
    }

    /// Permutes rows (`row_perm[i]` = new position of row `i`) and columns.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> SparseIntMatrix {
        assert_eq!(row_perm.len(), self.rows);
        assert_eq!(col_perm.len(), self.cols);
        let mut out = SparseIntMatrix::zero(self.rows, self.cols);
        for (&(i, j), v) in &self.entries {
            out.entries.insert((row_perm[i], col_perm[j]), v.clone());
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let cols_a: Vec<(usize, BigInt)> = self.take_row(a);
        let cols_b: Vec<(usize, BigInt)> = self.take_row(b);
        for (j, v) in cols_a {
            self.entries.insert((b, j), v);
        }
        for (j, v) in cols_b {
            self.entries.insert((a, j), v);
        }
    }

    fn take_row(&mut self, i: usize) -> Vec<(usize, BigInt)> {
        let keys: Vec<usize> = self.row(i).map(|(j, _)| j).collect();
        keys.into_iter()
            .map(|j| (j, self.entries.remove(&(i, j)).unwrap()))
            .collect()
    }

    pub fn negate_row(&mut self, i: usize) {
        let keys: Vec<usize> = self.row(i).map(|(j, _)| j).collect();
        for j in keys {
            let v = self.entries.get_mut(&(i, j)).unwrap();
            *v = -std::mem::take(v);
        }
    }

    /// row[dst] += c · row[src]
    pub fn add_mul_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        assert!(dst != src, "add_mul_row with dst == src");
        if c.is_zero() {
            return;
        }
        let src_entries: Vec<(usize, BigInt)> =
            self.row(src).map(|(j, v)| (j, v.clone())).collect();
        for (j, v) in src_entries {
            self.add_to(dst, j, &(c * v));
        }
    }
}

impl fmt::Debug for SparseIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows.min(16) {
            let row: Vec<String> = (0..self.cols.min(16))
                .map(|j| self.get(i, j).to_string())
                .collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}

/// One elementary operation; the same encoding serves rows and columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElemOp {
    Swap(usize, usize),
    Negate(usize),
    /// rows: row[dst] += c·row[src]; columns: col[dst] += c·col[src]
    AddMul {
        dst: usize,
        src: usize,
        c: BigInt,
    },
}

impl ElemOp {
    fn inverse(&self) -> ElemOp {
        match self {
            ElemOp::Swap(a, b) => ElemOp::Swap(*a, *b),
            ElemOp::Negate(a) => ElemOp::Negate(*a),
            ElemOp::AddMul { dst, src, c } => ElemOp::AddMul {
                dst: *dst,
                src: *src,
                c: -c.clone(),
            },
        }
    }
}

/// Output of [`smith_normal_form`]: `U·A·V = S` with `S = diag(d_1, …)`,
/// the `d_i` nonnegative and forming a divisibility chain, nonzero entries
/// first. `U` is the logged row operations applied to the identity, `V`
/// the logged column operations.
#[derive(Debug, Clone)]
pub struct SmithNormalForm {
    pub rows: usize,
    pub cols: usize,
    /// Diagonal of S, length min(rows, cols).
    pub diag: Vec<BigInt>,
    pub rank: usize,
    pub row_ops: Vec<ElemOp>,
    pub col_ops: Vec<ElemOp>,
}

impl SmithNormalForm {
    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.diag[..self.rank]
    }

    /// Invariant factors greater than one, i.e. the torsion part of the
    /// cokernel restricted to the image lattice.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diag[..self.rank]
            .iter()
            .filter(|d| **d > BigInt::one())
            .cloned()
            .collect()
    }

    pub fn s_matrix(&self) -> SparseIntMatrix {
        let mut s = SparseIntMatrix::zero(self.rows, self.cols);
        for (i, d) in self.diag.iter().enumerate() {
            s.set(i, i, d.clone());
        }
        s
    }

    /// Materializes U (rows×rows). Intended for small matrices and tests.
    pub fn u_matrix(&self) -> SparseIntMatrix {
        let mut u = SparseIntMatrix::identity(self.rows);
        for op in &self.row_ops {
            apply_row_op(&mut u, op);
        }
        u
    }

    /// Materializes V (cols×cols).
    pub fn v_matrix(&self) -> SparseIntMatrix {
        let mut v = SparseIntMatrix::identity(self.cols);
        for op in &self.col_ops {
            apply_col_op(&mut v, op);
        }
        v
    }

    /// Materializes U⁻¹.
    pub fn u_inv_matrix(&self) -> SparseIntMatrix {
        let mut m = SparseIntMatrix::identity(self.rows);
        for op in self.row_ops.iter().rev() {
            apply_row_op_on_left_inverse(&mut m, op);
        }
        m
    }

    /// Computes `V⁻¹·B` by replaying the logged column operations as
    /// inverse row operations on `B`. This is how a kernel-basis change is
    /// pushed onto the next boundary matrix without forming V.
    pub fn apply_v_inverse_to(&self, b: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(b.rows(), self.cols, "V⁻¹·B shape mismatch");
        let mut m = b.clone();
        for op in &self.col_ops {
            match op {
                ElemOp::Swap(a, b_) => m.swap_rows(*a, *b_),
                ElemOp::Negate(a) => m.negate_row(*a),
                // A·(I + c·E[src,dst]) as a left inverse is row[src] −= c·row[dst]
                ElemOp::AddMul { dst, src, c } => m.add_mul_row(*src, *dst, &-c.clone()),
            }
        }
        m
    }
}

pub fn apply_row_op(m: &mut SparseIntMatrix, op: &ElemOp) {
    match op {
        ElemOp::Swap(a, b) => m.swap_rows(*a, *b),
        ElemOp::Negate(a) => m.negate_row(*a),
        ElemOp::AddMul { dst, src, c } => m.add_mul_row(*dst, *src, c),
    }
}

/// Applies the inverse of a row op by right-multiplication semantics:
/// used to build U⁻¹ = R₁⁻¹···R_p⁻¹ applied to the identity in reverse.
fn apply_row_op_on_left_inverse(m: &mut SparseIntMatrix, op: &ElemOp) {
    apply_row_op(m, &op.inverse());
}

pub fn apply_col_op(m: &mut SparseIntMatrix, op: &ElemOp) {
    match op {
        ElemOp::Swap(a, b) => {
            let t = m.transpose();
            let mut t = t;
            t.swap_rows(*a, *b);
            *m = t.transpose();
        }
        ElemOp::Negate(a) => {
            let mut t = m.transpose();
            t.negate_row(*a);
            *m = t.transpose();
        }
        ElemOp::AddMul { dst, src, c } => {
            let mut t = m.transpose();
            t.add_mul_row(*dst, *src, c);
            *m = t.transpose();
        }
    }
}

/// Nearest-integer quotient: remainder magnitude ≤ |b|/2, ties keep the
/// truncated quotient. Shrinks remainders fastest during elimination.
fn div_rounded(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        return q;
    }
    let two_r: BigInt = r.abs() * 2;
    if two_r > b.abs() {
        if r.sign() == b.sign() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Mutable elimination state: row-major maps plus per-column occupancy so
/// column access stays cheap, and the operation logs.
struct SnfWork {
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, BigInt>>,
    col_occ: Vec<BTreeSet<usize>>,
    row_ops: Vec<ElemOp>,
    col_ops: Vec<ElemOp>,
}

impl SnfWork {
    fn new(a: &SparseIntMatrix) -> Self {
        let mut rows = vec![BTreeMap::new(); a.rows()];
        let mut col_occ = vec![BTreeSet::new(); a.cols()];
        for (i, j, v) in a.iter() {
            rows[i].insert(j, v.clone());
            col_occ[j].insert(i);
        }
        SnfWork {
            nrows: a.rows(),
            ncols: a.cols(),
            rows,
            col_occ,
            row_ops: Vec::new(),
            col_ops: Vec::new(),
        }
    }

    fn get(&self, i: usize, j: usize) -> Option<&BigInt> {
        self.rows[i].get(&j)
    }

    fn set(&mut self, i: usize, j: usize, v: BigInt) {
        if v.is_zero() {
            if self.rows[i].remove(&j).is_some() {
                self.col_occ[j].remove(&i);
            }
        } else {
            self.rows[i].insert(j, v);
            self.col_occ[j].insert(i);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.rows.swap(a, b);
        let affected: BTreeSet<usize> = self.rows[a]
            .keys()
            .chain(self.rows[b].keys())
            .copied()
            .collect();
        for j in affected {
            let in_a = self.rows[a].contains_key(&j);
            let in_b = self.rows[b].contains_key(&j);
            if in_a {
                self.col_occ[j].insert(a);
            } else {
                self.col_occ[j].remove(&a);
            }
            if in_b {
                self.col_occ[j].insert(b);
            } else {
                self.col_occ[j].remove(&b);
            }
        }
        self.row_ops.push(ElemOp::Swap(a, b));
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let rows_a: Vec<usize> = self.col_occ[a].iter().copied().collect();
        let rows_b: Vec<usize> = self.col_occ[b].iter().copied().collect();
        let mut vals_a = Vec::with_capacity(rows_a.len());
        for &i in &rows_a {
            vals_a.push((i, self.rows[i].remove(&a).unwrap()));
            self.col_occ[a].remove(&i);
        }
        let mut vals_b = Vec::with_capacity(rows_b.len());
        for &i in &rows_b {
            vals_b.push((i, self.rows[i].remove(&b).unwrap()));
            self.col_occ[b].remove(&i);
        }
        for (i, v) in vals_a {
            self.rows[i].insert(b, v);
            self.col_occ[b].insert(i);
        }
        for (i, v) in vals_b {
            self.rows[i].insert(a, v);
            self.col_occ[a].insert(i);
        }
        self.col_ops.push(ElemOp::Swap(a, b));
    }

    fn negate_row(&mut self, i: usize) {
        for v in self.rows[i].values_mut() {
            *v = -std::mem::take(v);
        }
        self.row_ops.push(ElemOp::Negate(i));
    }

    /// row[dst] += c·row[src]
    fn add_mul_row(&mut self, dst: usize, src: usize, c: BigInt) {
        debug_assert!(dst != src && !c.is_zero());
        let src_entries: Vec<(usize, BigInt)> = self.rows[src]
            .iter()
            .map(|(&j, v)| (j, v.clone()))
            .collect();
        for (j, v) in src_entries {
            let add = &c * v;
            let cur = self.rows[dst].remove(&j).unwrap_or_default();
            let new = cur + add;
            if new.is_zero() {
                self.col_occ[j].remove(&dst);
            } else {
                self.rows[dst].insert(j, new);
                self.col_occ[j].insert(dst);
            }
        }
        self.row_ops.push(ElemOp::AddMul { dst, src, c });
    }

    /// col[dst] += c·col[src]
    fn add_mul_col(&mut self, dst: usize, src: usize, c: BigInt) {
        debug_assert!(dst != src && !c.is_zero());
        let src_rows: Vec<usize> = self.col_occ[src].iter().copied().collect();
        for i in src_rows {
            let v = self.rows[i].get(&src).unwrap().clone();
            let add = &c * v;
            let cur = self.rows[i].remove(&dst).unwrap_or_default();
            let new = cur + add;
            if new.is_zero() {
                self.col_occ[dst].remove(&i);
            } else {
                self.rows[i].insert(dst, new);
                self.col_occ[dst].insert(i);
            }
        }
        self.col_ops.push(ElemOp::AddMul { dst, src, c });
    }

    /// Smallest-magnitude nonzero entry in the submatrix `[k.., k..]`,
    /// row-major tie-breaking. Scans rows in order and exits early on a
    /// unit entry, which no other entry can beat.
    fn find_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let one = BigInt::one();
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in k..self.nrows {
            for (&j, v) in self.rows[i].range(k..) {
                let mag = v.abs();
                if mag == one {
                    return Some((i, j));
                }
                match &best {
                    Some((m, _, _)) if *m <= mag => {}
                    _ => best = Some((mag, i, j)),
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn col_clear(&self, k: usize) -> bool {
        self.col_occ[k].iter().all(|&i| i == k)
    }

    fn row_clear(&self, k: usize) -> bool {
        self.rows[k].keys().all(|&j| j == k)
    }

    /// Clears row k and column k down to the pivot at (k,k), swapping in
    /// smaller remainders as improved pivots until everything divides out.
    /// Column swaps while clearing the row can dirty the column again, so
    /// the two passes alternate until both are clean. Each swap strictly
    /// shrinks the pivot magnitude, so this terminates.
    fn clean_pivot(&mut self, k: usize) {
        loop {
            // column k via row operations
            while !self.col_clear(k) {
                let i = *self.col_occ[k].iter().find(|&&i| i != k).unwrap();
                let v = self.get(i, k).unwrap().clone();
                let pivot = self.get(k, k).expect("pivot vanished").clone();
                let q = div_rounded(&v, &pivot);
                if !q.is_zero() {
                    self.add_mul_row(i, k, -q);
                }
                if self.get(i, k).is_some() {
                    // remainder strictly smaller than the pivot
                    self.swap_rows(k, i);
                }
            }
            // row k via column operations
            while !self.row_clear(k) {
                let j = *self.rows[k].keys().find(|&&j| j != k).unwrap();
                let v = self.get(k, j).unwrap().clone();
                let pivot = self.get(k, k).expect("pivot vanished").clone();
                let q = div_rounded(&v, &pivot);
                if !q.is_zero() {
                    self.add_mul_col(j, k, -q);
                }
                if self.get(k, j).is_some() {
                    self.swap_cols(k, j);
                }
            }
            if self.col_clear(k) && self.row_clear(k) {
                break;
            }
        }
    }

    /// Replaces diag entries (d_i, d_j) by (gcd, ±lcm) with logged ops.
    /// Assumes the matrix is diagonal outside positions (i,i), (j,j).
    fn merge_diagonal_pair(&mut self, i: usize, j: usize) {
        // col i gains d_j at row j
        self.add_mul_col(i, j, BigInt::one());
        // Euclid between rows i and j on column i
        loop {
            let below = self.get(j, i).cloned();
            let Some(v) = below else { break };
            let pivot = self.get(i, i).expect("diag pivot vanished").clone();
            let q = div_rounded(&v, &pivot);
            if !q.is_zero() {
                self.add_mul_row(j, i, -q);
            }
            if self.get(j, i).is_some() {
                self.swap_rows(i, j);
            }
        }
        // clear the fill-in at (i, j); gcd divides it by construction
        if let Some(u) = self.get(i, j).cloned() {
            let g = self.get(i, i).expect("gcd pivot vanished").clone();
            let q = -(&u / &g);
            debug_assert!((&u % &g).is_zero());
            if !q.is_zero() {
                self.add_mul_col(j, i, q);
            } else {
                // u was zero-divisible edge; remove explicitly
                self.set(i, j, BigInt::zero());
            }
        }
    }

    fn fix_signs(&mut self, upto: usize) {
        for i in 0..upto {
            if let Some(v) = self.get(i, i) {
                if v.is_negative() {
                    self.negate_row(i);
                }
            }
        }
    }
}

/// Smith normal form of `a`. Exact; deterministic for a given input.
pub fn smith_normal_form(a: &SparseIntMatrix) -> SmithNormalForm {
    let mut w = SnfWork::new(a);
    let mut k = 0;
    let limit = w.nrows.min(w.ncols);
    while k < limit {
        let Some((pi, pj)) = w.find_pivot(k) else { break };
        w.swap_rows(k, pi);
        w.swap_cols(k, pj);
        w.clean_pivot(k);
        k += 1;
    }
    let rank = k;
    w.fix_signs(rank);

    // enforce the divisibility chain d_1 | d_2 | …
    loop {
        let mut changed = false;
        for i in 0..rank.saturating_sub(1) {
            let a_i = w.get(i, i).unwrap().clone();
            let a_j = w.get(i + 1, i + 1).unwrap().clone();
            if !(&a_j % &a_i).is_zero() {
                w.merge_diagonal_pair(i, i + 1);
                w.fix_signs(rank);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let diag: Vec<BigInt> = (0..limit)
        .map(|i| w.get(i, i).cloned().unwrap_or_default())
        .collect();
    debug_assert!(diag[..rank].iter().all(|d| d.is_positive()));
    debug_assert!(diag[rank..].iter().all(|d| d.is_zero()));

    SmithNormalForm {
        rows: a.rows(),
        cols: a.cols(),
        diag,
        rank,
        row_ops: w.row_ops,
        col_ops: w.col_ops,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn snf_diag_i64(data: &[&[i64]]) -> Vec<i64> {
        let m = SparseIntMatrix::from_i64_rows(data);
        let snf = smith_normal_form(&m);
        snf.diag
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    fn check_uav(a: &SparseIntMatrix) -> SmithNormalForm {
        let snf = smith_normal_form(a);
        let u = snf.u_matrix();
        let v = snf.v_matrix();
        let uav = u.mul(a).mul(&v);
        assert_eq!(uav, snf.s_matrix(), "U·A·V ≠ S");
        for w in snf.diag.windows(2) {
            if !w[1].is_zero() {
                assert!(
                    !w[0].is_zero() && (&w[1] % &w[0]).is_zero(),
                    "divisibility chain broken: {:?}",
                    snf.diag
                );
            }
        }
        snf
    }

    #[test]
    fn snf_of_reference_matrix() {
        // |det| = 8, gcd of entries = 2 ⇒ diag(2, 4)
        assert_eq!(snf_diag_i64(&[&[2, 4], &[6, 8]]), vec![2, 4]);
    }

    #[test]
    fn snf_of_identity_and_zero() {
        assert_eq!(snf_diag_i64(&[&[1, 0], &[0, 1]]), vec![1, 1]);
        assert_eq!(snf_diag_i64(&[&[0, 0], &[0, 0]]), vec![0, 0]);
    }

    #[test]
    fn snf_uav_holds_on_small_cases() {
        let cases: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![2, 4], vec![6, 8]],
            vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]],
            vec![vec![2, 0], vec![0, 3]],
            vec![vec![0, 5], vec![7, 0]],
            vec![vec![6, 10, 15]],
            vec![vec![6], vec![10], vec![15]],
        ];
        for c in cases {
            let rows: Vec<&[i64]> = c.iter().map(|r| r.as_slice()).collect();
            let a = SparseIntMatrix::from_i64_rows(&rows);
            check_uav(&a);
        }
    }

    #[test]
    fn snf_diag_matches_determinant_divisors() {
        // Independent oracle: d_1···d_k = gcd of all k×k minors.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(1..=4);
            let data: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect())
                .collect();
            let refs: Vec<&[i64]> = data.iter().map(|r| r.as_slice()).collect();
            let a = SparseIntMatrix::from_i64_rows(&refs);
            let snf = check_uav(&a);
            let oracle = oracle::determinant_divisors(&data);
            let got: Vec<BigInt> = snf.diag.clone();
            assert_eq!(got, oracle, "matrix {data:?}");
        }
    }

    #[test]
    fn v_inverse_replay_matches_explicit_inverse() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let n = rng.gen_range(1..=5);
            let m = rng.gen_range(1..=5);
            let data: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..m).map(|_| rng.gen_range(-6..=6)).collect())
                .collect();
            let refs: Vec<&[i64]> = data.iter().map(|r| r.as_slice()).collect();
            let a = SparseIntMatrix::from_i64_rows(&refs);
            let snf = smith_normal_form(&a);
            let bdata: Vec<Vec<i64>> = (0..m)
                .map(|_| (0..3).map(|_| rng.gen_range(-6..=6)).collect())
                .collect();
            let brefs: Vec<&[i64]> = bdata.iter().map(|r| r.as_slice()).collect();
            let b = SparseIntMatrix::from_i64_rows(&brefs);
            let replayed = snf.apply_v_inverse_to(&b);
            // V·(V⁻¹·B) must reproduce B
            let v = snf.v_matrix();
            assert_eq!(v.mul(&replayed), b);
        }
    }

    #[test]
    fn u_inverse_matches() {
        let a = SparseIntMatrix::from_i64_rows(&[&[3, 1, 2], &[0, 4, 1]]);
        let snf = smith_normal_form(&a);
        let u = snf.u_matrix();
        let uinv = snf.u_inv_matrix();
        assert_eq!(u.mul(&uinv), SparseIntMatrix::identity(2));
    }

    pub(super) mod oracle {
        //! Test-only brute-force oracle: invariant factors from gcds of
        //! k×k minors, with minors computed by cofactor expansion.
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::Zero;

        fn det(m: &[Vec<BigInt>]) -> BigInt {
            let n = m.len();
            if n == 0 {
                return BigInt::from(1);
            }
            if n == 1 {
                return m[0][0].clone();
            }
            let mut acc = BigInt::zero();
            for (j, v) in m[0].iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = v * det(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }

        fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
            let mut out = Vec::new();
            let mut idx: Vec<usize> = (0..k).collect();
            if k > n {
                return out;
            }
            loop {
                out.push(idx.clone());
                let mut i = k;
                loop {
                    if i == 0 {
                        return out;
                    }
                    i -= 1;
                    if idx[i] != i + n - k {
                        break;
                    }
                }
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        }

        /// dk(A) = gcd of all k×k minors; invariant factors are
        /// d_k/d_{k−1}. Returns the full diagonal, zeros included.
        pub fn determinant_divisors(data: &[Vec<i64>]) -> Vec<BigInt> {
            let rows = data.len();
            let cols = data[0].len();
            let big: Vec<Vec<BigInt>> = data
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            let limit = rows.min(cols);
            let mut dets = vec![BigInt::from(1)]; // d_0 = 1
            for k in 1..=limit {
                let mut g = BigInt::zero();
                for ri in combinations(rows, k) {
                    for ci in combinations(cols, k) {
                        let sub: Vec<Vec<BigInt>> = ri
                            .iter()
                            .map(|&i| ci.iter().map(|&j| big[i][j].clone()).collect())
                            .collect();
                        g = g.gcd(&det(&sub));
                    }
                }
                dets.push(g);
            }
            let mut out = Vec::with_capacity(limit);
            for k in 1..=limit {
                if dets[k].is_zero() {
                    out.push(BigInt::zero());
                } else {
                    out.push(&dets[k] / &dets[k - 1]);
                }
            }
            out
        }
    }
}
