//! Dense matrices over GF(p^k) on exponent codes, with bit-packed row
//! kernels for GF(2) in the hot paths (products, elimination, spinning).
//! Vectors are rows and modules act on the right: v ↦ v·M.

use std::sync::Arc;

use crate::gf::{Field, Fq};

#[derive(Clone)]
pub struct FqMatrix {
    pub field: Arc<Field>,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Fq>,
}

impl PartialEq for FqMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.field.spec() == other.field.spec()
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}
impl Eq for FqMatrix {}

impl std::fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<u64> = (0..self.cols)
                .map(|j| self.field.to_int(self.get(i, j)))
                .collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl FqMatrix {
    pub fn zero(field: Arc<Field>, rows: usize, cols: usize) -> FqMatrix {
        FqMatrix {
            field,
            rows,
            cols,
            data: vec![Field::ZERO; rows * cols],
        }
    }

    pub fn identity(field: Arc<Field>, n: usize) -> FqMatrix {
        let mut m = FqMatrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, Field::ONE);
        }
        m
    }

    pub fn from_fn(
        field: Arc<Field>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Fq,
    ) -> FqMatrix {
        let mut m = FqMatrix::zero(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Entries as integer polynomial codes, row major.
    pub fn from_ints(field: Arc<Field>, rows: usize, cols: usize, ints: &[u64]) -> FqMatrix {
        assert_eq!(ints.len(), rows * cols);
        let data = ints.iter().map(|&v| field.from_int(v)).collect();
        FqMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fq] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Fq] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == Field::ZERO)
    }

    pub fn from_rows(field: Arc<Field>, rows: Vec<Vec<Fq>>, cols: usize) -> FqMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r);
        }
        FqMatrix {
            field,
            rows: n,
            cols,
            data,
        }
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut t = FqMatrix::zero(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn add(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        FqMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: Fq) -> FqMatrix {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        FqMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let action = RowAction::prepare(other);
        let mut out = FqMatrix::zero(self.field.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            let prod = action.apply(self.row(i));
            out.row_mut(i).copy_from_slice(&prod);
        }
        out
    }

    pub fn trace(&self) -> Fq {
        let f = &self.field;
        let mut t = Field::ZERO;
        for i in 0..self.rows.min(self.cols) {
            t = f.add(t, self.get(i, i));
        }
        t
    }

    /// Kronecker product; index (i1,i2) ↦ i1 * other.rows + i2.
    pub fn tensor(&self, other: &FqMatrix) -> FqMatrix {
        let f = &self.field;
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = FqMatrix::zero(self.field.clone(), rows, cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if f.is_zero(a) {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = other.get(i2, j2);
                        if f.is_zero(b) {
                            continue;
                        }
                        out.set(i1 * other.rows + i2, j1 * other.cols + j2, f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form: (R, rank, pivot columns).
    pub fn rref(&self) -> (FqMatrix, usize, Vec<usize>) {
        if self.field.q() == 2 {
            return self.rref_gf2();
        }
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let mut pivot_row = None;
            for i in r..m.rows {
                if !f.is_zero(m.get(i, c)) {
                    pivot_row = Some(i);
                    break;
                }
            }
            let Some(pi) = pivot_row else { continue };
            m.data.swap_chunks(pi, r, m.cols);
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if f.is_zero(factor) {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, r, pivots)
    }

    fn rref_gf2(&self) -> (FqMatrix, usize, Vec<usize>) {
        let wpr = self.cols.div_ceil(64);
        let mut rows: Vec<Vec<u64>> = (0..self.rows).map(|i| pack_row(self.row(i), wpr)).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let mut pivot_row = None;
            for (i, row) in rows.iter().enumerate().skip(r) {
                if row[c / 64] >> (c % 64) & 1 == 1 {
                    pivot_row = Some(i);
                    break;
                }
            }
            let Some(pi) = pivot_row else { continue };
            rows.swap(pi, r);
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[c / 64] >> (c % 64) & 1 == 1 {
                    for (w, pw) in row.iter_mut().zip(&pivot) {
                        *w ^= pw;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let mut out = FqMatrix::zero(self.field.clone(), self.rows, self.cols);
        for (i, row) in rows.iter().enumerate() {
            unpack_row(row, out.row_mut(i));
        }
        (out, r, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Basis of the right nullspace {x : M·xᵀ = 0}, one vector per row;
    /// rank + rows(returned) = cols.
    pub fn nullspace(&self) -> FqMatrix {
        let f = self.field.clone();
        let (r, rank, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = FqMatrix::zero(f.clone(), free.len(), self.cols);
        for (bi, &fc) in free.iter().enumerate() {
            basis.set(bi, fc, Field::ONE);
            for (pr, &pc) in pivots.iter().enumerate().take(rank) {
                let v = r.get(pr, fc);
                if !f.is_zero(v) {
                    basis.set(bi, pc, f.neg(v));
                }
            }
        }
        basis
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<FqMatrix> {
        assert_eq!(self.rows, self.cols);
        let f = self.field.clone();
        let n = self.rows;
        // augmented [M | I], coded Gauss-Jordan
        let mut aug = FqMatrix::zero(f.clone(), n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Field::ONE);
        }
        let (r, rank, pivots) = aug.rref();
        if rank < n || pivots[..n] != (0..n).collect::<Vec<_>>()[..] {
            return None;
        }
        let mut inv = FqMatrix::zero(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Evaluates a polynomial at this (square) matrix by Horner's rule.
    pub fn eval_poly(&self, poly: &crate::poly::Poly) -> FqMatrix {
        assert_eq!(self.rows, self.cols);
        let f = self.field.clone();
        let n = self.rows;
        let mut acc = FqMatrix::zero(f.clone(), n, n);
        for &c in poly.coeffs.iter().rev() {
            acc = acc.mul(self);
            if !f.is_zero(c) {
                for i in 0..n {
                    acc.set(i, i, f.add(acc.get(i, i), c));
                }
            }
        }
        acc
    }
}

trait SwapChunks {
    fn swap_chunks(&mut self, a: usize, b: usize, len: usize);
}

impl SwapChunks for Vec<Fq> {
    fn swap_chunks(&mut self, a: usize, b: usize, len: usize) {
        if a == b {
            return;
        }
        for k in 0..len {
            self.swap(a * len + k, b * len + k);
        }
    }
}

fn pack_row(row: &[Fq], wpr: usize) -> Vec<u64> {
    let mut out = vec![0u64; wpr];
    for (j, &v) in row.iter().enumerate() {
        if v == Field::ONE {
            out[j / 64] |= 1 << (j % 64);
        }
    }
    out
}

fn unpack_row(words: &[u64], row: &mut [Fq]) {
    for (j, slot) in row.iter_mut().enumerate() {
        *slot = if words[j / 64] >> (j % 64) & 1 == 1 {
            Field::ONE
        } else {
            Field::ZERO
        };
    }
}

/// Precomputed right-multiplication v ↦ v·M, packed for GF(2).
pub struct RowAction<'a> {
    m: &'a FqMatrix,
    packed: Option<(Vec<u64>, usize)>,
}

impl<'a> RowAction<'a> {
    pub fn prepare(m: &'a FqMatrix) -> RowAction<'a> {
        let packed = if m.field.q() == 2 {
            let wpr = m.cols.div_ceil(64);
            let mut words = vec![0u64; m.rows * wpr];
            for i in 0..m.rows {
                let packed_row = pack_row(m.row(i), wpr);
                words[i * wpr..(i + 1) * wpr].copy_from_slice(&packed_row);
            }
            Some((words, wpr))
        } else {
            None
        };
        RowAction { m, packed }
    }

    pub fn apply(&self, v: &[Fq]) -> Vec<Fq> {
        debug_assert_eq!(v.len(), self.m.rows);
        match &self.packed {
            Some((words, wpr)) => {
                let mut acc = vec![0u64; *wpr];
                for (i, &c) in v.iter().enumerate() {
                    if c == Field::ONE {
                        let row = &words[i * wpr..(i + 1) * wpr];
                        for (a, w) in acc.iter_mut().zip(row) {
                            *a ^= w;
                        }
                    }
                }
                let mut out = vec![Field::ZERO; self.m.cols];
                unpack_row(&acc, &mut out);
                out
            }
            None => {
                let f = &self.m.field;
                let mut out = vec![Field::ZERO; self.m.cols];
                for (i, &c) in v.iter().enumerate() {
                    if f.is_zero(c) {
                        continue;
                    }
                    let row = self.m.row(i);
                    for (o, &mij) in out.iter_mut().zip(row) {
                        if !f.is_zero(mij) {
                            *o = f.add(*o, f.mul(c, mij));
                        }
                    }
                }
                out
            }
        }
    }
}

/// A reduced-echelon accumulator for spinning: rows stay in RREF so that
/// membership tests and coordinate reads are immediate.
pub struct EchelonSpace {
    pub field: Arc<Field>,
    pub cols: usize,
    pub rows: Vec<Vec<Fq>>,
    pub pivots: Vec<usize>,
}

impl EchelonSpace {
    pub fn new(field: Arc<Field>, cols: usize) -> EchelonSpace {
        EchelonSpace {
            field,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the space, leaving the residual.
    pub fn reduce(&self, v: &mut [Fq]) {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if f.is_zero(c) {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
    }

    /// Inserts a vector; returns true when it enlarged the space.
    pub fn insert(&mut self, mut v: Vec<Fq>) -> bool {
        let f = self.field.clone();
        self.reduce(&mut v);
        let Some(pivot) = v.iter().position(|&c| !f.is_zero(c)) else {
            return false;
        };
        let inv = f.inv(v[pivot]);
        for x in v.iter_mut() {
            if !f.is_zero(*x) {
                *x = f.mul(*x, inv);
            }
        }
        // clear the new pivot column from existing rows
        for row in self.rows.iter_mut() {
            let c = row[pivot];
            if f.is_zero(c) {
                continue;
            }
            for (x, &nv) in row.iter_mut().zip(&v) {
                if !f.is_zero(nv) {
                    *x = f.sub(*x, f.mul(c, nv));
                }
            }
        }
        let at = self
            .pivots
            .iter()
            .position(|&p| p > pivot)
            .unwrap_or(self.pivots.len());
        self.pivots.insert(at, pivot);
        self.rows.insert(at, v);
        true
    }

    pub fn contains(&self, v: &[Fq]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&c| self.field.is_zero(c))
    }

    pub fn to_matrix(&self) -> FqMatrix {
        FqMatrix::from_rows(self.field.clone(), self.rows.clone(), self.cols)
    }
}

/// Smallest subspace containing the seed rows and closed under every action
/// matrix; the result is in reduced echelon form.
pub fn spin(seeds: &FqMatrix, actions: &[FqMatrix]) -> FqMatrix {
    let field = seeds.field.clone();
    let n = seeds.cols;
    for a in actions {
        assert_eq!(a.rows, n, "action matrices must match the vector length");
        assert_eq!(a.rows, a.cols);
    }
    let prepared: Vec<RowAction> = actions.iter().map(RowAction::prepare).collect();
    let mut space = EchelonSpace::new(field, n);
    let mut queue: Vec<Vec<Fq>> = Vec::new();
    for i in 0..seeds.rows {
        let row = seeds.row(i).to_vec();
        if space.insert(row.clone()) {
            queue.push(row);
        }
    }
    let mut at = 0;
    while at < queue.len() {
        if space.dim() == n {
            // the full space is closed under anything
            return space.to_matrix();
        }
        let v = queue[at].clone();
        at += 1;
        for action in &prepared {
            let w = action.apply(&v);
            if space.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    space.to_matrix()
}
