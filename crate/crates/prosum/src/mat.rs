//! Exact dense matrices over a chain ring, Howell normal form, and linear
//! system solving.
//!
//! All maps in this crate act on row vectors: the composite "f then g" has
//! matrix `F * G`. The Howell form plays the role that reduced row echelon
//! form plays over a field; it is canonical for the row span and makes
//! kernels and membership tests exact over `Z/p^k`.

use crate::error::{Error, Result};
use crate::ring::ChainRing;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    ring: ChainRing,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Mat {
    pub fn from_rows(ring: ChainRing, rows: Vec<Vec<u64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch(format!(
                    "ragged rows: expected {} columns, found {}",
                    c,
                    row.len()
                )));
            }
            data.extend(row.iter().map(|&x| ring.reduce(x)));
        }
        Ok(Mat {
            ring,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Like `from_rows` but with signed entries, reduced into `[0, p^k)`.
    pub fn from_rows_i64(ring: ChainRing, rows: Vec<Vec<i64>>) -> Result<Self> {
        Mat::from_rows(
            ring,
            rows.into_iter()
                .map(|row| row.into_iter().map(|x| ring.reduce_i64(x)).collect())
                .collect(),
        )
    }

    pub fn zero(ring: ChainRing, rows: usize, cols: usize) -> Self {
        Mat {
            ring,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(ring: ChainRing, n: usize) -> Self {
        let mut m = Mat::zero(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % ring.modulus();
        }
        m
    }

    pub fn ring(&self) -> ChainRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = self.ring.reduce(v);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<u64> {
        self.row(r).to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Mat::identity(self.ring, self.rows)
    }

    fn check_same_ring(&self, other: &Mat) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.check_same_ring(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "add {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.ring.add(a, b))
            .collect();
        Ok(Mat {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.check_same_ring(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "sub {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.ring.sub(a, b))
            .collect();
        Ok(Mat {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: u64) -> Mat {
        let c = self.ring.reduce(c);
        Mat {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| self.ring.mul(x, c)).collect(),
        }
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        self.check_same_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "mul {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let n = self.ring.modulus() as u128;
        let mut out = Mat::zero(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.data[i * self.cols + l];
                if a == 0 {
                    continue;
                }
                let a = a as u128;
                let orow = &other.data[l * other.cols..(l + 1) * other.cols];
                let trow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (t, &b) in trow.iter_mut().zip(orow) {
                    *t = ((*t as u128 + a * b as u128) % n) as u64;
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.ring, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        out
    }

    /// Kronecker product; index `(a, b) -> a * other.rows + b` on each side.
    pub fn kron(&self, other: &Mat) -> Result<Mat> {
        self.check_same_ring(other)?;
        let mut out = Mat::zero(self.ring, self.rows * other.rows, self.cols * other.cols);
        for a in 0..self.rows {
            for c in 0..self.cols {
                let x = self.get(a, c);
                if x == 0 {
                    continue;
                }
                for b in 0..other.rows {
                    for d in 0..other.cols {
                        let v = self.ring.mul(x, other.get(b, d));
                        out.data[(a * other.rows + b) * out.cols + (c * other.cols + d)] = v;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Stack `self` on top of `other`.
    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        self.check_same_ring(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "vstack with {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat {
            ring: self.ring,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        self.check_same_ring(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack with {} and {} rows",
                self.rows, other.rows
            )));
        }
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(Mat {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        })
    }

    /// Block-diagonal sum of two matrices.
    pub fn block_diag(&self, other: &Mat) -> Result<Mat> {
        self.check_same_ring(other)?;
        let mut out = Mat::zero(
            self.ring,
            self.rows + other.rows,
            self.cols + other.cols,
        );
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[r * out.cols + c] = self.get(r, c);
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.data[(self.rows + r) * out.cols + (self.cols + c)] = other.get(r, c);
            }
        }
        Ok(out)
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Mat {
        let mut out = Mat::zero(self.ring, row_idx.len(), col_idx.len());
        for (i, &r) in row_idx.iter().enumerate() {
            for (j, &c) in col_idx.iter().enumerate() {
                out.data[i * out.cols + j] = self.get(r, c);
            }
        }
        out
    }

    /// Inverse over the chain ring, computed by Gauss-Jordan elimination with
    /// unit pivots. A square matrix over a local ring is invertible exactly
    /// when such pivots can be found in every column.
    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let ring = self.ring;
        let mut a = self.clone();
        let mut inv = Mat::identity(ring, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| ring.is_unit(a.get(r, col)))?;
            if pivot != col {
                for c in 0..n {
                    let (x, y) = (a.get(col, c), a.get(pivot, c));
                    a.set(col, c, y);
                    a.set(pivot, c, x);
                    let (x, y) = (inv.get(col, c), inv.get(pivot, c));
                    inv.set(col, c, y);
                    inv.set(pivot, c, x);
                }
            }
            let u = ring.inv(a.get(col, col)).unwrap();
            for c in 0..n {
                a.set(col, c, ring.mul(a.get(col, c), u));
                inv.set(col, c, ring.mul(inv.get(col, c), u));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col);
                if f == 0 {
                    continue;
                }
                for c in 0..n {
                    let v = ring.sub(a.get(r, c), ring.mul(f, a.get(col, c)));
                    a.set(r, c, v);
                    let v = ring.sub(inv.get(r, c), ring.mul(f, inv.get(col, c)));
                    inv.set(r, c, v);
                }
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_some()
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row_vec(r)).collect()
    }
}

fn lead(v: &[u64]) -> Option<usize> {
    v.iter().position(|&x| x != 0)
}

/// Incremental Howell-form builder over a chain ring.
///
/// Rows are inserted one at a time; the builder maintains pivot rows with
/// strictly increasing leading columns, each normalized so its leading entry
/// is a power of `p`, and keeps the span closed under annihilator multiples.
/// `finish` performs the final reduction that makes the form canonical.
struct HowellBuilder {
    ring: ChainRing,
    cols: usize,
    // pivot row for each column, if any
    by_col: Vec<Option<Vec<u64>>>,
    queue: Vec<Vec<u64>>,
}

impl HowellBuilder {
    fn new(ring: ChainRing, cols: usize) -> Self {
        HowellBuilder {
            ring,
            cols,
            by_col: vec![None; cols],
            queue: Vec::new(),
        }
    }

    fn push(&mut self, v: Vec<u64>) {
        self.queue.push(v);
        while let Some(w) = self.queue.pop() {
            self.insert(w);
        }
    }

    fn normalize(&self, mut v: Vec<u64>, c: usize) -> (Vec<u64>, u32) {
        let ring = self.ring;
        let e = ring.val(v[c]);
        let u = ring.unit_part(v[c]);
        if u != 1 {
            let uinv = ring.inv(u).unwrap();
            for x in v.iter_mut() {
                *x = ring.mul(*x, uinv);
            }
        }
        (v, e)
    }

    fn insert(&mut self, mut v: Vec<u64>) {
        let ring = self.ring;
        loop {
            let Some(c) = lead(&v) else { return };
            match self.by_col[c].take() {
                None => {
                    let (v, e) = self.normalize(v, c);
                    if e > 0 {
                        let ann = ring.p_pow(ring.k() - e);
                        let extra: Vec<u64> = v.iter().map(|&x| ring.mul(x, ann)).collect();
                        self.queue.push(extra);
                    }
                    self.by_col[c] = Some(v);
                    return;
                }
                Some(q) => {
                    let e_q = ring.val(q[c]);
                    let e_v = ring.val(v[c]);
                    if e_v >= e_q {
                        // leading entry of v is divisible by the pivot entry
                        let f = v[c] / ring.p_pow(e_q);
                        for (x, &y) in v.iter_mut().zip(q.iter()) {
                            *x = ring.sub(*x, ring.mul(f, y));
                        }
                        self.by_col[c] = Some(q);
                    } else {
                        // v has the smaller valuation: it becomes the pivot
                        let (nv, e) = self.normalize(v, c);
                        let ann = ring.p_pow(ring.k() - e);
                        let extra: Vec<u64> = nv.iter().map(|&x| ring.mul(x, ann)).collect();
                        self.queue.push(extra);
                        self.by_col[c] = Some(nv);
                        v = q;
                    }
                }
            }
        }
    }

    /// Reduce entries above each pivot and emit the canonical form.
    fn finish(mut self) -> Vec<Vec<u64>> {
        let ring = self.ring;
        let pivot_cols: Vec<usize> = (0..self.cols).filter(|&c| self.by_col[c].is_some()).collect();
        for &c in &pivot_cols {
            let pivot = self.by_col[c].clone().unwrap();
            let e = ring.val(pivot[c]);
            let pe = ring.p_pow(e);
            for &c2 in &pivot_cols {
                if c2 >= c {
                    break;
                }
                let row = self.by_col[c2].as_mut().unwrap();
                let x = row[c];
                if x == 0 {
                    continue;
                }
                // reduce the representative modulo p^e
                let f = x / pe;
                if f == 0 {
                    continue;
                }
                for (a, &b) in row.iter_mut().zip(pivot.iter()) {
                    *a = ring.sub(*a, ring.mul(f, b));
                }
            }
        }
        pivot_cols
            .into_iter()
            .map(|c| self.by_col[c].take().unwrap())
            .collect()
    }
}

/// Howell normal form of `a`: the canonical generating matrix of the row
/// span. Zero rows are dropped, so the result has one row per pivot. Over a
/// field this is the reduced row echelon form without zero rows.
pub fn howell_form(a: &Mat) -> Mat {
    let mut b = HowellBuilder::new(a.ring(), a.cols());
    for r in 0..a.rows() {
        b.push(a.row_vec(r));
    }
    let rows = b.finish();
    if rows.is_empty() {
        Mat::zero(a.ring(), 0, a.cols())
    } else {
        Mat::from_rows(a.ring(), rows).expect("howell rows are rectangular")
    }
}

/// Number of elements in the row span of a Howell-form matrix.
fn span_size(ring: ChainRing, howell: &Mat) -> u128 {
    let mut size: u128 = 1;
    for r in 0..howell.rows() {
        let c = lead(howell.row(r)).expect("howell rows are nonzero");
        let e = ring.val(howell.get(r, c));
        let mut f: u128 = 1;
        for _ in 0..(ring.k() - e) {
            f *= ring.p() as u128;
        }
        size *= f;
    }
    size
}

/// The complete solution set of `x * A = b`: one particular solution (absent
/// when the system is inconsistent) plus a Howell-position generating set of
/// the kernel `{x : x * A = 0}`.
#[derive(Debug, Clone)]
pub struct SolutionSet {
    pub particular: Option<Vec<u64>>,
    pub kernel: Mat,
}

impl SolutionSet {
    /// Enumerates every solution. Only for small rings and kernels; used by
    /// oracle tests and the element-table machinery.
    pub fn enumerate(&self, ring: ChainRing) -> Vec<Vec<u64>> {
        let Some(part) = &self.particular else {
            return Vec::new();
        };
        let kr = self.kernel.rows();
        let mut sols = std::collections::BTreeSet::new();
        let mut coeffs = vec![0u64; kr];
        loop {
            let mut x = part.clone();
            for (i, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    for (xi, &ki) in x.iter_mut().zip(self.kernel.row(i)) {
                        *xi = ring.add(*xi, ring.mul(c, ki));
                    }
                }
            }
            sols.insert(x);
            // odometer over coefficient tuples
            let mut i = 0;
            loop {
                if i == kr {
                    return sols.into_iter().collect();
                }
                coeffs[i] += 1;
                if coeffs[i] == ring.modulus() {
                    coeffs[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
            if kr == 0 {
                return sols.into_iter().collect();
            }
        }
    }
}

/// Repeated-solve helper: Howell form of `[A | I]`, from which both kernel
/// generators of `x A = 0` and particular solutions of `x A = b` are read off.
#[derive(Debug, Clone)]
pub struct RowSolver {
    ring: ChainRing,
    cols: usize,
    n_rows: usize,
    howell: Mat,
}

impl RowSolver {
    pub fn new(a: &Mat) -> Self {
        let ring = a.ring();
        let aug = a
            .hstack(&Mat::identity(ring, a.rows()))
            .expect("hstack with identity");
        let howell = howell_form(&aug);
        RowSolver {
            ring,
            cols: a.cols(),
            n_rows: a.rows(),
            howell,
        }
    }

    /// Howell-position generating set of the kernel of `x -> x A`.
    pub fn kernel(&self) -> Mat {
        let mut rows = Vec::new();
        for r in 0..self.howell.rows() {
            let row = self.howell.row(r);
            if row[..self.cols].iter().all(|&x| x == 0) {
                rows.push(row[self.cols..].to_vec());
            }
        }
        if rows.is_empty() {
            Mat::zero(self.ring, 0, self.n_rows)
        } else {
            Mat::from_rows(self.ring, rows).unwrap()
        }
    }

    /// One solution of `x A = b`, if any.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.cols, "right-hand side length");
        let ring = self.ring;
        let mut residual: Vec<u64> = b.iter().map(|&x| ring.reduce(x)).collect();
        let mut x = vec![0u64; self.n_rows];
        for r in 0..self.howell.rows() {
            let row = self.howell.row(r);
            let Some(c) = lead(&row[..self.cols]) else { continue };
            if residual[c] == 0 {
                continue;
            }
            let e = ring.val(row[c]);
            if ring.val(residual[c]) < e {
                return None;
            }
            let f = residual[c] / ring.p_pow(e);
            for (ri, &hi) in residual.iter_mut().zip(&row[..self.cols]) {
                *ri = ring.sub(*ri, ring.mul(f, hi));
            }
            for (xi, &ti) in x.iter_mut().zip(&row[self.cols..]) {
                *xi = ring.add(*xi, ring.mul(f, ti));
            }
        }
        if residual.iter().all(|&v| v == 0) {
            Some(x)
        } else {
            None
        }
    }

    /// Solves `X A = B` row by row; `None` if any row is inconsistent.
    pub fn solve_mat(&self, b: &Mat) -> Option<Mat> {
        let mut rows = Vec::with_capacity(b.rows());
        for r in 0..b.rows() {
            rows.push(self.solve(b.row(r))?);
        }
        if rows.is_empty() {
            return Some(Mat::zero(self.ring, 0, self.n_rows));
        }
        Some(Mat::from_rows(self.ring, rows).expect("solution rows are rectangular"))
    }
}

/// Full solution set of `x A = b`.
pub fn solve_affine(a: &Mat, b: &[u64]) -> Result<SolutionSet> {
    if b.len() != a.cols() {
        return Err(Error::DimensionMismatch(format!(
            "solve_affine: A has {} columns, b has length {}",
            a.cols(),
            b.len()
        )));
    }
    let solver = RowSolver::new(a);
    Ok(SolutionSet {
        particular: solver.solve(b),
        kernel: solver.kernel(),
    })
}

/// Cardinalities of the image and kernel of `x -> x A`. Their product is
/// `|R|^rows` by the first isomorphism theorem; both are computed
/// independently from Howell forms.
pub fn rank_profile(a: &Mat) -> (u128, u128) {
    let ring = a.ring();
    let image = span_size(ring, &howell_form(a));
    let kernel = span_size(ring, &howell_form(&RowSolver::new(a).kernel()));
    (image, kernel)
}

/// Dimension of the row span over a field. Panics over non-fields.
pub fn field_rank(a: &Mat) -> usize {
    assert!(a.ring().is_field(), "field_rank needs field coefficients");
    howell_form(a).rows()
}

/// All vectors of `R^dim` in mixed-radix order, rejected when there are more
/// than `cap` of them. Used by exhaustive element-table checks.
pub fn enumerate_elements(ring: ChainRing, dim: usize, cap: usize) -> Result<Vec<Vec<u64>>> {
    let total = (ring.modulus() as u128).checked_pow(dim as u32);
    match total {
        Some(t) if t <= cap as u128 => {}
        _ => {
            return Err(Error::EnumerationTooLarge(format!(
                "|R|^{} exceeds the cap of {}",
                dim, cap
            )))
        }
    }
    let total = total.unwrap() as usize;
    let mut out = Vec::with_capacity(total);
    for code in 0..total {
        out.push(decode_element(ring, dim, code));
    }
    Ok(out)
}

/// Mixed-radix code of a vector, inverse of `decode_element`.
pub fn element_code(ring: ChainRing, v: &[u64]) -> usize {
    let m = ring.modulus() as usize;
    v.iter().rev().fold(0usize, |acc, &x| acc * m + x as usize)
}

pub fn decode_element(ring: ChainRing, dim: usize, mut code: usize) -> Vec<u64> {
    let m = ring.modulus() as usize;
    let mut v = Vec::with_capacity(dim);
    for _ in 0..dim {
        v.push((code % m) as u64);
        code /= m;
    }
    v
}

/// True when the rows of `a` span all of `R^cols`.
pub fn rows_span_everything(a: &Mat) -> bool {
    let h = howell_form(a);
    if h.rows() != a.cols() {
        return false;
    }
    (0..h.rows()).all(|r| {
        let row = h.row(r);
        lead(row).map_or(false, |c| a.ring().is_unit(row[c]))
    })
}
