//! Dense exact matrices over arbitrary-precision integers and rationals.
//!
//! Everything downstream (normal forms, duals, quotients, exactness checks)
//! reduces to a handful of primitives implemented here: Smith and column-style
//! Hermite normal forms with unimodular transforms, saturated integral
//! kernels, and Gaussian elimination over the rationals. No floating point
//! appears anywhere in the crate.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(x: i64) -> Int {
    Int::from(x)
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

pub fn rat_int(x: i64) -> Rat {
    Rat::from_integer(Int::from(x))
}

/// gcd of a slice, nonnegative; 0 for an empty or all-zero slice.
pub fn gcd_slice(xs: &[Int]) -> Int {
    let mut g = Int::zero();
    for x in xs {
        g = g.gcd(x);
    }
    g
}

pub fn vec_is_zero(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn vec_is_integral(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_integer())
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Rat], c: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * c).collect()
}

pub fn vec_neg(a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| -x).collect()
}

pub fn vec_to_rat(a: &[Int]) -> Vec<Rat> {
    a.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

// ---------------------------------------------------------------------------
// Integer matrices
// ---------------------------------------------------------------------------

/// Row-major dense matrix over `BigInt`.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

/// Smith normal form `u * m * v = d` with `u`, `v` unimodular and `d`
/// diagonal with a nonnegative divisibility chain.
pub struct Snf {
    pub d: IntMat,
    pub u: IntMat,
    pub v: IntMat,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, Int::from(*x));
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Int) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_cols(rows: usize, cols: &[Vec<Int>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for i in 0..rows {
                m.set(i, j, col[i].clone());
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

    pub fn at(&self, r: usize, c: usize) -> &Int {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Int) {
        self.data[r * self.cols + c] = v;
    }

    pub fn col_vec(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IntMat {
        IntMat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        IntMat::from_fn(self.rows, other.cols, |i, j| {
            let mut s = Int::zero();
            for k in 0..self.cols {
                s += self.at(i, k) * other.at(k, j);
            }
            s
        })
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = Int::zero();
                for k in 0..self.cols {
                    s += self.at(i, k) * &v[k];
                }
                s
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..i {
                if self.at(i, j) != self.at(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn to_rat(&self) -> RatMat {
        RatMat::from_fn(self.rows, self.cols, |i, j| Rat::from_integer(self.at(i, j).clone()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_i -= q * row_t
    fn row_sub_mul(&mut self, i: usize, t: usize, q: &Int) {
        for j in 0..self.cols {
            let x = self.at(t, j) * q;
            let v = self.at(i, j) - x;
            self.set(i, j, v);
        }
    }

    /// col_j -= q * col_t
    fn col_sub_mul(&mut self, j: usize, t: usize, q: &Int) {
        for i in 0..self.rows {
            let x = self.at(i, t) * q;
            let v = self.at(i, j) - x;
            self.set(i, j, v);
        }
    }

    /// row_t += row_i
    fn row_add_row(&mut self, t: usize, i: usize) {
        for j in 0..self.cols {
            let v = self.at(t, j) + self.at(i, j);
            self.set(t, j, v);
        }
    }

    fn neg_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.at(i, j).clone();
            self.set(i, j, v);
        }
    }

    fn neg_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.at(i, j).clone();
            self.set(i, j, v);
        }
    }

    /// Smith normal form with transforms: `u * self * v = d`.
    pub fn snf(&self) -> Snf {
        let (m, n) = (self.rows, self.cols);
        let mut d = self.clone();
        let mut u = IntMat::identity(m);
        let mut v = IntMat::identity(n);
        let mut t = 0;
        while t < m.min(n) {
            // smallest nonzero entry of the working block becomes the pivot
            let pivot = {
                let mut best: Option<(usize, usize)> = None;
                for i in t..m {
                    for j in t..n {
                        if !d.at(i, j).is_zero() {
                            let better = match &best {
                                None => true,
                                Some((bi, bj)) => d.at(i, j).abs() < d.at(*bi, *bj).abs(),
                            };
                            if better {
                                best = Some((i, j));
                            }
                        }
                    }
                }
                best
            };
            let Some((pi, pj)) = pivot else { break };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            'clear: loop {
                let mut dirty = false;
                for i in t + 1..m {
                    if !d.at(i, t).is_zero() {
                        let q = d.at(i, t) / d.at(t, t);
                        if !q.is_zero() {
                            d.row_sub_mul(i, t, &q);
                            u.row_sub_mul(i, t, &q);
                        }
                        if !d.at(i, t).is_zero() {
                            dirty = true;
                        }
                    }
                }
                if dirty {
                    // a smaller remainder appeared in the column; re-pivot on it
                    let (mut bi, mut first) = (t, true);
                    for i in t..m {
                        if !d.at(i, t).is_zero() && (first || d.at(i, t).abs() < d.at(bi, t).abs()) {
                            bi = i;
                            first = false;
                        }
                    }
                    d.swap_rows(t, bi);
                    u.swap_rows(t, bi);
                    continue 'clear;
                }
                for j in t + 1..n {
                    if !d.at(t, j).is_zero() {
                        let q = d.at(t, j) / d.at(t, t);
                        if !q.is_zero() {
                            d.col_sub_mul(j, t, &q);
                            v.col_sub_mul(j, t, &q);
                        }
                        if !d.at(t, j).is_zero() {
                            dirty = true;
                        }
                    }
                }
                if dirty {
                    let (mut bj, mut first) = (t, true);
                    for j in t..n {
                        if !d.at(t, j).is_zero() && (first || d.at(t, j).abs() < d.at(t, bj).abs()) {
                            bj = j;
                            first = false;
                        }
                    }
                    d.swap_cols(t, bj);
                    v.swap_cols(t, bj);
                    continue 'clear;
                }
                // pivot must divide the rest of the block for the chain
                let mut offender = None;
                'scan: for i in t + 1..m {
                    for j in t + 1..n {
                        if !(d.at(i, j) % d.at(t, t)).is_zero() {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                if let Some(i) = offender {
                    d.row_add_row(t, i);
                    u.row_add_row(t, i);
                    continue 'clear;
                }
                break 'clear;
            }
            if d.at(t, t).is_negative() {
                d.neg_row(t);
                u.neg_row(t);
            }
            t += 1;
        }
        Snf { d, u, v }
    }

    /// Invariant factors: diagonal of the SNF, with trailing zeros dropped.
    pub fn snf_diagonal(&self) -> Vec<Int> {
        let d = self.snf().d;
        (0..self.rows.min(self.cols))
            .map(|i| d.at(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    /// Column-style Hermite normal form with transform: `self * v = h`.
    ///
    /// Pivots are positive, pivot rows strictly increase left to right, and
    /// in a pivot row every entry left of the pivot is reduced into
    /// `[0, pivot)`. Zero columns are pushed to the right. The form is the
    /// unique such basis of the column lattice, which makes it usable as a
    /// canonical representative for sublattice equality.
    pub fn hnf_col(&self) -> (IntMat, IntMat) {
        let (m, n) = (self.rows, self.cols);
        let mut h = self.clone();
        let mut v = IntMat::identity(n);
        let mut c = 0;
        for r in 0..m {
            if c >= n {
                break;
            }
            if (c..n).all(|j| h.at(r, j).is_zero()) {
                continue;
            }
            loop {
                let (mut j0, mut first) = (c, true);
                for j in c..n {
                    if !h.at(r, j).is_zero() && (first || h.at(r, j).abs() < h.at(r, j0).abs()) {
                        j0 = j;
                        first = false;
                    }
                }
                h.swap_cols(c, j0);
                v.swap_cols(c, j0);
                let mut done = true;
                for j in c + 1..n {
                    if !h.at(r, j).is_zero() {
                        let q = h.at(r, j) / h.at(r, c);
                        if !q.is_zero() {
                            h.col_sub_mul(j, c, &q);
                            v.col_sub_mul(j, c, &q);
                        }
                        if !h.at(r, j).is_zero() {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if h.at(r, c).is_negative() {
                h.neg_col(c);
                v.neg_col(c);
            }
            for k in 0..c {
                let q = h.at(r, k).div_floor(h.at(r, c));
                if !q.is_zero() {
                    h.col_sub_mul(k, c, &q);
                    v.col_sub_mul(k, c, &q);
                }
            }
            c += 1;
        }
        (h, v)
    }

    /// Canonical basis of the column lattice: HNF with zero columns dropped.
    pub fn hnf_basis(&self) -> IntMat {
        let (h, _) = self.hnf_col();
        let keep: Vec<usize> = (0..h.cols)
            .filter(|&j| (0..h.rows).any(|i| !h.at(i, j).is_zero()))
            .collect();
        let mut out = IntMat::zeros(h.rows, keep.len());
        for (jj, &j) in keep.iter().enumerate() {
            for i in 0..h.rows {
                out.set(i, jj, h.at(i, j).clone());
            }
        }
        out
    }

    /// Basis of `{x in Z^cols : self * x = 0}`. The result is saturated.
    pub fn integral_kernel(&self) -> IntMat {
        if self.rows == 0 {
            return IntMat::identity(self.cols);
        }
        let (h, v) = self.hnf_col();
        let cols: Vec<Vec<Int>> = (0..self.cols)
            .filter(|&j| (0..self.rows).all(|i| h.at(i, j).is_zero()))
            .map(|j| v.col_vec(j))
            .collect();
        IntMat::from_cols(self.cols, &cols).hnf_basis()
    }

    /// Saturation of the column lattice inside `Z^rows`:
    /// the intersection of the rational column span with `Z^rows`,
    /// via a double integral kernel.
    pub fn saturation(&self) -> IntMat {
        let left_null = self.transpose().integral_kernel();
        left_null.transpose().integral_kernel()
    }

    /// Exact determinant (square matrices).
    pub fn det(&self) -> Int {
        let d = self.to_rat().det();
        assert!(d.is_integer());
        d.to_integer()
    }

    /// One integral solution `x` of `self * x = rhs` per column of `rhs`,
    /// or `None` if any column has no integral solution.
    pub fn solve_integral(&self, rhs: &IntMat) -> Option<IntMat> {
        assert_eq!(self.rows, rhs.rows);
        let Snf { d, u, v } = self.snf();
        let ub = u.mul(rhs);
        let rank = (0..self.rows.min(self.cols)).take_while(|&i| !d.at(i, i).is_zero()).count();
        let mut y = IntMat::zeros(self.cols, rhs.cols);
        for j in 0..rhs.cols {
            for i in 0..self.rows {
                if i < rank {
                    let (q, r) = ub.at(i, j).div_rem(d.at(i, i));
                    if !r.is_zero() {
                        return None;
                    }
                    y.set(i, j, q);
                } else if !ub.at(i, j).is_zero() {
                    return None;
                }
            }
        }
        Some(v.mul(&y))
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// Rational matrices
// ---------------------------------------------------------------------------

/// Row-major dense matrix over `BigRational`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_cols(rows: usize, cols: &[Vec<Rat>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for i in 0..rows {
                m.set(i, j, col[i].clone());
            }
        }
        m
    }

    pub fn from_col(v: &[Rat]) -> Self {
        Self::from_cols(v.len(), &[v.to_vec()])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn col_vec(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn cols_iter(&self) -> impl Iterator<Item = Vec<Rat>> + '_ {
        (0..self.cols).map(|j| self.col_vec(j))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> RatMat {
        RatMat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        RatMat::from_fn(self.rows, other.cols, |i, j| {
            let mut s = Rat::zero();
            for k in 0..self.cols {
                s += self.at(i, k) * other.at(k, j);
            }
            s
        })
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = Rat::zero();
                for k in 0..self.cols {
                    s += self.at(i, k) * &v[k];
                }
                s
            })
            .collect()
    }

    pub fn scale(&self, c: &Rat) -> RatMat {
        RatMat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * c)
    }

    pub fn neg(&self) -> RatMat {
        self.scale(&-Rat::one())
    }

    pub fn hcat(parts: &[&RatMat]) -> RatMat {
        assert!(!parts.is_empty());
        let rows = parts[0].rows;
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut m = RatMat::zeros(rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows);
            for j in 0..p.cols {
                for i in 0..rows {
                    m.set(i, off + j, p.at(i, j).clone());
                }
            }
            off += p.cols;
        }
        m
    }

    /// Submatrix of the given rows, all columns.
    pub fn row_slice(&self, rows: &[usize]) -> RatMat {
        RatMat::from_fn(rows.len(), self.cols, |i, j| self.at(rows[i], j).clone())
    }

    /// Reduced row echelon form plus pivot column indices.
    pub fn rref(&self) -> (RatMat, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r >= a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.at(i, c).is_zero()) else { continue };
            for j in 0..a.cols {
                a.data.swap(r * a.cols + j, p * a.cols + j);
            }
            let inv = a.at(r, c).recip();
            for j in 0..a.cols {
                let v = a.at(r, j) * &inv;
                a.set(r, j, v);
            }
            for i in 0..a.rows {
                if i != r && !a.at(i, c).is_zero() {
                    let f = a.at(i, c).clone();
                    for j in 0..a.cols {
                        let v = a.at(i, j) - &f * a.at(r, j);
                        a.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Any solution `x` of `self * x = rhs` (columnwise), or `None` if the
    /// system is inconsistent. Free variables are set to zero.
    pub fn solve(&self, rhs: &RatMat) -> Option<RatMat> {
        assert_eq!(self.rows, rhs.rows);
        let aug = RatMat::hcat(&[self, rhs]);
        let (e, pivots) = aug.rref();
        // a pivot inside the rhs block means inconsistency
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = RatMat::zeros(self.cols, rhs.cols);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(c, j, e.at(r, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn solve_vec(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        self.solve(&RatMat::from_col(rhs)).map(|m| m.col_vec(0))
    }

    pub fn inverse(&self) -> Option<RatMat> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&RatMat::identity(self.rows))?;
        if self.mul(&x) == RatMat::identity(self.rows) {
            Some(x)
        } else {
            None
        }
    }

    /// Basis of the right kernel `{x : self * x = 0}`, canonicalized.
    pub fn kernel(&self) -> RatMat {
        let (e, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let cols: Vec<Vec<Rat>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (r, &c) in pivots.iter().enumerate() {
                    v[c] = -e.at(r, f).clone();
                }
                v
            })
            .collect();
        RatMat::from_cols(self.cols, &cols).col_space_basis()
    }

    /// Canonical basis of the column span: reduced column echelon form with
    /// zero columns dropped. Equal spans give equal bases.
    pub fn col_space_basis(&self) -> RatMat {
        let (e, pivots) = self.transpose().rref();
        let cols: Vec<Vec<Rat>> = (0..pivots.len()).map(|r| e.transpose().col_vec(r)).collect();
        RatMat::from_cols(self.rows, &cols)
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a.at(i, c).is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                for j in 0..n {
                    a.data.swap(c * n + j, p * n + j);
                }
                det = -det;
            }
            det *= a.at(c, c);
            let inv = a.at(c, c).recip();
            for i in c + 1..n {
                if !a.at(i, c).is_zero() {
                    let f = a.at(i, c) * &inv;
                    for j in c..n {
                        let v = a.at(i, j) - &f * a.at(c, j);
                        a.set(i, j, v);
                    }
                }
            }
        }
        det
    }

    pub fn denominators_lcm(&self) -> Int {
        let mut l = Int::one();
        for x in &self.data {
            l = l.lcm(x.denom());
        }
        l
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn to_int(&self) -> Option<IntMat> {
        if !self.is_integral() {
            return None;
        }
        Some(IntMat::from_fn(self.rows, self.cols, |i, j| self.at(i, j).to_integer()))
    }

    /// `(m, d)` with `m` integral and `self = m / d`.
    pub fn scale_to_int(&self) -> (IntMat, Int) {
        let d = self.denominators_lcm();
        let dr = Rat::from_integer(d.clone());
        let m = IntMat::from_fn(self.rows, self.cols, |i, j| (self.at(i, j) * &dr).to_integer());
        (m, d)
    }

    /// Canonical basis of the lattice generated by the columns
    /// (column HNF of the cleared-denominator matrix, scaled back).
    pub fn lattice_hnf(&self) -> RatMat {
        let (m, d) = self.scale_to_int();
        let h = m.hnf_basis();
        h.to_rat().scale(&Rat::new(Int::one(), d))
    }

    /// Membership of `v` in the lattice generated by the columns.
    /// The basis must have full column rank (e.g. output of `lattice_hnf`).
    pub fn lattice_contains(&self, v: &[Rat]) -> bool {
        if vec_is_zero(v) {
            return true;
        }
        if self.cols == 0 {
            return false;
        }
        match self.solve_vec(v) {
            None => false,
            Some(x) => {
                vec_is_integral(&x) && self.mul_vec(&x) == v.to_vec()
            }
        }
    }
}

impl fmt::Debug for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Quotient of two lattices with equal rational span, `sub âŠ† sup`:
/// invariant factors (including 1s) and generator lifts in ambient
/// coordinates. Returns `None` if the quotient is not finite.
pub fn lattice_quotient(sup: &RatMat, sub: &RatMat) -> Option<(Vec<Int>, RatMat)> {
    let sup = sup.lattice_hnf();
    let sub = sub.lattice_hnf();
    if sub.cols() < sup.cols() {
        return None;
    }
    let c = sup.solve(&sub)?;
    let c = c.to_int()?;
    if c.rows() != c.cols() {
        return None;
    }
    let Snf { d, u, .. } = c.snf();
    let n = c.rows();
    if (0..n).any(|i| d.at(i, i).is_zero()) {
        return None;
    }
    let u_inv = u.to_rat().inverse().expect("unimodular");
    let lifts = sup.mul(&u_inv);
    let factors: Vec<Int> = (0..n).map(|i| d.at(i, i).clone()).collect();
    Some((factors, lifts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[Vec<i64>]) -> IntMat {
        IntMat::from_rows(rows)
    }

    #[test]
    fn snf_identity() {
        let m = IntMat::identity(2);
        let s = m.snf();
        assert_eq!(s.d, IntMat::identity(2));
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
    }

    #[test]
    fn snf_examples() {
        // diag(2,3) -> diag(1,6); hyperbolic plane -> diag(1,1)
        let m = im(&[vec![2, 0], vec![0, 3]]);
        let s = m.snf();
        assert_eq!(s.d, im(&[vec![1, 0], vec![0, 6]]));
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        assert_eq!(s.u.det().abs(), int(1));
        assert_eq!(s.v.det().abs(), int(1));

        let m = im(&[vec![0, 1], vec![1, 0]]);
        let s = m.snf();
        assert_eq!(s.d, IntMat::identity(2));
    }

    #[test]
    fn snf_divisibility_chain() {
        let m = im(&[vec![4, 2, 0], vec![2, 8, 2], vec![0, 2, 12]]);
        let s = m.snf();
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d);
        let diag: Vec<Int> = (0..3).map(|i| s.d.at(i, i).clone()).collect();
        for w in diag.windows(2) {
            if !w[1].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "chain broken: {:?}", diag);
            }
        }
    }

    #[test]
    fn hnf_canonical() {
        // two generating sets of the same lattice agree in HNF
        let a = im(&[vec![2, 1], vec![0, 3]]);
        let b = im(&[vec![1, 2], vec![3, 0]]); // swapped columns
        assert_eq!(a.hnf_basis(), b.hnf_basis());
        // pivots positive, left-of-pivot entries reduced
        let h = a.hnf_basis();
        assert!(h.at(0, 0) > &Int::zero());
    }

    #[test]
    fn hnf_transform_consistency() {
        let a = im(&[vec![6, 4, 2], vec![9, 0, 3]]);
        let (h, v) = a.hnf_col();
        assert_eq!(a.mul(&v), h);
        assert_eq!(v.det().abs(), int(1));
    }

    #[test]
    fn integral_kernel_saturated() {
        let a = im(&[vec![2, 4]]);
        let k = a.integral_kernel();
        // kernel of (2 4) over Z is generated by (2, -1) (primitive)
        assert_eq!(k.cols(), 1);
        let g = gcd_slice(&k.col_vec(0));
        assert_eq!(g, int(1));
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn saturation_of_index_two() {
        let a = im(&[vec![2], vec![0]]);
        let s = a.saturation();
        assert_eq!(s, im(&[vec![1], vec![0]]));
    }

    #[test]
    fn rat_solve_and_inverse() {
        let a = im(&[vec![0, 2], vec![2, 0]]).to_rat();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), RatMat::identity(2));
        let x = a.solve_vec(&[rat_int(4), rat_int(6)]).unwrap();
        assert_eq!(x, vec![rat_int(3), rat_int(2)]);
    }

    #[test]
    fn rat_kernel() {
        let a = im(&[vec![1, 2, 3]]).to_rat();
        let k = a.kernel();
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn det_exact() {
        let a = im(&[vec![2, 1], vec![1, 2]]);
        assert_eq!(a.det(), int(3));
        let u = im(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(u.det(), int(-1));
    }

    #[test]
    fn lattice_hnf_scale_invariant() {
        let m = RatMat::from_cols(
            2,
            &[vec![rat(1, 2), rat_int(0)], vec![rat_int(0), rat(1, 2)], vec![rat(1, 2), rat(1, 2)]],
        );
        let h = m.lattice_hnf();
        assert_eq!(h.cols(), 2);
        assert!(h.lattice_contains(&[rat(1, 2), rat(1, 2)]));
        assert!(!h.lattice_contains(&[rat(1, 4), rat_int(0)]));
    }

    #[test]
    fn lattice_quotient_structure() {
        // Z^2 / 2Z^2 = (Z/2)^2
        let sup = RatMat::identity(2);
        let sub = sup.scale(&rat_int(2));
        let (factors, _) = lattice_quotient(&sup, &sub).unwrap();
        assert_eq!(factors, vec![int(2), int(2)]);
    }

    #[test]
    fn solve_integral_via_snf() {
        let a = im(&[vec![2, 0], vec![0, 3]]);
        let b = im(&[vec![4], vec![9]]);
        let x = a.solve_integral(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        let b_bad = im(&[vec![1], vec![0]]);
        assert!(a.solve_integral(&b_bad).is_none());
    }

    #[test]
    fn empty_edges() {
        let e = IntMat::zeros(3, 0);
        assert_eq!(e.hnf_basis().cols(), 0);
        assert_eq!(e.saturation().cols(), 0);
        let z = IntMat::zeros(0, 0);
        assert_eq!(z.det(), int(1));
        assert!(z.is_symmetric());
    }
}
