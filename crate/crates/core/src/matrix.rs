//! Dense exact matrices, sparse rational elimination, and subspaces of
//! matrix spaces (centralizers, normalizers, power spaces).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::PolyQ;
use crate::scalar::{Field, QuadExt, Rational, Ring};

/// Row-major dense matrix over a ring `R`.
#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

pub type MatrixQ = Matrix<Rational>;

impl<R: Ring> Matrix<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros_like(rows: usize, cols: usize, z: &R) -> Self {
        let zero = z.zero_like();
        Matrix::from_fn(rows, cols, |_, _| zero.clone())
    }

    pub fn identity_like(n: usize, z: &R) -> Self {
        let (zero, one) = (z.zero_like(), z.one_like());
        Matrix::from_fn(n, n, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[R] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<R> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    /// A representative entry, used to produce context-carrying constants.
    fn sample(&self) -> Option<&R> {
        self.data.first()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.clone() * c)
    }

    pub fn require_square(&self) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b).collect(),
        })
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b).collect(),
        })
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let zero = match self.sample().or(o.sample()) {
            Some(z) => z.zero_like(),
            None => return Ok(Matrix { rows: self.rows, cols: o.cols, data: vec![] }),
        };
        let mut data = vec![zero; self.rows * o.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let t = a.clone() * b;
                    let slot = &mut data[i * o.cols + j];
                    *slot = slot.clone() + t;
                }
            }
        }
        Ok(Matrix { rows: self.rows, cols: o.cols, data })
    }

    pub fn mul_vec(&self, v: &[R]) -> Result<Vec<R>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = v.first().map(|x| x.zero_like()).unwrap_or_else(|| self.get(i, 0).zero_like());
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc + a.clone() * x;
                    }
                }
                acc
            })
            .collect())
    }

    /// [A, B] = AB − BA.
    pub fn commutator(&self, o: &Self) -> Result<Self> {
        self.checked_mul(o)?.checked_sub(&o.checked_mul(self)?)
    }

    pub fn commutes_with(&self, o: &Self) -> Result<bool> {
        Ok(self.commutator(o)?.is_zero())
    }

    pub fn trace(&self) -> Result<R> {
        let n = self.require_square()?;
        let mut acc = self.sample().ok_or(Error::InvalidArgument("empty matrix".into()))?.zero_like();
        for i in 0..n {
            acc = acc + self.get(i, i);
        }
        Ok(acc)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let n = self.require_square()?;
        let z = self.sample().ok_or(Error::InvalidArgument("empty matrix".into()))?;
        let mut acc = Matrix::identity_like(n, z);
        for _ in 0..e {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Determinant by Laplace expansion along rows, memoized over the set of
    /// columns already used. Needs no division, so it works over any ring.
    pub fn det_laplace(&self) -> Result<R> {
        let n = self.require_square()?;
        if n == 0 {
            return R::detached_zero()
                .map(|z| z.one_like())
                .ok_or(Error::InvalidArgument("empty matrix".into()));
        }
        if n > 24 {
            return Err(Error::InvalidArgument(format!("n = {n} too large for subset expansion")));
        }
        let zero = self.data[0].zero_like();
        // dp[mask]: determinant of the minor on the first popcount(mask) rows
        // and the columns in mask.
        let mut dp: Vec<Option<R>> = vec![None; 1 << n];
        dp[0] = Some(zero.one_like());
        for mask in 1usize..(1 << n) {
            let r = mask.count_ones() as usize - 1;
            let mut acc = zero.clone();
            let mut any = false;
            let mut pos = 0usize;
            for c in 0..n {
                if mask & (1 << c) == 0 {
                    continue;
                }
                let a = self.get(r, c);
                if !a.is_zero() {
                    if let Some(sub) = &dp[mask & !(1 << c)] {
                        // column c is the pos-th chosen column
                        let mut term = a.clone() * sub;
                        if (r + pos) % 2 == 1 {
                            term = -term;
                        }
                        acc = acc + term;
                        any = true;
                    }
                }
                pos += 1;
            }
            if any && !acc.is_zero() {
                dp[mask] = Some(acc);
            }
        }
        Ok(dp[(1 << n) - 1].clone().unwrap_or(zero))
    }

    /// Block-diagonal matrix from square blocks.
    pub fn block_diag(blocks: &[Matrix<R>]) -> Result<Self> {
        let z = blocks
            .iter()
            .find_map(|b| b.sample())
            .ok_or(Error::InvalidArgument("no nonempty block".into()))?
            .zero_like();
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros_like(n, m, &z);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(out)
    }

    /// Horizontal concatenation.
    pub fn hstack(parts: &[Matrix<R>]) -> Result<Self> {
        let rows = parts.first().map_or(0, |p| p.rows);
        if parts.iter().any(|p| p.rows != rows) {
            return Err(Error::DimensionMismatch("hstack with differing row counts".into()));
        }
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for p in parts {
                data.extend_from_slice(&p.data[i * p.cols..(i + 1) * p.cols]);
            }
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<R>]) -> Result<Self> {
        let rows = cols.first().map_or(0, |c| c.len());
        if cols.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch("columns of differing length".into()));
        }
        Ok(Matrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone()))
    }
}

impl<R: Field> Matrix<R> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j).clone() * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let pr = m.get(r, j);
                    if pr.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).clone() - f.clone() * pr;
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Kernel basis, one vector per free column, in echelon order.
    pub fn kernel(&self) -> Vec<Vec<R>> {
        let Some(z) = self.sample().cloned() else {
            return vec![];
        };
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![z.zero_like(); self.cols];
                v[f] = z.one_like();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `self · x = b`, or `None` when the system is
    /// inconsistent.
    pub fn solve(&self, b: &[R]) -> Result<Option<Vec<R>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let Some(z) = self.sample().or(b.first()).cloned() else {
            return Ok(Some(vec![]));
        };
        let aug = Matrix::hstack(&[self.clone(), Matrix::from_columns(&[b.to_vec()])?])?;
        let (m, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![z.zero_like(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = m.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.require_square()?;
        let Some(z) = self.sample() else {
            return Ok(self.clone());
        };
        let aug = Matrix::hstack(&[self.clone(), Matrix::identity_like(n, z)])?;
        let (m, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(Matrix::from_fn(n, n, |i, j| m.get(i, n + j).clone()))
    }

    /// Determinant by elimination.
    pub fn det(&self) -> Result<R> {
        let n = self.require_square()?;
        let Some(z) = self.sample() else {
            return R::detached_zero()
                .map(|z| z.one_like())
                .ok_or(Error::InvalidArgument("empty matrix".into()));
        };
        let mut m = self.clone();
        let mut det = z.one_like();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(z.zero_like());
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            let inv = piv.inv().expect("nonzero pivot");
            det = det * &piv;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone() * &inv;
                for j in c..n {
                    let v = m.get(i, j).clone() - f.clone() * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// P · M · P⁻¹.
    pub fn conjugate(&self, p: &Self) -> Result<Self> {
        p.checked_mul(self)?.checked_mul(&p.inverse()?)
    }

    pub fn is_invertible(&self) -> Result<bool> {
        let n = self.require_square()?;
        Ok(self.rank() == n)
    }
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| Rational::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::identity_like(n, &Rational::zero())
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        Matrix::new(rows, cols, data.iter().map(|&x| Rational::from_integer(x)).collect())
    }

    /// Unit matrix E_{i,j} of size n (0-based indices).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = MatrixQ::zeros(n, n);
        m.set(i, j, Rational::one());
        m
    }

    pub fn diag(entries: &[Rational]) -> Self {
        let n = entries.len();
        Matrix::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { Rational::zero() })
    }

    pub fn to_quad(&self, d: &Rational) -> Result<Matrix<QuadExt>> {
        let data = self
            .data
            .iter()
            .map(|x| QuadExt::from_rational(x.clone(), d))
            .collect::<Result<Vec<_>>>()?;
        Matrix::new(self.rows, self.cols, data)
    }

    /// Entries in row-major order as one vector of length rows·cols.
    pub fn flatten(&self) -> Vec<Rational> {
        self.data.clone()
    }

    pub fn unflatten(n: usize, v: &[Rational]) -> Result<Self> {
        Matrix::new(n, n, v.to_vec())
    }

    /// Monic det(X·I − M) by the Faddeev–LeVerrier recursion.
    pub fn char_poly(&self) -> Result<PolyQ> {
        let n = self.require_square()?;
        let mut c = vec![Rational::zero(); n + 1];
        c[n] = Rational::one();
        let mut mk = MatrixQ::zeros(n, n);
        for k in 1..=n {
            let mut next = self.checked_mul(&mk)?;
            for i in 0..n {
                let v = next.get(i, i) + &c[n - k + 1];
                next.set(i, i, v);
            }
            let t = self.checked_mul(&next)?.trace()?;
            c[n - k] = -(t / Rational::from_integer(k as i64));
            mk = next;
        }
        Ok(PolyQ::new(c))
    }

    /// Monic polynomial of least degree annihilating M, from the first
    /// linear dependence among I, M, M², ….
    pub fn min_poly(&self) -> Result<PolyQ> {
        let n = self.require_square()?;
        let mut powers = vec![MatrixQ::identity(n).flatten()];
        let mut cur = MatrixQ::identity(n);
        for k in 1..=n {
            cur = cur.checked_mul(self)?;
            let target = cur.flatten();
            let a = Matrix::from_columns(&powers)?;
            if let Some(x) = a.solve(&target)? {
                let mut coeffs: Vec<Rational> = x.into_iter().map(|c| -c).collect();
                coeffs.push(Rational::one());
                debug_assert_eq!(coeffs.len(), k + 1);
                return Ok(PolyQ::new(coeffs));
            }
            powers.push(target);
        }
        Err(Error::Inconsistent("no dependence among the first n+1 powers".into()))
    }

    /// p(M) by Horner's rule.
    pub fn eval_poly(&self, p: &PolyQ) -> Result<Self> {
        let n = self.require_square()?;
        let mut acc = MatrixQ::zeros(n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.checked_mul(self)?;
            for i in 0..n {
                let v = acc.get(i, i) + c;
                acc.set(i, i, v);
            }
        }
        Ok(acc)
    }

    /// Rank via the sparse eliminator; cheaper than `rank` on big sparse
    /// matrices.
    pub fn rank_sparse(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for i in 0..self.rows {
            e.insert(dense_to_sparse(&self.row(i)));
        }
        e.rank()
    }
}

impl<R: Ring> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{}\n{}", self.rows, self.cols, self)
    }
}

macro_rules! matrix_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a, 'b, R: Ring> $tr<&'b Matrix<R>> for &'a Matrix<R> {
            type Output = Matrix<R>;
            fn $m(self, rhs: &'b Matrix<R>) -> Matrix<R> {
                self.$checked(rhs).expect("matrix shapes")
            }
        }
        impl<R: Ring> $tr<Matrix<R>> for Matrix<R> {
            type Output = Matrix<R>;
            fn $m(self, rhs: Matrix<R>) -> Matrix<R> {
                self.$checked(&rhs).expect("matrix shapes")
            }
        }
    };
}

matrix_binop!(Add, add, checked_add);
matrix_binop!(Sub, sub, checked_sub);
matrix_binop!(Mul, mul, checked_mul);

impl<R: Ring> Neg for Matrix<R> {
    type Output = Matrix<R>;
    fn neg(self) -> Matrix<R> {
        self.map(|x| -x.clone())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr<R> {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<R>>,
}

impl<R: Ring + Serialize> Serialize for Matrix<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            entries: self.to_rows(),
        }
        .serialize(s)
    }
}

impl<'de, R: Ring + DeserializeOwned> Deserialize<'de> for Matrix<R> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::<R>::deserialize(d)?;
        if repr.entries.len() != repr.rows || repr.entries.iter().any(|r| r.len() != repr.cols) {
            return Err(serde::de::Error::custom(format!(
                "entries do not form a {}x{} matrix",
                repr.rows, repr.cols
            )));
        }
        Ok(Matrix {
            rows: repr.rows,
            cols: repr.cols,
            data: repr.entries.into_iter().flatten().collect(),
        })
    }
}

pub type SparseRow = BTreeMap<usize, Rational>;

pub fn dense_to_sparse(v: &[Rational]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Incremental row echelon form over ℚ with sparse rows. Each stored row is
/// normalized so its leading entry is 1 at a column no other row leads at.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the stored pivots.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut from = 0usize;
        loop {
            let next = row
                .range(from..)
                .map(|(&k, _)| k)
                .find(|k| self.rows.contains_key(k));
            let Some(k) = next else { break };
            let f = row.remove(&k).expect("present");
            for (&j, v) in self.rows[&k].range(k + 1..) {
                let e = row.entry(j).or_insert_with(Rational::zero);
                *e -= &(&f * v);
                if e.is_zero() {
                    row.remove(&j);
                }
            }
            from = k + 1;
        }
        row
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut r = self.reduce(row);
        let Some((&lead, lv)) = r.iter().next() else {
            return false;
        };
        let inv = lv.recip().expect("nonzero");
        for v in r.values_mut() {
            *v *= &inv;
        }
        self.rows.insert(lead, r);
        true
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row.clone()).is_empty()
    }

    /// Fully reduced rows, in order of pivot column.
    pub fn rref_rows(&self) -> Vec<(usize, SparseRow)> {
        let mut done: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&p, row) in self.rows.iter().rev() {
            let mut r = row.clone();
            // eliminate entries at pivot columns to the right
            let later: Vec<usize> = r.range(p + 1..).map(|(&k, _)| k).filter(|k| done.contains_key(k)).collect();
            for k in later {
                let Some(f) = r.remove(&k) else { continue };
                for (&j, v) in done[&k].range(k + 1..) {
                    let e = r.entry(j).or_insert_with(Rational::zero);
                    *e -= &(&f * v);
                    if e.is_zero() {
                        r.remove(&j);
                    }
                }
            }
            done.insert(p, r);
        }
        done.into_iter().collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// Basis of the null space of the stored rows, one vector per free
    /// column.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let rref = self.rref_rows();
        (0..self.ncols)
            .filter(|c| !self.rows.contains_key(c))
            .map(|f| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[f] = Rational::one();
                for (p, row) in &rref {
                    if let Some(x) = row.get(&f) {
                        v[*p] = -x;
                    }
                }
                v
            })
            .collect()
    }
}

/// Subspace of ℚ^ambient with a basis in reduced row echelon form, so two
/// subspaces are equal exactly when their bases are.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: vec![],
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace::from_echelon(&{
            let mut e = Echelon::new(ambient_dim);
            for i in 0..ambient_dim {
                e.insert(BTreeMap::from([(i, Rational::one())]));
            }
            e
        })
    }

    pub fn from_echelon(e: &Echelon) -> Self {
        let basis = e
            .rref_rows()
            .into_iter()
            .map(|(_, row)| {
                let mut v = vec![Rational::zero(); e.ncols()];
                for (j, x) in row {
                    v[j] = x;
                }
                v
            })
            .collect();
        Subspace {
            ambient_dim: e.ncols(),
            basis,
        }
    }

    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        let mut e = Echelon::new(ambient_dim);
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch(format!(
                    "vector of length {} in ambient dimension {ambient_dim}",
                    v.len()
                )));
            }
            e.insert(dense_to_sparse(v));
        }
        Ok(Subspace::from_echelon(&e))
    }

    /// Span of n×n matrices, flattened row-major.
    pub fn span_matrices(n: usize, mats: &[MatrixQ]) -> Result<Self> {
        for m in mats {
            if m.rows() != n || m.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "expected {n}x{n}, got {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        let vs: Vec<Vec<Rational>> = mats.iter().map(|m| m.flatten()).collect();
        Subspace::span(n * n, &vs)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Basis vectors read back as n×n matrices.
    pub fn basis_matrices(&self) -> Result<Vec<MatrixQ>> {
        let n = (self.ambient_dim as f64).sqrt().round() as usize;
        if n * n != self.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimension {} is not a square",
                self.ambient_dim
            )));
        }
        self.basis.iter().map(|v| MatrixQ::unflatten(n, v)).collect()
    }

    fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.ambient_dim);
        for v in &self.basis {
            e.insert(dense_to_sparse(v));
        }
        e
    }

    fn pivot_cols(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|v| v.iter().position(|x| !x.is_zero()).expect("nonzero basis vector"))
            .collect()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        v.len() == self.ambient_dim && self.coordinates(v).is_some()
    }

    pub fn contains_matrix(&self, m: &MatrixQ) -> bool {
        self.contains(&m.flatten())
    }

    /// Coordinates of `v` in the echelon basis; they are the entries of `v`
    /// at the pivot columns.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if v.len() != self.ambient_dim {
            return None;
        }
        let coords: Vec<Rational> = self.pivot_cols().iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = vec![Rational::zero(); self.ambient_dim];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in rebuilt.iter_mut().zip(b) {
                *r += &(c * x);
            }
        }
        (rebuilt == v).then_some(coords)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut e = self.echelon();
        for v in &other.basis {
            e.insert(dense_to_sparse(v));
        }
        Ok(Subspace::from_echelon(&e))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        // Σ a_i u_i − Σ b_j w_j = 0, then map the a-part back.
        let k = self.dim();
        let m = other.dim();
        let mut e = Echelon::new(k + m);
        for row in 0..self.ambient_dim {
            let mut r = SparseRow::new();
            for (i, u) in self.basis.iter().enumerate() {
                if !u[row].is_zero() {
                    r.insert(i, u[row].clone());
                }
            }
            for (j, w) in other.basis.iter().enumerate() {
                if !w[row].is_zero() {
                    r.insert(k + j, -&w[row]);
                }
            }
            e.insert(r);
        }
        let vecs: Vec<Vec<Rational>> = e
            .kernel()
            .into_iter()
            .map(|sol| {
                let mut v = vec![Rational::zero(); self.ambient_dim];
                for (a, u) in sol[..k].iter().zip(&self.basis) {
                    if a.is_zero() {
                        continue;
                    }
                    for (x, y) in v.iter_mut().zip(u) {
                        *x += &(a * y);
                    }
                }
                v
            })
            .collect();
        Subspace::span(self.ambient_dim, &vecs)
    }

    /// Linear functionals vanishing on the subspace, as a basis of row
    /// vectors.
    pub fn annihilator(&self) -> Vec<Vec<Rational>> {
        self.echelon().kernel()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }
}

fn common_size(mats: &[MatrixQ]) -> Result<usize> {
    let first = mats
        .first()
        .ok_or(Error::InvalidArgument("empty matrix set".into()))?;
    let n = first.require_square()?;
    for m in mats {
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "expected {n}x{n}, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
    }
    Ok(n)
}

/// Sparse coefficient rows of X ↦ [X, A] (entry (i,j) gives one row over the
/// n² unknowns of X).
fn commutator_rows(a: &MatrixQ) -> Vec<SparseRow> {
    let n = a.rows();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            // (XA − AX)_{ij} = Σ_k X_{ik} A_{kj} − Σ_k A_{ik} X_{kj}
            let mut r = SparseRow::new();
            for k in 0..n {
                let akj = a.get(k, j);
                if !akj.is_zero() {
                    *r.entry(i * n + k).or_insert_with(Rational::zero) += akj;
                }
                let aik = a.get(i, k);
                if !aik.is_zero() {
                    *r.entry(k * n + j).or_insert_with(Rational::zero) -= aik;
                }
            }
            r.retain(|_, v| !v.is_zero());
            out.push(r);
        }
    }
    out
}

/// {X ∈ gl(n) : XA = AX for every A in `mats`}.
pub fn centralizer(mats: &[MatrixQ]) -> Result<Subspace> {
    let n = common_size(mats)?;
    let mut e = Echelon::new(n * n);
    for a in mats {
        for r in commutator_rows(a) {
            e.insert(r);
        }
    }
    Subspace::span(n * n, &e.kernel())
}

/// {X ∈ gl(n) : [X, A] ∈ span(mats) for every A in `mats`}. The span must
/// be closed under the commutator.
pub fn normalizer_of_span(mats: &[MatrixQ]) -> Result<Subspace> {
    let n = common_size(mats)?;
    let span = Subspace::span_matrices(n, mats)?;
    for (i, a) in mats.iter().enumerate() {
        for b in &mats[i + 1..] {
            if !span.contains_matrix(&a.commutator(b)?) {
                return Err(Error::NotClosed(format!("[{a:?}, {b:?}] leaves the span")));
            }
        }
    }
    let ann = span.annihilator();
    let mut e = Echelon::new(n * n);
    for a in mats {
        let rows = commutator_rows(a);
        for phi in &ann {
            // φ([X, A]) = Σ_{ij} φ_{ij} ([X,A])_{ij}
            let mut r = SparseRow::new();
            for (idx, coef) in phi.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                for (&u, v) in &rows[idx] {
                    *r.entry(u).or_insert_with(Rational::zero) += &(coef * v);
                }
            }
            r.retain(|_, v| !v.is_zero());
            e.insert(r);
        }
    }
    Subspace::span(n * n, &e.kernel())
}

/// Span of all k-fold products of elements of span(mats).
pub fn subalgebra_powers(mats: &[MatrixQ], k: usize) -> Result<Subspace> {
    if k < 1 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    let n = common_size(mats)?;
    let gens = Subspace::span_matrices(n, mats)?.basis_matrices()?;
    let mut cur = gens.clone();
    for _ in 1..k {
        let mut prods = Vec::new();
        for s in &gens {
            for p in &cur {
                prods.push(s.checked_mul(p)?);
            }
        }
        cur = Subspace::span_matrices(n, &prods)?.basis_matrices()?;
        if cur.is_empty() {
            break;
        }
    }
    Subspace::span_matrices(n, &cur)
}

/// Powers I, M, …, M^{n−1}, a basis of ℚ[M] when M is nonderogatory.
pub fn power_basis(m: &MatrixQ) -> Result<Vec<MatrixQ>> {
    let n = m.require_square()?;
    let mut out = vec![MatrixQ::identity(n)];
    for _ in 1..n {
        let next = out.last().unwrap().checked_mul(m)?;
        out.push(next);
    }
    Ok(out)
}
