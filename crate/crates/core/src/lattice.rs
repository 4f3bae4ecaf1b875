//! Exact integer and rational linear algebra.
//!
//! Row-style Hermite and Smith normal forms over arbitrary-precision
//! integers, saturated integer kernels, and a few rational elimination
//! helpers shared by the polyhedral code. Nothing here ever rounds.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::serial::DecInt;

/// A dense rectangular matrix of exact integers, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row vectors. `cols` fixes the width, which
    /// matters when there are no rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n_rows = rows.len();
        let mut entries = Vec::with_capacity(n_rows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::invalid(format!(
                    "matrix row {i} has length {} but expected {cols}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Ok(Self {
            rows: n_rows,
            cols,
            entries,
        })
    }

    /// Convenience constructor from machine integers.
    ///
    /// Panics if the rows are ragged.
    pub fn from_i64<R: AsRef<[i64]>>(cols: usize, rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(cols, rows).expect("ragged matrix literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// Matrix product; `None` on a shape mismatch.
    pub fn mul(&self, other: &Self) -> Option<Self> {
        if self.cols != other.rows {
            return None;
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Some(out)
    }

    /// The columns `range` of every row.
    pub fn columns(&self, range: std::ops::Range<usize>) -> Self {
        let width = range.len();
        let rows = (0..self.rows)
            .map(|i| self.row(i)[range.clone()].to_vec())
            .collect();
        Self::from_rows(width, rows).expect("column slice is rectangular")
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Determinant by fraction-free (Bareiss) elimination. `None` if not square.
    pub fn determinant(&self) -> Option<BigInt> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.row_vecs();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return Some(BigInt::zero());
                };
                a.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Some(if n == 0 { BigInt::one() } else { sign * prev })
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().is_some_and(|d| d.abs().is_one())
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let d = hnf(self).d;
        (0..d.rows).filter(|&i| d.row(i).iter().any(|x| !x.is_zero())).count()
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for IntegerMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<DecInt>> = (0..self.rows)
            .map(|i| self.row(i).iter().cloned().map(DecInt).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntegerMatrix {
    /// Reads an array of rows. The width of a zero-row matrix is unknown
    /// and comes out as 0; callers that know the width should fix it up.
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<DecInt>>::deserialize(d)?;
        let cols = rows.first().map_or(0, Vec::len);
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.0).collect())
            .collect();
        IntegerMatrix::from_rows(cols, rows).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalFormKind {
    Hermite,
    Smith,
}

/// Result of a normal-form computation.
///
/// Hermite: `u * m == d`. Smith: `u * m * v == d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub kind: NormalFormKind,
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: Option<IntegerMatrix>,
}

impl NormalForm {
    /// Nonzero diagonal entries of a Smith form, one per unit of rank.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let k = self.d.rows.min(self.d.cols);
        (0..k)
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }
}

type Rows = Vec<Vec<BigInt>>;

fn row_sub_scaled(rows: &mut Rows, target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (t, s) = if target < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in t.iter_mut().zip(s) {
        *x -= q * y;
    }
}

fn negate_row(rows: &mut Rows, i: usize) {
    for x in rows[i].iter_mut() {
        *x = -&*x;
    }
}

fn col_sub_scaled(rows: &mut Rows, target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in rows.iter_mut() {
        let delta = q * &row[src];
        row[target] -= delta;
    }
}

fn swap_cols(rows: &mut Rows, a: usize, b: usize) {
    for row in rows.iter_mut() {
        row.swap(a, b);
    }
}

fn to_matrix(cols: usize, rows: Rows) -> IntegerMatrix {
    IntegerMatrix::from_rows(cols, rows).expect("internal matrix is rectangular")
}

/// Row Hermite normal form.
///
/// Pivots are positive and every entry above a pivot lies in `[0, pivot)`.
/// The pivot in each column is the row with the smallest nonzero absolute
/// value, lowest index first, so the transform `u` is deterministic.
pub fn hnf(m: &IntegerMatrix) -> NormalForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.row_vecs();
    let mut u = IntegerMatrix::identity(rows).row_vecs();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut found = false;
        loop {
            let pivot = (r..rows)
                .filter(|&i| !d[i][c].is_zero())
                .min_by_key(|&i| d[i][c].abs());
            let Some(p) = pivot else { break };
            found = true;
            d.swap(r, p);
            u.swap(r, p);
            let mut clean = true;
            for i in r + 1..rows {
                if d[i][c].is_zero() {
                    continue;
                }
                let q = d[i][c].div_floor(&d[r][c]);
                row_sub_scaled(&mut d, i, r, &q);
                row_sub_scaled(&mut u, i, r, &q);
                if !d[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if d[r][c].is_negative() {
            negate_row(&mut d, r);
            negate_row(&mut u, r);
        }
        for i in 0..r {
            let q = d[i][c].div_floor(&d[r][c]);
            row_sub_scaled(&mut d, i, r, &q);
            row_sub_scaled(&mut u, i, r, &q);
        }
        r += 1;
    }
    NormalForm {
        kind: NormalFormKind::Hermite,
        d: to_matrix(cols, d),
        u: to_matrix(rows, u),
        v: None,
    }
}

/// Smith normal form `u * m * v = d` with `d_1 | d_2 | ...` and `d_i >= 0`.
pub fn snf(m: &IntegerMatrix) -> NormalForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.row_vecs();
    let mut u = IntegerMatrix::identity(rows).row_vecs();
    let mut v = IntegerMatrix::identity(cols).row_vecs();
    'outer: for t in 0..rows.min(cols) {
        loop {
            // smallest |entry| in the trailing block, leftmost column then lowest row on ties
            let mut best: Option<(usize, usize)> = None;
            for j in t..cols {
                for i in t..rows {
                    if d[i][j].is_zero() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => d[i][j].abs() < d[bi][bj].abs(),
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'outer };
            d.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&d[t][t]);
                row_sub_scaled(&mut d, i, t, &q);
                row_sub_scaled(&mut u, i, t, &q);
                clean &= d[i][t].is_zero();
            }
            for j in t + 1..cols {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&d[t][t]);
                col_sub_scaled(&mut d, j, t, &q);
                col_sub_scaled(&mut v, j, t, &q);
                clean &= d[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !d[i][j].is_multiple_of(&d[t][t]))
            });
            match offender {
                Some(i) => {
                    let one = BigInt::from(-1);
                    row_sub_scaled(&mut d, t, i, &one);
                    row_sub_scaled(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    NormalForm {
        kind: NormalFormKind::Smith,
        d: to_matrix(cols, d),
        u: to_matrix(rows, u),
        v: Some(to_matrix(cols, v)),
    }
}

/// Basis of the integer kernel `{x in Z^cols : m * x = 0}`.
///
/// The kernel of an integer map is always saturated; the basis is returned
/// as the nonzero rows of its Hermite form, one basis vector per row.
pub fn integer_kernel_basis(m: &IntegerMatrix) -> IntegerMatrix {
    let n = m.cols;
    let h = hnf(&m.transpose());
    let rank = (0..h.d.rows)
        .filter(|&i| h.d.row(i).iter().any(|x| !x.is_zero()))
        .count();
    let basis: Rows = (rank..n).map(|i| h.u.row(i).to_vec()).collect();
    let basis = to_matrix(n, basis);
    hnf(&basis).d
}

/// Dot product of two integer vectors.
pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Divides out the content of a vector. The zero vector is returned as is.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Clears denominators of a rational vector and makes the result primitive,
/// keeping the direction.
pub fn primitive_from_rational(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let scaled: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    primitive(&scaled)
}

pub(crate) fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

/// Reduced row echelon form over the rationals; returns the pivot columns.
pub(crate) fn rref(rows: &mut Vec<Vec<BigRational>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            let pivot_row = rows[r].clone();
            for (x, p) in rows[i].iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Rank over the rationals of a list of integer vectors.
pub fn rank_of(vectors: &[Vec<BigInt>]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = vectors.iter().map(|v| to_rational(v)).collect();
    rref(&mut rows).len()
}

/// Coefficients `c` with `sum_j c_j * basis[j] == target`, if any.
///
/// `basis` must be linearly independent.
pub fn solve_in_span(basis: &[Vec<BigInt>], target: &[BigInt]) -> Option<Vec<BigRational>> {
    let k = basis.len();
    let dim = target.len();
    // augmented system: columns are basis vectors, last column the target
    let mut rows: Vec<Vec<BigRational>> = (0..dim)
        .map(|i| {
            let mut row: Vec<BigRational> = basis
                .iter()
                .map(|b| BigRational::from_integer(b[i].clone()))
                .collect();
            row.push(BigRational::from_integer(target[i].clone()));
            row
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.contains(&k) {
        return None;
    }
    let mut coeffs = vec![BigRational::zero(); k];
    for (row, &c) in rows.iter().zip(&pivots) {
        coeffs[c] = row[k].clone();
    }
    Some(coeffs)
}
