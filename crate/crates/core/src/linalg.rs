//! Exact integer and rational linear algebra.
//!
//! Everything here works over `BigInt` / `BigRational`; nothing in the crate
//! ever touches floating point. The Hermite normal form convention used
//! throughout is row-style: `u * m = h` with `u` unimodular, `h` in row echelon
//! form, every pivot positive and every entry above a pivot reduced into
//! `[0, pivot)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Integer vector with arbitrary-precision entries.
pub type IntVector = Vec<BigInt>;

/// Dense integer matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[IntVector]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<IntVector> = rows.iter().map(|r| to_big(r)).collect();
        Self::from_rows(cols, &rows)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[IntVector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
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

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> IntVector {
        self.row(i).to_vec()
    }

    pub fn column(&self, j: usize) -> IntVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<IntVector> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m[(i, jj)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> IntVector {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigRational>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        row_reduce(&mut a, self.cols).len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| {
                self.row(i).iter().map(ToString::to_string).collect::<Vec<_>>()
            }))
            .finish()
    }
}

/// Rational vector; `BigRational` keeps every entry in lowest terms with a
/// positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatVector(pub Vec<BigRational>);

impl RatVector {
    pub fn from_ints(v: &[BigInt]) -> Self {
        Self(v.iter().map(|x| BigRational::from_integer(x.clone())).collect())
    }

    /// Returns the integer vector if every entry is integral.
    pub fn to_integer(&self) -> Option<IntVector> {
        self.0
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }

    /// Least positive common multiple of the denominators times the vector.
    pub fn clear_denominators(&self) -> IntVector {
        let l = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        self.0
            .iter()
            .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
            .collect()
    }
}

pub fn to_big(v: &[i64]) -> IntVector {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(c: &BigInt, a: &[BigInt]) -> IntVector {
    a.iter().map(|x| c * x).collect()
}

/// Row-style Hermite normal form. Returns `(h, u)` with `u * m = h`,
/// `|det u| = 1`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut r = 0;
    for j in 0..cols {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if h[(i, j)].is_zero() {
                continue;
            }
            let a = h[(r, j)].clone();
            let b = h[(i, j)].clone();
            let e = a.extended_gcd(&b);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let ag = &a / &g;
            let bg = &b / &g;
            // [s t; -b/g a/g] has determinant 1
            combine_rows(&mut h, r, i, &s, &t, &-&bg, &ag);
            combine_rows(&mut u, r, i, &s, &t, &-&bg, &ag);
        }
        if h[(r, j)].is_zero() {
            continue;
        }
        if h[(r, j)].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        let pivot = h[(r, j)].clone();
        for i in 0..r {
            let q = h[(i, j)].div_floor(&pivot);
            if !q.is_zero() {
                sub_row_multiple(&mut h, i, r, &q);
                sub_row_multiple(&mut u, i, r, &q);
            }
        }
        r += 1;
    }
    (h, u)
}

fn combine_rows(
    m: &mut IntMatrix,
    r: usize,
    i: usize,
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
    d: &BigInt,
) {
    for j in 0..m.cols() {
        let x = m[(r, j)].clone();
        let y = m[(i, j)].clone();
        m[(r, j)] = a * &x + b * &y;
        m[(i, j)] = c * &x + d * &y;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for j in 0..m.cols() {
        let v = -m[(r, j)].clone();
        m[(r, j)] = v;
    }
}

fn sub_row_multiple(m: &mut IntMatrix, target: usize, src: usize, q: &BigInt) {
    for j in 0..m.cols() {
        let v = q * &m[(src, j)];
        m[(target, j)] -= v;
    }
}

/// Lattice basis of `{ v in Z^cols : m v = 0 }`.
pub fn integer_kernel_basis(m: &IntMatrix) -> Vec<IntVector> {
    let (h, u) = hermite_normal_form(&m.transpose());
    (0..h.rows())
        .filter(|&i| h.row(i).iter().all(Zero::is_zero))
        .map(|i| u.row_vec(i))
        .collect()
}

/// Nonzero rows of the Hermite normal form: a canonical basis of the row lattice.
pub fn lattice_basis(vs: &[IntVector], dim: usize) -> Vec<IntVector> {
    let (h, _) = hermite_normal_form(&IntMatrix::from_rows(dim, vs));
    h.to_rows()
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Whether `v` is a rational combination of the rows of `m`.
pub fn in_rational_rowspan(m: &IntMatrix, v: &[BigInt]) -> bool {
    assert_eq!(v.len(), m.cols(), "vector length must match column count");
    let mut rows = m.to_rows();
    let before = IntMatrix::from_rows(m.cols(), &rows).rank();
    rows.push(v.to_vec());
    IntMatrix::from_rows(m.cols(), &rows).rank() == before
}

/// Rank of the lattice generated by `vs`.
pub fn lattice_rank(vs: &[IntVector]) -> usize {
    match vs.first() {
        None => 0,
        Some(first) => IntMatrix::from_rows(first.len(), vs).rank(),
    }
}

/// Whether the lattice spanned by `vs` equals its saturation
/// `span_Q(vs) ∩ Z^dim`.
pub fn is_saturated(vs: &[IntVector], dim: usize) -> bool {
    let basis = lattice_basis(vs, dim);
    if basis.is_empty() {
        return true;
    }
    let complement = integer_kernel_basis(&IntMatrix::from_rows(dim, &basis));
    let saturation = if complement.is_empty() {
        (0..dim)
            .map(|i| (0..dim).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect()
    } else {
        integer_kernel_basis(&IntMatrix::from_rows(dim, &complement))
    };
    lattice_basis(&saturation, dim) == basis
}

/// Gauss-Jordan elimination in place; returns the pivot columns. Rows beyond
/// the rank end up zero.
fn row_reduce(a: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for j in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][j].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][j].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][j].is_zero() {
                let f = a[i][j].clone();
                let (head, tail) = if i < r {
                    let (h, t) = a.split_at_mut(r);
                    (&mut h[i], &t[0])
                } else {
                    let (h, t) = a.split_at_mut(i);
                    (&mut t[0], &h[r])
                };
                for (x, y) in head.iter_mut().zip(tail.iter()) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(j);
        r += 1;
    }
    pivots
}

/// Solves `m x = b` over the rationals. Returns one solution (free variables
/// set to zero) or `None` if inconsistent.
pub fn solve_rational(m: &IntMatrix, b: &[BigRational]) -> Option<RatVector> {
    assert_eq!(b.len(), m.rows(), "right-hand side length mismatch");
    let cols = m.cols();
    let mut a: Vec<Vec<BigRational>> = (0..m.rows())
        .map(|i| {
            let mut row: Vec<BigRational> = m
                .row(i)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = row_reduce(&mut a, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = a[r][cols].clone();
    }
    Some(RatVector(x))
}

/// Coordinates of `v` with respect to the linearly independent `basis`
/// (`v = sum x_i basis_i`), if `v` lies in their rational span.
pub fn coordinates_in(basis: &[IntVector], v: &[BigInt]) -> Option<RatVector> {
    let m = IntMatrix::from_columns(v.len(), basis);
    let b: Vec<BigRational> = v.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    solve_rational(&m, &b)
}
