use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::scalar::{self, Rational, Vector};
use crate::error::{check_len, Error, Result};

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(scalar::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Result of reducing a matrix to reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        check_len("matrix entries", rows * cols, entries.len())?;
        Ok(Self { rows, cols, entries })
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vector>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            check_len("matrix row", cols, r.len())?;
            entries.extend(r);
        }
        Ok(Self { rows: n, cols, entries })
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            check_len("matrix column", rows, c.len())?;
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::from_entries(rows, cols, entries.iter().map(|&x| scalar::int(x)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        scalar::is_zero(&self.entries)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    /// `Mᵀ = −M` (which forces a zero diagonal).
    pub fn is_antisymmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (i..self.cols).all(|j| (&self[(i, j)] + &self[(j, i)]).is_zero()))
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vector> {
        check_len("matrix-vector product", self.cols, v.len())?;
        Ok((0..self.rows).map(|r| scalar::dot(self.row(r), v)).collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        check_len("matrix product", self.cols, other.rows)?;
        let mut out = Matrix::zeros(self.rows, other.cols);
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
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn scale(&self, k: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| k * x).collect(),
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        check_len("vertical stack", self.cols, other.cols)?;
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        check_len("matrix rows", self.rows, other.rows)?;
        check_len("matrix cols", self.cols, other.cols)
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Rational, &Rational) -> Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn rref(&self) -> Rref {
        rref(self)
    }

    /// Determinant of a square matrix by exact elimination.
    pub fn det(&self) -> Result<Rational> {
        check_len("determinant", self.rows, self.cols)?;
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[(r, c)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                for j in 0..n {
                    a.entries.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let pivot = a[(c, c)].clone();
            det *= &pivot;
            for r in c + 1..n {
                if a[(r, c)].is_zero() {
                    continue;
                }
                let f = &a[(r, c)] / &pivot;
                for j in c..n {
                    let t = &f * &a[(c, j)];
                    a[(r, j)] -= t;
                }
            }
        }
        Ok(det)
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| scalar::vector_to_strings(self.row(r))).collect()
    }

    /// Parses a JSON-style array of rows of `"p/q"` strings.
    pub fn from_strings(rows: &[Vec<String>]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        let parsed = rows
            .iter()
            .map(|r| {
                if r.len() != cols {
                    return Err(Error::Format(format!(
                        "ragged matrix: row of length {} in a {}-column matrix",
                        r.len(),
                        cols
                    )));
                }
                scalar::vector_from_strings(r)
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(cols, parsed)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.entries[r * self.cols + c]
    }
}

/// Clears denominators of a rational row, giving a primitive integer row
/// spanning the same line.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Reduced row-echelon form over the rationals.
///
/// Elimination runs on integer rows without fractions: a row is cleared
/// against the pivot row by cross-multiplication and then divided by the gcd
/// of its entries. Only the last pass divides each pivot row by its pivot.
pub fn rref(m: &Matrix) -> Rref {
    let (nrows, ncols) = (m.rows, m.cols);
    let mut rows: Vec<Vec<BigInt>> = (0..nrows).map(|r| integer_row(m.row(r))).collect();
    let mut pivot_cols = Vec::new();
    let mut pr = 0;
    for c in 0..ncols {
        if pr == nrows {
            break;
        }
        // smallest nonzero magnitude keeps products small
        let Some(sel) = (pr..nrows)
            .filter(|&r| !rows[r][c].is_zero())
            .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()))
        else {
            continue;
        };
        rows.swap(pr, sel);
        let pivot_row = std::mem::take(&mut rows[pr]);
        let p = pivot_row[c].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pr || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if y.is_zero() {
                    if !x.is_zero() {
                        *x *= &p;
                    }
                } else {
                    *x = &*x * &p - &f * y;
                }
            }
            make_primitive(row);
        }
        rows[pr] = pivot_row;
        pivot_cols.push(c);
        pr += 1;
    }

    let rank = pivot_cols.len();
    let mut reduced = Matrix::zeros(nrows, ncols);
    for (r, &c) in pivot_cols.iter().enumerate() {
        let p = rows[r][c].clone();
        for (j, x) in rows[r].iter().enumerate() {
            if !x.is_zero() {
                reduced[(r, j)] = Rational::new(x.clone(), p.clone());
            }
        }
    }
    Rref {
        reduced,
        rank,
        pivot_cols,
    }
}

/// Particular solution of `m·v = b` with every free variable set to zero,
/// or `None` when the system is inconsistent.
pub fn solve(m: &Matrix, b: &[Rational]) -> Result<Option<Vector>> {
    check_len("right-hand side", m.rows, b.len())?;
    let n = m.cols;
    let mut aug = Matrix::zeros(m.rows, n + 1);
    for r in 0..m.rows {
        for c in 0..n {
            aug[(r, c)] = m[(r, c)].clone();
        }
        aug[(r, n)] = b[r].clone();
    }
    let red = rref(&aug);
    if red.pivot_cols.last() == Some(&n) {
        return Ok(None);
    }
    let mut v = scalar::zeros(n);
    for (r, &c) in red.pivot_cols.iter().enumerate() {
        v[c] = red.reduced[(r, n)].clone();
    }
    Ok(Some(v))
}
