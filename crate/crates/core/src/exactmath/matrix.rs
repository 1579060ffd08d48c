//! Dense integer and rational matrices.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{common_denominator, Rational};
use crate::error::{Error, Result};

/// Row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(IMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Panics on ragged input; meant for literals.
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        IMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("ragged matrix literal")
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let mut m = IMat::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
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

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = IMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        IMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k * col[src]
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }

    /// Replace rows (a, b) by (s*a + t*b, u*a + v*b).
    pub fn combine_rows(&mut self, a: usize, b: usize, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
        for j in 0..self.cols {
            let x = self.data[a * self.cols + j].clone();
            let y = self.data[b * self.cols + j].clone();
            self.data[a * self.cols + j] = s * &x + t * &y;
            self.data[b * self.cols + j] = u * &x + v * &y;
        }
    }

    /// Replace columns (a, b) by (s*a + t*b, u*a + v*b).
    pub fn combine_cols(&mut self, a: usize, b: usize, s: &BigInt, t: &BigInt, u: &BigInt, v: &BigInt) {
        for i in 0..self.rows {
            let x = self.data[i * self.cols + a].clone();
            let y = self.data[i * self.cols + b].clone();
            self.data[i * self.cols + a] = s * &x + t * &y;
            self.data[i * self.cols + b] = u * &x + v * &y;
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        IMat {
            rows: idx.len(),
            cols: self.cols,
            data: idx.iter().flat_map(|&i| self.row(i).to_vec()).collect(),
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        self.transpose().select_rows(idx).transpose()
    }

    pub fn block_diag(blocks: &[&IMat]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = IMat::zeros(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn mul_checked(&self, other: &IMat) -> Result<IMat> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = a * &other[(k, j)];
                    out[(i, j)] += v;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `Pᵀ · self · P`.
    pub fn congruent(&self, p: &IMat) -> Result<IMat> {
        p.transpose().mul_checked(self)?.mul_checked(p)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of non-square matrix");
        bareiss_det(self.to_rows())
    }

    pub fn to_qmat(&self) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().cloned().map(Rational::from_integer).collect(),
        }
    }

    pub fn content(&self) -> BigInt {
        self.data.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = &BigInt> {
        self.data.iter()
    }

    /// Inverse of a unimodular matrix.
    pub fn unimodular_inverse(&self) -> Option<IMat> {
        let inv = self.to_qmat().inverse()?;
        inv.to_imat()
    }
}

pub(crate) fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

impl Index<(usize, usize)> for IMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IMat {
    type Output = IMat;
    fn mul(self, rhs: &IMat) -> IMat {
        self.mul_checked(rhs).expect("matrix dimension mismatch")
    }
}

impl fmt::Debug for IMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

fn int_to_json(x: &BigInt) -> serde_json::Value {
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::String(x.to_string()),
    }
}

fn int_from_json(v: &serde_json::Value) -> std::result::Result<BigInt, String> {
    match v {
        serde_json::Value::Number(n) if n.is_i64() => Ok(BigInt::from(n.as_i64().unwrap())),
        serde_json::Value::Number(n) if n.is_u64() => Ok(BigInt::from(n.as_u64().unwrap())),
        serde_json::Value::String(s) => s.parse().map_err(|_| format!("bad integer {s:?}")),
        other => Err(format!("expected integer, got {other}")),
    }
}

/// Row-major array of integers (strings for values outside `i64`).
impl Serialize for IMat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<serde_json::Value>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(int_to_json).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IMat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<Vec<serde_json::Value>>::deserialize(d)?;
        let rows = raw
            .iter()
            .map(|r| r.iter().map(int_from_json).collect::<std::result::Result<Vec<_>, _>>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        IMat::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

/// Row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(QMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = QMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_checked(&self, other: &QMat) -> Result<QMat> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = QMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = a * &other[(k, j)];
                    out[(i, j)] += v;
                }
            }
        }
        Ok(out)
    }

    pub fn scaled(&self, k: &Rational) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    /// Determinant: each row is cleared of denominators, then Bareiss.
    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut scale = BigInt::one();
        let rows = (0..self.rows)
            .map(|i| {
                let d = common_denominator(self.row(i));
                scale *= &d;
                self.row(i)
                    .iter()
                    .map(|x| (x * Rational::from_integer(d.clone())).to_integer())
                    .collect()
            })
            .collect();
        Rational::new(bareiss_det(rows), scale)
    }

    /// Gauss–Jordan inverse over ℚ.
    pub fn inverse(&self) -> Option<QMat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut inv: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero())?;
            a.swap(c, p);
            inv.swap(c, p);
            let piv = a[c][c].clone();
            for j in 0..n {
                a[c][j] = &a[c][j] / &piv;
                inv[c][j] = &inv[c][j] / &piv;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for j in 0..n {
                        let x = &f * &a[c][j];
                        a[r][j] -= x;
                        let y = &f * &inv[c][j];
                        inv[r][j] -= y;
                    }
                }
            }
        }
        QMat::from_rows(inv).ok()
    }

    pub fn to_imat(&self) -> Option<IMat> {
        if self.data.iter().any(|x| !x.is_integer()) {
            return None;
        }
        Some(IMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.to_integer()).collect(),
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Rational> {
        self.data.iter()
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn abs_max(&self) -> Rational {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
    }
}

impl Index<(usize, usize)> for QMat {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMat{self}")
    }
}

impl fmt::Display for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Rows of strings `"p/q"`.
impl Serialize for QMat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect();
        rows.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::rat;

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m = IMat::from_i64(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(m.det(), BigInt::from(4));
        let z = IMat::from_i64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(z.det(), BigInt::from(-1));
        let s = IMat::from_i64(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(s.det(), BigInt::zero());
        assert_eq!(IMat::zeros(0, 0).det(), BigInt::one());
    }

    #[test]
    fn rational_det_and_inverse() {
        let q = QMat::from_rows(vec![
            vec![rat(-1, 1), rat(-1, 1), rat(1, 2)],
            vec![rat(-1, 1), rat(-2, 1), rat(1, 2)],
            vec![rat(1, 2), rat(1, 2), rat(-1, 1)],
        ])
        .unwrap();
        // 2³·det = det of the doubled integer matrix [[-2,-2,1],[-2,-4,1],[1,1,-2]] = -6
        assert_eq!(q.det(), rat(-6, 8));
        let inv = q.inverse().unwrap();
        let id = q.mul_checked(&inv).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(id[(i, j)], if i == j { rat(1, 1) } else { rat(0, 1) });
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let m = IMat::from_i64(&[vec![0, 1], vec![1, -2]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, "[[0,1],[1,-2]]");
        let back: IMat = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
