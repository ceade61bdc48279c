//! Determinant, permanent, Pfaffian and Hafnian over exact rings.
//!
//! Sign conventions follow the ordered perfect-matching sums: the Pfaffian
//! of a `2n × 2n` skew matrix sums `sgn(σ) a_{σ1σ2} ⋯ a_{σ(2n−1)σ(2n)}` over
//! permutations with `σ1 < σ3 < ⋯` and `σ(2i−1) < σ(2i)`.

use std::collections::HashMap;
use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::{Ring, WireScalar};

/// Dense row-major matrix over an exact ring.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    /// Fallible variant of [`Matrix::from_fn`].
    pub fn try_from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Result<T>,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j)?);
            }
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Submatrix on the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                acc + self.get(i, k).clone() * rhs.get(k, j).clone()
            })
        }))
    }

    pub fn add(&self, rhs: &Matrix<T>) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape("matrix sum needs equal shapes".into()));
        }
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() + rhs.get(i, j).clone()
        }))
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self.get(i, i).is_zero()
                    && (i + 1..self.rows)
                        .all(|j| (self.get(i, j).clone() + self.get(j, i).clone()).is_zero())
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.rows).all(|j| self.get(i, j) == self.get(j, i)))
    }

    fn require_square(&self, what: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Shape(format!(
                "{what} needs a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }
}

impl<T: Ring + WireScalar> Matrix<T> {
    /// JSON array of rows of exact scalars.
    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|i| Value::Array((0..self.cols).map(|j| self.get(i, j).to_wire_value()).collect()))
                .collect(),
        )
    }
}

impl<T: Ring> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<&T> = (0..self.cols).map(|j| self.get(i, j)).collect();
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

/// Determinant. Fields use Gaussian elimination; other rings use
/// fraction-free (Bareiss) elimination with exact division.
pub fn det<T: Ring>(m: &Matrix<T>) -> Result<T> {
    m.require_square("det")?;
    if T::IS_FIELD {
        det_gauss(m)
    } else {
        det_bareiss(m)
    }
}

fn det_gauss<T: Ring>(m: &Matrix<T>) -> Result<T> {
    let n = m.rows;
    let mut a: Vec<Vec<T>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut acc = T::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ok(T::zero());
        };
        if piv != col {
            a.swap(piv, col);
            acc = -acc;
        }
        let p = a[col][col].clone();
        let inv = T::one()
            .div_exact(&p)
            .ok_or_else(|| Error::Singular("pivot is not a unit".into()))?;
        acc = acc * p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone() * inv.clone();
            for k in col + 1..n {
                if !a[col][k].is_zero() {
                    let t = f.clone() * a[col][k].clone();
                    let cur = std::mem::replace(&mut a[r][k], T::zero());
                    a[r][k] = cur - t;
                }
            }
            a[r][col] = T::zero();
        }
    }
    Ok(acc)
}

fn det_bareiss<T: Ring>(m: &Matrix<T>) -> Result<T> {
    let n = m.rows;
    if n == 0 {
        return Ok(T::one());
    }
    let mut a: Vec<Vec<T>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut sign = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(piv) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(T::zero());
            };
            a.swap(k, piv);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = num.div_exact(&prev).ok_or_else(|| {
                    Error::NotDivisible("fraction-free elimination step was not exact".into())
                })?;
            }
            a[i][k] = T::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign { -d } else { d })
}

/// Permanent: direct permutation sum below order 5, Ryser's
/// inclusion–exclusion formula from order 5 on.
pub fn perm<T: Ring>(m: &Matrix<T>) -> Result<T> {
    m.require_square("perm")?;
    if m.rows < 5 {
        Ok(perm_direct(m))
    } else {
        Ok(perm_ryser(m))
    }
}

fn perm_direct<T: Ring>(m: &Matrix<T>) -> T {
    fn go<T: Ring>(m: &Matrix<T>, row: usize, used: &mut Vec<bool>) -> T {
        if row == m.rows {
            return T::one();
        }
        let mut acc = T::zero();
        for c in 0..m.cols {
            if used[c] || m.get(row, c).is_zero() {
                continue;
            }
            used[c] = true;
            acc = acc + m.get(row, c).clone() * go(m, row + 1, used);
            used[c] = false;
        }
        acc
    }
    go(m, 0, &mut vec![false; m.cols])
}

fn perm_ryser<T: Ring>(m: &Matrix<T>) -> T {
    let n = m.rows;
    let mut total = T::zero();
    for mask in 1u64..(1u64 << n) {
        let mut prod = T::one();
        for i in 0..n {
            let row_sum = (0..n)
                .filter(|&j| mask >> j & 1 == 1)
                .fold(T::zero(), |acc, j| acc + m.get(i, j).clone());
            prod = prod * row_sum;
            if prod.is_zero() {
                break;
            }
        }
        // (−1)^(n − |S|)
        if (n as u32 - mask.count_ones()) % 2 == 1 {
            total = total - prod;
        } else {
            total = total + prod;
        }
    }
    total
}

fn even_square(m: &Matrix<impl Ring>, what: &str) -> Result<()> {
    m.require_square(what)?;
    if !m.rows.is_multiple_of(2) {
        return Err(Error::Shape(format!("{what} needs even dimension, got {}", m.rows)));
    }
    if m.rows > 62 {
        return Err(Error::Shape(format!("{what} supports dimension up to 62")));
    }
    Ok(())
}

/// Pfaffian of a skew-symmetric even-dimensional matrix, by first-row
/// expansion memoized over index subsets.
pub fn pfaffian<T: Ring>(m: &Matrix<T>) -> Result<T> {
    even_square(m, "pfaffian")?;
    if !m.is_skew_symmetric() {
        return Err(Error::Shape("pfaffian needs a skew-symmetric matrix".into()));
    }
    let full = if m.rows == 0 { 0 } else { (1u64 << m.rows) - 1 };
    Ok(matching_sum(m, full, true, &mut HashMap::new()))
}

/// Hafnian of a symmetric even-dimensional matrix (diagonal ignored).
pub fn hafnian<T: Ring>(m: &Matrix<T>) -> Result<T> {
    even_square(m, "hafnian")?;
    if !m.is_symmetric() {
        return Err(Error::Shape("hafnian needs a symmetric matrix".into()));
    }
    let full = if m.rows == 0 { 0 } else { (1u64 << m.rows) - 1 };
    Ok(matching_sum(m, full, false, &mut HashMap::new()))
}

/// Σ over perfect matchings of the index set `mask`; with `signed`, the
/// k-th remaining partner of the smallest index carries `(−1)^k`.
fn matching_sum<T: Ring>(m: &Matrix<T>, mask: u64, signed: bool, memo: &mut HashMap<u64, T>) -> T {
    if mask == 0 {
        return T::one();
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let first = mask.trailing_zeros() as usize;
    let rest = mask & !(1u64 << first);
    let mut acc = T::zero();
    let mut bits = rest;
    let mut k = 0usize;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let a = m.get(first, j);
        if !a.is_zero() {
            let sub = matching_sum(m, rest & !(1u64 << j), signed, memo);
            let term = a.clone() * sub;
            acc = if signed && k % 2 == 1 { acc - term } else { acc + term };
        }
        k += 1;
    }
    memo.insert(mask, acc.clone());
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Poly, Rational, Sampler};
    use num_bigint::BigInt;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn random_matrix(s: &mut Sampler, n: usize) -> Matrix<Rational> {
        Matrix::from_fn(n, n, |_, _| s.rational())
    }

    fn random_skew(s: &mut Sampler, n: usize) -> Matrix<Rational> {
        let mut m = Matrix::from_fn(n, n, |_, _| Rational::from(0));
        for i in 0..n {
            for j in i + 1..n {
                let v = s.rational();
                m.set(i, j, v.clone());
                m.set(j, i, -v);
            }
        }
        m
    }

    // Brute-force oracles over S_n and over ordered perfect matchings.
    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut v = p.clone();
                v.insert(pos, n - 1);
                out.push(v);
            }
        }
        out
    }

    fn sign(p: &[usize]) -> i64 {
        let mut inv = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 { 1 } else { -1 }
    }

    fn leibniz(m: &Matrix<Rational>, signed: bool) -> Rational {
        permutations(m.rows())
            .iter()
            .map(|p| {
                let prod = (0..m.rows()).fold(q(1), |acc, i| acc * m.get(i, p[i]));
                if signed && sign(p) < 0 { -prod } else { prod }
            })
            .fold(q(0), |a, b| a + b)
    }

    fn matching_definition(m: &Matrix<Rational>, signed: bool) -> Rational {
        // permutations with σ(1)<σ(3)<… and σ(2i−1)<σ(2i)
        permutations(m.rows())
            .into_iter()
            .filter(|p| {
                (0..p.len() / 2).all(|i| p[2 * i] < p[2 * i + 1])
                    && (1..p.len() / 2).all(|i| p[2 * i - 2] < p[2 * i])
            })
            .map(|p| {
                let prod = (0..p.len() / 2).fold(q(1), |acc, i| acc * m.get(p[2 * i], p[2 * i + 1]));
                if signed && sign(&p) < 0 { -prod } else { prod }
            })
            .fold(q(0), |a, b| a + b)
    }

    #[test]
    fn det_two_by_two_and_empty() {
        let m = Matrix::from_rows(vec![vec![q(3), q(5)], vec![q(7), q(11)]]).unwrap();
        assert_eq!(det(&m).unwrap(), q(3 * 11 - 5 * 7));
        let e: Matrix<Rational> = Matrix::new(0, 0, vec![]).unwrap();
        assert_eq!(det(&e).unwrap(), q(1));
        assert_eq!(perm(&e).unwrap(), q(1));
        assert_eq!(pfaffian(&e).unwrap(), q(1));
        assert_eq!(hafnian(&e).unwrap(), q(1));
    }

    #[test]
    fn det_matches_leibniz_on_random_4x4() {
        let mut s = Sampler::new(11);
        for _ in 0..5 {
            let m = random_matrix(&mut s, 4);
            assert_eq!(det(&m).unwrap(), leibniz(&m, true));
        }
    }

    #[test]
    fn det_bareiss_over_integers_and_polynomials() {
        let m = Matrix::from_rows(vec![
            vec![BigInt::from(2), BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(0), BigInt::from(0), BigInt::from(3)],
            vec![BigInt::from(4), BigInt::from(5), BigInt::from(6)],
        ])
        .unwrap();
        assert_eq!(det(&m).unwrap(), BigInt::from(-30));
        // Vandermonde in (1, t, t²): (t − 1)(t² − 1)(t² − t)
        let t = Poly::<Rational>::t();
        let one = Poly::<Rational>::constant(q(1));
        let pts = [one.clone(), t.clone(), t.clone() * t.clone()];
        let v = Matrix::from_fn(3, 3, |i, j| pts[i].pow(j as u64));
        let expect = (t.clone() - one.clone())
            * (t.clone() * t.clone() - one.clone())
            * (t.clone() * t.clone() - t.clone());
        assert_eq!(det(&v).unwrap(), expect);
    }

    #[test]
    fn det_rejects_non_square() {
        let m = Matrix::new(2, 3, vec![q(1); 6]).unwrap();
        assert!(matches!(det(&m), Err(Error::Shape(_))));
        assert!(perm(&m).is_err());
    }

    #[test]
    fn det_is_multiplicative() {
        let mut s = Sampler::new(3);
        let a = random_matrix(&mut s, 3);
        let b = random_matrix(&mut s, 3);
        let ab = a.mul(&b).unwrap();
        assert_eq!(det(&ab).unwrap(), det(&a).unwrap() * det(&b).unwrap());
    }

    #[test]
    fn permanent_examples() {
        let m = Matrix::from_rows(vec![vec![q(1), q(1)], vec![q(1), q(1)]]).unwrap();
        assert_eq!(perm(&m).unwrap(), q(2));
        for n in 1..=7usize {
            let half = Matrix::from_fn(n, n, |_, _| Rational::new(1, 2));
            let fact: i64 = (1..=n as i64).product();
            assert_eq!(perm(&half).unwrap(), Rational::new(fact, 1i64 << n));
        }
    }

    #[test]
    fn ryser_matches_direct_sum() {
        let mut s = Sampler::new(5);
        for n in 1..=5 {
            let m = random_matrix(&mut s, n);
            assert_eq!(perm_ryser(&m), perm_direct(&m));
            assert_eq!(perm_direct(&m), leibniz(&m, false));
        }
    }

    #[test]
    fn perm_and_det_agree_on_diagonal() {
        let m = Matrix::from_fn(4, 4, |i, j| if i == j { q(i as i64 + 2) } else { q(0) });
        assert_eq!(perm(&m).unwrap(), det(&m).unwrap());
        assert_eq!(det(&m).unwrap(), q(2 * 3 * 4 * 5));
    }

    #[test]
    fn pfaffian_small_and_errors() {
        let a = q(7);
        let m = Matrix::from_rows(vec![vec![q(0), a.clone()], vec![-a.clone(), q(0)]]).unwrap();
        assert_eq!(pfaffian(&m).unwrap(), a);
        let odd = Matrix::from_fn(3, 3, |_, _| q(0));
        assert!(pfaffian(&odd).is_err());
        let not_skew = Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]).unwrap();
        assert!(pfaffian(&not_skew).is_err());
        assert!(hafnian(&not_skew).is_ok());
    }

    #[test]
    fn pfaffian_squared_is_det_and_matches_definition() {
        let mut s = Sampler::new(9);
        for n in [2usize, 4, 6] {
            let m = random_skew(&mut s, n);
            let pf = pfaffian(&m).unwrap();
            assert_eq!(pf.clone() * pf.clone(), det(&m).unwrap());
            assert_eq!(pf, matching_definition(&m, true));
        }
    }

    #[test]
    fn hafnian_examples() {
        let b = q(5);
        let m = Matrix::from_rows(vec![vec![q(9), b.clone()], vec![b.clone(), q(9)]]).unwrap();
        assert_eq!(hafnian(&m).unwrap(), b);
        for (n, dfact) in [(2usize, 1i64), (4, 3), (6, 15), (8, 105)] {
            let ones = Matrix::from_fn(n, n, |_, _| q(1));
            assert_eq!(hafnian(&ones).unwrap(), q(dfact));
        }
        let mut s = Sampler::new(13);
        let mut sym = Matrix::from_fn(6, 6, |_, _| q(0));
        for i in 0..6 {
            for j in i..6 {
                let v = s.rational();
                sym.set(i, j, v.clone());
                sym.set(j, i, v);
            }
        }
        assert_eq!(hafnian(&sym).unwrap(), matching_definition(&sym, false));
    }

    #[test]
    fn json_form_uses_exact_strings() {
        let m = Matrix::from_rows(vec![vec![Rational::new(1, 2), q(3)]]).unwrap();
        assert_eq!(m.to_json().to_string(), r#"[["1/2","3/1"]]"#);
    }
}
