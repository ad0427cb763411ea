//! Exact integer and rational linear algebra.
//!
//! Every lattice, kernel and quotient computation in the crate goes through
//! [`IntMatrix`]. Lattices are always *row* lattices: the rows of a matrix
//! generate the lattice, and kernels are left kernels `{x : x·m = 0}`.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not lower triangular: entry ({row}, {col}) is nonzero")]
    NonTriangular { row: usize, col: usize },
    #[error("zero diagonal entry at position {0}")]
    SingularDiagonal(usize),
    #[error("row {0} of the sublattice basis is not in the ambient lattice")]
    NotASublattice(usize),
    #[error("invalid matrix entry {0:?}")]
    BadEntry(String),
}

/// Arbitrary precision integer matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    /// Builds a matrix from rows; all rows must have the same length.
    /// `cols` is only consulted when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(cols, Vec::len);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch(format!(
                    "row {} has length {}, expected {}",
                    i,
                    r.len(),
                    cols
                )));
            }
            entries.extend(r);
        }
        Ok(IntMatrix { rows: n, cols, entries })
    }

    /// Convenience constructor for small literal matrices. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_rows(rows, cols).expect("ragged literal matrix")
    }

    pub fn diagonal(values: &[BigInt]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m.entries[i * n + i] = v.clone();
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: BigInt) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[BigInt]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn try_mul(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, x: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
        if x.len() != self.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "vector of length {} against {} rows",
                x.len(),
                self.rows
            )));
        }
        let mut out = vec![BigInt::zero(); self.cols];
        for (r, xr) in x.iter().enumerate() {
            if xr.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                let e = self.get(r, c);
                if !e.is_zero() {
                    *o += xr * e;
                }
            }
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "cannot stack {} columns on {} columns",
                other.cols, self.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(IntMatrix { rows: self.rows + other.rows, cols: self.cols, entries })
    }

    pub fn select_rows(&self, which: impl IntoIterator<Item = usize>) -> IntMatrix {
        let mut entries = Vec::new();
        let mut n = 0;
        for r in which {
            entries.extend(self.row(r).iter().cloned());
            n += 1;
        }
        IntMatrix { rows: n, cols: self.cols, entries }
    }

    /// Drops all-zero rows.
    pub fn nonzero_rows(&self) -> IntMatrix {
        let keep: Vec<usize> = (0..self.rows).filter(|&r| self.row(r).iter().any(|x| !x.is_zero())).collect();
        self.select_rows(keep)
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn determinant(&self) -> Result<BigInt, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = self.row_iter().map(<[BigInt]>::to_vec).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return Ok(BigInt::zero());
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
        Ok(sign * &a[n - 1][n - 1])
    }

    pub fn rank(&self) -> usize {
        hermite_normal_form(self).0.nonzero_rows().rows()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let s = self.entries[source * self.cols + c].clone();
            if !s.is_zero() {
                self.entries[target * self.cols + c] += factor * s;
            }
        }
    }

    /// col[target] += factor * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let s = self.entries[r * self.cols + source].clone();
            if !s.is_zero() {
                self.entries[r * self.cols + target] += factor * s;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = std::mem::take(&mut self.entries[r * self.cols + c]);
            self.entries[r * self.cols + c] = -v;
        }
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.try_mul(rhs).expect("matrix dimension mismatch")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}", self.rows, self.cols)?;
        f.debug_list().entries(self.row_iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>())).finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for r in 0..self.rows {
            let line: Vec<String> = (0..self.cols).map(|c| format!("{:>width$}", cells[r * self.cols + c])).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct IntMatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<IntEntry>,
}

/// Entries are written as decimal strings; bare JSON integers are accepted on input.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntEntry {
    Text(String),
    Number(i64),
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        IntMatrixRepr {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| IntEntry::Text(e.to_string())).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = IntMatrixRepr::deserialize(deserializer)?;
        let entries = repr
            .entries
            .into_iter()
            .map(|e| match e {
                IntEntry::Number(n) => Ok(BigInt::from(n)),
                IntEntry::Text(s) => s.trim().parse::<BigInt>().map_err(|_| LinalgError::BadEntry(s.clone())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        IntMatrix::from_vec(repr.rows, repr.cols, entries).map_err(serde::de::Error::custom)
    }
}

/// Exact rational matrix; `BigRational` keeps every entry in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch("ragged rational matrix".into()));
            }
            entries.extend(r);
        }
        Ok(RatMatrix { rows: n, cols, entries })
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        RatMatrix {
            rows: m.rows,
            cols: m.cols,
            entries: m.entries.iter().map(|e| BigRational::from_integer(e.clone())).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigRational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    /// Matrix times column vector.
    pub fn apply(&self, x: &[BigRational]) -> Result<Vec<BigRational>, LinalgError> {
        if x.len() != self.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn try_mul(&self, other: &RatMatrix) -> Result<RatMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch("rational matrix product".into()));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let v: BigRational = (0..self.cols).map(|k| self.get(i, k) * other.get(k, j)).sum();
                out.set(i, j, v);
            }
        }
        Ok(out)
    }
}

/// Row-style Hermite normal form.
///
/// Returns `(h, u)` with `u` unimodular and `u·m = h`. Pivots of `h` are
/// positive, entries above a pivot lie in `[0, pivot)`, and zero rows sit at
/// the bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        loop {
            let pivot = (r..m.rows)
                .filter(|&i| !h.get(i, c).is_zero())
                .min_by(|&a, &b| h.get(a, c).abs().cmp(&h.get(b, c).abs()));
            let Some(p) = pivot else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut clean = true;
            for i in r + 1..m.rows {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = -h.get(i, c).div_floor(h.get(r, c));
                h.add_row_multiple(i, r, &q);
                u.add_row_multiple(i, r, &q);
                clean &= h.get(i, c).is_zero();
            }
            if clean {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = -h.get(i, c).div_floor(h.get(r, c));
            h.add_row_multiple(i, r, &q);
            u.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Result of [`smith_normal_form`]: `u·m·v` is diagonal with `factors` on the diagonal.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form. Invariant factors are nonnegative, each divides the next,
/// and zeros come last. There are `min(rows, cols)` of them.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let n = rows.min(cols);
    'outer: for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let e = a.get(i, j);
                    if e.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| e.abs() < a.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'outer };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_floor(a.get(t, t));
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_floor(a.get(t, t));
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = a.get(t, t).clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    a.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    let factors = (0..n).map(|i| a.get(i, i).clone()).collect();
    SmithForm { factors, u, v }
}

/// Lattice basis (in Hermite normal form) of the left kernel `{x : x·m = 0}`.
/// The kernel is saturated: it is the full set of integer solutions.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hermite_normal_form(m);
    let zero_rows: Vec<usize> = (0..h.rows).filter(|&r| h.row(r).iter().all(Zero::is_zero)).collect();
    let basis = u.select_rows(zero_rows);
    hermite_basis(&basis)
}

/// Hermite basis of the row lattice: the nonzero rows of the HNF.
pub fn hermite_basis(m: &IntMatrix) -> IntMatrix {
    hermite_normal_form(m).0.nonzero_rows()
}

/// Coordinates of `v` with respect to an echelon (HNF) basis, if `v` lies in its row lattice.
pub fn echelon_coordinates(basis: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest = v.to_vec();
    let mut coords = Vec::with_capacity(basis.rows());
    for r in 0..basis.rows() {
        let row = basis.row(r);
        let Some(pc) = row.iter().position(|x| !x.is_zero()) else {
            coords.push(BigInt::zero());
            continue;
        };
        let (q, rem) = rest[pc].div_rem(&row[pc]);
        if !rem.is_zero() {
            return None;
        }
        for (x, b) in rest.iter_mut().zip(row) {
            *x -= &q * b;
        }
        coords.push(q);
    }
    rest.iter().all(Zero::is_zero).then_some(coords)
}

pub fn lattice_contains(generators: &IntMatrix, v: &[BigInt]) -> bool {
    echelon_coordinates(&hermite_basis(generators), v).is_some()
}

/// True when both matrices generate the same row lattice.
pub fn same_row_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    a.cols() == b.cols() && hermite_basis(a) == hermite_basis(b)
}

/// Hermite basis of the intersection of two row lattices.
pub fn lattice_intersection(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    let stacked = a.stack(b)?;
    let kernel = integer_kernel(&stacked);
    let mut rows = Vec::with_capacity(kernel.rows());
    for k in kernel.row_iter() {
        rows.push(a.left_apply(&k[..a.rows()])?);
    }
    Ok(hermite_basis(&IntMatrix::from_rows(rows, a.cols())?))
}

/// Forward substitution for a lower-triangular rational system `t·x = b`.
pub fn solve_unitriangular_rational(t: &RatMatrix, b: &[BigRational]) -> Result<Vec<BigRational>, LinalgError> {
    let n = t.rows();
    if t.cols() != n || b.len() != n {
        return Err(LinalgError::DimensionMismatch(format!(
            "{}x{} system with right-hand side of length {}",
            t.rows(),
            t.cols(),
            b.len()
        )));
    }
    for r in 0..n {
        if let Some(c) = (r + 1..n).find(|&c| !t.get(r, c).is_zero()) {
            return Err(LinalgError::NonTriangular { row: r, col: c });
        }
        if t.get(r, r).is_zero() {
            return Err(LinalgError::SingularDiagonal(r));
        }
    }
    let mut x: Vec<BigRational> = Vec::with_capacity(n);
    for (r, br) in b.iter().enumerate() {
        let mut acc = br.clone();
        for (c, xc) in x.iter().enumerate() {
            let e = t.get(r, c);
            if !e.is_zero() {
                acc -= e * xc;
            }
        }
        x.push(acc / t.get(r, r));
    }
    Ok(x)
}

/// Invariant factors of the quotient of the ambient row lattice by a sublattice.
///
/// One factor per rank of the ambient lattice: torsion and unit factors in
/// ascending order, then a `0` for every free summand.
pub fn quotient_invariants(ambient_basis: &IntMatrix, sub_basis: &IntMatrix) -> Result<Vec<BigInt>, LinalgError> {
    if ambient_basis.cols() != sub_basis.cols() {
        return Err(LinalgError::DimensionMismatch("ambient and sublattice live in different dimensions".into()));
    }
    let ambient = hermite_basis(ambient_basis);
    let k = ambient.rows();
    let mut coords = Vec::with_capacity(sub_basis.rows());
    for (i, row) in sub_basis.row_iter().enumerate() {
        coords.push(echelon_coordinates(&ambient, row).ok_or(LinalgError::NotASublattice(i))?);
    }
    let relations = IntMatrix::from_rows(coords, k)?;
    let snf = smith_normal_form(&relations);
    let mut factors: Vec<BigInt> = snf.factors.into_iter().filter(|d| !d.is_zero()).collect();
    factors.resize(k, BigInt::zero());
    Ok(factors)
}

/// Serde adapter for integer vectors: JSON numbers when they fit in 64 bits,
/// decimal strings otherwise. Both forms are accepted on input.
pub mod int_vec {
    use super::*;

    pub fn to_json(v: &BigInt) -> serde_json::Value {
        match i64::try_from(v) {
            Ok(n) => serde_json::Value::from(n),
            Err(_) => serde_json::Value::from(v.to_string()),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Option<BigInt> {
        match v {
            serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
            serde_json::Value::String(s) => s.trim().parse().ok(),
            _ => None,
        }
    }

    pub fn serialize<S: Serializer>(v: &[BigInt], serializer: S) -> Result<S::Ok, S::Error> {
        let values: Vec<serde_json::Value> = v.iter().map(to_json).collect();
        values.serialize(serializer)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<serde_json::Value>::deserialize(deserializer)?;
        raw.iter()
            .map(|v| from_json(v).ok_or_else(|| serde::de::Error::custom(format!("not an integer: {v}"))))
            .collect()
    }
}
