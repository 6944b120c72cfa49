use std::ops::{Div, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{LinalgError, Poly};
use crate::scalars::{Field, Scalar};

/// Dense square matrix over a single field, stored row-major.
///
/// The JSON form is `{"field": "Q", "dim": n, "entries": [["0", "1/2"], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct Matrix {
    n: usize,
    field: Field,
    data: Vec<Scalar>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    field: Field,
    dim: usize,
    entries: Vec<Vec<String>>,
}

impl From<Matrix> for MatrixJson {
    fn from(m: Matrix) -> Self {
        MatrixJson {
            field: m.field,
            dim: m.n,
            entries: m.rows().iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect(),
        }
    }
}

impl TryFrom<MatrixJson> for Matrix {
    type Error = LinalgError;

    fn try_from(j: MatrixJson) -> Result<Self, Self::Error> {
        if j.entries.len() != j.dim {
            return Err(LinalgError::DimensionMismatch(j.dim, j.entries.len()));
        }
        let rows = j
            .entries
            .iter()
            .map(|r| r.iter().map(|t| j.field.parse_scalar(t)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| LinalgError::Malformed(e.to_string()))?;
        Matrix::from_rows(j.field, rows)
    }
}

impl Matrix {
    pub fn zeros(field: Field, n: usize) -> Matrix {
        Matrix {
            n,
            field,
            data: vec![field.zero(); n * n],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn diagonal(field: Field, diag: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(field, diag.len());
        for (i, v) in diag.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    /// Builds a matrix from rows, checking shape and field.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix, LinalgError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(LinalgError::DimensionMismatch(n, row.len()));
            }
            for v in row {
                if v.field() != field {
                    return Err(LinalgError::FieldMismatch);
                }
                data.push(v);
            }
        }
        Ok(Matrix { n, field, data })
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Result<Matrix, LinalgError> {
        Matrix::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.int(v)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "field mismatch in Matrix::set");
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.data.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    fn check_same(&self, other: &Matrix) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.n != other.n {
            return Err(LinalgError::DimensionMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_same(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Matrix { n: self.n, field: self.field, data })
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_same(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Matrix { n: self.n, field: self.field, data })
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_same(other)?;
        let n = self.n;
        let mut out = Matrix::zeros(self.field, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * n + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            n: self.n,
            field: self.field,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    /// `self - c I`.
    pub fn shift(&self, c: &Scalar) -> Matrix {
        let mut m = self.clone();
        for i in 0..self.n {
            let v = m.get(i, i) - c;
            m.set(i, i, v);
        }
        m
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    /// `Z^{-1} A^T Z` with `Z` the anti-diagonal permutation: entry `(i, j)`
    /// becomes `A[d-j][d-i]`.
    pub fn anti_transpose(&self) -> Matrix {
        let n = self.n;
        let mut m = Matrix::zeros(self.field, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.get(n - 1 - j, n - 1 - i).clone());
            }
        }
        m
    }

    /// `D^{-1} A D` for `D = diag(diag)`.
    pub fn conjugate_by_diagonal(&self, diag: &[Scalar]) -> Result<Matrix, LinalgError> {
        if diag.len() != self.n {
            return Err(LinalgError::DimensionMismatch(self.n, diag.len()));
        }
        let mut m = self.clone();
        for i in 0..self.n {
            let inv = diag[i].inv().map_err(|_| LinalgError::Singular)?;
            for j in 0..self.n {
                let v = &(self.get(i, j) * &inv) * &diag[j];
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn trace(&self) -> Scalar {
        (0..self.n).fold(self.field.zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(self.field.zero(), |acc, j| &acc + &(self.get(i, j) * &v[j]))
            })
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn from_columns(field: Field, cols: &[Vec<Scalar>]) -> Matrix {
        let n = cols.len();
        let mut m = Matrix::zeros(field, n);
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    ///
    /// Rational matrices are first cleared of denominators row by row so the
    /// elimination runs over the integers.
    pub fn det(&self) -> Scalar {
        let n = self.n;
        if n == 0 {
            return self.field.one();
        }
        match self.field {
            Field::Rational => {
                let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
                let mut scale = BigInt::one();
                for i in 0..n {
                    let lcm = (0..n).fold(BigInt::one(), |acc, j| {
                        acc.lcm(self.get(i, j).as_rational().unwrap().denom())
                    });
                    rows.push(
                        (0..n)
                            .map(|j| {
                                let r = self.get(i, j).as_rational().unwrap();
                                r.numer() * (&lcm / r.denom())
                            })
                            .collect(),
                    );
                    scale *= lcm;
                }
                let d = bareiss(rows, BigInt::zero());
                Field::Rational.from_bigint(&d) / Field::Rational.from_bigint(&scale)
            }
            Field::Prime(_) => {
                let rows = self.rows();
                bareiss(rows, self.field.zero())
            }
        }
    }

    /// Characteristic polynomial `det(tI - A)` by Berkowitz's division-free
    /// algorithm.
    pub fn char_poly(&self) -> Poly {
        let n = self.n;
        let f = self.field;
        // Coefficients in descending order of degree.
        let mut p: Vec<Scalar> = vec![f.one()];
        for k in 0..n {
            // Leading k x k block M, row R = A[k][..k], column C = A[..k][k].
            let a = self.get(k, k).clone();
            let mut col: Vec<Scalar> = vec![f.one(), -&a];
            let mut v: Vec<Scalar> = (0..k).map(|i| self.get(i, k).clone()).collect();
            for _ in 0..k {
                let rv = (0..k).fold(f.zero(), |acc, j| &acc + &(self.get(k, j) * &v[j]));
                col.push(-rv);
                v = (0..k)
                    .map(|i| (0..k).fold(f.zero(), |acc, j| &acc + &(self.get(i, j) * &v[j])))
                    .collect();
            }
            // Multiply the (k+2) x (k+1) lower-triangular Toeplitz matrix by p.
            let mut next = vec![f.zero(); k + 2];
            for (r, slot) in next.iter_mut().enumerate() {
                for c in 0..=k.min(r) {
                    if r - c < col.len() {
                        *slot = &*slot + &(&col[r - c] * &p[c]);
                    }
                }
            }
            p = next;
        }
        p.reverse();
        Poly::new(f, p)
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Matrix::identity(self.field, n);
        for c in 0..n {
            let piv = (c..n).find(|&r| !a.get(r, c).is_zero()).ok_or(LinalgError::Singular)?;
            if piv != c {
                for j in 0..n {
                    a.data.swap(piv * n + j, c * n + j);
                    inv.data.swap(piv * n + j, c * n + j);
                }
            }
            let pinv = a.get(c, c).inv().expect("nonzero pivot");
            for j in 0..n {
                let v = a.get(c, j) * &pinv;
                a.set(c, j, v);
                let w = inv.get(c, j) * &pinv;
                inv.set(c, j, w);
            }
            for r in 0..n {
                if r == c || a.get(r, c).is_zero() {
                    continue;
                }
                let factor = a.get(r, c).clone();
                for j in 0..n {
                    let v = a.get(r, j) - &(&factor * a.get(c, j));
                    a.set(r, j, v);
                    let w = inv.get(r, j) - &(&factor * inv.get(c, j));
                    inv.set(r, j, w);
                }
            }
        }
        Ok(inv)
    }
}

fn bareiss<T>(mut m: Vec<Vec<T>>, zero: T) -> T
where
    T: Clone + PartialEq,
    for<'a> &'a T: Mul<&'a T, Output = T> + Sub<&'a T, Output = T> + Div<&'a T, Output = T>,
{
    let n = m.len();
    let mut negate = false;
    let mut prev: Option<T> = None;
    for k in 0..n - 1 {
        if m[k][k] == zero {
            match (k + 1..n).find(|&r| m[r][k] != zero) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return zero,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = match &prev {
                    Some(p) => &num / p,
                    None => num,
                };
            }
        }
        prev = Some(m[k][k].clone());
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        &zero - &d
    } else {
        d
    }
}

macro_rules! mat_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&Matrix> for &Matrix {
            type Output = Matrix;
            fn $method(self, rhs: &Matrix) -> Matrix {
                self.$checked(rhs).unwrap_or_else(|e| panic!("matrix {}: {e}", stringify!($method)))
            }
        }
    };
}

mat_op!(Add, add, checked_add);
mat_op!(Sub, sub, checked_sub);
mat_op!(Mul, mul, checked_mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn json_round_trip() {
        let m = Matrix::from_rows(Field::Rational, vec![vec![int(0), rat(-3, 4)], vec![int(1), int(0)]]).unwrap();
        let v = serde_json::to_value(&m).unwrap();
        assert_eq!(v["entries"][0][1], "-3/4");
        assert_eq!(serde_json::from_value::<Matrix>(v).unwrap(), m);
        let f = Field::prime(7).unwrap();
        let j = serde_json::json!({"field": "Fp:7", "dim": 2, "entries": [["0", "1/2"], ["1", "0"]]});
        let back: Matrix = serde_json::from_value(j).unwrap();
        assert_eq!(back.get(0, 1), &f.int(4));
        let bad = serde_json::json!({"field": "Q", "dim": 3, "entries": [["0"]]});
        assert!(serde_json::from_value::<Matrix>(bad).is_err());
    }

    fn q() -> Field {
        Field::Rational
    }

    /// Cofactor expansion, used only as an oracle.
    fn det_cofactor(m: &[Vec<Scalar>], f: Field) -> Scalar {
        let n = m.len();
        if n == 0 {
            return f.one();
        }
        let mut acc = f.zero();
        for c in 0..n {
            let minor: Vec<Vec<Scalar>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = &m[0][c] * &det_cofactor(&minor, f);
            acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
        proptest::collection::vec(proptest::collection::vec((-6i64..7, 1i64..4), n), n)
            .prop_map(|rows| rows.into_iter().map(|r| r.into_iter().map(|(a, b)| rat(a, b)).collect()).collect())
    }

    #[test]
    fn det_small() {
        let m = Matrix::from_ints(q(), &[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]).unwrap();
        assert_eq!(m.det(), int(-2));
        let z = Matrix::from_ints(q(), &[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(z.det(), int(0));
        let f = Field::prime(7).unwrap();
        let p = Matrix::from_ints(f, &[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]).unwrap();
        assert_eq!(p.det(), f.int(-2));
    }

    #[test]
    fn dimension_mismatch() {
        let a = Matrix::identity(q(), 2);
        let b = Matrix::identity(q(), 3);
        assert_eq!(a.checked_mul(&b), Err(LinalgError::DimensionMismatch(2, 3)));
        assert!(Matrix::from_ints(q(), &[&[1, 2], &[3]]).is_err());
    }

    #[test]
    fn anti_transpose_reverses_bands() {
        let m = Matrix::from_ints(q(), &[&[0, 5, 0], &[1, 0, 6], &[0, 2, 0]]).unwrap();
        let t = m.anti_transpose();
        assert_eq!(t, Matrix::from_ints(q(), &[&[0, 6, 0], &[2, 0, 5], &[0, 1, 0]]).unwrap());
        assert_eq!(t.anti_transpose(), m);
    }

    #[test]
    fn char_poly_of_companion() {
        // det(tI - A) for A = [[0,1],[1,0]] is t^2 - 1.
        let m = Matrix::from_ints(q(), &[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(m.char_poly().coeffs(), &[int(-1), int(0), int(1)]);
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor(rows in (1usize..5).prop_flat_map(small_matrix)) {
            let m = Matrix::from_rows(q(), rows.clone()).unwrap();
            prop_assert_eq!(m.det(), det_cofactor(&rows, q()));
        }

        #[test]
        fn berkowitz_matches_det_at_points(rows in (1usize..6).prop_flat_map(small_matrix)) {
            let m = Matrix::from_rows(q(), rows).unwrap();
            let cp = m.char_poly();
            prop_assert_eq!(cp.degree(), Some(m.dim()));
            for t in -3i64..4 {
                let shifted = Matrix::identity(q(), m.dim()).scale(&int(t)).checked_sub(&m).unwrap();
                prop_assert_eq!(cp.eval(&int(t)), shifted.det());
            }
        }

        #[test]
        fn inverse_roundtrip(rows in (1usize..5).prop_flat_map(small_matrix)) {
            let m = Matrix::from_rows(q(), rows).unwrap();
            match m.inverse() {
                Ok(inv) => prop_assert_eq!(&m * &inv, Matrix::identity(q(), m.dim())),
                Err(_) => prop_assert!(m.det().is_zero()),
            }
        }

        #[test]
        fn prime_field_char_poly(entries in proptest::collection::vec(0i64..13, 16)) {
            let f = Field::prime(13).unwrap();
            let rows: Vec<Vec<Scalar>> = entries.chunks(4).map(|r| r.iter().map(|&v| f.int(v)).collect()).collect();
            let m = Matrix::from_rows(f, rows).unwrap();
            let cp = m.char_poly();
            for t in 0..13 {
                let shifted = Matrix::identity(f, 4).scale(&f.int(t)).checked_sub(&m).unwrap();
                prop_assert_eq!(cp.eval(&f.int(t)), shifted.det());
            }
        }
    }
}
