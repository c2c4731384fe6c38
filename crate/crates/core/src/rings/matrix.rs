//! Dense matrices over a ring descriptor with Gaussian elimination.

use super::descriptor::{RingDescriptor, Value};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: RingDescriptor,
    rows: usize,
    cols: usize,
    entries: Vec<Value>,
}

/// Result of row reduction.
struct Reduced {
    entries: Vec<Value>,
    pivots: Vec<usize>,
    /// Product of the pivots with the sign of the row permutation applied.
    det: Value,
}

impl Matrix {
    /// Row-major constructor.
    pub fn new(ring: RingDescriptor, rows: usize, cols: usize, entries: Vec<Value>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidParams(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        for e in &entries {
            ring.validate(e)?;
        }
        Ok(Matrix { ring, rows, cols, entries })
    }

    pub fn from_i64(ring: RingDescriptor, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        let vals = entries.iter().map(|&n| ring.from_i64(n)).collect();
        Matrix::new(ring, rows, cols, vals)
    }

    pub fn zeros(ring: RingDescriptor, rows: usize, cols: usize) -> Self {
        let entries = vec![ring.zero(); rows * cols];
        Matrix { ring, rows, cols, entries }
    }

    pub fn identity(ring: RingDescriptor, n: usize) -> Self {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = m.ring.one();
        }
        m
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Value] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Value {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Value) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.ring != other.ring {
            return Err(Error::DescriptorMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::InvalidParams("matrix shapes do not conform".into()));
        }
        let r = &self.ring;
        let mut out = Matrix::zeros(r.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = r.mul(a, other.get(k, j));
                    let idx = i * other.cols + j;
                    out.entries[idx] = r.add(&out.entries[idx], &t);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Value]) -> Result<Vec<Value>> {
        if v.len() != self.cols {
            return Err(Error::InvalidParams("vector length does not match".into()));
        }
        let r = &self.ring;
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(self.get(i, j), &v[j])))
            })
            .collect())
    }

    fn reduce(&self) -> Result<Reduced> {
        let r = &self.ring;
        let (rows, cols) = (self.rows, self.cols);
        let mut m = self.entries.clone();
        let mut pivots = Vec::new();
        let mut det = r.one();
        let mut row = 0;
        for col in 0..cols {
            if row == rows {
                break;
            }
            // First nonzero entry that is a unit. Over a field this is the
            // first nonzero entry.
            let mut chosen = None;
            let mut saw_nonzero = false;
            for i in row..rows {
                let e = &m[i * cols + col];
                if r.is_zero(e) {
                    continue;
                }
                saw_nonzero = true;
                if let Ok(inv) = r.inv(e) {
                    chosen = Some((i, inv));
                    break;
                }
            }
            let (p, inv) = match chosen {
                Some(c) => c,
                None if saw_nonzero => return Err(Error::NotAField),
                None => {
                    det = r.zero();
                    continue;
                }
            };
            if p != row {
                for j in 0..cols {
                    m.swap(p * cols + j, row * cols + j);
                }
                det = r.neg(&det);
            }
            det = r.mul(&det, &m[row * cols + col]);
            for j in col..cols {
                m[row * cols + j] = r.mul(&m[row * cols + j], &inv);
            }
            for i in 0..rows {
                if i == row {
                    continue;
                }
                let f = m[i * cols + col].clone();
                if r.is_zero(&f) {
                    continue;
                }
                for j in col..cols {
                    let t = r.mul(&f, &m[row * cols + j]);
                    m[i * cols + j] = r.sub(&m[i * cols + j], &t);
                }
            }
            pivots.push(col);
            row += 1;
        }
        if pivots.len() < rows.min(cols) || rows != cols {
            det = r.zero();
        }
        Ok(Reduced { entries: m, pivots, det })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> Result<(Matrix, Vec<usize>)> {
        let red = self.reduce()?;
        Ok((
            Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries: red.entries },
            red.pivots,
        ))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.reduce()?.pivots.len())
    }

    pub fn det(&self) -> Result<Value> {
        if self.rows != self.cols {
            return Err(Error::InvalidParams("determinant of a non-square matrix".into()));
        }
        Ok(self.reduce()?.det)
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn nullspace(&self) -> Result<Vec<Vec<Value>>> {
        let red = self.reduce()?;
        Ok(kernel_from_rref(&self.ring, self.cols, &red.entries, &red.pivots))
    }
}

fn kernel_from_rref(r: &RingDescriptor, cols: usize, m: &[Value], pivots: &[usize]) -> Vec<Vec<Value>> {
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![r.zero(); cols];
            v[f] = r.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = r.neg(&m[i * cols + f]);
            }
            v
        })
        .collect()
}

/// Determinant and kernel basis from a single elimination. Only defined over
/// fields.
pub fn det_and_nullspace(m: &Matrix) -> Result<(Value, Vec<Vec<Value>>)> {
    if !m.ring.is_field() {
        return Err(Error::NotAField);
    }
    if m.rows != m.cols {
        return Err(Error::InvalidParams("determinant of a non-square matrix".into()));
    }
    let red = m.reduce()?;
    let kernel = kernel_from_rref(&m.ring, m.cols, &red.entries, &red.pivots);
    Ok((red.det, kernel))
}

/// Solves `A x = b` for square row-major `A`. Returns `None` when `A` is singular.
pub(crate) fn solve_square(ring: &RingDescriptor, a: &[Value], b: &[Value]) -> Result<Option<Vec<Value>>> {
    let n = b.len();
    let mut aug = Vec::with_capacity(n * (n + 1));
    for i in 0..n {
        aug.extend_from_slice(&a[i * n..(i + 1) * n]);
        aug.push(b[i].clone());
    }
    let m = Matrix { ring: ring.clone(), rows: n, cols: n + 1, entries: aug };
    let red = m.reduce()?;
    if red.pivots.len() < n || red.pivots.iter().any(|&p| p >= n) {
        return Ok(None);
    }
    Ok(Some((0..n).map(|i| red.entries[i * (n + 1) + n].clone()).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64) -> Value {
        Value::Rat(BigRational::from_integer(n.into()))
    }

    #[test]
    fn det_rational_2x2() {
        let m = Matrix::from_i64(RingDescriptor::Rationals, 2, 2, &[1, 2, 3, 4]).unwrap();
        let (d, k) = det_and_nullspace(&m).unwrap();
        assert_eq!(d, q(-2));
        assert!(k.is_empty());
    }

    #[test]
    fn singular_kernel() {
        let m = Matrix::from_i64(RingDescriptor::Rationals, 2, 2, &[1, 2, 2, 4]).unwrap();
        let (d, k) = det_and_nullspace(&m).unwrap();
        assert_eq!(d, q(0));
        assert_eq!(k, vec![vec![q(-2), q(1)]]);
        let img = m.mul_vec(&k[0]).unwrap();
        assert!(img.iter().all(|v| *v == q(0)));
    }

    #[test]
    fn det_with_row_swap_mod_p() {
        let z7 = RingDescriptor::mod_prime(7).unwrap();
        let m = Matrix::from_i64(z7, 2, 2, &[0, 1, 1, 0]).unwrap();
        assert_eq!(m.det().unwrap(), Value::Mod(6));
    }

    #[test]
    fn integer_matrix_with_non_unit_pivot_is_rejected() {
        let m = Matrix::from_i64(RingDescriptor::Integers, 2, 2, &[2, 1, 4, 3]).unwrap();
        assert_eq!(m.det(), Err(Error::NotAField));
    }

    #[test]
    fn small_cases_over_z13_and_z5() {
        let z13 = RingDescriptor::mod_prime(13).unwrap();
        let (d, k) = det_and_nullspace(&Matrix::identity(z13.clone(), 2)).unwrap();
        assert_eq!((d, k.len()), (Value::Mod(1), 0));
        let (d, k) = det_and_nullspace(&Matrix::zeros(z13, 2, 2)).unwrap();
        assert_eq!((d, k.len()), (Value::Mod(0), 2));
        let z5 = RingDescriptor::mod_prime(5).unwrap();
        let m = Matrix::from_i64(z5, 2, 2, &[1, 1, 1, 1]).unwrap();
        let (d, k) = det_and_nullspace(&m).unwrap();
        assert_eq!(d, Value::Mod(0));
        assert_eq!(k, vec![vec![Value::Mod(4), Value::Mod(1)]]);
    }

    #[test]
    fn oracle_refuses_non_fields() {
        let m = Matrix::identity(RingDescriptor::Integers, 2);
        assert_eq!(det_and_nullspace(&m), Err(Error::NotAField));
    }

    #[test]
    fn solve_small_system() {
        let r = RingDescriptor::Rationals;
        let a = vec![q(2), q(1), q(1), q(3)];
        let b = vec![q(3), q(5)];
        let x = solve_square(&r, &a, &b).unwrap().unwrap();
        assert_eq!(x, vec![Value::Rat(BigRational::new(4.into(), 5.into())), Value::Rat(BigRational::new(7.into(), 5.into()))]);
    }

    #[test]
    fn identity_product() {
        let r = RingDescriptor::Rationals;
        let m = Matrix::from_i64(r.clone(), 2, 3, &[1, 2, 3, 4, 5, 6]).unwrap();
        let i = Matrix::identity(r, 2);
        assert_eq!(i.mul(&m).unwrap(), m);
    }
}
