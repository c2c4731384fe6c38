//! Symbol algebras of degree N: `x^N = a`, `y^N = b`, `yx = ωxy`.
//!
//! Elements are stored as N² coefficients at linear index `l = i + N·j` for
//! the basis element `x^i y^j`. For N = 3 that is the order
//! 1, x, x², y, xy, x²y, y², xy², x²y².

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rings::{adjoin_primitive_root, det_and_nullspace, Matrix, RingDescriptor, RingElement, Value};

struct Inner {
    n: usize,
    field: RingDescriptor,
    a: Value,
    b: Value,
    omega: Value,
    /// `table[l1 * N² + l2] = (scalar, l)` with `e_l1 · e_l2 = scalar · e_l`.
    table: Vec<(Value, usize)>,
}

/// Handle to an immutable symbol algebra; cheap to clone.
#[derive(Clone)]
pub struct SymbolAlgebra(Arc<Inner>);

impl PartialEq for SymbolAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.n == other.0.n
                && self.0.field == other.0.field
                && self.0.a == other.0.a
                && self.0.b == other.0.b
                && self.0.omega == other.0.omega)
    }
}

impl Eq for SymbolAlgebra {}

impl fmt::Debug for SymbolAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymbolAlgebra({})", self.header())
    }
}

/// Header used in serialized output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraHeader {
    #[serde(rename = "N")]
    pub n: usize,
    pub a: String,
    pub b: String,
    pub field: String,
    #[serde(rename = "ω")]
    pub omega: String,
}

impl fmt::Display for AlgebraHeader {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{} / {}, ω={}, N={})", self.a, self.b, self.field, self.omega, self.n)
    }
}

impl SymbolAlgebra {
    /// Builds the algebra and checks that ω has exact order N and a, b ≠ 0.
    pub fn new(n: usize, a: &RingElement, b: &RingElement, omega: &RingElement) -> Result<Self> {
        let field = omega.ring().clone();
        if a.ring() != &field || b.ring() != &field {
            return Err(Error::DescriptorMismatch);
        }
        if n < 2 {
            return Err(Error::InvalidParams(format!("degree must be at least 2, got {n}")));
        }
        let ch = field.characteristic();
        if ch != 0 && (n as u64) % ch == 0 {
            return Err(Error::CharDividesN { r: ch, n: n as u64 });
        }
        if a.is_zero() || b.is_zero() {
            return Err(Error::InvalidParams("a and b must be nonzero".into()));
        }
        let mut pw = field.one();
        for d in 1..=n {
            pw = field.mul(&pw, omega.value());
            let is_one = field.is_one(&pw);
            if (d < n && is_one) || (d == n && !is_one) {
                return Err(Error::InvalidParams(format!("ω is not a primitive {n}-th root of unity")));
            }
        }
        let mut inner = Inner {
            n,
            field,
            a: a.value().clone(),
            b: b.value().clone(),
            omega: omega.value().clone(),
            table: Vec::new(),
        };
        inner.table = build_table(&inner);
        Ok(SymbolAlgebra(Arc::new(inner)))
    }

    /// Adjoins a primitive N-th root of unity ε to `base` and builds
    /// `(a, b / base(ε), ε)` with integer a, b.
    pub fn cyclotomic(base: &RingDescriptor, n: usize, a: i64, b: i64) -> Result<Self> {
        let (field, eps) = adjoin_primitive_root(base, n as u64)?;
        let a = RingElement::from_i64(&field, a);
        let b = RingElement::from_i64(&field, b);
        SymbolAlgebra::new(n, &a, &b, &eps)
    }

    /// Same algebra with scalars extended to `field`, which must contain the
    /// current field as a tower level.
    pub fn extend_scalars(&self, field: &RingDescriptor) -> Result<Self> {
        let lift = |v: &Value| RingElement::embed(field, &RingElement::new(self.field().clone(), v.clone())?);
        SymbolAlgebra::new(self.degree(), &lift(&self.0.a)?, &lift(&self.0.b)?, &lift(&self.0.omega)?)
    }

    pub fn degree(&self) -> usize {
        self.0.n
    }

    /// N².
    pub fn dim(&self) -> usize {
        self.0.n * self.0.n
    }

    pub fn field(&self) -> &RingDescriptor {
        &self.0.field
    }

    pub fn a(&self) -> RingElement {
        self.elem(&self.0.a)
    }

    pub fn b(&self) -> RingElement {
        self.elem(&self.0.b)
    }

    pub fn omega(&self) -> RingElement {
        self.elem(&self.0.omega)
    }

    fn elem(&self, v: &Value) -> RingElement {
        RingElement::new(self.0.field.clone(), v.clone()).expect("algebra scalar")
    }

    pub fn header(&self) -> AlgebraHeader {
        AlgebraHeader {
            n: self.0.n,
            a: self.a().to_string(),
            b: self.b().to_string(),
            field: self.0.field.to_string(),
            omega: self.omega().to_string(),
        }
    }

    /// `x^{i1} y^{j1} · x^{i2} y^{j2} = ω^{j1·i2} a^{⌊(i1+i2)/N⌋} b^{⌊(j1+j2)/N⌋} x^i y^j`.
    pub fn basis_mul(&self, (i1, j1): (usize, usize), (i2, j2): (usize, usize)) -> Result<(RingElement, (usize, usize))> {
        let n = self.0.n;
        if [i1, j1, i2, j2].iter().any(|&e| e >= n) {
            return Err(Error::IndexOutOfRange(format!("basis exponents must be below {n}")));
        }
        let (s, l) = &self.0.table[(i1 + n * j1) * self.dim() + (i2 + n * j2)];
        Ok((self.elem(s), (l % n, l / n)))
    }

    pub fn zero(&self) -> SymElement {
        SymElement { alg: self.clone(), coeffs: vec![self.0.field.zero(); self.dim()] }
    }

    pub fn one(&self) -> SymElement {
        self.scalar(&RingElement::one(&self.0.field)).expect("same field")
    }

    pub fn scalar(&self, c: &RingElement) -> Result<SymElement> {
        let mut z = self.zero();
        z.set_coeff(0, 0, c)?;
        Ok(z)
    }

    /// The basis element `x^i y^j`.
    pub fn basis(&self, i: usize, j: usize) -> Result<SymElement> {
        let mut z = self.zero();
        z.set_coeff(i, j, &RingElement::one(&self.0.field))?;
        Ok(z)
    }

    pub fn x(&self) -> SymElement {
        self.basis(1, 0).expect("degree ≥ 2")
    }

    pub fn y(&self) -> SymElement {
        self.basis(0, 1).expect("degree ≥ 2")
    }

    /// Element from N² coefficients in basis order.
    pub fn element(&self, coeffs: &[RingElement]) -> Result<SymElement> {
        if coeffs.len() != self.dim() {
            return Err(Error::WrongDegree { expected: self.dim(), got: coeffs.len() });
        }
        if coeffs.iter().any(|c| c.ring() != &self.0.field) {
            return Err(Error::DescriptorMismatch);
        }
        Ok(SymElement { alg: self.clone(), coeffs: coeffs.iter().map(|c| c.value().clone()).collect() })
    }

    pub fn element_i64(&self, coeffs: &[i64]) -> Result<SymElement> {
        let cs: Vec<RingElement> = coeffs.iter().map(|&c| RingElement::from_i64(&self.0.field, c)).collect();
        self.element(&cs)
    }

    /// Uniform sample; see [`RingDescriptor::sample`] for `bound`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> SymElement {
        let coeffs = (0..self.dim()).map(|_| self.0.field.sample(rng, bound)).collect();
        SymElement { alg: self.clone(), coeffs }
    }
}

fn build_table(alg: &Inner) -> Vec<(Value, usize)> {
    let n = alg.n;
    let f = &alg.field;
    let omega_pows: Vec<Value> = (0..n).map(|e| f.pow(&alg.omega, e as u64)).collect();
    let mut table = Vec::with_capacity(n.pow(4));
    for l1 in 0..n * n {
        let (i1, j1) = (l1 % n, l1 / n);
        for l2 in 0..n * n {
            let (i2, j2) = (l2 % n, l2 / n);
            let mut s = omega_pows[(j1 * i2) % n].clone();
            if i1 + i2 >= n {
                s = f.mul(&s, &alg.a);
            }
            if j1 + j2 >= n {
                s = f.mul(&s, &alg.b);
            }
            table.push((s, (i1 + i2) % n + n * ((j1 + j2) % n)));
        }
    }
    table
}

/// Element of a symbol algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct SymElement {
    alg: SymbolAlgebra,
    coeffs: Vec<Value>,
}

impl SymElement {
    pub fn algebra(&self) -> &SymbolAlgebra {
        &self.alg
    }

    pub fn values(&self) -> &[Value] {
        &self.coeffs
    }

    pub fn coeffs(&self) -> Vec<RingElement> {
        self.coeffs.iter().map(|v| self.alg.elem(v)).collect()
    }

    /// Coefficient of `x^i y^j`.
    pub fn coeff(&self, i: usize, j: usize) -> RingElement {
        self.alg.elem(&self.coeffs[i + self.alg.degree() * j])
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, c: &RingElement) -> Result<()> {
        let n = self.alg.degree();
        if i >= n || j >= n {
            return Err(Error::IndexOutOfRange(format!("basis exponents must be below {n}")));
        }
        if c.ring() != self.alg.field() {
            return Err(Error::DescriptorMismatch);
        }
        self.coeffs[i + n * j] = c.value().clone();
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        let f = self.alg.field();
        self.coeffs.iter().all(|c| f.is_zero(c))
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.alg == other.alg {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    fn zip(&self, other: &Self, op: impl Fn(&Value, &Value) -> Value) -> Result<Self> {
        self.same(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| op(x, y)).collect();
        Ok(SymElement { alg: self.alg.clone(), coeffs })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let f = self.alg.field().clone();
        self.zip(other, |x, y| f.add(x, y))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let f = self.alg.field().clone();
        self.zip(other, |x, y| f.sub(x, y))
    }

    pub fn neg(&self) -> Self {
        let f = self.alg.field();
        SymElement { alg: self.alg.clone(), coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect() }
    }

    /// Scalar multiple `c·z`. Scalars are central.
    pub fn scale(&self, c: &RingElement) -> Result<Self> {
        if c.ring() != self.alg.field() {
            return Err(Error::DescriptorMismatch);
        }
        let f = self.alg.field();
        Ok(SymElement { alg: self.alg.clone(), coeffs: self.coeffs.iter().map(|x| f.mul(c.value(), x)).collect() })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        mul_elements(self, other)
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = self.alg.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_elements(&acc, &base).expect("same algebra");
            }
            e >>= 1;
            if e > 0 {
                base = mul_elements(&base, &base).expect("same algebra");
            }
        }
        acc
    }

    /// Coefficient strings in basis order.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs().iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Debug for SymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymElement{:?}", self.coeff_strings())
    }
}

impl fmt::Display for SymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.coeff_strings().join(", "))
    }
}

impl Serialize for SymElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SymElement", 2)?;
        st.serialize_field("algebra", &self.alg.header())?;
        st.serialize_field("coeffs", &self.coeff_strings())?;
        st.end()
    }
}

/// Bilinear product through the basis multiplication table.
pub fn mul_elements(z1: &SymElement, z2: &SymElement) -> Result<SymElement> {
    z1.same(z2)?;
    let alg = &z1.alg;
    let f = alg.field();
    let d = alg.dim();
    let mut out = vec![f.zero(); d];
    for (l1, c1) in z1.coeffs.iter().enumerate() {
        if f.is_zero(c1) {
            continue;
        }
        for (l2, c2) in z2.coeffs.iter().enumerate() {
            if f.is_zero(c2) {
                continue;
            }
            let (s, l) = &alg.0.table[l1 * d + l2];
            let t = f.mul(&f.mul(c1, c2), s);
            out[*l] = f.add(&out[*l], &t);
        }
    }
    Ok(SymElement { alg: alg.clone(), coeffs: out })
}

fn regular_matrix(z: &SymElement, left: bool) -> Result<Matrix> {
    let alg = &z.alg;
    let f = alg.field();
    if !f.is_field() {
        return Err(Error::NotAField);
    }
    let d = alg.dim();
    let mut m = Matrix::zeros(f.clone(), d, d);
    for col in 0..d {
        let mut e = alg.zero();
        e.coeffs[col] = f.one();
        let img = if left { mul_elements(z, &e)? } else { mul_elements(&e, z)? };
        for (row, v) in img.coeffs.into_iter().enumerate() {
            m.set(row, col, v);
        }
    }
    Ok(m)
}

/// Matrix of `v ↦ z·v`; column l holds `z·e_l`.
pub fn left_regular_matrix(z: &SymElement) -> Result<Matrix> {
    regular_matrix(z, true)
}

/// Matrix of `v ↦ v·z`.
pub fn right_regular_matrix(z: &SymElement) -> Result<Matrix> {
    regular_matrix(z, false)
}

/// Determinant of the left regular representation, available for every N.
pub fn regular_det(z: &SymElement) -> Result<RingElement> {
    let (det, _) = det_and_nullspace(&left_regular_matrix(z)?)?;
    RingElement::new(z.alg.field().clone(), det)
}

fn norm3_coeffs(z: &SymElement) -> Result<[[Value; 3]; 3]> {
    if z.alg.degree() != 3 {
        return Err(Error::WrongDegree { expected: 3, got: z.alg.degree() });
    }
    let c = |i: usize, j: usize| z.coeffs[i + 3 * j].clone();
    Ok([[c(0, 0), c(0, 1), c(0, 2)], [c(1, 0), c(1, 1), c(1, 2)], [c(2, 0), c(2, 1), c(2, 2)]])
}

/// Degree-3 reduced norm, transcribed term by term with ε = ω.
pub fn reduced_norm3(z: &SymElement) -> Result<RingElement> {
    let c = norm3_coeffs(z)?;
    let f = z.alg.field();
    let (a, b, eps) = (&z.alg.0.a, &z.alg.0.b, &z.alg.0.omega);
    let m = |xs: &[&Value]| xs.iter().skip(1).fold(xs[0].clone(), |acc, x| f.mul(&acc, x));
    let cube = |x: &Value| f.pow(x, 3);
    let k = |n: i64| f.from_i64(n);
    let b2 = f.mul(b, b);
    let eps2 = f.mul(eps, eps);
    // row i: c_i0^3 + b c_i1^3 + b^2 c_i2^3 - 3b c_i0 c_i1 c_i2
    let row = |i: usize| {
        let s = f.add(&f.add(&cube(&c[i][0]), &f.mul(b, &cube(&c[i][1]))), &f.mul(&b2, &cube(&c[i][2])));
        f.sub(&s, &m(&[&k(3), b, &c[i][0], &c[i][1], &c[i][2]]))
    };
    let mut n = f.add(&f.mul(&f.mul(a, a), &row(2)), &f.mul(a, &row(1)));
    let diag = f.add(
        &f.add(&m(&[&c[0][0], &c[1][0], &c[2][0]]), &m(&[b, &c[0][1], &c[1][1], &c[2][1]])),
        &m(&[&b2, &c[0][2], &c[1][2], &c[2][2]]),
    );
    n = f.sub(&n, &m(&[&k(3), a, &diag]));
    let eps_terms = f.add(
        &f.add(&m(&[&c[0][0], &c[1][2], &c[2][1]]), &m(&[&c[0][1], &c[1][0], &c[2][2]])),
        &m(&[&c[0][2], &c[1][1], &c[2][0]]),
    );
    n = f.sub(&n, &m(&[&k(3), a, b, eps, &eps_terms]));
    let eps2_terms = f.add(
        &f.add(&m(&[&c[0][0], &c[1][1], &c[2][2]]), &m(&[&c[0][2], &c[1][0], &c[2][1]])),
        &m(&[&c[0][1], &c[1][2], &c[2][0]]),
    );
    n = f.sub(&n, &m(&[&k(3), a, b, &eps2, &eps2_terms]));
    n = f.add(&n, &row(0));
    RingElement::new(f.clone(), n)
}

/// Same norm with ε² replaced by −1−ε before evaluation:
/// the two ε-groups combine to `3ab(E2 + ε(E2 − E1))`.
pub fn reduced_norm3_grouped(z: &SymElement) -> Result<RingElement> {
    let c = norm3_coeffs(z)?;
    let f = z.alg.field();
    let (a, b, eps) = (&z.alg.0.a, &z.alg.0.b, &z.alg.0.omega);
    let p3 = |x: &Value, y: &Value, w: &Value| f.mul(&f.mul(x, y), w);
    let three = f.from_i64(3);
    let b2 = f.mul(b, b);
    let mut rows = Vec::new();
    for r in &c {
        let cubes = f.add(
            &f.add(&f.pow(&r[0], 3), &f.mul(b, &f.pow(&r[1], 3))),
            &f.mul(&b2, &f.pow(&r[2], 3)),
        );
        rows.push(f.sub(&cubes, &f.mul(&f.mul(&three, b), &p3(&r[0], &r[1], &r[2]))));
    }
    let diag = f.add(
        &f.add(&p3(&c[0][0], &c[1][0], &c[2][0]), &f.mul(b, &p3(&c[0][1], &c[1][1], &c[2][1]))),
        &f.mul(&b2, &p3(&c[0][2], &c[1][2], &c[2][2])),
    );
    let e1 = f.add(
        &f.add(&p3(&c[0][0], &c[1][2], &c[2][1]), &p3(&c[0][1], &c[1][0], &c[2][2])),
        &p3(&c[0][2], &c[1][1], &c[2][0]),
    );
    let e2 = f.add(
        &f.add(&p3(&c[0][0], &c[1][1], &c[2][2]), &p3(&c[0][2], &c[1][0], &c[2][1])),
        &p3(&c[0][1], &c[1][2], &c[2][0]),
    );
    let ab3 = f.mul(&three, &f.mul(a, b));
    // −3abε E1 − 3ab(−1−ε) E2 = 3ab (E2 + ε (E2 − E1))
    let eps_part = f.mul(&ab3, &f.add(&e2, &f.mul(eps, &f.sub(&e2, &e1))));
    let mut n = f.add(&f.mul(&f.mul(a, a), &rows[2]), &f.mul(a, &rows[1]));
    n = f.sub(&n, &f.mul(&f.mul(&three, a), &diag));
    n = f.add(&n, &eps_part);
    n = f.add(&n, &rows[0]);
    RingElement::new(f.clone(), n)
}

/// Outcome of a zero-divisor test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroDivisorCheck {
    pub flag: bool,
    /// Nonzero `v` with `z·v = 0` when `flag` holds.
    pub witness: Option<SymElement>,
    pub det: RingElement,
}

/// Decides whether `z` is a zero divisor from the left regular
/// representation. For N = 3 the result is cross-checked against the norm.
pub fn is_zero_divisor(z: &SymElement) -> Result<ZeroDivisorCheck> {
    if z.is_zero() {
        return Err(Error::InvalidParams("zero element".into()));
    }
    let f = z.alg.field().clone();
    let (det, kernel) = det_and_nullspace(&left_regular_matrix(z)?)?;
    let flag = f.is_zero(&det);
    if flag == kernel.is_empty() {
        return Err(Error::Inconsistent("determinant and kernel disagree".into()));
    }
    let witness = match kernel.into_iter().next() {
        Some(v) => {
            let w = SymElement { alg: z.alg.clone(), coeffs: v };
            if !mul_elements(z, &w)?.is_zero() || w.is_zero() {
                return Err(Error::Inconsistent("kernel vector is not a witness".into()));
            }
            Some(w)
        }
        None => None,
    };
    if z.alg.degree() == 3 && reduced_norm3(z)?.is_zero() != flag {
        return Err(Error::Inconsistent("reduced norm disagrees with the determinant".into()));
    }
    Ok(ZeroDivisorCheck { flag, witness, det: RingElement::new(f, det)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z13(a: i64, b: i64) -> SymbolAlgebra {
        SymbolAlgebra::cyclotomic(&RingDescriptor::mod_prime(13).unwrap(), 3, a, b).unwrap()
    }

    fn q3() -> SymbolAlgebra {
        SymbolAlgebra::cyclotomic(&RingDescriptor::Rationals, 3, 1, 1).unwrap()
    }

    #[test]
    fn basis_law_examples() {
        let alg = z13(2, 5);
        let (s, ix) = alg.basis_mul((0, 1), (1, 0)).unwrap();
        assert_eq!((s, ix), (alg.omega(), (1, 1)));
        let (s, ix) = alg.basis_mul((2, 0), (2, 0)).unwrap();
        assert_eq!((s, ix), (alg.a(), (1, 0)));
        let (s, ix) = alg.basis_mul((2, 1), (1, 2)).unwrap();
        assert_eq!((s, ix), (&(&alg.omega() * &alg.a()) * &alg.b(), (0, 0)));
        assert!(alg.basis_mul((3, 0), (0, 0)).is_err());
    }

    #[test]
    fn hand_expanded_products() {
        // y²x = ω² x y², since each y passes x once
        let alg = q3();
        let (s, ix) = alg.basis_mul((0, 2), (1, 0)).unwrap();
        assert_eq!((s, ix), (alg.omega().pow(2), (1, 2)));
        // y x² = ω² x² y
        let (s, ix) = alg.basis_mul((0, 1), (2, 0)).unwrap();
        assert_eq!((s, ix), (alg.omega().pow(2), (2, 1)));
    }

    #[test]
    fn square_of_x_plus_y() {
        let alg = q3();
        let s = alg.x().add(&alg.y()).unwrap();
        let sq = s.mul(&s).unwrap();
        let one = RingElement::one(alg.field());
        let mut want = alg.zero();
        want.set_coeff(2, 0, &one).unwrap();
        want.set_coeff(0, 2, &one).unwrap();
        want.set_coeff(1, 1, &(&one + &alg.omega())).unwrap();
        assert_eq!(sq, want);
    }

    #[test]
    fn associativity_witness_and_unit() {
        let alg = z13(3, 4);
        let (x, y) = (alg.x(), alg.y());
        assert_eq!(x.mul(&y).unwrap().mul(&y).unwrap(), x.mul(&y.mul(&y).unwrap()).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let z = alg.sample(&mut rng, 0);
        assert_eq!(z.mul(&alg.one()).unwrap(), z);
        assert_eq!(alg.one().mul(&z).unwrap(), z);
    }

    #[test]
    fn quaternion_relations() {
        let q = RingDescriptor::Rationals;
        let m1 = RingElement::from_i64(&q, -1);
        let alg = SymbolAlgebra::new(2, &m1, &m1, &m1).unwrap();
        let (x, y) = (alg.x(), alg.y());
        assert_eq!(x.mul(&x).unwrap(), alg.one().neg());
        assert_eq!(y.mul(&y).unwrap(), alg.one().neg());
        assert_eq!(y.mul(&x).unwrap(), x.mul(&y).unwrap().neg());
    }

    #[test]
    fn validation() {
        let r13 = RingDescriptor::mod_prime(13).unwrap();
        let one = RingElement::one(&r13);
        let three = RingElement::from_i64(&r13, 3);
        let nine = RingElement::from_i64(&r13, 9);
        assert!(SymbolAlgebra::new(3, &one, &one, &three).is_ok());
        assert!(SymbolAlgebra::new(3, &one, &one, &one).is_err());
        assert!(SymbolAlgebra::new(3, &RingElement::zero(&r13), &one, &nine).is_err());
        let z3 = RingDescriptor::mod_prime(3).unwrap();
        assert!(matches!(SymbolAlgebra::cyclotomic(&z3, 3, 1, 1), Err(Error::CharDividesN { .. })));
        let other = z13_alg_other();
        assert_eq!(z13_alg_other().x().mul(&other.x()).map(|_| ()), Ok(()));
        assert_eq!(other.x().mul(&z13(1, 1).x()), Err(Error::AlgebraMismatch));
    }

    fn z13_alg_other() -> SymbolAlgebra {
        z13(2, 2)
    }

    #[test]
    fn regular_matrix_examples() {
        let alg = z13(2, 5);
        let m = left_regular_matrix(&alg.one()).unwrap();
        assert_eq!(m, Matrix::identity(alg.field().clone(), 9));
        assert!(regular_det(&alg.one()).unwrap().is_one());
        let mx = left_regular_matrix(&alg.x()).unwrap();
        // x·x² = a·1: column 2 has a in row 0
        assert_eq!(mx.get(0, 2), alg.a().value());
        assert_eq!(mx.get(1, 0), &alg.field().one());
        let zint = SymbolAlgebra::new(
            3,
            &RingElement::one(&RingDescriptor::Integers),
            &RingElement::one(&RingDescriptor::Integers),
            &RingElement::one(&RingDescriptor::Integers),
        );
        assert!(zint.is_err());
    }

    #[test]
    fn norm_examples() {
        let alg = z13(1, 12);
        assert!(reduced_norm3(&alg.one()).unwrap().is_one());
        assert_eq!(reduced_norm3(&alg.x()).unwrap(), alg.a());
        let s = alg.x().add(&alg.y()).unwrap();
        assert!(reduced_norm3(&s).unwrap().is_zero());
        let zd = is_zero_divisor(&s).unwrap();
        assert!(zd.flag);
        assert!(s.mul(zd.witness.as_ref().unwrap()).unwrap().is_zero());
        let x = is_zero_divisor(&alg.x()).unwrap();
        assert!(!x.flag && x.witness.is_none());
        assert!(!is_zero_divisor(&alg.one()).unwrap().flag);
    }

    #[test]
    fn norm_needs_degree_three() {
        let alg = SymbolAlgebra::cyclotomic(&RingDescriptor::mod_prime(13).unwrap(), 2, 1, 1).unwrap();
        assert_eq!(reduced_norm3(&alg.one()), Err(Error::WrongDegree { expected: 3, got: 2 }));
    }

    #[test]
    fn norm_cubed_is_determinant_both_epsilons() {
        // GF(49) contains ε via t² + t + 1; Z_13 contains ε = 3
        for r in [7u64, 13] {
            let alg = SymbolAlgebra::cyclotomic(&RingDescriptor::mod_prime(r).unwrap(), 3, 2, 3).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(r);
            for _ in 0..10 {
                let z = alg.sample(&mut rng, 0);
                let n = reduced_norm3(&z).unwrap();
                assert_eq!(n, reduced_norm3_grouped(&z).unwrap());
                assert_eq!(regular_det(&z).unwrap(), n.pow(3));
            }
        }
    }

    #[test]
    fn serialization_shape() {
        let alg = z13(1, 12);
        let s = serde_json::to_string(&alg.x()).unwrap();
        assert_eq!(
            s,
            r#"{"algebra":{"N":3,"a":"1","b":"12","field":"Z_13","ω":"3"},"coeffs":["0","1","0","0","0","0","0","0","0"]}"#
        );
    }
}
