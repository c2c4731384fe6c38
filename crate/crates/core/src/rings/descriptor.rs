//! Runtime ring descriptors and the value-level arithmetic they drive.
//!
//! A [`RingDescriptor`] names one of the supported exact rings. Raw
//! [`Value`]s carry no ring information; every operation is dispatched
//! through the descriptor that owns them. [`RingElement`](super::RingElement)
//! pairs the two for the public API.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::matrix;
use crate::error::{Error, Result};

/// Maximum nesting of quotient/series constructions.
pub const MAX_DEPTH: usize = 3;

/// Raw coordinates of an element. The shape is dictated by the owning
/// descriptor: scalars for base rings, a coordinate list for quotient and
/// series rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(BigInt),
    Rat(BigRational),
    Mod(u64),
    Poly(Vec<Value>),
}

/// What a quotient ring was built for. Used to recover √Δ and to decide
/// whether the quotient is a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientKind {
    /// Adjoined a primitive N-th root of unity.
    Cyclotomic(u64),
    /// Adjoined a square root of the given integer.
    Quadratic(BigInt),
    Generic,
}

#[derive(Debug, PartialEq, Eq)]
pub struct QuotientRing {
    base: RingDescriptor,
    /// Monic modulus, lowest coefficient first, length = degree + 1.
    modulus: Vec<Value>,
    var: String,
    kind: QuotientKind,
    field: bool,
}

impl QuotientRing {
    pub fn base(&self) -> &RingDescriptor {
        &self.base
    }

    pub fn modulus(&self) -> &[Value] {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn kind(&self) -> &QuotientKind {
        &self.kind
    }
}

#[derive(Debug, PartialEq, Eq)]
pub struct SeriesRing {
    base: RingDescriptor,
    order: usize,
}

impl SeriesRing {
    pub fn base(&self) -> &RingDescriptor {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

/// One of the exact rings the kernel knows how to compute in.
#[derive(Clone, Debug, Eq)]
pub enum RingDescriptor {
    Integers,
    Rationals,
    ModPrime(u64),
    Quotient(Arc<QuotientRing>),
    Series(Arc<SeriesRing>),
}

impl PartialEq for RingDescriptor {
    fn eq(&self, other: &Self) -> bool {
        use RingDescriptor::*;
        match (self, other) {
            (Integers, Integers) | (Rationals, Rationals) => true,
            (ModPrime(a), ModPrime(b)) => a == b,
            (Quotient(a), Quotient(b)) => Arc::ptr_eq(a, b) || **a == **b,
            (Series(a), Series(b)) => Arc::ptr_eq(a, b) || **a == **b,
            _ => false,
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Integers => write!(f, "Z"),
            RingDescriptor::Rationals => write!(f, "Q"),
            RingDescriptor::ModPrime(r) => write!(f, "Z_{r}"),
            RingDescriptor::Quotient(q) => write!(
                f,
                "{}[{}]/({})",
                q.base,
                q.var,
                super::text::render_poly(&q.base, &q.modulus, &q.var, true)
            ),
            RingDescriptor::Series(s) => write!(f, "{}[[s]]/(s^{})", s.base, s.order),
        }
    }
}

pub fn is_odd_prime(n: u64) -> bool {
    if n < 3 || n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn mod_mul(a: u64, b: u64, r: u64) -> u64 {
    ((a as u128 * b as u128) % r as u128) as u64
}

pub(crate) fn mod_pow(mut base: u64, mut exp: u64, r: u64) -> u64 {
    let mut acc = 1 % r;
    base %= r;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, r);
        }
        base = mod_mul(base, base, r);
        exp >>= 1;
    }
    acc
}

pub(crate) fn mod_inv(a: u64, r: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(r as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(r as i128) as u64)
}

/// Canonical residue of an arbitrary integer modulo `r`.
pub(crate) fn bigint_mod(n: &BigInt, r: u64) -> u64 {
    let m = n.mod_floor(&BigInt::from(r));
    m.to_u64().expect("residue fits in u64")
}

impl RingDescriptor {
    /// `Z_r` for an odd prime `r` (checked by trial division).
    pub fn mod_prime(r: u64) -> Result<Self> {
        if r > u32::MAX as u64 || !is_odd_prime(r) {
            return Err(Error::NotPrime(r));
        }
        Ok(RingDescriptor::ModPrime(r))
    }

    /// Generic quotient `base[var]/(modulus)`. The modulus is given lowest
    /// coefficient first and must be monic of degree ≥ 1.
    pub fn quotient(base: RingDescriptor, modulus: Vec<Value>, var: &str) -> Result<Self> {
        let field = generic_quotient_is_field(&base, &modulus);
        Self::quotient_with(base, modulus, var, QuotientKind::Generic, field)
    }

    pub(crate) fn quotient_with(
        base: RingDescriptor,
        modulus: Vec<Value>,
        var: &str,
        kind: QuotientKind,
        field: bool,
    ) -> Result<Self> {
        if modulus.len() < 2 {
            return Err(Error::InvalidModulus("degree must be at least 1".into()));
        }
        for c in &modulus {
            base.validate(c)?;
        }
        if !base.is_one(modulus.last().unwrap()) {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        if base.depth() + 1 > MAX_DEPTH {
            return Err(Error::InvalidModulus(format!(
                "nesting depth exceeds {MAX_DEPTH}"
            )));
        }
        Ok(RingDescriptor::Quotient(Arc::new(QuotientRing {
            base,
            modulus,
            var: var.to_string(),
            kind,
            field,
        })))
    }

    /// Truncated power series over `base`, keeping `order` coefficients.
    pub fn series(base: RingDescriptor, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParams("series order must be >= 1".into()));
        }
        if base.depth() + 1 > MAX_DEPTH {
            return Err(Error::InvalidParams(format!(
                "nesting depth exceeds {MAX_DEPTH}"
            )));
        }
        Ok(RingDescriptor::Series(Arc::new(SeriesRing { base, order })))
    }

    pub fn depth(&self) -> usize {
        match self {
            RingDescriptor::Quotient(q) => q.base.depth() + 1,
            RingDescriptor::Series(s) => s.base.depth() + 1,
            _ => 0,
        }
    }

    pub fn base(&self) -> Option<&RingDescriptor> {
        match self {
            RingDescriptor::Quotient(q) => Some(&q.base),
            RingDescriptor::Series(s) => Some(&s.base),
            _ => None,
        }
    }

    pub fn as_quotient(&self) -> Option<&QuotientRing> {
        match self {
            RingDescriptor::Quotient(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_series(&self) -> Option<&SeriesRing> {
        match self {
            RingDescriptor::Series(s) => Some(s),
            _ => None,
        }
    }

    /// Characteristic; 0 for characteristic zero.
    pub fn characteristic(&self) -> u64 {
        match self {
            RingDescriptor::Integers | RingDescriptor::Rationals => 0,
            RingDescriptor::ModPrime(r) => *r,
            RingDescriptor::Quotient(q) => q.base.characteristic(),
            RingDescriptor::Series(s) => s.base.characteristic(),
        }
    }

    /// The prime field underneath a tower, if any.
    pub fn prime_field(&self) -> &RingDescriptor {
        match self {
            RingDescriptor::Quotient(q) => q.base.prime_field(),
            RingDescriptor::Series(s) => s.base.prime_field(),
            other => other,
        }
    }

    pub fn is_field(&self) -> bool {
        match self {
            RingDescriptor::Rationals | RingDescriptor::ModPrime(_) => true,
            RingDescriptor::Integers | RingDescriptor::Series(_) => false,
            RingDescriptor::Quotient(q) => q.field,
        }
    }

    /// Number of coordinates over the prime ring.
    pub fn dimension(&self) -> usize {
        match self {
            RingDescriptor::Quotient(q) => q.degree() * q.base.dimension(),
            RingDescriptor::Series(s) => s.order * s.base.dimension(),
            _ => 1,
        }
    }

    /// Checks that a raw value has the shape and normal form this ring expects.
    pub fn validate(&self, v: &Value) -> Result<()> {
        let bad = || Error::ReductionUndefined(format!("value {v:?} does not belong to {self}"));
        match (self, v) {
            (RingDescriptor::Integers, Value::Int(_)) => Ok(()),
            (RingDescriptor::Rationals, Value::Rat(_)) => Ok(()),
            (RingDescriptor::ModPrime(r), Value::Mod(x)) if x < r => Ok(()),
            (RingDescriptor::Quotient(q), Value::Poly(cs)) if cs.len() == q.degree() => {
                cs.iter().try_for_each(|c| q.base.validate(c))
            }
            (RingDescriptor::Series(s), Value::Poly(cs)) if cs.len() == s.order => {
                cs.iter().try_for_each(|c| s.base.validate(c))
            }
            _ => Err(bad()),
        }
    }

    pub fn zero(&self) -> Value {
        match self {
            RingDescriptor::Integers => Value::Int(BigInt::zero()),
            RingDescriptor::Rationals => Value::Rat(BigRational::zero()),
            RingDescriptor::ModPrime(_) => Value::Mod(0),
            RingDescriptor::Quotient(q) => Value::Poly(vec![q.base.zero(); q.degree()]),
            RingDescriptor::Series(s) => Value::Poly(vec![s.base.zero(); s.order]),
        }
    }

    pub fn one(&self) -> Value {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Value {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Value {
        match self {
            RingDescriptor::Integers => Value::Int(n.clone()),
            RingDescriptor::Rationals => Value::Rat(BigRational::from_integer(n.clone())),
            RingDescriptor::ModPrime(r) => Value::Mod(bigint_mod(n, *r)),
            _ => self.embed_base(self.base().unwrap().from_bigint(n)),
        }
    }

    /// Image of a rational number. Fails when the denominator is not
    /// invertible in the target ring.
    pub fn from_rational(&self, x: &BigRational) -> Result<Value> {
        match self {
            RingDescriptor::Integers => {
                if x.is_integer() {
                    Ok(Value::Int(x.to_integer()))
                } else {
                    Err(Error::ReductionUndefined(format!("{x} is not an integer")))
                }
            }
            RingDescriptor::Rationals => Ok(Value::Rat(x.clone())),
            RingDescriptor::ModPrime(r) => {
                let den = bigint_mod(x.denom(), *r);
                let inv = mod_inv(den, *r).ok_or_else(|| {
                    Error::ReductionUndefined(format!("denominator of {x} vanishes mod {r}"))
                })?;
                Ok(Value::Mod(mod_mul(bigint_mod(x.numer(), *r), inv, *r)))
            }
            _ => Ok(self.embed_base(self.base().unwrap().from_rational(x)?)),
        }
    }

    /// Constant embedding of a base-ring value into a quotient or series ring.
    pub fn embed_base(&self, c: Value) -> Value {
        match self {
            RingDescriptor::Quotient(q) => {
                let mut cs = vec![q.base.zero(); q.degree()];
                cs[0] = c;
                Value::Poly(cs)
            }
            RingDescriptor::Series(s) => {
                let mut cs = vec![s.base.zero(); s.order];
                cs[0] = c;
                Value::Poly(cs)
            }
            _ => panic!("embed_base on a base ring"),
        }
    }

    /// Class of the adjoined variable in a quotient ring (or `s` in a series ring).
    pub fn generator(&self) -> Option<Value> {
        match self {
            RingDescriptor::Quotient(q) => {
                let mut cs = vec![q.base.zero(); q.degree()];
                if q.degree() == 1 {
                    // t ≡ -c0 when the modulus is linear
                    cs[0] = q.base.neg(&q.modulus[0]);
                } else {
                    cs[1] = q.base.one();
                }
                Some(Value::Poly(cs))
            }
            RingDescriptor::Series(s) => {
                let mut cs = vec![s.base.zero(); s.order];
                if s.order > 1 {
                    cs[1] = s.base.one();
                }
                Some(Value::Poly(cs))
            }
            _ => None,
        }
    }

    pub fn is_zero(&self, v: &Value) -> bool {
        match v {
            Value::Int(n) => n.is_zero(),
            Value::Rat(x) => x.is_zero(),
            Value::Mod(x) => *x == 0,
            Value::Poly(cs) => {
                let base = self.base().expect("poly value in base ring");
                cs.iter().all(|c| base.is_zero(c))
            }
        }
    }

    pub fn is_one(&self, v: &Value) -> bool {
        *v == self.one()
    }

    pub fn add(&self, x: &Value, y: &Value) -> Value {
        match (self, x, y) {
            (_, Value::Int(a), Value::Int(b)) => Value::Int(a + b),
            (_, Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            (RingDescriptor::ModPrime(r), Value::Mod(a), Value::Mod(b)) => {
                let s = a + b;
                Value::Mod(if s >= *r { s - r } else { s })
            }
            (_, Value::Poly(a), Value::Poly(b)) => {
                let base = self.base().unwrap();
                Value::Poly(a.iter().zip(b).map(|(c, d)| base.add(c, d)).collect())
            }
            _ => panic!("value shape mismatch in add over {self}"),
        }
    }

    pub fn neg(&self, x: &Value) -> Value {
        match (self, x) {
            (_, Value::Int(a)) => Value::Int(-a),
            (_, Value::Rat(a)) => Value::Rat(-a),
            (RingDescriptor::ModPrime(r), Value::Mod(a)) => {
                Value::Mod(if *a == 0 { 0 } else { r - a })
            }
            (_, Value::Poly(a)) => {
                let base = self.base().unwrap();
                Value::Poly(a.iter().map(|c| base.neg(c)).collect())
            }
            _ => panic!("value shape mismatch in neg over {self}"),
        }
    }

    pub fn sub(&self, x: &Value, y: &Value) -> Value {
        match (self, x, y) {
            (_, Value::Int(a), Value::Int(b)) => Value::Int(a - b),
            (_, Value::Rat(a), Value::Rat(b)) => Value::Rat(a - b),
            (RingDescriptor::ModPrime(r), Value::Mod(a), Value::Mod(b)) => {
                Value::Mod(if a >= b { a - b } else { a + r - b })
            }
            (_, Value::Poly(a), Value::Poly(b)) => {
                let base = self.base().unwrap();
                Value::Poly(a.iter().zip(b).map(|(c, d)| base.sub(c, d)).collect())
            }
            _ => panic!("value shape mismatch in sub over {self}"),
        }
    }

    pub fn mul(&self, x: &Value, y: &Value) -> Value {
        match (self, x, y) {
            (_, Value::Int(a), Value::Int(b)) => Value::Int(a * b),
            (_, Value::Rat(a), Value::Rat(b)) => Value::Rat(a * b),
            (RingDescriptor::ModPrime(r), Value::Mod(a), Value::Mod(b)) => {
                Value::Mod(mod_mul(*a, *b, *r))
            }
            (RingDescriptor::Quotient(q), Value::Poly(a), Value::Poly(b)) => {
                Value::Poly(quotient_mul(q, a, b))
            }
            (RingDescriptor::Series(s), Value::Poly(a), Value::Poly(b)) => {
                Value::Poly(series_mul(&s.base, a, b, s.order))
            }
            _ => panic!("value shape mismatch in mul over {self}"),
        }
    }

    /// Multiplies by an element of the base ring (coordinatewise).
    pub fn scale_base(&self, c: &Value, x: &Value) -> Value {
        match x {
            Value::Poly(xs) => {
                let base = self.base().unwrap();
                Value::Poly(xs.iter().map(|v| base.mul(c, v)).collect())
            }
            _ => panic!("scale_base on a base ring"),
        }
    }

    pub fn pow(&self, x: &Value, mut exp: u64) -> Value {
        let mut acc = self.one();
        let mut base = x.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow_signed(&self, x: &Value, exp: i64) -> Result<Value> {
        if exp >= 0 {
            Ok(self.pow(x, exp as u64))
        } else {
            Ok(self.pow(&self.inv(x)?, exp.unsigned_abs()))
        }
    }

    pub fn inv(&self, x: &Value) -> Result<Value> {
        match (self, x) {
            (RingDescriptor::Integers, Value::Int(a)) => {
                if a.abs().is_one() {
                    Ok(Value::Int(a.clone()))
                } else {
                    Err(Error::NotInvertible)
                }
            }
            (RingDescriptor::Rationals, Value::Rat(a)) => {
                if a.is_zero() {
                    Err(Error::NotInvertible)
                } else {
                    Ok(Value::Rat(a.recip()))
                }
            }
            (RingDescriptor::ModPrime(r), Value::Mod(a)) => {
                mod_inv(*a, *r).map(Value::Mod).ok_or(Error::NotInvertible)
            }
            (RingDescriptor::Quotient(q), Value::Poly(a)) => quotient_inv(self, q, a),
            (RingDescriptor::Series(s), Value::Poly(a)) => series_inv(&s.base, a),
            _ => panic!("value shape mismatch in inv over {self}"),
        }
    }

    pub fn div(&self, x: &Value, y: &Value) -> Result<Value> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    /// Uniform-ish random element with small integer/rational coordinates.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Value {
        match self {
            RingDescriptor::Integers => Value::Int(BigInt::from(rng.gen_range(-bound..=bound))),
            RingDescriptor::Rationals => {
                let n = rng.gen_range(-bound..=bound);
                let d = rng.gen_range(1..=bound.max(1));
                Value::Rat(BigRational::new(n.into(), d.into()))
            }
            RingDescriptor::ModPrime(r) => Value::Mod(rng.gen_range(0..*r)),
            RingDescriptor::Quotient(q) => {
                Value::Poly((0..q.degree()).map(|_| q.base.sample(rng, bound)).collect())
            }
            RingDescriptor::Series(s) => {
                Value::Poly((0..s.order).map(|_| s.base.sample(rng, bound)).collect())
            }
        }
    }
}

fn quotient_mul(q: &QuotientRing, a: &[Value], b: &[Value]) -> Vec<Value> {
    let base = &q.base;
    let d = q.degree();
    let mut prod = vec![base.zero(); 2 * d - 1];
    for (i, x) in a.iter().enumerate() {
        if base.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if base.is_zero(y) {
                continue;
            }
            let t = base.mul(x, y);
            prod[i + j] = base.add(&prod[i + j], &t);
        }
    }
    reduce_poly(q, prod)
}

/// Reduces a dense polynomial (lowest coefficient first) modulo the monic
/// modulus of `q`.
pub(crate) fn reduce_poly(q: &QuotientRing, mut prod: Vec<Value>) -> Vec<Value> {
    let base = &q.base;
    let d = q.degree();
    if prod.len() < d {
        prod.resize(d, base.zero());
        return prod;
    }
    for i in (d..prod.len()).rev() {
        if base.is_zero(&prod[i]) {
            continue;
        }
        let c = prod[i].clone();
        for j in 0..d {
            let t = base.mul(&c, &q.modulus[j]);
            prod[i - d + j] = base.sub(&prod[i - d + j], &t);
        }
        prod[i] = base.zero();
    }
    prod.truncate(d);
    prod
}

fn quotient_inv(ring: &RingDescriptor, q: &QuotientRing, a: &[Value]) -> Result<Value> {
    let base = &q.base;
    let d = q.degree();
    if a.iter().all(|c| base.is_zero(c)) {
        return Err(Error::NotInvertible);
    }
    // Column j holds the coordinates of a * t^j.
    let x = Value::Poly(a.to_vec());
    let t = ring.generator().unwrap();
    let mut cols = Vec::with_capacity(d);
    let mut cur = x;
    for j in 0..d {
        if j > 0 {
            cur = ring.mul(&cur, &t);
        }
        match &cur {
            Value::Poly(cs) => cols.push(cs.clone()),
            _ => unreachable!(),
        }
    }
    let mut rows = vec![base.zero(); d * d];
    for (j, col) in cols.iter().enumerate() {
        for (i, c) in col.iter().enumerate() {
            rows[i * d + j] = c.clone();
        }
    }
    let mut rhs = vec![base.zero(); d];
    rhs[0] = base.one();
    match matrix::solve_square(base, &rows, &rhs) {
        Ok(Some(sol)) => Ok(Value::Poly(sol)),
        Ok(None) | Err(_) => Err(Error::NotInvertible),
    }
}

pub(crate) fn series_mul(base: &RingDescriptor, a: &[Value], b: &[Value], order: usize) -> Vec<Value> {
    let mut out = vec![base.zero(); order];
    for (i, x) in a.iter().enumerate().take(order) {
        if base.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order - i) {
            if base.is_zero(y) {
                continue;
            }
            let t = base.mul(x, y);
            out[i + j] = base.add(&out[i + j], &t);
        }
    }
    out
}

fn series_inv(base: &RingDescriptor, a: &[Value]) -> Result<Value> {
    let c0_inv = base.inv(&a[0])?;
    let mut out: Vec<Value> = Vec::with_capacity(a.len());
    out.push(c0_inv.clone());
    for n in 1..a.len() {
        let mut acc = base.zero();
        for i in 1..=n {
            let t = base.mul(&a[i], &out[n - i]);
            acc = base.add(&acc, &t);
        }
        out.push(base.neg(&base.mul(&c0_inv, &acc)));
    }
    Ok(Value::Poly(out))
}

/// Irreducibility for generic quotients: decidable here only for linear
/// moduli over a field and for degree 2 or 3 over `Z_r` (root search).
fn generic_quotient_is_field(base: &RingDescriptor, modulus: &[Value]) -> bool {
    let deg = modulus.len().saturating_sub(1);
    if !base.is_field() || deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    match base {
        RingDescriptor::ModPrime(r) if deg <= 3 => {
            let coeffs: Vec<u64> = modulus
                .iter()
                .map(|v| match v {
                    Value::Mod(x) => *x,
                    _ => unreachable!(),
                })
                .collect();
            !(0..*r).any(|t| eval_mod_poly(&coeffs, t, *r) == 0)
        }
        _ => false,
    }
}

pub(crate) fn eval_mod_poly(coeffs: &[u64], t: u64, r: u64) -> u64 {
    coeffs
        .iter()
        .rev()
        .fold(0u64, |acc, &c| (mod_mul(acc, t, r) + c) % r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_odd_prime(3));
        assert!(is_odd_prime(13));
        assert!(!is_odd_prime(2));
        assert!(!is_odd_prime(1));
        assert!(!is_odd_prime(91));
        assert!(RingDescriptor::mod_prime(15).is_err());
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(mod_inv(3, 13), Some(9));
        assert_eq!(mod_inv(0, 13), None);
        assert_eq!(mod_pow(3, 3, 13), 1);
        assert_eq!(bigint_mod(&BigInt::from(-1), 13), 12);
    }

    #[test]
    fn mul_mod_13() {
        let z13 = RingDescriptor::mod_prime(13).unwrap();
        assert_eq!(z13.mul(&Value::Mod(7), &Value::Mod(8)), Value::Mod(4));
    }

    #[test]
    fn rational_reduction_mod_r() {
        let z7 = RingDescriptor::mod_prime(7).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(z7.from_rational(&half).unwrap(), Value::Mod(4));
        let seventh = BigRational::new(1.into(), 7.into());
        assert!(matches!(
            z7.from_rational(&seventh),
            Err(Error::ReductionUndefined(_))
        ));
    }

    #[test]
    fn quotient_validation() {
        let q = RingDescriptor::Rationals;
        let two = q.from_i64(2);
        assert!(RingDescriptor::quotient(q.clone(), vec![two.clone()], "t").is_err());
        assert!(RingDescriptor::quotient(q.clone(), vec![q.one(), two], "t").is_err());
        let ok = RingDescriptor::quotient(q.clone(), vec![q.from_i64(-2), q.zero(), q.one()], "t");
        assert!(ok.is_ok());
    }

    #[test]
    fn depth_is_capped() {
        let mut r = RingDescriptor::Rationals;
        for _ in 0..MAX_DEPTH {
            r = RingDescriptor::series(r, 2).unwrap();
        }
        assert!(RingDescriptor::series(r, 2).is_err());
    }

    #[test]
    fn integer_units() {
        let z = RingDescriptor::Integers;
        assert_eq!(z.inv(&z.from_i64(-1)).unwrap(), z.from_i64(-1));
        assert_eq!(z.inv(&z.from_i64(2)), Err(Error::NotInvertible));
    }
}
