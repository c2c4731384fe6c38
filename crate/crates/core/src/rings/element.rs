use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::descriptor::{RingDescriptor, Value};
use crate::error::{Error, Result};

/// An exact value tagged with the ring it lives in.
///
/// The operator impls panic when the operands live in different rings; the
/// `checked_*` methods and [`ring_arith`] report [`Error::DescriptorMismatch`]
/// instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    ring: RingDescriptor,
    value: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
    Pow(u64),
    Inv,
}

impl RingElement {
    pub fn new(ring: RingDescriptor, value: Value) -> Result<Self> {
        ring.validate(&value)?;
        Ok(RingElement { ring, value })
    }

    pub(crate) fn from_parts(ring: RingDescriptor, value: Value) -> Self {
        debug_assert!(ring.validate(&value).is_ok());
        RingElement { ring, value }
    }

    pub fn zero(ring: &RingDescriptor) -> Self {
        RingElement { value: ring.zero(), ring: ring.clone() }
    }

    pub fn one(ring: &RingDescriptor) -> Self {
        RingElement { value: ring.one(), ring: ring.clone() }
    }

    pub fn from_i64(ring: &RingDescriptor, n: i64) -> Self {
        RingElement { value: ring.from_i64(n), ring: ring.clone() }
    }

    pub fn from_bigint(ring: &RingDescriptor, n: &BigInt) -> Self {
        RingElement { value: ring.from_bigint(n), ring: ring.clone() }
    }

    pub fn from_rational(ring: &RingDescriptor, x: &BigRational) -> Result<Self> {
        Ok(RingElement { value: ring.from_rational(x)?, ring: ring.clone() })
    }

    /// Class of the adjoined variable of a quotient ring, or `s` of a series ring.
    pub fn generator(ring: &RingDescriptor) -> Option<Self> {
        ring.generator().map(|value| RingElement { value, ring: ring.clone() })
    }

    /// Parses canonical text (see [`super::text`]).
    pub fn parse(ring: &RingDescriptor, text: &str) -> Result<Self> {
        let value = super::text::parse(ring, text)?;
        Ok(RingElement { value, ring: ring.clone() })
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn into_value(self) -> Value {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.value)
    }

    pub fn is_one(&self) -> bool {
        self.ring.is_one(&self.value)
    }

    /// Coordinates over the immediate base ring for quotient and series rings.
    pub fn coordinates(&self) -> Option<Vec<RingElement>> {
        let base = self.ring.base()?;
        match &self.value {
            Value::Poly(cs) => Some(
                cs.iter()
                    .map(|c| RingElement { ring: base.clone(), value: c.clone() })
                    .collect(),
            ),
            _ => None,
        }
    }

    /// Builds an element of a quotient or series ring from base coordinates.
    pub fn from_coordinates(ring: &RingDescriptor, coords: &[RingElement]) -> Result<Self> {
        let base = ring.base().ok_or(Error::DescriptorMismatch)?;
        if coords.iter().any(|c| c.ring != *base) {
            return Err(Error::DescriptorMismatch);
        }
        RingElement::new(ring.clone(), Value::Poly(coords.iter().map(|c| c.value.clone()).collect()))
    }

    /// Rational value if the element is a constant in a characteristic-zero tower.
    pub fn as_rational(&self) -> Option<BigRational> {
        match (&self.ring, &self.value) {
            (RingDescriptor::Integers, Value::Int(n)) => Some(BigRational::from_integer(n.clone())),
            (RingDescriptor::Rationals, Value::Rat(x)) => Some(x.clone()),
            (_, Value::Poly(_)) => {
                let cs = self.coordinates()?;
                if cs[1..].iter().all(|c| c.is_zero()) {
                    cs[0].as_rational()
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Residue if the element is a constant over `Z_r`.
    pub fn as_residue(&self) -> Option<u64> {
        match &self.value {
            Value::Mod(x) => Some(*x),
            Value::Poly(_) => {
                let cs = self.coordinates()?;
                if cs[1..].iter().all(|c| c.is_zero()) {
                    cs[0].as_residue()
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Embeds an element of the immediate base ring as a constant.
    pub fn embed(ring: &RingDescriptor, c: &RingElement) -> Result<Self> {
        match ring.base() {
            Some(b) if *b == c.ring => Ok(RingElement { value: ring.embed_base(c.value.clone()), ring: ring.clone() }),
            _ => Err(Error::DescriptorMismatch),
        }
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.with(self.ring.add(&self.value, &other.value)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.with(self.ring.sub(&self.value, &other.value)))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.with(self.ring.mul(&self.value, &other.value)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.with(self.ring.div(&self.value, &other.value)?))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.with(self.ring.inv(&self.value)?))
    }

    pub fn pow(&self, exp: u64) -> Self {
        self.with(self.ring.pow(&self.value, exp))
    }

    pub fn pow_signed(&self, exp: i64) -> Result<Self> {
        Ok(self.with(self.ring.pow_signed(&self.value, exp)?))
    }

    pub fn scale_i64(&self, n: i64) -> Self {
        self.with(self.ring.mul(&self.ring.from_i64(n), &self.value))
    }

    fn with(&self, value: Value) -> Self {
        RingElement { ring: self.ring.clone(), value }
    }
}

/// Single entry point for the six primitive operations.
pub fn ring_arith(op: ArithOp, x: &RingElement, y: Option<&RingElement>) -> Result<RingElement> {
    let need_y = || y.ok_or_else(|| Error::InvalidParams("binary operation needs two operands".into()));
    match op {
        ArithOp::Add => x.checked_add(need_y()?),
        ArithOp::Sub => x.checked_sub(need_y()?),
        ArithOp::Mul => x.checked_mul(need_y()?),
        ArithOp::Neg => Ok(-x),
        ArithOp::Pow(e) => Ok(x.pow(e)),
        ArithOp::Inv => x.inv(),
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::render(&self.ring, &self.value))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&RingElement> for &RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &RingElement) -> RingElement {
                self.$checked(rhs).expect("ring descriptor mismatch")
            }
        }
        impl $trait<RingElement> for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                (&self).$checked(&rhs).expect("ring descriptor mismatch")
            }
        }
        impl $trait<&RingElement> for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &RingElement) -> RingElement {
                (&self).$checked(rhs).expect("ring descriptor mismatch")
            }
        }
        impl $trait<RingElement> for &RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                self.$checked(&rhs).expect("ring descriptor mismatch")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.with(self.ring.neg(&self.value))
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_two_in_q() {
        let q = RingDescriptor::Rationals;
        let two = RingElement::from_i64(&q, 2);
        let half = ring_arith(ArithOp::Inv, &two, None).unwrap();
        assert_eq!(half.to_string(), "1/2");
    }

    #[test]
    fn seven_times_eight_mod_13() {
        let z = RingDescriptor::mod_prime(13).unwrap();
        let a = RingElement::from_i64(&z, 7);
        let b = RingElement::from_i64(&z, 8);
        assert_eq!(ring_arith(ArithOp::Mul, &a, Some(&b)).unwrap(), RingElement::from_i64(&z, 4));
    }

    #[test]
    fn mismatch_is_reported() {
        let a = RingElement::from_i64(&RingDescriptor::Rationals, 1);
        let b = RingElement::from_i64(&RingDescriptor::mod_prime(5).unwrap(), 1);
        assert_eq!(a.checked_add(&b), Err(Error::DescriptorMismatch));
        assert_eq!(ring_arith(ArithOp::Add, &a, None).unwrap_err(), Error::InvalidParams("binary operation needs two operands".into()));
    }

    #[test]
    fn zero_is_not_invertible() {
        let z = RingDescriptor::mod_prime(13).unwrap();
        assert_eq!(RingElement::zero(&z).inv(), Err(Error::NotInvertible));
    }

    #[test]
    fn negative_powers() {
        let z = RingDescriptor::mod_prime(13).unwrap();
        let three = RingElement::from_i64(&z, 3);
        assert_eq!(three.pow_signed(-1).unwrap(), RingElement::from_i64(&z, 9));
        assert_eq!(three.pow(3), RingElement::one(&z));
    }
}
