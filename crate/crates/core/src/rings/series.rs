//! Truncated power series helpers.

use super::descriptor::{series_mul, RingDescriptor, Value};
use super::element::RingElement;
use crate::error::{Error, Result};

/// Cauchy product of two series truncated to `order` coefficients.
pub fn series_mul_truncate(order: usize, f: &RingElement, g: &RingElement) -> Result<RingElement> {
    if f.ring() != g.ring() {
        return Err(Error::DescriptorMismatch);
    }
    let s = f.ring().as_series().ok_or(Error::DescriptorMismatch)?;
    if s.order() != order {
        return Err(Error::DescriptorMismatch);
    }
    match (f.value(), g.value()) {
        (Value::Poly(a), Value::Poly(b)) => Ok(RingElement::from_parts(
            f.ring().clone(),
            Value::Poly(series_mul(s.base(), a, b, order)),
        )),
        _ => unreachable!("series values are coefficient lists"),
    }
}

/// Series with the given leading coefficients; missing ones are zero and
/// extra ones are dropped.
pub fn series_from_coeffs(ring: &RingDescriptor, coeffs: &[RingElement]) -> Result<RingElement> {
    let s = ring.as_series().ok_or(Error::DescriptorMismatch)?;
    let mut vals = vec![s.base().zero(); s.order()];
    for (slot, c) in vals.iter_mut().zip(coeffs) {
        if c.ring() != s.base() {
            return Err(Error::DescriptorMismatch);
        }
        *slot = c.value().clone();
    }
    RingElement::new(ring.clone(), Value::Poly(vals))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_series(order: usize, cs: &[i64]) -> RingElement {
        let ring = RingDescriptor::series(RingDescriptor::Rationals, order).unwrap();
        let base = RingDescriptor::Rationals;
        let coeffs: Vec<_> = cs.iter().map(|&c| RingElement::from_i64(&base, c)).collect();
        series_from_coeffs(&ring, &coeffs).unwrap()
    }

    #[test]
    fn one_plus_s_times_one_minus_s() {
        let p = series_mul_truncate(3, &q_series(3, &[1, 1]), &q_series(3, &[1, -1])).unwrap();
        assert_eq!(p, q_series(3, &[1, 0, -1]));
        assert_eq!(p.to_string(), "1-s^2 (mod s^3)");
    }

    #[test]
    fn geometric_series() {
        let p = series_mul_truncate(5, &q_series(5, &[1, 1, 1, 1, 1]), &q_series(5, &[1, -1])).unwrap();
        assert!(p.is_one());
    }

    #[test]
    fn fibonacci_numerator() {
        let p = series_mul_truncate(8, &q_series(8, &[0, 1, 1, 2, 3, 5, 8, 13]), &q_series(8, &[1, -1, -1])).unwrap();
        assert_eq!(p, q_series(8, &[0, 1]));
    }

    #[test]
    fn order_mismatch() {
        let f = q_series(3, &[1]);
        assert_eq!(series_mul_truncate(4, &f, &f), Err(Error::DescriptorMismatch));
        assert_eq!(series_mul_truncate(3, &f, &q_series(4, &[1])), Err(Error::DescriptorMismatch));
    }

    #[test]
    fn series_inverse() {
        let f = q_series(6, &[1, -1, -1]);
        let inv = f.inv().unwrap();
        assert_eq!(inv, q_series(6, &[1, 1, 2, 3, 5, 8]));
    }
}
