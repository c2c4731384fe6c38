//! Horadam sequences `w_{k+1} = p w_k + q w_{k-1}`, the (p,q)-Fibonacci and
//! (p,q)-Lucas specializations, and exact Binet evaluation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rings::{adjoin_quadratic, RingDescriptor, RingElement};

/// Largest |k| accepted by the sequence and Binet evaluators.
pub const MAX_INDEX: i64 = 10_000;

/// Seeds and recurrence coefficients. Construction enforces Δ = p²+4q > 0
/// and q ≠ 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HoradamParams {
    a0: i64,
    a1: i64,
    p: i64,
    q: i64,
}

impl HoradamParams {
    pub fn new(a0: i64, a1: i64, p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidParams("q must be nonzero".into()));
        }
        let delta = p as i128 * p as i128 + 4 * q as i128;
        if delta <= 0 {
            return Err(Error::InvalidParams(format!("p^2+4q = {delta} must be positive")));
        }
        Ok(HoradamParams { a0, a1, p, q })
    }

    /// Ordinary Fibonacci numbers (0, 1, 1, 1).
    pub fn fibonacci() -> Self {
        HoradamParams { a0: 0, a1: 1, p: 1, q: 1 }
    }

    /// The (p,q)-Fibonacci sequence sharing this recurrence.
    pub fn pq_fibonacci(&self) -> Self {
        HoradamParams { a0: 0, a1: 1, ..*self }
    }

    /// The (p,q)-Lucas sequence sharing this recurrence.
    pub fn pq_lucas(&self) -> Self {
        HoradamParams { a0: 2, a1: self.p, ..*self }
    }

    pub fn a0(&self) -> i64 {
        self.a0
    }

    pub fn a1(&self) -> i64 {
        self.a1
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn delta(&self) -> BigInt {
        BigInt::from(self.p) * self.p + BigInt::from(self.q) * 4
    }

    /// `q a0² + p a0 a1 − a1²`, the constant in the Cassini-type relations.
    pub fn cassini_constant(&self) -> BigInt {
        let (a0, a1, p, q) = (BigInt::from(self.a0), BigInt::from(self.a1), BigInt::from(self.p), BigInt::from(self.q));
        &q * &a0 * &a0 + &p * &a0 * &a1 - &a1 * &a1
    }
}

impl std::fmt::Display for HoradamParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{},{})", self.a0, self.a1, self.p, self.q)
    }
}

/// Parses `a0,a1,p,q`.
impl std::str::FromStr for HoradamParams {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!("expected four comma-separated integers a0,a1,p,q, got {s:?}")));
        }
        let mut v = [0i64; 4];
        for (slot, part) in v.iter_mut().zip(&parts) {
            *slot = part.parse().map_err(|_| Error::Parse(format!("{part:?} is not an integer")))?;
        }
        HoradamParams::new(v[0], v[1], v[2], v[3])
    }
}

/// Consecutive terms `w_lo ..= w_hi` as exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceWindow {
    lo: i64,
    hi: i64,
    values: Vec<BigRational>,
}

impl SequenceWindow {
    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn get(&self, k: i64) -> Option<&BigRational> {
        if k < self.lo || k > self.hi {
            None
        } else {
            Some(&self.values[(k - self.lo) as usize])
        }
    }

    /// Like [`get`](Self::get) but panics outside the window.
    pub fn at(&self, k: i64) -> &BigRational {
        self.get(k)
            .unwrap_or_else(|| panic!("index {k} outside window [{}, {}]", self.lo, self.hi))
    }
}

fn check_index(k: i64) -> Result<()> {
    if k.abs() > MAX_INDEX {
        Err(Error::IndexOutOfRange(format!("|{k}| exceeds {MAX_INDEX}")))
    } else {
        Ok(())
    }
}

/// Terms `w_lo ..= w_hi`. Negative indices use `w_{k-1} = (w_{k+1} − p w_k)/q`.
pub fn generate_window(params: &HoradamParams, lo: i64, hi: i64) -> Result<SequenceWindow> {
    if lo > hi {
        return Err(Error::InvalidParams(format!("empty window [{lo}, {hi}]")));
    }
    check_index(lo)?;
    check_index(hi)?;
    let p = BigInt::from(params.p);
    let q = BigInt::from(params.q);
    let start = lo.min(0);
    let end = hi.max(1);
    let mut all = vec![BigRational::zero(); (end - start + 1) as usize];
    let off = (-start) as usize;
    let (mut x, mut y) = (BigInt::from(params.a0), BigInt::from(params.a1));
    for slot in &mut all[off..] {
        let next = &p * &y + &q * &x;
        *slot = BigRational::from_integer(std::mem::replace(&mut x, std::mem::replace(&mut y, next)));
    }
    // q^j w_{-j} stays integral: u_{j+1} = q u_{j-1} - p u_j.
    let (mut u0, mut u1) = (BigInt::from(params.a0), BigInt::from(params.a1) - &p * BigInt::from(params.a0));
    let mut qj = BigInt::from(1);
    for i in (0..off).rev() {
        qj *= &q;
        all[i] = BigRational::new(u1.clone(), qj.clone());
        let next = &q * &u0 - &p * &u1;
        u0 = std::mem::replace(&mut u1, next);
    }
    let values = all[(lo - start) as usize..=(hi - start) as usize].to_vec();
    Ok(SequenceWindow { lo, hi, values })
}

/// Characteristic roots and Binet constants in a ring containing √Δ.
#[derive(Clone, Debug)]
pub struct BinetContext {
    params: HoradamParams,
    ring: RingDescriptor,
    alpha: RingElement,
    beta: RingElement,
    alpha_inv: RingElement,
    beta_inv: RingElement,
    a: RingElement,
    b: RingElement,
    sqrt_delta: RingElement,
    sqrt_delta_inv: RingElement,
}

/// Binet context over `Q(√Δ)`.
pub fn binet_context(params: &HoradamParams) -> Result<BinetContext> {
    BinetContext::over(&RingDescriptor::Rationals, params)
}

impl BinetContext {
    /// Adjoins √Δ to `base` (a characteristic-zero field or tower over Q) and
    /// builds α, β, A, B there.
    pub fn over(base: &RingDescriptor, params: &HoradamParams) -> Result<Self> {
        let delta = params.delta();
        let (ring, v) = adjoin_quadratic(base, &delta)?;
        Self::with_sqrt(ring, v, params)
    }

    /// Uses an existing ring and a given square root of Δ in it.
    pub fn with_sqrt(ring: RingDescriptor, v: RingElement, params: &HoradamParams) -> Result<Self> {
        if v.ring() != &ring {
            return Err(Error::DescriptorMismatch);
        }
        let delta = RingElement::from_bigint(&ring, &params.delta());
        if &v * &v != delta {
            return Err(Error::InvalidParams("v does not square to p^2+4q".into()));
        }
        let half = RingElement::from_rational(&ring, &BigRational::new(BigInt::one(), BigInt::from(2)))?;
        let p = RingElement::from_i64(&ring, params.p);
        let alpha = (&p + &v) * &half;
        let beta = (&p - &v) * &half;
        let a0 = RingElement::from_i64(&ring, params.a0);
        let a1 = RingElement::from_i64(&ring, params.a1);
        let a = &a1 - &(&a0 * &beta);
        let b = &a1 - &(&a0 * &alpha);
        // αβ = −q, so α⁻¹ = −β/q and β⁻¹ = −α/q
        let neg_q_inv = RingElement::from_rational(&ring, &BigRational::new(BigInt::from(-1), BigInt::from(params.q)))?;
        let alpha_inv = &beta * &neg_q_inv;
        let beta_inv = &alpha * &neg_q_inv;
        let delta_inv = RingElement::from_rational(&ring, &BigRational::new(BigInt::one(), params.delta()))?;
        let sqrt_delta_inv = &v * &delta_inv;
        Ok(BinetContext { params: *params, ring, alpha, beta, alpha_inv, beta_inv, a, b, sqrt_delta: v, sqrt_delta_inv })
    }

    pub fn params(&self) -> &HoradamParams {
        &self.params
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn alpha(&self) -> &RingElement {
        &self.alpha
    }

    pub fn beta(&self) -> &RingElement {
        &self.beta
    }

    pub fn a(&self) -> &RingElement {
        &self.a
    }

    pub fn b(&self) -> &RingElement {
        &self.b
    }

    pub fn sqrt_delta(&self) -> &RingElement {
        &self.sqrt_delta
    }

    /// (α − β)⁻¹ = √Δ / Δ.
    pub fn sqrt_delta_inv(&self) -> &RingElement {
        &self.sqrt_delta_inv
    }

    /// α^k for any integer k.
    pub fn alpha_pow(&self, k: i64) -> RingElement {
        if k >= 0 {
            self.alpha.pow(k as u64)
        } else {
            self.alpha_inv.pow(k.unsigned_abs())
        }
    }

    /// β^k for any integer k.
    pub fn beta_pow(&self, k: i64) -> RingElement {
        if k >= 0 {
            self.beta.pow(k as u64)
        } else {
            self.beta_inv.pow(k.unsigned_abs())
        }
    }

    /// (p,q)-Lucas number α^k + β^k.
    pub fn lucas(&self, k: i64) -> RingElement {
        self.alpha_pow(k) + self.beta_pow(k)
    }
}

/// `(A α^k − B β^k)/(α − β)`; negative k is allowed.
pub fn binet_eval(ctx: &BinetContext, k: i64) -> Result<RingElement> {
    check_index(k)?;
    let num = &ctx.a * &ctx.alpha_pow(k) - &ctx.b * &ctx.beta_pow(k);
    Ok(num * &ctx.sqrt_delta_inv)
}

/// `(F_{p,q,k}, L_{p,q,k})` from the recurrences, cross-checked against Binet.
pub fn pq_sequences(p: i64, q: i64, k: i64) -> Result<(BigInt, BigInt)> {
    if k < 0 {
        return Err(Error::IndexOutOfRange(format!("k = {k} must be nonnegative")));
    }
    let params = HoradamParams::new(0, 1, p, q)?;
    let f = generate_window(&params.pq_fibonacci(), k, k)?.at(k).to_integer();
    let l = generate_window(&params.pq_lucas(), k, k)?.at(k).to_integer();
    let ctx = binet_context(&params)?;
    let fb = binet_eval(&ctx, k)?.as_rational();
    let lb = ctx.lucas(k).as_rational();
    if fb != Some(BigRational::from_integer(f.clone())) || lb != Some(BigRational::from_integer(l.clone())) {
        return Err(Error::Inconsistent(format!("Binet disagrees with the recurrence at k={k}")));
    }
    Ok((f, l))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(w: &SequenceWindow) -> Vec<i64> {
        w.values().iter().map(|x| i64::try_from(x.to_integer()).unwrap()).collect()
    }

    #[test]
    fn fibonacci_window() {
        let w = generate_window(&HoradamParams::fibonacci(), 0, 10).unwrap();
        assert_eq!(ints(&w), vec![0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]);
        let back = generate_window(&HoradamParams::fibonacci(), -1, -1).unwrap();
        assert_eq!(back.at(-1), &BigRational::one());
    }

    #[test]
    fn seeds_are_returned_verbatim() {
        let p = HoradamParams::new(-3, 7, 2, 5).unwrap();
        let w = generate_window(&p, 0, 1).unwrap();
        assert_eq!(ints(&w), vec![-3, 7]);
    }

    #[test]
    fn backward_values_can_be_fractions() {
        let p = HoradamParams::new(0, 1, 1, 2).unwrap();
        let w = generate_window(&p, -2, 0).unwrap();
        // w_{-1} = (1 - 0)/2, w_{-2} = (0 - 1/2)/2
        assert_eq!(w.at(-1), &BigRational::new(1.into(), 2.into()));
        assert_eq!(w.at(-2), &BigRational::new((-1).into(), 4.into()));
    }

    #[test]
    fn params_validation() {
        assert!(HoradamParams::new(0, 1, 1, 0).is_err());
        assert!(HoradamParams::new(0, 1, 1, -1).is_err());
        assert!(HoradamParams::new(0, 1, 2, -1).is_err());
        assert!(HoradamParams::new(0, 1, 3, -2).is_ok());
        assert!(generate_window(&HoradamParams::fibonacci(), 3, 2).is_err());
        assert!(generate_window(&HoradamParams::fibonacci(), 0, MAX_INDEX + 1).is_err());
    }

    #[test]
    fn params_from_text() {
        assert_eq!("0,1,1,1".parse::<HoradamParams>().unwrap(), HoradamParams::fibonacci());
        assert_eq!(" 2, 1 ,1,1".parse::<HoradamParams>().unwrap(), HoradamParams::new(2, 1, 1, 1).unwrap());
        assert!("0,1,1".parse::<HoradamParams>().is_err());
        assert!("0,1,x,1".parse::<HoradamParams>().is_err());
        assert!("0,1,1,0".parse::<HoradamParams>().is_err());
    }

    #[test]
    fn binet_fibonacci_context() {
        let ctx = binet_context(&HoradamParams::fibonacci()).unwrap();
        let one = RingElement::from_i64(ctx.ring(), 1);
        assert_eq!(ctx.alpha() + ctx.beta(), one);
        assert_eq!(ctx.alpha() * ctx.beta(), -one.clone());
        assert_eq!(ctx.a(), &one);
        assert_eq!(ctx.b(), &one);
        assert_eq!(binet_eval(&ctx, 5).unwrap().as_rational(), Some(BigRational::from_integer(5.into())));
    }

    #[test]
    fn binet_ab_product() {
        let p = HoradamParams::new(2, 1, 1, 1).unwrap();
        let ctx = binet_context(&p).unwrap();
        assert_eq!((ctx.a() * ctx.b()).as_rational(), Some(BigRational::from_integer((-5).into())));
        assert_eq!(binet_eval(&ctx, 0).unwrap().as_rational(), Some(BigRational::from_integer(2.into())));
        assert_eq!(binet_eval(&ctx, 4).unwrap().as_rational(), Some(BigRational::from_integer(7.into())));
    }

    #[test]
    fn pq_examples() {
        assert_eq!(pq_sequences(1, 1, 6).unwrap(), (8.into(), 18.into()));
        assert_eq!(pq_sequences(3, 2, 0).unwrap(), (0.into(), 2.into()));
        assert_eq!(pq_sequences(2, 1, 3).unwrap(), (5.into(), 14.into()));
    }

    #[test]
    fn cassini_constant_matches_ab() {
        let p = HoradamParams::new(2, 1, 1, 1).unwrap();
        // AB = a1² − a0 a1 p − a0² q = −(q a0² + p a0 a1 − a1²)
        assert_eq!(p.cassini_constant(), BigInt::from(5));
    }
}
