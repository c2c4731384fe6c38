//! Adjoining roots of unity and square roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::descriptor::{bigint_mod, eval_mod_poly, mod_inv, mod_mul, mod_pow, QuotientKind, RingDescriptor, Value};
use super::element::RingElement;
use super::poly::{cyclotomic_polynomial, euler_phi};
use crate::error::{Error, Result};

/// Upper bound on candidate polynomials examined when searching for an
/// irreducible factor of Φ_N over `Z_r`.
const FACTOR_SEARCH_LIMIT: u128 = 200_000;

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative order of `x` modulo `r`, assuming gcd(x, r) = 1.
pub fn multiplicative_order(x: u64, r: u64) -> u64 {
    let mut k = 1;
    let mut acc = x % r;
    while acc != 1 {
        acc = mod_mul(acc, x, r);
        k += 1;
    }
    k
}

/// Smallest element of `Z_r` with multiplicative order exactly `n`.
fn smallest_root_of_order(r: u64, n: u64) -> Option<u64> {
    let primes = prime_factors(n);
    (1..r).find(|&g| mod_pow(g, n, r) == 1 && primes.iter().all(|&p| mod_pow(g, n / p, r) != 1))
}

fn poly_rem_mod(num: &[u64], den: &[u64], r: u64) -> Vec<u64> {
    // den is monic
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    while rem.len() > dn {
        let c = *rem.last().unwrap();
        let off = rem.len() - 1 - dn;
        if c != 0 {
            for (j, d) in den.iter().enumerate() {
                let t = mod_mul(c, *d, r);
                rem[off + j] = (rem[off + j] + r - t) % r;
            }
        }
        rem.pop();
    }
    rem
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    if a.is_empty() {
        a.push(0);
    }
    a
}

fn make_monic(a: Vec<u64>, r: u64) -> Vec<u64> {
    let a = trim(a);
    let lead = *a.last().unwrap();
    if lead == 0 || lead == 1 {
        return a;
    }
    let inv = mod_inv(lead, r).expect("nonzero residue");
    a.into_iter().map(|c| mod_mul(c, inv, r)).collect()
}

fn poly_mul_mod(a: &[u64], b: &[u64], m: &[u64], r: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mod_mul(x, y, r)) % r;
        }
    }
    trim(poly_rem_mod(&out, m, r))
}

fn poly_pow_mod(a: &[u64], mut e: u128, m: &[u64], r: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut base = trim(poly_rem_mod(a, m, r));
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &base, m, r);
        }
        e >>= 1;
        if e > 0 {
            base = poly_mul_mod(&base, &base, m, r);
        }
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], r: u64) -> Vec<u64> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !(y.len() == 1 && y[0] == 0) {
        let my = make_monic(y.clone(), r);
        let rem = trim(poly_rem_mod(&x, &my, r));
        x = my;
        y = rem;
    }
    make_monic(x, r)
}

fn poly_div_exact(num: &[u64], den: &[u64], r: u64) -> Vec<u64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0u64; num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, d) in den.iter().enumerate() {
                rem[i + j] = (rem[i + j] + r - mod_mul(c, *d, r)) % r;
            }
        }
    }
    quot
}

/// Equal-degree splitting: `g` is a product of irreducibles of degree `f`.
/// Returns one irreducible factor.
fn split_equal_degree(g: Vec<u64>, f: usize, r: u64) -> Result<Vec<u64>> {
    let mut g = g;
    let exp = ((r as u128).pow(f as u32) - 1) / 2;
    'outer: while g.len() - 1 > f {
        for deg in 1..g.len() - 1 {
            for c in 0..r {
                let mut a = vec![0u64; deg + 1];
                a[0] = c;
                a[deg] = 1;
                if deg > 1 {
                    a[1] = 1;
                }
                let mut h = poly_pow_mod(&a, exp, &g, r);
                h[0] = (h[0] + r - 1) % r;
                let d = poly_gcd(&g, &h, r);
                let dd = d.len() - 1;
                if dd > 0 && dd < g.len() - 1 {
                    let other = poly_div_exact(&g, &d, r);
                    g = if dd <= other.len() - 1 { d } else { make_monic(other, r) };
                    continue 'outer;
                }
            }
        }
        return Err(Error::Inconsistent(format!("could not split a cyclotomic factor mod {r}")));
    }
    Ok(g)
}

/// Finds a monic degree-`f` divisor of `phi` over `Z_r`: by enumeration when
/// the search space is small, otherwise by equal-degree splitting.
fn find_factor(phi: &[u64], f: usize, r: u64) -> Result<Vec<u64>> {
    let count = (r as u128).checked_pow(f as u32).unwrap_or(u128::MAX);
    if count > FACTOR_SEARCH_LIMIT {
        return split_equal_degree(phi.to_vec(), f, r);
    }
    for idx in 0..count as u64 {
        let mut g = Vec::with_capacity(f + 1);
        let mut k = idx;
        for _ in 0..f {
            g.push(k % r);
            k /= r;
        }
        g.push(1);
        if g[0] == 0 {
            continue;
        }
        if poly_rem_mod(phi, &g, r).iter().all(|&c| c == 0) {
            return Ok(g);
        }
    }
    Err(Error::Inconsistent(format!("no degree-{f} factor of the cyclotomic polynomial mod {r}")))
}

/// Adjoins a primitive `n`-th root of unity to `Q` or `Z_r`.
///
/// Over `Z_r`, when `n | r-1`, the smallest element of order `n` is returned
/// and the ring is unchanged. Otherwise the ring is extended by an
/// irreducible factor of Φ_n mod r.
pub fn adjoin_primitive_root(base: &RingDescriptor, n: u64) -> Result<(RingDescriptor, RingElement)> {
    if n == 0 {
        return Err(Error::InvalidParams("root-of-unity order must be positive".into()));
    }
    let phi = cyclotomic_polynomial(n);
    match base {
        RingDescriptor::Rationals => {
            let modulus = phi.iter().map(|c| base.from_bigint(c)).collect();
            let ring = RingDescriptor::quotient_with(base.clone(), modulus, "t", QuotientKind::Cyclotomic(n), true)?;
            let eps = RingElement::generator(&ring).unwrap();
            Ok((ring, eps))
        }
        RingDescriptor::ModPrime(r) => {
            let r = *r;
            if n % r == 0 {
                return Err(Error::CharDividesN { r, n });
            }
            if (r - 1) % n == 0 {
                let g = smallest_root_of_order(r, n).expect("cyclic group contains an element of every order dividing r-1");
                return Ok((base.clone(), RingElement::from_i64(base, g as i64)));
            }
            let f = multiplicative_order(r % n, n) as usize;
            let phi_mod: Vec<u64> = phi.iter().map(|c| bigint_mod(c, r)).collect();
            let g = if f as u64 == euler_phi(n) { phi_mod } else { find_factor(&phi_mod, f, r)? };
            let modulus = g.iter().map(|&c| Value::Mod(c)).collect();
            let ring = RingDescriptor::quotient_with(base.clone(), modulus, "t", QuotientKind::Cyclotomic(n), true)?;
            let eps = RingElement::generator(&ring).unwrap();
            Ok((ring, eps))
        }
        _ => Err(Error::Unsupported(format!("adjoining a root of unity to {base}"))),
    }
}

/// Legendre symbol (a/r) for an odd prime r: 1, -1, or 0.
pub fn legendre(a: &BigInt, r: u64) -> i32 {
    let x = bigint_mod(a, r);
    if x == 0 {
        return 0;
    }
    if mod_pow(x, (r - 1) / 2, r) == 1 {
        1
    } else {
        -1
    }
}

/// Signed squarefree part of a nonzero integer.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut out = BigInt::from(sign);
    let mut p = BigInt::from(2);
    let limit = BigInt::from(1_000_000);
    while &p * &p <= m && p < limit {
        let mut e = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &p;
        }
        p += 1;
    }
    if m > BigInt::from(1) {
        let s = m.sqrt();
        if &s * &s != m {
            out *= m;
        }
    }
    out
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let s = n.sqrt();
    &s * &s == *n
}

/// Whether √d (d squarefree, d ≠ 1) lies in Q(ζ_n).
fn sqrt_in_cyclotomic(d: &BigInt, n: u64) -> bool {
    if d == &BigInt::from(1) {
        return true;
    }
    let abs = d.abs();
    let conductor = if d.mod_floor(&BigInt::from(4)) == BigInt::from(1) { abs } else { abs * 4 };
    let level = if n % 2 == 1 { 2 * n } else { n };
    (BigInt::from(level) % conductor).is_zero()
}

fn quadratic_is_field(base: &RingDescriptor, delta: &BigInt) -> bool {
    match base {
        RingDescriptor::Rationals => !is_perfect_square(delta),
        RingDescriptor::ModPrime(r) => legendre(delta, *r) == -1,
        RingDescriptor::Quotient(q) => match (q.kind(), q.base()) {
            (QuotientKind::Cyclotomic(n), RingDescriptor::Rationals) => {
                !sqrt_in_cyclotomic(&squarefree_part(delta), *n)
            }
            (QuotientKind::Cyclotomic(_), RingDescriptor::ModPrime(r)) => {
                q.degree() % 2 == 1 && legendre(delta, *r) == -1
            }
            _ => false,
        },
        _ => false,
    }
}

/// Adjoins `v` with `v^2 = delta`. The result is a field exactly when
/// `delta` is not already a square in `base`.
pub fn adjoin_quadratic(base: &RingDescriptor, delta: &BigInt) -> Result<(RingDescriptor, RingElement)> {
    if delta.is_zero() {
        return Err(Error::ZeroDiscriminant);
    }
    if matches!(base, RingDescriptor::Series(_) | RingDescriptor::Integers) {
        return Err(Error::Unsupported(format!("adjoining a square root to {base}")));
    }
    let field = quadratic_is_field(base, delta);
    let modulus = vec![base.from_bigint(&-delta), base.zero(), base.one()];
    let ring = RingDescriptor::quotient_with(base.clone(), modulus, "v", QuotientKind::Quadratic(delta.clone()), field)?;
    let v = RingElement::generator(&ring).unwrap();
    Ok((ring, v))
}

/// Roots of a small polynomial over `Z_r` (coefficients lowest first).
pub fn roots_mod(coeffs: &[u64], r: u64) -> Vec<u64> {
    (0..r).filter(|&t| eval_mod_poly(coeffs, t, r) == 0).collect()
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_cube_root_mod_13() {
        let z13 = RingDescriptor::mod_prime(13).unwrap();
        let (ring, eps) = adjoin_primitive_root(&z13, 3).unwrap();
        assert_eq!(ring, z13);
        assert_eq!(eps.as_residue(), Some(3));
    }

    #[test]
    fn cube_roots_mod_5_need_extension() {
        let z5 = RingDescriptor::mod_prime(5).unwrap();
        assert!(roots_mod(&[1, 1, 1], 5).is_empty());
        let (ring, eps) = adjoin_primitive_root(&z5, 3).unwrap();
        let q = ring.as_quotient().unwrap();
        assert_eq!(q.modulus(), &[Value::Mod(1), Value::Mod(1), Value::Mod(1)]);
        assert!(ring.is_field());
        assert!(eps.pow(3).is_one());
        assert!(!eps.is_one());
        assert_eq!(eps.to_string(), "t (mod t^2+t+1, mod 5)");
    }

    #[test]
    fn char_divides_n() {
        let z3 = RingDescriptor::mod_prime(3).unwrap();
        assert_eq!(adjoin_primitive_root(&z3, 3).unwrap_err(), Error::CharDividesN { r: 3, n: 3 });
    }

    #[test]
    fn primitive_roots_have_exact_order() {
        for r in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            for n in 1..=16u64 {
                if n % r == 0 {
                    continue;
                }
                let base = RingDescriptor::mod_prime(r).unwrap();
                let (_, eps) = adjoin_primitive_root(&base, n).unwrap();
                assert!(eps.pow(n).is_one(), "r={r} n={n}");
                for d in 1..n {
                    assert!(!eps.pow(d).is_one(), "r={r} n={n} d={d}");
                }
            }
        }
        for n in 1..=16u64 {
            let (_, eps) = adjoin_primitive_root(&RingDescriptor::Rationals, n).unwrap();
            assert!(eps.pow(n).is_one());
            for d in 1..n {
                assert!(!eps.pow(d).is_one());
            }
        }
    }

    #[test]
    fn sqrt_five_over_q() {
        let (ring, v) = adjoin_quadratic(&RingDescriptor::Rationals, &BigInt::from(5)).unwrap();
        assert!(ring.is_field());
        let inv = v.inv().unwrap();
        assert_eq!(inv.to_string(), "(1/5)v (mod v^2-5)");
        assert!((&v * &inv).is_one());
        let nine = adjoin_quadratic(&RingDescriptor::Rationals, &BigInt::from(9)).unwrap().0;
        assert!(!nine.is_field());
        assert_eq!(adjoin_quadratic(&RingDescriptor::Rationals, &BigInt::zero()).unwrap_err(), Error::ZeroDiscriminant);
    }

    #[test]
    fn nested_tower_has_four_coordinates() {
        let (k, zeta) = adjoin_primitive_root(&RingDescriptor::Rationals, 3).unwrap();
        let (kk, v) = adjoin_quadratic(&k, &BigInt::from(5)).unwrap();
        assert_eq!(kk.dimension(), 4);
        assert!(kk.is_field());
        let one = RingElement::one(&kk);
        let z = RingElement::embed(&kk, &zeta).unwrap();
        let prod = (&one + &z) * (&one + &v);
        assert_eq!(prod.ring().validate(prod.value()), Ok(()));
        assert_eq!(prod.to_string(), "(1+t)+(1+t)v (mod v^2-5, mod t^2+t+1)");
    }

    #[test]
    fn square_roots_inside_cyclotomic_fields() {
        // √-3 ∈ Q(ζ_3), √5 ∉ Q(ζ_3), √2 ∈ Q(ζ_8), √-1 ∈ Q(ζ_4)
        assert!(sqrt_in_cyclotomic(&BigInt::from(-3), 3));
        assert!(!sqrt_in_cyclotomic(&BigInt::from(5), 3));
        assert!(sqrt_in_cyclotomic(&BigInt::from(5), 5));
        assert!(sqrt_in_cyclotomic(&BigInt::from(2), 8));
        assert!(sqrt_in_cyclotomic(&BigInt::from(-1), 4));
        assert!(!sqrt_in_cyclotomic(&BigInt::from(-1), 3));
        assert_eq!(squarefree_part(&BigInt::from(-12)), BigInt::from(-3));
        assert_eq!(squarefree_part(&BigInt::from(45)), BigInt::from(5));
        let (k, _) = adjoin_primitive_root(&RingDescriptor::Rationals, 3).unwrap();
        assert!(!adjoin_quadratic(&k, &BigInt::from(-3)).unwrap().0.is_field());
        assert!(!adjoin_quadratic(&k, &BigInt::from(-12)).unwrap().0.is_field());
    }

    #[test]
    fn splitting_matches_enumeration() {
        // Φ_13 mod 3 splits into factors of degree 3
        let phi: Vec<u64> = cyclotomic_polynomial(13).iter().map(|c| bigint_mod(c, 3)).collect();
        let g = split_equal_degree(phi.clone(), 3, 3).unwrap();
        assert_eq!(g.len(), 4);
        assert!(poly_rem_mod(&phi, &g, 3).iter().all(|&c| c == 0));
        assert!(roots_mod(&g, 3).is_empty());
    }

    #[test]
    fn legendre_symbols() {
        assert_eq!(legendre(&BigInt::from(2), 7), 1);
        assert_eq!(legendre(&BigInt::from(3), 7), -1);
        assert_eq!(legendre(&BigInt::from(14), 7), 0);
    }
}
