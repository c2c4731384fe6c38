//! Horadam symbol elements reduced modulo a prime `r` with `r | gcd(p, a1)`,
//! closed-form norms, zero-divisor criteria, witnesses and parameter scans.
//!
//! The direct norm is always taken of `W_k` built from the recurrence mod r.
//! The closed forms and the textbook reduced patterns are evaluated next to
//! it and any disagreement is recorded rather than hidden.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::horadam::HoradamParams;
use crate::rings::{adjoin_primitive_root, det_and_nullspace, is_odd_prime, RingDescriptor, RingElement};
use crate::symalg::{left_regular_matrix, reduced_norm3, right_regular_matrix, SymElement, SymbolAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Index of `W` examined at `m`: `2m` or `2m+1`.
    pub fn index(&self, m: i64) -> i64 {
        match self {
            Parity::Even => 2 * m,
            Parity::Odd => 2 * m + 1,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl FromStr for Parity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(Error::Parse(format!("parity must be even or odd, got {other:?}"))),
        }
    }
}

/// Which annihilator to look for.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `W·v = 0`, from the left regular representation.
    #[default]
    Left,
    /// `v·W = 0`, from the right regular representation.
    Right,
}

/// Verified setting over `K = Z_r(ε)`.
#[derive(Clone, Debug)]
pub struct ModContext {
    r: u64,
    params: HoradamParams,
    a: i64,
    b: i64,
    field: RingDescriptor,
    eps: RingElement,
    alg: SymbolAlgebra,
}

fn divides(r: u64, n: i64) -> bool {
    n.rem_euclid(r as i64) == 0
}

impl ModContext {
    /// Checks `r` odd prime, `r ≠ 3`, `r | gcd(p, a1)`, `r ∤ q`, `r ∤ a0`, `r ∤ a`, `r ∤ b`.
    pub fn new(r: u64, params: &HoradamParams, a: i64, b: i64) -> Result<Self> {
        if !is_odd_prime(r) {
            return Err(Error::NotPrime(r));
        }
        if r == 3 {
            return Err(Error::HypothesisViolated("r must differ from 3".into()));
        }
        let checks = [
            (divides(r, params.p()), "r does not divide p"),
            (divides(r, params.a1()), "r does not divide a1"),
            (!divides(r, params.q()), "r divides q"),
            (!divides(r, params.a0()), "r divides a0"),
            (!divides(r, a), "r divides a"),
            (!divides(r, b), "r divides b"),
        ];
        if let Some((_, msg)) = checks.iter().find(|(ok, _)| !ok) {
            return Err(Error::HypothesisViolated(format!("{msg} (r = {r})")));
        }
        let (field, eps) = adjoin_primitive_root(&RingDescriptor::mod_prime(r)?, 3)?;
        let alg = SymbolAlgebra::new(3, &RingElement::from_i64(&field, a), &RingElement::from_i64(&field, b), &eps)?;
        Ok(ModContext { r, params: *params, a, b, field, eps, alg })
    }

    /// Scan parameters `(a0, a1, p) = (1, r, r)`.
    pub fn canonical(r: u64, q: i64, a: i64, b: i64) -> Result<Self> {
        ModContext::new(r, &HoradamParams::new(1, r as i64, r as i64, q)?, a, b)
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn params(&self) -> &HoradamParams {
        &self.params
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn field(&self) -> &RingDescriptor {
        &self.field
    }

    pub fn eps(&self) -> &RingElement {
        &self.eps
    }

    pub fn algebra(&self) -> &SymbolAlgebra {
        &self.alg
    }

    fn k(&self, n: i64) -> RingElement {
        RingElement::from_i64(&self.field, n)
    }

    fn residue(&self, n: i64) -> u64 {
        n.rem_euclid(self.r as i64) as u64
    }

    /// `w_k mod r` for `k ≥ 0`.
    pub fn w_mod(&self, k: i64) -> Result<u64> {
        if k < 0 {
            return Err(Error::IndexOutOfRange(format!("k = {k} must be nonnegative")));
        }
        let r = self.r as u128;
        let (p, q) = (self.residue(self.params.p()) as u128, self.residue(self.params.q()) as u128);
        let (mut x, mut y) = (self.residue(self.params.a0()) as u128, self.residue(self.params.a1()) as u128);
        for _ in 0..k {
            (x, y) = (y, (p * y + q * x) % r);
        }
        Ok(x as u64)
    }

    /// `W_k` over K from the recurrence mod r.
    pub fn build_w(&self, k: i64) -> Result<SymElement> {
        let coeffs: Vec<RingElement> =
            (0..9).map(|l| Ok(self.k(self.w_mod(k + l)? as i64))).collect::<Result<_>>()?;
        self.alg.element(&coeffs)
    }

    fn q_pow(&self, e: u64) -> u64 {
        crate::rings::mod_pow(self.residue(self.params.q()), e, self.r)
    }
}

pub fn make_mod_context(r: u64, params: &HoradamParams, a: i64, b: i64) -> Result<ModContext> {
    ModContext::new(r, params, a, b)
}

/// Textbook reduced pattern: even `q^m(a0 + a0q^m(x² + xy + y² + x²y²))`,
/// odd `a0 q^{m+1}(x + qy + q²x²y + q³xy²)`.
pub fn reduced_form(ctx: &ModContext, m: i64, parity: Parity) -> Result<SymElement> {
    let min = if parity == Parity::Even { 1 } else { 0 };
    if m < min {
        return Err(Error::IndexOutOfRange(format!("m = {m} below {min} for {parity} parity")));
    }
    let a0 = ctx.residue(ctx.params.a0());
    let r = ctx.r;
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % r as u128) as u64;
    let mut c = [0u64; 9];
    match parity {
        Parity::Even => {
            let qm = ctx.q_pow(m as u64);
            c[0] = mul(qm, a0);
            for l in [2, 4, 6, 8] {
                c[l] = mul(mul(qm, a0), qm);
            }
        }
        Parity::Odd => {
            let lead = mul(a0, ctx.q_pow(m as u64 + 1));
            for (l, e) in [(1, 0), (3, 1), (5, 2), (7, 3)] {
                c[l] = mul(lead, ctx.q_pow(e));
            }
        }
    }
    let coeffs: Vec<RingElement> = c.iter().map(|&v| ctx.k(v as i64)).collect();
    ctx.alg.element(&coeffs)
}

/// Closed-form norm of the reduced pattern.
pub fn closed_norm(ctx: &ModContext, m: i64, parity: Parity) -> RingElement {
    let (a, b) = (ctx.k(ctx.a), ctx.k(ctx.b));
    let a0 = ctx.k(ctx.params.a0());
    let q = ctx.k(ctx.params.q());
    let one = ctx.k(1);
    let m = m.max(0) as u64;
    let qp = |e: u64| q.pow(e);
    let ab = &a * &b;
    match parity {
        Parity::Even => {
            let inner = &(&(&(&a * &a) + &(&ab * &ab)) + &(&b * &b)) + &ab;
            let three_ab_q2m = &(&ctx.k(3) * &ab) * &qp(2 * m);
            let eps_term = &(&three_ab_q2m * &ctx.eps) * &(&one - &qp(m));
            let bracket = &(&(&(&qp(3 * m) * &inner) + &three_ab_q2m) + &one) + &eps_term;
            &(&qp(3 * m) * &a0.pow(3)) * &bracket
        }
        Parity::Odd => {
            let t = &(&(&(&(&a * &a) * &b) * &qp(6)) + &a) + &(&(&(&a * &(&b * &b)) * &qp(9)) + &(&b * &qp(3)));
            &(&qp(3 * m + 3) * &a0.pow(3)) * &t
        }
    }
}

/// Each congruence of the criterion, evaluated over `Z_r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionDetail {
    /// Even: `q^m ≡ 1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_m_is_one: Option<bool>,
    /// Even: `a² + a²b² + b² + 4ab + 1 ≡ 0`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quartic_vanishes: Option<bool>,
    /// Odd: `a + bq³ ≡ 0`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_plus_bq3: Option<bool>,
    /// Odd: `abq⁶ ≡ −1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abq6_is_minus_one: Option<bool>,
}

pub fn criterion(ctx: &ModContext, m: i64, parity: Parity) -> (bool, CriterionDetail) {
    let r = ctx.r as i128;
    let red = |x: i128| x.rem_euclid(r);
    let (a, b) = (ctx.a as i128, ctx.b as i128);
    match parity {
        Parity::Even => {
            let qm = ctx.q_pow(m.max(0) as u64) == 1;
            let quartic = red(red(a * a) + red(red(a * a) * red(b * b)) + red(b * b) + red(4 * a * b) + 1) == 0;
            let d = CriterionDetail { q_m_is_one: Some(qm), quartic_vanishes: Some(quartic), a_plus_bq3: None, abq6_is_minus_one: None };
            (qm && quartic, d)
        }
        Parity::Odd => {
            let q3 = ctx.q_pow(3) as i128;
            let q6 = ctx.q_pow(6) as i128;
            let first = red(a + red(b * q3)) == 0;
            let second = red(red(a * b) * q6 + 1) == 0;
            let d = CriterionDetail { q_m_is_one: None, quartic_vanishes: None, a_plus_bq3: Some(first), abq6_is_minus_one: Some(second) };
            (first || second, d)
        }
    }
}

/// Nonzero annihilator of `z` on the requested side, verified by multiplication.
pub fn find_annihilator(z: &SymElement, side: Side) -> Result<Option<SymElement>> {
    let mat = match side {
        Side::Left => left_regular_matrix(z)?,
        Side::Right => right_regular_matrix(z)?,
    };
    let (_, kernel) = det_and_nullspace(&mat)?;
    let Some(v) = kernel.into_iter().next() else { return Ok(None) };
    let f = z.algebra().field().clone();
    let coeffs: Vec<RingElement> = v.into_iter().map(|x| RingElement::new(f.clone(), x)).collect::<Result<_>>()?;
    let w = z.algebra().element(&coeffs)?;
    let prod = match side {
        Side::Left => z.mul(&w)?,
        Side::Right => w.mul(z)?,
    };
    if w.is_zero() || !prod.is_zero() {
        return Err(Error::Inconsistent("kernel vector does not annihilate".into()));
    }
    Ok(Some(w))
}

fn ser_display<S: Serializer, T: fmt::Display>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// `(a, b) ≡ ±(1, −1)`, i.e. `a + b ≡ 0` and `ab + 1 ≡ 0`.
pub fn is_degenerate_pair(r: u64, a: i64, b: i64) -> bool {
    let r = r as i128;
    let (a, b) = (a as i128, b as i128);
    (a + b).rem_euclid(r) == 0 && (a * b + 1).rem_euclid(r) == 0
}

#[derive(Clone, Debug, Serialize)]
pub struct ZDivRecord {
    pub r: u64,
    pub parity: Parity,
    pub a: i64,
    pub b: i64,
    pub q: i64,
    pub m: i64,
    pub q_m_mod_r: u64,
    pub criterion_met: bool,
    pub criterion_detail: CriterionDetail,
    #[serde(serialize_with = "ser_display")]
    pub norm_closed: RingElement,
    #[serde(serialize_with = "ser_display")]
    pub norm_direct: RingElement,
    pub norm_is_zero: bool,
    pub closed_matches_direct: bool,
    /// Whether the textbook reduced pattern equals `W` coefficientwise.
    pub reduced_form_matches: bool,
    pub side: Side,
    pub witness: Option<SymElement>,
    pub degenerate: bool,
    pub r_mod_4: u64,
}

impl ZDivRecord {
    pub fn witness_found(&self) -> bool {
        self.witness.is_some()
    }

    /// Criterion true but the direct norm nonzero.
    pub fn sufficiency_violated(&self) -> bool {
        self.criterion_met && !self.norm_is_zero
    }
}

fn record(ctx: &ModContext, m: i64, parity: Parity, side: Side, want_witness: bool) -> Result<ZDivRecord> {
    let w = ctx.build_w(parity.index(m))?;
    let norm_direct = reduced_norm3(&w)?;
    let norm_closed = closed_norm(ctx, m, parity);
    let reduced_form_matches = match reduced_form(ctx, m, parity) {
        Ok(z) => z == w,
        Err(_) => false,
    };
    let (criterion_met, criterion_detail) = criterion(ctx, m, parity);
    let norm_is_zero = norm_direct.is_zero();
    let witness = if norm_is_zero && want_witness && !w.is_zero() { find_annihilator(&w, side)? } else { None };
    Ok(ZDivRecord {
        r: ctx.r,
        parity,
        a: ctx.a,
        b: ctx.b,
        q: ctx.params.q(),
        m,
        q_m_mod_r: ctx.q_pow(m.max(0) as u64),
        criterion_met,
        criterion_detail,
        closed_matches_direct: norm_closed == norm_direct,
        norm_closed,
        norm_direct,
        norm_is_zero,
        reduced_form_matches,
        side,
        witness,
        degenerate: is_degenerate_pair(ctx.r, ctx.a, ctx.b),
        r_mod_4: ctx.r % 4,
    })
}

/// Full record for one configuration; a witness is searched whenever the
/// direct norm vanishes.
pub fn verify_zero_divisor(ctx: &ModContext, m: i64, parity: Parity) -> Result<ZDivRecord> {
    record(ctx, m, parity, Side::Left, true)
}

pub fn verify_zero_divisor_side(ctx: &ModContext, m: i64, parity: Parity, side: Side) -> Result<ZDivRecord> {
    record(ctx, m, parity, side, true)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ParityCount {
    pub even: u64,
    pub odd: u64,
}

impl ParityCount {
    fn bump(&mut self, p: Parity) {
        match p {
            Parity::Even => self.even += 1,
            Parity::Odd => self.odd += 1,
        }
    }

    fn merge(&mut self, o: &ParityCount) {
        self.even += o.even;
        self.odd += o.odd;
    }

    pub fn total(&self) -> u64 {
        self.even + self.odd
    }
}

/// Degenerate even hit at a prime `r ≡ 3 (mod 4)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegenerateHit {
    pub r: u64,
    pub a: i64,
    pub b: i64,
    pub q: i64,
    pub m: i64,
    pub norm_is_zero: bool,
    pub witness_found: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Mod4Audit {
    pub non_degenerate_hits: u64,
    /// Non-degenerate even hits with `r ≡ 3 (mod 4)`; expected to be zero.
    pub non_degenerate_r_3_mod_4: u64,
    pub degenerate_hits: u64,
    pub degenerate_at_r_3_mod_4: Vec<DegenerateHit>,
}

impl Mod4Audit {
    pub fn holds_for_non_degenerate(&self) -> bool {
        self.non_degenerate_r_3_mod_4 == 0
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ScanSummary {
    pub visited: ParityCount,
    pub hits: ParityCount,
    pub closed_mismatches: ParityCount,
    pub reduced_form_mismatches: ParityCount,
    /// Criterion met but direct norm nonzero.
    pub sufficiency_violations: ParityCount,
    /// Direct norm zero but criterion not met, split by `r mod 3`.
    pub necessity_gaps_r_1_mod_3: ParityCount,
    pub necessity_gaps_r_2_mod_3: ParityCount,
    /// Norm zero with no verified witness.
    pub witness_failures: u64,
    pub mod4_audit: Mod4Audit,
}

impl ScanSummary {
    fn merge(&mut self, o: ScanSummary) {
        self.visited.merge(&o.visited);
        self.hits.merge(&o.hits);
        self.closed_mismatches.merge(&o.closed_mismatches);
        self.reduced_form_mismatches.merge(&o.reduced_form_mismatches);
        self.sufficiency_violations.merge(&o.sufficiency_violations);
        self.necessity_gaps_r_1_mod_3.merge(&o.necessity_gaps_r_1_mod_3);
        self.necessity_gaps_r_2_mod_3.merge(&o.necessity_gaps_r_2_mod_3);
        self.witness_failures += o.witness_failures;
        self.mod4_audit.non_degenerate_hits += o.mod4_audit.non_degenerate_hits;
        self.mod4_audit.non_degenerate_r_3_mod_4 += o.mod4_audit.non_degenerate_r_3_mod_4;
        self.mod4_audit.degenerate_hits += o.mod4_audit.degenerate_hits;
        self.mod4_audit.degenerate_at_r_3_mod_4.extend(o.mod4_audit.degenerate_at_r_3_mod_4);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    /// Criterion hits in `(r, a, b, q, m)` order, parity inner.
    pub records: Vec<ZDivRecord>,
    pub summary: ScanSummary,
}

/// Bounds of a parameter scan.
#[derive(Clone, Debug)]
pub struct ScanBounds {
    pub r_max: u64,
    pub q_max: i64,
    pub m_max: i64,
    pub parities: Vec<Parity>,
}

impl ScanBounds {
    pub fn new(r_max: u64, q_max: i64, m_max: i64, parities: &[Parity]) -> Result<Self> {
        if r_max < 1 || q_max < 1 || m_max < 1 {
            return Err(Error::InvalidParams("scan bounds must be at least 1".into()));
        }
        if parities.is_empty() {
            return Err(Error::InvalidParams("no parity selected".into()));
        }
        Ok(ScanBounds { r_max, q_max, m_max, parities: parities.to_vec() })
    }
}

fn scan_prime(r: u64, bounds: &ScanBounds) -> Result<(Vec<ZDivRecord>, ScanSummary)> {
    let mut records = Vec::new();
    let mut s = ScanSummary::default();
    for a in 1..r as i64 {
        for b in 1..r as i64 {
            for q in 1..=bounds.q_max {
                if divides(r, q) {
                    continue;
                }
                let ctx = ModContext::canonical(r, q, a, b)?;
                for m in 1..=bounds.m_max {
                    for &parity in &bounds.parities {
                        let (hit, _) = criterion(&ctx, m, parity);
                        let rec = record(&ctx, m, parity, Side::Left, hit)?;
                        s.visited.bump(parity);
                        if !rec.closed_matches_direct {
                            s.closed_mismatches.bump(parity);
                        }
                        if !rec.reduced_form_matches {
                            s.reduced_form_mismatches.bump(parity);
                        }
                        if rec.sufficiency_violated() {
                            s.sufficiency_violations.bump(parity);
                        }
                        if rec.norm_is_zero && !rec.criterion_met {
                            if r % 3 == 1 {
                                s.necessity_gaps_r_1_mod_3.bump(parity);
                            } else {
                                s.necessity_gaps_r_2_mod_3.bump(parity);
                            }
                        }
                        if !hit {
                            continue;
                        }
                        s.hits.bump(parity);
                        if rec.norm_is_zero && rec.witness.is_none() {
                            s.witness_failures += 1;
                        }
                        if parity == Parity::Even {
                            if rec.degenerate {
                                s.mod4_audit.degenerate_hits += 1;
                                if r % 4 == 3 {
                                    s.mod4_audit.degenerate_at_r_3_mod_4.push(DegenerateHit {
                                        r,
                                        a,
                                        b,
                                        q,
                                        m,
                                        norm_is_zero: rec.norm_is_zero,
                                        witness_found: rec.witness_found(),
                                    });
                                }
                            } else {
                                s.mod4_audit.non_degenerate_hits += 1;
                                if r % 4 == 3 {
                                    s.mod4_audit.non_degenerate_r_3_mod_4 += 1;
                                }
                            }
                        }
                        records.push(rec);
                    }
                }
            }
        }
    }
    Ok((records, s))
}

/// Scans odd primes `5 ≤ r ≤ r_max` with canonical parameters, all
/// `a, b ∈ [1, r−1]`, `q ∈ [1, q_max]` prime to r and `m ∈ [1, m_max]`.
pub fn scan(bounds: &ScanBounds) -> Result<ScanReport> {
    let primes: Vec<u64> = (5..=bounds.r_max).filter(|&r| is_odd_prime(r)).collect();
    let parts: Vec<(Vec<ZDivRecord>, ScanSummary)> =
        primes.par_iter().map(|&r| scan_prime(r, bounds)).collect::<Result<_>>()?;
    let mut records = Vec::new();
    let mut summary = ScanSummary::default();
    for (recs, s) in parts {
        records.extend(recs);
        summary.merge(s);
    }
    Ok(ScanReport { records, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn even_ctx() -> ModContext {
        ModContext::new(13, &HoradamParams::new(1, 13, 13, 3).unwrap(), 1, 12).unwrap()
    }

    fn odd_ctx() -> ModContext {
        ModContext::new(5, &HoradamParams::new(1, 5, 5, 1).unwrap(), 1, 4).unwrap()
    }

    #[test]
    fn contexts() {
        let ctx = even_ctx();
        assert_eq!(ctx.eps().as_residue(), Some(3));
        assert_eq!(*ctx.field(), RingDescriptor::mod_prime(13).unwrap());
        let ctx = odd_ctx();
        assert!(matches!(ctx.field(), RingDescriptor::Quotient(_)));
        let bad = ModContext::new(13, &HoradamParams::new(1, 13, 12, 3).unwrap(), 1, 12);
        assert!(matches!(bad, Err(Error::HypothesisViolated(m)) if m.contains("p")));
        assert_eq!(ModContext::new(9, &HoradamParams::new(1, 9, 9, 1).unwrap(), 1, 1).unwrap_err(), Error::NotPrime(9));
        assert!(ModContext::new(3, &HoradamParams::new(1, 3, 3, 1).unwrap(), 1, 1).is_err());
        assert!(ModContext::new(13, &HoradamParams::new(1, 13, 13, 13).unwrap(), 1, 1).is_err());
        assert!(ModContext::new(13, &HoradamParams::new(1, 13, 13, 3).unwrap(), 13, 1).is_err());
    }

    #[test]
    fn w_matches_symbol_element_build() {
        let params = HoradamParams::new(1, 13, 13, 3).unwrap();
        let hse = crate::hse::HseContext::modular(&params, 13, 3, 1, 12).unwrap();
        let ctx = even_ctx();
        for k in 0..8 {
            let ours = ctx.build_w(k).unwrap().coeff_strings();
            assert_eq!(ours, crate::hse::build_w(&hse, k).unwrap().coeff_strings(), "k={k}");
        }
    }

    #[test]
    fn reduced_forms() {
        let ctx = even_ctx();
        let z = reduced_form(&ctx, 3, Parity::Even).unwrap();
        assert_eq!(z.coeff_strings(), ["1", "0", "1", "0", "1", "0", "1", "0", "1"]);
        // actual W_6 carries q, q², q³, q⁴ on the even slots
        assert_eq!(ctx.build_w(6).unwrap().coeff_strings(), ["1", "0", "3", "0", "9", "0", "1", "0", "3"]);
        assert!(reduced_form(&ctx, 0, Parity::Even).is_err());
        let ctx = odd_ctx();
        let z = reduced_form(&ctx, 0, Parity::Odd).unwrap();
        assert_eq!(z.coeff_strings(), ["0", "1", "0", "1", "0", "1", "0", "1", "0"]);
        for m in 0..=4 {
            assert_eq!(reduced_form(&ctx, m, Parity::Odd).unwrap(), ctx.build_w(2 * m + 1).unwrap(), "m={m}");
        }
    }

    #[test]
    fn closed_norm_equals_norm_of_reduced_pattern() {
        for r in [7u64, 13, 5, 11] {
            for q in 1..=4 {
                for (a, b) in [(1, 2), (2, 3), (1, r as i64 - 1)] {
                    let ctx = ModContext::canonical(r, q, a, b).unwrap();
                    for m in 1..=3 {
                        for parity in [Parity::Even, Parity::Odd] {
                            let z = reduced_form(&ctx, m, parity).unwrap();
                            assert_eq!(closed_norm(&ctx, m, parity), reduced_norm3(&z).unwrap(), "r={r} q={q} m={m} {parity}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn closed_norm_examples() {
        assert!(closed_norm(&even_ctx(), 3, Parity::Even).is_zero());
        for m in 0..=4 {
            assert!(closed_norm(&odd_ctx(), m, Parity::Odd).is_zero());
        }
    }

    #[test]
    fn criteria() {
        let (ok, d) = criterion(&even_ctx(), 3, Parity::Even);
        assert!(ok && d.q_m_is_one == Some(true) && d.quartic_vanishes == Some(true));
        let (ok, d) = criterion(&odd_ctx(), 2, Parity::Odd);
        assert!(ok && d.a_plus_bq3 == Some(true));
        let ctx = ModContext::canonical(13, 3, 1, 1).unwrap();
        let (ok, d) = criterion(&ctx, 1, Parity::Even);
        assert!(!ok && d.q_m_is_one == Some(false));
        let rec = verify_zero_divisor(&ctx, 1, Parity::Even).unwrap();
        assert!(!rec.criterion_met);
    }

    #[test]
    fn witnesses() {
        let rec = verify_zero_divisor(&even_ctx(), 3, Parity::Even).unwrap();
        assert!(rec.criterion_met && rec.norm_is_zero && rec.norm_closed.is_zero());
        let v = rec.witness.clone().unwrap();
        assert!(even_ctx().build_w(6).unwrap().mul(&v).unwrap().is_zero());
        let rec = verify_zero_divisor_side(&even_ctx(), 3, Parity::Even, Side::Right).unwrap();
        let v = rec.witness.unwrap();
        assert!(v.mul(&even_ctx().build_w(6).unwrap()).unwrap().is_zero());
        for m in 0..=4 {
            let rec = verify_zero_divisor(&odd_ctx(), m, Parity::Odd).unwrap();
            assert!(rec.norm_is_zero && rec.witness.is_some(), "m={m}");
        }
    }

    #[test]
    fn degenerate_pairs() {
        for r in [5u64, 7, 11, 13] {
            let rr = r as i64;
            assert!(is_degenerate_pair(r, 1, rr - 1) && is_degenerate_pair(r, rr - 1, 1));
            assert!(!is_degenerate_pair(r, 1, 1));
            let (a, b) = (1i64, rr - 1);
            assert_eq!((a * a + a * a * b * b + b * b + 4 * a * b + 1).rem_euclid(rr), 0);
        }
    }

    #[test]
    fn small_scan() {
        let rep = scan(&ScanBounds::new(13, 3, 3, &[Parity::Even, Parity::Odd]).unwrap()).unwrap();
        let s = &rep.summary;
        assert_eq!(s.hits.total() as usize, rep.records.len());
        assert_eq!(s.witness_failures, 0);
        assert_eq!(s.closed_mismatches.odd, 0);
        assert_eq!(s.reduced_form_mismatches.odd, 0);
        assert!(rep.records.iter().all(|r| r.criterion_met));
        let keys: Vec<_> = rep.records.iter().map(|r| (r.r, r.a, r.b, r.q, r.m)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(s.mod4_audit.degenerate_at_r_3_mod_4.iter().any(|d| d.r == 7 || d.r == 11));
    }

    #[test]
    fn parity_text() {
        assert_eq!("even".parse::<Parity>().unwrap(), Parity::Even);
        assert!("both".parse::<Parity>().is_err());
        assert_eq!(Parity::Odd.to_string(), "odd");
    }
}
