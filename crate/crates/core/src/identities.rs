//! Registry and exact evaluator for the scalar Horadam identities.
//!
//! Every statement is evaluated on concrete parameters and indices: the left
//! side from sequence values, the right side from its closed form. Verdicts
//! are data; nothing here assumes a statement is true.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::horadam::{generate_window, BinetContext, HoradamParams, SequenceWindow};
use crate::rings::{series_from_coeffs, RingDescriptor, RingElement};

/// Whether an identity is asserted by the default audit or only reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expected {
    Pass,
    Audit,
}

/// Ring needed to evaluate both sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RequiredRing {
    Rationals,
    Quadratic,
    Series,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Constraint {
    /// k ≥ the given bound.
    KAtLeast(i64),
    /// n ≥ 0 and c ≠ 0.
    NAndC,
    /// k > m ≥ 0 (plus n ≥ 0 when `n` is bound, T ≥ 1 when `T` is bound).
    KGreaterM,
    MAtLeast0,
    MAndK,
}

#[derive(Clone, Debug)]
pub struct ScalarIdentity {
    pub id: &'static str,
    pub statement: &'static str,
    pub ring: RequiredRing,
    /// Free index names, alphabetical.
    pub indices: &'static [&'static str],
    pub constraint: &'static str,
    pub expected: Expected,
    /// Evaluated forms; the first is the statement as written.
    pub forms: &'static [&'static str],
    check: Constraint,
}

const LITERAL: &[&str] = &["literal"];

macro_rules! ident {
    ($id:expr, $stmt:expr, $ring:ident, [$($ix:expr),*], $cons:expr, $exp:ident, $forms:expr, $check:expr) => {
        ScalarIdentity {
            id: $id,
            statement: $stmt,
            ring: RequiredRing::$ring,
            indices: &[$($ix),*],
            constraint: $cons,
            expected: Expected::$exp,
            forms: $forms,
            check: $check,
        }
    };
}

/// All 34 scalar identities in stable order.
pub fn scalar_registry() -> &'static [ScalarIdentity] {
    use Constraint::*;
    static REGISTRY: std::sync::OnceLock<Vec<ScalarIdentity>> = std::sync::OnceLock::new();
    REGISTRY.get_or_init(|| {
        vec![
            ident!("T2.1a", "q^2 w_k + p w_{k+3} = (p^2+q) w_{k+2}", Rationals, ["k"], "k >= 0", Pass, LITERAL, KAtLeast(0)),
            ident!("T2.1b", "q^2 w_k + w_{k+4} = (p^2+2q) w_{k+2}", Rationals, ["k"], "k >= 0", Pass, LITERAL, KAtLeast(0)),
            ident!("T2.1c", "(q^3+p^2q^2) w_k + p w_{k+5} = (p^4+3p^2q+q^2) w_{k+2}", Rationals, ["k"], "k >= 0", Pass, LITERAL, KAtLeast(0)),
            ident!("T2.1d", "(p^2q^2+2q^3) w_k + w_{k+6} = (p^4+3q^2+4p^2q) w_{k+2}", Rationals, ["k"], "k >= 0", Pass, LITERAL, KAtLeast(0)),
            ident!("T2.1e", "(p^4q^2+3p^2q^3+q^4) w_k + p w_{k+7} = (p^4+5p^4q+6p^2q^2+q^3) w_{k+2}", Rationals, ["k"], "k >= 0", Audit, LITERAL, KAtLeast(0)),
            ident!("T2.1f", "sum_{i=1}^{k} p^{k-i} q w_i = w_{k+2} - p^k w_2", Rationals, ["k"], "k >= 1", Pass, LITERAL, KAtLeast(1)),
            ident!("T2.1g", "sum_{i=1}^{k} p q^{k-i} w_{2i-1} = w_{2k} - q^k w_0", Rationals, ["k"], "k >= 1", Pass, LITERAL, KAtLeast(1)),
            ident!("T2.1h", "sum_{i=1}^{k} p q^{k-i} w_{2i} = w_{2k+1} - q^k w_1", Rationals, ["k"], "k >= 1", Pass, LITERAL, KAtLeast(1)),
            ident!("T2.1i", "w_{2k+3}^2 - w_{2k+1}^2 = w_{2k} w_{2k+6} - w_{2k} w_{2k+2} - q^{2k} C (p^3+pq+4q^3-p^2-4q)/(p^2+4q), C = q a0^2 + p a0 a1 - a1^2", Rationals, ["k"], "k >= 0", Audit, LITERAL, KAtLeast(0)),
            ident!("T2.1j", "w_{2k+3}^2 + q^2 w_{2k+1}^2 = (p^2+2q) w_{2k} w_{2k+4} - q^{2k} C (p^3+p^2q^2+pq+8q^3)/(p^2+4q)", Rationals, ["k"], "k >= 0", Audit, LITERAL, KAtLeast(0)),
            ident!("T2.1k", "w_{2k+3}^2 - (p^2+2q) w_{2k+2}^2 + q^2 w_{2k+1}^2 = q^{2k} C (p^6+4p^4q+3p^2q^2-p^3-pq-8q^3)/(p^2+4q)", Rationals, ["k"], "k >= 0", Audit, LITERAL, KAtLeast(0)),
            ident!("T2.2", "c^{n+1} w_{n+1} = a0 + sum_{i=0}^{n} c^i ((p-1) w_i + (c-1) w_{i+1} + q w_{i-1})", Rationals, ["c", "n"], "n >= 0, c != 0", Pass, LITERAL, NAndC),
            ident!("T2.3a", "q F_{k-1} + F_{k+1} = L_k", Rationals, ["k"], "k >= 1", Pass, LITERAL, KAtLeast(1)),
            ident!("T2.3b", "q L_{k-1} + L_{k+1} = (p^2+4q) F_k", Rationals, ["k"], "k >= 1", Pass, LITERAL, KAtLeast(1)),
            ident!("T2.3c", "F_{k+2} - q^2 F_{k-2} = p L_k", Rationals, ["k"], "k >= 2", Pass, LITERAL, KAtLeast(2)),
            ident!("T2.3d", "L_{k+2} - q^2 L_{k-2} = p (p^2+4q) F_k", Rationals, ["k"], "k >= 2", Pass, LITERAL, KAtLeast(2)),
            ident!("T2.3e", "p F_k + L_k = 2 F_{k+1}", Rationals, ["k"], "k >= 0", Pass, LITERAL, KAtLeast(0)),
            ident!("T2.3f", "p L_k + (p^2+4q) F_k = 2 L_{k+1}", Rationals, ["k"], "k >= 0", Pass, LITERAL, KAtLeast(0)),
            ident!("T2.3g", "q^2 F_k + p L_{k+2} = F_{k+4}", Rationals, ["k"], "k >= 0", Pass, LITERAL, KAtLeast(0)),
            ident!("T2.3h", "q^2 L_k + p (p^2+4q) F_{k+2} = L_{k+4}", Rationals, ["k"], "k >= 0", Pass, LITERAL, KAtLeast(0)),
            ident!("T2.3i", "p F_{k+2} + q L_k = (p^2+2q) F_{k+1}", Rationals, ["k"], "k >= 0", Pass, LITERAL, KAtLeast(0)),
            ident!("T2.3j", "p L_{k+2} + q (p^2+4q) F_k = (p^2+2q) L_{k+1}", Rationals, ["k"], "k >= 0", Pass, LITERAL, KAtLeast(0)),
            ident!("T2.3k", "q^3 F_k + F_{k+6} = (p^2+q) L_{k+3}", Rationals, ["k"], "k >= 0", Pass, LITERAL, KAtLeast(0)),
            ident!("T2.3l", "q^3 L_k + L_{k+6} = (p^2+q)(p^2+4q) F_{k+3}", Rationals, ["k"], "k >= 0", Pass, LITERAL, KAtLeast(0)),
            ident!("T2.3m", "q^4 F_k + p F_{k+8} = ((p^2+q)^2 + pq(1+p+q)) F_{k+4}", Rationals, ["k"], "k >= 0", Audit, &["literal", "no-p"], KAtLeast(0)),
            ident!("T2.4a", "sum_n w_{kn+m} s^n = (w_m - (-q)^k w_{m-k} s)/(1 - (alpha^k+beta^k) s + (-q)^k s^2)", Series, ["T", "k", "m"], "k > m >= 0", Pass, LITERAL, KGreaterM),
            ident!("T2.4b", "sum_n w_{kn+m} s^n/n! = (A alpha^m e^{alpha^k s} - B beta^m e^{beta^k s})/(alpha - beta)", Series, ["T", "k", "m"], "k > m >= 0", Pass, LITERAL, KGreaterM),
            ident!("T2.5a", "sum_{r=0}^{n} w_{mr+k} = ((-q)^m w_{mn+k} - w_{mn+m+k} - (-q)^m w_{k-m} + w_k)/(1 + (-q)^m - L_m)", Rationals, ["k", "m", "n"], "k > m >= 0", Pass, LITERAL, KGreaterM),
            ident!("T2.5b", "sum_{r=0}^{n} (-1)^r w_{mr+k} = ((-1)^{n+1} q^m w_{mn+k} - (-1)^{n+1} w_{mn+m+k} - q^m w_{k-m} + w_k)/(1 + (-q)^m - (-1)^m L_m)", Rationals, ["k", "m", "n"], "k > m >= 0", Audit, &["literal", "sign-corrected"], KGreaterM),
            ident!("T2.6a", "sum_{r=0}^{n} r w_{mr+k} = n[((1+(-q)^m) w_{mn+m+k} - w_{mn+2m+k} - (-q)^m w_{mn+k})/D - (w_{mn+m+k} + q^{2m} w_{mn+k-m} - 2(-q)^m w_{mn+k})/D^2], D = 1 + (-q)^m - L_m", Rationals, ["k", "m", "n"], "k > m >= 0", Audit, LITERAL, KGreaterM),
            ident!("T2.6b", "sum_{r=0}^{n} (-1)^{r-1} r w_{mr+k} = (-1)^{n+1}[((n-1-2n(-q)^m) w_{mn+m+k} + q^{2m}(n-1) w_{mn+k-m})/D^2 - (n w_{mn+2m+k} + (n q^{2m} - 2(-q)^m (n-1)) w_{mn+k})/D^2]", Rationals, ["k", "m", "n"], "k > m >= 0", Audit, LITERAL, KGreaterM),
            ident!("T2.7", "sum_{k=0}^{m} C(m,k) p^k w_k q^{m-k} = w_{2m}", Rationals, ["m"], "m >= 0", Pass, LITERAL, MAtLeast0),
            ident!("T2.8a", "sum_{n=0}^{m} C(m,n) w_{2n+k} q^{m-n} = w_{k+m} D^{m/2} (m even), (A alpha^{k+m} + B beta^{k+m}) D^{(m-1)/2} (m odd)", Quadratic, ["k", "m"], "m >= 0, k >= 0", Pass, LITERAL, MAndK),
            ident!("T2.8b", "sum_{n=0}^{m} (-1)^n C(m,n) w_{2n+k} q^{m-n} = (-1)^m p^m w_{k+m}", Rationals, ["k", "m"], "m >= 0, k >= 0", Pass, LITERAL, MAndK),
        ]
    })
}

pub fn find_identity(id: &str) -> Option<&'static ScalarIdentity> {
    scalar_registry().iter().find(|e| e.id == id)
}

/// Value bound to a free index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Binding {
    Int(i64),
    Rat(BigRational),
}

/// Ordered name → value bindings; serialized as a JSON object in order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bindings(Vec<(String, Binding)>);

impl Bindings {
    pub fn new() -> Self {
        Bindings(Vec::new())
    }

    pub fn with(mut self, name: &str, v: i64) -> Self {
        self.set(name, Binding::Int(v));
        self
    }

    pub fn with_rat(mut self, name: &str, v: BigRational) -> Self {
        self.set(name, Binding::Rat(v));
        self
    }

    pub fn set(&mut self, name: &str, v: Binding) {
        if let Some(slot) = self.0.iter_mut().find(|(n, _)| n == name) {
            slot.1 = v;
        } else {
            self.0.push((name.to_string(), v));
        }
    }

    pub fn get(&self, name: &str) -> Option<&Binding> {
        self.0.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn int(&self, name: &str) -> Result<i64> {
        match self.get(name) {
            Some(Binding::Int(v)) => Ok(*v),
            Some(Binding::Rat(x)) if x.is_integer() => {
                i64::try_from(x.to_integer()).map_err(|_| Error::IndexOutOfRange(name.into()))
            }
            _ => Err(Error::UnboundIndex(name.into())),
        }
    }

    pub fn rat(&self, name: &str) -> Result<BigRational> {
        match self.get(name) {
            Some(Binding::Int(v)) => Ok(BigRational::from_integer((*v).into())),
            Some(Binding::Rat(x)) => Ok(x.clone()),
            None => Err(Error::UnboundIndex(name.into())),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Binding)> {
        self.0.iter().map(|(n, v)| (n.as_str(), v))
    }

    fn max_abs_int(&self) -> i64 {
        self.0
            .iter()
            .filter_map(|(_, v)| match v {
                Binding::Int(i) => Some(i.abs()),
                Binding::Rat(_) => None,
            })
            .max()
            .unwrap_or(0)
    }
}

impl Serialize for Bindings {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            match v {
                Binding::Int(i) => map.serialize_entry(k, i)?,
                Binding::Rat(x) => map.serialize_entry(k, &rat_text(x))?,
            }
        }
        map.end()
    }
}

/// Serialized exact value: a scalar, or a list (series coefficients or
/// symbol-element coordinates).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ExactValue {
    Scalar(String),
    List(Vec<String>),
}

impl ExactValue {
    pub fn of(x: &RingElement) -> Self {
        ExactValue::Scalar(x.to_string())
    }

    pub fn of_list(xs: &[RingElement]) -> Self {
        ExactValue::List(xs.iter().map(|x| x.to_string()).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkipReason {
    ZeroDenominator,
    IndexPrecondition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped(SkipReason),
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped(SkipReason::ZeroDenominator) => "skipped(zero-denominator)",
            Verdict::Skipped(SkipReason::IndexPrecondition) => "skipped(index-precondition)",
        }
    }

    pub fn from_eq(equal: bool) -> Self {
        if equal {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// One evaluated identity instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditRecord {
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    pub params: HoradamParams,
    pub bindings: Bindings,
    pub lhs: Option<ExactValue>,
    pub rhs: Option<ExactValue>,
    pub verdict: Verdict,
}

/// Pass/fail/skip tallies for one identity (and form).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub expected: Option<Expected>,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AuditSummary {
    pub records: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    /// Failures among identities whose metadata says `pass`.
    pub expected_pass_failures: usize,
    /// Keyed by `id` or `id/form`.
    pub by_identity: BTreeMap<String, Tally>,
}

impl AuditSummary {
    /// Tallies records; `expected` maps a record to its registry expectation.
    pub fn from_records(records: &[AuditRecord], expected: impl Fn(&AuditRecord) -> Option<Expected>) -> Self {
        let mut s = AuditSummary { records: records.len(), ..Default::default() };
        for r in records {
            let key = match &r.form {
                Some(f) => format!("{}/{}", r.id, f),
                None => r.id.clone(),
            };
            let exp = expected(r);
            let t = s.by_identity.entry(key).or_default();
            t.expected = exp;
            match r.verdict {
                Verdict::Pass => {
                    t.pass += 1;
                    s.pass += 1;
                }
                Verdict::Fail => {
                    t.fail += 1;
                    s.fail += 1;
                    if exp == Some(Expected::Pass) {
                        s.expected_pass_failures += 1;
                    }
                }
                Verdict::Skipped(_) => {
                    t.skipped += 1;
                    s.skipped += 1;
                }
            }
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct AuditReport {
    pub records: Vec<AuditRecord>,
    pub summary: AuditSummary,
}

/// Index ranges for grid audits.
#[derive(Clone, Debug)]
pub struct IndexGrid {
    /// Range for k and m.
    pub index_min: i64,
    pub index_max: i64,
    /// Range 0..=n_max for summation bounds n.
    pub n_max: i64,
    /// Nonzero rationals for c.
    pub c_values: Vec<BigRational>,
    /// Truncation orders T for generating-function identities.
    pub series_orders: Vec<i64>,
}

impl Default for IndexGrid {
    fn default() -> Self {
        IndexGrid {
            index_min: 0,
            index_max: 12,
            n_max: 12,
            c_values: default_c_values(),
            series_orders: vec![8],
        }
    }
}

impl IndexGrid {
    pub fn with_index_range(lo: i64, hi: i64) -> Self {
        IndexGrid { index_min: lo, index_max: hi, ..Default::default() }
    }
}

/// {−1, −1/2, 1/2, 1, 2, 3}
pub fn default_c_values() -> Vec<BigRational> {
    [(-1, 1), (-1, 2), (1, 2), (1, 1), (2, 1), (3, 1)]
        .iter()
        .map(|&(n, d)| BigRational::new(n.into(), d.into()))
        .collect()
}

/// The 54 tuples a0 ∈ {0,1,2}, a1 ∈ {1,2}, p, q ∈ {1,2,3}.
pub fn standard_param_grid() -> Vec<HoradamParams> {
    let mut out = Vec::new();
    for a0 in 0..=2 {
        for a1 in 1..=2 {
            for p in 1..=3 {
                for q in 1..=3 {
                    out.push(HoradamParams::new(a0, a1, p, q).expect("Δ > 0 on the standard grid"));
                }
            }
        }
    }
    out
}

fn rat_text(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn powr(x: &BigRational, e: i64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

fn neg_one_pow(e: i64) -> BigRational {
    if e.rem_euclid(2) == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

pub(crate) fn binomial(n: i64, k: i64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub(crate) fn factorial(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Precomputed sequence windows and Binet data for one parameter tuple.
pub struct ScalarEnv {
    params: HoradamParams,
    w: SequenceWindow,
    f: SequenceWindow,
    l: SequenceWindow,
    binet: BinetContext,
}

impl ScalarEnv {
    pub fn new(params: &HoradamParams, lo: i64, hi: i64) -> Result<Self> {
        Ok(ScalarEnv {
            params: *params,
            w: generate_window(params, lo, hi)?,
            f: generate_window(&params.pq_fibonacci(), lo, hi)?,
            l: generate_window(&params.pq_lucas(), lo, hi)?,
            binet: BinetContext::over(&RingDescriptor::Rationals, params)?,
        })
    }

    /// Window large enough for every identity with indices up to `max`.
    pub fn for_max_index(params: &HoradamParams, max: i64) -> Result<Self> {
        let hi = (max + 2) * (max + 2) + 4 * max + 40;
        Self::new(params, -(max + 10), hi)
    }

    fn lookup(win: &SequenceWindow, params: &HoradamParams, k: i64) -> BigRational {
        match win.get(k) {
            Some(x) => x.clone(),
            None => generate_window(params, k, k).expect("index within MAX_INDEX").at(k).clone(),
        }
    }

    pub fn w(&self, k: i64) -> BigRational {
        Self::lookup(&self.w, &self.params, k)
    }

    pub fn f(&self, k: i64) -> BigRational {
        Self::lookup(&self.f, &self.params.pq_fibonacci(), k)
    }

    pub fn l(&self, k: i64) -> BigRational {
        Self::lookup(&self.l, &self.params.pq_lucas(), k)
    }

    pub fn binet(&self) -> &BinetContext {
        &self.binet
    }
}

enum Outcome {
    Scalar(BigRational, BigRational),
    Ring(RingElement, RingElement),
    Series(Vec<RingElement>, Vec<RingElement>),
    ZeroDenominator(BigRational),
}

fn constraint_holds(check: Constraint, b: &Bindings) -> Result<bool> {
    Ok(match check {
        Constraint::KAtLeast(lo) => b.int("k")? >= lo,
        Constraint::NAndC => b.int("n")? >= 0 && !b.rat("c")?.is_zero(),
        Constraint::KGreaterM => {
            let (k, m) = (b.int("k")?, b.int("m")?);
            let n_ok = b.get("n").is_none() || b.int("n")? >= 0;
            let t_ok = b.get("T").is_none() || b.int("T")? >= 1;
            k > m && m >= 0 && n_ok && t_ok
        }
        Constraint::MAtLeast0 => b.int("m")? >= 0,
        Constraint::MAndK => b.int("m")? >= 0 && b.int("k")? >= 0,
    })
}

/// Largest admissible |index| in bindings; keeps big-integer growth bounded.
const MAX_BINDING: i64 = 200;

fn evaluate(id: &str, form: &str, env: &ScalarEnv, b: &Bindings) -> Result<Outcome> {
    let pp = &env.params;
    let p = rat(pp.p());
    let q = rat(pp.q());
    let w = |k: i64| env.w(k);
    let f = |k: i64| env.f(k);
    let l = |k: i64| env.l(k);
    let delta = &p * &p + rat(4) * &q;
    let pw = |x: &BigRational, e: i64| powr(x, e);
    let out = match id {
        "T2.1a" => {
            let k = b.int("k")?;
            Outcome::Scalar(&q * &q * w(k) + &p * w(k + 3), (&p * &p + &q) * w(k + 2))
        }
        "T2.1b" => {
            let k = b.int("k")?;
            Outcome::Scalar(&q * &q * w(k) + w(k + 4), (&p * &p + rat(2) * &q) * w(k + 2))
        }
        "T2.1c" => {
            let k = b.int("k")?;
            let c0 = pw(&q, 3) + pw(&p, 2) * pw(&q, 2);
            let c2 = pw(&p, 4) + rat(3) * pw(&p, 2) * &q + pw(&q, 2);
            Outcome::Scalar(c0 * w(k) + &p * w(k + 5), c2 * w(k + 2))
        }
        "T2.1d" => {
            let k = b.int("k")?;
            let c0 = pw(&p, 2) * pw(&q, 2) + rat(2) * pw(&q, 3);
            let c2 = pw(&p, 4) + rat(3) * pw(&q, 2) + rat(4) * pw(&p, 2) * &q;
            Outcome::Scalar(c0 * w(k) + w(k + 6), c2 * w(k + 2))
        }
        "T2.1e" => {
            let k = b.int("k")?;
            let c0 = pw(&p, 4) * pw(&q, 2) + rat(3) * pw(&p, 2) * pw(&q, 3) + pw(&q, 4);
            let c2 = pw(&p, 4) + rat(5) * pw(&p, 4) * &q + rat(6) * pw(&p, 2) * pw(&q, 2) + pw(&q, 3);
            Outcome::Scalar(c0 * w(k) + &p * w(k + 7), c2 * w(k + 2))
        }
        "T2.1f" => {
            let k = b.int("k")?;
            let lhs = (1..=k).fold(BigRational::zero(), |acc, i| acc + pw(&p, k - i) * &q * w(i));
            Outcome::Scalar(lhs, w(k + 2) - pw(&p, k) * w(2))
        }
        "T2.1g" => {
            let k = b.int("k")?;
            let lhs = (1..=k).fold(BigRational::zero(), |acc, i| acc + &p * pw(&q, k - i) * w(2 * i - 1));
            Outcome::Scalar(lhs, w(2 * k) - pw(&q, k) * w(0))
        }
        "T2.1h" => {
            let k = b.int("k")?;
            let lhs = (1..=k).fold(BigRational::zero(), |acc, i| acc + &p * pw(&q, k - i) * w(2 * i));
            Outcome::Scalar(lhs, w(2 * k + 1) - pw(&q, k) * w(1))
        }
        "T2.1i" | "T2.1j" | "T2.1k" => {
            let k = b.int("k")?;
            let c = BigRational::from_integer(pp.cassini_constant());
            let scale = pw(&q, 2 * k) * &c / &delta;
            match id {
                "T2.1i" => {
                    let poly = pw(&p, 3) + &p * &q + rat(4) * pw(&q, 3) - pw(&p, 2) - rat(4) * &q;
                    Outcome::Scalar(
                        pw(&w(2 * k + 3), 2) - pw(&w(2 * k + 1), 2),
                        w(2 * k) * w(2 * k + 6) - w(2 * k) * w(2 * k + 2) - scale * poly,
                    )
                }
                "T2.1j" => {
                    let poly = pw(&p, 3) + pw(&p, 2) * pw(&q, 2) + &p * &q + rat(8) * pw(&q, 3);
                    Outcome::Scalar(
                        pw(&w(2 * k + 3), 2) + &q * &q * pw(&w(2 * k + 1), 2),
                        (&p * &p + rat(2) * &q) * w(2 * k) * w(2 * k + 4) - scale * poly,
                    )
                }
                _ => {
                    let poly = pw(&p, 6) + rat(4) * pw(&p, 4) * &q + rat(3) * pw(&p, 2) * pw(&q, 2)
                        - pw(&p, 3)
                        - &p * &q
                        - rat(8) * pw(&q, 3);
                    Outcome::Scalar(
                        pw(&w(2 * k + 3), 2) - (&p * &p + rat(2) * &q) * pw(&w(2 * k + 2), 2)
                            + &q * &q * pw(&w(2 * k + 1), 2),
                        scale * poly,
                    )
                }
            }
        }
        "T2.2" => {
            let n = b.int("n")?;
            let c = b.rat("c")?;
            let lhs = pw(&c, n + 1) * w(n + 1);
            let mut rhs = rat(pp.a0());
            for i in 0..=n {
                let term = (&p - rat(1)) * w(i) + (&c - rat(1)) * w(i + 1) + &q * w(i - 1);
                rhs += pw(&c, i) * term;
            }
            Outcome::Scalar(lhs, rhs)
        }
        "T2.3a" => {
            let k = b.int("k")?;
            Outcome::Scalar(&q * f(k - 1) + f(k + 1), l(k))
        }
        "T2.3b" => {
            let k = b.int("k")?;
            Outcome::Scalar(&q * l(k - 1) + l(k + 1), &delta * f(k))
        }
        "T2.3c" => {
            let k = b.int("k")?;
            Outcome::Scalar(f(k + 2) - &q * &q * f(k - 2), &p * l(k))
        }
        "T2.3d" => {
            let k = b.int("k")?;
            Outcome::Scalar(l(k + 2) - &q * &q * l(k - 2), &p * &delta * f(k))
        }
        "T2.3e" => {
            let k = b.int("k")?;
            Outcome::Scalar(&p * f(k) + l(k), rat(2) * f(k + 1))
        }
        "T2.3f" => {
            let k = b.int("k")?;
            Outcome::Scalar(&p * l(k) + &delta * f(k), rat(2) * l(k + 1))
        }
        "T2.3g" => {
            let k = b.int("k")?;
            Outcome::Scalar(&q * &q * f(k) + &p * l(k + 2), f(k + 4))
        }
        "T2.3h" => {
            let k = b.int("k")?;
            Outcome::Scalar(&q * &q * l(k) + &p * &delta * f(k + 2), l(k + 4))
        }
        "T2.3i" => {
            let k = b.int("k")?;
            Outcome::Scalar(&p * f(k + 2) + &q * l(k), (&p * &p + rat(2) * &q) * f(k + 1))
        }
        "T2.3j" => {
            let k = b.int("k")?;
            Outcome::Scalar(&p * l(k + 2) + &q * &delta * f(k), (&p * &p + rat(2) * &q) * l(k + 1))
        }
        "T2.3k" => {
            let k = b.int("k")?;
            Outcome::Scalar(pw(&q, 3) * f(k) + f(k + 6), (&p * &p + &q) * l(k + 3))
        }
        "T2.3l" => {
            let k = b.int("k")?;
            Outcome::Scalar(pw(&q, 3) * l(k) + l(k + 6), (&p * &p + &q) * &delta * f(k + 3))
        }
        "T2.3m" => {
            let k = b.int("k")?;
            let coef = pw(&(&p * &p + &q), 2) + &p * &q * (rat(1) + &p + &q);
            let lead = if form == "no-p" { rat(1) } else { p.clone() };
            Outcome::Scalar(pw(&q, 4) * f(k) + lead * f(k + 8), coef * f(k + 4))
        }
        "T2.4a" => {
            let (k, m, t) = (b.int("k")?, b.int("m")?, b.int("T")? as usize);
            let base = RingDescriptor::Rationals;
            let ring = RingDescriptor::series(base.clone(), t)?;
            let nq_k = pw(&-q.clone(), k);
            let lhs: Vec<RingElement> =
                (0..t as i64).map(|n| RingElement::from_rational(&base, &w(k * n + m))).collect::<Result<_>>()?;
            let num = series_from_coeffs(
                &ring,
                &[RingElement::from_rational(&base, &w(m))?, RingElement::from_rational(&base, &(-&nq_k * w(m - k)))?],
            )?;
            let den = series_from_coeffs(
                &ring,
                &[
                    RingElement::one(&base),
                    RingElement::from_rational(&base, &-l(k))?,
                    RingElement::from_rational(&base, &nq_k)?,
                ],
            )?;
            let rhs = num * den.inv()?;
            Outcome::Series(lhs, rhs.coordinates().unwrap())
        }
        "T2.4b" => {
            let (k, m, t) = (b.int("k")?, b.int("m")?, b.int("T")? as usize);
            let bc = env.binet();
            let kr = bc.ring().clone();
            let ring = RingDescriptor::series(kr.clone(), t)?;
            let exp_series = |x: &RingElement| -> Result<RingElement> {
                let mut coeffs = Vec::with_capacity(t);
                let mut cur = RingElement::one(&kr);
                for n in 0..t as i64 {
                    let inv_fact = RingElement::from_rational(&kr, &BigRational::new(BigInt::one(), factorial(n)))?;
                    coeffs.push(&cur * &inv_fact);
                    cur = &cur * x;
                }
                series_from_coeffs(&ring, &coeffs)
            };
            let ea = exp_series(&bc.alpha_pow(k))?;
            let eb = exp_series(&bc.beta_pow(k))?;
            let ca = RingElement::embed(&ring, &(bc.a() * &bc.alpha_pow(m) * bc.sqrt_delta_inv()))?;
            let cb = RingElement::embed(&ring, &(bc.b() * &bc.beta_pow(m) * bc.sqrt_delta_inv()))?;
            let rhs = ca * ea - cb * eb;
            let lhs: Vec<RingElement> = (0..t as i64)
                .map(|n| RingElement::from_rational(&kr, &(w(k * n + m) / BigRational::from_integer(factorial(n)))))
                .collect::<Result<_>>()?;
            Outcome::Series(lhs, rhs.coordinates().unwrap())
        }
        "T2.5a" => {
            let (k, m, n) = (b.int("k")?, b.int("m")?, b.int("n")?);
            let nq_m = pw(&-q.clone(), m);
            let lhs = (0..=n).fold(BigRational::zero(), |acc, r| acc + w(m * r + k));
            let den = rat(1) + &nq_m - l(m);
            if den.is_zero() {
                return Ok(Outcome::ZeroDenominator(lhs));
            }
            let num = &nq_m * w(m * n + k) - w(m * n + m + k) - &nq_m * w(k - m) + w(k);
            Outcome::Scalar(lhs, num / den)
        }
        "T2.5b" => {
            let (k, m, n) = (b.int("k")?, b.int("m")?, b.int("n")?);
            let nq_m = pw(&-q.clone(), m);
            let lhs = (0..=n).fold(BigRational::zero(), |acc, r| acc + neg_one_pow(r) * w(m * r + k));
            let (num, den) = if form == "sign-corrected" {
                (
                    w(k) + &nq_m * w(k - m) + neg_one_pow(n) * (w(m * n + m + k) + &nq_m * w(m * n + k)),
                    rat(1) + &nq_m + l(m),
                )
            } else {
                let q_m = pw(&q, m);
                let s = neg_one_pow(n + 1);
                (
                    &s * &q_m * w(m * n + k) - &s * w(m * n + m + k) - &q_m * w(k - m) + w(k),
                    rat(1) + &nq_m - neg_one_pow(m) * l(m),
                )
            };
            if den.is_zero() {
                return Ok(Outcome::ZeroDenominator(lhs));
            }
            Outcome::Scalar(lhs, num / den)
        }
        "T2.6a" => {
            let (k, m, n) = (b.int("k")?, b.int("m")?, b.int("n")?);
            let nq_m = pw(&-q.clone(), m);
            let q_2m = pw(&q, 2 * m);
            let lhs = (0..=n).fold(BigRational::zero(), |acc, r| acc + rat(r) * w(m * r + k));
            let den = rat(1) + &nq_m - l(m);
            if den.is_zero() {
                return Ok(Outcome::ZeroDenominator(lhs));
            }
            let t1 = ((rat(1) + &nq_m) * w(m * n + m + k) - w(m * n + 2 * m + k) - &nq_m * w(m * n + k)) / &den;
            let t2 = (w(m * n + m + k) + &q_2m * w(m * n + k - m) - rat(2) * &nq_m * w(m * n + k)) / (&den * &den);
            Outcome::Scalar(lhs, rat(n) * (t1 - t2))
        }
        "T2.6b" => {
            let (k, m, n) = (b.int("k")?, b.int("m")?, b.int("n")?);
            let nq_m = pw(&-q.clone(), m);
            let q_2m = pw(&q, 2 * m);
            let lhs = (0..=n).fold(BigRational::zero(), |acc, r| acc + neg_one_pow(r - 1) * rat(r) * w(m * r + k));
            let den = rat(1) + &nq_m - l(m);
            if den.is_zero() {
                return Ok(Outcome::ZeroDenominator(lhs));
            }
            let d2 = &den * &den;
            let nn = rat(n);
            let t1 = ((&nn - rat(1) - rat(2) * &nn * &nq_m) * w(m * n + m + k) + &q_2m * (&nn - rat(1)) * w(m * n + k - m)) / &d2;
            let t2 = (&nn * w(m * n + 2 * m + k) + (&nn * &q_2m - rat(2) * &nq_m * (&nn - rat(1))) * w(m * n + k)) / &d2;
            Outcome::Scalar(lhs, neg_one_pow(n + 1) * (t1 - t2))
        }
        "T2.7" => {
            let m = b.int("m")?;
            let lhs = (0..=m).fold(BigRational::zero(), |acc, k| {
                acc + BigRational::from_integer(binomial(m, k)) * pw(&p, k) * w(k) * pw(&q, m - k)
            });
            Outcome::Scalar(lhs, w(2 * m))
        }
        "T2.8a" => {
            let (k, m) = (b.int("k")?, b.int("m")?);
            let bc = env.binet();
            let kr = bc.ring();
            let lhs = (0..=m).fold(BigRational::zero(), |acc, n| {
                acc + BigRational::from_integer(binomial(m, n)) * w(2 * n + k) * pw(&q, m - n)
            });
            let delta_e = RingElement::from_rational(kr, &delta)?;
            let rhs = if m % 2 == 0 {
                RingElement::from_rational(kr, &w(k + m))? * delta_e.pow((m / 2) as u64)
            } else {
                (bc.a() * &bc.alpha_pow(k + m) + bc.b() * &bc.beta_pow(k + m)) * delta_e.pow(((m - 1) / 2) as u64)
            };
            Outcome::Ring(RingElement::from_rational(kr, &lhs)?, rhs)
        }
        "T2.8b" => {
            let (k, m) = (b.int("k")?, b.int("m")?);
            let lhs = (0..=m).fold(BigRational::zero(), |acc, n| {
                acc + neg_one_pow(n) * BigRational::from_integer(binomial(m, n)) * w(2 * n + k) * pw(&q, m - n)
            });
            Outcome::Scalar(lhs, neg_one_pow(m) * pw(&p, m) * w(k + m))
        }
        other => return Err(Error::InvalidParams(format!("unknown identity {other}"))),
    };
    Ok(out)
}

fn record_from(meta: &ScalarIdentity, form: &str, params: &HoradamParams, b: &Bindings, out: Outcome) -> AuditRecord {
    let q = RingDescriptor::Rationals;
    let show = |x: &BigRational| ExactValue::of(&RingElement::from_rational(&q, x).expect("rational"));
    let (lhs, rhs, verdict) = match out {
        Outcome::Scalar(l, r) => {
            let v = Verdict::from_eq(l == r);
            (Some(show(&l)), Some(show(&r)), v)
        }
        Outcome::Ring(l, r) => {
            let v = Verdict::from_eq(l == r);
            (Some(ExactValue::of(&l)), Some(ExactValue::of(&r)), v)
        }
        Outcome::Series(l, r) => {
            let v = Verdict::from_eq(l == r);
            (Some(ExactValue::of_list(&l)), Some(ExactValue::of_list(&r)), v)
        }
        Outcome::ZeroDenominator(l) => (Some(show(&l)), None, Verdict::Skipped(SkipReason::ZeroDenominator)),
    };
    AuditRecord {
        id: meta.id.to_string(),
        kind: None,
        form: if meta.forms.len() > 1 { Some(form.to_string()) } else { None },
        algebra: None,
        params: *params,
        bindings: b.clone(),
        lhs,
        rhs,
        verdict,
    }
}

fn eval_with_env(meta: &ScalarIdentity, form: &str, env: &ScalarEnv, b: &Bindings) -> Result<AuditRecord> {
    for name in meta.indices {
        if b.get(name).is_none() {
            return Err(Error::UnboundIndex((*name).to_string()));
        }
    }
    if b.max_abs_int() > MAX_BINDING {
        return Err(Error::IndexOutOfRange(format!("bindings exceed {MAX_BINDING}")));
    }
    if !meta.forms.contains(&form) {
        return Err(Error::InvalidParams(format!("{} has no form {form:?}", meta.id)));
    }
    if !constraint_holds(meta.check, b)? {
        let mut rec = record_from(meta, form, &env.params, b, Outcome::Scalar(rat(0), rat(0)));
        rec.lhs = None;
        rec.rhs = None;
        rec.verdict = Verdict::Skipped(SkipReason::IndexPrecondition);
        return Ok(rec);
    }
    let out = evaluate(meta.id, form, env, b)?;
    Ok(record_from(meta, form, &env.params, b, out))
}

/// Evaluates one identity (as written) on one parameter tuple.
pub fn eval_scalar_identity(id: &str, params: &HoradamParams, bindings: &Bindings) -> Result<AuditRecord> {
    eval_scalar_identity_form(id, "literal", params, bindings)
}

/// Evaluates a named form of an identity (see [`ScalarIdentity::forms`]).
pub fn eval_scalar_identity_form(id: &str, form: &str, params: &HoradamParams, bindings: &Bindings) -> Result<AuditRecord> {
    let meta = find_identity(id).ok_or_else(|| Error::InvalidParams(format!("unknown identity {id}")))?;
    let env = ScalarEnv::for_max_index(params, bindings.max_abs_int().min(MAX_BINDING))?;
    eval_with_env(meta, form, &env, bindings)
}

fn range(lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi).collect()
}

/// All admissible bindings for an identity on a grid, in lexicographic order
/// of the (alphabetical) index tuple.
pub fn grid_bindings(meta: &ScalarIdentity, grid: &IndexGrid) -> Vec<Bindings> {
    let mut out = vec![Bindings::new()];
    for &name in meta.indices {
        let mut next = Vec::new();
        for b in &out {
            if name == "c" {
                let mut cs = grid.c_values.clone();
                cs.sort();
                for c in cs {
                    next.push(b.clone().with_rat("c", c));
                }
                continue;
            }
            let values = match name {
                "n" => range(0, grid.n_max),
                "T" => grid.series_orders.clone(),
                _ => range(grid.index_min, grid.index_max),
            };
            for v in values {
                next.push(b.clone().with(name, v));
            }
        }
        out = next;
    }
    out.into_iter().filter(|b| constraint_holds(meta.check, b).unwrap_or(false)).collect()
}

fn expected_of(rec: &AuditRecord) -> Option<Expected> {
    find_identity(&rec.id).map(|m| m.expected)
}

/// Audits every registry entry (optionally restricted to `ids`) over the
/// Cartesian product of parameter tuples and grid bindings. Order: registry,
/// then parameter tuple, then bindings, then form.
pub fn run_scalar_audit_filtered(params: &[HoradamParams], grid: &IndexGrid, ids: Option<&[&str]>) -> Result<AuditReport> {
    if params.is_empty() {
        return Err(Error::InvalidParams("parameter grid is empty".into()));
    }
    if grid.index_min > grid.index_max || grid.n_max < 0 || grid.series_orders.is_empty() {
        return Err(Error::InvalidParams("index grid is empty".into()));
    }
    let max = grid.index_max.max(grid.n_max).max(grid.series_orders.iter().copied().max().unwrap_or(1));
    if max > MAX_BINDING {
        return Err(Error::IndexOutOfRange(format!("grid exceeds {MAX_BINDING}")));
    }
    let envs: Vec<ScalarEnv> = params
        .par_iter()
        .map(|p| ScalarEnv::for_max_index(p, max))
        .collect::<Result<_>>()?;
    let entries: Vec<&ScalarIdentity> = scalar_registry()
        .iter()
        .filter(|m| ids.is_none_or(|ids| ids.contains(&m.id)))
        .collect();
    let jobs: Vec<(&ScalarIdentity, &ScalarEnv)> =
        entries.iter().flat_map(|m| envs.iter().map(move |e| (*m, e))).collect();
    let chunks: Vec<Vec<AuditRecord>> = jobs
        .par_iter()
        .map(|(meta, env)| {
            let mut recs = Vec::new();
            for b in grid_bindings(meta, grid) {
                for form in meta.forms {
                    recs.push(eval_with_env(meta, form, env, &b)?);
                }
            }
            Ok(recs)
        })
        .collect::<Result<_>>()?;
    let records: Vec<AuditRecord> = chunks.into_iter().flatten().collect();
    let summary = AuditSummary::from_records(&records, expected_of);
    Ok(AuditReport { records, summary })
}

pub fn run_scalar_audit(params: &[HoradamParams], grid: &IndexGrid) -> Result<AuditReport> {
    run_scalar_audit_filtered(params, grid, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fib() -> HoradamParams {
        HoradamParams::fibonacci()
    }

    #[test]
    fn registry_shape() {
        let reg = scalar_registry();
        assert_eq!(reg.len(), 34);
        assert!(find_identity("T2.1e").is_some());
        assert!(find_identity("T2.3a").is_some());
        let mut ids: Vec<_> = reg.iter().map(|e| e.id).collect();
        ids.dedup();
        assert_eq!(ids.len(), 34);
        for (prefix, count) in [("T2.1", 11), ("T2.2", 1), ("T2.3", 13), ("T2.4", 2), ("T2.5", 2), ("T2.6", 2), ("T2.7", 1), ("T2.8", 2)] {
            assert_eq!(reg.iter().filter(|e| e.id.starts_with(prefix)).count(), count, "{prefix}");
        }
    }

    #[test]
    fn t21a_fibonacci_k5() {
        let r = eval_scalar_identity("T2.1a", &fib(), &Bindings::new().with("k", 5)).unwrap();
        assert_eq!(r.lhs, Some(ExactValue::Scalar("26".into())));
        assert_eq!(r.rhs, Some(ExactValue::Scalar("26".into())));
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn t27_fibonacci_m3() {
        let r = eval_scalar_identity("T2.7", &fib(), &Bindings::new().with("m", 3)).unwrap();
        assert_eq!(r.lhs, Some(ExactValue::Scalar("8".into())));
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn t22_base_case() {
        let b = Bindings::new().with_rat("c", rat(1)).with("n", 0);
        let r = eval_scalar_identity("T2.2", &fib(), &b).unwrap();
        assert_eq!(r.lhs, Some(ExactValue::Scalar("1".into())));
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn unbound_and_precondition() {
        assert_eq!(eval_scalar_identity("T2.1a", &fib(), &Bindings::new()), Err(Error::UnboundIndex("k".into())));
        let b = Bindings::new().with("k", 1).with("m", 2).with("n", 3);
        let r = eval_scalar_identity("T2.5a", &fib(), &b).unwrap();
        assert_eq!(r.verdict, Verdict::Skipped(SkipReason::IndexPrecondition));
    }

    #[test]
    fn zero_denominator_is_skipped() {
        // m = 0: 1 + 1 - L_0 = 0
        let b = Bindings::new().with("k", 3).with("m", 0).with("n", 2);
        let r = eval_scalar_identity("T2.5a", &fib(), &b).unwrap();
        assert_eq!(r.verdict, Verdict::Skipped(SkipReason::ZeroDenominator));
        assert!(r.rhs.is_none());
    }

    #[test]
    fn grid_example_t21a() {
        let grid = IndexGrid::with_index_range(2, 8);
        let rep = run_scalar_audit_filtered(&[fib()], &grid, Some(&["T2.1a"])).unwrap();
        assert_eq!(rep.summary.pass, 7);
        assert_eq!(rep.summary.fail, 0);
    }

    #[test]
    fn t25b_literal_fails_for_even_m_only() {
        let p = HoradamParams::new(1, 2, 1, 1).unwrap();
        let odd = Bindings::new().with("k", 4).with("m", 1).with("n", 3);
        assert_eq!(eval_scalar_identity("T2.5b", &p, &odd).unwrap().verdict, Verdict::Pass);
        let even = Bindings::new().with("k", 4).with("m", 2).with("n", 3);
        assert_eq!(eval_scalar_identity("T2.5b", &p, &even).unwrap().verdict, Verdict::Fail);
        let fixed = eval_scalar_identity_form("T2.5b", "sign-corrected", &p, &even).unwrap();
        assert_eq!(fixed.verdict, Verdict::Pass);
    }

    #[test]
    fn t23m_forms_differ() {
        let p = HoradamParams::new(0, 1, 2, 1).unwrap();
        let b = Bindings::new().with("k", 3);
        let lit = eval_scalar_identity_form("T2.3m", "literal", &p, &b).unwrap();
        let nop = eval_scalar_identity_form("T2.3m", "no-p", &p, &b).unwrap();
        assert_ne!(lit.lhs, nop.lhs);
        assert_eq!(lit.form.as_deref(), Some("literal"));
    }

    #[test]
    fn generating_functions_fibonacci() {
        let b = Bindings::new().with("T", 6).with("k", 2).with("m", 1);
        for id in ["T2.4a", "T2.4b"] {
            let r = eval_scalar_identity(id, &fib(), &b).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{id}: {:?}", r);
        }
        let r = eval_scalar_identity("T2.4a", &fib(), &b).unwrap();
        // w_1, w_3, w_5, ... of Fibonacci
        assert_eq!(
            r.lhs,
            Some(ExactValue::List(["1", "2", "5", "13", "34", "89"].iter().map(|s| s.to_string()).collect()))
        );
    }

    #[test]
    fn t28_both_parities() {
        let p = HoradamParams::new(2, 1, 1, 2).unwrap();
        for m in 0..6 {
            for id in ["T2.8a", "T2.8b"] {
                let b = Bindings::new().with("k", 2).with("m", m);
                assert_eq!(eval_scalar_identity(id, &p, &b).unwrap().verdict, Verdict::Pass, "{id} m={m}");
            }
        }
    }

    #[test]
    fn verdict_is_symmetric() {
        let p = HoradamParams::new(1, 2, 3, 1).unwrap();
        for meta in scalar_registry() {
            let grid = IndexGrid { index_min: 0, index_max: 4, n_max: 2, ..Default::default() };
            for b in grid_bindings(meta, &grid).into_iter().take(3) {
                let r = eval_scalar_identity(meta.id, &p, &b).unwrap();
                let swapped = match (&r.lhs, &r.rhs) {
                    (Some(l), Some(rr)) => Verdict::from_eq(rr == l),
                    _ => r.verdict,
                };
                assert_eq!(swapped, r.verdict, "{}", meta.id);
            }
        }
    }

    #[test]
    fn json_shape() {
        let r = eval_scalar_identity("T2.2", &fib(), &Bindings::new().with_rat("c", BigRational::new(1.into(), 2.into())).with("n", 1)).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.starts_with(r#"{"id":"T2.2","params":{"a0":0,"a1":1,"p":1,"q":1},"bindings":{"c":"1/2","n":1},"#), "{s}");
        assert!(s.ends_with(r#""verdict":"pass"}"#));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(6, 0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
