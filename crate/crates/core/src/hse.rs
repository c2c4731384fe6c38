//! Horadam symbol elements `W_k = Σ_l w_{k+l} e_l` and their identities.
//!
//! Linear identities act coordinatewise. Multiplicative ones use the
//! noncommutative algebra product with factor order exactly as written, and
//! need √Δ in the coefficient field for the bar elements `α̲ = Σ α^l e_l`,
//! `β̲ = Σ β^l e_l`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::horadam::{generate_window, BinetContext, HoradamParams, SequenceWindow};
use crate::identities::{
    binomial, default_c_values, eval_scalar_identity_form, factorial, AuditRecord, AuditReport, AuditSummary, Bindings,
    Binding, Expected, ExactValue, SkipReason, Verdict,
};
use crate::rings::{roots_mod, series_from_coeffs, RingDescriptor, RingElement};
use crate::symalg::{SymElement, SymbolAlgebra};

/// Sequence values cached around the origin; anything outside is generated on demand.
const WINDOW_LO: i64 = -64;
const WINDOW_HI: i64 = 256;

/// Parameters, algebra, and (when √Δ is available) Binet data over the
/// algebra's field.
#[derive(Clone)]
pub struct HseContext {
    params: HoradamParams,
    alg: SymbolAlgebra,
    binet: Option<BinetContext>,
    w: SequenceWindow,
    f: SequenceWindow,
    l: SequenceWindow,
}

impl std::fmt::Debug for HseContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HseContext({}, {:?})", self.params, self.alg)
    }
}

/// `α̲` and `β̲`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarElements {
    pub alpha: SymElement,
    pub beta: SymElement,
}

impl HseContext {
    /// Context without Binet data; the field only has to accept the
    /// sequence values.
    pub fn new(params: &HoradamParams, alg: SymbolAlgebra) -> Result<Self> {
        Ok(HseContext {
            params: *params,
            alg,
            binet: None,
            w: generate_window(params, WINDOW_LO, WINDOW_HI)?,
            f: generate_window(&params.pq_fibonacci(), WINDOW_LO, WINDOW_HI)?,
            l: generate_window(&params.pq_lucas(), WINDOW_LO, WINDOW_HI)?,
        })
    }

    /// Degree-N algebra `(a, b)` over `Q(ζ_N)` with √Δ adjoined.
    pub fn rational(params: &HoradamParams, n: usize, a: i64, b: i64) -> Result<Self> {
        let small = SymbolAlgebra::cyclotomic(&RingDescriptor::Rationals, n, a, b)?;
        let binet = BinetContext::over(small.field(), params)?;
        let alg = small.extend_scalars(binet.ring())?;
        let mut ctx = HseContext::new(params, alg)?;
        ctx.binet = Some(binet);
        Ok(ctx)
    }

    /// Degree-N algebra `(a, b)` over `Z_r(ε)`. Binet data is attached when
    /// Δ is a nonzero square in `Z_r`.
    pub fn modular(params: &HoradamParams, r: u64, n: usize, a: i64, b: i64) -> Result<Self> {
        let alg = SymbolAlgebra::cyclotomic(&RingDescriptor::mod_prime(r)?, n, a, b)?;
        let mut ctx = HseContext::new(params, alg)?;
        let d = RingElement::from_bigint(&RingDescriptor::mod_prime(r)?, &params.delta()).as_residue().expect("residue");
        if d != 0 {
            if let Some(&root) = roots_mod(&[(r - d) % r, 0, 1], r).first() {
                let v = ctx.reduce_i64(root as i64);
                ctx.binet = BinetContext::with_sqrt(ctx.alg.field().clone(), v, params).ok();
            }
        }
        Ok(ctx)
    }

    pub fn params(&self) -> &HoradamParams {
        &self.params
    }

    pub fn algebra(&self) -> &SymbolAlgebra {
        &self.alg
    }

    pub fn field(&self) -> &RingDescriptor {
        self.alg.field()
    }

    pub fn binet(&self) -> Result<&BinetContext> {
        self.binet
            .as_ref()
            .ok_or_else(|| Error::FieldTooSmall(format!("{} has no square root of Δ", self.alg.field())))
    }

    /// Image of a rational in the field.
    pub fn reduce(&self, x: &BigRational) -> Result<RingElement> {
        RingElement::from_rational(self.alg.field(), x)
            .map_err(|_| Error::ReductionUndefined(format!("{} in {}", x, self.alg.field())))
    }

    pub fn reduce_i64(&self, n: i64) -> RingElement {
        RingElement::from_i64(self.alg.field(), n)
    }

    fn seq(win: &SequenceWindow, params: &HoradamParams, k: i64) -> Result<BigRational> {
        match win.get(k) {
            Some(x) => Ok(x.clone()),
            None => Ok(generate_window(params, k, k)?.at(k).clone()),
        }
    }

    pub fn w(&self, k: i64) -> Result<BigRational> {
        Self::seq(&self.w, &self.params, k)
    }

    pub fn fib(&self, k: i64) -> Result<BigRational> {
        Self::seq(&self.f, &self.params.pq_fibonacci(), k)
    }

    pub fn luc(&self, k: i64) -> Result<BigRational> {
        Self::seq(&self.l, &self.params.pq_lucas(), k)
    }

    fn element_from(&self, k: i64, get: impl Fn(i64) -> Result<BigRational>) -> Result<SymElement> {
        let coeffs: Vec<RingElement> =
            (0..self.alg.dim() as i64).map(|l| self.reduce(&get(k + l)?)).collect::<Result<_>>()?;
        self.alg.element(&coeffs)
    }

    /// `F_{p,q,k}` as a symbol element.
    pub fn fib_element(&self, k: i64) -> Result<SymElement> {
        self.element_from(k, |i| self.fib(i))
    }

    /// `L_{p,q,k}` as a symbol element.
    pub fn lucas_element(&self, k: i64) -> Result<SymElement> {
        self.element_from(k, |i| self.luc(i))
    }

    /// Binet right-hand side `(A α̲ α^k − B β̲ β^k)/(α−β)` with scalar products only.
    pub fn binet_w(&self, k: i64) -> Result<SymElement> {
        let bc = self.binet()?;
        let bars = bar_elements(self)?;
        let ca = &(bc.a() * &bc.alpha_pow(k)) * bc.sqrt_delta_inv();
        let cb = &(bc.b() * &bc.beta_pow(k)) * bc.sqrt_delta_inv();
        bars.alpha.scale(&ca)?.sub(&bars.beta.scale(&cb)?)
    }
}

/// `W_k` with coefficient l equal to the image of `w_{k+l}`.
pub fn build_w(ctx: &HseContext, k: i64) -> Result<SymElement> {
    ctx.element_from(k, |i| ctx.w(i))
}

pub fn bar_elements(ctx: &HseContext) -> Result<BarElements> {
    let bc = ctx.binet()?;
    let d = ctx.alg.dim() as i64;
    let alpha: Vec<RingElement> = (0..d).map(|l| bc.alpha_pow(l)).collect();
    let beta: Vec<RingElement> = (0..d).map(|l| bc.beta_pow(l)).collect();
    Ok(BarElements { alpha: ctx.alg.element(&alpha)?, beta: ctx.alg.element(&beta)? })
}

/// Whether `α̲β̲ = β̲α̲`.
pub fn bars_commute(ctx: &HseContext) -> Result<bool> {
    let b = bar_elements(ctx)?;
    Ok(b.alpha.mul(&b.beta)? == b.beta.mul(&b.alpha)?)
}

/// `W_{k+1} = p W_k + q W_{k−1}`.
pub fn recurrence_holds(ctx: &HseContext, k: i64) -> Result<bool> {
    let p = ctx.reduce_i64(ctx.params.p());
    let q = ctx.reduce_i64(ctx.params.q());
    let rhs = build_w(ctx, k)?.scale(&p)?.add(&build_w(ctx, k - 1)?.scale(&q)?)?;
    Ok(build_w(ctx, k + 1)? == rhs)
}

/// Kind of a symbol identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityKind {
    Linear,
    Multiplicative,
    Series,
}

impl IdentityKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            IdentityKind::Linear => "linear",
            IdentityKind::Multiplicative => "multiplicative",
            IdentityKind::Series => "series",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shift {
    /// Coordinate l is the scalar identity for the sequence seeded at (w_l, w_{l+1}).
    Params,
    /// Coordinate l is the scalar identity at k + l.
    Index,
}

#[derive(Clone, Debug)]
pub struct SymbolIdentity {
    pub id: &'static str,
    pub kind: IdentityKind,
    pub statement: &'static str,
    pub indices: &'static [&'static str],
    pub constraint: &'static str,
    pub expected: Expected,
    pub forms: &'static [&'static str],
    /// Whether the bar elements (√Δ in the field) are needed.
    pub needs_sqrt: bool,
    /// Scalar identity that each coordinate reduces to, with form pairs
    /// (symbol form, scalar form).
    pub counterpart: Option<(&'static str, &'static [(&'static str, &'static str)])>,
    shift: Shift,
}

const LIT: &[&str] = &["literal"];
const LIT_PAIR: &[(&str, &str)] = &[("literal", "literal")];

macro_rules! sym {
    ($id:expr, $kind:ident, $stmt:expr, [$($ix:expr),*], $cons:expr, $exp:ident, $forms:expr, $sqrt:expr) => {
        SymbolIdentity {
            id: $id,
            kind: IdentityKind::$kind,
            statement: $stmt,
            indices: &[$($ix),*],
            constraint: $cons,
            expected: Expected::$exp,
            forms: $forms,
            needs_sqrt: $sqrt,
            counterpart: None,
            shift: Shift::Params,
        }
    };
    ($id:expr, $kind:ident, $stmt:expr, [$($ix:expr),*], $cons:expr, $exp:ident, $forms:expr, $sqrt:expr, $cp:expr, $pairs:expr, $shift:ident) => {
        SymbolIdentity {
            id: $id,
            kind: IdentityKind::$kind,
            statement: $stmt,
            indices: &[$($ix),*],
            constraint: $cons,
            expected: Expected::$exp,
            forms: $forms,
            needs_sqrt: $sqrt,
            counterpart: Some(($cp, $pairs)),
            shift: Shift::$shift,
        }
    };
}

/// Every symbol-element statement, one tag each, in stable order.
pub fn symbol_registry() -> &'static [SymbolIdentity] {
    static REG: std::sync::OnceLock<Vec<SymbolIdentity>> = std::sync::OnceLock::new();
    REG.get_or_init(|| {
        vec![
            sym!("T3.1", Linear, "W_k = (A α̲ α^k − B β̲ β^k)/(α−β)", ["k"], "k >= 0", Pass, LIT, true),
            sym!("T3.2a", Linear, "q^2 W_k + p W_{k+3} = (p^2+q) W_{k+2}", ["k"], "k >= 0", Pass, LIT, false, "T2.1a", LIT_PAIR, Params),
            sym!("T3.2b", Linear, "q^2 W_k + W_{k+4} = (p^2+2q) W_{k+2}", ["k"], "k >= 0", Pass, LIT, false, "T2.1b", LIT_PAIR, Params),
            sym!("T3.2c", Linear, "(q^3+p^2q^2) W_k + p W_{k+5} = (p^4+3p^2q+q^2) W_{k+2}", ["k"], "k >= 0", Pass, LIT, false, "T2.1c", LIT_PAIR, Params),
            sym!("T3.2d", Linear, "(p^2q^2+2q^3) W_k + W_{k+6} = (p^4+3q^2+4p^2q) W_{k+2}", ["k"], "k >= 0", Pass, LIT, false, "T2.1d", LIT_PAIR, Params),
            sym!("T3.2e", Linear, "(p^4q^2+3p^2q^3+q^4) W_k + p W_{k+7} = (p^4+5p^4q+6p^2q^2+q^3) W_{k+2}", ["k"], "k >= 0", Audit, LIT, false, "T2.1e", LIT_PAIR, Params),
            sym!("T3.3a", Linear, "sum_{i=1}^{k} p^{k-i} q W_i = W_{k+2} - p^k W_2", ["k"], "k >= 1", Pass, LIT, false, "T2.1f", LIT_PAIR, Params),
            sym!("T3.3b", Linear, "sum_{i=1}^{k} p q^{k-i} W_{2i-1} = W_{2k} - q^k W_0", ["k"], "k >= 1", Pass, LIT, false, "T2.1g", LIT_PAIR, Params),
            sym!("T3.3c", Linear, "sum_{i=1}^{k} p q^{k-i} W_{2i} = W_{2k+1} - q^k W_1", ["k"], "k >= 1", Pass, LIT, false, "T2.1h", LIT_PAIR, Params),
            sym!("T3.4", Linear, "c^{n+1} W_{n+1} = W_0 + sum_{i=0}^{n} c^i ((p-1) W_i + (c-1) W_{i+1} + q W_{i-1})", ["c", "n"], "n >= 0, c != 0", Pass, LIT, false, "T2.2", LIT_PAIR, Params),
            sym!("T3.5", Linear, "W_{mn} = F_d^{-n} sum_{j=0}^{n} C(n,j) (-q)^{m(n-j)} F_{d-m}^{n-j} F_m^j W_{dj}", ["d", "m", "n"], "d >= 1, m >= 0, n >= 0", Pass, LIT, false),
            sym!("T3.6a", Linear, "q F_{k-1} + F_{k+1} = L_k", ["k"], "k >= 1", Pass, LIT, false, "T2.3a", LIT_PAIR, Index),
            sym!("T3.6b", Linear, "q L_{k-1} + L_{k+1} = (p^2+4q) F_k", ["k"], "k >= 1", Pass, LIT, false, "T2.3b", LIT_PAIR, Index),
            sym!("T3.6c", Linear, "F_{k+2} - q^2 F_{k-2} = p L_k", ["k"], "k >= 2", Pass, LIT, false, "T2.3c", LIT_PAIR, Index),
            sym!("T3.6d", Linear, "L_{k+2} - q^2 L_{k-2} = p (p^2+4q) F_k", ["k"], "k >= 2", Pass, LIT, false, "T2.3d", LIT_PAIR, Index),
            sym!("T3.6e", Linear, "p F_k + L_k = 2 F_{k+1}", ["k"], "k >= 0", Pass, LIT, false, "T2.3e", LIT_PAIR, Index),
            sym!("T3.6f", Linear, "p L_k + (p^2+4q) F_k = 2 L_{k+1}", ["k"], "k >= 0", Pass, LIT, false, "T2.3f", LIT_PAIR, Index),
            sym!("T3.6g", Linear, "q^2 F_k + p L_{k+2} = F_{k+4}", ["k"], "k >= 0", Pass, LIT, false, "T2.3g", LIT_PAIR, Index),
            sym!("T3.6h", Linear, "q^2 L_k + p (p^2+4q) F_{k+2} = L_{k+4}", ["k"], "k >= 0", Pass, LIT, false, "T2.3h", LIT_PAIR, Index),
            sym!("T3.6i", Linear, "p F_{k+2} + q L_k = (p^2+2q) F_{k+1}", ["k"], "k >= 0", Pass, LIT, false, "T2.3i", LIT_PAIR, Index),
            sym!("T3.6j", Linear, "p L_{k+2} + q (p^2+4q) F_k = (p^2+2q) L_{k+1}", ["k"], "k >= 0", Pass, LIT, false, "T2.3j", LIT_PAIR, Index),
            sym!("T3.6k", Linear, "q^3 F_k + F_{k+6} = (p^2+q) L_{k+3}", ["k"], "k >= 0", Pass, LIT, false, "T2.3k", LIT_PAIR, Index),
            sym!("T3.6l", Linear, "q^3 L_k + L_{k+6} = (p^2+q)(p^2+4q) F_{k+3}", ["k"], "k >= 0", Pass, LIT, false, "T2.3l", LIT_PAIR, Index),
            sym!("T3.6m", Linear, "q^4 F_k + F_{k+8} = ((p^2+q)^2 + pq(1+p+q)) F_{k+4}", ["k"], "k >= 0", Audit, &["literal", "with-p"], false, "T2.3m", &[("literal", "no-p"), ("with-p", "literal")], Index),
            sym!("T3.7", Series, "sum_n W_{kn+m} s^n = (W_m - (-q)^k W_{m-k} s)/(1 - (alpha^k+beta^k) s + (-q)^k s^2)", ["T", "k", "m"], "k > m >= 0, T >= 4", Pass, LIT, false),
            sym!("C3.8", Series, "sum_n W_n s^n = (W_0 + (W_1 - p W_0) s)/(1 - p s - q s^2)", ["T"], "T >= 4", Pass, LIT, false),
            sym!("T3.9", Series, "sum_n W_{kn+m} s^n/n! = (A α̲ alpha^m e^{alpha^k s} - B β̲ beta^m e^{beta^k s})/(alpha - beta)", ["T", "k", "m"], "k >= 0, m >= 0, T >= 4", Pass, LIT, true),
            sym!("C3.10", Series, "sum_n W_n s^n/n! = (A α̲ e^{alpha s} - B β̲ e^{beta s})/(alpha - beta)", ["T"], "T >= 4", Pass, LIT, true),
            sym!("T3.11a", Multiplicative, "W_{n-r} W_{n+r} - W_n^2 = AB(-q)^{n-r}(alpha^r-beta^r)(beta^r α̲β̲ - alpha^r β̲α̲)/Δ", ["n", "r"], "n >= r >= 0", Pass, LIT, true),
            sym!("T3.11b", Multiplicative, "W_{n+r} W_{n-r} - W_n^2 = AB(-q)^{n-r}(alpha^r-beta^r)(beta^r β̲α̲ - alpha^r α̲β̲)/Δ", ["n", "r"], "n >= r >= 0", Pass, LIT, true),
            sym!("C3.12a", Multiplicative, "W_{n-1} W_{n+1} - W_n^2 = AB(-q)^{n-1}(beta α̲β̲ - alpha β̲α̲)/(alpha-beta)", ["n"], "n >= 1", Pass, LIT, true),
            sym!("C3.12b", Multiplicative, "W_{n+1} W_{n-1} - W_n^2 = AB(-q)^{n-1}(beta β̲α̲ - α̲β̲)/(alpha-beta)", ["n"], "n >= 1", Audit, &["literal", "intent"], true),
            sym!("T3.13a", Multiplicative, "W_n W_{m+1} - W_{n+1} W_m = (-q)^m AB (alpha^{n-m} α̲β̲ - beta^{n-m} β̲α̲)/(alpha-beta)", ["m", "n"], "n >= m >= 0", Pass, LIT, true),
            sym!("T3.13b", Multiplicative, "W_{m+1} W_n - W_m W_{n+1} = (-q)^m AB (alpha^{n-m} β̲α̲ - beta^{n-m} α̲β̲)/(alpha-beta)", ["m", "n"], "n >= m >= 0", Pass, LIT, true),
            sym!("T3.14", Multiplicative, "W_m W_{n+1} + q W_{m-1} W_n = (A^2 α̲^2 alpha^{m+n} - B^2 β̲^2 beta^{m+n})/(alpha-beta)", ["m", "n"], "m >= 1, n >= 0", Pass, &["literal", "reversed"], true),
            sym!("T3.15a", Multiplicative, "(W_a W_b - (-q)^k W_{a-k} W_{b-k})/F_k = (A^2 α̲^2 alpha^{a+b-k} - B^2 β̲^2 beta^{a+b-k})/(alpha-beta)", ["a", "b", "k"], "a > k, b > k, k >= 0", Pass, LIT, true),
            sym!("T3.15b", Multiplicative, "(W_a W_b W_c - L_k (-q)^k W_{a-k} W_{b-k} W_{c-k} + (-q)^{3k} W_{a-2k} W_{b-2k} W_{c-2k})/(L_k F_k^2) = (A^3 α̲^3 alpha^{a+b+c-3k} - B^3 β̲^3 beta^{a+b+c-3k})/(alpha-beta)", ["a", "b", "c", "k"], "a > k, b > k, c > k, k >= 0", Pass, LIT, true),
            sym!("T3.16", Multiplicative, "(-q)^r [W_a W_b - W_c W_d] = W_{a+r} W_{b+r} - W_{c+r} W_{d+r}", ["a", "b", "c", "d", "r"], "a + b = c + d, all >= 0", Pass, LIT, true),
            sym!("T3.17", Multiplicative, "(-q)^r [L_k (W_{a+r}W_{b+r}W_{c+r} - W_{d+r}W_{e+r}W_{f+r}) - q^{2r}(W_a W_b W_c - W_a W_b W_c)] = W_{a+2r}W_{b+2r}W_{c+2r} - W_{d+2r}W_{e+2r}W_{f+2r}", ["a", "b", "c", "d", "e", "f", "k", "r"], "a + b + c = d + e + f, all >= 0", Audit, &["literal", "intent"], true),
            sym!("T3.18a", Linear, "sum_{r=0}^{n} W_{mr+k} = ((-q)^m W_{mn+k} - W_{mn+m+k} - (-q)^m W_{k-m} + W_k)/(1 + (-q)^m - L_m)", ["k", "m", "n"], "k > m >= 0, n >= 0", Pass, LIT, false, "T2.5a", LIT_PAIR, Params),
            sym!("T3.18b", Linear, "sum_{r=0}^{n} (-1)^r W_{mr+k} = ((-1)^{n+1} q^m W_{mn+k} - (-1)^{n+1} W_{mn+m+k} - q^m W_{k-m} + W_k)/(1 + (-q)^m - (-1)^m L_m)", ["k", "m", "n"], "k > m >= 0, n >= 0", Audit, &["literal", "sign-corrected"], false, "T2.5b", &[("literal", "literal"), ("sign-corrected", "sign-corrected")], Params),
            sym!("T3.18c", Linear, "sum_{r=0}^{n} r W_{mr+k} = n[((1+(-q)^m) W_{mn+m+k} - W_{mn+2m+k} - (-q)^m W_{mn+k})/D - (W_{mn+m+k} + q^{2m} W_{mn+k-m} - 2(-q)^m W_{mn+k})/D^2]", ["k", "m", "n"], "k > m >= 0, n >= 0", Audit, LIT, false, "T2.6a", LIT_PAIR, Params),
            sym!("T3.18d", Linear, "sum_{r=0}^{n} (-1)^{r-1} r W_{mr+k} = (-1)^{n+1}[((n-1-2n(-q)^m) W_{mn+m+k} + q^{2m}(n-1) W_{mn+k-m})/D^2 - (n W_{mn+2m+k} + (n q^{2m} - 2(-q)^m (n-1)) W_{mn+k})/D^2]", ["k", "m", "n"], "k > m >= 0, n >= 0", Audit, LIT, false, "T2.6b", LIT_PAIR, Params),
            sym!("C3.19a", Linear, "sum_{r=0}^{n} W_r = ((1-p) W_0 + W_1 - (q W_n + W_{n+1}))/(1-(p+q))", ["n"], "n >= 0", Pass, LIT, false),
            sym!("C3.19b", Linear, "sum_{r=0}^{n} (-1)^r W_r = ((1+p) W_0 - W_1 + (-1)^{n+1}(q W_n - W_{n+1}))/(1+(p-q))", ["n"], "n >= 0", Pass, LIT, false),
            sym!("C3.19c", Linear, "sum_{r=0}^{n} r W_r = n[((W_{n+1}-W_{n+2}) + q(W_n-W_{n+1}))/(1-(p+q)) - (q^2 W_{n-1} + 2q W_n + W_{n+1})/(1-(p^2+q))^2]", ["n"], "n >= 1", Audit, LIT, false),
            sym!("C3.19d", Linear, "sum_{r=0}^{n} (-1)^{r-1} r W_r = (-1)^{n+1}[((n-1+2nq) W_{n+1} + q^2(n-1) W_{n-1})/(1-(p+q))^2 - (n W_{n+2} + (n q^2 + 2q(n-1)) W_n)/(1-(p^2+q))^2]", ["n"], "n >= 1", Audit, LIT, false),
            sym!("T3.20a", Linear, "sum_{n=0}^{m} C(m,n) W_{2n+k} q^{m-n} = W_{k+m} Δ^{m/2} (m even), (A α̲ alpha^{k+m} + B β̲ beta^{k+m}) Δ^{(m-1)/2} (m odd)", ["k", "m"], "m >= 0, k >= 0", Pass, LIT, true, "T2.8a", LIT_PAIR, Params),
            sym!("T3.20b", Linear, "sum_{n=0}^{m} (-1)^n C(m,n) W_{2n+k} q^{m-n} = (-1)^m p^m W_{k+m}", ["k", "m"], "m >= 0, k >= 0", Pass, LIT, false, "T2.8b", LIT_PAIR, Params),
            sym!("T3.20c", Multiplicative, "sum_{n=0}^{m} C(m,n) W_n W_{n+k} q^{m-n} = (A^2 α̲^2 alpha^{m+k} ± B^2 β̲^2 beta^{m+k}) Δ^{(m-2)/2}, + for m even, - for m odd", ["k", "m"], "m >= 1, k >= 0", Pass, LIT, true),
            sym!("T3.20d", Linear, "sum_{n=0}^{m} C(m,n) p^n W_n q^{m-n} = W_{2m}", ["m"], "m >= 0", Pass, LIT, false, "T2.7", LIT_PAIR, Params),
        ]
    })
}

pub fn find_symbol_identity(id: &str) -> Option<&'static SymbolIdentity> {
    symbol_registry().iter().find(|e| e.id == id)
}

enum SymOutcome {
    Elements(SymElement, SymElement),
    ZeroDenominator(SymElement),
    /// Per-coordinate series strings and the verdict.
    Series(Vec<RingElement>, Vec<RingElement>),
}

fn constraint_holds(id: &str, b: &Bindings) -> Result<bool> {
    let g = |n: &str| b.int(n);
    Ok(match id {
        "T3.1" | "T3.2a" | "T3.2b" | "T3.2c" | "T3.2d" | "T3.2e" => g("k")? >= 0,
        "T3.3a" | "T3.3b" | "T3.3c" | "T3.6a" | "T3.6b" => g("k")? >= 1,
        "T3.6c" | "T3.6d" => g("k")? >= 2,
        id if id.starts_with("T3.6") => g("k")? >= 0,
        "T3.4" => g("n")? >= 0 && !b.rat("c")?.is_zero(),
        "T3.5" => g("d")? >= 1 && g("m")? >= 0 && g("n")? >= 0,
        "T3.7" => g("k")? > g("m")? && g("m")? >= 0 && g("T")? >= 4,
        "C3.8" | "C3.10" => g("T")? >= 4,
        "T3.9" => g("k")? >= 0 && g("m")? >= 0 && g("T")? >= 4,
        "T3.11a" | "T3.11b" => g("n")? >= g("r")? && g("r")? >= 0,
        "C3.12a" | "C3.12b" => g("n")? >= 1,
        "T3.13a" | "T3.13b" => g("n")? >= g("m")? && g("m")? >= 0,
        "T3.14" => g("m")? >= 1 && g("n")? >= 0,
        "T3.15a" => {
            let k = g("k")?;
            g("a")? > k && g("b")? > k && k >= 0
        }
        "T3.15b" => {
            let k = g("k")?;
            g("a")? > k && g("b")? > k && g("c")? > k && k >= 0
        }
        "T3.16" => {
            let v = [g("a")?, g("b")?, g("c")?, g("d")?, g("r")?];
            v.iter().all(|&x| x >= 0) && v[0] + v[1] == v[2] + v[3]
        }
        "T3.17" => {
            let v = [g("a")?, g("b")?, g("c")?, g("d")?, g("e")?, g("f")?, g("k")?, g("r")?];
            v.iter().all(|&x| x >= 0) && v[0] + v[1] + v[2] == v[3] + v[4] + v[5]
        }
        "T3.18a" | "T3.18b" | "T3.18c" | "T3.18d" => g("k")? > g("m")? && g("m")? >= 0 && g("n")? >= 0,
        "C3.19a" | "C3.19b" => g("n")? >= 0,
        "C3.19c" | "C3.19d" => g("n")? >= 1,
        "T3.20a" | "T3.20b" => g("m")? >= 0 && g("k")? >= 0,
        "T3.20c" => g("m")? >= 1 && g("k")? >= 0,
        "T3.20d" => g("m")? >= 0,
        other => return Err(Error::InvalidParams(format!("unknown identity {other}"))),
    })
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

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Evaluation helpers bound to one context.
struct Calc<'a> {
    ctx: &'a HseContext,
    p: BigRational,
    q: BigRational,
}

impl<'a> Calc<'a> {
    fn new(ctx: &'a HseContext) -> Self {
        Calc { ctx, p: rat(ctx.params.p()), q: rat(ctx.params.q()) }
    }

    fn w(&self, k: i64) -> Result<SymElement> {
        build_w(self.ctx, k)
    }

    fn f(&self, k: i64) -> Result<SymElement> {
        self.ctx.fib_element(k)
    }

    fn l(&self, k: i64) -> Result<SymElement> {
        self.ctx.lucas_element(k)
    }

    fn s(&self, x: &BigRational) -> Result<RingElement> {
        self.ctx.reduce(x)
    }

    fn zero(&self) -> SymElement {
        self.ctx.alg.zero()
    }

    /// Σ c_i z_i with rational c_i.
    fn lin(&self, terms: &[(BigRational, SymElement)]) -> Result<SymElement> {
        let mut acc = self.zero();
        for (c, z) in terms {
            acc = acc.add(&z.scale(&self.s(c)?)?)?;
        }
        Ok(acc)
    }

    /// `z / den`, or `None` when `den` vanishes in the field.
    fn div(&self, z: &SymElement, den: &RingElement) -> Result<Option<SymElement>> {
        if den.is_zero() {
            return Ok(None);
        }
        Ok(Some(z.scale(&den.inv()?)?))
    }

    fn nq_pow(&self, e: i64) -> BigRational {
        powr(&-self.q.clone(), e)
    }
}

fn pair(l: SymElement, r: SymElement) -> SymOutcome {
    SymOutcome::Elements(l, r)
}

fn divided(lhs: SymElement, rhs: Option<SymElement>) -> SymOutcome {
    match rhs {
        Some(r) => SymOutcome::Elements(lhs, r),
        None => SymOutcome::ZeroDenominator(lhs),
    }
}

fn evaluate(id: &str, form: &str, ctx: &HseContext, b: &Bindings) -> Result<SymOutcome> {
    let c = Calc::new(ctx);
    let (p, q) = (c.p.clone(), c.q.clone());
    let delta = &p * &p + rat(4) * &q;
    let r = rat;
    let out = match id {
        "T3.1" => {
            let k = b.int("k")?;
            pair(c.w(k)?, ctx.binet_w(k)?)
        }
        "T3.2a" => {
            let k = b.int("k")?;
            pair(c.lin(&[(&q * &q, c.w(k)?), (p.clone(), c.w(k + 3)?)])?, c.lin(&[(&p * &p + &q, c.w(k + 2)?)])?)
        }
        "T3.2b" => {
            let k = b.int("k")?;
            pair(c.lin(&[(&q * &q, c.w(k)?), (r(1), c.w(k + 4)?)])?, c.lin(&[(&p * &p + r(2) * &q, c.w(k + 2)?)])?)
        }
        "T3.2c" => {
            let k = b.int("k")?;
            let c0 = powr(&q, 3) + powr(&p, 2) * powr(&q, 2);
            let c2 = powr(&p, 4) + r(3) * powr(&p, 2) * &q + powr(&q, 2);
            pair(c.lin(&[(c0, c.w(k)?), (p.clone(), c.w(k + 5)?)])?, c.lin(&[(c2, c.w(k + 2)?)])?)
        }
        "T3.2d" => {
            let k = b.int("k")?;
            let c0 = powr(&p, 2) * powr(&q, 2) + r(2) * powr(&q, 3);
            let c2 = powr(&p, 4) + r(3) * powr(&q, 2) + r(4) * powr(&p, 2) * &q;
            pair(c.lin(&[(c0, c.w(k)?), (r(1), c.w(k + 6)?)])?, c.lin(&[(c2, c.w(k + 2)?)])?)
        }
        "T3.2e" => {
            let k = b.int("k")?;
            let c0 = powr(&p, 4) * powr(&q, 2) + r(3) * powr(&p, 2) * powr(&q, 3) + powr(&q, 4);
            let c2 = powr(&p, 4) + r(5) * powr(&p, 4) * &q + r(6) * powr(&p, 2) * powr(&q, 2) + powr(&q, 3);
            pair(c.lin(&[(c0, c.w(k)?), (p.clone(), c.w(k + 7)?)])?, c.lin(&[(c2, c.w(k + 2)?)])?)
        }
        "T3.3a" => {
            let k = b.int("k")?;
            let terms: Vec<_> = (1..=k).map(|i| Ok((powr(&p, k - i) * &q, c.w(i)?))).collect::<Result<_>>()?;
            pair(c.lin(&terms)?, c.lin(&[(r(1), c.w(k + 2)?), (-powr(&p, k), c.w(2)?)])?)
        }
        "T3.3b" => {
            let k = b.int("k")?;
            let terms: Vec<_> = (1..=k).map(|i| Ok((&p * powr(&q, k - i), c.w(2 * i - 1)?))).collect::<Result<_>>()?;
            pair(c.lin(&terms)?, c.lin(&[(r(1), c.w(2 * k)?), (-powr(&q, k), c.w(0)?)])?)
        }
        "T3.3c" => {
            let k = b.int("k")?;
            let terms: Vec<_> = (1..=k).map(|i| Ok((&p * powr(&q, k - i), c.w(2 * i)?))).collect::<Result<_>>()?;
            pair(c.lin(&terms)?, c.lin(&[(r(1), c.w(2 * k + 1)?), (-powr(&q, k), c.w(1)?)])?)
        }
        "T3.4" => {
            let n = b.int("n")?;
            let cc = b.rat("c")?;
            let lhs = c.lin(&[(powr(&cc, n + 1), c.w(n + 1)?)])?;
            let mut rhs = c.w(0)?;
            for i in 0..=n {
                let ci = powr(&cc, i);
                let t = c.lin(&[
                    (&ci * (&p - r(1)), c.w(i)?),
                    (&ci * (&cc - r(1)), c.w(i + 1)?),
                    (&ci * &q, c.w(i - 1)?),
                ])?;
                rhs = rhs.add(&t)?;
            }
            pair(lhs, rhs)
        }
        "T3.5" => {
            let (d, m, n) = (b.int("d")?, b.int("m")?, b.int("n")?);
            let lhs = c.w(m * n)?;
            let fd = ctx.fib(d)?;
            let (fdm, fm) = (ctx.fib(d - m)?, ctx.fib(m)?);
            let terms: Vec<_> = (0..=n)
                .map(|j| {
                    let coef = BigRational::from_integer(binomial(n, j))
                        * c.nq_pow(m * (n - j))
                        * powr(&fdm, n - j)
                        * powr(&fm, j);
                    Ok((coef, c.w(d * j)?))
                })
                .collect::<Result<_>>()?;
            let sum = c.lin(&terms)?;
            let den = c.s(&powr(&fd, n))?;
            divided(lhs, c.div(&sum, &den)?)
        }
        "T3.6a" => {
            let k = b.int("k")?;
            pair(c.lin(&[(q.clone(), c.f(k - 1)?), (r(1), c.f(k + 1)?)])?, c.l(k)?)
        }
        "T3.6b" => {
            let k = b.int("k")?;
            pair(c.lin(&[(q.clone(), c.l(k - 1)?), (r(1), c.l(k + 1)?)])?, c.lin(&[(delta.clone(), c.f(k)?)])?)
        }
        "T3.6c" => {
            let k = b.int("k")?;
            pair(c.lin(&[(r(1), c.f(k + 2)?), (-(&q * &q), c.f(k - 2)?)])?, c.lin(&[(p.clone(), c.l(k)?)])?)
        }
        "T3.6d" => {
            let k = b.int("k")?;
            pair(c.lin(&[(r(1), c.l(k + 2)?), (-(&q * &q), c.l(k - 2)?)])?, c.lin(&[(&p * &delta, c.f(k)?)])?)
        }
        "T3.6e" => {
            let k = b.int("k")?;
            pair(c.lin(&[(p.clone(), c.f(k)?), (r(1), c.l(k)?)])?, c.lin(&[(r(2), c.f(k + 1)?)])?)
        }
        "T3.6f" => {
            let k = b.int("k")?;
            pair(c.lin(&[(p.clone(), c.l(k)?), (delta.clone(), c.f(k)?)])?, c.lin(&[(r(2), c.l(k + 1)?)])?)
        }
        "T3.6g" => {
            let k = b.int("k")?;
            pair(c.lin(&[(&q * &q, c.f(k)?), (p.clone(), c.l(k + 2)?)])?, c.f(k + 4)?)
        }
        "T3.6h" => {
            let k = b.int("k")?;
            pair(c.lin(&[(&q * &q, c.l(k)?), (&p * &delta, c.f(k + 2)?)])?, c.l(k + 4)?)
        }
        "T3.6i" => {
            let k = b.int("k")?;
            pair(c.lin(&[(p.clone(), c.f(k + 2)?), (q.clone(), c.l(k)?)])?, c.lin(&[(&p * &p + r(2) * &q, c.f(k + 1)?)])?)
        }
        "T3.6j" => {
            let k = b.int("k")?;
            pair(
                c.lin(&[(p.clone(), c.l(k + 2)?), (&q * &delta, c.f(k)?)])?,
                c.lin(&[(&p * &p + r(2) * &q, c.l(k + 1)?)])?,
            )
        }
        "T3.6k" => {
            let k = b.int("k")?;
            pair(c.lin(&[(powr(&q, 3), c.f(k)?), (r(1), c.f(k + 6)?)])?, c.lin(&[(&p * &p + &q, c.l(k + 3)?)])?)
        }
        "T3.6l" => {
            let k = b.int("k")?;
            pair(
                c.lin(&[(powr(&q, 3), c.l(k)?), (r(1), c.l(k + 6)?)])?,
                c.lin(&[((&p * &p + &q) * &delta, c.f(k + 3)?)])?,
            )
        }
        "T3.6m" => {
            let k = b.int("k")?;
            let lead = if form == "with-p" { p.clone() } else { r(1) };
            let coef = powr(&(&p * &p + &q), 2) + &p * &q * (r(1) + &p + &q);
            pair(c.lin(&[(powr(&q, 4), c.f(k)?), (lead, c.f(k + 8)?)])?, c.lin(&[(coef, c.f(k + 4)?)])?)
        }
        "T3.7" => return ogf_series(ctx, b.int("k")?, b.int("m")?, b.int("T")? as usize),
        "C3.8" => return ogf_c38_series(ctx, b.int("T")? as usize),
        "T3.9" => return egf_series(ctx, b.int("k")?, b.int("m")?, b.int("T")? as usize),
        "C3.10" => return egf_series(ctx, 1, 0, b.int("T")? as usize),
        "T3.11a" | "T3.11b" | "C3.12a" | "C3.12b" | "T3.13a" | "T3.13b" | "T3.14" | "T3.15a" | "T3.15b"
        | "T3.16" | "T3.17" | "T3.20c" => return evaluate_mult(id, form, ctx, b),
        "T3.18a" | "T3.18b" | "T3.18c" | "T3.18d" => {
            let (k, m, n) = (b.int("k")?, b.int("m")?, b.int("n")?);
            let nq_m = c.nq_pow(m);
            let lm = ctx.luc(m)?;
            let q_m = powr(&q, m);
            let q_2m = powr(&q, 2 * m);
            match id {
                "T3.18a" => {
                    let lhs = c.lin(&(0..=n).map(|j| Ok((r(1), c.w(m * j + k)?))).collect::<Result<Vec<_>>>()?)?;
                    let num = c.lin(&[
                        (nq_m.clone(), c.w(m * n + k)?),
                        (r(-1), c.w(m * n + m + k)?),
                        (-nq_m.clone(), c.w(k - m)?),
                        (r(1), c.w(k)?),
                    ])?;
                    divided(lhs, c.div(&num, &c.s(&(r(1) + &nq_m - &lm))?)?)
                }
                "T3.18b" => {
                    let lhs =
                        c.lin(&(0..=n).map(|j| Ok((r(sign(j)), c.w(m * j + k)?))).collect::<Result<Vec<_>>>()?)?;
                    let (num, den) = if form == "sign-corrected" {
                        (
                            c.lin(&[
                                (r(1), c.w(k)?),
                                (nq_m.clone(), c.w(k - m)?),
                                (r(sign(n)), c.w(m * n + m + k)?),
                                (r(sign(n)) * &nq_m, c.w(m * n + k)?),
                            ])?,
                            r(1) + &nq_m + &lm,
                        )
                    } else {
                        let s = r(sign(n + 1));
                        (
                            c.lin(&[
                                (&s * &q_m, c.w(m * n + k)?),
                                (-s, c.w(m * n + m + k)?),
                                (-q_m.clone(), c.w(k - m)?),
                                (r(1), c.w(k)?),
                            ])?,
                            r(1) + &nq_m - r(sign(m)) * &lm,
                        )
                    };
                    divided(lhs, c.div(&num, &c.s(&den)?)?)
                }
                "T3.18c" => {
                    let lhs = c.lin(&(0..=n).map(|j| Ok((r(j), c.w(m * j + k)?))).collect::<Result<Vec<_>>>()?)?;
                    let den = r(1) + &nq_m - &lm;
                    if c.s(&den)?.is_zero() {
                        return Ok(SymOutcome::ZeroDenominator(lhs));
                    }
                    let d2 = &den * &den;
                    let nn = r(n);
                    let rhs = c.lin(&[
                        (&nn * (r(1) + &nq_m) / &den - &nn / &d2, c.w(m * n + m + k)?),
                        (-(&nn) / &den, c.w(m * n + 2 * m + k)?),
                        (-(&nn) * &nq_m / &den + &nn * r(2) * &nq_m / &d2, c.w(m * n + k)?),
                        (-(&nn) * &q_2m / &d2, c.w(m * n + k - m)?),
                    ])?;
                    pair(lhs, rhs)
                }
                _ => {
                    let lhs = c.lin(
                        &(0..=n).map(|j| Ok((r(sign(j - 1) * j), c.w(m * j + k)?))).collect::<Result<Vec<_>>>()?,
                    )?;
                    let den = r(1) + &nq_m - &lm;
                    if c.s(&den)?.is_zero() {
                        return Ok(SymOutcome::ZeroDenominator(lhs));
                    }
                    let d2 = &den * &den;
                    let nn = r(n);
                    let s = r(sign(n + 1));
                    let rhs = c.lin(&[
                        (&s * (&nn - r(1) - r(2) * &nn * &nq_m) / &d2, c.w(m * n + m + k)?),
                        (&s * &q_2m * (&nn - r(1)) / &d2, c.w(m * n + k - m)?),
                        (-(&s) * &nn / &d2, c.w(m * n + 2 * m + k)?),
                        (-(&s) * (&nn * &q_2m - r(2) * &nq_m * (&nn - r(1))) / &d2, c.w(m * n + k)?),
                    ])?;
                    pair(lhs, rhs)
                }
            }
        }
        "C3.19a" | "C3.19b" | "C3.19c" | "C3.19d" => {
            let n = b.int("n")?;
            let d1 = r(1) - (&p + &q);
            let d2 = r(1) - (&p * &p + &q);
            match id {
                "C3.19a" => {
                    let lhs = c.lin(&(0..=n).map(|j| Ok((r(1), c.w(j)?))).collect::<Result<Vec<_>>>()?)?;
                    let num = c.lin(&[
                        (r(1) - &p, c.w(0)?),
                        (r(1), c.w(1)?),
                        (-q.clone(), c.w(n)?),
                        (r(-1), c.w(n + 1)?),
                    ])?;
                    divided(lhs, c.div(&num, &c.s(&d1)?)?)
                }
                "C3.19b" => {
                    let lhs = c.lin(&(0..=n).map(|j| Ok((r(sign(j)), c.w(j)?))).collect::<Result<Vec<_>>>()?)?;
                    let s = r(sign(n + 1));
                    let num = c.lin(&[
                        (r(1) + &p, c.w(0)?),
                        (r(-1), c.w(1)?),
                        (&s * &q, c.w(n)?),
                        (-s, c.w(n + 1)?),
                    ])?;
                    divided(lhs, c.div(&num, &c.s(&(r(1) + &p - &q))?)?)
                }
                "C3.19c" => {
                    let lhs = c.lin(&(0..=n).map(|j| Ok((r(j), c.w(j)?))).collect::<Result<Vec<_>>>()?)?;
                    if c.s(&d1)?.is_zero() || c.s(&d2)?.is_zero() {
                        return Ok(SymOutcome::ZeroDenominator(lhs));
                    }
                    let nn = r(n);
                    let sq2 = &d2 * &d2;
                    let rhs = c.lin(&[
                        (&nn / &d1 * (r(1) - &q), c.w(n + 1)?),
                        (-(&nn) / &d1, c.w(n + 2)?),
                        (&nn / &d1 * &q - &nn * r(2) * &q / &sq2, c.w(n)?),
                        (-(&nn) * &q * &q / &sq2, c.w(n - 1)?),
                        (-(&nn) / &sq2, c.w(n + 1)?),
                    ])?;
                    pair(lhs, rhs)
                }
                _ => {
                    let lhs =
                        c.lin(&(0..=n).map(|j| Ok((r(sign(j - 1) * j), c.w(j)?))).collect::<Result<Vec<_>>>()?)?;
                    if c.s(&d1)?.is_zero() || c.s(&d2)?.is_zero() {
                        return Ok(SymOutcome::ZeroDenominator(lhs));
                    }
                    let nn = r(n);
                    let s = r(sign(n + 1));
                    let sq1 = &d1 * &d1;
                    let sq2 = &d2 * &d2;
                    let rhs = c.lin(&[
                        (&s * (&nn - r(1) + r(2) * &nn * &q) / &sq1, c.w(n + 1)?),
                        (&s * &q * &q * (&nn - r(1)) / &sq1, c.w(n - 1)?),
                        (-(&s) * &nn / &sq2, c.w(n + 2)?),
                        (-(&s) * (&nn * &q * &q + r(2) * &q * (&nn - r(1))) / &sq2, c.w(n)?),
                    ])?;
                    pair(lhs, rhs)
                }
            }
        }
        "T3.20a" => {
            let (k, m) = (b.int("k")?, b.int("m")?);
            let terms: Vec<_> = (0..=m)
                .map(|j| Ok((BigRational::from_integer(binomial(m, j)) * powr(&q, m - j), c.w(2 * j + k)?)))
                .collect::<Result<_>>()?;
            let lhs = c.lin(&terms)?;
            let rhs = if m % 2 == 0 {
                c.lin(&[(powr(&delta, m / 2), c.w(k + m)?)])?
            } else {
                let bc = ctx.binet()?;
                let bars = bar_elements(ctx)?;
                let sum = bars
                    .alpha
                    .scale(&(bc.a() * &bc.alpha_pow(k + m)))?
                    .add(&bars.beta.scale(&(bc.b() * &bc.beta_pow(k + m)))?)?;
                sum.scale(&c.s(&powr(&delta, (m - 1) / 2))?)?
            };
            pair(lhs, rhs)
        }
        "T3.20b" => {
            let (k, m) = (b.int("k")?, b.int("m")?);
            let terms: Vec<_> = (0..=m)
                .map(|j| Ok((r(sign(j)) * BigRational::from_integer(binomial(m, j)) * powr(&q, m - j), c.w(2 * j + k)?)))
                .collect::<Result<_>>()?;
            pair(c.lin(&terms)?, c.lin(&[(r(sign(m)) * powr(&p, m), c.w(k + m)?)])?)
        }
        "T3.20d" => {
            let m = b.int("m")?;
            let terms: Vec<_> = (0..=m)
                .map(|j| Ok((BigRational::from_integer(binomial(m, j)) * powr(&p, j) * powr(&q, m - j), c.w(j)?)))
                .collect::<Result<_>>()?;
            pair(c.lin(&terms)?, c.w(2 * m)?)
        }
        other => return Err(Error::InvalidParams(format!("unknown identity {other}"))),
    };
    Ok(out)
}

fn evaluate_mult(id: &str, form: &str, ctx: &HseContext, b: &Bindings) -> Result<SymOutcome> {
    let c = Calc::new(ctx);
    let bc = ctx.binet()?;
    let bars = bar_elements(ctx)?;
    let (ab, ba) = (bars.alpha.mul(&bars.beta)?, bars.beta.mul(&bars.alpha)?);
    let w = |k: i64| c.w(k);
    let prod = |ks: &[i64]| -> Result<SymElement> {
        let mut acc = w(ks[0])?;
        for &k in &ks[1..] {
            acc = acc.mul(&w(k)?)?;
        }
        Ok(acc)
    };
    let s = |x: &BigRational| c.s(x);
    let nq = |e: i64| c.nq_pow(e);
    let abk = bc.a() * bc.b();
    let delta_e = bc.sqrt_delta() * bc.sqrt_delta();
    let inv_ab = bc.sqrt_delta_inv();
    // (A^j α̲^j α^e − B^j β̲^j β^e)/(α−β)
    let power_form = |j: u64, e: i64, plus: bool| -> Result<SymElement> {
        let ta = bars.alpha.pow(j).scale(&(&bc.a().pow(j) * &bc.alpha_pow(e)))?;
        let tb = bars.beta.pow(j).scale(&(&bc.b().pow(j) * &bc.beta_pow(e)))?;
        if plus {
            ta.add(&tb)
        } else {
            ta.sub(&tb)
        }
    };
    let out = match id {
        "T3.11a" | "T3.11b" => {
            let (n, r) = (b.int("n")?, b.int("r")?);
            let lhs = if id == "T3.11a" { prod(&[n - r, n + r])? } else { prod(&[n + r, n - r])? };
            let lhs = lhs.sub(&prod(&[n, n])?)?;
            let (first, second) = if id == "T3.11a" { (&ab, &ba) } else { (&ba, &ab) };
            let inner = first.scale(&bc.beta_pow(r))?.sub(&second.scale(&bc.alpha_pow(r))?)?;
            let scal = &(&abk * &s(&nq(n - r))?) * &(&bc.alpha_pow(r) - &bc.beta_pow(r));
            if delta_e.is_zero() {
                return Ok(SymOutcome::ZeroDenominator(lhs));
            }
            pair(lhs, inner.scale(&(&scal * &delta_e.inv()?))?)
        }
        "C3.12a" | "C3.12b" => {
            let n = b.int("n")?;
            let lhs = if id == "C3.12a" { prod(&[n - 1, n + 1])? } else { prod(&[n + 1, n - 1])? };
            let lhs = lhs.sub(&prod(&[n, n])?)?;
            let inner = match (id, form) {
                ("C3.12a", _) => ab.scale(bc.beta())?.sub(&ba.scale(bc.alpha())?)?,
                (_, "intent") => ba.scale(bc.beta())?.sub(&ab.scale(bc.alpha())?)?,
                _ => ba.scale(bc.beta())?.sub(&ab)?,
            };
            let scal = &(&abk * &s(&nq(n - 1))?) * inv_ab;
            pair(lhs, inner.scale(&scal)?)
        }
        "T3.13a" | "T3.13b" => {
            let (m, n) = (b.int("m")?, b.int("n")?);
            let lhs = if id == "T3.13a" {
                prod(&[n, m + 1])?.sub(&prod(&[n + 1, m])?)?
            } else {
                prod(&[m + 1, n])?.sub(&prod(&[m, n + 1])?)?
            };
            let (first, second) = if id == "T3.13a" { (&ab, &ba) } else { (&ba, &ab) };
            let inner = first.scale(&bc.alpha_pow(n - m))?.sub(&second.scale(&bc.beta_pow(n - m))?)?;
            let scal = &(&abk * &s(&nq(m))?) * inv_ab;
            pair(lhs, inner.scale(&scal)?)
        }
        "T3.14" => {
            let (m, n) = (b.int("m")?, b.int("n")?);
            let qe = ctx.reduce_i64(ctx.params.q());
            let lhs = if form == "reversed" {
                prod(&[n + 1, m])?.add(&prod(&[n, m - 1])?.scale(&qe)?)?
            } else {
                prod(&[m, n + 1])?.add(&prod(&[m - 1, n])?.scale(&qe)?)?
            };
            pair(lhs, power_form(2, m + n, false)?.scale(inv_ab)?)
        }
        "T3.15a" => {
            let (a, bb, k) = (b.int("a")?, b.int("b")?, b.int("k")?);
            let num = prod(&[a, bb])?.sub(&prod(&[a - k, bb - k])?.scale(&s(&nq(k))?)?)?;
            let fk = s(&ctx.fib(k)?)?;
            if fk.is_zero() {
                return Ok(SymOutcome::ZeroDenominator(num));
            }
            pair(num.scale(&fk.inv()?)?, power_form(2, a + bb - k, false)?.scale(inv_ab)?)
        }
        "T3.15b" => {
            let (a, bb, cc, k) = (b.int("a")?, b.int("b")?, b.int("c")?, b.int("k")?);
            let lk = ctx.luc(k)?;
            let fk = ctx.fib(k)?;
            let num = prod(&[a, bb, cc])?
                .sub(&prod(&[a - k, bb - k, cc - k])?.scale(&s(&(&lk * nq(k)))?)?)?
                .add(&prod(&[a - 2 * k, bb - 2 * k, cc - 2 * k])?.scale(&s(&nq(3 * k))?)?)?;
            let den = s(&(&lk * &fk * &fk))?;
            if den.is_zero() {
                return Ok(SymOutcome::ZeroDenominator(num));
            }
            pair(num.scale(&den.inv()?)?, power_form(3, a + bb + cc - 3 * k, false)?.scale(inv_ab)?)
        }
        "T3.16" => {
            let (a, bb, cc, d, r) = (b.int("a")?, b.int("b")?, b.int("c")?, b.int("d")?, b.int("r")?);
            let lhs = prod(&[a, bb])?.sub(&prod(&[cc, d])?)?.scale(&s(&nq(r))?)?;
            let rhs = prod(&[a + r, bb + r])?.sub(&prod(&[cc + r, d + r])?)?;
            pair(lhs, rhs)
        }
        "T3.17" => {
            let g = |n: &str| b.int(n);
            let (a, bb, cc, d, e, f, k, r) = (g("a")?, g("b")?, g("c")?, g("d")?, g("e")?, g("f")?, g("k")?, g("r")?);
            let intent = form == "intent";
            let lk = ctx.luc(if intent { r } else { k })?;
            let first = prod(&[a + r, bb + r, cc + r])?.sub(&prod(&[d + r, e + r, f + r])?)?;
            let second = if intent {
                prod(&[a, bb, cc])?.sub(&prod(&[d, e, f])?)?
            } else {
                prod(&[a, bb, cc])?.sub(&prod(&[a, bb, cc])?)?
            };
            let q2r = powr(&rat(ctx.params.q()), 2 * r);
            let lhs = first.scale(&s(&lk)?)?.sub(&second.scale(&s(&q2r)?)?)?.scale(&s(&nq(r))?)?;
            let rhs = prod(&[a + 2 * r, bb + 2 * r, cc + 2 * r])?.sub(&prod(&[d + 2 * r, e + 2 * r, f + 2 * r])?)?;
            pair(lhs, rhs)
        }
        "T3.20c" => {
            let (k, m) = (b.int("k")?, b.int("m")?);
            let q = rat(ctx.params.q());
            let mut lhs = c.zero();
            for j in 0..=m {
                let coef = BigRational::from_integer(binomial(m, j)) * powr(&q, m - j);
                lhs = lhs.add(&prod(&[j, j + k])?.scale(&s(&coef)?)?)?;
            }
            let rhs = power_form(2, m + k, m % 2 == 0)?.scale(&bc.sqrt_delta().pow_signed(m - 2)?)?;
            pair(lhs, rhs)
        }
        other => return Err(Error::InvalidParams(format!("unknown identity {other}"))),
    };
    Ok(out)
}

/// Per-coordinate truncated series of `Σ_{n<T} coeff(n, l) s^n`.
fn coordinate_series(
    field: &RingDescriptor,
    dim: usize,
    order: usize,
    coeff: impl Fn(i64, i64) -> Result<RingElement>,
) -> Result<Vec<RingElement>> {
    let ring = RingDescriptor::series(field.clone(), order)?;
    (0..dim as i64)
        .map(|l| {
            let cs: Vec<RingElement> = (0..order as i64).map(|n| coeff(n, l)).collect::<Result<_>>()?;
            series_from_coeffs(&ring, &cs)
        })
        .collect()
}

fn series_ring(ctx: &HseContext, order: usize) -> Result<RingDescriptor> {
    RingDescriptor::series(ctx.field().clone(), order)
}

fn ogf_parts(
    ctx: &HseContext,
    k: i64,
    m: i64,
    order: usize,
    num: impl Fn(i64) -> Result<(RingElement, RingElement)>,
    den: [RingElement; 3],
) -> Result<SymOutcome> {
    let field = ctx.field().clone();
    let sr = series_ring(ctx, order)?;
    let den = series_from_coeffs(&sr, &den)?;
    let lhs = coordinate_series(&field, ctx.alg.dim(), order, |n, l| ctx.reduce(&ctx.w(k * n + m + l)?))?;
    let lhs: Vec<RingElement> = lhs.into_iter().map(|x| &x * &den).collect();
    let rhs: Vec<RingElement> = (0..ctx.alg.dim() as i64)
        .map(|l| {
            let (c0, c1) = num(l)?;
            series_from_coeffs(&sr, &[c0, c1])
        })
        .collect::<Result<_>>()?;
    Ok(SymOutcome::Series(lhs, rhs))
}

fn ogf_series(ctx: &HseContext, k: i64, m: i64, order: usize) -> Result<SymOutcome> {
    let nq_k = powr(&-rat(ctx.params.q()), k);
    let den = [ctx.reduce_i64(1), ctx.reduce(&-ctx.luc(k)?)?, ctx.reduce(&nq_k)?];
    ogf_parts(
        ctx,
        k,
        m,
        order,
        |l| Ok((ctx.reduce(&ctx.w(m + l)?)?, ctx.reduce(&(-&nq_k * ctx.w(m - k + l)?))?)),
        den,
    )
}

fn ogf_c38_series(ctx: &HseContext, order: usize) -> Result<SymOutcome> {
    let p = rat(ctx.params.p());
    let den = [ctx.reduce_i64(1), ctx.reduce_i64(-ctx.params.p()), ctx.reduce_i64(-ctx.params.q())];
    ogf_parts(
        ctx,
        1,
        0,
        order,
        |l| Ok((ctx.reduce(&ctx.w(l)?)?, ctx.reduce(&(ctx.w(1 + l)? - &p * ctx.w(l)?))?)),
        den,
    )
}

fn egf_series(ctx: &HseContext, k: i64, m: i64, order: usize) -> Result<SymOutcome> {
    let bc = ctx.binet()?;
    let field = ctx.field().clone();
    let sr = series_ring(ctx, order)?;
    let inv_fact: Vec<RingElement> = (0..order as i64)
        .map(|n| ctx.reduce(&BigRational::new(BigInt::one(), factorial(n))))
        .collect::<Result<_>>()?;
    let exp_of = |x: &RingElement| -> Result<RingElement> {
        let mut cur = RingElement::one(&field);
        let mut cs = Vec::with_capacity(order);
        for f in &inv_fact {
            cs.push(&cur * f);
            cur = &cur * x;
        }
        series_from_coeffs(&sr, &cs)
    };
    let (ea, eb) = (exp_of(&bc.alpha_pow(k))?, exp_of(&bc.beta_pow(k))?);
    let lhs = coordinate_series(&field, ctx.alg.dim(), order, |n, l| {
        Ok(&ctx.reduce(&ctx.w(k * n + m + l)?)? * &inv_fact[n as usize])
    })?;
    let rhs: Vec<RingElement> = (0..ctx.alg.dim() as i64)
        .map(|l| {
            let ca = RingElement::embed(&sr, &(&(bc.a() * &bc.alpha_pow(m + l)) * bc.sqrt_delta_inv()))?;
            let cb = RingElement::embed(&sr, &(&(bc.b() * &bc.beta_pow(m + l)) * bc.sqrt_delta_inv()))?;
            Ok(&(&ca * &ea) - &(&cb * &eb))
        })
        .collect::<Result<_>>()?;
    Ok(SymOutcome::Series(lhs, rhs))
}

fn make_record(meta: &SymbolIdentity, form: &str, ctx: &HseContext, b: &Bindings, out: Option<SymOutcome>) -> AuditRecord {
    let (lhs, rhs, verdict) = match out {
        None => (None, None, Verdict::Skipped(SkipReason::IndexPrecondition)),
        Some(SymOutcome::Elements(l, r)) => {
            let v = Verdict::from_eq(l == r);
            (Some(ExactValue::List(l.coeff_strings())), Some(ExactValue::List(r.coeff_strings())), v)
        }
        Some(SymOutcome::ZeroDenominator(l)) => {
            (Some(ExactValue::List(l.coeff_strings())), None, Verdict::Skipped(SkipReason::ZeroDenominator))
        }
        Some(SymOutcome::Series(l, r)) => {
            let v = Verdict::from_eq(l == r);
            (Some(ExactValue::of_list(&l)), Some(ExactValue::of_list(&r)), v)
        }
    };
    AuditRecord {
        id: meta.id.to_string(),
        kind: Some(meta.kind.as_str().to_string()),
        form: if meta.forms.len() > 1 { Some(form.to_string()) } else { None },
        algebra: Some(ctx.alg.header().to_string()),
        params: ctx.params,
        bindings: b.clone(),
        lhs,
        rhs,
        verdict,
    }
}

/// Evaluates a named form of a symbol identity.
pub fn eval_symbol_identity_form(id: &str, form: &str, ctx: &HseContext, bindings: &Bindings) -> Result<AuditRecord> {
    let meta = find_symbol_identity(id).ok_or_else(|| Error::InvalidParams(format!("unknown identity {id}")))?;
    for name in meta.indices {
        if bindings.get(name).is_none() {
            return Err(Error::UnboundIndex((*name).to_string()));
        }
    }
    if !meta.forms.contains(&form) {
        return Err(Error::InvalidParams(format!("{id} has no form {form:?}")));
    }
    if meta.needs_sqrt {
        ctx.binet()?;
    }
    if !constraint_holds(id, bindings)? {
        return Ok(make_record(meta, form, ctx, bindings, None));
    }
    let out = evaluate(id, form, ctx, bindings)?;
    Ok(make_record(meta, form, ctx, bindings, Some(out)))
}

pub fn eval_symbol_identity(id: &str, ctx: &HseContext, bindings: &Bindings) -> Result<AuditRecord> {
    eval_symbol_identity_form(id, "literal", ctx, bindings)
}

/// Binet lift `W_k = (A α̲ α^k − B β̲ β^k)/(α−β)`.
pub fn binet_w_check(ctx: &HseContext, k: i64) -> Result<AuditRecord> {
    eval_symbol_identity("T3.1", ctx, &Bindings::new().with("k", k))
}

/// Ordinary generating function of `W_{kn+m}` checked to order T.
pub fn ogf_check(ctx: &HseContext, k: i64, m: i64, order: i64) -> Result<AuditRecord> {
    eval_symbol_identity("T3.7", ctx, &Bindings::new().with("T", order).with("k", k).with("m", m))
}

/// Exponential generating function of `W_{kn+m}` checked for `n < T`.
pub fn egf_check(ctx: &HseContext, k: i64, m: i64, order: i64) -> Result<AuditRecord> {
    eval_symbol_identity("T3.9", ctx, &Bindings::new().with("T", order).with("k", k).with("m", m))
}

/// A linear symbol identity next to the scalar identity it reduces to in
/// each coordinate.
#[derive(Clone, Debug, Serialize)]
pub struct LiftRecord {
    pub symbol: AuditRecord,
    pub components: Vec<Verdict>,
    pub agree: bool,
}

/// Combined verdict of per-coordinate scalar verdicts.
fn combine(vs: &[Verdict]) -> Verdict {
    if vs.iter().all(|v| *v == Verdict::Pass) {
        Verdict::Pass
    } else if vs.iter().any(|v| *v == Verdict::Fail) {
        Verdict::Fail
    } else {
        vs.iter().copied().find(|v| matches!(v, Verdict::Skipped(_))).unwrap_or(Verdict::Pass)
    }
}

/// Evaluates a linear symbol identity and, independently, its scalar
/// counterpart in every coordinate.
pub fn lift_check(ctx: &HseContext, id: &str, form: &str, bindings: &Bindings) -> Result<LiftRecord> {
    let meta = find_symbol_identity(id).ok_or_else(|| Error::InvalidParams(format!("unknown identity {id}")))?;
    let (scalar_id, pairs) =
        meta.counterpart.ok_or_else(|| Error::InvalidParams(format!("{id} has no scalar counterpart")))?;
    let scalar_form = pairs
        .iter()
        .find(|(f, _)| *f == form)
        .map(|(_, s)| *s)
        .ok_or_else(|| Error::InvalidParams(format!("{id} has no form {form:?}")))?;
    let symbol = eval_symbol_identity_form(id, form, ctx, bindings)?;
    let mut components = Vec::with_capacity(ctx.alg.dim());
    for l in 0..ctx.alg.dim() as i64 {
        let rec = match meta.shift {
            Shift::Params => {
                let seed = |i: i64| -> Result<i64> {
                    let x = ctx.w(i)?;
                    i64::try_from(x.to_integer()).map_err(|_| Error::IndexOutOfRange(format!("w_{i} exceeds i64")))
                };
                let (p, q) = (ctx.params.p(), ctx.params.q());
                let shifted = HoradamParams::new(seed(l)?, seed(l + 1)?, p, q)?;
                eval_scalar_identity_form(scalar_id, scalar_form, &shifted, bindings)?
            }
            Shift::Index => {
                let mut b = bindings.clone();
                b.set("k", Binding::Int(bindings.int("k")? + l));
                eval_scalar_identity_form(scalar_id, scalar_form, &ctx.params, &b)?
            }
        };
        components.push(rec.verdict);
    }
    let agree = combine(&components) == symbol.verdict;
    Ok(LiftRecord { symbol, components, agree })
}

/// Index grid for symbol-identity audits.
#[derive(Clone, Debug)]
pub struct SymbolGrid {
    /// Range 0..=k_max for k and m in linear identities.
    pub k_max: i64,
    /// Range 0..=n_max for summation bounds.
    pub n_max: i64,
    /// Range for n in product identities.
    pub product_n: (i64, i64),
    pub c_values: Vec<BigRational>,
    pub series_orders: Vec<i64>,
}

impl Default for SymbolGrid {
    fn default() -> Self {
        SymbolGrid { k_max: 8, n_max: 8, product_n: (2, 8), c_values: default_c_values(), series_orders: vec![8] }
    }
}

fn bind(names: &[&str], vals: &[i64]) -> Bindings {
    names.iter().zip(vals).fold(Bindings::new(), |b, (n, v)| b.with(n, *v))
}

fn product(ranges: &[Vec<i64>]) -> Vec<Vec<i64>> {
    ranges.iter().fold(vec![vec![]], |acc, r| {
        acc.iter()
            .flat_map(|prefix| {
                r.iter().map(move |v| {
                    let mut p = prefix.clone();
                    p.push(*v);
                    p
                })
            })
            .collect()
    })
}

/// Admissible bindings for an identity, in lexicographic order of the index tuple.
pub fn symbol_grid_bindings(meta: &SymbolIdentity, grid: &SymbolGrid) -> Vec<Bindings> {
    let ks: Vec<i64> = (0..=grid.k_max).collect();
    let ns: Vec<i64> = (0..=grid.n_max).collect();
    let pn: Vec<i64> = (grid.product_n.0..=grid.product_n.1).collect();
    let out: Vec<Bindings> = match meta.id {
        "T3.4" => {
            let mut cs = grid.c_values.clone();
            cs.sort();
            cs.into_iter()
                .flat_map(|c| ns.iter().map(move |&n| Bindings::new().with_rat("c", c.clone()).with("n", n)))
                .collect()
        }
        "T3.5" => product(&[vec![2, 3], vec![1, 2], vec![1, 2, 3]])
            .into_iter()
            .map(|v| bind(&["d", "m", "n"], &v))
            .collect(),
        "T3.7" | "T3.9" => product(&[grid.series_orders.clone(), vec![1, 2, 3], vec![0, 1, 2]])
            .into_iter()
            .map(|v| bind(&["T", "k", "m"], &v))
            .collect(),
        "C3.8" | "C3.10" => grid.series_orders.iter().map(|&t| Bindings::new().with("T", t)).collect(),
        "T3.11a" | "T3.11b" => {
            product(&[pn.clone(), (0..=grid.product_n.1).collect()]).into_iter().map(|v| bind(&["n", "r"], &v)).collect()
        }
        "C3.12a" | "C3.12b" => pn.iter().map(|&n| Bindings::new().with("n", n)).collect(),
        "T3.13a" | "T3.13b" => {
            product(&[(0..=grid.product_n.1).collect(), pn.clone()]).into_iter().map(|v| bind(&["m", "n"], &v)).collect()
        }
        "T3.14" => product(&[(1..=4).collect(), (0..=4).collect()]).into_iter().map(|v| bind(&["m", "n"], &v)).collect(),
        "T3.15a" => product(&[(1..=5).collect(), (1..=5).collect(), vec![0, 1, 2]])
            .into_iter()
            .map(|v| bind(&["a", "b", "k"], &v))
            .collect(),
        "T3.15b" => product(&[(2..=4).collect(), (2..=4).collect(), (2..=4).collect(), vec![1, 2]])
            .into_iter()
            .map(|v| bind(&["a", "b", "c", "k"], &v))
            .collect(),
        "T3.16" => product(&[(0..=3).collect(), (0..=3).collect(), (0..=3).collect(), (0..=3).collect(), vec![1, 2]])
            .into_iter()
            .map(|v| bind(&["a", "b", "c", "d", "r"], &v))
            .collect(),
        "T3.17" => {
            let triples = [[1, 2, 3], [2, 2, 2], [1, 1, 4]];
            let others = [[3, 2, 1], [2, 1, 3], [4, 1, 1], [0, 3, 3]];
            let mut v = Vec::new();
            for t in &triples {
                for o in &others {
                    for k in 1..=2 {
                        for r in 1..=2 {
                            v.push(bind(&["a", "b", "c", "d", "e", "f", "k", "r"], &[t[0], t[1], t[2], o[0], o[1], o[2], k, r]));
                        }
                    }
                }
            }
            v
        }
        "T3.18a" | "T3.18b" | "T3.18c" | "T3.18d" => {
            product(&[ks.clone(), ks.clone(), ns.clone()]).into_iter().map(|v| bind(&["k", "m", "n"], &v)).collect()
        }
        id if id.starts_with("C3.19") => ns.iter().map(|&n| Bindings::new().with("n", n)).collect(),
        "T3.20a" | "T3.20b" | "T3.20c" => {
            product(&[ks.clone(), (0..=6).collect()]).into_iter().map(|v| bind(&["k", "m"], &v)).collect()
        }
        "T3.20d" => ks.iter().map(|&m| Bindings::new().with("m", m)).collect(),
        _ => ks.iter().map(|&k| Bindings::new().with("k", k)).collect(),
    };
    out.into_iter().filter(|b| constraint_holds(meta.id, b).unwrap_or(false)).collect()
}

fn expected_of(rec: &AuditRecord) -> Option<Expected> {
    find_symbol_identity(&rec.id).map(|m| m.expected)
}

/// Audits symbol identities (optionally restricted to `ids`) over every
/// context and grid binding. Order: registry, context, bindings, form.
pub fn run_symbol_audit(ctxs: &[HseContext], grid: &SymbolGrid, ids: Option<&[&str]>) -> Result<AuditReport> {
    if ctxs.is_empty() {
        return Err(Error::InvalidParams("no contexts to audit".into()));
    }
    let entries: Vec<&SymbolIdentity> =
        symbol_registry().iter().filter(|m| ids.is_none_or(|ids| ids.contains(&m.id))).collect();
    let jobs: Vec<(&SymbolIdentity, &HseContext)> =
        entries.iter().flat_map(|m| ctxs.iter().map(move |c| (*m, c))).collect();
    let chunks: Vec<Vec<AuditRecord>> = jobs
        .par_iter()
        .map(|(meta, ctx)| {
            if meta.needs_sqrt && ctx.binet.is_none() {
                return Ok(Vec::new());
            }
            let mut recs = Vec::new();
            for b in symbol_grid_bindings(meta, grid) {
                for form in meta.forms {
                    recs.push(eval_symbol_identity_form(meta.id, form, ctx, &b)?);
                }
            }
            Ok(recs)
        })
        .collect::<Result<_>>()?;
    let records: Vec<AuditRecord> = chunks.into_iter().flatten().collect();
    let summary = AuditSummary::from_records(&records, expected_of);
    Ok(AuditReport { records, summary })
}
