//! Canonical text form of ring elements.
//!
//! Scalars print as integers or `num/den`. Quotient and series elements print
//! as `c0+c1t+c2t^2...` with composite coefficients parenthesized, followed by
//! a tag listing the moduli from the outermost ring inwards, e.g.
//! `2+3t (mod t^2+t+1, mod 13)`. Constants print without a tag.

use num_bigint::BigInt;

use super::descriptor::{RingDescriptor, Value};
use crate::error::{Error, Result};

fn var_name(ring: &RingDescriptor) -> &str {
    match ring {
        RingDescriptor::Quotient(q) => q.var(),
        RingDescriptor::Series(_) => "s",
        _ => "",
    }
}

fn is_int_literal(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

fn is_composite(s: &str) -> bool {
    s.char_indices().skip(1).any(|(_, c)| c == '+' || c == '-')
}

/// Renders a dense polynomial. Elements print lowest degree first; moduli
/// print highest degree first.
pub(crate) fn render_poly(base: &RingDescriptor, coeffs: &[Value], var: &str, descending: bool) -> String {
    let mut terms: Vec<String> = Vec::new();
    let many = coeffs.iter().filter(|c| !base.is_zero(c)).count() > 1;
    let mut order: Vec<usize> = (0..coeffs.len()).collect();
    if descending {
        order.reverse();
    }
    for i in order {
        let c = &coeffs[i];
        if base.is_zero(c) {
            continue;
        }
        let ct = render_body(base, c);
        if i == 0 {
            terms.push(if many && is_composite(&ct) { format!("({ct})") } else { ct });
            continue;
        }
        let mon = if i == 1 { var.to_string() } else { format!("{var}^{i}") };
        let term = if base.is_one(c) {
            mon
        } else if base.characteristic() == 0 && base.is_one(&base.neg(c)) {
            format!("-{mon}")
        } else if is_int_literal(&ct) {
            format!("{ct}{mon}")
        } else {
            format!("({ct}){mon}")
        };
        terms.push(term);
    }
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = terms[0].clone();
    for t in &terms[1..] {
        if !t.starts_with('-') {
            out.push('+');
        }
        out.push_str(t);
    }
    out
}

fn render_body(ring: &RingDescriptor, v: &Value) -> String {
    match v {
        Value::Int(n) => n.to_string(),
        Value::Rat(x) => {
            if x.is_integer() {
                x.numer().to_string()
            } else {
                format!("{}/{}", x.numer(), x.denom())
            }
        }
        Value::Mod(x) => x.to_string(),
        Value::Poly(cs) => render_poly(ring.base().expect("poly value in base ring"), cs, var_name(ring), false),
    }
}

fn is_constant(ring: &RingDescriptor, v: &Value) -> bool {
    match v {
        Value::Poly(cs) => {
            let base = ring.base().unwrap();
            cs[1..].iter().all(|c| base.is_zero(c)) && is_constant(base, &cs[0])
        }
        _ => true,
    }
}

/// Modulus tag for a ring, outermost first; empty for `Z` and `Q`.
pub fn tag(ring: &RingDescriptor) -> String {
    let mut parts = Vec::new();
    let mut cur = ring;
    loop {
        match cur {
            RingDescriptor::Quotient(q) => {
                parts.push(format!("mod {}", render_poly(q.base(), q.modulus(), q.var(), true)));
                cur = q.base();
            }
            RingDescriptor::Series(s) => {
                parts.push(format!("mod s^{}", s.order()));
                cur = s.base();
            }
            RingDescriptor::ModPrime(r) => {
                parts.push(format!("mod {r}"));
                break;
            }
            _ => break,
        }
    }
    if parts.is_empty() {
        String::new()
    } else {
        format!("({})", parts.join(", "))
    }
}

pub fn render(ring: &RingDescriptor, v: &Value) -> String {
    let body = render_body(ring, v);
    if is_constant(ring, v) {
        body
    } else {
        format!("{body} {}", tag(ring))
    }
}

/// Parses an element of `ring` from text. Accepts integers, `/`, `*`,
/// implicit multiplication, `^` with nonnegative exponents, parentheses and
/// the variable names of the ring tower. A trailing modulus tag, if present,
/// must match the ring.
pub fn parse(ring: &RingDescriptor, text: &str) -> Result<Value> {
    let mut body = text.trim();
    if let Some(pos) = body.rfind("(mod") {
        let given: String = body[pos..].chars().filter(|c| !c.is_whitespace()).collect();
        let expected: String = tag(ring).chars().filter(|c| !c.is_whitespace()).collect();
        if given != expected {
            return Err(Error::Parse(format!("modulus tag {given} does not match ring {ring}")));
        }
        body = body[..pos].trim_end();
    }
    let mut p = Parser { ring, chars: body.chars().collect(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(Error::Parse(format!("unexpected input at offset {} in {text:?}", p.pos)));
    }
    Ok(v)
}

fn var_value(ring: &RingDescriptor, name: &str) -> Option<Value> {
    match ring {
        RingDescriptor::Quotient(q) if q.var() == name => ring.generator(),
        RingDescriptor::Series(_) if name == "s" => ring.generator(),
        RingDescriptor::Quotient(_) | RingDescriptor::Series(_) => {
            var_value(ring.base().unwrap(), name).map(|v| ring.embed_base(v))
        }
        _ => None,
    }
}

struct Parser<'a> {
    ring: &'a RingDescriptor,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Value> {
        let r = self.ring;
        let mut acc = match self.peek() {
            Some('-') => {
                self.pos += 1;
                let t = self.term()?;
                r.neg(&t)
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = r.add(&acc, &t);
                }
                Some('-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = r.sub(&acc, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let r = self.ring;
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = r.mul(&acc, &f);
                }
                Some('/') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = r
                        .div(&acc, &f)
                        .map_err(|_| Error::Parse("division by a non-unit".into()))?;
                }
                Some(c) if c.is_ascii_alphanumeric() || c == '(' => {
                    let f = self.factor()?;
                    acc = r.mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Value> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            let e: u64 = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent {digits:?}")))?;
            return Ok(self.ring.pow(&base, e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Value> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                let n: BigInt = digits.parse().map_err(|_| Error::Parse(digits.clone()))?;
                Ok(self.ring.from_bigint(&n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                // variable names are single letters, so "tv" is t*v
                self.pos += 1;
                let name = c.to_string();
                var_value(self.ring, &name).ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))
            }
            other => Err(Error::Parse(format!("unexpected {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{adjoin_primitive_root, adjoin_quadratic, RingElement};

    #[test]
    fn render_and_parse_over_z13_extension() {
        let z5 = RingDescriptor::mod_prime(5).unwrap();
        let (k, _) = adjoin_primitive_root(&z5, 3).unwrap();
        let x = RingElement::parse(&k, "2+3t (mod t^2+t+1, mod 5)").unwrap();
        assert_eq!(x.to_string(), "2+3t (mod t^2+t+1, mod 5)");
        assert_eq!(RingElement::parse(&k, "t^2").unwrap().to_string(), "4+4t (mod t^2+t+1, mod 5)");
        assert!(RingElement::parse(&k, "t (mod t^2+1, mod 5)").is_err());
    }

    #[test]
    fn rationals_render_num_den() {
        let q = RingDescriptor::Rationals;
        let x = RingElement::parse(&q, "-6/4").unwrap();
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(RingElement::parse(&q, "(1+2)*3 - 4").unwrap().to_string(), "5");
    }

    #[test]
    fn roundtrip_nested() {
        let (k, _) = adjoin_primitive_root(&RingDescriptor::Rationals, 3).unwrap();
        let (kk, _) = adjoin_quadratic(&k, &BigInt::from(5)).unwrap();
        for s in ["(1/2+t)-v", "3tv", "-1/3", "(2-t)+(1/2)v", "t"] {
            let x = RingElement::parse(&kk, s).unwrap();
            let back = RingElement::parse(&kk, &x.to_string()).unwrap();
            assert_eq!(x, back, "{s} -> {x}");
        }
    }

    #[test]
    fn parse_errors() {
        let q = RingDescriptor::Rationals;
        assert!(RingElement::parse(&q, "1/0").is_err());
        assert!(RingElement::parse(&q, "x").is_err());
        assert!(RingElement::parse(&q, "(1").is_err());
        assert!(RingElement::parse(&q, "1 2 )").is_err());
    }
}
