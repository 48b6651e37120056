//! Text forms for rings, series and derivations.
//!
//! Ring specs: `Q`, `Z`, `Z/6`, `F2`, optionally followed by layers
//! `[x:0,y:0;3]` (polynomial, truncated in total degree) or `{eps:0}`
//! (square-zero). Degrees default to 0.
//!
//! Expressions: rational and integer literals, ring generators, the letters
//! `tau` and `t`, `+ - * / ^` and parentheses. Derivations add the atoms
//! `dtau`, `dt` and `m0`; a series directly before `dtau` or `dt` multiplies
//! it, so `t^2 dtau + 2*t dt` is accepted as printed by the kernel.

use moore_algebra::moore::trivial_derivation;
use moore_algebra::ring::{make_ring, Generator, RingSpec};
use moore_algebra::{CommSeries, Derivation, GradingContext, NcSeries, Ring, RingElement, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

/// A parse failure at a byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at position {pos}: expected {expected}, found {found}")]
pub struct ParseError {
    pub pos: usize,
    pub expected: String,
    pub found: String,
}

fn fail<T>(pos: usize, expected: impl Into<String>, found: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, expected: expected.into(), found: found.into() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number {n}"),
            Tok::Ident(s) => format!("name {s}"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of input".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((pos, Tok::Int(digits.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|(_, c)| c).collect())));
        } else if "+-*/^()[]{},;:".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return fail(pos, "a number, name or operator", format!("'{c}'"));
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Cursor {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Cursor {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Cursor { toks: tokenize(text)?, at: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            fail(self.pos(), format!("'{c}'"), self.peek().describe())
        }
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.at += 1;
                Ok(n)
            }
            other => fail(self.pos(), "a number", other.describe()),
        }
    }

    fn small(&mut self) -> Result<i64, ParseError> {
        let pos = self.pos();
        let n = self.int()?;
        n.to_i64().map_or_else(|| fail(pos, "a small integer", n.to_string()), Ok)
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.at += 1;
                Ok(s)
            }
            other => fail(self.pos(), "a name", other.describe()),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            other => fail(self.pos(), "end of input", other.describe()),
        }
    }
}

const RESERVED: [&str; 5] = ["t", "tau", "dt", "dtau", "m0"];

/// Parses a ring specification.
pub fn parse_ring_spec(text: &str) -> Result<RingSpec, ParseError> {
    let mut cur = Cursor::new(text)?;
    let pos = cur.pos();
    let name = cur.ident()?;
    let mut spec = match name.as_str() {
        "Q" | "rationals" => RingSpec::Rationals,
        "Z" | "integers" => {
            if cur.eat('/') {
                let n = cur.small()?;
                RingSpec::IntegersMod(n.max(0) as u64)
            } else {
                RingSpec::Integers
            }
        }
        _ => match name.strip_prefix('F').and_then(|p| p.parse::<u64>().ok()) {
            Some(p) => RingSpec::IntegersMod(p),
            None => return fail(pos, "Q, Z, Z/n or Fp", format!("name {name}")),
        },
    };
    loop {
        if cur.eat('[') {
            let gens = generators(&mut cur)?;
            cur.expect(';')?;
            let m = cur.small()?;
            cur.expect(']')?;
            spec = RingSpec::polynomial(spec, gens, m.max(0) as u32);
        } else if cur.eat('{') {
            let gens = generators(&mut cur)?;
            cur.expect('}')?;
            spec = RingSpec::square_zero(spec, gens);
        } else {
            break;
        }
    }
    cur.finish()?;
    Ok(spec)
}

fn generators(cur: &mut Cursor) -> Result<Vec<Generator>, ParseError> {
    let mut out = Vec::new();
    loop {
        let pos = cur.pos();
        let name = cur.ident()?;
        if RESERVED.contains(&name.as_str()) {
            return fail(pos, "a generator name", format!("reserved name {name}"));
        }
        let degree = if cur.eat(':') {
            let neg = cur.eat('-');
            let d = cur.small()?;
            if neg {
                -d
            } else {
                d
            }
        } else {
            0
        };
        out.push(Generator::new(name, degree));
        if !cur.eat(',') {
            return Ok(out);
        }
    }
}

/// A ring from its text form; construction errors are reported at offset 0.
pub fn parse_ring(text: &str) -> Result<Ring, ParseError> {
    let spec = parse_ring_spec(text)?;
    make_ring(&spec).map_err(|e| ParseError { pos: 0, expected: "a valid ring".into(), found: e.to_string() })
}

#[derive(Clone, Debug)]
enum Value {
    Series(NcSeries<RingElement>),
    /// Generator images `(τ ↦ a, t ↦ b)`, constants allowed until the end.
    Der(NcSeries<RingElement>, NcSeries<RingElement>),
}

struct Expr<'a> {
    cur: Cursor,
    ring: &'a Ring,
    ctx: GradingContext,
    derivations: bool,
}

impl Expr<'_> {
    fn constant(&self, c: RingElement) -> NcSeries<RingElement> {
        NcSeries::constant(c, self.ctx)
    }

    fn sum(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.product()?;
        loop {
            let pos = self.cur.pos();
            if self.cur.eat('+') {
                let rhs = self.product()?;
                acc = self.combine(pos, acc, rhs, false)?;
            } else if self.cur.eat('-') {
                let rhs = self.product()?;
                acc = self.combine(pos, acc, rhs, true)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn negate(&self, v: Value) -> Value {
        match v {
            Value::Series(s) => Value::Series(s.neg()),
            Value::Der(a, b) => Value::Der(a.neg(), b.neg()),
        }
    }

    fn combine(&self, pos: usize, a: Value, b: Value, subtract: bool) -> Result<Value, ParseError> {
        let b = if subtract { self.negate(b) } else { b };
        match (a, b) {
            (Value::Series(x), Value::Series(y)) => Ok(Value::Series(x.add(&y))),
            (Value::Der(a1, b1), Value::Der(a2, b2)) => Ok(Value::Der(a1.add(&a2), b1.add(&b2))),
            (Value::Series(x), Value::Der(a, b)) | (Value::Der(a, b), Value::Series(x)) if x.is_zero() => Ok(Value::Der(a, b)),
            _ => fail(pos, "terms of one kind", "a series added to a derivation"),
        }
    }

    fn product(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.unary()?;
        loop {
            let pos = self.cur.pos();
            if self.cur.eat('*') {
                let rhs = self.unary()?;
                acc = self.multiply(pos, acc, rhs)?;
            } else if self.cur.eat('/') {
                let rhs = self.unary()?;
                acc = self.divide(pos, acc, rhs)?;
            } else if self.derivations && matches!(self.cur.peek(), Tok::Ident(s) if s == "dtau" || s == "dt") {
                let rhs = self.unary()?;
                acc = self.multiply(pos, acc, rhs)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn multiply(&self, pos: usize, a: Value, b: Value) -> Result<Value, ParseError> {
        match (a, b) {
            (Value::Series(x), Value::Series(y)) => Ok(Value::Series(x.mul(&y))),
            (Value::Series(x), Value::Der(a, b)) => Ok(Value::Der(x.mul(&a), x.mul(&b))),
            _ => fail(pos, "a series on the left of a derivation", "a derivation multiplied on the right"),
        }
    }

    fn divide(&self, pos: usize, a: Value, b: Value) -> Result<Value, ParseError> {
        let Value::Series(d) = b else {
            return fail(pos, "a constant divisor", "a derivation");
        };
        let c = d.coefficient(Word::EMPTY);
        if d.sub(&self.constant(c.clone())).is_zero() {
            if let Some(inv) = c.inverse() {
                let scale = |s: NcSeries<RingElement>| s.scale(&inv);
                return Ok(match a {
                    Value::Series(s) => Value::Series(scale(s)),
                    Value::Der(x, y) => Value::Der(scale(x), scale(y)),
                });
            }
            return fail(pos, "a unit divisor", format!("{c}, not invertible in {}", self.ring.spec()));
        }
        fail(pos, "a constant divisor", format!("series {d}"))
    }

    fn unary(&mut self) -> Result<Value, ParseError> {
        if self.cur.eat('-') {
            let v = self.unary()?;
            return Ok(self.negate(v));
        }
        let base = self.atom()?;
        if self.cur.eat('^') {
            let pos = self.cur.pos();
            let e = self.cur.small()?;
            return match base {
                Value::Series(s) => {
                    let mut acc = self.constant(self.ring.one());
                    for _ in 0..e {
                        acc = acc.mul(&s);
                    }
                    Ok(Value::Series(acc))
                }
                Value::Der(..) => fail(pos, "a series base for '^'", "a derivation"),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let pos = self.cur.pos();
        match self.cur.bump() {
            Tok::Int(n) => {
                let q = BigRational::from_integer(n);
                let c = self
                    .ring
                    .from_rational(&q)
                    .or_else(|_| fail(pos, "a value in the ring", q.to_string()))?;
                Ok(Value::Series(self.constant(c)))
            }
            Tok::Sym('(') => {
                let v = self.sum()?;
                self.cur.expect(')')?;
                Ok(v)
            }
            Tok::Ident(name) => self.name(pos, &name),
            other => fail(pos, "a number, name or '('", other.describe()),
        }
    }

    fn name(&self, pos: usize, name: &str) -> Result<Value, ParseError> {
        let (ring, ctx) = (self.ring, self.ctx);
        match name {
            "t" => Ok(Value::Series(NcSeries::t(ring, ctx))),
            "tau" => Ok(Value::Series(NcSeries::tau(ring, ctx))),
            "dtau" | "dt" | "m0" if !self.derivations => fail(pos, "a series", format!("derivation atom {name}")),
            "dtau" => Ok(Value::Der(self.constant(ring.one()), NcSeries::zero(ring, ctx))),
            "dt" => Ok(Value::Der(NcSeries::zero(ring, ctx), self.constant(ring.one()))),
            "m0" => {
                let m = trivial_derivation::<RingElement>(ring, ctx);
                Ok(Value::Der(m.image(moore_algebra::Letter::Tau).clone(), m.image(moore_algebra::Letter::T).clone()))
            }
            _ => match ring.generator(name) {
                Ok(g) => Ok(Value::Series(self.constant(g))),
                Err(_) => fail(pos, "a ring generator, t or tau", format!("unknown name {name}")),
            },
        }
    }
}

fn evaluate(text: &str, ring: &Ring, ctx: GradingContext, derivations: bool) -> Result<Value, ParseError> {
    let mut e = Expr { cur: Cursor::new(text)?, ring, ctx, derivations };
    let v = e.sum()?;
    e.cur.finish()?;
    Ok(v)
}

/// A noncommutative series in `τ` and `t`.
pub fn parse_nc_series(text: &str, ring: &Ring, ctx: GradingContext) -> Result<NcSeries<RingElement>, ParseError> {
    match evaluate(text, ring, ctx, false)? {
        Value::Series(s) => Ok(s),
        Value::Der(..) => unreachable!("derivation atoms are rejected"),
    }
}

/// A series in `t` alone; `allow_constant` permits a nonzero constant term.
pub fn parse_series(text: &str, ring: &Ring, ctx: GradingContext, allow_constant: bool) -> Result<CommSeries<RingElement>, ParseError> {
    let s = parse_nc_series(text, ring, ctx)?;
    let Some(c) = s.to_comm() else {
        return fail(0, "a series in t only", format!("{s}"));
    };
    if !allow_constant && !c.constant_term().is_zero() {
        return fail(0, "a series without constant term", format!("constant term {}", c.constant_term()));
    }
    Ok(c)
}

/// A derivation `A dtau + B dt`, optionally with `m0`.
pub fn parse_derivation(text: &str, ring: &Ring, ctx: GradingContext) -> Result<Derivation<RingElement>, ParseError> {
    let (a, b) = match evaluate(text, ring, ctx, true)? {
        Value::Der(a, b) => (a, b),
        Value::Series(s) if s.is_zero() => (s.clone(), s),
        Value::Series(s) => return fail(0, "a derivation (terms ending in dtau or dt)", format!("series {s}")),
    };
    for (name, s) in [("dtau", &a), ("dt", &b)] {
        let c = s.coefficient(Word::EMPTY);
        if !c.is_zero() {
            return fail(0, "a derivation without constant terms", format!("constant {c} before {name}"));
        }
    }
    Derivation::new(a, b).map_err(|e| ParseError { pos: 0, expected: "a derivation".into(), found: e.to_string() })
}

/// Jet coefficients `m1: …; m3: …`; unnamed orders are zero.
pub fn parse_jet(text: &str, ring: &Ring, ctx: GradingContext) -> Result<Vec<Derivation<RingElement>>, ParseError> {
    let mut entries: Vec<(usize, Derivation<RingElement>)> = Vec::new();
    let mut offset = 0;
    for piece in text.split(';') {
        let here = offset;
        offset += piece.len() + 1;
        if piece.trim().is_empty() {
            continue;
        }
        let Some((head, body)) = piece.split_once(':') else {
            return fail(here, "an entry 'mk: derivation'", piece.trim().to_string());
        };
        let k = head.trim().strip_prefix('m').and_then(|k| k.parse::<usize>().ok()).filter(|&k| k > 0);
        let Some(k) = k else {
            return fail(here, "a coefficient name m1, m2, ...", head.trim().to_string());
        };
        if entries.iter().any(|(j, _)| *j == k) {
            return fail(here, "each order once", format!("m{k} repeated"));
        }
        let d = parse_derivation(body, ring, ctx).map_err(|e| ParseError { pos: e.pos + here + head.len() + 1, ..e })?;
        entries.push((k, d));
    }
    let order = entries.iter().map(|(k, _)| *k).max().unwrap_or(0);
    let mut out = vec![Derivation::zero(ring, ctx); order];
    for (k, d) in entries {
        out[k - 1] = d;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Ring {
        Ring::rationals()
    }

    fn odd(n: usize) -> GradingContext {
        GradingContext::odd(n).unwrap()
    }

    #[test]
    fn series_forms() {
        let s = parse_series("t^2 + (1/2)*t^4", &q(), odd(8), false).unwrap();
        assert_eq!(s.to_string(), "t^2 + (1/2)*t^4");
        let even = GradingContext::even(4).unwrap();
        let c = parse_nc_series("tau*t - t*tau", &q(), even).unwrap();
        assert_eq!(c.to_string(), "tau*t - t*tau");
        let w = parse_ring("Q[w1:2;3]").unwrap();
        assert_eq!(parse_series("w1*t^2", &w, odd(6), false).unwrap().to_string(), "w1*t^2");
        assert_eq!(parse_series("-(t - 2*t)^3", &q(), odd(6), false).unwrap().to_string(), "t^3");
    }

    #[test]
    fn ring_forms() {
        assert_eq!(parse_ring_spec("F2").unwrap(), RingSpec::IntegersMod(2));
        assert_eq!(parse_ring_spec("Z / 6").unwrap(), RingSpec::IntegersMod(6));
        let spec = parse_ring_spec("Q[x,y:2;3]{eps}").unwrap();
        assert_eq!(spec.to_string(), "Q[x:0,y:2;3]{eps:0}");
        assert_eq!(parse_ring_spec(&spec.to_string()).unwrap(), spec);
        assert!(parse_ring("Z/1").is_err());
        let err = parse_ring_spec("Q[t;2]").unwrap_err();
        assert_eq!(err.pos, 2);
    }

    #[test]
    fn derivation_forms() {
        let r = parse_ring("Q[x,y;3]").unwrap();
        let c = GradingContext::even(6).unwrap();
        let d = parse_derivation("(x + x*y)*t dtau + 2*t^3 dt", &r, c).unwrap();
        assert_eq!(d.to_string(), "(x + x*y)*t dtau + 2*t^3 dt");
        assert_eq!(parse_derivation(&d.to_string(), &r, c).unwrap().to_string(), d.to_string());
        let m = parse_derivation("m0 + t^2 dtau", &q(), c).unwrap();
        assert!(m.sub(&trivial_derivation(&q(), c)).agrees_with(&parse_derivation("t^2 dtau", &q(), c).unwrap()));
        assert!(parse_derivation("dtau", &q(), c).is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_series("t^2 + * t", &q(), odd(6), false).unwrap_err();
        assert_eq!((e.pos, e.found.as_str()), (6, "'*'"));
        let e = parse_series("t + z", &q(), odd(6), false).unwrap_err();
        assert_eq!(e.pos, 4);
        assert!(e.found.contains("unknown name z"));
        assert!(parse_series("1 + t", &q(), odd(6), false).is_err());
        assert!(parse_series("t/2", &Ring::integers(), odd(6), false).is_err());
        let e = parse_jet("m1: t dtau; m2: t + ", &q(), odd(6)).unwrap_err();
        assert_eq!(e.pos, 20);
    }

    #[test]
    fn jets() {
        let f2 = Ring::integers_mod(2).unwrap();
        let c = GradingContext::even(6).unwrap();
        let jet = parse_jet("m2: t^2 dtau", &f2, c).unwrap();
        assert_eq!(jet.len(), 2);
        assert!(jet[0].is_zero());
        assert_eq!(jet[1].to_string(), "t^2 dtau");
    }
}
