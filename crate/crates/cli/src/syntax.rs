//! Brane expressions: parsing with positions, and printing in a form the parser reads back.
//!
//! ```text
//! sum      := "0" | ["-"] term (("+" | "-") term)*
//! term     := [integer "*"] brane
//! brane    := "F(" x "," y ")" ["{" lx=g, ly=g "}"]
//!           | "Gamma(" m=, n=, l=, theta= ")" ["{" eta=g, eta2=g, s=±1 "}"]
//!           | "Lx(" m=, theta= ")" ["{" eta2=g "}"]
//!           | "Lx[" pos ":" sign ":" g, ... "]" ["{" eta2=g "}"]
//!           | "Ly(" n=, l= ")"
//!           | "Ly[" pos ":" weight ":" g, ... "]"
//! t2 brane := "H(" a ")" ["{" g=g "}"] | "V(" b ")" ["{" g=g "}"]
//! g        := "e" | "[" c, ... "]" | ["-"] [k] "g" i (("+" | "-") [k] "g" i)*
//! ```

use std::fmt;
use std::sync::Arc;

use cobk_core::abelian::{rational_string, CircleValue, FGAbelianGroup, GroupElement, Rational};
use cobk_core::chow_k0::{DivisorClass, EllipticPoint, ZeroCycle};
use cobk_core::cob_biell::{
    Brane, CobError, FiberBrane, FormalSum, LiftXBrane, LiftYBrane, SectionBrane, XCopy, YComponent, YLevel,
};
use cobk_core::cob_t2::{CircleBrane, Direction};
use cobk_core::tropical::SectionClass;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Character offset into the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.position, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SyntaxError {
    Parse(ParseError),
    /// The expression parsed but does not describe a valid brane.
    Brane(CobError),
}

impl From<ParseError> for SyntaxError {
    fn from(e: ParseError) -> Self {
        SyntaxError::Parse(e)
    }
}

impl From<CobError> for SyntaxError {
    fn from(e: CobError) -> Self {
        SyntaxError::Brane(e)
    }
}

type Result<T> = std::result::Result<T, SyntaxError>;

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    group: &'a Arc<FGAbelianGroup>,
}

impl<'a> Parser<'a> {
    fn new(src: &str, group: &'a Arc<FGAbelianGroup>) -> Self {
        Parser { chars: src.chars().collect(), pos: 0, group }
    }

    fn error<T>(&self, position: usize, message: impl Into<String>) -> Result<T> {
        Err(SyntaxError::Parse(ParseError { position, message: message.into() }))
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            return Ok(());
        }
        match self.peek() {
            Some(found) => self.error(self.pos, format!("expected '{c}', found '{found}'")),
            None => self.error(self.pos, format!("expected '{c}', found end of input")),
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error(self.pos, format!("unexpected '{c}'")),
        }
    }

    fn ident(&mut self) -> Result<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error(start, "expected a name");
        }
        Ok((start, self.chars[start..self.pos].iter().collect()))
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error(start, "expected a number");
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        self.skip_ws();
        let n = self.digits()?;
        Ok(if negative { -n } else { n })
    }

    fn rational(&mut self) -> Result<Rational> {
        let n = self.integer()?;
        if self.eat('/') {
            self.skip_ws();
            let at = self.pos;
            let d = self.digits()?;
            if d.is_zero() {
                return self.error(at, "zero denominator");
            }
            return Ok(Rational::new(n, d));
        }
        Ok(Rational::from_integer(n))
    }

    fn sign(&mut self) -> Result<i8> {
        self.skip_ws();
        let at = self.pos;
        let s = self.integer()?;
        if s == BigInt::one() {
            Ok(1)
        } else if s == -BigInt::one() {
            Ok(-1)
        } else {
            self.error(at, "sign must be 1 or -1")
        }
    }

    fn group_element(&mut self) -> Result<GroupElement> {
        self.skip_ws();
        let start = self.pos;
        if self.eat('[') {
            let mut coords = Vec::new();
            if !self.eat(']') {
                loop {
                    coords.push(self.integer()?);
                    if self.eat(']') {
                        break;
                    }
                    self.expect(',')?;
                }
            }
            let n = coords.len();
            return match self.group.element(coords) {
                Ok(g) => Ok(g),
                Err(_) => self.error(start, format!("expected {} coordinates, got {n}", self.group.ngens())),
            };
        }
        if self.peek() == Some('e') && !self.chars.get(self.pos + 1).is_some_and(|c| c.is_ascii_alphanumeric()) {
            self.pos += 1;
            return Ok(self.group.identity());
        }
        let mut acc = self.group.identity();
        let mut first = true;
        loop {
            let negative = if self.eat('-') {
                true
            } else if first || self.eat('+') {
                false
            } else {
                break;
            };
            first = false;
            self.skip_ws();
            let k = if self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) { self.digits()? } else { BigInt::one() };
            let at = self.pos;
            if !self.eat('g') {
                return self.error(at, "expected a generator g1, g2, ...");
            }
            let i = self.digits()?;
            let ngens = self.group.ngens();
            let index = match usize::try_from(&i) {
                Ok(i) if (1..=ngens).contains(&i) => i - 1,
                _ => return self.error(at, format!("generator index must be between 1 and {ngens}")),
            };
            let term = self.group.generator(index).scale(&if negative { -k } else { k });
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// `{key=value, ...}` or `(key=value, ...)` with keys from `keys`; `value` parses one entry.
    fn fields(&mut self, close: char, keys: &[&str], mut value: impl FnMut(&mut Self, &str) -> Result<()>) -> Result<()> {
        let mut seen = Vec::new();
        if self.eat(close) {
            return Ok(());
        }
        loop {
            let (at, key) = self.ident()?;
            if !keys.contains(&key.as_str()) {
                return self.error(at, format!("unknown field '{key}', expected one of {}", keys.join(", ")));
            }
            if seen.contains(&key) {
                return self.error(at, format!("field '{key}' given twice"));
            }
            self.expect('=')?;
            value(self, &key)?;
            seen.push(key);
            if self.eat(close) {
                return Ok(());
            }
            self.expect(',')?;
        }
    }

    fn sum(&mut self) -> Result<FormalSum> {
        let rest: String = self.chars[self.pos..].iter().collect();
        if rest.trim() == "0" {
            self.pos = self.chars.len();
            return Ok(FormalSum::zero());
        }
        let mut out = FormalSum::zero();
        let mut negative = self.eat('-');
        loop {
            let (k, b) = self.term()?;
            out.push(b, if negative { -k } else { k });
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                break;
            }
        }
        self.finish()?;
        Ok(out)
    }

    fn coefficient(&mut self) -> Result<BigInt> {
        self.skip_ws();
        if self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            let k = self.digits()?;
            self.expect('*')?;
            Ok(k)
        } else {
            Ok(BigInt::one())
        }
    }

    fn term(&mut self) -> Result<(BigInt, Brane)> {
        let k = self.coefficient()?;
        let (at, name) = self.ident()?;
        let b = match name.as_str() {
            "F" => self.fiber()?,
            "Gamma" => self.section()?,
            "Lx" => self.lift_x()?,
            "Ly" => self.lift_y()?,
            _ => return self.error(at, format!("unknown brane '{name}', expected F, Gamma, Lx or Ly")),
        };
        Ok((k, b))
    }

    fn fiber(&mut self) -> Result<Brane> {
        self.expect('(')?;
        let x = self.rational()?;
        self.expect(',')?;
        let y = self.rational()?;
        self.expect(')')?;
        let (mut lx, mut ly) = (self.group.identity(), self.group.identity());
        if self.eat('{') {
            self.fields('}', &["lx", "ly"], |p, key| {
                let g = p.group_element()?;
                if key == "lx" {
                    lx = g;
                } else {
                    ly = g;
                }
                Ok(())
            })?;
        }
        Ok(FiberBrane::new(x, y, lx, ly).into())
    }

    fn section(&mut self) -> Result<Brane> {
        self.expect('(')?;
        let (mut m, mut n, mut l) = (BigInt::zero(), BigInt::zero(), BigInt::zero());
        let mut theta = Rational::zero();
        self.fields(')', &["m", "n", "l", "theta"], |p, key| {
            match key {
                "m" => m = p.integer()?,
                "n" => n = p.integer()?,
                "l" => l = p.integer()?,
                _ => theta = p.rational()?,
            }
            Ok(())
        })?;
        let (mut eta, mut eta2, mut parity) = (self.group.identity(), self.group.identity(), 1i8);
        if self.eat('{') {
            self.fields('}', &["eta", "eta2", "s"], |p, key| {
                match key {
                    "eta" => eta = p.group_element()?,
                    "eta2" => eta2 = p.group_element()?,
                    _ => parity = p.sign()?,
                }
                Ok(())
            })?;
        }
        let class = SectionClass::new(m, n, &l, CircleValue::new(theta));
        Ok(SectionBrane::new(class, parity, eta, eta2)?.into())
    }

    fn eta2_block(&mut self) -> Result<GroupElement> {
        let mut eta2 = self.group.identity();
        if self.eat('{') {
            self.fields('}', &["eta2"], |p, _| {
                eta2 = p.group_element()?;
                Ok(())
            })?;
        }
        Ok(eta2)
    }

    /// `[pos:k:g, ...]`, where `k` is read by `middle`.
    fn components<T>(&mut self, mut middle: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<(usize, Rational, T, GroupElement)>> {
        let mut out = Vec::new();
        if self.eat(']') {
            return Ok(out);
        }
        loop {
            self.skip_ws();
            let at = self.pos;
            let pos = self.rational()?;
            self.expect(':')?;
            let k = middle(self)?;
            self.expect(':')?;
            let g = self.group_element()?;
            out.push((at, pos, k, g));
            if self.eat(']') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn lift_x(&mut self) -> Result<Brane> {
        if self.eat('[') {
            let parts = self.components(|p| p.sign())?;
            let eta2 = self.eta2_block()?;
            let copies =
                parts.into_iter().map(|(_, pos, sign, nu)| XCopy { position: CircleValue::new(pos), sign, nu }).collect();
            return Ok(LiftXBrane::new(copies, eta2)?.into());
        }
        self.expect('(')?;
        let mut m = BigInt::zero();
        let mut theta = Rational::zero();
        self.fields(')', &["m", "theta"], |p, key| {
            if key == "m" {
                m = p.integer()?;
            } else {
                theta = p.rational()?;
            }
            Ok(())
        })?;
        let eta2 = self.eta2_block()?;
        let theta = CircleValue::new(theta);
        let slots = if theta.is_zero() { 0 } else { 2 };
        let count = usize::try_from(m.abs()).unwrap_or(usize::MAX).saturating_add(slots);
        if count > 100_000 {
            return self.error(self.pos, "too many sheets");
        }
        let nus = vec![self.group.identity(); count];
        Ok(LiftXBrane::from_function(&m, &theta, &nus, eta2)?.into())
    }

    fn lift_y(&mut self) -> Result<Brane> {
        if self.eat('[') {
            let parts = self.components(|p| p.integer())?;
            let mut comps = Vec::new();
            for (at, pos, weight, nu) in parts {
                let level = match YLevel::from_position(&CircleValue::new(pos)) {
                    Ok(level) => level,
                    Err(_) => return self.error(at, "y-lift components sit at 0 or 1/2"),
                };
                comps.push(YComponent { level, weight, nu });
            }
            return Ok(LiftYBrane::new(comps)?.into());
        }
        self.expect('(')?;
        let (mut n, mut l) = (BigInt::zero(), BigInt::zero());
        self.fields(')', &["n", "l"], |p, key| {
            if key == "n" {
                n = p.integer()?;
            } else {
                l = p.integer()?;
            }
            Ok(())
        })?;
        let l = u8::from(!(&l % BigInt::from(2)).is_zero());
        Ok(LiftYBrane::from_function(&n, l, self.group).into())
    }

    fn t2_sum(&mut self) -> Result<Vec<CircleBrane>> {
        let rest: String = self.chars[self.pos..].iter().collect();
        if rest.trim() == "0" {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let mut negative = self.eat('-');
        loop {
            let k = self.coefficient()?;
            let (at, name) = self.ident()?;
            let direction = match name.as_str() {
                "H" => Direction::Horizontal,
                "V" => Direction::Vertical,
                _ => return self.error(at, format!("unknown circle '{name}', expected H or V")),
            };
            self.expect('(')?;
            let position = CircleValue::new(self.rational()?);
            self.expect(')')?;
            let mut monodromy = self.group.identity();
            if self.eat('{') {
                self.fields('}', &["g"], |p, _| {
                    monodromy = p.group_element()?;
                    Ok(())
                })?;
            }
            let count = usize::try_from(&k).unwrap_or(usize::MAX);
            if count > 100_000 {
                return self.error(at, "coefficient too large");
            }
            let b = CircleBrane { direction, position, monodromy, sign: if negative { -1 } else { 1 } };
            out.extend(std::iter::repeat(b).take(count));
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                break;
            }
        }
        self.finish()?;
        Ok(out)
    }

    fn elliptic_fields(&mut self, key_circle: &str) -> Result<EllipticPoint> {
        let mut circle = Rational::zero();
        let mut g = self.group.identity();
        if self.eat('{') {
            self.fields('}', &[key_circle, "g"], |p, key| {
                if key == "g" {
                    g = p.group_element()?;
                } else {
                    circle = p.rational()?;
                }
                Ok(())
            })?;
        }
        Ok(EllipticPoint::new(CircleValue::new(circle), g))
    }

    fn divisor(&mut self) -> Result<DivisorClass> {
        let (at, name) = self.ident()?;
        if name != "D" {
            return self.error(at, "expected D(d1,d2,d3,d4)");
        }
        self.expect('(')?;
        let mut d = Vec::new();
        for i in 0..4 {
            if i > 0 {
                self.expect(',')?;
            }
            d.push(self.integer()?);
        }
        self.expect(')')?;
        let pic0 = self.elliptic_fields("pic0")?;
        self.finish()?;
        Ok(DivisorClass::new(d[0].clone(), d[1].clone(), &d[2], &d[3], pic0))
    }

    fn zero_cycle(&mut self) -> Result<ZeroCycle> {
        let (at, name) = self.ident()?;
        if name != "Z" {
            return self.error(at, "expected Z(degree)");
        }
        self.expect('(')?;
        let degree = self.integer()?;
        self.expect(')')?;
        let alb = self.elliptic_fields("alb")?;
        self.finish()?;
        Ok(ZeroCycle::new(degree, alb))
    }
}

pub fn parse_sum(src: &str, g: &Arc<FGAbelianGroup>) -> Result<FormalSum> {
    Parser::new(src, g).sum()
}

pub fn parse_t2_sum(src: &str, g: &Arc<FGAbelianGroup>) -> Result<Vec<CircleBrane>> {
    Parser::new(src, g).t2_sum()
}

pub fn parse_group_element(src: &str, g: &Arc<FGAbelianGroup>) -> Result<GroupElement> {
    let mut p = Parser::new(src, g);
    let x = p.group_element()?;
    p.finish()?;
    Ok(x)
}

pub fn parse_integer(src: &str) -> Result<BigInt> {
    let g = Arc::new(FGAbelianGroup::trivial());
    let mut p = Parser::new(src, &g);
    let n = p.integer()?;
    p.finish()?;
    Ok(n)
}

/// `D(d1,d2,d3,d4){pic0=q,g=..}`.
pub fn parse_divisor(src: &str, g: &Arc<FGAbelianGroup>) -> Result<DivisorClass> {
    Parser::new(src, g).divisor()
}

/// `Z(degree){alb=q,g=..}`.
pub fn parse_zero_cycle(src: &str, g: &Arc<FGAbelianGroup>) -> Result<ZeroCycle> {
    Parser::new(src, g).zero_cycle()
}

pub fn print_element(g: &GroupElement) -> String {
    if g.is_identity() {
        "e".to_string()
    } else {
        let c: Vec<String> = g.coords().iter().map(|c| c.to_string()).collect();
        format!("[{}]", c.join(","))
    }
}

fn print_decorations(fields: &[(&str, String)]) -> String {
    if fields.is_empty() {
        return String::new();
    }
    let parts: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn print_brane(b: &Brane) -> String {
    match b {
        Brane::Fiber(f) => {
            let mut deco = Vec::new();
            if !f.lx().is_identity() {
                deco.push(("lx", print_element(f.lx())));
            }
            if !f.ly().is_identity() {
                deco.push(("ly", print_element(f.ly())));
            }
            format!("F({},{}){}", rational_string(f.x()), rational_string(f.y()), print_decorations(&deco))
        }
        Brane::Section(s) => {
            let c = s.class();
            let mut deco = Vec::new();
            if !s.eta_z().is_identity() {
                deco.push(("eta", print_element(s.eta_z())));
            }
            if !s.eta2().is_identity() {
                deco.push(("eta2", print_element(s.eta2())));
            }
            if s.parity() == -1 {
                deco.push(("s", "-1".to_string()));
            }
            format!("Gamma(m={},n={},l={},theta={}){}", c.m, c.n, c.l(), c.theta, print_decorations(&deco))
        }
        Brane::LiftX(l) => {
            let parts: Vec<String> =
                l.copies().iter().map(|c| format!("{}:{}:{}", c.position, c.sign, print_element(&c.nu))).collect();
            let mut deco = Vec::new();
            if !l.eta2().is_identity() {
                deco.push(("eta2", print_element(l.eta2())));
            }
            format!("Lx[{}]{}", parts.join(","), print_decorations(&deco))
        }
        Brane::LiftY(l) => {
            let parts: Vec<String> = l
                .components()
                .iter()
                .map(|c| format!("{}:{}:{}", c.level.position(), c.weight, print_element(&c.nu)))
                .collect();
            format!("Ly[{}]", parts.join(","))
        }
    }
}

fn print_terms<'a>(terms: impl Iterator<Item = (String, &'a BigInt)>) -> String {
    let mut out = String::new();
    for (i, (b, k)) in terms.enumerate() {
        let sign = if k.is_negative() { "-" } else { "+" };
        if i == 0 {
            if k.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let a = k.abs();
        if !a.is_one() {
            out.push_str(&format!("{a}*"));
        }
        out.push_str(&b);
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

pub fn print_sum(sum: &FormalSum) -> String {
    print_terms(sum.terms().map(|(b, k)| (print_brane(b), k)))
}

pub fn print_t2_sum(sum: &[CircleBrane]) -> String {
    let signs: Vec<BigInt> = sum.iter().map(|b| BigInt::from(b.sign)).collect();
    print_terms(sum.iter().zip(&signs).map(|(b, k)| {
        let name = match b.direction {
            Direction::Horizontal => "H",
            Direction::Vertical => "V",
        };
        let deco = if b.monodromy.is_identity() { String::new() } else { format!("{{g={}}}", print_element(&b.monodromy)) };
        (format!("{name}({}){deco}", b.position), k)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use cobk_core::abelian::rat;

    fn g() -> Arc<FGAbelianGroup> {
        Arc::new(FGAbelianGroup::from_i64(1, &[2]).unwrap())
    }

    fn position(e: SyntaxError) -> usize {
        match e {
            SyntaxError::Parse(p) => p.position,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn group_elements() {
        let g = g();
        assert_eq!(parse_group_element("e", &g).unwrap(), g.identity());
        assert_eq!(parse_group_element("2g1+g2", &g).unwrap(), g.element_i64(&[2, 1]).unwrap());
        assert_eq!(parse_group_element("-g1 - 3g2", &g).unwrap(), g.element_i64(&[-1, 1]).unwrap());
        assert_eq!(parse_group_element("[3,1]", &g).unwrap(), g.element_i64(&[3, 1]).unwrap());
        assert_eq!(position(parse_group_element("g3", &g).unwrap_err()), 0);
        assert_eq!(position(parse_group_element("[1]", &g).unwrap_err()), 0);
    }

    #[test]
    fn expression_example() {
        let g = g();
        let s = parse_sum("2*F(1/4,1/2){lx=g1} + Gamma(m=1,n=0,l=0,theta=1/3){eta=g2} - Lx(theta=0)", &g).unwrap();
        assert_eq!(s.len(), 2);
        let f = FiberBrane::new(rat(1, 4), rat(1, 2), g.generator(0), g.identity());
        assert_eq!(s.terms().find(|(b, _)| **b == Brane::Fiber(f.clone())).map(|(_, k)| k.clone()), Some(BigInt::from(2)));
        let printed = print_sum(&s);
        assert_eq!(parse_sum(&printed, &g).unwrap(), s);
    }

    #[test]
    fn lifts_and_sections() {
        let g = g();
        let a = parse_sum("Lx(m=-2,theta=1/3)", &g).unwrap();
        let b = parse_sum("Lx[1/2:-1:e,1/2:-1:e,2/3:1:e,0:-1:e]", &g).unwrap();
        assert_eq!(a, b);
        let y = parse_sum("Ly(n=2,l=1)", &g).unwrap();
        assert_eq!(y, parse_sum("Ly[1/2:3:e,0:-1:e]", &g).unwrap());
        let s = parse_sum("-Gamma(theta=1/4){s=-1,eta2=g2}", &g).unwrap();
        assert_eq!(print_sum(&s), "-Gamma(m=0,n=0,l=0,theta=1/4){eta2=[0,1],s=-1}");
        assert!(matches!(parse_sum("Gamma(){eta2=g1}", &g), Err(SyntaxError::Brane(CobError::NotTwoTorsion(_)))));
        assert_eq!(parse_sum("0", &g).unwrap(), FormalSum::zero());
        assert_eq!(print_sum(&FormalSum::zero()), "0");
    }

    #[test]
    fn error_positions() {
        let g = g();
        assert_eq!(position(parse_sum("F(0,1/2) + Q(1)", &g).unwrap_err()), 11);
        assert_eq!(position(parse_sum("Gamma(m=1,k=2)", &g).unwrap_err()), 10);
        assert_eq!(position(parse_sum("F(0,1/0)", &g).unwrap_err()), 6);
        assert_eq!(position(parse_sum("Ly[1/3:1:e]", &g).unwrap_err()), 3);
        assert_eq!(position(parse_sum("F(0,1) F(0,0)", &g).unwrap_err()), 7);
        assert_eq!(position(parse_sum("Gamma(m=1,m=2)", &g).unwrap_err()), 10);
    }

    #[test]
    fn t2_and_chow_syntax() {
        let g = g();
        let s = parse_t2_sum("H(0) - H(1/3){g=g1} + 2*V(1/4)", &g).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(parse_t2_sum(&print_t2_sum(&s), &g).unwrap(), s);
        let d = parse_divisor("D(1,-2,1,3){pic0=1/3,g=g2}", &g).unwrap();
        assert_eq!(d, DivisorClass::from_i64(1, -2, 1, 1, EllipticPoint::new(CircleValue::from_ratio(1, 3), g.generator(1))));
        let z = parse_zero_cycle("Z(-1)", &g).unwrap();
        assert_eq!(z, ZeroCycle::new(BigInt::from(-1), EllipticPoint::zero(&g)));
    }
}
