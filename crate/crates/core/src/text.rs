//! Operator expressions: parsing into a skew ring and canonical printing.
//!
//! Grammar (juxtaposition is multiplication, `^` binds tightest):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/' | <juxtaposition>) unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | 'z' | 'E' | 'D' | '(' expr ')'
//! ```
//!
//! Products are taken in the ring, so `E*z` is `(z+1)*E` and `D*z` is
//! `z*D + 1`. Division is only allowed by an operator of order zero.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::field::Rat;
use crate::algebra::poly::Poly;
use crate::algebra::ratfun::RatFun;
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::shiftop::ShiftOp;

/// The operations the parser needs from an Ore-type operator ring.
pub trait OperatorRing: Clone {
    /// The symbol of the generator, `E` or `D`.
    const GEN: char;
    const NAME: &'static str;
    fn function(f: RatFun<Rat>) -> Self;
    fn from_coefficients(c: Vec<RatFun<Rat>>) -> Self;
    fn generator() -> Self;
    /// The coefficient when the operator has order zero.
    fn as_function(&self) -> Option<RatFun<Rat>>;
    fn coefficients(&self) -> &[RatFun<Rat>];
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl OperatorRing for ShiftOp {
    const GEN: char = 'E';
    const NAME: &'static str = "shift";
    fn function(f: RatFun<Rat>) -> Self {
        ShiftOp::from_function(f)
    }
    fn from_coefficients(c: Vec<RatFun<Rat>>) -> Self {
        ShiftOp::new(c)
    }
    fn generator() -> Self {
        ShiftOp::e()
    }
    fn as_function(&self) -> Option<RatFun<Rat>> {
        (self.order() == 0).then(|| self.coeff(0))
    }
    fn coefficients(&self) -> &[RatFun<Rat>] {
        self.coeffs()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl OperatorRing for DiffOp {
    const GEN: char = 'D';
    const NAME: &'static str = "diff";
    fn function(f: RatFun<Rat>) -> Self {
        DiffOp::from_function(f)
    }
    fn from_coefficients(c: Vec<RatFun<Rat>>) -> Self {
        DiffOp::new(c)
    }
    fn generator() -> Self {
        DiffOp::d()
    }
    fn as_function(&self) -> Option<RatFun<Rat>> {
        (self.order() == 0).then(|| self.coeff(0))
    }
    fn coefficients(&self) -> &[RatFun<Rat>] {
        self.coeffs()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(char),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            _ if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((start, Tok::Num(s.parse().unwrap())));
            }
            'z' | 'E' | 'D' => {
                out.push((i, Tok::Ident(c)));
                i += 1;
            }
            '\u{2202}' => {
                out.push((i, Tok::Ident('D')));
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push((i, Tok::Op(c)));
                i += 1;
            }
            '\u{2212}' => {
                out.push((i, Tok::Op('-')));
                i += 1;
            }
            '\u{b7}' => {
                out.push((i, Tok::Op('*')));
                i += 1;
            }
            _ => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character '{c}'"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<R> {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
    _ring: std::marker::PhantomData<R>,
}

impl<R: OperatorRing> Parser<R> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<R> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('(')))
    }

    fn term(&mut self) -> Result<R> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.peek() == Some(&Tok::Op('/')) {
                let pos = self.pos();
                self.i += 1;
                let rhs = self.unary()?;
                let f = rhs.as_function().ok_or(Error::Parse {
                    pos,
                    msg: format!("can only divide by an expression free of {}", R::GEN),
                })?;
                if f.is_zero() {
                    return Err(Error::Parse {
                        pos,
                        msg: "division by zero".into(),
                    });
                }
                acc = acc.mul(&R::function(f.recip()));
            } else if self.starts_atom() {
                acc = acc.mul(&self.power()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<R> {
        if self.eat('-') {
            Ok(self.unary()?.neg())
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<R> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let paren = self.eat('(');
        let neg = self.eat('-');
        let pos = self.pos();
        let Some(Tok::Num(n)) = self.peek().cloned() else {
            return self.err("expected an integer exponent");
        };
        self.i += 1;
        if paren && !self.eat(')') {
            return self.err("expected ')'");
        }
        let e: u32 = n.try_into().map_err(|_| Error::Parse {
            pos,
            msg: "exponent too large".into(),
        })?;
        if neg {
            let f = base.as_function().ok_or(Error::Parse {
                pos,
                msg: format!("negative powers of {} are not supported", R::GEN),
            })?;
            if f.is_zero() {
                return Err(Error::Parse {
                    pos,
                    msg: "division by zero".into(),
                });
            }
            return Ok(R::function(f.recip().pow(e as i32)));
        }
        let mut out = R::function(RatFun::constant(Rat::one()));
        for _ in 0..e {
            out = out.mul(&base);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<R> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                Ok(R::function(RatFun::constant(Rat::from_integer(n))))
            }
            Some(Tok::Ident('z')) => {
                self.i += 1;
                Ok(R::function(RatFun::x()))
            }
            Some(Tok::Ident(c)) if c == R::GEN => {
                self.i += 1;
                Ok(R::generator())
            }
            Some(Tok::Ident(c)) => Err(Error::WrongRing {
                pos,
                symbol: c,
                ring: R::NAME,
            }),
            Some(Tok::Op('(')) => {
                self.i += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses an operator expression in the ring `R`.
pub fn parse_operator<R: OperatorRing>(src: &str) -> Result<R> {
    let toks = tokenize(src)?;
    let mut p = Parser::<R> {
        toks,
        i: 0,
        end: src.chars().count(),
        _ring: std::marker::PhantomData,
    };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

pub fn parse_shift(src: &str) -> Result<ShiftOp> {
    parse_operator(src)
}

pub fn parse_diff(src: &str) -> Result<DiffOp> {
    parse_operator(src)
}

fn leading_negative(p: &Poly<Rat>) -> bool {
    !p.is_zero() && p.leading_coeff().is_negative()
}

/// Writes `sum c_i g^i` from the highest power down, in a form accepted by
/// [`parse_operator`].
pub fn write_operator(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[RatFun<Rat>],
    var: &str,
    gen: &str,
) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = leading_negative(c.num());
        let mag = if neg { -c } else { c.clone() };
        // a bare polynomial constant term keeps its own signs
        let body = if i == 0 && c.is_polynomial() {
            let s = c.display(var).to_string();
            s.strip_prefix('-').map(str::to_string).unwrap_or(s)
        } else {
            mag.display(var).to_string()
        };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        first = false;
        let g = match i {
            0 => String::new(),
            1 => gen.to_string(),
            _ => format!("{gen}^{i}"),
        };
        if i == 0 {
            write!(f, "{body}")?;
        } else if mag.is_constant() && body == "1" {
            write!(f, "{g}")?;
        } else if mag.is_polynomial() && mag.num().coeffs().iter().filter(|x| !x.is_zero()).count() > 1 {
            write!(f, "({body})*{g}")?;
        } else {
            write!(f, "{body}*{g}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

pub struct ShiftOpDisplay<'a> {
    op: &'a ShiftOp,
    var: &'a str,
}

impl fmt::Display for ShiftOpDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_operator(f, self.op.coeffs(), self.var, "E")
    }
}

impl ShiftOp {
    pub fn display<'a>(&'a self, var: &'a str) -> ShiftOpDisplay<'a> {
        ShiftOpDisplay { op: self, var }
    }
}

impl fmt::Display for ShiftOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display("z").fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{rat, ratio};

    fn p(cs: &[i64]) -> Poly<Rat> {
        Poly::from_i64s(cs)
    }

    #[test]
    fn example_one() {
        let l = parse_shift("(z-1)*z*E^2-(3*z+7)*(z-3)*E+(z+2)*(z+1)").unwrap();
        assert_eq!(l, ShiftOp::from_polys(vec![p(&[2, 3, 1]), p(&[21, 2, -3]), p(&[0, -1, 1])]));
        // juxtaposition and unicode minus
        let m = parse_shift("(z\u{2212}1)zE^2 \u{2212} (3z+7)(z\u{2212}3)E + (z+2)(z+1)").unwrap();
        assert_eq!(l, m);
    }

    #[test]
    fn commutation() {
        assert_eq!(parse_shift("E*z - z*E").unwrap(), ShiftOp::e());
        assert_eq!(parse_shift("E*z").unwrap(), ShiftOp::from_polys(vec![p(&[]), p(&[1, 1])]));
        assert_eq!(parse_diff("D*z").unwrap(), DiffOp::from_polys(vec![p(&[1]), p(&[0, 1])]));
    }

    #[test]
    fn second_order_diff_operator() {
        let l = parse_diff("D^2 - (2/z)*D + 1 + 2/z^2").unwrap();
        assert_eq!(l.coeff(0), RatFun::new(p(&[2, 0, 1]), p(&[0, 0, 1])));
        assert_eq!(l.coeff(1), RatFun::new(p(&[-2]), p(&[0, 1])));
        assert_eq!(parse_diff("D^2 - 2*z^(-1)*D + 1 + 2*z^-2").unwrap(), l);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_shift("z +"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_shift("(z"), Err(Error::Parse { .. })));
        assert_eq!(
            parse_shift("D*z"),
            Err(Error::WrongRing {
                pos: 0,
                symbol: 'D',
                ring: "shift"
            })
        );
        assert!(matches!(parse_shift("1/E"), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse_shift("z/0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_shift("z # 2"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_shift(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn printing_round_trips() {
        let l = ShiftOp::new(vec![
            RatFun::from_poly(Poly::from_rats(&[ratio(-143, 32), ratio(-255, 32), ratio(-7, 2)])),
            RatFun::from_poly(p(&[-11, -1])),
            RatFun::from_poly(Poly::from_rats(&[ratio(-81, 32), ratio(7, 2)])),
            RatFun::constant(rat(1)),
        ]);
        let s = l.to_string();
        assert_eq!(s, "E^3 + (7/2*z - 81/32)*E^2 - (z + 11)*E - 7/2*z^2 - 255/32*z - 143/32");
        assert_eq!(parse_shift(&s).unwrap(), l);
        let d = parse_diff("D^2 - (2/z)*D + 1 + 2/z^2").unwrap();
        assert_eq!(parse_diff(&d.to_string()).unwrap(), d);
        assert_eq!(ShiftOp::zero().to_string(), "0");
        assert_eq!(parse_shift("-z*E - 3").unwrap().to_string(), "-z*E - 3");
    }
}
