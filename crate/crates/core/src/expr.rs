//! Textual syntax for field elements and 2x2 matrices.
//!
//! ```text
//! expr   := term (('+'|'-') term)* ;
//! term   := factor (('*'|'/') factor)* ;
//! factor := '-' factor | base ('^' int)? ;
//! base   := int | 'q' | 't' | '(' expr ')' ;
//! matrix := '[' row ',' row ']' ; row := '[' expr ',' expr ']' ;
//! int    := ['-'] digit+ ;
//! ```
//!
//! Implicit multiplication is rejected (`qt` is a syntax error). The
//! renderer emits explicit `*` and `^` with minimal parentheses and is the
//! inverse of the parser on canonical elements.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Const, Field, FieldElem, Poly, Rat};
use crate::error::ParseError;
use crate::mobius::{GenElem, Mat2};

const MAX_EXPONENT: i64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Q,
    T,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::Q => "`q`".into(),
            Tok::T => "`t`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            'q' => Tok::Q,
            't' => Tok::T,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            _ => {
                let found = src[i..].chars().next().expect("in bounds");
                return Err(ParseError::Syntax {
                    pos: i,
                    expected: "an expression token".into(),
                    found: format!("`{found}`"),
                });
            }
        };
        out.push((i, tok));
        i += 1;
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

/// Expression tree produced by the parser.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprAst {
    Int(BigInt),
    Q,
    T,
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    /// Division, with the source offset of the `/` for error reporting.
    Div(Box<ExprAst>, Box<ExprAst>, usize),
    Neg(Box<ExprAst>),
    /// Integer power, with the source offset of the `^`.
    Pow(Box<ExprAst>, i64, usize),
    Paren(Box<ExprAst>),
}

impl ExprAst {
    pub fn eval(&self) -> Result<FieldElem, ParseError> {
        Ok(match self {
            ExprAst::Int(n) => FieldElem::from_rat(Rat::from_integer(n.clone())),
            ExprAst::Q => FieldElem::q(),
            ExprAst::T => FieldElem::t(),
            ExprAst::Add(a, b) => a.eval()?.add(&b.eval()?),
            ExprAst::Sub(a, b) => a.eval()?.sub(&b.eval()?),
            ExprAst::Mul(a, b) => a.eval()?.mul(&b.eval()?),
            ExprAst::Div(a, b, pos) => {
                a.eval()?.div(&b.eval()?).ok_or_else(|| ParseError::Eval {
                    pos: *pos,
                    msg: "division by zero".into(),
                })?
            }
            ExprAst::Neg(a) => a.eval()?.neg(),
            ExprAst::Pow(a, k, pos) => a.eval()?.powi(*k).ok_or_else(|| ParseError::Eval {
                pos: *pos,
                msg: "zero raised to a negative power".into(),
            })?,
            ExprAst::Paren(a) => a.eval()?,
        })
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: tokenize(src)?,
            at: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos(),
            expected: expected.into(),
            found: self.peek().describe(),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error("an operator or end of input"))
        }
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = ExprAst::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = ExprAst::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = ExprAst::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Slash => {
                    let (pos, _) = self.bump();
                    lhs = ExprAst::Div(Box::new(lhs), Box::new(self.factor()?), pos);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<ExprAst, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(ExprAst::Neg(Box::new(self.factor()?)));
        }
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let (caret, _) = self.bump();
        let exp = self.exponent()?;
        Ok(ExprAst::Pow(Box::new(base), exp, caret))
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let n = if neg { -n } else { n };
                match i64::try_from(&n) {
                    Ok(k) if k.abs() <= MAX_EXPONENT => Ok(k),
                    _ => Err(ParseError::Eval {
                        pos,
                        msg: format!("exponent {n} exceeds the supported range"),
                    }),
                }
            }
            Tok::Q | Tok::T | Tok::LParen => Err(ParseError::NonRationalExponent { pos }),
            _ => Err(self.error("an integer exponent")),
        }
    }

    fn base(&mut self) -> Result<ExprAst, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(ExprAst::Int(n))
            }
            Tok::Q => {
                self.bump();
                Ok(ExprAst::Q)
            }
            Tok::T => {
                self.bump();
                Ok(ExprAst::T)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(ExprAst::Paren(Box::new(inner)))
            }
            _ => Err(self.error("an integer, `q`, `t` or `(`")),
        }
    }

    fn row(&mut self) -> Result<Vec<ExprAst>, ParseError> {
        self.expect(Tok::LBracket, "`[`")?;
        let mut items = vec![self.expr()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            items.push(self.expr()?);
        }
        self.expect(Tok::RBracket, "`,` or `]`")?;
        Ok(items)
    }

    fn matrix(&mut self) -> Result<Vec<Vec<ExprAst>>, ParseError> {
        self.expect(Tok::LBracket, "`[`")?;
        let mut rows = vec![self.row()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            rows.push(self.row()?);
        }
        self.expect(Tok::RBracket, "`,` or `]`")?;
        Ok(rows)
    }
}

pub fn parse_ast(src: &str) -> Result<ExprAst, ParseError> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_elem(src: &str) -> Result<FieldElem, ParseError> {
    parse_ast(src)?.eval()
}

pub fn parse_matrix(src: &str) -> Result<Mat2, ParseError> {
    let mut p = Parser::new(src)?;
    let rows = p.matrix()?;
    p.finish()?;
    if rows.len() != 2 || rows.iter().any(|r| r.len() != 2) {
        return Err(ParseError::Shape {
            rows: rows.len(),
            lengths: rows.iter().map(Vec::len).collect(),
        });
    }
    let mut vals = Vec::with_capacity(4);
    for r in &rows {
        for e in r {
            vals.push(e.eval()?);
        }
    }
    let mut it = vals.into_iter();
    let mut next = || it.next().expect("four entries");
    Ok(Mat2::new(next(), next(), next(), next()))
}

// ---------------------------------------------------------------------------
// Rendering

/// Bivariate polynomial with integer coefficients, keyed by `(t-exp, q-exp)`.
type Bivariate = BTreeMap<(usize, usize), BigInt>;

/// Canonical text for an element; `parse_elem(render(x)) == x`.
pub fn render(x: &FieldElem) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let (p, q) = integral_fraction(x);
    if q.len() == 1 && q.get(&(0, 0)).is_some_and(|c| c.is_one()) {
        return render_poly(&p);
    }
    let num = render_poly(&p);
    let num = if p.len() > 1 { format!("({num})") } else { num };
    let den = render_poly(&q);
    let den = if q.len() > 1 || factor_count(&q) > 1 {
        format!("({den})")
    } else {
        den
    };
    format!("{num}/{den}")
}

pub fn render_const(c: &Const) -> String {
    render(&FieldElem::from_const(c.clone()))
}

fn render_y_poly(p: &Poly<FieldElem>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, c) in p.terms().rev() {
        let text = render(c);
        let atomic = !text[1..].contains(['+', '-', '/']);
        let (sign, body) = match text.strip_prefix('-') {
            Some(rest) if atomic => ("-", rest.to_string()),
            _ if atomic => ("+", text),
            _ => ("+", format!("({text})")),
        };
        let term = match (k, body.as_str()) {
            (0, _) => body,
            (_, "1") => y_power(k),
            _ => format!("{body}*{}", y_power(k)),
        };
        if out.is_empty() {
            out = if sign == "-" {
                format!("-{term}")
            } else {
                term
            };
        } else {
            out.push_str(sign);
            out.push_str(&term);
        }
    }
    out
}

fn y_power(k: usize) -> String {
    if k == 1 {
        "Y".into()
    } else {
        format!("Y^{k}")
    }
}

/// Text for an element of `F(Y)`, as polynomials in `Y` with coefficients
/// rendered by [`render`].
pub fn render_gen(x: &GenElem) -> String {
    let num = render_y_poly(x.num());
    if x.den().is_one() {
        return num;
    }
    format!("({num})/({})", render_y_poly(x.den()))
}

pub fn render_matrix(m: &Mat2) -> String {
    format!(
        "[[{},{}],[{},{}]]",
        render(&m.a),
        render(&m.b),
        render(&m.c),
        render(&m.d)
    )
}

/// Write `x = P/Q` with `P, Q` in `Z[q, t]`, no common content in `q`,
/// integer content 1 overall and a positive leading coefficient in `Q`.
fn integral_fraction(x: &FieldElem) -> (Bivariate, Bivariate) {
    let l = x
        .num()
        .terms()
        .chain(x.den().terms())
        .fold(Poly::<Rat>::one(), |acc, (_, c)| Poly::lcm(&acc, c.den()));
    let clear = |p: &Poly<Const>| -> Vec<Poly<Rat>> {
        p.coeffs()
            .iter()
            .map(|c| c.num() * &l.exact_div(c.den()).expect("lcm divisible"))
            .collect()
    };
    let (mut pn, mut pd) = (clear(x.num()), clear(x.den()));
    let content = pn
        .iter()
        .chain(pd.iter())
        .filter(|c| !c.is_zero())
        .fold(Poly::<Rat>::zero(), |acc, c| Poly::gcd(&acc, c));
    if !content.is_one() {
        for c in pn.iter_mut().chain(pd.iter_mut()) {
            *c = c.exact_div(&content).expect("content divides");
        }
    }
    let den_lcm = pn
        .iter()
        .chain(pd.iter())
        .flat_map(|c| {
            c.terms()
                .map(|(_, r)| r.denom().clone())
                .collect::<Vec<_>>()
        })
        .fold(BigInt::one(), |acc, d| acc.lcm(&d));
    let to_biv = |polys: &[Poly<Rat>], s: &Rat| -> Bivariate {
        let mut out = Bivariate::new();
        for (tk, c) in polys.iter().enumerate() {
            for (qk, r) in c.terms() {
                let v = r * s;
                debug_assert!(v.is_integer());
                out.insert((tk, qk), v.to_integer());
            }
        }
        out
    };
    let s = Rat::from_integer(den_lcm.clone());
    let (mut p, mut q) = (to_biv(&pn, &s), to_biv(&pd, &s));
    let g = p
        .values()
        .chain(q.values())
        .fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let lead_negative = q.iter().next_back().is_some_and(|(_, v)| v.is_negative());
    let g = if lead_negative { -g } else { g };
    for v in p.values_mut().chain(q.values_mut()) {
        *v = &*v / &g;
    }
    (p, q)
}

fn factor_count(p: &Bivariate) -> usize {
    let ((tk, qk), c) = p.iter().next().expect("nonzero");
    usize::from(*tk > 0) + usize::from(*qk > 0) + usize::from(!c.abs().is_one())
}

fn render_poly(p: &Bivariate) -> String {
    let mut out = String::new();
    for (i, (&(tk, qk), c)) in p.iter().rev().enumerate() {
        let mut factors = Vec::new();
        let abs = c.abs();
        if !abs.is_one() || (tk == 0 && qk == 0) {
            factors.push(abs.to_string());
        }
        match qk {
            0 => {}
            1 => factors.push("q".into()),
            k => factors.push(format!("q^{k}")),
        }
        match tk {
            0 => {}
            1 => factors.push("t".into()),
            k => factors.push(format!("t^{k}")),
        }
        let body = factors.join("*");
        if c.is_negative() {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        out.push_str(&body);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_airy_data() {
        let r = parse_elem("1/(q^3*t^2)").unwrap();
        assert_eq!(r, FieldElem::monomial(Const::q_pow(-3), -2));
        assert_eq!(parse_elem("0").unwrap(), FieldElem::zero());
        assert_eq!(
            parse_elem("(t^2-1)/(t-1)").unwrap(),
            parse_elem("t+1").unwrap()
        );
        let a = parse_matrix("[[-q*t,1],[1,0]]").unwrap();
        assert_eq!(a.a, FieldElem::q().mul(&FieldElem::t()).neg());
        assert_eq!(parse_matrix("[[1,0],[0,1]]").unwrap(), Mat2::identity());
    }

    #[test]
    fn precedence_and_unary_minus() {
        assert_eq!(parse_elem("-t^2").unwrap(), FieldElem::t_pow(2).neg());
        assert_eq!(parse_elem("2*3-4/2").unwrap(), FieldElem::from_int(4));
        assert_eq!(parse_elem("t^-2").unwrap(), FieldElem::t_pow(-2));
        assert_eq!(parse_elem("1/q/t").unwrap(), parse_elem("1/(q*t)").unwrap());
        assert_eq!(
            parse_elem(" ( q + 1 ) * t ").unwrap(),
            parse_elem("q*t+t").unwrap()
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_elem("qt"),
            Err(ParseError::Syntax { pos: 1, .. })
        ));
        assert!(matches!(parse_elem("2q"), Err(ParseError::Syntax { .. })));
        assert!(matches!(
            parse_elem("t^q"),
            Err(ParseError::NonRationalExponent { pos: 2 })
        ));
        assert!(matches!(
            parse_elem("t^(1/2)"),
            Err(ParseError::NonRationalExponent { .. })
        ));
        assert!(matches!(
            parse_elem("1/0"),
            Err(ParseError::Eval { pos: 1, .. })
        ));
        assert!(matches!(
            parse_elem("1/(t-t)"),
            Err(ParseError::Eval { .. })
        ));
        assert!(matches!(parse_elem("0^-1"), Err(ParseError::Eval { .. })));
        assert!(matches!(
            parse_elem("x"),
            Err(ParseError::Syntax { pos: 0, .. })
        ));
        assert!(matches!(parse_elem("(t+1"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_elem(""), Err(ParseError::Syntax { .. })));
        assert!(matches!(
            parse_matrix("[[1,2,3],[4,5,6]]"),
            Err(ParseError::Shape { rows: 2, .. })
        ));
        assert!(matches!(
            parse_matrix("[[1,2]]"),
            Err(ParseError::Shape { rows: 1, .. })
        ));
    }

    #[test]
    fn renders_canonically() {
        assert_eq!(render(&parse_elem("q*t").unwrap()), "q*t");
        assert_eq!(render(&FieldElem::zero()), "0");
        assert_eq!(render(&parse_elem("1/(q^3*t^2)").unwrap()), "1/(q^3*t^2)");
        assert_eq!(render(&parse_elem("-2/(q^3*t^3)").unwrap()), "-2/(q^3*t^3)");
        assert_eq!(
            render(&parse_elem("1/(q^3*t^2) - 1/(q^5*t^2)").unwrap()),
            "(q^2-1)/(q^5*t^2)"
        );
        assert_eq!(render(&parse_elem("1/2").unwrap()), "1/2");
        assert_eq!(render(&parse_elem("-q^2*t").unwrap()), "-q^2*t");
        assert_eq!(render(&parse_elem("2/t").unwrap()), "2/t");
        assert_eq!(render(&parse_elem("t/(q+1)").unwrap()), "t/(q+1)");
        assert_eq!(render(&parse_elem("3*q/2").unwrap()), "3*q/2");
        assert_eq!(
            render_matrix(&parse_matrix("[[1,1/(q^3*t^2)],[1,0]]").unwrap()),
            "[[1,1/(q^3*t^2)],[1,0]]"
        );
    }

    #[test]
    fn render_round_trips() {
        for s in [
            "1/(q^3*t^2)",
            "(t^2+q*t-1)/(2*q*t+3)",
            "-q*t/(q+1)",
            "(q^2-1)/(q^5*t^2)",
            "t/(q*t^2+t)",
            "5/7*q^3-t",
        ] {
            let x = parse_elem(s).unwrap();
            assert_eq!(parse_elem(&render(&x)).unwrap(), x, "{s} -> {}", render(&x));
        }
    }

    #[test]
    fn renders_polynomials_in_y() {
        let c = |s: &str| parse_elem(s).unwrap();
        let p = Poly::from_coeffs(vec![c("-2/t"), c("-q^2*t"), c("1"), c("q+t")]);
        let x = GenElem::from_poly(p);
        assert_eq!(render_gen(&x), "(t+q)*Y^3+Y^2-q^2*t*Y+(-2/t)");
        let y = GenElem::var();
        assert_eq!(render_gen(&GenElem::one().div(&y).unwrap()), "(1)/(Y)");
        assert_eq!(render_gen(&GenElem::zero()), "0");
    }
}
