//! Expression grammar for the command line:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-'? atom ('^' nat)?
//! atom   := nat | pair | detcall | ratiocall | crosscall | '(' expr ')'
//! pair   := name '.' name
//! detcall   := 'det' '(' '[' names ']' ';' '[' names ']' ')'
//! ratiocall := 'E' '(' '[' names ']' ';' name ',' name ')'
//! crosscall := 'cf' '(' name ',' name ',' name ',' name ')'
//! ```
//!
//! Operators are left associative; point names are resolved against the
//! declared point set while parsing. The canonical polynomial rendering of
//! the library is valid input.

use std::fmt;

use num::{BigInt, BigRational};
use thiserror::Error;

use swapping_algebra::circle::{CircleError, Point, PointSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {at}: {message}")]
    Syntax { at: usize, message: String },
    #[error("unknown point name '{name}' at byte {at}")]
    UnknownPoint { at: usize, name: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Number(BigRational),
    Pair(Point, Point),
    Det(Vec<Point>, Vec<Point>),
    Ratio { left: Vec<Point>, t: Point, y: Point },
    Cross(Point, Point, Point, Point),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
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
    Semi,
    Dot,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(mut self) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let at = self.pos;
            let c = self.src[self.pos];
            match c {
                b' ' | b'\t' | b'\n' | b'\r' => {
                    self.pos += 1;
                }
                b'0'..=b'9' => {
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    out.push((at, Tok::Int(text.parse().unwrap())));
                }
                b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                    let start = self.pos;
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                    {
                        self.pos += 1;
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    out.push((at, Tok::Ident(text.to_string())));
                }
                b'+' => {
                    self.pos += 1;
                    out.push((at, Tok::Plus));
                }
                b'-' => {
                    self.pos += 1;
                    out.push((at, Tok::Minus));
                }
                b'*' => {
                    self.pos += 1;
                    out.push((at, Tok::Star));
                }
                b'/' => {
                    self.pos += 1;
                    out.push((at, Tok::Slash));
                }
                b'^' => {
                    self.pos += 1;
                    out.push((at, Tok::Caret));
                }
                b'(' => {
                    self.pos += 1;
                    out.push((at, Tok::LParen));
                }
                b')' => {
                    self.pos += 1;
                    out.push((at, Tok::RParen));
                }
                b'[' => {
                    self.pos += 1;
                    out.push((at, Tok::LBracket));
                }
                b']' => {
                    self.pos += 1;
                    out.push((at, Tok::RBracket));
                }
                b',' => {
                    self.pos += 1;
                    out.push((at, Tok::Comma));
                }
                b';' => {
                    self.pos += 1;
                    out.push((at, Tok::Semi));
                }
                b'.' => {
                    self.pos += 1;
                    out.push((at, Tok::Dot));
                }
                other => {
                    return Err(ParseError::Syntax {
                        at,
                        message: format!("unexpected character '{}'", other as char),
                    })
                }
            }
        }
        Ok(out)
    }
}

pub fn parse_expr(text: &str, points: &PointSet) -> Result<Expr, ParseError> {
    let tokens = Lexer { src: text.as_bytes(), pos: 0 }.tokens()?;
    let mut p = Parser { tokens, pos: 0, points, len: text.len() };
    let expr = p.expr()?;
    if p.pos < p.tokens.len() {
        let (at, _) = p.tokens[p.pos];
        return Err(ParseError::Syntax { at, message: "trailing input".into() });
    }
    Ok(expr)
}

struct Parser<'a> {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    points: &'a PointSet,
    len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.tokens.get(self.pos).map(|(a, _)| *a).unwrap_or(self.len)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        let at = self.at();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(ParseError::Syntax { at, message: format!("expected {what}") }),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    acc = Expr::Div(Box::new(acc), Box::new(self.factor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            let inner = self.factor()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        let mut atom = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let at = self.at();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n.to_string().parse().map_err(|_| ParseError::Syntax {
                        at,
                        message: "exponent too large".into(),
                    })?;
                    atom = Expr::Pow(Box::new(atom), e);
                }
                _ => return Err(ParseError::Syntax { at, message: "expected an exponent".into() }),
            }
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.at();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Expr::Number(BigRational::from(n))),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) if name == "det" => {
                self.expect(Tok::LParen, "'(' after det")?;
                let xs = self.point_list()?;
                self.expect(Tok::Semi, "';' between det tuples")?;
                let ys = self.point_list()?;
                self.expect(Tok::RParen, "')' closing det")?;
                Ok(Expr::Det(xs, ys))
            }
            Some(Tok::Ident(name)) if name == "E" => {
                self.expect(Tok::LParen, "'(' after E")?;
                let left = self.point_list()?;
                self.expect(Tok::Semi, "';' after the row tuple")?;
                let t = self.point()?;
                self.expect(Tok::Comma, "',' between the last two points")?;
                let y = self.point()?;
                self.expect(Tok::RParen, "')' closing E")?;
                Ok(Expr::Ratio { left, t, y })
            }
            Some(Tok::Ident(name)) if name == "cf" => {
                self.expect(Tok::LParen, "'(' after cf")?;
                let x = self.point()?;
                self.expect(Tok::Comma, "','")?;
                let y = self.point()?;
                self.expect(Tok::Comma, "','")?;
                let z = self.point()?;
                self.expect(Tok::Comma, "','")?;
                let t = self.point()?;
                self.expect(Tok::RParen, "')' closing cf")?;
                Ok(Expr::Cross(x, y, z, t))
            }
            Some(Tok::Ident(name)) => {
                // a pair generator: name '.' name
                let left = self.resolve(at, &name)?;
                self.expect(Tok::Dot, "'.' of a pair generator")?;
                let at2 = self.at();
                match self.bump() {
                    Some(Tok::Ident(right)) => {
                        let right = self.resolve(at2, &right)?;
                        Ok(Expr::Pair(left, right))
                    }
                    _ => Err(ParseError::Syntax { at: at2, message: "expected a point name".into() }),
                }
            }
            _ => Err(ParseError::Syntax { at, message: "expected an expression atom".into() }),
        }
    }

    fn point_list(&mut self) -> Result<Vec<Point>, ParseError> {
        self.expect(Tok::LBracket, "'['")?;
        let mut out = vec![self.point()?];
        while matches!(self.peek(), Some(Tok::Comma)) {
            self.bump();
            out.push(self.point()?);
        }
        self.expect(Tok::RBracket, "']'")?;
        Ok(out)
    }

    fn point(&mut self) -> Result<Point, ParseError> {
        let at = self.at();
        match self.bump() {
            Some(Tok::Ident(name)) => self.resolve(at, &name),
            _ => Err(ParseError::Syntax { at, message: "expected a point name".into() }),
        }
    }

    fn resolve(&self, at: usize, name: &str) -> Result<Point, ParseError> {
        let index: Option<usize> = name
            .strip_prefix('a')
            .and_then(|rest| rest.parse().ok());
        let point = index.and_then(|k| match self.points.point(k) {
            Ok(p) => Some(p),
            Err(CircleError::IndexOutOfRange(..)) => None,
            Err(_) => None,
        });
        point.ok_or_else(|| ParseError::UnknownPoint { at, name: name.to_string() })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn prec(e: &Expr) -> u8 {
            match e {
                Expr::Add(..) | Expr::Sub(..) => 1,
                Expr::Mul(..) | Expr::Div(..) => 2,
                Expr::Neg(..) => 3,
                Expr::Pow(..) => 4,
                _ => 5,
            }
        }
        fn wrap(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
            if prec(e) < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        let list = |points: &[Point]| {
            points.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        };
        match self {
            Expr::Number(q) => write!(f, "{q}"),
            Expr::Pair(a, b) => write!(f, "{a}.{b}"),
            Expr::Det(xs, ys) => write!(f, "det([{}];[{}])", list(xs), list(ys)),
            Expr::Ratio { left, t, y } => write!(f, "E([{}]; {}, {})", list(left), t, y),
            Expr::Cross(x, y, z, t) => write!(f, "cf({x},{y},{z},{t})"),
            Expr::Neg(e) => {
                write!(f, "-")?;
                wrap(f, e, 3)
            }
            Expr::Add(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " + ")?;
                wrap(f, b, 2)
            }
            Expr::Sub(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " - ")?;
                wrap(f, b, 2)
            }
            Expr::Mul(a, b) => {
                wrap(f, a, 2)?;
                write!(f, " * ")?;
                wrap(f, b, 3)
            }
            Expr::Div(a, b) => {
                wrap(f, a, 2)?;
                write!(f, " / ")?;
                wrap(f, b, 3)
            }
            Expr::Pow(a, e) => {
                wrap(f, a, 5)?;
                write!(f, "^{e}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set() -> PointSet {
        PointSet::circle(5)
    }

    #[test]
    fn parses_atoms() {
        let s = set();
        assert!(matches!(parse_expr("a1.a2", &s).unwrap(), Expr::Pair(..)));
        assert!(matches!(
            parse_expr("det([a1,a2];[a3,a4])", &s).unwrap(),
            Expr::Det(xs, ys) if xs.len() == 2 && ys.len() == 2
        ));
        assert!(matches!(
            parse_expr("E([a2]; a3, a1)", &s).unwrap(),
            Expr::Ratio { .. }
        ));
        assert!(matches!(
            parse_expr("cf(a1,a2,a3,a4)", &s).unwrap(),
            Expr::Cross(..)
        ));
        assert!(matches!(parse_expr("42", &s).unwrap(), Expr::Number(_)));
    }

    #[test]
    fn precedence_and_associativity() {
        let s = set();
        let e = parse_expr("a1.a3*a2.a4 - a1.a4*a2.a3", &s).unwrap();
        match e {
            Expr::Sub(l, r) => {
                assert!(matches!(*l, Expr::Mul(..)));
                assert!(matches!(*r, Expr::Mul(..)));
            }
            other => panic!("unexpected shape {other:?}"),
        }
        let e = parse_expr("a1.a2^2", &s).unwrap();
        assert!(matches!(e, Expr::Pow(..)));
        // left associativity of subtraction
        let e = parse_expr("1 - 2 - 3", &s).unwrap();
        assert!(matches!(e, Expr::Sub(l, _) if matches!(*l, Expr::Sub(..))));
    }

    #[test]
    fn errors_carry_positions() {
        let s = set();
        match parse_expr("a1.a2 +", &s) {
            Err(ParseError::Syntax { at, .. }) => assert_eq!(at, 7),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse_expr("a1.a9", &s) {
            Err(ParseError::UnknownPoint { name, .. }) => assert_eq!(name, "a9"),
            other => panic!("expected unknown point, got {other:?}"),
        }
        match parse_expr("a1.a2 $", &s) {
            Err(ParseError::Syntax { at: 6, .. }) => {}
            other => panic!("expected syntax error at 6, got {other:?}"),
        }
    }

    #[test]
    fn render_round_trips() {
        let s = set();
        let corpus = [
            "a1.a2",
            "a1.a3 * a2.a4 - a1.a4 * a2.a3",
            "det([a1,a2];[a3,a4]) + 2",
            "E([a2]; a3, a1) * cf(a1,a2,a3,a4)",
            "(a1.a2 + a2.a3)^3 / a1.a5",
            "-a1.a2 - -3",
            "2 * a1.a2^2 - 1/3 * a2.a5",
        ];
        for text in corpus {
            let once = parse_expr(text, &s).unwrap();
            let again = parse_expr(&once.to_string(), &s).unwrap();
            assert_eq!(once, again, "round trip of {text} via {once}");
        }
    }
}
