//! Textual formats: maps as bracketed polynomial triples, points in standard
//! coordinates, and decomposition scripts of automorphisms and the three
//! quadratic involutions.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::bubble::{BubblePoint, Tail};
use crate::error::{Error, Result};
use crate::hompoly::{Form, HomPoly};
use crate::maps::CremonaMap;
use crate::proj::{ProjAut, ProjPoint};
use crate::scalar::Scalar;

/// Parameter symbols in scope: at most two single-letter names, optionally
/// bound to rational values.
#[derive(Clone, Debug, Default)]
pub struct ParamEnv {
    names: Vec<char>,
    values: Vec<Option<BigRational>>,
}

impl ParamEnv {
    pub fn new() -> Self {
        ParamEnv::default()
    }

    /// Standard single-parameter environment (symbol g).
    pub fn gamma() -> Self {
        let mut env = ParamEnv::new();
        env.declare('g', None).unwrap();
        env
    }

    /// Standard two-parameter environment (symbols a, b).
    pub fn ab() -> Self {
        let mut env = ParamEnv::new();
        env.declare('a', None).unwrap();
        env.declare('b', None).unwrap();
        env
    }

    pub fn declare(&mut self, name: char, value: Option<BigRational>) -> Result<usize> {
        if matches!(name, 'x' | 'y' | 'z') || !name.is_ascii_alphabetic() {
            return Err(Error::Degenerate(format!(
                "invalid parameter name '{name}'"
            )));
        }
        if let Some(slot) = self.names.iter().position(|&n| n == name) {
            self.values[slot] = value;
            return Ok(slot);
        }
        if self.names.len() == 2 {
            return Err(Error::Degenerate(
                "at most two parameter symbols are supported".into(),
            ));
        }
        self.names.push(name);
        self.values.push(value);
        Ok(self.names.len() - 1)
    }

    pub fn bind(&mut self, name: char, value: BigRational) -> Result<usize> {
        self.declare(name, Some(value))
    }

    fn lookup(&self, name: char) -> Option<Scalar> {
        let slot = self.names.iter().position(|&n| n == name)?;
        Some(match &self.values[slot] {
            Some(v) => Scalar::from_big(v.clone()),
            None => Scalar::param(slot),
        })
    }

    pub fn names(&self) -> Vec<String> {
        self.names.iter().map(|c| c.to_string()).collect()
    }

    pub fn render_names(&self) -> Vec<&'static str> {
        // stable name slices for the two standard layouts
        match self.names.as_slice() {
            ['g'] => vec!["g"],
            ['a', 'b'] => vec!["a", "b"],
            ['a'] => vec!["a"],
            ['b'] => vec!["b"],
            [] => vec![],
            _ => vec!["g", "b"],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Letter(char),
    Inf,
    Sigma,
    Rho,
    Tau,
    ComposeOp,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Colon,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let bump = |c: char, line: &mut usize, col: &mut usize| {
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                chars.next();
                bump(c, &mut line, &mut col);
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                        bump(d, &mut line, &mut col);
                    } else {
                        break;
                    }
                }
                out.push(Spanned {
                    tok: Tok::Num(digits.parse().expect("digits")),
                    line: tline,
                    col: tcol,
                });
            }
            c if c.is_ascii_alphabetic() => {
                let mut word = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphabetic() {
                        word.push(d);
                        chars.next();
                        bump(d, &mut line, &mut col);
                    } else {
                        break;
                    }
                }
                match word.as_str() {
                    "inf" => out.push(Spanned {
                        tok: Tok::Inf,
                        line: tline,
                        col: tcol,
                    }),
                    "sigma" => out.push(Spanned {
                        tok: Tok::Sigma,
                        line: tline,
                        col: tcol,
                    }),
                    "rho" => out.push(Spanned {
                        tok: Tok::Rho,
                        line: tline,
                        col: tcol,
                    }),
                    "tau" => out.push(Spanned {
                        tok: Tok::Tau,
                        line: tline,
                        col: tcol,
                    }),
                    "o" => out.push(Spanned {
                        tok: Tok::ComposeOp,
                        line: tline,
                        col: tcol,
                    }),
                    _ => {
                        for (i, ch) in word.chars().enumerate() {
                            out.push(Spanned {
                                tok: Tok::Letter(ch),
                                line: tline,
                                col: tcol + i,
                            });
                        }
                    }
                }
            }
            '∘' => {
                chars.next();
                col += 1;
                out.push(Spanned {
                    tok: Tok::ComposeOp,
                    line: tline,
                    col: tcol,
                });
            }
            _ => {
                let tok = match c {
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ':' => Tok::Colon,
                    ',' => Tok::Comma,
                    '+' => Tok::Plus,
                    '-' | '−' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    other => {
                        return Err(Error::Parse {
                            line: tline,
                            col: tcol,
                            msg: format!("unexpected character '{other}'"),
                        })
                    }
                };
                chars.next();
                bump(c, &mut line, &mut col);
                out.push(Spanned {
                    tok,
                    line: tline,
                    col: tcol,
                });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    env: &'a ParamEnv,
}

impl<'a> Parser<'a> {
    fn new(text: &str, env: &'a ParamEnv) -> Result<Self> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            env,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|s| (s.line, s.col))
            .unwrap_or((1, 1))
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.here();
        Err(Error::Parse {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    // expression grammar over forms in x, y, z
    fn expr(&mut self) -> Result<Form> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Form> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let divisor = self.factor()?;
                    let Some(c) = divisor.constant_value() else {
                        return self.err("division is only defined by constants");
                    };
                    if c.is_zero() {
                        return self.err("division by zero");
                    }
                    acc = acc.scale(&c.inv());
                }
                // implicit multiplication
                Some(Tok::Letter(_)) | Some(Tok::LParen) | Some(Tok::Num(_)) => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Form> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n.try_into().map_err(|_| Error::Parse {
                        line: 1,
                        col: 1,
                        msg: "exponent too large".into(),
                    })?;
                    return Ok(base.pow(e));
                }
                _ => return self.err("expected integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Form> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Form::constant(Scalar::from_big(BigRational::from_integer(
                    n,
                ))))
            }
            Some(Tok::Letter(c)) => {
                self.pos += 1;
                match c {
                    'x' => Ok(Form::var(0)),
                    'y' => Ok(Form::var(1)),
                    'z' => Ok(Form::var(2)),
                    other => match self.env.lookup(other) {
                        Some(s) => Ok(Form::constant(s)),
                        None => {
                            self.pos -= 1;
                            self.err(format!("unknown symbol '{other}'"))
                        }
                    },
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => self.err("expected a number, variable or parenthesized expression"),
        }
    }

    fn scalar_expr(&mut self) -> Result<Scalar> {
        let start = self.here();
        let form = self.expr()?;
        match form.constant_value() {
            Some(c) => Ok(c),
            None => Err(Error::Parse {
                line: start.0,
                col: start.1,
                msg: "expected a constant expression".into(),
            }),
        }
    }

    fn triple(&mut self) -> Result<[Form; 3]> {
        self.expect(Tok::LBracket, "'['")?;
        let a = self.expr()?;
        self.expect(Tok::Colon, "':'")?;
        let b = self.expr()?;
        self.expect(Tok::Colon, "':'")?;
        let c = self.expr()?;
        self.expect(Tok::RBracket, "']'")?;
        Ok([a, b, c])
    }

    fn map(&mut self) -> Result<CremonaMap> {
        let start = self.here();
        let [a, b, c] = self.triple()?;
        let lift = |f: Form| {
            HomPoly::from_form(f).map_err(|_| Error::Parse {
                line: start.0,
                col: start.1,
                msg: "inhomogeneous component".into(),
            })
        };
        CremonaMap::from_components(lift(a)?, lift(b)?, lift(c)?).map_err(|e| match e {
            Error::DegreeMismatch(a, b) => Error::Parse {
                line: start.0,
                col: start.1,
                msg: format!("mismatched component degrees {a} and {b}"),
            },
            Error::ZeroComponent => Error::Parse {
                line: start.0,
                col: start.1,
                msg: "zero component".into(),
            },
            other => other,
        })
    }

    fn proper_point(&mut self) -> Result<ProjPoint> {
        self.expect(Tok::LBracket, "'['")?;
        let a = self.scalar_expr()?;
        self.expect(Tok::Colon, "':'")?;
        let b = self.scalar_expr()?;
        self.expect(Tok::Colon, "':'")?;
        let c = self.scalar_expr()?;
        self.expect(Tok::RBracket, "']'")?;
        ProjPoint::new([a, b, c]).map_err(|_| {
            let (line, col) = self.here();
            Error::Parse {
                line,
                col,
                msg: "all-zero point coordinates".into(),
            }
        })
    }

    fn bubble_point(&mut self) -> Result<BubblePoint> {
        match self.peek() {
            Some(Tok::LBracket) => Ok(BubblePoint::proper(self.proper_point()?)),
            Some(Tok::LParen) => {
                self.pos += 1;
                let base = self.proper_point()?;
                let mut tail = Vec::new();
                loop {
                    match self.next() {
                        Some(Tok::Comma) => {
                            if self.peek() == Some(&Tok::Inf) {
                                self.pos += 1;
                                tail.push(Tail::Inf);
                            } else {
                                tail.push(Tail::Value(self.scalar_expr()?));
                            }
                        }
                        Some(Tok::RParen) => break,
                        _ => return self.err("expected ',' or ')'"),
                    }
                }
                if tail.is_empty() {
                    return self.err("infinitely near point needs at least one chart value");
                }
                Ok(BubblePoint { base, tail })
            }
            _ => self.err("expected '[' or '('"),
        }
    }
}

pub fn parse_map(text: &str, env: &ParamEnv) -> Result<CremonaMap> {
    let mut p = Parser::new(text, env)?;
    let m = p.map()?;
    if !p.at_end() {
        return p.err("trailing input after map");
    }
    Ok(m)
}

pub fn parse_map_plain(text: &str) -> Result<CremonaMap> {
    parse_map(text, &ParamEnv::new())
}

pub fn parse_point(text: &str, env: &ParamEnv) -> Result<BubblePoint> {
    let mut p = Parser::new(text, env)?;
    let pt = p.bubble_point()?;
    if !p.at_end() {
        return p.err("trailing input after point");
    }
    Ok(pt)
}

/// Parse a constant expression (rationals and parameter symbols).
pub fn parse_scalar(text: &str, env: &ParamEnv) -> Result<Scalar> {
    let mut p = Parser::new(text, env)?;
    let s = p.scalar_expr()?;
    if !p.at_end() {
        return p.err("trailing input after scalar");
    }
    Ok(s)
}

/// One factor of a decomposition script.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Aut(ProjAut),
    Sigma,
    Rho,
    Tau,
}

impl Factor {
    pub fn to_map(&self) -> CremonaMap {
        match self {
            Factor::Aut(a) => CremonaMap::from_aut(a),
            Factor::Sigma => CremonaMap::sigma(),
            Factor::Rho => CremonaMap::rho(),
            Factor::Tau => CremonaMap::tau(),
        }
    }

    pub fn render(&self, names: &[&str]) -> String {
        match self {
            Factor::Aut(a) => {
                let rows = &a.matrix().rows;
                let lin = |r: &[Scalar; 3]| HomPoly::linear(r).render(names);
                format!("[{} : {} : {}]", lin(&rows[0]), lin(&rows[1]), lin(&rows[2]))
            }
            Factor::Sigma => "sigma".into(),
            Factor::Rho => "rho".into(),
            Factor::Tau => "tau".into(),
        }
    }
}

/// Parse a composition script; factors are listed outermost first.
pub fn parse_decomposition(text: &str, env: &ParamEnv) -> Result<Vec<Factor>> {
    let mut p = Parser::new(text, env)?;
    let mut out = Vec::new();
    loop {
        let f = match p.peek() {
            Some(Tok::Sigma) => {
                p.pos += 1;
                Factor::Sigma
            }
            Some(Tok::Rho) => {
                p.pos += 1;
                Factor::Rho
            }
            Some(Tok::Tau) => {
                p.pos += 1;
                Factor::Tau
            }
            Some(Tok::LBracket) => {
                let start = p.here();
                let m = p.map()?;
                match m.as_aut() {
                    Some(a) => Factor::Aut(a),
                    None => {
                        return Err(Error::Parse {
                            line: start.0,
                            col: start.1,
                            msg: "non-linear automorphism entry".into(),
                        })
                    }
                }
            }
            _ => return p.err("expected sigma, rho, tau or an automorphism"),
        };
        out.push(f);
        if p.at_end() {
            return Ok(out);
        }
        p.expect(Tok::ComposeOp, "'o' between factors")?;
    }
}

pub fn render_decomposition(factors: &[Factor], names: &[&str]) -> String {
    factors
        .iter()
        .map(|f| f.render(names))
        .collect::<Vec<_>>()
        .join(" o ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sigma_notation() {
        let m = parse_map_plain("[y*z : x*z : x*y]").unwrap();
        assert_eq!(m, CremonaMap::sigma());
        assert_eq!(m.degree(), 2);
        // implicit multiplication
        let m2 = parse_map_plain("[yz : xz : xy]").unwrap();
        assert_eq!(m2, CremonaMap::sigma());
    }

    #[test]
    fn parses_identity() {
        let m = parse_map_plain("[x : y : z]").unwrap();
        assert_eq!(m.degree(), 1);
        assert_eq!(m, CremonaMap::identity());
    }

    #[test]
    fn parses_cubic_with_powers() {
        let m = parse_map_plain("[x^2*y : x*y^2 : (x-y)^2*z]").unwrap();
        assert_eq!(m.degree(), 3);
    }

    #[test]
    fn reports_errors_with_positions() {
        let e = parse_map_plain("[x : y : w]").unwrap_err();
        match e {
            Error::Parse { col, .. } => assert_eq!(col, 10),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(parse_map_plain("[x + z^2 : y : z]").is_err());
        assert!(parse_map_plain("[x - x : y : z]").is_err());
        assert!(parse_map_plain("[x : y : x]").is_ok()); // coprime triple not required to be birational here
    }

    #[test]
    fn parses_points() {
        let env = ParamEnv::new();
        let p = parse_point("[1:0:0]", &env).unwrap();
        assert!(p.is_proper());
        let q = parse_point("([1:0:0], 0, inf)", &env).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(q.tail[1], Tail::Inf);
        assert!(parse_point("[0:0:0]", &env).is_err());
        // round trip
        assert_eq!(parse_point(&q.render(&[]), &env).unwrap(), q);
    }

    #[test]
    fn parses_decompositions() {
        let env = ParamEnv::new();
        let d = parse_decomposition("sigma o sigma", &env).unwrap();
        assert_eq!(d, vec![Factor::Sigma, Factor::Sigma]);
        let d = parse_decomposition("[y : x : -z] o tau o sigma", &env).unwrap();
        assert_eq!(d.len(), 3);
        assert!(matches!(d[0], Factor::Aut(_)));
        let e = parse_decomposition("[x*y : x : z] o sigma", &env).unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
        // single automorphism factor
        let d = parse_decomposition("[x : y : x+y+z]", &env).unwrap();
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn map_round_trip() {
        let texts = [
            "[y*z : x*z : x*y]",
            "[x*z^2 + y^3 : y*z^2 : z^3]",
            "[x^2*y : x*y^2 : (x - y)^2*z]",
        ];
        for t in texts {
            let m = parse_map_plain(t).unwrap();
            let printed = m.render(&[]);
            assert_eq!(parse_map_plain(&printed).unwrap(), m);
        }
    }
}
