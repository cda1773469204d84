//! Recursive-descent parser for field expressions.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := term (("+"|"-") term)* ;
//! term   := factor (("*"|"/") factor)* ;
//! factor := ("-")? base ("^" number)? ;
//! base   := number | "z" | "I" | "pi" | ident "(" expr ")" | "(" expr ")" ;
//! ident  := "exp"|"log"|"sin"|"cos"|"tan"|"sinh"|"cosh"|"sqrt" ;
//! ```
//!
//! `I` is the unit `dxdy`, `z` the variable. Numbers are decimal with an
//! optional exponent part. An exponent after `^` may carry a sign and a
//! fractional part; integral exponents become exact integer powers, others
//! evaluate through the principal branch.

use std::str::FromStr;

use crate::algebra::{Edif, Elementary};
use crate::error::{Error, Result};
use crate::expr::ExprAst;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Num(n) => format!("number {n}"),
            Token::Ident(s) => format!("identifier {s:?}"),
            Token::Plus => "'+'".into(),
            Token::Minus => "'-'".into(),
            Token::Star => "'*'".into(),
            Token::Slash => "'/'".into(),
            Token::Caret => "'^'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::Eof => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Lexer<'a> {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next_token(&mut self) -> Result<(usize, Token)> {
        self.skip_ws();
        let start = self.pos;
        let Some(&c) = self.src.get(self.pos) else {
            return Ok((start, Token::Eof));
        };
        let simple = match c {
            b'+' => Some(Token::Plus),
            b'-' => Some(Token::Minus),
            b'*' => Some(Token::Star),
            b'/' => Some(Token::Slash),
            b'^' => Some(Token::Caret),
            b'(' => Some(Token::LParen),
            b')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            self.pos += 1;
            return Ok((start, tok));
        }
        if c.is_ascii_digit() || c == b'.' {
            return self.lex_number(start);
        }
        if c.is_ascii_alphabetic() {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            return Ok((start, Token::Ident(text.to_owned())));
        }
        Err(Error::Parse {
            position: start,
            found: format!("{:?}", char::from(c)),
            expected: vec!["number", "identifier", "operator", "parenthesis"],
        })
    }

    fn lex_number(&mut self, start: usize) -> Result<(usize, Token)> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
        }
        if matches!(self.src.get(self.pos), Some(b'e') | Some(b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.src.get(self.pos), Some(b'+') | Some(b'-')) {
                self.pos += 1;
            }
            if self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
            } else {
                // "2e" without digits: the 'e' belongs to whatever follows
                self.pos = mark;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        match f64::from_str(text) {
            Ok(n) => Ok((start, Token::Num(n))),
            Err(_) => Err(Error::Parse {
                position: start,
                found: format!("{text:?}"),
                expected: vec!["number"],
            }),
        }
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    index: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.index].1
    }

    fn pos(&self) -> usize {
        self.tokens[self.index].0
    }

    fn bump(&mut self) -> Token {
        let tok = self.tokens[self.index].1.clone();
        if self.index + 1 < self.tokens.len() {
            self.index += 1;
        }
        tok
    }

    fn error(&self, expected: Vec<&'static str>) -> Error {
        Error::Parse {
            position: self.pos(),
            found: self.peek().describe(),
            expected,
        }
    }

    fn expr(&mut self) -> Result<ExprAst> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.bump();
                    lhs = lhs + self.term()?;
                }
                Token::Minus => {
                    self.bump();
                    lhs = lhs - self.term()?;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ExprAst> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Token::Star => {
                    self.bump();
                    lhs = lhs * self.factor()?;
                }
                Token::Slash => {
                    self.bump();
                    lhs = lhs / self.factor()?;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<ExprAst> {
        let negated = if matches!(self.peek(), Token::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let mut node = self.base()?;
        if matches!(self.peek(), Token::Caret) {
            self.bump();
            let exponent = self.exponent()?;
            node = if exponent.fract() == 0.0 && exponent.abs() <= i32::MAX as f64 {
                node.ipow(exponent as i32)
            } else {
                ExprAst::RealPow(Box::new(node), exponent)
            };
        }
        Ok(if negated { -node } else { node })
    }

    fn exponent(&mut self) -> Result<f64> {
        let negated = if matches!(self.peek(), Token::Minus) {
            self.bump();
            true
        } else {
            false
        };
        match self.peek() {
            Token::Num(n) => {
                let n = *n;
                self.bump();
                Ok(if negated { -n } else { n })
            }
            _ => Err(self.error(vec!["number"])),
        }
    }

    fn base(&mut self) -> Result<ExprAst> {
        match self.peek().clone() {
            Token::Num(n) => {
                self.bump();
                Ok(ExprAst::num(n))
            }
            Token::LParen => {
                self.bump();
                let inner = self.expr()?;
                if !matches!(self.peek(), Token::RParen) {
                    return Err(self.error(vec!["')'"]));
                }
                self.bump();
                Ok(inner)
            }
            Token::Ident(name) => match name.as_str() {
                "z" => {
                    self.bump();
                    Ok(ExprAst::Z)
                }
                "I" => {
                    self.bump();
                    Ok(ExprAst::constant(Edif::DXDY))
                }
                "pi" => {
                    self.bump();
                    Ok(ExprAst::num(std::f64::consts::PI))
                }
                _ => match Elementary::from_str(&name) {
                    Ok(func) => {
                        self.bump();
                        if !matches!(self.peek(), Token::LParen) {
                            return Err(self.error(vec!["'('"]));
                        }
                        self.bump();
                        let arg = self.expr()?;
                        if !matches!(self.peek(), Token::RParen) {
                            return Err(self.error(vec!["')'"]));
                        }
                        self.bump();
                        Ok(arg.apply(func))
                    }
                    Err(()) => Err(self.error(vec![
                        "z", "I", "pi", "exp", "log", "sin", "cos", "tan", "sinh", "cosh", "sqrt",
                    ])),
                },
            },
            _ => Err(self.error(vec!["number", "'z'", "'I'", "'pi'", "function", "'('"])),
        }
    }
}

/// Parse an expression in `z` into its syntax tree.
pub fn parse_expr(text: &str) -> Result<ExprAst> {
    let mut lexer = Lexer::new(text);
    let mut tokens = Vec::new();
    loop {
        let (pos, tok) = lexer.next_token()?;
        let done = tok == Token::Eof;
        tokens.push((pos, tok));
        if done {
            break;
        }
    }
    let mut parser = Parser { tokens, index: 0 };
    let ast = parser.expr()?;
    if !matches!(parser.peek(), Token::Eof) {
        return Err(parser.error(vec!["operator", "end of input"]));
    }
    Ok(ast)
}
