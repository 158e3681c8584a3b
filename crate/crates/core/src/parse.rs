//! Text forms of operators and Fock states.
//!
//! ```text
//! expr   := term ("+" term)*
//! term   := factor ("*" factor)*
//! factor := ("a" | "ad") "[" mode "]" ("^" posint)?
//! vacuum := "|" n ("," n)* ">"
//! ```
//!
//! Whitespace is ignored. Adjacent factors on the same mode with the same
//! dagger are merged (`a[0]*a[0]` becomes `a[0]^2`); order is otherwise kept.

use thiserror::Error;

use crate::boson::{BosonExpr, BosonFactor, FockState, Monomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("at position {position}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub expected: Vec<String>,
    pub found: String,
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn found(&mut self) -> String {
        match self.peek() {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        }
    }

    fn fail<T>(&mut self, expected: &[&str]) -> Result<T, ParseError> {
        let found = self.found();
        Err(ParseError {
            position: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(&[&format!("'{c}'")])
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn integer<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.text[start..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return self.fail(&[what]);
        }
        match self.text[start..start + digits].parse() {
            Ok(v) => {
                self.pos += digits;
                Ok(v)
            }
            Err(_) => Err(ParseError {
                position: start,
                expected: vec![format!("{what} in range")],
                found: self.text[start..start + digits].to_string(),
            }),
        }
    }

    fn factor(&mut self) -> Result<BosonFactor, ParseError> {
        let start = self.pos;
        if !self.eat('a') {
            return self.fail(&["\"a\"", "\"ad\""]);
        }
        let dagger = self.text[self.pos..].starts_with('d');
        if dagger {
            self.pos += 1;
        }
        self.expect('[')?;
        let mode = self.integer::<usize>("mode index")?;
        self.expect(']')?;
        let power = if self.eat('^') {
            let at = self.pos;
            let p = self.integer::<u32>("positive power")?;
            if p == 0 {
                return Err(ParseError {
                    position: at,
                    expected: vec!["positive power".into()],
                    found: "0".into(),
                });
            }
            p
        } else {
            1
        };
        BosonFactor::new(mode, dagger, power).map_err(|e| ParseError {
            position: start,
            expected: vec!["valid factor".into()],
            found: e.to_string(),
        })
    }

    fn term(&mut self) -> Result<Monomial, ParseError> {
        let mut factors: Vec<BosonFactor> = vec![self.factor()?];
        while self.eat('*') {
            let f = self.factor()?;
            match factors.last_mut() {
                Some(last) if last.mode == f.mode && last.dagger == f.dagger => {
                    last.power = last.power.checked_add(f.power).ok_or_else(|| ParseError {
                        position: self.pos,
                        expected: vec!["positive power in range".into()],
                        found: "overflowing power".into(),
                    })?;
                }
                _ => factors.push(f),
            }
        }
        Ok(Monomial::new(factors).expect("nonempty factors with positive powers"))
    }
}

pub fn parse_expr(text: &str) -> Result<BosonExpr, ParseError> {
    let mut c = Cursor::new(text);
    let mut terms = vec![c.term()?];
    while c.eat('+') {
        terms.push(c.term()?);
    }
    if !c.at_end() {
        return c.fail(&["'+'", "'*'", "end of input"]);
    }
    Ok(BosonExpr::new(terms).expect("at least one term"))
}

pub fn parse_vacuum(text: &str) -> Result<FockState, ParseError> {
    let mut c = Cursor::new(text);
    c.expect('|')?;
    let mut occ = vec![c.integer::<u64>("occupation number")?];
    while c.eat(',') {
        occ.push(c.integer::<u64>("occupation number")?);
    }
    c.expect('>')?;
    if !c.at_end() {
        return c.fail(&["end of input"]);
    }
    Ok(FockState::new(occ))
}
