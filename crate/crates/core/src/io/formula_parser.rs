//! Text grammar for formulas:
//!
//! ```text
//! phi ::= 'top' | 'bot' | ATOM | '~' phi | phi '&' phi | phi '|' phi
//!       | '[' INDEX ']' phi | '<' INDEX '>' phi | '(' phi ')'
//! ```
//!
//! `&` binds tighter than `|`; both associate to the left. Unary operators bind
//! tightest. Atoms and indices are runs of letters, digits, `_` and `'`.

use crate::error::{Error, Result};
use crate::formula::Formula;

pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser { text, pos: 0 };
    let f = p.disjunction()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

fn is_ident(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> Error {
        Error::FormulaSyntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest.find(|c| !is_ident(c)).unwrap_or(rest.len());
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some(&rest[..len])
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut f = self.conjunction()?;
        while self.eat('|') {
            f = f.or(self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while self.eat('&') {
            f = f.and(self.unary()?);
        }
        Ok(f)
    }

    fn index(&mut self, close: char) -> Result<String> {
        let i = self
            .ident()
            .ok_or_else(|| self.error("expected modality index"))?;
        self.expect(close)?;
        Ok(i.to_string())
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Some('~') => {
                self.pos += 1;
                Ok(self.unary()?.negated())
            }
            Some('[') => {
                self.pos += 1;
                let i = self.index(']')?;
                Ok(Formula::boxed(i, self.unary()?))
            }
            Some('<') => {
                self.pos += 1;
                let i = self.index('>')?;
                Ok(Formula::diamond(i, self.unary()?))
            }
            Some('(') => {
                self.pos += 1;
                let f = self.disjunction()?;
                self.expect(')')?;
                Ok(f)
            }
            None => Err(self.error("unexpected end of formula")),
            Some(_) => match self.ident() {
                Some("top") => Ok(Formula::Top),
                Some("bot") => Ok(Formula::Bot),
                Some(atom) => Ok(Formula::atom(atom)),
                None => Err(self.error("expected a formula")),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn precedence() {
        let (a, b, c) = (Formula::atom("a"), Formula::atom("b"), Formula::atom("c"));
        assert_eq!(p("a | b & c"), a.clone().or(b.clone().and(c.clone())));
        assert_eq!(p("(a | b) & c"), a.clone().or(b.clone()).and(c.clone()));
        assert_eq!(p("~a & b"), a.clone().negated().and(b.clone()));
        assert_eq!(p("[x]a & b"), Formula::boxed("x", a.clone()).and(b.clone()));
        assert_eq!(
            p("<x>~[y]top"),
            Formula::diamond("x", Formula::boxed("y", Formula::Top).negated())
        );
        assert_eq!(p("a & b & c"), a.and(b).and(c));
        assert_eq!(p("  bot "), Formula::Bot);
    }

    #[test]
    fn display_round_trip() {
        let f = Formula::diamond(
            "a",
            Formula::atom("p").and(Formula::boxed("r0", Formula::Bot)),
        )
        .or(Formula::Top.negated())
        .and(Formula::atom("q'"));
        assert_eq!(p(&f.to_string()), f);
    }

    #[test]
    fn errors_carry_offsets() {
        let off = |s: &str| match parse_formula(s) {
            Err(Error::FormulaSyntax { offset, .. }) => offset,
            other => panic!("unexpected {other:?}"),
        };
        assert_eq!(off("p &"), 3);
        assert_eq!(off("(p"), 2);
        assert_eq!(off("p q"), 2);
        assert_eq!(off("[]p"), 1);
        assert_eq!(off("<a p"), 3);
        assert_eq!(off(""), 0);
        assert_eq!(off("p $"), 2);
    }
}
