//! The set-expression language.
//!
//! ```text
//! expr    := term (("union" | "diff") term)*
//! term    := factor ("inter" factor)*
//! factor  := "(" expr ")" | "translate" "(" element ")" factor
//!          | "inverse" factor | "complement" factor | atom
//! atom    := evens | odds | naturals | squares | square-runs | all | empty
//!          | multiples(k) | powers(b) | lambda=x | rho=x | weight=k
//!          | explicit[g, ...] | fp(g, ...)
//! ```
//!
//! Element arguments use the group's element syntax.

use std::fmt;

use crate::ballean::Side;
use crate::classify::fp_set;
use crate::group::{word, Element, Group, GroupKind};
use crate::subset::{atoms, SubsetView};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the expression.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    group: &'a Group,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, at: usize, msg: impl Into<String>) -> PResult<T> {
        Err(ParseError { position: at, message: msg.into() })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(self.pos, format!("expected `{c}`"))
        }
    }

    fn ident(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '-' || c == '_'))
            .unwrap_or(self.rest().len());
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some((start, &self.src[start..start + len]))
    }

    /// Consumes a keyword if it is next, without consuming anything else.
    fn keyword(&mut self, kw: &str) -> bool {
        let save = self.pos;
        match self.ident() {
            Some((_, w)) if w == kw => true,
            _ => {
                self.pos = save;
                false
            }
        }
    }

    /// Raw text up to the bracket matching `close`, which is consumed.
    fn raw_until(&mut self, close: char) -> PResult<(usize, &'a str)> {
        let start = self.pos;
        let mut depth = 0i32;
        for (i, c) in self.rest().char_indices() {
            match c {
                '(' | '[' | '<' => depth += 1,
                ')' | ']' | '>' if depth > 0 => depth -= 1,
                _ if c == close && depth == 0 => {
                    self.pos = start + i + 1;
                    return Ok((start, &self.src[start..start + i]));
                }
                _ => {}
            }
        }
        self.err(start, format!("missing `{close}`"))
    }

    fn element(&self, at: usize, text: &str) -> PResult<Element> {
        self.group
            .parse_element(text)
            .map_err(|e| ParseError { position: at, message: e.to_string() })
    }

    fn element_list(&self, at: usize, text: &str) -> PResult<Vec<Element>> {
        let mut out = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (i, c) in text.char_indices() {
            match c {
                '(' | '[' | '<' => depth += 1,
                ')' | ']' | '>' => depth -= 1,
                ',' if depth == 0 => {
                    out.push(self.element(at + start, &text[start..i])?);
                    start = i + 1;
                }
                _ => {}
            }
        }
        let last = &text[start..];
        if !last.trim().is_empty() {
            out.push(self.element(at + start, last)?);
        } else if !out.is_empty() {
            return self.err(at + start, "empty list entry");
        }
        Ok(out)
    }

    fn integer(&mut self) -> PResult<i64> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .char_indices()
            .find(|&(i, c)| !(c.is_ascii_digit() || (i == 0 && c == '-')))
            .map(|(i, _)| i)
            .unwrap_or(self.rest().len());
        self.pos += len;
        self.src[start..start + len]
            .parse()
            .or_else(|_| self.err(start, "expected an integer"))
    }

    fn expr(&mut self) -> PResult<SubsetView> {
        let mut left = self.term()?;
        loop {
            if self.keyword("union") {
                left = left.union(&self.term()?);
            } else if self.keyword("diff") {
                left = left.diff(&self.term()?);
            } else {
                return Ok(left);
            }
        }
    }

    fn term(&mut self) -> PResult<SubsetView> {
        let mut left = self.factor()?;
        while self.keyword("inter") {
            left = left.inter(&self.factor()?);
        }
        Ok(left)
    }

    fn require_integers(&self, at: usize, name: &str) -> PResult<()> {
        if matches!(self.group.kind(), GroupKind::FreeAbelian { rank: 1 }) {
            Ok(())
        } else {
            self.err(at, format!("`{name}` is only defined on Z"))
        }
    }

    fn letter(&mut self) -> PResult<u32> {
        self.skip_ws();
        let start = self.pos;
        let rank = match self.group.kind() {
            GroupKind::Free { rank } => *rank,
            _ => return self.err(start, "letter atoms need a free group"),
        };
        let len = self
            .rest()
            .find(|c: char| c.is_whitespace() || c == ')')
            .unwrap_or(self.rest().len());
        let text = &self.src[start..start + len];
        self.pos += len;
        match word::parse_word(text, rank) {
            Ok(w) if w.len() == 1 => Ok(word::letter_index(w[0])),
            Ok(_) => self.err(start, "expected a single letter"),
            Err(e) => self.err(start, e.to_string()),
        }
    }

    fn factor(&mut self) -> PResult<SubsetView> {
        if self.peek() == Some('(') {
            self.pos += 1;
            let inner = self.expr()?;
            self.expect(')')?;
            return Ok(inner);
        }
        let Some((at, name)) = self.ident() else {
            return self.err(self.pos, "expected a set");
        };
        match name {
            "translate" => {
                self.expect('(')?;
                let (p, raw) = self.raw_until(')')?;
                let g = self.element(p, raw)?;
                let inner = self.factor()?;
                Ok(inner.translate(self.group, &g, Side::Left))
            }
            "inverse" => Ok(self.factor()?.inverse(self.group)),
            "complement" => Ok(self.factor()?.complement()),
            "all" => Ok(SubsetView::all()),
            "empty" => Ok(SubsetView::empty()),
            "evens" | "odds" | "naturals" | "squares" | "square-runs" => {
                self.require_integers(at, name)?;
                Ok(match name {
                    "evens" => atoms::evens(),
                    "odds" => atoms::odds(),
                    "naturals" => atoms::naturals(),
                    "squares" => atoms::squares(),
                    _ => atoms::square_runs(),
                })
            }
            "multiples" | "powers" => {
                self.require_integers(at, name)?;
                self.expect('(')?;
                let k = self.integer()?;
                self.expect(')')?;
                Ok(if name == "multiples" { atoms::multiples(k) } else { atoms::powers(k) })
            }
            "lambda" | "rho" => {
                self.expect('=')?;
                let l = self.letter()?;
                Ok(if name == "lambda" { atoms::lambda(l) } else { atoms::rho(l) })
            }
            "weight" => {
                self.expect('=')?;
                let p = self.pos;
                let k = self.integer()?;
                if k < 0 {
                    return self.err(p, "weight must be nonnegative");
                }
                Ok(atoms::weight(self.group, k as u32))
            }
            "explicit" => {
                self.expect('[')?;
                let (p, raw) = self.raw_until(']')?;
                let elems = self.element_list(p, raw)?;
                Ok(SubsetView::explicit(format!("explicit[{}]", raw.trim()), elems))
            }
            "fp" => {
                self.expect('(')?;
                let (p, raw) = self.raw_until(')')?;
                let gs = self.element_list(p, raw)?;
                let n = gs.len();
                fp_set(self.group, &gs, n)
                    .map_err(|e| ParseError { position: at, message: e.to_string() })
            }
            other => self.err(at, format!("unknown set `{other}`")),
        }
    }
}

/// Parses a set expression over `group`.
pub fn parse_set(group: &Group, text: &str) -> Result<SubsetView, ParseError> {
    let mut p = Parser { src: text, pos: 0, group };
    let set = p.expr()?;
    if p.peek().is_some() {
        return p.err(p.pos, "unexpected trailing input");
    }
    Ok(set.renamed(text.trim()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Group {
        Group::integers()
    }

    #[test]
    fn atoms_and_operators() {
        let g = z();
        let s = parse_set(&g, "evens union multiples(3)").unwrap();
        assert!(s.contains(&Element::int(9)) && !s.contains(&Element::int(7)));
        let s = parse_set(&g, "naturals inter (evens diff explicit[0, 4])").unwrap();
        assert!(s.contains(&Element::int(2)) && !s.contains(&Element::int(4)) && !s.contains(&Element::int(-2)));
        let s = parse_set(&g, "translate(1) evens").unwrap();
        assert!(s.contains(&Element::int(5)));
        let s = parse_set(&g, "inverse naturals").unwrap();
        assert!(s.contains(&Element::int(-5)));
        let s = parse_set(&g, "explicit[]").unwrap();
        assert_eq!(s.finite_elements().unwrap().len(), 0);
        let s = parse_set(&g, "fp(1,2,4)").unwrap();
        assert_eq!(s.finite_elements().unwrap().len(), 7);
    }

    #[test]
    fn precedence() {
        let g = z();
        // inter binds tighter than union
        let s = parse_set(&g, "explicit[1] union evens inter explicit[2]").unwrap();
        assert!(s.contains(&Element::int(1)) && s.contains(&Element::int(2)) && !s.contains(&Element::int(4)));
    }

    #[test]
    fn free_group_atoms() {
        let f2 = Group::free(2);
        let s = parse_set(&f2, "lambda=a").unwrap();
        assert!(s.contains(&f2.parse_element("Ab").unwrap()));
        let s = parse_set(&f2, "rho=b diff explicit[b, aB]").unwrap();
        assert!(s.contains(&f2.parse_element("ab").unwrap()));
        assert!(!s.contains(&f2.parse_element("aB").unwrap()));
    }

    #[test]
    fn error_positions() {
        let g = z();
        let e = parse_set(&g, "evens union bogus").unwrap_err();
        assert_eq!(e.position, 12);
        let e = parse_set(&g, "evens union").unwrap_err();
        assert_eq!(e.position, 11);
        let e = parse_set(&g, "multiples(x)").unwrap_err();
        assert_eq!(e.position, 10);
        let e = parse_set(&g, "(evens").unwrap_err();
        assert_eq!(e.position, 6);
        let e = parse_set(&g, "explicit[1, q]").unwrap_err();
        assert_eq!(e.position, 11);
        let e = parse_set(&Group::free(2), "evens").unwrap_err();
        assert_eq!(e.position, 0);
    }
}
