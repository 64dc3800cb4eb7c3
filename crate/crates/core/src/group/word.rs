//! Signed letters and freely reduced words.
//!
//! A letter is stored as a nonzero `i32`: `+(i + 1)` is the generator `a_i`,
//! `-(i + 1)` its inverse. Words are always kept freely reduced, so two equal
//! free-group elements have identical encodings.

use crate::error::{Error, Result};

/// A generator of a free group or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn new(index: u32) -> Self {
        Letter { index, inverse: false }
    }

    pub fn inv(index: u32) -> Self {
        Letter { index, inverse: true }
    }

    pub fn encode(self) -> i32 {
        let v = self.index as i32 + 1;
        if self.inverse {
            -v
        } else {
            v
        }
    }

    pub fn decode(code: i32) -> Self {
        debug_assert!(code != 0);
        Letter {
            index: code.unsigned_abs() - 1,
            inverse: code < 0,
        }
    }
}

/// Letter index carried by an encoded letter, ignoring its sign.
#[inline]
pub fn letter_index(code: i32) -> u32 {
    code.unsigned_abs() - 1
}

/// Appends `code` to a reduced word, cancelling against the last letter.
#[inline]
pub(crate) fn push_reduced(word: &mut Vec<i32>, code: i32) {
    if word.last() == Some(&-code) {
        word.pop();
    } else {
        word.push(code);
    }
}

/// Freely reduces a sequence of letters over an alphabet of the given rank
/// (`None` is a countable alphabet).
pub fn reduce_letters(letters: &[Letter], rank: Option<u32>) -> Result<Vec<i32>> {
    let mut out = Vec::with_capacity(letters.len());
    for l in letters {
        if let Some(r) = rank {
            if l.index >= r {
                return Err(Error::InvalidLetter { index: l.index, rank: r });
            }
        }
        push_reduced(&mut out, l.encode());
    }
    Ok(out)
}

pub(crate) fn concat(g: &[i32], h: &[i32]) -> Vec<i32> {
    let mut out = Vec::with_capacity(g.len() + h.len());
    out.extend_from_slice(g);
    for &c in h {
        push_reduced(&mut out, c);
    }
    out
}

pub(crate) fn invert(g: &[i32]) -> Vec<i32> {
    g.iter().rev().map(|c| -c).collect()
}

pub(crate) fn format_word(w: &[i32]) -> String {
    if w.is_empty() {
        return "e".to_string();
    }
    let mut s = String::new();
    for &c in w {
        let idx = letter_index(c);
        if idx < 26 {
            let ch = (b'a' + idx as u8) as char;
            s.push(if c < 0 { ch.to_ascii_uppercase() } else { ch });
        } else if c < 0 {
            s.push_str(&format!("[{idx}]^-1"));
        } else {
            s.push_str(&format!("[{idx}]"));
        }
    }
    s
}

/// Parses the compact word syntax: `a`..`z` are generators, uppercase letters
/// their inverses, `[n]` addresses letter `n` directly and any factor may carry
/// an integer power `^k`. The whole string `e` (or `1`) is the identity.
pub(crate) fn parse_word(text: &str, rank: Option<u32>) -> Result<Vec<i32>> {
    let t = text.trim();
    if t == "e" || t == "1" || t.is_empty() {
        return Ok(Vec::new());
    }
    let err = |reason: &str| Error::ElementSyntax {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let bytes = t.as_bytes();
    let mut i = 0;
    let mut letters = Vec::new();
    while i < bytes.len() {
        let c = bytes[i];
        let (index, mut inverse) = if c.is_ascii_lowercase() {
            i += 1;
            ((c - b'a') as u32, false)
        } else if c.is_ascii_uppercase() {
            i += 1;
            ((c - b'A') as u32, true)
        } else if c == b'[' {
            let close = t[i..].find(']').ok_or_else(|| err("unclosed `[`"))? + i;
            let n: u32 = t[i + 1..close]
                .trim()
                .parse()
                .map_err(|_| err("bad letter index"))?;
            i = close + 1;
            (n, false)
        } else if c.is_ascii_whitespace() || c == b'*' || c == b'.' {
            i += 1;
            continue;
        } else {
            return Err(err("unexpected character"));
        };
        let mut power: i64 = 1;
        if i < bytes.len() && bytes[i] == b'^' {
            let start = i + 1;
            let mut end = start;
            if end < bytes.len() && (bytes[end] == b'-' || bytes[end] == b'+') {
                end += 1;
            }
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            power = t[start..end].parse().map_err(|_| err("bad exponent"))?;
            i = end;
        } else if i < bytes.len() && bytes[i] == b'\'' {
            power = -1;
            i += 1;
        }
        if power < 0 {
            inverse = !inverse;
        }
        for _ in 0..power.unsigned_abs() {
            letters.push(Letter { index, inverse });
        }
    }
    reduce_letters(&letters, rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> Letter {
        Letter::new(0)
    }
    fn a_inv() -> Letter {
        Letter::inv(0)
    }
    fn b() -> Letter {
        Letter::new(1)
    }
    fn b_inv() -> Letter {
        Letter::inv(1)
    }

    #[test]
    fn cancellation() {
        assert_eq!(reduce_letters(&[a(), a_inv(), b()], Some(2)).unwrap(), vec![2]);
        assert!(reduce_letters(&[], Some(2)).unwrap().is_empty());
        assert_eq!(
            reduce_letters(&[a(), b(), b_inv(), a()], Some(2)).unwrap(),
            vec![1, 1]
        );
    }

    #[test]
    fn out_of_alphabet() {
        let e = reduce_letters(&[Letter::new(2)], Some(2)).unwrap_err();
        assert_eq!(e, Error::InvalidLetter { index: 2, rank: 2 });
        assert!(reduce_letters(&[Letter::new(700)], None).is_ok());
    }

    #[test]
    fn text_round_trip() {
        for s in ["e", "ab", "aBA", "bbb", "[30]a[31]^-1"] {
            let w = parse_word(s, None).unwrap();
            assert_eq!(parse_word(&format_word(&w), None).unwrap(), w);
        }
        assert_eq!(parse_word("a^-1b", Some(2)).unwrap(), vec![-1, 2]);
        assert_eq!(parse_word("a^3 a^-1", Some(2)).unwrap(), vec![1, 1]);
        assert_eq!(parse_word("a'", Some(2)).unwrap(), vec![-1]);
    }
}
